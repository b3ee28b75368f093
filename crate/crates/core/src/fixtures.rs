//! Catalogues of small structures and algebras, enumerated up to
//! isomorphism, plus the named examples the test suites keep returning to.
//!
//! Enumeration strategy: generate naturally-labeled candidates (order
//! relations topologically sorted, tables cell by cell with pruning), then
//! collapse isomorphic duplicates by bucketing on cheap invariants and
//! running the backtracking isomorphism search inside each bucket.

use std::collections::HashMap;

use crate::algebra::{find_isomorphism, FiniteAlgebra, Signature, Variety};
use crate::relational::{find_structure_isomorphism, RelationalStructure, SchemeId};
use crate::{Error, Result};

/// Largest universe for the poset/equivalence catalogue.
pub const POSET_CATALOGUE_BOUND: usize = 6;
/// Largest universe for the graph catalogue.
pub const GRAPH_CATALOGUE_BOUND: usize = 5;
/// Largest universe for the band catalogue (table search grows very fast).
pub const BAND_CATALOGUE_BOUND: usize = 4;

// ---------------------------------------------------------------------------
// Order catalogues
// ---------------------------------------------------------------------------

/// Calls `f` with every reflexive-transitive `leq` matrix on `0..n` whose
/// strict part points upward (`a < b` implies `a < b` as indices).  Every
/// poset admits such a labeling, so up to isomorphism nothing is missed.
///
/// Cells are decided column by column, and within a column bottom-up, so
/// that when `(i, j)` is decided every potential two-step path `i < m < j`
/// is already known; transitivity then reduces to those paths.
pub(crate) fn for_each_topo_poset(n: usize, f: &mut dyn FnMut(&[Vec<bool>])) {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|j| (0..j).rev().map(move |i| (i, j)))
        .collect();
    fn recurse(
        cells: &[(usize, usize)],
        k: usize,
        leq: &mut Vec<Vec<bool>>,
        f: &mut dyn FnMut(&[Vec<bool>]),
    ) {
        let Some(&(i, j)) = cells.get(k) else {
            f(leq);
            return;
        };
        let forced = ((i + 1)..j).any(|m| leq[i][m] && leq[m][j]);
        leq[i][j] = true;
        recurse(cells, k + 1, leq, f);
        leq[i][j] = false;
        if !forced {
            recurse(cells, k + 1, leq, f);
        }
    }
    recurse(&cells, 0, &mut leq, f);
}

/// Per-element (down-set, up-set) size profile; an isomorphism invariant.
fn order_profile(s: &RelationalStructure) -> Vec<(usize, usize)> {
    let n = s.size();
    let mut profile: Vec<(usize, usize)> = (0..n)
        .map(|v| {
            let down = (0..n).filter(|&u| s.leq(u, v)).count();
            let up = (0..n).filter(|&u| s.leq(v, u)).count();
            (down, up)
        })
        .collect();
    profile.sort();
    profile
}

fn dedup_structures(candidates: Vec<RelationalStructure>) -> Vec<RelationalStructure> {
    let mut buckets: HashMap<(usize, Vec<(usize, usize)>), Vec<usize>> = HashMap::new();
    let mut representatives: Vec<RelationalStructure> = Vec::new();
    for candidate in candidates {
        let key = (candidate.tuples().len(), order_profile(&candidate));
        let bucket = buckets.entry(key).or_default();
        let duplicate = bucket
            .iter()
            .any(|&r| find_structure_isomorphism(&representatives[r], &candidate).is_some());
        if !duplicate {
            bucket.push(representatives.len());
            representatives.push(candidate);
        }
    }
    representatives
}

/// All posets with exactly `n` elements, one per isomorphism class, with the
/// posemigroup-order scheme attached.
pub fn posets_up_to_iso(n: usize) -> Result<Vec<RelationalStructure>> {
    if n == 0 || n > POSET_CATALOGUE_BOUND {
        return Err(Error::SizeBound {
            what: "poset catalogue",
            size: n,
            bound: POSET_CATALOGUE_BOUND,
        });
    }
    let mut candidates = Vec::new();
    for_each_topo_poset(n, &mut |leq| {
        candidates.push(RelationalStructure::poset_from_leq(leq).expect("closed by construction"));
    });
    Ok(dedup_structures(candidates))
}

/// All equivalence relations on `n` elements up to isomorphism: one per
/// multiset of block sizes (an integer partition of `n`, largest part first).
pub fn equivalences_up_to_iso(n: usize) -> Result<Vec<RelationalStructure>> {
    if n == 0 || n > POSET_CATALOGUE_BOUND {
        return Err(Error::SizeBound {
            what: "equivalence catalogue",
            size: n,
            bound: POSET_CATALOGUE_BOUND,
        });
    }
    let mut shapes = Vec::new();
    let mut stack = Vec::new();
    fn descend(remaining: usize, cap: usize, stack: &mut Vec<usize>, shapes: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            shapes.push(stack.clone());
            return;
        }
        for part in (1..=cap.min(remaining)).rev() {
            stack.push(part);
            descend(remaining - part, part, stack, shapes);
            stack.pop();
        }
    }
    descend(n, n, &mut stack, &mut shapes);
    shapes
        .into_iter()
        .map(|shape| {
            let mut blocks = Vec::new();
            let mut next = 0;
            for size in shape {
                blocks.push((next..next + size).collect::<Vec<usize>>());
                next += size;
            }
            RelationalStructure::equivalence_from_blocks(n, &blocks)
        })
        .collect()
}

/// All simple graphs on `n` vertices up to isomorphism, carrying the
/// complementation scheme.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<RelationalStructure>> {
    if n == 0 || n > GRAPH_CATALOGUE_BOUND {
        return Err(Error::SizeBound {
            what: "graph catalogue",
            size: n,
            bound: GRAPH_CATALOGUE_BOUND,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        candidates.push(RelationalStructure::graph_from_edges(n, &edges)?);
    }
    // `order_profile` degenerates to degree counts on symmetric relations,
    // which is exactly the right invariant here.
    Ok(dedup_structures(candidates))
}

// ---------------------------------------------------------------------------
// Algebra catalogues
// ---------------------------------------------------------------------------

/// Per-element (row-image, column-image) size profile of a binary table.
fn table_profile(algebra: &FiniteAlgebra) -> Vec<(usize, usize)> {
    let n = algebra.size();
    let image_size = |fix_left: bool, a: usize| {
        let mut seen = vec![false; n];
        for x in 0..n {
            let v = if fix_left {
                algebra.mul(a, x)
            } else {
                algebra.mul(x, a)
            };
            seen[v] = true;
        }
        seen.iter().filter(|&&s| s).count()
    };
    let mut profile: Vec<(usize, usize)> = (0..n)
        .map(|a| (image_size(true, a), image_size(false, a)))
        .collect();
    profile.sort();
    profile
}

fn dedup_algebras(candidates: Vec<FiniteAlgebra>) -> Result<Vec<FiniteAlgebra>> {
    let mut buckets: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
    let mut representatives: Vec<FiniteAlgebra> = Vec::new();
    for candidate in candidates {
        let key = table_profile(&candidate);
        let bucket = buckets.entry(key).or_default();
        let mut duplicate = false;
        for &r in bucket.iter() {
            if find_isomorphism(&representatives[r], &candidate)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            bucket.push(representatives.len());
            representatives.push(candidate);
        }
    }
    Ok(representatives)
}

/// Every idempotent table on `0..n` satisfying associativity and the
/// right-regularity law, found by cell-wise backtracking.  The diagonal is
/// pinned by idempotence; a partial table is abandoned as soon as a fully
/// determined instance of either law fails.
fn enumerate_rrb_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    const UNSET: usize = usize::MAX;
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    let mut table = vec![vec![UNSET; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[i] = i;
    }
    fn laws_hold_so_far(t: &[Vec<usize>], n: usize) -> bool {
        const UNSET: usize = usize::MAX;
        for x in 0..n {
            for y in 0..n {
                let xy = t[x][y];
                if xy == UNSET {
                    continue;
                }
                // (x·y)·x = y·x
                if t[xy][x] != UNSET && t[y][x] != UNSET && t[xy][x] != t[y][x] {
                    return false;
                }
                for z in 0..n {
                    // (x·y)·z = x·(y·z)
                    let yz = t[y][z];
                    if t[xy][z] != UNSET
                        && yz != UNSET
                        && t[x][yz] != UNSET
                        && t[xy][z] != t[x][yz]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn recurse(
        cells: &[(usize, usize)],
        k: usize,
        n: usize,
        table: &mut Vec<Vec<usize>>,
        found: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(&(a, b)) = cells.get(k) else {
            found.push(table.clone());
            return;
        };
        for v in 0..n {
            table[a][b] = v;
            if laws_hold_so_far(table, n) {
                recurse(cells, k + 1, n, table, found);
            }
        }
        table[a][b] = usize::MAX;
    }
    let mut found = Vec::new();
    recurse(&cells, 0, n, &mut table, &mut found);
    found
}

/// All right regular bands with exactly `n` elements, one per isomorphism
/// class.
pub fn rrbs_up_to_iso(n: usize) -> Result<Vec<FiniteAlgebra>> {
    if n == 0 || n > BAND_CATALOGUE_BOUND {
        return Err(Error::SizeBound {
            what: "band catalogue",
            size: n,
            bound: BAND_CATALOGUE_BOUND,
        });
    }
    let candidates = enumerate_rrb_tables(n)
        .into_iter()
        .map(FiniteAlgebra::from_binary_table)
        .collect::<Result<Vec<_>>>()?;
    dedup_algebras(candidates)
}

/// Meet table of a poset in which every pair has an infimum, or `None` when
/// some pair has none.  Labels carry over.
pub fn meet_semilattice_from_poset(s: &RelationalStructure) -> Result<Option<FiniteAlgebra>> {
    let n = s.size();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            match crate::relational::greatest_lower_bound(s, a, b) {
                Some(m) => table[a][b] = m,
                None => return Ok(None),
            }
        }
    }
    let mut algebra = FiniteAlgebra::from_binary_table(table)?;
    if let Some(labels) = s.labels() {
        algebra = algebra.with_labels(labels.to_vec())?;
    }
    Ok(Some(algebra))
}

/// The bounded-lattice algebra of a poset, or an error naming what is
/// missing (a bound, a meet, or a join).
pub fn bounded_lattice_from_poset(s: &RelationalStructure) -> Result<FiniteAlgebra> {
    let n = s.size();
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    let bot = (0..n)
        .find(|&z| (0..n).all(|u| s.leq(z, u)))
        .ok_or(Error::NotABoundedLattice("no bottom element".into()))?;
    let top = (0..n)
        .find(|&z| (0..n).all(|u| s.leq(u, z)))
        .ok_or(Error::NotABoundedLattice("no top element".into()))?;
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            meet.push(
                crate::relational::greatest_lower_bound(s, a, b)
                    .ok_or_else(|| Error::NotABoundedLattice(format!("{a} and {b} have no meet")))?,
            );
            join.push(
                crate::relational::least_upper_bound(s, a, b)
                    .ok_or_else(|| Error::NotABoundedLattice(format!("{a} and {b} have no join")))?,
            );
        }
    }
    let mut algebra = FiniteAlgebra::new(
        Signature::bounded_lattice(),
        n,
        vec![meet, join, vec![bot], vec![top]],
    )?;
    if let Some(labels) = s.labels() {
        algebra = algebra.with_labels(labels.to_vec())?;
    }
    Ok(algebra)
}

/// All meet-semilattices with `n` elements up to isomorphism, read off the
/// poset catalogue (a finite poset with all binary infima is one).
pub fn semilattices_up_to_iso(n: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for poset in posets_up_to_iso(n)? {
        if let Some(algebra) = meet_semilattice_from_poset(&poset)? {
            out.push(algebra);
        }
    }
    Ok(out)
}

/// All bounded lattices with `n` elements up to isomorphism, as algebras
/// over {meet, join, bot, top}.
pub fn bounded_lattices_up_to_iso(n: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for poset in posets_up_to_iso(n)? {
        if let Ok(algebra) = bounded_lattice_from_poset(&poset) {
            out.push(algebra);
        }
    }
    Ok(out)
}

/// The variety's members of size `n`, one per isomorphism class; the probe
/// pool for the adjunction verifier.
pub fn algebras_in_variety(variety: Variety, n: usize) -> Result<Vec<FiniteAlgebra>> {
    match variety {
        Variety::Rrb => rrbs_up_to_iso(n),
        Variety::Semilattice => semilattices_up_to_iso(n),
        Variety::BoundedDl => {
            let spec = variety.spec();
            let mut out = Vec::new();
            for lattice in bounded_lattices_up_to_iso(n)? {
                if lattice.is_in_variety(&spec)? {
                    out.push(lattice);
                }
            }
            Ok(out)
        }
    }
}

/// The structures of size `n` carrying the named built-in scheme, one per
/// isomorphism class.
pub fn structures_for_scheme(scheme: SchemeId, n: usize) -> Result<Vec<RelationalStructure>> {
    match scheme {
        SchemeId::PosemigroupOrder => posets_up_to_iso(n),
        SchemeId::MutualAbsorptionEquivalence => equivalences_up_to_iso(n),
        SchemeId::Complementation => graphs_up_to_iso(n),
    }
}

// ---------------------------------------------------------------------------
// Named examples
// ---------------------------------------------------------------------------

/// Three-point poset with a common bottom under two incomparable tops:
/// elements `x`, `y`, `0` with `0 < x` and `0 < y`.
pub fn v_poset() -> RelationalStructure {
    RelationalStructure::poset_from_covers(3, &[(2, 0), (2, 1)])
        .and_then(|s| s.with_labels(vec!["x".into(), "y".into(), "0".into()]))
        .expect("static data")
}

/// The order expected on the free band over [`v_poset`]: two 2-chains over
/// a common bottom (elements 0, 1 maximal; 2 under 0; 3 under 1; 4 bottom).
pub fn v_poset_free_band_order() -> RelationalStructure {
    RelationalStructure::poset_from_covers(5, &[(4, 2), (2, 0), (4, 3), (3, 1)])
        .expect("static data")
}

/// Three-element band with a two-sided zero under a right-zero pair; its
/// underlying order is a relabeled [`v_poset`], and its mutual-absorption
/// relation is the partition {{a,b},{0}}.
pub fn zero_under_right_zero_pair() -> FiniteAlgebra {
    FiniteAlgebra::from_binary_table(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]])
        .and_then(|a| a.with_labels(vec!["0".into(), "a".into(), "b".into()]))
        .expect("static data")
}

/// The expected seven-element band freely generated by the three-element
/// set carrying the partition {{a,b},{0}} (labels follow the source table).
pub fn expected_free_band_over_pair_partition() -> FiniteAlgebra {
    FiniteAlgebra::from_binary_table(vec![
        vec![0, 1, 5, 3, 4, 5, 6],
        vec![0, 1, 6, 3, 4, 5, 6],
        vec![3, 4, 2, 3, 4, 5, 6],
        vec![3, 4, 5, 3, 4, 5, 6],
        vec![3, 4, 6, 3, 4, 5, 6],
        vec![3, 4, 5, 3, 4, 5, 6],
        vec![3, 4, 6, 3, 4, 5, 6],
    ])
    .and_then(|a| {
        a.with_labels(
            ["a", "b", "c", "w", "x", "y", "z"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
    })
    .expect("static data")
}

/// The expected four-element meet-semilattice freely generated by
/// [`v_poset`]: bottom `0`, then `c`, then the incomparable tops `a`, `b`.
pub fn expected_free_semilattice_over_v() -> FiniteAlgebra {
    FiniteAlgebra::from_binary_table(vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 1, 1],
        vec![0, 1, 2, 1],
        vec![0, 1, 1, 3],
    ])
    .and_then(|a| {
        a.with_labels(
            ["0", "c", "a", "b"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
    })
    .expect("static data")
}

/// Product order of two 3-chains: the nine-element grid, element `3i + j`
/// sitting at coordinates `(i, j)`.
pub fn grid_3x3_order() -> RelationalStructure {
    let mut leq = vec![vec![false; 9]; 9];
    for (p, row) in leq.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            *cell = p / 3 <= q / 3 && p % 3 <= q % 3;
        }
    }
    RelationalStructure::poset_from_leq(&leq).expect("static data")
}

/// The n-element chain `0 < 1 < ... < n-1` as a poset.
pub fn chain_poset(n: usize) -> Result<RelationalStructure> {
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    RelationalStructure::poset_from_covers(n, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variety;
    use crate::relational::{
        apply_u, validate_structure, IdentityScheme, StructureKind, ValidationReport,
    };

    #[test]
    fn poset_catalogue_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| posets_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
        assert!(posets_up_to_iso(7).is_err());
    }

    #[test]
    fn six_element_posets() {
        assert_eq!(posets_up_to_iso(6).unwrap().len(), 318);
    }

    #[test]
    fn equivalence_catalogue_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| equivalences_up_to_iso(n).unwrap().len())
            .collect();
        // Integer partitions of n.
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        for s in equivalences_up_to_iso(4).unwrap() {
            assert!(validate_structure(&s, StructureKind::Equivalence).passed());
        }
    }

    #[test]
    fn graph_catalogue_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| graphs_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 11]);
        assert_eq!(graphs_up_to_iso(5).unwrap().len(), 34);
    }

    #[test]
    fn band_catalogue_is_sound_and_complete_at_size_three() {
        let spec = Variety::Rrb.spec();
        let catalogue = rrbs_up_to_iso(3).unwrap();
        for algebra in &catalogue {
            assert!(algebra.is_in_variety(&spec).unwrap());
        }
        // Independent oracle: filter every idempotent-diagonal table.
        let mut raw = Vec::new();
        for mask in 0..3usize.pow(6) {
            let mut digits = mask;
            let mut table = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
            for a in 0..3 {
                for b in 0..3 {
                    if a != b {
                        table[a][b] = digits % 3;
                        digits /= 3;
                    }
                }
            }
            let algebra = FiniteAlgebra::from_binary_table(table).unwrap();
            if algebra.is_in_variety(&spec).unwrap() {
                raw.push(algebra);
            }
        }
        let reference = dedup_algebras(raw).unwrap();
        assert_eq!(catalogue.len(), reference.len());
    }

    #[test]
    fn small_band_counts() {
        assert_eq!(rrbs_up_to_iso(1).unwrap().len(), 1);
        // The 2-chain semilattice and the 2-element right-zero band.
        assert_eq!(rrbs_up_to_iso(2).unwrap().len(), 2);
        assert_eq!(rrbs_up_to_iso(3).unwrap().len(), 6);
        assert_eq!(rrbs_up_to_iso(4).unwrap().len(), 23);
    }

    #[test]
    fn semilattice_and_lattice_catalogues() {
        let sl_counts: Vec<usize> = (1..=5)
            .map(|n| semilattices_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(sl_counts, vec![1, 1, 2, 5, 15]);
        let bl_counts: Vec<usize> = (2..=6)
            .map(|n| bounded_lattices_up_to_iso(n).unwrap().len())
            .collect();
        assert_eq!(bl_counts, vec![1, 1, 2, 5, 15]);
        for lattice in bounded_lattices_up_to_iso(5).unwrap() {
            assert!(lattice
                .check_variety(&crate::algebra::VarietySpec::bounded_lattice())
                .unwrap()
                .passed);
        }
        // Every semilattice is commutative, hence a right regular band.
        let rrb = Variety::Rrb.spec();
        for algebra in semilattices_up_to_iso(4).unwrap() {
            assert!(algebra.is_in_variety(&rrb).unwrap());
        }
    }

    #[test]
    fn distributive_filter_kicks_in_at_size_five() {
        // The diamond M3 and the pentagon N5 are the two non-distributive
        // five-element lattices.
        assert_eq!(bounded_lattices_up_to_iso(5).unwrap().len(), 5);
        assert_eq!(
            algebras_in_variety(Variety::BoundedDl, 5).unwrap().len(),
            3
        );
    }

    #[test]
    fn named_fixtures_validate() {
        let v = v_poset();
        assert!(validate_structure(&v, StructureKind::Poset).passed());
        assert_eq!(v.label(2), "0");
        assert!(v.leq(2, 0) && v.leq(2, 1) && !v.leq(0, 1));

        let band = zero_under_right_zero_pair();
        assert!(band.is_in_variety(&Variety::Rrb.spec()).unwrap());
        let order = crate::relational::underlying_order(&band).unwrap();
        assert!(find_structure_isomorphism(&order, &v).is_some());

        let seven = expected_free_band_over_pair_partition();
        assert_eq!(seven.size(), 7);
        assert!(seven.is_in_variety(&Variety::Rrb.spec()).unwrap());

        let four = expected_free_semilattice_over_v();
        assert!(four.is_in_variety(&Variety::Semilattice.spec()).unwrap());

        let grid = grid_3x3_order();
        assert!(validate_structure(&grid, StructureKind::Poset).passed());
        assert_eq!(crate::relational::poset_heights(&grid).unwrap()[8], 4);

        assert!(matches!(
            validate_structure(&v_poset_free_band_order(), StructureKind::Poset),
            ValidationReport::Pass
        ));
    }

    #[test]
    fn mutual_absorption_relation_of_the_named_band() {
        let band = zero_under_right_zero_pair();
        let relation = apply_u(&band, &IdentityScheme::mutual_absorption()).unwrap();
        let expected =
            RelationalStructure::equivalence_from_blocks(3, &[vec![1, 2], vec![0]]).unwrap();
        assert!(relation.same_relation(&expected));
    }
}
