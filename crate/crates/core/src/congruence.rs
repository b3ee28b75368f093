//! Partitions, congruences, quotients, and the congruence lattice.
//!
//! Partitions are stored in canonical representative form: `rep[i]` is the
//! least member of the block containing `i`.  Two partitions are equal as
//! values exactly when they are equal as partitions, so they can be hashed
//! and compared directly.  A [`CongruenceWitness`] pairs a partition with
//! the algebra it is compatible with, verified at construction.

use std::collections::{HashSet, VecDeque};

use crate::algebra::{FiniteAlgebra, Homomorphism};
use crate::{Error, Result};

/// Upper bound on the universe size for whole-lattice congruence
/// enumeration; beyond this the closure easily explodes combinatorially.
pub const CONGRUENCE_LATTICE_SIZE_BOUND: usize = 12;

/// Safety valve on the number of congruences the join closure will collect.
const CONGRUENCE_COUNT_CAP: usize = 200_000;

/// A partition of `0..n` in least-member representative form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    /// The discrete partition: every element alone.
    pub fn identity(n: usize) -> Partition {
        Partition {
            rep: (0..n).collect(),
        }
    }

    /// The one-block partition.
    pub fn full(n: usize) -> Partition {
        Partition { rep: vec![0; n] }
    }

    /// Wraps a representative array, insisting on canonical form:
    /// `rep[i] <= i` and `rep[rep[i]] == rep[i]` (which together force each
    /// representative to be its block's least member).
    pub fn from_rep(rep: Vec<usize>) -> Result<Partition> {
        for (i, &r) in rep.iter().enumerate() {
            if r > i || rep[r] != r {
                return Err(Error::BadPartition);
            }
        }
        Ok(Partition { rep })
    }

    /// Smallest partition relating every listed pair.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Partition> {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::ElementOutOfRange(a.max(b)));
            }
            uf.union(a, b);
        }
        Ok(uf.into_partition())
    }

    /// Partition with exactly the given blocks, which must cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut rep = vec![usize::MAX; n];
        for block in blocks {
            let &least = block.iter().min().ok_or(Error::EmptyBlock)?;
            for &a in block {
                if a >= n {
                    return Err(Error::ElementOutOfRange(a));
                }
                if rep[a] != usize::MAX {
                    return Err(Error::BadBlocks {
                        size: n,
                        witness: a,
                    });
                }
                rep[a] = least;
            }
        }
        if let Some(missing) = rep.iter().position(|&r| r == usize::MAX) {
            return Err(Error::BadBlocks {
                size: n,
                witness: missing,
            });
        }
        Partition::from_rep(rep)
    }

    /// Partition by equal images under `map` (the kernel of a function).
    pub fn kernel_of_map(map: &[usize]) -> Partition {
        let mut first = std::collections::HashMap::new();
        let mut rep = Vec::with_capacity(map.len());
        for (i, &image) in map.iter().enumerate() {
            rep.push(*first.entry(image).or_insert(i));
        }
        Partition { rep }
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn rep(&self, i: usize) -> usize {
        self.rep[i]
    }

    pub fn rep_array(&self) -> &[usize] {
        &self.rep
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    /// Blocks sorted by least member, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.rep.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.rep[i];
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(i);
        }
        blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.rep
            .iter()
            .enumerate()
            .filter(|&(i, &r)| i == r)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_full(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Block of `a`, ascending.
    pub fn block_of(&self, a: usize) -> Vec<usize> {
        let r = self.rep[a];
        (0..self.rep.len()).filter(|&i| self.rep[i] == r).collect()
    }

    /// Common refinement: `a` and `b` related iff related in both.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.rep.len();
        debug_assert_eq!(n, other.rep.len());
        let mut first = std::collections::HashMap::new();
        let mut rep = Vec::with_capacity(n);
        for i in 0..n {
            let key = (self.rep[i], other.rep[i]);
            rep.push(*first.entry(key).or_insert(i));
        }
        Partition { rep }
    }

    /// Transitive closure of the union of the two relations.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.rep.len();
        debug_assert_eq!(n, other.rep.len());
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            uf.union(i, self.rep[i]);
            uf.union(i, other.rep[i]);
        }
        uf.into_partition()
    }

    /// Does every block of `self` sit inside a block of `other`?
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.rep.len()).all(|i| other.same(i, self.rep[i]))
    }

    /// Is the relational composition of the two partitions all of `A x A`?
    /// Equivalently: does every block of `self` meet every block of `other`?
    /// (The criterion is symmetric, so the composition order is moot.)
    pub fn composition_is_full(&self, other: &Partition) -> bool {
        let mine = self.blocks();
        let theirs = other.blocks();
        // A block of `other` is identified by its least member, which is
        // exactly the `other`-representative of everything in it.
        mine.iter().all(|b| {
            theirs
                .iter()
                .all(|c| b.iter().any(|&x| other.rep[x] == c[0]))
        })
    }

    /// Deterministic listing order: finer partitions first (more blocks),
    /// ties broken by representative array.
    pub fn canonical_sort(list: &mut [Partition]) {
        list.sort_by(|a, b| {
            b.num_blocks()
                .cmp(&a.num_blocks())
                .then_with(|| a.rep.cmp(&b.rep))
        });
    }
}

/// How to combine two partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Meet,
    Join,
    Compose,
}

/// Result of [`combine_partitions`]: a partition for meet/join, a fullness
/// verdict for relational composition (which need not be transitive, hence
/// is not returned as a partition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combined {
    Partition(Partition),
    ComposeIsFull(bool),
}

pub fn combine_partitions(a: &Partition, b: &Partition, mode: CombineMode) -> Result<Combined> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch(a.size(), b.size()));
    }
    Ok(match mode {
        CombineMode::Meet => Combined::Partition(a.meet(b)),
        CombineMode::Join => Combined::Partition(a.join(b)),
        CombineMode::Compose => Combined::ComposeIsFull(a.composition_is_full(b)),
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Unions the classes; returns true when they were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so canonical form falls out.
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut rep = vec![0; n];
        for i in 0..n {
            // Roots are minimal in their class by the union rule above.
            rep[i] = self.find(i);
        }
        Partition { rep }
    }
}

/// A partition verified compatible with a specific algebra's operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    algebra: FiniteAlgebra,
    partition: Partition,
}

impl CongruenceWitness {
    /// Verifies compatibility (see [`is_congruence`]) before wrapping.
    pub fn new(algebra: FiniteAlgebra, partition: Partition) -> Result<CongruenceWitness> {
        is_congruence(&algebra, &partition)?;
        Ok(CongruenceWitness { algebra, partition })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }
}

/// Checks compatibility of a partition with every operation, one argument
/// position at a time (sufficient, since positions can be swapped serially).
pub fn is_congruence(algebra: &FiniteAlgebra, p: &Partition) -> Result<()> {
    if p.size() != algebra.size() {
        return Err(Error::SizeMismatch(p.size(), algebra.size()));
    }
    let n = algebra.size();
    for (sym, (name, arity)) in algebra.signature().symbols().iter().enumerate() {
        for a in 0..n {
            let b = p.rep(a);
            if a == b {
                continue;
            }
            for pos in 0..*arity {
                for args in crate::algebra::Assignments::new(n, arity - 1) {
                    let mut with_a = args.clone();
                    with_a.insert(pos, a);
                    let mut with_b = args;
                    with_b.insert(pos, b);
                    let (fa, fb) = (algebra.op(sym, &with_a), algebra.op(sym, &with_b));
                    if !p.same(fa, fb) {
                        return Err(Error::NotACongruence {
                            op: name.clone(),
                            lhs: a,
                            rhs: b,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Least congruence of `algebra` relating every pair in `pairs`.
///
/// Worklist closure: whenever two classes merge, all one-coordinate
/// translations of the merged pair are queued.  Since unary polynomials are
/// compositions of such translations and the queue follows every merge, the
/// result is closed under all translations, hence a congruence.
pub fn congruence_generated(
    algebra: &FiniteAlgebra,
    pairs: &[(usize, usize)],
) -> Result<CongruenceWitness> {
    let partition = generated_partition(algebra, pairs)?;
    CongruenceWitness::new(algebra.clone(), partition)
}

/// Principal congruence generated by one pair.
pub fn principal_congruence(
    algebra: &FiniteAlgebra,
    a: usize,
    b: usize,
) -> Result<CongruenceWitness> {
    congruence_generated(algebra, &[(a, b)])
}

fn generated_partition(algebra: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    let n = algebra.size();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::ElementOutOfRange(a.max(b)));
        }
        queue.push_back((a, b));
    }
    while let Some((a, b)) = queue.pop_front() {
        if !uf.union(a, b) {
            continue;
        }
        for (sym, (_, arity)) in algebra.signature().symbols().iter().enumerate() {
            for pos in 0..*arity {
                for args in crate::algebra::Assignments::new(n, arity - 1) {
                    let mut with_a = args.clone();
                    with_a.insert(pos, a);
                    let mut with_b = args;
                    with_b.insert(pos, b);
                    let (fa, fb) = (algebra.op(sym, &with_a), algebra.op(sym, &with_b));
                    if uf.find(fa) != uf.find(fb) {
                        queue.push_back((fa, fb));
                    }
                }
            }
        }
    }
    Ok(uf.into_partition())
}

/// Quotient algebra together with the projection homomorphism.
///
/// Block `k` of the quotient is the `k`-th block in least-member order, and
/// inherits the label of its least member.
pub fn quotient_algebra(witness: &CongruenceWitness) -> Result<(FiniteAlgebra, Homomorphism)> {
    let algebra = witness.algebra();
    let blocks = witness.partition().blocks();
    let mut block_index = vec![usize::MAX; algebra.size()];
    for (k, block) in blocks.iter().enumerate() {
        for &a in block {
            block_index[a] = k;
        }
    }
    let mut tables = Vec::new();
    for (sym, (_, arity)) in algebra.signature().symbols().iter().enumerate() {
        let mut table = Vec::new();
        for args in crate::algebra::Assignments::new(blocks.len(), *arity) {
            let concrete: Vec<usize> = args.iter().map(|&k| blocks[k][0]).collect();
            table.push(block_index[algebra.op(sym, &concrete)]);
        }
        tables.push(table);
    }
    let mut quotient = FiniteAlgebra::new(algebra.signature().clone(), blocks.len(), tables)?;
    if algebra.labels().is_some() {
        let labels = blocks
            .iter()
            .map(|block| algebra.label(block[0]))
            .collect();
        quotient = quotient.with_labels(labels)?;
    }
    let projection = Homomorphism::new(algebra.clone(), quotient.clone(), block_index)?;
    Ok((quotient, projection))
}

/// Every congruence of `algebra`, canonically sorted (finest first).
///
/// Principal congruences are generated directly; the rest of the lattice is
/// their closure under binary joins.  Universe sizes beyond
/// [`CONGRUENCE_LATTICE_SIZE_BOUND`] are refused up front.
pub fn all_congruences(algebra: &FiniteAlgebra) -> Result<Vec<CongruenceWitness>> {
    let n = algebra.size();
    if n > CONGRUENCE_LATTICE_SIZE_BOUND {
        return Err(Error::SizeBound {
            what: "congruence lattice enumeration",
            size: n,
            bound: CONGRUENCE_LATTICE_SIZE_BOUND,
        });
    }
    let mut known: HashSet<Partition> = HashSet::new();
    let mut ordered: Vec<Partition> = Vec::new();
    let mut pending: VecDeque<Partition> = VecDeque::new();
    let push = |p: Partition,
                known: &mut HashSet<Partition>,
                ordered: &mut Vec<Partition>,
                pending: &mut VecDeque<Partition>| {
        if known.insert(p.clone()) {
            ordered.push(p.clone());
            pending.push_back(p);
        }
    };
    push(
        Partition::identity(n),
        &mut known,
        &mut ordered,
        &mut pending,
    );
    for a in 0..n {
        for b in (a + 1)..n {
            let principal = generated_partition(algebra, &[(a, b)])?;
            push(principal, &mut known, &mut ordered, &mut pending);
        }
    }
    while let Some(next) = pending.pop_front() {
        if known.len() > CONGRUENCE_COUNT_CAP {
            return Err(Error::SizeBound {
                what: "congruence lattice",
                size: known.len(),
                bound: CONGRUENCE_COUNT_CAP,
            });
        }
        let snapshot: Vec<Partition> = ordered.clone();
        for other in snapshot {
            let joined = next.join(&other);
            push(joined, &mut known, &mut ordered, &mut pending);
        }
    }
    Partition::canonical_sort(&mut ordered);
    ordered
        .into_iter()
        .map(|p| CongruenceWitness::new(algebra.clone(), p))
        .collect()
}

/// Unordered pairs of congruences presenting `algebra` as a direct product:
/// trivial meet and full relational composition.  Each pair is listed once,
/// with the canonically smaller member first; the trivial pair
/// `(identity, full)` is included.
pub fn complementary_factor_pairs(
    algebra: &FiniteAlgebra,
) -> Result<Vec<(CongruenceWitness, CongruenceWitness)>> {
    let congruences = all_congruences(algebra)?;
    let mut pairs = Vec::new();
    for (i, theta) in congruences.iter().enumerate() {
        for delta in &congruences[i..] {
            if theta.partition().meet(delta.partition()).is_identity()
                && theta.partition().composition_is_full(delta.partition())
            {
                pairs.push((theta.clone(), delta.clone()));
            }
        }
    }
    Ok(pairs)
}

/// Outcome of the subdirect-irreducibility test.
#[derive(Debug, Clone)]
pub struct MonolithReport {
    /// Least non-identity congruence, when one exists.
    pub monolith: Option<CongruenceWitness>,
    pub subdirectly_irreducible: bool,
}

/// Intersects all non-identity principal congruences.  The algebra is
/// subdirectly irreducible exactly when the intersection is non-trivial, and
/// that intersection is then the monolith.
pub fn monolith(algebra: &FiniteAlgebra) -> Result<MonolithReport> {
    let n = algebra.size();
    if n < 2 {
        return Err(Error::MonolithUndefined);
    }
    let mut meet = Partition::full(n);
    for a in 0..n {
        for b in (a + 1)..n {
            meet = meet.meet(&generated_partition(algebra, &[(a, b)])?);
        }
    }
    if meet.is_identity() {
        Ok(MonolithReport {
            monolith: None,
            subdirectly_irreducible: false,
        })
    } else {
        Ok(MonolithReport {
            monolith: Some(CongruenceWitness::new(algebra.clone(), meet)?),
            subdirectly_irreducible: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAlgebra, Signature};

    fn sample_band() -> FiniteAlgebra {
        FiniteAlgebra::from_binary_table(vec![
            vec![0, 0, 0],
            vec![0, 1, 2],
            vec![0, 1, 2],
        ])
        .unwrap()
        .with_labels(vec!["0".into(), "a".into(), "b".into()])
        .unwrap()
    }

    /// Meet-semilattice on {bottom, left, right, top} encoded 0..4.
    fn diamond() -> FiniteAlgebra {
        FiniteAlgebra::from_binary_table(vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 2, 2],
            vec![0, 1, 2, 3],
        ])
        .unwrap()
    }

    #[test]
    fn canonical_form_is_enforced() {
        assert!(Partition::from_rep(vec![0, 0, 2]).is_ok());
        // 1 cannot represent a block containing 0.
        assert!(Partition::from_rep(vec![1, 1]).is_err());
        // Non-idempotent representative chain.
        assert!(Partition::from_rep(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn blocks_round_trip() {
        let p = Partition::from_blocks(5, &[vec![3, 0], vec![1], vec![4, 2]]).unwrap();
        assert_eq!(p.rep_array(), &[0, 1, 2, 0, 2]);
        assert_eq!(p.blocks(), vec![vec![0, 3], vec![1], vec![2, 4]]);
        assert_eq!(p.num_blocks(), 3);
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert_eq!(
            Partition::kernel_of_map(&[7, 3, 7, 1]).blocks(),
            vec![vec![0, 2], vec![1], vec![3]]
        );
    }

    #[test]
    fn lattice_operations() {
        let theta = Partition::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let delta = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(theta.meet(&delta).is_identity());
        assert!(theta.join(&delta).is_full());
        assert!(theta.composition_is_full(&delta));
        // Against itself: blocks miss each other, composition stays partial.
        assert!(!theta.composition_is_full(&theta));
        assert!(Partition::identity(4).refines(&theta));
        assert!(!theta.refines(&delta));
        assert_eq!(
            combine_partitions(&theta, &delta, CombineMode::Meet).unwrap(),
            Combined::Partition(Partition::identity(4))
        );
        assert_eq!(
            combine_partitions(&theta, &delta, CombineMode::Compose).unwrap(),
            Combined::ComposeIsFull(true)
        );
        assert!(combine_partitions(&theta, &Partition::identity(3), CombineMode::Join).is_err());
    }

    #[test]
    fn principal_congruences_of_the_sample_band() {
        let band = sample_band();
        let glue_tops = principal_congruence(&band, 1, 2).unwrap();
        assert_eq!(glue_tops.partition().blocks(), vec![vec![0], vec![1, 2]]);
        // Gluing the zero to either top collapses everything: translation by
        // the other top separates, then rejoins the whole universe.
        assert!(principal_congruence(&band, 0, 1).unwrap().partition().is_full());
        assert!(principal_congruence(&band, 0, 2).unwrap().partition().is_full());
        // Empty pair list generates the identity congruence.
        assert!(congruence_generated(&band, &[])
            .unwrap()
            .partition()
            .is_identity());
    }

    #[test]
    fn congruence_check_rejects_incompatible_partition() {
        let band = sample_band();
        let bad = Partition::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(
            CongruenceWitness::new(band, bad),
            Err(Error::NotACongruence { .. })
        ));
    }

    #[test]
    fn whole_congruence_lattice_of_the_sample_band() {
        let lattice = all_congruences(&sample_band()).unwrap();
        assert_eq!(lattice.len(), 3);
        assert!(lattice[0].partition().is_identity());
        assert_eq!(lattice[1].partition().blocks(), vec![vec![0], vec![1, 2]]);
        assert!(lattice[2].partition().is_full());
    }

    #[test]
    fn quotient_collapses_the_top_pair() {
        let band = sample_band();
        let glue_tops = principal_congruence(&band, 1, 2).unwrap();
        let (quotient, projection) = quotient_algebra(&glue_tops).unwrap();
        assert_eq!(quotient.size(), 2);
        assert_eq!(quotient.label(0), "0");
        assert_eq!(quotient.label(1), "a");
        assert_eq!(projection.map(), &[0, 1, 1]);
        assert_eq!(quotient.mul(1, 1), 1);
        assert_eq!(quotient.mul(0, 1), 0);
        // The projection's kernel gives back the congruence.
        assert_eq!(
            &Partition::kernel_of_map(projection.map()),
            glue_tops.partition()
        );
    }

    #[test]
    fn diamond_factors_as_a_square() {
        let pairs = complementary_factor_pairs(&diamond()).unwrap();
        let plain: Vec<(Partition, Partition)> = pairs
            .into_iter()
            .map(|(a, b)| (a.into_partition(), b.into_partition()))
            .collect();
        let n = 4;
        let trivial = (Partition::identity(n), Partition::full(n));
        let horizontal = Partition::from_blocks(n, &[vec![0, 1], vec![2, 3]]).unwrap();
        let vertical = Partition::from_blocks(n, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(plain.contains(&trivial));
        assert!(
            plain.contains(&(horizontal.clone(), vertical.clone()))
                || plain.contains(&(vertical, horizontal))
        );
        assert_eq!(plain.len(), 2);
    }

    #[test]
    fn monolith_detection() {
        let band_report = monolith(&sample_band()).unwrap();
        assert!(band_report.subdirectly_irreducible);
        assert_eq!(
            band_report.monolith.unwrap().partition().blocks(),
            vec![vec![0], vec![1, 2]]
        );
        let diamond_report = monolith(&diamond()).unwrap();
        assert!(!diamond_report.subdirectly_irreducible);
        assert!(diamond_report.monolith.is_none());
        let point = FiniteAlgebra::new(Signature::band(), 1, vec![vec![0]]).unwrap();
        assert!(matches!(monolith(&point), Err(Error::MonolithUndefined)));
    }
}
