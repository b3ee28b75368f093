//! Relational structures whose relation is defined by identities.
//!
//! A scheme packages a base signature, a relation arity `n`, and a list of
//! identity pairs in variables `x1..xn`; applying it to an algebra yields
//! the set of tuples where every pair evaluates equally.  Posets under the
//! multiplication order and equivalences under mutual absorption are the two
//! built-in band-signature instances; complement graphs of bounded lattices
//! are the third registry entry.

use std::collections::BTreeSet;

use crate::algebra::{Assignments, FiniteAlgebra, Signature, Term};
use crate::{Error, Result};

/// Built-in scheme registry entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeId {
    /// `mul(x1,x2) = x1`: the underlying order of a band.
    PosemigroupOrder,
    /// `mul(x1,x2) = x2` and `mul(x2,x1) = x1`: mutual absorption.
    MutualAbsorptionEquivalence,
    /// `meet(x1,x2) = bot` and `join(x1,x2) = top`: complement pairs.
    Complementation,
}

impl SchemeId {
    pub fn name(self) -> &'static str {
        match self {
            SchemeId::PosemigroupOrder => "posemigroup-order",
            SchemeId::MutualAbsorptionEquivalence => "mutual-absorption-equivalence",
            SchemeId::Complementation => "complementation",
        }
    }

    pub fn from_name(name: &str) -> Option<SchemeId> {
        match name {
            "posemigroup-order" => Some(SchemeId::PosemigroupOrder),
            "mutual-absorption-equivalence" => Some(SchemeId::MutualAbsorptionEquivalence),
            "complementation" => Some(SchemeId::Complementation),
            _ => None,
        }
    }
}

/// An `n`-ary relation symbol defined by a conjunction of identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityScheme {
    base_signature: Signature,
    arity: usize,
    pairs: Vec<(Term, Term)>,
    registry: Option<SchemeId>,
}

impl IdentityScheme {
    pub fn custom(base_signature: Signature, arity: usize, pairs: Vec<(Term, Term)>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::ZeroArity);
        }
        for (lhs, rhs) in &pairs {
            lhs.validate(&base_signature)?;
            rhs.validate(&base_signature)?;
            for var in [lhs.max_var(), rhs.max_var()] {
                if var > arity {
                    return Err(Error::SchemeVariable { var, arity });
                }
            }
        }
        Ok(IdentityScheme {
            base_signature,
            arity,
            pairs,
            registry: None,
        })
    }

    pub fn registry(id: SchemeId) -> Self {
        let mut scheme = match id {
            SchemeId::PosemigroupOrder => IdentityScheme::custom(
                Signature::band(),
                2,
                vec![(
                    Term::app("mul", vec![Term::var(1), Term::var(2)]),
                    Term::var(1),
                )],
            ),
            SchemeId::MutualAbsorptionEquivalence => IdentityScheme::custom(
                Signature::band(),
                2,
                vec![
                    (
                        Term::app("mul", vec![Term::var(1), Term::var(2)]),
                        Term::var(2),
                    ),
                    (
                        Term::app("mul", vec![Term::var(2), Term::var(1)]),
                        Term::var(1),
                    ),
                ],
            ),
            SchemeId::Complementation => IdentityScheme::custom(
                Signature::bounded_lattice(),
                2,
                vec![
                    (
                        Term::app("meet", vec![Term::var(1), Term::var(2)]),
                        Term::app("bot", vec![]),
                    ),
                    (
                        Term::app("join", vec![Term::var(1), Term::var(2)]),
                        Term::app("top", vec![]),
                    ),
                ],
            ),
        }
        .unwrap();
        scheme.registry = Some(id);
        scheme
    }

    pub fn posemigroup_order() -> Self {
        IdentityScheme::registry(SchemeId::PosemigroupOrder)
    }

    pub fn mutual_absorption() -> Self {
        IdentityScheme::registry(SchemeId::MutualAbsorptionEquivalence)
    }

    pub fn complementation() -> Self {
        IdentityScheme::registry(SchemeId::Complementation)
    }

    pub fn base_signature(&self) -> &Signature {
        &self.base_signature
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn pairs(&self) -> &[(Term, Term)] {
        &self.pairs
    }

    pub fn registry_id(&self) -> Option<SchemeId> {
        self.registry
    }
}

/// Axioms a structure can be validated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Poset,
    Equivalence,
    Graph { irreflexive: bool },
}

/// Outcome of [`validate_structure`]: either a pass or the first violated
/// axiom with a witness tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Pass,
    Fail {
        axiom: &'static str,
        witness: Vec<usize>,
    },
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        matches!(self, ValidationReport::Pass)
    }
}

/// A finite set with one definable relation, tuples kept sorted.
///
/// Structures carrying a built-in scheme must satisfy that scheme's kind
/// axioms (partial order for the posemigroup order, equivalence for mutual
/// absorption); the constructor rejects violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalStructure {
    size: usize,
    scheme: IdentityScheme,
    tuples: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl RelationalStructure {
    pub fn new(size: usize, scheme: IdentityScheme, tuples: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(tuples.len());
        for tuple in tuples {
            if tuple.len() != scheme.arity() {
                return Err(Error::TupleArity {
                    expected: scheme.arity(),
                    got: tuple.len(),
                    tuple,
                });
            }
            if let Some(&bad) = tuple.iter().find(|&&v| v >= size) {
                return Err(Error::ElementOutOfRange(bad));
            }
            sorted.push(tuple);
        }
        sorted.sort();
        sorted.dedup();
        let structure = RelationalStructure {
            size,
            scheme,
            tuples: sorted,
            labels: None,
        };
        match structure.scheme.registry_id() {
            Some(SchemeId::PosemigroupOrder) => {
                if let ValidationReport::Fail { axiom, witness } =
                    validate_structure(&structure, StructureKind::Poset)
                {
                    return Err(Error::SchemeAxiom { axiom, witness });
                }
            }
            Some(SchemeId::MutualAbsorptionEquivalence) => {
                if let ValidationReport::Fail { axiom, witness } =
                    validate_structure(&structure, StructureKind::Equivalence)
                {
                    return Err(Error::SchemeAxiom { axiom, witness });
                }
            }
            _ => {}
        }
        Ok(structure)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::LabelLength {
                expected: self.size,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Poset from cover pairs `(lo, hi)`: reflexive-transitive closure,
    /// rejecting cyclic cover sets.
    pub fn poset_from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; size]; size];
        for i in 0..size {
            leq[i][i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= size || hi >= size {
                return Err(Error::ElementOutOfRange(lo.max(hi)));
            }
            leq[lo][hi] = true;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if leq[i][k] {
                    for j in 0..size {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::CyclicCovers(i));
                }
            }
        }
        Self::poset_from_leq(&leq)
    }

    /// Poset from a full `<=` matrix.
    pub fn poset_from_leq(leq: &[Vec<bool>]) -> Result<Self> {
        let size = leq.len();
        let mut tuples = Vec::new();
        for (i, row) in leq.iter().enumerate() {
            for (j, &rel) in row.iter().enumerate() {
                if rel {
                    tuples.push(vec![i, j]);
                }
            }
        }
        RelationalStructure::new(size, IdentityScheme::posemigroup_order(), tuples)
    }

    /// Equivalence with the given blocks (which must partition `0..size`).
    pub fn equivalence_from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut seen = vec![false; size];
        let mut tuples = Vec::new();
        for block in blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &a in block {
                if a >= size {
                    return Err(Error::ElementOutOfRange(a));
                }
                if seen[a] {
                    return Err(Error::BadBlocks { size, witness: a });
                }
                seen[a] = true;
                for &b in block {
                    tuples.push(vec![a, b]);
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::BadBlocks {
                size,
                witness: missing,
            });
        }
        RelationalStructure::new(size, IdentityScheme::mutual_absorption(), tuples)
    }

    /// Symmetric graph from undirected edges, carried on the complementation
    /// scheme (the registry's graph-shaped entry).
    pub fn graph_from_edges(size: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut tuples = Vec::new();
        for &(a, b) in edges {
            tuples.push(vec![a, b]);
            tuples.push(vec![b, a]);
        }
        RelationalStructure::new(size, IdentityScheme::complementation(), tuples)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn scheme(&self) -> &IdentityScheme {
        &self.scheme
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn related(&self, tuple: &[usize]) -> bool {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    /// Binary-relation convenience: is `(a, b)` in the relation?
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.related(&[a, b])
    }

    /// True when the two structures have the same size and tuple set,
    /// ignoring labels and scheme provenance.
    pub fn same_relation(&self, other: &RelationalStructure) -> bool {
        self.size == other.size && self.tuples == other.tuples
    }
}

/// Checks the axioms of `kind`, reporting the first violation.
pub fn validate_structure(s: &RelationalStructure, kind: StructureKind) -> ValidationReport {
    if s.scheme.arity() != 2 {
        return ValidationReport::Fail {
            axiom: "binary relation",
            witness: vec![s.scheme.arity()],
        };
    }
    let fail = |axiom: &'static str, witness: Vec<usize>| ValidationReport::Fail { axiom, witness };
    match kind {
        StructureKind::Poset | StructureKind::Equivalence => {
            for i in 0..s.size {
                if !s.leq(i, i) {
                    return fail("reflexivity", vec![i]);
                }
            }
            match kind {
                StructureKind::Poset => {
                    for t in &s.tuples {
                        let (a, b) = (t[0], t[1]);
                        if a != b && s.leq(b, a) {
                            return fail("antisymmetry", vec![a, b]);
                        }
                    }
                }
                _ => {
                    for t in &s.tuples {
                        if !s.leq(t[1], t[0]) {
                            return fail("symmetry", t.clone());
                        }
                    }
                }
            }
            for t in &s.tuples {
                let (a, b) = (t[0], t[1]);
                for c in 0..s.size {
                    if s.leq(b, c) && !s.leq(a, c) {
                        return fail("transitivity", vec![a, b, c]);
                    }
                }
            }
            ValidationReport::Pass
        }
        StructureKind::Graph { irreflexive } => {
            for t in &s.tuples {
                if !s.leq(t[1], t[0]) {
                    return fail("symmetry", t.clone());
                }
                if irreflexive && t[0] == t[1] {
                    return fail("irreflexivity", t.clone());
                }
            }
            ValidationReport::Pass
        }
    }
}

/// The forgetful direction: collects every tuple of `algebra` satisfying all
/// of the scheme's identity pairs.  Labels carry over.
pub fn apply_u(algebra: &FiniteAlgebra, scheme: &IdentityScheme) -> Result<RelationalStructure> {
    if scheme.base_signature() != algebra.signature() {
        return Err(Error::SchemeSignatureMismatch);
    }
    let mut tuples = Vec::new();
    'tuples: for tuple in Assignments::new(algebra.size(), scheme.arity()) {
        for (lhs, rhs) in scheme.pairs() {
            if algebra.eval(lhs, &tuple)? != algebra.eval(rhs, &tuple)? {
                continue 'tuples;
            }
        }
        tuples.push(tuple);
    }
    let mut structure = RelationalStructure::new(algebra.size(), scheme.clone(), tuples)?;
    if let Some(labels) = algebra.labels() {
        structure = structure.with_labels(labels.to_vec())?;
    }
    Ok(structure)
}

/// The natural order of a band (`mul`) or of a lattice-signature algebra
/// (`meet(x,y) = x`), as a relational structure.
pub fn underlying_order(algebra: &FiniteAlgebra) -> Result<RelationalStructure> {
    if algebra.signature().arity("mul") == Some(2) {
        return apply_u(algebra, &IdentityScheme::posemigroup_order());
    }
    if algebra.signature().arity("meet") == Some(2) {
        let scheme = IdentityScheme::custom(
            algebra.signature().clone(),
            2,
            vec![(
                Term::app("meet", vec![Term::var(1), Term::var(2)]),
                Term::var(1),
            )],
        )?;
        let raw = apply_u(algebra, &scheme)?;
        // Rewrap on the registry poset scheme so downstream order utilities
        // (and the constructor's poset validation) apply.
        let mut ordered = RelationalStructure::new(
            raw.size(),
            IdentityScheme::posemigroup_order(),
            raw.tuples().to_vec(),
        )?;
        if let Some(labels) = raw.labels() {
            ordered = ordered.with_labels(labels.to_vec())?;
        }
        return Ok(ordered);
    }
    Err(Error::UnknownSymbol("mul".into()))
}

/// Cover pairs `(a, b)` of a poset: `a < b` with nothing strictly between.
pub fn hasse_cover_edges(s: &RelationalStructure) -> Result<Vec<(usize, usize)>> {
    if let ValidationReport::Fail { axiom, witness } = validate_structure(s, StructureKind::Poset) {
        return Err(Error::NotAPoset { axiom, witness });
    }
    let mut covers = Vec::new();
    for a in 0..s.size {
        'next: for b in 0..s.size {
            if a == b || !s.leq(a, b) {
                continue;
            }
            for c in 0..s.size {
                if c != a && c != b && s.leq(a, c) && s.leq(c, b) {
                    continue 'next;
                }
            }
            covers.push((a, b));
        }
    }
    covers.sort();
    Ok(covers)
}

/// Height of every element: length of the longest strictly ascending chain
/// below it (minimal elements have height 0).
pub fn poset_heights(s: &RelationalStructure) -> Result<Vec<usize>> {
    if let ValidationReport::Fail { axiom, witness } = validate_structure(s, StructureKind::Poset) {
        return Err(Error::NotAPoset { axiom, witness });
    }
    let mut heights = vec![0usize; s.size];
    // Process elements in order of down-set size so dependencies resolve.
    let mut order: Vec<usize> = (0..s.size).collect();
    let down = |v: usize| (0..s.size).filter(|&u| s.leq(u, v)).count();
    order.sort_by_key(|&v| down(v));
    for &v in &order {
        for u in 0..s.size {
            if u != v && s.leq(u, v) {
                heights[v] = heights[v].max(heights[u] + 1);
            }
        }
    }
    Ok(heights)
}

/// Least upper bound of `{a, b}` in a binary order, when one exists.
/// The structure is trusted to be a poset; see [`validate_structure`].
pub fn least_upper_bound(s: &RelationalStructure, a: usize, b: usize) -> Option<usize> {
    let uppers: Vec<usize> = (0..s.size)
        .filter(|&u| s.leq(a, u) && s.leq(b, u))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&z| uppers.iter().all(|&u| s.leq(z, u)))
}

/// Greatest lower bound of `{a, b}`, when one exists.
pub fn greatest_lower_bound(s: &RelationalStructure, a: usize, b: usize) -> Option<usize> {
    let lowers: Vec<usize> = (0..s.size)
        .filter(|&u| s.leq(u, a) && s.leq(u, b))
        .collect();
    lowers
        .iter()
        .copied()
        .find(|&z| lowers.iter().all(|&u| s.leq(u, z)))
}

/// A verified tuple-preserving map between structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelHomomorphism {
    source: RelationalStructure,
    target: RelationalStructure,
    map: Vec<usize>,
}

impl RelHomomorphism {
    pub fn new(
        source: RelationalStructure,
        target: RelationalStructure,
        map: Vec<usize>,
    ) -> Result<Self> {
        if source.scheme.arity() != target.scheme.arity() {
            return Err(Error::TupleArity {
                tuple: vec![],
                expected: source.scheme.arity(),
                got: target.scheme.arity(),
            });
        }
        if map.len() != source.size {
            return Err(Error::SizeMismatch(map.len(), source.size));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size) {
            return Err(Error::ElementOutOfRange(bad));
        }
        for tuple in &source.tuples {
            let image: Vec<usize> = tuple.iter().map(|&v| map[v]).collect();
            if !target.related(&image) {
                return Err(Error::NotTuplePreserving(tuple.clone()));
            }
        }
        Ok(RelHomomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &RelationalStructure {
        &self.source
    }

    pub fn target(&self) -> &RelationalStructure {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// All tuple-preserving maps `x -> y`, sorted lexicographically by map array.
pub fn enumerate_rel_homomorphisms(
    x: &RelationalStructure,
    y: &RelationalStructure,
) -> Result<Vec<RelHomomorphism>> {
    if x.scheme.arity() != y.scheme.arity() {
        return Err(Error::TupleArity {
            tuple: vec![],
            expected: x.scheme.arity(),
            got: y.scheme.arity(),
        });
    }
    let mut found = Vec::new();
    let mut map = vec![0usize; x.size];
    fn recurse(
        x: &RelationalStructure,
        y: &RelationalStructure,
        map: &mut Vec<usize>,
        next: usize,
        found: &mut Vec<RelHomomorphism>,
    ) {
        if next == x.size() {
            found.push(RelHomomorphism {
                source: x.clone(),
                target: y.clone(),
                map: map.clone(),
            });
            return;
        }
        'candidates: for candidate in 0..y.size() {
            map[next] = candidate;
            // Check tuples that became fully assigned at this step.
            for tuple in x.tuples() {
                if tuple.iter().max() == Some(&next) {
                    let image: Vec<usize> = tuple.iter().map(|&v| map[v]).collect();
                    if !y.related(&image) {
                        continue 'candidates;
                    }
                }
            }
            recurse(x, y, map, next + 1, found);
        }
    }
    recurse(x, y, &mut map, 0, &mut found);
    Ok(found)
}

/// First bijection carrying the tuple set of `a` exactly onto that of `b`,
/// in lexicographic map order.
pub fn find_structure_isomorphism(
    a: &RelationalStructure,
    b: &RelationalStructure,
) -> Option<Vec<usize>> {
    if a.size != b.size
        || a.tuples.len() != b.tuples.len()
        || a.scheme.arity() != b.scheme.arity()
    {
        return None;
    }
    let mut map = vec![0usize; a.size];
    let mut used = vec![false; b.size];
    fn recurse(
        a: &RelationalStructure,
        b: &RelationalStructure,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        if next == a.size() {
            return true;
        }
        'candidates: for candidate in 0..b.size() {
            if used[candidate] {
                continue;
            }
            map[next] = candidate;
            for tuple in a.tuples() {
                if tuple.iter().max() == Some(&next) {
                    let image: Vec<usize> = tuple.iter().map(|&v| map[v]).collect();
                    if !b.related(&image) {
                        continue 'candidates;
                    }
                }
            }
            used[candidate] = true;
            if recurse(a, b, map, used, next + 1) {
                return true;
            }
            used[candidate] = false;
        }
        false
    }
    // An injective tuple-preserving bijection between equal-cardinality tuple
    // sets is automatically an isomorphism.
    if recurse(a, b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

/// Connected components of a symmetric binary structure, sorted by least
/// member; isolated vertices appear as singletons.
pub fn connected_components(s: &RelationalStructure) -> Result<Vec<Vec<usize>>> {
    if let ValidationReport::Fail { witness, .. } =
        validate_structure(s, StructureKind::Graph { irreflexive: false })
    {
        return Err(Error::NotAGraph(witness));
    }
    let mut parent: Vec<usize> = (0..s.size).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for tuple in &s.tuples {
        let (ra, rb) = (find(&mut parent, tuple[0]), find(&mut parent, tuple[1]));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..s.size {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    Ok(groups.into_values().collect())
}

/// The set of maximal elements of a poset.
pub fn maximal_elements(s: &RelationalStructure) -> Vec<usize> {
    (0..s.size)
        .filter(|&a| (0..s.size).all(|b| b == a || !s.leq(a, b)))
        .collect()
}

/// Distinct edge set `{a, b}` (a < b) of a symmetric structure, loops dropped.
pub fn undirected_edges(s: &RelationalStructure) -> Vec<(usize, usize)> {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in &s.tuples {
        if t[0] != t[1] {
            edges.insert((t[0].min(t[1]), t[0].max(t[1])));
        }
    }
    edges.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAlgebra;

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

    #[test]
    fn band_order_is_a_v() {
        let order = apply_u(&sample_band(), &IdentityScheme::posemigroup_order()).unwrap();
        assert_eq!(
            order.tuples(),
            &[vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![2, 2]]
        );
        assert_eq!(hasse_cover_edges(&order).unwrap(), vec![(0, 1), (0, 2)]);
        assert_eq!(maximal_elements(&order), vec![1, 2]);
    }

    #[test]
    fn mutual_absorption_recovers_partition() {
        let eq = apply_u(&sample_band(), &IdentityScheme::mutual_absorption()).unwrap();
        let expected = RelationalStructure::equivalence_from_blocks(3, &[vec![0], vec![1, 2]])
            .unwrap();
        assert!(eq.same_relation(&expected));
    }

    #[test]
    fn constructor_enforces_registry_axioms() {
        // (0,1) alone is not reflexive, so the poset scheme refuses it.
        let err = RelationalStructure::new(
            2,
            IdentityScheme::posemigroup_order(),
            vec![vec![0, 1]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SchemeAxiom { axiom: "reflexivity", .. }));
    }

    #[test]
    fn validation_reports_first_violation() {
        let graphish = RelationalStructure::new(
            2,
            IdentityScheme::complementation(),
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(
            validate_structure(&graphish, StructureKind::Poset),
            ValidationReport::Fail {
                axiom: "reflexivity",
                witness: vec![0]
            }
        );
        assert!(validate_structure(&graphish, StructureKind::Graph { irreflexive: true }).passed());
    }

    #[test]
    fn covers_expand_and_reject_cycles() {
        let v = RelationalStructure::poset_from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(v.leq(0, 1) && v.leq(0, 2) && !v.leq(1, 2));
        assert!(matches!(
            RelationalStructure::poset_from_covers(2, &[(0, 1), (1, 0)]),
            Err(Error::CyclicCovers(_))
        ));
    }

    #[test]
    fn monotone_maps_of_a_chain() {
        let chain = RelationalStructure::poset_from_covers(2, &[(0, 1)]).unwrap();
        let homs = enumerate_rel_homomorphisms(&chain, &chain).unwrap();
        let maps: Vec<Vec<usize>> = homs.iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn components_and_edges() {
        let g = RelationalStructure::graph_from_edges(3, &[(0, 2)]).unwrap();
        assert_eq!(
            connected_components(&g).unwrap(),
            vec![vec![0, 2], vec![1]]
        );
        assert_eq!(undirected_edges(&g), vec![(0, 2)]);
    }

    #[test]
    fn structure_isomorphism() {
        let v = RelationalStructure::poset_from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        let v2 = RelationalStructure::poset_from_covers(3, &[(2, 0), (2, 1)]).unwrap();
        let iso = find_structure_isomorphism(&v, &v2).unwrap();
        assert_eq!(iso[0], 2);
        let lambda = RelationalStructure::poset_from_covers(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(find_structure_isomorphism(&v, &lambda).is_none());
    }

    #[test]
    fn heights_on_a_grid() {
        let grid = RelationalStructure::poset_from_covers(
            4,
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(poset_heights(&grid).unwrap(), vec![0, 1, 1, 2]);
    }
}
