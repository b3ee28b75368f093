//! Finite free algebras for the registry varieties.
//!
//! Each variety gets a closed-form backend: injective words for right
//! regular bands, nonempty generator subsets for semilattices, and monotone
//! 0/1 evaluation vectors for bounded distributive lattices.  A brute-force
//! term oracle double-checks the backends on tiny instances.

use std::collections::HashMap;

use crate::algebra::{
    FiniteAlgebra, Homomorphism, Signature, Term, Variety, VarietySpec,
};
use crate::{Error, Result};

/// Generator-count ceilings per backend (the next size up is impractical).
pub const RRB_GENERATOR_BOUND: usize = 5;
pub const SEMILATTICE_GENERATOR_BOUND: usize = 10;
pub const BOUNDED_DL_GENERATOR_BOUND: usize = 4;

/// Total interned-term ceiling for the oracle.
pub const ORACLE_TERM_BOUND: usize = 1_000_000;

/// Free algebras above this size skip the (cubic) constructor-side identity
/// sweep; exhaustive law tests cover the larger backends separately.
const EAGER_VARIETY_CHECK_BOUND: usize = 200;

/// A free algebra with its generators, display forms, and witness terms.
#[derive(Debug, Clone)]
pub struct FreeAlgebraResult {
    variety: Variety,
    algebra: FiniteAlgebra,
    generators: Vec<usize>,
    normal_forms: Vec<String>,
    /// For element `e`, a term in `x1..xn` evaluating to `e` at the
    /// generators; the hook for extending generator maps to homomorphisms.
    witness_terms: Vec<Term>,
}

impl FreeAlgebraResult {
    fn assemble(
        variety: Variety,
        algebra: FiniteAlgebra,
        generators: Vec<usize>,
        normal_forms: Vec<String>,
        witness_terms: Vec<Term>,
    ) -> Result<FreeAlgebraResult> {
        let algebra = algebra.with_labels(normal_forms.clone())?;
        let generated = algebra.generated_subuniverse(&generators)?;
        if generated.elements.len() != algebra.size() {
            return Err(Error::Internal("free generators fail to generate"));
        }
        if algebra.size() <= EAGER_VARIETY_CHECK_BOUND
            && !algebra.is_in_variety(&variety.spec())?
        {
            return Err(Error::Internal("free backend violates its own variety"));
        }
        Ok(FreeAlgebraResult {
            variety,
            algebra,
            generators,
            normal_forms,
            witness_terms,
        })
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn normal_forms(&self) -> &[String] {
        &self.normal_forms
    }

    pub fn witness_terms(&self) -> &[Term] {
        &self.witness_terms
    }

    /// Element index of the normal form `label`, if present.
    pub fn element_by_form(&self, label: &str) -> Option<usize> {
        self.normal_forms.iter().position(|f| f == label)
    }
}

/// Single letters `x y z u v` while they last, then `x1, x2, ...`.
pub fn default_generator_names(n: usize) -> Vec<String> {
    const LETTERS: [&str; 5] = ["x", "y", "z", "u", "v"];
    if n <= LETTERS.len() {
        LETTERS[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// The free algebra on `n` generators with default names.
pub fn free_algebra(variety: Variety, n: usize) -> Result<FreeAlgebraResult> {
    free_algebra_named(variety, &default_generator_names(n))
}

/// The free algebra on named generators (names must be distinct, nonempty).
pub fn free_algebra_named(variety: Variety, names: &[String]) -> Result<FreeAlgebraResult> {
    let n = names.len();
    if n == 0 {
        return Err(Error::NoGenerators);
    }
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() || names[..i].contains(name) {
            return Err(Error::DuplicateSymbol(name.clone()));
        }
    }
    let bound = match variety {
        Variety::Rrb => RRB_GENERATOR_BOUND,
        Variety::Semilattice => SEMILATTICE_GENERATOR_BOUND,
        Variety::BoundedDl => BOUNDED_DL_GENERATOR_BOUND,
    };
    if n > bound {
        return Err(Error::GeneratorBound {
            variety: variety.id(),
            bound,
            got: n,
        });
    }
    match variety {
        Variety::Rrb => free_rrb(names),
        Variety::Semilattice => free_semilattice(names),
        Variety::BoundedDl => free_bounded_dl(names),
    }
}

/// Juxtaposes single-letter names; separates longer ones with `*`.
fn join_names(names: &[String], parts: &[usize]) -> String {
    if names.iter().all(|n| n.chars().count() == 1) {
        parts.iter().map(|&p| names[p].as_str()).collect()
    } else {
        parts
            .iter()
            .map(|&p| names[p].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Free right regular band: nonempty words with pairwise-distinct letters.
/// The product keeps `v` whole and the letters of `u` that `v` lacks:
/// concatenation retaining last occurrences.
fn free_rrb(names: &[String]) -> Result<FreeAlgebraResult> {
    let n = names.len();
    // All injective words, shortest first, lexicographic within a length;
    // length-1 words land at indices 0..n in generator order.
    let mut words: Vec<Vec<usize>> = Vec::new();
    fn grow(prefix: &mut Vec<usize>, n: usize, len: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for letter in 0..n {
            if !prefix.contains(&letter) {
                prefix.push(letter);
                grow(prefix, n, len, out);
                prefix.pop();
            }
        }
    }
    for len in 1..=n {
        grow(&mut Vec::new(), n, len, &mut words);
    }
    let index: HashMap<Vec<usize>, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let size = words.len();
    let mut table = Vec::with_capacity(size * size);
    for u in &words {
        for v in &words {
            let mut w: Vec<usize> = u.iter().filter(|l| !v.contains(l)).copied().collect();
            w.extend_from_slice(v);
            table.push(index[&w]);
        }
    }
    let algebra = FiniteAlgebra::new(Signature::band(), size, vec![table])?;
    let normal_forms = words.iter().map(|w| join_names(names, w)).collect();
    let witness_terms = words
        .iter()
        .map(|w| {
            let letters: Vec<Term> = w.iter().map(|&l| Term::var(l + 1)).collect();
            Term::fold_binary("mul", &letters)
        })
        .collect();
    FreeAlgebraResult::assemble(
        Variety::Rrb,
        algebra,
        (0..n).collect(),
        normal_forms,
        witness_terms,
    )
}

/// Free semilattice: nonempty generator subsets under union, as bitmasks
/// ordered by (popcount, value) so singletons lead in generator order.
fn free_semilattice(names: &[String]) -> Result<FreeAlgebraResult> {
    let n = names.len();
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let size = masks.len();
    let mut table = Vec::with_capacity(size * size);
    for &u in &masks {
        for &v in &masks {
            table.push(index[&(u | v)]);
        }
    }
    let members = |m: u32| -> Vec<usize> { (0..n).filter(|&i| m & (1 << i) != 0).collect() };
    let algebra = FiniteAlgebra::new(Signature::band(), size, vec![table])?;
    let normal_forms = masks.iter().map(|&m| join_names(names, &members(m))).collect();
    let witness_terms = masks
        .iter()
        .map(|&m| {
            let letters: Vec<Term> = members(m).iter().map(|&l| Term::var(l + 1)).collect();
            Term::fold_binary("mul", &letters)
        })
        .collect();
    FreeAlgebraResult::assemble(
        Variety::Semilattice,
        algebra,
        (0..n).collect(),
        normal_forms,
        witness_terms,
    )
}

/// Free bounded distributive lattice: elements are the distinct evaluation
/// vectors of terms over all `{0,1}` generator assignments — exactly the
/// monotone vectors, constants included.  Vector bit `a` is the value under
/// the assignment whose generator `i` reads bit `i` of `a`.
fn free_bounded_dl(names: &[String]) -> Result<FreeAlgebraResult> {
    let n = names.len();
    let points = 1usize << n; // number of assignments
    let full: u32 = if points == 32 {
        u32::MAX
    } else {
        (1u32 << points) - 1
    };
    let monotone = |f: u32| -> bool {
        (0..points).all(|a| {
            (0..n).all(|i| {
                a & (1 << i) != 0 || {
                    let above = a | (1 << i);
                    f & (1 << a) == 0 || f & (1 << above) != 0
                }
            })
        })
    };
    let generator_vector =
        |i: usize| -> u32 { (0..points).filter(|a| a & (1 << i) != 0).map(|a| 1 << a).sum() };
    let gens: Vec<u32> = (0..n).map(generator_vector).collect();
    let mut rest: Vec<u32> = (0..=full)
        .filter(|&f| monotone(f) && !gens.contains(&f))
        .collect();
    rest.sort_by_key(|&f| (f.count_ones(), f));
    let mut vectors = gens.clone();
    vectors.extend(rest);
    let index: HashMap<u32, usize> = vectors.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let size = vectors.len();
    let (mut meet_table, mut join_table) = (
        Vec::with_capacity(size * size),
        Vec::with_capacity(size * size),
    );
    for &u in &vectors {
        for &v in &vectors {
            meet_table.push(index[&(u & v)]);
            join_table.push(index[&(u | v)]);
        }
    }
    let tables = vec![meet_table, join_table, vec![index[&0]], vec![index[&full]]];
    let algebra = FiniteAlgebra::new(Signature::bounded_lattice(), size, tables)?;

    // Display each vector by its minimal true assignments: a least disjunction
    // of conjunctions of generators ("xy+z"); 0 and 1 for the constants.
    let minimal_points = |f: u32| -> Vec<usize> {
        // Ascending assignment value keeps x-led conjunctions first: "xy+z".
        (0..points)
            .filter(|&a| {
                f & (1 << a) != 0
                    && (0..n).all(|i| a & (1 << i) == 0 || f & (1 << (a & !(1 << i))) == 0)
            })
            .collect()
    };
    let mut normal_forms = Vec::with_capacity(size);
    let mut witness_terms = Vec::with_capacity(size);
    for &f in &vectors {
        if f == 0 {
            normal_forms.push("0".to_string());
            witness_terms.push(Term::app("bot", vec![]));
            continue;
        }
        let mins = minimal_points(f);
        if mins == [0] {
            normal_forms.push("1".to_string());
            witness_terms.push(Term::app("top", vec![]));
            continue;
        }
        let mut form_parts = Vec::new();
        let mut term_parts = Vec::new();
        for &a in &mins {
            let letters: Vec<usize> = (0..n).filter(|&i| a & (1 << i) != 0).collect();
            form_parts.push(join_names(names, &letters));
            let vars: Vec<Term> = letters.iter().map(|&l| Term::var(l + 1)).collect();
            term_parts.push(Term::fold_binary("meet", &vars));
        }
        normal_forms.push(form_parts.join("+"));
        witness_terms.push(Term::fold_binary("join", &term_parts));
    }
    FreeAlgebraResult::assemble(
        Variety::BoundedDl,
        algebra,
        (0..n).collect(),
        normal_forms,
        witness_terms,
    )
}

/// Extends a generator map `X -> Y` to the homomorphism between free
/// algebras sending the class of a term to the class of its renaming.
pub fn extend_to_free_morphism(
    generator_map: &[usize],
    fx: &FreeAlgebraResult,
    fy: &FreeAlgebraResult,
) -> Result<Homomorphism> {
    if fx.variety != fy.variety {
        return Err(Error::VarietyMismatch(fx.variety.id(), fy.variety.id()));
    }
    if generator_map.len() != fx.generator_count() {
        return Err(Error::GeneratorCount {
            expected: fx.generator_count(),
            got: generator_map.len(),
        });
    }
    if let Some(&bad) = generator_map
        .iter()
        .find(|&&g| g >= fy.generator_count())
    {
        return Err(Error::ElementOutOfRange(bad));
    }
    let images: Vec<usize> = generator_map.iter().map(|&g| fy.generators[g]).collect();
    extend_generator_assignment(fx, fy.algebra(), &images)
}

/// The unique homomorphism from a free algebra determined by arbitrary
/// generator images in any algebra of the same signature.
pub fn extend_generator_assignment(
    free: &FreeAlgebraResult,
    target: &FiniteAlgebra,
    images: &[usize],
) -> Result<Homomorphism> {
    if images.len() != free.generator_count() {
        return Err(Error::GeneratorCount {
            expected: free.generator_count(),
            got: images.len(),
        });
    }
    let mut map = Vec::with_capacity(free.algebra.size());
    for term in &free.witness_terms {
        map.push(target.eval(term, images)?);
    }
    Homomorphism::new(free.algebra.clone(), target.clone(), map)
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Interned term node: a variable or an application of signature symbol
/// `sym` to earlier node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Var(usize),
    App(usize, Vec<usize>),
}

struct TermStore {
    nodes: Vec<Node>,
    depths: Vec<usize>,
    index: HashMap<Node, usize>,
    parent: Vec<usize>,
    /// Nodes below this id have already been pattern-matched against the
    /// identities.  Matching is purely syntactic, so once is enough.
    seeded: usize,
}

impl TermStore {
    fn new() -> TermStore {
        TermStore {
            nodes: Vec::new(),
            depths: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
            seeded: 0,
        }
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }

    fn intern(&mut self, node: Node) -> Result<usize> {
        if let Some(&id) = self.index.get(&node) {
            return Ok(id);
        }
        if self.nodes.len() >= ORACLE_TERM_BOUND {
            return Err(Error::TermBound {
                bound: ORACLE_TERM_BOUND,
            });
        }
        let depth = match &node {
            Node::Var(_) => 0,
            Node::App(_, args) => {
                1 + args
                    .iter()
                    .map(|&a| self.depths[a])
                    .max()
                    .unwrap_or(0)
            }
        };
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.depths.push(depth);
        self.index.insert(node, id);
        self.parent.push(id);
        Ok(id)
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Unions two classes, keeping the shallower (then earlier) node as the
    /// root so class representatives stay minimal.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let key = |s: &Self, r: usize| (s.depths[r], r);
        if key(self, ra) <= key(self, rb) {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    /// Merges applications whose argument classes coincide, to fixpoint.
    fn congruence_rebuild(&mut self) -> bool {
        let mut changed_ever = false;
        loop {
            let mut changed = false;
            let mut table: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            for id in 0..self.nodes.len() {
                if let Node::App(sym, args) = self.nodes[id].clone() {
                    let key: Vec<usize> = args.iter().map(|&a| self.find(a)).collect();
                    match table.entry((sym, key)) {
                        std::collections::hash_map::Entry::Occupied(seen) => {
                            let other = *seen.get();
                            changed |= self.union(id, other);
                        }
                        std::collections::hash_map::Entry::Vacant(slot) => {
                            slot.insert(id);
                        }
                    }
                }
            }
            changed_ever |= changed;
            if !changed {
                return changed_ever;
            }
        }
    }

    /// Matches `pattern` syntactically against node `id`, extending `binding`
    /// (variable index → node id).
    fn matches(&self, pattern: &Term, id: usize, sig: &Signature, binding: &mut [Option<usize>]) -> bool {
        match pattern {
            Term::Var(v) => match binding[*v - 1] {
                Some(bound) => bound == id,
                None => {
                    binding[*v - 1] = Some(id);
                    true
                }
            },
            Term::App(name, args) => match &self.nodes[id] {
                Node::App(sym, node_args) => {
                    sig.index_of(name) == Some(*sym)
                        && node_args.len() == args.len()
                        && args
                            .iter()
                            .zip(node_args.clone())
                            .all(|(p, a)| self.matches(p, a, sig, binding))
                }
                Node::Var(_) => false,
            },
        }
    }

    /// Builds the instance of `pattern` under `binding`; `None` when a
    /// variable is unbound or the instance exceeds `depth_bound`.
    fn instantiate(
        &mut self,
        pattern: &Term,
        sig: &Signature,
        binding: &[Option<usize>],
        depth_bound: usize,
    ) -> Result<Option<usize>> {
        match pattern {
            Term::Var(v) => Ok(binding[*v - 1]),
            Term::App(name, args) => {
                let sym = sig
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let mut ids = Vec::with_capacity(args.len());
                for arg in args {
                    match self.instantiate(arg, sig, binding, depth_bound)? {
                        Some(id) => ids.push(id),
                        None => return Ok(None),
                    }
                }
                let depth = 1 + ids.iter().map(|&a| self.depths[a]).max().unwrap_or(0);
                if depth > depth_bound {
                    return Ok(None);
                }
                Ok(Some(self.intern(Node::App(sym, ids))?))
            }
        }
    }

    /// Reconstructs a display term for labeling.
    fn to_term(&self, id: usize, sig: &Signature) -> Term {
        match &self.nodes[id] {
            Node::Var(v) => Term::var(v + 1),
            Node::App(sym, args) => {
                let (name, _) = &sig.symbols()[*sym];
                Term::app(
                    name.clone(),
                    args.iter().map(|&a| self.to_term(a, sig)).collect(),
                )
            }
        }
    }
}

/// Brute-force free algebra: enumerate terms layer by layer up to
/// `depth_bound`, identify them by the variety's identities used as
/// bidirectional rewrites, and read the operation tables off the classes.
///
/// Fails with `DepthInsufficient` rather than guessing when products escape
/// the enumerated set or the resulting tables break an identity — so a
/// successful run is a certificate that the result is the free algebra.
pub fn free_algebra_oracle(
    variety: &VarietySpec,
    generator_count: usize,
    depth_bound: usize,
) -> Result<FiniteAlgebra> {
    if generator_count == 0 {
        return Err(Error::NoGenerators);
    }
    if depth_bound == 0 {
        return Err(Error::DepthInsufficient { depth: 0 });
    }
    let sig = variety.signature().clone();
    let mut store = TermStore::new();
    for v in 0..generator_count {
        store.intern(Node::Var(v))?;
    }
    for (sym, (_, arity)) in sig.symbols().iter().enumerate() {
        if *arity == 0 {
            store.intern(Node::App(sym, vec![]))?;
        }
    }
    for _layer in 0..depth_bound {
        let reps = class_representatives(&mut store, generator_count);
        for (sym, (_, arity)) in sig.symbols().iter().enumerate() {
            if *arity == 0 {
                continue;
            }
            for combo in crate::algebra::Assignments::new(reps.len(), *arity) {
                let args: Vec<usize> = combo.iter().map(|&c| reps[c]).collect();
                let depth = 1 + args.iter().map(|&a| store.depths[a]).max().unwrap();
                if depth <= depth_bound {
                    store.intern(Node::App(sym, args))?;
                }
            }
        }
        close_under_identities(&mut store, variety, &sig, depth_bound)?;
    }

    // Read off the finished algebra: universe in representative order with
    // generators first, tables by representative products.
    let reps = class_representatives(&mut store, generator_count);
    let class_index: HashMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let size = reps.len();
    let mut tables = Vec::new();
    for (sym, (_, arity)) in sig.symbols().iter().enumerate() {
        let mut table = Vec::with_capacity(size.pow(*arity as u32));
        for combo in crate::algebra::Assignments::new(size, *arity) {
            let args: Vec<usize> = combo.iter().map(|&c| reps[c]).collect();
            let depth = 1 + args.iter().map(|&a| store.depths[a]).max().unwrap_or(0);
            if depth > depth_bound {
                return Err(Error::DepthInsufficient { depth: depth_bound });
            }
            let product = store.intern(Node::App(sym, args))?;
            let root = store.find(product);
            match class_index.get(&root) {
                Some(&class) => table.push(class),
                // A fresh class at the boundary: the enumerated set was not
                // product-closed after all.
                None => return Err(Error::DepthInsufficient { depth: depth_bound }),
            }
        }
        tables.push(table);
    }
    let mut algebra = FiniteAlgebra::new(sig.clone(), size, tables)?;
    let names = default_generator_names(generator_count);
    let labels = reps
        .iter()
        .map(|&r| {
            let term = store.to_term(r, &sig);
            display_term(&term, &names)
        })
        .collect();
    algebra = algebra.with_labels(labels)?;
    // Last line of defense: the quotient must actually satisfy the variety.
    // An under-merged class set cannot (it would out-count the free algebra),
    // so passing here certifies the construction.
    if !algebra.is_in_variety(variety)? {
        return Err(Error::DepthInsufficient { depth: depth_bound });
    }
    Ok(algebra)
}

/// Current class representatives: generator classes first (in generator
/// order, deduplicated), then the rest by node id.
fn class_representatives(store: &mut TermStore, generator_count: usize) -> Vec<usize> {
    let mut reps = Vec::new();
    for v in 0..generator_count {
        let root = store.find(v);
        if !reps.contains(&root) {
            reps.push(root);
        }
    }
    let mut rest: Vec<usize> = (0..store.len())
        .filter(|&id| store.find(id) == id)
        .filter(|root| !reps.contains(root))
        .collect();
    rest.sort_unstable();
    reps.extend(rest);
    reps
}

/// Seeds identity instances for every not-yet-seeded node (instances created
/// along the way are seeded too), then rebuilds congruence to fixpoint.
/// Matching binds variables to syntactic node ids and never consults the
/// union-find, so a node's matches are fixed at creation — one pass each.
fn close_under_identities(
    store: &mut TermStore,
    variety: &VarietySpec,
    sig: &Signature,
    depth_bound: usize,
) -> Result<()> {
    let mut id = store.seeded;
    while id < store.len() {
        for (lhs, rhs) in variety.identities() {
            for (pattern, counterpart) in [(lhs, rhs), (rhs, lhs)] {
                let vars = lhs.max_var().max(rhs.max_var());
                let mut binding = vec![None; vars];
                if store.matches(pattern, id, sig, &mut binding) {
                    if let Some(instance) =
                        store.instantiate(counterpart, sig, &binding, depth_bound)?
                    {
                        store.union(id, instance);
                    }
                }
            }
        }
        id += 1;
    }
    store.seeded = store.len();
    store.congruence_rebuild();
    Ok(())
}

/// Compact infix-free rendering of a witness term with generator names.
fn display_term(term: &Term, names: &[String]) -> String {
    match term {
        Term::Var(v) => names[*v - 1].clone(),
        Term::App(name, args) if args.is_empty() => name.clone(),
        Term::App(name, args) => {
            let parts: Vec<String> = args.iter().map(|a| display_term(a, names)).collect();
            format!("{name}({})", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_isomorphism;

    #[test]
    fn backend_sizes() {
        let rrb: Vec<usize> = (1..=4)
            .map(|n| free_algebra(Variety::Rrb, n).unwrap().algebra().size())
            .collect();
        assert_eq!(rrb, vec![1, 4, 15, 64]);
        let semilattice: Vec<usize> = (1..=4)
            .map(|n| {
                free_algebra(Variety::Semilattice, n)
                    .unwrap()
                    .algebra()
                    .size()
            })
            .collect();
        assert_eq!(semilattice, vec![1, 3, 7, 15]);
        let dl: Vec<usize> = (1..=3)
            .map(|n| free_algebra(Variety::BoundedDl, n).unwrap().algebra().size())
            .collect();
        assert_eq!(dl, vec![3, 6, 20]);
        assert!(matches!(
            free_algebra(Variety::Rrb, 6),
            Err(Error::GeneratorBound { bound: 5, .. })
        ));
    }

    #[test]
    fn rrb_word_product_keeps_last_occurrences() {
        let free = free_algebra(Variety::Rrb, 3).unwrap();
        assert_eq!(
            free.normal_forms()[..6],
            ["x", "y", "z", "xy", "xz", "yx"].map(String::from)
        );
        let at = |label: &str| free.element_by_form(label).unwrap();
        let mul = |a: &str, b: &str| free.algebra().mul(at(a), at(b));
        assert_eq!(mul("x", "y"), at("xy"));
        assert_eq!(mul("xy", "yx"), at("yx"));
        assert_eq!(mul("xy", "zy"), at("xzy"));
        assert_eq!(mul("xyz", "x"), at("yzx"));
    }

    #[test]
    fn semilattice_normal_forms() {
        let free = free_algebra(Variety::Semilattice, 3).unwrap();
        assert_eq!(
            free.normal_forms(),
            &["x", "y", "z", "xy", "xz", "yz", "xyz"].map(String::from)
        );
        let at = |label: &str| free.element_by_form(label).unwrap();
        assert_eq!(free.algebra().mul(at("xz"), at("y")), at("xyz"));
    }

    #[test]
    fn bounded_dl_normal_forms() {
        let free = free_algebra(Variety::BoundedDl, 2).unwrap();
        assert_eq!(
            free.normal_forms(),
            &["x", "y", "0", "xy", "x+y", "1"].map(String::from)
        );
        let at = |label: &str| free.element_by_form(label).unwrap();
        let meet = |a, b| free.algebra().op_named("meet", &[a, b]).unwrap();
        let join = |a, b| free.algebra().op_named("join", &[a, b]).unwrap();
        assert_eq!(meet(at("x"), at("y")), at("xy"));
        assert_eq!(join(at("x"), at("y")), at("x+y"));
        assert_eq!(meet(at("x+y"), at("x")), at("x"));
        assert_eq!(free.algebra().op_named("bot", &[]).unwrap(), at("0"));
        // Three generators: minimal disjunctive forms show up in labels.
        let three = free_algebra(Variety::BoundedDl, 3).unwrap();
        assert_eq!(three.algebra().size(), 20);
        assert!(three.normal_forms().contains(&"xy+z".to_string()));
    }

    #[test]
    fn free_morphisms_rename_and_collapse() {
        let fx = free_algebra(Variety::Rrb, 2).unwrap();
        let identity = extend_to_free_morphism(&[0, 1], &fx, &fx).unwrap();
        assert_eq!(identity.map(), &[0, 1, 2, 3]);
        let swap = extend_to_free_morphism(&[1, 0], &fx, &fx).unwrap();
        assert_eq!(swap.map(), &[1, 0, 3, 2]);
        let fy = free_algebra(Variety::Rrb, 1).unwrap();
        let collapse = extend_to_free_morphism(&[0, 0], &fx, &fy).unwrap();
        assert_eq!(collapse.map(), &[0, 0, 0, 0]);
        let fs = free_algebra(Variety::Semilattice, 2).unwrap();
        assert!(matches!(
            extend_to_free_morphism(&[0, 1], &fx, &fs),
            Err(Error::VarietyMismatch("rrb", "semilattice"))
        ));
    }

    #[test]
    fn oracle_agrees_with_backends() {
        let tiny = free_algebra_oracle(&Variety::Rrb.spec(), 1, 2).unwrap();
        assert_eq!(tiny.size(), 1);
        let oracle = free_algebra_oracle(&Variety::Rrb.spec(), 2, 3).unwrap();
        assert_eq!(oracle.size(), 4);
        let backend = free_algebra(Variety::Rrb, 2).unwrap();
        assert!(find_isomorphism(backend.algebra(), &oracle)
            .unwrap()
            .is_some());
        let semilattice = free_algebra_oracle(&Variety::Semilattice.spec(), 2, 3).unwrap();
        assert_eq!(semilattice.size(), 3);
    }

    #[test]
    fn oracle_refuses_insufficient_depth() {
        assert!(matches!(
            free_algebra_oracle(&Variety::Rrb.spec(), 2, 1),
            Err(Error::DepthInsufficient { depth: 1 })
        ));
    }

    #[test]
    fn generator_assignments_extend_uniquely() {
        let free = free_algebra(Variety::Semilattice, 2).unwrap();
        let chain = FiniteAlgebra::from_binary_table(vec![vec![0, 0], vec![0, 1]]).unwrap();
        let hom = extend_generator_assignment(&free, &chain, &[1, 0]).unwrap();
        // x ↦ 1, y ↦ 0 forces xy ↦ 0.
        assert_eq!(hom.map(), &[1, 0, 0]);
    }
}
