//! Finite algebras over explicit operation tables.
//!
//! Universes are always `0..size`; an operation of arity `k` is a dense
//! row-major table with `size^k` entries.  Everything downstream (congruences,
//! free algebras, decompositions) builds on the types here.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// An ordered list of operation symbols with arities.
///
/// Two signatures are equal exactly when their name/arity lists agree in
/// declaration order; no structural matching is attempted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: Vec<(S, usize)>) -> Result<Self> {
        let symbols: Vec<(String, usize)> =
            symbols.into_iter().map(|(n, a)| (n.into(), a)).collect();
        for (i, (name, _)) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    /// The single binary `mul` used by bands and semilattices.
    pub fn band() -> Self {
        Signature::new(vec![("mul", 2)]).unwrap()
    }

    /// `meet`, `join`, `bot`, `top` — the bounded-lattice signature.
    pub fn bounded_lattice() -> Self {
        Signature::new(vec![("meet", 2), ("join", 2), ("bot", 0), ("top", 0)]).unwrap()
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, a)| a)
    }
}

/// A term over a signature; variables are 1-based (`x1`, `x2`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are 1-based");
        Term::Var(index)
    }

    pub fn app<S: Into<String>>(name: S, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    /// Left-associated application of a binary symbol over `items`.
    pub fn fold_binary<S: Into<String> + Clone>(name: S, items: &[Term]) -> Term {
        assert!(!items.is_empty());
        let mut acc = items[0].clone();
        for item in &items[1..] {
            acc = Term::app(name.clone(), vec![acc, item.clone()]);
        }
        acc
    }

    /// Largest variable index occurring in the term (0 when ground).
    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::App(_, args) => args.iter().map(Term::max_var).max().unwrap_or(0),
        }
    }

    /// Checks that every symbol exists in `sig` with the right arity.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let arity = sig
                    .arity(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.validate(sig))
            }
        }
    }

    /// Parses `name(arg, ...)` syntax; `x<digits>` is a variable, a bare
    /// identifier is a nullary application.
    pub fn parse(input: &str) -> Result<Term> {
        let bytes = input.as_bytes();
        let mut pos = 0usize;
        let term = parse_term(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::TermSyntax {
                pos,
                msg: "trailing input".into(),
            });
        }
        Ok(term)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_term(bytes: &[u8], pos: &mut usize) -> Result<Term> {
    skip_ws(bytes, pos);
    let start = *pos;
    while *pos < bytes.len() && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_') {
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::TermSyntax {
            pos: start,
            msg: "expected identifier".into(),
        });
    }
    let ident = std::str::from_utf8(&bytes[start..*pos]).unwrap().to_string();
    skip_ws(bytes, pos);
    if *pos < bytes.len() && bytes[*pos] == b'(' {
        *pos += 1;
        let mut args = Vec::new();
        skip_ws(bytes, pos);
        if *pos < bytes.len() && bytes[*pos] == b')' {
            *pos += 1;
            return Ok(Term::App(ident, args));
        }
        loop {
            args.push(parse_term(bytes, pos)?);
            skip_ws(bytes, pos);
            match bytes.get(*pos) {
                Some(b',') => *pos += 1,
                Some(b')') => {
                    *pos += 1;
                    return Ok(Term::App(ident, args));
                }
                _ => {
                    return Err(Error::TermSyntax {
                        pos: *pos,
                        msg: "expected `,` or `)`".into(),
                    })
                }
            }
        }
    }
    // Bare identifier: variable if it matches x<digits>, else a constant.
    if let Some(rest) = ident.strip_prefix('x') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            let index: usize = rest.parse().map_err(|_| Error::TermSyntax {
                pos: start,
                msg: "variable index out of range".into(),
            })?;
            if index == 0 {
                return Err(Error::TermSyntax {
                    pos: start,
                    msg: "variables are 1-based".into(),
                });
            }
            return Ok(Term::Var(index));
        }
    }
    Ok(Term::App(ident, Vec::new()))
}

/// Outcome of checking a single identity on an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Lexicographically first failing assignment, if any.
    pub counterexample: Option<Vec<usize>>,
}

/// One failed identity from a variety membership check.
#[derive(Debug, Clone)]
pub struct IdentityFailure {
    pub index: usize,
    pub lhs: Term,
    pub rhs: Term,
    pub assignment: Vec<usize>,
}

/// Report from [`FiniteAlgebra::check_variety`].
#[derive(Debug, Clone)]
pub struct VarietyReport {
    pub passed: bool,
    pub failures: Vec<IdentityFailure>,
}

/// Registry of varieties with built-in free-algebra backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    /// Right regular bands: idempotent semigroups with `aba = ba`.
    Rrb,
    /// Meet-semilattices presented over the plain `mul` signature.
    Semilattice,
    /// Bounded distributive lattices.
    BoundedDl,
}

impl Variety {
    pub fn id(self) -> &'static str {
        match self {
            Variety::Rrb => "rrb",
            Variety::Semilattice => "semilattice",
            Variety::BoundedDl => "bounded-dl",
        }
    }

    pub fn from_id(id: &str) -> Option<Variety> {
        match id {
            "rrb" => Some(Variety::Rrb),
            "semilattice" => Some(Variety::Semilattice),
            "bounded-dl" => Some(Variety::BoundedDl),
            _ => None,
        }
    }

    pub fn signature(self) -> Signature {
        match self {
            Variety::Rrb | Variety::Semilattice => Signature::band(),
            Variety::BoundedDl => Signature::bounded_lattice(),
        }
    }

    pub fn spec(self) -> VarietySpec {
        VarietySpec::registry(self)
    }
}

/// A signature together with defining identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    signature: Signature,
    identities: Vec<(Term, Term)>,
    registry: Option<Variety>,
}

impl VarietySpec {
    pub fn registry(variety: Variety) -> Self {
        let mul = |a, b| Term::app("mul", vec![a, b]);
        let x1 = || Term::var(1);
        let x2 = || Term::var(2);
        let x3 = || Term::var(3);
        let identities = match variety {
            Variety::Rrb => vec![
                (mul(mul(x1(), x2()), x3()), mul(x1(), mul(x2(), x3()))),
                (mul(x1(), x1()), x1()),
                // a.b.a = b.a, the defining law of right regularity
                (mul(mul(x1(), x2()), x1()), mul(x2(), x1())),
            ],
            Variety::Semilattice => vec![
                (mul(mul(x1(), x2()), x3()), mul(x1(), mul(x2(), x3()))),
                (mul(x1(), x1()), x1()),
                (mul(x1(), x2()), mul(x2(), x1())),
            ],
            Variety::BoundedDl => bounded_lattice_identities(true),
        };
        VarietySpec {
            signature: variety.signature(),
            identities,
            registry: Some(variety),
        }
    }

    /// Bounded lattices without distributivity; has no registry entry.
    pub fn bounded_lattice() -> Self {
        VarietySpec {
            signature: Signature::bounded_lattice(),
            identities: bounded_lattice_identities(false),
            registry: None,
        }
    }

    pub fn custom(signature: Signature, identities: Vec<(Term, Term)>) -> Result<Self> {
        for (lhs, rhs) in &identities {
            lhs.validate(&signature)?;
            rhs.validate(&signature)?;
        }
        Ok(VarietySpec {
            signature,
            identities,
            registry: None,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn identities(&self) -> &[(Term, Term)] {
        &self.identities
    }

    pub fn registry_id(&self) -> Option<Variety> {
        self.registry
    }
}

fn bounded_lattice_identities(distributive: bool) -> Vec<(Term, Term)> {
    let meet = |a, b| Term::app("meet", vec![a, b]);
    let join = |a, b| Term::app("join", vec![a, b]);
    let bot = || Term::app("bot", vec![]);
    let top = || Term::app("top", vec![]);
    let x1 = || Term::var(1);
    let x2 = || Term::var(2);
    let x3 = || Term::var(3);
    let mut ids = vec![
        (meet(meet(x1(), x2()), x3()), meet(x1(), meet(x2(), x3()))),
        (join(join(x1(), x2()), x3()), join(x1(), join(x2(), x3()))),
        (meet(x1(), x2()), meet(x2(), x1())),
        (join(x1(), x2()), join(x2(), x1())),
        (meet(x1(), x1()), x1()),
        (join(x1(), x1()), x1()),
        (meet(x1(), join(x1(), x2())), x1()),
        (join(x1(), meet(x1(), x2())), x1()),
        (join(x1(), bot()), x1()),
        (meet(x1(), top()), x1()),
    ];
    if distributive {
        ids.push((
            meet(x1(), join(x2(), x3())),
            join(meet(x1(), x2()), meet(x1(), x3())),
        ));
        ids.push((
            join(x1(), meet(x2(), x3())),
            meet(join(x1(), x2()), join(x1(), x3())),
        ));
    }
    ids
}

/// A finite algebra: a signature interpreted by dense operation tables.
///
/// The optional label list is display-only; it never participates in
/// equality comparisons.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    signature: Signature,
    size: usize,
    /// `tables[s]` is row-major over `size^arity(s)` entries.
    tables: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.size == other.size && self.tables == other.tables
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        if tables.len() != signature.symbols().len() {
            return Err(Error::SignatureMismatch);
        }
        for ((name, arity), table) in signature.symbols().iter().zip(&tables) {
            let expected = size.pow(*arity as u32);
            if table.len() != expected {
                return Err(Error::TableLength {
                    name: name.clone(),
                    expected,
                    got: table.len(),
                });
            }
            if let Some(&value) = table.iter().find(|&&v| v >= size) {
                return Err(Error::EntryOutOfRange { value, size });
            }
        }
        Ok(FiniteAlgebra {
            signature,
            size,
            tables,
            labels: None,
        })
    }

    /// Single binary operation `mul` given as nested rows (`table[a][b]`).
    pub fn from_binary_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        let mut flat = Vec::with_capacity(size * size);
        for row in &table {
            if row.len() != size {
                return Err(Error::TableLength {
                    name: "mul".into(),
                    expected: size * size,
                    got: row.len() * size,
                });
            }
            flat.extend_from_slice(row);
        }
        FiniteAlgebra::new(Signature::band(), size, vec![flat])
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

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `i`: its label when present, else `e{i}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format!("e{i}"),
        }
    }

    fn table_index(&self, args: &[usize]) -> usize {
        let mut index = 0;
        for &a in args {
            debug_assert!(a < self.size);
            index = index * self.size + a;
        }
        index
    }

    /// Applies operation symbol `sym` (by index) to `args`.
    pub fn op(&self, sym: usize, args: &[usize]) -> usize {
        self.tables[sym][self.table_index(args)]
    }

    pub fn op_named(&self, name: &str, args: &[usize]) -> Result<usize> {
        let sym = self
            .signature
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let (_, arity) = self.signature.symbols()[sym];
        if args.len() != arity {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                expected: arity,
                got: args.len(),
            });
        }
        if let Some(&a) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::ElementOutOfRange(a));
        }
        Ok(self.op(sym, args))
    }

    /// Shorthand for the binary `mul` of band-signature algebras.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op(0, &[a, b])
    }

    /// Evaluates `term` under `assignment`, where `assignment[i]` is the
    /// value of variable `x(i+1)`.
    pub fn eval(&self, term: &Term, assignment: &[usize]) -> Result<usize> {
        match term {
            Term::Var(i) => assignment
                .get(i - 1)
                .copied()
                .filter(|&v| v < self.size)
                .ok_or(Error::MissingBinding(*i)),
            Term::App(name, args) => {
                let mut values = Vec::with_capacity(args.len());
                for arg in args {
                    values.push(self.eval(arg, assignment)?);
                }
                self.op_named(name, &values)
            }
        }
    }

    /// Checks `lhs = rhs` under every assignment of the variables occurring
    /// in either side.  The counterexample, when present, is the
    /// lexicographically first failing assignment.
    pub fn holds_identity(&self, lhs: &Term, rhs: &Term) -> Result<IdentityCheck> {
        lhs.validate(&self.signature)?;
        rhs.validate(&self.signature)?;
        let vars = lhs.max_var().max(rhs.max_var());
        for assignment in Assignments::new(self.size, vars) {
            if self.eval(lhs, &assignment)? != self.eval(rhs, &assignment)? {
                return Ok(IdentityCheck {
                    holds: false,
                    counterexample: Some(assignment),
                });
            }
        }
        Ok(IdentityCheck {
            holds: true,
            counterexample: None,
        })
    }

    /// Checks every identity of `spec`; the report lists each failure with
    /// its first witness.
    pub fn check_variety(&self, spec: &VarietySpec) -> Result<VarietyReport> {
        if *spec.signature() != self.signature {
            return Err(Error::SignatureMismatch);
        }
        let mut failures = Vec::new();
        for (index, (lhs, rhs)) in spec.identities().iter().enumerate() {
            let check = self.holds_identity(lhs, rhs)?;
            if let Some(assignment) = check.counterexample {
                failures.push(IdentityFailure {
                    index,
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    assignment,
                });
            }
        }
        Ok(VarietyReport {
            passed: failures.is_empty(),
            failures,
        })
    }

    pub fn is_in_variety(&self, spec: &VarietySpec) -> Result<bool> {
        Ok(self.check_variety(spec)?.passed)
    }

    /// Componentwise product; element `(i, j)` is encoded as `i * |b| + j`.
    pub fn direct_product(&self, other: &FiniteAlgebra) -> Result<Product> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch);
        }
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut tables = Vec::with_capacity(self.tables.len());
        for (sym, (_, arity)) in self.signature.symbols().iter().enumerate() {
            let mut table = Vec::with_capacity(size.pow(*arity as u32));
            let mut left_args = vec![0usize; *arity];
            let mut right_args = vec![0usize; *arity];
            for args in Assignments::new(size, *arity) {
                for (k, &pair) in args.iter().enumerate() {
                    left_args[k] = pair / m;
                    right_args[k] = pair % m;
                }
                table.push(self.op(sym, &left_args) * m + other.op(sym, &right_args));
            }
            tables.push(table);
        }
        let mut algebra = FiniteAlgebra::new(self.signature.clone(), size, tables)?;
        if let (Some(la), Some(lb)) = (&self.labels, &other.labels) {
            let labels = (0..size)
                .map(|p| format!("({},{})", la[p / m], lb[p % m]))
                .collect();
            algebra = algebra.with_labels(labels)?;
        }
        let pairs: Vec<(usize, usize)> = (0..size).map(|p| (p / m, p % m)).collect();
        let left = Homomorphism::new(
            algebra.clone(),
            self.clone(),
            pairs.iter().map(|&(i, _)| i).collect(),
        )?;
        let right = Homomorphism::new(
            algebra.clone(),
            other.clone(),
            pairs.iter().map(|&(_, j)| j).collect(),
        )?;
        Ok(Product {
            algebra,
            left,
            right,
            pairs,
        })
    }

    /// Closure of `seed` under all operations, with the restriction algebra.
    pub fn generated_subuniverse(&self, seed: &[usize]) -> Result<Subuniverse> {
        if let Some(&bad) = seed.iter().find(|&&s| s >= self.size) {
            return Err(Error::ElementOutOfRange(bad));
        }
        let mut members: BTreeSet<usize> = seed.iter().copied().collect();
        loop {
            let snapshot: Vec<usize> = members.iter().copied().collect();
            let mut grew = false;
            for (sym, (_, arity)) in self.signature.symbols().iter().enumerate() {
                for combo in Assignments::new(snapshot.len(), *arity) {
                    let args: Vec<usize> = combo.iter().map(|&c| snapshot[c]).collect();
                    if members.insert(self.op(sym, &args)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let elements: Vec<usize> = members.iter().copied().collect();
        if elements.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let position = |x: usize| elements.binary_search(&x).unwrap();
        let mut tables = Vec::with_capacity(self.tables.len());
        for (sym, (_, arity)) in self.signature.symbols().iter().enumerate() {
            let mut table = Vec::with_capacity(elements.len().pow(*arity as u32));
            for combo in Assignments::new(elements.len(), *arity) {
                let args: Vec<usize> = combo.iter().map(|&c| elements[c]).collect();
                table.push(position(self.op(sym, &args)));
            }
            tables.push(table);
        }
        let mut algebra = FiniteAlgebra::new(self.signature.clone(), elements.len(), tables)?;
        if let Some(labels) = &self.labels {
            algebra = algebra.with_labels(elements.iter().map(|&e| labels[e].clone()).collect())?;
        }
        Ok(Subuniverse { elements, algebra })
    }
}

/// Result of [`FiniteAlgebra::direct_product`].
#[derive(Debug, Clone)]
pub struct Product {
    pub algebra: FiniteAlgebra,
    /// Projection onto the left factor.
    pub left: Homomorphism,
    /// Projection onto the right factor.
    pub right: Homomorphism,
    /// Decoding table: `pairs[p] = (i, j)` for encoded element `p`.
    pub pairs: Vec<(usize, usize)>,
}

/// Result of [`FiniteAlgebra::generated_subuniverse`].
#[derive(Debug, Clone)]
pub struct Subuniverse {
    /// Sorted members of the closure, in ambient indices; doubles as the
    /// translation table from restriction indices back to the ambient algebra.
    pub elements: Vec<usize>,
    pub algebra: FiniteAlgebra,
}

/// A verified homomorphism between algebras of the same signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    map: Vec<usize>,
}

impl Homomorphism {
    /// Verifies preservation of every operation on construction.
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, map: Vec<usize>) -> Result<Self> {
        if source.signature != target.signature {
            return Err(Error::SignatureMismatch);
        }
        if map.len() != source.size {
            return Err(Error::SizeMismatch(map.len(), source.size));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size) {
            return Err(Error::ElementOutOfRange(bad));
        }
        for (sym, (name, arity)) in source.signature.symbols().iter().enumerate() {
            for args in Assignments::new(source.size, *arity) {
                let image_args: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                if map[source.op(sym, &args)] != target.op(sym, &image_args) {
                    return Err(Error::NotAHomomorphism {
                        op: name.clone(),
                        witness: args,
                    });
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self.then(g)` is the composite `g . self` (apply `self` first).
    pub fn then(&self, g: &Homomorphism) -> Result<Homomorphism> {
        if self.target != g.source {
            return Err(Error::SizeMismatch(self.target.size, g.source.size));
        }
        let map = self.map.iter().map(|&x| g.map[x]).collect();
        Homomorphism::new(self.source.clone(), g.target.clone(), map)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size != self.target.size {
            return false;
        }
        let mut seen = vec![false; self.target.size];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_bijective() {
            return Err(Error::Internal("inverse of a non-bijective map"));
        }
        let mut map = vec![0usize; self.target.size];
        for (x, &v) in self.map.iter().enumerate() {
            map[v] = x;
        }
        Homomorphism::new(self.target.clone(), self.source.clone(), map)
    }
}

/// All homomorphisms `a -> b`, duplicate-free, sorted lexicographically by
/// their map arrays.
///
/// Backtracking assigns images in index order; after fixing the image of
/// `i`, every operation constraint that first becomes fully determined at
/// `i` is checked, which prunes inconsistent prefixes early.
pub fn enumerate_homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Vec<Homomorphism>> {
    if a.signature != b.signature {
        return Err(Error::SignatureMismatch);
    }
    let mut found = Vec::new();
    let mut map = vec![0usize; a.size];
    search_maps(a, b, &mut map, 0, &mut |map| {
        found.push(Homomorphism {
            source: a.clone(),
            target: b.clone(),
            map: map.to_vec(),
        });
    });
    Ok(found)
}

/// First isomorphism `a -> b` in lexicographic map order, if any.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Homomorphism>> {
    if a.signature != b.signature {
        return Err(Error::SignatureMismatch);
    }
    if a.size != b.size {
        return Ok(None);
    }
    let mut map = vec![0usize; a.size];
    let mut used = vec![false; b.size];
    if search_iso(a, b, &mut map, &mut used, 0) {
        let hom = Homomorphism {
            source: a.clone(),
            target: b.clone(),
            map: map.clone(),
        };
        // A bijective homomorphism of algebras always inverts to a
        // homomorphism; verify anyway since the contract promises it.
        debug_assert!(hom.inverse().is_ok());
        Ok(Some(hom))
    } else {
        Ok(None)
    }
}

fn search_maps(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    map: &mut [usize],
    next: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if next == map.len() {
        emit(map);
        return;
    }
    for candidate in 0..b.size {
        map[next] = candidate;
        if prefix_consistent(a, b, map, next) {
            search_maps(a, b, map, next + 1, emit);
        }
    }
}

fn search_iso(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    map: &mut [usize],
    used: &mut [bool],
    next: usize,
) -> bool {
    if next == map.len() {
        return true;
    }
    for candidate in 0..b.size {
        if used[candidate] {
            continue;
        }
        map[next] = candidate;
        if prefix_consistent(a, b, map, next) {
            used[candidate] = true;
            if search_iso(a, b, map, used, next + 1) {
                return true;
            }
            used[candidate] = false;
        }
    }
    false
}

/// Checks every operation constraint that becomes fully determined once
/// elements `0..=last` have images: argument tuples over the assigned prefix
/// whose result is also assigned, where `last` participates as an argument
/// or as the result.
fn prefix_consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize], last: usize) -> bool {
    for (sym, (_, arity)) in a.signature.symbols().iter().enumerate() {
        let mut image_args = vec![0usize; *arity];
        for args in Assignments::new(last + 1, *arity) {
            let result = a.op(sym, &args);
            let fresh = args.contains(&last) || result == last;
            if !fresh || result > last {
                continue;
            }
            for (k, &arg) in args.iter().enumerate() {
                image_args[k] = map[arg];
            }
            if b.op(sym, &image_args) != map[result] {
                return false;
            }
        }
    }
    true
}

/// Iterator over all `len`-tuples with entries in `0..base`, in
/// lexicographic order (first coordinate most significant).
pub struct Assignments {
    base: usize,
    current: Vec<usize>,
    done: bool,
}

impl Assignments {
    pub fn new(base: usize, len: usize) -> Self {
        Assignments {
            base,
            current: vec![0; len],
            done: base == 0 && len > 0,
        }
    }
}

impl Iterator for Assignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.base {
                break;
            }
            self.current[pos] = 0;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Three-element band: a bottom absorbing element under two right-zero
    /// elements (multiplication table rows are 0, a, b).
    pub fn sample_band() -> FiniteAlgebra {
        FiniteAlgebra::from_binary_table(vec![
            vec![0, 0, 0],
            vec![0, 1, 2],
            vec![0, 1, 2],
        ])
        .unwrap()
        .with_labels(vec!["0".into(), "a".into(), "b".into()])
        .unwrap()
    }

    fn two_chain() -> FiniteAlgebra {
        // meet of the chain 0 < 1
        FiniteAlgebra::from_binary_table(vec![vec![0, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn eval_and_op() {
        let a = sample_band();
        let term = Term::parse("mul(x1,x2)").unwrap();
        assert_eq!(a.eval(&term, &[1, 2]).unwrap(), 2);
        assert_eq!(a.eval(&term, &[2, 0]).unwrap(), 0);
        assert!(matches!(
            a.eval(&term, &[1]),
            Err(Error::MissingBinding(2))
        ));
    }

    #[test]
    fn term_parser_round_trip() {
        for text in ["mul(x1,x2)", "meet(x1,join(x2,x3))", "bot", "top"] {
            let term = Term::parse(text).unwrap();
            assert_eq!(term.to_string(), text);
        }
        assert!(matches!(
            Term::parse("mul(x1,"),
            Err(Error::TermSyntax { .. })
        ));
        assert_eq!(Term::parse("bot()").unwrap(), Term::app("bot", vec![]));
    }

    #[test]
    fn identity_counterexample_is_lex_first() {
        let a = sample_band();
        let comm = a
            .holds_identity(
                &Term::parse("mul(x1,x2)").unwrap(),
                &Term::parse("mul(x2,x1)").unwrap(),
            )
            .unwrap();
        assert!(!comm.holds);
        assert_eq!(comm.counterexample, Some(vec![1, 2]));
        let idem = a
            .holds_identity(&Term::parse("mul(x1,x1)").unwrap(), &Term::var(1))
            .unwrap();
        assert!(idem.holds);
    }

    #[test]
    fn variety_membership() {
        let a = sample_band();
        assert!(a.is_in_variety(&Variety::Rrb.spec()).unwrap());
        assert!(!a.is_in_variety(&Variety::Semilattice.spec()).unwrap());
        // Left-zero band fails right regularity.
        let left_zero =
            FiniteAlgebra::from_binary_table(vec![vec![0, 0], vec![1, 1]]).unwrap();
        let report = left_zero.check_variety(&Variety::Rrb.spec()).unwrap();
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.index == 2));
    }

    #[test]
    fn homomorphism_enumeration_sorted() {
        let single = FiniteAlgebra::from_binary_table(vec![vec![0]]).unwrap();
        let homs = enumerate_homomorphisms(&single, &sample_band()).unwrap();
        // One per element: every element of the target is idempotent.
        assert_eq!(homs.len(), 3);
        let maps: Vec<Vec<usize>> = homs.iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(maps, vec![vec![0], vec![1], vec![2]]);

        let chain = two_chain();
        let homs = enumerate_homomorphisms(&chain, &chain).unwrap();
        let maps: Vec<Vec<usize>> = homs.iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn isomorphism_found_and_refused() {
        let a = sample_band();
        // Relabel by swapping the two right-zero elements.
        let b = FiniteAlgebra::from_binary_table(vec![
            vec![0, 0, 0],
            vec![0, 1, 2],
            vec![0, 1, 2],
        ])
        .unwrap();
        let iso = find_isomorphism(&a, &b).unwrap().unwrap();
        assert!(iso.is_bijective());
        let chain = two_chain();
        assert!(find_isomorphism(&a, &chain).unwrap().is_none());
    }

    #[test]
    fn product_of_chains_is_diamond() {
        let chain = two_chain();
        let product = chain.direct_product(&chain).unwrap();
        assert_eq!(product.algebra.size(), 4);
        assert!(product
            .algebra
            .is_in_variety(&Variety::Semilattice.spec())
            .unwrap());
        // (0,1) and (1,0) meet at the bottom.
        let p = 1; // 0*2+1
        let q = 2; // 1*2+0
        assert_eq!(product.algebra.mul(p, q), 0);
        assert_eq!(product.pairs[3], (1, 1));
        assert_eq!(product.left.apply(q), 1);
        assert_eq!(product.right.apply(q), 0);
    }

    #[test]
    fn subuniverse_closure() {
        let a = sample_band();
        let sub = a.generated_subuniverse(&[2, 0]).unwrap();
        assert_eq!(sub.elements, vec![0, 2]);
        assert_eq!(sub.algebra.size(), 2);
        assert_eq!(sub.algebra.label(1), "b");
    }

    #[test]
    fn assignments_are_lexicographic() {
        let all: Vec<Vec<usize>> = Assignments::new(2, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(Assignments::new(3, 0).count(), 1);
    }
}
