use thiserror::Error;

/// Errors shared by every module in the crate.
///
/// Anything that represents a *false mathematical verdict* (an identity that
/// fails, a search that comes up empty) is reported through ordinary return
/// values, never through this type; `Error` is reserved for inputs that are
/// outside an operation's contract.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate operation symbol `{0}` in signature")]
    DuplicateSymbol(String),
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("operation `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("variable x{0} has no binding in the assignment")]
    MissingBinding(usize),
    #[error("term is malformed: {0}")]
    MalformedTerm(String),
    #[error("syntax error at byte {pos}: {msg}")]
    TermSyntax { pos: usize, msg: String },
    #[error("algebra size must be positive")]
    EmptyUniverse,
    #[error("table entry {value} out of range for size {size}")]
    EntryOutOfRange { value: usize, size: usize },
    #[error("operation table for `{name}` has wrong length: expected {expected}, got {got}")]
    TableLength {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("label list has wrong length: expected {expected}, got {got}")]
    LabelLength { expected: usize, got: usize },
    #[error("signatures do not match")]
    SignatureMismatch,
    #[error("sizes do not match: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("map is not a homomorphism: image of {witness:?} under `{op}` disagrees")]
    NotAHomomorphism { op: String, witness: Vec<usize> },
    #[error("map does not preserve tuple {0:?}")]
    NotTuplePreserving(Vec<usize>),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("tuple {tuple:?} has arity {got}, scheme expects {expected}")]
    TupleArity {
        tuple: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("relation arity must be positive")]
    ZeroArity,
    #[error("scheme uses variable x{var} beyond its declared arity {arity}")]
    SchemeVariable { var: usize, arity: usize },
    #[error("structure violates the {axiom} axiom of its scheme kind at {witness:?}")]
    SchemeAxiom {
        axiom: &'static str,
        witness: Vec<usize>,
    },
    #[error("structure is not a poset: {axiom} fails at {witness:?}")]
    NotAPoset {
        axiom: &'static str,
        witness: Vec<usize>,
    },
    #[error("structure is not a symmetric graph: tuple {0:?} has no mirror")]
    NotAGraph(Vec<usize>),
    #[error("partition representative array is not in canonical form")]
    BadPartition,
    #[error("partition blocks must cover 0..{size} exactly once; offender {witness}")]
    BadBlocks { size: usize, witness: usize },
    #[error("partition is not compatible with `{op}`: {lhs} ~ {rhs} maps to unrelated elements")]
    NotACongruence { op: String, lhs: usize, rhs: usize },
    #[error("generating pair list is empty")]
    EmptySeed,
    #[error("size {size} exceeds the supported bound {bound} for {what}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("monolith is undefined for a one-element algebra")]
    MonolithUndefined,
    #[error("free algebras over `{variety}` support at most {bound} generators, got {got}")]
    GeneratorBound {
        variety: &'static str,
        bound: usize,
        got: usize,
    },
    #[error("free algebra over this variety needs at least one generator")]
    NoGenerators,
    #[error("term enumeration would exceed {bound} terms; lower the depth or generator count")]
    TermBound { bound: usize },
    #[error("depth {depth} is insufficient: products escape the enumerated term set")]
    DepthInsufficient { depth: usize },
    #[error("scheme base-signature does not match the variety signature")]
    SchemeSignatureMismatch,
    #[error("expected the free algebra on {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("free algebras belong to different varieties: `{0}` vs `{1}`")]
    VarietyMismatch(&'static str, &'static str),
    #[error("algebra is not a right regular band: {0}")]
    NotAnRrb(String),
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("{which} is not a subsemigroup: {a}*{b} = {c} escapes the subset")]
    NotASubsemigroup {
        which: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("subset {0} is empty or out of range")]
    BadSubset(&'static str),
    #[error("congruence pair is not complementary: {0}")]
    NotComplementary(&'static str),
    #[error("algebra has no two-sided identity element")]
    NoIdentityElement,
    #[error("algebra is not a bounded lattice: {0}")]
    NotABoundedLattice(String),
    #[error("covers contain a cycle through element {0}")]
    CyclicCovers(usize),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("equivalence blocks must be nonempty")]
    EmptyBlock,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
