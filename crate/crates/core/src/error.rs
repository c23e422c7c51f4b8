use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not associative: ({s}*{t})*{u} != {s}*({t}*{u})")]
    NonAssociative { s: usize, t: usize, u: usize },
    #[error("element {element} has no inverse")]
    NotRegular { element: usize },
    #[error("element {element} has more than one inverse")]
    NotInverse { element: usize },
    #[error("semigroup is not a semilattice of groups")]
    NotClifford,
    #[error("not a group: {0}")]
    NotGroup(String),
    #[error("operands live in different parent semigroups")]
    ParentMismatch,
    #[error("ideal is empty")]
    EmptyIdeal,
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("subset is not closed under multiplication")]
    NotSubsemigroup,
    #[error("multipliers act on different carriers")]
    CarrierMismatch,
    #[error("maps do not form a multiplier: {0}")]
    NotMultiplier(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("multiplier is not invertible")]
    NotInvertible,
    #[error("carrier does not satisfy S*S = S")]
    SNotIdempotentSquare,
    #[error("not a multiplier of the center")]
    NotMultiplierOfCenter,
    #[error("domain or range mismatch: {0}")]
    DomainMismatch(String),
    #[error("{what}: count {count} exceeds cap {cap}")]
    CapExceeded { what: String, count: u64, cap: u64 },
    #[error("{which} fails at g={g}, h={h}")]
    PhViolation { which: String, g: usize, h: usize },
    #[error("partial homomorphism does not send the identity to [id_A]")]
    NotUnital,
    #[error("{axiom} fails at {witness:?}")]
    TpaViolation { axiom: String, witness: Vec<usize> },
    #[error("{axiom} fails at {witness:?}")]
    PaViolation { axiom: String, witness: Vec<usize> },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("no conjugating multiplier for (g,h)=({g},{h})")]
    NoConjugator { g: usize, h: usize },
    #[error("obstruction value at {args:?} is not a central unit")]
    NotCentral { args: Vec<usize> },
    #[error("obstruction is not a 3-cocycle at {args:?}")]
    NotCocycle { args: Vec<usize> },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("crossed product is not associative at {witness:?}")]
    AssociativityFailure { witness: Vec<usize> },
    #[error("kernel is obstructed (H^3 class {class})")]
    Obstructed { class: usize },
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
