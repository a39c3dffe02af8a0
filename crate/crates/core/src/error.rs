use thiserror::Error;

/// Errors raised while parsing or validating a group.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse group descriptor `{spec}`: {reason}")]
    Parse { spec: String, reason: String },
    #[error("invalid group table: {0}")]
    Table(String),
    #[error("element index {index} out of range for a group of order {order}")]
    Index { index: usize, order: usize },
    #[error("group order {0} exceeds the supported maximum of 512")]
    TooLarge(usize),
}

/// Errors raised by digraph construction and I/O.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("vertex {vertex} out of range for a digraph on {count} vertices")]
    VertexRange { vertex: usize, count: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("malformed digraph input: {0}")]
    Format(String),
}

/// Named precondition violations of the explicit constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecipeError {
    #[error("construction needs a group of order {expected}, got order {actual}")]
    WrongGroup { expected: String, actual: usize },
    #[error("construction needs n >= {min}, got n = {n}")]
    TooFewParts { min: usize, n: usize },
    #[error("the identity must not lie in R")]
    IdentityInR,
    #[error("|R| = {size} violates the bound {bound}")]
    RTooLarge { size: usize, bound: String },
    #[error("Cay(G, R) is not a DRR (automorphism group order {aut_order}, group order {order})")]
    NotDrr { aut_order: String, order: usize },
    #[error("L must avoid R^-1 and the identity")]
    CompanionOverlap,
    #[error("|L| = {l} differs from |R| = {r}")]
    CompanionSize { l: usize, r: usize },
    #[error("Cay(G, R+1, L+1) is not a 2-PDR")]
    NotHaar,
    #[error("construction needs an elementary abelian 2-group")]
    NotElementaryAbelian2,
    #[error("construction needs a group that is not an elementary abelian 2-group")]
    ElementaryAbelian2,
    #[error("element {0} must be a non-identity element outside R")]
    BadExtraElement(usize),
    #[error("element {element} has order {order}; an element of order at least 3 is required")]
    ElementOrder { element: usize, order: usize },
    #[error("derived sets violate the construction invariants: {0}")]
    Derivation(String),
    #[error("hardcoded sets fail their check: {0}")]
    ExceptionalCheck(String),
}

/// Top-level error type of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error("connection family does not match its group: {0}")]
    Family(String),
    #[error("search budget of {budget} candidates exhausted: {what}")]
    BudgetExhausted { what: String, budget: u64 },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exhaustive search found a counterexample: {0}")]
    CounterExample(String),
    #[error("internal verification failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
