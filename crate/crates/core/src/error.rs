use thiserror::Error;

use crate::game::Strategy;

/// Errors from the edge-list reader. Each malformation has its own variant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("line {line}: malformed entry `{content}`")]
    Malformed { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a rooted tree: {0}")]
    NotATree(String),
    #[error("instance of size {n} exceeds guard {guard}")]
    TooLarge { n: usize, guard: usize },
}

/// Violations of the game-level invariants (budgets, tables, assignments).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("budget has {budget} entries but the graph has {n} vertices")]
    BudgetLength { budget: usize, n: usize },
    #[error("vertex {0} has an empty colour budget")]
    EmptyBudget(usize),
    #[error("colour {color} at vertex {vertex} is outside its budget {budget}")]
    ColorOutOfBudget { vertex: usize, color: u32, budget: u32 },
    #[error("table of vertex {vertex} has {found} entries, expected {expected}")]
    TableSize { vertex: usize, expected: usize, found: usize },
    #[error("guess set of size {size} exceeds the guess count {allowed}")]
    TooManyGuesses { size: usize, allowed: usize },
    #[error("strategies are defined on different graphs or budgets")]
    Mismatch,
    #[error("{what} of {value} exceeds guard {guard}")]
    GuardExceeded { what: &'static str, value: u128, guard: u128 },
    #[error("the game needs at least one vertex")]
    EmptyGraph,
    #[error("malformed strategy text: {0}")]
    Format(String),
}

/// Errors from the adversary constructions.
#[derive(Debug, Error)]
pub enum ConstructionError {
    /// A hypothesis the caller asserted (for example an upper bound on a
    /// hat guessing number) is false. `witness` is a players' strategy
    /// with no defeating assignment at the budget the premise implies.
    #[error("premise violated: {context}")]
    PremiseViolation {
        context: String,
        witness: Box<Strategy>,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ConstructionError {
    pub fn is_premise_violation(&self) -> bool {
        matches!(self, ConstructionError::PremiseViolation { .. })
    }

    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            ConstructionError::Game(GameError::GuardExceeded { .. })
                | ConstructionError::Graph(GraphError::TooLarge { .. })
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("value exceeds the nested-logarithm range")]
    Overflow,
}
