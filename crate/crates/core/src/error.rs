use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("Prüfer entry {entry} out of range for a tree on {m} vertices")]
    PrueferEntry { entry: usize, m: usize },
    #[error("graph is not a tree on at least two vertices")]
    NotATree,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("not a permutation of the vertex set")]
    BadPermutation,
    #[error("bridge chain has no blocks")]
    EmptyChain,
    #[error("chain of {blocks} blocks needs {} junctions, got {junctions}", blocks.saturating_sub(1))]
    JunctionCount { blocks: usize, junctions: usize },
    #[error("cannot parse graph description {0:?}")]
    Parse(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("labeling is not a bijection onto 1..={0}")]
    NotABijection(usize),
    #[error("active label {active} outside 1..={size}")]
    ActiveOutOfRange { active: usize, size: usize },
    #[error("state has {state} labels but the graph has {graph} vertices")]
    SizeMismatch { state: usize, graph: usize },
    #[error("cannot parse labeling {0:?}")]
    Parse(String),
    #[error("malformed state JSON: {0}")]
    Json(String),
    #[error("orbit did not close within {cap} steps")]
    CapExceeded { cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("replica positions are not a bijection")]
    NotABijection,
    #[error("stone position {0} out of range")]
    StoneOutOfRange(usize),
    #[error("coin on vertex {coin} but replica {on_stone} sits on the stone")]
    CoinMismatch { coin: usize, on_stone: usize },
    #[error("diagrams have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("nothing to render")]
    EmptySequence,
    #[error("unknown render format {0:?}")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("exhaustive enumeration supports at most {max} vertices, got {got}")]
    TooLarge { got: usize, max: usize },
    #[error("step budget of {budget} exceeded after {steps} steps")]
    BudgetExceeded { budget: u64, steps: u64 },
    #[error("partition must be positive")]
    ZeroPartition,
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("structure not covered: {0}")]
    Uncovered(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl TheoremError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            TheoremError::Enumeration(EnumerationError::BudgetExceeded { .. })
                | TheoremError::Enumeration(EnumerationError::TooLarge { .. })
        )
    }
}
