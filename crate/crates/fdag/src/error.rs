use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arc references vertex {vertex} but the graph has {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arc relation contains a cycle: {0:?}")]
    CycleDetected(Vec<usize>),
    #[error("vertex {0} has in-degree greater than one; graph is not an out-forest")]
    NotAForest(usize),
    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),
    #[error("instance carries no dissatisfaction threshold")]
    MissingThreshold,
    #[error("solver requires k {expected}, instance has k = {actual}")]
    WrongAgentCount { expected: &'static str, actual: usize },
    #[error("graph is not a collection of out-stars")]
    NotOutStars,
    #[error("graph has width {0}, solver requires width at most 2")]
    WidthTooLarge(usize),
    #[error("more agents ({k}) than items ({n})")]
    TooManyAgents { k: usize, n: usize },
    #[error("no cardinality-{0} matching exists")]
    Infeasible(usize),
    #[error("search budget exceeded ({context}: limit {limit})")]
    BudgetExceeded { context: &'static str, limit: u64 },
    #[error("dynamic-programming state space exceeds the configured limit")]
    StateSpaceExceeded,
    #[error("module list is not a partition of the vertex set")]
    NotAPartition,
    #[error("modular partition contains a non-trivial path module")]
    NotAllIsModules,
    #[error("coloring reduction requires k >= 3, got {0}")]
    InvalidK(usize),
    #[error("coloring is not a proper coloring: {0}")]
    ImproperColoring(String),
    #[error("no solver applicable within the configured budgets: {0}")]
    UnsolvableWithinBudget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
