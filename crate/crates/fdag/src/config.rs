/// Search and enumeration limits shared by the oracle, the FPT solvers,
/// and the dispatcher.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// Branch-node limit for the exhaustive oracle.
    pub oracle_nodes: u64,
    /// Guess limit for the modular-partition enumeration.
    pub guess_budget: u64,
    /// Largest k routed to the out-forest profile DP.
    pub dp_k_cap: usize,
    /// Largest profile-set size the out-forest DP may hold per vertex.
    pub dp_state_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            oracle_nodes: 100_000_000,
            guess_budget: 10_000_000,
            dp_k_cap: 4,
            dp_state_cap: 2_000_000,
        }
    }
}
