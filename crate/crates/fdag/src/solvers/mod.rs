//! Structure-specific polynomial solvers.

mod out_forest;
mod out_stars;
mod two_agents;
mod width_two;

pub use out_forest::{solve_out_forest, solve_out_forest_with};
pub use out_stars::{force_greedy_k2, solve_out_stars, StarProfile};
pub use two_agents::solve_two_agents;
pub use width_two::solve_width_two;
