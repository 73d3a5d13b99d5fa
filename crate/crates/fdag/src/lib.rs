//! Solvers for min-max dissatisfaction allocation on a common preference DAG.
//!
//! Items form a directed acyclic graph; an arc `(a, b)` means every agent
//! prefers item `a` to item `b`. An agent's dissatisfaction is the number
//! of items it neither received nor covered through a more preferred
//! received item. The library computes allocations minimizing the maximum
//! dissatisfaction, with structure-specific polynomial solvers, two
//! modular-partition FPT solvers, an exhaustive oracle, instance
//! generators, and a dispatcher that picks the cheapest applicable method.

pub mod bitset;
pub mod config;
pub mod dag;
pub mod dispatch;
pub mod error;
pub mod files;
pub mod flow;
pub mod gen;
pub mod matching;
pub mod model;
pub mod modular;
pub mod oracle;
pub mod solvers;

pub use config::Budgets;
pub use dag::{PreferenceGraph, ShapeTag, WidthCertificate};
pub use dispatch::{dispatch_solve, dispatch_solve_with, DispatchReport};
pub use error::{Error, Result};
pub use model::{Allocation, DissatisfactionProfile, Instance, SolveResult};
