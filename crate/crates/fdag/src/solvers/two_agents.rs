//! Two-agent solver: split the sources evenly, then hand each agent the
//! second-layer sources its half does not already dominate. The optimum is
//! always ceil(|sources| / 2).

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, SolveResult};

pub fn solve_two_agents(inst: &Instance) -> Result<SolveResult> {
    if inst.k != 2 {
        return Err(Error::WrongAgentCount {
            expected: "k = 2",
            actual: inst.k,
        });
    }
    let g = &inst.graph;
    let n = g.n();
    let sources = g.sources();
    let s = sources.len();

    // S1: lexicographically smallest floor(|S|/2) sources.
    let half = s / 2;
    let s1 = VertexSet::from_iter(n, sources[..half].iter().copied());
    let s2 = VertexSet::from_iter(n, sources[half..].iter().copied());

    // Sources of G - S: vertices whose in-neighbors all lie in S.
    let source_set = VertexSet::from_iter(n, sources.iter().copied());
    let second_layer: Vec<usize> = (0..n)
        .filter(|&v| !source_set.contains(v) && g.in_adj(v).iter().all(|&u| source_set.contains(u)))
        .collect();

    let cov1 = g.coverage(&s1);
    let cov2 = g.coverage(&s2);
    let mut pi1 = s1;
    let mut pi2 = s2;
    for &v in &second_layer {
        if !cov1.contains(v) {
            pi1.insert(v);
        } else if !cov2.contains(v) {
            pi2.insert(v);
        }
    }

    let optimum = s.div_ceil(2);
    SolveResult::checked(
        inst,
        Allocation::from_sets(vec![pi1, pi2]),
        optimum,
        "two_agents",
        Some(format!("ceil(|sources|/2) = ceil({s}/2) is a lower bound")),
    )
}
