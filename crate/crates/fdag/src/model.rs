//! Allocations, dissatisfaction profiles, and allocation normalization.
//!
//! The dissatisfaction of an agent is the number of items not dominated by
//! any item it received; satisfaction and dissatisfaction add up to `n`.

use crate::bitset::VertexSet;
use crate::dag::PreferenceGraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: PreferenceGraph,
    pub k: usize,
    /// Decision-variant threshold; absent for pure optimization.
    pub threshold: Option<usize>,
}

impl Instance {
    pub fn new(graph: PreferenceGraph, k: usize) -> Self {
        assert!(k >= 1, "instance needs at least one agent");
        Instance {
            graph,
            k,
            threshold: None,
        }
    }

    pub fn with_threshold(graph: PreferenceGraph, k: usize, d: usize) -> Self {
        let mut inst = Self::new(graph, k);
        inst.threshold = Some(d);
        inst
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Pairwise-disjoint item sets, one per agent. Empty sets are legal input
/// (such an agent scores the worst dissatisfaction `n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    assigned: Vec<VertexSet>,
}

impl Allocation {
    pub fn empty(n: usize, k: usize) -> Self {
        Allocation {
            assigned: vec![VertexSet::new(n); k],
        }
    }

    pub fn from_sets(assigned: Vec<VertexSet>) -> Self {
        Allocation { assigned }
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Self {
        Allocation {
            assigned: lists
                .iter()
                .map(|l| VertexSet::from_iter(n, l.iter().copied()))
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.assigned.len()
    }

    pub fn agent(&self, i: usize) -> &VertexSet {
        &self.assigned[i]
    }

    pub fn agent_mut(&mut self, i: usize) -> &mut VertexSet {
        &mut self.assigned[i]
    }

    pub fn items_of(&self, i: usize) -> Vec<usize> {
        self.assigned[i].iter().collect()
    }

    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.assigned.len() != inst.k {
            return Err(Error::InvalidAllocation(format!(
                "allocation has {} agents, instance has {}",
                self.assigned.len(),
                inst.k
            )));
        }
        let n = inst.n();
        let mut seen = VertexSet::new(n);
        for (i, set) in self.assigned.iter().enumerate() {
            if set.capacity() != n {
                return Err(Error::InvalidAllocation(format!(
                    "agent {i} references items outside 0..{n}"
                )));
            }
            if seen.intersects(set) {
                return Err(Error::InvalidAllocation(format!(
                    "agent {i} shares an item with an earlier agent"
                )));
            }
            seen.union_with(set);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissatisfactionProfile {
    pub values: Vec<usize>,
}

impl DissatisfactionProfile {
    pub fn max(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Per-agent dissatisfaction: `n` minus the size of the union of successor
/// closures over the agent's items.
pub fn dissatisfaction_profile(inst: &Instance, alloc: &Allocation) -> Result<DissatisfactionProfile> {
    alloc.validate(inst)?;
    let n = inst.n();
    let values = (0..inst.k)
        .map(|i| n - inst.graph.coverage(alloc.agent(i)).count())
        .collect();
    Ok(DissatisfactionProfile { values })
}

pub fn max_dissatisfaction(p: &DissatisfactionProfile) -> usize {
    p.max()
}

/// Drops, per agent, every item dominated by another item of the same
/// agent. The profile is unchanged by construction.
pub fn normalize_to_antichains(inst: &Instance, alloc: &Allocation) -> Result<Allocation> {
    alloc.validate(inst)?;
    let n = inst.n();
    let mut out = Vec::with_capacity(inst.k);
    for i in 0..inst.k {
        let set = alloc.agent(i);
        let mut kept = VertexSet::new(n);
        for v in set.iter() {
            let dominated = set
                .iter()
                .any(|u| u != v && inst.graph.reaches(u, v));
            if !dominated {
                kept.insert(v);
            }
        }
        out.push(kept);
    }
    let normalized = Allocation::from_sets(out);
    debug_assert_eq!(
        dissatisfaction_profile(inst, alloc)?,
        dissatisfaction_profile(inst, &normalized)?
    );
    Ok(normalized)
}

/// Decision check: does the allocation meet the instance threshold?
/// Returns the profile as evidence either way.
pub fn verify_decision(inst: &Instance, alloc: &Allocation) -> Result<(bool, DissatisfactionProfile)> {
    let d = inst.threshold.ok_or(Error::MissingThreshold)?;
    let profile = dissatisfaction_profile(inst, alloc)?;
    Ok((profile.max() <= d, profile))
}

/// Optimal value, a witnessing allocation, and the solver that produced it.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub optimum: usize,
    pub allocation: Allocation,
    pub profile: DissatisfactionProfile,
    pub solver: &'static str,
    pub lower_bound_note: Option<String>,
}

impl SolveResult {
    /// Recomputes the profile from scratch and checks it attains `optimum`.
    pub fn checked(
        inst: &Instance,
        allocation: Allocation,
        optimum: usize,
        solver: &'static str,
        lower_bound_note: Option<String>,
    ) -> Result<Self> {
        let profile = dissatisfaction_profile(inst, &allocation)?;
        assert_eq!(
            profile.max(),
            optimum,
            "solver {solver} claimed optimum {optimum} but its allocation scores {}",
            profile.max()
        );
        Ok(SolveResult {
            optimum,
            allocation,
            profile,
            solver,
            lower_bound_note,
        })
    }
}
