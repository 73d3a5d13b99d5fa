//! Ground-truth solver: exhaustive branch-and-bound over antichain
//! allocations, assigning items in topological order.
//!
//! Every specialized solver is validated against this oracle. It either
//! returns the exact optimum or fails with `BudgetExceeded` — it never
//! approximates.

use crate::bitset::VertexSet;
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, SolveResult};

pub fn brute_force_optimum(inst: &Instance) -> Result<SolveResult> {
    brute_force_optimum_with(inst, &Budgets::default())
}

pub fn brute_force_optimum_with(inst: &Instance, budgets: &Budgets) -> Result<SolveResult> {
    let n = inst.n();
    if inst.k > n {
        let alloc = canonical_k_gt_n(inst);
        return SolveResult::checked(inst, alloc, n, "oracle", None);
    }
    let mut search = Search::new(inst, budgets.oracle_nodes, None);
    search.run(0)?;
    let (best, alloc) = search.take_best().expect("search always finds a leaf");
    SolveResult::checked(inst, alloc, best, "oracle", None)
}

/// Decision variant: stops at the first allocation meeting the threshold.
pub fn brute_force_decision(inst: &Instance) -> Result<(bool, Option<Allocation>)> {
    brute_force_decision_with(inst, &Budgets::default())
}

pub fn brute_force_decision_with(
    inst: &Instance,
    budgets: &Budgets,
) -> Result<(bool, Option<Allocation>)> {
    let d = inst.threshold.ok_or(Error::MissingThreshold)?;
    let n = inst.n();
    if inst.k > n {
        let alloc = canonical_k_gt_n(inst);
        return Ok(if d >= n { (true, Some(alloc)) } else { (false, None) });
    }
    let mut search = Search::new(inst, budgets.oracle_nodes, Some(d));
    search.run(0)?;
    match search.take_best() {
        Some((value, alloc)) if value <= d => Ok((true, Some(alloc))),
        _ => Ok((false, None)),
    }
}

/// The `k > n` allocation used regardless of the graph: the first `n`
/// agents each get one item in topological order, the rest get nothing.
pub fn canonical_k_gt_n(inst: &Instance) -> Allocation {
    let n = inst.n();
    let mut alloc = Allocation::empty(n, inst.k);
    for (i, &v) in inst.graph.topo().iter().enumerate() {
        alloc.agent_mut(i).insert(v);
    }
    alloc
}

struct Search<'a> {
    inst: &'a Instance,
    order: Vec<usize>,
    covered: Vec<VertexSet>,
    /// Per agent: items already decided and not covered for that agent.
    /// These counts can only grow, so their maximum is a lower bound.
    uncovered: Vec<usize>,
    assigned: Vec<Vec<usize>>,
    best: usize,
    best_alloc: Option<Allocation>,
    nodes: u64,
    node_limit: u64,
    /// Decision mode: stop once a leaf at or below this value is found.
    target: Option<usize>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, node_limit: u64, target: Option<usize>) -> Self {
        let n = inst.n();
        Search {
            inst,
            order: inst.graph.topo().to_vec(),
            covered: vec![VertexSet::new(n); inst.k],
            uncovered: vec![0; inst.k],
            assigned: vec![Vec::new(); inst.k],
            best: n + 1,
            best_alloc: None,
            nodes: 0,
            node_limit,
            target,
        }
    }

    fn done(&self) -> bool {
        match self.target {
            Some(d) => self.best <= d,
            None => false,
        }
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::BudgetExceeded {
                context: "oracle branch nodes",
                limit: self.node_limit,
            });
        }
        if self.done() {
            return Ok(());
        }
        if pos == self.order.len() {
            let value = *self.uncovered.iter().max().unwrap();
            if value < self.best {
                self.best = value;
                let n = self.inst.n();
                self.best_alloc = Some(Allocation::from_lists(n, &self.assigned));
            }
            return Ok(());
        }
        // Bound: uncovered counts over the decided prefix are final because
        // every predecessor of a decided item was decided earlier.
        if *self.uncovered.iter().max().unwrap() >= self.best {
            return Ok(());
        }
        let v = self.order[pos];

        // Assign v to an agent. Agents whose bundle already dominates v are
        // skipped (the addition would be redundant), and only the first
        // empty agent is tried (agents are interchangeable).
        let mut empty_seen = false;
        for i in 0..self.inst.k {
            let is_empty = self.assigned[i].is_empty();
            if is_empty {
                if empty_seen {
                    continue;
                }
                empty_seen = true;
            }
            if self.covered[i].contains(v) {
                continue;
            }
            let saved = self.covered[i].clone();
            self.covered[i].union_with(self.inst.graph.reach(v));
            self.assigned[i].push(v);
            let mut bumped = Vec::new();
            for j in 0..self.inst.k {
                if j != i && !self.covered[j].contains(v) {
                    self.uncovered[j] += 1;
                    bumped.push(j);
                }
            }
            self.run(pos + 1)?;
            for j in bumped {
                self.uncovered[j] -= 1;
            }
            self.assigned[i].pop();
            self.covered[i] = saved;
            if self.done() {
                return Ok(());
            }
        }

        // Leave v unassigned.
        let mut bumped = Vec::new();
        for j in 0..self.inst.k {
            if !self.covered[j].contains(v) {
                self.uncovered[j] += 1;
                bumped.push(j);
            }
        }
        self.run(pos + 1)?;
        for j in bumped {
            self.uncovered[j] -= 1;
        }
        Ok(())
    }

    fn take_best(self) -> Option<(usize, Allocation)> {
        self.best_alloc.map(|a| (self.best, a))
    }
}
