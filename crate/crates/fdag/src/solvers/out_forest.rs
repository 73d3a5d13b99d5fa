//! Out-forest solver: bottom-up dynamic programming over sets of per-agent
//! dissatisfaction profiles, one set per subtree.
//!
//! Vertices deeper than k can never profitably be assigned, so the forest
//! is pruned to depth k first; each cut vertex then carries the size of
//! its dropped subtree as a weight, which keeps every profile equal to the
//! dissatisfaction the witness scores on the full graph.

use crate::bitset::VertexSet;
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, SolveResult};
use std::collections::HashMap;

type Profile = Vec<u32>;

/// Profile -> witnessing partial allocation (one bundle per agent).
struct ProfileSet {
    entries: HashMap<Profile, Vec<VertexSet>>,
}

impl ProfileSet {
    fn zero(n: usize, k: usize) -> Self {
        let mut entries = HashMap::new();
        entries.insert(vec![0; k], vec![VertexSet::new(n); k]);
        ProfileSet { entries }
    }

    fn cross_sum(&self, other: &ProfileSet, cap: usize) -> Result<ProfileSet> {
        let mut entries = HashMap::new();
        for (pa, wa) in &self.entries {
            for (pb, wb) in &other.entries {
                let p: Profile = pa.iter().zip(pb).map(|(a, b)| a + b).collect();
                entries.entry(p).or_insert_with(|| {
                    wa.iter()
                        .zip(wb)
                        .map(|(a, b)| {
                            let mut s = a.clone();
                            s.union_with(b);
                            s
                        })
                        .collect()
                });
                if entries.len() > cap {
                    return Err(Error::StateSpaceExceeded);
                }
            }
        }
        Ok(ProfileSet { entries })
    }
}

pub fn solve_out_forest(inst: &Instance) -> Result<SolveResult> {
    solve_out_forest_with(inst, &Budgets::default(), true)
}

pub fn solve_out_forest_with(inst: &Instance, budgets: &Budgets, prune: bool) -> Result<SolveResult> {
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k;
    if k > budgets.dp_k_cap {
        return Err(Error::StateSpaceExceeded);
    }
    let cap = budgets.dp_state_cap;

    let mut depth = vec![0usize; n];
    for &v in g.topo() {
        depth[v] = match g.in_adj(v).len() {
            0 => 1,
            1 => depth[g.in_adj(v)[0]] + 1,
            _ => return Err(Error::NotAForest(v)),
        };
    }
    let kept = |v: usize| !prune || depth[v] <= k;
    // Weight of a kept vertex: itself plus any pruned descendants, all of
    // which share it as their deepest kept ancestor.
    let weight = |v: usize| -> u32 {
        if prune && depth[v] == k {
            g.reach(v).count() as u32
        } else {
            1
        }
    };

    let mut dp: Vec<Option<ProfileSet>> = (0..n).map(|_| None).collect();
    for &u in g.topo().iter().rev() {
        if !kept(u) {
            continue;
        }
        let mut combined = ProfileSet::zero(n, k);
        for &child in g.out_adj(u) {
            if kept(child) {
                let child_set = dp[child].take().expect("children processed first");
                combined = combined.cross_sum(&child_set, cap)?;
            }
        }
        let c = weight(u);
        let is_dp_leaf = g.out_adj(u).iter().all(|&w| !kept(w));
        let mut entries = HashMap::new();
        for (p, wit) in &combined.entries {
            for j in 0..k {
                let mut q: Profile = p.iter().map(|x| x + c).collect();
                q[j] = 0;
                entries.entry(q).or_insert_with(|| {
                    let mut w = wit.clone();
                    w[j].insert(u);
                    w
                });
            }
            if is_dp_leaf {
                // Leaving a leaf unassigned is also a valid profile.
                let q: Profile = p.iter().map(|x| x + c).collect();
                entries.entry(q).or_insert_with(|| wit.clone());
            }
            if entries.len() > cap {
                return Err(Error::StateSpaceExceeded);
            }
        }
        dp[u] = Some(ProfileSet { entries });
    }

    // Combine the per-tree sets across the forest roots.
    let mut total = ProfileSet::zero(n, k);
    for (v, slot) in dp.iter_mut().enumerate() {
        if g.in_adj(v).is_empty() && kept(v) {
            let set = slot.take().expect("roots are processed");
            total = total.cross_sum(&set, cap)?;
        }
    }

    let (best_profile, witness) = total
        .entries
        .iter()
        .min_by_key(|(p, _)| (p.iter().copied().max().unwrap_or(0), (*p).clone()))
        .expect("profile set is never empty");
    let optimum = *best_profile.iter().max().unwrap_or(&0) as usize;
    let alloc = Allocation::from_sets(witness.clone());
    SolveResult::checked(inst, alloc, optimum, "out_forest", None)
}
