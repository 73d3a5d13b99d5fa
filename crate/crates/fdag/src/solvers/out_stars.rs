//! Greedy solver for collections of out-stars: roots of nontrivial stars
//! are handed out largest-first to a least satisfied agent, then leaves and
//! singletons one at a time, with an exchange step when a least satisfied
//! agent can only see leaves hanging under its own roots.

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, SolveResult};

/// Star structure of an out-star collection: nontrivial stars sorted by
/// descending leaf count, plus the isolated vertices.
#[derive(Clone, Debug)]
pub struct StarProfile {
    pub nontrivial_stars: Vec<(usize, usize)>, // (root, leaf count)
    pub singleton_vertices: Vec<usize>,
}

impl StarProfile {
    pub fn extract(inst: &Instance) -> Result<Self> {
        let g = &inst.graph;
        let n = g.n();
        for v in 0..n {
            if g.in_adj(v).len() > 1 || (!g.in_adj(v).is_empty() && !g.out_adj(v).is_empty()) {
                return Err(Error::NotOutStars);
            }
        }
        let mut nontrivial_stars: Vec<(usize, usize)> = (0..n)
            .filter(|&v| !g.out_adj(v).is_empty())
            .map(|r| (r, g.out_adj(r).len()))
            .collect();
        nontrivial_stars.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let singleton_vertices = (0..n)
            .filter(|&v| g.in_adj(v).is_empty() && g.out_adj(v).is_empty())
            .collect();
        Ok(StarProfile {
            nontrivial_stars,
            singleton_vertices,
        })
    }
}

pub fn solve_out_stars(inst: &Instance) -> Result<SolveResult> {
    if inst.k < 3 {
        return Err(Error::WrongAgentCount {
            expected: "k >= 3 (k = 2 is handled by the two-agent solver)",
            actual: inst.k,
        });
    }
    greedy(inst, "out_stars")
}

/// Test-only entry exposing the greedy procedure for k = 2, where the
/// exchange partner may not exist and the result can be suboptimal.
pub fn force_greedy_k2(inst: &Instance) -> Result<SolveResult> {
    if inst.k != 2 {
        return Err(Error::WrongAgentCount {
            expected: "k = 2",
            actual: inst.k,
        });
    }
    greedy(inst, "out_stars_greedy_k2")
}

/// Ownership of an assigned leaf or singleton: which star it hangs under.
#[derive(Clone, Copy)]
struct OwnedLeaf {
    vertex: usize,
    star: Option<usize>, // index into the sorted star list; None = singleton
}

fn greedy(inst: &Instance, solver: &'static str) -> Result<SolveResult> {
    let profile = StarProfile::extract(inst)?;
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k;

    let mut sat = vec![0usize; k];
    let mut alloc = Allocation::empty(n, k);
    let mut root_owner: Vec<Option<usize>> = vec![None; profile.nontrivial_stars.len()];

    // Phase 1: roots, largest star first, to a least satisfied agent.
    for (i, &(root, leaves)) in profile.nontrivial_stars.iter().enumerate() {
        let j = least_satisfied(&sat);
        alloc.agent_mut(j).insert(root);
        sat[j] += leaves + 1;
        root_owner[i] = Some(j);
    }

    // Phase 2: leaves and singletons, one per step, to a least satisfied
    // agent that may take one; exchange when the least satisfied agent is
    // blocked by its own roots.
    let mut pending: Vec<Vec<usize>> = profile
        .nontrivial_stars
        .iter()
        .map(|&(root, _)| g.out_adj(root).to_vec())
        .collect();
    let mut singletons = profile.singleton_vertices.clone();
    singletons.reverse(); // pop() yields lowest index first
    let mut owned: Vec<Vec<OwnedLeaf>> = vec![Vec::new(); k];
    let mut remaining: usize = pending.iter().map(|p| p.len()).sum::<usize>() + singletons.len();

    while remaining > 0 {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&j| (sat[j], j));
        let mut progressed = false;
        for (rank, &j) in order.iter().enumerate() {
            // Direct candidate: a leaf of a foreign star (largest star
            // first), then a singleton.
            let star = pending
                .iter()
                .enumerate()
                .find(|(i, p)| !p.is_empty() && root_owner[*i] != Some(j))
                .map(|(i, _)| i);
            if let Some(i) = star {
                let v = pending[i].remove(0);
                alloc.agent_mut(j).insert(v);
                sat[j] += 1;
                owned[j].push(OwnedLeaf { vertex: v, star: Some(i) });
                progressed = true;
            } else if let Some(v) = singletons.pop() {
                alloc.agent_mut(j).insert(v);
                sat[j] += 1;
                owned[j].push(OwnedLeaf { vertex: v, star: None });
                progressed = true;
            } else if rank == 0 {
                // Exchange: some agent h holds a leaf w not under j's
                // roots; give h an unassigned leaf (under j's roots, the
                // only kind left) and move w over to j.
                let found = (0..k)
                    .filter(|&h| h != j)
                    .find_map(|h| {
                        owned[h]
                            .iter()
                            .position(|l| match l.star {
                                None => true,
                                Some(s) => root_owner[s] != Some(j),
                            })
                            .map(|pos| (h, pos))
                    });
                if let Some((h, pos)) = found {
                    let w = owned[h].remove(pos);
                    let (i, _) = pending
                        .iter()
                        .enumerate()
                        .find(|(_, p)| !p.is_empty())
                        .expect("remaining > 0 and no singletons left");
                    let v = pending[i].remove(0);
                    alloc.agent_mut(h).insert(v);
                    owned[h].push(OwnedLeaf { vertex: v, star: Some(i) });
                    alloc.agent_mut(h).remove(w.vertex);
                    alloc.agent_mut(j).insert(w.vertex);
                    owned[j].push(w);
                    sat[j] += 1;
                    progressed = true;
                }
                // For k = 2 the partner may not exist; fall through to the
                // next agent in satisfaction order.
            }
            if progressed {
                break;
            }
        }
        assert!(progressed, "every remaining leaf is takeable by some agent");
        remaining -= 1;
    }

    let optimum = n - sat.iter().min().copied().unwrap_or(0);
    SolveResult::checked(inst, alloc, optimum, solver, None)
}

fn least_satisfied(sat: &[usize]) -> usize {
    let mut best = 0;
    for j in 1..sat.len() {
        if sat[j] < sat[best] {
            best = j;
        }
    }
    best
}
