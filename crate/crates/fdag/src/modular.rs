//! Modular-partition machinery and the two parameterized solvers built on
//! it: guess-and-flow over mixed path/IS modules, and the integer
//! feasibility method for all-IS partitions.
//!
//! A module is a vertex set whose members look identical from outside:
//! every outside vertex has arcs to either all or none of the members, in
//! each direction. We partition into a minimum number of modules that
//! induce either a directed path or an independent set; this partition is
//! unique, and singletons are tagged as (trivial) paths.

use crate::bitset::VertexSet;
use crate::config::Budgets;
use crate::dag::PreferenceGraph;
use crate::error::{Error, Result};
use crate::model::{
    dissatisfaction_profile, normalize_to_antichains, Allocation, Instance, SolveResult,
};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// Induces a directed path; the order lists the vertices source-first.
    Path(Vec<usize>),
    IndependentSet,
}

#[derive(Clone, Debug)]
pub struct Module {
    pub vertices: Vec<usize>, // sorted
    pub kind: ModuleKind,
}

#[derive(Clone, Debug)]
pub struct ModularPartition {
    pub modules: Vec<Module>,
}

impl ModularPartition {
    pub fn d(&self) -> usize {
        self.modules.len()
    }

    /// True when every module is an independent set; singletons qualify
    /// (they are trivially both kinds, merely tagged as paths).
    pub fn all_independent_sets(&self) -> bool {
        self.modules
            .iter()
            .all(|m| m.vertices.len() == 1 || m.kind == ModuleKind::IndependentSet)
    }

    pub fn vertex_lists(&self) -> Vec<Vec<usize>> {
        self.modules.iter().map(|m| m.vertices.clone()).collect()
    }
}

/// Does `x` satisfy the module property in `g`?
pub fn is_module(g: &PreferenceGraph, x: &VertexSet) -> bool {
    let n = g.n();
    let members: Vec<usize> = x.iter().collect();
    if members.is_empty() {
        return false;
    }
    for w in 0..n {
        if x.contains(w) {
            continue;
        }
        let to_members = g.out_adj(w).iter().filter(|&&v| x.contains(v)).count();
        if to_members != 0 && to_members != members.len() {
            return false;
        }
        let from_members = g.in_adj(w).iter().filter(|&&v| x.contains(v)).count();
        if from_members != 0 && from_members != members.len() {
            return false;
        }
    }
    true
}

/// Kind of the induced subgraph on `x`, if it is a directed path or an
/// independent set; None otherwise.
pub fn module_shape(g: &PreferenceGraph, x: &VertexSet) -> Option<ModuleKind> {
    let members: Vec<usize> = x.iter().collect();
    if members.len() == 1 {
        return Some(ModuleKind::Path(members));
    }
    let internal_arcs: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .copied()
        .filter(|&(u, v)| x.contains(u) && x.contains(v))
        .collect();
    if internal_arcs.is_empty() {
        return Some(ModuleKind::IndependentSet);
    }
    if internal_arcs.len() != members.len() - 1 {
        return None;
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    let mut indeg: HashMap<usize, usize> = members.iter().map(|&v| (v, 0)).collect();
    for &(u, v) in &internal_arcs {
        if next.insert(u, v).is_some() {
            return None;
        }
        *indeg.get_mut(&v).unwrap() += 1;
        if indeg[&v] > 1 {
            return None;
        }
    }
    let mut order = Vec::with_capacity(members.len());
    let mut cur = *members.iter().find(|&&v| indeg[&v] == 0)?;
    loop {
        order.push(cur);
        match next.get(&cur) {
            Some(&v) => cur = v,
            None => break,
        }
    }
    if order.len() == members.len() {
        Some(ModuleKind::Path(order))
    } else {
        None
    }
}

/// Smallest module containing `seed`: repeatedly add every outside vertex
/// that distinguishes two current members. Any module containing the seed
/// must contain all such splitters, so the fixpoint is the minimum.
fn closure(g: &PreferenceGraph, seed: &[usize]) -> VertexSet {
    let n = g.n();
    let mut x = VertexSet::from_iter(n, seed.iter().copied());
    loop {
        let size = x.count();
        let mut splitters = Vec::new();
        for w in 0..n {
            if x.contains(w) {
                continue;
            }
            let to = g.out_adj(w).iter().filter(|&&v| x.contains(v)).count();
            let from = g.in_adj(w).iter().filter(|&&v| x.contains(v)).count();
            if (to != 0 && to != size) || (from != 0 && from != size) {
                splitters.push(w);
            }
        }
        if splitters.is_empty() {
            return x;
        }
        for w in splitters {
            x.insert(w);
        }
    }
}

/// The unique minimum partition into path and independent-set modules.
pub fn modular_partition(g: &PreferenceGraph) -> ModularPartition {
    let n = g.n();
    // U(v): union of all path/IS-shaped pair closures through v. Unions of
    // overlapping modules are modules, so U(v) is a module; it is v's block
    // exactly when it keeps one of the two shapes and all members agree.
    let mut u_sets: Vec<VertexSet> = Vec::with_capacity(n);
    for v in 0..n {
        let mut u = VertexSet::singleton(n, v);
        for w in 0..n {
            if w == v {
                continue;
            }
            let c = closure(g, &[v, w]);
            if module_shape(g, &c).is_some() {
                u.union_with(&c);
            }
        }
        u_sets.push(u);
    }

    let mut block_of: Vec<Option<usize>> = vec![None; n];
    let mut modules = Vec::new();
    for v in 0..n {
        if block_of[v].is_some() {
            continue;
        }
        let b = &u_sets[v];
        let accept = b.count() > 1
            && is_module(g, b)
            && module_shape(g, b).is_some()
            && b.iter().all(|u| u_sets[u] == *b);
        let idx = modules.len();
        if accept {
            let kind = module_shape(g, b).unwrap();
            let vertices: Vec<usize> = b.iter().collect();
            for &u in &vertices {
                block_of[u] = Some(idx);
            }
            modules.push(Module { vertices, kind });
        } else {
            block_of[v] = Some(idx);
            modules.push(Module {
                vertices: vec![v],
                kind: ModuleKind::Path(vec![v]),
            });
        }
    }
    debug_assert!(modules
        .iter()
        .all(|m| is_module(g, &VertexSet::from_iter(n, m.vertices.iter().copied()))));
    ModularPartition { modules }
}

// ---------------------------------------------------------------------------
// Guess-and-flow solver over a mixed path/IS partition.
// ---------------------------------------------------------------------------

pub fn solve_modular_fpt(inst: &Instance, mp: &ModularPartition) -> Result<SolveResult> {
    solve_modular_fpt_with(inst, mp, &Budgets::default())
}

pub fn solve_modular_fpt_with(
    inst: &Instance,
    mp: &ModularPartition,
    budgets: &Budgets,
) -> Result<SolveResult> {
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k;
    if k > n {
        return Err(Error::TooManyAgents { k, n });
    }

    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut is_mods: Vec<Vec<usize>> = Vec::new();
    for m in &mp.modules {
        match &m.kind {
            ModuleKind::Path(order) => paths.push(order.clone()),
            ModuleKind::IndependentSet => is_mods.push(m.vertices.clone()),
        }
    }

    let k_fact: u128 = (1..=k as u128).product();
    let mut total: u128 = 1;
    for _ in &paths {
        total = total.saturating_mul(k_fact);
    }
    for _ in &is_mods {
        total = total.saturating_mul(1u128 << k.min(100));
    }
    if total > budgets.guess_budget as u128 {
        return Err(Error::BudgetExceeded {
            context: "modular guess enumeration",
            limit: budgets.guess_budget,
        });
    }

    let perms = permutations(k);
    let module_sets: Vec<VertexSet> = is_mods
        .iter()
        .map(|m| VertexSet::from_iter(n, m.iter().copied()))
        .collect();

    let mut best: Option<(usize, Allocation)> = None; // (sigma, allocation)
    let mut odometer = vec![0usize; paths.len() + is_mods.len()];
    let radixes: Vec<usize> = paths
        .iter()
        .map(|_| perms.len())
        .chain(is_mods.iter().map(|_| 1usize << k))
        .collect();

    'guess: loop {
        // Partial allocation for this guess.
        let mut sets = vec![VertexSet::new(n); k];
        for (pi, order) in paths.iter().enumerate() {
            let perm = &perms[odometer[pi]];
            for (slot, &v) in order.iter().take(k).enumerate() {
                sets[perm[slot]].insert(v);
            }
        }
        let mut owners: Vec<Vec<usize>> = Vec::with_capacity(is_mods.len());
        let mut ok = true;
        for (ii, m) in is_mods.iter().enumerate() {
            let mask = odometer[paths.len() + ii];
            let chosen: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
            if chosen.len() > m.len() {
                ok = false;
                break;
            }
            for (rank, &j) in chosen.iter().enumerate() {
                sets[j].insert(m[rank]);
            }
            owners.push(chosen);
        }
        if ok {
            let alloc = normalize_to_antichains(inst, &Allocation::from_sets(sets))?;
            let cov: Vec<VertexSet> = (0..k).map(|j| g.coverage(alloc.agent(j))).collect();
            let sigma: Vec<usize> = cov.iter().map(|c| c.count()).collect();
            let lo = sigma.iter().copied().min().unwrap_or(0);

            let target_floor = best.as_ref().map(|(s, _)| s + 1).unwrap_or(lo);
            if lo >= target_floor || guess_feasible(&sigma, &cov, &owners, &module_sets, target_floor)
            {
                // Improvement possible: binary-search the largest feasible
                // minimum satisfaction for this guess.
                let (mut good, mut bad) = (target_floor.max(lo), n + 1);
                while bad - good > 1 {
                    let mid = (good + bad) / 2;
                    if guess_feasible(&sigma, &cov, &owners, &module_sets, mid) {
                        good = mid;
                    } else {
                        bad = mid;
                    }
                }
                let materialized =
                    materialize(inst, &alloc, &cov, &sigma, &owners, &is_mods, good)?;
                best = Some((good, materialized));
            }
        }

        for (i, r) in radixes.iter().enumerate() {
            odometer[i] += 1;
            if odometer[i] < *r {
                continue 'guess;
            }
            odometer[i] = 0;
        }
        break;
    }

    let (sigma, alloc) = best.expect("at least one guess is always evaluated");
    SolveResult::checked(inst, alloc, n - sigma, "modular_fpt", None)
}

/// Can every agent be brought to satisfaction >= sigma by handing out
/// unassigned IS-module vertices? Extras are only useful to an agent that
/// already owns part of the module but does not yet cover all of it; each
/// such vertex then adds exactly one to the owner's satisfaction.
fn guess_feasible(
    sigma: &[usize],
    cov: &[VertexSet],
    owners: &[Vec<usize>],
    module_sets: &[VertexSet],
    target: usize,
) -> bool {
    let k = sigma.len();
    let demand: u64 = sigma
        .iter()
        .map(|&s| target.saturating_sub(s) as u64)
        .sum();
    if demand == 0 {
        return true;
    }
    let nodes = 2 + k + module_sets.len();
    let mut net = crate::flow::FlowNetwork::new(nodes, 0, nodes - 1);
    for (j, &s) in sigma.iter().enumerate() {
        if s < target {
            net.add_arc(0, 1 + j, (target - s) as u64);
        }
    }
    for (i, ms) in module_sets.iter().enumerate() {
        let spare = ms.count() - owners[i].len();
        if spare == 0 {
            continue;
        }
        net.add_arc(1 + k + i, nodes - 1, spare as u64);
        for &j in &owners[i] {
            if !ms.is_subset_of(&cov[j]) {
                net.add_arc(1 + j, 1 + k + i, demand);
            }
        }
    }
    net.max_flow() == demand
}

/// Re-run the feasibility flow at the chosen target and hand the flow units
/// out as concrete vertices (lowest unused index per module).
fn materialize(
    inst: &Instance,
    alloc: &Allocation,
    cov: &[VertexSet],
    sigma: &[usize],
    owners: &[Vec<usize>],
    is_mods: &[Vec<usize>],
    target: usize,
) -> Result<Allocation> {
    let k = sigma.len();
    let mut result = alloc.clone();
    let demand: u64 = sigma
        .iter()
        .map(|&s| target.saturating_sub(s) as u64)
        .sum();
    if demand == 0 {
        return Ok(result);
    }
    let nodes = 2 + k + is_mods.len();
    let mut net = crate::flow::FlowNetwork::new(nodes, 0, nodes - 1);
    for (j, &s) in sigma.iter().enumerate() {
        if s < target {
            net.add_arc(0, 1 + j, (target - s) as u64);
        }
    }
    let mut grant_arcs = Vec::new(); // (arc id, agent, module index)
    for (i, m) in is_mods.iter().enumerate() {
        let spare = m.len() - owners[i].len();
        if spare == 0 {
            continue;
        }
        net.add_arc(1 + k + i, nodes - 1, spare as u64);
        for &j in &owners[i] {
            let ms = VertexSet::from_iter(inst.n(), m.iter().copied());
            if !ms.is_subset_of(&cov[j]) {
                grant_arcs.push((net.add_arc(1 + j, 1 + k + i, demand), j, i));
            }
        }
    }
    let flow = net.max_flow();
    assert_eq!(flow, demand, "materialize called on a feasible target");
    let mut used: Vec<usize> = owners.iter().map(|o| o.len()).collect();
    for (arc, j, i) in grant_arcs {
        for _ in 0..net.flow_on(arc) {
            let v = is_mods[i][used[i]];
            used[i] += 1;
            result.agent_mut(j).insert(v);
        }
    }
    Ok(result)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut free = vec![true; k];
    fn rec(k: usize, cur: &mut Vec<usize>, free: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in 0..k {
            if free[j] {
                free[j] = false;
                cur.push(j);
                rec(k, cur, free, out);
                cur.pop();
                free[j] = true;
            }
        }
    }
    rec(k, &mut cur, &mut free, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Integer-feasibility solver over an all-IS partition.
// ---------------------------------------------------------------------------

/// A subset of the IS modules whose union is a nonempty antichain; every
/// agent served from exactly these modules incurs the base dissatisfaction
/// d_S on top of whatever union vertices it fails to own.
#[derive(Clone, Debug)]
pub struct AssignableSet {
    pub members: Vec<usize>, // module indices
    pub union_size: usize,
    pub d_s: usize,
}

#[derive(Clone, Debug)]
pub struct AssignableFamily {
    pub modules: Vec<Vec<usize>>,
    pub sets: Vec<AssignableSet>,
}

pub fn assignable_sets(g: &PreferenceGraph, modules: &[Vec<usize>]) -> Result<AssignableFamily> {
    let n = g.n();
    let mut seen = vec![false; n];
    for m in modules {
        for &v in m {
            if v >= n || seen[v] {
                return Err(Error::NotAPartition);
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::NotAPartition);
    }
    for m in modules {
        let x = VertexSet::from_iter(n, m.iter().copied());
        let internal = g
            .arcs()
            .iter()
            .any(|&(u, v)| x.contains(u) && x.contains(v));
        if internal || !is_module(g, &x) {
            return Err(Error::NotAllIsModules);
        }
    }
    let d = modules.len();
    if d > 24 {
        return Err(Error::BudgetExceeded {
            context: "assignable-set enumeration",
            limit: 1 << 24,
        });
    }
    let sets_of: Vec<VertexSet> = modules
        .iter()
        .map(|m| VertexSet::from_iter(n, m.iter().copied()))
        .collect();
    let reach_of: Vec<VertexSet> = modules
        .iter()
        .map(|m| {
            let mut r = VertexSet::new(n);
            for &v in m {
                r.union_with(g.reach(v));
            }
            r
        })
        .collect();
    // Module i "sees" module j when some member of i reaches a member of j;
    // by the module property this is an all-or-nothing relation.
    let blocked = |i: usize, j: usize| -> bool {
        reach_of[i].intersects(&sets_of[j]) || reach_of[j].intersects(&sets_of[i])
    };
    let mut sets = Vec::new();
    for mask in 1u32..(1 << d) {
        let members: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        let antichain = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| !blocked(i, j)));
        if !antichain {
            continue;
        }
        let mut reach_union = VertexSet::new(n);
        let mut union_size = 0;
        for &i in &members {
            reach_union.union_with(&reach_of[i]);
            union_size += modules[i].len();
        }
        sets.push(AssignableSet {
            members,
            union_size,
            d_s: n - reach_union.count(),
        });
    }
    Ok(AssignableFamily {
        modules: modules.to_vec(),
        sets,
    })
}

pub fn solve_is_modules(inst: &Instance, fam: &AssignableFamily) -> Result<SolveResult> {
    solve_is_modules_with(inst, fam, &Budgets::default())
}

pub fn solve_is_modules_with(
    inst: &Instance,
    fam: &AssignableFamily,
    budgets: &Budgets,
) -> Result<SolveResult> {
    let n = inst.n();
    let k = inst.k;
    if k > n {
        return Err(Error::TooManyAgents { k, n });
    }
    let subset_count = 1u128 << fam.sets.len().min(100);
    if subset_count > budgets.guess_budget as u128 {
        return Err(Error::BudgetExceeded {
            context: "assignable-family subset enumeration",
            limit: budgets.guess_budget,
        });
    }

    let mut best: Option<(usize, Allocation)> = None;
    for mask in 1u64..(1u64 << fam.sets.len()) {
        let chosen: Vec<usize> = (0..fam.sets.len()).filter(|i| mask >> i & 1 == 1).collect();
        if chosen.len() > k {
            continue;
        }
        // Binary search the smallest feasible threshold for this guess.
        let hi_exclusive = best.as_ref().map(|(b, _)| *b).unwrap_or(n + 1);
        if hi_exclusive == 0 {
            break;
        }
        let probe = hi_exclusive - 1;
        if family_feasible(fam, &chosen, k, probe).is_none() {
            continue;
        }
        let (mut bad, mut good) = (0usize, probe); // good is feasible
        while good > 0 && good - bad > 1 {
            let mid = (bad + good) / 2;
            if family_feasible(fam, &chosen, k, mid).is_some() {
                good = mid;
            } else {
                bad = mid;
            }
        }
        if good > 0 && family_feasible(fam, &chosen, k, 0).is_some() {
            good = 0;
        }
        let (x, extra) = family_feasible(fam, &chosen, k, good).expect("good is feasible");
        let alloc = reconstruct(inst, fam, &chosen, &x, &extra, good)?;
        best = Some((good, alloc));
    }

    let (delta, alloc) = best.expect("a singleton-set guess is always feasible at delta = n");
    SolveResult::checked(inst, alloc, delta, "is_modules", None)
}

/// Feasibility of the threshold system for one guess: choose agent counts
/// x_S >= 1 summing to k, give every S-agent one vertex of each module of
/// S, then route extra vertices by max-flow so each S-agent group reaches
/// its required total. Returns (x, extra[S][module index within S]) on
/// success.
fn family_feasible(
    fam: &AssignableFamily,
    chosen: &[usize],
    k: usize,
    delta: usize,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let t = chosen.len();
    let mut x = vec![1usize; t];
    fn rec(
        fam: &AssignableFamily,
        chosen: &[usize],
        x: &mut Vec<usize>,
        pos: usize,
        left: usize,
        delta: usize,
    ) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
        let t = chosen.len();
        if pos == t {
            if left != 0 {
                return None;
            }
            return try_x(fam, chosen, x, delta);
        }
        // x[pos] ranges over 1..=left - (remaining sets each need >= 1).
        let reserve = t - pos - 1;
        for v in 1..=left.saturating_sub(reserve) {
            x[pos] = v;
            if let Some(found) = rec(fam, chosen, x, pos + 1, left - v, delta) {
                return Some(found);
            }
        }
        None
    }
    rec(fam, chosen, &mut x, 0, k, delta)
}

fn try_x(
    fam: &AssignableFamily,
    chosen: &[usize],
    x: &[usize],
    delta: usize,
) -> Option<(Vec<usize>, Vec<Vec<u64>>)> {
    let d = fam.modules.len();
    // Baseline load: every S-agent takes one vertex from each module of S.
    let mut load = vec![0usize; d];
    for (si, &s) in chosen.iter().enumerate() {
        for &m in &fam.sets[s].members {
            load[m] += x[si];
        }
    }
    for (&l, module) in load.iter().zip(&fam.modules) {
        if l > module.len() {
            return None;
        }
    }
    // Residual requirement per S beyond the baseline |S| vertices/agent.
    let need: Vec<u64> = chosen
        .iter()
        .enumerate()
        .map(|(si, &s)| {
            let set = &fam.sets[s];
            let required = (set.d_s + set.union_size).saturating_sub(delta) * x[si];
            (required.saturating_sub(set.members.len() * x[si])) as u64
        })
        .collect();
    let total: u64 = need.iter().sum();
    let t = chosen.len();
    if total == 0 {
        let extra = chosen
            .iter()
            .map(|&s| vec![0u64; fam.sets[s].members.len()])
            .collect();
        return Some((x.to_vec(), extra));
    }
    let nodes = 2 + t + d;
    let mut net = crate::flow::FlowNetwork::new(nodes, 0, nodes - 1);
    let mut arcs: Vec<Vec<usize>> = Vec::with_capacity(t);
    for (si, &s) in chosen.iter().enumerate() {
        if need[si] > 0 {
            net.add_arc(0, 1 + si, need[si]);
        }
        let mut ids = Vec::new();
        for &m in &fam.sets[s].members {
            ids.push(net.add_arc(1 + si, 1 + t + m, total));
        }
        arcs.push(ids);
    }
    for (m, (&l, module)) in load.iter().zip(&fam.modules).enumerate() {
        let spare = module.len() - l;
        if spare > 0 {
            net.add_arc(1 + t + m, nodes - 1, spare as u64);
        }
    }
    if net.max_flow() != total {
        return None;
    }
    let extra = arcs
        .iter()
        .map(|ids| ids.iter().map(|&id| net.flow_on(id)).collect())
        .collect();
    Some((x.to_vec(), extra))
}

/// Turn a feasible (x, extra) into an allocation: agents are grouped by
/// assignable set; each group member gets one vertex per module, then
/// extras go one at a time to the currently least-loaded group member, so
/// group loads differ by at most one.
fn reconstruct(
    inst: &Instance,
    fam: &AssignableFamily,
    chosen: &[usize],
    x: &[usize],
    extra: &[Vec<u64>],
    delta: usize,
) -> Result<Allocation> {
    let n = inst.n();
    let k = inst.k;
    let mut sets = vec![VertexSet::new(n); k];
    let mut cursor = vec![0usize; fam.modules.len()];
    let mut agent = 0usize;
    for (si, &s) in chosen.iter().enumerate() {
        let group: Vec<usize> = (agent..agent + x[si]).collect();
        agent += x[si];
        let mut owned = vec![0usize; group.len()];
        for (mi, &m) in fam.sets[s].members.iter().enumerate() {
            for (gi, &a) in group.iter().enumerate() {
                sets[a].insert(fam.modules[m][cursor[m]]);
                cursor[m] += 1;
                owned[gi] += 1;
            }
            for _ in 0..extra[si][mi] {
                let gi = (0..group.len()).min_by_key(|&g| (owned[g], g)).unwrap();
                sets[group[gi]].insert(fam.modules[m][cursor[m]]);
                cursor[m] += 1;
                owned[gi] += 1;
            }
        }
    }
    debug_assert_eq!(agent, k);
    let alloc = Allocation::from_sets(sets);
    let profile = dissatisfaction_profile(inst, &alloc)?;
    assert!(
        profile.max() <= delta,
        "reconstruction must meet its threshold: {profile:?} vs {delta}"
    );
    Ok(alloc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_optimum;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> PreferenceGraph {
        PreferenceGraph::build(n, arcs).unwrap()
    }

    #[test]
    fn gadget_partitions_into_two_is_modules() {
        let g = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let mp = modular_partition(&g);
        assert_eq!(mp.d(), 2);
        assert!(mp.all_independent_sets());
        assert_eq!(mp.modules[0].vertices, vec![0, 1]);
        assert_eq!(mp.modules[1].vertices, vec![2, 3]);
    }

    #[test]
    fn chain_is_one_path_module() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let mp = modular_partition(&g);
        assert_eq!(mp.d(), 1);
        assert_eq!(mp.modules[0].kind, ModuleKind::Path(vec![0, 1, 2]));
    }

    #[test]
    fn out_star_splits_root_from_leaves() {
        let g = graph(3, &[(0, 1), (0, 2)]);
        let mp = modular_partition(&g);
        assert_eq!(mp.d(), 2);
        assert_eq!(mp.modules[0].vertices, vec![0]);
        assert_eq!(mp.modules[1].kind, ModuleKind::IndependentSet);
        assert_eq!(mp.modules[1].vertices, vec![1, 2]);
    }

    #[test]
    fn every_block_is_a_module() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.35) {
                        arcs.push((u, v));
                    }
                }
            }
            let g = graph(n, &arcs);
            let mp = modular_partition(&g);
            let mut seen = vec![false; n];
            for m in &mp.modules {
                let x = VertexSet::from_iter(n, m.vertices.iter().copied());
                assert!(is_module(&g, &x));
                assert!(module_shape(&g, &x).is_some());
                for &v in &m.vertices {
                    assert!(!seen[v]);
                    seen[v] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn fpt_edgeless_four_two_agents() {
        let g = graph(4, &[]);
        let mp = modular_partition(&g);
        assert_eq!(mp.d(), 1);
        let inst = Instance::new(g, 2);
        let r = solve_modular_fpt(&inst, &mp).unwrap();
        assert_eq!(r.optimum, 2);
    }

    #[test]
    fn fpt_gadget_matches_oracle() {
        let g = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let mp = modular_partition(&g);
        let inst = Instance::new(g, 2);
        let r = solve_modular_fpt(&inst, &mp).unwrap();
        assert_eq!(r.optimum, brute_force_optimum(&inst).unwrap().optimum);
    }

    #[test]
    fn fpt_chain_matches_two_agent_solver() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let mp = modular_partition(&g);
        let inst = Instance::new(g, 2);
        let r = solve_modular_fpt(&inst, &mp).unwrap();
        assert_eq!(r.optimum, 1);
    }

    #[test]
    fn fpt_budget_enforced() {
        let g = graph(4, &[]);
        let mp = modular_partition(&g);
        let inst = Instance::new(g, 3);
        let tight = Budgets {
            guess_budget: 4,
            ..Budgets::default()
        };
        assert!(matches!(
            solve_modular_fpt_with(&inst, &mp, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn assignable_sets_gadget() {
        let g = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let fam = assignable_sets(&g, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(fam.sets.len(), 2); // the pair is not an antichain union
        let top = fam.sets.iter().find(|s| s.members == vec![0]).unwrap();
        let bottom = fam.sets.iter().find(|s| s.members == vec![1]).unwrap();
        assert_eq!(top.d_s, 0);
        assert_eq!(bottom.d_s, 2);
    }

    #[test]
    fn assignable_sets_rejects_bad_inputs() {
        let g = graph(3, &[(0, 1)]);
        assert!(matches!(
            assignable_sets(&g, &[vec![0, 1]]),
            Err(Error::NotAPartition)
        ));
        assert!(matches!(
            assignable_sets(&g, &[vec![0, 1], vec![2]]),
            Err(Error::NotAllIsModules)
        ));
    }

    #[test]
    fn is_modules_edgeless_four_two_agents() {
        let g = graph(4, &[]);
        let fam = assignable_sets(&g, &[vec![0, 1, 2, 3]]).unwrap();
        let inst = Instance::new(g, 2);
        let r = solve_is_modules(&inst, &fam).unwrap();
        assert_eq!(r.optimum, 2);
    }

    #[test]
    fn is_modules_gadget_matches_oracle() {
        for k in 1..=3 {
            let g = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
            let fam = assignable_sets(&g, &[vec![0, 1], vec![2, 3]]).unwrap();
            let inst = Instance::new(g, k);
            let r = solve_is_modules(&inst, &fam).unwrap();
            let exact = brute_force_optimum(&inst).unwrap();
            assert_eq!(r.optimum, exact.optimum, "k = {k}");
        }
    }

    #[test]
    fn both_fpt_solvers_match_oracle_on_structured_instances() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        use rand::Rng;
        for trial in 0..40 {
            let g = crate::gen::gen_module_structured(3, trial % 2 == 0, rng.gen());
            if g.n() == 0 {
                continue;
            }
            let mp = modular_partition(&g);
            let k = rng.gen_range(1..=3.min(g.n()));
            let inst = Instance::new(g.clone(), k);
            let exact = brute_force_optimum(&inst).unwrap().optimum;
            if mp.d() <= 3 {
                let r = solve_modular_fpt(&inst, &mp).unwrap();
                assert_eq!(r.optimum, exact, "fpt trial {trial}");
            }
            if mp.all_independent_sets() {
                let fam = assignable_sets(&g, &mp.vertex_lists()).unwrap();
                let r = solve_is_modules(&inst, &fam).unwrap();
                assert_eq!(r.optimum, exact, "is trial {trial}");
            }
        }
    }
}
