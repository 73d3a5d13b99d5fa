//! Width-2 solver: reduce to a k-cardinality bottleneck matching in an
//! auxiliary bipartite graph whose edges are the possible agent bundles
//! (size-2 antichains, and singletons paired with their primed copies).

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::matching::{bottleneck_k_matching, WeightedBipartiteGraph};
use crate::model::{Allocation, Instance, SolveResult};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug)]
enum Bundle {
    Pair(usize, usize),
    Single(usize),
}

pub fn solve_width_two(inst: &Instance) -> Result<SolveResult> {
    let g = &inst.graph;
    let n = g.n();
    let k = inst.k;
    if k > n {
        return Err(Error::TooManyAgents { k, n });
    }
    let cert = g.width_and_chain_partition();
    if cert.width > 2 {
        return Err(Error::WidthTooLarge(cert.width));
    }

    // Bipartition of the auxiliary graph: chain P with the primed copies of
    // chain Q on one side, chain Q with the primed copies of P on the other.
    let mut in_chain_zero = vec![false; n];
    for &v in &cert.chains[0] {
        in_chain_zero[v] = true;
    }
    // side 0: v in chain 0 and v' for v in other chains; side 1: the rest.
    let side = |v: usize, primed: bool| -> usize {
        if in_chain_zero[v] != primed {
            0
        } else {
            1
        }
    };
    // Dense per-side ids: plain vertex v -> v, primed copy v' -> n + v.
    let idx = |v: usize, primed: bool| -> usize { if primed { n + v } else { v } };

    let mut edges = Vec::new();
    let mut payload: HashMap<(usize, usize), Bundle> = HashMap::new();
    let mut push = |a: (usize, bool), b: (usize, bool), w: u64, bundle: Bundle| {
        debug_assert_ne!(side(a.0, a.1), side(b.0, b.1));
        let (l, r) = if side(a.0, a.1) == 0 { (a, b) } else { (b, a) };
        let (li, ri) = (idx(l.0, l.1), idx(r.0, r.1));
        edges.push((li, ri, w));
        payload.insert((li, ri), bundle);
    };

    for v in 0..n {
        let w = (n - g.reach(v).count()) as u64;
        push((v, false), (v, true), w, Bundle::Single(v));
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if !g.reaches(x, y) && !g.reaches(y, x) {
                let mut cov = g.reach(x).clone();
                cov.union_with(g.reach(y));
                let w = (n - cov.count()) as u64;
                push((x, false), (y, false), w, Bundle::Pair(x, y));
            }
        }
    }

    let aux = WeightedBipartiteGraph {
        left: 2 * n,
        right: 2 * n,
        edges,
    };
    // A k-matching always exists (the singleton edges are a perfect matching).
    let result = bottleneck_k_matching(&aux, k)?;

    let mut sets = Vec::with_capacity(k);
    for &(l, r) in &result.matching {
        let bundle = payload[&(l, r)];
        let set = match bundle {
            Bundle::Pair(x, y) => VertexSet::from_iter(n, [x, y]),
            Bundle::Single(v) => VertexSet::singleton(n, v),
        };
        sets.push(set);
    }
    SolveResult::checked(
        inst,
        Allocation::from_sets(sets),
        result.bottleneck as usize,
        "width_two",
        None,
    )
}
