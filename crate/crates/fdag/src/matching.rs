//! Bipartite maximum matching (Hopcroft-Karp) with a Koenig vertex cover,
//! and the k-cardinality bottleneck matching built on top of it.

use crate::error::{Error, Result};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); left];
        for (u, v) in edges {
            debug_assert!(u < left && v < right);
            adj[u].push(v);
        }
        // Sorted adjacency keeps augmenting-path order reproducible.
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        BipartiteGraph { left, right, adj }
    }
}

#[derive(Clone, Debug)]
pub struct MatchingResult {
    pub matching: Vec<(usize, usize)>,
    /// Minimum vertex cover, by Koenig's construction.
    pub cover_left: Vec<usize>,
    pub cover_right: Vec<usize>,
}

/// Maximum-cardinality matching; also returns a minimum vertex cover.
pub fn max_bipartite_matching(g: &BipartiteGraph) -> MatchingResult {
    let (match_l, match_r) = hopcroft_karp(g);

    // Koenig: alternating BFS from unmatched left vertices.
    let mut visit_l = vec![false; g.left];
    let mut visit_r = vec![false; g.right];
    let mut queue: VecDeque<usize> = (0..g.left).filter(|&u| match_l[u].is_none()).collect();
    for &u in &queue {
        visit_l[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if match_l[u] == Some(v) || visit_r[v] {
                continue;
            }
            visit_r[v] = true;
            if let Some(u2) = match_r[v] {
                if !visit_l[u2] {
                    visit_l[u2] = true;
                    queue.push_back(u2);
                }
            }
        }
    }

    let matching = (0..g.left)
        .filter_map(|u| match_l[u].map(|v| (u, v)))
        .collect();
    let cover_left = (0..g.left).filter(|&u| !visit_l[u]).collect();
    let cover_right = (0..g.right).filter(|&v| visit_r[v]).collect();
    MatchingResult {
        matching,
        cover_left,
        cover_right,
    }
}

fn hopcroft_karp(g: &BipartiteGraph) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut match_l: Vec<Option<usize>> = vec![None; g.left];
    let mut match_r: Vec<Option<usize>> = vec![None; g.right];
    loop {
        // BFS layers from free left vertices.
        let mut dist = vec![usize::MAX; g.left];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for u in 0..g.left {
            if match_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &g.adj[u] {
                match match_r[v] {
                    None => found = true,
                    Some(u2) => {
                        if dist[u2] == usize::MAX {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..g.left {
            if match_l[u].is_none() {
                augment(g, u, &dist, &mut match_l, &mut match_r);
            }
        }
    }
    (match_l, match_r)
}

fn augment(
    g: &BipartiteGraph,
    u: usize,
    dist: &[usize],
    match_l: &mut Vec<Option<usize>>,
    match_r: &mut Vec<Option<usize>>,
) -> bool {
    for &v in &g.adj[u] {
        match match_r[v] {
            None => {
                match_l[u] = Some(v);
                match_r[v] = Some(u);
                return true;
            }
            Some(u2) => {
                if dist[u2] == dist[u] + 1 && augment(g, u2, dist, match_l, match_r) {
                    match_l[u] = Some(v);
                    match_r[v] = Some(u);
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Clone, Debug)]
pub struct WeightedBipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

#[derive(Clone, Debug)]
pub struct BottleneckMatching {
    pub matching: Vec<(usize, usize)>,
    pub bottleneck: u64,
}

/// Among all cardinality-`k` matchings, one minimizing the largest edge
/// weight. Binary search over the distinct weights; each threshold is
/// tested with a maximum matching in the thresholded subgraph.
pub fn bottleneck_k_matching(g: &WeightedBipartiteGraph, k: usize) -> Result<BottleneckMatching> {
    if k == 0 {
        return Ok(BottleneckMatching {
            matching: Vec::new(),
            bottleneck: 0,
        });
    }
    let mut weights: Vec<u64> = g.edges.iter().map(|&(_, _, w)| w).collect();
    weights.sort_unstable();
    weights.dedup();

    let matching_at = |w: u64| {
        let edges = g
            .edges
            .iter()
            .filter(|&&(_, _, ew)| ew <= w)
            .map(|&(u, v, _)| (u, v))
            .collect();
        max_bipartite_matching(&BipartiteGraph::new(g.left, g.right, edges)).matching
    };

    if weights.is_empty() || matching_at(*weights.last().unwrap()).len() < k {
        return Err(Error::Infeasible(k));
    }
    let mut lo = 0usize;
    let mut hi = weights.len() - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matching_at(weights[mid]).len() >= k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let bottleneck = weights[lo];
    let mut matching = matching_at(bottleneck);
    matching.truncate(k);
    Ok(BottleneckMatching {
        matching,
        bottleneck,
    })
}
