//! Deterministic instance generators and the coloring reduction.

use crate::bitset::VertexSet;
use crate::dag::PreferenceGraph;
use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random DAG: arcs point forward along a shuffled vertex order, each kept
/// with probability `p`.
pub fn gen_random_dag(n: usize, p: f64, seed: u64) -> PreferenceGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    PreferenceGraph::build(n, &arcs).expect("forward arcs cannot form a cycle")
}

/// Collection of out-stars: for each entry of `leaf_counts` a root followed
/// by its leaves, numbered sequentially, then `singleton_count` isolated
/// vertices.
pub fn gen_out_stars(leaf_counts: &[usize], singleton_count: usize) -> Result<PreferenceGraph> {
    let mut arcs = Vec::new();
    let mut next = 0;
    for &leaves in leaf_counts {
        let root = next;
        next += 1;
        for _ in 0..leaves {
            arcs.push((root, next));
            next += 1;
        }
    }
    next += singleton_count;
    PreferenceGraph::build(next, &arcs)
}

/// `edge_count` disjoint arcs: (0,1), (2,3), ...
pub fn gen_directed_matching(edge_count: usize) -> PreferenceGraph {
    let arcs: Vec<(usize, usize)> = (0..edge_count).map(|i| (2 * i, 2 * i + 1)).collect();
    PreferenceGraph::build(2 * edge_count, &arcs).expect("matching is acyclic")
}

/// Three disjoint directed paths of `k` vertices each, shared by `k` agents.
/// Returns the instance together with the known optimum ceil(3(k-1)/2).
pub fn gen_three_paths(k: usize) -> (Instance, usize) {
    let n = 3 * k;
    let mut arcs = Vec::new();
    for path in 0..3 {
        for i in 0..k.saturating_sub(1) {
            let base = path * k;
            arcs.push((base + i, base + i + 1));
        }
    }
    let g = PreferenceGraph::build(n, &arcs).expect("paths are acyclic");
    let expected = (3 * (k.saturating_sub(1))).div_ceil(2);
    (Instance::new(g, k), expected)
}

/// Width-<=2 DAG: vertices are split across two chains along a random
/// order, plus random cross arcs that respect the order. The two chains
/// certify the width bound.
pub fn gen_width_two(n: usize, seed: u64) -> Result<PreferenceGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let chain_of: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut arcs = Vec::new();
    let mut last: [Option<usize>; 2] = [None, None];
    for (pos, &v) in order.iter().enumerate() {
        let c = chain_of[pos] as usize;
        if let Some(u) = last[c] {
            arcs.push((u, v));
        }
        last[c] = Some(v);
        // Cross arcs from earlier vertices of the other chain.
        for prev in 0..pos {
            if chain_of[prev] != chain_of[pos] && rng.gen_bool(0.25) {
                let u = order[prev];
                if !arcs.contains(&(u, v)) {
                    arcs.push((u, v));
                }
            }
        }
    }
    let g = PreferenceGraph::build(n, &arcs)?;
    debug_assert!(g.width_and_chain_partition().width <= 2);
    Ok(g)
}

/// Graph built from a small quotient DAG of at most `max_blocks` blocks:
/// each block is a directed path or an independent set, and arcs between
/// blocks are all-or-nothing, so the blocks are modules by construction
/// and the minimum path/IS module partition has at most `max_blocks`
/// parts. With `all_is` every multi-vertex block is kept edgeless.
pub fn gen_module_structured(max_blocks: usize, all_is: bool, seed: u64) -> PreferenceGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = rng.gen_range(1..=max_blocks.max(1));
    let sizes: Vec<usize> = (0..b).map(|_| rng.gen_range(1..=3)).collect();
    let mut start = vec![0usize; b];
    let mut n = 0;
    for i in 0..b {
        start[i] = n;
        n += sizes[i];
    }
    let mut arcs = Vec::new();
    for i in 0..b {
        if !all_is && sizes[i] > 1 && rng.gen_bool(0.5) {
            for t in 0..sizes[i] - 1 {
                arcs.push((start[i] + t, start[i] + t + 1));
            }
        }
    }
    for i in 0..b {
        for j in (i + 1)..b {
            if rng.gen_bool(0.4) {
                for u in 0..sizes[i] {
                    for v in 0..sizes[j] {
                        arcs.push((start[i] + u, start[j] + v));
                    }
                }
            }
        }
    }
    PreferenceGraph::build(n, &arcs).expect("block-forward arcs are acyclic")
}

/// Product of a coloring reduction: `k` disjoint copies of the subdivision
/// of an undirected graph H, with the decision threshold that is met
/// exactly when H is k-colorable.
#[derive(Clone, Debug)]
pub struct ColoringReduction {
    pub instance: Instance,
    pub h_vertices: usize,
    pub h_edges: Vec<(usize, usize)>,
    pub k: usize,
    pub threshold: usize,
}

impl ColoringReduction {
    fn copy_size(&self) -> usize {
        self.h_vertices + self.h_edges.len()
    }

    /// Id of original vertex `v` of H inside copy `copy`.
    pub fn original_id(&self, copy: usize, v: usize) -> usize {
        copy * self.copy_size() + v
    }

    /// Id of the subdivision vertex of edge index `e` inside copy `copy`.
    pub fn edge_id(&self, copy: usize, e: usize) -> usize {
        copy * self.copy_size() + self.h_vertices + e
    }
}

/// Subdivide every edge {u, v} of H into a sink w with arcs u -> w and
/// v -> w, take `k` disjoint copies, and set the threshold so the decision
/// instance is a yes-instance exactly when H is k-colorable.
pub fn reduce_coloring(h_vertices: usize, h_edges: &[(usize, usize)], k: usize) -> Result<ColoringReduction> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    for &(u, v) in h_edges {
        for w in [u, v] {
            if w >= h_vertices {
                return Err(Error::InvalidVertex { vertex: w, n: h_vertices });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
    }
    let nv = h_vertices;
    let ne = h_edges.len();
    let copy = nv + ne;
    let n = k * copy;
    let mut arcs = Vec::with_capacity(2 * ne * k);
    for c in 0..k {
        let base = c * copy;
        for (e, &(u, v)) in h_edges.iter().enumerate() {
            let w = base + nv + e;
            arcs.push((base + u, w));
            arcs.push((base + v, w));
        }
    }
    let g = PreferenceGraph::build(n, &arcs)?;
    // In one copy every original vertex dominates itself plus its incident
    // subdivision vertices, and every subdivision vertex only itself.
    let succ_total: usize = nv + 3 * ne;
    let threshold = n - succ_total;
    Ok(ColoringReduction {
        instance: Instance::with_threshold(g, k, threshold),
        h_vertices: nv,
        h_edges: h_edges.to_vec(),
        k,
        threshold,
    })
}

/// Turn a proper k-coloring of H into an allocation meeting the reduction
/// threshold: in copy c agent i takes the originals colored (i + c) mod k,
/// plus each subdivision vertex whose designated color (the lowest color
/// used by neither endpoint) equals (i + c) mod k.
pub fn coloring_to_allocation(red: &ColoringReduction, coloring: &[usize]) -> Result<Allocation> {
    let k = red.k;
    if coloring.len() != red.h_vertices {
        return Err(Error::ImproperColoring(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            red.h_vertices
        )));
    }
    for (v, &c) in coloring.iter().enumerate() {
        if c >= k {
            return Err(Error::ImproperColoring(format!(
                "vertex {v} has color {c}, but only {k} colors are allowed"
            )));
        }
    }
    let mut edge_color = Vec::with_capacity(red.h_edges.len());
    for &(u, v) in &red.h_edges {
        if coloring[u] == coloring[v] {
            return Err(Error::ImproperColoring(format!(
                "edge ({u}, {v}) has both endpoints colored {}",
                coloring[u]
            )));
        }
        let c = (0..k)
            .find(|&c| c != coloring[u] && c != coloring[v])
            .expect("k >= 3 leaves a free color");
        edge_color.push(c);
    }
    let n = red.instance.n();
    let mut sets = vec![VertexSet::new(n); k];
    for copy in 0..k {
        for (v, &cv) in coloring.iter().enumerate() {
            let agent = (cv + k - copy % k) % k;
            sets[agent].insert(red.original_id(copy, v));
        }
        for (e, &ce) in edge_color.iter().enumerate() {
            let agent = (ce + k - copy % k) % k;
            sets[agent].insert(red.edge_id(copy, e));
        }
    }
    Ok(Allocation::from_sets(sets))
}
