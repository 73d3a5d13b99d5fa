//! Preference-graph representation and order-theoretic primitives:
//! reachability, antichains, width, chain partitions, depth.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::matching::{self, BipartiteGraph};

/// A validated preference DAG over items `0..n`, with a topological order
/// and per-vertex successor closures precomputed at build time.
#[derive(Clone, Debug)]
pub struct PreferenceGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    topo: Vec<usize>,
    /// `reach[v]` contains `v` and every vertex reachable from it.
    reach: Vec<VertexSet>,
}

impl PreferenceGraph {
    /// Validates the arc list and computes the topological order and the
    /// reachability index (closure by reverse-topological bitset union).
    pub fn build(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in arcs {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }

        let topo = toposort(n, &out_adj, &in_adj)?;

        let mut reach = (0..n).map(|v| VertexSet::singleton(n, v)).collect::<Vec<_>>();
        for &v in topo.iter().rev() {
            for &w in &out_adj[v] {
                let closure = reach[w].clone();
                reach[v].union_with(&closure);
            }
        }

        Ok(PreferenceGraph {
            n,
            arcs: arcs.to_vec(),
            out_adj,
            in_adj,
            topo,
            reach,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_adj(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_adj(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn topo(&self) -> &[usize] {
        &self.topo
    }

    /// `succ[v]`: the successor closure of `v`, including `v` itself.
    pub fn reach(&self, v: usize) -> &VertexSet {
        &self.reach[v]
    }

    /// Vertices with in-degree zero.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.in_adj[v].is_empty()).collect()
    }

    /// True iff no two distinct members of `s` are connected by a directed path.
    pub fn is_antichain(&self, s: &VertexSet) -> bool {
        for v in s.iter() {
            if self.reach[v].intersection_count(s) != 1 {
                return false;
            }
        }
        true
    }

    /// True iff there is a directed path from `u` to `v` (or `u == v`).
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u].contains(v)
    }

    /// Union of `reach[v]` over the members of `s`.
    pub fn coverage(&self, s: &VertexSet) -> VertexSet {
        let mut cov = VertexSet::new(self.n);
        for v in s.iter() {
            cov.union_with(&self.reach[v]);
        }
        cov
    }

    /// Width plus a certifying chain partition and maximum antichain,
    /// via a maximum matching in the transitive-closure split graph.
    pub fn width_and_chain_partition(&self) -> WidthCertificate {
        let n = self.n;
        // Split graph: left copy u -- right copy v iff u strictly reaches v.
        let mut edges = Vec::new();
        for u in 0..n {
            for v in self.reach[u].iter() {
                if v != u {
                    edges.push((u, v));
                }
            }
        }
        let g = BipartiteGraph::new(n, n, edges);
        let result = matching::max_bipartite_matching(&g);

        // Chains follow the matched successor links.
        let mut next = vec![None; n];
        let mut has_pred = vec![false; n];
        for &(u, v) in &result.matching {
            next[u] = Some(v);
            has_pred[v] = true;
        }
        let mut chains = Vec::new();
        for (start, &pred) in has_pred.iter().enumerate() {
            if !pred {
                let mut chain = vec![start];
                let mut cur = start;
                while let Some(nxt) = next[cur] {
                    chain.push(nxt);
                    cur = nxt;
                }
                chains.push(chain);
            }
        }

        // Koenig: vertices uncovered on both sides form a maximum antichain.
        let antichain: Vec<usize> = (0..n)
            .filter(|&v| !result.cover_left.contains(&v) && !result.cover_right.contains(&v))
            .collect();

        debug_assert_eq!(chains.len(), n - result.matching.len());
        debug_assert_eq!(antichain.len(), chains.len());

        WidthCertificate {
            width: chains.len(),
            chains,
            antichain_witness: antichain,
        }
    }

    /// Depth of `v` in an out-forest: number of vertices on the unique
    /// path from the root of `v`'s tree down to `v`.
    pub fn depth(&self, v: usize) -> Result<usize> {
        let mut d = 1;
        let mut cur = v;
        loop {
            match self.in_adj[cur].len() {
                0 => return Ok(d),
                1 => {
                    cur = self.in_adj[cur][0];
                    d += 1;
                }
                _ => return Err(Error::NotAForest(cur)),
            }
        }
    }

    /// All applicable structural tags, used by the dispatcher.
    pub fn classify_shape(&self) -> Vec<ShapeTag> {
        let mut tags = Vec::new();
        let edgeless = self.arcs.is_empty();
        let max_total_deg = (0..self.n)
            .map(|v| self.in_adj[v].len() + self.out_adj[v].len())
            .max()
            .unwrap_or(0);
        let out_forest = (0..self.n).all(|v| self.in_adj[v].len() <= 1);
        let out_stars = out_forest
            && (0..self.n).all(|v| self.in_adj[v].is_empty() || self.out_adj[v].is_empty());
        let matching = max_total_deg <= 1;
        let width_le_2 = self.width_and_chain_partition().width <= 2;

        if edgeless {
            tags.push(ShapeTag::Edgeless);
        }
        if matching {
            tags.push(ShapeTag::DirectedMatching);
        }
        if out_stars {
            tags.push(ShapeTag::OutStarCollection);
        }
        if out_forest {
            tags.push(ShapeTag::OutForest);
        }
        if width_le_2 {
            tags.push(ShapeTag::WidthLeTwo);
        }
        if !out_forest && !width_le_2 {
            tags.push(ShapeTag::General);
        }
        tags
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeTag {
    Edgeless,
    DirectedMatching,
    OutStarCollection,
    OutForest,
    WidthLeTwo,
    General,
}

impl std::fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ShapeTag::Edgeless => "edgeless",
            ShapeTag::DirectedMatching => "directed_matching",
            ShapeTag::OutStarCollection => "out_star_collection",
            ShapeTag::OutForest => "out_forest",
            ShapeTag::WidthLeTwo => "width_le_2",
            ShapeTag::General => "general",
        };
        f.write_str(s)
    }
}

/// Dilworth certificate: a chain partition whose size equals the
/// cardinality of the antichain witness.
#[derive(Clone, Debug)]
pub struct WidthCertificate {
    pub width: usize,
    pub chains: Vec<Vec<usize>>,
    pub antichain_witness: Vec<usize>,
}

fn toposort(n: usize, out_adj: &[Vec<usize>], in_adj: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut indeg: Vec<usize> = (0..n).map(|v| in_adj[v].len()).collect();
    let mut queue: std::collections::VecDeque<usize> =
        (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        topo.push(v);
        for &w in &out_adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if topo.len() == n {
        return Ok(topo);
    }
    // Walk predecessors inside the residual vertices until one repeats.
    let leftover: Vec<usize> = (0..n).filter(|&v| indeg[v] > 0).collect();
    let in_residual = |v: usize| indeg[v] > 0;
    let start = leftover[0];
    let mut path = vec![start];
    let mut pos = std::collections::HashMap::new();
    pos.insert(start, 0usize);
    let mut cur = start;
    loop {
        let prev = *in_adj[cur]
            .iter()
            .find(|&&u| in_residual(u))
            .expect("residual vertex must have a residual predecessor");
        if let Some(&i) = pos.get(&prev) {
            let mut cycle: Vec<usize> = path[i..].to_vec();
            cycle.reverse();
            return Err(Error::CycleDetected(cycle));
        }
        pos.insert(prev, path.len());
        path.push(prev);
        cur = prev;
    }
}
