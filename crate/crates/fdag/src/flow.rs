//! Integral maximum flow (BFS augmenting paths).

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub source: usize,
    pub sink: usize,
    // Arcs stored in forward/reverse pairs; `residual[id]` is the remaining
    // capacity, so the flow on forward arc `id` is `residual[id ^ 1]`.
    to: Vec<usize>,
    residual: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            nodes,
            source,
            sink,
            to: Vec::new(),
            residual: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Returns the arc id, usable to read back the flow after solving.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.residual.push(cap);
        self.to.push(from);
        self.residual.push(0);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    pub fn flow_on(&self, arc_id: usize) -> u64 {
        self.residual[arc_id ^ 1]
    }

    /// Edmonds-Karp; capacities are integral so the result is an integral
    /// maximum flow.
    pub fn max_flow(&mut self) -> u64 {
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.nodes];
            let mut seen = vec![false; self.nodes];
            seen[self.source] = true;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(self.source);
            'bfs: while let Some(u) = queue.pop_front() {
                for &id in &self.adj[u] {
                    let v = self.to[id];
                    if !seen[v] && self.residual[id] > 0 {
                        seen[v] = true;
                        pred[v] = Some(id);
                        if v == self.sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !seen[self.sink] {
                return total;
            }
            let mut bottleneck = u64::MAX;
            let mut v = self.sink;
            while v != self.source {
                let id = pred[v].unwrap();
                bottleneck = bottleneck.min(self.residual[id]);
                v = self.to[id ^ 1];
            }
            let mut v = self.sink;
            while v != self.source {
                let id = pred[v].unwrap();
                self.residual[id] -= bottleneck;
                self.residual[id ^ 1] += bottleneck;
                v = self.to[id ^ 1];
            }
            total += bottleneck;
        }
    }

    /// Value of the cut found by residual reachability from the source;
    /// equals the max flow once `max_flow` has run.
    pub fn min_cut_value(&self) -> u64 {
        let mut seen = vec![false; self.nodes];
        seen[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(u) = stack.pop() {
            for &id in &self.adj[u] {
                let v = self.to[id];
                if !seen[v] && self.residual[id] > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        let mut cut = 0;
        for id in (0..self.to.len()).step_by(2) {
            let from = self.to[id ^ 1];
            let to = self.to[id];
            if seen[from] && !seen[to] {
                // Original capacity = residual + flow.
                cut += self.residual[id] + self.residual[id ^ 1];
            }
        }
        cut
    }
}
