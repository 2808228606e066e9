//! Reduction of a weighted colored quotient to a simple graph, and recovery
//! of the quotient from that graph alone.
//!
//! Each quotient vertex of weight `w` gets a joined cycle of length `w + 2`;
//! each quotient edge of color `c` is replaced by a path with `c` internal
//! vertices. Degree-≥3 vertices of the result are exactly the quotient
//! vertices, which is what makes recovery possible.

use std::collections::HashSet;

use thiserror::Error;

use crate::quotient::{QuotientError, QuotientTree};
use crate::tree::Color;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("subdivision count must be at least 1")]
    ZeroSubdivision,
    #[error("cycle length {0} is too short for a simple graph (need at least 3)")]
    CycleTooShort(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("quotient carries a loop; only loop-free quotients reduce")]
    LoopPresent,
    #[error("not a reduction image: {0}")]
    NotAReductionImage(String),
}

impl ReductionError {
    pub fn kind(&self) -> &'static str {
        match self {
            ReductionError::NotAnEdge(..) => "NotAnEdge",
            ReductionError::ZeroSubdivision => "ZeroSubdivision",
            ReductionError::CycleTooShort(_) => "CycleTooShort",
            ReductionError::VertexOutOfRange(_) => "VertexOutOfRange",
            ReductionError::LoopPresent => "LoopPresent",
            ReductionError::NotAReductionImage(_) => "NotAReductionImage",
        }
    }
}

fn not_image(msg: impl Into<String>) -> ReductionError {
    ReductionError::NotAReductionImage(msg.into())
}

/// Plain undirected graph on `0..nv`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    pub nv: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(nv: usize, edges: Vec<(usize, usize)>) -> Self {
        SimpleGraph { nv, edges }
    }

    fn add_vertices(&mut self, count: usize) -> usize {
        let first = self.nv;
        self.nv += count;
        first
    }

    /// Appends a path `x – z_1 – … – z_s – y` with fresh internal vertices and
    /// returns the first of them.
    fn push_path(&mut self, x: usize, y: usize, s: usize) -> usize {
        let first = self.add_vertices(s);
        let mut prev = x;
        for z in first..first + s {
            self.edges.push((prev, z));
            prev = z;
        }
        self.edges.push((prev, y));
        first
    }

    /// Appends a cycle of length `s` through `v`; returns the first new vertex.
    fn push_cycle(&mut self, v: usize, s: usize) -> usize {
        let first = self.add_vertices(s - 1);
        let mut prev = v;
        for u in first..first + s - 1 {
            self.edges.push((prev, u));
            prev = u;
        }
        self.edges.push((prev, v));
        first
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nv];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}

/// Replaces the edge `{x, y}` by a path with `s` internal vertices.
pub fn subdivide_edge(
    graph: &SimpleGraph,
    edge: (usize, usize),
    s: usize,
) -> Result<SimpleGraph, ReductionError> {
    if s == 0 {
        return Err(ReductionError::ZeroSubdivision);
    }
    let (x, y) = edge;
    let idx = graph
        .edges
        .iter()
        .position(|&(a, b)| (a == x && b == y) || (a == y && b == x))
        .ok_or(ReductionError::NotAnEdge(x, y))?;
    let mut g = graph.clone();
    g.edges.remove(idx);
    g.push_path(x, y, s);
    Ok(g)
}

/// Attaches a cycle of length `s` through `v`.
pub fn join_cycle(graph: &SimpleGraph, v: usize, s: usize) -> Result<SimpleGraph, ReductionError> {
    if s < 3 {
        return Err(ReductionError::CycleTooShort(s));
    }
    if v >= graph.nv {
        return Err(ReductionError::VertexOutOfRange(v));
    }
    let mut g = graph.clone();
    g.push_cycle(v, s);
    Ok(g)
}

/// Where a vertex of the reduction graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    QuotientVertex(usize),
    Subdivision { qedge: usize, position: usize },
    Cycle { vertex: usize, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraphImage {
    pub graph: SimpleGraph,
    pub provenance: Vec<Provenance>,
}

/// Builds the simple graph of a loop-free quotient. Quotient vertex `i` keeps
/// id `i`; subdivision vertices follow in edge order, then cycle vertices in
/// vertex order.
pub fn reduce_to_graph(q: &QuotientTree) -> Result<SimpleGraphImage, ReductionError> {
    if q.loop_().is_some() {
        return Err(ReductionError::LoopPresent);
    }
    let m = q.m();
    let mut graph = SimpleGraph {
        nv: m,
        edges: Vec::new(),
    };
    let mut provenance: Vec<Provenance> = (0..m).map(Provenance::QuotientVertex).collect();
    for (i, &(a, b, c)) in q.qedges().iter().enumerate() {
        let s = c as usize;
        graph.push_path(a, b, s);
        provenance.extend((0..s).map(|position| Provenance::Subdivision { qedge: i, position }));
    }
    for v in 0..m {
        let len = q.weight(v) + 2;
        graph.push_cycle(v, len);
        provenance.extend((0..len - 1).map(|position| Provenance::Cycle {
            vertex: v,
            position,
        }));
    }
    debug_assert_eq!(provenance.len(), graph.nv);
    Ok(SimpleGraphImage { graph, provenance })
}

/// Vertex count predicted by the construction: `m + Σ c(e) + Σ (w(v) + 1)`.
pub fn predicted_size(q: &QuotientTree) -> usize {
    let colors: usize = q.qedges().iter().map(|&(_, _, c)| c as usize).sum();
    let cycles: usize = q.weights().iter().map(|&w| w + 1).sum();
    q.m() + colors + cycles
}

/// Recovers the quotient from a graph produced by [`reduce_to_graph`], using
/// the graph structure only. Quotient vertices are numbered by increasing
/// graph id of their hub vertex; `k` of the result is the largest color found.
pub fn recover_quotient(g: &SimpleGraph) -> Result<QuotientTree, ReductionError> {
    let nv = g.nv;
    if nv == 0 {
        return Err(not_image("empty graph"));
    }
    let mut seen_edges = HashSet::with_capacity(g.edges.len());
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in &g.edges {
        if a >= nv || b >= nv {
            return Err(not_image(format!("edge ({a}, {b}) out of range")));
        }
        if a == b {
            return Err(not_image(format!("self-loop at {a}")));
        }
        if !seen_edges.insert((a.min(b), a.max(b))) {
            return Err(not_image(format!("multiple edge ({a}, {b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if let Some(x) = (0..nv).find(|&x| adj[x].len() < 2) {
        return Err(not_image(format!("vertex {x} has degree {}", adj[x].len())));
    }

    let hubs: Vec<usize> = (0..nv).filter(|&x| adj[x].len() >= 3).collect();
    if hubs.is_empty() {
        // A lone cycle encodes a single quotient vertex.
        let mut prev = 0;
        let mut cur = adj[0][0];
        let mut len = 1;
        while cur != 0 {
            let next = if adj[cur][0] == prev {
                adj[cur][1]
            } else {
                adj[cur][0]
            };
            prev = cur;
            cur = next;
            len += 1;
        }
        if len != nv {
            return Err(not_image(
                "graph of degree-2 vertices is not a single cycle",
            ));
        }
        return QuotientTree::new(1, 1, vec![nv - 2], vec![], None).map_err(quotient_err);
    }

    let mut q_of = vec![usize::MAX; nv];
    for (i, &h) in hubs.iter().enumerate() {
        q_of[h] = i;
    }
    let m = hubs.len();
    let mut weight = vec![0usize; m];
    let mut qedges: Vec<(usize, usize, Color)> = Vec::with_capacity(m - 1);
    let mut visited = vec![false; nv];
    for &h in &hubs {
        visited[h] = true;
    }
    for &h in &hubs {
        for &start in &adj[h] {
            if adj[start].len() >= 3 {
                return Err(not_image(format!("hubs {h} and {start} are adjacent")));
            }
            if visited[start] {
                continue;
            }
            // Walk the chain of degree-2 vertices.
            let mut prev = h;
            let mut cur = start;
            let mut internal = 0usize;
            while adj[cur].len() == 2 {
                visited[cur] = true;
                internal += 1;
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
                if cur == h || adj[cur].len() >= 3 {
                    break;
                }
            }
            if cur == h {
                let qh = q_of[h];
                if weight[qh] != 0 {
                    return Err(not_image(format!("vertex {h} carries more than one cycle")));
                }
                // cycle length internal + 1 = w + 2
                if internal < 2 {
                    return Err(not_image(format!("cycle at {h} is too short")));
                }
                weight[qh] = internal - 1;
            } else {
                qedges.push((q_of[h], q_of[cur], internal as Color));
            }
        }
    }
    if let Some(x) = (0..nv).find(|&x| !visited[x]) {
        return Err(not_image(format!(
            "vertex {x} is not reachable by a chain from a hub"
        )));
    }
    if let Some(i) = weight.iter().position(|&w| w == 0) {
        return Err(not_image(format!("vertex {} has no weight cycle", hubs[i])));
    }
    let k = qedges.iter().map(|&(_, _, c)| c).max().unwrap_or(1);
    QuotientTree::new(m, k, weight, qedges, None).map_err(quotient_err)
}

fn quotient_err(e: QuotientError) -> ReductionError {
    not_image(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn subdivide_single_edge() {
        let g = SimpleGraph::new(2, vec![(0, 1)]);
        let g1 = subdivide_edge(&g, (0, 1), 1).unwrap();
        assert_eq!(g1, SimpleGraph::new(3, vec![(0, 2), (2, 1)]));
        let g3 = subdivide_edge(&g, (1, 0), 3).unwrap();
        assert_eq!(g3.nv, 5);
        assert_eq!(g3.edges.len(), 4);
        assert_eq!(
            subdivide_edge(&g, (0, 0), 1).unwrap_err(),
            ReductionError::NotAnEdge(0, 0)
        );
        assert_eq!(
            subdivide_edge(&g, (0, 1), 0).unwrap_err(),
            ReductionError::ZeroSubdivision
        );
    }

    #[test]
    fn subdivide_red_edge() {
        // A–B red: three internal vertices
        let g = SimpleGraph::new(2, vec![(0, 1)]);
        let g = subdivide_edge(&g, (0, 1), samples::RED as usize).unwrap();
        assert_eq!(g.edges, vec![(0, 2), (2, 3), (3, 4), (4, 1)]);
    }

    #[test]
    fn cycles() {
        let g = SimpleGraph::new(1, vec![]);
        let t = join_cycle(&g, 0, 3).unwrap();
        assert_eq!(t, SimpleGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]));
        let six = join_cycle(&g, 0, 4 + 2).unwrap();
        assert_eq!(six.nv, 6);
        assert_eq!(six.degrees()[0], 2);
        assert_eq!(
            join_cycle(&g, 0, 2).unwrap_err(),
            ReductionError::CycleTooShort(2)
        );
    }

    #[test]
    fn reduce_eight_vertex_quotient() {
        let q = samples::eight_vertex_quotient();
        let img = reduce_to_graph(&q).unwrap();
        assert_eq!(img.graph.nv, 44);
        assert_eq!(predicted_size(&q), 44);
        let d = img.graph.degrees();
        let adj_count = |v: usize| q.qedges().iter().filter(|e| e.0 == v || e.1 == v).count();
        for (v, &deg) in d.iter().enumerate().take(8) {
            assert_eq!(deg, adj_count(v) + 2);
        }
        assert!(d[8..].iter().all(|&x| x == 2));
        let back = recover_quotient(&img.graph).unwrap();
        assert!(back.matches_under(&q, &(0..8).collect::<Vec<_>>()));
    }

    #[test]
    fn reduce_small_quotients() {
        let q = QuotientTree::new(1, 1, vec![1], vec![], None).unwrap();
        let img = reduce_to_graph(&q).unwrap();
        assert_eq!(img.graph.nv, 3);
        let back = recover_quotient(&img.graph).unwrap();
        assert_eq!(back.weights(), &[1]);

        let q = QuotientTree::new(2, 1, vec![1, 3], vec![(0, 1, 1)], None).unwrap();
        let img = reduce_to_graph(&q).unwrap();
        assert_eq!(img.graph.nv, 9);
        assert_eq!(
            img.provenance[2],
            Provenance::Subdivision {
                qedge: 0,
                position: 0
            }
        );
        assert_eq!(
            img.provenance[3],
            Provenance::Cycle {
                vertex: 0,
                position: 0
            }
        );
        assert_eq!(recover_quotient(&img.graph).unwrap(), q);
    }

    #[test]
    fn triangle_recovers_single_vertex() {
        let g = SimpleGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        let q = recover_quotient(&g).unwrap();
        assert_eq!((q.m(), q.weights()), (1, &[1usize][..]));
    }

    #[test]
    fn rejects_non_images() {
        let pendant = SimpleGraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
        assert_eq!(
            recover_quotient(&pendant).unwrap_err().kind(),
            "NotAReductionImage"
        );
        // two disjoint triangles
        let two = SimpleGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(recover_quotient(&two).is_err());
        // hub with two cycles
        let bow = SimpleGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        assert!(recover_quotient(&bow).is_err());
        // adjacent hubs (a color-0 edge)
        let adj = SimpleGraph::new(
            6,
            vec![(0, 1), (0, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 1)],
        );
        assert!(recover_quotient(&adj).is_err());
        let dup = SimpleGraph::new(3, vec![(0, 1), (1, 0), (1, 2)]);
        assert!(recover_quotient(&dup).is_err());
    }

    #[test]
    fn loop_quotient_does_not_reduce() {
        let q = crate::quotient::build_dynamics_quotient(&samples::path4_swap());
        assert_eq!(
            reduce_to_graph(&q).unwrap_err(),
            ReductionError::LoopPresent
        );
    }
}
