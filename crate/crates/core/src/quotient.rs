//! Weighted colored quotient of an equipped tree by its automorphism, the
//! inverse expansion, and the saddle report for Morse–Smale instances.

use std::collections::VecDeque;

use thiserror::Error;

use crate::automorphism::{
    compute_orbits, validate_automorphism, EquippedColoredTree, OrbitDecomposition,
    VertexPermutation,
};
use crate::tree::{compute_ranks, ms_color_tag, Color, ColoredTree, Edge, Mode, RankInfo, NONE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("quotient needs at least one vertex")]
    Empty,
    #[error("weights table has length {got}, expected {m}")]
    WeightCount { got: usize, m: usize },
    #[error("vertex {vertex} has weight 0")]
    ZeroWeight { vertex: usize },
    #[error("edge {edge}: endpoint {vertex} out of range 0..{m}")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        m: usize,
    },
    #[error("edge {edge}: color {color} out of range 1..={k}")]
    ColorOutOfRange { edge: usize, color: Color, k: u32 },
    #[error("quotient edges do not form a tree: {0}")]
    NotATree(String),
    #[error("loop at vertex {vertex} must sit on a weight-2 vertex, found weight {weight}")]
    BadLoop { vertex: usize, weight: usize },
    #[error("the automorphism exchanges the two centers; use the dynamics quotient")]
    CentralOrbitNotFixed,
    #[error("quotient carries a loop; only loop-free quotients can be used here")]
    LoopPresent,
    #[error(
        "no vertex of weight 1: the expansion needs a fixed center (least weight is {weight})"
    )]
    CentralWeightNotOne { weight: usize },
    #[error(
        "edge ({parent}, {child}): weight {child_weight} is not a multiple of {parent_weight}"
    )]
    DivisibilityViolated {
        parent: usize,
        child: usize,
        parent_weight: usize,
        child_weight: usize,
    },
    #[error("tree is in {0} mode, morse-smale required")]
    WrongMode(&'static str),
    #[error("internal invariant breach: {0}")]
    Invariant(String),
}

impl QuotientError {
    pub fn kind(&self) -> &'static str {
        match self {
            QuotientError::Empty => "Empty",
            QuotientError::WeightCount { .. } => "WeightCount",
            QuotientError::ZeroWeight { .. } => "ZeroWeight",
            QuotientError::VertexOutOfRange { .. } => "VertexOutOfRange",
            QuotientError::ColorOutOfRange { .. } => "ColorOutOfRange",
            QuotientError::NotATree(_) => "NotATree",
            QuotientError::BadLoop { .. } => "BadLoop",
            QuotientError::CentralOrbitNotFixed => "CentralOrbitNotFixed",
            QuotientError::LoopPresent => "LoopPresent",
            QuotientError::CentralWeightNotOne { .. } => "CentralWeightNotOne",
            QuotientError::DivisibilityViolated { .. } => "DivisibilityViolated",
            QuotientError::WrongMode(_) => "WrongMode",
            QuotientError::Invariant(_) => "InvariantBreach",
        }
    }

    /// True when the error can only come from a bug, never from user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, QuotientError::Invariant(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientLoop {
    pub vertex: usize,
    pub color: Color,
}

/// Orbits as vertices, orbit sizes as weights, inherited edge colors.
///
/// Divisibility of weights is not enforced on construction; `expand_quotient`
/// and [`QuotientTree::check_divisibility`] report it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTree {
    m: usize,
    k: u32,
    weight: Vec<usize>,
    qedges: Vec<(usize, usize, Color)>,
    loop_: Option<QuotientLoop>,
}

impl QuotientTree {
    pub fn new(
        m: usize,
        k: u32,
        weight: Vec<usize>,
        qedges: Vec<(usize, usize, Color)>,
        loop_: Option<QuotientLoop>,
    ) -> Result<Self, QuotientError> {
        if m == 0 {
            return Err(QuotientError::Empty);
        }
        if weight.len() != m {
            return Err(QuotientError::WeightCount {
                got: weight.len(),
                m,
            });
        }
        if let Some(vertex) = weight.iter().position(|&w| w == 0) {
            return Err(QuotientError::ZeroWeight { vertex });
        }
        for (i, &(a, b, c)) in qedges.iter().enumerate() {
            for x in [a, b] {
                if x >= m {
                    return Err(QuotientError::VertexOutOfRange {
                        edge: i,
                        vertex: x,
                        m,
                    });
                }
            }
            if c == 0 || c > k {
                return Err(QuotientError::ColorOutOfRange {
                    edge: i,
                    color: c,
                    k,
                });
            }
        }
        // Reuse the tree validator for the shape.
        let shape: Vec<Edge> = qedges.iter().map(|&(a, b, _)| Edge::new(a, b, 1)).collect();
        ColoredTree::new(m, 1, Mode::Generic, shape)
            .map_err(|e| QuotientError::NotATree(e.to_string()))?;
        if let Some(l) = loop_ {
            if l.vertex >= m {
                return Err(QuotientError::VertexOutOfRange {
                    edge: qedges.len(),
                    vertex: l.vertex,
                    m,
                });
            }
            if l.color == 0 || l.color > k {
                return Err(QuotientError::ColorOutOfRange {
                    edge: qedges.len(),
                    color: l.color,
                    k,
                });
            }
            if weight[l.vertex] != 2 {
                return Err(QuotientError::BadLoop {
                    vertex: l.vertex,
                    weight: weight[l.vertex],
                });
            }
        }
        Ok(QuotientTree {
            m,
            k,
            weight,
            qedges,
            loop_,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn weights(&self) -> &[usize] {
        &self.weight
    }

    pub fn weight(&self, v: usize) -> usize {
        self.weight[v]
    }

    pub fn qedges(&self) -> &[(usize, usize, Color)] {
        &self.qedges
    }

    pub fn loop_(&self) -> Option<QuotientLoop> {
        self.loop_
    }

    /// Sum of weights: the vertex count of the expanded tree.
    pub fn total_weight(&self) -> usize {
        self.weight.iter().sum()
    }

    /// Neighbour lists `(vertex, color)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, Color)>> {
        let mut adj = vec![Vec::new(); self.m];
        for &(a, b, c) in &self.qedges {
            adj[a].push((b, c));
            adj[b].push((a, c));
        }
        adj
    }

    /// Centers of the underlying tree (one vertex, or the two ends of the
    /// central edge).
    pub fn centers(&self) -> Vec<usize> {
        let shape: Vec<Edge> = self
            .qedges
            .iter()
            .map(|&(a, b, c)| Edge::new(a, b, c))
            .collect();
        let t = ColoredTree::new(self.m, self.k.max(1), Mode::Generic, shape)
            .expect("validated on construction");
        compute_ranks(&t).centers
    }

    /// Vertex the expansion grows from: the least-index vertex of least weight
    /// (the loop vertex when a loop is present).
    pub fn expansion_root(&self) -> usize {
        if let Some(l) = self.loop_ {
            return l.vertex;
        }
        let min = *self.weight.iter().min().expect("m >= 1");
        self.weight
            .iter()
            .position(|&w| w == min)
            .expect("min exists")
    }

    /// BFS parent table from `root`; `NONE` for the root.
    pub(crate) fn parents_from(&self, root: usize) -> (Vec<usize>, Vec<Color>, Vec<usize>) {
        let adj = self.adjacency();
        let mut parent = vec![NONE; self.m];
        let mut pcolor = vec![0; self.m];
        let mut order = Vec::with_capacity(self.m);
        let mut seen = vec![false; self.m];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, c) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    pcolor[y] = c;
                    queue.push_back(y);
                }
            }
        }
        (parent, pcolor, order)
    }

    /// Checks that weights are divisible along every edge oriented away from
    /// the expansion root, and that the root has weight 1 (2 with a loop).
    pub fn check_divisibility(&self) -> Result<(), QuotientError> {
        let root = self.expansion_root();
        let (parent, _, order) = self.parents_from(root);
        for &x in &order[1..] {
            let p = parent[x];
            if !self.weight[x].is_multiple_of(self.weight[p]) {
                return Err(QuotientError::DivisibilityViolated {
                    parent: p,
                    child: x,
                    parent_weight: self.weight[p],
                    child_weight: self.weight[x],
                });
            }
        }
        let expected = if self.loop_.is_some() { 2 } else { 1 };
        if self.weight[root] != expected {
            return Err(QuotientError::CentralWeightNotOne {
                weight: self.weight[root],
            });
        }
        Ok(())
    }

    /// Structural equality under the vertex correspondence `map`
    /// (`self` vertex `i` ↔ `other` vertex `map[i]`). The color count `k` is
    /// not compared.
    pub fn matches_under(&self, other: &QuotientTree, map: &[usize]) -> bool {
        if self.m != other.m || map.len() != self.m || self.qedges.len() != other.qedges.len() {
            return false;
        }
        if (0..self.m).any(|i| map[i] >= other.m || self.weight[i] != other.weight[map[i]]) {
            return false;
        }
        let key = |a: usize, b: usize, c: Color| (a.min(b), a.max(b), c);
        let mut mine: Vec<_> = self
            .qedges
            .iter()
            .map(|&(a, b, c)| key(map[a], map[b], c))
            .collect();
        let mut theirs: Vec<_> = other.qedges.iter().map(|&(a, b, c)| key(a, b, c)).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        let loops_match = match (self.loop_, other.loop_) {
            (None, None) => true,
            (Some(a), Some(b)) => map[a.vertex] == b.vertex && a.color == b.color,
            _ => false,
        };
        mine == theirs && loops_match
    }

    /// Same quotient with vertices renamed by `map` (`i` becomes `map[i]`).
    pub fn relabeled(&self, map: &[usize]) -> QuotientTree {
        let mut weight = vec![0; self.m];
        for i in 0..self.m {
            weight[map[i]] = self.weight[i];
        }
        QuotientTree {
            m: self.m,
            k: self.k,
            weight,
            qedges: self
                .qedges
                .iter()
                .map(|&(a, b, c)| (map[a], map[b], c))
                .collect(),
            loop_: self.loop_.map(|l| QuotientLoop {
                vertex: map[l.vertex],
                color: l.color,
            }),
        }
    }
}

/// Quotient together with the map from tree vertices to quotient vertices.
#[derive(Debug, Clone)]
pub struct QuotientBuild {
    pub quotient: QuotientTree,
    pub vertex_to_q: Vec<usize>,
    pub ranks: RankInfo,
    pub orbits: OrbitDecomposition,
}

/// Builds the loop-free quotient. Fails when the automorphism exchanges the
/// two centers.
pub fn build_quotient(et: &EquippedColoredTree) -> Result<QuotientTree, QuotientError> {
    build_quotient_mapped(et, false).map(|b| b.quotient)
}

/// Like [`build_quotient`], but a center-exchanging automorphism yields a
/// quotient whose merged central vertex carries a loop of the central color.
pub fn build_dynamics_quotient(et: &EquippedColoredTree) -> QuotientTree {
    build_quotient_mapped(et, true)
        .expect("dynamics quotient exists for every equipped tree")
        .quotient
}

pub fn build_quotient_mapped(
    et: &EquippedColoredTree,
    allow_loop: bool,
) -> Result<QuotientBuild, QuotientError> {
    let tree = et.tree();
    let ranks = compute_ranks(tree);
    let orbits = compute_orbits(et);
    let swapped = match ranks.central_edge {
        Some((a, b)) => orbits.orbit_of[a] == orbits.orbit_of[b],
        None => false,
    };
    if swapped && !allow_loop {
        return Err(QuotientError::CentralOrbitNotFixed);
    }

    // Order orbits by (rank desc, least vertex); orbit ids already follow the
    // least vertex, so a stable bucket pass by rank is enough.
    let max_rank = ranks.max_rank();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_rank + 1];
    for (id, orbit) in orbits.orbits.iter().enumerate() {
        buckets[ranks.rank[orbit[0]]].push(id);
    }
    let mut q_of_orbit = vec![0usize; orbits.orbits.len()];
    let mut weight = Vec::with_capacity(orbits.orbits.len());
    for bucket in buckets.iter().rev() {
        for &id in bucket {
            q_of_orbit[id] = weight.len();
            weight.push(orbits.sizes[id]);
        }
    }
    let m = weight.len();

    let (parent, parent_color) = (&ranks.parent, &ranks.parent_color);

    let mut child_edge: Vec<Option<(usize, Color)>> = vec![None; m];
    for x in 0..tree.n() {
        if parent[x] == NONE {
            continue;
        }
        let q = q_of_orbit[orbits.orbit_of[x]];
        let pq = q_of_orbit[orbits.orbit_of[parent[x]]];
        match child_edge[q] {
            None => child_edge[q] = Some((pq, parent_color[x])),
            Some((p0, c0)) => {
                if p0 != pq || c0 != parent_color[x] {
                    return Err(QuotientError::Invariant(format!(
                        "orbit of vertex {x} is attached to two parent orbits or two colors"
                    )));
                }
            }
        }
    }

    let mut qedges = Vec::with_capacity(m.saturating_sub(1));
    let mut loop_ = None;
    if let Some((a, b)) = ranks.central_edge {
        let color = tree.edge_color(a, b).expect("central edge exists");
        let (qa, qb) = (
            q_of_orbit[orbits.orbit_of[a]],
            q_of_orbit[orbits.orbit_of[b]],
        );
        if swapped {
            loop_ = Some(QuotientLoop { vertex: qa, color });
        } else {
            qedges.push((qa, qb, color));
        }
    }
    for (q, e) in child_edge.iter().enumerate() {
        if let Some((pq, c)) = *e {
            qedges.push((pq, q, c));
        }
    }

    let vertex_to_q = (0..tree.n())
        .map(|x| q_of_orbit[orbits.orbit_of[x]])
        .collect();
    let quotient = QuotientTree {
        m,
        k: tree.k(),
        weight,
        qedges,
        loop_,
    };
    if quotient.qedges.len() + 1 != m {
        return Err(QuotientError::Invariant(format!(
            "quotient has {} edges on {m} vertices",
            quotient.qedges.len()
        )));
    }
    Ok(QuotientBuild {
        quotient,
        vertex_to_q,
        ranks,
        orbits,
    })
}

/// An expanded equipped tree with the quotient vertex of every tree vertex.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub equipped: EquippedColoredTree,
    pub origin: Vec<usize>,
}

/// Restores the equipped tree from a loop-free quotient.
///
/// Each quotient vertex of weight `w` becomes `w` consecutive vertices on which
/// the permutation is the cyclic shift; a child orbit of size `q` hangs off a
/// parent orbit of size `p` by joining child position `j` to parent position
/// `j mod p`.
pub fn expand_quotient(q: &QuotientTree) -> Result<EquippedColoredTree, QuotientError> {
    expand_quotient_mapped(q).map(|e| e.equipped)
}

pub fn expand_quotient_mapped(q: &QuotientTree) -> Result<Expansion, QuotientError> {
    if q.loop_.is_some() {
        return Err(QuotientError::LoopPresent);
    }
    q.check_divisibility()?;
    let root = q.expansion_root();
    let (parent, pcolor, order) = q.parents_from(root);

    let n = q.total_weight();
    let mut base = vec![0usize; q.m];
    let mut next = 0;
    for &x in &order {
        base[x] = next;
        next += q.weight[x];
    }
    let mut origin = vec![0usize; n];
    let mut image = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for &x in &order {
        let w = q.weight[x];
        for j in 0..w {
            origin[base[x] + j] = x;
            image[base[x] + j] = base[x] + (j + 1) % w;
        }
        if parent[x] != NONE {
            let p = parent[x];
            let pw = q.weight[p];
            for j in 0..w {
                edges.push(Edge::new(base[p] + j % pw, base[x] + j, pcolor[x]));
            }
        }
    }
    let tree = ColoredTree::new(n, q.k, Mode::Generic, edges)
        .map_err(|e| QuotientError::Invariant(format!("expansion is not a tree: {e}")))?;
    let perm = VertexPermutation::new(image)
        .map_err(|e| QuotientError::Invariant(format!("expansion permutation: {e}")))?;
    let equipped = validate_automorphism(tree, perm)
        .map_err(|e| QuotientError::Invariant(format!("expansion automorphism: {e}")))?;
    Ok(Expansion { equipped, origin })
}

/// One orbit of codimension-one saddles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaddleOrbit {
    /// A representative edge of the orbit.
    pub edge: (usize, usize),
    pub color: Color,
    /// `s` or `u`.
    pub tag: &'static str,
    pub period: usize,
    pub negative_orientation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsReport {
    /// Number of saddle spheres (`n − 1`).
    pub saddles: usize,
    /// Number of complementary domains (`n`).
    pub domains: usize,
    pub saddle_orbits: Vec<SaddleOrbit>,
    pub negative_orientation_saddles: usize,
    pub has_loop: bool,
}

/// Saddle counts, per-orbit periods and orientation type of a Morse–Smale
/// instance.
pub fn ms_report(et: &EquippedColoredTree) -> Result<MsReport, QuotientError> {
    let tree = et.tree();
    if tree.mode() != Mode::MorseSmale {
        return Err(QuotientError::WrongMode(tree.mode().as_str()));
    }
    let ranks = compute_ranks(tree);
    let orbits = compute_orbits(et);
    let mut saddle_orbits = Vec::new();
    let mut has_loop = false;
    if let Some((a, b)) = ranks.central_edge {
        let color = tree.edge_color(a, b).expect("central edge exists");
        let swapped = et.perm().apply(a) == b;
        has_loop = swapped;
        saddle_orbits.push(SaddleOrbit {
            edge: (a, b),
            color,
            tag: ms_color_tag(color),
            period: 1,
            negative_orientation: swapped,
        });
    }
    // Every non-central edge orbit is determined by the orbit of its lower
    // endpoint.
    let mut upper = vec![NONE; tree.n()];
    for e in tree.edges() {
        let (ru, rv) = (ranks.rank[e.u], ranks.rank[e.v]);
        if ru < rv {
            upper[e.u] = e.v;
        } else if rv < ru {
            upper[e.v] = e.u;
        }
    }
    for (id, orbit) in orbits.orbits.iter().enumerate() {
        let x = orbit[0];
        let y = upper[x];
        if y != NONE {
            let color = tree.edge_color(x, y).expect("edge exists");
            saddle_orbits.push(SaddleOrbit {
                edge: (x, y),
                color,
                tag: ms_color_tag(color),
                period: orbits.sizes[id],
                negative_orientation: false,
            });
        }
    }
    let negative_orientation_saddles = saddle_orbits
        .iter()
        .filter(|s| s.negative_orientation)
        .count();
    Ok(MsReport {
        saddles: tree.n() - 1,
        domains: tree.n(),
        saddle_orbits,
        negative_orientation_saddles,
        has_loop,
    })
}

impl EquippedColoredTree {
    /// Switches the color interpretation of the underlying tree.
    pub fn with_mode(self, mode: Mode) -> Result<Self, crate::tree::TreeError> {
        let (tree, perm) = self.into_parts();
        let tree = tree.with_mode(mode)?;
        Ok(validate_automorphism(tree, perm).expect("mode does not affect validity"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn star_quotient() {
        let q = build_quotient(&samples::star_rotation()).unwrap();
        assert_eq!(q.m(), 2);
        assert_eq!(q.weights(), &[1, 3]);
        assert_eq!(q.qedges(), &[(0, 1, 1)]);
        assert_eq!(q.loop_(), None);
    }

    #[test]
    fn identity_quotient_is_the_tree() {
        let et =
            validate_automorphism(samples::eight_vertex_tree(), VertexPermutation::identity(8))
                .unwrap();
        let b = build_quotient_mapped(&et, false).unwrap();
        assert!(b.quotient.weights().iter().all(|&w| w == 1));
        // order: rank 2 (A, B), rank 1 (C, D, E), rank 0 (F, G, H)
        assert_eq!(b.vertex_to_q, (0..8).collect::<Vec<_>>());
        let unit = QuotientTree::new(
            8,
            3,
            vec![1; 8],
            samples::eight_vertex_quotient().qedges().to_vec(),
            None,
        )
        .unwrap();
        assert!(b.quotient.matches_under(&unit, &(0..8).collect::<Vec<_>>()));
    }

    #[test]
    fn swapped_quotient_needs_dynamics_mode() {
        let et = samples::path4_swap();
        assert_eq!(
            build_quotient(&et).unwrap_err(),
            QuotientError::CentralOrbitNotFixed
        );
        let q = build_dynamics_quotient(&et);
        assert_eq!(q.m(), 2);
        assert_eq!(q.weights(), &[2, 2]);
        assert_eq!(q.qedges(), &[(0, 1, 1)]);
        assert_eq!(
            q.loop_(),
            Some(QuotientLoop {
                vertex: 0,
                color: 2
            })
        );
    }

    #[test]
    fn dynamics_quotient_equals_plain_when_fixed() {
        let et = samples::star_rotation();
        assert_eq!(build_dynamics_quotient(&et), build_quotient(&et).unwrap());
    }

    #[test]
    fn expand_two_vertex_quotient_gives_star() {
        let q = QuotientTree::new(2, 1, vec![1, 3], vec![(0, 1, 1)], None).unwrap();
        let et = expand_quotient(&q).unwrap();
        assert_eq!(et.n(), 4);
        assert_eq!(et.tree().degree(0), 3);
        assert_eq!(et.perm().image(), &[0, 2, 3, 1]);
    }

    #[test]
    fn expand_eight_vertex_quotient_round_trips() {
        let q = samples::eight_vertex_quotient();
        let exp = expand_quotient_mapped(&q).unwrap();
        assert_eq!(exp.equipped.n(), 14);
        let b = build_quotient_mapped(&exp.equipped, false).unwrap();
        assert_eq!(b.quotient.m(), 8);
        // quotient vertex i of the rebuilt quotient ↔ origin of any of its tree vertices
        let mut map = vec![0; 8];
        for x in 0..14 {
            map[b.vertex_to_q[x]] = exp.origin[x];
        }
        assert!(b.quotient.matches_under(&q, &map));
    }

    #[test]
    fn divisibility_is_enforced() {
        let q = QuotientTree::new(2, 1, vec![2, 3], vec![(0, 1, 1)], None).unwrap();
        assert_eq!(
            expand_quotient(&q).unwrap_err().kind(),
            "DivisibilityViolated"
        );
        let q = QuotientTree::new(3, 1, vec![1, 2, 3], vec![(0, 1, 1), (1, 2, 1)], None).unwrap();
        assert_eq!(
            expand_quotient(&q).unwrap_err(),
            QuotientError::DivisibilityViolated {
                parent: 1,
                child: 2,
                parent_weight: 2,
                child_weight: 3
            }
        );
        let q = QuotientTree::new(2, 1, vec![2, 4], vec![(0, 1, 1)], None).unwrap();
        assert_eq!(
            expand_quotient(&q).unwrap_err().kind(),
            "CentralWeightNotOne"
        );
        // two weight-1 vertices separated by a weight-2 vertex
        let q = QuotientTree::new(3, 1, vec![1, 2, 1], vec![(0, 1, 1), (1, 2, 1)], None).unwrap();
        assert_eq!(
            expand_quotient(&q).unwrap_err().kind(),
            "DivisibilityViolated"
        );
    }

    #[test]
    fn loop_quotient_is_not_expandable() {
        let q = build_dynamics_quotient(&samples::path4_swap());
        assert_eq!(expand_quotient(&q).unwrap_err(), QuotientError::LoopPresent);
        assert!(q.check_divisibility().is_ok());
    }

    #[test]
    fn quotient_validation() {
        assert_eq!(
            QuotientTree::new(0, 1, vec![], vec![], None).unwrap_err(),
            QuotientError::Empty
        );
        assert_eq!(
            QuotientTree::new(2, 1, vec![1, 0], vec![(0, 1, 1)], None).unwrap_err(),
            QuotientError::ZeroWeight { vertex: 1 }
        );
        assert_eq!(
            QuotientTree::new(2, 1, vec![1, 1], vec![(0, 1, 2)], None)
                .unwrap_err()
                .kind(),
            "ColorOutOfRange"
        );
        assert_eq!(
            QuotientTree::new(3, 1, vec![1, 1, 1], vec![(0, 1, 1)], None)
                .unwrap_err()
                .kind(),
            "NotATree"
        );
        let bad_loop = Some(QuotientLoop {
            vertex: 0,
            color: 1,
        });
        assert_eq!(
            QuotientTree::new(1, 1, vec![1], vec![], bad_loop).unwrap_err(),
            QuotientError::BadLoop {
                vertex: 0,
                weight: 1
            }
        );
    }

    #[test]
    fn three_saddle_report() {
        let r = ms_report(&samples::three_saddle_ms()).unwrap();
        assert_eq!(r.saddles, 3);
        assert_eq!(r.domains, 4);
        assert_eq!(r.saddle_orbits.len(), 3);
        assert_eq!(r.negative_orientation_saddles, 0);
        assert_eq!(r.saddle_orbits.iter().map(|s| s.period).sum::<usize>(), 3);
    }

    #[test]
    fn swapped_report_has_one_negative_saddle() {
        let et = samples::path4_swap().with_mode(Mode::MorseSmale).unwrap();
        let r = ms_report(&et).unwrap();
        assert!(r.has_loop);
        assert_eq!(r.negative_orientation_saddles, 1);
        let neg = r
            .saddle_orbits
            .iter()
            .find(|s| s.negative_orientation)
            .unwrap();
        assert_eq!((neg.tag, neg.period), ("u", 1));
        assert_eq!(r.saddles, 3);
        assert_eq!(r.saddle_orbits.iter().map(|s| s.period).sum::<usize>(), 3);
    }

    #[test]
    fn single_vertex_report() {
        let t = ColoredTree::new(1, 2, Mode::MorseSmale, vec![]).unwrap();
        let et = validate_automorphism(t, VertexPermutation::identity(1)).unwrap();
        let r = ms_report(&et).unwrap();
        assert_eq!((r.saddles, r.domains, r.saddle_orbits.len()), (0, 1, 0));
    }

    #[test]
    fn report_needs_ms_mode() {
        assert_eq!(
            ms_report(&samples::star_rotation()).unwrap_err().kind(),
            "WrongMode"
        );
    }
}
