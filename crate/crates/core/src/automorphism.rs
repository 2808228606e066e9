//! Color-preserving tree automorphisms: validation, orbits, edge periods,
//! the orbit-neighbour laws, and the reduction to the fixed-center case.

use std::collections::HashMap;

use thiserror::Error;

use crate::tree::{compute_ranks, Color, ColoredTree, Edge, RankInfo, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("permutation table has length {got}, expected {n}")]
    WrongLength { got: usize, n: usize },
    #[error("permutation is not a bijection: vertex {vertex} is hit twice or out of range")]
    NotBijective { vertex: usize },
    #[error("edge {edge} ({u}, {v}) maps to non-edge ({pu}, {pv})")]
    AdjacencyBroken {
        edge: usize,
        u: usize,
        v: usize,
        pu: usize,
        pv: usize,
    },
    #[error("edge {edge} ({u}, {v}) has color {color} but its image ({pu}, {pv}) has color {image_color}")]
    ColorBroken {
        edge: usize,
        u: usize,
        v: usize,
        pu: usize,
        pv: usize,
        color: Color,
        image_color: Color,
    },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl AutomorphismError {
    pub fn kind(&self) -> &'static str {
        match self {
            AutomorphismError::WrongLength { .. } | AutomorphismError::NotBijective { .. } => {
                "NotBijective"
            }
            AutomorphismError::AdjacencyBroken { .. } => "AdjacencyBroken",
            AutomorphismError::ColorBroken { .. } => "ColorBroken",
            AutomorphismError::NotAnEdge(..) => "NotAnEdge",
            AutomorphismError::Tree(e) => e.kind(),
        }
    }
}

/// A bijection of `0..n` given by its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self, AutomorphismError> {
        let n = image.len();
        let mut hit = vec![false; n];
        for &y in &image {
            if y >= n || hit[y] {
                return Err(AutomorphismError::NotBijective { vertex: y });
            }
            hit[y] = true;
        }
        Ok(VertexPermutation { image })
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        VertexPermutation { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        VertexPermutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    /// Conjugate by a relabeling: returns `rho ∘ self ∘ rho⁻¹`.
    pub fn conjugate_by(&self, rho: &Self) -> Self {
        let mut image = vec![0; self.len()];
        for x in 0..self.len() {
            image[rho.apply(x)] = rho.apply(self.apply(x));
        }
        VertexPermutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }
}

/// A colored tree with a color-preserving automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquippedColoredTree {
    tree: ColoredTree,
    perm: VertexPermutation,
}

impl EquippedColoredTree {
    pub fn tree(&self) -> &ColoredTree {
        &self.tree
    }

    pub fn perm(&self) -> &VertexPermutation {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn into_parts(self) -> (ColoredTree, VertexPermutation) {
        (self.tree, self.perm)
    }

    /// Applies the vertex relabeling `rho` to both the tree and the permutation.
    /// The result is isomorphic to `self` via `rho`.
    pub fn relabeled(&self, rho: &VertexPermutation) -> Self {
        let edges = self
            .tree
            .edges()
            .iter()
            .map(|e| Edge::new(rho.apply(e.u), rho.apply(e.v), e.color))
            .collect();
        let tree = ColoredTree::new(self.n(), self.tree.k(), self.tree.mode(), edges)
            .expect("relabeling preserves tree validity");
        EquippedColoredTree {
            tree,
            perm: self.perm.conjugate_by(rho),
        }
    }

    /// Same tree and permutation with the edge list reordered.
    pub fn with_edge_order(&self, order: &[usize]) -> Self {
        let edges = order.iter().map(|&i| self.tree.edges()[i]).collect();
        let tree = ColoredTree::new(self.n(), self.tree.k(), self.tree.mode(), edges)
            .expect("edge reordering preserves tree validity");
        EquippedColoredTree {
            tree,
            perm: self.perm.clone(),
        }
    }
}

/// Checks that `perm` preserves adjacency and colors of `tree`.
pub fn validate_automorphism(
    tree: ColoredTree,
    perm: VertexPermutation,
) -> Result<EquippedColoredTree, AutomorphismError> {
    if perm.len() != tree.n() {
        return Err(AutomorphismError::WrongLength {
            got: perm.len(),
            n: tree.n(),
        });
    }
    // P is a bijection on vertices and both edge sets have n-1 elements, so
    // mapping every edge onto an edge already gives the "iff".
    for (i, e) in tree.edges().iter().enumerate() {
        let (pu, pv) = (perm.apply(e.u), perm.apply(e.v));
        match tree.edge_color(pu, pv) {
            None => {
                return Err(AutomorphismError::AdjacencyBroken {
                    edge: i,
                    u: e.u,
                    v: e.v,
                    pu,
                    pv,
                })
            }
            Some(c) if c != e.color => {
                return Err(AutomorphismError::ColorBroken {
                    edge: i,
                    u: e.u,
                    v: e.v,
                    pu,
                    pv,
                    color: e.color,
                    image_color: c,
                })
            }
            Some(_) => {}
        }
    }
    Ok(EquippedColoredTree { tree, perm })
}

/// Cycles of the permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Each orbit starts at its least vertex and lists vertices in the order
    /// produced by repeatedly applying the permutation.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    /// Index of each vertex inside its orbit.
    pub position: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl OrbitDecomposition {
    pub fn size_of(&self, x: usize) -> usize {
        self.sizes[self.orbit_of[x]]
    }

    /// Multiset of orbit sizes, sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t = self.sizes.clone();
        t.sort_unstable();
        t
    }
}

pub fn perm_orbits(perm: &VertexPermutation) -> OrbitDecomposition {
    let n = perm.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut position = vec![0; n];
    let mut orbits = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut cycle = Vec::new();
        let mut x = start;
        loop {
            orbit_of[x] = id;
            position[x] = cycle.len();
            cycle.push(x);
            x = perm.apply(x);
            if x == start {
                break;
            }
        }
        sizes.push(cycle.len());
        orbits.push(cycle);
    }
    OrbitDecomposition {
        orbits,
        orbit_of,
        position,
        sizes,
    }
}

pub fn compute_orbits(et: &EquippedColoredTree) -> OrbitDecomposition {
    perm_orbits(&et.perm)
}

/// Size of the orbit of the edge `{a, b}` under the induced edge map.
///
/// A non-central edge has the period of its lower-rank endpoint. The central
/// edge is always mapped onto itself.
pub fn edge_period(
    et: &EquippedColoredTree,
    ranks: &RankInfo,
    orbits: &OrbitDecomposition,
    a: usize,
    b: usize,
) -> Result<usize, AutomorphismError> {
    if et.tree.edge_between(a, b).is_none() {
        return Err(AutomorphismError::NotAnEdge(a, b));
    }
    if ranks.is_central_edge(a, b) {
        return Ok(1);
    }
    let lower = if ranks.rank[a] < ranks.rank[b] { a } else { b };
    Ok(orbits.size_of(lower))
}

/// A violation of the orbit-neighbour laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawViolation {
    /// An orbit mixes vertices of different rank.
    MixedRank { orbit: usize },
    /// Inner orbit size is not a multiple of the outer orbit size.
    Divisibility {
        outer: usize,
        inner: usize,
        p: usize,
        q: usize,
    },
    /// Neighbours of the outer orbit inside the inner orbit do not follow the
    /// `w_i, w_{i+p}, ...` pattern.
    Wiring { edge: usize },
    /// Two edges between the same pair of orbits carry different colors.
    Color {
        edge: usize,
        expected: Color,
        got: Color,
    },
    /// The inner orbit is not fully attached to the outer orbit.
    EdgeCount {
        outer: usize,
        inner: usize,
        edges: usize,
        q: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    /// Number of distinct (outer, inner) orbit pairs examined.
    pub pairs_checked: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct PairState {
    offset: usize,
    color: Color,
    edges: usize,
}

/// Verifies the orbit-neighbour laws for every pair of adjacent orbits of
/// different rank: divisibility of orbit sizes, the stride-`p` wiring pattern,
/// and color uniformity.
pub fn check_structure_laws(
    et: &EquippedColoredTree,
    ranks: &RankInfo,
    orbits: &OrbitDecomposition,
) -> LawReport {
    let mut report = LawReport::default();
    for (id, orbit) in orbits.orbits.iter().enumerate() {
        let r = ranks.rank[orbit[0]];
        if orbit.iter().any(|&x| ranks.rank[x] != r) {
            report
                .violations
                .push(LawViolation::MixedRank { orbit: id });
        }
    }

    let mut pairs: HashMap<(usize, usize), PairState> = HashMap::new();
    let mut bad_divisibility: Vec<(usize, usize)> = Vec::new();
    for (i, e) in et.tree.edges().iter().enumerate() {
        if ranks.rank[e.u] == ranks.rank[e.v] {
            // only the central edge joins equal ranks
            continue;
        }
        let (v, w) = if ranks.rank[e.u] > ranks.rank[e.v] {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        let (o1, o2) = (orbits.orbit_of[v], orbits.orbit_of[w]);
        let (p, q) = (orbits.sizes[o1], orbits.sizes[o2]);
        let offset = (orbits.position[w] + p - orbits.position[v] % p) % p;
        match pairs.get_mut(&(o1, o2)) {
            None => {
                if q % p != 0 {
                    bad_divisibility.push((o1, o2));
                    report.violations.push(LawViolation::Divisibility {
                        outer: o1,
                        inner: o2,
                        p,
                        q,
                    });
                }
                pairs.insert(
                    (o1, o2),
                    PairState {
                        offset,
                        color: e.color,
                        edges: 1,
                    },
                );
            }
            Some(state) => {
                state.edges += 1;
                if state.color != e.color {
                    report.violations.push(LawViolation::Color {
                        edge: i,
                        expected: state.color,
                        got: e.color,
                    });
                }
                if state.offset != offset && !bad_divisibility.contains(&(o1, o2)) {
                    report.violations.push(LawViolation::Wiring { edge: i });
                }
            }
        }
    }
    let mut keys: Vec<_> = pairs.keys().copied().collect();
    keys.sort_unstable();
    for (o1, o2) in keys {
        let q = orbits.sizes[o2];
        let edges = pairs[&(o1, o2)].edges;
        if edges != q {
            report.violations.push(LawViolation::EdgeCount {
                outer: o1,
                inner: o2,
                edges,
                q,
            });
        }
    }
    report.pairs_checked = pairs.len();
    report
}

/// Half of a bicentral tree whose automorphism exchanges the two centers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfTree {
    /// The component of the smaller center after deleting the central edge,
    /// relabeled to `0..h` in increasing original id, equipped with `P²`.
    pub tree: EquippedColoredTree,
    /// Root: the image of the smaller center.
    pub root: usize,
    pub central_color: Color,
    /// Original vertex id of each half vertex.
    pub original: Vec<usize>,
}

impl HalfTree {
    /// Two copies of the half joined root-to-root by an edge of the central
    /// color, with the half permutation acting copy-wise. The result is
    /// bicentral with both centers fixed.
    pub fn doubled(&self) -> EquippedColoredTree {
        double_at(&self.tree, self.root, self.central_color)
    }
}

/// Which of the three center configurations an equipped tree falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    CentralDoubled,
    Fixed,
    Swapped,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::CentralDoubled => "CENTRAL-DOUBLED",
            CaseTag::Fixed => "FIXED",
            CaseTag::Swapped => "SWAPPED",
        }
    }

    /// Number written into canonical code headers.
    pub(crate) fn code(self) -> usize {
        match self {
            CaseTag::CentralDoubled => 1,
            CaseTag::Fixed => 2,
            CaseTag::Swapped => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized<'a> {
    CentralDoubled(EquippedColoredTree),
    Fixed(&'a EquippedColoredTree),
    Swapped(HalfTree),
}

impl Normalized<'_> {
    pub fn tag(&self) -> CaseTag {
        match self {
            Normalized::CentralDoubled(_) => CaseTag::CentralDoubled,
            Normalized::Fixed(_) => CaseTag::Fixed,
            Normalized::Swapped(_) => CaseTag::Swapped,
        }
    }
}

fn double_at(et: &EquippedColoredTree, root: usize, color: Color) -> EquippedColoredTree {
    let n = et.n();
    let tree = et.tree();
    let mut edges = Vec::with_capacity(2 * n - 1);
    edges.extend_from_slice(tree.edges());
    edges.extend(
        tree.edges()
            .iter()
            .map(|e| Edge::new(e.u + n, e.v + n, e.color)),
    );
    edges.push(Edge::new(root, root + n, color));
    let k = tree.k().max(color);
    let doubled = ColoredTree::new(2 * n, k, tree.mode(), edges).expect("doubling keeps a tree");
    let mut image = Vec::with_capacity(2 * n);
    image.extend_from_slice(et.perm().image());
    image.extend(et.perm().image().iter().map(|&y| y + n));
    EquippedColoredTree {
        tree: doubled,
        perm: VertexPermutation { image },
    }
}

/// Reduces an equipped tree to a bicentral one with fixed centers, or to the
/// half-tree form when the automorphism exchanges the centers.
pub fn normalize(et: &EquippedColoredTree) -> Normalized<'_> {
    let ranks = compute_ranks(et.tree());
    normalize_with(et, &ranks)
}

pub fn normalize_with<'a>(et: &'a EquippedColoredTree, ranks: &RankInfo) -> Normalized<'a> {
    match ranks.central_edge {
        None => Normalized::CentralDoubled(double_at(et, ranks.centers[0], 1)),
        Some((v1, v2)) => {
            if et.perm.apply(v1) == v1 {
                debug_assert_eq!(et.perm.apply(v2), v2);
                Normalized::Fixed(et)
            } else {
                Normalized::Swapped(half_tree(et, v1, v2))
            }
        }
    }
}

fn half_tree(et: &EquippedColoredTree, v1: usize, v2: usize) -> HalfTree {
    let tree = et.tree();
    let n = tree.n();
    let mut in_half = vec![false; n];
    in_half[v1] = true;
    let mut stack = vec![v1];
    while let Some(x) = stack.pop() {
        for &(y, _) in tree.neighbors(x) {
            if !in_half[y] && y != v2 {
                in_half[y] = true;
                stack.push(y);
            }
        }
    }
    let original: Vec<usize> = (0..n).filter(|&x| in_half[x]).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &x) in original.iter().enumerate() {
        new_id[x] = i;
    }
    let mut edges = Vec::with_capacity(original.len().saturating_sub(1));
    let mut central_color = 0;
    for e in tree.edges() {
        if in_half[e.u] && in_half[e.v] {
            edges.push(Edge::new(new_id[e.u], new_id[e.v], e.color));
        } else if (e.u == v1 && e.v == v2) || (e.u == v2 && e.v == v1) {
            central_color = e.color;
        }
    }
    let half = ColoredTree::new(original.len(), tree.k(), tree.mode(), edges)
        .expect("a component of a tree is a tree");
    let p = et.perm();
    let image = original
        .iter()
        .map(|&x| new_id[p.apply(p.apply(x))])
        .collect();
    let perm = VertexPermutation { image };
    HalfTree {
        tree: EquippedColoredTree { tree: half, perm },
        root: new_id[v1],
        central_color,
        original,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::tree::Mode;

    fn path3(c1: Color, c2: Color) -> ColoredTree {
        ColoredTree::from_triples(3, 2, Mode::Generic, &[(0, 1, c1), (1, 2, c2)]).unwrap()
    }

    #[test]
    fn reflection_of_symmetric_path() {
        let p = VertexPermutation::new(vec![2, 1, 0]).unwrap();
        assert!(validate_automorphism(path3(1, 1), p).is_ok());
    }

    #[test]
    fn color_mismatch_is_rejected() {
        let p = VertexPermutation::new(vec![2, 1, 0]).unwrap();
        let err = validate_automorphism(path3(1, 2), p).unwrap_err();
        match err {
            AutomorphismError::ColorBroken {
                edge,
                u,
                v,
                pu,
                pv,
                color,
                image_color,
            } => {
                assert_eq!(
                    (edge, u, v, pu, pv, color, image_color),
                    (0, 0, 1, 2, 1, 1, 2)
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_bijection_and_broken_adjacency() {
        assert_eq!(
            VertexPermutation::new(vec![0, 0, 1]).unwrap_err().kind(),
            "NotBijective"
        );
        // swapping a leaf with the middle of a path breaks adjacency
        let p = VertexPermutation::new(vec![1, 0, 2]).unwrap();
        let err = validate_automorphism(path3(1, 1), p).unwrap_err();
        assert_eq!(err.kind(), "AdjacencyBroken");
        let err = validate_automorphism(path3(1, 1), VertexPermutation::identity(2)).unwrap_err();
        assert_eq!(err, AutomorphismError::WrongLength { got: 2, n: 3 });
    }

    #[test]
    fn star_rotation_orbits() {
        let et = samples::star_rotation();
        let o = compute_orbits(&et);
        assert_eq!(o.orbits, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(o.sizes, vec![1, 3]);
        assert_eq!(o.position, vec![0, 0, 1, 2]);
    }

    #[test]
    fn identity_orbits_are_singletons() {
        let t = samples::eight_vertex_tree();
        let et = validate_automorphism(t, VertexPermutation::identity(8)).unwrap();
        let o = compute_orbits(&et);
        assert_eq!(o.orbits.len(), 8);
        assert!(o.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn path4_swap_orbits() {
        let et = samples::path4_swap();
        let o = compute_orbits(&et);
        assert_eq!(o.orbits, vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(o.sizes, vec![2, 2]);
    }

    #[test]
    fn edge_periods() {
        let et = samples::star_rotation();
        let r = compute_ranks(et.tree());
        let o = compute_orbits(&et);
        assert_eq!(edge_period(&et, &r, &o, 0, 1).unwrap(), 3);
        assert_eq!(
            edge_period(&et, &r, &o, 1, 2),
            Err(AutomorphismError::NotAnEdge(1, 2))
        );

        let et = samples::path4_swap();
        let r = compute_ranks(et.tree());
        let o = compute_orbits(&et);
        assert_eq!(edge_period(&et, &r, &o, 1, 2).unwrap(), 1);
        assert_eq!(edge_period(&et, &r, &o, 0, 1).unwrap(), 2);
    }

    #[test]
    fn laws_hold_on_samples() {
        for et in [samples::star_rotation(), samples::path4_swap()] {
            let r = compute_ranks(et.tree());
            let o = compute_orbits(&et);
            let rep = check_structure_laws(&et, &r, &o);
            assert!(rep.passed(), "{rep:?}");
        }
        let et = samples::star_rotation();
        let r = compute_ranks(et.tree());
        let o = compute_orbits(&et);
        assert_eq!(check_structure_laws(&et, &r, &o).pairs_checked, 1);
    }

    #[test]
    fn laws_catch_a_bad_orbit_decomposition() {
        // Feed the star an orbit structure that is not its automorphism's:
        // center in a 2-cycle with a leaf mixes ranks.
        let et = samples::star_rotation();
        let r = compute_ranks(et.tree());
        let fake = perm_orbits(&VertexPermutation::new(vec![1, 0, 3, 2]).unwrap());
        let rep = check_structure_laws(&et, &r, &fake);
        assert!(rep
            .violations
            .contains(&LawViolation::MixedRank { orbit: 0 }));
    }

    #[test]
    fn normalize_central_path() {
        let et = validate_automorphism(path3(1, 1), VertexPermutation::identity(3)).unwrap();
        match normalize(&et) {
            Normalized::CentralDoubled(d) => {
                assert_eq!(d.n(), 6);
                let r = compute_ranks(d.tree());
                assert_eq!(r.centers, vec![1, 4]);
                assert_eq!(d.tree().edge_color(1, 4), Some(1));
                assert_eq!(d.perm().apply(1), 1);
                assert_eq!(d.perm().apply(4), 4);
            }
            other => panic!("unexpected {:?}", other.tag()),
        }
    }

    #[test]
    fn normalize_fixed_path() {
        let t = ColoredTree::from_triples(4, 2, Mode::Generic, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)])
            .unwrap();
        let et = validate_automorphism(t, VertexPermutation::identity(4)).unwrap();
        match normalize(&et) {
            Normalized::Fixed(f) => assert_eq!(f, &et),
            other => panic!("unexpected {:?}", other.tag()),
        }
    }

    #[test]
    fn normalize_swapped_path() {
        let et = samples::path4_swap();
        match normalize(&et) {
            Normalized::Swapped(h) => {
                assert_eq!(h.original, vec![0, 1]);
                assert_eq!(h.root, 1);
                assert!(h.tree.perm().is_identity());
                assert_eq!(h.central_color, 2);
                let d = h.doubled();
                assert_eq!(d.n(), 4);
                assert_eq!(d.tree().edge_color(1, 3), Some(2));
            }
            other => panic!("unexpected {:?}", other.tag()),
        }
    }

    #[test]
    fn conjugate_by_relabeling() {
        let et = samples::star_rotation();
        let rho = VertexPermutation::new(vec![3, 0, 1, 2]).unwrap();
        let moved = et.relabeled(&rho);
        assert_eq!(moved.tree().degree(3), 3);
        // P' = rho P rho^-1: P'(rho(x)) = rho(P(x))
        for x in 0..4 {
            assert_eq!(
                moved.perm().apply(rho.apply(x)),
                rho.apply(et.perm().apply(x))
            );
        }
    }
}
