//! Deciding isomorphism of equipped trees.
//!
//! Three routes are provided and cross-checked in tests:
//!
//! * [`iso_decide`]: normalize, quotient, and compare canonical codes;
//! * [`iso_brute`]: exhaustive orbit-by-orbit backtracking, the ground truth
//!   for small inputs;
//! * [`iso_via_reduction`]: reduce quotients to simple graphs, recover them
//!   from the graphs alone, and compare canonical codes of the recovered
//!   quotients.
//!
//! Canonical codes are built bottom-up by height. All tuples of one height are
//! sorted and numbered before the next height is processed, so a tuple id
//! depends only on the isomorphism class of the subtree and never on input
//! order. The code is the list of distinct tuples per height plus the root
//! record, which determines the rooted quotient completely.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::automorphism::{normalize, perm_orbits, CaseTag, EquippedColoredTree, Normalized};
use crate::quotient::{build_quotient, QuotientTree};
use crate::reduction::{recover_quotient, reduce_to_graph, ReductionError};
use crate::tree::{strip_leaves, Color, Stripped, NONE};

/// Format version written as the first byte of every code.
pub const CODE_VERSION: u8 = 1;

/// Default vertex limit for [`iso_brute`].
pub const BRUTE_LIMIT: usize = 12;

const ROOT_VERTEX: u32 = 1;
const ROOT_EDGE: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("instance has {n} vertices, brute force is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Deterministic byte string; equal codes mean isomorphic inputs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(2 * self.0.len());
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = self.to_hex();
        if hex.len() > 64 {
            write!(f, "CanonicalCode({}…, {} bytes)", &hex[..64], self.0.len())
        } else {
            write!(f, "CanonicalCode({hex})")
        }
    }
}

/// Where the canonical encoding of a quotient is rooted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Root {
    /// The loop vertex if there is a loop, otherwise the center or the
    /// central edge of the quotient itself.
    Centers,
    Vertex(usize),
    /// Unordered pair joined by an edge of the quotient.
    Edge(usize, usize),
}

fn put(out: &mut Vec<u8>, x: usize) {
    let x = u32::try_from(x).expect("canonical code integers fit in 32 bits");
    out.extend_from_slice(&x.to_be_bytes());
}

/// A rooted forest (one or two roots) ready to be encoded: node weights,
/// colors of the edges to the parents, children in compressed form, and the
/// nodes grouped by height. Node indices are `u32` to keep the arrays small.
struct Rooted {
    weight: Vec<u32>,
    pcolor: Vec<Color>,
    child_start: Vec<u32>,
    children: Vec<u32>,
    level_start: Vec<u32>,
    by_level: Vec<u32>,
}

const NO_PARENT: u32 = u32::MAX;

impl Rooted {
    fn new(weight: Vec<u32>, parent: &[u32], pcolor: Vec<Color>, height: &[u32]) -> Rooted {
        let m = weight.len();
        let mut child_start = vec![0u32; m + 1];
        for &p in parent {
            if p != NO_PARENT {
                child_start[p as usize + 1] += 1;
            }
        }
        for i in 0..m {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut children = vec![0u32; child_start[m] as usize];
        for (x, &p) in parent.iter().enumerate() {
            if p != NO_PARENT {
                let slot = &mut fill[p as usize];
                children[*slot as usize] = x as u32;
                *slot += 1;
            }
        }
        let levels = height.iter().copied().max().map_or(0, |h| h as usize + 1);
        let mut level_start = vec![0u32; levels + 1];
        for &h in height {
            level_start[h as usize + 1] += 1;
        }
        for i in 0..levels {
            level_start[i + 1] += level_start[i];
        }
        let mut fill = level_start.clone();
        let mut by_level = vec![0u32; m];
        for (x, &h) in height.iter().enumerate() {
            let slot = &mut fill[h as usize];
            by_level[*slot as usize] = x as u32;
            *slot += 1;
        }
        Rooted {
            weight,
            pcolor,
            child_start,
            children,
            level_start,
            by_level,
        }
    }

    /// Writes the version, header and per-height tuple lists; returns the
    /// bytes and the canonical id of every node.
    fn emit(&self, header: &[usize]) -> (Vec<u8>, Vec<u32>) {
        let m = self.weight.len();
        let mut out = Vec::with_capacity(8 * m + 32);
        out.push(CODE_VERSION);
        put(&mut out, header.len());
        for &h in header {
            put(&mut out, h);
        }
        let levels = self.level_start.len() - 1;
        put(&mut out, levels);

        // (color of the edge to the parent, canonical id) per node
        let mut label: Vec<(Color, u32)> = self.pcolor.iter().map(|&c| (c, 0)).collect();
        let mut next_id = 0u32;
        let mut arena: Vec<u32> = Vec::new();
        let mut spans: Vec<(u32, u32, u32)> = Vec::new(); // (start, len, node)
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for h in 0..levels {
            arena.clear();
            spans.clear();
            let level = self.level_start[h] as usize..self.level_start[h + 1] as usize;
            for &v in &self.by_level[level] {
                let v = v as usize;
                let kids = self.child_start[v] as usize..self.child_start[v + 1] as usize;
                pairs.clear();
                pairs.extend(self.children[kids].iter().map(|&c| label[c as usize]));
                pairs.sort_unstable();
                let start = arena.len();
                arena.push(self.weight[v]);
                for &(c, i) in &pairs {
                    arena.push(c);
                    arena.push(i);
                }
                spans.push((start as u32, (arena.len() - start) as u32, v as u32));
            }
            let slice = |s: u32, l: u32| &arena[s as usize..(s + l) as usize];
            spans.sort_unstable_by(|a, b| slice(a.0, a.1).cmp(slice(b.0, b.1)));
            let distinct_at = out.len();
            put(&mut out, 0);
            let mut distinct = 0usize;
            let mut prev: Option<&[u32]> = None;
            for &(s, l, v) in &spans {
                let tuple = slice(s, l);
                if prev != Some(tuple) {
                    put(&mut out, l as usize);
                    for &x in tuple {
                        out.extend_from_slice(&x.to_be_bytes());
                    }
                    distinct += 1;
                    next_id += 1;
                    prev = Some(tuple);
                }
                label[v as usize].1 = next_id - 1;
            }
            let count = u32::try_from(distinct).expect("fits").to_be_bytes();
            out[distinct_at..distinct_at + 4].copy_from_slice(&count);
        }
        (out, label.into_iter().map(|l| l.1).collect())
    }
}

fn small(x: usize) -> u32 {
    u32::try_from(x).expect("quotient sizes fit in 32 bits")
}

fn put_vertex_root(out: &mut Vec<u8>, id: usize, loop_color: Color) {
    put(out, ROOT_VERTEX as usize);
    put(out, id);
    put(out, loop_color as usize);
}

fn put_edge_root(out: &mut Vec<u8>, color: Color, a: usize, b: usize) {
    put(out, ROOT_EDGE as usize);
    put(out, color as usize);
    put(out, a.min(b));
    put(out, a.max(b));
}

/// Canonical code of a quotient under the given root policy.
pub fn canon_quotient(q: &QuotientTree, root: Root) -> CanonicalCode {
    let root = match root {
        Root::Centers => match q.loop_() {
            Some(l) => Root::Vertex(l.vertex),
            None => match q.centers()[..] {
                [c] => Root::Vertex(c),
                [a, b] => Root::Edge(a, b),
                _ => unreachable!("a tree has one or two centers"),
            },
        },
        other => other,
    };
    let m = q.m();
    let adj = q.adjacency();

    // Root the quotient; for an edge root both ends start the search and the
    // edge between them is never crossed.
    let mut parent = vec![NONE; m];
    let mut pcolor = vec![0; m];
    let mut seen = vec![false; m];
    let mut order = Vec::with_capacity(m);
    let mut queue = VecDeque::new();
    let starts: &[usize] = match &root {
        Root::Vertex(r) => std::slice::from_ref(r),
        Root::Edge(a, b) => &[*a, *b],
        Root::Centers => unreachable!(),
    };
    for &s in starts {
        seen[s] = true;
        queue.push_back(s);
    }
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
    debug_assert_eq!(order.len(), m);
    let mut height = vec![0usize; m];
    for &x in order.iter().rev() {
        let p = parent[x];
        if p != NONE && height[p] < height[x] + 1 {
            height[p] = height[x] + 1;
        }
    }

    let weight = q.weights().iter().map(|&w| small(w)).collect();
    let parent: Vec<u32> = parent
        .iter()
        .map(|&p| if p == NONE { NO_PARENT } else { small(p) })
        .collect();
    let height: Vec<u32> = height.into_iter().map(small).collect();
    let rooted = Rooted::new(weight, &parent, pcolor, &height);
    let (mut out, id) = rooted.emit(&[]);
    match root {
        Root::Vertex(r) => {
            put_vertex_root(&mut out, id[r] as usize, q.loop_().map_or(0, |l| l.color))
        }
        Root::Edge(a, b) => {
            let color = adj[a]
                .iter()
                .find(|&&(y, _)| y == b)
                .map(|&(_, c)| c)
                .expect("edge root must be a quotient edge");
            put_edge_root(&mut out, color, id[a] as usize, id[b] as usize);
        }
        Root::Centers => unreachable!(),
    }
    CanonicalCode(out)
}

/// How the automorphism acts on the center: fixes a single center, fixes
/// both centers, or exchanges them across an edge of the given color.
fn center_action(et: &EquippedColoredTree, ranks: &Stripped) -> (CaseTag, Color) {
    match ranks.central_edge() {
        None => (CaseTag::CentralDoubled, 0),
        Some((a, _)) if et.perm().apply(a) == a => (CaseTag::Fixed, 0),
        Some((a, b)) => (
            CaseTag::Swapped,
            et.tree().edge_color(a, b).expect("central edge exists"),
        ),
    }
}

const UNSEEN: u32 = u32::MAX;

/// Cycles of `next` (given as an image array) on the vertices accepted by
/// `keep`: the least vertex and size of every cycle, and the cycle index of
/// every kept vertex. The image and the cycle index share one cell so that
/// each step of a walk touches a single cache line.
fn cycles(
    mut cell: Vec<(u32, u32)>,
    keep: impl Fn(usize) -> bool,
) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let mut reps = Vec::new();
    let mut weight = Vec::new();
    for x in 0..cell.len() {
        if cell[x].1 != UNSEEN || !keep(x) {
            continue;
        }
        let id = reps.len() as u32;
        let mut size = 0u32;
        let mut y = x;
        loop {
            let c = &mut cell[y];
            c.1 = id;
            size += 1;
            y = c.0 as usize;
            if y == x {
                break;
            }
        }
        reps.push(x as u32);
        weight.push(size);
    }
    (reps, weight, cell.into_iter().map(|c| c.1).collect())
}

/// Quotient of the tree (or of the half tree in `scope`) by the permutation
/// (or its square), rooted at the center. Tree ranks are heights from the
/// center, so they give the levels directly.
fn orbit_rooted(
    et: &EquippedColoredTree,
    ranks: &Stripped,
    squared: bool,
    scope: Option<&[bool]>,
) -> (Rooted, Vec<u32>) {
    let image = et.perm().image();
    let next = if squared {
        image.iter().map(|&y| (image[y] as u32, UNSEEN)).collect()
    } else {
        image.iter().map(|&y| (y as u32, UNSEEN)).collect()
    };
    let (reps, weight, orbit_of) = cycles(next, |x| scope.is_none_or(|s| s[x]));
    let m = reps.len();
    let mut parent = vec![NO_PARENT; m];
    let mut pcolor = vec![0; m];
    let mut height = vec![0; m];
    for (id, &r) in reps.iter().enumerate() {
        let s = ranks.st[r as usize];
        height[id] = s.rank;
        if s.rank != ranks.top {
            parent[id] = orbit_of[s.nbrs as usize];
            pcolor[id] = s.colors;
        }
    }
    (Rooted::new(weight, &parent, pcolor, &height), orbit_of)
}

/// Canonical code of an equipped tree. The header records how the
/// automorphism acts on the center and the vertex count; the body is the code
/// of the quotient rooted at the center, or, when the centers are exchanged,
/// of the half tree under the squared permutation rooted at its center.
pub fn equipped_code(et: &EquippedColoredTree) -> CanonicalCode {
    equipped_code_with(et, &strip_leaves(et.tree()))
}

fn equipped_code_with(et: &EquippedColoredTree, ranks: &Stripped) -> CanonicalCode {
    let n = et.n();
    let (tag, color) = center_action(et, ranks);
    let header = [tag.code(), color as usize, n];
    match (tag, ranks.central_edge()) {
        (CaseTag::CentralDoubled, _) => {
            let (rooted, orbit_of) = orbit_rooted(et, ranks, false, None);
            let (mut out, id) = rooted.emit(&header);
            put_vertex_root(
                &mut out,
                id[orbit_of[ranks.centers[0]] as usize] as usize,
                0,
            );
            CanonicalCode(out)
        }
        (CaseTag::Fixed, Some((a, b))) => {
            let (rooted, orbit_of) = orbit_rooted(et, ranks, false, None);
            let (mut out, id) = rooted.emit(&header);
            let c = et.tree().edge_color(a, b).expect("central edge exists");
            put_edge_root(
                &mut out,
                c,
                id[orbit_of[a] as usize] as usize,
                id[orbit_of[b] as usize] as usize,
            );
            CanonicalCode(out)
        }
        (CaseTag::Swapped, Some((a, _))) => {
            // the half containing `a`: the center `a` and everything that
            // hangs below it
            let mut in_half = vec![false; n];
            in_half[a] = true;
            for x in ranks.top_down() {
                in_half[x] = in_half[ranks.st[x].nbrs as usize];
            }
            let (rooted, orbit_of) = orbit_rooted(et, ranks, true, Some(&in_half));
            let (mut out, id) = rooted.emit(&header);
            put_vertex_root(&mut out, id[orbit_of[a] as usize] as usize, 0);
            CanonicalCode(out)
        }
        _ => unreachable!("bicentral cases carry a central edge"),
    }
}

/// Decides whether two equipped trees are isomorphic.
pub fn iso_decide(et1: &EquippedColoredTree, et2: &EquippedColoredTree) -> bool {
    if et1.n() != et2.n() {
        return false;
    }
    let (c1, c2) = (et1.tree().color_counts(), et2.tree().color_counts());
    let k = c1.len().max(c2.len());
    if (1..k).any(|c| c1.get(c).copied().unwrap_or(0) != c2.get(c).copied().unwrap_or(0)) {
        return false;
    }
    let (r1, r2) = (strip_leaves(et1.tree()), strip_leaves(et2.tree()));
    if center_action(et1, &r1) != center_action(et2, &r2) {
        return false;
    }
    equipped_code_with(et1, &r1) == equipped_code_with(et2, &r2)
}

/// A conjugating, color-preserving isomorphism `ξ` with `ξ P₁ = P₂ ξ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub mapping: Vec<usize>,
}

/// Checks a candidate witness directly against the definition.
pub fn verify_witness(
    et1: &EquippedColoredTree,
    et2: &EquippedColoredTree,
    w: &IsoWitness,
) -> bool {
    let n = et1.n();
    if et2.n() != n || w.mapping.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in &w.mapping {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    let xi = |x: usize| w.mapping[x];
    let edges_ok = et1
        .tree()
        .edges()
        .iter()
        .all(|e| et2.tree().edge_color(xi(e.u), xi(e.v)) == Some(e.color));
    let conj_ok = (0..n).all(|x| xi(et1.perm().apply(x)) == et2.perm().apply(xi(x)));
    edges_ok && conj_ok
}

/// Exhaustive search for a conjugating isomorphism. Whole orbits are mapped at
/// once: choosing `ξ(x) = y` forces `ξ(P₁ⁱ x) = P₂ⁱ y`.
pub fn iso_brute(
    et1: &EquippedColoredTree,
    et2: &EquippedColoredTree,
    limit: usize,
) -> Result<Option<IsoWitness>, IsoError> {
    let n = et1.n();
    if n > limit || et2.n() > limit {
        return Err(IsoError::TooLarge {
            n: n.max(et2.n()),
            limit,
        });
    }
    if et2.n() != n {
        return Ok(None);
    }
    let o1 = perm_orbits(et1.perm());
    let o2 = perm_orbits(et2.perm());

    // Visit T1 in BFS order so that most choices are constrained by an
    // already mapped neighbour.
    let mut bfs = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        bfs.push(x);
        for &(y, _) in et1.tree().neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }

    let mut search = Brute {
        et1,
        et2,
        size1: (0..n).map(|x| o1.size_of(x)).collect(),
        size2: (0..n).map(|x| o2.size_of(x)).collect(),
        map: vec![NONE; n],
        used: vec![false; n],
        bfs,
    };
    Ok(if search.extend(0) {
        Some(IsoWitness {
            mapping: search.map,
        })
    } else {
        None
    })
}

struct Brute<'a> {
    et1: &'a EquippedColoredTree,
    et2: &'a EquippedColoredTree,
    size1: Vec<usize>,
    size2: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    bfs: Vec<usize>,
}

impl Brute<'_> {
    fn extend(&mut self, mut cursor: usize) -> bool {
        while cursor < self.bfs.len() && self.map[self.bfs[cursor]] != NONE {
            cursor += 1;
        }
        if cursor == self.bfs.len() {
            return true;
        }
        let x = self.bfs[cursor];
        let (t1, t2) = (self.et1.tree(), self.et2.tree());
        for y in 0..t2.n() {
            if self.used[y] || self.size2[y] != self.size1[x] || t2.degree(y) != t1.degree(x) {
                continue;
            }
            let mut assigned = Vec::with_capacity(self.size1[x]);
            let (mut a, mut b) = (x, y);
            for _ in 0..self.size1[x] {
                self.map[a] = b;
                self.used[b] = true;
                assigned.push(a);
                a = self.et1.perm().apply(a);
                b = self.et2.perm().apply(b);
            }
            let consistent = assigned.iter().all(|&a| {
                t1.neighbors(a).iter().all(|&(z, ei)| {
                    let mz = self.map[z];
                    mz == NONE || t2.edge_color(self.map[a], mz) == Some(t1.edges()[ei].color)
                })
            });
            if consistent && self.extend(cursor + 1) {
                return true;
            }
            for &a in &assigned {
                self.used[self.map[a]] = false;
                self.map[a] = NONE;
            }
        }
        false
    }
}

/// Compares two loop-free quotients through their reduction graphs: each is
/// reduced, recovered from the bare graph, and canonically encoded.
pub fn iso_via_reduction(q1: &QuotientTree, q2: &QuotientTree) -> Result<bool, ReductionError> {
    let g1 = reduce_to_graph(q1)?.graph;
    let g2 = reduce_to_graph(q2)?.graph;
    if g1.nv != g2.nv || g1.edges.len() != g2.edges.len() {
        return Ok(false);
    }
    let r1 = recover_quotient(&g1)?;
    let r2 = recover_quotient(&g2)?;
    Ok(canon_quotient(&r1, Root::Centers) == canon_quotient(&r2, Root::Centers))
}

/// Full decision through the reduction graphs: both inputs are first brought
/// to bicentral form with fixed centers (doubling a central tree, or doubling
/// the half tree of a center-exchanging one), then compared with
/// [`iso_via_reduction`].
pub fn iso_decide_via_reduction(
    et1: &EquippedColoredTree,
    et2: &EquippedColoredTree,
) -> Result<bool, ReductionError> {
    if et1.n() != et2.n() {
        return Ok(false);
    }
    let (n1, n2) = (normalize(et1), normalize(et2));
    if n1.tag() != n2.tag() {
        return Ok(false);
    }
    let q1 = bicentral_quotient(&n1);
    let q2 = bicentral_quotient(&n2);
    iso_via_reduction(&q1, &q2)
}

fn bicentral_quotient(n: &Normalized<'_>) -> QuotientTree {
    let q = match n {
        Normalized::CentralDoubled(d) => build_quotient(d),
        Normalized::Fixed(f) => build_quotient(f),
        Normalized::Swapped(h) => build_quotient(&h.doubled()),
    };
    q.expect("normalized trees have fixed centers")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{validate_automorphism, VertexPermutation};
    use crate::quotient::expand_quotient;
    use crate::samples;
    use crate::tree::{ColoredTree, Mode};

    #[test]
    fn relabeled_eight_vertex_quotients_share_a_code() {
        let q = samples::eight_vertex_quotient();
        let map = [5, 3, 7, 0, 1, 6, 2, 4];
        assert_eq!(
            canon_quotient(&q, Root::Centers),
            canon_quotient(&q.relabeled(&map), Root::Centers)
        );
    }

    #[test]
    fn orientation_free_two_vertex_quotient() {
        let a = QuotientTree::new(2, 1, vec![1, 3], vec![(0, 1, 1)], None).unwrap();
        let b = QuotientTree::new(2, 1, vec![3, 1], vec![(1, 0, 1)], None).unwrap();
        let c = QuotientTree::new(2, 1, vec![1, 2], vec![(0, 1, 1)], None).unwrap();
        assert_eq!(
            canon_quotient(&a, Root::Centers),
            canon_quotient(&b, Root::Centers)
        );
        assert_ne!(
            canon_quotient(&a, Root::Centers),
            canon_quotient(&c, Root::Centers)
        );
        assert_eq!(
            canon_quotient(&a, Root::Centers).as_bytes()[0],
            CODE_VERSION
        );
    }

    #[test]
    fn conjugated_relabeling_is_isomorphic() {
        let et = expand_quotient(&samples::eight_vertex_quotient()).unwrap();
        let rho =
            VertexPermutation::new(vec![13, 0, 12, 1, 11, 2, 10, 3, 9, 4, 8, 5, 7, 6]).unwrap();
        let other = et.relabeled(&rho);
        assert!(iso_decide(&et, &other));
        assert_eq!(equipped_code(&et), equipped_code(&other));
    }

    #[test]
    fn rotation_versus_identity() {
        let rot = samples::star_rotation();
        let id = validate_automorphism(rot.tree().clone(), VertexPermutation::identity(4)).unwrap();
        assert!(!iso_decide(&rot, &id));
        assert_eq!(iso_brute(&rot, &id, BRUTE_LIMIT).unwrap(), None);
    }

    #[test]
    fn recolored_sample_expansion_is_not_isomorphic() {
        let et = expand_quotient(&samples::eight_vertex_quotient()).unwrap();
        // recolor one blue edge red; with the identity permutation both are valid
        let mut edges = et.tree().edges().to_vec();
        let i = edges.iter().position(|e| e.color == samples::BLUE).unwrap();
        edges[i].color = samples::RED;
        let t2 = ColoredTree::new(14, 3, Mode::Generic, edges).unwrap();
        let a = validate_automorphism(et.tree().clone(), VertexPermutation::identity(14)).unwrap();
        let b = validate_automorphism(t2, VertexPermutation::identity(14)).unwrap();
        assert!(!iso_decide(&a, &b));
        assert_eq!(iso_brute(&a, &b, 14).unwrap(), None);
    }

    #[test]
    fn brute_force_basics() {
        let et = samples::eight_vertex_quotient();
        let et = expand_quotient(&et).unwrap();
        let w = iso_brute(&et, &et, 14).unwrap().unwrap();
        assert!(verify_witness(&et, &et, &w));
        assert_eq!(
            iso_brute(&et, &et, 12),
            Err(IsoError::TooLarge { n: 14, limit: 12 })
        );

        let t = ColoredTree::from_triples(3, 1, Mode::Generic, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let id = validate_automorphism(t.clone(), VertexPermutation::identity(3)).unwrap();
        let refl =
            validate_automorphism(t, VertexPermutation::new(vec![2, 1, 0]).unwrap()).unwrap();
        assert_eq!(iso_brute(&id, &refl, BRUTE_LIMIT).unwrap(), None);
        assert!(!iso_decide(&id, &refl));
        let w = iso_brute(&id, &id, BRUTE_LIMIT).unwrap().unwrap();
        assert_eq!(w.mapping, vec![0, 1, 2]);
    }

    #[test]
    fn swapped_cases() {
        let a = samples::path4_swap();
        let rho = VertexPermutation::new(vec![2, 0, 3, 1]).unwrap();
        let b = a.relabeled(&rho);
        assert!(iso_decide(&a, &b));
        assert!(iso_brute(&a, &b, BRUTE_LIMIT).unwrap().is_some());
        // same path, central color changed
        let t = ColoredTree::from_triples(4, 2, Mode::Generic, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)])
            .unwrap();
        let c = validate_automorphism(t.clone(), VertexPermutation::new(vec![3, 2, 1, 0]).unwrap())
            .unwrap();
        assert!(!iso_decide(&a, &c));
        // fixed versus swapped
        let d = validate_automorphism(t, VertexPermutation::identity(4)).unwrap();
        assert!(!iso_decide(&c, &d));
        assert_eq!(iso_brute(&c, &d, BRUTE_LIMIT).unwrap(), None);
        assert!(!iso_decide_via_reduction(&c, &d).unwrap());
        assert!(iso_decide_via_reduction(&a, &b).unwrap());
    }

    #[test]
    fn reduction_route() {
        let q = samples::eight_vertex_quotient();
        assert!(iso_via_reduction(&q, &q).unwrap());
        let mut w = q.weights().to_vec();
        w[5] = 3; // F: 4 -> 3; the reduction compares shapes, divisibility is irrelevant
        let q2 = QuotientTree::new(8, 3, w, q.qedges().to_vec(), None).unwrap();
        assert!(!iso_via_reduction(&q, &q2).unwrap());
    }

    #[test]
    fn single_vertex_and_edge() {
        let one = validate_automorphism(
            ColoredTree::new(1, 1, Mode::Generic, vec![]).unwrap(),
            VertexPermutation::identity(1),
        )
        .unwrap();
        assert!(iso_decide(&one, &one));
        let t = ColoredTree::from_triples(2, 1, Mode::Generic, &[(0, 1, 1)]).unwrap();
        let fixed = validate_automorphism(t.clone(), VertexPermutation::identity(2)).unwrap();
        let swap = validate_automorphism(t, VertexPermutation::new(vec![1, 0]).unwrap()).unwrap();
        assert!(!iso_decide(&fixed, &swap));
        assert!(iso_decide(&swap, &swap));
        assert!(iso_decide_via_reduction(&swap, &swap).unwrap());
    }
}
