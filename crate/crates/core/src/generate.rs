//! Seeded random instances and isomorphic / non-isomorphic pair construction.
//!
//! Instances are grown as random quotients (weights are multiples of the
//! parent weight, the root has weight 1) and then expanded, so every generated
//! equipped tree satisfies the orbit laws by construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::automorphism::{
    normalize, validate_automorphism, EquippedColoredTree, Normalized, VertexPermutation,
};
use crate::isomorphism::{iso_brute, BRUTE_LIMIT};
use crate::quotient::{build_quotient_mapped, expand_quotient_mapped, QuotientTree};
use crate::tree::{Color, ColoredTree, Edge, Mode, NONE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible spec: {reason}; nearest feasible n is {nearest}")]
    InfeasibleSpec { reason: String, nearest: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    /// Vertex count of the generated tree (sum of quotient weights).
    pub n: usize,
    pub k: u32,
    pub max_orbit: usize,
    pub seed: u64,
    /// Probability that the automorphism exchanges the two centers. Only
    /// honored for even `n`.
    pub loop_prob: f64,
    pub mode: Mode,
}

impl GenSpec {
    pub fn new(n: usize, k: u32, seed: u64) -> Self {
        GenSpec {
            n,
            k,
            max_orbit: 6,
            seed,
            loop_prob: 0.25,
            mode: Mode::Generic,
        }
    }

    fn check(&self) -> Result<(), GenError> {
        let infeasible = |reason: &str| GenError::InfeasibleSpec {
            reason: reason.to_string(),
            nearest: self.n.max(1),
        };
        if self.n == 0 {
            return Err(infeasible("n must be at least 1"));
        }
        if self.k == 0 {
            return Err(infeasible("k must be at least 1"));
        }
        if self.max_orbit == 0 {
            return Err(infeasible("max orbit size must be at least 1"));
        }
        if self.mode == Mode::MorseSmale && self.k != 2 {
            return Err(infeasible("morse-smale mode needs k = 2"));
        }
        if !(0.0..=1.0).contains(&self.loop_prob) {
            return Err(infeasible("loop probability must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// SplitMix64 finalizer; used to derive independent stream seeds.
pub fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random quotient of total weight `n` rooted at vertex 0 (weight 1). Child
/// weights are multiples of parent weights and never exceed `max_orbit`.
pub fn random_quotient<R: Rng>(rng: &mut R, n: usize, k: u32, max_orbit: usize) -> QuotientTree {
    assert!(n >= 1 && k >= 1 && max_orbit >= 1);
    let mut weight = vec![1usize];
    let mut qedges = Vec::new();
    let mut remaining = n - 1;
    while remaining > 0 {
        let last = weight.len() - 1;
        // Mix uniform attachment (bushy) with attaching to the newest vertex
        // (long paths).
        let mut v = if rng.gen_bool(0.3) {
            last
        } else {
            rng.gen_range(0..weight.len())
        };
        if weight[v] > remaining {
            v = 0;
        }
        let w = weight[v];
        let max_factor = remaining.min(max_orbit) / w;
        let factor = if max_factor <= 1 || rng.gen_bool(0.6) {
            1
        } else {
            rng.gen_range(2..=max_factor)
        };
        let child = weight.len();
        weight.push(w * factor);
        qedges.push((v, child, rng.gen_range(1..=k)));
        remaining -= w * factor;
    }
    QuotientTree::new(weight.len(), k, weight, qedges, None).expect("grown quotient is valid")
}

/// Random vertex relabeling of `0..n`.
pub fn random_relabeling<R: Rng>(rng: &mut R, n: usize) -> VertexPermutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    VertexPermutation::new(image).expect("shuffle is a bijection")
}

/// Relabels with a random `rho`, conjugates the permutation, and shuffles the
/// edge list.
pub fn random_conjugate<R: Rng>(rng: &mut R, et: &EquippedColoredTree) -> EquippedColoredTree {
    let rho = random_relabeling(rng, et.n());
    let moved = et.relabeled(&rho);
    let mut order: Vec<usize> = (0..moved.tree().edges().len()).collect();
    order.shuffle(rng);
    moved.with_edge_order(&order)
}

/// Recipe from which an equipped tree is rebuilt up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    /// Loop-free quotient; any expansion is isomorphic to the source.
    Plain(QuotientTree),
    /// Quotient of the half tree under `P²`, the quotient vertex of the half
    /// root, and the central edge color.
    Swapped {
        half: QuotientTree,
        root: usize,
        color: Color,
    },
}

impl Recipe {
    pub fn of(et: &EquippedColoredTree) -> Recipe {
        match normalize(et) {
            Normalized::Swapped(h) => {
                let b = build_quotient_mapped(&h.tree, false).expect("half root is fixed");
                Recipe::Swapped {
                    half: b.quotient,
                    root: b.vertex_to_q[h.root],
                    color: h.central_color,
                }
            }
            _ => Recipe::Plain(
                build_quotient_mapped(et, false)
                    .expect("centers are fixed")
                    .quotient,
            ),
        }
    }

    pub fn realize(&self, mode: Mode) -> EquippedColoredTree {
        let et = match self {
            Recipe::Plain(q) => {
                expand_quotient_mapped(q)
                    .expect("recipe quotient expands")
                    .equipped
            }
            Recipe::Swapped { half, root, color } => {
                let exp = expand_quotient_mapped(half).expect("half quotient expands");
                let r = exp
                    .origin
                    .iter()
                    .position(|&o| o == *root)
                    .expect("root orbit is present");
                swap_join(&exp.equipped, r, *color)
            }
        };
        let k = et.tree().k();
        et.with_mode(mode)
            .unwrap_or_else(|_| panic!("mode {} is incompatible with k = {k}", mode.as_str()))
    }
}

/// Builds the tree `A ∪ A'` where `A'` is a copy of the half, joined by an
/// edge `root – root'` of `color`, with `P(a) = a'` and `P(a') = Q(a)`.
/// Then `P` exchanges the two centers and `P²` restricts to `Q` on `A`.
pub fn swap_join(half: &EquippedColoredTree, root: usize, color: Color) -> EquippedColoredTree {
    let h = half.n();
    let t = half.tree();
    let mut edges = Vec::with_capacity(2 * h - 1);
    edges.extend_from_slice(t.edges());
    edges.extend(
        t.edges()
            .iter()
            .map(|e| Edge::new(e.u + h, e.v + h, e.color)),
    );
    edges.push(Edge::new(root, root + h, color));
    let tree = ColoredTree::new(2 * h, t.k().max(color), t.mode(), edges).expect("joined halves");
    let mut image = Vec::with_capacity(2 * h);
    image.extend((0..h).map(|a| a + h));
    image.extend((0..h).map(|a| half.perm().apply(a)));
    let perm = VertexPermutation::new(image).expect("bijection");
    validate_automorphism(tree, perm).expect("swap join is an automorphism")
}

/// Generates a random equipped tree. Deterministic for a given spec.
pub fn gen_equipped(spec: &GenSpec) -> Result<EquippedColoredTree, GenError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let swapped = spec.n.is_multiple_of(2) && rng.gen_bool(spec.loop_prob);
    let recipe = if swapped {
        let half = random_quotient(&mut rng, spec.n / 2, spec.k, spec.max_orbit);
        Recipe::Swapped {
            half,
            root: 0,
            color: rng.gen_range(1..=spec.k),
        }
    } else {
        Recipe::Plain(random_quotient(&mut rng, spec.n, spec.k, spec.max_orbit))
    };
    let et = recipe.realize(spec.mode);
    Ok(random_conjugate(&mut rng, &et))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Iso,
    NonIso,
}

/// How the second instance of a non-isomorphic pair was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    /// Every edge of one edge orbit changed color.
    RecolorEdgeOrbit { from: Color, to: Color, size: usize },
    /// A leaf orbit of weight `f·p` replaced by `f` leaf orbits of weight `p`.
    SplitLeafOrbit { weight: usize, parts: usize },
    /// `parts` sibling leaf orbits of weight `p` merged into one.
    MergeLeafOrbits { weight: usize, parts: usize },
    /// A leaf orbit moved under another orbit; verified by brute force.
    Reattach,
}

impl Mutation {
    /// Whether the mutation changes the color multiset or the orbit-size
    /// multiset, both of which every isomorphism preserves.
    pub fn provably_distinguishing(&self) -> bool {
        !matches!(self, Mutation::Reattach)
    }
}

#[derive(Debug, Clone)]
pub struct InstancePair {
    pub first: EquippedColoredTree,
    pub second: EquippedColoredTree,
    pub expected: bool,
    pub mutation: Option<Mutation>,
}

/// Builds a pair from `et`. `Iso` pairs are random conjugates; `NonIso` pairs
/// apply one random mutation. At `n ≤ 12` every non-isomorphic pair is
/// confirmed by brute force. Returns `None` when no mutation applies (for
/// example a one-color path with the identity automorphism).
pub fn make_pair(et: &EquippedColoredTree, kind: PairKind, seed: u64) -> Option<InstancePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        PairKind::Iso => Some(InstancePair {
            first: et.clone(),
            second: random_conjugate(&mut rng, et),
            expected: true,
            mutation: None,
        }),
        PairKind::NonIso => {
            let mut classes = [0u8, 1, 2, 3];
            classes.shuffle(&mut rng);
            for class in classes {
                let Some((mutated, mutation)) = mutate(et, class, &mut rng) else {
                    continue;
                };
                if et.n() <= BRUTE_LIMIT {
                    let found = iso_brute(et, &mutated, BRUTE_LIMIT).expect("within limit");
                    if found.is_some() {
                        continue;
                    }
                } else if !mutation.provably_distinguishing() {
                    continue;
                }
                let second = random_conjugate(&mut rng, &mutated);
                return Some(InstancePair {
                    first: et.clone(),
                    second,
                    expected: false,
                    mutation: Some(mutation),
                });
            }
            None
        }
    }
}

fn mutate<R: Rng>(
    et: &EquippedColoredTree,
    class: u8,
    rng: &mut R,
) -> Option<(EquippedColoredTree, Mutation)> {
    match class {
        0 => recolor_edge_orbit(et, rng),
        1 => edit_recipe(et, rng, split_leaf),
        2 => edit_recipe(et, rng, merge_leaves),
        _ if et.n() <= BRUTE_LIMIT => edit_recipe(et, rng, reattach_leaf),
        _ => None,
    }
}

fn recolor_edge_orbit<R: Rng>(
    et: &EquippedColoredTree,
    rng: &mut R,
) -> Option<(EquippedColoredTree, Mutation)> {
    let tree = et.tree();
    let k = tree.k();
    if k < 2 || tree.edges().is_empty() {
        return None;
    }
    let start = rng.gen_range(0..tree.edges().len());
    let from = tree.edges()[start].color;
    let mut to = rng.gen_range(1..k);
    if to >= from {
        to += 1;
    }
    let mut edges = tree.edges().to_vec();
    let p = et.perm();
    let (mut a, mut b) = (edges[start].u, edges[start].v);
    let mut size = 0;
    loop {
        let i = tree.edge_between(a, b).expect("images of edges are edges");
        if edges[i].color == to {
            break;
        }
        edges[i].color = to;
        size += 1;
        a = p.apply(a);
        b = p.apply(b);
    }
    let t = ColoredTree::new(tree.n(), k, tree.mode(), edges).ok()?;
    let mutated = validate_automorphism(t, p.clone()).ok()?;
    Some((mutated, Mutation::RecolorEdgeOrbit { from, to, size }))
}

/// Editable rooted form of a quotient.
struct Editable {
    weight: Vec<usize>,
    parent: Vec<usize>,
    color: Vec<Color>,
    root: usize,
    /// Vertex that must survive every edit (the half root of a swapped recipe).
    keep: usize,
    k: u32,
}

impl Editable {
    fn from_quotient(q: &QuotientTree, root: usize) -> Self {
        let (parent, color, _) = q.parents_from(root);
        Editable {
            weight: q.weights().to_vec(),
            parent,
            color,
            root,
            keep: root,
            k: q.k(),
        }
    }

    fn children_count(&self) -> Vec<usize> {
        let mut c = vec![0; self.weight.len()];
        for &p in &self.parent {
            if p != NONE {
                c[p] += 1;
            }
        }
        c
    }

    fn leaves(&self) -> Vec<usize> {
        let c = self.children_count();
        (0..self.weight.len())
            .filter(|&x| c[x] == 0 && x != self.root && x != self.keep)
            .collect()
    }

    fn remove(&mut self, gone: &[usize]) {
        let m = self.weight.len();
        let mut dead = vec![false; m];
        for &g in gone {
            dead[g] = true;
        }
        let mut new_id = vec![NONE; m];
        let mut next = 0;
        for x in 0..m {
            if !dead[x] {
                new_id[x] = next;
                next += 1;
            }
        }
        let keep =
            |v: &Vec<usize>| -> Vec<usize> { (0..m).filter(|&x| !dead[x]).map(|x| v[x]).collect() };
        self.weight = keep(&self.weight);
        self.parent = keep(&self.parent)
            .into_iter()
            .map(|p| if p == NONE { NONE } else { new_id[p] })
            .collect();
        self.color = (0..m)
            .filter(|&x| !dead[x])
            .map(|x| self.color[x])
            .collect();
        self.root = new_id[self.root];
        self.keep = new_id[self.keep];
    }

    fn push(&mut self, parent: usize, weight: usize, color: Color) {
        self.weight.push(weight);
        self.parent.push(parent);
        self.color.push(color);
    }

    fn quotient(&self) -> QuotientTree {
        let qedges = (0..self.weight.len())
            .filter(|&x| self.parent[x] != NONE)
            .map(|x| (self.parent[x], x, self.color[x]))
            .collect();
        QuotientTree::new(self.weight.len(), self.k, self.weight.clone(), qedges, None)
            .expect("edits keep a tree")
    }
}

fn edit_recipe<R: Rng>(
    et: &EquippedColoredTree,
    rng: &mut R,
    edit: fn(&mut Editable, &mut R) -> Option<Mutation>,
) -> Option<(EquippedColoredTree, Mutation)> {
    let mode = et.tree().mode();
    let recipe = Recipe::of(et);
    let new_recipe;
    let mutation;
    match &recipe {
        Recipe::Plain(q) => {
            let mut e = Editable::from_quotient(q, q.expansion_root());
            mutation = edit(&mut e, rng)?;
            new_recipe = Recipe::Plain(e.quotient());
        }
        Recipe::Swapped { half, root, color } => {
            let mut e = Editable::from_quotient(half, *root);
            mutation = edit(&mut e, rng)?;
            new_recipe = Recipe::Swapped {
                half: e.quotient(),
                root: e.keep,
                color: *color,
            };
        }
    }
    Some((new_recipe.realize(mode), mutation))
}

fn split_leaf<R: Rng>(e: &mut Editable, rng: &mut R) -> Option<Mutation> {
    let candidates: Vec<usize> = e
        .leaves()
        .into_iter()
        .filter(|&x| e.weight[x] > e.weight[e.parent[x]])
        .collect();
    let &x = candidates.get(rng.gen_range(0..candidates.len().max(1)))?;
    let p = e.parent[x];
    let (w, pw) = (e.weight[x], e.weight[p]);
    let parts = w / pw;
    e.weight[x] = pw;
    for _ in 1..parts {
        e.push(p, pw, e.color[x]);
    }
    Some(Mutation::SplitLeafOrbit { weight: w, parts })
}

fn merge_leaves<R: Rng>(e: &mut Editable, rng: &mut R) -> Option<Mutation> {
    // group leaves by (parent, weight, color)
    let mut groups: std::collections::BTreeMap<(usize, usize, Color), Vec<usize>> =
        std::collections::BTreeMap::new();
    for x in e.leaves() {
        groups
            .entry((e.parent[x], e.weight[x], e.color[x]))
            .or_default()
            .push(x);
    }
    let multi: Vec<&Vec<usize>> = groups.values().filter(|g| g.len() >= 2).collect();
    let group = multi.get(rng.gen_range(0..multi.len().max(1)))?;
    let parts = rng.gen_range(2..=group.len());
    let w = e.weight[group[0]];
    e.weight[group[0]] = w * parts;
    e.remove(&group[1..parts]);
    Some(Mutation::MergeLeafOrbits { weight: w, parts })
}

fn reattach_leaf<R: Rng>(e: &mut Editable, rng: &mut R) -> Option<Mutation> {
    let leaves = e.leaves();
    let &x = leaves.get(rng.gen_range(0..leaves.len().max(1)))?;
    let targets: Vec<usize> = (0..e.weight.len())
        .filter(|&y| y != x && y != e.parent[x] && e.weight[x].is_multiple_of(e.weight[y]))
        .collect();
    let &y = targets.get(rng.gen_range(0..targets.len().max(1)))?;
    e.parent[x] = y;
    Some(Mutation::Reattach)
}
