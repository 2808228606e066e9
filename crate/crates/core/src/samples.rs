//! Small hand-built instances used in tests, docs, and the CLI smoke paths.

use crate::automorphism::{validate_automorphism, EquippedColoredTree, VertexPermutation};
use crate::quotient::QuotientTree;
use crate::tree::{ColoredTree, Mode};

pub const GREEN: u32 = 1;
pub const BLUE: u32 = 2;
pub const RED: u32 = 3;

/// The eight-vertex colored tree `A..H = 0..7` with green = 1, blue = 2, red = 3.
pub fn eight_vertex_tree() -> ColoredTree {
    ColoredTree::from_triples(
        8,
        3,
        Mode::Generic,
        &[
            (0, 1, RED),
            (0, 2, GREEN),
            (1, 3, GREEN),
            (1, 4, BLUE),
            (2, 5, BLUE),
            (3, 6, RED),
            (4, 7, BLUE),
        ],
    )
    .expect("valid tree")
}

/// The weighted quotient on the same shape with weights `(1,1,2,1,1,4,3,1)`.
pub fn eight_vertex_quotient() -> QuotientTree {
    QuotientTree::new(
        8,
        3,
        vec![1, 1, 2, 1, 1, 4, 3, 1],
        vec![
            (0, 1, RED),
            (0, 2, GREEN),
            (1, 3, GREEN),
            (1, 4, BLUE),
            (2, 5, BLUE),
            (3, 6, RED),
            (4, 7, BLUE),
        ],
        None,
    )
    .expect("valid quotient")
}

/// Star with center 0 and leaves 1, 2, 3 rotated by `[0, 2, 3, 1]`.
pub fn star_rotation() -> EquippedColoredTree {
    let t = ColoredTree::from_triples(4, 1, Mode::Generic, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)])
        .expect("valid tree");
    validate_automorphism(
        t,
        VertexPermutation::new(vec![0, 2, 3, 1]).expect("bijection"),
    )
    .expect("rotation is an automorphism")
}

/// Path `0–1–2–3` colored `(1, 2, 1)` with the reflection `[3, 2, 1, 0]`.
pub fn path4_swap() -> EquippedColoredTree {
    let t = ColoredTree::from_triples(4, 2, Mode::Generic, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)])
        .expect("valid tree");
    validate_automorphism(
        t,
        VertexPermutation::new(vec![3, 2, 1, 0]).expect("bijection"),
    )
    .expect("reflection is an automorphism")
}

/// Four domains cut out by three saddle spheres, every saddle fixed:
/// the path `0–1–2–3` colored `u, s, u` in Morse–Smale mode.
pub fn three_saddle_ms() -> EquippedColoredTree {
    let t = ColoredTree::from_triples(4, 2, Mode::MorseSmale, &[(0, 1, 2), (1, 2, 1), (2, 3, 2)])
        .expect("valid tree");
    validate_automorphism(t, VertexPermutation::identity(4)).expect("identity")
}
