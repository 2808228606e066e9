//! Isomorphism of edge-colored trees equipped with color-preserving
//! automorphisms.
//!
//! Two equipped trees `(T, c, P)` and `(T', c', P')` are isomorphic when some
//! color-preserving tree isomorphism `ξ` satisfies `ξ∘P = P'∘ξ`. The crate
//! decides this in near-linear time through weighted quotient trees and
//! canonical codes, and provides brute-force and planar-reduction routes as
//! independent checks.

pub mod automorphism;
pub mod bench;
pub mod generate;
pub mod isomorphism;
pub mod quotient;
pub mod reduction;
pub mod samples;
pub mod tree;

pub use automorphism::{
    check_structure_laws, compute_orbits, normalize, validate_automorphism, AutomorphismError,
    CaseTag, EquippedColoredTree, HalfTree, LawReport, LawViolation, Normalized,
    OrbitDecomposition, VertexPermutation,
};
pub use bench::{bench, BenchReport, BenchRow, LogLogFit};
pub use generate::{gen_equipped, make_pair, GenError, GenSpec, InstancePair, Mutation, PairKind};
pub use isomorphism::{
    canon_quotient, equipped_code, iso_brute, iso_decide, iso_decide_via_reduction,
    iso_via_reduction, CanonicalCode, IsoError, IsoWitness, Root,
};
pub use quotient::{
    build_dynamics_quotient, build_quotient, expand_quotient, ms_report, MsReport, QuotientError,
    QuotientLoop, QuotientTree,
};
pub use reduction::{recover_quotient, reduce_to_graph, ReductionError, SimpleGraph};
pub use tree::{compute_ranks, Color, ColoredTree, Edge, Mode, RankInfo, TreeError};
