//! Simplex t-designs: exact and floating-point moment verification,
//! permutation-group orbits, symmetrized-monomial span tests, and explicit
//! constructions of orbit designs on the probability simplex.
//!
//! A finite multiset `X` of points on `Δ^{d-1} = {x ≥ 0, Σx = 1}` is a
//! t-design when the average of every monomial of degree at most `t` over `X`
//! equals its average under the flat measure on the simplex.

pub mod algebra;
pub mod construct;
pub mod design;
pub mod error;
pub mod index;
pub mod io;
pub mod linalg;
pub mod moments;
pub mod perm;
pub mod plot;
pub mod point;
pub mod roots;
pub mod scalar;
pub mod verify;

pub use algebra::{
    decomposition_table, decomposition_table_for, homogenize_to, in_span, power_sum_basis, symmetrized_monomial,
    DecompositionTable, SpanResult, SymPoly,
};
pub use construct::{
    solve_three_value_family, triangle_cubic_roots, uniform_excess_family, FamilySolution, UniformExcessSolution,
};
pub use design::{DesignForm, DesignSet};
pub use error::{Error, Result};
pub use index::{enumerate_multi_indices, partitions, MultiIndex};
pub use moments::{
    generalized_beta, monomial_average, power_sum_target, simplex_moment, symmetrized_average, MomentReport,
};
pub use perm::{PermGroup, Permutation};
pub use point::PointVector;
pub use scalar::{Exact, Scalar};
pub use verify::{
    cross_validate, verify_brute_force, verify_g_restricted, verify_power_sum_criterion, BruteForceOptions,
    Classification, Method, VerificationResult,
};
