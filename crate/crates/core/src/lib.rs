//! Exact computations for commutative quadratic algebras, their Koszul duals,
//! and minimal free resolutions of ideals with linear quotients.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod betti;
pub mod complex;
pub mod dual;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod resolution;

pub use algebra::{
    monomials_of_degree, AlgebraElement, GradedAlgebra, Monomial, PairExpansion, Polynomial,
    PreferredConflict, RingPresentation, StructureCoefficients, VarSet,
};
pub use betti::{betti_table, BettiTable};
pub use complex::{
    d_squared_failures, homology_dim, homology_window, linear_strand, nonminimal_degrees,
    verify_complex, AMatrix, BasisLabel, ChainComplex, ComplexReport, HomologyEntry,
};
pub use dual::{
    left_ideal_contains, relation_space, ActionSlot, Containment, DualAlgebra, QuotientDual,
};
pub use error::{Error, Result};
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use ideal::{
    annihilator_vars, check_regular_ordering, check_star_condition, check_strongly_koszul,
    AnnihilatorReport, ColonFailure, ColonReport, ConditionOneDisagreement, Decomposition,
    DecompositionTable, LinearQuotientsReport, MonomialIdeal, RegularOrderingOptions,
    RegularOrderingReport, RegularViolation, StarReport, StarViolation, StronglyKoszulFailure,
    StronglyKoszulReport,
};
pub use linalg::{intersect_subspaces, solve_membership, Matrix, Subspace};
pub use num_bigint::BigInt;
pub use resolution::{
    calibrate_action, chain_map_failures, closed_form_resolution, closed_form_resolution_with,
    comparison_map_psi, iterated_mapping_cone, koszulness_certificate, priddy_complex,
    sub_priddy_complex, ClosedFormVariant, ComparisonMap, KoszulContext, KoszulnessCertificate,
    ResolutionData,
};
