//! Exact min-plus linear algebra.

mod arrangement;
pub mod config;
pub mod convex;
pub mod det;
pub mod diffcon;
pub mod error;
pub mod fixtures;
pub mod lifts;
pub mod matrix;
pub mod matroids;
mod numeric;
pub mod par;
pub mod rank;
pub mod scalar;
pub mod solve;

pub use config::Config;
pub use convex::{
    cell_dim_from_type, enumerate_hull_cells, enumerate_hull_cells_with, hull_dimension,
    hull_dimension_with, is_type_realizable, type_of_point, type_to_mixed_cell, HullCell,
    MixedCell, TypeVector,
};
pub use det::{
    det_bruteforce, even_odd_minima, permutation_sum, trop_det, SingularityCertificate, Verdict,
};
pub use error::{Result, TropError};
pub use lifts::{
    barvinok_lift, cn_lift, lift_rank, rank2_block_decomposition, rank2_lift, valuation_matrix,
    PuiseuxMatrix, PuiseuxPoly, Rank2Lift, Rank2LiftPlan, Rank2Method,
};
pub use matrix::{
    classical_identity, normalize_projective, rank_one_factor, trop_add, trop_matmul, TropMatrix,
};
pub use matroids::{
    builtin, cocircuit_representation, non_fano_vectors, representation_lift, Matroid,
};
pub use par::Exec;
pub use rank::{
    barvinok_decision, barvinok_decision_with, barvinok_rank, barvinok_rank2_fast,
    barvinok_rank_with, cn_barvinok_rank, kapranov_report, kapranov_report_with, rank_report,
    rank_report_with, tropical_rank, tropical_rank_01, tropical_rank_with, BarvinokDecision,
    BarvinokRank, KapranovReport, KapranovRule, RankReport, TropicalRank,
};
pub use scalar::TropScalar;
pub use solve::{
    in_tropical_hull, is_strongly_regular, maximal_independent_column_sets,
    maximal_independent_column_sets_with, principal_solution, solve_status,
    strong_independence_rank, strong_independence_rank_with, SolveStatus, StrongIndependence,
};
