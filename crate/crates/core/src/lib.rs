//! Coined quantum walks on the half line and line.
//!
//! The crate has four layers:
//!
//! * [`walk`] — exact state-vector dynamics and the passage-weight recursion;
//! * [`genfun`] — generating functions of passage weights via continued
//!   fractions;
//! * [`cmv`] and [`spectral`] — the unitary band matrix attached to a coin
//!   sequence and the spectral measure recovered through the Schur algorithm;
//! * [`limits`] — closed-form asymptotic profiles for the power-law model and
//!   homogeneous walks, checked against simulation.

pub mod cmv;
pub mod coin;
pub mod error;
pub mod genfun;
pub mod limits;
pub mod quad;
pub mod spectral;
pub mod mat2;
pub mod series;
pub mod walk;

pub use coin::{build_coin, local_matrices, rho_of, CoinMatrix, CoinSequence, LocalMatrices};
pub use cmv::{build_cmv, cmv_walk_correspondence, theta_block, CMVMatrix};
pub use error::{Error, Result};
pub use genfun::{doubling_check, minus_step, plus_step, GenFun, MatrixSeries};
pub use limits::{
    bottom_profile, bottom_term_row_limit, decomposition_terms, h2_bottom_profile,
    h2_limit_constants, h2_origin_profile, ld_log_prob, ld_rate, limit_constants, nu_absorbing, nu_reflecting,
    origin_profile, origin_term_limit, tail_log_prob, CoinState, Decomposition,
    HomogeneousLimits, PowerLawModel,
};
pub use quad::adaptive_simpson;
pub use spectral::{bridge_check, SchurEvaluator, SpectralAnalyzer, SpectralMeasure};
pub use series::PowerSeries;
pub use mat2::{spinor_norm_sq, Mat2, Spinor, C64};
pub use walk::{
    distribution, dual_distribution, effective_gamma, evolve, passage_weights, step, Distribution,
    PassageWeights, WalkKind, WalkState,
};
