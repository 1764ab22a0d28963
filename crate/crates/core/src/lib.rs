//! Three-particle exponential integrals.
//!
//! Integrals of the form
//!
//! ```text
//! I = ∫∫∫ F(r32, r31, r21) exp(-α r32 - β r31 - γ r21) dr32 dr31 dr21
//! ```
//!
//! over the triangle-constrained inter-particle distances, for polynomial,
//! spherical-Bessel, Yukawa/Uehling and series-defined kernels `F`, plus a
//! brute-force perimetric-coordinate quadrature used to check them.

// reference constants carry extra digits; negated comparisons reject NaN
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod addition;
pub mod basic;
pub mod bessel_double;
pub mod bessel_single;
pub mod cli;
pub mod composite;
pub mod error;
pub mod gamma;
pub mod numeric;
pub mod oracle;
pub mod series;
pub mod special;
pub mod spherical;
pub mod tables;
pub mod types;
pub mod uehling;

pub use addition::{
    addition_survey, legendre_p_array, product_identity_residual, rayleigh_partial_sum, termwise_identity_residual,
    termwise_identity_sides, SurveyRow, TriangleGeometry,
};
pub use basic::{basic_b, exponential_moment, power_g, BasicBSpec};
pub use bessel_double::{
    convergence_radius, double_bessel_integral, product_jj_series, product_jj_terms, sin_sin_integral, DoubleBesselSpec,
};
pub use bessel_single::{
    bessel0_integral, bessel1_integral, bessel_l_integral, spherical_jl, BesselIntegralSpec,
};
pub use composite::{bessel_neg1_integral, cos_sqrt, j_integral, series_integral, JSpec, SeriesFunction, SeriesTerm};
pub use error::{Error, Result};
pub use gamma::{gamma_klm, gamma_klm_with, log_term_magnitude, GammaEvaluator};
pub use oracle::{quad1d_semiinfinite, quad3d, quad3d_exp_sinh, OracleSpec};
pub use series::SeriesControl;
pub use types::{
    from_perimetric, to_perimetric, Coordinate, ExpParams, IntegralResult, PerimetricPoint,
    PowerIndices, Precision, RelativePoint,
};
pub use uehling::{
    bessel_k0, ki_n, ubar_kernel, uehling_matrix_element, uehling_potential_point,
    yukawa_matrix_element, Pair, PointMode, UehlingSystem, XiMapping, XiQuadSpec,
};
