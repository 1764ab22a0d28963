//! Yukawa and Uehling interparticle potentials between exponential basis
//! functions.
//!
//! The Uehling potential between charges `Q` and 1 at distance `r` is
//!
//! ```text
//! U(r) = (2αQ / 3πr) ∫_1^∞ exp(-2bξr) (1 + 1/(2ξ²)) sqrt(ξ²-1)/ξ² dξ,   b = 1/α,
//! ```
//!
//! which also has a closed form in `K_0`, `Ki_1` and `Ki_2` of `2br`. Its three-body
//! matrix element is a one-dimensional ξ-integral over Yukawa-type kernels `Ū_ij`.
//! In the `Ū` names the potential argument is written `2bξ`; the kernels are
//! matrix elements, not potentials.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gamma::gamma_klm;
use crate::numeric::quad::{exp_sinh, exp_sinh_fixed, tanh_sinh_fixed, DEFAULT_MAX_LEVEL};
use crate::types::{ExpParams, IntegralResult, PowerIndices};

pub use crate::special::{bessel_k0, bessel_k0_integral, bessel_k0_series, ki_n};

/// Default fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.035_999;

/// Charges of a three-body system and the coupling of the Uehling term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UehlingSystem {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub fine_structure: f64,
    /// `1/fine_structure`.
    pub b: f64,
    pub nuclear_charge: f64,
}

impl UehlingSystem {
    pub fn new(q1: f64, q2: f64, q3: f64, nuclear_charge: f64) -> Self {
        Self {
            q1,
            q2,
            q3,
            fine_structure: FINE_STRUCTURE,
            b: 1.0 / FINE_STRUCTURE,
            nuclear_charge,
        }
    }

    pub fn with_fine_structure(self, fine_structure: f64) -> Self {
        Self {
            fine_structure,
            b: 1.0 / fine_structure,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.fine_structure;
        if !(a > 0.0) || !a.is_finite() {
            return Err(domain(format!("fine-structure constant must be > 0, got {a}")));
        }
        if ((self.b * a) - 1.0).abs() > 1e-12 {
            return Err(domain(format!("b = {} is not 1/fine_structure = {}", self.b, 1.0 / a)));
        }
        Ok(())
    }
}

/// Substitution used for the ξ-integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum XiMapping {
    /// `ξ = 1/u` on `u ∈ (0, 1]`, then tanh-sinh.
    Inverse,
    /// `ξ = 1 + τ`, then exp-sinh on `τ ∈ (0, ∞)`.
    Shifted,
}

/// Quadrature settings for the ξ-integral.
///
/// `node_count` is the starting rule size; it is doubled until two successive
/// rules agree to `tol` (relative) or the size exceeds `MAX_XI_NODES`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XiQuadSpec {
    pub node_count: usize,
    pub mapping: XiMapping,
    pub tol: f64,
}

pub const MAX_XI_NODES: usize = 1 << 14;

impl Default for XiQuadSpec {
    fn default() -> Self {
        Self {
            node_count: 32,
            mapping: XiMapping::Inverse,
            tol: 1e-12,
        }
    }
}

impl XiQuadSpec {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 8 {
            return Err(domain(format!("node_count must be >= 8, got {}", self.node_count)));
        }
        if !(self.tol > 0.0) {
            return Err(domain(format!("tol must be > 0, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Which interparticle distance carries the potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pair {
    P21,
    P31,
    P32,
}

impl Pair {
    pub fn from_code(code: u32) -> Result<Self> {
        match code {
            21 => Ok(Pair::P21),
            31 => Ok(Pair::P31),
            32 => Ok(Pair::P32),
            c => Err(domain(format!("pair must be 21, 31 or 32, got {c}"))),
        }
    }
}

/// `V0 ∫∫∫ r31 r21 exp(-(α+μ) r32 - β r31 - γ r21) d³r = V0 Γ_{0;1;1}(α+μ, β, γ)`,
/// the matrix element of `V0 exp(-μ r32)/r32`.
pub fn yukawa_matrix_element(params: ExpParams, mu: f64, v0: f64) -> Result<IntegralResult> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(domain(format!("screening μ must be finite and >= 0, got {mu}")));
    }
    let shifted = params.shifted(mu, 0.0, 0.0);
    Ok(gamma_klm(PowerIndices::new(0, 1, 1), shifted)?.scale(v0))
}

/// `Ū_ij(s)`: matrix element of `exp(-s r_ij)/r_ij` between the basis
/// functions, times the volume element `r32 r31 r21`.
///
/// With `X` the pair sum that does not contain the shifted exponent and `Y`, `Z`
/// the two that do (each plus `s`):
/// `2/(XYZ) [2/X² + 1/(ZX) + 1/(YX) + 1/(ZY)]`.
pub fn ubar_kernel(pair: Pair, params: ExpParams, shift: f64) -> Result<f64> {
    if !(shift >= 0.0) || !shift.is_finite() {
        return Err(domain(format!("shift must be finite and >= 0, got {shift}")));
    }
    let (ab, ag, bg) = params.pair_sums();
    let (x, y, z) = match pair {
        Pair::P21 => (ab, ag + shift, bg + shift),
        Pair::P31 => (ag, ab + shift, bg + shift),
        Pair::P32 => (bg, ab + shift, ag + shift),
    };
    if !(x > 0.0 && y > 0.0 && z > 0.0) {
        return Err(domain(format!(
            "shifted pair sums must be positive, got ({x}, {y}, {z}) for {pair:?}"
        )));
    }
    Ok(2.0 / (x * y * z) * (2.0 / (x * x) + 1.0 / (z * x) + 1.0 / (y * x) + 1.0 / (z * y)))
}

fn charge_weighted(sys: &UehlingSystem, params: ExpParams, shift: f64) -> Result<f64> {
    Ok(sys.q1 * sys.q2 * ubar_kernel(Pair::P21, params, shift)?
        + sys.q1 * sys.q3 * ubar_kernel(Pair::P31, params, shift)?
        + sys.q2 * sys.q3 * ubar_kernel(Pair::P32, params, shift)?)
}

/// Uehling matrix element of the three pairwise interactions:
///
/// ```text
/// (2α/3π) ∫_1^∞ [q1q2 Ū21 + q1q3 Ū31 + q2q3 Ū32](2bξ) (1 + 1/(2ξ²)) sqrt(ξ²-1)/ξ² dξ
/// ```
pub fn uehling_matrix_element(
    sys: &UehlingSystem,
    params: ExpParams,
    quad: &XiQuadSpec,
) -> Result<IntegralResult> {
    sys.validate()?;
    params.validate()?;
    quad.validate()?;
    let two_b = 2.0 * sys.b;
    // domain check at the smallest shift; larger shifts only grow the sums
    charge_weighted(sys, params, two_b)?;
    let kernel = |xi: f64| charge_weighted(sys, params, two_b * xi).unwrap_or(f64::NAN);
    let rule = |m: usize| -> f64 {
        match quad.mapping {
            XiMapping::Inverse => tanh_sinh_fixed(
                |u, uc| {
                    if u == 0.0 {
                        return 0.0;
                    }
                    // sqrt(1-u²) from the complement 1-u
                    let root = (uc * (1.0 + u)).sqrt();
                    kernel(1.0 / u) * (1.0 + 0.5 * u * u) * root / u
                },
                0.0,
                1.0,
                m,
            ),
            XiMapping::Shifted => exp_sinh_fixed(
                |tau| {
                    let xi = 1.0 + tau;
                    let root = (tau * (2.0 + tau)).sqrt();
                    kernel(xi) * (1.0 + 0.5 / (xi * xi)) * root / (xi * xi)
                },
                1.0,
                m,
            ),
        }
    };
    let prefactor = 2.0 * sys.fine_structure / (3.0 * std::f64::consts::PI);
    let mut m = quad.node_count / 2;
    let mut prev = rule(m);
    loop {
        let next = rule(2 * m);
        if !next.is_finite() {
            return Err(domain("ξ-integrand is not finite at some node"));
        }
        let err = (next - prev).abs();
        let nodes = 4 * m + 1;
        let done = err <= quad.tol * next.abs() || next == 0.0;
        if done || nodes > MAX_XI_NODES {
            return Ok(IntegralResult {
                value: prefactor * next,
                abs_error_estimate: prefactor * err,
                terms_used: nodes,
                converged: done,
            });
        }
        prev = next;
        m *= 2;
    }
}

/// How [`uehling_potential_point`] evaluates the potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointMode {
    /// The ξ-integral.
    Integral,
    /// `(1 + b²r²/3) K_0 - (br/6) Ki_1 - (b²r²/3 + 5/6) Ki_2` at `2br`.
    KiForm,
}

/// `∫_1^∞ exp(-xξ) (1 + 1/(2ξ²)) sqrt(ξ²-1)/ξ² dξ`.
pub fn uehling_xi_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("2br must be finite and > 0, got {x}")));
    }
    // ξ = 1 + τ with exp(-x) factored out
    let out = exp_sinh(
        |tau| {
            let xi = 1.0 + tau;
            (-x * tau).exp() * (1.0 + 0.5 / (xi * xi)) * (tau * (2.0 + tau)).sqrt() / (xi * xi)
        },
        1.0 / x.max(1.0),
        1e-14,
        DEFAULT_MAX_LEVEL,
    );
    if !out.converged {
        return Err(Error::NonConvergence {
            value: out.value,
            estimate: out.error,
            terms: out.evaluations,
        });
    }
    Ok((-x).exp() * out.value)
}

/// The same quantity as [`uehling_xi_integral`] through `K_0`, `Ki_1`, `Ki_2`.
pub fn uehling_ki_combination(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("2br must be finite and > 0, got {x}")));
    }
    let br = 0.5 * x;
    let b2r2 = br * br;
    Ok((1.0 + b2r2 / 3.0) * bessel_k0(x)? - br / 6.0 * ki_n(1, x)? - (b2r2 / 3.0 + 5.0 / 6.0) * ki_n(2, x)?)
}

/// Uehling potential of the nuclear charge at distance `r`.
pub fn uehling_potential_point(sys: &UehlingSystem, r: f64, mode: PointMode) -> Result<f64> {
    sys.validate()?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain(format!("distance r must be finite and > 0, got {r}")));
    }
    let x = 2.0 * sys.b * r;
    let inner = match mode {
        PointMode::Integral => uehling_xi_integral(x)?,
        PointMode::KiForm => uehling_ki_combination(x)?,
    };
    let prefactor = 2.0 * sys.fine_structure * sys.nuclear_charge / (3.0 * std::f64::consts::PI * r);
    Ok(prefactor * inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn yukawa_reduces_to_coulomb() {
        let p = ExpParams::new(1.0, 0.8, 0.6).unwrap();
        let y = yukawa_matrix_element(p, 0.0, 1.0).unwrap().value;
        assert_eq!(y, gamma_klm(PowerIndices::new(0, 1, 1), p).unwrap().value);
        let mut last = y;
        for mu in [0.1, 0.5, 2.0] {
            let v = yukawa_matrix_element(p, mu, 1.0).unwrap().value;
            assert!(v < last);
            last = v;
        }
        assert!(yukawa_matrix_element(p, -1.0, 1.0).is_err());
    }

    #[test]
    fn kernel_at_zero_shift_is_gamma() {
        let p = ExpParams::new(2.0, 2.0, 1.0).unwrap();
        let g = gamma_klm(PowerIndices::new(1, 1, 0), p).unwrap().value;
        assert!(rel(ubar_kernel(Pair::P21, p, 0.0).unwrap(), g) < 1e-15);
        let g = gamma_klm(PowerIndices::new(1, 0, 1), p.shifted(0.0, 1.0, 0.0)).unwrap().value;
        assert!(rel(ubar_kernel(Pair::P31, p, 1.0).unwrap(), g) < 1e-14);
        let g = gamma_klm(PowerIndices::new(0, 1, 1), p.shifted(1.0, 0.0, 0.0)).unwrap().value;
        assert!(rel(ubar_kernel(Pair::P32, p, 1.0).unwrap(), g) < 1e-14);
    }

    #[test]
    fn cyclic_permutation_rule() {
        let (a, b, c) = (1.3, 0.7, 2.1);
        let s = 3.5;
        let p = ExpParams::new(a, b, c).unwrap();
        let u32_ = ubar_kernel(Pair::P32, p, s).unwrap();
        let u21 = ubar_kernel(Pair::P21, ExpParams::new(b, c, a).unwrap(), s).unwrap();
        assert!(rel(u32_, u21) < 1e-15);
        let u31 = ubar_kernel(Pair::P31, p, s).unwrap();
        let u21 = ubar_kernel(Pair::P21, ExpParams::new(c, a, b).unwrap(), s).unwrap();
        assert!(rel(u31, u21) < 1e-15);
    }

    #[test]
    fn zero_charges_give_zero() {
        let sys = UehlingSystem::new(0.0, 0.0, 0.0, 1.0);
        let p = ExpParams::new(2.0, 2.0, 0.5).unwrap();
        let r = uehling_matrix_element(&sys, p, &XiQuadSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn matrix_element_mappings_agree_and_are_stable() {
        let sys = UehlingSystem::new(1.0, -1.0, -1.0, 1.0);
        let p = ExpParams::new(2.0, 2.0, 0.5).unwrap();
        let a = uehling_matrix_element(&sys, p, &XiQuadSpec::default()).unwrap();
        assert!(a.converged);
        let spec = XiQuadSpec {
            node_count: 256,
            ..XiQuadSpec::default()
        };
        let b = uehling_matrix_element(&sys, p, &spec).unwrap();
        assert!(rel(a.value, b.value) < 1e-11);
        let spec = XiQuadSpec {
            mapping: XiMapping::Shifted,
            ..XiQuadSpec::default()
        };
        let c = uehling_matrix_element(&sys, p, &spec).unwrap();
        assert!(rel(a.value, c.value) < 1e-10, "{} vs {}", a.value, c.value);
    }

    #[test]
    fn matrix_element_is_linear_in_charge_products() {
        let p = ExpParams::new(1.5, 1.0, 0.8).unwrap();
        let q = XiQuadSpec::default();
        let only21 = uehling_matrix_element(&UehlingSystem::new(1.0, 1.0, 0.0, 1.0), p, &q).unwrap().value;
        let doubled = uehling_matrix_element(&UehlingSystem::new(2.0, 1.0, 0.0, 1.0), p, &q).unwrap().value;
        assert!(rel(doubled, 2.0 * only21) < 1e-12);
    }

    #[test]
    fn point_forms_agree() {
        for x in [0.01, 0.3, 1.0, 4.0, 20.0] {
            let i = uehling_xi_integral(x).unwrap();
            let k = uehling_ki_combination(x).unwrap();
            assert!(rel(i, k) < 1e-9, "x={x}: {i} vs {k}");
            assert!(i > 0.0);
        }
    }

    #[test]
    fn point_potential_decays() {
        let sys = UehlingSystem::new(0.0, 0.0, 0.0, 1.0);
        let near = uehling_potential_point(&sys, 1e-3, PointMode::Integral).unwrap();
        let far = uehling_potential_point(&sys, 0.1, PointMode::Integral).unwrap();
        assert!(near > far && far > 0.0);
        assert!(uehling_potential_point(&sys, 0.0, PointMode::KiForm).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn kernel_is_shifted_gamma(a in 0.2f64..4.0, b in 0.2f64..4.0, c in -0.1f64..3.0, s in 0.0f64..500.0) {
            let p = ExpParams::new(a, b, c).unwrap();
            let k = ubar_kernel(Pair::P21, p, s).unwrap();
            let g = gamma_klm(PowerIndices::new(1, 1, 0), p.shifted(0.0, 0.0, s)).unwrap().value;
            prop_assert!(rel(k, g) <= 1e-12);
        }
    }
}
