//! Domain types shared across the integral families.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Nonlinear exponents of `exp(-α r32 - β r31 - γ r21)`.
///
/// Single exponents may be negative; only the pairwise sums enter the
/// perimetric form and they must all be positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ExpParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = Self { alpha, beta, gamma };
        p.validate()?;
        Ok(p)
    }

    /// Unchecked constructor; call [`ExpParams::validate`] before use.
    pub const fn raw(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.gamma.is_finite()) {
            return Err(domain(format!("non-finite exponent in {self:?}")));
        }
        let (ab, ag, bg) = self.pair_sums();
        if ab <= 0.0 || ag <= 0.0 || bg <= 0.0 {
            return Err(domain(format!(
                "pairwise exponent sums must be positive: α+β={ab}, α+γ={ag}, β+γ={bg}"
            )));
        }
        Ok(())
    }

    /// `(α+β, α+γ, β+γ)`: the decay rates of u3, u2 and u1.
    pub fn pair_sums(&self) -> (f64, f64, f64) {
        (
            self.alpha + self.beta,
            self.alpha + self.gamma,
            self.beta + self.gamma,
        )
    }

    /// Exponents that reproduce the given perimetric decay rates
    /// `exp(-a u1 - b u2 - c u3)`.
    pub fn from_perimetric_rates(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(0.5 * (b + c - a), 0.5 * (a + c - b), 0.5 * (a + b - c))
    }

    pub fn shifted(&self, d_alpha: f64, d_beta: f64, d_gamma: f64) -> Self {
        Self::raw(self.alpha + d_alpha, self.beta + d_beta, self.gamma + d_gamma)
    }
}

/// Integer powers `r32^k r31^l r21^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PowerIndices {
    pub k: u32,
    pub l: u32,
    pub n: u32,
}

impl PowerIndices {
    pub const fn new(k: u32, l: u32, n: u32) -> Self {
        Self { k, l, n }
    }

    pub fn total(&self) -> u32 {
        self.k + self.l + self.n
    }
}

/// Which relative coordinate a one-coordinate kernel acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coordinate {
    R32,
    R31,
    R21,
}

impl Coordinate {
    /// Relabels `(idx, params)` so that this coordinate takes the r32 slot.
    /// Swapping two particles' roles is a transposition of the matching
    /// (index, exponent) pairs; the integral is unchanged by relabeling.
    pub fn move_to_r32(self, idx: PowerIndices, p: ExpParams) -> (PowerIndices, ExpParams) {
        match self {
            Coordinate::R32 => (idx, p),
            Coordinate::R31 => (
                PowerIndices::new(idx.l, idx.k, idx.n),
                ExpParams::raw(p.beta, p.alpha, p.gamma),
            ),
            Coordinate::R21 => (
                PowerIndices::new(idx.n, idx.l, idx.k),
                ExpParams::raw(p.gamma, p.beta, p.alpha),
            ),
        }
    }
}

/// Inter-particle distances; must satisfy the triangle inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelativePoint {
    pub r32: f64,
    pub r31: f64,
    pub r21: f64,
}

/// Perimetric coordinates, each independently in `[0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerimetricPoint {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl RelativePoint {
    pub fn new(r32: f64, r31: f64, r21: f64) -> Result<Self> {
        let r = Self { r32, r31, r21 };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { r32, r31, r21 } = *self;
        if !(r32 >= 0.0 && r31 >= 0.0 && r21 >= 0.0) {
            return Err(domain(format!("distances must be non-negative: {self:?}")));
        }
        // room for rounding in points built from perimetric coordinates
        let slack = 4.0 * f64::EPSILON * (r32 + r31 + r21);
        if r32 > r31 + r21 + slack || r31 > r32 + r21 + slack || r21 > r32 + r31 + slack {
            return Err(domain(format!("triangle condition violated: {self:?}")));
        }
        Ok(())
    }

    pub fn to_perimetric(&self) -> Result<PerimetricPoint> {
        self.validate()?;
        let Self { r32, r31, r21 } = *self;
        Ok(PerimetricPoint {
            u1: (0.5 * (r31 + r21 - r32)).max(0.0),
            u2: (0.5 * (r21 + r32 - r31)).max(0.0),
            u3: (0.5 * (r32 + r31 - r21)).max(0.0),
        })
    }
}

impl PerimetricPoint {
    pub fn new(u1: f64, u2: f64, u3: f64) -> Result<Self> {
        if !(u1 >= 0.0 && u2 >= 0.0 && u3 >= 0.0) || !(u1 + u2 + u3).is_finite() {
            return Err(domain(format!(
                "perimetric coordinates must be finite and non-negative: ({u1}, {u2}, {u3})"
            )));
        }
        Ok(Self { u1, u2, u3 })
    }

    /// `r_ij = u_i + u_j`; always a valid triangle.
    pub fn to_relative(&self) -> RelativePoint {
        RelativePoint {
            r32: self.u2 + self.u3,
            r31: self.u1 + self.u3,
            r21: self.u1 + self.u2,
        }
    }
}

pub fn to_perimetric(r: RelativePoint) -> Result<PerimetricPoint> {
    r.to_perimetric()
}

pub fn from_perimetric(u: PerimetricPoint) -> Result<RelativePoint> {
    PerimetricPoint::new(u.u1, u.u2, u.u3).map(|u| u.to_relative())
}

/// Value of an integral plus how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl IntegralResult {
    pub fn exact(value: f64, terms_used: usize) -> Self {
        Self {
            value,
            abs_error_estimate: 4.0 * f64::EPSILON * value.abs() * (terms_used.max(1) as f64).sqrt(),
            terms_used,
            converged: true,
        }
    }

    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                value: self.value,
                estimate: self.abs_error_estimate,
                terms: self.terms_used,
            })
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            ..self
        }
    }
}

/// Arithmetic used for series terms and their accumulation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Precision {
    /// f64 mantissas with compensated summation.
    #[default]
    Standard,
    /// Double-double mantissas throughout (about 32 digits).
    Extended,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn equilateral_and_degenerate() {
        let u = RelativePoint::new(2.0, 2.0, 2.0).unwrap().to_perimetric().unwrap();
        assert_eq!((u.u1, u.u2, u.u3), (1.0, 1.0, 1.0));
        let r = from_perimetric(PerimetricPoint { u1: 0.0, u2: 1.0, u3: 1.0 }).unwrap();
        assert_eq!((r.r32, r.r31, r.r21), (2.0, 1.0, 1.0));
    }

    #[test]
    fn triangle_violation_is_rejected() {
        assert!(matches!(RelativePoint::new(5.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(RelativePoint::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn negative_single_exponent_allowed() {
        assert!(ExpParams::new(2.35, 1.41, -0.567).is_ok());
        assert!(ExpParams::new(1.0, -1.0, 3.0).is_err());
    }

    #[test]
    fn perimetric_rates_roundtrip() {
        let p = ExpParams::from_perimetric_rates(1.0, 2.0, 3.0).unwrap();
        let (ab, ag, bg) = p.pair_sums();
        assert!((bg - 1.0).abs() < 1e-15 && (ag - 2.0).abs() < 1e-15 && (ab - 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn perimetric_roundtrip(u1 in 0.0f64..50.0, u2 in 0.0f64..50.0, u3 in 0.0f64..50.0) {
            let r = PerimetricPoint::new(u1, u2, u3).unwrap().to_relative();
            let back = r.to_perimetric().unwrap();
            let tol = 1e-13 * (1.0 + u1 + u2 + u3);
            prop_assert!((back.u1 - u1).abs() <= tol);
            prop_assert!((back.u2 - u2).abs() <= tol);
            prop_assert!((back.u3 - u3).abs() <= tol);
        }
    }
}
