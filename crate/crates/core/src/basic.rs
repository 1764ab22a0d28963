//! Generalized basic integrals over perimetric coordinates with real powers:
//!
//! ```text
//! B = ∫∫∫ u1^p1 u2^p2 u3^p3 exp(-a u1 - b u2 - c u3) / (q0 + q1 u1 + q2 u2 + q3 u3)^s du1 du2 du3
//!   = Γ(p1+1)Γ(p2+1)Γ(p3+1)/Γ(s) ∫_0^∞ exp(-q0 x) x^{s-1} / Π_i (a_i + q_i x)^{p_i+1} dx
//!
//! G = ∫∫∫ u1^p1 u2^p2 u3^p3 / (q0 + q1 u1 + q2 u2 + q3 u3)^s du1 du2 du3
//! ```

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};
use crate::numeric::quad::{exp_sinh, DEFAULT_MAX_LEVEL};
use crate::types::IntegralResult;

/// Default relative tolerance of the one-dimensional reduction.
pub const BASIC_B_TOL: f64 = 1e-12;

/// Parameters shared by the `B` and `G` integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasicBSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub s: f64,
}

impl BasicBSpec {
    /// Pure exponential moment: `q = (1, 0, 0, 0)`, `s = 1`.
    pub fn exponential(a: f64, b: f64, c: f64, p: [f64; 3]) -> Self {
        Self {
            a,
            b,
            c,
            p1: p[0],
            p2: p[1],
            p3: p[2],
            q0: 1.0,
            q1: 0.0,
            q2: 0.0,
            q3: 0.0,
            s: 1.0,
        }
    }

    pub fn with_denominator(self, q: [f64; 4], s: f64) -> Self {
        Self {
            q0: q[0],
            q1: q[1],
            q2: q[2],
            q3: q[3],
            s,
            ..self
        }
    }

    pub fn powers(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    fn exponents(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    fn weights(&self) -> [f64; 3] {
        [self.q1, self.q2, self.q3]
    }

    fn check_powers(&self) -> Result<()> {
        for (i, p) in self.powers().into_iter().enumerate() {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(domain(format!("power p{} must be finite and >= 0, got {p}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn validate_b(&self) -> Result<()> {
        self.check_powers()?;
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("s", self.s)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        for (i, q) in [self.q0, self.q1, self.q2, self.q3].into_iter().enumerate() {
            if !(q >= 0.0) || !q.is_finite() {
                return Err(domain(format!("q{i} must be finite and >= 0, got {q}")));
            }
        }
        if self.q0 == 0.0 {
            // algebraic decay only: x^{s-1} / x^{Σ_{q_i>0}(p_i+1)} must be integrable
            let decay: f64 = self
                .powers()
                .iter()
                .zip(self.weights())
                .filter(|(_, q)| *q > 0.0)
                .map(|(p, _)| p + 1.0)
                .sum();
            if self.s >= decay {
                return Err(domain(format!(
                    "with q0 = 0 the x-integral diverges unless s < {decay}, got s = {}",
                    self.s
                )));
            }
        }
        Ok(())
    }

    pub fn validate_g(&self) -> Result<()> {
        self.check_powers()?;
        for (i, q) in [self.q0, self.q1, self.q2, self.q3].into_iter().enumerate() {
            if !(q > 0.0) || !q.is_finite() {
                return Err(domain(format!("q{i} must be finite and > 0 for G, got {q}")));
            }
        }
        let total = self.p1 + self.p2 + self.p3 + 3.0;
        if !(self.s > total) {
            return Err(domain(format!(
                "G diverges unless s > p1+p2+p3+3 = {total}, got s = {}",
                self.s
            )));
        }
        Ok(())
    }
}

fn ln_gamma_powers(spec: &BasicBSpec) -> f64 {
    spec.powers().iter().map(|p| ln_gamma(p + 1.0)).sum()
}

/// `B` through its one-dimensional reduction, default tolerance.
pub fn basic_b(spec: &BasicBSpec) -> Result<IntegralResult> {
    basic_b_with_tol(spec, BASIC_B_TOL)
}

pub fn basic_b_with_tol(spec: &BasicBSpec, tol: f64) -> Result<IntegralResult> {
    spec.validate_b()?;
    let ln_pref = ln_gamma_powers(spec) - ln_gamma(spec.s);
    let (expo, weights, powers) = (spec.exponents(), spec.weights(), spec.powers());
    let integrand = |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        let mut ln = ln_pref - spec.q0 * x + (spec.s - 1.0) * x.ln();
        for i in 0..3 {
            ln -= (powers[i] + 1.0) * (expo[i] + weights[i] * x).ln();
        }
        ln.exp()
    };
    // length over which the integrand changes: 1/q0, or where q_i x overtakes a_i
    let scale = if spec.q0 > 0.0 {
        1.0 / spec.q0
    } else {
        (0..3)
            .filter(|&i| weights[i] > 0.0)
            .map(|i| expo[i] / weights[i])
            .fold(f64::INFINITY, f64::min)
    };
    let out = exp_sinh(integrand, scale, tol, DEFAULT_MAX_LEVEL);
    if !out.converged {
        return Err(Error::NonConvergence {
            value: out.value,
            estimate: out.error,
            terms: out.evaluations,
        });
    }
    Ok(IntegralResult {
        value: out.value,
        abs_error_estimate: out.error,
        terms_used: out.evaluations,
        converged: true,
    })
}

/// `Γ(p1+1)Γ(p2+1)Γ(p3+1) / (a^{p1+1} b^{p2+1} c^{p3+1})`, the value of `B` at
/// `q = (1, 0, 0, 0)`, `s = 1`.
pub fn exponential_moment(a: f64, b: f64, c: f64, p: [f64; 3]) -> Result<f64> {
    let spec = BasicBSpec::exponential(a, b, c, p);
    spec.validate_b()?;
    let ln = ln_gamma_powers(&spec)
        - (p[0] + 1.0) * a.ln()
        - (p[1] + 1.0) * b.ln()
        - (p[2] + 1.0) * c.ln();
    Ok(ln.exp())
}

/// Closed form of `G`; `a`, `b`, `c` are not used.
pub fn power_g(spec: &BasicBSpec) -> Result<IntegralResult> {
    spec.validate_g()?;
    let rest = spec.s - spec.p1 - spec.p2 - spec.p3 - 3.0;
    let mut ln = ln_gamma_powers(spec) - ln_gamma(spec.s) + ln_gamma(rest) - rest * spec.q0.ln();
    for (p, q) in spec.powers().iter().zip(spec.weights()) {
        ln -= (p + 1.0) * q.ln();
    }
    Ok(IntegralResult::exact(ln.exp(), 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_exponential_moment() {
        let s = BasicBSpec::exponential(1.0, 1.0, 1.0, [0.0; 3]);
        assert!(rel(basic_b(&s).unwrap().value, 1.0) < 1e-13);
    }

    #[test]
    fn integer_powers() {
        let s = BasicBSpec::exponential(2.0, 3.0, 4.0, [1.0, 2.0, 3.0]);
        let want = 1.0 * 2.0 * 6.0 / (4.0 * 27.0 * 256.0);
        assert!(rel(basic_b(&s).unwrap().value, want) < 1e-12);
        assert!(rel(exponential_moment(2.0, 3.0, 4.0, [1.0, 2.0, 3.0]).unwrap(), want) < 1e-14);
    }

    #[test]
    fn power_g_examples() {
        let s = BasicBSpec::exponential(1.0, 1.0, 1.0, [0.0; 3]).with_denominator([1.0; 4], 4.0);
        assert!(rel(power_g(&s).unwrap().value, 1.0 / 6.0) < 1e-14);
        let s = s.with_denominator([1.0; 4], 3.0);
        assert!(power_g(&s).is_err());
        let s = s.with_denominator([1.0, 0.0, 1.0, 1.0], 5.0);
        assert!(power_g(&s).is_err());
    }

    #[test]
    fn zero_q0_needs_algebraic_decay() {
        let s = BasicBSpec::exponential(1.0, 1.0, 1.0, [0.0; 3]).with_denominator([0.0, 1.0, 1.0, 1.0], 2.0);
        let r = basic_b(&s).unwrap().value;
        // x^{s-1}/(1+x)^3 integrates to 1/2, over Γ(2) = 1
        assert!(rel(r, 0.5) < 1e-12);
        let s = s.with_denominator([0.0, 1.0, 0.0, 0.0], 1.0);
        assert!(basic_b(&s).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(basic_b(&BasicBSpec::exponential(0.0, 1.0, 1.0, [0.0; 3])).is_err());
        assert!(basic_b(&BasicBSpec::exponential(1.0, 1.0, 1.0, [-0.5, 0.0, 0.0])).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn reduction_matches_closed_form(
            a in 0.3f64..4.0, b in 0.3f64..4.0, c in 0.3f64..4.0,
            p1 in 0.0f64..4.0, p2 in 0.0f64..4.0, p3 in 0.0f64..4.0,
        ) {
            let s = BasicBSpec::exponential(a, b, c, [p1, p2, p3]);
            let got = basic_b(&s).unwrap().value;
            let want = exponential_moment(a, b, c, [p1, p2, p3]).unwrap();
            prop_assert!(rel(got, want) <= 1e-12);
        }

        #[test]
        fn g_is_homogeneous_in_q0(p1 in 0.0f64..2.0, s_extra in 0.5f64..3.0, lam in 0.5f64..3.0) {
            // G(q0) = G(1) q0^{-(s-P-3)}
            let s = p1 + 3.0 + s_extra;
            let one = BasicBSpec::exponential(1.0, 1.0, 1.0, [p1, 0.0, 0.0]).with_denominator([1.0, 1.0, 2.0, 0.5], s);
            let scaled = one.with_denominator([lam, 1.0, 2.0, 0.5], s);
            let g1 = power_g(&one).unwrap().value;
            let gl = power_g(&scaled).unwrap().value;
            prop_assert!(rel(gl, g1 * lam.powf(-s_extra)) <= 1e-13);
        }
    }
}
