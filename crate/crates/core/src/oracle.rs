//! Brute-force quadrature of three-body integrals, independent of every
//! series and closed form in the crate.
//!
//! In perimetric coordinates `r32 = u2+u3`, `r31 = u1+u3`, `r21 = u1+u2` the
//! domain factorizes, the Jacobian is 2 and the exponential becomes
//! `exp(-(β+γ) u1 - (α+γ) u2 - (α+β) u3)`. Each axis gets a Gauss-Laguerre
//! rule scaled to its own decay rate.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::numeric::quad::{exp_sinh, exp_sinh_window, DEFAULT_MAX_LEVEL};
use crate::numeric::{GaussLaguerre, NeumaierSum};
use crate::types::{ExpParams, IntegralResult, RelativePoint};

pub const MIN_ORACLE_NODES: usize = 16;
/// Largest per-axis rule tried while refining.
pub const MAX_ORACLE_NODES: usize = 384;

const TENSOR_TMAX: f64 = 4.5;

/// A three-body integral `∫∫∫ f(r) [r32 r31 r21] exp(-α r32 - β r31 - γ r21) dr`.
pub struct OracleSpec<F> {
    pub integrand: F,
    pub params: ExpParams,
    /// Multiply by `r32 r31 r21`.
    pub include_volume_weight: bool,
    /// Starting rule size per axis; doubled until two rules agree to `tol`.
    pub nodes_per_axis: usize,
    pub tol: f64,
}

impl<F> OracleSpec<F>
where
    F: Fn(RelativePoint) -> f64 + Sync,
{
    pub fn new(integrand: F, params: ExpParams) -> Self {
        Self {
            integrand,
            params,
            include_volume_weight: false,
            nodes_per_axis: 48,
            tol: 1e-10,
        }
    }

    pub fn with_volume_weight(self, on: bool) -> Self {
        Self {
            include_volume_weight: on,
            ..self
        }
    }

    pub fn with_nodes(self, nodes_per_axis: usize) -> Self {
        Self {
            nodes_per_axis,
            ..self
        }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.nodes_per_axis < MIN_ORACLE_NODES {
            return Err(domain(format!(
                "nodes_per_axis must be >= {MIN_ORACLE_NODES}, got {}",
                self.nodes_per_axis
            )));
        }
        if !(self.tol > 0.0) {
            return Err(domain(format!("oracle tolerance must be > 0, got {}", self.tol)));
        }
        Ok(())
    }

    /// The tensor rule with `n` nodes per axis.
    pub fn evaluate_grid(&self, n: usize) -> f64 {
        let rule = GaussLaguerre::cached(n);
        let (ab, ag, bg) = self.params.pair_sums();
        let rates = [bg, ag, ab];
        let axis = |r: f64| -> Vec<(f64, f64)> {
            rule.nodes()
                .iter()
                .zip(rule.weights())
                .filter(|(_, &w)| w > 0.0)
                .map(|(&x, &w)| (x / r, w / r))
                .collect()
        };
        let (a1, a2, a3) = (axis(rates[0]), axis(rates[1]), axis(rates[2]));
        // one slab per u1 node, summed in index order afterwards
        let slabs: Vec<f64> = a1
            .par_iter()
            .map(|&(u1, w1)| {
                let mut acc = NeumaierSum::new();
                for &(u2, w2) in &a2 {
                    for &(u3, w3) in &a3 {
                        let p = RelativePoint {
                            r32: u2 + u3,
                            r31: u1 + u3,
                            r21: u1 + u2,
                        };
                        let mut v = (self.integrand)(p);
                        if self.include_volume_weight {
                            v *= p.r32 * p.r31 * p.r21;
                        }
                        acc.add(w2 * w3 * v);
                    }
                }
                w1 * acc.value()
            })
            .collect();
        2.0 * slabs.into_iter().collect::<NeumaierSum>().value()
    }
}

/// Gauss-Laguerre tensor quadrature over perimetric coordinates.
///
/// The error estimate is the difference between the last two rule sizes.
pub fn quad3d<F>(spec: &OracleSpec<F>) -> Result<IntegralResult>
where
    F: Fn(RelativePoint) -> f64 + Sync,
{
    spec.validate()?;
    let mut n = spec.nodes_per_axis;
    let mut prev = spec.evaluate_grid(n);
    loop {
        let next = spec.evaluate_grid(2 * n);
        let err = (next - prev).abs();
        if err <= spec.tol * next.abs().max(f64::MIN_POSITIVE) || next == 0.0 && prev == 0.0 {
            return Ok(IntegralResult {
                value: next,
                abs_error_estimate: err,
                terms_used: 2 * n,
                converged: true,
            });
        }
        if 4 * n > MAX_ORACLE_NODES {
            return Err(Error::NonConvergence {
                value: next,
                estimate: err,
                terms: 2 * n,
            });
        }
        prev = next;
        n *= 2;
    }
}

/// `∫_0^∞ f(x) dx` for `f` decaying roughly like `exp(-decay_rate x)` (or slower).
pub fn quad1d_semiinfinite<F>(f: F, decay_rate: f64, tol: f64) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    if !(decay_rate > 0.0) || !(tol > 0.0) {
        return Err(domain("decay rate and tolerance must be > 0"));
    }
    let out = exp_sinh(f, 1.0 / decay_rate, tol, DEFAULT_MAX_LEVEL);
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

/// `∫∫∫_{(0,∞)³} f(u1, u2, u3) du` by a tensor exp-sinh rule with per-axis
/// length `scales`; handles endpoint power singularities and algebraic tails.
///
/// Starts at `2m+1` nodes per axis and doubles `m` until two rules agree to `tol`.
/// Nodes span `scale · exp(±70)`; tails beyond that must be negligible.
pub fn quad3d_exp_sinh<F>(f: F, scales: [f64; 3], tol: f64, m: usize) -> Result<IntegralResult>
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    const MAX_M: usize = 256;
    if scales.iter().any(|s| !(*s > 0.0)) || !(tol > 0.0) || m < 4 {
        return Err(domain("scales and tolerance must be > 0 and m >= 4"));
    }
    let rule = |m: usize| -> f64 {
        // u1 nodes of the outer rule, each a 2D inner sum; order fixed by index
        let nodes: Vec<i64> = (-(m as i64)..=(m as i64)).collect();
        let h = TENSOR_TMAX / m as f64;
        let slabs: Vec<f64> = nodes
            .par_iter()
            .map(|&k| {
                let t = k as f64 * h;
                let s = std::f64::consts::FRAC_PI_2 * t.sinh();
                let u1 = scales[0] * s.exp();
                let w1 = scales[0] * std::f64::consts::FRAC_PI_2 * t.cosh() * s.exp() * h;
                if !(u1.is_finite() && w1.is_finite()) || w1 == 0.0 {
                    return 0.0;
                }
                let inner = exp_sinh_window(
                    |u2| exp_sinh_window(|u3| f(u1, u2, u3), scales[2], m, TENSOR_TMAX),
                    scales[1],
                    m,
                    TENSOR_TMAX,
                );
                w1 * inner
            })
            .collect();
        slabs.into_iter().filter(|v| v.is_finite()).collect::<NeumaierSum>().value()
    };
    let mut m = m;
    let mut prev = rule(m);
    loop {
        let next = rule(2 * m);
        let err = (next - prev).abs();
        if err <= tol * next.abs() {
            return Ok(IntegralResult {
                value: next,
                abs_error_estimate: err,
                terms_used: 4 * m + 1,
                converged: true,
            });
        }
        if 2 * m >= MAX_M {
            return Err(Error::NonConvergence {
                value: next,
                estimate: err,
                terms: 4 * m + 1,
            });
        }
        prev = next;
        m *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_klm;
    use crate::types::PowerIndices;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn constant_integrand() {
        let p = ExpParams::new(1.0, 1.0, 1.0).unwrap();
        let r = quad3d(&OracleSpec::new(|_| 1.0, p).with_nodes(16)).unwrap();
        assert!(rel(r.value, 0.25) < 1e-13);
        let r = quad3d(&OracleSpec::new(|_| 1.0, p).with_volume_weight(true).with_nodes(16)).unwrap();
        let g = gamma_klm(PowerIndices::new(1, 1, 1), p).unwrap().value;
        assert!(rel(r.value, g) < 1e-13);
    }

    #[test]
    fn negative_single_exponent() {
        let p = ExpParams::new(2.35, 1.41, -0.567).unwrap();
        let spec = OracleSpec::new(|r: RelativePoint| r.r31 * r.r31 * r.r21, p).with_nodes(16);
        let got = quad3d(&spec).unwrap().value;
        // Table I, first row of the negative column
        assert!(rel(got, 0.484535355001714e1) < 1e-12);
    }

    #[test]
    fn rejects_small_grids() {
        let p = ExpParams::new(1.0, 1.0, 1.0).unwrap();
        assert!(quad3d(&OracleSpec::new(|_| 1.0, p).with_nodes(8)).is_err());
    }

    #[test]
    fn grids_are_deterministic() {
        let p = ExpParams::new(1.3, 0.9, 0.4).unwrap();
        let spec = OracleSpec::new(|r: RelativePoint| (0.7 * r.r32).sin() * r.r21, p);
        assert_eq!(spec.evaluate_grid(32).to_bits(), spec.evaluate_grid(32).to_bits());
    }

    #[test]
    fn one_dimensional_rules() {
        let r = quad1d_semiinfinite(|x| (-x).exp(), 1.0, 1e-13).unwrap();
        assert!(rel(r.value, 1.0) < 1e-13);
        let r = quad1d_semiinfinite(|x| x * (-2.0 * x).exp(), 2.0, 1e-13).unwrap();
        assert!(rel(r.value, 0.25) < 1e-13);
        let k0 = quad1d_semiinfinite(|t| (-t.cosh()).exp(), 1.0, 1e-13).unwrap();
        assert!(rel(k0.value, crate::special::bessel_k0(1.0).unwrap()) < 1e-13);
    }

    #[test]
    fn exp_sinh_tensor_on_separable_power() {
        // ∫ u1^0.5 u2 u3^1.5 e^{-u1-2u2-3u3} = Γ(1.5)Γ(2)Γ(2.5)/(1·4·3^2.5)
        let f = |a: f64, b: f64, c: f64| a.sqrt() * b * c.powf(1.5) * (-a - 2.0 * b - 3.0 * c).exp();
        let r = quad3d_exp_sinh(f, [1.0, 0.5, 1.0 / 3.0], 1e-11, 16).unwrap();
        let want = 0.886226925452758 * 1.329340388179137 / (4.0 * 3f64.powf(2.5));
        assert!(rel(r.value, want) < 1e-11, "{} vs {want}", r.value);
    }
}
