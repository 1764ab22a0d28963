//! Truncation control shared by all infinite series.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::numeric::{Mantissa, Scaled, ScaledSum};
use crate::types::{IntegralResult, Precision};

/// When to stop summing a convergent series.
///
/// The sum stops once `stall_count` consecutive terms satisfy
/// `|term| <= rel_tol * |partial sum|`, or after `q_max` terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub q_max: usize,
    pub stall_count: usize,
    pub precision: Precision,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            q_max: 120,
            stall_count: 3,
            precision: Precision::Standard,
        }
    }
}

impl SeriesControl {
    /// Defaults for the two-Bessel double series (outer cap 150).
    pub fn double_default() -> Self {
        Self {
            q_max: 150,
            ..Self::default()
        }
    }

    pub fn with_q_max(self, q_max: usize) -> Self {
        Self { q_max, ..self }
    }

    pub fn with_precision(self, precision: Precision) -> Self {
        Self { precision, ..self }
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= f64::EPSILON) || !self.rel_tol.is_finite() {
            return Err(domain(format!(
                "series tolerance must be at least machine epsilon, got {}",
                self.rel_tol
            )));
        }
        if self.q_max < 1 || self.stall_count < 1 {
            return Err(domain("q_max and stall_count must be positive"));
        }
        Ok(())
    }
}

/// Sums `term(0), term(1), ...` under `ctl`.
///
/// On convergence the error estimate is the magnitude of the first omitted term.
pub(crate) fn sum_series<M, F>(ctl: &SeriesControl, mut term: F) -> IntegralResult
where
    M: Mantissa,
    F: FnMut(usize) -> Scaled<M>,
{
    let ln_tol = ctl.rel_tol.ln();
    let mut acc = ScaledSum::<M>::new();
    let mut stalled = 0usize;
    let mut last = Scaled::<M>::zero();
    for q in 0..ctl.q_max {
        let t = term(q);
        acc.add(t);
        last = t;
        let partial = acc.value();
        if t.is_zero() || t.ln_abs() <= ln_tol + partial.ln_abs() {
            stalled += 1;
        } else {
            stalled = 0;
        }
        if stalled >= ctl.stall_count {
            let omitted = term(q + 1);
            return IntegralResult {
                value: partial.to_f64(),
                abs_error_estimate: omitted.abs().to_f64(),
                terms_used: q + 1,
                converged: true,
            };
        }
    }
    IntegralResult {
        value: acc.value().to_f64(),
        abs_error_estimate: last.abs().to_f64(),
        terms_used: ctl.q_max,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_series() {
        // e = Σ 1/q!
        let mut c = Scaled::<f64>::one();
        let r = sum_series(&SeriesControl::default(), |q| {
            if q > 0 {
                c = c.div_f64(q as f64);
            }
            c
        });
        assert!(r.converged);
        assert!((r.value - std::f64::consts::E).abs() < 4e-16);
        assert!(r.abs_error_estimate <= 1e-15 * r.value);
    }

    #[test]
    fn divergent_series_reports_non_convergence() {
        let r = sum_series::<f64, _>(&SeriesControl::default().with_q_max(10), |q| {
            Scaled::from_f64(q as f64)
        });
        assert!(!r.converged);
        assert_eq!(r.terms_used, 10);
        assert_eq!(r.value, 45.0);
    }

    #[test]
    fn rejects_sub_epsilon_tolerance() {
        assert!(SeriesControl::default().with_rel_tol(1e-20).validate().is_err());
    }
}
