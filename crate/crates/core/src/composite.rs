//! Integrals of kernels built from other kernels: finite power series in r32
//! (optionally damped term by term) and the generating function
//!
//! ```text
//! cos sqrt(r² - 2tr) = Σ_κ t^κ/κ! · r j_{κ-1}(r)
//! ```
//!
//! which turns `J(t) = ∫∫∫ r32^k r31^l r21^n cos sqrt(r32² - 2t r32) exp(...) d³r` into a
//! sum of single-Bessel integrals `B^(κ-1)_{k+1;l;n}(V=1)`.

use serde::Serialize;

use crate::bessel_single::{bessel0_integral, bessel1_integral, bessel_l_integral, BesselIntegralSpec};
use crate::error::{domain, Error, Result};
use crate::gamma::gamma_klm;
use crate::numeric::NeumaierSum;
use crate::series::SeriesControl;
use crate::types::{ExpParams, IntegralResult, PowerIndices};

/// One term `A r^n exp(-B r)` of a series in r32.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub coeff: f64,
    pub power: u32,
    /// `B`; ignored unless the series is integrated as damped.
    pub damping: Option<f64>,
}

/// A finite series `f(r32) = Σ A_n r32^n [exp(-B_n r32)]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SeriesFunction {
    pub terms: Vec<SeriesTerm>,
}

impl SeriesFunction {
    pub fn new(terms: Vec<SeriesTerm>) -> Self {
        Self { terms }
    }

    pub fn power(coeff: f64, power: u32) -> SeriesTerm {
        SeriesTerm {
            coeff,
            power,
            damping: None,
        }
    }

    pub fn damped(coeff: f64, power: u32, damping: f64) -> SeriesTerm {
        SeriesTerm {
            coeff,
            power,
            damping: Some(damping),
        }
    }
}

/// `Σ A_n Γ_{n+1;1;1}(α [+ B_n], β, γ)`: the matrix element of the series in r32
/// between the basis functions, volume element included.
pub fn series_integral(f: &SeriesFunction, params: ExpParams, damped: bool) -> Result<IntegralResult> {
    params.validate()?;
    let mut acc = NeumaierSum::new();
    let mut magnitude = 0.0;
    for (i, term) in f.terms.iter().enumerate() {
        let p = match (damped, term.damping) {
            (true, Some(b)) => {
                if !(b >= 0.0) || !b.is_finite() {
                    return Err(domain(format!("term {i}: damping must be finite and >= 0, got {b}")));
                }
                params.shifted(b, 0.0, 0.0)
            }
            _ => params,
        };
        let g = gamma_klm(PowerIndices::new(term.power + 1, 1, 1), p).map_err(|e| match e {
            Error::Domain(m) => Error::Domain(format!("term {i}: {m}")),
            Error::Overflow(m) => Error::Overflow(format!("term {i}: {m}")),
            other => other,
        })?;
        let v = term.coeff * g.value;
        magnitude += v.abs();
        acc.add(v);
    }
    Ok(IntegralResult {
        value: acc.value(),
        abs_error_estimate: 4.0 * f64::EPSILON * magnitude,
        terms_used: f.terms.len(),
        converged: true,
    })
}

/// `∫∫∫ r32^{k-1} r31^l r21^n cos(V r32) exp(...) d³r`, i.e. `V` times the
/// integral with `j_{-1}(V r32)` at power `k`, from `cos x = j_0(x) - x j_1(x)`:
/// `B^(0)_{k-1;l;n}(V) - V B^(1)_{k;l;n}(V)`. The two coincide at `V = 1`.
pub fn bessel_neg1_integral(
    idx: PowerIndices,
    params: ExpParams,
    v: f64,
    ctl: &SeriesControl,
) -> Result<IntegralResult> {
    if idx.k == 0 {
        return Err(domain(
            "j_{-1} integral needs k >= 1: cos(Vr)/r is not integrable against r^0",
        ));
    }
    let lower = PowerIndices::new(idx.k - 1, idx.l, idx.n);
    let b0 = bessel0_integral(&BesselIntegralSpec::new(lower, params, v, 0), ctl)?;
    if v == 0.0 {
        return Ok(b0);
    }
    let b1 = bessel1_integral(&BesselIntegralSpec::new(idx, params, v, 1), ctl)?;
    Ok(IntegralResult {
        value: b0.value - v * b1.value,
        abs_error_estimate: b0.abs_error_estimate + v * b1.abs_error_estimate,
        terms_used: b0.terms_used + b1.terms_used,
        converged: b0.converged && b1.converged,
    })
}

/// Inputs of the shifted-cosine integral `J(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JSpec {
    pub idx: PowerIndices,
    pub params: ExpParams,
    pub t: f64,
    pub kappa_max: usize,
}

impl JSpec {
    pub fn new(idx: PowerIndices, params: ExpParams, t: f64) -> Self {
        Self {
            idx,
            params,
            t,
            kappa_max: 60,
        }
    }
}

/// `cos sqrt(w)` continued to `w < 0` as `cosh sqrt(-w)`.
pub fn cos_sqrt(w: f64) -> f64 {
    if w >= 0.0 {
        w.sqrt().cos()
    } else {
        (-w).sqrt().cosh()
    }
}

/// `J(t) = Σ_κ t^κ/κ! B^(κ-1)_{k+1;l;n}(α,β,γ; 1)`, the κ = 0 term through
/// [`bessel_neg1_integral`]. Inner Bessel series use `ctl`; the κ-sum stops
/// under the same stall rule, capped at `kappa_max`.
pub fn j_integral(spec: &JSpec, ctl: &SeriesControl) -> Result<IntegralResult> {
    spec.params.validate()?;
    ctl.validate()?;
    if !spec.t.is_finite() {
        return Err(domain(format!("t must be finite, got {}", spec.t)));
    }
    if spec.kappa_max < 1 {
        return Err(domain("kappa_max must be positive"));
    }
    let shifted = PowerIndices::new(spec.idx.k + 1, spec.idx.l, spec.idx.n);
    let mut acc = NeumaierSum::new();
    let mut err = 0.0;
    let mut stalled = 0;
    let mut factor = 1.0; // t^κ/κ!
    let mut last = 0.0f64;
    for kappa in 0..spec.kappa_max {
        if kappa > 0 {
            factor *= spec.t / kappa as f64;
        }
        let b = if kappa == 0 {
            bessel_neg1_integral(shifted, spec.params, 1.0, ctl)?
        } else if factor == 0.0 {
            IntegralResult::exact(0.0, 0)
        } else {
            let s = BesselIntegralSpec::new(shifted, spec.params, 1.0, kappa as u32 - 1);
            bessel_l_integral(&s, ctl)?
        };
        let b = b.require_converged()?;
        let term = factor * b.value;
        acc.add(term);
        err += factor.abs() * b.abs_error_estimate;
        last = term;
        if term.abs() <= ctl.rel_tol * acc.value().abs() {
            stalled += 1;
        } else {
            stalled = 0;
        }
        if stalled >= ctl.stall_count {
            return Ok(IntegralResult {
                value: acc.value(),
                abs_error_estimate: err + last.abs(),
                terms_used: kappa + 1,
                converged: true,
            });
        }
    }
    Ok(IntegralResult {
        value: acc.value(),
        abs_error_estimate: err + last.abs(),
        terms_used: spec.kappa_max,
        converged: false,
    })
}
