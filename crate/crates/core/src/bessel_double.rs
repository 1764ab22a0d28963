//! Integrals with two spherical Bessel functions sharing the wave number `V`,
//! one on r32 and one on r31:
//!
//! ```text
//! B^(L1 L2)_{k;l;n} = ∫∫∫ r32^k r31^l r21^n j_L1(V r32) j_L2(V r31) exp(...) d³r
//!   = V^{L1+L2} Σ_p (-1)^p V^{2p} Σ_{q=0}^{p} a_q b_{p-q} Γ_{k+L1+2q; l+L2+2p-2q; n}
//! ```
//!
//! with `a_q = 1/(2^q q! (2L1+2q+1)!!)` and `b_r` likewise for `L2`.

use serde::Serialize;

use crate::bessel_single::{odd_double_factorial, v_power};
use crate::error::{domain, Result};
use crate::gamma::GammaEvaluator;
use crate::numeric::{DoubleDouble, Mantissa, Scaled, ScaledSum};
use crate::series::{sum_series, SeriesControl};
use crate::types::{ExpParams, IntegralResult, PowerIndices, Precision};

/// Inputs of a two-Bessel integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DoubleBesselSpec {
    pub idx: PowerIndices,
    pub params: ExpParams,
    pub v: f64,
    /// Order of the Bessel function on r32.
    pub l1: u32,
    /// Order of the Bessel function on r31.
    pub l2: u32,
}

impl DoubleBesselSpec {
    pub fn new(idx: PowerIndices, params: ExpParams, v: f64, l1: u32, l2: u32) -> Self {
        Self {
            idx,
            params,
            v,
            l1,
            l2,
        }
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        check_wave_number(self.v)
    }
}

fn check_wave_number(v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain(format!("wave number V must be finite and >= 0, got {v}")));
    }
    Ok(())
}

/// Power-series coefficients of `j_L(x)/x^L`, without the alternating sign.
struct Coefficients<M> {
    order: u32,
    values: Vec<Scaled<M>>,
}

impl<M: Mantissa> Coefficients<M> {
    fn new(order: u32) -> Self {
        Self {
            order,
            values: vec![Scaled::one() / odd_double_factorial::<M>(order)],
        }
    }

    fn get(&mut self, q: usize) -> Scaled<M> {
        while self.values.len() <= q {
            let j = self.values.len();
            let prev = *self.values.last().unwrap();
            let d = 2.0 * j as f64 * (2 * self.order as usize + 2 * j + 1) as f64;
            self.values.push(prev.div_f64(d));
        }
        self.values[q]
    }
}

fn run_double<M: Mantissa>(spec: &DoubleBesselSpec, ctl: &SeriesControl) -> Result<IntegralResult> {
    let mut gamma = GammaEvaluator::<M>::new(spec.params)?;
    let mut a = Coefficients::<M>::new(spec.l1);
    let mut b = Coefficients::<M>::new(spec.l2);
    let lead = v_power::<M>(spec.v, spec.l1 + spec.l2);
    let step = Scaled::<M>::from_f64(-spec.v * spec.v);
    let idx = spec.idx;
    Ok(sum_series::<M, _>(ctl, |p| {
        let coeff = step.powi(p as u32);
        if coeff.is_zero() {
            return Scaled::zero();
        }
        let mut inner = ScaledSum::<M>::new();
        for q in 0..=p {
            let r = p - q;
            let shifted = PowerIndices::new(
                idx.k + spec.l1 + 2 * q as u32,
                idx.l + spec.l2 + 2 * r as u32,
                idx.n,
            );
            inner.add(a.get(q) * b.get(r) * gamma.gamma(shifted));
        }
        lead * coeff * inner.value()
    }))
}

/// Largest `V` for which the double series converges absolutely:
/// `min((α+β)/2, α+γ, β+γ)`.
pub fn convergence_radius(params: ExpParams) -> f64 {
    let (ab, ag, bg) = params.pair_sums();
    (0.5 * ab).min(ag).min(bg)
}

/// `B^(L1 L2)_{k;l;n}(α,β,γ;V)`.
///
/// Use [`SeriesControl::double_default`] for the usual outer cap on `p`.
/// Convergence slows as `V` approaches [`convergence_radius`].
pub fn double_bessel_integral(spec: &DoubleBesselSpec, ctl: &SeriesControl) -> Result<IntegralResult> {
    spec.validate()?;
    ctl.validate()?;
    if spec.v == 0.0 && spec.l1 + spec.l2 > 0 {
        return Ok(IntegralResult::exact(0.0, 1));
    }
    match ctl.precision {
        Precision::Standard => run_double::<f64>(spec, ctl),
        Precision::Extended => run_double::<DoubleDouble>(spec, ctl),
    }
}

fn run_sin_sin<M: Mantissa>(
    idx: PowerIndices,
    params: ExpParams,
    v: f64,
    ctl: &SeriesControl,
) -> Result<IntegralResult> {
    let mut gamma = GammaEvaluator::<M>::new(params)?;
    let v2 = Scaled::<M>::from_f64(v * v);
    // (-1)^κ V^{2κ+2}/(2κ+2)!, advanced by ratio
    let mut coeff = v2.div_f64(2.0);
    let mut next = 0usize;
    Ok(sum_series::<M, _>(ctl, |kappa| {
        while next < kappa {
            let m = (2 * next + 3) as f64 * (2 * next + 4) as f64;
            coeff = -(coeff * v2).div_f64(m);
            next += 1;
        }
        let top = 2 * kappa + 2;
        let mut inner = ScaledSum::<M>::new();
        // C(top, m) for odd m = 2μ+1, stepped along the row
        let mut binom = Scaled::<M>::from_f64(top as f64);
        for mu in 0..=kappa {
            if mu > 0 {
                let m = 2 * mu - 1;
                binom = binom
                    .mul_f64((top - m) as f64)
                    .mul_f64((top - m - 1) as f64)
                    .div_f64((m + 1) as f64)
                    .div_f64((m + 2) as f64);
            }
            let shifted = PowerIndices::new(
                idx.k + 2 * mu as u32 + 1,
                idx.l + (2 * kappa - 2 * mu) as u32 + 1,
                idx.n,
            );
            inner.add(binom * gamma.gamma(shifted));
        }
        coeff * inner.value()
    }))
}

/// `∫∫∫ r32^k r31^l r21^n sin(V r32) sin(V r31) exp(...) d³r` from the double
/// series of the two sines, grouped by total power.
pub fn sin_sin_integral(
    idx: PowerIndices,
    params: ExpParams,
    v: f64,
    ctl: &SeriesControl,
) -> Result<IntegralResult> {
    params.validate()?;
    ctl.validate()?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(domain(format!("sin·sin integral needs finite V > 0, got {v}")));
    }
    match ctl.precision {
        Precision::Standard => run_sin_sin::<f64>(idx, params, v, ctl),
        Precision::Extended => run_sin_sin::<DoubleDouble>(idx, params, v, ctl),
    }
}

/// The `p+1` inner terms of order `p` in the expansion of `j_L1(a x) j_L2(b y)`.
pub fn product_jj_terms(l1: u32, l2: u32, a: f64, b: f64, x: f64, y: f64, p: usize) -> Vec<f64> {
    let mut ca = Coefficients::<f64>::new(l1);
    let mut cb = Coefficients::<f64>::new(l2);
    let (ax, by) = (a * x, b * y);
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    (0..=p)
        .map(|q| {
            let r = p - q;
            let pa = Scaled::<f64>::from_f64(ax).powi(l1 + 2 * q as u32);
            let pb = Scaled::<f64>::from_f64(by).powi(l2 + 2 * r as u32);
            sign * (ca.get(q) * cb.get(r) * pa * pb).to_f64()
        })
        .collect()
}

/// Truncated double series for `j_L1(a x) j_L2(b y)`, orders `p = 0..=p_max`.
pub fn product_jj_series(l1: u32, l2: u32, a: f64, b: f64, x: f64, y: f64, p_max: usize) -> f64 {
    (0..=p_max)
        .flat_map(|p| product_jj_terms(l1, l2, a, b, x, y, p))
        .collect::<crate::numeric::NeumaierSum>()
        .value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel_single::spherical_jl;
    use crate::gamma::gamma_klm;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn ctl() -> SeriesControl {
        SeriesControl::double_default()
    }

    #[test]
    fn radius_examples() {
        let r = convergence_radius(ExpParams::new(2.0, 2.0, 1.0).unwrap());
        assert_eq!(r, 2.0);
        let r = convergence_radius(ExpParams::new(3.0, 3.0, 0.5).unwrap());
        assert_eq!(r, 3.0);
    }

    #[test]
    fn zero_wave_number_is_gamma() {
        let p = ExpParams::new(2.0, 2.0, 1.0).unwrap();
        let idx = PowerIndices::new(1, 2, 1);
        let s = DoubleBesselSpec::new(idx, p, 0.0, 0, 0);
        assert_eq!(
            double_bessel_integral(&s, &ctl()).unwrap().value,
            gamma_klm(idx, p).unwrap().value
        );
        let s = DoubleBesselSpec { l2: 2, ..s };
        assert_eq!(double_bessel_integral(&s, &ctl()).unwrap().value, 0.0);
    }

    #[test]
    fn product_series_matches_direct_product() {
        let want = spherical_jl(0, 0.7).unwrap() * spherical_jl(1, 1.3).unwrap();
        let got = product_jj_series(0, 1, 1.0, 1.0, 0.7, 1.3, 40);
        assert!(rel(got, want) < 1e-14);
        assert_eq!(product_jj_series(0, 0, 1.0, 1.0, 0.0, 0.0, 10), 1.0);
        for p in 0..6 {
            assert_eq!(product_jj_terms(2, 3, 1.0, 0.5, 1.0, 2.0, p).len(), p + 1);
        }
        let want = spherical_jl(3, 2.2).unwrap() * spherical_jl(2, 0.9).unwrap();
        let got = product_jj_series(3, 2, 1.1, 0.3, 2.0, 3.0, 60);
        assert!(rel(got, want) < 1e-13);
    }

    #[test]
    fn sin_sin_is_v_squared_times_b00() {
        let p = ExpParams::new(2.0, 2.0, 1.0).unwrap();
        for (k, l, n, v) in [(0, 0, 1, 0.5), (1, 2, 0, 1.0), (3, 1, 2, 1.2), (0, 0, 0, 1.5)] {
            let ss = sin_sin_integral(PowerIndices::new(k, l, n), p, v, &ctl()).unwrap();
            let spec = DoubleBesselSpec::new(PowerIndices::new(k + 1, l + 1, n), p, v, 0, 0);
            let b = double_bessel_integral(&spec, &ctl()).unwrap();
            assert!(rel(ss.value, v * v * b.value) < 1e-12, "{k} {l} {n} {v}");
        }
    }

    #[test]
    fn sin_sin_small_v_limit() {
        let p = ExpParams::new(1.0, 1.5, 0.5).unwrap();
        let v = 1e-5;
        let ss = sin_sin_integral(PowerIndices::new(0, 1, 1), p, v, &ctl()).unwrap().value;
        let g = gamma_klm(PowerIndices::new(1, 2, 1), p).unwrap().value;
        assert!(rel(ss / (v * v), g) < 1e-8);
    }

    #[test]
    fn matches_term_by_term_product_with_gamma() {
        // Γ-weighted sum of the product-series cells, built independently
        let p = ExpParams::new(2.35, 1.41, 0.567).unwrap();
        let (v, l1, l2) = (0.8f64, 1u32, 2u32);
        let idx = PowerIndices::new(1, 0, 2);
        let mut total = 0.0;
        for pp in 0..40usize {
            for q in 0..=pp {
                let r = pp - q;
                let ca: f64 = (1..=q).map(|j| 2.0 * j as f64 * (2 * l1 as usize + 2 * j + 1) as f64).product();
                let cb: f64 = (1..=r).map(|j| 2.0 * j as f64 * (2 * l2 as usize + 2 * j + 1) as f64).product();
                let d1: f64 = (1..=l1).map(|j| (2 * j + 1) as f64).product();
                let d2: f64 = (1..=l2).map(|j| (2 * j + 1) as f64).product();
                let g = gamma_klm(
                    PowerIndices::new(idx.k + l1 + 2 * q as u32, idx.l + l2 + 2 * r as u32, idx.n),
                    p,
                )
                .unwrap()
                .value;
                let sign = if pp % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * v.powi((l1 + l2) as i32 + 2 * pp as i32) / (ca * cb * d1 * d2) * g;
            }
        }
        let s = DoubleBesselSpec::new(idx, p, v, l1, l2);
        let got = double_bessel_integral(&s, &ctl()).unwrap().value;
        assert!(rel(got, total) < 1e-13, "{got} vs {total}");
    }

    #[test]
    fn extended_precision_agrees() {
        let p = ExpParams::new(2.35, 1.41, 0.567).unwrap();
        let s = DoubleBesselSpec::new(PowerIndices::new(2, 2, 1), p, 1.5, 1, 0);
        let a = double_bessel_integral(&s, &ctl()).unwrap().value;
        let b = double_bessel_integral(&s, &ctl().with_precision(Precision::Extended)).unwrap().value;
        assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ExpParams::new(1.0, 1.0, 1.0).unwrap();
        let idx = PowerIndices::new(0, 0, 0);
        assert!(sin_sin_integral(idx, p, 0.0, &ctl()).is_err());
        let s = DoubleBesselSpec::new(idx, p, -0.1, 0, 0);
        assert!(double_bessel_integral(&s, &ctl()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn order_and_coordinate_swap_symmetry(
            k in 0u32..4, l in 0u32..4, n in 0u32..3,
            l1 in 0u32..3, l2 in 0u32..3,
            a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.3f64..2.0,
            frac in 0.05f64..0.5,
        ) {
            let v = frac * convergence_radius(ExpParams::new(a, b, c).unwrap());
            let s = DoubleBesselSpec::new(PowerIndices::new(k, l, n), ExpParams::new(a, b, c).unwrap(), v, l1, l2);
            let t = DoubleBesselSpec::new(PowerIndices::new(l, k, n), ExpParams::new(b, a, c).unwrap(), v, l2, l1);
            let x = double_bessel_integral(&s, &ctl()).unwrap().value;
            let y = double_bessel_integral(&t, &ctl()).unwrap().value;
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300));
        }
    }
}
