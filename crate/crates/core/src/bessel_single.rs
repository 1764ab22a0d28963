//! Integrals with one spherical Bessel function of a relative coordinate,
//!
//! ```text
//! B^(L)_{k;l;n}(α,β,γ;V) = ∫∫∫ r32^k r31^l r21^n j_L(V r32) exp(-α r32 - β r31 - γ r21) dr32 dr31 dr21
//! ```
//!
//! expanded in the power series of `j_L`, which turns every term into a
//! shifted `Γ_{k+L+2κ;l;n}`. Successive coefficients are produced by their
//! exact ratio, so no factorial is ever formed on its own.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::gamma::GammaEvaluator;
use crate::numeric::{DoubleDouble, Mantissa, Scaled};
use crate::series::{sum_series, SeriesControl};
use crate::types::{Coordinate, ExpParams, IntegralResult, PowerIndices, Precision};

pub use crate::spherical::{spherical_jl, spherical_jl_array};

/// Inputs of a single-Bessel integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BesselIntegralSpec {
    pub idx: PowerIndices,
    pub params: ExpParams,
    /// Wave number `V >= 0`.
    pub v: f64,
    /// Bessel order `L >= 0`.
    pub order: u32,
    /// Coordinate carrying the Bessel function.
    pub on: Coordinate,
}

impl BesselIntegralSpec {
    pub fn new(idx: PowerIndices, params: ExpParams, v: f64, order: u32) -> Self {
        Self {
            idx,
            params,
            v,
            order,
            on: Coordinate::R32,
        }
    }

    pub fn on(self, on: Coordinate) -> Self {
        Self { on, ..self }
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.v >= 0.0) || !self.v.is_finite() {
            return Err(domain(format!("wave number V must be finite and >= 0, got {}", self.v)));
        }
        Ok(())
    }

    /// Indices and exponents relabeled so the Bessel factor acts on r32.
    fn canonical(&self) -> (PowerIndices, ExpParams) {
        self.on.move_to_r32(self.idx, self.params)
    }
}

/// Coefficient recurrence of one series: first coefficient, ratio to the next,
/// and the extra r32 power carried by term `q`. For the general-order series the
/// first coefficient is additionally divided by `(2L+1)!!`.
struct Recurrence {
    first: fn(f64) -> f64,
    general_order: bool,
    ratio: fn(f64, u32, usize) -> f64,
    power: fn(u32, usize) -> u32,
}

fn run<M: Mantissa>(
    rec: &Recurrence,
    idx: PowerIndices,
    params: ExpParams,
    v: f64,
    order: u32,
    ctl: &SeriesControl,
) -> Result<IntegralResult> {
    let mut gamma = GammaEvaluator::<M>::new(params)?;
    let mut coeff = Scaled::<M>::from_f64((rec.first)(v));
    let lead = if rec.general_order {
        v_power::<M>(v, order) / odd_double_factorial::<M>(order)
    } else {
        Scaled::one()
    };
    let mut next_q = 0usize;
    let r = sum_series::<M, _>(ctl, |q| {
        // the driver asks for q in increasing order, plus one look-ahead
        while next_q < q {
            coeff = coeff.mul_f64((rec.ratio)(v, order, next_q));
            next_q += 1;
        }
        if coeff.is_zero() || lead.is_zero() {
            return Scaled::zero();
        }
        let shifted = PowerIndices::new(idx.k + (rec.power)(order, q), idx.l, idx.n);
        lead * coeff * gamma.gamma(shifted)
    });
    Ok(r)
}

/// `(2L+1)!!`
pub(crate) fn odd_double_factorial<M: Mantissa>(order: u32) -> Scaled<M> {
    let mut d = Scaled::<M>::one();
    for j in 1..=order {
        d = d.mul_f64((2 * j + 1) as f64);
    }
    d
}

pub(crate) fn v_power<M: Mantissa>(v: f64, order: u32) -> Scaled<M> {
    if order == 0 {
        Scaled::one()
    } else {
        Scaled::<M>::from_f64(v).powi(order)
    }
}

fn dispatch(
    rec: &Recurrence,
    idx: PowerIndices,
    params: ExpParams,
    v: f64,
    order: u32,
    ctl: &SeriesControl,
) -> Result<IntegralResult> {
    ctl.validate()?;
    match ctl.precision {
        Precision::Standard => run::<f64>(rec, idx, params, v, order, ctl),
        Precision::Extended => run::<DoubleDouble>(rec, idx, params, v, order, ctl),
    }
}

// j_0: Σ (-1)^q V^{2q}/(2q+1)! Γ_{k+2q}
const J0: Recurrence = Recurrence {
    first: |_| 1.0,
    general_order: false,
    ratio: |v, _, q| -v * v / ((2 * q + 2) as f64 * (2 * q + 3) as f64),
    power: |_, q| 2 * q as u32,
};

// j_1: Σ (-1)^q (2q+2) V^{2q+1}/(2q+3)! Γ_{k+2q+1}; the single V is folded in `first`.
const J1: Recurrence = Recurrence {
    first: |v| v / 3.0,
    general_order: false,
    ratio: |v, _, q| -v * v / ((2 * q + 2) as f64 * (2 * q + 5) as f64),
    power: |_, q| 2 * q as u32 + 1,
};

// j_L: V^L Σ (-1)^κ V^{2κ}/(2^κ κ! (2L+2κ+1)!!) Γ_{k+L+2κ}; V^L/(2L+1)!! applied separately.
const JL: Recurrence = Recurrence {
    first: |_| 1.0,
    general_order: true,
    ratio: |v, order, q| -v * v / (2.0 * (q + 1) as f64 * (2 * order as usize + 2 * q + 3) as f64),
    power: |order, q| order + 2 * q as u32,
};

/// `B^(0)`: the integral with `j_0(V r)`.
pub fn bessel0_integral(spec: &BesselIntegralSpec, ctl: &SeriesControl) -> Result<IntegralResult> {
    spec.validate()?;
    let (idx, params) = spec.canonical();
    dispatch(&J0, idx, params, spec.v, 0, ctl)
}

/// `B^(1)`: the integral with `j_1(V r)`.
pub fn bessel1_integral(spec: &BesselIntegralSpec, ctl: &SeriesControl) -> Result<IntegralResult> {
    spec.validate()?;
    let (idx, params) = spec.canonical();
    dispatch(&J1, idx, params, spec.v, 0, ctl)
}

/// `B^(L)` for any `L >= 0` from the general power series of `j_L`.
pub fn bessel_l_integral(spec: &BesselIntegralSpec, ctl: &SeriesControl) -> Result<IntegralResult> {
    spec.validate()?;
    let (idx, params) = spec.canonical();
    if spec.order > 0 && spec.v == 0.0 {
        return Ok(IntegralResult::exact(0.0, 1));
    }
    dispatch(&JL, idx, params, spec.v, spec.order, ctl)
}
