//! The polynomial moment integral
//!
//! ```text
//! Γ_{k;l;n}(α,β,γ) = ∫∫∫ r32^k r31^l r21^n exp(-α r32 - β r31 - γ r21) dr32 dr31 dr21
//! ```
//!
//! evaluated as the finite triple sum over binomial-weighted products of
//! Larson functions `A_m(X) = m!/X^{m+1}` at `X ∈ {α+β, α+γ, β+γ}`.
//! Every factor is carried as a mantissa with a separate binary exponent, so
//! indices in the hundreds neither overflow nor lose accuracy.

use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};
use crate::numeric::{DoubleDouble, Mantissa, Scaled};
use crate::types::{ExpParams, IntegralResult, PowerIndices, Precision};

/// `A_m(X)` tables for the three pair sums of one parameter set.
///
/// Grows on demand, so a single evaluator serves a whole series.
#[derive(Clone, Debug)]
pub struct GammaEvaluator<M> {
    params: ExpParams,
    // [α+β, α+γ, β+γ]
    rates: [M; 3],
    larson: [Vec<Scaled<M>>; 3],
    binomials: Vec<Vec<Scaled<M>>>,
}

const AB: usize = 0;
const AG: usize = 1;
const BG: usize = 2;

impl<M: Mantissa> GammaEvaluator<M> {
    pub fn new(params: ExpParams) -> Result<Self> {
        params.validate()?;
        let rates = [
            M::from_sum(params.alpha, params.beta),
            M::from_sum(params.alpha, params.gamma),
            M::from_sum(params.beta, params.gamma),
        ];
        let larson = rates.map(|x| vec![Scaled::one() / Scaled::from_mantissa(x)]);
        Ok(Self {
            params,
            rates,
            larson,
            binomials: vec![vec![Scaled::one()]],
        })
    }

    pub fn params(&self) -> ExpParams {
        self.params
    }

    fn larson(&mut self, which: usize, m: usize) -> Scaled<M> {
        let table = &mut self.larson[which];
        let x = Scaled::from_mantissa(self.rates[which]);
        while table.len() <= m {
            let j = table.len();
            let next = table[j - 1].mul_f64(j as f64) / x;
            table.push(next);
        }
        table[m]
    }

    fn ensure_binomial_row(&mut self, row: usize) {
        while self.binomials.len() <= row {
            let n = self.binomials.len();
            let mut r = Vec::with_capacity(n + 1);
            let mut c = Scaled::<M>::one();
            r.push(c);
            for j in 0..n {
                c = c.mul_f64((n - j) as f64).div_f64((j + 1) as f64);
                r.push(c);
            }
            self.binomials.push(r);
        }
    }

    /// `Γ_{k;l;n}` as a scaled number (never overflows).
    pub fn gamma(&mut self, idx: PowerIndices) -> Scaled<M> {
        let (k, l, n) = (idx.k as usize, idx.l as usize, idx.n as usize);
        self.ensure_binomial_row(k.max(l).max(n));
        // make sure the tables reach the largest Larson index used below
        self.larson(AB, l + k);
        self.larson(AG, k + n);
        self.larson(BG, n + l);

        // All summands are positive: multiply raw mantissas (each in [0.5, 1)),
        // add exponents, and accumulate at a running reference exponent.
        let mut acc = PositiveSum::<M>::new();
        for k1 in 0..=k {
            let ck = self.binomials[k][k1];
            for l1 in 0..=l {
                let cl = self.binomials[l][l1];
                let a = self.larson[AB][l - l1 + k1];
                let om = ck.mantissa() * cl.mantissa() * a.mantissa();
                let oe = ck.exponent() + cl.exponent() + a.exponent();
                for n1 in 0..=n {
                    let cn = self.binomials[n][n1];
                    let b = self.larson[AG][k - k1 + n1];
                    let c = self.larson[BG][n - n1 + l1];
                    acc.add(
                        om * cn.mantissa() * b.mantissa() * c.mantissa(),
                        oe + cn.exponent() + b.exponent() + c.exponent(),
                    );
                }
            }
        }
        acc.value().mul_f64(2.0)
    }

    /// One summand of the triple sum, `(k1, l1, n1)`.
    pub fn term(&mut self, k1: u32, l1: u32, n1: u32, idx: PowerIndices) -> Result<Scaled<M>> {
        check_term_indices(k1, l1, n1, idx)?;
        let (k, l, n) = (idx.k as usize, idx.l as usize, idx.n as usize);
        let (k1, l1, n1) = (k1 as usize, l1 as usize, n1 as usize);
        self.ensure_binomial_row(k.max(l).max(n));
        let a = self.larson(AB, l - l1 + k1);
        let b = self.larson(AG, k - k1 + n1);
        let c = self.larson(BG, n - n1 + l1);
        Ok((self.binomials[k][k1] * self.binomials[l][l1] * self.binomials[n][n1] * a * b * c)
            .mul_f64(2.0))
    }
}

/// Compensated sum of positive `m * 2^e` terms.
struct PositiveSum<M> {
    sum: M,
    comp: M,
    e: i64,
    empty: bool,
}

impl<M: Mantissa> PositiveSum<M> {
    fn new() -> Self {
        Self {
            sum: M::from_f64(0.0),
            comp: M::from_f64(0.0),
            e: 0,
            empty: true,
        }
    }

    #[inline]
    fn add(&mut self, m: M, e: i64) {
        if self.empty {
            self.e = e;
            self.empty = false;
        } else if e > self.e + 64 {
            let shift = (self.e - e).max(-2200) as i32;
            self.sum = self.sum.mul_pow2(shift);
            self.comp = self.comp.mul_pow2(shift);
            self.e = e;
        }
        let d = e - self.e;
        if d < -1100 {
            return;
        }
        let y = if d == 0 { m } else { m.mul_pow2(d as i32) };
        let t = self.sum + y;
        if self.sum.abs() >= y.abs() {
            self.comp = self.comp + ((self.sum - t) + y);
        } else {
            self.comp = self.comp + ((y - t) + self.sum);
        }
        self.sum = t;
    }

    fn value(&self) -> Scaled<M> {
        if self.empty {
            return Scaled::zero();
        }
        Scaled::new(self.sum + self.comp, self.e)
    }
}

fn check_term_indices(k1: u32, l1: u32, n1: u32, idx: PowerIndices) -> Result<()> {
    if k1 > idx.k || l1 > idx.l || n1 > idx.n {
        return Err(domain(format!(
            "term ({k1},{l1},{n1}) outside the summation range of {idx:?}"
        )));
    }
    Ok(())
}

fn finish(idx: PowerIndices, params: ExpParams, value: f64, terms: usize) -> Result<IntegralResult> {
    if value.is_finite() {
        return Ok(IntegralResult::exact(value, terms));
    }
    // locate the dominant summand for the report
    let mut best = (0, 0, 0, f64::NEG_INFINITY);
    for k1 in 0..=idx.k {
        for l1 in 0..=idx.l {
            for n1 in 0..=idx.n {
                if let Ok(t) = log_term_magnitude(k1, l1, n1, idx, params) {
                    if t.ln_abs > best.3 {
                        best = (k1, l1, n1, t.ln_abs);
                    }
                }
            }
        }
    }
    Err(Error::Overflow(format!(
        "Γ_{{{};{};{}}} exceeds the f64 range; largest term (k1,l1,n1)=({},{},{}) has ln|term|={:.3}",
        idx.k, idx.l, idx.n, best.0, best.1, best.2, best.3
    )))
}

/// `Γ_{k;l;n}(α,β,γ)` in standard precision.
pub fn gamma_klm(idx: PowerIndices, params: ExpParams) -> Result<IntegralResult> {
    gamma_klm_with(idx, params, Precision::Standard)
}

pub fn gamma_klm_with(
    idx: PowerIndices,
    params: ExpParams,
    precision: Precision,
) -> Result<IntegralResult> {
    let terms = (idx.k as usize + 1) * (idx.l as usize + 1) * (idx.n as usize + 1);
    let value = match precision {
        Precision::Standard => GammaEvaluator::<f64>::new(params)?.gamma(idx).to_f64(),
        Precision::Extended => GammaEvaluator::<DoubleDouble>::new(params)?
            .gamma(idx)
            .to_f64(),
    };
    finish(idx, params, value, terms)
}

/// Log-magnitude and sign of a single summand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogTerm {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogTerm {
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

fn ln_factorial(m: u32) -> f64 {
    ln_gamma(m as f64 + 1.0)
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `ln A_m(X) = ln m! - (m+1) ln X`.
pub fn ln_larson(m: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Larson function needs X > 0, got {x}")));
    }
    Ok(ln_factorial(m) - (m as f64 + 1.0) * x.ln())
}

/// Larson's `A_m(X) = m!/X^{m+1}`; `inf` when it leaves the f64 range.
pub fn larson(m: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Larson function needs X > 0, got {x}")));
    }
    let mut a = Scaled::<f64>::one() / Scaled::from_f64(x);
    for j in 1..=m {
        a = a.mul_f64(j as f64).div_f64(x);
    }
    Ok(a.to_f64())
}

/// Log of the `(k1, l1, n1)` summand of `Γ_{k;l;n}`, built from log-gamma
/// factorials and binomials. Summing `exp` of all terms reproduces [`gamma_klm`].
pub fn log_term_magnitude(
    k1: u32,
    l1: u32,
    n1: u32,
    idx: PowerIndices,
    params: ExpParams,
) -> Result<LogTerm> {
    params.validate()?;
    check_term_indices(k1, l1, n1, idx)?;
    let (ab, ag, bg) = params.pair_sums();
    let PowerIndices { k, l, n } = idx;
    let ln_abs = std::f64::consts::LN_2
        + ln_binomial(k, k1)
        + ln_binomial(l, l1)
        + ln_binomial(n, n1)
        + ln_larson(l - l1 + k1, ab)?
        + ln_larson(k - k1 + n1, ag)?
        + ln_larson(n - n1 + l1, bg)?;
    Ok(LogTerm { ln_abs, sign: 1.0 })
}
