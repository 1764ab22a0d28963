//! Overflow-proof real numbers: a mantissa (f64 or double-double) times `2^exp`
//! with a 64-bit binary exponent.
//!
//! Power-of-two rescaling is exact, so products of factorials, binomials and
//! powers keep their ulp-level accuracy far outside the f64 exponent range.
//! The mantissa is kept normalized with its leading component in `[0.5, 1)`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::dd::DoubleDouble;
use super::{frexp, ldexp};

/// Arithmetic needed from a mantissa type.
pub trait Mantissa:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    /// `a + b`, exactly when the mantissa has room for the rounding error.
    fn from_sum(a: f64, b: f64) -> Self;
    fn to_f64(self) -> f64;
    /// Leading component; decides sign, magnitude and normalization.
    fn lead(self) -> f64;
    fn mul_pow2(self, e: i32) -> Self;
    fn abs(self) -> Self {
        if self.lead() < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Mantissa for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn from_sum(a: f64, b: f64) -> Self {
        a + b
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn lead(self) -> f64 {
        self
    }
    #[inline]
    fn mul_pow2(self, e: i32) -> Self {
        ldexp(self, e)
    }
}

impl Mantissa for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
    fn from_sum(a: f64, b: f64) -> Self {
        DoubleDouble::from_f64(a) + DoubleDouble::from_f64(b)
    }
    fn to_f64(self) -> f64 {
        DoubleDouble::to_f64(self)
    }
    fn lead(self) -> f64 {
        self.hi
    }
    fn mul_pow2(self, e: i32) -> Self {
        DoubleDouble::mul_pow2(self, e)
    }
}

/// `m * 2^e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled<M> {
    m: M,
    e: i64,
}

// Shifts beyond this drop the smaller operand entirely (covers double-double's 106 bits).
const NEGLIGIBLE_SHIFT: i64 = 1100;

impl<M: Mantissa> Scaled<M> {
    pub fn zero() -> Self {
        Self {
            m: M::from_f64(0.0),
            e: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_f64(1.0)
    }

    pub fn new(m: M, e: i64) -> Self {
        let lead = m.lead();
        if lead == 0.0 || !lead.is_finite() {
            return Self { m, e: if lead == 0.0 { 0 } else { e } };
        }
        let (_, ex) = frexp(lead);
        Self {
            m: m.mul_pow2(-ex),
            e: e + ex as i64,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(M::from_f64(x), 0)
    }

    pub fn from_mantissa(m: M) -> Self {
        Self::new(m, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.lead() == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.m.lead().is_finite()
    }

    pub fn mantissa(&self) -> M {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn signum(&self) -> f64 {
        let l = self.m.lead();
        if l > 0.0 {
            1.0
        } else if l < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn abs(self) -> Self {
        Self {
            m: self.m.abs(),
            e: self.e,
        }
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        let l = self.m.lead();
        if l == 0.0 {
            return f64::NEG_INFINITY;
        }
        // m.to_f64() carries the low word when M is double-double.
        self.m.to_f64().abs().ln() + self.e as f64 * std::f64::consts::LN_2
    }

    /// Nearest f64; saturates to +/-inf or rounds to zero outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        let x = self.m.to_f64();
        if x == 0.0 || !x.is_finite() {
            return x;
        }
        let e = self.e.clamp(-2200, 2200) as i32;
        ldexp(x, e)
    }

    /// Mantissa rescaled to the exponent `e` (which must be at least `self.e` for exactness).
    pub fn mantissa_at(&self, e: i64) -> M {
        let shift = self.e - e;
        if shift < -NEGLIGIBLE_SHIFT {
            return M::from_f64(0.0);
        }
        self.m.mul_pow2(shift.clamp(-2200, 2200) as i32)
    }

    pub fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn mul_f64(self, x: f64) -> Self {
        Self::new(self.m * M::from_f64(x), self.e)
    }

    pub fn div_f64(self, x: f64) -> Self {
        Self::new(self.m / M::from_f64(x), self.e)
    }
}

impl<M: Mantissa> Mul for Scaled<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.m * rhs.m, self.e + rhs.e)
    }
}

impl<M: Mantissa> Div for Scaled<M> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::new(self.m / rhs.m, self.e - rhs.e)
    }
}

impl<M: Mantissa> Neg for Scaled<M> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            m: -self.m,
            e: self.e,
        }
    }
}

impl<M: Mantissa> Add for Scaled<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let e = self.e.max(rhs.e);
        Self::new(self.mantissa_at(e) + rhs.mantissa_at(e), e)
    }
}

impl<M: Mantissa> Sub for Scaled<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Neumaier-compensated accumulator over scaled terms.
///
/// The running sum lives at a common binary exponent that tracks the largest
/// term seen, so tiny tails are added at full relative precision.
#[derive(Clone, Debug)]
pub struct ScaledSum<M> {
    sum: M,
    comp: M,
    e: i64,
    empty: bool,
    count: usize,
}

impl<M: Mantissa> Default for ScaledSum<M> {
    fn default() -> Self {
        Self::new()
    }
}

impl<M: Mantissa> ScaledSum<M> {
    pub fn new() -> Self {
        Self {
            sum: M::from_f64(0.0),
            comp: M::from_f64(0.0),
            e: 0,
            empty: true,
            count: 0,
        }
    }

    pub fn add(&mut self, x: Scaled<M>) {
        self.count += 1;
        if x.is_zero() {
            return;
        }
        if self.empty {
            self.e = x.e;
            self.empty = false;
        } else if x.e > self.e {
            let shift = (self.e - x.e).max(-2200) as i32;
            self.sum = self.sum.mul_pow2(shift);
            self.comp = self.comp.mul_pow2(shift);
            self.e = x.e;
        }
        let y = x.mantissa_at(self.e);
        let t = self.sum + y;
        if self.sum.abs() >= y.abs() {
            self.comp = self.comp + ((self.sum - t) + y);
        } else {
            self.comp = self.comp + ((y - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> Scaled<M> {
        if self.empty {
            return Scaled::zero();
        }
        Scaled::new(self.sum + self.comp, self.e)
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_beyond_f64_range() {
        let mut f = Scaled::<f64>::one();
        for i in 1..=300u32 {
            f = f.mul_f64(i as f64);
        }
        // ln(300!) = 1414.905849...
        let expected = statrs::function::gamma::ln_gamma(301.0);
        assert!((f.ln_abs() - expected).abs() < 1e-10);
        assert!(f.to_f64().is_infinite());
        let ratio = f / Scaled::from_f64(1.0).mul_f64(300.0);
        let mut g = Scaled::<f64>::one();
        for i in 1..=299u32 {
            g = g.mul_f64(i as f64);
        }
        let rel = ((ratio / g).to_f64() - 1.0).abs();
        assert!(rel < 1e-13);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = Scaled::<f64>::from_f64(1.0e300).mul_f64(1.0e300);
        let b = Scaled::<f64>::from_f64(3.0e299).mul_f64(1.0e300);
        let s = a + b;
        let q = (s / a).to_f64();
        assert!((q - 1.3).abs() < 1e-15);
        let d = (a - a).to_f64();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn compensated_sum_recovers_small_tail() {
        let mut acc = ScaledSum::<f64>::new();
        acc.add(Scaled::from_f64(1.0));
        for _ in 0..1000 {
            acc.add(Scaled::from_f64(1e-17));
        }
        acc.add(Scaled::from_f64(-1.0));
        let v = acc.value().to_f64();
        assert!((v - 1e-14).abs() < 1e-25, "{v:e}");
    }

    #[test]
    fn double_double_mantissa_normalizes() {
        let x = Scaled::<DoubleDouble>::from_f64(12.0);
        assert_eq!(x.exponent(), 4);
        assert!((x.to_f64() - 12.0).abs() == 0.0);
    }
}
