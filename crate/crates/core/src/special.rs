//! Modified Bessel function `K_0` and its repeated integrals
//! `Ki_n(z) = ∫_z^∞ Ki_{n-1}(t) dt`, `Ki_0 = K_0`.
//!
//! Both use `Ki_n(z) = ∫_0^∞ exp(-z cosh t) / cosh^n t dt`; the integrand
//! decays double-exponentially, so the trapezoid rule on it is spectrally accurate.

use crate::error::{domain, Result};
use crate::numeric::quad::trapezoid_line;
use crate::numeric::NeumaierSum;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;

fn check_argument(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("argument must be finite and > 0, got {z}")));
    }
    Ok(())
}

/// `K_0(z)`: power series for `z <= 2`, cosh integral beyond.
pub fn bessel_k0(z: f64) -> Result<f64> {
    check_argument(z)?;
    if z <= SERIES_LIMIT {
        Ok(k0_series(z))
    } else {
        ki_integral(0, z)
    }
}

/// `K_0(z) = Σ_k (ψ(k+1) + ln 2 - ln z) (z/2)^{2k} / (k!)^2`.
pub fn bessel_k0_series(z: f64) -> Result<f64> {
    check_argument(z)?;
    Ok(k0_series(z))
}

/// `K_0(z) = ∫_0^∞ exp(-z cosh t) dt`.
pub fn bessel_k0_integral(z: f64) -> Result<f64> {
    check_argument(z)?;
    ki_integral(0, z)
}

fn k0_series(z: f64) -> f64 {
    let y = 0.25 * z * z;
    let log_part = std::f64::consts::LN_2 - z.ln();
    let mut psi = -EULER_GAMMA;
    let mut power = 1.0;
    let mut acc = NeumaierSum::new();
    for k in 0..200usize {
        if k > 0 {
            psi += 1.0 / k as f64;
            power *= y / (k * k) as f64;
        }
        let t = (psi + log_part) * power;
        acc.add(t);
        if power < 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// `Ki_n(z)` for `n >= 1`.
pub fn ki_n(n: u32, z: f64) -> Result<f64> {
    if n < 1 {
        return Err(domain("Ki_n needs n >= 1; use bessel_k0 for n = 0"));
    }
    check_argument(z)?;
    ki_integral(n, z)
}

fn ki_integral(n: u32, z: f64) -> Result<f64> {
    // exp(-z cosh t) < 1e-320 once cosh t > 740/z
    let half_width = (740.0 / z).max(1.0).acosh() + 1.0;
    let out = trapezoid_line(
        |t| {
            let c = t.cosh();
            (-z * c).exp() / c.powi(n as i32)
        },
        half_width,
        1e-15,
        10,
    );
    if !out.converged {
        return Err(crate::error::Error::NonConvergence {
            value: 0.5 * out.value,
            estimate: 0.5 * out.error,
            terms: out.evaluations,
        });
    }
    // even integrand over the whole line
    Ok(0.5 * out.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn k0_reference_values() {
        // 30-digit references
        assert!(rel(bessel_k0(1.0).unwrap(), 0.42102443824070833334) < 1e-14);
        assert!(rel(bessel_k0(0.5).unwrap(), 0.92441907122766586178) < 1e-14);
        assert!(rel(bessel_k0(5.0).unwrap(), 0.0036910983340425942754) < 1e-14);
    }

    #[test]
    fn series_and_integral_agree() {
        for z in [0.01, 0.5, 1.0, 1.9] {
            let s = bessel_k0_series(z).unwrap();
            let i = bessel_k0_integral(z).unwrap();
            assert!(rel(s, i) < 1e-13, "z={z}: {s} vs {i}");
        }
    }

    fn derivative(f: impl Fn(f64) -> f64, z: f64) -> f64 {
        // five-point stencil
        let h = 1e-3;
        (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h)
    }

    #[test]
    fn derivative_relation() {
        for z in [0.3, 1.0, 4.0] {
            let d = derivative(|x| ki_n(2, x).unwrap(), z);
            assert!(rel(-d, ki_n(1, z).unwrap()) < 1e-9);
            let d = derivative(|x| ki_n(1, x).unwrap(), z);
            assert!(rel(-d, bessel_k0(z).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn ordering_and_domain() {
        for z in [0.01, 0.7, 3.0, 25.0] {
            let (a, b) = (ki_n(1, z).unwrap(), ki_n(2, z).unwrap());
            assert!(a > b && b > 0.0);
        }
        assert!(bessel_k0(0.0).is_err());
        assert!(ki_n(1, -1.0).is_err());
        assert!(ki_n(0, 1.0).is_err());
    }

    #[test]
    fn ki_at_zero_limits() {
        // Ki_1(0+) = π/2, Ki_2(0+) = 1
        assert!((ki_n(1, 1e-12).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
        assert!((ki_n(2, 1e-12).unwrap() - 1.0).abs() < 1e-10);
    }
}
