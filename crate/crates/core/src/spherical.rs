//! Spherical Bessel functions of the first kind, `j_L(x)` for `L >= -1`, `x >= 0`.

use crate::error::{domain, Result};

/// `j_L(x)`; `j_{-1}(x) = cos x / x`.
pub fn spherical_jl(order: i32, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("spherical Bessel argument must be finite and >= 0, got {x}")));
    }
    match order {
        o if o < -1 => Err(domain(format!("spherical Bessel order must be >= -1, got {o}"))),
        -1 => {
            if x == 0.0 {
                Err(domain("j_{-1}(x) = cos(x)/x diverges at x = 0"))
            } else {
                Ok(x.cos() / x)
            }
        }
        0 => Ok(j0(x)),
        l => {
            let l = l as usize;
            if x == 0.0 {
                Ok(0.0)
            } else if x * x <= (2 * l + 3) as f64 {
                Ok(power_series(l, x))
            } else if x >= l as f64 {
                Ok(upward(l, x)[l])
            } else {
                Ok(miller(l, x)[l])
            }
        }
    }
}

/// `[j_0(x), ..., j_lmax(x)]`.
pub fn spherical_jl_array(lmax: usize, x: f64) -> Result<Vec<f64>> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("spherical Bessel argument must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        let mut v = vec![0.0; lmax + 1];
        v[0] = 1.0;
        return Ok(v);
    }
    if x >= lmax as f64 {
        return Ok(upward(lmax, x));
    }
    let mut v = miller(lmax, x);
    // low orders from the direct forms where those are cheaper and exact
    for (l, slot) in v.iter_mut().enumerate().take(2) {
        if x * x <= (2 * l + 3) as f64 || x >= l as f64 {
            *slot = if l == 0 { j0(x) } else { power_or_closed_j1(x) };
        }
    }
    Ok(v)
}

fn j0(x: f64) -> f64 {
    if x < 1e-3 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        x.sin() / x
    }
}

fn power_or_closed_j1(x: f64) -> f64 {
    if x * x <= 5.0 {
        power_series(1, x)
    } else {
        x.sin() / (x * x) - x.cos() / x
    }
}

/// `z^L Σ_k (-1)^k z^{2k} / (2^k k! (2L+2k+1)!!)`.
fn power_series(l: usize, x: f64) -> f64 {
    let mut lead = 1.0;
    for j in 1..=l {
        lead *= x / (2 * j + 1) as f64;
    }
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0usize;
    loop {
        term *= -x2 / (2.0 * (k + 1) as f64 * (2 * l + 2 * k + 3) as f64);
        sum += term;
        k += 1;
        if term.abs() <= 1e-17 * sum.abs() || k > 200 {
            break;
        }
    }
    lead * sum
}

fn upward(lmax: usize, x: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(lmax + 1);
    v.push(j0(x));
    if lmax >= 1 {
        v.push(power_or_closed_j1(x));
    }
    for l in 1..lmax {
        let next = (2 * l + 1) as f64 / x * v[l] - v[l - 1];
        v.push(next);
    }
    v
}

/// Miller's downward recurrence, normalized against `j_0` or `j_1`.
fn miller(lmax: usize, x: f64) -> Vec<f64> {
    let start = lmax + x.ceil() as usize + 40 + (4.0 * (lmax as f64).sqrt()) as usize;
    let mut v = vec![0.0; lmax + 1];
    let mut above = 0.0; // f_{l+1}
    let mut cur = 1e-300; // f_l
    for l in (1..=start).rev() {
        let below = (2 * l + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        if l - 1 <= lmax {
            v[l - 1] = cur;
        }
        if l <= lmax {
            v[l] = above;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            for s in v.iter_mut() {
                *s *= 1e-250;
            }
        }
    }
    let exact0 = j0(x);
    let exact1 = power_or_closed_j1(x);
    let scale = if exact0.abs() >= exact1.abs() || lmax == 0 {
        exact0 / v[0]
    } else {
        exact1 / v[1]
    };
    for s in v.iter_mut() {
        *s *= scale;
    }
    v
}
