//! Gauss-Laguerre rules for `∫_0^∞ f(x) e^{-x} dx`.
//!
//! Nodes start from the Golub-Welsch eigenvalues of the Jacobi matrix and are
//! polished by Newton steps on `L_n`; weights come from `1/(x L_n'(x)^2)` with a
//! rescaled three-term recurrence so that large nodes do not overflow.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

#[derive(Clone, Debug)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

const RESCALE: f64 = 1e200;

/// Returns `(L_n(x)/S, L_{n-1}(x)/S, ln S)` for a common scale `S`.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = 1.0;
    if n == 0 {
        return (prev, 0.0, 0.0);
    }
    let mut cur = 1.0 - x;
    let mut log_scale = 0.0;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - x) * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    (cur, prev, log_scale)
}

impl GaussLaguerre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Laguerre rule needs at least one node");
        let mut jacobi = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            jacobi[(i, i)] = 2.0 * i as f64 + 1.0;
            if i + 1 < n {
                let off = (i + 1) as f64;
                jacobi[(i, i + 1)] = off;
                jacobi[(i + 1, i)] = off;
            }
        }
        let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let nf = n as f64;
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                let (ln, lm1, _) = laguerre_pair(n, *x);
                let deriv = nf * (ln - lm1) / *x;
                let step = ln / deriv;
                *x -= step;
                if step.abs() <= 1e-16 * x.abs() {
                    break;
                }
            }
            let (ln, lm1, log_scale) = laguerre_pair(n, *x);
            let deriv = nf * (ln - lm1) / *x;
            // w = 1 / (x L_n'(x)^2), with L_n' carried at scale exp(log_scale)
            let log_w = -x.ln() - 2.0 * (deriv.abs().ln() + log_scale);
            weights.push(log_w.exp());
        }
        Self { nodes, weights }
    }

    /// Shared rule of a given size; built once per size per process.
    pub fn cached(n: usize) -> Arc<GaussLaguerre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLaguerre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("laguerre cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLaguerre::new(n)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_0^∞ f(x) e^{-rate x} dx`.
    pub fn integrate_with_rate<F: Fn(f64) -> f64>(&self, rate: f64, f: F) -> f64 {
        let mut acc = super::NeumaierSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            acc.add(w * f(x / rate));
        }
        acc.value() / rate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    #[test]
    fn moments_are_exact() {
        for n in [4usize, 16, 64, 192] {
            let rule = GaussLaguerre::new(n);
            let max_deg = (2 * n - 1).min(30) as u32;
            for d in 0..=max_deg {
                let v = rule.integrate_with_rate(1.0, |x| x.powi(d as i32));
                let exact = factorial(d);
                assert!(
                    ((v - exact) / exact).abs() < 1e-12,
                    "n={n} d={d} got {v} want {exact}"
                );
            }
        }
    }

    #[test]
    fn weights_sum_to_one() {
        let rule = GaussLaguerre::new(128);
        let s: f64 = rule.weights().iter().sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rate_scaling() {
        let rule = GaussLaguerre::cached(32);
        let v = rule.integrate_with_rate(2.5, |x| x * x);
        assert!((v - 2.0 / 2.5f64.powi(3)).abs() < 1e-15);
    }
}
