//! Plane-wave expansions over a three-body triangle.
//!
//! The Rayleigh expansion `exp(i k·r) = Σ_L i^L (2L+1) j_L(kr) P_L(cos Θ)`
//! applied to `r21 = r31 - r32` gives two absolutely convergent expansions of
//! the same function. This module measures how well truncations of both
//! agree, and how far the per-L identity obtained by matching Cauchy-product
//! terms is from holding.

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::spherical::spherical_jl_array;

/// Legendre polynomials `P_0(x) .. P_lmax(x)` by the three-term recurrence.
pub fn legendre_p_array(lmax: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(lmax + 1);
    p.push(1.0);
    if lmax >= 1 {
        p.push(x);
    }
    for l in 1..lmax {
        let lf = l as f64;
        p.push(((2.0 * lf + 1.0) * x * p[l] - lf * p[l - 1]) / (lf + 1.0));
    }
    p
}

/// Side lengths of a triangle and the angles each side makes with the wave vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleGeometry {
    pub r31: f64,
    pub r32: f64,
    pub r21: f64,
    pub theta21: f64,
    pub theta31: f64,
    pub theta32: f64,
}

fn angle_to(dir: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    let n = v.norm();
    if n == 0.0 {
        // direction is irrelevant: j_L(0) vanishes for L > 0
        return 0.0;
    }
    (dir.dot(v) / n).clamp(-1.0, 1.0).acos()
}

impl TriangleGeometry {
    /// From the wave-vector direction and the particle-3-relative positions
    /// `r31`, `r32`; `r21 = r31 - r32`.
    pub fn from_vectors(k_dir: [f64; 3], r31: [f64; 3], r32: [f64; 3]) -> Result<Self> {
        let k = Vector3::from(k_dir);
        let (a, b) = (Vector3::from(r31), Vector3::from(r32));
        if !(k.norm() > 0.0) || ![k, a, b].iter().all(|v| v.iter().all(|x| x.is_finite())) {
            return Err(domain("wave-vector direction must be nonzero and all components finite"));
        }
        let k = k.normalize();
        let c = a - b;
        Ok(Self {
            r31: a.norm(),
            r32: b.norm(),
            r21: c.norm(),
            theta21: angle_to(&k, &c),
            theta31: angle_to(&k, &a),
            theta32: angle_to(&k, &b),
        })
    }

    /// `Θ21 + Θ31 + Θ32`. Equals π only for special configurations.
    pub fn angle_sum(&self) -> f64 {
        self.theta21 + self.theta31 + self.theta32
    }
}

/// `Σ_{L=0}^{lmax} i^L (2L+1) j_L(kr) P_L(cos Θ)`.
pub fn rayleigh_partial_sum(kr: f64, cos_theta: f64, l_max: usize) -> Result<Complex64> {
    if !(cos_theta.abs() <= 1.0) {
        return Err(domain(format!("|cos theta| must be <= 1, got {cos_theta}")));
    }
    let j = spherical_jl_array(l_max, kr)?;
    let p = legendre_p_array(l_max, cos_theta);
    Ok(rayleigh_terms(&j, &p, 1.0).sum())
}

fn rayleigh_terms<'a>(j: &'a [f64], p: &'a [f64], sign: f64) -> impl Iterator<Item = Complex64> + 'a {
    let mut phase = Complex64::new(1.0, 0.0);
    j.iter().zip(p).enumerate().map(move |(l, (jl, pl))| {
        let t = phase * ((2 * l + 1) as f64 * jl * pl * sign.powi(l as i32));
        phase *= Complex64::i();
        t
    })
}

fn check_k(k: f64) -> Result<()> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(domain(format!("wave number must be finite and >= 0, got {k}")));
    }
    Ok(())
}

/// `|exp(ik·r21) expansion - exp(ik·r31) expansion × exp(-ik·r32) expansion|`,
/// every series truncated at `l_max`.
pub fn product_identity_residual(geom: &TriangleGeometry, k: f64, l_max: usize) -> Result<f64> {
    check_k(k)?;
    let side = |r: f64, theta: f64, sign: f64| -> Result<Complex64> {
        let j = spherical_jl_array(l_max, k * r)?;
        let p = legendre_p_array(l_max, theta.cos());
        Ok(rayleigh_terms(&j, &p, sign).sum())
    };
    let lhs = side(geom.r21, geom.theta21, 1.0)?;
    // P_L(-x) = (-1)^L P_L(x)
    let rhs = side(geom.r31, geom.theta31, 1.0)? * side(geom.r32, geom.theta32, -1.0)?;
    Ok((lhs - rhs).norm())
}

/// Both sides of the per-L identity
/// `(2L+1) j_L(k r21) P_L(cos Θ21) = (-1)^L Σ_ℓ (-1)^ℓ (2ℓ+1)(2L-2ℓ+1) j_ℓ(k r31) j_{L-ℓ}(k r32) P_ℓ(cos Θ31) P_{L-ℓ}(cos Θ32)`.
pub fn termwise_identity_sides(geom: &TriangleGeometry, k: f64, l: usize) -> Result<(f64, f64)> {
    check_k(k)?;
    let lhs = (2 * l + 1) as f64
        * spherical_jl_array(l, k * geom.r21)?[l]
        * legendre_p_array(l, geom.theta21.cos())[l];
    let (j31, j32) = (spherical_jl_array(l, k * geom.r31)?, spherical_jl_array(l, k * geom.r32)?);
    let (p31, p32) = (legendre_p_array(l, geom.theta31.cos()), legendre_p_array(l, geom.theta32.cos()));
    let mut rhs = 0.0;
    for m in 0..=l {
        let sign = if (l + m) % 2 == 0 { 1.0 } else { -1.0 };
        rhs += sign * ((2 * m + 1) * (2 * (l - m) + 1)) as f64 * j31[m] * j32[l - m] * p31[m] * p32[l - m];
    }
    Ok((lhs, rhs))
}

/// `|LHS - RHS|` of the per-L identity; measured, not assumed to vanish.
pub fn termwise_identity_residual(geom: &TriangleGeometry, k: f64, l: usize) -> Result<f64> {
    let (a, b) = termwise_identity_sides(geom, k, l)?;
    Ok((a - b).abs())
}

/// One row of [`addition_survey`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurveyRow {
    pub index: usize,
    pub r31: f64,
    pub r32: f64,
    pub r21: f64,
    pub theta21: f64,
    pub theta31: f64,
    pub theta32: f64,
    pub angle_sum: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

/// A random geometry with side lengths `r31`, `r32` in `[0.1, 3)`.
pub fn random_geometry(rng: &mut ChaCha8Rng) -> TriangleGeometry {
    let k = random_unit(rng);
    let (a, b) = (random_unit(rng), random_unit(rng));
    let (ra, rb): (f64, f64) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
    TriangleGeometry::from_vectors(k, a.map(|x| ra * x), b.map(|x| rb * x)).expect("unit vectors are valid")
}

/// Termwise residuals at order `l` over `count` seeded random geometries.
pub fn addition_survey(seed: u64, count: usize, k: f64, l: usize) -> Result<Vec<SurveyRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let g = random_geometry(&mut rng);
            let (lhs, rhs) = termwise_identity_sides(&g, k, l)?;
            Ok(SurveyRow {
                index,
                r31: g.r31,
                r32: g.r32,
                r21: g.r21,
                theta21: g.theta21,
                theta31: g.theta31,
                theta32: g.theta32,
                angle_sum: g.angle_sum(),
                lhs,
                rhs,
                residual: (lhs - rhs).abs(),
            })
        })
        .collect()
}
