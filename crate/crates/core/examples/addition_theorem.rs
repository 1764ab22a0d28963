//! Rayleigh expansion truncation and the per-order addition identity on random triangles.

use num_complex::Complex64;
use tribody::addition::random_geometry;
use tribody::{addition_survey, product_identity_residual, rayleigh_partial_sum};

fn main() -> tribody::Result<()> {
    let exact = Complex64::new(0.0, 2.0 * 0.3).exp();
    for l in [2, 5, 10, 20, 40] {
        let s = rayleigh_partial_sum(2.0, 0.3, l)?;
        println!("L_max={l:>2}: |error| {:.2e}", (s - exact).norm());
    }

    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    let g = random_geometry(&mut rng);
    for l in [5, 10, 20, 30] {
        println!("product expansion, L_max={l:>2}: residual {:.2e}", product_identity_residual(&g, 1.0, l)?);
    }

    let rows = addition_survey(1, 100, 1.0, 1)?;
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let near_pi = rows.iter().filter(|r| (r.angle_sum - std::f64::consts::PI).abs() < 1e-6).count();
    println!("per-order identity at L=1: worst residual {worst:.3e} over {} triangles", rows.len());
    println!("angle sums equal to π: {near_pi} of {}", rows.len());
    Ok(())
}
