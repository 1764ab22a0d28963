//! Closed-form moments against tensor Gauss-Laguerre quadrature in perimetric coordinates.

use tribody::{gamma_klm, quad3d, ExpParams, OracleSpec, PowerIndices, RelativePoint};

fn main() -> tribody::Result<()> {
    let p = ExpParams::new(2.35, 1.41, 0.567)?;
    let mut worst = 0.0f64;
    for k in 0..=4 {
        for l in 0..=4 {
            for n in 0..=4 {
                let g = gamma_klm(PowerIndices::new(k, l, n), p)?.value;
                let f = |r: RelativePoint| r.r32.powi(k as i32) * r.r31.powi(l as i32) * r.r21.powi(n as i32);
                let q = quad3d(&OracleSpec::new(f, p).with_nodes(32))?.value;
                worst = worst.max(((g - q) / g).abs());
            }
        }
    }
    println!("125 moments, worst relative difference {worst:.2e}");
    Ok(())
}
