//! Real-power basic integrals: one-dimensional reduction vs closed forms.

use tribody::{basic_b, exponential_moment, power_g, BasicBSpec};

fn main() -> tribody::Result<()> {
    let s = BasicBSpec::exponential(1.5, 2.0, 0.7, [0.5, 1.25, 2.0]);
    println!("B  {:.16e}", basic_b(&s)?.value);
    println!("ΓΓΓ/abc {:.16e}", exponential_moment(1.5, 2.0, 0.7, [0.5, 1.25, 2.0])?);

    let d = s.with_denominator([0.5, 1.0, 2.0, 1.5], 2.5);
    println!("B with (q0 + q·u)^-s {:.16e}", basic_b(&d)?.value);

    let g = s.with_denominator([1.0, 1.0, 2.0, 0.5], 8.0);
    println!("G  {:.16e}", power_g(&g)?.value);
    Ok(())
}
