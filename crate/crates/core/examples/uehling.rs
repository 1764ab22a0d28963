//! Uehling potential in two representations and its three-body matrix element.

use tribody::uehling::FINE_STRUCTURE;
use tribody::{uehling_matrix_element, uehling_potential_point, ExpParams, PointMode, UehlingSystem, XiQuadSpec};

fn main() -> tribody::Result<()> {
    let sys = UehlingSystem::new(-1.0, -1.0, 1.0, 1.0);
    let b = 1.0 / FINE_STRUCTURE;
    for x in [0.01, 0.1, 1.0, 5.0, 20.0] {
        let r = x / (2.0 * b);
        let a = uehling_potential_point(&sys, r, PointMode::Integral)?;
        let k = uehling_potential_point(&sys, r, PointMode::KiForm)?;
        println!("2br={x:>5}: {a:.16e} {k:.16e} rel {:.1e}", ((a - k) / k).abs());
    }
    // a helium-like trial function: electrons 1, 2 and the nucleus 3
    let p = ExpParams::new(0.5, 2.0, 2.0)?;
    let me = uehling_matrix_element(&sys, p, &XiQuadSpec::default())?;
    println!("matrix element {:.16e} ({} nodes)", me.value, me.terms_used);
    Ok(())
}
