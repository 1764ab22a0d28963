//! Two Bessel factors on different distances, checked against brute-force quadrature.

use tribody::{
    convergence_radius, double_bessel_integral, quad3d, sin_sin_integral, spherical_jl, DoubleBesselSpec, ExpParams,
    OracleSpec, PowerIndices, RelativePoint, SeriesControl,
};

fn main() -> tribody::Result<()> {
    let p = ExpParams::new(2.0, 2.0, 1.0)?;
    let ctl = SeriesControl::double_default();
    println!("series converges for V < {}", convergence_radius(p));
    for v in [0.5, 1.0] {
        let idx = PowerIndices::new(1, 1, 1);
        let series = double_bessel_integral(&DoubleBesselSpec::new(idx, p, v, 0, 0), &ctl)?;
        let f = move |r: RelativePoint| {
            r.r32 * r.r31 * r.r21 * spherical_jl(0, v * r.r32).unwrap() * spherical_jl(0, v * r.r31).unwrap()
        };
        let oracle = quad3d(&OracleSpec::new(f, p).with_nodes(64))?;
        let ss = sin_sin_integral(PowerIndices::new(0, 0, 1), p, v, &ctl)?;
        println!(
            "V={v}: series {:.16e} ({} terms), oracle {:.16e}, sin·sin/V² {:.16e}",
            series.value,
            series.terms_used,
            oracle.value,
            ss.value / (v * v)
        );
    }
    Ok(())
}
