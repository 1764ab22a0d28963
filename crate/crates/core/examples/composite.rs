//! Series-defined kernels and the shifted-cosine integral J(t).

use tribody::{j_integral, series_integral, ExpParams, JSpec, PowerIndices, SeriesControl, SeriesFunction};

fn main() -> tribody::Result<()> {
    let p = ExpParams::new(2.0, 2.0, 1.0)?;
    // 1 - r + r²/2 - r³/6, then each term damped by its own exponent
    let f = SeriesFunction::new(vec![
        SeriesFunction::damped(1.0, 0, 0.1),
        SeriesFunction::damped(-1.0, 1, 0.2),
        SeriesFunction::damped(0.5, 2, 0.3),
        SeriesFunction::damped(-1.0 / 6.0, 3, 0.4),
    ]);
    println!("plain  {:.16e}", series_integral(&f, p, false)?.value);
    println!("damped {:.16e}", series_integral(&f, p, true)?.value);

    let ctl = SeriesControl::default();
    for t in [-0.5, 0.0, 0.1, 0.3, 0.5] {
        let r = j_integral(&JSpec::new(PowerIndices::new(0, 0, 0), p, t), &ctl)?;
        println!("J({t:>4}) = {:.16e} ({} terms)", r.value, r.terms_used);
    }
    Ok(())
}
