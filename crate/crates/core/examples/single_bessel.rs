//! B^(0) and B^(1) against Table II, and the three-term recurrence in L.

use tribody::tables::reproduce_table_two;
use tribody::{bessel_l_integral, BesselIntegralSpec, ExpParams, PowerIndices, SeriesControl};

fn main() -> tribody::Result<()> {
    let ctl = SeriesControl::default();
    for c in reproduce_table_two(&ctl)? {
        println!(
            "k={} V={:.2} {:>2}: {:>24.16e} vs {:>24.16e} ({:.1e}, {} terms)",
            c.k,
            c.v.unwrap_or(0.0),
            c.column,
            c.computed,
            c.published,
            c.rel_diff,
            c.terms_used
        );
    }

    // B^(L+1)_k = (2L+1)/V B^(L)_{k-1} - B^(L-1)_k
    let p = ExpParams::new(2.35, 1.41, 0.567)?;
    let (v, k) = (0.5, 3);
    let b = |order: u32, k: u32| {
        bessel_l_integral(&BesselIntegralSpec::new(PowerIndices::new(k, 2, 1), p, v, order), &ctl).map(|r| r.value)
    };
    for l in 1..=3u32 {
        let lhs = b(l + 1, k)?;
        let rhs = (2 * l + 1) as f64 / v * b(l, k - 1)? - b(l - 1, k)?;
        println!("L={l}: {lhs:.16e} {rhs:.16e} residual {:.1e}", ((lhs - rhs) / lhs).abs());
    }
    Ok(())
}
