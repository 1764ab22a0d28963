//! Library results against values minted once by the perimetric quadrature
//! oracle (256 nodes per axis, grid doubling agreement better than 1e-14).

use tribody::{
    bessel_l_integral, bessel_neg1_integral, double_bessel_integral, j_integral, sin_sin_integral,
    yukawa_matrix_element, BesselIntegralSpec, DoubleBesselSpec, ExpParams, JSpec, PowerIndices, SeriesControl,
};

const TOL: f64 = 1e-9;

fn p221() -> ExpParams {
    ExpParams::new(2.0, 2.0, 1.0).unwrap()
}

fn check(name: &str, got: f64, want: f64) {
    let rel = ((got - want) / want).abs();
    assert!(rel <= TOL, "{name}: {got:e} vs frozen {want:e} (rel {rel:.1e})");
}

#[test]
fn double_bessel_j0_j0() {
    let ctl = SeriesControl::double_default();
    let cases = [
        ((0, 0, 0), 0.5, 5.32686909274513315e-2),
        ((1, 1, 1), 0.5, 1.92126126900325662e-2),
        ((0, 0, 0), 1.0, 4.73597302953238514e-2),
        ((1, 1, 1), 1.0, 1.29999999999997704e-2),
    ];
    for ((k, l, n), v, want) in cases {
        let spec = DoubleBesselSpec::new(PowerIndices::new(k, l, n), p221(), v, 0, 0);
        check(&format!("j0 j0 ({k},{l},{n}) V={v}"), double_bessel_integral(&spec, &ctl).unwrap().value, want);
    }
}

#[test]
fn double_bessel_mixed_orders() {
    let spec = DoubleBesselSpec::new(PowerIndices::new(1, 1, 1), p221(), 0.7, 1, 2);
    let got = double_bessel_integral(&spec, &SeriesControl::double_default()).unwrap().value;
    check("j1 j2", got, 2.74929176357582167e-4);
}

#[test]
fn sine_product() {
    let got = sin_sin_integral(PowerIndices::new(0, 0, 0), p221(), 0.9, &SeriesControl::double_default()).unwrap();
    check("sin sin", got.value, 1.30407903322638137e-2);
}

#[test]
fn shifted_cosine() {
    let ctl = SeriesControl::default();
    for (t, want) in [(0.0, 4.31372549019590421e-2), (0.1, 4.59228871063428953e-2), (0.3, 5.17431003187700869e-2)] {
        let got = j_integral(&JSpec::new(PowerIndices::new(0, 0, 0), p221(), t), &ctl).unwrap().value;
        check(&format!("J({t})"), got, want);
    }
}

#[test]
fn cosine_kernel() {
    // r32² r31 cos(0.8 r32)
    let got = bessel_neg1_integral(PowerIndices::new(3, 1, 0), p221(), 0.8, &SeriesControl::default()).unwrap();
    check("cos", got.value, 1.02471287862703920e-2);
}

#[test]
fn third_order_bessel() {
    let p = ExpParams::new(2.35, 1.41, 0.567).unwrap();
    let spec = BesselIntegralSpec::new(PowerIndices::new(2, 1, 0), p, 1.3, 3);
    check("j3", bessel_l_integral(&spec, &SeriesControl::default()).unwrap().value, 2.82801968778658612e-3);
}

#[test]
fn yukawa() {
    check("yukawa", yukawa_matrix_element(p221(), 0.6, 1.0).unwrap().value, 1.80219426876287205e-2);
}
