//! Command-line front end: one subcommand per library operation.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 non-convergence.

pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::addition::{addition_survey, product_identity_residual, random_geometry, rayleigh_partial_sum};
use crate::basic::{basic_b_with_tol, power_g, BasicBSpec, BASIC_B_TOL};
use crate::bessel_double::{double_bessel_integral, sin_sin_integral, DoubleBesselSpec};
use crate::bessel_single::{bessel0_integral, bessel1_integral, bessel_l_integral, BesselIntegralSpec};
use crate::composite::{bessel_neg1_integral, cos_sqrt, j_integral, series_integral, JSpec, SeriesFunction, SeriesTerm};
use crate::error::{domain, Error, Result};
use crate::gamma::gamma_klm_with;
use crate::oracle::{quad3d, OracleSpec};
use crate::series::SeriesControl;
use crate::spherical::spherical_jl;
use crate::tables::{reproduce_table_one, reproduce_table_two, TableCell};
use crate::types::{Coordinate, ExpParams, IntegralResult, PowerIndices, Precision, RelativePoint};
use crate::uehling::{
    bessel_k0, ki_n, ubar_kernel, uehling_matrix_element, uehling_potential_point, yukawa_matrix_element, Pair,
    PointMode, UehlingSystem, XiMapping, XiQuadSpec, FINE_STRUCTURE,
};

pub use output::{format_sci, write_records, Field, Format, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tribody", about = "Three-particle exponential integrals")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Relative tolerance for series and quadratures.
    #[arg(long, global = true, env = "TBI_DEFAULT_TOL")]
    pub tol: Option<f64>,
    /// Term cap for the power series.
    #[arg(long, global = true)]
    pub qmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value = "standard")]
    pub precision: PrecisionArg,
    /// Append wall time in seconds (output is then no longer reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Standard,
    Extended,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct IdxArgs {
    #[arg(short = 'k', default_value_t = 0)]
    pub k: u32,
    #[arg(short = 'l', default_value_t = 0)]
    pub l: u32,
    #[arg(short = 'n', default_value_t = 0)]
    pub n: u32,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct ParamArgs {
    /// Exponent of r32.
    #[arg(short = 'a', allow_negative_numbers = true)]
    pub alpha: f64,
    /// Exponent of r31.
    #[arg(short = 'b', allow_negative_numbers = true)]
    pub beta: f64,
    /// Exponent of r21.
    #[arg(short = 'c', allow_negative_numbers = true)]
    pub gamma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoordArg {
    R32,
    R31,
    R21,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MappingArg {
    Inverse,
    Shifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PointModeArg {
    Integral,
    Ki,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpecialFn {
    K0,
    Ki,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kernel {
    /// 1
    One,
    /// j_L(V r32)
    Jl,
    /// j_L1(V r32) j_L2(V r31)
    Jj,
    /// sin(V r32) sin(V r31)
    SinSin,
    /// cos(V r32)
    Cos,
    /// cos sqrt(r32² - 2t r32)
    ShiftedCos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "I")]
    One,
    #[value(name = "II")]
    Two,
}

/// `A:n` or `A:n:B` for the term `A r^n exp(-B r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermArg(pub SeriesTerm);

impl FromStr for TermArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(format!("expected A:n or A:n:B, got {s:?}"));
        }
        let coeff = parts[0].parse::<f64>().map_err(|e| format!("coefficient {:?}: {e}", parts[0]))?;
        let power = parts[1].parse::<u32>().map_err(|e| format!("power {:?}: {e}", parts[1]))?;
        let damping = match parts.get(2) {
            Some(b) => Some(b.parse::<f64>().map_err(|e| format!("damping {b:?}: {e}"))?),
            None => None,
        };
        Ok(TermArg(SeriesTerm { coeff, power, damping }))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Γ_{k;l;n}(α,β,γ).
    Gamma {
        #[command(flatten)]
        idx: IdxArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Basic integral with real powers and a power-law denominator, by quadrature.
    BasicB {
        #[arg(short = 'a')]
        a: f64,
        #[arg(short = 'b')]
        b: f64,
        #[arg(short = 'c')]
        c: f64,
        #[arg(long, num_args = 3, default_values_t = [0.0, 0.0, 0.0])]
        p: Vec<f64>,
        #[arg(long, num_args = 4, default_values_t = [1.0, 0.0, 0.0, 0.0])]
        q: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
    },
    /// Closed form of the pure power-law integral.
    PowerG {
        #[arg(long, num_args = 3)]
        p: Vec<f64>,
        #[arg(long, num_args = 4)]
        q: Vec<f64>,
        #[arg(long)]
        s: f64,
    },
    /// Integral with one spherical Bessel factor j_L(V r); L = -1 gives the cosine integral.
    Bessel {
        #[arg(long, allow_negative_numbers = true)]
        order: i32,
        #[command(flatten)]
        idx: IdxArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "V", alias = "v")]
        v: f64,
        #[arg(long, value_enum, default_value = "r32")]
        on: CoordArg,
    },
    /// Integral with j_L1(V r32) j_L2(V r31), or sin(V r32) sin(V r31).
    Bessel2 {
        #[arg(long, num_args = 2, default_values_t = [0, 0])]
        orders: Vec<u32>,
        #[command(flatten)]
        idx: IdxArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "V", alias = "v")]
        v: f64,
        #[arg(long)]
        sin_sin: bool,
    },
    /// Uehling matrix element of the three pairwise interactions.
    UehlingMe {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, num_args = 3, allow_negative_numbers = true)]
        charges: Vec<f64>,
        #[arg(long, default_value_t = FINE_STRUCTURE)]
        fine_structure: f64,
        #[arg(long, default_value_t = 32)]
        nodes: usize,
        #[arg(long, value_enum, default_value = "inverse")]
        mapping: MappingArg,
    },
    /// Uehling potential of a point charge at distance r.
    UehlingPoint {
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        nuclear_charge: f64,
        #[arg(long, default_value_t = FINE_STRUCTURE)]
        fine_structure: f64,
        #[arg(long, value_enum, default_value = "integral")]
        mode: PointModeArg,
    },
    /// Matrix element of V0 exp(-μ r32)/r32.
    Yukawa {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        v0: f64,
    },
    /// Ū kernel of one pair at shift s.
    Ubar {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        pair: u32,
        #[arg(long)]
        shift: f64,
    },
    /// K_0(z) or Ki_n(z).
    Special {
        #[arg(long, value_enum)]
        function: SpecialFn,
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[arg(long)]
        z: f64,
    },
    /// Integral with cos sqrt(r32² - 2t r32).
    JIntegral {
        #[command(flatten)]
        idx: IdxArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 60)]
        kappa_max: usize,
    },
    /// Integral of a finite series Σ A r32^n [exp(-B r32)].
    Series {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "term", required = true, allow_hyphen_values = true)]
        terms: Vec<TermArg>,
        #[arg(long)]
        damped: bool,
    },
    /// Brute-force quadrature of r32^k r31^l r21^n × kernel.
    Oracle {
        #[command(flatten)]
        idx: IdxArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "one")]
        kernel: Kernel,
        #[arg(long, default_value_t = 0)]
        order: u32,
        #[arg(long, num_args = 2, default_values_t = [0, 0])]
        orders: Vec<u32>,
        #[arg(long = "V", alias = "v", default_value_t = 0.0)]
        v: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        /// Include the r32 r31 r21 volume element.
        #[arg(long)]
        weight: bool,
        #[arg(long, default_value_t = 48)]
        nodes: usize,
    },
    /// Recompute a published table.
    Table {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Truncated Rayleigh expansion of exp(i kr cosΘ).
    Rayleigh {
        #[arg(long)]
        kr: f64,
        #[arg(long, allow_negative_numbers = true)]
        cos: f64,
        #[arg(long, default_value_t = 30)]
        lmax: usize,
    },
    /// Per-order and product-expansion residuals over random triangles.
    AdditionSurvey {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long = "L", default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 30)]
        lmax: usize,
    },
}

struct Outcome {
    records: Vec<OutputRecord>,
    many: bool,
    /// An integral stopped at its cap without meeting the tolerance.
    unconverged: bool,
}

impl Outcome {
    fn one(record: OutputRecord, r: &IntegralResult) -> Self {
        Self {
            records: vec![record.result(r)],
            many: false,
            unconverged: !r.converged,
        }
    }

    fn value(record: OutputRecord, v: f64) -> Self {
        Self {
            records: vec![record.output("value", v)],
            many: false,
            unconverged: false,
        }
    }
}

impl From<ParamArgs> for ExpParams {
    fn from(p: ParamArgs) -> Self {
        ExpParams::raw(p.alpha, p.beta, p.gamma)
    }
}

fn with_idx(r: OutputRecord, idx: &IdxArgs) -> OutputRecord {
    r.input("k", idx.k).input("l", idx.l).input("n", idx.n)
}

fn with_params(r: OutputRecord, p: &ParamArgs) -> OutputRecord {
    r.input("alpha", p.alpha).input("beta", p.beta).input("gamma", p.gamma)
}

fn series_control(g: &GlobalArgs) -> SeriesControl {
    let mut ctl = SeriesControl::default();
    if let Some(t) = g.tol {
        ctl.rel_tol = t;
    }
    if let Some(q) = g.qmax {
        ctl.q_max = q;
    }
    ctl.precision = precision(g);
    ctl
}

fn precision(g: &GlobalArgs) -> Precision {
    match g.precision {
        PrecisionArg::Standard => Precision::Standard,
        PrecisionArg::Extended => Precision::Extended,
    }
}

fn table_records(op: &'static str, cells: Vec<TableCell>) -> Outcome {
    let records = cells
        .into_iter()
        .map(|c| {
            OutputRecord::new(op)
                .input("row", c.row)
                .input("column", c.column)
                .input("k", c.k)
                .input("l", c.l)
                .input("n", c.n)
                .input("alpha", c.alpha)
                .input("beta", c.beta)
                .input("gamma", c.gamma)
                .input("V", c.v.map(Field::Float).unwrap_or(Field::Text(String::new())))
                .output("computed", c.computed)
                .output("published", c.published)
                .output("rel_diff", c.rel_diff)
                .output("terms", c.terms_used)
                .output("converged", c.converged)
        })
        .collect();
    Outcome {
        records,
        many: true,
        unconverged: false,
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    let g = &cli.global;
    let ctl = series_control(g);
    Ok(match cli.command {
        Command::Gamma { idx, params } => {
            let rec = with_params(with_idx(OutputRecord::new("gamma"), &idx), &params);
            let r = gamma_klm_with(PowerIndices::new(idx.k, idx.l, idx.n), params.into(), precision(g))?;
            Outcome::one(rec, &r)
        }
        Command::BasicB { a, b, c, p, q, s } => {
            let spec = BasicBSpec::exponential(a, b, c, [p[0], p[1], p[2]]).with_denominator([q[0], q[1], q[2], q[3]], s);
            let rec = basic_record(OutputRecord::new("basic-b").input("a", a).input("b", b).input("c", c), &spec);
            Outcome::one(rec, &basic_b_with_tol(&spec, g.tol.unwrap_or(BASIC_B_TOL))?)
        }
        Command::PowerG { p, q, s } => {
            let spec = BasicBSpec::exponential(1.0, 1.0, 1.0, [p[0], p[1], p[2]]).with_denominator([q[0], q[1], q[2], q[3]], s);
            let rec = basic_record(OutputRecord::new("power-g"), &spec);
            Outcome::one(rec, &power_g(&spec)?)
        }
        Command::Bessel { order, idx, params, v, on } => {
            let rec = with_params(with_idx(OutputRecord::new("bessel").input("order", order), &idx), &params)
                .input("V", v)
                .input("on", format!("{on:?}").to_lowercase());
            let on = match on {
                CoordArg::R32 => Coordinate::R32,
                CoordArg::R31 => Coordinate::R31,
                CoordArg::R21 => Coordinate::R21,
            };
            let i = PowerIndices::new(idx.k, idx.l, idx.n);
            let r = match order {
                -1 => {
                    let (i, p) = on.move_to_r32(i, params.into());
                    bessel_neg1_integral(i, p, v, &ctl)?
                }
                o if o < -1 => return Err(domain(format!("Bessel order must be >= -1, got {o}"))),
                o => {
                    let spec = BesselIntegralSpec::new(i, params.into(), v, o as u32).on(on);
                    match o {
                        0 => bessel0_integral(&spec, &ctl)?,
                        1 => bessel1_integral(&spec, &ctl)?,
                        _ => bessel_l_integral(&spec, &ctl)?,
                    }
                }
            };
            Outcome::one(rec, &r)
        }
        Command::Bessel2 { orders, idx, params, v, sin_sin } => {
            let rec = with_params(with_idx(OutputRecord::new(if sin_sin { "sin-sin" } else { "bessel2" }), &idx), &params)
                .input("L1", orders[0])
                .input("L2", orders[1])
                .input("V", v);
            let mut ctl = ctl;
            if g.qmax.is_none() {
                ctl.q_max = SeriesControl::double_default().q_max;
            }
            let i = PowerIndices::new(idx.k, idx.l, idx.n);
            let r = if sin_sin {
                sin_sin_integral(i, params.into(), v, &ctl)?
            } else {
                double_bessel_integral(&DoubleBesselSpec::new(i, params.into(), v, orders[0], orders[1]), &ctl)?
            };
            Outcome::one(rec, &r)
        }
        Command::UehlingMe { params, charges, fine_structure, nodes, mapping } => {
            let rec = with_params(OutputRecord::new("uehling-me"), &params)
                .input("q1", charges[0])
                .input("q2", charges[1])
                .input("q3", charges[2])
                .input("fine_structure", fine_structure)
                .input("nodes", nodes)
                .input("mapping", format!("{mapping:?}").to_lowercase());
            let sys = UehlingSystem::new(charges[0], charges[1], charges[2], 1.0).with_fine_structure(fine_structure);
            let quad = XiQuadSpec {
                node_count: nodes,
                mapping: match mapping {
                    MappingArg::Inverse => XiMapping::Inverse,
                    MappingArg::Shifted => XiMapping::Shifted,
                },
                tol: g.tol.unwrap_or(XiQuadSpec::default().tol),
            };
            Outcome::one(rec, &uehling_matrix_element(&sys, params.into(), &quad)?)
        }
        Command::UehlingPoint { r, nuclear_charge, fine_structure, mode } => {
            let rec = OutputRecord::new("uehling-point")
                .input("r", r)
                .input("nuclear_charge", nuclear_charge)
                .input("fine_structure", fine_structure)
                .input("mode", format!("{mode:?}").to_lowercase());
            let sys = UehlingSystem::new(0.0, 0.0, 0.0, nuclear_charge).with_fine_structure(fine_structure);
            let mode = match mode {
                PointModeArg::Integral => PointMode::Integral,
                PointModeArg::Ki => PointMode::KiForm,
            };
            Outcome::value(rec, uehling_potential_point(&sys, r, mode)?)
        }
        Command::Yukawa { params, mu, v0 } => {
            let rec = with_params(OutputRecord::new("yukawa"), &params).input("mu", mu).input("v0", v0);
            Outcome::one(rec, &yukawa_matrix_element(params.into(), mu, v0)?)
        }
        Command::Ubar { params, pair, shift } => {
            let rec = with_params(OutputRecord::new("ubar"), &params).input("pair", pair).input("shift", shift);
            Outcome::value(rec, ubar_kernel(Pair::from_code(pair)?, params.into(), shift)?)
        }
        Command::Special { function, order, z } => {
            let (name, v) = match function {
                SpecialFn::K0 => ("k0", bessel_k0(z)?),
                SpecialFn::Ki => ("ki", ki_n(order, z)?),
            };
            let rec = OutputRecord::new("special").input("function", name).input("order", order).input("z", z);
            Outcome::value(rec, v)
        }
        Command::JIntegral { idx, params, t, kappa_max } => {
            let rec = with_params(with_idx(OutputRecord::new("j-integral"), &idx), &params)
                .input("t", t)
                .input("kappa_max", kappa_max);
            let spec = JSpec {
                idx: PowerIndices::new(idx.k, idx.l, idx.n),
                params: params.into(),
                t,
                kappa_max,
            };
            Outcome::one(rec, &j_integral(&spec, &ctl)?)
        }
        Command::Series { params, terms, damped } => {
            let listed = terms
                .iter()
                .map(|t| match t.0.damping {
                    Some(b) => format!("{}:{}:{}", t.0.coeff, t.0.power, b),
                    None => format!("{}:{}", t.0.coeff, t.0.power),
                })
                .collect::<Vec<_>>()
                .join(" ");
            let rec = with_params(OutputRecord::new("series"), &params)
                .input("series", listed)
                .input("damped", damped);
            let f = SeriesFunction::new(terms.into_iter().map(|t| t.0).collect());
            Outcome::one(rec, &series_integral(&f, params.into(), damped)?)
        }
        Command::Oracle { idx, params, kernel, order, orders, v, t, weight, nodes } => {
            let rec = with_params(with_idx(OutputRecord::new("oracle"), &idx), &params)
                .input("kernel", format!("{kernel:?}").to_lowercase())
                .input("order", order)
                .input("L1", orders[0])
                .input("L2", orders[1])
                .input("V", v)
                .input("t", t)
                .input("weight", weight)
                .input("nodes", nodes);
            if !(v >= 0.0) || !v.is_finite() || !t.is_finite() {
                return Err(domain(format!("need finite V >= 0 and finite t, got V = {v}, t = {t}")));
            }
            let (k, l, n) = (idx.k as i32, idx.l as i32, idx.n as i32);
            let (l1, l2) = (orders[0] as i32, orders[1] as i32);
            let f = move |r: RelativePoint| -> f64 {
                let base = r.r32.powi(k) * r.r31.powi(l) * r.r21.powi(n);
                let jl = |o: i32, x: f64| spherical_jl(o, x).unwrap_or(f64::NAN);
                base * match kernel {
                    Kernel::One => 1.0,
                    Kernel::Jl => jl(order as i32, v * r.r32),
                    Kernel::Jj => jl(l1, v * r.r32) * jl(l2, v * r.r31),
                    Kernel::SinSin => (v * r.r32).sin() * (v * r.r31).sin(),
                    Kernel::Cos => (v * r.r32).cos(),
                    Kernel::ShiftedCos => cos_sqrt(r.r32 * r.r32 - 2.0 * t * r.r32),
                }
            };
            let mut spec = OracleSpec::new(f, params.into()).with_volume_weight(weight).with_nodes(nodes);
            if let Some(tol) = g.tol {
                spec = spec.with_tol(tol);
            }
            Outcome::one(rec, &quad3d(&spec)?)
        }
        Command::Table { which } => match which {
            Which::One => table_records("table-I", reproduce_table_one()?),
            Which::Two => table_records("table-II", reproduce_table_two(&ctl)?),
        },
        Command::Rayleigh { kr, cos, lmax } => {
            let s = rayleigh_partial_sum(kr, cos, lmax)?;
            let exact = num_complex::Complex64::new(0.0, kr * cos).exp();
            let rec = OutputRecord::new("rayleigh")
                .input("kr", kr)
                .input("cos", cos)
                .input("lmax", lmax)
                .output("re", s.re)
                .output("im", s.im)
                .output("abs_err", (s - exact).norm());
            Outcome {
                records: vec![rec],
                many: false,
                unconverged: false,
            }
        }
        Command::AdditionSurvey { seed, count, k, l, lmax } => {
            let rows = addition_survey(seed, count, k, l)?;
            // the survey draws the same geometries in the same order
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let mut records = Vec::with_capacity(rows.len());
            for row in rows {
                let geom = random_geometry(&mut rng);
                records.push(
                    OutputRecord::new("addition-survey")
                        .input("index", row.index)
                        .input("seed", seed)
                        .input("k", k)
                        .input("L", l)
                        .input("lmax", lmax)
                        .input("r31", row.r31)
                        .input("r32", row.r32)
                        .input("r21", row.r21)
                        .input("theta21", row.theta21)
                        .input("theta31", row.theta31)
                        .input("theta32", row.theta32)
                        .output("angle_sum", row.angle_sum)
                        .output("lhs", row.lhs)
                        .output("rhs", row.rhs)
                        .output("termwise_residual", row.residual)
                        .output("product_residual", product_identity_residual(&geom, k, lmax)?),
                );
            }
            Outcome {
                records,
                many: true,
                unconverged: false,
            }
        }
    })
}

fn basic_record(r: OutputRecord, s: &BasicBSpec) -> OutputRecord {
    r.input("p1", s.p1)
        .input("p2", s.p2)
        .input("p3", s.p3)
        .input("q0", s.q0)
        .input("q1", s.q1)
        .input("q2", s.q2)
        .input("q3", s.q3)
        .input("s", s.s)
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            return if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            };
        }
    };
    let (format, timing) = (cli.global.format, cli.global.timing);
    let start = Instant::now();
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::NonConvergence { .. } => EXIT_NONCONVERGENCE,
                Error::Domain(_) | Error::Overflow(_) => EXIT_DOMAIN,
            };
        }
    };
    let mut records = outcome.records;
    if timing {
        let secs = start.elapsed().as_secs_f64();
        for r in &mut records {
            r.outputs.push(("wall_time", Field::Float(secs)));
        }
    }
    if let Err(e) = write_records(out, &records, format, outcome.many) {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if outcome.unconverged {
        let _ = writeln!(err, "error: tolerance not reached before the term cap; value printed is the partial sum");
        return EXIT_NONCONVERGENCE;
    }
    EXIT_OK
}
