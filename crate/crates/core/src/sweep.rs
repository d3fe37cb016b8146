//! Deterministic parameter sweeps over pulse programs.
//!
//! A [`SweepSpec`] is a base program plus a list of axes (explicit values per
//! parameter) and a list of observables. [`run_sweep`] evaluates the full
//! cartesian grid, in lexicographic axis order, into a [`CorrelationReport`]
//! whose CSV serialization is byte-identical across runs for the same spec
//! and seed. Grid points are independent, so evaluation may run on however
//! many threads the ambient rayon pool provides; results are gathered back
//! into deterministic order regardless.
//!
//! Per-point failures (for example requesting a closed form where none
//! exists) land in the report's error column and never abort the sweep.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::discord::{
    conditional_entropy_theta, discord_exact_x, discord_optimized, OptimizerConfig,
};
use crate::entangle::{concurrence_oracle, concurrence_scheme_a, concurrence_scheme_b_quarter};
use crate::hamiltonians::thermal_state;
use crate::pulsekit::{magnetization_x, propagate, PulseProgram};
use crate::qmat::DensityMatrix;
use crate::{real, Error, Result, Scalar};

/// Which scheme the swept programs use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeChoice {
    A,
    B,
}

impl SchemeChoice {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeChoice::A => "A",
            SchemeChoice::B => "B",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "A" | "a" => Some(SchemeChoice::A),
            "B" | "b" => Some(SchemeChoice::B),
            _ => None,
        }
    }
}

/// Parameters a sweep axis may range over. `MeasurePhi` is the azimuthal
/// measurement angle, off the default path (it stays at 0 unless swept or
/// set) and exists so the angle-reduction claim can be audited on a full
/// (theta, Phi) grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisParam {
    A,
    Phi,
    Tbar,
    Beta,
    Periods,
    Theta,
    MeasurePhi,
}

impl AxisParam {
    pub fn name(&self) -> &'static str {
        match self {
            AxisParam::A => "a",
            AxisParam::Phi => "phi",
            AxisParam::Tbar => "tbar",
            AxisParam::Beta => "beta",
            AxisParam::Periods => "periods",
            AxisParam::Theta => "theta",
            AxisParam::MeasurePhi => "measure_phi",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "a" => Some(AxisParam::A),
            "phi" => Some(AxisParam::Phi),
            "tbar" => Some(AxisParam::Tbar),
            "beta" => Some(AxisParam::Beta),
            "periods" => Some(AxisParam::Periods),
            "theta" => Some(AxisParam::Theta),
            "measure_phi" => Some(AxisParam::MeasurePhi),
            _ => None,
        }
    }
}

/// Observables a sweep can record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Magnetization,
    ConcurrenceOracle,
    ConcurrenceClosed,
    DiscordExact,
    DiscordOptimized,
    ConditionalEntropyCurve,
}

impl Observable {
    pub const ALL: [Observable; 6] = [
        Observable::Magnetization,
        Observable::ConcurrenceOracle,
        Observable::ConcurrenceClosed,
        Observable::DiscordExact,
        Observable::DiscordOptimized,
        Observable::ConditionalEntropyCurve,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Observable::Magnetization => "magnetization",
            Observable::ConcurrenceOracle => "concurrence_oracle",
            Observable::ConcurrenceClosed => "concurrence_closed",
            Observable::DiscordExact => "discord_exact",
            Observable::DiscordOptimized => "discord_optimized",
            Observable::ConditionalEntropyCurve => "conditional_entropy_curve",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.name() == s)
    }
}

/// One sweep axis: a parameter and its explicit value list.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<T> {
    pub param: AxisParam,
    pub values: Vec<T>,
}

impl<T: Scalar> Axis<T> {
    pub fn new(param: AxisParam, values: Vec<T>) -> Self {
        Self { param, values }
    }

    /// Evenly spaced inclusive grid.
    pub fn linspace(param: AxisParam, start: T, stop: T, count: usize) -> Self {
        let values = if count <= 1 {
            vec![start]
        } else {
            let step = (stop - start) / real::<T>((count - 1) as f64);
            (0..count)
                .map(|k| start + step * real::<T>(k as f64))
                .collect()
        };
        Self { param, values }
    }
}

/// A base program plus axes and observables.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub scheme: SchemeChoice,
    pub a: T,
    pub phi: T,
    pub tbar: T,
    pub beta: T,
    pub periods: u64,
    pub theta: T,
    pub axes: Vec<Axis<T>>,
    pub observables: Vec<Observable>,
    pub seed: u64,
    pub optimizer: OptimizerConfig,
}

impl<T: Scalar> SweepSpec<T> {
    /// A neutral base: scheme A at its stationary point, one period.
    pub fn new(scheme: SchemeChoice) -> Self {
        Self {
            scheme,
            a: real::<T>(2.0),
            phi: real::<T>(core::f64::consts::FRAC_PI_2),
            tbar: T::one(),
            beta: T::one(),
            periods: 1,
            theta: real::<T>(core::f64::consts::FRAC_PI_2),
            axes: Vec::new(),
            observables: vec![Observable::ConcurrenceClosed],
            seed: 0,
            optimizer: OptimizerConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.observables.is_empty() {
            return Err(Error::InvalidSweepSpec {
                reason: "no observables requested".into(),
            });
        }
        for (i, axis) in self.axes.iter().enumerate() {
            if axis.values.is_empty() {
                return Err(Error::InvalidSweepSpec {
                    reason: format!("axis '{}' has no values", axis.param.name()),
                });
            }
            if self.axes[..i].iter().any(|b| b.param == axis.param) {
                return Err(Error::InvalidSweepSpec {
                    reason: format!("axis '{}' appears twice", axis.param.name()),
                });
            }
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Stable textual form used for the report hash.
    fn canonical_string(&self) -> String {
        use core::fmt::Write as _;
        let mut s = String::new();
        let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
        let _ = write!(
            s,
            "scheme={};a={:.17e};phi={:.17e};tbar={:.17e};beta={:.17e};periods={};theta={:.17e};",
            self.scheme.name(),
            f(self.a),
            f(self.phi),
            f(self.tbar),
            f(self.beta),
            self.periods,
            f(self.theta),
        );
        for axis in &self.axes {
            let _ = write!(s, "axis.{}=", axis.param.name());
            for v in &axis.values {
                let _ = write!(s, "{:.17e},", f(*v));
            }
            s.push(';');
        }
        let _ = write!(s, "observables=");
        for o in &self.observables {
            let _ = write!(s, "{},", o.name());
        }
        let _ = write!(
            s,
            ";opt={},{},{:.17e},{:.17e}",
            self.optimizer.population, self.optimizer.generations, self.optimizer.sigma0,
            self.optimizer.decay,
        );
        s
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Row<T> {
    /// Axis values, in axis order.
    pub params: Vec<T>,
    /// One entry per observable; `None` where evaluation failed.
    pub values: Vec<Option<T>>,
    pub error: Option<String>,
}

/// Provenance carried by a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMetadata {
    pub spec_hash: String,
    pub code_version: String,
    pub seed: u64,
}

/// The evaluated grid, ready for CSV serialization.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport<T> {
    pub axis_params: Vec<AxisParam>,
    pub observables: Vec<Observable>,
    pub rows: Vec<Row<T>>,
    pub metadata: ReportMetadata,
}

impl<T: Scalar> CorrelationReport<T> {
    /// Writes `# key=value` provenance lines, a header row, then one CSV row
    /// per grid point. Reals carry 15 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# spec_hash={}", self.metadata.spec_hash)?;
        writeln!(w, "# code_version={}", self.metadata.code_version)?;
        writeln!(w, "# seed={}", self.metadata.seed)?;
        let mut header: Vec<&str> = self.axis_params.iter().map(|p| p.name()).collect();
        header.extend(self.observables.iter().map(|o| o.name()));
        header.push("error");
        writeln!(w, "{}", header.join(","))?;
        for row in &self.rows {
            let mut fields: Vec<String> = Vec::with_capacity(header.len());
            for (param, value) in self.axis_params.iter().zip(&row.params) {
                fields.push(format_param(*param, *value));
            }
            for value in &row.values {
                fields.push(match value {
                    Some(v) => format_real(*v),
                    None => String::new(),
                });
            }
            fields.push(csv_escape(row.error.as_deref().unwrap_or("")));
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("CSV output is ASCII")
    }
}

fn format_real<T: Scalar>(v: T) -> String {
    format!("{:.14e}", v.to_f64().unwrap_or(f64::NAN))
}

fn format_param<T: Scalar>(param: AxisParam, v: T) -> String {
    match param {
        AxisParam::Periods => format!("{}", v.to_f64().unwrap_or(0.0) as u64),
        _ => format_real(v),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn fnv1a64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The fully resolved parameters of one grid point.
#[derive(Debug, Clone, Copy)]
struct Point<T> {
    a: T,
    phi: T,
    tbar: T,
    beta: T,
    periods: u64,
    theta: T,
}

impl<T: Scalar> Point<T> {
    fn program(&self, scheme: SchemeChoice) -> Result<PulseProgram<T>> {
        match scheme {
            SchemeChoice::A => PulseProgram::scheme_a(self.a, self.tbar, self.periods),
            SchemeChoice::B => PulseProgram::scheme_b(self.phi, self.tbar, self.periods),
        }
    }

    fn propagated(&self, scheme: SchemeChoice) -> Result<DensityMatrix<T>> {
        let rho0 = thermal_state(self.beta)?;
        Ok(propagate(&self.program(scheme)?, &rho0))
    }
}

fn near<T: Scalar>(x: T, target: f64) -> bool {
    (x - real::<T>(target)).abs() <= real::<T>(1e-12)
}

fn evaluate_observable<T: Scalar>(
    spec: &SweepSpec<T>,
    point: &Point<T>,
    obs: Observable,
    row_seed: u64,
) -> Result<T> {
    let scheme_a_only = |name: &str| -> Result<()> {
        match spec.scheme {
            SchemeChoice::A => Ok(()),
            SchemeChoice::B => Err(Error::InvalidSweepSpec {
                reason: format!("{name} is defined for scheme A only"),
            }),
        }
    };
    let value = match obs {
        Observable::Magnetization => magnetization_x(&point.propagated(spec.scheme)?),
        Observable::ConcurrenceOracle => concurrence_oracle(&point.propagated(spec.scheme)?)?,
        Observable::ConcurrenceClosed => match spec.scheme {
            SchemeChoice::A => concurrence_scheme_a(point.a, point.periods, point.tbar, point.beta),
            SchemeChoice::B => {
                if near(point.phi, core::f64::consts::FRAC_PI_4) {
                    concurrence_scheme_b_quarter(point.periods, point.tbar, point.beta)
                } else if near(point.phi, core::f64::consts::FRAC_PI_2) {
                    // Coincides with scheme A at a = 2: identically separable.
                    concurrence_scheme_a(real::<T>(2.0), point.periods, point.tbar, point.beta)
                } else {
                    return Err(Error::InvalidSweepSpec {
                        reason: format!(
                            "no closed-form concurrence for scheme B at phi={}",
                            point.phi
                        ),
                    });
                }
            }
        },
        Observable::DiscordExact => {
            scheme_a_only("discord_exact")?;
            discord_exact_x(point.a, point.periods, point.tbar, point.beta)
        }
        Observable::DiscordOptimized => {
            scheme_a_only("discord_optimized")?;
            let cfg = OptimizerConfig {
                seed: row_seed,
                ..spec.optimizer.clone()
            };
            discord_optimized(point.a, point.periods, point.tbar, point.beta, &cfg).discord
        }
        Observable::ConditionalEntropyCurve => {
            scheme_a_only("conditional_entropy_curve")?;
            conditional_entropy_theta(point.a, point.periods, point.tbar, point.beta, point.theta)
        }
    };
    if !value.is_finite() {
        return Err(Error::InvalidSweepSpec {
            reason: format!("{} evaluated to a non-finite value", obs.name()),
        });
    }
    Ok(value)
}

fn evaluate_row<T: Scalar>(spec: &SweepSpec<T>, index: usize) -> Row<T> {
    // Decode the lexicographic index into per-axis positions.
    let mut params = Vec::with_capacity(spec.axes.len());
    let mut rem = index;
    let mut stride: usize = spec.axes.iter().map(|a| a.values.len()).product();
    let mut point = Point {
        a: spec.a,
        phi: spec.phi,
        tbar: spec.tbar,
        beta: spec.beta,
        periods: spec.periods,
        theta: spec.theta,
    };
    for axis in &spec.axes {
        stride /= axis.values.len();
        let pos = rem / stride;
        rem %= stride;
        let value = axis.values[pos];
        params.push(value);
        match axis.param {
            AxisParam::A => point.a = value,
            AxisParam::Phi => point.phi = value,
            AxisParam::Tbar => point.tbar = value,
            AxisParam::Beta => point.beta = value,
            AxisParam::Periods => point.periods = value.to_f64().unwrap_or(0.0).round() as u64,
            AxisParam::Theta => point.theta = value,
        }
    }
    let row_seed = splitmix64(spec.seed ^ (index as u64));
    let mut values = Vec::with_capacity(spec.observables.len());
    let mut error: Option<String> = None;
    for &obs in &spec.observables {
        match evaluate_observable(spec, &point, obs, row_seed) {
            Ok(v) => values.push(Some(v)),
            Err(e) => {
                values.push(None);
                if error.is_none() {
                    error = Some(e.to_string());
                }
            }
        }
    }
    Row {
        params,
        values,
        error,
    }
}

/// Evaluates every grid point of the spec, in parallel, into a report with
/// rows in lexicographic axis order.
pub fn run_sweep<T: Scalar>(spec: &SweepSpec<T>) -> Result<CorrelationReport<T>> {
    spec.validate()?;
    let n = spec.row_count();
    let rows: Vec<Row<T>> = (0..n)
        .into_par_iter()
        .map(|index| evaluate_row(spec, index))
        .collect();
    Ok(CorrelationReport {
        axis_params: spec.axes.iter().map(|a| a.param).collect(),
        observables: spec.observables.clone(),
        rows,
        metadata: ReportMetadata {
            spec_hash: format!("{:016x}", fnv1a64(spec.canonical_string().as_bytes())),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: spec.seed,
        },
    })
}
