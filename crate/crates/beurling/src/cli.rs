//! Command-line front end: value tables, curve sampling and verification suites.
//!
//! Every subcommand accepts `--config path.json`; keys in the file use the flag
//! names and override the flags. Exit codes: 0 success, 1 failed verification,
//! 2 invalid input, 3 numeric failure.

use crate::bessel::{self, ZeroKind};
use crate::error::{Error, Result};
use crate::extremal::{self, ExtremalValueQuery, RadialExtremal, Side};
use crate::freq::{Majorant, Minorant};
use crate::hilbert::{self, FormSpec, PointConfig};
use crate::measures::{g_mu, value_mu, MeasureSpec, Subordinated};
use crate::opuc::{self, CircleMeasure, NodeSet, OpucBasis};
use crate::Order;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "beurling", version, about = "Extremal one-sided approximations of exponential type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of optimal values U for a λ grid or a measure
    #[command(allow_negative_numbers = true)]
    Values(ValuesArgs),
    /// Sample an extremal function against its target on a grid
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Run a verification suite and report every check
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

fn parse_json<T: DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_str(s).map_err(|e| format!("invalid JSON: {e}"))
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct ValuesArgs {
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    dimension: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    /// comma-separated λ values
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    lambda: Vec<f64>,
    /// measure as JSON, e.g. '{"kind":"power","alpha":0}'
    #[arg(long, value_parser = parse_json::<MeasureSpec>)]
    measure: Option<MeasureSpec>,
    /// omitted: both sides
    #[arg(long)]
    side: Option<Side>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
enum Target {
    #[value(name = "minorant")]
    #[serde(rename = "minorant")]
    Minorant,
    #[value(name = "majorant")]
    #[serde(rename = "majorant")]
    Majorant,
    #[value(name = "G_mu", alias = "g_mu")]
    #[serde(rename = "G_mu", alias = "g_mu")]
    GMu,
    #[value(name = "trig_min")]
    #[serde(rename = "trig_min")]
    TrigMin,
    #[value(name = "trig_maj")]
    #[serde(rename = "trig_maj")]
    TrigMaj,
    #[value(name = "h_sigma")]
    #[serde(rename = "h_sigma")]
    HSigma,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct SampleArgs {
    #[arg(long, value_enum)]
    target: Option<Target>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    dimension: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_parser = parse_json::<MeasureSpec>)]
    measure: Option<MeasureSpec>,
    /// circle measure as JSON (default lebesgue)
    #[arg(long, value_parser = parse_json::<CircleMeasure>)]
    circle: Option<CircleMeasure>,
    /// trigonometric degree
    #[arg(long = "n")]
    #[serde(rename = "n")]
    degree: Option<usize>,
    #[arg(long)]
    side: Option<Side>,
    /// start,stop,count
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    grid: Vec<f64>,
    /// sample at the first k interpolation nodes instead of a grid
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    Bessel,
    Exp,
    Radial,
    Hilbert,
    Periodic,
    All,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Option<Suite>,
    #[arg(long)]
    seed: Option<u64>,
    /// replaces every tolerance of the suite
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

/// Overlay the keys of a JSON config file onto parsed flags.
fn merge_config<T: Serialize + DeserializeOwned>(args: &T, path: &Option<PathBuf>) -> Result<T> {
    let Some(path) = path else {
        return serde_json::from_value(serde_json::to_value(args).expect("args serialize")).map_err(|e| Error::InvalidInput(e.to_string()));
    };
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
    let cfg: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("config {} is not JSON: {e}", path.display())))?;
    let serde_json::Value::Object(cfg) = cfg else {
        return Err(Error::InvalidInput("config must be a JSON object".into()));
    };
    let mut base = match serde_json::to_value(args).expect("args serialize") {
        serde_json::Value::Object(m) => m,
        _ => unreachable!("argument structs serialize to objects"),
    };
    for (k, v) in cfg {
        if k == "command" {
            continue;
        }
        if !base.contains_key(&k) {
            return Err(Error::InvalidInput(format!("unknown config key '{k}'")));
        }
        base.insert(k, v);
    }
    serde_json::from_value(serde_json::Value::Object(base)).map_err(|e| Error::InvalidInput(format!("config: {e}")))
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("missing required parameter --{name}")))
}

fn write_rows<R: Serialize>(rows: &[R], format: Format, output: &Option<PathBuf>) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidInput(format!("cannot write output: {e}"));
    let mut sink: Box<dyn Write> = match output {
        Some(p) => Box::new(std::fs::File::create(p).map_err(io)?),
        None => Box::new(std::io::stdout().lock()),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, rows).map_err(|e| Error::InvalidInput(e.to_string()))?;
            writeln!(sink).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in rows {
                w.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ValueRow {
    nu: f64,
    #[serde(rename = "N")]
    dimension: usize,
    delta: f64,
    lambda: Option<f64>,
    measure: Option<String>,
    side: Side,
    value: f64,
}

/// Outcome of a table command: rows computed and rows dropped for numeric reasons.
struct Table<R> {
    rows: Vec<R>,
    dropped: usize,
}

/// Numbers of a row, checked before it is written.
trait Row {
    fn numbers(&self) -> Vec<f64>;
}

impl<R: Row> Table<R> {
    fn new() -> Self {
        Table { rows: Vec::new(), dropped: 0 }
    }

    /// Validation errors abort. Numeric errors and NaN drop the row and count as
    /// failures; an infinite value (a target that is infinite there) is only skipped.
    fn push(&mut self, what: &str, r: Result<R>) -> Result<()> {
        match r {
            Ok(row) => {
                let v = row.numbers();
                if v.iter().any(|x| x.is_nan()) {
                    eprintln!("skipping {what}: NaN value");
                    self.dropped += 1;
                } else if v.iter().any(|x| x.is_infinite()) {
                    eprintln!("skipping {what}: infinite value");
                } else {
                    self.rows.push(row);
                }
            }
            Err(e) if e.is_validation() => return Err(e),
            Err(e) => {
                eprintln!("skipping {what}: {e}");
                self.dropped += 1;
            }
        }
        Ok(())
    }
}

impl Row for ValueRow {
    fn numbers(&self) -> Vec<f64> {
        vec![self.value]
    }
}

impl Row for SampleRow {
    fn numbers(&self) -> Vec<f64> {
        vec![self.target, self.reference, self.gap]
    }
}

fn cmd_values(a: ValuesArgs) -> Result<Table<ValueRow>> {
    let nu = need(a.nu, "nu")?;
    let order = Order::new(nu)?;
    let dimension = a.dimension.unwrap_or(1);
    let delta = a.delta.unwrap_or(2.0);
    let sides = a.side.map_or(vec![Side::Minus, Side::Plus], |s| vec![s]);
    let mut t = Table::new();
    match (&a.measure, a.lambda.is_empty()) {
        (Some(_), false) => return Err(Error::InvalidInput("give either --lambda or --measure, not both".into())),
        (None, true) => return Err(Error::InvalidInput("the lambda grid is empty".into())),
        (Some(m), true) => {
            m.validate()?;
            let label = serde_json::to_string(m).expect("measure serializes");
            for side in sides {
                let r = value_mu(m, order, dimension, delta, side).map(|value| ValueRow {
                    nu,
                    dimension,
                    delta,
                    lambda: None,
                    measure: Some(label.clone()),
                    side,
                    value,
                });
                t.push(&format!("measure {label} ({side})"), r)?;
            }
        }
        (None, false) => {
            for &lambda in &a.lambda {
                for &side in &sides {
                    let q = ExtremalValueQuery::new(order, dimension, delta, lambda, side)?;
                    let r = extremal::value(&q).map(|value| ValueRow { nu, dimension, delta, lambda: Some(lambda), measure: None, side, value });
                    t.push(&format!("lambda = {lambda} ({side})"), r)?;
                }
            }
        }
    }
    Ok(t)
}

#[derive(Debug, Serialize)]
struct SampleRow {
    x: f64,
    target: f64,
    reference: f64,
    gap: f64,
}

fn linspace(grid: &[f64]) -> Result<Vec<f64>> {
    if grid.len() != 3 || !(grid[2] >= 1.0) || grid[2].fract() != 0.0 || !grid[0].is_finite() || !grid[1].is_finite() {
        return Err(Error::InvalidInput("--grid takes start,stop,count with count >= 1".into()));
    }
    let n = grid[2] as usize;
    if n == 1 {
        return Ok(vec![grid[0]]);
    }
    Ok((0..n).map(|i| grid[0] + (grid[1] - grid[0]) * i as f64 / (n - 1) as f64).collect())
}

/// `x ↦ (value, gap)` for a one-sided extremal.
type Curve = Box<dyn Fn(f64) -> (f64, f64)>;

fn cmd_sample(a: SampleArgs) -> Result<Table<SampleRow>> {
    let target = need(a.target, "target")?;
    let grid_or = |default: [f64; 3]| if a.grid.is_empty() { linspace(&default) } else { linspace(&a.grid) };
    let mut t = Table::new();
    let emit = |t: &mut Table<SampleRow>, x: f64, r: Result<(f64, f64, f64)>| {
        t.push(&format!("x = {x}"), r.map(|(target, reference, gap)| SampleRow { x, target, reference, gap }))
    };
    match target {
        Target::Minorant | Target::Majorant => {
            let order = Order::new(need(a.nu, "nu")?)?;
            let lambda = need(a.lambda, "lambda")?;
            let (f, nodes): (Curve, Vec<f64>) = if target == Target::Minorant {
                let m = Minorant::new(order, lambda)?;
                let nodes = m.nodes();
                (Box::new(move |x| (m.eval(x), m.gap(x))), nodes)
            } else {
                let m = Majorant::new(order, lambda)?;
                let mut nodes = vec![0.0];
                nodes.extend(m.nodes());
                (Box::new(move |x| (m.eval(x), m.gap(x))), nodes)
            };
            let xs = match a.nodes {
                Some(k) => extend_nodes(order, target == Target::Minorant, nodes, k)?,
                None => grid_or([-20.0, 20.0, 401.0])?,
            };
            for x in xs {
                let (v, gap) = f(x);
                emit(&mut t, x, Ok((v, (-lambda * x.abs()).exp(), gap)))?;
            }
        }
        Target::GMu => {
            let m = need(a.measure.clone(), "measure")?;
            let side = a.side.unwrap_or(Side::Minus);
            let order = Order::new(need(a.nu, "nu")?)?;
            let s = Subordinated::new(&m, order, a.dimension.unwrap_or(1), a.delta.unwrap_or(2.0), side)?;
            if a.nodes.is_some() {
                return Err(Error::InvalidInput("--nodes is not available for G_mu; use --grid".into()));
            }
            for r in grid_or([0.05, 5.0, 100.0])? {
                let row = (|| {
                    let (v, g) = (s.eval_norm(r)?, g_mu(&m, r)?);
                    Ok((v, g, if side == Side::Minus { g - v } else { v - g }))
                })();
                emit(&mut t, r, row)?;
            }
        }
        Target::TrigMin | Target::TrigMaj | Target::HSigma => {
            let circle = a.circle.clone().unwrap_or(CircleMeasure::Lebesgue);
            let basis = OpucBasis::build(&circle, need(a.degree, "n")?)?;
            let side = match target {
                Target::TrigMin => Side::Minus,
                Target::TrigMaj => Side::Plus,
                _ => a.side.unwrap_or(Side::Minus),
            };
            let (ext, reference): (_, Box<dyn Fn(f64) -> Result<f64>>) = if target == Target::HSigma {
                let m = need(a.measure.clone(), "measure")?;
                (opuc::extremal_trig_sigma(&basis, &m, side)?, Box::new(move |x| opuc::h_sigma(&m, x)))
            } else {
                let lambda = need(a.lambda, "lambda")?;
                (opuc::extremal_trig(&basis, lambda, side)?, Box::new(move |x| Ok(opuc::f_lambda(lambda, x))))
            };
            let xs = match a.nodes {
                Some(k) => basis.nodes(if side == Side::Minus { NodeSet::A } else { NodeSet::B }).iter().take(k).copied().collect(),
                None => grid_or([-0.5, 0.5, 1001.0])?,
            };
            for x in xs {
                let row = reference(x).map(|r| {
                    let v = ext.poly.eval(x);
                    (v, r, if side == Side::Minus { r - v } else { v - r })
                });
                emit(&mut t, x, row)?;
            }
        }
    }
    Ok(t)
}

/// First k interpolation nodes, extending the zero table when the cached list is short.
fn extend_nodes(order: Order, minorant: bool, mut nodes: Vec<f64>, k: usize) -> Result<Vec<f64>> {
    if nodes.len() < k {
        let kind = if minorant { ZeroKind::A } else { ZeroKind::B };
        let mut z = bessel::zeros(order, kind, k)?.zeros;
        if !minorant {
            z.insert(0, 0.0);
        }
        nodes = z;
    }
    nodes.truncate(k);
    Ok(nodes)
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub check: String,
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    suite: Suite,
    seed: u64,
    pass: bool,
    failures: Vec<String>,
    checks: Vec<CheckResult>,
}

struct Checker {
    suite: &'static str,
    override_tol: Option<f64>,
    out: Vec<CheckResult>,
}

impl Checker {
    /// `f` returns a nonnegative error; the check passes when it is at most the tolerance.
    fn check(&mut self, name: impl Into<String>, tol: f64, f: impl FnOnce() -> Result<f64>) {
        let tolerance = self.override_tol.unwrap_or(tol);
        let (measured, note) = match f() {
            Ok(v) if v.is_nan() => (None, Some("computed error is NaN".to_string())),
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = measured.is_some_and(|m| m <= tolerance);
        self.out.push(CheckResult { suite: self.suite, check: name.into(), measured, tolerance, pass, note });
    }
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

fn suite_bessel(c: &mut Checker) {
    let zero_check = |nu: f64, kind: ZeroKind, shift: f64| {
        move || -> Result<f64> {
            let t = bessel::zeros(Order::new(nu)?, kind, 20)?;
            Ok(max_abs(t.zeros.iter().enumerate().map(|(k, z)| z - (k as f64 + 1.0 - shift) * PI)))
        }
    };
    c.check("A zeros at nu=-1/2 are (k-1/2)pi", 1e-12, zero_check(-0.5, ZeroKind::A, 0.5));
    c.check("B zeros at nu=-1/2 are k pi from k=0", 1e-12, zero_check(-0.5, ZeroKind::B, 1.0));
    c.check("A zeros at nu=1/2 are k pi", 1e-12, zero_check(0.5, ZeroKind::A, 0.0));
    c.check("A at nu=-1/2 is cos", 1e-13, || {
        let o = Order::new(-0.5)?;
        Ok(max_abs((0..200).map(|i| {
            let x = i as f64 * 0.1;
            bessel::eval_A(o, x) - x.cos()
        })))
    });
    c.check("kernel diagonal at A zeros equals B^2/pi", 1e-12, || {
        let o = Order::new(1.0)?;
        let t = bessel::zeros(o, ZeroKind::A, 10)?;
        Ok(max_abs(t.zeros.iter().zip(&t.kernel_diag).map(|(&x, &k)| {
            let b = bessel::eval_B(o, x);
            (k - b * b / PI) / k
        })))
    });
}

fn suite_exp(c: &mut Checker) {
    let o = Order::new(-0.5).expect("valid order");
    for l in [0.1, 1.0, 10.0] {
        c.check(format!("minus closed form at nu=-1/2, lambda={l}"), 1e-10, || {
            let want = 2.0 / l - PI / (PI * l / 2.0).sinh();
            Ok(((extremal::value_min_base(o, l)? - want) / want).abs())
        });
        c.check(format!("plus closed form at nu=-1/2, lambda={l}"), 1e-10, || {
            let want = PI / (PI * l / 2.0).tanh() - 2.0 / l;
            Ok(((extremal::value_max_base(o, l)? - want) / want).abs())
        });
    }
    for nu in [0.0, 1.0] {
        for side in [Side::Minus, Side::Plus] {
            c.check(format!("weighted quadrature equals node sum at nu={nu}, lambda=1 ({side})"), 1e-6, || {
                Ok(extremal::verify_value_by_quadrature(Order::new(nu)?, 1.0, side)?.abs_diff)
            });
        }
    }
    c.check("minorant and majorant one-sided on [-50,50] at nu=0, lambda=1", 1e-10, || {
        let o = Order::new(0.0)?;
        let (lo, hi) = (Minorant::new(o, 1.0)?, Majorant::new(o, 1.0)?);
        Ok((0..=2000)
            .map(|i| -50.0 + 0.05 * i as f64)
            .map(|x| (-lo.gap(x)).max(-hi.gap(x)).max(0.0))
            .fold(0.0, f64::max))
    });
}

fn suite_radial(c: &mut Checker) {
    c.check("values example: nu=-1/2, N=1, delta=2, lambda=1, plus", 1e-10, || {
        let q = ExtremalValueQuery::new(Order::new(-0.5)?, 1, 2.0, 1.0, Side::Plus)?;
        let want = PI / (PI / 2.0).tanh() - 2.0;
        Ok(((extremal::value(&q)? - want) / want).abs())
    });
    for n in [2usize, 3, 4] {
        c.check(format!("dimension factor for N={n}"), 1e-14, || {
            let o = Order::new(0.0)?;
            let v1 = extremal::value(&ExtremalValueQuery::new(o, 1, 1.0, 0.7, Side::Minus)?)?;
            let vn = extremal::value(&ExtremalValueQuery::new(o, n, 1.0, 0.7, Side::Minus)?)?;
            Ok((vn / v1 - extremal::half_sphere_area(n)).abs() / extremal::half_sphere_area(n))
        });
    }
    c.check("radial lift one-sided in N=3", 1e-10, || {
        let o = Order::new(0.5)?;
        let mut worst = 0.0f64;
        for side in [Side::Minus, Side::Plus] {
            let f = RadialExtremal::new(o, 3, 1.5, 0.8, side)?;
            for i in 0..=1000 {
                let r = 0.02 * i as f64;
                let gap = f.target_norm(r) - f.eval_norm(r);
                worst = worst.max(if side == Side::Minus { -gap } else { gap });
            }
        }
        Ok(worst.max(0.0))
    });
}

fn eigen_violation(spec: &FormSpec, cfg: &PointConfig, seed: u64) -> Result<f64> {
    let rep = hilbert::verify_bounds(spec, cfg, 100, seed)?;
    let lo = (-rep.u_minus - rep.min_eigenvalue).max(-rep.u_minus - rep.min_quadform_ratio);
    let hi = (rep.max_eigenvalue - rep.u_plus).max(rep.max_quadform_ratio - rep.u_plus);
    Ok(lo.max(hi).max(0.0))
}

fn suite_hilbert(c: &mut Checker, seed: u64) {
    c.check("N=1 atom form within bounds", 1e-8, || {
        let spec = FormSpec { order: Order::new(-0.5)?, r: 0, measure: MeasureSpec::atom(1.0, 1.0) };
        let cfg = PointConfig::new(1, vec![vec![0.0], vec![1.0], vec![2.5], vec![4.0], vec![5.3]], 1.0)?;
        eigen_violation(&spec, &cfg, seed)
    });
    c.check("N=2 power(0.5) form within bounds on a random configuration", 1e-8, || {
        let spec = FormSpec { order: Order::new(0.0)?, r: 0, measure: MeasureSpec::power(0.5) };
        let cfg = PointConfig::random_well_spaced(2, 8, 1.0, 6.0, seed)?;
        eigen_violation(&spec, &cfg, seed)
    });
    c.check("r=0 power kernel closed form vs lambda quadrature", 1e-7, || {
        let mut worst = 0.0f64;
        for (n, alpha, rho) in [(1usize, -0.5, 1.3), (2, 0.5, 2.0), (3, 1.2, 0.9)] {
            let want = hilbert::power_closed_form(n, alpha, rho);
            let got = hilbert::q_numeric(n, 0, &MeasureSpec::power(alpha), rho)?;
            worst = worst.max(((got - want) / want).abs());
        }
        Ok(worst)
    });
}

fn suite_periodic(c: &mut Checker) {
    c.check("lebesgue kernel diagonal is n+1", 1e-12, || {
        let b = OpucBasis::build(&CircleMeasure::Lebesgue, 4)?;
        Ok(max_abs(b.nodes(NodeSet::A).iter().chain(b.nodes(NodeSet::B)).map(|&t| b.kernel_diag(t) - 5.0)))
    });
    c.check("trig_maj one-sided for lebesgue, n=4, lambda=1", 1e-9, || {
        let b = OpucBasis::build(&CircleMeasure::Lebesgue, 4)?;
        let e = opuc::extremal_trig(&b, 1.0, Side::Plus)?;
        Ok((0..10_000).map(|i| -0.5 + i as f64 * 1e-4).map(|t| opuc::f_lambda(1.0, t) - e.poly.eval(t)).fold(0.0, f64::max))
    });
    c.check("h_sigma for dlambda/lambda is -log|2 sin pi theta| + log 2", 1e-7, || {
        let mut worst = 0.0f64;
        for t in [0.1, 0.25, 0.4] {
            let want = -(2.0 * (PI * t).sin()).abs().ln() + 2f64.ln();
            worst = worst.max((opuc::h_sigma(&MeasureSpec::Log, t)? - want).abs());
        }
        Ok(worst)
    });
    let sphere = CircleMeasure::Sphere { n: 3, w_theta: vec![], w_values: vec![] };
    c.check("sphere N=3 induced measure has mass 1", 1e-10, || Ok((sphere.raw_mass()? - 1.0).abs()));
    c.check("sphere N=3 quadrature exact on z^k, n=8", 1e-9, || {
        let b = OpucBasis::build(&sphere, 8)?;
        let mut worst = 0.0f64;
        for k in -8i32..=8 {
            let mut w = vec![Complex64::new(0.0, 0.0); 17];
            w[(k + 8) as usize] = Complex64::new(1.0, 0.0);
            let want = b.moments()[k.unsigned_abs() as usize];
            for set in [NodeSet::A, NodeSet::B] {
                worst = worst.max((b.quadrature(&w, set)? - want).norm());
            }
        }
        Ok(worst)
    });
}

/// Run one suite (or all) and return every check, in a fixed order.
pub fn run_suite(suite: &str, seed: u64, tolerance: Option<f64>) -> Result<Vec<CheckResult>> {
    let suite = Suite::from_str(suite, true).map_err(Error::InvalidInput)?;
    Ok(run(suite, seed, tolerance))
}

fn run(suite: Suite, seed: u64, tolerance: Option<f64>) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut go = |name: &'static str, f: &dyn Fn(&mut Checker)| {
        let mut c = Checker { suite: name, override_tol: tolerance, out: Vec::new() };
        f(&mut c);
        out.extend(c.out);
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Bessel {
        go("bessel", &suite_bessel);
    }
    if all || suite == Suite::Exp {
        go("exp", &suite_exp);
    }
    if all || suite == Suite::Radial {
        go("radial", &suite_radial);
    }
    if all || suite == Suite::Hilbert {
        go("hilbert", &|c| suite_hilbert(c, seed));
    }
    if all || suite == Suite::Periodic {
        go("periodic", &suite_periodic);
    }
    out
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let suite = need(a.suite, "suite")?;
    if let Some(t) = a.tolerance {
        if !(t >= 0.0) {
            return Err(Error::InvalidInput("tolerance must be nonnegative".into()));
        }
    }
    let seed = a.seed.unwrap_or(0);
    let checks = run(suite, seed, a.tolerance);
    let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.suite, c.check)).collect();
    let pass = failures.is_empty();
    for f in &failures {
        eprintln!("FAIL {f}");
    }
    match a.format.unwrap_or(Format::Json) {
        Format::Json => write_rows(&[VerifyReport { suite, seed, pass, failures, checks }], Format::Json, &a.output)?,
        Format::Csv => write_rows(&checks, Format::Csv, &a.output)?,
    }
    Ok(pass)
}

fn exit_code(e: &Error) -> i32 {
    eprintln!("error: {e}");
    if e.is_validation() {
        2
    } else {
        3
    }
}

fn finish<R: Serialize>(t: Result<Table<R>>, format: Option<Format>, output: &Option<PathBuf>) -> i32 {
    let t = match t {
        Ok(t) => t,
        Err(e) => return exit_code(&e),
    };
    if let Err(e) = write_rows(&t.rows, format.unwrap_or(Format::Csv), output) {
        return exit_code(&e);
    }
    if t.dropped > 0 {
        eprintln!("{} row(s) omitted after numeric failures", t.dropped);
        3
    } else {
        0
    }
}

/// Parse `args` (including the program name) and run; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.command {
        Command::Values(a) => match merge_config(&a, &a.config) {
            Ok(a) => finish(cmd_values(a.clone()), a.format, &a.output),
            Err(e) => exit_code(&e),
        },
        Command::Sample(a) => match merge_config(&a, &a.config) {
            Ok(a) => finish(cmd_sample(a.clone()), a.format, &a.output),
            Err(e) => exit_code(&e),
        },
        Command::Verify(a) => match merge_config(&a, &a.config).and_then(cmd_verify) {
            Ok(true) => 0,
            Ok(false) => 1,
            Err(e) => exit_code(&e),
        },
    }
}

pub fn main() -> i32 {
    run_from(std::env::args_os())
}
