//! Measures on (0, ∞), the subordinated radial functions
//! `G_μ(x) = ∫ {e^{−λ|x|} − e^{−λ}} dμ(λ)`, and their extremal values and functions.
//!
//! Everything is integrated in the base variable `s = κλ` (κ = 2/δ), i.e. against
//! the pushforward measure. Near `s = 0` the integrands are `O(s)`, so a quadratic
//! model fitted at two small points replaces direct evaluation, where the zero
//! sums would need too many nodes. Beyond `s₁ = 40/ξ₁` the extremal functions
//! have negligible node contributions and the remaining terms integrate in
//! closed form.

use crate::bessel::{self, c_nu};
use crate::error::{invalid, Error, Result};
use crate::extremal::{half_sphere_area, value_base, Side};
use crate::freq::{Majorant, Minorant};
use crate::quad::{integrate, integrate_vec, kronrod_rule, QuadOptions};
use crate::special::gamma;
use crate::Order;
use serde::{Deserialize, Serialize};

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureSpec {
    /// `weight · λ^α dλ`
    Power {
        alpha: f64,
        #[serde(default = "one")]
        weight: f64,
    },
    /// `λ^{−1} dλ`
    Log,
    /// point masses `(λ_j, w_j)`
    Atoms { points: Vec<(f64, f64)> },
    /// piecewise-linear density on a grid, continued as `d_last (λ/λ_last)^β`
    Table { lambda: Vec<f64>, density: Vec<f64>, tail_exponent: f64 },
}

impl MeasureSpec {
    pub fn power(alpha: f64) -> Self {
        MeasureSpec::Power { alpha, weight: 1.0 }
    }

    pub fn atom(lambda: f64, weight: f64) -> Self {
        MeasureSpec::Atoms { points: vec![(lambda, weight)] }
    }

    /// Structural checks independent of ν and the side.
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Power { alpha, weight } => {
                if !alpha.is_finite() || !(weight.is_finite() && *weight >= 0.0) {
                    return invalid("power measure needs finite alpha and a finite nonnegative weight");
                }
            }
            MeasureSpec::Log => {}
            MeasureSpec::Atoms { points } => {
                if points.is_empty() {
                    return invalid("atom list is empty");
                }
                for &(l, w) in points {
                    if !(l > 0.0 && l.is_finite()) || !(w >= 0.0 && w.is_finite()) {
                        return invalid(format!("atom ({l}, {w}) needs lambda > 0 and weight >= 0"));
                    }
                }
            }
            MeasureSpec::Table { lambda, density, tail_exponent } => {
                if lambda.len() < 2 || lambda.len() != density.len() {
                    return invalid("table needs at least two points and matching lengths");
                }
                if !(lambda[0] > 0.0) || lambda.windows(2).any(|w| !(w[1] > w[0])) || !lambda.iter().all(|v| v.is_finite()) {
                    return invalid("table lambda grid must be positive, finite and strictly increasing");
                }
                if density.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
                    return invalid("table densities must be finite and nonnegative");
                }
                if !tail_exponent.is_finite() {
                    return invalid("table tail exponent must be finite");
                }
            }
        }
        Ok(())
    }

    /// Exponent of the density as λ → ∞, where it has a power tail.
    fn tail_power(&self) -> Option<f64> {
        match *self {
            MeasureSpec::Power { alpha, .. } => Some(alpha),
            MeasureSpec::Log => Some(-1.0),
            MeasureSpec::Table { tail_exponent, .. } => Some(tail_exponent),
            MeasureSpec::Atoms { .. } => None,
        }
    }

    /// Exponent of the density as λ → 0 (tables and atoms vanish near 0).
    fn head_power(&self) -> Option<f64> {
        match *self {
            MeasureSpec::Power { alpha, .. } => Some(alpha),
            MeasureSpec::Log => Some(-1.0),
            _ => None,
        }
    }
}

/// `∫ λ/(1+λ^{2ν+3}) dμ < ∞` (minus) or `∫ λ/(1+λ) dμ < ∞` (plus).
pub fn check_admissible(m: &MeasureSpec, order: Order, side: Side) -> bool {
    if m.validate().is_err() {
        return false;
    }
    let nu = order.nu();
    let head_ok = m.head_power().is_none_or(|a| a > -2.0);
    let tail_ok = m.tail_power().is_none_or(|a| match side {
        Side::Minus => a < 2.0 * nu + 1.0,
        Side::Plus => a < -1.0,
    });
    head_ok && tail_ok
}

/// `μ_κ(E) = μ(κE)`: atoms move to `λ/κ`, densities pick up the Jacobian.
pub fn rescale_measure(m: &MeasureSpec, kappa: f64) -> Result<MeasureSpec> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return invalid(format!("rescale factor must be positive, got {kappa}"));
    }
    Ok(match m {
        MeasureSpec::Power { alpha, weight } => MeasureSpec::Power { alpha: *alpha, weight: weight * kappa.powf(alpha + 1.0) },
        MeasureSpec::Log => MeasureSpec::Log,
        MeasureSpec::Atoms { points } => MeasureSpec::Atoms { points: points.iter().map(|&(l, w)| (l / kappa, w)).collect() },
        MeasureSpec::Table { lambda, density, tail_exponent } => MeasureSpec::Table {
            lambda: lambda.iter().map(|l| l / kappa).collect(),
            density: density.iter().map(|d| d * kappa).collect(),
            tail_exponent: *tail_exponent,
        },
    })
}

fn trapezoid_weights(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let l = if i > 0 { x[i] - x[i - 1] } else { 0.0 };
            let r = if i + 1 < n { x[i + 1] - x[i] } else { 0.0 };
            0.5 * (l + r)
        })
        .collect()
}

/// `∫_a^b f(s) c s^p ds` by adaptive quadrature in `u = ln s`.
fn log_integral(mut f: impl FnMut(f64) -> Result<f64>, c: f64, p: f64, a: f64, b: f64, rel: f64) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let (ua, ub) = (a.ln(), b.ln());
    let n = ((ub - ua).ceil() as usize).max(1);
    let mut err = None;
    let mut total = 0.0;
    for k in 0..n {
        let lo = ua + (ub - ua) * k as f64 / n as f64;
        let hi = ua + (ub - ua) * (k + 1) as f64 / n as f64;
        let r = integrate(
            |u| {
                let s = u.exp();
                match f(s) {
                    Ok(v) => v * c * s.powf(p + 1.0),
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                }
            },
            lo,
            hi,
            QuadOptions::tol(1e-300, rel),
        )?;
        total += r.value;
    }
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `∫_a^∞ e^{−sy} s^p ds`, possibly infinite when `y = 0`.
fn laplace_tail(y: f64, p: f64, a: f64) -> Result<f64> {
    if y == 0.0 {
        return Ok(if p < -1.0 { -a.powf(p + 1.0) / (p + 1.0) } else { f64::INFINITY });
    }
    let mut b = a.max(1.0 / y);
    while (-b * y).exp() * b.powf(p + 1.0) > 1e-20 * a.powf(p + 1.0).max(1e-300) && b < 1e300 {
        b *= 2.0;
    }
    log_integral(|s| Ok((-s * y).exp()), 1.0, p, a, b, 1e-12)
}

/// `G_μ(r)`; `+∞` at the origin when the measure is not integrable there.
pub fn g_mu(m: &MeasureSpec, r: f64) -> Result<f64> {
    m.validate()?;
    if !(r >= 0.0) || !r.is_finite() {
        return invalid(format!("radius must be finite and nonnegative, got {r}"));
    }
    if m.head_power().is_some_and(|a| a <= -2.0) {
        return invalid("G_mu diverges: the measure is not integrable against lambda near 0");
    }
    match *m {
        MeasureSpec::Power { alpha, weight } => {
            if (alpha + 1.0).abs() < 1e-15 {
                return g_mu(&MeasureSpec::Log, r).map(|v| weight * v);
            }
            if r == 0.0 {
                return Ok(if alpha < -1.0 { -weight * gamma(1.0 + alpha) } else { f64::INFINITY });
            }
            Ok(weight * gamma(1.0 + alpha) * (r.powf(-alpha - 1.0) - 1.0))
        }
        MeasureSpec::Log => Ok(if r == 0.0 { f64::INFINITY } else { -r.ln() }),
        MeasureSpec::Atoms { ref points } => Ok(points.iter().map(|&(l, w)| w * ((-l * r).exp() - (-l).exp())).sum()),
        MeasureSpec::Table { ref lambda, ref density, tail_exponent } => {
            let w = trapezoid_weights(lambda);
            let body: f64 = lambda.iter().zip(density).zip(&w).map(|((l, d), w)| w * d * ((-l * r).exp() - (-l).exp())).sum();
            let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
            let c = dl * ll.powf(-tail_exponent);
            let tail = c * (laplace_tail(r, tail_exponent, ll)? - laplace_tail(1.0, tail_exponent, ll)?);
            Ok(body + tail)
        }
    }
}

/// The smallest base argument evaluated directly; below it a quadratic model is used.
fn small_cut(nu: f64) -> f64 {
    1e-3f64.max(1e-7f64.powf(1.0 / (2.0 * nu + 3.0)))
}

/// Position past which node contributions are below e^{−40}.
fn large_cut(order: Order, side: Side) -> Result<f64> {
    let r = bessel::roots(order, 0.0, 1, 1)?;
    Ok(40.0 / match side {
        Side::Minus => r.a[0].xi,
        Side::Plus => r.b[0].xi,
    })
}

/// Fit `f(s) ≈ a s + b s²` from `f(s0)`, `f(2 s0)`.
fn quadratic_model(f1: f64, f2: f64, s0: f64) -> (f64, f64) {
    let b = (f2 - 2.0 * f1) / (2.0 * s0 * s0);
    ((f1 - b * s0 * s0) / s0, b)
}

/// `∫_0^{s0} s^k dμ̃` for k = 1, 2 (power head or discrete mass below s0).
fn small_moments(m: &MeasureSpec, s0: f64) -> (f64, f64) {
    match *m {
        MeasureSpec::Power { alpha, weight } => {
            (weight * s0.powf(alpha + 2.0) / (alpha + 2.0), weight * s0.powf(alpha + 3.0) / (alpha + 3.0))
        }
        MeasureSpec::Log => (s0, 0.5 * s0 * s0),
        MeasureSpec::Atoms { ref points } => points.iter().filter(|p| p.0 < s0).fold((0.0, 0.0), |acc, &(s, w)| (acc.0 + w * s, acc.1 + w * s * s)),
        MeasureSpec::Table { ref lambda, ref density, .. } => {
            let w = trapezoid_weights(lambda);
            let mut acc = (0.0, 0.0);
            for i in 0..lambda.len() {
                if lambda[i] < s0 {
                    acc.0 += w[i] * density[i] * lambda[i];
                    acc.1 += w[i] * density[i] * lambda[i] * lambda[i];
                }
            }
            acc
        }
    }
}

/// The power-tail piece `c s^p` of the density beyond `start`, when one exists.
fn power_tail(m: &MeasureSpec, s1: f64) -> Option<(f64, f64, f64)> {
    match *m {
        MeasureSpec::Power { alpha, weight } => Some((weight, alpha, s1)),
        MeasureSpec::Log => Some((1.0, -1.0, s1)),
        MeasureSpec::Table { ref lambda, ref density, tail_exponent } => {
            let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
            Some((dl * ll.powf(-tail_exponent), tail_exponent, s1.max(ll)))
        }
        MeasureSpec::Atoms { .. } => None,
    }
}

/// `∫_0^{s0} s^k dμ`, the input of small-argument models.
pub(crate) fn moment_below(m: &MeasureSpec, s0: f64, k: f64) -> f64 {
    match *m {
        MeasureSpec::Power { alpha, weight } => weight * s0.powf(alpha + k + 1.0) / (alpha + k + 1.0),
        MeasureSpec::Log => s0.powf(k) / k,
        MeasureSpec::Atoms { ref points } => points.iter().filter(|p| p.0 < s0).map(|&(s, w)| w * s.powf(k)).sum(),
        MeasureSpec::Table { ref lambda, ref density, .. } => {
            let w = trapezoid_weights(lambda);
            (0..lambda.len()).filter(|&i| lambda[i] < s0).map(|i| w[i] * density[i] * lambda[i].powf(k)).sum()
        }
    }
}

/// `μ([b, ∞))`, possibly infinite.
pub(crate) fn mass_above(m: &MeasureSpec, b: f64) -> f64 {
    let power = |c: f64, p: f64, start: f64| if p < -1.0 { -c * start.powf(p + 1.0) / (p + 1.0) } else { f64::INFINITY };
    match *m {
        MeasureSpec::Power { alpha, weight } => power(weight, alpha, b),
        MeasureSpec::Log => f64::INFINITY,
        MeasureSpec::Atoms { ref points } => points.iter().filter(|p| p.0 >= b).map(|p| p.1).sum(),
        MeasureSpec::Table { ref lambda, ref density, tail_exponent } => {
            let w = trapezoid_weights(lambda);
            let grid: f64 = (0..lambda.len()).filter(|&i| lambda[i] >= b).map(|i| w[i] * density[i]).sum();
            let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
            grid + power(dl * ll.powf(-tail_exponent), tail_exponent, b.max(ll))
        }
    }
}

/// `∫_lo^hi f(λ) c λ^p dλ` in `ln λ`, accumulated into `out`.
fn density_window<F: FnMut(f64, &mut [f64])>(c: f64, p: f64, lo: f64, hi: f64, f: &mut F, out: &mut [f64]) -> Result<()> {
    if !(hi > lo) {
        return Ok(());
    }
    let (ua, ub) = (lo.ln(), hi.ln());
    let n = ((ub - ua).ceil() as usize).max(1);
    for k in 0..n {
        let u0 = ua + (ub - ua) * k as f64 / n as f64;
        let u1 = ua + (ub - ua) * (k + 1) as f64 / n as f64;
        let v = integrate_vec(
            |u, dst: &mut [f64]| {
                let l = u.exp();
                f(l, dst);
                let w = c * l.powf(p + 1.0);
                dst.iter_mut().for_each(|d| *d *= w);
            },
            out.len(),
            u0,
            u1,
            QuadOptions::tol(1e-14, 1e-11),
        )?;
        out.iter_mut().zip(v).for_each(|(o, x)| *o += x);
    }
    Ok(())
}

/// `∫_{[a, b)} f dμ` for a vector-valued f; densities in `ln λ`, tables by the trapezoid rule.
pub(crate) fn integrate_window<F: FnMut(f64, &mut [f64])>(m: &MeasureSpec, a: f64, b: f64, dim: usize, mut f: F) -> Result<Vec<f64>> {
    let mut out = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    if !(b > a) {
        return Ok(out);
    }
    match *m {
        MeasureSpec::Power { alpha, weight } => density_window(weight, alpha, a, b, &mut f, &mut out)?,
        MeasureSpec::Log => density_window(1.0, -1.0, a, b, &mut f, &mut out)?,
        MeasureSpec::Atoms { ref points } => {
            for &(s, w) in points.iter().filter(|p| p.0 >= a && p.0 < b) {
                f(s, &mut buf);
                out.iter_mut().zip(&buf).for_each(|(o, x)| *o += w * x);
            }
        }
        MeasureSpec::Table { ref lambda, ref density, tail_exponent } => {
            let w = trapezoid_weights(lambda);
            for i in (0..lambda.len()).filter(|&i| lambda[i] >= a && lambda[i] < b) {
                f(lambda[i], &mut buf);
                out.iter_mut().zip(&buf).for_each(|(o, x)| *o += w[i] * density[i] * x);
            }
            let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
            density_window(dl * ll.powf(-tail_exponent), tail_exponent, a.max(ll), b, &mut f, &mut out)?;
        }
    }
    Ok(out)
}

/// `∫ U_base(s) dμ̃(s)` over the pushforward measure.
fn base_integral(mt: &MeasureSpec, order: Order, side: Side, table_grid: Option<&[usize]>) -> Result<f64> {
    let nu = order.nu();
    let s0 = small_cut(nu);
    let s1 = large_cut(order, side)?;
    let u = |s: f64| value_base(order, s, side);
    let (a, b) = quadratic_model(u(s0)?, u(2.0 * s0)?, s0);
    let (m1, m2) = small_moments(mt, s0);
    let mut total = a * m1 + b * m2;
    let g2 = 2.0 * gamma(2.0 * nu + 2.0);
    let konst = 2.0 * std::f64::consts::PI * (nu + 1.0) / c_nu(nu);
    match mt {
        MeasureSpec::Atoms { points } => {
            for &(s, w) in points.iter().filter(|p| p.0 >= s0) {
                total += w * u(s)?;
            }
            return Ok(total);
        }
        MeasureSpec::Power { alpha, weight } => total += log_integral(u, *weight, *alpha, s0, s1, 1e-10)?,
        MeasureSpec::Log => total += log_integral(u, 1.0, -1.0, s0, s1, 1e-10)?,
        MeasureSpec::Table { lambda, density, tail_exponent } => {
            let idx: Vec<usize> = table_grid.map_or_else(|| (0..lambda.len()).collect(), |g| g.to_vec());
            let xs: Vec<f64> = idx.iter().map(|&i| lambda[i]).collect();
            let w = trapezoid_weights(&xs);
            for (k, &i) in idx.iter().enumerate() {
                if lambda[i] >= s0 {
                    total += w[k] * density[i] * u(lambda[i])?;
                }
            }
            let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
            total += log_integral(u, dl * ll.powf(-tail_exponent), *tail_exponent, ll.max(s0), s1, 1e-10)?;
        }
    }
    if let Some((c, p, start)) = power_tail(mt, s1) {
        let decay = c * g2 * start.powf(p - 2.0 * nu - 1.0) / (2.0 * nu + 1.0 - p);
        total += match side {
            Side::Minus => decay,
            Side::Plus => -c * konst * start.powf(p + 1.0) / (p + 1.0) - decay,
        };
    }
    Ok(total)
}

/// `∫ U_ν^{N±}(δ, λ) dμ(λ)`, or an error when μ is not admissible for the side.
pub fn value_mu(m: &MeasureSpec, order: Order, dimension: usize, delta: f64, side: Side) -> Result<f64> {
    m.validate()?;
    if dimension == 0 || !(delta > 0.0 && delta.is_finite()) {
        return invalid("dimension must be >= 1 and delta > 0");
    }
    if !check_admissible(m, order, side) {
        return invalid(format!("measure is not admissible for the {side} side at nu={}", order.nu()));
    }
    let kappa = 2.0 / delta;
    let mt = rescale_measure(m, 1.0 / kappa)?;
    let mut base = base_integral(&mt, order, side, None)?;
    if let MeasureSpec::Table { lambda, .. } = &mt {
        // Richardson check against every second grid point
        let n = lambda.len();
        if n >= 5 && n % 2 == 1 {
            let coarse: Vec<usize> = (0..n).step_by(2).collect();
            let b2 = base_integral(&mt, order, side, Some(&coarse))?;
            let h0 = lambda[1] - lambda[0];
            let uniform = lambda.windows(2).all(|w| ((w[1] - w[0]) - h0).abs() < 1e-9 * h0);
            if (base - b2).abs() > 0.1 * base.abs() {
                return Err(Error::Convergence("tabulated density is too coarse for the trapezoid rule".into()));
            }
            if uniform {
                base += (base - b2) / 3.0;
            }
        }
    }
    Ok(half_sphere_area(dimension) * kappa.powf(2.0 * order.nu() + 2.0) * base)
}

#[derive(Debug, Clone)]
enum Ext {
    L(Minorant),
    M(Majorant),
}

impl Ext {
    fn new(order: Order, s: f64, side: Side) -> Result<Self> {
        Ok(match side {
            Side::Minus => Ext::L(Minorant::new(order, s)?),
            Side::Plus => Ext::M(Majorant::new(order, s)?),
        })
    }

    fn gap(&self, y: f64) -> f64 {
        match self {
            Ext::L(l) => l.gap(y),
            Ext::M(m) => m.gap(y),
        }
    }
}

/// Subordinated extremal function `G_μ ∓ D^∓`, with the base extremal functions
/// prebuilt on a fixed s-rule so many points can be evaluated cheaply.
#[derive(Debug, Clone)]
pub struct Subordinated {
    measure: MeasureSpec,
    order: Order,
    dimension: usize,
    kappa: f64,
    side: Side,
    nodes: Vec<(f64, Ext)>,
    small: (f64, f64, f64, Ext, Ext),
    tail: Option<(f64, f64, f64)>,
    gprime0: f64,
}

/// Smallest base argument at which a subordinated extremal function is built directly.
const D_SMALL: f64 = 5e-3;
/// Width in ln s of the fixed Kronrod panels.
const D_PANEL: f64 = 0.5;

impl Subordinated {
    pub fn new(m: &MeasureSpec, order: Order, dimension: usize, delta: f64, side: Side) -> Result<Self> {
        m.validate()?;
        if dimension == 0 || !(delta > 0.0 && delta.is_finite()) {
            return invalid("dimension must be >= 1 and delta > 0");
        }
        if !check_admissible(m, order, side) {
            return invalid(format!("measure is not admissible for the {side} side at nu={}", order.nu()));
        }
        let kappa = 2.0 / delta;
        let mt = rescale_measure(m, 1.0 / kappa)?;
        let s0 = D_SMALL;
        let s1 = large_cut(order, side)?;
        let mut nodes: Vec<(f64, f64)> = Vec::new();
        let fixed = |c: f64, p: f64, a: f64, b: f64, nodes: &mut Vec<(f64, f64)>| {
            if b > a {
                let (ua, ub) = (a.ln(), b.ln());
                let n = ((ub - ua) / D_PANEL).ceil().max(1.0) as usize;
                for k in 0..n {
                    let lo = ua + (ub - ua) * k as f64 / n as f64;
                    let hi = ua + (ub - ua) * (k + 1) as f64 / n as f64;
                    for (u, w) in kronrod_rule(lo, hi) {
                        let s = u.exp();
                        nodes.push((s, w * c * s.powf(p + 1.0)));
                    }
                }
            }
        };
        match &mt {
            MeasureSpec::Atoms { points } => nodes.extend(points.iter().copied().filter(|p| p.0 >= s0)),
            MeasureSpec::Power { alpha, weight } => fixed(*weight, *alpha, s0, s1, &mut nodes),
            MeasureSpec::Log => fixed(1.0, -1.0, s0, s1, &mut nodes),
            MeasureSpec::Table { lambda, density, tail_exponent } => {
                let w = trapezoid_weights(lambda);
                for i in 0..lambda.len() {
                    if lambda[i] >= s0 && density[i] > 0.0 {
                        nodes.push((lambda[i], w[i] * density[i]));
                    }
                }
                let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
                fixed(dl * ll.powf(-tail_exponent), *tail_exponent, ll.max(s0), s1, &mut nodes);
            }
        }
        let (m1, m2) = small_moments(&mt, s0);
        let built = nodes.into_iter().map(|(s, w)| Ok((w, Ext::new(order, s, side)?))).collect::<Result<Vec<_>>>()?;
        let gprime0 = match side {
            Side::Plus => crate::freq::majorant_gprime0(order)?,
            Side::Minus => 0.0,
        };
        Ok(Subordinated {
            measure: m.clone(),
            order,
            dimension,
            kappa,
            side,
            nodes: built,
            small: (m1, m2, s0, Ext::new(order, s0, side)?, Ext::new(order, 2.0 * s0, side)?),
            tail: power_tail(&mt, s1),
            gprime0,
        })
    }

    /// `D^∓` at radius r: the μ-integral of the pointwise error.
    pub fn defect(&self, r: f64) -> Result<f64> {
        let y = r / self.kappa;
        let mut d: f64 = self.nodes.iter().map(|(w, e)| w * e.gap(y)).sum();
        let (m1, m2, s0, e1, e2) = &self.small;
        let (a, b) = quadratic_model(e1.gap(y), e2.gap(y), *s0);
        d += a * m1 + b * m2;
        if let Some((c, p, start)) = self.tail {
            let lap = laplace_tail(y, p, start)?;
            d += match self.side {
                Side::Minus => c * lap,
                Side::Plus => {
                    let bx = bessel::b_over_x(self.order, y);
                    c * (-2.0 * self.gprime0 * bx * bx * start.powf(p + 1.0) / (p + 1.0) - lap)
                }
            };
        }
        Ok(d)
    }

    pub fn eval_norm(&self, r: f64) -> Result<f64> {
        let g = g_mu(&self.measure, r)?;
        let d = self.defect(r)?;
        if !g.is_finite() || !d.is_finite() {
            return invalid(format!("the subordinated {} function is infinite at radius {r}", self.side));
        }
        Ok(match self.side {
            Side::Minus => g - d,
            Side::Plus => g + d,
        })
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dimension {
            return invalid(format!("point has {} coordinates, expected {}", point.len(), self.dimension));
        }
        self.eval_norm(point.iter().map(|v| v * v).sum::<f64>().sqrt())
    }
}

pub fn eval_subordinated(m: &MeasureSpec, order: Order, dimension: usize, delta: f64, point: &[f64], side: Side) -> Result<f64> {
    Subordinated::new(m, order, dimension, delta, side)?.eval(point)
}
