//! Extremal values `U_ν^{N±}(δ, λ)` for `e^{−λ|x|}` against `|x|^{2ν+1}dx`,
//! their scaling laws, and the radial extremal functions.
//!
//! The base values (N = 1, δ = 2) are zero sums over the interpolation
//! nodes weighted by `1/(c_ν K_ν(ξ, ξ))`. For very small λ those sums cancel
//! catastrophically against `2Γ(2ν+2)/λ^{2ν+2}`, so we integrate the error of
//! the constructed extremal function instead.

use crate::bessel::{self, c_nu, Node};
use crate::error::{invalid, Error, Result};
use crate::freq::{build_frequency, eval_g, majorant_gprime0, EvenLPFunction, Majorant, Minorant};
use crate::quad::{integrate_best, Neumaier, QuadOptions};
#[cfg(test)]
use crate::quad::integrate_breaks;
use crate::special::{gamma, sphere_area};
use crate::Order;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "minus" | "min" | "-" => Ok(Side::Minus),
            "plus" | "max" | "+" => Ok(Side::Plus),
            _ => invalid(format!("side must be 'minus' or 'plus', got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalValueQuery {
    pub order: Order,
    pub dimension: usize,
    pub delta: f64,
    pub lambda: f64,
    pub side: Side,
}

impl ExtremalValueQuery {
    pub fn new(order: Order, dimension: usize, delta: f64, lambda: f64, side: Side) -> Result<Self> {
        if dimension == 0 {
            return invalid("dimension must be at least 1");
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return invalid(format!("delta must be positive, got {delta}"));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return invalid(format!("lambda must be positive, got {lambda}"));
        }
        Ok(ExtremalValueQuery { order, dimension, delta, lambda, side })
    }
}

/// Below this value of `λ^{2ν+3}` the zero sums are replaced by quadrature.
const CANCELLATION: f64 = 1e-7;
/// Smallest λ accepted by the quadrature route.
const LAMBDA_FLOOR: f64 = 1e-4;
const MAX_NODES: usize = 400_000;

fn power_term(nu: f64, lambda: f64) -> f64 {
    2.0 * gamma(2.0 * nu + 2.0) / lambda.powf(2.0 * nu + 2.0)
}

/// Terms `2π e^{−λξ}/(c_ν f(ξ)²)` over positive nodes, until the geometric
/// tail estimate falls below `1e−17·(1 + |partial|)`.
fn node_terms(order: Order, lambda: f64, b_zeros: bool) -> Result<Vec<f64>> {
    let nu = order.nu();
    let c = c_nu(nu);
    let ratio = 1.0 / (1.0 - (-lambda * PI).exp());
    let mut xmax = 40.0 / lambda + 10.0;
    let mut out = Vec::new();
    let mut partial = 0.0;
    loop {
        let r = bessel::roots(order, xmax, 1, 1)?;
        let nodes: &[Node] = if b_zeros { &r.b } else { &r.a };
        for n in &nodes[out.len()..] {
            let t = 2.0 * PI * (-lambda * n.xi).exp() / (c * n.other * n.other);
            out.push(t);
            partial += t;
            if lambda * n.xi > (2.0 * nu + 2.0).max(1.0) && t * ratio < 1e-17 * (1.0 + partial.abs()) {
                return Ok(out);
            }
        }
        if out.len() > MAX_NODES {
            return Err(Error::Truncation(format!(
                "zero sum at lambda={lambda} needs more than {MAX_NODES} nodes; use lambda >= {LAMBDA_FLOOR}"
            )));
        }
        xmax *= 2.0;
    }
}

fn neumaier(v: &[f64]) -> f64 {
    let mut s = Neumaier::default();
    v.iter().for_each(|&t| s.add(t));
    s.value()
}

/// Partial sums of the node series, in summation order.
pub fn partial_zero_sums(order: Order, lambda: f64, side: Side) -> Result<Vec<f64>> {
    let terms = node_terms(order, lambda, side == Side::Plus)?;
    let mut acc = if side == Side::Plus { 2.0 * PI * (order.nu() + 1.0) / c_nu(order.nu()) } else { 0.0 };
    Ok(terms
        .into_iter()
        .map(|t| {
            acc += t;
            acc
        })
        .collect())
}

/// Zero-sum form of the minus base value, with no regime switch.
pub fn value_min_zero_sum(order: Order, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let s = neumaier(&node_terms(order, lambda, false)?);
    Ok(power_term(order.nu(), lambda) - s)
}

/// Zero-sum form of the plus base value; the origin contributes `2π(ν+1)/c_ν`.
pub fn value_max_zero_sum(order: Order, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let nu = order.nu();
    let mut terms = node_terms(order, lambda, true)?;
    terms.push(2.0 * PI * (nu + 1.0) / c_nu(nu));
    terms.push(-power_term(nu, lambda));
    Ok(neumaier(&terms))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return invalid(format!("lambda must be positive and finite, got {lambda}"));
    }
    Ok(())
}

fn cancels(order: Order, lambda: f64) -> bool {
    lambda.powf(2.0 * order.nu() + 3.0) < CANCELLATION
}

pub fn value_min_base(order: Order, lambda: f64) -> Result<f64> {
    if cancels(order, lambda) {
        return Ok(weighted_error_integral(order, lambda, Side::Minus)?.total());
    }
    value_min_zero_sum(order, lambda)
}

pub fn value_max_base(order: Order, lambda: f64) -> Result<f64> {
    if cancels(order, lambda) {
        return Ok(weighted_error_integral(order, lambda, Side::Plus)?.total());
    }
    value_max_zero_sum(order, lambda)
}

pub fn value_base(order: Order, lambda: f64, side: Side) -> Result<f64> {
    match side {
        Side::Minus => value_min_base(order, lambda),
        Side::Plus => value_max_base(order, lambda),
    }
}

/// `½ω_{N−1}`, with `ω_0/2 = 1`.
pub fn half_sphere_area(dimension: usize) -> f64 {
    0.5 * sphere_area(dimension)
}

pub fn value(q: &ExtremalValueQuery) -> Result<f64> {
    let kappa = 2.0 / q.delta;
    let base = value_base(q.order, kappa * q.lambda, q.side)?;
    Ok(half_sphere_area(q.dimension) * kappa.powf(2.0 * q.order.nu() + 2.0) * base)
}

/// Weighted integral `2∫_0^X |E(x)| x^{2ν+1} dx` plus the asymptotic tail beyond X.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeightedIntegral {
    pub body: f64,
    pub body_error: f64,
    pub tail: f64,
    pub cutoff: f64,
}

impl WeightedIntegral {
    pub fn total(&self) -> f64 {
        self.body + self.tail
    }
}

enum Extremal {
    L(Minorant),
    M(Majorant),
}

impl Extremal {
    fn gap(&self, x: f64) -> f64 {
        match self {
            Extremal::L(l) => l.gap(x),
            Extremal::M(m) => m.gap(x),
        }
    }
}

const CUTOFF: f64 = 300.0;

pub fn weighted_error_integral(order: Order, lambda: f64, side: Side) -> Result<WeightedIntegral> {
    check_lambda(lambda)?;
    if lambda < LAMBDA_FLOOR {
        return Err(Error::Truncation(format!("lambda={lambda} is below the supported floor {LAMBDA_FLOOR}")));
    }
    let nu = order.nu();
    let (ext, g, g0) = match side {
        Side::Minus => {
            let g = build_frequency(EvenLPFunction::ASquared(order), 0.0)?;
            (Extremal::L(Minorant::new(order, lambda)?), g, 0.0)
        }
        Side::Plus => {
            let f = EvenLPFunction::BSquared(order);
            let g = build_frequency(f, 0.5 * f.first_positive_zero()?)?;
            (Extremal::M(Majorant::new(order, lambda)?), g, majorant_gprime0(order)?)
        }
    };
    let r = bessel::roots(order, CUTOFF + 10.0, 1, 1)?;
    let nodes: Vec<f64> = match side {
        Side::Minus => r.a.iter().map(|n| n.xi).collect(),
        Side::Plus => r.b.iter().map(|n| n.xi).collect(),
    };
    let last = nodes.iter().position(|&x| x >= CUTOFF).ok_or_else(|| Error::Convergence("no node beyond cutoff".into()))?;
    let cutoff = nodes[last];
    let w = 2.0 * nu + 1.0;
    let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 24 };

    // first panel, with u = x^{2ν+2} when the weight is singular
    let first = if nu < -0.5 {
        let p = 2.0 * nu + 2.0;
        let r = integrate_best(|u: f64| ext.gap(u.powf(1.0 / p)) / p, 0.0, nodes[0].powf(p), opts)?;
        (r.value, r.error)
    } else {
        let r = integrate_best(|x: f64| ext.gap(x) * x.powf(w), 0.0, nodes[0], opts)?;
        (r.value, r.error)
    };
    let mut rest = (0.0, 0.0);
    for pair in nodes[..=last].windows(2) {
        let r = integrate_best(|x: f64| ext.gap(x) * x.powf(w), pair[0], pair[1], opts)?;
        rest.0 += r.value;
        rest.1 += r.error;
    }
    let c = c_nu(nu);
    let slope = eval_g(&g, -lambda, 1)?;
    let tail = match side {
        Side::Minus => 2.0 * slope / (c * cutoff),
        Side::Plus => 2.0 * (g0 - slope) / (c * cutoff),
    };
    Ok(WeightedIntegral {
        body: 2.0 * (first.0 + rest.0),
        body_error: 2.0 * (first.1 + rest.1),
        tail,
        cutoff,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureReport {
    pub nu: f64,
    pub lambda: f64,
    pub side: Side,
    pub computed_integral: f64,
    pub zero_sum_value: f64,
    pub abs_diff: f64,
    pub quadrature_error: f64,
    pub tail: f64,
}

/// Integrates the error of the constructed extremal function and compares
/// it with the zero-sum value.
pub fn verify_value_by_quadrature(order: Order, lambda: f64, side: Side) -> Result<QuadratureReport> {
    if !(lambda >= 0.05) {
        return invalid(format!("quadrature verification needs lambda >= 0.05, got {lambda}"));
    }
    let wi = weighted_error_integral(order, lambda, side)?;
    let zs = match side {
        Side::Minus => value_min_zero_sum(order, lambda)?,
        Side::Plus => value_max_zero_sum(order, lambda)?,
    };
    Ok(QuadratureReport {
        nu: order.nu(),
        lambda,
        side,
        computed_integral: wi.total(),
        zero_sum_value: zs,
        abs_diff: (wi.total() - zs).abs(),
        quadrature_error: wi.body_error,
        tail: wi.tail,
    })
}

/// The radial extremal function of `U_ν^{N±}(δ, λ)`: `x ↦ L(κλ, |x|/κ)` or `M(κλ, |x|/κ)` with `κ = 2/δ`.
#[derive(Debug, Clone)]
pub struct RadialExtremal {
    dimension: usize,
    kappa: f64,
    lambda: f64,
    inner: RadialInner,
}

#[derive(Debug, Clone)]
enum RadialInner {
    L(Minorant),
    M(Majorant),
}

impl RadialExtremal {
    pub fn new(order: Order, dimension: usize, delta: f64, lambda: f64, side: Side) -> Result<Self> {
        let q = ExtremalValueQuery::new(order, dimension, delta, lambda, side)?;
        let kappa = 2.0 / q.delta;
        let inner = match side {
            Side::Minus => RadialInner::L(Minorant::new(order, kappa * lambda)?),
            Side::Plus => RadialInner::M(Majorant::new(order, kappa * lambda)?),
        };
        Ok(RadialExtremal { dimension, kappa, lambda, inner })
    }

    pub fn eval_norm(&self, r: f64) -> f64 {
        let y = r / self.kappa;
        match &self.inner {
            RadialInner::L(l) => l.eval(y),
            RadialInner::M(m) => m.eval(y),
        }
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dimension {
            return invalid(format!("point has {} coordinates, expected {}", point.len(), self.dimension));
        }
        Ok(self.eval_norm(point.iter().map(|v| v * v).sum::<f64>().sqrt()))
    }

    /// `e^{−λ|x|}` at the same point.
    pub fn target_norm(&self, r: f64) -> f64 {
        (-self.lambda * r).exp()
    }
}

pub fn eval_extremal_radial(order: Order, dimension: usize, delta: f64, lambda: f64, point: &[f64], side: Side) -> Result<f64> {
    RadialExtremal::new(order, dimension, delta, lambda, side)?.eval(point)
}
