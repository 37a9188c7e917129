//! Frequency functions of even Laguerre–Pólya functions and the
//! interpolating minorant `L(A_ν², λ, ·)` and majorant `M(B_ν², λ, ·)`.
//!
//! `1/F` is the two-sided Laplace transform of `g_c` on the zero-free strip
//! containing `c`. Away from `t = 0` the residue series converges
//! geometrically; near `t = 0` we integrate along `Re s = c` instead.
//!
//! Each residue term of `g` integrates in closed form against `e^{−zw}`.
//! That turns the extremal functions into single series over the zeros:
//!
//! `L(x) = A(x)² Σ_n e^{−λξ_n}/B(ξ_n)² [ r_n (1/(ξ_n−x) + 1/(ξ_n+x)) + 1/(ξ_n−x)² + 1/(ξ_n+x)² ]`
//!
//! with `r_n = λ − (2ν+1)/ξ_n`. `M` has the same shape over the positive
//! zeros of `B`, plus `2 g'(0) B(x)²/x²`.

use crate::bessel::{self, eval_ab, eval_ab_complex, Node, Roots};
use crate::error::{invalid, Error, Result};
use crate::quad::{integrate, integrate_breaks, Neumaier, QuadOptions};
use crate::Order;
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An even, nonnegative Laguerre–Pólya function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvenLPFunction {
    /// `A_ν(z)²`: positive at 0, double zeros at ±j_{ν,n}.
    ASquared(Order),
    /// `B_ν(z)²`: double zero at the origin and at ±j_{ν+1,n}.
    BSquared(Order),
    /// `C(1 − z²/α²)`
    Quadratic { c: f64, alpha: f64 },
    /// `C z²`
    Monomial { c: f64 },
}

impl EvenLPFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            EvenLPFunction::ASquared(o) => bessel::eval_A(o, x).powi(2),
            EvenLPFunction::BSquared(o) => bessel::eval_B(o, x).powi(2),
            EvenLPFunction::Quadratic { c, alpha } => c * (1.0 - (x / alpha).powi(2)),
            EvenLPFunction::Monomial { c } => c * x * x,
        }
    }

    fn eval_complex(&self, z: Complex64) -> Complex64 {
        match *self {
            EvenLPFunction::ASquared(o) => eval_ab_complex(o.nu(), z).0.powi(2),
            EvenLPFunction::BSquared(o) => eval_ab_complex(o.nu(), z).1.powi(2),
            EvenLPFunction::Quadratic { c, alpha } => c * (1.0 - (z / alpha).powi(2)),
            EvenLPFunction::Monomial { c } => c * z * z,
        }
    }

    /// Smallest positive zero, the right edge of the strip through 0⁺.
    pub fn first_positive_zero(&self) -> Result<f64> {
        match *self {
            EvenLPFunction::ASquared(o) => Ok(bessel::roots(o, 0.0, 1, 1)?.a[0].xi),
            EvenLPFunction::BSquared(o) => Ok(bessel::roots(o, 0.0, 1, 1)?.b[0].xi),
            EvenLPFunction::Quadratic { alpha, .. } => Ok(alpha.abs()),
            EvenLPFunction::Monomial { .. } => Ok(f64::INFINITY),
        }
    }
}

/// Residue of `e^{st}/F(s)` at a pole: `e^{p t}(a + b t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub at: f64,
    pub a: f64,
    pub b: f64,
}

impl Pole {
    fn deriv(&self, t: f64, k: u32) -> f64 {
        let p = self.at;
        let e = (p * t).exp();
        let pk = p.powi(k as i32);
        let pk1 = if k == 0 { 0.0 } else { k as f64 * p.powi(k as i32 - 1) };
        e * (pk * (self.a + self.b * t) + pk1 * self.b)
    }
}

/// `g_c` as two residue series: `left` (poles with real part < c) for t > 0,
/// `right` (poles > c, entering with a minus sign) for t < 0.
#[derive(Debug, Clone)]
pub struct FrequencyFunction {
    pub source: EvenLPFunction,
    pub center: f64,
    pub left: Vec<Pole>,
    pub right: Vec<Pole>,
    /// poles are complete up to this magnitude; beyond it only the tail bound is known
    pub complete_to: f64,
}

/// Below this |t| the Bessel-backed residue series is replaced by the line integral.
const LINE_SWITCH: f64 = 0.5;

fn bessel_poles(nodes: &[Node], nu: f64, sign: f64) -> Vec<Pole> {
    nodes
        .iter()
        .map(|n| {
            let p = sign * n.xi;
            Pole { at: p, a: (2.0 * nu + 1.0) / p / (n.other * n.other), b: 1.0 / (n.other * n.other) }
        })
        .collect()
}

/// Pole magnitude beyond which `e^{−x|t|}(1+x)^k` is negligible for |t| ≥ LINE_SWITCH.
fn pole_cutoff(nu: f64) -> f64 {
    let k = (2.0 * nu + 5.0).max(1.0);
    let mut x = 80.0;
    while (-LINE_SWITCH * x).exp() * (1.0 + x).powf(k) > 1e-18 {
        x *= 1.2;
    }
    x
}

pub fn build_frequency(f: EvenLPFunction, c: f64) -> Result<FrequencyFunction> {
    if !c.is_finite() {
        return invalid("center must be finite");
    }
    match f {
        EvenLPFunction::ASquared(o) => {
            let first = f.first_positive_zero()?;
            if c.abs() >= first {
                return invalid(format!("center {c} is not inside the zero-free strip (-{first}, {first})"));
            }
            let cut = pole_cutoff(o.nu());
            let r = bessel::roots(o, cut, 1, 1)?;
            let nodes: Vec<Node> = r.a.iter().copied().filter(|n| n.xi <= cut * 1.5).collect();
            Ok(FrequencyFunction {
                source: f,
                center: c,
                left: bessel_poles(&nodes, o.nu(), -1.0),
                right: bessel_poles(&nodes, o.nu(), 1.0),
                complete_to: nodes.last().map_or(0.0, |n| n.xi),
            })
        }
        EvenLPFunction::BSquared(o) => {
            let first = f.first_positive_zero()?;
            if !(c > 0.0 && c < first) {
                return invalid(format!("center {c} must lie in (0, {first}) for B^2"));
            }
            let cut = pole_cutoff(o.nu());
            let r = bessel::roots(o, cut, 1, 1)?;
            let nodes: Vec<Node> = r.b.iter().copied().filter(|n| n.xi <= cut * 1.5).collect();
            let beta = 1.0 / (2.0 * (o.nu() + 1.0));
            let mut left = vec![Pole { at: 0.0, a: 0.0, b: 1.0 / (beta * beta) }];
            left.extend(bessel_poles(&nodes, o.nu(), -1.0));
            Ok(FrequencyFunction {
                source: f,
                center: c,
                left,
                right: bessel_poles(&nodes, o.nu(), 1.0),
                complete_to: nodes.last().map_or(0.0, |n| n.xi),
            })
        }
        EvenLPFunction::Quadratic { c: cc, alpha } => {
            if cc == 0.0 || alpha == 0.0 {
                return invalid("degenerate quadratic needs C != 0 and alpha != 0");
            }
            let al = alpha.abs();
            if c.abs() >= al {
                return invalid(format!("center {c} must lie in (-{al}, {al})"));
            }
            let w = al / (2.0 * cc);
            Ok(FrequencyFunction {
                source: f,
                center: c,
                left: vec![Pole { at: -al, a: w, b: 0.0 }],
                right: vec![Pole { at: al, a: -w, b: 0.0 }],
                complete_to: f64::INFINITY,
            })
        }
        EvenLPFunction::Monomial { c: cc } => {
            if cc == 0.0 {
                return invalid("monomial needs C != 0");
            }
            if c == 0.0 {
                return invalid("center coincides with the zero of C z^2");
            }
            let pole = Pole { at: 0.0, a: 0.0, b: 1.0 / cc };
            let (left, right) = if c > 0.0 { (vec![pole], vec![]) } else { (vec![], vec![pole]) };
            Ok(FrequencyFunction { source: f, center: c, left, right, complete_to: f64::INFINITY })
        }
    }
}

impl FrequencyFunction {
    /// Residue-series value of `g^{(k)}(t)`, t ≠ 0, with a tail check.
    pub fn eval_residue(&self, t: f64, k: u32) -> Result<f64> {
        let (poles, sign) = if t > 0.0 { (&self.left, 1.0) } else { (&self.right, -1.0) };
        let mut s = Neumaier::default();
        for p in poles {
            s.add(p.deriv(t, k));
        }
        if self.complete_to.is_finite() {
            let x = self.complete_to;
            let tail = (-x * t.abs()).exp() * (1.0 + x).powi(k as i32 + 1) * x.powf(2.0 * self.nu_plus() + 1.0);
            if tail > 1e-13 * s.value().abs().max(1e-300) && tail > 1e-16 {
                return Err(Error::Truncation(format!("residue series at t={t} needs poles beyond {x}")));
            }
        }
        Ok(sign * s.value())
    }

    fn nu_plus(&self) -> f64 {
        match self.source {
            EvenLPFunction::ASquared(o) | EvenLPFunction::BSquared(o) => o.nu().max(-0.5) + 1.0,
            _ => 0.0,
        }
    }

    /// `g^{(k)}(t) = (1/π) ∫_0^∞ Re[s^k e^{st}/F(s)] dy` with `s = c + iy`.
    pub fn eval_line(&self, t: f64, k: u32) -> Result<f64> {
        let c = self.center;
        let f = self.source;
        let integrand = |y: f64| {
            let s = Complex64::new(c, y);
            let v = s.powu(k) * (s * t).exp() / f.eval_complex(s);
            v.re
        };
        // |F(c+iy)| grows like e^{2y}; stop where the integrand is far below tolerance
        let mut top = 24.0;
        while integrand(top).abs() > 1e-19 && top < 200.0 {
            top += 4.0;
        }
        let breaks: Vec<f64> = (0..=((top / 2.0) as usize)).map(|i| 2.0 * i as f64).collect();
        let r = integrate_breaks(integrand, &breaks, QuadOptions::tol(1e-16, 1e-13))?;
        Ok(r.value / std::f64::consts::PI)
    }
}

/// `g^{(k)}(t)` for k ≤ 3 (g is smooth for the infinite-degree Bessel cases).
pub fn eval_g(g: &FrequencyFunction, t: f64, k: u32) -> Result<f64> {
    if k > 3 {
        return invalid("derivative order above 3 is not supported");
    }
    match g.source {
        EvenLPFunction::Quadratic { .. } => {
            if k > 0 && t == 0.0 {
                return invalid("g of a degree-2 polynomial is only continuous at 0");
            }
            if t == 0.0 {
                return Ok(g.left[0].a);
            }
            g.eval_residue(t, k)
        }
        EvenLPFunction::Monomial { c } => {
            if t == 0.0 {
                return match k {
                    0 => Ok(0.0),
                    1 => Ok(0.5 / c),
                    _ => invalid("g of C z^2 has no second derivative at 0"),
                };
            }
            let has_side = if t > 0.0 { !g.left.is_empty() } else { !g.right.is_empty() };
            if !has_side {
                return Ok(0.0);
            }
            g.eval_residue(t, k)
        }
        _ => {
            if t.abs() < LINE_SWITCH {
                g.eval_line(t, k)
            } else {
                g.eval_residue(t, k)
            }
        }
    }
}

fn gprime0_cache() -> &'static Mutex<HashMap<u64, f64>> {
    static C: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// g'(0) for F = B_ν², c = (first positive zero of B)/2, by the line integral.
pub fn majorant_gprime0(order: Order) -> Result<f64> {
    let key = order.nu().to_bits();
    if let Some(v) = gprime0_cache().lock().expect("cache").get(&key) {
        return Ok(*v);
    }
    let f = EvenLPFunction::BSquared(order);
    let g = build_frequency(f, 0.5 * f.first_positive_zero()?)?;
    let v = g.eval_line(0.0, 1)?;
    gprime0_cache().lock().expect("cache").insert(key, v);
    Ok(v)
}

/// Smallest count of nodes whose neglected tail is below 1e-17 in the series.
fn node_count(nodes: &[Node], lambda: f64, nu: f64) -> Option<usize> {
    let q = 1.0 / (1.0 - (-lambda * std::f64::consts::PI).exp());
    for (i, n) in nodes.iter().enumerate() {
        let p = (-lambda * n.xi).exp() / (n.other * n.other);
        let r = (lambda - (2.0 * nu + 1.0) / n.xi).abs();
        if lambda * n.xi > (2.0 * nu + 2.0).max(1.0) && p * (1.0 + r) * q < 1e-18 {
            return Some(i + 1);
        }
    }
    None
}

fn nodes_for(order: Order, lambda: f64, kind: bessel::ZeroKind) -> Result<(Arc<Roots>, usize)> {
    let nu = order.nu();
    let mut xmax = (45.0 + (2.0 * nu + 2.0).max(0.0) * 10.0) / lambda + 10.0;
    for _ in 0..8 {
        let r = bessel::roots(order, xmax, 1, 1)?;
        let nodes = match kind {
            bessel::ZeroKind::A => &r.a,
            bessel::ZeroKind::B => &r.b,
        };
        if let Some(n) = node_count(nodes, lambda, nu) {
            return Ok((r, n));
        }
        xmax *= 1.6;
    }
    Err(Error::Truncation(format!("zero series for lambda={lambda} did not reach tolerance; raise lambda")))
}

/// Shared engine for L and M: `Σ p_n [ r_n(−f q_n + f²/(ξ_n+y)) + q_n² + f²/(ξ_n+y)² ]`
/// where `f` is A (minorant) or B (majorant) and `q_n = (f(y) − f(ξ_n))/(y − ξ_n)`.
#[derive(Debug, Clone)]
struct NodeSeries {
    order: Order,
    lambda: f64,
    roots: Arc<Roots>,
    kind: bessel::ZeroKind,
    count: usize,
    p: Vec<f64>,
    r: Vec<f64>,
}

impl NodeSeries {
    fn new(order: Order, lambda: f64, kind: bessel::ZeroKind) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return invalid(format!("lambda must be positive and finite, got {lambda}"));
        }
        let (roots, count) = nodes_for(order, lambda, kind)?;
        let nodes = match kind {
            bessel::ZeroKind::A => &roots.a,
            bessel::ZeroKind::B => &roots.b,
        };
        let nu = order.nu();
        let p = nodes[..count].iter().map(|n| (-lambda * n.xi).exp() / (n.other * n.other)).collect();
        let r = nodes[..count].iter().map(|n| lambda - (2.0 * nu + 1.0) / n.xi).collect();
        Ok(NodeSeries { order, lambda, roots, kind, count, p, r })
    }

    fn nodes(&self) -> &[Node] {
        match self.kind {
            bessel::ZeroKind::A => &self.roots.a[..self.count],
            bessel::ZeroKind::B => &self.roots.b[..self.count],
        }
    }

    fn pick(&self, ab: (f64, f64)) -> f64 {
        match self.kind {
            bessel::ZeroKind::A => ab.0,
            bessel::ZeroKind::B => ab.1,
        }
    }

    /// derivative of the vanishing function at a point
    fn slope(&self, y: f64) -> f64 {
        match self.kind {
            bessel::ZeroKind::A => -bessel::eval_B(self.order, y),
            bessel::ZeroKind::B => bessel::eval_B_prime(self.order, y),
        }
    }

    fn sum(&self, y: f64) -> f64 {
        let fy = self.pick(eval_ab(self.order, y));
        let mut s = Neumaier::default();
        for (i, n) in self.nodes().iter().enumerate() {
            let d = y - n.xi;
            let q = if d.abs() > 1e-9 * n.xi.max(1.0) { (fy - n.residual) / d } else { self.slope(0.5 * (y + n.xi)) };
            let w = fy / (n.xi + y);
            s.add(self.p[i] * (self.r[i] * (-q * fy + w * fy) + q * q + w * w));
        }
        s.value()
    }
}

/// `L(A_ν², λ, ·)`: the extremal minorant of `e^{−λ|x|}` of exponential type 2.
#[derive(Debug, Clone)]
pub struct Minorant {
    series: NodeSeries,
}

impl Minorant {
    pub fn new(order: Order, lambda: f64) -> Result<Self> {
        Ok(Minorant { series: NodeSeries::new(order, lambda, bessel::ZeroKind::A)? })
    }

    pub fn order(&self) -> Order {
        self.series.order
    }

    pub fn lambda(&self) -> f64 {
        self.series.lambda
    }

    /// Interpolation nodes in use (positive zeros of A_ν).
    pub fn nodes(&self) -> Vec<f64> {
        self.series.nodes().iter().map(|n| n.xi).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.series.sum(x.abs())
    }

    /// `e^{−λ|x|} − L(x) ≥ 0`.
    pub fn gap(&self, x: f64) -> f64 {
        (-self.series.lambda * x.abs()).exp() - self.eval(x)
    }
}

/// `M(B_ν², λ, ·)`: the extremal majorant of `e^{−λ|x|}` of exponential type 2.
#[derive(Debug, Clone)]
pub struct Majorant {
    series: NodeSeries,
    gprime0: f64,
}

impl Majorant {
    pub fn new(order: Order, lambda: f64) -> Result<Self> {
        let series = NodeSeries::new(order, lambda, bessel::ZeroKind::B)?;
        let gprime0 = majorant_gprime0(order)?;
        Ok(Majorant { series, gprime0 })
    }

    pub fn order(&self) -> Order {
        self.series.order
    }

    pub fn lambda(&self) -> f64 {
        self.series.lambda
    }

    /// Positive interpolation nodes (zeros of B_ν); the origin is a node as well.
    pub fn nodes(&self) -> Vec<f64> {
        self.series.nodes().iter().map(|n| n.xi).collect()
    }

    pub fn gprime0(&self) -> f64 {
        self.gprime0
    }

    pub fn eval(&self, x: f64) -> f64 {
        let y = x.abs();
        let bx = bessel::b_over_x(self.series.order, y);
        self.series.sum(y) + 2.0 * self.gprime0 * bx * bx
    }

    /// `M(x) − e^{−λ|x|} ≥ 0`.
    pub fn gap(&self, x: f64) -> f64 {
        self.eval(x) - (-self.series.lambda * x.abs()).exp()
    }
}

pub fn eval_minorant(order: Order, lambda: f64, x: f64) -> Result<f64> {
    Ok(Minorant::new(order, lambda)?.eval(x))
}

pub fn eval_majorant(order: Order, lambda: f64, x: f64) -> Result<f64> {
    Ok(Majorant::new(order, lambda)?.eval(x))
}

/// Constants of the growth estimate, derived from the frequency functions:
/// minorant `c = max(8 g(0), 4K)`, majorant `c = 2K'`, with `K = sup|g''| + ‖g'''‖₁`.
#[derive(Debug, Clone, Copy)]
pub struct BoundConstants {
    pub minorant: f64,
    pub majorant: f64,
}

fn bound_cache() -> &'static Mutex<HashMap<u64, BoundConstants>> {
    static C: OnceLock<Mutex<HashMap<u64, BoundConstants>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn derivative_norms(g: &FrequencyFunction, scale: f64) -> Result<(f64, f64)> {
    // sup |g''| on a grid plus a margin; ‖g'''‖₁ by adaptive quadrature on both half lines
    let top = 60.0 / scale;
    let mut sup2 = 0.0f64;
    for i in 0..=400 {
        let t = -top + 2.0 * top * i as f64 / 400.0;
        sup2 = sup2.max(eval_g(g, t, 2)?.abs());
    }
    let mut l1 = 0.0;
    let opts = QuadOptions::tol(1e-10, 1e-6);
    for (a, b) in [(-top, -LINE_SWITCH), (-LINE_SWITCH, LINE_SWITCH), (LINE_SWITCH, top)] {
        let mut err = None;
        let r = integrate(
            |t| match eval_g(g, t, 3) {
                Ok(v) => v.abs(),
                Err(e) => {
                    err = Some(e);
                    0.0
                }
            },
            a,
            b,
            opts,
        )?;
        if let Some(e) = err {
            return Err(e);
        }
        l1 += r.value;
    }
    Ok((sup2 * 1.01, l1 * 1.01))
}

pub fn bound_constants(order: Order) -> Result<BoundConstants> {
    let key = order.nu().to_bits();
    if let Some(v) = bound_cache().lock().expect("cache").get(&key) {
        return Ok(*v);
    }
    let fa = EvenLPFunction::ASquared(order);
    let ga = build_frequency(fa, 0.0)?;
    let (s2, l3) = derivative_norms(&ga, fa.first_positive_zero()?)?;
    let g0 = eval_g(&ga, 0.0, 0)?;
    let minorant = (8.0 * g0).max(4.0 * (s2 + l3));
    let fb = EvenLPFunction::BSquared(order);
    let b1 = fb.first_positive_zero()?;
    let gb = build_frequency(fb, 0.5 * b1)?;
    let (s2b, l3b) = derivative_norms(&gb, b1)?;
    let out = BoundConstants { minorant, majorant: 2.0 * (s2b + l3b) };
    bound_cache().lock().expect("cache").insert(key, out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Minorant,
    Majorant,
}

/// `c λ(1+λ) F(x)/(1+x²)` (minorant, F = A²) or `c λ(1+λ) F(x)/x²` (majorant, F = B²).
pub fn error_bound(order: Order, lambda: f64, x: f64, side: BoundSide) -> Result<f64> {
    if !(lambda > 0.0) {
        return invalid("lambda must be positive");
    }
    let k = bound_constants(order)?;
    let (a, _) = eval_ab(order, x);
    Ok(match side {
        BoundSide::Minorant => k.minorant * lambda * (1.0 + lambda) * a * a / (1.0 + x * x),
        BoundSide::Majorant => {
            let bx = bessel::b_over_x(order, x);
            k.majorant * lambda * (1.0 + lambda) * bx * bx
        }
    })
}
