//! Structure functions `A_ν`, `B_ν` of the homogeneous de Branges space,
//! their real zeros and the reproducing kernel.
//!
//! `A_ν(z) = Γ(ν+1)(z/2)^{−ν} J_ν(z)` and `B_ν(z) = Γ(ν+1)(z/2)^{−ν} J_{ν+1}(z)`.
//! Small arguments use the defining power series. Moderate arguments use
//! Miller's backward recurrence normalised by the Neumann series of
//! `(z/2)^ν`, which yields `A` and `B` directly without Γ. Large arguments
//! use Hankel's expansion of `J_μ`.

use crate::error::{invalid, Error, Result};
use crate::real::Real;
use crate::special::ln_gamma;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order<T> {
    nu: T,
}

impl<T: Real> Order<T> {
    pub fn new(nu: T) -> Result<Self> {
        if !(nu > -T::one()) || !nu.is_finite() {
            return invalid(format!("order must satisfy nu > -1, got {nu}"));
        }
        Ok(Order { nu })
    }

    pub fn nu(&self) -> T {
        self.nu
    }
}

/// Evaluation switches. Defaults: power series up to |x| = 4, Hankel's
/// expansion from |x| = 30 + (ν+1)², backward recurrence in between.
#[derive(Debug, Clone, Copy)]
pub struct BesselConfig {
    pub series_switch: f64,
    pub asymptotic_switch: f64,
    pub max_terms: usize,
}

impl Default for BesselConfig {
    fn default() -> Self {
        BesselConfig { series_switch: 4.0, asymptotic_switch: 30.0, max_terms: 200 }
    }
}

fn series_ab<T: Real>(nu: T, x: T, max_terms: usize) -> (T, T) {
    let h = x / T::c(2.0);
    let h2 = h * h;
    let mut ta = T::one();
    let mut a = T::one();
    let mut tb = h / (nu + T::one());
    let mut b = tb;
    let eps = T::epsilon() * T::c(0.01);
    for n in 1..max_terms {
        let nf = T::c(n as f64);
        ta = -ta * h2 / (nf * (nu + nf));
        tb = ta * h / (nu + nf + T::one());
        a = a + ta;
        b = b + tb;
        if ta.abs() <= eps * a.abs().max(T::min_positive_value()) && tb.abs() <= eps * b.abs() && nf > h {
            break;
        }
    }
    (a, b)
}

fn miller_ab<T: Real>(nu: T, x: T) -> (T, T) {
    let xf = x.to64();
    let top = (xf + 40.0 + 6.0 * xf.cbrt()).ceil() as usize;
    let top = top + top % 2;
    // normalisation weights of (x/2)^ν = Σ_k (ν+2k) Γ(ν+k)/k! J_{ν+2k}, divided by Γ(ν+1)
    let kmax = top / 2;
    let mut d = Vec::with_capacity(kmax + 1);
    d.push(T::one());
    if kmax >= 1 {
        d.push(nu + T::c(2.0));
    }
    for k in 1..kmax {
        let kf = T::c(k as f64);
        let two = T::c(2.0);
        let next = d[k] * (nu + two * kf + two) / (nu + two * kf) * (nu + kf) / (kf + T::one());
        d.push(next);
    }
    let big = T::max_value().sqrt().sqrt();
    let mut jp1 = T::zero();
    let mut jc = T::min_positive_value().sqrt();
    let mut sum = if top.is_multiple_of(2) { d[kmax] * jc } else { T::zero() };
    let mut j1 = T::zero();
    let mut j = top;
    while j > 0 {
        let jm1 = T::c(2.0) * (nu + T::c(j as f64)) / x * jc - jp1;
        jp1 = jc;
        jc = jm1;
        j -= 1;
        if j.is_multiple_of(2) {
            sum = sum + d[j / 2] * jc;
        }
        if j == 1 {
            j1 = jc;
        }
        if jc.abs() > big {
            let s = T::one() / big;
            jc = jc * s;
            jp1 = jp1 * s;
            sum = sum * s;
            j1 = j1 * s;
        }
    }
    (jc / sum, j1 / sum)
}

/// Hankel's expansion of J_μ(x) for large x > 0.
fn hankel_j<T: Real>(mu: T, x: T) -> T {
    let m4 = T::c(4.0) * mu * mu;
    let eight_x = T::c(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut prev = T::infinity();
    let eps = T::epsilon() * T::c(0.01);
    for k in 1..80 {
        let odd = T::c((2 * k - 1) as f64);
        term = term * (m4 - odd * odd) / (T::c(k as f64) * eight_x);
        let mag = term.abs();
        if mag > prev {
            break;
        }
        prev = mag;
        // P collects even k with alternating sign, Q odd k
        match k % 4 {
            1 => q = q + term,
            2 => p = p - term,
            3 => q = q - term,
            _ => p = p + term,
        }
        if mag < eps {
            break;
        }
    }
    let chi = x - (mu / T::c(2.0) + T::c(0.25)) * T::PI();
    (T::c(2.0) / (T::PI() * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// (A_ν(x), B_ν(x)) for real x.
pub fn eval_ab_cfg<T: Real>(order: Order<T>, x: T, cfg: &BesselConfig) -> (T, T) {
    let nu = order.nu;
    let ax = x.abs();
    let mu1 = (nu + T::one()).to64();
    let (a, b) = if ax.to64() <= cfg.series_switch {
        series_ab(nu, ax, cfg.max_terms)
    } else if ax.to64() >= cfg.asymptotic_switch + mu1 * mu1 {
        let scale = (ln_gamma(nu + T::one()) - nu * (ax / T::c(2.0)).ln()).exp();
        (scale * hankel_j(nu, ax), scale * hankel_j(nu + T::one(), ax))
    } else {
        miller_ab(nu, ax)
    };
    if x < T::zero() {
        (a, -b)
    } else {
        (a, b)
    }
}

pub fn eval_ab<T: Real>(order: Order<T>, x: T) -> (T, T) {
    eval_ab_cfg(order, x, &BesselConfig::default())
}

#[allow(non_snake_case)]
pub fn eval_A<T: Real>(order: Order<T>, x: T) -> T {
    eval_ab(order, x).0
}

#[allow(non_snake_case)]
pub fn eval_B<T: Real>(order: Order<T>, x: T) -> T {
    eval_ab(order, x).1
}

/// B_ν(x)/x, continuous at 0 with value 1/(2(ν+1)).
pub fn b_over_x<T: Real>(order: Order<T>, x: T) -> T {
    let nu = order.nu;
    if x.abs() <= T::one() {
        // series of B divided termwise by x
        let h2 = x * x / T::c(4.0);
        let mut t = T::one() / (T::c(2.0) * (nu + T::one()));
        let mut s = t;
        for n in 1..60 {
            let nf = T::c(n as f64);
            t = -t * h2 / (nf * (nu + nf + T::one()));
            s = s + t;
            if t.abs() <= T::epsilon() * T::c(0.01) * s.abs() {
                break;
            }
        }
        s
    } else {
        eval_B(order, x) / x
    }
}

#[allow(non_snake_case)]
pub fn eval_A_prime<T: Real>(order: Order<T>, x: T) -> T {
    -eval_B(order, x)
}

#[allow(non_snake_case)]
pub fn eval_B_prime<T: Real>(order: Order<T>, x: T) -> T {
    let two = T::c(2.0);
    eval_A(order, x) - (two * order.nu + T::one()) * b_over_x(order, x)
}

/// K_ν(ξ, ξ) = (B'A − A'B)/π; at ξ = 0 this is 1/(2π(ν+1)).
pub fn kernel_diag<T: Real>(order: Order<T>, xi: T) -> T {
    let (a, b) = eval_ab(order, xi);
    let bp = a - (T::c(2.0) * order.nu + T::one()) * b_over_x(order, xi);
    (bp * a + b * b) / T::PI()
}

/// K_ν(w, z) for real w ≠ z.
pub fn kernel<T: Real>(order: Order<T>, w: T, z: T) -> T {
    let (aw, bw) = eval_ab(order, w);
    let (az, bz) = eval_ab(order, z);
    (bz * aw - az * bw) / (T::PI() * (z - w))
}

/// (A_ν(z), B_ν(z)) for complex z by the power series.
pub fn eval_ab_complex(nu: f64, z: Complex64) -> (Complex64, Complex64) {
    let h = z * 0.5;
    let h2 = h * h;
    let mut ta = Complex64::new(1.0, 0.0);
    let mut a = ta;
    let mut b = h / (nu + 1.0);
    let r = h.norm();
    for n in 1..2000 {
        let nf = n as f64;
        ta = -ta * h2 / (nf * (nu + nf));
        let tb = ta * h / (nu + nf + 1.0);
        a += ta;
        b += tb;
        if nf > r && ta.norm() <= 1e-18 * a.norm() && tb.norm() <= 1e-18 * b.norm() {
            break;
        }
    }
    (a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroKind {
    A,
    B,
}

/// Ascending nonnegative zeros of `A_ν` or `B_ν` with `K_ν(ξ, ξ)` at each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub nu: f64,
    pub kind: ZeroKind,
    pub zeros: Vec<f64>,
    pub kernel_diag: Vec<f64>,
}

/// A simple real zero of A or B with the data the interpolation formulas need.
#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub xi: f64,
    /// derivative of the vanishing function at ξ, up to sign: B(ξ) for A-zeros, A(ξ) for B-zeros
    pub other: f64,
    /// value of the vanishing function at the computed ξ
    pub residual: f64,
}

/// Positive zeros of A and B computed together; interlacing keeps the indexing honest.
#[derive(Debug, Clone)]
pub struct Roots {
    pub nu: f64,
    pub a: Vec<Node>,
    pub b: Vec<Node>,
}

fn mcmahon(mu: f64, m: usize) -> f64 {
    let beta = (m as f64 + 0.5 * mu - 0.25) * std::f64::consts::PI;
    let m4 = 4.0 * mu * mu;
    let e = 8.0 * beta;
    beta - (m4 - 1.0) / e
        - 4.0 * (m4 - 1.0) * (7.0 * m4 - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (m4 - 1.0) * (83.0 * m4 * m4 - 982.0 * m4 + 3779.0) / (15.0 * e.powi(5))
}

/// Value and derivative of A (kind A) or B (kind B).
fn fd(order: Order<f64>, kind: ZeroKind, x: f64) -> (f64, f64, f64) {
    let (a, b) = eval_ab(order, x);
    match kind {
        ZeroKind::A => (a, -b, b),
        ZeroKind::B => {
            let bp = a - (2.0 * order.nu + 1.0) * b / x;
            (b, bp, a)
        }
    }
}

fn refine(order: Order<f64>, kind: ZeroKind, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<Node> {
    let (flo, _, _) = fd(order, kind, lo);
    let slo = flo.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, fp, other) = fd(order, kind, x);
        if f == 0.0 {
            return Ok(Node { xi: x, other, residual: 0.0 });
        }
        if f.signum() == slo {
            lo = x;
        } else {
            hi = x;
        }
        let mut xn = x - f / fp;
        if !(xn > lo && xn < hi) {
            xn = 0.5 * (lo + hi);
        }
        let step = (xn - x).abs();
        x = xn;
        if step <= 2.0 * f64::EPSILON * x || hi - lo <= 2.0 * f64::EPSILON * x {
            let (f, _, other) = fd(order, kind, x);
            return Ok(Node { xi: x, other, residual: f });
        }
    }
    if hi - lo <= rel_tol * x {
        let (f, _, other) = fd(order, kind, x);
        return Ok(Node { xi: x, other, residual: f });
    }
    Err(Error::Convergence(format!("zero refinement for nu={} near {x} did not converge", order.nu)))
}

/// First zero of the kind after `lo` (which is a zero of the other kind or 0).
fn next_zero(order: Order<f64>, kind: ZeroKind, lo: f64, index: usize) -> Result<Node> {
    let mu = match kind {
        ZeroKind::A => order.nu,
        ZeroKind::B => order.nu + 1.0,
    };
    let rel_tol = 1e-13;
    if index >= 3 {
        let g = mcmahon(mu, index);
        let d = 0.25;
        if g - d > lo {
            let (fl, _, _) = fd(order, kind, g - d);
            let (fr, _, _) = fd(order, kind, g + d);
            if fl * fr < 0.0 {
                return refine(order, kind, g - d, g + d, rel_tol);
            }
        }
    }
    // stepping: the function is monotone up to the next zero of the other kind
    let h = 0.1;
    let start = if lo == 0.0 { 1e-3 } else { lo * (1.0 + 1e-12) + 1e-12 };
    let (f0, _, _) = fd(order, kind, start);
    let s0 = f0.signum();
    let mut l = start;
    for _ in 0..100_000 {
        let r = l + h;
        let (fr, _, _) = fd(order, kind, r);
        if fr.signum() != s0 {
            return refine(order, kind, l, r, rel_tol);
        }
        l = r;
    }
    Err(Error::Convergence(format!("no zero of {kind:?} found after {lo} for nu={}", order.nu)))
}

impl Roots {
    fn new(nu: f64) -> Self {
        Roots { nu, a: Vec::new(), b: Vec::new() }
    }

    fn order(&self) -> Order<f64> {
        Order { nu: self.nu }
    }

    /// Extend until the last A-zero and the last B-zero both exceed `xmax` and the counts are met.
    fn extend(&mut self, xmax: f64, count_a: usize, count_b: usize) -> Result<()> {
        let order = self.order();
        loop {
            let done_a = self.a.len() >= count_a && self.a.last().is_some_and(|n| n.xi > xmax);
            let done_b = self.b.len() >= count_b && self.b.last().is_some_and(|n| n.xi > xmax);
            if done_a && done_b {
                return Ok(());
            }
            // A-zeros and positive B-zeros alternate: a_1 < b_1 < a_2 < b_2 < …
            if self.a.len() <= self.b.len() {
                let lo = self.b.last().map_or(0.0, |n| n.xi);
                let node = next_zero(order, ZeroKind::A, lo, self.a.len() + 1)?;
                self.a.push(node);
            } else {
                let lo = self.a.last().map_or(0.0, |n| n.xi);
                let node = next_zero(order, ZeroKind::B, lo, self.b.len() + 1)?;
                self.b.push(node);
            }
        }
    }
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<Roots>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Roots>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared zero snapshot covering at least `[0, xmax]` and the requested counts.
pub fn roots(order: Order<f64>, xmax: f64, count_a: usize, count_b: usize) -> Result<Arc<Roots>> {
    let key = order.nu.to_bits();
    let existing = cache().lock().expect("zero cache poisoned").get(&key).cloned();
    if let Some(r) = &existing {
        let ok = |v: &Vec<Node>, c: usize| v.len() >= c && v.last().is_some_and(|n| n.xi > xmax);
        if ok(&r.a, count_a) && ok(&r.b, count_b) {
            return Ok(r.clone());
        }
    }
    let mut fresh = existing.map(|r| (*r).clone()).unwrap_or_else(|| Roots::new(order.nu));
    fresh.extend(xmax, count_a, count_b)?;
    let fresh = Arc::new(fresh);
    let mut guard = cache().lock().expect("zero cache poisoned");
    let keep = match guard.get(&key) {
        Some(cur) if cur.a.len() >= fresh.a.len() && cur.b.len() >= fresh.b.len() => cur.clone(),
        _ => {
            guard.insert(key, fresh.clone());
            fresh
        }
    };
    Ok(keep)
}

/// The first `count` nonnegative zeros of A_ν or B_ν (for B the first is 0).
pub fn zeros(order: Order<f64>, kind: ZeroKind, count: usize) -> Result<ZeroTable> {
    if count == 0 {
        return invalid("zero count must be positive");
    }
    let r = roots(order, 0.0, count, count)?;
    let zs: Vec<f64> = match kind {
        ZeroKind::A => r.a[..count].iter().map(|n| n.xi).collect(),
        ZeroKind::B => std::iter::once(0.0).chain(r.b[..count - 1].iter().map(|n| n.xi)).collect(),
    };
    let kd = zs.iter().map(|&x| kernel_diag(order, x)).collect();
    Ok(ZeroTable { nu: order.nu, kind, zeros: zs, kernel_diag: kd })
}

/// c_ν = π 2^{−2ν−1} Γ(ν+1)^{−2}.
pub fn c_nu(nu: f64) -> f64 {
    std::f64::consts::PI * (-(2.0 * nu + 1.0) * std::f64::consts::LN_2 - 2.0 * ln_gamma(nu + 1.0)).exp()
}
