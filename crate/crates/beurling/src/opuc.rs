//! Orthogonal polynomials on the unit circle for even probability measures,
//! Christoffel–Darboux quadrature, and extremal one-sided trigonometric
//! polynomials for the periodized exponential `f_λ` and its superpositions `h_ς`.
//!
//! Angles θ live in [−1/2, 1/2) with `z = e^{2πiθ}`. For an even measure all
//! `Φ_k` have real coefficients, so the recursion runs in real arithmetic.

use crate::error::{invalid, Error, Result};
use crate::extremal::Side;
use crate::measures::{integrate_window, mass_above, moment_below, MeasureSpec};
use crate::quad::{integrate_vec, QuadOptions};
use crate::special::gamma;
use nalgebra::{DMatrix, DVector, LU, Dyn};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CircleMeasure {
    Lebesgue,
    /// tabulated density on [−1/2, 1/2), symmetrized and normalized before use
    Density { theta: Vec<f64>, values: Vec<f64> },
    /// `C_N w(θ) |sin 2πθ|^{N−2} dθ`, with w tabulated on θ ∈ [0, 1/2] (empty: w ≡ 1)
    Sphere {
        #[serde(rename = "N")]
        n: usize,
        #[serde(default)]
        w_theta: Vec<f64>,
        #[serde(default)]
        w_values: Vec<f64>,
    },
}

/// `C_N = √π Γ(N/2)/Γ((N−1)/2)`
pub fn sphere_constant(n: usize) -> f64 {
    let nf = n as f64;
    PI.sqrt() * gamma(0.5 * nf) / gamma(0.5 * (nf - 1.0))
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    let i = xs.partition_point(|&v| v <= x) - 1;
    let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + t * (ys[i + 1] - ys[i])
}

/// Periodic linear interpolation on a grid inside [−1/2, 1/2).
fn interp_periodic(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let x = x - x.round();
    let (x0, xl) = (xs[0], xs[xs.len() - 1]);
    if x >= x0 && x <= xl {
        return interp(xs, ys, x);
    }
    let span = x0 + 1.0 - xl;
    let d = if x > xl { x - xl } else { x + 1.0 - xl };
    ys[ys.len() - 1] + (ys[0] - ys[ys.len() - 1]) * d / span
}

fn check_grid(xs: &[f64], ys: &[f64], lo: f64, hi: f64, what: &str) -> Result<()> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return invalid(format!("{what}: need at least two points and matching lengths"));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) || xs[0] < lo || xs[xs.len() - 1] > hi {
        return invalid(format!("{what}: grid must be strictly increasing inside [{lo}, {hi}]"));
    }
    if ys.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return invalid(format!("{what}: values must be finite and nonnegative"));
    }
    Ok(())
}

impl CircleMeasure {
    pub fn validate(&self) -> Result<()> {
        match self {
            CircleMeasure::Lebesgue => Ok(()),
            CircleMeasure::Density { theta, values } => check_grid(theta, values, -0.5, 0.5, "circle density"),
            CircleMeasure::Sphere { n, w_theta, w_values } => {
                if *n < 2 {
                    return invalid("sphere dimension N must be at least 2");
                }
                if w_theta.is_empty() && w_values.is_empty() {
                    return Ok(());
                }
                check_grid(w_theta, w_values, 0.0, 0.5, "sphere weight")
            }
        }
    }

    /// Unnormalized even density at θ ∈ [0, 1/2].
    fn raw(&self, t: f64) -> f64 {
        match self {
            CircleMeasure::Lebesgue => 1.0,
            CircleMeasure::Density { theta, values } => 0.5 * (interp_periodic(theta, values, t) + interp_periodic(theta, values, -t)),
            CircleMeasure::Sphere { n, w_theta, w_values } => {
                let w = if w_theta.is_empty() { 1.0 } else { interp(w_theta, w_values, t) };
                sphere_constant(*n) * w * (2.0 * PI * t).sin().abs().powi(*n as i32 - 2)
            }
        }
    }

    fn breaks(&self) -> Vec<f64> {
        let mut b = vec![0.0, 0.5];
        match self {
            CircleMeasure::Density { theta, .. } => b.extend(theta.iter().map(|t| t.abs()).filter(|t| *t < 0.5)),
            CircleMeasure::Sphere { w_theta, .. } => b.extend(w_theta.iter().copied()),
            CircleMeasure::Lebesgue => {}
        }
        b.sort_by(f64::total_cmp);
        b.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        b
    }

    /// `∫ cos(2πkθ) ρ(θ) dθ` for k = 0..=kmax, before normalization.
    fn raw_moments(&self, kmax: usize) -> Result<Vec<f64>> {
        if let CircleMeasure::Lebesgue = self {
            let mut m = vec![0.0; kmax + 1];
            m[0] = 1.0;
            return Ok(m);
        }
        let br = self.breaks();
        let mut out = vec![0.0; kmax + 1];
        for w in br.windows(2) {
            // split so each piece sees at most about a quarter oscillation of the top mode
            let pieces = ((w[1] - w[0]) * 4.0 * (kmax as f64 + 1.0)).ceil().max(1.0) as usize;
            for p in 0..pieces {
                let a = w[0] + (w[1] - w[0]) * p as f64 / pieces as f64;
                let b = w[0] + (w[1] - w[0]) * (p + 1) as f64 / pieces as f64;
                let v = integrate_vec(
                    |t, d: &mut [f64]| {
                        let r = self.raw(t);
                        for (k, x) in d.iter_mut().enumerate() {
                            *x = 2.0 * r * (2.0 * PI * k as f64 * t).cos();
                        }
                    },
                    kmax + 1,
                    a,
                    b,
                    QuadOptions::tol(1e-16, 1e-14),
                )?;
                out.iter_mut().zip(v).for_each(|(o, x)| *o += x);
            }
        }
        Ok(out)
    }

    /// Total mass of the density as given (1 for Lebesgue and for the sphere with w ≡ 1).
    pub fn raw_mass(&self) -> Result<f64> {
        self.validate()?;
        Ok(self.raw_moments(0)?[0])
    }

    /// Normalized moments `m_k = ∫ cos(2πkθ) dϑ`.
    pub fn moments(&self, kmax: usize) -> Result<Vec<f64>> {
        self.validate()?;
        let m = self.raw_moments(kmax)?;
        if !(m[0] > 0.0 && m[0].is_finite()) {
            return invalid("circle measure has no mass and cannot be normalized");
        }
        Ok(m.iter().map(|v| v / m[0]).collect())
    }

    /// Normalized density at any θ (1-periodic, even).
    pub fn density(&self) -> Result<impl Fn(f64) -> f64 + '_> {
        let z = self.raw_mass()?;
        if !(z > 0.0) {
            return invalid("circle measure has no mass and cannot be normalized");
        }
        Ok(move |t: f64| self.raw((t - t.round()).abs()) / z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeSet {
    A,
    B,
}

#[derive(Debug, Clone)]
pub struct OpucBasis {
    n: usize,
    moments: Vec<f64>,
    /// orthonormal φ_0..φ_{n+1}, coefficients in increasing degree
    phi: Vec<Vec<f64>>,
    verblunsky: Vec<f64>,
    a_nodes: Vec<f64>,
    b_nodes: Vec<f64>,
    residual: f64,
}

fn inner(p: &[f64], q: &[f64], m: &[f64]) -> f64 {
    let mut s = 0.0;
    for (a, pa) in p.iter().enumerate() {
        for (b, qb) in q.iter().enumerate() {
            s += pa * qb * m[a.abs_diff(b)];
        }
    }
    s
}

fn gram_residual(phi: &[Vec<f64>], m: &[f64]) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut safe = phi.len();
    for j in 0..phi.len() {
        for k in 0..=j {
            let want = if j == k { 1.0 } else { 0.0 };
            let r = (inner(&phi[j], &phi[k], m) - want).abs();
            if r > 1e-9 && safe == phi.len() {
                safe = j;
            }
            worst = worst.max(r);
        }
    }
    (worst, safe)
}

fn szego(m: &[f64], top: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let mut monic = vec![vec![1.0]];
    let mut gam = Vec::new();
    for k in 0..top {
        let cur = &monic[k];
        let mut zphi = vec![0.0];
        zphi.extend_from_slice(cur);
        let star: Vec<f64> = cur.iter().rev().copied().collect();
        let g = inner(&zphi, &[1.0], m) / inner(&star, &[1.0], m);
        if !(g.abs() < 1.0) {
            return Err(Error::Singular(format!("Verblunsky coefficient {k} is {g}; the measure looks finitely supported")));
        }
        let mut next = zphi;
        for (i, s) in star.iter().enumerate() {
            next[i] -= g * s;
        }
        gam.push(g);
        monic.push(next);
    }
    let phi = monic
        .into_iter()
        .map(|p| {
            let nrm = inner(&p, &p, m).sqrt();
            p.iter().map(|c| c / nrm).collect()
        })
        .collect();
    Ok((phi, gam))
}

fn gram_schmidt(m: &[f64], top: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for k in 0..=top {
        let mut v = vec![0.0; k + 1];
        v[k] = 1.0;
        for _ in 0..2 {
            for q in &out {
                let c = inner(&v, q, m);
                for (i, qi) in q.iter().enumerate() {
                    v[i] -= c * qi;
                }
            }
        }
        let nrm = inner(&v, &v, m).sqrt();
        out.push(v.iter().map(|c| c / nrm).collect());
    }
    out
}

/// Simple zeros of a real function on one period, wrapped into [−1/2, 1/2).
fn circle_zeros(f: impl Fn(f64) -> f64, expected: usize) -> Result<Vec<f64>> {
    for refine in [16usize, 64, 256] {
        let m = refine * expected.max(1);
        let shift = 0.271_828_182_8 / m as f64;
        let mut out = Vec::new();
        let mut prev = (-0.5 - shift, f(-0.5 - shift));
        for i in 1..=m {
            let t = -0.5 - shift + i as f64 / m as f64;
            let v = f(t);
            if v == 0.0 {
                out.push(t);
            } else if prev.1 != 0.0 && (prev.1 < 0.0) != (v < 0.0) {
                let (mut lo, mut hi, mut flo) = (prev.0, t, prev.1);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let fm = f(mid);
                    if fm == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if (fm < 0.0) == (flo < 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev = (t, v);
        }
        if out.len() == expected {
            let mut w: Vec<f64> = out
                .into_iter()
                .map(|t| {
                    let t = if t >= 0.5 { t - 1.0 } else if t < -0.5 { t + 1.0 } else { t };
                    if t.abs() < 1e-13 {
                        0.0
                    } else if (t + 0.5).abs() < 1e-13 || (t - 0.5).abs() < 1e-13 {
                        -0.5
                    } else {
                        t
                    }
                })
                .collect();
            w.sort_by(f64::total_cmp);
            return Ok(w);
        }
    }
    Err(Error::Convergence(format!("could not isolate {expected} simple zeros on the circle")))
}

impl OpucBasis {
    pub fn build(measure: &CircleMeasure, n: usize) -> Result<Self> {
        let m = measure.moments(n + 1)?;
        let (mut phi, mut verblunsky) = szego(&m, n + 1)?;
        let (mut residual, _) = gram_residual(&phi, &m);
        if residual > 1e-9 {
            phi = gram_schmidt(&m, n + 1);
            verblunsky = phi.iter().skip(1).map(|p| -p[0] / p[p.len() - 1]).collect();
            let (r, safe) = gram_residual(&phi, &m);
            residual = r;
            if r > 1e-9 || phi.iter().any(|p| p.iter().any(|c| !c.is_finite())) {
                return Err(Error::Singular(format!(
                    "Gram matrix too ill-conditioned at degree {}; the largest safe n for this measure is {}",
                    n + 1,
                    safe.saturating_sub(2)
                )));
            }
        }
        let top = phi[n + 1].clone();
        let half = 0.5 * (n as f64 + 1.0);
        let re = |t: f64| top.iter().enumerate().map(|(a, c)| c * (2.0 * PI * (a as f64 - half) * t).cos()).sum::<f64>();
        let im = |t: f64| top.iter().enumerate().map(|(a, c)| c * (2.0 * PI * (a as f64 - half) * t).sin()).sum::<f64>();
        let a_nodes = circle_zeros(re, n + 1)?;
        let b_nodes = circle_zeros(im, n + 1)?;
        Ok(OpucBasis { n, moments: m, phi, verblunsky, a_nodes, b_nodes, residual })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    /// Coefficients of φ_k, k ≤ n+1.
    pub fn phi(&self, k: usize) -> &[f64] {
        &self.phi[k]
    }

    pub fn verblunsky(&self) -> &[f64] {
        &self.verblunsky
    }

    pub fn nodes(&self, set: NodeSet) -> &[f64] {
        match set {
            NodeSet::A => &self.a_nodes,
            NodeSet::B => &self.b_nodes,
        }
    }

    /// Largest deviation of the Gram matrix of φ_0..φ_{n+1} from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        self.residual
    }

    pub fn eval_phi(&self, k: usize, z: Complex64) -> Complex64 {
        self.phi[k].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `K_n(ζ, ζ) = Σ_{k≤n} |φ_k(ζ)|²` at `ζ = e^{2πiθ}`.
    pub fn kernel_diag(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, 2.0 * PI * theta);
        (0..=self.n).map(|k| self.eval_phi(k, z).norm_sqr()).sum()
    }

    /// Largest modulus among the zeros of φ_{n+1} (companion-matrix eigenvalues).
    pub fn max_zero_modulus(&self) -> f64 {
        let p = &self.phi[self.n + 1];
        let d = p.len() - 1;
        let lead = p[d];
        let mut c = DMatrix::zeros(d, d);
        for i in 1..d {
            c[(i, i - 1)] = 1.0;
        }
        for i in 0..d {
            c[(i, d - 1)] = -p[i] / lead;
        }
        c.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Σ_nodes W(ζ)/K_n(ζ, ζ)` for a Laurent polynomial with coefficients of `z^{−m}..z^{m}`, m ≤ n.
    pub fn quadrature(&self, w: &[Complex64], set: NodeSet) -> Result<Complex64> {
        if w.len().is_multiple_of(2) {
            return invalid("Laurent coefficients must have odd length 2m+1");
        }
        let m = w.len() / 2;
        if m > self.n {
            return invalid(format!("Laurent degree {m} exceeds n = {}", self.n));
        }
        let mut s = Complex64::new(0.0, 0.0);
        for &t in self.nodes(set) {
            let z = Complex64::from_polar(1.0, 2.0 * PI * t);
            let val: Complex64 = w.iter().enumerate().map(|(i, c)| c * z.powi(i as i32 - m as i32)).sum();
            s += val / self.kernel_diag(t);
        }
        Ok(s)
    }
}

/// `f_λ(θ) = Σ_j e^{−λ|θ+j|} = cosh(λ(θ − ⌊θ⌋ − 1/2))/sinh(λ/2)`.
pub fn f_lambda(lambda: f64, theta: f64) -> f64 {
    let v = (theta - theta.floor() - 0.5).abs();
    ((lambda * (v - 0.5)).exp() + (-lambda * (v + 0.5)).exp()) / -(-lambda).exp_m1()
}

/// θ-derivative of `f_λ` (one-sided value 0 is returned at the cusp θ ∈ Z).
pub fn f_lambda_prime(lambda: f64, theta: f64) -> f64 {
    let v = theta - theta.floor() - 0.5;
    let s = if v > 0.0 { 1.0 } else if v < 0.0 { -1.0 } else { 0.0 };
    let a = v.abs();
    if a == 0.5 {
        return 0.0;
    }
    s * lambda * ((lambda * (a - 0.5)).exp() - (-lambda * (a + 0.5)).exp()) / -(-lambda).exp_m1()
}

/// `f_λ(θ) − f_λ(1/2) = 2 sinh²(λv/2)/sinh(λ/2)` with `v = θ − ⌊θ⌋ − 1/2`.
pub fn h_lambda(lambda: f64, theta: f64) -> f64 {
    let v = (theta - theta.floor() - 0.5).abs();
    (lambda * (v - 0.5)).exp() * (-lambda * v).exp_m1().powi(2) / -(-lambda).exp_m1()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    pub degree: usize,
    /// a_0..a_n
    pub cos: Vec<f64>,
    /// b_1..b_n
    pub sin: Vec<f64>,
}

impl TrigPoly {
    fn from_vec(n: usize, x: &[f64]) -> Self {
        TrigPoly { degree: n, cos: x[..=n].to_vec(), sin: x[n + 1..].to_vec() }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut s = self.cos[0];
        for k in 1..=self.degree {
            let w = 2.0 * PI * k as f64 * theta;
            s += self.cos[k] * w.cos() + self.sin[k - 1] * w.sin();
        }
        s
    }

    pub fn deriv(&self, theta: f64) -> f64 {
        let mut s = 0.0;
        for k in 1..=self.degree {
            let c = 2.0 * PI * k as f64;
            let w = c * theta;
            s += c * (-self.cos[k] * w.sin() + self.sin[k - 1] * w.cos());
        }
        s
    }

    /// `∫ T dϑ` for an even measure with cosine moments m_k.
    pub fn integral(&self, moments: &[f64]) -> f64 {
        (0..=self.degree).map(|k| self.cos[k] * moments[k]).sum()
    }
}

fn basis_row(n: usize, t: f64, deriv: bool) -> Vec<f64> {
    let mut row = vec![0.0; 2 * n + 1];
    row[0] = if deriv { 0.0 } else { 1.0 };
    for k in 1..=n {
        let c = 2.0 * PI * k as f64;
        let (s, co) = (c * t).sin_cos();
        if deriv {
            row[k] = -c * s;
            row[n + k] = c * co;
        } else {
            row[k] = co;
            row[n + k] = s;
        }
    }
    row
}

/// The Hermite interpolation system on one node set, factored once.
#[derive(Debug, Clone)]
pub struct TrigSolver {
    n: usize,
    side: Side,
    nodes: Vec<f64>,
    deriv_nodes: Vec<f64>,
    dropped: Option<f64>,
    lu: LU<f64, Dyn, Dyn>,
}

impl TrigSolver {
    pub fn new(basis: &OpucBasis, side: Side) -> Result<Self> {
        let n = basis.degree();
        let (nodes, deriv_nodes, dropped) = match side {
            Side::Minus => {
                let nodes = basis.nodes(NodeSet::A).to_vec();
                let far = nodes.iter().copied().max_by(|a, b| a.abs().total_cmp(&b.abs())).expect("n+1 nodes");
                let deriv: Vec<f64> = nodes.iter().copied().filter(|&t| t != far).collect();
                (nodes, deriv, Some(far))
            }
            Side::Plus => {
                let nodes = basis.nodes(NodeSet::B).to_vec();
                let deriv: Vec<f64> = nodes.iter().copied().filter(|&t| t != 0.0).collect();
                (nodes, deriv, None)
            }
        };
        if nodes.len() + deriv_nodes.len() != 2 * n + 1 {
            return Err(Error::Singular("interpolation conditions do not match the 2n+1 unknowns".into()));
        }
        let mut rows = Vec::with_capacity(2 * n + 1);
        rows.extend(nodes.iter().map(|&t| basis_row(n, t, false)));
        rows.extend(deriv_nodes.iter().map(|&t| basis_row(n, t, true)));
        let a = DMatrix::from_fn(2 * n + 1, 2 * n + 1, |i, j| rows[i][j]);
        let lu = a.lu();
        if !lu.is_invertible() {
            return Err(Error::Singular("interpolation matrix is singular".into()));
        }
        Ok(TrigSolver { n, side, nodes, deriv_nodes, dropped, lu })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    fn rhs(&self, value: &dyn Fn(f64) -> f64, deriv: &dyn Fn(f64) -> f64) -> DVector<f64> {
        DVector::from_iterator(
            2 * self.n + 1,
            self.nodes.iter().map(|&t| value(t)).chain(self.deriv_nodes.iter().map(|&t| deriv(t))),
        )
    }

    pub fn solve_vec(&self, value: &dyn Fn(f64) -> f64, deriv: &dyn Fn(f64) -> f64) -> Result<Vec<f64>> {
        let x = self.lu.solve(&self.rhs(value, deriv)).ok_or_else(|| Error::Singular("interpolation solve failed".into()))?;
        Ok(x.iter().copied().collect())
    }

    pub fn solve(&self, value: &dyn Fn(f64) -> f64, deriv: &dyn Fn(f64) -> f64) -> Result<TrigPoly> {
        Ok(TrigPoly::from_vec(self.n, &self.solve_vec(value, deriv)?))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrigExtremal {
    pub side: Side,
    pub poly: TrigPoly,
    /// `Σ_nodes target(ξ)/K_n(ξ, ξ)`, the optimal value
    pub node_sum: f64,
    /// residual of the derivative condition left out of the minorant system
    pub dropped_residual: Option<f64>,
}

fn node_sum(basis: &OpucBasis, side: Side, target: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    let set = if side == Side::Minus { NodeSet::A } else { NodeSet::B };
    basis.nodes(set).iter().map(|&t| Ok(target(t)? / basis.kernel_diag(t))).sum()
}

/// Extremal minorant (A-nodes) or majorant (B-nodes) of degree n for `f_λ`.
pub fn extremal_trig(basis: &OpucBasis, lambda: f64, side: Side) -> Result<TrigExtremal> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return invalid(format!("lambda must be positive, got {lambda}"));
    }
    let solver = TrigSolver::new(basis, side)?;
    let poly = solver.solve(&|t| f_lambda(lambda, t), &|t| f_lambda_prime(lambda, t))?;
    let dropped_residual = solver.dropped.map(|t| (poly.deriv(t) - f_lambda_prime(lambda, t)).abs());
    let node_sum = node_sum(basis, side, &|t| Ok(f_lambda(lambda, t)))?;
    Ok(TrigExtremal { side, poly, node_sum, dropped_residual })
}

/// Circle admissibility: `∫ λ e^{−aλ} dς < ∞` (minus) or `∫ λ/(1+λ) dς < ∞` (plus).
pub fn sigma_admissible(m: &MeasureSpec, side: Side) -> bool {
    if m.validate().is_err() {
        return false;
    }
    let (head, tail) = match *m {
        MeasureSpec::Power { alpha, .. } => (Some(alpha), Some(alpha)),
        MeasureSpec::Log => (Some(-1.0), Some(-1.0)),
        MeasureSpec::Table { tail_exponent, .. } => (None, Some(tail_exponent)),
        MeasureSpec::Atoms { .. } => (None, None),
    };
    head.is_none_or(|a| a > -2.0) && (side == Side::Minus || tail.is_none_or(|b| b < -1.0))
}

const SIGMA_SMALL: f64 = 1e-3;

/// Fit `v(λ) ≈ c₁λ + c₃λ³` (the functions involved are odd in λ) from λ₀ and 2λ₀.
fn odd_model(v1: f64, v2: f64, l0: f64) -> (f64, f64) {
    let c3 = (v2 - 2.0 * v1) / (6.0 * l0.powi(3));
    ((v1 - c3 * l0.powi(3)) / l0, c3)
}

/// `∫ F(λ) dς` for F vanishing like λ at 0, with `F(λ) → limit` beyond `top`.
fn sigma_integrate(m: &MeasureSpec, dim: usize, top: f64, limit: Option<&[f64]>, f: &dyn Fn(f64, &mut [f64])) -> Result<Vec<f64>> {
    let l0 = SIGMA_SMALL;
    let mut a = vec![0.0; dim];
    let mut b = vec![0.0; dim];
    f(l0, &mut a);
    f(2.0 * l0, &mut b);
    let (m1, m3) = (moment_below(m, l0, 1.0), moment_below(m, l0, 3.0));
    let mut out = integrate_window(m, l0, top, dim, |l, d| f(l, d))?;
    for i in 0..dim {
        let (c1, c3) = odd_model(a[i], b[i], l0);
        out[i] += c1 * m1 + c3 * m3;
    }
    if let Some(lim) = limit {
        let mass = mass_above(m, top);
        for i in 0..dim {
            if lim[i] != 0.0 {
                out[i] += lim[i] * mass;
            }
        }
    }
    Ok(out)
}

/// `h_ς(θ) = ∫ {f_λ(θ) − f_λ(1/2)} dς(λ)`; `+∞` at θ ∈ Z when ς has infinite tail mass.
pub fn h_sigma(m: &MeasureSpec, theta: f64) -> Result<f64> {
    if !sigma_admissible(m, Side::Minus) {
        return invalid("measure does not satisfy the circle admissibility condition");
    }
    let dist = (theta - theta.round()).abs();
    if dist == 0.0 {
        // h_λ(0) = tanh(λ/4) → 1
        let top = 150.0;
        let v = sigma_integrate(m, 1, top, Some(&[1.0]), &|l, d| d[0] = h_lambda(l, 0.0))?[0];
        return Ok(if v.is_nan() { f64::INFINITY } else { v });
    }
    Ok(sigma_integrate(m, 1, 60.0 / dist, None, &|l, d| d[0] = h_lambda(l, theta))?[0])
}

/// `h_ς'(θ)`, θ ∉ Z.
pub fn h_sigma_prime(m: &MeasureSpec, theta: f64) -> Result<f64> {
    let dist = (theta - theta.round()).abs();
    if dist == 0.0 {
        return invalid("h_sigma is not differentiable at integers");
    }
    Ok(sigma_integrate(m, 1, 60.0 / dist, None, &|l, d| d[0] = f_lambda_prime(l, theta))?[0])
}

/// Extremal polynomial for `h_ς`, from the λ-integrated coefficient vectors.
pub fn extremal_trig_sigma(basis: &OpucBasis, m: &MeasureSpec, side: Side) -> Result<TrigExtremal> {
    if !sigma_admissible(m, side) {
        return invalid(format!("measure is not admissible for the {side} side on the circle"));
    }
    let solver = TrigSolver::new(basis, side)?;
    let n = basis.degree();
    let nearest = solver.nodes.iter().filter(|&&t| t != 0.0).map(|t| t.abs()).fold(f64::INFINITY, f64::min);
    let top = 60.0 / nearest;
    let coef = |l: f64, d: &mut [f64]| {
        // the system is nonsingular, so this cannot fail once factored
        let x = solver.solve_vec(&|t| h_lambda(l, t), &|t| f_lambda_prime(l, t)).expect("factored system");
        d.copy_from_slice(&x);
    };
    let limit = match side {
        Side::Plus => Some(solver.solve_vec(&|t| if t == 0.0 { 1.0 } else { 0.0 }, &|_| 0.0)?),
        Side::Minus => None,
    };
    let x = sigma_integrate(m, 2 * n + 1, top, limit.as_deref(), &coef)?;
    let poly = TrigPoly::from_vec(n, &x);
    let dropped_residual = match solver.dropped {
        Some(t) => Some((poly.deriv(t) - h_sigma_prime(m, t)?).abs()),
        None => None,
    };
    let node_sum = node_sum(basis, side, &|t| h_sigma(m, t))?;
    Ok(TrigExtremal { side, poly, node_sum, dropped_residual })
}

/// The circle measure `C_N w(cos 2πθ) |sin 2πθ|^{N−2} dθ` induced by a zonal weight.
pub fn sphere_measure(n: usize, w_theta: Vec<f64>, w_values: Vec<f64>) -> Result<CircleMeasure> {
    let m = CircleMeasure::Sphere { n, w_theta, w_values };
    m.validate()?;
    let z = m.raw_mass()?;
    if !(z > 0.0 && z.is_finite()) {
        return invalid("zonal weight is not normalizable");
    }
    Ok(m)
}

/// One-sided polynomial in `t = x·v` on the sphere for `h_ς`.
#[derive(Debug, Clone)]
pub struct SphereExtremal {
    pub basis: OpucBasis,
    pub extremal: TrigExtremal,
    sigma: MeasureSpec,
}

impl SphereExtremal {
    pub fn new(measure: &CircleMeasure, n: usize, sigma: &MeasureSpec, side: Side) -> Result<Self> {
        let basis = OpucBasis::build(measure, n)?;
        let extremal = extremal_trig_sigma(&basis, sigma, side)?;
        Ok(SphereExtremal { basis, extremal, sigma: sigma.clone() })
    }

    /// `u^±`: the integral of the extremal polynomial over the sphere.
    pub fn value(&self) -> f64 {
        self.extremal.node_sum
    }

    fn angle(t: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&t) {
            return invalid(format!("t = {t} must lie in [-1, 1]"));
        }
        Ok(t.acos() / (2.0 * PI))
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.extremal.poly.eval(Self::angle(t)?))
    }

    /// `h_ς` at the same t.
    pub fn target(&self, t: f64) -> Result<f64> {
        h_sigma(&self.sigma, Self::angle(t)?)
    }
}

pub fn sphere_value(n_dim: usize, w_theta: Vec<f64>, w_values: Vec<f64>, n: usize, sigma: &MeasureSpec, side: Side) -> Result<f64> {
    Ok(SphereExtremal::new(&sphere_measure(n_dim, w_theta, w_values)?, n, sigma, side)?.value())
}

pub fn sphere_eval(n_dim: usize, w_theta: Vec<f64>, w_values: Vec<f64>, n: usize, sigma: &MeasureSpec, side: Side, t: f64) -> Result<f64> {
    SphereExtremal::new(&sphere_measure(n_dim, w_theta, w_values)?, n, sigma, side)?.eval(t)
}
