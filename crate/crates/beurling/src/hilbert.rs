//! Hilbert-type quadratic forms built from the Fourier transform of `e^{−λ|x|}`.
//!
//! For `2ν + 2 − N = 2r` the weight `|x|^{2ν+1}` is `|x|^{2r}` times the radial
//! Jacobian, so the relevant kernel is `(−Δ/4π²)^r` of the Poisson kernel,
//! integrated against μ. The Laplacian acts on powers of `u = λ² + 4π²ρ²`
//! in closed form.

use crate::error::{invalid, Result};
use crate::extremal::Side;
use crate::measures::{check_admissible, value_mu, MeasureSpec};
use crate::quad::{integrate, QuadOptions};
use crate::special::gamma;
use crate::Order;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub dimension: usize,
    pub points: Vec<Vec<f64>>,
    pub delta: f64,
}

impl PointConfig {
    pub fn new(dimension: usize, points: Vec<Vec<f64>>, delta: f64) -> Result<Self> {
        let c = PointConfig { dimension, points, delta };
        c.validate()?;
        Ok(c)
    }

    /// `count` points in `[0, side)^dimension`, pairwise at least `delta` apart, by seeded rejection.
    pub fn random_well_spaced(dimension: usize, count: usize, delta: f64, side: f64, seed: u64) -> Result<Self> {
        if !(side > 0.0 && side.is_finite()) {
            return invalid("sampling box side must be positive");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(count);
        let mut tries = 0usize;
        while pts.len() < count {
            tries += 1;
            if tries > 100_000 * count.max(1) {
                return invalid(format!("could not place {count} points {delta} apart in a box of side {side}"));
            }
            let p: Vec<f64> = (0..dimension).map(|_| rng.gen_range(0.0..side)).collect();
            if pts.iter().all(|q| dist(q, &p) >= delta) {
                pts.push(p);
            }
        }
        PointConfig::new(dimension, pts, delta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return invalid("dimension must be at least 1");
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return invalid("separation delta must be positive");
        }
        if self.points.is_empty() || self.points.len() > MAX_POINTS {
            return invalid(format!("need between 1 and {MAX_POINTS} points"));
        }
        for p in &self.points {
            if p.len() != self.dimension || p.iter().any(|v| !v.is_finite()) {
                return invalid(format!("every point needs {} finite coordinates", self.dimension));
            }
        }
        for j in 0..self.points.len() {
            for l in 0..j {
                let d = dist(&self.points[j], &self.points[l]);
                if d < self.delta * (1.0 - 1e-12) {
                    return invalid(format!("points {l} and {j} are {d} apart, closer than delta = {}", self.delta));
                }
            }
        }
        Ok(())
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormSpec {
    pub order: Order,
    pub r: u32,
    pub measure: MeasureSpec,
}

impl FormSpec {
    /// Checks `2ν + 2 − N = 2r` and `r ≤ 2`.
    pub fn check(&self, dimension: usize) -> Result<()> {
        if self.r > 2 {
            return invalid(format!("r = {} is unsupported (r <= 2)", self.r));
        }
        let lhs = 2.0 * self.order.nu() + 2.0 - dimension as f64;
        if (lhs - 2.0 * self.r as f64).abs() > 1e-12 {
            return invalid(format!("2nu + 2 - N = {lhs} must equal 2r = {}", 2 * self.r));
        }
        self.measure.validate()
    }
}

/// `C_N = 2^N π^{(N−1)/2} Γ((N+1)/2)`
pub fn poisson_constant(n: usize) -> f64 {
    let nf = n as f64;
    2f64.powf(nf) * PI.powf(0.5 * (nf - 1.0)) * gamma(0.5 * (nf + 1.0))
}

/// Fourier transform of `e^{−λ|x|}` on R^N at frequency y.
pub fn poisson_ft(n: usize, lambda: f64, y: &[f64]) -> f64 {
    let rho2: f64 = y.iter().map(|v| v * v).sum();
    poisson_radial(n, lambda, rho2.sqrt())
}

fn poisson_radial(n: usize, lambda: f64, rho: f64) -> f64 {
    poisson_constant(n) * lambda * (lambda * lambda + 4.0 * PI * PI * rho * rho).powf(-0.5 * (n as f64 + 1.0))
}

/// `Σ c · λ^{2j} · u^{−m}` as (c, j, m) triples.
#[derive(Debug, Clone)]
struct Profile(Vec<(f64, i32, f64)>);

impl Profile {
    /// `Δ` in N dimensions, using `Δu^{−m} = 8π²m(2(m+1)−N)u^{−m−1} − 16π²m(m+1)λ²u^{−m−2}`.
    fn laplacian(&self, n: usize) -> Profile {
        let nf = n as f64;
        let mut out = Vec::new();
        for &(c, j, m) in &self.0 {
            out.push((c * 8.0 * PI * PI * m * (2.0 * (m + 1.0) - nf), j, m + 1.0));
            out.push((-c * 16.0 * PI * PI * m * (m + 1.0), j + 1, m + 2.0));
        }
        Profile(out)
    }

    fn eval(&self, lambda: f64, rho: f64) -> f64 {
        let u = lambda * lambda + 4.0 * PI * PI * rho * rho;
        self.0.iter().map(|&(c, j, m)| c * lambda.powi(2 * j) * u.powf(-m)).sum()
    }
}

/// `(−Δ/4π²)^r` of the Poisson kernel divided by λ: multiply by λ to evaluate.
fn kernel_profile(n: usize, r: u32) -> Profile {
    let mut p = Profile(vec![(poisson_constant(n), 0, 0.5 * (n as f64 + 1.0))]);
    for _ in 0..r {
        p = p.laplacian(n);
        for t in p.0.iter_mut() {
            t.0 /= -4.0 * PI * PI;
        }
    }
    p
}

/// `(−Δ/4π²)^r F̂_λ(ρ)` for one λ.
pub fn kernel_single(n: usize, r: u32, lambda: f64, rho: f64) -> f64 {
    lambda * kernel_profile(n, r).eval(lambda, rho)
}

/// `C_α |y|^{−N+α+1}` for μ = λ^α dλ and r = 0.
pub fn power_closed_form(n: usize, alpha: f64, rho: f64) -> f64 {
    let nf = n as f64;
    let c = PI.powf(alpha + 1.0 - 0.5 * nf) * gamma(alpha + 1.0) * gamma(0.5 * (nf - alpha - 1.0)) / gamma(0.5 * (alpha + 1.0));
    c * rho.powf(-nf + alpha + 1.0)
}

/// `∫ (−Δ/4π²)^r F̂_λ(ρ) dμ(λ)` by quadrature in `ln λ` (atoms summed).
pub fn q_numeric(n: usize, r: u32, m: &MeasureSpec, rho: f64) -> Result<f64> {
    let prof = kernel_profile(n, r);
    let f = |l: f64| l * prof.eval(l, rho);
    let over_log = |c: f64, p: f64, a: f64, b: f64| -> Result<f64> {
        let (ua, ub) = (a.ln(), b.ln());
        let k = ((ub - ua).ceil() as usize).max(1);
        let mut s = 0.0;
        for i in 0..k {
            let lo = ua + (ub - ua) * i as f64 / k as f64;
            let hi = ua + (ub - ua) * (i + 1) as f64 / k as f64;
            s += integrate(|u| { let l = u.exp(); f(l) * c * l.powf(p + 1.0) }, lo, hi, QuadOptions::tol(1e-300, 1e-12))?.value;
        }
        Ok(s)
    };
    // the integrand is O(λ^{α+1}) at 0 and O(λ^{α−N−2r}) at ∞
    let (lo, hi) = (1e-30 / (1.0 + rho), 1e30);
    match m {
        MeasureSpec::Atoms { points } => Ok(points.iter().map(|&(l, w)| w * f(l)).sum()),
        MeasureSpec::Power { alpha, weight } => over_log(*weight, *alpha, lo, hi),
        MeasureSpec::Log => over_log(1.0, -1.0, lo, hi),
        MeasureSpec::Table { lambda, density, tail_exponent } => {
            let mut s = 0.0;
            for i in 0..lambda.len() - 1 {
                let h = lambda[i + 1] - lambda[i];
                s += 0.5 * h * (density[i] * f(lambda[i]) + density[i + 1] * f(lambda[i + 1]));
            }
            let (ll, dl) = (*lambda.last().unwrap(), *density.last().unwrap());
            Ok(s + over_log(dl * ll.powf(-tail_exponent), *tail_exponent, ll, hi)?)
        }
    }
}

/// `Q_{μ,r}(ρ)`, with the r = 0 power case in closed form.
pub fn q_value(n: usize, r: u32, m: &MeasureSpec, rho: f64) -> Result<f64> {
    if r == 0 {
        if let MeasureSpec::Power { alpha, weight } = *m {
            if alpha > -2.0 && alpha < n as f64 - 1.0 && alpha != -1.0 {
                return Ok(weight * power_closed_form(n, alpha, rho));
            }
        }
    }
    q_numeric(n, r, m, rho)
}

/// Off-diagonal matrix `Q_{jl} = Q_{μ,r}(y_j − y_l)`.
pub fn q_matrix(spec: &FormSpec, config: &PointConfig) -> Result<DMatrix<f64>> {
    config.validate()?;
    spec.check(config.dimension)?;
    let k = config.points.len();
    let mut q = DMatrix::zeros(k, k);
    for j in 0..k {
        for l in 0..j {
            let v = q_value(config.dimension, spec.r, &spec.measure, dist(&config.points[j], &config.points[l]))?;
            q[(j, l)] = v;
            q[(l, j)] = v;
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub min_quadform_ratio: f64,
    pub max_quadform_ratio: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub u_minus: f64,
    pub u_plus: f64,
    pub pass: bool,
}

/// `U^±(2πδ, μ)`, infinite when μ is not admissible for the side.
pub fn form_bound(spec: &FormSpec, dimension: usize, delta: f64, side: Side) -> Result<f64> {
    if !check_admissible(&spec.measure, spec.order, side) {
        return Ok(f64::INFINITY);
    }
    value_mu(&spec.measure, spec.order, dimension, 2.0 * PI * delta, side)
}

pub fn verify_bounds(spec: &FormSpec, config: &PointConfig, trials: usize, seed: u64) -> Result<BoundsReport> {
    let q = q_matrix(spec, config)?;
    let u_minus = form_bound(spec, config.dimension, config.delta, Side::Minus)?;
    let u_plus = form_bound(spec, config.dimension, config.delta, Side::Plus)?;
    let eig = SymmetricEigen::new(q.clone()).eigenvalues;
    let min_e = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let max_e = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let k = q.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..trials {
        let a: Vec<Complex64> = (0..k).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        if norm == 0.0 {
            continue;
        }
        let mut form = Complex64::new(0.0, 0.0);
        for j in 0..k {
            for l in 0..k {
                form += a[j] * a[l].conj() * q[(j, l)];
            }
        }
        let ratio = form.re / norm;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    if trials == 0 {
        lo = 0.0;
        hi = 0.0;
    }
    let tol = 1e-8;
    let pass = min_e >= -u_minus - tol && max_e <= u_plus + tol && lo >= -u_minus - tol && hi <= u_plus + tol;
    Ok(BoundsReport { min_quadform_ratio: lo, max_quadform_ratio: hi, min_eigenvalue: min_e, max_eigenvalue: max_e, u_minus, u_plus, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn o(nu: f64) -> Order {
        Order::new(nu).unwrap()
    }

    #[test]
    fn poisson_values() {
        assert_relative_eq!(poisson_ft(1, 3.0, &[0.0]), 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(poisson_ft(1, 1.0, &[0.5 / PI]), 1.0, max_relative = 1e-15);
        assert!(poisson_ft(3, 1.0, &[1e4, 0.0, 0.0]) < 1e-17);
        assert!(poisson_ft(3, 1.0, &[1e5, 0.0, 0.0]) < 1e-3 * poisson_ft(3, 1.0, &[1e4, 0.0, 0.0]));
    }

    #[test]
    fn poisson_is_fourier_transform() {
        // ∫ e^{−|x|} e^{−2πixy} dx = 2 ∫_0^∞ e^{−x} cos(2πxy) dx
        for y in [0.0, 0.3, 1.1] {
            let r = crate::quad::integrate_breaks(
                |x: f64| 2.0 * (-x).exp() * (2.0 * PI * x * y).cos(),
                &(0..=60).map(|k| k as f64).collect::<Vec<_>>(),
                QuadOptions::tol(1e-15, 1e-13),
            )
            .unwrap();
            assert_relative_eq!(r.value, poisson_ft(1, 1.0, &[y]), max_relative = 1e-10);
        }
    }

    #[test]
    fn laplacian_matches_differences() {
        let h = 1e-4;
        for (n, lam) in [(1usize, 1.0), (3, 0.7)] {
            let y = vec![0.31; n];
            let mut lap = 0.0;
            for i in 0..n {
                let mut p = y.clone();
                let mut m = y.clone();
                p[i] += h;
                m[i] -= h;
                lap += (poisson_ft(n, lam, &p) - 2.0 * poisson_ft(n, lam, &y) + poisson_ft(n, lam, &m)) / (h * h);
            }
            let rho = dist(&y, &vec![0.0; n]);
            assert_relative_eq!(kernel_single(n, 1, lam, rho), -lap / (4.0 * PI * PI), max_relative = 1e-4);
        }
    }

    #[test]
    fn r_two_is_iterated() {
        // (−Δ)² by nested differences of the r = 1 profile, N = 2
        let h = 1e-3;
        let f = |x: f64, y: f64| kernel_single(2, 1, 0.9, (x * x + y * y).sqrt());
        let (x, y) = (0.4, 0.2);
        let lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4.0 * f(x, y)) / (h * h);
        let rho = (x * x + y * y).sqrt();
        assert_relative_eq!(kernel_single(2, 2, 0.9, rho), -lap / (4.0 * PI * PI), max_relative = 1e-4);
    }

    #[test]
    fn power_closed_form_matches_quadrature() {
        for (n, alpha) in [(1usize, -0.5), (2, 0.5), (3, 1.2), (2, -1.5)] {
            for rho in [0.3, 1.0, 2.5] {
                let a = power_closed_form(n, alpha, rho);
                let b = q_numeric(n, 0, &MeasureSpec::power(alpha), rho).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn atom_matrix_is_poisson() {
        let spec = FormSpec { order: o(-0.5), r: 0, measure: MeasureSpec::atom(1.3, 1.0) };
        let cfg = PointConfig::new(1, vec![vec![0.0], vec![1.0], vec![2.5]], 1.0).unwrap();
        let q = q_matrix(&spec, &cfg).unwrap();
        assert_eq!(q[(0, 0)], 0.0);
        assert_relative_eq!(q[(0, 2)], poisson_ft(1, 1.3, &[2.5]), max_relative = 1e-15);
        assert_eq!(q[(1, 2)], q[(2, 1)]);
    }

    #[test]
    fn radial_and_permutation_invariant() {
        let spec = FormSpec { order: o(0.0), r: 0, measure: MeasureSpec::power(0.5) };
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.5], vec![2.0, 2.0]];
        let (c, s) = (0.6f64, 0.8f64);
        let rot: Vec<Vec<f64>> = pts.iter().map(|p| vec![c * p[0] - s * p[1], s * p[0] + c * p[1]]).collect();
        let q1 = q_matrix(&spec, &PointConfig::new(2, pts.clone(), 1.0).unwrap()).unwrap();
        let q2 = q_matrix(&spec, &PointConfig::new(2, rot, 1.0).unwrap()).unwrap();
        assert!((q1.clone() - q2).abs().max() < 1e-14);
        let mut perm = pts.clone();
        perm.swap(0, 3);
        let q3 = q_matrix(&spec, &PointConfig::new(2, perm, 1.0).unwrap()).unwrap();
        assert!((q1[(0, 1)] - q3[(3, 1)]).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(PointConfig::new(1, vec![vec![0.0], vec![0.5]], 1.0).is_err());
        let spec = FormSpec { order: o(0.0), r: 0, measure: MeasureSpec::power(0.5) };
        let cfg = PointConfig::new(1, vec![vec![0.0], vec![1.0]], 1.0).unwrap();
        assert!(q_matrix(&spec, &cfg).is_err());
    }

    #[test]
    fn single_point_trivial() {
        let spec = FormSpec { order: o(-0.5), r: 0, measure: MeasureSpec::atom(1.0, 1.0) };
        let rep = verify_bounds(&spec, &PointConfig::new(1, vec![vec![0.0]], 1.0).unwrap(), 5, 1).unwrap();
        assert!(rep.pass && rep.max_eigenvalue == 0.0);
    }

    #[test]
    fn bounds_hold_line() {
        let spec = FormSpec { order: o(-0.5), r: 0, measure: MeasureSpec::atom(1.0, 1.0) };
        let cfg = PointConfig::new(1, (0..5).map(|k| vec![k as f64 * 1.0]).collect(), 1.0).unwrap();
        let rep = verify_bounds(&spec, &cfg, 200, 7).unwrap();
        assert!(rep.pass, "{rep:?}");
        // the eigenvalues from an independent dense solve of the same matrix
        let q = q_matrix(&spec, &cfg).unwrap();
        let e = q.symmetric_eigenvalues();
        assert!(e.iter().all(|&v| v >= rep.min_eigenvalue - 1e-14 && v <= rep.max_eigenvalue + 1e-14));
    }

    #[test]
    fn bounds_hold_plane() {
        let spec = FormSpec { order: o(0.0), r: 0, measure: MeasureSpec::power(0.5) };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut pts: Vec<Vec<f64>> = Vec::new();
        while pts.len() < 8 {
            let p = vec![rng.gen_range(0.0..6.0), rng.gen_range(0.0..6.0)];
            if pts.iter().all(|q| dist(q, &p) >= 1.0) {
                pts.push(p);
            }
        }
        let rep = verify_bounds(&spec, &PointConfig::new(2, pts, 1.0).unwrap(), 200, 7).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.u_plus.is_infinite());
    }

    #[test]
    fn spreading_points_stays_within() {
        let spec = FormSpec { order: o(-0.5), r: 0, measure: MeasureSpec::atom(1.0, 1.0) };
        for d in [1.0, 2.0, 4.0] {
            let cfg = PointConfig::new(1, (0..6).map(|k| vec![k as f64 * d]).collect(), d).unwrap();
            assert!(verify_bounds(&spec, &cfg, 50, 1).unwrap().pass);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]
            #[test]
            fn rigid_motions_preserve_spectrum(seed in 0u64..1000, angle in 0.0f64..6.3, dx in -5.0f64..5.0, dy in -5.0f64..5.0) {
                let spec = FormSpec { order: o(0.0), r: 0, measure: MeasureSpec::atom(0.8, 1.0) };
                let cfg = PointConfig::random_well_spaced(2, 6, 1.0, 5.0, seed).unwrap();
                let (s, c) = angle.sin_cos();
                let moved: Vec<Vec<f64>> = cfg.points.iter().map(|p| vec![c * p[0] - s * p[1] + dx, s * p[0] + c * p[1] + dy]).collect();
                let a = q_matrix(&spec, &cfg).unwrap().symmetric_eigenvalues();
                let b = q_matrix(&spec, &PointConfig::new(2, moved, 1.0).unwrap()).unwrap().symmetric_eigenvalues();
                let mut a: Vec<f64> = a.iter().copied().collect();
                let mut b: Vec<f64> = b.iter().copied().collect();
                a.sort_by(f64::total_cmp);
                b.sort_by(f64::total_cmp);
                for (x, y) in a.iter().zip(&b) {
                    prop_assert!((x - y).abs() < 1e-12);
                }
            }
        }
    }
}
