//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 2000 }
    }
}

impl QuadOptions {
    pub fn tol(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOptions { abs_tol, rel_tol, ..Default::default() }
    }
}

/// One 15-point Kronrod panel on [a, b]: (value, error estimate).
pub fn qk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        rk += WGK[j] * s;
        if j % 2 == 1 {
            rg += WG[j / 2] * s;
        }
    }
    let value = rk * h;
    let err = ((rk - rg) * h).abs();
    (value, err)
}

/// The 15 Kronrod nodes and weights on [a, b], for fixed (non-adaptive) rules.
pub fn kronrod_rule(a: f64, b: f64) -> Vec<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = Vec::with_capacity(15);
    for j in 0..7 {
        out.push((c - h * XGK[j], h * WGK[j]));
        out.push((c + h * XGK[j], h * WGK[j]));
    }
    out.push((c, h * WGK[7]));
    out
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Integrate `f` over [a, b] to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    adaptive(f, a, b, opts, true)
}

/// Like [`integrate`], but a noisy integrand that exhausts the panel budget
/// returns the best estimate with its error instead of failing.
pub fn integrate_best<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    adaptive(f, a, b, opts, false)
}

fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions, strict: bool) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, evals: 0 });
    }
    let (v, e) = qk15(&mut f, a, b);
    let mut panels = vec![Panel { a, b, value: v, error: e }];
    let mut evals = 15;
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if !total.is_finite() {
            return Err(Error::Convergence(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            return Ok(QuadResult { value: total, error: err, evals });
        }
        if panels.len() >= opts.max_intervals {
            if !strict {
                return Ok(QuadResult { value: total, error: err, evals });
            }
            return Err(Error::Convergence(format!(
                "quadrature on [{a}, {b}] stalled at error {err:.3e} (value {total:.6e})"
            )));
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty");
        let p = panels.swap_remove(idx);
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // interval collapsed to rounding level; accept what we have
            panels.push(p);
            let total: f64 = panels.iter().map(|p| p.value).sum();
            return Ok(QuadResult { value: total, error: err, evals });
        }
        let (v1, e1) = qk15(&mut f, p.a, m);
        let (v2, e2) = qk15(&mut f, m, p.b);
        evals += 30;
        panels.push(Panel { a: p.a, b: m, value: v1, error: e1 });
        panels.push(Panel { a: m, b: p.b, value: v2, error: e2 });
    }
}

/// Integrate over consecutive breakpoints, summing the panels.
pub fn integrate_breaks<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], opts: QuadOptions) -> Result<QuadResult> {
    let mut out = QuadResult { value: 0.0, error: 0.0, evals: 0 };
    for w in breaks.windows(2) {
        let r = integrate(&mut f, w[0], w[1], opts)?;
        out.value += r.value;
        out.error += r.error;
        out.evals += r.evals;
    }
    Ok(out)
}

/// Vector-valued version: every component shares the panels, the error is the max-norm.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<Vec<f64>> {
    let mut buf = vec![0.0; dim];
    let panel = |a: f64, b: f64, f: &mut F, buf: &mut Vec<f64>| {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut rk = vec![0.0; dim];
        let mut rg = vec![0.0; dim];
        f(c, buf);
        for i in 0..dim {
            rk[i] += WGK[7] * buf[i];
            rg[i] += WG[3] * buf[i];
        }
        for j in 0..7 {
            let dx = h * XGK[j];
            for x in [c - dx, c + dx] {
                f(x, buf);
                for i in 0..dim {
                    rk[i] += WGK[j] * buf[i];
                    if j % 2 == 1 {
                        rg[i] += WG[j / 2] * buf[i];
                    }
                }
            }
        }
        let err = rk.iter().zip(&rg).map(|(k, g)| ((k - g) * h).abs()).fold(0.0, f64::max);
        (rk.into_iter().map(|v| v * h).collect::<Vec<_>>(), err)
    };
    let (v, e) = panel(a, b, &mut f, &mut buf);
    let mut panels: Vec<(f64, f64, Vec<f64>, f64)> = vec![(a, b, v, e)];
    loop {
        let mut total = vec![0.0; dim];
        let mut err = 0.0;
        for p in &panels {
            total.iter_mut().zip(&p.2).for_each(|(t, v)| *t += v);
            err += p.3;
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !scale.is_finite() {
            return Err(Error::Convergence("non-finite vector integrand".into()));
        }
        if err <= opts.abs_tol.max(opts.rel_tol * scale) || panels.len() >= opts.max_intervals {
            if panels.len() >= opts.max_intervals && err > 1e3 * opts.abs_tol.max(opts.rel_tol * scale) {
                return Err(Error::Convergence(format!("vector quadrature stalled at {err:.3e}")));
            }
            return Ok(total);
        }
        let idx = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("non-empty");
        let p = panels.swap_remove(idx);
        let m = 0.5 * (p.0 + p.1);
        let (v1, e1) = panel(p.0, m, &mut f, &mut buf);
        let (v2, e2) = panel(m, p.1, &mut f, &mut buf);
        panels.push((p.0, m, v1, e1));
        panels.push((m, p.1, v2, e2));
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, QuadOptions::default()).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn sqrt_singularity() {
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, QuadOptions::tol(1e-12, 1e-12)).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(|x: f64| (20.0 * x).cos(), 0.0, std::f64::consts::PI, QuadOptions::default()).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn vector_matches_scalar() {
        let v = integrate_vec(
            |x, out| {
                out[0] = x.exp();
                out[1] = x.sin();
            },
            2,
            0.0,
            1.0,
            QuadOptions::default(),
        )
        .unwrap();
        assert!((v[0] - (1f64.exp() - 1.0)).abs() < 1e-13);
        assert!((v[1] - (1.0 - 1f64.cos())).abs() < 1e-13);
    }

    #[test]
    fn compensated_sum() {
        let mut s = Neumaier::default();
        s.add(1e16);
        s.add(1.0);
        s.add(-1e16);
        assert_eq!(s.value(), 1.0);
    }
}
