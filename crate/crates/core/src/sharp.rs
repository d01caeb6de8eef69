//! Reference values for the sharp constant
//! `M(n, s, p, q) = sup ||T^(s)||_q / ||T||_p` over trigonometric polynomials
//! of degree `n`: the closed form at `(2, inf)`, a multi-start ascent that
//! returns certified lower bounds for general `(p, q)`, and the scaled scan
//! `n^{-s-1/p+1/q} M(n, s, p, q)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::concave::{build_poly, v_basis};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::kernels::jackson;
use crate::quadrature::golden_section_max;
use crate::trigpoly::{grid_node, weyl_multiplier, TrigPoly};
use crate::witnesses::{concave_witness_index, jackson_power};

/// `(sum_{|k| <= n} |k|^{2s})^{1/2} / sqrt(2 pi)`, with `0^0 = 1`.
pub fn constant_2_inf_closed_form(n: usize, s: u32) -> f64 {
    let mut sum = if s == 0 { 1.0 } else { 0.0 };
    for k in 1..=n {
        sum += 2.0 * (k as f64).powi(2 * s as i32);
    }
    (sum / (2.0 * PI)).sqrt()
}

/// Random search for the `(2, inf)` constant: a (1+1) evolution strategy with
/// the one-fifth success rule over complex coefficient vectors. By translation
/// invariance the supremum of `|T^(s)|` may be read at `x = 0`, and `||T||_2`
/// is taken from Parseval. Returns the best ratio after `evaluations` trials.
pub fn random_search_2_inf(n: usize, s: u32, evaluations: usize, seed: u64) -> f64 {
    let dim = 2 * n + 1;
    let mult: Vec<Complex64> = (-(n as i64)..=n as i64).map(|k| weyl_multiplier(k, s as f64)).collect();
    let ratio = |c: &[Complex64]| {
        let num: Complex64 = c.iter().zip(&mult).map(|(a, m)| a * m).sum();
        let l2: f64 = c.iter().map(|a| a.norm_sqr()).sum::<f64>() * 2.0 * PI;
        if l2 == 0.0 {
            0.0
        } else {
            num.norm() / l2.sqrt()
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut best: Vec<Complex64> = (0..dim).map(|_| draw(&mut rng)).collect();
    let mut best_val = ratio(&best);
    let mut sigma = 0.3;
    let mut trial = best.clone();
    for _ in 1..evaluations {
        for (t, b) in trial.iter_mut().zip(&best) {
            *t = b + draw(&mut rng) * sigma;
        }
        let v = ratio(&trial);
        if v > best_val {
            best_val = v;
            std::mem::swap(&mut best, &mut trial);
            sigma *= 1.5;
        } else {
            sigma *= 0.9;
        }
        if sigma < 1e-12 {
            sigma = 0.3;
        }
    }
    best_val
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpOptions {
    /// total number of starts, witnesses included
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// every start is translated by this amount
    pub shift: f64,
    /// worker threads; `None` uses the global pool
    pub threads: Option<usize>,
}

impl Default for SharpOptions {
    fn default() -> Self {
        SharpOptions { starts: 32, seed: 0x5eed, max_iter: 400, shift: 0.0, threads: None }
    }
}

#[derive(Debug, Clone)]
pub struct ConstantEstimate {
    pub value: f64,
    pub poly: TrigPoly,
    /// index of the start that produced the maximum
    pub start: usize,
    pub seed: u64,
}

struct Objective {
    n: usize,
    p: Exponent,
    q: Exponent,
    mult: Vec<Complex64>,
    grid: usize,
}

impl Objective {
    fn new(n: usize, s: u32, p: Exponent, q: Exponent) -> Self {
        let mult = (-(n as i64)..=n as i64).map(|k| weyl_multiplier(k, s as f64)).collect();
        let pmax = p.value().max(if q.is_infinite() { 1.0 } else { q.value() }).max(1.0);
        let grid = (16.0 * (n + 1) as f64 * pmax).ceil().max(256.0) as usize;
        Objective { n, p, q, mult, grid }
    }

    fn derivative(&self, c: &[Complex64]) -> Vec<Complex64> {
        c.iter().zip(&self.mult).map(|(a, m)| a * m).collect()
    }

    /// `(||T||, gradient of ||T|| w.r.t. (Re c_k, Im c_k))`, the gradient
    /// packed as `d/dRe + i d/dIm`.
    fn norm_grad(&self, c: &[Complex64], p: Exponent) -> Result<(f64, Vec<Complex64>)> {
        let n = self.n as i64;
        let t = TrigPoly::new(c.to_vec())?;
        match p {
            Exponent::Infinity => {
                let samples = t.evaluate_grid(self.grid)?;
                let (j, _) = samples
                    .values
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                    .unwrap();
                let h = 2.0 * PI / self.grid as f64;
                let x0 = grid_node(j, self.grid);
                let (x, v) = golden_section_max(|x| t.eval(x).norm(), x0 - h, x0 + h, 1e-12);
                if v == 0.0 {
                    return Ok((0.0, vec![Complex64::new(0.0, 0.0); c.len()]));
                }
                let d = t.eval(x) / v;
                let g = (-n..=n).map(|k| d * Complex64::from_polar(1.0, -(k as f64) * x)).collect();
                Ok((v, g))
            }
            Exponent::Finite(pv) => {
                let samples = t.evaluate_grid(self.grid)?;
                let peak = samples.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
                if peak == 0.0 {
                    return Ok((0.0, vec![Complex64::new(0.0, 0.0); c.len()]));
                }
                let h = 2.0 * PI / self.grid as f64;
                let mut w = samples.clone();
                let mut sum = 0.0;
                for (wv, v) in w.values.iter_mut().zip(&samples.values) {
                    let a = v.norm() / peak;
                    sum += a.powf(pv);
                    // formal gradient, zero at (near-)zeros
                    *wv = if v.norm() > 1e-14 * peak { v / peak * a.powf(pv - 2.0) } else { Complex64::new(0.0, 0.0) };
                }
                let norm = peak * (h * sum).powf(1.0 / pv);
                let fourier = TrigPoly::from_samples(&w, self.n)?;
                // d||T|| = ||T||^{1-p} int |T|^{p-2} T conj(dT)
                let scale = (norm / peak).powf(1.0 - pv) * 2.0 * PI;
                let g = (-n..=n).map(|k| fourier.coeff(k) * scale).collect();
                Ok((norm, g))
            }
        }
    }

    /// `(log ratio, gradient of log ratio)`.
    fn log_ratio_grad(&self, c: &[Complex64]) -> Result<(f64, Vec<Complex64>)> {
        let d = self.derivative(c);
        let (num, gnum) = self.norm_grad(&d, self.q)?;
        let (den, gden) = self.norm_grad(c, self.p)?;
        if num == 0.0 || den == 0.0 {
            return Ok((f64::NEG_INFINITY, vec![Complex64::new(0.0, 0.0); c.len()]));
        }
        // chain rule through c_k -> m_k c_k
        let g = gnum
            .iter()
            .zip(&self.mult)
            .zip(&gden)
            .map(|((gn, m), gd)| gn * m.conj() / num - gd / den)
            .collect();
        Ok(((num / den).ln(), g))
    }

    #[cfg(test)]
    fn log_ratio(&self, c: &[Complex64]) -> Result<f64> {
        Ok(self.log_ratio_grad(c)?.0)
    }
}

fn normalise(c: &mut [Complex64]) {
    let norm = c.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for a in c.iter_mut() {
            *a /= norm;
        }
    }
}

/// Adaptive-step ascent on `log ||T^(s)||_q / ||T||_p` over the unit sphere.
/// Only improving steps are accepted.
fn ascend(obj: &Objective, mut c: Vec<Complex64>, max_iter: usize) -> Result<Vec<Complex64>> {
    normalise(&mut c);
    let (mut val, mut grad) = obj.log_ratio_grad(&c)?;
    let mut step = 0.1;
    for _ in 0..max_iter {
        let gnorm = grad.iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
        if gnorm == 0.0 || !gnorm.is_finite() || step < 1e-12 {
            break;
        }
        let mut trial: Vec<Complex64> = c.iter().zip(&grad).map(|(a, g)| a + g * (step / gnorm)).collect();
        normalise(&mut trial);
        let (tv, tg) = obj.log_ratio_grad(&trial)?;
        if tv > val {
            c = trial;
            val = tv;
            grad = tg;
            step = (step * 1.5).min(1.0);
        } else {
            step *= 0.4;
        }
    }
    Ok(c)
}

fn embed(t: &TrigPoly, n: usize) -> Vec<Complex64> {
    (-(n as i64)..=n as i64).map(|k| t.coeff(k)).collect()
}

/// Witness polynomials usable as starts at `(n, s, p)`.
fn witness_starts(n: usize, s: u32, p: Exponent) -> Vec<TrigPoly> {
    let mut out = vec![TrigPoly::exponential(n as i64)];
    if let Exponent::Finite(pv) = p {
        let r = jackson_power(pv);
        if s >= 2 && n > 4 * r as usize * s as usize {
            let big_n = n / (r as usize * s as usize);
            if let Ok(j) = jackson(r, big_n) {
                out.push(j.modulate((n - r as usize * big_n) as i64));
            }
        }
    }
    if n >= 1 && s >= 1 {
        let l = concave_witness_index(n, s + s % 2);
        if let Ok(v) = v_basis(n, l.min(n)) {
            out.push(build_poly(&v));
        }
    }
    out
}

/// Multi-start lower bound on `M(n, s, p, q)`; see [`estimate_constant_with`].
pub fn estimate_constant(n: usize, s: u32, p: Exponent, q: Exponent, opts: &SharpOptions) -> Result<ConstantEstimate> {
    estimate_constant_with(n, s, p, q, opts, &[])
}

/// Starts are the witnesses, then `extra`, then seeded random polynomials up
/// to `opts.starts`. The returned value is the ratio of the best polynomial
/// evaluated with the default quasinorm grids, hence a lower bound on the
/// supremum up to quadrature error.
pub fn estimate_constant_with(
    n: usize,
    s: u32,
    p: Exponent,
    q: Exponent,
    opts: &SharpOptions,
    extra: &[TrigPoly],
) -> Result<ConstantEstimate> {
    match p {
        Exponent::Finite(v) if v > 0.0 => {}
        _ => return Err(Error::Domain(format!("p must be finite and positive, got {p}"))),
    }
    if !(p < q) {
        return Err(Error::Domain(format!("need p < q, got p={p}, q={q}")));
    }
    if n == 0 && s > 0 {
        return Err(Error::Domain("degree 0 has no nonzero derivatives".into()));
    }
    let mut starts: Vec<Vec<Complex64>> = witness_starts(n, s, p).iter().map(|t| embed(t, n)).collect();
    starts.extend(extra.iter().filter(|t| t.degree() <= n).map(|t| embed(t, n)));
    let total = opts.starts.max(starts.len());
    for i in starts.len()..total {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        starts.push((0..2 * n + 1).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
    }
    if opts.shift != 0.0 {
        for c in starts.iter_mut() {
            *c = embed(&TrigPoly::new(c.clone())?.translate(opts.shift), n);
        }
    }
    let obj = Objective::new(n, s, p, q);
    let run = || -> Result<Vec<(usize, f64, TrigPoly)>> {
        starts
            .par_iter()
            .enumerate()
            .map(|(i, c)| {
                let best = ascend(&obj, c.clone(), opts.max_iter)?;
                let t = TrigPoly::new(best)?;
                let value = ratio(&t, s, p, q)?;
                Ok((i, value, t))
            })
            .collect()
    };
    let results = match opts.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let (start, value, poly) = results
        .into_iter()
        .filter(|r| r.1.is_finite())
        .fold(None::<(usize, f64, TrigPoly)>, |acc, r| match acc {
            Some(a) if a.1 >= r.1 => Some(a),
            _ => Some(r),
        })
        .ok_or_else(|| Error::Accuracy("no start produced a finite ratio".into()))?;
    Ok(ConstantEstimate { value, poly, start, seed: opts.seed })
}

/// `||T^(s)||_q / ||T||_p` on the default quasinorm grids.
pub fn ratio(t: &TrigPoly, s: u32, p: Exponent, q: Exponent) -> Result<f64> {
    let num = t.derivative(s as f64)?.quasinorm(q)?.value;
    let den = t.quasinorm(p)?.value;
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub n: usize,
    pub estimate: f64,
    /// `n^{-s-1/p+1/q} * estimate`
    pub scaled: f64,
}

/// `n^{-s-1/p+1/q} M(n, s, p, q)` along an increasing `n_list`. Each degree
/// is warm-started from the previous maximiser.
pub fn entire_limit_scan(s: u32, p: Exponent, q: Exponent, n_list: &[usize], opts: &SharpOptions) -> Result<Vec<ScanPoint>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("n_list must be strictly increasing".into()));
    }
    let mut out = Vec::with_capacity(n_list.len());
    let mut prev: Option<TrigPoly> = None;
    for &n in n_list {
        let extra: Vec<TrigPoly> = prev.iter().cloned().collect();
        let est = estimate_constant_with(n, s, p, q, opts, &extra)?;
        let scale = (n as f64).powf(-(s as f64) - p.recip() + q.recip());
        out.push(ScanPoint { n, estimate: est.value, scaled: est.value * scale });
        prev = Some(est.poly);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_small_cases() {
        assert!((constant_2_inf_closed_form(1, 0) - (3.0 / (2.0 * PI)).sqrt()).abs() < 1e-15);
        assert!((constant_2_inf_closed_form(1, 1) - (1.0 / PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn random_search_approaches_closed_form() {
        let v = random_search_2_inf(2, 1, 200_000, 7);
        let c = constant_2_inf_closed_form(2, 1);
        assert!(v <= c * (1.0 + 1e-12));
        assert!(v > c * 0.99, "{v} vs {c}");
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let n = 3;
        for (p, q) in [(Exponent::Finite(1.0), Exponent::Finite(3.0)), (Exponent::Finite(0.7), Exponent::Finite(2.0))] {
            let obj = Objective::new(n, 2, p, q);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let c: Vec<Complex64> =
                (0..2 * n + 1).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let (_, g) = obj.log_ratio_grad(&c).unwrap();
            let eps = 1e-6;
            for k in 0..c.len() {
                for (dir, comp) in [(Complex64::new(eps, 0.0), g[k].re), (Complex64::new(0.0, eps), g[k].im)] {
                    let mut a = c.clone();
                    let mut b = c.clone();
                    a[k] += dir;
                    b[k] -= dir;
                    let fd = (obj.log_ratio(&a).unwrap() - obj.log_ratio(&b).unwrap()) / (2.0 * eps);
                    assert!((fd - comp).abs() < 1e-4 * (1.0 + fd.abs()), "k={k} fd={fd} g={comp}");
                }
            }
        }
    }

    #[test]
    fn estimate_matches_closed_form_at_two_inf() {
        let opts = SharpOptions { starts: 8, ..Default::default() };
        let est = estimate_constant(4, 2, Exponent::Finite(2.0), Exponent::Infinity, &opts).unwrap();
        let c = constant_2_inf_closed_form(4, 2);
        assert!((est.value / c - 1.0).abs() < 1e-3, "{} vs {c}", est.value);
    }

    #[test]
    fn rejects_p_not_below_q() {
        let opts = SharpOptions::default();
        assert!(estimate_constant(3, 1, Exponent::Finite(2.0), Exponent::Finite(1.0), &opts).is_err());
    }
}
