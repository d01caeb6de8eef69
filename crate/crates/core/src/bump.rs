//! The plateau bump `phi`, its Fourier transform, and the entire functions
//! `f_s = hat(phi_s)` with `phi_s(x) = s phi(s x - s + 1)`.
//!
//! With `x = 1 - (1 - u)/s` one has `|f_s(xi)| = |hat(phi)(xi/s)|` and
//! `|f_s^{(s)}(xi)| = |G_s(xi/s)|`, where
//! `G_s(eta) = int phi(u) (1 - (1-u)/s)^s e^{-i u eta} du`. All norms are
//! computed for `hat(phi)` and `G_s` and rescaled.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::quadrature::{bisect, golden_section_max, GaussLegendre};

fn psi(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smooth_step(t: f64) -> f64 {
    let a = psi(t);
    let b = psi(1.0 - t);
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

/// `phi(x) = S(2(1 - |x|))`: supported in `[-1, 1]`, equal to 1 on `[-1/2, 1/2]`.
pub fn phi(x: f64) -> f64 {
    smooth_step(2.0 * (1.0 - x.abs()))
}

/// Options for the real-line quadratures.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Gauss-Legendre panels per unit length on the `u` side.
    pub u_panels_per_unit: f64,
    /// Width of the Gauss-Legendre panels on the frequency side.
    pub eta_panel: f64,
    /// First truncation point of the frequency integrals.
    pub initial_cutoff: f64,
    /// Give up beyond this truncation point.
    pub max_cutoff: f64,
    /// Relative size of the last doubled tail piece accepted as converged.
    pub tail_tol: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { u_panels_per_unit: 0.5, eta_panel: 0.5, initial_cutoff: 64.0, max_cutoff: 16384.0, tail_tol: 1e-8 }
    }
}

/// A weighted transform `eta -> int_{-1}^{1} phi(u) w(u) e^{-i u eta} du`
/// discretised once by composite Gauss-Legendre.
#[derive(Debug, Clone)]
pub struct BumpTransform {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// even weight: the transform is real
    real: bool,
}

impl BumpTransform {
    fn build(weight: impl Fn(f64) -> f64, real: bool, cutoff: f64, opts: &QuadOptions) -> Self {
        let gl = GaussLegendre::new(16);
        // enough nodes to resolve e^{-iu eta} up to the cutoff
        let panels = ((2.0 * opts.u_panels_per_unit * cutoff.max(16.0)) / 4.0).ceil().max(64.0) as usize;
        let (lo, hi) = if real { (0.0, 1.0) } else { (-1.0, 1.0) };
        let (xs, ws) = gl.composite_points(lo, hi, panels);
        let mut nodes = Vec::with_capacity(xs.len());
        let mut weights = Vec::with_capacity(xs.len());
        for (x, w) in xs.into_iter().zip(ws) {
            let v = phi(x) * weight(x);
            if v != 0.0 {
                nodes.push(x);
                weights.push(if real { 2.0 * w * v } else { w * v });
            }
        }
        BumpTransform { nodes, weights, real }
    }

    /// `hat(phi)`.
    pub fn phi_hat(cutoff: f64, opts: &QuadOptions) -> Self {
        Self::build(|_| 1.0, true, cutoff, opts)
    }

    /// `G_s`.
    pub fn derivative_profile(s: u32, cutoff: f64, opts: &QuadOptions) -> Self {
        let sf = s as f64;
        Self::build(move |u| (1.0 - (1.0 - u) / sf).powi(s as i32), false, cutoff, opts)
    }

    pub fn eval(&self, eta: f64) -> Complex64 {
        if self.real {
            let v: f64 = self.nodes.iter().zip(&self.weights).map(|(&u, &w)| w * (u * eta).cos()).sum();
            Complex64::new(v, 0.0)
        } else {
            self.nodes.iter().zip(&self.weights).map(|(&u, &w)| Complex64::from_polar(w, -u * eta)).sum()
        }
    }

    /// `int phi(u) w(u) du`, the value at `eta = 0`.
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `(int_{-cutoff}^{cutoff} |F|^p)` for even `|F|`, split at sign changes
    /// of real transforms so the modulus is integrated without kinks.
    fn power_integral(&self, p: f64, from: f64, to: f64, opts: &QuadOptions) -> (f64, usize) {
        let gl = GaussLegendre::new(16);
        let mut breaks = vec![from];
        if self.real {
            let step = opts.eta_panel / 4.0;
            let count = ((to - from) / step).ceil() as usize;
            let f = |x: f64| self.eval(x).re;
            let mut prev = f(from);
            for i in 1..=count {
                let x = (from + step * i as f64).min(to);
                let v = f(x);
                if v != 0.0 && prev != 0.0 && (v > 0.0) != (prev > 0.0) {
                    breaks.push(bisect(f, x - step, x, 1e-13));
                }
                prev = v;
            }
        }
        breaks.push(to);
        let mut total = 0.0;
        let mut nodes = 0;
        for w in breaks.windows(2) {
            let len = w[1] - w[0];
            if len <= 0.0 {
                continue;
            }
            let panels = (len / opts.eta_panel).ceil().max(1.0) as usize;
            total += gl.integrate_composite(w[0], w[1], panels, |x| self.eval(x).norm().powf(p));
            nodes += panels * 16;
        }
        // even modulus: both half-lines
        (2.0 * total, 2 * nodes)
    }
}

/// Norm over the real line with its truncation point and node count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineNorm {
    pub value: f64,
    pub cutoff: f64,
    pub nodes: usize,
}

/// `||F||_{L_p(R)}` for `F = hat(phi)` or `G_s`, with the cutoff doubled until
/// the last tail piece falls below `tail_tol` of the accumulated integral.
pub fn line_norm(make: impl Fn(f64) -> BumpTransform, p: Exponent, opts: &QuadOptions) -> Result<LineNorm> {
    match p {
        Exponent::Infinity => {
            // phi w >= 0, so |F| peaks at eta = 0; confirmed by a local search
            let t = make(opts.initial_cutoff);
            let (_, v) = golden_section_max(|x| t.eval(x).norm(), -1.0, 1.0, 1e-12);
            Ok(LineNorm { value: v.max(t.mass()), cutoff: 0.0, nodes: 0 })
        }
        Exponent::Finite(p) => {
            let mut cutoff = opts.initial_cutoff;
            let t = make(cutoff);
            let (mut acc, mut nodes) = t.power_integral(p, 0.0, cutoff, opts);
            loop {
                let next = 2.0 * cutoff;
                if next > opts.max_cutoff {
                    return Err(Error::Accuracy(format!(
                        "frequency tail of the bump transform not below {} of the norm by cutoff {}",
                        opts.tail_tol, opts.max_cutoff
                    )));
                }
                let t = make(next);
                let (tail, extra) = t.power_integral(p, cutoff, next, opts);
                acc += tail;
                nodes += extra;
                cutoff = next;
                if tail <= opts.tail_tol * acc {
                    break;
                }
            }
            Ok(LineNorm { value: acc.powf(1.0 / p), cutoff, nodes })
        }
    }
}

fn cache_key(p: Exponent) -> u64 {
    p.value().to_bits()
}

/// `||hat(phi)||_p` with default options, cached per `p`.
pub fn phi_hat_norm(p: Exponent) -> Result<LineNorm> {
    static CACHE: OnceLock<std::sync::Mutex<Vec<(u64, LineNorm)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().iter().find(|(k, _)| *k == cache_key(p)) {
        return Ok(hit.1);
    }
    let opts = QuadOptions::default();
    let v = line_norm(|c| BumpTransform::phi_hat(c, &opts), p, &opts)?;
    cache.lock().unwrap().push((cache_key(p), v));
    Ok(v)
}

/// `|f_s(xi)|` computed directly from `phi_s` on its support `[1 - 2/s, 1]`,
/// without the change of variables; returns the value `e^{i xi (1-1/s)} f_s(xi)`,
/// which is real.
pub fn f_s_direct(s: u32, xi: f64, panels: usize) -> f64 {
    let sf = s as f64;
    let gl = GaussLegendre::new(16);
    let re = gl.integrate_composite(1.0 - 2.0 / sf, 1.0, panels, |x| {
        sf * phi(sf * x - sf + 1.0) * (xi * (x - 1.0 + 1.0 / sf)).cos()
    });
    re
}

/// `||f_s||_p` by direct quadrature in `xi`, independent of the scaling identity.
pub fn f_s_norm_direct(s: u32, p: f64, opts: &QuadOptions) -> Result<f64> {
    let sf = s as f64;
    let gl = GaussLegendre::new(16);
    let step = sf * opts.eta_panel / 4.0;
    let mut acc = 0.0;
    let mut from = 0.0;
    let mut cutoff = sf * opts.initial_cutoff;
    loop {
        let panels_u = ((cutoff / sf) / 2.0).ceil().max(64.0) as usize;
        let f = |x: f64| f_s_direct(s, x, panels_u);
        let mut breaks = vec![from];
        let count = ((cutoff - from) / step).ceil() as usize;
        let mut prev = f(from);
        for i in 1..=count {
            let x = (from + step * i as f64).min(cutoff);
            let v = f(x);
            if v != 0.0 && prev != 0.0 && (v > 0.0) != (prev > 0.0) {
                breaks.push(bisect(f, x - step, x, 1e-12));
            }
            prev = v;
        }
        breaks.push(cutoff);
        let mut piece = 0.0;
        for w in breaks.windows(2) {
            let panels = ((w[1] - w[0]) / (sf * opts.eta_panel)).ceil().max(1.0) as usize;
            piece += gl.integrate_composite(w[0], w[1], panels, |x| f(x).abs().powf(p));
        }
        acc += 2.0 * piece;
        if from > 0.0 && 2.0 * piece <= opts.tail_tol * acc {
            return Ok(acc.powf(1.0 / p));
        }
        if 2.0 * cutoff > sf * opts.max_cutoff {
            return Err(Error::Accuracy("direct norm of f_s did not converge".into()));
        }
        from = cutoff;
        cutoff *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bump_shape() {
        assert_eq!(phi(0.0), 1.0);
        assert_eq!(phi(0.5), 1.0);
        assert_eq!(phi(-0.4), 1.0);
        assert_eq!(phi(1.0), 0.0);
        assert_eq!(phi(-1.3), 0.0);
        assert!((phi(0.75) - 0.5).abs() < 1e-15);
        assert!(phi(0.9) > 0.0 && phi(0.9) < 0.5);
    }

    #[test]
    fn transform_matches_direct_quadrature() {
        let opts = QuadOptions::default();
        let t = BumpTransform::phi_hat(64.0, &opts);
        let gl = GaussLegendre::new(20);
        for eta in [0.0, 1.5, 7.0, 30.0] {
            let direct = gl.integrate_composite(-1.0, 1.0, 400, |u| phi(u) * (u * eta).cos());
            assert!((t.eval(eta).re - direct).abs() < 1e-12, "{eta}");
        }
        let g = BumpTransform::derivative_profile(5, 64.0, &opts);
        for eta in [0.0, 2.0, 11.0] {
            let re = gl.integrate_composite(-1.0, 1.0, 400, |u| phi(u) * (0.8 + 0.2 * u).powi(5) * (u * eta).cos());
            let im = gl.integrate_composite(-1.0, 1.0, 400, |u| -phi(u) * (0.8 + 0.2 * u).powi(5) * (u * eta).sin());
            assert!((g.eval(eta) - Complex64::new(re, im)).norm() < 1e-12);
        }
    }

    #[test]
    fn l2_norm_satisfies_parseval() {
        let opts = QuadOptions::default();
        let gl = GaussLegendre::new(20);
        let phi_l2 = gl.integrate_composite(-1.0, 1.0, 400, |u| phi(u) * phi(u));
        let got = phi_hat_norm(Exponent::Finite(2.0)).unwrap().value;
        assert!((got * got - 2.0 * PI * phi_l2).abs() < 1e-7 * got * got);

        let s = 6;
        let weight_l2 = gl.integrate_composite(-1.0, 1.0, 400, |u| (phi(u) * (1.0 - (1.0 - u) / s as f64).powi(s)).powi(2));
        let g = line_norm(|c| BumpTransform::derivative_profile(s as u32, c, &opts), Exponent::Finite(2.0), &opts).unwrap();
        assert!((g.value * g.value - 2.0 * PI * weight_l2).abs() < 1e-7 * g.value * g.value);
    }

    #[test]
    fn sup_norm_is_mass() {
        let opts = QuadOptions::default();
        let g = line_norm(|c| BumpTransform::derivative_profile(4, c, &opts), Exponent::Infinity, &opts).unwrap();
        let gl = GaussLegendre::new(20);
        let mass = gl.integrate_composite(-1.0, 1.0, 400, |u| phi(u) * (0.75 + 0.25 * u).powi(4));
        assert!((g.value - mass).abs() < 1e-12);
    }
}
