//! Discrete Hardy spaces `H_p(Z)`, `0 < p <= 1`: the discrete Hilbert
//! transforms `H(a)_m = sum_{k != m} a_k/(m - k)` and
//! `H_c(a)_m = sum_k a_k/(m - k + 1/2)`, the quasinorm
//! `||a||_p + ||H(a)||_p`, `H_p`-atoms, and the sinc synthesis
//! `f_a(x) = sum_k (-1)^k a_k sinc(x - pi k)`.
//!
//! Away from the support `H(a)_m = sum_j nu_j u^{-j-1}` with `u` the distance
//! to the support centre and `nu_j` the centred moments, so tails are summed
//! analytically and divergence is read off the first nonvanishing moment.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Exact-evaluation window beyond the support radius.
pub const DEFAULT_WINDOW: i64 = 10_000;

/// Moments below this multiple of `sum |a_k| |k - c|^j` count as zero.
pub const MOMENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OffsetKind {
    /// `H(a)_m = sum_{k != m} a_k/(m - k)`
    Integer,
    /// `H_c(a)_m = sum_k a_k/(m - k + 1/2)`
    Half,
}

impl OffsetKind {
    fn shift(self) -> f64 {
        match self {
            OffsetKind::Integer => 0.0,
            OffsetKind::Half => 0.5,
        }
    }
}

/// Finitely supported sequence; entry `i` of `values` is `a_{offset + i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSeq {
    offset: i64,
    values: Vec<Complex64>,
}

impl DiscreteSeq {
    pub fn new(offset: i64, values: Vec<Complex64>) -> Self {
        DiscreteSeq { offset, values }
    }

    pub fn from_real(offset: i64, values: &[f64]) -> Self {
        DiscreteSeq::new(offset, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn delta(k: i64) -> Self {
        DiscreteSeq::from_real(k, &[1.0])
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, k: i64) -> Complex64 {
        let i = k - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// `(k, a_k)` over the stored range.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.offset + i as i64, v))
    }

    /// First and last nonzero index.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = self.values.iter().position(|v| *v != Complex64::new(0.0, 0.0))?;
        let last = self.values.iter().rposition(|v| *v != Complex64::new(0.0, 0.0))?;
        Some((self.offset + first as i64, self.offset + last as i64))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `(sum |a_k|^p)^{1/p}`, scaled by the peak.
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm(self.values.iter().map(|v| v.norm()), p)
    }

    pub fn add(&self, other: &DiscreteSeq) -> DiscreteSeq {
        if self.values.is_empty() {
            return other.clone();
        }
        if other.values.is_empty() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.values.len() as i64).max(other.offset + other.values.len() as i64);
        DiscreteSeq::new(lo, (lo..hi).map(|k| self.get(k) + other.get(k)).collect())
    }

    pub fn scale(&self, factor: f64) -> DiscreteSeq {
        DiscreteSeq::new(self.offset, self.values.iter().map(|v| v * factor).collect())
    }
}

fn lp_norm(abs: impl Iterator<Item = f64> + Clone, p: f64) -> f64 {
    let peak = abs.clone().fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    peak * abs.map(|a| (a / peak).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct Accumulator {
    sum: Complex64,
    comp: Complex64,
}

impl Accumulator {
    fn add(&mut self, v: Complex64) {
        let (re, cre) = two_sum(self.sum.re, v.re);
        let (im, cim) = two_sum(self.sum.im, v.im);
        self.sum = Complex64::new(re, im);
        self.comp += Complex64::new(cre, cim);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `sum_k a_k k^j` for `j = 0..=jmax`.
pub fn moments(a: &DiscreteSeq, jmax: usize) -> Vec<Complex64> {
    moments_about(a, 0.0, jmax)
}

/// `sum_k a_k (k - c)^j` for `j = 0..=jmax`.
pub fn moments_about(a: &DiscreteSeq, c: f64, jmax: usize) -> Vec<Complex64> {
    let mut acc = vec![Accumulator::default(); jmax + 1];
    for (k, v) in a.iter() {
        let d = k as f64 - c;
        let mut pw = 1.0;
        for slot in acc.iter_mut() {
            slot.add(v * pw);
            pw *= d;
        }
    }
    acc.iter().map(|s| s.value()).collect()
}

/// Index of the first moment that does not vanish (relative to
/// `sum |a_k| |k - c|^j`), or `None` for the zero sequence.
pub fn first_nonvanishing_moment(a: &DiscreteSeq) -> Option<usize> {
    Expansion::new(a).order
}

/// `H(a)(u) = sum_{j >= order} nu_j u^{-j-1}` about the support centre,
/// where `u = m - centre + shift`.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub centre: i64,
    /// `max |k - centre|` over the support
    pub radius: f64,
    pub order: Option<usize>,
    /// centred moments, with numerically vanishing leading ones set to zero
    pub nu: Vec<Complex64>,
    /// `sum |a_k|`
    pub mass: f64,
    /// `sum |a_k| |k - centre|^order`
    pub abs_moment: f64,
}

const EXPANSION_TERMS: usize = 48;

impl Expansion {
    pub fn new(a: &DiscreteSeq) -> Self {
        let Some((lo, hi)) = a.support() else {
            return Expansion { centre: 0, radius: 0.0, order: None, nu: vec![], mass: 0.0, abs_moment: 0.0 };
        };
        let centre = lo + (hi - lo) / 2;
        let radius = (centre - lo).max(hi - centre) as f64;
        let mut nu = moments_about(a, centre as f64, EXPANSION_TERMS);
        let scale = |j: usize| -> f64 { a.iter().map(|(k, v)| v.norm() * ((k - centre) as f64).abs().powi(j as i32)).sum() };
        let mut order = None;
        for j in 0..=EXPANSION_TERMS {
            if nu[j].norm() > MOMENT_TOL * scale(j) {
                order = Some(j);
                break;
            }
            nu[j] = Complex64::new(0.0, 0.0);
        }
        let mass = a.values.iter().map(|v| v.norm()).sum();
        let abs_moment = order.map_or(0.0, scale);
        Expansion { centre, radius, order, nu, mass, abs_moment }
    }

    /// Whether the series is used at offset `u` (well outside the support).
    fn converges_fast(&self, u: f64) -> bool {
        u.abs() > 16.0 * (self.radius + 1.0)
    }

    /// Series value at `u`; requires `|u| > radius`.
    pub fn eval(&self, u: f64) -> Complex64 {
        let Some(order) = self.order else {
            return Complex64::new(0.0, 0.0);
        };
        let inv = 1.0 / u;
        let mut pw = inv.powi(order as i32 + 1);
        let mut sum = Complex64::new(0.0, 0.0);
        for j in order..self.nu.len() {
            let term = self.nu[j] * pw;
            sum += term;
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
            pw *= inv;
        }
        sum
    }

    /// `|H(a)(u)| <= sum |a_k| |d_k|^J / (|u|^J (|u| - R))` for `|u| > R`.
    pub fn bound(&self, u: f64) -> f64 {
        let Some(order) = self.order else {
            return 0.0;
        };
        let gap = u.abs() - self.radius;
        if gap <= 0.0 {
            return f64::INFINITY;
        }
        (self.mass / gap).min(self.abs_moment / (u.abs().powi(order as i32) * gap))
    }

    /// `|H(a)_m| ~ C |m|^{-(order+1)}`
    pub fn decay_exponent(&self) -> Option<usize> {
        self.order.map(|j| j + 1)
    }

    /// `sum_{i >= 0} |H(sign (v0 + i))|^p` by Euler-Maclaurin; the integral
    /// is taken in `u = v0 e^y` and closed with the leading power beyond
    /// `y = 40`.
    fn tail_sum(&self, v0: f64, sign: f64, p: f64) -> f64 {
        let Some(order) = self.order else {
            return 0.0;
        };
        let alpha = (order as f64 + 1.0) * p;
        let f = |v: f64| self.eval(sign * v).norm().powf(p);
        let gl = GaussLegendre::new(12);
        let y_max = 40.0;
        let body = gl.integrate_composite(0.0, y_max, 160, |y| {
            let v = v0 * y.exp();
            f(v) * v
        });
        let lead = self.nu[order].norm().powf(p);
        let far = v0 * y_max.exp();
        let integral = body + lead * far.powf(1.0 - alpha) / (alpha - 1.0);
        let h = 0.5;
        let deriv = (f(v0 + h) - f(v0 - h)) / (2.0 * h);
        integral + 0.5 * f(v0) - deriv / 12.0
    }
}

/// Transform values on a window plus the series model outside it.
#[derive(Debug, Clone)]
pub struct HilbertWindow {
    pub kind: OffsetKind,
    /// exact values on `[lo - W, hi + W]`
    pub values: DiscreteSeq,
    pub tail: Expansion,
}

impl HilbertWindow {
    /// Value at any `m`: stored inside the window, series outside.
    pub fn value(&self, m: i64) -> Complex64 {
        let len = self.values.values.len() as i64;
        if m >= self.values.offset && m < self.values.offset + len {
            self.values.get(m)
        } else {
            self.tail.eval((m - self.tail.centre) as f64 + self.kind.shift())
        }
    }

    /// Rigorous bound on `|value(m)|` outside the support.
    pub fn tail_bound(&self, m: i64) -> f64 {
        self.tail.bound((m - self.tail.centre) as f64 + self.kind.shift())
    }
}

pub fn hilbert(a: &DiscreteSeq, kind: OffsetKind) -> HilbertWindow {
    hilbert_with_window(a, kind, DEFAULT_WINDOW)
}

fn direct(a: &DiscreteSeq, kind: OffsetKind, m: i64) -> Complex64 {
    let shift = kind.shift();
    let mut acc = Accumulator::default();
    for (k, v) in a.iter() {
        if kind == OffsetKind::Integer && k == m {
            continue;
        }
        acc.add(v / ((m - k) as f64 + shift));
    }
    acc.value()
}

pub fn hilbert_with_window(a: &DiscreteSeq, kind: OffsetKind, window: i64) -> HilbertWindow {
    let tail = Expansion::new(a);
    let Some((lo, hi)) = a.support() else {
        return HilbertWindow { kind, values: DiscreteSeq::new(0, vec![]), tail };
    };
    let start = lo - window;
    let values = (start..=hi + window)
        .map(|m| {
            let u = (m - tail.centre) as f64 + kind.shift();
            if tail.converges_fast(u) {
                tail.eval(u)
            } else {
                direct(a, kind, m)
            }
        })
        .collect();
    HilbertWindow { kind, values: DiscreteSeq::new(start, values), tail }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HpNorm {
    /// `||a||_p + ||H(a)||_p`, infinite when the tail diverges
    pub value: f64,
    pub sequence_norm: f64,
    pub transform_norm: f64,
    pub divergent: bool,
    pub first_moment: Option<usize>,
    pub window: i64,
}

/// `||a||_p + ||H(a)||_p` (`Integer`) or `||a||_p + ||H_c(a)||_p` (`Half`).
pub fn hp_quasinorm(a: &DiscreteSeq, p: f64, kind: OffsetKind) -> Result<HpNorm> {
    hp_quasinorm_with_window(a, p, kind, DEFAULT_WINDOW)
}

pub fn hp_quasinorm_with_window(a: &DiscreteSeq, p: f64, kind: OffsetKind, window: i64) -> Result<HpNorm> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1], got {p}")));
    }
    let sequence_norm = a.lp_norm(p);
    let tail = Expansion::new(a);
    let Some(order) = tail.order else {
        return Ok(HpNorm {
            value: 0.0,
            sequence_norm,
            transform_norm: 0.0,
            divergent: false,
            first_moment: None,
            window,
        });
    };
    // |H(a)_m|^p ~ |m|^{-(order+1)p}; the borderline exponent 1 is harmonic
    if (order as f64 + 1.0) * p <= 1.0 + 1e-12 {
        return Ok(HpNorm {
            value: f64::INFINITY,
            sequence_norm,
            transform_norm: f64::INFINITY,
            divergent: true,
            first_moment: Some(order),
            window,
        });
    }
    let h = hilbert_with_window(a, kind, window);
    let peak = h.values.sup_norm();
    let inner: f64 = h.values.values.iter().map(|v| (v.norm() / peak).powf(p)).sum();
    let shift = kind.shift();
    let first = h.values.offset;
    let last = first + h.values.values.len() as i64 - 1;
    let right = (last + 1 - tail.centre) as f64 + shift;
    let left = -((first - 1 - tail.centre) as f64 + shift);
    let outer = tail.tail_sum(right, 1.0, p) + tail.tail_sum(left, -1.0, p);
    let transform_norm = peak * (inner + outer / peak.powf(p)).powf(1.0 / p);
    Ok(HpNorm {
        value: sequence_norm + transform_norm,
        sequence_norm,
        transform_norm,
        divergent: false,
        first_moment: Some(order),
        window,
    })
}

/// Outcome of the three `H_p`-atom checks.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomCertificate {
    pub p: f64,
    pub interval: (f64, f64),
    pub support_ok: bool,
    pub sup_norm: f64,
    /// `|I|^{-1/p}`
    pub sup_bound: f64,
    pub sup_ok: bool,
    /// `floor(1/p - 1)`
    pub j0: usize,
    /// `|sum a_k k^j| / sum |a_k| |k|^j` for `j = 0..=j0`
    pub moment_residuals: Vec<f64>,
    pub moments_ok: bool,
    pub valid: bool,
}

/// `floor(1/p - 1)`, guarded against `1/p` landing just below an integer.
pub fn vanishing_order(p: f64) -> usize {
    (1.0 / p - 1.0 + 1e-9).floor().max(0.0) as usize
}

pub fn validate_atom(a: &DiscreteSeq, interval: (f64, f64), p: f64) -> Result<AtomCertificate> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1], got {p}")));
    }
    let len = interval.1 - interval.0;
    if !(len >= 1.0) {
        return Err(Error::Domain(format!("interval length {len} is below 1")));
    }
    let support_ok = match a.support() {
        None => true,
        Some((lo, hi)) => lo as f64 >= interval.0 && hi as f64 <= interval.1,
    };
    let sup_norm = a.sup_norm();
    let sup_bound = len.powf(-1.0 / p);
    let sup_ok = sup_norm <= sup_bound * (1.0 + 1e-12);
    let j0 = vanishing_order(p);
    let raw = moments(a, j0);
    let moment_residuals: Vec<f64> = raw
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let scale: f64 = a.iter().map(|(k, v)| v.norm() * (k as f64).abs().powi(j as i32)).sum();
            if scale == 0.0 {
                0.0
            } else {
                m.norm() / scale
            }
        })
        .collect();
    let moments_ok = moment_residuals.iter().all(|&r| r <= MOMENT_TOL);
    Ok(AtomCertificate {
        p,
        interval,
        support_ok,
        sup_norm,
        sup_bound,
        sup_ok,
        j0,
        moment_residuals,
        moments_ok,
        valid: support_ok && sup_ok && moments_ok,
    })
}

/// An atom together with its interval.
#[derive(Debug, Clone)]
pub struct Atom {
    pub seq: DiscreteSeq,
    pub interval: (f64, f64),
}

/// Random real atom: support length `N` in `j0+2..=64` at a random offset,
/// a random vector projected onto the null space of the moment conditions,
/// scaled so that `||a||_inf = |I|^{-1/p}/2`.
pub fn random_atom<R: Rng>(p: f64, rng: &mut R) -> Atom {
    let j0 = vanishing_order(p);
    let len = rng.gen_range((j0 + 2).max(2)..=64);
    let offset = rng.gen_range(-100i64..=100);
    let centre = (len as f64 - 1.0) / 2.0;
    // orthonormal basis of span{(k - c)^j : j <= j0}, two Gram-Schmidt passes
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..=j0 {
        let mut row: Vec<f64> = (0..len).map(|i| ((i as f64 - centre) / len as f64).powi(j as i32)).collect();
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = row.iter().zip(b).map(|(x, y)| x * y).sum();
                row.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
        }
        let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(row.into_iter().map(|x| x / norm).collect());
    }
    let mut v: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for _ in 0..2 {
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
    }
    let interval = (offset as f64, (offset + len as i64 - 1) as f64);
    let target = 0.5 * (interval.1 - interval.0).powf(-1.0 / p);
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seq = DiscreteSeq::from_real(offset, &v.iter().map(|x| x * target / peak).collect::<Vec<_>>());
    Atom { seq, interval }
}

/// `sum_d lambda_d a(d)` with `count` random atoms and `lambda_d` in `(0, 1]`.
pub fn random_combination<R: Rng>(p: f64, count: usize, rng: &mut R) -> (DiscreteSeq, Vec<(f64, Atom)>) {
    let mut total = DiscreteSeq::new(0, vec![]);
    let mut parts = Vec::with_capacity(count);
    for _ in 0..count {
        let atom = random_atom(p, rng);
        let lambda = rng.gen_range(0.05..=1.0);
        total = total.add(&atom.seq.scale(lambda));
        parts.push((lambda, atom));
    }
    (total, parts)
}

/// `sin(t)/t`.
pub fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// `f_a(x) = sum_k (-1)^k a_k sinc(x - pi k) = sin(x)/pi * sum_k a_k/(x/pi - k)`.
#[derive(Debug, Clone)]
pub struct SincSynthesis {
    a: DiscreteSeq,
    tail: Expansion,
}

pub fn synthesize_f_a(a: &DiscreteSeq) -> SincSynthesis {
    SincSynthesis { a: a.clone(), tail: Expansion::new(a) }
}

impl SincSynthesis {
    pub fn eval(&self, x: f64) -> Complex64 {
        let u = x / PI - self.tail.centre as f64;
        if self.tail.converges_fast(u) {
            return self.tail.eval(u) * (x.sin() / PI);
        }
        let mut acc = Accumulator::default();
        for (k, v) in self.a.iter() {
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            acc.add(v * (sign * sinc(x - PI * k as f64)));
        }
        acc.value()
    }

    /// `count` equispaced samples on `[-r, r]` about the support centre.
    pub fn samples(&self, r: f64, count: usize) -> Vec<(f64, Complex64)> {
        let c = PI * self.tail.centre as f64;
        (0..count)
            .map(|i| {
                let x = c - r + 2.0 * r * i as f64 / (count.max(2) - 1) as f64;
                (x, self.eval(x))
            })
            .collect()
    }

    /// `(sum_{|m - centre| <= window} |f_a(pi m)|^p)^{1/p}`.
    pub fn sampled_norm(&self, p: f64, window: i64) -> f64 {
        let Some((lo, hi)) = self.a.support() else {
            return 0.0;
        };
        lp_norm((lo - window..=hi + window).map(|m| self.eval(PI * m as f64).norm()), p)
    }

    /// `||f_a||_p` over the line: composite quadrature on the periods within
    /// `half_width` of the centre, then `E|sin|^p pi^{1-p} int |H(u)|^p du`
    /// outside. Infinite when that tail diverges.
    pub fn integral_norm(&self, p: f64, half_width: f64) -> f64 {
        let Some(order) = self.tail.order else {
            return 0.0;
        };
        if (order as f64 + 1.0) * p <= 1.0 + 1e-12 {
            return f64::INFINITY;
        }
        let c = self.tail.centre as f64;
        let periods = (half_width / PI).ceil().max(self.tail.radius + 4.0) as i64;
        let gl = GaussLegendre::new(16);
        let mut inner = 0.0;
        // x = pi (m + (1 - cos t)/2) clusters nodes at the zeros of sin
        for m in -periods..periods {
            let base = PI * (c + m as f64);
            inner += gl.integrate_composite(0.0, PI, 2, |t| {
                let x = base + PI * (1.0 - t.cos()) / 2.0;
                self.eval(x).norm().powf(p) * PI * t.sin() / 2.0
            });
        }
        let mean_sin = libm::tgamma((p + 1.0) / 2.0) / (PI.sqrt() * libm::tgamma(p / 2.0 + 1.0));
        let u0 = periods as f64;
        let tail_u = self.tail.integral_tail(u0, 1.0, p) + self.tail.integral_tail(u0, -1.0, p);
        (inner + mean_sin * PI.powf(1.0 - p) * tail_u).powf(1.0 / p)
    }
}

impl Expansion {
    /// `int_{v0}^inf |H(sign v)|^p dv`.
    fn integral_tail(&self, v0: f64, sign: f64, p: f64) -> f64 {
        let Some(order) = self.order else {
            return 0.0;
        };
        let alpha = (order as f64 + 1.0) * p;
        let gl = GaussLegendre::new(12);
        let y_max = 40.0;
        let body = gl.integrate_composite(0.0, y_max, 160, |y| {
            let v = v0 * y.exp();
            self.eval(sign * v).norm().powf(p) * v
        });
        let far = v0 * y_max.exp();
        body + self.nu[order].norm().powf(p) * far.powf(1.0 - alpha) / (alpha - 1.0)
    }
}

/// `|g(xi)| = pi |sum_k (-1)^k a_k e^{-ik pi xi}|`, the modulus of the Fourier
/// transform of `f_a` on `(-1, 1)`.
pub fn atom_transform_modulus(a: &DiscreteSeq, xi: f64) -> f64 {
    let mut acc = Accumulator::default();
    for (k, v) in a.iter() {
        // (-1)^k e^{-ik pi xi} = e^{-ik pi (xi + 1)}, reduced mod 2
        let phase = -PI * (k as f64 * (xi + 1.0)).rem_euclid(2.0);
        acc.add(v * Complex64::from_polar(1.0, phase));
    }
    PI * acc.value().norm()
}

/// `int_{-1}^{1} |xi|^s |g(xi)| dxi` for a valid atom.
pub fn atom_fourier_moment(a: &DiscreteSeq, interval: (f64, f64), s: u32, p: f64) -> Result<f64> {
    Ok(atom_fourier_moments(a, interval, &[s], p)?[0])
}

/// [`atom_fourier_moment`] for several orders, sampling `|g|` once.
pub fn atom_fourier_moments(a: &DiscreteSeq, interval: (f64, f64), orders: &[u32], p: f64) -> Result<Vec<f64>> {
    let cert = validate_atom(a, interval, p)?;
    if !cert.valid {
        return Err(Error::Domain(format!("not an H_p atom for p={p}: {cert:?}")));
    }
    let smax = orders.iter().copied().max().unwrap_or(0) as usize;
    let panels = 64 + 8 * a.values.len() + 4 * smax;
    let gl = GaussLegendre::new(20);
    let (mut nodes, mut weights) = gl.composite_points(-1.0, 0.0, panels);
    let (n2, w2) = gl.composite_points(0.0, 1.0, panels);
    nodes.extend(n2);
    weights.extend(w2);
    let g: Vec<f64> = nodes.iter().map(|&xi| atom_transform_modulus(a, xi)).collect();
    Ok(orders
        .iter()
        .map(|&s| {
            nodes.iter().zip(&weights).zip(&g).map(|((&xi, &w), &gv)| w * xi.abs().powi(s as i32) * gv).sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn delta_transforms() {
        let h = hilbert_with_window(&DiscreteSeq::delta(0), OffsetKind::Integer, 50);
        assert_eq!(h.value(0), c(0.0));
        for m in [-70i64, -3, 1, 2, 49, 51, 500] {
            assert!((h.value(m) - c(1.0 / m as f64)).norm() < 1e-15, "m={m}");
        }
        let hc = hilbert_with_window(&DiscreteSeq::delta(0), OffsetKind::Half, 50);
        for m in [-70i64, -1, 0, 3, 80] {
            assert!((hc.value(m) - c(1.0 / (m as f64 + 0.5))).norm() < 1e-15);
        }
    }

    #[test]
    fn dipole_transform() {
        let a = DiscreteSeq::from_real(0, &[1.0, -1.0]);
        let h = hilbert_with_window(&a, OffsetKind::Integer, 100);
        assert!((h.value(0) - c(1.0)).norm() < 1e-15);
        assert!((h.value(1) - c(1.0)).norm() < 1e-15);
        for m in [-300i64, -5, 2, 7, 99, 102, 1000] {
            let m_f = m as f64;
            assert!((h.value(m) - c(1.0 / m_f - 1.0 / (m_f - 1.0))).norm() < 1e-15 * (1.0 + 1.0 / m_f.powi(2)));
        }
        assert!(h.tail_bound(1000) >= h.value(1000).norm());
    }

    #[test]
    fn divergence_decisions() {
        let delta = DiscreteSeq::delta(0);
        let dipole = DiscreteSeq::from_real(0, &[1.0, -1.0]);
        assert!(hp_quasinorm(&delta, 1.0, OffsetKind::Integer).unwrap().divergent);
        let finite = hp_quasinorm(&dipole, 1.0, OffsetKind::Integer).unwrap();
        assert!(!finite.divergent && finite.value.is_finite());
        assert!(hp_quasinorm(&dipole, 0.5, OffsetKind::Integer).unwrap().divergent);
    }

    #[test]
    fn dipole_norm_matches_telescoping_sum() {
        // H_m = -1/(m(m-1)) off {0, 1}: sum over m >= 2 and m <= -1 is 1 + 1
        let dipole = DiscreteSeq::from_real(0, &[1.0, -1.0]);
        let norm = hp_quasinorm(&dipole, 1.0, OffsetKind::Integer).unwrap();
        assert!((norm.transform_norm - 4.0).abs() < 1e-12, "{}", norm.transform_norm);
        assert!((norm.value - 6.0).abs() < 1e-12);
    }

    #[test]
    fn moments_of_dipole() {
        let m = moments(&DiscreteSeq::from_real(0, &[1.0, -1.0]), 2);
        assert_eq!(m[0], c(0.0));
        assert_eq!(m[1], c(-1.0));
    }

    #[test]
    fn atom_checks() {
        let a = DiscreteSeq::from_real(0, &[0.5, -0.5]);
        assert!(validate_atom(&a, (0.0, 1.0), 1.0).unwrap().valid);
        assert!(!validate_atom(&a, (0.0, 1.0), 0.5).unwrap().valid);
        assert!(validate_atom(&a, (0.0, 0.5), 1.0).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [1.0, 0.5, 1.0 / 3.0] {
            for _ in 0..20 {
                let atom = random_atom(p, &mut rng);
                assert!(validate_atom(&atom.seq, atom.interval, p).unwrap().valid);
            }
        }
    }

    #[test]
    fn interpolation_and_half_samples() {
        let a = DiscreteSeq::from_real(-2, &[0.3, -1.0, 0.25, 0.45]);
        let f = synthesize_f_a(&a);
        let hc = hilbert(&a, OffsetKind::Half);
        for m in -6i64..6 {
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            assert!((f.eval(PI * m as f64) - a.get(m) * sign).norm() < 1e-12);
            let half = f.eval(PI * (m as f64 + 0.5));
            assert!((half - hc.value(m) * (sign / PI)).norm() < 1e-12);
        }
    }

    #[test]
    fn fourier_moment_vanishes_at_endpoints() {
        let a = DiscreteSeq::from_real(3, &[0.5, -0.5]);
        assert!(atom_transform_modulus(&a, 1.0) < 1e-14);
        assert!(atom_transform_modulus(&a, -1.0) < 1e-14);
        assert!(atom_fourier_moment(&a, (3.0, 4.0), 2, 1.0).unwrap() > 0.0);
    }
}
