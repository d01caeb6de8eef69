//! Trigonometric polynomials `T(x) = sum_{|k|<=n} c_k e^{ikx}`.
//!
//! Coefficients are stored densely for `k = -n..=n`. Grid evaluation uses the
//! equispaced nodes `x_j = -pi + 2 pi j / M`, on which the trapezoid rule is
//! exact for trigonometric polynomials of degree `< M`.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::quadrature::golden_section_max;

const SYMMETRY_TOL: f64 = 1e-12;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn inverse_fft(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(len))
}

fn forward_fft(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(len))
}

/// Symmetries detected on construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Symmetry {
    /// `c_{-k} = conj(c_k)`
    pub real: bool,
    /// `c_{-k} = c_k`
    pub even: bool,
    /// `c_{-k} = -c_k`
    pub odd: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityKind {
    Real,
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<Complex64>,
    symmetry: Symmetry,
}

/// Samples `T(x_j)` on `x_j = -pi + 2 pi j / count`.
#[derive(Debug, Clone)]
pub struct GridSamples {
    pub count: usize,
    pub values: Vec<Complex64>,
}

impl GridSamples {
    pub fn node(&self, j: usize) -> f64 {
        grid_node(j, self.count)
    }
}

pub fn grid_node(j: usize, count: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / count as f64
}

/// A quasinorm value together with the grid that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub grid: usize,
    /// Certified bound on `true - value` for the sup norm; zero for finite `p`.
    pub error_bound: f64,
}

/// Default quadrature grid: `max(4096, ceil(32 (n+1) max(1,p)))` for finite `p`,
/// `max(8192, 64 (n+1))` for `p = inf`.
pub fn default_grid(degree: usize, p: Exponent) -> usize {
    match p {
        Exponent::Finite(p) => {
            let m = (32.0 * (degree as f64 + 1.0) * p.max(1.0)).ceil() as usize;
            m.max(4096)
        }
        Exponent::Infinity => (64 * (degree + 1)).max(8192),
    }
}

fn symmetric_close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= SYMMETRY_TOL * scale.max(1.0)
}

/// `(ik)^s = |k|^s e^{i pi s sgn(k) / 2}`; exact phases for integer `s`.
pub fn weyl_multiplier(k: i64, s: f64) -> Complex64 {
    if k == 0 {
        return if s == 0.0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    let mag = (k.unsigned_abs() as f64).powf(s);
    let sign = k.signum() as f64;
    let phase = if s.fract() == 0.0 && s.abs() < 1e15 {
        // i^{s sgn k}
        let quarter = ((s as i64) * k.signum()).rem_euclid(4);
        match quarter {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, 0.5 * PI * s * sign)
    };
    phase * mag
}

impl TrigPoly {
    /// Builds a polynomial from coefficients ordered `c_{-n}, ..., c_n`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Malformed(format!(
                "coefficient sequence must have odd length 2n+1, got {}",
                coeffs.len()
            )));
        }
        let symmetry = detect_symmetry(&coeffs);
        Ok(TrigPoly { coeffs, symmetry })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        TrigPoly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        TrigPoly::new(vec![Complex64::new(0.0, 0.0); 2 * degree + 1]).expect("odd length")
    }

    /// `e^{ikx}` as a polynomial of degree `|k|`.
    pub fn exponential(k: i64) -> Self {
        let n = k.unsigned_abs() as usize;
        let mut t = TrigPoly::zero(n);
        t.coeffs[(k + n as i64) as usize] = Complex64::new(1.0, 0.0);
        t.symmetry = detect_symmetry(&t.coeffs);
        t
    }

    /// `a_0 + sum_k a_k cos(kx) + b_k sin(kx)` with `cos_coeffs = [a_0, a_1, ..]`
    /// and `sin_coeffs = [b_1, b_2, ..]`.
    pub fn from_cos_sin(cos_coeffs: &[f64], sin_coeffs: &[f64]) -> Self {
        let n = cos_coeffs.len().saturating_sub(1).max(sin_coeffs.len());
        let mut c = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
        if let Some(&a0) = cos_coeffs.first() {
            c[n] = Complex64::new(a0, 0.0);
        }
        for (k, &a) in cos_coeffs.iter().enumerate().skip(1) {
            c[n + k] += Complex64::new(a / 2.0, 0.0);
            c[n - k] += Complex64::new(a / 2.0, 0.0);
        }
        for (i, &b) in sin_coeffs.iter().enumerate() {
            let k = i + 1;
            // sin kx = (e^{ikx} - e^{-ikx}) / 2i
            c[n + k] += Complex64::new(0.0, -b / 2.0);
            c[n - k] += Complex64::new(0.0, b / 2.0);
        }
        TrigPoly::new(c).expect("odd length")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// `c_k`, zero outside `|k| <= n`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.degree() as i64;
        if k.abs() > n {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Pointwise evaluation by direct summation.
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.degree() as i64;
        let mut acc = self.coeff(0);
        if n == 0 {
            return acc;
        }
        let step = Complex64::from_polar(1.0, x);
        let mut w = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            // recompute every 32 steps to cap drift
            w = if k % 32 == 0 { Complex64::from_polar(1.0, k as f64 * x) } else { w * step };
            acc += self.coeff(k) * w + self.coeff(-k) * w.conj();
        }
        acc
    }

    /// Values on `count` equispaced nodes by zero-padded inverse FFT.
    pub fn evaluate_grid(&self, count: usize) -> Result<GridSamples> {
        let n = self.degree();
        let needed = 2 * n + 2;
        if count < needed {
            return Err(Error::Undersampled { grid: count, degree: n, needed });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); count];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = i as i64 - n as i64;
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            buf[k.rem_euclid(count as i64) as usize] += c * sign;
        }
        inverse_fft(count).process(&mut buf);
        Ok(GridSamples { count, values: buf })
    }

    /// Recovers a degree-`degree` polynomial from grid samples (exact when the
    /// sampled function is a polynomial of that degree and `count >= 2 degree + 1`).
    pub fn from_samples(samples: &GridSamples, degree: usize) -> Result<Self> {
        let m = samples.count;
        if m < 2 * degree + 1 {
            return Err(Error::Undersampled { grid: m, degree, needed: 2 * degree + 1 });
        }
        let mut buf = samples.values.clone();
        forward_fft(m).process(&mut buf);
        let scale = 1.0 / m as f64;
        let coeffs = (-(degree as i64)..=degree as i64)
            .map(|k| {
                let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                buf[k.rem_euclid(m as i64) as usize] * (scale * sign)
            })
            .collect();
        TrigPoly::new(coeffs)
    }

    /// Weyl derivative of order `s > 0`: `c_k -> (ik)^s c_k`.
    pub fn weyl_derivative(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("derivative order must be positive, got {s}")));
        }
        Ok(self.multiplier_map(s))
    }

    /// Like [`TrigPoly::weyl_derivative`] but `s = 0` is the identity.
    pub fn derivative(&self, s: f64) -> Result<Self> {
        if s == 0.0 {
            Ok(self.clone())
        } else {
            self.weyl_derivative(s)
        }
    }

    fn multiplier_map(&self, s: f64) -> Self {
        let n = self.degree() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| weyl_multiplier(i as i64 - n, s) * c)
            .collect();
        TrigPoly::new(coeffs).expect("odd length")
    }

    /// `T^{(s)}(x)` without materialising the derivative polynomial.
    pub fn eval_derivative(&self, s: f64, x: f64) -> Complex64 {
        let n = self.degree() as i64;
        (-n..=n)
            .map(|k| self.coeff(k) * weyl_multiplier(k, s) * Complex64::from_polar(1.0, k as f64 * x))
            .sum()
    }

    /// `L_p` quasinorm over `[-pi, pi)` on the default grid.
    pub fn quasinorm(&self, p: Exponent) -> Result<NormEstimate> {
        self.quasinorm_with_grid(p, default_grid(self.degree(), p))
    }

    /// `L_p` quasinorm: trapezoid rule for finite `p`; grid maximum refined by
    /// golden-section search for `p = inf`.
    pub fn quasinorm_with_grid(&self, p: Exponent, grid: usize) -> Result<NormEstimate> {
        if let Exponent::Finite(pv) = p {
            if !(pv > 0.0) {
                return Err(Error::Domain(format!("p must be positive, got {pv}")));
            }
        }
        let samples = self.evaluate_grid(grid)?;
        let abs: Vec<f64> = samples.values.iter().map(|v| v.norm()).collect();
        let peak = abs.iter().cloned().fold(0.0, f64::max);
        match p {
            Exponent::Finite(pv) => {
                if peak == 0.0 {
                    return Ok(NormEstimate { value: 0.0, grid, error_bound: 0.0 });
                }
                let h = 2.0 * PI / grid as f64;
                let sum: f64 = abs.iter().map(|&a| (a / peak).powf(pv)).sum();
                Ok(NormEstimate { value: peak * (h * sum).powf(1.0 / pv), grid, error_bound: 0.0 })
            }
            Exponent::Infinity => {
                let value = self.refine_sup(&abs, grid);
                let ratio = PI * self.degree() as f64 / grid as f64;
                let error_bound = if ratio < 1.0 { (peak / (1.0 - ratio) - value).max(0.0) } else { f64::INFINITY };
                Ok(NormEstimate { value, grid, error_bound })
            }
        }
    }

    fn refine_sup(&self, abs: &[f64], grid: usize) -> f64 {
        let peak = abs.iter().cloned().fold(0.0, f64::max);
        if self.degree() == 0 || peak == 0.0 {
            return peak;
        }
        // refine the few largest local maxima
        let mut candidates: Vec<usize> = (0..grid)
            .filter(|&j| {
                let l = abs[(j + grid - 1) % grid];
                let r = abs[(j + 1) % grid];
                abs[j] >= l && abs[j] >= r
            })
            .collect();
        candidates.sort_by(|&a, &b| abs[b].partial_cmp(&abs[a]).unwrap());
        candidates.truncate(4);
        let h = 2.0 * PI / grid as f64;
        let mut best = peak;
        for j in candidates {
            let x0 = grid_node(j, grid);
            let (_, v) = golden_section_max(|x| self.eval(x).norm(), x0 - h, x0 + h, 1e-13);
            best = best.max(v);
        }
        best
    }

    /// Symmetrisation: `Real -> (T + conj T)/2`, `Even -> (T(x) + T(-x))/2`,
    /// `Odd -> (T(x) - T(-x))/2`.
    pub fn parity_project(&self, kind: ParityKind) -> Self {
        let n = self.degree() as i64;
        let coeffs = (-n..=n)
            .map(|k| {
                let a = self.coeff(k);
                let b = self.coeff(-k);
                match kind {
                    ParityKind::Real => (a + b.conj()) * 0.5,
                    ParityKind::Even => (a + b) * 0.5,
                    ParityKind::Odd => (a - b) * 0.5,
                }
            })
            .collect();
        TrigPoly::new(coeffs).expect("odd length")
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        TrigPoly::new(self.coeffs.iter().map(|&c| c * factor).collect()).expect("odd length")
    }

    /// `T(x) e^{imx}`; the degree grows to `n + |m|`.
    pub fn modulate(&self, m: i64) -> Self {
        let n = self.degree() as i64;
        let new_n = n + m.abs();
        let mut out = TrigPoly::zero(new_n as usize);
        for k in -n..=n {
            out.coeffs[(k + m + new_n) as usize] = self.coeff(k);
        }
        out.symmetry = detect_symmetry(&out.coeffs);
        out
    }

    /// `T(x - a)`.
    pub fn translate(&self, a: f64) -> Self {
        let n = self.degree() as i64;
        let coeffs = (-n..=n).map(|k| self.coeff(k) * Complex64::from_polar(1.0, -(k as f64) * a)).collect();
        TrigPoly::new(coeffs).expect("odd length")
    }

    pub fn add(&self, other: &TrigPoly) -> Self {
        let n = self.degree().max(other.degree()) as i64;
        let coeffs = (-n..=n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        TrigPoly::new(coeffs).expect("odd length")
    }

    /// Product by coefficient convolution.
    pub fn mul(&self, other: &TrigPoly) -> Self {
        let (a, b) = (self.degree() as i64, other.degree() as i64);
        let n = a + b;
        let mut out = vec![Complex64::new(0.0, 0.0); (2 * n + 1) as usize];
        for i in -a..=a {
            let ci = self.coeff(i);
            if ci == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in -b..=b {
                out[(i + j + n) as usize] += ci * other.coeff(j);
            }
        }
        TrigPoly::new(out).expect("odd length")
    }

    /// `int_{-pi}^{pi} T(x) U(x) dx` from coefficients.
    pub fn pairing(&self, other: &TrigPoly) -> Complex64 {
        let n = self.degree().min(other.degree()) as i64;
        (-n..=n).map(|k| self.coeff(k) * other.coeff(-k)).sum::<Complex64>() * (2.0 * PI)
    }

    /// `2 pi sum |c_k|^2`.
    pub fn parseval_l2_squared(&self) -> f64 {
        2.0 * PI * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }
}

fn detect_symmetry(coeffs: &[Complex64]) -> Symmetry {
    let n = coeffs.len() / 2;
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut sym = Symmetry { real: true, even: true, odd: true };
    for k in 0..=n {
        let a = coeffs[n + k];
        let b = coeffs[n - k];
        sym.real &= symmetric_close(b, a.conj(), scale);
        sym.even &= symmetric_close(b, a, scale);
        sym.odd &= symmetric_close(b, -a, scale);
    }
    sym
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constructor_flags() {
        let one = TrigPoly::from_real(&[1.0]).unwrap();
        assert!(one.symmetry().real && one.symmetry().even);
        assert_eq!(one.degree(), 0);

        let cos = TrigPoly::from_real(&[0.5, 0.0, 0.5]).unwrap();
        let sym = cos.symmetry();
        assert!(sym.real && sym.even && !sym.odd);

        let d2 = TrigPoly::from_real(&[1.0; 5]).unwrap();
        assert!((d2.eval(0.0).re - 5.0).abs() < 1e-14);

        assert!(matches!(TrigPoly::from_real(&[1.0, 2.0]), Err(Error::Malformed(_))));
    }

    #[test]
    fn grid_matches_direct_evaluation() {
        let e = TrigPoly::exponential(1);
        let g = e.evaluate_grid(4).unwrap();
        for v in &g.values {
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }

        let d2 = TrigPoly::from_real(&[1.0; 5]).unwrap();
        let g = d2.evaluate_grid(16).unwrap();
        // node 8 is x = 0
        assert!((g.values[8].re - 5.0).abs() < 1e-13);

        let cos = TrigPoly::from_real(&[0.5, 0.0, 0.5]).unwrap();
        let g = cos.evaluate_grid(8).unwrap();
        for (j, v) in g.values.iter().enumerate() {
            let x = g.node(j);
            assert!((v - c(x.cos(), 0.0)).norm() < 1e-13);
        }
        assert!(matches!(cos.evaluate_grid(3), Err(Error::Undersampled { .. })));
    }

    #[test]
    fn samples_round_trip() {
        let t = TrigPoly::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(-1.0, 0.0), c(0.0, 4.0), c(1.5, 1.5)]).unwrap();
        let g = t.evaluate_grid(12).unwrap();
        let back = TrigPoly::from_samples(&g, 2).unwrap();
        for k in -2..=2 {
            assert!((back.coeff(k) - t.coeff(k)).norm() < 1e-13);
        }
    }

    #[test]
    fn weyl_derivative_examples() {
        let e = TrigPoly::exponential(1);
        let d = e.weyl_derivative(1.0).unwrap();
        assert_eq!(d.coeff(1), c(0.0, 1.0));

        // cos(3x)'' = -9 cos(3x)
        let cos3 = TrigPoly::from_cos_sin(&[0.0, 0.0, 0.0, 1.0], &[]);
        let d2 = cos3.weyl_derivative(2.0).unwrap();
        for k in -3..=3 {
            assert!((d2.coeff(k) + cos3.coeff(k) * 9.0).norm() < 1e-14);
        }

        // D^{1/2} cos x = cos(x + pi/4)
        let cos = TrigPoly::from_real(&[0.5, 0.0, 0.5]).unwrap();
        let half = cos.weyl_derivative(0.5).unwrap();
        for x in [-2.0, -0.3, 0.0, 1.1, 2.9] {
            assert!((half.eval(x) - c((x + PI / 4.0).cos(), 0.0)).norm() < 1e-14);
        }

        assert!(cos.weyl_derivative(0.0).is_err());
        assert!(cos.weyl_derivative(-1.0).is_err());
        assert_eq!(cos.derivative(0.0).unwrap(), cos);
    }

    #[test]
    fn quasinorm_examples() {
        for n in [1i64, 5] {
            let e = TrigPoly::exponential(n);
            for p in [0.5, 1.0, 2.0, 3.0] {
                let v = e.quasinorm(Exponent::Finite(p)).unwrap().value;
                assert!((v - (2.0 * PI).powf(1.0 / p)).abs() < 1e-12);
            }
            assert!((e.quasinorm(Exponent::Infinity).unwrap().value - 1.0).abs() < 1e-12);
        }
        let d2 = TrigPoly::from_real(&[1.0; 5]).unwrap();
        let l2 = d2.quasinorm(Exponent::Finite(2.0)).unwrap();
        assert!((l2.value - (10.0 * PI).sqrt()).abs() < 1e-12);
        assert_eq!(l2.grid, 4096);
        let sup = d2.quasinorm(Exponent::Infinity).unwrap();
        assert!((sup.value - 5.0).abs() < 1e-12);
        assert_eq!(sup.grid, 8192);
    }

    #[test]
    fn sup_refinement_finds_off_grid_peak() {
        // peak at x = 0.1234, far from grid nodes of a small grid
        let t = TrigPoly::from_real(&[1.0; 7]).unwrap().translate(0.1234);
        let coarse = t.quasinorm_with_grid(Exponent::Infinity, 16).unwrap();
        assert!((coarse.value - 7.0).abs() < 1e-9, "{}", coarse.value);
        assert!(coarse.error_bound >= 0.0);
    }

    #[test]
    fn parity_projection_examples() {
        let e = TrigPoly::exponential(1);
        let even = e.parity_project(ParityKind::Even);
        assert_eq!(even.coeff(1), c(0.5, 0.0));
        assert_eq!(even.coeff(-1), c(0.5, 0.0));
        let odd = e.parity_project(ParityKind::Odd);
        // i sin x = (e^{ix} - e^{-ix}) / 2
        assert_eq!(odd.coeff(1), c(0.5, 0.0));
        assert_eq!(odd.coeff(-1), c(-0.5, 0.0));
        assert_eq!(even.parity_project(ParityKind::Even), even);
    }

    #[test]
    fn cos_sin_constructor() {
        let t = TrigPoly::from_cos_sin(&[1.0, 2.0], &[3.0, 4.0]);
        for x in [-1.0, 0.2, 2.5] {
            let want = 1.0 + 2.0 * f64::cos(x) + 3.0 * f64::sin(x) + 4.0 * f64::sin(2.0 * x);
            assert!((t.eval(x) - c(want, 0.0)).norm() < 1e-13);
        }
        assert!(t.symmetry().real);
    }
}
