//! Dirichlet and Jackson kernels, the bounded polynomial `Q_{2n+1}` used to
//! bound `L_1` norms from below, and the monotone-coefficient norm proxy.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::trigpoly::TrigPoly;

/// `D_n(x) = 1 + 2 sum_{k<=n} cos kx`.
pub fn dirichlet(n: i64) -> Result<TrigPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("degree must be nonnegative, got {n}")));
    }
    TrigPoly::from_real(&vec![1.0; 2 * n as usize + 1])
}

/// Coefficients of `J_{r,N} = D_N^r` for `m = -rN..=rN`, exact in 128-bit
/// integers. `None` on overflow.
pub fn jackson_coeffs_exact(r: u32, big_n: usize) -> Option<Vec<u128>> {
    let mut acc: Vec<u128> = vec![1; 2 * big_n + 1];
    for _ in 1..r {
        let mut next = vec![0u128; acc.len() + 2 * big_n];
        // convolution with the all-ones window is a sliding sum
        let mut window: u128 = 0;
        for (i, slot) in next.iter_mut().enumerate() {
            if i < acc.len() {
                window = window.checked_add(acc[i])?;
            }
            if i >= 2 * big_n + 1 {
                window -= acc[i - 2 * big_n - 1];
            }
            *slot = window;
        }
        acc = next;
    }
    Some(acc)
}

fn jackson_coeffs_float(r: u32, big_n: usize) -> Vec<f64> {
    let mut acc: Vec<f64> = vec![1.0; 2 * big_n + 1];
    for _ in 1..r {
        let mut next = vec![0.0; acc.len() + 2 * big_n];
        for (i, &a) in acc.iter().enumerate() {
            for slot in &mut next[i..i + 2 * big_n + 1] {
                *slot += a;
            }
        }
        acc = next;
    }
    acc
}

/// `J_{r,N}(x) = (sin((N+1/2)x) / sin(x/2))^r`, degree `rN`.
pub fn jackson(r: u32, big_n: usize) -> Result<TrigPoly> {
    if r < 1 || big_n < 1 {
        return Err(Error::Domain(format!("jackson kernel needs r, N >= 1, got r={r}, N={big_n}")));
    }
    let coeffs: Vec<f64> = match jackson_coeffs_exact(r, big_n) {
        Some(c) => c.into_iter().map(|v| v as f64).collect(),
        None => jackson_coeffs_float(r, big_n),
    };
    TrigPoly::from_real(&coeffs)
}

/// Plateau width used when none is supplied: `lambda(r) = 1/(2r)`.
pub fn default_plateau_lambda(r: u32) -> f64 {
    1.0 / (2.0 * r as f64)
}

/// `min_{|m| <= lambda N} J_{r,N}^(m) / N^{r-1}`.
pub fn jackson_plateau_ratio(r: u32, big_n: usize, lambda: f64) -> Result<f64> {
    let j = jackson(r, big_n)?;
    let width = (lambda * big_n as f64).floor() as i64;
    let scale = (big_n as f64).powi(r as i32 - 1);
    Ok((-width..=width).map(|m| j.coeff(m).re).fold(f64::INFINITY, f64::min) / scale)
}

/// `Q_{2n+1}(x) = 1/(2(n+1)) + sum_{k<=n} cos(kx)/(n-k+1) - sum_{k<=n} cos((k+n+1)x)/k`.
pub fn nikolskii_q(n: usize) -> TrigPoly {
    let deg = if n == 0 { 0 } else { 2 * n + 1 };
    let mut c = vec![Complex64::new(0.0, 0.0); 2 * deg + 1];
    c[deg] = Complex64::new(0.5 / (n as f64 + 1.0), 0.0);
    for k in 1..=n {
        let low = 0.5 / (n - k + 1) as f64;
        let high = -0.5 / k as f64;
        c[deg + k] = Complex64::new(low, 0.0);
        c[deg - k] = Complex64::new(low, 0.0);
        c[deg + k + n + 1] = Complex64::new(high, 0.0);
        c[deg - k - n - 1] = Complex64::new(high, 0.0);
    }
    TrigPoly::new(c).expect("odd length")
}

/// `int T Q_{2n+1}` for `T = c_0 + 2 sum c_k cos kx`, from coefficients:
/// `pi (c_0/(n+1) + 2 sum_{k>=1} c_k/(n-k+1))`.
pub fn nikolskii_q_pairing(c: &[f64]) -> f64 {
    let n = c.len() - 1;
    let tail: f64 = c.iter().enumerate().skip(1).map(|(k, &ck)| ck / (n - k + 1) as f64).sum();
    PI * (c[0] / (n as f64 + 1.0) + 2.0 * tail)
}

/// `(sum_k a_k^p (1+k)^{p-2})^{1/p}` for nonincreasing nonnegative `a`.
pub fn hl_norm_proxy(a: &[f64], p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!("p must lie in (0, inf), got {p}")));
    }
    if a.iter().any(|&v| v < 0.0) || a.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Domain("sequence must be nonincreasing and nonnegative".into()));
    }
    let sum: f64 = a.iter().enumerate().map(|(k, &v)| v.powf(p) * (1.0 + k as f64).powf(p - 2.0)).sum();
    Ok(sum.powf(1.0 / p))
}
