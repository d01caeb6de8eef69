//! Concave coefficient sequences: `c_0 >= ... >= c_n >= 0` with nondecreasing
//! differences `Δc_j = c_j - c_{j+1}` (`c_{n+1} = 0`), the extremal basis
//! `v_l`, and the functionals that control `||T_c||_1`.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::trigpoly::TrigPoly;

/// Slack used when validating sequences produced by floating arithmetic.
pub const FLOAT_SLACK: f64 = 1e-12;

/// Constant in `|T_c(x)| <= K x^{-1} c_{n - floor(1/x + 1)}`, pinned from
/// sweeps over `n in 8..=256` with a margin of roughly 2.
pub const TAIL_BOUND_K: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ConcaveSeq {
    values: Vec<f64>,
}

fn differences(c: &[f64]) -> Vec<f64> {
    (0..c.len()).map(|j| c[j] - c.get(j + 1).copied().unwrap_or(0.0)).collect()
}

/// Exact check of both monotonicity chains.
pub fn is_concave(c: &[f64]) -> Result<bool> {
    is_concave_within(c, 0.0)
}

/// As [`is_concave`], allowing violations up to `tol * max|c|`.
pub fn is_concave_within(c: &[f64], tol: f64) -> Result<bool> {
    if c.is_empty() {
        return Err(Error::Domain("empty coefficient sequence".into()));
    }
    let slack = tol * c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let d = differences(c);
    let decreasing = d.iter().all(|&v| v >= -slack);
    let convex = d.windows(2).all(|w| w[1] >= w[0] - slack);
    Ok(decreasing && convex)
}

impl ConcaveSeq {
    /// Validates with slack [`FLOAT_SLACK`] relative to the largest entry.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !is_concave_within(&values, FLOAT_SLACK)? {
            return Err(Error::Domain("sequence is not concave".into()));
        }
        Ok(ConcaveSeq { values })
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `c_k`, zero beyond `n`.
    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }
}

/// `v_l(k) = min{1 - (k-1)/n, 1 - (l-1)/n}` for `k = 0..=n`.
pub fn v_basis(n: usize, l: usize) -> Result<ConcaveSeq> {
    if n == 0 || l > n {
        return Err(Error::Domain(format!("basis index needs 0 <= l <= n, n >= 1; got n={n}, l={l}")));
    }
    let values = (0..=n).map(|k| (n + 1 - k.max(l)) as f64 / n as f64).collect();
    Ok(ConcaveSeq { values })
}

/// Nonnegative weights `g` with `c = sum_l g_l v_l`.
pub fn decompose(c: &ConcaveSeq) -> Result<Vec<f64>> {
    let n = c.n();
    if n == 0 {
        return Err(Error::Domain("decomposition needs n >= 1".into()));
    }
    let d = differences(c.values());
    let nf = n as f64;
    let mut g: Vec<f64> = (0..=n).map(|l| if l == 0 { nf * d[0] } else { nf * (d[l] - d[l - 1]) }).collect();
    let scale = c.values().iter().fold(0.0f64, |m, v| m.max(v.abs())) * nf;
    for w in &mut g {
        if *w < 0.0 && *w >= -FLOAT_SLACK * scale.max(1.0) {
            *w = 0.0;
        }
    }
    Ok(g)
}

/// `sum_l g_l v_l`.
pub fn reconstruct(n: usize, weights: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; n + 1];
    for (l, &g) in weights.iter().enumerate() {
        if g == 0.0 {
            continue;
        }
        for (k, ck) in c.iter_mut().enumerate() {
            *ck += g * (n + 1 - k.max(l)) as f64 / n as f64;
        }
    }
    c
}

/// `S(c) = sum_k c_k / (n - k + 1)`.
pub fn s_functional(c: &ConcaveSeq) -> f64 {
    let n = c.n();
    c.values().iter().enumerate().map(|(k, &v)| v / (n - k + 1) as f64).sum()
}

/// Closed form of `S(v_l)`: `(1 - (l-1)/n)(sum_{m=n-l+1}^{n+1} 1/m + 1) - 1/n`.
pub fn v_weighted_sum_exact(n: usize, l: usize) -> Result<f64> {
    if n == 0 || l > n {
        return Err(Error::Domain(format!("need 0 <= l <= n, n >= 1; got n={n}, l={l}")));
    }
    let harmonic: f64 = (n + 1 - l..=n + 1).map(|m| 1.0 / m as f64).sum();
    let nf = n as f64;
    Ok((nf - l as f64 + 1.0) / nf * (harmonic + 1.0) - 1.0 / nf)
}

/// `H_{n,s}(tau) = tau^{s+1} / (1 - log(1 + 1/n - tau))`.
pub fn h_ns(n: usize, s: u32, tau: f64) -> f64 {
    tau.powi(s as i32 + 1) / (1.0 - (1.0 + 1.0 / n as f64 - tau).ln())
}

/// `sup_{tau in [0,1]} H_{n,s}(tau)` on a uniform grid of `10^4` points plus
/// a geometric grid accumulating at `tau = 1`, followed by local refinement.
pub fn h_ns_sup(n: usize, s: u32) -> Result<f64> {
    if n == 0 || s == 0 {
        return Err(Error::Domain("h_ns_sup needs n, s >= 1".into()));
    }
    let f = |t: f64| h_ns(n, s, t);
    let uniform = (0..=10_000).map(|i| i as f64 / 10_000.0);
    let geometric = (0..=400).map(|i| 1.0 - 0.1 * 10f64.powf(-(i as f64) / 40.0));
    let mut best_t = 0.0;
    let mut best = f(0.0);
    for t in uniform.chain(geometric) {
        let v = f(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let h = 1e-4;
    let (_, v) = crate::quadrature::golden_section_max(f, (best_t - h).max(0.0), (best_t + h).min(1.0), 1e-15);
    Ok(best.max(v))
}

/// `T_c(x) = c_0 + 2 sum_{k>=1} c_k cos kx`.
pub fn build_poly(c: &ConcaveSeq) -> TrigPoly {
    let n = c.n();
    let coeffs = (0..=2 * n).map(|i| Complex64::new(c.get(i.abs_diff(n)), 0.0)).collect();
    TrigPoly::new(coeffs).expect("odd length")
}

fn tail_index(n: usize, x: f64) -> usize {
    let j = (1.0 / x + 1.0).floor() as usize;
    n.saturating_sub(j)
}

/// Result of comparing `|T_c(x)|` with `x^{-1} c_{n - floor(1/x + 1)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub ratio: f64,
    pub holds: bool,
}

pub fn pointwise_tail_bound_check(c: &ConcaveSeq, x: f64) -> Result<TailCheck> {
    let n = c.n();
    if n == 0 || !(x > 1.0 / n as f64 && x < std::f64::consts::PI) {
        return Err(Error::Domain(format!("x must lie in (1/n, pi), got {x} with n={n}")));
    }
    let value = build_poly(c).eval(x).norm();
    let bound = c.get(tail_index(n, x)) / x;
    let ratio = if bound > 0.0 {
        value / bound
    } else if value == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(TailCheck { ratio, holds: ratio <= TAIL_BOUND_K })
}

/// `(1/n) sum c_k + int_{1/n}^{pi} x^{-1} c_{n - floor(1/x + 1)} dx`, with the
/// integral summed exactly over the intervals where the index is constant.
pub fn tail_integral_bound(c: &ConcaveSeq) -> f64 {
    let n = c.n();
    let nf = n as f64;
    let mean = c.values().iter().sum::<f64>() / nf;
    // x in (1, pi]: index n - 1
    let mut integral = c.get(n - 1) * std::f64::consts::PI.ln();
    // x in (1/(j+1), 1/j]: index n - j - 1
    for j in 1..n {
        integral += c.get(n - j - 1) * ((j + 1) as f64 / j as f64).ln();
    }
    mean + integral
}

/// `sum_k k^s c_k`.
pub fn coefficient_moment(c: &ConcaveSeq, s: u32) -> f64 {
    c.values().iter().enumerate().map(|(k, &v)| (k as f64).powi(s as i32) * v).sum()
}

/// `(n^s + n^{s+1}/(s+1)) (1/log(s+2) + 1/log(n+2))`.
pub fn concave_envelope(n: usize, s: f64) -> f64 {
    let nf = n as f64;
    (nf.powf(s) + nf.powf(s + 1.0) / (s + 1.0)) * (1.0 / (s + 2.0).ln() + 1.0 / (nf + 2.0).ln())
}

/// Random concave sequence as a nonnegative combination of a few `v_l`;
/// returns the sequence and its generating weights.
pub fn random_concave<R: Rng>(n: usize, rng: &mut R) -> (ConcaveSeq, Vec<f64>) {
    let mut weights = vec![0.0; n + 1];
    let terms = rng.gen_range(1..=4.min(n + 1));
    for _ in 0..terms {
        let l = rng.gen_range(0..=n);
        weights[l] += rng.gen_range(0.05..1.0);
    }
    if rng.gen_bool(0.3) {
        for w in weights.iter_mut() {
            *w += rng.gen_range(0.0..0.05);
        }
    }
    let c = ConcaveSeq { values: reconstruct(n, &weights) };
    (c, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn harmonic(m: usize) -> f64 {
        (1..=m).map(|k| 1.0 / k as f64).sum()
    }

    #[test]
    fn concavity_examples() {
        assert!(is_concave(&[1.0; 6]).unwrap());
        assert!(!is_concave(&[1.0, 0.0, 0.0]).unwrap());
        assert!(is_concave(&[]).is_err());
        for n in 1..20 {
            for l in 0..=n {
                assert!(is_concave_within(v_basis(n, l).unwrap().values(), FLOAT_SLACK).unwrap());
            }
        }
        assert!(v_basis(4, 5).is_err());
    }

    #[test]
    fn basis_values() {
        let n = 8;
        let v0 = v_basis(n, 0).unwrap();
        let vn = v_basis(n, n).unwrap();
        for k in 0..=n {
            assert_eq!(v0.get(k), (n - k + 1) as f64 / n as f64);
            assert_eq!(vn.get(k), 1.0 / n as f64);
        }
        for l in 0..=n {
            assert_eq!(v_basis(n, l).unwrap().get(l), 1.0 - (l as f64 - 1.0) / n as f64);
        }
    }

    #[test]
    fn decomposition_examples() {
        let ones = ConcaveSeq::new(vec![1.0; 7]).unwrap();
        let g = decompose(&ones).unwrap();
        assert_eq!(g[6], 6.0);
        assert!(g[..6].iter().all(|&v| v == 0.0));

        let g = decompose(&v_basis(6, 0).unwrap()).unwrap();
        assert!((g[0] - 1.0).abs() < 1e-14);
        assert!(g[1..].iter().all(|v| v.abs() < 1e-14));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..40);
            let (c, w) = random_concave(n, &mut rng);
            let g = decompose(&c).unwrap();
            for (a, b) in g.iter().zip(&w) {
                assert!((a - b).abs() < 1e-10);
            }
            let back = reconstruct(n, &g);
            for (a, b) in back.iter().zip(c.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn s_functional_examples() {
        let n = 9;
        assert!((s_functional(&ConcaveSeq::new(vec![1.0; n + 1]).unwrap()) - harmonic(n + 1)).abs() < 1e-14);
        assert!((s_functional(&v_basis(n, 0).unwrap()) - (n as f64 + 1.0) / n as f64).abs() < 1e-14);
        assert!((s_functional(&v_basis(n, n).unwrap()) - harmonic(n + 1) / n as f64).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        let want = 0.25 * (harmonic(5) + 1.0) - 0.25;
        assert!((v_weighted_sum_exact(4, 4).unwrap() - want).abs() < 1e-15);
        for n in 1..=64 {
            for l in 0..=n {
                let direct = s_functional(&v_basis(n, l).unwrap());
                assert!((direct - v_weighted_sum_exact(n, l).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn h_ns_endpoints_and_sup() {
        assert_eq!(h_ns(5, 3, 0.0), 0.0);
        assert!((h_ns(5, 3, 1.0) - 1.0 / (1.0 + 5f64.ln())).abs() < 1e-15);
        let sup = h_ns_sup(5, 3).unwrap();
        assert!(sup >= h_ns(5, 3, 1.0));
        let worst = (1..=64)
            .flat_map(|n| (1..=64).map(move |s| (n, s)))
            .map(|(n, s)| h_ns_sup(n, s).unwrap() / (1.0 / (s as f64 + 2.0).ln() + 1.0 / (n as f64 + 2.0).ln()))
            .fold(0.0, f64::max);
        assert!(worst.is_finite() && worst < 2.0, "{worst}");
    }

    #[test]
    fn build_poly_examples() {
        assert_eq!(build_poly(&ConcaveSeq::new(vec![1.0]).unwrap()).degree(), 0);
        let d = build_poly(&ConcaveSeq::new(vec![1.0; 5]).unwrap());
        assert!((d.eval(0.0).re - 9.0).abs() < 1e-14);
        let c = v_basis(6, 2).unwrap();
        let at0 = c.get(0) + 2.0 * c.values()[1..].iter().sum::<f64>();
        assert!((build_poly(&c).eval(0.0).re - at0).abs() < 1e-13);
    }

    #[test]
    fn tail_bound_examples() {
        let n = 16;
        let vn = v_basis(n, n).unwrap();
        for x in [0.1, 0.5, 1.0, 2.0, 3.0] {
            assert!(pointwise_tail_bound_check(&vn, x).unwrap().holds);
        }
        let ones = ConcaveSeq::new(vec![1.0; n + 1]).unwrap();
        let check = pointwise_tail_bound_check(&ones, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(check.ratio.is_finite() && check.holds);
        assert!(pointwise_tail_bound_check(&ones, 0.01).is_err());
    }

    #[test]
    fn tail_integral_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (c, _) = random_concave(12, &mut rng);
        let n = c.n();
        let exact = tail_integral_bound(&c);
        // midpoint rule on a fine grid, away from breakpoints
        let (a, b) = (1.0 / n as f64, std::f64::consts::PI);
        let m = 2_000_000;
        let h = (b - a) / m as f64;
        let integral: f64 = (0..m)
            .map(|i| {
                let x = a + h * (i as f64 + 0.5);
                c.get(tail_index(n, x)) / x * h
            })
            .sum();
        let mean = c.values().iter().sum::<f64>() / n as f64;
        assert!((exact - mean - integral).abs() < 1e-5, "{exact} {}", mean + integral);
    }
}
