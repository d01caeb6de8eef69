//! `L_1`-extremal polynomials: minimise `||T||_1` over real `T` of degree `n`
//! subject to `T^(s)(0) = 1`. The reciprocal of the minimum is the sharp
//! constant of `||T^(s)||_inf <= C ||T||_1`.
//!
//! The discretised problem is solved through its dual,
//! `max L  s.t.  sum_j y_j phi_k(x_j) = L a_k,  |y_j| <= w_j`,
//! whose multipliers are the primal coefficients. The sign pattern found on the
//! grid is then polished by Newton's method on the continuous optimality
//! conditions `int sign(P) phi_k = ||P||_1 a_k`, whose unknowns are the sign
//! changes of `P` in `(0, pi)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::kernels::dirichlet;
use crate::lp::{self, LpOptions, LpProblem};
use crate::quadrature::bisect;
use crate::trigpoly::{grid_node, GridSamples, TrigPoly};

/// Parity-reduced coefficient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `cos kx`, `k = 0..=n` (even `s`)
    Cosine,
    /// `sin kx`, `k = 1..=n` (odd `s`)
    Sine,
}

impl Basis {
    pub fn for_order(s: u32) -> Self {
        if s % 2 == 0 {
            Basis::Cosine
        } else {
            Basis::Sine
        }
    }

    fn frequencies(self, lo: usize, hi: usize) -> Vec<usize> {
        let start = if self == Basis::Sine { lo.max(1) } else { lo };
        (start..=hi).collect()
    }

    fn value(self, k: usize, x: f64) -> f64 {
        match self {
            Basis::Cosine => (k as f64 * x).cos(),
            Basis::Sine => (k as f64 * x).sin(),
        }
    }

    /// `int_a^b phi_k`.
    fn integral(self, k: usize, a: f64, b: f64) -> f64 {
        let kf = k as f64;
        match self {
            Basis::Cosine if k == 0 => b - a,
            Basis::Cosine => ((kf * b).sin() - (kf * a).sin()) / kf,
            Basis::Sine => ((kf * a).cos() - (kf * b).cos()) / kf,
        }
    }

    /// `phi_k^(s)(0)`.
    fn derivative_at_zero(self, k: usize, s: u32) -> f64 {
        if k == 0 {
            return if s == 0 { 1.0 } else { 0.0 };
        }
        let mag = (k as f64).powi(s as i32);
        let sign = match self {
            Basis::Cosine => if (s / 2) % 2 == 0 { 1.0 } else { -1.0 },
            Basis::Sine => if ((s - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 },
        };
        sign * mag
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub x: f64,
    pub slope: f64,
    pub simple: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverDiagnostics {
    pub lp_iterations: usize,
    /// discrete `L_1` norm at the LP optimum
    pub lp_objective: f64,
    pub newton_iterations: usize,
    pub newton_residual: f64,
    /// sign pattern refined to the continuous optimum
    pub polished: bool,
    /// grid of the fallback re-solve when polishing was not possible
    pub fallback_grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSolution {
    pub n: usize,
    pub s: u32,
    pub basis: Basis,
    /// coefficients of `cos kx` (`k = 0..=n`) or `sin kx` (`k = 1..=n`)
    pub coeffs: Vec<f64>,
    pub poly: TrigPoly,
    pub l1_norm: f64,
    pub constant: f64,
    /// sign changes in `(-pi, pi]`, sorted
    pub zeros: Vec<Zero>,
    pub grid: usize,
    pub diagnostics: SolverDiagnostics,
}

/// LP grid used when none is given: `64 (n + 1)`.
pub fn default_grid(n: usize) -> usize {
    64 * (n + 1)
}

fn poly_from_basis(basis: Basis, n: usize, coeffs: &[f64]) -> TrigPoly {
    match basis {
        Basis::Cosine => TrigPoly::from_cos_sin(coeffs, &[]),
        Basis::Sine => {
            let mut t = TrigPoly::from_cos_sin(&[0.0], coeffs);
            if t.degree() < n {
                t = t.add(&TrigPoly::zero(n));
            }
            t
        }
    }
}

fn basis_coeffs(basis: Basis, n: usize, poly: &TrigPoly) -> Vec<f64> {
    match basis {
        Basis::Cosine => (0..=n as i64).map(|k| if k == 0 { poly.coeff(0).re } else { 2.0 * poly.coeff(k).re }).collect(),
        // sin kx = (e^{ikx} - e^{-ikx}) / 2i: c_k = -i b_k / 2
        Basis::Sine => (1..=n as i64).map(|k| -2.0 * poly.coeff(k).im).collect(),
    }
}

/// Discretised dual LP on the half grid `x_j = 2 pi j / M`, `j = 0..=M/2`.
/// Returns `(coefficients normalised to T^(s)(0) = 1, discrete L_1 norm, iterations)`.
fn solve_discrete(n: usize, s: u32, grid: usize) -> Result<(Vec<f64>, f64, usize)> {
    let basis = Basis::for_order(s);
    let freqs = basis.frequencies(0, n);
    let half = grid / 2;
    let h = 2.0 * PI / grid as f64;
    let a: Vec<f64> = freqs.iter().map(|&k| basis.derivative_at_zero(k, s)).collect();
    let amax = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut columns = Vec::with_capacity(half + 2);
    for j in 0..=half {
        let x = h * j as f64;
        columns.push(freqs.iter().map(|&k| basis.value(k, x)).collect::<Vec<_>>());
    }
    // trapezoid weights enter as bounds |y_j| <= w_j
    let weight = |j: usize| if j == 0 || j == half { h } else { 2.0 * h };
    columns.push(a.iter().map(|v| -v / amax).collect());
    let cols = columns.len();
    let mut cost = vec![0.0; cols];
    cost[cols - 1] = 1.0;
    let mut lower: Vec<f64> = (0..cols).map(|j| -weight(j)).collect();
    let mut upper: Vec<f64> = (0..cols).map(weight).collect();
    lower[cols - 1] = f64::NEG_INFINITY;
    upper[cols - 1] = f64::INFINITY;
    let problem = LpProblem { columns, rhs: vec![0.0; freqs.len()], cost, lower, upper };
    let sol = lp::solve(&problem, &LpOptions::default())?;
    let mut coeffs: Vec<f64> = sol.duals.iter().map(|v| -v).collect();
    let value: f64 = coeffs.iter().zip(&a).map(|(c, a)| c * a).sum();
    if value.abs() < 1e-300 {
        return Err(Error::Solver { status: "degenerate".into(), detail: "LP multipliers violate the constraint".into() });
    }
    coeffs.iter_mut().for_each(|c| *c /= value);
    Ok((coeffs, sol.objective / amax, sol.iterations))
}

/// Sign changes of a real polynomial on a half-cell-offset grid of `count`
/// nodes, refined by bisection.
pub fn find_zeros(poly: &TrigPoly, count: usize) -> Vec<Zero> {
    let node = |j: usize| -PI + (j as f64 + 0.5) * 2.0 * PI / count as f64;
    let f = |x: f64| poly.eval(x).re;
    let values: Vec<f64> = (0..count).map(|j| f(node(j))).collect();
    let deriv = poly.derivative(1.0).expect("positive order");
    let dsup = deriv.quasinorm(Exponent::Infinity).map(|e| e.value).unwrap_or(0.0);
    let mut zeros = Vec::new();
    for j in 0..count {
        let next = (j + 1) % count;
        if values[j] == 0.0 || values[j].signum() == values[next].signum() {
            continue;
        }
        let a = node(j);
        let b = if next == 0 { node(0) + 2.0 * PI } else { node(next) };
        let mut x = bisect(f, a, b, 1e-13);
        if x > PI {
            x -= 2.0 * PI;
        }
        let slope = deriv.eval(x).re;
        zeros.push(Zero { x, slope, simple: slope.abs() >= 1e-8 * dsup });
    }
    zeros.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    zeros
}

/// Intervals of constant sign between consecutive zeros, covering one period,
/// with the sign of the polynomial on each.
fn sign_intervals(poly: &TrigPoly, zeros: &[Zero]) -> Vec<(f64, f64, f64)> {
    let mut cuts: Vec<f64> = zeros.iter().map(|z| z.x).collect();
    if cuts.is_empty() {
        cuts.push(-PI);
    }
    let mut out = Vec::with_capacity(cuts.len());
    for i in 0..cuts.len() {
        let a = cuts[i];
        let b = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + 2.0 * PI };
        let sign = poly.eval(0.5 * (a + b)).re.signum();
        out.push((a, b, sign));
    }
    out
}

/// `int_a^b Q` in closed form.
fn integrate_poly(q: &TrigPoly, a: f64, b: f64) -> Complex64 {
    let n = q.degree() as i64;
    let mut acc = q.coeff(0) * (b - a);
    for k in (-n..=n).filter(|&k| k != 0) {
        let kf = k as f64;
        let diff = Complex64::from_polar(1.0, kf * b) - Complex64::from_polar(1.0, kf * a);
        acc += q.coeff(k) * diff / Complex64::new(0.0, kf);
    }
    acc
}

/// `int |P|` by exact integration between consecutive sign changes.
pub fn exact_l1(poly: &TrigPoly, zeros: &[Zero]) -> f64 {
    sign_intervals(poly, zeros).into_iter().map(|(a, b, _)| integrate_poly(poly, a, b).re.abs()).sum()
}

/// Optimality residuals `F_k = 2 int_0^pi sigma phi_k - L a_k` for sign changes
/// `beta` and sign `sigma0` on `(0, beta_1)`, with the Jacobian (row-major).
fn optimality_system(basis: Basis, freqs: &[usize], a: &[f64], beta: &[f64], sigma0: f64, big_l: f64) -> (Vec<f64>, Vec<f64>) {
    let m = beta.len();
    let dim = m + 1;
    let mut cuts = Vec::with_capacity(m + 2);
    cuts.push(0.0);
    cuts.extend_from_slice(beta);
    cuts.push(PI);
    let mut f = vec![0.0; freqs.len()];
    let mut jac = vec![0.0; freqs.len() * dim];
    for (row, &k) in freqs.iter().enumerate() {
        let mut sign = sigma0;
        let mut acc = 0.0;
        for w in cuts.windows(2) {
            acc += sign * basis.integral(k, w[0], w[1]);
            sign = -sign;
        }
        f[row] = 2.0 * acc - big_l * a[row];
        let mut left = sigma0;
        for (i, &b) in beta.iter().enumerate() {
            jac[row * dim + i] = 2.0 * basis.value(k, b) * 2.0 * left;
            left = -left;
        }
        jac[row * dim + m] = -a[row];
    }
    (f, jac)
}

struct Polished {
    poly: TrigPoly,
    l1: f64,
    iterations: usize,
    residual: f64,
}

fn polish(n: usize, s: u32, start: &TrigPoly, l1_guess: f64) -> Option<Polished> {
    let basis = Basis::for_order(s);
    let freqs = basis.frequencies(0, n);
    let expected = match basis {
        Basis::Cosine => n,
        Basis::Sine => n - 1,
    };
    let zeros = find_zeros(start, 64 * (n + 1));
    let mut beta: Vec<f64> = zeros.iter().map(|z| z.x).filter(|&x| x > 1e-9 && x < PI - 1e-9).collect();
    if beta.len() != expected {
        return None;
    }
    let first = beta.first().copied().unwrap_or(PI);
    let sigma0 = start.eval(0.5 * first).re.signum();
    let a: Vec<f64> = freqs.iter().map(|&k| basis.derivative_at_zero(k, s)).collect();
    let amax = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let a: Vec<f64> = a.iter().map(|v| v / amax).collect();
    let mut big_l = l1_guess * amax;
    let norm = |f: &[f64]| f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (mut f, mut jac) = optimality_system(basis, &freqs, &a, &beta, sigma0, big_l);
    let mut iterations = 0;
    while norm(&f) > 1e-14 && iterations < 60 {
        iterations += 1;
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let step = lp::solve_dense(&jac, &rhs)?;
        let current = norm(&f);
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-6 {
            let trial: Vec<f64> = beta.iter().zip(&step).map(|(b, d)| b + t * d).collect();
            let ordered = trial.windows(2).all(|w| w[0] < w[1])
                && trial.first().map_or(true, |&x| x > 0.0)
                && trial.last().map_or(true, |&x| x < PI);
            if ordered {
                let trial_l = big_l + t * step[beta.len()];
                let (tf, tj) = optimality_system(basis, &freqs, &a, &trial, sigma0, trial_l);
                if norm(&tf) < current || norm(&tf) <= 1e-14 {
                    beta = trial;
                    big_l = trial_l;
                    f = tf;
                    jac = tj;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let residual = norm(&f);
    if residual > 1e-11 {
        return None;
    }
    // P = C prod (cos x - cos beta_i), times sin x for the sine basis
    let count = (4 * n + 8).next_power_of_two();
    let values: Vec<Complex64> = (0..count)
        .map(|j| {
            let x = grid_node(j, count);
            let mut v: f64 = beta.iter().map(|b| x.cos() - b.cos()).product();
            if basis == Basis::Sine {
                v *= x.sin();
            }
            Complex64::new(sigma0 * v, 0.0)
        })
        .collect();
    let raw = TrigPoly::from_samples(&GridSamples { count, values }, n).ok()?;
    let raw = raw.parity_project(crate::trigpoly::ParityKind::Real);
    let d0 = raw.eval_derivative(s as f64, 0.0).re;
    if !(d0 > 0.0) {
        return None;
    }
    let poly = raw.scale(Complex64::new(1.0 / d0, 0.0));
    let zeros = find_zeros(&poly, 64 * (n + 1));
    let l1 = exact_l1(&poly, &zeros);
    let from_newton = big_l / amax;
    if (l1 - from_newton).abs() > 1e-8 * l1 {
        return None;
    }
    Some(Polished { poly, l1, iterations, residual })
}

/// Minimiser of `||T||_1` subject to `T^(s)(0) = 1` over degree-`n` polynomials.
pub fn solve_extremal(n: usize, s: u32, grid: Option<usize>) -> Result<ExtremalSolution> {
    if n == 0 {
        if s > 0 {
            return Err(Error::Infeasible(format!("every derivative of order {s} of a constant vanishes")));
        }
        let poly = TrigPoly::from_real(&[1.0])?;
        return Ok(ExtremalSolution {
            n,
            s,
            basis: Basis::Cosine,
            coeffs: vec![1.0],
            poly,
            l1_norm: 2.0 * PI,
            constant: 1.0 / (2.0 * PI),
            zeros: vec![],
            grid: 0,
            diagnostics: SolverDiagnostics {
                lp_iterations: 0,
                lp_objective: 2.0 * PI,
                newton_iterations: 0,
                newton_residual: 0.0,
                polished: true,
                fallback_grid: None,
            },
        });
    }
    let basis = Basis::for_order(s);
    let grid = grid.unwrap_or_else(|| default_grid(n));
    if grid < 4 * (n + 1) || grid % 2 != 0 {
        return Err(Error::Undersampled { grid, degree: n, needed: 4 * (n + 1) });
    }
    let (coeffs, lp_objective, lp_iterations) = solve_discrete(n, s, grid)?;
    let start = poly_from_basis(basis, n, &coeffs);
    let mut diagnostics = SolverDiagnostics {
        lp_iterations,
        lp_objective,
        newton_iterations: 0,
        newton_residual: f64::NAN,
        polished: false,
        fallback_grid: None,
    };
    let (poly, l1) = match polish(n, s, &start, lp_objective) {
        Some(p) => {
            diagnostics.newton_iterations = p.iterations;
            diagnostics.newton_residual = p.residual;
            diagnostics.polished = true;
            (p.poly, p.l1)
        }
        None => {
            let fine = 8 * grid;
            let (coeffs, _, iters) = solve_discrete(n, s, fine)?;
            diagnostics.lp_iterations += iters;
            diagnostics.fallback_grid = Some(fine);
            let poly = poly_from_basis(basis, n, &coeffs);
            let zeros = find_zeros(&poly, 64 * (n + 1));
            let l1 = exact_l1(&poly, &zeros);
            (poly, l1)
        }
    };
    let zeros = find_zeros(&poly, 64 * (n + 1));
    Ok(ExtremalSolution {
        n,
        s,
        basis,
        coeffs: basis_coeffs(basis, n, &poly),
        poly,
        l1_norm: l1,
        constant: 1.0 / l1,
        zeros,
        grid,
        diagnostics,
    })
}

/// `1 / ||P_n||_1`, the sharp constant of `||T^(s)||_inf <= C ||T||_1`.
pub fn bn_constant_1_inf(n: usize, s: u32) -> Result<f64> {
    Ok(solve_extremal(n, s, None)?.constant)
}

/// Sign changes of the solution; for `s = 0` exactly `2n` simple zeros are
/// required.
pub fn zeros_of_extremal(sol: &ExtremalSolution) -> Result<Vec<Zero>> {
    let zeros = find_zeros(&sol.poly, 64 * (sol.n + 1));
    if sol.s == 0 {
        if zeros.len() != 2 * sol.n {
            return Err(Error::Structure(format!("found {} sign changes, expected {}", zeros.len(), 2 * sol.n)));
        }
        if let Some(z) = zeros.iter().find(|z| !z.simple) {
            return Err(Error::Structure(format!("zero at {} is not simple (slope {:e})", z.x, z.slope)));
        }
    }
    Ok(zeros)
}

fn check_zeros(sol: &ExtremalSolution) -> Result<()> {
    let sup = sol.poly.quasinorm(Exponent::Infinity)?.value;
    for z in &sol.zeros {
        let v = sol.poly.eval(z.x).norm();
        if v > 1e-8 * sup {
            return Err(Error::Accuracy(format!("|P({})| = {v:e} is not a located zero", z.x)));
        }
    }
    Ok(())
}

/// `|int sign(P) Q - ||P||_1 Q^(s)(0)|` with the integral computed exactly
/// between consecutive zeros of `P`.
pub fn sign_identity_residual(sol: &ExtremalSolution, q: &TrigPoly) -> Result<f64> {
    if q.degree() > sol.n {
        return Err(Error::Domain(format!("test polynomial degree {} exceeds n = {}", q.degree(), sol.n)));
    }
    check_zeros(sol)?;
    let lhs: Complex64 =
        sign_intervals(&sol.poly, &sol.zeros).into_iter().map(|(a, b, sign)| integrate_poly(q, a, b) * sign).sum();
    let rhs = q.eval_derivative(sol.s as f64, 0.0) * sol.l1_norm;
    Ok((lhs - rhs).norm())
}

/// For `s = 0`: `|2 sign(P(pi)) sum_k (-1)^{k+1} Q(alpha_k) - ||P||_1 Q'(0)|`.
pub fn alternation_residual(sol: &ExtremalSolution, q: &TrigPoly) -> Result<f64> {
    if sol.s != 0 {
        return Err(Error::Precondition("the alternation identity is stated for s = 0".into()));
    }
    check_zeros(sol)?;
    let sign = sol.poly.eval(PI).re.signum();
    let sum: Complex64 = sol
        .zeros
        .iter()
        .enumerate()
        .map(|(i, z)| if i % 2 == 0 { q.eval(z.x) } else { -q.eval(z.x) })
        .sum();
    let rhs = q.eval_derivative(1.0, 0.0) * sol.l1_norm;
    Ok((sum * (2.0 * sign) - rhs).norm())
}

/// Uniform distance from `D_n^(s) / (2 pi)` to `span{e^{ikx}: n < |k| <= N}`,
/// by the dual LP `max sum h_j mu_j` over measures on a grid of `[0, pi]`
/// annihilating the band, `sum |mu_j| <= 1`. `grid` is the number of cells
/// of the half grid (default `32 (N + 1)`).
pub fn dist_to_high_frequencies(n: usize, s: u32, n_trunc: usize, grid: Option<usize>) -> Result<f64> {
    if n_trunc <= n {
        return Err(Error::Domain(format!("truncation N = {n_trunc} must exceed n = {n}")));
    }
    let basis = Basis::for_order(s);
    let cells = grid.unwrap_or(32 * (n_trunc + 1));
    let h_poly = dirichlet(n as i64)?.derivative(s as f64)?.scale(Complex64::new(1.0 / (2.0 * PI), 0.0));
    let freqs = basis.frequencies(n + 1, n_trunc);
    let rows = freqs.len() + 1;
    let mut columns = Vec::with_capacity(2 * cells + 3);
    let mut cost = Vec::with_capacity(2 * cells + 3);
    for j in 0..=cells {
        let x = PI * j as f64 / cells as f64;
        let hv = h_poly.eval(x).re;
        let band: Vec<f64> = freqs.iter().map(|&k| basis.value(k, x)).collect();
        for sign in [1.0, -1.0] {
            let mut col: Vec<f64> = band.iter().map(|v| sign * v).collect();
            col.push(1.0);
            columns.push(col);
            cost.push(sign * hv);
        }
    }
    let mut slack = vec![0.0; rows];
    slack[rows - 1] = 1.0;
    columns.push(slack);
    cost.push(0.0);
    let cols = columns.len();
    let mut rhs = vec![0.0; rows];
    rhs[rows - 1] = 1.0;
    let problem = LpProblem { columns, rhs, cost, lower: vec![0.0; cols], upper: vec![1.0; cols] };
    Ok(lp::solve(&problem, &LpOptions::default())?.objective)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_case() {
        let sol = solve_extremal(0, 0, None).unwrap();
        assert!((sol.l1_norm - 2.0 * PI).abs() < 1e-15);
        assert!((bn_constant_1_inf(0, 0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!(matches!(solve_extremal(0, 1, None), Err(Error::Infeasible(_))));
    }

    #[test]
    fn constraint_and_polish() {
        for (n, s) in [(1, 0), (2, 1), (3, 2), (4, 3)] {
            let sol = solve_extremal(n, s, None).unwrap();
            let d = sol.poly.eval_derivative(s as f64, 0.0);
            assert!((d - Complex64::new(1.0, 0.0)).norm() < 1e-9, "n={n} s={s}: {d}");
            assert!(sol.diagnostics.polished, "n={n} s={s}: {:?}", sol.diagnostics);
            assert!(sol.poly.symmetry().real);
        }
    }

    #[test]
    fn degree_one_matches_random_search() {
        use rand::{Rng, SeedableRng};
        let sol = solve_extremal(1, 0, None).unwrap();
        assert_eq!(zeros_of_extremal(&sol).unwrap().len(), 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut best = 0.0f64;
        for _ in 0..20_000 {
            let t = TrigPoly::from_cos_sin(&[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], &[rng.gen_range(-1.0..1.0)]);
            let r = t.quasinorm(Exponent::Infinity).unwrap().value / t.quasinorm(Exponent::Finite(1.0)).unwrap().value;
            best = best.max(r);
        }
        assert!(best <= sol.constant * (1.0 + 1e-6));
        assert!(best >= sol.constant * (1.0 - 1e-2), "{best} vs {}", sol.constant);
    }

    #[test]
    fn sign_identity_on_self_and_constants() {
        let sol = solve_extremal(5, 2, None).unwrap();
        assert!(sign_identity_residual(&sol, &sol.poly).unwrap() < 1e-9);
        let one = TrigPoly::from_real(&[1.0]).unwrap();
        assert!(sign_identity_residual(&sol, &one).unwrap() < 1e-9);
    }

    #[test]
    fn distance_examples() {
        let d0 = dist_to_high_frequencies(0, 0, 3, None).unwrap();
        assert!((d0 - 1.0 / (2.0 * PI)).abs() < 1e-9);
        let a = dist_to_high_frequencies(2, 0, 4, Some(512)).unwrap();
        let b = dist_to_high_frequencies(2, 0, 8, Some(512)).unwrap();
        assert!(b <= a + 1e-12);
    }
}
