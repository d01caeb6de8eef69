//! Dense bounded-variable primal simplex.
//!
//! Solves `max c.x  s.t.  A x = b,  lo <= x <= up` where bounds may be
//! infinite. Two phases with artificial variables, an explicit basis inverse
//! kept by product-form updates and refactorised periodically, Dantzig pricing,
//! a Harris two-pass ratio test, bound flips, and Bland's rule as a fallback
//! when the objective stalls.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LpProblem {
    /// columns of `A`, each of length `rows`
    pub columns: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub cost: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl std::fmt::Display for LpStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::IterationLimit => "iteration limit",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// simplex multipliers `y = c_B B^{-1}` of the equality rows
    pub duals: Vec<f64>,
    pub status: LpStatus,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    pub optimality_tol: f64,
    pub feasibility_tol: f64,
    pub pivot_tol: f64,
    pub refactor_every: usize,
    pub stall_limit: usize,
    pub max_iterations: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            optimality_tol: 1e-10,
            feasibility_tol: 1e-9,
            pivot_tol: 1e-9,
            refactor_every: 64,
            stall_limit: 200,
            max_iterations: 200_000,
        }
    }
}

struct Simplex<'a> {
    p: &'a LpProblem,
    m: usize,
    n: usize,
    art_sign: Vec<f64>,
    lo: Vec<f64>,
    up: Vec<f64>,
    x: Vec<f64>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    binv: Vec<f64>,
    opts: LpOptions,
    iterations: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl<'a> Simplex<'a> {
    fn column(&self, j: usize, out: &mut [f64]) {
        if j < self.n {
            out.copy_from_slice(&self.p.columns[j]);
        } else {
            out.iter_mut().for_each(|v| *v = 0.0);
            out[j - self.n] = self.art_sign[j - self.n];
        }
    }

    fn dot_column(&self, y: &[f64], j: usize) -> f64 {
        if j < self.n {
            self.p.columns[j].iter().zip(y).map(|(a, b)| a * b).sum()
        } else {
            y[j - self.n] * self.art_sign[j - self.n]
        }
    }

    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        let mut mat = vec![0.0; m * m];
        let mut col = vec![0.0; m];
        for (k, &j) in self.basis.iter().enumerate() {
            self.column(j, &mut col);
            for i in 0..m {
                mat[i * m + k] = col[i];
            }
        }
        self.binv = invert(&mat, m).ok_or_else(|| Error::Solver {
            status: "singular basis".into(),
            detail: format!("basis matrix of order {m} lost rank during refactorisation"),
        })?;
        // x_B = B^{-1} (b - N x_N)
        let mut r = self.p.rhs.clone();
        for j in 0..self.n + self.m {
            if self.position[j].is_none() && self.x[j] != 0.0 {
                self.column(j, &mut col);
                for i in 0..m {
                    r[i] -= col[i] * self.x[j];
                }
            }
        }
        for i in 0..m {
            let v: f64 = (0..m).map(|k| self.binv[i * m + k] * r[k]).sum();
            self.x[self.basis[i]] = v;
        }
        Ok(())
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (i, &j) in self.basis.iter().enumerate() {
            let cb = cost[j];
            if cb != 0.0 {
                for k in 0..m {
                    y[k] += cb * self.binv[i * m + k];
                }
            }
        }
        y
    }

    fn step(&mut self, cost: &[f64], bland: bool) -> Step {
        let m = self.m;
        let y = self.duals(cost);
        // pricing
        let mut entering = None;
        let mut best = 0.0;
        for j in 0..self.n + self.m {
            if self.position[j].is_some() || self.lo[j] == self.up[j] {
                continue;
            }
            let d = cost[j] - self.dot_column(&y, j);
            let eligible = (d > self.opts.optimality_tol && self.x[j] < self.up[j])
                || (d < -self.opts.optimality_tol && self.x[j] > self.lo[j]);
            if !eligible {
                continue;
            }
            if bland {
                entering = Some((j, d));
                break;
            }
            if d.abs() > best {
                best = d.abs();
                entering = Some((j, d));
            }
        }
        let Some((q, d)) = entering else {
            return Step::Optimal;
        };
        let dir = d.signum();
        let mut col = vec![0.0; m];
        self.column(q, &mut col);
        let alpha: Vec<f64> = (0..m).map(|i| (0..m).map(|k| self.binv[i * m + k] * col[k]).sum()).collect();

        let delta = self.opts.feasibility_tol;
        let ratio = |i: usize, slack: f64| -> Option<f64> {
            let g = dir * alpha[i];
            if g.abs() <= self.opts.pivot_tol {
                return None;
            }
            let b = self.basis[i];
            if g > 0.0 {
                self.lo[b].is_finite().then(|| (self.x[b] - self.lo[b] + slack) / g)
            } else {
                self.up[b].is_finite().then(|| (self.up[b] - self.x[b] + slack) / -g)
            }
        };
        let flip = if dir > 0.0 { self.up[q] - self.x[q] } else { self.x[q] - self.lo[q] };
        let mut leave: Option<(usize, f64)> = None;
        if bland {
            let mut best_t = f64::INFINITY;
            for i in 0..m {
                if let Some(t) = ratio(i, 0.0) {
                    let t = t.max(0.0);
                    let better = t < best_t - 1e-14
                        || (t <= best_t + 1e-14 && leave.is_some_and(|(r, _)| self.basis[i] < self.basis[r]));
                    if better {
                        best_t = t;
                        leave = Some((i, t));
                    }
                }
            }
        } else {
            let bound = (0..m).filter_map(|i| ratio(i, delta)).fold(f64::INFINITY, f64::min);
            if bound.is_finite() {
                let mut best_pivot = 0.0;
                for i in 0..m {
                    if let Some(t) = ratio(i, 0.0) {
                        if t <= bound && alpha[i].abs() > best_pivot {
                            best_pivot = alpha[i].abs();
                            leave = Some((i, t.max(0.0)));
                        }
                    }
                }
            }
        }
        let t_leave = leave.map(|(_, t)| t).unwrap_or(f64::INFINITY);
        if !flip.is_finite() && leave.is_none() {
            return Step::Unbounded;
        }
        self.iterations += 1;
        if flip <= t_leave {
            // bound flip, basis unchanged
            let t = flip;
            self.x[q] = if dir > 0.0 { self.up[q] } else { self.lo[q] };
            for i in 0..m {
                self.x[self.basis[i]] -= dir * t * alpha[i];
            }
            return Step::Moved;
        }
        let (r, t) = leave.expect("finite ratio");
        self.x[q] += dir * t;
        for i in 0..m {
            self.x[self.basis[i]] -= dir * t * alpha[i];
        }
        let out = self.basis[r];
        self.x[out] = if dir * alpha[r] > 0.0 { self.lo[out] } else { self.up[out] };
        self.position[out] = None;
        self.position[q] = Some(r);
        self.basis[r] = q;
        // product-form update of the inverse
        let piv = alpha[r];
        for k in 0..m {
            self.binv[r * m + k] /= piv;
        }
        for i in 0..m {
            if i == r || alpha[i] == 0.0 {
                continue;
            }
            let f = alpha[i];
            for k in 0..m {
                self.binv[i * m + k] -= f * self.binv[r * m + k];
            }
        }
        Step::Moved
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        cost.iter().zip(&self.x).map(|(c, x)| c * x).sum()
    }

    fn run(&mut self, cost: &[f64]) -> Result<LpStatus> {
        let mut best = self.objective(cost);
        let mut stall = 0;
        let mut since_refactor = 0;
        loop {
            if self.iterations >= self.opts.max_iterations {
                return Ok(LpStatus::IterationLimit);
            }
            let bland = stall >= self.opts.stall_limit;
            match self.step(cost, bland) {
                Step::Optimal => {
                    // confirm on a fresh factorisation
                    if since_refactor > 0 {
                        self.refactor()?;
                        since_refactor = 0;
                        continue;
                    }
                    return Ok(LpStatus::Optimal);
                }
                Step::Unbounded => return Ok(LpStatus::Unbounded),
                Step::Moved => {}
            }
            since_refactor += 1;
            if since_refactor >= self.opts.refactor_every {
                self.refactor()?;
                since_refactor = 0;
            }
            let obj = self.objective(cost);
            if obj > best + 1e-12 * (1.0 + best.abs()) {
                best = obj;
                stall = 0;
            } else {
                stall += 1;
            }
        }
    }
}

/// Inverse of a dense row-major `m x m` matrix by Gauss-Jordan elimination.
pub fn invert(mat: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut a = mat.to_vec();
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for c in 0..m {
        let piv = (c..m).max_by(|&i, &j| a[i * m + c].abs().partial_cmp(&a[j * m + c].abs()).unwrap())?;
        if a[piv * m + c].abs() < 1e-14 {
            return None;
        }
        if piv != c {
            for k in 0..m {
                a.swap(piv * m + k, c * m + k);
                inv.swap(piv * m + k, c * m + k);
            }
        }
        let d = a[c * m + c];
        for k in 0..m {
            a[c * m + k] /= d;
            inv[c * m + k] /= d;
        }
        for i in 0..m {
            if i == c {
                continue;
            }
            let f = a[i * m + c];
            if f == 0.0 {
                continue;
            }
            for k in 0..m {
                a[i * m + k] -= f * a[c * m + k];
                inv[i * m + k] -= f * inv[c * m + k];
            }
        }
    }
    Some(inv)
}

/// Solves a dense square system `A x = b` (row-major) by partial pivoting.
pub fn solve_dense(mat: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rhs.len();
    let mut a = mat.to_vec();
    let mut b = rhs.to_vec();
    for c in 0..m {
        let piv = (c..m).max_by(|&i, &j| a[i * m + c].abs().partial_cmp(&a[j * m + c].abs()).unwrap())?;
        if a[piv * m + c] == 0.0 {
            return None;
        }
        if piv != c {
            for k in 0..m {
                a.swap(piv * m + k, c * m + k);
            }
            b.swap(piv, c);
        }
        for i in c + 1..m {
            let f = a[i * m + c] / a[c * m + c];
            if f == 0.0 {
                continue;
            }
            for k in c..m {
                a[i * m + k] -= f * a[c * m + k];
            }
            b[i] -= f * b[c];
        }
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|k| a[i * m + k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i * m + i];
    }
    Some(x)
}

/// Solves the LP; non-optimal outcomes are returned as solver errors.
pub fn solve(problem: &LpProblem, opts: &LpOptions) -> Result<LpSolution> {
    let m = problem.rhs.len();
    let n = problem.columns.len();
    if problem.cost.len() != n || problem.lower.len() != n || problem.upper.len() != n {
        return Err(Error::Malformed("LP dimensions disagree".into()));
    }
    if problem.columns.iter().any(|c| c.len() != m) {
        return Err(Error::Malformed("LP column of wrong length".into()));
    }
    let mut x = vec![0.0; n + m];
    for j in 0..n {
        let (l, u) = (problem.lower[j], problem.upper[j]);
        if l > u {
            return Err(Error::Infeasible(format!("variable {j} has empty bounds")));
        }
        // the point of the box nearest the origin; nonbasic variables may
        // start strictly inside their bounds
        x[j] = 0.0f64.clamp(l, u);
    }
    let mut residual = problem.rhs.clone();
    for j in 0..n {
        if x[j] != 0.0 {
            for (r, a) in residual.iter_mut().zip(&problem.columns[j]) {
                *r -= a * x[j];
            }
        }
    }
    let art_sign: Vec<f64> = residual.iter().map(|&r| if r >= 0.0 { 1.0 } else { -1.0 }).collect();
    for i in 0..m {
        x[n + i] = residual[i].abs();
    }
    let mut lo = problem.lower.clone();
    let mut up = problem.upper.clone();
    lo.extend(std::iter::repeat(0.0).take(m));
    up.extend(std::iter::repeat(f64::INFINITY).take(m));
    let mut binv = vec![0.0; m * m];
    for i in 0..m {
        binv[i * m + i] = art_sign[i];
    }
    let mut position = vec![None; n + m];
    for i in 0..m {
        position[n + i] = Some(i);
    }
    let mut sx = Simplex {
        p: problem,
        m,
        n,
        art_sign,
        lo,
        up,
        x,
        basis: (n..n + m).collect(),
        position,
        binv,
        opts: *opts,
        iterations: 0,
    };

    let mut phase1 = vec![0.0; n + m];
    for c in &mut phase1[n..] {
        *c = -1.0;
    }
    let status = if residual.iter().all(|&r| r == 0.0) { LpStatus::Optimal } else { sx.run(&phase1)? };
    let scale = 1.0 + problem.rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let infeasibility: f64 = sx.x[n..].iter().sum();
    if status != LpStatus::Optimal || infeasibility > opts.feasibility_tol * scale * (m as f64).sqrt() {
        return Err(Error::Solver {
            status: LpStatus::Infeasible.to_string(),
            detail: format!("phase one ended ({status}) with infeasibility {infeasibility:e}"),
        });
    }
    for i in 0..m {
        sx.up[n + i] = 0.0;
        if sx.position[n + i].is_none() {
            sx.x[n + i] = 0.0;
        }
    }
    let mut cost = problem.cost.clone();
    cost.extend(std::iter::repeat(0.0).take(m));
    let status = sx.run(&cost)?;
    if status != LpStatus::Optimal {
        return Err(Error::Solver { status: status.to_string(), detail: format!("after {} iterations", sx.iterations) });
    }
    let duals = sx.duals(&cost);
    let objective = sx.objective(&cost);
    sx.x.truncate(n);
    Ok(LpSolution { x: sx.x, objective, duals, status, iterations: sx.iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(columns: Vec<Vec<f64>>, rhs: Vec<f64>, cost: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> LpProblem {
        LpProblem { columns, rhs, cost, lower, upper }
    }

    #[test]
    fn small_standard_form() {
        // max 3x + 2y, x + y + s1 = 4, x + 3y + s2 = 6, all >= 0
        let inf = f64::INFINITY;
        let p = lp(
            vec![vec![1.0, 1.0], vec![1.0, 3.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![4.0, 6.0],
            vec![3.0, 2.0, 0.0, 0.0],
            vec![0.0; 4],
            vec![inf; 4],
        );
        let s = solve(&p, &LpOptions::default()).unwrap();
        assert!((s.objective - 12.0).abs() < 1e-9);
        assert!((s.x[0] - 4.0).abs() < 1e-9);
        // dual of the first row is 3
        assert!((s.duals[0] - 3.0).abs() < 1e-9 && s.duals[1].abs() < 1e-9);
    }

    #[test]
    fn boxed_and_free_variables() {
        // max x + y + z, x + y - z = 1, x in [0, 2], y in [-1, 1], z free with z <= 0.5 via row 2
        // row 2: z + w = 0.5, w >= 0
        let inf = f64::INFINITY;
        let p = lp(
            vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![-1.0, 1.0], vec![0.0, 1.0]],
            vec![1.0, 0.5],
            vec![1.0, 1.0, 1.0, 0.0],
            vec![0.0, -1.0, -inf, 0.0],
            vec![2.0, 1.0, inf, inf],
        );
        let s = solve(&p, &LpOptions::default()).unwrap();
        // best: z = 0.5, x + y = 1.5, objective 2
        assert!((s.objective - 2.0).abs() < 1e-9, "{}", s.objective);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let inf = f64::INFINITY;
        let p = lp(vec![vec![1.0]], vec![-1.0], vec![1.0], vec![0.0], vec![inf]);
        assert!(matches!(solve(&p, &LpOptions::default()), Err(Error::Solver { .. })));
        let p = lp(vec![vec![1.0], vec![-1.0]], vec![0.0], vec![1.0, 0.0], vec![0.0, 0.0], vec![inf, inf]);
        match solve(&p, &LpOptions::default()) {
            Err(Error::Solver { status, .. }) => assert_eq!(status, "unbounded"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn l1_fit_by_bounded_dual() {
        // min |t - 1| + |t - 2| + |t - 10| has value 9 (median t = 2); its dual is
        // max sum_j y_j a_j  s.t. sum_j y_j = 0, y in [-1, 1]
        let a = [1.0, 2.0, 10.0];
        let p = lp(vec![vec![1.0]; 3], vec![0.0], a.to_vec(), vec![-1.0; 3], vec![1.0; 3]);
        let s = solve(&p, &LpOptions::default()).unwrap();
        assert!((s.objective - 9.0).abs() < 1e-9);
        assert!((s.duals[0] - 2.0).abs() < 1e-9, "median recovered from the multiplier");
    }

    #[test]
    fn dense_helpers() {
        let a = [4.0, 1.0, 2.0, 3.0];
        let inv = invert(&a, 2).unwrap();
        assert!((inv[0] - 0.3).abs() < 1e-15 && (inv[1] + 0.1).abs() < 1e-15);
        let x = solve_dense(&a, &[1.0, 2.0]).unwrap();
        assert!((4.0 * x[0] + x[1] - 1.0).abs() < 1e-14 && (2.0 * x[0] + 3.0 * x[1] - 2.0).abs() < 1e-14);
    }
}
