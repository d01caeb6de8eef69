//! Lower-bound witnesses for `||T^(s)||_q / ||T||_p` and their normalisation
//! against the two-sided envelopes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bump::{self, BumpTransform, QuadOptions};
use crate::concave::{build_poly, concave_envelope, v_basis};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::kernels::jackson;
use crate::trigpoly::TrigPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessId {
    Exponential,
    ModulatedJackson,
    ConcaveTnl,
    EntireBump,
}

impl WitnessId {
    pub const ALL: [WitnessId; 4] =
        [WitnessId::Exponential, WitnessId::ModulatedJackson, WitnessId::ConcaveTnl, WitnessId::EntireBump];

    pub fn as_str(self) -> &'static str {
        match self {
            WitnessId::Exponential => "exponential",
            WitnessId::ModulatedJackson => "modulated_jackson",
            WitnessId::ConcaveTnl => "concave_tnl",
            WitnessId::EntireBump => "entire_bump",
        }
    }
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WitnessId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessId::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown witness '{s}'")))
    }
}

/// One witness evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    /// 0 for entire-function witnesses
    pub n: usize,
    pub s: f64,
    pub p: Exponent,
    pub q: Exponent,
    pub witness: WitnessId,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub normalized: f64,
    pub grid_numerator: usize,
    pub grid_denominator: usize,
    /// witness-specific parameters (`r`, `N`, `l`, ...)
    pub params: Vec<(&'static str, f64)>,
}

impl RatioReport {
    fn assemble(
        n: usize,
        s: f64,
        p: Exponent,
        q: Exponent,
        witness: WitnessId,
        numerator: (f64, usize),
        denominator: (f64, usize),
        params: Vec<(&'static str, f64)>,
    ) -> Self {
        let ratio = numerator.0 / denominator.0;
        let normalized = ratio / envelope(witness, n, s, p, q);
        RatioReport {
            n,
            s,
            p,
            q,
            witness,
            numerator: numerator.0,
            denominator: denominator.0,
            ratio,
            normalized,
            grid_numerator: numerator.1,
            grid_denominator: denominator.1,
            params,
        }
    }

    /// Larger of the two grids, as recorded in sweep output.
    pub fn grid(&self) -> usize {
        self.grid_numerator.max(self.grid_denominator)
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }
}

/// `n^s (1 + (n/s)^{1/p - 1/q})`.
pub fn trig_envelope(n: usize, s: f64, p: Exponent, q: Exponent) -> f64 {
    let nf = n as f64;
    nf.powf(s) * (1.0 + (nf / s).powf(p.recip() - q.recip()))
}

/// `s^{1/q - 1/p}`.
pub fn entire_envelope(s: f64, p: Exponent, q: Exponent) -> f64 {
    s.powf(q.recip() - p.recip())
}

pub fn envelope(witness: WitnessId, n: usize, s: f64, p: Exponent, q: Exponent) -> f64 {
    match witness {
        WitnessId::Exponential | WitnessId::ModulatedJackson => trig_envelope(n, s, p, q),
        WitnessId::ConcaveTnl => concave_envelope(n, s),
        WitnessId::EntireBump => entire_envelope(s, p, q),
    }
}

/// Ratio divided by the witness's envelope.
pub fn normalize_ratio(report: &RatioReport) -> f64 {
    report.ratio / envelope(report.witness, report.n, report.s, report.p, report.q)
}

fn check_pq(p: Exponent, q: Exponent) -> Result<()> {
    if let Exponent::Finite(v) = p {
        if !(v > 0.0) {
            return Err(Error::Domain(format!("p must be positive, got {v}")));
        }
    } else {
        return Err(Error::Domain("p must be finite".into()));
    }
    if !(p < q) {
        return Err(Error::Domain(format!("need p < q, got p={p}, q={q}")));
    }
    Ok(())
}

fn norm_pair(
    t: &TrigPoly,
    s: f64,
    p: Exponent,
    q: Exponent,
    grid: Option<usize>,
) -> Result<((f64, usize), (f64, usize))> {
    let d = t.derivative(s)?;
    let (num, den) = match grid {
        Some(m) => (d.quasinorm_with_grid(q, m)?, t.quasinorm_with_grid(p, m)?),
        None => (d.quasinorm(q)?, t.quasinorm(p)?),
    };
    Ok(((num.value, num.grid), (den.value, den.grid)))
}

/// `e^{inx}`: ratio `n^s (2 pi)^{1/q - 1/p}`.
pub fn exponential_witness(n: usize, s: f64, p: Exponent, q: Exponent) -> Result<RatioReport> {
    exponential_on_grid(n, s, p, q, None)
}

fn exponential_on_grid(n: usize, s: f64, p: Exponent, q: Exponent, grid: Option<usize>) -> Result<RatioReport> {
    check_pq(p, q)?;
    if n < 1 {
        return Err(Error::Domain("exponential witness needs n >= 1".into()));
    }
    let t = TrigPoly::exponential(n as i64);
    let (num, den) = norm_pair(&t, s, p, q, grid)?;
    Ok(RatioReport::assemble(n, s, p, q, WitnessId::Exponential, num, den, vec![]))
}

/// Smallest integer `r` with `p r > 1`.
pub fn jackson_power(p: f64) -> u32 {
    let mut r = 1u32;
    while p * r as f64 <= 1.0 {
        r += 1;
    }
    r
}

/// `J_{r,N}(x) e^{i(n - rN)x}` with `N = floor(n/(rs))`; needs `n > 4rs`, `s >= 2`.
pub fn modulated_jackson_witness(n: usize, s: f64, p: Exponent, q: Exponent) -> Result<RatioReport> {
    modulated_jackson_on_grid(n, s, p, q, None)
}

fn modulated_jackson_on_grid(n: usize, s: f64, p: Exponent, q: Exponent, grid: Option<usize>) -> Result<RatioReport> {
    check_pq(p, q)?;
    let r = jackson_power(p.value());
    if s < 2.0 {
        return Err(Error::Precondition(format!("modulated Jackson witness needs s >= 2, got s={s}")));
    }
    if n as f64 <= 4.0 * r as f64 * s {
        return Err(Error::Precondition(format!(
            "n={n} <= 4rs={}; use the exponential witness in this range",
            4.0 * r as f64 * s
        )));
    }
    let big_n = (n as f64 / (r as f64 * s)).floor() as usize;
    let t = jackson(r, big_n)?.modulate((n - r as usize * big_n) as i64);
    debug_assert!(t.degree() <= n);
    let (num, den) = norm_pair(&t, s, p, q, grid)?;
    Ok(RatioReport::assemble(
        n,
        s,
        p,
        q,
        WitnessId::ModulatedJackson,
        num,
        den,
        vec![("r", r as f64), ("N", big_n as f64)],
    ))
}

/// Index of the concave witness: `l = n` when `n <= s`, else `1 + floor(n(1 - 1/s))`.
pub fn concave_witness_index(n: usize, s: u32) -> usize {
    if n <= s as usize {
        n
    } else {
        1 + (n as f64 * (1.0 - 1.0 / s as f64)).floor() as usize
    }
}

fn concave_even(n: usize, s: u32, grid: Option<usize>) -> Result<(f64, f64, usize, usize)> {
    let l = concave_witness_index(n, s);
    let v = v_basis(n, l)?;
    // nonnegative cosine coefficients: the sup of T^(s) is attained at 0
    let numerator: f64 = (1..=n).map(|k| 2.0 * (k as f64).powi(s as i32) * v.get(k)).sum();
    let t = build_poly(&v);
    let den = match grid {
        Some(m) => t.quasinorm_with_grid(Exponent::Finite(1.0), m)?,
        None => t.quasinorm(Exponent::Finite(1.0))?,
    };
    Ok((numerator, den.value, den.grid, l))
}

/// `T_{n,l} = build_poly(v_l)` at `p = 1`, `q = inf`. Odd `s` reports the
/// order-`s+1` ratio divided by `n` (Bernstein's inequality).
pub fn concave_witness(n: usize, s: u32) -> Result<RatioReport> {
    concave_on_grid(n, s, None)
}

fn concave_on_grid(n: usize, s: u32, grid: Option<usize>) -> Result<RatioReport> {
    if n < 1 || s < 1 {
        return Err(Error::Domain(format!("concave witness needs n, s >= 1, got n={n}, s={s}")));
    }
    let p = Exponent::Finite(1.0);
    let q = Exponent::Infinity;
    let sf = s as f64;
    if s % 2 == 0 {
        let (num, den, grid, l) = concave_even(n, s, grid)?;
        Ok(RatioReport::assemble(n, sf, p, q, WitnessId::ConcaveTnl, (num, 0), (den, grid), vec![("l", l as f64)]))
    } else {
        let (num, den, grid, l) = concave_even(n, s + 1, grid)?;
        Ok(RatioReport::assemble(
            n,
            sf,
            p,
            q,
            WitnessId::ConcaveTnl,
            (num / n as f64, 0),
            (den, grid),
            vec![("l", l as f64), ("bernstein_reduction", 1.0)],
        ))
    }
}

/// `hat(phi_s)` with `phi_s(x) = s phi(sx - s + 1)`, an entire function of
/// exponential type 1.
pub fn entire_bump_witness(s: u32, p: Exponent, q: Exponent, opts: &QuadOptions) -> Result<RatioReport> {
    check_pq(p, q)?;
    if s < 2 {
        return Err(Error::Domain(format!("bump witness needs s >= 2, got {s}")));
    }
    let sf = s as f64;
    let phi_norm = if opts_are_default(opts) {
        bump::phi_hat_norm(p)?
    } else {
        bump::line_norm(|c| BumpTransform::phi_hat(c, opts), p, opts)?
    };
    let g_norm = bump::line_norm(|c| BumpTransform::derivative_profile(s, c, opts), q, opts)?;
    let numerator = g_norm.value * sf.powf(q.recip());
    let denominator = phi_norm.value * sf.powf(p.recip());
    Ok(RatioReport::assemble(
        0,
        sf,
        p,
        q,
        WitnessId::EntireBump,
        (numerator, g_norm.nodes),
        (denominator, phi_norm.nodes),
        vec![("cutoff_numerator", g_norm.cutoff * sf), ("cutoff_denominator", phi_norm.cutoff * sf)],
    ))
}

fn opts_are_default(opts: &QuadOptions) -> bool {
    let d = QuadOptions::default();
    opts.u_panels_per_unit == d.u_panels_per_unit
        && opts.eta_panel == d.eta_panel
        && opts.initial_cutoff == d.initial_cutoff
        && opts.max_cutoff == d.max_cutoff
        && opts.tail_tol == d.tail_tol
}

/// Dispatch on the witness id. `grid` overrides the quasinorm grid of the
/// trigonometric witnesses; `n` is ignored by the entire witness.
pub fn evaluate_witness(
    witness: WitnessId,
    n: usize,
    s: f64,
    p: Exponent,
    q: Exponent,
    grid: Option<usize>,
    quad: &QuadOptions,
) -> Result<RatioReport> {
    let integral_s = || -> Result<u32> {
        if s.fract() != 0.0 || s < 0.0 {
            return Err(Error::Domain(format!("{witness} needs integer s, got {s}")));
        }
        Ok(s as u32)
    };
    match witness {
        WitnessId::Exponential => exponential_on_grid(n, s, p, q, grid),
        WitnessId::ModulatedJackson => modulated_jackson_on_grid(n, s, p, q, grid),
        WitnessId::ConcaveTnl => {
            if p != Exponent::Finite(1.0) || q != Exponent::Infinity {
                return Err(Error::Precondition(format!("concave witness is defined for p=1, q=inf only, got p={p}, q={q}")));
            }
            concave_on_grid(n, integral_s()?, grid)
        }
        WitnessId::EntireBump => entire_bump_witness(integral_s()?, p, q, quad),
    }
}

/// `|f_s^{(s)}(xi)| = |G_s(xi/s)|`.
pub fn bump_derivative_modulus(s: u32, xi: f64) -> f64 {
    let opts = QuadOptions::default();
    BumpTransform::derivative_profile(s, (xi / s as f64).abs().max(64.0), &opts).eval(xi / s as f64).norm()
}

/// `(sum_m |f_s(pi m)|^p)^{1/p}`, truncated where `|hat(phi)|` is negligible.
pub fn bump_sampled_norm(s: u32, p: f64) -> f64 {
    let opts = QuadOptions::default();
    let sf = s as f64;
    let cutoff = 1024.0;
    let t = BumpTransform::phi_hat(cutoff, &opts);
    let m_max = (cutoff * sf / std::f64::consts::PI).ceil() as i64;
    let half: f64 = (1..=m_max).map(|m| t.eval(std::f64::consts::PI * m as f64 / sf).norm().powf(p)).sum();
    (t.eval(0.0).norm().powf(p) + 2.0 * half).powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const INF: Exponent = Exponent::Infinity;

    fn fin(p: f64) -> Exponent {
        Exponent::Finite(p)
    }

    #[test]
    fn witness_ids_round_trip() {
        for w in WitnessId::ALL {
            assert_eq!(w.to_string().parse::<WitnessId>().unwrap(), w);
        }
        assert!("fejer".parse::<WitnessId>().is_err());
    }

    #[test]
    fn exponential_closed_form() {
        let r = exponential_witness(1, 1.0, fin(1.0), INF).unwrap();
        assert!((r.ratio - 1.0 / (2.0 * PI)).abs() < 1e-12);
        let r = exponential_witness(8, 3.0, fin(2.0), INF).unwrap();
        assert!((r.ratio - 512.0 / (2.0 * PI).sqrt()).abs() < 1e-9);
        // n = s: envelope 2 n^s
        let r = exponential_witness(5, 5.0, fin(1.0), fin(2.0)).unwrap();
        assert!((r.normalized - (2.0 * PI).powf(-0.5) / 2.0).abs() < 1e-12);
        assert!(exponential_witness(3, 1.0, fin(2.0), fin(1.0)).is_err());
    }

    #[test]
    fn jackson_power_examples() {
        assert_eq!(jackson_power(1.0), 2);
        assert_eq!(jackson_power(2.0 / 3.0), 2);
        assert_eq!(jackson_power(1.0 / 3.0), 4);
        assert_eq!(jackson_power(0.5), 3);
        assert_eq!(jackson_power(2.0), 1);
    }

    #[test]
    fn modulated_jackson_example() {
        let r = modulated_jackson_witness(128, 2.0, fin(1.0), INF).unwrap();
        assert_eq!(r.param("N"), Some(32.0));
        assert_eq!(r.param("r"), Some(2.0));
        assert!(r.normalized > 0.0);
        assert!(matches!(modulated_jackson_witness(16, 2.0, fin(1.0), INF), Err(Error::Precondition(_))));
        assert!(matches!(modulated_jackson_witness(64, 1.0, fin(1.0), INF), Err(Error::Precondition(_))));
    }

    #[test]
    fn concave_witness_examples() {
        assert_eq!(concave_witness_index(64, 4), 49);
        assert_eq!(concave_witness_index(3, 8), 3);
        let r = concave_witness(3, 8).unwrap();
        let want: f64 = (1..=3).map(|k| 2.0 * (k as f64).powi(8) / 3.0).sum();
        assert!((r.numerator - want).abs() < 1e-9 * want);
        // numerator is the sup of the derivative
        let t = build_poly(&v_basis(20, concave_witness_index(20, 4)).unwrap());
        let sup = t.weyl_derivative(4.0).unwrap().quasinorm(INF).unwrap().value;
        let r = concave_witness(20, 4).unwrap();
        assert!((sup - r.numerator).abs() < 1e-9 * sup);
        let odd = concave_witness(20, 3).unwrap();
        assert!((odd.numerator - r.numerator / 20.0).abs() < 1e-9 * r.numerator);
        assert_eq!(odd.param("bernstein_reduction"), Some(1.0));
    }

    #[test]
    fn normalization_recomputes() {
        let r = exponential_witness(7, 2.0, fin(0.5), fin(1.0)).unwrap();
        assert!((normalize_ratio(&r) - r.normalized).abs() < 1e-15);
        let mut unit = r.clone();
        unit.ratio = envelope(unit.witness, unit.n, unit.s, unit.p, unit.q);
        assert!((normalize_ratio(&unit) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bump_witness_scaling_and_lower_bound() {
        let opts = QuadOptions::default();
        let r = entire_bump_witness(4, fin(1.0), INF, &opts).unwrap();
        assert!(r.normalized > 0.0 && r.n == 0);
        for s in [2u32, 4, 8] {
            let direct = bump::f_s_norm_direct(s, 1.0, &opts).unwrap();
            let scaled = bump::phi_hat_norm(fin(1.0)).unwrap().value * s as f64;
            assert!((direct / scaled - 1.0).abs() < 1e-6, "s={s}: {direct} vs {scaled}");
        }
    }
}
