//! Radius equations and their solution.
//!
//! Every radius is the unique root of a monotone equation on a proven bracket
//! `(0, first zero)`, solved by bisection:
//!
//! | problem | equation `E(r) = 0` | right end of the bracket |
//! |---|---|---|
//! | uniform convexity (η, ρ) | `1 − ρ + (1+η)(1 + zu''/u' − 1)` | first zero of `u'` |
//! | α-convexity (α, ρ) | `J(α, u) − ρ` | first zero of `u'` (`α > 0`) or `u` (`α = 0`) |
//! | parabolic starlikeness (η, ρ) | `(1+η)·zu'/u − (η + ρ)` | first zero of `u` |
//! | strong starlikeness (ρ) | `ψ(r)` | first zero of `u` |
//!
//! Starlikeness and convexity of order ρ are the `η = 0` cases of the
//! parabolic and uniform problems and run through the same code path.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::DD;
use crate::error::{Error, Result};
use crate::ml::{MLParams, Normalization, PhiSeries, ZeroTarget};
use crate::region::{in_wi, RegionPoint, WiStatus, DEFAULT_MAX_C_DEPTH};
use crate::zeros::{zeros_of_series, ZeroTable, DEFAULT_ZERO_TOL};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Moment terms used to close the strong-starlikeness zero sum.
pub const TAIL_MOMENTS: usize = 8;

/// Largest zero count tried before giving up on stabilization.
pub const MAX_STRONG_ZEROS: usize = 1 << 16;

/// Agreement demanded between the two forms of the parabolic equation.
pub const DUAL_FORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemSpec {
    UniformConvex { eta: f64, rho: f64 },
    AlphaConvex { alpha: f64, rho: f64 },
    ParabolicStarlike { eta: f64, rho: f64 },
    StrongStarlike { rho: f64 },
    Starlike { rho: f64 },
    Convex { rho: f64 },
}

fn check_order(rho: f64) -> Result<()> {
    if (0.0..1.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("rho must lie in [0, 1), got {rho}")))
    }
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must be finite and >= 0, got {v}")))
    }
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProblemSpec::UniformConvex { eta, rho } | ProblemSpec::ParabolicStarlike { eta, rho } => {
                check_nonneg("eta", eta)?;
                check_order(rho)
            }
            ProblemSpec::AlphaConvex { alpha, rho } => {
                check_nonneg("alpha", alpha)?;
                check_order(rho)
            }
            ProblemSpec::StrongStarlike { rho } => {
                if rho > 0.0 && rho <= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParams(format!(
                        "rho must lie in (0, 1] for strong starlikeness, got {rho}"
                    )))
                }
            }
            ProblemSpec::Starlike { rho } | ProblemSpec::Convex { rho } => check_order(rho),
        }
    }

    pub fn rho(&self) -> f64 {
        match *self {
            ProblemSpec::UniformConvex { rho, .. }
            | ProblemSpec::AlphaConvex { rho, .. }
            | ProblemSpec::ParabolicStarlike { rho, .. }
            | ProblemSpec::StrongStarlike { rho }
            | ProblemSpec::Starlike { rho }
            | ProblemSpec::Convex { rho } => rho,
        }
    }

    /// `η` for the conic problems, 0 for their `η = 0` special cases.
    pub fn eta(&self) -> Option<f64> {
        match *self {
            ProblemSpec::UniformConvex { eta, .. } | ProblemSpec::ParabolicStarlike { eta, .. } => Some(eta),
            ProblemSpec::Starlike { .. } | ProblemSpec::Convex { .. } => Some(0.0),
            _ => None,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            ProblemSpec::AlphaConvex { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    /// Same problem with one parameter replaced.
    pub fn with_param(&self, which: SweepParam, value: f64) -> Result<ProblemSpec> {
        let mut p = *self;
        let slot = match (&mut p, which) {
            (ProblemSpec::UniformConvex { eta, .. }, SweepParam::Eta)
            | (ProblemSpec::ParabolicStarlike { eta, .. }, SweepParam::Eta) => eta,
            (ProblemSpec::AlphaConvex { alpha, .. }, SweepParam::Alpha) => alpha,
            (ProblemSpec::UniformConvex { rho, .. }, SweepParam::Rho)
            | (ProblemSpec::AlphaConvex { rho, .. }, SweepParam::Rho)
            | (ProblemSpec::ParabolicStarlike { rho, .. }, SweepParam::Rho)
            | (ProblemSpec::StrongStarlike { rho }, SweepParam::Rho)
            | (ProblemSpec::Starlike { rho }, SweepParam::Rho)
            | (ProblemSpec::Convex { rho }, SweepParam::Rho) => rho,
            _ => {
                return Err(Error::InvalidParams(format!(
                    "problem {} has no parameter {which}",
                    self.name()
                )))
            }
        };
        *slot = value;
        Ok(p)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProblemSpec::UniformConvex { .. } => "ucv",
            ProblemSpec::AlphaConvex { .. } => "alphaconvex",
            ProblemSpec::ParabolicStarlike { .. } => "sp",
            ProblemSpec::StrongStarlike { .. } => "strong",
            ProblemSpec::Starlike { .. } => "star",
            ProblemSpec::Convex { .. } => "convex",
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ProblemSpec::UniformConvex { eta, rho } => write!(f, "ucv(eta={eta}, rho={rho})"),
            ProblemSpec::AlphaConvex { alpha, rho } => write!(f, "alphaconvex(alpha={alpha}, rho={rho})"),
            ProblemSpec::ParabolicStarlike { eta, rho } => write!(f, "sp(eta={eta}, rho={rho})"),
            ProblemSpec::StrongStarlike { rho } => write!(f, "strong(rho={rho})"),
            ProblemSpec::Starlike { rho } => write!(f, "star(rho={rho})"),
            ProblemSpec::Convex { rho } => write!(f, "convex(rho={rho})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Eta,
    Rho,
    Alpha,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::Eta => "eta",
            SweepParam::Rho => "rho",
            SweepParam::Alpha => "alpha",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verified {
    Unverified,
    Passed,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub problem: ProblemSpec,
    pub norm: Normalization,
    pub params: MLParams,
    pub radius: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub iterations: usize,
    pub zeros_used: usize,
    pub verified: Verified,
}

/// Outcome of a bisection on `(lo, hi)`.
struct Root {
    x: f64,
    residual: f64,
    iterations: usize,
}

/// Root of `e` on `(lo, hi)` where `e > 0` to the left of the root when
/// `decreasing`, `e < 0` otherwise. A domain error counts as the far side.
fn bisect(mut e: impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64, decreasing: bool, tol: f64) -> Result<Root> {
    let left_of_root = |v: f64| if decreasing { v > 0.0 } else { v < 0.0 };
    let width = hi - lo;
    let eps = 1e-6 * width;
    let (e_lo, e_hi) = (e(lo + eps)?, e(hi - eps));
    let e_hi_ok = match e_hi {
        Ok(v) => !left_of_root(v) && v != 0.0,
        Err(Error::Domain(_)) => true,
        Err(err) => return Err(err),
    };
    if !left_of_root(e_lo) || !e_hi_ok {
        return Err(Error::ConvergenceFailure(format!(
            "bracket sign contract violated on ({lo}, {hi}): E(lo+) = {e_lo:e}, E(hi-) = {e_hi:?}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    loop {
        let m = 0.5 * (a + b);
        iterations += 1;
        let v = match e(m) {
            Ok(v) => v,
            Err(Error::Domain(_)) => f64::NAN,
            Err(err) => return Err(err),
        };
        let stalled = m <= a || m >= b;
        if (b - a <= tol && v.abs() <= tol) || stalled || v == 0.0 {
            if v.is_nan() {
                return Err(Error::ConvergenceFailure(format!("equation undefined at r = {m}")));
            }
            return Ok(Root { x: m, residual: v, iterations });
        }
        if iterations > 400 {
            return Err(Error::ConvergenceFailure(format!("bisection did not settle near r = {m}")));
        }
        if !v.is_nan() && left_of_root(v) {
            a = m;
        } else {
            b = m;
        }
    }
}

/// Solver for one parameter set and normalization.
///
/// ```
/// use mlradii::{MLParams, Normalization, RadiusSolver};
/// let p = MLParams::new(2.0, 2.0, 1.0).unwrap();
/// let s = RadiusSolver::new(p, Normalization::G).assume_real_zeros(true);
/// let r = s.starlike(0.0).unwrap();
/// assert!((r.radius - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
/// ```
#[derive(Debug)]
pub struct RadiusSolver {
    series: PhiSeries,
    norm: Normalization,
    assume_real_zeros: bool,
    tol: f64,
    zero_tol: f64,
    max_c_depth: u32,
    first_zeros: Mutex<HashMap<ZeroTarget, f64>>,
}

impl RadiusSolver {
    pub fn new(params: MLParams, norm: Normalization) -> Self {
        RadiusSolver {
            series: PhiSeries::new(params),
            norm,
            assume_real_zeros: false,
            tol: DEFAULT_TOL,
            zero_tol: DEFAULT_ZERO_TOL,
            max_c_depth: DEFAULT_MAX_C_DEPTH,
            first_zeros: Mutex::new(HashMap::new()),
        }
    }

    /// Accept parameters outside the certified region.
    pub fn assume_real_zeros(mut self, yes: bool) -> Self {
        self.assume_real_zeros = yes;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn zero_tol(mut self, tol: f64) -> Self {
        self.zero_tol = tol;
        self
    }

    pub fn max_c_depth(mut self, depth: u32) -> Self {
        self.max_c_depth = depth;
        self
    }

    pub fn params(&self) -> &MLParams {
        self.series.params()
    }

    pub fn norm(&self) -> Normalization {
        self.norm
    }

    pub fn series(&self) -> &PhiSeries {
        &self.series
    }

    fn check_settings(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParams(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    /// Parameters are admitted if they lie in `W_i` or the caller vouches for them.
    pub fn admit(&self) -> Result<()> {
        if self.assume_real_zeros {
            return Ok(());
        }
        let p = self.params();
        let status = match RegionPoint::from_omega(p.omega(), p.beta()) {
            Ok(pt) => in_wi(pt, self.max_c_depth).status,
            Err(_) => WiStatus::NonMember,
        };
        if status == WiStatus::Member {
            Ok(())
        } else {
            Err(Error::ParamsNotAdmitted { omega: p.omega(), beta: p.beta(), status })
        }
    }

    pub fn zero_table(&self, target: ZeroTarget, count: usize) -> Result<ZeroTable> {
        zeros_of_series(&self.series, target, count, self.zero_tol)
    }

    /// First positive zero of a target factor (cached).
    pub fn first_zero(&self, target: ZeroTarget) -> Result<f64> {
        if let Some(z) = self.first_zeros.lock().unwrap_or_else(|e| e.into_inner()).get(&target) {
            return Ok(*z);
        }
        let z = self.zero_table(target, 1)?.zeros[0];
        self.first_zeros.lock().unwrap_or_else(|e| e.into_inner()).insert(target, z);
        Ok(z)
    }

    fn result(&self, problem: ProblemSpec, root: Root, hi: f64, zeros_used: usize) -> RadiusResult {
        RadiusResult {
            problem,
            norm: self.norm,
            params: *self.params(),
            radius: root.x,
            bracket: (0.0, hi),
            residual: root.residual,
            iterations: root.iterations,
            zeros_used,
            verified: Verified::Unverified,
        }
    }

    fn prepare(&self, problem: &ProblemSpec) -> Result<()> {
        problem.validate()?;
        self.check_settings()?;
        self.admit()
    }

    pub fn solve(&self, problem: &ProblemSpec) -> Result<RadiusResult> {
        match *problem {
            ProblemSpec::UniformConvex { eta, rho } => self.uniform_convex(eta, rho),
            ProblemSpec::AlphaConvex { alpha, rho } => self.alpha_convex(alpha, rho),
            ProblemSpec::ParabolicStarlike { eta, rho } => self.parabolic_starlike(eta, rho),
            ProblemSpec::StrongStarlike { rho } => self.strong_starlike(rho),
            ProblemSpec::Starlike { rho } => self.starlike(rho),
            ProblemSpec::Convex { rho } => self.convex(rho),
        }
    }

    /// Uniform-convexity equation `1 − ρ + (1+η)(1 + zu''/u' − 1)`.
    pub fn ucv_equation(&self, eta: f64, rho: f64, r: f64) -> Result<f64> {
        let c = self.series.ratio_convex(self.norm, r)?;
        Ok(1.0 - rho + (1.0 + eta) * (c - 1.0))
    }

    pub fn uniform_convex(&self, eta: f64, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::UniformConvex { eta, rho };
        self.prepare(&problem)?;
        self.solve_ucv(problem, eta, rho)
    }

    fn solve_ucv(&self, problem: ProblemSpec, eta: f64, rho: f64) -> Result<RadiusResult> {
        let hi = self.first_zero(self.norm.derivative_target())?;
        let root = bisect(|r| self.ucv_equation(eta, rho, r), 0.0, hi, true, self.tol)?;
        Ok(self.result(problem, root, hi, 0))
    }

    pub fn convex(&self, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::Convex { rho };
        self.prepare(&problem)?;
        self.solve_ucv(problem, 0.0, rho)
    }

    /// `J(α, u)(r) − ρ`.
    pub fn alpha_equation(&self, alpha: f64, rho: f64, r: f64) -> Result<f64> {
        Ok(self.series.j_value(self.norm, alpha, r)? - rho)
    }

    pub fn alpha_convex(&self, alpha: f64, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::AlphaConvex { alpha, rho };
        self.prepare(&problem)?;
        let target = if alpha > 0.0 { self.norm.derivative_target() } else { self.norm.function_target() };
        let hi = self.first_zero(target)?;
        let root = bisect(|r| self.alpha_equation(alpha, rho, r), 0.0, hi, true, self.tol)?;
        let mut res = self.result(problem, root, hi, 0);
        if alpha > 0.0 && alpha < 1.0 {
            let rc = self.solve_ucv(ProblemSpec::Convex { rho }, 0.0, rho)?.radius;
            let rs = self.solve_parabolic(ProblemSpec::Starlike { rho }, 0.0, rho)?.radius;
            res.verified = if rc < res.radius && res.radius < rs { Verified::Passed } else { Verified::Failed };
        }
        Ok(res)
    }

    /// Ratio form `(1+η)·zu'/u − (η+ρ)`.
    pub fn parabolic_equation(&self, eta: f64, rho: f64, r: f64) -> Result<f64> {
        Ok((1.0 + eta) * self.series.ratio_starlike(self.norm, r)? - (eta + rho))
    }

    /// Form in `λ(r) = φ(−r²)` and its derivative:
    /// `f`: `(1+η)rλ' − β(ρ−1)λ`, `g`: `(1+η)rλ' − (ρ−1)λ`,
    /// `h`: `(1+η)√r λ'(√r) − 2(ρ−1)λ(√r)`.
    pub fn parabolic_lambda_equation(&self, eta: f64, rho: f64, r: f64) -> Result<f64> {
        let target = self.norm.function_target();
        let w = target.w_of(r);
        let (b, d) = self.series.factor(target, w)?;
        // s λ'(s) = −2 s² φ'(−s²), with s = r (f, g) or s = √r (h)
        let s_lambda_prime = DD::new(-2.0) * w * d.value;
        let lambda = b.value;
        let factor = match self.norm {
            Normalization::F => self.params().beta(),
            Normalization::G => 1.0,
            Normalization::H => 2.0,
        };
        let v = s_lambda_prime * (1.0 + eta) - lambda * (factor * (rho - 1.0));
        Ok(v.to_f64())
    }

    pub fn parabolic_starlike(&self, eta: f64, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::ParabolicStarlike { eta, rho };
        self.prepare(&problem)?;
        self.solve_parabolic(problem, eta, rho)
    }

    fn solve_parabolic(&self, problem: ProblemSpec, eta: f64, rho: f64) -> Result<RadiusResult> {
        let hi = self.first_zero(self.norm.function_target())?;
        let root = bisect(|r| self.parabolic_equation(eta, rho, r), 0.0, hi, true, self.tol)?;
        let alt = bisect(|r| self.parabolic_lambda_equation(eta, rho, r), 0.0, hi, true, self.tol)?;
        if (alt.x - root.x).abs() > DUAL_FORM_TOL {
            return Err(Error::ConvergenceFailure(format!(
                "ratio form gives {} but the lambda form gives {}",
                root.x, alt.x
            )));
        }
        Ok(self.result(problem, root, hi, 0))
    }

    pub fn starlike(&self, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::Starlike { rho };
        self.prepare(&problem)?;
        self.solve_parabolic(problem, 0.0, rho)
    }

    /// `c·κ`: overall weight of the zero sum in `zu'/u`.
    fn sum_weight(&self) -> f64 {
        let kappa = match self.norm {
            Normalization::F => 1.0 / self.params().beta(),
            _ => 1.0,
        };
        self.norm.pair_factor() * kappa
    }

    /// `ψ(r)` from the series, with no zeros: `Σ w(a+sw)/(a²−w²)` is
    /// `½(U(w) − U(−w)) + s·½(U(w) + U(−w))`.
    pub fn strong_equation_closed(&self, rho: f64, r: f64) -> Result<f64> {
        let s = strong_sine(rho);
        let target = self.norm.function_target();
        let w = target.w_of(r);
        let up = self.series.zero_sum_dd(target, w)?;
        let um = self.series.zero_sum_dd(target, -w)?;
        Ok(self.sum_weight() * (0.5 * (up - um) + s * 0.5 * (up + um)) - s)
    }

    /// `ψ(r)` from `zeros` (in `w`) plus a moment tail built from the power sums.
    pub fn strong_equation_sum(&self, rho: f64, r: f64, zeros_w: &[f64], moments: &[f64]) -> f64 {
        let s = strong_sine(rho);
        let w = self.norm.w_of(r);
        let mut acc = 0.0;
        for &a in zeros_w.iter().rev() {
            acc += w * (a + s * w) / ((a - w) * (a + w));
        }
        // Σ_{n>N} w(a+sw)/(a²−w²) = Σ_p c_p w^p Σ_{n>N} a_n^{−p}, c_p = 1 (odd p), s (even p)
        let mut wp = 1.0;
        for (i, &tail) in moments.iter().enumerate() {
            wp *= w;
            let c = if i % 2 == 0 { 1.0 } else { s };
            acc += c * wp * tail;
        }
        self.sum_weight() * acc - s
    }

    /// Residual power sums `Σ_{n>N} a_n^{−p}`, `p = 1..=P`.
    fn tail_moments(&self, zeros_w: &[f64], moments: usize) -> Vec<f64> {
        let total = self.series.power_sums(self.norm.function_target(), moments);
        total
            .iter()
            .enumerate()
            .map(|(i, &s_p)| {
                let p = i as i32 + 1;
                let head: f64 = zeros_w.iter().rev().map(|a| a.powi(-p)).sum();
                (s_p - head).max(0.0)
            })
            .collect()
    }

    /// Strong starlikeness from explicit zeros: `N = 1, 2, 4, …` until two
    /// successive roots agree within the tolerance. If the zero table cannot
    /// be extended (the series has run out of precision), the last `N` is
    /// accepted only when doubling the number of moment terms leaves the root
    /// unchanged.
    pub fn strong_starlike(&self, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::StrongStarlike { rho };
        self.prepare(&problem)?;
        let target = self.norm.function_target();
        let hi = self.first_zero(target)?;
        let solve = |zw: &[f64], moments: usize| {
            let tail = self.tail_moments(zw, moments);
            bisect(|r| Ok(self.strong_equation_sum(rho, r, zw, &tail)), 0.0, hi, false, self.tol)
        };
        let mut last: Option<(Vec<f64>, f64)> = None;
        let mut n = 1usize;
        while n <= MAX_STRONG_ZEROS {
            let table = match self.zero_table(target, n) {
                Ok(t) => t,
                Err(_) => {
                    if let Some((zw, x)) = last {
                        let wider = solve(&zw, 2 * TAIL_MOMENTS)?;
                        if (wider.x - x).abs() < self.tol {
                            return Ok(self.result(problem, wider, hi, zw.len()));
                        }
                    }
                    return Err(Error::TailNotConverged { zeros: n / 2 });
                }
            };
            let zw = table.w_zeros();
            let root = solve(&zw, TAIL_MOMENTS)?;
            if let Some((_, p)) = &last {
                if (root.x - p).abs() < self.tol {
                    return Ok(self.result(problem, root, hi, n));
                }
            }
            last = Some((zw, root.x));
            n *= 2;
        }
        Err(Error::TailNotConverged { zeros: MAX_STRONG_ZEROS })
    }

    /// Strong starlikeness through [`Self::strong_equation_closed`].
    pub fn strong_starlike_closed_form(&self, rho: f64) -> Result<RadiusResult> {
        let problem = ProblemSpec::StrongStarlike { rho };
        self.prepare(&problem)?;
        let hi = self.first_zero(self.norm.function_target())?;
        let root = bisect(|r| self.strong_equation_closed(rho, r), 0.0, hi, false, self.tol)?;
        Ok(self.result(problem, root, hi, 0))
    }

    /// Left side of the problem's equation at `r` (strong uses the closed form).
    pub fn equation(&self, problem: &ProblemSpec, r: f64) -> Result<f64> {
        match *problem {
            ProblemSpec::UniformConvex { eta, rho } => self.ucv_equation(eta, rho, r),
            ProblemSpec::Convex { rho } => self.ucv_equation(0.0, rho, r),
            ProblemSpec::AlphaConvex { alpha, rho } => self.alpha_equation(alpha, rho, r),
            ProblemSpec::ParabolicStarlike { eta, rho } => self.parabolic_equation(eta, rho, r),
            ProblemSpec::Starlike { rho } => self.parabolic_equation(0.0, rho, r),
            ProblemSpec::StrongStarlike { rho } => self.strong_equation_closed(rho, r),
        }
    }
}

/// `sin(πρ/2)`.
pub fn strong_sine(rho: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * rho).sin()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: SweepParam,
    pub value: f64,
    pub radius: Option<f64>,
    pub residual: Option<f64>,
    pub zeros_used: Option<usize>,
    /// `"ok"` or the error message for this grid point.
    pub status: String,
}

/// Evenly spaced grid from `from` to `to` with `steps` points.
pub fn linear_grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidParams(format!("a sweep needs at least 2 steps, got {steps}")));
    }
    if !(from.is_finite() && to.is_finite()) || from == to {
        return Err(Error::InvalidParams(format!("sweep range [{from}, {to}] is empty or not finite")));
    }
    let h = (to - from) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { to } else { from + i as f64 * h }).collect())
}

/// Solve `base` at each grid value of `param`, in parallel; rows keep grid order.
pub fn sweep(solver: &RadiusSolver, base: &ProblemSpec, param: SweepParam, values: &[f64]) -> Result<Vec<SweepRow>> {
    base.with_param(param, 0.5)?;
    Ok(values
        .par_iter()
        .map(|&v| {
            let outcome = base.with_param(param, v).and_then(|p| solver.solve(&p));
            match outcome {
                Ok(res) => SweepRow {
                    param,
                    value: v,
                    radius: Some(res.radius),
                    residual: Some(res.residual),
                    zeros_used: Some(res.zeros_used),
                    status: "ok".into(),
                },
                Err(e) => SweepRow {
                    param,
                    value: v,
                    radius: None,
                    residual: None,
                    zeros_used: None,
                    status: e.to_string(),
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn sine() -> RadiusSolver {
        RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0).unwrap(), Normalization::G).assume_real_zeros(true)
    }

    #[test]
    fn sine_closed_forms() {
        let s = sine();
        assert!((s.convex(0.0).unwrap().radius - 0.860_333_589_019_379_8).abs() < 1e-9);
        assert!((s.uniform_convex(1.0, 0.0).unwrap().radius - 0.653_271_187_094_403_1).abs() < 1e-9);
        assert!((s.starlike(0.0).unwrap().radius - FRAC_PI_2).abs() < 1e-9);
        assert!((s.parabolic_starlike(1.0, 0.0).unwrap().radius - 1.165_561_185_207_211_3).abs() < 1e-9);
        assert!((s.alpha_convex(0.5, 0.0).unwrap().radius - 1.014_378_919_055_217_1).abs() < 1e-9);
    }

    #[test]
    fn strong_routes_agree() {
        let s = sine();
        let a = s.strong_starlike(0.5).unwrap();
        let b = s.strong_starlike_closed_form(0.5).unwrap();
        assert!((a.radius - 1.378_367_570_498_13).abs() < 1e-9, "{}", a.radius);
        assert!((a.radius - b.radius).abs() < 1e-9);
        assert!(a.zeros_used >= 2);
    }

    #[test]
    fn admission() {
        let p = MLParams::new(2.0, 2.0, 1.0).unwrap();
        let s = RadiusSolver::new(p, Normalization::G);
        assert!(matches!(s.starlike(0.0), Err(Error::ParamsNotAdmitted { .. })));
        let p = MLParams::new(3.0, 1.0, 1.0).unwrap();
        assert!(RadiusSolver::new(p, Normalization::G).starlike(0.0).is_ok());
    }

    #[test]
    fn range_checks_come_first() {
        let p = MLParams::new(2.0, 2.0, 1.0).unwrap();
        let s = RadiusSolver::new(p, Normalization::G);
        assert!(matches!(s.strong_starlike(0.0), Err(Error::InvalidParams(_))));
        assert!(matches!(s.convex(1.0), Err(Error::InvalidParams(_))));
        assert!(matches!(s.uniform_convex(-1.0, 0.0), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn grid() {
        assert_eq!(linear_grid(0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(linear_grid(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn problem_json_is_tagged() {
        let v = serde_json::to_value(ProblemSpec::UniformConvex { eta: 1.0, rho: 0.5 }).unwrap();
        assert_eq!(v["kind"], "uniform_convex");
        assert_eq!(v["eta"], 1.0);
    }
}
