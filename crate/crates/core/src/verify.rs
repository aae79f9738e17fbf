//! Geometric checks of a computed radius in the complex plane.
//!
//! The ratios `zu'/u` and `1 + zu''/u'` are evaluated off the real axis from
//! their zero-sum expansions `U(ω) = Σ ω/(a_n − ω)`: the first `N` zeros
//! explicitly, the next `P` orders of `Σ_p ω^p Σ_{n>N} a_n^{−p}` from the
//! power sums, and a remainder calibrated on the positive axis where the
//! series gives `U` directly. Because every `a_n > 0`, the remainder at `ω`
//! is bounded by its value at `|ω|`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ml::{MLParams, Normalization, PhiSeries, ZeroTarget};
use crate::radii::{strong_sine, ProblemSpec, RadiusSolver, TAIL_MOMENTS};
use crate::zeros::ZeroTable;

pub const DEFAULT_DELTA: f64 = 1e-3;
pub const DEFAULT_GRID: usize = 720;

/// Zeros requested per expansion before falling back to shorter tables.
pub const VERIFY_ZEROS: usize = 32;

/// `w = u + iv` lies in the conic domain `u > η√((u−1)² + v²) + ρ`.
pub fn conic_membership(w: Complex64, eta: f64, rho: f64) -> bool {
    w.re > eta * (w - 1.0).norm() + rho
}

/// Truncated zero-sum expansion of one target factor.
#[derive(Clone, Debug)]
pub struct ZeroSumExpansion {
    pub target: ZeroTarget,
    /// Zeros in the sum variable `w`.
    pub zeros_w: Vec<f64>,
    /// `Σ_{n>N} a_n^{−p}` for `p = 1..=P`.
    pub tail: Vec<f64>,
}

impl ZeroSumExpansion {
    /// Builds the expansion from a zero table. Negative residual power sums
    /// cannot occur when all zeros are real and positive, so they are
    /// reported as a zero-reality violation.
    pub fn new(series: &PhiSeries, table: &ZeroTable, moments: usize) -> Result<Self> {
        let zeros_w = table.w_zeros();
        let sums = series.power_sums(table.target, moments);
        let mut tail = Vec::with_capacity(moments);
        for (i, &s_p) in sums.iter().enumerate() {
            let p = i as i32 + 1;
            let head: f64 = zeros_w.iter().rev().map(|a| a.powi(-p)).sum();
            let t = s_p - head;
            if t < -1e-9 * s_p.abs() {
                let location = table.zeros.last().copied().unwrap_or(0.0);
                return Err(Error::ZeroRealityViolation { location });
            }
            tail.push(t.max(0.0));
        }
        Ok(ZeroSumExpansion { target: table.target, zeros_w, tail })
    }

    /// Explicit zeros plus the moment terms.
    pub fn truncated(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.zeros_w.iter().rev() {
            acc += w / (a - w);
        }
        let mut wp = Complex64::new(1.0, 0.0);
        for &t in &self.tail {
            wp *= w;
            acc += wp * t;
        }
        acc
    }

    /// `U(w)` with an absolute error bound, using the series at `|w|` for
    /// the remainder.
    pub fn eval(&self, series: &PhiSeries, w: Complex64) -> Result<(Complex64, f64)> {
        let m = w.norm();
        let exact = series.zero_sum(self.target, m)?;
        let rem = exact - self.truncated(Complex64::new(m, 0.0)).re;
        let rounding = 1e-14 * exact.abs().max(1e-300);
        let phase = if m > 0.0 { (w / m).powi(self.tail.len() as i32 + 1) } else { Complex64::new(0.0, 0.0) };
        Ok((self.truncated(w) + phase * rem, 2.0 * rem.abs() + rounding))
    }
}

/// `zu'/u` and `1 + zu''/u'` at complex `z` for one solver.
#[derive(Clone, Debug)]
pub struct ComplexRatios<'a> {
    series: &'a PhiSeries,
    norm: Normalization,
    function: ZeroSumExpansion,
    derivative: Option<ZeroSumExpansion>,
}

fn expansion(solver: &RadiusSolver, target: ZeroTarget, zeros: usize) -> Result<ZeroSumExpansion> {
    let mut n = zeros.max(1);
    loop {
        match solver.zero_table(target, n) {
            Ok(table) => return ZeroSumExpansion::new(solver.series(), &table, TAIL_MOMENTS),
            Err(e @ Error::ZeroRealityViolation { .. }) => return Err(e),
            Err(e) if n == 1 => return Err(e),
            Err(_) => n /= 2,
        }
    }
}

impl<'a> ComplexRatios<'a> {
    /// Expansions with up to `zeros` explicit zeros; the derivative factor is
    /// only tabulated when `convex` is needed.
    pub fn new(solver: &'a RadiusSolver, zeros: usize, convex: bool) -> Result<Self> {
        let norm = solver.norm();
        let function = expansion(solver, norm.function_target(), zeros)?;
        let derivative = if convex { Some(expansion(solver, norm.derivative_target(), zeros)?) } else { None };
        Ok(ComplexRatios { series: solver.series(), norm, function, derivative })
    }

    /// Smallest number of explicit zeros over the expansions in use.
    pub fn zeros_used(&self) -> usize {
        let d = self.derivative.as_ref().map_or(usize::MAX, |e| e.zeros_w.len());
        self.function.zeros_w.len().min(d)
    }

    fn w(&self, z: Complex64) -> Complex64 {
        match self.norm {
            Normalization::F | Normalization::G => z * z,
            Normalization::H => z,
        }
    }

    fn kappa(&self) -> f64 {
        match self.norm {
            Normalization::F => 1.0 / self.series.params().beta(),
            _ => 1.0,
        }
    }

    pub fn starlike(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let c = self.norm.pair_factor() * self.kappa();
        let (u, e) = self.function.eval(self.series, self.w(z))?;
        Ok((1.0 - c * u, c * e))
    }

    pub fn convex(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let d = self
            .derivative
            .as_ref()
            .ok_or_else(|| Error::Precondition("derivative zeros were not tabulated".into()))?;
        let w = self.w(z);
        let (ud, ed) = d.eval(self.series, w)?;
        match self.norm {
            Normalization::F => {
                let (ul, el) = self.function.eval(self.series, w)?;
                let k = 2.0 * (1.0 / self.series.params().beta() - 1.0);
                Ok((1.0 - 2.0 * ud - k * ul, 2.0 * ed + k.abs() * el))
            }
            _ => {
                let c = self.norm.pair_factor();
                Ok((1.0 - c * ud, c * ed))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub problem: ProblemSpec,
    pub radius: f64,
    pub delta: f64,
    /// Condition holds at every sample of `|z| = radius·(1−δ)`.
    pub inner_pass: bool,
    /// Condition fails somewhere on `|z| = radius·(1+δ)`.
    pub outer_fail: bool,
    pub worst_margin_inner: f64,
    pub worst_margin_outer: f64,
    /// Angle in `(−π, π]` of the worst outer sample, when it violates.
    pub violation_angle_outer: Option<f64>,
    /// Whether that violation sits within one grid step of angle 0.
    pub angle_at_axis: Option<bool>,
    pub samples: usize,
    pub zeros_used: usize,
    pub max_tail_uncertainty: f64,
}

/// Margin of the defining inequality at `z` (positive inside the class)
/// with its uncertainty.
fn margin(ratios: &ComplexRatios<'_>, problem: &ProblemSpec, z: Complex64) -> Result<(f64, f64)> {
    let conic = |v: Complex64, e: f64, eta: f64, rho: f64| (v.re - eta * (v - 1.0).norm() - rho, (1.0 + eta) * e);
    match *problem {
        ProblemSpec::UniformConvex { eta, rho } => {
            let (q, e) = ratios.convex(z)?;
            Ok(conic(q, e, eta, rho))
        }
        ProblemSpec::Convex { rho } => {
            let (q, e) = ratios.convex(z)?;
            Ok(conic(q, e, 0.0, rho))
        }
        ProblemSpec::ParabolicStarlike { eta, rho } => {
            let (p, e) = ratios.starlike(z)?;
            Ok(conic(p, e, eta, rho))
        }
        ProblemSpec::Starlike { rho } => {
            let (p, e) = ratios.starlike(z)?;
            Ok(conic(p, e, 0.0, rho))
        }
        ProblemSpec::AlphaConvex { alpha, rho } => {
            let (mut j, mut e) = (Complex64::new(0.0, 0.0), 0.0);
            if alpha != 1.0 {
                let (p, ep) = ratios.starlike(z)?;
                j += (1.0 - alpha) * p;
                e += (1.0 - alpha).abs() * ep;
            }
            if alpha != 0.0 {
                let (q, eq) = ratios.convex(z)?;
                j += alpha * q;
                e += alpha.abs() * eq;
            }
            Ok((j.re - rho, e))
        }
        ProblemSpec::StrongStarlike { rho } => {
            let (p, e) = ratios.starlike(z)?;
            let n = p.norm();
            let de = if e < n { (e / n).asin() } else { PI };
            Ok((FRAC_PI_2 * rho - p.arg().abs(), de))
        }
    }
}

fn needs_convex(problem: &ProblemSpec) -> bool {
    match *problem {
        ProblemSpec::UniformConvex { .. } | ProblemSpec::Convex { .. } => true,
        ProblemSpec::AlphaConvex { alpha, .. } => alpha != 0.0,
        _ => false,
    }
}

struct Circle {
    worst: f64,
    angle: f64,
    uncertainty: f64,
}

/// Worst margin on a circle; ties go to the angle closest to 0 (for `f` and
/// `g` the margin is even in `z → −z`).
fn sample_circle(ratios: &ComplexRatios<'_>, problem: &ProblemSpec, radius: f64, grid: usize) -> Result<Circle> {
    let mut c = Circle { worst: f64::INFINITY, angle: 0.0, uncertainty: 0.0 };
    for k in 0..grid {
        let mut t = 2.0 * PI * k as f64 / grid as f64;
        if t > PI {
            t -= 2.0 * PI;
        }
        let (m, e) = margin(ratios, problem, Complex64::from_polar(radius, t))?;
        c.uncertainty = c.uncertainty.max(e);
        let tie = (m - c.worst).abs() <= 1e-12 * m.abs().max(1e-12);
        if m < c.worst && !tie || tie && t.abs() < c.angle.abs() {
            c.worst = m;
            c.angle = t;
        }
    }
    Ok(c)
}

/// Samples the defining condition of `problem` on the circles
/// `|z| = radius·(1 ± δ)` at `grid` equally spaced angles.
pub fn verify_radius_geometric(
    solver: &RadiusSolver,
    problem: &ProblemSpec,
    radius: f64,
    delta: f64,
    grid: usize,
) -> Result<VerificationReport> {
    problem.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParams(format!("radius must be positive, got {radius}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParams(format!("delta must lie in (0, 1), got {delta}")));
    }
    if grid == 0 {
        return Err(Error::InvalidParams("grid must be positive".into()));
    }
    let ratios = ComplexRatios::new(solver, VERIFY_ZEROS, needs_convex(problem))?;
    let inner = sample_circle(&ratios, problem, radius * (1.0 - delta), grid)?;
    let outer = sample_circle(&ratios, problem, radius * (1.0 + delta), grid)?;
    for c in [&inner, &outer] {
        if c.uncertainty > 0.1 * c.worst.abs() {
            return Err(Error::InsufficientZeroTable { uncertainty: c.uncertainty, margin: c.worst });
        }
    }
    let outer_fail = outer.worst < 0.0;
    let step = 2.0 * PI / grid as f64;
    Ok(VerificationReport {
        problem: *problem,
        radius,
        delta,
        inner_pass: inner.worst >= 0.0,
        outer_fail,
        worst_margin_inner: inner.worst,
        worst_margin_outer: outer.worst,
        violation_angle_outer: outer_fail.then_some(outer.angle),
        angle_at_axis: outer_fail.then_some(outer.angle.abs() <= step * (1.0 + 1e-9)),
        samples: grid,
        zeros_used: ratios.zeros_used(),
        max_tail_uncertainty: inner.uncertainty.max(outer.uncertainty),
    })
}

/// `|direct ratio − truncated zero-sum ratio|` at `z = r`, with no tail
/// correction. The function-target table gives `zu'/u`; when the derivative
/// table (and for `f` the function table) is present, `1 + zu''/u'` is
/// compared as well and the larger discrepancy is returned.
pub fn crosscheck_zero_sum(params: &MLParams, norm: Normalization, r: f64, tables: &[ZeroTable]) -> Result<f64> {
    let series = PhiSeries::new(*params);
    let find = |t: ZeroTarget| tables.iter().find(|tb| tb.target == t && tb.params == *params);
    let w = norm.w_of(r);
    let plain = |tb: &ZeroTable| -> f64 { tb.w_zeros().iter().rev().map(|a| w / (a - w)).sum() };
    let kappa = match norm {
        Normalization::F => 1.0 / params.beta(),
        _ => 1.0,
    };
    let mut worst: Option<f64> = None;
    let fun = find(norm.function_target());
    if let Some(tb) = fun {
        let approx = 1.0 - norm.pair_factor() * kappa * plain(tb);
        worst = Some((series.ratio_starlike(norm, r)? - approx).abs());
    }
    if let Some(dt) = find(norm.derivative_target()) {
        let approx = match norm {
            Normalization::F => fun.map(|l| 1.0 - 2.0 * plain(dt) - 2.0 * (1.0 / params.beta() - 1.0) * plain(l)),
            _ => Some(1.0 - norm.pair_factor() * plain(dt)),
        };
        if let Some(a) = approx {
            let d = (series.ratio_convex(norm, r)? - a).abs();
            worst = Some(worst.map_or(d, |x| x.max(d)));
        }
    }
    worst.ok_or_else(|| Error::Precondition(format!("no zero table for {norm} with these parameters")))
}

const LEMMA_SLACK: f64 = 1e-12;

/// `|z|/(θ − |z|) ≥ Re(z/(θ − z))` for `θ > |z|`.
pub fn theta_bound_check(theta: f64, z: Complex64) -> Result<bool> {
    let r = z.norm();
    if !(theta > r) {
        return Err(Error::Precondition(format!("need theta > |z|, got theta = {theta}, |z| = {r}")));
    }
    let lhs = r / (theta - r);
    Ok(lhs + LEMMA_SLACK * lhs.max(1.0) >= (z / (theta - z)).re)
}

/// The lemma bounds with `r = |z|`:
/// `|z/(b−z) − λz/(a−z)| ≤ r/(b−r) − λr/(a−r)`, its real-part form,
/// `Re(z/(b−z)) ≤ |z/(b−z)| ≤ r/(b−r)`, and the `θ` bound for `θ = a, b`.
pub fn lemma_inequality_check(a: f64, b: f64, lambda: f64, z: Complex64) -> Result<bool> {
    let r = z.norm();
    if !(a > b && b > r) {
        return Err(Error::Precondition(format!("need a > b > |z|, got a = {a}, b = {b}, |z| = {r}")));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Precondition(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let le = |x: f64, y: f64| x <= y + LEMMA_SLACK * x.abs().max(y.abs()).max(1.0);
    let s = z / (b - z) - lambda * z / (a - z);
    let bound = r / (b - r) - lambda * r / (a - r);
    let single = z / (b - z);
    Ok(le(s.norm(), bound)
        && le(s.re, bound)
        && le(single.re, single.norm())
        && le(single.norm(), r / (b - r))
        && theta_bound_check(a, z)?
        && theta_bound_check(b, z)?)
}

/// Whether the disk `|w − c| ≤ R_c` lies in the sector `|arg w| ≤ πρ/2`, by
/// the condition `R_c ≤ Re c·sin(πρ/2) − Im c·cos(πρ/2)`.
pub fn disk_in_sector_check(c: Complex64, r_c: f64, rho: f64) -> Result<bool> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::Precondition(format!("rho must lie in (0, 1], got {rho}")));
    }
    if !(r_c >= 0.0) || c.im < 0.0 || c.arg().abs() > FRAC_PI_2 * rho {
        return Err(Error::Precondition(format!(
            "need R_c >= 0 and c in the upper half of the sector, got c = {c}, R_c = {r_c}"
        )));
    }
    let s = strong_sine(rho);
    let co = (FRAC_PI_2 * rho).cos();
    Ok(r_c <= c.re * s - c.im * co)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::DEFAULT_ZERO_TOL;

    fn sine() -> RadiusSolver {
        RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0).unwrap(), Normalization::G).assume_real_zeros(true)
    }

    #[test]
    fn conic_examples() {
        assert!(conic_membership(Complex64::new(1.0, 0.0), 3.0, 0.9));
        assert!(!conic_membership(Complex64::new(0.4, 0.0), 0.0, 0.4));
        assert!(conic_membership(Complex64::new(0.6, 0.1), 1.0, 0.0));
    }

    #[test]
    fn complex_ratios_match_cot() {
        let s = sine();
        let cr = ComplexRatios::new(&s, 32, true).unwrap();
        let z = Complex64::from_polar(1.2, 0.7);
        let (p, e) = cr.starlike(z).unwrap();
        // z cot z for g = sin z
        let exact = z * z.cos() / z.sin();
        assert!((p - exact).norm() < 1e-12, "{p} vs {exact}");
        assert!(e < 1e-12);
        let (q, _) = cr.convex(z).unwrap();
        let exact = 1.0 - z * z.tan();
        assert!((q - exact).norm() < 1e-12);
    }

    #[test]
    fn starlike_and_convex_radii_verify() {
        let s = sine();
        for problem in [ProblemSpec::Starlike { rho: 0.0 }, ProblemSpec::Convex { rho: 0.0 }] {
            let r = s.solve(&problem).unwrap().radius;
            let rep = verify_radius_geometric(&s, &problem, r, DEFAULT_DELTA, DEFAULT_GRID).unwrap();
            assert!(rep.inner_pass && rep.outer_fail, "{rep:?}");
            assert_eq!(rep.angle_at_axis, Some(true));
            let half = verify_radius_geometric(&s, &problem, 0.5 * r, DEFAULT_DELTA, DEFAULT_GRID).unwrap();
            assert!(half.inner_pass && !half.outer_fail);
        }
    }

    #[test]
    fn crosscheck_shrinks() {
        let p = MLParams::new(2.0, 2.0, 1.0).unwrap();
        let table = |n: usize| ZeroTable {
            params: p,
            target: ZeroTarget::LambdaZeros,
            zeros: (1..=n).map(|k| k as f64 * PI).collect(),
            per_zero_tol: DEFAULT_ZERO_TOL,
        };
        let d = |n| crosscheck_zero_sum(&p, Normalization::G, 1.0, &[table(n)]).unwrap();
        // exact tail: r cot r − (1 − Σ_{n≤N} 2r²/(n²π² − r²)) at r = 1
        let oracle = |n: usize| {
            let head: f64 = (1..=n).rev().map(|k| 2.0 / ((k as f64 * PI).powi(2) - 1.0)).sum();
            (1.0 / 1f64.tan() - (1.0 - head)).abs()
        };
        assert!((d(200) - oracle(200)).abs() < 1e-12);
        assert!(d(200) > 1e-3 && d(2100) <= 1e-4);
        assert!(d(1000) < d(10));
        let tiny = crosscheck_zero_sum(&p, Normalization::G, 1e-4, &[table(10)]).unwrap();
        assert!(tiny < 1e-9);
    }

    #[test]
    fn lemma_examples() {
        assert!(lemma_inequality_check(3.0, 2.0, 0.5, Complex64::new(1.0, 0.0)).unwrap());
        assert!(lemma_inequality_check(3.0, 2.0, 1.0, Complex64::new(0.0, 1.0)).unwrap());
        assert!(lemma_inequality_check(2.0, 3.0, 0.5, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn sector_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert!(disk_in_sector_check(one, 0.99, 1.0).unwrap());
        assert!(!disk_in_sector_check(one, 0.8, 0.5).unwrap());
        let c = Complex64::new(1.0, 0.2);
        assert!(disk_in_sector_check(c, 0.5, 0.5).unwrap());
        // sampled boundary of the disk stays inside the sector
        let half = FRAC_PI_2 * 0.5;
        assert!((0..10_000).all(|k| {
            let w = c + Complex64::from_polar(0.5, 2.0 * PI * k as f64 / 10_000.0);
            w.arg().abs() <= half
        }));
        assert!(disk_in_sector_check(Complex64::new(1.0, -0.1), 0.1, 0.5).is_err());
    }
}
