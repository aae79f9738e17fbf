//! Positive real zeros of `λ`, `Ψ'`, `g'`, `h'` and `φ(−r)`.
//!
//! Zeros are located by a forward sign scan from `0⁺` followed by bisection.
//! A dip of the target towards zero without a sign change is examined by
//! golden-section search: if the minimum crosses zero the pair of zeros is
//! bracketed, if it merely touches zero the scan reports a possible complex
//! pair instead of guessing.

use std::cell::{Cell, RefCell};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ml::{MLParams, PhiSeries, ZeroTarget};

/// Default accuracy of a tabulated zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

/// Coarsest per-zero accuracy a table may report.
pub const MAX_ZERO_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPolicy {
    /// Sampling step.
    pub step: f64,
    /// Resolution of the tangency search.
    pub min_step: f64,
    /// A local minimum of `|f|` below this fraction of its neighbours is
    /// examined more closely.
    pub tangency_ratio: f64,
    /// Ceiling on the number of samples.
    pub max_steps: usize,
}

impl ScanPolicy {
    pub fn with_step(step: f64) -> Self {
        ScanPolicy {
            step,
            min_step: step * 1e-6,
            tangency_ratio: 0.25,
            max_steps: 10_000,
        }
    }
}

/// A local dip of the scanned function: either a resolved pair of brackets
/// or a touch point that could not be resolved.
enum Dip {
    Pair((f64, f64), (f64, f64)),
    Touch { location: f64, value: f64 },
    Nothing,
}

/// Golden-section search for the minimum of `sign·f` on `[a, b]`; stops early
/// once the minimum changes sign.
fn examine_dip(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, sign: f64, tol: f64) -> Dip {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = sign * f(x1);
    let mut f2 = sign * f(x2);
    for _ in 0..200 {
        if f1 < 0.0 {
            return Dip::Pair((a, x1), (x1, b));
        }
        if f2 < 0.0 {
            return Dip::Pair((a, x2), (x2, b));
        }
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = sign * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = sign * f(x2);
        }
    }
    let (location, value) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    if value.is_finite() {
        Dip::Touch { location, value }
    } else {
        Dip::Nothing
    }
}

/// Incremental sign scan shared by [`scan_brackets`] and [`zeros_of`].
struct Scanner {
    prev: (f64, f64),
    before: Option<(f64, f64)>,
    max_abs: f64,
}

enum ScanEvent {
    Brackets(Vec<(f64, f64)>),
    Touch { location: f64, rel: f64 },
}

impl Scanner {
    fn new(x0: f64, f0: f64) -> Self {
        Scanner { prev: (x0, f0), before: None, max_abs: f0.abs() }
    }

    fn push(
        &mut self,
        f: &mut impl FnMut(f64) -> f64,
        x: f64,
        fx: f64,
        policy: &ScanPolicy,
    ) -> Option<ScanEvent> {
        let (px, pf) = self.prev;
        self.max_abs = self.max_abs.max(fx.abs());
        let mut event = None;
        if fx == 0.0 || pf.signum() != fx.signum() {
            event = Some(ScanEvent::Brackets(vec![(px, x)]));
            self.before = None;
        } else if let Some((bx, bf)) = self.before {
            let dip = pf.abs() < bf.abs()
                && pf.abs() < fx.abs()
                && pf.abs() < policy.tangency_ratio * bf.abs().min(fx.abs());
            if dip {
                match examine_dip(f, bx, x, pf.signum(), policy.min_step) {
                    Dip::Pair(b1, b2) => event = Some(ScanEvent::Brackets(vec![b1, b2])),
                    Dip::Touch { location, value } => {
                        event = Some(ScanEvent::Touch { location, rel: value.abs() / self.max_abs })
                    }
                    Dip::Nothing => {}
                }
            }
            self.before = Some((px, pf));
        } else {
            self.before = Some((px, pf));
        }
        self.prev = (x, fx);
        event
    }
}

/// Sign-change brackets of `f` on `[lo, hi]` in increasing order.
pub fn scan_brackets(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    policy: &ScanPolicy,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if !(lo < hi) || !(policy.step > 0.0) {
        return out;
    }
    let mut scanner = Scanner::new(lo, f(lo));
    let n = ((hi - lo) / policy.step).ceil().min(policy.max_steps as f64) as usize;
    for i in 1..=n {
        let x = if i == n { hi } else { lo + i as f64 * policy.step };
        let fx = f(x);
        if let Some(ScanEvent::Brackets(b)) = scanner.push(&mut f, x, fx, policy) {
            out.extend(b);
        }
    }
    out
}

/// Root in a sign-change bracket to within `tol`, by bisection.
pub fn refine_root(mut f: impl FnMut(f64) -> f64, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut a, mut b) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::InvalidBracket { a, b });
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Leading positive zeros of one target factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ZeroTableJson", try_from = "ZeroTableJson")]
pub struct ZeroTable {
    pub params: MLParams,
    pub target: ZeroTarget,
    /// Zeros in the argument of the normalized function (`r`, not `w`).
    pub zeros: Vec<f64>,
    pub per_zero_tol: f64,
}

#[derive(Serialize, Deserialize)]
struct ZeroTableJson {
    omega: f64,
    beta: f64,
    gamma: f64,
    target: ZeroTarget,
    zeros: Vec<f64>,
    tol: f64,
}

impl From<ZeroTable> for ZeroTableJson {
    fn from(t: ZeroTable) -> Self {
        ZeroTableJson {
            omega: t.params.omega(),
            beta: t.params.beta(),
            gamma: t.params.gamma(),
            target: t.target,
            zeros: t.zeros,
            tol: t.per_zero_tol,
        }
    }
}

impl TryFrom<ZeroTableJson> for ZeroTable {
    type Error = Error;
    fn try_from(j: ZeroTableJson) -> Result<Self> {
        let params = MLParams::new(j.omega, j.beta, j.gamma)?;
        if j.zeros.iter().any(|&z| !(z > 0.0)) || j.zeros.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("zeros must be positive and strictly increasing".into()));
        }
        Ok(ZeroTable { params, target: j.target, zeros: j.zeros, per_zero_tol: j.tol })
    }
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Zeros in the sum variable `w` (`r²` for the `f`/`g` factors, `r` for `h`).
    pub fn w_zeros(&self) -> Vec<f64> {
        match self.target.w_power() {
            2 => self.zeros.iter().map(|z| z * z).collect(),
            _ => self.zeros.clone(),
        }
    }
}

/// Characteristic distance to the first zero, in `r`.
fn first_zero_scale(series: &PhiSeries, t: ZeroTarget) -> f64 {
    let ps = series.power_sums(t, 1);
    let s1 = ps[0];
    // Σ 1/a_n ≥ 1/a_1, so 1/s1 never exceeds the first zero in w
    let w = if s1 > 0.0 && s1.is_finite() { 1.0 / s1 } else { 1.0 };
    w.powf(1.0 / t.w_power() as f64)
}

/// Positional uncertainty of a bisected zero: the larger of the bisection
/// width and the value error bound divided by the local slope.
fn certify(series: &PhiSeries, target: ZeroTarget, z: f64, tol: f64) -> Result<f64> {
    let h = 1e-6 * z.max(1e-3);
    let (_, err) = series.target_value(target, z)?;
    let (lo, _) = series.target_value(target, z - h)?;
    let (hi, _) = series.target_value(target, z + h)?;
    let slope = ((hi - lo) / (2.0 * h)).abs();
    let uncertainty = err / slope;
    if !(uncertainty <= MAX_ZERO_TOL) {
        return Err(Error::ZeroSearch(format!(
            "zero of {target} near r = {z} resolved only to {uncertainty:e} (limit {MAX_ZERO_TOL:e})"
        )));
    }
    Ok(uncertainty.max(tol))
}

pub fn zeros_of(params: &MLParams, target: ZeroTarget, count: usize) -> Result<ZeroTable> {
    zeros_of_series(&PhiSeries::new(*params), target, count, DEFAULT_ZERO_TOL)
}

/// First `count` zeros of `target`, each to within `tol` (at most [`MAX_ZERO_TOL`]).
pub fn zeros_of_series(series: &PhiSeries, target: ZeroTarget, count: usize, tol: f64) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::InvalidParams("zero count must be at least 1".into()));
    }
    if !(tol > 0.0) || tol > MAX_ZERO_TOL {
        return Err(Error::InvalidParams(format!(
            "per-zero tolerance must lie in (0, {MAX_ZERO_TOL:e}], got {tol:e}"
        )));
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    // values whose error bound is no longer small against the function's
    // scale carry no sign information; stop there instead of inventing zeros
    let peak = Cell::new(0.0f64);
    let mut f = |r: f64| match series.target_value(target, r) {
        Ok((v, err)) => {
            peak.set(peak.get().max(v.abs()));
            if err > 1e-6 * peak.get() {
                failure.borrow_mut().get_or_insert(Error::ZeroSearch(format!(
                    "precision exhausted: error bound {err:e} against function scale {:e}",
                    peak.get()
                )));
                return f64::NAN;
            }
            v
        }
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let scale = first_zero_scale(series, target);
    let mut policy = ScanPolicy::with_step(0.05 * scale);
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    let mut achieved = tol;
    let mut scanner = Scanner::new(0.0, f(0.0));
    let mut x = 0.0;
    let mut steps = 0usize;
    while zeros.len() < count {
        steps += 1;
        if steps > policy.max_steps {
            return Err(Error::ZeroSearch(format!(
                "found {} of {count} zeros of {target} before the scan ceiling at r = {x}",
                zeros.len()
            )));
        }
        x += policy.step;
        let fx = f(x);
        if !fx.is_finite() {
            let why = failure.borrow_mut().take().map(|e| e.to_string()).unwrap_or_else(|| "non-finite value".into());
            return Err(Error::ZeroSearch(format!(
                "found {} of {count} zeros of {target}; evaluation failed at r = {x}: {why}",
                zeros.len()
            )));
        }
        match scanner.push(&mut f, x, fx, &policy) {
            Some(ScanEvent::Brackets(bs)) => {
                for b in bs {
                    let z = refine_root(&mut f, b, tol)?;
                    achieved = achieved.max(certify(series, target, z, tol)?);
                    if zeros.len() < count {
                        zeros.push(z);
                    }
                }
                if zeros.len() >= 2 {
                    let gap = zeros[zeros.len() - 1] - zeros[zeros.len() - 2];
                    policy.step = policy.step.max(0.05 * gap);
                    policy.min_step = policy.step * 1e-6;
                }
            }
            Some(ScanEvent::Touch { location, rel }) if rel <= 1e-9 => {
                return Err(Error::ZeroRealityViolation { location });
            }
            _ => {}
        }
    }
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(ZeroTable { params: *series.params(), target, zeros, per_zero_tol: achieved })
}

/// `true` iff `d_1 < z_1` and `z_n < d_{n+1} < z_{n+1}` for all available entries.
pub fn check_interlacing(fn_zeros: &ZeroTable, deriv_zeros: &ZeroTable) -> bool {
    let z = &fn_zeros.zeros;
    let d = &deriv_zeros.zeros;
    if z.is_empty() || d.is_empty() || fn_zeros.params != deriv_zeros.params || d[0] >= z[0] {
        return false;
    }
    for n in 0..z.len() {
        if let Some(&dn) = d.get(n + 1) {
            if dn <= z[n] {
                return false;
            }
            if let Some(&zn) = z.get(n + 1) {
                if dn >= zn {
                    return false;
                }
            }
        }
    }
    true
}
