//! The three-parameter Mittag-Leffler series
//!
//! ```text
//! φ(ω, β, γ, x) = Σ_{k≥0} (γ)_k x^k / (k! Γ(ωk + β))
//! ```
//!
//! and the quantities built from it for the normalized functions
//!
//! ```text
//! f(z) = (z^β Γ(β) φ(−z²))^{1/β},   g(z) = z Γ(β) φ(−z²),   h(z) = z Γ(β) φ(−z).
//! ```
//!
//! All evaluation is on the real axis. Coefficients, powers and partial sums
//! are carried in double-double arithmetic (see [`crate::dd`]); the series
//! alternates on the negative axis and the extra precision absorbs the
//! cancellation between large terms.
//!
//! Every normalized ratio is expressed through one primitive, the zero sum
//!
//! ```text
//! U_T(w) = Σ_n w / (a_n − w) = −w B_T'(w) / B_T(w)
//! ```
//!
//! of an even entire factor `B_T` (see [`ZeroTarget`]) whose zeros `a_n` are
//! measured in the variable `w = r²` (or `w = r` for the `h` family).

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::dd::{self, DD};
use crate::error::{Error, Result};
use crate::gamma::ln_gamma_dd;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 10_000;

/// Relative part of the stopping threshold.
const TOL_REL: f64 = 1e-22;

/// Relative accuracy of a stored coefficient (log-gamma plus recurrence).
const COEFF_REL_ERR: f64 = 1e-28;

/// Parameter triple `(ω, β, γ)`; all three strictly positive and finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct MLParams {
    omega: f64,
    beta: f64,
    gamma: f64,
}

#[derive(Deserialize)]
struct RawParams {
    omega: f64,
    beta: f64,
    gamma: f64,
}

impl TryFrom<RawParams> for MLParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        MLParams::new(r.omega, r.beta, r.gamma)
    }
}

impl MLParams {
    pub fn new(omega: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("omega", omega), ("beta", beta), ("gamma", gamma)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(MLParams { omega, beta, gamma })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl fmt::Display for MLParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ω={}, β={}, γ={})", self.omega, self.beta, self.gamma)
    }
}

/// Which normalized function: `f`, `g` or `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    F,
    G,
    H,
}

impl Normalization {
    pub const ALL: [Normalization; 3] = [Normalization::F, Normalization::G, Normalization::H];

    /// Factor whose zeros bound the starlike-type radii.
    pub fn function_target(self) -> ZeroTarget {
        match self {
            Normalization::F | Normalization::G => ZeroTarget::LambdaZeros,
            Normalization::H => ZeroTarget::HFunctionZeros,
        }
    }

    /// Factor whose zeros bound the convex-type radii.
    pub fn derivative_target(self) -> ZeroTarget {
        match self {
            Normalization::F => ZeroTarget::PsiPrimeZeros,
            Normalization::G => ZeroTarget::GPrimeZeros,
            Normalization::H => ZeroTarget::HPrimeZeros,
        }
    }

    /// Multiplier `c` in `zu'/u = 1 − c·κ·U(w)`: zeros come in ± pairs for
    /// `f` and `g`, giving `2w/(a − w)` per pair.
    pub(crate) fn pair_factor(self) -> f64 {
        match self {
            Normalization::F | Normalization::G => 2.0,
            Normalization::H => 1.0,
        }
    }

    /// The sum variable `w` for radius `r`.
    pub(crate) fn w_of(self, r: f64) -> f64 {
        match self {
            Normalization::F | Normalization::G => r * r,
            Normalization::H => r,
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::F => "f",
            Normalization::G => "g",
            Normalization::H => "h",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f" => Ok(Normalization::F),
            "g" => Ok(Normalization::G),
            "h" => Ok(Normalization::H),
            _ => Err(Error::InvalidParams(format!("unknown normalization '{s}' (expected f, g or h)"))),
        }
    }
}

/// Even entire factors whose positive zeros the radii depend on.
///
/// With `λ(r) = φ(−r²)`:
///
/// | target | factor | variable |
/// |---|---|---|
/// | `LambdaZeros` | `λ(r)` | `w = r²` |
/// | `PsiPrimeZeros` | `βλ(r) + rλ'(r)` (Ψ' with `r^{β−1}` stripped) | `w = r²` |
/// | `GPrimeZeros` | `λ(r) + rλ'(r)` (g') | `w = r²` |
/// | `HPrimeZeros` | `φ(−r) − rφ'(−r)` (h') | `w = r` |
/// | `HFunctionZeros` | `φ(−r)` (h/z) | `w = r` |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroTarget {
    LambdaZeros,
    PsiPrimeZeros,
    GPrimeZeros,
    HPrimeZeros,
    HFunctionZeros,
}

impl ZeroTarget {
    pub const ALL: [ZeroTarget; 5] = [
        ZeroTarget::LambdaZeros,
        ZeroTarget::PsiPrimeZeros,
        ZeroTarget::GPrimeZeros,
        ZeroTarget::HPrimeZeros,
        ZeroTarget::HFunctionZeros,
    ];

    /// Exponent relating `w` to `r`.
    pub fn w_power(self) -> u32 {
        match self {
            ZeroTarget::HPrimeZeros | ZeroTarget::HFunctionZeros => 1,
            _ => 2,
        }
    }

    pub(crate) fn w_of(self, r: f64) -> DD {
        if self.w_power() == 2 {
            DD::mul_f64s(r, r)
        } else {
            DD::new(r)
        }
    }

    /// Multiplier of `c_k (−w)^k` in the factor's power series.
    fn weight(self, k: usize, beta: f64) -> f64 {
        let k = k as f64;
        match self {
            ZeroTarget::LambdaZeros | ZeroTarget::HFunctionZeros => 1.0,
            ZeroTarget::PsiPrimeZeros => beta + 2.0 * k,
            ZeroTarget::GPrimeZeros => 1.0 + 2.0 * k,
            ZeroTarget::HPrimeZeros => 1.0 + k,
        }
    }
}

impl fmt::Display for ZeroTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ZeroTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        let t = match key.as_str() {
            "lambda" | "lambdazeros" => ZeroTarget::LambdaZeros,
            "psiprime" | "psiprimezeros" => ZeroTarget::PsiPrimeZeros,
            "gprime" | "gprimezeros" => ZeroTarget::GPrimeZeros,
            "hprime" | "hprimezeros" => ZeroTarget::HPrimeZeros,
            "hfunction" | "hfunctionzeros" => ZeroTarget::HFunctionZeros,
            _ => return Err(Error::InvalidParams(format!("unknown zero target '{s}'"))),
        };
        Ok(t)
    }
}

/// A series value with its error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    /// Absolute bound on rounding plus dropped tail.
    pub est_error: f64,
    pub terms_used: usize,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SeriesSum {
    pub value: DD,
    pub abs_sum: f64,
    pub last: f64,
    pub terms: usize,
}

impl SeriesSum {
    pub fn est_error(&self) -> f64 {
        let rounding = self.abs_sum * (COEFF_REL_ERR + dd::EPS * (8.0 + self.terms as f64));
        2.0 * self.last + rounding
    }
}

/// Series for one parameter set, normalized to `ĉ_k = Γ(β)(γ)_k / (k! Γ(ωk+β))`.
///
/// Scaling by `Γ(β)` makes `ĉ_0 = 1`, which keeps large `β` away from
/// underflow; the scale is restored only where `φ` itself is reported.
/// Coefficients are held as successive ratios `ĉ_{k+1}/ĉ_k`, so a term
/// `ĉ_k x^k` is built multiplicatively and never underflows before it is
/// negligible. The ratio table grows on demand and is shared between threads.
#[derive(Debug)]
pub struct PhiSeries {
    params: MLParams,
    ratios: RwLock<Arc<Vec<DD>>>,
    inv_gamma_beta: DD,
}

impl Clone for PhiSeries {
    fn clone(&self) -> Self {
        PhiSeries {
            params: self.params,
            ratios: RwLock::new(self.ratio_table()),
            inv_gamma_beta: self.inv_gamma_beta,
        }
    }
}

const INITIAL_RATIOS: usize = 128;

fn compute_ratios(params: &MLParams, from: usize, to: usize) -> Vec<DD> {
    let MLParams { omega, beta, gamma } = *params;
    let lg = |k: usize| ln_gamma_dd(DD::mul_f64s(omega, k as f64) + beta);
    let mut prev = lg(from);
    (from..to)
        .map(|k| {
            let next = lg(k + 1);
            let poch = DD::new(gamma + k as f64) / (k as f64 + 1.0);
            let r = poch * (prev - next).exp();
            prev = next;
            r
        })
        .collect()
}

impl PhiSeries {
    pub fn new(params: MLParams) -> Self {
        let lg_beta = ln_gamma_dd(DD::new(params.beta));
        PhiSeries {
            params,
            ratios: RwLock::new(Arc::new(compute_ratios(&params, 0, INITIAL_RATIOS))),
            inv_gamma_beta: (-lg_beta).exp(),
        }
    }

    pub fn params(&self) -> &MLParams {
        &self.params
    }

    fn ratio_table(&self) -> Arc<Vec<DD>> {
        Arc::clone(&self.ratios.read().unwrap_or_else(|e| e.into_inner()))
    }

    /// Ratio table with at least `len` entries.
    fn grow(&self, len: usize) -> Arc<Vec<DD>> {
        let mut guard = self.ratios.write().unwrap_or_else(|e| e.into_inner());
        if guard.len() < len {
            let target = len.max(2 * guard.len()).min(MAX_TERMS);
            let mut v = Vec::with_capacity(target);
            v.extend_from_slice(&guard);
            v.extend(compute_ratios(&self.params, guard.len(), target));
            *guard = Arc::new(v);
        }
        Arc::clone(&guard)
    }

    fn scaled_coefficient(&self, k: usize) -> DD {
        let rho = self.grow(k);
        rho[..k].iter().fold(DD::ONE, |c, r| c * *r)
    }

    /// Taylor coefficient `(γ)_k / (k! Γ(ωk+β))` of `φ`.
    pub fn coefficient(&self, k: usize) -> f64 {
        (self.scaled_coefficient(k) * self.inv_gamma_beta).to_f64()
    }

    /// `Σ_{k≥skip} weight(k)·ĉ_k·x^{k−skip}` with the three-small-terms stopping rule.
    fn sum(&self, x: DD, skip: usize, weight: impl Fn(usize) -> f64) -> Result<SeriesSum> {
        let mut rho = self.ratio_table();
        let mut u = self.scaled_coefficient(skip); // ĉ_k x^{k−skip}
        let mut acc = DD::ZERO;
        let mut abs_sum = 0.0f64;
        let mut max_term = 0.0f64;
        let mut small_run = 0;
        let mut last;
        let mut terms = 0;
        for k in skip..MAX_TERMS {
            let t = u * weight(k);
            let mag = t.hi.abs();
            acc = acc + t;
            abs_sum += mag;
            max_term = max_term.max(mag);
            terms += 1;
            last = mag;
            if !abs_sum.is_finite() || abs_sum > 1e300 {
                return Err(Error::NonConvergence { x: x.to_f64(), terms });
            }
            let threshold = TOL_REL * acc.hi.abs() + 1e-3 * dd::EPS * max_term;
            if mag <= threshold {
                small_run += 1;
                if small_run == 3 {
                    return Ok(SeriesSum { value: acc, abs_sum, last, terms });
                }
            } else {
                small_run = 0;
            }
            if k >= rho.len() {
                if k + 1 >= MAX_TERMS {
                    break;
                }
                rho = self.grow(k + 1);
            }
            u = u * rho[k] * x;
        }
        Err(Error::NonConvergence { x: x.to_f64(), terms: terms.max(MAX_TERMS) })
    }

    /// Value of `Γ(β)·φ^{(order)}(x)`.
    pub(crate) fn eval_scaled(&self, x: DD, order: u32) -> Result<SeriesSum> {
        let m = order as usize;
        self.sum(x, m, |k| falling(k, m))
    }

    /// `φ^{(order)}(x)` for `order` in `0..=2`.
    pub fn eval(&self, x: f64, order: u32) -> Result<EvalResult> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("argument must be finite, got {x}")));
        }
        if order > 2 {
            return Err(Error::InvalidParams(format!("derivative order must be 0, 1 or 2, got {order}")));
        }
        let s = self.eval_scaled(DD::new(x), order)?;
        let scale = self.inv_gamma_beta.to_f64();
        let v = s.value * self.inv_gamma_beta;
        let value = v.to_f64();
        let conv = (v - value).abs().to_f64();
        Ok(EvalResult {
            value,
            est_error: s.est_error() * scale + conv + value.abs() * 4.0 * dd::EPS,
            terms_used: s.terms,
        })
    }

    /// `B_T(w)` and `D_T(w) = −B_T'(w)` (both scaled by `Γ(β)`).
    pub(crate) fn factor(&self, t: ZeroTarget, w: DD) -> Result<(SeriesSum, SeriesSum)> {
        let beta = self.params.beta;
        let x = -w;
        let b = self.sum(x, 0, |k| t.weight(k, beta))?;
        let d = self.sum(x, 1, |k| k as f64 * t.weight(k, beta))?;
        Ok((b, d))
    }

    /// Value of the target factor at radius `r` with its absolute error bound.
    pub fn target_value(&self, t: ZeroTarget, r: f64) -> Result<(f64, f64)> {
        let beta = self.params.beta;
        let b = self.sum(-t.w_of(r), 0, |k| t.weight(k, beta))?;
        let v = b.value.to_f64();
        Ok((v, b.est_error() + v.abs() * 4.0 * dd::EPS))
    }

    /// `U_T(w) = Σ_n w/(a_n − w)` computed from the series; requires `B_T(w) > 0`,
    /// i.e. `w` below the first zero (any negative `w` qualifies).
    pub fn zero_sum(&self, t: ZeroTarget, w: f64) -> Result<f64> {
        self.zero_sum_dd(t, DD::new(w))
    }

    pub(crate) fn zero_sum_dd(&self, t: ZeroTarget, w: DD) -> Result<f64> {
        let (b, d) = self.factor(t, w)?;
        // within a few f64 ulps of the zero the input radius itself is ambiguous
        let err = b.est_error() + 8.0 * f64::EPSILON * b.abs_sum;
        if b.value.hi <= err {
            return Err(Error::Domain(format!(
                "{t} factor is not positive at w = {} (at or beyond its first zero)",
                w.to_f64()
            )));
        }
        Ok((w * d.value / b.value).to_f64())
    }

    /// `zu'(z)/u(z)` at `z = r > 0`.
    pub fn ratio_starlike(&self, norm: Normalization, r: f64) -> Result<f64> {
        check_radius(r)?;
        let u = self.zero_sum_dd(norm.function_target(), norm.function_target().w_of(r))?;
        let kappa = match norm {
            Normalization::F => 1.0 / self.params.beta,
            _ => 1.0,
        };
        Ok(1.0 - norm.pair_factor() * kappa * u)
    }

    /// `1 + zu''(z)/u'(z)` at `z = r > 0`.
    pub fn ratio_convex(&self, norm: Normalization, r: f64) -> Result<f64> {
        check_radius(r)?;
        let dt = norm.derivative_target();
        let u_d = self.zero_sum_dd(dt, dt.w_of(r))?;
        match norm {
            Normalization::F => {
                let u_l = self.zero_sum_dd(ZeroTarget::LambdaZeros, ZeroTarget::LambdaZeros.w_of(r))?;
                let beta = self.params.beta;
                Ok(1.0 - 2.0 * u_d - (1.0 / beta - 1.0) * 2.0 * u_l)
            }
            _ => Ok(1.0 - norm.pair_factor() * u_d),
        }
    }

    /// `J(α, u) = (1−α)·zu'/u + α·(1 + zu''/u')` at `z = r`.
    pub fn j_value(&self, norm: Normalization, alpha: f64, r: f64) -> Result<f64> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParams(format!("alpha must be finite, got {alpha}")));
        }
        let star = if alpha != 1.0 { self.ratio_starlike(norm, r)? } else { 0.0 };
        let conv = if alpha != 0.0 { self.ratio_convex(norm, r)? } else { 0.0 };
        Ok((1.0 - alpha) * star + alpha * conv)
    }

    /// Power sums `Σ_n a_n^{−p}`, `p = 1..=count`, over the zeros of a target
    /// factor, from its Taylor coefficients (logarithmic series / Newton identities).
    pub fn power_sums(&self, t: ZeroTarget, count: usize) -> Vec<f64> {
        let beta = self.params.beta;
        let rho = self.grow(count);
        let b0 = DD::new(t.weight(0, beta));
        let mut ck = DD::ONE;
        let a: Vec<DD> = (0..=count)
            .map(|k| {
                if k > 0 {
                    ck = ck * rho[k - 1];
                }
                let c = ck * t.weight(k, beta) / b0;
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let mut l = vec![DD::ZERO; count + 1];
        let mut sums = Vec::with_capacity(count);
        for p in 1..=count {
            let mut acc = DD::ZERO;
            for j in 1..p {
                acc = acc + l[j] * a[p - j] * j as f64;
            }
            l[p] = a[p] - acc / p as f64;
            sums.push((-l[p] * p as f64).to_f64());
        }
        sums
    }
}

fn falling(k: usize, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (k - j) as f64)
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive and finite, got {r}")))
    }
}

/// `φ(ω, β, γ, x)`.
pub fn eval_phi(params: &MLParams, x: f64) -> Result<EvalResult> {
    PhiSeries::new(*params).eval(x, 0)
}

/// `d^m φ / dx^m` for `m ∈ {1, 2}` by term-wise differentiation.
pub fn eval_phi_derivative(params: &MLParams, x: f64, order: u32) -> Result<EvalResult> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidParams(format!("derivative order must be 1 or 2, got {order}")));
    }
    PhiSeries::new(*params).eval(x, order)
}

pub fn ratio_starlike(params: &MLParams, norm: Normalization, r: f64) -> Result<f64> {
    PhiSeries::new(*params).ratio_starlike(norm, r)
}

pub fn ratio_convex(params: &MLParams, norm: Normalization, r: f64) -> Result<f64> {
    PhiSeries::new(*params).ratio_convex(norm, r)
}

pub fn eval_j(params: &MLParams, norm: Normalization, alpha: f64, r: f64) -> Result<f64> {
    PhiSeries::new(*params).j_value(norm, alpha, r)
}
