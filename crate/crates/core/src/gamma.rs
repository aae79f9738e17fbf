//! Log-gamma and Pochhammer symbol.
//!
//! `ln Γ` is evaluated in double-double arithmetic: the argument is shifted
//! above 25 by the recurrence `Γ(x+1) = xΓ(x)` and the Stirling series is
//! summed with fifteen exact Bernoulli coefficients. The `f64` entry points
//! round the double-double result once.

use std::sync::OnceLock;

use crate::dd::{DD, PI};
use crate::error::Error;

/// Bernoulli numbers B_2 .. B_30 as exact (numerator, denominator) pairs.
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

const STIRLING_MIN: f64 = 25.0;

fn stirling_coeffs() -> &'static [DD; 15] {
    static C: OnceLock<[DD; 15]> = OnceLock::new();
    C.get_or_init(|| {
        let mut out = [DD::ZERO; 15];
        for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
            let n = 2.0 * (k as f64 + 1.0);
            out[k] = DD::new(num) / (DD::new(den) * DD::new(n * (n - 1.0)));
        }
        out
    })
}

fn half_ln_two_pi() -> DD {
    static C: OnceLock<DD> = OnceLock::new();
    *C.get_or_init(|| (PI * 2.0).ln() * 0.5)
}

fn stirling(z: DD) -> DD {
    let inv = DD::ONE / z;
    let inv2 = inv * inv;
    let mut corr = DD::ZERO;
    let mut p = inv;
    for c in stirling_coeffs() {
        corr = corr + *c * p;
        p = p * inv2;
    }
    (z - 0.5) * z.ln() - z + half_ln_two_pi() + corr
}

/// `ln Γ(x)` in double-double precision for `x > 0`.
pub(crate) fn ln_gamma_dd(x: DD) -> DD {
    debug_assert!(x.hi > 0.0);
    if x.hi >= STIRLING_MIN {
        return stirling(x);
    }
    let shift = (STIRLING_MIN - x.hi).ceil() as usize;
    let mut prod = x;
    for j in 1..shift {
        prod = prod * (x + j as f64);
    }
    stirling(x + shift as f64) - prod.ln()
}

/// Natural logarithm of the Gamma function.
pub fn log_gamma(x: f64) -> Result<f64, Error> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma requires a finite positive argument, got {x}"
        )));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    Ok(ln_gamma_dd(DD::new(x)).to_f64())
}

/// Pochhammer symbol `(γ)_k = Γ(γ+k)/Γ(γ)`.
///
/// Direct product for `k <= 32`, log-gamma difference beyond.
pub fn pochhammer(gamma: f64, k: u32) -> Result<f64, Error> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParams(format!(
            "pochhammer requires gamma > 0, got {gamma}"
        )));
    }
    if k <= 32 {
        let mut p = DD::ONE;
        for j in 0..k {
            p = p * (gamma + j as f64);
        }
        return Ok(p.to_f64());
    }
    let g = DD::new(gamma);
    Ok((ln_gamma_dd(g + k as f64) - ln_gamma_dd(g)).exp().to_f64())
}
