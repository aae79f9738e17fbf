//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 32 significant decimal digits. The series evaluator keeps its
//! coefficients, powers and partial sums in this form so that the strong
//! cancellation of the alternating Mittag-Leffler series on the negative
//! axis still leaves a full `f64` of accuracy in the result.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unit roundoff of the double-double format (2^-104).
pub const EPS: f64 = 4.930_380_657_631_324e-32;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const LN2: DD = DD {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

pub const PI: DD = DD {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn new(x: f64) -> Self {
        DD { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_f64s(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DD { hi, lo }
    }

    #[inline]
    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut acc = DD::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    pub fn ldexp(self, e: i32) -> Self {
        let s = 2f64.powi(e);
        DD {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    /// `exp` to double-double accuracy (relative error a few `EPS`).
    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return DD::new(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return DD::ZERO;
        }
        if self.hi == 0.0 {
            return DD::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * DD::new(k)).ldexp(-9);
        // expm1(r) by Taylor; |r| < 7e-4 so 12 terms reach below EPS.
        let mut term = r;
        let mut sum = r;
        for i in 2..=12 {
            term = term * r / DD::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < EPS * 1e-3 * sum.hi.abs() {
                break;
            }
        }
        // (1+s)^2 - 1 = 2s + s^2, applied 9 times undoes the 2^-9 scaling
        for _ in 0..9 {
            sum = sum.ldexp(1) + sum.sqr();
        }
        let res = sum + DD::ONE;
        // split the scaling so subnormal results do not lose the low word early
        let k = k as i32;
        if k < -1000 {
            res.ldexp(k + 600).ldexp(-600)
        } else {
            res.ldexp(k)
        }
    }

    /// Natural logarithm by one Newton step on `exp`, after splitting off the
    /// binary exponent so `exp(−x0)` never lands in the subnormal range.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return DD::new(f64::NAN);
        }
        let e = self.hi.log2().floor() as i32;
        let m = self.ldexp(-e);
        let x0 = DD::new(m.hi.ln());
        LN2 * e as f64 + x0 + m * (-x0).exp() - DD::ONE
    }
}

impl From<f64> for DD {
    fn from(x: f64) -> Self {
        DD::new(x)
    }
}

impl Neg for DD {
    type Output = DD;
    #[inline]
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DD {
    type Output = DD;
    #[inline]
    fn add(self, b: DD) -> DD {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        DD { hi, lo }
    }
}

impl Sub for DD {
    type Output = DD;
    #[inline]
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    #[inline]
    fn mul(self, b: DD) -> DD {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b * DD::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DD::new(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DD { hi: q1, lo: q2 } + DD::new(q3)
    }
}

impl Add<f64> for DD {
    type Output = DD;
    #[inline]
    fn add(self, b: f64) -> DD {
        self + DD::new(b)
    }
}

impl Sub<f64> for DD {
    type Output = DD;
    #[inline]
    fn sub(self, b: f64) -> DD {
        self + DD::new(-b)
    }
}

impl Mul<f64> for DD {
    type Output = DD;
    #[inline]
    fn mul(self, b: f64) -> DD {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        DD { hi, lo }
    }
}

impl Div<f64> for DD {
    type Output = DD;
    #[inline]
    fn div(self, b: f64) -> DD {
        self / DD::new(b)
    }
}

impl PartialOrd for DD {
    fn partial_cmp(&self, other: &DD) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}
