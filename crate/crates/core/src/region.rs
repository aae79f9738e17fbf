//! Parameter region on which every zero of `φ(ω, β, γ, ·)` is real and negative.
//!
//! Points are pairs `(x, β)` with `x = 1/ω ∈ (0, 1)`. Starting from
//!
//! ```text
//! W_a = {(x, β) : 1 < 1/x < 2, β ∈ [1/x − 1, 1] ∪ [1/x, 2]}
//! ```
//!
//! the maps `A(x, β) = (x/2, β)`, `B(x, β) = (x/2, 1/x + β)` and
//! `C(x, β) = (x, β − 1)` (identity when `β ≤ 1`) generate
//! `W_b = A(W_a) ∪ B(W_a)` and its closure `W_i`.
//!
//! # Decision procedure
//!
//! A `C` step never needs to precede an `A` or `B` step: `C` commutes with `A`,
//! `C∘B = B∘C` whenever `C` is not the identity, and otherwise it can be
//! dropped. Every point of `W_i` is therefore reached by
//!
//! 1. a `W_a` origin `(x_a, β_a)`,
//! 2. `m + 1` steps, each `A` or `B`, where `2^{m+1} x = x_a ∈ (1/2, 1)`,
//! 3. `K ≥ 0` trailing `C` steps.
//!
//! `m` is fixed by `x`; for each `A`/`B` pattern the shift `D` added by the
//! `B` steps is known, and `β_a = β + K − D` must lie in the `W_a` interval
//! for some integer `K`. The search enumerates patterns depth-first and is
//! exact apart from the cap on `K`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack applied at the closed `W_a` interval endpoints.
pub const ENDPOINT_EPS: f64 = 1e-12;

pub const DEFAULT_MAX_C_DEPTH: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub x: f64,
    pub beta: f64,
}

impl RegionPoint {
    pub fn new(x: f64, beta: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidParams(format!("x = 1/omega must lie in (0, 1), got {x}")));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParams(format!("beta must be positive and finite, got {beta}")));
        }
        Ok(RegionPoint { x, beta })
    }

    /// Point `(1/ω, β)`; requires `ω > 1`.
    pub fn from_omega(omega: f64, beta: f64) -> Result<Self> {
        if !(omega > 1.0) || !omega.is_finite() {
            return Err(Error::InvalidParams(format!("omega must be finite and > 1, got {omega}")));
        }
        RegionPoint::new(1.0 / omega, beta)
    }

    pub fn omega(&self) -> f64 {
        1.0 / self.x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transform {
    A,
    B,
    C,
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn transform(op: Transform, p: RegionPoint) -> RegionPoint {
    match op {
        Transform::A => RegionPoint { x: p.x / 2.0, beta: p.beta },
        Transform::B => RegionPoint { x: p.x / 2.0, beta: 1.0 / p.x + p.beta },
        Transform::C if p.beta > 1.0 => RegionPoint { x: p.x, beta: p.beta - 1.0 },
        Transform::C => p,
    }
}

fn in_wa_interval(omega: f64, beta: f64, eps: f64) -> bool {
    (beta >= omega - 1.0 - eps && beta <= 1.0 + eps) || (beta >= omega - eps && beta <= 2.0 + eps)
}

pub fn in_wa(p: RegionPoint) -> bool {
    let omega = p.omega();
    omega > 1.0 && omega < 2.0 && in_wa_interval(omega, p.beta, ENDPOINT_EPS)
}

pub fn in_wb(p: RegionPoint) -> bool {
    if !(p.x > 0.25 && p.x < 0.5) {
        return false;
    }
    let origin_x = 2.0 * p.x;
    let wa = |beta: f64| beta > 0.0 && in_wa(RegionPoint { x: origin_x, beta });
    wa(p.beta) || wa(p.beta - 1.0 / origin_x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WiStatus {
    Member,
    NonMember,
    Unknown,
}

/// Forward derivation: `origin ∈ W_a`, then `ops` in order. `points[0]` is the
/// origin and `points[i+1]` the image after `ops[i]`; `points[1]` lies in `W_b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub origin: RegionPoint,
    pub ops: Vec<Transform>,
    pub points: Vec<RegionPoint>,
}

impl Witness {
    /// Replay the chain forward from the origin.
    pub fn replay(&self) -> RegionPoint {
        self.ops.iter().fold(self.origin, |p, &op| transform(op, p))
    }

    /// The chain read backwards: the inverse steps from the query down to `W_b`.
    pub fn inverse_chain(&self) -> Vec<(Transform, RegionPoint)> {
        (1..self.points.len())
            .rev()
            .map(|i| (self.ops[i - 1], self.points[i - 1]))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WiVerdict {
    pub status: WiStatus,
    pub witness: Option<Witness>,
    pub reason: String,
}

impl WiVerdict {
    fn non_member(reason: impl Into<String>) -> Self {
        WiVerdict { status: WiStatus::NonMember, witness: None, reason: reason.into() }
    }
}

struct Search {
    beta: f64,
    origin_x: f64,
    omega_a: f64,
    levels: usize,
    max_c: u32,
    depth_limited: bool,
}

impl Search {
    /// Smallest admissible `K` for shift `d`, if any.
    fn solve_k(&mut self, d: f64) -> Option<(u32, f64)> {
        let base = self.beta - d;
        let k_lo = (self.omega_a - 1.0 - base - ENDPOINT_EPS).ceil().max(0.0);
        let k_hi = (2.0 - base + ENDPOINT_EPS).floor();
        let mut k = k_lo;
        while k <= k_hi {
            let beta_a = base + k;
            if beta_a > 0.0 && in_wa_interval(self.omega_a, beta_a, ENDPOINT_EPS) {
                if k > self.max_c as f64 {
                    self.depth_limited = true;
                    return None;
                }
                return Some((k as u32, beta_a));
            }
            k += 1.0;
        }
        None
    }

    fn dfs(&mut self, level: usize, d: f64, ops: &mut Vec<Transform>) -> Option<(u32, f64)> {
        if d > self.beta + self.max_c as f64 + 2.0 {
            self.depth_limited = true;
            return None;
        }
        if level == self.levels {
            return self.solve_k(d);
        }
        let step = 2f64.powi(level as i32) / self.origin_x;
        for (op, add) in [(Transform::A, 0.0), (Transform::B, step)] {
            ops.push(op);
            if let Some(found) = self.dfs(level + 1, d + add, ops) {
                return Some(found);
            }
            ops.pop();
        }
        None
    }
}

/// Decide membership of `p` in `W_i`, allowing at most `max_c_depth` `C` steps.
pub fn in_wi(p: RegionPoint, max_c_depth: u32) -> WiVerdict {
    if p.x >= 0.5 {
        return WiVerdict::non_member(format!(
            "x = 1/omega = {} >= 1/2; every point of W_i has x < 1/2",
            p.x
        ));
    }
    // smallest m with 2^m x > 1/4; membership needs 2^m x < 1/2 as well
    let mut m = 0usize;
    let mut scaled = p.x;
    while scaled <= 0.25 {
        scaled *= 2.0;
        m += 1;
    }
    if scaled >= 0.5 {
        return WiVerdict::non_member(format!(
            "x = {} is 1/2^k for some k; no W_a origin has 1/omega in (1/2, 1) above it",
            p.x
        ));
    }
    let origin_x = 2.0 * scaled;
    let mut search = Search {
        beta: p.beta,
        origin_x,
        omega_a: 1.0 / origin_x,
        levels: m + 1,
        max_c: max_c_depth,
        depth_limited: false,
    };
    let mut ops = Vec::with_capacity(m + 1);
    match search.dfs(0, 0.0, &mut ops) {
        Some((k, beta_a)) => {
            let origin = RegionPoint { x: origin_x, beta: beta_a };
            ops.extend(std::iter::repeat_n(Transform::C, k as usize));
            let mut points = vec![origin];
            for &op in &ops {
                points.push(transform(op, *points.last().unwrap()));
            }
            WiVerdict {
                status: WiStatus::Member,
                witness: Some(Witness { origin, ops, points }),
                reason: format!("reached from W_a origin (omega = {}, beta = {beta_a})", 1.0 / origin_x),
            }
        }
        None if search.depth_limited => WiVerdict {
            status: WiStatus::Unknown,
            witness: None,
            reason: format!("no derivation with at most {max_c_depth} C steps; deeper chains not searched"),
        },
        None => WiVerdict::non_member(format!(
            "no A/B pattern over {} levels reaches the W_a band for any number of C steps",
            m + 1
        )),
    }
}
