//! Radii of uniform convexity, α-convexity, parabolic starlikeness and strong
//! starlikeness for the normalized three-parameter Mittag-Leffler functions.
//!
//! Modules, bottom up:
//!
//! * [`ml`]: the series `φ(ω, β, γ, x)`, its derivatives and the ratios `zu'/u`,
//!   `1 + zu''/u'` and `J(α, u)` on the positive real axis.
//! * [`region`]: membership of `(1/ω, β)` in the parameter region that
//!   guarantees real zeros.
//! * [`zeros`]: tables of positive zeros of the relevant factors.
//! * [`radii`]: the radius equations and their solver.
//! * [`verify`]: geometric checks of a computed radius in the complex plane.

// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dd;
pub mod error;
pub mod gamma;
pub mod ml;
pub mod radii;
pub mod region;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use gamma::{log_gamma, pochhammer};
pub use ml::{
    eval_j, eval_phi, eval_phi_derivative, ratio_convex, ratio_starlike, EvalResult, MLParams, Normalization,
    PhiSeries, ZeroTarget,
};
pub use radii::{ProblemSpec, RadiusResult, RadiusSolver, SweepParam, SweepRow, Verified};
pub use region::{in_wa, in_wb, in_wi, transform, RegionPoint, Transform, WiStatus, WiVerdict, Witness};
pub use zeros::{check_interlacing, refine_root, scan_brackets, zeros_of, ScanPolicy, ZeroTable};
pub use verify::{
    conic_membership, crosscheck_zero_sum, disk_in_sector_check, lemma_inequality_check, theta_bound_check,
    verify_radius_geometric, ComplexRatios, VerificationReport,
};
