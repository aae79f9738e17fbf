//! Check a radius against the defining inequality on circles just inside
//! and just outside it.

use mlradii::verify::{DEFAULT_DELTA, DEFAULT_GRID};
use mlradii::{verify_radius_geometric, MLParams, Normalization, ProblemSpec, RadiusSolver};

fn main() -> mlradii::Result<()> {
    let s = RadiusSolver::new(MLParams::new(3.0, 1.0, 1.0)?, Normalization::F);
    for problem in [
        ProblemSpec::Convex { rho: 0.0 },
        ProblemSpec::UniformConvex { eta: 1.0, rho: 0.1 },
        ProblemSpec::AlphaConvex { alpha: 0.5, rho: 0.0 },
        ProblemSpec::ParabolicStarlike { eta: 0.5, rho: 0.2 },
    ] {
        let r = s.solve(&problem)?.radius;
        let rep = verify_radius_geometric(&s, &problem, r, DEFAULT_DELTA, DEFAULT_GRID)?;
        println!(
            "{problem}: r = {r:.12}, inner holds {}, outer fails {} at angle {:?}, margin {:.2e}",
            rep.inner_pass, rep.outer_fail, rep.violation_angle_outer, rep.worst_margin_inner
        );
    }
    Ok(())
}
