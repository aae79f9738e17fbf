//! Radius of η-uniform convexity of order ρ, and its η = 0 case (convexity).

use mlradii::{MLParams, Normalization, ProblemSpec, RadiusSolver};

fn main() -> mlradii::Result<()> {
    // g(z) = sin z lies outside the certified region, so it needs the override
    let sine = RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0)?, Normalization::G).assume_real_zeros(true);
    println!("convexity radius of sin z: {:.15}", sine.convex(0.0)?.radius);
    println!("ucv(eta = 1) radius of sin z: {:.15}  (r tan r = 1/2)", sine.uniform_convex(1.0, 0.0)?.radius);

    let p = MLParams::new(3.0, 1.0, 1.0)?;
    for norm in Normalization::ALL {
        let s = RadiusSolver::new(p, norm);
        let r = s.solve(&ProblemSpec::UniformConvex { eta: 0.5, rho: 0.2 })?;
        println!("(3,1,1) {norm}: ucv(0.5, 0.2) radius {:.15}, residual {:.1e}", r.radius, r.residual);
    }
    Ok(())
}
