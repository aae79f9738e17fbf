//! Radius of α-convexity, which moves from the starlike to the convex radius.

use mlradii::{MLParams, Normalization, RadiusSolver};

fn main() -> mlradii::Result<()> {
    let s = RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0)?, Normalization::G).assume_real_zeros(true);
    for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r = s.alpha_convex(alpha, 0.0)?;
        println!("alpha = {alpha:<4}  radius = {:.15}  verified = {:?}", r.radius, r.verified);
    }
    Ok(())
}
