//! Radius of η-parabolic starlikeness of order ρ; η = 0 gives starlikeness.

use mlradii::{MLParams, Normalization, RadiusSolver};

fn main() -> mlradii::Result<()> {
    let s = RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0)?, Normalization::G).assume_real_zeros(true);
    println!("starlike radius of sin z:        {:.15} (pi/2)", s.starlike(0.0)?.radius);
    println!("parabolic (eta = 1) of sin z:    {:.15} (tan r = 2r)", s.parabolic_starlike(1.0, 0.0)?.radius);

    // both forms of the equation, evaluated at the computed root
    let r = s.parabolic_starlike(0.5, 0.3)?.radius;
    println!(
        "eta = 0.5, rho = 0.3: r = {r:.15}, ratio form {:.1e}, lambda form {:.1e}",
        s.parabolic_equation(0.5, 0.3, r)?,
        s.parabolic_lambda_equation(0.5, 0.3, r)?
    );

    let h = RadiusSolver::new(MLParams::new(3.0, 1.5, 2.0)?, Normalization::H);
    println!("(3, 1.5, 2) h: starlike radius {:.15}", h.starlike(0.0)?.radius);
    Ok(())
}
