//! Radius of strong starlikeness from explicit zeros plus a moment tail,
//! compared with the series-only form.

use mlradii::{MLParams, Normalization, RadiusSolver};

fn main() -> mlradii::Result<()> {
    let s = RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0)?, Normalization::G).assume_real_zeros(true);
    for rho in [0.1, 0.5, 0.9, 1.0] {
        let a = s.strong_starlike(rho)?;
        let b = s.strong_starlike_closed_form(rho)?;
        println!(
            "rho = {rho}: zero sum {:.15} ({} zeros), series {:.15}",
            a.radius, a.zeros_used, b.radius
        );
    }
    Ok(())
}
