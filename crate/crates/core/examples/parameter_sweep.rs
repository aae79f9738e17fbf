//! Radius as a function of one parameter, solved in parallel.

use mlradii::radii::{linear_grid, sweep};
use mlradii::{MLParams, Normalization, ProblemSpec, RadiusSolver, SweepParam};

fn main() -> mlradii::Result<()> {
    let s = RadiusSolver::new(MLParams::new(3.0, 1.0, 1.0)?, Normalization::G);
    let base = ProblemSpec::UniformConvex { eta: 0.0, rho: 0.0 };
    let rows = sweep(&s, &base, SweepParam::Eta, &linear_grid(0.0, 4.0, 9)?)?;
    println!("eta,radius");
    for row in rows {
        match row.radius {
            Some(r) => println!("{},{r:.15}", row.value),
            None => println!("{},{}", row.value, row.status),
        }
    }
    Ok(())
}
