//! Evaluate the three-parameter Mittag-Leffler function and its derivatives.

use mlradii::{eval_phi, eval_phi_derivative, MLParams};

fn main() -> mlradii::Result<()> {
    // ω = β = γ = 1 is the exponential
    let exp = MLParams::new(1.0, 1.0, 1.0)?;
    for x in [-5.0, -1.0, 0.5, 3.0] {
        let r = eval_phi(&exp, x)?;
        println!("phi(1,1,1,{x:>4}) = {:.16e}  (exp = {:.16e}, bound {:.1e})", r.value, f64::exp(x), r.est_error);
    }

    // φ(2, 2, 1, −r²) = sin r / r
    let sinc = MLParams::new(2.0, 2.0, 1.0)?;
    let r = 1.3_f64;
    let v = eval_phi(&sinc, -r * r)?.value;
    println!("phi(2,2,1,-r^2) = {v:.16} vs sin(r)/r = {:.16}", r.sin() / r);

    let p = MLParams::new(1.5, 1.2, 2.5)?;
    for order in 1..=2 {
        let d = eval_phi_derivative(&p, -2.0, order)?;
        println!("d^{order}/dx^{order} phi(1.5,1.2,2.5,x) at x = -2: {:.16} ({} terms)", d.value, d.terms_used);
    }
    Ok(())
}
