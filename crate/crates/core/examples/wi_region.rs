//! Membership of (ω, β) in the parameter region with only real zeros.

use mlradii::{in_wi, RegionPoint};
use mlradii::region::DEFAULT_MAX_C_DEPTH;

fn main() -> mlradii::Result<()> {
    for (omega, beta) in [(3.0, 1.0), (3.0, 1.5), (12.0, 0.3), (1.2, 1.0), (2.0, 2.0)] {
        let v = in_wi(RegionPoint::from_omega(omega, beta)?, DEFAULT_MAX_C_DEPTH);
        println!("({omega}, {beta}): {:?} - {}", v.status, v.reason);
        if let Some(w) = v.witness {
            let ops: Vec<String> = w.ops.iter().map(|o| o.to_string()).collect();
            println!("    origin (omega {}, beta {}) then {}", w.origin.omega(), w.origin.beta, ops.join(" "));
            let end = w.replay();
            println!("    replay ends at (omega {}, beta {})", end.omega(), end.beta);
        }
    }
    Ok(())
}
