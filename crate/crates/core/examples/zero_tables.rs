//! Zero tables of the factors behind each radius, and their interlacing.

use mlradii::{check_interlacing, zeros_of, MLParams, ZeroTarget};

fn main() -> mlradii::Result<()> {
    let p = MLParams::new(3.0, 1.0, 1.0)?;
    let lambda = zeros_of(&p, ZeroTarget::LambdaZeros, 5)?;
    let gprime = zeros_of(&p, ZeroTarget::GPrimeZeros, 5)?;
    println!("(omega, beta, gamma) = (3, 1, 1)");
    for (i, (a, b)) in gprime.zeros.iter().zip(&lambda.zeros).enumerate() {
        println!("  n = {}: g' zero {a:.12}   lambda zero {b:.12}", i + 1);
    }
    println!("interlacing: {}", check_interlacing(&lambda, &gprime));

    // the cosine case: zeros (2n − 1)π/2
    let cos = zeros_of(&MLParams::new(2.0, 1.0, 1.0)?, ZeroTarget::LambdaZeros, 3)?;
    println!("cos zeros: {:?}", cos.zeros);
    println!("{}", serde_json::to_string(&cos).expect("zero tables serialize"));
    Ok(())
}
