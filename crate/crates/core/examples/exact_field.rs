//! Exact arithmetic in Q(ζ) with ζ = e^{iπ/N}, and certified signs.

use artin_center::graph::Label;
use artin_center::scalar::{cyclotomic_polynomial, FieldContext, FieldExt};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FieldContext::for_labels([3, 4, 5]);
    println!("N = {}, degree {}", ctx.n(), ctx.degree());
    println!("Φ_{} coefficients: {:?}", 2 * ctx.n(), cyclotomic_polynomial(2 * ctx.n()));

    for m in [2, 3, 4, 5, 6, 10, 12, 15] {
        let label = Label::Finite(m);
        if let Ok(c) = ctx.two_cos_pi_over(label) {
            println!("2cos(π/{m:<2}) = {c}  ≈ {:.12}", c.to_f64());
        }
    }

    // The golden ratio: 2cos(π/5) = φ satisfies φ² = φ + 1.
    let phi = ctx.two_cos_pi_over(Label::Finite(5))?;
    let lhs = &phi * &phi;
    let rhs = &phi + &ctx.one();
    println!("φ² == φ + 1: {}", lhs == rhs);

    // A difference that is tiny in floating point still gets a certified sign.
    let c5 = ctx.cos_pi_over(Label::Finite(5))?;
    let c4 = ctx.cos_pi_over(Label::Finite(4))?;
    let gap = &c5 - &c4;
    println!("cos(π/5) - cos(π/4) = {:+.3e}, sign {:?}", gap.to_f64(), gap.sign()?);

    let inv = phi.inv()?;
    println!("1/φ = {inv}  (φ·(1/φ) = {})", &phi * &inv);
    Ok(())
}
