//! Transforms of elementary functions and the sin^2 + cos^2 = 1 identity
//! checked through Cauchy products.

use sir_series::dtm::{dtm_transform, Elementary};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let degree = 8;
    let cases = [
        ("t^3", Elementary::Monomial(3)),
        ("exp(0.5 t)", Elementary::Exponential { rate: 0.5 }),
        (
            "sin(2t + 0.3)",
            Elementary::Sine {
                omega: 2.0,
                phase: 0.3,
            },
        ),
        (
            "cos(2t + 0.3)",
            Elementary::Cosine {
                omega: 2.0,
                phase: 0.3,
            },
        ),
    ];
    for (name, desc) in cases {
        println!("{name:>14} -> {}", dtm_transform(desc, degree)?);
    }

    let sin = dtm_transform(
        Elementary::Sine {
            omega: 2.0,
            phase: 0.3,
        },
        degree,
    )?;
    let cos = dtm_transform(
        Elementary::Cosine {
            omega: 2.0,
            phase: 0.3,
        },
        degree,
    )?;
    let unit = sin
        .cauchy_product(&sin, degree)?
        .add(&cos.cauchy_product(&cos, degree)?)?;
    let defect = unit
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { (c - 1.0).abs() } else { c.abs() })
        .fold(0.0, f64::max);
    println!("sin^2 + cos^2 defect: {defect:.2e}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
