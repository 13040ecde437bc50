//! Power-series building blocks: sums, Cauchy products, calculus and Horner
//! evaluation, plus the JSON coefficient format.

use sir_series::PowerSeries;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let s = PowerSeries::new(vec![20.0, -2.3])?;
    let i = PowerSeries::new(vec![15.0, -2.2])?;

    // First two Adomian polynomials of S*I: 300 and -78.5 t.
    let product = s.cauchy_product(&i, 1)?;
    println!("S*I (truncated)  = {product}");

    let rate = PowerSeries::constant(-2.3)?;
    println!("integral of -2.3 = {}", rate.integrate());
    println!("d/dt (S*I)       = {}", product.differentiate());

    let s5 = PowerSeries::new(vec![20.0, -2.3, 0.15425, -0.00790458, 0.000309711])?;
    println!("S_5(0.2)         = {:.9}", s5.evaluate(0.2)?);

    let json = s5.to_json();
    println!("json             = {json}");
    assert_eq!(PowerSeries::from_json(&json)?, s5);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
