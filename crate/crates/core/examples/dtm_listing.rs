//! Differential transform coefficients for the default configuration at the
//! three published orders (degrees 4, 9 and 14).

use sir_series::dtm::dtm_solve;
use sir_series::{InitialState, SirParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let params = SirParams::default();
    let init = InitialState::default();
    for degree in [4, 9, 14] {
        let sol = dtm_solve(&params, &init, degree)?;
        println!(
            "order n = {} (degree {degree})",
            sol.method.order_label(degree)
        );
        println!("  S(t) = {}", sol.s);
        println!("  I(t) = {}", sol.i);
        println!("  R(t) = {}", sol.r);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
