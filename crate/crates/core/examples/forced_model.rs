//! A configuration read from a parameter document, with external inflow
//! given as a series in t, solved by both methods and checked against RK4.

use sir_series::cli::coefficient_deviation;
use sir_series::dtm::dtm_solve;
use sir_series::ladm::ladm_solve;
use sir_series::model::{parse_params, residual_series};
use sir_series::oracle::{max_deviation, rk4_integrate};

const DOC: &str = "\
# growing network: new susceptible machines join at 1 + 0.5 t per unit time
lambda = 0.002
epsilon = 0.15
f1 = [1, 0.5]
f3 = 0.2
";

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let (params, init) = parse_params(DOC)?;
    let degree = 12;
    let dtm = dtm_solve(&params, &init, degree)?;
    let (ladm, _) = ladm_solve(&params, &init, degree)?;
    println!("S(t) = {}", dtm.s);
    println!(
        "DTM/LADM coefficient gap: {:.2e}",
        coefficient_deviation(&dtm, &ladm, 1e-18)
    );

    let (e_s, _, _) = residual_series(&dtm, &params)?;
    let low = e_s.coeffs()[..degree]
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs()));
    println!("largest E_S coefficient below t^{degree}: {low:.2e}");

    let trajectory = rk4_integrate(&params, &init, 1.0, 1e-3)?;
    println!(
        "max deviation from RK4 on [0, 1]: {:.2e}",
        max_deviation(&dtm, &trajectory)?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
