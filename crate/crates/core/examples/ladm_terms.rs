//! Laplace-Adomian decomposition: individual terms, Adomian polynomials and
//! the assembled partial sum, checked against the differential transform.

use sir_series::dtm::dtm_solve;
use sir_series::ladm::{adomian_term, ladm_solve};
use sir_series::{InitialState, SirParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let params = SirParams::default();
    let init = InitialState::default();
    let n = 10;
    let (sol, terms) = ladm_solve(&params, &init, n)?;

    for j in [0, 1, 2, 10] {
        println!(
            "S_{j}(t) = {:<24} I_{j}(t) = {:<24} R_{j}(t) = {}",
            terms.s_terms[j].to_string(),
            terms.i_terms[j].to_string(),
            terms.r_terms[j]
        );
    }
    for j in 0..3 {
        let a = adomian_term(&terms.s_terms, &terms.i_terms, j, n)?;
        println!("A_{j}(t) = {a}");
    }

    println!("partial sum S_{n}(t) = {}", sol.s);
    let dtm = dtm_solve(&params, &init, n)?;
    let gap = sol
        .s
        .coeffs()
        .iter()
        .zip(dtm.s.coeffs())
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max);
    println!("max relative gap to DTM coefficients: {gap:.2e}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
