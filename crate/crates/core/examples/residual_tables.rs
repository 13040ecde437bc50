//! Residual errors |E_S|, |E_I|, |E_R| on t = 0, 0.2, ..., 1 for both methods
//! at published orders 5 and 10.

use sir_series::dtm::dtm_solve;
use sir_series::ladm::ladm_solve;
use sir_series::model::residual_point;
use sir_series::{InitialState, SirParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let params = SirParams::default();
    let init = InitialState::default();

    for order in [5, 10] {
        // DTM listings of order n stop at t^(n-1); LADM partial sums at t^n.
        let dtm = dtm_solve(&params, &init, order - 1)?;
        let (ladm, _) = ladm_solve(&params, &init, order)?;
        println!("order n = {order}");
        println!(
            "  {:>4}  {:>12} {:>12} {:>12}  {:>12} {:>12} {:>12}",
            "t", "LADM E_S", "E_I", "E_R", "DTM E_S", "E_I", "E_R"
        );
        for step in 0..=5 {
            let t = step as f64 * 0.2;
            let l = residual_point(&ladm, &params, t)?.abs();
            let d = residual_point(&dtm, &params, t)?.abs();
            println!(
                "  {t:>4.1}  {:>12.5e} {:>12.5e} {:>12.5e}  {:>12.5e} {:>12.5e} {:>12.5e}",
                l[0], l[1], l[2], d[0], d[1], d[2]
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
