//! Deviation of series solutions of increasing degree from a fine-step RK4
//! trajectory on [0, 1].

use sir_series::dtm::dtm_solve;
use sir_series::oracle::{max_deviation, rk4_integrate, DEFAULT_STEP};
use sir_series::{InitialState, SirParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let params = SirParams::default();
    let init = InitialState::default();
    let trajectory = rk4_integrate(&params, &init, 1.0, DEFAULT_STEP)?;
    let (t_end, [s, i, r]) = trajectory.last().expect("nonempty trajectory");
    println!("RK4 at t = {t_end}: S = {s:.12}, I = {i:.12}, R = {r:.12}");

    for degree in [2, 4, 6, 8, 10, 15, 20] {
        let sol = dtm_solve(&params, &init, degree)?;
        println!(
            "degree {degree:>2}: max deviation {:.3e}",
            max_deviation(&sol, &trajectory)?
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
