//! Samples the degree-10 LADM solution on [0, 1] and prints `t,S,I,R` rows,
//! ready for plotting S-I, S-R, I-R or S-I-R phase curves.

use sir_series::ladm::ladm_solve;
use sir_series::oracle::Trajectory;
use sir_series::{InitialState, SirParams};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let (sol, _) = ladm_solve(&SirParams::default(), &InitialState::default(), 10)?;
    let times: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let states = times
        .iter()
        .map(|&t| sol.state_at(t))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", Trajectory { times, states }.to_csv());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
