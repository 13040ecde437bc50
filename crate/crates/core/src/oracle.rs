//! Fixed-step classical Runge-Kutta integration of the system, used as an
//! independent reference for the series solutions.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{rhs, InitialState, SeriesSolution, SirParams};

/// Step used when no other step is requested.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Sampled states `(S, I, R)` at strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 3]>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, [f64; 3])> {
        Some((*self.times.last()?, *self.states.last()?))
    }

    /// CSV with header `t,S,I,R` and 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,S,I,R\n");
        for (t, [s, i, r]) in self.times.iter().zip(&self.states) {
            writeln!(
                out,
                "{},{},{},{}",
                sci17(*t),
                sci17(*s),
                sci17(*i),
                sci17(*r)
            )
            .unwrap();
        }
        out
    }
}

/// Scientific notation with 17 significant digits (round-trips any `f64`).
pub fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

fn rk4_step(params: &SirParams, t: f64, y: [f64; 3], h: f64) -> [f64; 3] {
    let f = |t: f64, y: [f64; 3]| rhs(params, t, y[0], y[1], y[2]);
    let shift =
        |y: [f64; 3], k: [f64; 3], c: f64| [y[0] + c * k[0], y[1] + c * k[1], y[2] + c * k[2]];

    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, shift(y, k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, shift(y, k2, 0.5 * h));
    let k4 = f(t + h, shift(y, k3, h));
    std::array::from_fn(|n| y[n] + h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]))
}

/// Integrates from `t = 0` to `t_end` with step `step`; the last step is
/// shortened so the trajectory ends exactly at `t_end`.
pub fn rk4_integrate(
    params: &SirParams,
    init: &InitialState,
    t_end: f64,
    step: f64,
) -> Result<Trajectory> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Usage(format!(
            "step must be positive and finite, got {step}"
        )));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::Usage(format!(
            "end time must be finite and non-negative, got {t_end}"
        )));
    }
    params.validate()?;
    init.validate()?;

    // Guard against a sliver step when t_end / step is integral up to rounding.
    let full_steps = ((t_end / step) * (1.0 - 1e-12)).ceil() as usize;
    let mut times = Vec::with_capacity(full_steps + 1);
    let mut states = Vec::with_capacity(full_steps + 1);
    let mut y = init.as_array();
    times.push(0.0);
    states.push(y);

    for k in 0..full_steps {
        let t = k as f64 * step;
        let t_next = if k + 1 == full_steps {
            t_end
        } else {
            (k + 1) as f64 * step
        };
        y = rk4_step(params, t, y, t_next - t);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { t: t_next });
        }
        times.push(t_next);
        states.push(y);
    }
    Ok(Trajectory { times, states })
}

/// Largest max-norm gap between `sol` and the trajectory over its samples.
pub fn max_deviation(sol: &SeriesSolution, traj: &Trajectory) -> Result<f64> {
    if traj.is_empty() {
        return Err(Error::Usage("trajectory is empty".into()));
    }
    traj.times
        .iter()
        .zip(&traj.states)
        .try_fold(0.0f64, |worst, (&t, state)| {
            let approx = sol.state_at(t)?;
            let gap = approx
                .iter()
                .zip(state)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(worst.max(gap))
        })
}
