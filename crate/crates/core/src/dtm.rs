//! Differential transform solver.
//!
//! The transform of `f` is its Taylor coefficient sequence `F(k)`. Applying
//! the transform rules to each equation of the system turns it into an
//! explicit recurrence for `(S_k, I_k, R_k)`:
//!
//! ```text
//! S_{k+1} = (F1(k) - λ Σ_{i≤k} S_i I_{k-i} - d S_k) / (k+1)
//! I_{k+1} = (F2(k) + λ Σ_{i≤k} S_i I_{k-i} - ε I_k - d R_k) / (k+1)
//! R_{k+1} = (F3(k) + ε I_k - d R_k) / (k+1)
//! ```

use crate::error::{Error, Result};
use crate::model::{InitialState, Method, SeriesSolution, SirParams};
use crate::series::PowerSeries;

/// Largest degree the solvers accept unless a different cap is given.
pub const DEFAULT_DEGREE_CAP: usize = 128;

/// Elementary functions with a closed-form transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    /// `t^m`
    Monomial(usize),
    /// `exp(rate t)`
    Exponential { rate: f64 },
    /// `sin(omega t + phase)`
    Sine { omega: f64, phase: f64 },
    /// `cos(omega t + phase)`
    Cosine { omega: f64, phase: f64 },
}

/// Transform coefficients `F(0..=max_degree)` of an elementary function.
pub fn dtm_transform(desc: Elementary, max_degree: usize) -> Result<PowerSeries> {
    let finite = |name: &str, x: f64| {
        if x.is_finite() {
            Ok(())
        } else {
            Err(Error::Validation {
                field: name.into(),
                message: format!("{x} is not finite"),
            })
        }
    };

    let coeffs = match desc {
        Elementary::Monomial(m) => {
            let mut c = vec![0.0; max_degree + 1];
            if m <= max_degree {
                c[m] = 1.0;
            }
            c
        }
        Elementary::Exponential { rate } => {
            finite("rate", rate)?;
            rate_powers_over_factorial(rate, max_degree)
        }
        Elementary::Sine { omega, phase } | Elementary::Cosine { omega, phase } => {
            finite("omega", omega)?;
            finite("phase", phase)?;
            // sin(πk/2 + α) cycles through sin α, cos α, -sin α, -cos α.
            let (sin_a, cos_a) = phase.sin_cos();
            let cycle = match desc {
                Elementary::Sine { .. } => [sin_a, cos_a, -sin_a, -cos_a],
                _ => [cos_a, -sin_a, -cos_a, sin_a],
            };
            rate_powers_over_factorial(omega, max_degree)
                .into_iter()
                .enumerate()
                .map(|(k, w)| w * cycle[k % 4])
                .collect()
        }
    };
    PowerSeries::new(coeffs).map_err(|_| Error::Overflow {
        op: "dtm_transform",
    })
}

fn rate_powers_over_factorial(rate: f64, max_degree: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_degree + 1);
    let mut term = 1.0;
    out.push(term);
    for k in 1..=max_degree {
        term *= rate / k as f64;
        out.push(term);
    }
    out
}

/// Taylor coefficients of `(S, I, R)` up to `degree`, capped at
/// [`DEFAULT_DEGREE_CAP`].
pub fn dtm_solve(params: &SirParams, init: &InitialState, degree: usize) -> Result<SeriesSolution> {
    dtm_solve_capped(params, init, degree, DEFAULT_DEGREE_CAP)
}

pub fn dtm_solve_capped(
    params: &SirParams,
    init: &InitialState,
    degree: usize,
    cap: usize,
) -> Result<SeriesSolution> {
    if degree > cap {
        return Err(Error::Capacity {
            requested: degree,
            cap,
        });
    }
    params.validate()?;
    init.validate()?;

    let mut s = Vec::with_capacity(degree + 1);
    let mut i = Vec::with_capacity(degree + 1);
    let mut r = Vec::with_capacity(degree + 1);
    s.push(init.s0);
    i.push(init.i0);
    r.push(init.r0);

    for k in 0..degree {
        let conv: f64 = (0..=k).map(|j| s[j] * i[k - j]).sum();
        let infection = params.lambda * conv;
        let next = (k + 1) as f64;
        s.push((params.f1.coeff(k) - infection - params.d * s[k]) / next);
        i.push((params.f2.coeff(k) + infection - params.epsilon * i[k] - params.d * r[k]) / next);
        r.push((params.f3.coeff(k) + params.epsilon * i[k] - params.d * r[k]) / next);
    }

    let wrap = |c: Vec<f64>| PowerSeries::new(c).map_err(|_| Error::Overflow { op: "dtm_solve" });
    Ok(SeriesSolution {
        s: wrap(s)?,
        i: wrap(i)?,
        r: wrap(r)?,
        method: Method::Dtm,
        degree,
    })
}
