//! The modified SIR computer-virus system, its parameters, and residual
//! functionals for checking candidate series solutions.
//!
//! The system is
//!
//! ```text
//! S' = f1(t) - λ S I - d S
//! I' = f2(t) + λ S I - ε I - d R
//! R' = f3(t) + ε I - d R
//! ```
//!
//! Note the `-d R` coupling in the `I` equation: this is the modified model,
//! not the textbook SIR system with `-d I`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Rates and forcing inputs of the system.
#[derive(Debug, Clone, PartialEq)]
pub struct SirParams {
    /// Infection rate per susceptible/infected contact.
    pub lambda: f64,
    /// Recovery rate of infected computers.
    pub epsilon: f64,
    /// Removal rate from the network.
    pub d: f64,
    /// External inflow into S, I and R as series in `t`.
    pub f1: PowerSeries,
    pub f2: PowerSeries,
    pub f3: PowerSeries,
}

impl Default for SirParams {
    fn default() -> Self {
        Self {
            lambda: 0.001,
            epsilon: 0.1,
            d: 0.1,
            f1: PowerSeries::zero(),
            f2: PowerSeries::zero(),
            f3: PowerSeries::zero(),
        }
    }
}

impl SirParams {
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("lambda", self.lambda),
            ("epsilon", self.epsilon),
            ("d", self.d),
        ] {
            if !value.is_finite() {
                return Err(Error::Validation {
                    field: field.into(),
                    message: format!("{value} is not finite"),
                });
            }
            if value < 0.0 {
                return Err(Error::Validation {
                    field: field.into(),
                    message: format!("rate must be non-negative, got {value}"),
                });
            }
        }
        Ok(())
    }

    /// True when every forcing series is a constant.
    pub fn has_constant_forcing(&self) -> bool {
        [&self.f1, &self.f2, &self.f3]
            .iter()
            .all(|f| f.coeffs()[1..].iter().all(|&c| c == 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    pub s0: f64,
    pub i0: f64,
    pub r0: f64,
}

impl Default for InitialState {
    fn default() -> Self {
        Self {
            s0: 20.0,
            i0: 15.0,
            r0: 10.0,
        }
    }
}

impl InitialState {
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [("S0", self.s0), ("I0", self.i0), ("R0", self.r0)] {
            if !value.is_finite() {
                return Err(Error::Validation {
                    field: field.into(),
                    message: format!("{value} is not finite"),
                });
            }
        }
        Ok(())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.s0, self.i0, self.r0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dtm,
    Ladm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dtm => "dtm",
            Method::Ladm => "ladm",
        }
    }

    /// The order label used for this method in published listings.
    ///
    /// Differential-transform listings label a degree `n - 1` polynomial as
    /// order `n`; decomposition partial sums of `n + 1` terms have degree `n`.
    pub fn order_label(self, degree: usize) -> usize {
        match self {
            Method::Dtm => degree + 1,
            Method::Ladm => degree,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Truncated series approximation of `(S, I, R)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    pub s: PowerSeries,
    pub i: PowerSeries,
    pub r: PowerSeries,
    pub method: Method,
    pub degree: usize,
}

impl SeriesSolution {
    pub fn components(&self) -> [&PowerSeries; 3] {
        [&self.s, &self.i, &self.r]
    }

    /// `(S(t), I(t), R(t))`.
    pub fn state_at(&self, t: f64) -> Result<[f64; 3]> {
        Ok([
            self.s.evaluate(t)?,
            self.i.evaluate(t)?,
            self.r.evaluate(t)?,
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualSample {
    pub t: f64,
    pub e_s: f64,
    pub e_i: f64,
    pub e_r: f64,
}

impl ResidualSample {
    pub fn abs(&self) -> [f64; 3] {
        [self.e_s.abs(), self.e_i.abs(), self.e_r.abs()]
    }
}

/// Right-hand side of the system at time `t`.
pub fn rhs(params: &SirParams, t: f64, s: f64, i: f64, r: f64) -> [f64; 3] {
    let infection = params.lambda * s * i;
    [
        params.f1.horner(t) - infection - params.d * s,
        params.f2.horner(t) + infection - params.epsilon * i - params.d * r,
        params.f3.horner(t) + params.epsilon * i - params.d * r,
    ]
}

/// Defect of `sol` in each equation at `t`, with `S(t) I(t)` taken as the
/// pointwise product of the evaluated series.
pub fn residual_point(sol: &SeriesSolution, params: &SirParams, t: f64) -> Result<ResidualSample> {
    let [s, i, r] = sol.state_at(t)?;
    let ds = sol.s.differentiate().evaluate(t)?;
    let di = sol.i.differentiate().evaluate(t)?;
    let dr = sol.r.differentiate().evaluate(t)?;
    let [f1, f2, f3] = [
        params.f1.evaluate(t)?,
        params.f2.evaluate(t)?,
        params.f3.evaluate(t)?,
    ];
    let infection = params.lambda * s * i;
    Ok(ResidualSample {
        t,
        e_s: ds - f1 + infection + params.d * s,
        e_i: di - f2 - infection + params.epsilon * i + params.d * r,
        e_r: dr - f3 - params.epsilon * i + params.d * r,
    })
}

/// Residuals as full series expansions (the `S I` product is kept to degree
/// `deg S + deg I`, nothing is truncated).
pub fn residual_series(
    sol: &SeriesSolution,
    params: &SirParams,
) -> Result<(PowerSeries, PowerSeries, PowerSeries)> {
    let product = sol
        .s
        .cauchy_product(&sol.i, sol.s.degree() + sol.i.degree())?;
    let lambda_si = product.scale(params.lambda)?;

    let e_s = sol
        .s
        .differentiate()
        .add_scaled(&params.f1, -1.0)?
        .add(&lambda_si)?
        .add_scaled(&sol.s, params.d)?;
    let e_i = sol
        .i
        .differentiate()
        .add_scaled(&params.f2, -1.0)?
        .add_scaled(&lambda_si, -1.0)?
        .add_scaled(&sol.i, params.epsilon)?
        .add_scaled(&sol.r, params.d)?;
    let e_r = sol
        .r
        .differentiate()
        .add_scaled(&params.f3, -1.0)?
        .add_scaled(&sol.i, -params.epsilon)?
        .add_scaled(&sol.r, params.d)?;
    Ok((e_s, e_i, e_r))
}

/// Parses a line-oriented `key = value` parameter document.
///
/// Keys: `lambda`, `epsilon`, `d`, `f1`, `f2`, `f3`, `S0`, `I0`, `R0`.
/// Forcing values take a scalar or a bracketed list `[c0, c1, ...]`.
/// `#` starts a comment. Missing keys keep their defaults.
pub fn parse_params(text: &str) -> Result<(SirParams, InitialState)> {
    let mut params = SirParams::default();
    let mut init = InitialState::default();
    let mut seen: Vec<&str> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key = value`, found `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("missing value for `{key}`"),
            });
        }
        let key = match key {
            "lambda" | "epsilon" | "d" | "f1" | "f2" | "f3" | "S0" | "I0" | "R0" => key,
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key `{other}`"),
                })
            }
        };
        if seen.contains(&key) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
        seen.push(key);

        match key {
            "f1" | "f2" | "f3" => {
                let series = parse_forcing(value, key, line_no)?;
                match key {
                    "f1" => params.f1 = series,
                    "f2" => params.f2 = series,
                    _ => params.f3 = series,
                }
            }
            _ => {
                let x = parse_scalar(value, key, line_no)?;
                match key {
                    "lambda" => params.lambda = x,
                    "epsilon" => params.epsilon = x,
                    "d" => params.d = x,
                    "S0" => init.s0 = x,
                    "I0" => init.i0 = x,
                    _ => init.r0 = x,
                }
            }
        }
    }

    params.validate()?;
    init.validate()?;
    Ok((params, init))
}

fn parse_scalar(value: &str, field: &str, line: usize) -> Result<f64> {
    let x: f64 = value.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{field}`: `{value}` is not a number"),
    })?;
    if !x.is_finite() {
        return Err(Error::Validation {
            field: field.into(),
            message: format!("{value} is not finite"),
        });
    }
    Ok(x)
}

fn parse_forcing(value: &str, field: &str, line: usize) -> Result<PowerSeries> {
    let coeffs = match value.strip_prefix('[') {
        Some(rest) => {
            let inner = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                line,
                message: format!("`{field}`: unterminated coefficient list"),
            })?;
            let mut coeffs = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| parse_scalar(s, field, line))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.is_empty() {
                coeffs.push(0.0);
            }
            coeffs
        }
        None => vec![parse_scalar(value, field, line)?],
    };
    PowerSeries::new(coeffs)
}
