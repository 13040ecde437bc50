//! Truncated power-series solutions of the modified SIR computer-virus model.
//!
//! Two constructions of the same Taylor series are provided:
//!
//! - [`dtm`]: the differential transform recurrence, one coefficient of each
//!   compartment per step.
//! - [`ladm`]: Laplace-Adomian decomposition, one correction term per step,
//!   with the bilinear infection term split into Adomian polynomials.
//!
//! Solutions are checked by substituting them back into the equations
//! ([`model::residual_point`], [`model::residual_series`]) and against a
//! fixed-step Runge-Kutta reference ([`oracle`]). The [`cli`] module backs
//! the `sir-series` binary.
//!
//! ```
//! use sir_series::{dtm::dtm_solve, InitialState, SirParams};
//!
//! let sol = dtm_solve(&SirParams::default(), &InitialState::default(), 4).unwrap();
//! assert_eq!(sol.s.coeff(0), 20.0);
//! assert!((sol.s.coeff(1) + 2.3).abs() < 1e-12);
//! ```

pub mod cli;
pub mod dtm;
pub mod error;
pub mod ladm;
pub mod model;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use model::{InitialState, Method, ResidualSample, SeriesSolution, SirParams};
pub use series::PowerSeries;
