//! Dense truncated power series in `t` about the origin.
//!
//! Coefficient `k` multiplies `t^k`. Every operation here is the coefficient
//! form of an elementary calculus rule: sums add coefficients, products are a
//! Cauchy convolution, and integration/differentiation shift the index while
//! rescaling by `k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncated power series `Σ coeffs[k] t^k` with finite `f64` coefficients.
///
/// Never empty: the zero series is `[0.0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

fn check_finite(coeffs: Vec<f64>, op: &'static str) -> Result<PowerSeries> {
    if coeffs.iter().all(|c| c.is_finite()) {
        Ok(PowerSeries { coeffs })
    } else {
        Err(Error::Overflow { op })
    }
}

impl PowerSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSeries("coefficient list is empty".into()));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "coefficient {k} is not finite ({})",
                coeffs[k]
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    /// Degree-0 series holding `value`.
    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![value])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Highest stored power (trailing zeros count).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`, reading zero past the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        check_finite(coeffs, "add")
    }

    pub fn scale(&self, beta: f64) -> Result<PowerSeries> {
        if !beta.is_finite() {
            return Err(Error::Usage(format!("scale factor {beta} is not finite")));
        }
        check_finite(self.coeffs.iter().map(|c| beta * c).collect(), "scale")
    }

    /// `self + beta * other`, used for the linear combinations in the solvers.
    pub fn add_scaled(&self, other: &PowerSeries, beta: f64) -> Result<PowerSeries> {
        self.add(&other.scale(beta)?)
    }

    /// Product of two series truncated to `max_degree`:
    /// `out[k] = Σ_{s=0}^{k} a[s] b[k-s]`.
    pub fn cauchy_product(&self, other: &PowerSeries, max_degree: usize) -> Result<PowerSeries> {
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..=max_degree)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                if lo > hi {
                    return 0.0;
                }
                (lo..=hi).map(|s| a[s] * b[k - s]).sum()
            })
            .collect();
        check_finite(coeffs, "cauchy_product")
    }

    /// Antiderivative vanishing at `t = 0`; the degree grows by one.
    pub fn integrate(&self) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k + 1) as f64),
        );
        PowerSeries { coeffs }
    }

    pub fn differentiate(&self) -> PowerSeries {
        if self.coeffs.len() == 1 {
            return PowerSeries::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| (k + 1) as f64 * c)
            .collect();
        PowerSeries { coeffs }
    }

    /// Horner evaluation at `t`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::Usage(format!("evaluation point {t} is not finite")));
        }
        let value = self.horner(t);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Overflow { op: "evaluate" })
        }
    }

    /// Unchecked Horner pass; may return a non-finite value.
    pub(crate) fn horner(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Keeps coefficients `0..=max_degree`, zero-padding when shorter.
    pub fn truncate(&self, max_degree: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(max_degree + 1, 0.0);
        PowerSeries { coeffs }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coeffs).expect("finite f64 slice always serializes")
    }

    pub fn from_json(text: &str) -> Result<PowerSeries> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

/// `%g`-style rendering with `sig` significant digits: fixed notation for
/// decimal exponents in `[-4, sig)`, otherwise `d.ddddde-XX`.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if exponent < -4 || exponent >= sig as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exponent.abs())
    } else {
        let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders as `20 - 2.3 t + 0.15425 t^2 ...` with six significant digits,
/// skipping zero coefficients.
impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let magnitude = format_significant(c.abs(), 6);
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => f.write_str(&magnitude)?,
                1 => write!(f, "{magnitude} t")?,
                _ => write!(f, "{magnitude} t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for PowerSeries {
    type Error = Error;

    fn try_from(coeffs: Vec<f64>) -> Result<Self> {
        PowerSeries::new(coeffs)
    }
}

impl From<PowerSeries> for Vec<f64> {
    fn from(series: PowerSeries) -> Vec<f64> {
        series.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ps(c: &[f64]) -> PowerSeries {
        PowerSeries::new(c.to_vec()).unwrap()
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(PowerSeries::new(vec![]).is_err());
        assert!(PowerSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(PowerSeries::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn add_pads_shorter_operand() {
        assert_eq!(ps(&[1.0, 2.0]).add(&ps(&[3.0])).unwrap(), ps(&[4.0, 2.0]));
        let a = ps(&[1.5, -2.0, 0.25]);
        assert_eq!(a.add(&PowerSeries::zero()).unwrap(), a);
        assert_eq!(
            ps(&[20.0]).add(&ps(&[0.0, -2.3])).unwrap(),
            ps(&[20.0, -2.3])
        );
    }

    #[test]
    fn add_overflow_is_reported() {
        let big = ps(&[f64::MAX]);
        assert_eq!(big.add(&big), Err(Error::Overflow { op: "add" }));
    }

    #[test]
    fn scale_cases() {
        assert_eq!(ps(&[1.0, 1.0]).scale(0.0).unwrap(), ps(&[0.0, 0.0]));
        assert_eq!(
            ps(&[1.0, 2.0, 3.0]).scale(2.0).unwrap(),
            ps(&[2.0, 4.0, 6.0])
        );
        let s = ps(&[300.0]).scale(-0.001).unwrap();
        assert!((s.coeff(0) + 0.3).abs() < 1e-15);
        assert!(ps(&[1.0]).scale(f64::NAN).is_err());
        assert!(ps(&[f64::MAX]).scale(4.0).is_err());
    }

    #[test]
    fn cauchy_product_cases() {
        let one_plus_t = ps(&[1.0, 1.0]);
        assert_eq!(
            one_plus_t.cauchy_product(&one_plus_t, 2).unwrap(),
            ps(&[1.0, 2.0, 1.0])
        );
        let a = ps(&[3.0, -1.0, 0.5, 7.0]);
        assert_eq!(a.cauchy_product(&ps(&[1.0]), 2).unwrap(), a.truncate(2));
        assert_eq!(a.cauchy_product(&ps(&[1.0]), 5).unwrap(), a.truncate(5));
        // A_0 = S_0 I_0 and A_1 = S_0 I_1 + S_1 I_0 for the first-order terms.
        let p = ps(&[20.0, -2.3])
            .cauchy_product(&ps(&[15.0, -2.2]), 1)
            .unwrap();
        assert_eq!(p.coeff(0), 300.0);
        assert!((p.coeff(1) + 78.5).abs() < 1e-12);
    }

    #[test]
    fn integrate_and_differentiate_cases() {
        assert_eq!(ps(&[1.0]).integrate(), ps(&[0.0, 1.0]));
        assert_eq!(ps(&[0.0, 2.0]).integrate(), ps(&[0.0, 0.0, 1.0]));
        assert_eq!(ps(&[-2.3]).integrate(), ps(&[0.0, -2.3]));
        assert_eq!(ps(&[5.0]).differentiate(), PowerSeries::zero());
        assert_eq!(ps(&[0.0, 0.0, 1.0]).differentiate(), ps(&[0.0, 2.0]));
    }

    #[test]
    fn evaluate_cases() {
        let s = ps(&[20.0, -2.3, 0.15425, -0.00790458, 0.000309711]);
        assert_eq!(s.evaluate(0.0).unwrap(), 20.0);
        // term-by-term: 20 - 0.46 + 0.00617 - 0.0000632366 + 0.000000495538
        let naive: f64 =
            20.0 - 2.3 * 0.2 + 0.15425 * 0.04 - 0.00790458 * 0.008 + 0.000309711 * 0.0016;
        assert!((s.evaluate(0.2).unwrap() - naive).abs() < 1e-13);
        assert!((s.evaluate(0.2).unwrap() - 19.546_107_3).abs() < 1e-7);
        assert_eq!(ps(&[10.0, 0.5]).evaluate(1.0).unwrap(), 10.5);
        assert!(s.evaluate(f64::NAN).is_err());
        assert_eq!(
            ps(&[0.0, f64::MAX]).evaluate(10.0),
            Err(Error::Overflow { op: "evaluate" })
        );
    }

    #[test]
    fn truncate_cases() {
        assert_eq!(ps(&[1.0, 2.0, 3.0]).truncate(1), ps(&[1.0, 2.0]));
        assert_eq!(ps(&[1.0]).truncate(3), ps(&[1.0, 0.0, 0.0, 0.0]));
        let a = ps(&[4.0, 5.0, 6.0]);
        assert_eq!(a.truncate(a.degree()), a);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = ps(&[0.1, -1.0 / 3.0, 1e-300, 5e-324]);
        let text = a.to_json();
        assert_eq!(PowerSeries::from_json(&text).unwrap(), a);
        assert!(PowerSeries::from_json("[]").is_err());
        assert!(PowerSeries::from_json("[1, ").is_err());
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(20.0, 6), "20");
        assert_eq!(format_significant(0.15425, 6), "0.15425");
        assert_eq!(format_significant(-0.007904583333333335, 6), "-0.00790458");
        assert_eq!(format_significant(0.0003097109375000001, 6), "0.000309711");
        assert_eq!(
            format_significant(-7.177083333333346e-06, 6),
            "-7.17708e-06"
        );
        assert_eq!(format_significant(1.0746484504805533e-18, 6), "1.07465e-18");
        assert_eq!(format_significant(1234567.0, 6), "1.23457e+06");
        assert_eq!(format_significant(999999.5, 6), "1e+06");
        assert_eq!(format_significant(0.0, 6), "0");
    }

    #[test]
    fn polynomial_display() {
        let s = ps(&[
            20.0,
            -2.3,
            0.15425,
            -0.007904583333333335,
            0.0003097109375000001,
        ]);
        assert_eq!(
            s.to_string(),
            "20 - 2.3 t + 0.15425 t^2 - 0.00790458 t^3 + 0.000309711 t^4"
        );
        assert_eq!(ps(&[0.0, -1.0, 0.0]).to_string(), "-1 t");
        assert_eq!(PowerSeries::zero().to_string(), "0");
        assert_eq!(ps(&[0.0, 0.0, 1e-13]).to_string(), "1e-13 t^2");
    }

    fn small_int_series() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec((-50i32..=50).prop_map(f64::from), 1..12)
    }

    /// Dyadic coefficients pre-multiplied by `k + 1` so integration divides exactly.
    fn dyadic_series() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1024i32..=1024, 1..16).prop_map(|ns| {
            ns.into_iter()
                .enumerate()
                .map(|(k, n)| f64::from(n) / 64.0 * (k + 1) as f64)
                .collect()
        })
    }

    proptest! {
        #[test]
        fn add_commutes_on_exact_values(a in small_int_series(), b in small_int_series()) {
            let (a, b) = (ps(&a), ps(&b));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        }

        #[test]
        fn cauchy_matches_double_loop(a in small_int_series(), b in small_int_series(), extra in 0usize..4) {
            let max_degree = a.len() + b.len() - 2 + extra;
            let mut brute = vec![0.0; max_degree + 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    brute[i + j] += x * y;
                }
            }
            let got = ps(&a).cauchy_product(&ps(&b), max_degree).unwrap();
            prop_assert_eq!(got.coeffs(), &brute[..]);
        }

        #[test]
        fn differentiate_undoes_integrate_dyadic(a in dyadic_series()) {
            let a = ps(&a);
            prop_assert_eq!(a.integrate().differentiate(), a);
        }

        #[test]
        fn differentiate_undoes_integrate(a in prop::collection::vec(-1e3f64..1e3, 1..20)) {
            let a = ps(&a);
            let back = a.integrate().differentiate();
            for (x, y) in a.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((x - y).abs() <= 1e-15 * x.abs());
            }
        }

        #[test]
        fn horner_matches_power_sum(a in prop::collection::vec(-1.0f64..1.0, 1..31), t in -1.0f64..1.0) {
            let a = ps(&a);
            let naive: f64 = a.coeffs().iter().enumerate().map(|(k, c)| c * t.powi(k as i32)).sum();
            let scale: f64 = a.coeffs().iter().enumerate().map(|(k, c)| (c * t.powi(k as i32)).abs()).sum();
            let got = a.evaluate(t).unwrap();
            prop_assert!((got - naive).abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn json_round_trip_is_bit_exact(a in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..10)) {
            let a = ps(&a);
            let back = PowerSeries::from_json(&a.to_json()).unwrap();
            for (x, y) in a.coeffs().iter().zip(back.coeffs()) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
