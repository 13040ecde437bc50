//! Laplace-Adomian decomposition solver.
//!
//! The unknowns are split into terms `S = Σ S_j` (likewise `I`, `R`) and the
//! bilinear nonlinearity `A = S I` into Adomian polynomials
//! `A_j = Σ_{i≤j} S_i I_{j-i}`. In the Laplace domain each term satisfies
//! `L[S_j] = (1/z) L[-λ A_{j-1} - d S_{j-1}]` and so on. For polynomial
//! arguments `L⁻¹[(1/z) L[g]]` is the antiderivative of `g` vanishing at 0,
//! so the recursion is carried out directly on power series and the Laplace
//! variable never appears.

use crate::dtm::DEFAULT_DEGREE_CAP;
use crate::error::{Error, Result};
use crate::model::{InitialState, Method, SeriesSolution, SirParams};
use crate::series::PowerSeries;

/// Decomposition terms; entry `j` of each list is `S_j(t)`, `I_j(t)`, `R_j(t)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecompositionTerms {
    pub s_terms: Vec<PowerSeries>,
    pub i_terms: Vec<PowerSeries>,
    pub r_terms: Vec<PowerSeries>,
}

impl DecompositionTerms {
    pub fn len(&self) -> usize {
        self.s_terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_terms.is_empty()
    }

    fn push(&mut self, (s, i, r): (PowerSeries, PowerSeries, PowerSeries)) {
        self.s_terms.push(s);
        self.i_terms.push(i);
        self.r_terms.push(r);
    }

    /// Sum of the first `count` terms of each family, truncated to `max_degree`.
    pub fn partial_sums(
        &self,
        count: usize,
        max_degree: usize,
    ) -> Result<(PowerSeries, PowerSeries, PowerSeries)> {
        let sum = |terms: &[PowerSeries]| -> Result<PowerSeries> {
            terms
                .iter()
                .take(count)
                .try_fold(PowerSeries::zero(), |acc, term| acc.add(term))
                .map(|s| s.truncate(max_degree))
        };
        Ok((
            sum(&self.s_terms)?,
            sum(&self.i_terms)?,
            sum(&self.r_terms)?,
        ))
    }
}

/// Adomian polynomials `A_0, A_1, ...` of `A = S I`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AdomianSequence {
    pub a_terms: Vec<PowerSeries>,
}

/// `A_j = Σ_{i=0}^{j} S_i I_{j-i}`, truncated to `max_degree`.
pub fn adomian_term(
    s_terms: &[PowerSeries],
    i_terms: &[PowerSeries],
    j: usize,
    max_degree: usize,
) -> Result<PowerSeries> {
    if s_terms.len() <= j || i_terms.len() <= j {
        return Err(Error::Usage(format!(
            "Adomian polynomial A_{j} needs {} terms, have S: {}, I: {}",
            j + 1,
            s_terms.len(),
            i_terms.len()
        )));
    }
    (0..=j).try_fold(PowerSeries::zero().truncate(max_degree), |acc, i| {
        acc.add(&s_terms[i].cauchy_product(&i_terms[j - i], max_degree)?)
    })
}

/// Zeroth terms: initial value plus the integrated forcing.
pub fn ladm_initial(
    params: &SirParams,
    init: &InitialState,
    max_degree: usize,
) -> Result<(PowerSeries, PowerSeries, PowerSeries)> {
    let start = |value: f64, forcing: &PowerSeries| -> Result<PowerSeries> {
        Ok(PowerSeries::constant(value)?
            .add(&forcing.integrate())?
            .truncate(max_degree))
    };
    Ok((
        start(init.s0, &params.f1)?,
        start(init.i0, &params.f2)?,
        start(init.r0, &params.f3)?,
    ))
}

/// Next decomposition term `j = terms.len()` from term `j - 1` and `A_{j-1}`.
pub fn ladm_step(
    params: &SirParams,
    terms: &DecompositionTerms,
    adomian: &AdomianSequence,
    max_degree: usize,
) -> Result<(PowerSeries, PowerSeries, PowerSeries)> {
    let j = terms.len();
    if j == 0 {
        return Err(Error::Usage(
            "decomposition needs its zeroth term before stepping".into(),
        ));
    }
    let a_prev = adomian
        .a_terms
        .get(j - 1)
        .ok_or_else(|| Error::Usage(format!("Adomian polynomial A_{} is not available", j - 1)))?;
    let (s_prev, i_prev, r_prev) = (
        &terms.s_terms[j - 1],
        &terms.i_terms[j - 1],
        &terms.r_terms[j - 1],
    );

    let s_rate = a_prev
        .scale(-params.lambda)?
        .add_scaled(s_prev, -params.d)?;
    let i_rate = a_prev
        .scale(params.lambda)?
        .add_scaled(i_prev, -params.epsilon)?
        .add_scaled(r_prev, -params.d)?;
    let r_rate = i_prev
        .scale(params.epsilon)?
        .add_scaled(r_prev, -params.d)?;

    Ok((
        s_rate.integrate().truncate(max_degree),
        i_rate.integrate().truncate(max_degree),
        r_rate.integrate().truncate(max_degree),
    ))
}

/// Order-`n` approximation `Σ_{j=0}^{n}` of the decomposition terms.
pub fn ladm_solve(
    params: &SirParams,
    init: &InitialState,
    n: usize,
) -> Result<(SeriesSolution, DecompositionTerms)> {
    ladm_solve_capped(params, init, n, DEFAULT_DEGREE_CAP)
}

pub fn ladm_solve_capped(
    params: &SirParams,
    init: &InitialState,
    n: usize,
    cap: usize,
) -> Result<(SeriesSolution, DecompositionTerms)> {
    if n > cap {
        return Err(Error::Capacity { requested: n, cap });
    }
    params.validate()?;
    init.validate()?;

    let max_degree = n;
    let mut terms = DecompositionTerms::default();
    let mut adomian = AdomianSequence::default();
    terms.push(ladm_initial(params, init, max_degree)?);

    for j in 1..=n {
        adomian.a_terms.push(adomian_term(
            &terms.s_terms,
            &terms.i_terms,
            j - 1,
            max_degree,
        )?);
        let next = ladm_step(params, &terms, &adomian, max_degree)?;
        terms.push(next);
    }

    let (s, i, r) = terms.partial_sums(n + 1, max_degree)?;
    let solution = SeriesSolution {
        s,
        i,
        r,
        method: Method::Ladm,
        degree: n,
    };
    Ok((solution, terms))
}
