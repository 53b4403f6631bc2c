//! Symbolic verification of the derivative-based sandwich machinery.
//!
//! For each convergent the auxiliary polynomials
//!
//! ```text
//! beta_m  = Q_m^2 - x P_m Q_m + x P_m' Q_m - x P_m Q_m'
//! gamma_m = 2 Q_m Q_m-1 - x P_m Q_m-1 - x P_m-1 Q_m
//!           + x P_m' Q_m-1 + x P_m-1' Q_m - x P_m Q_m-1' - x P_m-1 Q_m'
//! ```
//!
//! control the sign of the derivative of the signed gap
//! `f_m = (-1)^m e^-x (F - P_m/Q_m)`. They collapse to one-term closed
//! forms (`beta_m = (-1)^m x / c_m+1`, `gamma_m+1 = (-1)^m x`), and both
//! satisfy short recurrences in `m`. Everything here is checked as an exact
//! polynomial identity, never pointwise.

use num::Signed;

use crate::cf::{
    convergent_polys, eval_convergent, partial_coefficient, partial_coefficient_derivative,
    ConvergentRow,
};
use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};
use crate::par;
use crate::poly::Poly;
use crate::report::Report;

fn beta_from_rows(rows: &[ConvergentRow], m: usize) -> Poly {
    let row = &rows[m + 1];
    let (p, q) = (&row.num, &row.den);
    let (dp, dq) = (p.derivative(), q.derivative());
    let qq = q * q;
    let pq = p * q;
    let dpq = &dp * q;
    let pdq = p * &dq;
    let correction = &(&dpq - &pdq) - &pq;
    &qq + &correction.mul_x()
}

fn gamma_from_rows(rows: &[ConvergentRow], m: usize) -> Poly {
    debug_assert!(m >= 2);
    let cur = &rows[m + 1];
    let prev = &rows[m];
    let (p, q) = (&cur.num, &cur.den);
    let (p1, q1) = (&prev.num, &prev.den);
    let (dp, dq) = (p.derivative(), q.derivative());
    let (dp1, dq1) = (p1.derivative(), q1.derivative());
    let lead = (q * q1).scale(&rat_int(2));
    let mixed = &(&(&(&dp * q1) + &(&dp1 * q)) - &(&(p * q1) + &(p1 * q)))
        - &(&(p * &dq1) + &(p1 * &dq));
    &lead + &mixed.mul_x()
}

/// `beta_m` (and `gamma_m` for `m >= 2`) built directly from the convergent
/// polynomials and their formal derivatives. `gamma_1` does not exist and is
/// reported as `None`.
pub fn beta_gamma(m: usize) -> Result<(Poly, Option<Poly>)> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "beta is defined for m >= 1",
        });
    }
    let rows = convergent_polys(m);
    let beta = beta_from_rows(&rows, m);
    let gamma = (m >= 2).then(|| gamma_from_rows(&rows, m));
    Ok((beta, gamma))
}

/// Closed form of `beta_m`: the constant 1 for even `m`,
/// `-(m+1) x / 2` for odd `m`.
pub fn beta_closed_form(m: usize) -> Poly {
    if m % 2 == 0 {
        Poly::one()
    } else {
        Poly::monomial(-Rat::new((m as i64 + 1).into(), 2.into()), 1)
    }
}

/// Closed form of `gamma_m` for `m >= 2`: `(-1)^(m-1) x`.
pub fn gamma_closed_form(m: usize) -> Poly {
    debug_assert!(m >= 2);
    let sign = if m % 2 == 0 { -1 } else { 1 };
    Poly::monomial(rat_int(sign), 1)
}

/// Checks the closed forms of `beta_m` (`m <= m_max`) and `gamma_m`
/// (`2 <= m <= m_max + 1`) against the direct constructions, along with the
/// degree consequence (beta constant for even `m`, linear for odd `m`).
pub fn verify_beta_gamma_closed_forms(m_max: usize) -> Report {
    let rows = convergent_polys(m_max + 1);
    let outcomes = par::map_indices(1, m_max + 1, |m| {
        let beta = beta_from_rows(&rows, m);
        if beta != beta_closed_form(m) {
            return Some(format!("beta_{} = {} differs from closed form", m, beta));
        }
        let expected_degree = if m % 2 == 0 { Some(0) } else { Some(1) };
        if beta.degree() != expected_degree {
            return Some(format!("beta_{} has unexpected degree", m));
        }
        let gamma = gamma_from_rows(&rows, m + 1);
        if gamma != gamma_closed_form(m + 1) {
            return Some(format!("gamma_{} = {} differs from closed form", m + 1, gamma));
        }
        None
    });
    Report::from_outcomes(
        format!("beta/gamma closed forms up to m={}", m_max),
        outcomes,
    )
}

/// Checks both recurrences as exact polynomial identities for `3 <= m <= m_max`:
///
/// ```text
/// beta_m  = c_m^2 beta_m-1 + beta_m-2 + c_m gamma_m-1 + c_m' (-1)^m x
/// gamma_m = gamma_m-1 + 2 c_m beta_m-1
/// ```
pub fn verify_beta_gamma_recurrences(m_max: usize) -> Report {
    assert!(m_max >= 3, "recurrences start at m = 3");
    let rows = convergent_polys(m_max);
    let betas: Vec<Poly> = par::map_indices(1, m_max + 1, |m| beta_from_rows(&rows, m));
    let gammas: Vec<Poly> = par::map_indices(2, m_max + 1, |m| gamma_from_rows(&rows, m));
    let beta = |m: usize| &betas[m - 1];
    let gamma = |m: usize| &gammas[m - 2];

    let mut report = Report::new(format!("beta/gamma recurrences for 3 <= m <= {}", m_max));
    for m in 3..=m_max {
        let c = partial_coefficient(m).expect("m >= 3");
        let dc = partial_coefficient_derivative(m);
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let beta_rhs = &(&(&(&c * &c) * beta(m - 1)) + beta(m - 2))
            + &(&(&c * gamma(m - 1)) + &dc.mul_x().scale(&rat_int(sign)));
        report.record((beta(m) != &beta_rhs).then(|| format!("beta recurrence fails at m={}", m)));
        let gamma_rhs = gamma(m - 1) + &(&c * beta(m - 1)).scale(&rat_int(2));
        report.record(
            (gamma(m) != &gamma_rhs).then(|| format!("gamma recurrence fails at m={}", m)),
        );
    }
    report
}

/// Verifies the chain identity `1/c_m+1 = 1/c_m-1 + c_m'` for
/// `2 <= m <= m_max`, cross-multiplied into the polynomial identity
/// `c_m-1 = c_m+1 + c_m' c_m+1 c_m-1` so both parities are covered uniformly.
pub fn verify_coefficient_chain(m_max: usize) -> Report {
    assert!(m_max >= 2, "chain starts at m = 2");
    let outcomes = par::map_indices(2, m_max + 1, |m| {
        let c_prev = partial_coefficient(m - 1).expect("m >= 2");
        let c_next = partial_coefficient(m + 1).expect("valid");
        let dc = partial_coefficient_derivative(m);
        let rhs = &c_next + &(&dc * &(&c_next * &c_prev));
        (c_prev != rhs).then(|| format!("coefficient chain fails at m={}", m))
    });
    Report::from_outcomes(format!("coefficient chain up to m={}", m_max), outcomes)
}

/// The exact rational factor `(-1)^(m+1) beta_m(x) / (x Q_m(x)^2)` of the
/// derivative of the signed gap `f_m` (the positive factor `e^-x` is left
/// out). The sandwich argument needs this to be strictly negative.
#[derive(Debug, Clone)]
pub struct GapDerivativeSign {
    pub m: usize,
    pub rational_part: Rat,
}

impl GapDerivativeSign {
    pub fn strictly_negative(&self) -> bool {
        self.rational_part.is_negative()
    }
}

pub fn gap_derivative_sign(m: usize, x: &Rat) -> Result<GapDerivativeSign> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "gap derivative defined for m >= 1",
        });
    }
    if !x.is_positive() {
        return Err(Error::NonPositivePoint {
            value: x.to_string(),
        });
    }
    let (beta, _) = beta_gamma(m)?;
    let (_, q) = eval_convergent(m, x)?;
    let sign = if m % 2 == 0 { -1 } else { 1 };
    let rational_part = rat_int(sign) * beta.eval(x) / (x * &q * &q);
    Ok(GapDerivativeSign { m, rational_part })
}

/// Sweeps [`gap_derivative_sign`] over `1 <= m <= m_max` for each sample
/// point, reporting any index where strict negativity fails.
pub fn verify_gap_derivative_signs(m_max: usize, points: &[Rat]) -> Report {
    let rows = convergent_polys(m_max);
    let betas: Vec<Poly> = par::map_indices(1, m_max + 1, |m| beta_from_rows(&rows, m));
    let mut report = Report::new(format!(
        "gap derivative sign for m <= {} at {} points",
        m_max,
        points.len()
    ));
    for x in points {
        for m in 1..=m_max {
            let (_, q) = eval_convergent(m, x).expect("positive point");
            let sign = if m % 2 == 0 { -1 } else { 1 };
            let value = rat_int(sign) * betas[m - 1].eval(x) / (x * &q * &q);
            report.record(
                (!value.is_negative())
                    .then(|| format!("derivative factor not negative at m={} x={}", m, x)),
            );
        }
    }
    report
}
