//! Continued-fraction convergents of `F(x) = e^x E1(x)`.
//!
//! The expansion has partial coefficients `c_m = x` for odd `m` and
//! `c_m = 2/m` for even `m`. Numerator/denominator polynomials follow the
//! standard three-term recurrence from the seeds `P_-1 = 1, Q_-1 = 0,
//! P_0 = 0, Q_0 = 1`; closed-form binomial expressions for the same
//! polynomials provide an independent construction route. Even-indexed
//! convergents approach `F(x)` from below and odd-indexed ones from above,
//! which yields certified rational enclosures of the value for every
//! positive rational `x`.

pub mod values;

use num::Signed;

use crate::error::{Error, Result};
use crate::exact::{
    binomial_row, factorials, int_sign, isqrt, rat_int, Enclosure, Int, Rat,
};
use crate::oracle::OracleValue;
use crate::par;
use crate::poly::Poly;
use crate::report::Report;

/// Partial coefficient `c_m` as a polynomial in `x`: the monomial `x` for
/// odd `m`, the constant `2/m` for even `m`.
pub fn partial_coefficient(m: usize) -> Result<Poly> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "partial coefficients start at m = 1",
        });
    }
    if m % 2 == 1 {
        Ok(Poly::x())
    } else {
        Ok(Poly::constant(Rat::new(Int::from(2), Int::from(m))))
    }
}

/// Value of `c_m` at a point.
pub(crate) fn partial_coefficient_value(m: usize, x: &Rat) -> Rat {
    if m % 2 == 1 {
        x.clone()
    } else {
        Rat::new(Int::from(2), Int::from(m))
    }
}

/// Derivative of `c_m` with respect to `x`: 1 for odd `m`, 0 for even `m`.
pub(crate) fn partial_coefficient_derivative(m: usize) -> Poly {
    if m % 2 == 1 {
        Poly::one()
    } else {
        Poly::zero()
    }
}

/// One row of the convergent table: index `m` with the numerator and
/// denominator polynomials of `P_m / Q_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentRow {
    pub m: i64,
    pub num: Poly,
    pub den: Poly,
}

/// All rows `m = -1 ..= n` of the convergent recurrence.
///
/// Row `m` sits at slice position `m + 1`.
pub fn convergent_polys(n: usize) -> Vec<ConvergentRow> {
    let mut rows = Vec::with_capacity(n + 2);
    rows.push(ConvergentRow {
        m: -1,
        num: Poly::one(),
        den: Poly::zero(),
    });
    rows.push(ConvergentRow {
        m: 0,
        num: Poly::zero(),
        den: Poly::one(),
    });
    for m in 1..=n {
        let (prev2, prev1) = (&rows[m - 1], &rows[m]);
        let (num, den) = if m % 2 == 1 {
            // c_m = x: multiplication is a coefficient shift
            (
                &prev1.num.mul_x() + &prev2.num,
                &prev1.den.mul_x() + &prev2.den,
            )
        } else {
            let c = Rat::new(Int::from(2), Int::from(m));
            (
                &prev1.num.scale(&c) + &prev2.num,
                &prev1.den.scale(&c) + &prev2.den,
            )
        };
        rows.push(ConvergentRow {
            m: m as i64,
            num,
            den,
        });
    }
    rows
}

/// `P_m` and `Q_m` built directly from the closed-form binomial sums,
/// independently of the recurrence.
pub fn closed_form_polys(m: usize) -> Result<(Poly, Poly)> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "closed forms start at m = 1",
        });
    }
    let k = m.div_ceil(2);
    let facts = factorials(k + 1);
    let binom = binomial_row(k);
    let even = m % 2 == 0;

    // numerator: coefficient of x^i is
    //   sum_l (-1)^l C(k, l+i+1) * l! / (l+i+1)!   (even m)
    //   sum_l (-1)^l C(k, l+i+1) * l! / (l+i)!     (odd m; empty falling
    //                                               product reads as 1)
    let mut num_coeffs = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = rat_int(0);
        for l in 0..=(k - i - 1) {
            let denom_fact = if even { &facts[l + i + 1] } else { &facts[l + i] };
            let term = Rat::new(&binom[l + i + 1] * &facts[l], denom_fact.clone());
            acc = if l % 2 == 0 { acc + term } else { acc - term };
        }
        num_coeffs.push(acc);
    }
    let num = Poly::from_coeffs(num_coeffs);

    let den = if even {
        let coeffs = (0..=k)
            .map(|i| Rat::new(binom[i].clone(), facts[i].clone()))
            .collect();
        Poly::from_coeffs(coeffs)
    } else {
        let mut coeffs = Vec::with_capacity(k + 1);
        coeffs.push(rat_int(0));
        for i in 0..k {
            coeffs.push(Rat::new(binom[i + 1].clone(), facts[i].clone()));
        }
        Poly::from_coeffs(coeffs)
    };
    Ok((num, den))
}

/// Verifies `P_m Q_{m-1} - P_{m-1} Q_m = (-1)^{m-1}` as an exact polynomial
/// identity for `1 <= m <= n`, recomputing the full products each time.
pub fn determinant_identity(n: usize) -> Report {
    let rows = convergent_polys(n);
    let outcomes = par::map_indices(1, n + 1, |m| {
        let cur = &rows[m + 1];
        let prev = &rows[m];
        let det = &(&cur.num * &prev.den) - &(&prev.num * &cur.den);
        let expected = if m % 2 == 1 { 1 } else { -1 };
        if det == Poly::constant(rat_int(expected)) {
            None
        } else {
            Some(format!("determinant at m={} is {}", m, det))
        }
    });
    Report::from_outcomes(format!("determinant identity up to m={}", n), outcomes)
}

fn require_positive(x: &Rat) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositivePoint {
            value: x.to_string(),
        })
    }
}

/// Scalar recurrence state: values of rows `m-1` and `m` at the point `x`.
pub(crate) fn value_state(m: usize, x: &Rat) -> ((Rat, Rat), (Rat, Rat)) {
    let mut prev = (rat_int(1), rat_int(0)); // row -1
    let mut cur = (rat_int(0), rat_int(1)); // row 0
    for j in 1..=m {
        let c = partial_coefficient_value(j, x);
        let next = (&c * &cur.0 + &prev.0, &c * &cur.1 + &prev.1);
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// `(P_m(x), Q_m(x))` by the scalar three-term recurrence.
pub fn eval_convergent(m: usize, x: &Rat) -> Result<(Rat, Rat)> {
    require_positive(x)?;
    let (_, cur) = value_state(m, x);
    debug_assert!(m == 0 || cur.1.is_positive());
    Ok(cur)
}

/// Certified enclosure `[P_2k/Q_2k, P_2k-1/Q_2k-1]` of `F(x)`.
pub fn enclose(x: &Rat, k: usize) -> Result<Enclosure> {
    if k < 1 {
        return Err(Error::InvalidIndex {
            index: k as i64,
            reason: "enclosures need k >= 1",
        });
    }
    require_positive(x)?;
    let ((p_odd, q_odd), (p_even, q_even)) = value_state(2 * k, x);
    Ok(Enclosure::new(p_even / q_even, p_odd / q_odd))
}

/// A priori bound on `|F(x) - P_n(x)/Q_n(x)|`:
/// `1/(Q_n Q_{n-1})` for even `n`, `1/((2/(n+1)) Q_n^2 + Q_n Q_{n-1})` for odd `n`.
pub fn convergence_bound(n: usize, x: &Rat) -> Result<Rat> {
    if n < 1 {
        return Err(Error::InvalidIndex {
            index: n as i64,
            reason: "bounds start at n = 1",
        });
    }
    require_positive(x)?;
    let ((_, q_prev), (_, q_cur)) = value_state(n, x);
    let denom = if n % 2 == 0 {
        &q_cur * &q_prev
    } else {
        Rat::new(Int::from(2), Int::from(n + 1)) * &q_cur * &q_cur + &q_cur * &q_prev
    };
    Ok(denom.recip())
}

/// Truncated expansion at infinity: `sum_{j=1}^{n} (-1)^{j-1} (j-1)! / x^j`.
pub fn asymptotic_partial_sum(n: usize, x: &Rat) -> Result<Rat> {
    if n < 1 {
        return Err(Error::InvalidIndex {
            index: n as i64,
            reason: "partial sums start at n = 1",
        });
    }
    require_positive(x)?;
    let mut sum = rat_int(0);
    let mut term = x.recip(); // (j-1)!/x^j at j = 1
    for j in 1..=n {
        sum = if j % 2 == 1 { sum + &term } else { sum - &term };
        term = term * rat_int(j as i64) / x;
    }
    Ok(sum)
}

/// Exponents for the denominator lower bounds: `K = floor(sqrt(k))` and
/// `L = floor((sqrt(4k+1) - 1)/2)`, by exact integer square root.
pub fn lower_bound_exponents(k: usize) -> (usize, usize) {
    let big_k = isqrt(k as u128) as usize;
    let big_l = ((isqrt(4 * k as u128 + 1) - 1) / 2) as usize;
    (big_k, big_l)
}

/// Coefficientwise check that `Q_2k >= (x+1)^K` and `Q_2k-1 >= x (x+1)^L`
/// for `1 <= k <= k_max`. This is the statement the growth bounds reduce
/// to, and it is strictly stronger than pointwise comparison on `x > 0`.
pub fn verify_denominator_lower_bounds(k_max: usize) -> Report {
    let outcomes = par::map_indices(1, k_max + 1, |k| {
        let (cap_k, cap_l) = lower_bound_exponents(k);
        let (_, q_even) = match closed_form_polys(2 * k) {
            Ok(pair) => pair,
            Err(e) => return Some(format!("k={}: {}", k, e)),
        };
        let (_, q_odd) = match closed_form_polys(2 * k - 1) {
            Ok(pair) => pair,
            Err(e) => return Some(format!("k={}: {}", k, e)),
        };
        let even_diff = &q_even - &Poly::x_plus_one_pow(cap_k);
        let odd_diff = &q_odd - &Poly::x_plus_one_pow(cap_l).mul_x();
        if !even_diff.coeffs_nonnegative() {
            return Some(format!("k={}: Q_2k - (x+1)^{} has a negative coefficient", k, cap_k));
        }
        if !odd_diff.coeffs_nonnegative() {
            return Some(format!(
                "k={}: Q_2k-1 - x(x+1)^{} has a negative coefficient",
                k, cap_l
            ));
        }
        None
    });
    Report::from_outcomes(
        format!("denominator lower bounds up to k={}", k_max),
        outcomes,
    )
}

/// Enclosure of the tail `F_m(x)`, the m-th complete quotient of the
/// continued fraction, from an oracle value for `F(x)`:
///
/// `F_m = (P_m-2 - F Q_m-2) / (F Q_m-1 - P_m-1)`.
///
/// Errors when the oracle is too loose to determine the sign of either the
/// numerator or the denominator.
pub fn tail_enclosure(m: usize, x: &Rat, oracle: &OracleValue) -> Result<Enclosure> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "tails start at m = 1",
        });
    }
    require_positive(x)?;
    let ((p2, q2), (p1, q1)) = value_state(m - 1, x); // rows m-2 and m-1
    let f = oracle.enclosure();
    // Q values are nonnegative, so both products are monotone in F.
    let num = Enclosure::new(&p2 - &(f.hi() * &q2), &p2 - &(f.lo() * &q2));
    let den = Enclosure::new(f.lo() * &q1 - &p1, f.hi() * &q1 - &p1);
    for (interval, what) in [(&num, "tail numerator"), (&den, "tail denominator")] {
        if !interval.excludes_zero() {
            return Err(Error::IndeterminateSign { what, index: m });
        }
    }
    let candidates = [
        num.lo() / den.lo(),
        num.lo() / den.hi(),
        num.hi() / den.lo(),
        num.hi() / den.hi(),
    ];
    let lo = candidates.iter().min().unwrap().clone();
    let hi = candidates.iter().max().unwrap().clone();
    Ok(Enclosure::new(lo, hi))
}

/// Exponent sign helper shared with the interval quotient: -1/0/+1 of an integer.
#[allow(dead_code)]
pub(crate) fn sign_of(n: &Int) -> i32 {
    int_sign(n)
}
