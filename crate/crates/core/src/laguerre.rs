//! Classical Laguerre polynomials with rational parameter and their
//! correspondence with the convergent denominators.
//!
//! `L_k^(a)(x) = sum_i C[k+a, k-i]/i! (-x)^i`, where the generalized
//! binomial is the falling product `(k+a)(k+a-1)...(k+a-(k-i-1))/(k-i)!`
//! (taken as 1 when `i = k`). The denominators of the continued fraction
//! satisfy `Q_2k(x) = L_k^(0)(-x)` and `Q_2k-1(x) = k L_k^(-1)(-x)`, which
//! transports the known large-`k` asymptotics of Laguerre polynomials to
//! the convergents: `Q_2k-1(x) / (sqrt(kx) Q_2k(x)) -> 1`.

use num::Zero;

use crate::cf::values::ConvergentValues;
use crate::cf::convergent_polys;
use crate::error::{Error, Result};
use crate::exact::{factorials, rat_int, sqrt_approx, Int, Rat};
use crate::par;
use crate::poly::Poly;
use crate::report::Report;

/// Generalized binomial `C[k+alpha, k-i]` for `0 <= i <= k`.
pub fn generalized_binomial(k: usize, alpha: &Rat, i: usize) -> Result<Rat> {
    if i > k {
        return Err(Error::InvalidIndex {
            index: i as i64,
            reason: "generalized binomial needs i <= k",
        });
    }
    if i == k {
        return Ok(rat_int(1));
    }
    let mut product = rat_int(1);
    for j in 0..(k - i) {
        product = product * (Rat::from_integer(Int::from(k as i64 - j as i64)) + alpha);
        if product.is_zero() {
            return Ok(product);
        }
    }
    let fact = factorials(k - i).pop().expect("nonempty");
    Ok(product / Rat::from_integer(fact))
}

/// Degree-`k` Laguerre polynomial with rational parameter.
///
/// Coefficients come from the descending ratio
/// `C[k+a, k-(i-1)] = C[k+a, k-i] * (a+i)/(k-i+1)` starting at the leading
/// term, which avoids any division by `a + i` and so stays valid at the
/// negative integer parameters the correspondence needs.
pub fn laguerre_poly(k: usize, alpha: &Rat) -> Poly {
    let facts = factorials(k);
    let mut coeffs = vec![rat_int(0); k + 1];
    let mut binom = rat_int(1); // C[k+a, k-i] at i = k
    for i in (0..=k).rev() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        coeffs[i] = rat_int(sign) * &binom / Rat::from_integer(facts[i].clone());
        if i > 0 {
            binom = binom * (alpha + rat_int(i as i64)) / rat_int((k - i + 1) as i64);
        }
    }
    Poly::from_coeffs(coeffs)
}

/// Checks, for `1 <= k <= k_max`, the exact identities
/// `Q_2k(x) = L_k^(0)(-x)` and `Q_2k-1(x) = k L_k^(-1)(-x)`, plus the
/// parameter-lowering recurrence `L_k^(0) - L_k-1^(0) = L_k^(-1)` at each `k`.
pub fn verify_correspondence(k_max: usize) -> Report {
    let rows = convergent_polys(2 * k_max);
    let zero = rat_int(0);
    let minus_one = rat_int(-1);
    let outcomes = par::map_indices(1, k_max + 1, |k| {
        let l0 = laguerre_poly(k, &zero);
        let lm1 = laguerre_poly(k, &minus_one);
        if rows[2 * k + 1].den != l0.compose_neg_x() {
            return Some(format!("Q_2k != L_k^(0)(-x) at k={}", k));
        }
        if rows[2 * k].den != lm1.compose_neg_x().scale(&rat_int(k as i64)) {
            return Some(format!("Q_2k-1 != k L_k^(-1)(-x) at k={}", k));
        }
        let l0_prev = laguerre_poly(k - 1, &zero);
        if &(&l0 - &l0_prev) != &lm1 {
            return Some(format!("parameter-lowering recurrence fails at k={}", k));
        }
        None
    });
    Report::from_outcomes(
        format!("Laguerre correspondence up to k={}", k_max),
        outcomes,
    )
}

/// Checks `L_k^(a) - L_k-1^(a) = L_k^(a-1)` exactly for `1 <= k <= k_max`.
pub fn verify_recurrence(alpha: &Rat, k_max: usize) -> Report {
    let outcomes = par::map_indices(1, k_max + 1, |k| {
        let lhs = &laguerre_poly(k, alpha) - &laguerre_poly(k - 1, alpha);
        let rhs = laguerre_poly(k, &(alpha - rat_int(1)));
        (lhs != rhs).then(|| format!("recurrence fails at k={} alpha={}", k, alpha))
    });
    Report::from_outcomes(
        format!("Laguerre recurrence at alpha={} up to k={}", alpha, k_max),
        outcomes,
    )
}

/// Diagnostic ratio `Q_2k-1(x) / (sqrt(kx) Q_2k(x))`, which approaches 1 for
/// large `k`. The square root is a 30-digit rational approximation; the `Q`
/// values are exact.
pub fn asymptotic_ratio(k: usize, x: &Rat) -> Result<Rat> {
    if k < 1 {
        return Err(Error::InvalidIndex {
            index: k as i64,
            reason: "ratio needs k >= 1",
        });
    }
    let mut engine = ConvergentValues::new(x)?;
    engine.advance_to(2 * k);
    let root = sqrt_approx(&(x * rat_int(k as i64)), 30)?;
    let (_, q_even) = engine.values();
    let (_, q_odd) = engine.prev_values();
    Ok(q_odd / (root * q_even))
}
