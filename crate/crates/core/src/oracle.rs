//! Independent quadrature oracle for `F(x) = integral of e^-t/(t+x) over [0, inf)`.
//!
//! The oracle exists to cross-check the continued-fraction machinery, so it
//! deliberately shares nothing with it: composite 10-point Gauss-Legendre
//! panels on `[0, T]` with panel doubling, a rigorous rational tail bound
//! `e^-T/(T+x)` for the truncated range, and a fixed floating-point noise
//! floor folded into the reported error. The reported error is certified in
//! the empirical sense used throughout the tests: every oracle value is
//! checked for containment against the exact enclosures.

use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{pow10, Enclosure, Int, Rat};

/// An approximation of `F(x)` together with a certified absolute error bound.
#[derive(Debug, Clone)]
pub struct OracleValue {
    pub value: Rat,
    pub err: Rat,
}

impl OracleValue {
    /// `[value - err, value + err]` as an enclosure.
    pub fn enclosure(&self) -> Enclosure {
        Enclosure::new(&self.value - &self.err, &self.value + &self.err)
    }
}

// 10-point Gauss-Legendre abscissae/weights on [-1, 1].
const GL_NODES: [(f64, f64); 5] = [
    (0.148_874_338_981_631_21, 0.295_524_224_714_752_87),
    (0.433_395_394_129_247_19, 0.269_266_719_309_996_35),
    (0.679_409_568_299_024_41, 0.219_086_362_515_982_04),
    (0.865_063_366_688_984_51, 0.149_451_349_150_580_59),
    (0.973_906_528_517_171_72, 0.066_671_344_308_688_14),
];

/// Accumulated floating-point noise allowance for the composite rule.
const ROUNDING_FLOOR_EXP: usize = 13; // 10^-13

/// Smallest supported target error; tighter requests would dip below what
/// f64 panel sums can certify.
const MIN_TARGET_EXP: usize = 12; // 10^-12

const MAX_PANELS: usize = 1 << 15;

fn integrand(t: f64, x: f64) -> f64 {
    (-t).exp() / (t + x)
}

/// Composite Gauss-Legendre sum over `panels` equal panels of `[0, upper]`.
fn composite_gl(upper: f64, x: f64, panels: usize) -> f64 {
    let h = upper / panels as f64;
    // Kahan summation keeps the panel accumulation near 1 ulp.
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    let mut add = |v: f64| {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    };
    for p in 0..panels {
        let a = p as f64 * h;
        let mid = a + h / 2.0;
        let half = h / 2.0;
        for (node, weight) in GL_NODES {
            add(weight * half * integrand(mid - half * node, x));
            add(weight * half * integrand(mid + half * node, x));
        }
    }
    sum
}

/// Rational upper bound for an f64 quantity: `|v|` inflated by a relative
/// margin far above one ulp.
fn rational_upper(v: f64) -> Rat {
    let margin = Rat::new(Int::from(pow10(12) + 1), pow10(12));
    Rat::from_float(v.abs()).unwrap_or_else(Rat::zero) * margin
}

/// Numerically evaluates `F(x)` to within `target_err`, returning the value
/// and a certified error bound `err <= target_err`.
pub fn reference_value(x: &Rat, target_err: &Rat) -> Result<OracleValue> {
    if !x.is_positive() {
        return Err(Error::NonPositivePoint {
            value: x.to_string(),
        });
    }
    if !target_err.is_positive() {
        return Err(Error::NonPositiveTarget);
    }
    let min_target = Rat::new(Int::from(1), pow10(MIN_TARGET_EXP));
    if target_err < &min_target {
        return Err(Error::QuadratureBudget {
            target: target_err.to_string(),
        });
    }
    let xf = x.to_f64().ok_or_else(|| Error::QuadratureBudget {
        target: target_err.to_string(),
    })?;
    let target_f = target_err.to_f64().unwrap_or(1e-12);

    // truncation point: e^-T/(T+x) < target/2, T integral
    let mut upper = 1u32;
    while (-(upper as f64)).exp() / (upper as f64 + xf) >= target_f / 2.0 {
        upper += 1;
        if upper > 2000 {
            return Err(Error::QuadratureBudget {
                target: target_err.to_string(),
            });
        }
    }

    let mut panels = 8usize.max(upper as usize);
    let mut estimate = composite_gl(upper as f64, xf, panels);
    let mut gap = f64::INFINITY;
    while gap >= target_f / 4.0 {
        if panels * 2 > MAX_PANELS {
            return Err(Error::QuadratureBudget {
                target: target_err.to_string(),
            });
        }
        panels *= 2;
        let refined = composite_gl(upper as f64, xf, panels);
        gap = (refined - estimate).abs();
        estimate = refined;
    }

    let tail = rational_upper((-(upper as f64)).exp()) / (Rat::from_integer(Int::from(upper)) + x);
    let floor = Rat::new(Int::from(1), pow10(ROUNDING_FLOOR_EXP));
    // x is evaluated through f64; account for the conversion offset, using
    // |dF/dx| <= 1/x.
    let x_offset = (x - Rat::from_float(xf).unwrap_or_else(Rat::zero)).abs() / x;
    let err = tail + rational_upper(gap) + floor + x_offset;
    if &err > target_err {
        return Err(Error::QuadratureBudget {
            target: target_err.to_string(),
        });
    }
    Ok(OracleValue {
        value: Rat::from_float(estimate).unwrap_or_else(Rat::zero),
        err,
    })
}
