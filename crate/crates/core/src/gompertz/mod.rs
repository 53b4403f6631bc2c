//! Experiments on the Euler-Gompertz constant `delta = F(1)`.
//!
//! At `x = 1` the sandwich of convergents pins `delta` between exact
//! rationals, and `floor(m/2)! P_m(1)`, `floor(m/2)! Q_m(1)` are positive
//! integers. This module produces certified enclosures of `delta`, scans
//! the fractional-part signal `delta {q_m} - {p_m}`, searches it for
//! monotone subsequences, and builds the integer difference sequences
//! `A_i = [p_m_i+1] - [p_m_i]`, `B_i = [q_m_i+1] - [q_m_i]` whose residuals
//! `delta B_i - A_i` drive the rational-approximation experiments.
//!
//! Heavy scans run on the scaled-integer engine; the integrality and growth
//! checks deliberately use the plain rational recurrence so the two routes
//! stay independent.

pub mod subseq;

use std::collections::BTreeMap;

use num::{Integer, One, Signed, Zero};

use crate::cf::values::ConvergentValues;
use crate::cf::{partial_coefficient_value, value_state};
use crate::error::{Error, Result};
use crate::exact::{
    decimal_render_parts, pow10, rat_int, Enclosure, Int, Rat,
};
use crate::report::Report;

pub use subseq::{monotone_subsequence, Direction, SubseqReport};

/// Default iteration cap for [`delta_enclosure`].
pub const DEFAULT_DEPTH_CAP: usize = 2000;

/// Fixed-point scale (digits) for the outward-rounded signal enclosures
/// used by large subsequence scans. The induced widening of 2*10^-45 per
/// endpoint is far below every gap the scans resolve.
const SIGNAL_FIXED_DIGITS: usize = 45;

/// Index-parity filter for scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    All,
}

impl Parity {
    pub fn matches(&self, m: usize) -> bool {
        match self {
            Parity::Even => m % 2 == 0,
            Parity::Odd => m % 2 == 1,
            Parity::All => true,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::All => "all",
        }
    }
}

/// A `delta` enclosure together with the sandwich depth that produced it.
#[derive(Debug, Clone)]
pub struct DeltaEnclosure {
    pub enclosure: Enclosure,
    /// Sandwich index: the enclosure is `[P_2k(1)/Q_2k(1), P_2k-1(1)/Q_2k-1(1)]`.
    pub k: usize,
}

/// Tightens the sandwich at `x = 1` until its width drops below `eps`.
pub fn delta_enclosure(eps: &Rat) -> Result<DeltaEnclosure> {
    delta_enclosure_with_cap(eps, DEFAULT_DEPTH_CAP)
}

pub fn delta_enclosure_with_cap(eps: &Rat, cap: usize) -> Result<DeltaEnclosure> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTarget);
    }
    let one = rat_int(1);
    let mut engine = ConvergentValues::new(&one).expect("1 > 0");
    for k in 1..=cap {
        engine.advance_to(2 * k);
        let lo = engine.ratio();
        let hi = engine.prev_ratio();
        if &hi - &lo < *eps {
            return Ok(DeltaEnclosure {
                enclosure: Enclosure::new(lo, hi),
                k,
            });
        }
    }
    Err(Error::DepthCapExceeded { cap })
}

/// Exact `p_m = P_m(1)`, `q_m = Q_m(1)` with the scaled integers
/// `floor(m/2)! p_m` and `floor(m/2)! q_m`.
///
/// Computed by the plain rational recurrence; a non-integral or
/// non-positive scaled value is a hard error, since it would falsify the
/// integrality invariant everything downstream relies on.
#[derive(Debug, Clone)]
pub struct ValuesAtOne {
    pub m: usize,
    pub p: Rat,
    pub q: Rat,
    pub scaled_p: Int,
    pub scaled_q: Int,
}

fn to_scaled_integer(value: &Rat, factorial: &Int, m: usize) -> Result<Int> {
    let scaled = value * Rat::from_integer(factorial.clone());
    if !scaled.is_integer() || !scaled.numer().is_positive() {
        return Err(Error::IntegralityViolation { index: m });
    }
    Ok(scaled.to_integer())
}

pub fn values_at_one(m: usize) -> Result<ValuesAtOne> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "values start at m = 1",
        });
    }
    let one = rat_int(1);
    let (_, (p, q)) = value_state(m, &one);
    let factorial: Int = (1..=(m / 2)).map(Int::from).product::<Int>().max(Int::one());
    let scaled_p = to_scaled_integer(&p, &factorial, m)?;
    let scaled_q = to_scaled_integer(&q, &factorial, m)?;
    Ok(ValuesAtOne {
        m,
        p,
        q,
        scaled_p,
        scaled_q,
    })
}

/// Streaming integrality-and-positivity check of `floor(m/2)! p_m` and
/// `floor(m/2)! q_m` for all `m <= m_max`, on the rational route.
pub fn integrality_check(m_max: usize) -> Report {
    let one = rat_int(1);
    let mut report = Report::new(format!("scaled integrality up to m={}", m_max));
    let mut prev = (rat_int(1), rat_int(0));
    let mut cur = (rat_int(0), rat_int(1));
    let mut factorial = Int::one();
    for m in 1..=m_max {
        let c = partial_coefficient_value(m, &one);
        let next = (&c * &cur.0 + &prev.0, &c * &cur.1 + &prev.1);
        prev = cur;
        cur = next;
        if m % 2 == 0 {
            factorial *= Int::from(m / 2);
        }
        let ok = to_scaled_integer(&cur.0, &factorial, m).is_ok()
            && to_scaled_integer(&cur.1, &factorial, m).is_ok();
        report.record((!ok).then(|| format!("integrality fails at m={}", m)));
    }
    report
}

/// Growth checks along `m`: `q_2k-1 < 2^k` for `k <= k_max`, and strict
/// growth of `p` and `q` within each parity class (`p_m+2 > p_m`,
/// `q_m+2 > q_m`), which is the monotonicity the index-filtering step of
/// [`build_ab`] relies on.
pub fn denominator_growth_check(k_max: usize) -> Report {
    let one = rat_int(1);
    let mut report = Report::new(format!("growth of p, q up to k={}", k_max));
    let mut engine = ConvergentValues::new(&one).expect("1 > 0");
    let mut two_pow = Int::from(2);
    // previous values within each parity class
    let mut last: [Option<(Rat, Rat)>; 2] = [None, None];
    for m in 1..=(2 * k_max) {
        engine.advance_to(m);
        let (p, q) = engine.values();
        if m % 2 == 1 {
            // m = 2k - 1
            let bound = Rat::from_integer(two_pow.clone());
            report.record(
                (q >= bound).then(|| format!("q_{} is not below 2^{}", m, (m + 1) / 2)),
            );
            two_pow *= 2;
        }
        let slot = &mut last[m % 2];
        if let Some((pp, pq)) = slot.take() {
            report.record((p <= pp).then(|| format!("p_{} did not grow within parity", m)));
            report.record((q <= pq).then(|| format!("q_{} did not grow within parity", m)));
        }
        *slot = Some((p, q));
    }
    report
}

/// Fractional parts of one convergent pair with the signal enclosure
/// `[delta_lo {q_m} - {p_m}, delta_hi {q_m} - {p_m}]`.
#[derive(Debug, Clone)]
pub struct FracRecord {
    pub m: usize,
    pub p_frac: Rat,
    pub q_frac: Rat,
    pub signal: Enclosure,
}

pub fn frac_signal(m: usize, delta: &Enclosure) -> Result<FracRecord> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "signals start at m = 1",
        });
    }
    let one = rat_int(1);
    let mut engine = ConvergentValues::new(&one).expect("1 > 0");
    engine.advance_to(m);
    let (rp, rq) = engine.frac_parts_raw();
    let scale = engine.scale();
    let p_frac = Rat::new(rp, scale.clone());
    let q_frac = Rat::new(rq, scale.clone());
    let signal = delta.mul_nonneg(&q_frac).sub_rat(&p_frac);
    Ok(FracRecord {
        m,
        p_frac,
        q_frac,
        signal,
    })
}

/// One emitted row of a distribution scan, pre-rendered as decimals.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub m: usize,
    pub even: bool,
    pub p_frac_dec: String,
    pub q_frac_dec: String,
    pub signal_lo_dec: String,
    pub signal_hi_dec: String,
    pub signal_mid_dec: String,
}

/// Aggregate view of a distribution scan.
#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub parity: Parity,
    pub scanned: usize,
    pub bins: usize,
    pub histogram: Vec<u64>,
    /// Exact containment of every signal enclosure in `(-1, delta_hi)`.
    pub all_in_range: bool,
    pub min_mid_dec: String,
    pub max_mid_dec: String,
    /// Max deviation of the binned empirical cdf from the uniform cdf on
    /// `(-1, 1)`; descriptive only.
    pub uniform_discrepancy: f64,
}

struct SignalStream {
    engine: ConvergentValues,
    delta_lo_num: Int,
    delta_lo_den: Int,
    delta_hi_num: Int,
    delta_hi_den: Int,
    mid_num: Int,
    mid_den: Int,
}

/// Raw signal endpoints for the current engine row, as unreduced
/// numerator/denominator pairs over positive denominators.
struct RawSignal {
    lo: (Int, Int),
    hi: (Int, Int),
    mid: (Int, Int),
}

impl SignalStream {
    fn new(delta: &Enclosure) -> Self {
        let mid = delta.midpoint();
        Self {
            engine: ConvergentValues::new(&rat_int(1)).expect("1 > 0"),
            delta_lo_num: delta.lo().numer().clone(),
            delta_lo_den: delta.lo().denom().clone(),
            delta_hi_num: delta.hi().numer().clone(),
            delta_hi_den: delta.hi().denom().clone(),
            mid_num: mid.numer().clone(),
            mid_den: mid.denom().clone(),
        }
    }

    fn advance_to(&mut self, m: usize) -> RawSignal {
        self.engine.advance_to(m);
        let (rp, rq) = self.engine.frac_parts_raw();
        let scale = self.engine.scale();
        let lo = (
            &self.delta_lo_num * &rq - &self.delta_lo_den * &rp,
            &self.delta_lo_den * scale,
        );
        let hi = (
            &self.delta_hi_num * &rq - &self.delta_hi_den * &rp,
            &self.delta_hi_den * scale,
        );
        let mid = (
            &self.mid_num * &rq - &self.mid_den * &rp,
            &self.mid_den * scale,
        );
        RawSignal { lo, hi, mid }
    }

    /// Exact check that the signal enclosure sits inside `(-1, delta_hi)`.
    fn in_range(&self, raw: &RawSignal) -> bool {
        let above = raw.lo.0 > -&raw.lo.1;
        // hi < delta_hi <=> a_hi rq - b_hi rp < a_hi scale
        let below = raw.hi.0 < &self.delta_hi_num * self.engine.scale();
        above && below
    }

    fn frac_parts_raw(&self) -> (Int, Int) {
        self.engine.frac_parts_raw()
    }

    fn scale(&self) -> &Int {
        self.engine.scale()
    }
}

fn floor_div(num: &Int, den: &Int) -> Int {
    num.div_floor(den)
}

/// Scans the signal for `1 <= m <= m_max` (restricted to `parity`), feeding
/// each row to `sink` and accumulating the histogram summary.
///
/// Requires `width(delta) < 10^-6` so every emitted signal enclosure is at
/// least that tight.
pub fn distribution_scan<F: FnMut(ScanRow)>(
    m_max: usize,
    parity: Parity,
    delta: &Enclosure,
    bins: usize,
    digits: usize,
    mut sink: F,
) -> Result<ScanSummary> {
    if bins == 0 {
        return Err(Error::InvalidIndex {
            index: 0,
            reason: "histogram needs at least one bin",
        });
    }
    if delta.width() >= Rat::new(Int::one(), pow10(6)) {
        return Err(Error::InsufficientPrecision {
            reason: "delta enclosure must be tighter than 10^-6 for signal scans".into(),
        });
    }
    let mut stream = SignalStream::new(delta);
    let mut histogram = vec![0u64; bins];
    let mut scanned = 0usize;
    let mut all_in_range = true;
    let fp_scale = pow10(18);
    let mut min_mid: Option<(i64, String)> = None;
    let mut max_mid: Option<(i64, String)> = None;
    for m in 1..=m_max {
        let raw = stream.advance_to(m);
        if !parity.matches(m) {
            continue;
        }
        scanned += 1;
        all_in_range &= stream.in_range(&raw);

        // histogram bin over (-1, 1): floor((mid + 1) / 2 * bins)
        let shifted = &raw.mid.0 + &raw.mid.1;
        let bin_index = floor_div(&(&shifted * Int::from(bins)), &(&raw.mid.1 * Int::from(2)));
        let bin = bin_index.max(Int::zero()).min(Int::from(bins - 1));
        let bin: usize = bin.to_string().parse().expect("small index");
        histogram[bin] += 1;

        let mid_dec = decimal_render_parts(&raw.mid.0, &raw.mid.1, digits);
        let fp = floor_div(&(&raw.mid.0 * &fp_scale), &raw.mid.1);
        let fp: i64 = fp.to_string().parse().expect("signal in (-1, 1)");
        if min_mid.as_ref().is_none_or(|(best, _)| fp < *best) {
            min_mid = Some((fp, mid_dec.clone()));
        }
        if max_mid.as_ref().is_none_or(|(best, _)| fp > *best) {
            max_mid = Some((fp, mid_dec.clone()));
        }

        let (rp, rq) = stream.frac_parts_raw();
        let scale = stream.scale();
        sink(ScanRow {
            m,
            even: m % 2 == 0,
            p_frac_dec: decimal_render_parts(&rp, scale, digits),
            q_frac_dec: decimal_render_parts(&rq, scale, digits),
            signal_lo_dec: decimal_render_parts(&raw.lo.0, &raw.lo.1, digits),
            signal_hi_dec: decimal_render_parts(&raw.hi.0, &raw.hi.1, digits),
            signal_mid_dec: mid_dec,
        });
    }

    let total = scanned.max(1) as f64;
    let mut cumulative = 0f64;
    let mut discrepancy = 0f64;
    for (i, count) in histogram.iter().enumerate() {
        cumulative += *count as f64 / total;
        let uniform = (i + 1) as f64 / bins as f64;
        discrepancy = discrepancy.max((cumulative - uniform).abs());
    }
    Ok(ScanSummary {
        parity,
        scanned,
        bins,
        histogram,
        all_in_range,
        min_mid_dec: min_mid.map(|(_, s)| s).unwrap_or_else(|| "0".into()),
        max_mid_dec: max_mid.map(|(_, s)| s).unwrap_or_else(|| "0".into()),
        uniform_discrepancy: discrepancy,
    })
}

/// Deterministic stand-in for the (nonconstructive) convergent-subsequence
/// selection: signal midpoints are binned into width-`eps` bins over
/// `(-1, 1)` and the indices of the most populated bin are returned in
/// ascending order, ties resolved toward the lowest bin.
pub fn cluster_subsequence(
    m_max: usize,
    eps: &Rat,
    parity: Parity,
    delta: &Enclosure,
) -> Result<Vec<usize>> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTarget);
    }
    let mut stream = SignalStream::new(delta);
    let mut bin_of: Vec<(usize, u64)> = Vec::new();
    for m in 1..=m_max {
        let raw = stream.advance_to(m);
        if !parity.matches(m) {
            continue;
        }
        // bin = floor((mid + 1) / eps)
        let shifted = &raw.mid.0 + &raw.mid.1;
        let bin = floor_div(&(&shifted * eps.denom()), &(&raw.mid.1 * eps.numer()));
        let bin: u64 = bin.to_string().parse().map_err(|_| Error::InsufficientPrecision {
            reason: "cluster bin index out of range".into(),
        })?;
        bin_of.push((m, bin));
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &(_, bin) in &bin_of {
        *counts.entry(bin).or_default() += 1;
    }
    // max count, ties to the lowest bin (BTreeMap iterates ascending)
    let best_bin = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(bin, _)| *bin);
    Ok(bin_of
        .into_iter()
        .filter(|&(_, bin)| Some(bin) == best_bin)
        .map(|(m, _)| m)
        .collect())
}

/// One row of the integer-difference construction.
#[derive(Debug, Clone)]
pub struct AbRow {
    pub i: usize,
    pub m_from: usize,
    pub m_to: usize,
    pub a: Int,
    pub b: Int,
    /// Enclosure of `delta B_i - A_i`.
    pub residual: Enclosure,
    /// True when the residual certifiably excludes zero; false means the
    /// comparison is indeterminate at the given `delta` precision.
    pub excludes_zero: bool,
}

/// Builds the `A_i`, `B_i` rows along ascending indices, first filtering so
/// the integer parts `[p_m]`, `[q_m]` strictly increase (which forces
/// `B_i > 0`).
pub fn build_ab(indices: &[usize], delta: &Enclosure) -> Result<Vec<AbRow>> {
    if indices.windows(2).any(|w| w[0] >= w[1]) || indices.first().is_some_and(|&m| m < 1) {
        return Err(Error::InvalidIndex {
            index: 0,
            reason: "indices must be ascending and start at m >= 1",
        });
    }
    let one = rat_int(1);
    let mut engine = ConvergentValues::new(&one).expect("1 > 0");
    let mut kept: Vec<(usize, Int, Int)> = Vec::new();
    for &m in indices {
        engine.advance_to(m);
        let (ip, iq) = engine.integer_parts();
        let keep = match kept.last() {
            None => true,
            Some((_, last_p, last_q)) => &ip > last_p && &iq > last_q,
        };
        if keep {
            kept.push((m, ip, iq));
        }
    }
    if kept.len() < 2 {
        return Err(Error::TooFewIndices { got: kept.len() });
    }
    let rows = kept
        .windows(2)
        .enumerate()
        .map(|(i, pair)| {
            let (m_from, ref p0, ref q0) = pair[0];
            let (m_to, ref p1, ref q1) = pair[1];
            let a = p1 - p0;
            let b = q1 - q0;
            let residual = delta
                .mul_nonneg(&Rat::from_integer(b.clone()))
                .sub_rat(&Rat::from_integer(a.clone()));
            AbRow {
                i: i + 1,
                m_from,
                m_to,
                excludes_zero: residual.excludes_zero(),
                a,
                b,
                residual,
            }
        })
        .collect();
    Ok(rows)
}

/// Certifies, via residual enclosures, that `delta q_m - p_m` strictly
/// decreases along even `m` and strictly increases along odd `m`, with the
/// expected signs (positive on the even chain, negative on the odd chain),
/// for sandwich depths `k <= k_max`.
///
/// Errors when two consecutive residual enclosures overlap, i.e. the given
/// `delta` is too loose to decide the strict inequality.
pub fn residual_monotonicity_check(k_max: usize, delta: &Enclosure) -> Result<Report> {
    let one = rat_int(1);
    let mut report = Report::new(format!("residual monotonicity up to k={}", k_max));
    let mut engine = ConvergentValues::new(&one).expect("1 > 0");
    // even chain seeded at m = 0 where delta q - p = delta
    let mut prev_even = delta.clone();
    let mut prev_odd: Option<Enclosure> = None;
    for m in 1..=(2 * k_max + 1) {
        engine.advance_to(m);
        let (p, q) = engine.values();
        let residual = delta.mul_nonneg(&q).sub_rat(&p);
        if m % 2 == 0 {
            report.record(
                (!residual.strictly_positive())
                    .then(|| format!("even residual at m={} not positive", m)),
            );
            if residual.hi() >= prev_even.lo() {
                return Err(Error::IndeterminateSign {
                    what: "even residual comparison",
                    index: m,
                });
            }
            report.record(None);
            prev_even = residual;
        } else {
            report.record(
                (!residual.strictly_negative())
                    .then(|| format!("odd residual at m={} not negative", m)),
            );
            if let Some(prev) = prev_odd {
                if residual.lo() <= prev.hi() {
                    return Err(Error::IndeterminateSign {
                        what: "odd residual comparison",
                        index: m,
                    });
                }
                report.record(None);
            }
            prev_odd = Some(residual);
        }
    }
    Ok(report)
}

/// Enclosure of `delta - [p_m]/[q_m]`, the gap of the integer-part ratio.
pub fn integer_part_gap(m: usize, delta: &Enclosure) -> Result<Enclosure> {
    if m < 1 {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "gap defined for m >= 1",
        });
    }
    let one = rat_int(1);
    let mut engine = ConvergentValues::new(&one).expect("1 > 0");
    engine.advance_to(m);
    let (ip, iq) = engine.integer_parts();
    if !iq.is_positive() {
        return Err(Error::InvalidIndex {
            index: m as i64,
            reason: "integer part of q must be at least 1",
        });
    }
    Ok(delta.sub_rat(&Rat::new(ip, iq)))
}

/// Monotone-subsequence scan of one parity class of the signal, using
/// outward-rounded fixed-point signal enclosures (sound containment) and
/// the direction in which new monotone runs are expected for that class:
/// non-decreasing on even indices, non-increasing on odd.
pub fn subseq_scan(m_max: usize, parity: Parity, delta: &Enclosure) -> Result<SubseqReport> {
    let direction = match parity {
        Parity::Even => Direction::NonDecreasing,
        Parity::Odd => Direction::NonIncreasing,
        Parity::All => {
            return Err(Error::InvalidIndex {
                index: 0,
                reason: "subsequence scans need a single parity class",
            })
        }
    };
    let fixed = pow10(SIGNAL_FIXED_DIGITS);
    let mut stream = SignalStream::new(delta);
    let mut values: Vec<Enclosure> = Vec::new();
    for m in 1..=m_max {
        let raw = stream.advance_to(m);
        if !parity.matches(m) {
            continue;
        }
        let lo = floor_div(&(&raw.lo.0 * &fixed), &raw.lo.1);
        let hi = -floor_div(&(-&raw.hi.0 * &fixed), &raw.hi.1);
        values.push(Enclosure::new(
            Rat::new(lo, fixed.clone()),
            Rat::new(hi, fixed.clone()),
        ));
    }
    let mut report = monotone_subsequence(&values, direction);
    report.parity = parity;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn delta_30() -> Enclosure {
        delta_enclosure(&Rat::new(Int::one(), pow10(30)))
            .unwrap()
            .enclosure
    }

    #[test]
    fn delta_enclosure_examples() {
        let coarse = delta_enclosure(&rat(1, 10)).unwrap();
        assert_eq!(coarse.k, 2);
        assert_eq!(coarse.enclosure, Enclosure::new(rat(4, 7), rat(2, 3)));
        assert!(delta_enclosure_with_cap(&Rat::new(Int::one(), pow10(30)), 5).is_err());
        assert!(delta_enclosure(&rat_int(0)).is_err());
    }

    #[test]
    fn values_at_one_integrality() {
        let v6 = values_at_one(6).unwrap();
        assert_eq!((v6.p, v6.q), (rat(10, 3), rat(17, 3)));
        assert_eq!((v6.scaled_p, v6.scaled_q), (Int::from(20), Int::from(34)));
        let v4 = values_at_one(4).unwrap();
        assert_eq!((v4.scaled_p, v4.scaled_q), (Int::from(4), Int::from(7)));
        let v1 = values_at_one(1).unwrap();
        assert_eq!((v1.scaled_p, v1.scaled_q), (Int::from(1), Int::from(1)));
        assert!(values_at_one(0).is_err());
    }

    #[test]
    fn integrality_and_growth_sweeps() {
        assert!(integrality_check(120).passed());
        let growth = denominator_growth_check(60);
        assert!(growth.passed(), "{}", growth);
    }

    #[test]
    fn frac_signal_examples() {
        let delta = delta_30();
        let r4 = frac_signal(4, &delta).unwrap();
        assert_eq!(r4.p_frac, rat_int(0));
        assert_eq!(r4.q_frac, rat(1, 2));
        // signal = delta/2 ~ 0.29817
        assert!((r4.signal.midpoint() - rat(29_817, 100_000)).abs() < rat(1, 100_000));
        let r6 = frac_signal(6, &delta).unwrap();
        assert_eq!(r6.p_frac, rat(1, 3));
        assert_eq!(r6.q_frac, rat(2, 3));
        let r1 = frac_signal(1, &delta).unwrap();
        assert_eq!(r1.signal, Enclosure::point(rat_int(0)));
        // widths never exceed the delta width
        for record in [&r4, &r6, &r1] {
            assert!(record.signal.width() <= delta.width());
        }
    }

    #[test]
    fn scan_emits_expected_rows_and_range() {
        let delta = delta_30();
        let mut rows = Vec::new();
        let summary =
            distribution_scan(6, Parity::All, &delta, 8, 12, |row| rows.push(row)).unwrap();
        assert_eq!(summary.scanned, 6);
        assert_eq!(rows.len(), 6);
        assert!(summary.all_in_range);
        assert_eq!(summary.histogram.iter().sum::<u64>(), 6);
        assert_eq!(rows[3].m, 4);
        assert_eq!(rows[3].q_frac_dec, "0.500000000000");
        assert!(rows[3].signal_mid_dec.starts_with("0.29817"));

        let even_only =
            distribution_scan(6, Parity::Even, &delta, 8, 12, |_| {}).unwrap();
        assert_eq!(even_only.scanned, 3);

        let loose = Enclosure::new(rat(1, 2), rat(2, 3));
        assert!(distribution_scan(6, Parity::All, &loose, 8, 12, |_| {}).is_err());
    }

    #[test]
    fn cluster_selection_follows_binning_rule() {
        let delta = delta_30();
        // signals for m = 1..6 are 0, 0, 0, delta/2, delta/2, (2 delta - 1)/3,
        // all inside [0, 1/2), so a half-width bin swallows every index
        let all = cluster_subsequence(6, &rat(1, 2), Parity::All, &delta).unwrap();
        assert_eq!(all, vec![1, 2, 3, 4, 5, 6]);
        // eps covering the whole range keeps everything as well
        let whole = cluster_subsequence(6, &rat_int(2), Parity::All, &delta).unwrap();
        assert_eq!(whole, vec![1, 2, 3, 4, 5, 6]);
        // a finer eps isolates the zero cluster {1, 2, 3} (bin floor((0+1)/eps))
        let fine = cluster_subsequence(6, &rat(1, 20), Parity::All, &delta).unwrap();
        assert_eq!(fine, vec![1, 2, 3]);
        assert!(cluster_subsequence(6, &rat_int(0), Parity::All, &delta).is_err());
    }

    #[test]
    fn cluster_pigeonhole_lower_bound() {
        let delta = delta_30();
        let eps = rat(1, 2);
        let selected = cluster_subsequence(40, &eps, Parity::All, &delta).unwrap();
        // ceil(2/eps) = 4 bins, so the best bin holds at least 40/4 entries
        assert!(selected.len() >= 10);
    }

    #[test]
    fn ab_rows_match_hand_arithmetic() {
        let delta = delta_30();
        let rows = build_ab(&[4, 6], &delta).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].a, Int::from(1)); // [10/3] - [2] = 3 - 2
        assert_eq!(rows[0].b, Int::from(2)); // [17/3] - [7/2] = 5 - 3
        assert!(rows[0].excludes_zero);
        // residual = 2 delta - 1 ~ 0.19269
        assert!((rows[0].residual.midpoint() - rat(19_269, 100_000)).abs() < rat(1, 100_000));

        let rows14 = build_ab(&[1, 4], &delta).unwrap();
        assert_eq!(rows14[0].a, Int::from(1));
        assert_eq!(rows14[0].b, Int::from(2));

        // residual widths are bounded by B * width(delta)
        let wide = Enclosure::new(rat(59, 100), rat(60, 100));
        let rows_wide = build_ab(&[1, 4, 6], &wide).unwrap();
        for row in &rows_wide {
            assert!(row.residual.width() <= Rat::from_integer(row.b.clone()) * wide.width());
        }
    }

    #[test]
    fn ab_filtering_drops_stalled_integer_parts() {
        let delta = delta_30();
        // [p_1] = [p_2] = 1, so m = 2 must be filtered out
        let rows = build_ab(&[1, 2, 4], &delta).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].m_from, rows[0].m_to), (1, 4));
        assert!(build_ab(&[4], &delta).is_err());
        assert!(build_ab(&[1, 2], &delta).is_err()); // nothing usable after filtering
        assert!(build_ab(&[4, 1], &delta).is_err()); // not ascending
    }

    #[test]
    fn residual_monotonicity_small_depth() {
        let delta = delta_30();
        let report = residual_monotonicity_check(30, &delta).unwrap();
        assert!(report.passed(), "{}", report);
        // far too coarse a delta cannot separate anything deep
        let coarse = delta_enclosure(&rat(1, 100)).unwrap().enclosure;
        assert!(residual_monotonicity_check(30, &coarse).is_err());
    }

    #[test]
    fn integer_part_gap_examples() {
        let delta = delta_30();
        let g4 = integer_part_gap(4, &delta).unwrap();
        // delta - 2/3 ~ -0.0703
        assert!((g4.midpoint() - rat(-703, 10_000)).abs() < rat(1, 10_000));
        let g6 = integer_part_gap(6, &delta).unwrap();
        // delta - 3/5 ~ -0.00365
        assert!((g6.midpoint() - rat(-365, 100_000)).abs() < rat(1, 100_000));
        assert!(integer_part_gap(0, &delta).is_err());
    }

    #[test]
    fn subseq_scan_runs_on_small_prefix() {
        let delta = delta_30();
        let even = subseq_scan(40, Parity::Even, &delta).unwrap();
        assert_eq!(even.scanned, 20);
        assert_eq!(even.direction, Direction::NonDecreasing);
        assert!(even.length >= 1 && even.length <= even.scanned);
        assert!(even
            .indices
            .windows(2)
            .all(|w| w[0] < w[1]));
        let odd = subseq_scan(40, Parity::Odd, &delta).unwrap();
        assert_eq!(odd.direction, Direction::NonIncreasing);
        assert!(subseq_scan(40, Parity::All, &delta).is_err());
    }

    #[test]
    fn fixed_point_enclosures_contain_exact_signals() {
        let delta = delta_30();
        // reproduce the outward rounding and compare with frac_signal
        let fixed = pow10(SIGNAL_FIXED_DIGITS);
        let mut stream = SignalStream::new(&delta);
        for m in 1..=30usize {
            let raw = stream.advance_to(m);
            let lo = floor_div(&(&raw.lo.0 * &fixed), &raw.lo.1);
            let hi = -floor_div(&(-&raw.hi.0 * &fixed), &raw.hi.1);
            let rounded = Enclosure::new(
                Rat::new(lo, fixed.clone()),
                Rat::new(hi, fixed.clone()),
            );
            let exact = frac_signal(m, &delta).unwrap().signal;
            assert!(exact.is_subset_of(&rounded), "m={}", m);
            assert!(rounded.width() <= exact.width() + Rat::new(Int::from(2), fixed.clone()));
        }
    }
}
