//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the checked range and tolerance (all exact unless an
//! oracle error bound is stated).
//!
//! Run with `cargo test -p expint-cf --test acceptance -- --nocapture`.

use std::fs;
use std::path::PathBuf;

use num::{Integer, One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use expint_cf::cf::values::ConvergentValues;
use expint_cf::exact::{
    decimal_render, parse_rational, pow10, rat, rat_int, Enclosure, Int, Rat,
};
use expint_cf::gompertz::{self, Direction, Parity};
use expint_cf::oracle;
use expint_cf::{cf, identity, laguerre};

fn pass(number: usize, what: &str) {
    println!("acceptance {:02}: {} ... PASS", number, what);
}

fn eps(exp: usize) -> Rat {
    Rat::new(Int::one(), pow10(exp))
}

/// Interval for the Euler-Gompertz constant from the independent series
/// oracle `e * (-gamma + sum_{j=1}^{60} (-1)^(j+1) / (j j!))`, with
/// published 30+ digit decimals for `e` and `gamma` padded by 10^-31.
fn series_delta_interval() -> Enclosure {
    let gamma = parse_rational("0.577215664901532860606512090082402").unwrap();
    let e = parse_rational("2.71828182845904523536028747135266").unwrap();
    let pad = eps(31);
    let mut series = rat_int(0);
    let mut factorial = Int::one();
    for j in 1..=60usize {
        factorial *= Int::from(j);
        let term = Rat::new(Int::one(), Int::from(j) * &factorial);
        series = if j % 2 == 1 { series + term } else { series - term };
    }
    // tail beyond j = 60 is below 1/(61 * 61!) << 10^-31, covered by pad
    let integral_lo = &series - &gamma - &pad;
    let integral_hi = &series - &gamma + &pad;
    Enclosure::new((&e - &pad) * integral_lo, (&e + &pad) * integral_hi)
}

#[test]
fn acceptance_01_closed_forms_match_recurrence() {
    let depth = 400;
    let rows = cf::convergent_polys(depth);
    for m in 1..=depth {
        let (num, den) = cf::closed_form_polys(m).unwrap();
        assert_eq!(num, rows[m + 1].num, "numerator mismatch at m={}", m);
        assert_eq!(den, rows[m + 1].den, "denominator mismatch at m={}", m);
        // every term that appears in Q_m has a positive coefficient
        let first = if m % 2 == 0 { 0 } else { 1 };
        assert!(
            den.coeffs()[first..].iter().all(|c| c.is_positive()),
            "nonpositive coefficient in Q_{}",
            m
        );
    }
    pass(1, "closed forms equal recurrence rows exactly for m <= 400");
}

#[test]
fn acceptance_02_determinant_identity() {
    let report = cf::determinant_identity(400);
    assert!(report.passed(), "{}", report);
    assert_eq!(report.checked(), 400);
    pass(2, "determinant identity (-1)^(m-1) exact for m <= 400");
}

#[test]
fn acceptance_03_denominator_lower_bounds() {
    let report = cf::verify_denominator_lower_bounds(500);
    assert!(report.passed(), "{}", report);
    // equality at k = 1
    let (_, q2) = cf::closed_form_polys(2).unwrap();
    let (_, q1) = cf::closed_form_polys(1).unwrap();
    assert!((&q2 - &expint_cf::Poly::x_plus_one_pow(1)).is_zero());
    assert!((&q1 - &expint_cf::Poly::x_plus_one_pow(0).mul_x()).is_zero());
    pass(3, "coefficientwise lower bounds for k <= 500, equality at k = 1");
}

#[test]
fn acceptance_04_sandwich_and_oracle_containment() {
    let depth = 200;
    let tolerance = eps(12);
    for x in [rat(1, 2), rat_int(1), rat_int(2), rat_int(10)] {
        let oracle_value = oracle::reference_value(&x, &tolerance).unwrap();
        let mut engine = ConvergentValues::new(&x).unwrap();
        let mut prev: Option<(Rat, Rat)> = None;
        for k in 1..=depth {
            engine.advance_to(2 * k);
            let lo = engine.ratio();
            let hi = engine.prev_ratio();
            assert!(lo < hi, "x={} k={}", x, k);
            if let Some((plo, phi)) = prev {
                assert!(lo > plo, "low not increasing at x={} k={}", x, k);
                assert!(hi < phi, "high not decreasing at x={} k={}", x, k);
            }
            let widened = Enclosure::new(&lo - &tolerance, &hi + &tolerance);
            assert!(
                widened.contains(&oracle_value.value),
                "oracle escapes enclosure at x={} k={}",
                x,
                k
            );
            prev = Some((lo, hi));
        }
    }
    pass(
        4,
        "monotone interleaving (exact) and oracle containment at 1e-12, k <= 200, four points",
    );
}

#[test]
fn acceptance_05_beta_gamma_machinery() {
    let closed = identity::verify_beta_gamma_closed_forms(200);
    assert!(closed.passed(), "{}", closed);
    let recurrences = identity::verify_beta_gamma_recurrences(200);
    assert!(recurrences.passed(), "{}", recurrences);
    let points = [rat(1, 2), rat_int(1), rat_int(2), rat_int(10)];
    let signs = identity::verify_gap_derivative_signs(100, &points);
    assert!(signs.passed(), "{}", signs);
    pass(
        5,
        "beta/gamma closed forms + recurrences exact for m <= 200; derivative factor < 0 for m <= 100",
    );
}

#[test]
fn acceptance_06_coefficient_chain() {
    let report = identity::verify_coefficient_chain(200);
    assert!(report.passed(), "{}", report);
    pass(6, "coefficient chain identity exact for m <= 200");
}

#[test]
fn acceptance_07_laguerre_correspondence() {
    let correspondence = laguerre::verify_correspondence(200);
    assert!(correspondence.passed(), "{}", correspondence);
    for alpha in [rat_int(0), rat_int(-1), rat(1, 2)] {
        let recurrence = laguerre::verify_recurrence(&alpha, 100);
        assert!(recurrence.passed(), "{}", recurrence);
    }
    pass(
        7,
        "Laguerre correspondence exact for k <= 200; recurrence exact for alpha in {0, -1, 1/2}, k <= 100",
    );
}

#[test]
fn acceptance_08_asymptotic_ratio_trend() {
    let one = rat_int(1);
    let gap = |k: usize| (laguerre::asymptotic_ratio(k, &one).unwrap() - rat_int(1)).abs();
    let g16 = gap(16);
    let g256 = gap(256);
    let g4096 = gap(4096);
    assert!(g4096 < g256, "|ratio(4096)-1| not below |ratio(256)-1|");
    assert!(g256 < g16, "|ratio(256)-1| not below |ratio(16)-1|");
    let r4096 = laguerre::asymptotic_ratio(4096, &one).unwrap();
    assert!(r4096 > rat(9, 10) && r4096 < rat(11, 10));
    pass(8, "ratio -> 1 trend on the quadrupling ladder; ratio(4096) in (0.9, 1.1)");
}

#[test]
fn acceptance_09_delta_enclosure_precision() {
    let target = eps(50);
    let delta = gompertz::delta_enclosure(&target).unwrap();
    assert!(delta.k <= 1200, "needed k = {}", delta.k);
    assert!(delta.enclosure.width() < target);
    let oracle_interval = series_delta_interval();
    assert!(
        delta.enclosure.is_subset_of(&oracle_interval),
        "sandwich enclosure escapes the series oracle interval"
    );
    assert_eq!(
        decimal_render(&delta.enclosure.midpoint(), 15),
        "0.596347362323194"
    );
    pass(
        9,
        "delta width < 1e-50 (k <= 1200); first 15 decimals match the series oracle",
    );
}

#[test]
fn acceptance_10_integrality_and_growth() {
    let integrality = gompertz::integrality_check(2000);
    assert!(integrality.passed(), "{}", integrality);
    let growth = gompertz::denominator_growth_check(1000);
    assert!(growth.passed(), "{}", growth);
    pass(
        10,
        "scaled p_m, q_m integral and positive for m <= 2000; q_2k-1 < 2^k for k <= 1000",
    );
}

#[test]
fn acceptance_11_residual_monotonicity() {
    let delta = gompertz::delta_enclosure(&eps(30)).unwrap().enclosure;
    let report = gompertz::residual_monotonicity_check(200, &delta).unwrap();
    assert!(report.passed(), "{}", report);
    pass(
        11,
        "residuals delta*q - p certifiably monotone and sign-correct for k <= 200 at width 1e-30",
    );
}

#[test]
fn acceptance_12_integer_part_gap_trend() {
    let delta = gompertz::delta_enclosure(&eps(30)).unwrap().enclosure;
    let gap = |m: usize| {
        gompertz::integer_part_gap(m, &delta)
            .unwrap()
            .abs_upper()
    };
    let g10 = gap(10);
    let g100 = gap(100);
    let g1000 = gap(1000);
    assert!(g1000 < g100, "|gap(1000)| not below |gap(100)|");
    assert!(g100 < g10, "|gap(100)| not below |gap(10)|");
    pass(12, "|delta - [p_m]/[q_m]| decreases along m = 10, 100, 1000");
}

#[test]
fn acceptance_13_figure_scans() {
    let delta = gompertz::delta_enclosure(&eps(30)).unwrap().enclosure;
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&out_dir).unwrap();

    let mut all_csv = String::from("m,signal_dec\n");
    let all = gompertz::distribution_scan(10_000, Parity::All, &delta, 40, 12, |row| {
        all_csv.push_str(&format!("{},{}\n", row.m, row.signal_mid_dec));
    })
    .unwrap();
    assert_eq!(all.scanned, 10_000);
    assert!(all.all_in_range, "a signal left (-1, delta_hi)");
    fs::write(out_dir.join("frac_all.csv"), &all_csv).unwrap();

    let mut even_csv = String::from("k,signal_dec\n");
    let even = gompertz::distribution_scan(10_000, Parity::Even, &delta, 40, 12, |row| {
        even_csv.push_str(&format!("{},{}\n", row.m / 2, row.signal_mid_dec));
    })
    .unwrap();
    assert_eq!(even.scanned, 5_000);
    assert!(even.all_in_range);
    fs::write(out_dir.join("frac_even.csv"), &even_csv).unwrap();

    // histogram summary is qualitative output, reported not asserted
    println!(
        "  full scan: range [{}, {}], discrepancy vs uniform {:.4}",
        all.min_mid_dec, all.max_mid_dec, all.uniform_discrepancy
    );
    println!("  histogram (40 bins over (-1,1)): {:?}", all.histogram);
    pass(
        13,
        "distribution scans (m <= 10000; even k <= 5000) complete, in range, CSVs emitted",
    );
}

#[test]
fn acceptance_14_monotone_subsequence_vs_brute_force() {
    fn brute_force(mids: &[Rat], direction: Direction) -> usize {
        let n = mids.len();
        let ordered = |a: &Rat, b: &Rat| match direction {
            Direction::NonDecreasing => a <= b,
            Direction::NonIncreasing => a >= b,
        };
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let picked: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if picked.len() > best
                && picked.windows(2).all(|w| ordered(&mids[w[0]], &mids[w[1]]))
            {
                best = picked.len();
            }
        }
        best
    }

    let mut rng = ChaCha8Rng::seed_from_u64(421);
    for case in 0..500 {
        let len = rng.gen_range(0..=12usize);
        let values: Vec<Enclosure> = (0..len)
            .map(|_| Enclosure::point(rat(rng.gen_range(-20..=20), rng.gen_range(1..=4))))
            .collect();
        let mids: Vec<Rat> = values.iter().map(Enclosure::midpoint).collect();
        let direction = if case % 2 == 0 {
            Direction::NonDecreasing
        } else {
            Direction::NonIncreasing
        };
        let report = gompertz::monotone_subsequence(&values, direction);
        assert_eq!(
            report.length,
            brute_force(&mids, direction),
            "length differs from exhaustive optimum on case {}",
            case
        );
        // the reported subsequence must itself be valid
        assert!(report.indices.windows(2).all(|w| w[0] < w[1]));
        assert!(report.indices.windows(2).all(|w| match direction {
            Direction::NonDecreasing => mids[w[0]] <= mids[w[1]],
            Direction::NonIncreasing => mids[w[0]] >= mids[w[1]],
        }));
    }
    pass(
        14,
        "monotone subsequence equals the exhaustive optimum on 500 seeded cases (len <= 12)",
    );
}

#[test]
fn acceptance_15_cluster_ab_residuals() {
    let delta = gompertz::delta_enclosure(&eps(30)).unwrap().enclosure;
    let cluster = gompertz::cluster_subsequence(5000, &eps(3), Parity::All, &delta).unwrap();
    assert!(cluster.len() >= 2, "cluster too small: {:?}", cluster);
    let rows = gompertz::build_ab(&cluster, &delta).unwrap();

    // no silent passes: every row either certifiably excludes zero or is
    // explicitly flagged indeterminate
    let mut certified = 0usize;
    let mut indeterminate = 0usize;
    for row in &rows {
        if row.excludes_zero {
            assert!(row.residual.excludes_zero());
            certified += 1;
        } else {
            assert!(!row.residual.excludes_zero());
            indeterminate += 1;
        }
    }
    println!(
        "  {} rows from {} cluster indices: {} certified nonzero, {} flagged indeterminate",
        rows.len(),
        cluster.len(),
        certified,
        indeterminate
    );

    // residual trend toward zero: max |residual| over the last 10 rows must
    // be strictly below the max over the first 10 rows
    let take = 10usize.min(rows.len());
    let magnitudes: Vec<Rat> = rows.iter().map(|r| r.residual.abs_upper()).collect();
    let first_max = magnitudes[..take].iter().max().unwrap().clone();
    let last_max = magnitudes[magnitudes.len() - take..]
        .iter()
        .max()
        .unwrap()
        .clone();
    assert!(
        last_max < first_max,
        "residual trend toward 0 does not hold: {} rows, max over first {} rows = {}, \
         max over last {} rows = {} (with only {} rows the two windows coincide, so the \
         strict inequality cannot hold)",
        rows.len(),
        take,
        decimal_render(&first_max, 12),
        take,
        decimal_render(&last_max, 12),
        rows.len()
    );
    pass(
        15,
        "cluster AB residuals: trend toward 0 and zero-exclusion flags on every row",
    );
}
