//! Development probe for scan-scale behavior (not part of the deliverable API).

use std::time::Instant;

use expint_cf::exact::{decimal_render, pow10, Int, Rat};
use expint_cf::gompertz::{self, Parity};

fn main() {
    let t0 = Instant::now();
    let eps = Rat::new(Int::from(1), pow10(30));
    let delta = gompertz::delta_enclosure(&eps).unwrap();
    println!("delta at k={} in {:?}", delta.k, t0.elapsed());

    let t1 = Instant::now();
    let cluster_eps = Rat::new(Int::from(1), Int::from(1000));
    let indices =
        gompertz::cluster_subsequence(5000, &cluster_eps, Parity::All, &delta.enclosure).unwrap();
    println!(
        "cluster: {} indices in {:?}: {:?}",
        indices.len(),
        t1.elapsed(),
        indices
    );

    let t2 = Instant::now();
    let rows = gompertz::build_ab(&indices, &delta.enclosure).unwrap();
    println!("ab rows: {} in {:?}", rows.len(), t2.elapsed());
    for row in &rows {
        println!(
            "  i={} m={}->{} A={} B={} residual_mid={} excl0={}",
            row.i,
            row.m_from,
            row.m_to,
            row.a,
            row.b,
            decimal_render(&row.residual.midpoint(), 12),
            row.excludes_zero
        );
    }
    let mags: Vec<Rat> = rows.iter().map(|r| r.residual.abs_upper()).collect();
    let first = mags.iter().take(10).max().unwrap();
    let last = mags.iter().rev().take(10).max().unwrap();
    println!(
        "first10 max = {}  last10 max = {}  trend_ok = {}",
        decimal_render(first, 12),
        decimal_render(last, 12),
        last < first
    );

    let t3 = Instant::now();
    let summary =
        gompertz::distribution_scan(10_000, Parity::All, &delta.enclosure, 40, 12, |_| {}).unwrap();
    println!(
        "scan 10000: {:?}, in_range={} disc={:.4}",
        t3.elapsed(),
        summary.all_in_range,
        summary.uniform_discrepancy
    );

    let t4 = Instant::now();
    let even = gompertz::subseq_scan(10_000, Parity::Even, &delta.enclosure).unwrap();
    println!(
        "even subseq scan: {:?} scanned={} len={} certified={}",
        t4.elapsed(),
        even.scanned,
        even.length,
        even.certified
    );
    let odd = gompertz::subseq_scan(10_000, Parity::Odd, &delta.enclosure).unwrap();
    println!(
        "odd subseq scan: scanned={} len={} certified={}",
        odd.scanned,
        odd.length,
        odd.certified
    );
}
