//! Longest weakly monotone subsequences over certified enclosures.
//!
//! Ordering decisions use exact midpoints; a patience-style O(n log n)
//! search finds a longest weakly non-decreasing (or non-increasing)
//! subsequence. Because inputs are enclosures rather than points, the
//! report carries a `certified` flag: it is set only when every pair of
//! consecutive selected enclosures is disjoint in the claimed direction,
//! so the true enclosed values are provably ordered, not just the midpoints.

use crate::exact::{Enclosure, Rat};

use super::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::NonDecreasing => "non-decreasing",
            Direction::NonIncreasing => "non-increasing",
        }
    }
}

/// Result of a monotone-subsequence search.
///
/// `indices` are 0-based positions into the scanned sequence; for parity
/// scans position `i` corresponds to the (i+1)-th index of that parity
/// class.
#[derive(Debug, Clone)]
pub struct SubseqReport {
    pub parity: Parity,
    pub scanned: usize,
    pub indices: Vec<usize>,
    pub direction: Direction,
    pub length: usize,
    pub certified: bool,
}

fn ordered(direction: Direction, a: &Rat, b: &Rat) -> bool {
    match direction {
        Direction::NonDecreasing => a <= b,
        Direction::NonIncreasing => a >= b,
    }
}

/// True when the enclosed values themselves are provably ordered.
fn pair_certified(direction: Direction, a: &Enclosure, b: &Enclosure) -> bool {
    match direction {
        Direction::NonDecreasing => b.lo() >= a.hi(),
        Direction::NonIncreasing => b.hi() <= a.lo(),
    }
}

/// Longest weakly monotone subsequence of the enclosure midpoints.
pub fn monotone_subsequence(values: &[Enclosure], direction: Direction) -> SubseqReport {
    let mids: Vec<Rat> = values.iter().map(Enclosure::midpoint).collect();
    let n = mids.len();
    // tails[j] = index of the best (most extendable) tail of a monotone
    // subsequence of length j+1
    let mut tails: Vec<usize> = Vec::new();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let pos = tails.partition_point(|&t| ordered(direction, &mids[t], &mids[i]));
        if pos > 0 {
            parent[i] = Some(tails[pos - 1]);
        }
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    let mut indices = Vec::with_capacity(tails.len());
    let mut cursor = tails.last().copied();
    while let Some(i) = cursor {
        indices.push(i);
        cursor = parent[i];
    }
    indices.reverse();

    let certified = indices
        .windows(2)
        .all(|w| pair_certified(direction, &values[w[0]], &values[w[1]]));
    SubseqReport {
        parity: Parity::All,
        scanned: n,
        length: indices.len(),
        indices,
        direction,
        certified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn points(vals: &[i64]) -> Vec<Enclosure> {
        vals.iter().map(|&v| Enclosure::point(rat_int(v))).collect()
    }

    /// Exhaustive optimum over all subsequences, for cross-checking.
    fn brute_force_length(values: &[Enclosure], direction: Direction) -> usize {
        let mids: Vec<Rat> = values.iter().map(Enclosure::midpoint).collect();
        let n = mids.len();
        let mut best = 0usize;
        for mask in 0u32..(1 << n) {
            let selected: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if selected.len() <= best {
                continue;
            }
            if selected
                .windows(2)
                .all(|w| ordered(direction, &mids[w[0]], &mids[w[1]]))
            {
                best = selected.len();
            }
        }
        best
    }

    #[test]
    fn textbook_cases() {
        let report = monotone_subsequence(&points(&[1, 3, 2, 4]), Direction::NonDecreasing);
        assert_eq!(report.length, 3);
        assert!(report.certified);

        let falling = monotone_subsequence(&points(&[5, 4, 3]), Direction::NonDecreasing);
        assert_eq!(falling.length, 1);

        let rising = monotone_subsequence(&points(&[5, 4, 3]), Direction::NonIncreasing);
        assert_eq!(rising.length, 3);

        let empty = monotone_subsequence(&[], Direction::NonDecreasing);
        assert_eq!(empty.length, 0);
        assert!(empty.certified);
    }

    #[test]
    fn ties_count_as_weakly_monotone() {
        let report = monotone_subsequence(&points(&[2, 2, 2, 1]), Direction::NonDecreasing);
        assert_eq!(report.length, 3);
        // equal point enclosures certify equality
        assert!(report.certified);
    }

    #[test]
    fn selected_indices_are_valid_and_monotone() {
        let values = points(&[3, 1, 4, 1, 5, 9, 2, 6]);
        let report = monotone_subsequence(&values, Direction::NonDecreasing);
        assert!(report.indices.windows(2).all(|w| w[0] < w[1]));
        let mids: Vec<Rat> = values.iter().map(Enclosure::midpoint).collect();
        assert!(report
            .indices
            .windows(2)
            .all(|w| mids[w[0]] <= mids[w[1]]));
        assert_eq!(report.length, brute_force_length(&values, Direction::NonDecreasing));
    }

    #[test]
    fn wide_enclosures_are_not_certified() {
        let values = vec![
            Enclosure::new(rat_int(0), rat_int(2)),
            Enclosure::new(rat_int(1), rat_int(3)),
        ];
        let report = monotone_subsequence(&values, Direction::NonDecreasing);
        assert_eq!(report.length, 2);
        assert!(!report.certified); // overlapping intervals cannot prove order

        let disjoint = vec![
            Enclosure::new(rat_int(0), rat(1, 2)),
            Enclosure::new(rat_int(1), rat(3, 2)),
        ];
        assert!(monotone_subsequence(&disjoint, Direction::NonDecreasing).certified);
    }

    #[test]
    fn matches_brute_force_on_small_mixed_inputs() {
        let cases: Vec<Vec<i64>> = vec![
            vec![],
            vec![7],
            vec![1, 1, 1],
            vec![4, 1, 8, 2, 9, 3],
            vec![10, 9, 8, 8, 9],
            vec![2, 7, 1, 8, 2, 8, 1, 8],
        ];
        for case in cases {
            let values = points(&case);
            for direction in [Direction::NonDecreasing, Direction::NonIncreasing] {
                assert_eq!(
                    monotone_subsequence(&values, direction).length,
                    brute_force_length(&values, direction),
                    "case {:?} {:?}",
                    case,
                    direction
                );
            }
        }
    }
}
