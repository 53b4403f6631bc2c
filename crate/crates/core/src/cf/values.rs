//! Scaled-integer engine for convergent values at a fixed rational point.
//!
//! Writing `x = n/d`, the rescaled values
//! `s_m = floor(m/2)! * d^ceil(m/2) * P_m(x)` (and likewise for `Q_m`) are
//! integers and satisfy the pure-integer recurrences
//!
//! ```text
//! s_2k   = s_2k-1 + k d s_2k-2
//! s_2k+1 = n s_2k + k d s_2k-1
//! ```
//!
//! so long scans never touch rational arithmetic in the hot loop. At `x = 1`
//! the common scale is exactly `floor(m/2)!`, the factor that clears the
//! denominators of `P_m(1)` and `Q_m(1)`.

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Int, Rat};

/// Iterator over scaled convergent values at a fixed point `x > 0`.
#[derive(Debug, Clone)]
pub struct ConvergentValues {
    x_num: Int,
    x_den: Int,
    m: usize,
    prev_num: Int,
    prev_den: Int,
    cur_num: Int,
    cur_den: Int,
    /// scale of the current row: `floor(m/2)! * d^ceil(m/2)`
    scale: Int,
    /// scale of the previous row
    prev_scale: Int,
}

impl ConvergentValues {
    /// Positions the engine at `m = 1`.
    pub fn new(x: &Rat) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::NonPositivePoint {
                value: x.to_string(),
            });
        }
        let n = x.numer().clone();
        let d = x.denom().clone();
        Ok(Self {
            m: 1,
            // row 0: (P, Q) = (0, 1) at scale 1
            prev_num: Int::zero(),
            prev_den: Int::one(),
            // row 1: (P, Q) = (1, x) at scale d
            cur_num: d.clone(),
            cur_den: n.clone(),
            scale: d.clone(),
            prev_scale: Int::one(),
            x_num: n,
            x_den: d,
        })
    }

    /// Current index `m >= 1`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Scaled numerator `scale * P_m(x)`.
    pub fn scaled_num(&self) -> &Int {
        &self.cur_num
    }

    /// Scaled denominator `scale * Q_m(x)`.
    pub fn scaled_den(&self) -> &Int {
        &self.cur_den
    }

    /// Common scale of the current row.
    pub fn scale(&self) -> &Int {
        &self.scale
    }

    /// Advances to `m + 1`.
    pub fn advance(&mut self) {
        let next_m = self.m + 1;
        let (next_num, next_den, next_scale) = if next_m % 2 == 0 {
            let k = Int::from(next_m / 2);
            let factor = &k * &self.x_den;
            (
                &self.cur_num + &factor * &self.prev_num,
                &self.cur_den + &factor * &self.prev_den,
                &self.scale * &k,
            )
        } else {
            let k = Int::from((next_m - 1) / 2);
            let factor = &k * &self.x_den;
            (
                &self.x_num * &self.cur_num + &factor * &self.prev_num,
                &self.x_num * &self.cur_den + &factor * &self.prev_den,
                &self.scale * &self.x_den,
            )
        };
        self.prev_num = std::mem::replace(&mut self.cur_num, next_num);
        self.prev_den = std::mem::replace(&mut self.cur_den, next_den);
        self.prev_scale = std::mem::replace(&mut self.scale, next_scale);
        self.m = next_m;
    }

    /// Advances until the current index equals `m`.
    pub fn advance_to(&mut self, m: usize) {
        debug_assert!(m >= self.m);
        while self.m < m {
            self.advance();
        }
    }

    /// `(P_m(x), Q_m(x))` as reduced rationals.
    pub fn values(&self) -> (Rat, Rat) {
        (
            Rat::new(self.cur_num.clone(), self.scale.clone()),
            Rat::new(self.cur_den.clone(), self.scale.clone()),
        )
    }

    /// `P_m(x) / Q_m(x)` as a reduced rational.
    pub fn ratio(&self) -> Rat {
        Rat::new(self.cur_num.clone(), self.cur_den.clone())
    }

    /// Integer parts `([P_m(x)], [Q_m(x)])` without rational reduction.
    pub fn integer_parts(&self) -> (Int, Int) {
        (
            self.cur_num.div_floor(&self.scale),
            self.cur_den.div_floor(&self.scale),
        )
    }

    /// Fractional parts as raw `(num, den)` pairs over the common scale:
    /// `{P_m(x)} = frac.0 / scale`, `{Q_m(x)} = frac.1 / scale`.
    pub fn frac_parts_raw(&self) -> (Int, Int) {
        (
            self.cur_num.mod_floor(&self.scale),
            self.cur_den.mod_floor(&self.scale),
        )
    }

    /// Values of the previous row `m - 1`, reduced.
    pub fn prev_values(&self) -> (Rat, Rat) {
        (
            Rat::new(self.prev_num.clone(), self.prev_scale.clone()),
            Rat::new(self.prev_den.clone(), self.prev_scale.clone()),
        )
    }

    /// `P_m-1(x) / Q_m-1(x)` as a reduced rational.
    pub fn prev_ratio(&self) -> Rat {
        Rat::new(self.prev_num.clone(), self.prev_den.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::eval_convergent;
    use crate::exact::{rat, rat_int};

    #[test]
    fn engine_matches_small_hand_values() {
        let mut engine = ConvergentValues::new(&rat_int(1)).unwrap();
        engine.advance_to(6);
        assert_eq!(engine.values(), (rat(10, 3), rat(17, 3)));
        assert_eq!(engine.scale(), &Int::from(6)); // 3! at x = 1
        assert_eq!(engine.integer_parts(), (Int::from(3), Int::from(5)));
        assert_eq!(engine.frac_parts_raw(), (Int::from(2), Int::from(4)));
        assert_eq!(engine.prev_values(), (rat_int(4), rat(13, 2)));
    }

    #[test]
    fn engine_agrees_with_rational_recurrence() {
        for x in [rat_int(1), rat(1, 2), rat(7, 3), rat_int(10)] {
            let mut engine = ConvergentValues::new(&x).unwrap();
            for m in 1..=120 {
                engine.advance_to(m);
                let expected = eval_convergent(m, &x).unwrap();
                assert_eq!(engine.values(), expected, "x={} m={}", x, m);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_points() {
        assert!(ConvergentValues::new(&rat_int(0)).is_err());
        assert!(ConvergentValues::new(&rat(-2, 3)).is_err());
    }
}
