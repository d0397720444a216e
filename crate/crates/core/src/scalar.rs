//! Coordinate arithmetic used inside the solver.
//!
//! The solver is generic over [`Scalar`] so that small integer instances can
//! run on a fixed-width fraction ([`Frac128`]) while everything else runs on
//! the arbitrary-precision [`Rational`]. Both are exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::rational::Rational;

/// Exact ordered field operations the solver needs. Multiplication and
/// division only ever involve interval-index differences.
pub trait Scalar: Clone + Ord + Debug {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// `self * k`
    fn mul_count(&self, k: usize) -> Self;
    /// `self / k`, `k > 0`
    fn div_count(&self, k: usize) -> Self;
    fn to_rational(&self) -> Rational;
}

impl Scalar for Rational {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_count(&self, k: usize) -> Self {
        Rational::mul_count(self, k)
    }
    fn div_count(&self, k: usize) -> Self {
        Rational::div_count(self, k)
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// `a/ka > b/kb` for positive counts `ka`, `kb`, decided by cross
/// multiplication so no quotient is ever formed.
pub fn slope_gt<S: Scalar>(a: &S, ka: usize, b: &S, kb: usize) -> bool {
    a.mul_count(kb) > b.mul_count(ka)
}

/// Magnitude bound on input coordinates for the fixed-width path.
pub const FAST_COORD_LIMIT: i128 = 1 << 41;
/// Maximum interval count (and bound denominator) for the fixed-width path.
pub const FAST_COUNT_LIMIT: usize = 1 << 21;

/// A fraction with `i128` parts that is *not* kept in lowest terms.
///
/// Denominators are only ever 1 or an index difference; sums of equal
/// denominators keep that denominator, so no gcd is computed on the hot path.
/// With coordinates below [`FAST_COORD_LIMIT`] and counts below
/// [`FAST_COUNT_LIMIT`] every intermediate stays under 2^90. All operations
/// are checked and panic rather than wrap.
#[derive(Clone, Copy, Debug)]
pub struct Frac128 {
    num: i128,
    den: i128,
}

impl Frac128 {
    pub fn from_integer(v: i128) -> Self {
        Frac128 { num: v, den: 1 }
    }

    /// `num / den` with `den > 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den > 0, "non-positive denominator");
        Frac128 { num, den }
    }

    /// Converts an exact rational when both parts fit the fast-path limits.
    pub fn try_from_rational(value: &Rational, max_den: usize) -> Option<Self> {
        let num: i128 = i128::try_from(value.numer()).ok()?;
        let den: i128 = i128::try_from(value.denom()).ok()?;
        if num.abs() >= FAST_COORD_LIMIT * den || den > max_den as i128 {
            return None;
        }
        Some(Frac128 { num, den })
    }
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("fixed-width fraction overflow")
}

fn count(k: usize) -> i128 {
    i128::try_from(k).expect("count out of range")
}

impl PartialEq for Frac128 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac128 {}

impl PartialOrd for Frac128 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac128 {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        let lhs = checked(self.num.checked_mul(other.den));
        let rhs = checked(other.num.checked_mul(self.den));
        lhs.cmp(&rhs)
    }
}

impl Scalar for Frac128 {
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            Frac128 { num: checked(self.num.checked_add(rhs.num)), den: self.den }
        } else {
            let num =
                checked(checked(self.num.checked_mul(rhs.den)).checked_add(checked(rhs.num.checked_mul(self.den))));
            Frac128 { num, den: checked(self.den.checked_mul(rhs.den)) }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&Frac128 { num: checked(rhs.num.checked_neg()), den: rhs.den })
    }

    fn mul_count(&self, k: usize) -> Self {
        Frac128 { num: checked(self.num.checked_mul(count(k))), den: self.den }
    }

    fn div_count(&self, k: usize) -> Self {
        assert!(k > 0, "division by zero count");
        Frac128 { num: self.num, den: checked(self.den.checked_mul(count(k))) }
    }

    fn to_rational(&self) -> Rational {
        Rational::from_i128_ratio(self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn slope_comparison_is_exact() {
        // 2/1 > 7/4 but not 2/1 > 5/2
        let two = Rational::from_integer(2);
        assert!(slope_gt(&two, 1, &Rational::ratio(7, 2), 2));
        assert!(!slope_gt(&two, 1, &Rational::from_integer(5), 2));
        // equality is not "greater"
        assert!(!slope_gt(&two, 1, &Rational::from_integer(4), 2));
    }

    #[test]
    fn frac_keeps_shared_denominators() {
        let d = Frac128::from_integer(13).div_count(2);
        let p = Frac128::from_integer(0).add(&d);
        let q = p.add(&d);
        assert_eq!(q.den, 2);
        assert_eq!(q.to_rational(), Rational::from_integer(13));
        assert_eq!(Frac128::new(2, 4), Frac128::new(1, 2));
    }

    #[test]
    fn conversion_respects_limits() {
        assert!(Frac128::try_from_rational(&Rational::from_integer(1_i64 << 40), 1).is_some());
        assert!(Frac128::try_from_rational(&Rational::from_integer(1_i64 << 42), 1).is_none());
        assert!(Frac128::try_from_rational(&Rational::ratio(1, 3), 2).is_none());
        assert!(Frac128::try_from_rational(&Rational::ratio(1, 3), 3).is_some());
    }

    proptest! {
        #[test]
        fn frac_agrees_with_rational(
            a in -1_000_000i64..1_000_000, b in 1usize..1000,
            c in -1_000_000i64..1_000_000, d in 1usize..1000,
            k in 0usize..1000,
        ) {
            let fx = Frac128::from_integer(a as i128).div_count(b);
            let fy = Frac128::from_integer(c as i128).div_count(d);
            let rx = Rational::ratio(a, b as i64);
            let ry = Rational::ratio(c, d as i64);
            prop_assert_eq!(fx.cmp(&fy), rx.cmp(&ry));
            prop_assert_eq!(fx.add(&fy).to_rational(), &rx + &ry);
            prop_assert_eq!(fx.sub(&fy).to_rational(), &rx - &ry);
            prop_assert_eq!(fx.mul_count(k).to_rational(), rx.mul_count(k));
        }
    }
}
