//! Exact absolute values.
//!
//! Every absolute value in k_∞ is a power of q, so it is stored as the
//! exponent `e` of `q^(-e)` (integer, or rational for root-type bounds).

use std::cmp::Ordering;
use std::fmt;

use num_traits::Num;

/// `q^(-e)` for `Finite(e)`, or the value `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QExp<E> {
    Finite(E),
    Zero,
}

impl<E: Num + Ord + Clone> QExp<E> {
    pub fn one() -> Self {
        QExp::Finite(E::zero())
    }

    pub fn exponent(&self) -> Option<&E> {
        match self {
            QExp::Finite(e) => Some(e),
            QExp::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, QExp::Zero)
    }

    /// `|a| * |b|`: exponents add, zero absorbs.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (QExp::Finite(a), QExp::Finite(b)) => QExp::Finite(a.clone() + b.clone()),
            _ => QExp::Zero,
        }
    }

    /// `|a|^k` for an exponent multiplier `k`.
    pub fn pow(&self, k: E) -> Self {
        match self {
            QExp::Finite(a) => QExp::Finite(a.clone() * k),
            QExp::Zero if k.is_zero() => Self::one(),
            QExp::Zero => QExp::Zero,
        }
    }

    /// Compares the represented real values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (QExp::Zero, QExp::Zero) => Ordering::Equal,
            (QExp::Zero, _) => Ordering::Less,
            (_, QExp::Zero) => Ordering::Greater,
            (QExp::Finite(a), QExp::Finite(b)) => b.cmp(a),
        }
    }

    pub fn value_le(&self, other: &Self) -> bool {
        self.cmp_value(other) != Ordering::Greater
    }

    /// The smaller of two values.
    pub fn min_value(self, other: Self) -> Self {
        if self.value_le(&other) {
            self
        } else {
            other
        }
    }

    /// The larger of two values.
    pub fn max_value(self, other: Self) -> Self {
        if self.value_le(&other) {
            other
        } else {
            self
        }
    }
}

impl<E: fmt::Display> fmt::Display for QExp<E> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QExp::Finite(e) => write!(out, "q^-({e})"),
            QExp::Zero => write!(out, "0"),
        }
    }
}

/// Three-valued answer for predicates that depend on unseen coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    Yes,
    No,
    Unknown,
}

impl Certainty {
    pub fn is_yes(self) -> bool {
        self == Certainty::Yes
    }
}

/// Valuation of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    /// Leading exponent is certified.
    Exact(i64),
    /// Zero through precision `N`: the true valuation is `>= N`.
    AtLeast(i64),
    /// Exactly zero.
    Infinite,
}

impl Valuation {
    pub fn exact(&self) -> Option<i64> {
        match self {
            Valuation::Exact(v) => Some(*v),
            _ => None,
        }
    }

    /// Certified lower bound, `None` meaning `+∞`.
    pub fn lower_bound(&self) -> Option<i64> {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    /// Whether `v >= r` is certified.
    pub fn at_least(&self, r: i64) -> Certainty {
        match self {
            Valuation::Exact(v) => {
                if *v >= r {
                    Certainty::Yes
                } else {
                    Certainty::No
                }
            }
            Valuation::AtLeast(n) => {
                if *n >= r {
                    Certainty::Yes
                } else {
                    Certainty::Unknown
                }
            }
            Valuation::Infinite => Certainty::Yes,
        }
    }

    /// The absolute value, when it is known exactly.
    pub fn abs(&self) -> Option<QExp<i64>> {
        match self {
            Valuation::Exact(v) => Some(QExp::Finite(*v)),
            Valuation::Infinite => Some(QExp::Zero),
            Valuation::AtLeast(_) => None,
        }
    }

    /// `v(ab) = v(a) + v(b)`.
    pub fn add(&self, other: &Valuation) -> Valuation {
        use Valuation::*;
        match (self, other) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Exact(a), Exact(b)) => Exact(a + b),
            (Exact(a), AtLeast(b)) | (AtLeast(a), Exact(b)) | (AtLeast(a), AtLeast(b)) => {
                AtLeast(a + b)
            }
        }
    }

    pub fn shift(&self, k: i64) -> Valuation {
        match self {
            Valuation::Exact(v) => Valuation::Exact(v + k),
            Valuation::AtLeast(v) => Valuation::AtLeast(v + k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    /// Worst case over several values: the smallest certified lower bound.
    pub fn min_bound(vals: impl IntoIterator<Item = Valuation>) -> Valuation {
        vals.into_iter()
            .fold(Valuation::Infinite, |acc, v| match (acc.lower_bound(), v.lower_bound()) {
                (None, _) => v,
                (_, None) => acc,
                (Some(a), Some(b)) if b < a => v,
                (Some(a), Some(b)) if a == b && matches!(v, Valuation::Exact(_)) => v,
                _ => acc,
            })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(out, "{v}"),
            Valuation::AtLeast(v) => write!(out, ">={v}"),
            Valuation::Infinite => write!(out, "inf"),
        }
    }
}

impl<E: Num + Ord + Clone> PartialOrd for QExp<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E: Num + Ord + Clone> Ord for QExp<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn value_order_reverses_exponents() {
        let small: QExp<i64> = QExp::Finite(3);
        let big: QExp<i64> = QExp::Finite(-1);
        assert!(small < big);
        assert!(QExp::Zero < small);
        assert_eq!(small.mul(&big), QExp::Finite(2));
        assert_eq!(small.mul(&QExp::Zero), QExp::Zero);
    }

    #[test]
    fn rational_exponents() {
        let a: QExp<Ratio<i64>> = QExp::Finite(Ratio::new(1, 2));
        let b = a.pow(Ratio::from_integer(2));
        assert_eq!(b, QExp::Finite(Ratio::from_integer(1)));
        assert!(b < a);
    }

    #[test]
    fn certified_bounds() {
        assert_eq!(Valuation::AtLeast(5).at_least(4), Certainty::Yes);
        assert_eq!(Valuation::AtLeast(5).at_least(6), Certainty::Unknown);
        assert_eq!(Valuation::Exact(2).at_least(3), Certainty::No);
        assert_eq!(
            Valuation::min_bound([Valuation::Exact(4), Valuation::AtLeast(3), Valuation::Infinite]),
            Valuation::AtLeast(3)
        );
    }
}
