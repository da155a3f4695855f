//! Elements of the ring `Z[1/l]`, stored as `num / l^k` in lowest terms.
//!
//! Values that appear in word-metric balls have small numerators, so the
//! numerator keeps an inline `i64` and only spills to a `BigInt` when a
//! checked operation overflows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Num {
    Small(i64),
    Big(BigInt),
}

impl Num {
    fn from_big(value: BigInt) -> Num {
        match value.to_i64() {
            Some(v) => Num::Small(v),
            None => Num::Big(value),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Num::Small(v) => BigInt::from(*v),
            Num::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Num::Small(0))
    }

    fn signum(&self) -> i32 {
        match self {
            Num::Small(v) => v.signum() as i32,
            Num::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    fn is_odd(&self) -> bool {
        match self {
            Num::Small(v) => v & 1 == 1,
            Num::Big(b) => b.is_odd(),
        }
    }

    fn add(&self, other: &Num) -> Num {
        if let (Num::Small(a), Num::Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(*b) {
                return Num::Small(s);
            }
        }
        Num::from_big(self.to_big() + other.to_big())
    }

    fn neg(&self) -> Num {
        match self {
            Num::Small(v) => match v.checked_neg() {
                Some(n) => Num::Small(n),
                None => Num::Big(-BigInt::from(*v)),
            },
            Num::Big(b) => Num::from_big(-b),
        }
    }

    /// `self * base^exp`
    fn mul_pow(&self, base: u32, exp: u32) -> Num {
        if exp == 0 {
            return self.clone();
        }
        if let Num::Small(v) = self {
            if let Some(p) = (base as i64).checked_pow(exp) {
                if let Some(m) = v.checked_mul(p) {
                    return Num::Small(m);
                }
            }
        }
        Num::from_big(self.to_big() * BigInt::from(base).pow(exp))
    }

    /// Divides by `base` if that division is exact.
    fn div_exact(&self, base: u32) -> Option<Num> {
        match self {
            Num::Small(v) => {
                let b = base as i64;
                if v % b == 0 {
                    Some(Num::Small(v / b))
                } else {
                    None
                }
            }
            Num::Big(big) => {
                let (q, r) = big.div_rem(&BigInt::from(base));
                if r.is_zero() {
                    Some(Num::from_big(q))
                } else {
                    None
                }
            }
        }
    }
}

/// An element `num / base^k` of `Z[1/base]` in lowest terms: either `k = 0`
/// or `base` does not divide `num`.
#[derive(Clone, Debug)]
pub struct LFraction {
    num: Num,
    k: u32,
    base: u32,
}

impl LFraction {
    pub fn zero(base: u32) -> Self {
        assert!(base >= 2, "Z[1/l] needs l >= 2");
        LFraction {
            num: Num::Small(0),
            k: 0,
            base,
        }
    }

    pub fn from_int(value: i64, base: u32) -> Self {
        assert!(base >= 2, "Z[1/l] needs l >= 2");
        LFraction {
            num: Num::Small(value),
            k: 0,
            base,
        }
    }

    /// `num / base^k`, reduced to lowest terms.
    pub fn new(num: BigInt, k: u32, base: u32) -> Self {
        assert!(base >= 2, "Z[1/l] needs l >= 2");
        LFraction {
            num: Num::from_big(num),
            k,
            base,
        }
        .normalized()
    }

    /// Converts an exact rational; `None` when the denominator is not a
    /// power of `base`.
    pub fn from_rational(value: &BigRational, base: u32) -> Option<Self> {
        let b = BigInt::from(base);
        let mut power = BigInt::one();
        // The reduced denominator must divide base^j for some j; its size
        // bounds j by the bit length.
        let limit = value.denom().bits() as u32 + 1;
        for j in 0..=limit {
            if (&power % value.denom()).is_zero() {
                let scaled = value.numer() * (&power / value.denom());
                return Some(LFraction::new(scaled, j, base));
            }
            power *= &b;
        }
        None
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.k = 0;
            return self;
        }
        while self.k > 0 {
            match self.num.div_exact(self.base) {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn numerator(&self) -> BigInt {
        self.num.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.num.is_zero() {
            0
        } else {
            self.num.signum()
        }
    }

    /// Parity of the reduced numerator. For odd `base` this is the
    /// ring homomorphism `Z[1/base] -> Z/2`, independent of the chosen
    /// representative.
    pub fn numerator_is_odd(&self) -> bool {
        self.num.is_odd()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.to_big(), BigInt::from(self.base).pow(self.k))
    }

    pub fn add(&self, other: &LFraction) -> LFraction {
        debug_assert_eq!(self.base, other.base);
        let (a, b, k) = match self.k.cmp(&other.k) {
            Ordering::Equal => (self.num.clone(), other.num.clone(), self.k),
            Ordering::Less => (
                self.num.mul_pow(self.base, other.k - self.k),
                other.num.clone(),
                other.k,
            ),
            Ordering::Greater => (
                self.num.clone(),
                other.num.mul_pow(self.base, self.k - other.k),
                self.k,
            ),
        };
        LFraction {
            num: a.add(&b),
            k,
            base: self.base,
        }
        .normalized()
    }

    pub fn sub(&self, other: &LFraction) -> LFraction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LFraction {
        LFraction {
            num: self.num.neg(),
            k: self.k,
            base: self.base,
        }
    }

    /// `self * base^exp` for any integer `exp`.
    pub fn scale_pow(&self, exp: i64) -> LFraction {
        if self.num.is_zero() || exp == 0 {
            return self.clone();
        }
        if exp > 0 {
            let e = u32::try_from(exp).expect("exponent out of range");
            let cancel = e.min(self.k);
            LFraction {
                num: self.num.mul_pow(self.base, e - cancel),
                k: self.k - cancel,
                base: self.base,
            }
        } else {
            let e = u32::try_from(-exp).expect("exponent out of range");
            LFraction {
                num: self.num.clone(),
                k: self.k + e,
                base: self.base,
            }
            .normalized()
        }
    }

    /// Multiplication by an ordinary integer.
    pub fn mul_int(&self, factor: i64) -> LFraction {
        let num = match &self.num {
            Num::Small(v) => match v.checked_mul(factor) {
                Some(m) => Num::Small(m),
                None => Num::from_big(BigInt::from(*v) * factor),
            },
            Num::Big(b) => Num::from_big(b * factor),
        };
        LFraction {
            num,
            k: self.k,
            base: self.base,
        }
        .normalized()
    }
}

impl PartialEq for LFraction {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.k == other.k && self.num == other.num
    }
}

impl Eq for LFraction {}

impl Hash for LFraction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.k.hash(state);
        self.num.hash(state);
    }
}

impl PartialOrd for LFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.base.cmp(&other.base) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        let d = self.sub(other);
        d.signum().cmp(&0)
    }
}

impl fmt::Display for LFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num.to_big())
        } else {
            write!(
                f,
                "{}/{}",
                self.num.to_big(),
                BigInt::from(self.base).pow(self.k)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(num: i64, k: u32, base: u32) -> LFraction {
        LFraction::new(BigInt::from(num), k, base)
    }

    #[test]
    fn normalizes_on_construction() {
        let x = lf(12, 3, 2);
        assert_eq!(x.numerator(), BigInt::from(3));
        assert_eq!(x.exponent(), 1);
        assert_eq!(lf(0, 5, 3).exponent(), 0);
        assert_eq!(lf(9, 1, 3), LFraction::from_int(3, 3));
    }

    #[test]
    fn add_aligns_denominators() {
        let x = lf(5, 2, 2).add(&lf(3, 4, 2));
        assert_eq!(x.to_rational(), BigRational::new(23.into(), 16.into()));
        let y = lf(1, 1, 2).add(&lf(1, 1, 2));
        assert_eq!(y, LFraction::from_int(1, 2));
    }

    #[test]
    fn scale_pow_both_directions() {
        let x = lf(5, 2, 2);
        assert_eq!(x.scale_pow(2), LFraction::from_int(5, 2));
        assert_eq!(x.scale_pow(3), LFraction::from_int(10, 2));
        assert_eq!(x.scale_pow(-1), lf(5, 3, 2));
        assert_eq!(LFraction::from_int(4, 2).scale_pow(-3), lf(1, 1, 2));
    }

    #[test]
    fn spills_to_bigint_and_back() {
        let big = LFraction::from_int(i64::MAX, 2).scale_pow(10);
        assert!(matches!(big.num, Num::Big(_)));
        let back = big.scale_pow(-10);
        assert_eq!(back, LFraction::from_int(i64::MAX, 2));
        assert!(matches!(back.num, Num::Small(_)));
    }

    #[test]
    fn odd_base_parity_is_representation_free() {
        // 2/3 and 6/9 are the same element of Z[1/3]; numerator parity agrees.
        let a = lf(2, 1, 3);
        let b = lf(6, 2, 3);
        assert_eq!(a, b);
        assert_eq!(a.numerator_is_odd(), b.numerator_is_odd());
        // m and m * 3^j always share parity.
        for m in -20i64..20 {
            for j in 0..4u32 {
                let scaled = lf(m * 3i64.pow(j), j, 3);
                assert_eq!(scaled.numerator_is_odd(), m.rem_euclid(2) == 1);
            }
        }
    }

    #[test]
    fn ordering_by_value() {
        assert!(lf(1, 1, 2) < lf(3, 2, 2));
        assert!(lf(-7, 3, 2) < LFraction::zero(2));
        assert_eq!(lf(2, 2, 2).cmp(&lf(1, 1, 2)), Ordering::Equal);
    }

    #[test]
    fn from_rational_accepts_l_adic_only() {
        let r = BigRational::new(5.into(), 4.into());
        assert_eq!(LFraction::from_rational(&r, 2), Some(lf(5, 2, 2)));
        assert_eq!(LFraction::from_rational(&r, 3), None);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(LFraction::from_rational(&third, 3), Some(lf(1, 1, 3)));
    }
}
