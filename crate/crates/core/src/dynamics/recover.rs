//! Recovering the parameter of a Smirnov-type ordering of `B(1,l)` from a
//! sign oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{BsElement, Element, Family, LFraction};
use crate::orderings::{Sign, SignOracle};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum EpsilonRecovery {
    /// Every parameter consistent with the answers lies in `[lo, hi]`.
    Interval {
        #[serde(serialize_with = "ser_rational")]
        lo: BigRational,
        #[serde(serialize_with = "ser_rational")]
        hi: BigRational,
        /// The oracle answers like the opposite of a Smirnov ordering.
        opposite: bool,
        queries: usize,
    },
    NotSmirnov {
        depth: u32,
        reason: String,
    },
}

fn ser_rational<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl EpsilonRecovery {
    pub fn contains(&self, x: &crate::orderings::QuadraticNumber) -> bool {
        match self {
            EpsilonRecovery::Interval { lo, hi, .. } => {
                let lo = crate::orderings::QuadraticNumber::rational(lo.clone());
                let hi = crate::orderings::QuadraticNumber::rational(hi.clone());
                &lo <= x && x <= &hi
            }
            EpsilonRecovery::NotSmirnov { .. } => false,
        }
    }

    pub fn width(&self) -> Option<BigRational> {
        match self {
            EpsilonRecovery::Interval { lo, hi, .. } => Some(hi - lo),
            EpsilonRecovery::NotSmirnov { .. } => None,
        }
    }
}

struct Prober<'a, O: ?Sized> {
    oracle: &'a O,
    ell: u32,
    flip: bool,
    queries: usize,
}

impl<O: SignOracle + ?Sized> Prober<'_, O> {
    /// Whether the oracle places the parameter at or above `x`, read off the
    /// sign of `(-(l-1)x, 1)`.
    fn at_least(&mut self, x: &BigRational) -> Result<Option<bool>> {
        let r = -x * BigRational::from_integer(BigInt::from(self.ell - 1));
        let r = LFraction::from_rational(&r, self.ell)
            .ok_or_else(|| Error::Internal(format!("{x} is not an l-adic fraction")))?;
        self.queries += 1;
        let s = self.oracle.sign(&Element::Bs(BsElement { r, n: 1 }));
        Ok(match s.negate_if(self.flip) {
            Sign::Positive => Some(true),
            Sign::Negative => Some(false),
            Sign::Zero => None,
        })
    }
}

/// Brackets the parameter by doubling out to `2^depth`, then cuts the
/// bracket into `l` equal pieces until its width is at most `2^-depth`.
pub fn recover_epsilon<O: SignOracle + ?Sized>(oracle: &O, depth: u32) -> Result<EpsilonRecovery> {
    let Family::BaumslagSolitar { ell } = oracle.family() else {
        return Err(Error::InvalidFamily(format!(
            "{} is not B(1,l)",
            oracle.family()
        )));
    };
    let not_smirnov = |reason: &str| EpsilonRecovery::NotSmirnov {
        depth,
        reason: reason.to_string(),
    };
    let a = Element::Bs(BsElement {
        r: LFraction::from_int(1, ell),
        n: 0,
    });
    let flip = match oracle.sign(&a) {
        Sign::Positive => false,
        Sign::Negative => true,
        Sign::Zero => return Ok(not_smirnov("a is not positive or negative")),
    };
    let mut p = Prober {
        oracle,
        ell,
        flip,
        queries: 1,
    };
    let zero = BigRational::zero();
    let bound = BigRational::from_integer(BigInt::one() << depth);

    let Some(up) = p.at_least(&zero)? else {
        return Ok(not_smirnov("an element (r,1) is the identity"));
    };
    // lo: parameter known >= lo; hi: known < hi (or <= hi for limit sides).
    let (mut lo, mut hi) = (zero.clone(), zero.clone());
    let mut step = BigRational::one();
    loop {
        let x = if up { step.clone() } else { -step.clone() };
        let Some(ans) = p.at_least(&x)? else {
            return Ok(not_smirnov("an element (r,1) is the identity"));
        };
        if ans != up {
            if up {
                hi = x;
            } else {
                lo = x;
            }
            break;
        }
        if up {
            lo = x;
        } else {
            hi = x;
        }
        if step >= bound {
            return Ok(not_smirnov(
                "a is not cofinal: the conjugates of b^-1 a^r b stay on one side",
            ));
        }
        step = step * BigRational::from_integer(2.into());
    }

    let target = BigRational::new(BigInt::one(), BigInt::one() << depth);
    let pieces = BigRational::from_integer(BigInt::from(ell));
    while &hi - &lo > target {
        let width = (&hi - &lo) / &pieces;
        let mut next_lo = lo.clone();
        let mut next_hi = hi.clone();
        for k in 1..ell {
            let x = &lo + &width * BigRational::from_integer(BigInt::from(k));
            let Some(ans) = p.at_least(&x)? else {
                return Ok(not_smirnov("an element (r,1) is the identity"));
            };
            if ans {
                next_lo = x;
            } else {
                next_hi = x;
                break;
            }
        }
        lo = next_lo;
        hi = next_hi;
    }
    Ok(EpsilonRecovery::Interval {
        lo,
        hi,
        opposite: flip,
        queries: p.queries,
    })
}
