//! The ball-exhaustion ultrametric on orderings and the threshold set that
//! controls Smirnov sign patterns on a ball.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Ball, Element, Family};
use crate::orderings::{ell_pow, OrderingDescriptor, SignOracle};

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub check: &'static str,
    pub ord1: OrderingDescriptor,
    pub ord2: OrderingDescriptor,
    pub r_max: u32,
    /// Least `n` such that the orderings disagree on `Ball(n)`.
    pub first_disagreement_radius: Option<u32>,
    pub witness: Option<Element>,
    /// `1/2^n`, or the bound `1/2^r_max` when no disagreement was seen.
    #[serde(serialize_with = "ser_rational")]
    pub distance: BigRational,
    pub distance_is_bound: bool,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn dyadic(n: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << n)
}

/// First element of the ball, in scan order, where the signs differ.
pub fn first_disagreement<A: SignOracle + ?Sized, B: SignOracle + ?Sized>(
    a: &A,
    b: &B,
    elements: &[Element],
) -> Option<Element> {
    elements.iter().find(|g| a.sign(g) != b.sign(g)).cloned()
}

/// As [`agreement_radius`], on a ball the caller already holds.
pub fn agreement_on_ball(
    ord1: &OrderingDescriptor,
    ord2: &OrderingDescriptor,
    ball: &Ball,
) -> Result<AgreementReport> {
    let family = ord1.family();
    if ord2.family() != family {
        return Err(Error::FamilyMismatch {
            expected: family,
            found: ord2.family(),
        });
    }
    if ball.family() != family {
        return Err(Error::FamilyMismatch {
            expected: family,
            found: ball.family(),
        });
    }
    ord1.validate()?;
    ord2.validate()?;
    let witness = first_disagreement(ord1, ord2, ball.elements());
    let radius = witness
        .as_ref()
        .map(|g| ball.word_length(g).expect("ball element"));
    let r_max = ball.radius();
    Ok(AgreementReport {
        check: "agreement",
        ord1: ord1.clone(),
        ord2: ord2.clone(),
        r_max,
        first_disagreement_radius: radius,
        witness,
        distance: dyadic(radius.unwrap_or(r_max)),
        distance_is_bound: radius.is_none(),
    })
}

pub fn agreement_radius(
    ord1: &OrderingDescriptor,
    ord2: &OrderingDescriptor,
    r_max: u32,
) -> Result<AgreementReport> {
    if ord2.family() != ord1.family() {
        return Err(Error::FamilyMismatch {
            expected: ord1.family(),
            found: ord2.family(),
        });
    }
    agreement_on_ball(ord1, ord2, &Ball::generate(ord1.family(), r_max)?)
}

/// Sorted distinct values `-r / (l^n - 1)` over `(r, n)` in the ball with
/// `n != 0`. Every exact Smirnov ordering has the same signs on the ball
/// for all parameters in one gap between consecutive thresholds.
pub fn thresholds(ball: &Ball) -> Result<Vec<BigRational>> {
    let Family::BaumslagSolitar { ell } = ball.family() else {
        return Err(Error::InvalidFamily(format!(
            "{} has no Smirnov thresholds",
            ball.family()
        )));
    };
    let mut out = BTreeSet::new();
    for g in ball.iter() {
        let Element::Bs(x) = g else { unreachable!() };
        if x.n != 0 {
            let slope = ell_pow(ell, x.n) - BigRational::one();
            out.insert(-x.r.to_rational() / slope);
        }
    }
    Ok(out.into_iter().collect())
}

/// The open gaps between consecutive thresholds, the two unbounded ones first.
pub(crate) fn gap_points(ts: &[BigRational]) -> Vec<(Option<BigRational>, Option<BigRational>)> {
    if ts.is_empty() {
        return vec![(None, None)];
    }
    let mut gaps = vec![(ts.last().cloned(), None), (None, ts.first().cloned())];
    for w in ts.windows(2) {
        gaps.push((Some(w[0].clone()), Some(w[1].clone())));
    }
    gaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::{QuadraticNumber, Side};

    fn bs(s: &str) -> OrderingDescriptor {
        OrderingDescriptor::parse(s, Family::bs(2)).unwrap()
    }

    #[test]
    fn reflexive_bound() {
        let o = bs("smirnov:sqrt2");
        let r = agreement_radius(&o, &o, 8).unwrap();
        assert!(r.distance_is_bound && r.witness.is_none());
        assert_eq!(r.distance, dyadic(8));
    }

    #[test]
    fn flips_differ_at_radius_one() {
        let r = agreement_radius(&bs("flip:00"), &bs("flip:01"), 8).unwrap();
        assert_eq!(r.first_disagreement_radius, Some(1));
        assert_eq!(r.distance, dyadic(1));
    }

    #[test]
    fn nearby_parameter_separates_late() {
        let near = QuadraticNumber::sqrt(2).shift(&BigRational::new(1.into(), 1_000_000.into()));
        let near = OrderingDescriptor::smirnov(2, near, Side::Exact).unwrap();
        let r = agreement_radius(&bs("smirnov:sqrt2"), &near, 4).unwrap();
        assert!(r.witness.is_none());
        // (r, 30) with threshold just above sqrt2 separates them.
        let den = BigRational::from_integer(((1i64 << 30) - 1).into());
        let r = -QuadraticNumber::sqrt(2).scale(&den).floor() - BigInt::one();
        let g = Element::Bs(crate::groups::BsElement {
            r: crate::groups::LFraction::from_rational(&BigRational::from_integer(r), 2).unwrap(),
            n: 30,
        });
        assert_ne!(bs("smirnov:sqrt2").sign(&g), near.sign(&g));
    }

    #[test]
    fn family_mismatch() {
        let z = OrderingDescriptor::flip_str(Family::Abelian { n: 1 }, "0").unwrap();
        assert!(matches!(
            agreement_radius(&bs("flip:00"), &z, 2),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn patterns_are_constant_on_gaps() {
        let ball = Ball::generate(Family::bs(2), 5).unwrap();
        let ts = thresholds(&ball).unwrap();
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        for w in ts.windows(2).take(12) {
            let width = &w[1] - &w[0];
            let p = |k: i64| {
                let x = QuadraticNumber::rational(w[0].clone())
                    + QuadraticNumber::sqrt(2)
                        .scale(&(&width / BigRational::from_integer((4 * k).into())));
                OrderingDescriptor::smirnov(2, x, Side::Exact).unwrap()
            };
            assert!(first_disagreement(&p(1), &p(3), ball.elements()).is_none());
        }
        // Crossing a threshold changes the pattern.
        let lo = OrderingDescriptor::smirnov(
            2,
            QuadraticNumber::rational(ts[3].clone()),
            Side::MinusLimit,
        )
        .unwrap();
        let hi = OrderingDescriptor::smirnov(
            2,
            QuadraticNumber::rational(ts[3].clone()),
            Side::PlusLimit,
        )
        .unwrap();
        assert!(first_disagreement(&lo, &hi, ball.elements()).is_some());
    }
}
