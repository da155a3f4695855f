//! Flip orderings: the catalogue of Conradian orderings over the canonical
//! series, the flip operation and the Conrad homomorphism.

use num_rational::BigRational;

use super::series::check_rational_series;
use crate::error::{Error, Result};
use crate::groups::{Ball, Element, Family};
use crate::orderings::OrderingDescriptor;

/// Toggles bit `level` (0-based) of a flip ordering.
pub fn flip(ord: &OrderingDescriptor, level: usize) -> Result<OrderingDescriptor> {
    ord.flip_level(level)
}

/// All `2^len` flip orderings, indexed by the integer whose bit `i` is the
/// flip bit of level `i + 1`. The family must pass
/// [`check_rational_series`] on a small ball.
pub fn enumerate_c_orderings(family: Family) -> Result<Vec<OrderingDescriptor>> {
    family.validate()?;
    let report = check_rational_series(family, &Ball::generate(family, 2)?);
    if !report.hypotheses_hold {
        return Err(Error::Precondition(format!(
            "{family}: the canonical series has an abelian two-step quotient or a non rank-1 factor"
        )));
    }
    let len = family.series_length();
    if len >= 31 {
        return Err(Error::Precondition(format!(
            "{len} levels give too many orderings to list"
        )));
    }
    Ok((0..1u32 << len)
        .map(|m| OrderingDescriptor::Flip {
            family,
            flips: (0..len).map(|i| m >> i & 1 == 1).collect(),
        })
        .collect())
}

/// Conrad homomorphism at the top convex jump: the top series coordinate,
/// scaled so the top level generator maps to `+1` or `-1` according to its
/// sign. Its kernel is the penultimate level of the series.
pub fn conrad_homomorphism(
    family: Family,
    ord: &OrderingDescriptor,
    g: &Element,
) -> Result<BigRational> {
    let OrderingDescriptor::Flip { family: of, flips } = ord else {
        return Err(Error::NotConradian(ord.to_string()));
    };
    if *of != family {
        return Err(Error::FamilyMismatch {
            expected: family,
            found: *of,
        });
    }
    ord.validate()?;
    family.check(g)?;
    let top = g.top_coordinate();
    let signed = if flips[family.series_length() - 1] {
        -top
    } else {
        top
    };
    Ok(BigRational::from_integer(signed.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::eval_word;
    use crate::orderings::{compare, SignOracle};
    use num_traits::Zero;

    #[test]
    fn counts() {
        assert_eq!(enumerate_c_orderings(Family::bs(2)).unwrap().len(), 4);
        assert_eq!(
            enumerate_c_orderings(Family::Tararin { n: 3 })
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            enumerate_c_orderings(Family::Cn { n: 3 }).unwrap().len(),
            32
        );
        assert!(enumerate_c_orderings(Family::Abelian { n: 2 }).is_err());
        assert_eq!(
            enumerate_c_orderings(Family::Abelian { n: 1 })
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn opposites_are_enumerated() {
        let all = enumerate_c_orderings(Family::Tararin { n: 3 }).unwrap();
        for o in &all {
            assert!(all.contains(&o.opposite()));
        }
    }

    #[test]
    fn flip_is_local_to_its_level() {
        let f = Family::bs(2);
        let ball = Ball::generate(f, 6).unwrap();
        let o = OrderingDescriptor::flip_str(f, "00").unwrap();
        for level in 0..2 {
            let p = flip(&o, level).unwrap();
            assert_eq!(flip(&p, level).unwrap(), o);
            for g in ball.iter() {
                let differs = o.sign(g) != p.sign(g);
                assert_eq!(differs, g.series_level().0 == level + 1, "{g}");
            }
        }
        let p = flip(&o, 0).unwrap();
        assert!(p.sign(&eval_word(&f, "a").unwrap()).is_negative());
        assert!(p.sign(&eval_word(&f, "b").unwrap()).is_positive());
        assert!(flip(&o, 2).is_err());
    }

    #[test]
    fn tau_values() {
        let f = Family::bs(2);
        let o = OrderingDescriptor::flip_str(f, "00").unwrap();
        let tau = |w: &str| conrad_homomorphism(f, &o, &eval_word(&f, w).unwrap()).unwrap();
        assert!(tau("a").is_zero());
        assert_eq!(tau("b"), BigRational::from_integer(1.into()));
        for n in -3..=3 {
            assert_eq!(
                tau(&format!("b^-3 a^{n}")),
                BigRational::from_integer((-3).into())
            );
        }
        assert!(tau("id").is_zero());
        let s = OrderingDescriptor::parse("smirnov:sqrt2", f).unwrap();
        assert!(matches!(
            conrad_homomorphism(f, &s, &f.identity()),
            Err(Error::NotConradian(_))
        ));
    }

    #[test]
    fn tau_is_additive_and_monotone() {
        for f in [Family::bs(2), Family::Tararin { n: 2 }, Family::Cn { n: 1 }] {
            let ball = Ball::generate(f, 4).unwrap();
            for o in enumerate_c_orderings(f).unwrap() {
                let tau = |g: &Element| conrad_homomorphism(f, &o, g).unwrap();
                for g in ball.iter() {
                    for h in ball.within(3) {
                        assert_eq!(tau(&g.mul(h)), tau(g) + tau(h));
                        if compare(&o, g, h).is_lt() {
                            assert!(tau(g) <= tau(h));
                        }
                    }
                }
            }
        }
    }
}
