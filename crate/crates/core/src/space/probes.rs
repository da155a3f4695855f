//! Desk-scale probes of the topology of ordering spaces: isolation,
//! convergence and density of conjugacy orbits, each parameterized by the
//! radius it looks at.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::metric::{agreement_on_ball, first_disagreement, gap_points, thresholds};
use crate::conradian::enumerate_c_orderings;
use crate::error::{Error, Result};
use crate::groups::{Ball, BsElement, Element, Family, LFraction};
use crate::orderings::{ell_pow, OrderingDescriptor, QuadraticNumber, Side, SignOracle};

/// Largest element count the distinctness search may grow a ball to.
const SEARCH_ELEMENT_CAP: usize = 2_000_000;

/// Finest perturbation `2^-k` tried for slope candidates.
const MAX_PERTURBATION_EXPONENT: u32 = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateSet {
    /// Exact Smirnov orderings and their opposites, one per threshold gap
    /// of the probed ball.
    Smirnov,
    /// The finite catalogue of C-orderings of the family.
    COrderings,
    /// Slope orderings with perturbed (and rounded) directions.
    SlopePerturbations,
    List {
        descriptors: Vec<OrderingDescriptor>,
    },
}

impl CandidateSet {
    pub fn parse(text: &str) -> Result<CandidateSet> {
        match text {
            "smirnov" => Ok(CandidateSet::Smirnov),
            "c-orderings" | "corderings" => Ok(CandidateSet::COrderings),
            "slopes" | "slope-perturbations" => Ok(CandidateSet::SlopePerturbations),
            other => Err(Error::Parse(format!(
                "unknown candidate set `{other}` (smirnov, c-orderings, slopes)"
            ))),
        }
    }

    /// Candidates in probing order.
    pub fn generate(
        &self,
        ord: &OrderingDescriptor,
        ball: &Ball,
    ) -> Result<Vec<OrderingDescriptor>> {
        let family = ord.family();
        match self {
            CandidateSet::Smirnov => {
                let Family::BaumslagSolitar { ell } = family else {
                    return Err(Error::Precondition(format!(
                        "{family} has no Smirnov orderings"
                    )));
                };
                let mut out = Vec::new();
                for x in gap_representatives(&thresholds(ball)?) {
                    let d = OrderingDescriptor::Smirnov {
                        ell,
                        epsilon: x,
                        side: Side::Exact,
                        opposite: false,
                    };
                    out.push(d.opposite());
                    out.insert(out.len() - 1, d);
                }
                Ok(out)
            }
            CandidateSet::COrderings => enumerate_c_orderings(family),
            CandidateSet::SlopePerturbations => slope_perturbations(ord),
            CandidateSet::List { descriptors } => {
                for d in descriptors {
                    if d.family() != family {
                        return Err(Error::FamilyMismatch {
                            expected: family,
                            found: d.family(),
                        });
                    }
                }
                Ok(descriptors.clone())
            }
        }
    }
}

/// An irrational point strictly inside each gap between thresholds.
pub fn gap_representatives(ts: &[BigRational]) -> Vec<QuadraticNumber> {
    let s2 = QuadraticNumber::sqrt(2);
    gap_points(ts)
        .into_iter()
        .map(|gap| match gap {
            (Some(lo), Some(hi)) => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                let quarter = (&hi - &lo) / BigRational::from_integer(4.into());
                s2.scale(&quarter).shift(&mid)
            }
            (Some(lo), None) => s2.shift(&lo),
            (None, Some(hi)) => (-&s2).shift(&hi),
            (None, None) => s2.clone(),
        })
        .collect()
}

fn slope_perturbations(ord: &OrderingDescriptor) -> Result<Vec<OrderingDescriptor>> {
    let OrderingDescriptor::Slope {
        direction,
        tie_break,
        ..
    } = ord
    else {
        return Err(Error::Precondition(
            "slope perturbations need a slope ordering".into(),
        ));
    };
    let mut out = Vec::new();
    for k in 1..=MAX_PERTURBATION_EXPONENT {
        let scale = BigRational::from_integer(BigInt::one() << k);
        let step = scale.recip();
        let rounded: Vec<QuadraticNumber> = direction
            .iter()
            .map(|x| {
                if x.is_rational() {
                    x.clone()
                } else {
                    QuadraticNumber::rational(
                        BigRational::from_integer(x.scale(&scale).floor()) / &scale,
                    )
                }
            })
            .collect();
        let mut push = |dir: Vec<QuadraticNumber>| {
            if dir.iter().any(|x| !x.is_zero()) {
                if let Ok(d) = OrderingDescriptor::slope_with_tie_break(dir, tie_break.clone()) {
                    if !out.contains(&d) {
                        out.push(d);
                    }
                }
            }
        };
        push(rounded.clone());
        for j in 0..rounded.len() {
            for s in [&step, &-&step] {
                let mut dir = rounded.clone();
                dir[j] = dir[j].shift(s);
                push(dir);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolationReport {
    pub check: &'static str,
    pub ordering: OrderingDescriptor,
    pub radius: u32,
    pub search_radius: u32,
    pub candidates_tried: usize,
    /// A candidate agreeing with `ordering` on `Ball(radius)` that is shown
    /// to differ on a larger ball.
    pub found: Option<OrderingDescriptor>,
    pub distinct_at: Option<u32>,
    pub witness: Option<Element>,
}

/// Default radius up to which distinctness of an agreeing candidate is sought.
pub fn default_search_radius(family: Family, radius: u32) -> u32 {
    match family {
        Family::Abelian { .. } => 4 * radius + 16,
        _ => radius + 8,
    }
}

pub fn isolation_probe(
    ord: &OrderingDescriptor,
    set: &CandidateSet,
    radius: u32,
) -> Result<IsolationReport> {
    isolation_probe_with(
        ord,
        set,
        radius,
        default_search_radius(ord.family(), radius),
    )
}

/// First candidate (in the set's order) that agrees with `ord` on
/// `Ball(radius)` and disagrees somewhere on `Ball(search_radius)`.
pub fn isolation_probe_with(
    ord: &OrderingDescriptor,
    set: &CandidateSet,
    radius: u32,
    search_radius: u32,
) -> Result<IsolationReport> {
    ord.validate()?;
    let family = ord.family();
    let mut ball = Ball::generate(family, radius)?;
    ball.set_cap(SEARCH_ELEMENT_CAP.max(ball.len()));
    let candidates = set.generate(ord, &ball)?;
    let mut report = IsolationReport {
        check: "isolation",
        ordering: ord.clone(),
        radius,
        search_radius,
        candidates_tried: 0,
        found: None,
        distinct_at: None,
        witness: None,
    };
    let inner_len = ball.len();
    let mut capped = false;
    for c in candidates {
        if &c == ord {
            continue;
        }
        report.candidates_tried += 1;
        if first_disagreement(ord, &c, &ball.elements()[..inner_len]).is_some() {
            continue;
        }
        // Grow the ball sphere by sphere until the candidate separates.
        let mut checked = inner_len;
        loop {
            if let Some(w) = first_disagreement(ord, &c, &ball.elements()[checked..]) {
                report.distinct_at = ball.word_length(&w);
                report.witness = Some(w);
                report.found = Some(c);
                return Ok(report);
            }
            checked = ball.len();
            if capped || ball.radius() >= search_radius {
                break;
            }
            match ball.extend_to(ball.radius() + 1) {
                Ok(()) => {}
                Err(Error::ResourceCap { .. }) => {
                    capped = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub check: &'static str,
    pub radius: u32,
    pub length: usize,
    pub agrees: Vec<bool>,
    /// First index from which every listed descriptor agrees with the limit
    /// on the ball.
    pub agree_from: Option<usize>,
}

pub fn convergence_check(
    sequence: &[OrderingDescriptor],
    limit: &OrderingDescriptor,
    radius: u32,
) -> Result<ConvergenceReport> {
    let family = limit.family();
    for d in sequence {
        if d.family() != family {
            return Err(Error::FamilyMismatch {
                expected: family,
                found: d.family(),
            });
        }
        d.validate()?;
    }
    let ball = Ball::generate(family, radius)?;
    let agrees: Vec<bool> = sequence
        .iter()
        .map(|d| first_disagreement(d, limit, ball.elements()).is_none())
        .collect();
    let tail = agrees.iter().rev().take_while(|a| **a).count();
    let agree_from = (tail > 0).then(|| agrees.len() - tail);
    Ok(ConvergenceReport {
        check: "convergence",
        radius,
        length: sequence.len(),
        agrees,
        agree_from,
    })
}

/// `g = (r, n)` with `conjugate(source, g)` agreeing with `target` on
/// `Ball(radius)`, found by moving the source parameter into a threshold
/// gap whose Smirnov pattern matches the target, via `g^-1(e) = l^-n (e - r)`.
/// The identity is tried first.
pub fn conjugacy_orbit_probe(
    source: &OrderingDescriptor,
    target: &OrderingDescriptor,
    radius: u32,
) -> Result<Option<Element>> {
    let OrderingDescriptor::Smirnov {
        ell,
        epsilon,
        side: Side::Exact,
        opposite: false,
    } = source
    else {
        return Err(Error::Precondition(format!(
            "{source} is not an exact Smirnov ordering with a positive"
        )));
    };
    let family = Family::bs(*ell);
    if target.family() != family {
        return Err(Error::FamilyMismatch {
            expected: family,
            found: target.family(),
        });
    }
    source.validate()?;
    target.validate()?;
    let a = Element::Bs(BsElement {
        r: LFraction::from_int(1, *ell),
        n: 0,
    });
    if !target.sign(&a).is_positive() {
        return Err(Error::Precondition(format!(
            "a is not positive under {target}"
        )));
    }
    let ball = Ball::generate(family, radius)?;
    if first_disagreement(source, target, ball.elements()).is_none() {
        return Ok(Some(family.identity()));
    }
    let ts = thresholds(&ball)?;
    let gaps = gap_points(&ts);
    let reps = gap_representatives(&ts);
    let Some(gap) = gaps.into_iter().zip(reps).find_map(|(gap, x)| {
        let d = OrderingDescriptor::Smirnov {
            ell: *ell,
            epsilon: x,
            side: Side::Exact,
            opposite: false,
        };
        first_disagreement(&d, target, ball.elements())
            .is_none()
            .then_some(gap)
    }) else {
        return Ok(None);
    };
    let int = |v: BigInt| BigRational::from_integer(v);
    let (r, n) = match gap {
        (None, None) => return Ok(Some(family.identity())),
        (Some(lo), None) => (epsilon.shift(&-lo).floor(), 0),
        (None, Some(hi)) => (epsilon.shift(&-hi).floor() + BigInt::one(), 0),
        (Some(lo), Some(hi)) => {
            let mut n = 0i64;
            while ell_pow(*ell, n) * (&hi - &lo) < BigRational::one() {
                n += 1;
            }
            (epsilon.shift(&-(ell_pow(*ell, n) * lo)).floor(), n)
        }
    };
    let g = Element::Bs(BsElement {
        r: LFraction::from_rational(&int(r), *ell).expect("integer"),
        n,
    });
    let check = agreement_on_ball(&source.conjugate(&g)?, target, &ball)?;
    if check.witness.is_some() {
        return Err(Error::Internal(format!(
            "steering by {g} missed the target gap"
        )));
    }
    Ok(Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> OrderingDescriptor {
        OrderingDescriptor::parse(s, Family::bs(2)).unwrap()
    }

    #[test]
    fn bi_orders_are_limits_of_smirnov_orderings() {
        for bits in ["00", "01", "10", "11"] {
            let o = bs(&format!("flip:{bits}"));
            let r = isolation_probe(&o, &CandidateSet::Smirnov, 6).unwrap();
            let found = r.found.expect(bits);
            assert!(matches!(found, OrderingDescriptor::Smirnov { .. }));
            assert!(r.distinct_at.unwrap() > 6);
            let none = isolation_probe(&o, &CandidateSet::COrderings, 1).unwrap();
            assert!(none.found.is_none());
        }
        let r = isolation_probe(&bs("flip:00"), &CandidateSet::Smirnov, 6).unwrap();
        let Some(OrderingDescriptor::Smirnov {
            epsilon,
            opposite: false,
            ..
        }) = r.found
        else {
            panic!()
        };
        assert!(epsilon > QuadraticNumber::from_int(10));
    }

    #[test]
    fn irrational_slope_has_rational_approximants() {
        let z2 = Family::Abelian { n: 2 };
        let o = OrderingDescriptor::parse("slope:sqrt2,1", z2).unwrap();
        let r = isolation_probe(&o, &CandidateSet::SlopePerturbations, 8).unwrap();
        let Some(OrderingDescriptor::Slope { direction, .. }) = r.found else {
            panic!("{r:?}")
        };
        assert!(direction.iter().all(|x| x.is_rational()));
    }

    #[test]
    fn rational_slope_is_not_isolated() {
        let z2 = Family::Abelian { n: 2 };
        for text in ["slope:1,0", "slope:3,7", "slope:-2,5:2,1"] {
            let o = OrderingDescriptor::parse(text, z2).unwrap();
            let r = isolation_probe(&o, &CandidateSet::SlopePerturbations, 8).unwrap();
            assert!(r.found.is_some(), "{text}");
        }
    }

    #[test]
    fn convergence_to_bi_order() {
        let seq: Vec<OrderingDescriptor> = (0..12)
            .map(|k| {
                let e =
                    QuadraticNumber::sqrt(2).shift(&BigRational::from_integer(BigInt::one() << k));
                OrderingDescriptor::smirnov(2, e, Side::Exact).unwrap()
            })
            .collect();
        let r = convergence_check(&seq, &bs("flip:00"), 5).unwrap();
        let k = r.agree_from.unwrap();
        assert!(k > 0 && k < 12);
        let r6 = convergence_check(&seq, &bs("flip:00"), 6).unwrap();
        assert!(r6.agree_from.map_or(true, |k6| k6 >= k));
        let o = bs("smirnov:sqrt3");
        let c = convergence_check(&vec![o.clone(); 4], &o, 5).unwrap();
        assert_eq!(c.agree_from, Some(0));
        let near: Vec<OrderingDescriptor> = (1..=200)
            .map(|k| {
                let e = QuadraticNumber::sqrt(2).shift(&BigRational::new(1.into(), k.into()));
                OrderingDescriptor::smirnov(2, e, Side::Exact).unwrap()
            })
            .collect();
        assert!(convergence_check(&near, &bs("smirnov:sqrt2"), 5)
            .unwrap()
            .agree_from
            .is_some());
    }

    #[test]
    fn steering_into_a_target() {
        let g = conjugacy_orbit_probe(&bs("smirnov:sqrt2"), &bs("smirnov:5:+"), 4)
            .unwrap()
            .unwrap();
        let steered = bs("smirnov:sqrt2").conjugate(&g).unwrap();
        assert!(agreement_radius_ok(&steered, &bs("smirnov:5:+"), 4));
        let id = conjugacy_orbit_probe(&bs("smirnov:sqrt2"), &bs("smirnov:sqrt2"), 6)
            .unwrap()
            .unwrap();
        assert!(id.is_identity());
        let far =
            conjugacy_orbit_probe(&bs("smirnov:sqrt2"), &bs("smirnov:1/3*sqrt2+1000"), 6).unwrap();
        assert!(far.is_some());
        assert!(matches!(
            conjugacy_orbit_probe(&bs("smirnov:sqrt2"), &bs("smirnov:sqrt2:opp"), 4),
            Err(Error::Precondition(_))
        ));
    }

    fn agreement_radius_ok(a: &OrderingDescriptor, b: &OrderingDescriptor, r: u32) -> bool {
        super::super::metric::agreement_radius(a, b, r)
            .unwrap()
            .witness
            .is_none()
    }
}
