//! The canonical rational series of each built-in family and desk-scale
//! evidence that it is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::groups::{Ball, Element, Family};

/// `{id} = G_0 < G_1 < ... < G_len = G`, given by coordinate vanishing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexSeries {
    pub family: Family,
    pub length: usize,
}

impl ConvexSeries {
    pub fn of(family: Family) -> ConvexSeries {
        ConvexSeries {
            family,
            length: family.series_length(),
        }
    }

    /// `min { i : g in G_i }`
    pub fn level(&self, g: &Element) -> usize {
        g.series_level().0
    }

    pub fn contains(&self, level: usize, g: &Element) -> bool {
        self.level(g) <= level
    }
}

/// Coordinate of the quotient `G_i / G_{i-1}` for an element of `G_i`.
fn quotient_coordinate(g: &Element, level: usize) -> BigRational {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    match g {
        Element::Bs(x) => {
            if level == 2 {
                int(x.n)
            } else {
                x.r.to_rational()
            }
        }
        Element::Tararin(x) => int(x.b[x.b.len() - level]),
        Element::Cn(x) => {
            let n = x.a.len();
            if level == n + 2 {
                int(x.c)
            } else if level == n + 1 {
                x.d.to_rational()
            } else {
                int(x.a[n - level])
            }
        }
        Element::Abelian(x) => int(x.v[level - 1]),
    }
}

fn commutator(g: &Element, h: &Element) -> Element {
    g.mul(h).mul(&g.inv()).mul(&h.inv())
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientEvidence {
    /// `i` for the quotient `G_i / G_{i-1}`.
    pub level: usize,
    pub sample_size: usize,
    pub images_commute: bool,
    pub powers_commensurable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(Element, Element)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonAbelianEvidence {
    /// `i` for the quotient `G_{i+2} / G_i`.
    pub lower: usize,
    /// A pair whose commutator leaves `G_i`; `None` when the quotient
    /// looks abelian on the sample.
    pub pair: Option<(Element, Element)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalSeriesReport {
    pub check: &'static str,
    pub family: Family,
    pub radius: u32,
    pub quotients: Vec<QuotientEvidence>,
    pub non_abelian: Vec<NonAbelianEvidence>,
    /// Rank-1 quotients and no abelian `G_{i+2}/G_i`, as far as the ball shows.
    pub hypotheses_hold: bool,
}

/// Elements per level examined for the quadratic pair checks.
const SAMPLE: usize = 40;

/// Desk-scale evidence that the canonical series is a rational series with
/// no abelian two-step quotients. Evidence, not proof: only elements of the
/// ball are examined.
pub fn check_rational_series(family: Family, ball: &Ball) -> RationalSeriesReport {
    let series = ConvexSeries::of(family);
    let len = series.length;
    let generators: Vec<Element> = (1..=len)
        .map(|l| {
            family
                .generator(family.level_generator(l).expect("level in range"))
                .unwrap()
        })
        .collect();

    // Per level: the level generator first, then ball elements of that level.
    let mut by_level: Vec<Vec<Element>> = vec![Vec::new(); len + 1];
    for (l, g) in generators.iter().enumerate() {
        by_level[l + 1].push(g.clone());
    }
    for g in ball.iter() {
        let l = series.level(g);
        if l > 0 && by_level[l].len() < SAMPLE && !by_level[l].contains(g) {
            by_level[l].push(g.clone());
        }
    }

    let mut quotients = Vec::new();
    for level in 1..=len {
        // Sample of G_level: elements from this level and below.
        let sample: Vec<&Element> = (1..=level).flat_map(|l| by_level[l].iter()).collect();
        let mut counterexample = None;
        let mut images_commute = true;
        'pairs: for g in &sample {
            for h in &sample {
                if series.level(&commutator(g, h)) >= level {
                    images_commute = false;
                    counterexample = Some(((*g).clone(), (*h).clone()));
                    break 'pairs;
                }
            }
        }
        let top = &by_level[level];
        let mut powers_commensurable = true;
        for g in top {
            for h in top {
                let x = quotient_coordinate(g, level);
                let y = quotient_coordinate(h, level);
                // x / y = q / p in lowest terms, so g^p h^-q vanishes mod G_{level-1}.
                let ratio = &x / &y;
                let (q, p) = (ratio.numer().clone(), ratio.denom().clone());
                let ok = match (p.try_into(), q.try_into()) {
                    (Ok(p), Ok(q)) => {
                        let p: i64 = p;
                        let q: i64 = q;
                        series.level(&g.pow(p).mul(&h.pow(-q))) < level
                    }
                    _ => false,
                };
                if !ok && counterexample.is_none() {
                    counterexample = Some((g.clone(), h.clone()));
                }
                powers_commensurable &= ok;
            }
        }
        quotients.push(QuotientEvidence {
            level,
            sample_size: sample.len(),
            images_commute,
            powers_commensurable,
            counterexample,
        });
    }

    let mut non_abelian = Vec::new();
    for lower in 0..len.saturating_sub(1) {
        let sample: Vec<&Element> = (lower + 1..=lower + 2)
            .flat_map(|l| by_level[l].iter())
            .collect();
        let pair = sample.iter().find_map(|g| {
            sample
                .iter()
                .find(|h| series.level(&commutator(g, h)) > lower)
                .map(|h| ((*g).clone(), (*h).clone()))
        });
        non_abelian.push(NonAbelianEvidence { lower, pair });
    }

    let hypotheses_hold = quotients
        .iter()
        .all(|q| q.images_commute && q.powers_commensurable)
        && non_abelian.iter().all(|n| n.pair.is_some());
    RationalSeriesReport {
        check: "rational-series",
        family,
        radius: ball.radius(),
        quotients,
        non_abelian,
        hypotheses_hold,
    }
}
