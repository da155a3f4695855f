//! Ball-bounded verification of the Conradian property, convexity and
//! bi-invariance.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Ball, Element};
use crate::orderings::{compare, OrderingDescriptor, Sign, SignOracle};

/// Positive `f`, `g` with `f g^2 < g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConradWitness {
    pub f: Element,
    pub g: Element,
}

impl ConradWitness {
    /// Verifies the three signs against `ord` before accepting the pair.
    pub fn new<O: SignOracle + ?Sized>(ord: &O, f: Element, g: Element) -> Result<Self> {
        if !ord.sign(&f).is_positive() || !ord.sign(&g).is_positive() {
            return Err(Error::Precondition(
                "witness elements must both be positive".into(),
            ));
        }
        if !conrad_value(&f, &g, ord).is_negative() {
            return Err(Error::Precondition("f g^2 is not below g".into()));
        }
        Ok(ConradWitness { f, g })
    }
}

/// Sign of `g^-1 f g^2`; negative exactly when `f g^2 < g`.
fn conrad_value<O: SignOracle + ?Sized>(f: &Element, g: &Element, ord: &O) -> Sign {
    ord.sign(&g.inv().mul(f).mul(&g.mul(g)))
}

/// Result of the optional cross-check with the second Conrad condition at
/// exponent 2: `1 < g < f` implies `g^-1 f^2 g > f`.
#[derive(Clone, Debug, Serialize)]
pub struct SecondConditionReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConradianReport {
    pub check: &'static str,
    /// `"pass"` or `"witness"`.
    pub result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Element>,
    pub radius: u32,
    pub positive_elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_condition: Option<SecondConditionReport>,
}

impl ConradianReport {
    fn new(radius: u32, positive_elements: usize, witness: Option<ConradWitness>) -> Self {
        let (result, f, g) = match witness {
            Some(w) => ("witness", Some(w.f), Some(w.g)),
            None => ("pass", None, None),
        };
        ConradianReport {
            check: "conradian",
            result,
            f,
            g,
            radius,
            positive_elements,
            second_condition: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.result == "pass"
    }

    pub fn witness(&self) -> Option<ConradWitness> {
        match (&self.f, &self.g) {
            (Some(f), Some(g)) => Some(ConradWitness {
                f: f.clone(),
                g: g.clone(),
            }),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ConradianOptions {
    pub second_condition: bool,
}

/// Scans positive pairs `(f, g)` of the ball, `f` in the outer loop, both
/// in scan order, and returns the first pair with `f g^2 < g`.
pub fn conradian_check<O: SignOracle + ?Sized>(ord: &O, ball: &Ball) -> ConradianReport {
    conradian_check_with(ord, ball, ConradianOptions::default())
}

pub fn conradian_check_with<O: SignOracle + ?Sized>(
    ord: &O,
    ball: &Ball,
    options: ConradianOptions,
) -> ConradianReport {
    let positive: Vec<&Element> = ball.iter().filter(|g| ord.sign(g).is_positive()).collect();
    let prepared: Vec<(Element, Element)> = positive.iter().map(|g| (g.inv(), g.mul(g))).collect();
    let mut witness = None;
    'outer: for f in &positive {
        for (g, (g_inv, g_sq)) in positive.iter().zip(&prepared) {
            if ord.sign(&g_inv.mul(f).mul(g_sq)).is_negative() {
                witness = Some(ConradWitness {
                    f: (*f).clone(),
                    g: (*g).clone(),
                });
                break 'outer;
            }
        }
    }
    let mut report = ConradianReport::new(ball.radius(), positive.len(), witness);
    if options.second_condition {
        report.second_condition = Some(second_condition(ord, &positive));
    }
    report
}

fn second_condition<O: SignOracle + ?Sized>(
    ord: &O,
    positive: &[&Element],
) -> SecondConditionReport {
    for f in positive {
        let f_inv = f.inv();
        let f_sq = f.mul(f);
        for g in positive {
            if compare(ord, g, f) != Ordering::Less {
                continue;
            }
            // g^-1 f^2 g > f  iff  f^-1 g^-1 f^2 g > id
            if !ord
                .sign(&f_inv.mul(&g.inv()).mul(&f_sq).mul(g))
                .is_positive()
            {
                return SecondConditionReport {
                    pass: false,
                    f: Some((*f).clone()),
                    g: Some((*g).clone()),
                };
            }
        }
    }
    SecondConditionReport {
        pass: true,
        f: None,
        g: None,
    }
}

/// Runs [`conradian_check`] for many flip orderings of one family in a
/// single pass over the pairs of the ball.
///
/// A flip ordering's sign depends only on the series level of an element
/// and the sign of its level coordinate, so each pair is reduced to the
/// classes of `f`, `g` and `g^-1 f g^2`; the first pair of every class
/// triple is kept and each ordering is then decided on the triples. The
/// reports equal those of separate scans.
pub fn conradian_check_flips(
    ords: &[OrderingDescriptor],
    ball: &Ball,
) -> Result<Vec<ConradianReport>> {
    let family = ball.family();
    let len = family.series_length();
    let mut flip_sets = Vec::with_capacity(ords.len());
    for o in ords {
        match o {
            OrderingDescriptor::Flip { family: f, flips } if *f == family => flip_sets.push(flips),
            _ => {
                return Err(Error::NotConradian(format!(
                    "{o} is not a flip ordering of {family}"
                )))
            }
        }
    }
    // Class = 2 * (level - 1) + (coordinate positive); the identity is skipped.
    let class = |g: &Element| -> Option<usize> {
        let (level, s) = g.series_level();
        (level > 0).then(|| 2 * (level - 1) + usize::from(s == Sign::Positive))
    };
    let k = 2 * len;
    let mut first: Vec<Option<(u32, u32)>> = vec![None; k * k * k];
    let elems = ball.elements();
    let classes: Vec<Option<usize>> = elems.iter().map(class).collect();
    let prepared: Vec<(Element, Element)> = elems.iter().map(|g| (g.inv(), g.mul(g))).collect();
    for (i, f) in elems.iter().enumerate() {
        let Some(cf) = classes[i] else { continue };
        for (j, (g_inv, g_sq)) in prepared.iter().enumerate() {
            let Some(cg) = classes[j] else { continue };
            let Some(cx) = class(&g_inv.mul(f).mul(g_sq)) else {
                continue;
            };
            let slot = &mut first[(cf * k + cg) * k + cx];
            if slot.is_none() {
                *slot = Some((i as u32, j as u32));
            }
        }
    }

    let reports = flip_sets
        .into_iter()
        .map(|flips| {
            let positive = |c: usize| (c % 2 == 1) != flips[c / 2];
            let mut best: Option<(u32, u32)> = None;
            for cf in (0..k).filter(|c| positive(*c)) {
                for cg in (0..k).filter(|c| positive(*c)) {
                    for cx in (0..k).filter(|c| !positive(*c)) {
                        if let Some(p) = first[(cf * k + cg) * k + cx] {
                            if best.map_or(true, |b| p < b) {
                                best = Some(p);
                            }
                        }
                    }
                }
            }
            let positives = classes.iter().filter(|c| c.is_some_and(positive)).count();
            let witness = best.map(|(i, j)| ConradWitness {
                f: elems[i as usize].clone(),
                g: elems[j as usize].clone(),
            });
            ConradianReport::new(ball.radius(), positives, witness)
        })
        .collect();
    Ok(reports)
}

#[derive(Clone, Debug, Serialize)]
pub struct BiInvarianceReport {
    pub check: &'static str,
    pub radius: u32,
    pub pass: bool,
    /// `(g, h)` with `sign(h g h^-1) != sign(g)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Element>,
}

/// Checks `sign(h g h^-1) = sign(g)` for all `g`, `h` in the ball.
pub fn bi_invariance_check<O: SignOracle + ?Sized>(ord: &O, ball: &Ball) -> BiInvarianceReport {
    let inverses: Vec<Element> = ball.iter().map(|h| h.inv()).collect();
    for g in ball.iter() {
        let s = ord.sign(g);
        for (h, h_inv) in ball.iter().zip(&inverses) {
            if ord.sign(&h.mul(g).mul(h_inv)) != s {
                return BiInvarianceReport {
                    check: "bi-invariance",
                    radius: ball.radius(),
                    pass: false,
                    g: Some(g.clone()),
                    h: Some(h.clone()),
                };
            }
        }
    }
    BiInvarianceReport {
        check: "bi-invariance",
        radius: ball.radius(),
        pass: true,
        g: None,
        h: None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub check: &'static str,
    pub subset: String,
    pub radius: u32,
    pub convex: bool,
    /// `f1 < h < f2` with `f1`, `f2` in the subset and `h` outside it; the
    /// pair around `h` is the tightest one available in the ball.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<(Element, Element, Element)>,
}

/// Looks for `h` outside `S` lying strictly between two elements of `S`,
/// all within the ball. `h` is the first such element in scan order.
pub fn convexity_check<O, P>(subset: &str, member: P, ord: &O, ball: &Ball) -> ConvexityReport
where
    O: SignOracle + ?Sized,
    P: Fn(&Element) -> bool,
{
    let mut inside: Vec<&Element> = ball.iter().filter(|g| member(g)).collect();
    inside.sort_by(|x, y| compare(ord, x, y));
    let mut violation = None;
    if inside.len() >= 2 {
        let lo = inside[0];
        let hi = inside[inside.len() - 1];
        for h in ball.iter().filter(|g| !member(g)) {
            if compare(ord, lo, h) == Ordering::Less && compare(ord, h, hi) == Ordering::Less {
                // First element of S above h.
                let pos = inside.partition_point(|x| compare(ord, x, h) == Ordering::Less);
                violation = Some((inside[pos - 1].clone(), h.clone(), inside[pos].clone()));
                break;
            }
        }
    }
    ConvexityReport {
        check: "convexity",
        subset: subset.to_string(),
        radius: ball.radius(),
        convex: violation.is_none(),
        violation,
    }
}
