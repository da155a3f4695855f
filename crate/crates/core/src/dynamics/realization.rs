//! Dynamical realization of a left ordering: an order-preserving embedding
//! `t` of a finite set of elements into `Q`, built by the midpoint rule.

use std::collections::HashMap;
use std::io::{Read, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Ball, Element};
use crate::orderings::{compare, SignOracle};

/// Order in which ball elements are fed to the realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Enumeration {
    BallOrder,
    /// Ball order reversed, with the identity moved to the front.
    Reversed,
    /// Uniform shuffle of the non-identity elements.
    Shuffled {
        seed: u64,
    },
}

impl Enumeration {
    pub fn list(&self, ball: &Ball) -> Vec<Element> {
        let id = ball.family().identity();
        let mut rest: Vec<Element> = ball.iter().filter(|g| !g.is_identity()).cloned().collect();
        match self {
            Enumeration::BallOrder => {}
            Enumeration::Reversed => rest.reverse(),
            Enumeration::Shuffled { seed } => rest.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed)),
        }
        let mut out = Vec::with_capacity(rest.len() + 1);
        out.push(id);
        out.extend(rest);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationEntry {
    pub element: Element,
    #[serde(with = "rational_string")]
    pub t: BigRational,
}

/// Entries in enumeration order; `base` is the first enumerated element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationTable {
    pub base: Element,
    pub entries: Vec<RealizationEntry>,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| D::Error::custom(format!("bad fraction {s:?}")))
    }
}

impl RealizationTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self) -> HashMap<&Element, &BigRational> {
        self.entries.iter().map(|e| (&e.element, &e.t)).collect()
    }

    pub fn t(&self, g: &Element) -> Option<&BigRational> {
        self.entries.iter().find(|e| &e.element == g).map(|e| &e.t)
    }

    /// CSV with columns `element` (JSON) and `t` (exact fraction).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["element", "t"]).map_err(csv_err)?;
        for e in &self.entries {
            let elem = serde_json::to_string(&e.element)
                .map_err(|err| Error::Internal(err.to_string()))?;
            w.write_record([elem, e.t.to_string()]).map_err(csv_err)?;
        }
        w.flush().map_err(|err| Error::Internal(err.to_string()))
    }

    /// Reads the format written by [`write_csv`](Self::write_csv); lines
    /// starting with `#` are skipped.
    pub fn read_csv<R: Read>(input: R) -> Result<RealizationTable> {
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(input);
        let mut entries = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|err| Error::Parse(format!("csv: {err}")))?;
            let (Some(elem), Some(t)) = (rec.get(0), rec.get(1)) else {
                return Err(Error::Parse("realization rows need `element,t`".into()));
            };
            let element: Element = serde_json::from_str(elem)
                .map_err(|err| Error::Parse(format!("element {elem:?}: {err}")))?;
            let t: BigRational = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad fraction {t:?}")))?;
            entries.push(RealizationEntry { element, t });
        }
        let base = entries
            .first()
            .map(|e| e.element.clone())
            .ok_or_else(|| Error::Parse("empty realization table".into()))?;
        Ok(RealizationTable { base, entries })
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|err| Error::Internal(err.to_string()))
    }
}

fn csv_err(err: csv::Error) -> Error {
    Error::Internal(format!("csv: {err}"))
}

/// Builds `t` by induction along `enumeration`: `t(g_0) = 0`; a new maximum
/// gets `max + 1`, a new minimum `min - 1`, anything else the midpoint of
/// its two neighbours among the elements placed so far.
pub fn dynamical_realization<O: SignOracle + ?Sized>(
    ord: &O,
    ball: &Ball,
    enumeration: &[Element],
) -> Result<RealizationTable> {
    let family = ord.family();
    if ball.family() != family {
        return Err(Error::FamilyMismatch {
            expected: family,
            found: ball.family(),
        });
    }
    let Some(base) = enumeration.first() else {
        return Err(Error::Precondition("empty enumeration".into()));
    };
    let mut seen = std::collections::HashSet::new();
    for g in enumeration {
        if !ball.contains(g) {
            return Err(Error::Precondition(format!("{g} is not in the ball")));
        }
        if !seen.insert(g) {
            return Err(Error::Precondition(format!("{g} is enumerated twice")));
        }
    }
    if seen.len() != ball.len() {
        return Err(Error::Precondition(format!(
            "enumeration lists {} of {} ball elements",
            seen.len(),
            ball.len()
        )));
    }

    let mut entries: Vec<RealizationEntry> = Vec::with_capacity(enumeration.len());
    // Indices into `entries`, sorted by the ordering.
    let mut sorted: Vec<usize> = Vec::with_capacity(enumeration.len());
    let one = BigRational::one();
    for g in enumeration {
        let pos = sorted.partition_point(|&i| compare(ord, &entries[i].element, g).is_lt());
        let t = if sorted.is_empty() {
            BigRational::from_integer(BigInt::from(0))
        } else if pos == sorted.len() {
            &entries[sorted[pos - 1]].t + &one
        } else if pos == 0 {
            &entries[sorted[0]].t - &one
        } else {
            (&entries[sorted[pos - 1]].t + &entries[sorted[pos]].t)
                / BigRational::from_integer(2.into())
        };
        sorted.insert(pos, entries.len());
        entries.push(RealizationEntry {
            element: g.clone(),
            t,
        });
    }
    Ok(RealizationTable {
        base: base.clone(),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationViolation {
    /// `None` for a monotonicity failure of `t` itself.
    pub g: Option<Element>,
    pub h1: Element,
    pub h2: Element,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub check: &'static str,
    pub radius: u32,
    pub entries: usize,
    pub pass: bool,
    pub monotone: bool,
    pub action_preserves_order: bool,
    pub violations: Vec<RealizationViolation>,
}

/// Violations listed before the check stops collecting.
const MAX_VIOLATIONS: usize = 16;

/// Checks that `t` is strictly order-preserving and that `g . t(h) = t(gh)`
/// is order-preserving wherever `gh` is in the table, for `g` in the ball.
pub fn realization_action_check<O: SignOracle + ?Sized>(
    table: &RealizationTable,
    ord: &O,
    ball: &Ball,
) -> RealizationReport {
    let mut by_t: Vec<&RealizationEntry> = table.entries.iter().collect();
    by_t.sort_by(|x, y| x.t.cmp(&y.t));
    let mut violations = Vec::new();
    let mut monotone = true;
    for pair in by_t.windows(2) {
        if pair[0].t == pair[1].t || !compare(ord, &pair[0].element, &pair[1].element).is_lt() {
            monotone = false;
            if violations.len() < MAX_VIOLATIONS {
                violations.push(RealizationViolation {
                    g: None,
                    h1: pair[0].element.clone(),
                    h2: pair[1].element.clone(),
                });
            }
        }
    }
    let t_of = table.lookup();
    let mut action_ok = true;
    for g in ball.iter() {
        let mut last: Option<(&Element, BigRational)> = None;
        for e in &by_t {
            let gh = g.mul(&e.element);
            let Some(t) = t_of.get(&gh) else { continue };
            if let Some((prev, pt)) = &last {
                if pt >= *t {
                    action_ok = false;
                    if violations.len() < MAX_VIOLATIONS {
                        violations.push(RealizationViolation {
                            g: Some(g.clone()),
                            h1: (*prev).clone(),
                            h2: e.element.clone(),
                        });
                    }
                    break;
                }
            }
            last = Some((&e.element, (*t).clone()));
        }
    }
    RealizationReport {
        check: "realization",
        radius: ball.radius(),
        entries: table.len(),
        pass: monotone && action_ok,
        monotone,
        action_preserves_order: action_ok,
        violations,
    }
}
