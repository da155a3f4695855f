//! Finite descriptions of left-orderings and their sign oracles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quadratic::{sign_pq, QuadraticNumber};
use super::sign::Sign;
use crate::error::{Error, Result};
use crate::groups::{eval_word, Element, Family};

/// How a Smirnov ordering resolves elements fixing `epsilon`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Exact,
    PlusLimit,
    MinusLimit,
}

/// Anything that assigns a sign to every element of one family.
pub trait SignOracle {
    fn family(&self) -> Family;
    fn sign(&self, g: &Element) -> Sign;
}

impl<T: SignOracle + ?Sized> SignOracle for &T {
    fn family(&self) -> Family {
        (**self).family()
    }

    fn sign(&self, g: &Element) -> Sign {
        (**self).sign(g)
    }
}

/// Serializable left-ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderingDescriptor {
    /// Sign of the top nonzero coordinate of the canonical series, negated
    /// on levels whose bit is set. Bit `i` belongs to level `i + 1`.
    Flip {
        family: Family,
        #[serde(serialize_with = "ser_bits", deserialize_with = "de_bits")]
        flips: Vec<bool>,
    },
    /// `g = (r, n)` is positive iff `g(epsilon) > epsilon`, i.e. iff
    /// `(l^n - 1) epsilon + r > 0`.
    Smirnov {
        ell: u32,
        epsilon: QuadraticNumber,
        side: Side,
        opposite: bool,
    },
    /// On `Z^n`: sign of `<v, direction>`, then lexicographic in the
    /// coordinate order `tie_break` (1-based indices).
    Slope {
        n: usize,
        direction: Vec<QuadraticNumber>,
        tie_break: Vec<usize>,
    },
    Opposite {
        inner: Box<OrderingDescriptor>,
    },
    /// `h` is positive iff `g h g^-1` is positive for `inner`.
    Conjugate {
        inner: Box<OrderingDescriptor>,
        g: Element,
    },
}

fn ser_bits<S: Serializer>(bits: &[bool], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&bits_to_string(bits))
}

fn de_bits<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<bool>, D::Error> {
    let s = String::deserialize(d)?;
    parse_bits(&s).map_err(serde::de::Error::custom)
}

pub(crate) fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidDescriptor(format!(
                "flip bits must be 0/1, got `{s}`"
            ))),
        })
        .collect()
}

impl OrderingDescriptor {
    pub fn flip(family: Family, flips: Vec<bool>) -> Result<Self> {
        let d = OrderingDescriptor::Flip { family, flips };
        d.validate()?;
        Ok(d)
    }

    /// Flip ordering from a bit string such as `"01"`.
    pub fn flip_str(family: Family, bits: &str) -> Result<Self> {
        OrderingDescriptor::flip(family, parse_bits(bits)?)
    }

    pub fn smirnov(ell: u32, epsilon: QuadraticNumber, side: Side) -> Result<Self> {
        let d = OrderingDescriptor::Smirnov {
            ell,
            epsilon,
            side,
            opposite: false,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn slope(direction: Vec<QuadraticNumber>) -> Result<Self> {
        let n = direction.len();
        let d = OrderingDescriptor::Slope {
            n,
            direction,
            tie_break: (1..=n).collect(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn slope_with_tie_break(
        direction: Vec<QuadraticNumber>,
        tie_break: Vec<usize>,
    ) -> Result<Self> {
        let d = OrderingDescriptor::Slope {
            n: direction.len(),
            direction,
            tie_break,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn family(&self) -> Family {
        match self {
            OrderingDescriptor::Flip { family, .. } => *family,
            OrderingDescriptor::Smirnov { ell, .. } => Family::bs(*ell),
            OrderingDescriptor::Slope { n, .. } => Family::Abelian { n: *n },
            OrderingDescriptor::Opposite { inner }
            | OrderingDescriptor::Conjugate { inner, .. } => inner.family(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDescriptor(m));
        match self {
            OrderingDescriptor::Flip { family, flips } => {
                family.validate()?;
                if flips.len() != family.series_length() {
                    return bad(format!(
                        "{family} has {} series levels, got {} flip bits",
                        family.series_length(),
                        flips.len()
                    ));
                }
                Ok(())
            }
            OrderingDescriptor::Smirnov {
                ell, epsilon, side, ..
            } => {
                Family::bs(*ell).validate()?;
                if *side == Side::Exact && epsilon.is_rational() {
                    return bad(format!(
                        "rational epsilon {epsilon} fixes elements of B(1,{ell}); use side + or -"
                    ));
                }
                Ok(())
            }
            OrderingDescriptor::Slope {
                n,
                direction,
                tie_break,
            } => {
                Family::Abelian { n: *n }.validate()?;
                if direction.len() != *n {
                    return bad(format!(
                        "direction has {} entries for Z^{n}",
                        direction.len()
                    ));
                }
                let d = direction
                    .iter()
                    .map(|x| x.d())
                    .find(|d| *d != 0)
                    .unwrap_or(0);
                if direction.iter().any(|x| x.d() != 0 && x.d() != d) {
                    return bad("direction entries must share one quadratic field".into());
                }
                let mut sorted = tie_break.clone();
                sorted.sort_unstable();
                if sorted != (1..=*n).collect::<Vec<_>>() {
                    return bad(format!(
                        "tie-break {tie_break:?} is not a permutation of 1..{n}"
                    ));
                }
                Ok(())
            }
            OrderingDescriptor::Opposite { inner } => inner.validate(),
            OrderingDescriptor::Conjugate { inner, g } => {
                inner.validate()?;
                inner.family().check(g)
            }
        }
    }

    /// Checked sign: validates the descriptor and the element's family.
    pub fn sign_of(&self, g: &Element) -> Result<Sign> {
        self.validate()?;
        self.family().check(g)?;
        Ok(self.sign(g))
    }

    /// `Less` iff `g < h`, derived from the sign of `g^-1 h`.
    pub fn compare(&self, g: &Element, h: &Element) -> Result<std::cmp::Ordering> {
        self.validate()?;
        self.family().check(g)?;
        self.family().check(h)?;
        Ok(compare(self, g, h))
    }

    /// The reversed ordering. Built-in kinds are reversed in place so the
    /// result stays in the same catalogue; double reversal is the identity.
    pub fn opposite(&self) -> OrderingDescriptor {
        match self {
            OrderingDescriptor::Flip { family, flips } => OrderingDescriptor::Flip {
                family: *family,
                flips: flips.iter().map(|b| !b).collect(),
            },
            OrderingDescriptor::Smirnov {
                ell,
                epsilon,
                side,
                opposite,
            } => OrderingDescriptor::Smirnov {
                ell: *ell,
                epsilon: epsilon.clone(),
                side: *side,
                opposite: !opposite,
            },
            OrderingDescriptor::Opposite { inner } => (**inner).clone(),
            other => OrderingDescriptor::Opposite {
                inner: Box::new(other.clone()),
            },
        }
    }

    /// The conjugate ordering: `h` is positive iff `g h g^-1` is.
    pub fn conjugate(&self, g: &Element) -> Result<OrderingDescriptor> {
        self.family().check(g)?;
        Ok(OrderingDescriptor::Conjugate {
            inner: Box::new(self.clone()),
            g: g.clone(),
        })
    }

    /// Flip ordering with bit `level` toggled.
    pub fn flip_level(&self, level: usize) -> Result<OrderingDescriptor> {
        match self {
            OrderingDescriptor::Flip { family, flips } => {
                if level >= flips.len() {
                    return Err(Error::Precondition(format!(
                        "level {level} out of range for {} series levels",
                        flips.len()
                    )));
                }
                let mut flips = flips.clone();
                flips[level] = !flips[level];
                Ok(OrderingDescriptor::Flip {
                    family: *family,
                    flips,
                })
            }
            _ => Err(Error::NotConradian(self.to_string())),
        }
    }

    /// Parses the command-line mini-language. `family` supplies the group
    /// for `flip:` descriptors and the base for `smirnov:`.
    ///
    /// ```text
    /// flip:01            smirnov:sqrt2        smirnov:3/4:+      smirnov:1:-:opp
    /// slope:sqrt2,1      slope:1,0:2,1        opposite:<desc>    conj[b^-1 a]:<desc>
    /// ```
    pub fn parse(text: &str, family: Family) -> Result<OrderingDescriptor> {
        let text = text.trim();
        let bad = |m: &str| Error::InvalidDescriptor(format!("`{text}`: {m}"));
        if let Some(rest) = text.strip_prefix("opposite:") {
            return Ok(OrderingDescriptor::parse(rest, family)?.opposite());
        }
        if let Some(rest) = text.strip_prefix("conj[") {
            let (word, inner) = rest
                .split_once("]:")
                .ok_or_else(|| bad("expected conj[word]:desc"))?;
            let g = eval_word(&family, word)?;
            return OrderingDescriptor::parse(inner, family)?.conjugate(&g);
        }
        let (kind, rest) = text
            .split_once(':')
            .ok_or_else(|| bad("expected kind:args"))?;
        match kind {
            "flip" => OrderingDescriptor::flip_str(family, rest),
            "smirnov" => {
                let Family::BaumslagSolitar { ell } = family else {
                    return Err(bad("smirnov orderings live on B(1,l)"));
                };
                let mut parts = rest.split(':');
                let epsilon: QuadraticNumber = parts.next().unwrap_or("").parse()?;
                let mut side = Side::Exact;
                let mut opposite = false;
                for p in parts {
                    match p {
                        "+" => side = Side::PlusLimit,
                        "-" => side = Side::MinusLimit,
                        "opp" => opposite = true,
                        _ => return Err(bad("expected `+`, `-` or `opp`")),
                    }
                }
                let d = OrderingDescriptor::Smirnov {
                    ell,
                    epsilon,
                    side,
                    opposite,
                };
                d.validate()?;
                Ok(d)
            }
            "slope" => {
                let (dir, perm) = match rest.split_once(':') {
                    Some((d, p)) => (d, Some(p)),
                    None => (rest, None),
                };
                let direction = dir
                    .split(',')
                    .map(|s| s.parse::<QuadraticNumber>())
                    .collect::<Result<Vec<_>>>()?;
                if let Family::Abelian { n } = family {
                    if n != direction.len() {
                        return Err(bad("direction length differs from --family"));
                    }
                }
                let tie_break = match perm {
                    Some(p) => p
                        .split(',')
                        .map(|s| {
                            s.trim()
                                .parse::<usize>()
                                .map_err(|_| bad("bad tie-break index"))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    None => (1..=direction.len()).collect(),
                };
                OrderingDescriptor::slope_with_tie_break(direction, tie_break)
            }
            _ => Err(bad("unknown kind")),
        }
    }
}

/// `l^n` as an exact rational.
pub(crate) fn ell_pow(ell: u32, n: i64) -> BigRational {
    let p = BigInt::from(ell).pow(n.unsigned_abs() as u32);
    if n >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn smirnov_sign(ell: u32, epsilon: &QuadraticNumber, side: Side, g: &Element) -> Sign {
    let Element::Bs(x) = g else {
        panic!("smirnov ordering applied to {}", g.family())
    };
    let slope = ell_pow(ell, x.n) - BigRational::one();
    let p = &slope * epsilon.p() + x.r.to_rational();
    let q = &slope * epsilon.q();
    match sign_pq(&p, &q, epsilon.d()) {
        Sign::Zero => match side {
            _ if x.n == 0 => Sign::Zero,
            Side::PlusLimit => Sign::of_i64(x.n),
            Side::MinusLimit => Sign::of_i64(-x.n),
            // Excluded by validation; treat as unresolved.
            Side::Exact => Sign::Zero,
        },
        s => s,
    }
}

fn slope_sign(direction: &[QuadraticNumber], tie_break: &[usize], g: &Element) -> Sign {
    let Element::Abelian(x) = g else {
        panic!("slope ordering applied to {}", g.family())
    };
    let mut p = BigRational::zero();
    let mut q = BigRational::zero();
    let mut d = 0;
    for (v, w) in x.v.iter().zip(direction) {
        if *v == 0 {
            continue;
        }
        let v = BigRational::from_integer((*v).into());
        p += &v * w.p();
        q += &v * w.q();
        if w.d() != 0 {
            d = w.d();
        }
    }
    match sign_pq(&p, &q, d) {
        Sign::Zero => tie_break
            .iter()
            .map(|i| x.v[i - 1])
            .find(|c| *c != 0)
            .map_or(Sign::Zero, Sign::of_i64),
        s => s,
    }
}

impl SignOracle for OrderingDescriptor {
    fn family(&self) -> Family {
        OrderingDescriptor::family(self)
    }

    fn sign(&self, g: &Element) -> Sign {
        match self {
            OrderingDescriptor::Flip { flips, .. } => {
                let (level, s) = g.series_level();
                if level == 0 {
                    Sign::Zero
                } else {
                    s.negate_if(flips[level - 1])
                }
            }
            OrderingDescriptor::Smirnov {
                ell,
                epsilon,
                side,
                opposite,
            } => smirnov_sign(*ell, epsilon, *side, g).negate_if(*opposite),
            OrderingDescriptor::Slope {
                direction,
                tie_break,
                ..
            } => slope_sign(direction, tie_break, g),
            OrderingDescriptor::Opposite { inner } => -inner.sign(g),
            OrderingDescriptor::Conjugate { inner, g: c } => inner.sign(&c.mul(g).mul(&c.inv())),
        }
    }
}

/// `Less` iff `g < h` under the oracle.
pub fn compare<O: SignOracle + ?Sized>(ord: &O, g: &Element, h: &Element) -> std::cmp::Ordering {
    if g == h {
        return std::cmp::Ordering::Equal;
    }
    match ord.sign(&g.inv().mul(h)) {
        Sign::Positive => std::cmp::Ordering::Less,
        Sign::Negative => std::cmp::Ordering::Greater,
        Sign::Zero => std::cmp::Ordering::Equal,
    }
}

/// Checked [`OrderingDescriptor::sign_of`].
pub fn sign_of(ord: &OrderingDescriptor, g: &Element) -> Result<Sign> {
    ord.sign_of(g)
}

impl fmt::Display for OrderingDescriptor {
    /// Mini-language form; conjugating elements print as normal forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingDescriptor::Flip { flips, .. } => write!(f, "flip:{}", bits_to_string(flips)),
            OrderingDescriptor::Smirnov {
                epsilon,
                side,
                opposite,
                ..
            } => {
                write!(f, "smirnov:{epsilon}")?;
                match side {
                    Side::Exact => {}
                    Side::PlusLimit => write!(f, ":+")?,
                    Side::MinusLimit => write!(f, ":-")?,
                }
                if *opposite {
                    write!(f, ":opp")?;
                }
                Ok(())
            }
            OrderingDescriptor::Slope {
                direction,
                tie_break,
                ..
            } => {
                let dir: Vec<String> = direction.iter().map(|x| x.to_string()).collect();
                write!(f, "slope:{}", dir.join(","))?;
                if tie_break.iter().enumerate().any(|(i, t)| *t != i + 1) {
                    let tb: Vec<String> = tie_break.iter().map(|x| x.to_string()).collect();
                    write!(f, ":{}", tb.join(","))?;
                }
                Ok(())
            }
            OrderingDescriptor::Opposite { inner } => write!(f, "opposite:{inner}"),
            OrderingDescriptor::Conjugate { inner, g } => write!(f, "conj{g}:{inner}"),
        }
    }
}
