use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::{AbelianElement, BsElement, CnElement, Element, TararinElement};
use super::lfraction::LFraction;
use crate::error::{Error, Result};

/// Base of the `Z[1/3]` coordinate in `C_n`.
pub const CN_BASE: u32 = 3;

/// One of the four built-in group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `B(1,l) = <a, b | b a b^-1 = a^l>`, as pairs `(r, n)` acting by `x -> l^n x + r`.
    BaumslagSolitar { ell: u32 },
    /// Tararin's group `T_n`: `Z^n` with the sign-twisted product.
    Tararin { n: usize },
    /// `C_n = Z x Z[1/3] x Z^n`.
    Cn { n: usize },
    /// Free abelian `Z^n`.
    Abelian { n: usize },
}

/// A fixed generator of a family. The symmetric generating set of each
/// family consists of these generators and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
    /// `a_i`, 1-based.
    Indexed(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A => write!(f, "a"),
            Generator::B => write!(f, "b"),
            Generator::C => write!(f, "c"),
            Generator::Indexed(i) => write!(f, "a{i}"),
        }
    }
}

impl Family {
    pub fn bs(ell: u32) -> Family {
        Family::BaumslagSolitar { ell }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::BaumslagSolitar { ell } if ell < 2 => {
                Err(Error::InvalidFamily(format!("B(1,{ell}) needs l >= 2")))
            }
            Family::Tararin { n } | Family::Cn { n } | Family::Abelian { n } if n == 0 => {
                Err(Error::InvalidFamily(format!("{self} needs n >= 1")))
            }
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> Element {
        match *self {
            Family::BaumslagSolitar { ell } => Element::Bs(BsElement {
                r: LFraction::zero(ell),
                n: 0,
            }),
            Family::Tararin { n } => Element::Tararin(TararinElement { b: vec![0; n] }),
            Family::Cn { n } => Element::Cn(CnElement {
                c: 0,
                d: LFraction::zero(CN_BASE),
                a: vec![0; n],
            }),
            Family::Abelian { n } => Element::Abelian(AbelianElement { v: vec![0; n] }),
        }
    }

    /// The named generators, in the fixed order used for words and balls.
    pub fn generators(&self) -> Vec<Generator> {
        match *self {
            Family::BaumslagSolitar { .. } => vec![Generator::A, Generator::B],
            Family::Tararin { n } | Family::Abelian { n } => {
                (1..=n).map(Generator::Indexed).collect()
            }
            Family::Cn { n } => {
                let mut gens = vec![Generator::C, Generator::B];
                gens.extend((1..=n).map(Generator::Indexed));
                gens
            }
        }
    }

    /// The symmetric generating set `{s, s^-1}` used for word metrics.
    pub fn symmetric_generators(&self) -> Vec<Element> {
        self.generators()
            .into_iter()
            .flat_map(|g| {
                let e = self.generator(g).expect("listed generator");
                let inv = e.inv();
                [e, inv]
            })
            .collect()
    }

    pub fn generator(&self, generator: Generator) -> Result<Element> {
        let unknown = || Error::UnknownGenerator {
            family: *self,
            generator: generator.to_string(),
        };
        match (*self, generator) {
            (Family::BaumslagSolitar { ell }, Generator::A) => Ok(Element::Bs(BsElement {
                r: LFraction::from_int(1, ell),
                n: 0,
            })),
            (Family::BaumslagSolitar { ell }, Generator::B) => Ok(Element::Bs(BsElement {
                r: LFraction::zero(ell),
                n: 1,
            })),
            (Family::Tararin { n }, Generator::Indexed(i)) if (1..=n).contains(&i) => {
                let mut b = vec![0; n];
                b[n - i] = 1;
                Ok(Element::Tararin(TararinElement { b }))
            }
            (Family::Abelian { n }, Generator::Indexed(i)) if (1..=n).contains(&i) => {
                let mut v = vec![0; n];
                v[i - 1] = 1;
                Ok(Element::Abelian(AbelianElement { v }))
            }
            (Family::Cn { n }, Generator::C) => Ok(Element::Cn(CnElement {
                c: 1,
                d: LFraction::zero(CN_BASE),
                a: vec![0; n],
            })),
            (Family::Cn { n }, Generator::B) => Ok(Element::Cn(CnElement {
                c: 0,
                d: LFraction::from_int(1, CN_BASE),
                a: vec![0; n],
            })),
            (Family::Cn { n }, Generator::Indexed(i)) if (1..=n).contains(&i) => {
                let mut a = vec![0; n];
                a[n - i] = 1;
                Ok(Element::Cn(CnElement {
                    c: 0,
                    d: LFraction::zero(CN_BASE),
                    a,
                }))
            }
            _ => Err(unknown()),
        }
    }

    /// Resolves a generator name from the word grammar (`a`, `b`, `c`, `a1`..`an`).
    pub fn parse_generator(&self, name: &str) -> Result<Generator> {
        let g = match name {
            "a" => match *self {
                Family::BaumslagSolitar { .. } => Generator::A,
                Family::Tararin { n: 1 } | Family::Abelian { n: 1 } => Generator::Indexed(1),
                _ => Generator::A,
            },
            "b" => Generator::B,
            "c" => Generator::C,
            other => match other
                .strip_prefix('a')
                .and_then(|s| s.parse::<usize>().ok())
            {
                Some(i) => Generator::Indexed(i),
                None => {
                    return Err(Error::UnknownGenerator {
                        family: *self,
                        generator: name.to_string(),
                    })
                }
            },
        };
        self.generator(g)
            .map(|_| g)
            .map_err(|_| Error::UnknownGenerator {
                family: *self,
                generator: name.to_string(),
            })
    }

    pub fn contains(&self, g: &Element) -> bool {
        g.family() == *self
    }

    pub fn check(&self, g: &Element) -> Result<()> {
        let found = g.family();
        if found == *self {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                expected: *self,
                found,
            })
        }
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(g.mul(h))
    }

    pub fn invert(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        Ok(g.inv())
    }

    /// Number of levels of the canonical rational series
    /// `{id} = G_0 < G_1 < ... < G_len = G`.
    pub fn series_length(&self) -> usize {
        match *self {
            Family::BaumslagSolitar { .. } => 2,
            Family::Tararin { n } | Family::Abelian { n } => n,
            Family::Cn { n } => n + 2,
        }
    }

    /// The generator spanning the quotient `G_level / G_{level-1}` of the
    /// canonical series (1-based level).
    pub fn level_generator(&self, level: usize) -> Option<Generator> {
        if level == 0 || level > self.series_length() {
            return None;
        }
        Some(match *self {
            Family::BaumslagSolitar { .. } => {
                if level == 1 {
                    Generator::A
                } else {
                    Generator::B
                }
            }
            Family::Tararin { .. } | Family::Abelian { .. } => Generator::Indexed(level),
            Family::Cn { n } => {
                if level <= n {
                    Generator::Indexed(level)
                } else if level == n + 1 {
                    Generator::B
                } else {
                    Generator::C
                }
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::BaumslagSolitar { ell } => write!(f, "bs:{ell}"),
            Family::Tararin { n } => write!(f, "tararin:{n}"),
            Family::Cn { n } => write!(f, "cn:{n}"),
            Family::Abelian { n } => write!(f, "abelian:{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let (name, param) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidFamily(format!("`{s}`: expected name:parameter")))?;
        let param: u32 = param
            .trim()
            .parse()
            .map_err(|_| Error::InvalidFamily(format!("`{s}`: bad parameter")))?;
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "bs" | "b" | "baumslag-solitar" => Family::BaumslagSolitar { ell: param },
            "tararin" | "t" => Family::Tararin { n: param as usize },
            "cn" | "c" => Family::Cn { n: param as usize },
            "abelian" | "z" => Family::Abelian { n: param as usize },
            other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        };
        family.validate()?;
        Ok(family)
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_strings_round_trip() {
        for f in [
            Family::bs(2),
            Family::bs(3),
            Family::Tararin { n: 3 },
            Family::Cn { n: 3 },
            Family::Abelian { n: 2 },
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("bs:1".parse::<Family>().is_err());
        assert!("tararin:0".parse::<Family>().is_err());
        assert!("free:2".parse::<Family>().is_err());
    }

    #[test]
    fn generator_names() {
        let f = Family::Cn { n: 3 };
        assert_eq!(f.parse_generator("a3").unwrap(), Generator::Indexed(3));
        assert!(f.parse_generator("a4").is_err());
        assert!(f.parse_generator("a").is_err());
        assert_eq!(
            Family::Abelian { n: 1 }.parse_generator("a").unwrap(),
            Generator::Indexed(1)
        );
        assert!(Family::bs(2).parse_generator("c").is_err());
    }

    #[test]
    fn symmetric_generating_sets() {
        assert_eq!(Family::bs(2).symmetric_generators().len(), 4);
        assert_eq!(Family::Tararin { n: 4 }.symmetric_generators().len(), 8);
        assert_eq!(Family::Cn { n: 3 }.symmetric_generators().len(), 10);
    }
}
