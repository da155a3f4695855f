//! Words over a family's generators. Input grammar: whitespace separated
//! tokens `gen^exp` (exponent optional, default 1). The tokens `id`, `1`
//! and `e` stand for the empty word.

use std::fmt;

use super::element::Element;
use super::family::{Family, Generator};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    pub letters: Vec<(Generator, i64)>,
}

impl Word {
    pub fn new(letters: Vec<(Generator, i64)>) -> Self {
        Word { letters }
    }

    pub fn parse(family: &Family, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if matches!(token, "id" | "1" | "e") {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            letters.push((family.parse_generator(name)?, exp));
        }
        Ok(Word { letters })
    }

    /// Left-to-right product of generator powers.
    pub fn eval(&self, family: &Family) -> Result<Element> {
        let mut acc = family.identity();
        for (g, exp) in &self.letters {
            let e = family.generator(*g)?;
            acc = acc.mul(&e.pow(*exp));
        }
        Ok(acc)
    }

    /// Sum of absolute exponents; an upper bound for the word length of the value.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses and evaluates in one step.
pub fn eval_word(family: &Family, text: &str) -> Result<Element> {
    Word::parse(family, text)?.eval(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{BsElement, LFraction};
    use num_bigint::BigInt;

    fn bs(num: i64, k: u32, n: i64) -> Element {
        Element::Bs(BsElement {
            r: LFraction::new(BigInt::from(num), k, 2),
            n,
        })
    }

    #[test]
    fn bs_words() {
        let f = Family::bs(2);
        assert_eq!(eval_word(&f, "b^-1 a^2").unwrap(), bs(1, 0, -1));
        assert_eq!(eval_word(&f, "").unwrap(), f.identity());
        assert_eq!(eval_word(&f, "id").unwrap(), f.identity());
        assert_eq!(eval_word(&f, "b^-2 a^5 b^-1").unwrap(), bs(5, 2, -3));
    }

    #[test]
    fn affine_composition_oracle() {
        // b^-2 a^5 b^-1 as x -> x/4, then x -> x + 5, then x -> x/2, composed
        // left to right as maps: x -> (1/4)((x/2) + 5) = x/8 + 5/4.
        let f = Family::bs(2);
        let g = eval_word(&f, "b^-2 a^5 b^-1").unwrap();
        if let Element::Bs(x) = g {
            assert_eq!(x.n, -3);
            assert_eq!(x.r, LFraction::new(5.into(), 2, 2));
        } else {
            unreachable!()
        }
    }

    #[test]
    fn errors() {
        let f = Family::bs(2);
        assert!(matches!(
            Word::parse(&f, "c"),
            Err(Error::UnknownGenerator { .. })
        ));
        assert!(matches!(Word::parse(&f, "a^x"), Err(Error::Parse(_))));
        let t = Family::Tararin { n: 2 };
        assert!(Word::parse(&t, "a3").is_err());
        assert!(Word::parse(&t, "a1^-1 a2^(2)").is_ok());
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let f = Family::Cn { n: 3 };
        let w1 = Word::parse(&f, "c b^2 a3 a1^-1").unwrap();
        let w2 = Word::parse(&f, "b^-1 c^-2 a2 a3^3").unwrap();
        let lhs = w1.concat(&w2).eval(&f).unwrap();
        let rhs = w1.eval(&f).unwrap().mul(&w2.eval(&f).unwrap());
        assert_eq!(lhs, rhs);
        assert!(w1.concat(&w1.inverse()).eval(&f).unwrap().is_identity());
    }

    #[test]
    fn display_round_trip() {
        let f = Family::Cn { n: 2 };
        let w = Word::parse(&f, "c b^-3 a2 a1^2").unwrap();
        assert_eq!(w.to_string(), "c b^-3 a2 a1^2");
        assert_eq!(Word::parse(&f, &w.to_string()).unwrap(), w);
    }
}
