use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::family::{Family, CN_BASE};
use super::lfraction::LFraction;
use crate::error::Error;
use crate::orderings::Sign;

/// `(r, n)` in `B(1,l)`, the affine map `x -> l^n x + r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BsElement {
    pub r: LFraction,
    pub n: i64,
}

/// Element of `T_n`, coordinates listed as `(b_n, ..., b_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TararinElement {
    pub b: Vec<i64>,
}

/// Element `(c, d, a_n, ..., a_1)` of `C_n`; `d` lives in `Z[1/3]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnElement {
    pub c: i64,
    pub d: LFraction,
    pub a: Vec<i64>,
}

/// Element of `Z^n`, coordinates `(v_1, ..., v_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElement {
    pub v: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub enum Element {
    Bs(BsElement),
    Tararin(TararinElement),
    Cn(CnElement),
    Abelian(AbelianElement),
}

fn parity_sign(odd: bool, x: i64) -> i64 {
    if odd {
        -x
    } else {
        x
    }
}

fn add(x: i64, y: i64) -> i64 {
    x.checked_add(y).expect("lattice coordinate overflow")
}

impl BsElement {
    fn mul(&self, other: &BsElement) -> BsElement {
        BsElement {
            r: self.r.add(&other.r.scale_pow(self.n)),
            n: add(self.n, other.n),
        }
    }

    fn inv(&self) -> BsElement {
        BsElement {
            r: self.r.scale_pow(-self.n).neg(),
            n: -self.n,
        }
    }
}

impl TararinElement {
    // (b_n..b_1)(b'_n..b'_1) = (b_n + b'_n, (-1)^{b'_n} b_{n-1} + b'_{n-1}, ..., (-1)^{b'_2} b_1 + b'_1)
    fn mul(&self, other: &TararinElement) -> TararinElement {
        let x = &self.b;
        let y = &other.b;
        let mut out = Vec::with_capacity(x.len());
        for j in 0..x.len() {
            let twisted = if j == 0 {
                x[0]
            } else {
                parity_sign(y[j - 1] & 1 == 1, x[j])
            };
            out.push(add(twisted, y[j]));
        }
        TararinElement { b: out }
    }

    fn inv(&self) -> TararinElement {
        let x = &self.b;
        let mut y: Vec<i64> = Vec::with_capacity(x.len());
        for j in 0..x.len() {
            let v = if j == 0 {
                -x[0]
            } else {
                -parity_sign(y[j - 1] & 1 == 1, x[j])
            };
            y.push(v);
        }
        TararinElement { b: y }
    }
}

impl CnElement {
    // (c, d, a)(c', d', a') = (c + c', 3^c d' + d, (-1)^m a'_n + a_n, (-1)^{a_n} a'_{n-1} + a_{n-1}, ...)
    // with m the numerator of d.
    fn mul(&self, other: &CnElement) -> CnElement {
        let x = &self.a;
        let y = &other.a;
        let mut out = Vec::with_capacity(x.len());
        for j in 0..x.len() {
            let odd = if j == 0 {
                self.d.numerator_is_odd()
            } else {
                x[j - 1] & 1 == 1
            };
            out.push(add(parity_sign(odd, y[j]), x[j]));
        }
        CnElement {
            c: add(self.c, other.c),
            d: other.d.scale_pow(self.c).add(&self.d),
            a: out,
        }
    }

    fn inv(&self) -> CnElement {
        let x = &self.a;
        let mut y = Vec::with_capacity(x.len());
        for j in 0..x.len() {
            let odd = if j == 0 {
                self.d.numerator_is_odd()
            } else {
                x[j - 1] & 1 == 1
            };
            y.push(-parity_sign(odd, x[j]));
        }
        CnElement {
            c: -self.c,
            d: self.d.scale_pow(-self.c).neg(),
            a: y,
        }
    }
}

fn signum(x: i64) -> Sign {
    match x.cmp(&0) {
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
        Ordering::Greater => Sign::Positive,
    }
}

fn lf_sign(x: &LFraction) -> Sign {
    signum(x.signum() as i64)
}

impl Element {
    pub fn family(&self) -> Family {
        match self {
            Element::Bs(e) => Family::BaumslagSolitar { ell: e.r.base() },
            Element::Tararin(e) => Family::Tararin { n: e.b.len() },
            Element::Cn(e) => Family::Cn { n: e.a.len() },
            Element::Abelian(e) => Family::Abelian { n: e.v.len() },
        }
    }

    /// Group product. Panics when the elements come from different
    /// families; use [`Family::multiply`] for checked input.
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Bs(x), Element::Bs(y)) if x.r.base() == y.r.base() => Element::Bs(x.mul(y)),
            (Element::Tararin(x), Element::Tararin(y)) if x.b.len() == y.b.len() => {
                Element::Tararin(x.mul(y))
            }
            (Element::Cn(x), Element::Cn(y)) if x.a.len() == y.a.len() => Element::Cn(x.mul(y)),
            (Element::Abelian(x), Element::Abelian(y)) if x.v.len() == y.v.len() => {
                Element::Abelian(AbelianElement {
                    v: x.v.iter().zip(&y.v).map(|(a, b)| add(*a, *b)).collect(),
                })
            }
            _ => panic!(
                "product of elements from {} and {}",
                self.family(),
                other.family()
            ),
        }
    }

    pub fn inv(&self) -> Element {
        match self {
            Element::Bs(x) => Element::Bs(x.inv()),
            Element::Tararin(x) => Element::Tararin(x.inv()),
            Element::Cn(x) => Element::Cn(x.inv()),
            Element::Abelian(x) => Element::Abelian(AbelianElement {
                v: x.v.iter().map(|a| -a).collect(),
            }),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: i64) -> Element {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.family().identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `g^-1 h g`
    pub fn conjugate_by(&self, g: &Element) -> Element {
        g.inv().mul(self).mul(g)
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Bs(x) => x.n == 0 && x.r.is_zero(),
            Element::Tararin(x) => x.b.iter().all(|v| *v == 0),
            Element::Cn(x) => x.c == 0 && x.d.is_zero() && x.a.iter().all(|v| *v == 0),
            Element::Abelian(x) => x.v.iter().all(|v| *v == 0),
        }
    }

    /// Position in the canonical rational series together with the sign of
    /// the coordinate spanning that quotient: `(0, Zero)` for the identity,
    /// otherwise `(i, s)` with `g` in `G_i \ G_{i-1}`.
    pub fn series_level(&self) -> (usize, Sign) {
        match self {
            Element::Bs(x) => {
                if x.n != 0 {
                    (2, signum(x.n))
                } else if !x.r.is_zero() {
                    (1, lf_sign(&x.r))
                } else {
                    (0, Sign::Zero)
                }
            }
            Element::Tararin(x) => top_of(&x.b, true),
            Element::Cn(x) => {
                let n = x.a.len();
                if x.c != 0 {
                    (n + 2, signum(x.c))
                } else if !x.d.is_zero() {
                    (n + 1, lf_sign(&x.d))
                } else {
                    top_of(&x.a, true)
                }
            }
            Element::Abelian(x) => top_of(&x.v, false),
        }
    }

    /// The coordinate of the top quotient of the canonical series; additive
    /// on the whole group.
    pub fn top_coordinate(&self) -> i64 {
        match self {
            Element::Bs(x) => x.n,
            Element::Tararin(x) => x.b[0],
            Element::Cn(x) => x.c,
            Element::Abelian(x) => *x.v.last().expect("n >= 1"),
        }
    }
}

/// Highest nonzero coordinate. `descending` storage lists the top level first.
fn top_of(coords: &[i64], descending: bool) -> (usize, Sign) {
    let n = coords.len();
    if descending {
        for (j, v) in coords.iter().enumerate() {
            if *v != 0 {
                return (n - j, signum(*v));
            }
        }
    } else {
        for (j, v) in coords.iter().enumerate().rev() {
            if *v != 0 {
                return (j + 1, signum(*v));
            }
        }
    }
    (0, Sign::Zero)
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialization order: a fixed total order on normal forms, used to break
/// ties between elements of equal word length.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Bs(x), Element::Bs(y)) => {
                x.r.base()
                    .cmp(&y.r.base())
                    .then(x.n.cmp(&y.n))
                    .then_with(|| x.r.cmp(&y.r))
            }
            (Element::Tararin(x), Element::Tararin(y)) => x.cmp(y),
            (Element::Cn(x), Element::Cn(y)) => {
                x.a.len()
                    .cmp(&y.a.len())
                    .then(x.c.cmp(&y.c))
                    .then_with(|| x.d.cmp(&y.d))
                    .then_with(|| x.a.cmp(&y.a))
            }
            (Element::Abelian(x), Element::Abelian(y)) => x.cmp(y),
            _ => self.family().cmp(&other.family()),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Element::Bs(x) => write!(f, "({},{})", x.r, x.n),
            Element::Tararin(x) => write!(f, "({})", join(&x.b)),
            Element::Cn(x) => write!(f, "({},{};{})", x.c, x.d, join(&x.a)),
            Element::Abelian(x) => write!(f, "({})", join(&x.v)),
        }
    }
}

/// JSON integer when it fits in `i64`, decimal string otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Small(i64),
    Text(String),
}

impl IntRepr {
    pub(crate) fn from_big(v: &BigInt) -> IntRepr {
        match v.to_i64() {
            Some(s) => IntRepr::Small(s),
            None => IntRepr::Text(v.to_string()),
        }
    }

    pub(crate) fn to_big(&self) -> Result<BigInt, Error> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Text(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct LFractionRepr {
    num: IntRepr,
    k: u32,
}

impl LFractionRepr {
    fn from_lf(x: &LFraction) -> Self {
        LFractionRepr {
            num: IntRepr::from_big(&x.numerator()),
            k: x.exponent(),
        }
    }

    fn to_lf(&self, base: u32) -> Result<LFraction, Error> {
        Ok(LFraction::new(self.num.to_big()?, self.k, base))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family")]
pub(crate) enum ElementRepr {
    #[serde(rename = "BS")]
    Bs {
        ell: u32,
        r: LFractionRepr,
        n: i64,
    },
    Tararin {
        b: Vec<i64>,
    },
    Cn {
        c: i64,
        d: LFractionRepr,
        a: Vec<i64>,
    },
    Abelian {
        v: Vec<i64>,
    },
}

impl From<Element> for ElementRepr {
    fn from(e: Element) -> Self {
        match e {
            Element::Bs(x) => ElementRepr::Bs {
                ell: x.r.base(),
                r: LFractionRepr::from_lf(&x.r),
                n: x.n,
            },
            Element::Tararin(x) => ElementRepr::Tararin { b: x.b },
            Element::Cn(x) => ElementRepr::Cn {
                c: x.c,
                d: LFractionRepr::from_lf(&x.d),
                a: x.a,
            },
            Element::Abelian(x) => ElementRepr::Abelian { v: x.v },
        }
    }
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;

    fn try_from(r: ElementRepr) -> Result<Self, Error> {
        let empty = |v: &Vec<i64>| {
            if v.is_empty() {
                Err(Error::Parse("element needs at least one coordinate".into()))
            } else {
                Ok(())
            }
        };
        Ok(match r {
            ElementRepr::Bs { ell, r, n } => {
                Family::bs(ell).validate()?;
                Element::Bs(BsElement {
                    r: r.to_lf(ell)?,
                    n,
                })
            }
            ElementRepr::Tararin { b } => {
                empty(&b)?;
                Element::Tararin(TararinElement { b })
            }
            ElementRepr::Cn { c, d, a } => {
                empty(&a)?;
                Element::Cn(CnElement {
                    c,
                    d: d.to_lf(CN_BASE)?,
                    a,
                })
            }
            ElementRepr::Abelian { v } => {
                empty(&v)?;
                Element::Abelian(AbelianElement { v })
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn bs(num: i64, k: u32, n: i64) -> Element {
        Element::Bs(BsElement {
            r: LFraction::new(num.into(), k, 2),
            n,
        })
    }

    fn t(b: &[i64]) -> Element {
        Element::Tararin(TararinElement { b: b.to_vec() })
    }

    #[test]
    fn bs_relation_and_squares() {
        let a = bs(1, 0, 0);
        let b = bs(0, 0, 1);
        assert_eq!(a.mul(&a), bs(2, 0, 0));
        assert_eq!(b.mul(&a).mul(&b.inv()), bs(2, 0, 0));
    }

    #[test]
    fn bs_inverse_examples() {
        assert_eq!(bs(1, 0, -1).inv(), bs(-2, 0, 1));
        let id = Family::bs(2).identity();
        assert_eq!(id.inv(), id);
    }

    #[test]
    fn tararin_relation_and_inverse() {
        let a2 = t(&[1, 0]);
        let a1 = t(&[0, 1]);
        assert_eq!(a2.mul(&a1).mul(&a2.inv()), t(&[0, -1]));
        assert_eq!(t(&[1, 1]).inv(), t(&[-1, 1]));
    }

    #[test]
    fn tararin_inverse_by_search() {
        // Brute force: the unique x with (1,1) x = (0,0) in a small box.
        let g = t(&[1, 1]);
        let mut found = vec![];
        for x in -3..=3 {
            for y in -3..=3 {
                if g.mul(&t(&[x, y])).is_identity() {
                    found.push((x, y));
                }
            }
        }
        assert_eq!(found, vec![(-1, 1)]);
    }

    #[test]
    fn cn_well_defined_on_representatives() {
        // d = 2/3 given as 6/9 yields the same product.
        let x = Element::Cn(CnElement {
            c: 1,
            d: LFraction::new(2.into(), 1, 3),
            a: vec![1, 0, 1],
        });
        let x2 = Element::Cn(CnElement {
            c: 1,
            d: LFraction::new(6.into(), 2, 3),
            a: vec![1, 0, 1],
        });
        let y = Element::Cn(CnElement {
            c: -1,
            d: LFraction::from_int(1, 3),
            a: vec![1, 1, 0],
        });
        assert_eq!(x.mul(&y), x2.mul(&y));
        assert_eq!(y.mul(&x), y.mul(&x2));
    }

    #[test]
    fn series_levels() {
        assert_eq!(bs(3, 1, 0).series_level(), (1, Sign::Positive));
        assert_eq!(bs(-3, 1, -2).series_level(), (2, Sign::Negative));
        assert_eq!(t(&[0, -2, 5]).series_level(), (2, Sign::Negative));
        let ab = Element::Abelian(AbelianElement { v: vec![3, -1] });
        assert_eq!(ab.series_level(), (2, Sign::Negative));
        assert_eq!(
            Family::Cn { n: 2 }.identity().series_level(),
            (0, Sign::Zero)
        );
    }

    #[test]
    fn json_shape() {
        let g = bs(5, 2, -3);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"family":"BS","ell":2,"r":{"num":5,"k":2},"n":-3}"#);
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        // Unnormalized input is reduced on the way in.
        let un: Element =
            serde_json::from_str(r#"{"family":"BS","ell":2,"r":{"num":10,"k":3},"n":0}"#).unwrap();
        assert_eq!(un, bs(5, 2, 0));
        let big: Element = serde_json::from_str(
            r#"{"family":"BS","ell":2,"r":{"num":"123456789012345678901234567890","k":0},"n":0}"#,
        )
        .unwrap();
        if let Element::Bs(x) = &big {
            assert_eq!(
                x.r.to_rational(),
                BigRational::from_integer("123456789012345678901234567890".parse().unwrap())
            );
        }
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let g = bs(3, 1, 1);
        let mut acc = Family::bs(2).identity();
        for k in 0..6 {
            assert_eq!(g.pow(k), acc);
            assert_eq!(g.pow(-k), acc.inv());
            acc = acc.mul(&g);
        }
    }
}
