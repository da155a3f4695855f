//! Exact numbers `p + q sqrt(d)` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sign::Sign;
use crate::error::{Error, Result};

/// `p + q sqrt(d)` with `d` square-free. Rationals are stored with `q = 0`
/// and `d = 0`, so every value has exactly one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadraticRepr", into = "QuadraticRepr")]
pub struct QuadraticNumber {
    p: BigRational,
    q: BigRational,
    d: u64,
}

/// Splits `d = s^2 * f` with `f` square-free.
fn square_free(mut d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut k = 2u64;
    while k * k <= d {
        while d % (k * k) == 0 {
            d /= k * k;
            s *= k;
        }
        if d % k == 0 {
            d /= k;
            f *= k;
        }
        k += 1;
    }
    (s, f * d)
}

/// Exact sign of `p + q sqrt(d)`.
pub(crate) fn sign_pq(p: &BigRational, q: &BigRational, d: u64) -> Sign {
    let sp = p.signum();
    let sq = q.signum();
    let to_sign = |x: &BigRational| Sign::from_ordering(x.cmp(&BigRational::zero()));
    if q.is_zero() || d == 0 {
        return to_sign(&sp);
    }
    if p.is_zero() || sp == sq {
        return to_sign(&sq);
    }
    let lhs = p * p;
    let rhs = q * q * BigRational::from_integer(BigInt::from(d));
    match lhs.cmp(&rhs) {
        Ordering::Greater => to_sign(&sp),
        Ordering::Less => to_sign(&sq),
        Ordering::Equal => Sign::Zero,
    }
}

impl QuadraticNumber {
    /// `p + q sqrt(d)`, normalized.
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Self {
        if q.is_zero() || d == 0 {
            return QuadraticNumber {
                p,
                q: BigRational::zero(),
                d: 0,
            };
        }
        let (s, f) = square_free(d);
        let q = q * BigRational::from_integer(BigInt::from(s));
        if f == 1 {
            QuadraticNumber {
                p: p + q,
                q: BigRational::zero(),
                d: 0,
            }
        } else {
            QuadraticNumber { p, q, d: f }
        }
    }

    pub fn zero() -> Self {
        QuadraticNumber::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        QuadraticNumber::from_int(1)
    }

    pub fn rational(p: BigRational) -> Self {
        QuadraticNumber {
            p,
            q: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        QuadraticNumber::rational(BigRational::from_integer(v.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QuadraticNumber::rational(BigRational::new(num.into(), den.into()))
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: u64) -> Self {
        QuadraticNumber::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    /// Square-free radicand, `0` for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_irrational(&self) -> bool {
        !self.is_rational()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.p.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.p.is_zero()
    }

    pub fn signum(&self) -> Sign {
        sign_pq(&self.p, &self.q, self.d)
    }

    /// The field both operands live in, if they share one.
    fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::IncompatibleFields(a, b)),
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.common_field(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(QuadraticNumber::new(
            &self.p + &other.p,
            &self.q + &other.q,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let p = &self.p * &other.p + &self.q * &other.q * dd;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(QuadraticNumber::new(p, q, d))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (p + q sqrt d)^-1 = (p - q sqrt d) / (p^2 - q^2 d)
        let norm =
            &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(BigInt::from(self.d));
        Some(QuadraticNumber::new(
            &self.p / &norm,
            -&self.q / &norm,
            self.d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other
            .recip()
            .ok_or_else(|| Error::Precondition("division by zero".into()))?;
        self.checked_mul(&inv)
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().to_ordering())
    }

    /// Product with a rational.
    pub fn scale(&self, factor: &BigRational) -> Self {
        QuadraticNumber::new(&self.p * factor, &self.q * factor, self.d)
    }

    /// Sum with a rational.
    pub fn shift(&self, offset: &BigRational) -> Self {
        QuadraticNumber {
            p: &self.p + offset,
            q: self.q.clone(),
            d: self.d,
        }
    }

    fn neg_ref(&self) -> Self {
        QuadraticNumber {
            p: -&self.p,
            q: -&self.q,
            d: self.d,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Sign::Negative {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let mut k = self.p.floor().to_integer();
        if !self.q.is_zero() {
            // |q| sqrt d = sqrt(a^2 d) / b for q = a / b.
            let a = self.q.numer().abs();
            let b = self.q.denom();
            let root = (&a * &a * BigInt::from(self.d)).sqrt() / b;
            if self.q.is_positive() {
                k += root;
            } else {
                k -= root + 1;
            }
        }
        // The estimate is off by at most one or two; settle exactly.
        loop {
            let kq = QuadraticNumber::rational(BigRational::from_integer(k.clone()));
            if self.cmp(&kq) == Ordering::Less {
                k -= 1;
                continue;
            }
            let k1 = QuadraticNumber::rational(BigRational::from_integer(&k + 1));
            if self.cmp(&k1) != Ordering::Less {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// Midpoint `(x + y) / 2`.
    pub fn midpoint(&self, other: &Self) -> Self {
        (self + other).scale(&BigRational::new(1.into(), 2.into()))
    }
}

impl Ord for QuadraticNumber {
    /// Panics on operands from different fields; see [`QuadraticNumber::checked_cmp`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other)
            .expect("comparison across quadratic fields")
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;

            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs)
                    .expect("arithmetic across quadratic fields")
            }
        }

        impl $trait<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;

            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        self.neg_ref()
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        self.neg_ref()
    }
}

impl From<BigRational> for QuadraticNumber {
    fn from(p: BigRational) -> Self {
        QuadraticNumber::rational(p)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(v: i64) -> Self {
        QuadraticNumber::from_int(v)
    }
}

impl fmt::Display for QuadraticNumber {
    /// Output re-parses: `3/4`, `sqrt2`, `1+sqrt2`, `-1/2*sqrt3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        if !self.p.is_zero() {
            write!(f, "{}", self.p)?;
            if self.q.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.q == BigRational::one() {
            write!(f, "sqrt{}", self.d)
        } else if self.q == -BigRational::one() {
            write!(f, "-sqrt{}", self.d)
        } else {
            write!(f, "{}*sqrt{}", self.q, self.d)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let r: BigRational = s.parse().map_err(|_| bad())?;
    Ok(r)
}

/// One summand: a rational, or `[coef*]sqrtD[/den]` with `sqrt(D)` also accepted.
fn parse_term(term: &str) -> Result<QuadraticNumber> {
    let Some(pos) = term.find("sqrt") else {
        return Ok(QuadraticNumber::rational(parse_rational(term)?));
    };
    let coef = &term[..pos];
    let coef = match coef.strip_suffix('*').unwrap_or(coef) {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rational(c)?,
    };
    let rest = &term[pos + 4..];
    let (radicand, den) = match rest.split_once('/') {
        Some((r, den)) => (r, parse_rational(den)?),
        None => (rest, BigRational::one()),
    };
    let radicand = radicand.trim_start_matches('(').trim_end_matches(')');
    let d: u64 = radicand
        .parse()
        .map_err(|_| Error::Parse(format!("bad radicand in `{term}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{term}`")));
    }
    Ok(QuadraticNumber::new(BigRational::zero(), coef / den, d))
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        // Split into signed summands at `+`/`-` that do not start the string.
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if i > start && (ch == '+' || ch == '-') && !s[..i].ends_with('*') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = QuadraticNumber::zero();
        for t in terms {
            let t = t.strip_prefix('+').unwrap_or(t);
            acc = acc.checked_add(&parse_term(t)?)?;
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    p: String,
    q: String,
    d: u64,
}

impl From<QuadraticNumber> for QuadraticRepr {
    fn from(x: QuadraticNumber) -> Self {
        QuadraticRepr {
            p: x.p.to_string(),
            q: x.q.to_string(),
            d: x.d,
        }
    }
}

impl TryFrom<QuadraticRepr> for QuadraticNumber {
    type Error = Error;

    fn try_from(r: QuadraticRepr) -> Result<Self> {
        Ok(QuadraticNumber::new(
            parse_rational(&r.p)?,
            parse_rational(&r.q)?,
            r.d,
        ))
    }
}
