//! Affine maps of the line over a quadratic field and the affine
//! representations of `B(1,l)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Ball, Element, Family};
use crate::orderings::{ell_pow, OrderingDescriptor, QuadraticNumber, Side, Sign, SignOracle};

/// `x -> scale * x + offset` with `scale > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: QuadraticNumber,
    pub offset: QuadraticNumber,
}

impl AffineMap {
    pub fn new(scale: QuadraticNumber, offset: QuadraticNumber) -> Result<Self> {
        if scale.signum() != Sign::Positive {
            return Err(Error::Precondition(format!(
                "affine scale {scale} must be positive"
            )));
        }
        scale.checked_add(&offset)?;
        Ok(AffineMap { scale, offset })
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: QuadraticNumber::one(),
            offset: QuadraticNumber::zero(),
        }
    }

    pub fn apply(&self, x: &QuadraticNumber) -> QuadraticNumber {
        &(&self.scale * x) + &self.offset
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            scale: &self.scale * &other.scale,
            offset: &(&self.scale * &other.offset) + &self.offset,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.scale.recip().expect("positive scale");
        AffineMap {
            offset: -(&inv * &self.offset),
            scale: inv,
        }
    }

    pub fn pow(&self, k: i64) -> AffineMap {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = AffineMap::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// `offset / (1 - scale)`, if the map is not a translation.
    pub fn fixed_point(&self) -> Option<QuadraticNumber> {
        let denom = &QuadraticNumber::one() - &self.scale;
        denom.recip().map(|r| &self.offset * &r)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> ({})x + ({})", self.scale, self.offset)
    }
}

/// The representation `a -> (1, alpha)`, `b -> (l, beta)` of `B(1,l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineAction {
    pub ell: u32,
    pub alpha: QuadraticNumber,
    pub beta: QuadraticNumber,
}

/// Builds the affine representation; `alpha = 0` is not faithful.
pub fn bs_affine_rep(
    ell: u32,
    alpha: QuadraticNumber,
    beta: QuadraticNumber,
) -> Result<AffineAction> {
    Family::bs(ell).validate()?;
    if alpha.is_zero() {
        return Err(Error::NonFaithful(
            "alpha = 0 kills the subgroup generated by a".into(),
        ));
    }
    alpha.checked_add(&beta)?;
    Ok(AffineAction { ell, alpha, beta })
}

impl AffineAction {
    /// The action `x -> l^n x + r` read off the normal form.
    pub fn standard(ell: u32) -> AffineAction {
        AffineAction {
            ell,
            alpha: QuadraticNumber::one(),
            beta: QuadraticNumber::zero(),
        }
    }

    pub fn family(&self) -> Family {
        Family::bs(self.ell)
    }

    /// `(r, n) -> x -> l^n x + alpha r + beta (l^n - 1) / (l - 1)`.
    pub fn image(&self, g: &Element) -> AffineMap {
        let Element::Bs(x) = g else {
            panic!(
                "affine action of B(1,{}) applied to {}",
                self.ell,
                g.family()
            )
        };
        debug_assert_eq!(x.r.base(), self.ell);
        let s = ell_pow(self.ell, x.n);
        let geometric =
            (&s - BigRational::one()) / BigRational::from_integer(BigInt::from(self.ell - 1));
        let offset = &self.alpha.scale(&x.r.to_rational()) + &self.beta.scale(&geometric);
        AffineMap {
            scale: QuadraticNumber::rational(s),
            offset,
        }
    }

    pub fn apply(&self, g: &Element, x: &QuadraticNumber) -> QuadraticNumber {
        self.image(g).apply(x)
    }

    /// Ball elements other than the identity acting trivially; empty for a
    /// faithful representation.
    pub fn kernel_in(&self, ball: &Ball) -> Vec<Element> {
        let id = AffineMap::identity();
        ball.iter()
            .filter(|g| !g.is_identity() && self.image(g) == id)
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineRelationReport {
    pub holds: bool,
    pub faithful: bool,
    /// `b a b^-1` and `a^l` as affine maps.
    pub lhs: AffineMap,
    pub rhs: AffineMap,
}

/// Does `a -> (s, alpha)`, `b -> (t, beta)` satisfy `b a b^-1 = a^l`?
/// `faithful` additionally requires `alpha != 0`.
pub fn check_affine_relation(
    ell: u32,
    s: &QuadraticNumber,
    t: &QuadraticNumber,
    alpha: &QuadraticNumber,
    beta: &QuadraticNumber,
) -> Result<AffineRelationReport> {
    Family::bs(ell).validate()?;
    let a = AffineMap::new(s.clone(), alpha.clone())?;
    let b = AffineMap::new(t.clone(), beta.clone())?;
    let lhs = b.compose(&a).compose(&b.inverse());
    let rhs = a.pow(ell as i64);
    let holds = lhs == rhs;
    Ok(AffineRelationReport {
        holds,
        faithful: holds && !alpha.is_zero(),
        lhs,
        rhs,
    })
}

/// Sign of an element under an ordering induced from an action, or
/// `Unresolved` when it fixes every basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InducedSign {
    Negative,
    Zero,
    Positive,
    Unresolved,
}

impl InducedSign {
    pub fn to_sign(self) -> Option<Sign> {
        match self {
            InducedSign::Negative => Some(Sign::Negative),
            InducedSign::Zero => Some(Sign::Zero),
            InducedSign::Positive => Some(Sign::Positive),
            InducedSign::Unresolved => None,
        }
    }
}

/// The ordering induced by an affine action and an ordered list of
/// basepoints: `g` is decided at the first basepoint it moves.
#[derive(Clone, Debug, Serialize)]
pub struct InducedOrdering {
    pub action: AffineAction,
    pub basepoints: Vec<QuadraticNumber>,
}

impl InducedOrdering {
    pub fn new(action: AffineAction, basepoints: Vec<QuadraticNumber>) -> Result<Self> {
        if basepoints.is_empty() {
            return Err(Error::Precondition(
                "induced ordering needs at least one basepoint".into(),
            ));
        }
        for p in &basepoints {
            p.checked_add(&action.alpha)?;
            p.checked_add(&action.beta)?;
        }
        Ok(InducedOrdering { action, basepoints })
    }

    pub fn induced_sign(&self, g: &Element) -> InducedSign {
        if g.is_identity() {
            return InducedSign::Zero;
        }
        let map = self.action.image(g);
        for w in &self.basepoints {
            match (&map.apply(w) - w).signum() {
                Sign::Positive => return InducedSign::Positive,
                Sign::Negative => return InducedSign::Negative,
                Sign::Zero => {}
            }
        }
        InducedSign::Unresolved
    }
}

impl SignOracle for InducedOrdering {
    fn family(&self) -> Family {
        self.action.family()
    }

    /// Unresolved elements report `Zero`.
    fn sign(&self, g: &Element) -> Sign {
        self.induced_sign(g).to_sign().unwrap_or(Sign::Zero)
    }
}

/// Signs on the ball, in scan order.
pub fn induced_ordering(
    action: &AffineAction,
    basepoints: &[QuadraticNumber],
    ball: &Ball,
) -> Result<Vec<InducedSign>> {
    let ind = InducedOrdering::new(action.clone(), basepoints.to_vec())?;
    Ok(ball.iter().map(|g| ind.induced_sign(g)).collect())
}

/// An affine action and basepoints whose induced ordering is the given
/// Smirnov ordering. Limit sides use a second basepoint one unit away, on
/// the side that resolves the stabilizer of `epsilon` the right way.
pub fn smirnov_action(ord: &OrderingDescriptor) -> Result<InducedOrdering> {
    let OrderingDescriptor::Smirnov {
        ell,
        epsilon,
        side,
        opposite,
    } = ord
    else {
        return Err(Error::InvalidDescriptor(format!(
            "{ord} is not a Smirnov ordering"
        )));
    };
    ord.validate()?;
    let sign = if *opposite { -1 } else { 1 };
    let alpha = QuadraticNumber::from_int(sign);
    let base = if *opposite { -epsilon } else { epsilon.clone() };
    let mut basepoints = vec![base.clone()];
    let step = match (side, opposite) {
        (Side::Exact, _) => None,
        (Side::PlusLimit, false) | (Side::MinusLimit, true) => Some(1),
        (Side::PlusLimit, true) | (Side::MinusLimit, false) => Some(-1),
    };
    if let Some(s) = step {
        basepoints.push(base.shift(&BigRational::from_integer(s.into())));
    }
    InducedOrdering::new(
        bs_affine_rep(*ell, alpha, QuadraticNumber::zero())?,
        basepoints,
    )
}
