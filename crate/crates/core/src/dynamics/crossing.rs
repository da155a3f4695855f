//! Crossings `(f, g, u, v, w)` for actions on ordered sets: certificates,
//! construction from Conradian witnesses, verification and search.
//!
//! A crossing satisfies
//! i) `u < w < v`;
//! ii) `g^n u < v` and `f^n v > u` for every `n >= 1`;
//! iii) `f^N v < w < g^M u` for some `M, N >= 1`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::affine::{AffineAction, AffineMap};
use crate::conradian::ConradWitness;
use crate::error::{Error, Result};
use crate::groups::{Ball, Element, Family};
use crate::orderings::{compare, OrderingDescriptor, QuadraticNumber, Sign};

/// Default bound on orbit lengths outside the exact affine setting.
pub const DEFAULT_N_MAX: u32 = 64;

/// Iteration limit when searching for the exponents of condition iii.
const EXPONENT_SEARCH_LIMIT: u32 = 1 << 16;

/// An action of a built-in group on a totally ordered set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Action {
    /// Affine action of `B(1,l)` on a quadratic field.
    Affine(AffineAction),
    /// Left translation of the group on itself, ordered by `ordering`. The
    /// orbit of the identity is order-isomorphic to the dynamical
    /// realization of the ordering.
    LeftTranslation { ordering: OrderingDescriptor },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingPoint {
    Real(QuadraticNumber),
    Element(Element),
}

impl std::fmt::Display for CrossingPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CrossingPoint::Real(x) => write!(f, "{x}"),
            CrossingPoint::Element(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossingMode {
    /// Condition ii decided for all `n` by fixed-point analysis.
    AffineExact,
    /// Condition ii checked for `n <= n_max` only.
    Bounded { n_max: u32 },
}

/// Supremum or infimum of a forward orbit `{h^n x : n >= 1}`.
#[derive(Clone, Debug, PartialEq)]
enum Extent {
    Finite {
        value: CrossingPoint,
        attained: bool,
    },
    Unbounded,
}

impl Action {
    pub fn realization(ordering: OrderingDescriptor) -> Action {
        Action::LeftTranslation { ordering }
    }

    pub fn family(&self) -> Family {
        match self {
            Action::Affine(a) => a.family(),
            Action::LeftTranslation { ordering } => ordering.family(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Action::Affine(a) => {
                a.family().validate()?;
                if a.alpha.is_zero() {
                    return Err(Error::NonFaithful("alpha = 0".into()));
                }
                a.alpha.checked_add(&a.beta).map(|_| ())
            }
            Action::LeftTranslation { ordering } => ordering.validate(),
        }
    }

    fn check_point(&self, x: &CrossingPoint) -> Result<()> {
        match (self, x) {
            (Action::Affine(a), CrossingPoint::Real(p)) => {
                p.checked_add(&a.alpha)?;
                p.checked_add(&a.beta).map(|_| ())
            }
            (Action::LeftTranslation { ordering }, CrossingPoint::Element(g)) => {
                ordering.family().check(g)
            }
            _ => Err(Error::MalformedCertificate(format!(
                "point {x} does not belong to the action"
            ))),
        }
    }

    pub fn act(&self, g: &Element, x: &CrossingPoint) -> CrossingPoint {
        match (self, x) {
            (Action::Affine(a), CrossingPoint::Real(p)) => CrossingPoint::Real(a.apply(g, p)),
            (Action::LeftTranslation { .. }, CrossingPoint::Element(h)) => {
                CrossingPoint::Element(g.mul(h))
            }
            _ => panic!("point kind does not match the action"),
        }
    }

    pub fn cmp_points(&self, x: &CrossingPoint, y: &CrossingPoint) -> Ordering {
        match (self, x, y) {
            (Action::Affine(_), CrossingPoint::Real(p), CrossingPoint::Real(q)) => p.cmp(q),
            (
                Action::LeftTranslation { ordering },
                CrossingPoint::Element(g),
                CrossingPoint::Element(h),
            ) => compare(ordering, g, h),
            _ => panic!("point kind does not match the action"),
        }
    }

    fn lt(&self, x: &CrossingPoint, y: &CrossingPoint) -> bool {
        self.cmp_points(x, y) == Ordering::Less
    }

    /// The basepoint whose orbit stands for the action's natural points:
    /// the identity for left translations.
    pub fn default_basepoints(&self) -> Vec<CrossingPoint> {
        match self {
            Action::Affine(_) => vec![CrossingPoint::Real(QuadraticNumber::zero())],
            Action::LeftTranslation { ordering } => {
                vec![CrossingPoint::Element(ordering.family().identity())]
            }
        }
    }

    /// `(sup, inf)` of `{h^n x : 1 <= n}` by fixed-point analysis.
    fn exact_extents(map: &AffineMap, x: &QuadraticNumber) -> (Extent, Extent) {
        let hx = CrossingPoint::Real(map.apply(x));
        let at = |v: CrossingPoint, attained| Extent::Finite { value: v, attained };
        match map.fixed_point() {
            None => match map.offset.signum() {
                Sign::Positive => (Extent::Unbounded, at(hx, true)),
                Sign::Negative => (at(hx, true), Extent::Unbounded),
                Sign::Zero => (at(hx.clone(), true), at(hx, true)),
            },
            Some(p) => {
                let contracting = map.scale < QuadraticNumber::one();
                let pt = CrossingPoint::Real(p.clone());
                match (x.cmp(&p), contracting) {
                    (Ordering::Equal, _) => (at(pt.clone(), true), at(pt, true)),
                    // Decreasing towards p.
                    (Ordering::Greater, true) => (at(hx, true), at(pt, false)),
                    // Increasing towards p.
                    (Ordering::Less, true) => (at(pt, false), at(hx, true)),
                    // Escaping to +infinity.
                    (Ordering::Greater, false) => (Extent::Unbounded, at(hx, true)),
                    // Escaping to -infinity.
                    (Ordering::Less, false) => (at(hx, true), Extent::Unbounded),
                }
            }
        }
    }

    /// Bounded extents from the endpoints of a monotone orbit.
    fn bounded_extents(&self, hx: CrossingPoint, hnx: CrossingPoint) -> (Extent, Extent) {
        let (lo, hi) = if self.lt(&hnx, &hx) {
            (hnx, hx)
        } else {
            (hx, hnx)
        };
        (
            Extent::Finite {
                value: hi,
                attained: true,
            },
            Extent::Finite {
                value: lo,
                attained: true,
            },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingCertificate {
    pub action: Action,
    pub f: Element,
    pub g: Element,
    pub u: CrossingPoint,
    pub v: CrossingPoint,
    pub w: CrossingPoint,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub mode: CrossingMode,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingReport {
    pub check: &'static str,
    pub valid: bool,
    pub mode: CrossingMode,
    /// Set in bounded mode: condition ii was only checked up to `n_max`.
    pub partial: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
}

fn iterate(action: &Action, h: &Element, x: &CrossingPoint, times: u32) -> CrossingPoint {
    let mut y = x.clone();
    for _ in 0..times {
        y = action.act(h, &y);
    }
    y
}

/// `∀n ≥ 1: h^n x < y` (or `> y` when `above`), decided from the extent.
fn extent_bounds(action: &Action, extent: &Extent, y: &CrossingPoint, above: bool) -> bool {
    match extent {
        Extent::Unbounded => false,
        Extent::Finite { value, attained } => {
            let o = action.cmp_points(value, y);
            let wanted = if above {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            o == wanted || (!attained && o == Ordering::Equal)
        }
    }
}

/// Checks conditions i-iii of a certificate.
pub fn verify_crossing(cert: &CrossingCertificate) -> Result<CrossingReport> {
    let action = &cert.action;
    action.validate()?;
    let family = action.family();
    for e in [&cert.f, &cert.g] {
        family
            .check(e)
            .map_err(|err| Error::MalformedCertificate(format!("element {e}: {err}")))?;
    }
    for p in [&cert.u, &cert.v, &cert.w] {
        action
            .check_point(p)
            .map_err(|err| Error::MalformedCertificate(err.to_string()))?;
    }
    if cert.m == 0 || cert.n == 0 {
        return Err(Error::MalformedCertificate(
            "M and N must be positive".into(),
        ));
    }
    let (u, v, w) = (&cert.u, &cert.v, &cert.w);
    let condition_i = action.lt(u, w) && action.lt(w, v);
    let condition_iii = action.lt(&iterate(action, &cert.f, v, cert.n), w)
        && action.lt(w, &iterate(action, &cert.g, u, cert.m));
    let (condition_ii, partial) = match (cert.mode, action) {
        (CrossingMode::AffineExact, Action::Affine(a)) => {
            let (CrossingPoint::Real(ur), CrossingPoint::Real(vr)) = (u, v) else {
                unreachable!()
            };
            let (sup_g, _) = Action::exact_extents(&a.image(&cert.g), ur);
            let (_, inf_f) = Action::exact_extents(&a.image(&cert.f), vr);
            (
                extent_bounds(action, &sup_g, v, false) && extent_bounds(action, &inf_f, u, true),
                false,
            )
        }
        (CrossingMode::AffineExact, _) => {
            return Err(Error::MalformedCertificate(
                "exact mode needs an affine action".into(),
            ))
        }
        (CrossingMode::Bounded { n_max }, _) => {
            let mut ok = true;
            let (mut gu, mut fv) = (u.clone(), v.clone());
            for _ in 0..n_max {
                gu = action.act(&cert.g, &gu);
                fv = action.act(&cert.f, &fv);
                if !action.lt(&gu, v) || !action.lt(u, &fv) {
                    ok = false;
                    break;
                }
            }
            (ok, true)
        }
    };
    Ok(CrossingReport {
        check: "crossing",
        valid: condition_i && condition_ii && condition_iii,
        mode: cert.mode,
        partial,
        condition_i,
        condition_ii,
        condition_iii,
    })
}

fn default_mode(action: &Action) -> CrossingMode {
    match action {
        Action::Affine(_) => CrossingMode::AffineExact,
        Action::LeftTranslation { .. } => CrossingMode::Bounded {
            n_max: DEFAULT_N_MAX,
        },
    }
}

/// Least `k >= 1` with `pred(h^k x)`.
fn least_exponent(
    action: &Action,
    h: &Element,
    x: &CrossingPoint,
    limit: u32,
    pred: impl Fn(&CrossingPoint) -> bool,
) -> Option<u32> {
    let mut y = x.clone();
    for k in 1..=limit {
        y = action.act(h, &y);
        if pred(&y) {
            return Some(k);
        }
    }
    None
}

fn exponent_limit(mode: CrossingMode) -> u32 {
    match mode {
        CrossingMode::AffineExact => EXPONENT_SEARCH_LIMIT,
        CrossingMode::Bounded { n_max } => n_max,
    }
}

fn finish_certificate(
    action: &Action,
    f: Element,
    g: Element,
    u: CrossingPoint,
    v: CrossingPoint,
    w: CrossingPoint,
    mode: CrossingMode,
) -> Result<CrossingCertificate> {
    let limit = exponent_limit(mode);
    let n = least_exponent(action, &f, &v, limit, |y| action.lt(y, &w))
        .ok_or_else(|| Error::Internal(format!("no N <= {limit} with f^N v < w")))?;
    let m = least_exponent(action, &g, &u, limit, |y| action.lt(&w, y))
        .ok_or_else(|| Error::Internal(format!("no M <= {limit} with g^M u > w")))?;
    let cert = CrossingCertificate {
        action: action.clone(),
        f,
        g,
        u,
        v,
        w,
        m,
        n,
        mode,
    };
    let report = verify_crossing(&cert)?;
    if !report.valid {
        return Err(Error::Internal(format!(
            "constructed certificate fails verification: {report:?}"
        )));
    }
    Ok(cert)
}

/// Largest power of `g` tried when strengthening a witness.
const MAX_WITNESS_POWER: u32 = 64;

/// Whether `f g^n (u) < g(u)` for every `n >= 1` (up to `n_max` in bounded
/// mode).
fn strong_at(
    action: &Action,
    f: &Element,
    g: &Element,
    u: &CrossingPoint,
    mode: CrossingMode,
) -> bool {
    let target = action.act(g, u);
    match (mode, action) {
        (CrossingMode::AffineExact, Action::Affine(a)) => {
            let CrossingPoint::Real(x) = u else {
                return false;
            };
            match Action::exact_extents(&a.image(g), x).0 {
                Extent::Unbounded => false,
                Extent::Finite { value, attained } => {
                    let o = action.cmp_points(&action.act(f, &value), &target);
                    o == Ordering::Less || (!attained && o == Ordering::Equal)
                }
            }
        }
        (CrossingMode::Bounded { n_max }, _) => {
            let mut y = u.clone();
            (0..n_max).all(|_| {
                y = action.act(g, &y);
                action.lt(&action.act(f, &y), &target)
            })
        }
        _ => false,
    }
}

/// The crossing `(fg', fg'^2, w, g'(w), fg'^2(w))` for positive `f`, `g`
/// with `f g^2 < g` at the basepoint `w`, where `g' = g^k` for the least
/// `k` such that `f g'^n < g'` holds at `w` for all `n`. The named
/// construction needs that stronger inequality; an `n = 2` witness alone
/// does not give condition ii.
pub fn crossing_from_witness(
    wit: &ConradWitness,
    action: &Action,
    basepoint: &CrossingPoint,
) -> Result<CrossingCertificate> {
    action.validate()?;
    action.check_point(basepoint)?;
    let mode = default_mode(action);
    let f = &wit.f;
    let u = basepoint.clone();
    let fu = action.act(f, &u);
    let w2 = action.act(&f.mul(&wit.g).mul(&wit.g), &u);
    let v1 = action.act(&wit.g, &u);
    if !action.lt(&u, &v1) || action.lt(&fu, &u) || !action.lt(&w2, &v1) {
        return Err(Error::Precondition(
            "witness does not match the ordering induced at the basepoint".into(),
        ));
    }
    let g = (1..=MAX_WITNESS_POWER as i64)
        .map(|k| wit.g.pow(k))
        .find(|gk| strong_at(action, f, gk, &u, mode))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "no power g^k, k <= {MAX_WITNESS_POWER}, with f g^kn < g^k for all n at the basepoint"
            ))
        })?;
    let fg = f.mul(&g);
    let fgg = fg.mul(&g);
    let v = action.act(&g, &u);
    let w = action.act(&fgg, &u);
    finish_certificate(action, fg, fgg, u, v, w, mode)
}

/// Range-minimum table over `usize` values.
struct SparseMin {
    levels: Vec<Vec<usize>>,
}

impl SparseMin {
    fn new(values: Vec<usize>) -> Self {
        let mut levels = vec![values];
        let mut width = 1;
        while 2 * width <= levels[0].len() {
            let prev = levels.last().unwrap();
            let next: Vec<usize> = (0..prev.len() - width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseMin { levels }
    }

    /// Minimum over `lo..hi`, `hi > lo`.
    fn query(&self, lo: usize, hi: usize) -> usize {
        let k = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        self.levels[k][lo].min(self.levels[k][hi - (1 << k)])
    }
}

/// Exhaustive crossing search over `(f, g)` in the ball and `(u, v, w)`
/// among orbit points of the basepoints under ball elements, with `u`
/// restricted to the basepoints.
///
/// Scan order: basepoint `u`, then `f`, then `g` (ball order), then `v` and
/// `w` (candidate order: basepoints first, each followed by its orbit in
/// ball order). The first certificate in this order is returned, verified.
pub fn detect_crossing(
    action: &Action,
    ball: &Ball,
    basepoints: &[CrossingPoint],
    mode: CrossingMode,
) -> Result<Option<CrossingCertificate>> {
    action.validate()?;
    if ball.family() != action.family() {
        return Err(Error::FamilyMismatch {
            expected: action.family(),
            found: ball.family(),
        });
    }
    if basepoints.is_empty() {
        return Err(Error::Precondition(
            "crossing search needs a basepoint".into(),
        ));
    }
    if mode == CrossingMode::AffineExact && !matches!(action, Action::Affine(_)) {
        return Err(Error::Precondition(
            "exact mode needs an affine action".into(),
        ));
    }
    for p in basepoints {
        action.check_point(p)?;
    }
    if let CrossingPoint::Real(first) = &basepoints[0] {
        for p in basepoints {
            if let CrossingPoint::Real(x) = p {
                x.checked_add(first)?;
            }
        }
    }

    let mut candidates: Vec<CrossingPoint> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for b in basepoints {
        for h in ball.iter() {
            let p = action.act(h, b);
            if seen.insert(p.clone()) {
                candidates.push(p);
            }
        }
    }
    let mut sorted = candidates.clone();
    sorted.sort_by(|x, y| action.cmp_points(x, y));

    let elems: Vec<&Element> = ball.iter().filter(|e| !e.is_identity()).collect();
    // Per element: its image map (exact mode) or its n_max-th power.
    let powers: Vec<Option<Element>> = match mode {
        CrossingMode::Bounded { n_max } => {
            elems.iter().map(|e| Some(e.pow(n_max as i64))).collect()
        }
        CrossingMode::AffineExact => vec![None; elems.len()],
    };
    let extents = |idx: usize, x: &CrossingPoint| -> (Extent, Extent) {
        let h = elems[idx];
        match (action, mode, x) {
            (Action::Affine(a), CrossingMode::AffineExact, CrossingPoint::Real(xr)) => {
                Action::exact_extents(&a.image(h), xr)
            }
            _ => {
                let hn = powers[idx].as_ref().expect("bounded mode");
                action.bounded_extents(action.act(h, x), action.act(hn, x))
            }
        }
    };

    let key_cmp = |x: &(CrossingPoint, bool), y: &(CrossingPoint, bool)| {
        action.cmp_points(&x.0, &y.0).then(x.1.cmp(&y.1))
    };

    for u in basepoints {
        // Suprema of g-orbits of u, sorted by (value, attained).
        let mut sups: Vec<((CrossingPoint, bool), usize)> = Vec::new();
        for j in 0..elems.len() {
            if let (Extent::Finite { value, attained }, _) = extents(j, u) {
                sups.push(((value, attained), j));
            }
        }
        sups.sort_by(|x, y| key_cmp(&x.0, &y.0));
        if sups.is_empty() {
            continue;
        }
        let table = SparseMin::new(sups.iter().map(|s| s.1).collect());

        for i in 0..elems.len() {
            let mut best: Option<(usize, usize, CrossingPoint)> = None;
            for (k, v) in candidates.iter().enumerate() {
                let (_, inf) = extents(i, v);
                let Extent::Finite {
                    value: inf_v,
                    attained,
                } = inf
                else {
                    continue;
                };
                // ii: f^n v > u for all n.
                let o = action.cmp_points(&inf_v, u);
                if !(o == Ordering::Greater || (!attained && o == Ordering::Equal)) {
                    continue;
                }
                // Least candidate point above the infimum.
                let pos =
                    sorted.partition_point(|p| action.cmp_points(p, &inf_v) != Ordering::Greater);
                let Some(above) = sorted.get(pos) else {
                    continue;
                };
                // sup in (above, v) or equal to v without being attained.
                let lo = sups
                    .partition_point(|s| action.cmp_points(&s.0 .0, above) != Ordering::Greater);
                let hi = sups.partition_point(|s| match action.cmp_points(&s.0 .0, v) {
                    Ordering::Less => true,
                    Ordering::Equal => !s.0 .1,
                    Ordering::Greater => false,
                });
                if lo >= hi {
                    continue;
                }
                let j = table.query(lo, hi);
                if best.as_ref().map_or(true, |b| j < b.0) {
                    best = Some((j, k, inf_v));
                }
            }
            if let Some((j, k, inf_v)) = best {
                let v = candidates[k].clone();
                let (sup_u, _) = extents(j, u);
                let Extent::Finite { value: sup_u, .. } = sup_u else {
                    unreachable!()
                };
                let w = candidates
                    .iter()
                    .find(|w| action.lt(&inf_v, w) && action.lt(w, &sup_u))
                    .expect("range query guarantees a point")
                    .clone();
                let cert = finish_certificate(
                    action,
                    elems[i].clone(),
                    elems[j].clone(),
                    u.clone(),
                    v,
                    w,
                    mode,
                )?;
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::eval_word;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn bs2(w: &str) -> Element {
        eval_word(&Family::bs(2), w).unwrap()
    }

    fn real(s: &str) -> CrossingPoint {
        CrossingPoint::Real(q(s))
    }

    fn named_witness_certificate() -> CrossingCertificate {
        let wit = ConradWitness {
            f: bs2("b^-2 a^5 b^-1"),
            g: bs2("b^-1 a^2"),
        };
        crossing_from_witness(
            &wit,
            &Action::Affine(AffineAction::standard(2)),
            &real("sqrt2"),
        )
        .unwrap()
    }

    #[test]
    fn certificate_from_named_witness() {
        let cert = named_witness_certificate();
        assert_eq!(cert.u, real("sqrt2"));
        assert_eq!(cert.v, real("sqrt2/2+1"));
        assert_eq!(cert.w, real("1/32*sqrt2+23/16"));
        let xi = AffineAction::standard(2);
        assert_eq!(
            xi.image(&cert.f),
            AffineMap {
                scale: q("1/16"),
                offset: q("11/8")
            }
        );
        assert_eq!(
            xi.image(&cert.g),
            AffineMap {
                scale: q("1/32"),
                offset: q("23/16")
            }
        );
        assert_eq!(xi.image(&cert.f).fixed_point().unwrap(), q("22/15"));
        assert_eq!(xi.image(&cert.g).fixed_point().unwrap(), q("46/31"));
        assert_eq!(cert.mode, CrossingMode::AffineExact);
        let r = verify_crossing(&cert).unwrap();
        assert!(r.valid && !r.partial);
        // Minimality of M and N.
        let a = &cert.action;
        assert!(!a.lt(&iterate(a, &cert.f, &cert.v, cert.n - 1), &cert.w) || cert.n == 1);
        assert!(!a.lt(&cert.w, &iterate(a, &cert.g, &cert.u, cert.m - 1)) || cert.m == 1);
    }

    #[test]
    fn weak_witness_is_strengthened() {
        // f g^2 < g at sqrt2, but f g^n < g fails for large n; g^2 works.
        let wit = ConradWitness {
            f: bs2("b^-1 a^2"),
            g: bs2("b^-1 a^4"),
        };
        let action = Action::Affine(AffineAction::standard(2));
        let cert = crossing_from_witness(&wit, &action, &real("sqrt2")).unwrap();
        assert_eq!(cert.f, wit.f.mul(&wit.g.pow(2)));
        assert!(verify_crossing(&cert).unwrap().valid);
    }

    #[test]
    fn swapped_points_fail() {
        let mut cert = named_witness_certificate();
        std::mem::swap(&mut cert.u, &mut cert.v);
        let r = verify_crossing(&cert).unwrap();
        assert!(!r.condition_i && !r.valid);
        let mut bad = named_witness_certificate();
        bad.m = 0;
        assert!(matches!(
            verify_crossing(&bad),
            Err(Error::MalformedCertificate(_))
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = named_witness_certificate();
        let s = serde_json::to_string(&cert).unwrap();
        assert!(s.contains("\"M\":") && s.contains("\"mode\":{\"kind\":\"affine_exact\"}"));
        let back: CrossingCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn detects_crossing_for_standard_action() {
        let ball = Ball::generate(Family::bs(2), 4).unwrap();
        let action = Action::Affine(AffineAction::standard(2));
        let cert = detect_crossing(&action, &ball, &[real("sqrt2")], CrossingMode::AffineExact)
            .unwrap()
            .unwrap();
        assert!(verify_crossing(&cert).unwrap().valid);
    }

    #[test]
    fn flip_realizations_have_no_crossing() {
        let ball = Ball::generate(Family::bs(2), 3).unwrap();
        for bits in ["00", "01", "10", "11"] {
            let o = OrderingDescriptor::flip_str(Family::bs(2), bits).unwrap();
            let action = Action::realization(o);
            let found = detect_crossing(
                &action,
                &ball,
                &action.default_basepoints(),
                CrossingMode::Bounded { n_max: 16 },
            )
            .unwrap();
            assert!(found.is_none(), "{bits}");
        }
    }

    #[test]
    fn smirnov_realization_has_a_crossing() {
        let ball = Ball::generate(Family::bs(2), 5).unwrap();
        let o = OrderingDescriptor::parse("smirnov:sqrt2", Family::bs(2)).unwrap();
        let action = Action::realization(o);
        let cert = detect_crossing(
            &action,
            &ball,
            &action.default_basepoints(),
            CrossingMode::Bounded { n_max: 16 },
        )
        .unwrap()
        .expect("non-Conradian ordering");
        let r = verify_crossing(&cert).unwrap();
        assert!(r.valid && r.partial);
    }

    #[test]
    fn translations_do_not_cross() {
        // Z^2 embedded in no affine family: model it by a left-translation action.
        let z2 = Family::Abelian { n: 2 };
        let ball = Ball::generate(z2, 3).unwrap();
        let o = OrderingDescriptor::parse("slope:sqrt2,1", z2).unwrap();
        let action = Action::realization(o);
        let found = detect_crossing(
            &action,
            &ball,
            &action.default_basepoints(),
            CrossingMode::Bounded { n_max: 16 },
        )
        .unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn sparse_min() {
        let t = SparseMin::new(vec![5, 3, 8, 1, 9, 2]);
        assert_eq!(t.query(0, 3), 3);
        assert_eq!(t.query(2, 6), 1);
        assert_eq!(t.query(4, 5), 9);
        assert_eq!(t.query(4, 6), 2);
    }

    #[test]
    fn exact_extents_cases() {
        let m = |s: &str, o: &str| AffineMap::new(q(s), q(o)).unwrap();
        let fin = |s: &str, a| Extent::Finite {
            value: real(s),
            attained: a,
        };
        // contraction towards 2 from below: sup 2 (not attained), inf h(0) = 1
        assert_eq!(
            Action::exact_extents(&m("1/2", "1"), &q("0")),
            (fin("2", false), fin("1", true))
        );
        // expansion from above the fixed point
        assert_eq!(
            Action::exact_extents(&m("2", "0"), &q("1")),
            (Extent::Unbounded, fin("2", true))
        );
        // translation down
        assert_eq!(
            Action::exact_extents(&m("1", "-1"), &q("0")),
            (fin("-1", true), Extent::Unbounded)
        );
        // sitting on the fixed point
        assert_eq!(
            Action::exact_extents(&m("3", "-2"), &q("1")),
            (fin("1", true), fin("1", true))
        );
    }
}
