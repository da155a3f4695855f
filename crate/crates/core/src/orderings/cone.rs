use serde::Serialize;

use super::descriptor::SignOracle;
use super::sign::Sign;
use crate::groups::{Ball, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeAxiom {
    /// `sign(g^-1) = -sign(g)`
    Antisymmetry,
    /// only the identity has sign zero
    Totality,
    /// positive times positive is positive
    Closure,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeViolation {
    pub axiom: ConeAxiom,
    pub g: Element,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub check: &'static str,
    pub radius: u32,
    pub pass: bool,
    pub elements: usize,
    /// First violation of each axiom in scan order.
    pub violations: Vec<ConeViolation>,
}

/// Checks that the oracle restricts to a positive cone on the ball.
pub fn check_cone_axioms<O: SignOracle + ?Sized>(ord: &O, ball: &Ball) -> ConeReport {
    let signs: Vec<Sign> = ball.iter().map(|g| ord.sign(g)).collect();
    let mut violations = Vec::new();

    if let Some(g) = ball
        .iter()
        .zip(&signs)
        .find(|(g, s)| ord.sign(&g.inv()) != -**s)
    {
        violations.push(ConeViolation {
            axiom: ConeAxiom::Antisymmetry,
            g: g.0.clone(),
            h: Some(g.0.inv()),
        });
    }
    if let Some(g) = ball
        .iter()
        .zip(&signs)
        .find(|(g, s)| (**s == Sign::Zero) != g.is_identity())
    {
        violations.push(ConeViolation {
            axiom: ConeAxiom::Totality,
            g: g.0.clone(),
            h: None,
        });
    }

    let positive: Vec<&Element> = ball
        .iter()
        .zip(&signs)
        .filter(|(_, s)| s.is_positive())
        .map(|(g, _)| g)
        .collect();
    'outer: for g in &positive {
        for h in &positive {
            let gh = g.mul(h);
            if ball.contains(&gh) && !ord.sign(&gh).is_positive() {
                violations.push(ConeViolation {
                    axiom: ConeAxiom::Closure,
                    g: (*g).clone(),
                    h: Some((*h).clone()),
                });
                break 'outer;
            }
        }
    }

    ConeReport {
        check: "cone",
        radius: ball.radius(),
        pass: violations.is_empty(),
        elements: ball.len(),
        violations,
    }
}
