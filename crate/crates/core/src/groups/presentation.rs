use serde::Serialize;

use super::element::Element;
use super::family::{Family, Generator};
use super::word::Word;

#[derive(Clone, Debug, Serialize)]
pub struct RelatorResult {
    pub relator: String,
    pub value: Element,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub family: Family,
    pub relators: Vec<RelatorResult>,
    pub pass: bool,
}

fn w(letters: &[(Generator, i64)]) -> Word {
    Word::new(letters.to_vec())
}

fn ai(i: usize) -> Generator {
    Generator::Indexed(i)
}

/// `a_{i+1} a_i a_{i+1}^-1 = a_i^-1` for `i < n`, and `[a_i, a_j] = 1` for `|i - j| >= 2`.
fn tararin_relators(n: usize) -> Vec<Word> {
    let mut rels = Vec::new();
    for i in 1..n {
        rels.push(w(&[
            (ai(i + 1), 1),
            (ai(i), 1),
            (ai(i + 1), -1),
            (ai(i), 1),
        ]));
    }
    for i in 1..=n {
        for j in (i + 2)..=n {
            rels.push(w(&[(ai(i), 1), (ai(j), 1), (ai(i), -1), (ai(j), -1)]));
        }
    }
    rels
}

/// Defining relators of the family's presentation, as words that must
/// evaluate to the identity.
pub fn relators(family: &Family) -> Vec<Word> {
    use Generator::{A, B, C};
    match *family {
        Family::BaumslagSolitar { ell } => {
            vec![w(&[(B, 1), (A, 1), (B, -1), (A, -(ell as i64))])]
        }
        Family::Tararin { n } => tararin_relators(n),
        Family::Cn { n } => {
            let mut rels = vec![w(&[(C, 1), (B, 1), (C, -1), (B, -3)])];
            for i in 1..=n {
                rels.push(w(&[(C, 1), (ai(i), 1), (C, -1), (ai(i), -1)]));
            }
            rels.push(w(&[(B, 1), (ai(n), 1), (B, -1), (ai(n), 1)]));
            for i in 1..n {
                rels.push(w(&[(B, 1), (ai(i), 1), (B, -1), (ai(i), -1)]));
            }
            rels.extend(tararin_relators(n));
            rels
        }
        Family::Abelian { n } => {
            let mut rels = Vec::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    rels.push(w(&[(ai(i), 1), (ai(j), 1), (ai(i), -1), (ai(j), -1)]));
                }
            }
            rels
        }
    }
}

/// Evaluates every defining relator and reports which ones vanish.
pub fn verify_presentation(family: &Family) -> PresentationReport {
    let relators: Vec<RelatorResult> = relators(family)
        .into_iter()
        .map(|r| {
            let value = r
                .eval(family)
                .expect("relators use the family's generators");
            RelatorResult {
                relator: r.to_string(),
                holds: value.is_identity(),
                value,
            }
        })
        .collect();
    let pass = relators.iter().all(|r| r.holds);
    PresentationReport {
        family: *family,
        relators,
        pass,
    }
}
