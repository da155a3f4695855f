use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use conradlab::conradian::{
    bi_invariance_check, check_rational_series, conradian_check, conradian_check_with,
    convexity_check, enumerate_c_orderings, ConradianOptions, ConvexSeries,
};
use conradlab::dynamics::{
    crossing_from_witness, detect_crossing, dynamical_realization, realization_action_check,
    verify_crossing, Action, AffineAction, CrossingCertificate, CrossingMode, CrossingPoint,
    Enumeration, RealizationTable,
};
use conradlab::groups::{eval_word, verify_presentation};
use conradlab::orderings::check_cone_axioms;
use conradlab::space::{
    agreement_on_ball, cantor_tree_export, conjugacy_orbit_probe, convergence_check,
    default_search_radius, gap_representatives, isolation_probe_with, thresholds, CandidateSet,
};
use conradlab::{
    Ball, Element, Family, OrderingDescriptor, QuadraticNumber, Side, Sign, SignOracle,
};
use serde_json::{json, Value};

use crate::args::{Check, EnumerationArgs, EnumerationKind, SpaceSub};
use crate::output::{to_value, CliError, CliResult, Outcome};

/// Effective inputs shared by all commands.
pub struct Ctx {
    pub family: Family,
    pub ord: Option<OrderingDescriptor>,
    pub radius: u32,
    pub n_max: u32,
    pub cap: usize,
}

impl Ctx {
    fn ord(&self) -> CliResult<&OrderingDescriptor> {
        self.ord
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs --ord or --ord-file".into()))
    }

    fn ball(&self, family: Family) -> CliResult<Ball> {
        Ok(Ball::generate_with_cap(family, self.radius, self.cap)?)
    }

    fn parse(&self, text: &str) -> CliResult<OrderingDescriptor> {
        Ok(OrderingDescriptor::parse(text, self.family)?)
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad {what} JSON: {e}")))
}

pub fn load_descriptor(path: &Path) -> CliResult<OrderingDescriptor> {
    let d: OrderingDescriptor = parse_json(&read(path)?, "descriptor")?;
    d.validate()?;
    Ok(d)
}

fn finding(flag: bool) -> u8 {
    u8::from(flag)
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Positive => "+",
        Sign::Negative => "-",
        Sign::Zero => "0",
    }
}

pub fn compare(ctx: &Ctx, g: &str, h: &str) -> CliResult<Outcome> {
    let ord = ctx.ord()?;
    let family = ord.family();
    let ge = eval_word(&family, g)?;
    let he = eval_word(&family, h)?;
    let q = ge.inv().mul(&he);
    let mut trace = vec![
        format!("g = {ge}"),
        format!("h = {he}"),
        format!("g^-1 h = {q}"),
    ];
    match ord {
        OrderingDescriptor::Smirnov { ell, epsilon, .. } => {
            let moved = AffineAction::standard(*ell).apply(&q, epsilon);
            let delta = moved.checked_sub(epsilon)?;
            trace.push(format!("g^-1 h (e) - e = {delta}"));
        }
        OrderingDescriptor::Flip { flips, .. } => {
            let (level, s) = q.series_level();
            if level > 0 {
                let flipped = flips[level - 1];
                trace.push(format!(
                    "series level {level}, top sign {}, flipped {flipped}",
                    sign_str(s)
                ));
            }
        }
        _ => {}
    }
    let s = ord.sign(&q);
    trace.push(format!("sign = {}", sign_str(s)));
    let result = match conradlab::orderings::compare(ord, &ge, &he) {
        Ordering::Less => "Less",
        Ordering::Equal => "Equal",
        Ordering::Greater => "Greater",
    };
    let value = json!({ "g": ge, "h": he, "g_inv_h": q, "sign": sign_str(s), "result": result, "trace": trace });
    Ok(Outcome::new(
        format!("{result}\n{}", trace.join("\n")),
        value,
        0,
    ))
}

pub fn enumerate(ctx: &Ctx) -> CliResult<Outcome> {
    let ds = enumerate_c_orderings(ctx.family)?;
    let expected = 1usize << ctx.family.series_length();
    let names: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    let ok = ds.len() == expected;
    let value = json!({ "family": ctx.family, "count": ds.len(), "expected": expected, "descriptors": names });
    Ok(Outcome::new(
        format!("{}\n{}", ds.len(), names.join("\n")),
        value,
        finding(!ok),
    ))
}

fn realization_table(
    ord: &OrderingDescriptor,
    ball: &Ball,
    e: &EnumerationArgs,
) -> CliResult<RealizationTable> {
    let enumeration = match e.enumeration {
        EnumerationKind::Ball => Enumeration::BallOrder,
        EnumerationKind::Reversed => Enumeration::Reversed,
        EnumerationKind::Shuffled => Enumeration::Shuffled { seed: e.seed },
    };
    Ok(dynamical_realization(ord, ball, &enumeration.list(ball))?)
}

fn load_table(path: &Path) -> CliResult<RealizationTable> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let v: Value = parse_json(&text, "realization table")?;
        // Either a bare table or the output of `realize --format json`.
        let table = v
            .get("result")
            .and_then(|r| r.get("table"))
            .cloned()
            .unwrap_or(v);
        return serde_json::from_value(table)
            .map_err(|e| CliError::Usage(format!("bad realization table: {e}")));
    }
    Ok(RealizationTable::read_csv(text.as_bytes())?)
}

pub fn verify(
    ctx: &Ctx,
    check: Check,
    table: Option<&Path>,
    e: &EnumerationArgs,
) -> CliResult<Outcome> {
    let out = match check {
        Check::Presentation => {
            let r = verify_presentation(&ctx.family);
            Outcome::new(
                pass_line("presentation", r.pass),
                to_value(&r)?,
                finding(!r.pass),
            )
        }
        Check::RationalSeries => {
            let r = check_rational_series(ctx.family, &ctx.ball(ctx.family)?);
            Outcome::new(
                pass_line("rational-series", r.hypotheses_hold),
                to_value(&r)?,
                finding(!r.hypotheses_hold),
            )
        }
        _ => {
            let ord = ctx.ord()?;
            let ball = ctx.ball(ord.family())?;
            match check {
                Check::Conradian => {
                    let r = conradian_check_with(
                        ord,
                        &ball,
                        ConradianOptions {
                            second_condition: true,
                        },
                    );
                    let line = match r.witness() {
                        Some(w) => format!("witness f = {}, g = {}", w.f, w.g),
                        None => "pass".into(),
                    };
                    Outcome::new(line, to_value(&r)?, finding(!r.passed()))
                }
                Check::BiInvariance => {
                    let r = bi_invariance_check(ord, &ball);
                    let line = match (&r.g, &r.h) {
                        (Some(g), Some(h)) => format!("fail: g = {g}, h = {h}"),
                        _ => "pass".into(),
                    };
                    Outcome::new(line, to_value(&r)?, finding(!r.pass))
                }
                Check::Convexity => {
                    let series = ConvexSeries::of(ord.family());
                    let reports: Vec<_> = (1..series.length)
                        .map(|level| {
                            convexity_check(
                                &format!("G_{level}"),
                                |g| series.contains(level, g),
                                ord,
                                &ball,
                            )
                        })
                        .collect();
                    let all = reports.iter().all(|r| r.convex);
                    let value = json!({ "check": "convexity", "radius": ctx.radius, "pass": all, "levels": reports });
                    Outcome::new(pass_line("convexity", all), value, finding(!all))
                }
                Check::Cone => {
                    let r = check_cone_axioms(ord, &ball);
                    Outcome::new(pass_line("cone", r.pass), to_value(&r)?, finding(!r.pass))
                }
                Check::Realization => {
                    let t = match table {
                        Some(p) => load_table(p)?,
                        None => realization_table(ord, &ball, e)?,
                    };
                    let r = realization_action_check(&t, ord, &ball);
                    Outcome::new(
                        pass_line("realization", r.pass),
                        to_value(&r)?,
                        finding(!r.pass),
                    )
                }
                Check::Presentation | Check::RationalSeries => unreachable!(),
            }
        }
    };
    Ok(out)
}

fn pass_line(name: &str, pass: bool) -> String {
    format!("{name}: {}", if pass { "pass" } else { "fail" })
}

/// The affine action for exact Smirnov orderings, left translation otherwise.
fn action_for(
    ctx: &Ctx,
    ord: &OrderingDescriptor,
    basepoint: Option<&str>,
) -> CliResult<(Action, Vec<CrossingPoint>, CrossingMode)> {
    if let OrderingDescriptor::Smirnov {
        ell,
        epsilon,
        side: Side::Exact,
        opposite: false,
    } = ord
    {
        let x = match basepoint {
            Some(b) => b.parse::<QuadraticNumber>()?,
            None => epsilon.clone(),
        };
        return Ok((
            Action::Affine(AffineAction::standard(*ell)),
            vec![CrossingPoint::Real(x)],
            CrossingMode::AffineExact,
        ));
    }
    if basepoint.is_some() {
        return Err(CliError::Usage(
            "--basepoint needs an exact Smirnov ordering".into(),
        ));
    }
    let action = Action::realization(ord.clone());
    let points = action.default_basepoints();
    Ok((action, points, CrossingMode::Bounded { n_max: ctx.n_max }))
}

fn certificate_outcome(cert: Option<CrossingCertificate>) -> CliResult<Outcome> {
    match cert {
        None => Ok(Outcome::new("none", json!({ "certificate": null }), 0)),
        Some(c) => {
            let report = verify_crossing(&c)?;
            let line = format!(
                "certificate: f = {}, g = {}, M = {}, N = {}",
                c.f, c.g, c.m, c.n
            );
            Ok(Outcome::new(
                line,
                json!({ "certificate": c, "report": report }),
                1,
            ))
        }
    }
}

pub fn crossing(ctx: &Ctx, from_witness: bool, basepoint: Option<&str>) -> CliResult<Outcome> {
    let ord = ctx.ord()?;
    let ball = ctx.ball(ord.family())?;
    let (action, points, mode) = action_for(ctx, ord, basepoint)?;
    let cert = if from_witness {
        match conradian_check(ord, &ball).witness() {
            Some(w) => Some(crossing_from_witness(&w, &action, &points[0])?),
            None => None,
        }
    } else {
        detect_crossing(&action, &ball, &points, mode)?
    };
    certificate_outcome(cert)
}

pub fn crossing_verify(path: &Path) -> CliResult<Outcome> {
    let v: Value = parse_json(&read(path)?, "certificate")?;
    let raw = v
        .get("result")
        .and_then(|r| r.get("certificate"))
        .cloned()
        .unwrap_or(v);
    if raw.is_null() {
        return Err(CliError::Usage(format!(
            "{} holds no certificate",
            path.display()
        )));
    }
    let cert: CrossingCertificate = serde_json::from_value(raw)
        .map_err(|e| CliError::Usage(format!("bad certificate: {e}")))?;
    let r = verify_crossing(&cert)?;
    let line = if r.valid { "valid" } else { "invalid" };
    Ok(Outcome::new(
        line,
        json!({ "certificate": cert, "report": r }),
        finding(!r.valid),
    ))
}

pub fn realize(ctx: &Ctx, e: &EnumerationArgs) -> CliResult<Outcome> {
    let ord = ctx.ord()?;
    let ball = ctx.ball(ord.family())?;
    let table = realization_table(ord, &ball, e)?;
    let r = realization_action_check(&table, ord, &ball);
    let csv = table.to_csv_string()?;
    let mut out = Outcome::new(
        format!(
            "{} entries, {}",
            table.len(),
            pass_line("realization", r.pass)
        ),
        json!({ "table": table, "check": r }),
        finding(!r.pass),
    );
    out.csv = Some(csv);
    Ok(out)
}

pub fn space(ctx: &Ctx, sub: &SpaceSub) -> CliResult<Outcome> {
    match sub {
        SpaceSub::Distance { ord1, ord2 } => {
            let (a, b) = (ctx.parse(ord1)?, ctx.parse(ord2)?);
            let r = agreement_on_ball(&a, &b, &ctx.ball(a.family())?)?;
            let line = if r.distance_is_bound {
                format!("<= {}", r.distance)
            } else {
                r.distance.to_string()
            };
            Ok(Outcome::new(line, to_value(&r)?, 0))
        }
        SpaceSub::Isolate {
            candidates,
            search_radius,
        } => {
            let ord = ctx.ord()?;
            let set = CandidateSet::parse(candidates)?;
            let search =
                search_radius.unwrap_or_else(|| default_search_radius(ord.family(), ctx.radius));
            let r = isolation_probe_with(ord, &set, ctx.radius, search)?;
            let line = match &r.found {
                Some(c) => format!(
                    "approximant {c}, distinct at radius {}",
                    r.distinct_at.unwrap_or(0)
                ),
                None => format!("no approximant among {} candidates", r.candidates_tried),
            };
            let exit = finding(r.found.is_none());
            Ok(Outcome::new(line, to_value(&r)?, exit))
        }
        SpaceSub::Converge { seq } => {
            let ord = ctx.ord()?;
            let terms = seq
                .iter()
                .map(|s| ctx.parse(s))
                .collect::<CliResult<Vec<_>>>()?;
            let r = convergence_check(&terms, ord, ctx.radius)?;
            let line = match r.agree_from {
                Some(i) => format!("agrees from term {i}"),
                None => "last term disagrees".into(),
            };
            let exit = finding(r.agree_from.is_none());
            Ok(Outcome::new(line, to_value(&r)?, exit))
        }
        SpaceSub::Orbit { target } => {
            let ord = ctx.ord()?;
            let t = ctx.parse(target)?;
            let g: Option<Element> = conjugacy_orbit_probe(ord, &t, ctx.radius)?;
            let line = match &g {
                Some(g) => format!("g = {g}"),
                None => "none".into(),
            };
            let exit = finding(g.is_none());
            Ok(Outcome::new(
                line,
                json!({ "check": "conjugacy-orbit", "radius": ctx.radius, "g": g }),
                exit,
            ))
        }
        SpaceSub::Tree { samples } => {
            let Family::BaumslagSolitar { ell } = ctx.family else {
                return Err(CliError::Usage(
                    "space tree samples Smirnov orderings; use a bs family".into(),
                ));
            };
            let ball = ctx.ball(ctx.family)?;
            let mut pool = Vec::new();
            for x in gap_representatives(&thresholds(&ball)?) {
                let d = OrderingDescriptor::smirnov(ell, x, Side::Exact)?;
                pool.push(d.opposite());
                pool.push(d);
            }
            let picked = spread(pool.len(), *samples);
            if picked.is_empty() {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let ds: Vec<OrderingDescriptor> = picked.into_iter().map(|i| pool[i].clone()).collect();
            let tree = cantor_tree_export(&ds, ctx.radius)?;
            let line = format!(
                "{} leaves, {} nodes",
                tree.root.leaf_count(),
                tree.root.node_count()
            );
            Ok(Outcome::new(line, to_value(&tree)?, 0))
        }
    }
}

/// `k` indices spread evenly over `0..n` (all of them when `k >= n`).
fn spread(n: usize, k: usize) -> Vec<usize> {
    if k >= n {
        return (0..n).collect();
    }
    (0..k).map(|i| i * n / k).collect()
}
