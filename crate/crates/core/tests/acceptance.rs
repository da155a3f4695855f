//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use conradlab::conradian::{
    bi_invariance_check, conradian_check, conradian_check_flips, enumerate_c_orderings,
    ConradWitness,
};
use conradlab::dynamics::{
    crossing_from_witness, detect_crossing, dynamical_realization, realization_action_check,
    recover_epsilon, smirnov_action, verify_crossing, Action, AffineAction, CrossingMode,
    CrossingPoint, Enumeration, EpsilonRecovery,
};
use conradlab::groups::{eval_word, verify_presentation};
use conradlab::space::{agreement_on_ball, first_disagreement, isolation_probe, CandidateSet};
use conradlab::{
    Ball, Element, Family, OrderingDescriptor, QuadraticNumber, Side, Sign, SignOracle,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(s: &str) -> QuadraticNumber {
    s.parse().unwrap()
}

fn bs2(w: &str) -> Element {
    eval_word(&Family::bs(2), w).unwrap()
}

fn desc(s: &str, f: Family) -> OrderingDescriptor {
    OrderingDescriptor::parse(s, f).unwrap()
}

fn pattern(ord: &OrderingDescriptor, ball: &Ball) -> Vec<Sign> {
    ball.iter().map(|g| ord.sign(g)).collect()
}

fn criterion_1() -> Outcome {
    let mut cases = vec![(Family::bs(2), 4usize)];
    for n in 1..=4 {
        cases.push((Family::Tararin { n }, 1 << n));
    }
    cases.push((Family::Cn { n: 3 }, 32));
    let mut summary = Vec::new();
    for (family, expected) in cases {
        let ords = enumerate_c_orderings(family).map_err(|e| e.to_string())?;
        ensure!(
            ords.len() == expected,
            "{family}: {} orderings, expected {expected}",
            ords.len()
        );
        let ball6 = Ball::generate(family, 6).map_err(|e| e.to_string())?;
        let reports = conradian_check_flips(&ords, &ball6).map_err(|e| e.to_string())?;
        for (o, r) in ords.iter().zip(&reports) {
            ensure!(
                r.passed(),
                "{o} has a Conrad witness on Ball(6): {:?}",
                r.witness()
            );
        }
        let ball2 = Ball::generate(family, 2).map_err(|e| e.to_string())?;
        let patterns: Vec<Vec<Sign>> = ords.iter().map(|o| pattern(o, &ball2)).collect();
        for i in 0..patterns.len() {
            for j in i + 1..patterns.len() {
                ensure!(
                    patterns[i] != patterns[j],
                    "{} and {} agree on Ball(2)",
                    ords[i],
                    ords[j]
                );
            }
        }
        summary.push(format!("{family}={}", ords.len()));
    }
    Ok(summary.join(" "))
}

fn criterion_2() -> Outcome {
    let bs = Family::bs(2);
    let ball = Ball::generate(bs, 5).unwrap();
    for o in enumerate_c_orderings(bs).unwrap() {
        let r = bi_invariance_check(&o, &ball);
        ensure!(r.pass, "{o} fails bi-invariance at ({:?}, {:?})", r.g, r.h);
    }
    let t2 = Family::Tararin { n: 2 };
    let ball = Ball::generate(t2, 5).unwrap();
    for o in enumerate_c_orderings(t2).unwrap() {
        let r = bi_invariance_check(&o, &ball);
        ensure!(!r.pass, "{o} is bi-invariant on Ball(5)");
        let (g, h) = (r.g.unwrap(), r.h.unwrap());
        ensure!(
            h.mul(&g).mul(&h.inv()) == g.inv(),
            "{o}: witness ({g}, {h}) is not conjugate-to-inverse"
        );
    }
    Ok("B(1,2) bi-invariant on Ball(5); T_2 witnesses h g h^-1 = g^-1".into())
}

/// Composition of the maps a: x -> x+1, b: x -> 2x along a word.
fn act_by_word(word: &str, x: &QuadraticNumber) -> QuadraticNumber {
    let mut y = x.clone();
    for token in word.split_whitespace().rev() {
        let (gen, exp) = token
            .split_once('^')
            .map_or((token, 1i64), |(g, e)| (g, e.parse().unwrap()));
        for _ in 0..exp.unsigned_abs() {
            y = match (gen, exp > 0) {
                ("a", true) => y.shift(&BigRational::from_integer(1.into())),
                ("a", false) => y.shift(&BigRational::from_integer((-1).into())),
                ("b", true) => y.scale(&BigRational::from_integer(2.into())),
                ("b", false) => y.scale(&BigRational::new(1.into(), 2.into())),
                _ => panic!("bad token {token}"),
            };
        }
    }
    y
}

const F_WORD: &str = "b^-2 a^5 b^-1";
const G_WORD: &str = "b^-1 a^2";

fn criterion_3() -> Outcome {
    let s2 = QuadraticNumber::sqrt(2);
    // Independent recomputation along the words before trusting the scanner.
    let fx = act_by_word(F_WORD, &s2);
    let gx = act_by_word(G_WORD, &s2);
    let fggx = act_by_word(&format!("{F_WORD} {G_WORD} {G_WORD}"), &s2);
    ensure!(fx > s2 && gx > s2, "f or g is not positive at sqrt2");
    ensure!(
        fggx < gx,
        "f g^2 (sqrt2) = {fggx} is not below g(sqrt2) = {gx}"
    );
    let ord = desc("smirnov:sqrt2", Family::bs(2));
    ConradWitness::new(&ord, bs2(F_WORD), bs2(G_WORD)).map_err(|e| e.to_string())?;
    let r = conradian_check(&ord, &Ball::generate(Family::bs(2), 8).unwrap());
    let w = r.witness().ok_or("no witness on Ball(8)")?;
    ConradWitness::new(&ord, w.f.clone(), w.g.clone()).map_err(|e| e.to_string())?;
    Ok(format!(
        "scanner witness f={} g={}; named pair verified",
        w.f, w.g
    ))
}

fn criterion_4() -> Outcome {
    let ord = desc("smirnov:sqrt2", Family::bs(2));
    let wit = ConradWitness::new(&ord, bs2(F_WORD), bs2(G_WORD)).map_err(|e| e.to_string())?;
    let action = Action::Affine(AffineAction::standard(2));
    let cert = crossing_from_witness(
        &wit,
        &action,
        &CrossingPoint::Real(QuadraticNumber::sqrt(2)),
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        cert.mode == CrossingMode::AffineExact,
        "mode {:?}",
        cert.mode
    );
    ensure!(
        cert.w == CrossingPoint::Real(q("1/32*sqrt2+23/16")),
        "w = {}",
        cert.w
    );
    let report = verify_crossing(&cert).map_err(|e| e.to_string())?;
    ensure!(
        report.valid && !report.partial,
        "certificate rejected: {report:?}"
    );
    let bs = Family::bs(2);
    let ball = Ball::generate(bs, 5).unwrap();
    for o in enumerate_c_orderings(bs).unwrap() {
        let act = Action::realization(o.clone());
        let found = detect_crossing(
            &act,
            &ball,
            &act.default_basepoints(),
            CrossingMode::Bounded { n_max: 64 },
        )
        .map_err(|e| e.to_string())?;
        ensure!(found.is_none(), "{o}: crossing found {found:?}");
    }
    Ok(format!(
        "M={} N={}; no crossing for the 4 flip realizations on Ball(5)",
        cert.m, cert.n
    ))
}

fn criterion_5() -> Outcome {
    let bs = Family::bs(2);
    let mut samples = Vec::new();
    for e in ["0", "1", "-1", "3", "1/2", "-3/4", "5/3", "7/2"] {
        for side in ["+", "-"] {
            samples.push(format!("smirnov:{e}:{side}"));
        }
    }
    samples.push("smirnov:-10:+".into());
    for e in ["sqrt2", "1+sqrt2", "sqrt3"] {
        samples.push(format!("smirnov:{e}"));
    }
    ensure!(samples.len() == 20, "{} samples", samples.len());
    let ball = Ball::generate(bs, 8).unwrap();
    let width = BigRational::new(1.into(), BigInt::from(1) << 20);
    for s in &samples {
        let ord = desc(s, bs);
        let induced = smirnov_action(&ord).map_err(|e| e.to_string())?;
        for g in ball.iter() {
            ensure!(
                induced.induced_sign(g).to_sign() == Some(ord.sign_of(g).unwrap()),
                "{s}: induced sign differs at {g}"
            );
        }
        let OrderingDescriptor::Smirnov { epsilon, .. } = &ord else {
            unreachable!()
        };
        let rec = recover_epsilon(&ord, 20).map_err(|e| e.to_string())?;
        ensure!(rec.contains(epsilon), "{s}: {rec:?} misses the parameter");
        ensure!(rec.width().unwrap() <= width, "{s}: interval too wide");
    }
    for o in enumerate_c_orderings(bs).unwrap() {
        let rec = recover_epsilon(&o, 20).map_err(|e| e.to_string())?;
        ensure!(
            matches!(rec, EpsilonRecovery::NotSmirnov { .. }),
            "{o}: {rec:?}"
        );
    }
    Ok("20 Smirnov samples agree on Ball(8) and are recovered to width 2^-20".into())
}

fn criterion_6() -> Outcome {
    let bs = Family::bs(2);
    let flips = enumerate_c_orderings(bs).unwrap();
    for o in &flips {
        for r in 1..=10 {
            let yes = isolation_probe(o, &CandidateSet::Smirnov, r).map_err(|e| e.to_string())?;
            ensure!(yes.found.is_some(), "{o}: no Smirnov approximant at R={r}");
            let no = isolation_probe(o, &CandidateSet::COrderings, r).map_err(|e| e.to_string())?;
            ensure!(
                no.found.is_none(),
                "{o}: C-ordering approximant at R={r}: {:?}",
                no.found
            );
        }
    }

    let ball8 = Ball::generate(bs, 8).unwrap();
    let xi = AffineAction::standard(2);
    let pairs = [
        ("b", "sqrt2"),
        ("a", "sqrt2"),
        ("b^-1 a^3", "sqrt3"),
        ("a^-2 b^2", "1+sqrt2"),
        ("b^-2 a^5 b^-1", "sqrt5"),
        ("a b a", "-1/3*sqrt2"),
        ("b^3 a^-1", "7/4"),
        ("b^-1", "-5/2"),
        ("a^4 b^-2 a", "sqrt7"),
        ("b a^-3 b^-1", "2*sqrt3+1"),
    ];
    for (w, e) in pairs {
        let g = bs2(w);
        let eps = q(e);
        let side = if eps.is_rational() {
            Side::PlusLimit
        } else {
            Side::Exact
        };
        let ord = OrderingDescriptor::smirnov(2, eps.clone(), side).unwrap();
        let moved = xi.image(&g).inverse().apply(&eps);
        let expected = OrderingDescriptor::smirnov(2, moved, side).unwrap();
        let r = agreement_on_ball(&ord.conjugate(&g).unwrap(), &expected, &ball8)
            .map_err(|e| e.to_string())?;
        ensure!(
            r.witness.is_none(),
            "g={w}, e={e}: disagreement at {:?}",
            r.witness
        );
    }

    let sample: Vec<OrderingDescriptor> = [
        "flip:00",
        "flip:01",
        "flip:10",
        "flip:11",
        "smirnov:sqrt2",
        "smirnov:sqrt2+1/1000",
        "smirnov:-sqrt2",
        "smirnov:3:+",
        "smirnov:3:-",
        "smirnov:1/2:+",
        "smirnov:sqrt3:opp",
        "smirnov:100+sqrt2",
        "smirnov:-100+sqrt2",
        "opposite:smirnov:sqrt5",
        "conj[b]:smirnov:sqrt2",
        "conj[a^-1]:flip:01",
        "smirnov:5/4*sqrt2",
        "smirnov:1:-:opp",
        "smirnov:-7/3:+",
        "smirnov:sqrt2/2",
    ]
    .iter()
    .map(|s| desc(s, bs))
    .collect();
    ensure!(sample.len() == 20, "{} descriptors", sample.len());
    let n = sample.len();
    let mut dist = vec![vec![BigRational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                dist[i][j] = agreement_on_ball(&sample[i], &sample[j], &ball8)
                    .unwrap()
                    .distance;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            ensure!(
                dist[i][j] == dist[j][i],
                "asymmetric distance {} {}",
                sample[i],
                sample[j]
            );
            for k in 0..n {
                let bound = std::cmp::max(&dist[i][j], &dist[j][k]);
                ensure!(
                    &dist[i][k] <= bound,
                    "ultrametric fails on ({}, {}, {})",
                    sample[i],
                    sample[j],
                    sample[k]
                );
            }
        }
    }
    Ok(
        "isolation R=1..10 contrast holds; 10 conjugacy pairs; ultrametric on 20 descriptors"
            .into(),
    )
}

fn criterion_7() -> Outcome {
    let z = Family::Abelian { n: 1 };
    let ball3 = Ball::generate(z, 3).unwrap();
    let mut classes: Vec<Vec<Sign>> = Vec::new();
    for d in [
        "1", "2", "1/3", "-1", "-5/2", "sqrt2", "-sqrt3", "7", "1+sqrt2", "-1/100",
    ] {
        let p = pattern(&desc(&format!("slope:{d}"), z), &ball3);
        if !classes.contains(&p) {
            classes.push(p);
        }
    }
    ensure!(
        classes.len() == 2,
        "Z: {} classes on Ball(3)",
        classes.len()
    );

    let z2 = Family::Abelian { n: 2 };
    let directions = [
        "slope:1,0",
        "slope:0,1",
        "slope:-1,0",
        "slope:0,-1",
        "slope:1,1",
        "slope:1,-1",
        "slope:3,7",
        "slope:-2,5",
        "slope:5,-3",
        "slope:1/2,-7/3",
        "slope:1,0:2,1",
        "slope:2,1:2,1",
    ];
    for d in directions {
        let o = desc(d, z2);
        for r in 1..=8 {
            let rep = isolation_probe(&o, &CandidateSet::SlopePerturbations, r)
                .map_err(|e| e.to_string())?;
            let found = rep.found.ok_or(format!("{d}: isolated at R={r}"))?;
            let ball = Ball::generate(z2, r).unwrap();
            ensure!(
                first_disagreement(&o, &found, ball.elements()).is_none(),
                "{d}: {found} disagrees"
            );
        }
    }
    Ok(format!(
        "Z has 2 classes; {} rational directions of Z^2 non-isolated for R<=8",
        directions.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut descriptors: Vec<OrderingDescriptor> = Vec::new();
    for f in [
        Family::bs(2),
        Family::bs(3),
        Family::Tararin { n: 1 },
        Family::Tararin { n: 2 },
        Family::Tararin { n: 3 },
        Family::Cn { n: 1 },
        Family::Abelian { n: 1 },
    ] {
        descriptors.extend(enumerate_c_orderings(f).unwrap());
    }
    for f in [
        Family::Tararin { n: 4 },
        Family::Cn { n: 2 },
        Family::Cn { n: 3 },
    ] {
        let all = enumerate_c_orderings(f).unwrap();
        let step = all.len() / 4;
        descriptors.extend(all.into_iter().step_by(step));
    }
    let bs = Family::bs(2);
    for s in [
        "smirnov:sqrt2",
        "smirnov:3:+",
        "smirnov:-1/2:-",
        "smirnov:1+sqrt2:opp",
        "opposite:smirnov:sqrt3",
        "conj[b^-1 a]:smirnov:sqrt2",
        "conj[a]:flip:11",
    ] {
        descriptors.push(desc(s, bs));
    }
    descriptors.push(desc("smirnov:sqrt5", Family::bs(3)));
    for s in [
        "slope:sqrt2,1",
        "slope:1,0",
        "slope:3,-2:2,1",
        "opposite:slope:1,sqrt3",
    ] {
        descriptors.push(desc(s, Family::Abelian { n: 2 }));
    }
    descriptors.push(desc("slope:1,sqrt2,-3", Family::Abelian { n: 3 }));
    let enumerations = [
        Enumeration::BallOrder,
        Enumeration::Reversed,
        Enumeration::Shuffled { seed: 2024 },
    ];
    let zero = BigRational::from_integer(0.into());
    for o in &descriptors {
        let ball = Ball::generate(o.family(), 4).unwrap();
        for en in &enumerations {
            let table =
                dynamical_realization(o, &ball, &en.list(&ball)).map_err(|e| e.to_string())?;
            ensure!(
                table.t(&o.family().identity()) == Some(&zero),
                "{o} {en:?}: t(id) != 0"
            );
            let r = realization_action_check(&table, o, &ball);
            ensure!(r.monotone, "{o} {en:?}: t is not order-preserving");
            ensure!(
                r.pass,
                "{o} {en:?}: action check failed: {:?}",
                r.violations.first()
            );
        }
    }
    Ok(format!(
        "{} descriptors x 3 enumerations of Ball(4)",
        descriptors.len()
    ))
}

fn criterion_9() -> Outcome {
    let families = [
        Family::bs(2),
        Family::bs(3),
        Family::Tararin { n: 1 },
        Family::Tararin { n: 2 },
        Family::Tararin { n: 3 },
        Family::Tararin { n: 4 },
        Family::Cn { n: 3 },
    ];
    for f in families {
        let r = verify_presentation(&f);
        ensure!(
            r.pass,
            "{f}: relator fails: {:?}",
            r.relators.iter().find(|x| !x.holds)
        );
    }
    for f in families
        .iter()
        .copied()
        .chain([Family::Cn { n: 1 }, Family::Abelian { n: 2 }])
    {
        let b3 = Ball::generate(f, 3).unwrap();
        let els = b3.elements();
        for g in els {
            for h in els {
                let gh = g.mul(h);
                for k in els {
                    ensure!(
                        gh.mul(k) == g.mul(&h.mul(k)),
                        "{f}: ({g})({h})({k}) not associative"
                    );
                }
            }
        }
        let id = f.identity();
        for g in Ball::generate(f, 4).unwrap().iter() {
            let gi = g.inv();
            ensure!(
                g.mul(&gi) == id && gi.mul(g) == id,
                "{f}: inverse law fails at {g}"
            );
        }
    }
    Ok("presentations verified; associativity on Ball(3) and inverses on Ball(4)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("C-ordering counts", criterion_1),
        ("bi-invariance contrast", criterion_2),
        ("non-Conradian witness", criterion_3),
        ("crossing round-trip", criterion_4),
        ("classification consistency", criterion_5),
        ("space topology probes", criterion_6),
        ("rank-1 dichotomy", criterion_7),
        ("realization properties", criterion_8),
        ("presentation and arithmetic soundness", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
