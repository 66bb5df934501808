//! Analyzer properties over corpora: Kähler invariants, the tameness flip
//! on Artin–Schreier input, and stable values on an expression corpus.

mod common;

use keypoly::analyzer::{
    kahler, stable_value, tame_report, KahlerKind, StableConfig, StableOutcome, TameWitness, Tameness,
};
use keypoly::engine::{induced_value, mac_lane_chains, Bounds, Induced};
use keypoly::graded::{FrobeniusWitness, Surjectivity};
use keypoly::parse::{parse_expr, parse_field};
use keypoly::poly::KPoly;
use keypoly::{Value, ValuedField};

fn corpus() -> Vec<(ValuedField, KPoly)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let k = ValuedField::qp(p);
        out.extend(common::small_corpus().iter().step_by(7).map(|c| (k.clone(), common::kpoly(&k, c))));
    }
    for (f, q, u) in common::FUNCTION_FIELDS {
        let pf = parse_field(f).unwrap();
        out.extend(common::function_field_corpus(f, *q, u).iter().map(|g| (pf.field.clone(), pf.poly(g).unwrap())));
    }
    out
}

#[test]
fn kahler_invariants() {
    let (mut inertial, mut ramified) = (0, 0);
    for (k, g) in corpus() {
        let r = mac_lane_chains(&k, &g, Bounds::default()).unwrap();
        let kr = match kahler(&r) {
            Err(keypoly::Error::ResidueNotGenerated | keypoly::Error::GammaNotPositive) => continue,
            other => other.unwrap(),
        };
        match kr.kind {
            KahlerKind::PurelyInertial => {
                inertial += 1;
                // finite residue fields: separable, so g'(η) is a unit
                let Induced::Value(v) = induced_value(&r, 0, &g.derivative(&k)).unwrap() else { panic!() };
                assert_eq!(v, Value::zero());
                assert!(kr.omega_trivial);
            }
            KahlerKind::PurelyRamified => {
                ramified += 1;
                if k.value_group_p_divisible() == keypoly::value::Divisibility::Yes {
                    assert!(kr.omega_trivial, "{}", k.name());
                } else {
                    assert!(!kr.omega_trivial && kr.annihilator.is_some());
                }
            }
            KahlerKind::Neither => {
                let b = &r.branches[0];
                assert!(!r.unibranched || !b.is_terminated() || (b.e as usize != r.n && b.f as usize != r.n));
            }
        }
    }
    assert!(inertial >= 10 && ramified >= 10, "{inertial} {ramified}");
}

fn suite(field: &str, gs: &[String]) -> (ValuedField, Vec<KPoly>) {
    let pf = parse_field(field).unwrap();
    let polys = gs.iter().map(|g| pf.poly(g).unwrap()).collect();
    (pf.field, polys)
}

#[test]
fn tameness_flips_on_artin_schreier() {
    // unibranched defectless entries only: Eisenstein and inert reductions
    let tame: Vec<String> = common::function_field_corpus("FpPerf(3,t)", 3, "t^(1/3)")
        .into_iter()
        .filter(|g| !g.contains("x^2 - x") && !g.contains("x*(x") && !g.contains("x^2 - (1+t)") && !g.contains("x^3 - x^2"))
        .collect();
    let (k, polys) = suite("FpPerf(3,t)", &tame);
    let rep = tame_report(&k, &polys, Bounds::default());
    assert_eq!(rep.gr_perfect, Surjectivity::Yes);
    let filtered: Vec<KPoly> = polys
        .iter()
        .zip(&rep.per_extension)
        .filter(|(_, e)| matches!(e.fcs, Ok(keypoly::engine::FcsOutcome::Sequence { .. })))
        .map(|(g, _)| g.clone())
        .collect();
    let rep = tame_report(&k, &filtered, Bounds::default());
    assert_eq!(rep.overall, Tameness::TameEvidence);
    assert!(filtered.len() >= 10);

    let mut with_as = filtered.clone();
    with_as.push(parse_field("FpPerf(3,t)").unwrap().poly("x^3 - x - 1/t").unwrap());
    let rep = tame_report(&k, &with_as, Bounds::default());
    match rep.overall {
        Tameness::NotTame(TameWitness::Extension { index, .. }) => assert_eq!(index, filtered.len()),
        other => panic!("{other:?}"),
    }

    let (q2, polys) = suite("Qp(2)", &["x^2 + x + 1".to_string()]);
    let rep = tame_report(&q2, &polys, Bounds::default());
    assert!(matches!(rep.overall, Tameness::NotTame(TameWitness::GradedImperfect(FrobeniusWitness::Value(_)))));
}

/// Expressions with recorded seeds; each stabilizes and stays stable.
const STABLE_CORPUS: &[(&str, u64)] = &[
    ("S", 0),
    ("S^2", 1),
    ("S + T", 2),
    ("S - c_1 T", 3),
    ("S - c_1 T - c_2 T^2", 4),
    ("(S - c_1 T)^2", 5),
    ("1/S", 6),
    ("S/T", 7),
    ("S^3 + T^5", 8),
    ("T^2 + S^2", 9),
    ("S - T", 10),
    ("1/(S - c_1 T)", 11),
    ("S (S - c_1 T)", 12),
    ("S^2 - c_1^2 T^2", 13),
    ("S^2 + S", 14),
    ("T/(1 + S)", 15),
    ("S - c_1 T - c_2 T^2 - c_3 T^3", 16),
    ("S^4", 17),
    ("c_2 S + T^3", 18),
    ("(S - c_1 T)/T^2", 19),
];

#[test]
fn stable_values_persist() {
    assert_eq!(STABLE_CORPUS.len(), 20);
    for p in [2, 3] {
        for (src, seed) in STABLE_CORPUS {
            let e = parse_expr(src).unwrap();
            let out = stable_value(&e, StableConfig { p, l_start: 1, l_max: 12, seed: *seed }).unwrap();
            match out {
                StableOutcome::Stable { persistent, l0, .. } => {
                    assert!(persistent, "{src} p={p}");
                    assert!(l0 <= 10, "{src} p={p}");
                }
                StableOutcome::NotStabilized(run) => panic!("{src} p={p}: {:?}", run.trajectory),
            }
        }
    }
}
