use super::*;
use crate::engine::Bounds;
use crate::parse::{parse_expr, parse_field};
use crate::value::q;

fn report(field: &str, g: &str) -> ExtensionReport {
    let pf = parse_field(field).unwrap();
    mac_lane_chains(&pf.field, &pf.poly(g).unwrap(), Bounds::default()).unwrap()
}

fn poly(field: &str, g: &str) -> KPoly {
    parse_field(field).unwrap().poly(g).unwrap()
}

#[test]
fn te_examples() {
    let te = te_conditions(&report("Qp(2)", "x^2-2"));
    assert!(!te.te1.holds && te.te2.holds && te.te3.holds && !te.te1.suspected);
    assert!(te_conditions(&report("Qp(2)", "x^2+x+1")).all_hold());
    let te = te_conditions(&report("Fq(2,t)", "x^3-t"));
    assert!(te.all_hold());
    let te = te_conditions(&report("FpPerf(2,t)", "x^2+x+1/t"));
    assert!(!te.te3.holds && te.te3.suspected);
}

#[test]
fn te1_witnesses() {
    let b = Bounds::default();
    for (f, g) in [("Qp(2)", "x^2-2"), ("Fq(2,t)", "x^2-t")] {
        let k = parse_field(f).unwrap().field;
        assert_eq!(te1_witness(&k, b), Te1Witness::Witness { g: poly(f, g), verified_index: Some(2) });
    }
    assert_eq!(te1_witness(&ValuedField::fp_perf_t(3), b), Te1Witness::NotApplicable);
}

#[test]
fn tameness() {
    let b = Bounds::default();
    let r = tame_report(&ValuedField::qp(2), &[poly("Qp(2)", "x^2-2")], b);
    assert_eq!(
        r.overall,
        Tameness::NotTame(TameWitness::GradedImperfect(FrobeniusWitness::Value(Value::int(1))))
    );
    let perf = ValuedField::fp_perf_t(2);
    let cube = poly("FpPerf(2,t)", "x^3+t");
    let r = tame_report(&perf, &[cube.clone()], b);
    assert_eq!(r.overall, Tameness::TameEvidence);
    let r = tame_report(&perf, &[cube, poly("FpPerf(2,t)", "x^2+x+1/t")], b);
    let Tameness::NotTame(TameWitness::Extension { index: 1, reason }) = r.overall else { panic!("{:?}", r.overall) };
    assert!(reason.contains("DefectSuspected"));
}

#[test]
fn algebraic_maximality() {
    assert_eq!(
        alg_max_evidence(&report("Qp(2)", "x^2-2"), 6).unwrap(),
        AlgMax::MaxAttained { a: ValuedField::qp(2).from_int(0), value: Value::rat(1, 2) }
    );
    let AlgMax::NoMaxEvidence(v) = alg_max_evidence(&report("Qp(5)", "x^2+1"), 4).unwrap() else { panic!() };
    assert_eq!(v, (1..=4).map(Value::int).collect::<Vec<_>>());
    let AlgMax::NoMaxEvidence(v) = alg_max_evidence(&report("FpPerf(2,t)", "x^2+x+1/t"), 3).unwrap() else { panic!() };
    assert_eq!(v, vec![Value::rat(-1, 4), Value::rat(-1, 8), Value::rat(-1, 16)]);
}

#[test]
fn kahler_examples() {
    let r = kahler_purely_inertial(&report("Qp(2)", "x^2+x+1")).unwrap();
    assert!(r.omega_trivial);
    assert_eq!(r.annihilator, Some(Value::zero()));
    let r = kahler_purely_inertial(&report("Qp(2)", "x^3+x+1")).unwrap();
    assert!(r.omega_trivial);
    assert_eq!(kahler_purely_inertial(&report("Qp(2)", "x^2-2")), Err(Error::NotPurelyInertial));
    assert_eq!(kahler_purely_inertial(&report("Qp(2)", "x^2+2x+4")), Err(Error::ResidueNotGenerated));

    let r = kahler_purely_ramified(&report("Qp(2)", "x^2-2")).unwrap();
    assert!(!r.omega_trivial);
    assert_eq!(r.annihilator, Some(Value::rat(3, 2)));
    let r = kahler_purely_ramified(&report("FpPerf(3,t)", "x^2-t")).unwrap();
    assert!(r.omega_trivial);
    assert_eq!(r.segments.last(), Some(&(2, Value::zero())));
    assert_eq!(kahler_purely_ramified(&report("Qp(2)", "x^2+x+1")), Err(Error::NotPurelyRamified));
    assert_eq!(kahler_purely_ramified(&report("Qp(3)", "x^2-2x-2")), Err(Error::GammaNotPositive));
    assert_eq!(kahler(&report("Qp(5)", "x^2+1")).unwrap().kind, KahlerKind::Neither);
}

#[test]
fn drvg() {
    assert_eq!(drvg_check(&ValueGroup::integers(), 2), Drvg::Fails("{0}".into(), "Z".into()));
    assert_eq!(drvg_check(&ValueGroup::hull(q(1, 1), 2), 2), Drvg::HoldsByPDivisibility);
    assert!(matches!(drvg_check(&ValueGroup::generated(q(1, 2)), 2), Drvg::Fails(..)));
}

fn sv(s: &str, l_start: usize, seed: u64) -> StableOutcome {
    stable_value(&parse_expr(s).unwrap(), StableConfig { p: 2, l_start, l_max: 12, seed }).unwrap()
}

#[test]
fn stable_examples() {
    let StableOutcome::Stable { value, coeff, l0, persistent, run } = sv("S", 1, 7) else { panic!() };
    assert_eq!((value, l0, persistent), (Value::int(1), 1, true));
    assert_eq!(coeff.as_ref(), Some(&run.samples[0]));
    let StableOutcome::Stable { value, coeff, l0, run, .. } = sv("S - (c_1 T + c_2 T^2)", 1, 7) else { panic!() };
    assert_eq!((value, l0), (Value::int(3), 3));
    assert_eq!(coeff.as_ref(), Some(&run.samples[2]));
    let StableOutcome::Stable { value, l0, .. } = sv("1/T", 4, 7) else { panic!() };
    assert_eq!((value, l0), (Value::int(-1), 4));
    assert!(matches!(
        stable_value(&parse_expr("S/0").unwrap(), StableConfig { p: 2, l_start: 1, l_max: 5, seed: 1 }),
        Err(Error::DenominatorVanishes)
    ));
}
