//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use keypoly::analyzer::{kahler, stable_value, KahlerKind, StableConfig, StableOutcome};
use keypoly::arith::{FfElem, Field, Poly};
use keypoly::engine::{
    finite_complete_sequence, mac_lane_chains, psi_m_scan, Bounds, BranchStatus, Defect, ExtensionReport,
    FcsOutcome, ScanOutcome,
};
use keypoly::fields::ResidueElement;
use keypoly::graded::{FrobeniusWitness, GradedRing, GradedTerm, Surjectivity};
use keypoly::parse::parse_expr;
use keypoly::poly::KPoly;
use keypoly::value::{q, qi, Value};
use keypoly::{FieldElement, ValuedField};

use common::{kpoly, oracle, small_corpus};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(k: &ValuedField, g: &KPoly) -> ExtensionReport {
    mac_lane_chains(k, g, Bounds::default()).unwrap()
}

fn shape(r: &ExtensionReport) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = r.branches.iter().map(|b| (b.e, b.f)).collect();
    v.sort();
    v
}

fn golden() -> Outcome {
    let q2 = ValuedField::qp(2);
    let r = run(&q2, &kpoly(&q2, &[-2, 0, 1]));
    let b = &r.branches[0];
    ensure(r.branches.len() == 1 && (b.e, b.f, b.d) == (2, 1, Defect::Exact(1)), || format!("sqrt2 {:?}", shape(&r)))?;
    ensure(shape(&r) == oracle(&[-2, 0, 1], 2), || "sqrt2 oracle".into())?;
    let FcsOutcome::Sequence { keys, .. } = finite_complete_sequence(&r, 0).unwrap() else {
        return Err("sqrt2 has no sequence".into());
    };
    let want = vec![(kpoly(&q2, &[0, 1]), Value::rat(1, 2)), (kpoly(&q2, &[-2, 0, 1]), Value::Infinity)];
    ensure(keys == want, || format!("sqrt2 sequence {keys:?}"))?;

    let r = run(&q2, &kpoly(&q2, &[1, 1, 1]));
    let b = &r.branches[0];
    ensure(r.branches.len() == 1 && (b.e, b.f, b.d) == (1, 2, Defect::Exact(1)), || "x^2+x+1".into())?;
    ensure(shape(&r) == oracle(&[1, 1, 1], 2), || "x^2+x+1 oracle".into())?;

    let q5 = ValuedField::qp(5);
    let r = run(&q5, &kpoly(&q5, &[1, 0, 1]));
    ensure(shape(&r) == vec![(1, 1), (1, 1)] && r.sum_check.sum == 2, || "x^2+1 over Q5".into())?;
    ensure(shape(&r) == oracle(&[1, 0, 1], 5), || "x^2+1 oracle".into())?;

    // single slope v(t)/3 = 1/3 in lowest terms gives e = 3
    let ft = ValuedField::fq_t(2).unwrap();
    let g = Poly::from_coeffs(&ft, vec![ft.t(), ft.zero(), ft.zero(), ft.one()]);
    let r = run(&ft, &g);
    let b = &r.branches[0];
    let slope = q(1, 3);
    let e = slope.denom().to_string().parse::<u64>().unwrap();
    ensure(r.branches.len() == 1 && (b.e, b.f, b.d) == (e, 1, Defect::Exact(1)), || "x^3+t".into())?;
    Ok("4 golden extensions, Q cases match the root oracle".into())
}

fn eta(k: &ValuedField, l: u32) -> FieldElement {
    (1..=l).fold(k.zero(), |acc, i| k.add(&acc, &k.uniformizer_pow(&q(-1, 1 << i))))
}

fn defect_trajectory() -> Outcome {
    let k = ValuedField::fp_perf_t(2);
    let g = Poly::from_coeffs(&k, vec![k.inv(&k.t()).unwrap(), k.one(), k.one()]);
    let r = run(&k, &g);
    ensure(r.branches.len() == 1, || "branched".into())?;
    let b = &r.branches[0];
    ensure(matches!(b.status, BranchStatus::LimitSuspected { .. }), || format!("{:?}", b.status))?;
    ensure(b.d == Defect::LowerBound(2), || format!("d = {:?}", b.d))?;
    let ScanOutcome::UnboundedEvidence(ev) = psi_m_scan(&r, 0, 1, 6).unwrap().outcome else {
        return Err("no Ψ_1 evidence".into());
    };
    ensure(ev.len() == 6, || format!("{} evidence entries", ev.len()))?;
    for l in 1..=6u32 {
        let e = eta(&k, l);
        // direct evaluation in the perfect closure
        let ge = g.eval(&e, &k);
        let want = k.neg(&k.uniformizer_pow(&q(-1, 1 << l)));
        ensure(ge == want, || format!("g(η_{l}) = {}", k.display(&ge)))?;
        ensure(k.valuate(&ge) == Value::Finite(q(-1, 1 << l)), || format!("v(g(η_{l}))"))?;
        let (key, value) = &ev[l as usize - 1];
        let lin = Poly::from_coeffs(&k, vec![k.neg(&e), k.one()]);
        ensure(*key == lin, || format!("key {l} is not x - η_{l}"))?;
        ensure(*value == Value::Finite(q(-1, 1 << (l + 1))), || format!("Ψ_1 value {l} = {value}"))?;
    }
    Ok("LIMIT_SUSPECTED, g(η_l) = -t^(-1/2^l) and Ψ_1 = -2^-(l+1) for l = 1..6, d >= 2".into())
}

fn frobenius() -> Outcome {
    for p in [2, 3, 5] {
        let s = GradedRing::new(&ValuedField::qp(p)).frobenius_surjective();
        ensure(matches!(s, Surjectivity::No(FrobeniusWitness::Value(_))), || format!("Qp({p}) {s:?}"))?;
        let k = ValuedField::fp_c_t(p);
        let c = k.residue(&k.c().unwrap()).unwrap();
        let s = GradedRing::new(&k).frobenius_surjective();
        ensure(s == Surjectivity::No(FrobeniusWitness::Residue(c)), || format!("FpC({p}) {s:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2, 3] {
        let r = GradedRing::new(&ValuedField::fp_perf_t(p));
        ensure(r.frobenius_surjective() == Surjectivity::Yes, || format!("FpPerf({p})"))?;
        for _ in 0..100 {
            let t = GradedTerm { coeff: r.residue_field().random_nonzero(&mut rng), exp: r.random_exponent(&mut rng) };
            let root = r.pth_root(&t).map_err(|e| format!("pth_root {e:?}"))?;
            ensure(r.frobenius(&r.term_element(&root)) == r.term_element(&t), || "frobenius(root) differs".into())?;
        }
    }
    Ok("Qp NO(value), FpC NO(residue c), FpPerf YES with 200 root checks".into())
}

fn overridden_q3() -> ValuedField {
    ValuedField::qp(3)
        .with_choice_overrides(vec![(qi(1), FieldElement::Rational(qi(3))), (qi(2), FieldElement::Rational(qi(18)))])
        .unwrap()
}

fn ring_laws() -> Outcome {
    let perf = ValuedField::fp_perf_t(3);
    let perf_twisted = perf.with_choice_overrides(vec![(qi(1), perf.mul(&perf.from_int(2), &perf.t()))]).unwrap();
    let fields = vec![
        ValuedField::qp(2),
        ValuedField::qp(3),
        overridden_q3(),
        ValuedField::fq_t(4).unwrap(),
        ValuedField::fp_perf_t(2),
        perf,
        perf_twisted,
        ValuedField::fp_c_t(2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in &fields {
        let r = GradedRing::new(k);
        for _ in 0..200 {
            let x = r.random_element(3, &mut rng);
            let y = r.random_element(3, &mut rng);
            let z = r.random_element(3, &mut rng);
            ensure(r.mul(&x, &y) == r.mul(&y, &x), || format!("{}: commutativity", k.name()))?;
            ensure(r.mul(&r.mul(&x, &y), &z) == r.mul(&x, &r.mul(&y, &z)), || format!("{}: associativity", k.name()))?;
            ensure(
                r.mul(&x, &r.add(&y, &z)) == r.add(&r.mul(&x, &y), &r.mul(&x, &z)),
                || format!("{}: distributivity", k.name()),
            )?;
        }
        let pairs: Vec<_> = (0..200)
            .map(|_| loop {
                let (a, b) = (k.random_integral(&mut rng), k.random_integral(&mut rng));
                if !k.is_zero(&a) && !k.is_zero(&b) {
                    break (a, b);
                }
            })
            .collect();
        let fails = r.check_psi_homomorphism(&pairs).unwrap();
        ensure(fails.is_empty(), || format!("{}: {} ψ failures", k.name(), fails.len()))?;
    }
    // ε̄(1,1) = res(3·3/18) = res(1/2) = 2 in F_3
    let r = GradedRing::new(&overridden_q3());
    let t1 = r.term(ResidueElement::Finite(FfElem::Prime(1)), qi(1)).unwrap();
    let want = r.term(ResidueElement::Finite(FfElem::Prime(2)), qi(2)).unwrap();
    ensure(r.mul(&t1, &t1) == want, || format!("override product {}", r.display(&r.mul(&t1, &t1))))?;
    Ok(format!("{} fields x 200 cases, override t^1 x t^1 = 2*t^2", fields.len()))
}

fn full_corpus() -> Vec<(ValuedField, KPoly)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        let k = ValuedField::qp(p);
        out.extend(small_corpus().iter().map(|c| (k.clone(), kpoly(&k, c))));
    }
    for (f, qq, u) in common::FUNCTION_FIELDS {
        let pf = keypoly::parse::parse_field(f).unwrap();
        for g in common::function_field_corpus(f, *qq, u) {
            out.push((pf.field.clone(), pf.poly(&g).unwrap()));
        }
    }
    for (f, g) in common::DEFECT_CASES {
        let pf = keypoly::parse::parse_field(f).unwrap();
        out.push((pf.field.clone(), pf.poly(g).unwrap()));
    }
    out
}

fn linkage() -> Outcome {
    let corpus = full_corpus();
    let mut sequences = 0;
    for (k, g) in &corpus {
        let r = run(k, g);
        let b = &r.branches[0];
        let expect = r.branches.len() == 1 && b.is_terminated() && b.d == Defect::Exact(1);
        let got = finite_complete_sequence(&r, 0).unwrap();
        let name = || format!("{} {}", k.name(), keypoly::poly::poly_string(g, k));
        match got {
            FcsOutcome::Sequence { checked, .. } => {
                ensure(expect, || format!("{}: sequence on a non-qualifying branch", name()))?;
                ensure(checked == 100, || format!("{}: checked {checked}", name()))?;
                sequences += 1;
            }
            FcsOutcome::None(reason) => ensure(!expect, || format!("{}: {reason:?}", name()))?,
        }
    }
    Ok(format!("{} extensions, {sequences} sequences", corpus.len()))
}

fn kahler_examples() -> Outcome {
    let q2 = ValuedField::qp(2);
    let kr = kahler(&run(&q2, &kpoly(&q2, &[1, 1, 1]))).unwrap();
    ensure(
        kr.kind == KahlerKind::PurelyInertial && kr.omega_trivial && kr.annihilator == Some(Value::zero()),
        || format!("inertial {kr:?}"),
    )?;
    let kr = kahler(&run(&q2, &kpoly(&q2, &[-2, 0, 1]))).unwrap();
    ensure(
        kr.kind == KahlerKind::PurelyRamified && !kr.omega_trivial && kr.annihilator == Some(Value::rat(3, 2)),
        || format!("ramified discrete {kr:?}"),
    )?;
    let k = ValuedField::fp_perf_t(3);
    let g = Poly::from_coeffs(&k, vec![k.neg(&k.t()), k.zero(), k.one()]);
    let kr = kahler(&run(&k, &g)).unwrap();
    let l_n = kr.segments.iter().find(|(l, _)| *l == 2).map(|s| s.1.clone());
    ensure(
        kr.kind == KahlerKind::PurelyRamified && kr.omega_trivial && l_n == Some(Value::zero()),
        || format!("ramified non-discrete {kr:?}"),
    )?;
    Ok("inertial trivial, discrete ramified 3/2, non-discrete ramified trivial at l = n".into())
}

fn oracle_equivalence() -> Outcome {
    let corpus = small_corpus();
    let mut checked = 0;
    for p in [2, 3] {
        let k = ValuedField::qp(p);
        for c in &corpus {
            let r = run(&k, &kpoly(&k, c));
            let want = oracle(c, p);
            ensure(shape(&r) == want, || format!("Q{p} {c:?}: engine {:?}, oracle {want:?}", shape(&r)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} polynomials agree"))
}

fn stable() -> Outcome {
    let cases = [("S", 1, 1, 1), ("S - (c_1 T + c_2 T^2)", 1, 3, 3), ("1/T", 5, -1, 5)];
    for (src, l_start, value, l0) in cases {
        let e = parse_expr(src).unwrap();
        for seed in 0..10 {
            let out = stable_value(&e, StableConfig { p: 2, l_start, l_max: 12, seed }).unwrap();
            let StableOutcome::Stable { value: v, l0: l, persistent, .. } = out else {
                return Err(format!("{src} seed {seed}: not stabilized"));
            };
            ensure((v.clone(), l) == (Value::int(value), l0), || format!("{src} seed {seed}: ({v}, {l})"))?;
            ensure(persistent, || format!("{src} seed {seed}: not persistent"))?;
        }
    }
    Ok("3 expressions x 10 seeds, persistent to l_max = 12".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exact invariants, golden corpus", golden),
        ("defect trajectory", defect_trajectory),
        ("Frobenius criterion", frobenius),
        ("twisted-ring laws", ring_laws),
        ("sequence iff unibranched defectless", linkage),
        ("Kähler criteria", kahler_examples),
        ("oracle equivalence", oracle_equivalence),
        ("stable value", stable),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("criterion {}: PASS {name} ({d}; {secs:.2}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({d}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
