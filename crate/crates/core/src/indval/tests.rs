use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::random_poly;
use crate::value::ValueGroup;

fn zp(k: &ValuedField, c: &[i64]) -> KPoly {
    Poly::from_coeffs(k, c.iter().map(|&v| k.from_int(v)).collect())
}

fn half(k: &ValuedField) -> InductiveValuation {
    InductiveValuation::depth_zero(k, &k.zero(), Value::rat(1, 2))
}

#[test]
fn depth_zero_examples() {
    let k = ValuedField::qp(2);
    let mu = half(&k);
    assert_eq!(mu.evaluate(&zp(&k, &[8, 2, 1])), Value::int(1));
    assert_eq!(mu.evaluate(&zp(&k, &[0, 1])), Value::rat(1, 2));
    let g = InductiveValuation::gauss(&ValuedField::qp(3));
    assert_eq!(g.evaluate(&zp(g.field(), &[9, 3])), Value::int(1));
}

#[test]
fn augment_examples() {
    let k = ValuedField::qp(2);
    let nu = half(&k).augment(&zp(&k, &[-2, 0, 1]), Value::rat(3, 2)).unwrap();
    assert_eq!(nu.evaluate(&zp(&k, &[-4, 0, -4, 0, 1])), Value::int(3));
    assert_eq!(nu.value_group().unwrap(), ValueGroup::generated(crate::value::q(1, 2)));
    assert_eq!(nu.ram_indices(), vec![2, 1]);

    let t = half(&k).augment(&zp(&k, &[-2, 0, 1]), Value::Infinity).unwrap();
    assert_eq!(t.evaluate(&zp(&k, &[2, 0, 1])), Value::int(2));
    assert_eq!(t.evaluate(&zp(&k, &[-2, 0, 1])), Value::Infinity);
    assert_eq!(t.display_chain(), "μ0=[v; x-0, 1/2] → μ1=[μ0; x^2-2, inf]");
    assert!(matches!(t.augment(&zp(&k, &[0, 0, 0, 0, 1]), Value::Infinity), Err(Error::InfiniteGammaInInterior)));

    assert!(matches!(
        half(&k).augment(&zp(&k, &[-2, 0, 1]), Value::int(1)),
        Err(Error::ValueNotIncreased { .. })
    ));
    assert!(matches!(
        half(&k).augment(&zp(&k, &[1, 0, 1]), Value::int(5)),
        Err(Error::NotAKeyPolynomial(_))
    ));
    let g = InductiveValuation::gauss(&k).augment(&zp(&k, &[1, 1, 1]), Value::int(1)).unwrap();
    assert_eq!(g.evaluate(&zp(&k, &[1, 1, 1])), Value::int(1));
    assert_eq!(g.ram_indices(), vec![1]);
    assert_eq!(g.inertia_indices(), vec![2]);
}

#[test]
fn value_group_examples() {
    let k = ValuedField::qp(2);
    let mu = InductiveValuation::gauss(&k).augment(&zp(&k, &[0, 1]), Value::rat(1, 2)).unwrap();
    assert_eq!(mu.levels().len(), 1);
    assert_eq!(mu.value_group().unwrap(), ValueGroup::generated(crate::value::q(1, 2)));
    assert_eq!(mu.ram_indices(), vec![2]);
    let g = InductiveValuation::gauss(&ValuedField::fq_t(3).unwrap());
    assert_eq!(g.value_group().unwrap(), ValueGroup::integers());
    assert!(g.ram_indices().is_empty());
}

#[test]
fn equivalence_and_minimality() {
    let k = ValuedField::qp(2);
    let g = InductiveValuation::gauss(&k);
    assert!(g.equiv_test(&zp(&k, &[2, 1]), &zp(&k, &[0, 1])).unwrap());
    assert!(g.equiv_test(&zp(&k, &[3, 1]), &zp(&k, &[3, 1])).unwrap());
    assert!(!g.equiv_test(&zp(&k, &[0, 1]), &zp(&k, &[1])).unwrap());
    assert_eq!(g.equiv_test(&Poly::zero(), &zp(&k, &[1])), Err(Error::ZeroInput));

    assert!(g.is_minimal(&zp(&k, &[0, 1])));
    assert!(half(&k).is_minimal(&zp(&k, &[-2, 0, 1])));
    // x^2 is Gauss-minimal but not a key polynomial: its residual y^2 is reducible
    assert!(g.is_minimal(&zp(&k, &[0, 0, 1])));
    assert!(!g.is_key_polynomial(&zp(&k, &[0, 0, 1])).unwrap());
    // in(x^2 + 1) = in(1) is a unit, so x^2 + 1 divides constants
    assert!(!half(&k).is_minimal(&zp(&k, &[1, 0, 1])));
}

#[test]
fn residual_examples() {
    let k = ValuedField::qp(2);
    let g = InductiveValuation::gauss(&k);
    let f2 = FiniteField::prime(2);
    let r = g.residual_polynomial(&zp(&k, &[1, 1, 1])).unwrap();
    assert_eq!(r, Poly::from_coeffs(&f2, vec![FfElem::Prime(1); 3]));
    let r = half(&k).residual_polynomial(&zp(&k, &[-2, 0, 1])).unwrap();
    assert_eq!(r, Poly::from_coeffs(&f2, vec![FfElem::Prime(1), FfElem::Prime(1)]));
    // a single attaining term gives a monomial
    let r = half(&k).residual_polynomial(&zp(&k, &[8, 0, 1])).unwrap();
    assert_eq!(r.coeffs().iter().filter(|c| !f2.is_zero(c)).count(), 1);

    let c = ValuedField::fp_c_t(2);
    let gc = InductiveValuation::gauss(&c);
    assert_eq!(gc.residual_polynomial(&zp(&c, &[1, 1])), Err(Error::ImperfectResidueUnsupported));
}

#[test]
fn lifted_keys_have_prescribed_residuals() {
    let k = ValuedField::qp(2);
    let f2 = FiniteField::prime(2);
    let mu = half(&k).augment(&zp(&k, &[2, 0, 1]), Value::rat(3, 2)).unwrap();
    let psi = Poly::from_coeffs(&f2, vec![FfElem::Prime(1); 3]);
    let key = residual::lift_key(mu.levels(), &k, 1, &psi);
    assert_eq!(key.degree(), Some(4));
    assert!(mu.is_key_polynomial(&key).unwrap());
    assert_eq!(mu.residual_polynomial(&key).unwrap().make_monic(&f2), psi);
    let nu = mu.augment(&key, Value::int(4)).unwrap();
    assert_eq!(nu.residual_field().unwrap().abs_degree(), 2);
    assert_eq!(nu.inertia_indices(), vec![1, 2]);

    // a ramified level over F_4 followed by a lift of y + g
    let f = ValuedField::fq_t(2).unwrap();
    let g = InductiveValuation::gauss(&f).augment(&zp(&f, &[1, 1, 1]), Value::rat(1, 2)).unwrap();
    let f4 = g.residual_field().unwrap();
    assert_eq!(f4.abs_degree(), 2);
    let psi = Poly::from_coeffs(&f4, vec![f4.generator(), f4.one()]);
    let key = residual::lift_key(g.levels(), &f, 1, &psi);
    assert_eq!(key.degree(), Some(4));
    assert!(g.is_key_polynomial(&key).unwrap());
    assert_eq!(g.residual_polynomial(&key).unwrap().make_monic(&f4), psi);
}

#[test]
fn augmentation_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cases = {
        let k = ValuedField::qp(2);
        let mu = half(&k);
        let nu = mu.augment(&zp(&k, &[2, 0, 1]), Value::rat(3, 2)).unwrap();
        let f = ValuedField::fp_perf_t(3);
        let x = InductiveValuation::gauss(&f);
        let y = x.augment(&zp(&f, &[1, 0, 1]), Value::rat(1, 3)).unwrap();
        vec![(k.clone(), mu, nu), (f, x, y)]
    };
    for i in 0..500 {
        let (k, mu, nu) = &cases[i % 2];
        let f = random_poly(k, i % 7, &mut rng);
        assert!(mu.evaluate(&f) <= nu.evaluate(&f));
    }
}

#[test]
fn evaluate_is_a_valuation() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let k = ValuedField::qp(3);
    let mu = InductiveValuation::depth_zero(&k, &k.from_int(1), Value::rat(1, 2))
        .augment(&zp(&k, &[4, -2, 1]), Value::rat(7, 4))
        .unwrap();
    for i in 0..150 {
        let f = random_poly(&k, i % 5, &mut rng);
        let g = random_poly(&k, (i + 2) % 4, &mut rng);
        assert_eq!(mu.evaluate(&f.mul(&g, &k)), &mu.evaluate(&f) + &mu.evaluate(&g));
        assert!(mu.evaluate(&f.add(&g, &k)) >= mu.evaluate(&f).min(mu.evaluate(&g)));
    }
}

#[test]
fn truncation_examples() {
    let k = ValuedField::qp(2);
    let gauss = InductiveValuation::gauss(&k);
    let sqrt2 = half(&k).augment(&zp(&k, &[-2, 0, 1]), Value::Infinity).unwrap();
    let nu = |f: &KPoly| sqrt2.evaluate(f);
    let x = zp(&k, &[0, 1]);
    let g = zp(&k, &[-2, 0, 1]);
    let f = zp(&k, &[3, 4, 1, 2]);
    assert_eq!(truncation_eval(|h| gauss.evaluate(h), &x, &f, &k).unwrap(), gauss.evaluate(&f));
    assert_eq!(truncation_eval(nu, &x, &g, &k).unwrap(), Value::int(1));
    assert_eq!(truncation_eval(nu, &g, &g, &k).unwrap(), Value::Infinity);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for i in 0..200 {
        let f = random_poly(&k, i % 6, &mut rng);
        assert!(truncation_eval(nu, &x, &f, &k).unwrap() <= nu(&f));
    }
}
