//! Printing then parsing returns the same polynomial, and twisted-ring laws
//! hold on arbitrary seeds.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use keypoly::graded::GradedRing;
use keypoly::parse::parse_field;
use keypoly::poly::{poly_string, random_poly};

const FIELDS: &[&str] = &["Qp(2)", "Qp(5)", "Fq(3,t)", "Fq(4,t)", "FpPerf(2,t)", "FpPerf(3,t)", "FpC(3,c,t)"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_print_parse(seed in any::<u64>(), fi in 0..FIELDS.len(), deg in 0usize..5) {
        let pf = parse_field(FIELDS[fi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&pf.field, deg, &mut rng);
        let s = poly_string(&f, &pf.field);
        prop_assert_eq!(pf.poly(&s).unwrap(), f, "{}", s);
    }

    #[test]
    fn graded_laws(seed in any::<u64>(), fi in 0..FIELDS.len()) {
        let pf = parse_field(FIELDS[fi]).unwrap();
        let r = GradedRing::new(&pf.field);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (r.random_element(3, &mut rng), r.random_element(3, &mut rng), r.random_element(3, &mut rng));
        prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
        prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
        prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
        // Frobenius is additive in characteristic p
        prop_assert_eq!(r.frobenius(&r.add(&x, &y)), r.add(&r.frobenius(&x), &r.frobenius(&y)));
        // graded printing parses back
        let text = r.display(&x);
        prop_assert_eq!(pf.graded(&r, &text).unwrap(), x, "{}", text);
    }
}
