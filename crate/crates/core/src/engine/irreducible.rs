//! Advisory irreducibility checks for `g` over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factor, FfElem, FiniteField, Poly};
use crate::fields::{is_prime, FieldElement, ValuedField};
use crate::poly::KPoly;
use crate::value::q_display;

/// The monic integral `D^n g(y/D)`.
fn integral(g: &KPoly) -> Vec<BigInt> {
    let cs: Vec<_> = g
        .coeffs()
        .iter()
        .map(|c| match c {
            FieldElement::Rational(x) => x.clone(),
            _ => unreachable!("rational coefficients"),
        })
        .collect();
    let d = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let n = cs.len() - 1;
    cs.iter()
        .enumerate()
        .map(|(i, c)| (c * num_rational::BigRational::from_integer(num_traits::pow(d.clone(), n - i))).to_integer())
        .collect()
}

fn eval(h: &[BigInt], r: &BigInt) -> BigInt {
    h.iter().rev().fold(BigInt::zero(), |acc, c| acc * r + c)
}

fn integer_root(h: &[BigInt]) -> Option<Option<BigInt>> {
    let c0 = h[0].abs();
    if c0.is_zero() {
        return Some(Some(BigInt::zero()));
    }
    let c = c0.to_u64().filter(|&c| c <= 1_000_000_000_000)?;
    let mut d = 1u64;
    while d * d <= c {
        if c % d == 0 {
            for r in [d, c / d] {
                for s in [BigInt::from(r), -BigInt::from(r)] {
                    if eval(h, &s).is_zero() {
                        return Some(Some(s));
                    }
                }
            }
        }
        d += 1;
    }
    Some(None)
}

fn irreducible_mod_some_prime(h: &[BigInt]) -> bool {
    (3u64..200).filter(|&p| is_prime(p)).any(|p| {
        let fp = FiniteField::prime(p);
        let bp = BigInt::from(p);
        let cs = h.iter().map(|c| FfElem::Prime(c.mod_floor(&bp).to_u64().unwrap())).collect();
        factor::is_irreducible(&Poly::from_coeffs(&fp, cs), &fp)
    })
}

pub(super) fn warnings(g: &KPoly, _k: &ValuedField) -> Vec<String> {
    let h = integral(g);
    let n = h.len() - 1;
    if n == 1 {
        return Vec::new();
    }
    match integer_root(&h) {
        Some(Some(r)) => {
            let den = integral_denominator(g);
            let root = num_rational::BigRational::new(r, den);
            return vec![format!("g is reducible over Q: it has the rational root {}", q_display(&root))];
        }
        None => return vec!["rational root test skipped: constant term too large".into()],
        Some(None) => {}
    }
    if n <= 3 || irreducible_mod_some_prime(&h) {
        Vec::new()
    } else {
        vec!["irreducibility over Q not confirmed by reduction modulo small primes".into()]
    }
}

fn integral_denominator(g: &KPoly) -> BigInt {
    g.coeffs().iter().fold(BigInt::one(), |acc, c| match c {
        FieldElement::Rational(x) => acc.lcm(x.denom()),
        _ => acc,
    })
}
