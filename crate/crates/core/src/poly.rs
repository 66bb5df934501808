//! Polynomials over a valued field: expansions, Hasse derivatives and the
//! basic ring operations with checked errors.

use num_bigint::BigInt;

use crate::arith::{Field, Poly};
use crate::display;
use crate::error::{Error, Result};
use crate::fields::{FieldElement, ValuedField};
use crate::value::Q;

pub type KPoly = Poly<FieldElement>;

/// The `φ`-expansion `f = Σ f_k φ^k` with `deg f_k < deg φ`.
pub fn phi_expansion(f: &KPoly, phi: &KPoly, k: &ValuedField) -> Result<Vec<KPoly>> {
    match phi.degree() {
        None | Some(0) => return Err(Error::ConstantBase),
        _ if !phi.is_monic(k) => return Err(Error::NonMonicBase),
        _ => {}
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(phi, k).unwrap();
        out.push(r);
        rest = q;
    }
    Ok(out)
}

/// `Σ f_k φ^k`.
pub fn reconstruct(parts: &[KPoly], phi: &KPoly, k: &ValuedField) -> KPoly {
    parts
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, a| acc.mul(phi, k).add(a, k))
}

fn binomial(n: usize, i: usize) -> BigInt {
    let mut b = BigInt::from(1);
    for j in 0..i {
        b = b * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    b
}

/// The `i`-th Hasse derivative: `x^n ↦ C(n, i) x^(n-i)`.
pub fn hasse_derivative(f: &KPoly, i: usize, k: &ValuedField) -> KPoly {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(i)
        .map(|(n, c)| {
            let b = k.from_q(&Q::from_integer(binomial(n, i))).unwrap_or_else(|| k.zero());
            k.mul(c, &b)
        })
        .collect();
    Poly::from_coeffs(k, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    EuclidDiv,
    Gcd,
    Derivative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    Single(KPoly),
    Pair(KPoly, KPoly),
}

pub fn poly_arith(op: PolyOp, f: &KPoly, g: &KPoly, k: &ValuedField) -> Result<PolyResult> {
    Ok(match op {
        PolyOp::Add => PolyResult::Single(f.add(g, k)),
        PolyOp::Mul => PolyResult::Single(f.mul(g, k)),
        PolyOp::EuclidDiv => {
            let (q, r) = f.div_rem(g, k).ok_or(Error::DivByZero)?;
            PolyResult::Pair(q, r)
        }
        PolyOp::Gcd => PolyResult::Single(f.gcd(g, k)),
        PolyOp::Derivative => PolyResult::Single(f.derivative(k)),
    })
}

pub fn poly_string(f: &KPoly, k: &ValuedField) -> String {
    poly_string_var(f, k, "x")
}

pub fn poly_string_var(f: &KPoly, k: &ValuedField, var: &str) -> String {
    let cs: Vec<String> = f.coeffs().iter().map(|c| k.display(c)).collect();
    display::dense(&cs, var)
}

/// A random polynomial of degree at most `deg`.
pub fn random_poly<R: rand::Rng + ?Sized>(k: &ValuedField, deg: usize, rng: &mut R) -> KPoly {
    let coeffs = (0..=deg).map(|_| k.random_element(rng)).collect();
    Poly::from_coeffs(k, coeffs)
}

pub fn random_monic<R: rand::Rng + ?Sized>(k: &ValuedField, deg: usize, rng: &mut R) -> KPoly {
    let mut coeffs: Vec<FieldElement> = (0..deg).map(|_| k.random_element(rng)).collect();
    coeffs.push(k.one());
    Poly::from_coeffs(k, coeffs)
}
