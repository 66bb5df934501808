//! Factorization of univariate polynomials over finite fields.
//!
//! Squarefree decomposition, distinct-degree splitting and Cantor-Zassenhaus
//! equal-degree splitting. The random choices in the last stage come from a
//! fixed-seed generator and the output is sorted, so results are
//! deterministic.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FfElem, Field, FiniteField, Poly};

type P = Poly<FfElem>;

fn bits(e: &BigUint) -> Vec<bool> {
    (0..e.bits()).map(|i| e.bit(i)).collect()
}

/// `x^(q^k) mod f` by repeated `q`-th powering.
fn frobenius_power(xq: &P, k: usize, f: &P, field: &FiniteField) -> P {
    let mut acc = Poly::x(field).rem(f, field).unwrap();
    for _ in 0..k {
        acc = acc.compose(xq, field).rem(f, field).unwrap();
    }
    acc
}

fn x_to_q(f: &P, field: &FiniteField) -> P {
    Poly::x(field).pow_mod_bits(&bits(&field.order()), f, field)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &P, field: &FiniteField) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.make_monic(field);
    let xq = x_to_q(&f, field);
    let x = Poly::x(field);
    for r in prime_divisors(n) {
        let h = frobenius_power(&xq, n / r, &f, field).sub(&x, field);
        if !h.gcd(&f, field).is_constant() {
            return false;
        }
    }
    frobenius_power(&xq, n, &f, field) == x.rem(&f, field).unwrap()
}

/// Applies the inverse Frobenius to every coefficient of `f = g(x^p)`,
/// giving the `p`-th root `h` with `h^p = f`.
fn pth_root_poly(f: &P, field: &FiniteField) -> P {
    let p = field.p() as usize;
    let g = f.deflate(p, field).expect("polynomial in x^p");
    let coeffs = g.coeffs().iter().map(|c| field.pth_root(c)).collect();
    Poly::from_coeffs(field, coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs `(s, m)` with the
/// `s` pairwise coprime, squarefree and `f = prod s^m`.
pub fn squarefree(f: &P, field: &FiniteField) -> Vec<(P, usize)> {
    let f = f.make_monic(field);
    if f.is_constant() {
        return Vec::new();
    }
    let p = field.p() as usize;
    let mut out = Vec::new();
    let d = f.derivative(field);
    if d.is_zero() {
        for (s, m) in squarefree(&pth_root_poly(&f, field), field) {
            out.push((s, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d, field);
    let mut w = f.div_rem(&c, field).unwrap().0;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c, field);
        let z = w.div_rem(&y, field).unwrap().0;
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w, field).unwrap().0;
    }
    if !c.is_constant() {
        for (s, m) in squarefree(&pth_root_poly(&c, field), field) {
            out.push((s, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &P, field: &FiniteField) -> Vec<(P, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let xq = x_to_q(f, field);
    let x = Poly::x(field);
    let mut h = x.rem(f, field).unwrap();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((rest.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.compose(&xq, field).rem(f, field).unwrap();
        let g = h.sub(&x, field).gcd(&rest, field);
        if !g.is_constant() {
            rest = rest.div_rem(&g, field).unwrap().0;
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of distinct monic irreducibles all of degree `d`.
fn equal_degree(f: &P, d: usize, field: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<P> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let q = field.order();
    let p = field.p();
    loop {
        let a = Poly::from_coeffs(field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // trace from F_{q^d} to F_2: a + a^2 + ... + a^(2^(k d - 1))
            let k = field.abs_degree() * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                t = t.mul_mod(&t, f, field);
                acc = acc.add(&t, field);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod_bits(&bits(&e), f, field).sub(&Poly::one(field), field)
        };
        let g = b.gcd(f, field);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < n {
                let h = f.div_rem(&g, field).unwrap().0;
                let mut out = equal_degree(&g, d, field, rng);
                out.extend(equal_degree(&h, d, field, rng));
                return out;
            }
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree and then coefficients. Constants give an empty list.
pub fn factor(f: &P, field: &FiniteField) -> Vec<(P, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b65_7970);
    let mut out = Vec::new();
    for (s, m) in squarefree(f, field) {
        for (g, d) in distinct_degree(&s, field) {
            for h in equal_degree(&g, d, field, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
    });
    out
}

/// Roots with multiplicity.
pub fn roots(f: &P, field: &FiniteField) -> Vec<(FfElem, usize)> {
    let mut out: Vec<_> = factor(f, field)
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, m)| (field.neg(&g.coeff(field, 0)), m))
        .collect();
    out.sort();
    out
}
