//! Independent oracles for integration tests: p-adic root clustering for
//! small integer polynomials, and corpora.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use keypoly::arith::{Field, Poly};
use keypoly::poly::KPoly;
use keypoly::{FieldElement, ValuedField};

pub const PRECISION: u32 = 40;

pub fn kpoly(k: &ValuedField, c: &[i64]) -> KPoly {
    Poly::from_coeffs(k, c.iter().map(|&v| k.from_int(v)).collect::<Vec<FieldElement>>())
}

fn eval(c: &[i64], a: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, &x| acc * a + BigInt::from(x))
}

fn deriv(c: &[i64]) -> Vec<i64> {
    c.iter().enumerate().skip(1).map(|(i, &x)| i as i64 * x).collect()
}

/// Exponent of `p` in `n`, capped at `cap` (zero counts as `cap`).
pub fn vp(n: &BigInt, p: u64, cap: u32) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while k < cap && !n.is_zero() {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        n = q;
        k += 1;
    }
    if n.is_zero() {
        cap
    } else {
        k
    }
}

/// Roots of the monic integral `c` in `Z_p`, each to precision `p^40`,
/// certified by Hensel's criterion `v(g(a)) > 2 v(g'(a))`.
pub fn zp_roots(c: &[i64], p: u64) -> Vec<BigInt> {
    let d = deriv(c);
    let big_p = BigInt::from(p);
    let mut frontier: Vec<(BigInt, u32)> = vec![(BigInt::zero(), 0)];
    let mut certified: Vec<(BigInt, u32)> = Vec::new();
    while let Some((a, l)) = frontier.pop() {
        if l > 0 {
            let vg = vp(&eval(c, &a), p, 4 * PRECISION);
            let vd = vp(&eval(&d, &a), p, 4 * PRECISION);
            if vd < l && vg > 2 * vd {
                certified.push((a, vd));
                continue;
            }
            if l == PRECISION {
                panic!("uncertified root cluster");
            }
        }
        let pl = num_traits::pow(big_p.clone(), l as usize);
        let modulus = &pl * &big_p;
        for digit in 0..p {
            let b = &a + &pl * BigInt::from(digit);
            if eval(c, &b).mod_floor(&modulus).is_zero() {
                frontier.push((b, l + 1));
            }
        }
    }
    // refine each certified approximation to full precision by Newton steps
    let modulus = num_traits::pow(big_p, PRECISION as usize);
    certified
        .into_iter()
        .map(|(mut a, _)| {
            for _ in 0..8 {
                let ga = eval(c, &a);
                let da = eval(&d, &a);
                // a - g(a)/g'(a) in Q, then reduced: exact p-adic Newton with
                // the p-part of g'(a) divided out of g(a)
                let vd = vp(&da, p, 4 * PRECISION);
                let pv = num_traits::pow(BigInt::from(p), vd as usize);
                let unit = (&da / &pv).mod_floor(&modulus);
                let inv = mod_inverse(&unit, &modulus);
                let step = (&ga / &pv) * inv;
                a = (a - step).mod_floor(&modulus);
            }
            a
        })
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Branch invariants of `g` over `Q_p` as a sorted list of `(e, f)`, for
/// monic integral `g` of degree at most 3, irreducible over `Q`.
pub fn oracle(c: &[i64], p: u64) -> Vec<(u64, u64)> {
    let n = c.len() as u64 - 1;
    let roots = zp_roots(c, p);
    let mut out = vec![(1, 1); roots.len()];
    let rest = n - roots.len() as u64;
    if rest >= 2 {
        // the remaining factor h is irreducible over Q_p (degree <= 3, no roots);
        // v(h(a)) = rest * w(a - η) is a multiple of rest for every a exactly
        // when the extension is unramified
        let k = if p == 2 { 12 } else { 8 };
        let bound = num_traits::pow(BigInt::from(p), k);
        let mut a = BigInt::zero();
        let mut ramified = false;
        while a < bound {
            let vg = vp(&eval(c, &a), p, 4 * PRECISION);
            let vr: u32 = roots.iter().map(|r| vp(&(&a - r), p, PRECISION)).sum();
            assert!(vr < PRECISION);
            if (vg - vr) as u64 % rest != 0 {
                ramified = true;
                break;
            }
            a += 1;
        }
        out.push(if ramified { (rest, 1) } else { (1, rest) });
    }
    out.sort();
    out
}

/// Monic polynomials of degree 1..=3 with coefficients in -4..=4 that are
/// irreducible over Q.
pub fn small_corpus() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let total = 9i64.pow(n as u32);
        for idx in 0..total {
            let mut c = Vec::with_capacity(n + 1);
            let mut m = idx;
            for _ in 0..n {
                c.push(m % 9 - 4);
                m /= 9;
            }
            c.push(1);
            if n == 1 || !has_integer_root(&c) {
                out.push(c);
            }
        }
    }
    out
}

fn has_integer_root(c: &[i64]) -> bool {
    let c0 = c[0].abs();
    if c0 == 0 {
        return true;
    }
    (1..=c0).filter(|d| c0 % d == 0).any(|d| {
        [d, -d].iter().any(|&r| eval(c, &BigInt::from(r)).is_zero())
    })
}

/// `(descriptor, q, element of least positive value)` for the corpora.
pub const FUNCTION_FIELDS: &[(&str, u64, &str)] = &[
    ("Fq(2,t)", 2, "t"),
    ("Fq(3,t)", 3, "t"),
    ("Fq(4,t)", 4, "t"),
    ("FpPerf(2,t)", 2, "t^(1/2)"),
    ("FpPerf(3,t)", 3, "t^(1/3)"),
];

/// Artin–Schreier extensions of the perfect hull.
pub const DEFECT_CASES: &[(&str, &str)] = &[
    ("FpPerf(2,t)", "x^2 + x + 1/t"),
    ("FpPerf(2,t)", "x^2 + x + 1/t^3"),
    ("FpPerf(3,t)", "x^3 - x - 1/t"),
];

/// Report for a descriptor and polynomial string.
pub fn extend(field: &str, g: &str) -> keypoly::engine::ExtensionReport {
    let pf = keypoly::parse::parse_field(field).unwrap();
    keypoly::engine::mac_lane_chains(&pf.field, &pf.poly(g).unwrap(), keypoly::engine::Bounds::default())
        .unwrap_or_else(|e| panic!("{field} {g}: {e}"))
}

fn residue_names(q: u64) -> Vec<String> {
    // F_q as strings: integers mod p, and a + b g when q = p^2
    match q {
        4 => vec!["0", "1", "g", "(g+1)"].into_iter().map(String::from).collect(),
        9 => {
            let mut v = Vec::new();
            for b in 0..3 {
                for a in 0..3 {
                    v.push(match (a, b) {
                        (a, 0) => a.to_string(),
                        (0, b) => format!("{b}g"),
                        (a, b) => format!("({a}+{b}g)"),
                    });
                }
            }
            v
        }
        _ => (0..q).map(|a| a.to_string()).collect(),
    }
}

/// Monic irreducible polynomials over `F_q(t)` or `F_p(t^{1/p^∞})`, as
/// strings, in families whose irreducibility is elementary:
/// irreducible reduction mod `t` (Gauss), Eisenstein at `t`, and
/// `x(x-1)…(x-c) + t^k` whose roots would need degree `k/n` in `t`.
/// `u` is the element of value `1/p` for the perfect closure, else `t`.
pub fn function_field_corpus(field: &str, q: u64, u: &str) -> Vec<String> {
    let pf = keypoly::parse::parse_field(field).unwrap();
    let k = &pf.field;
    let names = residue_names(q);
    let mut out = Vec::new();
    // irreducible reductions of degree 2 and 3, perturbed by t
    let fq = keypoly::arith::FiniteField::with_degree(prime_power_base(q), degree_of(q));
    for n in [2usize, 3] {
        let total = (q as usize).pow(n as u32);
        let mut found = 0;
        for idx in 0..total {
            let mut m = idx;
            let mut digits = Vec::new();
            for _ in 0..n {
                digits.push(m % q as usize);
                m /= q as usize;
            }
            let elems: Vec<_> = names.iter().map(|s| k.residue_ff(&pf.element(s).unwrap()).unwrap()).collect();
            let poly = Poly::from_coeffs(
                &fq,
                digits.iter().map(|&d| elems[d].clone()).chain(std::iter::once(fq.one())).collect(),
            );
            if !keypoly::arith::factor::is_irreducible(&poly, &fq) {
                continue;
            }
            let mut terms = vec![format!("x^{n}")];
            for (i, d) in digits.iter().enumerate() {
                let name = &names[*d];
                match (name.as_str(), i) {
                    ("0", _) => {}
                    (_, 0) => terms.push(name.clone()),
                    (_, 1) => terms.push(format!("{name}*x")),
                    _ => terms.push(format!("{name}*x^{i}")),
                }
            }
            let pert = [format!("({u})*x"), format!("({u})^2"), format!("({u})*x^{}", n - 1), format!("(t+t^2)*x")];
            out.push(format!("{} + {}", terms.join(" + "), pert[found % pert.len()]));
            found += 1;
            if found == 6 {
                break;
            }
        }
    }
    // Eisenstein at t with n prime to p
    let p = k.p();
    // degree 7 over F_4 costs more than the whole F_2 corpus
    let top = if q == p { 7 } else { 5 };
    for n in (2..=top).filter(|n| n % p != 0).take(3) {
        out.push(format!("x^{n} + t"));
        out.push(format!("x^{n} + t*x + t + t^2"));
        out.push(format!("x^{n} - {}*t*x^{} + t", names[1 % names.len()], n - 1));
        out.push(format!("x^{n} + t/(1+t)"));
        out.push(format!("x^{n} + t^2*x + t*(1+t)"));
    }
    if p >= 3 {
        out.push("x^2 - (1+t)".into());
    }
    // Hensel-type splitting families
    out.push("x^2 - x + t".into());
    out.push("x^2 - x + t^3".into());
    if u != "t" {
        out.push(format!("x^2 - x + {u}"));
        out.push(format!("x^3 + ({u})*x + t"));
    }
    if p >= 3 {
        out.push("x*(x-1)*(x-2) + t".into());
    }
    out.push("x^3 - x^2 + t".into());
    out.push("x*(x^2 - x) + t^2*x + t".into());
    out
}

fn prime_power_base(q: u64) -> u64 {
    keypoly::fields::prime_power(q).unwrap().0
}

fn degree_of(q: u64) -> usize {
    keypoly::fields::prime_power(q).unwrap().1
}
