//! Finite fields as towers over a prime field.
//!
//! `F_p` sits at the bottom; every further level is `base[z]/(m(z))` with `m`
//! monic irreducible over the base. Elements of an extension level are
//! vectors of exactly `degree` base elements, so structural equality is field
//! equality.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::{factor, Field, Poly};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FfElem {
    Prime(u64),
    Ext(Vec<FfElem>),
}

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    p: u64,
    base: Option<FiniteField>,
    modulus: Option<Poly<FfElem>>,
    degree: usize,
    abs_degree: usize,
    /// Non-leading modulus coefficients when the base is `F_p`.
    flat_modulus: Option<Vec<u64>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.abs_degree)
    }
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    Some(t.rem_euclid(p as i128) as u64)
}

impl FiniteField {
    pub fn prime(p: u64) -> Self {
        assert!(p >= 2, "characteristic must be a prime");
        FiniteField(Arc::new(Inner {
            p,
            base: None,
            modulus: None,
            degree: 1,
            abs_degree: 1,
            flat_modulus: None,
        }))
    }

    /// `base[z]/(modulus)`; the modulus must be monic irreducible of degree >= 2.
    pub fn extension(base: &FiniteField, modulus: Poly<FfElem>) -> Self {
        let degree = modulus.degree().expect("nonzero modulus");
        assert!(degree >= 2, "extension modulus must have degree at least 2");
        debug_assert!(modulus.is_monic(base));
        let flat_modulus = base.is_prime_field().then(|| {
            let c = modulus.coeffs();
            digits(&c[..c.len() - 1]).collect()
        });
        FiniteField(Arc::new(Inner {
            flat_modulus,
            p: base.0.p,
            base: Some(base.clone()),
            modulus: Some(modulus),
            degree,
            abs_degree: degree * base.0.abs_degree,
        }))
    }

    /// `F_{p^k}` over `F_p` using the lexicographically first monic
    /// irreducible modulus (coefficients read as base-`p` digits, constant
    /// term least significant). `F_4`: `z^2+z+1`, `F_8`: `z^3+z+1`,
    /// `F_9`: `z^2+1`.
    pub fn with_degree(p: u64, k: usize) -> Self {
        let fp = Self::prime(p);
        if k == 1 {
            return fp;
        }
        let modulus = first_irreducible(&fp, k);
        Self::extension(&fp, modulus)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn abs_degree(&self) -> usize {
        self.0.abs_degree
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    pub fn base(&self) -> Option<&FiniteField> {
        self.0.base.as_ref()
    }

    pub fn modulus(&self) -> Option<&Poly<FfElem>> {
        self.0.modulus.as_ref()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.abs_degree as u32)
    }

    pub fn prime_value(&self, a: &FfElem) -> Option<u64> {
        match a {
            FfElem::Prime(v) => Some(*v),
            FfElem::Ext(_) => None,
        }
    }

    /// The class of `z` in `base[z]/(m)`; for a prime field, `1`.
    pub fn generator(&self) -> FfElem {
        match self.base() {
            None => self.one(),
            Some(b) => {
                let mut c = vec![b.zero(); self.degree()];
                c[1] = b.one();
                FfElem::Ext(c)
            }
        }
    }

    pub fn embed_base(&self, a: &FfElem) -> FfElem {
        match self.base() {
            None => a.clone(),
            Some(b) => {
                let mut c = vec![b.zero(); self.degree()];
                c[0] = a.clone();
                FfElem::Ext(c)
            }
        }
    }

    /// Embeds an element of any field lower in the tower.
    pub fn embed_from(&self, from: &FiniteField, a: &FfElem) -> FfElem {
        if from == self {
            return a.clone();
        }
        let base = self.base().expect("source field is not below this one");
        self.embed_base(&base.embed_from(from, a))
    }

    /// The base coordinates of an extension element.
    pub fn to_poly(&self, a: &FfElem) -> Poly<FfElem> {
        match (self.base(), a) {
            (Some(b), FfElem::Ext(c)) => Poly::from_coeffs(b, c.clone()),
            _ => panic!("to_poly on a prime field element"),
        }
    }

    /// Reduces a base polynomial modulo the defining polynomial.
    pub fn from_poly(&self, poly: &Poly<FfElem>) -> FfElem {
        let b = self.base().expect("from_poly on a prime field");
        let r = poly.rem(self.modulus().unwrap(), b).unwrap();
        let mut c = r.into_coeffs();
        c.resize(self.degree(), b.zero());
        FfElem::Ext(c)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        match self.base() {
            None => FfElem::Prime(rng.gen_range(0..self.0.p)),
            Some(b) => FfElem::Ext((0..self.degree()).map(|_| b.random(rng)).collect()),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// All elements; only sensible for small fields.
    pub fn elements(&self) -> Vec<FfElem> {
        match self.base() {
            None => (0..self.0.p).map(FfElem::Prime).collect(),
            Some(b) => {
                let be = b.elements();
                let mut out = vec![Vec::new()];
                for _ in 0..self.degree() {
                    out = out
                        .into_iter()
                        .flat_map(|v| {
                            be.iter().map(move |e| {
                                let mut w = v.clone();
                                w.push(e.clone());
                                w
                            })
                        })
                        .collect();
                }
                out.into_iter().map(FfElem::Ext).collect()
            }
        }
    }

    pub fn pow_big(&self, a: &FfElem, e: &BigUint) -> FfElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `p`-th root (finite fields are perfect).
    pub fn pth_root(&self, a: &FfElem) -> FfElem {
        let e = self.order() / BigUint::from(self.0.p);
        self.pow_big(a, &e)
    }

    pub fn is_square(&self, a: &FfElem) -> bool {
        if self.is_zero(a) || self.0.p == 2 {
            return true;
        }
        let e = (self.order() - BigUint::one()) >> 1;
        self.is_one(&self.pow_big(a, &e))
    }

    pub fn display(&self, a: &FfElem) -> String {
        match (self.base(), a) {
            (None, FfElem::Prime(v)) => v.to_string(),
            (Some(b), FfElem::Ext(c)) => {
                let var = if b.is_prime_field() {
                    "g".to_string()
                } else {
                    format!("z{}", self.tower_height())
                };
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, x)| !b.is_zero(x))
                    .map(|(k, x)| {
                        let cs = b.display(x);
                        let cs = if cs.contains(['+', '*']) {
                            format!("({cs})")
                        } else {
                            cs
                        };
                        match k {
                            0 => cs,
                            _ => {
                                let mono = if k == 1 {
                                    var.clone()
                                } else {
                                    format!("{var}^{k}")
                                };
                                if b.is_one(x) {
                                    mono
                                } else {
                                    format!("{cs}*{mono}")
                                }
                            }
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            _ => format!("{a:?}"),
        }
    }

    fn tower_height(&self) -> usize {
        match self.base() {
            None => 0,
            Some(b) => 1 + b.tower_height(),
        }
    }
}

fn digits(x: &[FfElem]) -> impl Iterator<Item = u64> + '_ {
    x.iter().map(|c| match c {
        FfElem::Prime(v) => *v,
        FfElem::Ext(_) => unreachable!(),
    })
}

/// Schoolbook product reduced by the monic `m` (low coefficients first,
/// leading one dropped), for an extension directly over `F_p`.
fn mul_over_prime(x: &[FfElem], y: &[FfElem], m: &[u64], p: u64) -> Vec<FfElem> {
    let n = m.len();
    let p128 = p as u128;
    let mut acc = vec![0u128; 2 * n - 1];
    let ys: Vec<u64> = digits(y).collect();
    for (i, a) in digits(x).enumerate().filter(|(_, a)| *a != 0) {
        for (j, b) in ys.iter().enumerate() {
            acc[i + j] = (acc[i + j] + a as u128 * *b as u128) % p128;
        }
    }
    for k in (n..2 * n - 1).rev() {
        let c = acc[k];
        if c == 0 {
            continue;
        }
        // z^n = -Σ m_i z^i
        for (i, mi) in m.iter().enumerate() {
            let sub = c * *mi as u128 % p128;
            acc[k - n + i] = (acc[k - n + i] + p128 - sub) % p128;
        }
    }
    acc.truncate(n);
    acc.into_iter().map(|v| FfElem::Prime(v as u64)).collect()
}

fn first_irreducible(fp: &FiniteField, k: usize) -> Poly<FfElem> {
    let p = fp.p();
    let mut n: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut m = n;
        for _ in 0..k {
            coeffs.push(FfElem::Prime(m % p));
            m /= p;
        }
        coeffs.push(fp.one());
        let f = Poly::from_coeffs(fp, coeffs);
        if factor::is_irreducible(&f, fp) {
            return f;
        }
        n += 1;
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        match self.base() {
            None => FfElem::Prime(0),
            Some(b) => FfElem::Ext(vec![b.zero(); self.degree()]),
        }
    }

    fn one(&self) -> FfElem {
        match self.base() {
            None => FfElem::Prime(1 % self.0.p),
            Some(_) => self.embed_base(&self.base().unwrap().one()),
        }
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        match (a, b) {
            (FfElem::Prime(x), FfElem::Prime(y)) => FfElem::Prime((x + y) % self.0.p),
            (FfElem::Ext(x), FfElem::Ext(y)) => {
                if self.0.flat_modulus.is_some() {
                    let p = self.0.p;
                    return FfElem::Ext(digits(x).zip(digits(y)).map(|(u, v)| FfElem::Prime((u + v) % p)).collect());
                }
                let base = self.base().unwrap();
                FfElem::Ext(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("mixed finite field elements"),
        }
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        match a {
            FfElem::Prime(x) => FfElem::Prime((self.0.p - x % self.0.p) % self.0.p),
            FfElem::Ext(x) => {
                let base = self.base().unwrap();
                FfElem::Ext(x.iter().map(|u| base.neg(u)).collect())
            }
        }
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        match (a, b) {
            (FfElem::Prime(x), FfElem::Prime(y)) => {
                FfElem::Prime(((*x as u128 * *y as u128) % self.0.p as u128) as u64)
            }
            (FfElem::Ext(x), FfElem::Ext(y)) => {
                if let Some(m) = &self.0.flat_modulus {
                    return FfElem::Ext(mul_over_prime(x, y, m, self.0.p));
                }
                let base = self.base().unwrap();
                let prod = self.to_poly(a).mul(&self.to_poly(b), base);
                self.from_poly(&prod)
            }
            _ => panic!("mixed finite field elements"),
        }
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        match a {
            FfElem::Prime(x) => mod_inv(*x, self.0.p).map(FfElem::Prime),
            FfElem::Ext(_) => {
                if self.is_zero(a) {
                    return None;
                }
                if self.0.flat_modulus.is_some() && self.0.abs_degree <= 8 {
                    // a^(q-2) is a handful of flat products for small q
                    let q = self.0.p.pow(self.0.abs_degree as u32);
                    return Some(self.pow(a, q - 2));
                }
                let base = self.base().unwrap();
                let (g, s, _) = self.to_poly(a).ext_gcd(self.modulus().unwrap(), base);
                debug_assert!(g.is_constant());
                Some(self.from_poly(&s))
            }
        }
    }

    fn from_int(&self, n: i64) -> FfElem {
        let p = self.0.p as i128;
        let v = FfElem::Prime((n as i128).rem_euclid(p) as u64);
        self.embed_from(&self.prime_field(), &v)
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn is_zero(&self, a: &FfElem) -> bool {
        match a {
            FfElem::Prime(x) => *x == 0,
            FfElem::Ext(c) => {
                let base = self.base().unwrap();
                c.iter().all(|x| base.is_zero(x))
            }
        }
    }
}

impl FiniteField {
    pub fn prime_field(&self) -> FiniteField {
        match self.base() {
            None => self.clone(),
            Some(b) => b.prime_field(),
        }
    }

    pub fn is_zero_elem(&self, a: &FfElem) -> bool {
        Field::is_zero(self, a)
    }

    pub fn integer_order(&self) -> Option<u64> {
        let o = self.order();
        if o.bits() <= 63 {
            Some(o.iter_u64_digits().next().unwrap_or(0))
        } else {
            None
        }
    }
}
