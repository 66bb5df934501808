//! Dense univariate polynomials over a runtime [`Field`].

use super::Field;

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    /// `c * x^k`.
    pub fn monomial<F: Field<Elem = E>>(field: &F, c: E, k: usize) -> Self {
        if field.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.leading().is_some_and(|c| field.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order<F: Field<Elem = E>>(&self, field: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !field.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, field: &F) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift<F: Field<Elem = E>>(&self, k: usize, field: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if field.is_zero(b) {
                    continue;
                }
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, mut n: u64, field: &F) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, field);
            }
        }
        acc
    }

    /// Euclidean division; `None` when `divisor` is zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = field.inv(divisor.leading()?)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        let monic = field.is_one(&lead_inv);
        for k in (0..quot.len()).rev() {
            let c = if monic { rem[k + dd].clone() } else { field.mul(&rem[k + dd], &lead_inv) };
            if field.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !field.is_zero(d) {
                    rem[k + j] = field.sub(&rem[k + j], &field.mul(&c, d));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(field, quot), Self::from_coeffs(field, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Option<Self> {
        self.div_rem(divisor, field).map(|(_, r)| r)
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn make_monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv, field)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, field).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, field).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, field), field);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, field), field);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = field.inv(&lc).expect("nonzero");
                (r0.scale(&inv, field), s0.scale(&inv, field), t0.scale(&inv, field))
            }
        }
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| field.mul(c, &field.from_int(k as i64)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn eval<F: Field<Elem = E>>(&self, at: &E, field: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, at), c))
    }

    /// `self(inner)`.
    pub fn compose<F: Field<Elem = E>>(&self, inner: &Self, field: &F) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(inner, field).add(&Self::constant(field, c.clone()), field)
        })
    }

    /// Substitutes `x -> x^k`.
    pub fn inflate<F: Field<Elem = E>>(&self, k: usize, field: &F) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![field.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Inverse of [`Poly::inflate`]; `None` unless every exponent is a
    /// multiple of `k`.
    pub fn deflate<F: Field<Elem = E>>(&self, k: usize, field: &F) -> Option<Self> {
        if self.coeffs.iter().enumerate().any(|(i, c)| i % k != 0 && !field.is_zero(c)) {
            return None;
        }
        Some(Self::from_coeffs(field, self.coeffs.iter().step_by(k).cloned().collect()))
    }

    pub fn map_coeffs<G, F2: Field<Elem = G>>(&self, target: &F2, f: impl Fn(&E) -> G) -> Poly<G>
    where
        G: Clone + PartialEq,
    {
        Poly::from_coeffs(target, self.coeffs.iter().map(f).collect())
    }

    /// `self * other mod modulus`.
    pub fn mul_mod<F: Field<Elem = E>>(&self, other: &Self, modulus: &Self, field: &F) -> Self {
        self.mul(other, field).rem(modulus, field).expect("nonzero modulus")
    }

    /// `self^e mod modulus` for a big exponent given as little-endian bits.
    pub fn pow_mod_bits<F: Field<Elem = E>>(&self, bits: &[bool], modulus: &Self, field: &F) -> Self {
        let mut acc = Self::one(field).rem(modulus, field).expect("nonzero modulus");
        for &bit in bits.iter().rev() {
            acc = acc.mul_mod(&acc, modulus, field);
            if bit {
                acc = acc.mul_mod(self, modulus, field);
            }
        }
        acc
    }
}
