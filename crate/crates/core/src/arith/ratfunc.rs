//! Rational function fields `F(t)` over a runtime base field.

use super::{Field, Poly};

/// A reduced fraction: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncField<F> {
    base: F,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(base: F) -> Self {
        RatFuncField { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    /// Builds and reduces `num/den`; `None` for a zero denominator.
    pub fn fraction(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Option<RatFunc<F::Elem>> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        if den.is_constant() || num.is_constant() {
            let lc = self.base.inv(den.leading().unwrap()).unwrap();
            return Some(RatFunc { num: num.scale(&lc, &self.base), den: den.scale(&lc, &self.base) });
        }
        let g = num.gcd(&den, &self.base);
        let (mut num, _) = num.div_rem(&g, &self.base).unwrap();
        let (mut den, _) = den.div_rem(&g, &self.base).unwrap();
        let lc = self.base.inv(den.leading().unwrap()).unwrap();
        num = num.scale(&lc, &self.base);
        den = den.scale(&lc, &self.base);
        Some(RatFunc { num, den })
    }

    pub fn from_poly(&self, num: Poly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc {
            num,
            den: Poly::one(&self.base),
        }
    }

    pub fn constant(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(Poly::constant(&self.base, c))
    }

    /// The variable `t`.
    pub fn var(&self) -> RatFunc<F::Elem> {
        self.from_poly(Poly::x(&self.base))
    }

    /// `t^k` for any integer `k`.
    pub fn var_pow(&self, k: i64) -> RatFunc<F::Elem> {
        let m = Poly::monomial(&self.base, self.base.one(), k.unsigned_abs() as usize);
        if k >= 0 {
            self.from_poly(m)
        } else {
            RatFunc {
                num: Poly::one(&self.base),
                den: m,
            }
        }
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn ord0(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        let n = a.num.low_order(&self.base)? as i64;
        let d = a.den.low_order(&self.base).unwrap() as i64;
        Some(n - d)
    }

    /// Ratio of the lowest nonzero coefficients of numerator and denominator,
    /// i.e. the leading coefficient of the `t`-adic expansion.
    pub fn initial_coeff(&self, a: &RatFunc<F::Elem>) -> Option<F::Elem> {
        let n = a.num.low_order(&self.base)?;
        let d = a.den.low_order(&self.base).unwrap();
        self.base.div(&a.num.coeffs()[n], &a.den.coeffs()[d])
    }

    /// Evaluation at `t = 0` for elements regular there.
    pub fn eval0(&self, a: &RatFunc<F::Elem>) -> Option<F::Elem> {
        let d = a.den.coeff(&self.base, 0);
        self.base.div(&a.num.coeff(&self.base, 0), &d)
    }

    /// Whether the element is the constant `c` of the base.
    pub fn as_constant(&self, a: &RatFunc<F::Elem>) -> Option<F::Elem> {
        if a.num.is_constant() && a.den.is_constant() {
            Some(a.num.coeff(&self.base, 0))
        } else {
            None
        }
    }

    pub fn map_polys(
        &self,
        a: &RatFunc<F::Elem>,
        f: impl Fn(&Poly<F::Elem>) -> Poly<F::Elem>,
    ) -> Option<RatFunc<F::Elem>> {
        self.fraction(f(&a.num), f(&a.den))
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(Poly::zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(Poly::one(&self.base))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.den == b.den {
            return self.fraction(a.num.add(&b.num, &self.base), a.den.clone()).unwrap();
        }
        let num = a
            .num
            .mul(&b.den, &self.base)
            .add(&b.num.mul(&a.den, &self.base), &self.base);
        self.fraction(num, a.den.mul(&b.den, &self.base)).unwrap()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.fraction(a.num.mul(&b.num, &self.base), a.den.mul(&b.den, &self.base))
            .unwrap()
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return None;
        }
        self.fraction(a.den.clone(), a.num.clone())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FiniteField;

    #[test]
    fn reduced_sum() {
        let k = RatFuncField::new(FiniteField::prime(3));
        let t = k.var();
        let s = k.add(&k.inv(&t).unwrap(), &t);
        // (1 + t^2) / t
        assert_eq!(s.den, Poly::x(k.base()));
        assert_eq!(s.num.degree(), Some(2));
        assert_eq!(k.ord0(&s), Some(-1));
    }
}
