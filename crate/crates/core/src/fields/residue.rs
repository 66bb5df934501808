//! Residue fields: `F_q`, or `F_p(c)` for the imperfect family.

use num_bigint::BigUint;

use crate::arith::{FfElem, Field, FiniteField, Poly, RatFunc, RatFuncField};
use crate::display;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Finite(FiniteField),
    Rational(RatFuncField<FiniteField>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueElement {
    Finite(FfElem),
    Rational(RatFunc<FfElem>),
}

impl ResidueElement {
    pub fn as_finite(&self) -> Option<&FfElem> {
        match self {
            ResidueElement::Finite(x) => Some(x),
            ResidueElement::Rational(_) => None,
        }
    }
}

impl ResidueField {
    pub fn p(&self) -> u64 {
        match self {
            ResidueField::Finite(f) => f.p(),
            ResidueField::Rational(r) => r.base().p(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ResidueField::Finite(_))
    }

    /// The unique `p`-th root if it exists. In `F_p(c)` an element is a
    /// `p`-th power iff numerator and denominator are polynomials in `c^p`.
    pub fn pth_root(&self, a: &ResidueElement) -> Option<ResidueElement> {
        match (self, a) {
            (ResidueField::Finite(f), ResidueElement::Finite(x)) => {
                Some(ResidueElement::Finite(f.pth_root(x)))
            }
            (ResidueField::Rational(r), ResidueElement::Rational(x)) => {
                let fp = r.base();
                let p = fp.p() as usize;
                // over F_p, h(c^p) = h(c)^p
                let n = x.num.deflate(p, fp)?;
                let d = x.den.deflate(p, fp)?;
                Some(ResidueElement::Rational(r.fraction(n, d).unwrap()))
            }
            _ => panic!("mixed residue elements"),
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> ResidueElement {
        match self {
            ResidueField::Finite(f) => ResidueElement::Finite(f.random(rng)),
            ResidueField::Rational(r) => {
                let fp = r.base();
                let dn = rng.gen_range(0..=3);
                let dd = rng.gen_range(0..=2);
                let num = Poly::from_coeffs(fp, (0..=dn).map(|_| fp.random(rng)).collect());
                let mut den = Poly::from_coeffs(fp, (0..=dd).map(|_| fp.random(rng)).collect());
                if den.is_zero() {
                    den = Poly::one(fp);
                }
                ResidueElement::Rational(r.fraction(num, den).unwrap())
            }
        }
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> ResidueElement {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    pub fn order(&self) -> Option<BigUint> {
        match self {
            ResidueField::Finite(f) => Some(f.order()),
            ResidueField::Rational(_) => None,
        }
    }

    pub fn display(&self, a: &ResidueElement) -> String {
        match (self, a) {
            (ResidueField::Finite(f), ResidueElement::Finite(x)) => f.display(x),
            (ResidueField::Rational(r), ResidueElement::Rational(x)) => {
                let fp = r.base();
                let part = |p: &Poly<FfElem>| {
                    let cs: Vec<String> = p.coeffs().iter().map(|c| fp.display(c)).collect();
                    display::dense(&cs, "c")
                };
                display::fraction(part(&x.num), part(&x.den))
            }
            _ => format!("{a:?}"),
        }
    }
}

macro_rules! dispatch2 {
    ($self:ident, $a:ident, $b:ident, $m:ident) => {
        match ($self, $a, $b) {
            (ResidueField::Finite(f), ResidueElement::Finite(x), ResidueElement::Finite(y)) => {
                ResidueElement::Finite(f.$m(x, y))
            }
            (
                ResidueField::Rational(r),
                ResidueElement::Rational(x),
                ResidueElement::Rational(y),
            ) => ResidueElement::Rational(r.$m(x, y)),
            _ => panic!("mixed residue elements"),
        }
    };
}

impl Field for ResidueField {
    type Elem = ResidueElement;

    fn zero(&self) -> ResidueElement {
        match self {
            ResidueField::Finite(f) => ResidueElement::Finite(f.zero()),
            ResidueField::Rational(r) => ResidueElement::Rational(r.zero()),
        }
    }

    fn one(&self) -> ResidueElement {
        match self {
            ResidueField::Finite(f) => ResidueElement::Finite(f.one()),
            ResidueField::Rational(r) => ResidueElement::Rational(r.one()),
        }
    }

    fn add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        dispatch2!(self, a, b, add)
    }

    fn neg(&self, a: &ResidueElement) -> ResidueElement {
        match (self, a) {
            (ResidueField::Finite(f), ResidueElement::Finite(x)) => ResidueElement::Finite(f.neg(x)),
            (ResidueField::Rational(r), ResidueElement::Rational(x)) => {
                ResidueElement::Rational(r.neg(x))
            }
            _ => panic!("mixed residue elements"),
        }
    }

    fn mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        dispatch2!(self, a, b, mul)
    }

    fn inv(&self, a: &ResidueElement) -> Option<ResidueElement> {
        match (self, a) {
            (ResidueField::Finite(f), ResidueElement::Finite(x)) => {
                f.inv(x).map(ResidueElement::Finite)
            }
            (ResidueField::Rational(r), ResidueElement::Rational(x)) => {
                r.inv(x).map(ResidueElement::Rational)
            }
            _ => panic!("mixed residue elements"),
        }
    }

    fn from_int(&self, n: i64) -> ResidueElement {
        match self {
            ResidueField::Finite(f) => ResidueElement::Finite(f.from_int(n)),
            ResidueField::Rational(r) => ResidueElement::Rational(r.from_int(n)),
        }
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn is_zero(&self, a: &ResidueElement) -> bool {
        match (self, a) {
            (ResidueField::Finite(f), ResidueElement::Finite(x)) => f.is_zero(x),
            (_, ResidueElement::Rational(x)) => x.num.is_zero(),
            _ => panic!("mixed residue elements"),
        }
    }
}
