//! The four concrete valued fields.
//!
//! | kind        | field                         | value group | residue field |
//! |-------------|-------------------------------|-------------|---------------|
//! | `Qp(p)`     | `Q` with the `p`-adic valuation | `Z`         | `F_p`         |
//! | `Fq(q,t)`   | `F_q(t)`, `t`-adic            | `Z`         | `F_q`         |
//! | `FpPerf(p,t)` | `F_p(t^{1/p^∞})`, `t`-adic  | `Z[1/p]`    | `F_p`         |
//! | `FpC(p,c,t)` | `F_p(c)(t)`, `t`-adic        | `Z`         | `F_p(c)`      |
//!
//! `F_q` for `q = p^k` uses the lexicographically first monic irreducible of
//! degree `k` over `F_p` (see [`FiniteField::with_degree`]); its class is
//! written `g`.

mod residue;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::{FfElem, Field, FiniteField, Poly, RatFunc, RatFuncField};
use crate::display;
use crate::error::{Error, Result};
use crate::value::{q_display, qi, vp_int, Divisibility, Value, ValueGroup, Q};

pub use residue::{ResidueElement, ResidueField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Qp,
    FqT,
    FpPerfT,
    FpCT,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(Q),
    Function(RatFunc<FfElem>),
    /// A rational function in `u = t^{1/p^level}`, at minimal level.
    Perfect { level: u32, value: RatFunc<FfElem> },
    Imperfect(RatFunc<RatFunc<FfElem>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Perfectness {
    Perfect,
    Imperfect { witness: ResidueElement },
}

struct Desc {
    kind: FieldKind,
    p: u64,
    /// `F_p`, or `F_q` for [`FieldKind::FqT`].
    fq: FiniteField,
    /// `F_q(t)`, `F_p(u)` or `F_p(c)` depending on the kind.
    rf: RatFuncField<FiniteField>,
    /// `F_p(c)(t)`.
    rc: RatFuncField<RatFuncField<FiniteField>>,
    overrides: BTreeMap<Q, FieldElement>,
}

#[derive(Clone)]
pub struct ValuedField(Arc<Desc>);

impl PartialEq for ValuedField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.fq == other.0.fq
                && self.0.overrides == other.0.overrides)
    }
}

impl Eq for ValuedField {}

impl fmt::Debug for ValuedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn uint_pow(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("level too deep")
}

impl ValuedField {
    fn build(kind: FieldKind, fq: FiniteField) -> Self {
        let p = fq.p();
        let fp = FiniteField::prime(p);
        ValuedField(Arc::new(Desc {
            kind,
            p,
            rf: RatFuncField::new(fq.clone()),
            rc: RatFuncField::new(RatFuncField::new(fp)),
            fq,
            overrides: BTreeMap::new(),
        }))
    }

    pub fn qp(p: u64) -> Self {
        Self::build(FieldKind::Qp, FiniteField::prime(p))
    }

    /// `F_q(t)`; `q` must be a prime power.
    pub fn fq_t(q: u64) -> Option<Self> {
        let (p, k) = prime_power(q)?;
        Some(Self::build(FieldKind::FqT, FiniteField::with_degree(p, k)))
    }

    pub fn fp_perf_t(p: u64) -> Self {
        Self::build(FieldKind::FpPerfT, FiniteField::prime(p))
    }

    pub fn fp_c_t(p: u64) -> Self {
        Self::build(FieldKind::FpCT, FiniteField::prime(p))
    }

    /// Replaces finitely many values of the default choice function.
    pub fn with_choice_overrides(&self, table: Vec<(Q, FieldElement)>) -> Result<Self> {
        let mut overrides = self.0.overrides.clone();
        for (g, a) in table {
            if g.is_negative() {
                return Err(Error::NegativeExponent(q_display(&g)));
            }
            if !self.value_group().contains(&g) || self.valuate(&a) != Value::Finite(g.clone()) {
                return Err(Error::NotInValueGroup(format!(
                    "override for {} has value {}",
                    q_display(&g),
                    self.valuate(&a)
                )));
            }
            if g.is_zero() && !self.is_one(&a) {
                return Err(Error::NotInValueGroup("override of choice(0) must be 1".into()));
            }
            overrides.insert(g, a);
        }
        Ok(ValuedField(Arc::new(Desc {
            kind: self.0.kind,
            p: self.0.p,
            fq: self.0.fq.clone(),
            rf: self.0.rf.clone(),
            rc: self.0.rc.clone(),
            overrides,
        })))
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Residue characteristic.
    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn has_overrides(&self) -> bool {
        !self.0.overrides.is_empty()
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&Q, &FieldElement)> {
        self.0.overrides.iter()
    }

    pub fn name(&self) -> String {
        let p = self.0.p;
        match self.0.kind {
            FieldKind::Qp => format!("Qp({p})"),
            FieldKind::FqT => format!("Fq({},t)", self.0.fq.order()),
            FieldKind::FpPerfT => format!("FpPerf({p},t)"),
            FieldKind::FpCT => format!("FpC({p},c,t)"),
        }
    }

    pub fn value_group(&self) -> ValueGroup {
        match self.0.kind {
            FieldKind::FpPerfT => ValueGroup::hull(Q::one(), self.0.p),
            _ => ValueGroup::integers(),
        }
    }

    pub fn residue_field(&self) -> ResidueField {
        match self.0.kind {
            FieldKind::FpCT => ResidueField::Rational(self.0.rc.base().clone()),
            _ => ResidueField::Finite(self.0.fq.clone()),
        }
    }

    /// The residue field when it is finite.
    pub fn finite_residue(&self) -> Option<&FiniteField> {
        match self.0.kind {
            FieldKind::FpCT => None,
            _ => Some(&self.0.fq),
        }
    }

    /// Coefficient field of the rational functions (`F_q` or `F_p`).
    pub fn coefficient_field(&self) -> &FiniteField {
        &self.0.fq
    }

    pub fn ratfunc_field(&self) -> &RatFuncField<FiniteField> {
        &self.0.rf
    }

    pub fn imperfect_field(&self) -> &RatFuncField<RatFuncField<FiniteField>> {
        &self.0.rc
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        let ok = matches!(
            (self.0.kind, a),
            (FieldKind::Qp, FieldElement::Rational(_))
                | (FieldKind::FqT, FieldElement::Function(_))
                | (FieldKind::FpPerfT, FieldElement::Perfect { .. })
                | (FieldKind::FpCT, FieldElement::Imperfect(_))
        );
        if ok {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn field_arith(
        &self,
        op: ArithOp,
        a: &FieldElement,
        b: Option<&FieldElement>,
    ) -> Result<FieldElement> {
        self.check(a)?;
        if let Some(b) = b {
            self.check(b)?;
        }
        let need_b = || b.ok_or(Error::MixedFields);
        match op {
            ArithOp::Add => Ok(self.add(a, need_b()?)),
            ArithOp::Mul => Ok(self.mul(a, need_b()?)),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a).ok_or(Error::InvertZero),
        }
    }

    // ---- elements ----

    /// The variable `t` (the uniformizer `p` for `Qp`).
    pub fn t(&self) -> FieldElement {
        self.uniformizer_pow(&Q::one())
    }

    /// The transcendental residue generator `c` of `FpC`.
    pub fn c(&self) -> Option<FieldElement> {
        (self.0.kind == FieldKind::FpCT).then(|| {
            let rc = &self.0.rc;
            FieldElement::Imperfect(rc.constant(rc.base().var()))
        })
    }

    /// The generator `g` of `F_q` embedded as a constant.
    pub fn fq_generator(&self) -> Option<FieldElement> {
        (self.0.kind == FieldKind::FqT && !self.0.fq.is_prime_field())
            .then(|| FieldElement::Function(self.0.rf.constant(self.0.fq.generator())))
    }

    pub fn from_q(&self, x: &Q) -> Option<FieldElement> {
        let n = self.from_bigint(x.numer());
        let d = self.from_bigint(x.denom());
        self.div(&n, &d)
    }

    fn from_bigint(&self, n: &BigInt) -> FieldElement {
        if self.0.kind == FieldKind::Qp {
            return FieldElement::Rational(Q::from_integer(n.clone()));
        }
        let r = n.mod_floor(&BigInt::from(self.0.p)).to_i64().unwrap();
        self.from_int(r)
    }

    /// `t^(a/p^k)` in the perfect closure; `t^a` elsewhere (integral `a`).
    pub fn uniformizer_pow(&self, delta: &Q) -> FieldElement {
        let d = &self.0;
        match d.kind {
            FieldKind::Qp => {
                let k = delta.to_integer().to_i64().expect("integral exponent");
                assert!(delta.is_integer(), "exponent {delta} not in Z");
                FieldElement::Rational(pow_q(&qi(d.p as i64), k))
            }
            FieldKind::FqT => {
                assert!(delta.is_integer(), "exponent {delta} not in Z");
                FieldElement::Function(d.rf.var_pow(delta.to_integer().to_i64().unwrap()))
            }
            FieldKind::FpCT => {
                assert!(delta.is_integer(), "exponent {delta} not in Z");
                FieldElement::Imperfect(d.rc.var_pow(delta.to_integer().to_i64().unwrap()))
            }
            FieldKind::FpPerfT => {
                let den = delta.denom().to_u64().expect("small denominator");
                let mut level = 0u32;
                while uint_pow(d.p, level) < den {
                    level += 1;
                }
                assert_eq!(uint_pow(d.p, level), den, "exponent {delta} not in Z[1/p]");
                let a = delta.numer().to_i64().unwrap();
                self.perfect(level, d.rf.var_pow(a))
            }
        }
    }

    /// Builds and normalizes a perfect-closure element.
    pub fn perfect(&self, mut level: u32, mut value: RatFunc<FfElem>) -> FieldElement {
        let p = self.0.p as usize;
        let fp = &self.0.fq;
        while level > 0 {
            match (value.num.deflate(p, fp), value.den.deflate(p, fp)) {
                (Some(n), Some(dd)) => {
                    // u^p is the variable one level down
                    value = RatFunc { num: n, den: dd };
                    level -= 1;
                }
                _ => break,
            }
        }
        FieldElement::Perfect { level, value }
    }

    fn promote(&self, a: &FieldElement, to: u32) -> RatFunc<FfElem> {
        match a {
            FieldElement::Perfect { level, value } => {
                let k = uint_pow(self.0.p, to - level) as usize;
                let fp = &self.0.fq;
                RatFunc {
                    num: value.num.inflate(k, fp),
                    den: value.den.inflate(k, fp),
                }
            }
            _ => panic!("not a perfect-closure element"),
        }
    }

    fn level(a: &FieldElement) -> u32 {
        match a {
            FieldElement::Perfect { level, .. } => *level,
            _ => 0,
        }
    }

    fn perfect_binop(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        op: impl Fn(&RatFunc<FfElem>, &RatFunc<FfElem>) -> RatFunc<FfElem>,
    ) -> FieldElement {
        let k = Self::level(a).max(Self::level(b));
        let r = op(&self.promote(a, k), &self.promote(b, k));
        self.perfect(k, r)
    }

    // ---- valuation, residue, lift, choice ----

    pub fn valuate(&self, a: &FieldElement) -> Value {
        if self.is_zero(a) {
            return Value::Infinity;
        }
        let d = &self.0;
        match a {
            FieldElement::Rational(x) => {
                Value::int(vp_int(x.numer(), d.p) - vp_int(x.denom(), d.p))
            }
            FieldElement::Function(f) => Value::int(d.rf.ord0(f).unwrap()),
            FieldElement::Perfect { level, value } => {
                let o = d.rf.ord0(value).unwrap();
                Value::Finite(Q::new(BigInt::from(o), BigInt::from(uint_pow(d.p, *level))))
            }
            FieldElement::Imperfect(f) => Value::int(d.rc.ord0(f).unwrap()),
        }
    }

    pub fn residue(&self, a: &FieldElement) -> Result<ResidueElement> {
        let v = self.valuate(a);
        if v < Value::zero() {
            return Err(Error::NegativeValue);
        }
        if v > Value::zero() {
            return Ok(self.residue_field().zero());
        }
        let d = &self.0;
        Ok(match a {
            FieldElement::Rational(x) => {
                let n = x.numer().mod_floor(&BigInt::from(d.p)).to_u64().unwrap();
                let m = x.denom().mod_floor(&BigInt::from(d.p)).to_u64().unwrap();
                let fp = &d.fq;
                ResidueElement::Finite(fp.div(&FfElem::Prime(n), &FfElem::Prime(m)).unwrap())
            }
            FieldElement::Function(f) | FieldElement::Perfect { value: f, .. } => {
                ResidueElement::Finite(d.rf.eval0(f).unwrap())
            }
            FieldElement::Imperfect(f) => ResidueElement::Rational(d.rc.eval0(f).unwrap()),
        })
    }

    /// Residue as a finite field element (finite residue fields only).
    pub fn residue_ff(&self, a: &FieldElement) -> Result<FfElem> {
        match self.residue(a)? {
            ResidueElement::Finite(x) => Ok(x),
            ResidueElement::Rational(_) => Err(Error::ResidueUnsupported),
        }
    }

    pub fn lift(&self, r: &ResidueElement) -> FieldElement {
        let d = &self.0;
        match (d.kind, r) {
            (FieldKind::Qp, ResidueElement::Finite(FfElem::Prime(v))) => {
                FieldElement::Rational(qi(*v as i64))
            }
            (FieldKind::FqT, ResidueElement::Finite(x)) => {
                FieldElement::Function(d.rf.constant(x.clone()))
            }
            (FieldKind::FpPerfT, ResidueElement::Finite(x)) => {
                FieldElement::Perfect { level: 0, value: d.rf.constant(x.clone()) }
            }
            (FieldKind::FpCT, ResidueElement::Rational(x)) => {
                FieldElement::Imperfect(d.rc.constant(x.clone()))
            }
            _ => panic!("residue element from another field"),
        }
    }

    pub fn lift_ff(&self, r: &FfElem) -> FieldElement {
        self.lift(&ResidueElement::Finite(r.clone()))
    }

    /// The choice function: overrides first, then `p^γ` or `t^γ`.
    pub fn choice(&self, gamma: &Value) -> Result<FieldElement> {
        let g = match gamma {
            Value::Finite(g) => g,
            Value::Infinity => return Err(Error::NotInValueGroup("inf".into())),
        };
        if g.is_negative() {
            return Err(Error::NegativeExponent(q_display(g)));
        }
        if !self.value_group().contains(g) {
            return Err(Error::NotInValueGroup(q_display(g)));
        }
        if let Some(a) = self.0.overrides.get(g) {
            return Ok(a.clone());
        }
        Ok(self.uniformizer_pow(g))
    }

    pub fn residue_perfect(&self) -> Perfectness {
        match self.0.kind {
            FieldKind::FpCT => Perfectness::Imperfect {
                witness: ResidueElement::Rational(self.0.rc.base().var()),
            },
            _ => Perfectness::Perfect,
        }
    }

    pub fn value_group_p_divisible(&self) -> Divisibility {
        self.value_group().p_divisible(self.0.p)
    }

    // ---- sampling and display ----

    /// A random element with small numerators, denominators and degrees.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let d = &self.0;
        match d.kind {
            FieldKind::Qp => {
                let p = d.p as i64;
                let unit = |rng: &mut R| loop {
                    let u: i64 = rng.gen_range(-20..=20);
                    if u != 0 && u % p != 0 {
                        return u;
                    }
                };
                let n = unit(rng);
                let m = unit(rng).abs();
                let k = rng.gen_range(-2..=3);
                let x = Q::new(BigInt::from(n), BigInt::from(m)) * pow_q(&qi(p), k);
                if rng.gen_bool(0.05) {
                    FieldElement::Rational(Q::zero())
                } else {
                    FieldElement::Rational(x)
                }
            }
            FieldKind::FqT => {
                let f = random_ratfunc(&d.rf, rng, |r| d.fq.random(r));
                FieldElement::Function(f)
            }
            FieldKind::FpPerfT => {
                let level = rng.gen_range(0..=2);
                let f = random_ratfunc(&d.rf, rng, |r| d.fq.random(r));
                self.perfect(level, f)
            }
            FieldKind::FpCT => {
                // polynomial coefficients in c keep Euclid over F_p(c)[t] cheap
                let inner = d.rc.base();
                let coeff = |r: &mut R| {
                    let deg = r.gen_range(0..=2);
                    inner.from_poly(Poly::from_coeffs(&d.fq, (0..=deg).map(|_| d.fq.random(r)).collect()))
                };
                let num = Poly::from_coeffs(inner, (0..=rng.gen_range(0..=2)).map(|_| coeff(rng)).collect());
                let den = loop {
                    let den = Poly::from_coeffs(inner, (0..=rng.gen_range(0..=1)).map(|_| coeff(rng)).collect());
                    if !den.is_zero() {
                        break den;
                    }
                };
                let f = d.rc.fraction(num, den).unwrap();
                let shift: i64 = rng.gen_range(-1..=1);
                FieldElement::Imperfect(d.rc.mul(&f, &d.rc.var_pow(shift)))
            }
        }
    }

    /// A random element of value at least `0`.
    pub fn random_integral<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let a = self.random_element(rng);
            if self.valuate(&a) >= Value::zero() {
                return a;
            }
        }
    }

    pub fn display(&self, a: &FieldElement) -> String {
        let d = &self.0;
        match a {
            FieldElement::Rational(x) => q_display(x),
            FieldElement::Function(f) => ratfunc_string(f, "t", |c| d.fq.display(c)),
            FieldElement::Perfect { level, value } => {
                let den = uint_pow(d.p, *level);
                let mono = |k: usize| -> String {
                    let e = Q::new(BigInt::from(k), BigInt::from(den));
                    if e.is_zero() {
                        String::new()
                    } else if e.is_one() {
                        "t".into()
                    } else if e.is_integer() {
                        format!("t^{}", e.numer())
                    } else {
                        format!("t^({})", q_display(&e))
                    }
                };
                let part = |poly: &Poly<FfElem>| {
                    let terms = poly
                        .coeffs()
                        .iter()
                        .enumerate()
                        .rev()
                        .map(|(k, c)| (d.fq.display(c), mono(k)))
                        .collect();
                    display::join_terms(terms)
                };
                display::fraction(part(&value.num), part(&value.den))
            }
            FieldElement::Imperfect(f) => {
                let inner = d.rc.base();
                ratfunc_string(f, "t", |c| ratfunc_string(c, "c", |x| inner.base().display(x)))
            }
        }
    }
}

fn ratfunc_string<E: Clone + PartialEq>(
    f: &RatFunc<E>,
    var: &str,
    coeff: impl Fn(&E) -> String,
) -> String {
    let part = |p: &Poly<E>| {
        let cs: Vec<String> = p.coeffs().iter().map(&coeff).collect();
        display::dense(&cs, var)
    };
    display::fraction(part(&f.num), part(&f.den))
}

fn random_ratfunc<F: Field, R: Rng + ?Sized>(
    field: &RatFuncField<F>,
    rng: &mut R,
    mut coeff: impl FnMut(&mut R) -> F::Elem,
) -> RatFunc<F::Elem> {
    let base = field.base();
    loop {
        let dn = rng.gen_range(0..=3);
        let dd = rng.gen_range(0..=2);
        let num = Poly::from_coeffs(base, (0..=dn).map(|_| coeff(rng)).collect());
        let den = Poly::from_coeffs(base, (0..=dd).map(|_| coeff(rng)).collect());
        if den.is_zero() {
            continue;
        }
        let shift: i64 = rng.gen_range(-1..=2);
        let f = field.fraction(num, den).unwrap();
        return field.mul(&f, &field.var_pow(shift));
    }
}

fn pow_q(x: &Q, k: i64) -> Q {
    if k >= 0 {
        Q::from_integer(x.numer().pow(k as u32)) / Q::from_integer(x.denom().pow(k as u32))
    } else {
        pow_q(&x.recip(), -k)
    }
}

/// `q = p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut n = q;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some((p, k))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Field for ValuedField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = &self.0;
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
            (FieldElement::Function(x), FieldElement::Function(y)) => {
                FieldElement::Function(d.rf.add(x, y))
            }
            (FieldElement::Perfect { .. }, FieldElement::Perfect { .. }) => {
                self.perfect_binop(a, b, |x, y| d.rf.add(x, y))
            }
            (FieldElement::Imperfect(x), FieldElement::Imperfect(y)) => {
                FieldElement::Imperfect(d.rc.add(x, y))
            }
            _ => panic!("mixed field elements"),
        }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let d = &self.0;
        match a {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Function(x) => FieldElement::Function(d.rf.neg(x)),
            FieldElement::Perfect { level, value } => FieldElement::Perfect {
                level: *level,
                value: d.rf.neg(value),
            },
            FieldElement::Imperfect(x) => FieldElement::Imperfect(d.rc.neg(x)),
        }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = &self.0;
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(match () {
                _ if x.is_one() => y.clone(),
                _ if y.is_one() => x.clone(),
                _ if x.is_zero() || y.is_zero() => Q::zero(),
                _ => x * y,
            }),
            (FieldElement::Function(x), FieldElement::Function(y)) => {
                FieldElement::Function(d.rf.mul(x, y))
            }
            (FieldElement::Perfect { .. }, FieldElement::Perfect { .. }) => {
                self.perfect_binop(a, b, |x, y| d.rf.mul(x, y))
            }
            (FieldElement::Imperfect(x), FieldElement::Imperfect(y)) => {
                FieldElement::Imperfect(d.rc.mul(x, y))
            }
            _ => panic!("mixed field elements"),
        }
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        let d = &self.0;
        match a {
            FieldElement::Rational(x) => (!x.is_zero()).then(|| FieldElement::Rational(x.recip())),
            FieldElement::Function(x) => d.rf.inv(x).map(FieldElement::Function),
            FieldElement::Perfect { level, value } => d
                .rf
                .inv(value)
                .map(|v| FieldElement::Perfect { level: *level, value: v }),
            FieldElement::Imperfect(x) => d.rc.inv(x).map(FieldElement::Imperfect),
        }
    }

    fn from_int(&self, n: i64) -> FieldElement {
        let d = &self.0;
        match d.kind {
            FieldKind::Qp => FieldElement::Rational(qi(n)),
            FieldKind::FqT => FieldElement::Function(d.rf.from_int(n)),
            FieldKind::FpPerfT => FieldElement::Perfect { level: 0, value: d.rf.from_int(n) },
            FieldKind::FpCT => FieldElement::Imperfect(d.rc.from_int(n)),
        }
    }

    fn characteristic(&self) -> u64 {
        match self.0.kind {
            FieldKind::Qp => 0,
            _ => self.0.p,
        }
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(x) => x.is_zero(),
            FieldElement::Function(x) | FieldElement::Perfect { value: x, .. } => x.num.is_zero(),
            FieldElement::Imperfect(x) => x.num.is_zero(),
        }
    }
}
