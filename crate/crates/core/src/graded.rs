//! The graded ring `gr(O_K)` as the twisted semigroup ring `Kv[t^{vK≥0}]_ε`.
//!
//! A term `b t^γ` stands for the initial form of `lift(b) ε(γ)`; products pick
//! up the twist `ε̄(γ, γ') = res(ε(γ) ε(γ') / ε(γ + γ'))`.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_traits::{Signed, Zero};

use crate::arith::Field;
use crate::display;
use crate::error::{Error, Result};
use crate::fields::{FieldElement, Perfectness, ResidueElement, ResidueField, ValuedField};
use crate::value::{q_display, qi, Divisibility, Value, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTerm {
    pub coeff: ResidueElement,
    pub exp: Q,
}

/// Finite sums `Σ b_γ t^γ`, no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SemigroupElement {
    terms: BTreeMap<Q, ResidueElement>,
}

impl SemigroupElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &ResidueElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusWitness {
    Value(Value),
    Residue(ResidueElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surjectivity {
    Yes,
    No(FrobeniusWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoRoot {
    /// `γ/p` is not in `vK≥0`.
    Exponent(Q),
    /// The twist-corrected coefficient has no `p`-th root.
    Coefficient(ResidueElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiFailure {
    pub a: FieldElement,
    pub b: FieldElement,
    pub lhs: GradedTerm,
    pub rhs: SemigroupElement,
}

pub struct GradedRing {
    k: ValuedField,
    kv: ResidueField,
    twist: RwLock<HashMap<(Q, Q), ResidueElement>>,
}

impl GradedRing {
    pub fn new(k: &ValuedField) -> Self {
        GradedRing {
            kv: k.residue_field(),
            k: k.clone(),
            twist: RwLock::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &ValuedField {
        &self.k
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.kv
    }

    fn check_exp(&self, exp: &Q) -> Result<()> {
        if exp.is_negative() {
            return Err(Error::NegativeExponent(q_display(exp)));
        }
        if !self.k.value_group().contains(exp) {
            return Err(Error::NotInValueGroup(q_display(exp)));
        }
        Ok(())
    }

    pub fn term(&self, coeff: ResidueElement, exp: Q) -> Result<SemigroupElement> {
        self.check_exp(&exp)?;
        let mut terms = BTreeMap::new();
        if !self.kv.is_zero(&coeff) {
            terms.insert(exp, coeff);
        }
        Ok(SemigroupElement { terms })
    }

    pub fn from_terms(&self, parts: Vec<(ResidueElement, Q)>) -> Result<SemigroupElement> {
        let mut acc = SemigroupElement::zero();
        for (c, e) in parts {
            acc = self.add(&acc, &self.term(c, e)?);
        }
        Ok(acc)
    }

    pub fn one(&self) -> SemigroupElement {
        self.term(self.kv.one(), Q::zero()).unwrap()
    }

    /// `ε̄(γ, γ')`, memoized.
    pub fn twist(&self, g1: &Q, g2: &Q) -> ResidueElement {
        if g1.is_zero() || g2.is_zero() {
            return self.kv.one();
        }
        let key = if g1 <= g2 { (g1.clone(), g2.clone()) } else { (g2.clone(), g1.clone()) };
        if let Some(v) = self.twist.read().unwrap().get(&key) {
            return v.clone();
        }
        let e = |g: &Q| self.k.choice(&Value::Finite(g.clone())).expect("exponent in vK≥0");
        let num = self.k.mul(&e(g1), &e(g2));
        let r = self.k.div(&num, &e(&(g1 + g2))).unwrap();
        let v = self.k.residue(&r).expect("twist has value 0");
        self.twist.write().unwrap().entry(key).or_insert_with(|| v.clone());
        v
    }

    /// `ψ(in(a)) = res(a / ε(v(a))) t^{v(a)}`.
    pub fn initial_form(&self, a: &FieldElement) -> Result<GradedTerm> {
        match self.k.valuate(a) {
            Value::Infinity => Ok(GradedTerm { coeff: self.kv.zero(), exp: Q::zero() }),
            Value::Finite(g) if g.is_negative() => Err(Error::NegativeValue),
            Value::Finite(g) => {
                let e = self.k.choice(&Value::Finite(g.clone()))?;
                let u = self.k.div(a, &e).unwrap();
                Ok(GradedTerm { coeff: self.k.residue(&u)?, exp: g })
            }
        }
    }

    pub fn term_element(&self, t: &GradedTerm) -> SemigroupElement {
        self.term(t.coeff.clone(), t.exp.clone()).expect("valid term")
    }

    pub fn add(&self, x: &SemigroupElement, y: &SemigroupElement) -> SemigroupElement {
        let mut terms = x.terms.clone();
        for (e, c) in &y.terms {
            let s = match terms.get(e) {
                Some(d) => self.kv.add(d, c),
                None => c.clone(),
            };
            if self.kv.is_zero(&s) {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), s);
            }
        }
        SemigroupElement { terms }
    }

    pub fn neg(&self, x: &SemigroupElement) -> SemigroupElement {
        SemigroupElement {
            terms: x.terms.iter().map(|(e, c)| (e.clone(), self.kv.neg(c))).collect(),
        }
    }

    /// Bilinear extension of `t^γ × t^γ' = ε̄(γ, γ') t^{γ+γ'}`.
    pub fn mul(&self, x: &SemigroupElement, y: &SemigroupElement) -> SemigroupElement {
        let mut acc = SemigroupElement::zero();
        for (e1, c1) in &x.terms {
            for (e2, c2) in &y.terms {
                let c = self.kv.mul(&self.kv.mul(c1, c2), &self.twist(e1, e2));
                let t = SemigroupElement {
                    terms: [(e1 + e2, c)].into_iter().collect(),
                };
                acc = self.add(&acc, &t);
            }
        }
        acc
    }

    /// For each pair, compares `in(ab)` with `in(a) × in(b)`; returns the
    /// failures.
    pub fn check_psi_homomorphism(&self, samples: &[(FieldElement, FieldElement)]) -> Result<Vec<PsiFailure>> {
        let mut out = Vec::new();
        for (a, b) in samples {
            let lhs = self.initial_form(&self.k.mul(a, b))?;
            let ia = self.term_element(&self.initial_form(a)?);
            let ib = self.term_element(&self.initial_form(b)?);
            let rhs = self.mul(&ia, &ib);
            if self.term_element(&lhs) != rhs {
                out.push(PsiFailure { a: a.clone(), b: b.clone(), lhs, rhs });
            }
        }
        Ok(out)
    }

    /// `Π_{j=1}^{p-1} ε̄(jγ, γ)`, so that `(t^γ)^{×p} = τ(γ) t^{pγ}`.
    fn frobenius_twist(&self, g: &Q) -> ResidueElement {
        let p = self.k.p() as i64;
        (1..p).fold(self.kv.one(), |acc, j| {
            self.kv.mul(&acc, &self.twist(&(g * qi(j)), g))
        })
    }

    /// `x ↦ x^p`, termwise since the ring is commutative of characteristic `p`.
    pub fn frobenius(&self, x: &SemigroupElement) -> SemigroupElement {
        let p = self.k.p();
        let terms = x
            .terms
            .iter()
            .map(|(e, c)| {
                let b = self.kv.mul(&self.kv.pow(c, p), &self.frobenius_twist(e));
                (e * qi(p as i64), b)
            })
            .filter(|(_, b)| !self.kv.is_zero(b))
            .collect();
        SemigroupElement { terms }
    }

    pub fn frobenius_surjective(&self) -> Surjectivity {
        // an imperfect residue field is reported first even when the value
        // group also fails
        if let Perfectness::Imperfect { witness } = self.k.residue_perfect() {
            return Surjectivity::No(FrobeniusWitness::Residue(witness));
        }
        match self.k.value_group_p_divisible() {
            Divisibility::Yes => Surjectivity::Yes,
            Divisibility::No { witness } => Surjectivity::No(FrobeniusWitness::Value(witness)),
        }
    }

    /// Solves `frobenius(b' t^{γ/p}) = b t^γ`.
    pub fn pth_root(&self, t: &GradedTerm) -> std::result::Result<GradedTerm, NoRoot> {
        if self.kv.is_zero(&t.coeff) {
            return Ok(t.clone());
        }
        let p = self.k.p() as i64;
        let g = &t.exp / qi(p);
        if self.check_exp(&g).is_err() {
            return Err(NoRoot::Exponent(g));
        }
        let tau = self.frobenius_twist(&g);
        let target = self.kv.div(&t.coeff, &tau).unwrap();
        match self.kv.pth_root(&target) {
            Some(b) => Ok(GradedTerm { coeff: b, exp: g }),
            None => Err(NoRoot::Coefficient(target)),
        }
    }

    /// Random element with up to `n` terms and exponents on a small grid
    /// of the value group.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, n: usize, rng: &mut R) -> SemigroupElement {
        let mut acc = SemigroupElement::zero();
        for _ in 0..rng.gen_range(1..=n) {
            let e = self.random_exponent(rng);
            let c = self.kv.random(rng);
            acc = self.add(&acc, &self.term(c, e).unwrap());
        }
        acc
    }

    pub fn random_exponent<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Q {
        let g = self.k.value_group();
        loop {
            let den = if g.is_finitely_generated() {
                1
            } else {
                (self.k.p() as i64).pow(rng.gen_range(0..=2))
            };
            let e = Q::new(rng.gen_range(0..=6i64).into(), den.into()) * g.gen();
            if g.contains(&e) {
                return e;
            }
        }
    }

    pub fn display(&self, x: &SemigroupElement) -> String {
        let terms = x
            .terms
            .iter()
            .map(|(e, c)| (self.kv.display(c), exp_monomial(e)))
            .collect();
        display::join_terms(terms)
    }

    pub fn display_term(&self, t: &GradedTerm) -> String {
        self.display(&self.term_element(t))
    }
}

fn exp_monomial(e: &Q) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_integer() {
        format!("T^{}", e.numer())
    } else {
        format!("T^({})", q_display(e))
    }
}
