//! Inductive valuations on `K[x]`.
//!
//! A valuation is a depth-zero valuation `[v; x - a, γ_0]` followed by
//! augmentations `[μ; φ, γ]` of strictly increasing key degree. Augmenting by
//! a key of the same degree as the top key replaces the top level, which
//! yields the same valuation.

pub mod residual;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::factor;
use crate::arith::{FfElem, Field, FiniteField, Poly};
use crate::error::{Error, Result};
use crate::fields::ValuedField;
use crate::poly::{phi_expansion, poly_string, random_poly, KPoly};
use crate::value::{Value, ValueGroup};

#[derive(Clone, Debug)]
pub struct Level {
    pub phi: KPoly,
    pub gamma: Value,
    pub e: u64,
    pub group_prev: ValueGroup,
    pub group: ValueGroup,
    /// `κ(μ_j)`; absent over an imperfect residue field.
    pub kappa: Option<FiniteField>,
    /// Monic residual polynomial of `φ_j` one level down.
    pub psi_prev: Option<Poly<FfElem>>,
    /// The root of `psi_prev` in `kappa`.
    pub z_prev: Option<FfElem>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct InductiveValuation {
    k: ValuedField,
    levels: Vec<Level>,
}

impl PartialEq for InductiveValuation {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| a.phi == b.phi && a.gamma == b.gamma)
    }
}

impl InductiveValuation {
    /// `μ(Σ a_k (x-a)^k) = min v(a_k) + kγ`.
    pub fn depth_zero(k: &ValuedField, a: &crate::fields::FieldElement, gamma: Value) -> Self {
        let phi = Poly::from_coeffs(k, vec![k.neg(a), k.one()]);
        let mut mu = InductiveValuation { k: k.clone(), levels: Vec::new() };
        mu.levels.push(mu.make_level(phi, gamma));
        mu
    }

    pub fn gauss(k: &ValuedField) -> Self {
        Self::depth_zero(k, &k.zero(), Value::zero())
    }

    pub fn field(&self) -> &ValuedField {
        &self.k
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn top(&self) -> &Level {
        self.levels.last().unwrap()
    }

    pub fn degree(&self) -> usize {
        self.top().degree()
    }

    pub fn is_terminal(&self) -> bool {
        self.top().gamma.is_infinite()
    }

    /// The first `n` levels.
    pub fn prefix(&self, n: usize) -> Self {
        assert!(n >= 1 && n <= self.levels.len());
        InductiveValuation { k: self.k.clone(), levels: self.levels[..n].to_vec() }
    }

    fn make_level(&self, phi: KPoly, gamma: Value) -> Level {
        let k = &self.k;
        let (group_prev, kappa_prev) = match self.levels.last() {
            None => (k.value_group(), None),
            Some(l) => (l.group.clone(), l.kappa.clone()),
        };
        let (e, group) = match &gamma {
            Value::Finite(g) => (group_prev.order_of(g), group_prev.join(g)),
            Value::Infinity => (1, group_prev.clone()),
        };
        let (kappa, psi_prev, z_prev) = match (self.levels.is_empty(), kappa_prev) {
            (true, _) => (k.finite_residue().cloned(), None, None),
            (false, None) => (None, None, None),
            (false, Some(kp)) => {
                let j = self.levels.len() - 1;
                let theta = residual::value(&self.levels, k, &phi);
                let r = residual::residual(&self.levels, k, j, &phi, theta.finite().unwrap());
                let r = strip_low(&r, &kp).make_monic(&kp);
                let (kappa, z) = if r.degree() == Some(1) {
                    let z = kp.neg(&r.coeffs()[0]);
                    (kp.clone(), z)
                } else {
                    let ext = FiniteField::extension(&kp, r.clone());
                    let z = ext.generator();
                    (ext, z)
                };
                (Some(kappa), Some(r), Some(z))
            }
        };
        Level { phi, gamma, e, group_prev, group, kappa, psi_prev, z_prev }
    }

    /// Appends or replaces the top level without certification.
    pub fn extend_unchecked(&self, phi: KPoly, gamma: Value) -> Self {
        let mut base = self.clone();
        if phi.degree() == Some(self.degree()) {
            base.levels.pop();
            if base.levels.is_empty() {
                let mut mu = InductiveValuation { k: self.k.clone(), levels: Vec::new() };
                mu.levels.push(mu.make_level(phi, gamma));
                return mu;
            }
        }
        let lv = base.make_level(phi, gamma);
        base.levels.push(lv);
        base
    }

    /// `[μ; φ, γ]` with `φ` certified as a key polynomial for `μ`.
    pub fn augment(&self, phi: &KPoly, gamma: Value) -> Result<Self> {
        if self.is_terminal() {
            return Err(Error::InfiniteGammaInInterior);
        }
        if !phi.is_monic(&self.k) {
            return Err(Error::NotMonic);
        }
        let current = self.evaluate(phi);
        if gamma <= current {
            return Err(Error::ValueNotIncreased { gamma: gamma.to_string(), current: current.to_string() });
        }
        if !self.is_key_polynomial(phi)? {
            return Err(Error::NotAKeyPolynomial(poly_string(phi, &self.k)));
        }
        Ok(self.extend_unchecked(phi.clone(), gamma))
    }

    pub fn evaluate(&self, f: &KPoly) -> Value {
        residual::value(&self.levels, &self.k, f)
    }

    pub fn value_group(&self) -> Result<ValueGroup> {
        let n = self.levels.len();
        if self.levels[..n - 1].iter().any(|l| l.gamma.is_infinite()) {
            return Err(Error::InfiniteGammaInInterior);
        }
        Ok(self.top().group.clone())
    }

    /// `e_t` for every finite level; a Gauss depth-zero level is not counted.
    pub fn ram_indices(&self) -> Vec<u64> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(i, l)| !l.gamma.is_infinite() && !(*i == 0 && l.gamma == Value::zero()))
            .map(|(_, l)| l.e)
            .collect()
    }

    /// `f_t = deg φ_{t+1} / (e_t m_t)`.
    pub fn inertia_indices(&self) -> Vec<u64> {
        self.levels
            .windows(2)
            .map(|w| (w[1].degree() / (w[0].e as usize * w[0].degree())) as u64)
            .collect()
    }

    pub fn equiv_test(&self, f: &KPoly, g: &KPoly) -> Result<bool> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (vf, vg) = (self.evaluate(f), self.evaluate(g));
        Ok(vf == vg && self.evaluate(&f.sub(g, &self.k)) > vf)
    }

    /// Expansion-min equality against a fixed probe family.
    pub fn is_minimal(&self, f: &KPoly) -> bool {
        let k = &self.k;
        let n = f.degree().unwrap_or(0);
        if n == 0 {
            return false;
        }
        let vf = self.evaluate(f);
        let holds = |h: &KPoly| {
            let parts = phi_expansion(h, f, k).unwrap();
            let m = parts.iter().enumerate().map(|(i, c)| &self.evaluate(c) + &vf.times(i)).min();
            m.map_or(true, |m| m == self.evaluate(h))
        };
        let mut probes = Vec::new();
        for kk in 0..=2usize {
            for j in 0..=2 * n {
                if j + kk * n <= 2 * n {
                    probes.push(Poly::x(k).pow(j as u64, k).mul(&f.pow(kk as u64, k), k));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d69_6e69);
        for i in 0..40 {
            let h = random_poly(k, 2 * n - i % n, &mut rng);
            let low = random_poly(k, n - 1, &mut rng);
            probes.push(h.mul(f, k).add(&low, k));
        }
        probes.iter().all(holds)
    }

    /// Key-polynomial criterion for the top level: a same-degree `φ` is a key
    /// when `μ(φ - φ_top) >= γ_top`; a larger one when its expansion is led by
    /// `φ_top^s`, `e | s`, and its residual polynomial is irreducible.
    pub fn is_key_polynomial(&self, phi: &KPoly) -> Result<bool> {
        let k = &self.k;
        let top = self.top();
        if self.is_terminal() || !phi.is_monic(k) {
            return Ok(false);
        }
        let (n, m) = (phi.degree().unwrap_or(0), top.degree());
        if n == 0 || n % m != 0 {
            return Ok(false);
        }
        if n == m {
            return Ok(self.evaluate(&phi.sub(&top.phi, k)) >= top.gamma);
        }
        let Some(kappa) = &top.kappa else {
            return Err(Error::ImperfectResidueUnsupported);
        };
        let s = n / m;
        let vals = residual::expansion_values(&self.levels, k, phi);
        let theta = vals.iter().min().unwrap().clone();
        if theta != top.gamma.times(s) || s as u64 % top.e != 0 {
            return Ok(false);
        }
        let j = self.levels.len() - 1;
        let r = residual::residual(&self.levels, k, j, phi, theta.finite().unwrap());
        if kappa.is_zero(&r.coeffs()[0]) || r.degree() != Some(s / top.e as usize) {
            return Ok(false);
        }
        Ok(factor::is_irreducible(&r.make_monic(kappa), kappa))
    }

    /// `R(f)` at the top level, relative to `Π(μ(f))`.
    pub fn residual_polynomial(&self, f: &KPoly) -> Result<Poly<FfElem>> {
        if self.top().kappa.is_none() {
            return Err(Error::ImperfectResidueUnsupported);
        }
        if self.is_terminal() {
            return Err(Error::InfiniteGammaInInterior);
        }
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let v = self.evaluate(f);
        let j = self.levels.len() - 1;
        Ok(residual::residual(&self.levels, &self.k, j, f, v.finite().unwrap()))
    }

    pub fn residual_field(&self) -> Result<FiniteField> {
        self.top().kappa.clone().ok_or(Error::ImperfectResidueUnsupported)
    }

    /// "μ0=[v; x-0, 1/2] → μ1=[μ0; x^2-2, inf]".
    pub fn display_chain(&self) -> String {
        let k = &self.k;
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let key = if i == 0 {
                    let a = k.neg(&l.phi.coeffs()[0]);
                    let s = k.display(&a);
                    match s.strip_prefix('-') {
                        Some(rest) => format!("x+{rest}"),
                        None if s.contains([' ', '+']) => format!("x-({s})"),
                        None => format!("x-{s}"),
                    }
                } else {
                    poly_string(&l.phi, k).replace(" ", "")
                };
                let base = if i == 0 { "v".to_string() } else { format!("μ{}", i - 1) };
                format!("μ{i}=[{base}; {key}, {}]", l.gamma)
            })
            .collect::<Vec<_>>()
            .join(" → ")
    }
}

/// Drops the lowest powers of `y`.
pub(crate) fn strip_low(r: &Poly<FfElem>, kf: &FiniteField) -> Poly<FfElem> {
    match r.low_order(kf) {
        Some(s) if s > 0 => Poly::from_coeffs(kf, r.coeffs()[s..].to_vec()),
        _ => r.clone(),
    }
}

/// `ν_q(f) = min ν(f_k q^k)` over the `q`-expansion.
pub fn truncation_eval(
    nu: impl Fn(&KPoly) -> Value,
    q: &KPoly,
    f: &KPoly,
    k: &ValuedField,
) -> Result<Value> {
    let parts = phi_expansion(f, q, k)?;
    let vq = nu(q);
    Ok(parts
        .iter()
        .enumerate()
        .map(|(i, c)| &nu(c) + &vq.times(i))
        .min()
        .unwrap_or(Value::Infinity))
}

#[cfg(test)]
mod tests;
