//! Residual coefficients and residual polynomials along a chain of levels.
//!
//! Level `j` carries the key `φ_j` with value `γ_j`, and the residue field
//! `κ_j` of the valuation with levels `0..=j`. A monomial
//! `ε(δ_0) φ_0^{a_0} … φ_j^{a_j}` is stored as its exponent vector. `Π_j(δ)` is
//! the canonical monomial of value `δ` with `0 <= a_i < e_i`, and
//! `y_j = φ_j^{e_j} / Π_{j-1}(e_j γ_j)` is the residual variable at level `j`.
//! In `κ_{j+1}` the class of `y_j` becomes `z_j`, a root of `ψ_j`.

use crate::arith::{FfElem, Field, FiniteField, Poly};
use crate::fields::ValuedField;
use crate::poly::{phi_expansion, KPoly};
use crate::value::{qi, Value, Q};

use super::Level;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub d0: Q,
    pub a: Vec<i64>,
}

impl Monomial {
    fn constant(d0: Q) -> Self {
        Monomial { d0, a: Vec::new() }
    }

    fn combine(&self, other: &Monomial, s: i64) -> Monomial {
        let n = self.a.len().max(other.a.len());
        let a = (0..n)
            .map(|i| self.a.get(i).copied().unwrap_or(0) + s * other.a.get(i).copied().unwrap_or(0))
            .collect();
        Monomial { d0: &self.d0 + &other.d0 * qi(s), a }
    }

    fn with(mut self, j: usize, k: i64) -> Monomial {
        if self.a.len() <= j {
            self.a.resize(j + 1, 0);
        }
        self.a[j] += k;
        self
    }
}

fn finite(g: &Value) -> &Q {
    g.finite().expect("finite level value")
}

pub(crate) fn kappa(levels: &[Level], j: usize) -> &FiniteField {
    levels[j].kappa.as_ref().expect("finite residue field")
}

/// Value of `f` under the valuation built from `levels`; no levels means `v`
/// on constants.
pub fn value(levels: &[Level], k: &ValuedField, f: &KPoly) -> Value {
    if f.is_zero() {
        return Value::Infinity;
    }
    let Some((top, rest)) = levels.split_last() else {
        debug_assert!(f.is_constant());
        return k.valuate(&f.coeffs()[0]);
    };
    if f.degree() < top.phi.degree() {
        return value(rest, k, f);
    }
    expansion_values(levels, k, f).into_iter().min().unwrap()
}

/// `μ(f_k φ^k)` for the top-level expansion.
pub fn expansion_values(levels: &[Level], k: &ValuedField, f: &KPoly) -> Vec<Value> {
    let (top, rest) = levels.split_last().unwrap();
    phi_expansion(f, &top.phi, k)
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, c)| &value(rest, k, c) + &top.gamma.times(i))
        .collect()
}

/// Least index attaining the minimum in the top-level expansion.
pub fn min_index(levels: &[Level], k: &ValuedField, f: &KPoly) -> usize {
    let vals = expansion_values(levels, k, f);
    let m = vals.iter().min().unwrap();
    vals.iter().position(|v| v == m).unwrap()
}

/// `Π_j(δ)`, for `δ` in the value group of level `j`.
pub fn pi(levels: &[Level], j: usize, delta: &Q) -> Monomial {
    let lv = &levels[j];
    let g = finite(&lv.gamma);
    let k0 = (0..lv.e as i64)
        .find(|&k0| lv.group_prev.contains(&(delta - g * qi(k0))))
        .expect("value outside the group");
    let rest = delta - g * qi(k0);
    let low = if j == 0 { Monomial::constant(rest) } else { pi(levels, j - 1, &rest) };
    low.with(j, k0)
}

/// `Π_{j-1}(δ)`, with `Π_{-1}(δ) = ε(δ)`.
fn pi_below(levels: &[Level], j: usize, delta: &Q) -> Monomial {
    if j == 0 {
        Monomial::constant(delta.clone())
    } else {
        pi(levels, j - 1, delta)
    }
}

/// Maps an element of `κ_{j-1}` into `κ_j`.
fn embed_prev(levels: &[Level], j: usize, c: &FfElem) -> FfElem {
    let lv = &levels[j];
    if lv.psi_prev.as_ref().is_some_and(|p| p.degree() > Some(1)) {
        kappa(levels, j).embed_base(c)
    } else {
        c.clone()
    }
}

/// A value-zero monomial at level `j` reduces to `c · y_j^t`.
pub fn red(levels: &[Level], j: usize, m: &Monomial) -> (FfElem, i64) {
    let lv = &levels[j];
    let aj = m.a.get(j).copied().unwrap_or(0);
    let e = lv.e as i64;
    debug_assert_eq!(aj % e, 0);
    let t = aj / e;
    let kj = kappa(levels, j);
    if j == 0 {
        return (kj.one(), t);
    }
    let mut low = Monomial { d0: m.d0.clone(), a: m.a[..j.min(m.a.len())].to_vec() };
    let step = pi(levels, j - 1, &(finite(&lv.gamma) * qi(e)));
    low = low.combine(&step, t);
    let (c, s) = red(levels, j - 1, &low);
    let z = lv.z_prev.as_ref().unwrap();
    let zs = kj.powi(z, s).unwrap();
    (kj.mul(&embed_prev(levels, j, &c), &zs), t)
}

/// Class of `a / Π_{j-1}(δ)` in `κ_j` for `deg a < deg φ_j`.
pub fn res_coeff(levels: &[Level], k: &ValuedField, j: usize, a: &KPoly, delta: &Q) -> FfElem {
    let kj = kappa(levels, j);
    if a.is_zero() {
        return kj.zero();
    }
    let va = value(&levels[..j], k, a);
    let d = Value::Finite(delta.clone());
    if va > d {
        return kj.zero();
    }
    debug_assert_eq!(va, d, "coefficient below the requested value");
    if j == 0 {
        let eps = k.uniformizer_pow(delta);
        let b = k.div(&a.coeffs()[0], &eps).unwrap();
        return k.residue_ff(&b).expect("finite residue");
    }
    let r = residual(levels, k, j - 1, a, delta);
    let z = levels[j].z_prev.as_ref().unwrap();
    let r = r.map_coeffs(kj, |c| embed_prev(levels, j, c));
    r.eval(z, kj)
}

/// `R_j(f, δ)` over `κ_j`, for `μ_j(f) >= δ` and `δ` in the level-`j` group.
pub fn residual(levels: &[Level], k: &ValuedField, j: usize, f: &KPoly, delta: &Q) -> Poly<FfElem> {
    let lv = &levels[j];
    let kj = kappa(levels, j);
    let g = finite(&lv.gamma);
    let p = pi(levels, j, delta);
    let k0 = p.a[j] as usize;
    let e = lv.e as usize;
    let parts = phi_expansion(f, &lv.phi, k).unwrap();
    let mut out = vec![kj.zero(); parts.len() / e + 1];
    for kk in (k0..parts.len()).step_by(e) {
        let dk = delta - g * qi(kk as i64);
        let c = res_coeff(levels, k, j, &parts[kk], &dk);
        if kj.is_zero(&c) {
            continue;
        }
        let m = pi_below(levels, j, &dk).with(j, kk as i64).combine(&p, -1);
        let (w, _) = red(levels, j, &m);
        let i = (kk - k0) / e;
        out[i] = kj.add(&out[i], &kj.mul(&c, &w));
    }
    Poly::from_coeffs(kj, out)
}

/// A polynomial `a` with `deg a < deg φ_j`, `μ_{j-1}(a) = δ` and
/// `res_coeff(j, a, δ) = c`.
pub fn lift_coeff(levels: &[Level], k: &ValuedField, j: usize, c: &FfElem, delta: &Q) -> KPoly {
    let kj = kappa(levels, j);
    if kj.is_zero(c) {
        return Poly::zero();
    }
    if j == 0 {
        let a = k.mul(&k.lift_ff(c), &k.uniformizer_pow(delta));
        return Poly::constant(k, a);
    }
    let lv = &levels[j];
    let prev = &levels[j - 1];
    let kp = kappa(levels, j - 1);
    let coords: Vec<FfElem> = if lv.psi_prev.as_ref().is_some_and(|p| p.degree() > Some(1)) {
        kj.to_poly(c).into_coeffs()
    } else {
        vec![c.clone()]
    };
    let p = pi(levels, j - 1, delta);
    let k0 = p.a[j - 1];
    let e = prev.e as i64;
    let g = finite(&prev.gamma);
    let mut out = Poly::zero();
    for (i, ci) in coords.iter().enumerate() {
        if kp.is_zero(ci) {
            continue;
        }
        let ki = k0 + i as i64 * e;
        let di = delta - g * qi(ki);
        let m = pi_below(levels, j - 1, &di).with(j - 1, ki).combine(&p, -1);
        let (w, _) = red(levels, j - 1, &m);
        let ai = lift_coeff(levels, k, j - 1, &kp.div(ci, &w).unwrap(), &di);
        out = out.add(&ai.mul(&prev.phi.pow(ki as u64, k), k), k);
    }
    out
}

/// The key polynomial `φ_j^{ef} + Σ A_i φ_j^{ie}` whose residual polynomial
/// at level `j` is a unit multiple of the monic `ψ`.
pub fn lift_key(levels: &[Level], k: &ValuedField, j: usize, psi: &Poly<FfElem>) -> KPoly {
    let lv = &levels[j];
    let kj = kappa(levels, j);
    let e = lv.e as i64;
    let f = psi.degree().unwrap() as i64;
    let g = finite(&lv.gamma);
    let top = g * qi(e * f);
    let p = pi(levels, j, &top);
    let w = |i: i64| {
        let d = g * qi((f - i) * e);
        let m = pi_below(levels, j, &d).with(j, i * e).combine(&p, -1);
        red(levels, j, &m).0
    };
    let u = w(f);
    let mut out = lv.phi.pow((e * f) as u64, k);
    for i in 0..f {
        let ci = psi.coeff(kj, i as usize);
        if kj.is_zero(&ci) {
            continue;
        }
        let target = kj.div(&kj.mul(&u, &ci), &w(i)).unwrap();
        // lifting -c and negating keeps linear keys in the form x - a with a
        // built from nonnegative digits
        let a = lift_coeff(levels, k, j, &kj.neg(&target), &(g * qi((f - i) * e))).neg(k);
        out = out.add(&a.mul(&lv.phi.pow((i * e) as u64, k), k), k);
    }
    out
}
