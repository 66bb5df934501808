//! Extensions of `v` to `K[x]/(g)` as branches of MacLane–Vaquié chains.
//!
//! Starting from `x` over `v`, each step takes the principal part of the
//! Newton polygon of `g` in the current key, splits it by side and by
//! irreducible factor of the side's residual polynomial, and lifts each
//! factor `ψ^m` to the next key. A factor with `e f = 1` and `m > 1` keeps the
//! degree: the key is replaced and the step repeats, which is where limit
//! behaviour shows up.

mod irreducible;
pub mod scan;

use crate::arith::factor;
use crate::arith::{FfElem, Field, Poly};
use crate::error::{Error, Result};
use crate::fields::{FieldKind, ValuedField};
use crate::indval::{residual, strip_low, InductiveValuation};
use crate::par::{self, ExecMode};
use crate::poly::{phi_expansion, KPoly};
use crate::value::{qi, Value, Q};

pub use scan::{
    defect, finite_complete_sequence, induced_value, psi_m_scan, tangent_direction, DefectEntry,
    FcsOutcome, Induced, NoFcsReason, ScanOutcome, ScanResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_depth: usize,
    pub max_limit_probes: usize,
    pub mode: ExecMode,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_depth: 32, max_limit_probes: 8, mode: ExecMode::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchStatus {
    Terminated,
    LimitSuspected { prefix_len: usize, trajectory: Vec<Value> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    Exact(u64),
    LowerBound(u64),
}

impl Defect {
    pub fn value(&self) -> u64 {
        match self {
            Defect::Exact(d) | Defect::LowerBound(d) => *d,
        }
    }
}

/// The open end of a branch whose chain cannot reach `γ = ∞`: the key
/// `φ` with value `γ` over `base` (`None` is `v` itself) keeps being
/// refined at the same degree.
#[derive(Clone, Debug)]
pub struct Tail {
    pub base: Option<InductiveValuation>,
    pub phi: KPoly,
    pub gamma: Value,
    pub mult: usize,
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub chain: InductiveValuation,
    pub status: BranchStatus,
    pub e: u64,
    pub f: u64,
    pub d: Defect,
    pub key_polys: Vec<KPoly>,
    /// Degree of the local factor of `g` this branch belongs to.
    pub n_local: usize,
    /// Every key met on the way with its value, in order.
    pub history: Vec<(KPoly, Value)>,
    pub tail: Option<Tail>,
}

impl Branch {
    pub fn is_terminated(&self) -> bool {
        self.status == BranchStatus::Terminated
    }

    /// Degree at which the branch keeps refining, if it does.
    pub fn stall_degree(&self) -> Option<usize> {
        self.tail.as_ref().map(|t| t.phi.degree().unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumCheck {
    pub sum: u64,
    pub n: u64,
    /// All branches terminated, so equality is expected.
    pub exact: bool,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub field: ValuedField,
    pub g: KPoly,
    pub n: usize,
    pub branches: Vec<Branch>,
    pub unibranched: bool,
    pub sum_check: SumCheck,
    pub bounds: Bounds,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
struct Side {
    gamma: Q,
    delta: Q,
}

/// Sides of the lower convex hull with `γ > θ`, in increasing `γ`.
fn principal_sides(points: &[(usize, Q)], theta: Option<&Q>) -> Vec<Side> {
    let mut hull: Vec<(usize, Q)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a-p
            let lhs = (&b.1 - &a.1) * qi((p.0 - a.0) as i64);
            let rhs = (&p.1 - &a.1) * qi((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    let mut sides: Vec<Side> = hull
        .windows(2)
        .map(|w| {
            let gamma = (&w[0].1 - &w[1].1) / qi((w[1].0 - w[0].0) as i64);
            let delta = &w[0].1 + &gamma * qi(w[0].0 as i64);
            Side { gamma, delta }
        })
        .filter(|s| theta.map_or(true, |t| &s.gamma > t))
        .collect();
    sides.reverse();
    sides
}

/// `[base; φ, γ]`, or the depth-zero valuation with key `φ` when there is no base.
fn attach(k: &ValuedField, base: Option<&InductiveValuation>, phi: &KPoly, gamma: Value) -> InductiveValuation {
    match base {
        Some(b) => b.extend_unchecked(phi.clone(), gamma),
        None => InductiveValuation::depth_zero(k, &k.neg(&phi.coeffs()[0]), gamma),
    }
}

fn levels_of(base: Option<&InductiveValuation>) -> &[crate::indval::Level] {
    base.map_or(&[], |b| b.levels())
}

/// Newton polygon points of the `φ`-expansion of `g` over `base`.
fn points(k: &ValuedField, base: Option<&InductiveValuation>, g: &KPoly, phi: &KPoly) -> (Vec<(usize, Q)>, bool) {
    let parts = phi_expansion(g, phi, k).unwrap();
    let divides = parts[0].is_zero();
    let pts = parts
        .iter()
        .enumerate()
        .filter_map(|(i, c)| residual::value(levels_of(base), k, c).finite().map(|w| (i, w.clone())))
        .collect();
    (pts, divides)
}

/// Irreducible factors of the side residual polynomial, linear ones ordered
/// by root.
fn residual_factors(mu: &InductiveValuation, g: &KPoly, delta: &Q) -> Vec<(Poly<FfElem>, usize)> {
    let j = mu.levels().len() - 1;
    let kj = mu.residual_field().unwrap();
    let r = residual::residual(mu.levels(), mu.field(), j, g, delta);
    let r = strip_low(&r, &kj).make_monic(&kj);
    let mut fs = factor::factor(&r, &kj);
    fs.sort_by_key(|(p, _)| {
        let key = if p.degree() == Some(1) {
            vec![kj.neg(&p.coeffs()[0])]
        } else {
            p.coeffs().iter().rev().cloned().collect()
        };
        (p.degree(), key)
    });
    fs
}

struct Ctx<'a> {
    k: &'a ValuedField,
    g: &'a KPoly,
    n: usize,
    bounds: &'a Bounds,
}

fn finite_q(v: &Value) -> Q {
    v.finite().unwrap().clone()
}

impl Ctx<'_> {
    fn branch(&self, chain: InductiveValuation, history: Vec<(KPoly, Value)>, tail: Option<Tail>, n_local: usize, limit: bool) -> Branch {
        let e: u64 = chain.levels().iter().filter(|l| !l.gamma.is_infinite()).map(|l| l.e).product();
        let f: u64 = chain.inertia_indices().iter().product();
        let key_polys = chain.levels().iter().map(|l| l.phi.clone()).collect();
        let (status, d) = if limit {
            let t = tail.as_ref().unwrap();
            let m = t.phi.degree().unwrap();
            let trajectory = history.iter().filter(|(q, _)| q.degree() == Some(m)).map(|(_, v)| v.clone()).collect();
            let status = BranchStatus::LimitSuspected { prefix_len: chain.levels().len(), trajectory };
            (status, Defect::LowerBound((n_local / m) as u64))
        } else {
            (BranchStatus::Terminated, Defect::Exact(n_local as u64 / (e * f)))
        };
        Branch { chain, status, e, f, d, key_polys, n_local, history, tail }
    }

    fn explore(
        &self,
        base: Option<&InductiveValuation>,
        phi: KPoly,
        theta: Option<Q>,
        stagnation: usize,
        depth: usize,
        history: Vec<(KPoly, Value)>,
    ) -> Result<Vec<Branch>> {
        if depth > self.bounds.max_depth {
            return Err(Error::DepthExceeded(self.bounds.max_depth));
        }
        let k = self.k;
        let (pts, divides) = points(k, base, self.g, &phi);
        if divides {
            let chain = attach(k, base, &phi, Value::Infinity);
            let mut h = history;
            h.push((phi.clone(), Value::Infinity));
            let n_local = phi.degree().unwrap();
            return Ok(vec![self.branch(chain, h, None, n_local, false)]);
        }
        let mut tasks = Vec::new();
        for side in principal_sides(&pts, theta.as_ref()) {
            let mu = attach(k, base, &phi, Value::Finite(side.gamma.clone()));
            for (psi, m) in residual_factors(&mu, self.g, &side.delta) {
                tasks.push((mu.clone(), side.gamma.clone(), psi, m));
            }
        }
        let results = par::map(self.bounds.mode, tasks, |(mu, gamma, psi, m)| {
            self.follow(base, &phi, mu, gamma, &psi, m, stagnation, depth, history.clone())
        });
        let mut out = Vec::new();
        for r in results {
            out.extend(r?);
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn follow(
        &self,
        base: Option<&InductiveValuation>,
        phi: &KPoly,
        mu: InductiveValuation,
        gamma: Q,
        psi: &Poly<FfElem>,
        m: usize,
        stagnation: usize,
        depth: usize,
        mut history: Vec<(KPoly, Value)>,
    ) -> Result<Vec<Branch>> {
        let k = self.k;
        history.push((phi.clone(), Value::Finite(gamma.clone())));
        let e = mu.top().e as usize;
        let ef = e * psi.degree().unwrap();
        let new_deg = ef * phi.degree().unwrap();
        if m == 1 && new_deg == self.n {
            let chain = if ef == 1 {
                attach(k, base, self.g, Value::Infinity)
            } else {
                mu.extend_unchecked(self.g.clone(), Value::Infinity)
            };
            history.push((self.g.clone(), Value::Infinity));
            return Ok(vec![self.branch(chain, history, None, new_deg, false)]);
        }
        let j = mu.levels().len() - 1;
        let lift = residual::lift_key(mu.levels(), k, j, psi);
        let (nbase, ntheta) = if ef == 1 {
            (base.cloned(), gamma.clone())
        } else {
            (Some(mu.clone()), &gamma * qi(ef as i64))
        };
        if m == 1 {
            let (pts, _) = points(k, nbase.as_ref(), self.g, &lift);
            let side = principal_sides(&pts, Some(&ntheta)).pop().expect("principal side of length one");
            let gamma = Value::Finite(side.gamma);
            history.push((lift.clone(), gamma.clone()));
            let chain = attach(k, nbase.as_ref(), &lift, gamma.clone());
            let tail = Tail { base: nbase, phi: lift, gamma, mult: 1 };
            return Ok(vec![self.branch(chain, history, Some(tail), new_deg, false)]);
        }
        if ef == 1 && stagnation + 1 > self.bounds.max_limit_probes {
            let tail = Tail { base: base.cloned(), phi: phi.clone(), gamma: Value::Finite(gamma), mult: m };
            let n_local = m * phi.degree().unwrap();
            return Ok(vec![self.branch(mu, history, Some(tail), n_local, true)]);
        }
        let next_stag = if ef == 1 { stagnation + 1 } else { 0 };
        self.explore(nbase.as_ref(), lift, Some(ntheta), next_stag, depth + 1, history)
    }
}

/// One same-degree refinement of a branch tail: the next key and its value.
/// `None` when the principal part no longer has a single linear residual factor.
pub fn refine(k: &ValuedField, g: &KPoly, tail: &Tail) -> Option<Tail> {
    let base = tail.base.as_ref();
    let mu = attach(k, base, &tail.phi, tail.gamma.clone());
    if mu.top().e != 1 {
        return None;
    }
    let (pts, _) = points(k, base, g, &tail.phi);
    let gamma = finite_q(&tail.gamma);
    let delta = pts.iter().map(|(i, w)| w + &gamma * qi(*i as i64)).min().unwrap();
    let fs = residual_factors(&mu, g, &delta);
    let [(psi, m)] = fs.as_slice() else { return None };
    if psi.degree() != Some(1) {
        return None;
    }
    let j = mu.levels().len() - 1;
    let lift = residual::lift_key(mu.levels(), k, j, psi);
    let (pts, divides) = points(k, base, g, &lift);
    if divides {
        return None;
    }
    let sides = principal_sides(&pts, Some(&gamma));
    let [side] = sides.as_slice() else { return None };
    Some(Tail { base: tail.base.clone(), phi: lift, gamma: Value::Finite(side.gamma.clone()), mult: *m })
}

/// All extensions of `v` to `K[x]/(g)`.
pub fn mac_lane_chains(k: &ValuedField, g: &KPoly, bounds: Bounds) -> Result<ExtensionReport> {
    if k.kind() == FieldKind::FpCT {
        return Err(Error::ResidueUnsupported);
    }
    let n = match g.degree() {
        Some(n) if n >= 1 && g.is_monic(k) => n,
        _ => return Err(Error::NotMonic),
    };
    let warnings = if k.kind() == FieldKind::Qp { irreducible::warnings(g, k) } else { Vec::new() };
    let cx = Ctx { k, g, n, bounds: &bounds };
    let branches = cx.explore(None, Poly::x(k), None, 0, 0, Vec::new())?;
    let sum: u64 = branches.iter().map(|b| b.e * b.f * b.d.value()).sum();
    let exact = branches.iter().all(Branch::is_terminated);
    let ef_sum: u64 = branches.iter().map(|b| b.e * b.f).sum();
    let holds = if exact { sum == n as u64 } else { ef_sum <= n as u64 };
    Ok(ExtensionReport {
        field: k.clone(),
        g: g.clone(),
        n,
        unibranched: branches.len() == 1,
        branches,
        sum_check: SumCheck { sum, n: n as u64, exact, holds },
        bounds,
        warnings,
    })
}
