//! Queries on a finished report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{attach, refine, Branch, BranchStatus, Defect, ExtensionReport, Tail};
use crate::error::{Error, Result};
use crate::indval::{residual, truncation_eval};
use crate::poly::{random_poly, KPoly};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Induced {
    Value(Value),
    Unstable,
}

fn branch(report: &ExtensionReport, bi: usize) -> Result<&Branch> {
    report
        .branches
        .get(bi)
        .ok_or(Error::IndexOutOfRange { index: bi, len: report.branches.len() })
}

/// Up to `count` further same-degree keys after the tail.
fn continue_tail(report: &ExtensionReport, tail: &Tail, count: usize) -> Vec<Tail> {
    let mut out: Vec<Tail> = Vec::new();
    while out.len() < count {
        let cur = out.last().unwrap_or(tail);
        match refine(&report.field, &report.g, cur) {
            Some(t) => out.push(t),
            None => break,
        }
    }
    out
}

/// `ν(f) = v(f(η))` for the branch's root `η`.
pub fn induced_value(report: &ExtensionReport, bi: usize, f: &KPoly) -> Result<Induced> {
    let b = branch(report, bi)?;
    let k = &report.field;
    if f.is_zero() || f.rem(&report.g, k).unwrap().is_zero() {
        return Ok(Induced::Value(Value::Infinity));
    }
    if b.chain.is_terminal() {
        return Ok(Induced::Value(b.chain.evaluate(f)));
    }
    let tail = b.tail.as_ref().expect("open branch has a tail");
    if let BranchStatus::LimitSuspected { .. } = b.status {
        let m = tail.phi.degree();
        let prefixes: Vec<Value> = b
            .history
            .iter()
            .filter(|(q, _)| q.degree() == m)
            .map(|(q, g)| attach(k, tail.base.as_ref(), q, g.clone()).evaluate(f))
            .collect();
        return Ok(prefixes
            .windows(2)
            .find(|w| w[0] == w[1])
            .map_or(Induced::Unstable, |w| Induced::Value(w[0].clone())));
    }
    // refine until the next key no longer divides f in the graded ring
    let mut cur = tail.clone();
    for _ in 0..256 {
        let Some(next) = refine(k, &report.g, &cur) else { break };
        let same = attach(k, cur.base.as_ref(), &next.phi, cur.gamma.clone());
        if residual::min_index(same.levels(), k, f) == 0 {
            return Ok(Induced::Value(same.evaluate(f)));
        }
        cur = next;
    }
    Ok(Induced::Unstable)
}

/// `(φ_t, deg φ_t)` for the step into level `t`.
pub fn tangent_direction(b: &Branch, t: usize) -> Result<(KPoly, usize)> {
    let levels = b.chain.levels();
    let l = levels.get(t).ok_or(Error::IndexOutOfRange { index: t, len: levels.len() })?;
    Ok((l.phi.clone(), l.degree()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    Empty,
    MaxAttained { q: KPoly, value: Value },
    UnboundedEvidence(Vec<(KPoly, Value)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub degree: usize,
    pub outcome: ScanOutcome,
}

/// Degree-`m` keys of the branch: the last one when the chain moves past
/// `m`, the approximants after the first when the branch stalls at `m`.
pub fn psi_m_scan(report: &ExtensionReport, bi: usize, m: usize, budget: usize) -> Result<ScanResult> {
    let b = branch(report, bi)?;
    let at_m: Vec<&(KPoly, Value)> = b.history.iter().filter(|(q, _)| q.degree() == Some(m)).collect();
    let outcome = match &b.tail {
        Some(tail) if b.stall_degree() == Some(m) => {
            let mut ev: Vec<(KPoly, Value)> = at_m.iter().skip(1).take(budget).map(|&p| p.clone()).collect();
            if ev.len() < budget {
                let start = Tail { phi: ev.last().map_or(tail.phi.clone(), |p| p.0.clone()), gamma: ev.last().map_or(tail.gamma.clone(), |p| p.1.clone()), ..tail.clone() };
                ev.extend(continue_tail(report, &start, budget - ev.len()).into_iter().map(|t| (t.phi, t.gamma)));
            }
            if ev.is_empty() {
                ScanOutcome::Empty
            } else {
                ScanOutcome::UnboundedEvidence(ev)
            }
        }
        _ => match at_m.last() {
            Some((q, v)) => ScanOutcome::MaxAttained { q: q.clone(), value: v.clone() },
            None => ScanOutcome::Empty,
        },
    };
    Ok(ScanResult { degree: m, outcome })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoFcsReason {
    Branched,
    DefectSuspected,
    ContractFailed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FcsOutcome {
    Sequence { keys: Vec<(KPoly, Value)>, checked: usize },
    None(NoFcsReason),
}

pub const FCS_CHECKS: usize = 100;

/// The chain keys plus `g`, checked against the complete-set contract on
/// random polynomials.
pub fn finite_complete_sequence(report: &ExtensionReport, bi: usize) -> Result<FcsOutcome> {
    let b = branch(report, bi)?;
    if !report.unibranched {
        return Ok(FcsOutcome::None(NoFcsReason::Branched));
    }
    if !b.is_terminated() || b.d != Defect::Exact(1) || !b.chain.is_terminal() {
        return Ok(FcsOutcome::None(NoFcsReason::DefectSuspected));
    }
    let k = &report.field;
    let keys: Vec<(KPoly, Value)> = b.chain.levels().iter().map(|l| (l.phi.clone(), l.gamma.clone())).collect();
    let nu = |h: &KPoly| b.chain.evaluate(h);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6663_7331);
    let mut checked = 0;
    while checked < FCS_CHECKS {
        let f = random_poly(k, 1 + checked % (2 * report.n + 1), &mut rng);
        let Some(df) = f.degree().filter(|&d| d >= 1) else { continue };
        let target = nu(&f);
        let ok = keys
            .iter()
            .filter(|(q, _)| q.degree().unwrap() <= df)
            .any(|(q, _)| truncation_eval(nu, q, &f, k).unwrap() == target);
        if !ok {
            return Ok(FcsOutcome::None(NoFcsReason::ContractFailed));
        }
        checked += 1;
    }
    Ok(FcsOutcome::Sequence { keys, checked })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectEntry {
    pub d: Defect,
    /// `(stalled degree, local degree)` for each suspected limit step.
    pub limit_steps: Vec<(usize, usize)>,
}

pub fn defect(report: &ExtensionReport) -> Vec<DefectEntry> {
    report
        .branches
        .iter()
        .map(|b| {
            let limit_steps = match b.status {
                BranchStatus::LimitSuspected { .. } => vec![(b.stall_degree().unwrap(), b.n_local)],
                BranchStatus::Terminated => Vec::new(),
            };
            DefectEntry { d: b.d, limit_steps }
        })
        .collect()
}
