//! Tameness evidence, algebraic-maximality witnesses, Kähler differentials of
//! simple extensions, (DRvg), and the stable-value computation.

mod stable;
#[cfg(test)]
mod tests;

pub use stable::{stable_value, StableConfig, StableOutcome, StableRun};

use crate::arith::{Field, Poly};
use crate::engine::{
    finite_complete_sequence, induced_value, mac_lane_chains, psi_m_scan, Bounds, ExtensionReport,
    FcsOutcome, Induced, ScanOutcome,
};
use crate::error::{Error, Result};
use crate::fields::{FieldElement, ValuedField};
use crate::graded::{FrobeniusWitness, GradedRing, Surjectivity};
use crate::par::{self, ExecMode};
use crate::poly::KPoly;
use crate::value::{Divisibility, Value, ValueGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Set when the report is branched or has an open branch, so the
    /// verdict rests on incomplete data.
    pub suspected: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeVerdicts {
    pub te1: Verdict,
    pub te2: Verdict,
    pub te3: Verdict,
}

impl TeVerdicts {
    pub fn all_hold(&self) -> bool {
        self.te1.holds && self.te2.holds && self.te3.holds
    }
}

pub fn te_conditions(report: &ExtensionReport) -> TeVerdicts {
    let p = report.field.p();
    let suspected = !report.unibranched || report.branches.iter().any(|b| !b.is_terminated());
    let es: Vec<u64> = report.branches.iter().map(|b| b.e).collect();
    let ds: Vec<u64> = report.branches.iter().map(|b| b.d.value()).collect();
    let te1 = es.iter().all(|e| e % p != 0);
    let te3 = ds.iter().all(|&d| d == 1);
    TeVerdicts {
        te1: Verdict { holds: te1, suspected, detail: format!("e = {es:?}, p = {p}") },
        te2: Verdict {
            holds: true,
            suspected,
            detail: "finite residue fields are perfect, so residue extensions are separable".into(),
        },
        te3: Verdict { holds: te3, suspected, detail: format!("d = {ds:?}") },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Te1Witness {
    Witness {
        g: KPoly,
        /// `e` found by the engine; `None` when the engine cannot run over
        /// the field.
        verified_index: Option<u64>,
    },
    NotApplicable,
}

/// `x^p - a` with `v(a)` outside `p·vK`, checked to have `e = p`.
pub fn te1_witness(k: &ValuedField, bounds: Bounds) -> Te1Witness {
    if k.value_group_p_divisible() == Divisibility::Yes {
        return Te1Witness::NotApplicable;
    }
    let p = k.p() as usize;
    let g = Poly::monomial(k, k.one(), p).sub(&Poly::constant(k, k.t()), k);
    let verified_index = mac_lane_chains(k, &g, bounds).ok().map(|r| r.branches[0].e);
    Te1Witness::Witness { g, verified_index }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub g: KPoly,
    pub fcs: std::result::Result<FcsOutcome, Error>,
    pub te: Option<TeVerdicts>,
}

impl SuiteEntry {
    fn failure(&self) -> Option<String> {
        let te = match (&self.fcs, &self.te) {
            (Err(e), _) => return Some(format!("engine error: {e}")),
            (Ok(FcsOutcome::None(r)), _) => return Some(format!("no finite complete sequence: {r:?}")),
            (Ok(_), Some(te)) => te,
            (Ok(_), None) => return None,
        };
        [("TE1", &te.te1), ("TE2", &te.te2), ("TE3", &te.te3)]
            .iter()
            .find(|(_, v)| !v.holds)
            .map(|(n, v)| format!("{n} fails ({})", v.detail))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameWitness {
    GradedImperfect(FrobeniusWitness),
    Extension { index: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tameness {
    /// Every check passed on the suite. This is evidence, not a proof.
    TameEvidence,
    NotTame(TameWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameReport {
    pub gr_perfect: Surjectivity,
    pub per_extension: Vec<SuiteEntry>,
    pub overall: Tameness,
}

pub fn tame_report(k: &ValuedField, suite: &[KPoly], bounds: Bounds) -> TameReport {
    let gr_perfect = GradedRing::new(k).frobenius_surjective();
    let per_extension = par::map(bounds.mode, suite.to_vec(), |g| {
        let inner = Bounds { mode: ExecMode::Sequential, ..bounds };
        match mac_lane_chains(k, &g, inner) {
            Ok(r) => SuiteEntry { fcs: finite_complete_sequence(&r, 0), te: Some(te_conditions(&r)), g },
            Err(e) => SuiteEntry { g, fcs: Err(e), te: None },
        }
    });
    let overall = match &gr_perfect {
        Surjectivity::No(w) => Tameness::NotTame(TameWitness::GradedImperfect(w.clone())),
        Surjectivity::Yes => per_extension
            .iter()
            .enumerate()
            .find_map(|(index, e)| e.failure().map(|reason| TameWitness::Extension { index, reason }))
            .map_or(Tameness::TameEvidence, Tameness::NotTame),
    };
    TameReport { gr_perfect, per_extension, overall }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgMax {
    MaxAttained { a: FieldElement, value: Value },
    NoMaxEvidence(Vec<Value>),
}

/// Whether `v(η - a)` attains a maximum over `a ∈ K`, read off the
/// degree-one keys of branch 0.
pub fn alg_max_evidence(report: &ExtensionReport, budget: usize) -> Result<AlgMax> {
    let k = &report.field;
    Ok(match psi_m_scan(report, 0, 1, budget)?.outcome {
        ScanOutcome::MaxAttained { q, value } => AlgMax::MaxAttained { a: k.neg(&q.coeff(k, 0)), value },
        ScanOutcome::UnboundedEvidence(ev) => AlgMax::NoMaxEvidence(ev.into_iter().map(|p| p.1).collect()),
        ScanOutcome::Empty => AlgMax::NoMaxEvidence(Vec::new()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KahlerKind {
    PurelyInertial,
    PurelyRamified,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerReport {
    pub kind: KahlerKind,
    pub omega_trivial: bool,
    /// `v(g'(η))` where it is the annihilator.
    pub annihilator: Option<Value>,
    /// `(l, v(l) + v(a_l) - (n-l)γ)` for the non-discrete ramified test.
    pub segments: Vec<(usize, Value)>,
    pub trace: Vec<String>,
}

fn value_of(report: &ExtensionReport, f: &KPoly) -> Result<Value> {
    match induced_value(report, 0, f)? {
        Induced::Value(v) => Ok(v),
        Induced::Unstable => Err(Error::NotAKeyPolynomial("induced value did not stabilize".into())),
    }
}

fn single_terminated(report: &ExtensionReport) -> bool {
    report.unibranched && report.branches[0].is_terminated()
}

/// `Lv = Kv(ηv)`: `g` is integral with irreducible reduction of degree `n`.
fn residue_generates(report: &ExtensionReport) -> bool {
    let k = &report.field;
    let Some(kv) = k.finite_residue() else { return false };
    let coeffs: Option<Vec<_>> = report.g.coeffs().iter().map(|c| k.residue_ff(c).ok()).collect();
    coeffs.is_some_and(|c| crate::arith::factor::is_irreducible(&Poly::from_coeffs(kv, c), kv))
}

pub fn kahler_purely_inertial(report: &ExtensionReport) -> Result<KahlerReport> {
    let b = &report.branches[0];
    if !single_terminated(report) || b.f as usize != report.n {
        return Err(Error::NotPurelyInertial);
    }
    let k = &report.field;
    if !residue_generates(report) {
        return Err(Error::ResidueNotGenerated);
    }
    let v = value_of(report, &report.g.derivative(k))?;
    let trivial = v == Value::zero();
    let mut trace = vec![
        format!("f = n = {}", report.n),
        format!("v(g'(η)) = {v}"),
        "residue extension of finite fields is separable".to_string(),
    ];
    if !trivial {
        trace.push("cross-check failed: separable residue extension but g'(η) is not a unit".into());
    }
    Ok(KahlerReport {
        kind: KahlerKind::PurelyInertial,
        omega_trivial: trivial,
        annihilator: Some(v),
        segments: Vec::new(),
        trace,
    })
}

pub fn kahler_purely_ramified(report: &ExtensionReport) -> Result<KahlerReport> {
    let b = &report.branches[0];
    let n = report.n;
    if !single_terminated(report) || b.e as usize != n {
        return Err(Error::NotPurelyRamified);
    }
    let k = &report.field;
    let gamma = value_of(report, &Poly::x(k))?;
    let g = match gamma.finite() {
        Some(g) if *g > num_traits::Zero::zero() => g.clone(),
        _ => return Err(Error::GammaNotPositive),
    };
    let vl = b.chain.value_group()?;
    let mut trace = vec![
        format!("e = n = {n}"),
        format!("γ = ν(x) = {gamma}"),
        format!("vL = {}; vL/vK is cyclic of order {n}", vl.describe()),
        "Δ = {0}".to_string(),
    ];
    if vl.is_finitely_generated() {
        let v = value_of(report, &report.g.derivative(k))?;
        trace.push(format!("vL is discrete, so (vL/Δ)>0 has a least element; v(g'(η)) = {v}"));
        return Ok(KahlerReport {
            kind: KahlerKind::PurelyRamified,
            omega_trivial: false,
            annihilator: Some(v),
            segments: Vec::new(),
            trace,
        });
    }
    let segments: Vec<(usize, Value)> = (1..=n)
        .map(|l| {
            let vl = k.valuate(&k.from_int(l as i64));
            let va = k.valuate(&report.g.coeff(k, l));
            (l, &(&vl + &va) - &(&g * crate::value::qi((n - l) as i64)))
        })
        .collect();
    let hit = segments.iter().find(|(_, v)| *v == Value::zero());
    match hit {
        Some((l, _)) => trace.push(format!("l = {l} gives v(l) + v(a_l) - (n-l)γ = 0 ∈ Δ")),
        None => trace.push("no l in 1..n gives a value in Δ".into()),
    }
    Ok(KahlerReport {
        kind: KahlerKind::PurelyRamified,
        omega_trivial: hit.is_some(),
        annihilator: None,
        segments,
        trace,
    })
}

/// Dispatches on the shape of the extension.
pub fn kahler(report: &ExtensionReport) -> Result<KahlerReport> {
    match kahler_purely_inertial(report) {
        Err(Error::NotPurelyInertial) => {}
        other => return other,
    }
    match kahler_purely_ramified(report) {
        Err(Error::NotPurelyRamified) => Ok(KahlerReport {
            kind: KahlerKind::Neither,
            omega_trivial: false,
            annihilator: None,
            segments: Vec::new(),
            trace: vec!["neither f = n nor e = n on a single terminated branch".into()],
        }),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Drvg {
    Holds,
    HoldsByPDivisibility,
    /// Convex subgroups `Γ1 ⊊ Γ2` with `Γ2/Γ1 ≅ Z`.
    Fails(String, String),
}

/// (DRvg) for a rank-one group, whose convex subgroups are `{0}` and `G`.
pub fn drvg_check(g: &ValueGroup, p: u64) -> Drvg {
    match g {
        ValueGroup::FinitelyGenerated { .. } => Drvg::Fails("{0}".into(), g.describe()),
        ValueGroup::PDivisibleHull { p: q, .. } if *q == p => Drvg::HoldsByPDivisibility,
        ValueGroup::PDivisibleHull { .. } => Drvg::Holds,
    }
}
