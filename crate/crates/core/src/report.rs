//! JSON and text renderings of engine and analyzer results.
//!
//! Rationals are serialized as `"num/den"` strings and the infinite value as
//! `"inf"`. Every document carries `schemaVersion`.

use serde::{Deserialize, Serialize};

use crate::analyzer::{
    AlgMax, Drvg, KahlerKind, KahlerReport, StableOutcome, StableRun, Te1Witness, TeVerdicts, TameReport,
    TameWitness, Tameness, Verdict,
};
use crate::engine::{BranchStatus, Defect, ExtensionReport, FcsOutcome};
use crate::error::{Error, Result};
use crate::fields::ValuedField;
use crate::graded::{FrobeniusWitness, Surjectivity};
use crate::indval::InductiveValuation;
use crate::parse::parse_field;
use crate::poly::{poly_string, KPoly};
use crate::value::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Text form of a serialized value: `"3/1"` becomes `"3"`.
fn short(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

fn ps(f: &KPoly, k: &ValuedField) -> String {
    poly_string(f, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelJson {
    pub phi: String,
    pub gamma: String,
    pub m: usize,
    pub e: u64,
    pub f: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchJson {
    pub status: String,
    pub chain: Vec<LevelJson>,
    pub e: u64,
    pub f: u64,
    pub d: u64,
    /// `EXACT`, or `LOWER_BOUND` for a suspected limit step.
    pub defect_kind: String,
    pub key_polys: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trajectory: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SumCheckJson {
    pub sum: u64,
    pub n: u64,
    pub exact: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtendJson {
    pub schema_version: u32,
    pub field: String,
    pub poly: String,
    pub n: usize,
    pub unibranched: bool,
    pub branches: Vec<BranchJson>,
    pub sum_check: SumCheckJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn chain_json(mu: &InductiveValuation) -> Vec<LevelJson> {
    let k = mu.field();
    let fs = mu.inertia_indices();
    mu.levels()
        .iter()
        .enumerate()
        .map(|(i, l)| LevelJson {
            phi: ps(&l.phi, k),
            gamma: l.gamma.to_json(),
            m: l.degree(),
            e: l.e,
            f: fs.get(i).copied().unwrap_or(1),
        })
        .collect()
}

impl ExtendJson {
    pub fn from_report(r: &ExtensionReport) -> Self {
        let k = &r.field;
        let branches = r
            .branches
            .iter()
            .map(|b| {
                let (status, trajectory) = match &b.status {
                    BranchStatus::Terminated => ("TERMINATED", Vec::new()),
                    BranchStatus::LimitSuspected { trajectory, .. } => {
                        ("LIMIT_SUSPECTED", trajectory.iter().map(Value::to_json).collect())
                    }
                };
                BranchJson {
                    status: status.into(),
                    chain: chain_json(&b.chain),
                    e: b.e,
                    f: b.f,
                    d: b.d.value(),
                    defect_kind: match b.d {
                        Defect::Exact(_) => "EXACT".into(),
                        Defect::LowerBound(_) => "LOWER_BOUND".into(),
                    },
                    key_polys: b.key_polys.iter().map(|q| ps(q, k)).collect(),
                    trajectory,
                }
            })
            .collect();
        ExtendJson {
            schema_version: SCHEMA_VERSION,
            field: k.name(),
            poly: ps(&r.g, k),
            n: r.n,
            unibranched: r.unibranched,
            branches,
            sum_check: SumCheckJson {
                sum: r.sum_check.sum,
                n: r.sum_check.n,
                exact: r.sum_check.exact,
                holds: r.sum_check.holds,
            },
            warnings: r.warnings.clone(),
        }
    }

    /// Rebuilds each chain from its strings, certifying every augmentation.
    pub fn rebuild_chains(&self) -> Result<Vec<InductiveValuation>> {
        let pf = parse_field(&self.field)?;
        let k = &pf.field;
        let bad = |s: &str| Error::Parse { token: s.to_string(), message: "expected a value".into() };
        self.branches
            .iter()
            .map(|b| {
                let mut mu: Option<InductiveValuation> = None;
                for l in &b.chain {
                    let phi = pf.poly(&l.phi)?;
                    let gamma = Value::parse(&l.gamma).ok_or_else(|| bad(&l.gamma))?;
                    mu = Some(match mu {
                        None => {
                            use crate::arith::Field;
                            InductiveValuation::depth_zero(k, &k.neg(&phi.coeff(k, 0)), gamma)
                        }
                        Some(m) => m.augment(&phi, gamma)?,
                    });
                }
                mu.ok_or_else(|| bad("[]"))
            })
            .collect()
    }
}

pub fn extend_text(r: &ExtensionReport) -> String {
    let k = &r.field;
    let mut out = format!("field {}  g = {}  n = {}\n", k.name(), ps(&r.g, k), r.n);
    for (i, b) in r.branches.iter().enumerate() {
        let status = match &b.status {
            BranchStatus::Terminated => "TERMINATED".to_string(),
            BranchStatus::LimitSuspected { trajectory, .. } => {
                let t: Vec<String> = trajectory.iter().map(|v| v.to_string()).collect();
                format!("LIMIT_SUSPECTED, trajectory {}", t.join(", "))
            }
        };
        let d = match b.d {
            Defect::Exact(d) => d.to_string(),
            Defect::LowerBound(d) => format!(">= {d}"),
        };
        out += &format!("branch {i}: {status}\n  {}\n  e = {}, f = {}, d = {d}\n", b.chain.display_chain(), b.e, b.f);
    }
    let s = &r.sum_check;
    let rel = if s.exact { "=" } else { "<=" };
    let ok = if s.holds { "holds" } else { "FAILS" };
    out += &format!(
        "unibranched: {}\nsum e_i f_i d_i {rel} n: {} {rel} {} {ok}\n",
        r.unibranched, s.sum, s.n
    );
    for w in &r.warnings {
        out += &format!("warning: {w}\n");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictJson {
    pub holds: bool,
    pub suspected: bool,
    pub detail: String,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson { holds: v.holds, suspected: v.suspected, detail: v.detail.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TeJson {
    pub te1: VerdictJson,
    pub te2: VerdictJson,
    pub te3: VerdictJson,
}

impl From<&TeVerdicts> for TeJson {
    fn from(t: &TeVerdicts) -> Self {
        TeJson { te1: (&t.te1).into(), te2: (&t.te2).into(), te3: (&t.te3).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteJson {
    pub g: String,
    pub fcs: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub keys: Vec<(String, String)>,
    pub te: Option<TeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TameJson {
    pub schema_version: u32,
    pub field: String,
    pub gr_perfect: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr_witness: Option<String>,
    pub per_extension: Vec<SuiteJson>,
    pub overall: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub te1_witness: Option<Te1Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drvg: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Te1Json {
    pub g: Option<String>,
    pub verified_index: Option<u64>,
}

pub fn frobenius_witness(k: &ValuedField, w: &FrobeniusWitness) -> String {
    match w {
        FrobeniusWitness::Value(v) => format!("value {v} is not {}-divisible in the value group", k.p()),
        FrobeniusWitness::Residue(r) => {
            format!("residue {} has no p-th root (p = {})", k.residue_field().display(r), k.p())
        }
    }
}

pub fn te1_json(k: &ValuedField, w: &Te1Witness) -> Te1Json {
    match w {
        Te1Witness::Witness { g, verified_index } => Te1Json { g: Some(ps(g, k)), verified_index: *verified_index },
        Te1Witness::NotApplicable => Te1Json { g: None, verified_index: None },
    }
}

pub fn drvg_string(d: &Drvg) -> String {
    match d {
        Drvg::Holds => "HOLDS".into(),
        Drvg::HoldsByPDivisibility => "HOLDS_BY_P_DIVISIBILITY".into(),
        Drvg::Fails(a, b) => format!("FAILS({a}, {b})"),
    }
}

impl TameJson {
    pub fn from_report(k: &ValuedField, r: &TameReport) -> Self {
        let (gr_perfect, gr_witness) = match &r.gr_perfect {
            Surjectivity::Yes => ("YES".to_string(), None),
            Surjectivity::No(w) => ("NO".to_string(), Some(frobenius_witness(k, w))),
        };
        let per_extension = r
            .per_extension
            .iter()
            .map(|e| {
                let (fcs, keys) = match &e.fcs {
                    Ok(FcsOutcome::Sequence { keys, .. }) => (
                        "SEQUENCE".to_string(),
                        keys.iter().map(|(q, v)| (ps(q, k), v.to_json())).collect(),
                    ),
                    Ok(FcsOutcome::None(reason)) => (format!("NONE({reason:?})"), Vec::new()),
                    Err(err) => (format!("ERROR({err})"), Vec::new()),
                };
                SuiteJson { g: ps(&e.g, k), fcs, keys, te: e.te.as_ref().map(TeJson::from) }
            })
            .collect();
        let (overall, witness) = match &r.overall {
            Tameness::TameEvidence => ("TAME_EVIDENCE".to_string(), None),
            Tameness::NotTame(TameWitness::GradedImperfect(w)) => {
                ("NOT_TAME".to_string(), Some(format!("gr(K) not perfect: {}", frobenius_witness(k, w))))
            }
            Tameness::NotTame(TameWitness::Extension { index, reason }) => {
                ("NOT_TAME".to_string(), Some(format!("suite entry {index}: {reason}")))
            }
        };
        TameJson {
            schema_version: SCHEMA_VERSION,
            field: k.name(),
            gr_perfect,
            gr_witness,
            per_extension,
            overall,
            witness,
            te1_witness: None,
            drvg: None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("field {}\ngr(K) perfect: {}", self.field, self.gr_perfect);
        if let Some(w) = &self.gr_witness {
            out += &format!(" ({w})");
        }
        out += "\n";
        for e in &self.per_extension {
            out += &format!("  {}: FCS {}", e.g, e.fcs);
            if let Some(te) = &e.te {
                let v = |x: &VerdictJson| {
                    format!("{}{}", if x.holds { "holds" } else { "fails" }, if x.suspected { " (SUSPECTED)" } else { "" })
                };
                out += &format!(", TE1 {}, TE2 {}, TE3 {}", v(&te.te1), v(&te.te2), v(&te.te3));
            }
            out += "\n";
        }
        if let Some(t) = &self.te1_witness {
            match (&t.g, t.verified_index) {
                (Some(g), Some(e)) => out += &format!("TE1 witness: {g} with e = {e}\n"),
                (Some(g), None) => out += &format!("TE1 witness: {g} (not verified by the engine)\n"),
                _ => out += "TE1 witness: NOT_APPLICABLE\n",
            }
        }
        if let Some(d) = &self.drvg {
            out += &format!("(DRvg): {d}\n");
        }
        out += &format!("overall: {}", self.overall);
        if let Some(w) = &self.witness {
            out += &format!(" ({w})");
        }
        out += " [evidence over the suite only]\n";
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KahlerJson {
    pub schema_version: u32,
    pub field: String,
    pub poly: String,
    pub kind: String,
    pub omega_trivial: bool,
    pub annihilator_value: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<(usize, String)>,
    pub trace: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alg_max: Option<String>,
}

pub fn alg_max_string(k: &ValuedField, a: &AlgMax) -> String {
    match a {
        AlgMax::MaxAttained { a, value } => format!("MAX_ATTAINED(a = {}, value {})", k.display(a), value.to_json()),
        AlgMax::NoMaxEvidence(t) => {
            let t: Vec<String> = t.iter().map(Value::to_json).collect();
            format!("NO_MAX_EVIDENCE([{}])", t.join(", "))
        }
    }
}

impl KahlerJson {
    pub fn from_report(r: &ExtensionReport, kr: &KahlerReport) -> Self {
        let k = &r.field;
        KahlerJson {
            schema_version: SCHEMA_VERSION,
            field: k.name(),
            poly: ps(&r.g, k),
            kind: match kr.kind {
                KahlerKind::PurelyInertial => "PURELY_INERTIAL",
                KahlerKind::PurelyRamified => "PURELY_RAMIFIED",
                KahlerKind::Neither => "NEITHER",
            }
            .into(),
            omega_trivial: kr.omega_trivial,
            annihilator_value: kr.annihilator.as_ref().map(Value::to_json),
            segments: kr.segments.iter().map(|(l, v)| (*l, v.to_json())).collect(),
            trace: kr.trace.clone(),
            alg_max: None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("field {}  g = {}\nkind: {}\n", self.field, self.poly, self.kind);
        if self.kind != "NEITHER" {
            out += &format!("Omega {}\n", if self.omega_trivial { "= (0)" } else { "!= (0)" });
        }
        if let Some(a) = &self.annihilator_value {
            out += &format!("annihilator value v(g'(η)) = {}\n", short(a));
        }
        for (l, v) in &self.segments {
            out += &format!("  l = {l}: v(l) + v(a_l) - (n-l)γ = {}\n", short(v));
        }
        for t in &self.trace {
            out += &format!("  {t}\n");
        }
        if let Some(a) = &self.alg_max {
            out += &format!("algebraic maximality: {a}\n");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StableJson {
    pub schema_version: u32,
    pub expression: String,
    pub p: u64,
    pub sample_field: String,
    pub seed: u64,
    pub outcome: String,
    pub stable_value: Option<String>,
    pub stable_initial_coeff: Option<String>,
    pub l0: Option<usize>,
    pub persistent: Option<bool>,
    /// `(l, value, initial coefficient)`; `value` is `"undefined"` where the
    /// denominator vanishes.
    pub trajectory: Vec<(usize, String, Option<String>)>,
    pub samples: Vec<String>,
    pub retries: usize,
    pub failure_bound: String,
}

impl StableJson {
    pub fn from_outcome(expr: &str, p: u64, seed: u64, o: &StableOutcome) -> Self {
        let (outcome, value, coeff, l0, persistent, run): (_, Option<String>, Option<String>, _, _, &StableRun) = match o {
            StableOutcome::Stable { value, coeff, l0, persistent, run } => (
                "STABLE",
                Some(value.to_json()),
                coeff.as_ref().map(|c| run.field.display(c)),
                Some(*l0),
                Some(*persistent),
                run,
            ),
            StableOutcome::NotStabilized(run) => ("NOT_STABILIZED", None, None, None, None, run),
        };
        let fq = &run.field;
        StableJson {
            schema_version: SCHEMA_VERSION,
            expression: expr.into(),
            p,
            sample_field: format!("F_{}^{}", fq.p(), fq.abs_degree()),
            seed,
            outcome: outcome.into(),
            stable_value: value,
            stable_initial_coeff: coeff,
            l0,
            persistent,
            trajectory: run
                .trajectory
                .iter()
                .map(|(l, e)| match e {
                    Some((v, c)) => (*l, v.to_json(), c.as_ref().map(|c| fq.display(c))),
                    None => (*l, "undefined".into(), None),
                })
                .collect(),
            samples: run.samples.iter().map(|c| fq.display(c)).collect(),
            retries: run.retries,
            failure_bound: crate::value::q_to_string(&run.failure_bound),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("f = {}  p = {}  samples in {}  seed {}\n", self.expression, self.p, self.sample_field, self.seed);
        for (l, v, c) in &self.trajectory {
            out += &format!("  l = {l}: v = {}", short(v));
            if let Some(c) = c {
                out += &format!(", in = {c}");
            }
            out += "\n";
        }
        match (&self.stable_value, self.l0) {
            (Some(v), Some(l0)) => {
                out += &format!(
                    "stable value {}, initial coefficient {}, l0 = {l0}{}\n",
                    short(v),
                    self.stable_initial_coeff.as_deref().unwrap_or("-"),
                    if self.persistent == Some(true) { ", persists to l_max" } else { ", NOT persistent" }
                );
            }
            _ => out += "NOT_STABILIZED\n",
        }
        out += &format!("retries {}, failure probability <= {}\n", self.retries, self.failure_bound);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{mac_lane_chains, Bounds};

    #[test]
    fn extend_round_trip() {
        for (f, g) in [
            ("Qp(2)", "x^2-2"),
            ("Qp(5)", "x^2+1"),
            ("Qp(2)", "x^2+x+1"),
            ("Fq(2,t)", "x^3+t"),
            ("Fq(4,t)", "x^2+x+g"),
            ("FpPerf(2,t)", "x^2+x+1/t"),
            ("FpPerf(3,t)", "x^2-t"),
        ] {
            let pf = parse_field(f).unwrap();
            let r = mac_lane_chains(&pf.field, &pf.poly(g).unwrap(), Bounds::default()).unwrap();
            let j = ExtendJson::from_report(&r);
            let s = serde_json::to_string(&j).unwrap();
            let back: ExtendJson = serde_json::from_str(&s).unwrap();
            assert_eq!(back, j);
            let chains = back.rebuild_chains().unwrap();
            for (c, b) in chains.iter().zip(&r.branches) {
                assert_eq!(*c, b.chain, "{f} {g}");
            }
        }
    }

    #[test]
    fn sqrt2_json_shape() {
        let k = ValuedField::qp(2);
        let pf = parse_field("Qp(2)").unwrap();
        let r = mac_lane_chains(&k, &pf.poly("x^2-2").unwrap(), Bounds::default()).unwrap();
        let v: serde_json::Value = serde_json::to_value(ExtendJson::from_report(&r)).unwrap();
        assert_eq!(v["schemaVersion"], 1);
        assert_eq!(v["branches"][0]["e"], 2);
        assert_eq!(v["branches"][0]["chain"][0]["gamma"], "1/2");
        assert_eq!(v["branches"][0]["chain"][1]["gamma"], "inf");
        assert_eq!(v["sumCheck"]["holds"], true);
    }
}
