use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use keypoly::analyzer::{
    alg_max_evidence, drvg_check, kahler, stable_value, tame_report, te1_witness, StableConfig,
};
use keypoly::engine::{mac_lane_chains, Bounds};
use keypoly::graded::{GradedRing, NoRoot, Surjectivity};
use keypoly::par::ExecMode;
use keypoly::parse::{parse_expr, parse_field, ParsedField};
use keypoly::report::{
    alg_max_string, drvg_string, extend_text, frobenius_witness, te1_json, ExtendJson, KahlerJson, StableJson,
    TameJson, SCHEMA_VERSION,
};
use keypoly::value::q_to_string;
use keypoly::Error;

#[derive(Parser)]
#[command(name = "keypoly", version, about = "Key polynomials and inductive valuations over exact valued fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
struct EngineArgs {
    #[arg(long, default_value_t = 32)]
    max_depth: usize,
    #[arg(long, default_value_t = 8)]
    limit_probes: usize,
    /// Run the engine on one thread.
    #[arg(long)]
    sequential: bool,
}

impl EngineArgs {
    fn bounds(&self) -> Bounds {
        let mode = if self.sequential { ExecMode::Sequential } else { ExecMode::default() };
        Bounds { max_depth: self.max_depth, max_limit_probes: self.limit_probes, mode }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a field and evaluate elements.
    Field {
        #[arg(long)]
        field: String,
        /// Element to valuate; repeatable.
        #[arg(long = "elem")]
        elems: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Extensions of the valuation to K[x]/(g).
    Extend {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Arithmetic in the graded ring.
    Graded {
        #[arg(long)]
        field: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        mul: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        add: Option<Vec<String>>,
        #[arg(long)]
        frobenius: Option<String>,
        #[arg(long = "pth-root")]
        pth_root: Option<String>,
        /// Choice overrides `γ=a,…`.
        #[arg(long)]
        choice: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Tameness evidence over a suite of polynomials.
    Tame {
        #[arg(long)]
        field: String,
        /// Suite polynomial; repeatable.
        #[arg(long = "poly")]
        polys: Vec<String>,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Kähler differentials of a purely inertial or purely ramified extension.
    Kahler {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Stable value of f(t, s_0l) in T and S.
    StableValue {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        l_start: usize,
        #[arg(long, default_value_t = 12)]
        l_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

enum Fail {
    Parse(String),
    /// Message and whatever was known before the failure.
    Engine(String, serde_json::Value),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Fail::Parse(e.to_string()),
            other => Fail::Engine(other.to_string(), serde_json::Value::Null),
        }
    }
}

/// Engine failure with the inputs and bounds as the partial report.
fn engine_fail(pf: &ParsedField, g: &keypoly::poly::KPoly, b: &Bounds) -> impl FnOnce(Error) -> Fail {
    let partial = json!({
        "field": pf.field.name(),
        "poly": keypoly::poly::poly_string(g, &pf.field),
        "n": g.degree(),
        "maxDepth": b.max_depth,
        "limitProbes": b.max_limit_probes,
    });
    move |e| match e {
        Error::Parse { .. } => Fail::from(e),
        other => Fail::Engine(other.to_string(), partial),
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        print!("{}", text());
    }
}

fn field(s: &str) -> Result<ParsedField, Fail> {
    Ok(parse_field(s)?)
}

fn monic(pf: &ParsedField, s: &str) -> Result<keypoly::poly::KPoly, Fail> {
    Ok(pf.poly(s)?)
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    match cmd {
        Cmd::Field { field: f, elems, common } => {
            let pf = field(&f)?;
            let k = &pf.field;
            let ring = GradedRing::new(k);
            let frob = match ring.frobenius_surjective() {
                Surjectivity::Yes => "YES".to_string(),
                Surjectivity::No(w) => format!("NO ({})", frobenius_witness(k, &w)),
            };
            let mut rows = Vec::new();
            for e in &elems {
                let a = pf.element(e)?;
                let v = k.valuate(&a);
                let residue = k.residue(&a).ok().map(|r| k.residue_field().display(&r));
                let initial = ring.initial_form(&a).ok().map(|t| ring.display_term(&t));
                rows.push(json!({
                    "element": k.display(&a),
                    "value": v.to_json(),
                    "residue": residue,
                    "initialForm": initial,
                }));
            }
            let doc = json!({
                "schemaVersion": SCHEMA_VERSION,
                "field": k.name(),
                "valueGroup": k.value_group().describe(),
                "residueField": residue_name(k),
                "frobeniusSurjective": frob,
                "elements": rows,
            });
            emit(common.json, &doc, || {
                let mut out = format!(
                    "field {}\nvalue group {}\nresidue field {}\nFrobenius on gr(O_K) surjective: {}\n",
                    k.name(),
                    k.value_group().describe(),
                    residue_name(k),
                    frob
                );
                for r in &rows {
                    out += &format!(
                        "{}: v = {}, residue {}, in = {}\n",
                        r["element"].as_str().unwrap(),
                        r["value"].as_str().unwrap(),
                        r["residue"].as_str().unwrap_or("-"),
                        r["initialForm"].as_str().unwrap_or("-"),
                    );
                }
                out
            });
            Ok(())
        }
        Cmd::Extend { field: f, poly, engine, common } => {
            let pf = field(&f)?;
            let g = monic(&pf, &poly)?;
            let b = engine.bounds();
            let r = mac_lane_chains(&pf.field, &g, b).map_err(engine_fail(&pf, &g, &b))?;
            emit(common.json, &ExtendJson::from_report(&r), || extend_text(&r));
            Ok(())
        }
        Cmd::Graded { field: f, mul, add, frobenius, pth_root, choice, common } => {
            let mut pf = field(&f)?;
            if let Some(c) = choice {
                let table = pf.choice_overrides(&c)?;
                pf.field = pf.field.with_choice_overrides(table)?;
            }
            let ring = GradedRing::new(&pf.field);
            let (op, result) = if let Some(ab) = mul {
                let (a, b) = (pf.graded(&ring, &ab[0])?, pf.graded(&ring, &ab[1])?);
                ("mul", ring.display(&ring.mul(&a, &b)))
            } else if let Some(ab) = add {
                let (a, b) = (pf.graded(&ring, &ab[0])?, pf.graded(&ring, &ab[1])?);
                ("add", ring.display(&ring.add(&a, &b)))
            } else if let Some(a) = frobenius {
                ("frobenius", ring.display(&ring.frobenius(&pf.graded(&ring, &a)?)))
            } else if let Some(a) = pth_root {
                let x = pf.graded(&ring, &a)?;
                let mut terms = x.terms();
                let (exp, coeff) = match (terms.next(), terms.next()) {
                    (Some((e, c)), None) => (e.clone(), c.clone()),
                    _ => return Err(Fail::Parse(format!("`{a}`: pth-root takes a single term"))),
                };
                let term = keypoly::graded::GradedTerm { coeff, exp };
                match ring.pth_root(&term) {
                    Ok(t) => ("pth-root", ring.display_term(&t)),
                    Err(NoRoot::Exponent(g)) => {
                        return Err(Fail::Engine(
                            format!("no p-th root: exponent {} not in vK", q_to_string(&g)),
                            serde_json::Value::Null,
                        ))
                    }
                    Err(NoRoot::Coefficient(c)) => {
                        return Err(Fail::Engine(
                            format!("no p-th root: coefficient {} is not a p-th power", ring.residue_field().display(&c)),
                            serde_json::Value::Null,
                        ))
                    }
                }
            } else {
                return Err(Fail::Parse("graded: one of --mul, --add, --frobenius, --pth-root is required".into()));
            };
            let doc = json!({ "schemaVersion": SCHEMA_VERSION, "field": pf.field.name(), "op": op, "result": result });
            emit(common.json, &doc, || format!("{result}\n"));
            Ok(())
        }
        Cmd::Tame { field: f, polys, engine, common } => {
            let pf = field(&f)?;
            let suite = polys.iter().map(|s| monic(&pf, s)).collect::<Result<Vec<_>, _>>()?;
            let k = &pf.field;
            let r = tame_report(k, &suite, engine.bounds());
            let mut j = TameJson::from_report(k, &r);
            j.te1_witness = Some(te1_json(k, &te1_witness(k, engine.bounds())));
            j.drvg = Some(drvg_string(&drvg_check(&k.value_group(), k.p())));
            emit(common.json, &j, || j.text());
            Ok(())
        }
        Cmd::Kahler { field: f, poly, budget, engine, common } => {
            let pf = field(&f)?;
            let g = monic(&pf, &poly)?;
            let b = engine.bounds();
            let r = mac_lane_chains(&pf.field, &g, b).map_err(engine_fail(&pf, &g, &b))?;
            let kr = kahler(&r)?;
            let mut j = KahlerJson::from_report(&r, &kr);
            if r.n >= 2 {
                j.alg_max = Some(alg_max_string(&pf.field, &alg_max_evidence(&r, budget)?));
            }
            emit(common.json, &j, || j.text());
            Ok(())
        }
        Cmd::StableValue { p, expr, l_start, l_max, seed, common } => {
            if !keypoly::fields::is_prime(p) {
                return Err(Fail::Parse(format!("parse error at `{p}`: not a prime")));
            }
            let e = parse_expr(&expr)?;
            let o = stable_value(&e, StableConfig { p, l_start, l_max, seed })?;
            let j = StableJson::from_outcome(&expr, p, seed, &o);
            emit(common.json, &j, || j.text());
            Ok(())
        }
    }
}

fn residue_name(k: &keypoly::ValuedField) -> String {
    match k.residue_field() {
        keypoly::fields::ResidueField::Finite(f) => format!("F_{}", f.order()),
        keypoly::fields::ResidueField::Rational(_) => format!("F_{}(c)", k.p()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Engine(m, partial)) => {
            eprintln!("error: {m}");
            let doc = json!({ "schemaVersion": SCHEMA_VERSION, "error": m, "partial": partial });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            ExitCode::from(3)
        }
    }
}
