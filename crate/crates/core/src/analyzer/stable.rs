//! `v f(t, s_{0l})` for `s = Σ c_i t^i`, with the `c_i` sampled from a large
//! finite field in place of independent transcendentals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{FfElem, Field, FiniteField, Poly, RatFunc, RatFuncField};
use crate::error::{Error, Result};
use crate::parse::Expr;
use crate::value::{Value, Q};

pub const SAMPLE_DEGREE: usize = 16;
const RETRIES: usize = 5;
/// Extra terms of `s` beyond `l_max` used as a stand-in for `s` itself when
/// testing a sample for collisions.
const LOOKAHEAD: usize = 4;

#[derive(Clone, Copy, Debug)]
pub struct StableConfig {
    pub p: u64,
    pub l_start: usize,
    pub l_max: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRun {
    pub field: FiniteField,
    /// `c_1, c_2, …`
    pub samples: Vec<FfElem>,
    /// `(l, value, initial coefficient)`; `None` where the denominator of
    /// `f(t, s_{0l})` vanishes.
    pub trajectory: Vec<(usize, Option<(Value, Option<FfElem>)>)>,
    pub retries: usize,
    /// Schwartz–Zippel bound `deg f / q` on a bad sample.
    pub failure_bound: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StableOutcome {
    Stable {
        value: Value,
        coeff: Option<FfElem>,
        l0: usize,
        /// Whether the stable pair persists up to `l_max`.
        persistent: bool,
        run: StableRun,
    },
    NotStabilized(StableRun),
}

struct Eval<'a> {
    r: &'a RatFuncField<FiniteField>,
    cs: &'a [FfElem],
    s: RatFunc<FfElem>,
}

impl Eval<'_> {
    fn go(&self, e: &Expr) -> Result<Option<RatFunc<FfElem>>> {
        let r = self.r;
        let both = |a: &Expr, b: &Expr| -> Result<Option<(RatFunc<FfElem>, RatFunc<FfElem>)>> {
            Ok(match (self.go(a)?, self.go(b)?) {
                (Some(x), Some(y)) => Some((x, y)),
                _ => None,
            })
        };
        Ok(match e {
            Expr::Num(n) => {
                let v = n.mod_floor(&BigInt::from(r.base().p())).to_i64().unwrap();
                Some(r.constant(r.base().from_int(v)))
            }
            Expr::Var(v) if v == "T" => Some(r.var()),
            Expr::Var(v) if v == "S" => Some(self.s.clone()),
            Expr::Var(v) => Some(r.constant(self.cs[c_index(v)? - 1].clone())),
            Expr::Neg(a) => self.go(a)?.map(|x| r.neg(&x)),
            Expr::Add(a, b) => both(a, b)?.map(|(x, y)| r.add(&x, &y)),
            Expr::Sub(a, b) => both(a, b)?.map(|(x, y)| r.sub(&x, &y)),
            Expr::Mul(a, b) => both(a, b)?.map(|(x, y)| r.mul(&x, &y)),
            Expr::Div(a, b) => both(a, b)?.and_then(|(x, y)| r.div(&x, &y)),
            Expr::Pow(a, q) => {
                let n = int_exp(q)?;
                self.go(a)?.and_then(|x| r.powi(&x, n))
            }
        })
    }
}

fn perr(token: &str, message: &str) -> Error {
    Error::Parse { token: token.into(), message: message.into() }
}

fn int_exp(q: &Q) -> Result<i64> {
    if !q.is_integer() {
        return Err(perr(&q.to_string(), "integer exponent expected"));
    }
    q.to_integer().to_i64().filter(|n| n.abs() <= 64).ok_or_else(|| perr(&q.to_string(), "exponent too large"))
}

fn c_index(v: &str) -> Result<usize> {
    v.strip_prefix('c')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| perr(v, "unknown variable; expected T, S or c_i"))
}

/// Largest `c_i` index, after checking every variable name.
fn check(e: &Expr) -> Result<usize> {
    Ok(match e {
        Expr::Num(_) => 0,
        Expr::Var(v) if v == "T" || v == "S" => 0,
        Expr::Var(v) => c_index(v)?,
        Expr::Neg(a) => check(a)?,
        Expr::Pow(a, q) => {
            int_exp(q)?;
            check(a)?
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => check(a)?.max(check(b)?),
    })
}

/// Total degree of numerator plus denominator, counted syntactically.
fn total_degree(e: &Expr) -> u64 {
    match e {
        Expr::Num(_) => 0,
        Expr::Var(_) => 1,
        Expr::Neg(a) => total_degree(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => total_degree(a) + total_degree(b),
        Expr::Pow(a, q) => total_degree(a) * q.to_integer().magnitude().to_u64().unwrap_or(64),
    }
}

fn truncation(r: &RatFuncField<FiniteField>, cs: &[FfElem], l: usize) -> RatFunc<FfElem> {
    let fq = r.base();
    let mut coeffs = vec![fq.zero()];
    coeffs.extend(cs[..l].iter().cloned());
    r.from_poly(Poly::from_coeffs(fq, coeffs))
}

fn classify(r: &RatFuncField<FiniteField>, x: Option<RatFunc<FfElem>>) -> Option<(Value, Option<FfElem>)> {
    let x = x?;
    Some(match r.ord0(&x) {
        None => (Value::Infinity, None),
        Some(v) => (Value::int(v), r.initial_coeff(&x)),
    })
}

/// Value and initial coefficient of `f(t, s_{0l})` for `l = l_start..=l_max`,
/// and the first `l0` from which they agree for three consecutive `l`.
pub fn stable_value(f: &Expr, cfg: StableConfig) -> Result<StableOutcome> {
    let max_c = check(f)?;
    let fq = FiniteField::with_degree(cfg.p, SAMPLE_DEGREE);
    let r = RatFuncField::new(fq.clone());
    let n_c = max_c.max(cfg.l_max + LOOKAHEAD);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let failure_bound = Q::new(total_degree(f).into(), BigInt::from(fq.order()));
    let l_start = cfg.l_start.max(1);
    for retries in 0..=RETRIES {
        let samples: Vec<FfElem> = (0..n_c).map(|_| fq.random_nonzero(&mut rng)).collect();
        let at = |l: usize| -> Result<Option<RatFunc<FfElem>>> {
            Eval { r: &r, cs: &samples, s: truncation(&r, &samples, l) }.go(f)
        };
        if at(cfg.l_max + LOOKAHEAD)?.is_none() {
            continue;
        }
        let trajectory = (l_start..=cfg.l_max)
            .map(|l| Ok((l, classify(&r, at(l)?))))
            .collect::<Result<Vec<_>>>()?;
        let run = StableRun { field: fq.clone(), samples, trajectory, retries, failure_bound: failure_bound.clone() };
        let hit = run
            .trajectory
            .windows(3)
            .find(|w| w[0].1.is_some() && w[0].1 == w[1].1 && w[1].1 == w[2].1)
            .map(|w| (w[0].0, w[0].1.clone().unwrap()));
        return Ok(match hit {
            Some((l0, (value, coeff))) => {
                let persistent = run.trajectory.iter().filter(|e| e.0 >= l0).all(|e| e.1 == Some((value.clone(), coeff.clone())));
                StableOutcome::Stable { value, coeff, l0, persistent, run }
            }
            None => StableOutcome::NotStabilized(run),
        });
    }
    Err(Error::DenominatorVanishes)
}
