//! Text syntax: field descriptors, field elements, polynomials in `x`,
//! graded-ring elements in `T`, and choice overrides.
//!
//! Expressions use `+ - * / ^` and parentheses; juxtaposition multiplies
//! (`2x`, `c_1T`). An exponent is an integer or a parenthesized rational,
//! as in `t^(1/2)`. Identifiers are one letter optionally followed by digits
//! or `_digits`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Field, Poly};
use crate::error::{Error, Result};
use crate::fields::{is_prime, prime_power, FieldElement, FieldKind, ValuedField};
use crate::graded::{GradedRing, SemigroupElement};
use crate::poly::KPoly;
use crate::value::Q;

fn perr(token: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { token: token.into(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = cs[st..i].iter().collect();
            out.push(Tok::Num(text.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            i += 1;
            if i + 1 < cs.len() && cs[i] == '_' && cs[i + 1].is_ascii_digit() {
                i += 1;
            }
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().filter(|&&c| c != '_').collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(perr(c.to_string(), "unexpected character"));
        }
    }
    Ok(out)
}

/// Parsed expression. Identifiers are kept by name; `c_1` is stored as `c1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Q),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn is_op(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Op(c))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Tok::Op(d)) if d == c => Ok(()),
            Some(t) => Err(perr(t.text(), format!("expected `{c}`"))),
            None => Err(perr("<end>", format!("expected `{c}`"))),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.is_op('+') {
                self.pos += 1;
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.is_op('-') {
                self.pos += 1;
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.is_op('*') {
                self.pos += 1;
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.is_op('/') {
                self.pos += 1;
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_))) || self.is_op('(') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_op('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.is_op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.is_op('^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.is_op('-');
        if neg {
            self.pos += 1;
        }
        match self.next() {
            Some(Tok::Num(n)) => Ok(if neg { -n } else { n }),
            Some(t) => Err(perr(t.text(), "expected an integer exponent")),
            None => Err(perr("<end>", "expected an integer exponent")),
        }
    }

    fn exponent(&mut self) -> Result<Q> {
        if self.is_op('(') {
            self.pos += 1;
            let n = self.signed_int()?;
            let d = if self.is_op('/') {
                self.pos += 1;
                self.signed_int()?
            } else {
                BigInt::one()
            };
            if d.is_zero() {
                return Err(perr("0", "zero denominator in exponent"));
            }
            self.expect(')')?;
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(self.signed_int()?))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::Op('(')) => {
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(perr(t.text(), "unexpected token")),
            None => Err(perr("<end>", "unexpected end of input")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(perr("<empty>", "empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if let Some(t) = p.peek() {
        return Err(perr(t.text(), "trailing input"));
    }
    Ok(e)
}

/// A field together with the names its descriptor gave to `t` and `c`.
#[derive(Clone, Debug)]
pub struct ParsedField {
    pub field: ValuedField,
    pub t_name: Option<String>,
    pub c_name: Option<String>,
}

/// `Qp(p)`, `Fq(q,t)`, `FpPerf(p,t)` or `FpC(p,c,t)`.
pub fn parse_field(s: &str) -> Result<ParsedField> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| perr(s, "expected `Name(args)`"))?;
    if !s.ends_with(')') {
        return Err(perr(s, "missing `)`"));
    }
    let name = s[..open].trim();
    let args: Vec<&str> = s[open + 1..s.len() - 1].split(',').map(str::trim).collect();
    let num = |a: &str| -> Result<u64> { a.parse::<u64>().map_err(|_| perr(a, "expected a positive integer")) };
    let prime = |a: &str| -> Result<u64> {
        let p = num(a)?;
        if is_prime(p) {
            Ok(p)
        } else {
            Err(perr(a, "not a prime"))
        }
    };
    let ident = |a: &str| -> Result<String> {
        let ok = a.len() == 1 && a.chars().all(|c| c.is_ascii_alphabetic()) && a != "x";
        if ok {
            Ok(a.to_string())
        } else {
            Err(perr(a, "expected a one-letter variable name other than x"))
        }
    };
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(perr(s, format!("{name} takes {n} argument(s)")))
        }
    };
    match name {
        "Qp" => {
            arity(1)?;
            Ok(ParsedField { field: ValuedField::qp(prime(args[0])?), t_name: None, c_name: None })
        }
        "Fq" => {
            arity(2)?;
            let q = num(args[0])?;
            let field = prime_power(q)
                .and_then(|_| ValuedField::fq_t(q))
                .ok_or_else(|| perr(args[0], "not a prime power"))?;
            Ok(ParsedField { field, t_name: Some(ident(args[1])?), c_name: None })
        }
        "FpPerf" => {
            arity(2)?;
            let field = ValuedField::fp_perf_t(prime(args[0])?);
            Ok(ParsedField { field, t_name: Some(ident(args[1])?), c_name: None })
        }
        "FpC" => {
            arity(3)?;
            let field = ValuedField::fp_c_t(prime(args[0])?);
            let (c, t) = (ident(args[1])?, ident(args[2])?);
            if c == t {
                return Err(perr(args[2], "variable names must differ"));
            }
            Ok(ParsedField { field, t_name: Some(t), c_name: Some(c) })
        }
        _ => Err(perr(name, "unknown field; expected Qp, Fq, FpPerf or FpC")),
    }
}

fn small_exp(e: &Q) -> Result<i64> {
    e.to_integer().to_i64().filter(|n| n.abs() <= 1 << 20).ok_or_else(|| perr(e.to_string(), "exponent too large"))
}

impl ParsedField {
    fn var(&self, name: &str) -> Result<Option<FieldElement>> {
        let k = &self.field;
        if self.t_name.as_deref() == Some(name) {
            return Ok(Some(k.t()));
        }
        if self.c_name.as_deref() == Some(name) {
            return Ok(k.c());
        }
        if name == "g" && k.kind() == FieldKind::FqT {
            return Ok(Some(k.fq_generator().unwrap_or_else(|| k.one())));
        }
        Ok(None)
    }

    /// Polynomial in `x` over the field.
    pub fn eval_poly(&self, e: &Expr) -> Result<KPoly> {
        let k = &self.field;
        Ok(match e {
            Expr::Num(n) => Poly::constant(k, k.from_q(&Q::from_integer(n.clone())).unwrap()),
            Expr::Var(v) if v == "x" => Poly::x(k),
            Expr::Var(v) => match self.var(v)? {
                Some(a) => Poly::constant(k, a),
                None => return Err(perr(v, "unknown variable")),
            },
            Expr::Neg(a) => self.eval_poly(a)?.neg(k),
            Expr::Add(a, b) => self.eval_poly(a)?.add(&self.eval_poly(b)?, k),
            Expr::Sub(a, b) => self.eval_poly(a)?.sub(&self.eval_poly(b)?, k),
            Expr::Mul(a, b) => self.eval_poly(a)?.mul(&self.eval_poly(b)?, k),
            Expr::Div(a, b) => {
                let d = self.eval_poly(b)?;
                if !d.is_constant() {
                    return Err(perr("/", "division by a non-constant polynomial"));
                }
                let inv = d.coeffs().first().and_then(|c| k.inv(c)).ok_or_else(|| perr("/", "division by zero"))?;
                self.eval_poly(a)?.scale(&inv, k)
            }
            Expr::Pow(a, r) => {
                if let Expr::Var(v) = a.as_ref() {
                    if self.t_name.as_deref() == Some(v) && k.kind() == FieldKind::FpPerfT {
                        let ok = r.denom().to_u64().is_some_and(|d| prime_power(d).is_some_and(|(p, _)| p == k.p()) || d == 1);
                        if !ok {
                            return Err(perr(r.to_string(), "exponent not in Z[1/p]"));
                        }
                        return Ok(Poly::constant(k, k.uniformizer_pow(r)));
                    }
                }
                if !r.is_integer() {
                    return Err(perr(r.to_string(), "fractional exponent needs the perfect-closure variable as base"));
                }
                let n = small_exp(r)?;
                let base = self.eval_poly(a)?;
                if n >= 0 {
                    base.pow(n as u64, k)
                } else if base.is_constant() && !base.is_zero() {
                    let inv = k.inv(&base.coeffs()[0]).unwrap();
                    Poly::constant(k, k.pow(&inv, n.unsigned_abs()))
                } else {
                    return Err(perr(r.to_string(), "negative power of a non-constant"));
                }
            }
        })
    }

    /// A constant of the field.
    pub fn eval_element(&self, e: &Expr) -> Result<FieldElement> {
        let p = self.eval_poly(e)?;
        if !p.is_constant() {
            return Err(perr("x", "expected a field element"));
        }
        Ok(p.coeffs().first().cloned().unwrap_or_else(|| self.field.zero()))
    }

    pub fn poly(&self, s: &str) -> Result<KPoly> {
        self.eval_poly(&parse_expr(s)?)
    }

    pub fn element(&self, s: &str) -> Result<FieldElement> {
        self.eval_element(&parse_expr(s)?)
    }

    /// Graded-ring element: residue constants and powers `T^γ`, multiplied
    /// in the twisted ring.
    pub fn graded(&self, ring: &GradedRing, s: &str) -> Result<SemigroupElement> {
        self.eval_graded(ring, &parse_expr(s)?)
    }

    fn eval_graded(&self, ring: &GradedRing, e: &Expr) -> Result<SemigroupElement> {
        let k = &self.field;
        let konst = |e: &Expr| -> Result<SemigroupElement> {
            let a = self.eval_element(e)?;
            let r = k.residue(&a).map_err(|_| perr(format!("{e:?}"), "constant with negative value"))?;
            if !k.is_zero(&a) && k.valuate(&a) > crate::Value::zero() {
                return Err(perr(k.display(&a), "coefficient must be a residue class (value 0); use T^γ"));
            }
            ring.term(r, Q::zero())
        };
        Ok(match e {
            Expr::Var(v) if v == "T" => ring.term(k.residue(&k.one()).unwrap(), Q::one())?,
            Expr::Pow(a, r) if matches!(a.as_ref(), Expr::Var(v) if v == "T") => {
                if r.is_negative() {
                    return Err(perr(r.to_string(), "negative exponent"));
                }
                ring.term(k.residue(&k.one()).unwrap(), r.clone())
                    .map_err(|_| perr(r.to_string(), "exponent not in the value group"))?
            }
            Expr::Pow(a, r) => {
                let n = small_exp(r)?;
                if n < 0 {
                    return konst(e);
                }
                let b = self.eval_graded(ring, a)?;
                let mut acc = ring.one();
                for _ in 0..n {
                    acc = ring.mul(&acc, &b);
                }
                acc
            }
            Expr::Neg(a) => ring.neg(&self.eval_graded(ring, a)?),
            Expr::Add(a, b) => ring.add(&self.eval_graded(ring, a)?, &self.eval_graded(ring, b)?),
            Expr::Sub(a, b) => {
                ring.add(&self.eval_graded(ring, a)?, &ring.neg(&self.eval_graded(ring, b)?))
            }
            Expr::Mul(a, b) => ring.mul(&self.eval_graded(ring, a)?, &self.eval_graded(ring, b)?),
            _ => konst(e)?,
        })
    }

    /// Choice overrides `γ=a,γ'=b,…`, for example `1=3,2=18`.
    pub fn choice_overrides(&self, s: &str) -> Result<Vec<(Q, FieldElement)>> {
        s.split(',')
            .filter(|part| !part.trim().is_empty())
            .map(|part| {
                let (g, a) = part.split_once('=').ok_or_else(|| perr(part.trim(), "expected `γ=element`"))?;
                let g = crate::value::parse_q(g.trim()).ok_or_else(|| perr(g.trim(), "expected a rational"))?;
                Ok((g, self.element(a)?))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_string;

    #[test]
    fn fields_and_polys() {
        let qp = parse_field("Qp(2)").unwrap();
        let g = qp.poly("x^2-2").unwrap();
        assert_eq!(poly_string(&g, &qp.field), "x^2 - 2");
        assert_eq!(qp.poly("(x+1)^2 - 2x - 1").unwrap(), qp.poly("x^2").unwrap());
        assert_eq!(qp.poly("x/2").unwrap().coeffs()[1], FieldElement::Rational(crate::value::q(1, 2)));
        let perf = parse_field("FpPerf(2,t)").unwrap();
        let g = perf.poly("x^2 + x + 1/t").unwrap();
        assert_eq!(perf.field.valuate(&g.coeffs()[0]), crate::Value::int(-1));
        let h = perf.element("t^(1/2)").unwrap();
        assert_eq!(perf.field.valuate(&h), crate::Value::rat(1, 2));
        let fc = parse_field("FpC(2,c,t)").unwrap();
        assert!(fc.element("c + t").is_ok());
        assert!(parse_field("Fq(9,t)").unwrap().element("g").is_ok());
    }

    #[test]
    fn errors_name_the_token() {
        let tok = |r: Result<ParsedField>| match r {
            Err(Error::Parse { token, .. }) => token,
            other => panic!("{other:?}"),
        };
        assert_eq!(tok(parse_field("Qp(4)")), "4");
        assert_eq!(tok(parse_field("Rp(2)")), "Rp");
        assert_eq!(tok(parse_field("Fq(6,t)")), "6");
        let qp = parse_field("Qp(3)").unwrap();
        let ptok = |s: &str| match qp.poly(s) {
            Err(Error::Parse { token, .. }) => token,
            other => panic!("{other:?}"),
        };
        assert_eq!(ptok("x^2 - y"), "y");
        assert_eq!(ptok("x^2 +"), "<end>");
        assert_eq!(ptok("x^2 $ 1"), "$");
        assert_eq!(ptok("1/x"), "/");
        assert_eq!(ptok("t"), "t");
    }

    #[test]
    fn graded_override_product() {
        let pf = parse_field("Qp(3)").unwrap();
        let k = pf.field.with_choice_overrides(pf.choice_overrides("1=3,2=18").unwrap()).unwrap();
        let pf = ParsedField { field: k.clone(), ..pf };
        let ring = GradedRing::new(&k);
        let a = pf.graded(&ring, "T^1").unwrap();
        assert_eq!(ring.display(&ring.mul(&a, &a)), "2*T^2");
        assert_eq!(pf.graded(&ring, "T*T").unwrap(), ring.mul(&a, &a));
    }
}
