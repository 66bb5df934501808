//! Values in `Q ∪ {∞}` and rank-one value groups.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// "num/den" with the denominator always present.
pub fn q_to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short form: integers without "/1".
pub fn q_display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        q_to_string(x)
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    if p == 2 {
        return n.trailing_zeros().unwrap() as i64;
    }
    if let Some(mut m) = n.to_i128() {
        let p = p as i128;
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        return k;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (qq, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = qq;
        k += 1;
    }
}

/// Removes all factors `p` from a positive integer.
fn strip_p(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.clone();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
    }
    n
}

fn q_gcd(a: &Q, b: &Q) -> Q {
    // gcd(a/b, c/d) = gcd(a d, c b) / (b d)
    let n = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Q::new(n, a.denom() * b.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Finite(Q),
    Infinity,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(Q::zero())
    }

    pub fn int(n: i64) -> Self {
        Value::Finite(qi(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Value::Finite(q(n, d))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Value::Finite(x) => Some(x),
            Value::Infinity => None,
        }
    }

    /// Multiplication by a nonnegative integer; `0 * ∞ = 0`.
    pub fn times(&self, k: usize) -> Value {
        match self {
            _ if k == 0 => Value::zero(),
            Value::Finite(x) => Value::Finite(x * qi(k as i64)),
            Value::Infinity => Value::Infinity,
        }
    }

    /// "num/den" or "inf".
    pub fn to_json(&self) -> String {
        match self {
            Value::Finite(x) => q_to_string(x),
            Value::Infinity => "inf".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Value> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Some(Value::Infinity),
            t => parse_q(t).map(Value::Finite),
        }
    }
}

impl From<Q> for Value {
    fn from(x: Q) -> Self {
        Value::Finite(x)
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinity,
        }
    }
}

impl Add<&Q> for &Value {
    type Output = Value;
    fn add(self, rhs: &Q) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a + rhs),
            Value::Infinity => Value::Infinity,
        }
    }
}

impl Sub<&Q> for &Value {
    type Output = Value;
    fn sub(self, rhs: &Q) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a - rhs),
            Value::Infinity => Value::Infinity,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(x) => write!(f, "{}", q_display(x)),
            Value::Infinity => write!(f, "inf"),
        }
    }
}

/// A subgroup of `Q`: `g Z`, or `g Z[1/p]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ValueGroup {
    FinitelyGenerated { gen: Q },
    PDivisibleHull { gen: Q, p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility {
    Yes,
    No { witness: Value },
}

impl ValueGroup {
    pub fn integers() -> Self {
        ValueGroup::FinitelyGenerated { gen: Q::one() }
    }

    pub fn generated(gen: Q) -> Self {
        assert!(gen.is_positive(), "generator must be positive");
        ValueGroup::FinitelyGenerated { gen }
    }

    /// `g Z[1/p]` with `g` reduced to have no factor `p`.
    pub fn hull(gen: Q, p: u64) -> Self {
        assert!(gen.is_positive(), "generator must be positive");
        let gen = Q::new(strip_p(gen.numer(), p), strip_p(gen.denom(), p));
        ValueGroup::PDivisibleHull { gen, p }
    }

    pub fn gen(&self) -> &Q {
        match self {
            ValueGroup::FinitelyGenerated { gen } | ValueGroup::PDivisibleHull { gen, .. } => gen,
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        let r = x / self.gen();
        match self {
            ValueGroup::FinitelyGenerated { .. } => r.is_integer(),
            ValueGroup::PDivisibleHull { p, .. } => strip_p(r.denom(), *p).is_one(),
        }
    }

    pub fn contains_value(&self, v: &Value) -> bool {
        v.finite().is_some_and(|x| self.contains(x))
    }

    /// The group generated by `self` and `x`.
    pub fn join(&self, x: &Q) -> Self {
        if x.is_zero() {
            return self.clone();
        }
        let g = q_gcd(self.gen(), &x.abs());
        match self {
            ValueGroup::FinitelyGenerated { .. } => ValueGroup::generated(g),
            ValueGroup::PDivisibleHull { p, .. } => ValueGroup::hull(g, *p),
        }
    }

    /// Smallest `e >= 1` with `e x` in the group.
    pub fn order_of(&self, x: &Q) -> u64 {
        let r = x / self.gen();
        let d = match self {
            ValueGroup::FinitelyGenerated { .. } => r.denom().clone(),
            ValueGroup::PDivisibleHull { p, .. } => strip_p(r.denom(), *p),
        };
        d.to_u64().expect("index fits in u64")
    }

    /// `(self : sub)` for `sub ⊆ self` of the same kind.
    pub fn index_over(&self, sub: &ValueGroup) -> u64 {
        let r = sub.gen() / self.gen();
        let n = match self {
            ValueGroup::FinitelyGenerated { .. } => r.numer().clone(),
            ValueGroup::PDivisibleHull { p, .. } => strip_p(r.numer(), *p),
        };
        debug_assert!(r.is_integer() || matches!(self, ValueGroup::PDivisibleHull { .. }));
        n.to_u64().expect("index fits in u64")
    }

    pub fn is_finitely_generated(&self) -> bool {
        matches!(self, ValueGroup::FinitelyGenerated { .. })
    }

    pub fn p_divisible(&self, p: u64) -> Divisibility {
        match self {
            ValueGroup::PDivisibleHull { p: hp, .. } if *hp == p => Divisibility::Yes,
            _ => Divisibility::No {
                witness: Value::Finite(self.gen().clone()),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ValueGroup::FinitelyGenerated { gen } if gen.is_one() => "Z".into(),
            ValueGroup::FinitelyGenerated { gen } => format!("({})Z", q_display(gen)),
            ValueGroup::PDivisibleHull { gen, p } if gen.is_one() => format!("Z[1/{p}]"),
            ValueGroup::PDivisibleHull { gen, p } => format!("({})Z[1/{p}]", q_display(gen)),
        }
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Finite(x) => Value::Finite(-x),
            Value::Infinity => panic!("negation of infinity"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_dominates() {
        assert_eq!(&Value::Infinity + &Value::int(3), Value::Infinity);
        assert!(Value::Infinity > Value::int(1_000_000));
        assert!(Value::rat(-1, 2) < Value::zero());
    }

    #[test]
    fn membership_and_index() {
        let z = ValueGroup::integers();
        let half = z.join(&q(1, 2));
        assert_eq!(half, ValueGroup::generated(q(1, 2)));
        assert_eq!(half.index_over(&z), 2);
        assert!(half.contains(&q(3, 2)) && !half.contains(&q(1, 3)));
        assert_eq!(half.join(&q(3, 2)), half);
        assert_eq!(z.order_of(&q(2, 3)), 3);
    }

    #[test]
    fn hull_is_normalized() {
        let h = ValueGroup::hull(q(3, 4), 2);
        assert_eq!(h.gen(), &qi(3));
        assert!(h.contains(&q(3, 1024)) && !h.contains(&q(1, 2)));
        assert_eq!(ValueGroup::hull(Q::one(), 3).order_of(&q(1, 9)), 1);
        assert_eq!(ValueGroup::hull(Q::one(), 3).order_of(&q(1, 2)), 2);
    }

    #[test]
    fn p_divisibility_witnesses() {
        assert_eq!(
            ValueGroup::integers().p_divisible(2),
            Divisibility::No { witness: Value::int(1) }
        );
        assert_eq!(ValueGroup::hull(Q::one(), 3).p_divisible(3), Divisibility::Yes);
        assert_eq!(
            ValueGroup::generated(q(1, 2)).p_divisible(2),
            Divisibility::No { witness: Value::rat(1, 2) }
        );
    }
}
