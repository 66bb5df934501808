//! Exact field arithmetic used throughout the crate.
//!
//! Fields are runtime contexts (a prime modulus, an extension modulus, a
//! rational function field over some base) and elements are plain values.
//! Every operation goes through the context, so polynomial code is written
//! once, generically over [`Field`].

pub mod factor;
pub mod finite;
pub mod poly;
pub mod ratfunc;

use std::fmt::Debug;
use std::hash::Hash;

pub use finite::{FfElem, FiniteField};
pub use poly::Poly;
pub use ratfunc::{RatFunc, RatFuncField};

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer powers, negative exponents through the inverse.
    fn powi(&self, a: &Self::Elem, n: i64) -> Option<Self::Elem> {
        if n >= 0 {
            Some(self.pow(a, n as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, n.unsigned_abs()))
        }
    }
}
