use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::Value;

use super::rat::{fmt_rat, Rat};
use crate::error::{Error, Result};

/// A field-like coefficient type.
///
/// Elements carry their own context (the radicand of a quadratic field, the
/// order of a cyclotomic field, a truncation order), so constants are built
/// from an existing element with the `*_like` constructors.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Result<Self>;
    fn to_json(&self) -> Value;

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rat_like(&Rat::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        (self.clone() - self.one_like()).is_zero()
    }

    fn try_div(&self, d: &Self) -> Result<Self> {
        Ok(self.clone() * d.try_inv()?)
    }

    fn scale(&self, r: &Rat) -> Self {
        self.clone() * self.from_rat_like(r)
    }

    fn pow_i(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq.clone();
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn to_json(&self) -> Value {
        Value::String(fmt_rat(self))
    }
}

/// Sum of products `Σ a_k b_k`, starting from `zero`.
pub fn dot<S: Scalar>(zero: &S, a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(zero.clone(), |acc, (x, y)| acc + x.clone() * y.clone())
}
