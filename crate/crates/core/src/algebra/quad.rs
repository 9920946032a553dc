//! Elements `a + b r` of the quadratic field `Q(r)`, `r^2 = d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use super::rat::{fmt_rat, int, rat_sqrt, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Quad {
    a: Rat,
    b: Rat,
    d: Arc<Rat>,
}

impl Quad {
    /// The generator `r` of `Q(sqrt d)`. `d` must not be a rational square.
    pub fn root(d: Rat) -> Result<Quad> {
        if rat_sqrt(&d).is_some() {
            return Err(Error::InvalidArgument(format!(
                "radicand {} is a rational square",
                fmt_rat(&d)
            )));
        }
        Ok(Quad {
            a: int(0),
            b: int(1),
            d: Arc::new(d),
        })
    }

    pub fn new_like(&self, a: Rat, b: Rat) -> Quad {
        Quad {
            a,
            b,
            d: self.d.clone(),
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> &Rat {
        &self.d
    }

    /// The value as a rational, if the radical part vanishes.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn conj(&self) -> Quad {
        self.new_like(self.a.clone(), -self.b.clone())
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * &*self.d
    }

    fn check(&self, o: &Quad) {
        assert!(
            Arc::ptr_eq(&self.d, &o.d) || self.d == o.d,
            "mixing elements of different quadratic fields"
        );
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rat(&self.a))
        } else {
            write!(
                f,
                "({} + {}*sqrt({}))",
                fmt_rat(&self.a),
                fmt_rat(&self.b),
                fmt_rat(&self.d)
            )
        }
    }
}

impl PartialEq for Quad {
    fn eq(&self, o: &Quad) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, o: Quad) -> Quad {
        self.check(&o);
        Quad {
            a: self.a + o.a,
            b: self.b + o.b,
            d: self.d,
        }
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, o: Quad) -> Quad {
        self.check(&o);
        Quad {
            a: self.a - o.a,
            b: self.b - o.b,
            d: self.d,
        }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, o: Quad) -> Quad {
        self.check(&o);
        if self.b.is_zero() {
            return Quad {
                a: &self.a * &o.a,
                b: &self.a * &o.b,
                d: self.d,
            };
        }
        if o.b.is_zero() {
            return Quad {
                a: &self.a * &o.a,
                b: &self.b * &o.a,
                d: self.d,
            };
        }
        let a = &self.a * &o.a + &self.b * &o.b * &*self.d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Quad { a, b, d: self.d }
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Scalar for Quad {
    fn zero_like(&self) -> Self {
        self.new_like(int(0), int(0))
    }
    fn one_like(&self) -> Self {
        self.new_like(int(1), int(0))
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        self.new_like(r.clone(), int(0))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn try_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.new_like(&self.a / &n, -(&self.b / &n)))
    }
    fn scale(&self, r: &Rat) -> Self {
        self.new_like(&self.a * r, &self.b * r)
    }
    fn to_json(&self) -> Value {
        if self.b.is_zero() {
            Value::String(fmt_rat(&self.a))
        } else {
            json!({
                "rational": fmt_rat(&self.a),
                "radical": fmt_rat(&self.b),
                "radicand": fmt_rat(&self.d),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn root_squares_to_radicand() {
        let r = Quad::root(rat(9, 10)).unwrap();
        assert_eq!((r.clone() * r.clone()).as_rat(), Some(&rat(9, 10)));
        let x = r.new_like(rat(1, 3), rat(-2, 5));
        let y = x.try_inv().unwrap();
        assert!((x * y).is_one());
        assert!(Quad::root(rat(9, 4)).is_err());
    }
}
