//! The cyclotomic field `Q(eta)`, `eta` a primitive `m`-th root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use super::poly::Poly;
use super::rat::{fmt_rat, int, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
struct CycField {
    order: u32,
    modulus: Poly<Rat>,
}

/// Cyclotomic polynomial `Phi_m`, by dividing `x^m - 1` by `Phi_d` for proper divisors `d`.
pub fn cyclotomic_poly(m: u32) -> Poly<Rat> {
    let mut coeffs = vec![int(0); m as usize + 1];
    coeffs[0] = int(-1);
    coeffs[m as usize] = int(1);
    let mut p = Poly::new(coeffs, int(0));
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic_poly(d)).expect("monic divisor").0;
        }
    }
    p
}

#[derive(Clone)]
pub struct Cyc {
    coeffs: Vec<Rat>,
    field: Arc<CycField>,
}

impl Cyc {
    /// The generator `eta` of the `m`-th cyclotomic field.
    pub fn eta(order: u32) -> Result<Cyc> {
        if order == 0 {
            return Err(Error::InvalidArgument("cyclotomic order must be positive".into()));
        }
        let field = Arc::new(CycField {
            order,
            modulus: cyclotomic_poly(order),
        });
        Ok(Cyc::from_poly(&field, &Poly::new(vec![int(0), int(1)], int(0))))
    }

    fn from_poly(field: &Arc<CycField>, p: &Poly<Rat>) -> Cyc {
        let r = p.div_rem(&field.modulus).expect("monic modulus").1;
        let deg = field.modulus.degree().unwrap_or(0);
        Cyc {
            coeffs: (0..deg).map(|k| r.coeff(k)).collect(),
            field: field.clone(),
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Coefficients in the power basis `1, eta, ..., eta^(phi(m)-1)`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `eta^e` for any integer `e`.
    pub fn eta_pow(&self, e: i64) -> Cyc {
        let m = self.field.order as i64;
        let k = e.rem_euclid(m) as usize;
        let mut c = vec![int(0); k + 1];
        c[k] = int(1);
        Cyc::from_poly(&self.field, &Poly::new(c, int(0)))
    }

    /// Builds `sum c_e eta^e` with exponents taken modulo the order.
    pub fn from_exponents(&self, terms: &[(i64, Rat)]) -> Cyc {
        terms.iter().fold(self.zero_like(), |acc, (e, c)| {
            acc + self.eta_pow(*e).scale(c)
        })
    }

    pub fn as_rat(&self) -> Option<Rat> {
        self.coeffs[1..]
            .iter()
            .all(Scalar::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn poly(&self) -> Poly<Rat> {
        Poly::new(self.coeffs.clone(), int(0))
    }

    fn check(&self, o: &Cyc) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field.order == o.field.order,
            "mixing elements of different cyclotomic fields"
        );
    }

    fn zip(self, o: Cyc, f: impl Fn(Rat, Rat) -> Rat) -> Cyc {
        self.check(&o);
        Cyc {
            coeffs: self.coeffs.into_iter().zip(o.coeffs).map(|(a, b)| f(a, b)).collect(),
            field: self.field,
        }
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        write!(f, "Cyc{}[{}]", self.field.order, parts.join(", "))
    }
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Cyc) -> bool {
        self.field.order == o.field.order && self.coeffs == o.coeffs
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, o: Cyc) -> Cyc {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, o: Cyc) -> Cyc {
        self.zip(o, |a, b| a - b)
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, o: Cyc) -> Cyc {
        self.check(&o);
        if let Some(c) = o.as_rat() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_rat() {
            return o.scale(&c);
        }
        Cyc::from_poly(&self.field, &self.poly().mul(&o.poly()))
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
            field: self.field,
        }
    }
}

impl Scalar for Cyc {
    fn zero_like(&self) -> Self {
        Cyc {
            coeffs: vec![int(0); self.coeffs.len()],
            field: self.field.clone(),
        }
    }
    fn one_like(&self) -> Self {
        self.from_rat_like(&int(1))
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        let mut z = self.zero_like();
        z.coeffs[0] = r.clone();
        z
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = self.as_rat() {
            return Ok(self.from_rat_like(&c.recip()));
        }
        let inv = self.poly().inv_mod(&self.field.modulus)?;
        Ok(Cyc::from_poly(&self.field, &inv))
    }
    fn scale(&self, r: &Rat) -> Self {
        Cyc {
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
            field: self.field.clone(),
        }
    }
    fn to_json(&self) -> Value {
        json!({
            "order": self.field.order,
            "coeffs": self.coeffs.iter().map(fmt_rat).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let c: Vec<Rat> = cyclotomic_poly(4).coeffs().to_vec();
        assert_eq!(c, vec![int(1), int(0), int(1)]);
        assert_eq!(cyclotomic_poly(6).degree(), Some(2));
        assert_eq!(cyclotomic_poly(8).degree(), Some(4));
        assert_eq!(cyclotomic_poly(10).degree(), Some(4));
    }

    #[test]
    fn eta_has_exact_order() {
        for m in [2u32, 4, 6, 8, 10] {
            let eta = Cyc::eta(m).unwrap();
            assert!(eta.pow_i(m as i64).unwrap().is_one());
            for k in 1..m as i64 {
                assert!(!eta.pow_i(k).unwrap().is_one());
            }
            assert_eq!(eta.eta_pow(-1), eta.try_inv().unwrap());
        }
    }

    #[test]
    fn inverse_of_generic_element() {
        let eta = Cyc::eta(8).unwrap();
        let x = eta.one_like() + eta.clone() * eta.clone() + eta.scale(&int(3));
        assert!((x.try_inv().unwrap() * x).is_one());
    }
}
