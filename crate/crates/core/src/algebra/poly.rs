//! Dense univariate polynomials over a [`Scalar`] field.

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
    zero: S,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>, zero: S) -> Poly<S> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: S) -> Poly<S> {
        Poly {
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(c: S) -> Poly<S> {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// `x - r`
    pub fn linear_root(r: &S) -> Poly<S> {
        Poly::new(vec![-r.clone(), r.one_like()], r.zero_like())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, o: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect(), self.zero.clone())
    }

    pub fn sub(&self, o: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect(), self.zero.clone())
    }

    pub fn mul(&self, o: &Poly<S>) -> Poly<S> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out, self.zero.clone())
    }

    pub fn scale(&self, c: &S) -> Poly<S> {
        Poly::new(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            self.zero.clone(),
        )
    }

    /// Euclidean division `self = q d + r`.
    pub fn div_rem(&self, d: &Poly<S>) -> Result<(Poly<S>, Poly<S>)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = d.lead().try_inv()?;
        let mut r = self.coeffs.clone();
        let qlen = r.len().saturating_sub(dd);
        let mut q = vec![self.zero.clone(); qlen];
        for k in (0..qlen).rev() {
            let c = r[k + dd].clone() * inv_lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dj.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone())))
    }

    pub fn monic(&self) -> Result<Poly<S>> {
        Ok(self.scale(&self.lead().try_inv()?))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly<S>) -> Result<Poly<S>> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, assuming they are coprime.
    pub fn inv_mod(&self, m: &Poly<S>) -> Result<Poly<S>> {
        // extended Euclid tracking only the coefficient of self
        let zero = self.zero.clone();
        let (mut r0, mut r1) = (m.clone(), self.div_rem(m)?.1);
        let (mut s0, mut s1) = (Poly::zero(zero.clone()), Poly::constant(zero.one_like()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return Err(Error::NotInvertible("polynomial shares a factor with modulus".into()));
        }
        let c = r0.coeff(0).try_inv()?;
        Ok(s0.scale(&c).div_rem(m)?.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, Rat};

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&k| int(k)).collect(), int(0))
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))).unwrap(), p(&[-1, 1]));
        let m = p(&[1, 1, 1]);
        let x = p(&[3, 2]);
        let xi = x.inv_mod(&m).unwrap();
        assert_eq!(x.mul(&xi).div_rem(&m).unwrap().1, p(&[1]));
    }
}
