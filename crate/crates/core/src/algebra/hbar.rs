//! Truncated power series `sum_{k<T} c_k hbar^k + O(hbar^T)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::rat::{int, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Hbar<C> {
    /// Dense coefficients; the length is the truncation order `T >= 1`.
    coeffs: Vec<C>,
}

impl<C: Scalar> Hbar<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Result<Hbar<C>> {
        if coeffs.is_empty() {
            return Err(Error::PrecisionExhausted("empty hbar series".into()));
        }
        Ok(Hbar { coeffs })
    }

    pub fn constant(c: C, trunc: usize) -> Hbar<C> {
        assert!(trunc > 0, "hbar truncation must be positive");
        let z = c.zero_like();
        let mut coeffs = vec![z; trunc];
        coeffs[0] = c;
        Hbar { coeffs }
    }

    /// The monomial `c hbar^k`.
    pub fn monomial(c: C, k: usize, trunc: usize) -> Hbar<C> {
        let mut coeffs = vec![c.zero_like(); trunc];
        if k < trunc {
            coeffs[k] = c;
        }
        Hbar { coeffs }
    }

    /// `exp(c hbar)`
    pub fn exp_linear(c: &C, trunc: usize) -> Hbar<C> {
        let mut coeffs = Vec::with_capacity(trunc);
        let mut term = c.one_like();
        for k in 0..trunc {
            if k > 0 {
                term = (term * c.clone()).scale(&Rat::new(1.into(), (k as i64).into()));
            }
            coeffs.push(term.clone());
        }
        Hbar { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn truncate(&self, t: usize) -> Hbar<C> {
        let t = t.clamp(1, self.coeffs.len());
        Hbar {
            coeffs: self.coeffs[..t].to_vec(),
        }
    }

    /// Index of the first non-zero coefficient, `None` if all vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Hbar<D> {
        Hbar {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<Hbar<C>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs a vanishing constant term".into()));
        }
        // E' = A' E
        let t = self.trunc();
        let mut e = vec![self.coeffs[0].zero_like(); t];
        e[0] = self.coeffs[0].one_like();
        for n in 1..t {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=n {
                acc = acc + self.coeffs[k].scale(&int(k as i64)) * e[n - k].clone();
            }
            e[n] = acc.scale(&Rat::new(1.into(), (n as i64).into()));
        }
        Ok(Hbar { coeffs: e })
    }

    /// `log(self)` for a series with constant term one.
    pub fn log(&self) -> Result<Hbar<C>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("log needs constant term one".into()));
        }
        // L' = F'/F, so n L_n = n F_n - sum_{k=1}^{n-1} k L_k F_{n-k}
        let t = self.trunc();
        let mut l = vec![self.coeffs[0].zero_like(); t];
        for n in 1..t {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                acc = acc - l[k].scale(&int(k as i64)) * self.coeffs[n - k].clone();
            }
            l[n] = acc.scale(&Rat::new(1.into(), (n as i64).into()));
        }
        Ok(Hbar { coeffs: l })
    }

    fn zip(self, o: Hbar<C>, f: impl Fn(C, C) -> C) -> Hbar<C> {
        let t = self.trunc().min(o.trunc());
        Hbar {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(o.coeffs)
                .take(t)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl<C: Scalar> PartialEq for Hbar<C> {
    /// Equality up to the smaller of the two truncation orders.
    fn eq(&self, o: &Hbar<C>) -> bool {
        self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a == b)
    }
}

impl<C: Scalar> Add for Hbar<C> {
    type Output = Hbar<C>;
    fn add(self, o: Hbar<C>) -> Hbar<C> {
        self.zip(o, |a, b| a + b)
    }
}

impl<C: Scalar> Sub for Hbar<C> {
    type Output = Hbar<C>;
    fn sub(self, o: Hbar<C>) -> Hbar<C> {
        self.zip(o, |a, b| a - b)
    }
}

impl<C: Scalar> Neg for Hbar<C> {
    type Output = Hbar<C>;
    fn neg(self) -> Hbar<C> {
        Hbar {
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<C: Scalar> Mul for Hbar<C> {
    type Output = Hbar<C>;
    fn mul(self, o: Hbar<C>) -> Hbar<C> {
        let t = self.trunc().min(o.trunc());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; t];
        for (i, a) in self.coeffs.iter().take(t).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(t - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Hbar { coeffs: out }
    }
}

impl<C: Scalar> Scalar for Hbar<C> {
    fn zero_like(&self) -> Self {
        Hbar {
            coeffs: vec![self.coeffs[0].zero_like(); self.trunc()],
        }
    }
    fn one_like(&self) -> Self {
        Hbar::constant(self.coeffs[0].one_like(), self.trunc())
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Hbar::constant(self.coeffs[0].from_rat_like(r), self.trunc())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn try_inv(&self) -> Result<Self> {
        let c0inv = self.coeffs[0]
            .try_inv()
            .map_err(|_| Error::NotInvertible("hbar series with vanishing constant term".into()))?;
        let t = self.trunc();
        let mut out: Vec<C> = Vec::with_capacity(t);
        out.push(c0inv.clone());
        for n in 1..t {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * c0inv.clone()));
        }
        Ok(Hbar { coeffs: out })
    }
    /// Division that first cancels the common power of `hbar`.
    ///
    /// Dividing by a series of valuation `v` costs `v` orders of precision.
    fn try_div(&self, d: &Self) -> Result<Self> {
        let v = d.valuation().ok_or_else(|| {
            Error::PrecisionExhausted("divisor vanishes to the available order".into())
        })?;
        if v == 0 {
            return Ok(self.clone() * d.try_inv()?);
        }
        if let Some(k) = self.coeffs.iter().take(v).position(|c| !c.is_zero()) {
            return Err(Error::Pole(format!(
                "quotient has a pole of order {} in hbar",
                v - k
            )));
        }
        let t = self.trunc().min(d.trunc()) - v;
        if t == 0 {
            return Err(Error::PrecisionExhausted("division consumed all orders".into()));
        }
        let num = Hbar {
            coeffs: self.coeffs[v..v + t].to_vec(),
        };
        let den = Hbar {
            coeffs: d.coeffs[v..v + t].to_vec(),
        };
        Ok(num * den.try_inv()?)
    }
    fn scale(&self, r: &Rat) -> Self {
        Hbar {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }
    fn to_json(&self) -> Value {
        json!({
            "hbar_order": self.trunc(),
            "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn exp_linear_matches_exp() {
        let c = rat(3, 2);
        let a = Hbar::monomial(c.clone(), 1, 7);
        assert_eq!(a.exp().unwrap(), Hbar::exp_linear(&c, 7));
        assert_eq!(Hbar::exp_linear(&c, 7).log().unwrap(), a);
    }

    #[test]
    fn valuation_aware_division() {
        let q = Hbar::exp_linear(&int(1), 6);
        let one = q.one_like();
        let num = one.clone() - q.pow_i(2).unwrap();
        let den = one - q;
        // (1 - q^2)/(1 - q) = 1 + q, one order lost
        let r = num.try_div(&den).unwrap();
        assert_eq!(r.trunc(), 5);
        assert_eq!(r, Hbar::exp_linear(&int(1), 5) + Hbar::constant(int(1), 5));
        assert!(den_pole().is_err());
    }

    fn den_pole() -> Result<Hbar<Rat>> {
        let h = Hbar::monomial(int(1), 1, 4);
        h.one_like().try_div(&h)
    }
}
