//! Truncated power series in one variable and Laurent windows in several.

use std::collections::BTreeMap;

use super::rat::{int, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `sum_{k=0}^{order} c_k x^k`, exact through `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PowerSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Result<PowerSeries<S>> {
        if coeffs.is_empty() {
            return Err(Error::Window("power series needs at least one coefficient".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn constant(c: S, order: usize) -> PowerSeries<S> {
        let mut coeffs = vec![c.zero_like(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> PowerSeries<S> {
        PowerSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PowerSeries<T> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &PowerSeries<S>) -> PowerSeries<S> {
        let n = self.coeffs.len().min(o.coeffs.len());
        PowerSeries {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() + o.coeffs[k].clone()).collect(),
        }
    }

    pub fn sub(&self, o: &PowerSeries<S>) -> PowerSeries<S> {
        let n = self.coeffs.len().min(o.coeffs.len());
        PowerSeries {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() - o.coeffs[k].clone()).collect(),
        }
    }

    pub fn mul(&self, o: &PowerSeries<S>) -> PowerSeries<S> {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![self.coeffs[0].zero_like(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn scale(&self, c: &S) -> PowerSeries<S> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// `f(c x)`
    pub fn rescale_var(&self, c: &S) -> PowerSeries<S> {
        let mut pw = c.one_like();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        PowerSeries { coeffs: out }
    }

    pub fn inv(&self) -> Result<PowerSeries<S>> {
        let c0 = self.coeffs[0].try_inv()?;
        let mut out: Vec<S> = vec![c0.clone()];
        for n in 1..self.coeffs.len() {
            let mut acc = c0.zero_like();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * c0.clone()));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `exp(f)` for `f(0) = 0`.
    pub fn exp(&self) -> Result<PowerSeries<S>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs a vanishing constant term".into()));
        }
        let z = self.coeffs[0].zero_like();
        let mut e = vec![z.one_like()];
        for n in 1..self.coeffs.len() {
            let mut acc = z.clone();
            for k in 1..=n {
                acc = acc + self.coeffs[k].scale(&int(k as i64)) * e[n - k].clone();
            }
            e.push(acc.scale(&Rat::new(1.into(), (n as i64).into())));
        }
        Ok(PowerSeries { coeffs: e })
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Result<PowerSeries<S>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("log needs constant term one".into()));
        }
        let z = self.coeffs[0].zero_like();
        let mut l = vec![z.clone()];
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                acc = acc - l[k].scale(&int(k as i64)) * self.coeffs[n - k].clone();
            }
            l.push(acc.scale(&Rat::new(1.into(), (n as i64).into())));
        }
        Ok(PowerSeries { coeffs: l })
    }
}

/// Multivariate Laurent series known exactly on a box of exponents.
///
/// Coefficients with an exponent below `lo` in some variable vanish; those
/// above `hi` are unknown and never stored.
#[derive(Clone, Debug)]
pub struct LaurentWindow<S> {
    vars: Vec<String>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    terms: BTreeMap<Vec<i64>, S>,
    zero: S,
}

impl<S: Scalar> LaurentWindow<S> {
    pub fn new(vars: Vec<String>, lo: Vec<i64>, hi: Vec<i64>, zero: S) -> Result<LaurentWindow<S>> {
        if vars.len() != lo.len() || vars.len() != hi.len() {
            return Err(Error::Window("variable and bound lists differ in length".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Window("empty window".into()));
        }
        Ok(LaurentWindow {
            vars,
            lo,
            hi,
            terms: BTreeMap::new(),
            zero,
        })
    }

    pub fn from_power_series(var: &str, f: &PowerSeries<S>) -> LaurentWindow<S> {
        let mut w = LaurentWindow::new(
            vec![var.to_string()],
            vec![0],
            vec![f.order() as i64],
            f.coeff(0).zero_like(),
        )
        .expect("valid window");
        for (k, c) in f.coeffs().iter().enumerate() {
            w.add_term(&[k as i64], c.clone());
        }
        w
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn in_window(&self, e: &[i64]) -> bool {
        e.iter().zip(&self.hi).all(|(x, h)| x <= h)
    }

    /// Adds `c x^e`; terms beyond the window are dropped.
    pub fn add_term(&mut self, e: &[i64], c: S) {
        debug_assert!(e.iter().zip(&self.lo).all(|(x, l)| x >= l), "term below window");
        if c.is_zero() || !self.in_window(e) {
            return;
        }
        match self.terms.get_mut(e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(e);
                }
            }
            None => {
                self.terms.insert(e.to_vec(), c);
            }
        }
    }

    pub fn coeff(&self, e: &[i64]) -> S {
        self.terms.get(e).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, o: &LaurentWindow<S>) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::Window(format!(
                "variables {:?} and {:?} differ",
                self.vars, o.vars
            )));
        }
        Ok(())
    }

    fn combine(&self, o: &LaurentWindow<S>, sign: bool) -> Result<LaurentWindow<S>> {
        self.check_vars(o)?;
        let lo = self.lo.iter().zip(&o.lo).map(|(a, b)| *a.min(b)).collect();
        let hi = self.hi.iter().zip(&o.hi).map(|(a, b)| *a.min(b)).collect();
        let mut out = LaurentWindow::new(self.vars.clone(), lo, hi, self.zero.clone())?;
        for (e, c) in &self.terms {
            out.add_term(e, c.clone());
        }
        for (e, c) in &o.terms {
            out.add_term(e, if sign { c.clone() } else { -c.clone() });
        }
        Ok(out)
    }

    pub fn add(&self, o: &LaurentWindow<S>) -> Result<LaurentWindow<S>> {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &LaurentWindow<S>) -> Result<LaurentWindow<S>> {
        self.combine(o, false)
    }

    /// Product, keeping only the exponents whose coefficient is fully determined.
    pub fn mul(&self, o: &LaurentWindow<S>) -> Result<LaurentWindow<S>> {
        self.check_vars(o)?;
        let k = self.vars.len();
        let lo: Vec<i64> = (0..k).map(|v| self.lo[v] + o.lo[v]).collect();
        let hi: Vec<i64> = (0..k)
            .map(|v| (self.hi[v] + o.lo[v]).min(self.lo[v] + o.hi[v]))
            .collect();
        let mut out = LaurentWindow::new(self.vars.clone(), lo, hi, self.zero.clone())?;
        for (ea, a) in &self.terms {
            for (eb, b) in &o.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if out.in_window(&e) {
                    out.add_term(&e, a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> LaurentWindow<S> {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// `exp` of a series with non-negative exponents and no constant term.
    pub fn exp(&self) -> Result<LaurentWindow<S>> {
        if self.lo.iter().any(|&l| l < 0) {
            return Err(Error::Window("exp needs non-negative exponents".into()));
        }
        let origin = vec![0; self.vars.len()];
        if !self.coeff(&origin).is_zero() {
            return Err(Error::InvalidArgument("exp needs a vanishing constant term".into()));
        }
        let mut one = LaurentWindow::new(self.vars.clone(), origin.clone(), self.hi.clone(), self.zero.clone())?;
        one.add_term(&origin, self.zero.one_like());
        let mut out = one.clone();
        let mut power = one;
        // every term has total degree >= 1, so powers beyond the total span vanish
        let span: i64 = self.hi.iter().sum();
        for n in 1..=span.max(0) {
            power = power.mul(self)?.scale(&self.zero.from_rat_like(&Rat::new(1.into(), n.into())));
            power.hi = self.hi.clone();
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Restricts to exponents `<= hi` in every variable.
    pub fn restrict(&self, hi: &[i64]) -> LaurentWindow<S> {
        let mut out = self.clone();
        out.hi = self.hi.iter().zip(hi).map(|(a, b)| *a.min(b)).collect();
        out.terms.retain(|e, _| e.iter().zip(hi).all(|(x, h)| x <= h));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    #[test]
    fn exp_log_round_trip() {
        let f = PowerSeries::new(vec![int(0), rat(1, 2), int(-3), rat(2, 7), int(1)]).unwrap();
        let e = f.exp().unwrap();
        assert_eq!(e.log().unwrap(), f);
        let w = LaurentWindow::from_power_series("x", &f);
        let we = w.exp().unwrap();
        for k in 0..=4 {
            assert_eq!(we.coeff(&[k]), e.coeff(k as usize).clone());
        }
    }

    #[test]
    fn product_window_shrinks() {
        let mut a = LaurentWindow::new(vec!["x".into()], vec![-1], vec![3], int(0)).unwrap();
        a.add_term(&[-1], int(1));
        a.add_term(&[2], int(1));
        let b = LaurentWindow::from_power_series(
            "x",
            &PowerSeries::new(vec![int(1), int(1), int(1)]).unwrap(),
        );
        let c = a.mul(&b).unwrap();
        assert_eq!(c.hi(), &[1]);
        assert_eq!(c.coeff(&[1]), int(1));
    }
}
