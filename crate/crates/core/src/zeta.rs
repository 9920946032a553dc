//! Bernoulli numbers, `zeta(1-2m)` and the zeta-regularized value of `f^{i,i}(1)`.
//!
//! Bernoulli numbers use the positive convention
//! `x/(e^x-1) + x/2 = 1 + sum_{n>0} (-1)^{n-1} B_n x^{2n}/(2n)!`, so `B_1 = 1/6`.

use std::collections::BTreeMap;

use num_integer::binomial;

use crate::algebra::{fmt_rat, int, rat, Hbar, PowerSeries, Rat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::fock::{hw_eigenvalue_w, p_binomial, HighestWeight};
use crate::report::{CheckRecord, Checker};

pub const SUITE: &str = "zeta";

fn factorial(n: u64) -> Rat {
    (1..=n).fold(int(1), |acc, k| acc * int(k as i64))
}

/// `B_1..=B_m`, read off from the inverse of `(e^x - 1)/x`.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: BTreeMap<u32, Rat>,
}

impl BernoulliTable {
    pub fn new(m: u32) -> Result<BernoulliTable> {
        if m < 1 {
            return Err(Error::InvalidArgument("Bernoulli index must be at least 1".into()));
        }
        let order = 2 * m as usize;
        let ratio: Vec<Rat> = (0..=order).map(|k| int(1) / factorial(k as u64 + 1)).collect();
        let inv = PowerSeries::new(ratio)?.inv()?;
        let values = (1..=m)
            .map(|n| {
                // x/2 only touches the linear coefficient
                let c = inv.coeff(2 * n as usize).clone() * factorial(2 * n as u64);
                let b = if n % 2 == 1 { c } else { -c };
                (n, b)
            })
            .collect();
        Ok(BernoulliTable { values })
    }

    pub fn get(&self, n: u32) -> Option<&Rat> {
        self.values.get(&n)
    }
}

pub fn bernoulli(m: i64) -> Result<Rat> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("Bernoulli index {m} must be at least 1")));
    }
    let t = BernoulliTable::new(m as u32)?;
    Ok(t.get(m as u32).cloned().unwrap_or_else(|| int(0)))
}

/// `zeta(1-2m) = (-1)^m B_m/(2m)` for `m = 1..=M`.
#[derive(Clone, Debug)]
pub struct ZetaValues {
    values: BTreeMap<u32, Rat>,
}

impl ZetaValues {
    pub fn new(m: u32) -> Result<ZetaValues> {
        let b = BernoulliTable::new(m)?;
        let values = b
            .values
            .iter()
            .map(|(&n, bn)| {
                let v = bn / int(2 * n as i64);
                (n, if n % 2 == 0 { v } else { -v })
            })
            .collect();
        Ok(ZetaValues { values })
    }

    /// `zeta(1 - 2m)`
    pub fn at(&self, m: u32) -> Option<&Rat> {
        self.values.get(&m)
    }
}

fn hbar_exp(c: Rat, trunc: usize) -> Hbar<Rat> {
    Hbar::exp_linear(&c, trunc)
}

/// `(1 - e^{a x})` as an `x`-series.
fn one_minus_exp(a: Rat, trunc: usize) -> Hbar<Rat> {
    Hbar::constant(int(1), trunc) - hbar_exp(a, trunc)
}

/// Coefficients `a^i_{2m}`, `m = 1..=M`, of
/// `(1-q^n)(1-t^{-n}) (1-p^{in})/(1-p^n) (1-p^{(N-i)n})/(1-p^{Nn})` in `x = n hbar`.
pub fn a_coefficients(n: i64, i: i64, beta: &Rat, m: usize) -> Result<Vec<Rat>> {
    if i < 1 || i > n - 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= N-1, got i = {i}")));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("M must be at least 1".into()));
    }
    let gamma = int(1) - beta;
    if gamma.is_zero() {
        return Err(Error::InvalidArgument("beta = 1 makes p trivial".into()));
    }
    // each quotient by a series of valuation one costs one order
    let trunc = 2 * m + 1 + 2;
    let num = one_minus_exp(int(1), trunc)
        * one_minus_exp(-beta.clone(), trunc)
        * one_minus_exp(int(i) * &gamma, trunc)
        * one_minus_exp(int(n - i) * &gamma, trunc);
    let den = one_minus_exp(gamma.clone(), trunc) * one_minus_exp(int(n) * &gamma, trunc);
    let f = num.try_div(&den)?;
    if f.trunc() < 2 * m + 1 {
        return Err(Error::PrecisionExhausted("a-coefficient expansion lost too many orders".into()));
    }
    for k in (1..=2 * m).step_by(2) {
        if !f.coeff(k).is_zero() {
            return Err(Error::Mismatch(format!(
                "odd coefficient of x^{k} is {}",
                fmt_rat(&f.coeff(k))
            )));
        }
    }
    if !f.coeff(0).is_zero() {
        return Err(Error::Mismatch("constant term does not vanish".into()));
    }
    Ok((1..=m).map(|k| f.coeff(2 * k)).collect())
}

/// `log(sinh x / x)` as an even series through `x^{2M}`.
pub fn log_sinh_ratio(m: usize) -> Result<PowerSeries<Rat>> {
    let coeffs = (0..=2 * m)
        .map(|k| if k % 2 == 0 { int(1) / factorial(k as u64 + 1) } else { int(0) })
        .collect();
    PowerSeries::new(coeffs)?.log()
}

/// The Bernoulli expansion of `log(sinh x / x)` through `x^{2M}`.
pub fn log_sinh_bernoulli(m: usize) -> Result<PowerSeries<Rat>> {
    let b = BernoulliTable::new(m as u32)?;
    let mut coeffs = vec![int(0); 2 * m + 1];
    for k in 1..=m {
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        let two = int(2).pow(2 * k as i32 - 1);
        coeffs[2 * k] = sign * two * b.get(k as u32).cloned().unwrap_or_else(|| int(0))
            / (factorial(2 * k as u64) * int(k as i64));
    }
    PowerSeries::new(coeffs)
}

fn check_beta(n: i64, beta: &Rat) -> Result<()> {
    if *beta != rat(n + 1, n) && *beta != rat(n, n + 1) {
        return Err(Error::InvalidArgument(format!(
            "beta = {} is neither (N+1)/N nor N/(N+1)",
            fmt_rat(beta)
        )));
    }
    Ok(())
}

/// `exp(sum_m a^i_{2m} zeta(1-2m) hbar^{2m})` against
/// `(binom(N,i)^{-1} [N choose i]_p)^2` with `p = e^{(1-beta) hbar}`.
pub fn verify_zeta_identity(n: i64, i: i64, beta: &Rat, m: usize) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "zeta-identity")
        .case("N", n)
        .case("i", i)
        .case("beta", fmt_rat(beta))
        .case("M", m);
    ck.truncation("hbar_order", 2 * m as i64);
    let res = (|| -> Result<()> {
        check_beta(n, beta)?;
        if m < 2 {
            return Err(Error::InvalidArgument("M must be at least 2".into()));
        }
        let trunc = 2 * m + 1;
        let a = a_coefficients(n, i, beta, m)?;
        let z = ZetaValues::new(m as u32)?;
        let mut expo = vec![int(0); trunc];
        for (k, ak) in a.iter().enumerate() {
            expo[2 * (k + 1)] = ak * z.at(k as u32 + 1).cloned().unwrap_or_else(|| int(0));
        }
        let lhs = Hbar::from_coeffs(expo)?.exp()?;

        // [n] divides two series of valuation one, so keep a few spare orders
        let ctx = ScalarCtx::limit_one(n as usize, beta.clone(), trunc + n as usize + 2)?;
        let qb = p_binomial(&ctx, n, i)?;
        if qb.trunc() < trunc {
            return Err(Error::PrecisionExhausted("p-binomial lost too many orders".into()));
        }
        let b = Rat::from_integer(binomial(n, i).into());
        let ratio = qb.truncate(trunc).scale(&(int(1) / b));
        let rhs = ratio.clone() * ratio;
        for k in 0..trunc {
            ck.eq(|| format!("hbar^{k}"), &rhs.coeff(k), &lhs.coeff(k));
        }
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// Bernoulli values, `zeta(-1)` and the `log sinh` expansion to `x^{2M}`.
pub fn verify_bernoulli(m: usize) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "bernoulli-zeta").case("M", m);
    ck.truncation("x_order", 2 * m as i64);
    let res = (|| -> Result<()> {
        let z = ZetaValues::new(m as u32)?;
        ck.eq(|| "zeta(-1)".into(), &rat(-1, 12), z.at(1).unwrap_or(&int(0)));
        ck.eq(|| "12 zeta(-1)".into(), &int(-1), &(int(12) * z.at(1).cloned().unwrap_or_else(|| int(0))));
        let b = BernoulliTable::new(m as u32)?;
        for k in 1..=m as u32 {
            ck.holds(|| format!("B_{k} > 0"), b.get(k).is_some_and(|v| *v > int(0)));
        }
        let direct = log_sinh_ratio(m)?;
        let expansion = log_sinh_bernoulli(m)?;
        for k in 0..=2 * m {
            ck.eq(|| format!("log sinh: x^{k}"), direct.coeff(k), expansion.coeff(k));
        }
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// `w^i(vac) = [N choose i]_p` at a generic point.
pub fn verify_vacuum_eigenvalue<S: Scalar>(ctx: &ScalarCtx<S>, i: usize) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "vacuum-eigenvalue").case("N", ctx.n).case("i", i);
    ck.assume("vacuum highest weight");
    let vac = HighestWeight::vacuum(ctx);
    match p_binomial(ctx, ctx.n as i64, i as i64) {
        Ok(b) => {
            ck.eq(|| "W^i_0 on the vacuum".into(), &b, &hw_eigenvalue_w(ctx, &vac, i));
        }
        Err(e) => ck.error("p-binomial", &e),
    }
    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Standard Bernoulli numbers by the Akiyama-Tanigawa algorithm.
    fn akiyama_tanigawa(n: usize) -> Vec<Rat> {
        let mut out = Vec::new();
        let mut a: Vec<Rat> = Vec::new();
        for m in 0..=n {
            a.push(int(1) / int(m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
            }
            out.push(a[0].clone());
        }
        out
    }

    #[test]
    fn bernoulli_values() {
        let t = BernoulliTable::new(6).unwrap();
        assert_eq!(t.get(1), Some(&rat(1, 6)));
        assert_eq!(t.get(2), Some(&rat(1, 30)));
        assert_eq!(t.get(3), Some(&rat(1, 42)));
        let std = akiyama_tanigawa(12);
        for k in 1..=6u32 {
            let s = &std[2 * k as usize];
            let abs = if *s < int(0) { -s.clone() } else { s.clone() };
            assert_eq!(t.get(k), Some(&abs), "B_{k}");
        }
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn zeta_minus_one() {
        assert_eq!(ZetaValues::new(3).unwrap().at(1), Some(&rat(-1, 12)));
        assert_eq!(ZetaValues::new(3).unwrap().at(2), Some(&rat(1, 120)));
    }

    #[test]
    fn leading_a_coefficient() {
        // (1 - e^x)(1 - e^{-beta x}) = -beta x^2 + ..., and 1/(1 + p^n) -> 1/2
        let a = a_coefficients(2, 1, &rat(3, 2), 3).unwrap();
        assert_eq!(a[0], rat(-3, 4));
        for beta in [rat(4, 3), rat(3, 4)] {
            assert_eq!(
                a_coefficients(3, 1, &beta, 5).unwrap(),
                a_coefficients(3, 2, &beta, 5).unwrap()
            );
        }
    }

    #[test]
    fn identity_small() {
        for (n, i) in [(2, 1), (3, 1), (3, 2)] {
            for beta in [rat(n + 1, n), rat(n, n + 1)] {
                let rec = verify_zeta_identity(n, i, &beta, 4);
                assert!(rec.passed(), "{rec:?}");
            }
        }
        assert!(!verify_zeta_identity(2, 1, &rat(5, 2), 3).passed());
    }

    #[test]
    fn log_sinh() {
        assert!(verify_bernoulli(6).passed());
    }
}
