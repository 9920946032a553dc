//! Parameter contexts: the values of `q`, `t`, `p = q/t` and `s = p^(1/2)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cyc::Cyc;
use super::hbar::Hbar;
use super::quad::Quad;
use super::rat::{fmt_rat, int, rat_sqrt, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Which parameter regime a context describes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    /// Rational `q`, `t`.
    Generic { q: String, t: String },
    /// `q = e^hbar`, `t = q^beta`.
    LimitOne { beta: String, hbar_order: usize },
    /// `q = e^hbar`, `t = omega^-1 q^((k+N)/N)`, `omega = e^(2 pi i/N)`.
    LimitTwo { k: String, hbar_order: usize },
}

#[derive(Clone, Debug)]
pub struct ScalarCtx<S> {
    pub n: usize,
    pub q: S,
    pub t: S,
    pub t_inv: S,
    pub p: S,
    pub s: S,
    pub regime: Regime,
    s_table: Arc<Vec<S>>,
}

const TABLE_SLACK: i64 = 24;

impl<S: Scalar> ScalarCtx<S> {
    fn build(n: usize, q: S, t: S, t_inv: S, p: S, s: S, regime: Regime) -> Result<ScalarCtx<S>> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("rank N = {n} must be at least 2")));
        }
        let half = Self::half_width(n);
        let s_inv = s.try_inv()?;
        let mut table = Vec::with_capacity(2 * half as usize + 1);
        let mut neg = vec![s.one_like()];
        for _ in 0..half {
            let next = neg.last().unwrap().clone() * s_inv.clone();
            neg.push(next);
        }
        table.extend(neg.into_iter().rev());
        for _ in 0..half {
            let next = table.last().unwrap().clone() * s.clone();
            table.push(next);
        }
        Ok(ScalarCtx {
            n,
            q,
            t,
            t_inv,
            p,
            s,
            regime,
            s_table: Arc::new(table),
        })
    }

    fn half_width(n: usize) -> i64 {
        8 * n as i64 + TABLE_SLACK
    }

    pub fn zero(&self) -> S {
        self.s.zero_like()
    }

    pub fn one(&self) -> S {
        self.s.one_like()
    }

    pub fn lift(&self, r: &Rat) -> S {
        self.s.from_rat_like(r)
    }

    pub fn int(&self, k: i64) -> S {
        self.s.from_int_like(k)
    }

    /// `s^e = p^(e/2)`
    pub fn s_pow(&self, e: i64) -> S {
        let half = Self::half_width(self.n);
        if e.abs() <= half {
            self.s_table[(e + half) as usize].clone()
        } else {
            self.s.pow_i(e).expect("s is invertible")
        }
    }

    /// `p^e`
    pub fn p_pow(&self, e: i64) -> S {
        self.s_pow(2 * e)
    }

    pub fn q_pow(&self, e: i64) -> S {
        self.q.pow_i(e).expect("q is invertible")
    }

    pub fn t_pow(&self, e: i64) -> S {
        self.t.pow_i(e).expect("t is invertible")
    }

    /// The same parameters with every scalar pushed through `f`.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ScalarCtx<T> {
        ScalarCtx {
            n: self.n,
            q: f(&self.q),
            t: f(&self.t),
            t_inv: f(&self.t_inv),
            p: f(&self.p),
            s: f(&self.s),
            regime: self.regime.clone(),
            s_table: Arc::new(self.s_table.iter().map(f).collect()),
        }
    }

    pub fn with_rank(&self, n: usize) -> Result<ScalarCtx<S>> {
        Self::build(
            n,
            self.q.clone(),
            self.t.clone(),
            self.t_inv.clone(),
            self.p.clone(),
            self.s.clone(),
            self.regime.clone(),
        )
    }
}

impl ScalarCtx<Quad> {
    /// Rational generic point. `s` is adjoined as a square root when `p` is not a square.
    pub fn generic(n: usize, q: Rat, t: Rat) -> Result<ScalarCtx<Quad>> {
        if Scalar::is_zero(&q) || Scalar::is_zero(&t) {
            return Err(Error::Degenerate("q and t must be non-zero".into()));
        }
        if q == int(1) || t == int(1) {
            return Err(Error::Degenerate("q = 1 or t = 1 trivializes the algebra".into()));
        }
        let p = &q / &t;
        if p == int(1) || p == int(-1) {
            return Err(Error::Degenerate(format!(
                "p = {} is a root of unity, so 1 - p^n vanishes",
                fmt_rat(&p)
            )));
        }
        let s = match rat_sqrt(&p) {
            Some(r) => Quad::root(int(2))?.new_like(r, int(0)),
            None => Quad::root(p.clone())?,
        };
        let regime = Regime::Generic {
            q: fmt_rat(&q),
            t: fmt_rat(&t),
        };
        let qq = s.from_rat_like(&q);
        let tt = s.from_rat_like(&t);
        let ti = s.from_rat_like(&t.recip());
        let pp = s.from_rat_like(&p);
        Self::build(n, qq, tt, ti, pp, s, regime)
    }
}

impl ScalarCtx<Hbar<Rat>> {
    /// `q = e^hbar`, `t = e^(beta hbar)`, series truncated at `hbar^trunc`.
    pub fn limit_one(n: usize, beta: Rat, trunc: usize) -> Result<ScalarCtx<Hbar<Rat>>> {
        let one = int(1);
        let q = Hbar::exp_linear(&one, trunc);
        let t = Hbar::exp_linear(&beta, trunc);
        let t_inv = Hbar::exp_linear(&-beta.clone(), trunc);
        let p = Hbar::exp_linear(&(&one - &beta), trunc);
        let s = Hbar::exp_linear(&((&one - &beta) / int(2)), trunc);
        let regime = Regime::LimitOne {
            beta: fmt_rat(&beta),
            hbar_order: trunc,
        };
        Self::build(n, q, t, t_inv, p, s, regime)
    }
}

impl ScalarCtx<Hbar<Cyc>> {
    /// `q = e^hbar`, `t^-1 = omega e^(-hbar (k+N)/N)` over `Q(eta)`, `eta^2 = omega`.
    pub fn limit_two(n: usize, k: Rat, trunc: usize) -> Result<ScalarCtx<Hbar<Cyc>>> {
        let eta = Cyc::eta(2 * n as u32)?;
        let nn = int(n as i64);
        let exp = |c: Rat| Hbar::exp_linear(&eta.from_rat_like(&c), trunc);
        let konst = |c: Cyc| Hbar::constant(c, trunc);
        let omega = eta.eta_pow(2);
        let q = exp(int(1));
        let t_inv = konst(omega.clone()) * exp(-(&k + &nn) / &nn);
        let t = konst(eta.eta_pow(-2)) * exp((&k + &nn) / &nn);
        let p = konst(omega) * exp(-(&k / &nn));
        let s = konst(eta.clone()) * exp(-(&k / (int(2) * &nn)));
        let regime = Regime::LimitTwo {
            k: fmt_rat(&k),
            hbar_order: trunc,
        };
        Self::build(n, q, t, t_inv, p, s, regime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn generic_square_root() {
        let c = ScalarCtx::generic(3, rat(3, 2), rat(5, 3)).unwrap();
        assert_eq!(c.s_pow(2), c.p);
        assert_eq!(c.s_pow(-3) * c.s_pow(3), c.one());
        assert!((c.t.clone() * c.t_inv.clone()).is_one());
        let sq = ScalarCtx::generic(2, rat(9, 1), rat(4, 1)).unwrap();
        assert_eq!(sq.s.as_rat(), Some(&rat(3, 2)));
        assert!(ScalarCtx::generic(2, rat(2, 1), rat(2, 1)).is_err());
        assert!(ScalarCtx::generic(2, rat(2, 1), rat(-2, 1)).is_err());
    }

    #[test]
    fn limit_two_relations() {
        let c = ScalarCtx::limit_two(3, rat(2, 1), 5).unwrap();
        assert_eq!(c.q.clone() * c.t_inv.clone(), c.p);
        assert_eq!(c.s.clone() * c.s.clone(), c.p);
        assert!((c.t.clone() * c.t_inv.clone()).is_one());
        // p^N = e^(-k hbar)
        assert_eq!(c.p_pow(3), Hbar::exp_linear(&c.s.coeff(0).from_rat_like(&rat(-2, 1)), 5));
    }
}
