//! Heisenberg commutators, highest weights and zero-mode data.

use crate::algebra::{Rat, Scalar, ScalarCtx};
use crate::error::{Error, Result};

/// Zero-mode eigenvalues `a_1..a_N` of `q^(sqrt(beta) h^i_0)` on `|lambda>`.
///
/// The product of the `a_i` is 1: the constraint on the bosons makes the
/// zero modes sum to zero with unit weights, and `W^N = 1` requires it.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight<S> {
    a: Vec<S>,
}

impl<S: Scalar> HighestWeight<S> {
    pub fn vacuum(ctx: &ScalarCtx<S>) -> HighestWeight<S> {
        HighestWeight {
            a: vec![ctx.one(); ctx.n],
        }
    }

    pub fn new(ctx: &ScalarCtx<S>, a: Vec<S>) -> Result<HighestWeight<S>> {
        if a.len() != ctx.n {
            return Err(Error::InvalidArgument(format!(
                "{} zero-mode eigenvalues for N = {}",
                a.len(),
                ctx.n
            )));
        }
        if a.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidArgument("zero-mode eigenvalues must be non-zero".into()));
        }
        let prod = a.iter().fold(ctx.one(), |acc, x| acc * x.clone());
        if !prod.is_one() {
            return Err(Error::InvalidArgument(
                "zero-mode eigenvalues must multiply to 1".into(),
            ));
        }
        Ok(HighestWeight { a })
    }

    /// Takes `a_1..a_{N-1}` and fixes `a_N` by the product constraint.
    pub fn from_free(ctx: &ScalarCtx<S>, free: Vec<S>) -> Result<HighestWeight<S>> {
        let prod = free.iter().fold(ctx.one(), |acc, x| acc * x.clone());
        let mut a = free;
        a.push(prod.try_inv()?);
        Self::new(ctx, a)
    }

    pub fn a(&self, flavor: usize) -> &S {
        &self.a[flavor - 1]
    }

    /// `a_i s^(N+1-2i)`: the eigenvalue of the zero-mode part of `Lambda_i`.
    pub fn lambda_zero_mode(&self, ctx: &ScalarCtx<S>, flavor: usize) -> S {
        self.a(flavor).clone() * ctx.s_pow(ctx.n as i64 + 1 - 2 * flavor as i64)
    }

    pub fn is_vacuum(&self) -> bool {
        self.a.iter().all(Scalar::is_one)
    }
}

/// `[h^i_n, h^j_{-n}]` for `n != 0`.
pub fn boson_commutator<S: Scalar>(ctx: &ScalarCtx<S>, i: usize, j: usize, n: i64) -> Result<S> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "zero modes are central; no commutator at n = 0".into(),
        ));
    }
    let nn = ctx.n as i64;
    let one = ctx.one();
    let delta = if i == j { nn - 1 } else { -1 };
    let theta = if i < j { nn * n } else { 0 };
    let num = (one.clone() - ctx.q_pow(n)) * (one.clone() - ctx.t_inv.pow_i(n)?)
        * (one.clone() - ctx.p_pow(delta * n))
        * ctx.p_pow(theta);
    let den = one - ctx.p_pow(nn * n);
    if den.is_zero() {
        return Err(Error::Degenerate(format!("1 - p^{} vanishes", nn * n)));
    }
    Ok(-num.try_div(&den)?.scale(&Rat::new(1.into(), n.into())))
}

/// `e_i(x_1, .., x_m)`
pub fn elementary_symmetric<S: Scalar>(xs: &[S], i: usize, one: &S) -> S {
    // e[k] after processing a prefix of xs
    let mut e = vec![one.zero_like(); i + 1];
    e[0] = one.clone();
    for x in xs {
        for k in (1..=i).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * x.clone();
        }
    }
    e[i].clone()
}

/// `w^i(lambda)`, the eigenvalue of `W^i_0` on `|lambda>`.
pub fn hw_eigenvalue_w<S: Scalar>(ctx: &ScalarCtx<S>, hw: &HighestWeight<S>, i: usize) -> S {
    if i > ctx.n {
        return ctx.zero();
    }
    let xs: Vec<S> = (1..=ctx.n).map(|f| hw.lambda_zero_mode(ctx, f)).collect();
    elementary_symmetric(&xs, i, &ctx.one())
}

/// `[n] = (p^(n/2) - p^(-n/2))/(p^(1/2) - p^(-1/2))`
pub fn p_number<S: Scalar>(ctx: &ScalarCtx<S>, n: i64) -> Result<S> {
    (ctx.s_pow(n) - ctx.s_pow(-n)).try_div(&(ctx.s_pow(1) - ctx.s_pow(-1)))
}

/// `[N choose i]_p = [N]!/([i]! [N-i]!)`
pub fn p_binomial<S: Scalar>(ctx: &ScalarCtx<S>, n: i64, i: i64) -> Result<S> {
    if i < 0 || i > n {
        return Ok(ctx.zero());
    }
    let fact = |m: i64| -> Result<S> {
        let mut acc = ctx.one();
        for k in 1..=m {
            acc = acc * p_number(ctx, k)?;
        }
        Ok(acc)
    };
    fact(n)?.try_div(&(fact(i)? * fact(n - i)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Quad};

    fn ctx(n: usize) -> ScalarCtx<Quad> {
        ScalarCtx::generic(n, rat(3, 2), rat(5, 3)).unwrap()
    }

    #[test]
    fn n2_commutator_value() {
        let c = ctx(2);
        // -(1-3/2)(1-3/5)(1-9/10)/(1-81/100) = (1/2)(2/5)(1/10)/(19/100) = 2/19
        assert_eq!(boson_commutator(&c, 1, 1, 1).unwrap().as_rat(), Some(&rat(2, 19)));
    }

    #[test]
    fn antisymmetry_and_constraint() {
        let c = ctx(3);
        for n in 1..6i64 {
            for i in 1..=3 {
                for j in 1..=3 {
                    let a = boson_commutator(&c, i, j, n).unwrap();
                    let b = boson_commutator(&c, j, i, -n).unwrap();
                    assert_eq!(a, -b);
                }
                let total = (1..=3usize).fold(c.zero(), |acc, k| {
                    acc + c.p_pow(k as i64 * n) * boson_commutator(&c, k, i, n).unwrap()
                });
                assert!(total.is_zero());
            }
        }
    }

    #[test]
    fn vacuum_eigenvalues_are_p_binomials() {
        for n in 2..=5usize {
            let c = ctx(n);
            let vac = HighestWeight::vacuum(&c);
            for i in 0..=n {
                assert_eq!(hw_eigenvalue_w(&c, &vac, i), p_binomial(&c, n as i64, i as i64).unwrap());
            }
        }
        let c = ctx(2);
        assert_eq!(
            hw_eigenvalue_w(&c, &HighestWeight::vacuum(&c), 1),
            c.s.clone() + c.s.try_inv().unwrap()
        );
    }

    #[test]
    fn weights_must_multiply_to_one() {
        let c = ctx(3);
        assert!(HighestWeight::new(&c, vec![c.int(2), c.one(), c.one()]).is_err());
        let hw = HighestWeight::from_free(&c, vec![c.int(2), c.lift(&rat(1, 3))]).unwrap();
        assert_eq!(hw.a(3), &c.lift(&rat(3, 2)));
    }
}
