//! Structure functions: `f^{i,j}`, `gamma` and the Z-algebra `g^{mu,nu}`.

use std::collections::BTreeMap;

use crate::algebra::{Cyc, PowerSeries, Quad, Rat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Checker};

pub const SUITE: &str = "f-identities";

/// `n`-th exponent term of `log f^{i,j}` times `n`:
/// `(1-q^n)(1-t^-n)(1-p^(min n))(1-p^((N-max) n)) s^(|i-j| n) / ((1-p^n)(1-p^(N n)))`.
///
/// Indices are arbitrary integers; `min`, `max` and `|i-j|` are taken literally.
pub fn f_exponent<S: Scalar>(ctx: &ScalarCtx<S>, i: i64, j: i64, n: i64) -> Result<S> {
    let nn = ctx.n as i64;
    let (lo, hi) = (i.min(j), i.max(j));
    let one = ctx.one();
    let num = (one.clone() - ctx.q_pow(n))
        * (one.clone() - ctx.t_inv.pow_i(n)?)
        * (one.clone() - ctx.p_pow(lo * n))
        * (one.clone() - ctx.p_pow((nn - hi) * n))
        * ctx.s_pow((i - j).abs() * n);
    if num.is_zero() {
        return Ok(num);
    }
    let den = (one.clone() - ctx.p_pow(n)) * (one - ctx.p_pow(nn * n));
    if den.is_zero() {
        return Err(Error::Degenerate(format!("1 - p^{n} or 1 - p^{} vanishes", nn * n)));
    }
    num.try_div(&den)
}

/// `f^{i,j}(x) = sum_l f_l x^l` through `x^order`.
pub fn f_series<S: Scalar>(ctx: &ScalarCtx<S>, i: i64, j: i64, order: usize) -> Result<PowerSeries<S>> {
    let mut expo = vec![ctx.zero()];
    for n in 1..=order as i64 {
        expo.push(f_exponent(ctx, i, j, n)?.scale(&Rat::new(1.into(), n.into())));
    }
    PowerSeries::new(expo)?.exp()
}

/// `gamma(p^(1/2) z) = (1-qz)(1-t^-1 z)/((1-z)(1-pz))` at an arbitrary `z`.
pub fn gamma_fn<S: Scalar>(ctx: &ScalarCtx<S>, z: &S) -> Result<S> {
    let one = ctx.one();
    let num = (one.clone() - ctx.q.clone() * z.clone()) * (one.clone() - ctx.t_inv.clone() * z.clone());
    let den = (one.clone() - z.clone()) * (one - ctx.p.clone() * z.clone());
    if den.is_zero() {
        return Err(Error::Pole("pole of gamma".into()));
    }
    num.try_div(&den)
        .map_err(|e| match e {
            Error::Pole(_) => Error::Pole("pole of gamma".into()),
            other => other,
        })
}

/// `gamma(s^a)`, i.e. the closed form at `z = s^(a-1)`.
pub fn gamma_at<S: Scalar>(ctx: &ScalarCtx<S>, a: i64) -> Result<S> {
    if a == 1 || a == -1 {
        return Err(Error::Pole(format!("pole of gamma at s^{a}")));
    }
    gamma_fn(ctx, &ctx.s_pow(a - 1))
}

/// `prod_{l=1}^{k-1} gamma(p^(l+1/2))`
pub fn gamma_product<S: Scalar>(ctx: &ScalarCtx<S>, k: i64) -> Result<S> {
    let mut acc = ctx.one();
    for l in 1..k {
        acc = acc * gamma_at(ctx, 2 * l + 1)?;
    }
    Ok(acc)
}

/// `gamma(s^a z)` as a power series in `z`.
pub fn gamma_series<S: Scalar>(ctx: &ScalarCtx<S>, a: i64, order: usize) -> Result<PowerSeries<S>> {
    let w = ctx.s_pow(a - 1);
    let lin = |c: S| {
        let mut v = vec![ctx.zero(); order + 1];
        v[0] = ctx.one();
        if order >= 1 {
            v[1] = -(c * w.clone());
        }
        PowerSeries::new(v)
    };
    let num = lin(ctx.q.clone())?.mul(&lin(ctx.t_inv.clone())?);
    let den = lin(ctx.one())?.mul(&lin(ctx.p.clone())?);
    Ok(num.mul(&den.inv()?))
}

/// Exponent term of `log g^{mu,nu}` times `n`, zero for `n = 0 mod N`.
pub fn g_exponent(eta: &Cyc, n_rank: usize, k: &Rat, mu: i64, nu: i64, n: i64) -> Result<Cyc> {
    if Scalar::is_zero(k) {
        return Err(Error::InvalidArgument("level k must be non-zero".into()));
    }
    if n % n_rank as i64 == 0 {
        return Ok(eta.zero_like());
    }
    let one = eta.one_like();
    let v = (one.clone() - eta.eta_pow(2 * mu * n)) * (one - eta.eta_pow(-2 * nu * n));
    Ok(v.scale(&-(k.recip())))
}

/// `g^{mu,nu}(x)` over `Q(eta)`, `eta` a primitive `2N`-th root of unity.
pub fn g_series(n_rank: usize, k: &Rat, mu: i64, nu: i64, order: usize) -> Result<PowerSeries<Cyc>> {
    let eta = Cyc::eta(2 * n_rank as u32)?;
    let mut expo = vec![eta.zero_like()];
    for n in 1..=order as i64 {
        expo.push(g_exponent(&eta, n_rank, k, mu, nu, n)?.scale(&Rat::new(1.into(), n.into())));
    }
    PowerSeries::new(expo)?.exp()
}

fn laurent_mul(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>, max: i64) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            if ea + eb <= max {
                *out.entry(ea + eb).or_insert(0) += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Order of the pole of `f^{a,b}(x)` at `x = s^c` (negative for a zero).
///
/// Uses the product form valid for `|p| < 1`:
/// `f^{a,b}(x) = prod_E [(1-q s^E x)(1-t^-1 s^E x)/((1-s^E x)(1-p s^E x))]^{c_E}` where
/// `sum_E c_E sigma^E = sigma^|a-b| (1-sigma^(2 min))(1-sigma^(2(N-max)))/((1-sigma^2)(1-sigma^(2N)))`.
pub fn f_pole_order(n_rank: usize, a: i64, b: i64, c: i64) -> i64 {
    let nn = n_rank as i64;
    let (lo, hi) = (a.min(b), a.max(b));
    let max = (-c).max(0) + 2;
    let binom = |e: i64| -> BTreeMap<i64, i64> {
        let mut m = BTreeMap::new();
        *m.entry(0).or_insert(0) += 1;
        *m.entry(e).or_insert(0) -= 1;
        m.retain(|_, v| *v != 0);
        m
    };
    let mut num: BTreeMap<i64, i64> = [((a - b).abs(), 1)].into_iter().collect();
    num = laurent_mul(&num, &binom(2 * lo), i64::MAX);
    num = laurent_mul(&num, &binom(2 * (nn - hi)), i64::MAX);
    // every coefficient below the maximal exponent is exact after truncation
    let lowest = num.keys().next().copied().unwrap_or(0);
    let reach = max - lowest.min(0);
    let geo = |step: i64| -> BTreeMap<i64, i64> { (0..=reach / step + 1).map(|k| (k * step, 1)).collect() };
    let phi = laurent_mul(&laurent_mul(&num, &geo(2), max), &geo(2 * nn), max);
    let coef = |e: i64| phi.get(&e).copied().unwrap_or(0);
    // (1 - s^E x) vanishes at x = s^c for E = -c, (1 - p s^E x) for E = -c - 2
    coef(-c) + coef(-c - 2)
}

fn series_eq<S: Scalar>(ck: &mut Checker, what: &str, a: &PowerSeries<S>, b: &PowerSeries<S>) {
    for l in 0..=a.order().min(b.order()) {
        if !ck.eq(|| format!("{what}: coefficient x^{l}"), a.coeff(l), b.coeff(l)) {
            return;
        }
    }
}

fn f_shift<S: Scalar>(ctx: &ScalarCtx<S>, i: i64, j: i64, e: i64, order: usize) -> Result<PowerSeries<S>> {
    Ok(f_series(ctx, i, j, order)?.rescale_var(&ctx.s_pow(e)))
}

fn point_case(ck: Checker, ctx: &ScalarCtx<Quad>) -> Checker {
    let ck = ck.case("N", ctx.n);
    match &ctx.regime {
        crate::algebra::Regime::Generic { q, t } => ck.case("q", q).case("t", t),
        _ => ck,
    }
}

/// Product identities among the `f` functions and regularity of the scalars
/// `f^{i-k,j+k}(p^(-+(j-i)/2))` on the right of the general relation.
pub fn check_f_identities(ctx: &ScalarCtx<Quad>, order: usize) -> Vec<CheckRecord> {
    let nn = ctx.n as i64;
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let tag = if sign > 0 { "+" } else { "-" };

        let mut ck = point_case(Checker::new(SUITE, "raise-first-index"), ctx).case("sign", tag);
        ck.truncation("order_x", order as i64);
        for j in 1..nn {
            for i in 1..nn {
                let run = || -> Result<(PowerSeries<Quad>, PowerSeries<Quad>)> {
                    let lhs = f_shift(ctx, 1, j, sign * (i + 1), order)?.mul(&f_series(ctx, i, j, order)?);
                    let mut rhs = f_shift(ctx, i + 1, j, sign, order)?;
                    if i >= j {
                        rhs = rhs.mul(&gamma_series(ctx, sign * (i - j + 1), order)?);
                    }
                    Ok((lhs, rhs))
                };
                match run() {
                    Ok((l, r)) => series_eq(&mut ck, &format!("i={i} j={j}"), &r, &l),
                    Err(e) => ck.error(format!("i={i} j={j}"), &e),
                }
            }
        }
        out.push(ck.finish());

        let mut ck = point_case(Checker::new(SUITE, "shift-exchange"), ctx).case("sign", tag);
        ck.truncation("order_x", order as i64);
        for i in 1..nn {
            for j in 1..nn {
                for k in 1..i {
                    if j + k > nn {
                        continue;
                    }
                    let run = || -> Result<(PowerSeries<Quad>, PowerSeries<Quad>)> {
                        let lhs = f_shift(ctx, 1, i, sign * (j - i + 2 * k), order)?
                            .mul(&f_series(ctx, 1, j, order)?);
                        let rhs = f_shift(ctx, 1, i - k, sign * (j - i + k), order)?
                            .mul(&f_shift(ctx, 1, j + k, sign * k, order)?);
                        Ok((lhs, rhs))
                    };
                    match run() {
                        Ok((l, r)) => series_eq(&mut ck, &format!("i={i} j={j} k={k}"), &r, &l),
                        Err(e) => ck.error(format!("i={i} j={j} k={k}"), &e),
                    }
                }
            }
        }
        out.push(ck.finish());

        let mut ck = point_case(Checker::new(SUITE, "merge-with-gamma"), ctx).case("sign", tag);
        ck.truncation("order_x", order as i64);
        for i in 1..nn {
            for j in 1..nn {
                if i + j > nn {
                    continue;
                }
                let run = || -> Result<(PowerSeries<Quad>, PowerSeries<Quad>)> {
                    let lhs = f_shift(ctx, 1, i, sign * (j + i), order)?.mul(&f_series(ctx, 1, j, order)?);
                    let rhs = f_shift(ctx, 1, j + i, sign * i, order)?
                        .mul(&gamma_series(ctx, sign * j, order)?);
                    Ok((lhs, rhs))
                };
                match run() {
                    Ok((l, r)) => series_eq(&mut ck, &format!("i={i} j={j}"), &r, &l),
                    Err(e) => ck.error(format!("i={i} j={j}"), &e),
                }
            }
        }
        out.push(ck.finish());
    }

    let mut ck = Checker::new(SUITE, "rhs-regularity").case("N", nn);
    for i in 0..=nn {
        for j in i..=nn {
            for k in 1..=i.min(nn - j) {
                for c in [-(j - i), j - i] {
                    let order = f_pole_order(ctx.n, i - k, j + k, c);
                    ck.holds(
                        || format!("f^({},{}) at s^{c} has a pole of order {order}", i - k, j + k),
                        order <= 0,
                    );
                }
            }
        }
    }
    out.push(ck.finish());
    out
}

/// `f^{i,j}_l = f^{N-j,N-i}_l` for `1 <= i <= j <= N-1`.
pub fn check_f_reflection(ctx: &ScalarCtx<Quad>, order: usize) -> CheckRecord {
    let nn = ctx.n as i64;
    let mut ck = point_case(Checker::new(SUITE, "reflection"), ctx);
    ck.truncation("order_x", order as i64);
    for i in 1..nn {
        for j in i..nn {
            match (f_series(ctx, i, j, order), f_series(ctx, nn - j, nn - i, order)) {
                (Ok(a), Ok(b)) => series_eq(&mut ck, &format!("i={i} j={j}"), &a, &b),
                (Err(e), _) | (_, Err(e)) => ck.error(format!("i={i} j={j}"), &e),
            }
        }
    }
    ck.finish()
}

/// `f^{i,j}` coefficients as JSON values.
pub fn describe_f(ctx: &ScalarCtx<Quad>, i: i64, j: i64, order: usize) -> Result<Vec<serde_json::Value>> {
    Ok(f_series(ctx, i, j, order)?.coeffs().iter().map(Scalar::to_json).collect())
}

/// `-(1-q)(1-t^-1)/(1-p)`, the prefactor shared by all relations.
pub fn relation_prefactor<S: Scalar>(ctx: &ScalarCtx<S>) -> Result<S> {
    let one = ctx.one();
    let num = (one.clone() - ctx.q.clone()) * (one.clone() - ctx.t_inv.clone());
    Ok(-num.try_div(&(one - ctx.p.clone()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn ctx(n: usize) -> ScalarCtx<Quad> {
        ScalarCtx::generic(n, rat(3, 2), rat(5, 3)).unwrap()
    }

    #[test]
    fn first_coefficients() {
        let c = ctx(2);
        let f = f_series(&c, 1, 1, 3).unwrap();
        assert!(f.coeff(0).is_one());
        let one = c.one();
        let expect = ((one.clone() - c.q.clone()) * (one.clone() - c.t_inv.clone()))
            .try_div(&(one.clone() + c.p.clone()))
            .unwrap();
        assert_eq!(f.coeff(1), &expect);

        let c = ctx(3);
        let f = f_series(&c, 1, 2, 2).unwrap();
        let expect = ((one.clone() - c.q.clone()) * (one.clone() - c.t_inv.clone()) * c.s.clone()
            * (one.clone() - c.p.clone()))
        .try_div(&(one.clone() - c.p_pow(3)))
        .unwrap();
        assert_eq!(f.coeff(1), &expect);
        // boundary indices give f = 1
        let f = f_series(&c, 0, 2, 4).unwrap();
        assert!(f.coeffs()[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn gamma_closed_form() {
        let c = ctx(3);
        let one = c.one();
        let expect = ((one.clone() - c.q.clone() * c.p.clone()) * (one.clone() - c.t_inv.clone() * c.p.clone()))
            .try_div(&((one.clone() - c.p.clone()) * (one - c.p_pow(2))))
            .unwrap();
        assert_eq!(gamma_at(&c, 3).unwrap(), expect);
        assert!(matches!(gamma_at(&c, 1), Err(Error::Pole(_))));
        assert!(matches!(gamma_at(&c, -1), Err(Error::Pole(_))));
        // literal rational check at a random point
        let w = c.lift(&rat(7, 11));
        let g = gamma_fn(&c, &w).unwrap();
        let lhs = g * (c.one() - w.clone()) * (c.one() - c.p.clone() * w.clone());
        let rhs = (c.one() - c.q.clone() * w.clone()) * (c.one() - c.t_inv.clone() * w);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn g_for_n2_k2() {
        let g = g_series(2, &int(2), 1, 1, 6).unwrap();
        let got: Vec<Rat> = g.coeffs().iter().map(|c| c.as_rat().unwrap()).collect();
        assert_eq!(got, [1, -2, 2, -2, 2, -2, 2].map(int).to_vec());
    }

    #[test]
    fn identities_hold() {
        for n in [2, 3] {
            for r in check_f_identities(&ctx(n), 6) {
                assert!(r.passed(), "{r:?}");
            }
            assert!(check_f_reflection(&ctx(n), 6).passed());
        }
    }

    #[test]
    fn pole_orders() {
        // f^{1,1} for N=2 has c_E = 1 for E = 0 only up to sign pattern; pole at x = 1
        assert_eq!(f_pole_order(2, 1, 1, 0), 1);
        assert_eq!(f_pole_order(3, 0, 2, 0), 0);
    }
}
