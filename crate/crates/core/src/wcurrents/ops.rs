//! `W^i(z)` as sums of vertex operators, and regular products `f^{a,b} W^a W^b`
//! at coincident points.

use std::collections::BTreeMap;

use crate::algebra::{Hbar, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::fock::{Fock, FockVec, Point, VertexOp};

/// Increasing index subsets of `1..=n` of size `k`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            if n - j + 1 < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Internal s-shifts `i-1, i-3, .., 1-i` of the factors of `W^i`.
pub fn internal_shifts(i: usize) -> Vec<i64> {
    (1..=i as i64).map(|k| i as i64 + 1 - 2 * k).collect()
}

/// `W^i(s^shift z)` as a sum of vertex operators, with `W^0 = W^N = 1` and
/// `W^i = 0` outside `0..=N`.
pub fn w_ops<S: Scalar>(ctx: &ScalarCtx<S>, i: i64, shift: i64) -> Vec<VertexOp<S>> {
    let n = ctx.n as i64;
    if i < 0 || i > n {
        return Vec::new();
    }
    if i == 0 || i == n {
        return vec![VertexOp::identity(ctx.one())];
    }
    w_ops_literal(ctx, i as usize, &ctx.s_pow(shift))
}

/// The defining subset sum for any `1 <= i <= N`, at the point `mu z`.
pub fn w_ops_literal<S: Scalar>(ctx: &ScalarCtx<S>, i: usize, mu: &S) -> Vec<VertexOp<S>> {
    let sh = internal_shifts(i);
    subsets(ctx.n, i)
        .into_iter()
        .map(|js| VertexOp {
            coeff: ctx.one(),
            points: js
                .iter()
                .zip(&sh)
                .map(|(&f, &e)| Point {
                    flavor: f,
                    mu: mu.clone() * ctx.s_pow(e),
                    mult: 1,
                })
                .collect(),
        })
        .collect()
}

/// Laurent polynomial in `sigma` with integer coefficients.
type Laurent = BTreeMap<i64, i64>;

fn lp_add(a: &mut Laurent, e: i64, c: i64) {
    let v = a.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        a.remove(&e);
    }
}

fn lp_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            lp_add(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

/// `Q(sigma)` with `Q (1 - sigma^(2N)) = b`, or `None` when the division is inexact.
fn lp_div_one_minus(b: &Laurent, two_n: i64) -> Option<Laurent> {
    let (Some(&lo), Some(&hi)) = (b.keys().next(), b.keys().next_back()) else {
        return Some(Laurent::new());
    };
    let mut q = Laurent::new();
    for e in lo..=hi - two_n {
        let c = b.get(&e).copied().unwrap_or(0) + q.get(&(e - two_n)).copied().unwrap_or(0);
        if c != 0 {
            q.insert(e, c);
        }
    }
    let mut back = q.clone();
    for (e, c) in &q {
        lp_add(&mut back, e + two_n, -c);
    }
    (back == *b).then_some(q)
}

/// Exponents `Q_E` with `f^{a,b}(x) prod C(..) = prod_E rho(s^E x)^{Q_E}`, where
/// `rho(y) = (1-qy)(1-t^-1 y)/((1-y)(1-py))`.
///
/// `s_term` and `t_term` are the flavors of the two factors; `a`, `b` are their ranks.
pub fn pair_exponents(n: usize, a: i64, b: i64, s_term: &[usize], t_term: &[usize]) -> Result<Laurent> {
    let nn = n as i64;
    let mut bracket = Laurent::new();
    if s_term.is_empty() || t_term.is_empty() {
        return Ok(bracket);
    }
    let (lo, hi) = (a.min(b), a.max(b));
    // sigma^|a-b| (1 + sigma^2 + .. + sigma^(2(lo-1))) (1 - sigma^(2(N-hi)))
    let mut f_part: Laurent = [((a - b).abs(), 1)].into_iter().collect();
    let geo: Laurent = (0..lo).map(|k| (2 * k, 1)).collect();
    let mut tail = Laurent::new();
    lp_add(&mut tail, 0, 1);
    lp_add(&mut tail, 2 * (nn - hi), -1);
    f_part = lp_mul(&lp_mul(&f_part, &geo), &tail);
    for (e, c) in f_part {
        lp_add(&mut bracket, e, c);
    }
    let sh_s = internal_shifts(s_term.len());
    let sh_t = internal_shifts(t_term.len());
    for (&f, &es) in s_term.iter().zip(&sh_s) {
        for (&g, &et) in t_term.iter().zip(&sh_t) {
            let d = et - es;
            if f == g {
                lp_add(&mut bracket, d, -1);
                lp_add(&mut bracket, d + 2 * (nn - 1), 1);
            } else {
                let th = if f < g { 2 * nn } else { 0 };
                lp_add(&mut bracket, d + th, -1);
                lp_add(&mut bracket, d + th - 2, 1);
            }
        }
    }
    lp_div_one_minus(&bracket, 2 * nn).ok_or_else(|| {
        Error::Reconstruction(format!(
            "exponent bracket for f^{{{a},{b}}} W W is not divisible by 1 - sigma^{}",
            2 * nn
        ))
    })
}

/// A product of factors `(1 - c x)^e`.
#[derive(Clone, Debug)]
pub struct LinearFactors<S> {
    pub factors: Vec<(S, i64)>,
}

impl<S: Scalar> LinearFactors<S> {
    pub fn from_exponents(ctx: &ScalarCtx<S>, q: &Laurent) -> LinearFactors<S> {
        let mut factors = Vec::new();
        for (&e, &c) in q {
            let se = ctx.s_pow(e);
            factors.push((ctx.q.clone() * se.clone(), c));
            factors.push((ctx.t_inv.clone() * se.clone(), c));
            factors.push((se, -c));
            factors.push((ctx.s_pow(e + 2), -c));
        }
        LinearFactors { factors }
    }

    /// Signed count of factors vanishing at `x0`.
    pub fn valuation(&self, x0: &S) -> i64 {
        self.factors
            .iter()
            .filter(|(c, _)| (c.clone() * x0.clone()).is_one())
            .map(|(_, e)| *e)
            .sum()
    }

    /// Value at `x0` as a limit: vanishing factors `1 - c x` contribute `-c epsilon`.
    pub fn eval(&self, x0: &S) -> Result<S> {
        let val = self.valuation(x0);
        if val > 0 {
            return Ok(x0.zero_like());
        }
        if val < 0 {
            return Err(Error::Pole("factor vanishes at the evaluation point".into()));
        }
        let mut acc = x0.one_like();
        for (c, e) in &self.factors {
            let v = x0.one_like() - c.clone() * x0.clone();
            let v = if v.is_zero() { -c.clone() } else { v };
            acc = acc * v.pow_i(*e)?;
        }
        Ok(acc)
    }

    /// `epsilon^(P + v) * unit(epsilon)` at `x = x0 + epsilon`, truncated at `epsilon^(P+1)`.
    pub fn shifted_series(&self, x0: &S, p: usize) -> Result<Hbar<S>> {
        let trunc = p + 1;
        let one = x0.one_like();
        let mut unit = Hbar::constant(one.clone(), trunc);
        let mut val = 0i64;
        for (c, e) in &self.factors {
            let c0 = one.clone() - c.clone() * x0.clone();
            let f = if c0.is_zero() {
                val += e;
                Hbar::constant(-c.clone(), trunc)
            } else {
                Hbar::from_coeffs(
                    (0..trunc)
                        .map(|k| match k {
                            0 => c0.clone(),
                            1 => -c.clone(),
                            _ => one.zero_like(),
                        })
                        .collect(),
                )?
            };
            unit = unit * f.pow_i(*e)?;
        }
        let shift = p as i64 + val;
        if shift < 0 {
            return Err(Error::Pole(format!("pole of order {} exceeds {p}", -val)));
        }
        Ok(Hbar::monomial(one, shift as usize, trunc) * unit)
    }
}

/// Map `(flavor < N, s-shift) -> multiplicity` identifying `:prod Lambda:` at one point.
///
/// `Lambda_N(s^e z)` is traded for `prod_{i<N} Lambda_i(s^(e+2N-2i) z)^{-1}`, which is
/// the content of `W^N = 1`.
pub fn canonical_key(n: usize, pts: &[(usize, i64)]) -> Vec<(usize, i64, i64)> {
    let nn = n as i64;
    let mut m: BTreeMap<(usize, i64), i64> = BTreeMap::new();
    for &(f, e) in pts {
        if f == n {
            for i in 1..n {
                *m.entry((i, e + 2 * nn - 2 * i as i64)).or_insert(0) -= 1;
            }
        } else {
            *m.entry((f, e)).or_insert(0) += 1;
        }
    }
    m.into_iter().filter(|(_, c)| *c != 0).map(|((f, e), c)| (f, e, c)).collect()
}

/// Operators whose coefficients are `epsilon`-series; the value is the
/// coefficient of `epsilon^order`, all lower ones must cancel.
#[derive(Clone, Debug)]
pub struct EpsGroup<S> {
    pub order: usize,
    pub ops: Vec<VertexOp<Hbar<S>>>,
}

/// A finite operator built from vertex operators, possibly through the
/// `epsilon` expansion at cancelling poles.
#[derive(Clone, Debug)]
pub struct Composite<S> {
    pub direct: Vec<VertexOp<S>>,
    pub eps: Vec<EpsGroup<S>>,
}

impl<S: Scalar> Composite<S> {
    pub fn zero() -> Composite<S> {
        Composite {
            direct: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn from_ops(ops: Vec<VertexOp<S>>) -> Composite<S> {
        Composite {
            direct: ops,
            eps: Vec::new(),
        }
    }

    pub fn scale(mut self, c: &S) -> Composite<S> {
        for op in &mut self.direct {
            op.coeff = op.coeff.clone() * c.clone();
        }
        for g in &mut self.eps {
            for op in &mut g.ops {
                let t = op.coeff.trunc();
                op.coeff = op.coeff.clone() * Hbar::constant(c.clone(), t);
            }
        }
        self
    }

    pub fn extend(&mut self, o: Composite<S>) {
        self.direct.extend(o.direct);
        self.eps.extend(o.eps);
    }

    pub fn apply_modes(&self, fock: &Fock<S>, v: &FockVec<S>, modes: &[i64]) -> Result<Vec<FockVec<S>>> {
        let mut out = fock.apply_sum_modes(&self.direct, v, modes)?;
        for g in &self.eps {
            let trunc = g.order + 1;
            let lift = |x: &S| Hbar::constant(x.clone(), trunc);
            let lf = fock.map(lift);
            let lv = v.map(lift);
            let res = lf.apply_sum_modes(&g.ops, &lv, modes)?;
            for (o, r) in out.iter_mut().zip(res) {
                let mut take = FockVec::zero(r.level());
                for (mono, c) in r.terms() {
                    if let Some(k) = (0..g.order).find(|&k| !c.coeff(k).is_zero()) {
                        return Err(Error::Pole(format!(
                            "epsilon^{k} term survives in a regular product (expected order {})",
                            g.order
                        )));
                    }
                    take.add_term(mono.clone(), c.coeff(g.order));
                }
                o.add_assign(&take);
            }
        }
        Ok(out)
    }
}

/// Rank data of one side of a product: `W^rank(s^shift z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub rank: i64,
    pub shift: i64,
}

/// `coeff * f^{a,b}(x) * prod (1 - c x)^e * W^a(s^e1 z) W^b(s^e2 z)` at `x = s^(e2-e1)`,
/// continued analytically in `x` and expanded into normal-ordered operators.
pub fn regular_product<S: Scalar>(
    ctx: &ScalarCtx<S>,
    first: Factor,
    second: Factor,
    extra: &[(S, i64)],
    coeff: &S,
) -> Result<Composite<S>> {
    let n = ctx.n as i64;
    let in_range = |r: i64| (0..=n).contains(&r);
    if !in_range(first.rank) || !in_range(second.rank) {
        return Ok(Composite::zero());
    }
    let nontrivial = |r: i64| r > 0 && r < n;
    let s_sets = if nontrivial(first.rank) { subsets(ctx.n, first.rank as usize) } else { vec![vec![]] };
    let t_sets = if nontrivial(second.rank) { subsets(ctx.n, second.rank as usize) } else { vec![vec![]] };
    let x0 = ctx.s_pow(second.shift - first.shift);
    let mut groups: BTreeMap<Vec<(usize, i64, i64)>, Vec<(LinearFactors<S>, Vec<usize>, Vec<usize>)>> = BTreeMap::new();
    for sset in &s_sets {
        for tset in &t_sets {
            let q = pair_exponents(ctx.n, first.rank, second.rank, sset, tset)?;
            let mut lf = LinearFactors::from_exponents(ctx, &q);
            lf.factors.extend(extra.iter().cloned());
            let mut pts = Vec::new();
            for (&f, e) in sset.iter().zip(internal_shifts(sset.len())) {
                pts.push((f, first.shift + e));
            }
            for (&g, e) in tset.iter().zip(internal_shifts(tset.len())) {
                pts.push((g, second.shift + e));
            }
            groups
                .entry(canonical_key(ctx.n, &pts))
                .or_default()
                .push((lf, sset.clone(), tset.clone()));
        }
    }
    let mut out = Composite::zero();
    for (key, members) in groups {
        let order = members
            .iter()
            .map(|(lf, _, _)| -lf.valuation(&x0))
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        if order == 0 {
            let mut total = ctx.zero();
            for (lf, _, _) in &members {
                total = total + lf.eval(&x0)?;
            }
            total = total * coeff.clone();
            if total.is_zero() {
                continue;
            }
            out.direct.push(VertexOp {
                coeff: total,
                points: key
                    .iter()
                    .map(|&(f, e, m)| Point {
                        flavor: f,
                        mu: ctx.s_pow(e),
                        mult: m,
                    })
                    .collect(),
            });
            continue;
        }
        let trunc = order + 1;
        let lift = |x: S| Hbar::constant(x, trunc);
        let mut ops = Vec::new();
        for (lf, sset, tset) in &members {
            let r = lf.shifted_series(&x0, order)? * lift(coeff.clone());
            // the second factor sits at s^e1 (x0 + epsilon) z
            let base = ctx.s_pow(first.shift);
            let moving = Hbar::from_coeffs(
                (0..trunc)
                    .map(|k| match k {
                        0 => base.clone() * x0.clone(),
                        1 => base.clone(),
                        _ => ctx.zero(),
                    })
                    .collect(),
            )?;
            let mut points = Vec::new();
            for (&f, e) in sset.iter().zip(internal_shifts(sset.len())) {
                points.push(Point {
                    flavor: f,
                    mu: lift(ctx.s_pow(first.shift + e)),
                    mult: 1,
                });
            }
            for (&g, e) in tset.iter().zip(internal_shifts(tset.len())) {
                points.push(Point {
                    flavor: g,
                    mu: moving.clone() * lift(ctx.s_pow(e)),
                    mult: 1,
                });
            }
            ops.push(VertexOp { coeff: r, points });
        }
        out.eps.push(EpsGroup { order, ops });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Quad};
    use crate::fock::HighestWeight;
    use crate::structfn::f_series;

    fn ctx(n: usize) -> ScalarCtx<Quad> {
        ScalarCtx::generic(n, rat(3, 2), rat(5, 3)).unwrap()
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn literal_top_current_is_identity() {
        for n in 2..=4 {
            let c = ctx(n);
            let hw = HighestWeight::from_free(&c, (1..n).map(|k| c.int(k as i64 + 1)).collect()).unwrap();
            let fock = Fock::new(&c, &hw, 3).unwrap();
            let ops = w_ops_literal(&c, n, &c.one());
            let mut v = FockVec::vacuum(c.one());
            v = fock.apply_mode(&VertexOp {
                coeff: c.one(),
                points: vec![Point { flavor: 1, mu: c.one(), mult: 1 }],
            }, &v, -2).unwrap();
            let out = fock.apply_sum_modes(&ops, &v, &[-1, 0, 1, 2]).unwrap();
            assert!(out[0].is_zero());
            assert_eq!(out[1], v);
            assert!(out[2].is_zero());
            assert!(out[3].is_zero());
        }
    }

    #[test]
    fn exponents_reproduce_f_times_contractions() {
        // N=3, W^1 W^2: compare the series of prod rho(s^E x)^Q with f * C
        let c = ctx(3);
        let order = 6;
        let f = f_series(&c, 1, 2, order).unwrap();
        for s_set in subsets(3, 1) {
            for t_set in subsets(3, 2) {
                let q = pair_exponents(3, 1, 2, &s_set, &t_set).unwrap();
                let mut lhs = f.clone();
                for (&g, e) in t_set.iter().zip(internal_shifts(2)) {
                    let k = crate::fock::contraction_series(&c, s_set[0], g, e, order).unwrap();
                    lhs = lhs.mul(&k);
                }
                let mut rhs = crate::algebra::PowerSeries::constant(c.one(), order);
                for (e, m) in &q {
                    let g = crate::structfn::gamma_series(&c, e + 1, order).unwrap();
                    let g = if *m >= 0 { g } else { g.inv().unwrap() };
                    for _ in 0..m.abs() {
                        rhs = rhs.mul(&g);
                    }
                }
                for l in 0..=order {
                    assert_eq!(lhs.coeff(l), rhs.coeff(l), "{s_set:?} {t_set:?} x^{l}");
                }
            }
        }
    }
}
