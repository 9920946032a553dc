//! Quadratic relations between currents, checked as mode matrix elements.
//!
//! A relation `F(z1,z2) = sum delta(u z2/z1) K(z2)` becomes, for the
//! coefficient of `z1^-n z2^-m`, the identity
//! `sum_l f_l (W^i_{n-l} W^j_{m+l} - W^j_{m-l} W^i_{n+l}) = sum u^n K_{n+m}`.

pub mod fusion;
pub mod poles;

use std::collections::BTreeMap;

use crate::algebra::{fmt_rat, Quad, Rat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::fock::{FockVec, HighestWeight};
use crate::report::{CheckRecord, Checker};
use crate::structfn::{f_series, gamma_at, gamma_product, relation_prefactor};
use crate::wcurrents::{fmt_state, regular_product, state_level, w1_states, w_ops, Composite, Factor, ModeEngine, WState};

pub const SUITE: &str = "relations";

/// One generic evaluation point with its highest weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub q: Rat,
    pub t: Rat,
    /// `a_1..a_{N-1}`; `a_N` follows from the product constraint.
    pub weights: Vec<Rat>,
}

impl Point {
    pub fn ctx(&self, n: usize) -> Result<ScalarCtx<Quad>> {
        ScalarCtx::generic(n, self.q.clone(), self.t.clone())
    }

    pub fn highest_weight(&self, ctx: &ScalarCtx<Quad>) -> Result<HighestWeight<Quad>> {
        let free: Vec<Quad> = (0..ctx.n - 1)
            .map(|k| ctx.lift(self.weights.get(k).unwrap_or(&Rat::from_integer(1.into()))))
            .collect();
        HighestWeight::from_free(ctx, free)
    }

    pub fn label(&self) -> String {
        format!("q={},t={}", fmt_rat(&self.q), fmt_rat(&self.t))
    }
}

/// Mode window, level bound, and point of one relation check.
#[derive(Clone, Debug)]
pub struct RelationCase {
    pub n: usize,
    pub point: Point,
    pub window: i64,
    pub level: i64,
}

impl RelationCase {
    pub fn engine(&self) -> Result<ModeEngine<Quad>> {
        let ctx = self.point.ctx(self.n)?;
        let hw = self.point.highest_weight(&ctx)?;
        ModeEngine::new(&ctx, &hw, (self.level + 2 * self.window + 2) as usize)
    }

    fn checker(&self, suite: &str, check: &str) -> Checker {
        Checker::new(suite, check)
            .case("N", self.n)
            .case("point", self.point.label())
            .case("window", self.window)
            .case("level", self.level)
    }
}

/// What sits behind a delta function, as a current of `z2`.
#[derive(Clone, Debug)]
pub enum Content<S> {
    /// A finite operator in `z2`.
    Op(Composite<S>),
    /// `∘∘W^i(s^r w) W^j(w)∘∘` with `w = s^w_shift z2`.
    Ordered { i: i64, j: i64, r: i64, w_shift: i64 },
}

/// `coeff * delta(s^u z2/z1) * content(z2)`
#[derive(Clone, Debug)]
pub struct DeltaTerm<S> {
    pub u: i64,
    pub coeff: S,
    pub content: Content<S>,
    pub label: String,
}

/// The right-hand side of the `i = 1` relation.
pub fn rhs_w1wj(ctx: &ScalarCtx<Quad>, j: i64) -> Result<Vec<DeltaTerm<Quad>>> {
    if j < 1 {
        return Err(Error::InvalidArgument(format!("W1Wj needs j >= 1, got {j}")));
    }
    let c = relation_prefactor(ctx)?;
    Ok(vec![
        DeltaTerm {
            u: j + 1,
            coeff: c.clone(),
            content: Content::Op(Composite::from_ops(w_ops(ctx, j + 1, 1))),
            label: format!("W{}(s z2) at s^{}", j + 1, j + 1),
        },
        DeltaTerm {
            u: -(j + 1),
            coeff: -c,
            content: Content::Op(Composite::from_ops(w_ops(ctx, j + 1, -1))),
            label: format!("W{}(s^-1 z2) at s^-{}", j + 1, j + 1),
        },
    ])
}

/// The right-hand side of the `i = 2` relation with current normal ordering.
pub fn rhs_w2wj(ctx: &ScalarCtx<Quad>, j: i64) -> Result<Vec<DeltaTerm<Quad>>> {
    if j < 2 {
        return Err(Error::InvalidArgument(format!("W2Wj needs j >= 2, got {j}")));
    }
    let c = relation_prefactor(ctx)?;
    let c2 = c.clone() * gamma_at(ctx, 3)?;
    let one = ctx.one();
    let p2 = ctx.p_pow(2);
    let pj = ctx.p_pow(j);
    let op = |rank: i64, shift: i64| Content::Op(Composite::from_ops(w_ops(ctx, rank, shift)));
    let cc = c.clone() * c.clone();
    Ok(vec![
        DeltaTerm {
            u: j + 2,
            coeff: c2.clone(),
            content: op(j + 2, 2),
            label: "W(j+2)(p z2)".into(),
        },
        DeltaTerm {
            u: -(j + 2),
            coeff: -c2,
            content: op(j + 2, -2),
            label: "W(j+2)(p^-1 z2)".into(),
        },
        DeltaTerm {
            u: j,
            coeff: c.clone(),
            content: Content::Ordered { i: 1, j: j + 1, r: j - 2, w_shift: 1 },
            label: "oo W1 W(j+1) oo at s^j".into(),
        },
        DeltaTerm {
            u: -j,
            coeff: -c,
            content: Content::Ordered { i: 1, j: j + 1, r: 2 - j, w_shift: -1 },
            label: "oo W1 W(j+1) oo at s^-j".into(),
        },
        DeltaTerm {
            u: j,
            coeff: cc.clone() * p2.clone().try_div(&(one.clone() - p2.clone()))?,
            content: op(j + 2, 2),
            label: "p^2/(1-p^2) W(j+2)(p z2)".into(),
        },
        DeltaTerm {
            u: j,
            coeff: cc.clone() * (one.clone() - pj.clone()).try_inv()?,
            content: op(j + 2, 0),
            label: "1/(1-p^j) W(j+2)(z2)".into(),
        },
        DeltaTerm {
            u: -j,
            coeff: -(cc.clone() * pj.clone().try_div(&(one.clone() - pj))?),
            content: op(j + 2, 0),
            label: "p^j/(1-p^j) W(j+2)(z2)".into(),
        },
        DeltaTerm {
            u: -j,
            coeff: -(cc * (one - p2).try_inv()?),
            content: op(j + 2, -2),
            label: "1/(1-p^2) W(j+2)(p^-1 z2)".into(),
        },
    ])
}

/// The right-hand side of the general relation, `0 <= i <= j <= N`.
pub fn rhs_wiwj(ctx: &ScalarCtx<Quad>, i: i64, j: i64) -> Result<Vec<DeltaTerm<Quad>>> {
    let c = relation_prefactor(ctx)?;
    let mut out = Vec::new();
    for k in 1..=i {
        let coef = c.clone() * gamma_product(ctx, k)?;
        let d = j - i;
        let plus = regular_product(
            ctx,
            Factor { rank: i - k, shift: d + k },
            Factor { rank: j + k, shift: k },
            &[],
            &ctx.one(),
        )?;
        let minus = regular_product(
            ctx,
            Factor { rank: i - k, shift: -(d + k) },
            Factor { rank: j + k, shift: -k },
            &[],
            &ctx.one(),
        )?;
        out.push(DeltaTerm {
            u: d + 2 * k,
            coeff: coef.clone(),
            content: Content::Op(plus),
            label: format!("k={k}, +"),
        });
        out.push(DeltaTerm {
            u: -(d + 2 * k),
            coeff: -coef,
            content: Content::Op(minus),
            label: format!("k={k}, -"),
        });
    }
    Ok(out)
}

/// Matrix elements `<bra| K_M |ket>` of one delta term's content.
fn content_element(
    eng: &ModeEngine<Quad>,
    content: &Content<Quad>,
    bra: &WState,
    ket: &FockVec<Quad>,
    mode: i64,
) -> Result<Quad> {
    match content {
        Content::Op(op) => {
            let v = op.apply_modes(&eng.fock, ket, &[mode])?.remove(0);
            eng.pair(bra, &v)
        }
        Content::Ordered { i, j, r, w_shift } => {
            let val = eng.composite_no_mode(*i, *j, *r, mode, bra, ket)?;
            Ok(val * eng.ctx().s_pow(-w_shift * mode))
        }
    }
}

/// Evaluates both sides on the whole grid and returns `(n, m, bra, ket) -> (lhs, rhs)`.
pub type Grid = BTreeMap<(i64, i64, String, String), (Quad, Quad)>;

struct Sides<'a> {
    eng: &'a ModeEngine<Quad>,
    window: i64,
    level: i64,
}

impl Sides<'_> {
    fn kets(&self) -> Result<Vec<(WState, FockVec<Quad>)>> {
        w1_states(self.level)
            .into_iter()
            .map(|s| {
                let v = self.eng.ket(&s)?;
                Ok((s, v))
            })
            .collect()
    }

    /// `<bra| W^a_{M-b} W^c_b |ket>` for `b` in `lo..=hi`.
    fn products(&self, a: i64, c: i64, bra: &WState, ket: &FockVec<Quad>, lo: i64, hi: i64) -> Result<BTreeMap<i64, Quad>> {
        let big_m = ket.level() - state_level(bra);
        let modes: Vec<i64> = (lo..=hi).collect();
        let first = self.eng.w_modes(c, 0, ket, &modes)?;
        let mut out = BTreeMap::new();
        for (b, y) in modes.iter().zip(first) {
            let val = if y.is_zero() {
                self.eng.ctx().zero()
            } else {
                let z = self.eng.w_mode(a, &y, big_m - b)?;
                self.eng.pair(bra, &z)?
            };
            out.insert(*b, val);
        }
        Ok(out)
    }

    /// LHS of the mode relation with the `+5` tail check folded into `ck`.
    fn grid(&self, ck: &mut Checker, i: i64, j: i64, rhs: &[DeltaTerm<Quad>]) -> Result<Grid> {
        let ctx = self.eng.ctx();
        let w = self.window;
        let kets = self.kets()?;
        let bras = w1_states(self.level);
        let tail = 5;
        let f = f_series(ctx, i, j, (self.level + 2 * w + tail + 2) as usize)?;
        let mut out = Grid::new();
        for (kst, kv) in &kets {
            let lk = kv.level();
            for bra in &bras {
                let big_m = lk - state_level(bra);
                let pairs: Vec<(i64, i64)> = (-w..=w)
                    .filter_map(|n| {
                        let m = big_m - n;
                        (m.abs() <= w).then_some((n, m))
                    })
                    .collect();
                if pairs.is_empty() {
                    continue;
                }
                let hi = lk + tail + 1;
                let p1 = self.products(i, j, bra, kv, -w, hi)?;
                let p2 = self.products(j, i, bra, kv, -w, hi)?;
                let mut rhs_vals = Vec::new();
                for t in rhs {
                    rhs_vals.push(content_element(self.eng, &t.content, bra, kv, big_m)?);
                }
                for &(n, m) in &pairs {
                    let bound = lk - n.min(m);
                    let term = |l: i64| -> Quad {
                        let a = p1.get(&(m + l)).cloned().unwrap_or_else(|| ctx.zero());
                        let b = p2.get(&(n + l)).cloned().unwrap_or_else(|| ctx.zero());
                        f.coeff(l as usize).clone() * (a - b)
                    };
                    let mut lhs = ctx.zero();
                    for l in 0..=bound.max(-1) {
                        lhs = lhs + term(l);
                    }
                    for l in bound.max(-1) + 1..=bound.max(-1) + tail {
                        let t = term(l);
                        ck.holds(|| format!("tail term l={l} at n={n}, m={m}"), t.is_zero());
                    }
                    let mut rhs_total = ctx.zero();
                    for (t, v) in rhs.iter().zip(&rhs_vals) {
                        rhs_total = rhs_total + t.coeff.clone() * ctx.s_pow(t.u * n) * v.clone();
                    }
                    out.insert((n, m, fmt_state(bra), fmt_state(kst)), (lhs, rhs_total));
                }
            }
        }
        Ok(out)
    }
}

fn compare(ck: &mut Checker, grid: &Grid) {
    for ((n, m, bra, ket), (l, r)) in grid {
        ck.eq(|| format!("n={n}, m={m}, <{bra}| .. |{ket}>"), r, l);
    }
}

fn run_relation(
    case: &RelationCase,
    check: &str,
    i: i64,
    j: i64,
    rhs: impl FnOnce(&ScalarCtx<Quad>) -> Result<Vec<DeltaTerm<Quad>>>,
) -> (CheckRecord, Option<Grid>) {
    let mut ck = case.checker(SUITE, check).case("i", i).case("j", j);
    ck.assume("zero modes central");
    ck.truncation("tail_extension", 5);
    let res = (|| -> Result<Grid> {
        let eng = case.engine()?;
        let terms = rhs(eng.ctx())?;
        let sides = Sides {
            eng: &eng,
            window: case.window,
            level: case.level,
        };
        sides.grid(&mut ck, i, j, &terms)
    })();
    match res {
        Ok(g) => {
            compare(&mut ck, &g);
            (ck.finish(), Some(g))
        }
        Err(e) => {
            ck.error("evaluation", &e);
            (ck.finish(), None)
        }
    }
}

pub fn verify_w1wj(case: &RelationCase, j: i64) -> CheckRecord {
    run_relation(case, "w1wj", 1, j, |ctx| rhs_w1wj(ctx, j)).0
}

pub fn verify_w2wj(case: &RelationCase, j: i64) -> CheckRecord {
    run_relation(case, "w2wj", 2, j, |ctx| rhs_w2wj(ctx, j)).0
}

pub fn verify_wiwj(case: &RelationCase, i: i64, j: i64) -> CheckRecord {
    run_relation(case, "wiwj", i, j, |ctx| rhs_wiwj(ctx, i, j)).0
}

/// The `i = 2` right-hand side written with current normal ordering agrees,
/// element by element, with the general right-hand side at `i = 2`.
pub fn verify_cross_engine(case: &RelationCase, j: i64) -> CheckRecord {
    let (a, ga) = run_relation(case, "w2wj", 2, j, |ctx| rhs_w2wj(ctx, j));
    let (b, gb) = run_relation(case, "wiwj", 2, j, |ctx| rhs_wiwj(ctx, 2, j));
    let mut ck = case.checker(SUITE, "cross-engine").case("i", 2).case("j", j);
    match (ga, gb) {
        (Some(ga), Some(gb)) => {
            ck.holds(|| "same grid".into(), ga.len() == gb.len());
            for (k, (_, ra)) in &ga {
                match gb.get(k) {
                    Some((_, rb)) => {
                        ck.eq(|| format!("n={}, m={}, <{}| .. |{}>", k.0, k.1, k.2, k.3), rb, ra);
                    }
                    None => {
                        ck.holds(|| format!("missing grid point {k:?}"), false);
                    }
                }
            }
        }
        _ => {
            let why = a.witness.clone().or(b.witness.clone()).map(|w| w.actual.to_string());
            ck.error("evaluation", &Error::Mismatch(why.unwrap_or_default()));
        }
    }
    ck.finish()
}

/// Pole set of `f^{i,j}(x) W^i W^j`: `x = s^{±(j-i+2k)}`, `1 <= k <= min(i, N-j)`.
pub fn pole_shifts(n: usize, i: i64, j: i64) -> Vec<i64> {
    let kmax = i.min(n as i64 - j);
    let mut v: Vec<i64> = (1..=kmax).flat_map(|k| [j - i + 2 * k, -(j - i + 2 * k)]).collect();
    v.sort();
    v
}

/// `f^{i,j}(r^-1) W^i(rz) W^j(z)` against current normal ordering plus corrections, `r = s^r_shift`.
pub fn verify_nowwj(case: &RelationCase, i: i64, j: i64, r_shift: i64) -> CheckRecord {
    let mut ck = case.checker(SUITE, "noww").case("i", i).case("j", j).case("r", format!("s^{r_shift}"));
    ck.assume("zero modes central");
    if pole_shifts(case.n, i, j).contains(&r_shift) || pole_shifts(case.n, i, j).contains(&-r_shift) {
        ck.error("r", &Error::InvalidArgument(format!("s^{r_shift} is not a good point")));
        return ck.finish();
    }
    let res = (|| -> Result<()> {
        let eng = case.engine()?;
        let ctx = eng.ctx().clone();
        let lhs = regular_product(&ctx, Factor { rank: i, shift: r_shift }, Factor { rank: j, shift: 0 }, &[], &ctx.one())?;
        let cprime = -relation_prefactor(&ctx)?;
        let mut corr = Composite::zero();
        let d = j - i;
        let one = ctx.one();
        for k in 1..=i {
            let g = cprime.clone() * gamma_product(&ctx, k)?;
            let a = (one.clone() - ctx.s_pow(r_shift - (d + 2 * k))).try_inv()?;
            let b = (one.clone() - ctx.s_pow(r_shift + d + 2 * k)).try_inv()?;
            corr.extend(
                regular_product(&ctx, Factor { rank: i - k, shift: d + k }, Factor { rank: j + k, shift: k }, &[], &one)?
                    .scale(&(g.clone() * a)),
            );
            corr.extend(
                regular_product(&ctx, Factor { rank: i - k, shift: -(d + k) }, Factor { rank: j + k, shift: -k }, &[], &one)?
                    .scale(&(-(g * b))),
            );
        }
        let states = w1_states(case.level);
        for kst in &states {
            let kv = eng.ket(kst)?;
            for bra in &states {
                let n = kv.level() - state_level(bra);
                if n.abs() > case.window {
                    continue;
                }
                let l = eng.pair(bra, &lhs.apply_modes(&eng.fock, &kv, &[n])?.remove(0))?;
                let mut r = eng.composite_no_mode(i, j, r_shift, n, bra, &kv)?;
                r = r + eng.pair(bra, &corr.apply_modes(&eng.fock, &kv, &[n])?.remove(0))?;
                ck.eq(|| format!("n={n}, <{}| .. |{}>", fmt_state(bra), fmt_state(kst)), &r, &l);
            }
        }
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// Reversal of the regular products on the right of the general relation:
/// `f^{a,b}(x0) W^a W^b = f^{b,a}(1/x0) W^b W^a` at the delta-term points.
pub fn verify_reversal(case: &RelationCase, i: i64, j: i64) -> CheckRecord {
    let mut ck = case.checker(SUITE, "reversal").case("i", i).case("j", j);
    let res = (|| -> Result<()> {
        let eng = case.engine()?;
        let ctx = eng.ctx().clone();
        let one = ctx.one();
        let d = j - i;
        let states = w1_states(case.level);
        for k in 1..=i.min(case.n as i64 - j) {
            for sign in [1i64, -1] {
                let (e1, e2) = (sign * (d + k), sign * k);
                let ab = regular_product(&ctx, Factor { rank: i - k, shift: e1 }, Factor { rank: j + k, shift: e2 }, &[], &one)?;
                let ba = regular_product(&ctx, Factor { rank: j + k, shift: e2 }, Factor { rank: i - k, shift: e1 }, &[], &one)?;
                for kst in &states {
                    let kv = eng.ket(kst)?;
                    for bra in &states {
                        let n = kv.level() - state_level(bra);
                        let x = eng.pair(bra, &ab.apply_modes(&eng.fock, &kv, &[n])?.remove(0))?;
                        let y = eng.pair(bra, &ba.apply_modes(&eng.fock, &kv, &[n])?.remove(0))?;
                        ck.eq(|| format!("k={k}, sign={sign}, n={n}, <{}| .. |{}>", fmt_state(bra), fmt_state(kst)), &x, &y);
                    }
                }
            }
        }
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    pub(crate) fn case(n: usize, window: i64, level: i64) -> RelationCase {
        RelationCase {
            n,
            point: Point {
                q: rat(3, 2),
                t: rat(5, 3),
                weights: vec![rat(2, 3), rat(5, 7), rat(3, 4)],
            },
            window,
            level,
        }
    }

    #[test]
    fn delta_translation_against_direct_sum() {
        // expand delta(u z2/z1) K(z2) = sum_k u^k z2^k z1^-k sum_M K_M z2^-M and
        // read the coefficient of z1^-n z2^-m
        let u = rat(3, 2);
        let k_modes: BTreeMap<i64, Rat> = [(-1, rat(5, 1)), (0, rat(7, 2)), (2, rat(-11, 3))].into_iter().collect();
        let mut expanded: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for k in -10..=10i64 {
            for (big_m, c) in &k_modes {
                let e = expanded.entry((-k, k - big_m)).or_insert_with(|| rat(0, 1));
                *e += crate::algebra::rat::rat_pow(&u, k).unwrap() * c;
            }
        }
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                let direct = expanded.get(&(-n, -m)).cloned().unwrap_or_else(|| rat(0, 1));
                let via = k_modes
                    .get(&(n + m))
                    .map(|c| crate::algebra::rat::rat_pow(&u, n).unwrap() * c)
                    .unwrap_or_else(|| rat(0, 1));
                assert_eq!(via, direct, "n={n}, m={m}");
            }
        }
    }

    #[test]
    fn w1w1_for_n2() {
        let rec = verify_w1wj(&case(2, 2, 2), 1);
        assert!(rec.passed(), "{rec:?}");
        assert!(rec.comparisons > 20);
    }

    #[test]
    fn top_rank_relation_has_no_delta_terms() {
        let rec = verify_w1wj(&case(3, 1, 1), 3);
        assert!(rec.passed(), "{rec:?}");
    }
}

