//! Expansions around `hbar = 0`.
//!
//! Limit I (`q = e^hbar`, `t = q^beta`) is the conformal `W_N` point, Limit II
//! (`t = omega^-1 q^((k+N)/N)`) is the Z-algebra point. The relation check in
//! Limit II is symbolic: currents are replaced by formal symbols `z^mu` through
//!
//! `W^i(p^((1-i)/2) zeta) = hbar eta^i z^i(zeta) + O(hbar^2)`,  `eta^2 = omega`,
//!
//! and both sides are compared order by order in `hbar`.

use std::collections::BTreeMap;

use crate::algebra::{fmt_rat, int, Cyc, Hbar, PowerSeries, Rat, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::fock::{contraction_series, hw_eigenvalue_w, p_binomial, HighestWeight};
use crate::report::{CheckRecord, Checker};
use crate::structfn::{f_series, g_series, gamma_product, relation_prefactor};
use crate::wcurrents::{w_correlator_with, w_mode_matrix_element, WInsertion};

pub const SUITE_ONE: &str = "limit1";
pub const SUITE_TWO: &str = "limit2";

/// Extra `hbar` orders carried so that the `O(hbar)` denominators of the
/// exponent terms can be cancelled without running out of precision.
const GUARD: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum Variant {
    One { beta: Rat },
    Two { k: Rat },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitCtx {
    pub variant: Variant,
    pub n: usize,
    /// Highest `hbar` order that is checked.
    pub order_h: usize,
}

impl LimitCtx {
    pub fn one(n: usize, beta: Rat, order_h: usize) -> LimitCtx {
        LimitCtx {
            variant: Variant::One { beta },
            n,
            order_h,
        }
    }

    pub fn two(n: usize, k: Rat, order_h: usize) -> LimitCtx {
        LimitCtx {
            variant: Variant::Two { k },
            n,
            order_h,
        }
    }

    pub fn level(&self) -> Result<&Rat> {
        match &self.variant {
            Variant::Two { k } => Ok(k),
            Variant::One { .. } => Err(Error::InvalidArgument("Limit II context expected".into())),
        }
    }

    pub fn scalars_two(&self) -> Result<ScalarCtx<Hbar<Cyc>>> {
        ScalarCtx::limit_two(self.n, self.level()?.clone(), self.order_h + 1 + GUARD)
    }

    pub fn scalars_one(&self) -> Result<ScalarCtx<Hbar<Rat>>> {
        match &self.variant {
            Variant::One { beta } => ScalarCtx::limit_one(self.n, beta.clone(), self.order_h + 1 + GUARD),
            Variant::Two { .. } => Err(Error::InvalidArgument("Limit I context expected".into())),
        }
    }

    fn checker(&self, suite: &str, check: &str) -> Checker {
        let ck = Checker::new(suite, check).case("N", self.n);
        match &self.variant {
            Variant::One { beta } => ck.case("beta", fmt_rat(beta)),
            Variant::Two { k } => ck.case("k", fmt_rat(k)),
        }
    }
}

fn precision(h: &Hbar<Cyc>, need: usize) -> Result<()> {
    if h.trunc() < need {
        return Err(Error::PrecisionExhausted(format!(
            "hbar series known to order {} only, {} needed",
            h.trunc(),
            need
        )));
    }
    Ok(())
}

/// `f^{i,j}(x)` in Limit II with `hbar`-series coefficients through `hbar^order_h`.
pub fn hbar_expand_f(limit: &LimitCtx, i: i64, j: i64, order_x: usize) -> Result<PowerSeries<Hbar<Cyc>>> {
    let ctx = limit.scalars_two()?;
    let f = f_series(&ctx, i, j, order_x)?;
    for c in f.coeffs() {
        precision(c, limit.order_h + 1)?;
    }
    Ok(f.map(|c| c.truncate(limit.order_h + 1)))
}

/// A word in the formal Z-algebra currents together with the shape of its
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ZWord {
    /// `z^a(zeta_1) z^b(zeta_2) (zeta_2/zeta_1)^l`
    Ordered { a: i64, b: i64, l: usize },
    /// `z^a(zeta_2) z^b(zeta_1) (zeta_1/zeta_2)^l`
    Reversed { a: i64, b: i64, l: usize },
    /// `z^mu(eta^a zeta_2) D^r delta(eta^b zeta_2/zeta_1)`
    Local { mu: i64, a: i64, b: i64, r: u32 },
    /// `D^r delta(eta^b zeta_2/zeta_1)`
    Central { b: i64, r: u32 },
}

impl std::fmt::Display for ZWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZWord::Ordered { a, b, l } => write!(f, "z{a}(z1) z{b}(z2) x^{l}"),
            ZWord::Reversed { a, b, l } => write!(f, "z{a}(z2) z{b}(z1) x^-{l}"),
            ZWord::Local { mu, a, b, r } => write!(f, "z{mu}(eta^{a} z2) D^{r}delta(eta^{b} x)"),
            ZWord::Central { b, r } => write!(f, "D^{r}delta(eta^{b} x)"),
        }
    }
}

/// A linear combination of [`ZWord`]s over `Q(eta)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZExpr {
    pub terms: BTreeMap<ZWord, Cyc>,
}

impl ZExpr {
    fn normalize(n: usize, w: ZWord) -> ZWord {
        let two_n = 2 * n as i64;
        let nn = n as i64;
        match w {
            ZWord::Local { mu, a, b, r } => ZWord::Local {
                mu: mu.rem_euclid(nn),
                a: a.rem_euclid(two_n),
                b: b.rem_euclid(two_n),
                r,
            },
            ZWord::Central { b, r } => ZWord::Central {
                b: b.rem_euclid(two_n),
                r,
            },
            other => other,
        }
    }

    pub fn add(&mut self, n: usize, w: ZWord, c: Cyc) {
        if c.is_zero() {
            return;
        }
        let w = Self::normalize(n, w);
        let zero = c.zero_like();
        let e = self.terms.entry(w.clone()).or_insert(zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, n: usize, o: &ZExpr) -> ZExpr {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add(n, w.clone(), -c.clone());
        }
        out
    }

    /// Reads a relation written for `(zeta_1, zeta_2)` with the two points exchanged
    /// and multiplies by `-1`.
    fn swapped(&self, n: usize) -> Result<ZExpr> {
        let mut out = ZExpr::default();
        for (w, c) in &self.terms {
            let c = -c.clone();
            match *w {
                ZWord::Ordered { a, b, l } => out.add(n, ZWord::Reversed { a, b, l }, c),
                ZWord::Reversed { a, b, l } => out.add(n, ZWord::Ordered { a, b, l }, c),
                ZWord::Local { mu, a, b, r: 0 } => out.add(n, ZWord::Local { mu, a: a - b, b: -b, r: 0 }, c),
                ZWord::Local { .. } => {
                    return Err(Error::InvalidArgument(
                        "derivative of delta times a current cannot be exchanged".into(),
                    ))
                }
                ZWord::Central { b, r } => {
                    let c = if r % 2 == 1 { -c } else { c };
                    out.add(n, ZWord::Central { b: -b, r }, c)
                }
            }
        }
        Ok(out)
    }
}

/// Both sides of the Limit II relation order by order, `hbar^0..=hbar^2`.
#[derive(Clone, Debug)]
pub struct LimitSides {
    pub lhs: Vec<ZExpr>,
    pub rhs: Vec<ZExpr>,
    /// Right-hand side terms that start at `hbar^3` under the substitution.
    pub dropped: usize,
}

const ORDERS: usize = 3;

/// `delta(s^e x) = sum_r (b hbar)^r / r! D^r delta(eta^e x)` with `s = eta e^(-k hbar/(2N))`.
fn delta_expansion(n: usize, k: &Rat, e: i64) -> Vec<Rat> {
    let b = -(k * int(e)) / int(2 * n as i64);
    let mut out = Vec::with_capacity(ORDERS);
    let mut term = int(1);
    for r in 0..ORDERS {
        if r > 0 {
            term = term * &b / int(r as i64);
        }
        out.push(term.clone());
    }
    out
}

fn dwa_sides_ordered(limit: &LimitCtx, i: i64, j: i64, order_x: usize) -> Result<LimitSides> {
    let n = limit.n;
    let nn = n as i64;
    let k = limit.level()?.clone();
    let ctx = limit.scalars_two()?;
    let eta = Cyc::eta(2 * n as u32)?;
    let mut lhs = vec![ZExpr::default(); ORDERS];
    let mut rhs = vec![ZExpr::default(); ORDERS];

    // W^i(z1) W^j(z2) = hbar^2 eta^(i+j) z^i(zeta_1) z^j(zeta_2) + O(hbar^3),
    // z1 = s^(1-i) zeta_1 and z2 = s^(1-j) zeta_2, so z2/z1 = s^(i-j) zeta_2/zeta_1
    let pref = eta.eta_pow(i + j);
    let fij = f_series(&ctx, i, j, order_x)?;
    let fji = f_series(&ctx, j, i, order_x)?;
    for l in 0..=order_x {
        let a = fij.coeff(l).clone() * ctx.s_pow((i - j) * l as i64);
        let b = fji.coeff(l).clone() * ctx.s_pow((j - i) * l as i64);
        lhs[2].add(n, ZWord::Ordered { a: i, b: j, l }, pref.clone() * a.coeff(0));
        lhs[2].add(n, ZWord::Reversed { a: j, b: i, l }, -(pref.clone() * b.coeff(0)));
    }

    let c = relation_prefactor(&ctx)?;
    if !c.coeff(0).is_zero() {
        return Err(Error::InvalidArgument("relation prefactor does not vanish at hbar = 0".into()));
    }
    let d = j - i;
    let mut dropped = 0;
    for kk in 1..=i {
        let coef = c.clone() * gamma_product(&ctx, kk)?;
        precision(&coef, ORDERS)?;
        let (ra, rb) = (i - kk, j + kk);
        if rb > nn {
            continue;
        }
        // (sign, delta exponent in zeta_2/zeta_1, shift of W^ra, shift of W^rb)
        for (sign, de, sa, sb) in [(1, 2 * kk, d + kk, kk), (-1, 2 * i - 2 * j - 2 * kk, -(d + kk), -kk)] {
            let delta = delta_expansion(n, &k, de);
            // the surviving current, if any: (rank, shift relative to z2)
            let local = match (ra, rb) {
                (0, r) if r == nn => None,
                (0, r) => Some((r, sb)),
                (r, m) if m == nn => Some((r, sa)),
                _ => {
                    dropped += 1;
                    continue;
                }
            };
            let signed = if sign > 0 { coef.clone() } else { -coef.clone() };
            for h in 0..ORDERS {
                for r in 0..=h {
                    match local {
                        None => {
                            let v = signed.coeff(h - r).scale(&delta[r]);
                            rhs[h].add(n, ZWord::Central { b: de, r: r as u32 }, v);
                        }
                        Some((m, sh)) => {
                            // W^m(s^sh z2) = hbar eta^m z^m(eta^(sh+m-j) zeta_2) + O(hbar^2)
                            if h - r < 1 {
                                continue;
                            }
                            let v = signed.coeff(h - r - 1).scale(&delta[r]) * eta.eta_pow(m);
                            if r > 0 && !v.is_zero() {
                                return Err(Error::InvalidArgument(
                                    "a derivative of delta multiplies a current below hbar^3".into(),
                                ));
                            }
                            if h - r >= 2 && !signed.coeff(h - r - 2).is_zero() {
                                return Err(Error::InvalidArgument(
                                    "the O(hbar^2) part of a current would enter".into(),
                                ));
                            }
                            rhs[h].add(
                                n,
                                ZWord::Local {
                                    mu: m,
                                    a: sh + m - j,
                                    b: de,
                                    r: r as u32,
                                },
                                v,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(LimitSides { lhs, rhs, dropped })
}

/// The free-field relation in Limit II after the substitution, for any `1 <= i, j <= N-1`.
pub fn dwa_sides(limit: &LimitCtx, i: i64, j: i64, order_x: usize) -> Result<LimitSides> {
    if i <= j {
        return dwa_sides_ordered(limit, i, j, order_x);
    }
    let s = dwa_sides_ordered(limit, j, i, order_x)?;
    let n = limit.n;
    let sw = |v: &Vec<ZExpr>| v.iter().map(|e| e.swapped(n)).collect::<Result<Vec<_>>>();
    Ok(LimitSides {
        lhs: sw(&s.lhs)?,
        rhs: sw(&s.rhs)?,
        dropped: s.dropped,
    })
}

/// The Z-algebra relation for `(mu, nu)`, both sides multiplied by `eta^(mu+nu)`.
pub fn za_sides(n: usize, k: &Rat, mu: i64, nu: i64, order_x: usize) -> Result<(ZExpr, ZExpr)> {
    let eta = Cyc::eta(2 * n as u32)?;
    let pref = eta.eta_pow(mu + nu);
    let g1 = g_series(n, k, mu, nu, order_x)?;
    let g2 = g_series(n, k, nu, mu, order_x)?;
    let mut lhs = ZExpr::default();
    for l in 0..=order_x {
        lhs.add(n, ZWord::Ordered { a: mu, b: nu, l }, pref.clone() * g1.coeff(l).clone());
        lhs.add(n, ZWord::Reversed { a: nu, b: mu, l }, -(pref.clone() * g2.coeff(l).clone()));
    }
    let mut rhs = ZExpr::default();
    if (mu + nu) % n as i64 != 0 {
        let m = mu + nu;
        rhs.add(n, ZWord::Local { mu: m, a: 2 * mu, b: 2 * mu, r: 0 }, pref.clone());
        rhs.add(n, ZWord::Local { mu: m, a: 0, b: -2 * nu, r: 0 }, -pref);
    } else {
        rhs.add(n, ZWord::Central { b: 2 * mu, r: 1 }, pref.from_rat_like(k) * pref.clone());
    }
    Ok((lhs, rhs))
}

fn compare_expr(ck: &mut Checker, n: usize, what: &str, expected: &ZExpr, actual: &ZExpr) {
    let diff = actual.sub(n, expected);
    let zero = Cyc::eta(2 * n as u32).map(|e| e.zero_like());
    let Ok(zero) = zero else {
        ck.holds(|| format!("{what}: cyclotomic field"), false);
        return;
    };
    let mut keys: Vec<&ZWord> = expected.terms.keys().chain(actual.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    for w in keys {
        let e = expected.terms.get(w).unwrap_or(&zero);
        let a = actual.terms.get(w).unwrap_or(&zero);
        ck.eq(|| format!("{what}: {w}"), e, a);
    }
    ck.holds(|| format!("{what}: difference vanishes"), diff.is_zero());
}

/// Checks that the relation starts at `hbar^2` and that its `hbar^2`
/// coefficient is the Z-algebra relation.
pub fn verify_limit_ii_relation(limit: &LimitCtx, i: i64, j: i64, order_x: usize) -> CheckRecord {
    let n = limit.n;
    let mut ck = limit
        .checker(SUITE_TWO, "zalgebra-reduction")
        .case("i", i)
        .case("j", j);
    ck.truncation("order_x", order_x as i64);
    ck.truncation("order_h", 2);
    ck.assume("current substitution applied as a formal rule");
    let res = (|| -> Result<()> {
        if limit.order_h != 2 {
            return Err(Error::InvalidArgument("the relation check runs at order_h = 2".into()));
        }
        let nn = n as i64;
        if !(1..nn).contains(&i) || !(1..nn).contains(&j) {
            return Err(Error::InvalidArgument(format!("need 1 <= i, j <= {}", nn - 1)));
        }
        let s = dwa_sides(limit, i, j, order_x)?;
        for h in 0..2 {
            let diff = s.lhs[h].sub(n, &s.rhs[h]);
            ck.holds(|| format!("hbar^{h} part of LHS - RHS vanishes"), diff.is_zero());
        }
        let (zl, zr) = za_sides(n, limit.level()?, i, j, order_x)?;
        compare_expr(&mut ck, n, "hbar^2 LHS", &zl, &s.lhs[2]);
        compare_expr(&mut ck, n, "hbar^2 RHS", &zr, &s.rhs[2]);
        if s.dropped > 0 {
            ck.note(format!("{} composite terms start at hbar^3", s.dropped));
        }
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// `hbar^0` part of `f^{i,j}(s^(i-j) x)` against `g^{i,j}(x)`, and the
/// prefactor `-(1-q)(1-t^-1)/(1-p) = hbar + O(hbar^2)`.
pub fn verify_limit_ii_structure(limit: &LimitCtx, i: i64, j: i64, order_x: usize) -> CheckRecord {
    let mut ck = limit.checker(SUITE_TWO, "structure-function").case("i", i).case("j", j);
    ck.truncation("order_x", order_x as i64);
    let res = (|| -> Result<()> {
        let ctx = limit.scalars_two()?;
        let f = hbar_expand_f(limit, i, j, order_x)?;
        let g = g_series(limit.n, limit.level()?, i, j, order_x)?;
        for l in 0..=order_x {
            let shifted = f.coeff(l).clone() * ctx.s_pow((i - j) * l as i64);
            ck.eq(|| format!("x^{l}"), g.coeff(l), &shifted.coeff(0));
            if l == 0 {
                let one = Hbar::constant(g.coeff(0).one_like(), limit.order_h + 1);
                ck.eq(|| "f_0 at every hbar order".into(), &one, f.coeff(0));
            }
        }
        let c = relation_prefactor(&ctx)?;
        let eta = Cyc::eta(2 * limit.n as u32)?;
        ck.eq(|| "prefactor hbar^0".into(), &eta.zero_like(), &c.coeff(0));
        ck.eq(|| "prefactor hbar^1".into(), &eta.one_like(), &c.coeff(1));
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// `<vac| W^1(zeta_1) .. W^1(zeta_n) |vac> = O(hbar^n)` coefficient by coefficient.
pub fn verify_correlator_order(limit: &LimitCtx, n_points: usize, order_x: i64) -> CheckRecord {
    let mut ck = limit.checker(SUITE_TWO, "correlator-order").case("points", n_points);
    ck.truncation("order_x", order_x);
    ck.truncation("order_h", n_points as i64);
    ck.assume("vacuum highest weight");
    let res = (|| -> Result<()> {
        if n_points == 0 {
            return Err(Error::InvalidArgument("at least one insertion".into()));
        }
        let k = limit.level()?.clone();
        let ctx = ScalarCtx::limit_two(limit.n, k, n_points + 1 + GUARD)?;
        let hw = HighestWeight::vacuum(&ctx);
        let ins = vec![WInsertion { rank: 1, shift: 0 }; n_points];
        let hi = vec![order_x; n_points - 1];
        // contractions are computed once at full precision, then cut just past
        // the checked orders so the products stay small
        let mut cache: BTreeMap<(usize, usize, i64, usize), PowerSeries<Hbar<Cyc>>> = BTreeMap::new();
        let mut kernel = |i: usize, j: usize, shift: i64, order: usize| -> Result<PowerSeries<Hbar<Cyc>>> {
            if let Some(c) = cache.get(&(i, j, shift, order)) {
                return Ok(c.clone());
            }
            let c = contraction_series(&ctx, i, j, shift, order)?;
            for h in c.coeffs() {
                precision(h, n_points + 1)?;
            }
            let c = c.map(|h| h.truncate(n_points + 1));
            cache.insert((i, j, shift, order), c.clone());
            Ok(c)
        };
        let corr = w_correlator_with(&ctx, &hw, &ins, &hi, &mut kernel)?;
        let mut seen = 0;
        for (e, c) in corr.terms() {
            precision(c, n_points)?;
            for h in 0..n_points {
                ck.holds(|| format!("hbar^{h} at x^{e:?}"), c.coeff(h).is_zero());
            }
            if !c.is_zero() {
                seen += 1;
            }
        }
        ck.holds(|| "correlator is not identically zero".into(), seen > 0);
        Ok(())
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// Limit I: `<vac|W^i_0|vac> = [N choose i]_p = binom(N, i) + O(hbar^2)`,
/// even in `hbar`, and the two-point functions of non-zero modes start at `hbar^2`.
pub fn verify_limit_i_appendix(limit: &LimitCtx, window: i64) -> CheckRecord {
    let n = limit.n;
    let mut ck = limit.checker(SUITE_ONE, "appendix-limit");
    ck.truncation("order_h", limit.order_h as i64);
    ck.truncation("window", window);
    let res = (|| -> Result<()> {
        let Variant::One { beta } = &limit.variant else {
            return Err(Error::InvalidArgument("Limit I context expected".into()));
        };
        let nn = int(n as i64);
        let allowed = [(&nn + int(1)) / &nn, &nn / (&nn + int(1))];
        if !allowed.contains(beta) {
            return Err(Error::InvalidArgument(format!(
                "beta must be (N+1)/N or N/(N+1), got {}",
                fmt_rat(beta)
            )));
        }
        let ctx = limit.scalars_one()?;
        let hw = HighestWeight::vacuum(&ctx);
        let top = limit.order_h + 1;
        for i in 0..=n as i64 {
            let b = p_binomial(&ctx, n as i64, i)?;
            if b.trunc() < top {
                return Err(Error::PrecisionExhausted(format!("[N choose {i}]_p to order {}", b.trunc())));
            }
            let binom = crate::algebra::rat::binomial(n as i64, i);
            ck.eq(|| format!("i={i}: hbar^0"), &binom, &b.coeff(0));
            for h in (1..top).step_by(2) {
                ck.eq(|| format!("i={i}: odd order hbar^{h}"), &int(0), &b.coeff(h));
            }
            if i == 0 || i == n as i64 {
                ck.eq(|| format!("i={i}: exact"), &b.one_like(), &b);
            }
            let w0 = hw_eigenvalue_w(&ctx, &hw, i as usize);
            ck.eq(|| format!("i={i}: zero-mode eigenvalue"), &b.truncate(top), &w0.truncate(top));
        }
        let mut lowest = usize::MAX;
        for i in 1..n as i64 {
            for j in 1..n as i64 {
                for m in 1..=window {
                    let v = w_mode_matrix_element(&ctx, &hw, &[(i, m), (j, -m)])?;
                    for h in 0..2 {
                        ck.eq(|| format!("<W{i}_{m} W{j}_-{m}> hbar^{h}"), &int(0), &v.coeff(h));
                    }
                    if let Some(val) = v.valuation() {
                        lowest = lowest.min(val);
                    }
                }
            }
        }
        if lowest != usize::MAX {
            ck.note(format!("lowest hbar order among non-zero-mode two-point functions: {lowest}"));
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

    #[test]
    fn n2_structure_function_at_level_two() {
        let lim = LimitCtx::two(2, int(2), 2);
        let f = hbar_expand_f(&lim, 1, 1, 6).unwrap();
        // (1-x)/(1+x)
        let expect = [1, -2, 2, -2, 2, -2, 2];
        for (l, e) in expect.iter().enumerate() {
            assert_eq!(f.coeff(l).coeff(0).as_rat(), Some(int(*e)), "x^{l}");
        }
    }

    #[test]
    fn prefactor_starts_at_hbar() {
        for (n, k) in [(2, 2), (3, 1)] {
            let rec = verify_limit_ii_structure(&LimitCtx::two(n, int(k), 2), 1, n as i64 - 1, 8);
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn central_term_for_n2() {
        let rec = verify_limit_ii_relation(&LimitCtx::two(2, int(2), 2), 1, 1, 8);
        assert!(rec.passed(), "{rec:?}");
    }

    #[test]
    fn non_central_for_n3() {
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let rec = verify_limit_ii_relation(&LimitCtx::two(3, int(2), 2), i, j, 6);
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn one_point_function_for_n2_starts_at_hbar() {
        let rec = verify_correlator_order(&LimitCtx::two(2, int(2), 1), 1, 0);
        assert!(rec.passed(), "{rec:?}");
    }

    #[test]
    fn two_dimensional_binomial_is_a_cosh() {
        // [2]_p = 2 cosh(hbar/4) when p = e^(-hbar/2)
        let ctx = ScalarCtx::limit_one(2, rat(3, 2), 7).unwrap();
        let b = p_binomial(&ctx, 2, 1).unwrap();
        let mut fact = int(1);
        for h in 0..6usize {
            if h > 0 {
                fact *= int(h as i64);
            }
            let expect = if h % 2 == 0 {
                int(2) * crate::algebra::rat::rat_pow(&rat(1, 4), h as i64).unwrap() / &fact
            } else {
                int(0)
            };
            assert_eq!(b.coeff(h), expect, "hbar^{h}");
        }
    }

    #[test]
    fn appendix_limit_small() {
        let rec = verify_limit_i_appendix(&LimitCtx::one(3, rat(4, 3), 6), 2);
        assert!(rec.passed(), "{rec:?}");
    }
}
