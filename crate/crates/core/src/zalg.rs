//! Affine `gl_N` in the homogeneous basis `E^{i,j}_n`, the principal basis
//! `beta_n`, `x^(mu)_n` realized inside it, and the Z-algebra structure function.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{int, Cyc, PowerSeries, Rat, Scalar};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Checker};
use crate::structfn::g_series;

pub const SUITE: &str = "zalgebra";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    /// `E^{i,j}_n`, `1 <= i, j <= N`
    E(usize, usize, i64),
    /// the central element `k`
    K,
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::E(i, j, n) => write!(f, "E{i}{j}[{n}]"),
            Sym::K => write!(f, "k"),
        }
    }
}

/// A finite combination of `E^{i,j}_n` and `k` over `Q(eta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlElement {
    zero: Cyc,
    terms: BTreeMap<Sym, Cyc>,
}

impl GlElement {
    pub fn zero(field: &Cyc) -> GlElement {
        GlElement {
            zero: field.zero_like(),
            terms: BTreeMap::new(),
        }
    }

    pub fn symbol(field: &Cyc, s: Sym) -> GlElement {
        let mut g = GlElement::zero(field);
        g.add_term(s, field.one_like());
        g
    }

    pub fn add_term(&mut self, s: Sym, c: Cyc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_insert_with(|| self.zero.clone());
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Sym, Cyc> {
        &self.terms
    }

    pub fn coeff(&self, s: &Sym) -> Cyc {
        self.terms.get(s).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &GlElement) -> GlElement {
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &GlElement) -> GlElement {
        self.add(&o.scale(&-self.zero.one_like()))
    }

    pub fn scale(&self, c: &Cyc) -> GlElement {
        let mut out = GlElement::zero(&self.zero);
        for (s, v) in &self.terms {
            out.add_term(*s, v.clone() * c.clone());
        }
        out
    }
}

impl fmt::Display for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c:?}) {s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn bracket_sym(field: &Cyc, a: Sym, b: Sym) -> GlElement {
    let mut out = GlElement::zero(field);
    let (Sym::E(i, j, n), Sym::E(i2, j2, m)) = (a, b) else {
        return out;
    };
    let one = field.one_like();
    if j == i2 {
        out.add_term(Sym::E(i, j2, n + m), one.clone());
    }
    if i == j2 {
        out.add_term(Sym::E(i2, j, n + m), -one.clone());
    }
    if i == j2 && j == i2 && n + m == 0 {
        out.add_term(Sym::K, one.from_int_like(n));
    }
    out
}

/// `[a, b]` extended bilinearly.
pub fn gl_bracket(a: &GlElement, b: &GlElement) -> GlElement {
    let mut out = GlElement::zero(&a.zero);
    for (sa, ca) in &a.terms {
        for (sb, cb) in &b.terms {
            let t = bracket_sym(&a.zero, *sa, *sb);
            for (s, c) in t.terms {
                out.add_term(s, c * ca.clone() * cb.clone());
            }
        }
    }
    out
}

/// Generators of the principal presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrincipalGen {
    /// `beta_n`, `n != 0 mod N`
    Beta(i64),
    /// `x^(mu)_n`, `1 <= mu <= N-1`
    X(i64, i64),
}

impl fmt::Display for PrincipalGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrincipalGen::Beta(n) => write!(f, "beta[{n}]"),
            PrincipalGen::X(mu, n) => write!(f, "x{mu}[{n}]"),
        }
    }
}

/// The principal generators of level-`k` affine `sl_N` written in `E^{i,j}_n`.
#[derive(Clone, Debug)]
pub struct Principal {
    pub n: usize,
    eta: Cyc,
}

impl Principal {
    pub fn new(n: usize) -> Result<Principal> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("rank N = {n} must be at least 2")));
        }
        Ok(Principal {
            n,
            eta: Cyc::eta(2 * n as u32)?,
        })
    }

    pub fn field(&self) -> &Cyc {
        &self.eta
    }

    pub fn omega_pow(&self, e: i64) -> Cyc {
        self.eta.eta_pow(2 * e)
    }

    fn e(&self, i: usize, j: usize, m: i64) -> Sym {
        Sym::E(i, j, m)
    }

    /// `sum_i c_i E^{i,i+nu}_m + sum_i c_i E^{i,i+nu-N}_{m+1}` for `n = N m + nu`.
    fn shift_sum(&self, n: i64, coef: impl Fn(usize) -> Cyc) -> GlElement {
        let nn = self.n as i64;
        let nu = n.rem_euclid(nn) as usize;
        let m = n.div_euclid(nn);
        let mut g = GlElement::zero(&self.eta);
        for i in 1..=self.n - nu {
            g.add_term(self.e(i, i + nu, m), coef(i));
        }
        for i in self.n - nu + 1..=self.n {
            g.add_term(self.e(i, i + nu - self.n, m + 1), coef(i));
        }
        g
    }

    pub fn realize(&self, g: PrincipalGen) -> Result<GlElement> {
        let nn = self.n as i64;
        match g {
            PrincipalGen::Beta(n) => {
                if n.rem_euclid(nn) == 0 {
                    return Err(Error::InvalidArgument(format!("beta_{n} needs n != 0 mod {nn}")));
                }
                Ok(self.shift_sum(n, |_| self.eta.one_like()))
            }
            PrincipalGen::X(mu, n) => {
                if !(1..nn).contains(&mu) {
                    return Err(Error::InvalidArgument(format!("x^({mu}) needs 1 <= mu <= {}", nn - 1)));
                }
                let nu = n.rem_euclid(nn);
                if nu != 0 {
                    return Ok(self.shift_sum(n, |i| self.omega_pow(mu * (i as i64 + nu - 1))));
                }
                let m = n / nn;
                let one = self.eta.one_like();
                let den = one.clone() - self.omega_pow(mu);
                let mut g = GlElement::zero(&self.eta);
                for i in 1..self.n {
                    let c = (one.clone() - self.omega_pow(mu * i as i64)).try_div(&den)?;
                    // H^i_m = E^{i,i}_m - E^{i+1,i+1}_m
                    g.add_term(self.e(i, i, m), c.clone());
                    g.add_term(self.e(i + 1, i + 1, m), -c);
                }
                if m == 0 {
                    g.add_term(Sym::K, -(one.try_div(&den)?));
                }
                Ok(g)
            }
        }
    }

    /// Principal degree `(j - i) + N n` of `E^{i,j}_n`; `k` has degree zero.
    pub fn degree(&self, s: &Sym) -> i64 {
        match *s {
            Sym::E(i, j, n) => j as i64 - i as i64 + self.n as i64 * n,
            Sym::K => 0,
        }
    }

    /// The right-hand side of the principal relations, realized in `gl_N`.
    pub fn expected_bracket(&self, a: PrincipalGen, b: PrincipalGen) -> Result<GlElement> {
        let nn = self.n as i64;
        let field = &self.eta;
        let k_term = |c: Cyc| {
            let mut g = GlElement::zero(field);
            g.add_term(Sym::K, c);
            g
        };
        match (a, b) {
            (PrincipalGen::Beta(n), PrincipalGen::Beta(m)) => Ok(if n + m == 0 {
                k_term(field.from_int_like(n))
            } else {
                GlElement::zero(field)
            }),
            (PrincipalGen::Beta(n), PrincipalGen::X(nu, m)) => {
                let c = field.one_like() - self.omega_pow(-nu * n);
                Ok(self.realize(PrincipalGen::X(nu, n + m))?.scale(&c))
            }
            (PrincipalGen::X(mu, n), PrincipalGen::Beta(m)) => {
                let c = field.one_like() - self.omega_pow(-mu * m);
                Ok(self.realize(PrincipalGen::X(mu, n + m))?.scale(&-c))
            }
            (PrincipalGen::X(mu, n), PrincipalGen::X(nu, m)) => {
                let c = self.omega_pow(-mu * m) - self.omega_pow(-nu * n);
                if (mu + nu) % nn != 0 {
                    let r = (mu + nu).rem_euclid(nn);
                    return Ok(self.realize(PrincipalGen::X(r, n + m))?.scale(&c));
                }
                let mut out = if (n + m).rem_euclid(nn) == 0 {
                    if !c.is_zero() {
                        return Err(Error::Mismatch(format!(
                            "beta_{} would be needed in [x{mu}[{n}], x{nu}[{m}]]",
                            n + m
                        )));
                    }
                    GlElement::zero(field)
                } else {
                    self.realize(PrincipalGen::Beta(n + m))?.scale(&c)
                };
                if n + m == 0 {
                    out = out.add(&k_term(field.from_int_like(n) * self.omega_pow(mu * n)));
                }
                Ok(out)
            }
        }
    }

    pub fn generators(&self, window: i64) -> Vec<PrincipalGen> {
        let nn = self.n as i64;
        let mut out = Vec::new();
        for n in -window..=window {
            if n.rem_euclid(nn) != 0 {
                out.push(PrincipalGen::Beta(n));
            }
            for mu in 1..nn {
                out.push(PrincipalGen::X(mu, n));
            }
        }
        out
    }
}

/// All brackets of principal generators with modes in `[-window, window]`
/// against the principal relations, plus the degree bookkeeping.
pub fn verify_principal_relations(n: usize, window: i64) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "principal-relations").case("N", n).case("window", window);
    ck.note("Serre relations hold by realization");
    let res = (|| -> Result<()> {
        let pr = Principal::new(n)?;
        let gens = pr.generators(window);
        let mut real = BTreeMap::new();
        for g in &gens {
            let r = pr.realize(*g)?;
            let want = match g {
                PrincipalGen::Beta(m) | PrincipalGen::X(_, m) => *m,
            };
            let homogeneous = r.terms().keys().all(|s| match s {
                Sym::K => want == 0,
                _ => pr.degree(s) == want,
            });
            ck.holds(|| format!("{g} has principal degree {want}"), homogeneous);
            real.insert(*g, r);
        }
        for a in &gens {
            for b in &gens {
                let got = gl_bracket(&real[a], &real[b]);
                let want = pr.expected_bracket(*a, *b)?;
                let diff = got.sub(&want);
                if !diff.is_zero() {
                    ck.fail(
                        format!("[{a}, {b}]"),
                        serde_json::Value::String(want.to_string()),
                        serde_json::Value::String(got.to_string()),
                    );
                } else {
                    ck.holds(|| format!("[{a}, {b}]"), true);
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

/// Antisymmetry and the Jacobi identity of [`gl_bracket`] on every triple of
/// basis symbols `E^{i,j}_n`, `|n| <= window`, and `k`.
pub fn verify_jacobi(n: usize, window: i64) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "jacobi").case("N", n).case("window", window);
    let res = (|| -> Result<()> {
        let field = Cyc::eta(2 * n as u32)?;
        let mut basis = vec![GlElement::symbol(&field, Sym::K)];
        for i in 1..=n {
            for j in 1..=n {
                for m in -window..=window {
                    basis.push(GlElement::symbol(&field, Sym::E(i, j, m)));
                }
            }
        }
        let mut bracket = BTreeMap::new();
        for (x, a) in basis.iter().enumerate() {
            for (y, b) in basis.iter().enumerate() {
                bracket.insert((x, y), gl_bracket(a, b));
            }
        }
        for x in 0..basis.len() {
            for y in 0..basis.len() {
                let anti = bracket[&(x, y)].add(&bracket[&(y, x)]);
                ck.holds(|| format!("[{}, {}] antisymmetric", basis[x], basis[y]), anti.is_zero());
            }
        }
        for a in &basis {
            for (y, b) in basis.iter().enumerate() {
                for (z, c) in basis.iter().enumerate().skip(y) {
                    let t = gl_bracket(a, &bracket[&(y, z)])
                        .add(&gl_bracket(b, &gl_bracket(c, a)))
                        .add(&gl_bracket(c, &gl_bracket(a, b)));
                    ck.holds(|| format!("Jacobi on {a}, {b}, {c}"), t.is_zero());
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

/// The scalar produced by moving `exp(sum_n a^mu_n beta_n zeta_1^-n)` past
/// `exp(sum_n a^nu_n beta_n zeta_2^-n)` with `a^mu_n = -(1-omega^(mu n))/(k n)`,
/// as a series in `zeta_2/zeta_1`. The Heisenberg brackets are taken from the
/// realization, with the central element set to `k`.
pub fn exchange_factor(n: usize, k: &Rat, mu: i64, nu: i64, order: usize) -> Result<PowerSeries<Cyc>> {
    if num_traits::Zero::is_zero(k) {
        return Err(Error::InvalidArgument("level k must be non-zero".into()));
    }
    let pr = Principal::new(n)?;
    let field = pr.field().clone();
    let nn = n as i64;
    let a = |flavor: i64, m: i64| -> Cyc {
        (field.one_like() - pr.omega_pow(flavor * m)).scale(&-(int(1) / (k * int(m))))
    };
    let mut expo = vec![field.zero_like(); order + 1];
    for m in 1..=order as i64 {
        if m % nn == 0 {
            continue;
        }
        let br = gl_bracket(&pr.realize(PrincipalGen::Beta(m))?, &pr.realize(PrincipalGen::Beta(-m))?);
        if br.terms().keys().any(|s| *s != Sym::K) {
            return Err(Error::Mismatch(format!("[beta_{m}, beta_-{m}] is not central: {br}")));
        }
        let central = br.coeff(&Sym::K).scale(k);
        expo[m as usize] = a(mu, m) * a(nu, -m) * central;
    }
    PowerSeries::new(expo)?.exp()
}

/// The exchange factor for `(mu, nu)` and for `(nu, mu)` against `g^{mu,nu}`, `g^{nu,mu}`.
pub fn verify_splitting_consistency(n: usize, k: &Rat, mu: i64, nu: i64, order: usize) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "splitting")
        .case("N", n)
        .case("k", crate::algebra::fmt_rat(k))
        .case("mu", mu)
        .case("nu", nu);
    ck.truncation("order", order as i64);
    let res = (|| -> Result<()> {
        for (a, b) in [(mu, nu), (nu, mu)] {
            let ex = exchange_factor(n, k, a, b, order)?;
            let g = g_series(n, k, a, b, order)?;
            for l in 0..=order {
                ck.eq(|| format!("({a},{b}) x^{l}"), g.coeff(l), ex.coeff(l));
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

    fn e(f: &Cyc, i: usize, j: usize, n: i64) -> GlElement {
        GlElement::symbol(f, Sym::E(i, j, n))
    }

    #[test]
    fn basic_brackets() {
        let f = Cyc::eta(4).unwrap();
        let h = e(&f, 1, 1, 0).sub(&e(&f, 2, 2, 0));
        assert_eq!(gl_bracket(&e(&f, 1, 2, 0), &e(&f, 2, 1, 0)), h);
        let with_k = h.add(&GlElement::symbol(&f, Sym::K));
        assert_eq!(gl_bracket(&e(&f, 1, 2, 1), &e(&f, 2, 1, -1)), with_k);
        assert!(gl_bracket(&e(&f, 1, 2, 0), &e(&f, 3, 4, 5)).is_zero());
    }

    #[test]
    fn n2_heisenberg() {
        let pr = Principal::new(2).unwrap();
        let f = pr.field().clone();
        let b1 = pr.realize(PrincipalGen::Beta(1)).unwrap();
        assert_eq!(b1, e(&f, 1, 2, 0).add(&e(&f, 2, 1, 1)));
        let bm1 = pr.realize(PrincipalGen::Beta(-1)).unwrap();
        assert_eq!(gl_bracket(&b1, &bm1), GlElement::symbol(&f, Sym::K));
        // [x1[1], x1[-1]] = -k for N = 2
        let x = gl_bracket(
            &pr.realize(PrincipalGen::X(1, 1)).unwrap(),
            &pr.realize(PrincipalGen::X(1, -1)).unwrap(),
        );
        assert_eq!(x, GlElement::symbol(&f, Sym::K).scale(&f.from_int_like(-1)));
    }

    #[test]
    fn principal_relations_small() {
        for n in [2, 3] {
            let rec = verify_principal_relations(n, 3);
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn exchange_matches_g() {
        let ex = exchange_factor(2, &int(2), 1, 1, 4).unwrap();
        let expect = [1, -2, 2, -2, 2];
        for (l, v) in expect.iter().enumerate() {
            assert_eq!(ex.coeff(l).as_rat(), Some(int(*v)));
        }
        assert!(verify_splitting_consistency(3, &rat(1, 1), 1, 2, 8).passed());
    }

    #[test]
    fn jacobi_on_basis() {
        for n in [2, 3] {
            let rec = verify_jacobi(n, 1);
            assert!(rec.passed(), "{rec:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element() -> impl Strategy<Value = GlElement> {
            let field = Cyc::eta(6).unwrap();
            proptest::collection::vec((1usize..=3, 1usize..=3, -3i64..=3, -4i64..=4, 0i64..6, any::<bool>()), 0..5).prop_map(
                move |terms| {
                    let mut g = GlElement::zero(&field);
                    for (i, j, n, c, e, central) in terms {
                        let coeff = field.eta_pow(e).scale(&int(c));
                        g.add_term(if central { Sym::K } else { Sym::E(i, j, n) }, coeff);
                    }
                    g
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn bracket_is_antisymmetric(a in element(), b in element()) {
                prop_assert!(gl_bracket(&a, &b).add(&gl_bracket(&b, &a)).is_zero());
            }

            #[test]
            fn bracket_satisfies_jacobi(a in element(), b in element(), c in element()) {
                let t = gl_bracket(&a, &gl_bracket(&b, &c))
                    .add(&gl_bracket(&b, &gl_bracket(&c, &a)))
                    .add(&gl_bracket(&c, &gl_bracket(&a, &b)));
                prop_assert!(t.is_zero());
            }
        }
    }
}
