//! Oscillator Fock space over the independent creators `h^j_{-m}`, `j < N`.
//!
//! The constraint `sum_i p^{im} h^i_{-m} = 0` is used once, to write
//! `h^N_{-m}` in terms of the others. Annihilators act as derivations through
//! the commutators of `boson::boson_commutator`.

use std::collections::BTreeMap;

use crate::algebra::{Scalar, ScalarCtx};
use crate::error::{Error, Result};

use super::boson::{boson_commutator, HighestWeight};

/// Sorted list of `(mode, flavor)` creators, flavors in `1..N`.
pub type Mono = Vec<(u32, u32)>;

fn mono_level(m: &Mono) -> i64 {
    m.iter().map(|(k, _)| *k as i64).sum()
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A homogeneous vector of the Fock module.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVec<S> {
    level: i64,
    terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> FockVec<S> {
    pub fn zero(level: i64) -> FockVec<S> {
        FockVec {
            level,
            terms: BTreeMap::new(),
        }
    }

    /// `c |lambda>`
    pub fn vacuum(c: S) -> FockVec<S> {
        let mut v = FockVec::zero(0);
        v.add_term(Vec::new(), c);
        v
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&S> {
        self.terms.get(m)
    }

    /// Coefficient of `|lambda>`; zero away from level 0.
    pub fn vacuum_coeff(&self) -> Option<&S> {
        self.terms.get(&Vec::new())
    }

    pub fn add_term(&mut self, m: Mono, c: S) {
        debug_assert_eq!(mono_level(&m), self.level);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &FockVec<S>) {
        if o.is_zero() {
            return;
        }
        debug_assert_eq!(self.level, o.level);
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &FockVec<S>, c: &S) {
        if o.is_zero() || c.is_zero() {
            return;
        }
        debug_assert_eq!(self.level, o.level);
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> FockVec<S> {
        let mut out = FockVec::zero(self.level);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> FockVec<S> {
        FockVec {
            level: self.level,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    /// Product with a polynomial in creators.
    pub fn mul(&self, poly: &FockVec<S>) -> FockVec<S> {
        let mut out = FockVec::zero(self.level + poly.level);
        for (a, x) in &self.terms {
            for (b, y) in &poly.terms {
                out.add_term(mono_mul(a, b), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FockVec<T> {
        let mut out = FockVec::zero(self.level);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

/// `:prod_k Lambda_{flavor_k}(mu_k z)^{mult_k}:` times a scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexOp<S> {
    pub coeff: S,
    pub points: Vec<Point<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    pub flavor: usize,
    pub mu: S,
    pub mult: i64,
}

impl<S: Scalar> VertexOp<S> {
    pub fn identity(one: S) -> VertexOp<S> {
        VertexOp {
            coeff: one,
            points: Vec::new(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> VertexOp<T> {
        VertexOp {
            coeff: f(&self.coeff),
            points: self
                .points
                .iter()
                .map(|p| Point {
                    flavor: p.flavor,
                    mu: f(&p.mu),
                    mult: p.mult,
                })
                .collect(),
        }
    }
}

/// Commutator tables of the oscillators up to a fixed level.
#[derive(Clone, Debug)]
pub struct Fock<S> {
    pub ctx: ScalarCtx<S>,
    pub hw: HighestWeight<S>,
    max_level: usize,
    // gram[m-1][f-1][j-1] = [h^f_m, h^j_{-m}]
    gram: Vec<Vec<Vec<S>>>,
    // creator[m-1][f-1][j-1]: h^f_{-m} = sum_j creator * h^j_{-m}
    creator: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> Fock<S> {
    pub fn new(ctx: &ScalarCtx<S>, hw: &HighestWeight<S>, max_level: usize) -> Result<Fock<S>> {
        let n = ctx.n;
        if n < 2 {
            return Err(Error::InvalidArgument("the Fock engine needs N >= 2".into()));
        }
        let mut gram = Vec::new();
        let mut creator = Vec::new();
        for m in 1..=max_level as i64 {
            let mut g = Vec::new();
            let mut c = Vec::new();
            for f in 1..=n {
                let mut grow = Vec::new();
                let mut crow = Vec::new();
                for j in 1..n {
                    grow.push(boson_commutator(ctx, f, j, m)?);
                    crow.push(if f == n {
                        -ctx.p_pow((n - j) as i64 * m)
                    } else if f == j {
                        ctx.one()
                    } else {
                        ctx.zero()
                    });
                }
                g.push(grow);
                c.push(crow);
            }
            gram.push(g);
            creator.push(c);
        }
        Ok(Fock {
            ctx: ctx.clone(),
            hw: hw.clone(),
            max_level,
            gram,
            creator,
        })
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn one(&self) -> S {
        self.ctx.one()
    }

    /// Lifts every table through `f`, e.g. into truncated series.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Fock<T> {
        let tab = |t: &Vec<Vec<Vec<S>>>| -> Vec<Vec<Vec<T>>> {
            t.iter()
                .map(|a| a.iter().map(|b| b.iter().map(&f).collect()).collect())
                .collect()
        };
        let a: Vec<T> = (1..=self.ctx.n).map(|i| f(self.hw.a(i))).collect();
        let ctx = self.ctx.map(&f);
        let hw = HighestWeight::new(&ctx, a).expect("lifted weights keep their product");
        Fock {
            gram: tab(&self.gram),
            creator: tab(&self.creator),
            ctx,
            hw,
            max_level: self.max_level,
        }
    }

    /// `h^f_{-m}` as a polynomial.
    pub fn creator(&self, f: usize, m: u32) -> FockVec<S> {
        let mut v = FockVec::zero(m as i64);
        for j in 1..self.ctx.n {
            v.add_term(vec![(m, j as u32)], self.creator[m as usize - 1][f - 1][j - 1].clone());
        }
        v
    }

    /// `h^f_m` acting on `v`.
    pub fn annihilate(&self, f: usize, m: u32, v: &FockVec<S>) -> FockVec<S> {
        let row = &self.gram[m as usize - 1][f - 1];
        self.derive(m, |j| row[j - 1].clone(), v)
    }

    fn derive(&self, m: u32, coef: impl Fn(usize) -> S, v: &FockVec<S>) -> FockVec<S> {
        let mut out = FockVec::zero(v.level - m as i64);
        for (mono, c) in &v.terms {
            for (pos, &(mm, j)) in mono.iter().enumerate() {
                if mm != m {
                    continue;
                }
                let k = coef(j as usize);
                if k.is_zero() {
                    continue;
                }
                let mut rest = mono.clone();
                rest.remove(pos);
                out.add_term(rest, c.clone() * k);
            }
        }
        out
    }

    /// Zero-mode eigenvalue of a vertex operator on the module.
    pub fn zero_mode(&self, op: &VertexOp<S>) -> Result<S> {
        let mut acc = op.coeff.clone();
        for p in &op.points {
            acc = acc * self.hw.lambda_zero_mode(&self.ctx, p.flavor).pow_i(p.mult)?;
        }
        Ok(acc)
    }

    fn check_level(&self, level: i64) -> Result<()> {
        if level > self.max_level as i64 {
            return Err(Error::Window(format!(
                "level {level} exceeds the Fock window {}",
                self.max_level
            )));
        }
        Ok(())
    }

    /// Modes `V_M v` for every `M` in `modes`, sharing the annihilation part.
    pub fn apply_modes(&self, op: &VertexOp<S>, v: &FockVec<S>, modes: &[i64]) -> Result<Vec<FockVec<S>>> {
        let lv = v.level;
        let mut out: Vec<FockVec<S>> = modes.iter().map(|&m| FockVec::zero(lv - m)).collect();
        if v.is_zero() || modes.iter().all(|&m| lv - m < 0) {
            return Ok(out);
        }
        let top = modes.iter().map(|&m| lv - m).max().unwrap_or(0);
        self.check_level(top)?;
        self.check_level(lv)?;
        let zm = self.zero_mode(op)?;
        if op.points.is_empty() {
            for (o, &m) in out.iter_mut().zip(modes) {
                if m == 0 {
                    *o = v.scale(&zm);
                }
            }
            return Ok(out);
        }
        let n = self.ctx.n;
        // coefficient of h^j_{-m} in A_m and of the derivation in B_m
        let reach = top.max(lv).max(1) as usize;
        let mut alpha = vec![vec![self.ctx.zero(); n - 1]; reach + 1];
        let mut beta = vec![vec![self.ctx.zero(); n - 1]; reach + 1];
        for p in &op.points {
            let mult = self.ctx.int(p.mult);
            let inv = p.mu.try_inv()?;
            let mut up = self.ctx.one();
            let mut down = self.ctx.one();
            for m in 1..=reach {
                up = up * p.mu.clone();
                down = down * inv.clone();
                for j in 1..n {
                    alpha[m][j - 1] = alpha[m][j - 1].clone()
                        + mult.clone() * up.clone() * self.creator[m - 1][p.flavor - 1][j - 1].clone();
                    beta[m][j - 1] = beta[m][j - 1].clone()
                        + mult.clone() * down.clone() * self.gram[m - 1][p.flavor - 1][j - 1].clone();
                }
            }
        }
        // Q_d v with d Q_d = sum_m m B_m Q_{d-m}
        let mut qs: Vec<FockVec<S>> = vec![v.clone()];
        for d in 1..=lv as usize {
            let mut acc = FockVec::zero(lv - d as i64);
            for m in 1..=d {
                let bm = self.derive(m as u32, |j| beta[m][j - 1].clone(), &qs[d - m]);
                acc.add_scaled(&bm, &self.ctx.int(m as i64));
            }
            qs.push(acc.scale(&self.ctx.int(d as i64).try_inv()?));
        }
        // P_a as polynomials with a P_a = sum_m m A_m P_{a-m}
        let pmax = top;
        let mut ps: Vec<FockVec<S>> = vec![FockVec::vacuum(self.ctx.one())];
        for a in 1..=pmax.max(0) as usize {
            let mut acc = FockVec::zero(a as i64);
            for m in 1..=a {
                let mut am = FockVec::zero(m as i64);
                for j in 1..n {
                    am.add_term(vec![(m as u32, j as u32)], alpha[m][j - 1].clone());
                }
                acc.add_scaled(&ps[a - m].mul(&am), &self.ctx.int(m as i64));
            }
            ps.push(acc.scale(&self.ctx.int(a as i64).try_inv()?));
        }
        for (o, &mm) in out.iter_mut().zip(modes) {
            if lv - mm < 0 {
                continue;
            }
            for (d, q) in qs.iter().enumerate() {
                let a = d as i64 - mm;
                if a < 0 || q.is_zero() {
                    continue;
                }
                o.add_assign(&q.mul(&ps[a as usize]));
            }
            *o = o.scale(&zm);
        }
        Ok(out)
    }

    pub fn apply_mode(&self, op: &VertexOp<S>, v: &FockVec<S>, mode: i64) -> Result<FockVec<S>> {
        Ok(self.apply_modes(op, v, &[mode])?.remove(0))
    }

    /// Sum of `apply_modes` over a list of vertex operators.
    pub fn apply_sum_modes(&self, ops: &[VertexOp<S>], v: &FockVec<S>, modes: &[i64]) -> Result<Vec<FockVec<S>>> {
        let mut out: Vec<FockVec<S>> = modes.iter().map(|&m| FockVec::zero(v.level - m)).collect();
        for op in ops {
            for (o, r) in out.iter_mut().zip(self.apply_modes(op, v, modes)?) {
                o.add_assign(&r);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Quad};

    fn fock(n: usize) -> Fock<Quad> {
        let c = ScalarCtx::<Quad>::generic(n, rat(3, 2), rat(5, 3)).unwrap();
        let hw = HighestWeight::vacuum(&c);
        Fock::new(&c, &hw, 4).unwrap()
    }

    #[test]
    fn annihilator_matches_commutator() {
        let f = fock(3);
        for fl in 1..=3 {
            let v = f.creator(fl, 2);
            for g in 1..=3 {
                let w = f.annihilate(g, 2, &v);
                let expect = boson_commutator(&f.ctx, g, fl, 2).unwrap();
                assert_eq!(w.vacuum_coeff().cloned().unwrap_or(f.ctx.zero()), expect);
            }
        }
    }

    #[test]
    fn single_lambda_two_point() {
        // <0| Lambda_1_{1} Lambda_1_{-1} |0> equals the x^1 coefficient of p C_11(x)
        let f = fock(2);
        let op = VertexOp {
            coeff: f.one(),
            points: vec![Point {
                flavor: 1,
                mu: f.one(),
                mult: 1,
            }],
        };
        let v = f.apply_mode(&op, &FockVec::vacuum(f.one()), -1).unwrap();
        let w = f.apply_mode(&op, &v, 1).unwrap();
        let c = boson_commutator(&f.ctx, 1, 1, 1).unwrap();
        assert_eq!(w.vacuum_coeff().unwrap().clone(), f.ctx.p.clone() * c);
    }
}
