//! `W^i(z)` currents: correlators, mode matrix elements and the current
//! normal ordering of two currents.

pub mod ops;

use crate::algebra::{LaurentWindow, Scalar, ScalarCtx};
use crate::error::{Error, Result};
use crate::fock::{group_correlator_with, Fock, FockVec, HighestWeight, Insertion, Kernel};
use crate::structfn::f_series;

pub use ops::{regular_product, subsets, w_ops, w_ops_literal, Composite, Factor};

/// `W^rank(s^shift v)` at its own formal point `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WInsertion {
    pub rank: i64,
    pub shift: i64,
}

/// `<lambda| W^{i_1}(u_1) .. W^{i_m}(u_m) |lambda>` in the ratio variables
/// `x_c = v_{c+1}/v_c`, truncated at `hi`.
pub fn w_correlator<S: Scalar>(
    ctx: &ScalarCtx<S>,
    hw: &HighestWeight<S>,
    ins: &[WInsertion],
    hi: &[i64],
) -> Result<LaurentWindow<S>> {
    w_correlator_with(ctx, hw, ins, hi, &mut |i, j, shift, order| {
        crate::fock::contraction_series(ctx, i, j, shift, order)
    })
}

/// [`w_correlator`] with the pair contractions supplied by `kernel`.
pub fn w_correlator_with<S: Scalar>(
    ctx: &ScalarCtx<S>,
    hw: &HighestWeight<S>,
    ins: &[WInsertion],
    hi: &[i64],
    kernel: &mut Kernel<'_, S>,
) -> Result<LaurentWindow<S>> {
    let n = ctx.n as i64;
    let vars = crate::fock::ratio_vars(ins.len());
    let zeros = vec![0; vars.len()];
    let mut total = LaurentWindow::new(vars, zeros.clone(), hi.to_vec(), ctx.zero())?;
    if ins.iter().any(|w| w.rank < 0 || w.rank > n) {
        return Ok(total);
    }
    // each insertion expands to its list of Lambda groups
    let choices: Vec<Vec<Vec<Insertion>>> = ins
        .iter()
        .map(|w| {
            if w.rank == 0 || w.rank == n {
                return vec![Vec::new()];
            }
            let sh = ops::internal_shifts(w.rank as usize);
            subsets(ctx.n, w.rank as usize)
                .into_iter()
                .map(|js| {
                    js.iter()
                        .zip(&sh)
                        .map(|(&f, &e)| Insertion {
                            flavor: f,
                            shift: w.shift + e,
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; ins.len()];
    loop {
        let groups: Vec<Vec<Insertion>> = idx.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        total = total.add(&group_correlator_with(ctx, hw, &groups, hi, kernel)?)?;
        let mut c = 0;
        loop {
            if c == idx.len() {
                return Ok(total);
            }
            idx[c] += 1;
            if idx[c] < choices[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// `<lambda| W^{r_1}_{n_1} .. W^{r_m}_{n_m} |lambda>` read off the correlator.
///
/// Level conservation requires `sum n = 0`; the partial sums must be
/// non-negative for the coefficient to lie in the expansion region.
pub fn w_mode_matrix_element<S: Scalar>(
    ctx: &ScalarCtx<S>,
    hw: &HighestWeight<S>,
    modes: &[(i64, i64)],
) -> Result<S> {
    if modes.iter().map(|m| m.1).sum::<i64>() != 0 {
        return Ok(ctx.zero());
    }
    let mut partial = Vec::new();
    let mut acc = 0;
    for &(_, n) in modes.iter().take(modes.len().saturating_sub(1)) {
        acc += n;
        if acc < 0 {
            return Ok(ctx.zero());
        }
        partial.push(acc);
    }
    let ins: Vec<WInsertion> = modes.iter().map(|&(r, _)| WInsertion { rank: r, shift: 0 }).collect();
    let w = w_correlator(ctx, hw, &ins, &partial)?;
    Ok(w.coeff(&partial))
}

/// A ket monomial `W^{r_1}_{-m_1} .. W^{r_k}_{-m_k} |lambda>` (or, read as a
/// bra, `<lambda| W^{r_1}_{m_1} .. W^{r_k}_{m_k}`), stored as `(rank, m > 0)`.
pub type WState = Vec<(i64, i64)>;

pub fn state_level(st: &WState) -> i64 {
    st.iter().map(|x| x.1).sum()
}

pub fn fmt_state(st: &WState) -> String {
    if st.is_empty() {
        return "vac".into();
    }
    st.iter()
        .map(|(r, m)| format!("W{r}[{m}]"))
        .collect::<Vec<_>>()
        .join("")
}

/// `W^1` monomials of level at most `max_level`, one per partition, plus the empty state.
pub fn w1_states(max_level: i64) -> Vec<WState> {
    fn parts(rest: i64, cap: i64, cur: &mut WState, out: &mut Vec<WState>) {
        out.push(cur.clone());
        for m in (1..=rest.min(cap)).rev() {
            cur.push((1, m));
            parts(rest - m, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    parts(max_level, max_level, &mut Vec::new(), &mut out);
    out.sort_by_key(|s| (state_level(s), s.clone()));
    out
}

/// Matrix elements of current modes on one highest-weight module, through the oscillator engine.
#[derive(Clone, Debug)]
pub struct ModeEngine<S> {
    pub fock: Fock<S>,
}

impl<S: Scalar> ModeEngine<S> {
    pub fn new(ctx: &ScalarCtx<S>, hw: &HighestWeight<S>, max_level: usize) -> Result<ModeEngine<S>> {
        Ok(ModeEngine {
            fock: Fock::new(ctx, hw, max_level)?,
        })
    }

    pub fn ctx(&self) -> &ScalarCtx<S> {
        &self.fock.ctx
    }

    /// `W^rank(s^shift z)` modes on `v`.
    pub fn w_modes(&self, rank: i64, shift: i64, v: &FockVec<S>, modes: &[i64]) -> Result<Vec<FockVec<S>>> {
        self.fock.apply_sum_modes(&w_ops(self.ctx(), rank, shift), v, modes)
    }

    pub fn w_mode(&self, rank: i64, v: &FockVec<S>, mode: i64) -> Result<FockVec<S>> {
        Ok(self.w_modes(rank, 0, v, &[mode])?.remove(0))
    }

    pub fn ket(&self, st: &WState) -> Result<FockVec<S>> {
        let mut v = FockVec::vacuum(self.ctx().one());
        for &(r, m) in st.iter().rev() {
            v = self.w_mode(r, &v, -m)?;
        }
        Ok(v)
    }

    /// `<bra| v`, with the bra's modes applied right to left.
    pub fn pair(&self, bra: &WState, v: &FockVec<S>) -> Result<S> {
        if v.level() != state_level(bra) {
            return Ok(self.ctx().zero());
        }
        let mut w = v.clone();
        for &(r, m) in bra.iter().rev() {
            w = self.w_mode(r, &w, m)?;
            if w.is_zero() {
                return Ok(self.ctx().zero());
            }
        }
        Ok(w.vacuum_coeff().cloned().unwrap_or_else(|| self.ctx().zero()))
    }

    /// Mode `n` of `∘∘W^i(s^r z) W^j(z)∘∘` between `bra` and the vector `v`,
    /// with the double sum cut at `m <= bound + extra`.
    pub fn no_mode(&self, i: i64, j: i64, r: i64, n: i64, bra: &WState, v: &FockVec<S>, extra: i64) -> Result<S> {
        let ctx = self.ctx();
        let lb = state_level(bra);
        let lk = v.level();
        let nn = ctx.n as i64;
        if lk - n != lb || !(0..=nn).contains(&i) || !(0..=nn).contains(&j) {
            return Ok(ctx.zero());
        }
        // W^j_{n+m} v and W^i_{m+1} v vanish once the mode exceeds lk;
        // <bra| W^i_{-m} vanishes once m exceeds lb.
        let bound = lk.max(lb) + n.abs() + 1 + extra;
        if bound < 0 {
            return Ok(ctx.zero());
        }
        let f = f_series(ctx, i, j, bound as usize)?;
        let rp = ctx.s_pow(r);
        let mut total = ctx.zero();
        for m in 0..=bound {
            // sum_{l<=m} f_l r^(m-l) and sum_{l<=m} f_l r^(l-m-1)
            let mut c1 = ctx.zero();
            let mut c2 = ctx.zero();
            for l in 0..=m {
                c1 = c1 + f.coeff(l as usize).clone() * rp.pow_i(m - l)?;
                c2 = c2 + f.coeff(l as usize).clone() * rp.pow_i(l - m - 1)?;
            }
            if !c1.is_zero() {
                let w = self.w_mode(j, v, n + m)?;
                if !w.is_zero() {
                    let w = self.w_mode(i, &w, -m)?;
                    total = total + c1 * self.pair(bra, &w)?;
                }
            }
            if !c2.is_zero() {
                let w = self.w_mode(i, v, m + 1)?;
                if !w.is_zero() {
                    let w = self.w_mode(j, &w, n - m - 1)?;
                    total = total + c2 * self.pair(bra, &w)?;
                }
            }
        }
        Ok(total)
    }

    /// `no_mode` with the exact-zero tail check: extending the cut by 5 changes nothing.
    pub fn composite_no_mode(&self, i: i64, j: i64, r: i64, n: i64, bra: &WState, v: &FockVec<S>) -> Result<S> {
        let base = self.no_mode(i, j, r, n, bra, v, 0)?;
        let wide = self.no_mode(i, j, r, n, bra, v, 5)?;
        if base != wide {
            return Err(Error::Window(format!(
                "mode sum for ∘∘W^{i}W^{j}∘∘ did not terminate at the level bound"
            )));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Quad};
    use crate::fock::hw_eigenvalue_w;

    fn setup(n: usize) -> (ScalarCtx<Quad>, HighestWeight<Quad>) {
        let c = ScalarCtx::generic(n, rat(3, 2), rat(5, 3)).unwrap();
        let hw = HighestWeight::from_free(&c, (1..n).map(|k| c.lift(&rat(k as i64 + 1, 3))).collect()).unwrap();
        (c, hw)
    }

    #[test]
    fn one_point_and_w0() {
        let c = ScalarCtx::<Quad>::generic(2, rat(3, 2), rat(5, 3)).unwrap();
        let vac = HighestWeight::vacuum(&c);
        let w = w_correlator(&c, &vac, &[WInsertion { rank: 1, shift: 0 }], &[]).unwrap();
        assert_eq!(w.coeff(&[]), c.s.clone() + c.s.try_inv().unwrap());
        let a = w_correlator(
            &c,
            &vac,
            &[WInsertion { rank: 0, shift: 0 }, WInsertion { rank: 1, shift: 0 }],
            &[3],
        )
        .unwrap();
        assert_eq!(a.coeff(&[0]), w.coeff(&[]));
        for k in 1..=3 {
            assert!(a.coeff(&[k]).is_zero());
        }
    }

    #[test]
    fn leading_term_is_product_of_eigenvalues() {
        let (c, hw) = setup(3);
        let w = w_correlator(
            &c,
            &hw,
            &[WInsertion { rank: 1, shift: 0 }, WInsertion { rank: 2, shift: 0 }],
            &[2],
        )
        .unwrap();
        assert_eq!(w.coeff(&[0]), hw_eigenvalue_w(&c, &hw, 1) * hw_eigenvalue_w(&c, &hw, 2));
    }

    #[test]
    fn oscillator_engine_matches_correlators() {
        for n in 2..=4usize {
            let (c, hw) = setup(n);
            let eng = ModeEngine::new(&c, &hw, 3).unwrap();
            let cases: Vec<Vec<(i64, i64)>> = vec![
                vec![(1, 0)],
                vec![(1, 1), (1, -1)],
                vec![(1, 2), (n as i64 - 1, -2)],
                vec![(1, 2), (1, -1), (1, -1)],
                vec![(1, 1), (1, 1), (1, -2)],
                vec![(1, 1), (1, 0), (1, -1)],
            ];
            for modes in cases {
                let oracle = w_mode_matrix_element(&c, &hw, &modes).unwrap();
                let mut v = FockVec::vacuum(c.one());
                for &(r, m) in modes.iter().rev() {
                    v = eng.w_mode(r, &v, m).unwrap();
                }
                let got = v.vacuum_coeff().cloned().unwrap_or(c.zero());
                assert_eq!(got, oracle, "N={n} {modes:?}");
            }
        }
    }

    #[test]
    fn states_by_level() {
        let st = w1_states(3);
        assert_eq!(st.len(), 7);
        assert!(st[0].is_empty());
        assert_eq!(fmt_state(&st[4]), "W1[1]W1[1]W1[1]");
        assert_eq!(fmt_state(&st[6]), "W1[3]");
    }

    #[test]
    fn normal_ordering_with_w0_is_the_current() {
        let (c, hw) = setup(3);
        let eng = ModeEngine::new(&c, &hw, 3).unwrap();
        let ket = eng.ket(&vec![(1, 1)]).unwrap();
        for n in -1..=1 {
            let bra: WState = if n == 0 { vec![(1, 1)] } else if n == 1 { vec![] } else { vec![(1, 2)] };
            let lhs = eng.composite_no_mode(0, 2, 3, n, &bra, &ket).unwrap();
            let rhs = eng.pair(&bra, &eng.w_mode(2, &ket, n).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}
