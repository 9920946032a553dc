//! Vacuum-type correlators of `Lambda` products by pairwise contraction.

use crate::algebra::{LaurentWindow, PowerSeries, Scalar, ScalarCtx};
use crate::error::{Error, Result};

use super::boson::{boson_commutator, HighestWeight};

/// `Lambda_flavor(s^shift v)` at the formal point of its group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub flavor: usize,
    pub shift: i64,
}

/// `C_{ij}(s^shift y)` as a power series in `y`.
pub fn contraction_series<S: Scalar>(
    ctx: &ScalarCtx<S>,
    i: usize,
    j: usize,
    shift: i64,
    order: usize,
) -> Result<PowerSeries<S>> {
    let mut expo = vec![ctx.zero()];
    for n in 1..=order as i64 {
        expo.push(boson_commutator(ctx, i, j, n)? * ctx.s_pow(shift * n));
    }
    PowerSeries::new(expo)?.exp()
}

/// Ratio variable names `x1..x{g-1}` for `g` groups.
pub fn ratio_vars(groups: usize) -> Vec<String> {
    (1..groups).map(|c| format!("x{c}")).collect()
}

/// `<lambda| :G_1(v_1): :G_2(v_2): ... |lambda>` where each group `G_a` is a
/// normal-ordered product of `Lambda`s at one formal point `v_a`.
///
/// The result is a series in `x_c = v_{c+1}/v_c` truncated at `hi[c]`.
/// Insertions inside one group are not contracted with each other.
pub fn group_correlator<S: Scalar>(
    ctx: &ScalarCtx<S>,
    hw: &HighestWeight<S>,
    groups: &[Vec<Insertion>],
    hi: &[i64],
) -> Result<LaurentWindow<S>> {
    group_correlator_with(ctx, hw, groups, hi, &mut |i, j, shift, order| {
        contraction_series(ctx, i, j, shift, order)
    })
}

/// Source of the pair contractions `C_{ij}(s^shift y)`, e.g. a cache.
pub type Kernel<'a, S> = dyn FnMut(usize, usize, i64, usize) -> Result<PowerSeries<S>> + 'a;

/// [`group_correlator`] with the contraction series supplied by `kernel`.
pub fn group_correlator_with<S: Scalar>(
    ctx: &ScalarCtx<S>,
    hw: &HighestWeight<S>,
    groups: &[Vec<Insertion>],
    hi: &[i64],
    kernel: &mut Kernel<'_, S>,
) -> Result<LaurentWindow<S>> {
    let g = groups.len();
    if hi.len() + 1 != g.max(1) {
        return Err(Error::Window(format!(
            "{} ratio bounds for {} groups",
            hi.len(),
            g
        )));
    }
    let vars = ratio_vars(g);
    let zeros = vec![0; vars.len()];
    let mut acc = LaurentWindow::new(vars.clone(), zeros.clone(), hi.to_vec(), ctx.zero())?;
    let mut zm = ctx.one();
    for group in groups {
        for ins in group {
            if ins.flavor == 0 || ins.flavor > ctx.n {
                return Err(Error::InvalidArgument(format!("flavor {} out of range", ins.flavor)));
            }
            zm = zm * hw.lambda_zero_mode(ctx, ins.flavor);
        }
    }
    acc.add_term(&zeros, zm);
    for a in 0..g {
        for b in a + 1..g {
            // every ratio variable x_a..x_{b-1} carries the same exponent
            let order = hi[a..b].iter().copied().min().unwrap_or(0).max(0) as usize;
            for ia in &groups[a] {
                for ib in &groups[b] {
                    let c = kernel(ia.flavor, ib.flavor, ib.shift - ia.shift, order)?;
                    let mut w = LaurentWindow::new(vars.clone(), zeros.clone(), hi.to_vec(), ctx.zero())?;
                    for (k, coeff) in c.coeffs().iter().enumerate() {
                        let mut e = zeros.clone();
                        for x in e.iter_mut().take(b).skip(a) {
                            *x = k as i64;
                        }
                        w.add_term(&e, coeff.clone());
                    }
                    acc = acc.mul(&w)?;
                }
            }
        }
    }
    Ok(acc)
}

/// `<lambda| Lambda_{i_1}(u_1) ... Lambda_{i_m}(u_m) |lambda>` with one
/// insertion per formal point, `u_a = s^shift_a v_a`.
pub fn lambda_correlator<S: Scalar>(
    ctx: &ScalarCtx<S>,
    hw: &HighestWeight<S>,
    ins: &[Insertion],
    hi: &[i64],
) -> Result<LaurentWindow<S>> {
    let groups: Vec<Vec<Insertion>> = ins.iter().map(|i| vec![*i]).collect();
    group_correlator(ctx, hw, &groups, hi)
}

/// Multiplies a window by `f(s^shift x_c)`, a power series in a single ratio variable.
pub fn times_ratio_series<S: Scalar>(
    w: &LaurentWindow<S>,
    var: usize,
    f: &PowerSeries<S>,
) -> Result<LaurentWindow<S>> {
    let zeros = vec![0; w.vars().len()];
    let mut fw = LaurentWindow::new(w.vars().to_vec(), zeros.clone(), w.hi().to_vec(), f.coeff(0).zero_like())?;
    for (k, c) in f.coeffs().iter().enumerate() {
        let mut e = zeros.clone();
        e[var] = k as i64;
        fw.add_term(&e, c.clone());
    }
    w.mul(&fw)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Quad};

    #[test]
    fn one_and_two_point() {
        let c = ScalarCtx::<Quad>::generic(2, rat(3, 2), rat(5, 3)).unwrap();
        let vac = HighestWeight::vacuum(&c);
        let one = lambda_correlator(&c, &vac, &[Insertion { flavor: 1, shift: 0 }], &[]).unwrap();
        assert_eq!(one.coeff(&[]), c.s.clone());
        let empty = lambda_correlator(&c, &vac, &[], &[]).unwrap();
        assert!(empty.coeff(&[]).is_one());
        let two = lambda_correlator(
            &c,
            &vac,
            &[Insertion { flavor: 1, shift: 0 }, Insertion { flavor: 1, shift: 0 }],
            &[4],
        )
        .unwrap();
        let kernel = contraction_series(&c, 1, 1, 0, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(two.coeff(&[k]), kernel.coeff(k as usize).clone() * c.p.clone());
        }
    }
}
