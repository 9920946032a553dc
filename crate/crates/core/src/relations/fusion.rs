//! Fusion: clearing the pole of `f W W` at a delta-term point and taking the limit.

use crate::algebra::{Quad, Scalar};
use crate::error::Result;
use crate::report::{CheckRecord, Checker};
use crate::structfn::{gamma_at, gamma_product, relation_prefactor};
use crate::wcurrents::{fmt_state, regular_product, state_level, w1_states, w_ops, Composite, Factor, ModeEngine};

use super::RelationCase;

pub const SUITE: &str = "fusion";

/// `prod_{l=1}^{i-1} gamma(p^(l+1/2))` continued to `i = 0` as `1/gamma(p^(1/2)) = 0`.
pub fn fusion_gamma_product(ctx: &crate::algebra::ScalarCtx<Quad>, i: i64) -> Result<Quad> {
    if i >= 1 {
        return gamma_product(ctx, i);
    }
    // gamma(p^(1/2)) has a simple pole, so its inverse vanishes
    match gamma_at(ctx, 1) {
        Err(crate::error::Error::Pole(_)) => Ok(ctx.zero()),
        Err(e) => Err(e),
        Ok(g) => g.try_inv(),
    }
}

fn compare(case: &RelationCase, ck: &mut Checker, eng: &ModeEngine<Quad>, lhs: &Composite<Quad>, rhs: &Composite<Quad>) -> Result<()> {
    let states = w1_states(case.level);
    for kst in &states {
        let kv = eng.ket(kst)?;
        for bra in &states {
            let n = kv.level() - state_level(bra);
            if n.abs() > case.window {
                continue;
            }
            let l = eng.pair(bra, &lhs.apply_modes(&eng.fock, &kv, &[n])?.remove(0))?;
            let r = eng.pair(bra, &rhs.apply_modes(&eng.fock, &kv, &[n])?.remove(0))?;
            ck.eq(|| format!("n={n}, <{}| .. |{}>", fmt_state(bra), fmt_state(kst)), &r, &l);
        }
    }
    Ok(())
}

/// `lim (1 - s^{±(j+1)} z2/z1) f^{1,j} W^1(z1) W^j(z2) = ∓(1-q)(1-t^-1)/(1-p) W^{j+1}(s^{±1} z2)`
pub fn verify_fusion_w1wj(case: &RelationCase, j: i64, sign: i64) -> CheckRecord {
    let mut ck = case
        .checker(SUITE, "fusion-w1wj")
        .case("j", j)
        .case("sign", if sign > 0 { "+" } else { "-" });
    let res = (|| -> Result<()> {
        let eng = case.engine()?;
        let ctx = eng.ctx().clone();
        let lhs = regular_product(
            &ctx,
            Factor { rank: 1, shift: sign * (j + 1) },
            Factor { rank: j, shift: 0 },
            &[(ctx.s_pow(sign * (j + 1)), 1)],
            &ctx.one(),
        )?;
        let c = relation_prefactor(&ctx)?;
        let rhs = Composite::from_ops(w_ops(&ctx, j + 1, sign)).scale(&(ctx.int(sign) * c));
        compare(case, &mut ck, &eng, &lhs, &rhs)
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

/// `lim (1 - s^{∓(j+i)} z1/z2) f^{j,i} W^j(z2) W^i(z1) = ±(1-q)(1-t^-1)/(1-p) prod gamma W^{j+i}(s^{∓j} z1)`
pub fn verify_fusion_wiwj(case: &RelationCase, i: i64, j: i64, sign: i64) -> CheckRecord {
    let mut ck = case
        .checker(SUITE, "fusion-wiwj")
        .case("i", i)
        .case("j", j)
        .case("sign", if sign > 0 { "+" } else { "-" });
    if i == 0 {
        ck.assume("empty gamma product at i=0 read as 1/gamma(p^(1/2)) = 0");
    }
    let res = (|| -> Result<()> {
        let eng = case.engine()?;
        let ctx = eng.ctx().clone();
        let lhs = regular_product(
            &ctx,
            Factor { rank: j, shift: -sign * (j + i) },
            Factor { rank: i, shift: 0 },
            &[(ctx.s_pow(-sign * (j + i)), 1)],
            &ctx.one(),
        )?;
        let cprime = -relation_prefactor(&ctx)?;
        let coef = ctx.int(sign) * cprime * fusion_gamma_product(&ctx, i)?;
        let rhs = Composite::from_ops(w_ops(&ctx, j + i, -sign * j)).scale(&coef);
        compare(case, &mut ck, &eng, &lhs, &rhs)
    })();
    if let Err(e) = res {
        ck.error("evaluation", &e);
    }
    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::tests::case;

    #[test]
    fn n2_fuses_to_a_scalar() {
        for sign in [1, -1] {
            let rec = verify_fusion_w1wj(&case(2, 2, 2), 1, sign);
            assert!(rec.passed(), "{rec:?}");
        }
    }

    #[test]
    fn general_fusion_n3() {
        for sign in [1, -1] {
            let rec = verify_fusion_wiwj(&case(3, 2, 2), 1, 2, sign);
            assert!(rec.passed(), "{rec:?}");
        }
    }
}
