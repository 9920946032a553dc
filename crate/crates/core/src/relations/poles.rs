//! Pole locations of `<lambda| f^{i,j}(z2/z1) W^i(z1) W^j(z2) |lambda>` by rational reconstruction.

use crate::algebra::{reconstruct_minimal, Poly, PowerSeries, Quad, Scalar, ScalarCtx};
use crate::error::Result;
use crate::fock::HighestWeight;
use crate::report::{CheckRecord, Checker};
use crate::structfn::f_series;
use crate::wcurrents::{w_correlator, WInsertion};

use super::pole_shifts;

pub const SUITE: &str = "poles";

/// `f^{i,j}(x) <lambda| W^i(z1) W^j(z2) |lambda>` through `x^order`.
pub fn weighted_two_point(ctx: &ScalarCtx<Quad>, hw: &HighestWeight<Quad>, i: i64, j: i64, order: usize) -> Result<PowerSeries<Quad>> {
    let w = w_correlator(
        ctx,
        hw,
        &[WInsertion { rank: i, shift: 0 }, WInsertion { rank: j, shift: 0 }],
        &[order as i64],
    )?;
    let series = PowerSeries::new((0..=order as i64).map(|k| w.coeff(&[k])).collect())?;
    Ok(series.mul(&f_series(ctx, i, j, order)?))
}

/// Divides out `(x - root)` as often as it goes.
fn strip_root(p: &Poly<Quad>, root: &Quad) -> Result<(Poly<Quad>, usize)> {
    let lin = Poly::new(vec![-root.clone(), root.one_like()], root.zero_like());
    let mut cur = p.clone();
    let mut k = 0;
    while cur.degree().unwrap_or(0) > 0 {
        let (q, r) = cur.div_rem(&lin)?;
        if !r.is_zero() {
            break;
        }
        cur = q;
        k += 1;
    }
    Ok((cur, k))
}

/// Reconstructs the vacuum-type two-point function and compares its poles with
/// `x = s^{±(j-i+2k)}`, `1 <= k <= min(i, N-j)`.
pub fn verify_poles(ctx: &ScalarCtx<Quad>, hw: &HighestWeight<Quad>, label: &str, i: i64, j: i64, order: usize) -> CheckRecord {
    let mut ck = Checker::new(SUITE, "pole-set")
        .case("N", ctx.n)
        .case("point", label)
        .case("i", i)
        .case("j", j);
    ck.truncation("x_order", order as i64);
    ck.note("reconstructed");
    let series = match weighted_two_point(ctx, hw, i, j, order) {
        Ok(s) => s,
        Err(e) => {
            ck.error("series", &e);
            return ck.finish();
        }
    };
    let max_deg = (order - 2) / 2;
    let rf = match reconstruct_minimal(&series, max_deg) {
        Ok(r) => r,
        Err(e) => {
            ck.inconclusive(format!("no rational approximant up to degree {max_deg}: {e}"));
            return ck.finish();
        }
    };
    let deg_n = rf.num.degree().unwrap_or(0);
    let deg_d = rf.den.degree().unwrap_or(0);
    ck.note(format!("approximant degrees [{deg_n}/{deg_d}]"));
    if deg_n + deg_d + 4 > order {
        ck.inconclusive("approximant too close to the series length to be trusted");
    }
    let mut den = rf.den.clone();
    for e in pole_shifts(ctx.n, i, j) {
        let (rest, k) = match strip_root(&den, &ctx.s_pow(e)) {
            Ok(x) => x,
            Err(err) => {
                ck.error("division", &err);
                return ck.finish();
            }
        };
        ck.holds(|| format!("x = s^{e} is a pole"), k > 0);
        den = rest;
    }
    ck.holds(
        || format!("no poles outside the predicted set (leftover degree {})", den.degree().unwrap_or(0)),
        den.degree().unwrap_or(0) == 0,
    );
    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn n2_poles_at_p_and_inverse() {
        let c = ScalarCtx::<Quad>::generic(2, rat(3, 2), rat(5, 3)).unwrap();
        let vac = HighestWeight::vacuum(&c);
        let rec = verify_poles(&c, &vac, "test", 1, 1, 16);
        assert!(rec.passed(), "{rec:?}");
        let rec = verify_poles(&c, &vac, "test", 1, 2, 10);
        assert!(rec.passed(), "{rec:?}");
    }
}
