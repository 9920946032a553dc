//! Rational reconstruction of power series (Padé approximation).

use super::poly::Poly;
use super::linalg::solve_any;
use super::scalar::Scalar;
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// A reduced rational function `num/den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<S> {
    pub num: Poly<S>,
    pub den: Poly<S>,
}

/// Finds `A/B` with `deg A <= deg_num`, `deg B <= deg_den`, `B(0) = 1` and
/// `B f - A = 0` on every coefficient of `f`.
///
/// At least `deg_num + deg_den + 2` coefficients are required; the ones past
/// `deg_num + deg_den` serve as a consistency check.
pub fn rational_reconstruct<S: Scalar>(
    f: &PowerSeries<S>,
    deg_num: usize,
    deg_den: usize,
) -> Result<RationalFunction<S>> {
    let len = f.order() + 1;
    if len < deg_num + deg_den + 2 {
        return Err(Error::Reconstruction(format!(
            "{len} coefficients cannot determine and check a [{deg_num}/{deg_den}] approximant"
        )));
    }
    let zero = f.coeff(0).zero_like();
    let c = |k: i64| -> S {
        if k < 0 {
            zero.clone()
        } else {
            f.coeff(k as usize).clone()
        }
    };
    // b_0 = 1 and sum_{j>=1} b_j c_{k-j} = -c_k for deg_num < k < len
    let rows: Vec<Vec<S>> = (deg_num + 1..len)
        .map(|k| (1..=deg_den).map(|j| c(k as i64 - j as i64)).collect())
        .collect();
    let rhs: Vec<S> = (deg_num + 1..len).map(|k| -c(k as i64)).collect();
    let tail = solve_any(&rows, &rhs, deg_den, &zero)?
        .ok_or_else(|| Error::Reconstruction(format!("no consistent [{deg_num}/{deg_den}] approximant")))?;
    let mut b = vec![zero.one_like()];
    b.extend(tail);
    let a: Vec<S> = (0..=deg_num)
        .map(|k| {
            (0..=deg_den.min(k)).fold(zero.clone(), |acc, j| acc + b[j].clone() * c((k - j) as i64))
        })
        .collect();
    let num = Poly::new(a, zero.clone());
    let den = Poly::new(b, zero.clone());
    let g = num.gcd(&den)?;
    if g.degree().unwrap_or(0) > 0 {
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        let s = den.coeff(0).try_inv()?;
        return Ok(RationalFunction {
            num: num.scale(&s),
            den: den.scale(&s),
        });
    }
    Ok(RationalFunction { num, den })
}

/// Searches degrees in order of increasing total degree for a consistent approximant.
pub fn reconstruct_minimal<S: Scalar>(f: &PowerSeries<S>, max_deg: usize) -> Result<RationalFunction<S>> {
    let len = f.order() + 1;
    for total in 0..=2 * max_deg {
        for dd in 0..=total.min(max_deg) {
            let dn = total - dd;
            if dn > max_deg || dn + dd + 2 > len {
                continue;
            }
            if let Ok(r) = rational_reconstruct(f, dn, dd) {
                return Ok(r);
            }
        }
    }
    Err(Error::Reconstruction(format!(
        "no rational function of degree <= {max_deg} matches {len} coefficients"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat, Rat};

    #[test]
    fn geometric_series() {
        let f = PowerSeries::new((0..8).map(|k| num_traits::pow(rat(1, 2), k)).collect::<Vec<Rat>>())
            .unwrap();
        let r = reconstruct_minimal(&f, 3).unwrap();
        assert_eq!(r.num.coeffs(), &[int(1)]);
        assert_eq!(r.den.coeffs(), &[int(1), rat(-1, 2)]);
    }

    #[test]
    fn too_few_coefficients() {
        let f = PowerSeries::new(vec![int(1), int(1)]).unwrap();
        assert!(rational_reconstruct(&f, 1, 1).is_err());
    }
}
