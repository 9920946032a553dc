//! Small dense linear algebra over a [`Scalar`] field.

use super::scalar::Scalar;
use crate::error::Result;

/// Row-reduces `m` in place, returning the pivot columns.
pub fn row_reduce<S: Scalar>(m: &mut [Vec<S>]) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].try_inv()?;
        for k in c..cols {
            m[r][k] = m[r][k].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    m[i][k] = m[i][k].clone() - f.clone() * m[r][k].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// A non-zero kernel vector of `m` (with `cols` columns), if one exists.
///
/// The free variable chosen is the last non-pivot column.
pub fn kernel_vector<S: Scalar>(m: &[Vec<S>], cols: usize, zero: &S) -> Result<Option<Vec<S>>> {
    let mut a = m.to_vec();
    let pivots = row_reduce(&mut a)?;
    let Some(free) = (0..cols).rev().find(|c| !pivots.contains(c)) else {
        return Ok(None);
    };
    let mut v = vec![zero.clone(); cols];
    v[free] = zero.one_like();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    Ok(Some(v))
}

/// Some solution of `A x = rhs`, with free variables set to zero; `None` if inconsistent.
pub fn solve_any<S: Scalar>(a: &[Vec<S>], rhs: &[S], cols: usize, zero: &S) -> Result<Option<Vec<S>>> {
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut m)?;
    if pivots.contains(&cols) {
        return Ok(None);
    }
    let mut x = vec![zero.clone(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, Rat};

    #[test]
    fn kernel_of_rank_one() {
        let m: Vec<Vec<Rat>> = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        let v = kernel_vector(&m, 2, &int(0)).unwrap().unwrap();
        assert_eq!(v, vec![int(-2), int(1)]);
    }
}
