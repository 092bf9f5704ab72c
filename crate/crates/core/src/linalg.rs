//! Exact dense linear algebra over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Inverse of an integer matrix stored as `numer / denom` with integer `numer`.
#[derive(Clone, Debug)]
pub struct ScaledInverse {
    pub numer: Vec<Vec<BigInt>>,
    pub denom: BigInt,
}

impl ScaledInverse {
    /// `x^T M^{-1} x` for an integer vector `x`.
    pub fn quadratic_form(&self, x: &[BigInt]) -> Rational {
        let mut total = BigInt::zero();
        for (row, xi) in self.numer.iter().zip(x) {
            if xi.is_zero() {
                continue;
            }
            let dot: BigInt = row.iter().zip(x).map(|(a, b)| a * b).sum();
            total += dot * xi;
        }
        Rational::new(total, self.denom.clone())
    }
}

/// Inverts a square integer matrix by fraction-free Gauss–Jordan elimination.
///
/// Every intermediate entry is a minor of the augmented matrix, so all
/// divisions are exact.
pub fn invert_fraction_free(matrix: &[Vec<BigInt>]) -> Result<ScaledInverse> {
    let m = matrix.len();
    if matrix.iter().any(|row| row.len() != m) {
        return Err(Error::Domain("matrix is not square".into()));
    }
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for c in 0..m {
        let pivot_row = (c..m)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::Domain("matrix is singular".into()))?;
        if pivot_row != c {
            a.swap(pivot_row, c);
        }
        let pivot_line = a[c].clone();
        let p = pivot_line[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c {
                continue;
            }
            let factor = row[c].clone();
            for (j, entry) in row.iter_mut().enumerate() {
                let num = &p * &*entry - &factor * &pivot_line[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                *entry = q;
            }
        }
        prev = p;
    }
    // left block is now det * I, right block det * M^{-1}
    let det = a[0][0].clone();
    let mut lcm = BigInt::one();
    let reduced: Vec<Vec<Rational>> = a
        .iter()
        .map(|row| {
            row[m..]
                .iter()
                .map(|x| {
                    let r = Rational::new(x.clone(), det.clone());
                    lcm = lcm.lcm(r.denom());
                    r
                })
                .collect()
        })
        .collect();
    let numer = reduced
        .iter()
        .map(|row| {
            row.iter()
                .map(|r| r.numer() * (&lcm / r.denom()))
                .collect()
        })
        .collect();
    Ok(ScaledInverse {
        numer,
        denom: lcm.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn inverts_small_matrices() {
        let m = to_big(&[&[2, 1], &[1, 3]]);
        let inv = invert_fraction_free(&m).unwrap();
        // inverse is [[3,-1],[-1,2]] / 5
        assert_eq!(inv.denom, BigInt::from(5));
        assert_eq!(inv.numer, to_big(&[&[3, -1], &[-1, 2]]));
        let x = [BigInt::from(1), BigInt::from(2)];
        assert_eq!(inv.quadratic_form(&x), Rational::new(7.into(), 5.into()));
    }

    #[test]
    fn needs_row_swap() {
        let m = to_big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 4]]);
        let inv = invert_fraction_free(&m).unwrap();
        assert_eq!(inv.denom, BigInt::from(4));
        assert_eq!(inv.numer, to_big(&[&[0, 4, 0], &[4, 0, 0], &[0, 0, 1]]));
    }

    #[test]
    fn singular_is_rejected() {
        let m = to_big(&[&[1, 2], &[2, 4]]);
        assert!(invert_fraction_free(&m).is_err());
    }

    #[test]
    fn product_is_identity() {
        let m = to_big(&[&[4, -2, 1, 0], &[3, 6, -4, 2], &[2, 1, 8, -1], &[0, 1, 1, 5]]);
        let inv = invert_fraction_free(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let s: BigInt = (0..4).map(|t| &m[i][t] * &inv.numer[t][j]).sum();
                let expected = if i == j { inv.denom.clone() } else { BigInt::zero() };
                assert_eq!(s, expected);
            }
        }
    }
}
