//! Internal exact integer-matrix helpers (Bareiss determinants).

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) fn from_i64(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|row| row.iter().map(|&e| BigInt::from(e)).collect()).collect()
}

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination with row pivoting. Exact for any size; every intermediate
/// division is exact by construction.
pub(crate) fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, rem) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}
