use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::zmat;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Seifert matrix of a knot: the linking form of a basis of curves on a
/// Seifert surface. Always square of even size 2h, with A − Aᵀ unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::BadSeifert("matrix is not square".into()));
        }
        if n % 2 != 0 {
            return Err(Error::BadSeifert(format!(
                "size {n} is odd; a Seifert matrix has even size"
            )));
        }
        let skew: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(entries[i][j] - entries[j][i])).collect())
            .collect();
        if zmat::det(&skew) != BigInt::one() {
            return Err(Error::BadSeifert("det(A − Aᵀ) ≠ 1".into()));
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Genus of the underlying Seifert surface (half the matrix size).
    pub fn genus(&self) -> u32 {
        (self.size() / 2) as u32
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Seifert matrix of the mirror image: −Aᵀ. Leaves the Alexander
    /// polynomial unchanged and negates every signature.
    pub fn mirror(&self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| -self.entries[j][i]).collect())
            .collect();
        SeifertMatrix { entries }
    }

    /// The Alexander polynomial Δ(t) ≐ det(A − tAᵀ), normalized so that
    /// Δ(t) = Δ(t⁻¹) and Δ(1) = 1.
    ///
    /// det(A − tAᵀ) is found by evaluating at t = 0..2h (integer Bareiss
    /// determinants) and interpolating exactly; the palindromic identity
    /// t^{2h}·f(t⁻¹) = f(t) then makes the shift by t^{−h} symmetric, and
    /// f(1) = det(A − Aᵀ) = 1 pins the sign with no further normalization.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        let n = self.size();
        if n == 0 {
            return LaurentPoly::one();
        }
        let values: Vec<BigInt> = (0..=n as i64)
            .map(|t| {
                let m: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                BigInt::from(self.entries[i][j])
                                    - BigInt::from(t) * BigInt::from(self.entries[j][i])
                            })
                            .collect()
                    })
                    .collect();
                zmat::det(&m)
            })
            .collect();
        let coeffs = interpolate_integer_poly(&values);
        let f = LaurentPoly::from_coeffs(0, coeffs);
        let delta = f.shift(-(n as i64) / 2);
        debug_assert!(delta.is_symmetric(), "det(A − tAᵀ) must be palindromic");
        debug_assert!(delta.eval_at_one().is_one());
        delta
    }

    /// Knot determinant D = |Δ(−1)| and the Arf invariant via the mod-8
    /// criterion: Arf = 0 iff D ≡ ±1 (mod 8).
    pub fn determinant_and_arf(&self) -> (BigUint, u8) {
        let d = self.alexander_polynomial().eval_at_minus_one();
        let det = d.magnitude().clone();
        let rem = (&det % 8u32).to_u32_digits().first().copied().unwrap_or(0);
        assert!(rem % 2 == 1, "knot determinant must be odd");
        let arf = if rem == 1 || rem == 7 { 0 } else { 1 };
        (det, arf)
    }
}

/// Exact Lagrange interpolation through (i, values[i]) for i = 0..N, returning
/// the integer coefficient vector of the unique degree-≤N polynomial. Panics
/// if the interpolant is not integral (never happens for determinants of
/// integer matrix pencils).
fn interpolate_integer_poly(values: &[BigInt]) -> Vec<BigInt> {
    let k = values.len();
    debug_assert!(k >= 1);
    // full = Π_{j=0..k-1} (x − j), integer coefficients, degree k
    let mut full = vec![BigInt::one()];
    for j in 0..k as i64 {
        let mut next = vec![BigInt::zero(); full.len() + 1];
        for (d, c) in full.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= BigInt::from(j) * c;
        }
        full = next;
    }
    let mut acc = vec![BigRational::zero(); k];
    for (i, y) in values.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        // q = full / (x − i) by synthetic division (exact)
        let mut q = vec![BigInt::zero(); full.len() - 1];
        let mut carry = BigInt::zero();
        for d in (0..full.len() - 1).rev() {
            let c = &full[d + 1] + BigInt::from(i as i64) * &carry;
            q[d] = c.clone();
            carry = c;
        }
        // denom = Π_{j≠i} (i − j) = (−1)^{k−1−i} · i! · (k−1−i)!
        let mut denom = BigInt::one();
        for j in 0..k {
            if j != i {
                denom *= BigInt::from(i as i64 - j as i64);
            }
        }
        let scale = BigRational::new(y.clone(), denom);
        for (d, c) in q.iter().enumerate() {
            acc[d] += &scale * BigRational::from_integer(c.clone());
        }
    }
    acc.into_iter()
        .map(|c| {
            assert!(c.denom().is_one(), "interpolant must have integer coefficients");
            c.to_integer()
        })
        .collect()
}
