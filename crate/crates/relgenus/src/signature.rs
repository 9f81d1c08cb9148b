use crate::cyclotomic::{prime_power, CyclotomicNumber};
use crate::enclose::certified_sign;
use crate::error::{Error, Result};
use crate::seifert::SeifertMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A root of unity ω = e^{2πi·r/m} of prime-power order: m = pᵏ, 1 ≤ r < m.
///
/// Any r in range is allowed; ω then has order m/gcd(m,r), still a prime
/// power, and arithmetic happens in the field of that exact order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimePowerRoot {
    m: u32,
    r: u32,
}

impl PrimePowerRoot {
    pub fn new(m: u32, r: u32) -> Result<Self> {
        if prime_power(m).is_none() {
            return Err(Error::BadRoot(format!("modulus {m} is not a prime power ≥ 2")));
        }
        if r == 0 || r >= m {
            return Err(Error::BadRoot(format!("numerator {r} out of range 1..{m}")));
        }
        Ok(PrimePowerRoot { m, r })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Lowest-terms exponent (μ, r̂) with ω = e^{2πi·r̂/μ}; μ is again a prime
    /// power and μ ≥ 2.
    pub fn normalized(&self) -> (u32, u32) {
        let g = num_integer::gcd(self.m, self.r);
        (self.m / g, self.r / g)
    }

    pub fn conjugate(&self) -> Self {
        PrimePowerRoot { m: self.m, r: self.m - self.r }
    }
}

/// Exact signature kernel for Hermitian matrices over a prime-power
/// cyclotomic field.
///
/// Fraction-free Bareiss elimination with diagonal pivoting; each pivot's sign
/// is decided by `certified_sign`. The loop maintains that `R/prev` is the
/// true Schur complement of the original form on the remaining indices and
/// that `f` is the certified sign of `prev`, so each nonzero diagonal pivot
/// contributes f·sign(pivot) to the signature. When every remaining diagonal
/// entry is exactly zero but the block is nonzero, a hyperbolic 2×2 pivot
/// [[0,b],[b̄,0]] (signature 0) is split off over the field.
///
/// Returns (p₊ − p₋, p₊ + p₋).
fn signature_kernel(h: &[Vec<CyclotomicNumber>]) -> Result<(i64, usize)> {
    let n = h.len();
    if n == 0 {
        return Ok((0, 0));
    }
    for (i, row) in h.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        for (j, e) in row.iter().enumerate() {
            if h[j][i].conj() != *e {
                return Err(Error::BadRoot(format!(
                    "matrix is not Hermitian at entry ({i},{j})"
                )));
            }
        }
    }
    let modulus = h[0][0].modulus();
    let mut r: Vec<Vec<CyclotomicNumber>> = h.to_vec();
    let mut prev = CyclotomicNumber::one(modulus)?;
    let mut f: i64 = 1;
    let mut sigma: i64 = 0;
    let mut rank: usize = 0;

    while !r.is_empty() {
        let m = r.len();
        if let Some(piv) = (0..m).find(|&i| !r[i][i].is_zero()) {
            if piv != 0 {
                r.swap(0, piv);
                for row in r.iter_mut() {
                    row.swap(0, piv);
                }
            }
            let pivot = r[0][0].clone();
            let s = certified_sign(&pivot) as i64;
            debug_assert!(s != 0);
            sigma += f * s;
            rank += 1;
            // one field inversion per elimination step; every entry of the
            // update divides exactly by `prev` (Sylvester's identity), so
            // multiplication by the inverse is exact division
            let prev_inv = prev
                .inverse()
                .ok_or_else(|| Error::Internal("division by zero in elimination".into()))?;
            let mut next = Vec::with_capacity(m - 1);
            for i in 1..m {
                let mut row = Vec::with_capacity(m - 1);
                for j in 1..m {
                    let num = pivot.mul(&r[i][j]).sub(&r[i][0].mul(&r[0][j]));
                    row.push(num.mul(&prev_inv));
                }
                next.push(row);
            }
            r = next;
            prev = pivot;
            f = s;
        } else {
            // all diagonal entries are exactly zero
            let mut witness = None;
            'scan: for i in 0..m {
                for j in i + 1..m {
                    if !r[i][j].is_zero() {
                        witness = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = witness else {
                break; // remaining form is identically zero
            };
            // pass to the true Schur complement S = R/prev, then split off the
            // rank-2 hyperbolic block at (i, j): signature contribution 0
            let prev_inv = prev
                .inverse()
                .ok_or_else(|| Error::Internal("zero previous pivot".into()))?;
            let s_mat: Vec<Vec<CyclotomicNumber>> =
                r.iter().map(|row| row.iter().map(|e| e.mul(&prev_inv)).collect()).collect();
            let b = s_mat[i][j].clone();
            let b_inv = b.inverse().ok_or_else(|| Error::Internal("zero block pivot".into()))?;
            let bbar_inv = b_inv.conj();
            let keep: Vec<usize> = (0..m).filter(|&t| t != i && t != j).collect();
            let mut next = Vec::with_capacity(m - 2);
            for &k in &keep {
                let mut row = Vec::with_capacity(m - 2);
                for &l in &keep {
                    // S'' = S − u·(1/b̄)·v̄ᵀ − v·(1/b)·ūᵀ with u = S[·][i], v = S[·][j]
                    let t1 = s_mat[k][i].mul(&bbar_inv).mul(&s_mat[j][l]);
                    let t2 = s_mat[k][j].mul(&b_inv).mul(&s_mat[i][l]);
                    row.push(s_mat[k][l].sub(&t1).sub(&t2));
                }
                next.push(row);
            }
            r = next;
            prev = CyclotomicNumber::one(modulus)?;
            f = 1;
            rank += 2;
        }
    }
    Ok((sigma, rank))
}

/// Signature p₊ − p₋ of a Hermitian cyclotomic matrix (H = H* exactly).
pub fn hermitian_signature(h: &[Vec<CyclotomicNumber>]) -> Result<i64> {
    signature_kernel(h).map(|(sigma, _)| sigma)
}

/// Builds the Hermitian pencil (1−ω)A + (1−ω̄)Aᵀ over the field of ω.
fn hermitian_pencil(a: &SeifertMatrix, root: &PrimePowerRoot) -> Result<Vec<Vec<CyclotomicNumber>>> {
    let (mu, rhat) = root.normalized();
    let omega = CyclotomicNumber::root_power(mu, rhat)?;
    let one = CyclotomicNumber::one(mu)?;
    let c = one.sub(&omega); // 1 − ω
    let cbar = c.conj(); // 1 − ω̄
    let n = a.size();
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let aij = BigRational::from_integer(BigInt::from(a.entry(i, j)));
            let aji = BigRational::from_integer(BigInt::from(a.entry(j, i)));
            row.push(c.scale(&aij).add(&cbar.scale(&aji)));
        }
        h.push(row);
    }
    Ok(h)
}

/// Levine–Tristram signature σ_K(ω): the signature of (1−ω)A + (1−ω̄)Aᵀ.
///
/// Δ(1) = 1 forces Δ(ω) ≠ 0 at prime-power roots of unity, so the pencil is
/// nondegenerate; a rank deficit is reported as an internal-invariant failure.
pub fn levine_tristram(a: &SeifertMatrix, root: &PrimePowerRoot) -> Result<i64> {
    let h = hermitian_pencil(a, root)?;
    let (sigma, rank) = signature_kernel(&h)?;
    if rank != a.size() {
        return Err(Error::Internal(format!(
            "Levine–Tristram pencil degenerate at (m,r)=({},{}) — rank {} of {}",
            root.m(),
            root.r(),
            rank,
            a.size()
        )));
    }
    debug_assert!(sigma.rem_euclid(2) == 0);
    Ok(sigma)
}

/// All prime powers in [2, m_max].
pub fn prime_powers_up_to(m_max: u32) -> Vec<u32> {
    (2..=m_max).filter(|&m| prime_power(m).is_some()).collect()
}

/// Levine–Tristram signatures at every prime-power root of unity of order
/// ≤ max_modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureProfile {
    max_modulus: u32,
    values: BTreeMap<(u32, u32), i64>,
}

impl SignatureProfile {
    pub fn max_modulus(&self) -> u32 {
        self.max_modulus
    }

    pub fn get(&self, m: u32, r: u32) -> Option<i64> {
        self.values.get(&(m, r)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    /// Largest stored value (the relevant side of every window inequality for
    /// mirrored knots) — None for an empty profile.
    pub fn max_value(&self) -> Option<i64> {
        self.values.values().max().copied()
    }

    pub fn min_value(&self) -> Option<i64> {
        self.values.values().min().copied()
    }
}

/// Computes the profile over all prime powers m ≤ max_modulus and all
/// 1 ≤ r ≤ m−1. Pairs with equal normalized exponent share one evaluation,
/// as do conjugate exponents — H(ω̄) is the entrywise conjugate of H(ω), so
/// σ_K(ω̄) = σ_K(ω). Distinct evaluations run in parallel.
pub fn signature_profile(a: &SeifertMatrix, max_modulus: u32) -> Result<SignatureProfile> {
    if max_modulus < 2 {
        return Err(Error::BadRoot(format!(
            "profile modulus bound must be ≥ 2, got {max_modulus}"
        )));
    }
    let mut primitive: BTreeMap<(u32, u32), Vec<(u32, u32)>> = BTreeMap::new();
    for m in prime_powers_up_to(max_modulus) {
        for r in 1..m {
            let root = PrimePowerRoot::new(m, r).expect("enumerated pair is valid");
            let (mu, rhat) = root.normalized();
            primitive.entry((mu, rhat.min(mu - rhat))).or_default().push((m, r));
        }
    }
    let jobs: Vec<(u32, u32)> = primitive.keys().copied().collect();
    let computed: Vec<Result<i64>> = jobs
        .par_iter()
        .map(|&(mu, rhat)| levine_tristram(a, &PrimePowerRoot::new(mu, rhat)?))
        .collect();
    let mut values = BTreeMap::new();
    for (key, result) in jobs.iter().zip(computed) {
        let sigma = result?;
        for &pair in &primitive[key] {
            values.insert(pair, sigma);
        }
    }
    Ok(SignatureProfile { max_modulus, values })
}

/// Exact signature of a symmetric integer matrix (used for intersection
/// forms), through the same certified kernel in the degenerate field μ = 2.
pub(crate) fn integer_symmetric_signature(q: &[Vec<i64>]) -> Result<i64> {
    let n = q.len();
    let mut h = Vec::with_capacity(n);
    for row in q {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        let mut out = Vec::with_capacity(n);
        for &e in row {
            out.push(CyclotomicNumber::from_rational(
                2,
                BigRational::from_integer(BigInt::from(e)),
            )?);
        }
        h.push(out);
    }
    hermitian_signature(&h)
}
