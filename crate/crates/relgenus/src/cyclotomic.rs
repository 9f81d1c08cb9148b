use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Decomposes m as p^k (p prime, k ≥ 1), if it is a prime power ≥ 2.
pub fn prime_power(m: u32) -> Option<(u32, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..).find(|d| m % d == 0).expect("m ≥ 2 has a least divisor");
    let mut k = 0;
    let mut rest = m;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Euler φ(pᵏ) = (p−1)·p^{k−1}.
fn phi_of(p: u32, k: u32) -> usize {
    ((p - 1) * p.pow(k - 1)) as usize
}

/// An element of the cyclotomic field ℚ(ζ_μ) for a prime-power μ, written in
/// the power basis 1, ζ, …, ζ^{φ(μ)−1} with the canonical embedding
/// ζ_μ = e^{2πi/μ}.
///
/// Reduction is against Φ_{pᵏ}(x) = Σ_{i<p} x^{i·p^{k−1}}; complex conjugation
/// is the Galois map ζ ↦ ζ⁻¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicNumber {
    modulus: u32,
    p: u32,
    k: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    fn reduced(modulus: u32, p: u32, k: u32, mut raw: Vec<BigRational>) -> Self {
        let phi = phi_of(p, k);
        let step = p.pow(k - 1) as usize;
        // x^d (d ≥ φ) rewrites as −Σ_{i=0}^{p−2} x^{d−φ+i·step}
        for d in (phi..raw.len()).rev() {
            let c = std::mem::replace(&mut raw[d], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..(p - 1) as usize {
                let t = &raw[d - phi + i * step] - &c;
                raw[d - phi + i * step] = t;
            }
        }
        raw.truncate(phi);
        raw.resize(phi, BigRational::zero());
        CyclotomicNumber { modulus, p, k, coeffs: raw }
    }

    pub fn zero(modulus: u32) -> Result<Self> {
        let (p, k) = prime_power(modulus)
            .ok_or_else(|| Error::BadRoot(format!("{modulus} is not a prime power ≥ 2")))?;
        Ok(CyclotomicNumber { modulus, p, k, coeffs: vec![BigRational::zero(); phi_of(p, k)] })
    }

    pub fn from_rational(modulus: u32, value: BigRational) -> Result<Self> {
        let mut z = Self::zero(modulus)?;
        z.coeffs[0] = value;
        Ok(z)
    }

    pub fn one(modulus: u32) -> Result<Self> {
        Self::from_rational(modulus, BigRational::one())
    }

    /// ζ_μ^j (exponent taken mod μ).
    pub fn root_power(modulus: u32, j: u32) -> Result<Self> {
        let z = Self::zero(modulus)?;
        let j = (j % modulus) as usize;
        let mut raw = vec![BigRational::zero(); j + 1];
        raw[j] = BigRational::one();
        Ok(Self::reduced(z.modulus, z.p, z.k, raw))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub(crate) fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) iff the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed cyclotomic moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicNumber { coeffs, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = &raw[i + j] + a * b;
                raw[i + j] = t;
            }
        }
        Self::reduced(self.modulus, self.p, self.k, raw)
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        CyclotomicNumber { coeffs: self.coeffs.iter().map(|c| c * by).collect(), ..self.clone() }
    }

    /// Complex conjugate: ζ^j ↦ ζ^{μ−j}.
    pub fn conj(&self) -> Self {
        let mu = self.modulus as usize;
        let mut raw = vec![BigRational::zero(); mu];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = (mu - j) % mu;
            let t = &raw[idx] + c;
            raw[idx] = t;
        }
        Self::reduced(self.modulus, self.p, self.k, raw)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse (None for zero), via the extended Euclidean
    /// algorithm in ℚ[x] against Φ_{pᵏ}.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = self.coeffs.len();
        let step = self.p.pow(self.k - 1) as usize;
        let mut modpoly = vec![BigRational::zero(); phi + 1];
        for i in 0..self.p as usize {
            modpoly[i * step] = BigRational::one();
        }
        let a = trim(self.coeffs.clone());
        let (g, u) = poly_ext_gcd(a, modpoly);
        // Φ is irreducible over ℚ, so the gcd is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let raw: Vec<BigRational> = u.into_iter().map(|c| c * &ginv).collect();
        Some(Self::reduced(self.modulus, self.p, self.k, raw))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub_scaled(a: &[BigRational], b: &[BigRational], s: &BigRational, shift: usize) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len() + shift), BigRational::zero());
    for (i, c) in b.iter().enumerate() {
        let t = &out[i + shift] - &(s * c);
        out[i + shift] = t;
    }
    trim(out)
}

/// Returns (g, u) with u·a ≡ g (mod b) and g = gcd(a, b), over ℚ[x].
fn poly_ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(a), trim(b));
    let (mut s0, mut s1) = (vec![BigRational::one()], Vec::<BigRational>::new());
    while !r1.is_empty() {
        // divide r0 by r1, applying the same operations to s0
        let mut rem = r0.clone();
        let mut q_applied_s = s0.clone();
        let lead = r1.last().unwrap().clone();
        while rem.len() >= r1.len() {
            let shift = rem.len() - r1.len();
            let s = rem.last().unwrap() / &lead;
            rem = poly_sub_scaled(&rem, &r1, &s, shift);
            // subtract s·x^shift·s1 from the cofactor
            let mut scaled = vec![BigRational::zero(); shift];
            scaled.extend(s1.iter().map(|c| c * &s));
            q_applied_s = poly_sub_scaled(&q_applied_s, &scaled, &BigRational::one(), 0);
        }
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, q_applied_s);
    }
    (r0, s0)
}
