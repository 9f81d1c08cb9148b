//! Heegaard Floer correction-term data: V-sequences, d-invariants of
//! negative surgeries, and the closed-form tables for T(2,q) torus knots.

use crate::error::{Error, Result};
use crate::invariants::KnotInvariants;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use std::fmt;

/// The non-increasing sequence V₀ ≥ V₁ ≥ … ≥ V_N = 0 of local h-invariants
/// of a knot, extended by zero beyond its last entry.
///
/// Stored canonically: strictly positive entries followed by a single zero,
/// with the all-zero sequence stored empty. Two inputs describing the same
/// function ℕ → ℕ compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    /// Validates monotonicity and the terminal zero, then canonicalizes.
    pub fn new(values: Vec<u64>) -> Result<Self> {
        for w in values.windows(2) {
            if w[0] < w[1] {
                return Err(Error::BadVSequence(format!(
                    "sequence must be non-increasing, found {} < {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&last) = values.last() {
            if last != 0 {
                return Err(Error::BadVSequence(format!(
                    "sequence must end in 0, found {last}"
                )));
            }
        }
        let mut values = values;
        while values.last() == Some(&0) {
            values.pop();
        }
        if !values.is_empty() {
            values.push(0);
        }
        Ok(VSequence { values })
    }

    pub fn zero() -> Self {
        VSequence { values: vec![] }
    }

    /// V_s, defined for every s ≥ 0.
    pub fn get(&self, s: usize) -> u64 {
        self.values.get(s).copied().unwrap_or(0)
    }

    /// ν⁺ = min{s : V_s = 0}.
    pub fn nu_plus(&self) -> u32 {
        self.values.iter().take_while(|&&v| v > 0).count() as u32
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

impl fmt::Display for VSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn check_surgery_coefficient(n: i64) -> Result<()> {
    if n <= 0 {
        return Err(Error::BadProblem(format!(
            "surgery coefficient must be positive, got {n}"
        )));
    }
    Ok(())
}

/// d(S³₋ₙ(K), 𝔱₋ᵢ) = (n − (n−2j)²)/(4n) + max{V_j(mK), V_{n−j}(mK)}
/// where j = (−i) mod n and `v_mirror` is the V-sequence of the mirror.
pub fn d_negative_surgery(n: i64, i: i64, v_mirror: &VSequence) -> Result<BigRational> {
    check_surgery_coefficient(n)?;
    let j = (-i).rem_euclid(n);
    let spread = n as i128 - 2 * j as i128;
    let num = n as i128 - spread * spread;
    let base = BigRational::new(BigInt::from(num), BigInt::from(4 * n as i128));
    let v = v_mirror.get(j as usize).max(v_mirror.get((n - j) as usize));
    Ok(base + BigRational::from_integer(BigInt::from(v)))
}

/// Whether the 𝔱₋ᵢ summand of HF⁺(S³₋ₙ(K)) receives the bottom class of the
/// 2-handle cobordism map: for 0 ≤ i ≤ n this is V_{min(i,n−i)}(mK) = 0, and
/// outside that range the criterion is vacuously false.
pub fn bottom_class_nontrivial(n: i64, i: i64, v_mirror: &VSequence) -> Result<bool> {
    check_surgery_coefficient(n)?;
    if i < 0 || i > n {
        return Ok(false);
    }
    Ok(v_mirror.get(i.min(n - i) as usize) == 0)
}

/// Cross-check: a spin-c structure with non-trivial bottom class exists for
/// some 0 ≤ i ≤ n exactly when 2ν⁺(mK) ≤ n. Returns whether the two
/// criteria agree (they always should; `false` flags inconsistent data).
pub fn nu_plus_consistency(n: i64, v_mirror: &VSequence) -> Result<bool> {
    check_surgery_coefficient(n)?;
    let mut exists = false;
    for i in 0..=n {
        if bottom_class_nontrivial(n, i, v_mirror)? {
            exists = true;
            break;
        }
    }
    Ok(exists == (2 * v_mirror.nu_plus() as i64 <= n))
}

/// V-sequence of T(2,2k+1): V_s = ⌈(k−s)/2⌉ for 0 ≤ s ≤ k.
fn torus_v_sequence(k: u32) -> VSequence {
    let values: Vec<u64> = (0..=k).map(|s| ((k - s + 1) / 2) as u64).collect();
    VSequence::new(values).expect("closed form is non-increasing and ends in 0")
}

/// Closed-form invariant bundle for the torus knot T(2,q), q odd, |q| ≥ 3.
///
/// For q = 2k+1 > 0: det = 2k+1, σ = −2k, g₄ = k, ν⁺ = k, τ = k,
/// s̄l = 2k−1, V_s = ⌈(k−s)/2⌉; the mirror T(2,−(2k+1)) negates σ, τ,
/// has s̄l = −2k−1, and vanishing V (so ν⁺(mirror of it) = k).
pub fn torus_knot_table(q: i64) -> Result<KnotInvariants> {
    if q.rem_euclid(2) != 1 || q.abs() < 3 {
        return Err(Error::UnknownName(format!(
            "torus knot table covers T(2,q) for odd |q| ≥ 3, got q = {q}"
        )));
    }
    let k = ((q.abs() - 1) / 2) as u32;
    let determinant = BigUint::from(2 * k + 1);
    let arf = if k % 4 == 0 || k % 4 == 3 { 0 } else { 1 };
    let inv = if q > 0 {
        KnotInvariants {
            determinant,
            arf,
            signature: -2 * k as i64,
            genus4_lower: k,
            genus4_upper: Some(k),
            nu_plus_mirror: Some(0),
            tau: Some(k as i64),
            sl_bar: Some(2 * k as i64 - 1),
            v_sequence: Some(torus_v_sequence(k)),
        }
    } else {
        KnotInvariants {
            determinant,
            arf,
            signature: 2 * k as i64,
            genus4_lower: k,
            genus4_upper: Some(k),
            nu_plus_mirror: Some(k),
            tau: Some(-(k as i64)),
            sl_bar: Some(-2 * k as i64 - 1),
            v_sequence: Some(VSequence::zero()),
        }
    };
    debug_assert!(inv.validate().is_ok());
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(values: &[u64]) -> VSequence {
        VSequence::new(values.to_vec()).unwrap()
    }

    #[test]
    fn v_sequence_validation_and_canonical_form() {
        let v = vs(&[3, 2, 1, 0]);
        assert_eq!(v.nu_plus(), 3);
        assert_eq!(v.get(0), 3);
        assert_eq!(v.get(3), 0);
        assert_eq!(v.get(100), 0);
        assert!(VSequence::new(vec![1, 2, 0]).is_err());
        assert!(VSequence::new(vec![1]).is_err());
        assert_eq!(VSequence::new(vec![]).unwrap(), VSequence::zero());
        assert_eq!(vs(&[1, 0, 0, 0]), vs(&[1, 0]));
        assert_eq!(vs(&[0, 0]), VSequence::zero());
        assert_eq!(VSequence::zero().nu_plus(), 0);
        assert_eq!(vs(&[2, 1, 0]).to_string(), "2,1,0");
        assert_eq!(VSequence::zero().to_string(), "0");
    }

    #[test]
    fn torus_v_sequences() {
        assert_eq!(torus_v_sequence(1).values(), &[1, 0]);
        assert_eq!(torus_v_sequence(2).values(), &[1, 1, 0]);
        assert_eq!(torus_v_sequence(4).values(), &[2, 2, 1, 1, 0]);
        assert_eq!(torus_v_sequence(7).values(), &[4, 3, 3, 2, 2, 1, 1, 0]);
        assert_eq!(torus_v_sequence(7).nu_plus(), 7);
    }

    #[test]
    fn d_invariants_of_negative_surgeries() {
        let rational = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        // unknot: lens-space values
        let zero = VSequence::zero();
        assert_eq!(d_negative_surgery(2, 0, &zero).unwrap(), rational(-1, 4));
        assert_eq!(d_negative_surgery(3, 1, &zero).unwrap(), rational(1, 6));
        // mirror contribution: K with V(mK) = (1,0), n = 1, i = 0 picks up max{V₀, V₁} = 1
        let v = vs(&[1, 0]);
        assert_eq!(d_negative_surgery(1, 0, &v).unwrap(), rational(1, 1));
        // i is reduced mod n: i = -1 ≡ 2 gives j = 1 for n = 3
        assert_eq!(
            d_negative_surgery(3, -1, &v).unwrap(),
            d_negative_surgery(3, 2, &v).unwrap()
        );
        // j = 1, spread 1: (3−1)/12 + max{V₁, V₂} = 1/6
        assert_eq!(d_negative_surgery(3, 2, &v).unwrap(), rational(1, 6));
        assert!(d_negative_surgery(0, 0, &zero).is_err());
        assert!(d_negative_surgery(-2, 0, &zero).is_err());
    }

    #[test]
    fn bottom_class_and_nu_plus_agree() {
        let v = vs(&[1, 0]); // ν⁺ = 1
        assert!(!bottom_class_nontrivial(2, 0, &v).unwrap());
        assert!(bottom_class_nontrivial(2, 1, &v).unwrap());
        assert!(!bottom_class_nontrivial(2, 3, &v).unwrap());
        assert!(!bottom_class_nontrivial(2, -1, &v).unwrap());
        assert!(nu_plus_consistency(2, &v).unwrap());
        // n = 1 < 2ν⁺: no index works, and the criterion agrees
        assert!(!bottom_class_nontrivial(1, 0, &v).unwrap());
        assert!(!bottom_class_nontrivial(1, 1, &v).unwrap());
        assert!(nu_plus_consistency(1, &v).unwrap());
        for n in 1..=9 {
            assert!(nu_plus_consistency(n, &vs(&[2, 2, 1, 0])).unwrap());
            assert!(nu_plus_consistency(n, &VSequence::zero()).unwrap());
        }
    }

    #[test]
    fn torus_tables_match_published_values() {
        let t15 = torus_knot_table(15).unwrap();
        assert_eq!(t15.determinant, BigUint::from(15u32));
        assert_eq!(t15.arf, 0);
        assert_eq!(t15.signature, -14);
        assert_eq!((t15.genus4_lower, t15.genus4_upper), (7, Some(7)));
        assert_eq!(t15.nu_plus_mirror, Some(0));
        assert_eq!((t15.tau, t15.sl_bar), (Some(7), Some(13)));
        assert_eq!(t15.v_sequence.as_ref().unwrap().nu_plus(), 7);

        let m15 = torus_knot_table(-15).unwrap();
        assert_eq!(m15.signature, 14);
        assert_eq!(m15.nu_plus_mirror, Some(7));
        assert_eq!((m15.tau, m15.sl_bar), (Some(-7), Some(-15)));
        assert_eq!(m15.v_sequence, Some(VSequence::zero()));

        let t3 = torus_knot_table(3).unwrap();
        assert_eq!((t3.arf, t3.signature), (1, -2));
        let t7 = torus_knot_table(7).unwrap();
        assert_eq!((t7.arf, t7.signature), (0, -6));

        assert!(torus_knot_table(4).is_err());
        assert!(torus_knot_table(1).is_err());
        assert!(torus_knot_table(-1).is_err());
    }
}
