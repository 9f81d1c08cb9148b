//! Certified sign decisions for real cyclotomic numbers.
//!
//! A real element Σ cⱼ·ζ_μ^j has value Σ cⱼ·cos(2πj/μ). Its sign is decided
//! rigorously: exact zero iff the coefficient vector is zero (power-basis
//! representation is faithful), otherwise rational interval enclosures of each
//! cosine are refined — doubling the working precision — until the interval
//! for the sum excludes zero. Termination is guaranteed because the embedding
//! is injective, so a nonzero element has nonzero value.

use crate::cyclotomic::CyclotomicNumber;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Mutex;

/// Closed rational interval [lo, hi] guaranteed to contain the true value.
#[derive(Clone, Debug)]
pub(crate) struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    fn of(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    fn zero() -> Self {
        Interval::point(BigRational::zero())
    }

    fn add(&self, other: &Self) -> Self {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    fn scale(&self, by: &BigRational) -> Self {
        if by.is_negative() {
            Interval { lo: &self.hi * by, hi: &self.lo * by }
        } else {
            Interval { lo: &self.lo * by, hi: &self.hi * by }
        }
    }

    fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    /// +1 / −1 when the interval excludes zero, None when it straddles it.
    fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Widens outward to endpoints with denominator 2^bits, keeping rational
    /// complexity bounded across long sums.
    fn round_out(&self, bits: u32) -> Self {
        Interval { lo: dyadic_floor(&self.lo, bits), hi: dyadic_ceil(&self.hi, bits) }
    }
}

fn dyadic_floor(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

fn dyadic_ceil(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Enclosure of atan(1/x) (x ≥ 2) by consecutive partial sums of the
/// alternating series Σ (−1)ⁿ / ((2n+1)·x^{2n+1}).
fn atan_inv_enclosure(x: u32, tail_bound_bits: u32) -> Interval {
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << tail_bound_bits);
    let xq = BigRational::from_integer(BigInt::from(x));
    let x2 = &xq * &xq;
    let mut term = xq.recip();
    let mut sum = BigRational::zero();
    let mut n = 0u32;
    loop {
        // the alternating tail is bounded by its first omitted term
        if term < threshold {
            return Interval::of(&sum - &term, &sum + &term);
        }
        if n % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term / &x2 * BigRational::new(BigInt::from(2 * n + 1), BigInt::from(2 * n + 3));
        n += 1;
    }
}

/// Enclosure of π via Machin's formula 16·atan(1/5) − 4·atan(1/239).
fn pi_enclosure(bits: u32) -> Interval {
    static CACHE: Mutex<BTreeMap<u32, Interval>> = Mutex::new(BTreeMap::new());
    if let Some(hit) = CACHE.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let a = atan_inv_enclosure(5, bits + 8);
    let b = atan_inv_enclosure(239, bits + 8);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    let pi = a.scale(&sixteen).add(&b.scale(&four).neg()).round_out(bits + 32);
    CACHE.lock().unwrap().insert(bits, pi.clone());
    pi
}

/// Enclosure of cos(z) for rational 0 ≤ z ≤ 2 by consecutive partial sums of
/// the Taylor series (terms are strictly decreasing from n = 1 since z² < 12).
fn cos_point_enclosure(z: &BigRational, tail_bound_bits: u32) -> Interval {
    debug_assert!(!z.is_negative());
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << tail_bound_bits);
    let z2 = z * z;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut n = 0u32;
    loop {
        // terms decrease strictly from n = 2 on, so from there the alternating
        // tail is bounded by its first omitted term
        if n >= 2 && term < threshold {
            return Interval::of(&sum - &term, &sum + &term);
        }
        if n % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &z2 / BigRational::from_integer(BigInt::from((2 * n + 1) * (2 * n + 2)));
        n += 1;
    }
}

/// Enclosure of cos(2π·j/μ), cached per (μ, j mod μ, bits).
pub(crate) fn cos_enclosure(mu: u32, j: u32, bits: u32) -> Interval {
    let j = j % mu;
    static CACHE: Mutex<BTreeMap<(u32, u32, u32), Interval>> = Mutex::new(BTreeMap::new());
    if let Some(hit) = CACHE.lock().unwrap().get(&(mu, j, bits)) {
        return hit.clone();
    }
    let result = cos_enclosure_uncached(mu, j, bits);
    CACHE.lock().unwrap().insert((mu, j, bits), result.clone());
    result
}

fn cos_enclosure_uncached(mu: u32, j: u32, bits: u32) -> Interval {
    // fold x = j/μ ∈ [0,1) into [0, 1/2]: cos is even around 0 and 1
    let mut num = j.min(mu - j) as i64; // x = num/mu ≤ 1/2
    let mut sign = 1i64;
    // fold [1/4, 1/2] to [0, 1/4]: cos(2πx) = −cos(2π(1/2 − x))
    if 4 * num > mu as i64 {
        num = mu as i64 - 2 * num; // (1/2 − x)·2·... : new x' = 1/2 − x has numerator mu − 2num over 2mu
        sign = -1;
        // x' = (mu − 2j')/(2mu); handled below with doubled denominator
        let x = BigRational::new(BigInt::from(num), BigInt::from(2 * mu as i64));
        return scaled_cos(x, sign, bits);
    }
    // exact values at x = 0 and x = 1/4
    if num == 0 {
        return Interval::point(BigRational::one());
    }
    if 4 * num == mu as i64 {
        return Interval::zero();
    }
    let x = BigRational::new(BigInt::from(num), BigInt::from(mu as i64));
    scaled_cos(x, sign, bits)
}

/// Enclosure of sign·cos(2π·x) for rational x ∈ [0, 1/4].
fn scaled_cos(x: BigRational, sign: i64, bits: u32) -> Interval {
    if x.is_zero() {
        let one = Interval::point(BigRational::one());
        return if sign < 0 { one.neg() } else { one };
    }
    let pi = pi_enclosure(bits);
    let two_x = &x * BigRational::from_integer(BigInt::from(2));
    // θ = 2πx ∈ (0, π/2]; cos is decreasing there, so evaluate at both ends
    let theta_lo = &two_x * &pi.lo;
    let theta_hi = &two_x * &pi.hi;
    let at_hi = cos_point_enclosure(&theta_hi, bits + 8);
    let at_lo = cos_point_enclosure(&theta_lo, bits + 8);
    let enc = Interval::of(at_hi.lo.clone(), at_lo.hi.clone()).round_out(bits + 32);
    if sign < 0 {
        enc.neg()
    } else {
        enc
    }
}

/// Certified sign (−1, 0, +1) of a real cyclotomic number.
pub(crate) fn certified_sign(a: &CyclotomicNumber) -> i8 {
    debug_assert!(a.is_real(), "certified_sign requires a real element");
    if a.is_zero() {
        return 0;
    }
    if let Some(q) = a.as_rational() {
        return if q.is_positive() { 1 } else { -1 };
    }
    let mu = a.modulus();
    let mut bits = 64u32;
    loop {
        let mut acc = Interval::zero();
        for (j, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&cos_enclosure(mu, j as u32, bits).scale(c));
        }
        if let Some(s) = acc.round_out(bits).sign() {
            return s;
        }
        bits *= 2;
        assert!(
            bits <= 1 << 22,
            "sign certification failed to converge; input cannot be a nonzero real element"
        );
    }
}
