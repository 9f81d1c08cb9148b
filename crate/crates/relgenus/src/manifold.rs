use crate::error::{Error, Result};
use crate::signature::integer_symmetric_signature;
use crate::zmat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;

/// A spin-c datum on a 4-manifold, stored as the Poincaré dual of c₁ in the
/// basis of the intersection form.
///
/// `phi_nonzero` records a nonvanishing mixed invariant Φ_{X,𝔰};
/// `rel_sw_nonzero` records a nonvanishing Seiberg–Witten invariant of the
/// punctured manifold relative to the standard contact structure on its S³
/// boundary. Both are gauge-theoretic facts that the engine trusts as input
/// and never derives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicClass {
    pub k_vector: Vec<i64>,
    pub phi_nonzero: bool,
    pub rel_sw_nonzero: bool,
}

/// A second homology class in the basis of the intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub xi: Vec<i64>,
}

impl HomologyClass {
    pub fn zero(rank: usize) -> Self {
        HomologyClass { xi: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.xi.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Exact geometry of a homology class against the intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGeometry {
    /// ξᵀQξ
    pub square: i64,
    /// gcd of the coordinates; 0 for the zero class (divisible by everything)
    pub divisibility: u64,
    /// whether ξ·x ≡ x·x (mod 2) for all x
    pub characteristic: bool,
    /// kᵀQξ per basic class, in stored order
    pub pairings: Vec<i64>,
}

/// A closed oriented 4-manifold as consumed by the obstruction rules.
///
/// The numeric fields are always present; the intersection form and basic
/// classes are optional extras that unlock form-dependent rules. The gauge
/// flags (`symplectic`, `simple_type`, `bf_hypothesis`) are trusted input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourManifold {
    pub name: String,
    pub b2_plus: u32,
    pub b2_minus: u32,
    pub h1_zero: bool,
    pub spin: bool,
    pub symplectic: bool,
    /// of Ozsváth–Szabó simple type
    pub simple_type: bool,
    /// admits a spin-c structure with d(𝔰) = 0 and odd Seiberg–Witten invariant
    pub bf_hypothesis: bool,
    pub euler: i64,
    pub form: Option<Vec<Vec<i64>>>,
    pub basic_classes: Vec<BasicClass>,
}

impl FourManifold {
    pub fn b2(&self) -> u32 {
        self.b2_plus + self.b2_minus
    }

    pub fn sigma(&self) -> i64 {
        self.b2_plus as i64 - self.b2_minus as i64
    }

    /// Checks every structural invariant: form rank/determinant/signature/
    /// parity against the Betti data and flags, and that stored basic classes
    /// are characteristic.
    pub fn validate(&self) -> Result<()> {
        let b2 = self.b2() as usize;
        if self.spin && self.sigma().rem_euclid(16) != 0 {
            return Err(Error::BadManifold(format!(
                "spin manifold must have σ ≡ 0 (mod 16), got σ = {}",
                self.sigma()
            )));
        }
        if let Some(q) = &self.form {
            if q.len() != b2 || q.iter().any(|row| row.len() != b2) {
                return Err(Error::BadManifold(format!(
                    "intersection form must be {b2}×{b2}"
                )));
            }
            for i in 0..b2 {
                for j in 0..i {
                    if q[i][j] != q[j][i] {
                        return Err(Error::BadManifold(format!(
                            "intersection form not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
            let det = zmat::det(&zmat::from_i64(q));
            if det.magnitude() != &num_bigint::BigUint::one() {
                return Err(Error::BadManifold(format!(
                    "intersection form must be unimodular, |det| = {}",
                    det.magnitude()
                )));
            }
            if integer_symmetric_signature(q)? != self.sigma() {
                return Err(Error::BadManifold(format!(
                    "form signature disagrees with b₂⁺ − b₂⁻ = {}",
                    self.sigma()
                )));
            }
            if self.spin && (0..b2).any(|i| q[i][i].rem_euclid(2) != 0) {
                return Err(Error::BadManifold(
                    "spin manifold must have an even intersection form".into(),
                ));
            }
            for (idx, class) in self.basic_classes.iter().enumerate() {
                if class.k_vector.len() != b2 {
                    return Err(Error::DimensionMismatch { expected: b2, got: class.k_vector.len() });
                }
                let qe = apply_form(q, &class.k_vector)?;
                for i in 0..b2 {
                    if (qe[i] - q[i][i]).rem_euclid(2) != 0 {
                        return Err(Error::BadManifold(format!(
                            "basic class #{idx} is not characteristic"
                        )));
                    }
                }
            }
        } else {
            for class in &self.basic_classes {
                if class.k_vector.len() != b2 {
                    return Err(Error::DimensionMismatch { expected: b2, got: class.k_vector.len() });
                }
            }
        }
        Ok(())
    }

    /// Library manifolds: `K3`, `CP2`, `mCP2`, `S2xS2`, `S4`.
    pub fn standard(name: &str) -> Result<FourManifold> {
        let m = match name {
            "S4" => FourManifold {
                name: "S4".into(),
                b2_plus: 0,
                b2_minus: 0,
                h1_zero: true,
                spin: true,
                symplectic: false,
                simple_type: false,
                bf_hypothesis: false,
                euler: 2,
                form: Some(vec![]),
                basic_classes: vec![],
            },
            "CP2" => FourManifold {
                name: "CP2".into(),
                b2_plus: 1,
                b2_minus: 0,
                h1_zero: true,
                spin: false,
                symplectic: true,
                simple_type: false,
                bf_hypothesis: false,
                euler: 3,
                form: Some(vec![vec![1]]),
                basic_classes: vec![],
            },
            "mCP2" => {
                let mut m = FourManifold::standard("CP2")?.reverse_orientation();
                m.name = "mCP2".into();
                m
            }
            "S2xS2" => FourManifold {
                name: "S2xS2".into(),
                b2_plus: 1,
                b2_minus: 1,
                h1_zero: true,
                spin: true,
                symplectic: true,
                simple_type: false,
                bf_hypothesis: false,
                euler: 4,
                form: Some(vec![vec![0, 1], vec![1, 0]]),
                basic_classes: vec![],
            },
            "K3" => FourManifold {
                name: "K3".into(),
                b2_plus: 3,
                b2_minus: 19,
                h1_zero: true,
                spin: true,
                symplectic: true,
                simple_type: true,
                bf_hypothesis: true,
                euler: 24,
                form: Some(k3_form()),
                // the trivial spin-c structure: c₁ = 0, Φ ≠ 0, d = 0
                basic_classes: vec![BasicClass {
                    k_vector: vec![0; 22],
                    phi_nonzero: true,
                    rel_sw_nonzero: false,
                }],
            },
            other => return Err(Error::UnknownName(format!("manifold \"{other}\""))),
        };
        debug_assert!(m.validate().is_ok());
        Ok(m)
    }

    /// Connected sum. Betti numbers and σ add (Novikov additivity), Euler
    /// characteristics add minus 2, spin persists iff both sides are spin,
    /// and forms block-sum.
    ///
    /// Gauge data survives only where standard theory guarantees it: summing
    /// with S⁴ changes nothing; summing with −CP² is a blow-up (basic classes
    /// k ↦ k ± E with invariants intact); any other sum clears the basic-class
    /// list and the gauge flags (a sum with both b₂⁺ ≥ 1 has vanishing SW).
    pub fn connected_sum(&self, other: &FourManifold) -> FourManifold {
        let a = self;
        let b = other;
        let form = match (&a.form, &b.form) {
            (Some(qa), Some(qb)) => Some(block_sum(qa, qb)),
            _ => None,
        };
        let mut out = FourManifold {
            name: format!("{} # {}", a.name, b.name),
            b2_plus: a.b2_plus + b.b2_plus,
            b2_minus: a.b2_minus + b.b2_minus,
            h1_zero: a.h1_zero && b.h1_zero,
            spin: a.spin && b.spin,
            symplectic: false,
            simple_type: false,
            bf_hypothesis: false,
            euler: a.euler + b.euler - 2,
            form,
            basic_classes: vec![],
        };
        if b.b2() == 0 {
            out.symplectic = a.symplectic;
            out.simple_type = a.simple_type;
            out.bf_hypothesis = a.bf_hypothesis;
            out.basic_classes = a.basic_classes.clone();
        } else if a.b2() == 0 {
            out.symplectic = b.symplectic;
            out.simple_type = b.simple_type;
            out.bf_hypothesis = b.bf_hypothesis;
            out.basic_classes = b.basic_classes.clone();
        } else if is_minus_cp2(b) {
            // blow-up of a: SW(k ± E) = SW(k) and d is unchanged
            out.symplectic = a.symplectic;
            out.simple_type = a.simple_type;
            out.bf_hypothesis = a.bf_hypothesis;
            for class in &a.basic_classes {
                for e in [1i64, -1] {
                    let mut k = class.k_vector.clone();
                    k.push(e);
                    out.basic_classes.push(BasicClass {
                        k_vector: k,
                        phi_nonzero: class.phi_nonzero,
                        rel_sw_nonzero: class.rel_sw_nonzero,
                    });
                }
            }
        } else if is_minus_cp2(a) {
            out.symplectic = b.symplectic;
            out.simple_type = b.simple_type;
            out.bf_hypothesis = b.bf_hypothesis;
            for class in &b.basic_classes {
                for e in [1i64, -1] {
                    let mut k = vec![e];
                    k.extend_from_slice(&class.k_vector);
                    out.basic_classes.push(BasicClass {
                        k_vector: k,
                        phi_nonzero: class.phi_nonzero,
                        rel_sw_nonzero: class.rel_sw_nonzero,
                    });
                }
            }
        }
        // all other cases: conservative — no gauge claims survive
        out
    }

    /// Orientation reversal: swaps b₂⁺/b₂⁻ and negates the form. Gauge flags
    /// do not transport across orientation reversal, so they are dropped;
    /// basic-class vectors are kept as data with their flags cleared.
    pub fn reverse_orientation(&self) -> FourManifold {
        let name = if let Some(inner) = self.name.strip_prefix("-(").and_then(|s| s.strip_suffix(")")) {
            inner.to_string()
        } else if let Some(inner) = self.name.strip_prefix('-') {
            inner.to_string()
        } else if self.name.contains(' ') || self.name.contains('#') {
            format!("-({})", self.name)
        } else {
            format!("-{}", self.name)
        };
        FourManifold {
            name,
            b2_plus: self.b2_minus,
            b2_minus: self.b2_plus,
            h1_zero: self.h1_zero,
            spin: self.spin,
            symplectic: false,
            simple_type: false,
            bf_hypothesis: false,
            euler: self.euler,
            form: self
                .form
                .as_ref()
                .map(|q| q.iter().map(|row| row.iter().map(|&e| -e).collect()).collect()),
            basic_classes: self
                .basic_classes
                .iter()
                .map(|c| BasicClass {
                    k_vector: c.k_vector.clone(),
                    phi_nonzero: false,
                    rel_sw_nonzero: false,
                })
                .collect(),
        }
    }

    /// Exact square, divisibility, characteristic flag, and basic-class
    /// pairings of ξ. Requires the intersection form.
    pub fn class_geometry(&self, class: &HomologyClass) -> Result<ClassGeometry> {
        let q = self
            .form
            .as_ref()
            .ok_or_else(|| Error::MissingInput("intersection form".into()))?;
        let b2 = self.b2() as usize;
        if class.xi.len() != b2 {
            return Err(Error::DimensionMismatch { expected: b2, got: class.xi.len() });
        }
        let qxi = apply_form(q, &class.xi)?;
        let square = dot(&class.xi, &qxi)?;
        let divisibility = class.xi.iter().fold(0u64, |g, &c| num_integer::gcd(g, c.unsigned_abs()));
        let characteristic = (0..b2).all(|i| (qxi[i] - q[i][i]).rem_euclid(2) == 0);
        let pairings = self
            .basic_classes
            .iter()
            .map(|c| dot(&c.k_vector, &qxi))
            .collect::<Result<Vec<i64>>>()?;
        Ok(ClassGeometry { square, divisibility, characteristic, pairings })
    }

    /// Expected dimension d(𝔰) = (kᵀQk − 2χ − 3σ)/4 of the spin-c structure
    /// with Poincaré-dual c₁ equal to k.
    pub fn expected_dimension(&self, k_vector: &[i64]) -> Result<BigRational> {
        let q = self
            .form
            .as_ref()
            .ok_or_else(|| Error::MissingInput("intersection form".into()))?;
        let b2 = self.b2() as usize;
        if k_vector.len() != b2 {
            return Err(Error::DimensionMismatch { expected: b2, got: k_vector.len() });
        }
        let square = dot(k_vector, &apply_form(q, k_vector)?)?;
        let num = BigInt::from(square) - BigInt::from(2 * self.euler) - BigInt::from(3 * self.sigma());
        Ok(BigRational::new(num, BigInt::from(4)))
    }

    /// Whether the manifold is negative definite with the standard
    /// diagonalized form (b₂ = 0 counts vacuously).
    pub fn negative_definite_diagonal(&self) -> bool {
        if self.b2_plus != 0 {
            return false;
        }
        match &self.form {
            None => self.b2() == 0,
            Some(q) => (0..q.len()).all(|i| {
                q[i].iter().enumerate().all(|(j, &e)| e == if i == j { -1 } else { 0 })
            }),
        }
    }
}

fn is_minus_cp2(m: &FourManifold) -> bool {
    m.b2_plus == 0 && m.b2_minus == 1 && m.form.as_deref() == Some(&[vec![-1]])
}

fn block_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i]);
    }
    for i in 0..m {
        out[n + i][n..].copy_from_slice(&b[i]);
    }
    out
}

/// Q·x with overflow-checked arithmetic.
fn apply_form(q: &[Vec<i64>], x: &[i64]) -> Result<Vec<i64>> {
    q.iter()
        .map(|row| {
            let acc: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            i64::try_from(acc).map_err(|_| Error::Overflow("intersection pairing".into()))
        })
        .collect()
}

fn dot(x: &[i64], y: &[i64]) -> Result<i64> {
    let acc: i128 = x.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
    i64::try_from(acc).map_err(|_| Error::Overflow("intersection pairing".into()))
}

/// The negative E₈ Cartan matrix: diagonal −2, +1 for each edge of the E₈
/// Dynkin diagram (chain 1–…–7 with node 8 attached to node 5).
fn minus_e8() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 8]; 8];
    for i in 0..8 {
        m[i][i] = -2;
    }
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    for (i, j) in edges {
        m[i][j] = 1;
        m[j][i] = 1;
    }
    m
}

fn hyperbolic() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

/// 2(−E₈) ⊕ 3H, the intersection form of the K3 surface.
fn k3_form() -> Vec<Vec<i64>> {
    let mut q = block_sum(&minus_e8(), &minus_e8());
    for _ in 0..3 {
        q = block_sum(&q, &hyperbolic());
    }
    q
}
