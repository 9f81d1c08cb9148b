//! The rules engine: evaluates every obstruction rule and every constructive
//! upper-bound rule on a [`SurfaceProblem`] and emits a structured, ordered
//! verdict ledger.
//!
//! Each rule has a strict applicability gate — if a hypothesis is not
//! certifiably met, the rule reports "not applicable" with the reason rather
//! than guessing. Obstructions prove non-existence; upper-bound certificates
//! prove existence; absence of obstructions proves nothing and is reported
//! as merely "consistent".

use crate::error::{Error, Result};
use crate::invariants::KnotInvariants;
use crate::manifold::{BasicClass, FourManifold, HomologyClass};
use crate::seifert::SeifertMatrix;
use crate::signature::{prime_powers_up_to, signature_profile, SignatureProfile};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeSet;
use std::fmt;

/// Stable identifiers of the ten obstruction rules, in ledger order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleId {
    ArfSpin,
    ArfCharacteristicDisk,
    SignatureWindow,
    RokhlinDivisible,
    AdjunctionG4,
    AdjunctionNu,
    TauDefinite,
    MrowkaRollin,
    DonaldVafaee,
    BauerFuruta,
}

/// Whether a rule holds in the topological category or needs smooth input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Topological,
    Smooth,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::ArfSpin,
        RuleId::ArfCharacteristicDisk,
        RuleId::SignatureWindow,
        RuleId::RokhlinDivisible,
        RuleId::AdjunctionG4,
        RuleId::AdjunctionNu,
        RuleId::TauDefinite,
        RuleId::MrowkaRollin,
        RuleId::DonaldVafaee,
        RuleId::BauerFuruta,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RuleId::ArfSpin => "arf_spin",
            RuleId::ArfCharacteristicDisk => "arf_characteristic_disk",
            RuleId::SignatureWindow => "signature_window",
            RuleId::RokhlinDivisible => "rokhlin_divisible",
            RuleId::AdjunctionG4 => "adjunction_g4",
            RuleId::AdjunctionNu => "adjunction_nu",
            RuleId::TauDefinite => "tau_definite",
            RuleId::MrowkaRollin => "mrowka_rollin",
            RuleId::DonaldVafaee => "donald_vafaee",
            RuleId::BauerFuruta => "bauer_furuta",
        }
    }

    pub fn from_id(s: &str) -> Option<RuleId> {
        RuleId::ALL.iter().copied().find(|r| r.id() == s)
    }

    pub fn category(self) -> Category {
        match self {
            RuleId::ArfSpin
            | RuleId::ArfCharacteristicDisk
            | RuleId::SignatureWindow
            | RuleId::RokhlinDivisible => Category::Topological,
            _ => Category::Smooth,
        }
    }

    fn citation(self) -> &'static str {
        match self {
            RuleId::ArfSpin => "Arf invariant obstruction for H-slice knots in spin 4-manifolds",
            RuleId::ArfCharacteristicDisk => {
                "Robertello-type Arf congruence for disks in characteristic classes"
            }
            RuleId::SignatureWindow => {
                "Levine–Tristram signature window (Conway–Nagel type bound)"
            }
            RuleId::RokhlinDivisible => {
                "Rokhlin-type signature congruence for classes divisible by a prime power"
            }
            RuleId::AdjunctionG4 => "relative adjunction inequality with the smooth 4-genus",
            RuleId::AdjunctionNu => "relative adjunction inequality with ν⁺ (Hom–Wu invariant)",
            RuleId::TauDefinite => "Ozsváth–Szabó τ bound in negative definite 4-manifolds",
            RuleId::MrowkaRollin => "Mrowka–Rollin relative adjunction via contact structures",
            RuleId::DonaldVafaee => "Donald–Vafaee spin-filling obstruction (10/8-type)",
            RuleId::BauerFuruta => "Bauer–Furuta stable-cohomotopy pairing obstruction",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    Consistent,
}

/// One row of the ledger. `verdict` is present exactly when the rule is
/// applicable; for inapplicable rules `witness` carries the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOutcome {
    pub rule_id: RuleId,
    pub applicable: bool,
    pub verdict: Option<Verdict>,
    pub witness: String,
    pub citations: String,
}

impl RuleOutcome {
    fn not_applicable(rule: RuleId, reason: impl Into<String>) -> Self {
        RuleOutcome {
            rule_id: rule,
            applicable: false,
            verdict: None,
            witness: format!("not applicable: {}", reason.into()),
            citations: rule.citation().to_string(),
        }
    }

    fn decided(rule: RuleId, obstructed: bool, witness: String) -> Self {
        RuleOutcome {
            rule_id: rule,
            applicable: true,
            verdict: Some(if obstructed { Verdict::Obstructed } else { Verdict::Consistent }),
            witness,
            citations: rule.citation().to_string(),
        }
    }

    pub fn is_obstructed(&self) -> bool {
        self.verdict == Some(Verdict::Obstructed)
    }
}

/// The homology class of the surface: an explicit vector in the basis of the
/// intersection form, or abstract geometric data when no honest vector is
/// available (pairings are listed per stored basic class, in order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassData {
    Vector(HomologyClass),
    Abstract { square: i64, divisibility: u64, characteristic: bool, pairings: Vec<i64> },
}

impl ClassData {
    pub fn zero(rank: usize) -> Self {
        ClassData::Vector(HomologyClass::zero(rank))
    }
}

/// The query unit: does knot K bound a genus-`genus` properly embedded
/// surface in X∖B̊⁴ representing the class? Every rule consumes this.
///
/// `seifert` enables the signature rules; `profile` may carry a precomputed
/// signature profile (a scan hoists it so the Seifert matrix is only
/// processed once). `smooth_category = false` restricts to rules valid for
/// locally flat topological surfaces.
#[derive(Clone, Debug)]
pub struct SurfaceProblem {
    pub label: String,
    pub knot: KnotInvariants,
    pub seifert: Option<SeifertMatrix>,
    pub profile: Option<SignatureProfile>,
    pub manifold: FourManifold,
    pub class: ClassData,
    pub genus: u32,
    pub smooth_category: bool,
    /// where curated or user-supplied invariants came from; echoed in reports
    pub provenance: Option<String>,
}

impl SurfaceProblem {
    pub fn new(
        label: impl Into<String>,
        knot: KnotInvariants,
        seifert: Option<SeifertMatrix>,
        manifold: FourManifold,
        class: ClassData,
        genus: u32,
    ) -> SurfaceProblem {
        SurfaceProblem {
            label: label.into(),
            knot,
            seifert,
            profile: None,
            manifold,
            class,
            genus,
            smooth_category: true,
            provenance: None,
        }
    }

    pub fn with_profile(mut self, profile: SignatureProfile) -> Self {
        self.profile = Some(profile);
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn class_display(&self) -> String {
        match &self.class {
            ClassData::Vector(v) => v.to_string(),
            ClassData::Abstract { square, divisibility, characteristic, .. } => format!(
                "abstract(ξ²={square}, div={divisibility}, characteristic={characteristic})"
            ),
        }
    }
}

/// Class data resolved against the manifold: exact square, divisibility,
/// characteristic status (None = not determinable from the inputs), L¹ norm
/// when coordinates are known, and pairings aligned with the basic classes.
struct ResolvedClass {
    square: i64,
    divisibility: u64,
    characteristic: Option<bool>,
    pairings: Vec<i64>,
    l1_norm: Option<u64>,
    is_zero: bool,
}

fn resolve_class(p: &SurfaceProblem) -> Result<ResolvedClass> {
    let n_classes = p.manifold.basic_classes.len();
    match &p.class {
        ClassData::Vector(v) => {
            if p.manifold.form.is_some() {
                let g = p.manifold.class_geometry(v)?;
                Ok(ResolvedClass {
                    square: g.square,
                    divisibility: g.divisibility,
                    characteristic: Some(g.characteristic),
                    pairings: g.pairings,
                    l1_norm: Some(v.xi.iter().map(|c| c.unsigned_abs()).sum()),
                    is_zero: v.is_zero(),
                })
            } else if v.is_zero() {
                // without a form the zero class still has exact geometry;
                // it is characteristic iff the form is even, which is
                // decidable from the spin flag when H₁ = 0
                let characteristic = if p.manifold.spin {
                    Some(true)
                } else if p.manifold.h1_zero {
                    Some(false)
                } else {
                    None
                };
                Ok(ResolvedClass {
                    square: 0,
                    divisibility: 0,
                    characteristic,
                    pairings: vec![0; n_classes],
                    l1_norm: Some(0),
                    is_zero: true,
                })
            } else {
                Err(Error::MissingInput(
                    "intersection form (required for a nonzero class vector)".into(),
                ))
            }
        }
        ClassData::Abstract { square, divisibility, characteristic, pairings } => {
            if pairings.len() != n_classes {
                return Err(Error::DimensionMismatch { expected: n_classes, got: pairings.len() });
            }
            let is_zero = *divisibility == 0;
            if is_zero && (*square != 0 || pairings.iter().any(|&x| x != 0)) {
                return Err(Error::BadProblem(
                    "divisibility 0 means the zero class, which has square 0 and zero pairings"
                        .into(),
                ));
            }
            Ok(ResolvedClass {
                square: *square,
                divisibility: *divisibility,
                characteristic: Some(*characteristic),
                pairings: pairings.clone(),
                l1_norm: if is_zero { Some(0) } else { None },
                is_zero,
            })
        }
    }
}

/// Spin filling data for the 0-surgery on K, consumed by the
/// Donald–Vafaee rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinFilling {
    pub b2_w: u32,
    pub sigma_w: i64,
    pub two_handlebody: bool,
}

/// Certificate that the mirror mK bounds a smooth properly embedded disk Δ
/// in host∖B̊⁴ with [Δ]² ≥ 0 and [Δ] ≠ 0 — the input to the Bauer–Furuta
/// pairing rule.
#[derive(Clone, Debug)]
pub struct DiskCertificate {
    pub host: FourManifold,
    pub square: i64,
    pub nonzero_class: bool,
    pub knot_is_mirror: bool,
}

/// Extra inputs for the constructive upper-bound rules; all optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpperBoundInputs {
    /// unknotting number, if known
    pub unknotting_number: Option<u32>,
    /// K is obtained from K₀ by two negative full twists on k₁, k₂ strands
    pub twist: Option<TwistMove>,
    /// K is a Whitehead double whose companion bounds a surface of genus
    /// `base_genus` and square −(framing) in the named host
    pub whitehead: Option<WhiteheadData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMove {
    pub k1: u32,
    pub k2: u32,
    pub g4_base: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadData {
    pub host: String,
    pub base_genus: u32,
}

/// Identifiers of the constructive upper-bound rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UpperRuleId {
    NormanSuzuki,
    Schneiderman,
    K3Unknotting,
    K3Twist,
    WhiteheadDouble,
}

impl UpperRuleId {
    pub fn id(self) -> &'static str {
        match self {
            UpperRuleId::NormanSuzuki => "norman_suzuki",
            UpperRuleId::Schneiderman => "schneiderman",
            UpperRuleId::K3Unknotting => "k3_unknotting",
            UpperRuleId::K3Twist => "k3_twist",
            UpperRuleId::WhiteheadDouble => "whitehead_double",
        }
    }

    fn citation(self) -> &'static str {
        match self {
            UpperRuleId::NormanSuzuki => "Norman–Suzuki stabilized slice disks",
            UpperRuleId::Schneiderman => "Schneiderman: Arf-zero knots are H-slice after S²×S² stabilizations",
            UpperRuleId::K3Unknotting => "slicing via unknotting number ≤ 2 in the K3 surface",
            UpperRuleId::K3Twist => "negative full-twist moves realized in the K3 surface",
            UpperRuleId::WhiteheadDouble => "Whitehead doubles bounding homologically trivial surfaces",
        }
    }
}

impl fmt::Display for UpperRuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A constructive existence statement: the knot bounds a surface of genus
/// ≤ `genus_bound` in host∖B̊⁴ (null-homologous when flagged). Existential
/// certificates assert a host of unspecified size (e.g. some number of
/// stabilizations) and never match a concrete manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBoundCertificate {
    pub rule_id: UpperRuleId,
    pub host: String,
    pub genus_bound: u32,
    pub null_homologous: bool,
    pub existential: bool,
    pub statement: String,
    pub citations: String,
}

/// Summary verdict of a report. A certificate upgrade to `CertifiedSliceable`
/// happens only for null-homologous certificates matching the exact host and
/// genus — never from mere absence of obstructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summary {
    Obstructed(Vec<RuleId>),
    Consistent,
    CertifiedSliceable(UpperRuleId),
}

/// The full ledger for one problem: a problem echo, one outcome per rule in
/// fixed order, the upper-bound certificates, and the summary.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub label: String,
    pub manifold_name: String,
    pub class_display: String,
    pub genus: u32,
    pub smooth_category: bool,
    pub provenance: Option<String>,
    pub outcomes: Vec<RuleOutcome>,
    pub certificates: Vec<UpperBoundCertificate>,
    pub summary: Summary,
}

impl ObstructionReport {
    pub fn outcome(&self, rule: RuleId) -> &RuleOutcome {
        &self.outcomes[RuleId::ALL.iter().position(|&r| r == rule).unwrap()]
    }

    pub fn obstructed_rules(&self) -> Vec<RuleId> {
        self.outcomes.iter().filter(|o| o.is_obstructed()).map(|o| o.rule_id).collect()
    }
}

/// Evaluation configuration shared by single checks and scans.
#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    /// prime-power modulus bound for the signature rules (None → 16)
    pub max_modulus: Option<u32>,
    pub disabled: BTreeSet<RuleId>,
    pub spin_filling: Option<SpinFilling>,
    pub disk_certificate: Option<DiskCertificate>,
    pub upper_inputs: UpperBoundInputs,
}

pub const DEFAULT_MAX_MODULUS: u32 = 16;

impl EvalOptions {
    pub fn modulus_bound(&self) -> u32 {
        self.max_modulus.unwrap_or(DEFAULT_MAX_MODULUS)
    }
}

struct Ctx<'a> {
    p: &'a SurfaceProblem,
    class: &'a ResolvedClass,
    profile: Option<&'a SignatureProfile>,
    effective_m: u32,
    options: &'a EvalOptions,
}

/// Evaluates every rule on the problem and assembles the report.
///
/// Rules are pure and the ledger is emitted in fixed rule-id order, so the
/// result is deterministic. The signature profile is computed at most once.
pub fn evaluate_all(p: &SurfaceProblem, options: &EvalOptions) -> Result<ObstructionReport> {
    let m_bound = options.modulus_bound();
    if m_bound < 2 {
        return Err(Error::BadProblem(format!("modulus bound must be ≥ 2, got {m_bound}")));
    }
    p.knot.validate()?;
    p.manifold.validate()?;
    let class = resolve_class(p)?;

    // prefer a supplied profile when it covers the requested bound; otherwise
    // fall back to the Seifert matrix, and only shrink the effective bound
    // when neither source can reach it
    let computed: Option<SignatureProfile> = match (&p.profile, &p.seifert) {
        (Some(prof), _) if prof.max_modulus() >= m_bound => None,
        (_, Some(sm)) => Some(signature_profile(sm, m_bound)?),
        _ => None,
    };
    let (profile, effective_m): (Option<&SignatureProfile>, u32) = match (&computed, &p.profile) {
        (Some(c), _) => (Some(c), m_bound),
        (None, Some(prof)) => (Some(prof), prof.max_modulus().min(m_bound)),
        (None, None) => (None, m_bound),
    };

    let ctx = Ctx { p, class: &class, profile, effective_m, options };
    let outcomes: Vec<RuleOutcome> = RuleId::ALL
        .iter()
        .map(|&rule| {
            if options.disabled.contains(&rule) {
                return RuleOutcome::not_applicable(rule, "disabled by configuration");
            }
            if rule.category() == Category::Smooth && !p.smooth_category {
                return RuleOutcome::not_applicable(
                    rule,
                    "suppressed: problem posed in the topological category",
                );
            }
            match rule {
                RuleId::ArfSpin => rule_arf_spin(&ctx),
                RuleId::ArfCharacteristicDisk => rule_arf_characteristic_disk(&ctx),
                RuleId::SignatureWindow => rule_signature_window(&ctx),
                RuleId::RokhlinDivisible => rule_rokhlin_divisible(&ctx),
                RuleId::AdjunctionG4 => rule_adjunction_g4(&ctx),
                RuleId::AdjunctionNu => rule_adjunction_nu(&ctx),
                RuleId::TauDefinite => rule_tau_definite(&ctx),
                RuleId::MrowkaRollin => rule_mrowka_rollin(&ctx),
                RuleId::DonaldVafaee => rule_donald_vafaee(&ctx),
                RuleId::BauerFuruta => rule_bauer_furuta(&ctx),
            }
        })
        .collect();

    let certificates = upper_bound_rules(&p.knot, &options.upper_inputs);

    let obstructed: Vec<RuleId> =
        outcomes.iter().filter(|o| o.is_obstructed()).map(|o| o.rule_id).collect();
    let summary = if !obstructed.is_empty() {
        Summary::Obstructed(obstructed)
    } else if let Some(cert) = certificates.iter().find(|c| {
        !c.existential
            && c.null_homologous
            && c.host == p.manifold.name
            && c.genus_bound <= p.genus
            && class.is_zero
    }) {
        Summary::CertifiedSliceable(cert.rule_id)
    } else {
        Summary::Consistent
    };

    Ok(ObstructionReport {
        label: p.label.clone(),
        manifold_name: p.manifold.name.clone(),
        class_display: p.class_display(),
        genus: p.genus,
        smooth_category: p.smooth_category,
        provenance: p.provenance.clone(),
        outcomes,
        certificates,
        summary,
    })
}

fn paren(x: impl fmt::Display) -> String {
    let s = x.to_string();
    if s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

fn rule_arf_spin(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::ArfSpin;
    if !ctx.p.manifold.spin {
        return RuleOutcome::not_applicable(R, "manifold is not spin");
    }
    if !ctx.class.is_zero {
        return RuleOutcome::not_applicable(R, "class is nonzero (rule addresses H-sliceness)");
    }
    if ctx.p.genus != 0 {
        return RuleOutcome::not_applicable(R, "genus > 0 (rule addresses disks)");
    }
    let arf = ctx.p.knot.arf;
    RuleOutcome::decided(
        R,
        arf == 1,
        if arf == 1 { "Arf(K) = 1 ≠ 0".into() } else { "Arf(K) = 0".into() },
    )
}

fn rule_arf_characteristic_disk(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::ArfCharacteristicDisk;
    if ctx.p.genus != 0 {
        return RuleOutcome::not_applicable(R, "genus > 0 (rule addresses disks)");
    }
    match ctx.class.characteristic {
        None => {
            return RuleOutcome::not_applicable(
                R,
                "characteristic status of the class is not determinable from the inputs",
            )
        }
        Some(false) => return RuleOutcome::not_applicable(R, "class is not characteristic"),
        Some(true) => {}
    }
    if !ctx.p.manifold.h1_zero {
        return RuleOutcome::not_applicable(R, "H₁(X) ≠ 0");
    }
    let diff = ctx.p.manifold.sigma() - ctx.class.square;
    if diff.rem_euclid(8) != 0 {
        return RuleOutcome::decided(
            R,
            true,
            format!("σ(X) − ξ² = {diff} ≢ 0 (mod 8), impossible for a characteristic class"),
        );
    }
    let t = diff / 8;
    let arf = ctx.p.knot.arf as i64;
    let congruent = (t - arf).rem_euclid(2) == 0;
    let rel = if congruent { "≡" } else { "≢" };
    RuleOutcome::decided(
        R,
        !congruent,
        format!("Arf(K) = {arf} {rel} {t} = (σ(X) − ξ²)/8 (mod 2)"),
    )
}

fn rule_signature_window(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::SignatureWindow;
    if !ctx.class.is_zero {
        return RuleOutcome::not_applicable(R, "class is nonzero (rule addresses H-sliceness)");
    }
    if !ctx.p.manifold.h1_zero {
        return RuleOutcome::not_applicable(R, "H₁(X) ≠ 0");
    }
    let Some(profile) = ctx.profile else {
        return RuleOutcome::not_applicable(
            R,
            "missing input: Seifert matrix or signature profile",
        );
    };
    let spread = ctx.p.manifold.b2() as i64 + 2 * ctx.p.genus as i64;
    let (lo, hi) = (-ctx.p.manifold.sigma() - spread, -ctx.p.manifold.sigma() + spread);
    for ((m, r), value) in profile.iter() {
        if m > ctx.effective_m {
            continue;
        }
        if value < lo || value > hi {
            return RuleOutcome::decided(
                R,
                true,
                format!("σ_K at (m,r)=({m},{r}) is {value}, outside [{lo}, {hi}]"),
            );
        }
    }
    RuleOutcome::decided(
        R,
        false,
        format!(
            "all σ_K at prime-power roots with m ≤ {} lie in [{lo}, {hi}]",
            ctx.effective_m
        ),
    )
}

fn rule_rokhlin_divisible(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::RokhlinDivisible;
    if !ctx.p.manifold.h1_zero {
        return RuleOutcome::not_applicable(R, "H₁(X) ≠ 0");
    }
    let admissible: Vec<u32> = prime_powers_up_to(ctx.effective_m)
        .into_iter()
        .filter(|&m| ctx.class.is_zero || ctx.class.divisibility % m as u64 == 0)
        .collect();
    if admissible.is_empty() {
        return RuleOutcome::not_applicable(
            R,
            format!(
                "class divisibility {} has no prime-power divisor ≤ {}",
                ctx.class.divisibility, ctx.effective_m
            ),
        );
    }
    let Some(profile) = ctx.profile else {
        return RuleOutcome::not_applicable(
            R,
            "missing input: Seifert matrix or signature profile",
        );
    };
    let sigma_x = ctx.p.manifold.sigma();
    let bound = ctx.p.manifold.b2() as i64 + 2 * ctx.p.genus as i64;
    let bound_rat = BigRational::from_integer(BigInt::from(bound));
    for &m in &admissible {
        for r in 1..m {
            let sig = profile
                .get(m, r)
                .expect("profile covers all prime-power pairs up to its bound");
            let term = BigRational::new(
                BigInt::from(2 * r as i128 * (m - r) as i128 * ctx.class.square as i128),
                BigInt::from(m as i128 * m as i128),
            );
            let value = BigRational::from_integer(BigInt::from(sig + sigma_x)) - &term;
            let abs = value.abs();
            if abs > bound_rat {
                return RuleOutcome::decided(
                    R,
                    true,
                    format!(
                        "m={m}, r={r}: |{sig} + {} - {}| = {abs} > {bound}",
                        paren(sigma_x),
                        paren(&term)
                    ),
                );
            }
        }
    }
    let set =
        admissible.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ");
    RuleOutcome::decided(
        R,
        false,
        format!(
            "all roots with m ∈ {{{set}}} satisfy |σ_K(ω) + σ(X) − 2r(m−r)ξ²/m²| ≤ {bound}"
        ),
    )
}

/// Max of |⟨k,ξ⟩| + ξ² over the stored basic classes passing `select`.
/// Using |⟨k,ξ⟩| is exact because basic classes come in conjugate pairs ±k.
fn max_adjunction_lhs(
    ctx: &Ctx,
    select: impl Fn(&BasicClass) -> bool,
) -> Option<(i64, i64)> {
    ctx.p
        .manifold
        .basic_classes
        .iter()
        .zip(&ctx.class.pairings)
        .filter(|(c, _)| select(c))
        .map(|(_, &pair)| (pair.abs() + ctx.class.square, pair.abs()))
        .max_by_key(|&(lhs, _)| lhs)
}

fn rule_adjunction_g4(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::AdjunctionG4;
    if ctx.p.manifold.b2_plus <= 1 {
        return RuleOutcome::not_applicable(R, "b₂⁺(X) ≤ 1");
    }
    let Some(g4) = ctx.p.knot.genus4_upper else {
        return RuleOutcome::not_applicable(R, "missing input: smooth 4-genus of K");
    };
    if ctx.p.genus + g4 == 0 {
        return RuleOutcome::not_applicable(R, "g(Σ) + g₄(K) = 0");
    }
    if ctx.class.square < 0 && !ctx.p.manifold.simple_type {
        return RuleOutcome::not_applicable(
            R,
            "ξ² < 0 and X is not of Ozsváth–Szabó simple type",
        );
    }
    let Some((lhs, pair)) = max_adjunction_lhs(ctx, |c| c.phi_nonzero) else {
        return RuleOutcome::not_applicable(R, "no basic class with Φ ≠ 0");
    };
    let rhs = 2 * ctx.p.genus as i64 - 2 + 2 * g4 as i64;
    let cmp = if lhs > rhs { ">" } else { "≤" };
    RuleOutcome::decided(
        R,
        lhs > rhs,
        format!(
            "|⟨k,ξ⟩| + ξ² = {pair} + {} = {lhs} {cmp} {rhs} = 2g(Σ) − 2 + 2g₄(K)",
            paren(ctx.class.square)
        ),
    )
}

fn rule_adjunction_nu(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::AdjunctionNu;
    if ctx.p.manifold.b2_plus <= 1 {
        return RuleOutcome::not_applicable(R, "b₂⁺(X) ≤ 1");
    }
    if ctx.p.genus == 0 {
        return RuleOutcome::not_applicable(R, "genus 0 (rule requires g(Σ) ≥ 1)");
    }
    let Some(nu) = ctx.p.knot.nu_plus_mirror else {
        return RuleOutcome::not_applicable(R, "missing input: ν⁺ of the mirror");
    };
    if ctx.class.square < 2 * nu as i64 && !ctx.p.manifold.simple_type {
        return RuleOutcome::not_applicable(
            R,
            format!("ξ² < 2ν⁺(mK) = {} and X is not of Ozsváth–Szabó simple type", 2 * nu),
        );
    }
    let Some((lhs, pair)) = max_adjunction_lhs(ctx, |c| c.phi_nonzero) else {
        return RuleOutcome::not_applicable(R, "no basic class with Φ ≠ 0");
    };
    let rhs = 2 * ctx.p.genus as i64 - 2 + 2 * nu as i64;
    let cmp = if lhs > rhs { ">" } else { "≤" };
    RuleOutcome::decided(
        R,
        lhs > rhs,
        format!(
            "|⟨k,ξ⟩| + ξ² = {pair} + {} = {lhs} {cmp} {rhs} = 2g(Σ) − 2 + 2ν⁺(mK)",
            paren(ctx.class.square)
        ),
    )
}

fn rule_tau_definite(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::TauDefinite;
    if !ctx.p.manifold.negative_definite_diagonal() {
        return RuleOutcome::not_applicable(
            R,
            "intersection form is not negative definite diagonal",
        );
    }
    let Some(tau) = ctx.p.knot.tau else {
        return RuleOutcome::not_applicable(R, "missing input: τ(K)");
    };
    let Some(l1) = ctx.class.l1_norm else {
        return RuleOutcome::not_applicable(R, "missing input: class coordinates (for ‖ξ‖₁)");
    };
    let lhs = 2 * tau + l1 as i64 + ctx.class.square;
    let rhs = 2 * ctx.p.genus as i64;
    let cmp = if lhs > rhs { ">" } else { "≤" };
    RuleOutcome::decided(
        R,
        lhs > rhs,
        format!(
            "2τ(K) + ‖ξ‖₁ + ξ² = {} + {l1} + {} = {lhs} {cmp} {rhs} = 2g(Σ)",
            paren(2 * tau),
            paren(ctx.class.square)
        ),
    )
}

fn rule_mrowka_rollin(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::MrowkaRollin;
    let Some(sl) = ctx.p.knot.sl_bar else {
        return RuleOutcome::not_applicable(R, "missing input: maximal self-linking number s̄l(K)");
    };
    let Some((lhs, pair)) = max_adjunction_lhs(ctx, |c| c.rel_sw_nonzero) else {
        return RuleOutcome::not_applicable(
            R,
            "no basic class with nonvanishing relative Seiberg–Witten invariant",
        );
    };
    let rhs = 2 * ctx.p.genus as i64 - 1 - sl;
    let cmp = if lhs > rhs { ">" } else { "≤" };
    RuleOutcome::decided(
        R,
        lhs > rhs,
        format!(
            "|⟨k,ξ⟩| + ξ² = {pair} + {} = {lhs} {cmp} {rhs} = 2g(Σ) − 1 − s̄l(K)",
            paren(ctx.class.square)
        ),
    )
}

fn rule_donald_vafaee(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::DonaldVafaee;
    if !ctx.p.manifold.spin {
        return RuleOutcome::not_applicable(R, "manifold is not spin");
    }
    if !ctx.class.is_zero {
        return RuleOutcome::not_applicable(R, "class is nonzero (rule addresses H-sliceness)");
    }
    if ctx.p.genus != 0 {
        return RuleOutcome::not_applicable(R, "genus > 0 (rule addresses disks)");
    }
    let Some(w) = &ctx.options.spin_filling else {
        return RuleOutcome::not_applicable(
            R,
            "missing input: spin filling of the 0-surgery (b₂(W), σ(W))",
        );
    };
    let sum = ctx.p.manifold.b2() as i64 + w.b2_w as i64;
    if (sum == 1 || sum == 3 || sum == 23) && w.two_handlebody {
        return RuleOutcome::not_applicable(
            R,
            format!("b₂(X) + b₂(W) = {sum} is exempt for spin 2-handlebodies"),
        );
    }
    let constant = if w.two_handlebody { 5 } else { 4 };
    let rhs = BigRational::new(BigInt::from(10), BigInt::from(8))
        * BigRational::from_integer(BigInt::from((ctx.p.manifold.sigma() - w.sigma_w).abs()))
        + BigRational::from_integer(BigInt::from(constant));
    let lhs = BigRational::from_integer(BigInt::from(sum));
    let obstructed = lhs < rhs;
    let rel = if obstructed { "<" } else { "≥" };
    RuleOutcome::decided(R, obstructed, format!("{sum} {rel} {rhs}"))
}

fn rule_bauer_furuta(ctx: &Ctx) -> RuleOutcome {
    const R: RuleId = RuleId::BauerFuruta;
    let Some(cert) = &ctx.options.disk_certificate else {
        return RuleOutcome::not_applicable(
            R,
            "missing input: disk certificate for the mirror knot",
        );
    };
    if !ctx.class.is_zero || ctx.p.genus != 0 {
        return RuleOutcome::not_applicable(R, "rule addresses H-slice disks (ξ = 0, g = 0)");
    }
    if !cert.knot_is_mirror {
        return RuleOutcome::not_applicable(R, "certificate is not for the mirror knot");
    }
    if cert.square < 0 {
        return RuleOutcome::not_applicable(
            R,
            format!("certificate square {} < 0", cert.square),
        );
    }
    if !cert.nonzero_class {
        return RuleOutcome::not_applicable(R, "certificate class is zero");
    }
    let qualifies = |m: &FourManifold| (m.symplectic || m.bf_hypothesis) && m.b2_plus % 4 == 3;
    if !qualifies(&cert.host) {
        return RuleOutcome::not_applicable(
            R,
            format!(
                "host {} fails the gate (symplectic or SW-odd spin-c, and b₂⁺ ≡ 3 (mod 4))",
                cert.host.name
            ),
        );
    }
    if !qualifies(&ctx.p.manifold) {
        return RuleOutcome::not_applicable(
            R,
            format!(
                "target {} fails the gate (symplectic or SW-odd spin-c, and b₂⁺ ≡ 3 (mod 4))",
                ctx.p.manifold.name
            ),
        );
    }
    RuleOutcome::decided(
        R,
        true,
        format!(
            "mK bounds a disk with square {} ≥ 0 and nonzero class in {}; b₂⁺ = {} and {} are ≡ 3 (mod 4)",
            cert.square, cert.host.name, cert.host.b2_plus, ctx.p.manifold.b2_plus
        ),
    )
}

/// Runs every constructive upper-bound rule whose inputs are available and
/// returns the resulting certificates in fixed rule order.
pub fn upper_bound_rules(
    knot: &KnotInvariants,
    inputs: &UpperBoundInputs,
) -> Vec<UpperBoundCertificate> {
    let mut certs = Vec::new();
    for host in ["CP2 # mCP2", "S2xS2"] {
        certs.push(UpperBoundCertificate {
            rule_id: UpperRuleId::NormanSuzuki,
            host: host.into(),
            genus_bound: 0,
            null_homologous: false,
            existential: false,
            statement: format!("every knot bounds a properly embedded disk in punctured {host}"),
            citations: UpperRuleId::NormanSuzuki.citation().into(),
        });
    }
    if knot.arf == 0 {
        certs.push(UpperBoundCertificate {
            rule_id: UpperRuleId::Schneiderman,
            host: "#n(S2xS2)".into(),
            genus_bound: 0,
            null_homologous: true,
            existential: true,
            statement: "Arf(K) = 0: K bounds a null-homologous disk in #n(S2xS2) for some n \
                        (existential; n is not computed)"
                .into(),
            citations: UpperRuleId::Schneiderman.citation().into(),
        });
    }
    if let Some(u) = inputs.unknotting_number {
        if u <= 2 {
            certs.push(UpperBoundCertificate {
                rule_id: UpperRuleId::K3Unknotting,
                host: "K3".into(),
                genus_bound: 0,
                null_homologous: false,
                existential: false,
                statement: format!(
                    "unknotting number {u} ≤ 2: K bounds a properly embedded disk in punctured K3"
                ),
                citations: UpperRuleId::K3Unknotting.citation().into(),
            });
        }
    }
    if let Some(twist) = &inputs.twist {
        if twist.k1 <= 5 && twist.k2 <= 5 {
            certs.push(UpperBoundCertificate {
                rule_id: UpperRuleId::K3Twist,
                host: "K3".into(),
                genus_bound: twist.g4_base,
                null_homologous: false,
                existential: false,
                statement: format!(
                    "two negative full twists on {} and {} ≤ 5 strands: K bounds a genus-{} \
                     surface in punctured K3",
                    twist.k1, twist.k2, twist.g4_base
                ),
                citations: UpperRuleId::K3Twist.citation().into(),
            });
        }
    }
    if let Some(wh) = &inputs.whitehead {
        certs.push(UpperBoundCertificate {
            rule_id: UpperRuleId::WhiteheadDouble,
            host: wh.host.clone(),
            genus_bound: 2 * wh.base_genus,
            null_homologous: true,
            existential: false,
            statement: format!(
                "Whitehead double with framing −[Σ]² of a companion bounding a genus-{} surface: \
                 bounds a homologically trivial genus-{} surface in punctured {}",
                wh.base_genus,
                2 * wh.base_genus,
                wh.host
            ),
            citations: UpperRuleId::WhiteheadDouble.citation().into(),
        });
    }
    certs
}
