//! Knot invariant bundles: the collection of classical and Floer-theoretic
//! invariants the obstruction rules consume, plus a file-backed curated
//! store for invariants that cannot be computed from a braid alone.

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::floer::{torus_knot_table, VSequence};
use crate::signature::{levine_tristram, PrimePowerRoot};
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

/// Invariants of a fixed knot K. The required fields are computable from any
/// Seifert matrix; the optional ones come from curated tables or user input.
///
/// `nu_plus_mirror` is ν⁺ of the mirror mK, `v_sequence` is the V-sequence
/// of K itself, and `sl_bar` is the maximal self-linking number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInvariants {
    pub determinant: BigUint,
    pub arf: u8,
    pub signature: i64,
    pub genus4_lower: u32,
    pub genus4_upper: Option<u32>,
    pub nu_plus_mirror: Option<u32>,
    pub tau: Option<i64>,
    pub sl_bar: Option<i64>,
    pub v_sequence: Option<VSequence>,
}

impl KnotInvariants {
    /// Computes the unconditional fields from a braid presentation:
    /// determinant and Arf from the Alexander polynomial, signature at −1,
    /// the signature lower bound |σ|/2 ≤ g₄, and the Seifert-surface upper
    /// bound g₄ ≤ g₃.
    pub fn from_braid(braid: &BraidWord) -> Result<KnotInvariants> {
        let sm = braid.seifert_matrix();
        let (determinant, arf) = sm.determinant_and_arf();
        let signature = levine_tristram(&sm, &PrimePowerRoot::new(2, 1)?)?;
        let inv = KnotInvariants {
            determinant,
            arf,
            signature,
            genus4_lower: (signature.unsigned_abs() / 2) as u32,
            genus4_upper: Some(sm.genus()),
            nu_plus_mirror: None,
            tau: None,
            sl_bar: None,
            v_sequence: None,
        };
        inv.validate()?;
        Ok(inv)
    }

    /// Consistency checks: determinant odd, Arf matching det mod 8,
    /// signature even, and the lower/upper genus and ν⁺ bounds compatible.
    pub fn validate(&self) -> Result<()> {
        if !self.determinant.bit(0) {
            return Err(Error::BadInvariants(format!(
                "determinant must be odd, got {}",
                self.determinant
            )));
        }
        if self.arf > 1 {
            return Err(Error::BadInvariants(format!("arf must be 0 or 1, got {}", self.arf)));
        }
        let mod8 = self.determinant.bit(0) as u8
            + 2 * self.determinant.bit(1) as u8
            + 4 * self.determinant.bit(2) as u8;
        let arf_from_det = if mod8 == 1 || mod8 == 7 { 0 } else { 1 };
        if self.arf != arf_from_det {
            return Err(Error::BadInvariants(format!(
                "arf = {} contradicts determinant ≡ {mod8} (mod 8)",
                self.arf
            )));
        }
        if self.signature.rem_euclid(2) != 0 {
            return Err(Error::BadInvariants(format!(
                "signature must be even, got {}",
                self.signature
            )));
        }
        if let Some(upper) = self.genus4_upper {
            if self.genus4_lower > upper {
                return Err(Error::BadInvariants(format!(
                    "genus bounds cross: {} > {upper}",
                    self.genus4_lower
                )));
            }
            if let Some(nu) = self.nu_plus_mirror {
                if nu > upper {
                    return Err(Error::BadInvariants(format!(
                        "ν⁺ of the mirror exceeds the smooth 4-genus: {nu} > {upper}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A stored invariant bundle together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreEntry {
    pub invariants: KnotInvariants,
    pub provenance: String,
}

/// Named knot-invariant bundles, serialized as tab-separated
/// `key  invariant  value  provenance` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CuratedInvariantStore {
    entries: BTreeMap<String, StoreEntry>,
}

const TORUS_PROVENANCE: &str = "curated: torus knot closed forms";

impl CuratedInvariantStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in table: T(2,±q) for odd 3 ≤ q ≤ 17.
    pub fn with_defaults() -> Self {
        let mut store = Self::new();
        for q in (3..=17).step_by(2) {
            for signed in [q, -q] {
                let inv = torus_knot_table(signed).expect("odd q ≥ 3");
                store
                    .put(format!("T(2,{signed})"), inv, TORUS_PROVENANCE.into())
                    .expect("closed forms validate");
            }
        }
        store
    }

    pub fn get(&self, key: &str) -> Option<&StoreEntry> {
        self.entries.get(key)
    }

    pub fn put(&mut self, key: String, invariants: KnotInvariants, provenance: String) -> Result<()> {
        invariants.validate()?;
        self.entries.insert(key, StoreEntry { invariants, provenance });
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|k| k.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Parses the line format. Blank lines and `#` comments are skipped;
    /// repeated (key, invariant) pairs take the last value seen.
    pub fn from_text(text: &str) -> Result<Self> {
        #[derive(Default)]
        struct Partial {
            determinant: Option<BigUint>,
            arf: Option<u8>,
            signature: Option<i64>,
            genus4_lower: Option<u32>,
            genus4_upper: Option<u32>,
            nu_plus_mirror: Option<u32>,
            tau: Option<i64>,
            sl_bar: Option<i64>,
            v_sequence: Option<VSequence>,
            provenance: String,
        }
        let mut partials: BTreeMap<String, Partial> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let at = |message: String| Error::ParseAt { line, message };
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 4 {
                return Err(at(format!(
                    "expected 4 tab-separated fields (key, invariant, value, provenance), got {}",
                    fields.len()
                )));
            }
            let (key, invariant, value, provenance) = (fields[0], fields[1], fields[2], fields[3]);
            if key.is_empty() {
                return Err(at("empty key".into()));
            }
            let entry = partials.entry(key.to_string()).or_default();
            entry.provenance = provenance.to_string();
            let bad = |what: &str| at(format!("invalid {what} value \"{value}\""));
            match invariant {
                "determinant" => {
                    entry.determinant = Some(BigUint::from_str(value).map_err(|_| bad("determinant"))?)
                }
                "arf" => {
                    entry.arf = Some(match value {
                        "0" => 0,
                        "1" => 1,
                        _ => return Err(bad("arf")),
                    })
                }
                "signature" => entry.signature = Some(value.parse().map_err(|_| bad("signature"))?),
                "genus4_lower" => {
                    entry.genus4_lower = Some(value.parse().map_err(|_| bad("genus4_lower"))?)
                }
                "genus4_upper" => {
                    entry.genus4_upper = Some(value.parse().map_err(|_| bad("genus4_upper"))?)
                }
                "nu_plus_mirror" => {
                    entry.nu_plus_mirror = Some(value.parse().map_err(|_| bad("nu_plus_mirror"))?)
                }
                "tau" => entry.tau = Some(value.parse().map_err(|_| bad("tau"))?),
                "sl_bar" => entry.sl_bar = Some(value.parse().map_err(|_| bad("sl_bar"))?),
                "v_sequence" => {
                    let values = value
                        .split(',')
                        .map(|s| s.trim().parse::<u64>().map_err(|_| bad("v_sequence")))
                        .collect::<Result<Vec<u64>>>()?;
                    entry.v_sequence =
                        Some(VSequence::new(values).map_err(|e| at(e.to_string()))?)
                }
                other => return Err(at(format!("unknown invariant \"{other}\""))),
            }
        }
        let mut store = Self::new();
        for (key, p) in partials {
            let missing = |field: &str| {
                Error::Parse(format!("entry \"{key}\" is missing required invariant \"{field}\""))
            };
            let invariants = KnotInvariants {
                determinant: p.determinant.ok_or_else(|| missing("determinant"))?,
                arf: p.arf.ok_or_else(|| missing("arf"))?,
                signature: p.signature.ok_or_else(|| missing("signature"))?,
                genus4_lower: p.genus4_lower.ok_or_else(|| missing("genus4_lower"))?,
                genus4_upper: p.genus4_upper,
                nu_plus_mirror: p.nu_plus_mirror,
                tau: p.tau,
                sl_bar: p.sl_bar,
                v_sequence: p.v_sequence,
            };
            invariants.validate().map_err(|e| match e {
                Error::BadInvariants(m) => Error::BadInvariants(format!("entry \"{key}\": {m}")),
                other => other,
            })?;
            store.entries.insert(key, StoreEntry { invariants, provenance: p.provenance });
        }
        Ok(store)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, entry) in &self.entries {
            let inv = &entry.invariants;
            let mut push = |name: &str, value: String| {
                writeln!(out, "{key}\t{name}\t{value}\t{}", entry.provenance).unwrap();
            };
            push("determinant", inv.determinant.to_string());
            push("arf", inv.arf.to_string());
            push("signature", inv.signature.to_string());
            push("genus4_lower", inv.genus4_lower.to_string());
            if let Some(v) = inv.genus4_upper {
                push("genus4_upper", v.to_string());
            }
            if let Some(v) = inv.nu_plus_mirror {
                push("nu_plus_mirror", v.to_string());
            }
            if let Some(v) = inv.tau {
                push("tau", v.to_string());
            }
            if let Some(v) = inv.sl_bar {
                push("sl_bar", v.to_string());
            }
            if let Some(v) = &inv.v_sequence {
                push("v_sequence", v.to_string());
            }
        }
        out
    }
}
