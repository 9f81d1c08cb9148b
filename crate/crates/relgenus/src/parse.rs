//! Input grammars shared by the CLI: braid words, knot specifications,
//! manifold expressions and definition files, homology classes, and
//! V-sequences.
//!
//! Everything here is strict — malformed input is an error, never a guess:
//!
//! - braid word: `braid(n; e1 e2 ... ek)`, signed letters, whitespace-split
//! - knot: `unknot`, a braid word, `T(2,q)` for odd q, or a curated name
//! - manifold: `#`-separated library terms with optional multiplier
//!   prefixes, e.g. `K3 # mCP2` or `3CP2 # 20mCP2`
//! - class: `0` (the zero class in any rank) or comma-separated coordinates
//! - V-sequence: comma-separated values ending in 0, e.g. `3,2,1,0`

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::floer::{torus_knot_table, VSequence};
use crate::invariants::{CuratedInvariantStore, KnotInvariants};
use crate::manifold::{BasicClass, FourManifold, HomologyClass};
use crate::obstruction::ClassData;
use crate::seifert::SeifertMatrix;
use num_bigint::BigUint;
use std::fmt::Write as _;

/// Parses `braid(n; e1 e2 ... ek)`. The letter list may be empty (the
/// 1-strand empty word is the unknot); letter validity and the knot-closure
/// condition are checked by [`BraidWord::new`].
pub fn parse_braid(s: &str) -> Result<BraidWord> {
    let s = s.trim();
    let inner = s
        .strip_prefix("braid(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected braid(n; letters), got \"{s}\"")))?;
    let (strands, letters) = inner.split_once(';').ok_or_else(|| {
        Error::Parse("braid word needs a ';' between the strand count and the letters".into())
    })?;
    let strands: u32 = strands.trim().parse().map_err(|_| {
        Error::Parse(format!(
            "strand count must be a positive integer, got \"{}\"",
            strands.trim()
        ))
    })?;
    let letters = letters
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad braid letter \"{tok}\"")))
        })
        .collect::<Result<Vec<i32>>>()?;
    BraidWord::new(strands, letters)
}

/// A knot specification resolved to evaluation inputs. `seifert` is present
/// exactly when the spec carries a braid presentation; `provenance` records
/// where a curated bundle came from and is `None` for plain braid input.
#[derive(Clone, Debug)]
pub struct ParsedKnot {
    pub label: String,
    pub invariants: KnotInvariants,
    pub seifert: Option<SeifertMatrix>,
    pub provenance: Option<String>,
}

/// The unknot's bundle: every optional invariant is known and trivial
/// (s̄l = −1 is the Bennequin-maximal value for the unknot).
fn unknot_invariants() -> KnotInvariants {
    KnotInvariants {
        determinant: BigUint::from(1u8),
        arf: 0,
        signature: 0,
        genus4_lower: 0,
        genus4_upper: Some(0),
        nu_plus_mirror: Some(0),
        tau: Some(0),
        sl_bar: Some(-1),
        v_sequence: Some(VSequence::zero()),
    }
}

const UNKNOT_PROVENANCE: &str = "curated: unknot";

fn unknot_spec(label: String) -> ParsedKnot {
    ParsedKnot {
        label,
        invariants: unknot_invariants(),
        seifert: Some(BraidWord::unknot().seifert_matrix()),
        provenance: Some(UNKNOT_PROVENANCE.into()),
    }
}

/// Resolves a knot specification: `unknot`, a braid word, `T(2,q)`, or a
/// name in the curated store.
///
/// Torus specs get both a curated bundle (store entry when present, closed
/// forms otherwise) and the σ₁^q Seifert matrix, so every rule has its
/// inputs. Store names resolve to bundle-only knots with no Seifert data.
pub fn parse_knot(spec: &str, store: &CuratedInvariantStore) -> Result<ParsedKnot> {
    let spec = spec.trim();
    if spec == "unknot" {
        return Ok(unknot_spec("unknot".into()));
    }
    if spec.starts_with("braid(") {
        let braid = parse_braid(spec)?;
        let mut label = format!("braid({};", braid.strands());
        for e in braid.letters() {
            write!(label, " {e}").unwrap();
        }
        label.push(')');
        return Ok(ParsedKnot {
            label,
            invariants: KnotInvariants::from_braid(&braid)?,
            seifert: Some(braid.seifert_matrix()),
            provenance: None,
        });
    }
    if let Some(param) = spec.strip_prefix("T(2,").and_then(|rest| rest.strip_suffix(')')) {
        let q: i64 = param.trim().parse().map_err(|_| {
            Error::Parse(format!("bad torus knot parameter \"{}\"", param.trim()))
        })?;
        if q.rem_euclid(2) == 0 {
            return Err(Error::Parse(format!(
                "T(2,{q}) is a link, not a knot (q must be odd)"
            )));
        }
        let label = format!("T(2,{q})");
        if q.abs() == 1 {
            return Ok(unknot_spec(label));
        }
        if q.abs() > 9999 {
            return Err(Error::Parse(format!("torus knot parameter {q} out of range")));
        }
        let braid = BraidWord::torus_2(q as i32)?;
        let (invariants, provenance) = match store.get(&label) {
            Some(entry) => (entry.invariants.clone(), entry.provenance.clone()),
            None => (torus_knot_table(q)?, "computed: torus knot closed forms".into()),
        };
        return Ok(ParsedKnot {
            label,
            invariants,
            seifert: Some(braid.seifert_matrix()),
            provenance: Some(provenance),
        });
    }
    match store.get(spec) {
        Some(entry) => Ok(ParsedKnot {
            label: spec.into(),
            invariants: entry.invariants.clone(),
            seifert: None,
            provenance: Some(entry.provenance.clone()),
        }),
        None => Err(Error::UnknownName(format!("knot \"{spec}\""))),
    }
}

/// Merges an explicit invariant bundle over computed values. The bundle wins
/// wherever it speaks, and every disagreement with a computed value becomes a
/// warning; fields the bundle leaves unset keep the computed values. The
/// merged bundle is re-validated.
pub fn merge_bundle(
    computed: &KnotInvariants,
    bundle: &KnotInvariants,
) -> Result<(KnotInvariants, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut out = computed.clone();

    if bundle.determinant != computed.determinant {
        warnings.push(format!(
            "bundle overrides determinant: computed {}, bundle {}",
            computed.determinant, bundle.determinant
        ));
    }
    out.determinant = bundle.determinant.clone();
    if bundle.arf != computed.arf {
        warnings.push(format!(
            "bundle overrides Arf invariant: computed {}, bundle {}",
            computed.arf, bundle.arf
        ));
    }
    out.arf = bundle.arf;
    if bundle.signature != computed.signature {
        warnings.push(format!(
            "bundle overrides signature: computed {}, bundle {}",
            computed.signature, bundle.signature
        ));
    }
    out.signature = bundle.signature;
    if bundle.genus4_lower != computed.genus4_lower {
        warnings.push(format!(
            "bundle overrides g₄ lower bound: computed {}, bundle {}",
            computed.genus4_lower, bundle.genus4_lower
        ));
    }
    out.genus4_lower = bundle.genus4_lower;

    macro_rules! merge_option {
        ($field:ident, $label:expr) => {
            if let Some(v) = &bundle.$field {
                if let Some(c) = &computed.$field {
                    if c != v {
                        warnings.push(format!(
                            "bundle overrides {}: computed {}, bundle {}",
                            $label, c, v
                        ));
                    }
                }
                out.$field = Some(v.clone());
            }
        };
    }
    merge_option!(genus4_upper, "g₄ upper bound");
    merge_option!(nu_plus_mirror, "ν⁺ of the mirror");
    merge_option!(tau, "τ");
    merge_option!(sl_bar, "s̄l");
    merge_option!(v_sequence, "V-sequence");

    out.validate()?;
    Ok((out, warnings))
}

/// Parses a connected-sum expression of library manifolds: terms separated
/// by `#`, each an optional multiplier followed by a library name. `K3`,
/// `CP2#mCP2`, and `3CP2 # 20mCP2` are all valid. The result is named by
/// the normalized expression (single spaces around `#`, multipliers kept).
pub fn parse_manifold(expr: &str) -> Result<FourManifold> {
    let mut total: Option<FourManifold> = None;
    let mut name_parts: Vec<String> = Vec::new();
    let mut summands: u64 = 0;
    for term in expr.split('#') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!(
                "empty term in manifold expression \"{expr}\""
            )));
        }
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (count_str, name) = term.split_at(digits);
        let count: u64 = if count_str.is_empty() {
            1
        } else {
            count_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplier \"{count_str}\"")))?
        };
        if count == 0 {
            return Err(Error::Parse(format!("multiplier 0 in term \"{term}\"")));
        }
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Parse(format!(
                "missing manifold name in term \"{term}\""
            )));
        }
        summands += count;
        if summands > 64 {
            return Err(Error::Parse(
                "connected sum too large (more than 64 summands)".into(),
            ));
        }
        let unit = FourManifold::standard(name)?;
        for _ in 0..count {
            total = Some(match total {
                None => unit.clone(),
                Some(acc) => acc.connected_sum(&unit),
            });
        }
        name_parts.push(if count == 1 {
            name.to_string()
        } else {
            format!("{count}{name}")
        });
    }
    let mut m = total.ok_or_else(|| Error::Parse("empty manifold expression".into()))?;
    m.name = name_parts.join(" # ");
    debug_assert!(m.validate().is_ok());
    Ok(m)
}

fn parse_flag(value: &str, line: usize, key: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::ParseAt {
            line,
            message: format!("{key} must be true or false, got \"{other}\""),
        }),
    }
}

fn parse_number<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::ParseAt {
        line,
        message: format!("bad {key} value \"{value}\""),
    })
}

fn parse_int_row(value: &str, line: usize) -> Result<Vec<i64>> {
    value
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| Error::ParseAt {
                line,
                message: format!("bad integer \"{tok}\""),
            })
        })
        .collect()
}

/// Reads a manifold definition file: one `key value` pair per line, with
/// blank lines and `#` comments skipped.
///
/// Required keys: `name`, `b2_plus`, `b2_minus`. The flags `h1_zero`,
/// `spin`, `symplectic`, `simple_type`, and `bf_hypothesis` default to
/// false. `euler` defaults to 2 + b₂, which is correct when b₁ = 0 — supply
/// it explicitly otherwise. Each `form` line carries one row of the
/// intersection form (b₂ rows of b₂ integers, in order); each `basic_class`
/// line carries two flags then b₂ coordinates:
/// `basic_class <phi_nonzero> <rel_sw_nonzero> <k1> ... <kb2>`.
///
/// The assembled manifold is validated before it is returned.
pub fn manifold_from_text(text: &str) -> Result<FourManifold> {
    let mut name: Option<String> = None;
    let mut b2_plus: Option<u32> = None;
    let mut b2_minus: Option<u32> = None;
    let mut h1_zero = false;
    let mut spin = false;
    let mut symplectic = false;
    let mut simple_type = false;
    let mut bf_hypothesis = false;
    let mut euler: Option<i64> = None;
    let mut form_rows: Vec<Vec<i64>> = Vec::new();
    let mut basic_classes: Vec<BasicClass> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        match key {
            "name" => {
                if rest.is_empty() {
                    return Err(Error::ParseAt { line, message: "name needs a value".into() });
                }
                name = Some(rest.to_string());
            }
            "b2_plus" => b2_plus = Some(parse_number(rest, line, "b2_plus")?),
            "b2_minus" => b2_minus = Some(parse_number(rest, line, "b2_minus")?),
            "h1_zero" => h1_zero = parse_flag(rest, line, "h1_zero")?,
            "spin" => spin = parse_flag(rest, line, "spin")?,
            "symplectic" => symplectic = parse_flag(rest, line, "symplectic")?,
            "simple_type" => simple_type = parse_flag(rest, line, "simple_type")?,
            "bf_hypothesis" => bf_hypothesis = parse_flag(rest, line, "bf_hypothesis")?,
            "euler" => euler = Some(parse_number(rest, line, "euler")?),
            "form" => form_rows.push(parse_int_row(rest, line)?),
            "basic_class" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(Error::ParseAt {
                        line,
                        message: "basic_class needs <phi_nonzero> <rel_sw_nonzero> <coords...>"
                            .into(),
                    });
                }
                let phi_nonzero = parse_flag(toks[0], line, "phi_nonzero")?;
                let rel_sw_nonzero = parse_flag(toks[1], line, "rel_sw_nonzero")?;
                let k_vector = parse_int_row(&toks[2..].join(" "), line)?;
                basic_classes.push(BasicClass { k_vector, phi_nonzero, rel_sw_nonzero });
            }
            other => {
                return Err(Error::ParseAt {
                    line,
                    message: format!("unknown key \"{other}\""),
                })
            }
        }
    }

    let name = name.ok_or_else(|| Error::Parse("manifold definition needs a name".into()))?;
    let b2_plus =
        b2_plus.ok_or_else(|| Error::Parse("manifold definition needs b2_plus".into()))?;
    let b2_minus =
        b2_minus.ok_or_else(|| Error::Parse("manifold definition needs b2_minus".into()))?;
    let b2 = b2_plus + b2_minus;
    let form = if form_rows.is_empty() {
        // b₂ = 0 means the empty form is exact knowledge, not absence of data
        if b2 == 0 { Some(vec![]) } else { None }
    } else {
        Some(form_rows)
    };
    let m = FourManifold {
        name,
        b2_plus,
        b2_minus,
        h1_zero,
        spin,
        symplectic,
        simple_type,
        bf_hypothesis,
        euler: euler.unwrap_or(2 + b2 as i64),
        form,
        basic_classes,
    };
    m.validate()?;
    Ok(m)
}

/// Writes a manifold in the definition-file format; inverse of
/// [`manifold_from_text`].
pub fn manifold_to_text(m: &FourManifold) -> String {
    let mut out = String::new();
    writeln!(out, "name {}", m.name).unwrap();
    writeln!(out, "b2_plus {}", m.b2_plus).unwrap();
    writeln!(out, "b2_minus {}", m.b2_minus).unwrap();
    for (key, value) in [
        ("h1_zero", m.h1_zero),
        ("spin", m.spin),
        ("symplectic", m.symplectic),
        ("simple_type", m.simple_type),
        ("bf_hypothesis", m.bf_hypothesis),
    ] {
        writeln!(out, "{key} {value}").unwrap();
    }
    writeln!(out, "euler {}", m.euler).unwrap();
    if let Some(q) = &m.form {
        for row in q {
            let toks: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(out, "form {}", toks.join(" ")).unwrap();
        }
    }
    for class in &m.basic_classes {
        let toks: Vec<String> = class.k_vector.iter().map(|x| x.to_string()).collect();
        writeln!(
            out,
            "basic_class {} {} {}",
            class.phi_nonzero,
            class.rel_sw_nonzero,
            toks.join(" ")
        )
        .unwrap();
    }
    out
}

/// Parses a homology class: `0` is the zero class in any rank; otherwise
/// comma-separated integer coordinates whose count must match the rank.
pub fn parse_class(s: &str, rank: usize) -> Result<ClassData> {
    let s = s.trim();
    if s == "0" {
        return Ok(ClassData::zero(rank));
    }
    let xi = s
        .split(',')
        .map(|tok| {
            tok.trim().parse::<i64>().map_err(|_| {
                Error::Parse(format!("bad class coordinate \"{}\"", tok.trim()))
            })
        })
        .collect::<Result<Vec<i64>>>()?;
    if xi.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: xi.len() });
    }
    Ok(ClassData::Vector(HomologyClass { xi }))
}

/// Parses a comma-separated V-sequence such as `3,2,1,0`; monotonicity and
/// the terminal zero are checked by [`VSequence::new`].
pub fn parse_v_sequence(s: &str) -> Result<VSequence> {
    let values = s
        .trim()
        .split(',')
        .map(|tok| {
            tok.trim().parse::<u64>().map_err(|_| {
                Error::Parse(format!("bad V-sequence entry \"{}\"", tok.trim()))
            })
        })
        .collect::<Result<Vec<u64>>>()?;
    VSequence::new(values)
}
