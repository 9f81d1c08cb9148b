//! `relgenus` — exact genus-bound and sliceness obstructions from the
//! command line.
//!
//! Subcommands: `check` (one problem, full rule ledger), `scan` (every class
//! in a coordinate box), `dv` and `bf` (single-rule evaluations driven by
//! their extra inputs), `upper` (constructive upper-bound certificates), and
//! `invariants` (curated-bundle management).
//!
//! Exit status is 0 whenever the requested evaluation ran — an OBSTRUCTED
//! verdict is a successful run — and 2 for input errors: malformed grammar,
//! unknown names, inconsistent invariant bundles, unreadable files.

use clap::{Args, Parser, Subcommand};
use relgenus::{
    evaluate_all, manifold_from_text, merge_bundle, parse_class, parse_knot, parse_manifold,
    render_report, render_scan, rule_verdict_line, slice_scan, upper_bound_rules, ClassData,
    CuratedInvariantStore, DiskCertificate, EvalOptions, Error, FourManifold, KnotInvariants,
    ParsedKnot, ReportFormat, Result, RuleId, ScanConfig, SpinFilling, SurfaceProblem, TwistMove,
    UpperBoundInputs, WhiteheadData,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Environment variable naming the invariant-cache file; `--cache` overrides.
const CACHE_ENV: &str = "RELGENUS_CACHE";

#[derive(Parser)]
#[command(
    name = "relgenus",
    version,
    about = "Exact genus-bound and sliceness obstructions for knots in closed 4-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every obstruction rule on one (knot, manifold, class, genus) problem
    Check(CheckArgs),
    /// Evaluate a whole coordinate box of classes and report per-class verdicts
    Scan(ScanArgs),
    /// Donald–Vafaee obstruction from a spin filling of the 0-surgery
    Dv(DvArgs),
    /// Bauer–Furuta obstruction from a disk certificate for the mirror
    Bf(BfArgs),
    /// Constructive upper-bound certificates for a knot
    Upper(UpperArgs),
    /// List, show, or import curated invariant bundles
    Invariants(InvariantsArgs),
}

/// Where the ambient 4-manifold comes from: a connected-sum expression over
/// the built-in library, or a definition file.
#[derive(Args)]
struct ManifoldSpec {
    /// Connected sum of library manifolds (S4, CP2, mCP2, S2xS2, K3), e.g. "K3 # mCP2" or "3CP2 # 20mCP2"
    #[arg(long, value_name = "EXPR")]
    manifold: Option<String>,
    /// Manifold definition file (line-oriented `key value` format)
    #[arg(long, value_name = "FILE", conflicts_with = "manifold")]
    manifold_file: Option<PathBuf>,
}

impl ManifoldSpec {
    fn resolve(&self) -> Result<FourManifold> {
        match (&self.manifold, &self.manifold_file) {
            (Some(expr), None) => parse_manifold(expr),
            (None, Some(path)) => manifold_from_text(&std::fs::read_to_string(path)?),
            _ => Err(Error::MissingInput("one of --manifold or --manifold-file".into())),
        }
    }
}

/// Knot selection shared by `check`, `scan`, and `upper`: a knot spec, an
/// optional bundle file that overrides computed invariants, and the cache
/// file backing curated lookups.
#[derive(Args)]
struct KnotSpec {
    /// Knot: "unknot", "braid(n; e1 e2 ...)", "T(2,q)", or a curated name
    #[arg(long, value_name = "SPEC")]
    knot: String,
    /// Invariant-bundle file; its values override computed ones (conflicts warn on stderr)
    #[arg(long, value_name = "FILE")]
    bundle: Option<PathBuf>,
    /// Invariant-cache file overlaying the built-in table (default: $RELGENUS_CACHE)
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
}

impl KnotSpec {
    fn resolve(&self) -> Result<ParsedKnot> {
        let store = load_store(self.cache.as_deref())?;
        let mut knot = parse_knot(&self.knot, &store)?;
        if let Some(path) = &self.bundle {
            let entry = bundle_entry(path, &knot.label)?;
            let (merged, warnings) = merge_bundle(&knot.invariants, &entry.invariants)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            knot.invariants = merged;
            let mut source = format!("bundle: {}", path.display());
            if !entry.provenance.is_empty() {
                source = format!("{source} ({})", entry.provenance);
            }
            knot.provenance = Some(match knot.provenance.take() {
                Some(prior) => format!("{prior}; {source}"),
                None => source,
            });
        }
        Ok(knot)
    }
}

fn cache_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

/// The built-in curated table, overlaid with the user's cache file when one
/// is configured and exists. Cache entries win over built-ins.
fn load_store(flag: Option<&Path>) -> Result<CuratedInvariantStore> {
    let mut store = CuratedInvariantStore::with_defaults();
    if let Some(path) = cache_path(flag) {
        if path.exists() {
            overlay(&mut store, &CuratedInvariantStore::load(&path)?)?;
        }
    }
    Ok(store)
}

fn overlay(base: &mut CuratedInvariantStore, top: &CuratedInvariantStore) -> Result<()> {
    let names: Vec<String> = top.names().map(String::from).collect();
    for name in names {
        let entry = top.get(&name).expect("listed name is present");
        base.put(name, entry.invariants.clone(), entry.provenance.clone())?;
    }
    Ok(())
}

/// The entry a bundle file contributes: the one named after the knot, or the
/// file's sole entry.
fn bundle_entry(path: &Path, label: &str) -> Result<relgenus::StoreEntry> {
    let store = CuratedInvariantStore::load(path)?;
    if let Some(entry) = store.get(label) {
        return Ok(entry.clone());
    }
    if store.len() == 1 {
        let name = store.names().next().expect("nonempty store").to_string();
        return Ok(store.get(&name).expect("listed name is present").clone());
    }
    Err(Error::BadInvariants(format!(
        "bundle file {} has {} entries and none named \"{label}\"",
        path.display(),
        store.len()
    )))
}

fn parse_rule_id(s: &str) -> std::result::Result<RuleId, String> {
    RuleId::from_id(s).ok_or_else(|| {
        let known: Vec<&str> = RuleId::ALL.iter().map(|r| r.id()).collect();
        format!("unknown rule \"{s}\" (expected one of: {})", known.join(", "))
    })
}

/// A stand-in bundle for the label-only subcommands (`dv`, `bf`), whose rules
/// read no knot invariants — only the filling or certificate data.
fn placeholder_invariants() -> Result<KnotInvariants> {
    Ok(parse_knot("unknot", &CuratedInvariantStore::new())?.invariants)
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    knot: KnotSpec,
    #[command(flatten)]
    manifold: ManifoldSpec,
    /// Homology class: "0" or comma-separated coordinates in the form's basis
    #[arg(long, default_value = "0", value_name = "CLASS")]
    class: String,
    /// Surface genus
    #[arg(long, default_value_t = 0, value_name = "G")]
    genus: u32,
    /// Pose the problem for locally flat topological surfaces (suppresses smooth-only rules)
    #[arg(long)]
    topological: bool,
    /// Prime-power modulus bound for the signature rules (default 16)
    #[arg(long, value_name = "M")]
    max_modulus: Option<u32>,
    /// Disable a rule by id (repeatable)
    #[arg(long = "disable", value_parser = parse_rule_id, value_name = "RULE")]
    disabled: Vec<RuleId>,
    /// Unknotting number of the knot, if known (feeds the upper-bound rules)
    #[arg(long, value_name = "N")]
    unknotting: Option<u32>,
    /// "k1,k2,g": the knot arises from one of smooth 4-genus g by two negative full twists on k1 and k2 strands
    #[arg(long, value_name = "K1,K2,G")]
    twist: Option<String>,
    /// "HOST,G": the knot is a Whitehead double whose companion bounds a genus-G surface in punctured HOST
    #[arg(long, value_name = "HOST,G")]
    whitehead: Option<String>,
    /// Output format: text or records
    #[arg(long, default_value = "text", value_name = "FORMAT")]
    format: ReportFormat,
}

fn run_check(args: &CheckArgs) -> Result<()> {
    let manifold = args.manifold.resolve()?;
    let knot = args.knot.resolve()?;
    let class = parse_class(&args.class, manifold.b2() as usize)?;
    let mut problem = SurfaceProblem::new(
        knot.label,
        knot.invariants,
        knot.seifert,
        manifold,
        class,
        args.genus,
    );
    problem.smooth_category = !args.topological;
    if let Some(p) = knot.provenance {
        problem = problem.with_provenance(p);
    }
    let options = EvalOptions {
        max_modulus: args.max_modulus,
        disabled: args.disabled.iter().copied().collect(),
        upper_inputs: UpperBoundInputs {
            unknotting_number: args.unknotting,
            twist: args.twist.as_deref().map(parse_twist).transpose()?,
            whitehead: args.whitehead.as_deref().map(parse_whitehead).transpose()?,
        },
        ..EvalOptions::default()
    };
    let report = evaluate_all(&problem, &options)?;
    print!("{}", render_report(&report, args.format));
    Ok(())
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    knot: KnotSpec,
    #[command(flatten)]
    manifold: ManifoldSpec,
    /// Coordinate box bound: scan every class with |ξᵢ| ≤ B
    #[arg(long = "box", value_name = "B")]
    box_bound: u32,
    /// Largest genus to test (every genus in [0, G] is evaluated)
    #[arg(long, default_value_t = 0, value_name = "G")]
    genus_max: u32,
    /// Prime-power modulus bound for the signature rules (default 16)
    #[arg(long, value_name = "M")]
    max_modulus: Option<u32>,
    /// Disable a rule by id (repeatable)
    #[arg(long = "disable", value_parser = parse_rule_id, value_name = "RULE")]
    disabled: Vec<RuleId>,
    /// Refuse to enumerate more than this many classes
    #[arg(long, value_name = "N")]
    class_cap: Option<u64>,
    /// Output format: text or records
    #[arg(long, default_value = "text", value_name = "FORMAT")]
    format: ReportFormat,
}

fn run_scan(args: &ScanArgs) -> Result<()> {
    let manifold = args.manifold.resolve()?;
    let knot = args.knot.resolve()?;
    let mut cfg = ScanConfig::new(args.box_bound, args.genus_max);
    if let Some(m) = args.max_modulus {
        cfg.max_modulus = m;
    }
    if let Some(cap) = args.class_cap {
        cfg.class_cap = cap;
    }
    cfg.disabled = args.disabled.iter().copied().collect();
    let ledger = slice_scan(&knot.label, &knot.invariants, knot.seifert.as_ref(), &manifold, &cfg)?;
    print!("{}", render_scan(&ledger, args.format));
    Ok(())
}

#[derive(Args)]
struct DvArgs {
    /// Label for the knot under test (the rule consumes only the filling data)
    #[arg(long, value_name = "NAME")]
    knot_name: String,
    #[command(flatten)]
    manifold: ManifoldSpec,
    /// b₂ of the spin filling W of the 0-surgery on the knot
    #[arg(long, value_name = "N")]
    b2w: u32,
    /// Signature of W
    #[arg(long, value_name = "S", allow_hyphen_values = true)]
    sigmaw: i64,
    /// W is a general spin filling rather than a spin 2-handlebody
    #[arg(long)]
    general_filling: bool,
}

fn run_dv(args: &DvArgs) -> Result<()> {
    let manifold = args.manifold.resolve()?;
    let rank = manifold.b2() as usize;
    let problem = SurfaceProblem::new(
        args.knot_name.clone(),
        placeholder_invariants()?,
        None,
        manifold,
        ClassData::zero(rank),
        0,
    );
    let options = EvalOptions {
        spin_filling: Some(SpinFilling {
            b2_w: args.b2w,
            sigma_w: args.sigmaw,
            two_handlebody: !args.general_filling,
        }),
        ..EvalOptions::default()
    };
    let report = evaluate_all(&problem, &options)?;
    println!("{}", rule_verdict_line(report.outcome(RuleId::DonaldVafaee)));
    Ok(())
}

#[derive(Args)]
struct BfArgs {
    /// Label for the knot under test (the rule consumes only the certificate)
    #[arg(long, value_name = "NAME")]
    knot_name: String,
    #[command(flatten)]
    manifold: ManifoldSpec,
    /// Host manifold of the disk certificate (connected-sum expression)
    #[arg(long, value_name = "EXPR")]
    host: String,
    /// Square of the certified disk class
    #[arg(long, default_value_t = 0, value_name = "Q", allow_hyphen_values = true)]
    square: i64,
    /// The certified disk class is zero (certificates need a nonzero class)
    #[arg(long)]
    zero_class: bool,
    /// The certificate is for the knot itself rather than its mirror
    #[arg(long)]
    not_mirror: bool,
}

fn run_bf(args: &BfArgs) -> Result<()> {
    let manifold = args.manifold.resolve()?;
    let host = parse_manifold(&args.host)?;
    let rank = manifold.b2() as usize;
    let problem = SurfaceProblem::new(
        args.knot_name.clone(),
        placeholder_invariants()?,
        None,
        manifold,
        ClassData::zero(rank),
        0,
    );
    let options = EvalOptions {
        disk_certificate: Some(DiskCertificate {
            host,
            square: args.square,
            nonzero_class: !args.zero_class,
            knot_is_mirror: !args.not_mirror,
        }),
        ..EvalOptions::default()
    };
    let report = evaluate_all(&problem, &options)?;
    println!("{}", rule_verdict_line(report.outcome(RuleId::BauerFuruta)));
    Ok(())
}

#[derive(Args)]
struct UpperArgs {
    #[command(flatten)]
    knot: KnotSpec,
    /// Unknotting number of the knot, if known
    #[arg(long, value_name = "N")]
    unknotting: Option<u32>,
    /// "k1,k2,g": the knot arises from one of smooth 4-genus g by two negative full twists on k1 and k2 strands
    #[arg(long, value_name = "K1,K2,G")]
    twist: Option<String>,
    /// "HOST,G": the knot is a Whitehead double whose companion bounds a genus-G surface in punctured HOST
    #[arg(long, value_name = "HOST,G")]
    whitehead: Option<String>,
}

fn run_upper(args: &UpperArgs) -> Result<()> {
    let knot = args.knot.resolve()?;
    let inputs = UpperBoundInputs {
        unknotting_number: args.unknotting,
        twist: args.twist.as_deref().map(parse_twist).transpose()?,
        whitehead: args.whitehead.as_deref().map(parse_whitehead).transpose()?,
    };
    let certificates = upper_bound_rules(&knot.invariants, &inputs);
    println!("upper bounds for {}:", knot.label);
    if certificates.is_empty() {
        println!("  none");
        return Ok(());
    }
    for cert in &certificates {
        let null = if cert.null_homologous { ", null-homologous" } else { "" };
        let existential = if cert.existential { ", existential" } else { "" };
        println!(
            "  {}: genus ≤ {} in {}{null}{existential} — {}",
            cert.rule_id,
            cert.genus_bound,
            cert.host,
            cert.statement
        );
    }
    Ok(())
}

fn parse_twist(s: &str) -> Result<TwistMove> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [k1, k2, g4_base] = parts.as_slice() else {
        return Err(Error::Parse(format!("expected \"k1,k2,g\" for --twist, got \"{s}\"")));
    };
    let number = |what: &str, v: &str| {
        v.parse::<u32>().map_err(|_| Error::Parse(format!("invalid {what} \"{v}\" in --twist")))
    };
    Ok(TwistMove {
        k1: number("strand count k1", k1)?,
        k2: number("strand count k2", k2)?,
        g4_base: number("base genus", g4_base)?,
    })
}

fn parse_whitehead(s: &str) -> Result<WhiteheadData> {
    let Some((host, genus)) = s.rsplit_once(',') else {
        return Err(Error::Parse(format!("expected \"HOST,G\" for --whitehead, got \"{s}\"")));
    };
    // Validate the host against the expression grammar, but store the name.
    let host = parse_manifold(host.trim())?.name;
    let base_genus = genus
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("invalid base genus \"{}\" in --whitehead", genus.trim())))?;
    Ok(WhiteheadData { host, base_genus })
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(subcommand)]
    action: InvariantsAction,
}

#[derive(Subcommand)]
enum InvariantsAction {
    /// List every known bundle: built-ins plus the cache overlay
    List {
        /// Invariant-cache file (default: $RELGENUS_CACHE)
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
    /// Print one bundle in the store's tab-separated line format
    Show {
        /// Bundle name, e.g. "T(2,5)"
        #[arg(long, value_name = "NAME")]
        knot: String,
        /// Invariant-cache file (default: $RELGENUS_CACHE)
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
    /// Copy every bundle from a file into the cache
    Import {
        /// Bundle file to import
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        /// Invariant-cache file to write (default: $RELGENUS_CACHE)
        #[arg(long, value_name = "FILE")]
        cache: Option<PathBuf>,
    },
}

fn run_invariants(args: &InvariantsArgs) -> Result<()> {
    match &args.action {
        InvariantsAction::List { cache } => {
            let store = load_store(cache.as_deref())?;
            for name in store.names() {
                let entry = store.get(name).expect("listed name is present");
                println!("{name}\t{}", entry.provenance);
            }
            Ok(())
        }
        InvariantsAction::Show { knot, cache } => {
            let store = load_store(cache.as_deref())?;
            let entry = store
                .get(knot)
                .ok_or_else(|| Error::UnknownName(format!("no bundle named \"{knot}\"")))?;
            let mut single = CuratedInvariantStore::new();
            single.put(knot.clone(), entry.invariants.clone(), entry.provenance.clone())?;
            print!("{}", single.to_text());
            Ok(())
        }
        InvariantsAction::Import { file, cache } => {
            let path = cache_path(cache.as_deref()).ok_or_else(|| {
                Error::MissingInput(format!("--cache or ${CACHE_ENV} to import into"))
            })?;
            let source = CuratedInvariantStore::load(file)?;
            // The cache file holds only user entries; built-ins stay implicit.
            let mut target = if path.exists() {
                CuratedInvariantStore::load(&path)?
            } else {
                CuratedInvariantStore::new()
            };
            overlay(&mut target, &source)?;
            target.save(&path)?;
            println!("imported {} bundle(s) into {}", source.len(), path.display());
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Check(args) => run_check(args),
        Command::Scan(args) => run_scan(args),
        Command::Dv(args) => run_dv(args),
        Command::Bf(args) => run_bf(args),
        Command::Upper(args) => run_upper(args),
        Command::Invariants(args) => run_invariants(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
