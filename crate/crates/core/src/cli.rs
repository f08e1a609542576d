//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code with the rendered output, so it can be driven from
//! tests as well as from `main`.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input or usage error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{
    adjoint_rep, restricted_derivations, semidirect_product, trivial_rep, validate_pair_exhaustive,
    validate_representation, ResLieDerPair, RestrictedRepresentation,
};
use crate::catalog;
use crate::cochain::{Cochain, PairCochain};
use crate::complex::{ComplexContext, ComplexKind};
use crate::deformation::{
    check_deformation, extend_deformation, infinitesimal, obstruction, trivialize,
    TruncatedDeformation,
};
use crate::error::{Error, Result};
use crate::extension::{
    build, derivation_obstruction, extensions_isomorphic, extract_cocycle, lift_derivation_pair,
    phi_action, AlgebraExtension, CentralExtensionSpec,
};
use crate::field::Field;
use crate::io::{matrix_to_raw, parse_matrix, resolve, InputDocument};
use crate::linalg::complement;

#[derive(Parser, Debug)]
#[command(
    name = "reslieder",
    version,
    about = "Cohomology, deformations and extensions of restricted Lie algebras with derivations in characteristic 2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Largest |F|^N for which element sweeps run.
    #[arg(long, global = true, default_value_t = 4096)]
    exhaustive_limit: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ComplexArg {
    Star2,
    Reslieder,
}

impl From<ComplexArg> for ComplexKind {
    fn from(c: ComplexArg) -> Self {
        match c {
            ComplexArg::Star2 => ComplexKind::Star2,
            ComplexArg::Reslieder => ComplexKind::ResLieDer,
        }
    }
}

/// Which module to take coefficients in.
#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum RepArg {
    /// The document's representation, or the trivial 1-dimensional one.
    Input,
    Trivial,
    Adjoint,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum DeformAction {
    Check,
    Infinitesimal,
    Obstruction,
    Extend,
    Trivialize,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ExtAction {
    Build,
    Extract,
    Iso,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input document (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct ComplexArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ComplexArg::Reslieder)]
    complex: ComplexArg,
    #[arg(long, value_enum, default_value_t = RepArg::Input)]
    rep: RepArg,
    /// Compute a single degree.
    #[arg(long, conflicts_with = "max_degree")]
    degree: Option<usize>,
    /// Compute all degrees up to this one.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of the pair, representation and deformation in a document.
    Validate(InputArg),
    /// Betti numbers of the chosen complex.
    Cohomology(ComplexArgs),
    /// Cocycle and coboundary bases in one degree.
    Cocycles(ComplexArgs),
    /// The semidirect product of the pair with its representation.
    Semidirect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RepArg::Input)]
        rep: RepArg,
    },
    /// Operations on the document's deformation.
    Deform {
        #[arg(value_enum)]
        action: DeformAction,
        #[arg(long)]
        input: PathBuf,
        /// Order of the trivial deformation used when the document has none;
        /// for `extend`, the order to reach.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Central extensions described by the document's `extension` block.
    CentralExt {
        #[arg(value_enum)]
        action: ExtAction,
        #[arg(long)]
        input: PathBuf,
    },
    /// Lift (D_g, D_h) to the extension described by the `extension` block.
    DerivationLift(InputArg),
    /// Print a catalog entry as an input document, or list the entries.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Field degree k of GF(2^k).
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs_digest: String,
    results: Value,
    warnings: Vec<String>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    results: Value,
    warnings: Vec<String>,
    negative: bool,
}

struct Loaded {
    doc: InputDocument,
    digest: String,
    dir: PathBuf,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text =
        String::from_utf8(bytes).map_err(|_| Error::InvalidInput("input is not UTF-8".into()))?;
    let doc = InputDocument::parse(&text)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { doc, digest, dir })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn raw(v: &[crate::field::Scalar]) -> Vec<u16> {
    v.iter().map(|s| s.0).collect()
}

fn pick_rep(
    doc: &InputDocument,
    pair: &ResLieDerPair,
    choice: RepArg,
) -> Result<(RestrictedRepresentation, &'static str)> {
    Ok(match choice {
        RepArg::Adjoint => (adjoint_rep(pair), "adjoint"),
        RepArg::Trivial => (trivial_rep(pair, 1, None), "trivial"),
        RepArg::Input => match doc.representation(pair)? {
            Some(r) => (r, "input"),
            None => (trivial_rep(pair, 1, None), "trivial"),
        },
    })
}

/// Pair and representation, both validated; invalid ones are input errors.
fn context(
    doc: &InputDocument,
    rep: RepArg,
    kind: ComplexKind,
) -> Result<(ComplexContext, &'static str)> {
    let pair = doc.pair()?;
    let pv = crate::algebra::validate_pair(&pair);
    if !pv.valid {
        return Err(Error::InvalidStructure(format!(
            "pair fails {} at {:?}",
            pv.failures[0].axiom, pv.failures[0].witness
        )));
    }
    let (rep, label) = pick_rep(doc, &pair, rep)?;
    let rv = validate_representation(&pair, &rep);
    if !rv.valid {
        return Err(Error::InvalidStructure(format!(
            "representation fails {} at {:?}",
            rv.failures[0].axiom, rv.failures[0].witness
        )));
    }
    Ok((ComplexContext::new(pair, rep, kind), label))
}

fn degrees(args: &ComplexArgs, default_max: usize) -> Vec<usize> {
    match (args.degree, args.max_degree) {
        (Some(d), _) => vec![d],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => (0..=default_max).collect(),
    }
}

fn cochain_json(
    ctx: &ComplexContext,
    degree: usize,
    coords: &[crate::field::Scalar],
) -> Result<Value> {
    Ok(match ctx.kind {
        ComplexKind::Star2 => {
            to_value(&Cochain::from_coords(ctx.shape(degree), coords.to_vec())?.to_json())
        }
        ComplexKind::ResLieDer => to_value(
            &PairCochain::from_coords(ctx.alg_dim(), ctx.rep_dim(), degree, coords)?.to_json(),
        ),
    })
}

fn cmd_validate(l: &Loaded, limit: u64) -> Result<Output> {
    let pair = l.doc.pair()?;
    let pr = validate_pair_exhaustive(&pair, limit);
    let mut negative = !pr.valid;
    let mut warnings = Vec::new();
    if !pr.sweep_ran {
        warnings.push(format!(
            "element sweep skipped: |F|^N exceeds the exhaustive limit {limit}"
        ));
    }
    let rep = match l.doc.representation(&pair)? {
        Some(r) => {
            let rr = validate_representation(&pair, &r);
            negative |= !rr.valid;
            to_value(&rr)
        }
        None => Value::Null,
    };
    let deformation = match l.doc.deformation(&pair)? {
        Some(d) => {
            let dr = check_deformation(&d)?;
            negative |= !dr.valid;
            to_value(&dr)
        }
        None => Value::Null,
    };
    let ders = restricted_derivations(&pair.algebra);
    let count = ders.count().map_or(Value::Null, |c| json!(c.to_string()));
    Ok(Output {
        results: json!({
            "pair": to_value(&pr),
            "representation": rep,
            "deformation": deformation,
            "restricted_derivations": {"dimension": ders.dimension(), "count": count},
        }),
        warnings,
        negative,
    })
}

fn cmd_cohomology(l: &Loaded, args: &ComplexArgs) -> Result<Output> {
    let (ctx, label) = context(&l.doc, args.rep, args.complex.into())?;
    let ds = degrees(args, 3);
    let max = *ds.iter().max().expect("at least one degree");
    let mut betti = vec![Value::Null; max + 1];
    let mut rows = Vec::new();
    for &d in &ds {
        let r = ctx.cohomology(d)?;
        betti[d] = json!(r.betti);
        rows.push(to_value(&r));
    }
    Ok(Output {
        results: json!({
            "complex": to_value(&ctx.kind),
            "representation": label,
            "rep_dim": ctx.rep_dim(),
            "degrees": rows,
            "betti": betti,
        }),
        warnings: Vec::new(),
        negative: false,
    })
}

fn cmd_cocycles(l: &Loaded, args: &ComplexArgs) -> Result<Output> {
    let (ctx, label) = context(&l.doc, args.rep, args.complex.into())?;
    let d = args.degree.or(args.max_degree).unwrap_or(2);
    let r = ctx.cohomology(d)?;
    let reps = complement(
        ctx.field(),
        ctx.cochain_dim(d),
        &r.coboundary_basis,
        &r.cocycle_basis,
    );
    let reps: Vec<Value> = reps
        .iter()
        .map(|v| cochain_json(&ctx, d, v))
        .collect::<Result<_>>()?;
    Ok(Output {
        results: json!({
            "complex": to_value(&ctx.kind),
            "representation": label,
            "summary": to_value(&r),
            "cocycle_basis": r.cocycle_basis.iter().map(|v| raw(v)).collect::<Vec<_>>(),
            "coboundary_basis": r.coboundary_basis.iter().map(|v| raw(v)).collect::<Vec<_>>(),
            "class_representatives": reps,
        }),
        warnings: Vec::new(),
        negative: false,
    })
}

fn cmd_semidirect(l: &Loaded, rep: RepArg, limit: u64) -> Result<Output> {
    let (ctx, label) = context(&l.doc, rep, ComplexKind::Star2)?;
    let sd = semidirect_product(&ctx.pair, &ctx.rep)?;
    let report = validate_pair_exhaustive(&sd, limit);
    Ok(Output {
        results: json!({
            "representation": label,
            "pair": to_value(&InputDocument::from_pair(&sd, None)),
            "validation": to_value(&report),
        }),
        warnings: Vec::new(),
        negative: !report.valid,
    })
}

fn deformation_of(l: &Loaded, order: Option<usize>) -> Result<TruncatedDeformation> {
    let pair = l.doc.pair()?;
    let pv = crate::algebra::validate_pair(&pair);
    if !pv.valid {
        return Err(Error::InvalidStructure(format!(
            "base pair fails {}",
            pv.failures[0].axiom
        )));
    }
    Ok(match l.doc.deformation(&pair)? {
        Some(d) => d,
        None => TruncatedDeformation::trivial(&pair, order.unwrap_or(1)),
    })
}

fn cmd_deform(l: &Loaded, action: DeformAction, order: Option<usize>) -> Result<Output> {
    let base_order = if matches!(action, DeformAction::Extend) {
        None
    } else {
        order
    };
    let d = deformation_of(l, base_order)?;
    let mut warnings = Vec::new();
    if l.doc.deformation.is_none() {
        warnings.push(format!(
            "no deformation in input; using the trivial deformation of order {}",
            d.order()
        ));
    }
    let (results, negative) = match action {
        DeformAction::Check => {
            let r = check_deformation(&d)?;
            (to_value(&r), !r.valid)
        }
        DeformAction::Infinitesimal => {
            let i = infinitesimal(&d)?;
            (
                json!({"cochain": to_value(&i.cochain.to_json()), "is_cocycle": i.is_cocycle}),
                !i.is_cocycle,
            )
        }
        DeformAction::Obstruction => {
            let o = obstruction(&d)?;
            (
                json!({
                    "order": o.order,
                    "cochain": to_value(&o.cochain.to_json()),
                    "is_cocycle": o.is_cocycle,
                    "trivial": o.trivial,
                    "witness": o.witness.as_ref().map(|w| to_value(&w.to_json())),
                }),
                !o.trivial,
            )
        }
        DeformAction::Extend => {
            let target = order.unwrap_or(d.order() + 1);
            let mut cur = d.clone();
            let mut blocked = false;
            while cur.order() < target {
                match extend_deformation(&cur)? {
                    Some(next) => cur = next,
                    None => {
                        blocked = true;
                        break;
                    }
                }
            }
            let doc = InputDocument::from_pair(&cur.base, None).with_deformation(&cur);
            (
                json!({"reached_order": cur.order(), "target_order": target, "blocked": blocked, "document": to_value(&doc)}),
                blocked,
            )
        }
        DeformAction::Trivialize => {
            let t = trivialize(&d)?;
            let steps: Vec<Value> = t
                .steps
                .iter()
                .map(|(k, m)| json!({"k": k, "pi": matrix_to_raw(m)}))
                .collect();
            let blocked = t
                .blocked_at
                .as_ref()
                .map(|(k, c)| json!({"order": k, "term": to_value(&c.to_json())}));
            (
                json!({"steps": steps, "blocked_at": blocked, "equivalent_to_trivial": t.blocked_at.is_none()}),
                t.blocked_at.is_some(),
            )
        }
    };
    Ok(Output {
        results,
        warnings,
        negative,
    })
}

struct ExtensionInput {
    g: ResLieDerPair,
    h: ResLieDerPair,
    block: crate::io::ExtensionJson,
}

fn extension_input(l: &Loaded) -> Result<ExtensionInput> {
    let block = l
        .doc
        .extension
        .clone()
        .ok_or_else(|| Error::InvalidInput("extension: missing".into()))?;
    let g = resolve(&block.g, &l.dir, "extension.g")?.pair()?;
    let h = resolve(&block.h, &l.dir, "extension.h")?.pair()?;
    if g.field() != h.field() {
        return Err(Error::InvalidInput(
            "extension: g and h use different fields".into(),
        ));
    }
    Ok(ExtensionInput { g, h, block })
}

fn cocycle(e: &ExtensionInput, which: &str) -> Result<PairCochain> {
    let raw = if which == "cocycle" {
        &e.block.cocycle
    } else {
        &e.block.cocycle2
    };
    let raw = raw
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("extension.{which}: missing")))?;
    PairCochain::from_json(raw, e.g.field(), e.g.dim(), e.h.dim())
        .map_err(|err| Error::InvalidInput(format!("extension.{which}: {err}")))
}

fn cmd_central_ext(l: &Loaded, action: ExtAction) -> Result<Output> {
    let e = extension_input(l)?;
    let (results, negative) = match action {
        ExtAction::Build => {
            let ext = build(&CentralExtensionSpec {
                g: e.g.clone(),
                h: e.h.clone(),
                cocycle: cocycle(&e, "cocycle")?,
            })?;
            let report = crate::algebra::validate_pair(&ext.ghat);
            (
                json!({
                    "ghat": to_value(&InputDocument::from_pair(&ext.ghat, None)),
                    "inclusion": matrix_to_raw(&ext.inclusion),
                    "projection": matrix_to_raw(&ext.projection),
                    "canonical_section": matrix_to_raw(&ext.canonical_section),
                    "validation": to_value(&report),
                }),
                !report.valid,
            )
        }
        ExtAction::Extract => {
            let ext = build(&CentralExtensionSpec {
                g: e.g.clone(),
                h: e.h.clone(),
                cocycle: cocycle(&e, "cocycle")?,
            })?;
            let section = match &e.block.section {
                Some(s) => parse_matrix(
                    e.g.field(),
                    s,
                    e.g.dim() + e.h.dim(),
                    e.g.dim(),
                    "extension.section",
                )?,
                None => ext.canonical_section.clone(),
            };
            let c = extract_cocycle(&ext, &section)?;
            (json!({"cocycle": to_value(&c.to_json())}), false)
        }
        ExtAction::Iso => {
            let iso = extensions_isomorphic(
                &e.g,
                &e.h,
                &cocycle(&e, "cocycle")?,
                &cocycle(&e, "cocycle2")?,
            )?;
            match iso {
                Some(i) => (
                    json!({"isomorphic": true, "nu": matrix_to_raw(&i.nu), "map": matrix_to_raw(&i.map)}),
                    false,
                ),
                None => (json!({"isomorphic": false}), true),
            }
        }
    };
    Ok(Output {
        results,
        warnings: Vec::new(),
        negative,
    })
}

fn cmd_derivation_lift(l: &Loaded) -> Result<Output> {
    let e = extension_input(l)?;
    if !e.h.algebra.is_strongly_abelian() {
        return Err(Error::InvalidStructure(
            "extension.h must be strongly abelian".into(),
        ));
    }
    let c = cocycle(&e, "cocycle")?;
    let ext = AlgebraExtension::from_cocycle(&e.g.algebra, e.h.dim(), &c.top)?;
    let ob = derivation_obstruction(&ext, &e.g.derivation, &e.h.derivation, None)?;
    let lift = lift_derivation_pair(&ext, &e.g.derivation, &e.h.derivation)?;
    let phi = phi_action(&e.g.algebra, e.h.dim(), &e.g.derivation, &e.h.derivation)?;
    Ok(Output {
        results: json!({
            "obstruction": to_value(&ob.cochain.to_json()),
            "is_cocycle": ob.is_cocycle,
            "liftable": ob.trivial,
            "gamma": ob.gamma.as_ref().map(matrix_to_raw),
            "lift": lift.as_ref().map(|p| to_value(&InputDocument::from_pair(p, None))),
            "phi_action": {"h2": phi.h2, "matrix": matrix_to_raw(&phi.matrix), "is_zero": phi.is_zero},
        }),
        warnings: Vec::new(),
        negative: !ob.trivial,
    })
}

fn cmd_catalog(name: Option<&str>, list: bool, k: u32) -> Result<Output> {
    if list || name.is_none() {
        return Ok(Output {
            results: json!({"names": catalog::NAMES}),
            warnings: Vec::new(),
            negative: false,
        });
    }
    let f = Field::new(k, None)?;
    let pair = catalog::pair(name.expect("checked"), &f)?;
    let rep = trivial_rep(&pair, 1, None);
    Ok(Output {
        results: to_value(&InputDocument::from_pair(&pair, Some(&rep))),
        warnings: Vec::new(),
        negative: false,
    })
}

fn render_text(report: &Report) -> String {
    let mut out = format!(
        "command: {}\ninputs_digest: {}\n",
        report.command, report.inputs_digest
    );
    if let Value::Object(map) = &report.results {
        for (k, v) in map {
            out.push_str(&format!(
                "{k}: {}\n",
                serde_json::to_string(v).expect("serializes")
            ));
        }
    } else {
        out.push_str(&format!(
            "results: {}\n",
            serde_json::to_string(&report.results).expect("serializes")
        ));
    }
    for w in &report.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Validate(_) => "validate".into(),
        Command::Cohomology(_) => "cohomology".into(),
        Command::Cocycles(_) => "cocycles".into(),
        Command::Semidirect { .. } => "semidirect".into(),
        Command::Deform { action, .. } => format!(
            "deform {}",
            action.to_possible_value().expect("named").get_name()
        ),
        Command::CentralExt { action, .. } => format!(
            "central-ext {}",
            action.to_possible_value().expect("named").get_name()
        ),
        Command::DerivationLift(_) => "derivation-lift".into(),
        Command::Catalog { .. } => "catalog".into(),
    }
}

fn execute(cli: &Cli) -> Result<(String, Output)> {
    let limit = cli.exhaustive_limit;
    let empty_digest = || hex::encode(Sha256::digest(b""));
    Ok(match &cli.command {
        Command::Validate(a) => {
            let l = load(&a.input)?;
            (l.digest.clone(), cmd_validate(&l, limit)?)
        }
        Command::Cohomology(a) => {
            let l = load(&a.input)?;
            (l.digest.clone(), cmd_cohomology(&l, a)?)
        }
        Command::Cocycles(a) => {
            let l = load(&a.input)?;
            (l.digest.clone(), cmd_cocycles(&l, a)?)
        }
        Command::Semidirect { input, rep } => {
            let l = load(input)?;
            (l.digest.clone(), cmd_semidirect(&l, *rep, limit)?)
        }
        Command::Deform {
            action,
            input,
            order,
        } => {
            let l = load(input)?;
            (l.digest.clone(), cmd_deform(&l, *action, *order)?)
        }
        Command::CentralExt { action, input } => {
            let l = load(input)?;
            (l.digest.clone(), cmd_central_ext(&l, *action)?)
        }
        Command::DerivationLift(a) => {
            let l = load(&a.input)?;
            (l.digest.clone(), cmd_derivation_lift(&l)?)
        }
        Command::Catalog { name, list, k } => {
            (empty_digest(), cmd_catalog(name.as_deref(), *list, *k)?)
        }
    })
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    if let Command::Catalog {
        name: Some(name),
        list: false,
        k,
    } = &cli.command
    {
        // A named entry prints the bare document so it can be fed back as --input.
        return match Field::new(*k, None).and_then(|f| catalog_document(name, &f)) {
            Ok(doc) => Outcome {
                code: 0,
                stdout: doc.to_json_string() + "\n",
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        };
    }
    match execute(&cli) {
        Ok((digest, out)) => {
            let report = Report {
                command: command_name(&cli.command),
                inputs_digest: digest,
                results: out.results,
                warnings: out.warnings,
            };
            let stdout = match cli.output {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
                }
                OutputFormat::Text => render_text(&report),
            };
            Outcome {
                code: if out.negative { 1 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// The document a catalog entry is printed as.
pub fn catalog_document(name: &str, field: &Field) -> Result<InputDocument> {
    let pair = catalog::pair(name, field)?;
    Ok(InputDocument::from_pair(
        &pair,
        Some(&trivial_rep(&pair, 1, None)),
    ))
}
