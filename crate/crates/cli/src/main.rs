//! Command line front end: wires the JSON file formats to the engine and
//! prints line-oriented reports (or JSON with `--json`).
//!
//! Exit codes: 0 success/pass, 1 validation failure, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use costrata::complex::{Simplex, StratifiedComplex};
use costrata::cosheaf::{open_from_generators, Cosheaf, GluingReport, OpenSet};
use costrata::cover::{build_cover, reeb_pipeline, validate_covering, CoverComplex};
use costrata::field::{rat, Fp, Rat};
use costrata::fixtures;
use costrata::ingest::{pushforward_cosheaf_set, pushforward_cosheaf_vect};
use costrata::io::{
    self, AnyCosheaf, Coefficients, ComplexFile, CosheafFile, FormatError, LoadError, MapFile,
    StrataFile,
};
use costrata::omega::Omega;
use costrata::zigzag::{decompose, interval_topology, zigzag_extract, Barcode};

#[derive(Parser)]
#[command(
    name = "costrata",
    about = "Constructible cosheaves on stratified simplicial complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BaseArgs {
    /// Complex file (JSON)
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Stratification file (JSON); defaults to the bundle's strata or, when
    /// absent, the cell-wise stratification
    #[arg(long)]
    strata: Option<PathBuf>,
    /// Stratified base bundle: a complex file with an embedded "strata" key
    #[arg(long)]
    base: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// Cosheaf file (JSON)
    #[arg(long)]
    cosheaf: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long)]
    cosheaf: PathBuf,
    /// Generating cells of the open set, comma separated canonical names
    #[arg(long)]
    open: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CostalkArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long)]
    cosheaf: PathBuf,
    /// The cell whose costalk to compute (a single canonical name)
    #[arg(long)]
    open: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GluingArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long)]
    cosheaf: PathBuf,
    /// Generating cells of the open set; the whole complex when omitted
    #[arg(long)]
    open: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long)]
    cosheaf: PathBuf,
    /// Scalars used to linearize a set cosheaf: q or p:PRIME
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CoverArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long)]
    cosheaf: PathBuf,
    /// Write the cover as JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a DOT rendering here (one-dimensional covers)
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReebArgs {
    /// Map file (JSON), optionally bundling its source complex
    #[arg(long)]
    map: PathBuf,
    /// Source complex file, overriding the bundle
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Stratified base bundle
    #[arg(long)]
    base: PathBuf,
    /// Stratification of the base, overriding the bundle
    #[arg(long)]
    strata: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PushforwardArgs {
    #[arg(long)]
    map: PathBuf,
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    strata: Option<PathBuf>,
    /// Coefficients: set (components), q, or p:PRIME
    #[arg(long)]
    field: Option<String>,
    /// Write the pushforward cosheaf here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FixtureArgs {
    /// One of: line1, punctured-disk, zn:N, circle-height, wiggly-circle,
    /// whitney-cusp
    name: String,
    /// Directory the fixture files are written into
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex, a stratification, and a cosheaf
    Validate(ValidateArgs),
    /// Evaluate a cosheaf on an open set
    Eval(EvalArgs),
    /// The costalk at a cell with its canonical comparison map
    Costalk(CostalkArgs),
    /// Check the gluing axiom against the star cover of an open set
    Gluing(GluingArgs),
    /// Barcode of a cosheaf over a stratified open line
    Decompose(DecomposeArgs),
    /// Build and validate the covering of a set-valued cosheaf
    Cover(CoverArgs),
    /// Reeb graph of a map onto a one-dimensional base
    Reeb(ReebArgs),
    /// Pushforward cosheaf of a simplicial map
    Pushforward(PushforwardArgs),
    /// Write a named fixture's files
    Fixture(FixtureArgs),
}

/// Input problems exit 2; semantic validation failures exit 1.
enum CliError {
    Input(String),
    Validation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Validation(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match &e {
            LoadError::Format(f) => CliError::Input(format!("ParseError: {f}")),
            _ => CliError::Validation(format!("{}: {e}", e.name())),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(format!("ParseError: {e}"))
    }
}

fn validation<E: std::error::Error>(name: &str, e: E) -> CliError {
    CliError::Validation(format!("{name}: {e}"))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn parse_cells(text: &str) -> Result<Vec<Simplex>, CliError> {
    text.split(',')
        .map(|n| {
            Simplex::parse(n.trim()).map_err(|e| CliError::Input(format!("bad cell name: {e}")))
        })
        .collect()
}

impl BaseArgs {
    fn complex_file(&self) -> Result<ComplexFile, CliError> {
        let path = self
            .base
            .as_ref()
            .or(self.complex.as_ref())
            .ok_or_else(|| CliError::Input("one of --complex or --base is required".into()))?;
        Ok(io::parse_json(&read_file(path)?)?)
    }

    fn strata_file(&self) -> Result<Option<StrataFile>, CliError> {
        match &self.strata {
            Some(p) => Ok(Some(io::parse_json(&read_file(p)?)?)),
            None => Ok(None),
        }
    }

    fn load(&self) -> Result<StratifiedComplex, CliError> {
        let complex_file = self.complex_file()?;
        let strata_file = self.strata_file()?;
        Ok(io::stratification_from_files(
            &complex_file,
            strata_file.as_ref().map(|s| &s.strata),
        )?)
    }
}

fn load_cosheaf(base: &BaseArgs, path: &Path) -> Result<AnyCosheaf, CliError> {
    let file: CosheafFile = io::parse_json(&read_file(path)?)?;
    let strat = if base.base.is_none() && base.complex.is_none() {
        // No base given: reconstruct the complex from the value cells and
        // stratify cell by cell.
        StratifiedComplex::cellwise(io::complex_from_value_cells(&file).map_err(CliError::from)?)
    } else {
        base.load()?
    };
    Ok(io::cosheaf_from_file(strat, &file)?)
}

fn load_map(
    map_path: &Path,
    complex: Option<&PathBuf>,
    base: &Path,
    strata: Option<&PathBuf>,
) -> Result<costrata::ingest::SimplicialMap, CliError> {
    let map_file: MapFile = io::parse_json(&read_file(map_path)?)?;
    let source_file: Option<ComplexFile> = match complex {
        Some(p) => Some(io::parse_json(&read_file(p)?)?),
        None => None,
    };
    let base_file: ComplexFile = io::parse_json(&read_file(base)?)?;
    let strata_file: Option<StrataFile> = match strata {
        Some(p) => Some(io::parse_json(&read_file(p)?)?),
        None => None,
    };
    let target =
        io::stratification_from_files(&base_file, strata_file.as_ref().map(|s| &s.strata))?;
    Ok(io::map_from_files(&map_file, source_file.as_ref(), target)?)
}

/// Collected report: text lines plus a JSON object, printed per `--json`.
struct Report {
    lines: Vec<String>,
    json: Value,
}

impl Report {
    fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("json"));
        } else {
            for line in &self.lines {
                println!("{line}");
            }
        }
    }
}

fn open_from_flag(
    strat: &StratifiedComplex,
    flag: Option<&str>,
) -> Result<(String, OpenSet), CliError> {
    match flag {
        None => Ok(("whole".to_string(), OpenSet::whole(strat))),
        Some(text) => {
            let cells = parse_cells(text)?;
            let open =
                open_from_generators(strat, &cells).map_err(|e| validation(e.name(), e))?;
            let label = cells
                .iter()
                .map(Simplex::name)
                .collect::<Vec<_>>()
                .join(",");
            Ok((label, open))
        }
    }
}

fn describe_any(cosheaf: &AnyCosheaf, open: &OpenSet) -> Result<String, CliError> {
    use costrata::omega::{SetOmega, VectOmega};
    match cosheaf {
        AnyCosheaf::Set(c) => {
            let v = c.evaluate(open).map_err(|e| validation(e.name(), e))?;
            Ok(SetOmega::describe(&v))
        }
        AnyCosheaf::Rational(c) => {
            let v = c.evaluate(open).map_err(|e| validation(e.name(), e))?;
            Ok(VectOmega::<Rat>::describe(&v))
        }
        AnyCosheaf::Prime(c, _) => {
            let v = c.evaluate(open).map_err(|e| validation(e.name(), e))?;
            Ok(VectOmega::<Fp>::describe(&v))
        }
    }
}

fn cmd_validate(args: &ValidateArgs) -> Result<Report, CliError> {
    let mut lines = Vec::new();
    let mut json = json!({"command": "validate", "status": "ok"});
    let complex_file = args.base.complex_file()?;
    let complex = io::complex_from_file(&complex_file).map_err(|e| validation(e.name(), e))?;
    lines.push(format!("complex: OK ({} cells)", complex.cells().len()));
    json["complex"] = json!({"cells": complex.cells().len()});

    let strata_file = args.base.strata_file()?;
    let explicit_strata = strata_file.is_some() || complex_file.strata.is_some();
    let strat =
        io::stratification_from_files(&complex_file, strata_file.as_ref().map(|s| &s.strata))?;
    if explicit_strata {
        lines.push(format!("strata: OK ({} strata)", strat.strata().len()));
        json["strata"] = json!({"strata": strat.strata().len()});
    }

    if let Some(cosheaf_path) = &args.cosheaf {
        let file: CosheafFile = io::parse_json(&read_file(cosheaf_path)?)?;
        let any = io::cosheaf_from_file(strat, &file)?;
        let stats = match &any {
            AnyCosheaf::Set(c) => c.stats(),
            AnyCosheaf::Rational(c) => c.stats(),
            AnyCosheaf::Prime(c, _) => c.stats(),
        };
        lines.push(format!(
            "cosheaf: OK ({} incidences, {} diamonds, {} invertibility checks)",
            stats.incidences, stats.diamonds, stats.invertibility_checks
        ));
        json["cosheaf"] = json!({
            "incidences": stats.incidences,
            "diamonds": stats.diamonds,
            "invertibility_checks": stats.invertibility_checks,
        });
    }
    Ok(Report { lines, json })
}

fn cmd_eval(args: &EvalArgs) -> Result<Report, CliError> {
    let cosheaf = load_cosheaf(&args.base, &args.cosheaf)?;
    let (label, open) = open_from_flag(cosheaf.base(), Some(&args.open))?;
    let desc = describe_any(&cosheaf, &open)?;
    Ok(Report {
        lines: vec![
            format!("open {label}: {} cell(s)", open.cells().len()),
            format!("evaluate: {desc}"),
        ],
        json: json!({
            "command": "eval",
            "status": "ok",
            "open": label,
            "cells": open.cells().len(),
            "value": desc,
        }),
    })
}

fn costalk_report<O: Omega>(
    cosheaf: &Cosheaf<O>,
    cell: &Simplex,
) -> Result<(String, bool), CliError> {
    let (value, canonical) = cosheaf.costalk(cell).map_err(|e| validation(e.name(), e))?;
    let star = open_from_generators(cosheaf.base(), std::slice::from_ref(cell))
        .map_err(|e| validation(e.name(), e))?;
    let ev = cosheaf.evaluate(&star).map_err(|e| validation(e.name(), e))?;
    let iso = O::iso_witness(&canonical, &value, &ev).is_none();
    Ok((O::describe(&value), iso))
}

fn cmd_costalk(args: &CostalkArgs) -> Result<Report, CliError> {
    let cosheaf = load_cosheaf(&args.base, &args.cosheaf)?;
    let cells = parse_cells(&args.open)?;
    let [cell] = cells.as_slice() else {
        return Err(CliError::Input("costalk expects exactly one cell".into()));
    };
    let (desc, iso) = match &cosheaf {
        AnyCosheaf::Set(c) => costalk_report(c, cell)?,
        AnyCosheaf::Rational(c) => costalk_report(c, cell)?,
        AnyCosheaf::Prime(c, _) => costalk_report(c, cell)?,
    };
    if !iso {
        // Cannot happen for validated data; surface loudly if it does.
        return Err(CliError::Validation(format!(
            "costalk {}: canonical map is not an isomorphism",
            cell.name()
        )));
    }
    Ok(Report {
        lines: vec![
            format!("costalk {}: {desc}", cell.name()),
            format!("canonical: iso onto evaluate(st {})", cell.name()),
        ],
        json: json!({
            "command": "costalk",
            "status": "ok",
            "cell": cell.name(),
            "value": desc,
            "canonical_iso": iso,
        }),
    })
}

fn gluing_report<O: Omega>(
    cosheaf: &Cosheaf<O>,
    open: &OpenSet,
) -> Result<GluingReport, CliError> {
    let cover: Vec<OpenSet> = open
        .cells()
        .iter()
        .map(|c| open_from_generators(cosheaf.base(), std::slice::from_ref(c)))
        .collect::<Result<_, _>>()
        .map_err(|e| validation(e.name(), e))?;
    cosheaf
        .check_gluing(open, &cover)
        .map_err(|e| validation(e.name(), e))
}

fn cmd_gluing(args: &GluingArgs) -> Result<Report, CliError> {
    let cosheaf = load_cosheaf(&args.base, &args.cosheaf)?;
    let (label, open) = open_from_flag(cosheaf.base(), args.open.as_deref())?;
    let report = match &cosheaf {
        AnyCosheaf::Set(c) => gluing_report(c, &open)?,
        AnyCosheaf::Rational(c) => gluing_report(c, &open)?,
        AnyCosheaf::Prime(c, _) => gluing_report(c, &open)?,
    };
    let status = if report.passed { "OK" } else { "FAIL" };
    let mut lines = vec![format!(
        "gluing {label}: {status} ({} star(s), colim {} ~ value {})",
        report.cover_size, report.colim_desc, report.open_desc
    )];
    if let Some(w) = &report.witness {
        lines.push(format!("witness: {w}"));
    }
    let r = Report {
        json: json!({
            "command": "gluing",
            "status": if report.passed { "ok" } else { "fail" },
            "open": label,
            "cover_size": report.cover_size,
            "colim": report.colim_desc,
            "value": report.open_desc,
            "witness": report.witness,
        }),
        lines,
    };
    if !report.passed {
        r.print(args.json);
        return Err(CliError::Validation("gluing failed".into()));
    }
    Ok(r)
}

fn barcode_lines(barcode: &Barcode, base: &StratifiedComplex) -> Result<Vec<String>, CliError> {
    let mut bars = barcode.bars.clone();
    bars.sort();
    bars.iter()
        .map(|bar| {
            let (kind, cells) =
                interval_topology(bar, base).map_err(|e| validation(e.name(), e))?;
            let names: Vec<String> = cells.iter().map(Simplex::name).collect();
            Ok(format!(
                "bar {}..{} x{} kind={} cells={}",
                bar.lo,
                bar.hi,
                bar.multiplicity,
                kind.label(),
                names.join(",")
            ))
        })
        .collect()
}

fn cmd_decompose(args: &DecomposeArgs) -> Result<Report, CliError> {
    let cosheaf = load_cosheaf(&args.base, &args.cosheaf)?;
    let field = match &args.field {
        Some(f) => Coefficients::parse_flag(f)?,
        None => Coefficients::Rational,
    };
    let barcode = match &cosheaf {
        AnyCosheaf::Set(c) => match field {
            Coefficients::PrimeField(p) => {
                let lin = costrata::cosheaf::linearize(c, Fp::new(1, p));
                let (module, _) = zigzag_extract(&lin).map_err(|e| validation(e.name(), e))?;
                decompose(&module).map_err(|e| validation(e.name(), e))?
            }
            _ => {
                let lin = costrata::cosheaf::linearize(c, rat(1));
                let (module, _) = zigzag_extract(&lin).map_err(|e| validation(e.name(), e))?;
                decompose(&module).map_err(|e| validation(e.name(), e))?
            }
        },
        AnyCosheaf::Rational(c) => {
            let (module, _) = zigzag_extract(c).map_err(|e| validation(e.name(), e))?;
            decompose(&module).map_err(|e| validation(e.name(), e))?
        }
        AnyCosheaf::Prime(c, _) => {
            let (module, _) = zigzag_extract(c).map_err(|e| validation(e.name(), e))?;
            decompose(&module).map_err(|e| validation(e.name(), e))?
        }
    };
    let lines = barcode_lines(&barcode, cosheaf.base())?;
    let json_bars: Vec<Value> = barcode
        .bars
        .iter()
        .map(|b| json!({"lo": b.lo, "hi": b.hi, "multiplicity": b.multiplicity}))
        .collect();
    Ok(Report {
        lines,
        json: json!({"command": "decompose", "status": "ok", "bars": json_bars}),
    })
}

fn cover_exports(
    cover: &CoverComplex,
    out: Option<&PathBuf>,
    dot: Option<&PathBuf>,
    lines: &mut Vec<String>,
) -> Result<(), CliError> {
    if let Some(path) = out {
        let cells: Vec<Value> = cover
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let faces: Vec<String> = cover
                    .faces_of(i)
                    .iter()
                    .map(|&f| cover.cells()[f].name())
                    .collect();
                json!({"base": c.base.name(), "label": c.label, "faces": faces})
            })
            .collect();
        let export = json!({ "cells": cells });
        write_file(path, &format!("{:#}\n", export))?;
        lines.push(format!("wrote {}", path.display()));
    }
    if let Some(path) = dot {
        let rendered = cover.to_dot().map_err(|e| validation(e.name(), e))?;
        write_file(path, &rendered)?;
        lines.push(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn cmd_cover(args: &CoverArgs) -> Result<Report, CliError> {
    let cosheaf = load_cosheaf(&args.base, &args.cosheaf)?;
    let set = cosheaf.as_set().map_err(|e| validation(e.name(), e))?;
    let cover = build_cover(set);
    let report = validate_covering(&cover);
    let components = cover.components().len();
    let mut lines = vec![format!(
        "cover: {} cell(s), {} component(s)",
        cover.cells().len(),
        components
    )];
    lines.push(if report.passed {
        "covering: PASS".to_string()
    } else {
        "covering: FAIL".to_string()
    });
    for f in &report.failures {
        lines.push(format!("witness: {f}"));
    }
    cover_exports(&cover, args.out.as_ref(), args.dot.as_ref(), &mut lines)?;
    let r = Report {
        json: json!({
            "command": "cover",
            "status": if report.passed { "ok" } else { "fail" },
            "cells": cover.cells().len(),
            "components": components,
            "failures": report.failures,
        }),
        lines,
    };
    if !report.passed {
        r.print(args.json);
        return Err(CliError::Validation("covering validation failed".into()));
    }
    Ok(r)
}

fn cmd_reeb(args: &ReebArgs) -> Result<Report, CliError> {
    let map = load_map(
        &args.map,
        args.complex.as_ref(),
        &args.base,
        args.strata.as_ref(),
    )?;
    let reeb = reeb_pipeline(&map).map_err(|e| validation(e.name(), e))?;
    let (b0, b1) = reeb.graph_betti().map_err(|e| validation(e.name(), e))?;
    let v = reeb
        .cells()
        .iter()
        .filter(|c| c.base.dimension() == 0)
        .count();
    let e = reeb.cells().len() - v;
    let mut lines = vec![format!("reeb: V={v} E={e} b0={b0} b1={b1}")];
    cover_exports(&reeb, None, args.dot.as_ref(), &mut lines)?;
    Ok(Report {
        lines,
        json: json!({
            "command": "reeb",
            "status": "ok",
            "vertices": v,
            "edges": e,
            "b0": b0,
            "b1": b1,
        }),
    })
}

fn cmd_pushforward(args: &PushforwardArgs) -> Result<Report, CliError> {
    let map = load_map(
        &args.map,
        args.complex.as_ref(),
        &args.base,
        args.strata.as_ref(),
    )?;
    let field = match &args.field {
        Some(f) => Coefficients::parse_flag(f)?,
        None => Coefficients::FiniteSet,
    };
    let any = match field {
        Coefficients::FiniteSet => {
            AnyCosheaf::Set(pushforward_cosheaf_set(&map).map_err(|e| validation(e.name(), e))?)
        }
        Coefficients::Rational => AnyCosheaf::Rational(
            pushforward_cosheaf_vect(&map, rat(1))
                .map_err(|e| validation(e.name(), e))?,
        ),
        Coefficients::PrimeField(p) => AnyCosheaf::Prime(
            pushforward_cosheaf_vect(&map, Fp::new(1, p))
                .map_err(|e| validation(e.name(), e))?,
            p,
        ),
    };
    let mut lines = Vec::new();
    let mut values = Vec::new();
    for cell in any.base().complex().cells().clone() {
        let desc = match &any {
            AnyCosheaf::Set(c) => {
                costrata::omega::SetOmega::describe(c.value_of(&cell))
            }
            AnyCosheaf::Rational(c) => {
                costrata::omega::VectOmega::<Rat>::describe(c.value_of(&cell))
            }
            AnyCosheaf::Prime(c, _) => {
                costrata::omega::VectOmega::<Fp>::describe(c.value_of(&cell))
            }
        };
        lines.push(format!("value {}: {desc}", cell.name()));
        values.push(json!({"cell": cell.name(), "value": desc}));
    }
    if let Some(path) = &args.out {
        let file = io::cosheaf_to_file(&any);
        write_file(path, &io::to_pretty_json(&file))?;
        lines.push(format!("wrote {}", path.display()));
    }
    Ok(Report {
        lines,
        json: json!({"command": "pushforward", "status": "ok", "values": values}),
    })
}

fn cmd_fixture(args: &FixtureArgs) -> Result<Report, CliError> {
    let files = fixtures::materialize(&args.name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown fixture {:?}; available: {}",
            args.name,
            fixtures::FIXTURE_NAMES.join(", ")
        ))
    })?;
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", args.out.display())))?;
    let mut lines = Vec::new();
    for (name, contents) in &files {
        let path = args.out.join(name);
        write_file(&path, contents)?;
        lines.push(format!("wrote {}", path.display()));
    }
    Ok(Report {
        json: json!({
            "command": "fixture",
            "status": "ok",
            "files": files.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
        }),
        lines,
    })
}

fn run(cli: &Cli) -> Result<(Report, bool), CliError> {
    match &cli.command {
        Command::Validate(a) => Ok((cmd_validate(a)?, a.json)),
        Command::Eval(a) => Ok((cmd_eval(a)?, a.json)),
        Command::Costalk(a) => Ok((cmd_costalk(a)?, a.json)),
        Command::Gluing(a) => Ok((cmd_gluing(a)?, a.json)),
        Command::Decompose(a) => Ok((cmd_decompose(a)?, a.json)),
        Command::Cover(a) => Ok((cmd_cover(a)?, a.json)),
        Command::Reeb(a) => Ok((cmd_reeb(a)?, a.json)),
        Command::Pushforward(a) => Ok((cmd_pushforward(a)?, a.json)),
        Command::Fixture(a) => Ok((cmd_fixture(a)?, false)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, as_json)) => {
            report.print(as_json);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
