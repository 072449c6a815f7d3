//! The `iet` command-line tool: spec-file loading, subcommand dispatch and
//! deterministic text / JSON reports.
//!
//! Exit codes: 0 success, 1 invalid input, domain or hypothesis failure,
//! 2 step budget or precision exhausted, 3 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::exact::{parse_scalar, Basis, ExactScalar, PrecisionContext, Rational};
use crate::iet::{Iet, IetSpec, Permutation, Variant};
use crate::limits::Limits;
use crate::partition::{self, HalfOpenInterval};
use crate::symbolic::{self, KeaneViolation, PairKind};
use crate::Error;

pub const SCHEMA: &str = "ietkit.report/1";
const DEFAULT_DEPTH: usize = 200;
const DEFAULT_WINDOW: (i64, i64) = (-10, 10);

#[derive(Parser, Debug)]
#[command(name = "iet", version, about = "Exact interval exchange transformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug)]
struct Opts {
    /// JSON spec file
    #[arg(long, global = true, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Orbit depth / window half-width N
    #[arg(long, global = true, value_name = "N")]
    depth: Option<usize>,
    /// Evidence margin M (default N/2)
    #[arg(long, global = true, value_name = "M")]
    margin: Option<usize>,
    /// Partition level, or word length for `language`
    #[arg(long, global = true, value_name = "K")]
    level: Option<usize>,
    /// Itinerary window, e.g. -5:5
    #[arg(long, global = true, value_name = "LO:HI", allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    /// Point as a scalar literal, e.g. "1/3 + 1*sqrt(2)"
    #[arg(long, global = true, value_name = "LITERAL", allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, global = true, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, global = true, value_name = "P", allow_hyphen_values = true)]
    power: Option<i64>,
    /// Maximum number of exact map applications
    #[arg(long, global = true, value_name = "STEPS")]
    budget: Option<u64>,
    /// Precision cap for sign decisions
    #[arg(long = "max-precision", global = true, value_name = "BITS")]
    max_precision: Option<u32>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Irreducible / split / fully split flags of the permutation
    Classify,
    /// Breakpoints, image breakpoints and translations
    Build,
    /// T^P or dual T^P of a point
    Apply,
    /// Images of the breakpoints under T and its dual
    Boundaries,
    /// Level-K partition
    Partition,
    /// Search for a periodic cell up to level N
    Periodicity,
    /// Keane condition up to depth N
    Keane,
    /// Itinerary of a point on a window
    Itinerary,
    /// Canonical asymptotic pairs on [-N, N]
    Pairs,
    /// Doubly-asymptotic evidence for every canonical pair
    ScanDoubly,
    /// Words of length K
    Language,
    /// Orbit of a point against {0, 1} and the breakpoints
    Regular,
    /// Gaps between the first N orbit points
    Gaps,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Build => "build",
            Command::Apply => "apply",
            Command::Boundaries => "boundaries",
            Command::Partition => "partition",
            Command::Periodicity => "periodicity",
            Command::Keane => "keane",
            Command::Itinerary => "itinerary",
            Command::Pairs => "pairs",
            Command::ScanDoubly => "scan-doubly",
            Command::Language => "language",
            Command::Regular => "regular",
            Command::Gaps => "gaps",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum VariantArg {
    #[value(name = "T")]
    T,
    #[value(name = "dual")]
    Dual,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::T => Variant::T,
            VariantArg::Dual => Variant::Dual,
        }
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window start {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window end {hi:?}"))?;
    if lo > 0 || hi < 0 {
        return Err("window must contain 0".into());
    }
    Ok((lo, hi))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Run(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 3,
            CliError::Io(_) => 1,
            CliError::Run(e) if e.is_exhaustion() => 2,
            CliError::Run(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Run(Error::Budget { .. }) => "budget",
            CliError::Run(e) if e.is_exhaustion() => "precision",
            CliError::Run(Error::Domain(_)) => "domain",
            CliError::Run(Error::Hypothesis(_)) => "hypothesis",
            CliError::Run(_) => "invalid",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl From<crate::exact::ExactError> for CliError {
    fn from(e: crate::exact::ExactError) -> Self {
        CliError::Run(e.into())
    }
}

/// Optional per-file defaults for the common flags.
#[derive(Deserialize, Debug, Default, Clone, Copy, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SpecDefaults {
    pub depth: Option<usize>,
    pub margin: Option<usize>,
    pub budget: Option<u64>,
    pub precision: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    n: usize,
    #[serde(default)]
    basis: Vec<Value>,
    lengths: Vec<String>,
    permutation: Value,
    #[serde(default)]
    defaults: SpecDefaults,
}

#[derive(Debug, Clone)]
pub struct LoadedSpec {
    pub spec: IetSpec,
    pub defaults: SpecDefaults,
    /// hex SHA-256 of the file bytes
    pub digest: String,
}

pub fn load_spec(path: &Path) -> Result<LoadedSpec, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Io(format!("{} is not valid UTF-8", path.display())))?;
    let (spec, defaults) = parse_spec(text)?;
    Ok(LoadedSpec { spec, defaults, digest: hex::encode(Sha256::digest(&bytes)) })
}

fn invalid(msg: String) -> CliError {
    CliError::Run(Error::Invalid(msg))
}

/// Parses and validates spec-file JSON.
pub fn parse_spec(text: &str) -> Result<(IetSpec, SpecDefaults), CliError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| invalid(format!("spec file: {e}")))?;
    let radicands = file
        .basis
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().unwrap_or_default())),
            Value::String(s) => s.parse::<Rational>().map_err(|e| invalid(format!("spec file: basis[{i}]: {e}"))),
            other => Err(invalid(format!("spec file: basis[{i}] = {other} is not an integer or rational string"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let basis = Arc::new(Basis::from_radicands(radicands).map_err(|e| invalid(format!("spec file: basis: {e}")))?);
    if file.lengths.len() != file.n {
        return Err(invalid(format!("spec file: lengths has {} entries, n = {}", file.lengths.len(), file.n)));
    }
    let lengths = file
        .lengths
        .iter()
        .enumerate()
        .map(|(i, s)| parse_scalar(s, &basis).map_err(|e| invalid(format!("spec file: lengths[{i}]: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let image = parse_permutation(&file.permutation)?;
    if image.len() != file.n {
        return Err(invalid(format!("spec file: permutation has {} entries, n = {}", image.len(), file.n)));
    }
    let permutation = Permutation::new(image).map_err(|e| invalid(format!("spec file: permutation: {e}")))?;
    let spec = IetSpec { basis, lengths, permutation };
    // positivity and the unit sum are checked by construction
    Iet::build(spec.clone())?;
    Ok((spec, file.defaults))
}

fn parse_permutation(v: &Value) -> Result<Vec<usize>, CliError> {
    let cycle = || {
        invalid("spec file: permutation: cycle notation is not accepted; give the one-line image, e.g. [3,2,1]".into())
    };
    let Value::Array(items) = v else {
        return Err(match v {
            Value::String(_) => cycle(),
            _ => invalid("spec file: permutation must be an array of integers".into()),
        });
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| match item {
            Value::Number(n) => n
                .as_u64()
                .map(|k| k as usize)
                .ok_or_else(|| invalid(format!("spec file: permutation[{i}] = {n} is not a positive integer"))),
            Value::Array(_) | Value::String(_) => Err(cycle()),
            other => Err(invalid(format!("spec file: permutation[{i}] = {other} is not an integer"))),
        })
        .collect()
}

/// Runs `iet` with `args` (program name first), writing the report to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run_with_io<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let command = cli.command;
    match execute(command, &cli.opts) {
        Ok(report) => {
            let text = if cli.opts.json { to_json(&report.to_value(command)) } else { report.to_text(command) };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.opts.json {
                let value = json!({
                    "schema": SCHEMA,
                    "command": command.name(),
                    "status": "error",
                    "error": {"kind": e.kind(), "message": e.to_string()},
                    "exit_code": code,
                });
                let _ = out.write_all(to_json(&value).as_bytes());
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

struct Report {
    digest: String,
    args: Map<String, Value>,
    result: Value,
    disclaimer: Option<String>,
}

impl Report {
    fn to_value(&self, command: Command) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "command": command.name(),
            "args": self.args,
            "input_digest": self.digest,
            "result": self.result,
            "status": "ok",
        });
        if let Some(d) = &self.disclaimer {
            v["disclaimer"] = Value::String(d.clone());
        }
        v
    }

    fn to_text(&self, command: Command) -> String {
        let mut s = format!("iet {}\n", command.name());
        for (k, v) in &self.args {
            let _ = writeln!(s, "  {k}: {}", inline(v).unwrap_or_default());
        }
        let _ = writeln!(s, "input sha256: {}", self.digest);
        render(&mut s, "result", &self.result, 0);
        if let Some(d) = &self.disclaimer {
            let _ = writeln!(s, "note: {d}");
        }
        s
    }
}

fn is_scalar(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.len() == 2 && m.contains_key("exact") && m.contains_key("decimal"))
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if is_scalar(v) => Some(format!(
            "{}  (~{})",
            m["exact"].as_str().unwrap_or_default(),
            m["decimal"].as_str().unwrap_or_default()
        )),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(inline).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| i.is_array() && inline(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(inline).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(s: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    if let Some(text) = inline(v) {
        let _ = writeln!(s, "{pad}{key}: {text}");
        return;
    }
    let _ = writeln!(s, "{pad}{key}:");
    match v {
        Value::Object(m) => {
            for (k, item) in m {
                render(s, k, item, indent + 2);
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                render(s, &format!("[{i}]"), item, indent + 2);
            }
        }
        _ => unreachable!("primitives render inline"),
    }
}

struct Ctx {
    iet: Iet,
    limits: Limits,
    defaults: SpecDefaults,
}

impl Ctx {
    fn scalar(&self, x: &ExactScalar) -> Result<Value, CliError> {
        let d = x.to_decimal(12, self.iet.precision())?;
        let decimal = if d.unresolved { format!("~{}", d.text) } else { d.text };
        Ok(json!({"exact": x.to_string(), "decimal": decimal}))
    }

    fn scalars<'a>(&self, xs: impl IntoIterator<Item = &'a ExactScalar>) -> Result<Value, CliError> {
        Ok(Value::Array(xs.into_iter().map(|x| self.scalar(x)).collect::<Result<_, _>>()?))
    }

    fn interval(&self, i: &HalfOpenInterval) -> Result<Value, CliError> {
        Ok(json!({
            "left": self.scalar(&i.left)?,
            "right": self.scalar(&i.right)?,
            "kind": i.kind,
            "text": i.to_string(),
        }))
    }

    fn violation(&self, v: &Option<KeaneViolation>) -> Result<Value, CliError> {
        Ok(match v {
            None => Value::Null,
            Some(v) => json!({"d": self.scalar(&v.d)?, "k": v.k, "hit": self.scalar(&v.hit)?}),
        })
    }
}

fn point(opts: &Opts, iet: &Iet, default: Option<&str>) -> Result<ExactScalar, CliError> {
    let text = opts
        .point
        .as_deref()
        .or(default)
        .ok_or_else(|| CliError::Usage("--point is required for this subcommand".into()))?;
    Ok(parse_scalar(text, iet.basis())?)
}

fn positive(name: &str, v: usize) -> Result<usize, CliError> {
    if v == 0 {
        return Err(CliError::Usage(format!("{name} must be at least 1")));
    }
    Ok(v)
}

fn execute(command: Command, opts: &Opts) -> Result<Report, CliError> {
    let path = opts.spec.as_deref().ok_or_else(|| CliError::Usage("--spec PATH is required".into()))?;
    let loaded = load_spec(path)?;
    let defaults = loaded.defaults;
    let mut limits = Limits::default();
    if let Some(b) = opts.budget.or(defaults.budget) {
        limits.max_steps = b;
    }
    let iet = match opts.max_precision.or(defaults.precision) {
        Some(bits) => Iet::build_with_precision(loaded.spec, PrecisionContext::with_max_bits(bits)?)?,
        None => Iet::build(loaded.spec)?,
    };
    let cx = Ctx { iet, limits, defaults };
    let (args, result, disclaimer) = dispatch(command, opts, &cx)?;
    Ok(Report { digest: loaded.digest, args, result, disclaimer })
}

type Outcome = (Map<String, Value>, Value, Option<String>);

fn dispatch(command: Command, opts: &Opts, cx: &Ctx) -> Result<Outcome, CliError> {
    let iet = &cx.iet;
    let limits = &cx.limits;
    let depth = positive("--depth", opts.depth.or(cx.defaults.depth).unwrap_or(DEFAULT_DEPTH))?;
    let margin = opts.margin.or(cx.defaults.margin).unwrap_or(depth / 2);
    let variant: Variant = opts.variant.map_or(Variant::T, Variant::from);
    let mut args = Map::new();
    let mut disclaimer = None;
    let result = match command {
        Command::Classify => {
            args.insert("permutation".into(), json!(iet.permutation().image()));
            serde_json::to_value(iet.classification()).expect("serializable")
        }
        Command::Build => json!({
            "n": iet.n(),
            "basis": iet.basis().elements().iter().map(|e| e.label()).collect::<Vec<_>>(),
            "lengths": cx.scalars(&iet.spec().lengths)?,
            "permutation": iet.permutation().image(),
            "breakpoints": cx.scalars(iet.breakpoints())?,
            "image_breakpoints": cx.scalars(iet.image_breakpoints())?,
            "translations": cx.scalars(iet.translations())?,
            "classification": iet.classification(),
        }),
        Command::Apply => {
            let x = point(opts, iet, None)?;
            let power = opts.power.unwrap_or(1);
            args.insert("point".into(), json!(x.to_string()));
            args.insert("variant".into(), json!(variant));
            args.insert("power".into(), json!(power));
            let y = iet.apply_budgeted(variant, power, &x, &limits.budget())?;
            json!({"point": cx.scalar(&x)?, "image": cx.scalar(&y)?})
        }
        Command::Boundaries => {
            let b = iet.boundary_images()?;
            let interior = b
                .interior
                .iter()
                .map(|p| {
                    Ok(json!({
                        "index": p.index,
                        "point": cx.scalar(&p.point)?,
                        "t_image": cx.scalar(&p.t_image)?,
                        "dual_image": cx.scalar(&p.dual_image)?,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            json!({
                "interior": interior,
                "t_zero": cx.scalar(&b.t_zero)?,
                "dual_one": cx.scalar(&b.dual_one)?,
                "t_zero_equals_dual_one": b.t_zero_equals_dual_one,
                "t_inv_zero": cx.scalar(&b.t_inv_zero)?,
                "dual_inv_one": cx.scalar(&b.dual_inv_one)?,
                "t_inv_zero_equals_dual_inv_one": b.t_inv_zero_equals_dual_inv_one,
            })
        }
        Command::Partition => {
            let level = positive("--level", opts.level.unwrap_or(1))?;
            args.insert("level".into(), json!(level));
            args.insert("variant".into(), json!(variant));
            let p = partition::level_partition(iet, level, variant, limits)?;
            let cells = p
                .cells
                .iter()
                .map(|c| {
                    Ok(json!({
                        "interval": cx.interval(&c.interval)?,
                        "word": c.word,
                        "translation": cx.scalar(&c.translation)?,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            json!({"level": p.level, "variant": p.variant, "cell_count": p.cells.len(), "cells": cells})
        }
        Command::Periodicity => {
            args.insert("depth".into(), json!(depth));
            let r = partition::detect_periodicity(iet, depth, limits)?;
            if !r.found {
                disclaimer = Some(format!(
                    "no periodic cell found up to level {depth}; periodic cells of larger period are not excluded"
                ));
            }
            json!({
                "max_k": r.max_k,
                "found": r.found,
                "period": r.period,
                "witness": r.witness.as_ref().map(|w| cx.interval(w)).transpose()?,
            })
        }
        Command::Keane => {
            args.insert("depth".into(), json!(depth));
            let r = symbolic::keane_check(iet, depth, limits)?;
            disclaimer = Some(format!(
                "finite-depth evidence: breakpoint orbits checked for 1 <= k <= {depth} only"
            ));
            json!({
                "depth": r.depth,
                "holds": r.holds,
                "violation": cx.violation(&r.violation)?,
                "dual_holds": r.dual_holds,
                "dual_violation": cx.violation(&r.dual_violation)?,
            })
        }
        Command::Itinerary => {
            let x = point(opts, iet, None)?;
            let (lo, hi) = opts.window.unwrap_or(DEFAULT_WINDOW);
            args.insert("point".into(), json!(x.to_string()));
            args.insert("variant".into(), json!(variant));
            args.insert("window".into(), json!(format!("{lo}:{hi}")));
            let w = symbolic::itinerary(iet, &x, variant, lo, hi, limits)?;
            json!({"point": cx.scalar(&x)?, "variant": w.variant, "lo": w.lo, "hi": w.hi, "symbols": w.symbols})
        }
        Command::Pairs => {
            args.insert("depth".into(), json!(depth));
            args.insert("margin".into(), json!(margin));
            let reports = symbolic::enumerate_asymptotic_pairs_with_margin(iet, depth, margin, limits)?;
            disclaimer = Some(window_disclaimer(depth, margin));
            let pairs = reports
                .iter()
                .map(|r| {
                    Ok(json!({
                        "kind": r.kind,
                        "x": cx.scalar(&r.x)?,
                        "disagreements": r.disagreements,
                        "classification": r.classification,
                        "expected_structure": r.has_expected_structure(),
                        "itinerary": r.itinerary.symbols,
                        "dual_itinerary": r.dual_itinerary.symbols,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            json!({
                "window": format!("{}:{}", -(depth as i64), depth),
                "positive_count": reports.iter().filter(|r| r.kind == PairKind::Positive).count(),
                "negative_count": reports.iter().filter(|r| r.kind == PairKind::Negative).count(),
                "pairs": pairs,
            })
        }
        Command::ScanDoubly => {
            args.insert("depth".into(), json!(depth));
            args.insert("margin".into(), json!(margin));
            let s = symbolic::doubly_asymptotic_scan(iet, depth, margin, limits)?;
            disclaimer = Some(window_disclaimer(depth, margin));
            let pairs = s
                .pairs
                .iter()
                .map(|p| {
                    Ok(json!({
                        "kind": p.kind,
                        "x": cx.scalar(&p.x)?,
                        "disagreements": p.disagreements,
                        "doubly_evidence": p.doubly_evidence,
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            json!({
                "classification": s.class,
                "expectation": s.expectation,
                "doubly_count": s.doubly_count,
                "consistent": s.consistent,
                "pairs": pairs,
            })
        }
        Command::Language => {
            let k = positive("--level", opts.level.unwrap_or(1))?;
            args.insert("level".into(), json!(k));
            let l = symbolic::language(iet, k, limits)?;
            json!({
                "word_length": l.word_length,
                "count": l.words.len(),
                "keane_verified": l.keane_verified,
                "words": l.words,
            })
        }
        Command::Regular => {
            let x = point(opts, iet, None)?;
            args.insert("point".into(), json!(x.to_string()));
            args.insert("depth".into(), json!(depth));
            let r = symbolic::regularity_probe(iet, &x, depth, limits)?;
            disclaimer = Some(format!("finite-depth evidence: orbit checked for |k| <= {depth} only"));
            json!({
                "depth": r.depth,
                "regular": r.regular,
                "witness": match &r.witness {
                    None => Value::Null,
                    Some(w) => json!({"k": w.k, "hit": cx.scalar(&w.hit)?}),
                },
            })
        }
        Command::Gaps => {
            let x = point(opts, iet, Some("0"))?;
            args.insert("point".into(), json!(x.to_string()));
            args.insert("depth".into(), json!(depth));
            let g = symbolic::orbit_gap_stats(iet, &x, depth, limits)?;
            json!({
                "orbit_length": depth,
                "distinct_points": g.distinct_points,
                "max_gap": cx.scalar(&g.max_gap)?,
                "min_gap": cx.scalar(&g.min_gap)?,
            })
        }
    };
    Ok((args, result, disclaimer))
}

fn window_disclaimer(depth: usize, margin: usize) -> String {
    format!(
        "finite-window evidence: itineraries compared on [-{depth}, {depth}]; \
         asymptotic flags mean no disagreement beyond margin {margin} inside the window"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const E3: &str = r#"{"n":3, "basis":[2,3], "lengths":["-1 + 1*sqrt(2)", "-3/2 + 1*sqrt(3)", "7/2 - 1*sqrt(2) - 1*sqrt(3)"], "permutation":[3,2,1]}"#;

    #[test]
    fn spec_files() {
        let (spec, defaults) = parse_spec(E3).unwrap();
        assert!(spec.permutation.classify().fully_split);
        assert_eq!(defaults, SpecDefaults::default());
        let (spec, _) = parse_spec(&E3.replace("[3,2,1]", "[2,3,1]")).unwrap();
        assert!(!spec.permutation.classify().split);
        let (_, d) = parse_spec(&E3.replace("}", r#", "defaults":{"depth":7}}"#)).unwrap();
        assert_eq!(d.depth, Some(7));
    }

    #[test]
    fn spec_file_diagnostics() {
        let msg = |text: &str| parse_spec(text).unwrap_err().to_string();
        let m = msg(r#"{"n":2, "basis":[], "lengths":["1/2","1/3"], "permutation":[2,1]}"#);
        assert!(m.contains("lengths sum to 1 + (-1/6)"), "{m}");
        assert!(msg(&E3.replace("[3,2,1]", r#""(1,3)""#)).contains("cycle notation"));
        assert!(msg(&E3.replace("[3,2,1]", "[[1,3]]")).contains("cycle notation"));
        assert!(msg(&E3.replace("[3,2,1]", "[3,3,1]")).contains("permutation"));
        assert!(msg(&E3.replace("\"n\":3", "\"n\":4")).contains("lengths has 3 entries"));
        assert!(msg(&E3.replace("[2,3]", "[2]")).contains("lengths[1]"));
        assert!(msg(&E3.replace("[2,3]", "[2,4]")).contains("basis"));
        assert!(msg(&E3.replace("\"n\"", "\"m\"")).contains("spec file"));
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("-5:5"), Ok((-5, 5)));
        assert_eq!(parse_window("0:0"), Ok((0, 0)));
        assert!(parse_window("1:5").is_err());
        assert!(parse_window("5").is_err());
    }

    #[test]
    fn text_rendering_is_ascii() {
        let v = json!({"a": {"exact": "1*sqrt(2)", "decimal": "1.414213562373"}, "b": [1, 2], "c": [{"d": null}]});
        let mut s = String::new();
        render(&mut s, "result", &v, 0);
        assert!(s.is_ascii());
        assert!(s.contains("a: 1*sqrt(2)  (~1.414213562373)"));
        assert!(s.contains("b: [1, 2]"));
        assert!(s.contains("[0]:\n      d: none"));
    }
}
