//! Command-line frontend. [`run`] is the whole program; `main` only wires it to the process.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::basis::{gw_basis, k_basis, verify_recursions, witt_table, AtomKind, Decomposition, Summand};
use crate::diagram::{enumerate_diagrams, DiagramClass, Orientation, Segment, ShiftedDiagram};
use crate::error::Error;
use crate::picard::{
    canonical_sheaf, canonical_sheaf_symbolic, classify_connecting, lambda_pair, mod2_reduce,
    relative_canonical_over_lg, twist_alignment, ConnectingCase, ParityClass, PicElement, Twist,
};
use crate::registry::{MapRegistry, SuiteOutcome, SuiteRegistry};
use crate::scheme::{named_scheme, FlagDescriptor, SchemeReport};

pub const ENUMERATE_BOUND: usize = 16;
pub const VERIFY_BOUND: usize = 10;
pub const MAX_N_ENV: &str = "LAGFLAG_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    K,
    Gw,
}

#[derive(Debug, Parser)]
#[command(name = "lagflag", version, about = "Shifted diagrams, Lagrangian flag schemes and basis bookkeeping")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every diagram of the n-frame.
    Enumerate {
        #[arg(short)]
        n: usize,
    },
    /// Boundary and class data of one diagram, given as a V/H step string.
    Classify { diagram: String },
    /// Validate a descriptor and report its invariants.
    Scheme {
        /// Named scheme: B2, E2, F2 or LF_i.
        #[arg(long, conflicts_with_all = ["d", "diagram"])]
        name: Option<String>,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', default_value = "", requires = "d")]
        e: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "", requires = "d")]
        t: Vec<String>,
        #[arg(long)]
        half_rank: Option<usize>,
        /// Diagram whose basis scheme to inspect (with --map).
        #[arg(long, requires = "map", conflicts_with = "d")]
        diagram: Option<String>,
        #[arg(long)]
        map: Option<String>,
    },
    /// Canonical sheaf exponents; --half-rank N gives exponents as functions of n.
    Canonical {
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        e: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        t: Vec<String>,
        #[arg(long)]
        half_rank: String,
        /// Subtract the Grassmannian canonical class of this (unpadded) frame.
        #[arg(long)]
        relative_to: Option<usize>,
    },
    /// Basis decomposition of K-theory or GW-theory of LG(n).
    Basis {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "O")]
        twist: String,
        #[arg(long, value_enum, default_value = "gw")]
        theory: TheoryArg,
    },
    /// Check the induction identities at frame n.
    Recursion {
        #[arg(short)]
        n: usize,
    },
    /// Run the invariant suites up to --max-n.
    Verify {
        #[arg(long)]
        max_n: Option<usize>,
        /// Run only the named suites.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
    /// GW atoms counted by shift mod 4.
    Witt {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "O")]
        twist: String,
    },
    /// Case of the two-step blow-up connecting map.
    ClassifyConnecting {
        #[arg(long)]
        c1: i64,
        #[arg(long)]
        c2: i64,
        /// Parities as "l1,l2".
        #[arg(long, value_delimiter = ',', num_args = 1, conflicts_with = "twist")]
        lambda: Option<Vec<i64>>,
        /// Take the parities from this twisting bundle instead.
        #[arg(long)]
        twist: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("output error: {e}"))
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and executes. Returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let limit_override = std::env::var(MAX_N_ENV).ok();
    match dispatch(&cli, limit_override.as_deref(), out) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn bound(default: usize, env: Option<&str>) -> std::result::Result<usize, Failure> {
    match env {
        None => Ok(default),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_N_ENV}={s:?} is not a non-negative integer"))),
    }
}

fn within(n: usize, limit: usize, what: &str) -> CliResult {
    if n > limit {
        Err(Failure::Usage(format!(
            "{what} {n} exceeds the configured bound {limit} (set {MAX_N_ENV} to raise it)"
        )))
    } else {
        Ok(())
    }
}

fn parse_diagram(s: &str) -> std::result::Result<ShiftedDiagram, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn parse_twist(s: &str) -> std::result::Result<Twist, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

/// Comma-separated list where an empty string means the empty tuple.
fn parse_list(v: &[String], what: &str) -> std::result::Result<Vec<usize>, Failure> {
    v.iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("--{what}: {s:?} is not a non-negative integer")))
        })
        .collect()
}

fn show(d: &ShiftedDiagram) -> String {
    if d.frame_size() == 0 {
        "-".to_string()
    } else {
        d.to_string()
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Domain(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Domain(format!("csv output: {e}"))
}

fn dispatch(cli: &Cli, env: Option<&str>, out: &mut dyn Write) -> CliResult {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate { n } => {
            within(*n, bound(ENUMERATE_BOUND, env)?, "frame size")?;
            enumerate(*n, format, out)
        }
        Command::Classify { diagram } => classify(&parse_diagram(diagram)?, format, out),
        Command::Scheme {
            name,
            d,
            e,
            t,
            half_rank,
            diagram,
            map,
        } => {
            let (desc, origin) = if let Some(name) = name {
                let n = half_rank.ok_or_else(|| Failure::Usage("--name needs --half-rank".into()))?;
                (named_scheme(name, n)?, name.clone())
            } else if let Some(d) = d {
                let n = half_rank.ok_or_else(|| Failure::Usage("--d needs --half-rank".into()))?;
                let desc = FlagDescriptor::new(n, d.clone(), parse_list(e, "e")?, parse_list(t, "t")?);
                (desc, "tuples".to_string())
            } else if let (Some(diagram), Some(map)) = (diagram, map) {
                let dg = parse_diagram(diagram)?;
                let maps = MapRegistry::default();
                let m = maps.by_name(map).map_err(|e| Failure::Usage(e.to_string()))?;
                (m.scheme(&dg)?, format!("{map}({})", show(&dg)))
            } else {
                return Err(Failure::Usage("give --name, --d/--e/--t, or --diagram with --map".into()));
            };
            scheme(&desc, &origin, format, out)
        }
        Command::Canonical {
            d,
            e,
            t,
            half_rank,
            relative_to,
        } => canonical(d, &parse_list(e, "e")?, &parse_list(t, "t")?, half_rank, *relative_to, format, out),
        Command::Basis { n, twist, theory } => {
            within(*n, bound(ENUMERATE_BOUND, env)?, "frame size")?;
            let dec = match theory {
                TheoryArg::K => k_basis(*n),
                TheoryArg::Gw => gw_basis(*n, parse_twist(twist)?)?,
            };
            basis(&dec, format, out)
        }
        Command::Recursion { n } => {
            within(*n, bound(ENUMERATE_BOUND, env)?, "frame size")?;
            recursion(*n, format, out)
        }
        Command::Verify { max_n, suite } => {
            let limit = bound(VERIFY_BOUND, env)?;
            let max_n = max_n.unwrap_or(limit);
            within(max_n, limit, "--max-n")?;
            verify(max_n, suite, format, out)
        }
        Command::Witt { n, twist } => {
            within(*n, bound(ENUMERATE_BOUND, env)?, "frame size")?;
            witt(*n, parse_twist(twist)?, format, out)
        }
        Command::ClassifyConnecting { c1, c2, lambda, twist } => {
            let (l1, l2) = match (lambda, twist) {
                (Some(v), None) if v.len() == 2 => (v[0], v[1]),
                (Some(_), None) => return Err(Failure::Usage("--lambda takes two values, e.g. 0,1".into())),
                (None, Some(t)) => {
                    let (a, b) = lambda_pair(parse_twist(t)?);
                    (a as i64, b as i64)
                }
                _ => return Err(Failure::Usage("give --lambda or --twist".into())),
            };
            let case = classify_connecting(*c1, *c2, l1, l2)?;
            match format {
                Format::Text => writeln!(out, "{case}")?,
                Format::Json => write_json(
                    out,
                    &ConnectingJson {
                        c1: *c1,
                        c2: *c2,
                        lambda: [l1.rem_euclid(2), l2.rem_euclid(2)],
                        case,
                    },
                )?,
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record(["c1", "c2", "lambda1", "lambda2", "case"]).map_err(csv_err)?;
                    w.write_record([
                        c1.to_string(),
                        c2.to_string(),
                        l1.rem_euclid(2).to_string(),
                        l2.rem_euclid(2).to_string(),
                        case.to_string(),
                    ])
                    .map_err(csv_err)?;
                    w.flush()?;
                }
            }
            Ok(())
        }
    }
}

fn enumerate(n: usize, format: Format, out: &mut dyn Write) -> CliResult {
    let all = enumerate_diagrams(n);
    match format {
        Format::Json => write_json(out, &all),
        Format::Text => {
            for d in &all {
                writeln!(out, "{:<width$}  weight={:<3} parts={:?}", show(d), d.weight(), d.parts(), width = n.max(1))?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["diagram", "n", "parts", "weight"]).map_err(csv_err)?;
            for d in &all {
                let parts: Vec<_> = d.parts().iter().map(|p| p.to_string()).collect();
                w.write_record([show(d), n.to_string(), parts.join(" "), d.weight().to_string()])
                    .map_err(csv_err)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn classify(d: &ShiftedDiagram, format: Format, out: &mut dyn Write) -> CliResult {
    let b = d.boundary();
    let class = d.classify()?;
    match format {
        Format::Json => write_json(
            out,
            &ClassifyJson {
                diagram: d,
                boundary: &b.segments,
                class,
            },
        ),
        Format::Text => {
            let segs: Vec<_> = b
                .segments
                .iter()
                .map(|s| {
                    let o = if s.orientation == Orientation::Vertical { 'V' } else { 'H' };
                    format!("{o}:{}", s.length)
                })
                .collect();
            writeln!(out, "diagram      {}", show(d))?;
            writeln!(out, "n            {}", d.frame_size())?;
            writeln!(out, "tuple        {:?}", d.to_tuple())?;
            writeln!(out, "weight       {}", d.weight())?;
            writeln!(out, "boundary     {}", segs.join(" "))?;
            writeln!(out, "segments     {}", b.len())?;
            writeln!(out, "index_w      {}", class.index_w)?;
            writeln!(out, "almost_even  {}", class.is_almost_even)?;
            writeln!(out, "k_even       {}", class.is_k_even)?;
            writeln!(out, "row_type     {:?}", class.row_type)?;
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["diagram", "n", "weight", "segments", "index_w", "almost_even", "k_even", "row_type"])
                .map_err(csv_err)?;
            w.write_record([
                show(d),
                d.frame_size().to_string(),
                d.weight().to_string(),
                b.len().to_string(),
                class.index_w.to_string(),
                class.is_almost_even.to_string(),
                class.is_k_even.to_string(),
                format!("{:?}", class.row_type),
            ])
            .map_err(csv_err)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn scheme(desc: &FlagDescriptor, origin: &str, format: Format, out: &mut dyn Write) -> CliResult {
    let violations = desc.validate();
    let report = desc.report().ok();
    match format {
        Format::Json => write_json(
            out,
            &SchemeJson {
                source: origin,
                scheme: desc,
                violations: violations.iter().map(|v| v.to_string()).collect(),
                report: report.as_ref(),
            },
        )?,
        Format::Text => {
            writeln!(out, "source       {origin}")?;
            writeln!(out, "scheme       {desc}")?;
            if violations.is_empty() {
                writeln!(out, "valid        true")?;
            }
            for v in &violations {
                writeln!(out, "violation    {v}")?;
            }
            if let Some(r) = &report {
                let opt = |x: Option<String>| x.unwrap_or_else(|| "-".to_string());
                writeln!(out, "regular      {}", r.regular)?;
                writeln!(out, "gorenstein   {}", r.gorenstein)?;
                writeln!(out, "dimension    {}", opt(r.relative_dimension.map(|x| x.to_string())))?;
                writeln!(out, "components   {}", opt(r.component_count.map(|x| x.to_string())))?;
                writeln!(out, "t_all_ones   {}", r.reduced_with_trivial_pushforward)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["source", "scheme", "valid", "regular", "gorenstein", "dim", "components"])
                .map_err(csv_err)?;
            let cell = |x: Option<String>| x.unwrap_or_default();
            w.write_record([
                origin.to_string(),
                desc.to_string(),
                desc.is_valid().to_string(),
                cell(report.as_ref().map(|r| r.regular.to_string())),
                cell(report.as_ref().map(|r| r.gorenstein.to_string())),
                cell(report.as_ref().and_then(|r| r.relative_dimension).map(|x| x.to_string())),
                cell(report.as_ref().and_then(|r| r.component_count).map(|x| x.to_string())),
            ])
            .map_err(csv_err)?;
            w.flush()?;
        }
    }
    if desc.is_valid() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn canonical(
    d: &[usize],
    e: &[usize],
    t: &[usize],
    half_rank: &str,
    relative_to: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    if half_rank.eq_ignore_ascii_case("n") {
        if relative_to.is_some() {
            return Err(Failure::Usage("--relative-to needs a numeric --half-rank".into()));
        }
        let w = canonical_sheaf_symbolic(d, e, t)?;
        return emit_canonical("N", &w, None, format, out);
    }
    let n: usize = half_rank
        .parse()
        .map_err(|_| Failure::Usage(format!("--half-rank {half_rank:?} is neither N nor an integer")))?;
    let desc = FlagDescriptor::new(n, d.to_vec(), e.to_vec(), t.to_vec());
    let w = match relative_to {
        Some(m) => relative_canonical_over_lg(&desc, m)?,
        None => canonical_sheaf(&desc)?,
    };
    let parity = mod2_reduce(&w, &desc);
    emit_canonical(half_rank, &w, Some(&parity), format, out)
}

fn emit_canonical<T>(
    half_rank: &str,
    w: &PicElement<T>,
    parity: Option<&ParityClass>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult
where
    T: crate::picard::Exponent + Serialize + std::fmt::Display,
{
    let rows: Vec<(String, String)> = w.iter().map(|(g, x)| (g.to_string(), x.to_string())).collect();
    match format {
        Format::Json => write_json(
            out,
            &CanonicalJson {
                half_rank,
                canonical: w,
                parity,
            },
        ),
        Format::Text => {
            writeln!(out, "{:<12} exponent", "generator")?;
            for (g, x) in &rows {
                writeln!(out, "{g:<12} {x}")?;
            }
            if let Some(p) = parity {
                writeln!(out, "mod 2: {p}")?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["generator", "exponent"]).map_err(csv_err)?;
            for (g, x) in &rows {
                w.write_record([g, x]).map_err(csv_err)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    diagram: &'a ShiftedDiagram,
    boundary: &'a [Segment],
    class: DiagramClass,
}

#[derive(Serialize)]
struct SchemeJson<'a> {
    source: &'a str,
    scheme: &'a FlagDescriptor,
    violations: Vec<String>,
    report: Option<&'a SchemeReport>,
}

#[derive(Serialize)]
struct CanonicalJson<'a, T: crate::picard::Exponent + Serialize> {
    half_rank: &'a str,
    canonical: &'a PicElement<T>,
    parity: Option<&'a ParityClass>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    max_n: usize,
    passed: bool,
    suites: &'a [SuiteOutcome],
}

#[derive(Serialize)]
struct ConnectingJson {
    c1: i64,
    c2: i64,
    lambda: [i64; 2],
    case: ConnectingCase,
}

/// Row of the basis table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisRow {
    pub diagram: String,
    pub kind: String,
    pub shift: String,
    pub map: String,
    pub scheme: String,
    pub dim: String,
    pub components: String,
    pub parity_ok: String,
}

pub fn basis_row(n: usize, s: &Summand) -> BasisRow {
    let report = s.scheme.report().ok();
    let parity_ok = s
        .map_label
        .variant()
        .map(|v| match twist_alignment(&s.source_diagram, v, n) {
            Ok(a) => a.ok.to_string(),
            Err(_) => "false".to_string(),
        })
        .unwrap_or_default();
    let (kind, shift) = match s.kind {
        AtomKind::K => ("K", String::new()),
        AtomKind::GW { shift, .. } => ("GW", shift.to_string()),
    };
    BasisRow {
        diagram: show(&s.source_diagram),
        kind: kind.to_string(),
        shift,
        map: s.map_label.to_string(),
        scheme: s.scheme.to_string(),
        dim: report
            .as_ref()
            .and_then(|r| r.relative_dimension)
            .map(|x| x.to_string())
            .unwrap_or_default(),
        components: report
            .as_ref()
            .and_then(|r| r.component_count)
            .map(|x| x.to_string())
            .unwrap_or_default(),
        parity_ok,
    }
}

/// Writes a summand list; an empty list is `[]` in JSON and a bare header in CSV.
pub fn emit_summands(n: usize, summands: &[Summand], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, summands)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for s in summands {
                w.serialize(basis_row(n, s))?;
            }
            if summands.is_empty() {
                w.write_record(["diagram", "kind", "shift", "map", "scheme", "dim", "components", "parity_ok"])?;
            }
            w.flush()
        }
        Format::Text => {
            for s in summands {
                let r = basis_row(n, s);
                let base = match s.kind {
                    AtomKind::GW {
                        base_twist: Some(g), ..
                    } => format!("  twist {g}"),
                    _ => String::new(),
                };
                writeln!(
                    out,
                    "{:<3} {:<4} {:<width$}  {:<4} {}{base}",
                    r.kind,
                    r.shift,
                    r.diagram,
                    r.map,
                    r.scheme,
                    width = n.max(1)
                )?;
            }
            Ok(())
        }
    }
}

fn basis(dec: &Decomposition, format: Format, out: &mut dyn Write) -> CliResult {
    match format {
        Format::Json => write_json(out, dec),
        Format::Csv => Ok(emit_summands(dec.n, &dec.summands, format, out)?),
        Format::Text => {
            writeln!(out, "{:?}(LG({}), {}): {} summands", dec.theory, dec.n, dec.twist, dec.len())?;
            Ok(emit_summands(dec.n, &dec.summands, format, out)?)
        }
    }
}

fn recursion(n: usize, format: Format, out: &mut dyn Write) -> CliResult {
    let report = verify_recursions(n)?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Text => {
            for c in &report.checks {
                let status = if c.pass { "pass" } else { "FAIL" };
                writeln!(out, "({}) {status}  {}", c.case, c.identity)?;
                writeln!(out, "    lhs {}", c.lhs)?;
                writeln!(out, "    rhs {}", c.rhs)?;
                if let Some(m) = &c.first_mismatch {
                    writeln!(out, "    first mismatch: {m}")?;
                }
            }
            if report.uses_definitional_base {
                writeln!(out, "note: relies on the frame-1 bases, which are definitions")?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "case", "twist", "pass", "lhs", "rhs", "first_mismatch"])
                .map_err(csv_err)?;
            for c in &report.checks {
                w.write_record([
                    n.to_string(),
                    c.case.to_string(),
                    c.twist.to_string(),
                    c.pass.to_string(),
                    c.lhs.clone(),
                    c.rhs.clone(),
                    c.first_mismatch.clone().unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(max_n: usize, only: &[String], format: Format, out: &mut dyn Write) -> CliResult {
    let registry = SuiteRegistry::default();
    let outcomes = if only.is_empty() {
        registry.run_all(max_n)
    } else {
        let mut v = Vec::new();
        for name in only {
            let s = registry.get(name).map_err(|e| Failure::Usage(e.to_string()))?;
            v.push(crate::registry::run_suite(s, max_n));
        }
        v
    };
    let all_passed = outcomes.iter().all(|o| o.passed());
    match format {
        Format::Json => write_json(
            out,
            &VerifyJson {
                max_n,
                passed: all_passed,
                suites: &outcomes,
            },
        )?,
        Format::Text => {
            for o in &outcomes {
                let status = if o.passed() { "pass" } else { "FAIL" };
                writeln!(out, "{:<12} {status}  {} checks", o.name, o.checks)?;
                for f in &o.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            let verdict = if all_passed { "all suites passed" } else { "some suites failed" };
            writeln!(out, "{verdict} (max n = {max_n})")?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["suite", "max_n", "checks", "failures", "passed"]).map_err(csv_err)?;
            for o in &outcomes {
                w.write_record([
                    o.name.clone(),
                    max_n.to_string(),
                    o.checks.to_string(),
                    o.failures.len().to_string(),
                    o.passed().to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn witt(n: usize, twist: Twist, format: Format, out: &mut dyn Write) -> CliResult {
    let table = witt_table(n, twist)?;
    match format {
        Format::Json => write_json(out, &table),
        Format::Text => {
            for (deg, rank) in &table.degrees {
                writeln!(out, "W-degree {deg}: {rank}")?;
            }
            writeln!(out, "K: {}", table.k)?;
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["degree", "rank"]).map_err(csv_err)?;
            for (deg, rank) in &table.degrees {
                w.write_record([deg.to_string(), rank.to_string()]).map_err(csv_err)?;
            }
            w.write_record(["K".to_string(), table.k.to_string()]).map_err(csv_err)?;
            w.flush()?;
            Ok(())
        }
    }
}
