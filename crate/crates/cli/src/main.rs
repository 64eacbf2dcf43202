use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use overhang::diagrams::{
    enumerate_diagrams, enumerate_tl_diagrams, parse_diagram, tl_projection, BrauerDiagram,
    DiagramRecord,
};
use overhang::hecke::{
    decoupling_report, verify_relations, BasisSubset, MultiShape, Walk, WalkModuleAction,
};
use overhang::par::{with_jobs, Exec};
use overhang::paths::{enumerate_dyck, enumerate_paths, parse_path, OverhangPath, PathRecord};
use overhang::qfunc::QPoint;
use overhang::render::{render, RenderKind, RenderSpec, Renderable};
use overhang::simple::{kappa, simple_bijection, simple_bijection_inverse};
use overhang::tile::{delta_trace, phi, phi_tl, psi};
use overhang::verify::{self, Coverage, SuiteReport};

#[derive(Parser)]
#[command(name = "overhang", version, about = "Brauer diagrams, overhang paths and walk modules")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Degree, or a range `a..b` for verify.
    #[arg(long, global = true)]
    n: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for verification.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// List every object of a kind and degree.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Apply one of the maps to paths or diagrams, one output per input.
    Map {
        #[arg(value_enum)]
        direction: Direction,
        /// Path words, diagrams such as `1-3,2-4`, or JSON records.
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        which: Suite,
        /// Objects drawn per side when sampling at n >= 6.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Check every object even at n >= 6.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// Draw a path, tiling or diagram as SVG.
    Render {
        #[arg(value_enum)]
        kind: RenderChoice,
        input: String,
        #[arg(long, default_value_t = 30.0)]
        scale: f64,
        #[arg(long)]
        labels: bool,
    },
    /// Relations and decoupling of the walk module.
    Hecke {
        /// Shape such as `((2),(2))`.
        #[arg(long)]
        shape: String,
        /// Charges `x_1,..,x_d`; defaults to `e,0` or all zeros.
        #[arg(long, allow_hyphen_values = true)]
        charges: Option<String>,
        /// Offset `x_1 - x_2` for two-component shapes.
        #[arg(long, allow_hyphen_values = true)]
        e: Option<i64>,
        /// `nonneg`, `band:LO..HI`, `exclude:W,..` or `walks:W,..`.
        #[arg(long)]
        subset: Option<String>,
        /// Order of a primitive root of unity for valuations.
        #[arg(long)]
        root_order: Option<u32>,
        /// Print generator matrices.
        #[arg(long)]
        matrices: bool,
        /// Fail unless the subset spans a submodule.
        #[arg(long)]
        require_invariant: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Paths,
    Diagrams,
    Dyck,
    Tl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Psi,
    Phi,
    Simple,
    SimpleInverse,
    Tl,
    Kappa,
    Delta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Counts,
    Roundtrip,
    TlRestriction,
    Homomorphism,
    Lemmas,
    Simple,
    Hecke,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderChoice {
    Path,
    Tiling,
    Diagram,
    SideBySide,
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

type Out = Box<dyn Write>;

fn usage(msg: impl ToString) -> CliError {
    CliError::Usage(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut out: Out = match &cli.common.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let c = &cli.common;
    let result = match cli.command {
        Command::Enumerate { kind, max_n } => enumerate(c, kind, max_n, &mut out),
        Command::Map { direction, inputs } => {
            inputs.iter().try_for_each(|input| map(c, direction, input, &mut out))
        }
        Command::Verify { which, samples, exhaustive, sequential } => {
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            with_jobs(c.jobs, || verify_cmd(c, which, samples, exhaustive, exec))
                .and_then(|lines| {
                    out.write_all(lines.0.as_bytes())?;
                    lines.1
                })
        }
        Command::Render { kind, input, scale, labels } => {
            render_cmd(kind, &input, scale, labels, &mut out)
        }
        Command::Hecke { shape, charges, e, subset, root_order, matrices, require_invariant } => {
            let opts = HeckeOpts { shape, charges, e, subset, root_order, matrices, require_invariant };
            hecke_cmd(c, &opts, &mut out)
        }
    };
    out.flush()?;
    result
}

fn single_n(c: &Common) -> Result<usize, CliError> {
    let text = c.n.as_deref().ok_or_else(|| usage("--n is required"))?;
    text.parse().map_err(|_| usage(format!("--n expects a number, got {text:?}")))
}

fn n_range(c: &Common) -> Result<RangeInclusive<usize>, CliError> {
    let text = c.n.as_deref().unwrap_or("1..5");
    let bad = || usage(format!("--n expects N or A..B, got {text:?}"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let n = text.parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

fn enumerate(c: &Common, kind: EnumKind, max_n: usize, out: &mut Out) -> Result<(), CliError> {
    let n = single_n(c)?;
    if n > max_n {
        return Err(usage(format!("n = {n} exceeds the bound {max_n} (raise it with --max-n)")));
    }
    let count = match kind {
        EnumKind::Paths | EnumKind::Dyck => {
            let paths = if matches!(kind, EnumKind::Paths) { enumerate_paths(n) } else { enumerate_dyck(n) };
            for p in &paths {
                write_path(c, p, out)?;
            }
            paths.len()
        }
        EnumKind::Diagrams | EnumKind::Tl => {
            let ds = if matches!(kind, EnumKind::Diagrams) { enumerate_diagrams(n) } else { enumerate_tl_diagrams(n) };
            for d in &ds {
                write_diagram(c, d, out)?;
            }
            ds.len()
        }
    };
    match c.format {
        Format::Text => writeln!(out, "count {count}")?,
        Format::Records => writeln!(out, "{}", json!({ "count": count }))?,
    }
    Ok(())
}

fn write_path(c: &Common, p: &OverhangPath, out: &mut Out) -> Result<(), CliError> {
    match c.format {
        Format::Text => writeln!(out, "{p}")?,
        Format::Records => writeln!(out, "{}", to_json(&p.record()))?,
    }
    Ok(())
}

fn write_diagram(c: &Common, d: &BrauerDiagram, out: &mut Out) -> Result<(), CliError> {
    match c.format {
        Format::Text => writeln!(out, "{d}")?,
        Format::Records => writeln!(out, "{}", to_json(&d.record()))?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

fn read_path(input: &str) -> Result<OverhangPath, CliError> {
    let input = input.trim();
    if input.starts_with('{') {
        let rec: PathRecord = serde_json::from_str(input).map_err(usage)?;
        return rec.to_path().map_err(usage);
    }
    parse_path(input).map_err(usage)
}

fn read_diagram(input: &str) -> Result<BrauerDiagram, CliError> {
    let input = input.trim();
    if input.starts_with('{') {
        let rec: DiagramRecord = serde_json::from_str(input).map_err(usage)?;
        return rec.to_diagram().map_err(usage);
    }
    parse_diagram(input).map_err(usage)
}

fn map(c: &Common, direction: Direction, input: &str, out: &mut Out) -> Result<(), CliError> {
    match direction {
        Direction::Psi => write_diagram(c, &psi(&read_path(input)?), out),
        Direction::Phi => write_path(c, &phi(&read_diagram(input)?), out),
        Direction::Simple => write_path(c, &simple_bijection(&read_diagram(input)?), out),
        Direction::SimpleInverse => {
            let d = simple_bijection_inverse(&read_path(input)?).map_err(usage)?;
            write_diagram(c, &d, out)
        }
        Direction::Tl => {
            let proj = tl_projection(&read_diagram(input)?);
            write_diagram(c, &proj, out)?;
            write_path(c, &phi_tl(&proj).expect("projection is TL"), out)
        }
        Direction::Kappa => {
            let x = kappa(&read_diagram(input)?);
            match c.format {
                Format::Text => writeln!(out, "{x}")?,
                Format::Records => writeln!(out, "{}", json!({ "tuple": x.as_slice() }))?,
            }
            Ok(())
        }
        Direction::Delta => {
            let trace = delta_trace(&read_diagram(input)?);
            match c.format {
                Format::Text => {
                    writeln!(out, "target {}", trace.target)?;
                    writeln!(out, "X {:?}", trace.x)?;
                    for s in &trace.steps {
                        writeln!(
                            out,
                            "move arc {} from {} to {} (agreement {}) in {}",
                            s.label,
                            s.from + 1,
                            s.to + 1,
                            s.agreement,
                            s.before
                        )?;
                    }
                }
                Format::Records => writeln!(out, "{}", to_json(&trace.record()))?,
            }
            Ok(())
        }
    }
}

type VerifyOutput = (String, Result<(), CliError>);

fn verify_cmd(
    c: &Common,
    which: Suite,
    samples: usize,
    exhaustive: bool,
    exec: Exec,
) -> Result<VerifyOutput, CliError> {
    let range = n_range(c)?;
    if *range.end() > 8 {
        return Err(usage("verification is limited to n <= 8"));
    }
    let mut reports: Vec<SuiteReport> = Vec::new();
    let wants = |s: Suite| which == s || which == Suite::All;
    for n in range.clone() {
        if wants(Suite::Counts) {
            reports.push(verify::counts(n));
        }
        if wants(Suite::Roundtrip) {
            let coverage = if n >= 6 && !exhaustive {
                Coverage::Sampled { count: samples, seed: c.seed }
            } else {
                Coverage::Exhaustive
            };
            reports.push(verify::roundtrip(n, coverage, exec));
        }
        if wants(Suite::TlRestriction) {
            reports.push(verify::tl_restriction(n, exec));
        }
        if wants(Suite::Lemmas) {
            reports.push(verify::lemmas(n, exec));
        }
        if wants(Suite::Simple) {
            reports.push(verify::simple(n, exec));
        }
    }
    if wants(Suite::Homomorphism) {
        reports.push(verify::homomorphism(*range.end(), exec));
    }
    if wants(Suite::Hecke) {
        reports.push(verify::hecke(*range.end(), exec));
    }
    let mut text = String::new();
    for r in &reports {
        match c.format {
            Format::Text => text.push_str(&format!("{r}\n")),
            Format::Records => {
                let rec = json!({
                    "suite": r.suite,
                    "n": r.n,
                    "passed": r.passed(),
                    "checked": r.checked,
                    "seconds": r.elapsed.as_secs_f64(),
                    "notes": r.notes,
                    "counterexamples": r.failures,
                });
                text.push_str(&format!("{rec}\n"));
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let status = if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{failed} suite(s) failed")))
    };
    Ok((text, status))
}

fn render_cmd(
    kind: RenderChoice,
    input: &str,
    scale: f64,
    labels: bool,
    out: &mut Out,
) -> Result<(), CliError> {
    let rk = match kind {
        RenderChoice::Path => RenderKind::Path,
        RenderChoice::Tiling => RenderKind::PathTiling,
        RenderChoice::Diagram => RenderKind::Diagram,
        RenderChoice::SideBySide => RenderKind::SideBySide,
    };
    let spec = RenderSpec { kind: rk, scale, labels };
    let svg = match kind {
        RenderChoice::Path | RenderChoice::Tiling => {
            render(Renderable::Path(&read_path(input)?), &spec)
        }
        RenderChoice::Diagram => render(Renderable::Diagram(&read_diagram(input)?), &spec),
        RenderChoice::SideBySide => {
            // either side may be given; the other is computed
            let (p, d) = match read_path(input) {
                Ok(p) => {
                    let d = psi(&p);
                    (p, d)
                }
                Err(_) => {
                    let d = read_diagram(input)?;
                    (phi(&d), d)
                }
            };
            render(Renderable::Pair(&p, &d), &spec)
        }
    }
    .map_err(usage)?;
    writeln!(out, "{svg}")?;
    Ok(())
}

struct HeckeOpts {
    shape: String,
    charges: Option<String>,
    e: Option<i64>,
    subset: Option<String>,
    root_order: Option<u32>,
    matrices: bool,
    require_invariant: bool,
}

fn parse_walks(list: &str) -> Result<Vec<Walk>, CliError> {
    list.split(',').map(|w| w.parse::<Walk>().map_err(usage)).collect()
}

fn parse_subset(text: &str) -> Result<BasisSubset, CliError> {
    if text == "nonneg" {
        return Ok(BasisSubset::NonNegative);
    }
    let (kind, arg) = text.split_once(':').ok_or_else(|| usage(format!("unknown subset {text:?}")))?;
    match kind {
        "band" => {
            let (lo, hi) = arg.split_once("..").ok_or_else(|| usage("band expects LO..HI"))?;
            let lo = lo.parse().map_err(|_| usage("band bound"))?;
            let hi = hi.parse().map_err(|_| usage("band bound"))?;
            Ok(BasisSubset::Band { lo, hi })
        }
        "exclude" => Ok(BasisSubset::Exclude(parse_walks(arg)?)),
        "walks" => Ok(BasisSubset::Walks(parse_walks(arg)?)),
        _ => Err(usage(format!("unknown subset {text:?}"))),
    }
}

fn hecke_cmd(c: &Common, o: &HeckeOpts, out: &mut Out) -> Result<(), CliError> {
    let shape: MultiShape = o.shape.parse().map_err(usage)?;
    let d = shape.components().len();
    let charges: Vec<i64> = match (&o.charges, o.e) {
        (Some(text), _) => text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("bad charge {t:?}"))))
            .collect::<Result<_, _>>()?,
        (None, Some(e)) => {
            let mut x = vec![0; d];
            x[0] = e;
            x
        }
        (None, None) => vec![0; d],
    };
    let action = WalkModuleAction::new(shape, charges).map_err(usage)?;
    let records = c.format == Format::Records;
    let mut failed = Vec::new();

    match action.generator_matrices() {
        Ok(gens) => {
            if o.matrices {
                for (k, g) in gens.iter().enumerate() {
                    for r in 0..g.dim() {
                        let row: Vec<String> = (0..g.dim()).map(|col| g.get(r, col).to_string()).collect();
                        if records {
                            writeln!(out, "{}", json!({ "generator": k + 1, "row": action.label(r), "entries": row }))?;
                        } else {
                            writeln!(out, "g{} {}: [{}]", k + 1, action.label(r), row.join(", "))?;
                        }
                    }
                }
            }
            let report = verify_relations(&gens, Exec::Parallel);
            for check in &report.checks {
                if records {
                    writeln!(out, "{}", json!({ "relation": check.name, "holds": check.holds }))?;
                } else {
                    writeln!(out, "{}: {}", check.name, if check.holds { "pass" } else { "FAIL" })?;
                }
            }
            failed.extend(report.failures().map(|f| f.name.clone()));
        }
        Err(e) => {
            if records {
                writeln!(out, "{}", json!({ "relations": "undefined", "reason": e.to_string() }))?;
            } else {
                writeln!(out, "full action undefined: {e}")?;
            }
        }
    }

    if let Some(text) = &o.subset {
        let subset = parse_subset(text)?;
        let point = o.root_order.map(QPoint::RootOfUnity);
        let r = decoupling_report(&action, &subset, point.as_ref()).map_err(usage)?;
        let members: Vec<String> = r.subset.iter().map(|&k| action.label(k)).collect();
        if records {
            writeln!(out, "{}", json!({ "subset": members, "invariant": r.is_invariant() }))?;
        } else {
            writeln!(out, "subset [{}] invariant: {}", members.join(" "), r.is_invariant())?;
        }
        for leak in &r.leaks {
            let val = leak.valuation.map(|v| v.to_string());
            let value = leak.value.as_ref().map(|v| match v {
                Ok(x) => x.to_string(),
                Err(p) => p.to_string(),
            });
            if records {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "generator": leak.generator,
                        "from": action.label(leak.from),
                        "to": action.label(leak.to),
                        "coefficient": leak.coefficient.to_string(),
                        "valuation": leak.valuation,
                        "value": value,
                    })
                )?;
            } else {
                write!(
                    out,
                    "leak g{} {} -> {}: {}",
                    leak.generator,
                    action.label(leak.from),
                    action.label(leak.to),
                    leak.coefficient
                )?;
                if let Some(v) = val {
                    write!(out, " valuation {v}")?;
                }
                if let Some(v) = value {
                    write!(out, " value {v}")?;
                }
                writeln!(out)?;
            }
        }
        for u in &r.undefined {
            writeln!(out, "undefined: {u}")?;
        }
        if o.require_invariant && !r.is_invariant() {
            failed.push("subset is not invariant".into());
        }
    }

    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed: {}", failed.join(", "))))
    }
}
