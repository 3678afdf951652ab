use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use n2sv_core::chiral::{self, ChiralRingElement};
use n2sv_core::classification::{self, closed_form_maximal_subgroups, phase_one_maximal_subgroups};
use n2sv_core::fusion::{fuse, fuse_ns, CosetSector, NSFermiSector};
use n2sv_core::superalgebra::FlowParam;
use n2sv_core::unitarity::{region_check, DiscreteLabel};
use n2sv_core::verify::{check_flow, check_jacobi, verify_all};
use n2sv_core::{build_module, Error, HighestWeight, Rational, SectorType};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "n2sv", version, about = "Exact computations for the N=2 super-Virasoro discrete series")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded Jacobi identity and spectral-flow checks on a window of modes.
    AlgebraCheck(AlgebraArgs),
    /// Gram blocks of a lowest-weight module up to a cutoff level.
    Module(ModuleArgs),
    /// Which unitarity region a weight lies in.
    Unitarity(WeightArgs),
    /// Fuse two coset sectors (or NS fermionic sectors with --ns).
    Fuse(FuseArgs),
    /// Simple-current and exceptional extensions.
    Classify(ClassifyArgs),
    /// Structure constants of the chiral ring.
    ChiralRing(LevelArgs),
    /// Spectral flow of a discrete label by t = ±1/2.
    Flow(FlowArgs),
    /// Index pairing matrix over the Ramond vacua.
    Index(IndexArgs),
    /// Run every invariant check and print a pass/fail table.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct AlgebraArgs {
    /// Flow parameter of the algebra, as p/q.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: Rational,
    /// Mode indices range over [-window, window].
    #[arg(long, default_value_t = 3)]
    window: i64,
}

#[derive(Args, Debug, Serialize)]
struct WeightArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: Rational,
    #[arg(long, allow_hyphen_values = true)]
    h: Rational,
    #[arg(long, allow_hyphen_values = true)]
    q: Rational,
    #[arg(long = "type", default_value = "NS")]
    sector: SectorType,
}

#[derive(Args, Debug, Serialize)]
struct ModuleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    weight: WeightArgs,
    #[arg(long, default_value = "2")]
    cutoff: Rational,
}

#[derive(Args, Debug, Serialize)]
struct FuseArgs {
    #[arg(long)]
    n: u32,
    /// Label "l,m,s" (or "l,m" with --ns).
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    a: Ints,
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    b: Ints,
    /// Fuse NS fermionic sectors instead of coset sectors.
    #[arg(long)]
    ns: bool,
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Classify every level from --n up to this one.
    #[arg(long)]
    max_n: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
struct LevelArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug, Serialize)]
struct FlowArgs {
    #[arg(long)]
    n: u32,
    /// Label "l,m".
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    label: Ints,
    #[arg(long, allow_hyphen_values = true)]
    t: Rational,
    /// Sector type of the source label.
    #[arg(long = "type", default_value = "NS")]
    sector: SectorType,
}

#[derive(Args, Debug, Serialize)]
struct IndexArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "2")]
    cutoff: Rational,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_n: u32,
}

/// Comma-separated integer label such as `1,-1,0`.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct Ints(Vec<i64>);

fn parse_ints(s: &str) -> Result<Ints, String> {
    s.split(',').map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<_, _>>().map(Ints)
}

/// Payload plus its human-readable rendering.
struct Output {
    result: Value,
    text: String,
    /// Exit nonzero even though the command ran.
    failed: bool,
}

impl Output {
    fn new(result: impl Serialize, text: String) -> Self {
        Output { result: serde_json::to_value(result).expect("serializable"), text, failed: false }
    }
}

fn label_from(n: u32, sector: SectorType, parts: &[i64]) -> n2sv_core::Result<DiscreteLabel> {
    match parts {
        [l, m] if *l >= 0 => DiscreteLabel::new(sector, n, *l as u32, *m),
        _ => Err(Error::InvalidLabel(format!("expected l,m with l >= 0, got {parts:?}"))),
    }
}

fn algebra_check(args: &AlgebraArgs) -> n2sv_core::Result<Output> {
    let t = FlowParam(args.t.clone());
    let (triples, jacobi) = check_jacobi(&t, args.window)?;
    let (pairs, flow) = if args.t.is_zero() { (0, None) } else { check_flow(&args.t, args.window)? };
    let failed = jacobi.is_some() || flow.is_some();
    let mut text = format!("jacobi: {} triples, {}\n", triples, jacobi.as_deref().unwrap_or("ok"));
    if !args.t.is_zero() {
        writeln!(text, "flow t={}: {} pairs, {}", args.t, pairs, flow.as_deref().unwrap_or("ok")).unwrap();
    }
    let result = json!({
        "jacobi": {"triples": triples, "passed": jacobi.is_none(), "failure": jacobi},
        "flow": {"pairs": pairs, "passed": flow.is_none(), "failure": flow},
    });
    Ok(Output { result, text, failed })
}

fn module(args: &ModuleArgs) -> n2sv_core::Result<Output> {
    let w = &args.weight;
    let hw = HighestWeight::new(w.sector, w.c.clone(), w.h.clone(), w.q.clone())?;
    let m = build_module(hw, args.cutoff.clone())?;
    let summary = m.summary();
    let mut text = format!("{} c={} h={} q={} cutoff={}\n", w.sector, w.c, w.h, w.q, args.cutoff);
    writeln!(text, "{:>8} {:>9} {:>9} {:>5}", "level", "dim_verma", "dim_irred", "psd").unwrap();
    for l in &summary.levels {
        writeln!(text, "{:>8} {:>9} {:>9} {:>5}", l.level.to_string(), l.dim_verma, l.dim_irred, l.psd).unwrap();
    }
    if let Some(b) = m.first_non_psd_block() {
        writeln!(text, "first non-PSD block: level {}, charge {}", b.key.level, b.key.charge).unwrap();
    }
    Ok(Output::new(summary, text))
}

fn unitarity(args: &WeightArgs) -> n2sv_core::Result<Output> {
    let report = region_check(args.sector, &args.c, &args.h, &args.q);
    let labels: Vec<String> = report.labels.iter().map(ToString::to_string).collect();
    let mut text = serde_json::to_value(report.region).expect("serializable").as_str().unwrap_or("").to_string();
    if !labels.is_empty() {
        write!(text, " {}", labels.join(" ")).unwrap();
    }
    text.push('\n');
    Ok(Output::new(report, text))
}

fn fuse_cmd(args: &FuseArgs) -> n2sv_core::Result<Output> {
    if args.ns {
        let sector = |p: &[i64]| match p {
            [l, m] => NSFermiSector::new(args.n, *l, *m),
            _ => Err(Error::InvalidLabel(format!("expected l,m, got {p:?}"))),
        };
        let (a, b) = (sector(&args.a.0)?, sector(&args.b.0)?);
        let product = fuse_ns(&a, &b)?;
        let text = format!("{product}\n");
        Ok(Output::new(json!({"a": a, "b": b, "product": product}), text))
    } else {
        let sector = |p: &[i64]| match p {
            [l, m, s] => CosetSector::new(args.n, *l, *m, *s),
            _ => Err(Error::InvalidLabel(format!("expected l,m,s, got {p:?}"))),
        };
        let (a, b) = (sector(&args.a.0)?, sector(&args.b.0)?);
        let product = fuse(&a, &b)?;
        let text = format!("{product}\n");
        Ok(Output::new(json!({"a": a, "b": b, "product": product}), text))
    }
}

fn classify(args: &ClassifyArgs) -> n2sv_core::Result<Output> {
    let hi = args.max_n.unwrap_or(args.n).max(args.n);
    let mut levels = Vec::new();
    let mut text = String::new();
    for n in args.n..=hi {
        let maximal = phase_one_maximal_subgroups(n)?;
        let case = closed_form_maximal_subgroups(n)?;
        let records = classification::classify(n)?;
        writeln!(text, "n={n} case={:?} k={}", case.case, case.k).unwrap();
        for g in &maximal {
            let gen = g.generator.map_or("-".to_string(), |x| x.to_string());
            writeln!(text, "  maximal: order {} generated by {gen}", g.order()).unwrap();
        }
        for r in &records {
            let kind = serde_json::to_value(r.kind).expect("serializable");
            writeln!(text, "  {:<20} {}  [{}]", kind.as_str().unwrap_or(""), r.sectors, r.provenance).unwrap();
        }
        levels.push(json!({
            "n": n,
            "case": case.case,
            "k": case.k,
            "maximal": maximal,
            "records": records,
        }));
    }
    let result = if levels.len() == 1 { levels.pop().expect("one level") } else { Value::Array(levels) };
    Ok(Output { result, text, failed: false })
}

fn chiral_ring(args: &LevelArgs) -> n2sv_core::Result<Output> {
    let n = args.n;
    let mut products = Vec::new();
    let mut text = String::new();
    for l1 in 0..=n {
        for l2 in l1..=n {
            let p = chiral::chiral_product(&ChiralRingElement::basis(n, l1)?, &ChiralRingElement::basis(n, l2)?, n)?;
            writeln!(text, "({l1},{}) * ({l2},{}) = {p}", -i64::from(l1), -i64::from(l2)).unwrap();
            products.push(json!({"a": l1, "b": l2, "product": p.coeffs}));
        }
    }
    let vacua = chiral::ramond_vacuum_sectors(n);
    let labels: Vec<String> = vacua.labels.iter().map(ToString::to_string).collect();
    writeln!(text, "Ramond vacua: {}", labels.join(" ")).unwrap();
    let result = json!({
        "n": n,
        "chiral_labels": (0..=n).map(|l| format!("({l},{})", -i64::from(l))).collect::<Vec<_>>(),
        "products": products,
        "ramond_vacua": vacua.labels,
    });
    Ok(Output { result, text, failed: false })
}

fn flow_cmd(args: &FlowArgs) -> n2sv_core::Result<Output> {
    let label = label_from(args.n, args.sector, &args.label.0)?;
    let res = chiral::flow_discrete_label(args.n, &label, &args.t)?;
    let text = format!("{} {} -> {} {}  (h={}, q={})\n", res.source.sector, res.source, res.target.sector, res.target, res.h, res.q);
    Ok(Output::new(res, text))
}

fn index(args: &IndexArgs) -> n2sv_core::Result<Output> {
    let p = chiral::pairing_matrix(args.n, &args.cutoff)?;
    let labels: Vec<String> = p.labels.iter().map(ToString::to_string).collect();
    let text = format!("labels: {}\n{}\n", labels.join(" "), serde_json::to_string(&p.matrix).expect("serializable"));
    Ok(Output::new(p, text))
}

fn verify(args: &VerifyArgs) -> n2sv_core::Result<Output> {
    let report = verify_all(args.max_n);
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(text, "{status}  {:<15} {:<38} {}", c.module, c.name, c.detail).unwrap();
    }
    let failed = !report.all_passed;
    Ok(Output { failed, ..Output::new(report, text) })
}

fn run(cli: &Cli) -> (&'static str, Value, n2sv_core::Result<Output>) {
    match &cli.command {
        Command::AlgebraCheck(a) => ("algebra-check", echo(a), algebra_check(a)),
        Command::Module(a) => ("module", echo(a), module(a)),
        Command::Unitarity(a) => ("unitarity", echo(a), unitarity(a)),
        Command::Fuse(a) => ("fuse", echo(a), fuse_cmd(a)),
        Command::Classify(a) => ("classify", echo(a), classify(a)),
        Command::ChiralRing(a) => ("chiral-ring", echo(a), chiral_ring(a)),
        Command::Flow(a) => ("flow", echo(a), flow_cmd(a)),
        Command::Index(a) => ("index", echo(a), index(a)),
        Command::VerifyAll(a) => ("verify-all", echo(a), verify(a)),
    }
}

fn echo<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("serializable")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input, outcome) = run(&cli);
    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let env = json!({"command": command, "input": input, "result": out.result, "version": VERSION});
                    println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
                }
                Format::Text => print!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let env = json!({
                        "command": command,
                        "input": input,
                        "error": {"kind": e.kind(), "message": e.to_string()},
                        "version": VERSION,
                    });
                    eprintln!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
                }
                Format::Text => eprintln!("error[{}]: {e}", e.kind()),
            }
            ExitCode::from(1)
        }
    }
}
