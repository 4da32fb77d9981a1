use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shiftperm::enumerate::{degree_distribution, enumerate_pprs, Domain, EnumOptions, DEFAULT_BUDGET, DEFAULT_DEGREE_CAP};
use shiftperm::family::{self, CensusMode};
use shiftperm::oracle::{compositional_inverse, hermite_test, is_permutation};
use shiftperm::report::{emit_report, ReportFormat, SCHEMA_VERSION};
use shiftperm::reproduce::{reproduce_field, reproduce_roster, ReproduceConfig, DEFAULT_ROSTER};
use shiftperm::shift::{default_generators, intersection_space, kernel_power};
use shiftperm::{build_field, parse_poly, Error, FieldCtx, FieldElem, PolyFq, SubspaceFq, VPoly};

const EXIT_PRECONDITION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "shiftperm", version, about = "Shift operators, eigenspaces and permutation polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Field characteristic
    #[arg(long)]
    p: u32,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Monic irreducible modulus as comma-separated coefficients, constant term first
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldCtx, Failure> {
        Ok(build_field(self.p, self.n, self.modulus.as_deref())?)
    }
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    /// Output format: json, csv or markdown
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Largest number of candidates an enumeration may examine
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Modulus, primitive element and lines of F_q
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// ker(A_r - I)^k
    Eigenspace {
        #[command(flatten)]
        field: FieldArgs,
        /// Shift parameter as an element index
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// V_k, the intersection of ker(A_r - I)^k over a set of generators
    Intersect {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Comma-separated element indices; defaults to 1, a, ..., a^(n-1)
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<u32>>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Direct permutation test with a collision witness
    IsPp {
        #[command(flatten)]
        field: FieldArgs,
        /// Polynomial such as "1*x^3"; read from stdin when absent
        poly: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hermite's criterion, next to the direct test
    Hermite {
        #[command(flatten)]
        field: FieldArgs,
        poly: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compositional inverse by interpolation
    Invert {
        #[command(flatten)]
        field: FieldArgs,
        poly: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All PPRs in V_k, or in ker(A_r - I)^k when --r is given
    Enumerate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        r: Option<u32>,
        /// Search the first --budget candidates instead of refusing
        #[arg(long)]
        streaming: bool,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// PPR counts by degree over F_p
    DegreeDist {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The parametric family over F_(p^2)
    Fp2 {
        #[command(subcommand)]
        command: Fp2Command,
    },
    /// Runs every claim on one field, or on the default roster
    Reproduce {
        #[arg(long, requires = "n")]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        n: Option<u32>,
        /// Seed for sampled checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size for sampled checks
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Include per-claim runtimes
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Conditioned,
    Full,
}

#[derive(Subcommand, Debug)]
enum Fp2Command {
    /// Checks f and its parametric inverse h for one (m, b)
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        /// A (p+1)-th root of unity, as an element index
        #[arg(long)]
        b: u32,
        /// Check a single (alpha, beta) instead of all of them
        #[arg(long, requires = "beta")]
        alpha: Option<u32>,
        #[arg(long, requires = "alpha")]
        beta: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Counts per (m, b)
    Census {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Conditioned)]
        mode: ModeArg,
        /// Restrict to one m
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Identity suite over all admissible parameters
    Lemmas {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            Failure::Lib(Error::Parse(_)) | Failure::Usage(_) => EXIT_USAGE,
            Failure::Lib(_) => EXIT_PRECONDITION,
            Failure::Io(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn field_json(ctx: &FieldCtx) -> Value {
    json!({ "p": ctx.p(), "n": ctx.n(), "q": ctx.q(), "modulus": ctx.modulus() })
}

fn elem(ctx: &FieldCtx, index: u32) -> Result<FieldElem, Failure> {
    Ok(ctx.elem(index as u64)?)
}

fn read_poly(ctx: &FieldCtx, arg: Option<String>) -> Result<PolyFq, Failure> {
    let text = match arg {
        Some(t) => t,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(parse_poly(ctx, text.trim())?)
}

fn basis_strings(ctx: &FieldCtx, space: &SubspaceFq) -> Result<Vec<String>, Failure> {
    space
        .basis_vectors()
        .iter()
        .map(|v| Ok(VPoly::from_coords(ctx, v)?.to_string()))
        .collect()
}

fn write_out(out: &OutArgs, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(mut value: Value) -> String {
    if let Value::Object(map) = &mut value {
        let mut with_schema = serde_json::Map::new();
        with_schema.insert("schema".into(), json!(SCHEMA_VERSION));
        with_schema.extend(std::mem::take(map));
        value = Value::Object(with_schema);
    }
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// JSON only; tabular commands handle CSV themselves.
fn emit_json(out: &OutArgs, value: Value) -> Result<(), Failure> {
    match out.format {
        ReportFormat::Json => write_out(out, &json_text(value)),
        other => Err(Failure::Usage(format!("{other:?} output is not available for this command"))),
    }
}

fn enum_options(run: &RunArgs) -> EnumOptions {
    EnumOptions { budget: run.budget, ..EnumOptions::default() }.with_workers(run.workers as usize)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::FieldInfo { field, out } => {
            let ctx = field.build()?;
            let lines: Vec<Value> = ctx
                .lines()
                .iter()
                .map(|l| json!({ "representative": l.representative, "b": l.b, "members": l.members }))
                .collect();
            emit_json(
                &out,
                json!({
                    "field": field_json(&ctx),
                    "modulus_text": render_modulus(ctx.modulus()),
                    "primitive": { "index": ctx.primitive(), "text": ctx.render(ctx.primitive()) },
                    "line_count": ctx.line_count(),
                    "lines": lines,
                }),
            )
        }
        Command::Eigenspace { field, r, k, out } => {
            let ctx = field.build()?;
            let r = elem(&ctx, r)?;
            let space = kernel_power(&ctx, r, k)?;
            emit_json(
                &out,
                json!({ "field": field_json(&ctx), "r": r, "k": k, "dim": space.dim(), "basis": basis_strings(&ctx, &space)? }),
            )
        }
        Command::Intersect { field, k, generators, out } => {
            let ctx = field.build()?;
            let gens = match generators {
                Some(g) => g.iter().map(|&i| elem(&ctx, i)).collect::<Result<Vec<_>, _>>()?,
                None => default_generators(&ctx),
            };
            let space = intersection_space(&ctx, k, &gens)?;
            emit_json(
                &out,
                json!({ "field": field_json(&ctx), "k": k, "generators": gens, "dim": space.dim(), "basis": basis_strings(&ctx, &space)? }),
            )
        }
        Command::IsPp { field, poly, out } => {
            let ctx = field.build()?;
            let f = read_poly(&ctx, poly)?;
            let v = is_permutation(&ctx, &f);
            emit_json(
                &out,
                json!({ "field": field_json(&ctx), "poly": f.to_string(), "is_pp": v.is_pp, "is_ppr": v.is_ppr, "witness": v.witness }),
            )
        }
        Command::Hermite { field, poly, out } => {
            let ctx = field.build()?;
            let f = read_poly(&ctx, poly)?;
            let hermite = hermite_test(&ctx, &f)?;
            let direct = is_permutation(&ctx, &f).is_pp;
            emit_json(&out, json!({ "field": field_json(&ctx), "poly": f.to_string(), "hermite": hermite, "direct": direct }))
        }
        Command::Invert { field, poly, out } => {
            let ctx = field.build()?;
            let f = read_poly(&ctx, poly)?;
            let h = compositional_inverse(&ctx, &f)?;
            emit_json(&out, json!({ "field": field_json(&ctx), "poly": f.to_string(), "inverse": h.to_string() }))
        }
        Command::Enumerate { field, k, r, streaming, run, out } => {
            let ctx = field.build()?;
            let (space, domain) = match r {
                Some(r) => {
                    let r = elem(&ctx, r)?;
                    (kernel_power(&ctx, r, k)?, json!({ "kind": "kernel", "r": r, "k": k }))
                }
                None => (intersection_space(&ctx, k, &default_generators(&ctx))?, json!({ "kind": "intersection", "k": k })),
            };
            let opts = EnumOptions { streaming, ..enum_options(&run) };
            let report = enumerate_pprs(&ctx, Domain::Subspace(&space), &opts)?;
            let pprs: Option<Vec<String>> = report.pprs(&ctx).map(|l| l.iter().map(VPoly::to_string).collect());
            match out.format {
                ReportFormat::Csv => {
                    let rows = pprs.unwrap_or_default().into_iter().map(|f| vec![f]).collect();
                    write_out(&out, &csv_text(&["ppr"], rows))
                }
                _ => emit_json(
                    &out,
                    json!({
                        "field": field_json(&ctx),
                        "domain": domain,
                        "dim": space.dim(),
                        "searched": report.searched,
                        "ppr_count": report.ppr_count,
                        "budget_exhausted": report.budget_exhausted,
                        "pprs": pprs,
                    }),
                ),
            }
        }
        Command::DegreeDist { p, run, out } => {
            let ctx = build_field(p, 1, None)?;
            let c = degree_distribution(&ctx, DEFAULT_DEGREE_CAP, &enum_options(&run))?;
            match out.format {
                ReportFormat::Csv => {
                    let rows = c.by_degree.iter().map(|(d, n)| vec![d.to_string(), n.to_string()]).collect();
                    write_out(&out, &csv_text(&["degree", "count"], rows))
                }
                _ => emit_json(
                    &out,
                    json!({
                        "field": field_json(&ctx),
                        "by_degree": c.by_degree,
                        "total": c.total,
                        "stage_mismatches": c.stage_mismatches,
                    }),
                ),
            }
        }
        Command::Fp2 { command } => run_fp2(command),
        Command::Reproduce { p, n, seed, samples, timings, run, out } => {
            let cfg = ReproduceConfig { workers: run.workers as usize, seed, budget: run.budget, samples };
            let reports = match (p, n) {
                (Some(p), Some(n)) => reproduce_field(&build_field(p, n, None)?, &cfg)?,
                _ => reproduce_roster(&DEFAULT_ROSTER, &cfg)?,
            };
            write_out(&out, &emit_report(&reports, out.format, timings))
        }
    }
}

fn render_modulus(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            }
        })
        .collect();
    terms.join(" + ")
}

fn run_fp2(command: Fp2Command) -> Result<(), Failure> {
    match command {
        Fp2Command::Verify { p, m, b, alpha, beta, run, out } => {
            let ctx = build_field(p, 2, None)?;
            let b = elem(&ctx, b)?;
            family::validate_family(&ctx, m, b)?;
            if let (Some(a), Some(be)) = (alpha, beta) {
                let inst = family::derive_params(&ctx, m, b, elem(&ctx, a)?, elem(&ctx, be)?)?;
                let (f, h) = family::build_pair(&ctx, &inst)?;
                let check = family::verify_pair(&ctx, &inst)?;
                return emit_json(
                    &out,
                    json!({
                        "field": field_json(&ctx),
                        "instance": inst,
                        "f": f.to_string(),
                        "h": h.to_string(),
                        "check": check,
                        "all_hold": check.all_hold(),
                    }),
                );
            }
            let pairs: Vec<(FieldElem, FieldElem)> = ctx
                .elements()
                .flat_map(|a| ctx.elements().map(move |be| (a, be)))
                .filter(|&(a, be)| family::check_conditions(&ctx, m, b, a, be).map(|v| v.constructible).unwrap_or(false))
                .collect();
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(run.workers as usize)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let checks: Vec<(FieldElem, FieldElem, bool)> = pool.install(|| {
                use rayon::prelude::*;
                pairs
                    .par_iter()
                    .map(|&(a, be)| {
                        let inst = family::derive_params(&ctx, m, b, a, be)?;
                        Ok((a, be, family::verify_pair(&ctx, &inst)?.all_hold()))
                    })
                    .collect::<Result<Vec<_>, Error>>()
            })?;
            let failures: Vec<Value> = checks
                .iter()
                .filter(|c| !c.2)
                .map(|&(a, be, _)| json!({ "alpha": a, "beta": be }))
                .collect();
            emit_json(
                &out,
                json!({
                    "field": field_json(&ctx),
                    "m": m,
                    "b": b,
                    "instances": checks.len(),
                    "verified": checks.len() - failures.len(),
                    "failures": failures,
                }),
            )
        }
        Fp2Command::Census { p, mode, m, run, out } => {
            let ctx = build_field(p, 2, None)?;
            let mode = match mode {
                ModeArg::Conditioned => CensusMode::Conditioned,
                ModeArg::Full => CensusMode::FullShape,
            };
            let ms: Vec<u32> = match m {
                Some(m) => vec![m],
                None => (2..p).collect(),
            };
            let mut rows = Vec::new();
            for &m in &ms {
                for b in family::family_roots(&ctx)? {
                    rows.push(family::census(&ctx, m, b, mode, run.workers as usize)?);
                }
            }
            match out.format {
                ReportFormat::Csv => {
                    let opt = |v: Option<String>| v.unwrap_or_default();
                    let table = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.m.to_string(),
                                r.b.to_string(),
                                r.conditioned.to_string(),
                                opt(r.full.map(|x| x.to_string())),
                                opt(r.excess.map(|x| x.to_string())),
                            ]
                        })
                        .collect();
                    write_out(&out, &csv_text(&["m", "b", "conditioned", "full", "excess"], table))
                }
                _ => emit_json(&out, json!({ "field": field_json(&ctx), "mode": mode, "rows": rows })),
            }
        }
        Fp2Command::Lemmas { p, out } => {
            let ctx = build_field(p, 2, None)?;
            let report = family::lemma_suite(&ctx)?;
            match out.format {
                ReportFormat::Csv => {
                    let table = report
                        .checks
                        .iter()
                        .map(|c| {
                            vec![
                                c.name.to_string(),
                                c.corrects.unwrap_or("").to_string(),
                                c.instances.to_string(),
                                c.skipped.to_string(),
                                c.failed.to_string(),
                            ]
                        })
                        .collect();
                    write_out(&out, &csv_text(&["identity", "corrects", "instances", "skipped", "failed"], table))
                }
                _ => emit_json(
                    &out,
                    json!({ "field": field_json(&ctx), "all_passed": report.all_passed(), "checks": report.checks }),
                ),
            }
        }
    }
}
