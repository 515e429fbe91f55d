mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spswitch::graph::{build_symplectic, check_nu, SrgCertificate};
use spswitch::graph6;
use spswitch::orbits::SpecialQuadruple;
use spswitch::suite::{
    check_srg, graph_id, scan_families, scan_variant, SuiteOptions, SuiteReport,
};
use spswitch::triples::ScanMode;
use spswitch::variants::{switch_variant, Variant};
use spswitch::{BitVector, Error};

use report::{Envelope, PartitionFile};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "spswitch",
    version,
    about = "Switched symplectic graphs over GF(2)"
)]
struct Cli {
    /// Cap on scan worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write graph6, partition and switch record files.
    Build(BuildArgs),
    /// Run the verification suite, or check a graph6 file.
    Verify(VerifyArgs),
    /// Find the smallest nonzero common-neighbour count over vertex triples.
    Scan(ScanArgs),
}

#[derive(Args, Clone, Serialize)]
struct GraphArgs {
    #[arg(long)]
    nu: usize,

    /// v1,v2,v3 of the special 4-subset as coordinate strings, e.g.
    /// 100000,001000,000010; defaults to e1,e3,e5.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    quadruple: Option<Vec<String>>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    graph: GraphArgs,

    #[arg(long, default_value = "base")]
    variant: Variant,

    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Check this graph6 file for the strong regularity parameters of
    /// `Sp(2ν, 2)` instead of running the suite.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Random triples per variant for the switched-count check when ν ≥ 4.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    graph: GraphArgs,

    #[arg(long, conflicts_with = "all_variants")]
    variant: Option<Variant>,

    /// Scan the base graph and the four orbit-partition switches.
    #[arg(long)]
    all_variants: bool,

    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,

    /// Number of random triples to sample.
    #[arg(long)]
    sample: Option<u64>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Include the count histogram.
    #[arg(long)]
    histogram: bool,

    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NuOutOfRange { .. }
            | Error::InvalidQuadruple(_)
            | Error::Parse(_)
            | Error::BadDimension(_)
            | Error::DimensionMismatch { .. }
            | Error::ExhaustiveTooLarge { .. }
            | Error::GroupTooLarge { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Runtime(format!("{}: {e}", path.display()))
}

fn quadruple(g: &GraphArgs) -> Result<SpecialQuadruple, Failure> {
    match &g.quadruple {
        None => Ok(SpecialQuadruple::canonical(g.nu)?),
        Some(vs) if vs.len() != 3 => Err(Failure::Usage(format!(
            "--quadruple takes 3 vectors, got {}",
            vs.len()
        ))),
        Some(vs) => {
            let v: Vec<BitVector> = vs
                .iter()
                .map(|s| BitVector::from_coords(s))
                .collect::<Result<_, _>>()?;
            if v[0].dim() != 2 * g.nu {
                return Err(Failure::Usage(format!(
                    "quadruple vectors have dimension {}, expected {}",
                    v[0].dim(),
                    2 * g.nu
                )));
            }
            Ok(SpecialQuadruple::new(v[0], v[1], v[2])?)
        }
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<C: Serialize, T: Serialize>(
    format: Format,
    env: &Envelope<C, T>,
    text: impl FnOnce() -> String,
) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn cmd_build(a: &BuildArgs, format: Format) -> Result<bool, Failure> {
    let q = quadruple(&a.graph)?;
    let base = build_symplectic(a.graph.nu)?;
    let v = switch_variant(&base, a.variant, &q)?;
    for w in &v.warnings {
        eprintln!("warning: {w}");
    }
    fs::create_dir_all(&a.out).map_err(|e| io_err(&a.out, e))?;
    let id = graph_id(a.variant, a.graph.nu);
    let g6 = a.out.join(format!("{id}.g6"));
    let mut bytes = graph6::encode(&v.graph);
    bytes.push(b'\n');
    fs::write(&g6, bytes).map_err(|e| io_err(&g6, e))?;
    let part = a.out.join(format!("{id}.partition.json"));
    let pf = v
        .partition
        .as_ref()
        .map(|p| PartitionFile::new(&v.graph, p));
    fs::write(
        &part,
        serde_json::to_string_pretty(&pf).expect("serialisable") + "\n",
    )
    .map_err(|e| io_err(&part, e))?;
    let sw = a.out.join(format!("{id}.switch.json"));
    fs::write(
        &sw,
        serde_json::to_string(&v.record).expect("serialisable") + "\n",
    )
    .map_err(|e| io_err(&sw, e))?;

    let result = report::BuildResult {
        graph: id,
        vertices: v.graph.n(),
        edges: v.graph.edge_count(),
        toggled_pairs: v.record.toggles.len(),
        flipped_cells: v.record.flipped_cells.clone(),
        warnings: v.warnings.clone(),
        files: [&g6, &part, &sw]
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
    };
    let env = Envelope::new(
        "build",
        report::BuildConfig {
            graph: a.graph.clone(),
            variant: a.variant,
        },
        &result,
    );
    emit(render(format, &env, || report::build_text(&result)), None)?;
    Ok(true)
}

fn cmd_verify(a: &VerifyArgs, format: Format) -> Result<bool, Failure> {
    let report = match &a.input {
        Some(path) => {
            let data = fs::read(path).map_err(|e| io_err(path, e))?;
            check_nu(a.graph.nu)?;
            let g = graph6::decode(&data)?;
            let check = check_srg(
                &[("input".to_string(), &g)],
                SrgCertificate::symplectic(a.graph.nu),
            );
            SuiteReport {
                nu: a.graph.nu,
                passed: check.passed,
                checks: vec![check],
            }
        }
        None => {
            let opts = SuiteOptions {
                nu: a.graph.nu,
                quadruple: quadruple(&a.graph)?,
                prediction_samples: a.samples,
                seed: a.seed,
            };
            spswitch::run_suite(&opts)?
        }
    };
    let config = report::VerifyConfig {
        graph: a.graph.clone(),
        input: a.input.as_ref().map(|p| p.display().to_string()),
        samples: a.samples,
        seed: a.seed,
    };
    let env = Envelope::new("verify", config, &report);
    emit(
        render(format, &env, || report::verify_text(&report)),
        a.out.as_deref(),
    )?;
    Ok(report.passed)
}

fn cmd_scan(a: &ScanArgs, format: Format) -> Result<bool, Failure> {
    let mode = match a.sample {
        Some(count) => ScanMode::Sampled {
            count,
            seed: a.seed,
        },
        None => ScanMode::Exhaustive,
    };
    let q = quadruple(&a.graph)?;
    let config = report::ScanConfig {
        graph: a.graph.clone(),
        variant: a.variant,
        all_variants: a.all_variants,
        mode,
        histogram: a.histogram,
    };
    if a.all_variants {
        let r = scan_families(a.graph.nu, &q, mode, a.histogram)?;
        let ok = r.all_match()
            && (r.pairwise_distinct || a.graph.nu < 4 || mode != ScanMode::Exhaustive);
        let env = Envelope::new("scan", config, &r);
        emit(
            render(format, &env, || report::families_text(&r)),
            a.out.as_deref(),
        )?;
        return Ok(ok);
    }
    let variant = a
        .variant
        .ok_or_else(|| Failure::Usage("one of --variant or --all-variants is required".into()))?;
    let base = build_symplectic(a.graph.nu)?;
    let v = switch_variant(&base, variant, &q)?;
    for w in &v.warnings {
        eprintln!("warning: {w}");
    }
    let e = scan_variant(&v, mode, a.histogram)?;
    let env = Envelope::new("scan", config, &e);
    emit(
        render(format, &env, || report::entry_text(&e)),
        a.out.as_deref(),
    )?;
    Ok(e.matches_expected != Some(false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let outcome = match &cli.command {
        Command::Build(a) => cmd_build(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
        Command::Scan(a) => {
            if a.exhaustive && a.sample.is_some() {
                Err(Failure::Usage(
                    "--exhaustive and --sample are exclusive".into(),
                ))
            } else {
                cmd_scan(a, cli.format)
            }
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}
