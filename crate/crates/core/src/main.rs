use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ekrlab::certificates::{cross_certificate, ekr_certificate, simplex_witness, Outcome};
use ekrlab::constructions::ConstructionSpec;
use ekrlab::fractional::{fractional_cover_with_limit, fractional_matching_with_limit, DEFAULT_LP_EDGE_LIMIT};
use ekrlab::io::{self, emit_report, read_family, serialize_family, Format, Report};
use ekrlab::matching::{find_matching_by_degree, matching_number_with_limit, DEFAULT_EDGE_LIMIT};
use ekrlab::search::{
    conjecture_scan, cross_pair_scan_with_limit, ekr_degree_scan_with_limit, Verdict, MAX_KNESER_VERTICES,
};
use ekrlab::spectral::{level_masses, MassEngine, DEFAULT_GRAM_LIMIT};
use ekrlab::{Error, Result};

const LIMIT_VAR: &str = "EKRLAB_LIMIT";

#[derive(Parser)]
#[command(name = "ekrlab", version, about = "Exact checks for minimum-degree Erdős–Ko–Rado phenomena")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: FormatArg,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family and write it as JSON.
    Construct(ConstructArgs),
    /// Evaluate a spectral inequality chain.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Kneser eigenvalues and eigenspace masses of a family.
    Spectrum {
        file: PathBuf,
        /// Every eigenspace mass instead of the first two and the remainder.
        #[arg(long)]
        full: bool,
    },
    /// Matching number, fractional matching or cover, or the degree construction.
    Matching {
        file: PathBuf,
        #[arg(long)]
        fractional: bool,
        #[arg(long)]
        cover: bool,
        /// Build a matching of this size from the degree case split.
        #[arg(long, value_name = "S")]
        construct_degree: Option<usize>,
    },
    /// Exhaustive or heuristic scans.
    #[command(subcommand)]
    Scan(ScanCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Star,
    ErdosExtremal,
    HiltonMilner,
    Remark,
    RandomHalved,
    Complete,
    Fano,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: ConstructKind,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, default_value_t = 1)]
    i: u32,
    #[arg(long, default_value_t = 1)]
    center: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertifyCommand {
    Ekr { file: PathBuf },
    Cross { b: PathBuf, c: PathBuf },
    Witness { file: PathBuf },
}

#[derive(Subcommand)]
enum ScanCommand {
    Ekr {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Keep one record per isomorphism class.
        #[arg(long)]
        dedup: bool,
    },
    Cross {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dedup: bool,
    },
    Conjecture {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Output of a command: rendered reports plus whether a verdict failed.
struct CommandOutput {
    reports: Vec<Report>,
    raw: Option<String>,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else {
        match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Some(raw) = &out.raw {
                let _ = stdout.write_all(raw.as_bytes());
            }
            for (i, r) in out.reports.iter().enumerate() {
                if i > 0 && format == Format::Text {
                    let _ = stdout.write_all(b"\n");
                }
                let _ = stdout.write_all(&emit_report(r, format));
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("ekrlab: {e}");
            ExitCode::from(match e {
                Error::Resource(_) => 3,
                Error::Contradiction(_) | Error::Solver(_) => 1,
                Error::Domain(_) | Error::Parse(_) | Error::Io { .. } => 2,
            })
        }
    }
}

fn limit_override() -> Result<Option<u64>> {
    match std::env::var(LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Domain(format!("{LIMIT_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn required(v: Option<u32>, name: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Domain(format!("this construction needs --{name}")))
}

fn reports(reports: Vec<Report>, failed: bool) -> Result<CommandOutput> {
    Ok(CommandOutput {
        reports,
        raw: None,
        failed,
    })
}

fn run(command: Command) -> Result<CommandOutput> {
    let limit = limit_override()?;
    let cap = |default: u64| limit.unwrap_or(default);
    match command {
        Command::Construct(a) => {
            let spec = match a.kind {
                ConstructKind::Star => ConstructionSpec::Star {
                    n: required(a.n, "n")?,
                    k: required(a.k, "k")?,
                    center: a.center,
                },
                ConstructKind::ErdosExtremal => ConstructionSpec::ErdosExtremal {
                    n: required(a.n, "n")?,
                    k: required(a.k, "k")?,
                    s: required(a.s, "s")?,
                    i: a.i,
                },
                ConstructKind::HiltonMilner => ConstructionSpec::HiltonMilner {
                    n: required(a.n, "n")?,
                    k: required(a.k, "k")?,
                },
                ConstructKind::Remark => ConstructionSpec::Remark,
                ConstructKind::RandomHalved => ConstructionSpec::RandomHalved {
                    k: required(a.k, "k")?,
                    seed: a.seed,
                },
                ConstructKind::Complete => ConstructionSpec::Complete {
                    n: required(a.n, "n")?,
                    k: required(a.k, "k")?,
                },
                ConstructKind::Fano => ConstructionSpec::Fano,
            };
            let text = serialize_family(&spec.build()?);
            match a.out {
                Some(path) => {
                    io::write_file(&path, text.as_bytes())?;
                    reports(Vec::new(), false)
                }
                None => Ok(CommandOutput {
                    reports: Vec::new(),
                    raw: Some(text),
                    failed: false,
                }),
            }
        }
        Command::Certify(CertifyCommand::Ekr { file }) => {
            let c = ekr_certificate(&read_family(&file)?)?;
            reports(vec![io::ekr_report(&c)], !c.all_hold())
        }
        Command::Certify(CertifyCommand::Cross { b, c }) => {
            let cert = cross_certificate(&read_family(&b)?, &read_family(&c)?)?;
            let ok = cert.ineq10_holds() && cert.product_bound_holds() && cert.tail_bound.holds();
            reports(vec![io::cross_report(&cert)], !ok)
        }
        Command::Certify(CertifyCommand::Witness { file }) => {
            let f = read_family(&file)?;
            let w = simplex_witness(&f)?;
            reports(vec![io::witness_report(&f, &w)], w.outcome == Outcome::Violated)
        }
        Command::Spectrum { file, full } => {
            let f = read_family(&file)?;
            if full {
                let engine = MassEngine::with_limit(f.n(), f.k(), cap(DEFAULT_GRAM_LIMIT))?;
                let m = engine.masses(&f)?;
                let failed = !m.is_consistent(&f, engine.spectrum());
                reports(vec![io::spectrum_full_report(engine.spectrum(), &f, &m)], failed)
            } else {
                let spectrum = ekrlab::spectral::kneser_spectrum(f.n(), f.k())?;
                let m = level_masses(&f)?;
                reports(vec![io::spectrum_report(&spectrum, &f, &m)], false)
            }
        }
        Command::Matching {
            file,
            fractional,
            cover,
            construct_degree,
        } => {
            let f = read_family(&file)?;
            let mut out = Vec::new();
            if let Some(s) = construct_degree {
                out.push(io::degree_matching_report(s, &find_matching_by_degree(&f, s)?));
            }
            let lp_limit = cap(DEFAULT_LP_EDGE_LIMIT as u64) as usize;
            if fractional {
                out.push(io::fractional_report(&f, &fractional_matching_with_limit(&f, lp_limit)?));
            }
            if cover {
                out.push(io::fractional_report(&f, &fractional_cover_with_limit(&f, lp_limit)?));
            }
            if out.is_empty() {
                let (nu, m) = matching_number_with_limit(&f, cap(DEFAULT_EDGE_LIMIT as u64) as usize)?;
                out.push(io::matching_report(nu, &m));
            }
            reports(out, false)
        }
        Command::Scan(scan) => {
            let report = match scan {
                ScanCommand::Ekr { n, k, dedup } => {
                    let mut r = ekr_degree_scan_with_limit(n, k, cap(MAX_KNESER_VERTICES))?;
                    if dedup {
                        r.dedup_records();
                    }
                    r
                }
                ScanCommand::Cross { n, k, dedup } => {
                    let mut r = cross_pair_scan_with_limit(n, k, cap(MAX_KNESER_VERTICES))?;
                    if dedup {
                        r.dedup_records();
                    }
                    r
                }
                ScanCommand::Conjecture {
                    n,
                    k,
                    s,
                    budget,
                    seed,
                } => conjecture_scan(n, k, s, budget, seed)?,
            };
            let failed = report.verdict == Verdict::Fail;
            reports(vec![io::scan_report(&report)], failed)
        }
    }
}
