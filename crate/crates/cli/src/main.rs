use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kcycle_core::bench::{self, ExactOptions, FamilySpec, OriginatorSet, SweepConfig};
use kcycle_core::bounds::{lower_bound, predicted_time};
use kcycle_core::exact::{exact_structured, exact_subset, StructuredConfig, SubsetConfig};
use kcycle_core::{validate, BroadcastScheme, Instance, Originator, Scheduler};

/// Broadcast scheduling on k-cycle graphs
#[derive(Parser, Debug)]
#[command(name = "kcycle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file from a family
    Gen {
        /// equal:K,L | step2:K,P | mixed:K,P | random:K,LMAX,SEED | explicit:L1,L2,...
        #[arg(long)]
        family: FamilySpec,
        /// `center` or `i:p`
        #[arg(long, default_value = "center")]
        originator: Originator,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scheduler and validate its scheme
    Run {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "simple")]
        scheduler: Scheduler,
        #[arg(long)]
        scheme_out: Option<PathBuf>,
    },
    /// Check a scheme against an instance
    Validate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Lower bounds and the simple algorithm's predicted time
    Bounds {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Optimal broadcast time with a witness scheme
    Exact {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Structured)]
        method: Method,
        /// State budget for the subset search
        #[arg(long, default_value_t = SubsetConfig::default().node_budget)]
        budget: u64,
        /// Vertex cap for the subset search
        #[arg(long, default_value_t = SubsetConfig::default().max_vertices)]
        max_vertices: usize,
        /// Cycle cap for the structured search
        #[arg(long, default_value_t = StructuredConfig::default().max_cycles)]
        max_cycles: usize,
    },
    /// Exhaustive sweep over non-increasing length vectors, written as CSV
    Sweep {
        #[arg(long)]
        k_min: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        l_min: usize,
        #[arg(long)]
        l_max: usize,
        /// center, cycles or all
        #[arg(long, default_value = "all")]
        originators: OriginatorSet,
        /// Solve every instance exactly
        #[arg(long)]
        exact: bool,
        /// Skip the subset-search second opinion on small graphs
        #[arg(long)]
        no_cross_check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equal-length ratio brackets as k grows
    Tightness {
        #[arg(long)]
        l: usize,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        k: Vec<usize>,
        /// Fail when some k is outside the t_A >= 2k regime
        #[arg(long)]
        strict: bool,
        /// Simulate only graphs with fewer vertices than this
        #[arg(long, default_value_t = 1_000_000)]
        sim_limit: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Subset,
    Structured,
}

fn load(path: &Path) -> Result<Instance> {
    let inst = Instance::load(path)?;
    if inst.was_reordered() {
        let pairs: Vec<String> = inst
            .mapping
            .iter()
            .enumerate()
            .map(|(j, m)| format!("{}->{}", j + 1, m))
            .collect();
        eprintln!(
            "note: cycles re-sorted to {}; input index -> sorted index: {}",
            inst.graph,
            pairs.join(" ")
        );
    }
    Ok(inst)
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn ratio(n: u64, d: u64) -> f64 {
    n as f64 / d as f64
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen {
            family,
            originator,
            out,
        } => {
            let inst = Instance::new(family.graph()?, originator)?;
            match out {
                Some(p) => inst.save(&p)?,
                None => println!("{}", inst.to_json()),
            }
        }

        Command::Run {
            instance,
            scheduler,
            scheme_out,
        } => {
            let inst = load(&instance)?;
            let (g, o) = (&inst.graph, inst.originator);
            let (scheme, time) = bench::run_scheduler(g, o, scheduler)?;
            let lb = lower_bound(g, o)?.combined;
            if let Some(p) = scheme_out {
                write_text(Some(&p), &scheme.to_json())?;
            }
            println!(
                "{:#}",
                json!({
                    "instance": g.lengths(),
                    "originator": o,
                    "scheduler": scheduler.name(),
                    "time": time,
                    "lb": lb,
                    "ratio_lb": ratio(time as u64, lb as u64),
                    "calls": scheme.call_count(),
                })
            );
        }

        Command::Validate { instance, scheme } => {
            let inst = load(&instance)?;
            let text = std::fs::read_to_string(&scheme).with_context(|| format!("reading {}", scheme.display()))?;
            let s = BroadcastScheme::from_json(&text).context("malformed scheme JSON")?;
            match validate(&inst.graph, inst.originator, &s) {
                Ok(t) => println!("valid: broadcast time {t}"),
                Err(violations) => {
                    println!("invalid: {} violation(s)", violations.len());
                    for v in &violations {
                        println!("  {v}");
                    }
                    return Ok(ExitCode::FAILURE);
                }
            }
        }

        Command::Bounds { instance } => {
            let inst = load(&instance)?;
            let (g, o) = (&inst.graph, inst.originator);
            let report = lower_bound(g, o)?;
            println!(
                "{:#}",
                json!({
                    "instance": g.lengths(),
                    "originator": o,
                    "d": g.originator_distance(o)?,
                    "bounds": report,
                    "predicted_simple": predicted_time(g, o)?,
                })
            );
        }

        Command::Exact {
            instance,
            method,
            budget,
            max_vertices,
            max_cycles,
        } => {
            let inst = load(&instance)?;
            let (g, o) = (&inst.graph, inst.originator);
            let result = match method {
                Method::Subset => exact_subset(
                    g,
                    o,
                    SubsetConfig {
                        max_vertices,
                        node_budget: budget,
                    },
                )?,
                Method::Structured => exact_structured(g, o, StructuredConfig { max_cycles })?,
            };
            println!("{}", serde_json::to_string_pretty(&result)?);
        }

        Command::Sweep {
            k_min,
            k_max,
            l_min,
            l_max,
            originators,
            exact,
            no_cross_check,
            out,
        } => {
            let cfg = SweepConfig {
                k_min,
                k_max,
                l_min,
                l_max,
                originators,
                exact: exact.then_some(ExactOptions {
                    cross_check: !no_cross_check,
                    ..ExactOptions::default()
                }),
            };
            let summary = match &out {
                Some(p) => {
                    let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
                    bench::sweep(&cfg, BufWriter::new(f))?
                }
                None => bench::sweep(&cfg, io::stdout().lock())?,
            };
            if out.is_some() {
                for line in summary.footer_lines() {
                    eprintln!("{line}");
                }
            }
            if !summary.is_clean() {
                return Ok(ExitCode::FAILURE);
            }
        }

        Command::Tightness {
            l,
            k,
            strict,
            sim_limit,
            json,
        } => {
            let rows = bench::tightness(l, &k, strict, sim_limit)?;
            let mismatches: Vec<String> = rows.iter().flat_map(|r| r.mismatches()).collect();
            if json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                let mut out = io::stdout().lock();
                writeln!(
                    out,
                    "{:>8} {:>4} {:>8} {:>8} {:>10} {:>10} {:>7} {:>10} {:>10}",
                    "k", "l", "t_A", "t_opt", "lo", "hi", "regime", "sim_A", "sim_pal"
                )?;
                for r in &rows {
                    let sim = |t: Option<u32>| t.map_or("-".to_string(), |t| t.to_string());
                    writeln!(
                        out,
                        "{:>8} {:>4} {:>8} {:>8} {:>10.6} {:>10.6} {:>7} {:>10} {:>10}",
                        r.k,
                        r.l,
                        r.t_a,
                        r.t_opt,
                        ratio(*r.lo.numer(), *r.lo.denom()),
                        ratio(*r.hi.numer(), *r.hi.denom()),
                        if r.in_regime { "yes" } else { "no" },
                        sim(r.sim_simple),
                        sim(r.sim_palindrome),
                    )?;
                }
                if rows.iter().any(|r| !r.in_regime) {
                    writeln!(
                        out,
                        "note: rows with regime=no have t_A < 2k; the bracket is the formula value only and the simulated times may differ"
                    )?;
                }
            }
            if !mismatches.is_empty() {
                for m in &mismatches {
                    eprintln!("mismatch: {m}");
                }
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
