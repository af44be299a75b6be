use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use hypermatch::bench::{parse_seeds, parse_spec_file, run_bench, RowStatus};
use hypermatch::hbm::{parse_instance, serialize_with_comments};
use hypermatch::report::{parse_result, render_result, verify_claim};
use hypermatch::tracefile::{check_trace, TraceWriter};
use hypermatch::{default_b_count, generator_comments, parse_mode};
use hypermatch_core::engine::{find_perfect_matching, Overrides, Parameters, Solution};
use hypermatch_core::instances::{generate, GeneratorSpec};
use hypermatch_core::oracles::{check_haxell, HaxellMode, HaxellStatus, OracleError, DEFAULT_MAX_A};
use hypermatch_core::ratio::{format_rational, haxell_bound, parse_rational, BigRational};
use hypermatch_core::BipartiteHypergraph;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_WITNESS: u8 = 2;

#[derive(Parser)]
#[command(name = "hypermatch", version, about = "Perfect matchings in bipartite hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a perfect matching or a certified violating set.
    Solve {
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        input: PathBuf,
        /// Result document path; standard output if omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Iteration cap per augmentation.
        #[arg(long)]
        max_iters: Option<u64>,
        #[arg(long)]
        mu_override: Option<String>,
        #[arg(long)]
        u_override: Option<usize>,
        /// Re-check tree and progress invariants at every iteration.
        #[arg(long)]
        debug_invariants: bool,
    },
    /// Check a result document against its instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        result: PathBuf,
    },
    /// Exhaustively test the Haxell condition.
    CheckHaxell {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "0")]
        epsilon: String,
        /// Use the classic bound (2r - 3)(|S| - 1); epsilon is ignored.
        #[arg(long)]
        classic: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_A)]
        max_a: usize,
    },
    /// Generate a seeded instance.
    Gen {
        /// planted, guaranteed, graph or adversarial.
        #[arg(long)]
        mode: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        na: usize,
        /// Defaults to a size that suits the mode.
        #[arg(long)]
        nb: Option<usize>,
        #[arg(long, default_value_t = 0)]
        extra_edges: usize,
        /// Private edges per vertex in guaranteed mode.
        #[arg(long)]
        d: Option<usize>,
        /// Funnel size in adversarial mode.
        #[arg(long)]
        funnel: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only used to size the default private degree.
        #[arg(long, default_value = "1")]
        epsilon: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve a seeded batch and print one stats row per instance.
    Bench {
        #[arg(long)]
        spec_file: PathBuf,
        /// N for seeds 0..N, or A..B.
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        epsilon: String,
    },
    /// Check the signature sequence of a trace document.
    CheckTrace { trace: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve {
            epsilon,
            input,
            output,
            trace,
            max_iters,
            mu_override,
            u_override,
            debug_invariants,
        } => {
            let epsilon = rational(&epsilon)?;
            let overrides = Overrides {
                mu: mu_override.as_deref().map(rational).transpose()?,
                u: u_override,
                max_iterations: max_iters,
                check_invariants: debug_invariants,
            };
            let h = read_instance(&input)?;
            let params = Parameters::with_overrides(h.r(), h.a_count(), epsilon.clone(), &overrides)?;
            let (solution, stats) = match trace {
                Some(path) => {
                    let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    let mut writer = TraceWriter::new(BufWriter::new(file));
                    let result = find_perfect_matching(&h, &params, &mut writer);
                    writer.finish().with_context(|| format!("writing {}", path.display()))?;
                    result?
                }
                None => find_perfect_matching(&h, &params, &mut ())?,
            };
            write_output(output.as_deref(), &render_result(&solution, &epsilon, &stats))?;
            Ok(match solution {
                Solution::PerfectMatching(_) => EXIT_OK,
                Solution::Witness(_) => EXIT_WITNESS,
            })
        }
        Command::Verify { instance, result } => {
            let h = read_instance(&instance)?;
            let text = read(&result)?;
            let claim = parse_result(&text).with_context(|| format!("parsing {}", result.display()))?;
            match verify_claim(&h, &claim) {
                Ok(()) => {
                    println!("OK");
                    Ok(EXIT_OK)
                }
                Err(refutation) => {
                    println!("REFUTED {refutation}");
                    Ok(EXIT_ERROR)
                }
            }
        }
        Command::CheckHaxell {
            input,
            epsilon,
            classic,
            max_a,
        } => {
            let h = read_instance(&input)?;
            let mode = if classic {
                HaxellMode::Classic
            } else {
                HaxellMode::Strengthened
            };
            let epsilon = if classic {
                BigRational::from_integer(0.into())
            } else {
                rational(&epsilon)?
            };
            match check_haxell(&h, &epsilon, mode, max_a) {
                Ok(HaxellStatus::Satisfied) => {
                    println!("SATISFIED");
                    Ok(EXIT_OK)
                }
                Ok(HaxellStatus::Violated { s, tau }) => {
                    let bound = haxell_bound(h.r(), &epsilon, s.len());
                    println!("VIOLATED s:{} tau:{tau} bound:{}", join(&s), format_rational(&bound));
                    Ok(EXIT_WITNESS)
                }
                Err(e @ OracleError::InstanceTooLarge { .. }) => Err(anyhow!("INSTANCE_TOO_LARGE: {e}")),
            }
        }
        Command::Gen {
            mode,
            r,
            na,
            nb,
            extra_edges,
            d,
            funnel,
            seed,
            epsilon,
            output,
        } => {
            let epsilon = rational(&epsilon)?;
            let mode = parse_mode(&mode).ok_or_else(|| anyhow!("unknown mode {mode:?}"))?;
            let mut spec = GeneratorSpec::new(mode, r, na, 0, seed);
            spec.extra_edges = extra_edges;
            spec.d = d;
            spec.funnel = funnel;
            spec.b_count = nb.unwrap_or_else(|| default_b_count(&spec, &epsilon));
            let h = generate(&spec, &epsilon)?;
            write_output(
                output.as_deref(),
                &serialize_with_comments(&h, &generator_comments(&spec, &epsilon)),
            )?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            spec_file,
            seeds,
            epsilon,
        } => {
            let epsilon = rational(&epsilon)?;
            let specs = parse_spec_file(&read(&spec_file)?)?;
            let rows = run_bench(&specs, parse_seeds(&seeds)?, &epsilon);
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let mut failed = false;
            for row in &rows {
                failed |= matches!(row.status, RowStatus::Error(_));
                writeln!(out, "{}", row.render())?;
            }
            Ok(if failed { EXIT_ERROR } else { EXIT_OK })
        }
        Command::CheckTrace { trace } => {
            let summary = check_trace(&read(&trace)?).with_context(|| format!("checking {}", trace.display()))?;
            println!(
                "OK augmentations:{} signatures:{}",
                summary.augmentations, summary.signatures
            );
            Ok(EXIT_OK)
        }
    }
}

fn rational(text: &str) -> Result<BigRational> {
    parse_rational(text).map_err(|e| anyhow!("bad rational {text:?}: {e}"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_instance(path: &Path) -> Result<BipartiteHypergraph> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn join(items: &[usize]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
