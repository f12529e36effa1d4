//! `ordlab`: exact computations with orders on lattices, Laurent rings and
//! free metabelian groups.
//!
//! Exit codes: 0 on success (and empty-violation reports), 1 when a suite
//! reports violations or a membership query rejects, 2 on usage or
//! configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ordlab_core::biorder::OrderSpec;
use ordlab_core::config;
use ordlab_core::conelang;
use ordlab_core::harness::{self, ExecMode, Report, WordSampler};
use ordlab_core::latord::{ComparisonBracket, LimitResult};
use ordlab_core::laurent::LaurentPoly;
use ordlab_core::magnus::{GroupWord, WreathElement};
use ordlab_core::suites;
use ordlab_core::zxord::PerturbMode;
use ordlab_core::{Error, Sign};

mod replay;

#[derive(Parser)]
#[command(name = "ordlab", version, about = "computable orders workbench")]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: ORDLAB_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OrderArg {
    /// Path to an order config (quotient-leading or non-convex JSON).
    #[arg(long)]
    order: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a word to its Magnus normal form.
    Eval {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        word: String,
    },
    /// Sign of a word under an order.
    Sign {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        word: String,
    },
    /// Compare two words under an order.
    Cmp {
        #[command(flatten)]
        order: OrderArg,
        word1: String,
        word2: String,
    },
    /// Absolute value (the word or its inverse) under an order.
    Abs {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        word: String,
    },
    /// Comparison index of two lattice vectors under a form tower.
    Ci {
        /// Path to a tower config.
        #[arg(long)]
        tower: PathBuf,
        /// Comma-separated integer vector, e.g. "1,0".
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value_t = CiMethod::Exact)]
        method: CiMethod,
        /// Denominator bound for the bracket method.
        #[arg(long, default_value_t = 256)]
        denom_bound: u64,
        /// Denominator for the limit method.
        #[arg(long, default_value_t = 256)]
        n: u64,
    },
    /// Sign of a univariate Laurent polynomial under a shift-invariant order.
    ZxSign {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Generators of the convex subgroup chain of a shift-invariant order.
    ZxChain {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Perturb a shift-invariant order keeping given polynomials positive.
    Perturb {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        mode: PerturbArg,
        /// Polynomials that must stay positive (repeatable).
        #[arg(long = "positive")]
        positive: Vec<String>,
    },
    /// The context-free positive-cone language of the rank-2 group.
    Cone {
        #[command(subcommand)]
        cmd: ConeCmd,
    },
    /// Property suites.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Re-run the violation witnesses of a stored report.
    Replay {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CiMethod {
    Exact,
    Bracket,
    Limit,
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbArg {
    FlipDeepest,
    MoveR,
}

#[derive(Subcommand)]
enum ConeCmd {
    /// Membership of a string over {a,b,c,A,B,C}; exits 1 on rejection.
    Accept {
        word: String,
        /// Emit the acceptance certificate.
        #[arg(long)]
        trace: bool,
    },
    /// Enumerate accepted strings and check positivity under the matching
    /// order.
    Scan {
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
    },
    /// Find a representative string for a positive word.
    Find {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 14)]
        search_len: usize,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Positive-cone axioms on sampled elements.
    Axioms {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        mean_len: u32,
        #[arg(long, default_value_t = 40)]
        max_len: u32,
    },
    /// Convexity of the first convex subgroup of a shift-invariant order.
    Convexity {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        coeff_bound: i64,
    },
    /// All Jacobi combinations up to a rank evaluate to the identity.
    Jacobi {
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
    },
    /// The commutator power formula, exhaustive plus random conjugates.
    Lemma61 {
        #[arg(long, default_value_t = 4)]
        max_exp: i64,
        #[arg(long, default_value_t = 50)]
        random: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Domination of sampled derived-coset elements by a word.
    Sandwich {
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Comma-separated powers of the first generator to multiply in.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        coset_powers: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    harness::configure_threads(cli.threads);
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn load_order(path: &Path) -> Result<OrderSpec, Error> {
    config::order_from_json(&read_file(path)?)
}

fn parse_word(rank: usize, word: &str) -> Result<WreathElement, Error> {
    Ok(WreathElement::eval(&GroupWord::parse(rank, word)?))
}

fn parse_vec(s: &str) -> Result<Vec<ordlab_core::Int>, Error> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map(ordlab_core::Int::from)
                .map_err(|e| Error::Config(format!("bad vector entry {p:?}: {e}")))
        })
        .collect()
}

fn element_json(e: &WreathElement) -> serde_json::Value {
    serde_json::json!({
        "rank": e.rank(),
        "t": e.abelianization(),
        "slots": e.base().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

fn print_sign(format: Format, s: Sign) {
    match format {
        Format::Text => println!("{s}"),
        Format::Json => println!("{}", serde_json::json!({ "sign": s.to_string() })),
    }
}

fn report_exit(format: Format, report: &Report) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable")
        ),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn bracket_json(b: &ComparisonBracket) -> serde_json::Value {
    match b {
        ComparisonBracket::Exact(v) => serde_json::json!({ "exact": v.to_string() }),
        ComparisonBracket::Interval(lo, hi) => {
            serde_json::json!({ "interval": [lo.to_string(), hi.to_string()] })
        }
        ComparisonBracket::Zero => serde_json::json!({ "zero": true }),
        ComparisonBracket::Infinity => serde_json::json!({ "infinity": true }),
    }
}

fn bracket_text(b: &ComparisonBracket) -> String {
    match b {
        ComparisonBracket::Exact(v) => format!("exact {v}"),
        ComparisonBracket::Interval(lo, hi) => format!("interval ({lo}, {hi})"),
        ComparisonBracket::Zero => "zero".into(),
        ComparisonBracket::Infinity => "infinity".into(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    match cli.cmd {
        Cmd::Eval { rank, word } => {
            let e = parse_word(rank, &word)?;
            println!("{}", serde_json::to_string_pretty(&element_json(&e)).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sign { order, word } => {
            let spec = load_order(&order.order)?;
            let e = parse_word(spec.rank(), &word)?;
            print_sign(format, spec.sign(&e)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cmp {
            order,
            word1,
            word2,
        } => {
            let spec = load_order(&order.order)?;
            let e1 = parse_word(spec.rank(), &word1)?;
            let e2 = parse_word(spec.rank(), &word2)?;
            print_sign(format, spec.compare(&e1, &e2)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Abs { order, word } => {
            let spec = load_order(&order.order)?;
            let e = parse_word(spec.rank(), &word)?;
            let a = spec.abs(&e)?;
            println!("{}", serde_json::to_string_pretty(&element_json(&a)).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ci {
            tower,
            u,
            v,
            method,
            denom_bound,
            n,
        } => {
            let t = config::tower_from_json(&read_file(&tower)?)?;
            let u = parse_vec(&u)?;
            let v = parse_vec(&v)?;
            match method {
                CiMethod::Exact => {
                    let b = t.ci_exact(&u, &v)?;
                    match format {
                        Format::Text => println!("{}", bracket_text(&b)),
                        Format::Json => println!("{}", bracket_json(&b)),
                    }
                }
                CiMethod::Bracket => {
                    let b = t.ci_bracket(&u, &v, denom_bound)?;
                    match format {
                        Format::Text => println!("{}", bracket_text(&b)),
                        Format::Json => println!("{}", bracket_json(&b)),
                    }
                }
                CiMethod::Limit => match t.ci_by_limit(&u, &v, n)? {
                    LimitResult::Ratio(r) => match format {
                        Format::Text => println!("{r}"),
                        Format::Json => {
                            println!("{}", serde_json::json!({ "ratio": r.to_string() }))
                        }
                    },
                    LimitResult::NoMinimum => match format {
                        Format::Text => println!("no-minimum"),
                        Format::Json => println!("{}", serde_json::json!({ "no_minimum": true })),
                    },
                },
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ZxSign { spec, poly } => {
            let s = config::zx_from_json(&read_file(&spec)?)?;
            let f = LaurentPoly::parse(1, &poly)?;
            print_sign(format, s.sign(&f)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ZxChain { spec, depth } => {
            let s = config::zx_from_json(&read_file(&spec)?)?;
            let chain = s.chain(depth)?;
            match format {
                Format::Text => {
                    for p in &chain {
                        println!("{p}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::json!(chain.iter().map(|p| p.to_string()).collect::<Vec<_>>())
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Perturb {
            spec,
            mode,
            positive,
        } => {
            let s = config::zx_from_json(&read_file(&spec)?)?;
            let pos = positive
                .iter()
                .map(|p| LaurentPoly::parse(1, p))
                .collect::<Result<Vec<_>, _>>()?;
            let mode = match mode {
                PerturbArg::FlipDeepest => PerturbMode::FlipDeepest,
                PerturbArg::MoveR => PerturbMode::MoveR,
            };
            let (s2, witness) = s.perturb(&pos, mode)?;
            let out = serde_json::json!({
                "spec": config::zx_to_json(&s2),
                "witness": witness.to_string(),
                "witness_sign_before": s.sign(&witness)?.to_string(),
                "witness_sign_after": s2.sign(&witness)?.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cone { cmd } => run_cone(format, cmd),
        Cmd::Check { cmd } => run_check(format, cmd),
        Cmd::Replay { report } => replay::run(&read_file(&report)?),
    }
}

fn run_cone(format: Format, cmd: ConeCmd) -> Result<ExitCode, Error> {
    match cmd {
        ConeCmd::Accept { word, trace } => {
            if trace {
                let (acc, tr) = conelang::cl_accept_with_trace(&word)?;
                let out = serde_json::json!({
                    "word": word,
                    "accepted": acc,
                    "trace": tr,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
                Ok(if acc { ExitCode::SUCCESS } else { ExitCode::from(1) })
            } else {
                let acc = conelang::cl_accept(&word)?;
                match format {
                    Format::Text => println!("{}", if acc { "accept" } else { "reject" }),
                    Format::Json => {
                        println!("{}", serde_json::json!({ "word": word, "accepted": acc }))
                    }
                }
                Ok(if acc { ExitCode::SUCCESS } else { ExitCode::from(1) })
            }
        }
        ConeCmd::Scan { maxlen } => {
            let report = conelang::soundness_scan(maxlen, ExecMode::auto())?;
            match format {
                Format::Text => {
                    println!("maxlen: {}", report.maxlen);
                    println!("accepted: {}", report.accepted);
                    println!("violations: {}", report.violations.len());
                    for v in &report.violations {
                        println!("  {} -> {}", v.word, v.sign);
                    }
                    println!("{}", if report.violations.is_empty() { "PASS" } else { "FAIL" });
                }
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).unwrap())
                }
            }
            Ok(if report.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        ConeCmd::Find { word, search_len } => {
            // The word is over the cone alphabet: c stands for the commutator.
            let e = WreathElement::eval(&conelang::to_group_word(&word)?);
            match conelang::completeness_probe(&e, search_len)? {
                Some(rep) => {
                    match format {
                        Format::Text => println!("{rep}"),
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({ "word": word, "representative": rep })
                        ),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    match format {
                        Format::Text => println!("unknown"),
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({ "word": word, "representative": null })
                        ),
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}

fn run_check(format: Format, cmd: CheckCmd) -> Result<ExitCode, Error> {
    match cmd {
        CheckCmd::Axioms {
            order,
            trials,
            seed,
            mean_len,
            max_len,
        } => {
            let spec = load_order(&order.order)?;
            let sampler = WordSampler {
                rank: spec.rank(),
                mean_len,
                max_len,
            };
            let started = std::time::Instant::now();
            let mut report =
                harness::verify_axioms(&spec, &sampler, trials, seed, ExecMode::auto())?;
            // Embed the order so the report replays standalone.
            report.params = serde_json::json!({
                "order": config::order_to_json(&spec),
                "sampler": sampler,
            });
            if format == Format::Text {
                eprintln!("elapsed: {:?}", started.elapsed());
            }
            Ok(report_exit(format, &report))
        }
        CheckCmd::Convexity {
            spec,
            max_degree,
            coeff_bound,
        } => {
            let s = config::zx_from_json(&read_file(&spec)?)?;
            let mut report = suites::zx_convexity(&s, max_degree, coeff_bound)?;
            let mut params = report.params.clone();
            params["spec"] = config::zx_to_json(&s);
            report.params = params;
            Ok(report_exit(format, &report))
        }
        CheckCmd::Jacobi { max_rank } => {
            let report = suites::jacobi_suite(max_rank)?;
            Ok(report_exit(format, &report))
        }
        CheckCmd::Lemma61 {
            max_exp,
            random,
            seed,
        } => {
            let report = suites::lemma61_suite(max_exp, random, seed)?;
            Ok(report_exit(format, &report))
        }
        CheckCmd::Sandwich {
            order,
            word,
            trials,
            seed,
            coset_powers,
        } => {
            let spec = load_order(&order.order)?;
            let powers: Vec<i64> = coset_powers
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::Config(format!("bad coset power {p:?}: {e}")))
                })
                .collect::<Result<_, _>>()?;
            let g = GroupWord::parse(spec.rank(), &word)?;
            let sampler =
                harness::DerivedSampler::with_coset_powers(spec.rank(), powers);
            let report =
                harness::sandwich_check(&spec, &g, &sampler, trials, seed, ExecMode::auto())?;
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).unwrap())
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
