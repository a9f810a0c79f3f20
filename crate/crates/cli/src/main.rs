//! `nakayama`: AR-quivers, translates and finite-type checks for m-extended
//! module categories of Nakayama algebras.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nakayama_core::classify::{self, Budgets, FiniteType, Verdict};
use nakayama_core::covering::{cyclic_ar, CoveringOptions};
use nakayama_core::homotopy::{set_seed, DEFAULT_SEED};
use nakayama_core::knitting::{self, to_dot, to_json, ARQuiver, Direction, KnitReport, DEFAULT_BUDGET};
use nakayama_core::literal::{parse_object, print_object};
use nakayama_core::translate::tau_power;
use nakayama_core::{AlgebraDesc, Error, Shape};

const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "nakayama", version, about = "AR-theory of m-extended module categories of Nakayama algebras")]
struct Cli {
    /// Seed for the randomized isomorphism test (decimal or 0x-hex).
    /// NAKAYAMA_SEED takes precedence.
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether m-mod is of finite type.
    Classify {
        #[command(flatten)]
        alg: AlgArgs,
        /// Also decide by knitting and τ-periodicity (linear only).
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = 50_000)]
        budget: usize,
        #[arg(long, default_value_t = 40)]
        orbit_budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Knit the postprojective (forward) or preinjective (backward) component.
    Knit {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, value_enum, default_value_t = Mode::Dimvec)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Apply τ^k (k > 0) or τ⁻^|k| (k < 0) to an object literal.
    Tau {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        object: String,
        #[arg(long, allow_hyphen_values = true)]
        power: i32,
    },
    /// AR-quiver of m-mod for the cyclic algebra with n vertices.
    CyclicAr {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'l')]
        l: usize,
        #[arg(short = 'm')]
        m: usize,
        /// Size of the linear cover (default from n, l, m).
        #[arg(long)]
        cover: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Finite-type grid over ranges of n, l, m for linear algebras.
    Table {
        #[arg(long = "n", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long = "l", value_parser = parse_range)]
        l: RangeInclusive<usize>,
        #[arg(long = "m", value_parser = parse_range)]
        m: RangeInclusive<usize>,
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = 50_000)]
        budget: usize,
        #[arg(long, default_value_t = 40)]
        orbit_budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct AlgArgs {
    #[arg(long, value_enum, default_value_t = ShapeArg::Linear)]
    shape: ShapeArg,
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'l')]
    l: usize,
    #[arg(short = 'm')]
    m: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Linear,
    Cyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dimvec,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Forward,
    Backward,
}

impl AlgArgs {
    fn shape(&self) -> Shape {
        match self.shape {
            ShapeArg::Linear => Shape::Linear,
            ShapeArg::Cyclic => Shape::Cyclic,
        }
    }

    fn desc(&self) -> Result<AlgebraDesc, Error> {
        nakayama_core::algebra::make_algebra(self.shape(), self.n, self.l)
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    }
    .map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    let a: usize = a.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn emit(text: &str, output: Option<&PathBuf>) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render_quiver(q: &ARQuiver, closed: bool, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Dot => to_dot(q),
        Format::Json => to_json(q, closed)? + "\n",
        Format::Text => {
            let mut s = format!(
                "{} m={} nodes={} arrows={} closed={}\n",
                q.alg,
                q.m,
                q.len(),
                q.arrows.len(),
                closed
            );
            for x in &q.nodes {
                let name = match (&x.object, &x.label) {
                    (Some(o), _) => print_object(o)?,
                    (None, Some(l)) => l.clone(),
                    (None, None) => String::new(),
                };
                let mut tags = String::new();
                if x.flags.projective {
                    tags.push_str(" proj");
                }
                if x.flags.injective {
                    tags.push_str(" inj");
                }
                s.push_str(&format!("{:>5} {} {name}{tags}\n", x.id, x.dimvec));
            }
            s
        }
    })
}

fn verdict_word(t: FiniteType) -> &'static str {
    match t {
        FiniteType::Finite => "Finite",
        FiniteType::Infinite => "Infinite",
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Classify { alg, empirical, budget, orbit_budget, format } => {
            let desc = alg.desc()?;
            if alg.m == 0 {
                return Err(Error::Parameter("m must be at least 1".into()).into());
            }
            let cf = classify::closed_form(desc.shape, desc.n, desc.l, alg.m);
            let emp = if empirical { Some(classify::empirical(&desc, alg.m, budget, orbit_budget)?) } else { None };
            match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "algebra": desc,
                        "m": alg.m,
                        "closed_form": cf,
                        "empirical": emp,
                    });
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
                _ => {
                    println!("{}", verdict_word(cf));
                    if let Some(v) = &emp {
                        println!("empirical: {v}");
                    }
                }
            }
            Ok(match emp {
                Some(Verdict::Inconclusive { .. }) => EXIT_INCONCLUSIVE,
                Some(v) if !v.agrees_with(cf) => EXIT_INTERNAL,
                _ => 0,
            })
        }
        Command::Knit { alg, mode, direction, budget, format, output } => {
            let desc = alg.desc()?;
            let dir = match direction {
                Dir::Forward => Direction::Forward,
                Dir::Backward => Direction::Backward,
            };
            let r: KnitReport = match mode {
                Mode::Dimvec => knitting::knit_dimvec(&desc, alg.m, budget, dir)?,
                Mode::Exact => knitting::knit_exact(&desc, alg.m, budget, dir)?,
            };
            emit(&render_quiver(&r.quiver, r.closed, format)?, output.as_ref())?;
            if !r.closed {
                eprintln!("budget of {budget} nodes exhausted; component not closed");
                return Ok(EXIT_INCONCLUSIVE);
            }
            Ok(0)
        }
        Command::Tau { alg, object, power } => {
            let desc = alg.desc()?;
            let x = parse_object(&desc, &object)?;
            let y = tau_power(&x, alg.m, power)?;
            println!("{}", print_object(&y)?);
            Ok(0)
        }
        Command::CyclicAr { n, l, m, cover, budget, format, output } => {
            let r = cyclic_ar(n, l, m, CoveringOptions { d: cover, budget })?;
            emit(&render_quiver(&r.quiver, true, format)?, output.as_ref())?;
            if format == Format::Text {
                let s = &r.stability;
                println!("stable: d={} and d={} give {} and {} nodes", s.d, s.d_alt, s.nodes, s.nodes_alt);
            }
            Ok(0)
        }
        Command::Table { n, l, m, empirical, budget, orbit_budget, format } => {
            if *m.start() == 0 {
                bail!(Error::Parameter("m must be at least 1".into()));
            }
            let budgets = empirical.then_some(Budgets { knit: budget, orbit: orbit_budget });
            let cells = classify::table(n, l, m, budgets)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&cells)?),
                _ => {
                    print!("{}", classify::render_table(&cells));
                    for c in cells.iter().filter(|c| !c.agree) {
                        println!("disagreement at n={} l={} m={}", c.n, c.l, c.m);
                    }
                }
            }
            Ok(if cells.iter().all(|c| c.agree) { 0 } else { EXIT_INTERNAL })
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::KnitInvariant(_) | Error::Internal(_) | Error::Covering(_)) => EXIT_INTERNAL,
        Some(_) => EXIT_USAGE,
        None => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let env_seed = match std::env::var("NAKAYAMA_SEED") {
        Ok(s) => match parse_seed(&s).map_err(|e| anyhow!(e)) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("error: NAKAYAMA_SEED: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        Err(_) => None,
    };
    set_seed(env_seed.or(cli.seed).unwrap_or(DEFAULT_SEED));
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
