use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use sgmindeg::builders::{self, FamilySpec};
use sgmindeg::congruence::{is_rhodes_semisimple, proportionality_flags, rm_irreducible_classes};
use sgmindeg::formats::{self, Format};
use sgmindeg::mindeg::{left_degrees, min_partial_degree, MinDegConfig};
use sgmindeg::oracle::{brute_min_degree, budget_from_env, Mode, OracleOutcome, OracleQuery, ORACLE_CAP};
use sgmindeg::{Error, FiniteSemigroup, Structure};

#[derive(Parser)]
#[command(name = "sgmindeg", version, about = "Minimal faithful degrees of finite semigroups")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Log search progress to standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    /// Input format; `.rees` files are recognized by their header.
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green's structure, Rees coordinates, semisimplicity and irreducible classes.
    Analyze { file: Option<PathBuf> },
    /// Minimal degree by partial maps, per irreducible J-class.
    Mindeg {
        file: Option<PathBuf>,
        /// Also report the opposite semigroup.
        #[arg(long)]
        left: bool,
        /// Settle the total degree with the oracle when theory leaves it open.
        #[arg(long)]
        total: bool,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force embedding search.
    Oracle {
        file: Option<PathBuf>,
        #[arg(long, default_value = "partial")]
        mode: Mode,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Print the generator images found.
        #[arg(long)]
        witness: bool,
    },
    /// Write a semigroup from a standard family as a table.
    Make {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the opposite semigroup instead.
        #[arg(long)]
        opposite: bool,
    },
    /// Compare the theoretical degree with the oracle.
    Check { file: Option<PathBuf> },
}

fn read_input(file: Option<&Path>) -> Result<String> {
    match file {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
            Ok(text)
        }
    }
}

fn load(file: Option<&Path>, format: Option<Format>) -> Result<FiniteSemigroup> {
    let text = read_input(file)?;
    let format = format
        .or_else(|| match file.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("pgen") => Some(Format::Pgen),
            Some("rees") => Some(Format::Rees),
            _ => None,
        })
        .unwrap_or_else(|| formats::detect(&text));
    Ok(formats::parse_semigroup(&text, format)?)
}

fn analyze(s: &FiniteSemigroup) -> String {
    let st = Structure::new(s.clone());
    let g = &st.greens;
    let mut out = String::new();
    let _ = writeln!(out, "order {}", s.size());
    let _ = writeln!(
        out,
        "{} J-classes, {} R-classes, {} L-classes, {} H-classes, {} idempotents",
        g.num_jclasses(),
        g.rclasses.len(),
        g.lclasses.len(),
        g.hclasses.len(),
        g.idempotents.len()
    );
    let verdict = is_rhodes_semisimple(&st);
    let report = rm_irreducible_classes(&st);
    for j in g.top_down() {
        let below: Vec<String> = (0..g.num_jclasses())
            .filter(|&k| g.is_below(k, j))
            .map(|k| k.to_string())
            .collect();
        let _ = writeln!(
            out,
            "J{j}: {} elements, {}, below: [{}]",
            g.jclasses[j].len(),
            if g.regular[j] { "regular" } else { "not regular" },
            below.join(", ")
        );
        let Ok(r) = st.rees(j) else { continue };
        let flags = proportionality_flags(r);
        let _ = writeln!(
            out,
            "  e = {}, |G| = {}, R-classes = {}, L-classes = {}, rm = {}, lm = {}",
            r.e,
            r.group_order(),
            r.a_count,
            r.b_count,
            flags.rm,
            flags.lm
        );
        for row in r.sandwich_rows() {
            let toks: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  | {}", toks.join(" "));
        }
        if let Some(c) = report.get(j) {
            if c.rm_irreducible {
                let _ = writeln!(out, "  RM-irreducible, M_J = {:?}", c.mj);
            } else {
                let _ = writeln!(out, "  RM-reducible");
            }
        }
    }
    let _ = writeln!(out, "rhodes semisimple: {}", verdict.semisimple);
    let _ = writeln!(out, "irreducible classes: {:?}", report.irreducible());
    out
}

fn oracle_query(s: &FiniteSemigroup, mode: Mode, min: Option<usize>, max: Option<usize>) -> OracleQuery {
    let q = OracleQuery::new(s, mode);
    let (lo, hi) = (min.unwrap_or(q.min_n), max.unwrap_or(q.max_n));
    q.degrees(lo, hi).budget(budget_from_env())
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Analyze { file } => Ok(analyze(&load(file.as_deref(), cli.format)?)),
        Command::Mindeg {
            file,
            left,
            total,
            json,
        } => {
            let s = load(file.as_deref(), cli.format)?;
            let config = MinDegConfig {
                resolve_total: total.then(|| (ORACLE_CAP, budget_from_env())),
                ..MinDegConfig::default()
            };
            let report = if left {
                left_degrees(&s, &config)?
            } else {
                min_partial_degree(&s, &config)?
            };
            Ok(if json {
                report.to_json() + "\n"
            } else {
                report.render_text()
            })
        }
        Command::Oracle {
            file,
            mode,
            min_degree,
            max_degree,
            witness,
        } => {
            let s = load(file.as_deref(), cli.format)?;
            match brute_min_degree(&oracle_query(&s, mode, min_degree, max_degree))? {
                OracleOutcome::Found { degree, images } => {
                    let mut out = format!("{degree}\n");
                    if witness {
                        out.push_str(&formats::write_pgen(degree, &images));
                    }
                    Ok(out)
                }
                OracleOutcome::NotFoundUpTo(n) => Err(NotFound(n).into()),
            }
        }
        Command::Make {
            family,
            params,
            output,
            opposite,
        } => {
            let spec = FamilySpec::from_args(&family, &params)?;
            let mut s = builders::build(&spec)?.semigroup;
            if opposite {
                s = s.opposite();
            }
            let text = formats::write_sgt(&s);
            match output {
                Some(p) => {
                    std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Check { file } => {
            let s = load(file.as_deref(), cli.format)?;
            let oracle = brute_min_degree(&oracle_query(&s, Mode::Partial, None, None))?;
            let Some(found) = oracle.degree() else {
                return Err(NotFound(s.size() + 1).into());
            };
            match min_partial_degree(&s, &MinDegConfig::default()) {
                Ok(report) if report.m == found => Ok(format!("theory m = {}, oracle m = {found}: agree\n", report.m)),
                Ok(report) => Err(Disagreement(report.m, found).into()),
                Err(Error::NotRhodesSemisimple { .. }) => Ok(format!("not Rhodes semisimple; oracle m = {found}\n")),
                Err(e) => Err(e.into()),
            }
        }
    }
}

#[derive(Debug)]
struct NotFound(usize);

#[derive(Debug)]
struct Disagreement(usize, usize);

impl std::fmt::Display for NotFound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "no embedding found up to degree {}", self.0)
    }
}

impl std::error::Error for NotFound {}

impl std::fmt::Display for Disagreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "theory gives m = {} but the oracle finds {}", self.0, self.1)
    }
}

impl std::error::Error for Disagreement {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<NotFound>() {
        return 3;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::NotRhodesSemisimple { .. }) => 2,
        Some(Error::Timeout { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            log::LevelFilter::Debug
        } else {
            log::LevelFilter::Warn
        })
        .parse_default_env()
        .init();
    let jobs = cli
        .jobs
        .unwrap_or(0)
        .min(std::thread::available_parallelism().map_or(1, |n| n.get()));
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
        log::warn!("thread pool: {e}");
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::NotRhodesSemisimple { .. }) = e.downcast_ref::<Error>() {
                eprintln!("hint: use `sgmindeg oracle` for semigroups outside the semisimple theory");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
