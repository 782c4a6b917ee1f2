//! The `garside-ybe` command line.
//!
//! Exit status is 0 on success, 1 when a well-formed input is mathematically
//! rejected, and 2 on unreadable or malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::converse::solution_from_presentation;
use crate::enumeration::{classify, enumerate_solutions_capped, render_census, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::format::{
    parse_presentation, parse_solution, write_permutation_solution, write_solution,
    PresentationDoc, SolutionDoc, SolutionSpec,
};
use crate::garside::GarsideMonoid;
use crate::permutation_solution::{quotient, quotient_group_consistency};
use crate::presentation::presentation_of;
use crate::reversing::{canonical_form, reverse, right_lcm_words, word_equal};
use crate::solution::SetSolution;
use crate::word::Word;

/// Environment variable overriding the enumeration size cap.
pub const MAX_N_ENV: &str = "GARSIDE_YBE_MAX_N";

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// JSON, readable back by the same tool.
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "garside-ybe", version, about = "Garside monoids of set-theoretic Yang-Baxter solutions")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check non-degeneracy, involutivity and braidedness.
    Validate {
        file: PathBuf,
        #[arg(long)]
        require_involutive: bool,
    },
    /// Print the presentation of the structure monoid.
    Present { file: PathBuf },
    /// Reverse u^-1 v into (u\v)(v\u)^-1.
    Reverse {
        file: PathBuf,
        #[arg(short, allow_hyphen_values = true)]
        u: String,
        #[arg(short, allow_hyphen_values = true)]
        v: String,
        /// Also draw the reversing grid.
        #[arg(long)]
        diagram: bool,
    },
    /// Right lcm of two words.
    Lcm { file: PathBuf, u: String, v: String },
    /// Decide whether two words are equal in the monoid.
    Wordeq { file: PathBuf, u: String, v: String },
    /// Garside element, simples, exponent and criteria.
    Garside { file: PathBuf },
    /// Δ-purity and the g-orbits.
    Purity { file: PathBuf },
    /// Rebuild a solution from a presentation file.
    Converse { file: PathBuf },
    /// Quotient of a braided permutation solution by the orbits of f∘g.
    Quotient { file: PathBuf },
    /// List all involutive braided solutions on n points.
    Enumerate {
        #[arg(short)]
        n: usize,
        /// Print the census table instead of the solutions.
        #[arg(long)]
        census: bool,
        /// Keep isomorphic copies.
        #[arg(long)]
        all: bool,
    },
}

/// Outcome of a subcommand: text to print and whether the input was accepted.
struct Outcome {
    text: String,
    accepted: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, accepted: true }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.accepted {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

/// Prefixes parse errors with the file name, `path:line:column: message`.
fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => {
            Error::Input(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => other,
    }
}

fn load(path: &Path) -> Result<SolutionSpec> {
    parse_solution(&read(path)?).map_err(|e| located(path, e))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

/// A solution whose monoid is Garside, for commands that compare words.
fn require_garside(sol: &SetSolution) -> Result<()> {
    GarsideMonoid::new(sol).map(|_| ())
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ReverseDoc {
    pub u_under_v: Word,
    pub v_under_u: Word,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<crate::reversing::ReversingGrid>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct LcmDoc {
    pub lcm: Word,
    pub canonical: Word,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct WordEqDoc {
    pub equal: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct PurityDoc {
    pub delta_pure: bool,
    pub orbits: Vec<Vec<usize>>,
    pub delta_sub: Vec<Word>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct QuotientDoc {
    pub solution: SolutionDoc,
    /// 1-based members of each class; class `k` is generator `k` of the quotient.
    pub classes: Vec<Vec<usize>>,
    pub relations: Vec<String>,
    /// `x y = x' y` relation chains, one line per pair of merged points.
    pub witnesses: Vec<String>,
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let machine = cli.format == OutputFormat::Machine;
    match &cli.command {
        Command::Validate {
            file,
            require_involutive,
        } => {
            let report = load(file)?.solution().validate(*require_involutive);
            let text = if machine { json(&report) } else { report.to_string() };
            Ok(Outcome {
                text,
                accepted: report.ok(),
            })
        }
        Command::Present { file } => {
            let p = presentation_of(&load(file)?.solution());
            Ok(Outcome::ok(if machine {
                json(&PresentationDoc::from_presentation(&p))
            } else {
                p.to_string()
            }))
        }
        Command::Reverse { file, u, v, diagram } => {
            let sol = load(file)?.solution();
            let (u, v) = (Word::parse(u, sol.n())?, Word::parse(v, sol.n())?);
            let r = reverse(&sol, &u, &v);
            if machine {
                return Ok(Outcome::ok(json(&ReverseDoc {
                    u_under_v: r.u_under_v,
                    v_under_u: r.v_under_u,
                    grid: diagram.then_some(r.grid),
                })));
            }
            let mut text = format!("u\\v: {}\nv\\u: {}\n", r.u_under_v, r.v_under_u);
            if *diagram {
                text.push('\n');
                text.push_str(&r.grid.render());
            }
            Ok(Outcome::ok(text))
        }
        Command::Lcm { file, u, v } => {
            let sol = load(file)?.solution();
            require_garside(&sol)?;
            let (u, v) = (Word::parse(u, sol.n())?, Word::parse(v, sol.n())?);
            let lcm = right_lcm_words(&sol, &u, &v);
            let canonical = canonical_form(&sol, &lcm);
            Ok(Outcome::ok(if machine {
                json(&LcmDoc { lcm, canonical })
            } else {
                format!("{lcm}\n")
            }))
        }
        Command::Wordeq { file, u, v } => {
            let sol = load(file)?.solution();
            require_garside(&sol)?;
            let (u, v) = (Word::parse(u, sol.n())?, Word::parse(v, sol.n())?);
            let equal = word_equal(&sol, &u, &v);
            Ok(Outcome::ok(if machine {
                json(&WordEqDoc { equal })
            } else {
                format!("{equal}\n")
            }))
        }
        Command::Garside { file } => {
            let sol = load(file)?.solution();
            let report = GarsideMonoid::new(&sol)?.report()?;
            Ok(Outcome::ok(if machine { json(&report) } else { report.to_string() }))
        }
        Command::Purity { file } => {
            let sol = load(file)?.solution();
            let m = GarsideMonoid::new(&sol)?;
            let doc = PurityDoc {
                delta_pure: m.is_delta_pure()?,
                orbits: sol
                    .g_orbits()
                    .into_iter()
                    .map(|o| o.into_iter().map(|x| x + 1).collect())
                    .collect(),
                delta_sub: m.delta_subs(),
            };
            if machine {
                return Ok(Outcome::ok(json(&doc)));
            }
            let mut text = format!("delta_pure: {}\n", doc.delta_pure);
            for o in &doc.orbits {
                let xs: Vec<String> = o.iter().map(|x| format!("x{x}")).collect();
                text.push_str(&format!("orbit: {}\n", xs.join(" ")));
            }
            for (x, d) in doc.delta_sub.iter().enumerate() {
                text.push_str(&format!("delta_x{}: {d}\n", x + 1));
            }
            Ok(Outcome::ok(text))
        }
        Command::Converse { file } => {
            let p = parse_presentation(&read(file)?).map_err(|e| located(file, e))?;
            let sol = solution_from_presentation(&p)?;
            Ok(Outcome::ok(if machine {
                json(&SolutionDoc::from_solution(&sol))
            } else {
                write_solution(&sol)
            }))
        }
        Command::Quotient { file } => {
            let spec = load(file)?;
            let ps = spec.as_permutation().ok_or_else(|| {
                Error::Precondition("quotient needs a permutation solution (all g_i equal, all f_j equal)".into())
            })?;
            let q = quotient(&ps)?;
            let report = quotient_group_consistency(&ps)?;
            let label = |c: usize| q.label(c);
            let relations: Vec<String> = presentation_of(&q.solution.lift())
                .relations()
                .iter()
                .map(|r| r.render_with(&label))
                .collect();
            let witnesses: Vec<String> = report
                .witnesses
                .iter()
                .flat_map(|(_, _, steps)| steps)
                .map(|w| {
                    let chain: Vec<String> = w
                        .chain
                        .iter()
                        .map(|&(a, b)| format!("x{} x{}", a + 1, b + 1))
                        .collect();
                    chain.join(" = ")
                })
                .collect();
            let doc = QuotientDoc {
                solution: SolutionDoc::from_permutation(&q.solution),
                classes: q
                    .classes
                    .iter()
                    .map(|c| c.iter().map(|x| x + 1).collect())
                    .collect(),
                relations,
                witnesses,
            };
            if machine {
                return Ok(Outcome::ok(json(&doc)));
            }
            let mut text = write_permutation_solution(&q.solution);
            for (k, members) in q.classes.iter().enumerate() {
                let xs: Vec<String> = members.iter().map(|x| format!("x{}", x + 1)).collect();
                text.push_str(&format!("# class {} = {}: {}\n", k + 1, q.label(k), xs.join(" ")));
            }
            for r in &doc.relations {
                text.push_str(&format!("# relation {r}\n"));
            }
            for w in &doc.witnesses {
                text.push_str(&format!("# witness {w}\n"));
            }
            Ok(Outcome::ok(text))
        }
        Command::Enumerate { n, census, all } => {
            let cap = max_n_from_env()?;
            let sols = enumerate_solutions_capped(*n, !*all, cap)?;
            if *census {
                let rows = classify(&sols)?;
                return Ok(Outcome::ok(if machine { json(&rows) } else { render_census(&rows) }));
            }
            if machine {
                let docs: Vec<SolutionDoc> = sols.iter().map(SolutionDoc::from_solution).collect();
                return Ok(Outcome::ok(json(&docs)));
            }
            let mut text = String::new();
            for (k, sol) in sols.iter().enumerate() {
                if k > 0 {
                    text.push('\n');
                }
                text.push_str(&format!("# solution {}\n", k + 1));
                text.push_str(&write_solution(sol));
            }
            Ok(Outcome::ok(text))
        }
    }
}

fn max_n_from_env() -> Result<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{MAX_N_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}
