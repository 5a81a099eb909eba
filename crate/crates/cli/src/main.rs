//! `effectlab` command-line interface.
//!
//! Exit codes: 0 success or property true, 1 property false or LP
//! infeasible, 2 malformed input.

mod input;
mod witness;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use effectlab::classify::classify;
use effectlab::concrete::{closure, validate_system};
use effectlab::dot::to_dot;
use effectlab::enumerate::{canonical_form, enumerate_all, DEFAULT_CAP};
use effectlab::format::{parse_ea, parse_omp, parse_states};
use effectlab::harness::theorem_harness;
use effectlab::rational;
use effectlab::states::{
    jp_algebra_check, jp_state_check, sod_full_check, sod_set_check, two_valued_states,
    unital_full_check, unital_set_check, StatePolytopeQuery, StateSpace,
};
use effectlab::{validate, Verdict};

use input::{FileKind, Input};

#[derive(Parser)]
#[command(
    name = "effectlab",
    version,
    about = "Finite and symbolic effect algebra workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a `.ea` table or `.omp` set system against the axioms.
    Validate {
        file: PathBuf,
        /// Treat the blocks of an `.omp` file as seeds and print their closure.
        #[arg(long)]
        closure: bool,
    },
    /// Decide structural properties, optionally with state-space properties.
    Classify {
        file: PathBuf,
        #[arg(long)]
        with_states: bool,
    },
    /// List two-valued states or solve an exact LP over the state polytope.
    States {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["pin", "minimize", "maximize"])]
        two_valued: bool,
        /// Pin `element=value`; elements by label or index.
        #[arg(long, value_name = "ELEMENT=VALUE")]
        pin: Vec<String>,
        #[arg(long, conflicts_with = "maximize")]
        minimize: Option<String>,
        #[arg(long)]
        maximize: Option<String>,
    },
    /// Check unitality, strong order determination, or the Jauch-Piron property.
    Check {
        property: CheckedProperty,
        file: PathBuf,
        /// Check the states listed in a `.st` file instead of all states.
        #[arg(long, conflicts_with = "full")]
        states: Option<PathBuf>,
        /// Check the full state space (the default).
        #[arg(long)]
        full: bool,
    },
    /// Check every implication theorem on all algebras up to a size.
    Theorems {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// List all effect algebras of a given size up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Also write the listing to this file.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Produce a self-verifying refutation on an infinite construction.
    Witness {
        construction: String,
        op: String,
        /// Candidate element, e.g. `empty`, `X1+X2^X1:3`.
        #[arg(long)]
        candidate: Option<String>,
        /// Orthogonal system for no-supremum: `even`, `odd` or `MODULUS:RESIDUE`.
        #[arg(long)]
        system: Option<String>,
        /// Sample size for checks over points or elements.
        #[arg(long)]
        sample: Option<u64>,
        /// Apply the refuter repeatedly, feeding each witness back in.
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Write the Hasse diagram in DOT syntax.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckedProperty {
    Unital,
    Sod,
    Jp,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn verdict_code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Validate { file, closure } => validate_cmd(file, closure),
        Command::Classify { file, with_states } => {
            let input = Input::load(&file)?;
            let report = classify(&input.alg, with_states);
            print!("{}", report.render_text(&input.alg));
            println!("{}", report.render_kv());
            Ok(0)
        }
        Command::States {
            file,
            two_valued,
            pin,
            minimize,
            maximize,
        } => states_cmd(file, two_valued, pin, minimize, maximize),
        Command::Check {
            property,
            file,
            states,
            full: _,
        } => check_cmd(property, file, states),
        Command::Theorems { max_n } => {
            if !(2..=DEFAULT_CAP).contains(&max_n) {
                bail!("--max-n must lie in 2..={DEFAULT_CAP}");
            }
            let report = theorem_harness(max_n)?;
            print!("{report}");
            Ok(verdict_code(report.is_clean()))
        }
        Command::Enumerate { n, census } => {
            let mut out = String::new();
            for alg in enumerate_all(n)? {
                let kv = classify(&alg, true).render_kv();
                writeln!(out, "{} {kv}", canonical_form(&alg)).unwrap();
            }
            print!("{out}");
            if let Some(path) = census {
                std::fs::write(&path, &out)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Witness {
            construction,
            op,
            candidate,
            system,
            sample,
            iterate,
        } => {
            let text = witness::run(&construction, &op, candidate, system, sample, iterate)?;
            print!("{text}");
            Ok(0)
        }
        Command::ExportDot { file, output } => {
            let input = Input::load(&file)?;
            let dot = to_dot(&input.alg);
            match output {
                Some(path) => {
                    std::fs::write(&path, dot)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{dot}"),
            }
            Ok(0)
        }
    }
}

fn validate_cmd(file: PathBuf, want_closure: bool) -> Result<u8> {
    let text = input::read(&file)?;
    match input::kind(&file, &text) {
        FileKind::Ea => {
            if want_closure {
                bail!("--closure applies to .omp files only");
            }
            let table = parse_ea(&text).with_context(|| file.display().to_string())?;
            match validate(&table) {
                Ok(alg) => {
                    println!("valid effect algebra with {} elements", alg.n());
                    Ok(0)
                }
                Err(violations) => {
                    for v in &violations {
                        println!("violation: {v}");
                    }
                    println!("invalid: {} violations", violations.len());
                    Ok(2)
                }
            }
        }
        FileKind::Omp => {
            let omp = parse_omp(&text).with_context(|| file.display().to_string())?;
            if want_closure {
                let sys = closure(omp.ground, &omp.blocks)?;
                println!("# closure: {} blocks", sys.len());
                print!("{}", input::write_omp(&sys));
                return Ok(0);
            }
            match validate_system(omp.ground, &omp.blocks) {
                Ok(sys) => {
                    sys.to_algebra()?;
                    println!(
                        "valid concrete orthomodular poset: {} blocks over {} points",
                        sys.len(),
                        sys.ground()
                    );
                    Ok(0)
                }
                Err(violations) => {
                    for v in &violations {
                        println!("violation: {v}");
                    }
                    println!("invalid: {} violations", violations.len());
                    Ok(2)
                }
            }
        }
    }
}

fn states_cmd(
    file: PathBuf,
    two_valued: bool,
    pins: Vec<String>,
    minimize: Option<String>,
    maximize: Option<String>,
) -> Result<u8> {
    let input = Input::load(&file)?;
    let alg = &input.alg;
    if two_valued {
        let states = two_valued_states(alg);
        println!("{} two-valued states", states.len());
        for (k, s) in states.iter().enumerate() {
            println!("s{k}: {}", input.show_state(s));
        }
        return Ok(0);
    }
    let mut query = StatePolytopeQuery::new();
    for p in &pins {
        let (e, v) = p
            .split_once('=')
            .with_context(|| format!("pin `{p}` is not ELEMENT=VALUE"))?;
        let e = input.element(e)?;
        let v = rational::parse(v).with_context(|| format!("bad rational in pin `{p}`"))?;
        query = query.pin(e, v);
    }
    let objective = match (&minimize, &maximize) {
        (Some(m), _) => Some(("minimum", input.element(m)?)),
        (_, Some(m)) => Some(("maximum", input.element(m)?)),
        _ => None,
    };
    if let Some((word, e)) = objective {
        query = if word == "minimum" {
            query.minimize(e)
        } else {
            query.maximize(e)
        };
    }
    match StateSpace::new(alg).extremize(&query) {
        None => {
            println!("infeasible");
            Ok(1)
        }
        Some((value, state)) => {
            if let Some((word, e)) = objective {
                println!(
                    "{word} of s({}) = {}",
                    input.name(e),
                    rational::format(&value)
                );
            } else {
                println!("feasible");
            }
            println!("state: {}", input.show_state(&state));
            Ok(0)
        }
    }
}

fn check_cmd(property: CheckedProperty, file: PathBuf, states: Option<PathBuf>) -> Result<u8> {
    let input = Input::load(&file)?;
    let alg = &input.alg;
    let named = match &states {
        Some(path) => {
            let text = input::read(path)?;
            Some(parse_states(&text, alg).with_context(|| path.display().to_string())?)
        }
        None => None,
    };
    let scope = if named.is_some() {
        "given states"
    } else {
        "all states"
    };
    let (key, holds, witness) = match property {
        CheckedProperty::Unital => {
            let v = match &named {
                Some(set) => {
                    unital_set_check(alg, &set.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>())
                }
                None => unital_full_check(alg),
            };
            let w = v.witness().map(|&a| {
                format!(
                    "{} is nonzero but no state among the {scope} gives it value 1",
                    input.name(a)
                )
            });
            ("unital", v.holds(), w)
        }
        CheckedProperty::Sod => {
            let v = match &named {
                Some(set) => {
                    sod_set_check(alg, &set.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>())
                }
                None => sod_full_check(alg),
            };
            let w = v.witness().map(|&(a, b)| {
                format!(
                    "({}, {}): {} is not below {} yet no state among the {scope} has s({})=1>s({})",
                    input.name(a),
                    input.name(b),
                    input.name(a),
                    input.name(b),
                    input.name(a),
                    input.name(b)
                )
            });
            ("sod", v.holds(), w)
        }
        CheckedProperty::Jp => match &named {
            Some(set) => {
                let failure = set
                    .iter()
                    .find_map(|(name, s)| match jp_state_check(alg, s) {
                        Verdict::Holds => None,
                        Verdict::Fails((a, b)) => Some((name.clone(), a, b)),
                    });
                let w = failure.as_ref().map(|(name, a, b)| {
                    format!(
                        "state {name} has s({})=s({})=1 but no common lower bound with value 1",
                        input.name(*a),
                        input.name(*b)
                    )
                });
                ("jp", failure.is_none(), w)
            }
            None => {
                let v = jp_algebra_check(alg);
                let w = v.witness().map(|f| {
                    format!(
                        "state {} has s({})=s({})=1 but no common lower bound with value 1",
                        input.show_state(&f.state),
                        input.name(f.a),
                        input.name(f.b)
                    )
                });
                ("jp", v.holds(), w)
            }
        },
    };
    println!("{key}: {holds} ({scope})");
    if let Some(w) = witness {
        println!("witness: {w}");
    }
    Ok(verdict_code(holds))
}
