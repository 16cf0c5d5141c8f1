//! The `flowinv` command line.
//!
//! Exit codes: 0 success, 1 invalid model or non-isomorphic inputs, 2 parse
//! error or unreadable file, 64 usage error.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::canon::canonical_form;
use crate::dot::{export_dot, DotView};
use crate::enumerate::{enumerate_pairs_seeded, EnumBounds};
use crate::io::{
    parse_model, parse_multigraph, serialize_model, serialize_model_compact, ParseError,
};
use crate::iso::{pair_isomorphic, IsoMode};
use crate::pair::{classify_separation, InvariantPair};
use crate::surface::{realize_multigraph, reconstruct};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "flowinv",
    version,
    about = "Invariants of non-wandering surface flows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Graph,
    Diagram,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a model file.
    Validate { file: PathBuf },
    /// Print the canonical form of a model.
    Canon {
        file: PathBuf,
        #[arg(long)]
        reverse_allowed: bool,
    },
    /// Decide whether two models are equivalent.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        reverse_allowed: bool,
    },
    /// Separation axioms of the orbit spaces.
    Classify { file: PathBuf },
    /// Surface type of each connected component.
    Reconstruct { file: PathBuf },
    /// Build a model whose extended orbit graph is the given multi-graph.
    Realize { graph: PathBuf },
    /// List classes of connected models within bounds.
    Enumerate {
        #[arg(long, default_value_t = 0)]
        max_saddles: usize,
        #[arg(long, default_value_t = 0)]
        max_k_sum: u32,
        #[arg(long, default_value_t = 0)]
        max_centers: usize,
        #[arg(long, default_value_t = 0)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        max_b: usize,
        #[arg(long, default_value_t = 0)]
        max_annuli: usize,
        #[arg(long, default_value_t = 0)]
        max_tori: u32,
        #[arg(long)]
        closed_only: bool,
        #[arg(long)]
        orientable_only: bool,
        #[arg(long)]
        reverse_allowed: bool,
    },
    /// Graphviz rendering of a model.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
    },
}

/// Exit status and captured output of one command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn mode(reverse_allowed: bool) -> IsoMode {
    IsoMode {
        allow_reversal: reverse_allowed,
    }
}

fn load(path: &Path) -> Result<InvariantPair, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}\n", path.display())))?;
    parse_model(&text).map_err(|e| {
        let code = if matches!(e, ParseError::Semantic(_)) {
            EXIT_NEGATIVE
        } else {
            EXIT_PARSE
        };
        Outcome::fail(code, format!("{}: {e}\n", path.display()))
    })
}

/// Runs one command; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    match run(cli.command) {
        Ok(o) | Err(o) => o,
    }
}

fn run(cmd: Command) -> Result<Outcome, Outcome> {
    Ok(match cmd {
        Command::Validate { file } => {
            let p = load(&file)?;
            Outcome::ok(format!(
                "valid: {} saddles, {} vertices, {} annuli, {} tori\n",
                p.diagram.saddles.len(),
                p.vertices.len(),
                p.annuli.len(),
                p.tori
            ))
        }
        Command::Canon {
            file,
            reverse_allowed,
        } => {
            let c = canonical_form(&load(&file)?, mode(reverse_allowed))
                .expect("parsed models are valid");
            Outcome::ok(format!("digest {}\nbytes {}\n", c.digest(), c.hex()))
        }
        Command::Iso {
            a,
            b,
            reverse_allowed,
        } => {
            let (p, q) = (load(&a)?, load(&b)?);
            match pair_isomorphic(&p, &q, mode(reverse_allowed)).expect("parsed models are valid") {
                None => Outcome {
                    code: EXIT_NEGATIVE,
                    stdout: "NO\n".into(),
                    stderr: String::new(),
                },
                Some(w) => {
                    let mut s = format!("YES\nreversed {}\n", w.reversed);
                    for (kind, map) in [
                        ("saddle", &w.saddles),
                        ("separatrix", &w.separatrices),
                        ("vertex", &w.vertices),
                        ("annulus", &w.annuli),
                    ] {
                        for (x, y) in map {
                            writeln!(s, "{kind} {x} -> {y}").unwrap();
                        }
                    }
                    Outcome::ok(s)
                }
            }
        }
        Command::Classify { file } => {
            let r = classify_separation(&load(&file)?).expect("parsed models are valid");
            Outcome::ok(format!(
                "sv_t0={}\nsv_t1={}\nsv_t2={}\nsvex_t1={}\nsvex_t2={}\n",
                r.sv_t0, r.sv_t1, r.sv_t2, r.svex_t1, r.svex_t2
            ))
        }
        Command::Reconstruct { file } => match reconstruct(&load(&file)?) {
            Ok((_, sig)) => Outcome::ok(sig.to_string()),
            Err(e) => Outcome::fail(EXIT_NEGATIVE, format!("{e}\n")),
        },
        Command::Realize { graph } => {
            let text = std::fs::read_to_string(&graph)
                .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}\n", graph.display())))?;
            let g = parse_multigraph(&text)
                .map_err(|e| Outcome::fail(EXIT_PARSE, format!("{}: {e}\n", graph.display())))?;
            match realize_multigraph(&g) {
                Ok(p) => Outcome::ok(serialize_model(&p)),
                Err(e) => Outcome::fail(EXIT_NEGATIVE, format!("{e}\n")),
            }
        }
        Command::Enumerate {
            max_saddles,
            max_k_sum,
            max_centers,
            max_n,
            max_b,
            max_annuli,
            max_tori,
            closed_only,
            orientable_only,
            reverse_allowed,
        } => {
            let b = EnumBounds {
                max_saddles,
                max_k_sum,
                max_centers,
                max_n,
                max_b,
                max_annuli,
                max_tori,
                closed_only,
                orientable_only,
                mode: mode(reverse_allowed),
            };
            let mut s = String::new();
            for (c, p) in enumerate_pairs_seeded(&b, None) {
                writeln!(s, "{}\t{}", c.digest(), serialize_model_compact(&p)).unwrap();
            }
            Outcome::ok(s)
        }
        Command::ExportDot { file, which } => {
            let view = match which {
                Which::Graph => DotView::Graph,
                Which::Diagram => DotView::Diagram,
            };
            Outcome::ok(export_dot(&load(&file)?, view).expect("parsed models are valid"))
        }
    })
}
