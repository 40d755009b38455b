//! `total9` — total coloring, configuration matching, recoloring scripts,
//! and exact discharging audits for plane rotation-system graphs.
//!
//! Exit status: 0 for an affirmative answer (proper, solved, found,
//! extended, all checks passed), 1 for a negative answer (improper, no
//! coloring, nothing found, a play missed, failures in a run), 2 for
//! unusable input (bad files, bad flags).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use total9_core::coloring::{self, TotalColoring};
use total9_core::discharging;
use total9_core::extension;
use total9_core::patterns::{self, WitnessKind};
use total9_core::PlanarEmbedding;
use total9_toolkit::corpus;
use total9_toolkit::format;
use total9_toolkit::generate::{generate_planar, GeneratorConfig};

#[derive(Parser)]
#[command(name = "total9", version, about = "total coloring laboratory for plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Embedding file (`V E` header, then one clockwise rotation per line).
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check a coloring file against a graph; exit 0 when proper and total.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        /// Coloring file (palette header, then `v <id> <c>` / `e <u> <v> <c>`).
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Find a proper total coloring with the given palette; exit 1 if none.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        /// Palette size `k`; colors are `1..=k`.
        #[arg(long)]
        colors: u8,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact total chromatic number.
    Chromatic {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Look for a 4-fan (a hub joined to all five vertices of a path);
    /// exit 0 with the witness when present, 1 when absent.
    Fan4 {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// List occurrences of one catalog configuration; exit 1 when none.
    Match {
        #[command(flatten)]
        graph: GraphArg,
        /// Catalog id, e.g. `cfg:4a` or `lem:8-two-diamonds`.
        #[arg(long)]
        pattern: String,
        /// Restrict to one variant of the pattern.
        #[arg(long)]
        variant: Option<String>,
    },
    /// List every structure that cannot occur in a minimal counterexample;
    /// exit 0 when something is found, 1 when the graph is clean.
    Violations {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Exact-fraction charge audit: totals, negative bearers, excuses.
    Discharge {
        #[command(flatten)]
        graph: GraphArg,
        /// Write the machine-readable transfer log here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Reduce at the first occurrence of a lemma's structure and extend a
    /// coloring of the reduced graph back over the whole graph.
    Extend {
        #[command(flatten)]
        graph: GraphArg,
        /// Script id, e.g. `lem:8-two-diamonds` or `cfg:4c`.
        #[arg(long)]
        lemma: String,
        /// Coloring of the reduced graph to start from (otherwise solved).
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Write the final coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the move log here instead of stdout.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Generate a seeded random plane embedding.
    Gen {
        /// Vertex count before deletions (at least 3).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree cap enforced by repair deletions.
        #[arg(long, default_value_t = 8)]
        cap: usize,
        /// Keep 4-fans instead of repairing them away.
        #[arg(long)]
        allow_fan4: bool,
        /// Deletion probability for each non-bridge edge, as `num/den`.
        #[arg(long, default_value = "1/6", value_parser = parse_ratio)]
        del: (u32, u32),
        /// Write the embedding here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the committed corpus and audit a generated population;
    /// byte-identical output for identical seeds.
    CorpusRun {
        /// Directory with `manifest.txt` and the committed `.rot` files.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How many graphs to generate and audit.
        #[arg(long, default_value_t = 25)]
        count: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operations on the configuration catalog.
    Patterns {
        #[command(subcommand)]
        what: PatternsCommand,
    },
}

#[derive(Subcommand)]
enum PatternsCommand {
    /// Print every catalog pattern: vertices, bounds, edges, faces.
    List,
}

fn parse_ratio(s: &str) -> Result<(u32, u32), String> {
    let Some((num, den)) = s.split_once('/') else {
        return Err(format!("`{}` is not of the form num/den", s));
    };
    let num: u32 = num.parse().map_err(|_| format!("bad numerator `{}`", num))?;
    let den: u32 = den.parse().map_err(|_| format!("bad denominator `{}`", den))?;
    if den == 0 {
        return Err("denominator must be nonzero".to_string());
    }
    Ok((num, den))
}

/// An input problem: reported on stderr, exit status 2.
struct InputError(String);

type CliResult = Result<ExitCode, InputError>;

fn load_graph(path: &Path) -> Result<PlanarEmbedding, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))?;
    format::parse_embedding(&text)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn load_coloring(path: &Path) -> Result<TotalColoring, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))?;
    format::parse_coloring(&text)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

/// Write to the given file, or print to stdout when no path was given.
fn emit(out: Option<&Path>, text: &str) -> Result<(), InputError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| InputError(format!("{}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Verify { graph, coloring } => {
            let g = load_graph(&graph.graph)?;
            let phi = load_coloring(&coloring)?;
            let violations = coloring::verify_total_coloring(&g, &phi);
            if violations.is_empty() {
                println!("proper total {}-coloring", phi.palette());
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    println!("{}", v);
                }
                println!("{} violations", violations.len());
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Solve { graph, colors, out } => {
            let g = load_graph(&graph.graph)?;
            match coloring::solve(&g, colors) {
                Some(phi) => {
                    emit(out.as_deref(), &format::serialize_coloring(&phi))?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("no total {}-coloring", colors);
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Chromatic { graph } => {
            let g = load_graph(&graph.graph)?;
            match coloring::total_chromatic_number(&g) {
                Ok(k) => {
                    println!("{}", k);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Err(InputError(e.to_string())),
            }
        }
        Command::Fan4 { graph } => {
            let g = load_graph(&graph.graph)?;
            match patterns::contains_four_fan(&g) {
                Some(w) => {
                    println!(
                        "4-fan: hub v{} path v{} v{} v{} v{} v{}",
                        w.hub, w.path[0], w.path[1], w.path[2], w.path[3], w.path[4]
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("no 4-fan");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Match { graph, pattern, variant } => {
            let g = load_graph(&graph.graph)?;
            let catalog = patterns::catalog();
            let chosen: Vec<_> = catalog
                .iter()
                .filter(|p| p.id == pattern)
                .filter(|p| variant.as_deref().is_none_or(|v| p.variant == v))
                .collect();
            if chosen.is_empty() {
                return Err(InputError(format!("no catalog pattern `{}`", pattern)));
            }
            let mut found = 0usize;
            for p in chosen {
                for w in patterns::match_configuration(p, &g) {
                    found += 1;
                    print!("{}", p.id);
                    if !p.variant.is_empty() {
                        print!(" [{}]", p.variant);
                    }
                    for (i, pv) in p.vertices.iter().enumerate() {
                        print!(" {}=v{}", pv.name, w.map[i]);
                    }
                    println!();
                }
            }
            if found == 0 {
                println!("no occurrence");
                Ok(ExitCode::FAILURE)
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Violations { graph } => {
            let g = load_graph(&graph.graph)?;
            let violations = patterns::structural_violations(&g);
            if violations.is_empty() {
                println!("structurally clean");
                Ok(ExitCode::FAILURE)
            } else {
                for v in &violations {
                    println!("{}", v);
                }
                println!("{} violations", violations.len());
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Discharge { graph, log } => {
            let g = load_graph(&graph.graph)?;
            let report = discharging::audit(&g);
            println!(
                "graph: V={} E={} F={} max-degree={}",
                g.num_vertices(),
                g.num_edges(),
                g.num_faces(),
                g.max_degree()
            );
            if report.out_of_regime {
                println!("out of regime: maximum degree exceeds 8");
            }
            println!("initial total: {}", report.initial.total());
            println!("final total:   {}", report.final_.total());
            println!("transfers: {}", report.log.entries.len());
            println!("negative bearers: {}", report.negative.len());
            for (b, c) in &report.negative {
                println!("  {}: {}", b, c);
            }
            println!("structural violations: {}", report.violations.len());
            for v in &report.violations {
                println!("  {}", v);
            }
            if let Some(path) = log {
                let mut text = String::new();
                for t in &report.log.entries {
                    text.push_str(&format!("{}\n", t));
                }
                emit(Some(&path), &text)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend { graph, lemma, coloring, out, log } => {
            let g = load_graph(&graph.graph)?;
            let supplied = coloring.as_deref().map(load_coloring).transpose()?;
            let occurrence = patterns::structural_violations(&g)
                .into_iter()
                .find(|v| v.lemma == lemma);
            let Some(occurrence) = occurrence else {
                println!("no occurrence of `{}`", lemma);
                return Ok(ExitCode::FAILURE);
            };
            describe_witness(&occurrence.witness);
            match extension::reduce_and_extend(&g, &lemma, &occurrence.witness, 9, supplied.as_ref())
            {
                Ok(done) => {
                    let mut log_text = format!(
                        "# script {} branch: {}\n",
                        done.log.lemma, done.log.branch
                    );
                    log_text.push_str(&format::serialize_move_log(&done.log.moves));
                    emit(log.as_deref(), &log_text)?;
                    emit(out.as_deref(), &format::serialize_coloring(&done.coloring))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ extension::ExtensionError::ScriptCaseMiss { .. }) => {
                    println!("{}", e);
                    Ok(ExitCode::FAILURE)
                }
                Err(e) => Err(InputError(e.to_string())),
            }
        }
        Command::Gen { n, seed, cap, allow_fan4, del, out } => {
            let cfg = GeneratorConfig {
                n,
                max_degree: cap,
                forbid_four_fan: !allow_fan4,
                deletion: del,
                seed,
            };
            match generate_planar(&cfg) {
                Ok(g) => {
                    emit(out.as_deref(), &format::serialize_embedding(&g))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{}", e);
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::CorpusRun { dir, seed, count, out } => {
            let outcome = corpus::corpus_run(dir.as_deref(), seed, count);
            emit(out.as_deref(), &outcome.report)?;
            Ok(if outcome.clean { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Patterns { what: PatternsCommand::List } => {
            for p in patterns::catalog() {
                print!("{}", p.id);
                if !p.variant.is_empty() {
                    print!(" [{}]", p.variant);
                }
                println!();
                for pv in &p.vertices {
                    let bound = match pv.bound {
                        patterns::DegreeBound::Exact(d) => format!("exact {}", d),
                        patterns::DegreeBound::AtLeast(d) => format!("min {}", d),
                    };
                    println!("  vertex {} ({})", pv.name, bound);
                }
                for &(a, b) in &p.edges {
                    println!("  edge {}-{}", p.vertices[a].name, p.vertices[b].name);
                }
                for f in &p.faces {
                    match *f {
                        patterns::FaceConstraint::Triangle(a, b, c) => println!(
                            "  3-face {}-{}-{}",
                            p.vertices[a].name, p.vertices[b].name, p.vertices[c].name
                        ),
                        patterns::FaceConstraint::Quad(a, b, c, d) => println!(
                            "  4-face {}-{}-{}-{}",
                            p.vertices[a].name,
                            p.vertices[b].name,
                            p.vertices[c].name,
                            p.vertices[d].name
                        ),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn describe_witness(w: &WitnessKind) {
    match w {
        WitnessKind::Vertex(v) => println!("# occurrence: vertex v{}", v),
        WitnessKind::Edge(u, v) => println!("# occurrence: edge e{}-{}", u, v),
        WitnessKind::Configuration(m) => {
            print!("# occurrence: vertices");
            for &h in &m.map {
                print!(" v{}", h);
            }
            println!();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
