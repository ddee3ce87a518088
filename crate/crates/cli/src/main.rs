//! Command-line interface: analyze polytope files, detect Cayley
//! structure, compute Seshadri data, verify the order-k equivalence and
//! generate corpus polytopes.
//!
//! Exit codes: 0 on success, 1 on usage/parse/validation errors, 2 when
//! `verify` or `batch` finds a genuine violation (decided equivalence
//! conditions that disagree).

use clap::{Args, Parser, Subcommand, ValueEnum};
use jetspan::cayley::{self, DetectOptions, EmbeddedPolytope, StrictMode};
use jetspan::corpus::{self, CorpusSpec};
use jetspan::format;
use jetspan::linalg::LatticeVector;
use jetspan::polytope::LatticePolytope;
use jetspan::report::{self, AnalysisOptions};
use jetspan::seshadri::{self, SeshadriOptions, VerifyOptions};
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "jetspan", version, about = "Exact analysis of smooth lattice polytopes", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrictModeArg {
    EqualDim,
    Project,
}

impl From<StrictModeArg> for StrictMode {
    fn from(v: StrictModeArg) -> Self {
        match v {
            StrictModeArg::EqualDim => StrictMode::EqualDim,
            StrictModeArg::Project => StrictMode::Project,
        }
    }
}

#[derive(Args, Clone, Debug)]
struct SearchArgs {
    /// Sup-norm bound for the lattice-width direction search.
    #[arg(long, default_value_t = 5)]
    width_bound: u64,
    /// Sup-norm bound for the projections enumerated inside s1.
    #[arg(long, default_value_t = 2)]
    s1_bound: u64,
    /// Interior sample levels per gap in the s1 recursion.
    #[arg(long, default_value_t = 1)]
    s1_levels: u32,
    /// Sup-norm bound for the Cayley direction search.
    #[arg(long, default_value_t = 3)]
    cayley_bound: u64,
    /// Convention for slices of unequal dimension in strictness checks.
    #[arg(long, value_enum, default_value_t = StrictModeArg::EqualDim)]
    strict_mode: StrictModeArg,
}

impl SearchArgs {
    fn seshadri(&self) -> SeshadriOptions {
        SeshadriOptions {
            width_bound: self.width_bound,
            s1_bound: self.s1_bound,
            s1_levels_per_gap: self.s1_levels,
        }
    }

    fn cayley(&self) -> DetectOptions {
        DetectOptions {
            direction_bound: self.cayley_bound,
            strict_mode: self.strict_mode.into(),
        }
    }

    fn verify(&self) -> VerifyOptions {
        VerifyOptions {
            seshadri: self.seshadri(),
            cayley: self.cayley(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: counts, smoothness, jet orders, Cayley detection,
    /// width and s1 bounds.
    Analyze {
        file: PathBuf,
        /// Bound for the generic jet order search (default: longest edge + 1).
        #[arg(long)]
        max_k: Option<u64>,
        /// Highest Cayley order to query (default: longest edge + 1).
        #[arg(long)]
        max_order: Option<u64>,
        /// Also include the five-way equivalence verdict at this order.
        #[arg(long)]
        verify_order: Option<u64>,
        /// Random rational evaluation points for the jet-rank cross-check.
        #[arg(long, default_value_t = 5)]
        oracle_samples: u32,
        /// Seed for all randomized cross-checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Cayley detection at a fixed order.
    Cayley {
        file: PathBuf,
        /// The order s of the sought decomposition.
        #[arg(short = 'k', long = "order")]
        order: u64,
        /// Length of the decomposition minus one (number of projection rows).
        #[arg(short = 'r', long, default_value_t = 1)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Lattice width, s1 lower bound and Seshadri bounds.
    Seshadri {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check the five-way equivalence at order k; exits 2 on violation.
    Verify {
        file: PathBuf,
        /// The order k (default: the minimum edge length).
        #[arg(short = 'k', long = "order")]
        order: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Generate a polytope and print it in the text format.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Run `verify` over every .poly file in a directory (files are
    /// processed concurrently, output is emitted in name order).
    Batch {
        dir: PathBuf,
        /// The order k (default per file: the minimum edge length).
        #[arg(short = 'k', long = "order")]
        order: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum Generator {
    /// The dilated standard simplex k·Δ_n.
    Simplex {
        #[arg(short = 'n', long)]
        dim: usize,
        #[arg(short = 'k', long, default_value_t = 1)]
        dilation: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A box with the given side lengths.
    Box {
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A symmetric cross-polytope with the given per-axis extents.
    Cross {
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The hexagon of the degree-6 del Pezzo surface.
    Delpezzo6 {
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cayley construction over slice polytopes read from files; point
    /// slices may be appended with --point "c1,c2,...".
    Cayley {
        /// The order s.
        #[arg(short = 's', long)]
        order: u64,
        /// Slice polytope files, in corner order.
        #[arg(long)]
        slice: Vec<PathBuf>,
        /// Additional point slices, appended after the file slices.
        #[arg(long)]
        point: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A seeded random smooth Cayley polytope.
    RandomCayley {
        #[arg(short = 'n', long)]
        dim: usize,
        #[arg(short = 'k', long)]
        order: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the full standard corpus as .poly files into a directory.
    Corpus {
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<LatticePolytope, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn name_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Analyze {
            file,
            max_k,
            max_order,
            verify_order,
            oracle_samples,
            seed,
            format,
            search,
        } => {
            let p = load(&file)?;
            let opts = AnalysisOptions {
                max_k,
                cayley_max_order: max_order,
                verify_order,
                seshadri: search.seshadri(),
                cayley: search.cayley(),
                seed,
                oracle_samples,
            };
            let analysis = report::analyze(&p, &opts);
            let name = name_of(&file);
            match format {
                Format::Text => print!("{}", report::analysis_text(&name, &analysis)),
                Format::Records => println!("{}", report::analysis_record(&name, &analysis)),
            }
            Ok(0)
        }
        Command::Cayley {
            file,
            order,
            rank,
            format,
            search,
        } => {
            let p = load(&file)?;
            let opts = search.cayley();
            let d = cayley::detect_general(&p, order, rank, &opts);
            let name = name_of(&file);
            match format {
                Format::Text => match &d {
                    Some(d) => {
                        println!(
                            "{name}: Cayley of order {order}, length {}; {}",
                            d.length(),
                            d.strictness
                        );
                        for (i, s) in d.slices.iter().enumerate() {
                            println!("  slice {i} (dim {}): {s}", s.dim());
                        }
                    }
                    None => println!(
                        "{name}: no Cayley structure of order {order}, length {} (direction bound {})",
                        rank + 1,
                        opts.direction_bound
                    ),
                },
                Format::Records => {
                    let value = match &d {
                        Some(d) => json!({
                            "format_version": report::FORMAT_VERSION,
                            "kind": "cayley",
                            "name": name,
                            "order": order,
                            "found": true,
                            "decomposition": report::decomposition_value(d),
                        }),
                        None => json!({
                            "format_version": report::FORMAT_VERSION,
                            "kind": "cayley",
                            "name": name,
                            "order": order,
                            "found": false,
                        }),
                    };
                    println!("{value}");
                }
            }
            Ok(0)
        }
        Command::Seshadri {
            file,
            format,
            search,
        } => {
            let p = load(&file)?;
            let eps = seshadri::generic_epsilon(&p, &search.seshadri());
            let fixpoints: Option<Vec<u64>> = p.is_smooth().then(|| {
                (0..p.vertex_count())
                    .map(|v| seshadri::fixpoint_epsilon(&p, v).expect("smooth"))
                    .collect()
            });
            let name = name_of(&file);
            match format {
                Format::Text => {
                    println!("polytope        {name}");
                    println!(
                        "width (s2)      {} along {} (bound {}, {})",
                        eps.width.width,
                        eps.width.direction,
                        eps.width.bound,
                        if eps.width.certified { "certified" } else { "not certified" }
                    );
                    println!("s1 lower bound  {} (bound {})", eps.s1.value, eps.s1.bound);
                    println!("s1 witness      {}", eps.s1.witness);
                    match &eps.exact {
                        Some(e) => println!("epsilon generic {e} (exact)"),
                        None => println!("epsilon generic in [{}, {}]", eps.lower, eps.upper),
                    }
                    if let Some(f) = &fixpoints {
                        println!("epsilon fixed   {f:?}");
                    } else {
                        println!("epsilon fixed   n/a (not smooth)");
                    }
                }
                Format::Records => {
                    let value = json!({
                        "format_version": report::FORMAT_VERSION,
                        "kind": "seshadri",
                        "name": name,
                        "epsilon": report::epsilon_value(&eps),
                        "fixpoint_epsilon": fixpoints,
                    });
                    println!("{value}");
                }
            }
            Ok(0)
        }
        Command::Verify {
            file,
            order,
            format,
            search,
        } => {
            let p = load(&file)?;
            let k = order.unwrap_or_else(|| p.min_edge_length());
            let verdict = seshadri::verify_equivalence(&p, k, &search.verify())
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let name = name_of(&file);
            match format {
                Format::Text => print!("{}", report::verdict_text(&name, &verdict)),
                Format::Records => println!("{}", report::verdict_record(&name, &verdict)),
            }
            Ok(if verdict.violation() { 2 } else { 0 })
        }
        Command::Gen { generator } => {
            if let Generator::Corpus { out } = generator {
                std::fs::create_dir_all(&out)
                    .map_err(|e| format!("{}: {e}", out.display()))?;
                for (name, p) in corpus::standard_corpus() {
                    let path = out.join(format!("{name}.poly"));
                    std::fs::write(&path, format::emit(&p))
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                }
                return Ok(0);
            }
            let (p, out) = generate(generator)?;
            let text = format::emit(&p);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Batch {
            dir,
            order,
            format,
            search,
        } => {
            let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| format!("{}: {e}", dir.display()))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "poly"))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(format!("{}: no .poly files", dir.display()));
            }
            let verify_opts = search.verify();
            let results: Vec<(String, Result<(String, bool), String>)> = files
                .par_iter()
                .map(|file| {
                    let name = name_of(file);
                    let outcome = (|| {
                        let p = load(file)?;
                        if let Err(e) = p.smoothness() {
                            return Ok((format!("{name}: skipped ({e})\n"), false));
                        }
                        let k = order.unwrap_or_else(|| p.min_edge_length());
                        let verdict = seshadri::verify_equivalence(&p, k, &verify_opts)
                            .map_err(|e| e.to_string())?;
                        let text = match format {
                            Format::Text => report::verdict_text(&name, &verdict),
                            Format::Records => {
                                format!("{}\n", report::verdict_record(&name, &verdict))
                            }
                        };
                        Ok((text, verdict.violation()))
                    })();
                    (name, outcome)
                })
                .collect();
            let mut violations = 0usize;
            let mut failures = 0usize;
            for (name, outcome) in results {
                match outcome {
                    Ok((text, violated)) => {
                        print!("{text}");
                        if violated {
                            violations += 1;
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {name}: {e}");
                        failures += 1;
                    }
                }
            }
            if format == Format::Text {
                println!(
                    "batch: {} files, {violations} violations, {failures} errors",
                    files.len()
                );
            }
            if violations > 0 {
                Ok(2)
            } else if failures > 0 {
                Ok(1)
            } else {
                Ok(0)
            }
        }
    }
}

fn generate(generator: Generator) -> Result<(LatticePolytope, Option<PathBuf>), String> {
    let build = |spec: &CorpusSpec| corpus::generate(spec).map_err(|e| e.to_string());
    match generator {
        Generator::Simplex { dim, dilation, out } => {
            Ok((build(&CorpusSpec::Simplex { dim, dilation })?, out))
        }
        Generator::Box { sides, out } => Ok((build(&CorpusSpec::Box { sides })?, out)),
        Generator::Cross { radii, out } => {
            let radii = radii.into_iter().map(|r| (r, r)).collect();
            Ok((build(&CorpusSpec::CrossPolytope { radii })?, out))
        }
        Generator::Delpezzo6 { out } => Ok((build(&CorpusSpec::DelPezzo6)?, out)),
        Generator::RandomCayley { dim, order, seed, out } => {
            Ok((build(&CorpusSpec::RandomSmoothCayley { dim, order, seed })?, out))
        }
        Generator::Corpus { .. } => unreachable!("handled by the caller"),
        Generator::Cayley {
            order,
            slice,
            point,
            out,
        } => {
            let mut slices: Vec<EmbeddedPolytope> = Vec::new();
            for path in &slice {
                let p = load(path)?;
                slices.push(EmbeddedPolytope::from_polytope(&p));
            }
            for text in &point {
                let coords: Vec<i64> = text
                    .split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|e| format!("point `{text}`: {e}")))
                    .collect::<Result<_, _>>()?;
                slices.push(EmbeddedPolytope::point(LatticeVector::from_i64(&coords)));
            }
            let p = cayley::construct(&slices, order).map_err(|e| e.to_string())?;
            Ok((p, out))
        }
    }
}
