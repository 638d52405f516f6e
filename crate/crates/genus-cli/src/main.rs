//! `mingenus`: minimal genus computations for the bundled 4-manifold
//! catalog. Exit codes: 0 exact value, 2 certified interval, 3 unknown
//! manifold, 4 bad coordinates, 1 other errors.

mod output;
mod resolve;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genus_core::catalog::{self, CatalogFile};
use genus_core::genus::{self, GenusError};
use genus_core::lattice::HomologyClass;
use genus_core::profile;
use genus_core::reduction;
use genus_core::bounds;

use output::Format;
use resolve::{resolve_model, ResolveError};

#[derive(Parser)]
#[command(name = "mingenus", version, about = "Minimal genus of second-homology classes in closed 4-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Manifold name (cp2, cp2x1..cp2x3, s2xs2, xn, k3, e2p, enk, ap, zn, bk, vn)
    manifold: String,
    /// Family parameter (twisting n, multiplicity p, fiber-sum length n)
    #[arg(long)]
    n: Option<i64>,
    /// Knot parameter for the knot-surgered elliptic family
    #[arg(long)]
    m: Option<i64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal genus of a class: exact value or certified interval
    Genus {
        #[command(flatten)]
        model: ModelArgs,
        /// Class coordinates in the model basis
        #[arg(allow_negative_numbers = true)]
        coords: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Reduce a class to its canonical orbit representative
    Reduce {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(allow_negative_numbers = true)]
        coords: Vec<i64>,
        /// Print the reduction moves one per line
        #[arg(long)]
        trace: bool,
    },
    /// Enumerate the reflection orbit of a class within a coordinate box
    Orbit {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(allow_negative_numbers = true)]
        coords: Vec<i64>,
        /// Coordinate box bound for the breadth-first enumeration
        #[arg(long, default_value_t = 20)]
        bound: i64,
    },
    /// Lower-bound certificates for a class
    Bounds {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(allow_negative_numbers = true)]
        coords: Vec<i64>,
    },
    /// Genus table over all classes with coordinates in [-range, range]
    Table {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 3)]
        range: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Genus profile (lexicographically minimal allowed-sequence tuple)
    Profile {
        #[command(flatten)]
        model: ModelArgs,
        /// Coordinate bound for the witness search
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Basic classes and invariant values of a model
    Sw {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Validate a catalog file
    Validate {
        /// Path to a catalog file
        path: String,
    },
}

const EXIT_EXACT: u8 = 0;
const EXIT_INTERVAL: u8 = 2;
const EXIT_UNKNOWN_MANIFOLD: u8 = 3;
const EXIT_BAD_COORDS: u8 = 4;
const EXIT_ERROR: u8 = 1;

/// Maximum number of rows `table` will emit.
const TABLE_CAP: u128 = 1_000_000;

fn load_catalog() -> Result<CatalogFile, String> {
    match std::env::var_os("GENUS_CATALOG") {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.to_string_lossy()))?;
            catalog::parse(&text).map_err(|e| format!("{}: {e}", path.to_string_lossy()))
        }
        None => Ok(catalog::builtin_catalog()),
    }
}

fn fail(msg: &str, code: u8) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn class_or_exit(coords: &[i64], rank: usize) -> Result<HomologyClass, ExitCode> {
    if coords.len() != rank {
        Err(fail(
            &format!("expected {rank} coordinates, got {}", coords.len()),
            EXIT_BAD_COORDS,
        ))
    } else {
        Ok(HomologyClass::new(coords.to_vec()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let catalog = match load_catalog() {
        Ok(c) => c,
        Err(e) => return fail(&e, EXIT_ERROR),
    };
    let model_args = |m: &ModelArgs| -> Result<genus_core::catalog::ManifoldModel, ExitCode> {
        resolve_model(&catalog, &m.manifold, m.n, m.m).map_err(|e| match e {
            ResolveError::Unknown(name) => {
                fail(&format!("unknown manifold: {name}"), EXIT_UNKNOWN_MANIFOLD)
            }
            ResolveError::BadParameter(msg) => fail(&msg, EXIT_ERROR),
        })
    };
    match &cli.command {
        Command::Genus { model, coords, format } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            let a = match class_or_exit(coords, m.form.rank()) {
                Ok(a) => a,
                Err(c) => return c,
            };
            match genus::evaluate(&m, &a) {
                Ok(result) => {
                    print!("{}", output::render_genus(&m, &a, &result, (*format).into()));
                    if result.exact {
                        ExitCode::from(EXIT_EXACT)
                    } else {
                        ExitCode::from(EXIT_INTERVAL)
                    }
                }
                Err(GenusError::BadCoordinates { expected, got }) => fail(
                    &format!("expected {expected} coordinates, got {got}"),
                    EXIT_BAD_COORDS,
                ),
                Err(e) => fail(&e.to_string(), EXIT_ERROR),
            }
        }
        Command::Reduce { model, coords, trace } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            let a = match class_or_exit(coords, m.form.rank()) {
                Ok(a) => a,
                Err(c) => return c,
            };
            let sq = match m.form.square(&a) {
                Ok(sq) => sq,
                Err(e) => return fail(&e.to_string(), EXIT_ERROR),
            };
            let reduced = if sq >= 0 {
                reduction::reduce_nonnegative(&a)
            } else {
                reduction::reduce_negative(&a)
            };
            match reduced {
                Ok((canon, t)) => {
                    println!("{}", canon.display());
                    if *trace {
                        print!("{}", t.render());
                    }
                    ExitCode::from(EXIT_EXACT)
                }
                Err(e) => fail(&e.to_string(), EXIT_ERROR),
            }
        }
        Command::Orbit { model, coords, bound } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            let a = match class_or_exit(coords, m.form.rank()) {
                Ok(a) => a,
                Err(c) => return c,
            };
            match reduction::orbit_bfs(&m.form, &m.reflection_spheres, &a, *bound) {
                Ok(orbit) => {
                    for member in &orbit {
                        println!("{}", member.display());
                    }
                    ExitCode::from(EXIT_EXACT)
                }
                Err(e) => fail(&e.to_string(), EXIT_ERROR),
            }
        }
        Command::Bounds { model, coords } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            let a = match class_or_exit(coords, m.form.rank()) {
                Ok(a) => a,
                Err(c) => return c,
            };
            match bounds::adjunction_lower(&m, &a) {
                Ok(c) => println!("adjunction: {} ({})", c.value, c.source),
                Err(e) => println!("adjunction: {e}"),
            }
            if let Some(c) = bounds::characteristic_sphere_obstruction(&m.form, &a) {
                println!("char-sphere: {} ({})", c.value, c.source);
            }
            if let Some(c) = bounds::furuta_char_bound(&m.form, &a) {
                println!("furuta-char: {} ({})", c.value, c.source);
            }
            ExitCode::from(EXIT_EXACT)
        }
        Command::Table { model, range, format } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            if *range < 0 {
                return fail("range must be non-negative", EXIT_ERROR);
            }
            let side = 2 * (*range as u128) + 1;
            if side.pow(m.form.rank() as u32) > TABLE_CAP {
                return fail("table size exceeds the row cap", EXIT_ERROR);
            }
            match output::render_table(&m, *range, (*format).into()) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::from(EXIT_EXACT)
                }
                Err(e) => fail(&e.to_string(), EXIT_ERROR),
            }
        }
        Command::Profile { model, bound, format } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            let mut eval = genus::profile_evaluator(&m);
            match profile::profile_search(&m, *bound, &mut eval) {
                Ok(p) => {
                    print!("{}", output::render_profile(&m, &p, (*format).into()));
                    if p.is_exact() {
                        ExitCode::from(EXIT_EXACT)
                    } else {
                        ExitCode::from(EXIT_INTERVAL)
                    }
                }
                Err(e) => fail(&e.to_string(), EXIT_ERROR),
            }
        }
        Command::Sw { model, format } => {
            let m = match model_args(model) {
                Ok(m) => m,
                Err(c) => return c,
            };
            print!("{}", output::render_sw(&m, (*format).into()));
            ExitCode::from(EXIT_EXACT)
        }
        Command::Validate { path } => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(&format!("cannot read {path}: {e}"), EXIT_ERROR),
            };
            match catalog::parse(&text) {
                Ok(cat) => {
                    println!("ok: {} manifolds", cat.models.len());
                    ExitCode::from(EXIT_EXACT)
                }
                Err(e) => fail(&e.to_string(), EXIT_ERROR),
            }
        }
    }
}
