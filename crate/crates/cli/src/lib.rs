//! Command dispatch for the `pbwtor` binary. [`run`] returns the exit code and
//! both output streams so the commands can be tested in-process.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use pbwtor::bimodule::{self, BimodulePresentation};
use pbwtor::groebner::{groebner_basis, left_syzygies};
use pbwtor::parse::{parse_polynomial_at, parse_vector_at};
use pbwtor::problem::{parse_algebra, parse_problem, ProblemFile};
use pbwtor::resolution::{free_resolution, PresentationForm};
use pbwtor::tor::{dimension_if_finite, render_presentation, tor_k, tor_zero};
use pbwtor::{enveloping, render, AlgebraSpec, Error, ModuleScheme, ModuleVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pbwtor", version, about = "Gröbner bases, resolutions and Tor over PBW algebras")]
struct Cli {
    /// Problem file with an `[algebra]` block and named module blocks.
    #[arg(short, long, global = true, value_name = "PATH")]
    file: Option<PathBuf>,

    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the algebra and print its relations.
    CheckAlgebra,
    /// Multiply two expressions.
    Mul { left: String, right: String },
    /// Normal form of a tuple modulo a module or bimodule.
    Nf {
        #[arg(long)]
        target: String,
        #[arg(long = "in", value_name = "NAME")]
        module: String,
    },
    /// Reduced left Gröbner basis of a module's vectors.
    Gb {
        #[arg(long)]
        module: String,
    },
    /// Left syzygies of a module's vectors.
    Syz {
        #[arg(long)]
        module: String,
    },
    /// Free resolution up to the given depth.
    Resolve {
        #[arg(long)]
        module: String,
        #[arg(long)]
        depth: usize,
    },
    /// Two-sided Gröbner basis of a bimodule's relations.
    Tsgb {
        #[arg(long)]
        bimodule: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// Presentation of Tor_k(M, N).
    Tor {
        #[arg(long)]
        bimodule: String,
        #[arg(long)]
        module: String,
        #[arg(short)]
        k: usize,
        /// Also report the vector-space dimension when it is finite.
        #[arg(long)]
        dim: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Auto,
    Enveloping,
    Closure,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<String, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    pbwtor::par::set_parallel(!cli.sequential);
    let source = cli.file.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
    match dispatch(&cli) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Core(e)) => {
            let code = match &e {
                Error::Parse { .. } => EXIT_USAGE,
                e if e.is_validation() => EXIT_VALIDATION,
                _ => EXIT_CONTRACT,
            };
            let stderr = match &e {
                Error::Parse { .. } => format!("error: {source}:{e}\n"),
                _ => format!("error: {e}\n"),
            };
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn read(cli: &Cli) -> Result<String, Failure> {
    let path = cli.file.as_ref().ok_or_else(|| Failure::Usage("a problem file is required (--file PATH)".into()))?;
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(cli: &Cli) -> Result<ProblemFile, Failure> {
    Ok(parse_problem(&read(cli)?)?)
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::CheckAlgebra => {
            let (alg, mo) = parse_algebra(&read(cli)?)?;
            Ok(describe_algebra(&alg, mo.scheme))
        }
        Command::Mul { left, right } => {
            let p = load(cli)?;
            let alg = &p.algebra;
            let f = parse_polynomial_at(left, alg, &p.definitions, 1, 1).map_err(|e| arg_error("left", e))?;
            let g = parse_polynomial_at(right, alg, &p.definitions, 1, 1).map_err(|e| arg_error("right", e))?;
            Ok(format!("{}\n", alg.render(&alg.mul(&f, &g))))
        }
        Command::Nf { target, module } => {
            let p = load(cli)?;
            let alg = &p.algebra;
            let (rank, basis) = if let Some(b) = p.bimodule(module) {
                (b.ambient, two_sided(&p, module, RouteArg::Auto)?.basis)
            } else if let Some(m) = p.module(module) {
                (m.ambient, groebner_basis(alg, &p.module_order, m.ambient, &m.vectors)?.elements().to_vec())
            } else {
                return Err(unknown(module));
            };
            let v = parse_vector_at(target, alg, &p.definitions, Some(rank), 1, 1).map_err(|e| arg_error("target", e))?;
            let rec = pbwtor::normal_form(alg, &p.module_order, &v, &basis)?;
            let mut out = String::new();
            writeln!(out, "remainder: {}", render::vector(&rec.remainder, alg.names())).unwrap();
            writeln!(out, "member: {}", rec.remainder.is_zero()).unwrap();
            Ok(out)
        }
        Command::Gb { module } => {
            let p = load(cli)?;
            let m = p.module(module).ok_or_else(|| unknown(module))?;
            let gb = groebner_basis(&p.algebra, &p.module_order, m.ambient, &m.vectors)?;
            let mut out = format!("rank: {}\nbasis:\n", m.ambient);
            push_rows(&mut out, gb.elements(), &p.algebra);
            Ok(out)
        }
        Command::Syz { module } => {
            let p = load(cli)?;
            let m = p.module(module).ok_or_else(|| unknown(module))?;
            let syz = left_syzygies(&p.algebra, &p.module_order, m.ambient, &m.vectors)?;
            let mut out = format!("rank: {}\nsyzygies:\n", m.vectors.len());
            push_rows(&mut out, &syz.generators, &p.algebra);
            Ok(out)
        }
        Command::Resolve { module, depth } => {
            if *depth == 0 {
                return Err(Failure::Usage("--depth must be at least 1".into()));
            }
            let p = load(cli)?;
            let m = p.module(module).ok_or_else(|| unknown(module))?;
            let res = free_resolution(&p.algebra, &p.module_order, &m.presentation(), *depth)?;
            let mut out = String::new();
            let form = match res.form {
                PresentationForm::Generators => "generators",
                PresentationForm::Cokernel => "cokernel",
            };
            writeln!(out, "form: {form}").unwrap();
            let ranks: Vec<String> = res.ranks().iter().map(usize::to_string).collect();
            writeln!(out, "ranks: {}", ranks.join(" ")).unwrap();
            writeln!(out, "complete: {}", res.is_complete()).unwrap();
            for (k, d) in res.differentials().iter().enumerate() {
                writeln!(out, "d_{}: {} x {}", k + 1, d.nrows(), d.ncols()).unwrap();
                push_rows(&mut out, d.rows(), &p.algebra);
            }
            Ok(out)
        }
        Command::Tsgb { bimodule, route } => {
            let p = load(cli)?;
            let mp = two_sided(&p, bimodule, *route)?;
            let route = match mp.route {
                bimodule::Route::Central => "central",
                bimodule::Route::Enveloping => "enveloping",
                bimodule::Route::Closure => "closure",
            };
            let mut out = format!("ambient: {}\nroute: {route}\nbasis:\n", mp.ambient);
            push_rows(&mut out, &mp.basis, &p.algebra);
            Ok(out)
        }
        Command::Tor { bimodule, module, k, dim } => {
            let p = load(cli)?;
            let n = p.module(module).ok_or_else(|| unknown(module))?;
            let mp = two_sided(&p, bimodule, RouteArg::Auto)?;
            let (alg, mo) = (&p.algebra, &p.module_order);
            let nres = free_resolution(alg, mo, &n.presentation(), *k + 1)?;
            let mut q = if *k == 0 { tor_zero(alg, mo, &mp, &nres)? } else { tor_k(alg, mo, &mp, &nres, *k)? };
            if *dim {
                q.dimension = dimension_if_finite(alg, mo, &q)?;
            }
            let verdict = if q.is_zero { "= 0" } else { "!= 0" };
            Ok(format!("Tor_{k}({bimodule},{module}) {verdict}\n{}", render_presentation(&q, alg.names())))
        }
    }
}

fn two_sided(p: &ProblemFile, name: &str, route: RouteArg) -> Result<BimodulePresentation, Failure> {
    let b = p.bimodule(name).ok_or_else(|| unknown(name))?;
    let (alg, mo) = (&p.algebra, &p.module_order);
    let mp = match route {
        RouteArg::Auto => bimodule::two_sided_basis(alg, mo, b.ambient, &b.generators, b.centralizing)?,
        RouteArg::Enveloping => {
            let env = enveloping(alg)?;
            bimodule::two_sided_gb_enveloping(alg, mo, &env, b.ambient, &b.generators, b.centralizing)?
        }
        RouteArg::Closure => bimodule::two_sided_gb_closure(alg, mo, b.ambient, &b.generators, b.centralizing)?,
    };
    Ok(mp)
}

fn unknown(name: &str) -> Failure {
    Failure::Usage(format!("no block named `{name}` of the required kind"))
}

fn arg_error(which: &str, e: Error) -> Failure {
    match e {
        Error::Parse { line: _, col, msg } => Failure::Usage(format!("{which} argument, column {col}: {msg}")),
        other => Failure::Core(other),
    }
}

fn push_rows(out: &mut String, rows: &[ModuleVector], alg: &AlgebraSpec) {
    for r in rows {
        writeln!(out, "  {}", render::vector(r, alg.names())).unwrap();
    }
}

fn describe_algebra(alg: &AlgebraSpec, scheme: ModuleScheme) -> String {
    let mut out = String::from("algebra: valid\n");
    writeln!(out, "variables: {}", alg.names().join(", ")).unwrap();
    let weights: Vec<String> = alg.order().weights().iter().map(u32::to_string).collect();
    writeln!(out, "weights: {}", weights.join(", ")).unwrap();
    let prec: Vec<&str> = alg.order().precedence().iter().map(|&i| alg.names()[i].as_str()).collect();
    writeln!(out, "tiebreak: {}", prec.join(" > ")).unwrap();
    let scheme = match scheme {
        ModuleScheme::TermOverPosition => "top",
        ModuleScheme::PositionOverTerm => "pot",
    };
    writeln!(out, "module order: {scheme}").unwrap();
    writeln!(out, "relations:").unwrap();
    let n = alg.nvars();
    for j in 0..n {
        for i in 0..j {
            writeln!(out, "  {}", alg.render_relation(j, i)).unwrap();
        }
    }
    out
}
