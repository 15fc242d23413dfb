//! Command-line front end: parses JSON inputs, runs the computations of
//! `ncalc-core` and renders the resulting reports.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails, 2 when the input is malformed or unusable.

pub mod criteria;
pub mod input;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ncalc_core::braiding::{left_structure_from_braiding, right_structure_from_braiding, BraidingDirection};
use ncalc_core::calculus::mu_splittings;
use ncalc_core::cartan::{cartan_from_fodc, derivations, reconstruct_fodc, CartanPair};
use ncalc_core::duality::{double_dual_map, Side};
use ncalc_core::endo::{end_structures, universal_cartan, universal_splitting};
use ncalc_core::{Algebra, Check, Error, Field, Fodc, UniversalCalculus};
use serde_json::json;

use crate::criteria::Suite;
use crate::input::{Document, InputError};
use crate::output::{ascii, Output, Section};

#[derive(Parser, Debug)]
#[command(name = "ncalc", version, about = "Exact first-order differential calculi and Cartan pairs")]
pub struct Cli {
    /// Working field, `Q` or `Fp:<prime>`; used when the algebra file names none.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for the random generator sets.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra axioms and, optionally, a bimodule, calculus, braiding or Cartan pair.
    Validate {
        algebra: PathBuf,
        #[arg(long)]
        bimodule: Option<PathBuf>,
        #[arg(long)]
        fodc: Option<PathBuf>,
        #[arg(long)]
        braiding: Option<PathBuf>,
        #[arg(long)]
        cartan: Option<PathBuf>,
    },
    /// The universal calculus and its two barred presentations.
    Universal { algebra: PathBuf },
    /// The quotient of the universal calculus by the subbimodule generated by an ideal file.
    Fodc {
        algebra: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Duals of a calculus module, with double-dual verdicts.
    Dual {
        algebra: PathBuf,
        #[arg(long, default_value = "right")]
        side: String,
        /// `universal`, `kaehler` or a calculus file.
        #[arg(long, default_value = "universal")]
        fodc: String,
    },
    /// The Cartan pair dual to a calculus.
    Cartan {
        algebra: PathBuf,
        /// `universal`, `kaehler` or a calculus file.
        #[arg(long, default_value = "universal")]
        fodc: String,
        #[arg(long, default_value = "right")]
        side: String,
    },
    /// Rebuild a calculus from a Cartan pair.
    Reconstruct {
        algebra: PathBuf,
        /// Start from the pair dual to `universal`, `kaehler` or a calculus file.
        #[arg(long, conflicts_with_all = ["cartan", "end0"])]
        fodc: Option<String>,
        /// Start from a Cartan pair file.
        #[arg(long, conflicts_with = "end0")]
        cartan: Option<PathBuf>,
        /// Start from the universal pair on End0(R).
        #[arg(long)]
        end0: bool,
    },
    /// Bimodule structures on End(R), embeddings, and the universal Cartan pair.
    EndStructures { algebra: PathBuf },
    /// The Kaehler calculus of a commutative algebra.
    Kaehler { algebra: PathBuf },
    /// Sections of the multiplication map and the universal splitting.
    Splitting { algebra: PathBuf },
    /// Run the full invariant suite.
    Report { algebra: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidFodc(_)
            | Error::InvalidCartanPair(_)
            | Error::NotIntertwining(_)
            | Error::NotSurjective { .. } => CliError::Check(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let text = match cli.format {
                Format::Human => output.render_human(),
                Format::Json => output.render_json(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{text}");
            }
            if output.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let (kind, msg) = match &e {
                CliError::Input(m) => ("input error", m),
                CliError::Check(m) => ("check failed", m),
            };
            eprintln!("{}", ascii(&format!("{kind}: {msg}")));
            e.exit_code()
        }
    }
}

fn flag_field(cli: &Cli) -> Result<Option<Field>, CliError> {
    cli.field
        .as_deref()
        .map(|s| s.parse::<Field>().map_err(|e| CliError::Input(format!("--field: {e}"))))
        .transpose()
}

fn load_algebra(cli: &Cli, path: &Path) -> Result<Arc<Algebra>, CliError> {
    let a = input::parse_algebra(&Document::read(path)?, flag_field(cli)?)?;
    Ok(Arc::new(a))
}

/// Loads an algebra and rejects it as input when the axioms fail.
fn load_valid_algebra(cli: &Cli, path: &Path) -> Result<Arc<Algebra>, CliError> {
    let a = load_algebra(cli, path)?;
    let report = a.validate();
    if !report.passed() {
        let first = report
            .failures()
            .flat_map(|c| c.violations.first().map(|v| format!("{} at {:?}", c.name, v.at)))
            .next()
            .unwrap_or_default();
        return Err(CliError::Input(format!("{}: invalid algebra: {first}", path.display())));
    }
    Ok(a)
}

fn parse_side(s: &str) -> Result<Side, CliError> {
    s.parse::<Side>().map_err(|e| CliError::Input(format!("--side: {e}")))
}

/// `universal`, `kaehler` or a calculus file.
fn load_fodc(source: &str, u: &UniversalCalculus) -> Result<Fodc, CliError> {
    match source {
        "universal" => Ok(u.fodc().clone()),
        "kaehler" => Ok(u.kaehler()?.fodc),
        path => Ok(input::parse_fodc(&Document::read(Path::new(path))?, u.algebra())?),
    }
}

fn subject(path: &Path, a: &Algebra) -> String {
    format!("{} (dim {}, field {})", path.display(), a.dim(), a.field())
}

fn labels(a: &Algebra) -> serde_json::Value {
    json!(a.labels())
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate {
            algebra,
            bimodule,
            fodc,
            braiding,
            cartan,
        } => validate(cli, algebra, bimodule, fodc, braiding, cartan),
        Command::Universal { algebra } => universal(cli, algebra),
        Command::Fodc { algebra, ideal } => {
            let a = load_valid_algebra(cli, algebra)?;
            let u = UniversalCalculus::new(&a)?;
            let gens = input::parse_generators(&Document::read(ideal)?, &a)?;
            let q = u.quotient(&gens).map_err(|e| match e {
                Error::OutsideKernel { index } => {
                    CliError::Input(format!("{}: gens[{index}] is not in ker mu", ideal.display()))
                }
                other => other.into(),
            })?;
            let mut out = Output::new("fodc", subject(algebra, &a));
            let mut s = Section::new("quotient calculus");
            s.fact("generators", gens.len());
            s.fact("dim relations", q.relations.dim());
            s.fact("dim omega", q.fodc.dim());
            s.report = q.fodc.validate();
            let pi = u.projection_onto(&q.fodc);
            s.report.push(Check::boolean(
                "universal projection recovers the quotient map",
                pi.is_ok_and(|p| p.matrix() == q.projection.matrix()),
            ));
            out.push(s);
            Ok(out)
        }
        Command::Dual { algebra, side, fodc } => {
            let a = load_valid_algebra(cli, algebra)?;
            let side = parse_side(side)?;
            let u = UniversalCalculus::new(&a)?;
            let f = load_fodc(fodc, &u)?;
            let dd = double_dual_map(f.omega(), side)?;
            let mut out = Output::new("dual", subject(algebra, &a));
            let mut s = Section::new(format!("{side} dual of the {fodc} calculus module"));
            s.fact("dim omega", f.dim());
            s.fact("dim dual", dd.first.dim());
            s.fact("dim double dual", dd.second.dim());
            s.fact("torsionless", dd.is_torsionless());
            s.fact("reflexive", dd.is_reflexive());
            s.report = dd.first.pairing_report();
            out.push(s);
            Ok(out)
        }
        Command::Cartan { algebra, fodc, side } => {
            let a = load_valid_algebra(cli, algebra)?;
            let side = parse_side(side)?;
            let u = UniversalCalculus::new(&a)?;
            let f = load_fodc(fodc, &u)?;
            let c = cartan_from_fodc(&f, side)?;
            let mut out = Output::new("cartan", subject(algebra, &a));
            out.push(cartan_section(&format!("{side} Cartan pair of the {fodc} calculus"), &c.pair));
            Ok(out)
        }
        Command::Reconstruct {
            algebra,
            fodc,
            cartan,
            end0,
        } => reconstruct(cli, algebra, fodc.as_deref(), cartan.as_deref(), *end0),
        Command::EndStructures { algebra } => {
            let a = load_valid_algebra(cli, algebra)?;
            let e = end_structures(&a)?;
            let c = universal_cartan(&a)?;
            let mut out = Output::new("end-structures", subject(algebra, &a));
            let mut s = Section::new("End(R) structures");
            s.fact("dim End", a.dim() * a.dim());
            s.fact("dim center", a.center().dim());
            s.report = e.report;
            out.push(s);
            let mut s = Section::new("universal Cartan pair End0^odot");
            s.fact("dim End0", c.module.dim());
            s.report = c.report;
            out.push(s);
            Ok(out)
        }
        Command::Kaehler { algebra } => {
            let a = load_valid_algebra(cli, algebra)?;
            let u = UniversalCalculus::new(&a)?;
            let k = u.kaehler().map_err(|e| match e {
                Error::NotCommutative => CliError::Input(format!(
                    "{}: the Kaehler calculus needs a commutative algebra",
                    algebra.display()
                )),
                other => other.into(),
            })?;
            let der = derivations(&a);
            let c = cartan_from_fodc(&k.fodc, Side::Right)?;
            let mut out = Output::new("kaehler", subject(algebra, &a));
            let mut s = Section::new("Kaehler calculus");
            s.fact("dim omega", k.fodc.dim());
            s.fact("dim derivations", der.dim());
            s.report = k.fodc.validate();
            s.report.push(Check::boolean("bimodule is symmetric", k.fodc.omega().is_symmetric()));
            s.report.push(Check::boolean("Cartan pair image = derivations", c.pair.image() == der));
            out.push(s);
            out.push(cartan_section("Cartan pair of the Kaehler calculus", &c.pair));
            Ok(out)
        }
        Command::Splitting { algebra } => {
            let a = load_valid_algebra(cli, algebra)?;
            let u = UniversalCalculus::new(&a)?;
            let m = mu_splittings(&u)?;
            let mut out = Output::new("splitting", subject(algebra, &a));
            let mut s = Section::new("sections of mu: R(x)R -> R");
            s.fact("bimodule section", m.bimodule.is_some());
            s.fact("left-module section", m.left.is_some());
            s.fact("right-module section", m.right.is_some());
            if let Some(e) = m.separability_idempotent(&u) {
                s.fact("separability idempotent", json!(e.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
            }
            s.report.push(Check::boolean("r -> r(x)1 is a left-module section", m.r_tensor_one));
            s.report.push(Check::boolean("r -> 1(x)r is a right-module section", m.one_tensor_r));
            out.push(s);
            let split = universal_splitting(&a)?;
            let mut s = Section::new("universal splitting of End(R)");
            s.fact("intertwining table", json!(split.table));
            s.report = split.report;
            out.push(s);
            Ok(out)
        }
        Command::Report { algebra } => {
            let a = load_valid_algebra(cli, algebra)?;
            let suite = Suite::new(&a, cli.seed)?;
            let mut out = Output::new("report", subject(algebra, &a));
            let mut s = Section::new("algebra");
            s.fact("basis", labels(&a));
            s.fact("seed", cli.seed);
            s.report = a.validate();
            out.push(s);
            for section in suite.run_all()? {
                out.push(section);
            }
            Ok(out)
        }
    }
}

fn validate(
    cli: &Cli,
    algebra: &Path,
    bimodule: &Option<PathBuf>,
    fodc: &Option<PathBuf>,
    braiding: &Option<PathBuf>,
    cartan: &Option<PathBuf>,
) -> Result<Output, CliError> {
    let a = load_algebra(cli, algebra)?;
    let mut out = Output::new("validate", subject(algebra, &a));
    let mut s = Section::new("algebra axioms");
    s.fact("basis", labels(&a));
    s.report = a.validate();
    let algebra_ok = s.passed();
    out.push(s);
    let extras = bimodule.is_some() || fodc.is_some() || braiding.is_some() || cartan.is_some();
    if !algebra_ok {
        if extras {
            return Err(CliError::Input(format!(
                "{}: invalid algebra; further files were not checked",
                algebra.display()
            )));
        }
        return Ok(out);
    }
    if let Some(p) = bimodule {
        let m = input::parse_bimodule(&Document::read(p)?, &a)?;
        let mut s = Section::new(format!("bimodule {}", p.display()));
        s.fact("dim", m.dim());
        s.report = m.check();
        out.push(s);
    }
    if let Some(p) = fodc {
        let f = input::parse_fodc(&Document::read(p)?, &a)?;
        let mut s = Section::new(format!("calculus {}", p.display()));
        s.fact("dim omega", f.dim());
        s.report = f.validate();
        out.push(s);
    }
    if let Some(p) = braiding {
        let b = input::parse_braiding(&Document::read(p)?, &a)?;
        let (m, report) = match b.direction {
            BraidingDirection::LeftOverFree => left_structure_from_braiding(&a, &b)?,
            BraidingDirection::RightOverFree => right_structure_from_braiding(&a, &b)?,
        };
        let mut s = Section::new(format!("braiding {}", p.display()));
        s.fact("dim free module", m.dim());
        s.report = report;
        out.push(s);
    }
    if let Some(p) = cartan {
        let c = input::parse_cartan(&Document::read(p)?, &a)?;
        out.push(cartan_section(&format!("Cartan pair {}", p.display()), &c));
    }
    Ok(out)
}

fn universal(cli: &Cli, algebra: &Path) -> Result<Output, CliError> {
    let a = load_valid_algebra(cli, algebra)?;
    let suite_free = UniversalCalculus::new(&a)?;
    let mut out = Output::new("universal", subject(algebra, &a));
    let mut s = Section::new("universal calculus on ker mu");
    s.fact("dim ker mu", suite_free.fodc().dim());
    s.report = suite_free.fodc().validate();
    out.push(s);
    let b = suite_free.barred()?;
    let mut s = Section::new("barred presentations");
    s.fact("dim Rbar", b.bar.dim());
    s.report = b.verify(&suite_free);
    let pair = ncalc_core::braiding::check_braiding_pair(&a, &b.gamma, &b.chi)?;
    s.report.extend(pair.report);
    out.push(s);
    Ok(out)
}

fn reconstruct(
    cli: &Cli,
    algebra: &Path,
    fodc: Option<&str>,
    cartan: Option<&Path>,
    end0: bool,
) -> Result<Output, CliError> {
    let a = load_valid_algebra(cli, algebra)?;
    let u = UniversalCalculus::new(&a)?;
    let mut original = None;
    let (label, pair) = if end0 {
        let c = universal_cartan(&a)?;
        (
            "universal pair End0".to_string(),
            CartanPair::new(Side::Right, c.module, c.end0.inclusion())?,
        )
    } else if let Some(p) = cartan {
        (
            format!("Cartan pair {}", p.display()),
            input::parse_cartan(&Document::read(p)?, &a)?,
        )
    } else {
        let source = fodc.unwrap_or("universal");
        let f = load_fodc(source, &u)?;
        let c = cartan_from_fodc(&f, Side::Right)?;
        original = Some(f);
        (format!("Cartan pair of the {source} calculus"), c.pair)
    };
    let r = reconstruct_fodc(&pair)?;
    let mut out = Output::new("reconstruct", subject(algebra, &a));
    let mut s = Section::new(format!("reconstruction from the {label}"));
    s.fact("dim pair", pair.dim());
    s.fact("dim candidate", r.candidate.dim());
    s.fact("dim generated", r.generated.dim());
    s.fact("recovered", r.recovered);
    s.fact("action transpose surjective", r.action_transpose_surjective);
    if let Some(f) = &original {
        let iso = ncalc_core::calculus::fodc_isomorphism(f, &r.candidate)?;
        s.fact("isomorphic to the original calculus", iso.is_some());
    }
    // generation and surjectivity are verdicts, not invariants
    s.report.push(Check::boolean("leibniz", r.report.passed_check("leibniz")));
    s.report.push(Check::boolean("d(1) = 0", r.report.passed_check("d(1) = 0")));
    s.report.push(Check::boolean("generated part is a calculus", r.generated_fodc.is_valid()));
    out.push(s);
    Ok(out)
}

fn cartan_section(title: &str, pair: &CartanPair) -> Section {
    let mut s = Section::new(title);
    s.fact("side", pair.side().to_string());
    s.fact("dim", pair.dim());
    s.report = pair.validate();
    s
}
