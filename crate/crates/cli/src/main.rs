//! `splitequiv`: build example categories, check their structure, transport
//! functors and certify the equivalence from the command line.
//!
//! Exit codes: 0 success, 2 mathematical failure (the report carries a
//! witness), 3 malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use splitequiv::builders::{self, BuildError, ParInput};
use splitequiv::equivalence::{certify_equivalence, hat, theta_entries, tilde, KernelModule};
use splitequiv::exactlin::{admissibility_violation, orthogonal_idempotents, QMat};
use splitequiv::functors::{
    seeded_family, validate_additive, validate_pointed, AdditiveFunctor, FunctorData, PointedFunctor,
};
use splitequiv::structure::{
    check_assumptions, factorization_properties, verify_twocoends, MRStructure, Setting, StructureError,
};

#[derive(Parser, Debug)]
#[command(name = "splitequiv", version, about = "Finite categories with retractions and the functor equivalence they induce")]
struct Cli {
    /// Print a human-readable summary on standard error.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an example category, write it as JSON and report on its structure.
    Example {
        name: ExampleName,
        /// Size bound of the truncation.
        #[arg(long)]
        size: Option<usize>,
        /// Base category for `par`: `finset`, `fi`, `f2`, or a JSON file.
        #[arg(long)]
        base: Option<String>,
        /// Where to write the category JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a category file and run every structural check.
    Check { category: PathBuf },
    /// Transport a functor across the equivalence.
    Transport {
        direction: Direction,
        category: PathBuf,
        functor: PathBuf,
        /// Where to write the transported functor.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify unit and counit on seeded random functors and their images.
    Certify {
        category: PathBuf,
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest dimension drawn at any object.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the comparison matrix at every object for a zero-preserving functor.
    Theta {
        category: PathBuf,
        functor: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a list of idempotent matrices into complete orthogonal idempotents.
    Idem {
        matrices: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ExampleName {
    DeltaBt,
    FiSharp,
    Cube,
    Pt,
    Par,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    Hat,
    Tilde,
}

enum Failure {
    /// Mathematical failure with its report.
    Math(Value),
    Input(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn write_or_print(out: Option<&Path>, v: &Value) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, render(v)).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{}", render(v));
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("values serialize")
}

fn build_error(e: BuildError) -> Failure {
    Failure::Input(match &e {
        BuildError::MissingPullback { f, m } => format!("{e} (witness: f = {f}, m = {m})"),
        _ => e.to_string(),
    })
}

/// Validation, derived classes, assumptions, factorization properties and
/// coends. The setting is returned when the structure is valid.
fn analyze(structure: MRStructure) -> (Value, bool, Option<Setting>) {
    let s = match Setting::analyze(structure) {
        Ok(s) => s,
        Err(StructureError::Invalid(violations)) => {
            let report = json!({ "valid": false, "violations": violations, "passed": false });
            return (report, false, None);
        }
    };
    let c = s.cat();
    let derived = s.derived();
    let assumptions = check_assumptions(&s);
    let properties = factorization_properties(&s);
    let coends = verify_twocoends(&s);
    let mut passed = assumptions.all_pass();
    let properties = match properties {
        Ok(v) => {
            passed &= v.is_empty();
            json!({ "violations": v })
        }
        Err(e) => {
            passed = false;
            json!({ "error": e.to_string() })
        }
    };
    let coends = match coends {
        Ok(r) => {
            passed &= r.passed();
            let failing: Vec<_> = r.pairs.iter().filter(|p| !p.passed()).collect();
            json!({ "pairs": r.pairs.len(), "passed": r.passed(), "failing": failing })
        }
        Err(e) => {
            passed = false;
            json!({ "error": e.to_string() })
        }
    };
    let labels = |ids: &[splitequiv::MorId]| -> Vec<String> { ids.iter().map(|&f| c.label(f).to_string()).collect() };
    let report = json!({
        "valid": true,
        "objects": c.n_objects(),
        "morphisms": c.n_morphisms(),
        "r_class": derived.r_class,
        "r_labels": labels(&derived.r_class),
        "isomorphisms": derived.i_class.len(),
        "subobjects": c.objects().map(|a| s.sub_poset(a).len()).collect::<Vec<_>>(),
        "assumptions": assumptions,
        "properties": properties,
        "coends": coends,
        "passed": passed,
    });
    (report, passed, Some(s))
}

fn load_setting(path: &Path) -> Result<(Setting, Value), Failure> {
    let structure: MRStructure = read_json(path)?;
    let (report, passed, setting) = analyze(structure);
    match setting {
        Some(s) if passed => Ok((s, report)),
        _ => Err(Failure::Math(json!({ "stage": "assumptions", "report": report }))),
    }
}

fn builtin_base(name: &str, size: usize) -> Option<ParInput> {
    match name {
        "finset" => Some(builders::finset_base(size)),
        "fi" => Some(builders::fi_base(size)),
        "f2" => Some(builders::f2_injective_base(size)),
        _ => None,
    }
}

fn cmd_example(name: ExampleName, size: Option<usize>, base: Option<&str>, out: Option<&Path>) -> Outcome {
    let structure = match name {
        ExampleName::DeltaBt => builders::delta_bt(size.unwrap_or(4)),
        ExampleName::FiSharp => builders::fi_sharp(size.unwrap_or(3)),
        ExampleName::Cube => builders::cube(size.unwrap_or(2)),
        ExampleName::Pt => Ok(builders::pt()),
        ExampleName::Par => {
            let base = base.unwrap_or("finset");
            let input = match builtin_base(base, size.unwrap_or(2)) {
                Some(i) => i,
                None => read_json::<ParInput>(Path::new(base))?,
            };
            builders::par(&input)
        }
    }
    .map_err(build_error)?;
    if let Some(p) = out {
        fs::write(p, render(&to_value(&structure)))?;
    }
    let (report, passed, _) = analyze(structure);
    if passed {
        Ok(report)
    } else {
        Err(Failure::Math(report))
    }
}

fn cmd_check(path: &Path) -> Outcome {
    let structure: MRStructure = read_json(path)?;
    let (report, passed, _) = analyze(structure);
    if passed {
        Ok(report)
    } else {
        Err(Failure::Math(report))
    }
}

fn kernel_module(path: &Path) -> Result<KernelModule, Failure> {
    let (s, _) = load_setting(path)?;
    KernelModule::build(s).map_err(|e| Failure::Math(json!({ "stage": "kernel module", "error": e.to_string() })))
}

fn cmd_transport(direction: Direction, category: &Path, functor: &Path, out: Option<&Path>) -> Outcome {
    let km = kernel_module(category)?;
    let data: FunctorData = read_json(functor)?;
    let input_dims = data.dims.clone();
    let mut result = match direction {
        Direction::Hat => {
            let f = PointedFunctor::from_data(km.d(), data).map_err(|e| Failure::Input(e.to_string()))?;
            let report = validate_pointed(km.d(), &f).map_err(|e| Failure::Input(e.to_string()))?;
            if !report.is_valid() {
                return Err(Failure::Math(json!({ "stage": "input functor", "violations": report.violations })));
            }
            hat(&km, &f).map(|t| t.to_data())
        }
        Direction::Tilde => {
            let cat = km.setting().cat();
            let t = AdditiveFunctor::from_data(cat, data).map_err(|e| Failure::Input(e.to_string()))?;
            let report = validate_additive(cat, &t).map_err(|e| Failure::Input(e.to_string()))?;
            if !report.is_valid() {
                return Err(Failure::Math(json!({ "stage": "input functor", "violations": report.violations })));
            }
            tilde(&km, &t).map(|f| f.to_data())
        }
    }
    .map_err(|e| Failure::Math(json!({ "stage": "transport", "error": e.to_string() })))?;
    result.category = Some(category.display().to_string());
    let output_dims = result.dims.clone();
    let table = json!({ "input_dims": input_dims, "output_dims": output_dims });
    match out {
        Some(p) => {
            write_or_print(Some(p), &to_value(&result))?;
            Ok(table)
        }
        None => Ok(json!({ "dims": table, "functor": result })),
    }
}

fn cmd_certify(category: &Path, seeds: usize, seed: u64, max_dim: usize) -> Outcome {
    let km = kernel_module(category)?;
    let pointed = seeded_family(km.d(), seeds, seed, max_dim);
    let additive = pointed
        .iter()
        .map(|f| hat(&km, f))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Math(json!({ "stage": "transport", "error": e.to_string() })))?;
    let cert = certify_equivalence(&km, &pointed, &additive);
    let doc = json!({ "seed": seed, "seeds": seeds, "max_dim": max_dim, "certificate": cert });
    if cert.passed {
        Ok(doc)
    } else {
        Err(Failure::Math(doc))
    }
}

fn cmd_theta(category: &Path, functor: &Path) -> Outcome {
    let km = kernel_module(category)?;
    let data: FunctorData = read_json(functor)?;
    let f = PointedFunctor::from_data(km.d(), data).map_err(|e| Failure::Input(e.to_string()))?;
    let entries =
        theta_entries(&km, &f).map_err(|e| Failure::Math(json!({ "stage": "transport", "error": e.to_string() })))?;
    let passed = entries.iter().all(|e| e.passed());
    let doc = json!({ "entries": entries, "passed": passed });
    if passed {
        Ok(doc)
    } else {
        Err(Failure::Math(doc))
    }
}

fn cmd_idem(path: &Path) -> Outcome {
    let list: Vec<QMat> = read_json(path)?;
    if list.is_empty() {
        return Err(Failure::Input("empty matrix list".into()));
    }
    if let Some((i, j)) = admissibility_violation(&list) {
        return Err(Failure::Math(json!({ "admissible": false, "witness": [i, j] })));
    }
    let es = orthogonal_idempotents(&list).map_err(|e| Failure::Input(e.to_string()))?;
    let ranks: Vec<usize> = es.iter().map(QMat::rank).collect();
    Ok(json!({ "admissible": true, "idempotents": es, "ranks": ranks }))
}

fn summary(v: &Value) -> String {
    let passed = v.get("passed").or_else(|| v.pointer("/certificate/passed")).and_then(Value::as_bool);
    match passed {
        Some(true) => "all checks passed".into(),
        Some(false) => "some checks failed".into(),
        None => "done".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out) = match &cli.cmd {
        Command::Example { name, size, base, out } => (cmd_example(*name, *size, base.as_deref(), out.as_deref()), None),
        Command::Check { category } => (cmd_check(category), None),
        Command::Transport { direction, category, functor, out } => {
            (cmd_transport(*direction, category, functor, out.as_deref()), None)
        }
        Command::Certify { category, seeds, seed, max_dim, out } => {
            (cmd_certify(category, *seeds, *seed, *max_dim), out.as_deref())
        }
        Command::Theta { category, functor, out } => (cmd_theta(category, functor), out.as_deref()),
        Command::Idem { matrices, out } => (cmd_idem(matrices), out.as_deref()),
    };
    let (doc, code) = match outcome {
        Ok(v) => (v, 0),
        Err(Failure::Math(v)) => (v, 2),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    if cli.verbose {
        eprintln!("{}", summary(&doc));
    }
    if let Err(Failure::Input(msg)) = write_or_print(out, &doc) {
        eprintln!("error: {msg}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
