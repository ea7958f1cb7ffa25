use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mirrorcat::algebra::AlgebraObject;
use mirrorcat::category::{validate_all, Label};
use mirrorcat::constructions::{builtin, pointed};
use mirrorcat::cyclo::{is_real_positive_with_cap, DEFAULT_PRECISION_CAP};
use mirrorcat::io::{self, DimsReport, InduceReport, IoError};
use mirrorcat::mirror::{canonical_algebra, certify_braid_reversal, mirror_analyze, KeyLemmaRow};
use mirrorcat::repa::{expected_sign, frobenius_dim, induce, is_local, key_lemma};

#[derive(Parser, Debug)]
#[command(name = "mirrorcat", version, about = "Ribbon categories, canonical algebras and braid-reversal certificates")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bit cap for the exact positivity test.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_CAP)]
    precision_cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a built-in category file (`pointed` takes --n and --q); `fixtures` writes the registry to --out.
    Gen {
        name: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long)]
        flip: bool,
    },
    /// Pentagon, hexagon and ribbon checks.
    Validate { category: String },
    /// The full algebra verdict battery.
    CheckAlgebra { algebra: PathBuf },
    /// Write the canonical algebra of a category.
    Canonical {
        category: String,
        #[arg(long)]
        target: Option<String>,
        /// JSON object mapping labels of the category to labels of the target.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Mirror analysis and braid-reversal certification.
    Analyze { algebra: PathBuf },
    /// Induced module carrier, locality and Frobenius reciprocity.
    Induce { algebra: PathBuf, label: String },
    /// Key Lemma scalars for every component.
    Keylemma { algebra: PathBuf },
    /// Quantum dimensions of a category, or the dimension of an algebra file.
    Dims { input: String },
}

enum Failure {
    Verdict(String),
    Input(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Output {
    text: String,
    passed: bool,
}

fn emit<T: Serialize>(json: bool, value: &T, text: String, passed: bool) -> Output {
    Output { text: if json { io::to_json(value) } else { text }, passed }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn label_of(a: &AlgebraObject, name: &str) -> Result<Label, Failure> {
    a.ambient().label(name).map_err(input)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Gen { name, n, q, flip } => {
            if name == "fixtures" {
                let dir = cli.out.as_ref().ok_or_else(|| Failure::Input("gen fixtures needs --out DIR".into()))?;
                let files = io::write_registry(dir)?;
                let list: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
                return Ok(Output { text: list.join("\n") + "\n", passed: true });
            }
            let c = if name == "pointed" {
                pointed(n.unwrap_or(2), q.unwrap_or(1), *flip).map_err(input)?
            } else {
                builtin(name).map_err(input)?
            };
            Ok(Output { text: io::category_json(&c), passed: true })
        }
        Command::Validate { category } => {
            let c = io::load_category(category)?;
            let r = validate_all(&c);
            let passed = r.passed();
            Ok(emit(json, &r, r.render(), passed))
        }
        Command::CheckAlgebra { algebra } => {
            let a = io::load_algebra(algebra)?;
            let r = a.report();
            let passed = r.passed();
            Ok(emit(json, &r, r.render(), passed))
        }
        Command::Canonical { category, target, map } => {
            let c = io::load_category(category)?;
            let d = target.as_deref().map(io::load_category).transpose()?;
            let tau = match map {
                None => None,
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                    let m: BTreeMap<String, String> =
                        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                    let d = d.as_ref().unwrap_or(&c);
                    let mut tau = vec![usize::MAX; c.rank()];
                    for (x, y) in &m {
                        tau[c.label(x).map_err(input)?] = d.label(y).map_err(input)?;
                    }
                    if tau.contains(&usize::MAX) {
                        return Err(Failure::Input("object map must cover every label".into()));
                    }
                    Some(tau)
                }
            };
            let a = canonical_algebra(&c, d.as_ref(), tau.as_deref()).map_err(input)?;
            Ok(Output { text: io::algebra_json(&a), passed: true })
        }
        Command::Analyze { algebra } => {
            let a = io::load_algebra(algebra)?;
            let r = mirror_analyze(&a).map_err(input)?;
            let cert = certify_braid_reversal(&r);
            let passed = r.passed() && cert.certified;
            #[derive(Serialize)]
            struct Both<'a> {
                report: &'a mirrorcat::mirror::MirrorReport,
                certification: &'a mirrorcat::mirror::Certification,
            }
            let text = format!("{}{}", r.render(), cert.render());
            Ok(emit(json, &Both { report: &r, certification: &cert }, text, passed))
        }
        Command::Induce { algebra, label } => {
            let a = io::load_algebra(algebra)?;
            let w = label_of(&a, label)?;
            let x = induce(&a, w).map_err(input)?;
            let local = is_local(&x).map_err(input)?;
            let mut frob = Vec::new();
            for &(l, _) in &x.carrier {
                let (d, _) = frobenius_dim(&a, l, &x).map_err(|e| Failure::Verdict(e.to_string()))?;
                frob.push((a.ambient().label_name(l).to_string(), d));
            }
            let r = InduceReport {
                algebra: a.name().to_string(),
                seed: label.clone(),
                carrier: x.carrier.iter().map(|&(l, m)| (a.ambient().label_name(l).to_string(), m)).collect(),
                local,
                frobenius: frob,
            };
            Ok(emit(json, &r, r.render(), true))
        }
        Command::Keylemma { algebra } => {
            let a = io::load_algebra(algebra)?;
            let mut rows = Vec::new();
            let mut text = format!("key lemma for {}\n", a.name());
            let mut passed = true;
            for i in 0..a.components().len() {
                let exp = expected_sign(&a, i);
                let name = a.component_name(i);
                match key_lemma(&a, i) {
                    Ok(k) => {
                        let ok = k.scalar1 == k.dim_u && k.scalar2 == k.dim_v && k.sign == exp;
                        passed &= ok;
                        text.push_str(&format!(
                            "{name}: Φ∘Ψ = {} (d_U = {}), Ψ∘Φ = {} (d_V = {}), sign {:+} {}\n",
                            k.scalar1,
                            k.dim_u,
                            k.scalar2,
                            k.dim_v,
                            k.sign,
                            if ok { "ok" } else { "FAIL" }
                        ));
                        rows.push(KeyLemmaRow {
                            component: name,
                            scalar1: Some(k.scalar1),
                            scalar2: Some(k.scalar2),
                            sign: Some(k.sign),
                            expected_sign: exp,
                            error: None,
                        });
                    }
                    Err(e) => {
                        passed = false;
                        text.push_str(&format!("{name}: {e}\n"));
                        rows.push(KeyLemmaRow {
                            component: name,
                            scalar1: None,
                            scalar2: None,
                            sign: None,
                            expected_sign: exp,
                            error: Some(e.to_string()),
                        });
                    }
                }
            }
            Ok(emit(json, &rows, text, passed))
        }
        Command::Dims { input } => {
            let path = Path::new(input);
            let is_algebra = path.is_file()
                && std::fs::read_to_string(path)
                    .ok()
                    .and_then(|t| serde_json::from_str::<serde_json::Value>(&t).ok())
                    .is_some_and(|v| v.get("ambient").is_some());
            if is_algebra {
                let a = io::load_algebra(path)?;
                let d = a.categorical_dimension().map_err(input_err)?;
                let positive = is_real_positive_with_cap(&d.value, cli.precision_cap).map_err(input_err)?;
                let text = format!(
                    "algebra {}\ndimension: {} ≈ {:.4}\n{}\n{}\n",
                    a.name(),
                    d.value,
                    d.approx,
                    d.positive.line(),
                    d.trace_products.line()
                );
                Ok(emit(json, &d, text, positive && d.trace_products.passed))
            } else {
                let c = io::load_category(input)?;
                let r = DimsReport::new(&c);
                Ok(emit(json, &r, r.render(), true))
            }
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("mirrorcat: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli);
    let out = match result {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("mirrorcat: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verdict(msg)) => {
            eprintln!("mirrorcat: {msg}");
            return ExitCode::from(1);
        }
    };
    let is_registry = matches!(&cli.command, Command::Gen { name, .. } if name == "fixtures");
    match (&cli.out, is_registry) {
        (Some(p), false) => {
            if let Err(e) = io::write(p, &out.text) {
                eprintln!("mirrorcat: {e}");
                return ExitCode::from(2);
            }
        }
        _ => print!("{}", out.text),
    }
    if out.passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
}
