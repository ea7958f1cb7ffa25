//! File I/O: category references, algebra files, report envelopes, fixture registry.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraFile, AlgebraObject, CategoryRef};
use crate::category::{CategoryError, CategoryFile, RibbonCategory};
use crate::constructions::builtin;
use crate::fixtures::{algebra_fixtures, canonical_fixtures, coherence_fixtures, fermion, wrong_statistics};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: line {line} column {column}: {msg}")]
    Parse { path: PathBuf, line: usize, column: usize, msg: String },
    #[error("{context}: {source}")]
    Category { context: String, source: CategoryError },
    #[error("{context}: {source}")]
    Algebra { context: String, source: AlgebraError },
    #[error("{0}")]
    Invalid(String),
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| IoError::Read { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, text).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}

/// `builtin:<name>` or a path to a category file.
pub fn load_category(arg: &str) -> Result<RibbonCategory, IoError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin(name).map_err(|source| IoError::Category { context: arg.to_string(), source });
    }
    let path = Path::new(arg);
    let file: CategoryFile = parse(path, &read(path)?)?;
    file.to_category().map_err(|source| IoError::Category { context: arg.to_string(), source })
}

/// A reference inside an algebra file: a `builtin:` string, a path relative to `base`, or inline data.
pub fn resolve_category(r: &CategoryRef, base: &Path) -> Result<RibbonCategory, IoError> {
    match r {
        serde_json::Value::String(s) if s.starts_with("builtin:") => load_category(s),
        serde_json::Value::String(s) => load_category(&base.join(s).to_string_lossy()),
        serde_json::Value::Object(_) => {
            let file: CategoryFile = serde_json::from_value(r.clone())
                .map_err(|e| IoError::Invalid(format!("inline category: {e}")))?;
            file.to_category().map_err(|source| IoError::Category { context: "inline category".into(), source })
        }
        other => Err(IoError::Invalid(format!("category reference must be a string or an object, found {other}"))),
    }
}

pub fn load_algebra(path: &Path) -> Result<AlgebraObject, IoError> {
    let file: AlgebraFile = parse(path, &read(path)?)?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    // resolution errors are kept aside so that the closure can report CategoryError
    let failure = std::cell::RefCell::new(None);
    let out = file.to_algebra(|r| {
        resolve_category(r, &base).map_err(|e| {
            let msg = e.to_string();
            *failure.borrow_mut() = Some(e);
            CategoryError::Malformed(msg)
        })
    });
    match (out, failure.into_inner()) {
        (Ok(a), _) => Ok(a),
        (Err(_), Some(e)) => Err(e),
        (Err(source), None) => Err(IoError::Algebra { context: path.display().to_string(), source }),
    }
}

/// `builtin:<name>` when the category is a builtin, inline data otherwise.
pub fn category_reference(c: &RibbonCategory) -> CategoryRef {
    match builtin(c.name()) {
        Ok(b) if b == *c => serde_json::Value::String(format!("builtin:{}", c.name())),
        _ => serde_json::to_value(CategoryFile::from_category(c)).expect("category files serialize"),
    }
}

pub fn category_json(c: &RibbonCategory) -> String {
    let mut s = serde_json::to_string_pretty(&CategoryFile::from_category(c)).expect("category files serialize");
    s.push('\n');
    s
}

pub fn algebra_json(a: &AlgebraObject) -> String {
    let file = AlgebraFile::from_algebra(a, category_reference);
    let mut s = serde_json::to_string_pretty(&file).expect("algebra files serialize");
    s.push('\n');
    s
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Output of `induce`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceReport {
    pub algebra: String,
    pub seed: String,
    pub carrier: Vec<(String, usize)>,
    pub local: bool,
    /// `(W, dim Hom_{Rep A}(F(W), X))` for every `W` in the carrier.
    pub frobenius: Vec<(String, usize)>,
}

impl InduceReport {
    pub fn render(&self) -> String {
        let carrier: Vec<String> =
            self.carrier.iter().map(|(l, m)| if *m == 1 { l.clone() } else { format!("{m}·{l}") }).collect();
        let mut out = format!(
            "F({}) over {}\ncarrier: {}\nlocal: {}\n",
            self.seed,
            self.algebra,
            carrier.join(" + "),
            if self.local { "yes" } else { "no" }
        );
        for (w, d) in &self.frobenius {
            out.push_str(&format!("dim Hom(F({w}), F({})) = {d}\n", self.seed));
        }
        out
    }
}

/// Output of `dims` for a category.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimsReport {
    pub category: String,
    pub labels: Vec<(String, crate::cyclo::CycNumber, f64)>,
    pub global: crate::cyclo::CycNumber,
    pub global_approx: f64,
}

impl DimsReport {
    pub fn new(c: &RibbonCategory) -> Self {
        let labels = (0..c.rank())
            .map(|i| (c.label_name(i).to_string(), c.qdim(i).clone(), c.qdim(i).to_complex().re))
            .collect();
        let global = c.global_dimension();
        DimsReport { category: c.name().to_string(), labels, global_approx: global.to_complex().re, global }
    }

    pub fn render(&self) -> String {
        let mut out = format!("category {}\n", self.category);
        for (l, d, x) in &self.labels {
            out.push_str(&format!("d({l}) = {d} ≈ {x:.4}\n"));
        }
        out.push_str(&format!("global dimension = {} ≈ {:.4}\n", self.global, self.global_approx));
        out
    }
}

/// Write the fixture registry: built-in categories, their canonical algebras,
/// coherence defects and algebra defects.
pub fn write_registry(dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    let mut written = Vec::new();
    let mut put = |rel: String, text: String| -> Result<(), IoError> {
        let p = dir.join(rel);
        write(&p, &text)?;
        written.push(p);
        Ok(())
    };
    for (name, a) in canonical_fixtures() {
        let c = a.factors().expect("canonical algebras live in a product").0;
        put(format!("categories/{}.json", file_stem(name)), category_json(c))?;
        put(format!("algebras/canonical-{}.json", file_stem(name)), algebra_json(&a))?;
    }
    for fx in coherence_fixtures() {
        put(format!("defects/{}.json", fx.name), category_json(&fx.category))?;
    }
    for fx in algebra_fixtures() {
        put(format!("defects/algebra-{}.json", fx.name), algebra_json(&fx.algebra))?;
    }
    put("algebras/fermion.json".into(), algebra_json(&fermion()))?;
    put("algebras/fermion-wrong-statistics.json".into(), algebra_json(&wrong_statistics()))?;
    Ok(written)
}

fn file_stem(name: &str) -> String {
    name.replace(':', "-")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fib, BUILTIN_NAMES};

    #[test]
    fn category_files_round_trip() {
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("c.json");
            write(&p, &category_json(&c)).unwrap();
            assert_eq!(load_category(&p.to_string_lossy()).unwrap(), c);
        }
    }

    #[test]
    fn algebra_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let files = write_registry(dir.path()).unwrap();
        for p in files.iter().filter(|p| p.to_string_lossy().contains("algebra")) {
            let a = load_algebra(p).unwrap();
            assert_eq!(algebra_json(&a), fs::read_to_string(p).unwrap(), "{}", p.display());
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        write(&p, "{\n  \"name\": 3,\n").unwrap();
        match load_category(&p.to_string_lossy()) {
            Err(IoError::Parse { line, .. }) => assert!(line >= 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load_category("builtin:nope"), Err(IoError::Category { .. })));
    }

    #[test]
    fn inline_reference() {
        let c = fib();
        let v = serde_json::to_value(CategoryFile::from_category(&c)).unwrap();
        assert_eq!(resolve_category(&v, Path::new(".")).unwrap(), c);
        assert_eq!(category_reference(&c), serde_json::Value::String("builtin:fib".into()));
    }
}
