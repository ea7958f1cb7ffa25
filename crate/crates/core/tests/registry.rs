//! The shipped fixture files match what the library generates.
//! Set `MIRRORCAT_BLESS=1` to rewrite them.

use std::fs;
use std::path::Path;

use mirrorcat::io::{load_algebra, load_category, write_registry};

#[test]
fn shipped_registry_is_current() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    if std::env::var_os("MIRRORCAT_BLESS").is_some() {
        write_registry(&shipped).unwrap();
    }
    let dir = tempfile::tempdir().unwrap();
    let files = write_registry(dir.path()).unwrap();
    assert_eq!(files.len(), 24);
    for p in files {
        let rel = p.strip_prefix(dir.path()).unwrap();
        let want = fs::read_to_string(&p).unwrap();
        let have = fs::read_to_string(shipped.join(rel)).unwrap_or_else(|_| panic!("missing {}", rel.display()));
        assert_eq!(have, want, "{} is stale", rel.display());
    }
}

#[test]
fn shipped_files_load() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for sub in ["categories", "algebras", "defects"] {
        for entry in fs::read_dir(root.join(sub)).unwrap() {
            let p = entry.unwrap().path();
            let is_algebra = sub == "algebras" || p.file_name().unwrap().to_string_lossy().starts_with("algebra-");
            if is_algebra {
                load_algebra(&p).unwrap_or_else(|e| panic!("{e}"));
            } else {
                load_category(&p.to_string_lossy()).unwrap_or_else(|e| panic!("{e}"));
            }
        }
    }
}

#[test]
fn loading_ignores_entry_order() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let text = fs::read_to_string(root.join("categories/ising.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["fusion"].as_array_mut().unwrap().reverse();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("shuffled.json");
    fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    let a = load_category(&root.join("categories/ising.json").to_string_lossy()).unwrap();
    let b = load_category(&p.to_string_lossy()).unwrap();
    assert_eq!(a, b);
    assert_eq!(mirrorcat::io::category_json(&a), mirrorcat::io::category_json(&b));
}
