use std::path::PathBuf;

use stringy::geometry::{load_table_model, useful_mix_failures};

fn catalog(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(name)
}

#[test]
fn every_catalog_file_loads() {
    for entry in std::fs::read_dir(catalog("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let m = load_table_model(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert!(useful_mix_failures(&m).unwrap().is_empty(), "{}", path.display());
        }
    }
}
