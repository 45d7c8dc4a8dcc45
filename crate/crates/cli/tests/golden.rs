//! Byte-exact outputs for fixed seeds. `UPDATE_GOLDEN=1` rewrites them.

mod common;

use common::{golden_cases, golden_dir, produce};

#[test]
fn outputs_match_golden_files() {
    let tmp = tempfile::tempdir().unwrap();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for (name, args) in golden_cases() {
        let got = produce(tmp.path(), &name, &args);
        let path = golden_dir().join(&name);
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read(&path) {
            Ok(want) if want == got => {}
            Ok(_) => stale.push(format!("{name} differs")),
            Err(_) => stale.push(format!("{name} missing")),
        }
    }
    assert!(stale.is_empty(), "golden mismatch (rerun with UPDATE_GOLDEN=1 after review): {stale:?}");
}
