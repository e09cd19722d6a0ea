//! The files under `data/` are regenerated byte for byte by the library.

use std::fs;
use std::path::PathBuf;

use twistlab_core::derivation::{keys_sorted, replay};
use twistlab_core::library::Library;
use twistlab_core::pipelines::{run, EXAMPLE_IDS};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

#[test]
fn library_file_is_current() {
    let shipped = fs::read_to_string(data("library.json")).unwrap();
    let lib = Library::builtin().unwrap();
    assert_eq!(shipped, lib.to_json());
    let loaded = Library::from_json(&shipped).unwrap();
    assert_eq!(loaded.len(), lib.len());
}

#[test]
fn derivation_logs_are_current() {
    let mut seen = 0;
    for id in EXAMPLE_IDS {
        for d in run(id).unwrap() {
            let path = data(&format!("derivations/{}.jsonl", d.example()));
            let shipped = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(shipped, d.to_jsonl().unwrap(), "{} differs", path.display());
            assert!(keys_sorted(&shipped));
            let r = replay(&shipped).unwrap();
            assert!(r.all_match(), "{}", d.example());
            seen += 1;
        }
    }
    let files = fs::read_dir(data("derivations")).unwrap().count();
    assert_eq!(files, seen);
}

#[test]
fn corrupted_log_is_rejected() {
    let shipped = fs::read_to_string(data("derivations/5.2.jsonl")).unwrap();
    let mut lines: Vec<&str> = shipped.lines().collect();
    lines.remove(3);
    assert!(replay(&lines.join("\n")).is_err());
}
