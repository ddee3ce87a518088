//! The shipped corpus files must stay in sync with the generator
//! (`jetspan gen corpus -o corpus` reproduces them).

use jetspan::{corpus, format};
use std::collections::BTreeSet;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_corpus_matches_the_generator() {
    let dir = corpus_dir();
    let mut seen = BTreeSet::new();
    for (name, p) in corpus::standard_corpus() {
        let path = dir.join(format!("{name}.poly"));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, format::emit(&p), "{name} file is stale");
        let parsed = format::parse_str(&text).unwrap();
        assert_eq!(parsed, p, "{name} round trip");
        seen.insert(format!("{name}.poly"));
    }
    for entry in std::fs::read_dir(&dir).unwrap() {
        let file = entry.unwrap().file_name().to_string_lossy().into_owned();
        if file.ends_with(".poly") {
            assert!(seen.contains(&file), "unexpected corpus file {file}");
        }
    }
}
