//! Keeps the checked-in `corpus/` files byte-identical with the builders.
//!
//! After changing a builder, run the ignored `regenerate` test once:
//! `cargo test -p satkit-core --test corpus_files regenerate -- --ignored`

use std::path::PathBuf;

use satkit_core::corpus;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn files_match_builders() {
    for (name, contents) in corpus::corpus_files() {
        let path = corpus_dir().join(&name);
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
        assert_eq!(
            on_disk, contents,
            "{name} is out of date; regenerate the corpus files"
        );
    }
}

#[test]
fn files_parse_back_to_the_builders() {
    use satkit_core::{catfib, lang, parse_algebra};
    for (name, contents) in corpus::corpus_files() {
        if name.ends_with(".alg") {
            parse_algebra(&contents).unwrap_or_else(|e| panic!("{name}: {e}"));
        } else if name.ends_with(".cat") {
            catfib::parse_category(&contents).unwrap_or_else(|e| panic!("{name}: {e}"));
        } else if name.ends_with(".dfa") {
            lang::parse_dfa(&contents).unwrap_or_else(|e| panic!("{name}: {e}"));
        } else {
            panic!("unexpected corpus entry {name}");
        }
    }
}

#[test]
#[ignore = "writes the corpus directory; run manually after builder changes"]
fn regenerate() {
    let dir = corpus_dir();
    std::fs::create_dir_all(&dir).unwrap();
    for (name, contents) in corpus::corpus_files() {
        std::fs::write(dir.join(&name), contents).unwrap();
    }
}
