//! Replays the fuzz seeds through the decoders on stable.

use std::fs;
use std::path::PathBuf;

use clap::Parser;
use hartmann_cli::{decode_json, parse_csv, Cli, Format, RunConfig};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn json_seeds() {
    for (name, text) in seeds("decode_json") {
        match decode_json(&text) {
            Ok(doc) => {
                let again = doc.render(Format::Json).unwrap();
                assert_eq!(decode_json(&again).unwrap(), doc, "{name}");
            }
            Err(e) => assert!(name.starts_with("wrong_"), "{name}: {e}"),
        }
    }
}

#[test]
fn csv_seeds() {
    for (name, text) in seeds("parse_csv") {
        let table = parse_csv(&text);
        if name.starts_with("header_only") {
            assert!(table.is_err(), "{name}");
        } else {
            let table = table.unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(table.meta["units"], "atomic");
        }
    }
}

#[test]
fn argument_seeds() {
    for (name, text) in seeds("cli_args") {
        let cli = Cli::try_parse_from(std::iter::once("hartmann").chain(text.lines()))
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let cfg = RunConfig::from_args(&cli.global);
        assert_eq!(cfg.is_ok(), !name.starts_with("bad_"), "{name}");
    }
}
