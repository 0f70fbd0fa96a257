#![no_main]

use clap::Parser;
use hartmann_cli::{Cli, RunConfig};
use libfuzzer_sys::fuzz_target;

// One argument per line; parsing and validation only, no command is run.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("hartmann").chain(text.lines());
    if let Ok(cli) = Cli::try_parse_from(args) {
        if let Ok(cfg) = RunConfig::from_args(&cli.global) {
            assert!(cfg.gamma > 0.0 && cfg.gamma.is_finite());
            assert!(cfg.capital_m >= 0.0);
            assert!(cfg.depth >= 1);
        }
    }
});
