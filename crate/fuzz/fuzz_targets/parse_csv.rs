#![no_main]

use hartmann_cli::parse_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = parse_csv(text) {
        for key in table.meta.keys() {
            let _ = table.meta_f64(key);
        }
        for name in &table.columns {
            let _ = table.column(name);
        }
    }
});
