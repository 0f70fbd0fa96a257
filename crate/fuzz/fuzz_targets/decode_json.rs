#![no_main]

use hartmann_cli::{decode_json, Format};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = decode_json(text) {
        // Anything accepted must re-encode and decode to the same document.
        let again = doc.render(Format::Json).expect("accepted documents re-encode");
        assert_eq!(decode_json(&again).expect("re-encoded documents decode"), doc);
        let _ = doc.render(Format::Csv);
        let _ = doc.render(Format::Text);
    }
});
