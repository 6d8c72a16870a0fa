#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot_cli::output::{parse_json, to_json};

fuzz_target!(|text: &str| {
    if let Ok(tables) = parse_json(text) {
        let again = to_json(&tables).expect("parsed tables serialise");
        assert_eq!(parse_json(&again).expect("own output parses"), tables);
    }
});
