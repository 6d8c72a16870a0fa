#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot_cli::output::{parse_csv, to_csv};

fuzz_target!(|text: &str| {
    if let Ok(tables) = parse_csv(text) {
        let again = to_csv(&tables).expect("parsed tables serialise");
        assert_eq!(parse_csv(&again).expect("own output parses"), tables);
    }
});
