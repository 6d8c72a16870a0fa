#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot_core::validation::Expectations;

fuzz_target!(|text: &str| {
    if let Ok(exp) = Expectations::parse(text) {
        for key in exp.keys() {
            for printed in exp.get(key).unwrap().iter().flatten() {
                assert!(printed.value.is_finite());
            }
        }
    }
});
