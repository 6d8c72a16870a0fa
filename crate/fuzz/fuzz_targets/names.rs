#![no_main]

use libfuzzer_sys::fuzz_target;
use qdot_cli::output::RecordKind;
use qdot_core::validation::Table;
use qdot_core::PotentialKind;

// Potential, record-kind and table names accepted on the command line.
fuzz_target!(|text: &str| {
    if let Ok(kind) = text.parse::<PotentialKind>() {
        assert_eq!(kind.name().parse::<PotentialKind>().unwrap(), kind);
    }
    if let Ok(kind) = text.parse::<RecordKind>() {
        assert_eq!(kind.name().parse::<RecordKind>().unwrap(), kind);
    }
    if let Ok(table) = text.parse::<Table>() {
        assert_eq!(table.name().parse::<Table>().unwrap(), table);
    }
});
