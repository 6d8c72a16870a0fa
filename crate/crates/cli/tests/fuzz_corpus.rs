//! Replays the checked-in fuzz seeds through the same properties the fuzz
//! targets assert, so they run on stable with `cargo test`.

use std::fs;
use std::path::PathBuf;

use qdot_cli::output::{parse_csv, parse_json, to_csv, to_json, RecordKind};
use qdot_core::validation::{Expectations, Table};
use qdot_core::PotentialKind;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = String::from_utf8_lossy(&fs::read(&p).unwrap()).into_owned();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn expectations_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("expectations") {
        if let Ok(exp) = Expectations::parse(&text) {
            accepted += 1;
            for key in exp.keys() {
                assert!(
                    exp.get(key).unwrap().iter().flatten().all(|p| p.value.is_finite()),
                    "{}",
                    path.display()
                );
            }
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn csv_seeds_round_trip() {
    let mut accepted = 0;
    for (path, text) in seeds("document_csv") {
        if let Ok(tables) = parse_csv(&text) {
            accepted += 1;
            assert_eq!(
                parse_csv(&to_csv(&tables).unwrap()).unwrap(),
                tables,
                "{}",
                path.display()
            );
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn json_seeds_round_trip() {
    let mut accepted = 0;
    for (path, text) in seeds("document_json") {
        if let Ok(tables) = parse_json(&text) {
            accepted += 1;
            assert_eq!(
                parse_json(&to_json(&tables).unwrap()).unwrap(),
                tables,
                "{}",
                path.display()
            );
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn name_seeds_round_trip() {
    for (_, text) in seeds("names") {
        if let Ok(kind) = text.parse::<PotentialKind>() {
            assert_eq!(kind.name().parse::<PotentialKind>().unwrap(), kind);
        }
        if let Ok(kind) = text.parse::<RecordKind>() {
            assert_eq!(kind.name().parse::<RecordKind>().unwrap(), kind);
        }
        if let Ok(table) = text.parse::<Table>() {
            assert_eq!(table.name().parse::<Table>().unwrap(), table);
        }
    }
}

mod random {
    use super::*;
    use proptest::prelude::*;

    fn csv_like() -> impl Strategy<Value = String> {
        proptest::collection::vec(
            prop_oneof![
                Just("# kind: cutoff-scan\n".to_string()),
                Just("# kind: eigenvalue\n".to_string()),
                Just("r_min,coulomb,log\n".to_string()),
                Just("potential,omega,l,index,nodes,eta\n".to_string()),
                Just("\n".to_string()),
                "[-0-9a-z.,\"# :e]{0,24}\n",
            ],
            0..8,
        )
        .prop_map(|parts| parts.concat())
    }

    proptest! {
        #[test]
        fn csv_round_trips_whatever_it_accepts(text in csv_like()) {
            if let Ok(tables) = parse_csv(&text) {
                prop_assert_eq!(parse_csv(&to_csv(&tables).unwrap()).unwrap(), tables);
            }
        }

        #[test]
        fn json_never_panics(text in "\\PC{0,64}") {
            if let Ok(tables) = parse_json(&text) {
                prop_assert_eq!(parse_json(&to_json(&tables).unwrap()).unwrap(), tables);
            }
        }

        #[test]
        fn expectations_values_are_finite(text in "([a-z0-9/=]{1,8} = [-0-9.e,sqrt()]{0,12}\n){0,4}") {
            if let Ok(exp) = Expectations::parse(&text) {
                for key in exp.keys() {
                    prop_assert!(exp.get(key).unwrap().iter().flatten().all(|p| p.value.is_finite()));
                }
            }
        }
    }
}
