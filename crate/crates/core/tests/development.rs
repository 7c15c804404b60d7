mod common;

use common::{check_planted, planted_battery};

#[test]
fn planted_developments_are_recovered() {
    let battery = planted_battery(7);
    let failures: Vec<String> = battery
        .iter()
        .enumerate()
        .filter_map(|(k, p)| check_planted(p).err().map(|e| format!("pair {k} (case {}): {e}", p.case)))
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for case in 1..=3 {
        assert!(battery.iter().any(|p| p.case == case));
    }
}

#[test]
fn other_seeds() {
    for seed in [1, 2, 3] {
        for p in planted_battery(seed) {
            check_planted(&p).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }
}
