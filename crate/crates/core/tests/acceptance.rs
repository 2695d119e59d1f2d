//! Acceptance suite: every release gate in one integration target, each
//! criterion printed as a pass/fail line (`--nocapture` to see them when
//! everything is green).

use gateswitch::budget::Budget;
use gateswitch::circseq::{count_switches, two_phase_sequence, GateSet};
use gateswitch::ksets::{gon_configuration, kset_counts};
use gateswitch::multiperm::{
    closed_form_diameter, diameter, enumerate_vertices, h_representation, Composition,
};
use gateswitch::oracle::{count_sequences, enumerate_sequences};
use gateswitch::perm_core::validate_sequence;
use gateswitch::verify;

fn report(name: &str, suite: &verify::SuiteReport) {
    for line in suite.lines() {
        println!("{name}: {line}");
    }
    assert!(
        suite.passed(),
        "{name} failed:\n{}",
        suite
            .failures()
            .map(|c| format!("  {} — {}", c.label, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!("criterion {name}: pass");
}

/// 1. For every gate set with n <= 8, the exact minimum switch count lies
///    between the distance sum and the distance sum plus l*r.
#[test]
fn criterion_01_bounds_exhaustive() {
    let budget = Budget::default();
    report("01 bounds", &verify::bounds_suite(8, &budget));
}

/// 2. The two-phase construction is valid and within bounds for every gate
///    set with n <= 8; the worked example lands on 3 4 5 2 6 1 8 7 after phase
///    one with exactly 11 gate switches.
#[test]
fn criterion_02_construction() {
    report("02 construction", &verify::construction_suite(8));

    let gs = GateSet::new(8, vec![1, 4, 6, 7]).unwrap();
    let tp = two_phase_sequence(&gs);
    validate_sequence(&tp.sequence).unwrap();
    assert_eq!(tp.phase_one_endpoint().word(), &[3, 4, 5, 2, 6, 1, 8, 7]);
    let tally = count_switches(&tp.sequence, &gs).unwrap();
    assert_eq!(tally.total, 11);
    println!("criterion 02 construction fixture: pass");
}

/// 3. Skeleton diameter equals the shortest-path minimum on the derived
///    gates for every composition of n <= 8.
#[test]
fn criterion_03_bridge() {
    let budget = Budget::default();
    report("03 bridge", &verify::bridge_suite(8, &budget));
}

/// 4. The farthest vertex from the sorted word is its reversal, and random
///    words are farthest from their own reversals at the same distance, for
///    every composition of n <= 6.
#[test]
fn criterion_04_farthest_vertex() {
    let budget = Budget::default();
    report(
        "04 farthest",
        &verify::farthest_suite(6, 20, 0x0413, &budget),
    );
}

/// 5. Closed forms match BFS for every two- and three-part composition of
///    n <= 10, including the pinned examples.
#[test]
fn criterion_05_closed_forms() {
    let budget = Budget::default();
    report("05 closed-form", &verify::closed_form_suite(10, &budget));

    let pinned = [(vec![2u8, 3], 2u32), (vec![2, 3, 2], 5), (vec![1, 2, 1], 3)];
    for (parts, expected) in pinned {
        let c = Composition::new(parts.clone()).unwrap();
        assert_eq!(closed_form_diameter(&c), Some(expected), "{parts:?}");
        assert_eq!(diameter(&c, &budget).unwrap(), expected, "{parts:?}");
    }
    println!("criterion 05 closed-form fixtures: pass");
}

/// 6. The all-ones composition has diameter C(n,2) for n <= 7.
#[test]
fn criterion_06_permutohedron() {
    let budget = Budget::default();
    report("06 permutohedron", &verify::permutohedron_suite(7, &budget));
}

/// 7. The {1,2,2,3} fixture: 12 vertices, 14 inequality rows, diameter 3,
///    and exactly the four listed neighbors of (1,2,2,3).
#[test]
fn criterion_07_fixture() {
    let budget = Budget::default();
    report("07 fixture", &verify::fixture_suite(&budget));

    // Direct re-assertion of the pinned numbers.
    let c = Composition::new(vec![1, 2, 1]).unwrap();
    assert_eq!(enumerate_vertices(&c).len(), 12);
    assert_eq!(h_representation(&c, None, &budget).unwrap().rows.len(), 14);
    assert_eq!(diameter(&c, &budget).unwrap(), 3);
}

/// 8. 1, 2, 16, 768 circular sequences for n = 2, 3, 4, 5, by depth-first
///    enumeration and by the independent counting recursion.
#[test]
fn criterion_08_enumeration_counts() {
    let budget = Budget::default();
    report("08 enumeration", &verify::enumeration_suite(5, &budget));

    let expected: [(u8, u128); 4] = [(2, 1), (3, 2), (4, 16), (5, 768)];
    for (n, count) in expected {
        assert_eq!(
            enumerate_sequences(n, &budget).unwrap().count() as u128,
            count
        );
        assert_eq!(count_sequences(n, &budget).unwrap(), count);
    }
}

/// 9. On 100 seeded random configurations with n <= 10: sweep counts equal
///    brute-force separability counts, left + right = total + 2, and switch
///    totals are C(n,2).
#[test]
fn criterion_09_kset_identities() {
    let budget = Budget::default();
    report("09 ksets", &verify::kset_identity_suite(10, 100, &budget));
}

/// 10. On 50 seeded random configurations with n <= 9 and every spec pair:
///     both count formulas agree and the two-sided diameter bound holds.
#[test]
fn criterion_10_sandwich() {
    let budget = Budget::default();
    report("10 sandwich", &verify::sandwich_suite(9, 50, &budget));
    report("10 sandwich spot", &verify::sandwich_spotcheck(&budget));
}

/// 11. Gon configurations achieve f(k) = 2k+1 for k <= 3, n <= 9; pinned
///     concrete case (k=2, n=5).
#[test]
fn criterion_11_gon_extremal() {
    report("11 gon", &verify::gon_suite(3, 9));

    let cfg = gon_configuration(2, 5);
    assert_eq!(kset_counts(&cfg).unwrap().f_total(2).unwrap(), 5);
    println!("criterion 11 gon fixture: pass");
}
