mod common;

use common::golden;
use weave_core::colouring::{stripe_analysis, PhaseReport};
use weave_core::naming::binary_index;
use weave_core::symmetry::is_isonemal;
use weave_core::topology::hangs_together;

fn outcome(p: &PhaseReport) -> String {
    if !p.isonemal {
        return "non-isonemal".into();
    }
    match (&p.alias, &p.name) {
        (Some(a), _) => a.clone(),
        (None, Some(n)) => n.to_string(),
        (None, None) => "unnamed".into(),
    }
}

fn stripes_to(file: &str, expected: [&str; 2]) {
    let d = golden(file);
    let report = stripe_analysis(&d);
    assert!(report.stripable, "{file} should stripe perfectly");
    let mut got: Vec<String> = report.phases.iter().map(outcome).collect();
    got.sort();
    let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    want.sort();
    assert_eq!(got, want, "{file}");
}

#[test]
fn goldens_are_isonemal_fabrics_with_their_index() {
    for file in [
        "8-1-1", "8-5-1", "8-7-2", "8-11-1", "8-11-2", "8-19-5", "8-27-5", "10-1-1", "12-31-1", "12-79-1", "12-135-1",
        "12-183-1", "12-619-1",
    ] {
        let d = golden(file);
        assert!(is_isonemal(&d), "{file}");
        let mut parts = file.split('-');
        let order: usize = parts.next().unwrap().parse().unwrap();
        let index: u64 = parts.next().unwrap().parse().unwrap();
        assert_eq!(d.order_of().order, order, "{file}");
        assert_eq!(binary_index(&d), Some(index), "{file}");
    }
}

#[test]
fn twelve_79_1() {
    stripes_to("12-79-1", ["12-69-4*", "non-isonemal"]);
}

#[test]
fn eight_11_1() {
    stripes_to("8-11-1", ["8-5-3*", "non-isonemal"]);
}

#[test]
fn eight_19_5() {
    stripes_to("8-19-5", ["4-1-1*", "non-isonemal"]);
}

#[test]
fn eight_11_2() {
    stripes_to("8-11-2", ["8-5-1*", "non-isonemal"]);
}

#[test]
fn twelve_183_1() {
    stripes_to("12-183-1", ["12-69-2*", "12-21-2*"]);
}

#[test]
fn eight_27_5() {
    stripes_to("8-27-5", ["4-1-1*", "8-5-3*"]);
}

#[test]
fn ten_1_1_satin() {
    stripes_to("10-1-1", ["non-isonemal", "non-isonemal"]);
}

#[test]
fn striped_patterns_that_are_designs_fall_apart() {
    for file in ["8-11-1", "8-19-5", "8-27-5", "12-183-1"] {
        for p in stripe_analysis(&golden(file)).phases.iter().filter(|p| p.isonemal) {
            assert!(p.falls_apart, "{file} phase {}", p.phase);
            assert!(!hangs_together(&p.pattern));
        }
    }
}

#[test]
fn satin_analysis() {
    let d = golden("10-1-1");
    assert!(hangs_together(&d));
    let s = weave_core::species::species_signature(&d);
    assert_eq!(s.label_or_unlabelled(), "36_s");
    assert_eq!(weave_core::symmetry::symmetry_group(&d).crystal_type().to_string(), "p4");
}
