mod common;

use common::{exemplars, golden};
use weave_core::colouring::{
    make_colouring, obverse_pattern, stripe_analysis, unstripe, unstripe_with, ColouringKind, Unstripe, UnstripeSearch,
};
use weave_core::naming::canonical_form;
use weave_core::parse_pattern;

#[test]
fn exemplars_round_trip() {
    let exemplars = exemplars();
    assert_eq!(exemplars.len(), 18);
    for (n, d) in &exemplars {
        let form = canonical_form(d);
        for phase in stripe_analysis(d).phases {
            match unstripe_with(&phase.pattern, Some(*n), UnstripeSearch::Correspondence).unwrap() {
                Unstripe::Candidates(c) => assert!(
                    c.iter().any(|f| canonical_form(f) == form),
                    "{:?} phase {} not recovered",
                    d.rows_top_down(),
                    phase.phase
                ),
                Unstripe::Failure(x) => panic!("{:?} phase {}: {x}", d.rows_top_down(), phase.phase),
            }
        }
    }
}

#[test]
fn order_forty_design_has_no_fabric() {
    let d = golden("order40-species6");
    assert_eq!(d.order_of().order, 40);
    match unstripe(&d).unwrap() {
        Unstripe::Failure(x) => {
            let unit = x.forced_unit.as_ref().expect("a forced unit");
            assert_eq!(unit.dimensions(), "4δ×10δ");
            assert!(x.to_string().contains("forced period rectangle 4δ×10δ"), "{x}");
        }
        Unstripe::Candidates(c) => panic!("{} candidates", c.len()),
    }
}

#[test]
fn broad_search_shows_non_uniqueness() {
    let trivial = parse_pattern("#").unwrap();
    let plain = parse_pattern("#-\n-#").unwrap();
    let mut shared = 0;
    for phase in 0..2 {
        let c = make_colouring(ColouringKind::ThinStripe(phase), 2);
        let a = obverse_pattern(&trivial.tiled(2, 2), &c);
        let b = obverse_pattern(&plain, &c);
        if canonical_form(&a) != canonical_form(&b) {
            continue;
        }
        shared += 1;
        let Unstripe::Candidates(found) = unstripe_with(&a, None, UnstripeSearch::Broad).unwrap() else {
            panic!("phase {phase}: no candidates");
        };
        let forms: Vec<_> = found.iter().map(canonical_form).collect();
        assert!(forms.contains(&canonical_form(&trivial)), "phase {phase}");
        assert!(forms.contains(&canonical_form(&plain)), "phase {phase}");
    }
    assert!(shared > 0);
}

#[test]
fn unstripe_rejects_patterns_without_a_redundant_checkerboard() {
    let p = parse_pattern("##--\n#-#-\n--##\n-#-#").unwrap();
    assert!(matches!(unstripe(&p), Err(_) | Ok(Unstripe::Failure(_))));
}
