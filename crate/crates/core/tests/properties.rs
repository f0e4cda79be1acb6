mod common;

use common::{corpus, exemplars};
use proptest::prelude::*;
use weave_core::colouring::{
    is_perfect, make_colouring, obverse_pattern, reverse_pattern, stripable_thin, stripe_analysis, ColouringKind,
    StrandColouring,
};
use weave_core::species::species_signature;
use weave_core::symmetry::symmetry_group;
use weave_core::topology::hangs_together;
use weave_core::{Colour, PeriodicPattern, Role};

#[test]
fn normal_colouring_is_always_perfect() {
    for d in corpus() {
        let c = make_colouring(ColouringKind::Normal, d.width());
        assert!(is_perfect(d, &c).verdict, "{:?}", d.rows_top_down());
    }
}

#[test]
fn stripable_designs_are_perfect_in_both_thin_phases() {
    let mut stripable = 0;
    for d in corpus() {
        let thin = stripable_thin(d).is_stripable();
        for phase in 0..2 {
            let c = make_colouring(ColouringKind::ThinStripe(phase), d.width());
            assert_eq!(is_perfect(d, &c).verdict, thin, "{:?} phase {phase}", d.rows_top_down());
        }
        stripable += thin as usize;
    }
    assert!(stripable > 0);
}

#[test]
fn quarter_turn_designs_stripe_iff_36_s() {
    let mut seen = 0;
    for d in corpus().iter().filter(|d| symmetry_group(d).has_quarter_turns()) {
        let label = species_signature(d).label_or_unlabelled().to_string();
        assert_eq!(stripable_thin(d).is_stripable(), label == "36_s", "{:?}", d.rows_top_down());
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn glide_axes_reappear_in_striped_exemplars() {
    for (_, d) in exemplars() {
        for p in stripe_analysis(&d).phases {
            assert!(!p.correspondence.is_empty(), "{:?}", d.rows_top_down());
            for c in &p.correspondence {
                assert!(c.holds, "{:?} phase {}: {}", d.rows_top_down(), p.phase, c.axis);
            }
        }
    }
}

#[test]
fn quarter_turn_designs_never_stripe_to_isonemal_designs() {
    for d in corpus().iter().filter(|d| symmetry_group(d).has_quarter_turns()) {
        for phase in 0..2 {
            let c = make_colouring(ColouringKind::ThinStripe(phase), d.width());
            let p = obverse_pattern(d, &c).with_role(Role::Design);
            assert!(!weave_core::symmetry::is_isonemal(&p), "{:?} phase {phase}", d.rows_top_down());
        }
    }
}

fn design(w: usize, h: usize, bits: &[bool]) -> PeriodicPattern {
    let cells = bits.iter().map(|&b| if b { Colour::Dark } else { Colour::Pale }).collect();
    PeriodicPattern::new(w, h, cells, Role::Design).unwrap()
}

fn random_design() -> impl Strategy<Value = PeriodicPattern> {
    (1usize..=11)
        .prop_flat_map(|w| (Just(w), 1usize..=12 - w))
        .prop_flat_map(|(w, h)| (Just(w), Just(h), prop::collection::vec(any::<bool>(), w * h)))
        .prop_map(|(w, h, bits)| design(w, h, &bits))
}

/// Whether some nonempty proper set of strands can be lifted clear: at every
/// crossing of a chosen strand with an unchosen one the chosen one is on top.
fn falls_apart_by_search(d: &PeriodicPattern) -> bool {
    let (w, h) = (d.width(), d.height());
    let total = w + h;
    (1..(1u32 << total) - 1).any(|mask| {
        let warp = |i: usize| mask >> i & 1 == 1;
        let weft = |j: usize| mask >> (w + j) & 1 == 1;
        (0..h).all(|j| {
            (0..w).all(|i| match (warp(i), weft(j)) {
                (true, false) => d.at(i, j) == Colour::Dark,
                (false, true) => d.at(i, j) == Colour::Pale,
                _ => true,
            })
        })
    })
}

fn colour_word() -> impl Strategy<Value = Vec<Colour>> {
    prop::collection::vec(any::<bool>().prop_map(Colour::from_bit), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coherence_agrees_with_subset_search(d in random_design()) {
        prop_assert_eq!(hangs_together(&d), !falls_apart_by_search(&d));
    }

    #[test]
    fn reverse_view_law(d in random_design(), warps in colour_word(), wefts in colour_word()) {
        let c = StrandColouring::custom(warps, wefts).unwrap();
        let ob = obverse_pattern(&d, &c);
        let rev = reverse_pattern(&d, &c);
        let w = ob.width();
        prop_assert_eq!((rev.width(), rev.height()), (w, ob.height()));
        for j in 0..ob.height() {
            for i in 0..w {
                let mirrored = rev.at(w - 1 - i, j);
                if c.warp(i as i64) == c.weft(j as i64) {
                    prop_assert_eq!(mirrored, ob.at(i, j));
                } else {
                    prop_assert_eq!(mirrored, ob.at(i, j).complement());
                }
            }
        }
    }
}
