//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{corpus, exemplars, golden};
use rand::{Rng, SeedableRng};
use weave_core::catalogue::{enumerate_fall_apart, index_is_palindrome, CatalogueEntry};
use weave_core::colouring::{
    is_perfect, make_colouring, obverse_pattern, reverse_pattern, stripable_thin, stripe_analysis, unstripe,
    unstripe_with, ColouringKind, StrandColouring, Unstripe, UnstripeSearch,
};
use weave_core::naming::{binary_index, canonical_form, canonical_name};
use weave_core::species::species_signature;
use weave_core::symmetry::{is_isonemal, symmetry_group};
use weave_core::topology::{hangs_together, FallApartMode};
use weave_core::{parse_pattern, Colour, PeriodicPattern, Role};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn printed(e: &CatalogueEntry) -> String {
    e.alias.clone().unwrap_or_else(|| e.name.to_string())
}

fn order_twenty(entries: &[CatalogueEntry], elapsed: Duration) -> Outcome {
    let mut figures: BTreeMap<u8, usize> = BTreeMap::new();
    let mut indices: BTreeMap<u64, usize> = BTreeMap::new();
    for e in entries {
        *figures.entry(e.figure.unwrap_or(0)).or_default() += 1;
        *indices.entry(e.name.index).or_default() += 1;
    }
    let sizes: Vec<usize> = figures.values().copied().collect();
    let want_indices: BTreeMap<u64, usize> = [
        (341, 6),
        (4433, 6),
        (16709, 6),
        (1109, 4),
        (4373, 4),
        (5141, 4),
        (17477, 4),
        (17489, 4),
        (17669, 4),
    ]
    .into_iter()
    .collect();
    let passed = entries.len() == 42
        && sizes == [6, 6, 6, 6, 6, 6, 3, 3]
        && indices == want_indices
        && elapsed < Duration::from_secs(60);
    outcome(
        passed,
        format!("{} entries, set sizes {sizes:?}, {:.1}s", entries.len(), elapsed.as_secs_f64()),
    )
}

fn spot_names() -> Outcome {
    let wanted = [
        ("12-69-2*", "3"),
        ("12-69-1*", "6"),
        ("16-277-4*", "9"),
        ("12-21-4*", "15_o"),
        ("16-277-2*", "15_e"),
        ("12-69-3*", "19_o"),
        ("16-85-3*", "19_e"),
        ("12-21-1*", "23_o"),
        ("8-5-1*", "23_e"),
        ("8-5-3*", "31"),
    ];
    let mut missing = Vec::new();
    for order in [8, 12, 16] {
        let entries = enumerate_fall_apart(order, FallApartMode::Thin).unwrap_or_default();
        for (name, species) in wanted.iter().filter(|(n, _)| n.starts_with(&format!("{order}-"))) {
            if !entries.iter().any(|e| printed(e) == *name && e.species_label() == *species) {
                missing.push(format!("{name} ({species})"));
            }
        }
    }
    let detail = if missing.is_empty() { "10 of 10".to_string() } else { format!("missing {missing:?}") };
    outcome(missing.is_empty(), detail)
}

fn battery() -> Outcome {
    let cases: [(&str, [&str; 2]); 7] = [
        ("12-79-1", ["12-65-4*", "non-isonemal"]),
        ("8-11-1", ["8-5-3*", "non-isonemal"]),
        ("8-19-5", ["4-1-1*", "non-isonemal"]),
        ("8-11-2", ["8-5-1*", "non-isonemal"]),
        ("12-183-1", ["12-69-2*", "12-21-2*"]),
        ("8-27-5", ["4-1-1*", "8-5-3*"]),
        ("10-1-1", ["non-isonemal", "non-isonemal"]),
    ];
    let mut wrong = Vec::new();
    for (file, want) in cases {
        let mut got: Vec<String> = stripe_analysis(&golden(file))
            .phases
            .iter()
            .map(|p| {
                if !p.isonemal {
                    "non-isonemal".to_string()
                } else {
                    p.alias.clone().or(p.name.map(|n| n.to_string())).unwrap_or_default()
                }
            })
            .collect();
        let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        if got != want {
            wrong.push(format!("{file}: got {got:?}, expected {want:?}"));
        }
    }
    outcome(wrong.is_empty(), if wrong.is_empty() { "7 of 7".into() } else { wrong.join("; ") })
}

fn properties() -> Outcome {
    let mut fails = Vec::new();
    let c = corpus();
    if !c.iter().all(|d| is_perfect(d, &make_colouring(ColouringKind::Normal, d.width())).verdict) {
        fails.push("a");
    }
    let b = c.iter().filter(|d| stripable_thin(d).is_stripable()).all(|d| {
        (0..2).all(|k| is_perfect(d, &make_colouring(ColouringKind::ThinStripe(k), d.width())).verdict)
    });
    if !b {
        fails.push("b");
    }
    let quarter: Vec<&PeriodicPattern> = c.iter().filter(|d| symmetry_group(d).has_quarter_turns()).collect();
    let cc = quarter
        .iter()
        .all(|d| stripable_thin(d).is_stripable() == (species_signature(d).label_or_unlabelled() == "36_s"));
    if !cc || quarter.is_empty() {
        fails.push("c");
    }
    let ex = exemplars();
    let d = !ex.is_empty()
        && ex.iter().all(|(_, d)| {
            stripe_analysis(d)
                .phases
                .iter()
                .all(|p| !p.correspondence.is_empty() && p.correspondence.iter().all(|x| x.holds))
        });
    if !d {
        fails.push("d");
    }
    let e = quarter.iter().all(|d| {
        (0..2).all(|k| {
            let p = obverse_pattern(d, &make_colouring(ColouringKind::ThinStripe(k), d.width()));
            !is_isonemal(&p.with_role(Role::Design))
        })
    });
    if !e {
        fails.push("e");
    }
    outcome(
        fails.is_empty(),
        format!(
            "{} designs, {} with quarter-turns, {} exemplars; failing {fails:?}",
            c.len(),
            quarter.len(),
            ex.len()
        ),
    )
}

fn random_design(rng: &mut impl Rng) -> PeriodicPattern {
    let w = rng.gen_range(1..=11);
    let h = rng.gen_range(1..=12 - w);
    let cells = (0..w * h).map(|_| Colour::from_bit(rng.gen())).collect();
    PeriodicPattern::new(w, h, cells, Role::Design).unwrap()
}

fn falls_apart_by_search(d: &PeriodicPattern) -> bool {
    let (w, h) = (d.width(), d.height());
    (1..(1u32 << (w + h)) - 1).any(|mask| {
        (0..h).all(|j| {
            (0..w).all(|i| match (mask >> i & 1 == 1, mask >> (w + j) & 1 == 1) {
                (true, false) => d.at(i, j) == Colour::Dark,
                (false, true) => d.at(i, j) == Colour::Pale,
                _ => true,
            })
        })
    })
}

fn topology_oracle() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let agree = (0..1000)
        .filter(|_| {
            let d = random_design(&mut rng);
            hangs_together(&d) != falls_apart_by_search(&d)
        })
        .count();
    outcome(agree == 1000, format!("{agree}/1000 agree"))
}

fn unstripe_checks() -> Outcome {
    let ex = exemplars();
    let mut recovered = 0;
    let mut total = 0;
    for (n, d) in &ex {
        let form = canonical_form(d);
        for p in stripe_analysis(d).phases {
            total += 1;
            if let Ok(Unstripe::Candidates(c)) = unstripe_with(&p.pattern, Some(*n), UnstripeSearch::Correspondence) {
                recovered += c.iter().any(|f| canonical_form(f) == form) as usize;
            }
        }
    }
    let forty = match unstripe(&golden("order40-species6")) {
        Ok(Unstripe::Failure(x)) => x.forced_unit.map(|u| u.dimensions()).unwrap_or_default(),
        _ => "candidates found".into(),
    };
    outcome(
        total > 0 && recovered == total && forty == "4δ×10δ",
        format!("{recovered}/{total} round trips, order 40: {forty}"),
    )
}

fn reverse_law() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut good = 0;
    for _ in 0..1000 {
        let d = random_design(&mut rng);
        let word = |rng: &mut rand::rngs::StdRng| -> Vec<Colour> {
            let len = rng.gen_range(1..=6);
            (0..len).map(|_| Colour::from_bit(rng.gen())).collect()
        };
        let c = StrandColouring::custom(word(&mut rng), word(&mut rng)).unwrap();
        let (ob, rev) = (obverse_pattern(&d, &c), reverse_pattern(&d, &c));
        let w = ob.width();
        let ok = (0..ob.height()).all(|j| {
            (0..w).all(|i| {
                let want = if c.warp(i as i64) == c.weft(j as i64) {
                    ob.at(i, j)
                } else {
                    ob.at(i, j).complement()
                };
                rev.at(w - 1 - i, j) == want
            })
        });
        good += ok as usize;
    }
    outcome(good == 1000, format!("{good}/1000 pairs"))
}

fn naming(entries: &[CatalogueEntry]) -> Outcome {
    let trivial = parse_pattern("#").unwrap();
    let doubled = parse_pattern("##--\n##--\n--##\n--##").unwrap();
    let a = canonical_name(&trivial, !hangs_together(&trivial)).map(|n| n.to_string()).unwrap_or_default();
    let b = canonical_name(&doubled, !hangs_together(&doubled)).map(|n| n.to_string()).unwrap_or_default();
    let indices: std::collections::BTreeSet<u64> = entries.iter().filter_map(|e| binary_index(&e.design)).collect();
    let printed = std::collections::BTreeSet::from([341, 4433, 16709, 1109, 4373, 5141, 17477, 17489, 17669]);
    let pal: Vec<u64> = indices.iter().copied().filter(|&i| index_is_palindrome(i, 20)).collect();
    outcome(
        a == "1-0-1*" && b == "4-3-1" && indices == printed && pal == [341, 4433, 16709],
        format!("{a}, {b}, palindromes {pal:?}"),
    )
}

fn main() {
    let start = Instant::now();
    let entries = enumerate_fall_apart(20, FallApartMode::Thin).unwrap_or_default();
    let elapsed = start.elapsed();
    let results = [
        ("order-20 catalogue", order_twenty(&entries, elapsed)),
        ("spot names at orders 8, 12, 16", spot_names()),
        ("striping battery", battery()),
        ("property suites", properties()),
        ("topology oracle", topology_oracle()),
        ("unstripe", unstripe_checks()),
        ("reverse-view law", reverse_law()),
        ("naming calibration", naming(&entries)),
    ];
    let mut failed = 0;
    for (k, (what, o)) in results.iter().enumerate() {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {} {what}: {}", k + 1, o.detail);
        failed += !o.passed as usize;
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
