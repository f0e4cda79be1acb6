use std::collections::BTreeMap;

use weave_core::catalogue::{cached_catalogue, verify_catalogue, CatalogueEntry};
use weave_core::naming::binary_index;
use weave_core::Colour;

fn order_twenty() -> Vec<CatalogueEntry> {
    cached_catalogue(20).to_vec()
}

fn printed(e: &CatalogueEntry) -> String {
    e.alias.clone().unwrap_or_else(|| e.name.to_string())
}

#[test]
fn order_twenty_has_42_entries() {
    assert_eq!(order_twenty().len(), 42);
}

#[test]
fn order_twenty_sets_by_figure() {
    let mut sizes: BTreeMap<u8, (String, usize)> = BTreeMap::new();
    for e in order_twenty() {
        let fig = e.figure.expect("every order-20 entry has a figure");
        let slot = sizes.entry(fig).or_insert((e.species_label().to_string(), 0));
        assert_eq!(slot.0, e.species_label(), "figure {fig} mixes species");
        slot.1 += 1;
    }
    let got: Vec<(u8, &str, usize)> = sizes.iter().map(|(f, (s, k))| (*f, s.as_str(), *k)).collect();
    assert_eq!(
        got,
        vec![
            (12, "3", 6),
            (13, "6", 6),
            (14, "15_o", 6),
            (15, "15_o", 6),
            (16, "19_o", 6),
            (17, "19_o", 6),
            (18, "23_o", 3),
            (19, "23_o", 3),
        ]
    );
}

#[test]
fn order_twenty_index_multiset() {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for e in order_twenty() {
        *counts.entry(e.name.index).or_default() += 1;
    }
    let expected: BTreeMap<u64, usize> = [
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
    assert_eq!(counts, expected);
}

#[test]
fn order_twenty_names_are_consistent() {
    for e in order_twenty() {
        assert_eq!(binary_index(&e.design), Some(e.name.index), "{}", e.name);
        assert_eq!(e.name.order, 20);
        assert!(e.name.falls_apart);
        let alias = e.alias.as_deref().expect("alias");
        assert!(alias.split(" or ").all(|a| a.starts_with(&format!("{}-", e.name.index))), "{alias}");
    }
}

#[test]
fn order_twenty_passes_its_checks() {
    let report = verify_catalogue(&order_twenty(), 20);
    assert!(report.passed(), "{:?}", report.failures());
}

/// Dark cells counted over the whole design and over alternate rows.
fn dark_counts(e: &CatalogueEntry) -> (usize, usize, usize) {
    let d = &e.design;
    let mut all = 0;
    let mut odd = 0;
    let mut even = 0;
    for j in 0..d.height() {
        for i in 0..d.width() {
            if d.at(i, j) == Colour::Dark {
                all += 1;
                if j % 2 == 1 {
                    odd += 1;
                } else {
                    even += 1;
                }
            }
        }
    }
    (all, odd, even)
}

#[test]
fn order_twenty_dark_fractions() {
    for e in order_twenty() {
        let (all, odd, even) = dark_counts(&e);
        assert_eq!(all, 200, "{}", e.name);
        assert_eq!(odd, 150, "{}", e.name);
        assert_eq!(even, 50, "{}", e.name);
    }
}

#[test]
fn low_order_spot_names() {
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
    for order in [8, 12, 16] {
        let entries = cached_catalogue(order);
        for (name, species) in wanted.iter().filter(|(n, _)| n.starts_with(&format!("{order}-"))) {
            assert!(
                entries.iter().any(|e| printed(e) == *name && e.species_label() == *species),
                "{name} ({species}) missing at order {order}"
            );
        }
        let report = verify_catalogue(&entries, order);
        assert!(report.passed(), "order {order}: {:?}", report.failures());
    }
}

#[test]
fn odd_orders_are_empty() {
    assert!(cached_catalogue(9).is_empty());
}
