#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use weave_core::colouring::stripe_analysis;
use weave_core::search::{isonemal_designs, SearchSpace};
use weave_core::topology::hangs_together;
use weave_core::{parse_pattern, PeriodicPattern};

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(format!("{name}.wv"))
}

pub fn golden(name: &str) -> PeriodicPattern {
    let text = std::fs::read_to_string(golden_path(name)).expect("golden file");
    parse_pattern(&text).expect("golden parses")
}

/// Every isonemal design of order 5 to 12, up to the usual equivalences.
pub fn corpus() -> &'static [PeriodicPattern] {
    static CORPUS: OnceLock<Vec<PeriodicPattern>> = OnceLock::new();
    CORPUS.get_or_init(|| (5..=12).flat_map(|n| isonemal_designs(n, SearchSpace::All)).collect())
}

/// Fabrics of the corpus that stripe perfectly and whose side-preserving
/// group is generated by glide-reflections, with their orders.
pub fn exemplars() -> Vec<(usize, PeriodicPattern)> {
    corpus()
        .iter()
        .filter(|d| hangs_together(d))
        .filter(|d| {
            let r = stripe_analysis(d);
            r.stripable && r.glide_generated
        })
        .map(|d| (d.width(), d.clone()))
        .collect()
}
