//! Catalogue of isonemal designs of prefabrics that fall apart with
//! alternate strands: configurations fitted to the redundant checkerboard,
//! the enumeration itself, naming and checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::preserves_thin_classes;
use crate::error::{Result, WeaveError};
use crate::isometry::{PointOp, SignedIsometry};
use crate::naming::{canonical_form, name_of_isonemal, DesignName};
use crate::pattern::{PeriodicPattern, StrandRef};
use crate::search::{transitive_groups, OrbitFill, SearchSpace};
use crate::species::{ab_params, axis_label, species_signature, SpeciesSignature};
use crate::symmetry::{is_isonemal, symmetry_group, Direction, FeatureKind, SymmetryGroup};
use crate::topology::{fall_apart_mode, liftable_sets, FallApartMode};
use crate::word::StrandWord;

/// Highest order the name lookup will enumerate on demand.
pub const LOOKUP_MAX_ORDER: usize = 24;

/// Spacing of one family of parallel axes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxisFamily {
    pub kind: FeatureKind,
    pub tau: bool,
    pub direction: Direction,
    /// Glide in units of half a cell diagonal.
    pub glide: i64,
    /// Distance between neighbouring axes in units of a quarter cell
    /// diagonal.
    pub spacing: i64,
}

impl std::fmt::Display for AxisFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dir = match self.direction {
            Direction::DiagUp => "/",
            Direction::DiagDown => "\\",
            Direction::Horizontal => "-",
            Direction::Vertical => "|",
            Direction::None => ".",
        };
        let kind = match (self.kind, self.tau) {
            (FeatureKind::Mirror, _) => "mirrors".to_string(),
            (_, false) => format!("glides {}", half_deltas(self.glide)),
            (_, true) => format!("sr glides {}", half_deltas(self.glide)),
        };
        write!(f, "{dir} {kind} every {}", quarter_deltas(self.spacing))
    }
}

fn half_deltas(v: i64) -> String {
    if v % 2 == 0 {
        format!("{}δ", v / 2)
    } else {
        format!("{}/2δ", v)
    }
}

fn quarter_deltas(v: i64) -> String {
    match v % 4 {
        0 => format!("{}δ", v / 4),
        2 => format!("{}/2δ", v / 2),
        _ => format!("{}/4δ", v),
    }
}

/// A group fitted to the redundant checkerboard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupConfiguration {
    pub species: String,
    pub ab: Option<(i64, i64)>,
    pub lattice_unit: String,
    pub axes: Vec<AxisFamily>,
}

impl GroupConfiguration {
    fn of_group(g: &SymmetryGroup, species: String, order: usize) -> Self {
        GroupConfiguration {
            species,
            ab: ab_params(g, order).map(|p| (p.a, p.b)),
            lattice_unit: g.lattice_unit().dimensions(),
            axes: axis_families(g),
        }
    }

    pub fn summary(&self) -> String {
        let axes: Vec<String> = self.axes.iter().map(|a| a.to_string()).collect();
        format!("{}; unit {}", axes.join("; "), self.lattice_unit)
    }

    /// Spacing of the mirrors in units of a quarter cell diagonal.
    pub fn mirror_spacing(&self) -> Option<i64> {
        self.axes.iter().filter(|a| a.kind == FeatureKind::Mirror).map(|a| a.spacing).min()
    }

    /// Spacing of the side-preserving glide-reflection axes.
    pub fn glide_spacing(&self) -> Option<i64> {
        self.axes
            .iter()
            .filter(|a| a.kind == FeatureKind::GlideReflection && !a.tau)
            .map(|a| a.spacing)
            .min()
    }
}

/// Families of diagonal axes, each with its least glide and the distance
/// between neighbours.
pub fn axis_families(g: &SymmetryGroup) -> Vec<AxisFamily> {
    let m = 2 * g.torus() as i64;
    let mut lines: BTreeMap<(FeatureKind, bool, Direction, i64), BTreeSet<i64>> = BTreeMap::new();
    for f in g.inventory() {
        if f.is_axis() && f.direction.is_diagonal() {
            lines.entry((f.kind, f.tau, f.direction, f.glide)).or_default().insert(f.position.0);
        }
    }
    lines
        .into_iter()
        .map(|((kind, tau, direction, glide), pos)| {
            let v: Vec<i64> = pos.into_iter().collect();
            let spacing = if v.len() < 2 {
                m
            } else {
                let wrap = v[0] + m - v[v.len() - 1];
                v.windows(2).map(|w| w[1] - w[0]).chain([wrap]).min().unwrap()
            };
            AxisFamily {
                kind,
                tau,
                direction,
                glide,
                spacing,
            }
        })
        .collect()
}

/// Isometries of the torus that keep the checkerboard of redundant cells,
/// possibly exchanging its dark and pale halves.
fn checkerboard_normaliser(n: usize) -> Vec<SignedIsometry> {
    let nn = n as i64;
    let mut out = Vec::new();
    for op in PointOp::ALL {
        for x in 0..nn {
            for y in 0..nn {
                let f = SignedIsometry::from_cells(op, (x, y), false);
                if preserves_thin_classes(&f) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Least conjugate of a group under the checkerboard normaliser.
fn conjugacy_key(n: usize, elements: &[SignedIsometry], normaliser: &[SignedIsometry]) -> Vec<SignedIsometry> {
    normaliser
        .iter()
        .map(|f| {
            let fi = f.inverse();
            let mut v: Vec<SignedIsometry> = elements.iter().map(|e| f.compose(e).compose(&fi).reduced(n, n)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Strand-transitive groups of the checkerboard that a labelled species
/// with valid `(a, b)` parameters can fill without forcing a redundant
/// cell to change colour, one per conjugacy class.
pub fn fit_configurations(order: usize) -> Vec<GroupConfiguration> {
    if order % 2 == 1 || order < 4 {
        return Vec::new();
    }
    let normaliser = checkerboard_normaliser(order);
    let groups = transitive_groups(order, SearchSpace::ThinFrame);
    let mut found: Vec<(String, Vec<SignedIsometry>, GroupConfiguration)> = groups
        .par_iter()
        .filter_map(|tg| {
            let g = SymmetryGroup::from_elements(order, tg.elements.iter().copied());
            let label = axis_label(&g, order).ok()?;
            ab_params(&g, order)?;
            OrbitFill::new(order, &tg.generators, SearchSpace::ThinFrame)?;
            let key = conjugacy_key(order, &tg.elements, &normaliser);
            let conf = GroupConfiguration::of_group(&g, label.clone(), order);
            Some((label, key, conf))
        })
        .collect();
    found.sort_by(|a, b| (species_rank(&a.0), &a.2.ab, &a.1).cmp(&(species_rank(&b.0), &b.2.ab, &b.1)));
    found.dedup_by(|a, b| a.1 == b.1);
    found.into_iter().map(|(_, _, c)| c).collect()
}

/// Species with the `(a, b)` options of their configurations.
pub fn feasible_species(order: usize) -> Vec<(String, Vec<(i64, i64)>)> {
    let mut map: BTreeMap<(u32, String), BTreeSet<(i64, i64)>> = BTreeMap::new();
    for c in fit_configurations(order) {
        let e = map.entry((species_rank(&c.species).0, c.species.clone())).or_default();
        if let Some(ab) = c.ab {
            e.insert(ab);
        }
    }
    map.into_iter().map(|((_, s), v)| (s, v.into_iter().collect())).collect()
}

/// Sort key of a species label: number, then subscript.
pub fn species_rank(label: &str) -> (u32, String) {
    let mut parts = label.splitn(2, '_');
    let number = parts.next().and_then(|n| n.parse().ok()).unwrap_or(u32::MAX);
    (number, parts.next().unwrap_or("").to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub name: DesignName,
    pub design: PeriodicPattern,
    pub species: SpeciesSignature,
    pub configuration: GroupConfiguration,
    pub liftable: Vec<Vec<StrandRef>>,
    /// The name printed for this design in the published catalogue, where
    /// it can be identified.
    pub alias: Option<String>,
    /// The published figure showing the design, for order 20.
    pub figure: Option<u8>,
}

impl CatalogueEntry {
    pub fn species_label(&self) -> &str {
        self.species.label_or_unlabelled()
    }

    pub fn is_palindrome(&self) -> bool {
        index_is_palindrome(self.name.index, self.name.order)
    }

    /// One JSON line.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            name: String,
            order: usize,
            index: u64,
            species: &'a str,
            genus: Vec<String>,
            rows: Vec<String>,
            liftable: Vec<Vec<String>>,
            configuration: String,
        }
        serde_json::to_string(&Line {
            name: self.name.to_string(),
            order: self.name.order,
            index: self.name.index,
            species: self.species_label(),
            genus: self.species.genus_tags.iter().map(|g| g.to_string()).collect(),
            rows: self.design.rows_top_down(),
            liftable: self
                .liftable
                .iter()
                .map(|set| set.iter().map(|s| s.to_string()).collect())
                .collect(),
            configuration: self.configuration.summary(),
        })
        .expect("plain data serializes")
    }
}

/// Whether the cyclic word with this binary index reads the same reversed.
pub fn index_is_palindrome(index: u64, order: usize) -> bool {
    StrandWord::from_value(index, order).is_cyclic_palindrome()
}

/// Published sequence numbers at orders up to 16, keyed by order, index,
/// species and, for the two species-23 sets at 12-21, the `(a, b)`
/// parameters.
fn low_order_alias(order: usize, index: u64, species: &str, ab: Option<(i64, i64)>) -> Option<usize> {
    let seq = match (order, index, species) {
        (4, 1, _) => 1,
        (8, 5, "23_e") => 1,
        (8, 5, "15_e") => 2,
        (8, 5, "31") => 3,
        (12, 69, "6") => 1,
        (12, 69, "3") => 2,
        (12, 69, "19_o") => 3,
        (12, 69, "15_o") => 4,
        (12, 21, "23_o") => match ab {
            Some((1, 3)) => 1,
            _ => 2,
        },
        (12, 21, "19_o") => 3,
        (12, 21, "15_o") => 4,
        (16, 277, "15_e") => 2,
        (16, 277, "9") => 4,
        (16, 85, "19_e") => 3,
        _ => return None,
    };
    Some(seq)
}

/// The published figure of an order-20 design and its printed sequence
/// numbers.
fn order_twenty_figure(species: &str, palindrome: bool, conf: &GroupConfiguration) -> Option<(u8, &'static [usize])> {
    let delta = 4;
    Some(match (species, palindrome) {
        ("3", false) => (12, &[1]),
        ("6", false) => (13, &[2]),
        ("15_o", true) => (14, &[1, 2]),
        ("15_o", false) => (15, &[3]),
        ("19_o", true) => (16, &[3, 4]),
        ("19_o", false) => (17, &[4]),
        ("23_o", true) if conf.mirror_spacing() == Some(delta) => (18, &[5]),
        ("23_o", true) => (19, &[6]),
        _ => return None,
    })
}

fn alias_of(name: &DesignName, species: &str, conf: &GroupConfiguration, palindrome: bool) -> (Option<String>, Option<u8>) {
    if name.order == 20 {
        return match order_twenty_figure(species, palindrome, conf) {
            Some((fig, seqs)) => {
                let names: Vec<String> = seqs.iter().map(|s| format!("{}-{s}*", name.index)).collect();
                (Some(names.join(" or ")), Some(fig))
            }
            None => (None, None),
        };
    }
    let alias = low_order_alias(name.order, name.index, species, conf.ab)
        .map(|s| format!("{}-{}-{s}*", name.order, name.index));
    (alias, None)
}

/// Re-anchors a design carrying a redundant checkerboard so that its dark
/// half sits on cells with both coordinates odd.
fn anchored(d: &PeriodicPattern) -> PeriodicPattern {
    let n = d.width().max(d.height());
    let q = d.tiled(n, n);
    for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let s = q.shifted(dx, dy);
        let ok = (0..n as i64).all(|j| {
            (0..n as i64).all(|i| match crate::search::cell_class(i, j) {
                0 => s.cell(i, j) == crate::Colour::Dark,
                1 => s.cell(i, j) == crate::Colour::Pale,
                _ => true,
            })
        });
        if ok {
            return s;
        }
    }
    q
}

/// Every isonemal design of the given order whose alternate strands lift
/// off, named, classified and sorted by species, index and sequence number.
pub fn enumerate_fall_apart(order: usize, mode: FallApartMode) -> Result<Vec<CatalogueEntry>> {
    if mode != FallApartMode::Thin {
        return Err(WeaveError::Unsupported("only thin fall-apart designs are catalogued".into()));
    }
    if order == 0 || order % 2 == 1 {
        return Ok(Vec::new());
    }
    let designs = crate::search::isonemal_designs(order, SearchSpace::ThinFrame);
    let mut entries: Vec<CatalogueEntry> = designs
        .par_iter()
        .filter(|d| fall_apart_mode(d) == FallApartMode::Thin)
        .map(|d| {
            let species = species_signature(d);
            let anchored = anchored(d);
            let g = symmetry_group(&anchored);
            let configuration = GroupConfiguration::of_group(&g, species.label_or_unlabelled().to_string(), order);
            let name = name_of_isonemal(d, true).expect("enumerated designs are uniform");
            CatalogueEntry {
                name,
                design: d.clone(),
                species,
                configuration,
                liftable: liftable_sets(d),
                alias: None,
                figure: None,
            }
        })
        .collect();
    // sequence numbers within each index, by canonical serialization
    entries.sort_by_cached_key(|e| (e.name.index, e.design.serialize()));
    let mut seq: HashMap<u64, usize> = HashMap::new();
    for e in &mut entries {
        let s = seq.entry(e.name.index).or_insert(0);
        *s += 1;
        e.name.seq = *s;
        let pal = e.is_palindrome();
        let (alias, figure) = alias_of(&e.name, e.species.label_or_unlabelled(), &e.configuration, pal);
        e.alias = alias;
        e.figure = figure;
    }
    entries.sort_by(|a, b| {
        (species_rank(a.species_label()), a.name.index, a.name.seq).cmp(&(
            species_rank(b.species_label()),
            b.name.index,
            b.name.seq,
        ))
    });
    Ok(entries)
}

/// JSON lines for a list of entries, one per entry.
pub fn to_jsonl(entries: &[CatalogueEntry]) -> String {
    entries.iter().map(|e| e.to_json_line() + "\n").collect()
}

type Cache = Mutex<HashMap<usize, Arc<Vec<CatalogueEntry>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The catalogue at one order, computed once per process.
pub fn cached_catalogue(order: usize) -> Arc<Vec<CatalogueEntry>> {
    if let Some(c) = cache().lock().expect("cache lock").get(&order) {
        return c.clone();
    }
    let entries = Arc::new(enumerate_fall_apart(order, FallApartMode::Thin).unwrap_or_default());
    cache().lock().expect("cache lock").insert(order, entries.clone());
    entries
}

/// The catalogue entry equivalent to a design, if it has one.
pub fn lookup(p: &PeriodicPattern) -> Option<CatalogueEntry> {
    let order = p.order_of().order;
    if order > LOOKUP_MAX_ORDER || order % 2 == 1 || !is_isonemal(p) {
        return None;
    }
    let form = canonical_form(p);
    cached_catalogue(order).iter().find(|e| e.design == form).cloned()
}

/// Catalogue name and printed alias of a design, if it is catalogued.
pub fn resolve_name(p: &PeriodicPattern) -> Option<(DesignName, Option<String>)> {
    lookup(p).map(|e| (e.name, e.alias))
}

/// One check of a catalogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub what: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueReport {
    pub checks: Vec<Check>,
}

impl CatalogueReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Names listed as occurring in the published catalogue, with species.
pub const PRINTED_NAMES: [(usize, u64, &str); 10] = [
    (12, 69, "3"),
    (12, 69, "6"),
    (16, 277, "9"),
    (12, 21, "15_o"),
    (16, 277, "15_e"),
    (12, 69, "19_o"),
    (16, 85, "19_e"),
    (12, 21, "23_o"),
    (8, 5, "23_e"),
    (8, 5, "31"),
];

/// Checks a catalogue: invariants of every entry, pairwise distinctness,
/// the multiplicity law for palindromic and other indices, and the
/// presence of the printed names at orders up to 16.
pub fn verify_catalogue(entries: &[CatalogueEntry], order: usize) -> CatalogueReport {
    let mut checks = Vec::new();
    let mut check = |what: &str, passed: bool, detail: String| {
        checks.push(Check {
            what: what.to_string(),
            passed,
            detail,
        })
    };

    let bad: Vec<String> = entries
        .iter()
        .filter(|e| {
            e.design.order_of().order != order
                || !is_isonemal(&e.design)
                || fall_apart_mode(&e.design) != FallApartMode::Thin
        })
        .map(|e| e.name.to_string())
        .collect();
    check("entry invariants", bad.is_empty(), format!("violations: {bad:?}"));

    let forms: BTreeSet<String> = entries.iter().map(|e| canonical_form(&e.design).serialize()).collect();
    check(
        "pairwise inequivalent",
        forms.len() == entries.len(),
        format!("{} entries, {} classes", entries.len(), forms.len()),
    );

    let mut by_species: BTreeMap<(u32, String), usize> = BTreeMap::new();
    for e in entries {
        *by_species.entry(species_rank(e.species_label())).or_default() += 1;
    }
    check(
        "entries per species",
        true,
        by_species
            .iter()
            .map(|((n, s), c)| format!("{n}{}{s}: {c}", if s.is_empty() { "" } else { "_" }))
            .collect::<Vec<_>>()
            .join(", "),
    );

    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for e in entries {
        *counts.entry(e.name.index).or_default() += 1;
    }
    check("distinct indices", true, format!("{}", counts.len()));
    let pal: BTreeSet<usize> = counts
        .iter()
        .filter(|(i, _)| index_is_palindrome(**i, order))
        .map(|(_, c)| *c)
        .collect();
    let non: BTreeSet<usize> = counts
        .iter()
        .filter(|(i, _)| !index_is_palindrome(**i, order))
        .map(|(_, c)| *c)
        .collect();
    if order == 20 {
        check(
            "palindromes six times, others four",
            pal == BTreeSet::from([6]) && non == BTreeSet::from([4]),
            format!("palindrome multiplicities {pal:?}, others {non:?}"),
        );
    } else {
        check(
            "palindrome multiplicities",
            true,
            format!("palindromes {pal:?}, others {non:?}"),
        );
    }

    if order <= 16 {
        for (o, index, species) in PRINTED_NAMES.iter().filter(|(o, _, _)| *o == order) {
            let present = entries
                .iter()
                .any(|e| e.name.order == *o && e.name.index == *index && e.species_label() == *species);
            check(
                &format!("{o}-{index}-?* of species {species}"),
                present,
                if present { "present".into() } else { "missing".into() },
            );
        }
    }
    CatalogueReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palindromes_of_order_twenty() {
        for i in [341, 4433, 16709] {
            assert!(index_is_palindrome(i, 20), "{i}");
        }
        for i in [1109, 4373, 5141, 17477, 17489, 17669] {
            assert!(!index_is_palindrome(i, 20), "{i}");
        }
    }

    #[test]
    fn species_sort_is_numeric() {
        let mut v = vec!["23_o", "3", "15_o", "6", "19_o"];
        v.sort_by_key(|s| species_rank(s));
        assert_eq!(v, ["3", "6", "15_o", "19_o", "23_o"]);
    }

    #[test]
    fn order_four_is_the_single_exceptional_design() {
        let e = enumerate_fall_apart(4, FallApartMode::Thin).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].name.to_string(), "4-1-1*");
        assert_eq!(e[0].alias.as_deref(), Some("4-1-1*"));
    }

    #[test]
    fn order_eight_names() {
        let e = enumerate_fall_apart(8, FallApartMode::Thin).unwrap();
        let labels: Vec<&str> = e.iter().map(|e| e.species_label()).collect();
        assert_eq!(labels, ["15_e", "23_e", "31"]);
        assert!(verify_catalogue(&e, 8).passed());
    }

    #[test]
    fn thick_mode_is_not_catalogued() {
        assert!(enumerate_fall_apart(8, FallApartMode::Thick).is_err());
    }
}
