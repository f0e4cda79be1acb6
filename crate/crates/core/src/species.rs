//! Species signatures: the coarse class of a group, its invariants, and a
//! label from a decision tree fitted to the known fall-apart designs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::colouring::stripable_thin;
use crate::lattice::{contains, hermite_basis};
use crate::pattern::PeriodicPattern;
use crate::symmetry::{
    symmetry_group, translation_basis, CrystalType, Direction, FeatureKind, SubgroupRelation, SymmetryGroup,
};
use crate::topology::{fall_apart_mode, FallApartMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpeciesClass {
    ParallelAxes,
    PerpendicularAxes,
    QuarterTurn,
    Exceptional,
    /// No diagonal axes and no quarter-turns; never isonemal above order 4.
    NoAxes,
}

impl SpeciesClass {
    pub fn label(self) -> &'static str {
        match self {
            SpeciesClass::ParallelAxes => "parallel axes",
            SpeciesClass::PerpendicularAxes => "perpendicular axes",
            SpeciesClass::QuarterTurn => "quarter-turn",
            SpeciesClass::Exceptional => "exceptional",
            SpeciesClass::NoAxes => "no axes",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Genus {
    II,
    IV,
    V,
    Other,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Genus::II => "II",
            Genus::IV => "IV",
            Genus::V => "V",
            Genus::Other => "other",
        })
    }
}

/// Side-preserving glide-reflection axes counted by glide length.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlideParities {
    pub odd: usize,
    pub even: usize,
    /// Odd multiples of half a cell diagonal.
    pub fractional: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbParams {
    pub a: i64,
    pub b: i64,
}

impl AbParams {
    pub fn subscript(&self) -> &'static str {
        if self.b % 2 == 1 {
            "o"
        } else {
            "e"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesSignature {
    pub cls: SpeciesClass,
    pub g1_type: CrystalType,
    pub h1_type: CrystalType,
    pub h1_relation: SubgroupRelation,
    pub has_mirrors: bool,
    pub mirror_directions: BTreeSet<Direction>,
    pub has_sr_translations: bool,
    pub glide_parities: GlideParities,
    pub ab_params: Option<AbParams>,
    pub roth_label: Option<String>,
    /// Why no label was given.
    pub unlabelled_reason: Option<String>,
    pub genus_tags: BTreeSet<Genus>,
}

impl SpeciesSignature {
    /// `"15_o"`, or `"unlabelled"`.
    pub fn label_or_unlabelled(&self) -> &str {
        self.roth_label.as_deref().unwrap_or("unlabelled")
    }
}

/// Least `k > 0` with `k * step` a translation of the lattice.
fn shortest_along(hnf: &[(i64, i64); 2], step: (i64, i64), bound: i64) -> Option<i64> {
    (1..=bound).find(|&k| contains((k * step.0, k * step.1), hnf))
}

fn step_of(d: Direction) -> (i64, i64) {
    match d {
        Direction::DiagDown => (1, -1),
        _ => (1, 1),
    }
}

fn other(d: Direction) -> Direction {
    match d {
        Direction::DiagUp => Direction::DiagDown,
        _ => Direction::DiagUp,
    }
}

/// Sides in cell diagonals of the side-preserving lattice along `d` and
/// across it.
fn h1_sides(g: &SymmetryGroup, d: Direction) -> Option<(i64, i64)> {
    let basis = translation_basis(g.torus(), g.elements(), false);
    let hnf = hermite_basis(&basis);
    let bound = 2 * g.torus() as i64;
    let along = shortest_along(&hnf, step_of(d), bound)?;
    let across = shortest_along(&hnf, step_of(other(d)), bound)?;
    Some((along, across))
}

fn h1_area(g: &SymmetryGroup) -> i64 {
    crate::lattice::area(&translation_basis(g.torus(), g.elements(), false))
}

fn diagonal_axis_directions(g: &SymmetryGroup) -> BTreeSet<Direction> {
    g.axis_directions().into_iter().filter(|d| d.is_diagonal()).collect()
}

fn mirror_directions(g: &SymmetryGroup) -> BTreeSet<Direction> {
    g.inventory()
        .iter()
        .filter(|f| f.kind == FeatureKind::Mirror && f.direction.is_diagonal())
        .map(|f| f.direction)
        .collect()
}

/// Class of a group acting on designs of the given order.
pub fn species_class(g: &SymmetryGroup, order: usize) -> SpeciesClass {
    if order < 5 {
        SpeciesClass::Exceptional
    } else if g.has_quarter_turns() {
        SpeciesClass::QuarterTurn
    } else {
        match diagonal_axis_directions(g).len() {
            1 => SpeciesClass::ParallelAxes,
            2 => SpeciesClass::PerpendicularAxes,
            _ => SpeciesClass::NoAxes,
        }
    }
}

/// The species parameters `(a, b)` of a group acting on designs of the
/// given order, when they satisfy `2ab = order` (parallel axes) or
/// `4ab = order` (perpendicular axes).
pub fn ab_params(g: &SymmetryGroup, order: usize) -> Option<AbParams> {
    let order = order as i64;
    match species_class(g, order as usize) {
        SpeciesClass::ParallelAxes => {
            let d = *diagonal_axis_directions(g).iter().next()?;
            let (along, _) = h1_sides(g, d)?;
            let across = h1_area(g) / (2 * along);
            let ab = AbParams { a: across / 2, b: along };
            (across % 2 == 0 && 2 * ab.a * ab.b == order).then_some(ab)
        }
        SpeciesClass::PerpendicularAxes => {
            let mirrors = mirror_directions(g);
            let sr_directions: BTreeSet<Direction> = g
                .inventory()
                .iter()
                .filter(|f| f.is_axis() && f.tau && f.direction.is_diagonal())
                .map(|f| f.direction)
                .collect();
            let reference = if mirrors.len() == 1 {
                *mirrors.iter().next().unwrap()
            } else if sr_directions.len() == 1 {
                *sr_directions.iter().next().unwrap()
            } else {
                Direction::DiagUp
            };
            let (mut along, mut across) = h1_sides(g, reference)?;
            if g.side_preserving_subgroup().crystal_type() == CrystalType::Pg && along > across {
                // axes of one direction only in H1: the shorter side gives a
                std::mem::swap(&mut along, &mut across);
            }
            let ab = AbParams { a: along / 2, b: across / 2 };
            (along % 2 == 0 && across % 2 == 0 && 4 * ab.a * ab.b == order).then_some(ab)
        }
        _ => None,
    }
}

/// The label the decision tree gives a group with axes acting on designs
/// of the given order, or why it gives none. Quarter-turn groups are not
/// labelled here.
pub fn axis_label(g: &SymmetryGroup, order: usize) -> std::result::Result<String, String> {
    let mirrors = !mirror_directions(g).is_empty();
    let srt = g.side_reversing_translations().next().is_some();
    let g1 = g.crystal_type();
    match species_class(g, order) {
        SpeciesClass::ParallelAxes => match (mirrors, g1) {
            (false, _) if srt => Ok("3".into()),
            (true, CrystalType::Pm) => Ok("6".into()),
            (true, CrystalType::Cm) => Ok("9".into()),
            _ => Err("outside calibrated range".into()),
        },
        SpeciesClass::PerpendicularAxes => {
            if g1 == CrystalType::Cmm {
                return Ok("31".into());
            }
            let base = match (mirrors, srt) {
                (false, _) => "15",
                (true, false) => "19",
                (true, true) => "23",
            };
            match ab_params(g, order) {
                Some(ab) => Ok(format!("{base}_{}", ab.subscript())),
                None => Err("outside calibrated range: no (a, b) parameters".into()),
            }
        }
        SpeciesClass::Exceptional => Err("order below 5".into()),
        SpeciesClass::QuarterTurn => Err("quarter-turn group".into()),
        SpeciesClass::NoAxes => Err("no diagonal axes".into()),
    }
}

/// Genus tags implied by a label.
pub fn genus_of_label(label: &str) -> BTreeSet<Genus> {
    match label.split('_').next().unwrap_or("") {
        "3" | "6" | "9" => BTreeSet::from([Genus::II]),
        "15" | "19" => BTreeSet::from([Genus::IV]),
        "23" | "31" => BTreeSet::from([Genus::II, Genus::IV]),
        _ => BTreeSet::new(),
    }
}

/// Species signature of a design.
pub fn species_signature(p: &PeriodicPattern) -> SpeciesSignature {
    let g = symmetry_group(p);
    let order = p.order_of().order;
    let cls = species_class(&g, order);
    let mirror_directions = mirror_directions(&g);
    let mut glide_parities = GlideParities::default();
    for f in g.inventory() {
        if f.kind == FeatureKind::GlideReflection && !f.tau && f.direction.is_diagonal() {
            match f.glide_in_deltas() {
                None => glide_parities.fractional += 1,
                Some(d) if d % 2 == 1 => glide_parities.odd += 1,
                Some(_) => glide_parities.even += 1,
            }
        }
    }

    let has_sr_translations = g.side_reversing_translations().next().is_some();
    let mode = fall_apart_mode(p);
    let labelled: std::result::Result<String, String> = match cls {
        SpeciesClass::Exceptional => Err("order below 5".into()),
        _ if !g.is_transitive_on_strands() => Err("not isonemal".into()),
        SpeciesClass::QuarterTurn => {
            if stripable_thin(p).is_stripable() {
                Ok("36_s".into())
            } else {
                Err("quarter-turn species other than 36_s are not distinguished".into())
            }
        }
        SpeciesClass::NoAxes => Err("no diagonal axes".into()),
        _ if mode != FallApartMode::Thin => {
            Err("outside calibrated range: alternate strands do not lift off".into())
        }
        _ => axis_label(&g, order),
    };
    let mut genus_tags = labelled.as_deref().map(genus_of_label).unwrap_or_default();
    match mode {
        FallApartMode::Thick => {
            genus_tags.insert(Genus::V);
        }
        FallApartMode::Layer | FallApartMode::Other => {
            genus_tags.insert(Genus::Other);
        }
        _ => {}
    }
    let (roth_label, unlabelled_reason) = match labelled {
        Ok(l) => (Some(l), None),
        Err(r) => (None, Some(r)),
    };

    SpeciesSignature {
        cls,
        g1_type: g.crystal_type(),
        h1_type: g.side_preserving_subgroup().crystal_type(),
        h1_relation: g.h1_relation(),
        has_mirrors: !mirror_directions.is_empty(),
        mirror_directions,
        has_sr_translations,
        glide_parities,
        ab_params: ab_params(&g, order),
        roth_label,
        unlabelled_reason,
        genus_tags,
    }
}
