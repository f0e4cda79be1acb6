//! Symmetry groups of designs.
//!
//! A group is computed on a square torus of `N x N` cells, `N` the lcm of the
//! design's primitive periods, so every direction-swapping operation is
//! available. Elements are kept with translations reduced modulo `2N` in
//! doubled coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::isometry::{PointOp, SignedIsometry};
use crate::lattice::{self, LatticeUnit};
use crate::pattern::{lcm, Colour, PeriodicPattern, StrandKind, StrandRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureKind {
    Mirror,
    GlideReflection,
    HalfTurn,
    QuarterTurn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    DiagUp,
    DiagDown,
    Horizontal,
    Vertical,
    None,
}

impl Direction {
    pub fn is_diagonal(self) -> bool {
        matches!(self, Direction::DiagUp | Direction::DiagDown)
    }

}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PositionClass {
    /// Through cell centres and corners (diagonal axes), or through cell
    /// centres (axis-parallel lines).
    MirrorPosition,
    /// Through cell sides only.
    SidePosition,
    /// Rotation centre at a cell centre.
    CellCentre,
    CellCorner,
    SideMidpoint,
}

/// An axis of reflection or glide-reflection, or a centre of rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxisOrCentre {
    pub kind: FeatureKind,
    pub tau: bool,
    pub direction: Direction,
    /// For axes, the line constant in doubled coordinates modulo `2N`:
    /// `X - Y` (DiagUp), `X + Y` (DiagDown), `X` (Vertical) or `Y`
    /// (Horizontal); the second component is unused. For centres, the
    /// centre point in doubled coordinates.
    pub position: (i64, i64),
    /// Glide length; for diagonal axes in units of half the cell diagonal,
    /// for axis-parallel ones in half cells. Zero for mirrors and centres.
    pub glide: i64,
    pub position_class: PositionClass,
}

impl AxisOrCentre {
    pub fn is_axis(&self) -> bool {
        matches!(self.kind, FeatureKind::Mirror | FeatureKind::GlideReflection)
    }

    /// Glide as a whole multiple of the cell diagonal, when it is one.
    pub fn glide_in_deltas(&self) -> Option<i64> {
        (self.direction.is_diagonal() && self.glide % 2 == 0).then_some(self.glide / 2)
    }

    /// An odd multiple of half a cell diagonal.
    pub fn has_fractional_glide(&self) -> bool {
        self.direction.is_diagonal() && self.glide % 2 == 1
    }
}

impl fmt::Display for AxisOrCentre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau = if self.tau { "+tau" } else { "" };
        match self.kind {
            FeatureKind::Mirror | FeatureKind::GlideReflection => {
                let name = if self.kind == FeatureKind::Mirror { "mirror" } else { "glide" };
                let line = match self.direction {
                    Direction::DiagUp => format!("X-Y={}", self.position.0),
                    Direction::DiagDown => format!("X+Y={}", self.position.0),
                    Direction::Vertical => format!("X={}", self.position.0),
                    Direction::Horizontal => format!("Y={}", self.position.0),
                    Direction::None => String::new(),
                };
                write!(f, "{name}{tau} {line}")?;
                if self.kind == FeatureKind::GlideReflection {
                    if self.direction.is_diagonal() {
                        write!(f, " glide={}/2δ", self.glide)?;
                    } else {
                        write!(f, " glide={}/2", self.glide)?;
                    }
                }
                write!(f, " {:?}", self.position_class)
            }
            FeatureKind::HalfTurn | FeatureKind::QuarterTurn => {
                let name = if self.kind == FeatureKind::HalfTurn { "half-turn" } else { "quarter-turn" };
                write!(
                    f,
                    "{name}{tau} at ({},{}) {:?}",
                    self.position.0, self.position.1, self.position_class
                )
            }
        }
    }
}

/// Plane crystallographic type of the projection of a group (tau ignored).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrystalType {
    P1,
    P2,
    Pg,
    Pm,
    Cm,
    Pgg,
    Pmg,
    Pmm,
    Cmm,
    P4,
    Other,
}

impl CrystalType {
    pub fn label(self) -> &'static str {
        match self {
            CrystalType::P1 => "p1",
            CrystalType::P2 => "p2",
            CrystalType::Pg => "pg",
            CrystalType::Pm => "pm",
            CrystalType::Cm => "cm",
            CrystalType::Pgg => "pgg",
            CrystalType::Pmg => "pmg",
            CrystalType::Pmm => "pmm",
            CrystalType::Cmm => "cmm",
            CrystalType::P4 => "p4",
            CrystalType::Other => "other",
        }
    }
}

impl fmt::Display for CrystalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupRelation {
    /// No side-reversing operations: the side-preserving subgroup is the group.
    Equal,
    /// Index two and of a different crystallographic type.
    ProperSubgroup,
    /// Index two but of the same crystallographic type.
    SameTypeOnly,
}

/// A symmetry group on an `N x N` torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    torus: usize,
    elements: Vec<SignedIsometry>,
    lattice: [(i64, i64); 2],
    coset_reps: Vec<SignedIsometry>,
    inventory: Vec<AxisOrCentre>,
    crystal_type: CrystalType,
}

impl SymmetryGroup {
    /// Builds the group from all of its elements on the `torus x torus`
    /// torus. The element set must be closed and contain the identity.
    pub fn from_elements(torus: usize, elements: impl IntoIterator<Item = SignedIsometry>) -> Self {
        let elements: BTreeSet<SignedIsometry> = elements
            .into_iter()
            .map(|g| g.reduced(torus, torus))
            .collect();
        let elements: Vec<SignedIsometry> = elements.into_iter().collect();
        let n = torus as i64;
        let mut gens = vec![(n, 0), (0, n)];
        gens.extend(
            elements
                .iter()
                .filter(|g| g.is_translation() && !g.tau)
                .map(|g| (g.translation.0 / 2, g.translation.1 / 2)),
        );
        let hnf = lattice::hermite_basis(&gens);
        let lattice = lattice::reduced_basis(hnf);
        let lattice = [(2 * lattice[0].0, 2 * lattice[0].1), (2 * lattice[1].0, 2 * lattice[1].1)];

        let mut reps: BTreeSet<SignedIsometry> = BTreeSet::new();
        for g in &elements {
            let t = lattice::reduce_mod((g.translation.0 / 2, g.translation.1 / 2), &hnf);
            reps.insert(SignedIsometry::from_cells(g.point, t, g.tau));
        }
        let inventory = derive_inventory(torus, &elements);
        let crystal_type = classify(torus, &elements);
        SymmetryGroup {
            torus,
            elements,
            lattice,
            coset_reps: reps.into_iter().collect(),
            inventory,
            crystal_type,
        }
    }

    pub fn torus(&self) -> usize {
        self.torus
    }

    pub fn elements(&self) -> &[SignedIsometry] {
        &self.elements
    }

    pub fn order_on_torus(&self) -> usize {
        self.elements.len()
    }

    /// Reduced basis of the side-preserving translations, doubled coordinates.
    pub fn lattice(&self) -> [(i64, i64); 2] {
        self.lattice
    }

    /// Representatives of the group modulo its side-preserving translations,
    /// including the identity and any side-reversing translation.
    pub fn coset_reps(&self) -> &[SignedIsometry] {
        &self.coset_reps
    }

    pub fn inventory(&self) -> &[AxisOrCentre] {
        &self.inventory
    }

    pub fn crystal_type(&self) -> CrystalType {
        self.crystal_type
    }

    pub fn contains(&self, g: &SignedIsometry) -> bool {
        self.elements
            .binary_search(&g.reduced(self.torus, self.torus))
            .is_ok()
    }

    pub fn has_side_reversal(&self) -> bool {
        self.elements.iter().any(|g| g.tau)
    }

    /// Translations that reverse sides (combined with tau).
    pub fn side_reversing_translations(&self) -> impl Iterator<Item = &SignedIsometry> {
        self.elements.iter().filter(|g| g.is_translation() && g.tau)
    }

    pub fn has_quarter_turns(&self) -> bool {
        self.elements.iter().any(|g| g.point.is_quarter_turn())
    }

    pub fn has_half_turns(&self) -> bool {
        self.elements.iter().any(|g| g.point == PointOp::R180)
    }

    pub fn has_mirrors(&self) -> bool {
        self.inventory.iter().any(|f| f.kind == FeatureKind::Mirror)
    }

    /// Directions of all reflection and glide-reflection axes.
    pub fn axis_directions(&self) -> BTreeSet<Direction> {
        self.inventory
            .iter()
            .filter(|f| f.is_axis())
            .map(|f| f.direction)
            .collect()
    }

    /// The side-preserving subgroup (H₁ when `self` is G₁).
    pub fn side_preserving_subgroup(&self) -> SymmetryGroup {
        SymmetryGroup::from_elements(self.torus, self.elements.iter().copied().filter(|g| !g.tau))
    }

    /// Index of the side-preserving subgroup: 1 or 2.
    pub fn side_preserving_index(&self) -> usize {
        if self.has_side_reversal() {
            2
        } else {
            1
        }
    }

    pub fn h1_relation(&self) -> SubgroupRelation {
        if !self.has_side_reversal() {
            SubgroupRelation::Equal
        } else if self.side_preserving_subgroup().crystal_type == self.crystal_type {
            SubgroupRelation::SameTypeOnly
        } else {
            SubgroupRelation::ProperSubgroup
        }
    }

    /// Image of a strand of the torus under `g`.
    pub fn strand_image(&self, g: &SignedIsometry, s: StrandRef) -> StrandRef {
        strand_image(self.torus, g, s)
    }

    /// Orbits of the group on the `2N` strands of the torus.
    pub fn strand_orbits(&self) -> Vec<Vec<StrandRef>> {
        strand_orbits(self.torus, &self.elements)
    }

    pub fn is_transitive_on_strands(&self) -> bool {
        self.strand_orbits().len() == 1
    }

    /// Primitive lattice unit of all translations of the group (side-reversing
    /// ones included), as drawn for a symmetry group.
    pub fn lattice_unit(&self) -> LatticeUnit {
        LatticeUnit::from_basis(translation_basis(self.torus, &self.elements, true))
    }

    /// Primitive unit of the side-preserving translations only.
    pub fn side_preserving_lattice_unit(&self) -> LatticeUnit {
        LatticeUnit::from_basis(translation_basis(self.torus, &self.elements, false))
    }

    /// One line per coset representative.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for g in &self.coset_reps {
            out.push_str(&format!("{g}"));
            if let Some(f) = feature_of(self.torus, g).first() {
                out.push_str(&format!("  [{f}]"));
            }
            out.push('\n');
        }
        out
    }
}

/// Basis (cell units) of the translations of the group, optionally including
/// side-reversing ones.
pub(crate) fn translation_basis(
    torus: usize,
    elements: &[SignedIsometry],
    with_tau: bool,
) -> [(i64, i64); 2] {
    let n = torus as i64;
    let mut gens = vec![(n, 0), (0, n)];
    gens.extend(
        elements
            .iter()
            .filter(|g| g.is_translation() && (with_tau || !g.tau))
            .map(|g| (g.translation.0 / 2, g.translation.1 / 2)),
    );
    lattice::reduced_basis(lattice::hermite_basis(&gens))
}

pub(crate) fn strand_image(torus: usize, g: &SignedIsometry, s: StrandRef) -> StrandRef {
    let n = torus as i64;
    let cell = match s.kind {
        StrandKind::Warp => (s.index as i64, 0),
        StrandKind::Weft => (0, s.index as i64),
    };
    let (i, j) = g.map_cell(cell);
    let kind = if g.swaps_directions() {
        match s.kind {
            StrandKind::Warp => StrandKind::Weft,
            StrandKind::Weft => StrandKind::Warp,
        }
    } else {
        s.kind
    };
    match kind {
        StrandKind::Warp => StrandRef::warp(i.rem_euclid(n) as usize),
        StrandKind::Weft => StrandRef::weft(j.rem_euclid(n) as usize),
    }
}

fn strand_slot(torus: usize, s: StrandRef) -> usize {
    match s.kind {
        StrandKind::Warp => s.index,
        StrandKind::Weft => torus + s.index,
    }
}

fn slot_strand(torus: usize, k: usize) -> StrandRef {
    if k < torus {
        StrandRef::warp(k)
    } else {
        StrandRef::weft(k - torus)
    }
}

pub(crate) fn strand_orbits(torus: usize, generators: &[SignedIsometry]) -> Vec<Vec<StrandRef>> {
    let mut uf = UnionFind::new(2 * torus);
    for g in generators {
        for k in 0..2 * torus {
            let s = slot_strand(torus, k);
            uf.union(k, strand_slot(torus, strand_image(torus, g, s)));
        }
    }
    let mut groups: BTreeMap<usize, Vec<StrandRef>> = BTreeMap::new();
    for k in 0..2 * torus {
        groups.entry(uf.find(k)).or_default().push(slot_strand(torus, k));
    }
    groups.into_values().collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Every lift of a torus element that moves its axis or centre to a
/// different position modulo the torus.
fn lifts(torus: usize, g: &SignedIsometry) -> [SignedIsometry; 4] {
    let m = 2 * torus as i64;
    let shift = |dx: i64, dy: i64| SignedIsometry {
        translation: (g.translation.0 + dx, g.translation.1 + dy),
        ..*g
    };
    [shift(0, 0), shift(m, 0), shift(0, m), shift(m, m)]
}

fn centre_class(c: (i64, i64)) -> PositionClass {
    match (c.0.rem_euclid(2), c.1.rem_euclid(2)) {
        (1, 1) => PositionClass::CellCentre,
        (0, 0) => PositionClass::CellCorner,
        _ => PositionClass::SideMidpoint,
    }
}

/// Axis line constant and glide of a reflection-type element, before any
/// reduction. Glides are along (1,1), (1,-1), (0,1), (1,0) respectively.
fn axis_of(g: &SignedIsometry) -> Option<(Direction, i64, i64)> {
    let (tx, ty) = g.translation;
    match g.point {
        PointOp::MirDiagUp => Some((Direction::DiagUp, (tx - ty) / 2, (tx + ty) / 2)),
        PointOp::MirDiagDown => Some((Direction::DiagDown, (tx + ty) / 2, (tx - ty) / 2)),
        PointOp::MirX => Some((Direction::Vertical, tx / 2, ty)),
        PointOp::MirY => Some((Direction::Horizontal, ty / 2, tx)),
        _ => None,
    }
}

fn centre_of(g: &SignedIsometry) -> Option<(i64, i64)> {
    let (tx, ty) = g.translation;
    match g.point {
        PointOp::R180 => Some((tx / 2, ty / 2)),
        PointOp::R90 => Some(((tx - ty) / 2, (tx + ty) / 2)),
        PointOp::R270 => Some(((tx + ty) / 2, (ty - tx) / 2)),
        _ => None,
    }
}

fn axis_class(direction: Direction, c: i64) -> PositionClass {
    let through_centres = if direction.is_diagonal() {
        c.rem_euclid(2) == 0
    } else {
        c.rem_euclid(2) == 1
    };
    if through_centres {
        PositionClass::MirrorPosition
    } else {
        PositionClass::SidePosition
    }
}

fn wrap_glide(g: i64, m: i64) -> i64 {
    let r = g.rem_euclid(m);
    r.min(m - r)
}

/// Features of a single element (all lifts on the torus).
fn feature_of(torus: usize, g: &SignedIsometry) -> Vec<AxisOrCentre> {
    let m = 2 * torus as i64;
    let mut out = Vec::new();
    for lift in lifts(torus, g) {
        if let Some((dir, c, glide)) = axis_of(&lift) {
            let c = c.rem_euclid(m);
            let glide = wrap_glide(glide, m);
            out.push(AxisOrCentre {
                kind: if glide == 0 { FeatureKind::Mirror } else { FeatureKind::GlideReflection },
                tau: g.tau,
                direction: dir,
                position: (c, 0),
                glide,
                position_class: axis_class(dir, c),
            });
        } else if let Some(c) = centre_of(&lift) {
            let c = (c.0.rem_euclid(m), c.1.rem_euclid(m));
            out.push(AxisOrCentre {
                kind: if g.point == PointOp::R180 { FeatureKind::HalfTurn } else { FeatureKind::QuarterTurn },
                tau: g.tau,
                direction: Direction::None,
                position: c,
                glide: 0,
                position_class: centre_class(c),
            });
        }
    }
    out.sort();
    out.dedup();
    out
}

fn derive_inventory(torus: usize, elements: &[SignedIsometry]) -> Vec<AxisOrCentre> {
    // (direction, line, tau) -> least glide
    let mut axes: BTreeMap<(Direction, i64, bool), i64> = BTreeMap::new();
    let mut centres: BTreeMap<((i64, i64), bool), FeatureKind> = BTreeMap::new();
    for g in elements {
        for f in feature_of(torus, g) {
            if f.is_axis() {
                let e = axes.entry((f.direction, f.position.0, f.tau)).or_insert(f.glide);
                *e = (*e).min(f.glide);
            } else {
                let e = centres.entry((f.position, f.tau)).or_insert(f.kind);
                if f.kind == FeatureKind::QuarterTurn {
                    *e = FeatureKind::QuarterTurn;
                }
            }
        }
    }
    let quarter_centres: BTreeSet<(i64, i64)> = centres
        .iter()
        .filter(|(_, k)| **k == FeatureKind::QuarterTurn)
        .map(|((c, _), _)| *c)
        .collect();
    let mut out: Vec<AxisOrCentre> = axes
        .into_iter()
        .map(|((direction, c, tau), glide)| AxisOrCentre {
            kind: if glide == 0 { FeatureKind::Mirror } else { FeatureKind::GlideReflection },
            tau,
            direction,
            position: (c, 0),
            glide,
            position_class: axis_class(direction, c),
        })
        .collect();
    out.extend(
        centres
            .into_iter()
            .filter(|((c, _), k)| *k == FeatureKind::QuarterTurn || !quarter_centres.contains(c))
            .map(|((c, tau), kind)| AxisOrCentre {
                kind,
                tau,
                direction: Direction::None,
                position: c,
                glide: 0,
                position_class: centre_class(c),
            }),
    );
    out.sort();
    out
}

/// Crystallographic type of the projection of the element set (tau ignored).
fn classify(torus: usize, elements: &[SignedIsometry]) -> CrystalType {
    let mut lines: BTreeMap<(Direction, i64), i64> = BTreeMap::new();
    for g in elements {
        for f in feature_of(torus, g) {
            if f.is_axis() {
                let e = lines.entry((f.direction, f.position.0)).or_insert(f.glide);
                *e = (*e).min(f.glide);
            }
        }
    }
    let quarter = elements.iter().any(|g| g.point.is_quarter_turn());
    let half = elements.iter().any(|g| g.point == PointOp::R180);
    let directions: BTreeSet<Direction> = lines.keys().map(|(d, _)| *d).collect();
    if quarter {
        return if directions.is_empty() { CrystalType::P4 } else { CrystalType::Other };
    }
    let mirror_in = |d: Direction| lines.iter().any(|((dd, _), g)| *dd == d && *g == 0);
    let glide_line_in = |d: Direction| lines.iter().any(|((dd, _), g)| *dd == d && *g != 0);
    match directions.len() {
        0 => {
            if half {
                CrystalType::P2
            } else {
                CrystalType::P1
            }
        }
        1 => {
            let d = *directions.iter().next().unwrap();
            match (mirror_in(d), glide_line_in(d)) {
                (true, true) => CrystalType::Cm,
                (true, false) => CrystalType::Pm,
                _ => CrystalType::Pg,
            }
        }
        2 => {
            let ds: Vec<Direction> = directions.iter().copied().collect();
            let mirrors = ds.iter().filter(|&&d| mirror_in(d)).count();
            let glides = ds.iter().any(|&d| glide_line_in(d));
            match (mirrors, glides) {
                (2, true) => CrystalType::Cmm,
                (2, false) => CrystalType::Pmm,
                (1, _) => CrystalType::Pmg,
                _ => CrystalType::Pgg,
            }
        }
        _ => CrystalType::Other,
    }
}

/// Cells of a square torus labelled 0 (dark), 1 (pale) or 2 (neutral);
/// complementation fixes neutral cells.
pub(crate) fn label_symmetries(torus: usize, labels: &[u8]) -> Vec<SignedIsometry> {
    let n = torus as i64;
    let at = |i: i64, j: i64| labels[(j.rem_euclid(n) * n + i.rem_euclid(n)) as usize];
    let flip = |l: u8, f: bool| if f && l < 2 { 1 - l } else { l };
    let mut out = Vec::new();
    for op in PointOp::ALL {
        let base = SignedIsometry::new(op, (0, 0), false);
        // geometric image under the bare point operation
        let inv = base.inverse();
        let image: Vec<u8> = (0..n * n)
            .map(|k| {
                let (si, sj) = inv.map_cell((k % n, k / n));
                at(si, sj)
            })
            .collect();
        let img = |i: i64, j: i64| image[(j.rem_euclid(n) * n + i.rem_euclid(n)) as usize];
        for b in 0..n {
            for a in 0..n {
                for reverse in [false, true] {
                    let ok = (0..n).all(|j| (0..n).all(|i| flip(img(i - a, j - b), reverse) == at(i, j)));
                    if ok {
                        let tau = reverse ^ op.swaps_directions();
                        out.push(SignedIsometry::from_cells(op, (a, b), tau));
                    }
                }
            }
        }
    }
    out
}

fn labels_of(p: &PeriodicPattern, torus: usize) -> Vec<u8> {
    let mut labels = Vec::with_capacity(torus * torus);
    for j in 0..torus as i64 {
        for i in 0..torus as i64 {
            labels.push(match p.cell(i, j) {
                Colour::Dark => 0,
                Colour::Pale => 1,
            });
        }
    }
    labels
}

/// Side of the square torus used for the group of `p`.
pub fn torus_size(p: &PeriodicPattern) -> usize {
    let (w, h) = p.primitive_periods();
    lcm(w, h)
}

/// True iff `g` maps the design onto itself, complementing when `g`
/// reverses colour.
pub fn is_symmetry(p: &PeriodicPattern, g: &SignedIsometry) -> bool {
    if !g.is_cell_aligned() {
        return false;
    }
    let flip = g.reverses_colour();
    let (w, h) = (p.width() as i64, p.height() as i64);
    let (w, h) = if g.swaps_directions() {
        let n = lcm(w as usize, h as usize) as i64;
        (n, n)
    } else {
        (w, h)
    };
    (0..h).all(|j| {
        (0..w).all(|i| {
            let (x, y) = g.map_cell((i, j));
            p.cell(x, y) == p.cell(i, j).flipped_if(flip)
        })
    })
}

/// The full symmetry group G₁ of a design.
pub fn symmetry_group(p: &PeriodicPattern) -> SymmetryGroup {
    let torus = torus_size(p);
    let labels = labels_of(p, torus);
    SymmetryGroup::from_elements(torus, label_symmetries(torus, &labels))
}

/// G₁ for a grid with neutral (unassigned) cells: `None` cells must map to
/// `None` cells.
pub fn partial_symmetry_group(width: usize, height: usize, cells: &[Option<Colour>]) -> SymmetryGroup {
    let torus = lcm(width, height);
    let mut labels = Vec::with_capacity(torus * torus);
    for j in 0..torus {
        for i in 0..torus {
            labels.push(match cells[(j % height) * width + i % width] {
                Some(Colour::Dark) => 0,
                Some(Colour::Pale) => 1,
                None => 2,
            });
        }
    }
    SymmetryGroup::from_elements(torus, label_symmetries(torus, &labels))
}

/// True iff the symmetry group of the design is transitive on strands.
pub fn is_isonemal(p: &PeriodicPattern) -> bool {
    symmetry_group(p).is_transitive_on_strands()
}

/// The side-preserving subgroup H₁ of `g`.
pub fn side_preserving_subgroup(g: &SymmetryGroup) -> SymmetryGroup {
    g.side_preserving_subgroup()
}

pub fn crystal_type(g: &SymmetryGroup) -> CrystalType {
    g.crystal_type()
}

/// Lattice-unit description of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeUnits {
    pub unit: LatticeUnit,
    /// For groups with quarter-turns: the two kinds of centre at which the
    /// alternative square units may be anchored (doubled coordinates).
    pub alternates: Vec<(i64, i64)>,
}

pub fn lattice_units(g: &SymmetryGroup) -> LatticeUnits {
    let unit = g.lattice_unit();
    let mut alternates = Vec::new();
    if g.has_quarter_turns() {
        let mut seen = BTreeSet::new();
        for f in g.inventory() {
            if f.kind == FeatureKind::QuarterTurn && seen.insert((f.tau, f.position_class)) {
                alternates.push(f.position);
            }
        }
    }
    LatticeUnits { unit, alternates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{parse_pattern, Role};

    fn plain() -> PeriodicPattern {
        parse_pattern("#-\n-#\n").unwrap()
    }

    #[test]
    fn translation_by_one_with_tau_is_plain_weave_symmetry() {
        let g = SignedIsometry::translation_by((1, 0), true);
        assert!(is_symmetry(&plain(), &g));
        assert!(!is_symmetry(&plain(), &SignedIsometry::translation_by((1, 0), false)));
    }

    #[test]
    fn all_dark_has_every_point_part() {
        let p = PeriodicPattern::uniform(1, 1, Colour::Dark, Role::Design);
        let g = symmetry_group(&p);
        let ops: BTreeSet<PointOp> = g.elements().iter().map(|e| e.point).collect();
        assert_eq!(ops.len(), 8);
        assert_eq!(g.crystal_type(), CrystalType::Other);
        assert_eq!(lattice_units(&g).unit.area, 1);
    }

    #[test]
    fn translations_only_is_p1() {
        let g = SymmetryGroup::from_elements(3, [SignedIsometry::IDENTITY]);
        assert_eq!(g.crystal_type(), CrystalType::P1);
    }

    #[test]
    fn h1_has_index_at_most_two_and_no_mirrors() {
        let g = symmetry_group(&plain());
        let h = g.side_preserving_subgroup();
        assert_eq!(g.order_on_torus(), 2 * h.order_on_torus());
        // plain weave is exceptional: only axis-parallel mirrors survive in H₁
        assert!(h
            .inventory()
            .iter()
            .all(|f| f.kind != FeatureKind::Mirror || !f.direction.is_diagonal()));
    }

    #[test]
    fn group_closure_on_plain_weave() {
        let g = symmetry_group(&plain());
        for a in g.elements() {
            for b in g.elements() {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }
}
