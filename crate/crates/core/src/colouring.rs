//! Strand colourings, the patterns they produce, perfection, thin striping
//! and its partial inverse.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeaveError};
use crate::isometry::{PointOp, SignedIsometry};
use crate::lattice::LatticeUnit;
use crate::naming::{canonical_form, DesignName};
use crate::pattern::{lcm, Colour, PeriodicPattern, Role, StrandKind, StrandRef};
use crate::search::ParityUnionFind;
use crate::symmetry::{
    is_symmetry, partial_symmetry_group, translation_basis, strand_orbits, symmetry_group, AxisOrCentre, Direction,
    FeatureKind, PositionClass, SymmetryGroup,
};
use crate::topology::{fall_apart_mode, hangs_together, FallApartMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ColouringKind {
    Normal,
    ThinStripe(u8),
    ThickStripe(u8),
    Custom,
}

/// Periodic colours of the warps (by column) and wefts (by row).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrandColouring {
    pub warp_colours: Vec<Colour>,
    pub weft_colours: Vec<Colour>,
    pub kind: ColouringKind,
    /// Set when the colouring does not repeat with the order it was made for.
    pub flagged: bool,
}

impl StrandColouring {
    pub fn custom(warp_colours: Vec<Colour>, weft_colours: Vec<Colour>) -> Result<Self> {
        if warp_colours.is_empty() || weft_colours.is_empty() {
            return Err(WeaveError::Precondition("colour words must be nonempty".into()));
        }
        Ok(StrandColouring {
            warp_colours,
            weft_colours,
            kind: ColouringKind::Custom,
            flagged: false,
        })
    }

    #[inline]
    pub fn warp(&self, i: i64) -> Colour {
        self.warp_colours[i.rem_euclid(self.warp_colours.len() as i64) as usize]
    }

    #[inline]
    pub fn weft(&self, j: i64) -> Colour {
        self.weft_colours[j.rem_euclid(self.weft_colours.len() as i64) as usize]
    }

    pub fn strand(&self, s: StrandRef) -> Colour {
        match s.kind {
            StrandKind::Warp => self.warp(s.index as i64),
            StrandKind::Weft => self.weft(s.index as i64),
        }
    }

    /// Whether both colour words repeat with period `n`.
    pub fn fits_order(&self, n: usize) -> bool {
        n.is_multiple_of(self.warp_colours.len()) && n.is_multiple_of(self.weft_colours.len())
    }

    pub fn cell_class(&self, i: i64, j: i64) -> CellClass {
        if self.warp(i) == self.weft(j) {
            CellClass::Redundant
        } else {
            CellClass::Irredundant
        }
    }

    pub fn cell_classes(&self) -> CellClassMap {
        CellClassMap {
            colouring: self.clone(),
        }
    }
}

fn word(colours: &[Colour]) -> String {
    colours
        .iter()
        .map(|c| match c {
            Colour::Dark => 'D',
            Colour::Pale => 'P',
        })
        .collect()
}

impl fmt::Display for StrandColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "warps {}", word(&self.warp_colours))?;
        writeln!(f, "wefts {}", word(&self.weft_colours))
    }
}

fn parse_word(line: usize, w: &str) -> Result<Vec<Colour>> {
    let bad = |column: usize, message: String| WeaveError::Parse {
        line,
        column,
        message,
    };
    if w.is_empty() {
        return Err(bad(1, "empty colour word".into()));
    }
    w.chars()
        .enumerate()
        .map(|(k, c)| match c {
            'D' | 'd' => Ok(Colour::Dark),
            'P' | 'p' => Ok(Colour::Pale),
            other => Err(bad(k + 1, format!("unexpected {other:?} in colour word"))),
        })
        .collect()
}

impl FromStr for StrandColouring {
    type Err = WeaveError;

    /// Two lines `warps <word>` and `wefts <word>` over `D`/`P`, or one of
    /// `normal`, `thin 0|1`, `thick 0..3`.
    fn from_str(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with(';'))
            .collect();
        let bad = |line: usize, message: &str| WeaveError::Parse {
            line,
            column: 1,
            message: message.into(),
        };
        let Some(&(first_line, first)) = lines.first() else {
            return Err(bad(1, "empty colouring"));
        };
        let mut parts = first.split_whitespace();
        let head = parts.next().unwrap_or("");
        let arg = parts.next();
        let phase = |max: u8| -> Result<u8> {
            let p: u8 = arg
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| bad(first_line, "missing or invalid phase"))?;
            if p > max {
                return Err(bad(first_line, "phase out of range"));
            }
            Ok(p)
        };
        match head {
            "normal" => Ok(make_colouring(ColouringKind::Normal, 1)),
            "thin" => Ok(make_colouring(ColouringKind::ThinStripe(phase(1)?), 2)),
            "thick" => Ok(make_colouring(ColouringKind::ThickStripe(phase(3)?), 4)),
            "warps" | "wefts" => {
                let mut warps = None;
                let mut wefts = None;
                for &(n, l) in &lines {
                    let mut p = l.split_whitespace();
                    let key = p.next().unwrap_or("");
                    let w = p.next().unwrap_or("");
                    match key {
                        "warps" => warps = Some(parse_word(n, w)?),
                        "wefts" => wefts = Some(parse_word(n, w)?),
                        _ => return Err(bad(n, "expected `warps` or `wefts`")),
                    }
                }
                match (warps, wefts) {
                    (Some(a), Some(b)) => StrandColouring::custom(a, b),
                    _ => Err(bad(first_line, "both `warps` and `wefts` lines are required")),
                }
            }
            _ => Err(bad(first_line, "unknown colouring")),
        }
    }
}

/// Redundant cells are crossings of like-coloured strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellClass {
    Redundant,
    Irredundant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellClassMap {
    colouring: StrandColouring,
}

impl CellClassMap {
    pub fn classify(&self, i: i64, j: i64) -> CellClass {
        self.colouring.cell_class(i, j)
    }

    /// Redundant cells whose strands are both dark.
    pub fn is_dark_redundant(&self, i: i64, j: i64) -> bool {
        self.colouring.warp(i) == Colour::Dark && self.colouring.weft(j) == Colour::Dark
    }
}

const PD: [Colour; 2] = [Colour::Pale, Colour::Dark];
const DP: [Colour; 2] = [Colour::Dark, Colour::Pale];
const PPDD: [Colour; 4] = [Colour::Pale, Colour::Pale, Colour::Dark, Colour::Dark];

/// Thin phase 0 darkens odd warps and odd wefts, phase 1 odd warps and even
/// wefts. Thick phase `k` colours strand `i` by `PPDD[(i + k) % 4]` in both
/// directions. Colourings that do not repeat with period `n` are flagged.
pub fn make_colouring(kind: ColouringKind, n: usize) -> StrandColouring {
    let (warps, wefts): (Vec<Colour>, Vec<Colour>) = match kind {
        ColouringKind::Normal | ColouringKind::Custom => (vec![Colour::Dark], vec![Colour::Pale]),
        ColouringKind::ThinStripe(p) => (PD.to_vec(), if p % 2 == 0 { PD.to_vec() } else { DP.to_vec() }),
        ColouringKind::ThickStripe(p) => {
            let w: Vec<Colour> = (0..4).map(|i| PPDD[(i + p as usize) % 4]).collect();
            (w.clone(), w)
        }
    };
    let mut c = StrandColouring {
        warp_colours: warps,
        weft_colours: wefts,
        kind: if kind == ColouringKind::Custom { ColouringKind::Normal } else { kind },
        flagged: false,
    };
    c.flagged = n == 0 || !c.fits_order(n);
    c
}

fn pattern_dims(d: &PeriodicPattern, c: &StrandColouring) -> (usize, usize) {
    (
        lcm(d.width(), c.warp_colours.len()),
        lcm(d.height(), c.weft_colours.len()),
    )
}

/// The front view: each cell shows its uppermost strand.
pub fn obverse_pattern(d: &PeriodicPattern, c: &StrandColouring) -> PeriodicPattern {
    let (w, h) = pattern_dims(d, c);
    PeriodicPattern::from_fn(w, h, Role::Pattern, |i, j| match d.cell(i as i64, j as i64) {
        Colour::Dark => c.warp(i as i64),
        Colour::Pale => c.weft(j as i64),
    })
}

/// The back view seen in a mirror held behind the fabric: each cell shows
/// its lowermost strand, reflected left to right.
pub fn reverse_pattern(d: &PeriodicPattern, c: &StrandColouring) -> PeriodicPattern {
    let (w, h) = pattern_dims(d, c);
    PeriodicPattern::from_fn(w, h, Role::Pattern, |i, j| {
        let x = (w - 1 - i) as i64;
        match d.cell(x, j as i64) {
            Colour::Dark => c.weft(j as i64),
            Colour::Pale => c.warp(x),
        }
    })
}

/// Outcome of a perfection test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perfection {
    pub verdict: bool,
    /// The first symmetry found that mixes the strand colours.
    pub witness: Option<SignedIsometry>,
}

/// Image of a strand under `g` as an unreduced strand index.
fn strand_image(g: &SignedIsometry, kind: StrandKind, index: i64) -> (StrandKind, i64) {
    let cell = match kind {
        StrandKind::Warp => (index, 0),
        StrandKind::Weft => (0, index),
    };
    let (x, y) = g.map_cell(cell);
    match (kind, g.swaps_directions()) {
        (StrandKind::Warp, false) => (StrandKind::Warp, x),
        (StrandKind::Warp, true) => (StrandKind::Weft, y),
        (StrandKind::Weft, false) => (StrandKind::Weft, y),
        (StrandKind::Weft, true) => (StrandKind::Warp, x),
    }
}

fn colour_at(c: &StrandColouring, kind: StrandKind, index: i64) -> Colour {
    match kind {
        StrandKind::Warp => c.warp(index),
        StrandKind::Weft => c.weft(index),
    }
}

/// Whether `g` sends like-coloured strands to like-coloured strands,
/// uniformly preserving or uniformly exchanging the two colours.
pub fn permutes_colours(g: &SignedIsometry, c: &StrandColouring) -> bool {
    let span = lcm(c.warp_colours.len(), c.weft_colours.len()) as i64;
    let mut flip = None;
    for kind in [StrandKind::Warp, StrandKind::Weft] {
        for index in 0..span {
            let (k2, i2) = strand_image(g, kind, index);
            let f = colour_at(c, kind, index) != colour_at(c, k2, i2);
            match flip {
                None => flip = Some(f),
                Some(prev) if prev != f => return false,
                _ => {}
            }
        }
    }
    true
}

/// Symmetries to test: every element on the torus followed by the two
/// torus translations, which together generate the whole group.
fn generators(g: &SymmetryGroup) -> Vec<SignedIsometry> {
    let n = g.torus() as i64;
    let mut v = g.elements().to_vec();
    v.push(SignedIsometry::from_cells(PointOp::Id, (n, 0), false));
    v.push(SignedIsometry::from_cells(PointOp::Id, (0, n), false));
    v
}

/// Whether every symmetry of the design permutes the strand colours
/// consistently.
pub fn is_perfect(d: &PeriodicPattern, c: &StrandColouring) -> Perfection {
    let g = symmetry_group(d);
    let witness = generators(&g).into_iter().find(|e| !permutes_colours(e, c));
    Perfection {
        verdict: witness.is_none(),
        witness,
    }
}

/// Which thin phases colour the design perfectly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinStripability {
    pub phases: Vec<u8>,
    /// A symmetry that moves redundant cells onto irredundant ones.
    pub obstruction: Option<SignedIsometry>,
}

impl ThinStripability {
    pub fn is_stripable(&self) -> bool {
        !self.phases.is_empty()
    }
}

/// Parity class of the cell image: `i - j` even or odd.
fn diagonal_parity(g: &SignedIsometry, cell: (i64, i64)) -> i64 {
    let (x, y) = g.map_cell(cell);
    (x - y).rem_euclid(2)
}

/// Whether `g` maps the checkerboard of cells with `i - j` even onto itself.
pub fn preserves_thin_classes(g: &SignedIsometry) -> bool {
    let base = diagonal_parity(g, (0, 0));
    base == 0 && diagonal_parity(g, (1, 0)) == 1 && diagonal_parity(g, (0, 1)) == 1
}

/// Thin striping is perfect exactly when every symmetry keeps the
/// redundant cells redundant; the two phases share the same checkerboard,
/// so either both work or neither does.
pub fn stripable_thin(d: &PeriodicPattern) -> ThinStripability {
    let g = symmetry_group(d);
    let obstruction = generators(&g).into_iter().find(|e| !preserves_thin_classes(e));
    ThinStripability {
        phases: if obstruction.is_none() { vec![0, 1] } else { Vec::new() },
        obstruction,
    }
}

/// Whether the side-preserving subgroup is generated by its
/// glide-reflections and is transitive on strands.
pub fn glide_generated_transitive(g: &SymmetryGroup) -> bool {
    let h = g.side_preserving_subgroup();
    let n = h.torus();
    let glides: Vec<SignedIsometry> = h
        .elements()
        .iter()
        .filter(|e| e.point.is_reflection())
        .copied()
        .collect();
    if glides.is_empty() {
        return false;
    }
    let mut gens = glides.clone();
    gens.push(SignedIsometry::from_cells(PointOp::Id, (n as i64, 0), false));
    let closure = close_on_torus(n, &glides);
    closure.len() == h.order_on_torus() && strand_orbits(n, &gens).len() == 1
}

fn close_on_torus(n: usize, gens: &[SignedIsometry]) -> Vec<SignedIsometry> {
    let mut seen = std::collections::BTreeSet::from([SignedIsometry::IDENTITY]);
    let mut stack = vec![SignedIsometry::IDENTITY];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.compose(&x).reduced(n, n);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The element of a diagonal axis with the given glide.
fn axis_element(a: &AxisOrCentre) -> Option<SignedIsometry> {
    let (c, g) = (a.position.0, a.glide);
    match a.direction {
        Direction::DiagUp => Some(SignedIsometry::new(PointOp::MirDiagUp, (c + g, g - c), a.tau)),
        Direction::DiagDown => Some(SignedIsometry::new(PointOp::MirDiagDown, (c + g, c - g), a.tau)),
        _ => None,
    }
}

/// Whether a diagonal axis in mirror position runs through the redundant
/// cells of the colouring.
fn through_redundant(a: &AxisOrCentre, c: &StrandColouring) -> bool {
    let k = a.position.0;
    let cell = match a.direction {
        // X - Y = k through cell centres (2i+1, 2j+1) with i - j = k/2
        Direction::DiagUp => (k / 2, 0),
        // X + Y = k with i + j = k/2 - 1
        _ => (k / 2 - 1, 0),
    };
    c.cell_class(cell.0, cell.1) == CellClass::Redundant
}

/// How one side-preserving glide-reflection of a fabric reappears in the
/// striped pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisCorrespondence {
    pub axis: AxisOrCentre,
    pub through_redundant: bool,
    pub glide_deltas: i64,
    /// Predicted side reversal of the pattern's glide-reflection.
    pub predicted_tau: bool,
    pub holds: bool,
}

fn correspondences(g: &SymmetryGroup, c: &StrandColouring, pattern: &PeriodicPattern) -> Vec<AxisCorrespondence> {
    g.inventory()
        .iter()
        .filter(|a| {
            a.kind == FeatureKind::GlideReflection
                && !a.tau
                && a.direction.is_diagonal()
                && a.position_class == PositionClass::MirrorPosition
                && a.glide % 2 == 0
        })
        .filter_map(|a| {
            let element = axis_element(a)?;
            let through = through_redundant(a, c);
            let glide_deltas = a.glide / 2;
            let odd = glide_deltas % 2 == 1;
            // through with odd glide, or between with even glide, stays side-preserving
            let predicted_tau = through != odd;
            let image = SignedIsometry {
                tau: predicted_tau,
                ..element
            };
            Some(AxisCorrespondence {
                axis: *a,
                through_redundant: through,
                glide_deltas,
                predicted_tau,
                holds: is_symmetry(pattern, &image),
            })
        })
        .collect()
}

/// One thin striping of a fabric.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseReport {
    pub phase: u8,
    pub perfect: bool,
    pub pattern: PeriodicPattern,
    pub isonemal: bool,
    pub falls_apart: bool,
    pub name: Option<DesignName>,
    /// The printed catalogue name, where one is known.
    pub alias: Option<String>,
    pub correspondence: Vec<AxisCorrespondence>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StripeReport {
    pub stripable: bool,
    /// Whether the side-preserving subgroup is generated by glide-reflections
    /// and transitive on strands.
    pub glide_generated: bool,
    pub phases: Vec<PhaseReport>,
}

/// Both thin stripings of a design, each pattern analysed as a design.
pub fn stripe_analysis(d: &PeriodicPattern) -> StripeReport {
    let g = symmetry_group(d);
    let stripable = generators(&g).iter().all(preserves_thin_classes);
    let glide_generated = glide_generated_transitive(&g);
    let phases = (0..2u8)
        .map(|phase| {
            let c = make_colouring(ColouringKind::ThinStripe(phase), d.width());
            let pattern = obverse_pattern(d, &c).with_role(Role::Design).reduced();
            let isonemal = crate::symmetry::is_isonemal(&pattern);
            let falls_apart = !hangs_together(&pattern);
            let (name, alias) = if isonemal {
                match crate::catalogue::resolve_name(&pattern) {
                    Some((n, a)) => (Some(n), a),
                    None => (crate::naming::name_of_isonemal(&pattern, falls_apart).ok(), None),
                }
            } else {
                (None, None)
            };
            let correspondence = if stripable && glide_generated {
                correspondences(&g, &c, &obverse_pattern(d, &c))
            } else {
                Vec::new()
            };
            PhaseReport {
                phase,
                perfect: stripable,
                pattern,
                isonemal,
                falls_apart,
                name,
                alias,
                correspondence,
            }
        })
        .collect();
    StripeReport {
        stripable,
        glide_generated,
        phases,
    }
}

/// Why unstriping found no fabric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub reason: String,
    /// Lattice unit forced on any completion by the glide-reflections of
    /// the partial fabric, when one could be derived.
    pub forced_unit: Option<LatticeUnit>,
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        if let Some(u) = &self.forced_unit {
            write!(f, "; forced period rectangle {}", u.dimensions())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unstripe {
    Candidates(Vec<PeriodicPattern>),
    Failure(Diagnosis),
}

/// Largest number of free orbits filled exhaustively for one group.
const MAX_FREE_ORBITS: usize = 20;

/// Largest number of elements paired up as generators of candidate groups.
const MAX_GENERATORS: usize = 160;

struct Frame {
    torus: usize,
    pattern: PeriodicPattern,
    colouring: StrandColouring,
    partial: Vec<Option<Colour>>,
}

/// The colourings under which `p` shows a redundant checkerboard, with the
/// fabric cells they determine.
fn frames(p: &PeriodicPattern, n: usize) -> Vec<Frame> {
    let q = p.reduced().tiled(n, n);
    let mut out = Vec::new();
    for a in 0..2i64 {
        for b in 0..2i64 {
            let dark = (0..n as i64).all(|j| {
                (0..n as i64).all(|i| {
                    let (ei, ej) = ((i - a).rem_euclid(2) == 0, (j - b).rem_euclid(2) == 0);
                    match (ei, ej) {
                        (true, true) => q.cell(i, j) == Colour::Dark,
                        (false, false) => q.cell(i, j) == Colour::Pale,
                        _ => true,
                    }
                })
            });
            if !dark {
                continue;
            }
            let word = |off: i64| -> Vec<Colour> {
                (0..2).map(|k| if (k - off).rem_euclid(2) == 0 { Colour::Dark } else { Colour::Pale }).collect()
            };
            let colouring = StrandColouring {
                warp_colours: word(a),
                weft_colours: word(b),
                kind: ColouringKind::ThinStripe(((a + b) % 2) as u8),
                flagged: false,
            };
            let mut partial = Vec::with_capacity(n * n);
            for j in 0..n as i64 {
                for i in 0..n as i64 {
                    partial.push(match colouring.cell_class(i, j) {
                        CellClass::Redundant => None,
                        CellClass::Irredundant => {
                            // complemented where the weft is dark
                            Some(q.cell(i, j).flipped_if(colouring.weft(j) == Colour::Dark))
                        }
                    });
                }
            }
            out.push(Frame {
                torus: n,
                pattern: q.clone(),
                colouring,
                partial,
            });
        }
    }
    out
}

/// Whether cell `c` lies on the axis of the reflection `g`, up to the
/// translations of the torus.
fn cell_on_axis(g: &SignedIsometry, c: (i64, i64), n: i64) -> bool {
    let (x, y) = g.map_cell(c);
    let (dx, dy) = (x - c.0, y - c.1);
    match g.point {
        PointOp::MirDiagUp => (dx - dy).rem_euclid(n) == 0,
        PointOp::MirDiagDown => (dx + dy).rem_euclid(n) == 0,
        PointOp::MirX => dx.rem_euclid(n) == 0,
        PointOp::MirY => dy.rem_euclid(n) == 0,
        _ => false,
    }
}

fn class_preserving(g: &SignedIsometry, c: &StrandColouring) -> bool {
    [(0, 0), (1, 0), (0, 1), (1, 1)].iter().all(|&(i, j)| {
        let (x, y) = g.map_cell((i, j));
        c.cell_class(i, j) == c.cell_class(x, y)
    })
}

/// Cell parities forced by a group on a partially coloured torus, or the
/// first cell whose colour would have to differ from itself.
fn propagate(
    n: usize,
    elements: &[SignedIsometry],
    partial: &[Option<Colour>],
) -> std::result::Result<(ParityUnionFind, Vec<Option<bool>>), usize> {
    let nn = n as i64;
    let mut uf = ParityUnionFind::new(n * n);
    for g in elements {
        let flip = g.reverses_colour();
        for j in 0..nn {
            for i in 0..nn {
                let (x, y) = g.map_cell((i, j));
                let a = (j * nn + i) as usize;
                let b = (y.rem_euclid(nn) * nn + x.rem_euclid(nn)) as usize;
                if !uf.union(a, b, flip) {
                    return Err(a);
                }
            }
        }
    }
    let mut root_bit: Vec<Option<bool>> = vec![None; n * n];
    for (k, c) in partial.iter().enumerate() {
        if let Some(c) = c {
            let (r, par) = uf.find(k);
            let bit = c.bit() ^ par;
            match root_bit[r] {
                Some(b) if b != bit => return Err(k),
                _ => root_bit[r] = Some(bit),
            }
        }
    }
    Ok((uf, root_bit))
}

fn transitive(n: usize, elements: &[SignedIsometry]) -> bool {
    let mut gens = elements.to_vec();
    gens.push(SignedIsometry::from_cells(PointOp::Id, (n as i64, 0), false));
    gens.push(SignedIsometry::from_cells(PointOp::Id, (0, n as i64), false));
    strand_orbits(n, &gens).len() == 1
}

fn completions(frame: &Frame, elements: &[SignedIsometry]) -> Option<Vec<PeriodicPattern>> {
    let n = frame.torus;
    let (mut uf, root_bit) = propagate(n, elements, &frame.partial).ok()?;
    let mut roots: Vec<usize> = (0..n * n).map(|k| uf.find(k).0).filter(|&r| root_bit[r].is_none()).collect();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() > MAX_FREE_ORBITS {
        return None;
    }
    let cells: Vec<(usize, bool)> = (0..n * n).map(|k| uf.find(k)).collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << roots.len()) {
        let mut bits = root_bit.clone();
        for (k, &r) in roots.iter().enumerate() {
            bits[r] = Some((mask >> k) & 1 == 1);
        }
        let f = PeriodicPattern::from_fn(n, n, Role::Design, |i, j| {
            let (r, par) = cells[j * n + i];
            Colour::from_bit(bits[r].expect("every orbit coloured") ^ par)
        });
        if obverse_pattern(&f, &frame.colouring).cells() != frame.pattern.cells() {
            continue;
        }
        if crate::symmetry::is_isonemal(&f) {
            out.push(f.reduced());
        }
    }
    Some(out)
}

/// Which groups [`unstripe_with`] may impose on the formerly redundant cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum UnstripeSearch {
    /// Groups generated by side-preserving glide-reflections of the partial
    /// fabric whose axes are axes of the pattern, read back through the
    /// axis correspondence.
    #[default]
    Correspondence,
    /// Groups generated by one or two arbitrary class-preserving symmetries
    /// of the partial fabric.
    Broad,
}

impl FromStr for UnstripeSearch {
    type Err = WeaveError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "correspondence" => Ok(UnstripeSearch::Correspondence),
            "broad" => Ok(UnstripeSearch::Broad),
            _ => Err(WeaveError::Parse {
                line: 1,
                column: 1,
                message: format!("unknown unstripe search {s:?}"),
            }),
        }
    }
}

/// Fabrics whose thin striping shows `p`, found by colouring the formerly
/// redundant cells orbit by orbit under groups read back from the
/// symmetries of `p`.
pub fn unstripe(p: &PeriodicPattern) -> Result<Unstripe> {
    unstripe_with(p, None, UnstripeSearch::Correspondence)
}

/// As [`unstripe`], choosing the search and the torus: fabrics are sought
/// with period dividing `torus`, an even multiple of the periods of `p`
/// (by default the least one).
pub fn unstripe_with(p: &PeriodicPattern, torus: Option<usize>, search: UnstripeSearch) -> Result<Unstripe> {
    if fall_apart_mode(p) != FallApartMode::Thin {
        return Err(WeaveError::Precondition(
            "unstripe needs a design whose alternate strands lift off".into(),
        ));
    }
    let r = p.reduced();
    let n = torus.unwrap_or_else(|| lcm(lcm(r.width(), r.height()), 2));
    if n == 0 || !n.is_multiple_of(2) || !n.is_multiple_of(r.width()) || !n.is_multiple_of(r.height()) {
        return Err(WeaveError::Precondition(format!(
            "torus {n} is not an even multiple of the pattern's periods {}x{}",
            r.width(),
            r.height()
        )));
    }
    let mut found: Vec<PeriodicPattern> = Vec::new();
    let mut diagnosis: Option<Diagnosis> = None;
    for frame in &frames(p, n) {
        let partial_group = partial_symmetry_group(n, n, &frame.partial);
        let pool: Vec<SignedIsometry> = partial_group
            .elements()
            .iter()
            .filter(|g| class_preserving(g, &frame.colouring))
            .copied()
            .collect();
        let pattern = &frame.pattern;
        let glides: Vec<SignedIsometry> = pool
            .iter()
            .filter(|g| !g.tau && g.point.is_reflection())
            .filter(|g| {
                is_symmetry(pattern, &SignedIsometry { tau: false, ..**g })
                    || is_symmetry(pattern, &SignedIsometry { tau: true, ..**g })
            })
            .copied()
            .collect();
        let mut groups: Vec<Vec<SignedIsometry>> = vec![close_on_torus(n, &glides)];
        let gens = match search {
            UnstripeSearch::Correspondence => glides.clone(),
            UnstripeSearch::Broad => {
                groups.push(pool.clone());
                groups.push(pool.iter().filter(|g| !g.tau).copied().collect());
                // thinned when there are too many pairs to try
                let mut gens: Vec<SignedIsometry> = pool.iter().filter(|g| !g.is_translation()).copied().collect();
                if gens.len() > MAX_GENERATORS {
                    gens.retain(|g| g.point.is_reflection());
                }
                if gens.len() > MAX_GENERATORS {
                    gens = glides.clone();
                }
                gens.truncate(MAX_GENERATORS);
                gens
            }
        };
        for (k, g) in gens.iter().enumerate() {
            groups.push(close_on_torus(n, &[*g]));
            for h in &gens[k + 1..] {
                groups.push(close_on_torus(n, &[*g, *h]));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut tried_any = false;
        for group in &groups {
            if group.len() <= 1 || !seen.insert(group.clone()) || !transitive(n, group) {
                continue;
            }
            tried_any = true;
            if let Some(fs) = completions(frame, group) {
                found.extend(fs);
            }
        }
        if found.is_empty() && diagnosis.is_none() {
            let glide_group = close_on_torus(n, &glides);
            diagnosis = Some(diagnose(frame, &pool, &glide_group, tried_any));
        }
    }
    if found.is_empty() {
        return Ok(Unstripe::Failure(diagnosis.unwrap_or(Diagnosis {
            reason: "no redundant checkerboard found".into(),
            forced_unit: None,
        })));
    }
    found.sort_by_cached_key(|f| canonical_form(f).serialize());
    found.dedup_by(|a, b| canonical_form(a) == canonical_form(b));
    Ok(Unstripe::Candidates(found))
}

/// Colours a formerly redundant cell on an axis of side-preserving
/// glide-reflection and reports the translations of the partial fabric
/// that survive the colouring.
fn diagnose(frame: &Frame, pool: &[SignedIsometry], glide_group: &[SignedIsometry], tried: bool) -> Diagnosis {
    let n = frame.torus;
    let contradiction = propagate(n, pool, &frame.partial).is_err();
    let mut reason = String::from("no isonemal completion");
    if contradiction {
        reason.push_str("; the symmetries of the irredundant cells force a redundant cell to differ from itself");
    }
    if !tried {
        reason.push_str("; no candidate group is transitive on strands");
    }
    // a side-preserving glide-reflection with a formerly redundant cell on
    // its axis, joined by every translation of the partial fabric that
    // colours that cell consistently with the glide
    let forced = glide_group
        .iter()
        .filter(|g| g.point.is_reflection() && !g.tau)
        .find_map(|g| {
            (0..n * n).find(|&k| {
                let c = ((k % n) as i64, (k / n) as i64);
                frame.partial[k].is_none() && cell_on_axis(g, c, n as i64)
            })?;
            let mut gens = vec![*g];
            gens.extend(
                pool.iter()
                    .filter(|t| t.is_translation() && !t.tau)
                    .filter(|t| propagate(n, &[*g, **t], &frame.partial).is_ok()),
            );
            propagate(n, &gens, &frame.partial).ok()?;
            Some(gens)
        });
    let Some(gens) = forced else {
        return Diagnosis {
            reason,
            forced_unit: None,
        };
    };
    if !transitive(n, &gens) {
        reason.push_str("; the forced partial fabric is not transitive on strands");
    }
    let elements = close_on_torus(n, &gens);
    Diagnosis {
        reason,
        forced_unit: Some(LatticeUnit::from_basis(translation_basis(n, &elements, false))),
    }
}
