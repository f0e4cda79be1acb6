//! Doubly periodic two-colour cell grids.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeaveError};
use crate::isometry::SignedIsometry;
use crate::word::StrandWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    Dark,
    Pale,
}

impl Colour {
    #[inline]
    pub fn complement(self) -> Colour {
        match self {
            Colour::Dark => Colour::Pale,
            Colour::Pale => Colour::Dark,
        }
    }

    /// Binary-index bit: pale cells are 1, dark cells 0.
    #[inline]
    pub fn bit(self) -> bool {
        self == Colour::Pale
    }

    #[inline]
    pub fn from_bit(pale: bool) -> Colour {
        if pale {
            Colour::Pale
        } else {
            Colour::Dark
        }
    }

    #[inline]
    pub fn flipped_if(self, flip: bool) -> Colour {
        if flip {
            self.complement()
        } else {
            self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Colour::Dark => '#',
            Colour::Pale => '-',
        }
    }
}

/// How a grid is to be read. A design is a pattern in which dark means the
/// warp is uppermost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Pattern,
    Design,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrandKind {
    Warp,
    Weft,
}

/// A warp (column) or weft (row), index reduced modulo the relevant period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrandRef {
    pub kind: StrandKind,
    pub index: usize,
}

impl StrandRef {
    pub fn warp(index: usize) -> Self {
        StrandRef {
            kind: StrandKind::Warp,
            index,
        }
    }

    pub fn weft(index: usize) -> Self {
        StrandRef {
            kind: StrandKind::Weft,
            index,
        }
    }
}

impl fmt::Display for StrandRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StrandKind::Warp => write!(f, "warp{}", self.index),
            StrandKind::Weft => write!(f, "weft{}", self.index),
        }
    }
}

/// Result of [`PeriodicPattern::order_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderReport {
    /// Common strand period, or the lcm of all strand periods when they differ.
    pub order: usize,
    pub uniform: bool,
}

/// A two-colour grid of `width x height` cells extended periodically to the
/// whole plane. Cell `(i, j)` is column `i`, row `j`; row 0 is at the bottom.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicPattern {
    width: usize,
    height: usize,
    /// Row-major, `cells[j * width + i]`.
    cells: Vec<Colour>,
    role: Role,
}

impl fmt::Debug for PeriodicPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PeriodicPattern {}x{} {:?}", self.width, self.height, self.role)?;
        f.write_str(&self.rows_top_down().join("\n"))
    }
}

impl PeriodicPattern {
    pub fn new(width: usize, height: usize, cells: Vec<Colour>, role: Role) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(WeaveError::Parse {
                line: 0,
                column: 0,
                message: "pattern dimensions must be positive".into(),
            });
        }
        if cells.len() != width * height {
            return Err(WeaveError::Precondition(format!(
                "expected {} cells, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(PeriodicPattern {
            width,
            height,
            cells,
            role,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        role: Role,
        mut f: impl FnMut(usize, usize) -> Colour,
    ) -> Self {
        assert!(width > 0 && height > 0, "pattern dimensions must be positive");
        let mut cells = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                cells.push(f(i, j));
            }
        }
        PeriodicPattern {
            width,
            height,
            cells,
            role,
        }
    }

    pub fn uniform(width: usize, height: usize, colour: Colour, role: Role) -> Self {
        PeriodicPattern::from_fn(width, height, role, |_, _| colour)
    }

    /// Builds a design from rows written top row first, `'#'` dark and `'-'` pale.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        parse_pattern(&rows.join("\n"))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn cells(&self) -> &[Colour] {
        &self.cells
    }

    /// Colour at any integer position, by periodicity.
    #[inline]
    pub fn cell(&self, i: i64, j: i64) -> Colour {
        let i = i.rem_euclid(self.width as i64) as usize;
        let j = j.rem_euclid(self.height as i64) as usize;
        self.cells[j * self.width + i]
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Colour {
        self.cells[j * self.width + i]
    }

    pub fn dark_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == Colour::Dark).count()
    }

    /// Fraction of dark cells as a reduced `(numerator, denominator)` pair.
    pub fn dark_fraction(&self) -> (usize, usize) {
        let n = self.dark_count();
        let d = self.cells.len();
        let g = gcd(n, d).max(1);
        (n / g, d / g)
    }

    pub fn complement(&self) -> PeriodicPattern {
        PeriodicPattern {
            cells: self.cells.iter().map(|c| c.complement()).collect(),
            ..self.clone()
        }
    }

    /// Repeats the pattern to fill a `width x height` rectangle; both must be
    /// multiples of the current periods.
    pub fn tiled(&self, width: usize, height: usize) -> PeriodicPattern {
        assert!(width.is_multiple_of(self.width) && height.is_multiple_of(self.height));
        PeriodicPattern::from_fn(width, height, self.role, |i, j| self.cell(i as i64, j as i64))
    }

    /// Smallest horizontal and vertical periods.
    pub fn primitive_periods(&self) -> (usize, usize) {
        let w = divisors(self.width)
            .into_iter()
            .find(|&d| (0..self.height).all(|j| (0..self.width).all(|i| self.at(i, j) == self.at((i + d) % self.width, j))))
            .unwrap_or(self.width);
        let h = divisors(self.height)
            .into_iter()
            .find(|&d| (0..self.height).all(|j| (0..self.width).all(|i| self.at(i, j) == self.at(i, (j + d) % self.height))))
            .unwrap_or(self.height);
        (w, h)
    }

    /// The same infinite pattern stored over its smallest period rectangle.
    pub fn reduced(&self) -> PeriodicPattern {
        let (w, h) = self.primitive_periods();
        if (w, h) == (self.width, self.height) {
            return self.clone();
        }
        PeriodicPattern::from_fn(w, h, self.role, |i, j| self.at(i, j))
    }

    /// Translates by whole cells: the result has `result(i + dx, j + dy) = self(i, j)`.
    pub fn shifted(&self, dx: i64, dy: i64) -> PeriodicPattern {
        PeriodicPattern::from_fn(self.width, self.height, self.role, |i, j| {
            self.cell(i as i64 - dx, j as i64 - dy)
        })
    }

    /// Geometric image under `g`, complemented once when `g` reverses colour.
    pub fn transform(&self, g: &SignedIsometry) -> Result<PeriodicPattern> {
        g.validate()?;
        let (w, h) = if g.swaps_directions() {
            (self.height, self.width)
        } else {
            (self.width, self.height)
        };
        let inv = g.inverse();
        let flip = g.reverses_colour();
        Ok(PeriodicPattern::from_fn(w, h, self.role, |i, j| {
            let (si, sj) = inv.map_cell((i as i64, j as i64));
            self.cell(si, sj).flipped_if(flip)
        }))
    }

    /// Colours along a strand over one stored period: a warp bottom to top,
    /// a weft left to right.
    pub fn strand_colours(&self, s: StrandRef) -> Vec<Colour> {
        match s.kind {
            StrandKind::Warp => {
                let i = s.index % self.width;
                (0..self.height).map(|j| self.at(i, j)).collect()
            }
            StrandKind::Weft => {
                let j = s.index % self.height;
                (0..self.width).map(|i| self.at(i, j)).collect()
            }
        }
    }

    /// The cyclic word along a strand reduced to its primitive period
    /// (bit 1 = pale).
    pub fn strand_sequence(&self, s: StrandRef) -> StrandWord {
        StrandWord::from_colours(&self.strand_colours(s)).primitive()
    }

    /// All strands of the stored period rectangle, warps first.
    pub fn strands(&self) -> impl Iterator<Item = StrandRef> + '_ {
        (0..self.width)
            .map(StrandRef::warp)
            .chain((0..self.height).map(StrandRef::weft))
    }

    /// Common strand period. When strands disagree the lcm is returned and
    /// the report is flagged as non-uniform.
    pub fn order_of(&self) -> OrderReport {
        let mut periods = self.strands().map(|s| self.strand_sequence(s).len());
        let first = periods.next().unwrap_or(1);
        let mut order = first;
        let mut uniform = true;
        for p in periods {
            if p != first {
                uniform = false;
            }
            order = lcm(order, p);
        }
        OrderReport { order, uniform }
    }

    /// Rows as strings, top row first.
    pub fn rows_top_down(&self) -> Vec<String> {
        (0..self.height)
            .rev()
            .map(|j| (0..self.width).map(|i| self.at(i, j).symbol()).collect())
            .collect()
    }

    /// Weave-pattern v1 text without comments.
    pub fn serialize(&self) -> String {
        let mut s = String::with_capacity((self.width + 1) * self.height);
        for row in self.rows_top_down() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    /// Weave-pattern v1 text with leading `;` comment lines.
    pub fn serialize_with_comments<S: AsRef<str>>(&self, comments: &[S]) -> String {
        let mut s = String::new();
        for c in comments {
            for line in c.as_ref().lines() {
                s.push_str("; ");
                s.push_str(line);
                s.push('\n');
            }
        }
        s.push_str(&self.serialize());
        s
    }
}

/// Parses weave-pattern v1 text: optional `;` comment lines, then rows of
/// `'#'` (dark) and `'-'` (pale), top row first. Blank lines are ignored.
pub fn parse_pattern(text: &str) -> Result<PeriodicPattern> {
    let mut rows: Vec<Vec<Colour>> = Vec::new();
    let mut first_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(';') {
            continue;
        }
        if rows.is_empty() {
            first_line = n + 1;
        }
        let mut row = Vec::with_capacity(line.len());
        for (c, ch) in line.trim_end().chars().enumerate() {
            row.push(match ch {
                '#' => Colour::Dark,
                '-' => Colour::Pale,
                other => {
                    return Err(WeaveError::Parse {
                        line: n + 1,
                        column: c + 1,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            });
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(WeaveError::Parse {
                    line: n + 1,
                    column: row.len().min(first.len()) + 1,
                    message: format!(
                        "ragged row: {} cells, expected {} (from line {first_line})",
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() || rows[0].is_empty() {
        return Err(WeaveError::Parse {
            line: first_line.max(1),
            column: 1,
            message: "empty pattern".into(),
        });
    }
    let height = rows.len();
    let width = rows[0].len();
    let mut cells = Vec::with_capacity(width * height);
    for row in rows.iter().rev() {
        cells.extend_from_slice(row);
    }
    PeriodicPattern::new(width, height, cells, Role::Design)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::PointOp;

    fn checkerboard() -> PeriodicPattern {
        parse_pattern("#-\n-#\n").unwrap()
    }

    #[test]
    fn parses_checkerboard() {
        let p = checkerboard();
        assert_eq!((p.width(), p.height()), (2, 2));
        // first line is the top row
        assert_eq!(p.at(0, 1), Colour::Dark);
        assert_eq!(p.at(1, 1), Colour::Pale);
        assert_eq!(p.at(0, 0), Colour::Pale);
        assert_eq!(p.at(1, 0), Colour::Dark);
    }

    #[test]
    fn top_line_is_last_row() {
        let p = parse_pattern("##\n--\n").unwrap();
        assert_eq!(p.at(0, 1), Colour::Dark);
        assert_eq!(p.at(0, 0), Colour::Pale);
    }

    #[test]
    fn parses_trivial_and_comments() {
        let p = parse_pattern("; trivial\n#\n").unwrap();
        assert_eq!(p.cells(), &[Colour::Dark]);
    }

    #[test]
    fn rejects_ragged_rows() {
        match parse_pattern("##\n#\n") {
            Err(WeaveError::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("ragged"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_characters_and_empty_input() {
        assert!(matches!(
            parse_pattern("#x\n"),
            Err(WeaveError::Parse { line: 1, column: 2, .. })
        ));
        assert!(parse_pattern("; only a comment\n").is_err());
        assert!(parse_pattern("").is_err());
    }

    #[test]
    fn periodic_extension() {
        let p = parse_pattern("#--\n-#-\n").unwrap();
        for i in -5..5 {
            for j in -5..5 {
                assert_eq!(p.cell(i, j), p.cell(i + 3, j));
                assert_eq!(p.cell(i, j), p.cell(i, j - 2));
            }
        }
    }

    #[test]
    fn complement_is_involution() {
        let p = parse_pattern("#--\n-#-\n").unwrap();
        assert_eq!(p.complement().complement(), p);
        let dark = PeriodicPattern::uniform(1, 1, Colour::Dark, Role::Design);
        assert_eq!(dark.complement().cells(), &[Colour::Pale]);
    }

    #[test]
    fn checkerboard_quarter_turn_about_corner() {
        let p = checkerboard();
        let g = SignedIsometry::new(PointOp::R90, (0, 0), false);
        let geometric = SignedIsometry::new(PointOp::R90, (0, 0), true);
        // the bare rotation complements a checkerboard; the colour action undoes it
        assert_eq!(p.transform(&geometric).unwrap(), p.complement());
        assert_eq!(p.transform(&g).unwrap(), p);
    }

    #[test]
    fn transform_rejects_misaligned_translation() {
        let p = checkerboard();
        let g = SignedIsometry::new(PointOp::R180, (1, 0), false);
        assert!(matches!(p.transform(&g), Err(WeaveError::InvalidIsometry(_))));
    }

    #[test]
    fn strand_sequences() {
        let dark = PeriodicPattern::uniform(3, 3, Colour::Dark, Role::Design);
        assert_eq!(dark.strand_sequence(StrandRef::warp(1)).to_string(), "0");
        let p = checkerboard();
        assert_eq!(p.strand_sequence(StrandRef::weft(0)).to_string(), "10");
        assert_eq!(p.strand_sequence(StrandRef::warp(1)).to_string(), "01");
    }

    #[test]
    fn order_of_simple_designs() {
        assert_eq!(
            PeriodicPattern::uniform(1, 1, Colour::Dark, Role::Design).order_of(),
            OrderReport { order: 1, uniform: true }
        );
        assert_eq!(checkerboard().order_of().order, 2);
        let mixed = parse_pattern("#-\n##\n").unwrap();
        assert!(!mixed.order_of().uniform);
    }

    #[test]
    fn reduction_to_primitive_periods() {
        let p = checkerboard().tiled(6, 4);
        assert_eq!(p.primitive_periods(), (2, 2));
        assert_eq!(p.reduced(), checkerboard());
    }

    #[test]
    fn serialize_round_trip() {
        let text = "#--#\n-##-\n--##\n";
        let p = parse_pattern(text).unwrap();
        assert_eq!(p.serialize(), text);
        assert_eq!(parse_pattern(&p.serialize_with_comments(&["note"])).unwrap(), p);
    }
}
