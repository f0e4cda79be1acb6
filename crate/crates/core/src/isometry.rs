//! Grid isometries combined with an optional side reversal.
//!
//! Points live on the doubled integer grid: a point `(x, y)` of the plane is
//! stored as `(2x, 2y)`, so cell centres, cell corners and side midpoints all
//! have integer coordinates. Cell `(i, j)` is the unit square `[i, i+1] x [j, j+1]`
//! and its centre is `(2i + 1, 2j + 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeaveError};

/// The eight point operations of the square grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointOp {
    Id,
    /// Counter-clockwise quarter-turn, `(x, y) -> (-y, x)`.
    R90,
    R180,
    /// `(x, y) -> (y, -x)`.
    R270,
    /// Reflection in a vertical line, `(x, y) -> (-x, y)`.
    MirX,
    /// Reflection in a horizontal line, `(x, y) -> (x, -y)`.
    MirY,
    /// Reflection in a line of positive slope, `(x, y) -> (y, x)`.
    MirDiagUp,
    /// Reflection in a line of negative slope, `(x, y) -> (-y, -x)`.
    MirDiagDown,
}

impl PointOp {
    pub const ALL: [PointOp; 8] = [
        PointOp::Id,
        PointOp::R90,
        PointOp::R180,
        PointOp::R270,
        PointOp::MirX,
        PointOp::MirY,
        PointOp::MirDiagUp,
        PointOp::MirDiagDown,
    ];

    /// Row-major 2x2 integer matrix.
    pub const fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            PointOp::Id => [[1, 0], [0, 1]],
            PointOp::R90 => [[0, -1], [1, 0]],
            PointOp::R180 => [[-1, 0], [0, -1]],
            PointOp::R270 => [[0, 1], [-1, 0]],
            PointOp::MirX => [[-1, 0], [0, 1]],
            PointOp::MirY => [[1, 0], [0, -1]],
            PointOp::MirDiagUp => [[0, 1], [1, 0]],
            PointOp::MirDiagDown => [[0, -1], [-1, 0]],
        }
    }

    fn from_matrix(m: [[i64; 2]; 2]) -> PointOp {
        *PointOp::ALL
            .iter()
            .find(|op| op.matrix() == m)
            .expect("product of grid point operations is a grid point operation")
    }

    #[inline]
    pub fn apply(self, (x, y): (i64, i64)) -> (i64, i64) {
        match self {
            PointOp::Id => (x, y),
            PointOp::R90 => (-y, x),
            PointOp::R180 => (-x, -y),
            PointOp::R270 => (y, -x),
            PointOp::MirX => (-x, y),
            PointOp::MirY => (x, -y),
            PointOp::MirDiagUp => (y, x),
            PointOp::MirDiagDown => (-y, -x),
        }
    }

    pub fn compose(self, other: PointOp) -> PointOp {
        let a = self.matrix();
        let b = other.matrix();
        let mut m = [[0i64; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        PointOp::from_matrix(m)
    }

    pub fn inverse(self) -> PointOp {
        match self {
            PointOp::R90 => PointOp::R270,
            PointOp::R270 => PointOp::R90,
            other => other,
        }
    }

    /// True when the operation exchanges the warp and weft directions.
    pub fn swaps_directions(self) -> bool {
        matches!(
            self,
            PointOp::R90 | PointOp::R270 | PointOp::MirDiagUp | PointOp::MirDiagDown
        )
    }

    pub fn is_reflection(self) -> bool {
        matches!(
            self,
            PointOp::MirX | PointOp::MirY | PointOp::MirDiagUp | PointOp::MirDiagDown
        )
    }

    pub fn is_quarter_turn(self) -> bool {
        matches!(self, PointOp::R90 | PointOp::R270)
    }

    pub fn order(self) -> u32 {
        match self {
            PointOp::Id => 1,
            PointOp::R90 | PointOp::R270 => 4,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PointOp::Id => "id",
            PointOp::R90 => "r90",
            PointOp::R180 => "r180",
            PointOp::R270 => "r270",
            PointOp::MirX => "mir-x",
            PointOp::MirY => "mir-y",
            PointOp::MirDiagUp => "mir-up",
            PointOp::MirDiagDown => "mir-down",
        }
    }
}

/// A grid isometry `X -> point(X) + translation` on doubled coordinates,
/// together with the side-reversal flag tau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedIsometry {
    pub point: PointOp,
    /// Translation in doubled coordinates.
    pub translation: (i64, i64),
    pub tau: bool,
}

impl SignedIsometry {
    pub const IDENTITY: SignedIsometry = SignedIsometry {
        point: PointOp::Id,
        translation: (0, 0),
        tau: false,
    };

    pub fn new(point: PointOp, translation: (i64, i64), tau: bool) -> Self {
        SignedIsometry {
            point,
            translation,
            tau,
        }
    }

    /// Builds an isometry whose translation is given in whole cells.
    pub fn from_cells(point: PointOp, cells: (i64, i64), tau: bool) -> Self {
        SignedIsometry::new(point, (2 * cells.0, 2 * cells.1), tau)
    }

    pub fn translation_by(cells: (i64, i64), tau: bool) -> Self {
        SignedIsometry::from_cells(PointOp::Id, cells, tau)
    }

    /// True when the isometry maps cells onto cells.
    pub fn is_cell_aligned(&self) -> bool {
        self.translation.0 % 2 == 0 && self.translation.1 % 2 == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_cell_aligned() {
            Ok(())
        } else {
            Err(WeaveError::InvalidIsometry(format!(
                "translation {:?} (doubled) does not carry cells onto cells",
                self.translation
            )))
        }
    }

    pub fn swaps_directions(&self) -> bool {
        self.point.swaps_directions()
    }

    /// Whether the isometry reverses the colours of a design: exchanging
    /// warp and weft directions reverses them, and so does turning the
    /// prefabric over.
    pub fn reverses_colour(&self) -> bool {
        self.point.swaps_directions() ^ self.tau
    }

    pub fn is_translation(&self) -> bool {
        self.point == PointOp::Id
    }

    /// Applies the isometry to a point in doubled coordinates.
    #[inline]
    pub fn apply(&self, p: (i64, i64)) -> (i64, i64) {
        let (x, y) = self.point.apply(p);
        (x + self.translation.0, y + self.translation.1)
    }

    /// Image of cell `(i, j)`.
    #[inline]
    pub fn map_cell(&self, (i, j): (i64, i64)) -> (i64, i64) {
        let (x, y) = self.apply((2 * i + 1, 2 * j + 1));
        ((x - 1).div_euclid(2), (y - 1).div_euclid(2))
    }

    /// `self` after `other`: `(self ∘ other)(X) = self(other(X))`.
    pub fn compose(&self, other: &SignedIsometry) -> SignedIsometry {
        let (tx, ty) = self.point.apply(other.translation);
        SignedIsometry {
            point: self.point.compose(other.point),
            translation: (tx + self.translation.0, ty + self.translation.1),
            tau: self.tau ^ other.tau,
        }
    }

    pub fn inverse(&self) -> SignedIsometry {
        let inv = self.point.inverse();
        let (tx, ty) = inv.apply(self.translation);
        SignedIsometry {
            point: inv,
            translation: (-tx, -ty),
            tau: self.tau,
        }
    }

    /// Reduces the translation modulo a rectangular torus given in cells.
    pub fn reduced(&self, width: usize, height: usize) -> SignedIsometry {
        let (w, h) = (2 * width as i64, 2 * height as i64);
        SignedIsometry {
            translation: (self.translation.0.rem_euclid(w), self.translation.1.rem_euclid(h)),
            ..*self
        }
    }
}

impl fmt::Display for SignedIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} t=({},{}){}",
            self.point.name(),
            self.translation.0,
            self.translation.1,
            if self.tau { " tau" } else { "" }
        )
    }
}
