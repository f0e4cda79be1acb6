//! Integer lattices in the plane (cell units).

use std::fmt;

use serde::{Deserialize, Serialize};

fn gcd_i(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Lower-triangular Hermite normal form `{(p, q), (0, r)}` of the lattice
/// spanned by `vectors`. The lattice must have full rank.
pub fn hermite_basis(vectors: &[(i64, i64)]) -> [(i64, i64); 2] {
    let mut head: Option<(i64, i64)> = None;
    let mut r = 0i64;
    for &v in vectors {
        let mut v = v;
        if v.0 != 0 {
            let mut u = match head {
                None => {
                    head = Some(v);
                    continue;
                }
                Some(u) => u,
            };
            while v.0 != 0 {
                let k = u.0.div_euclid(v.0);
                u = (u.0 - k * v.0, u.1 - k * v.1);
                std::mem::swap(&mut u, &mut v);
            }
            head = Some(u);
        }
        r = gcd_i(r, v.1);
    }
    let mut h = head.expect("lattice of full rank");
    if h.0 < 0 {
        h = (-h.0, -h.1);
    }
    assert!(r != 0, "lattice of full rank");
    [(h.0, h.1.rem_euclid(r)), (0, r)]
}

/// Canonical representative of `v` modulo the lattice with Hermite basis `hnf`.
pub fn reduce_mod(v: (i64, i64), hnf: &[(i64, i64); 2]) -> (i64, i64) {
    let [(p, q), (_, r)] = *hnf;
    let k = v.0.div_euclid(p);
    let x = v.0 - k * p;
    let y = (v.1 - k * q).rem_euclid(r);
    (x, y)
}

pub fn contains(v: (i64, i64), hnf: &[(i64, i64); 2]) -> bool {
    reduce_mod(v, hnf) == (0, 0)
}

fn norm2(v: (i64, i64)) -> i64 {
    v.0 * v.0 + v.1 * v.1
}

fn dot(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

/// Lagrange-Gauss reduced basis, shortest vector first.
pub fn reduced_basis(basis: [(i64, i64); 2]) -> [(i64, i64); 2] {
    let [mut a, mut b] = basis;
    if norm2(a) > norm2(b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        // nearest integer to <a,b>/<a,a>
        let n = norm2(a);
        let d = dot(a, b);
        let k = (2 * d + n).div_euclid(2 * n);
        b = (b.0 - k * a.0, b.1 - k * a.1);
        if norm2(b) >= norm2(a) {
            break;
        }
        std::mem::swap(&mut a, &mut b);
    }
    [normalise_sign(a), normalise_sign(b)]
}

fn normalise_sign(v: (i64, i64)) -> (i64, i64) {
    if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
        (-v.0, -v.1)
    } else {
        v
    }
}

pub fn area(basis: &[(i64, i64); 2]) -> i64 {
    (basis[0].0 * basis[1].1 - basis[0].1 * basis[1].0).abs()
}

/// A side or diagonal of a lattice unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span(pub i64, pub i64);

impl Span {
    /// Length in units of the cell diagonal when the span is diagonal.
    pub fn in_deltas(&self) -> Option<i64> {
        (self.0.abs() == self.1.abs()).then_some(self.0.abs())
    }

    /// Length in cells when the span is horizontal or vertical.
    pub fn in_cells(&self) -> Option<i64> {
        if self.0 == 0 {
            Some(self.1.abs())
        } else if self.1 == 0 {
            Some(self.0.abs())
        } else {
            None
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.in_deltas() {
            write!(f, "{d}δ")
        } else if let Some(c) = self.in_cells() {
            write!(f, "{c}")
        } else {
            write!(f, "({},{})", self.0, self.1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitShape {
    Square,
    Rectangular,
    Rhombic,
    Oblique,
}

/// A primitive lattice unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeUnit {
    pub shape: UnitShape,
    /// Sides of the unit (cell units).
    pub sides: [Span; 2],
    /// For rhombic units: the longer and shorter diagonals (length, width).
    pub diagonals: Option<[Span; 2]>,
    /// Area in cells.
    pub area: i64,
}

impl LatticeUnit {
    pub fn from_basis(basis: [(i64, i64); 2]) -> LatticeUnit {
        let [a, b] = reduced_basis(basis);
        let area = area(&[a, b]);
        let shape_of = |a: (i64, i64), b: (i64, i64)| {
            if dot(a, b) == 0 {
                Some(if norm2(a) == norm2(b) {
                    UnitShape::Square
                } else {
                    UnitShape::Rectangular
                })
            } else if norm2(a) == norm2(b) {
                Some(UnitShape::Rhombic)
            } else {
                None
            }
        };
        let candidates = [
            (a, b),
            (b, (b.0 - a.0, b.1 - a.1)),
            (b, (b.0 + a.0, b.1 + a.1)),
        ];
        for (u, v) in candidates {
            if let Some(shape) = shape_of(u, v) {
                let diagonals = (shape == UnitShape::Rhombic).then(|| {
                    let s = (u.0 + v.0, u.1 + v.1);
                    let d = (u.0 - v.0, u.1 - v.1);
                    let (long, short) = if norm2(s) >= norm2(d) { (s, d) } else { (d, s) };
                    [Span(long.0, long.1), Span(short.0, short.1)]
                });
                let (u, v) = if shape == UnitShape::Rectangular && norm2(u) > norm2(v) {
                    (v, u)
                } else {
                    (u, v)
                };
                return LatticeUnit {
                    shape,
                    sides: [Span(u.0, u.1), Span(v.0, v.1)],
                    diagonals,
                    area,
                };
            }
        }
        LatticeUnit {
            shape: UnitShape::Oblique,
            sides: [Span(a.0, a.1), Span(b.0, b.1)],
            diagonals: None,
            area,
        }
    }

    /// `"4δ×10δ"` style description of the sides.
    pub fn dimensions(&self) -> String {
        format!("{}×{}", self.sides[0], self.sides[1])
    }
}
