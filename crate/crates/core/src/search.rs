//! Exhaustive search for isonemal designs carrying the fixed redundant
//! checkerboard of a thin striping.
//!
//! On an `N x N` torus the checkerboard fixes cells with both coordinates
//! odd to dark and cells with both coordinates even to pale. Any symmetry
//! of such a design of order > 2 preserves the checkerboard, so the full
//! group lies in the stabiliser `S` of the checkerboard. The search runs
//! over subgroups of `S` assembled from a translation subgroup, a point
//! group that exchanges warps and wefts, and coset representatives; every
//! strand-transitive subgroup is filled orbit by orbit.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use crate::isometry::{PointOp, SignedIsometry};
use crate::lattice;
use crate::naming::canonical_form;
use crate::pattern::{Colour, PeriodicPattern, Role};
use crate::symmetry::strand_orbits;

/// Point groups containing a direction-swapping operation, by generators.
pub(crate) const POINT_GROUPS: [&[PointOp]; 5] = [
    &[PointOp::MirDiagUp],
    &[PointOp::MirDiagDown],
    &[PointOp::R90],
    &[PointOp::MirDiagUp, PointOp::MirDiagDown],
    &[PointOp::R90, PointOp::MirDiagUp],
];

fn point_group_size(gens: &[PointOp]) -> usize {
    let mut seen: BTreeSet<PointOp> = BTreeSet::from([PointOp::Id]);
    let mut queue = vec![PointOp::Id];
    while let Some(p) = queue.pop() {
        for &g in gens {
            let q = g.compose(p);
            if seen.insert(q) {
                queue.push(q);
            }
        }
    }
    seen.len()
}

/// Parity class of a cell: 0 fixed dark, 1 fixed pale, 2 free.
#[inline]
pub(crate) fn cell_class(i: i64, j: i64) -> u8 {
    match (i.rem_euclid(2), j.rem_euclid(2)) {
        (1, 1) => 0,
        (0, 0) => 1,
        _ => 2,
    }
}

/// Completes `(op, cells)` to an element of the checkerboard stabiliser,
/// choosing tau so that fixed cells keep their colours, or `None`.
pub(crate) fn frame_element(op: PointOp, cells: (i64, i64)) -> Option<SignedIsometry> {
    let g = SignedIsometry::from_cells(op, cells, false);
    let (a, b) = g.map_cell((1, 1));
    let (c, d) = g.map_cell((0, 0));
    let (ca, cc) = (cell_class(a, b), cell_class(c, d));
    let reverse = match (ca, cc) {
        (0, 1) => false,
        (1, 0) => true,
        _ => return None,
    };
    Some(SignedIsometry::from_cells(op, cells, reverse ^ op.swaps_directions()))
}

/// Translation subgroups of the `n` torus as Hermite bases
/// `[(p, q), (0, r)]`; with `frame` only those inside the checkerboard
/// stabiliser (both components of every vector of equal parity).
pub(crate) fn translation_subgroups(n: usize, frame: bool) -> Vec<[(i64, i64); 2]> {
    let n = n as i64;
    let mut out = Vec::new();
    for p in (1..=n).filter(|p| n % p == 0) {
        for r in (1..=n).filter(|r| n % r == 0 && (!frame || r % 2 == 0)) {
            for q in 0..r {
                if frame && (p - q).rem_euclid(2) != 0 {
                    continue;
                }
                if ((n / p) * q) % r != 0 {
                    continue;
                }
                out.push([(p, q), (0, r)]);
            }
        }
    }
    out
}

/// Which designs a search admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// Designs carrying the fixed checkerboard of a thin striping.
    ThinFrame,
    /// Every design.
    All,
}

/// A strand-transitive group of isometries of the `n x n` torus.
#[derive(Debug, Clone)]
pub struct TransitiveGroup {
    pub torus: usize,
    pub generators: Vec<SignedIsometry>,
    pub elements: Vec<SignedIsometry>,
}

fn close(torus: usize, gens: &[SignedIsometry], limit: usize) -> Option<Vec<SignedIsometry>> {
    let mut seen: HashSet<SignedIsometry> = HashSet::new();
    let id = SignedIsometry::IDENTITY;
    seen.insert(id);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x).reduced(torus, torus);
            if seen.insert(y) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<SignedIsometry> = seen.into_iter().collect();
    v.sort();
    Some(v)
}

/// Candidate elements `op` followed by a translation, one per coset of
/// the translation lattice (and per side reversal when it is free).
fn coset_candidates(n: i64, op: PointOp, hnf: &[(i64, i64); 2], space: SearchSpace) -> Vec<SignedIsometry> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let t = lattice::reduce_mod((a, b), hnf);
            if !seen.insert(t) {
                continue;
            }
            match space {
                SearchSpace::ThinFrame => out.extend(frame_element(op, t)),
                SearchSpace::All => {
                    out.push(SignedIsometry::from_cells(op, t, false));
                    out.push(SignedIsometry::from_cells(op, t, true));
                }
            }
        }
    }
    out
}

/// Every strand-transitive group on the `n x n` torus whose point group
/// exchanges warps and wefts, restricted to the checkerboard stabiliser
/// for [`SearchSpace::ThinFrame`]. Groups are listed once each.
pub fn transitive_groups(n: usize, space: SearchSpace) -> Vec<TransitiveGroup> {
    let frame = space == SearchSpace::ThinFrame;
    assert!(!frame || n.is_multiple_of(2), "thin striping needs an even period");
    let nn = n as i64;
    let lattices = translation_subgroups(n, frame);
    let jobs: Vec<(usize, usize)> = (0..lattices.len())
        .flat_map(|l| (0..POINT_GROUPS.len()).map(move |p| (l, p)))
        .collect();
    let mut groups: Vec<TransitiveGroup> = jobs
        .par_iter()
        .flat_map_iter(|&(li, pi)| {
            let hnf = lattices[li];
            let gens = POINT_GROUPS[pi];
            let t_size = (nn * nn / lattice::area(&hnf)) as usize;
            let size = point_group_size(gens) * t_size;
            let mut found = Vec::new();
            if size < 2 * n || gens.iter().any(|&op| hnf.iter().any(|&v| !lattice::contains(op.apply(v), &hnf))) {
                return found.into_iter();
            }
            let translation_sets: Vec<Vec<SignedIsometry>> = if frame {
                vec![hnf.iter().map(|&v| frame_translation(v)).collect()]
            } else {
                (0..4)
                    .map(|m| {
                        hnf.iter()
                            .enumerate()
                            .map(|(k, &v)| SignedIsometry::from_cells(PointOp::Id, v, (m >> k) & 1 == 1))
                            .collect()
                    })
                    .collect()
            };
            let reps: Vec<Vec<SignedIsometry>> = gens.iter().map(|&op| coset_candidates(nn, op, &hnf, space)).collect();
            for translations in &translation_sets {
                let mut choice = vec![0usize; gens.len()];
                'outer: loop {
                    let mut all = translations.clone();
                    all.extend(choice.iter().zip(&reps).map(|(&c, r)| r[c]));
                    if let Some(elements) = close(n, &all, size) {
                        if elements.len() == size && strand_orbits(n, &all).len() == 1 {
                            found.push(TransitiveGroup {
                                torus: n,
                                generators: all,
                                elements,
                            });
                        }
                    }
                    for k in 0..choice.len() {
                        choice[k] += 1;
                        if choice[k] < reps[k].len() {
                            continue 'outer;
                        }
                        choice[k] = 0;
                    }
                    break;
                }
            }
            found.into_iter()
        })
        .collect();
    groups.sort_by(|a, b| a.elements.cmp(&b.elements));
    groups.dedup_by(|a, b| a.elements == b.elements);
    groups
}

fn frame_translation(v: (i64, i64)) -> SignedIsometry {
    SignedIsometry::from_cells(PointOp::Id, v, v.0.rem_euclid(2) == 1)
}

/// Cell orbits of a group with the colour relations they impose.
pub struct OrbitFill {
    torus: usize,
    /// Per cell: (orbit root, parity relative to root).
    cells: Vec<(usize, bool)>,
    /// Free orbit roots.
    free: Vec<usize>,
    /// Colour of each root when forced by a fixed cell.
    forced: Vec<Option<bool>>,
}

impl OrbitFill {
    /// `None` when the group forces a cell to differ from itself or
    /// contradicts the fixed checkerboard.
    pub fn new(torus: usize, generators: &[SignedIsometry], space: SearchSpace) -> Option<OrbitFill> {
        let n = torus as i64;
        let size = torus * torus;
        let mut uf = ParityUnionFind::new(size);
        for g in generators {
            let flip = g.reverses_colour();
            for j in 0..n {
                for i in 0..n {
                    let (x, y) = g.map_cell((i, j));
                    let a = (j * n + i) as usize;
                    let b = (y.rem_euclid(n) * n + x.rem_euclid(n)) as usize;
                    if !uf.union(a, b, flip) {
                        return None;
                    }
                }
            }
        }
        let mut forced: Vec<Option<bool>> = vec![None; size];
        let mut cells = Vec::with_capacity(size);
        for j in 0..n {
            for i in 0..n {
                let k = (j * n + i) as usize;
                let (root, parity) = uf.find(k);
                cells.push((root, parity));
                let class = match space {
                    SearchSpace::ThinFrame => cell_class(i, j),
                    SearchSpace::All => 2,
                };
                if class < 2 {
                    // colour bit of the root: pale = true
                    let root_bit = (class == 1) ^ parity;
                    match forced[root] {
                        Some(b) if b != root_bit => return None,
                        _ => forced[root] = Some(root_bit),
                    }
                }
            }
        }
        let mut free: Vec<usize> = cells
            .iter()
            .map(|&(r, _)| r)
            .filter(|&r| forced[r].is_none())
            .collect();
        free.sort_unstable();
        free.dedup();
        Some(OrbitFill {
            torus,
            cells,
            free,
            forced,
        })
    }

    pub fn free_orbits(&self) -> usize {
        self.free.len()
    }

    /// The design for bit assignment `mask` of the free orbits.
    pub fn design(&self, mask: u64) -> PeriodicPattern {
        let mut root_bit = self.forced.clone();
        for (k, &r) in self.free.iter().enumerate() {
            root_bit[r] = Some((mask >> k) & 1 == 1);
        }
        let n = self.torus;
        PeriodicPattern::from_fn(n, n, Role::Design, |i, j| {
            let (r, parity) = self.cells[j * n + i];
            Colour::from_bit(root_bit[r].expect("assigned") ^ parity)
        })
    }
}

pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress, accumulating parity from the top down
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Records colour(a) = colour(b) xor flip; false on contradiction.
    pub(crate) fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == flip;
        }
        let (lo, hi, p) = if ra < rb { (ra, rb, pa ^ pb ^ flip) } else { (rb, ra, pa ^ pb ^ flip) };
        self.parent[hi] = lo;
        self.parity[hi] = p;
        true
    }
}


/// Canonical forms of every isonemal design of order `n` in the space,
/// sorted and without repeats.
pub fn isonemal_designs(n: usize, space: SearchSpace) -> Vec<PeriodicPattern> {
    let groups = transitive_groups(n, space);
    let mut designs: Vec<PeriodicPattern> = groups
        .par_iter()
        .flat_map_iter(|g| {
            let mut local = HashSet::new();
            if let Some(fill) = OrbitFill::new(n, &g.generators, space) {
                for mask in 0..(1u64 << fill.free_orbits()) {
                    let d = fill.design(mask);
                    let report = d.order_of();
                    if report.uniform && report.order == n {
                        local.insert(canonical_form(&d));
                    }
                }
            }
            local.into_iter()
        })
        .collect();
    designs.sort_by_cached_key(|d| d.serialize());
    designs.dedup();
    designs
}
