//! Catalogue names `order-index-seq`, with a trailing asterisk for
//! prefabrics that fall apart, and canonical representatives of designs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WeaveError};
use crate::isometry::{PointOp, SignedIsometry};
use crate::pattern::{Colour, PeriodicPattern, Role};
use crate::symmetry::is_isonemal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DesignName {
    pub order: usize,
    pub index: u64,
    pub seq: usize,
    pub falls_apart: bool,
}

impl fmt::Display for DesignName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-{}-{}{}",
            self.order,
            self.index,
            self.seq,
            if self.falls_apart { "*" } else { "" }
        )
    }
}

impl FromStr for DesignName {
    type Err = WeaveError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || WeaveError::Parse {
            line: 1,
            column: 1,
            message: format!("not a design name: {s:?}"),
        };
        let (body, falls_apart) = match s.strip_suffix('*') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let parts: Vec<&str> = body.split('-').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(DesignName {
            order: parts[0].parse().map_err(|_| bad())?,
            index: parts[1].parse().map_err(|_| bad())?,
            seq: parts[2].parse().map_err(|_| bad())?,
            falls_apart,
        })
    }
}

/// Least binary index over every strand of the design (all rotations,
/// both reading directions, both colour conventions).
pub fn binary_index(p: &PeriodicPattern) -> Option<u64> {
    p.strands()
        .map(|s| p.strand_sequence(s).binary_index())
        .collect::<Option<Vec<u64>>>()
        .and_then(|v| v.into_iter().min())
}

/// Name of an isonemal design with sequence number 1. Catalogue sequence
/// numbers are assigned by [`crate::catalogue`].
pub fn canonical_name(p: &PeriodicPattern, falls_apart: bool) -> Result<DesignName> {
    if !is_isonemal(p) {
        return Err(WeaveError::NamingRefused("design is not isonemal".into()));
    }
    name_of_isonemal(p, falls_apart)
}

/// As [`canonical_name`] without re-checking isonemality.
pub fn name_of_isonemal(p: &PeriodicPattern, falls_apart: bool) -> Result<DesignName> {
    let report = p.order_of();
    if !report.uniform {
        return Err(WeaveError::NamingRefused("strands have different periods".into()));
    }
    let index = binary_index(p)
        .ok_or_else(|| WeaveError::NamingRefused(format!("order {} exceeds 64", report.order)))?;
    Ok(DesignName {
        order: report.order,
        index,
        seq: 1,
        falls_apart,
    })
}

/// The 16 signed point operations without translation.
pub fn signed_point_ops() -> impl Iterator<Item = SignedIsometry> {
    PointOp::ALL
        .into_iter()
        .flat_map(|op| [false, true].map(move |tau| SignedIsometry::new(op, (0, 0), tau)))
}

/// Least representative of the design under every signed isometry and
/// complementation, compared as `(width, height, rows top first)` with dark
/// before pale. Two designs are equivalent iff their canonical forms agree.
pub fn canonical_form(p: &PeriodicPattern) -> PeriodicPattern {
    let p = p.reduced();
    let images: Vec<PeriodicPattern> = signed_point_ops()
        .map(|g| p.transform(&g).expect("point operations are cell aligned"))
        .collect();
    let dims = images
        .iter()
        .map(|q| (q.width(), q.height()))
        .min()
        .expect("sixteen images");
    let images: Vec<&PeriodicPattern> = images
        .iter()
        .filter(|q| (q.width(), q.height()) == dims)
        .collect();
    let (w, h) = dims;
    let row_from = |q: &PeriodicPattern, r: usize, s: usize| -> Vec<Colour> {
        (0..w).map(|i| q.at((i + s) % w, r)).collect()
    };
    let mut best_top: Option<Vec<Colour>> = None;
    let mut starts: Vec<(usize, usize, usize)> = Vec::new();
    for (k, q) in images.iter().enumerate() {
        for r in 0..h {
            for s in 0..w {
                let row = row_from(q, r, s);
                match best_top.as_ref().map(|b| row.cmp(b)) {
                    Some(std::cmp::Ordering::Greater) => {}
                    Some(std::cmp::Ordering::Equal) => starts.push((k, r, s)),
                    _ => {
                        best_top = Some(row);
                        starts.clear();
                        starts.push((k, r, s));
                    }
                }
            }
        }
    }
    let mut best: Option<Vec<Colour>> = None;
    for (k, r, s) in starts {
        let q = images[k];
        // rows from the top: r, r-1, ..., r-h+1
        let mut cells = Vec::with_capacity(w * h);
        for t in 0..h {
            let row = (r + h - t) % h;
            cells.extend(row_from(q, row, s));
        }
        if best.as_ref().is_none_or(|b| cells < *b) {
            best = Some(cells);
        }
    }
    let top_first = best.expect("at least one start");
    PeriodicPattern::from_fn(w, h, Role::Design, |i, j| top_first[(h - 1 - j) * w + i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_pattern;

    #[test]
    fn trivial_prefabric_name() {
        let p = PeriodicPattern::uniform(1, 1, Colour::Dark, Role::Design);
        assert_eq!(canonical_name(&p, true).unwrap().to_string(), "1-0-1*");
        let pale = PeriodicPattern::uniform(1, 1, Colour::Pale, Role::Design);
        assert_eq!(canonical_name(&pale, true).unwrap().to_string(), "1-0-1*");
    }

    #[test]
    fn doubled_plain_weave_is_4_3_1() {
        let p = parse_pattern("##--\n##--\n--##\n--##\n").unwrap();
        assert_eq!(canonical_name(&p, false).unwrap().to_string(), "4-3-1");
    }

    #[test]
    fn non_isonemal_is_refused() {
        let p = parse_pattern("#-\n##\n").unwrap();
        assert!(matches!(canonical_name(&p, false), Err(WeaveError::NamingRefused(_))));
    }

    #[test]
    fn names_parse_back() {
        let n: DesignName = "12-69-2*".parse().unwrap();
        assert_eq!(n, DesignName { order: 12, index: 69, seq: 2, falls_apart: true });
        assert_eq!("4-3-1".parse::<DesignName>().unwrap().to_string(), "4-3-1");
        assert!("4-3".parse::<DesignName>().is_err());
    }

    #[test]
    fn canonical_form_matches_brute_force() {
        let p = parse_pattern("#--#-\n-##--\n--#-#\n").unwrap();
        let mut brute: Option<(usize, usize, String)> = None;
        for g in signed_point_ops() {
            let q = p.transform(&g).unwrap();
            for dx in 0..q.width() as i64 {
                for dy in 0..q.height() as i64 {
                    let s = q.shifted(dx, dy);
                    let key = (s.width(), s.height(), s.serialize());
                    if brute.as_ref().is_none_or(|b| key < *b) {
                        brute = Some(key);
                    }
                }
            }
        }
        let c = canonical_form(&p);
        assert_eq!(Some((c.width(), c.height(), c.serialize())), brute);
    }
}
