//! Whether a prefabric hangs together, which strands lift off, and how.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::pattern::{lcm, Colour, PeriodicPattern, StrandKind, StrandRef};

/// Nodes are the warps then the wefts of the primitive period rectangle.
/// An arc `s -> t` means strand `s` passes under strand `t`.
#[derive(Debug, Clone)]
pub struct InterlacementDigraph {
    warps: usize,
    wefts: usize,
    graph: DiGraph<StrandRef, ()>,
}

impl InterlacementDigraph {
    pub fn node_count(&self) -> usize {
        self.warps + self.wefts
    }

    pub fn strands(&self) -> impl Iterator<Item = StrandRef> + '_ {
        self.graph.node_weights().copied()
    }

    fn node(&self, s: StrandRef) -> NodeIndex {
        match s.kind {
            StrandKind::Warp => NodeIndex::new(s.index % self.warps),
            StrandKind::Weft => NodeIndex::new(self.warps + s.index % self.wefts),
        }
    }

    /// True when `under` passes beneath `over` somewhere.
    pub fn has_arc(&self, under: StrandRef, over: StrandRef) -> bool {
        self.graph.contains_edge(self.node(under), self.node(over))
    }

    pub fn arcs(&self) -> Vec<(StrandRef, StrandRef)> {
        self.graph
            .edge_indices()
            .filter_map(|e| self.graph.edge_endpoints(e))
            .map(|(a, b)| (self.graph[a], self.graph[b]))
            .collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        tarjan_scc(&self.graph).len() == 1
    }

    /// Strongly connected components with no arc leaving them, i.e. the
    /// minimal sets of strands lying wholly on top of the rest.
    pub fn top_components(&self) -> Vec<Vec<StrandRef>> {
        let sccs = tarjan_scc(&self.graph);
        if sccs.len() < 2 {
            return Vec::new();
        }
        let mut comp = vec![0usize; self.node_count()];
        for (k, c) in sccs.iter().enumerate() {
            for n in c {
                comp[n.index()] = k;
            }
        }
        let mut out: Vec<Vec<StrandRef>> = sccs
            .iter()
            .enumerate()
            .filter(|(k, c)| {
                c.iter().all(|&n| {
                    self.graph
                        .neighbors(n)
                        .all(|m| comp[m.index()] == *k)
                })
            })
            .map(|(_, c)| {
                let mut v: Vec<StrandRef> = c.iter().map(|&n| self.graph[n]).collect();
                v.sort();
                v
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub fn interlacement(p: &PeriodicPattern) -> InterlacementDigraph {
    let p = p.reduced();
    let (w, h) = (p.width(), p.height());
    let mut graph = DiGraph::with_capacity(w + h, w * h);
    for i in 0..w {
        graph.add_node(StrandRef::warp(i));
    }
    for j in 0..h {
        graph.add_node(StrandRef::weft(j));
    }
    for j in 0..h {
        for i in 0..w {
            let warp = NodeIndex::new(i);
            let weft = NodeIndex::new(w + j);
            match p.at(i, j) {
                Colour::Dark => graph.update_edge(weft, warp, ()),
                Colour::Pale => graph.update_edge(warp, weft, ()),
            };
        }
    }
    InterlacementDigraph {
        warps: w,
        wefts: h,
        graph,
    }
}

pub fn hangs_together(p: &PeriodicPattern) -> bool {
    interlacement(p).is_strongly_connected()
}

/// Minimal liftable strand sets of a prefabric that falls apart, smallest
/// first; empty when it hangs together.
pub fn liftable_sets(p: &PeriodicPattern) -> Vec<Vec<StrandRef>> {
    interlacement(p).top_components()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FallApartMode {
    /// Hangs together.
    None,
    /// Alternate warps and alternate wefts lift off.
    Thin,
    /// Warps and wefts lift off in alternate adjacent pairs.
    Thick,
    /// A whole layer lifts off.
    Layer,
    Other,
}

/// True when the strands selected by `warp` and `weft` form a nonempty
/// proper set lying on top of every other strand of `p`.
pub fn is_liftable(
    p: &PeriodicPattern,
    warp: impl Fn(usize) -> bool,
    weft: impl Fn(usize) -> bool,
) -> bool {
    let (w, h) = (p.width(), p.height());
    let warps_in = (0..w).filter(|&i| warp(i)).count();
    let wefts_in = (0..h).filter(|&j| weft(j)).count();
    let size = warps_in + wefts_in;
    if size == 0 || size == w + h {
        return false;
    }
    (0..h).all(|j| {
        (0..w).all(|i| match (warp(i), weft(j)) {
            (true, false) => p.at(i, j) == Colour::Dark,
            (false, true) => p.at(i, j) == Colour::Pale,
            _ => true,
        })
    })
}

/// The parities `(warp, weft)` such that the warps of the first parity
/// together with the wefts of the second lift off.
pub fn thin_liftable_parities(p: &PeriodicPattern) -> Vec<(usize, usize)> {
    let p = p.reduced();
    let q = p.tiled(lcm(p.width(), 2), lcm(p.height(), 2));
    let mut out = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            if is_liftable(&q, |i| i % 2 == a, |j| j % 2 == b) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn fall_apart_mode(p: &PeriodicPattern) -> FallApartMode {
    if hangs_together(p) {
        return FallApartMode::None;
    }
    if !thin_liftable_parities(p).is_empty() {
        return FallApartMode::Thin;
    }
    let r = p.reduced();
    let q = r.tiled(lcm(r.width(), 4), lcm(r.height(), 4));
    let pair = |k: usize, off: usize| ((k + off) / 2).is_multiple_of(2);
    for a in 0..4 {
        for b in 0..4 {
            if is_liftable(&q, |i| pair(i, a), |j| pair(j, b)) {
                return FallApartMode::Thick;
            }
        }
    }
    if is_liftable(&r, |_| true, |_| false) || is_liftable(&r, |_| false, |_| true) {
        return FallApartMode::Layer;
    }
    FallApartMode::Other
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_pattern;

    #[test]
    fn plain_weave_hangs_together() {
        let p = parse_pattern("#-\n-#").unwrap();
        let g = interlacement(&p);
        assert!(g.is_strongly_connected());
        assert_eq!(fall_apart_mode(&p), FallApartMode::None);
        assert!(liftable_sets(&p).is_empty());
    }

    #[test]
    fn all_dark_lifts_its_warps() {
        let p = parse_pattern("#").unwrap();
        assert!(!hangs_together(&p));
        assert_eq!(liftable_sets(&p), vec![vec![StrandRef::warp(0)]]);
        assert_eq!(fall_apart_mode(&p), FallApartMode::Layer);
        let g = interlacement(&p);
        assert!(g.has_arc(StrandRef::weft(0), StrandRef::warp(0)));
        assert!(!g.has_arc(StrandRef::warp(0), StrandRef::weft(0)));
    }

    #[test]
    fn single_warp_riding_on_top() {
        // warp 1 is dark on every row; everything else plain weave doubled
        let p = parse_pattern("##--\n-#-#\n##--\n-#-#").unwrap();
        let sets = liftable_sets(&p);
        assert_eq!(sets[0], vec![StrandRef::warp(1)]);
    }

    #[test]
    fn box_weave_hangs_together() {
        let p = parse_pattern("##--\n##--\n--##\n--##").unwrap();
        assert!(hangs_together(&p));
    }

    #[test]
    fn four_one_one_falls_apart_thinly() {
        let p = parse_pattern("###-\n#---\n#-##\n--#-").unwrap();
        assert_eq!(fall_apart_mode(&p), FallApartMode::Thin);
        let sets = liftable_sets(&p);
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].len(), 4);
    }
}
