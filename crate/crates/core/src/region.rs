//! Regions of a complex cut along a set of wall arcs, and their boundary polygons.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{ArcId, Corner, Side, TriangulatedComplex};

/// A connected set of triangles glued across non-wall arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub triangles: Vec<usize>,
    /// Boundary cycles. Side `k` of a cycle runs from polygon corner `k` to corner `k + 1`.
    pub cycles: Vec<Vec<Side>>,
    /// Triangle corners grouped into polygon corners: `corners[cycle][k]`.
    pub corners: Vec<Vec<Vec<Corner>>>,
    /// Non-wall arcs inside the region.
    pub interior_arcs: Vec<ArcId>,
}

impl Region {
    /// A disk: one boundary cycle and Euler characteristic 1.
    pub fn is_simply_connected(&self) -> bool {
        self.cycles.len() == 1 && self.triangles.len() as i64 - self.interior_arcs.len() as i64 == 1
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.cycles
            .iter()
            .flatten()
            .filter(|s| matches!(s, Side::Boundary(_)))
            .count()
    }

    pub fn wall_sides(&self) -> impl Iterator<Item = Side> + '_ {
        self.cycles
            .iter()
            .flatten()
            .copied()
            .filter(|s| s.arc().is_some())
    }

    /// Map from triangle corner to `(cycle, polygon corner)`.
    pub fn corner_index(&self) -> HashMap<Corner, (usize, usize)> {
        let mut m = HashMap::new();
        for (ci, cyc) in self.corners.iter().enumerate() {
            for (k, group) in cyc.iter().enumerate() {
                for c in group {
                    m.insert(*c, (ci, k));
                }
            }
        }
        m
    }
}

/// Cut `complex` along the arcs where `wall` holds and describe each piece.
pub fn regions(complex: &TriangulatedComplex, wall: impl Fn(ArcId) -> bool + Copy) -> Vec<Region> {
    complex
        .triangle_components(wall)
        .into_iter()
        .map(|tris| region_of(complex, tris, wall))
        .collect()
}

fn region_of(
    complex: &TriangulatedComplex,
    triangles: Vec<usize>,
    wall: impl Fn(ArcId) -> bool,
) -> Region {
    let is_edge = |s: Side| match s {
        Side::Boundary(_) => true,
        Side::Arc(a, _) => wall(a),
    };
    let members: BTreeSet<usize> = triangles.iter().copied().collect();
    let mut interior = BTreeSet::new();
    let mut pending: Vec<Corner> = Vec::new();
    for &t in &triangles {
        for (i, s) in complex.triangle(t).sides.iter().enumerate() {
            if is_edge(*s) {
                pending.push(Corner {
                    triangle: t,
                    index: i,
                });
            } else if let Some(a) = s.arc() {
                interior.insert(a);
            }
        }
    }
    let mut used: BTreeSet<Corner> = BTreeSet::new();
    let mut cycles = Vec::new();
    let mut corner_groups = Vec::new();
    for start in pending {
        if used.contains(&start) {
            continue;
        }
        let mut sides = Vec::new();
        let mut groups: Vec<Vec<Corner>> = Vec::new();
        let mut cur = start;
        let mut guard = 0;
        while used.insert(cur) {
            sides.push(complex.triangle(cur.triangle).sides[cur.index]);
            // Walk around the end vertex of this side to the next polygon side.
            let mut c = Corner {
                triangle: cur.triangle,
                index: (cur.index + 1) % 3,
            };
            let mut group = Vec::new();
            loop {
                group.push(c);
                let out = complex.triangle(c.triangle).sides[c.index];
                if is_edge(out) {
                    break;
                }
                let twin = complex
                    .locate(out.twin().unwrap())
                    .expect("twin side present");
                debug_assert!(members.contains(&twin.triangle));
                c = Corner {
                    triangle: twin.triangle,
                    index: (twin.index + 1) % 3,
                };
                guard += 1;
                assert!(
                    guard <= 3 * complex.triangles().len() + 3,
                    "corner walk did not terminate"
                );
            }
            groups.push(group);
            cur = c;
        }
        // groups[k] is the corner at the end of side k, i.e. the start of side k + 1.
        groups.rotate_right(1);
        cycles.push(sides);
        corner_groups.push(groups);
    }
    Region {
        triangles,
        cycles,
        corners: corner_groups,
        interior_arcs: interior.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hex3, hexh};

    #[test]
    fn hexh_cut_along_homonymous_arcs() {
        let c = hexh();
        let regs = regions(&c, |a| c.is_homonymous(a));
        assert_eq!(regs.len(), 3);
        let central = regs.iter().find(|r| r.triangles.len() == 2).unwrap();
        assert!(central.is_simply_connected());
        assert_eq!(central.boundary_edge_count(), 2);
        assert_eq!(central.cycles[0].len(), 4);
        assert_eq!(central.interior_arcs, vec![c.arc_by_name("h").unwrap()]);
        // Every triangle corner lands in exactly one polygon corner.
        let idx = central.corner_index();
        assert_eq!(idx.len(), 6);
    }

    #[test]
    fn uncut_complex_is_one_disk() {
        let c = hex3();
        let regs = regions(&c, |_| false);
        assert_eq!(regs.len(), 1);
        assert!(regs[0].is_simply_connected());
        assert_eq!(regs[0].boundary_edge_count(), 6);
    }
}
