//! Triangulated polygons: the named test substrates and an exhaustive generator.

use std::collections::BTreeMap;

use crate::complex::{
    assemble, ArcEdge, ArcId, BoundaryEdge, Color, EdgeId, RawSide, RawTriangle, Side, Triangle,
    TriangulatedComplex, VertexId,
};
use crate::diagram::WeightedArcDiagram;
use crate::weight::Weight;
use Color::{Alpha, Beta};

/// Color of polygon vertex `i`: even vertices are alpha.
pub fn polygon_color(i: usize) -> Color {
    if i % 2 == 0 {
        Color::Alpha
    } else {
        Color::Beta
    }
}

/// A convex `n`-gon (vertices `v0..` counterclockwise, boundary edge `i` from `v_i`
/// to `v_{i+1}`) triangulated by the given diagonals. Arc ids follow the order of
/// `diagonals`.
pub fn polygon(n: usize, diagonals: &[(usize, usize, &str)]) -> TriangulatedComplex {
    assert!(
        n >= 4 && n % 2 == 0,
        "polygon needs an even vertex count >= 4"
    );
    let colors = (0..n).map(polygon_color).collect();
    let names = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n)
        .map(|i| BoundaryEdge {
            from: VertexId(i),
            to: VertexId((i + 1) % n),
        })
        .collect();
    let mut arcs = BTreeMap::new();
    let mut lookup = BTreeMap::new();
    for (k, &(p, q, name)) in diagonals.iter().enumerate() {
        let (lo, hi) = (p.min(q), p.max(q));
        arcs.insert(
            ArcId(k),
            ArcEdge {
                ends: [VertexId(lo), VertexId(hi)],
                name: name.to_string(),
            },
        );
        lookup.insert((lo, hi), ArcId(k));
    }
    let side = |p: usize, q: usize| -> Option<Side> {
        if (p + 1) % n == q {
            return Some(Side::Boundary(EdgeId(p)));
        }
        let (lo, hi) = (p.min(q), p.max(q));
        lookup
            .get(&(lo, hi))
            .map(|a| Side::Arc(*a, if p < q { 0 } else { 1 }))
    };
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let (Some(x), Some(y), Some(z)) = (side(a, b), side(b, c), side(c, a)) {
                    triangles.push(Triangle { sides: [x, y, z] });
                }
            }
        }
    }
    TriangulatedComplex::new(colors, names, edges, arcs, triangles)
}

/// Square with the alpha diagonal `d = v0-v2`.
pub fn sq1() -> TriangulatedComplex {
    polygon(4, &[(0, 2, "d")])
}

/// Hexagon with the three alpha diagonals forming a central triangle.
pub fn hex3() -> TriangulatedComplex {
    polygon(6, &[(0, 2, "c1"), (2, 4, "c2"), (4, 0, "c3")])
}

/// Hexagon with alpha `c1 = v0-v2`, beta `c2 = v3-v5` and heteronymous `h = v2-v5`.
pub fn hexh() -> TriangulatedComplex {
    polygon(6, &[(0, 2, "c1"), (3, 5, "c2"), (2, 5, "h")])
}

/// Diagram on `complex` whose arcs, in id order, get the given weights.
pub fn weighted(complex: TriangulatedComplex, weights: &[Weight]) -> WeightedArcDiagram {
    let ids: Vec<ArcId> = complex.arc_ids().collect();
    assert_eq!(ids.len(), weights.len());
    let map = ids.into_iter().zip(weights.iter().cloned()).collect();
    WeightedArcDiagram::new(complex, map).expect("weights cover every arc")
}

pub fn weights(values: &[u64]) -> Vec<Weight> {
    values.iter().map(|v| Weight::from_int(*v)).collect()
}

/// All triangulations of the convex `n`-gon, as diagonal lists `(p, q)` with `p < q`.
pub fn polygon_triangulations(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        i: usize,
        j: usize,
        memo: &mut BTreeMap<(usize, usize), Vec<Vec<(usize, usize)>>>,
    ) -> Vec<Vec<(usize, usize)>> {
        if j <= i + 1 {
            return vec![vec![]];
        }
        if let Some(v) = memo.get(&(i, j)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for k in i + 1..j {
            let left = rec(i, k, memo);
            let right = rec(k, j, memo);
            for l in &left {
                for r in &right {
                    let mut d = l.clone();
                    d.extend(r.iter().copied());
                    if k > i + 1 {
                        d.push((i, k));
                    }
                    if j > k + 1 {
                        d.push((k, j));
                    }
                    out.push(d);
                }
            }
        }
        memo.insert((i, j), out.clone());
        out
    }
    let mut memo = BTreeMap::new();
    rec(0, n - 1, &mut memo)
        .into_iter()
        .map(|mut d| {
            d.sort_unstable();
            d
        })
        .collect()
}

/// Triangulations of the `n`-gon up to rotation by two steps (the color-preserving
/// rotations), each given by a representative diagonal list.
pub fn polygon_triangulations_up_to_rotation(n: usize) -> Vec<Vec<(usize, usize)>> {
    let all = polygon_triangulations(n);
    let canon = |d: &Vec<(usize, usize)>| -> Vec<(usize, usize)> {
        (0..n)
            .step_by(2)
            .map(|r| {
                let mut rot: Vec<(usize, usize)> = d
                    .iter()
                    .map(|&(p, q)| {
                        let (a, b) = ((p + r) % n, (q + r) % n);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                rot.sort_unstable();
                rot
            })
            .min()
            .unwrap()
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for d in all {
        if seen.insert(canon(&d)) {
            out.push(d);
        }
    }
    out
}

/// Complex for a diagonal list, arcs named `a{p}_{q}`.
pub fn polygon_from_diagonals(n: usize, diagonals: &[(usize, usize)]) -> TriangulatedComplex {
    let names: Vec<String> = diagonals.iter().map(|(p, q)| format!("a{p}_{q}")).collect();
    let spec: Vec<(usize, usize, &str)> = diagonals
        .iter()
        .zip(&names)
        .map(|(&(p, q), n)| (p, q, n.as_str()))
        .collect();
    polygon(n, &spec)
}

/// Triangulated annuli with two vertices on each boundary circle. Each is a hexagon
/// triangulation with two opposite sides glued along the arc `x`; `x` runs from the
/// outer alpha vertex to the inner alpha vertex when `x_homonymous`, else to the
/// inner beta vertex.
pub fn annulus_triangulations(x_homonymous: bool) -> Vec<TriangulatedComplex> {
    let (colors, names): (Vec<Color>, Vec<&str>) = if x_homonymous {
        (
            vec![Alpha, Beta, Alpha, Alpha, Beta, Alpha],
            vec!["o0", "o1", "o0", "i0", "i1", "i0"],
        )
    } else {
        (
            vec![Alpha, Beta, Alpha, Beta, Alpha, Beta],
            vec!["o0", "o1", "o0", "i1", "i0", "i1"],
        )
    };
    let x = ArcId(0);
    let mut out = Vec::new();
    for diagonals in polygon_triangulations(6) {
        let mut arc_names = BTreeMap::from([(x, "x".to_string())]);
        let mut lookup = BTreeMap::new();
        for (k, &(p, q)) in diagonals.iter().enumerate() {
            arc_names.insert(ArcId(k + 1), format!("a{p}_{q}"));
            lookup.insert((p, q), ArcId(k + 1));
        }
        let side = |p: usize, q: usize| -> Option<RawSide> {
            match (p, q) {
                (2, 3) => Some(RawSide::Arc(x, 0)),
                (5, 0) => Some(RawSide::Arc(x, 1)),
                _ if (p + 1) % 6 == q => Some(RawSide::Boundary),
                _ => {
                    let (lo, hi) = (p.min(q), p.max(q));
                    lookup
                        .get(&(lo, hi))
                        .map(|a| RawSide::Arc(*a, u8::from(p > q)))
                }
            }
        };
        let mut raw = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    if let (Some(u), Some(v), Some(w)) = (side(a, b), side(b, c), side(c, a)) {
                        raw.push(RawTriangle {
                            sides: [u, v, w],
                            colors: [colors[a], colors[b], colors[c]],
                            names: [
                                names[a].to_string(),
                                names[b].to_string(),
                                names[c].to_string(),
                            ],
                        });
                    }
                }
            }
        }
        let mut parts = assemble(&raw, &arc_names);
        assert_eq!(parts.len(), 1);
        out.push(parts.pop().unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        assert_eq!(polygon_triangulations(4).len(), 2);
        assert_eq!(polygon_triangulations(6).len(), 14);
        assert_eq!(polygon_triangulations(8).len(), 132);
    }

    #[test]
    fn every_generated_triangulation_is_valid() {
        for n in [4, 6, 8] {
            for d in polygon_triangulations(n) {
                let c = polygon_from_diagonals(n, &d);
                let r = c.validate();
                assert!(r.is_ok(), "{d:?}: {:?}", r.violations);
                assert_eq!(c.triangles().len(), n - 2);
            }
        }
    }

    #[test]
    fn annuli_are_valid() {
        for hom in [true, false] {
            let all = annulus_triangulations(hom);
            assert_eq!(all.len(), 14);
            for c in all {
                let r = c.validate();
                assert!(r.is_ok(), "{:?}", r.violations);
                assert_eq!(r.euler_characteristic, 0);
                assert_eq!(c.vertex_count(), 4);
                assert_eq!(c.arcs().len(), 4);
                assert_eq!(c.boundary_components().len(), 2);
            }
        }
    }

    #[test]
    fn rotation_classes_cover_everything() {
        assert_eq!(polygon_triangulations_up_to_rotation(4).len(), 2);
        let hex = polygon_triangulations_up_to_rotation(6);
        assert!(hex.len() < 14 && hex.len() >= 14 / 3);
    }
}
