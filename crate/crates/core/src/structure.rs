//! Clumps, ladders and one-seam reduction.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{assemble, ArcId, Color, RawSide, RawTriangle, Side, TriangulatedComplex};
use crate::diagram::{classify_arc, WeightedArcDiagram};
use crate::ladder::LadderList;
use crate::region::regions;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("ladder {ladder} is not simply connected")]
    NotSimplyConnected { ladder: usize },
    #[error("ladder {ladder} has {count} boundary edges, expected 2")]
    BoundaryEdges { ladder: usize, count: usize },
    #[error("ladder {ladder} is bounded twice by clump {clump}")]
    RepeatedClump { ladder: usize, clump: usize },
    #[error("ladder {ladder} has a triangle without exactly one homonymous side")]
    Malformed { ladder: usize },
}

/// A heteronymous ladder, listed over its bounding arcs and over their clumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub triangles: Vec<usize>,
    pub arcs: LadderList<ArcId>,
    pub clumps: LadderList<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Homonymous clumps, each sorted, ordered by smallest arc.
    pub clumps: Vec<Vec<ArcId>>,
    pub ladders: Vec<Ladder>,
}

impl Decomposition {
    pub fn clump_of(&self, a: ArcId) -> Option<usize> {
        self.clumps.iter().position(|k| k.binary_search(&a).is_ok())
    }
}

/// Connected components of homonymous arcs, two arcs being adjacent when they are
/// sides of one triangle.
pub fn clumps(c: &TriangulatedComplex) -> Vec<Vec<ArcId>> {
    let hom: Vec<ArcId> = c.arc_ids().filter(|a| c.is_homonymous(*a)).collect();
    let index: BTreeMap<ArcId, usize> = hom.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut parent: Vec<usize> = (0..hom.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for tri in c.triangles() {
        let ids: Vec<usize> = tri
            .sides
            .iter()
            .filter_map(|s| s.arc())
            .filter_map(|a| index.get(&a).copied())
            .collect();
        for w in ids.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<ArcId>> = BTreeMap::new();
    for (i, a) in hom.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(*a);
    }
    groups.into_values().collect()
}

/// Split a maximal diagram into homonymous clumps and heteronymous ladders.
pub fn decompose(d: &WeightedArcDiagram) -> Result<Decomposition, DecomposeError> {
    let c = d.complex();
    let clumps = clumps(c);
    let clump_of: BTreeMap<ArcId, usize> = clumps
        .iter()
        .enumerate()
        .flat_map(|(k, arcs)| arcs.iter().map(move |a| (*a, k)))
        .collect();
    let mut ladders = Vec::new();
    for region in regions(c, |a| c.is_homonymous(a)) {
        if region.interior_arcs.is_empty() {
            continue;
        }
        let ladder = ladders.len();
        if !region.is_simply_connected() {
            return Err(DecomposeError::NotSimplyConnected { ladder });
        }
        let count = region.boundary_edge_count();
        if count != 2 {
            return Err(DecomposeError::BoundaryEdges { ladder, count });
        }
        let arcs =
            ladder_walk(c, d, &region.triangles).ok_or(DecomposeError::Malformed { ladder })?;
        let mut seen = BTreeSet::new();
        for a in arcs.symbols() {
            let k = clump_of[&a];
            if !seen.insert(k) {
                return Err(DecomposeError::RepeatedClump { ladder, clump: k });
            }
        }
        let clumps_list = arcs.map(|a| clump_of[a]);
        ladders.push(Ladder {
            triangles: region.triangles,
            arcs,
            clumps: clumps_list,
        });
    }
    Ok(Decomposition { clumps, ladders })
}

/// The ladder's triangles form a path joined by its rungs. Read the wall of each
/// triangle from the end lying left of its rung, rungs oriented out of their
/// alpha end.
fn ladder_walk(
    c: &TriangulatedComplex,
    d: &WeightedArcDiagram,
    tris: &[usize],
) -> Option<LadderList<ArcId>> {
    let members: BTreeSet<usize> = tris.iter().copied().collect();
    let wall_of = |t: usize| -> Option<ArcId> {
        let hom: Vec<ArcId> = c
            .triangle(t)
            .sides
            .iter()
            .filter_map(|s| s.arc())
            .filter(|a| c.is_homonymous(*a))
            .collect();
        (hom.len() == 1).then(|| hom[0])
    };
    let rungs_of = |t: usize| -> Vec<Side> {
        c.triangle(t)
            .sides
            .iter()
            .copied()
            .filter(|s| s.arc().is_some_and(|a| !c.is_homonymous(a)))
            .collect()
    };
    // The left triangle of a rung oriented out of its alpha end.
    let left_of = |h: ArcId| -> usize {
        let s = if c.color(c.arc(h).ends[0]) == Color::Alpha {
            0
        } else {
            1
        };
        c.locate(Side::Arc(h, s)).unwrap().triangle
    };
    let ends: Vec<usize> = tris
        .iter()
        .copied()
        .filter(|t| rungs_of(*t).len() == 1)
        .collect();
    if ends.len() != 2 {
        return None;
    }
    let start = ends
        .into_iter()
        .find(|t| left_of(rungs_of(*t)[0].arc().unwrap()) == *t)?;
    let mut list = LadderList::headed(wall_of(start)?, Vec::new());
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let next = rungs_of(cur).into_iter().find_map(|s| {
            let t = c.locate(s.twin().unwrap())?.triangle;
            (t != prev && members.contains(&t)).then_some((s.arc().unwrap(), t))
        });
        let Some((h, t)) = next else { break };
        list.steps.push((d.weight(h).clone(), wall_of(t)?));
        (prev, cur) = (cur, t);
        if list.steps.len() > tris.len() {
            return None;
        }
    }
    (list.steps.len() + 1 == tris.len()).then_some(list)
}

/// The substrate of one clump: its all-homonymous triangles, with a fresh outer
/// triangle pasted on every arc side that faces out of the clump.
pub fn clump_substrate(d: &WeightedArcDiagram, clump: &[ArcId]) -> WeightedArcDiagram {
    let c = d.complex();
    let inside: BTreeSet<ArcId> = clump.iter().copied().collect();
    let full = c.to_raw();
    let mut raw = Vec::new();
    let mut covered = BTreeSet::new();
    for (t, tri) in c.triangles().iter().enumerate() {
        let all_in = tri
            .sides
            .iter()
            .all(|s| s.arc().is_some_and(|a| inside.contains(&a)));
        if all_in {
            raw.push(full[t].clone());
            covered.extend(tri.sides.iter().copied());
        }
    }
    for &a in clump {
        for s in 0..2u8 {
            let side = Side::Arc(a, s);
            if covered.contains(&side) {
                continue;
            }
            let (from, to) = c.side_ends(side);
            let col = c.color(from);
            raw.push(RawTriangle {
                sides: [RawSide::Arc(a, s), RawSide::Boundary, RawSide::Boundary],
                colors: [col, c.color(to), col.other()],
                names: [
                    c.vertex_name(from).to_string(),
                    c.vertex_name(to).to_string(),
                    format!("o{}.{s}", c.arc_name(a)),
                ],
            });
        }
    }
    let mut parts = assemble(&raw, &c.arc_names());
    assert_eq!(parts.len(), 1, "a clump is connected");
    let complex = parts.pop().unwrap();
    let weights = complex
        .arc_ids()
        .map(|a| (a, d.weight(a).clone()))
        .collect();
    WeightedArcDiagram::new(complex, weights).expect("clump arcs carry weights")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeamError {
    #[error("arc {0:?} is not in the complex")]
    UnknownArc(ArcId),
    #[error("arc {0:?} is not outer")]
    NotOuter(ArcId),
    #[error("arc {0:?} has no homonymous inner triangle")]
    NoInnerTriangle(ArcId),
}

/// Result of cutting one complex along the dual arc of an outer arc. The two legs
/// of the consumed inner triangle are listed so that the piece holding `first`
/// precedes the piece holding `second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeamCut {
    pub pieces: Vec<TriangulatedComplex>,
    pub first: ArcId,
    pub second: ArcId,
}

/// Cut along the dual arc of `a` and delete `a`. With `q` the vertex opposite `a`
/// and `x`, `y` the legs in canonical order at `q`, the `x` piece comes first when
/// `q` is alpha and second when `q` is beta.
pub fn cut_seam(c: &TriangulatedComplex, a: ArcId) -> Result<SeamCut, SeamError> {
    if !c.has_arc(a) {
        return Err(SeamError::UnknownArc(a));
    }
    let cls = classify_arc(c, a);
    let rec = cls.outer.ok_or(SeamError::NotOuter(a))?;
    let inner = rec
        .inner
        .filter(|i| i.homonymous)
        .ok_or(SeamError::NoInnerTriangle(a))?;
    let outer_t = rec.outer_triangles[0].triangle;
    let raw = c.to_raw();
    let slot = |t: usize| {
        c.triangle(t)
            .sides
            .iter()
            .position(|s| s.arc() == Some(a))
            .unwrap()
    };
    let (i, j) = (slot(outer_t), slot(inner.triangle));
    let (od, id) = (&raw[outer_t], &raw[inner.triangle]);
    // Outer triangle: u -> v along a, then v -> p, p -> u. Inner: v -> u, u -> q, q -> v.
    let at = |r: &RawTriangle, k: usize| (r.sides[k % 3], r.colors[k % 3], r.names[k % 3].clone());
    let (_, cu, nu) = at(od, i);
    let (e_a, cv, nv) = at(od, i + 1);
    let (e_b, cp, np) = at(od, i + 2);
    let (x, _, _) = at(id, j + 1);
    let (y, cq, nq) = at(id, j + 2);
    let t1 = RawTriangle {
        sides: [e_b, x, RawSide::Boundary],
        colors: [cp, cu, cq],
        names: [np.clone(), nu, nq.clone()],
    };
    let t2 = RawTriangle {
        sides: [y, e_a, RawSide::Boundary],
        colors: [cq, cv, cp],
        names: [nq, nv, np],
    };
    let mut next: Vec<RawTriangle> = raw
        .iter()
        .enumerate()
        .filter(|(t, _)| *t != outer_t && *t != inner.triangle)
        .map(|(_, r)| r.clone())
        .collect();
    next.push(t1);
    next.push(t2);
    let mut names = c.arc_names();
    names.remove(&a);
    let pieces = assemble(&next, &names);
    let [lx, ly] = inner.legs;
    let (first, second) = if cq == Color::Alpha {
        (lx, ly)
    } else {
        (ly, lx)
    };
    Ok(SeamCut {
        pieces,
        first,
        second,
    })
}

/// A one-seam reduction on a weighted diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeamReduction {
    pub components: Vec<WeightedArcDiagram>,
    /// Indices into `components`: `first` meets `second` on its left.
    pub first: usize,
    pub second: usize,
}

pub fn one_seam_reduction(d: &WeightedArcDiagram, a: ArcId) -> Result<SeamReduction, SeamError> {
    let cut = cut_seam(d.complex(), a)?;
    let components: Vec<WeightedArcDiagram> = cut
        .pieces
        .into_iter()
        .map(|p| restrict(d.weights(), p))
        .collect();
    let holder = |arc: ArcId| {
        components
            .iter()
            .position(|k| k.complex().has_arc(arc))
            .unwrap()
    };
    let (first, second) = (holder(cut.first), holder(cut.second));
    Ok(SeamReduction {
        components,
        first,
        second,
    })
}

/// The diagram on `complex` carrying the weights of its arcs from `weights`.
pub fn restrict(
    weights: &BTreeMap<ArcId, Weight>,
    complex: TriangulatedComplex,
) -> WeightedArcDiagram {
    let w = complex
        .arc_ids()
        .map(|a| (a, weights[&a].clone()))
        .collect();
    WeightedArcDiagram::new(complex, w).expect("weights cover every arc")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("components meet in a cycle")]
pub struct OrderCycle;

/// Order `n` components so that every `(i, j)` in `before` puts `i` ahead of `j`.
/// Ties go to the smaller index.
pub fn order_components(n: usize, before: &[(usize, usize)]) -> Result<Vec<usize>, OrderCycle> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in before {
        if i == j {
            return Err(OrderCycle);
        }
        out[i].push(j);
        indeg[j] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|i| indeg[*i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &j in &out[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(OrderCycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hex3, hexh, polygon, sq1, weighted, weights};

    #[test]
    fn hexh_has_two_clumps_and_one_ladder() {
        let d = weighted(hexh(), &weights(&[2, 4, 3]));
        let dec = decompose(&d).unwrap();
        assert_eq!(dec.clumps, vec![vec![ArcId(0)], vec![ArcId(1)]]);
        assert_eq!(dec.ladders.len(), 1);
        let l = &dec.ladders[0];
        assert_eq!(
            l.arcs,
            LadderList::headed(ArcId(0), vec![(Weight::from_int(3), ArcId(1))])
        );
        assert_eq!(l.clumps.symbols(), vec![0, 1]);
    }

    #[test]
    fn hex3_is_one_clump() {
        let d = weighted(hex3(), &weights(&[1, 1, 1]));
        let dec = decompose(&d).unwrap();
        assert_eq!(dec.clumps.len(), 1);
        assert!(dec.ladders.is_empty());
        let sub = clump_substrate(&d, &dec.clumps[0]);
        assert!(sub.complex().validate().is_ok());
        assert_eq!(sub.complex().triangles().len(), 4);
    }

    #[test]
    fn ladders_split_at_shared_walls() {
        let c = polygon(
            8,
            &[
                (0, 2, "a"),
                (2, 7, "h1"),
                (3, 7, "b"),
                (3, 6, "h2"),
                (4, 6, "c"),
            ],
        );
        let d = weighted(c, &weights(&[1, 5, 2, 7, 3]));
        let dec = decompose(&d).unwrap();
        assert_eq!(dec.clumps.len(), 3);
        assert_eq!(dec.ladders.len(), 2);
        let mut rungs: Vec<Weight> = dec.ladders.iter().map(|l| l.arcs.total()).collect();
        rungs.sort();
        assert_eq!(rungs, weights(&[5, 7]));
    }

    #[test]
    fn ladder_with_three_walls() {
        let c = polygon(
            8,
            &[
                (1, 3, "a"),
                (0, 3, "h1"),
                (3, 5, "b"),
                (0, 5, "h2"),
                (5, 7, "c"),
            ],
        );
        assert!(c.validate().is_ok());
        let d = weighted(c, &weights(&[1, 5, 2, 7, 3]));
        let dec = decompose(&d).unwrap();
        assert_eq!(dec.clumps.len(), 3);
        assert_eq!(dec.ladders.len(), 1);
        let l = &dec.ladders[0].arcs;
        assert_eq!(l.symbols()[1], ArcId(2));
        let ws: Vec<Weight> = l.weights().cloned().collect();
        assert!(ws == weights(&[5, 7]) || ws == weights(&[7, 5]), "{l:?}");
    }

    #[test]
    fn hex3_seam_reduction_gives_two_squares() {
        let d = weighted(hex3(), &weights(&[1, 1, 1]));
        let r = one_seam_reduction(&d, ArcId(0)).unwrap();
        assert_eq!(r.components.len(), 2);
        for k in &r.components {
            let rep = k.complex().validate();
            assert!(rep.is_ok(), "{:?}", rep.violations);
            assert_eq!(k.complex().vertex_count(), 4);
            assert_eq!(k.complex().arcs().len(), 1);
        }
        assert_ne!(r.first, r.second);
        // Opposite vertex v4 is alpha: c2 then c3 in canonical order there puts one first.
        let again = one_seam_reduction(
            &r.components[0],
            r.components[0].complex().arc_ids().next().unwrap(),
        );
        assert!(matches!(again, Err(SeamError::NoInnerTriangle(_))));
    }

    #[test]
    fn sq1_has_no_seam() {
        let d = weighted(sq1(), &weights(&[2]));
        assert_eq!(
            one_seam_reduction(&d, ArcId(0)),
            Err(SeamError::NoInnerTriangle(ArcId(0)))
        );
        let h = weighted(hexh(), &weights(&[1, 1, 1]));
        assert_eq!(
            one_seam_reduction(&h, ArcId(2)),
            Err(SeamError::NotOuter(ArcId(2)))
        );
    }

    #[test]
    fn component_orders() {
        assert_eq!(order_components(2, &[(0, 1)]), Ok(vec![0, 1]));
        assert_eq!(order_components(2, &[(1, 0)]), Ok(vec![1, 0]));
        assert_eq!(order_components(2, &[(0, 1), (1, 0)]), Err(OrderCycle));
        assert_eq!(order_components(3, &[(0, 1), (1, 2)]), Ok(vec![0, 1, 2]));
        assert_eq!(order_components(3, &[(2, 1), (1, 0)]), Ok(vec![2, 1, 0]));
    }
}
