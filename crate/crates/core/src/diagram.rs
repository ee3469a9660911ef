//! Weighted arc diagrams living on the arcs of an ambient triangulation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{ArcId, Color, Side, TriangulatedComplex, VertexId};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc {0:?} has no weight")]
    MissingWeight(ArcId),
    #[error("weight given for unknown arc {0:?}")]
    UnknownArc(ArcId),
}

/// A weight on every arc of a triangulated complex. Weight-zero arcs stand for
/// arcs absent from the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedArcDiagram {
    complex: TriangulatedComplex,
    weights: BTreeMap<ArcId, Weight>,
}

impl WeightedArcDiagram {
    pub fn new(
        complex: TriangulatedComplex,
        weights: BTreeMap<ArcId, Weight>,
    ) -> Result<Self, DiagramError> {
        for a in complex.arc_ids() {
            if !weights.contains_key(&a) {
                return Err(DiagramError::MissingWeight(a));
            }
        }
        for a in weights.keys() {
            if !complex.has_arc(*a) {
                return Err(DiagramError::UnknownArc(*a));
            }
        }
        Ok(WeightedArcDiagram { complex, weights })
    }

    pub fn complex(&self) -> &TriangulatedComplex {
        &self.complex
    }

    pub fn weights(&self) -> &BTreeMap<ArcId, Weight> {
        &self.weights
    }

    pub fn weight(&self, a: ArcId) -> &Weight {
        &self.weights[&a]
    }

    pub fn set_weight(&mut self, a: ArcId, w: Weight) {
        assert!(self.complex.has_arc(a));
        self.weights.insert(a, w);
    }

    /// Arcs of positive weight.
    pub fn support(&self) -> impl Iterator<Item = (ArcId, &Weight)> {
        self.weights
            .iter()
            .filter(|(_, w)| w.is_positive())
            .map(|(a, w)| (*a, w))
    }

    /// Equal up to weight-zero arcs.
    pub fn equivalent(&self, other: &WeightedArcDiagram) -> bool {
        let a: BTreeMap<_, _> = self.support().collect();
        let b: BTreeMap<_, _> = other.support().collect();
        a == b
    }

    pub fn is_fully_homonymous(&self) -> bool {
        self.support().all(|(a, _)| self.complex.is_homonymous(a))
    }

    pub fn scaled(&self, q: &Weight) -> WeightedArcDiagram {
        WeightedArcDiagram {
            complex: self.complex.clone(),
            weights: self.weights.iter().map(|(a, w)| (*a, w.scale(q))).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Homonymous(Color),
    Heteronymous,
}

/// A triangle bounded by an arc and two boundary edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OuterTriangle {
    pub triangle: usize,
    /// The vertex between the two boundary edges.
    pub apex: VertexId,
}

/// The all-arc triangle on the far side of an outer arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerTriangle {
    pub triangle: usize,
    /// The two other sides, in triangle order after the outer arc.
    pub legs: [ArcId; 2],
    /// The vertex opposite the outer arc.
    pub opposite: VertexId,
    pub homonymous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterRecord {
    pub outer_triangles: Vec<OuterTriangle>,
    pub inner: Option<InnerTriangle>,
}

impl OuterRecord {
    /// Endpoints of the dual arc: apex of the outer triangle, opposite vertex of the inner one.
    pub fn dual_arc(&self) -> Option<(VertexId, VertexId)> {
        let inner = self.inner?;
        Some((self.outer_triangles[0].apex, inner.opposite))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcClassification {
    pub arc: ArcId,
    pub kind: ArcKind,
    pub outer: Option<OuterRecord>,
}

impl ArcClassification {
    pub fn is_outer(&self) -> bool {
        self.outer.is_some()
    }

    pub fn homonymous_inner(&self) -> Option<InnerTriangle> {
        self.outer.as_ref()?.inner.filter(|i| i.homonymous)
    }
}

/// Classify one arc of a complex.
pub fn classify_arc(c: &TriangulatedComplex, a: ArcId) -> ArcClassification {
    let kind = match c.arc_color(a) {
        Some(col) => ArcKind::Homonymous(col),
        None => ArcKind::Heteronymous,
    };
    let mut outer_triangles = Vec::new();
    let mut others = Vec::new();
    for side in [Side::Arc(a, 0), Side::Arc(a, 1)] {
        let Some(slot) = c.locate(side) else { continue };
        let tri = c.triangle(slot.triangle);
        let s1 = tri.sides[(slot.index + 1) % 3];
        let s2 = tri.sides[(slot.index + 2) % 3];
        if matches!((s1, s2), (Side::Boundary(_), Side::Boundary(_))) {
            let apex = c.side_ends(s1).1;
            outer_triangles.push(OuterTriangle {
                triangle: slot.triangle,
                apex,
            });
        } else {
            others.push((slot, s1, s2));
        }
    }
    let outer = if outer_triangles.is_empty() {
        None
    } else {
        let inner = match (outer_triangles.len(), others.as_slice()) {
            (1, [(slot, s1, s2)]) => match (s1.arc(), s2.arc()) {
                (Some(x), Some(y)) if x != a && y != a && x != y => Some(InnerTriangle {
                    triangle: slot.triangle,
                    legs: [x, y],
                    opposite: c.side_ends(*s1).1,
                    homonymous: c.is_homonymous(x) && c.is_homonymous(y),
                }),
                _ => None,
            },
            _ => None,
        };
        Some(OuterRecord {
            outer_triangles,
            inner,
        })
    };
    ArcClassification {
        arc: a,
        kind,
        outer,
    }
}

pub fn classify_arcs(d: &WeightedArcDiagram) -> BTreeMap<ArcId, ArcClassification> {
    let c = d.complex();
    c.arc_ids().map(|a| (a, classify_arc(c, a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hex3, hexh, sq1, weighted, weights};

    #[test]
    fn hex3_arcs_are_outer_with_the_central_inner_triangle() {
        let d = weighted(hex3(), &weights(&[1, 1, 1]));
        let cls = classify_arcs(&d);
        let c = d.complex();
        for (a, k) in &cls {
            assert_eq!(k.kind, ArcKind::Homonymous(Color::Alpha));
            let rec = k.outer.as_ref().expect("outer");
            assert_eq!(rec.outer_triangles.len(), 1);
            let inner = rec.inner.expect("inner triangle");
            assert!(inner.homonymous);
            assert!(!inner.legs.contains(a));
            // The central triangle has no boundary sides.
            let central = c.triangle(inner.triangle);
            assert!(central.sides.iter().all(|s| s.arc().is_some()));
        }
        // c1 = v0-v2: apex v1, opposite v4.
        let c1 = c.arc_by_name("c1").unwrap();
        let (apex, opp) = cls[&c1].outer.as_ref().unwrap().dual_arc().unwrap();
        assert_eq!((c.vertex_name(apex), c.vertex_name(opp)), ("v1", "v4"));
        assert_ne!(c.color(apex), c.color(opp));
    }

    #[test]
    fn hexh_classification() {
        let d = weighted(hexh(), &weights(&[2, 4, 3]));
        let c = d.complex();
        let cls = classify_arcs(&d);
        let c1 = c.arc_by_name("c1").unwrap();
        let c2 = c.arc_by_name("c2").unwrap();
        let h = c.arc_by_name("h").unwrap();
        assert_eq!(cls[&h].kind, ArcKind::Heteronymous);
        assert!(!cls[&h].is_outer());
        assert_eq!(cls[&c2].kind, ArcKind::Homonymous(Color::Beta));
        for x in [c1, c2] {
            let rec = cls[&x].outer.as_ref().unwrap();
            // The far side is a ladder triangle, not an all-arc inner triangle.
            assert!(rec.inner.is_none());
        }
    }

    #[test]
    fn sq1_arc_is_outer_on_both_sides_without_inner_triangle() {
        let d = weighted(sq1(), &weights(&[2]));
        let cls = classify_arcs(&d);
        let rec = cls.values().next().unwrap().outer.as_ref().unwrap();
        assert_eq!(rec.outer_triangles.len(), 2);
        assert!(rec.inner.is_none());
    }

    #[test]
    fn equivalence_ignores_zero_arcs() {
        let a = weighted(hexh(), &weights(&[2, 4, 0]));
        let mut b = a.clone();
        assert!(a.equivalent(&b));
        b.set_weight(ArcId(2), Weight::from_int(1));
        assert!(!a.equivalent(&b));
    }
}
