//! Triangulated surfaces with 2-colored boundary vertices.
//!
//! A complex is a set of triangles glued along arc edges. Every triangle lists
//! its three sides counterclockwise (interior on the left); side `i` runs from
//! corner `i` to corner `i + 1`. Boundary edges are oriented with the interior
//! on their left, so they appear in their triangle in their own direction. An
//! arc edge has two sides: side 0 runs `ends[0] -> ends[1]`, side 1 runs back.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Alpha,
    Beta,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Alpha => Color::Beta,
            Color::Beta => Color::Alpha,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Alpha => "alpha",
            Color::Beta => "beta",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub usize);

/// One slot of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Boundary(EdgeId),
    Arc(ArcId, u8),
}

impl Side {
    pub fn arc(self) -> Option<ArcId> {
        match self {
            Side::Arc(a, _) => Some(a),
            Side::Boundary(_) => None,
        }
    }

    /// The other side of the same arc.
    pub fn twin(self) -> Option<Side> {
        match self {
            Side::Arc(a, s) => Some(Side::Arc(a, 1 - s)),
            Side::Boundary(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcEdge {
    pub ends: [VertexId; 2],
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub sides: [Side; 3],
}

/// A triangle corner: corner `i` of triangle `t` sits at the start of side `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub triangle: usize,
    pub index: usize,
}

/// One end of an arc at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcEnd {
    pub arc: ArcId,
    pub end: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexId),
    #[error("unknown arc {0:?}")]
    UnknownArc(ArcId),
    #[error("corner walk at vertex {0:?} did not close")]
    BrokenLink(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadReference(String),
    Coloring {
        edge: EdgeId,
    },
    BoundaryDegree {
        vertex: VertexId,
        incoming: usize,
        outgoing: usize,
    },
    ShortBoundary {
        component: usize,
        vertices: usize,
    },
    SlotCount {
        side: Side,
        count: usize,
    },
    Chain {
        triangle: usize,
        slot: usize,
    },
    Link {
        vertex: VertexId,
    },
    Disconnected,
    ArcCount {
        found: usize,
        expected: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadReference(s) => write!(f, "bad reference: {s}"),
            Violation::Coloring { edge } => {
                write!(f, "boundary edge {} joins vertices of equal color", edge.0)
            }
            Violation::BoundaryDegree {
                vertex,
                incoming,
                outgoing,
            } => write!(
                f,
                "vertex {} has {incoming} incoming and {outgoing} outgoing boundary edges",
                vertex.0
            ),
            Violation::ShortBoundary {
                component,
                vertices,
            } => {
                write!(
                    f,
                    "boundary component {component} has only {vertices} vertices"
                )
            }
            Violation::SlotCount { side, count } => {
                write!(
                    f,
                    "side {side:?} occupies {count} triangle slots, expected 1"
                )
            }
            Violation::Chain { triangle, slot } => {
                write!(
                    f,
                    "triangle {triangle}: side {slot} does not end where side {} starts",
                    (slot + 1) % 3
                )
            }
            Violation::Link { vertex } => {
                write!(f, "link of vertex {} is not an interval", vertex.0)
            }
            Violation::Disconnected => write!(f, "complex is not connected"),
            Violation::ArcCount { found, expected } => write!(f, "arc count {found} ≠ {expected}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub euler_characteristic: i64,
    pub arc_count: usize,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedComplex {
    colors: Vec<Color>,
    vertex_names: Vec<String>,
    edges: Vec<BoundaryEdge>,
    arcs: BTreeMap<ArcId, ArcEdge>,
    triangles: Vec<Triangle>,
    slots: HashMap<Side, Corner>,
}

impl TriangulatedComplex {
    /// Assembles a complex from raw parts. Nothing is checked here; call
    /// [`TriangulatedComplex::validate`].
    pub fn new(
        colors: Vec<Color>,
        vertex_names: Vec<String>,
        edges: Vec<BoundaryEdge>,
        arcs: BTreeMap<ArcId, ArcEdge>,
        triangles: Vec<Triangle>,
    ) -> Self {
        let mut slots = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for (i, side) in tri.sides.iter().enumerate() {
                slots.entry(*side).or_insert(Corner {
                    triangle: t,
                    index: i,
                });
            }
        }
        TriangulatedComplex {
            colors,
            vertex_names,
            edges,
            arcs,
            triangles,
            slots,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.colors.len()).map(VertexId)
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(VertexId)
    }

    pub fn edges(&self) -> &[BoundaryEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> BoundaryEdge {
        self.edges[e.0]
    }

    pub fn arcs(&self) -> &BTreeMap<ArcId, ArcEdge> {
        &self.arcs
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs.keys().copied()
    }

    pub fn arc(&self, a: ArcId) -> &ArcEdge {
        &self.arcs[&a]
    }

    pub fn has_arc(&self, a: ArcId) -> bool {
        self.arcs.contains_key(&a)
    }

    pub fn arc_by_name(&self, name: &str) -> Option<ArcId> {
        self.arcs
            .iter()
            .find(|(_, e)| e.name == name)
            .map(|(id, _)| *id)
    }

    pub fn arc_name(&self, a: ArcId) -> &str {
        &self.arcs[&a].name
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> &Triangle {
        &self.triangles[t]
    }

    pub fn is_homonymous(&self, a: ArcId) -> bool {
        let [p, q] = self.arcs[&a].ends;
        self.colors[p.0] == self.colors[q.0]
    }

    /// Color of a homonymous arc's endpoints.
    pub fn arc_color(&self, a: ArcId) -> Option<Color> {
        let [p, q] = self.arcs[&a].ends;
        (self.colors[p.0] == self.colors[q.0]).then_some(self.colors[p.0])
    }

    /// Start and end vertex of a side as traversed inside its triangle.
    pub fn side_ends(&self, side: Side) -> (VertexId, VertexId) {
        match side {
            Side::Boundary(e) => (self.edges[e.0].from, self.edges[e.0].to),
            Side::Arc(a, 0) => (self.arcs[&a].ends[0], self.arcs[&a].ends[1]),
            Side::Arc(a, _) => (self.arcs[&a].ends[1], self.arcs[&a].ends[0]),
        }
    }

    /// Where a side sits, if it sits anywhere.
    pub fn locate(&self, side: Side) -> Option<Corner> {
        self.slots.get(&side).copied()
    }

    pub fn corner_vertex(&self, c: Corner) -> VertexId {
        self.side_ends(self.triangles[c.triangle].sides[c.index]).0
    }

    /// `V - E + F`, counting as edges every arc either listed or referenced by a triangle.
    pub fn euler_characteristic(&self) -> i64 {
        let mut arcs: BTreeSet<ArcId> = self.arcs.keys().copied().collect();
        arcs.extend(
            self.triangles
                .iter()
                .flat_map(|t| t.sides.iter().filter_map(|s| s.arc())),
        );
        self.colors.len() as i64 - (self.edges.len() + arcs.len()) as i64
            + self.triangles.len() as i64
    }

    /// The number of arcs in a triangulation with this vertex set and Euler characteristic.
    pub fn expected_arc_count(&self) -> i64 {
        self.colors.len() as i64 - 3 * self.euler_characteristic()
    }

    /// The number of branching arcs of a simple branched cover of a bigon.
    pub fn branching_count(&self) -> i64 {
        self.colors.len() as i64 / 2 - self.euler_characteristic()
    }

    pub fn incoming_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.to == v).map(EdgeId)
    }

    pub fn outgoing_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.from == v).map(EdgeId)
    }

    /// Boundary components as cyclic edge sequences, each starting at its smallest edge id.
    pub fn boundary_components(&self) -> Vec<Vec<EdgeId>> {
        let mut seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(EdgeId(cur));
                match self.outgoing_edge(self.edges[cur].to) {
                    Some(next) => cur = next.0,
                    None => break,
                }
            }
            out.push(cycle);
        }
        out
    }

    /// Walk the corners around `v` from the incoming boundary edge to the outgoing one.
    /// Returns the corners visited and the arc sides leaving `v` between them.
    pub fn corner_walk(&self, v: VertexId) -> Result<(Vec<Corner>, Vec<Side>), ComplexError> {
        if v.0 >= self.colors.len() {
            return Err(ComplexError::UnknownVertex(v));
        }
        let e_in = self.incoming_edge(v).ok_or(ComplexError::BrokenLink(v))?;
        let slot = self
            .locate(Side::Boundary(e_in))
            .ok_or(ComplexError::BrokenLink(v))?;
        let mut corner = Corner {
            triangle: slot.triangle,
            index: (slot.index + 1) % 3,
        };
        let mut corners = Vec::new();
        let mut sides = Vec::new();
        for _ in 0..=3 * self.triangles.len() {
            corners.push(corner);
            let out = self.triangles[corner.triangle].sides[corner.index];
            match out {
                Side::Boundary(_) => return Ok((corners, sides)),
                Side::Arc(..) => {
                    sides.push(out);
                    let twin = self
                        .locate(out.twin().unwrap())
                        .ok_or(ComplexError::BrokenLink(v))?;
                    corner = Corner {
                        triangle: twin.triangle,
                        index: (twin.index + 1) % 3,
                    };
                }
            }
        }
        Err(ComplexError::BrokenLink(v))
    }

    /// Arc ends at `v`, from the incoming boundary edge to the outgoing one.
    pub fn canonical_order(&self, v: VertexId) -> Result<Vec<ArcEnd>, ComplexError> {
        let (_, sides) = self.corner_walk(v)?;
        Ok(sides
            .into_iter()
            .map(|s| match s {
                Side::Arc(arc, side) => ArcEnd { arc, end: side },
                Side::Boundary(_) => unreachable!(),
            })
            .collect())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let nv = self.colors.len();
        let check_v = |v: VertexId, what: &str, violations: &mut Vec<Violation>| {
            if v.0 >= nv {
                violations.push(Violation::BadReference(format!(
                    "{what} names vertex {}",
                    v.0
                )));
                false
            } else {
                true
            }
        };
        let mut refs_ok = true;
        for (i, e) in self.edges.iter().enumerate() {
            refs_ok &= check_v(e.from, &format!("boundary edge {i}"), &mut violations);
            refs_ok &= check_v(e.to, &format!("boundary edge {i}"), &mut violations);
        }
        for (id, a) in &self.arcs {
            for v in a.ends {
                refs_ok &= check_v(v, &format!("arc {}", a.name), &mut violations);
            }
            let _ = id;
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in tri.sides {
                let ok = match s {
                    Side::Boundary(e) => e.0 < self.edges.len(),
                    Side::Arc(a, side) => self.arcs.contains_key(&a) && side < 2,
                };
                if !ok {
                    refs_ok = false;
                    violations.push(Violation::BadReference(format!("triangle {t} side {s:?}")));
                }
            }
        }
        let chi = self.euler_characteristic();
        if !refs_ok {
            let expected = self.expected_arc_count();
            if self.arcs.len() as i64 != expected {
                violations.push(Violation::ArcCount {
                    found: self.arcs.len(),
                    expected,
                });
            }
            return ValidationReport {
                violations,
                euler_characteristic: chi,
                arc_count: self.arcs.len(),
            };
        }

        // Boundary: alternating colors, one edge in and out of every vertex.
        for (i, e) in self.edges.iter().enumerate() {
            if self.colors[e.from.0] == self.colors[e.to.0] {
                violations.push(Violation::Coloring { edge: EdgeId(i) });
            }
        }
        let mut degree_ok = true;
        for v in self.vertices() {
            let incoming = self.edges.iter().filter(|e| e.to == v).count();
            let outgoing = self.edges.iter().filter(|e| e.from == v).count();
            if incoming != 1 || outgoing != 1 {
                degree_ok = false;
                violations.push(Violation::BoundaryDegree {
                    vertex: v,
                    incoming,
                    outgoing,
                });
            }
        }
        if degree_ok {
            for (i, comp) in self.boundary_components().iter().enumerate() {
                if comp.len() < 2 {
                    violations.push(Violation::ShortBoundary {
                        component: i,
                        vertices: comp.len(),
                    });
                }
            }
        }

        // Slot counts.
        let mut counts: BTreeMap<Side, usize> = BTreeMap::new();
        for tri in &self.triangles {
            for s in tri.sides {
                *counts.entry(s).or_default() += 1;
            }
        }
        let mut all_sides: Vec<Side> = (0..self.edges.len())
            .map(|e| Side::Boundary(EdgeId(e)))
            .collect();
        for a in self.arcs.keys() {
            all_sides.push(Side::Arc(*a, 0));
            all_sides.push(Side::Arc(*a, 1));
        }
        let mut slots_ok = true;
        for s in all_sides {
            let c = counts.get(&s).copied().unwrap_or(0);
            if c != 1 {
                slots_ok = false;
                violations.push(Violation::SlotCount { side: s, count: c });
            }
        }

        // Chaining.
        for (t, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                if self.side_ends(tri.sides[i]).1 != self.side_ends(tri.sides[(i + 1) % 3]).0 {
                    violations.push(Violation::Chain {
                        triangle: t,
                        slot: i,
                    });
                }
            }
        }

        // Links and connectivity need well-formed slots.
        if slots_ok && degree_ok && violations.is_empty() {
            let mut visited: BTreeSet<Corner> = BTreeSet::new();
            for v in self.vertices() {
                match self.corner_walk(v) {
                    Ok((corners, _)) => {
                        let last = *corners.last().unwrap();
                        let out = self.triangles[last.triangle].sides[last.index];
                        let fresh = corners.iter().all(|c| visited.insert(*c));
                        let closes = out == Side::Boundary(self.outgoing_edge(v).unwrap());
                        let here = corners.iter().all(|c| self.corner_vertex(*c) == v);
                        if !fresh || !closes || !here {
                            violations.push(Violation::Link { vertex: v });
                        }
                    }
                    Err(_) => violations.push(Violation::Link { vertex: v }),
                }
            }
            if violations.is_empty() && visited.len() != 3 * self.triangles.len() {
                // Some corners belong to no vertex's walk: an interior vertex or a cone.
                violations.push(Violation::Link {
                    vertex: VertexId(usize::MAX),
                });
            }
            if !self.is_connected() {
                violations.push(Violation::Disconnected);
            }
        }

        let expected = self.expected_arc_count();
        if self.arcs.len() as i64 != expected {
            violations.push(Violation::ArcCount {
                found: self.arcs.len(),
                expected,
            });
        }
        ValidationReport {
            violations,
            euler_characteristic: chi,
            arc_count: self.arcs.len(),
        }
    }

    fn is_connected(&self) -> bool {
        if self.triangles.is_empty() {
            return false;
        }
        let comps = self.triangle_components(|_| false);
        comps.len() == 1
    }

    /// Connected components of triangles, glued across arcs for which `wall` is false.
    pub fn triangle_components(&self, wall: impl Fn(ArcId) -> bool) -> Vec<Vec<usize>> {
        let n = self.triangles.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for s in self.triangles[t].sides {
                    if let Side::Arc(a, _) = s {
                        if wall(a) {
                            continue;
                        }
                        if let Some(c) = self.locate(s.twin().unwrap()) {
                            if comp[c.triangle] == usize::MAX {
                                comp[c.triangle] = id;
                                members.push(c.triangle);
                                stack.push(c.triangle);
                            }
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The two triangles (with slot) holding the sides of an arc.
    pub fn arc_slots(&self, a: ArcId) -> Result<[Corner; 2], ComplexError> {
        let s0 = self
            .locate(Side::Arc(a, 0))
            .ok_or(ComplexError::UnknownArc(a))?;
        let s1 = self
            .locate(Side::Arc(a, 1))
            .ok_or(ComplexError::UnknownArc(a))?;
        Ok([s0, s1])
    }
}

/// A side in a triangle being assembled from corners, before vertices are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawSide {
    /// A boundary edge; the tag only needs to be unique within the build.
    Boundary,
    Arc(ArcId, u8),
}

#[derive(Debug, Clone)]
pub struct RawTriangle {
    pub sides: [RawSide; 3],
    /// Color at corner `i`, the start of side `i`.
    pub colors: [Color; 3],
    /// Display name hint for the vertex at corner `i`.
    pub names: [String; 3],
}

/// Assemble complexes from triangles whose vertices are identified by gluing corners
/// across shared arcs. Returns one complex per connected component, each with its
/// triangles in input order. Arc ids and names are preserved.
pub fn assemble(
    raw: &[RawTriangle],
    arc_names: &BTreeMap<ArcId, String>,
) -> Vec<TriangulatedComplex> {
    let n = raw.len();
    let mut parent: Vec<usize> = (0..3 * n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut arc_slot: HashMap<(ArcId, u8), (usize, usize)> = HashMap::new();
    for (t, tri) in raw.iter().enumerate() {
        for (i, s) in tri.sides.iter().enumerate() {
            if let RawSide::Arc(a, side) = s {
                arc_slot.insert((*a, *side), (t, i));
            }
        }
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let ra = find(p, a);
        let rb = find(p, b);
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    // Triangle connectivity, tracked separately from corners.
    let mut tri_parent: Vec<usize> = (0..n).collect();
    for (&(a, side), &(t, i)) in &arc_slot {
        if side != 0 {
            continue;
        }
        if let Some(&(u, j)) = arc_slot.get(&(a, 1)) {
            // side 0 runs corner i -> i+1 of t; side 1 runs corner j -> j+1 of u, reversed.
            union(&mut parent, 3 * t + i, 3 * u + (j + 1) % 3);
            union(&mut parent, 3 * t + (i + 1) % 3, 3 * u + j);
            union(&mut tri_parent, t, u);
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in 0..n {
        let r = find(&mut tri_parent, t);
        components.entry(r).or_default().push(t);
    }

    let mut out = Vec::new();
    for tris in components.values() {
        let mut vid: BTreeMap<usize, VertexId> = BTreeMap::new();
        let mut colors = Vec::new();
        let mut names: Vec<String> = Vec::new();
        for &t in tris {
            for i in 0..3 {
                let r = find(&mut parent, 3 * t + i);
                vid.entry(r).or_insert_with(|| {
                    colors.push(raw[t].colors[i]);
                    names.push(raw[t].names[i].clone());
                    VertexId(colors.len() - 1)
                });
            }
        }
        // Disambiguate names that were split by surgery.
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for nm in names.iter_mut() {
            let k = seen.entry(nm.clone()).or_default();
            if *k > 0 {
                *nm = format!("{nm}'{k}");
            }
            *k += 1;
        }
        let vertex_of = |p: &mut Vec<usize>, t: usize, i: usize| vid[&find(p, 3 * t + i)];
        let mut edges = Vec::new();
        let mut arcs: BTreeMap<ArcId, ArcEdge> = BTreeMap::new();
        let mut triangles = Vec::new();
        for &t in tris {
            let mut sides = [Side::Boundary(EdgeId(0)); 3];
            for i in 0..3 {
                let from = vertex_of(&mut parent, t, i);
                let to = vertex_of(&mut parent, t, (i + 1) % 3);
                sides[i] = match raw[t].sides[i] {
                    RawSide::Boundary => {
                        edges.push(BoundaryEdge { from, to });
                        Side::Boundary(EdgeId(edges.len() - 1))
                    }
                    RawSide::Arc(a, s) => {
                        let ends = if s == 0 { [from, to] } else { [to, from] };
                        let name = arc_names
                            .get(&a)
                            .cloned()
                            .unwrap_or_else(|| format!("a{}", a.0));
                        arcs.entry(a).or_insert(ArcEdge { ends, name });
                        Side::Arc(a, s)
                    }
                };
            }
            triangles.push(Triangle { sides });
        }
        out.push(TriangulatedComplex::new(
            colors, names, edges, arcs, triangles,
        ));
    }
    out
}

impl TriangulatedComplex {
    /// The raw corner description of this complex, suitable for [`assemble`].
    pub fn to_raw(&self) -> Vec<RawTriangle> {
        self.triangles
            .iter()
            .map(|tri| {
                let mut sides = [RawSide::Boundary; 3];
                let mut colors = [Color::Alpha; 3];
                let mut names: [String; 3] = Default::default();
                for i in 0..3 {
                    sides[i] = match tri.sides[i] {
                        Side::Boundary(_) => RawSide::Boundary,
                        Side::Arc(a, s) => RawSide::Arc(a, s),
                    };
                    let v = self.side_ends(tri.sides[i]).0;
                    colors[i] = self.colors[v.0];
                    names[i] = self.vertex_names[v.0].clone();
                }
                RawTriangle {
                    sides,
                    colors,
                    names,
                }
            })
            .collect()
    }

    pub fn arc_names(&self) -> BTreeMap<ArcId, String> {
        self.arcs
            .iter()
            .map(|(id, a)| (*id, a.name.clone()))
            .collect()
    }
}
