//! JSON documents for diagrams and lifting pictures.
//!
//! Vertices are referenced by index, arcs by name. Boundary edges are numbered
//! by walking the boundary cycles in order, so a document written by this module
//! reads back to the same bytes. Weights are `"p/q"` strings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigon::{BigonArc, WeightedBigonDiagram};
use crate::complex::{
    ArcEdge, ArcId, BoundaryEdge, Color, EdgeId, Side, Triangle, TriangulatedComplex, VertexId,
};
use crate::diagram::WeightedArcDiagram;
use crate::lifting::LiftingPicture;
use crate::weight::Weight;

pub const FORMAT: &str = "arclift/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
}

fn invalid(path: impl Into<String>, msg: impl Into<String>) -> IoError {
    IoError::Invalid {
        path: path.into(),
        msg: msg.into(),
    }
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        let msg = e.to_string();
        // serde_json appends its own position; keep just the message.
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            msg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub name: String,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcEntry {
    pub name: String,
    pub ends: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SideRef {
    Edge { edge: usize },
    Arc { arc: String, side: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Substrate {
    pub vertices: Vec<VertexEntry>,
    /// Boundary cycles as vertex indices; edge `k` of the document is the `k`-th
    /// consecutive pair when the cycles are read in order.
    pub boundary: Vec<Vec<usize>>,
    pub arcs: Vec<ArcEntry>,
    pub triangles: Vec<[SideRef; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub format: String,
    pub substrate: Substrate,
    pub weights: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigonEntry {
    #[serde(flatten)]
    pub arc: BigonArc,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BigonBlock {
    pub n: usize,
    pub arcs: Vec<BigonEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PictureDocument {
    pub format: String,
    pub substrate: Substrate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, String>>,
    pub branching: Vec<String>,
    pub bigon: BigonBlock,
}

/// Canonical JSON text: keys sorted, containers that fit in 80 columns on one
/// line, two-space indent, trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents always serialize");
    let mut out = String::new();
    layout(&value, 0, &mut out);
    out.push('\n');
    out
}

fn layout(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let flat = v.to_string();
    if indent + flat.len() <= 80 || !matches!(v, Value::Array(_) | Value::Object(_)) {
        out.push_str(&flat);
        return;
    }
    let pad = " ".repeat(indent + 2);
    let (open, close) = if v.is_array() { ('[', ']') } else { ('{', '}') };
    out.push(open);
    let items: Vec<(Option<&String>, &Value)> = match v {
        Value::Array(a) => a.iter().map(|x| (None, x)).collect(),
        Value::Object(m) => m.iter().map(|(k, x)| (Some(k), x)).collect(),
        _ => unreachable!(),
    };
    for (i, (k, x)) in items.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str(&pad);
        if let Some(k) = k {
            out.push_str(&Value::String((*k).clone()).to_string());
            out.push_str(": ");
        }
        layout(x, indent + 2, out);
    }
    out.push('\n');
    out.push_str(&" ".repeat(indent));
    out.push(close);
}

fn check_format(f: &str) -> Result<(), IoError> {
    if f == FORMAT {
        Ok(())
    } else {
        Err(invalid(
            "format",
            format!("expected \"{FORMAT}\", found \"{f}\""),
        ))
    }
}

pub fn substrate_of(c: &TriangulatedComplex) -> Result<Substrate, IoError> {
    let vertices = c
        .vertices()
        .map(|v| VertexEntry {
            name: c.vertex_name(v).to_string(),
            color: c.color(v),
        })
        .collect();
    let cycles = c.boundary_components();
    let mut edge_index: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut boundary = Vec::with_capacity(cycles.len());
    for cycle in &cycles {
        let mut verts = Vec::with_capacity(cycle.len());
        for e in cycle {
            edge_index.insert(*e, edge_index.len());
            verts.push(c.edge(*e).from.0);
        }
        boundary.push(verts);
    }
    let mut names = BTreeSet::new();
    let mut arcs = Vec::new();
    for (a, edge) in c.arcs() {
        if !names.insert(edge.name.as_str()) {
            return Err(invalid(
                format!("arc {}", a.0),
                format!("duplicate arc name \"{}\"", edge.name),
            ));
        }
        arcs.push(ArcEntry {
            name: edge.name.clone(),
            ends: [edge.ends[0].0, edge.ends[1].0],
        });
    }
    let triangles = c
        .triangles()
        .iter()
        .map(|t| {
            t.sides.map(|s| match s {
                Side::Boundary(e) => SideRef::Edge {
                    edge: edge_index[&e],
                },
                Side::Arc(a, k) => SideRef::Arc {
                    arc: c.arc_name(a).to_string(),
                    side: k,
                },
            })
        })
        .collect();
    Ok(Substrate {
        vertices,
        boundary,
        arcs,
        triangles,
    })
}

fn weight_block(c: &TriangulatedComplex, w: impl Fn(ArcId) -> Weight) -> BTreeMap<String, String> {
    c.arc_ids()
        .map(|a| (c.arc_name(a).to_string(), w(a).to_string()))
        .collect()
}

pub fn diagram_document(d: &WeightedArcDiagram) -> Result<DiagramDocument, IoError> {
    let c = d.complex();
    Ok(DiagramDocument {
        format: FORMAT.into(),
        substrate: substrate_of(c)?,
        weights: weight_block(c, |a| d.weight(a).clone()),
    })
}

pub fn picture_document(
    p: &LiftingPicture,
    d: Option<&WeightedArcDiagram>,
) -> Result<PictureDocument, IoError> {
    let c = p.complex();
    Ok(PictureDocument {
        format: FORMAT.into(),
        substrate: substrate_of(c)?,
        weights: d.map(|d| weight_block(c, |a| d.weight(a).clone())),
        branching: p
            .branching()
            .iter()
            .map(|a| c.arc_name(*a).to_string())
            .collect(),
        bigon: BigonBlock {
            n: p.bigon().n,
            arcs: p
                .bigon()
                .arcs
                .iter()
                .map(|(a, w)| BigonEntry {
                    arc: *a,
                    weight: w.to_string(),
                })
                .collect(),
        },
    })
}

/// Builds the complex without running its validator.
pub fn complex_of(s: &Substrate) -> Result<TriangulatedComplex, IoError> {
    let nv = s.vertices.len();
    let vertex = |path: String, v: usize| -> Result<VertexId, IoError> {
        if v < nv {
            Ok(VertexId(v))
        } else {
            Err(invalid(
                path,
                format!("vertex {v} out of range (there are {nv})"),
            ))
        }
    };
    let mut edges = Vec::new();
    for (k, cycle) in s.boundary.iter().enumerate() {
        if cycle.is_empty() {
            return Err(invalid(format!("substrate.boundary[{k}]"), "empty cycle"));
        }
        for (i, &v) in cycle.iter().enumerate() {
            let from = vertex(format!("substrate.boundary[{k}][{i}]"), v)?;
            let to = vertex(
                format!("substrate.boundary[{k}]"),
                cycle[(i + 1) % cycle.len()],
            )?;
            edges.push(BoundaryEdge { from, to });
        }
    }
    let mut arcs = BTreeMap::new();
    let mut by_name = BTreeMap::new();
    for (i, a) in s.arcs.iter().enumerate() {
        let path = format!("substrate.arcs[{i}]");
        if a.name.is_empty() {
            return Err(invalid(path, "empty arc name"));
        }
        if by_name.insert(a.name.clone(), ArcId(i)).is_some() {
            return Err(invalid(path, format!("duplicate arc name \"{}\"", a.name)));
        }
        let ends = [
            vertex(format!("{path}.ends[0]"), a.ends[0])?,
            vertex(format!("{path}.ends[1]"), a.ends[1])?,
        ];
        arcs.insert(
            ArcId(i),
            ArcEdge {
                ends,
                name: a.name.clone(),
            },
        );
    }
    let mut triangles = Vec::with_capacity(s.triangles.len());
    for (t, sides) in s.triangles.iter().enumerate() {
        let mut out = [Side::Boundary(EdgeId(0)); 3];
        for (i, r) in sides.iter().enumerate() {
            let path = format!("substrate.triangles[{t}][{i}]");
            out[i] = match r {
                SideRef::Edge { edge } if *edge < edges.len() => Side::Boundary(EdgeId(*edge)),
                SideRef::Edge { edge } => {
                    return Err(invalid(
                        path,
                        format!("triangle {t}: no boundary edge {edge}"),
                    ))
                }
                SideRef::Arc { arc, side } => {
                    let Some(a) = by_name.get(arc) else {
                        return Err(invalid(
                            path,
                            format!("triangle {t}: unknown arc \"{arc}\""),
                        ));
                    };
                    if *side > 1 {
                        return Err(invalid(
                            path,
                            format!("triangle {t}: arc side must be 0 or 1, not {side}"),
                        ));
                    }
                    Side::Arc(*a, *side)
                }
            };
        }
        triangles.push(Triangle { sides: out });
    }
    let colors = s.vertices.iter().map(|v| v.color).collect();
    let names = s.vertices.iter().map(|v| v.name.clone()).collect();
    Ok(TriangulatedComplex::new(
        colors, names, edges, arcs, triangles,
    ))
}

fn validated(c: TriangulatedComplex) -> Result<TriangulatedComplex, IoError> {
    let report = c.validate();
    match report.violations.first() {
        None => Ok(c),
        Some(v) => Err(invalid("substrate", v.to_string())),
    }
}

fn weights_of(
    c: &TriangulatedComplex,
    block: &BTreeMap<String, String>,
) -> Result<WeightedArcDiagram, IoError> {
    let mut weights = BTreeMap::new();
    for (name, text) in block {
        let path = format!("weights.{name}");
        let a = c
            .arc_by_name(name)
            .ok_or_else(|| invalid(&path, "unknown arc"))?;
        let w: Weight = text.parse().map_err(|e| invalid(&path, format!("{e}")))?;
        weights.insert(a, w);
    }
    if let Some(a) = c.arc_ids().find(|a| !weights.contains_key(a)) {
        return Err(invalid(
            "weights",
            format!("no weight for arc \"{}\"", c.arc_name(a)),
        ));
    }
    WeightedArcDiagram::new(c.clone(), weights).map_err(|e| invalid("weights", e.to_string()))
}

pub fn parse_diagram_document(text: &str) -> Result<DiagramDocument, IoError> {
    let doc: DiagramDocument = serde_json::from_str(text)?;
    check_format(&doc.format)?;
    Ok(doc)
}

/// Parses and validates a diagram document.
pub fn parse_diagram(text: &str) -> Result<WeightedArcDiagram, IoError> {
    let doc = parse_diagram_document(text)?;
    let c = validated(complex_of(&doc.substrate)?)?;
    weights_of(&c, &doc.weights)
}

pub fn parse_picture_document(text: &str) -> Result<PictureDocument, IoError> {
    let doc: PictureDocument = serde_json::from_str(text)?;
    check_format(&doc.format)?;
    Ok(doc)
}

/// Parses a picture and, when present, the diagram it claims to realize.
pub fn parse_picture(text: &str) -> Result<(LiftingPicture, Option<WeightedArcDiagram>), IoError> {
    let doc = parse_picture_document(text)?;
    let c = validated(complex_of(&doc.substrate)?)?;
    let d = doc
        .weights
        .as_ref()
        .map(|w| weights_of(&c, w))
        .transpose()?;
    let mut branching = Vec::with_capacity(doc.branching.len());
    for (i, name) in doc.branching.iter().enumerate() {
        let a = c
            .arc_by_name(name)
            .ok_or_else(|| invalid(format!("branching[{i}]"), format!("unknown arc \"{name}\"")))?;
        branching.push(a);
    }
    let mut bigon = WeightedBigonDiagram::new(doc.bigon.n);
    for (i, e) in doc.bigon.arcs.iter().enumerate() {
        let path = format!("bigon.arcs[{i}]");
        let w: Weight = e
            .weight
            .parse()
            .map_err(|err| invalid(&path, format!("{err}")))?;
        if bigon.arcs.contains_key(&e.arc) {
            return Err(invalid(path, format!("{} listed twice", e.arc)));
        }
        bigon.add(e.arc, w);
    }
    let p =
        LiftingPicture::new(c, branching, bigon).map_err(|e| invalid("picture", e.to_string()))?;
    Ok((p, d))
}

/// Either kind of document, told apart by the presence of a bigon block.
pub enum Document {
    Diagram(WeightedArcDiagram),
    Picture(Box<LiftingPicture>, Option<WeightedArcDiagram>),
}

pub fn parse_any(text: &str) -> Result<Document, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("bigon").is_some() {
        parse_picture(text).map(|(p, d)| Document::Picture(Box::new(p), d))
    } else {
        parse_diagram(text).map(Document::Diagram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hexh, sq1, weighted, weights};

    #[test]
    fn sq1_round_trips_byte_for_byte() {
        let d = weighted(sq1(), &weights(&[2]));
        let text = to_json(&diagram_document(&d).unwrap());
        let back = parse_diagram(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(to_json(&diagram_document(&back).unwrap()), text);
    }

    #[test]
    fn thirds_survive() {
        let d = weighted(
            hexh(),
            &[Weight::ratio(1, 3), Weight::zero(), Weight::ratio(22, 7)],
        );
        let text = to_json(&diagram_document(&d).unwrap());
        assert!(text.contains("\"1/3\""));
        let back = parse_diagram(&text).unwrap();
        assert_eq!(back.weights(), d.weights());
    }

    #[test]
    fn errors_name_their_place() {
        let d = weighted(sq1(), &weights(&[2]));
        let mut doc = diagram_document(&d).unwrap();
        doc.substrate.triangles[1][0] = SideRef::Arc {
            arc: "nope".into(),
            side: 0,
        };
        let err = parse_diagram(&to_json(&doc)).unwrap_err();
        assert!(err.to_string().contains("triangle 1"), "{err}");
        let err = parse_diagram("{\n  \"format\": \"arclift/1\",\n  oops\n}").unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 3, .. }), "{err}");
        let mut doc = diagram_document(&d).unwrap();
        doc.weights.insert("d".into(), "-1".into());
        assert!(parse_diagram(&to_json(&doc))
            .unwrap_err()
            .to_string()
            .starts_with("weights.d"));
        doc.weights.insert("d".into(), "0.5".into());
        assert!(parse_diagram(&to_json(&doc)).is_err());
    }

    #[test]
    fn pictures_round_trip() {
        let d = weighted(sq1(), &weights(&[2]));
        let c = d.complex().clone();
        let b = WeightedBigonDiagram::from_arcs(
            1,
            [(BigonArc::hom(Color::Alpha, 1, 1), Weight::from_int(1))],
        );
        let p = LiftingPicture::new(c, vec![ArcId(0)], b).unwrap();
        let text = to_json(&picture_document(&p, Some(&d)).unwrap());
        let (q, e) = parse_picture(&text).unwrap();
        assert_eq!(q.bigon(), p.bigon());
        assert_eq!(e.as_ref(), Some(&d));
        assert_eq!(to_json(&picture_document(&q, e.as_ref()).unwrap()), text);
        assert!(matches!(parse_any(&text).unwrap(), Document::Picture(..)));
    }
}
