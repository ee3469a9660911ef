//! Sheets of a branching diagram and the lifting of bigon arcs through them.
//!
//! The cover is cut along preimages of the branch cuts: point `m_k` is joined to
//! the vertex of its color by a straight cut, and branching arc `k` (in `≺` order)
//! lies over cut `k`. Each sheet is a disk whose boundary reads: the boundary edge
//! leaving an alpha vertex (`e_east`), the beta branching arcs in decreasing
//! order, the other boundary edge (`e_west`), then the alpha branching arcs in
//! increasing order. A lift is recorded by its start corner, the reduced word of
//! branching arcs it crosses, and its end corner.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::bigon::{BigonArc, WeightedBigonDiagram};
use crate::complex::{ArcId, Color, Side, TriangulatedComplex};
use crate::diagram::WeightedArcDiagram;
use crate::region::{regions, Region};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheetError {
    #[error("branching arc {0:?} is not in the complex")]
    UnknownArc(ArcId),
    #[error("branching arc {0} is heteronymous")]
    NotHomonymous(String),
    #[error("branching arc {0} listed twice")]
    Duplicate(String),
    #[error("{found} branching arcs, expected {expected}")]
    WrongCount { found: usize, expected: i64 },
    #[error("sheet {0} is not simply connected")]
    NotSimplyConnected(usize),
    #[error("sheet {sheet} has {count} boundary edges, expected 2")]
    BoundaryEdges { sheet: usize, count: usize },
    #[error("branching arc {0} has the same sheet on both sides")]
    OneSided(String),
    #[error("order conflicts with the canonical order around sheet {0}")]
    OrderConflict(usize),
}

/// One sheet: a disk cut out by the branching arcs.
#[derive(Debug, Clone)]
pub struct Sheet {
    pub region: Region,
    /// Boundary sides, starting with `e_east`. Corner `k` is the start of side `k`.
    pub polygon: Vec<Side>,
    /// Branching indices (1-based) of the beta arcs, in polygon order.
    pub beta: Vec<usize>,
    /// Branching indices of the alpha arcs, in polygon order.
    pub alpha: Vec<usize>,
    /// Non-branching arcs inside the sheet, keyed by their sorted corner pair.
    pub chords: HashMap<(usize, usize), ArcId>,
}

impl Sheet {
    fn len(&self) -> usize {
        self.polygon.len()
    }

    /// Corner of a germ at the alpha vertex with every alpha cut of index `<= bound` to its west.
    fn alpha_corner(&self, bound: usize) -> usize {
        let j = self.alpha.iter().filter(|&&k| k <= bound).count();
        (self.beta.len() + 2 + j) % self.len()
    }

    /// Corner of a germ at the beta vertex with every beta cut of index `<= bound` to its west.
    fn beta_corner(&self, bound: usize) -> usize {
        1 + self.beta.iter().filter(|&&k| k > bound).count()
    }

    fn side_of(&self, a: ArcId) -> Option<usize> {
        self.polygon.iter().position(|s| s.arc() == Some(a))
    }

    pub fn boundary_items(&self) -> impl Iterator<Item = Side> + '_ {
        self.polygon.iter().copied()
    }
}

/// The sheets of a branching diagram with order `≺`.
#[derive(Debug, Clone)]
pub struct Sheets {
    pub branching: Vec<ArcId>,
    pub sheets: Vec<Sheet>,
    /// Color of each marked point, indexed from 1 (entry 0 unused).
    pub point_colors: Vec<Color>,
    /// For each branching arc, its two sheets with the side index in each.
    flanks: HashMap<ArcId, [(usize, usize); 2]>,
}

/// Cut `complex` along the branching arcs and check every sheet condition.
pub fn compute_sheets(
    complex: &TriangulatedComplex,
    branching: &[ArcId],
) -> Result<Sheets, SheetError> {
    let mut seen = BTreeSet::new();
    for &a in branching {
        if !complex.has_arc(a) {
            return Err(SheetError::UnknownArc(a));
        }
        if !complex.is_homonymous(a) {
            return Err(SheetError::NotHomonymous(complex.arc_name(a).into()));
        }
        if !seen.insert(a) {
            return Err(SheetError::Duplicate(complex.arc_name(a).into()));
        }
    }
    let expected = complex.branching_count();
    if branching.len() as i64 != expected {
        return Err(SheetError::WrongCount {
            found: branching.len(),
            expected,
        });
    }
    let index: HashMap<ArcId, usize> = branching
        .iter()
        .enumerate()
        .map(|(i, a)| (*a, i + 1))
        .collect();
    let mut point_colors = vec![Color::Alpha];
    point_colors.extend(branching.iter().map(|a| complex.arc_color(*a).unwrap()));

    let mut sheets = Vec::new();
    for (sid, region) in regions(complex, |a| index.contains_key(&a))
        .into_iter()
        .enumerate()
    {
        if !region.is_simply_connected() {
            return Err(SheetError::NotSimplyConnected(sid));
        }
        let count = region.boundary_edge_count();
        if count != 2 {
            return Err(SheetError::BoundaryEdges { sheet: sid, count });
        }
        sheets.push(build_sheet(complex, region, &index, sid)?);
    }

    let mut flanks: HashMap<ArcId, Vec<(usize, usize)>> = HashMap::new();
    for (sid, s) in sheets.iter().enumerate() {
        for (k, side) in s.polygon.iter().enumerate() {
            if let Some(a) = side.arc() {
                flanks.entry(a).or_default().push((sid, k));
            }
        }
    }
    let mut fl = HashMap::new();
    for &a in branching {
        let v = &flanks[&a];
        if v.len() != 2 || v[0].0 == v[1].0 {
            return Err(SheetError::OneSided(complex.arc_name(a).into()));
        }
        fl.insert(a, [v[0], v[1]]);
    }
    Ok(Sheets {
        branching: branching.to_vec(),
        sheets,
        point_colors,
        flanks: fl,
    })
}

fn build_sheet(
    complex: &TriangulatedComplex,
    region: Region,
    index: &HashMap<ArcId, usize>,
    sid: usize,
) -> Result<Sheet, SheetError> {
    let mut polygon = region.cycles[0].clone();
    let mut corner_groups = region.corners[0].clone();
    let east = polygon
        .iter()
        .position(|s| {
            matches!(s, Side::Boundary(_)) && complex.color(complex.side_ends(*s).0) == Color::Alpha
        })
        .ok_or(SheetError::BoundaryEdges {
            sheet: sid,
            count: 0,
        })?;
    polygon.rotate_left(east);
    corner_groups.rotate_left(east);

    let mut beta = Vec::new();
    let mut alpha = Vec::new();
    let mut boundary_seen = 1;
    for s in &polygon[1..] {
        match s {
            Side::Boundary(_) => boundary_seen += 1,
            Side::Arc(a, _) => {
                let k = index[a];
                let want = if boundary_seen == 1 {
                    Color::Beta
                } else {
                    Color::Alpha
                };
                if complex.arc_color(*a) != Some(want) {
                    return Err(SheetError::OrderConflict(sid));
                }
                if boundary_seen == 1 {
                    beta.push(k);
                } else {
                    alpha.push(k);
                }
            }
        }
    }
    if !beta.windows(2).all(|w| w[0] > w[1]) || !alpha.windows(2).all(|w| w[0] < w[1]) {
        return Err(SheetError::OrderConflict(sid));
    }

    let mut corner_of = HashMap::new();
    for (k, group) in corner_groups.iter().enumerate() {
        for c in group {
            corner_of.insert(*c, k);
        }
    }
    let mut chords = HashMap::new();
    for &a in &region.interior_arcs {
        let slot = complex.locate(Side::Arc(a, 0)).expect("arc side present");
        let start = corner_of[&slot];
        let end = corner_of[&crate::complex::Corner {
            triangle: slot.triangle,
            index: (slot.index + 1) % 3,
        }];
        chords.insert((start.min(end), start.max(end)), a);
    }
    Ok(Sheet {
        region,
        polygon,
        beta,
        alpha,
        chords,
    })
}

/// A lifted arc: an arc of the complex, or an arc outside it, identified by its
/// start corner, crossing word and end corner, in canonical orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiftedArc {
    Arc(ArcId),
    Extra(ExtraArc),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtraArc {
    pub start: (usize, usize),
    pub word: Vec<ArcId>,
    pub end: (usize, usize),
}

impl Sheets {
    pub fn n(&self) -> usize {
        self.branching.len()
    }

    fn other_flank(&self, a: ArcId, sheet: usize) -> ((usize, usize), (usize, usize)) {
        let [x, y] = self.flanks[&a];
        if x.0 == sheet {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// The corner across branching arc `a` from corner `c` of `sheet`, if `c` touches `a`.
    fn slide(&self, a: ArcId, sheet: usize, c: usize) -> Option<(usize, usize)> {
        let ((_, t), (other, t2)) = self.other_flank(a, sheet);
        let len = self.sheets[sheet].len();
        let len2 = self.sheets[other].len();
        if c == t {
            Some((other, (t2 + 1) % len2))
        } else if c == (t + 1) % len {
            Some((other, t2))
        } else {
            None
        }
    }

    /// Start corner, crossed points and end corner of a standard-position arc, per
    /// starting sheet.
    fn route(&self, a: &BigonArc) -> (Color, usize, Vec<usize>, Color, usize) {
        let col = |k: usize| self.point_colors[k];
        match *a {
            BigonArc::Hom { color, lo, hi } => {
                let crossed = (lo..=hi).filter(|&k| col(k) != color).collect();
                (color, lo - 1, crossed, color, hi)
            }
            BigonArc::Het { cut } => (Color::Alpha, cut, vec![], Color::Beta, cut),
        }
    }

    fn corner(&self, sheet: usize, at: Color, bound: usize) -> usize {
        match at {
            Color::Alpha => self.sheets[sheet].alpha_corner(bound),
            Color::Beta => self.sheets[sheet].beta_corner(bound),
        }
    }

    /// The lift of `a` starting in each sheet, `None` where it is trivial.
    pub fn lift_arc(&self, a: &BigonArc) -> Vec<Option<LiftedArc>> {
        let (c0, b0, crossed, c1, b1) = self.route(a);
        (0..self.sheets.len())
            .map(|s0| {
                let start = (s0, self.corner(s0, c0, b0));
                let mut sheets = vec![s0];
                let mut word: Vec<ArcId> = Vec::new();
                for &k in &crossed {
                    let arc = self.branching[k - 1];
                    let here = *sheets.last().unwrap();
                    if self.sheets[here].side_of(arc).is_none() {
                        continue;
                    }
                    if word.last() == Some(&arc) {
                        word.pop();
                        sheets.pop();
                    } else {
                        let ((_, _), (other, _)) = self.other_flank(arc, here);
                        word.push(arc);
                        sheets.push(other);
                    }
                }
                let last = *sheets.last().unwrap();
                let end = (last, self.corner(last, c1, b1));
                self.resolve(start, word, end)
            })
            .collect()
    }

    fn resolve(
        &self,
        mut start: (usize, usize),
        mut word: Vec<ArcId>,
        mut end: (usize, usize),
    ) -> Option<LiftedArc> {
        loop {
            let mut changed = false;
            if let Some(&first) = word.first() {
                if let Some(next) = self.slide(first, start.0, start.1) {
                    start = next;
                    word.remove(0);
                    changed = true;
                }
            }
            if let Some(&last) = word.last() {
                if let Some(prev) = self.slide(last, end.0, end.1) {
                    end = prev;
                    word.pop();
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if !word.is_empty() {
            let fwd = ExtraArc {
                start,
                word: word.clone(),
                end,
            };
            word.reverse();
            let back = ExtraArc {
                start: end,
                word,
                end: start,
            };
            return Some(LiftedArc::Extra(fwd.min(back)));
        }
        debug_assert_eq!(start.0, end.0);
        let sheet = &self.sheets[start.0];
        let (a, b) = (start.1.min(end.1), start.1.max(end.1));
        let len = sheet.len();
        if a == b {
            return None;
        }
        let between = if b == a + 1 {
            Some(sheet.polygon[a])
        } else if a == 0 && b == len - 1 {
            Some(sheet.polygon[b])
        } else {
            None
        };
        match between {
            Some(Side::Boundary(_)) => None,
            Some(Side::Arc(arc, _)) => Some(LiftedArc::Arc(arc)),
            None => Some(match sheet.chords.get(&(a, b)) {
                Some(arc) => LiftedArc::Arc(*arc),
                None => LiftedArc::Extra(ExtraArc {
                    start: (start.0, a),
                    word: vec![],
                    end: (start.0, b),
                }),
            }),
        }
    }

    /// Nontrivial lifts of `a` with their multiplicities.
    pub fn lift_multiset(&self, a: &BigonArc) -> BTreeMap<LiftedArc, usize> {
        let mut out = BTreeMap::new();
        for l in self.lift_arc(a).into_iter().flatten() {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }

    /// Weighted lift of a whole bigon diagram.
    pub fn lift_diagram(&self, b: &WeightedBigonDiagram) -> Lift {
        let mut lift = Lift::default();
        for (a, w) in &b.arcs {
            for (l, m) in self.lift_multiset(a) {
                let add = w * (m as u64);
                match l {
                    LiftedArc::Arc(x) => *lift.arcs.entry(x).or_default() += &add,
                    LiftedArc::Extra(e) => *lift.extra.entry(e).or_default() += &add,
                }
            }
        }
        lift
    }
}

/// The weighted lift of a bigon diagram.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lift {
    pub arcs: BTreeMap<ArcId, Weight>,
    pub extra: BTreeMap<ExtraArc, Weight>,
}

impl Lift {
    pub fn weight(&self, a: ArcId) -> Weight {
        self.arcs.get(&a).cloned().unwrap_or_default()
    }

    pub fn has_positive_extra(&self) -> bool {
        self.extra.values().any(|w| w.is_positive())
    }

    /// Equal to `d` up to weight-zero arcs, with no positive arcs outside the complex.
    pub fn matches(&self, d: &WeightedArcDiagram) -> bool {
        !self.has_positive_extra()
            && d.complex()
                .arc_ids()
                .all(|a| &self.weight(a) == d.weight(a))
            && self.arcs.keys().all(|a| d.complex().has_arc(*a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PictureError {
    #[error(transparent)]
    Sheets(#[from] SheetError),
    #[error("bigon has {bigon} points but there are {branching} branching arcs")]
    PointCount { bigon: usize, branching: usize },
    #[error("bigon diagram is not in standard position: {0}")]
    Bigon(String),
    #[error("picture and diagram live on different substrates")]
    SubstrateMismatch,
}

/// A substrate, an ordered branching diagram and a weighted bigon diagram.
#[derive(Debug, Clone)]
pub struct LiftingPicture {
    complex: TriangulatedComplex,
    sheets: Sheets,
    bigon: WeightedBigonDiagram,
}

impl LiftingPicture {
    pub fn new(
        complex: TriangulatedComplex,
        branching: Vec<ArcId>,
        bigon: WeightedBigonDiagram,
    ) -> Result<Self, PictureError> {
        let sheets = compute_sheets(&complex, &branching)?;
        if bigon.n != branching.len() {
            return Err(PictureError::PointCount {
                bigon: bigon.n,
                branching: branching.len(),
            });
        }
        if let Some(v) = bigon.validate().first() {
            return Err(PictureError::Bigon(v.to_string()));
        }
        Ok(LiftingPicture {
            complex,
            sheets,
            bigon,
        })
    }

    pub fn complex(&self) -> &TriangulatedComplex {
        &self.complex
    }

    pub fn branching(&self) -> &[ArcId] {
        &self.sheets.branching
    }

    pub fn bigon(&self) -> &WeightedBigonDiagram {
        &self.bigon
    }

    pub fn sheets(&self) -> &Sheets {
        &self.sheets
    }

    pub fn with_bigon(&self, bigon: WeightedBigonDiagram) -> Result<Self, PictureError> {
        LiftingPicture::new(self.complex.clone(), self.sheets.branching.clone(), bigon)
    }

    pub fn lift_arc(&self, a: &BigonArc) -> BTreeMap<LiftedArc, usize> {
        self.sheets.lift_multiset(a)
    }

    pub fn lift_diagram(&self) -> Lift {
        self.sheets.lift_diagram(&self.bigon)
    }

    /// The lift as a diagram on the substrate. Fails if some lift leaves the complex.
    pub fn lifted_diagram(&self) -> Option<WeightedArcDiagram> {
        let lift = self.lift_diagram();
        if lift.has_positive_extra() {
            return None;
        }
        let weights = self
            .complex
            .arc_ids()
            .map(|a| (a, lift.weight(a)))
            .collect();
        WeightedArcDiagram::new(self.complex.clone(), weights).ok()
    }

    pub fn realizes(&self, d: &WeightedArcDiagram) -> Result<bool, PictureError> {
        if d.complex() != &self.complex {
            return Err(PictureError::SubstrateMismatch);
        }
        Ok(self.lift_diagram().matches(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hex3, hexh, sq1, weighted, weights};
    use Color::*;

    fn ids(c: &TriangulatedComplex, names: &[&str]) -> Vec<ArcId> {
        names.iter().map(|n| c.arc_by_name(n).unwrap()).collect()
    }

    #[test]
    fn sheet_counts_on_fixtures() {
        let c = hexh();
        let s = compute_sheets(&c, &ids(&c, &["c1", "c2"])).unwrap();
        assert_eq!(s.sheets.len(), 3);
        let c = sq1();
        let s = compute_sheets(&c, &ids(&c, &["d"])).unwrap();
        assert_eq!(s.sheets.len(), 2);
        assert!(s.sheets.iter().all(|x| x.region.triangles.len() == 1));
        let c = hex3();
        let s = compute_sheets(&c, &ids(&c, &["c1", "c2"])).unwrap();
        let sizes: BTreeSet<usize> = s.sheets.iter().map(|x| x.region.triangles.len()).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2]));
    }

    #[test]
    fn sheet_errors() {
        let c = hex3();
        assert!(matches!(
            compute_sheets(&c, &ids(&c, &["c1"])),
            Err(SheetError::WrongCount { .. })
        ));
        // c2 before c1 runs against the canonical order at v2.
        assert!(matches!(
            compute_sheets(&c, &ids(&c, &["c2", "c1"])),
            Err(SheetError::OrderConflict(_))
        ));
        let c = hexh();
        assert!(matches!(
            compute_sheets(&c, &ids(&c, &["c1", "h"])),
            Err(SheetError::NotHomonymous(_))
        ));
    }

    #[test]
    fn single_point_arcs_lift_twice() {
        let c = sq1();
        let s = compute_sheets(&c, &ids(&c, &["d"])).unwrap();
        let m = s.lift_multiset(&BigonArc::hom(Alpha, 1, 1));
        assert_eq!(m, BTreeMap::from([(LiftedArc::Arc(ArcId(0)), 2)]));
        // A beta loop around the alpha point lifts to the other diagonal, twice.
        let m = s.lift_multiset(&BigonArc::hom(Beta, 1, 1));
        assert_eq!(m.len(), 1);
        let (l, k) = m.into_iter().next().unwrap();
        assert!(matches!(l, LiftedArc::Extra(e) if e.word == vec![ArcId(0)]));
        assert_eq!(k, 2);
    }

    #[test]
    fn hexh_lifts() {
        let c = hexh();
        let [c1, c2, h] = [0, 1, 2].map(ArcId);
        let s = compute_sheets(&c, &[c1, c2]).unwrap();
        assert_eq!(
            s.lift_multiset(&BigonArc::het(1)),
            BTreeMap::from([(LiftedArc::Arc(h), 1)])
        );
        assert_eq!(
            s.lift_multiset(&BigonArc::hom(Alpha, 1, 1)),
            BTreeMap::from([(LiftedArc::Arc(c1), 2)])
        );
        assert_eq!(
            s.lift_multiset(&BigonArc::hom(Beta, 2, 2)),
            BTreeMap::from([(LiftedArc::Arc(c2), 2)])
        );
        let b = WeightedBigonDiagram::from_arcs(
            2,
            [
                (BigonArc::hom(Alpha, 1, 1), Weight::from_int(1)),
                (BigonArc::hom(Beta, 2, 2), Weight::from_int(2)),
                (BigonArc::het(1), Weight::from_int(3)),
            ],
        );
        let p = LiftingPicture::new(c.clone(), vec![c1, c2], b).unwrap();
        assert!(p.realizes(&weighted(c, &weights(&[2, 4, 3]))).unwrap());
    }

    #[test]
    fn cross_color_enclosure_lifts_off_the_triangulation() {
        let c = hexh();
        let s = compute_sheets(&c, &[ArcId(0), ArcId(1)]).unwrap();
        let m = s.lift_multiset(&BigonArc::hom(Alpha, 1, 2));
        assert!(m
            .keys()
            .any(|l| matches!(l, LiftedArc::Extra(e) if !e.word.is_empty())));
    }

    #[test]
    fn hex3_two_point_arc_lifts_to_all_three_arcs() {
        let c = hex3();
        let s = compute_sheets(&c, &ids(&c, &["c1", "c2"])).unwrap();
        let m = s.lift_multiset(&BigonArc::hom(Alpha, 1, 2));
        let want: BTreeMap<LiftedArc, usize> =
            (0..3).map(|i| (LiftedArc::Arc(ArcId(i)), 1)).collect();
        assert_eq!(m, want);
    }

    #[test]
    fn realizes_sq1() {
        let c = sq1();
        let b =
            WeightedBigonDiagram::from_arcs(1, [(BigonArc::hom(Alpha, 1, 1), Weight::from_int(1))]);
        let p = LiftingPicture::new(c.clone(), vec![ArcId(0)], b).unwrap();
        assert!(p.realizes(&weighted(c.clone(), &weights(&[2]))).unwrap());
        assert!(!p.realizes(&weighted(c.clone(), &weights(&[3]))).unwrap());
        let empty = p.with_bigon(WeightedBigonDiagram::new(1)).unwrap();
        assert!(empty.lift_diagram().arcs.is_empty());
        assert!(empty.realizes(&weighted(c, &weights(&[0]))).unwrap());
    }
}
