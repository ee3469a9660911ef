//! Standard-position diagrams on a bigon with `n` interior marked points.
//!
//! Marked points are numbered `1..=n`. A homonymous arc based at the vertex of
//! its color encloses an interval of marked points; a heteronymous arc runs from
//! vertex to vertex between `m_p` and `m_{p+1}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Color;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BigonArc {
    #[serde(rename = "hom")]
    Hom { color: Color, lo: usize, hi: usize },
    #[serde(rename = "het")]
    Het { cut: usize },
}

impl BigonArc {
    pub fn hom(color: Color, lo: usize, hi: usize) -> Self {
        BigonArc::Hom { color, lo, hi }
    }

    pub fn het(cut: usize) -> Self {
        BigonArc::Het { cut }
    }

    pub fn is_homonymous(&self) -> bool {
        matches!(self, BigonArc::Hom { .. })
    }

    pub fn color(&self) -> Option<Color> {
        match self {
            BigonArc::Hom { color, .. } => Some(*color),
            BigonArc::Het { .. } => None,
        }
    }

    /// Whether the arc is well formed on a bigon with `n` marked points.
    pub fn fits(&self, n: usize) -> bool {
        match *self {
            BigonArc::Hom { lo, hi, .. } => 1 <= lo && lo <= hi && hi <= n,
            BigonArc::Het { cut } => 1 <= cut && cut < n,
        }
    }

    /// Same-color arcs are compatible when nested or disjoint; arcs of opposite
    /// colors only when disjoint, since each must reach its points from its own vertex.
    pub fn crosses(&self, other: &BigonArc) -> bool {
        use BigonArc::*;
        match (*self, *other) {
            (
                Hom {
                    color: c1,
                    lo: a,
                    hi: b,
                },
                Hom {
                    color: c2,
                    lo: x,
                    hi: y,
                },
            ) => {
                let overlap = a <= y && x <= b;
                if !overlap {
                    false
                } else if c1 == c2 {
                    let nested = (a <= x && y <= b) || (x <= a && b <= y);
                    !nested
                } else {
                    true
                }
            }
            (Hom { lo, hi, .. }, Het { cut }) | (Het { cut }, Hom { lo, hi, .. }) => {
                lo <= cut && cut < hi
            }
            (Het { .. }, Het { .. }) => false,
        }
    }

    pub fn encloses(&self, k: usize) -> bool {
        match *self {
            BigonArc::Hom { lo, hi, .. } => lo <= k && k <= hi,
            BigonArc::Het { .. } => false,
        }
    }

    pub fn separates(&self, k: usize, l: usize) -> bool {
        match *self {
            BigonArc::Het { cut } => (k <= cut && cut < l) || (l <= cut && cut < k),
            BigonArc::Hom { .. } => false,
        }
    }

    /// Strict containment of a same-color interval.
    pub fn strictly_contains(&self, other: &BigonArc) -> bool {
        match (*self, *other) {
            (
                BigonArc::Hom {
                    color: c1,
                    lo: a,
                    hi: b,
                },
                BigonArc::Hom {
                    color: c2,
                    lo: x,
                    hi: y,
                },
            ) => c1 == c2 && a <= x && y <= b && (a, b) != (x, y),
            _ => false,
        }
    }
}

impl fmt::Display for BigonArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigonArc::Hom { color, lo, hi } => write!(f, "Hom({color},[{lo}..{hi}])"),
            BigonArc::Het { cut } => write!(f, "Het({cut})"),
        }
    }
}

/// Every well-formed arc on a bigon with `n` points, in a fixed order.
pub fn all_arcs(n: usize) -> Vec<BigonArc> {
    let mut out = Vec::new();
    for color in [Color::Alpha, Color::Beta] {
        for lo in 1..=n {
            for hi in lo..=n {
                out.push(BigonArc::hom(color, lo, hi));
            }
        }
    }
    for cut in 1..n {
        out.push(BigonArc::het(cut));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedBigonDiagram {
    pub n: usize,
    pub arcs: BTreeMap<BigonArc, Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BigonViolation {
    Malformed(BigonArc),
    Crossing(BigonArc, BigonArc),
}

impl fmt::Display for BigonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigonViolation::Malformed(a) => write!(f, "malformed arc {a}"),
            BigonViolation::Crossing(a, b) => write!(f, "{a} crosses {b}"),
        }
    }
}

impl WeightedBigonDiagram {
    pub fn new(n: usize) -> Self {
        WeightedBigonDiagram {
            n,
            arcs: BTreeMap::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (BigonArc, Weight)>) -> Self {
        let mut d = WeightedBigonDiagram::new(n);
        for (a, w) in arcs {
            d.add(a, w);
        }
        d
    }

    /// Adds weight to an arc, merging parallel copies.
    pub fn add(&mut self, a: BigonArc, w: Weight) {
        *self.arcs.entry(a).or_default() += &w;
    }

    pub fn weight(&self, a: &BigonArc) -> Weight {
        self.arcs.get(a).cloned().unwrap_or_default()
    }

    pub fn validate(&self) -> Vec<BigonViolation> {
        let arcs: Vec<&BigonArc> = self.arcs.keys().collect();
        let mut out = Vec::new();
        for a in &arcs {
            if !a.fits(self.n) {
                out.push(BigonViolation::Malformed(**a));
            }
        }
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if a.crosses(b) {
                    out.push(BigonViolation::Crossing(**a, **b));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Drops weight-zero arcs.
    pub fn support(&self) -> WeightedBigonDiagram {
        WeightedBigonDiagram {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .filter(|(_, w)| w.is_positive())
                .map(|(a, w)| (*a, w.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, q: &Weight) -> WeightedBigonDiagram {
        WeightedBigonDiagram {
            n: self.n,
            arcs: self.arcs.iter().map(|(a, w)| (*a, w.scale(q))).collect(),
        }
    }

    /// Moves every arc `offset` points to the right on a bigon with `n` points.
    pub fn shifted(&self, offset: usize, n: usize) -> WeightedBigonDiagram {
        let arcs = self
            .arcs
            .iter()
            .map(|(a, w)| {
                let b = match *a {
                    BigonArc::Hom { color, lo, hi } => {
                        BigonArc::hom(color, lo + offset, hi + offset)
                    }
                    BigonArc::Het { cut } => BigonArc::het(cut + offset),
                };
                (b, w.clone())
            })
            .collect();
        WeightedBigonDiagram { n, arcs }
    }

    /// The same-color arcs of `B` strictly inside `h` and not inside any other such arc.
    pub fn outermost_enclosed(&self, h: &BigonArc) -> Vec<BigonArc> {
        let inside: Vec<BigonArc> = self
            .arcs
            .keys()
            .filter(|a| h.strictly_contains(a))
            .copied()
            .collect();
        inside
            .iter()
            .filter(|a| !inside.iter().any(|b| b.strictly_contains(a)))
            .copied()
            .collect()
    }
}

/// Bounds for bigon-diagram enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Limits {
    pub max_arcs: Option<usize>,
}

/// Every set of pairwise noncrossing distinct arcs on `n` points, within `limits`,
/// each exactly once.
pub fn enumerate_bigon_diagrams(n: usize, limits: Limits) -> Vec<Vec<BigonArc>> {
    let arcs = all_arcs(n);
    let cap = limits.max_arcs.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        arcs: &[BigonArc],
        start: usize,
        cap: usize,
        cur: &mut Vec<BigonArc>,
        out: &mut Vec<Vec<BigonArc>>,
    ) {
        out.push(cur.clone());
        if cur.len() == cap {
            return;
        }
        for i in start..arcs.len() {
            if cur.iter().all(|c| !c.crosses(&arcs[i])) {
                cur.push(arcs[i]);
                rec(arcs, i + 1, cap, cur, out);
                cur.pop();
            }
        }
    }
    rec(&arcs, 0, cap, &mut cur, &mut out);
    out
}

/// The inclusion-maximal noncrossing sets of arcs on `n` points.
pub fn maximal_bigon_diagrams(n: usize) -> Vec<Vec<BigonArc>> {
    let arcs = all_arcs(n);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(arcs: &[BigonArc], i: usize, cur: &mut Vec<BigonArc>, out: &mut Vec<Vec<BigonArc>>) {
        if i == arcs.len() {
            let maximal = arcs
                .iter()
                .all(|a| cur.contains(a) || cur.iter().any(|c| c.crosses(a)));
            if maximal {
                out.push(cur.clone());
            }
            return;
        }
        if cur.iter().all(|c| !c.crosses(&arcs[i])) {
            cur.push(arcs[i]);
            rec(arcs, i + 1, cur, out);
            cur.pop();
            // Leaving a compatible arc out only pays off if a later arc crosses it.
            if arcs[i + 1..].iter().any(|b| b.crosses(&arcs[i])) {
                rec(arcs, i + 1, cur, out);
            }
        } else {
            rec(arcs, i + 1, cur, out);
        }
    }
    rec(&arcs, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use Color::*;

    fn naive(n: usize, cap: usize) -> BTreeSet<Vec<BigonArc>> {
        let arcs = all_arcs(n);
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << arcs.len()) {
            let set: Vec<BigonArc> = (0..arcs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| arcs[i])
                .collect();
            if set.len() > cap {
                continue;
            }
            let ok = set
                .iter()
                .enumerate()
                .all(|(i, a)| set[i + 1..].iter().all(|b| !a.crosses(b)));
            if ok {
                out.insert(set);
            }
        }
        out
    }

    #[test]
    fn predicates() {
        assert!(BigonArc::hom(Alpha, 1, 2).encloses(2));
        assert!(BigonArc::het(1).separates(1, 2));
        assert!(!BigonArc::het(2).separates(1, 2));
        assert!(BigonArc::hom(Alpha, 1, 2).crosses(&BigonArc::het(1)));
        assert!(!BigonArc::hom(Alpha, 1, 2).crosses(&BigonArc::hom(Alpha, 2, 2)));
        assert!(BigonArc::hom(Alpha, 1, 2).crosses(&BigonArc::hom(Alpha, 2, 3)));
        assert!(BigonArc::hom(Alpha, 1, 2).crosses(&BigonArc::hom(Beta, 2, 2)));
    }

    #[test]
    fn validation_examples() {
        let one = Weight::from_int(1);
        let d = WeightedBigonDiagram::from_arcs(1, [(BigonArc::hom(Alpha, 1, 1), one.clone())]);
        assert!(d.is_valid());
        let d = WeightedBigonDiagram::from_arcs(
            2,
            [
                (BigonArc::hom(Alpha, 1, 2), one.clone()),
                (BigonArc::het(1), one.clone()),
            ],
        );
        assert_eq!(d.validate().len(), 1);
        let d = WeightedBigonDiagram::from_arcs(
            2,
            [
                (BigonArc::hom(Alpha, 1, 1), one.clone()),
                (BigonArc::hom(Beta, 2, 2), one.clone()),
                (BigonArc::het(1), one),
            ],
        );
        assert!(d.is_valid());
        let d = WeightedBigonDiagram::from_arcs(2, [(BigonArc::het(2), Weight::zero())]);
        assert_eq!(
            d.validate(),
            vec![BigonViolation::Malformed(BigonArc::het(2))]
        );
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            enumerate_bigon_diagrams(0, Limits::default()),
            vec![Vec::<BigonArc>::new()]
        );
        // Opposite-color loops around the same point cross.
        assert_eq!(enumerate_bigon_diagrams(1, Limits::default()).len(), 3);
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for n in 0..=3 {
            for cap in [2, usize::MAX] {
                let got = enumerate_bigon_diagrams(
                    n,
                    Limits {
                        max_arcs: Some(cap),
                    },
                );
                let set: BTreeSet<_> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len(), "duplicates for n={n}");
                assert_eq!(set, naive(n, cap), "n={n} cap={cap}");
            }
        }
    }

    #[test]
    fn maximal_sets_are_the_maximal_elements() {
        for n in 0..=3 {
            let all = naive(n, usize::MAX);
            let expected: BTreeSet<Vec<BigonArc>> = all
                .iter()
                .filter(|s| {
                    !all.iter()
                        .any(|t| t.len() > s.len() && s.iter().all(|a| t.contains(a)))
                })
                .cloned()
                .collect();
            let got: BTreeSet<_> = maximal_bigon_diagrams(n).into_iter().collect();
            assert_eq!(got, expected, "n={n}");
        }
    }

    #[test]
    fn outermost_enclosed_arcs() {
        let one = Weight::from_int(1);
        let d = WeightedBigonDiagram::from_arcs(
            3,
            [
                (BigonArc::hom(Alpha, 1, 3), one.clone()),
                (BigonArc::hom(Alpha, 1, 2), one.clone()),
                (BigonArc::hom(Alpha, 1, 1), one.clone()),
                (BigonArc::hom(Alpha, 3, 3), one),
            ],
        );
        assert_eq!(
            d.outermost_enclosed(&BigonArc::hom(Alpha, 1, 3)),
            vec![BigonArc::hom(Alpha, 1, 2), BigonArc::hom(Alpha, 3, 3)]
        );
    }
}
