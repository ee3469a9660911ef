//! Rewriting lifting pictures without changing their lift.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::bigon::{BigonArc, WeightedBigonDiagram};
use crate::complex::ArcId;
use crate::lifting::{LiftedArc, LiftingPicture, PictureError};
use crate::structure::clumps;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("{0} is not in the bigon diagram")]
    NotInDiagram(BigonArc),
    #[error("{0} is heteronymous")]
    Heteronymous(BigonArc),
    #[error("{0} encloses no arcs")]
    NothingEnclosed(BigonArc),
    #[error("{arc} has a new lift {lift:?}")]
    NewLift { arc: BigonArc, lift: LiftedArc },
    #[error(transparent)]
    Picture(#[from] PictureError),
    #[error("no reordering under {0} lets it be pushed down")]
    Stuck(BigonArc),
    #[error("no fixed point after {0} steps")]
    Budget(usize),
}

/// Lifts of `h` that are not lifts of any arc of the diagram enclosed by `h`.
pub fn new_lifts(p: &LiftingPicture, h: &BigonArc) -> Vec<LiftedArc> {
    let mut covered = BTreeSet::new();
    for a in p.bigon().arcs.keys().filter(|a| h.strictly_contains(a)) {
        covered.extend(p.lift_arc(a).into_keys());
    }
    p.lift_arc(h)
        .into_keys()
        .filter(|l| !covered.contains(l))
        .collect()
}

/// Deletes `h` and adds its weight to each outermost arc it encloses.
pub fn push_down_weight(
    p: &LiftingPicture,
    h: &BigonArc,
) -> Result<LiftingPicture, NormalizeError> {
    let Some(w) = p.bigon().arcs.get(h).cloned() else {
        return Err(NormalizeError::NotInDiagram(*h));
    };
    if !h.is_homonymous() {
        return Err(NormalizeError::Heteronymous(*h));
    }
    let below = p.bigon().outermost_enclosed(h);
    if below.is_empty() {
        return Err(NormalizeError::NothingEnclosed(*h));
    }
    if let Some(lift) = new_lifts(p, h).into_iter().next() {
        return Err(NormalizeError::NewLift { arc: *h, lift });
    }
    let mut bigon = p.bigon().clone();
    bigon.arcs.remove(h);
    for a in below {
        bigon.add(a, w.clone());
    }
    Ok(p.with_bigon(bigon)?)
}

/// Branching arcs whose marked points `h` encloses.
pub fn branching_of(p: &LiftingPicture, h: &BigonArc) -> Vec<ArcId> {
    match *h {
        BigonArc::Hom { lo, hi, .. } => p.branching()[lo - 1..hi].to_vec(),
        BigonArc::Het { .. } => vec![],
    }
}

fn clump_index(p: &LiftingPicture) -> BTreeMap<ArcId, usize> {
    clumps(p.complex())
        .into_iter()
        .enumerate()
        .flat_map(|(k, c)| c.into_iter().map(move |a| (a, k)))
        .collect()
}

fn connected(index: &BTreeMap<ArcId, usize>, arcs: &[ArcId]) -> bool {
    arcs.iter()
        .map(|a| index.get(a))
        .collect::<BTreeSet<_>>()
        .len()
        <= 1
}

/// Homonymous arcs of the picture whose branching meets more than one clump.
pub fn disconnected_arcs(p: &LiftingPicture) -> Vec<BigonArc> {
    let index = clump_index(p);
    p.bigon()
        .arcs
        .keys()
        .filter(|a| a.is_homonymous() && !connected(&index, &branching_of(p, a)))
        .copied()
        .collect()
}

fn span(a: &BigonArc) -> (usize, usize) {
    match *a {
        BigonArc::Hom { lo, hi, .. } => (lo, hi),
        BigonArc::Het { cut } => (cut, cut + 1),
    }
}

/// Rewrites `p` so that every homonymous bigon arc has its branching in one clump.
///
/// Arcs without new lifts are pushed down. An arc with disconnected branching has
/// the blocks of points below it reordered so that blocks branching in the same
/// clump sit together, each such run is wrapped in a weight-zero arc, and the arc
/// is then pushed down. Every step is checked to leave the lift unchanged.
pub fn normalize_connected_branching(p: &LiftingPicture) -> Result<LiftingPicture, NormalizeError> {
    let lift = p.lift_diagram();
    let index = clump_index(p);
    let size = p.bigon().arcs.len() + p.bigon().n + 1;
    let budget = size * size;
    let mut p = p.clone();
    for _ in 0..budget {
        if let Some(next) = push_some(&p, &lift) {
            p = next;
            continue;
        }
        let mut bad = disconnected_arcs(&p);
        bad.sort_by_key(|a| {
            let (lo, hi) = span(a);
            (hi - lo, lo)
        });
        let Some(h) = bad.first().copied() else {
            return Ok(p);
        };
        p = regroup(&p, &h, &index, &lift).ok_or(NormalizeError::Stuck(h))?;
    }
    Err(NormalizeError::Budget(budget))
}

fn push_some(p: &LiftingPicture, lift: &crate::lifting::Lift) -> Option<LiftingPicture> {
    let hom: Vec<BigonArc> = p
        .bigon()
        .arcs
        .keys()
        .filter(|a| a.is_homonymous())
        .copied()
        .collect();
    hom.iter().find_map(|h| {
        push_down_weight(p, h)
            .ok()
            .filter(|q| &q.lift_diagram() == lift)
    })
}

/// Maximal runs of points below `h` that no other arc straddles.
fn blocks(b: &WeightedBigonDiagram, h: &BigonArc) -> Vec<(usize, usize)> {
    let (lo, hi) = span(h);
    let inner: Vec<(usize, usize)> = b
        .arcs
        .keys()
        .filter(|a| *a != h && h.strictly_contains(a))
        .map(span)
        .collect();
    let mut out = Vec::new();
    let mut start = lo;
    for k in lo..hi {
        if !inner.iter().any(|&(x, y)| x <= k && k < y) {
            out.push((start, k));
            start = k + 1;
        }
    }
    out.push((start, hi));
    out
}

fn regroup(
    p: &LiftingPicture,
    h: &BigonArc,
    index: &BTreeMap<ArcId, usize>,
    lift: &crate::lifting::Lift,
) -> Option<LiftingPicture> {
    let color = h.color()?;
    let parts = blocks(p.bigon(), h);
    if parts.len() > 7 {
        return None;
    }
    let (lo, _) = span(h);
    for perm in permutations(parts.len()) {
        // New position of each old point.
        let mut moved: BTreeMap<usize, usize> = BTreeMap::new();
        let mut at = lo;
        let mut placed = Vec::with_capacity(parts.len());
        for &k in &perm {
            let (x, y) = parts[k];
            placed.push((at, at + (y - x)));
            for (i, old) in (x..=y).enumerate() {
                moved.insert(old, at + i);
            }
            at += y - x + 1;
        }
        let mut branching = p.branching().to_vec();
        for (old, new) in &moved {
            branching[new - 1] = p.branching()[old - 1];
        }
        let mut bigon = WeightedBigonDiagram::new(p.bigon().n);
        for (a, w) in &p.bigon().arcs {
            let a = match *a {
                BigonArc::Hom {
                    color,
                    lo: x,
                    hi: y,
                } if a != h && h.strictly_contains(a) => BigonArc::hom(color, moved[&x], moved[&y]),
                other => other,
            };
            bigon.add(a, w.clone());
        }
        // Runs of consecutive blocks branching in one clump.
        let mut run = placed[0];
        let mut runs = Vec::new();
        for &(x, y) in &placed[1..] {
            if connected(index, &branching[run.0 - 1..y]) {
                run.1 = y;
            } else {
                runs.push(run);
                run = (x, y);
            }
        }
        runs.push(run);
        for (x, y) in runs {
            let g = BigonArc::hom(color, x, y);
            if g != *h && !bigon.arcs.contains_key(&g) {
                bigon.add(g, Weight::zero());
            }
        }
        let Ok(q) = LiftingPicture::new(p.complex().clone(), branching, bigon) else {
            continue;
        };
        if &q.lift_diagram() != lift {
            continue;
        }
        if let Ok(r) = push_down_weight(&q, h) {
            if &r.lift_diagram() == lift {
                return Some(r);
            }
        }
    }
    None
}

/// Permutations of `0..k`, identity first.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..k).collect::<Vec<_>>()];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for a in 0..k {
            for b in a + 1..k {
                let mut next = cur.clone();
                next.swap(a, b);
                if !out.contains(&next) {
                    out.push(next);
                }
            }
        }
        i += 1;
    }
    out
}
