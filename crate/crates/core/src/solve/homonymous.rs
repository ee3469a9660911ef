use std::collections::BTreeMap;

use crate::bigon::{BigonArc, WeightedBigonDiagram};
use crate::complex::{ArcId, Color, TriangulatedComplex};
use crate::diagram::{classify_arc, WeightedArcDiagram};
use crate::lifting::LiftingPicture;
use crate::structure::{cut_seam, order_components, restrict, SeamError};
use crate::weight::Weight;

use super::{Partial, RealizationResult, Reason};

/// Realize a diagram on a complex whose arcs are all homonymous.
pub fn homonymous_recursion(d: &WeightedArcDiagram) -> RealizationResult {
    let c = d.complex();
    if let Some(a) = c.arc_ids().find(|a| !c.is_homonymous(*a)) {
        return RealizationResult::SolverIncomplete(Reason::Precondition(format!(
            "arc {} is heteronymous",
            c.arc_name(a)
        )));
    }
    let report = c.validate();
    if !report.is_ok() {
        return RealizationResult::SolverIncomplete(Reason::Precondition(
            report.violations[0].to_string(),
        ));
    }
    match recurse(d) {
        Err(r) => RealizationResult::NotRealizable(r),
        Ok(p) => check(d, p),
    }
}

fn is_square(c: &TriangulatedComplex) -> bool {
    c.vertex_count() == 4 && c.arcs().len() == 1
}

pub(crate) fn recurse(d: &WeightedArcDiagram) -> Result<Partial, Reason> {
    let c = d.complex();
    if is_square(c) {
        let a = c.arc_ids().next().unwrap();
        let color = c.arc_color(a).expect("homonymous");
        let bigon =
            WeightedBigonDiagram::from_arcs(1, [(BigonArc::hom(color, 1, 1), d.weight(a).half())]);
        return Ok(Partial {
            branching: vec![a],
            bigon,
        });
    }
    let outer: Vec<ArcId> = c
        .arc_ids()
        .filter(|a| classify_arc(c, *a).is_outer())
        .collect();
    let w_out = outer
        .iter()
        .map(|a| d.weight(*a))
        .min()
        .ok_or(Reason::NoOuterArcs)?
        .clone();
    let least: Vec<ArcId> = outer
        .iter()
        .copied()
        .filter(|a| *d.weight(*a) == w_out)
        .collect();
    let colors: Vec<Color> = least.iter().map(|a| c.arc_color(*a).unwrap()).collect();
    let color = colors[0];
    if colors.iter().any(|k| *k != color) {
        return Err(Reason::MixedColors);
    }
    let mut weights: BTreeMap<ArcId, Weight> = d.weights().clone();
    for a in &outer {
        weights.insert(*a, &weights[a] - &w_out);
    }

    let mut pieces = vec![c.clone()];
    let mut meets = Vec::new();
    for a in &least {
        let k = pieces
            .iter()
            .position(|p| p.has_arc(*a))
            .expect("arc survives earlier cuts");
        match cut_seam(&pieces[k], *a) {
            Ok(cut) => {
                pieces.splice(k..=k, cut.pieces);
                meets.push((cut.first, cut.second));
            }
            Err(SeamError::NoInnerTriangle(_) | SeamError::NotOuter(_)) => {}
            Err(SeamError::UnknownArc(_)) => unreachable!(),
        }
    }
    if pieces.len() < 2 {
        return Err(Reason::StaysConnected);
    }
    let holder = |a: ArcId| {
        pieces
            .iter()
            .position(|p| p.has_arc(a))
            .expect("legs survive")
    };
    let before: Vec<(usize, usize)> = meets
        .iter()
        .map(|(x, y)| (holder(*x), holder(*y)))
        .collect();
    let order = order_components(pieces.len(), &before)?;

    let mut subs = Vec::with_capacity(order.len());
    for k in order {
        subs.push(recurse(&restrict(&weights, pieces[k].clone()))?);
    }
    let n: usize = subs.iter().map(|s| s.bigon.n).sum();
    let mut branching = Vec::with_capacity(n);
    let mut bigon = WeightedBigonDiagram::new(n);
    for s in subs {
        let shifted = s.bigon.shifted(branching.len(), n);
        for (arc, w) in shifted.arcs {
            bigon.add(arc, w);
        }
        branching.extend(s.branching);
    }
    bigon.add(BigonArc::hom(color, 1, n), w_out);
    Ok(Partial { branching, bigon })
}

/// Checks a partial result against `d` and wraps it as a verdict.
pub(crate) fn check(d: &WeightedArcDiagram, p: Partial) -> RealizationResult {
    match LiftingPicture::new(d.complex().clone(), p.branching, p.bigon) {
        Err(e) => RealizationResult::SolverIncomplete(Reason::Picture(e)),
        Ok(pic) => match pic.realizes(d) {
            Ok(true) => RealizationResult::Realizable(Box::new(pic)),
            _ => RealizationResult::SolverIncomplete(Reason::Verification),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hex3, sq1, weighted, weights};

    #[test]
    fn square_gets_half_the_weight() {
        for q in [
            Weight::zero(),
            Weight::from_int(1),
            Weight::from_int(2),
            Weight::ratio(7, 3),
        ] {
            let d = weighted(sq1(), std::slice::from_ref(&q));
            let r = homonymous_recursion(&d);
            let pic = r.picture().expect("square is realizable");
            assert_eq!(
                pic.bigon().weight(&BigonArc::hom(Color::Alpha, 1, 1)),
                q.half()
            );
        }
    }

    #[test]
    fn hex3_equal_weights() {
        let d = weighted(hex3(), &weights(&[1, 1, 1]));
        let r = homonymous_recursion(&d);
        let pic = r.picture().unwrap_or_else(|| panic!("{r}"));
        assert_eq!(pic.branching().len(), 2);
        assert!(pic.realizes(&d).unwrap());
    }
}
