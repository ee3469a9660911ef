use crate::bigon::{BigonArc, WeightedBigonDiagram};
use crate::diagram::WeightedArcDiagram;
use crate::merge::place_all;
use crate::structure::{clump_substrate, decompose};

use super::homonymous::{check, homonymous_recursion, recurse};
use super::{Partial, RealizationResult, Reason};

/// Realize a maximal diagram: each clump by homonymous recursion, the clumps placed
/// along a line by merging the ladders between them. A negative answer is only
/// decisive when every arc has positive weight; otherwise it is reported as
/// incomplete.
pub fn realize_maximal(d: &WeightedArcDiagram) -> RealizationResult {
    match assemble(d) {
        RealizationResult::NotRealizable(r) if d.weights().values().any(|w| w.is_zero()) => {
            RealizationResult::SolverIncomplete(Reason::ZeroWeightArcs(Box::new(r)))
        }
        r => r,
    }
}

fn assemble(d: &WeightedArcDiagram) -> RealizationResult {
    let c = d.complex();
    let report = c.validate();
    if !report.is_ok() {
        return RealizationResult::SolverIncomplete(Reason::Precondition(
            report.violations[0].to_string(),
        ));
    }
    let dec = match decompose(d) {
        Ok(dec) => dec,
        Err(e) => return RealizationResult::NotRealizable(e.into()),
    };
    if dec.clumps.is_empty() {
        return RealizationResult::SolverIncomplete(Reason::Precondition(
            "no homonymous arcs".into(),
        ));
    }
    if dec.ladders.is_empty() {
        return homonymous_recursion(d);
    }
    let mut parts = Vec::with_capacity(dec.clumps.len());
    for (k, clump) in dec.clumps.iter().enumerate() {
        match recurse(&clump_substrate(d, clump)) {
            Ok(p) => parts.push(Some(p)),
            Err(r) => {
                return RealizationResult::NotRealizable(Reason::Clump {
                    clump: k,
                    reason: Box::new(r),
                })
            }
        }
    }
    let lists: Vec<_> = dec.ladders.iter().map(|l| l.clumps.clone()).collect();
    let z = match place_all(&lists) {
        Ok(z) => z,
        Err(e) => return RealizationResult::NotRealizable(e.into()),
    };
    let order = z.symbols();
    if order.len() != dec.clumps.len() {
        return RealizationResult::SolverIncomplete(Reason::Precondition(
            "a clump borders no ladder".into(),
        ));
    }

    let n: usize = parts.iter().map(|p| p.as_ref().unwrap().bigon.n).sum();
    let expected = c.branching_count();
    if n as i64 != expected {
        return RealizationResult::NotRealizable(Reason::BranchingCount { found: n, expected });
    }
    let mut branching = Vec::with_capacity(n);
    let mut bigon = WeightedBigonDiagram::new(n);
    for (i, k) in order.iter().enumerate() {
        if i > 0 {
            bigon.add(BigonArc::het(branching.len()), z.steps[i - 1].0.clone());
        }
        let p = parts[*k].take().unwrap();
        for (arc, w) in p.bigon.shifted(branching.len(), n).arcs {
            bigon.add(arc, w);
        }
        branching.extend(p.branching);
    }
    check(d, Partial { branching, bigon })
}

/// Realize a maximal diagram whose homonymous arcs are exactly as many as the
/// branching arcs it needs.
pub fn heteronymous_realization(d: &WeightedArcDiagram) -> RealizationResult {
    let c = d.complex();
    let hom = c.arc_ids().filter(|a| c.is_homonymous(*a)).count();
    if hom as i64 != c.branching_count() {
        return RealizationResult::SolverIncomplete(Reason::Precondition(format!(
            "{hom} homonymous arcs, expected {}",
            c.branching_count()
        )));
    }
    realize_maximal(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Color;
    use crate::fixtures::{hex3, hexh, weighted, weights};
    use crate::weight::Weight;

    #[test]
    fn hexh_gets_the_expected_bigon() {
        let d = weighted(hexh(), &weights(&[2, 4, 3]));
        let r = heteronymous_realization(&d);
        let pic = r.picture().unwrap_or_else(|| panic!("{r}"));
        let want = WeightedBigonDiagram::from_arcs(
            2,
            [
                (BigonArc::hom(Color::Alpha, 1, 1), Weight::from_int(1)),
                (BigonArc::hom(Color::Beta, 2, 2), Weight::from_int(2)),
                (BigonArc::het(1), Weight::from_int(3)),
            ],
        );
        assert_eq!(pic.bigon(), &want);
        let m = realize_maximal(&d);
        assert_eq!(m.picture().unwrap().bigon(), &want);
    }

    #[test]
    fn hexh_with_empty_rung() {
        let d = weighted(hexh(), &weights(&[2, 4, 0]));
        assert!(realize_maximal(&d).is_realizable());
    }

    #[test]
    fn hex3_goes_to_the_recursion() {
        let d = weighted(hex3(), &weights(&[1, 1, 1]));
        assert!(realize_maximal(&d).is_realizable());
    }
}
