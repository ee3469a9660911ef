use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::bigon::{maximal_bigon_diagrams, BigonArc, WeightedBigonDiagram};
use crate::complex::{ArcId, TriangulatedComplex};
use crate::diagram::WeightedArcDiagram;
use crate::lifting::{compute_sheets, LiftedArc};
use crate::simplex::nonnegative_solution;
use crate::weight::Weight;

use super::homonymous::check;
use super::{Partial, RealizationResult, Reason};

/// Bounds on the brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BruteLimits {
    /// Bigon diagrams with more arcs than this are skipped.
    pub max_bigon_arcs: Option<usize>,
    /// Give up when there are more candidate branching sets than this.
    pub max_candidate_sets: Option<usize>,
}

/// The arcs of one maximal bigon diagram that lift inside the complex, together with
/// their lift multiplicities, for one ordered branching diagram.
#[derive(Debug, Clone)]
struct Cone {
    branching: Vec<ArcId>,
    arcs: Vec<BigonArc>,
    columns: Vec<Vec<u32>>,
}

/// Every lifting picture shape on a complex, reduced to the cones of weights they
/// can lift to. Build once per complex, then solve for many weightings.
#[derive(Debug, Clone)]
pub struct BruteForce {
    arcs: Vec<ArcId>,
    n: usize,
    cones: Vec<Cone>,
    skipped: usize,
    pub candidate_sets: usize,
    pub orders: usize,
}

impl BruteForce {
    pub fn new(complex: &TriangulatedComplex, limits: BruteLimits) -> Result<BruteForce, Reason> {
        let need = complex.branching_count();
        let arcs: Vec<ArcId> = complex.arc_ids().collect();
        let index: BTreeMap<ArcId, usize> = arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let hom: Vec<ArcId> = arcs
            .iter()
            .copied()
            .filter(|a| complex.is_homonymous(*a))
            .collect();
        if need < 0 || need as usize > hom.len() {
            return Ok(BruteForce {
                arcs,
                n: 0,
                cones: vec![],
                skipped: 0,
                candidate_sets: 0,
                orders: 0,
            });
        }
        let n = need as usize;
        let sets = combinations(&hom, n);
        if let Some(cap) = limits.max_candidate_sets {
            if sets.len() > cap {
                return Err(Reason::Limits(format!(
                    "{} candidate branching sets exceed {cap}",
                    sets.len()
                )));
            }
        }
        let orders: Vec<Vec<ArcId>> = sets.iter().flat_map(|s| permutations(s)).collect();
        let facets: Vec<Vec<BigonArc>> = maximal_bigon_diagrams(n);
        let cap = limits.max_bigon_arcs.unwrap_or(usize::MAX);
        let skipped = facets.iter().filter(|f| f.len() > cap).count();
        let facets: Vec<&Vec<BigonArc>> = facets.iter().filter(|f| f.len() <= cap).collect();

        let found: Vec<Vec<Cone>> = orders
            .par_iter()
            .filter_map(|order| {
                let sheets = compute_sheets(complex, order).ok()?;
                let mut lifts: BTreeMap<BigonArc, Option<Vec<u32>>> = BTreeMap::new();
                let mut cones = Vec::new();
                for facet in &facets {
                    let mut kept = Vec::new();
                    let mut columns = Vec::new();
                    for a in facet.iter() {
                        let col = lifts
                            .entry(*a)
                            .or_insert_with(|| column(&sheets.lift_multiset(a), &index));
                        if let Some(col) = col {
                            if col.iter().any(|v| *v > 0) {
                                kept.push(*a);
                                columns.push(col.clone());
                            }
                        }
                    }
                    cones.push(Cone {
                        branching: order.clone(),
                        arcs: kept,
                        columns,
                    });
                }
                Some(cones)
            })
            .collect();
        let valid_orders = found.len();
        let cones = reduce(found.into_iter().flatten().collect());
        Ok(BruteForce {
            arcs,
            n,
            cones,
            skipped,
            candidate_sets: sets.len(),
            orders: valid_orders,
        })
    }

    pub fn cone_count(&self) -> usize {
        self.cones.len()
    }

    pub fn solve(&self, d: &WeightedArcDiagram) -> RealizationResult {
        let b: Vec<BigRational> = self
            .arcs
            .iter()
            .map(|a| d.weight(*a).value().clone())
            .collect();
        let hit = self.cones.par_iter().find_map_first(|cone| {
            // Every weighted arc needs some column reaching it.
            let reachable = b
                .iter()
                .enumerate()
                .all(|(i, w)| w.is_zero() || cone.columns.iter().any(|c| c[i] > 0));
            if !reachable {
                return None;
            }
            let rows: Vec<Vec<BigRational>> = (0..b.len())
                .map(|i| {
                    cone.columns
                        .iter()
                        .map(|c| BigRational::from_integer(c[i].into()))
                        .collect()
                })
                .collect();
            nonnegative_solution(&rows, &b).map(|x| (cone, x))
        });
        match hit {
            Some((cone, x)) => {
                let mut bigon = WeightedBigonDiagram::new(self.n);
                for (a, w) in cone.arcs.iter().zip(x) {
                    if !w.is_zero() {
                        bigon.add(
                            *a,
                            Weight::new(w).expect("simplex solutions are nonnegative"),
                        );
                    }
                }
                check(
                    d,
                    Partial {
                        branching: cone.branching.clone(),
                        bigon,
                    },
                )
            }
            None if self.skipped > 0 => {
                RealizationResult::SolverIncomplete(Reason::Limits(format!(
                    "{} maximal bigon diagrams over the arc limit were skipped",
                    self.skipped
                )))
            }
            None => RealizationResult::NotRealizable(Reason::Exhausted(format!(
                "{} branching sets, {} valid orders, {} cones",
                self.candidate_sets,
                self.orders,
                self.cones.len()
            ))),
        }
    }
}

/// Search every ordered branching diagram drawn from the homonymous arcs of the
/// complex and every maximal standard-position bigon diagram for nonnegative
/// bigon weights lifting to `d`.
pub fn brute_force_realize(d: &WeightedArcDiagram, limits: BruteLimits) -> RealizationResult {
    match BruteForce::new(d.complex(), limits) {
        Ok(bf) => bf.solve(d),
        Err(r) => RealizationResult::SolverIncomplete(r),
    }
}

/// Lift multiplicities per complex arc, or `None` if some lift leaves the complex.
fn column(lift: &BTreeMap<LiftedArc, usize>, index: &BTreeMap<ArcId, usize>) -> Option<Vec<u32>> {
    let mut col = vec![0u32; index.len()];
    for (l, k) in lift {
        match l {
            LiftedArc::Arc(a) => col[index[a]] += *k as u32,
            LiftedArc::Extra(_) => return None,
        }
    }
    Some(col)
}

/// Drop repeated cones and cones spanned by a subset of another cone's columns.
fn reduce(cones: Vec<Cone>) -> Vec<Cone> {
    let mut by_set: BTreeMap<BTreeSet<Vec<u32>>, Cone> = BTreeMap::new();
    for c in cones {
        let key: BTreeSet<Vec<u32>> = c.columns.iter().cloned().collect();
        by_set.entry(key).or_insert(c);
    }
    let keys: Vec<BTreeSet<Vec<u32>>> = by_set.keys().cloned().collect();
    let mut out = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        let dominated = keys
            .iter()
            .enumerate()
            .any(|(j, o)| j != i && k.len() < o.len() && k.is_subset(o));
        if !dominated {
            out.push(by_set.remove(k).unwrap());
        }
    }
    out
}

fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, items[i].clone());
            out.push(rest);
        }
    }
    out
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Color;
    use crate::fixtures::{hex3, hexh, sq1, weighted, weights};

    #[test]
    fn sq1_needs_half_weight() {
        let d = weighted(sq1(), &weights(&[2]));
        let r = brute_force_realize(&d, BruteLimits::default());
        let pic = r.picture().unwrap_or_else(|| panic!("{r}"));
        assert_eq!(
            pic.bigon().weight(&BigonArc::hom(Color::Alpha, 1, 1)),
            Weight::from_int(1)
        );
        let z = weighted(sq1(), &weights(&[0]));
        let r = brute_force_realize(&z, BruteLimits::default());
        assert!(r.picture().unwrap().bigon().arcs.is_empty());
    }

    #[test]
    fn hexh_agrees_with_the_ladder_solver() {
        let d = weighted(hexh(), &weights(&[2, 4, 3]));
        assert!(brute_force_realize(&d, BruteLimits::default()).is_realizable());
    }

    #[test]
    fn hex3_weights() {
        let r = brute_force_realize(
            &weighted(hex3(), &weights(&[1, 1, 1])),
            BruteLimits::default(),
        );
        assert!(r.is_realizable());
        let bf = BruteForce::new(&hex3(), BruteLimits::default()).unwrap();
        assert!(bf.cone_count() > 0);
    }

    #[test]
    fn limits_are_reported() {
        let d = weighted(hex3(), &weights(&[1, 1, 1]));
        let r = brute_force_realize(
            &d,
            BruteLimits {
                max_candidate_sets: Some(1),
                ..Default::default()
            },
        );
        assert!(matches!(
            r,
            RealizationResult::SolverIncomplete(Reason::Limits(_))
        ));
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(combinations(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(combinations::<u8>(&[], 0), vec![Vec::<u8>::new()]);
    }
}
