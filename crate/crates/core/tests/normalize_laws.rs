use arclift::bigon::{enumerate_bigon_diagrams, Limits, WeightedBigonDiagram};
use arclift::fixtures::{
    annulus_triangulations, polygon_from_diagonals, polygon_triangulations_up_to_rotation,
};
use arclift::lifting::{compute_sheets, LiftingPicture};
use arclift::normalize::{disconnected_arcs, normalize_connected_branching};
use arclift::structure::clumps;
use arclift::{ArcId, TriangulatedComplex, Weight};

fn orders(c: &TriangulatedComplex) -> Vec<Vec<ArcId>> {
    let hom: Vec<ArcId> = c.arc_ids().filter(|a| c.is_homonymous(*a)).collect();
    let mut out: Vec<Vec<ArcId>> = vec![vec![]];
    for _ in 0..c.branching_count() {
        out = out
            .iter()
            .flat_map(|o| {
                hom.iter()
                    .filter(|a| !o.contains(a))
                    .map(move |a| [o.clone(), vec![*a]].concat())
            })
            .collect();
    }
    out.into_iter()
        .filter(|o| compute_sheets(c, o).is_ok())
        .collect()
}

/// After normalization each homonymous bigon arc branches inside one clump, and
/// the lift is unchanged.
#[test]
fn every_disconnected_picture_normalizes() {
    let mut complexes: Vec<TriangulatedComplex> = Vec::new();
    for n in [6, 8] {
        for t in polygon_triangulations_up_to_rotation(n) {
            complexes.push(polygon_from_diagonals(n, &t));
        }
    }
    complexes.extend(annulus_triangulations(true));
    complexes.extend(annulus_triangulations(false));
    let mut seen = 0;
    for c in &complexes {
        let n = c.branching_count() as usize;
        let diagrams = enumerate_bigon_diagrams(n, Limits { max_arcs: Some(4) });
        for o in orders(c) {
            for arcs in &diagrams {
                let ws = arcs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (*a, Weight::from_int(1 + i as u64 % 2)));
                let p = LiftingPicture::new(
                    c.clone(),
                    o.clone(),
                    WeightedBigonDiagram::from_arcs(n, ws),
                )
                .unwrap();
                if p.lifted_diagram().is_none() || disconnected_arcs(&p).is_empty() {
                    continue;
                }
                seen += 1;
                let q = normalize_connected_branching(&p)
                    .unwrap_or_else(|e| panic!("{:?} {:?}: {e}", o, arcs));
                assert!(disconnected_arcs(&q).is_empty());
                assert_eq!(q.lift_diagram(), p.lift_diagram());
            }
        }
    }
    assert!(
        seen > 100,
        "only {seen} pictures had disconnected branching"
    );
}

#[test]
fn clumps_partition_the_homonymous_arcs() {
    for t in polygon_triangulations_up_to_rotation(8) {
        let c = polygon_from_diagonals(8, &t);
        let mut all: Vec<ArcId> = clumps(&c).concat();
        all.sort();
        let hom: Vec<ArcId> = c.arc_ids().filter(|a| c.is_homonymous(*a)).collect();
        assert_eq!(all, hom);
    }
}
