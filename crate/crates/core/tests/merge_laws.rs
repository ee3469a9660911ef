use arclift::ladder::LadderList;
use arclift::merge::{
    block_normal_form, check_anchored_merge, check_embedded, check_free_merge, constrained_merge,
    free_merge, general_merge, place_all, MergeError,
};
use arclift::Weight;
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = Weight> {
    (0u64..=24, 1u64..=12).prop_map(|(p, q)| Weight::ratio(p, q))
}

/// Symbols on a hidden line at strictly increasing positions; sublists of it
/// always merge.
fn master(max: usize) -> impl Strategy<Value = Vec<(u8, Weight)>> {
    prop::collection::vec(weight(), 1..=max).prop_map(line)
}

fn master_without_ties(max: usize) -> impl Strategy<Value = Vec<(u8, Weight)>> {
    prop::collection::vec(
        (1u64..=24, 1u64..=12).prop_map(|(p, q)| Weight::ratio(p, q)),
        1..=max,
    )
    .prop_map(line)
}

fn line(gaps: Vec<Weight>) -> Vec<(u8, Weight)> {
    {
        let mut pos = Weight::zero();
        gaps.into_iter()
            .enumerate()
            .map(|(i, g)| {
                if i > 0 {
                    pos = &pos + &g;
                }
                (i as u8, pos.clone())
            })
            .collect()
    }
}

fn sublist(m: &[(u8, Weight)], mask: u32) -> LadderList<u8> {
    let mask = mask & ((1 << m.len()) - 1);
    let picked: Vec<&(u8, Weight)> = m
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| p)
        .collect();
    let Some(first) = picked.first() else {
        return LadderList::headed(m[0].0, vec![]);
    };
    let steps = picked
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1, w[1].0))
        .collect();
    LadderList::headed(first.0, steps)
}

fn headless(syms: std::ops::Range<u8>) -> impl Strategy<Value = LadderList<u8>> {
    prop::collection::vec(weight(), 0..=syms.len())
        .prop_map(move |ws| LadderList::headless(ws.into_iter().zip(syms.clone()).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn free_merge_properties(x in headless(0..8), y in headless(100..108)) {
        let z = free_merge(&x, &y).unwrap();
        prop_assert_eq!(check_free_merge(&x, &y, &z), Ok(()));
        prop_assert!(z.steps.len() == x.steps.len() + y.steps.len());
    }

    #[test]
    fn constrained_merge_properties(m in master(8), a in any::<u32>(), b in any::<u32>()) {
        let n = m.len() as u32;
        let ends = 1 | (1 << (n - 1));
        if n < 2 { return Ok(()); }
        // Interior symbols must be disjoint.
        let x = sublist(&m, (a & !ends & 0x55) | ends);
        let y = sublist(&m, (b & !ends & 0xAA) | ends);
        let z = constrained_merge(&x, &y).unwrap();
        prop_assert_eq!(check_anchored_merge(&x, &y, &z), Ok(()));
    }

    #[test]
    fn general_merge_properties(m in master(8), a in 1u32..256, b in 1u32..256) {
        let x = sublist(&m, a);
        let y = sublist(&m, b);
        let z = general_merge(&x, &y).unwrap();
        prop_assert_eq!(check_anchored_merge(&x, &y, &z), Ok(()));
    }

    #[test]
    fn general_merge_is_order_independent(
        m in master_without_ties(8), a in 0u32..256, b in 0u32..256, c in 0u32..256, p in 0usize..8, q in 0usize..8,
    ) {
        // Each merge must share an anchor; without one the relative placement is free.
        let (p, q) = (1u32 << (p % m.len()), 1u32 << (q % m.len()));
        let (a, b, c) = (a | p | q, b | p, c | q);
        let (a, b, c) = (sublist(&m, a), sublist(&m, b), sublist(&m, c));
        let left = general_merge(&a, &b).and_then(|ab| general_merge(&ab, &c));
        let right = general_merge(&a, &c).and_then(|ac| general_merge(&ac, &b));
        match (left, right) {
            (Ok(l), Ok(r)) => prop_assert_eq!(block_normal_form(&l), block_normal_form(&r), "{} vs {}", l, r),
            (Err(_), Err(_)) => {}
            (l, r) => prop_assert!(false, "one side raised: {:?} / {:?}", l, r),
        }
    }

    #[test]
    fn placement_agrees_with_iterated_merges(
        m in master_without_ties(8), a in 0u32..256, b in 0u32..256, c in 0u32..256, p in 0usize..8, q in 0usize..8,
    ) {
        let (p, q) = (1u32 << (p % m.len()), 1u32 << (q % m.len()));
        let (a, b, c) = (sublist(&m, a | p | q), sublist(&m, b | p), sublist(&m, c | q));
        let merged = general_merge(&a, &b).and_then(|ab| general_merge(&ab, &c)).unwrap();
        let placed = place_all(&[a, b, c]).unwrap();
        prop_assert_eq!(placed, merged);
    }

    #[test]
    fn placement_of_sublists_satisfies_every_input(m in master(8), a in 1u32..256, b in 1u32..256, c in 1u32..256) {
        let lists = [sublist(&m, a | 1), sublist(&m, b | 1), sublist(&m, c | 1)];
        let z = place_all(&lists).unwrap();
        for l in &lists {
            prop_assert_eq!(check_embedded(l, &z), Ok(()));
        }
    }
}

/// With several symbols at one position, the first merge fixes their order and a
/// third list can contradict it, so only one merge order raises.
#[test]
fn order_independence_fails_at_ties() {
    let w = Weight::from_int;
    let a = LadderList::headed(0u8, vec![(w(0), 2)]);
    let b = LadderList::headed(0u8, vec![(w(0), 1), (w(0), 3), (w(0), 4), (w(1), 5)]);
    let c = LadderList::headed(2u8, vec![(w(0), 3), (w(1), 5)]);
    let left = general_merge(&a, &b).and_then(|ab| general_merge(&ab, &c));
    let right = general_merge(&a, &c).and_then(|ac| general_merge(&ac, &b));
    assert!(left.is_err());
    assert!(right.is_ok());
}

#[test]
fn placement_succeeds_where_one_merge_order_fails() {
    let w = Weight::from_int;
    let a = LadderList::headed(0u8, vec![(w(0), 2)]);
    let b = LadderList::headed(0u8, vec![(w(0), 1), (w(0), 3), (w(0), 4), (w(1), 5)]);
    let c = LadderList::headed(2u8, vec![(w(0), 3), (w(1), 5)]);
    let z = place_all(&[a.clone(), b.clone(), c.clone()]).unwrap();
    for l in [&a, &b, &c] {
        assert_eq!(check_embedded(l, &z), Ok(()));
    }
}

#[test]
fn placement_reports_contradictions() {
    let w = Weight::from_int;
    let x = LadderList::headed(0u8, vec![(w(1), 1)]);
    let y = LadderList::headed(0u8, vec![(w(2), 1)]);
    assert!(matches!(
        place_all(&[x, y]),
        Err(MergeError::WeightSumMismatch(..))
    ));
    let x = LadderList::headed(0u8, vec![(w(0), 1)]);
    let y = LadderList::headed(1u8, vec![(w(0), 0)]);
    assert!(matches!(
        place_all(&[x, y]),
        Err(MergeError::CommonOrderMismatch(..))
    ));
    let x = LadderList::headed(0u8, vec![(w(1), 1)]);
    let y = LadderList::headed(2u8, vec![(w(1), 3)]);
    assert_eq!(place_all(&[x, y]), Err(MergeError::Disconnected(2)));
}

#[test]
fn placement_keeps_exactly_the_input_symbols() {
    let w = Weight::from_int;
    let x = LadderList::headed(0u8, vec![(w(1), 1), (w(2), 2)]);
    let y = LadderList::headed(1u8, vec![(w(1), 3)]);
    let z = place_all(&[x, y]).unwrap();
    assert_eq!(
        z,
        LadderList::headed(0u8, vec![(w(1), 1), (w(1), 3), (w(1), 2)])
    );
}
