//! Free, constrained and general merges of ladder lists, with checkers for the
//! properties each merge promises.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ladder::LadderList;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("free merge inputs share symbol {0}")]
    OverlappingSymbols(String),
    #[error("free merge needs headless lists")]
    ExpectedHeadless,
    #[error("constrained merge needs headed lists with equal endpoints")]
    AnchorMismatch,
    #[error("constrained merge totals differ: {0} vs {1}")]
    TotalWeightMismatch(Weight, Weight),
    #[error("common symbols {0} and {1} appear in opposite orders")]
    CommonOrderMismatch(String, String),
    #[error("weight between {0} and {1} differs: {2} vs {3}")]
    WeightSumMismatch(String, String, Weight, Weight),
    #[error("constrained merge overran its total weight")]
    TailInvariant,
    #[error("list repeats symbol {0}")]
    RepeatedSymbol(String),
    #[error("lists fall into {0} groups with no symbol in common")]
    Disconnected(usize),
}

pub trait Symbol: Clone + Eq + Hash + Debug {}
impl<T: Clone + Eq + Hash + Debug> Symbol for T {}

fn name<S: Debug>(s: &S) -> String {
    format!("{s:?}")
}

fn check_distinct<S: Symbol>(l: &LadderList<S>) -> Result<(), MergeError> {
    let mut seen = HashSet::new();
    for s in l.symbols() {
        if !seen.insert(s.clone()) {
            return Err(MergeError::RepeatedSymbol(name(&s)));
        }
    }
    Ok(())
}

/// The recursion of the free merge, unrolled. Ties take from `y`; the remainder of
/// the longer head weight stays in front of its own symbol.
fn free_merge_steps<S: Clone>(x: &[(Weight, S)], y: &[(Weight, S)]) -> Vec<(Weight, S)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let mut wx = x.first().map(|p| p.0.clone());
    let mut wy = y.first().map(|p| p.0.clone());
    while i < x.len() && j < y.len() {
        let (a, b) = (wx.take().unwrap(), wy.take().unwrap());
        if a < b {
            out.push((a.clone(), x[i].1.clone()));
            wy = Some(&b - &a);
            i += 1;
            wx = x.get(i).map(|p| p.0.clone());
        } else {
            out.push((b.clone(), y[j].1.clone()));
            wx = Some(&a - &b);
            j += 1;
            wy = y.get(j).map(|p| p.0.clone());
        }
    }
    if i < x.len() {
        out.push((wx.unwrap(), x[i].1.clone()));
        out.extend(x[i + 1..].iter().cloned());
    }
    if j < y.len() {
        out.push((wy.unwrap(), y[j].1.clone()));
        out.extend(y[j + 1..].iter().cloned());
    }
    out
}

/// Interleave two headless lists with disjoint symbols.
pub fn free_merge<S: Symbol>(
    x: &LadderList<S>,
    y: &LadderList<S>,
) -> Result<LadderList<S>, MergeError> {
    if !x.is_headless() || !y.is_headless() {
        return Err(MergeError::ExpectedHeadless);
    }
    let xs: HashSet<&S> = x.steps.iter().map(|(_, s)| s).collect();
    if let Some((_, s)) = y.steps.iter().find(|(_, s)| xs.contains(s)) {
        return Err(MergeError::OverlappingSymbols(name(s)));
    }
    Ok(LadderList::headless(free_merge_steps(&x.steps, &y.steps)))
}

/// Merge two headed lists that share first and last symbol and total weight.
pub fn constrained_merge<S: Symbol>(
    x: &LadderList<S>,
    y: &LadderList<S>,
) -> Result<LadderList<S>, MergeError> {
    let (Some(x0), Some(y0)) = (&x.head, &y.head) else {
        return Err(MergeError::AnchorMismatch);
    };
    if x0 != y0 || x.last() != y.last() {
        return Err(MergeError::AnchorMismatch);
    }
    let (tx, ty) = (x.total(), y.total());
    if tx != ty {
        return Err(MergeError::TotalWeightMismatch(tx, ty));
    }
    if x.steps.is_empty() && y.steps.is_empty() {
        return Ok(x.clone());
    }
    if x.steps.is_empty() || y.steps.is_empty() {
        // One list is a lone anchor, so both ends coincide and the other list repeats it.
        return Err(MergeError::AnchorMismatch);
    }
    // The shared last symbol is held back until both interiors are merged; merging it
    // with the rest lets a tie emit it ahead of zero-gap symbols of the other list.
    let (xi, yi) = (&x.steps[..x.steps.len() - 1], &y.steps[..y.steps.len() - 1]);
    let mut z = free_merge_steps(xi, yi);
    let used: Weight = z.iter().map(|p| &p.0).sum();
    let rest = tx.checked_sub(&used).ok_or(MergeError::TailInvariant)?;
    z.push((rest, x.last().unwrap().clone()));
    Ok(LadderList::headed(x0.clone(), z))
}

/// The prefix `s_0, w_1, ..., s_{t-1}, w_t` of a list, read backwards from the symbol
/// that follows it, as a headless list.
fn reverse_prefix<S: Clone>(symbols: &[S], weights: &[Weight]) -> Vec<(Weight, S)> {
    (0..symbols.len())
        .rev()
        .map(|i| (weights[i].clone(), symbols[i].clone()))
        .collect()
}

/// Merge two headed lists that may share symbols.
pub fn general_merge<S: Symbol>(
    x: &LadderList<S>,
    y: &LadderList<S>,
) -> Result<LadderList<S>, MergeError> {
    if x.is_headless() || y.is_headless() {
        return Err(MergeError::AnchorMismatch);
    }
    check_distinct(x)?;
    check_distinct(y)?;
    let xs = x.symbols();
    let ys = y.symbols();
    let ypos: HashMap<&S, usize> = ys.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let common: Vec<(usize, usize)> = xs
        .iter()
        .enumerate()
        .filter_map(|(i, s)| ypos.get(s).map(|&j| (i, j)))
        .collect();
    for pair in common.windows(2) {
        let ((sa, ea), (sb, eb)) = (pair[0], pair[1]);
        if ea >= eb {
            return Err(MergeError::CommonOrderMismatch(
                name(&xs[sa]),
                name(&xs[sb]),
            ));
        }
        let (gx, gy) = (x.gap(sa, sb), y.gap(ea, eb));
        if gx != gy {
            return Err(MergeError::WeightSumMismatch(
                name(&xs[sa]),
                name(&xs[sb]),
                gx,
                gy,
            ));
        }
    }
    let xw: Vec<Weight> = x.weights().cloned().collect();
    let yw: Vec<Weight> = y.weights().cloned().collect();

    if common.is_empty() {
        // No shared anchor: merge from a virtual common start with zero gaps.
        let xh: Vec<(Weight, S)> = std::iter::once((Weight::zero(), xs[0].clone()))
            .chain(x.steps.iter().cloned())
            .collect();
        let yh: Vec<(Weight, S)> = std::iter::once((Weight::zero(), ys[0].clone()))
            .chain(y.steps.iter().cloned())
            .collect();
        let mut z = free_merge_steps(&xh, &yh);
        let (_, head) = z.remove(0);
        return Ok(LadderList::headed(head, z));
    }

    // Head segment: everything before the first common symbol, merged backwards.
    let (s1, e1) = common[0];
    let hx = reverse_prefix(&xs[..s1], &xw[..s1]);
    let hy = reverse_prefix(&ys[..e1], &yw[..e1]);
    let head_rev = free_merge_steps(&hx, &hy);
    let a1 = xs[s1].clone();
    let mut out = match head_rev.last() {
        None => LadderList::headed(a1.clone(), vec![]),
        Some(_) => {
            // head_rev = (u_1, z_1), ..., (u_k, z_k) read away from a1.
            let k = head_rev.len();
            let mut steps = Vec::with_capacity(k);
            for i in (0..k).rev() {
                let next = if i == 0 {
                    a1.clone()
                } else {
                    head_rev[i - 1].1.clone()
                };
                steps.push((head_rev[i].0.clone(), next));
            }
            LadderList::headed(head_rev[k - 1].1.clone(), steps)
        }
    };

    for pair in common.windows(2) {
        let ((sa, ea), (sb, eb)) = (pair[0], pair[1]);
        let seg_x = LadderList::headed(xs[sa].clone(), x.steps[sa..sb].to_vec());
        let seg_y = LadderList::headed(ys[ea].clone(), y.steps[ea..eb].to_vec());
        let m = constrained_merge(&seg_x, &seg_y)?;
        out.steps.extend(m.steps);
    }

    let (sk, ek) = *common.last().unwrap();
    let tail = free_merge_steps(&x.steps[sk..], &y.steps[ek..]);
    out.steps.extend(tail);
    Ok(out)
}

/// Position of every symbol in a list with distinct symbols.
fn positions<S: Symbol>(l: &LadderList<S>) -> HashMap<S, usize> {
    l.symbols()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect()
}

fn same_symbol_set<S: Symbol>(inputs: &[&LadderList<S>], z: &LadderList<S>) -> Result<(), String> {
    let mut want: HashSet<S> = HashSet::new();
    for l in inputs {
        want.extend(l.symbols());
    }
    let got: Vec<S> = z.symbols();
    let got_set: HashSet<S> = got.iter().cloned().collect();
    if got_set.len() != got.len() {
        return Err("output repeats a symbol".into());
    }
    if got_set != want {
        return Err(format!(
            "symbol sets differ: {} output vs {} input",
            got_set.len(),
            want.len()
        ));
    }
    Ok(())
}

fn order_and_gaps<S: Symbol>(
    input: &LadderList<S>,
    z: &LadderList<S>,
    zpos: &HashMap<S, usize>,
) -> Result<(), String> {
    let syms = input.symbols();
    for i in 1..syms.len() {
        let (a, b) = (zpos[&syms[i - 1]], zpos[&syms[i]]);
        if a >= b {
            return Err(format!(
                "order of {:?} and {:?} not preserved",
                syms[i - 1],
                syms[i]
            ));
        }
        let off = usize::from(input.head.is_some());
        let want = input.steps[i - off].0.clone();
        let got = z.gap(a, b);
        if want != got {
            return Err(format!(
                "gap {:?}..{:?}: {} in input, {} in output",
                syms[i - 1],
                syms[i],
                want,
                got
            ));
        }
    }
    Ok(())
}

/// The four properties of a free merge: symbol union, order, leading weights, gaps.
pub fn check_free_merge<S: Symbol>(
    x: &LadderList<S>,
    y: &LadderList<S>,
    z: &LadderList<S>,
) -> Result<(), String> {
    same_symbol_set(&[x, y], z)?;
    let zpos = positions(z);
    for l in [x, y] {
        if let Some((w, s)) = l.steps.first() {
            let k = zpos[s];
            let got: Weight = z.steps[..=k].iter().map(|p| &p.0).sum();
            if &got != w {
                return Err(format!(
                    "leading weight before {s:?}: {w} in input, {got} in output"
                ));
            }
        }
        order_and_gaps(l, z, &zpos)?;
    }
    Ok(())
}

/// The properties shared by constrained and general merges: symbol union, order, gaps.
pub fn check_anchored_merge<S: Symbol>(
    x: &LadderList<S>,
    y: &LadderList<S>,
    z: &LadderList<S>,
) -> Result<(), String> {
    same_symbol_set(&[x, y], z)?;
    let zpos = positions(z);
    order_and_gaps(x, z, &zpos)?;
    order_and_gaps(y, z, &zpos)
}

/// `z` contains every symbol of `x` in order, with the same gaps.
pub fn check_embedded<S: Symbol>(x: &LadderList<S>, z: &LadderList<S>) -> Result<(), String> {
    order_and_gaps(x, z, &positions(z))
}

/// A list with its zero-weight runs collapsed into sets, so that lists differing
/// only in the order of symbols at the same position compare equal.
pub fn block_normal_form<S: Symbol + Ord>(l: &LadderList<S>) -> (Vec<Vec<S>>, Vec<Weight>) {
    let mut blocks: Vec<Vec<S>> = Vec::new();
    let mut gaps = Vec::new();
    let mut cur: Vec<S> = l.head.iter().cloned().collect();
    for (w, s) in &l.steps {
        if w.is_zero() {
            cur.push(s.clone());
        } else {
            if !cur.is_empty() {
                cur.sort();
                blocks.push(std::mem::take(&mut cur));
            }
            gaps.push(w.clone());
            cur.push(s.clone());
        }
    }
    cur.sort();
    blocks.push(cur);
    (blocks, gaps)
}

/// Merge any number of headed lists at once by placing every symbol on a line.
/// Consecutive symbols of a list sit their weight apart and keep their order; symbols
/// at one position are ordered by the lists, smaller symbols first when free. Agrees
/// with iterated general merges wherever those succeed without ties, and also
/// succeeds where only some merge orders would.
pub fn place_all<S: Symbol + Ord>(lists: &[LadderList<S>]) -> Result<LadderList<S>, MergeError> {
    let mut adj: BTreeMap<S, Vec<(S, BigRational)>> = BTreeMap::new();
    let mut after: BTreeMap<S, BTreeSet<S>> = BTreeMap::new();
    for l in lists {
        if l.is_headless() {
            return Err(MergeError::AnchorMismatch);
        }
        check_distinct(l)?;
        let syms = l.symbols();
        adj.entry(syms[0].clone()).or_default();
        after.entry(syms[0].clone()).or_default();
        for (i, (w, b)) in l.steps.iter().enumerate() {
            let a = &syms[i];
            adj.entry(a.clone())
                .or_default()
                .push((b.clone(), w.value().clone()));
            adj.entry(b.clone())
                .or_default()
                .push((a.clone(), -w.value().clone()));
            after.entry(a.clone()).or_default().insert(b.clone());
            after.entry(b.clone()).or_default();
        }
    }
    if adj.is_empty() {
        return Ok(LadderList::headless(vec![]));
    }
    let mut pos: BTreeMap<S, BigRational> = BTreeMap::new();
    let mut groups = 0;
    for root in adj.keys() {
        if pos.contains_key(root) {
            continue;
        }
        groups += 1;
        pos.insert(root.clone(), BigRational::zero());
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(a) = queue.pop_front() {
            let pa = pos[&a].clone();
            for (b, d) in &adj[&a] {
                let want = &pa + d;
                match pos.get(b) {
                    None => {
                        pos.insert(b.clone(), want);
                        queue.push_back(b.clone());
                    }
                    Some(pb) if *pb != want => {
                        let (x, y) = if d >= &BigRational::zero() {
                            (&a, b)
                        } else {
                            (b, &a)
                        };
                        let gap =
                            |p: &BigRational, q: &BigRational| Weight::new((p - q).abs()).unwrap();
                        return Err(MergeError::WeightSumMismatch(
                            name(x),
                            name(y),
                            gap(&want, &pa),
                            gap(pb, &pa),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    if groups > 1 {
        return Err(MergeError::Disconnected(groups));
    }
    let mut indeg: BTreeMap<S, usize> = adj.keys().map(|s| (s.clone(), 0)).collect();
    for bs in after.values() {
        for b in bs {
            *indeg.get_mut(b).unwrap() += 1;
        }
    }
    let mut ready: BTreeSet<(BigRational, S)> = indeg
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(s, _)| (pos[s].clone(), s.clone()))
        .collect();
    let mut order: Vec<S> = Vec::with_capacity(adj.len());
    while let Some((_, s)) = ready.pop_first() {
        for b in &after[&s] {
            let d = indeg.get_mut(b).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert((pos[b].clone(), b.clone()));
            }
        }
        order.push(s);
    }
    if order.len() < adj.len() {
        let stuck: Vec<&S> = indeg
            .iter()
            .filter(|(s, _)| !order.contains(s))
            .map(|(s, _)| s)
            .take(2)
            .collect();
        return Err(MergeError::CommonOrderMismatch(
            name(stuck[0]),
            name(stuck[stuck.len() - 1]),
        ));
    }
    let steps = order
        .windows(2)
        .map(|p| {
            (
                Weight::new(&pos[&p[1]] - &pos[&p[0]]).expect("order follows positions"),
                p[1].clone(),
            )
        })
        .collect();
    Ok(LadderList::headed(order[0].clone(), steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u64) -> Weight {
        Weight::from_int(n)
    }

    fn hl(items: &[(u64, &'static str)]) -> LadderList<&'static str> {
        LadderList::headless(items.iter().map(|&(n, s)| (w(n), s)).collect())
    }

    fn hd(head: &'static str, items: &[(u64, &'static str)]) -> LadderList<&'static str> {
        LadderList::headed(head, items.iter().map(|&(n, s)| (w(n), s)).collect())
    }

    #[test]
    fn free_merge_examples() {
        let x = hl(&[(2, "x1"), (1, "x2")]);
        let y = hl(&[(3, "y1")]);
        let z = free_merge(&x, &y).unwrap();
        assert_eq!(z, hl(&[(2, "x1"), (1, "y1"), (0, "x2")]));
        check_free_merge(&x, &y, &z).unwrap();
        assert_eq!(free_merge(&x, &hl(&[])).unwrap(), x);
        // Ties take from y.
        let z = free_merge(&hl(&[(1, "x1")]), &hl(&[(1, "y1")])).unwrap();
        assert_eq!(z, hl(&[(1, "y1"), (0, "x1")]));
        assert!(matches!(
            free_merge(&x, &hl(&[(1, "x1")])),
            Err(MergeError::OverlappingSymbols(_))
        ));
    }

    #[test]
    fn constrained_merge_examples() {
        let x = hd("x0", &[(2, "x1")]);
        let y = hd("x0", &[(1, "y1"), (1, "x1")]);
        let z = constrained_merge(&x, &y).unwrap();
        assert_eq!(z, hd("x0", &[(1, "y1"), (1, "x1")]));
        check_anchored_merge(&x, &y, &z).unwrap();
        let same = hd("x0", &[(1, "x1")]);
        assert_eq!(constrained_merge(&same, &same).unwrap(), same);
        assert!(matches!(
            constrained_merge(&x, &hd("x0", &[(3, "x1")])),
            Err(MergeError::TotalWeightMismatch(_, _))
        ));
    }

    #[test]
    fn general_merge_examples() {
        let z = general_merge(&hd("a", &[(1, "b")]), &hd("a", &[(1, "c"), (0, "b")])).unwrap();
        assert_eq!(z, hd("a", &[(1, "c"), (0, "b")]));
        assert!(matches!(
            general_merge(&hd("x0", &[(1, "x1")]), &hd("x0", &[(2, "x1")])),
            Err(MergeError::WeightSumMismatch(..))
        ));
        assert!(matches!(
            general_merge(&hd("a", &[(1, "b")]), &hd("b", &[(1, "a")])),
            Err(MergeError::CommonOrderMismatch(..))
        ));
    }

    #[test]
    fn general_merge_with_heads_and_tails() {
        let x = hd("p", &[(2, "a"), (1, "q"), (1, "b"), (3, "r")]);
        let y = hd("s", &[(1, "a"), (2, "b"), (1, "t")]);
        let z = general_merge(&x, &y).unwrap();
        check_anchored_merge(&x, &y, &z).unwrap();
        assert_eq!(
            z,
            hd(
                "p",
                &[(1, "s"), (1, "a"), (1, "q"), (1, "b"), (1, "t"), (2, "r")]
            )
        );
    }

    #[test]
    fn disjoint_general_merge_is_a_free_merge_from_a_common_start() {
        let x = hd("a", &[(2, "b")]);
        let y = hd("c", &[(1, "d")]);
        let z = general_merge(&x, &y).unwrap();
        check_anchored_merge(&x, &y, &z).unwrap();
        assert_eq!(z, hd("c", &[(0, "a"), (1, "d"), (1, "b")]));
    }

    #[test]
    fn block_normal_form_ignores_order_inside_zero_runs() {
        let a = hd("a", &[(0, "b"), (2, "c")]);
        let b = hd("b", &[(0, "a"), (2, "c")]);
        assert_eq!(block_normal_form(&a), block_normal_form(&b));
        assert_ne!(
            block_normal_form(&a),
            block_normal_form(&hd("a", &[(2, "b"), (0, "c")]))
        );
    }
}
