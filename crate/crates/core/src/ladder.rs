//! Alternating symbol/weight lists `s_0, w_1, s_1, ..., w_k, s_k`.

use std::fmt;

use crate::weight::Weight;

/// A ladder list. `head` is `None` for the headless form `w_1, s_1, ..., w_k, s_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LadderList<S> {
    pub head: Option<S>,
    pub steps: Vec<(Weight, S)>,
}

impl<S: Clone> LadderList<S> {
    pub fn headed(head: S, steps: Vec<(Weight, S)>) -> Self {
        LadderList {
            head: Some(head),
            steps,
        }
    }

    pub fn headless(steps: Vec<(Weight, S)>) -> Self {
        LadderList { head: None, steps }
    }

    pub fn is_headless(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none() && self.steps.is_empty()
    }

    /// Symbols in list order.
    pub fn symbols(&self) -> Vec<S> {
        self.head
            .iter()
            .cloned()
            .chain(self.steps.iter().map(|(_, s)| s.clone()))
            .collect()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.steps.iter().map(|(w, _)| w)
    }

    pub fn total(&self) -> Weight {
        self.weights().sum()
    }

    pub fn first(&self) -> Option<&S> {
        self.head
            .as_ref()
            .or_else(|| self.steps.first().map(|(_, s)| s))
    }

    pub fn last(&self) -> Option<&S> {
        self.steps.last().map(|(_, s)| s).or(self.head.as_ref())
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&S) -> T) -> LadderList<T> {
        LadderList {
            head: self.head.as_ref().map(&f),
            steps: self.steps.iter().map(|(w, s)| (w.clone(), f(s))).collect(),
        }
    }

    /// The same ladder read from the other end. Headed lists only.
    pub fn reversed(&self) -> LadderList<S> {
        let syms = self.symbols();
        let Some(last) = syms.last().cloned() else {
            return self.clone();
        };
        assert!(self.head.is_some(), "reversing a headless list");
        let steps = (0..self.steps.len())
            .rev()
            .map(|i| (self.steps[i].0.clone(), syms[i].clone()))
            .collect();
        LadderList::headed(last, steps)
    }

    /// Sum of the weights strictly after position `a` up to and including position `b`,
    /// positions counted over `symbols()`.
    pub fn gap(&self, a: usize, b: usize) -> Weight {
        let off = usize::from(self.head.is_some());
        // Symbol at position p (p >= off) is steps[p - off]; its weight sits just before it.
        (a + 1..=b).map(|p| self.steps[p - off].0.clone()).sum()
    }
}

impl<S: fmt::Display> fmt::Display for LadderList<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
            first = false;
        }
        for (w, s) in &self.steps {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{w}, {s}")?;
            first = false;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u64) -> Weight {
        Weight::from_int(n)
    }

    #[test]
    fn reverse_and_gaps() {
        let l = LadderList::headed("a", vec![(w(1), "b"), (w(2), "c")]);
        assert_eq!(
            l.reversed(),
            LadderList::headed("c", vec![(w(2), "b"), (w(1), "a")])
        );
        assert_eq!(l.reversed().reversed(), l);
        assert_eq!(l.gap(0, 2), w(3));
        assert_eq!(l.gap(1, 2), w(2));
        let h = LadderList::headless(vec![(w(4), "x"), (w(5), "y")]);
        assert_eq!(h.gap(0, 1), w(5));
        assert_eq!(h.first(), Some(&"x"));
        assert_eq!(h.to_string(), "[4, x, 5, y]");
    }
}
