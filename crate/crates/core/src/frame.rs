//! Finite frames: validated finite distributive lattices with precomputed
//! meet, join and Heyting implication tables.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{ElemSet, MAX_BITS};

/// Index of an element of a [`FiniteFrame`]. Only meaningful relative to the
/// frame it was taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs at least one element")]
    Empty,
    #[error("frame has {0} elements; at most {MAX_BITS} are supported")]
    TooLarge(usize),
    #[error("order pair {pair} references element {index}, but n = {n}")]
    IndexOutOfRange { pair: usize, index: usize, n: usize },
    #[error("not a partial order: {a} <= {b} and {b} <= {a} with {a} != {b}")]
    NotAPartialOrder { a: usize, b: usize },
    #[error("not a lattice: elements {a} and {b} have no {kind:?}")]
    NotALattice { a: usize, b: usize, kind: BoundKind },
    #[error("not distributive: x={x}, y={y}, z={z} violate x∧(y∨z) = (x∧y)∨(x∧z)")]
    NotDistributive { x: usize, y: usize, z: usize },
}

/// Frame-level predicates reported by [`FiniteFrame::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrameFlags {
    pub connected: bool,
    pub locally_connected: bool,
    pub strongly_locally_connected: bool,
    pub normal: bool,
}

/// A finite frame. Immutable once built; every operation is a table lookup.
#[derive(Clone, Debug)]
pub struct FiniteFrame {
    n: usize,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    open: Vec<ElemSet>,
    bottom: usize,
    top: usize,
    primes: ElemSet,
    labels: Option<Vec<String>>,
}

impl FiniteFrame {
    /// Builds a frame on `n` elements from `i <= j` pairs. The
    /// reflexive-transitive closure of the pairs is taken first.
    pub fn build(n: usize, order_pairs: &[(usize, usize)]) -> Result<Self, FrameError> {
        if n == 0 {
            return Err(FrameError::Empty);
        }
        if n > MAX_BITS {
            return Err(FrameError::TooLarge(n));
        }
        let mut up = vec![ElemSet::EMPTY; n];
        for (i, s) in up.iter_mut().enumerate() {
            s.insert(i);
        }
        for (k, &(a, b)) in order_pairs.iter().enumerate() {
            for index in [a, b] {
                if index >= n {
                    return Err(FrameError::IndexOutOfRange { pair: k, index, n });
                }
            }
            up[a].insert(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(FrameError::NotAPartialOrder {
                        a: a.min(b),
                        b: a.max(b),
                    });
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for a in 0..n {
            for b in up[a].iter() {
                down[b].insert(a);
            }
        }

        let greatest_in = |set: ElemSet| set.iter().find(|&g| set.is_subset(down[g]));
        let least_in = |set: ElemSet| set.iter().find(|&g| set.is_subset(up[g]));

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m =
                    greatest_in(down[a].intersection(down[b])).ok_or(FrameError::NotALattice {
                        a,
                        b,
                        kind: BoundKind::Meet,
                    })?;
                let j = least_in(up[a].intersection(up[b])).ok_or(FrameError::NotALattice {
                    a,
                    b,
                    kind: BoundKind::Join,
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        let all = ElemSet::full(n);
        // Pairwise bounds exist, so a finite lattice has both extremes.
        let bottom = greatest_in(all.iter().fold(all, |acc, a| acc.intersection(down[a]))).unwrap();
        let top = least_in(all.iter().fold(all, |acc, a| acc.intersection(up[a]))).unwrap();

        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    let lhs = meet[x * n + join[y * n + z]];
                    let rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                    if lhs != rhs {
                        return Err(FrameError::NotDistributive { x, y, z });
                    }
                }
            }
        }

        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                imp[a * n + b] = (0..n)
                    .filter(|&x| up[meet[x * n + a]].contains(b))
                    .fold(bottom, |acc, x| join[acc * n + x]);
            }
        }

        let open = (0..n)
            .map(|a| (0..n).filter(|&x| imp[a * n + x] == x).collect())
            .collect();

        // Meet-irreducible elements other than top; in a distributive lattice
        // these are exactly the meet-prime elements.
        let primes = (0..n)
            .filter(|&p| p != top)
            .filter(|&p| {
                let strictly_above = up[p].without(p);
                let m = strictly_above.iter().fold(top, |acc, x| meet[acc * n + x]);
                m != p
            })
            .collect();

        Ok(FiniteFrame {
            n,
            up,
            down,
            meet,
            join,
            imp,
            open,
            bottom,
            top,
            primes,
            labels: None,
        })
    }

    /// Attaches human-readable element labels. Labels never influence any
    /// computation.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.n).map(ElementId)
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    pub fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }

    pub fn label(&self, a: ElementId) -> String {
        match &self.labels {
            Some(l) => l[a.0].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn element_by_label(&self, label: &str) -> Option<ElementId> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
            .map(ElementId)
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.0].contains(b.0)
    }

    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.meet[a.0 * self.n + b.0])
    }

    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.join[a.0 * self.n + b.0])
    }

    /// Heyting implication `a → b`, the largest `x` with `x ∧ a ≤ b`.
    pub fn implies(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.imp[a.0 * self.n + b.0])
    }

    pub fn pseudocomplement(&self, a: ElementId) -> ElementId {
        (0..self.n)
            .filter(|&x| self.meet[a.0 * self.n + x] == self.bottom)
            .fold(self.bottom(), |acc, x| self.join(acc, ElementId(x)))
    }

    /// Greatest lower bound (`Meet`) or least upper bound (`Join`) of a
    /// subset. The empty meet is top and the empty join is bottom.
    pub fn bound(&self, kind: BoundKind, subset: ElemSet) -> ElementId {
        match kind {
            BoundKind::Meet => ElementId(self.meet_of(subset)),
            BoundKind::Join => ElementId(self.join_of(subset)),
        }
    }

    /// `{b : a ≤ b}`, the closed sublocale of `a` as a member set.
    pub fn upset(&self, a: ElementId) -> ElemSet {
        self.up[a.0]
    }

    /// `{b : b ≤ a}`.
    pub fn downset(&self, a: ElementId) -> ElemSet {
        self.down[a.0]
    }

    /// `{x : a → x = x}`, the open sublocale of `a` as a member set.
    pub fn open_members(&self, a: ElementId) -> ElemSet {
        self.open[a.0]
    }

    /// Meet-irreducible elements other than top.
    pub fn primes(&self) -> ElemSet {
        self.primes
    }

    pub fn is_connected_element(&self, x: ElementId) -> bool {
        let below = self.down[x.0];
        for b in below.iter() {
            for c in below.iter() {
                if b != self.bottom
                    && c != self.bottom
                    && self.join_ix(b, c) == x.0
                    && self.meet_ix(b, c) == self.bottom
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn connected_elements(&self) -> ElemSet {
        self.elements()
            .filter(|&x| self.is_connected_element(x))
            .map(|x| x.0)
            .collect()
    }

    pub fn classify(&self) -> FrameFlags {
        let conn = self.connected_elements();
        let connected = conn.contains(self.top);
        let locally_connected = self
            .elements()
            .all(|a| self.join_of(self.down[a.0].intersection(conn)) == a.0);
        let strongly_locally_connected = (0..self.n).all(|u| {
            let witnesses = self.down[u].intersection(conn);
            self.open[u]
                .iter()
                .all(|x| witnesses.iter().any(|v| self.open[v].contains(x)))
        });
        let normal = (0..self.n).all(|a| {
            (0..self.n)
                .filter(|&b| self.join_ix(a, b) == self.top)
                .all(|b| {
                    (0..self.n).any(|u| {
                        self.join_ix(a, u) == self.top
                            && (0..self.n).any(|v| {
                                self.meet_ix(u, v) == self.bottom && self.join_ix(b, v) == self.top
                            })
                    })
                })
        });
        FrameFlags {
            connected,
            locally_connected,
            strongly_locally_connected,
            normal,
        }
    }

    #[inline]
    pub(crate) fn meet_ix(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub(crate) fn join_ix(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    #[inline]
    pub(crate) fn imp_ix(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.n + b]
    }

    #[inline]
    pub(crate) fn open_ix(&self, a: usize) -> ElemSet {
        self.open[a]
    }

    #[inline]
    pub(crate) fn up_ix(&self, a: usize) -> ElemSet {
        self.up[a]
    }

    pub(crate) fn top_ix(&self) -> usize {
        self.top
    }

    pub(crate) fn bottom_ix(&self) -> usize {
        self.bottom
    }

    pub(crate) fn meet_of(&self, s: ElemSet) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet_ix(acc, x))
    }

    pub(crate) fn join_of(&self, s: ElemSet) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join_ix(acc, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FiniteFrame {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteFrame::build(n, &pairs).unwrap()
    }

    // 0 < p, q < 1
    fn b4() -> FiniteFrame {
        FiniteFrame::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn two_element_chain() {
        let f = chain(2);
        assert_eq!(f.bottom(), ElementId(0));
        assert_eq!(f.top(), ElementId(1));
        assert_eq!(f.primes().to_vec(), vec![0]);
    }

    #[test]
    fn diamond_m3_is_rejected() {
        let err =
            FiniteFrame::build(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap_err();
        assert!(matches!(err, FrameError::NotDistributive { .. }), "{err:?}");
    }

    #[test]
    fn pentagon_n5_is_rejected() {
        // 0 < a < b < 1, 0 < c < 1
        let err = FiniteFrame::build(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap_err();
        assert!(matches!(err, FrameError::NotDistributive { .. }));
    }

    #[test]
    fn cycle_is_not_a_partial_order() {
        let err = FiniteFrame::build(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, FrameError::NotAPartialOrder { a: 0, b: 1 });
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let err = FiniteFrame::build(2, &[]).unwrap_err();
        assert!(matches!(err, FrameError::NotALattice { .. }));
        // two maximal elements above a bottom
        let err = FiniteFrame::build(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(
            err,
            FrameError::NotALattice {
                kind: BoundKind::Join,
                ..
            }
        ));
    }

    #[test]
    fn bad_index_and_empty() {
        assert_eq!(FiniteFrame::build(0, &[]).unwrap_err(), FrameError::Empty);
        assert!(matches!(
            FiniteFrame::build(2, &[(0, 2)]).unwrap_err(),
            FrameError::IndexOutOfRange { index: 2, .. }
        ));
        assert_eq!(
            FiniteFrame::build(65, &[]).unwrap_err(),
            FrameError::TooLarge(65)
        );
    }

    #[test]
    fn duplicate_and_transitive_pairs_are_accepted() {
        let f = FiniteFrame::build(3, &[(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(f.leq(ElementId(0), ElementId(2)));
        assert_eq!(f.top(), ElementId(2));
    }

    #[test]
    fn empty_bounds_and_complement_pair() {
        let f = b4();
        assert_eq!(f.bound(BoundKind::Join, ElemSet::EMPTY), f.bottom());
        assert_eq!(f.bound(BoundKind::Meet, ElemSet::EMPTY), f.top());
        let pq: ElemSet = [1, 2].into_iter().collect();
        assert_eq!(f.bound(BoundKind::Join, pq), ElementId(3));
        assert_eq!(f.bound(BoundKind::Meet, pq), ElementId(0));
    }

    #[test]
    fn implication_and_pseudocomplement_extremes() {
        let f = b4();
        for a in f.elements() {
            assert_eq!(f.implies(a, a), f.top());
            assert_eq!(f.implies(f.top(), a), a);
            assert_eq!(f.pseudocomplement(a), f.implies(a, f.bottom()));
        }
        assert_eq!(f.pseudocomplement(f.bottom()), f.top());
        assert_eq!(f.pseudocomplement(f.top()), f.bottom());
        assert_eq!(f.pseudocomplement(ElementId(1)), ElementId(2));
    }

    #[test]
    fn connected_elements() {
        let f = b4();
        assert!(f.is_connected_element(f.bottom()));
        assert!(!f.is_connected_element(f.top()));
        assert!(f.is_connected_element(ElementId(1)));
        assert!(!f.classify().connected);
        let sie = chain(3);
        let flags = sie.classify();
        assert!(flags.connected && flags.locally_connected && flags.normal);
    }

    #[test]
    fn single_element_frame() {
        let f = FiniteFrame::build(1, &[]).unwrap();
        assert_eq!(f.top(), f.bottom());
        assert!(f.primes().is_empty());
        assert!(f.classify().connected);
    }
}
