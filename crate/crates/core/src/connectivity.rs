//! Connectedness of sublocales, separation notions, components and the
//! continuum / region / simple classifications.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::ElemSet;
use crate::frame::ElementId;
use crate::sublocale::{Locale, Sublocale, SublocaleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectivityMethod {
    /// No cover by two closed sublocales with void overlap on `S` and
    /// non-void traces on both.
    ClosedCover,
    /// No clopen `T` of `S` with `∅ ≠ T ≠ S`.
    Clopen,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("frame is not locally connected; open components need the general search")]
    NotLocallyConnected,
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
}

/// Components of a parent sublocale, ordered by their smallest non-top
/// member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSet {
    pub parent: Sublocale,
    pub components: Vec<Sublocale>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SublocaleFlags {
    pub is_open: bool,
    pub is_closed: bool,
    pub is_continuum: bool,
    pub is_region: bool,
    pub is_simple: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Locale {
    /// Connectedness by the closed-cover definition. The void sublocale is
    /// connected.
    pub fn is_connected(&self, s: Sublocale) -> bool {
        self.closed_split(s).is_none()
    }

    pub fn is_connected_by(&self, s: Sublocale, method: ConnectivityMethod) -> bool {
        match method {
            ConnectivityMethod::ClosedCover => self.is_connected(s),
            ConnectivityMethod::Clopen => self.proper_clopen(s).is_none(),
        }
    }

    /// A pair `(a, b)` with `S ⊆ c(a) ∨ c(b)`, `S ∩ c(a) ∩ c(b) = ∅` and both
    /// `S ∩ c(a)`, `S ∩ c(b)` non-void; first in `(a, b)` order.
    pub fn closed_split(&self, s: Sublocale) -> Option<(ElementId, ElementId)> {
        let n = self.len();
        let top = ElemSet::singleton(self.top_ix());
        let nonvoid: Vec<bool> = (0..n)
            .map(|a| self.up_ix(a).intersection(s.members()) != top)
            .collect();
        for a in (0..n).filter(|&a| nonvoid[a]) {
            for b in (0..n).filter(|&b| nonvoid[b]) {
                // c(a) ∨ c(b) = c(a ∧ b) and c(a) ∩ c(b) = c(a ∨ b)
                if s.members().is_subset(self.up_ix(self.meet_ix(a, b)))
                    && self.up_ix(self.join_ix(a, b)).intersection(s.members()) == top
                {
                    return Some((ElementId(a), ElementId(b)));
                }
            }
        }
        None
    }

    /// A clopen `T = o(u) ∩ S = c(v) ∩ S` of `S` with `∅ ≠ T ≠ S`.
    pub fn proper_clopen(&self, s: Sublocale) -> Option<Sublocale> {
        let n = self.len();
        for u in 0..n {
            let t = Sublocale::from_members_unchecked(self.open_ix(u).intersection(s.members()));
            if self.is_void(t) || t == s {
                continue;
            }
            if (0..n).any(|v| self.up_ix(v).intersection(s.members()) == t.members()) {
                return Some(t);
            }
        }
        None
    }

    /// Connectedness through decompositions `S = P ∨ Q` into separated
    /// sublocales, with `P`, `Q` ranging over the enumerated lattice.
    pub fn is_connected_by_separated_split(&self, s: Sublocale) -> Result<bool, SublocaleError> {
        let inside: Vec<Sublocale> = self
            .sublocales()?
            .iter()
            .copied()
            .filter(|p| p.is_subset(s) && !self.is_void(*p))
            .collect();
        for (i, &p) in inside.iter().enumerate() {
            for &q in &inside[i..] {
                if self.are_separated(p, q) && self.join(p, q) == s {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Connectedness of `E` as a sublocale of `S`, using only the closed
    /// sublocales `c_S(u) = {x ∈ S : u ≤ x}` for `u ∈ S`.
    pub fn is_connected_within(&self, e: Sublocale, s: Sublocale) -> Result<bool, SublocaleError> {
        if !e.is_subset(s) {
            return Err(SublocaleError::NotASubset {
                inner: e.members(),
                outer: s.members(),
            });
        }
        let relative_closed: Vec<Sublocale> = s
            .members()
            .iter()
            .map(|u| Sublocale::from_members_unchecked(self.up_ix(u).intersection(s.members())))
            .collect();
        for &a in &relative_closed {
            for &b in &relative_closed {
                if e.is_subset(self.join(a, b))
                    && !self.meets(e, a.intersect(b))
                    && self.meets(e, a)
                    && self.meets(e, b)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn are_separated(&self, p: Sublocale, q: Sublocale) -> bool {
        !self.meets(self.closure(p), q) && !self.meets(p, self.closure(q))
    }

    /// `Some((u, v))` with `u ∧ v = 0`, `S ⊆ o(u)`, `T ⊆ o(v)`.
    pub fn normal_separation(&self, s: Sublocale, t: Sublocale) -> Option<(ElementId, ElementId)> {
        let n = self.len();
        let around = |x: Sublocale| -> Vec<usize> {
            (0..n)
                .filter(|&u| x.members().is_subset(self.open_ix(u)))
                .collect()
        };
        let (us, vs) = (around(s), around(t));
        for &u in &us {
            for &v in &vs {
                if self.meet_ix(u, v) == self.bottom_ix() {
                    return Some((ElementId(u), ElementId(v)));
                }
            }
        }
        None
    }

    pub fn are_normally_separated(&self, s: Sublocale, t: Sublocale) -> bool {
        self.normal_separation(s, t).is_some()
    }

    /// No decomposition `C = S ∨ T` into normally separated, non-void parts.
    pub fn is_normally_connected(&self, c: Sublocale) -> Result<bool, SublocaleError> {
        let inside: Vec<Sublocale> = self
            .sublocales()?
            .iter()
            .copied()
            .filter(|p| p.is_subset(c) && !self.is_void(*p))
            .collect();
        for (i, &s) in inside.iter().enumerate() {
            for &t in &inside[i..] {
                if self.join(s, t) == c && self.are_normally_separated(s, t) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Components of `o(u)` in a locally connected frame: overlapping
    /// connected elements below `u` are merged and each class contributes
    /// the open sublocale of its join.
    pub fn components_of_open(&self, u: ElementId) -> Result<ComponentSet, ConnectivityError> {
        if !self.flags().locally_connected {
            return Err(ConnectivityError::NotLocallyConnected);
        }
        let bottom = self.bottom_ix();
        let pieces: Vec<usize> = self
            .downset(u)
            .iter()
            .filter(|&v| v != bottom && self.is_connected_element(ElementId(v)))
            .collect();
        let mut uf = UnionFind::new(pieces.len());
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if self.meet_ix(pieces[i], pieces[j]) != bottom {
                    uf.union(i, j);
                }
            }
        }
        let mut classes: Vec<(usize, usize)> = Vec::new();
        for i in 0..pieces.len() {
            let root = uf.find(i);
            match classes.iter_mut().find(|(r, _)| *r == root) {
                Some((_, j)) => *j = self.join_ix(*j, pieces[i]),
                None => classes.push((root, pieces[i])),
            }
        }
        let components = classes
            .into_iter()
            .map(|(_, j)| self.open(ElementId(j)))
            .collect();
        Ok(self.component_set(self.open(u), components))
    }

    /// Components by direct search over the enumerated lattice.
    pub fn components_general(&self, t: Sublocale) -> Result<ComponentSet, SublocaleError> {
        let connected: Vec<Sublocale> = self
            .sublocales()?
            .iter()
            .copied()
            .filter(|&s| s.is_subset(t) && !self.is_void(s) && self.is_connected(s))
            .collect();
        let components = connected
            .iter()
            .copied()
            .filter(|&d| {
                connected
                    .iter()
                    .all(|&s| !self.meets(s, d) || s.is_subset(d))
            })
            .collect();
        Ok(self.component_set(t, components))
    }

    /// Components of `o(u)`: the element-merging route when the frame is
    /// locally connected, the lattice search otherwise.
    pub fn components_of(&self, u: ElementId) -> Result<ComponentSet, SublocaleError> {
        match self.components_of_open(u) {
            Ok(c) => Ok(c),
            Err(ConnectivityError::NotLocallyConnected) => self.components_general(self.open(u)),
            Err(ConnectivityError::Sublocale(e)) => Err(e),
        }
    }

    /// Maximality check: `d` is a non-void connected sublocale of `t` that
    /// absorbs every connected sublocale of `t` meeting it.
    pub fn is_component_of(&self, d: Sublocale, t: Sublocale) -> Result<bool, SublocaleError> {
        if !d.is_subset(t) || self.is_void(d) || !self.is_connected(d) {
            return Ok(false);
        }
        Ok(self
            .sublocales()?
            .iter()
            .filter(|&&s| s.is_subset(t) && self.is_connected(s) && self.meets(s, d))
            .all(|&s| s.is_subset(d)))
    }

    fn component_set(&self, parent: Sublocale, mut components: Vec<Sublocale>) -> ComponentSet {
        let top = self.top_ix();
        components.sort_by_key(|c| (c.members().without(top).first(), c.members()));
        ComponentSet { parent, components }
    }

    /// Whether `S` has a complement in the sublocale lattice, tested against
    /// the candidate `L ∖ S`.
    pub fn has_complement(&self, s: Sublocale) -> bool {
        let c = self.complement(s);
        self.is_void(s.intersect(c)) && self.join(s, c) == self.full()
    }

    pub fn is_continuum(&self, s: Sublocale) -> bool {
        self.is_closed(s) && !self.is_void(s) && self.is_connected(s)
    }

    pub fn is_region(&self, s: Sublocale) -> bool {
        self.as_open(s).is_some() && !self.is_void(s) && self.is_connected(s)
    }

    pub fn is_simple(&self, s: Sublocale) -> bool {
        self.has_complement(s) && self.is_connected(s) && self.is_connected(self.complement(s))
    }

    pub fn classify_sublocale(&self, s: Sublocale) -> SublocaleFlags {
        SublocaleFlags {
            is_open: self.as_open(s).is_some(),
            is_closed: self.is_closed(s),
            is_continuum: self.is_continuum(s),
            is_region: self.is_region(s),
            is_simple: self.is_simple(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FiniteFrame;

    fn sie() -> Locale {
        Locale::new(FiniteFrame::build(3, &[(0, 1), (1, 2)]).unwrap())
    }

    fn b4() -> Locale {
        Locale::new(FiniteFrame::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
    }

    #[test]
    fn basic_connectedness() {
        let l = b4();
        assert!(l.is_connected(l.void()));
        assert!(!l.is_connected(l.full()));
        assert_eq!(
            l.proper_clopen(l.full()).map(|t| t.members().len()),
            Some(2)
        );
        let s = sie();
        assert!(s.is_connected(s.closed(ElementId(1))));
        assert!(s.is_connected_by(s.full(), ConnectivityMethod::Clopen));
    }

    #[test]
    fn separation_notions_in_b4() {
        let l = b4();
        let (p, q) = (ElementId(1), ElementId(2));
        assert!(l.are_separated(l.void(), l.full()));
        assert!(l.are_separated(l.open(p), l.open(q)));
        assert!(l.are_normally_separated(l.closed(p), l.closed(q)));
        assert_eq!(l.open(q), l.closed(p));
        assert!(!l.is_normally_connected(l.full()).unwrap());
        assert!(l.is_normally_connected(l.void()).unwrap());
        let s = sie();
        assert!(s.is_normally_connected(s.closed(ElementId(1))).unwrap());
    }

    #[test]
    fn components() {
        let l = b4();
        let comps = l.components_of_open(l.top()).unwrap();
        assert_eq!(
            comps.components,
            vec![l.open(ElementId(2)), l.open(ElementId(1))]
        );
        assert_eq!(l.components_general(l.full()).unwrap(), comps);
        assert!(l
            .components_general(l.void())
            .unwrap()
            .components
            .is_empty());
        let s = sie();
        let one = s.components_of_open(s.top()).unwrap();
        assert_eq!(one.components, vec![s.full()]);
        let c = s.closed(ElementId(1));
        assert_eq!(s.components_general(c).unwrap().components, vec![c]);
    }

    #[test]
    fn classification() {
        let s = sie();
        let a = ElementId(1);
        assert!(!s.classify_sublocale(s.void()).is_continuum);
        assert!(s.classify_sublocale(s.closed(a)).is_continuum);
        assert!(s.classify_sublocale(s.open(a)).is_region);
        let l = b4();
        let f = l.classify_sublocale(l.closed(ElementId(1)));
        assert!(f.is_simple && f.is_open && f.is_closed);
    }

    #[test]
    fn relative_connectedness_matches() {
        let l = b4();
        let e = l.closed(ElementId(1));
        assert!(l.is_connected_within(e, l.full()).unwrap());
        assert!(!l.is_connected_within(l.full(), l.full()).unwrap());
        assert!(l.is_connected_within(l.full(), e).is_err());
    }
}
