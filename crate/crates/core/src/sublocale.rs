//! Sublocales of a finite frame and the calculus on them: open and closed
//! sublocales, joins, closure, interior, boundary, difference and the
//! enumerated sublocale lattice.

use std::ops::Deref;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::ElemSet;
use crate::frame::{ElementId, FiniteFrame, FrameFlags};

/// Default largest frame (in elements) whose subsets are brute-forced when
/// enumerating the sublocale lattice.
pub const DEFAULT_ENUM_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SublocaleError {
    #[error("sublocale enumeration needs 2^{elements} subsets; cap is {cap} elements")]
    EnumerationCapExceeded { elements: usize, cap: usize },
    #[error("{inner:?} is not contained in {outer:?}")]
    NotASubset { inner: ElemSet, outer: ElemSet },
}

/// A sublocale, stored as its member set. Always contains top; the void
/// sublocale is exactly `{1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sublocale(ElemSet);

impl Sublocale {
    /// Wraps a member set without checking the sublocale conditions.
    pub fn from_members_unchecked(members: ElemSet) -> Self {
        Sublocale(members)
    }

    pub fn members(self) -> ElemSet {
        self.0
    }

    pub fn contains(self, x: ElementId) -> bool {
        self.0.contains(x.0)
    }

    pub fn is_subset(self, other: Sublocale) -> bool {
        self.0.is_subset(other.0)
    }

    /// Meet in the sublocale lattice, which is plain intersection.
    pub fn intersect(self, other: Sublocale) -> Sublocale {
        Sublocale(self.0.intersection(other.0))
    }
}

impl Serialize for Sublocale {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SublocaleKind {
    Open,
    Closed,
}

/// The ambient locale: a frame together with its (lazily enumerated)
/// sublocale lattice.
pub struct Locale {
    frame: FiniteFrame,
    enum_cap: usize,
    lattice: OnceLock<Result<Vec<Sublocale>, SublocaleError>>,
    flags: OnceLock<FrameFlags>,
}

impl Deref for Locale {
    type Target = FiniteFrame;

    fn deref(&self) -> &FiniteFrame {
        &self.frame
    }
}

impl Locale {
    pub fn new(frame: FiniteFrame) -> Self {
        Self::with_enum_cap(frame, DEFAULT_ENUM_CAP)
    }

    pub fn with_enum_cap(frame: FiniteFrame, enum_cap: usize) -> Self {
        Locale {
            frame,
            enum_cap,
            lattice: OnceLock::new(),
            flags: OnceLock::new(),
        }
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    /// Frame-level predicates, computed once.
    pub fn flags(&self) -> FrameFlags {
        *self.flags.get_or_init(|| self.frame.classify())
    }

    pub fn full(&self) -> Sublocale {
        Sublocale(self.all())
    }

    pub fn void(&self) -> Sublocale {
        Sublocale(ElemSet::singleton(self.top_ix()))
    }

    pub fn is_void(&self, s: Sublocale) -> bool {
        s.0 == ElemSet::singleton(self.top_ix())
    }

    /// `a ∩ b ≠ ∅` in the sublocale sense: the intersection is strictly
    /// larger than `{1}`.
    pub fn meets(&self, a: Sublocale, b: Sublocale) -> bool {
        !self.is_void(a.intersect(b))
    }

    /// Checks the sublocale conditions: contains top, closed under meets and
    /// under `x → s` for every frame element `x`.
    pub fn is_sublocale(&self, subset: ElemSet) -> bool {
        let f = &self.frame;
        if !subset.is_subset(f.all()) || !subset.contains(f.top_ix()) {
            return false;
        }
        for s in subset.iter() {
            if !(0..f.len()).all(|x| subset.contains(f.imp_ix(x, s))) {
                return false;
            }
            for t in subset.iter().filter(|&t| t > s) {
                if !subset.contains(f.meet_ix(s, t)) {
                    return false;
                }
            }
        }
        true
    }

    /// Least sublocale containing `seed`.
    pub fn generate(&self, seed: ElemSet) -> Sublocale {
        let f = &self.frame;
        let mut s = seed.intersection(f.all()).with(f.top_ix());
        loop {
            let mut next = s;
            for a in s.iter() {
                for x in 0..f.len() {
                    next.insert(f.imp_ix(x, a));
                }
                for b in s.iter() {
                    next.insert(f.meet_ix(a, b));
                }
            }
            if next == s {
                return Sublocale(s);
            }
            s = next;
        }
    }

    pub fn open(&self, a: ElementId) -> Sublocale {
        Sublocale(self.open_ix(a.0))
    }

    pub fn closed(&self, a: ElementId) -> Sublocale {
        Sublocale(self.up_ix(a.0))
    }

    pub fn frame_sublocale(&self, kind: SublocaleKind, a: ElementId) -> Sublocale {
        match kind {
            SublocaleKind::Open => self.open(a),
            SublocaleKind::Closed => self.closed(a),
        }
    }

    /// Join of sublocales: all meets of subsets of the union.
    pub fn join_all(&self, parts: &[Sublocale]) -> Sublocale {
        let union = parts
            .iter()
            .fold(ElemSet::singleton(self.top_ix()), |acc, p| acc.union(p.0));
        Sublocale(self.meet_closure(union))
    }

    pub fn join(&self, a: Sublocale, b: Sublocale) -> Sublocale {
        Sublocale(self.meet_closure(a.0.union(b.0).with(self.top_ix())))
    }

    fn meet_closure(&self, mut s: ElemSet) -> ElemSet {
        let f = &self.frame;
        let mut frontier = s;
        while !frontier.is_empty() {
            let mut added = ElemSet::EMPTY;
            for a in frontier.iter() {
                for b in s.iter() {
                    let m = f.meet_ix(a, b);
                    if !s.contains(m) {
                        added.insert(m);
                    }
                }
            }
            s = s.union(added);
            frontier = added;
        }
        s
    }

    /// `⋀S` as an element: the bottom of the sublocale.
    pub fn bottom_of(&self, s: Sublocale) -> ElementId {
        ElementId(self.meet_of(s.0))
    }

    /// `↑(⋀S)`.
    pub fn closure(&self, s: Sublocale) -> Sublocale {
        self.closed(self.bottom_of(s))
    }

    /// `⋁{u : o(u) ⊆ S}`; its open sublocale is the interior of `S`.
    pub fn interior_element(&self, s: Sublocale) -> ElementId {
        let us: ElemSet = (0..self.len())
            .filter(|&u| self.open_ix(u).is_subset(s.0))
            .collect();
        ElementId(self.join_of(us))
    }

    pub fn interior(&self, s: Sublocale) -> Sublocale {
        self.open(self.interior_element(s))
    }

    /// `closure(S) ∩ c(u₀)` where `o(u₀)` is the interior; the closed
    /// sublocale `c(u₀)` is the complement of the interior.
    pub fn boundary(&self, s: Sublocale) -> Sublocale {
        self.closure(s)
            .intersect(self.closed(self.interior_element(s)))
    }

    /// Closure of `t` inside the sublocale `s`, which is `closure(t) ∩ s`.
    pub fn relative_closure(
        &self,
        t: Sublocale,
        s: Sublocale,
    ) -> Result<Sublocale, SublocaleError> {
        if !t.is_subset(s) {
            return Err(SublocaleError::NotASubset {
                inner: t.0,
                outer: s.0,
            });
        }
        Ok(self.closure(t).intersect(s))
    }

    /// `A ∖ B`, the least `C` with `A ⊆ B ∨ C`.
    ///
    /// Computed from meet-irreducibles: a sublocale of a finite frame is the
    /// set of meets of the primes it contains, so `A ∖ B` is generated by the
    /// primes of `A` outside `B`. [`Locale::difference_by_enumeration`] is
    /// the reference this is tested against.
    pub fn difference(&self, a: Sublocale, b: Sublocale) -> Sublocale {
        self.generate(self.primes().intersection(a.0).minus(b.0))
    }

    /// `⋀{C ∈ S(L) : A ⊆ B ∨ C}` over the enumerated sublocale lattice.
    pub fn difference_by_enumeration(
        &self,
        a: Sublocale,
        b: Sublocale,
    ) -> Result<Sublocale, SublocaleError> {
        let lattice = self.sublocales()?;
        Ok(lattice
            .iter()
            .filter(|&&c| a.is_subset(self.join(b, c)))
            .fold(self.full(), |acc, &c| acc.intersect(c)))
    }

    /// `L ∖ S`.
    pub fn complement(&self, s: Sublocale) -> Sublocale {
        self.difference(self.full(), s)
    }

    /// The supplement `⋀{T : T ∨ S = L}`, evaluated over the enumerated
    /// lattice.
    pub fn supplement(&self, s: Sublocale) -> Result<Sublocale, SublocaleError> {
        self.difference_by_enumeration(self.full(), s)
    }

    pub fn is_complemented(&self, s: Sublocale) -> Result<bool, SublocaleError> {
        Ok(self.is_void(s.intersect(self.supplement(s)?)))
    }

    /// The sublocale lattice, enumerated once and cached.
    pub fn sublocales(&self) -> Result<&[Sublocale], SublocaleError> {
        self.lattice
            .get_or_init(|| enumerate_sublocales(&self.frame, self.enum_cap))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `Some(u)` if `S = o(u)`.
    pub fn as_open(&self, s: Sublocale) -> Option<ElementId> {
        (0..self.len())
            .find(|&u| self.open_ix(u) == s.0)
            .map(ElementId)
    }

    pub fn is_closed(&self, s: Sublocale) -> bool {
        self.closure(s) == s
    }
}

/// All sublocales of `frame` in canonical (numeric bitset) order, found by
/// testing every subset that contains top.
pub fn enumerate_sublocales(
    frame: &FiniteFrame,
    cap: usize,
) -> Result<Vec<Sublocale>, SublocaleError> {
    let n = frame.len();
    if n > cap {
        return Err(SublocaleError::EnumerationCapExceeded { elements: n, cap });
    }
    let top = frame.top_ix();
    let others: Vec<usize> = (0..n).filter(|&i| i != top).collect();
    // implication images: every x → s must lie in the sublocale with s
    let images: Vec<ElemSet> = (0..n)
        .map(|s| (0..n).map(|x| frame.imp_ix(x, s)).collect())
        .collect();
    let check = |mask: u64| -> Option<Sublocale> {
        let mut set = ElemSet::singleton(top);
        for (k, &e) in others.iter().enumerate() {
            if mask >> k & 1 == 1 {
                set.insert(e);
            }
        }
        for s in set.iter() {
            if !images[s].is_subset(set) {
                return None;
            }
            for t in set.iter().filter(|&t| t > s) {
                if !set.contains(frame.meet_ix(s, t)) {
                    return None;
                }
            }
        }
        Some(Sublocale(set))
    };
    let count = 1u64 << others.len();
    let mut found: Vec<Sublocale> = if n >= 14 {
        (0..count).into_par_iter().filter_map(check).collect()
    } else {
        (0..count).filter_map(check).collect()
    };
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    // SIE: 0 < a < 1, indices 0, 1, 2
    fn sie() -> Locale {
        Locale::new(FiniteFrame::build(3, &[(0, 1), (1, 2)]).unwrap())
    }

    // B4: 0 < p, q < 1, indices 0, 1, 2, 3
    fn b4() -> Locale {
        Locale::new(FiniteFrame::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
    }

    #[test]
    fn sublocale_checks() {
        let l = sie();
        assert!(l.is_sublocale(set(&[2])));
        assert!(l.is_sublocale(set(&[0, 1, 2])));
        assert!(l.is_sublocale(set(&[0, 2])));
        assert!(!l.is_sublocale(set(&[0, 1])));
        // {0, a, 1} minus a: a → 0 = 0 stays, fine; but {a} alone misses top
        assert!(!l.is_sublocale(set(&[1])));
    }

    #[test]
    fn generation() {
        let l = sie();
        assert_eq!(l.generate(ElemSet::EMPTY), l.void());
        assert_eq!(l.generate(l.all()), l.full());
        assert_eq!(l.generate(set(&[0])).members(), set(&[0, 2]));
    }

    #[test]
    fn open_and_closed_extremes() {
        let l = sie();
        let (bot, top) = (l.bottom(), l.top());
        assert_eq!(l.closed(bot), l.full());
        assert_eq!(l.closed(top), l.void());
        assert_eq!(l.open(top), l.full());
        assert_eq!(l.open(bot), l.void());
        assert_eq!(l.closed(ElementId(1)).members(), set(&[1, 2]));
        assert_eq!(l.open(ElementId(1)).members(), set(&[0, 2]));
    }

    #[test]
    fn joins_in_b4() {
        let l = b4();
        let (p, q) = (ElementId(1), ElementId(2));
        assert_eq!(l.join(l.closed(p), l.closed(q)), l.full());
        assert_eq!(l.join(l.open(p), l.open(q)), l.full());
        let s = l.open(p);
        assert_eq!(l.join(s, l.void()), s);
    }

    #[test]
    fn closure_interior_boundary_in_sie() {
        let l = sie();
        let a = ElementId(1);
        assert_eq!(l.closure(l.void()), l.void());
        assert_eq!(l.boundary(l.full()), l.void());
        assert_eq!(l.closure(l.open(a)), l.full());
        assert_eq!(l.interior(l.closed(a)), l.open(l.bottom()));
        assert_eq!(l.boundary(l.closed(a)).members(), set(&[1, 2]));
    }

    #[test]
    fn differences() {
        let l = sie();
        let a = ElementId(1);
        assert_eq!(l.difference(l.full(), l.open(a)), l.closed(a));
        assert_eq!(l.difference(l.full(), l.void()), l.full());
        assert_eq!(l.supplement(l.open(a)).unwrap(), l.closed(a));
        assert!(l.is_complemented(l.open(a)).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let f2 = Locale::new(FiniteFrame::build(2, &[(0, 1)]).unwrap());
        assert_eq!(f2.sublocales().unwrap().len(), 2);
        let got: Vec<_> = sie()
            .sublocales()
            .unwrap()
            .iter()
            .map(|s| s.members())
            .collect();
        assert_eq!(
            got,
            vec![set(&[2]), set(&[0, 2]), set(&[1, 2]), set(&[0, 1, 2])]
        );
        let l = b4();
        let got: Vec<_> = l.sublocales().unwrap().to_vec();
        assert_eq!(
            got,
            vec![
                l.void(),
                l.closed(ElementId(1)),
                l.closed(ElementId(2)),
                l.full()
            ]
        );
    }

    #[test]
    fn enumeration_cap() {
        let l = Locale::with_enum_cap(FiniteFrame::build(3, &[(0, 1), (1, 2)]).unwrap(), 2);
        assert_eq!(
            l.sublocales().unwrap_err(),
            SublocaleError::EnumerationCapExceeded {
                elements: 3,
                cap: 2
            }
        );
        assert!(l.supplement(l.full()).is_err());
    }

    #[test]
    fn relative_closure() {
        let l = sie();
        let a = ElementId(1);
        let s = l.open(a);
        assert_eq!(l.relative_closure(s, l.full()).unwrap(), l.closure(s));
        assert_eq!(l.relative_closure(l.void(), s).unwrap(), l.void());
        assert_eq!(l.relative_closure(l.open(a), s).unwrap(), s);
        assert!(matches!(
            l.relative_closure(l.full(), s),
            Err(SublocaleError::NotASubset { .. })
        ));
    }
}
