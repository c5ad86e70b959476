//! Exhaustive instantiation of the supporting lemmas on one finite locale.
//!
//! Every check is a finite statement about the enumerated sublocale
//! lattice. Checks whose hypotheses fail on the frame are recorded as
//! skipped rather than counted as passes.

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::frame::ElementId;
use crate::sublocale::{Locale, Sublocale, SublocaleError};
use crate::unicoherence::{check_property, CheckOptions, PropertyId};

/// Largest frame the suite is run on.
pub const LEMMA_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl LemmaOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub outcomes: Vec<LemmaOutcome>,
}

impl LemmaReport {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed()).count()
    }

    pub fn passed_count(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.skipped.is_none() && o.passed())
            .count()
    }

    pub fn skipped_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.skipped.is_some()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

struct Tally {
    outcome: LemmaOutcome,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            outcome: LemmaOutcome {
                name,
                checked: 0,
                failed: 0,
                first_failure: None,
                skipped: None,
            },
        }
    }

    fn skip(name: &'static str, why: &str) -> LemmaOutcome {
        let mut t = Tally::new(name);
        t.outcome.skipped = Some(why.to_string());
        t.outcome
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.outcome.checked += 1;
        if !ok {
            self.outcome.failed += 1;
            if self.outcome.first_failure.is_none() {
                self.outcome.first_failure = Some(describe());
            }
        }
    }

    fn done(self) -> LemmaOutcome {
        self.outcome
    }
}

/// Runs every lemma check. Frames above [`LEMMA_LIMIT`] elements get an
/// empty report.
pub fn run_lemma_suite(l: &Locale) -> Result<LemmaReport, SublocaleError> {
    if l.len() > LEMMA_LIMIT {
        return Ok(LemmaReport::default());
    }
    let subs: Vec<Sublocale> = l.sublocales()?.to_vec();
    let cx = Ctx::new(l, subs);
    let outcomes = vec![
        cx.reductions(),
        cx.closed_of_sub(),
        cx.closure_into_open(),
        cx.neigh_interior(),
        cx.neigh_boundary(),
        cx.boundary_diff(),
        cx.bd_inters(),
        cx.connected_char(),
        cx.diff_sep(),
        cx.connected_sub(),
        cx.closed_sub_connected(),
        cx.join_opens(),
        cx.join_int(),
        cx.coroll_join_int(),
        cx.join_connected(),
        cx.str_loc_con(),
        cx.component_boundary_inside(),
        cx.component_closure_meets(),
        cx.component_complement_split(),
        cx.continuum_between_disjoint(),
        cx.component_bd(),
        cx.comp_diff_simple(),
        cx.con_norm_con(),
        cx.bd_infinite_join(),
        cx.simple_bd(),
    ];
    Ok(LemmaReport { outcomes })
}

struct Ctx<'a> {
    l: &'a Locale,
    subs: Vec<Sublocale>,
    connected: Vec<bool>,
}

impl<'a> Ctx<'a> {
    fn new(l: &'a Locale, subs: Vec<Sublocale>) -> Self {
        let connected = subs.iter().map(|&s| l.is_connected(s)).collect();
        Ctx { l, subs, connected }
    }

    fn elems(&self) -> impl Iterator<Item = ElementId> {
        self.l.elements()
    }

    fn non_top(&self) -> impl Iterator<Item = ElementId> + '_ {
        let top = self.l.top();
        self.l.elements().filter(move |&x| x != top)
    }

    fn connected_subs(&self) -> impl Iterator<Item = Sublocale> + '_ {
        self.subs
            .iter()
            .zip(&self.connected)
            .filter(|(_, &c)| c)
            .map(|(&s, _)| s)
    }

    fn lc_connected(&self) -> bool {
        let f = self.l.flags();
        f.connected && f.locally_connected
    }

    fn reductions(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("cover-reductions");
        for u in self.elems() {
            for v in self.elems() {
                let (cu, cv) = (l.closed(u), l.closed(v));
                let (ou, ov) = (l.open(u), l.open(v));
                let f = l.frame();
                t.check(l.join(cu, cv) == l.closed(f.meet(u, v)), || {
                    format!("c({u}) ∨ c({v})")
                });
                t.check(cu.intersect(cv) == l.closed(f.join(u, v)), || {
                    format!("c({u}) ∩ c({v})")
                });
                t.check(
                    (l.join(cu, cv) == l.full()) == (f.meet(u, v) == l.bottom()),
                    || format!("closed cover by c({u}), c({v})"),
                );
                t.check(
                    (l.join(ou, ov) == l.full()) == (f.join(u, v) == l.top()),
                    || format!("open cover by o({u}), o({v})"),
                );
            }
        }
        t.done()
    }

    fn closed_of_sub(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("closed-in-subspace");
        for &s in &self.subs {
            let members = s.members();
            for u in members.iter().map(ElementId) {
                // closed and open sublocales of S, computed inside S
                let cs = Sublocale::from_members_unchecked(
                    members.iter().filter(|&x| l.leq(u, ElementId(x))).collect(),
                );
                let os = Sublocale::from_members_unchecked(
                    members
                        .iter()
                        .filter(|&x| l.implies(u, ElementId(x)) == ElementId(x))
                        .collect(),
                );
                t.check(cs == l.closed(u).intersect(s), || {
                    format!("c_S({u}) in {s:?}")
                });
                t.check(os == l.open(u).intersect(s), || {
                    format!("o_S({u}) in {s:?}")
                });
                t.check(!l.meets(cs, os) && l.join(cs, os) == s, || {
                    format!("o_S({u}) complements c_S({u}) in {s:?}")
                });
            }
            for &tt in self.subs.iter().filter(|tt| tt.is_subset(s)) {
                let inside = members
                    .iter()
                    .map(|u| l.closed(ElementId(u)).intersect(s))
                    .filter(|c| tt.is_subset(*c))
                    .fold(s, |acc, c| acc.intersect(c));
                t.check(inside == l.closure(tt).intersect(s), || {
                    format!("closure of {tt:?} in {s:?}")
                });
            }
        }
        t.done()
    }

    fn closure_into_open(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("closure-into-open");
        for &s in &self.subs {
            for u in self.elems() {
                let ou = l.open(u);
                t.check(!l.meets(ou, l.closure(s)) || l.meets(ou, s), || {
                    format!("o({u}) and {s:?}")
                });
            }
        }
        t.done()
    }

    fn neigh_interior(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("neighbourhood-interior");
        for &s in &self.subs {
            let int = l.interior(s);
            for x in self.non_top() {
                let nbhd = self
                    .elems()
                    .any(|u| l.open(u).contains(x) && l.open(u).is_subset(s));
                t.check(int.contains(x) == nbhd, || {
                    format!("{x} in interior of {s:?}")
                });
            }
        }
        t.done()
    }

    fn neigh_boundary(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("neighbourhood-boundary");
        for &s in self.subs.iter().filter(|&&s| l.has_complement(s)) {
            let rest = l.complement(s);
            for x in l
                .boundary(s)
                .members()
                .iter()
                .map(ElementId)
                .filter(|&x| x != l.top())
            {
                for u in self.elems().filter(|&u| l.open(u).contains(x)) {
                    let ou = l.open(u);
                    t.check(l.meets(ou, s) && l.meets(ou, rest), || {
                        format!("{x} in bd {s:?}, o({u})")
                    });
                }
            }
        }
        t.done()
    }

    fn boundary_diff(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("boundary-of-difference");
        for &c in self.subs.iter().filter(|&&c| l.has_complement(c)) {
            t.check(l.boundary(c) == l.boundary(l.complement(c)), || {
                format!("{c:?}")
            });
        }
        t.done()
    }

    fn bd_inters(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("boundary-of-intersection");
        let bds: Vec<Sublocale> = self.subs.iter().map(|&s| l.boundary(s)).collect();
        for (i, &a) in self.subs.iter().enumerate() {
            for (j, &b) in self.subs.iter().enumerate().skip(i) {
                let both = l.join(bds[i], bds[j]);
                t.check(l.boundary(a.intersect(b)).is_subset(both), || {
                    format!("meet of {a:?}, {b:?}")
                });
                t.check(l.boundary(l.join(a, b)).is_subset(both), || {
                    format!("join of {a:?}, {b:?}")
                });
            }
        }
        t.done()
    }

    fn connected_char(&self) -> LemmaOutcome {
        use crate::connectivity::ConnectivityMethod;
        let l = self.l;
        let mut t = Tally::new("connected-characterisation");
        for (&s, &conn) in self.subs.iter().zip(&self.connected) {
            t.check(
                conn == l.is_connected_by(s, ConnectivityMethod::Clopen),
                || format!("clopen test on {s:?}"),
            );
            let split = l.is_connected_by_separated_split(s).unwrap_or(!conn);
            t.check(conn == split, || format!("separated split test on {s:?}"));
        }
        t.done()
    }

    fn diff_sep(&self) -> LemmaOutcome {
        let l = self.l;
        if !l.flags().connected {
            return Tally::skip("difference-separation", "frame not connected");
        }
        let mut t = Tally::new("difference-separation");
        for c in self.connected_subs().filter(|&c| l.has_complement(c)) {
            let rest = l.complement(c);
            let inside: Vec<Sublocale> = self
                .subs
                .iter()
                .copied()
                .filter(|p| p.is_subset(rest))
                .collect();
            for (i, &p) in inside.iter().enumerate() {
                for &q in &inside[i..] {
                    if l.join(p, q) != rest || !l.are_separated(p, q) {
                        continue;
                    }
                    t.check(
                        l.is_connected(l.join(c, p)) && l.is_connected(l.join(c, q)),
                        || format!("C = {c:?}, P = {p:?}, Q = {q:?}"),
                    );
                }
            }
        }
        t.done()
    }

    fn connected_sub(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("connected-subspace");
        for &s in &self.subs {
            let closed_in_s: Vec<Sublocale> = s
                .members()
                .iter()
                .map(|u| l.closed(ElementId(u)).intersect(s))
                .collect();
            for (&e, &conn) in self
                .subs
                .iter()
                .zip(&self.connected)
                .filter(|(e, _)| e.is_subset(s))
            {
                let split = closed_in_s.iter().any(|&a| {
                    let ea = e.intersect(a);
                    !l.is_void(ea)
                        && closed_in_s.iter().any(|&b| {
                            let eb = e.intersect(b);
                            !l.is_void(eb) && e.is_subset(l.join(a, b)) && !l.meets(ea, eb)
                        })
                });
                t.check(conn == !split, || format!("{e:?} inside {s:?}"));
            }
        }
        t.done()
    }

    fn closed_sub_connected(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("closed-subspace-connected");
        for u in self.elems() {
            let cu = l.closed(u);
            let split = self.elems().any(|a| {
                self.elems().any(|b| {
                    let (ca, cb) = (l.closed(a), l.closed(b));
                    l.join(ca, cb) == cu && !l.meets(ca, cb) && !l.is_void(ca) && !l.is_void(cb)
                })
            });
            t.check(l.is_connected(cu) == !split, || format!("c({u})"));
        }
        t.done()
    }

    fn join_opens(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("join-of-opens");
        for u in self.elems() {
            for v in self.elems() {
                let (ou, ov) = (l.open(u), l.open(v));
                let j = l.join(ou, ov);
                t.check(j == l.open(l.frame().join(u, v)), || {
                    format!("o({u}) ∨ o({v})")
                });
                for &s in &self.subs {
                    t.check(
                        s.intersect(j) == l.join(s.intersect(ou), s.intersect(ov)),
                        || format!("{s:?} against o({u}) ∨ o({v})"),
                    );
                }
            }
        }
        t.done()
    }

    fn join_int(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("join-with-intersection");
        for (i, &a) in self.subs.iter().enumerate() {
            for &b in &self.subs[i..] {
                let j = l.join(a, b);
                for &d in self
                    .subs
                    .iter()
                    .filter(|&&d| d.is_subset(j) && !l.is_void(d))
                {
                    let rel = l.difference(j, d);
                    let complemented = !l.meets(d, rel) && l.join(d, rel) == j;
                    if complemented {
                        t.check(l.meets(d, a) || l.meets(d, b), || {
                            format!("{d:?} in {a:?} ∨ {b:?}")
                        });
                    }
                }
            }
        }
        for u in self.elems() {
            for v in self.elems() {
                let (ou, ov) = (l.open(u), l.open(v));
                let j = l.join(ou, ov);
                for &d in self.subs.iter().filter(|&&d| l.meets(d, j)) {
                    t.check(l.meets(d, ou) || l.meets(d, ov), || {
                        format!("{d:?} against o({u}) ∨ o({v})")
                    });
                }
            }
        }
        t.done()
    }

    fn coroll_join_int(&self) -> LemmaOutcome {
        let l = self.l;
        if !l.flags().locally_connected {
            return Tally::skip("join-with-intersection-open", "frame not locally connected");
        }
        let mut t = Tally::new("join-with-intersection-open");
        for u in self.elems() {
            let Ok(comps) = l.components_of(u) else {
                continue;
            };
            for &s in self.subs.iter().filter(|&&s| l.meets(s, l.open(u))) {
                t.check(comps.components.iter().any(|&c| l.meets(s, c)), || {
                    format!("{s:?} meets o({u})")
                });
            }
        }
        t.done()
    }

    fn join_connected(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("join-connected");
        let conn: Vec<Sublocale> = self.connected_subs().collect();
        for &a in &conn {
            for &b in &conn {
                // family {a, b} with i0 picking b
                let first = l.meets(l.closure(a), b) && l.meets(l.closure(b), b);
                let second = l.meets(a, l.closure(b)) && l.meets(b, l.closure(b));
                if first || second {
                    t.check(l.is_connected(l.join(a, b)), || format!("{a:?} ∨ {b:?}"));
                }
            }
        }
        t.done()
    }

    fn str_loc_con(&self) -> LemmaOutcome {
        let l = self.l;
        let flags = l.flags();
        if !flags.strongly_locally_connected {
            return Tally::skip(
                "strong-implies-local",
                "frame not strongly locally connected",
            );
        }
        let mut t = Tally::new("strong-implies-local");
        t.check(flags.locally_connected, || {
            "not locally connected".to_string()
        });
        for u in self.elems() {
            let comps = l.components_of(u);
            for x in l
                .open(u)
                .members()
                .iter()
                .map(ElementId)
                .filter(|&x| x != l.top())
            {
                let inside = comps
                    .as_ref()
                    .map(|c| c.components.iter().any(|d| d.contains(x)))
                    .unwrap_or(false);
                t.check(inside, || format!("{x} in o({u})"));
                let definitional = self.elems().any(|v| {
                    let ov = l.open(v);
                    ov.contains(x) && ov.is_subset(l.open(u)) && l.is_connected(ov)
                });
                t.check(definitional, || {
                    format!("connected open neighbourhood of {x} in o({u})")
                });
            }
        }
        t.done()
    }

    /// `(u, component)` for every component of every `o(u)`.
    fn open_components(&self) -> Vec<(ElementId, Sublocale)> {
        let l = self.l;
        self.elems()
            .filter_map(|u| l.components_of(u).ok().map(|c| (u, c)))
            .flat_map(|(u, c)| c.components.into_iter().map(move |d| (u, d)))
            .collect()
    }

    fn component_boundary_inside(&self) -> LemmaOutcome {
        let l = self.l;
        if !self.lc_connected() {
            return Tally::skip(
                "component-boundary-inside",
                "frame not connected and locally connected",
            );
        }
        let mut t = Tally::new("component-boundary-inside");
        for (u, d) in self
            .open_components()
            .into_iter()
            .filter(|&(_, d)| d != l.full())
        {
            let bd = l.boundary(d);
            t.check(!l.is_void(bd) && bd.is_subset(l.closed(u)), || {
                format!("component {d:?} of o({u})")
            });
        }
        t.done()
    }

    fn component_closure_meets(&self) -> LemmaOutcome {
        let l = self.l;
        if !self.lc_connected() {
            return Tally::skip(
                "component-closure-meets",
                "frame not connected and locally connected",
            );
        }
        let mut t = Tally::new("component-closure-meets");
        for (u, d) in self
            .open_components()
            .into_iter()
            .filter(|&(u, _)| u != l.top())
        {
            t.check(l.meets(l.closure(d), l.closed(u)), || {
                format!("component {d:?} of o({u})")
            });
        }
        t.done()
    }

    fn component_complement_split(&self) -> LemmaOutcome {
        let l = self.l;
        if !l.flags().locally_connected {
            return Tally::skip("component-complement-split", "frame not locally connected");
        }
        let mut t = Tally::new("component-complement-split");
        for (u, d) in self.open_components() {
            let cl = l.closure(d);
            if cl == l.full() {
                continue;
            }
            let v = l.as_open(d).expect("components of opens are open");
            let vs = l.pseudocomplement(v);
            let rest = l.complement(l.boundary(d));
            let outside = l.complement(cl);
            let describe = || format!("component o({v}) of o({u})");
            t.check(rest == l.open(l.frame().join(vs, v)), describe);
            t.check(rest == l.join(l.open(vs), d), describe);
            t.check(rest == l.join(outside, d), describe);
            t.check(!l.is_connected(rest), describe);
            t.check(
                !l.meets(l.open(vs), d) && !l.is_void(d) && !l.is_void(l.open(vs)),
                describe,
            );
            let (p, q) = (l.closure(outside), cl);
            t.check(rest.is_subset(l.join(p, q)), describe);
            t.check(
                !l.meets(rest.intersect(p), rest.intersect(q))
                    && !l.is_void(rest.intersect(p))
                    && !l.is_void(rest.intersect(q)),
                describe,
            );
        }
        t.done()
    }

    fn continuum_between_disjoint(&self) -> LemmaOutcome {
        let l = self.l;
        if !self.lc_connected() {
            return Tally::skip(
                "continuum-between-disjoint",
                "frame not connected and locally connected",
            );
        }
        let mut t = Tally::new("continuum-between-disjoint");
        let conn: Vec<Sublocale> = self.connected_subs().collect();
        for x in self.elems() {
            for y in self.elems() {
                let (a, b) = (l.closed(x), l.closed(y));
                if l.is_void(a) || l.is_void(b) || l.meets(a, b) {
                    continue;
                }
                let w = l.frame().meet(x, y);
                let Ok(comps) = l.components_of(w) else {
                    continue;
                };
                for &nn in conn.iter().filter(|&&nn| l.meets(nn, a) && l.meets(nn, b)) {
                    let found = comps.components.iter().any(|&d| {
                        l.meets(nn, d) && l.meets(l.closure(d), a) && l.meets(l.closure(d), b)
                    });
                    t.check(found, || format!("A = c({x}), B = c({y}), N = {nn:?}"));
                }
            }
        }
        t.done()
    }

    fn component_bd(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("component-boundary");
        for (u, c) in self.open_components() {
            t.check(l.boundary(c).is_subset(l.boundary(l.open(u))), || {
                format!("component {c:?} of o({u})")
            });
        }
        t.done()
    }

    fn comp_diff_simple(&self) -> LemmaOutcome {
        let l = self.l;
        if !l.flags().connected {
            return Tally::skip("component-difference-simple", "frame not connected");
        }
        let mut t = Tally::new("component-difference-simple");
        for u in self.elems().filter(|&u| l.is_continuum(l.closed(u))) {
            let Ok(comps) = l.components_general(l.complement(l.closed(u))) else {
                continue;
            };
            for &d in &comps.components {
                t.check(l.is_simple(d), || format!("component {d:?} of L ∖ c({u})"));
            }
        }
        t.done()
    }

    fn con_norm_con(&self) -> LemmaOutcome {
        let l = self.l;
        let mut t = Tally::new("connected-normally-connected");
        let complemented: Vec<(Sublocale, Sublocale, Sublocale)> = self
            .subs
            .iter()
            .copied()
            .filter(|&s| l.has_complement(s))
            .map(|s| (s, l.complement(s), l.boundary(s)))
            .collect();
        for (&a, &i) in self.subs.iter().zip(&self.connected) {
            let ii = self.elems().filter(|&u| a.is_subset(l.open(u))).all(|u| {
                self.connected_subs()
                    .any(|c| a.is_subset(c) && c.is_subset(l.open(u)))
            });
            let iii = l.is_normally_connected(a).unwrap_or(ii);
            let iv = complemented
                .iter()
                .all(|&(s, rest, bd)| !(l.meets(a, s) && l.meets(a, rest)) || l.meets(a, bd));
            t.check(!i || ii, || format!("(i) => (ii) on {a:?}"));
            t.check(!ii || iii, || format!("(ii) => (iii) on {a:?}"));
            t.check(!iii || iv, || format!("(iii) => (iv) on {a:?}"));
        }
        t.done()
    }

    fn bd_infinite_join(&self) -> LemmaOutcome {
        let l = self.l;
        if !l.flags().strongly_locally_connected {
            return Tally::skip("boundary-of-join", "frame not strongly locally connected");
        }
        let mut t = Tally::new("boundary-of-join");
        let n = l.len();
        for family in 1u64..1 << n {
            let us = ElemSet::from_bits(family);
            let opens: Vec<Sublocale> = us.iter().map(|u| l.open(ElementId(u))).collect();
            let bds: Vec<Sublocale> = opens.iter().map(|&o| l.boundary(o)).collect();
            let lhs = l.boundary(l.join_all(&opens));
            let rhs = l.closure(l.join_all(&bds));
            t.check(lhs.is_subset(rhs), || format!("family {us:?}"));
        }
        t.done()
    }

    fn simple_bd(&self) -> LemmaOutcome {
        let l = self.l;
        let open_unicoherent =
            check_property(l, PropertyId::X, CheckOptions::default()).map(|r| r.holds);
        if open_unicoherent != Ok(true) {
            return Tally::skip("simple-boundary", "frame not open unicoherent");
        }
        let mut t = Tally::new("simple-boundary");
        for &s in self.subs.iter().filter(|&&s| l.is_simple(s)) {
            let ok = l.is_normally_connected(l.boundary(s)).unwrap_or(false);
            t.check(ok, || format!("boundary of {s:?}"));
        }
        t.done()
    }
}
