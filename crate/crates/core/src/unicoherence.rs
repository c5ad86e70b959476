//! Separation predicates, the unicoherence properties and the checks that
//! tie their verdicts together.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::ElemSet;
use crate::connectivity::ComponentSet;
use crate::frame::{ElementId, FrameFlags};
use crate::sublocale::{Locale, Sublocale, SublocaleError};

/// Largest frame on which the subset reading of `X, Y ⊆ L` is evaluated.
pub const SUBSET_MODE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropertyId {
    #[serde(rename = "I+")]
    IPlus,
    I,
    #[serde(rename = "I'")]
    IPrime,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    N,
    #[serde(rename = "N+")]
    NPlus,
}

impl PropertyId {
    pub const ALL: [PropertyId; 14] = [
        PropertyId::IPlus,
        PropertyId::I,
        PropertyId::IPrime,
        PropertyId::II,
        PropertyId::III,
        PropertyId::IV,
        PropertyId::V,
        PropertyId::VI,
        PropertyId::VII,
        PropertyId::VIII,
        PropertyId::IX,
        PropertyId::X,
        PropertyId::N,
        PropertyId::NPlus,
    ];

    /// The ten properties that share one equivalence class.
    pub const MAIN: [PropertyId; 10] = [
        PropertyId::I,
        PropertyId::II,
        PropertyId::III,
        PropertyId::IV,
        PropertyId::V,
        PropertyId::VI,
        PropertyId::VII,
        PropertyId::VIII,
        PropertyId::IX,
        PropertyId::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::IPlus => "I+",
            PropertyId::I => "I",
            PropertyId::IPrime => "I'",
            PropertyId::II => "II",
            PropertyId::III => "III",
            PropertyId::IV => "IV",
            PropertyId::V => "V",
            PropertyId::VI => "VI",
            PropertyId::VII => "VII",
            PropertyId::VIII => "VIII",
            PropertyId::IX => "IX",
            PropertyId::X => "X",
            PropertyId::N => "N",
            PropertyId::NPlus => "N+",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown property {0:?}")]
pub struct UnknownProperty(pub String);

impl FromStr for PropertyId {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
    #[error(
        "subset mode is limited to frames of at most {limit} elements; this one has {elements}"
    )]
    SubsetModeTooLarge { elements: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("{0:?} is not a complemented sublocale")]
    NotComplemented(Sublocale),
    #[error("{0} is the top element")]
    TopElement(ElementId),
}

/// What a sublocale is asked to separate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    Locale,
    Points(ElementId, ElementId),
    /// Element sets; top is ignored on both sides.
    Sets(ElemSet, ElemSet),
}

/// How `X, Y ⊆ L` is read in properties I and N.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetMode {
    /// `X` and `Y` range over non-void sublocales.
    #[default]
    Sublocales,
    /// `X` and `Y` range over arbitrary element subsets.
    Subsets,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub set_mode: SetMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Property I⁺: `c(u) ∩ c(v)` void, neither separates `x` from `y`, the
    /// join does.
    PointSeparation {
        u: ElementId,
        v: ElementId,
        x: ElementId,
        y: ElementId,
    },
    /// Property I.
    SetSeparation {
        u: ElementId,
        v: ElementId,
        xs: ElemSet,
        ys: ElemSet,
    },
    /// Property I′.
    LocaleSeparation { u: ElementId, v: ElementId },
    /// Property II: a component of `o(u)` whose boundary is not a continuum.
    ComponentBoundary {
        u: ElementId,
        component: Sublocale,
        boundary: Sublocale,
    },
    /// Property III.
    ContinuumPair { u: ElementId, v: ElementId },
    /// Property IV.
    CommonBoundary {
        u: ElementId,
        first: Sublocale,
        second: Sublocale,
    },
    /// Property V.
    SublocalePair { first: Sublocale, second: Sublocale },
    /// Properties VI and VII.
    SimpleSublocale { sublocale: Sublocale },
    /// Properties VIII, IX and X, with the regions `o(u)` and `o(v)`.
    RegionPair { u: ElementId, v: ElementId },
    /// Property N⁺.
    UnseparatedPoints {
        u: ElementId,
        v: ElementId,
        x: ElementId,
        y: ElementId,
    },
    /// Property N.
    UnseparatedSets {
        u: ElementId,
        v: ElementId,
        xs: ElemSet,
        ys: ElemSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: PropertyId,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl PropertyResult {
    fn verdict(property: PropertyId, witness: Option<Witness>) -> Self {
        PropertyResult {
            property,
            holds: witness.is_none(),
            witness,
        }
    }
}

impl Locale {
    /// Whether the complemented sublocale `S` separates, in the given sense.
    ///
    /// Evaluated with the generic sublocale operations only. A separation
    /// of `L ∖ S` is a pair `c(a), c(b)` covering it with void common part
    /// and non-void traces.
    pub fn separates(&self, s: Sublocale, what: Separation) -> Result<bool, SeparationError> {
        if !self.has_complement(s) {
            return Err(SeparationError::NotComplemented(s));
        }
        let d = self.complement(s);
        match what {
            Separation::Locale => Ok(!self.is_connected(d)),
            Separation::Points(x, y) => {
                for p in [x, y] {
                    if p == self.top() {
                        return Err(SeparationError::TopElement(p));
                    }
                }
                Ok(self.separating_pair(d, x, y).is_some())
            }
            Separation::Sets(xs, ys) => {
                let top = self.top().index();
                for x in xs.without(top) {
                    for y in ys.without(top) {
                        if self
                            .separating_pair(d, ElementId(x), ElementId(y))
                            .is_none()
                        {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }

    /// First `(a, b)` exhibiting a separation of `d` with `x` on the `c(a)`
    /// side and `y` on the `c(b)` side.
    pub fn separating_pair(
        &self,
        d: Sublocale,
        x: ElementId,
        y: ElementId,
    ) -> Option<(ElementId, ElementId)> {
        if !d.contains(x) || !d.contains(y) {
            return None;
        }
        for a in self.elements() {
            let da = d.intersect(self.closed(a));
            if !da.contains(x) || self.is_void(da) {
                continue;
            }
            for b in self.elements() {
                let db = d.intersect(self.closed(b));
                if !db.contains(y) || self.is_void(db) {
                    continue;
                }
                if d.is_subset(self.join(self.closed(a), self.closed(b))) && !self.meets(da, db) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Pairs of points separated by a closed sublocale: `rows[x]` holds every
/// `y` such that `S` separates `x` from `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationTable {
    pub rows: Vec<ElemSet>,
}

impl SeparationTable {
    /// Table for `S = c(w)`, built from the separations of `o(w)`.
    pub fn for_closed(locale: &Locale, w: ElementId) -> Self {
        let n = locale.len();
        let top = locale.top().index();
        let d = locale.complement(locale.closed(w)).members();
        let trace = |a: usize| locale.upset(ElementId(a)).intersection(d);
        let mut rows = vec![ElemSet::EMPTY; n];
        for a in 0..n {
            let xs = trace(a).without(top);
            if xs.is_empty() {
                continue;
            }
            for b in 0..n {
                let ys = trace(b).without(top);
                if ys.is_empty() {
                    continue;
                }
                // c(a) ∨ c(b) = c(a ∧ b) and c(a) ∩ c(b) = c(a ∨ b)
                let ab_meet = locale.meet(ElementId(a), ElementId(b));
                let ab_join = locale.frame().join(ElementId(a), ElementId(b));
                if d.is_subset(locale.upset(ab_meet))
                    && trace(ab_join.index()).without(top).is_empty()
                {
                    for x in xs {
                        rows[x] = rows[x].union(ys);
                    }
                }
            }
        }
        SeparationTable { rows }
    }

    pub fn separates(&self, x: ElementId, y: ElementId) -> bool {
        self.rows[x.index()].contains(y.index())
    }

    /// Whether some point of `x` is separated from some point of `y`.
    pub fn separates_some(&self, xs: ElemSet, ys: ElemSet) -> bool {
        xs.iter().any(|x| !self.rows[x].is_disjoint(ys))
    }
}

/// Evaluates properties on one locale, sharing the per-element tables.
pub struct PropertyChecker<'a> {
    locale: &'a Locale,
    options: CheckOptions,
    tables: OnceLock<Vec<SeparationTable>>,
    continua: OnceLock<ElemSet>,
    regions: OnceLock<ElemSet>,
    components: OnceLock<Result<Vec<ComponentSet>, SublocaleError>>,
}

impl<'a> PropertyChecker<'a> {
    pub fn new(locale: &'a Locale, options: CheckOptions) -> Self {
        PropertyChecker {
            locale,
            options,
            tables: OnceLock::new(),
            continua: OnceLock::new(),
            regions: OnceLock::new(),
            components: OnceLock::new(),
        }
    }

    pub fn locale(&self) -> &Locale {
        self.locale
    }

    pub fn tables(&self) -> &[SeparationTable] {
        self.tables.get_or_init(|| {
            self.locale
                .elements()
                .map(|w| SeparationTable::for_closed(self.locale, w))
                .collect()
        })
    }

    /// Elements `u` with `c(u)` a continuum.
    pub fn continua(&self) -> ElemSet {
        *self.continua.get_or_init(|| {
            let l = self.locale;
            l.elements()
                .filter(|&u| l.is_continuum(l.closed(u)))
                .map(ElementId::index)
                .collect()
        })
    }

    /// Elements `u` with `o(u)` a region.
    pub fn regions(&self) -> ElemSet {
        *self.regions.get_or_init(|| {
            let l = self.locale;
            l.elements()
                .filter(|&u| l.is_region(l.open(u)))
                .map(ElementId::index)
                .collect()
        })
    }

    fn components(&self, u: usize) -> Result<&ComponentSet, SublocaleError> {
        let all = self.components.get_or_init(|| {
            self.locale
                .elements()
                .map(|u| self.locale.components_of(u))
                .collect()
        });
        all.as_ref().map(|v| &v[u]).map_err(Clone::clone)
    }

    fn separates_locale(&self, w: usize) -> bool {
        let l = self.locale;
        !l.is_connected(l.complement(l.closed(ElementId(w))))
    }

    /// Pairs `(u, v)` with `c(u) ∩ c(v)` void, that is `u ∨ v = 1`.
    fn disjoint_closed_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.locale;
        let n = l.len();
        let top = l.top();
        (0..n).flat_map(move |u| {
            (0..n)
                .filter(move |&v| l.frame().join(ElementId(u), ElementId(v)) == top)
                .map(move |v| (u, v))
        })
    }

    /// The `X` / `Y` candidates of properties I and N inside `within`, as
    /// member sets with top removed.
    fn set_candidates(&self, within: ElemSet) -> Result<Vec<ElemSet>, PropertyError> {
        let l = self.locale;
        let top = l.top().index();
        match self.options.set_mode {
            SetMode::Sublocales => Ok(l
                .sublocales()?
                .iter()
                .map(|s| s.members().without(top))
                .filter(|s| !s.is_empty() && s.is_subset(within))
                .collect()),
            SetMode::Subsets => {
                if l.len() > SUBSET_MODE_LIMIT {
                    return Err(PropertyError::SubsetModeTooLarge {
                        elements: l.len(),
                        limit: SUBSET_MODE_LIMIT,
                    });
                }
                let base = within.without(top);
                let elems = base.to_vec();
                Ok((1u64..1 << elems.len())
                    .map(|mask| {
                        elems
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &e)| e)
                            .collect()
                    })
                    .collect())
            }
        }
    }

    pub fn check(&self, property: PropertyId) -> Result<PropertyResult, PropertyError> {
        let witness = match property {
            PropertyId::IPlus => self.check_i_plus(),
            PropertyId::I => self.check_i()?,
            PropertyId::IPrime => self.check_i_prime(),
            PropertyId::II => self.check_ii()?,
            PropertyId::III => self.check_iii(),
            PropertyId::IV => self.check_iv()?,
            PropertyId::V => self.check_v()?,
            PropertyId::VI => self.check_vi()?,
            PropertyId::VII => self.check_vii(),
            PropertyId::VIII => self.check_viii(),
            PropertyId::IX => self.check_ix(),
            PropertyId::X => self.check_x(),
            PropertyId::N => self.check_n()?,
            PropertyId::NPlus => self.check_n_plus(),
        };
        Ok(PropertyResult::verdict(property, witness))
    }

    /// Checks the given properties in parallel; results keyed by property.
    pub fn check_many(
        &self,
        properties: &[PropertyId],
    ) -> BTreeMap<PropertyId, Result<PropertyResult, PropertyError>> {
        self.tables();
        self.continua();
        self.regions();
        properties.par_iter().map(|&p| (p, self.check(p))).collect()
    }

    fn check_i_plus(&self) -> Option<Witness> {
        let l = self.locale;
        let tables = self.tables();
        let top = l.top().index();
        for (u, v) in self.disjoint_closed_pairs() {
            let w = l.meet(ElementId(u), ElementId(v)).index();
            for x in l.all().without(top) {
                let bad = tables[u].rows[x].union(tables[v].rows[x]);
                if let Some(y) = tables[w].rows[x].minus(bad).first() {
                    return Some(Witness::PointSeparation {
                        u: ElementId(u),
                        v: ElementId(v),
                        x: ElementId(x),
                        y: ElementId(y),
                    });
                }
            }
        }
        None
    }

    fn check_i(&self) -> Result<Option<Witness>, PropertyError> {
        let l = self.locale;
        let tables = self.tables();
        let candidates = self.set_candidates(l.all())?;
        for (u, v) in self.disjoint_closed_pairs() {
            let w = l.meet(ElementId(u), ElementId(v)).index();
            for &xs in &candidates {
                let mut bad = ElemSet::EMPTY;
                let mut good = l.all();
                for x in xs {
                    bad = bad.union(tables[u].rows[x]).union(tables[v].rows[x]);
                    good = good.intersection(tables[w].rows[x]);
                }
                let open = good.minus(bad);
                if open.is_empty() {
                    continue;
                }
                if let Some(&ys) = candidates.iter().find(|ys| ys.is_subset(open)) {
                    return Ok(Some(Witness::SetSeparation {
                        u: ElementId(u),
                        v: ElementId(v),
                        xs,
                        ys,
                    }));
                }
            }
        }
        Ok(None)
    }

    fn check_i_prime(&self) -> Option<Witness> {
        let l = self.locale;
        let splits: Vec<bool> = (0..l.len()).map(|w| self.separates_locale(w)).collect();
        self.disjoint_closed_pairs()
            .find(|&(u, v)| {
                let w = l.meet(ElementId(u), ElementId(v)).index();
                !splits[u] && !splits[v] && splits[w]
            })
            .map(|(u, v)| Witness::LocaleSeparation {
                u: ElementId(u),
                v: ElementId(v),
            })
    }

    fn check_ii(&self) -> Result<Option<Witness>, PropertyError> {
        let l = self.locale;
        for u in self.continua() {
            for &d in &self.components(u)?.components {
                let bd = l.boundary(d);
                if !l.is_continuum(bd) {
                    return Ok(Some(Witness::ComponentBoundary {
                        u: ElementId(u),
                        component: d,
                        boundary: bd,
                    }));
                }
            }
        }
        Ok(None)
    }

    fn check_iii(&self) -> Option<Witness> {
        let l = self.locale;
        let continua = self.continua();
        for u in continua {
            for v in continua {
                // c(u) ∨ c(v) = L exactly when u ∧ v = 0
                if l.meet(ElementId(u), ElementId(v)) != l.bottom() {
                    continue;
                }
                if !continua.contains(l.frame().join(ElementId(u), ElementId(v)).index()) {
                    return Some(Witness::ContinuumPair {
                        u: ElementId(u),
                        v: ElementId(v),
                    });
                }
            }
        }
        None
    }

    fn check_iv(&self) -> Result<Option<Witness>, PropertyError> {
        let l = self.locale;
        for u in l.elements().filter(|&u| u != l.top()) {
            let comps = &self.components(u.index())?.components;
            for (i, &d1) in comps.iter().enumerate() {
                for &d2 in &comps[i + 1..] {
                    if l.meets(d1, d2) {
                        continue;
                    }
                    let bd = l.boundary(d1);
                    if bd == l.boundary(d2) && !l.is_continuum(bd) {
                        return Ok(Some(Witness::CommonBoundary {
                            u,
                            first: d1,
                            second: d2,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_v(&self) -> Result<Option<Witness>, PropertyError> {
        let l = self.locale;
        let pool: Vec<(Sublocale, Sublocale)> = l
            .sublocales()?
            .iter()
            .copied()
            .filter(|&s| l.has_complement(s) && l.is_connected(s))
            .map(|s| (s, l.boundary(s)))
            .collect();
        for &(c, bc) in &pool {
            if l.is_connected(bc) {
                continue;
            }
            for &(d, bd) in &pool {
                if !l.meets(c, d) && bc.is_subset(bd) {
                    return Ok(Some(Witness::SublocalePair {
                        first: c,
                        second: d,
                    }));
                }
            }
        }
        Ok(None)
    }

    fn check_vi(&self) -> Result<Option<Witness>, PropertyError> {
        let l = self.locale;
        Ok(l.sublocales()?
            .iter()
            .copied()
            .find(|&c| l.is_simple(c) && !l.is_connected(l.boundary(c)))
            .map(|sublocale| Witness::SimpleSublocale { sublocale }))
    }

    fn check_vii(&self) -> Option<Witness> {
        let l = self.locale;
        self.regions()
            .iter()
            .map(|u| l.open(ElementId(u)))
            .find(|&r| l.is_simple(r) && !l.is_connected(l.boundary(r)))
            .map(|sublocale| Witness::SimpleSublocale { sublocale })
    }

    fn region_pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        let regions = self.regions();
        regions
            .iter()
            .flat_map(move |u| regions.iter().map(move |v| (ElementId(u), ElementId(v))))
    }

    fn check_viii(&self) -> Option<Witness> {
        let l = self.locale;
        self.region_pairs()
            .find(|&(u, v)| {
                // o(u) ∩ o(v) = o(u ∧ v)
                if l.meet(u, v) != l.bottom() {
                    return false;
                }
                let bd = l.boundary(l.open(u));
                bd == l.boundary(l.open(v)) && !l.is_connected(bd)
            })
            .map(|(u, v)| Witness::RegionPair { u, v })
    }

    fn check_ix(&self) -> Option<Witness> {
        let l = self.locale;
        self.region_pairs()
            .find(|&(u, v)| {
                let (a, b) = (l.open(u), l.open(v));
                !l.meets(l.boundary(a), l.boundary(b)) && !l.is_connected(l.open(l.meet(u, v)))
            })
            .map(|(u, v)| Witness::RegionPair { u, v })
    }

    fn check_x(&self) -> Option<Witness> {
        let l = self.locale;
        let regions = self.regions();
        self.region_pairs()
            // o(u) ∨ o(v) = L exactly when u ∨ v = 1
            .find(|&(u, v)| {
                l.frame().join(u, v) == l.top() && !regions.contains(l.meet(u, v).index())
            })
            .map(|(u, v)| Witness::RegionPair { u, v })
    }

    /// Rows of every continuum `c(w)` inside `o(u ∧ v)`, merged.
    fn continuum_rows(&self, u: usize, v: usize) -> Vec<ElemSet> {
        let l = self.locale;
        let tables = self.tables();
        let inside = l.open(l.meet(ElementId(u), ElementId(v)));
        let mut rows = vec![ElemSet::EMPTY; l.len()];
        for w in self
            .continua()
            .iter()
            .filter(|&w| l.closed(ElementId(w)).is_subset(inside))
        {
            for (row, t) in rows.iter_mut().zip(&tables[w].rows) {
                *row = row.union(*t);
            }
        }
        rows
    }

    fn check_n_plus(&self) -> Option<Witness> {
        let l = self.locale;
        let top = l.top().index();
        for (u, v) in self.disjoint_closed_pairs() {
            let xs = l.upset(ElementId(u)).without(top);
            let ys = l.upset(ElementId(v)).without(top);
            if xs.is_empty() || ys.is_empty() {
                continue;
            }
            let rows = self.continuum_rows(u, v);
            for x in xs {
                if let Some(y) = ys.minus(rows[x]).first() {
                    return Some(Witness::UnseparatedPoints {
                        u: ElementId(u),
                        v: ElementId(v),
                        x: ElementId(x),
                        y: ElementId(y),
                    });
                }
            }
        }
        None
    }

    fn check_n(&self) -> Result<Option<Witness>, PropertyError> {
        let l = self.locale;
        let candidates = self.set_candidates(l.all())?;
        for (u, v) in self.disjoint_closed_pairs() {
            let (cu, cv) = (l.upset(ElementId(u)), l.upset(ElementId(v)));
            let xs_pool: Vec<ElemSet> = candidates
                .iter()
                .copied()
                .filter(|s| s.is_subset(cu))
                .collect();
            let ys_pool: Vec<ElemSet> = candidates
                .iter()
                .copied()
                .filter(|s| s.is_subset(cv))
                .collect();
            if xs_pool.is_empty() || ys_pool.is_empty() {
                continue;
            }
            let rows = self.continuum_rows(u, v);
            for &xs in &xs_pool {
                let reach = xs.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(rows[x]));
                if let Some(&ys) = ys_pool.iter().find(|ys| ys.is_disjoint(reach)) {
                    return Ok(Some(Witness::UnseparatedSets {
                        u: ElementId(u),
                        v: ElementId(v),
                        xs,
                        ys,
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// Evaluates a single property.
pub fn check_property(
    locale: &Locale,
    property: PropertyId,
    options: CheckOptions,
) -> Result<PropertyResult, PropertyError> {
    PropertyChecker::new(locale, options).check(property)
}

/// One implication or equivalence between verdicts, with the frame
/// hypotheses under which it is claimed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub preconditions: FrameFlags,
    pub verdicts: BTreeMap<PropertyId, PropertyResult>,
    /// Properties that could not be decided, with the reason.
    pub undecided: BTreeMap<PropertyId, String>,
    /// Relations that were applicable and evaluated.
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
    pub consistent: bool,
}

/// Evaluates every property and checks the claimed relations among them
/// under the hypotheses the frame satisfies.
pub fn verify_equivalences(locale: &Locale, options: CheckOptions) -> EquivalenceReport {
    verify_selected(locale, &PropertyId::ALL, options)
}

/// [`verify_equivalences`] restricted to some properties; relations are
/// checked among the evaluated ones only.
pub fn verify_selected(
    locale: &Locale,
    properties: &[PropertyId],
    options: CheckOptions,
) -> EquivalenceReport {
    let checker = PropertyChecker::new(locale, options);
    let mut verdicts = BTreeMap::new();
    let mut undecided = BTreeMap::new();
    for (p, r) in checker.check_many(properties) {
        match r {
            Ok(r) => {
                verdicts.insert(p, r);
            }
            Err(e) => {
                undecided.insert(p, e.to_string());
            }
        }
    }
    let preconditions = locale.flags();
    let (checked, violations) = relations(&preconditions, &verdicts);
    EquivalenceReport {
        preconditions,
        verdicts,
        undecided,
        checked,
        consistent: violations.is_empty(),
        violations,
    }
}

fn relations(
    flags: &FrameFlags,
    verdicts: &BTreeMap<PropertyId, PropertyResult>,
) -> (Vec<String>, Vec<Violation>) {
    use PropertyId::*;
    let holds = |p: PropertyId| verdicts.get(&p).map(|r| r.holds);
    let mut checked = Vec::new();
    let mut violations = Vec::new();
    let mut implies = |a: PropertyId, b: PropertyId| {
        if let (Some(x), Some(y)) = (holds(a), holds(b)) {
            let relation = format!("{a} => {b}");
            if x && !y {
                violations.push(Violation {
                    relation: relation.clone(),
                    detail: format!("{a} holds, {b} fails"),
                });
            }
            checked.push(relation);
        }
    };
    if flags.connected && flags.locally_connected {
        for w in PropertyId::MAIN.windows(2) {
            implies(w[0], w[1]);
            implies(w[1], w[0]);
        }
        implies(IPlus, I);
        implies(I, IPrime);
        implies(NPlus, N);
        implies(N, III);
        if flags.strongly_locally_connected {
            implies(IPrime, I);
            implies(I, IPlus);
        }
        if flags.normal {
            implies(II, N);
        }
        if flags.normal && flags.strongly_locally_connected {
            implies(II, NPlus);
        }
    }
    (checked, violations)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("property holds; nothing to replay")]
    NoWitness,
    #[error("witness kind does not match property {0}")]
    WrongKind(PropertyId),
    #[error("witness does not reproduce the violation: {0}")]
    NotReproduced(String),
    #[error(transparent)]
    Separation(#[from] SeparationError),
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
}

fn require(cond: bool, what: &str) -> Result<(), ReplayError> {
    if cond {
        Ok(())
    } else {
        Err(ReplayError::NotReproduced(what.to_string()))
    }
}

/// Re-derives the violation recorded in a failed result, using only the
/// public sublocale operations.
pub fn replay_witness(locale: &Locale, result: &PropertyResult) -> Result<(), ReplayError> {
    let l = locale;
    let w = result.witness.as_ref().ok_or(ReplayError::NoWitness)?;
    let p = result.property;
    let disjoint_closed =
        |u: ElementId, v: ElementId| -> Result<(Sublocale, Sublocale, Sublocale), ReplayError> {
            let (cu, cv) = (l.closed(u), l.closed(v));
            require(!l.meets(cu, cv), "closed sublocales meet")?;
            Ok((cu, cv, l.join(cu, cv)))
        };
    let region = |u: ElementId| -> Result<Sublocale, ReplayError> {
        let r = l.open(u);
        require(l.classify_sublocale(r).is_region, "not a region")?;
        Ok(r)
    };
    match (p, w) {
        (PropertyId::IPlus, Witness::PointSeparation { u, v, x, y }) => {
            let (cu, cv, j) = disjoint_closed(*u, *v)?;
            let pts = Separation::Points(*x, *y);
            require(!l.separates(cu, pts)?, "c(u) separates")?;
            require(!l.separates(cv, pts)?, "c(v) separates")?;
            require(l.separates(j, pts)?, "join does not separate")
        }
        (PropertyId::I, Witness::SetSeparation { u, v, xs, ys }) => {
            let (cu, cv, j) = disjoint_closed(*u, *v)?;
            require(
                !xs.without(l.top().index()).is_empty(),
                "X has no element besides top",
            )?;
            require(
                !ys.without(l.top().index()).is_empty(),
                "Y has no element besides top",
            )?;
            for x in xs.iter() {
                for y in ys.iter() {
                    let pts = Separation::Points(ElementId(x), ElementId(y));
                    require(!l.separates(cu, pts)?, "c(u) separates a pair")?;
                    require(!l.separates(cv, pts)?, "c(v) separates a pair")?;
                }
            }
            require(
                l.separates(j, Separation::Sets(*xs, *ys))?,
                "join does not separate",
            )
        }
        (PropertyId::IPrime, Witness::LocaleSeparation { u, v }) => {
            let (cu, cv, j) = disjoint_closed(*u, *v)?;
            require(!l.separates(cu, Separation::Locale)?, "c(u) separates L")?;
            require(!l.separates(cv, Separation::Locale)?, "c(v) separates L")?;
            require(
                l.separates(j, Separation::Locale)?,
                "join does not separate L",
            )
        }
        (PropertyId::II, Witness::ComponentBoundary { u, component, .. }) => {
            let cu = l.closed(*u);
            require(
                l.classify_sublocale(cu).is_continuum,
                "c(u) not a continuum",
            )?;
            require(
                l.is_component_of(*component, l.complement(cu))?,
                "not a component",
            )?;
            require(
                !l.classify_sublocale(l.boundary(*component)).is_continuum,
                "boundary is a continuum",
            )
        }
        (PropertyId::III, Witness::ContinuumPair { u, v }) => {
            let (h, k) = (l.closed(*u), l.closed(*v));
            require(l.classify_sublocale(h).is_continuum, "c(u) not a continuum")?;
            require(l.classify_sublocale(k).is_continuum, "c(v) not a continuum")?;
            require(l.join(h, k) == l.full(), "continua do not cover L")?;
            require(
                !l.classify_sublocale(h.intersect(k)).is_continuum,
                "intersection is a continuum",
            )
        }
        (PropertyId::IV, Witness::CommonBoundary { u, first, second }) => {
            let cu = l.closed(*u);
            require(!l.is_void(cu), "c(u) void")?;
            let rest = l.complement(cu);
            require(l.is_component_of(*first, rest)?, "first is not a component")?;
            require(
                l.is_component_of(*second, rest)?,
                "second is not a component",
            )?;
            require(!l.meets(*first, *second), "components meet")?;
            let bd = l.boundary(*first);
            require(bd == l.boundary(*second), "boundaries differ")?;
            require(
                !l.classify_sublocale(bd).is_continuum,
                "boundary is a continuum",
            )
        }
        (PropertyId::V, Witness::SublocalePair { first, second }) => {
            for s in [first, second] {
                require(l.is_sublocale(s.members()), "not a sublocale")?;
                require(l.is_complemented(*s)?, "not complemented")?;
                require(l.is_connected(*s), "not connected")?;
            }
            require(!l.meets(*first, *second), "sublocales meet")?;
            require(
                l.boundary(*first).is_subset(l.boundary(*second)),
                "boundary not contained",
            )?;
            require(!l.is_connected(l.boundary(*first)), "boundary connected")
        }
        (PropertyId::VI | PropertyId::VII, Witness::SimpleSublocale { sublocale }) => {
            let s = *sublocale;
            require(l.is_sublocale(s.members()), "not a sublocale")?;
            require(l.is_complemented(s)?, "not complemented")?;
            require(l.is_connected(s), "not connected")?;
            require(l.is_connected(l.supplement(s)?), "complement not connected")?;
            if p == PropertyId::VII {
                require(l.classify_sublocale(s).is_region, "not a region")?;
            }
            require(!l.is_connected(l.boundary(s)), "boundary connected")
        }
        (PropertyId::VIII, Witness::RegionPair { u, v }) => {
            let (a, b) = (region(*u)?, region(*v)?);
            require(!l.meets(a, b), "regions meet")?;
            let bd = l.boundary(a);
            require(bd == l.boundary(b), "boundaries differ")?;
            require(!l.is_connected(bd), "boundary connected")
        }
        (PropertyId::IX, Witness::RegionPair { u, v }) => {
            let (a, b) = (region(*u)?, region(*v)?);
            require(!l.meets(l.boundary(a), l.boundary(b)), "boundaries meet")?;
            require(!l.is_connected(a.intersect(b)), "intersection connected")
        }
        (PropertyId::X, Witness::RegionPair { u, v }) => {
            let (a, b) = (region(*u)?, region(*v)?);
            require(l.join(a, b) == l.full(), "regions do not cover L")?;
            require(
                !l.classify_sublocale(a.intersect(b)).is_region,
                "intersection is a region",
            )
        }
        (PropertyId::NPlus, Witness::UnseparatedPoints { u, v, x, y }) => {
            let (cu, cv, j) = disjoint_closed(*u, *v)?;
            require(cu.contains(*x) && *x != l.top(), "x not in c(u)")?;
            require(cv.contains(*y) && *y != l.top(), "y not in c(v)")?;
            let rest = l.complement(j);
            for w in l.elements() {
                let cw = l.closed(w);
                if l.classify_sublocale(cw).is_continuum
                    && cw.is_subset(rest)
                    && l.separates(cw, Separation::Points(*x, *y))?
                {
                    return Err(ReplayError::NotReproduced(format!(
                        "c({w}) separates x and y"
                    )));
                }
            }
            Ok(())
        }
        (PropertyId::N, Witness::UnseparatedSets { u, v, xs, ys }) => {
            let (cu, cv, j) = disjoint_closed(*u, *v)?;
            let top = l.top().index();
            require(
                !xs.without(top).is_empty() && xs.is_subset(cu.members()),
                "bad X",
            )?;
            require(
                !ys.without(top).is_empty() && ys.is_subset(cv.members()),
                "bad Y",
            )?;
            let rest = l.complement(j);
            for w in l.elements() {
                let cw = l.closed(w);
                if !(l.classify_sublocale(cw).is_continuum && cw.is_subset(rest)) {
                    continue;
                }
                for x in xs.without(top) {
                    for y in ys.without(top) {
                        if l.separates(cw, Separation::Points(ElementId(x), ElementId(y)))? {
                            return Err(ReplayError::NotReproduced(format!(
                                "c({w}) separates {x} and {y}"
                            )));
                        }
                    }
                }
            }
            Ok(())
        }
        _ => Err(ReplayError::WrongKind(p)),
    }
}
