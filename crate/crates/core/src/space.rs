//! Finite topological spaces, their frames of opens, and the classical
//! point-set notions used as an independent reference.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{ElemSet, MAX_BITS};
use crate::frame::{ElementId, FiniteFrame, FrameError};
use crate::sublocale::Locale;
use crate::unicoherence::{check_property, CheckOptions, PropertyError, PropertyId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("space has {0} points; at most 64 are supported")]
    TooManyPoints(usize),
    #[error("duplicate point label {0:?}")]
    DuplicatePoint(String),
    #[error("open set {index} names unknown point {point:?}")]
    UnknownPoint { index: usize, point: String },
    #[error("the empty set and the whole space must both be open")]
    MissingEmptyOrFull,
    #[error("union of opens {first} and {second} is not open")]
    NotClosedUnderUnion { first: String, second: String },
    #[error("intersection of opens {first} and {second} is not open")]
    NotClosedUnderIntersection { first: String, second: String },
}

/// A finite space. Opens are stored sorted by size, then by bit pattern,
/// without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<ElemSet>,
}

impl FiniteSpace {
    pub fn new(points: Vec<String>, opens: Vec<ElemSet>) -> Result<Self, SpaceError> {
        if points.len() > MAX_BITS {
            return Err(SpaceError::TooManyPoints(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(SpaceError::DuplicatePoint(p.clone()));
            }
        }
        let full = ElemSet::full(points.len());
        if let Some(index) = opens.iter().position(|o| !o.is_subset(full)) {
            let point = format!("#{}", opens[index].minus(full).first().unwrap_or(0));
            return Err(SpaceError::UnknownPoint { index, point });
        }
        let mut opens = opens;
        opens.sort_by_key(|o| (o.len(), o.bits()));
        opens.dedup();
        if !opens.contains(&ElemSet::EMPTY) || !opens.contains(&full) {
            return Err(SpaceError::MissingEmptyOrFull);
        }
        let space = FiniteSpace { points, opens };
        for (i, &a) in space.opens.iter().enumerate() {
            for &b in &space.opens[i + 1..] {
                if !space.opens.contains(&a.union(b)) {
                    return Err(SpaceError::NotClosedUnderUnion {
                        first: space.format_set(a),
                        second: space.format_set(b),
                    });
                }
                if !space.opens.contains(&a.intersection(b)) {
                    return Err(SpaceError::NotClosedUnderIntersection {
                        first: space.format_set(a),
                        second: space.format_set(b),
                    });
                }
            }
        }
        Ok(space)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[ElemSet] {
        &self.opens
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::full(self.points.len())
    }

    pub fn closed_sets(&self) -> impl Iterator<Item = ElemSet> + '_ {
        self.opens.iter().map(|&o| self.full().minus(o))
    }

    pub fn is_open(&self, s: ElemSet) -> bool {
        self.opens.contains(&s)
    }

    pub fn is_closed(&self, s: ElemSet) -> bool {
        self.is_open(self.full().minus(s))
    }

    /// Frame element of `o(U)` in [`frame_of_opens`], if `U` is open.
    pub fn element_of(&self, open: ElemSet) -> Option<ElementId> {
        self.opens.iter().position(|&o| o == open).map(ElementId)
    }

    pub fn format_set(&self, s: ElemSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.points[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Builds a space from point labels and opens given as label lists.
pub fn validate_space(points: &[String], opens: &[Vec<String>]) -> Result<FiniteSpace, SpaceError> {
    let mut sets = Vec::with_capacity(opens.len());
    for (index, open) in opens.iter().enumerate() {
        let mut s = ElemSet::EMPTY;
        for p in open {
            match points.iter().position(|q| q == p) {
                Some(i) if i < MAX_BITS => s.insert(i),
                _ => {
                    return Err(SpaceError::UnknownPoint {
                        index,
                        point: p.clone(),
                    })
                }
            }
        }
        sets.push(s);
    }
    FiniteSpace::new(points.to_vec(), sets)
}

/// The frame of opens ordered by inclusion, labelled by point sets.
pub fn frame_of_opens(space: &FiniteSpace) -> Result<FiniteFrame, FrameError> {
    let opens = space.opens();
    let mut pairs = Vec::new();
    for (i, &a) in opens.iter().enumerate() {
        for (j, &b) in opens.iter().enumerate() {
            if a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    let labels = opens.iter().map(|&o| space.format_set(o)).collect();
    Ok(FiniteFrame::build(opens.len(), &pairs)?.with_labels(labels))
}

/// No partition of `subset` into two non-empty relatively open pieces.
pub fn classical_connected(space: &FiniteSpace, subset: ElemSet) -> bool {
    space.opens().iter().all(|&u| {
        let part = u.intersection(subset);
        if part.is_empty() || part == subset {
            return true;
        }
        let rest = subset.minus(part);
        !space
            .opens()
            .iter()
            .any(|&v| v.intersection(subset) == rest)
    })
}

/// Non-empty, closed and connected.
pub fn classical_continuum(space: &FiniteSpace, subset: ElemSet) -> bool {
    !subset.is_empty() && space.is_closed(subset) && classical_connected(space, subset)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalVerdict {
    pub unicoherent: bool,
    /// Continua `H`, `K` covering the space whose intersection is not a
    /// continuum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(ElemSet, ElemSet)>,
}

/// Whenever two continua cover the space, their intersection is a
/// continuum.
pub fn classical_unicoherent(space: &FiniteSpace) -> ClassicalVerdict {
    let continua: Vec<ElemSet> = space
        .closed_sets()
        .filter(|&f| classical_continuum(space, f))
        .collect();
    let full = space.full();
    for &h in &continua {
        for &k in &continua {
            if h.union(k) == full && !classical_continuum(space, h.intersection(k)) {
                return ClassicalVerdict {
                    unicoherent: false,
                    witness: Some((h, k)),
                };
            }
        }
    }
    ClassicalVerdict {
        unicoherent: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub classical: ClassicalVerdict,
    pub localic_unicoherent: bool,
    pub closed_sets_checked: usize,
    pub disagreements: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossCheckError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Property(#[from] PropertyError),
}

/// Compares classical unicoherence with property III of the frame of opens,
/// and classical continua with closed continuum sublocales.
pub fn cross_check(space: &FiniteSpace) -> Result<CrossCheck, CrossCheckError> {
    let locale = Locale::new(frame_of_opens(space)?);
    let classical = classical_unicoherent(space);
    let localic = check_property(&locale, PropertyId::III, CheckOptions::default())?.holds;
    let mut disagreements = Vec::new();
    if classical.unicoherent != localic {
        disagreements.push(format!(
            "classical unicoherence {} but property III {}",
            classical.unicoherent, localic
        ));
    }
    let mut closed_sets_checked = 0;
    for (i, &u) in space.opens().iter().enumerate() {
        let f = space.full().minus(u);
        let point_set = classical_continuum(space, f);
        let pointfree = locale.is_continuum(locale.closed(ElementId(i)));
        if point_set != pointfree {
            disagreements.push(format!(
                "closed set {}: classical continuum {} but c({}) continuum {}",
                space.format_set(f),
                point_set,
                space.format_set(u),
                pointfree
            ));
        }
        closed_sets_checked += 1;
    }
    Ok(CrossCheck {
        classical,
        localic_unicoherent: localic,
        closed_sets_checked,
        disagreements,
    })
}

/// Point labels `a`, `b`, ... for generated spaces.
pub fn point_labels(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| match u8::try_from(i).ok().filter(|&i| i < 26) {
            Some(i) => char::from(b'a' + i).to_string(),
            None => format!("p{i}"),
        })
        .collect()
}

/// Every labelled topology on exactly `k` points, in a fixed order.
///
/// Families of proper non-empty subsets are enumerated by bitmask; each is
/// kept when, together with the empty set and the whole space, it is closed
/// under union and intersection.
pub fn enumerate_topologies(k: usize) -> Vec<FiniteSpace> {
    assert!(k <= 4, "exhaustive generation is limited to 4 points");
    let full = ElemSet::full(k);
    let proper: Vec<ElemSet> = (1u64..(1u64 << k).saturating_sub(1))
        .map(ElemSet::from_bits)
        .collect();
    let labels = point_labels(k);
    let mut out = Vec::new();
    for family in 0u64..1 << proper.len() {
        let mut opens = vec![ElemSet::EMPTY, full];
        opens.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(i, _)| family >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        let closed = opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| opens.contains(&a.union(b)) && opens.contains(&a.intersection(b)))
        });
        if closed {
            if let Ok(space) = FiniteSpace::new(labels.clone(), opens) {
                out.push(space);
            }
        }
    }
    out
}
