//! Single-instance analysis and its report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::instance::Instance;
use crate::bitset::ElemSet;
use crate::frame::{ElementId, FiniteFrame, FrameFlags};
use crate::lemmas::{run_lemma_suite, LemmaOutcome};
use crate::space::{cross_check, CrossCheck};
use crate::sublocale::{Locale, Sublocale, SublocaleError, DEFAULT_ENUM_CAP};
use crate::unicoherence::{
    replay_witness, verify_selected, CheckOptions, PropertyId, ReplayError, Violation, Witness,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// `None` means every property.
    pub properties: Option<Vec<PropertyId>>,
    pub max_enum: usize,
    pub check: CheckOptions,
    pub lemmas: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            properties: None,
            max_enum: DEFAULT_ENUM_CAP,
            check: CheckOptions::default(),
            lemmas: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyEntry {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl LemmaTally {
    fn from_outcomes(outcomes: &[LemmaOutcome]) -> Self {
        let mut t = LemmaTally::default();
        for o in outcomes {
            t.checks += o.checked;
            if o.skipped.is_some() {
                t.skipped += 1;
            } else if o.passed() {
                t.passed += 1;
            } else {
                t.failed += 1;
                t.failures.push(format!(
                    "{}: {}",
                    o.name,
                    o.first_failure.clone().unwrap_or_default()
                ));
            }
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub instance: String,
    pub kind: &'static str,
    pub elements: usize,
    pub preconditions: FrameFlags,
    pub properties: BTreeMap<PropertyId, PropertyEntry>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub undecided: BTreeMap<PropertyId, String>,
    pub relations_checked: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub replay_failures: Vec<String>,
    /// Witnesses whose replay would exceed the enumeration cap.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub replay_skipped: Vec<PropertyId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<LemmaTally>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    pub consistent: bool,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

impl Report {
    pub fn exit_code(&self) -> i32 {
        if !self.consistent {
            EXIT_INCONSISTENT
        } else if !self.undecided.is_empty() {
            EXIT_INCOMPLETE
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.preconditions;
        let _ = writeln!(
            out,
            "instance {} ({}, {} elements)",
            self.instance, self.kind, self.elements
        );
        let _ = writeln!(
            out,
            "  connected={} locally_connected={} strongly_locally_connected={} normal={}",
            p.connected, p.locally_connected, p.strongly_locally_connected, p.normal
        );
        for (id, e) in &self.properties {
            let verdict = if e.holds { "holds" } else { "fails" };
            match &e.explanation {
                Some(x) => {
                    let _ = writeln!(out, "  {:<5} {verdict}: {x}", id.name());
                }
                None => {
                    let _ = writeln!(out, "  {:<5} {verdict}", id.name());
                }
            }
        }
        for (id, why) in &self.undecided {
            let _ = writeln!(out, "  {:<5} undecided: {why}", id.name());
        }
        let _ = writeln!(out, "  relations checked: {}", self.relations_checked);
        for v in &self.violations {
            let _ = writeln!(out, "  VIOLATION {}: {}", v.relation, v.detail);
        }
        for r in &self.replay_failures {
            let _ = writeln!(out, "  REPLAY FAILED {r}");
        }
        if !self.replay_skipped.is_empty() {
            let ids: Vec<&str> = self.replay_skipped.iter().map(|p| p.name()).collect();
            let _ = writeln!(
                out,
                "  replay skipped (enumeration cap): {}",
                ids.join(", ")
            );
        }
        if let Some(l) = &self.lemmas {
            let _ = writeln!(
                out,
                "  lemmas: {} passed, {} failed, {} skipped ({} checks)",
                l.passed, l.failed, l.skipped, l.checks
            );
            for f in &l.failures {
                let _ = writeln!(out, "    {f}");
            }
            if let Some(e) = &l.error {
                let _ = writeln!(out, "    {e}");
            }
        }
        if let Some(c) = &self.cross_check {
            let _ = writeln!(
                out,
                "  classical unicoherent={} localic III={} ({} closed sets compared)",
                c.classical.unicoherent, c.localic_unicoherent, c.closed_sets_checked
            );
            for d in &c.disagreements {
                let _ = writeln!(out, "  DISAGREEMENT {d}");
            }
        }
        let _ = writeln!(out, "  consistent: {}", self.consistent);
        out
    }
}

fn element(f: &FiniteFrame, x: ElementId) -> String {
    f.label(x)
}

fn set(f: &FiniteFrame, s: ElemSet) -> String {
    let parts: Vec<String> = s.iter().map(|i| f.label(ElementId(i))).collect();
    format!("[{}]", parts.join(", "))
}

fn sub(f: &FiniteFrame, s: Sublocale) -> String {
    set(f, s.members())
}

/// The witness in terms of element labels.
pub fn explain_witness(f: &FiniteFrame, w: &Witness) -> String {
    let e = |x: &ElementId| element(f, *x);
    match w {
        Witness::PointSeparation { u, v, x, y } => format!(
            "c({}) ∨ c({}) separates {} from {}; neither part does",
            e(u),
            e(v),
            e(x),
            e(y)
        ),
        Witness::SetSeparation { u, v, xs, ys } => format!(
            "c({}) ∨ c({}) separates {} from {}; neither part separates any pair",
            e(u),
            e(v),
            set(f, *xs),
            set(f, *ys)
        ),
        Witness::LocaleSeparation { u, v } => {
            format!("c({}) ∨ c({}) separates L; neither part does", e(u), e(v))
        }
        Witness::ComponentBoundary {
            u,
            component,
            boundary,
        } => format!(
            "component {} of o({}) has boundary {}, not a continuum",
            sub(f, *component),
            e(u),
            sub(f, *boundary)
        ),
        Witness::ContinuumPair { u, v } => format!(
            "continua c({}), c({}) cover L; their intersection is not a continuum",
            e(u),
            e(v)
        ),
        Witness::CommonBoundary { u, first, second } => format!(
            "components {} and {} of o({}) share a boundary that is not a continuum",
            sub(f, *first),
            sub(f, *second),
            e(u)
        ),
        Witness::SublocalePair { first, second } => format!(
            "bd {} lies in bd {} and is disconnected",
            sub(f, *first),
            sub(f, *second)
        ),
        Witness::SimpleSublocale { sublocale } => {
            format!("simple {} has a disconnected boundary", sub(f, *sublocale))
        }
        Witness::RegionPair { u, v } => format!("regions o({}), o({})", e(u), e(v)),
        Witness::UnseparatedPoints { u, v, x, y } => format!(
            "no continuum inside o({} ∧ {}) separates {} from {}",
            e(u),
            e(v),
            e(x),
            e(y)
        ),
        Witness::UnseparatedSets { u, v, xs, ys } => format!(
            "no continuum inside o({} ∧ {}) separates a point of {} from one of {}",
            e(u),
            e(v),
            set(f, *xs),
            set(f, *ys)
        ),
    }
}

/// Runs the requested properties, the relation checks, witness replay, the
/// lemma suite and, for spaces, the classical comparison.
pub fn run_analysis(instance: &Instance, options: &AnalysisOptions) -> Report {
    let locale = Locale::with_enum_cap(instance.frame.clone(), options.max_enum);
    let properties = options
        .properties
        .clone()
        .unwrap_or_else(|| PropertyId::ALL.to_vec());
    let eq = verify_selected(&locale, &properties, options.check);

    let mut replay_failures = Vec::new();
    let mut replay_skipped = Vec::new();
    let mut entries = BTreeMap::new();
    for (id, r) in &eq.verdicts {
        if !r.holds {
            match replay_witness(&locale, r) {
                Ok(()) => {}
                Err(ReplayError::Sublocale(SublocaleError::EnumerationCapExceeded { .. })) => {
                    replay_skipped.push(*id)
                }
                Err(e) => replay_failures.push(format!("{id}: {e}")),
            }
        }
        entries.insert(
            *id,
            PropertyEntry {
                holds: r.holds,
                witness: r.witness.clone(),
                explanation: r
                    .witness
                    .as_ref()
                    .map(|w| explain_witness(locale.frame(), w)),
            },
        );
    }

    let lemmas = options.lemmas.then(|| match run_lemma_suite(&locale) {
        Ok(r) => LemmaTally::from_outcomes(&r.outcomes),
        Err(e) => LemmaTally {
            error: Some(e.to_string()),
            ..LemmaTally::default()
        },
    });

    let cross = instance.space.as_ref().map(|s| {
        cross_check(s).unwrap_or_else(|e| CrossCheck {
            classical: crate::space::classical_unicoherent(s),
            localic_unicoherent: false,
            closed_sets_checked: 0,
            disagreements: vec![format!("cross check could not run: {e}")],
        })
    });

    let consistent = eq.consistent
        && replay_failures.is_empty()
        && lemmas.as_ref().is_none_or(|l| l.failed == 0)
        && cross.as_ref().is_none_or(CrossCheck::agrees);

    Report {
        instance: instance.name.clone(),
        kind: if instance.space.is_some() {
            "space"
        } else {
            "frame"
        },
        elements: instance.frame.len(),
        preconditions: eq.preconditions,
        properties: entries,
        undecided: eq.undecided,
        relations_checked: eq.checked.len(),
        violations: eq.violations,
        replay_failures,
        replay_skipped,
        lemmas,
        cross_check: cross,
        consistent,
    }
}
