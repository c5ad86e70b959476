//! Theorem sweeps over populations of instances.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::catalog;
use super::instance::{load_instance, Instance, InstanceError};
use super::report::{
    run_analysis, AnalysisOptions, Report, EXIT_INCOMPLETE, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK,
};
use crate::space::enumerate_topologies;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteSource {
    Catalog,
    Dir(PathBuf),
    /// Every labelled topology on exactly this many points.
    Generate(usize),
}

impl SuiteSource {
    fn describe(&self) -> String {
        match self {
            SuiteSource::Catalog => "catalog".to_string(),
            SuiteSource::Dir(p) => format!("dir {}", p.display()),
            SuiteSource::Generate(k) => format!("topologies on {k} points"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PreconditionCounts {
    pub connected: usize,
    pub locally_connected: usize,
    pub strongly_locally_connected: usize,
    pub normal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub instance: String,
    pub error: String,
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub source: String,
    pub instances: usize,
    pub preconditions: PreconditionCounts,
    pub consistent_instances: usize,
    pub inconsistent: Vec<String>,
    pub incomplete: Vec<String>,
    pub rejected: Vec<Rejection>,
    pub lemma_checks: usize,
    pub lemma_failures: usize,
    pub classical_disagreements: usize,
    pub reports: Vec<Report>,
    pub consistent: bool,
}

impl SuiteSummary {
    pub fn exit_code(&self) -> i32 {
        if !self.consistent {
            EXIT_INCONSISTENT
        } else if self.rejected.iter().any(|r| !r.expected) {
            EXIT_INPUT
        } else if !self.incomplete.is_empty() {
            EXIT_INCOMPLETE
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "theorem suite over {}: {} instances\n",
            self.source, self.instances
        ));
        let p = &self.preconditions;
        out.push_str(&format!(
            "  connected {}  locally connected {}  strongly locally connected {}  normal {}\n",
            p.connected, p.locally_connected, p.strongly_locally_connected, p.normal
        ));
        out.push_str(&format!(
            "  consistent {}/{}  lemma checks {} ({} failing lemmas)  classical disagreements {}\n",
            self.consistent_instances,
            self.instances,
            self.lemma_checks,
            self.lemma_failures,
            self.classical_disagreements
        ));
        for r in &self.rejected {
            let tag = if r.expected {
                "rejected (expected)"
            } else {
                "REJECTED"
            };
            out.push_str(&format!("  {tag} {}: {}\n", r.instance, r.error));
        }
        for name in &self.incomplete {
            out.push_str(&format!("  incomplete {name}\n"));
        }
        for report in self.reports.iter().filter(|r| !r.consistent) {
            out.push_str(&report.to_text());
        }
        out.push_str(&format!(
            "  result: {}\n",
            if self.consistent {
                "consistent"
            } else {
                "INCONSISTENT"
            }
        ));
        out
    }
}

enum Loaded {
    Ok(Instance),
    Rejected(Rejection),
}

fn load_population(source: &SuiteSource) -> Result<Vec<Loaded>, InstanceError> {
    match source {
        SuiteSource::Catalog => Ok(catalog()
            .into_iter()
            .map(|e| match e.file.build(e.name) {
                Ok(i) if !e.expect_invalid => Loaded::Ok(i),
                Ok(_) => Loaded::Rejected(Rejection {
                    instance: e.name.to_string(),
                    error: "negative fixture was accepted".to_string(),
                    expected: false,
                }),
                Err(err) => Loaded::Rejected(Rejection {
                    instance: e.name.to_string(),
                    error: err.to_string(),
                    expected: e.expect_invalid,
                }),
            })
            .collect()),
        SuiteSource::Dir(dir) => {
            let mut paths: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(|source| InstanceError::Io {
                    path: dir.clone(),
                    source,
                })?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            Ok(paths.iter().map(|p| load_path(p)).collect())
        }
        SuiteSource::Generate(k) => Ok(enumerate_topologies(*k)
            .into_iter()
            .enumerate()
            .map(|(i, space)| {
                let frame =
                    crate::space::frame_of_opens(&space).expect("open-set lattices are frames");
                Loaded::Ok(Instance {
                    name: format!("T{k}_{i:03}"),
                    space: Some(space),
                    frame,
                })
            })
            .collect()),
    }
}

fn load_path(p: &Path) -> Loaded {
    match load_instance(p) {
        Ok(i) => Loaded::Ok(i),
        Err(e) => Loaded::Rejected(Rejection {
            instance: p.display().to_string(),
            error: e.to_string(),
            expected: false,
        }),
    }
}

/// Analyzes every instance of the population concurrently and merges the
/// reports in input order.
pub fn run_theorem_suite(
    source: &SuiteSource,
    options: &AnalysisOptions,
) -> Result<SuiteSummary, InstanceError> {
    let population = load_population(source)?;
    let mut rejected = Vec::new();
    let mut instances = Vec::new();
    for l in population {
        match l {
            Loaded::Ok(i) => instances.push(i),
            Loaded::Rejected(r) => rejected.push(r),
        }
    }
    let reports: Vec<Report> = instances
        .par_iter()
        .map(|i| run_analysis(i, options))
        .collect();

    let mut pre = PreconditionCounts::default();
    for r in &reports {
        let f = &r.preconditions;
        pre.connected += usize::from(f.connected);
        pre.locally_connected += usize::from(f.locally_connected);
        pre.strongly_locally_connected += usize::from(f.strongly_locally_connected);
        pre.normal += usize::from(f.normal);
    }
    let inconsistent: Vec<String> = reports
        .iter()
        .filter(|r| !r.consistent)
        .map(|r| r.instance.clone())
        .collect();
    let incomplete = reports
        .iter()
        .filter(|r| !r.undecided.is_empty())
        .map(|r| r.instance.clone())
        .collect();
    let lemma_checks = reports
        .iter()
        .filter_map(|r| r.lemmas.as_ref())
        .map(|l| l.checks)
        .sum();
    let lemma_failures = reports
        .iter()
        .filter_map(|r| r.lemmas.as_ref())
        .map(|l| l.failed)
        .sum();
    let classical_disagreements = reports
        .iter()
        .filter_map(|r| r.cross_check.as_ref())
        .map(|c| c.disagreements.len())
        .sum();
    let consistent = inconsistent.is_empty();

    Ok(SuiteSummary {
        source: source.describe(),
        instances: reports.len(),
        preconditions: pre,
        consistent_instances: reports.len() - inconsistent.len(),
        inconsistent,
        incomplete,
        rejected,
        lemma_checks,
        lemma_failures,
        classical_disagreements,
        reports,
        consistent,
    })
}
