#![allow(dead_code)]

use locale_core::harness::{catalog, Instance};
use locale_core::{enumerate_topologies, frame_of_opens, FiniteSpace, Locale};

pub fn catalog_instances() -> Vec<Instance> {
    catalog()
        .into_iter()
        .filter(|e| !e.expect_invalid)
        .map(|e| e.file.build(e.name).unwrap())
        .collect()
}

pub fn catalog_locale(name: &str) -> Locale {
    let inst = catalog_instances()
        .into_iter()
        .find(|i| i.name == name)
        .unwrap();
    Locale::new(inst.frame)
}

pub fn catalog_space(name: &str) -> FiniteSpace {
    catalog_instances()
        .into_iter()
        .find(|i| i.name == name)
        .unwrap()
        .space
        .unwrap()
}

/// Catalog spaces plus every topology on up to `k` points.
pub fn small_spaces(k: usize) -> Vec<(String, FiniteSpace)> {
    let mut out: Vec<(String, FiniteSpace)> = catalog_instances()
        .into_iter()
        .map(|i| (i.name, i.space.unwrap()))
        .collect();
    for pts in 1..=k {
        for (i, s) in enumerate_topologies(pts).into_iter().enumerate() {
            out.push((format!("T{pts}_{i}"), s));
        }
    }
    out
}

pub fn locale_of(space: &FiniteSpace) -> Locale {
    Locale::new(frame_of_opens(space).unwrap())
}
