//! Built-in fixtures.

use super::instance::InstanceFile;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub file: InstanceFile,
    /// Negative fixtures are expected to be rejected on load.
    pub expect_invalid: bool,
}

fn entry(name: &'static str, file: InstanceFile) -> CatalogEntry {
    CatalogEntry {
        name,
        file,
        expect_invalid: false,
    }
}

const PC7_OPENS: [&[&str]; 7] = [
    &[],
    &["a"],
    &["b"],
    &["a", "b"],
    &["a", "b", "c"],
    &["a", "b", "d"],
    &["a", "b", "c", "d"],
];

pub fn catalog() -> Vec<CatalogEntry> {
    let mut s2 = PC7_OPENS.to_vec();
    s2.extend_from_slice(&[
        &["a", "b", "c", "d", "e"],
        &["a", "b", "c", "d", "f"],
        &["a", "b", "c", "d", "e", "f"],
    ]);
    vec![
        entry("F2", InstanceFile::space("F2", &["a"], &[&[], &["a"]])),
        entry(
            "SIE",
            InstanceFile::space("SIE", &["a", "b"], &[&[], &["a"], &["a", "b"]]),
        ),
        entry(
            "B4",
            InstanceFile::space("B4", &["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]]),
        ),
        entry(
            "PI5",
            InstanceFile::space(
                "PI5",
                &["a", "b", "c"],
                &[&[], &["b"], &["a", "b"], &["b", "c"], &["a", "b", "c"]],
            ),
        ),
        entry(
            "PC7",
            InstanceFile::space("PC7", &["a", "b", "c", "d"], &PC7_OPENS),
        ),
        entry(
            "S2_6",
            InstanceFile::space("S2_6", &["a", "b", "c", "d", "e", "f"], &s2),
        ),
        CatalogEntry {
            name: "M3",
            file: InstanceFile::frame("M3", 5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
            expect_invalid: true,
        },
    ]
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
}
