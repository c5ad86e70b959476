mod common;

use common::{catalog_space, locale_of};
use locale_core::{
    classical_connected, classical_unicoherent, cross_check, enumerate_topologies, validate_space,
    ElemSet, ElementId, FiniteSpace, SpaceError,
};

/// Point-set oracle written against raw subsets: a set is closed when its
/// complement is listed among the opens, and connected when no split into
/// two non-empty relatively closed parts exists.
fn closed_sets(space: &FiniteSpace) -> Vec<ElemSet> {
    space
        .opens()
        .iter()
        .map(|&u| space.full().minus(u))
        .collect()
}

fn connected_by_closed_split(space: &FiniteSpace, s: ElemSet) -> bool {
    let closed = closed_sets(space);
    let relative: Vec<ElemSet> = closed.iter().map(|f| f.intersection(s)).collect();
    !relative
        .iter()
        .any(|&a| !a.is_empty() && a != s && relative.contains(&s.minus(a)))
}

fn brute_unicoherent(space: &FiniteSpace) -> bool {
    let continua: Vec<ElemSet> = closed_sets(space)
        .into_iter()
        .filter(|&f| !f.is_empty() && connected_by_closed_split(space, f))
        .collect();
    continua.iter().all(|&h| {
        continua.iter().all(|&k| {
            let m = h.intersection(k);
            h.union(k) != space.full() || (!m.is_empty() && connected_by_closed_split(space, m))
        })
    })
}

#[test]
fn topology_counts() {
    let counts: Vec<usize> = (0..=4).map(|k| enumerate_topologies(k).len()).collect();
    assert_eq!(counts, vec![1, 1, 4, 29, 355]);
}

#[test]
fn connectedness_oracles_agree() {
    for k in 0..=3 {
        for space in enumerate_topologies(k) {
            for bits in 0u64..1 << k {
                let s = ElemSet::from_bits(bits);
                assert_eq!(
                    classical_connected(&space, s),
                    connected_by_closed_split(&space, s)
                );
            }
        }
    }
}

#[test]
fn unicoherence_oracles_agree_up_to_four_points() {
    for k in 0..=4 {
        for space in enumerate_topologies(k) {
            assert_eq!(
                classical_unicoherent(&space).unicoherent,
                brute_unicoherent(&space)
            );
        }
    }
}

#[test]
fn classical_and_localic_agree_up_to_four_points() {
    let mut checked = 0;
    for k in 1..=4 {
        for space in enumerate_topologies(k) {
            let c = cross_check(&space).unwrap();
            assert!(c.agrees(), "{:?}: {:?}", space.opens(), c.disagreements);
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 4 + 29 + 355);
}

#[test]
fn closed_continua_correspond() {
    for name in ["SIE", "PI5", "PC7", "S2_6"] {
        let space = catalog_space(name);
        let l = locale_of(&space);
        for (i, &u) in space.opens().iter().enumerate() {
            let f = space.full().minus(u);
            let classical = !f.is_empty() && connected_by_closed_split(&space, f);
            assert_eq!(l.is_continuum(l.closed(ElementId(i))), classical, "{name}");
        }
    }
}

#[test]
fn pseudocircle_is_not_unicoherent() {
    let pc7 = catalog_space("PC7");
    assert!(!brute_unicoherent(&pc7));
    let v = classical_unicoherent(&pc7);
    let (h, k) = v.witness.unwrap();
    assert_eq!(h.union(k), pc7.full());
    assert!(!classical_connected(&pc7, h.intersection(k)));
    for name in ["F2", "SIE", "PI5", "S2_6"] {
        assert!(brute_unicoherent(&catalog_space(name)), "{name}");
    }
}

#[test]
fn validation_errors() {
    let pts = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let opens = |v: &[&[&str]]| v.iter().map(|o| pts(o)).collect::<Vec<_>>();
    assert!(matches!(
        validate_space(&pts(&["a", "a"]), &opens(&[&[], &["a"]])),
        Err(SpaceError::DuplicatePoint(_))
    ));
    assert!(matches!(
        validate_space(&pts(&["a", "b"]), &opens(&[&[], &["c"], &["a", "b"]])),
        Err(SpaceError::UnknownPoint { .. })
    ));
    assert!(matches!(
        validate_space(&pts(&["a"]), &opens(&[&["a"]])),
        Err(SpaceError::MissingEmptyOrFull)
    ));
    assert!(matches!(
        validate_space(
            &pts(&["a", "b", "c"]),
            &opens(&[&[], &["a"], &["b"], &["a", "b", "c"]])
        ),
        Err(SpaceError::NotClosedUnderUnion { .. })
    ));
    assert!(validate_space(
        &pts(&["a", "b", "c"]),
        &opens(&[&[], &["a", "b"], &["b", "c"], &["b"], &["a", "b", "c"]])
    )
    .is_ok());
    assert!(matches!(
        validate_space(
            &pts(&["a", "b", "c"]),
            &opens(&[&[], &["a", "b"], &["b", "c"], &["a", "b", "c"]])
        ),
        Err(SpaceError::NotClosedUnderIntersection { .. })
    ));
}
