mod common;

use common::{catalog_locale, catalog_space, small_spaces};
use locale_core::{frame_of_opens, ElemSet, ElementId, FiniteFrame, FrameError};

/// Open-set arithmetic done directly on point sets, independent of the
/// frame tables.
fn set_implication(opens: &[ElemSet], a: ElemSet, b: ElemSet) -> ElemSet {
    opens
        .iter()
        .filter(|w| w.intersection(a).is_subset(b))
        .fold(ElemSet::EMPTY, |acc, w| acc.union(*w))
}

#[test]
fn tables_match_point_set_operations() {
    for (name, space) in small_spaces(3) {
        let f = frame_of_opens(&space).unwrap();
        let opens = space.opens();
        for (i, &a) in opens.iter().enumerate() {
            for (j, &b) in opens.iter().enumerate() {
                let (x, y) = (ElementId(i), ElementId(j));
                assert_eq!(opens[f.meet(x, y).index()], a.intersection(b), "{name}");
                assert_eq!(opens[f.join(x, y).index()], a.union(b), "{name}");
                assert_eq!(
                    opens[f.implies(x, y).index()],
                    set_implication(opens, a, b),
                    "{name}"
                );
                assert_eq!(f.leq(x, y), a.is_subset(b), "{name}");
            }
        }
    }
}

#[test]
fn distributive_law_by_brute_force_on_pc7() {
    let l = catalog_locale("PC7");
    assert_eq!(l.len(), 7);
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                let f = l.frame();
                assert_eq!(f.meet(x, f.join(y, z)), f.join(f.meet(x, y), f.meet(x, z)));
            }
        }
    }
}

#[test]
fn implication_examples() {
    let l = catalog_locale("PC7");
    let e = |s: &str| l.element_by_label(s).unwrap();
    assert_eq!(l.implies(e("{a,b,c}"), e("{a}")), e("{a}"));
    for a in l.elements() {
        assert_eq!(l.implies(a, a), l.top());
        assert_eq!(l.implies(l.top(), a), a);
    }
}

#[test]
fn diamond_reports_the_failing_triple() {
    let err = FiniteFrame::build(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap_err();
    match err {
        FrameError::NotDistributive { x, y, z } => {
            let f = [x, y, z];
            assert!(f.iter().all(|&i| (1..=3).contains(&i)));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn frame_flags_on_fixtures() {
    let b4 = catalog_locale("B4").flags();
    assert!(!b4.connected);
    let pc7 = catalog_locale("PC7").flags();
    assert!(pc7.connected && pc7.locally_connected);
    assert!(catalog_locale("SIE").flags().normal);
}

#[test]
fn connected_element_examples() {
    let b4 = catalog_locale("B4");
    assert!(b4.is_connected_element(b4.bottom()));
    assert!(!b4.is_connected_element(b4.top()));
    let pc7 = catalog_locale("PC7");
    assert!(pc7.is_connected_element(pc7.top()));
}

/// Strong local connectedness read straight from its definition on open
/// sublocales.
#[test]
fn strong_local_connectedness_matches_definition() {
    for (name, space) in small_spaces(4) {
        let l = common::locale_of(&space);
        let definitional = l.elements().all(|u| {
            let ou = l.open(u);
            ou.members()
                .iter()
                .filter(|&x| x != l.top().index())
                .all(|x| {
                    l.elements().any(|v| {
                        let ov = l.open(v);
                        ov.contains(ElementId(x)) && ov.is_subset(ou) && l.is_connected(ov)
                    })
                })
        });
        assert_eq!(l.flags().strongly_locally_connected, definitional, "{name}");
    }
}

/// Connectedness of `L` and normality read from their definitions on the
/// sublocale side.
#[test]
fn frame_flags_match_sublocale_definitions() {
    for (name, space) in small_spaces(4) {
        let l = common::locale_of(&space);
        let flags = l.flags();
        assert_eq!(flags.connected, l.is_connected(l.full()), "{name}");
        // every element is the join of connected elements below it
        let lc = l.elements().all(|u| {
            let comps = l.components_general(l.open(u)).unwrap();
            comps.components.iter().all(|&c| l.as_open(c).is_some())
        });
        assert_eq!(flags.locally_connected, lc, "{name}");
        // disjoint closed sublocales have disjoint open neighbourhoods
        let normal = l.elements().all(|a| {
            l.elements().all(|b| {
                let (ca, cb) = (l.closed(a), l.closed(b));
                l.meets(ca, cb) || l.are_normally_separated(ca, cb)
            })
        });
        assert_eq!(flags.normal, normal, "{name}");
    }
}

#[test]
fn pseudocircle_frame_shape() {
    let space = catalog_space("PC7");
    assert_eq!(space.points().len(), 4);
    assert_eq!(space.opens().len(), 7);
    let f = frame_of_opens(&space).unwrap();
    assert_eq!(f.label(f.bottom()), "{}");
    assert_eq!(f.label(f.top()), "{a,b,c,d}");
    assert_eq!(f.primes().len(), 4);
}
