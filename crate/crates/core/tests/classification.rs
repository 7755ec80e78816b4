use std::path::PathBuf;

use genus2::binform::{pullback, BinaryForm};
use genus2::bolza::{classify_all, differential_rep, CurveAction};
use genus2::covers::AzioniTable;
use genus2::golden::{self, ExtendableTable, LiftingTable};
use genus2::matgroup::{project_to_pgl, GL2Element};
use genus2::CycNum;

fn tables() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tables")
}

fn all_actions() -> Vec<CurveAction> {
    let c = classify_all().unwrap();
    c.extendable.into_iter().chain(c.non_extendable).chain(c.elliptic_liftings).collect()
}

#[test]
fn counts() {
    let c = classify_all().unwrap();
    assert_eq!((c.extendable.len(), c.non_extendable.len(), c.elliptic_liftings.len()), (15, 6, 2));
    assert!(c.couples().iter().all(|a| a.quotient_genus == 0));
}

#[test]
fn every_element_scales_beta_by_det_squared() {
    for a in all_actions() {
        for g in a.group.elements() {
            let d = g.det();
            assert_eq!(pullback(g, &a.beta), a.beta.scale(&(&d * &d)), "{} {}", a.klein, a.group_label());
        }
    }
}

#[test]
fn minus_identity_is_central_in_extendable_groups() {
    let minus = GL2Element::scalar(CycNum::from_int(-1));
    for a in classify_all().unwrap().extendable {
        assert!(a.group.contains(&minus));
        for g in a.group.elements() {
            assert_eq!(g.mul(&minus), minus.mul(g));
        }
    }
}

#[test]
fn differential_rep_has_dimension_two_and_trivial_part_equal_to_quotient_genus() {
    for a in all_actions() {
        let d = differential_rep(&a);
        assert_eq!(d.dimension(), 2);
        assert_eq!(d.trivial_multiplicity(), a.quotient_genus);
    }
}

/// Every scalar multiple `t·L` of a lift of an element of `K` that preserves the curve lies in `G`,
/// and there are exactly `|G|` of them.
#[test]
fn extendable_group_is_unique() {
    let scalars: Vec<CycNum> = (0..48).map(|k| CycNum::root_of_unity(48, k)).collect();
    for a in classify_all().unwrap().extendable {
        let k = project_to_pgl(&a.group);
        let mut found = 0;
        for l in k.lifts() {
            for t in &scalars {
                let g = l.scale(t);
                let d = g.det();
                if pullback(&g, &a.beta) == a.beta.scale(&(&d * &d)) {
                    assert!(a.group.contains(&g), "{} {}: {g:?}", a.klein, a.group_label());
                    found += 1;
                }
            }
        }
        assert_eq!(found, a.group.order(), "{} {}", a.klein, a.group_label());
    }
}

#[test]
fn extendable_forms_are_reduced() {
    let t: ExtendableTable = golden::load(&tables().join("table3.json")).unwrap();
    for row in t.rows.iter().filter_map(|r| r.beta.as_ref()) {
        let c: Vec<CycNum> = row.iter().map(|s| s.parse().unwrap()).collect();
        assert!(BinaryForm::new(c).is_reduced(), "{row:?}");
    }
    for a in all_actions() {
        assert!(a.beta.is_reduced());
    }
}

#[test]
fn reference_tables_parse() {
    let t: ExtendableTable = golden::load(&tables().join("table3.json")).unwrap();
    assert_eq!(t.rows.len(), 15);
    let l: LiftingTable = golden::load(&tables().join("trefolds.json")).unwrap();
    assert_eq!(l.rows.len(), 6);
    let z: AzioniTable = golden::load(&tables().join("azioni.json")).unwrap();
    assert_eq!(z.rows.len(), 28);
}

#[test]
fn cyclic_liftings_match_reference_subgroups() {
    let c = classify_all().unwrap();
    let l: LiftingTable = golden::load(&tables().join("trefolds.json")).unwrap();
    let cyclic = LiftingTable { rows: l.rows.into_iter().filter(|r| r.k_label.starts_with('Z')).collect() };
    let computed: Vec<CurveAction> = c.non_extendable.into_iter().filter(|a| a.klein.label().starts_with('Z')).collect();
    assert_eq!(golden::diff_liftings(&computed, &cyclic).unwrap(), vec![]);
}

#[test]
fn rows_without_known_conflicts_match_reference() {
    let c = classify_all().unwrap();
    let t: ExtendableTable = golden::load(&tables().join("table3.json")).unwrap();
    let diff = golden::diff_extendable(&c.extendable, &t).unwrap();
    for label in ["Z6 ", "Z5 ", "Z4 ", "Z3 ", "id ", "D4 ", "D3 ", "A4 ", "S4 "] {
        assert!(diff.iter().all(|d| !d.row.starts_with(label)), "{label}: {diff:?}");
    }
}
