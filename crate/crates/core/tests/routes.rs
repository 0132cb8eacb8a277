//! Route-level integration checks: enumerations of the element-wise
//! presentations against the orders and invariants the catalog groups are
//! known to produce.

use qtensor_core::analyze::{close_subgroup, SubgroupHandle};
use qtensor_core::coset::Strategy;
use qtensor_core::eta::{build_nu_q, build_tensor_q, NamedSubgroup};
use qtensor_core::table::{EmbeddedPair, FiniteGroupTable};

#[test]
fn nu4_d4_has_8192_cosets_and_tensor_invariants() {
    let d4 = FiniteGroupTable::dihedral(4);
    let e = build_nu_q(&d4, 4).unwrap();
    let (t, r) = e.enumerate_regular(1 << 14, Strategy::Hlt).unwrap();
    assert_eq!(t.num_cosets(), 8192);
    let ups = close_subgroup(&r, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
    assert_eq!(ups.order(), 128);
    assert_eq!(ups.abelian_invariants().unwrap().0, vec![2, 2, 2, 2, 2, 4]);
}

#[test]
fn tensor_route_q8_gives_256_with_invariants() {
    let q8 = FiniteGroupTable::quaternion(8).unwrap();
    let pair = EmbeddedPair::diagonal(q8);
    let tp = build_tensor_q(&pair, 4).unwrap();
    let (t, r) = tp.enumerate_regular(1 << 13, Strategy::Hlt).unwrap();
    assert_eq!(t.num_cosets(), 256);
    let whole = SubgroupHandle::whole(&r).unwrap();
    assert_eq!(whole.abelian_invariants().unwrap().0, vec![2, 2, 2, 2, 4, 4]);
}

#[test]
fn nu3_d5_regular_degree_1000() {
    let d5 = FiniteGroupTable::dihedral(5);
    let e = build_nu_q(&d5, 3).unwrap();
    let (t, r) = e.enumerate_regular(1 << 13, Strategy::Hlt).unwrap();
    assert_eq!(t.num_cosets(), 1000);
    let ups = close_subgroup(&r, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
    assert_eq!(ups.order(), 10);
    assert_eq!(
        ups.recognize_structure().unwrap(),
        qtensor_core::analyze::Structure::Dihedral(5)
    );
}
