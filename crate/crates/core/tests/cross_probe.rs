use qtensor_core::analyze::close_subgroup;
use qtensor_core::catalog;
use qtensor_core::coset::Strategy;
use qtensor_core::eqext::exterior_square_pc;
use qtensor_core::eta::{build_tau_q, NamedSubgroup};
use qtensor_core::table::{EmbeddedPair, FiniteGroupTable};

fn cross(spec: &str, q: u32) {
    let entry = catalog::entry(spec).unwrap();
    let (pc_report, w) = exterior_square_pc(&entry.pc, q).unwrap();
    let t = FiniteGroupTable::from_spec(spec).unwrap();
    let e = build_tau_q(&EmbeddedPair::diagonal(t), q).unwrap();
    let (_, reg) = e.enumerate_regular(1 << 16, Strategy::Hlt).unwrap();
    let image =
        close_subgroup(&reg, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
    eprintln!(
        "{spec} q={q}: pc |W| = {} ({}), enum |Ups/Delta| = {} ({})",
        w.order(),
        pc_report.structure,
        image.order(),
        image.recognize_structure().unwrap()
    );
    assert_eq!(w.order(), image.order(), "{spec} q={q}");
}

#[test]
fn spot_cases() {
    cross("dihedral:4", 2);
    cross("dihedral:3", 2);
    cross("cyclic:4", 2);
    cross("cyclic:6", 4);
    cross("quaternion:8", 2);
    cross("abelian:[2,2]", 2);
}
