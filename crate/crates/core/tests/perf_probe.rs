use qtensor_core::coset::Strategy;
use qtensor_core::eta::{build_nu_q, build_tau_q};
use qtensor_core::table::{EmbeddedPair, FiniteGroupTable};

#[test]
fn profile_nu2_modular16() {
    let t = FiniteGroupTable::modular16();
    let t0 = std::time::Instant::now();
    let e = build_nu_q(&t, 2).unwrap();
    let built = t0.elapsed();
    let nrel = e.fp().relators().len();
    let letters: usize = e.fp().relators().iter().map(|r| r.len()).sum();
    let t1 = std::time::Instant::now();
    let (ct, _r) = e.enumerate_regular(1 << 18, Strategy::Hlt).unwrap();
    eprintln!(
        "nu2(mod16): build {built:?}, {nrel} relators / {letters} letters, enumerate {:?} -> {} cosets",
        t1.elapsed(),
        ct.num_cosets()
    );
}

#[test]
fn profile_tau9_d10() {
    let t = FiniteGroupTable::dihedral(10);
    let e = build_tau_q(&EmbeddedPair::diagonal(t), 9).unwrap();
    let letters: usize = e.fp().relators().iter().map(|r| r.len()).sum();
    let t1 = std::time::Instant::now();
    let (ct, _r) = e.enumerate_regular(1 << 18, Strategy::Hlt).unwrap();
    eprintln!(
        "tau9(D10): {} relators / {letters} letters, enumerate {:?} -> {} cosets",
        e.fp().relators().len(),
        t1.elapsed(),
        ct.num_cosets()
    );
}
