//! Shared fixtures for the kernel benchmarks.

use qtensor_core::pc::{NormalWord, PcPresentation};

/// The dihedral pc presentation `<g1, g2 | g1^2, g2^g1 = g2^(n-1), g2^n>`.
pub fn dihedral_pc(n: u64) -> PcPresentation {
    let mut p = PcPresentation::new(2);
    p.set_power(0, 2, NormalWord::identity()).unwrap();
    p.set_power(1, n, NormalWord::identity()).unwrap();
    p.set_conj(1, 0, NormalWord(vec![(1, n as i64 - 1)])).unwrap();
    p.finalize().unwrap();
    p
}
