//! Computational kernel for q-tensor and q-exterior squares of finite groups.
//!
//! Two independent construction routes are provided and cross-validated:
//!
//! * an exact finite-presentation route: element-wise presentations of the
//!   groups `nu_q(G)`, `eta_q(G, H)` and `tau_q(G, H)` enumerated with
//!   Todd-Coxeter ([`eta`], [`coset`], [`analyze`]);
//! * a polycyclic route: the q-central extension `E_q(G)` built from a
//!   consistent polycyclic presentation by collection, consistency checking
//!   and integer lattice reduction, from which the q-exterior square is read
//!   off as the derived-and-q-th-power subgroup ([`pc`], [`eqext`]).
//!
//! The [`claims`] module packages the structural facts both routes are
//! expected to satisfy as a deterministic pass/fail harness over the group
//! [`catalog`].

pub mod analyze;
pub mod catalog;
pub mod claims;
pub mod coset;
pub mod eqext;
pub mod error;
pub mod eta;
pub mod fp;
pub mod pc;
pub mod perm;
pub mod report;
pub mod snf;
pub mod table;
pub mod word;

pub use analyze::{AbelianInvariants, GroupHom, Structure, SubgroupHandle};
pub use coset::{CosetTable, EnumerationStatus, Strategy};
pub use eqext::EqExtension;
pub use error::Error;
pub use eta::{EtaKind, EtaPresentation, NamedSubgroup};
pub use fp::FpPresentation;
pub use pc::{NormalWord, PcPresentation};
pub use perm::{Perm, PermGroup, RegularGroup};
pub use report::{ClaimResult, GroupReport, Verdict};
pub use snf::{smith_normal_form, IntMatrix, SnfDecomposition};
pub use table::{EmbeddedPair, FiniteGroupTable};
pub use word::Word;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
