//! Element-wise finite presentations of the groups `nu_q(G)`,
//! `eta_q(G, H)`, `tau_q(G, H)` and of the q-tensor product itself, built
//! from concrete multiplication tables.
//!
//! One generator per group element: the G-copy `g<i>`, the phi-copy `p<i>`
//! and, for q >= 1, one hat generator `k<i>` per element of K = G n H. The
//! relator families are instantiated exhaustively over element tuples, in
//! lexicographic (family, element indices) order, so presentations are
//! deterministic and serve as the trusted oracle for the polycyclic route.
//! Exactness comes at the price of size, which is fine at the scales the
//! catalog works with.

use crate::analyze::GroupHom;
use crate::coset::{self, CosetTable, Strategy};
use crate::error::Error;
use crate::fp::FpPresentation;
use crate::perm::RegularGroup;
use crate::table::{EmbeddedPair, FiniteGroupTable};
use crate::word::Word;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaKind {
    /// `eta_q(G, G)` with G = H = L.
    Nu,
    /// `eta_q(G, H)` for a normally embedded pair.
    Eta,
    /// `tau_q(G, H) = eta_q / Delta_q`.
    Tau,
}

/// Which generator family an fp generator belongs to, with its L-element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenTag {
    GCopy(u32),
    HPhi(u32),
    Hat(u32),
}

/// Named generating sets of distinguished subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSubgroup {
    /// `[G, H^phi] K`, isomorphic to the q-tensor product.
    Upsilon,
    /// `T = [G, H^phi]`.
    T,
    /// The subgroup generated by the hat elements.
    K,
    /// `Delta_q = <[k, k^phi]>`.
    Delta,
    /// The subgroup generated by both element copies.
    GHphi,
    /// Left-normed commutators of the given weight in all generators.
    Gamma(u32),
}

/// An element-wise presentation of `eta_q`, `nu_q` or `tau_q`.
#[derive(Clone, Debug)]
pub struct EtaPresentation {
    fp: FpPresentation,
    tags: Vec<GenTag>,
    kind: EtaKind,
    q: u32,
    pair: EmbeddedPair,
}

impl EtaPresentation {
    pub fn fp(&self) -> &FpPresentation {
        &self.fp
    }

    pub fn kind(&self) -> EtaKind {
        self.kind
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pair(&self) -> &EmbeddedPair {
        &self.pair
    }

    pub fn tags(&self) -> &[GenTag] {
        &self.tags
    }

    pub fn ngens(&self) -> usize {
        self.fp.ngens()
    }

    fn pos_in(set: &[u32], elem: u32) -> usize {
        set.binary_search(&elem).expect("element belongs to the subgroup")
    }

    /// The G-copy generator of an element of G.
    pub fn g_word(&self, elem: u32) -> Word {
        Word::gen(Self::pos_in(self.pair.g_elements(), elem))
    }

    /// The H-phi generator of an element of H.
    pub fn h_word(&self, elem: u32) -> Word {
        Word::gen(self.pair.g_elements().len() + Self::pos_in(self.pair.h_elements(), elem))
    }

    /// The hat generator of an element of K (q >= 1 only).
    pub fn hat_word(&self, elem: u32) -> Word {
        debug_assert!(self.q >= 1, "no hat generators at q = 0");
        Word::gen(
            self.pair.g_elements().len()
                + self.pair.h_elements().len()
                + Self::pos_in(self.pair.k_elements(), elem),
        )
    }

    /// `[g, h^phi]` as a word.
    pub fn tensor_comm(&self, g: u32, h: u32) -> Word {
        Word::commutator(&self.g_word(g), &self.h_word(h))
    }

    /// Generating words of a named subgroup.
    pub fn named_subgroup_words(&self, which: NamedSubgroup) -> Result<Vec<Word>, Error> {
        let l = self.pair.overgroup();
        let mut words = Vec::new();
        match which {
            NamedSubgroup::T => {
                for &g in self.pair.g_elements() {
                    for &h in self.pair.h_elements() {
                        words.push(self.tensor_comm(g, h));
                    }
                }
            }
            NamedSubgroup::K => {
                if self.q >= 1 {
                    for &k in self.pair.k_elements() {
                        words.push(self.hat_word(k));
                    }
                }
            }
            NamedSubgroup::Upsilon => {
                words.extend(self.named_subgroup_words(NamedSubgroup::T)?);
                words.extend(self.named_subgroup_words(NamedSubgroup::K)?);
            }
            NamedSubgroup::Delta => {
                for &k in self.pair.k_elements() {
                    words.push(Word::commutator(&self.g_word(k), &self.h_word(k)));
                }
            }
            NamedSubgroup::GHphi => {
                for &g in self.pair.g_elements() {
                    if g != l.identity() {
                        words.push(self.g_word(g));
                    }
                }
                for &h in self.pair.h_elements() {
                    if h != l.identity() {
                        words.push(self.h_word(h));
                    }
                }
            }
            NamedSubgroup::Gamma(j) => {
                if j < 1 {
                    return Err(Error::InvalidArgument(
                        "lower central weight must be at least 1".into(),
                    ));
                }
                let gens: Vec<Word> = (0..self.fp.ngens()).map(Word::gen).collect();
                let mut layer: Vec<Word> = gens.clone();
                for _ in 1..j {
                    let mut next = Vec::with_capacity(layer.len() * gens.len());
                    for w in &layer {
                        for g in &gens {
                            next.push(Word::commutator(w, g));
                        }
                    }
                    layer = next;
                }
                words = layer;
            }
        }
        Ok(words)
    }

    /// Enumerate over the trivial subgroup and wrap the regular
    /// representation.
    pub fn enumerate_regular(
        &self,
        max_cosets: usize,
        strategy: Strategy,
    ) -> Result<(CosetTable, Arc<RegularGroup>), Error> {
        let t = coset::enumerate(&self.fp, &[], max_cosets, strategy)?;
        if !t.is_complete() {
            return Err(Error::ExceededLimit { max_cosets });
        }
        let r = Arc::new(RegularGroup::from_coset_table(&t)?);
        Ok((t, r))
    }

    /// Number of relator instances before free reduction and
    /// deduplication, per the closed-form counting formulas.
    pub fn relator_instances(&self) -> u64 {
        let ng = self.pair.g_elements().len() as u64;
        let nh = self.pair.h_elements().len() as u64;
        let nk = self.pair.k_elements().len() as u64;
        let mut count = ng * ng + nh * nh + ng * ng * nh + ng * nh * nh;
        if self.q >= 1 {
            count += nk * ng + nk * nh + nk * ng * nh + nk * nk + nk * nk + ng * nh;
        }
        if self.kind == EtaKind::Tau {
            count += nk;
        }
        count
    }
}

fn gen_names_for(pair: &EmbeddedPair, q: u32) -> Vec<String> {
    let mut names = Vec::new();
    for &g in pair.g_elements() {
        names.push(format!("g{}", g + 1));
    }
    for &h in pair.h_elements() {
        names.push(format!("p{}", h + 1));
    }
    if q >= 1 {
        for &k in pair.k_elements() {
            names.push(format!("k{}", k + 1));
        }
    }
    names
}

/// Build the element-wise presentation of `eta_q(G, H)` for a normally
/// embedded pair, with all actions by conjugation in the overgroup.
pub fn build_eta_q(pair: &EmbeddedPair, q: u32) -> Result<EtaPresentation, Error> {
    build_kind(pair.clone(), q, EtaKind::Eta)
}

/// `nu_q(G) = eta_q(G, G)` with G = H = L.
pub fn build_nu_q(table: &FiniteGroupTable, q: u32) -> Result<EtaPresentation, Error> {
    let mut e = build_kind(EmbeddedPair::diagonal(table.clone()), q, EtaKind::Eta)?;
    e.kind = EtaKind::Nu;
    Ok(e)
}

/// `tau_q(G, H) = eta_q(G, H) / Delta_q`: the eta presentation plus one
/// relator `[k, k^phi]` per element of K.
pub fn build_tau_q(pair: &EmbeddedPair, q: u32) -> Result<EtaPresentation, Error> {
    build_kind(pair.clone(), q, EtaKind::Tau)
}

fn build_kind(pair: EmbeddedPair, q: u32, kind: EtaKind) -> Result<EtaPresentation, Error> {
    let fp = FpPresentation::new(gen_names_for(&pair, q))?;
    let mut e = EtaPresentation { fp, tags: Vec::new(), kind, q, pair };
    let l = e.pair.overgroup().clone();
    let (gs, hs, ks) =
        (e.pair.g_elements().to_vec(), e.pair.h_elements().to_vec(), e.pair.k_elements().to_vec());
    for &g in &gs {
        e.tags.push(GenTag::GCopy(g));
    }
    for &h in &hs {
        e.tags.push(GenTag::HPhi(h));
    }
    if q >= 1 {
        for &k in &ks {
            e.tags.push(GenTag::Hat(k));
        }
    }

    let rel = |w: Word, fp: &mut FpPresentation| fp.push_relator(w);
    let mut fp = std::mem::replace(&mut e.fp, FpPresentation::new(vec![]).unwrap());

    // Family 1/2: both multiplication tables.
    for &a in &gs {
        for &b in &gs {
            let w = e.g_word(a).concat(&e.g_word(b)).concat(&e.g_word(l.mul(a, b)).inverse());
            rel(w, &mut fp)?;
        }
    }
    for &a in &hs {
        for &b in &hs {
            let w = e.h_word(a).concat(&e.h_word(b)).concat(&e.h_word(l.mul(a, b)).inverse());
            rel(w, &mut fp)?;
        }
    }
    // Family 3: s1(x, y, x1) = [x, y^phi]^x1 * [x^x1, (y^x1)^phi]^-1.
    for &x in &gs {
        for &y in &hs {
            for &x1 in &gs {
                let lhs = e.tensor_comm(x, y).conjugate(&e.g_word(x1));
                let rhs = e.tensor_comm(l.conj(x, x1), l.conj(y, x1));
                rel(lhs.concat(&rhs.inverse()), &mut fp)?;
            }
        }
    }
    // Family 4: s2(x, y, y1) = [x, y^phi]^(y1^phi) * [x^y1, (y^y1)^phi]^-1.
    for &x in &gs {
        for &y in &hs {
            for &y1 in &hs {
                let lhs = e.tensor_comm(x, y).conjugate(&e.h_word(y1));
                let rhs = e.tensor_comm(l.conj(x, y1), l.conj(y, y1));
                rel(lhs.concat(&rhs.inverse()), &mut fp)?;
            }
        }
    }
    if q >= 1 {
        // Family 5: hat conjugation by the G-copy.
        for &k in &ks {
            for &g in &gs {
                let w = e
                    .hat_word(k)
                    .conjugate(&e.g_word(g))
                    .concat(&e.hat_word(l.conj(k, g)).inverse());
                rel(w, &mut fp)?;
            }
        }
        // Family 6: hat conjugation by the phi-copy.
        for &k in &ks {
            for &h in &hs {
                let w = e
                    .hat_word(k)
                    .conjugate(&e.h_word(h))
                    .concat(&e.hat_word(l.conj(k, h)).inverse());
                rel(w, &mut fp)?;
            }
        }
        // Family 7: commutators conjugated by hats act as k^q.
        for &k in &ks {
            let kq = l.pow(k, q as i64);
            for &g in &gs {
                for &h in &hs {
                    let w = e
                        .tensor_comm(g, h)
                        .conjugate(&e.hat_word(k))
                        .concat(&e.tensor_comm(l.conj(g, kq), l.conj(h, kq)).inverse());
                    rel(w, &mut fp)?;
                }
            }
        }
        // Family 8: hat of a product, with the explicit correction product
        // prod_{i=1}^{q-1} [k, (k1^-i)^phi]^(k^(q-1-i)); empty for q <= 1.
        for &k in &ks {
            for &k1 in &ks {
                let mut correction = Word::identity();
                for i in 1..q {
                    let k1_mi = l.pow(k1, -(i as i64));
                    let conj_by = e.g_word(l.pow(k, (q - 1 - i) as i64));
                    correction = correction
                        .concat(&e.tensor_comm(k, k1_mi).conjugate(&conj_by));
                }
                let w = e
                    .hat_word(k)
                    .inverse()
                    .concat(&e.hat_word(l.mul(k, k1)))
                    .concat(&e.hat_word(k1).inverse())
                    .concat(&correction.inverse());
                rel(w, &mut fp)?;
            }
        }
        // Family 9: [hat k, hat k1] = [k^q, (k1^q)^phi].
        for &k in &ks {
            for &k1 in &ks {
                let w = Word::commutator(&e.hat_word(k), &e.hat_word(k1))
                    .concat(&e.tensor_comm(l.pow(k, q as i64), l.pow(k1, q as i64)).inverse());
                rel(w, &mut fp)?;
            }
        }
        // Family 10: hat[g, h] = [g, h^phi]^q.
        for &g in &gs {
            for &h in &hs {
                let w = e
                    .hat_word(l.comm(g, h))
                    .concat(&e.tensor_comm(g, h).pow(-(q as i64)));
                rel(w, &mut fp)?;
            }
        }
    }
    if kind == EtaKind::Tau {
        // Family 11: Delta relators [k, k^phi].
        for &k in &ks {
            rel(Word::commutator(&e.g_word(k), &e.h_word(k)), &mut fp)?;
        }
    }
    e.fp = fp;

    // The assignment g -> g, h^phi -> h, hat k -> k^q must extend to a
    // homomorphism onto GH <= L: every relator evaluates to the identity.
    let images: Vec<u32> = e
        .tags
        .iter()
        .map(|t| match *t {
            GenTag::GCopy(a) => a,
            GenTag::HPhi(b) => b,
            GenTag::Hat(k) => l.pow(k, q as i64),
        })
        .collect();
    GroupHom::check_fp_images(&e.fp, &l, &images)?;
    Ok(e)
}

/// The generator images of the canonical epimorphism onto `GH <= L`.
pub fn rho_images(e: &EtaPresentation) -> Vec<u32> {
    let l = e.pair().overgroup();
    e.tags()
        .iter()
        .map(|t| match *t {
            GenTag::GCopy(a) => a,
            GenTag::HPhi(b) => b,
            GenTag::Hat(k) => l.pow(k, e.q() as i64),
        })
        .collect()
}

/// A direct element-wise presentation of the q-tensor product itself: one
/// generator per symbol `g (x) h` plus one hat generator per element of K.
/// Enumerating it gives the tensor product without building the whole
/// ambient extension, which matters for the larger catalog entries.
#[derive(Clone, Debug)]
pub struct TensorPresentation {
    fp: FpPresentation,
    q: u32,
    pair: EmbeddedPair,
}

impl TensorPresentation {
    pub fn fp(&self) -> &FpPresentation {
        &self.fp
    }

    pub fn pair(&self) -> &EmbeddedPair {
        &self.pair
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn tensor_word(&self, g: u32, h: u32) -> Word {
        let nh = self.pair.h_elements().len();
        let gi = EtaPresentation::pos_in(self.pair.g_elements(), g);
        let hi = EtaPresentation::pos_in(self.pair.h_elements(), h);
        Word::gen(gi * nh + hi)
    }

    fn hat_word(&self, k: u32) -> Word {
        let offset = self.pair.g_elements().len() * self.pair.h_elements().len();
        Word::gen(offset + EtaPresentation::pos_in(self.pair.k_elements(), k))
    }

    pub fn enumerate_regular(
        &self,
        max_cosets: usize,
        strategy: Strategy,
    ) -> Result<(CosetTable, Arc<RegularGroup>), Error> {
        let t = coset::enumerate(&self.fp, &[], max_cosets, strategy)?;
        if !t.is_complete() {
            return Err(Error::ExceededLimit { max_cosets });
        }
        let r = Arc::new(RegularGroup::from_coset_table(&t)?);
        Ok((t, r))
    }
}

/// Build the defining presentation of `G (x)_q H` on symbols and hats.
pub fn build_tensor_q(pair: &EmbeddedPair, q: u32) -> Result<TensorPresentation, Error> {
    let l = pair.overgroup().clone();
    let (gs, hs, ks) =
        (pair.g_elements().to_vec(), pair.h_elements().to_vec(), pair.k_elements().to_vec());
    let mut names = Vec::new();
    for &g in &gs {
        for &h in &hs {
            names.push(format!("t{}.{}", g + 1, h + 1));
        }
    }
    if q >= 1 {
        for &k in &ks {
            names.push(format!("k{}", k + 1));
        }
    }
    let fp = FpPresentation::new(names)?;
    let mut t = TensorPresentation { fp, q, pair: pair.clone() };
    let mut fp = std::mem::replace(&mut t.fp, FpPresentation::new(vec![]).unwrap());

    // g (x) h h1 = (g (x) h1)(g^h1 (x) h^h1)
    for &g in &gs {
        for &h in &hs {
            for &h1 in &hs {
                let w = t
                    .tensor_word(g, l.mul(h, h1))
                    .concat(&t.tensor_word(l.conj(g, h1), l.conj(h, h1)).inverse())
                    .concat(&t.tensor_word(g, h1).inverse());
                fp.push_relator(w)?;
            }
        }
    }
    // g g1 (x) h = (g^g1 (x) h^g1)(g1 (x) h)
    for &g in &gs {
        for &g1 in &gs {
            for &h in &hs {
                let w = t
                    .tensor_word(l.mul(g, g1), h)
                    .concat(&t.tensor_word(g1, h).inverse())
                    .concat(&t.tensor_word(l.conj(g, g1), l.conj(h, g1)).inverse());
                fp.push_relator(w)?;
            }
        }
    }
    if q >= 1 {
        // (g (x) h)^(hat k) = g^(k^q) (x) h^(k^q)
        for &k in &ks {
            let kq = l.pow(k, q as i64);
            for &g in &gs {
                for &h in &hs {
                    let w = t
                        .tensor_word(g, h)
                        .conjugate(&t.hat_word(k))
                        .concat(&t.tensor_word(l.conj(g, kq), l.conj(h, kq)).inverse());
                    fp.push_relator(w)?;
                }
            }
        }
        // hat(k k1) = hat k * prod_{i=1}^{q-1} (k (x) (k1^-i)^(k^(q-1-i))) * hat k1
        for &k in &ks {
            for &k1 in &ks {
                let mut correction = Word::identity();
                for i in 1..q {
                    let arg = l.conj(l.pow(k1, -(i as i64)), l.pow(k, (q - 1 - i) as i64));
                    correction = correction.concat(&t.tensor_word(k, arg));
                }
                let w = t
                    .hat_word(k)
                    .concat(&correction)
                    .concat(&t.hat_word(k1))
                    .concat(&t.hat_word(l.mul(k, k1)).inverse());
                fp.push_relator(w)?;
            }
        }
        // [hat k, hat k1] = k^q (x) k1^q
        for &k in &ks {
            for &k1 in &ks {
                let w = Word::commutator(&t.hat_word(k), &t.hat_word(k1))
                    .concat(&t.tensor_word(l.pow(k, q as i64), l.pow(k1, q as i64)).inverse());
                fp.push_relator(w)?;
            }
        }
        // hat[g, h] = (g (x) h)^q
        for &g in &gs {
            for &h in &hs {
                let w = t
                    .hat_word(l.comm(g, h))
                    .concat(&t.tensor_word(g, h).pow(-(q as i64)));
                fp.push_relator(w)?;
            }
        }
    }
    t.fp = fp;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::{close_subgroup, SubgroupHandle};

    #[test]
    fn generator_counts() {
        // (D_4, q = 4): 8 + 8 + 8 generators.
        let d4 = FiniteGroupTable::dihedral(4);
        let e = build_nu_q(&d4, 4).unwrap();
        assert_eq!(e.ngens(), 24);
        // (C_2, q = 0): 4 generators, no hat family.
        let c2 = FiniteGroupTable::cyclic(2);
        let e = build_nu_q(&c2, 0).unwrap();
        assert_eq!(e.ngens(), 4);
        assert!(e.tags().iter().all(|t| !matches!(t, GenTag::Hat(_))));
        // L = D_4, G = C_4, H = V_4, q = 2: 4 + 4 + 2.
        let pair = EmbeddedPair::new(FiniteGroupTable::dihedral(4), &[1], &[2, 4]).unwrap();
        let e = build_eta_q(&pair, 2).unwrap();
        assert_eq!(e.ngens(), 10);
        // Same pair, q = 0: 8 generators.
        let e0 = build_eta_q(&pair, 0).unwrap();
        assert_eq!(e0.ngens(), 8);
    }

    #[test]
    fn tau_adds_k_relators_only() {
        let pair = EmbeddedPair::new(FiniteGroupTable::dihedral(4), &[1], &[2, 4]).unwrap();
        let eta = build_eta_q(&pair, 2).unwrap();
        let tau = build_tau_q(&pair, 2).unwrap();
        assert_eq!(eta.ngens(), tau.ngens());
        assert_eq!(tau.relator_instances(), eta.relator_instances() + 2);
    }

    #[test]
    fn nu2_c2_has_order_16() {
        // |nu_q(G)| = |G (x)_q G| * |G|^2; C_2 (x)_2 C_2 = C_4.
        let e = build_nu_q(&FiniteGroupTable::cyclic(2), 2).unwrap();
        let (t, r) = e.enumerate_regular(1 << 14, Strategy::Hlt).unwrap();
        assert_eq!(t.num_cosets(), 16);
        let ups =
            close_subgroup(&r, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
        assert_eq!(ups.order(), 4);
        assert_eq!(ups.exponent().unwrap(), 4);
    }

    #[test]
    fn nu0_is_classic_nu() {
        // nu(C_2) = nu_0(C_2): |C_2 (x) C_2| = 2, total 8.
        let e = build_nu_q(&FiniteGroupTable::cyclic(2), 0).unwrap();
        let (t, r) = e.enumerate_regular(1 << 12, Strategy::Hlt).unwrap();
        assert_eq!(t.num_cosets(), 8);
        let ups =
            close_subgroup(&r, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
        assert_eq!(ups.order(), 2);
    }

    #[test]
    fn upsilon_index_is_g_times_h() {
        // eta_q / Upsilon_q = G x H.
        let pair = EmbeddedPair::new(FiniteGroupTable::dihedral(4), &[1], &[2, 4]).unwrap();
        let e = build_eta_q(&pair, 2).unwrap();
        let (t, r) = e.enumerate_regular(1 << 14, Strategy::Hlt).unwrap();
        let ups =
            close_subgroup(&r, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
        assert_eq!(t.num_cosets() as u64 % ups.order(), 0);
        assert_eq!(t.num_cosets() as u64 / ups.order(), 16);
    }

    #[test]
    fn direct_tensor_presentation_matches_subgroup_closure() {
        // C_2 (x)_2 C_2 both ways.
        let c2 = FiniteGroupTable::cyclic(2);
        let pair = EmbeddedPair::diagonal(c2.clone());
        let tp = build_tensor_q(&pair, 2).unwrap();
        let (tt, tr) = tp.enumerate_regular(1 << 12, Strategy::Hlt).unwrap();
        assert_eq!(tt.num_cosets(), 4);
        let whole = SubgroupHandle::whole(&tr).unwrap();
        assert_eq!(whole.exponent().unwrap(), 4);

        let e = build_nu_q(&c2, 2).unwrap();
        let (_, r) = e.enumerate_regular(1 << 12, Strategy::Hlt).unwrap();
        let ups =
            close_subgroup(&r, &e.named_subgroup_words(NamedSubgroup::Upsilon).unwrap()).unwrap();
        assert_eq!(ups.order(), tt.num_cosets() as u64);
    }

    #[test]
    fn gamma_words() {
        let e = build_nu_q(&FiniteGroupTable::cyclic(2), 0).unwrap();
        assert!(e.named_subgroup_words(NamedSubgroup::Gamma(0)).is_err());
        let g1 = e.named_subgroup_words(NamedSubgroup::Gamma(1)).unwrap();
        assert_eq!(g1.len(), 4);
        let g2 = e.named_subgroup_words(NamedSubgroup::Gamma(2)).unwrap();
        assert_eq!(g2.len(), 16);
    }

    #[test]
    fn t_words_count() {
        // T for nu_q(D_4): |G|^2 = 64 commutator words.
        let e = build_nu_q(&FiniteGroupTable::dihedral(4), 4).unwrap();
        assert_eq!(e.named_subgroup_words(NamedSubgroup::T).unwrap().len(), 64);
        assert_eq!(e.named_subgroup_words(NamedSubgroup::Delta).unwrap().len(), 8);
    }

    #[test]
    fn relator_instance_formula() {
        let pair = EmbeddedPair::new(FiniteGroupTable::dihedral(4), &[1], &[2, 4]).unwrap();
        let e = build_eta_q(&pair, 2).unwrap();
        // 16 + 16 + 64 + 64 (eta core) + 8 + 8 + 32 + 4 + 4 + 16 (hats).
        assert_eq!(e.relator_instances(), 232);
    }
}
