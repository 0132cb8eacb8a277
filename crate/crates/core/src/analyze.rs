//! Structural analysis of finite groups in regular representation:
//! subgroup closure, abelian invariants, structure recognition, derived and
//! lower central series, centers, and homomorphism kernels.
//!
//! Subgroups of a regular group are stored as explicit point sets up to
//! 10^5 elements; beyond that only a strong-generating chain is kept, which
//! still answers order and membership queries. Abelian invariants are
//! recovered from element-order counts per prime, deliberately independent
//! of the Smith-form code path.

use crate::error::Error;
use crate::perm::{RegularGroup, StabChain};
use crate::table::FiniteGroupTable;
use crate::word::Word;
use std::sync::Arc;

/// Explicit subgroup size limit before falling back to a stabilizer chain.
pub const EXPLICIT_LIMIT: usize = 100_000;

/// Invariant factors `d_1 | d_2 | ... | d_r`, each `>= 2`, ascending; empty
/// for the trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants(pub Vec<u64>);

impl AbelianInvariants {
    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Recognized isomorphism types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Trivial,
    Cyclic(u64),
    Abelian(Vec<u64>),
    /// Dihedral group of order 2n.
    Dihedral(u64),
    Quaternion8,
    Unrecognized { order: u64, exponent: u64, class: Option<u32> },
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Structure::Trivial => write!(f, "trivial"),
            Structure::Cyclic(n) => write!(f, "cyclic:{n}"),
            Structure::Abelian(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "abelian:[{}]", parts.join(","))
            }
            Structure::Dihedral(n) => write!(f, "dihedral:{n}"),
            Structure::Quaternion8 => write!(f, "quaternion:8"),
            Structure::Unrecognized { order, exponent, class } => match class {
                Some(c) => write!(f, "unrecognized(order={order}, exponent={exponent}, class={c})"),
                None => write!(f, "unrecognized(order={order}, exponent={exponent}, class=-)"),
            },
        }
    }
}

#[derive(Clone, Debug)]
enum Form {
    Explicit(Vec<u32>),
    Chain { order: u64 },
}

/// A subgroup of a regular group.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    ambient: Arc<RegularGroup>,
    gen_points: Vec<u32>,
    form: Form,
}

/// Close a set of words to a subgroup of the regular group.
pub fn close_subgroup(ambient: &Arc<RegularGroup>, words: &[Word]) -> Result<SubgroupHandle, Error> {
    let pts: Vec<u32> = words.iter().map(|w| ambient.eval_word(w)).collect();
    close_points(ambient, pts)
}

/// Close a set of elements (as points) to a subgroup.
pub fn close_points(ambient: &Arc<RegularGroup>, gens: Vec<u32>) -> Result<SubgroupHandle, Error> {
    let mut gen_points: Vec<u32> = gens.into_iter().filter(|&p| p != 0).collect();
    gen_points.sort_unstable();
    gen_points.dedup();
    match closure_points(ambient, &gen_points, EXPLICIT_LIMIT) {
        Some(points) => Ok(SubgroupHandle { ambient: ambient.clone(), gen_points, form: Form::Explicit(points) }),
        None => {
            // Strong-generating chain fallback: order only.
            let perms: Vec<_> = gen_points.iter().map(|&p| ambient.perm_of(p)).collect();
            let chain = StabChain::build(ambient.degree(), &perms);
            Ok(SubgroupHandle {
                ambient: ambient.clone(),
                gen_points,
                form: Form::Chain { order: chain.order() },
            })
        }
    }
}

/// BFS closure of the identity under right multiplication by the given
/// elements and their inverses; `None` if the cap is exceeded.
fn closure_points(ambient: &RegularGroup, gens: &[u32], cap: usize) -> Option<Vec<u32>> {
    let mut muls: Vec<u32> = gens.to_vec();
    muls.extend(gens.iter().map(|&g| ambient.inv(g)));
    muls.sort_unstable();
    muls.dedup();
    let mut in_set = vec![false; ambient.degree()];
    in_set[0] = true;
    let mut out = vec![0u32];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for &g in &muls {
            let y = ambient.mul(x, g);
            if !in_set[y as usize] {
                if out.len() >= cap {
                    return None;
                }
                in_set[y as usize] = true;
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

impl SubgroupHandle {
    /// The whole group as a handle.
    pub fn whole(ambient: &Arc<RegularGroup>) -> Result<Self, Error> {
        close_points(ambient, ambient.gen_points())
    }

    pub fn ambient(&self) -> &Arc<RegularGroup> {
        &self.ambient
    }

    pub fn order(&self) -> u64 {
        match &self.form {
            Form::Explicit(pts) => pts.len() as u64,
            Form::Chain { order } => *order,
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.form, Form::Explicit(_))
    }

    /// Sorted element points; explicit form only.
    pub fn points(&self) -> Result<&[u32], Error> {
        match &self.form {
            Form::Explicit(pts) => Ok(pts),
            Form::Chain { .. } => Err(Error::BudgetExceeded(
                "subgroup stored as a stabilizer chain; explicit elements unavailable".into(),
            )),
        }
    }

    pub fn gen_points(&self) -> &[u32] {
        &self.gen_points
    }

    pub fn contains(&self, p: u32) -> Result<bool, Error> {
        Ok(self.points()?.binary_search(&p).is_ok())
    }

    pub fn same_set(&self, other: &SubgroupHandle) -> bool {
        match (&self.form, &other.form) {
            (Form::Explicit(a), Form::Explicit(b)) => a == b,
            _ => false,
        }
    }

    /// Intersection of two explicit subgroups.
    pub fn intersect(&self, other: &SubgroupHandle) -> Result<SubgroupHandle, Error> {
        let a = self.points()?;
        let b = other.points()?;
        let pts: Vec<u32> = a.iter().copied().filter(|p| b.binary_search(p).is_ok()).collect();
        Ok(SubgroupHandle {
            ambient: self.ambient.clone(),
            gen_points: pts.clone(),
            form: Form::Explicit(pts),
        })
    }

    /// Abelian check over all element pairs (explicit sets), with a witness
    /// pair on failure.
    pub fn check_abelian(&self) -> Result<(), Error> {
        let pts = self.points()?;
        // Generators suffice: a group is abelian iff its generators commute.
        let gens: &[u32] = if self.gen_points.is_empty() { pts } else { &self.gen_points };
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                if self.ambient.comm(a, b) != 0 {
                    return Err(Error::NotAbelian(
                        self.ambient.word_string(&self.ambient.point_word(a)),
                        self.ambient.word_string(&self.ambient.point_word(b)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Element orders of an explicit subgroup.
    pub fn element_orders(&self) -> Result<Vec<u64>, Error> {
        Ok(self.points()?.iter().map(|&p| self.ambient.element_order(p)).collect())
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> Result<u64, Error> {
        Ok(self.element_orders()?.into_iter().fold(1, num_integer::lcm))
    }

    /// Invariant factors by prime-power order counting; errors on
    /// non-abelian input with a witness pair.
    pub fn abelian_invariants(&self) -> Result<AbelianInvariants, Error> {
        self.check_abelian()?;
        Ok(AbelianInvariants(invariants_from_element_orders(&self.element_orders()?)))
    }

    /// Recognize cyclic, abelian, dihedral and quaternion-of-order-8
    /// structure; everything else reports order, exponent and class.
    pub fn recognize_structure(&self) -> Result<Structure, Error> {
        let pts = self.points()?;
        let n = pts.len() as u64;
        if n == 1 {
            return Ok(Structure::Trivial);
        }
        let orders = self.element_orders()?;
        let max_ord = *orders.iter().max().unwrap();
        if max_ord == n {
            return Ok(Structure::Cyclic(n));
        }
        if self.check_abelian().is_ok() {
            return Ok(Structure::Abelian(invariants_from_element_orders(&orders)));
        }
        // Dihedral of order 2n: a cyclic subgroup of order n plus an outside
        // involution inverting its generator.
        if n % 2 == 0 && max_ord == n / 2 && n >= 6 {
            let half = n / 2;
            for (i, &c) in pts.iter().enumerate() {
                if orders[i] != half {
                    continue;
                }
                let mut cyc = Vec::with_capacity(half as usize);
                let mut x = 0u32;
                for _ in 0..half {
                    cyc.push(x);
                    x = self.ambient.mul(x, c);
                }
                cyc.sort_unstable();
                let c_inv = self.ambient.inv(c);
                for (j, &t) in pts.iter().enumerate() {
                    if orders[j] == 2 && cyc.binary_search(&t).is_err() {
                        if self.ambient.conj(c, t) == c_inv {
                            return Ok(Structure::Dihedral(half));
                        }
                    }
                }
                break; // all order-n/2 elements generate the same candidate up to conjugacy here
            }
        }
        if n == 8 {
            let invol = orders.iter().filter(|&&o| o == 2).count();
            if invol == 1 {
                return Ok(Structure::Quaternion8);
            }
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
        let class = self.nilpotency_class()?;
        Ok(Structure::Unrecognized { order: n, exponent, class })
    }

    /// Derived subgroup `[H, H]`.
    pub fn derived(&self) -> Result<SubgroupHandle, Error> {
        let pts = self.points()?;
        let seeds: Vec<u32> = if pts.len() <= 2048 {
            // Exhaustive commutators for small subgroups.
            let mut v = Vec::new();
            for &a in pts {
                for &b in pts {
                    v.push(self.ambient.comm(a, b));
                }
            }
            v
        } else {
            let gens: Vec<u32> =
                if self.gen_points.is_empty() { pts.to_vec() } else { self.gen_points.clone() };
            let mut v = Vec::new();
            for &a in &gens {
                for &b in &gens {
                    v.push(self.ambient.comm(a, b));
                }
            }
            return self.normal_closure_within(v);
        };
        close_points(&self.ambient, seeds)
    }

    /// Normal closure of the given elements inside this subgroup.
    fn normal_closure_within(&self, seeds: Vec<u32>) -> Result<SubgroupHandle, Error> {
        let conj_by: Vec<u32> = if self.gen_points.is_empty() {
            self.points()?.to_vec()
        } else {
            self.gen_points.clone()
        };
        let mut gens: Vec<u32> = seeds.into_iter().filter(|&p| p != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        loop {
            let sub = close_points(&self.ambient, gens.clone())?;
            let pts = sub.points()?;
            let mut new_gens = Vec::new();
            for &p in pts {
                for &g in &conj_by {
                    let c = self.ambient.conj(p, g);
                    if pts.binary_search(&c).is_err() {
                        new_gens.push(c);
                    }
                }
            }
            if new_gens.is_empty() {
                return Ok(sub);
            }
            gens.extend(new_gens);
            gens.sort_unstable();
            gens.dedup();
        }
    }

    /// Derived series `H >= H' >= H'' >= ...` until it stabilizes.
    pub fn derived_series(&self) -> Result<Vec<SubgroupHandle>, Error> {
        let mut series = vec![self.clone()];
        loop {
            let next = series.last().unwrap().derived()?;
            if next.order() == series.last().unwrap().order() {
                break;
            }
            let stop = next.order() == 1;
            series.push(next);
            if stop {
                break;
            }
        }
        Ok(series)
    }

    /// Lower central series `H = γ_1 >= γ_2 >= ...` until it stabilizes.
    pub fn lower_central_series(&self) -> Result<Vec<SubgroupHandle>, Error> {
        let mut series = vec![self.clone()];
        let top_gens: Vec<u32> = if self.gen_points.is_empty() {
            self.points()?.to_vec()
        } else {
            self.gen_points.clone()
        };
        loop {
            let last = series.last().unwrap();
            let last_gens: Vec<u32> = if series.len() == 1 {
                top_gens.clone()
            } else {
                last.points()?.to_vec()
            };
            let mut seeds = Vec::new();
            for &x in &last_gens {
                for &g in &top_gens {
                    seeds.push(self.ambient.comm(x, g));
                }
            }
            let next = self.normal_closure_within(seeds)?;
            if next.order() == last.order() {
                break;
            }
            let stop = next.order() == 1;
            series.push(next);
            if stop {
                break;
            }
        }
        Ok(series)
    }

    /// Nilpotency class, `None` when not nilpotent.
    pub fn nilpotency_class(&self) -> Result<Option<u32>, Error> {
        let series = self.lower_central_series()?;
        if series.last().unwrap().order() == 1 {
            Ok(Some(series.len() as u32 - 1))
        } else {
            Ok(None)
        }
    }

    pub fn derived_length(&self) -> Result<u32, Error> {
        Ok(self.derived_series()?.len() as u32 - 1)
    }

    /// Center of the subgroup: elements commuting with every generator.
    pub fn center(&self) -> Result<SubgroupHandle, Error> {
        let pts = self.points()?;
        let gens: Vec<u32> =
            if self.gen_points.is_empty() { pts.to_vec() } else { self.gen_points.clone() };
        let pts: Vec<u32> = pts
            .iter()
            .copied()
            .filter(|&p| gens.iter().all(|&g| self.ambient.comm(p, g) == 0))
            .collect();
        Ok(SubgroupHandle {
            ambient: self.ambient.clone(),
            gen_points: pts.clone(),
            form: Form::Explicit(pts),
        })
    }

    /// Whether an element (point) centralizes the whole ambient group.
    pub fn point_is_central_in_ambient(ambient: &RegularGroup, p: u32) -> bool {
        ambient.gen_points().iter().all(|&g| ambient.comm(p, g) == 0)
    }
}

/// Invariant factor chain of a finite abelian group from the multiset of
/// its element orders.
pub(crate) fn invariants_from_element_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    if n <= 1 {
        return Vec::new();
    }
    // Prime factorization of the group order.
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // Per prime: partition lambda_1 >= lambda_2 >= ... from the counts of
    // elements of order dividing p^k (which equal p^(sum min(lambda_i, k))).
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut counts = vec![1u64]; // k = 0
        loop {
            let k = counts.len() as u32;
            let pk = p.pow(k);
            let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            if c == *counts.last().unwrap() {
                break;
            }
            counts.push(c);
        }
        // m_k = #parts >= k = log_p(counts[k] / counts[k-1])
        let mut parts_ge = Vec::new();
        for k in 1..counts.len() {
            let ratio = counts[k] / counts[k - 1];
            let mut log = 0u64;
            let mut r = ratio;
            while r > 1 {
                r /= p;
                log += 1;
            }
            parts_ge.push(log);
        }
        // Partition: part i (0-based) has size #{k : parts_ge[k-1] > i}.
        let nparts = *parts_ge.first().unwrap_or(&0);
        let mut partition = Vec::new();
        for i in 0..nparts {
            let size = parts_ge.iter().filter(|&&m| m > i).count() as u32;
            partition.push(p.pow(size));
        }
        partition.sort_unstable_by(|a, b| b.cmp(a)); // descending prime powers
        per_prime.push(partition);
    }
    let rank = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut chain = Vec::new();
    for i in 0..rank {
        let mut d = 1u64;
        for pp in &per_prime {
            if i < pp.len() {
                d *= pp[i];
            }
        }
        chain.push(d);
    }
    chain.reverse(); // ascending divisibility
    chain
}

/// Invariant factor chain of a direct sum of cyclic groups of the given
/// orders (ones are ignored).
pub(crate) fn chain_from_cyclic_factors(factors: &[u64]) -> Vec<u64> {
    let mut per_prime: std::collections::BTreeMap<u64, Vec<u64>> = std::collections::BTreeMap::new();
    for &f in factors {
        let mut m = f;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut pk = 1u64;
                while m % p == 0 {
                    m /= p;
                    pk *= p;
                }
                per_prime.entry(p).or_default().push(pk);
            }
            p += 1;
        }
        if m > 1 {
            per_prime.entry(m).or_default().push(m);
        }
    }
    let mut lists: Vec<Vec<u64>> = per_prime.into_values().collect();
    for l in &mut lists {
        l.sort_unstable_by(|a, b| b.cmp(a));
    }
    let rank = lists.iter().map(|l| l.len()).max().unwrap_or(0);
    let mut chain = Vec::new();
    for i in 0..rank {
        let d: u64 = lists.iter().map(|l| l.get(i).copied().unwrap_or(1)).product();
        chain.push(d);
    }
    chain.reverse();
    chain
}

/// A homomorphism from a group in regular representation into a group given
/// by a multiplication table, defined by generator images and validated on
/// construction by consistent labelling of the whole Cayley graph.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<RegularGroup>,
    target: FiniteGroupTable,
    gen_images: Vec<u32>,
    labels: Vec<u32>,
}

impl GroupHom {
    pub fn new(
        source: Arc<RegularGroup>,
        target: FiniteGroupTable,
        gen_images: Vec<u32>,
    ) -> Result<Self, Error> {
        if gen_images.len() != source.ngens() {
            return Err(Error::InvalidArgument("one image per generator required".into()));
        }
        if gen_images.iter().any(|&x| x as usize >= target.order()) {
            return Err(Error::InvalidArgument("image element out of range".into()));
        }
        // Label every source element with its image; every edge of the
        // Cayley graph must be consistent, which is exactly the statement
        // that the images satisfy all relations of the source.
        let n = source.degree();
        let mut labels = vec![u32::MAX; n];
        labels[0] = target.identity();
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(p) = queue.pop_front() {
            for g in 0..source.ngens() {
                for inv in [false, true] {
                    let q = source.apply_letter(p, crate::word::Letter::new(g, inv));
                    let img = if inv {
                        target.mul(labels[p as usize], target.inv(gen_images[g]))
                    } else {
                        target.mul(labels[p as usize], gen_images[g])
                    };
                    if labels[q as usize] == u32::MAX {
                        labels[q as usize] = img;
                        queue.push_back(q);
                    } else if labels[q as usize] != img {
                        return Err(Error::NotAHomomorphism(format!(
                            "edge from element {} under generator {}{} is inconsistent",
                            p,
                            source.gen_names()[g],
                            if inv { "^-1" } else { "" },
                        )));
                    }
                }
            }
        }
        Ok(GroupHom { source, target, gen_images, labels })
    }

    pub fn source(&self) -> &Arc<RegularGroup> {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroupTable {
        &self.target
    }

    pub fn gen_images(&self) -> &[u32] {
        &self.gen_images
    }

    /// Image of the element at a source point.
    pub fn apply(&self, p: u32) -> u32 {
        self.labels[p as usize]
    }

    /// Kernel as an explicit subgroup of the source.
    pub fn kernel(&self) -> SubgroupHandle {
        let id = self.target.identity();
        let pts: Vec<u32> = (0..self.source.degree() as u32)
            .filter(|&p| self.labels[p as usize] == id)
            .collect();
        SubgroupHandle {
            ambient: self.source.clone(),
            gen_points: pts.clone(),
            form: Form::Explicit(pts),
        }
    }

    /// Image as a sorted element set of the target.
    pub fn image(&self) -> Vec<u32> {
        let mut img: Vec<u32> = self.labels.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Check generator images against an explicit relator list (the
    /// finitely presented source case).
    pub fn check_fp_images(
        pres: &crate::fp::FpPresentation,
        target: &FiniteGroupTable,
        images: &[u32],
    ) -> Result<(), Error> {
        if images.len() != pres.ngens() {
            return Err(Error::InvalidArgument("one image per generator required".into()));
        }
        for r in pres.relators() {
            let mut x = target.identity();
            for l in r.letters() {
                let img = if l.inv { target.inv(images[l.gen]) } else { images[l.gen] };
                x = target.mul(x, img);
            }
            if x != target.identity() {
                return Err(Error::NotAHomomorphism(format!(
                    "relator `{}` maps to a non-identity element",
                    pres.word_to_string(r)
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{enumerate, Strategy};
    use crate::fp::FpPresentation;
    use crate::word::Word;

    fn regular(p: &FpPresentation) -> Arc<RegularGroup> {
        let t = enumerate(p, &[], 1 << 16, Strategy::Hlt).unwrap();
        Arc::new(RegularGroup::from_coset_table(&t).unwrap())
    }

    #[test]
    fn empty_word_set_gives_trivial_subgroup() {
        let g = regular(&FpPresentation::dihedral(4));
        let s = close_subgroup(&g, &[]).unwrap();
        assert_eq!(s.order(), 1);
        assert!(s.abelian_invariants().unwrap().is_trivial());
        assert_eq!(s.exponent().unwrap(), 1);
        assert_eq!(s.recognize_structure().unwrap(), Structure::Trivial);
    }

    #[test]
    fn whole_group_and_center_of_d4() {
        let g = regular(&FpPresentation::dihedral(4));
        let whole = SubgroupHandle::whole(&g).unwrap();
        assert_eq!(whole.order(), 8);
        assert_eq!(whole.center().unwrap().order(), 2);
        assert_eq!(whole.derived().unwrap().order(), 2);
        assert_eq!(whole.nilpotency_class().unwrap(), Some(2));
        assert_eq!(whole.recognize_structure().unwrap(), Structure::Dihedral(4));
    }

    #[test]
    fn recognizers() {
        // C_4 regular image -> cyclic:4.
        let c4 = regular(&FpPresentation::cyclic(4));
        let w = SubgroupHandle::whole(&c4).unwrap();
        assert_eq!(w.recognize_structure().unwrap(), Structure::Cyclic(4));
        // D_5 -> dihedral:5.
        let d5 = regular(&FpPresentation::dihedral(5));
        let w = SubgroupHandle::whole(&d5).unwrap();
        assert_eq!(w.recognize_structure().unwrap(), Structure::Dihedral(5));
        assert_eq!(w.nilpotency_class().unwrap(), None);
        assert_eq!(w.derived_length().unwrap(), 2);
        // Q_8 via presentation.
        let mut p = FpPresentation::new(vec!["a".into(), "b".into()]).unwrap();
        let a = Word::gen(0);
        let b = Word::gen(1);
        p.push_relator(a.pow(4)).unwrap();
        p.push_relator(a.pow(2).concat(&b.pow(-2))).unwrap();
        p.push_relator(b.inverse().concat(&a).concat(&b).concat(&a)).unwrap();
        let q8 = regular(&p);
        let w = SubgroupHandle::whole(&q8).unwrap();
        assert_eq!(w.recognize_structure().unwrap(), Structure::Quaternion8);
        // V_4 = abelian [2, 2].
        let mut p = FpPresentation::new(vec!["a".into(), "b".into()]).unwrap();
        p.push_relator(Word::gen(0).pow(2)).unwrap();
        p.push_relator(Word::gen(1).pow(2)).unwrap();
        p.push_relator(Word::commutator(&Word::gen(0), &Word::gen(1))).unwrap();
        let v4 = regular(&p);
        let w = SubgroupHandle::whole(&v4).unwrap();
        assert_eq!(w.recognize_structure().unwrap(), Structure::Abelian(vec![2, 2]));
    }

    #[test]
    fn invariants_from_orders_examples() {
        // C_2^5 x C_4: orders from the abelian table.
        let t = FiniteGroupTable::abelian(&[2, 2, 2, 2, 2, 4]).unwrap();
        let orders: Vec<u64> = (0..t.order() as u32).map(|a| t.element_order(a)).collect();
        assert_eq!(invariants_from_element_orders(&orders), vec![2, 2, 2, 2, 2, 4]);
        // C_12 x C_3 in non-chain presentation [4, 3, 3].
        let t = FiniteGroupTable::abelian(&[4, 3, 3]).unwrap();
        let orders: Vec<u64> = (0..t.order() as u32).map(|a| t.element_order(a)).collect();
        assert_eq!(invariants_from_element_orders(&orders), vec![3, 12]);
        // C_2^4 x C_4^2 regrouped.
        let t = FiniteGroupTable::abelian(&[4, 2, 4, 2, 2, 2]).unwrap();
        let orders: Vec<u64> = (0..t.order() as u32).map(|a| t.element_order(a)).collect();
        assert_eq!(invariants_from_element_orders(&orders), vec![2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn non_abelian_invariants_error_names_witness() {
        let g = regular(&FpPresentation::dihedral(3));
        let w = SubgroupHandle::whole(&g).unwrap();
        match w.abelian_invariants() {
            Err(Error::NotAbelian(a, b)) => {
                assert!(!a.is_empty() && !b.is_empty());
            }
            other => panic!("expected NotAbelian, got {other:?}"),
        }
    }

    #[test]
    fn hom_kernel_of_identity_is_trivial() {
        let c4 = regular(&FpPresentation::cyclic(4));
        let t = FiniteGroupTable::cyclic(4);
        let img = vec![1u32]; // generator -> g
        let hom = GroupHom::new(c4, t, img).unwrap();
        assert_eq!(hom.kernel().order(), 1);
        assert_eq!(hom.image().len(), 4);
    }

    #[test]
    fn hom_kernel_mod_2() {
        // C_4 -> C_2, kernel of order 2.
        let c4 = regular(&FpPresentation::cyclic(4));
        let hom = GroupHom::new(c4, FiniteGroupTable::cyclic(2), vec![1]).unwrap();
        let k = hom.kernel();
        assert_eq!(k.order(), 2);
        assert_eq!(hom.image().len(), 2);
    }

    #[test]
    fn invalid_hom_rejected() {
        // C_4 -> C_3 sending g to a generator is not a homomorphism.
        let c4 = regular(&FpPresentation::cyclic(4));
        assert!(GroupHom::new(c4, FiniteGroupTable::cyclic(3), vec![1]).is_err());
        // Relator check variant.
        assert!(GroupHom::check_fp_images(
            &FpPresentation::cyclic(4),
            &FiniteGroupTable::cyclic(3),
            &[1]
        )
        .is_err());
    }

    #[test]
    fn chain_fallback_from_generic_words() {
        // Subgroup <r> of D_6 explicitly.
        let g = regular(&FpPresentation::dihedral(6));
        let s = close_subgroup(&g, &[Word::gen(1)]).unwrap();
        assert_eq!(s.order(), 6);
        assert_eq!(s.recognize_structure().unwrap(), Structure::Cyclic(6));
    }

}
