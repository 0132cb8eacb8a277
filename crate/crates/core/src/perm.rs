//! Permutations, permutation groups, and regular representations backed by
//! completed coset tables.
//!
//! A regular group acts on its own elements, so a point determines the
//! element carrying the base point there. All element arithmetic runs on
//! points via short Schreier words through the coset table, which keeps
//! subgroups of large enumerations cheap: a subgroup is a set of points,
//! not a set of permutation vectors.

use crate::coset::CosetTable;
use crate::error::Error;
use crate::table::FiniteGroupTable;
use crate::word::{Letter, Word};

/// A permutation of `{0, .., degree-1}` in image form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    imgs: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { imgs: (0..degree as u32).collect() }
    }

    pub fn from_images(imgs: Vec<u32>) -> Result<Self, Error> {
        let n = imgs.len();
        let mut seen = vec![false; n];
        for &i in &imgs {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { imgs })
    }

    pub fn degree(&self) -> usize {
        self.imgs.len()
    }

    pub fn apply(&self, p: u32) -> u32 {
        self.imgs[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.imgs.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` then `other` (right action: `x^(pq) = (x^p)^q`).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { imgs: self.imgs.iter().map(|&v| other.imgs[v as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut imgs = vec![0u32; self.imgs.len()];
        for (i, &v) in self.imgs.iter().enumerate() {
            imgs[v as usize] = i as u32;
        }
        Perm { imgs }
    }

    pub fn order(&self) -> u64 {
        let n = self.imgs.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.imgs[p] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Smallest point moved, if any.
    fn first_moved(&self) -> Option<u32> {
        self.imgs.iter().enumerate().find(|&(i, &v)| i as u32 != v).map(|(i, _)| i as u32)
    }
}

/// A finite permutation group given by named generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gen_names: Vec<String>,
    gens: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, gen_names: Vec<String>, gens: Vec<Perm>) -> Result<Self, Error> {
        if gen_names.len() != gens.len() {
            return Err(Error::InvalidArgument("name/generator count mismatch".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidArgument("generator degree mismatch".into()));
            }
        }
        Ok(PermGroup { degree, gen_names, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Group order through a deterministic Schreier-Sims stabilizer chain.
    pub fn order(&self) -> u64 {
        StabChain::build(self.degree, &self.gens).order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        StabChain::build(self.degree, &self.gens).contains(p)
    }
}

/// Deterministic Schreier-Sims stabilizer chain.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Level {
    beta: u32,
    gens: Vec<Perm>,
    /// transversal[p] = a word in `gens` carrying beta to p, stored as a perm.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(degree: usize, beta: u32) -> Self {
        let mut l = Level {
            beta,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: vec![beta],
        };
        l.transversal[beta as usize] = Some(Perm::identity(degree));
        l
    }

    /// Recompute the orbit and transversal after adding generators.
    fn close_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            i += 1;
            let up = self.transversal[p as usize].clone().unwrap();
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q as usize].is_none() {
                    self.transversal[q as usize] = Some(up.compose(g));
                    self.orbit.push(q);
                }
            }
        }
    }
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in gens {
            chain.add_generator(g.clone(), 0);
        }
        chain
    }

    fn add_generator(&mut self, g: Perm, level: usize) {
        if g.is_identity() {
            return;
        }
        if level == self.levels.len() {
            let beta = g.first_moved().expect("non-identity perm moves a point");
            self.levels.push(Level::new(self.degree, beta));
        }
        self.levels[level].gens.push(g);
        self.levels[level].close_orbit();
        // Process Schreier generators of this level; any that do not sift
        // through the lower levels extend the chain recursively.
        let (orbit, gen_count) =
            (self.levels[level].orbit.clone(), self.levels[level].gens.len());
        for p in orbit {
            for gi in 0..gen_count {
                let (s, q) = {
                    let lv = &self.levels[level];
                    let up = lv.transversal[p as usize].as_ref().unwrap();
                    let g = &lv.gens[gi];
                    (up.compose(g), g.apply(p))
                };
                let uq_inv = self.levels[level].transversal[q as usize]
                    .as_ref()
                    .unwrap()
                    .inverse();
                let schreier = s.compose(&uq_inv);
                if let Some(residue) = self.sift_from(schreier, level + 1) {
                    self.add_generator(residue, level + 1);
                }
            }
        }
    }

    /// Sift through levels starting at `from`; returns the non-identity
    /// residue if the element does not factor through the chain.
    fn sift_from(&self, mut p: Perm, from: usize) -> Option<Perm> {
        for lv in &self.levels[from..] {
            let q = p.apply(lv.beta);
            match &lv.transversal[q as usize] {
                Some(u) => p = p.compose(&u.inverse()),
                None => return Some(p),
            }
        }
        if p.is_identity() {
            None
        } else {
            Some(p)
        }
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.sift_from(p.clone(), 0).is_none()
    }
}

/// A finite group in its regular representation: the points are the group
/// elements, generators act by right multiplication, and point 0 is the
/// identity.
#[derive(Debug)]
pub struct RegularGroup {
    degree: usize,
    ngens: usize,
    gen_names: Vec<String>,
    /// degree x 2*ngens, columns alternate generator/inverse.
    action: Vec<u32>,
    /// BFS tree from point 0: (parent, col) per point, point 0 excluded.
    parent: Vec<(u32, u32)>,
    depth: Vec<u32>,
}

impl RegularGroup {
    /// Wrap a completed coset table over the trivial subgroup.
    pub fn from_coset_table(t: &CosetTable) -> Result<Self, Error> {
        if !t.is_complete() {
            return Err(Error::IncompleteTable);
        }
        if !t.subgroup_words().is_empty() {
            return Err(Error::NonTrivialSubgroup);
        }
        let degree = t.num_cosets();
        let ngens = t.ngens();
        let mut action = Vec::with_capacity(degree * 2 * ngens);
        for c in 0..degree as u32 {
            action.extend_from_slice(t.row(c));
        }
        Self::from_action(degree, ngens, t.gen_names().to_vec(), action)
    }

    /// Build from explicit generator columns (generator images only;
    /// inverse columns are derived).
    pub fn from_columns(
        gen_names: Vec<String>,
        cols: Vec<Vec<u32>>,
    ) -> Result<Self, Error> {
        let ngens = cols.len();
        let degree = cols.first().map_or(1, |c| c.len());
        let mut action = vec![0u32; degree.max(1) * 2 * ngens];
        for (g, col) in cols.iter().enumerate() {
            if col.len() != degree {
                return Err(Error::InvalidArgument("column length mismatch".into()));
            }
            let mut seen = vec![false; degree];
            for (p, &img) in col.iter().enumerate() {
                if img as usize >= degree || seen[img as usize] {
                    return Err(Error::InvalidArgument(format!(
                        "generator {g} column is not a permutation"
                    )));
                }
                seen[img as usize] = true;
                action[p * 2 * ngens + 2 * g] = img;
                action[img as usize * 2 * ngens + 2 * g + 1] = p as u32;
            }
        }
        Self::from_action(degree, ngens, gen_names, action)
    }

    /// The regular representation of a multiplication table; one generator
    /// per element (right multiplication).
    pub fn from_table(t: &FiniteGroupTable) -> Self {
        let n = t.order();
        let names: Vec<String> = (0..n as u32).map(|e| t.name(e).to_string()).collect();
        let cols: Vec<Vec<u32>> =
            (0..n as u32).map(|e| (0..n as u32).map(|x| t.mul(x, e)).collect()).collect();
        Self::from_columns(names, cols).expect("group table columns are permutations")
    }

    fn from_action(
        degree: usize,
        ngens: usize,
        gen_names: Vec<String>,
        action: Vec<u32>,
    ) -> Result<Self, Error> {
        let mut parent = vec![(u32::MAX, u32::MAX); degree];
        let mut depth = vec![u32::MAX; degree];
        depth[0] = 0;
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(p) = queue.pop_front() {
            for col in 0..(2 * ngens) as u32 {
                let q = action[p as usize * 2 * ngens + col as usize];
                if depth[q as usize] == u32::MAX {
                    depth[q as usize] = depth[p as usize] + 1;
                    parent[q as usize] = (p, col);
                    queue.push_back(q);
                }
            }
        }
        if depth.iter().any(|&d| d == u32::MAX) {
            return Err(Error::InvalidArgument(
                "generators do not act transitively; not a regular representation".into(),
            ));
        }
        Ok(RegularGroup { degree, ngens, gen_names, action, parent, depth })
    }

    pub fn order(&self) -> u64 {
        self.degree as u64
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn identity(&self) -> u32 {
        0
    }

    fn apply_col(&self, p: u32, col: u32) -> u32 {
        self.action[p as usize * 2 * self.ngens + col as usize]
    }

    /// Apply a generator letter to a point.
    pub fn apply_letter(&self, p: u32, l: Letter) -> u32 {
        self.apply_col(p, (l.gen as u32) << 1 | l.inv as u32)
    }

    /// Evaluate a word to a point (= the element it represents).
    pub fn eval_word(&self, w: &Word) -> u32 {
        let mut p = 0;
        for &l in w.letters() {
            p = self.apply_letter(p, l);
        }
        p
    }

    /// Columns (as letters) of the Schreier word carrying 0 to `p`.
    fn path_cols(&self, mut p: u32, buf: &mut Vec<u32>) {
        buf.clear();
        while p != 0 {
            let (par, col) = self.parent[p as usize];
            buf.push(col);
            p = par;
        }
        buf.reverse();
    }

    /// Product of the elements at two points.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut buf = Vec::with_capacity(self.depth[b as usize] as usize);
        self.path_cols(b, &mut buf);
        let mut p = a;
        for &col in &buf {
            p = self.apply_col(p, col);
        }
        p
    }

    /// Inverse of the element at a point.
    pub fn inv(&self, a: u32) -> u32 {
        let mut buf = Vec::with_capacity(self.depth[a as usize] as usize);
        self.path_cols(a, &mut buf);
        let mut p = 0;
        for &col in buf.iter().rev() {
            p = self.apply_col(p, col ^ 1);
        }
        p
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b]`.
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        self.mul(self.inv(self.mul(b, a)), self.mul(a, b))
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = 0;
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut p = a;
        let mut k = 1u64;
        while p != 0 {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    /// The right-multiplication permutation of the element at a point.
    pub fn perm_of(&self, a: u32) -> Perm {
        let mut buf = Vec::new();
        self.path_cols(a, &mut buf);
        let imgs = (0..self.degree as u32)
            .map(|mut p| {
                for &col in &buf {
                    p = self.apply_col(p, col);
                }
                p
            })
            .collect();
        Perm { imgs }
    }

    /// Materialize the generators as a [`PermGroup`].
    pub fn perm_group(&self) -> PermGroup {
        let gens = (0..self.ngens)
            .map(|g| {
                Perm {
                    imgs: (0..self.degree as u32)
                        .map(|p| self.apply_col(p, (g as u32) << 1))
                        .collect(),
                }
            })
            .collect();
        PermGroup::new(self.degree, self.gen_names.to_vec(), gens).expect("columns are perms")
    }

    /// Generator points: images of the base point under each generator.
    pub fn gen_points(&self) -> Vec<u32> {
        (0..self.ngens).map(|g| self.apply_col(0, (g as u32) << 1)).collect()
    }

    /// A word over the generators evaluating to the element at `p`.
    pub fn point_word(&self, p: u32) -> Word {
        let mut buf = Vec::new();
        self.path_cols(p, &mut buf);
        Word::reduce(buf.into_iter().map(|col| Letter::new((col >> 1) as usize, col & 1 == 1)))
    }

    /// Render a word with this group's generator names.
    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                if l.inv {
                    format!("{}^-1", self.gen_names[l.gen])
                } else {
                    self.gen_names[l.gen].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The faithful regular permutation group of a completed enumeration over
/// the trivial subgroup; generator names are preserved.
pub fn regular_representation(t: &CosetTable) -> Result<RegularGroup, Error> {
    RegularGroup::from_coset_table(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{enumerate, Strategy};
    use crate::fp::FpPresentation;

    #[test]
    fn perm_basics() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(p.order(), 3);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn cyclic_regular_rep_is_a_cycle() {
        let t = enumerate(&FpPresentation::cyclic(3), &[], 100, Strategy::Hlt).unwrap();
        let r = regular_representation(&t).unwrap();
        assert_eq!(r.degree(), 3);
        let g = r.perm_group();
        assert_eq!(g.gens()[0].order(), 3);
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn d5_regular_rep() {
        let t = enumerate(&FpPresentation::dihedral(5), &[], 100, Strategy::Hlt).unwrap();
        let r = regular_representation(&t).unwrap();
        assert_eq!(r.degree(), 10);
        assert_eq!(r.perm_group().order(), 10);
        // Point arithmetic agrees with permutation arithmetic.
        for a in 0..10u32 {
            assert_eq!(r.mul(a, r.inv(a)), 0);
            for b in 0..10u32 {
                let pa = r.perm_of(a);
                let pb = r.perm_of(b);
                assert_eq!(r.perm_of(r.mul(a, b)), pa.compose(&pb));
            }
        }
    }

    #[test]
    fn refuses_subgroup_tables() {
        let t = enumerate(&FpPresentation::dihedral(5), &[Word::gen(0)], 100, Strategy::Hlt)
            .unwrap();
        assert!(matches!(
            regular_representation(&t),
            Err(Error::NonTrivialSubgroup)
        ));
    }

    #[test]
    fn regular_from_table_matches() {
        let d4 = FiniteGroupTable::dihedral(4);
        let r = RegularGroup::from_table(&d4);
        assert_eq!(r.order(), 8);
        for a in 0..8u32 {
            for b in 0..8u32 {
                assert_eq!(r.mul(a, b), d4.mul(a, b));
            }
            assert_eq!(r.inv(a), d4.inv(a));
            assert_eq!(r.element_order(a), d4.element_order(a));
        }
    }

    #[test]
    fn symmetric_group_order_via_schreier_sims() {
        // S_10 from adjacent transpositions: order 10!.
        let n = 10usize;
        let mut gens = Vec::new();
        let mut names = Vec::new();
        for i in 0..n - 1 {
            let mut imgs: Vec<u32> = (0..n as u32).collect();
            imgs.swap(i, i + 1);
            gens.push(Perm::from_images(imgs).unwrap());
            names.push(format!("t{i}"));
        }
        let g = PermGroup::new(n, names, gens).unwrap();
        assert_eq!(g.order(), 3_628_800);
        // Membership: a 3-cycle is in, degree-11 nothing to check.
        let mut imgs: Vec<u32> = (0..n as u32).collect();
        imgs[0] = 1;
        imgs[1] = 2;
        imgs[2] = 0;
        assert!(g.contains(&Perm::from_images(imgs).unwrap()));
    }

    #[test]
    fn alternating_membership() {
        // A_4 from two gens; a transposition is not a member.
        let gens = vec![
            Perm::from_images(vec![1, 2, 0, 3]).unwrap(), // (012)
            Perm::from_images(vec![0, 2, 3, 1]).unwrap(), // (123)
        ];
        let g = PermGroup::new(4, vec!["x".into(), "y".into()], gens).unwrap();
        assert_eq!(g.order(), 12);
        let swap = Perm::from_images(vec![1, 0, 2, 3]).unwrap();
        assert!(!g.contains(&swap));
    }
}
