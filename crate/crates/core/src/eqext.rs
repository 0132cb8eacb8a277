//! q-central extensions of finite polycyclic groups and the subgroups that
//! carry their q-exterior and q-tensor squares.
//!
//! From a consistent presentation of G, one central tail generator is
//! introduced per relator. The consistency relations of the naive extension
//! induce relations among the tails; together with the q-th power rows they
//! span an integer lattice whose Smith reduction yields the consistent
//! extension `E_q(G)` with tail orders dividing q. The subgroup
//! `W = (E_q G)' (E_q G)^q`, computed by noncommutative elimination into an
//! induced polycyclic sequence, is the q-exterior square; for q-perfect
//! groups it is also the q-tensor square, and the kernel of its projection
//! onto G is the Schur multiplier with Z_q coefficients.

use crate::analyze::{invariants_from_element_orders, AbelianInvariants, SubgroupHandle};
use crate::error::Error;
use crate::pc::{NormalWord, PcPresentation};
use crate::report::{GroupReport, Timings};
use crate::snf::{smith_normal_form, smith_normal_form_with_transforms, IntMatrix};
use std::collections::HashSet;

/// Which base relation a tail generator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelatorTag {
    /// The power relation of generator i (0-based).
    Power(usize),
    /// The conjugation relation `g_i^(g_j)`, j < i.
    Conj(usize, usize),
}

/// The q-central extension `E_q(G)` of a finite pc group.
#[derive(Clone, Debug)]
pub struct EqExtension {
    base: PcPresentation,
    q: u32,
    tags: Vec<RelatorTag>,
    /// Consistent presentation: base generators followed by the surviving
    /// tails in invariant-factor order.
    result: PcPresentation,
    /// Invariant factors of the tail lattice, ascending, one per relator
    /// tag (including the trivial ones); their product times |G| is |E_q|.
    tail_orders: Vec<u64>,
    /// Each original tag's tail `t_i` expressed in the surviving tails.
    tag_words: Vec<NormalWord>,
    /// The naive (possibly inconsistent) extension before reduction.
    naive: PcPresentation,
    /// Induced tail relations found by the consistency check of the naive
    /// extension, as exponent vectors over the tags.
    induced: Vec<Vec<i64>>,
}

impl EqExtension {
    pub fn base(&self) -> &PcPresentation {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn tags(&self) -> &[RelatorTag] {
        &self.tags
    }

    pub fn result(&self) -> &PcPresentation {
        &self.result
    }

    pub fn tail_orders(&self) -> &[u64] {
        &self.tail_orders
    }

    pub fn naive(&self) -> &PcPresentation {
        &self.naive
    }

    pub fn induced_relations(&self) -> &[Vec<i64>] {
        &self.induced
    }

    pub fn order(&self) -> u64 {
        self.result.order().expect("result is finalized")
    }

    /// The image of the original tail `t_i` in the reduced presentation.
    pub fn tag_word(&self, i: usize) -> &NormalWord {
        &self.tag_words[i]
    }

    /// Order of the original tail `t_i` in `E_q(G)`.
    pub fn tag_order(&self, i: usize) -> u64 {
        self.result.element_order(&self.tag_words[i]).expect("tails have finite order")
    }

    /// A base generator as an element of the extension.
    pub fn base_gen(&self, i: usize) -> NormalWord {
        NormalWord::gen(i as u32)
    }
}

/// Relator tags of a finite pc presentation, in the fixed order: for each
/// generator index i ascending, first the conjugation relations `(i, j)`
/// with j ascending, then the power relation of i.
pub fn relator_tags(g: &PcPresentation) -> Vec<RelatorTag> {
    let mut tags = Vec::new();
    for i in 0..g.ngens() {
        for j in 0..i {
            tags.push(RelatorTag::Conj(i, j));
        }
        tags.push(RelatorTag::Power(i));
    }
    tags
}

/// The naive extension: one free central tail per relator, appended to the
/// defining words. Possibly inconsistent; its consistency failures are
/// exactly the induced tail relations.
pub fn naive_extension(g: &PcPresentation, tags: &[RelatorTag]) -> Result<PcPresentation, Error> {
    if !g.is_consistent() {
        return Err(Error::Inconsistent("the base must be a finalized presentation".into()));
    }
    let n = g.ngens();
    let l = tags.len();
    let mut p = PcPresentation::new(n + l);
    for i in 0..n {
        p.set_name(i, g.names()[i].clone());
    }
    for (t, _) in tags.iter().enumerate() {
        p.set_name(n + t, format!("t{}", t + 1));
    }
    for (t, tag) in tags.iter().enumerate() {
        let tail = (n + t) as u32;
        match *tag {
            RelatorTag::Power(i) => {
                let mut w = g.power_word(i).clone();
                w.0.push((tail, 1));
                p.set_power(i, g.exponent(i).ok_or(Error::InfinitePcGroup(i + 1))?, w)?;
            }
            RelatorTag::Conj(i, j) => {
                let mut w = match g.conj_word(i, j) {
                    Some(w) => w.clone(),
                    None => NormalWord::gen(i as u32),
                };
                w.0.push((tail, 1));
                p.set_conj(i, j, w)?;
            }
        }
    }
    Ok(p)
}

/// Build `E_q(G)` for a finalized finite presentation and q >= 1.
pub fn build_eq(g: &PcPresentation, q: u32) -> Result<EqExtension, Error> {
    if q == 0 {
        return Err(Error::QZeroUnsupported);
    }
    if !g.is_consistent() {
        return Err(Error::Inconsistent("build_eq requires a finalized presentation".into()));
    }
    let n = g.ngens();
    let tags = relator_tags(g);
    let l = tags.len();
    let naive = naive_extension(g, &tags)?;

    // Induced tail relations from the overlap tests.
    let mut induced: Vec<Vec<i64>> = Vec::new();
    for rel in naive.check_consistency()? {
        let mut vec = vec![0i64; l];
        for &(gen, e) in rel.syllables() {
            let idx = gen as usize;
            if idx < n {
                return Err(Error::Inconsistent(format!(
                    "consistency failure involves base generator {}; the base presentation \
                     is not consistent",
                    idx + 1
                )));
            }
            vec[idx - n] = e;
        }
        induced.push(vec);
    }

    // Tail lattice: columns are the induced relations plus q * e_i.
    let ncols = induced.len() + l;
    let mut b = IntMatrix::zero(l, ncols);
    for (c, rel) in induced.iter().enumerate() {
        for (r, &e) in rel.iter().enumerate() {
            b.set(r, c, e);
        }
    }
    for i in 0..l {
        b.set(i, induced.len() + i, q as i64);
    }
    let dec = smith_normal_form_with_transforms(&b)?;
    let tail_orders: Vec<u64> = dec.diag.clone();
    debug_assert!(tail_orders.iter().all(|&d| d >= 1 && q as u64 % d == 0));

    // New tails: s_j = t^(col_j of U^-1) has order d_j; an exponent vector
    // x over the original tails reads y = U x over the new ones.
    let kept: Vec<usize> = (0..l).filter(|&j| tail_orders[j] > 1).collect();
    let m = kept.len();
    let reduce_tail_vec = |x: &[i64]| -> Vec<(u32, i64)> {
        let y = dec.u.apply(x);
        kept.iter()
            .enumerate()
            .filter_map(|(pos, &j)| {
                let d = tail_orders[j] as i64;
                let e = y[j].rem_euclid(d);
                (e != 0).then_some(((n + pos) as u32, e))
            })
            .collect()
    };

    let mut result = PcPresentation::new(n + m);
    for i in 0..n {
        result.set_name(i, g.names()[i].clone());
    }
    for (pos, &j) in kept.iter().enumerate() {
        result.set_name(n + pos, format!("s{}", j + 1));
        result.set_power(n + pos, tail_orders[j], NormalWord::identity())?;
    }
    for (t, tag) in tags.iter().enumerate() {
        let mut x = vec![0i64; l];
        x[t] = 1;
        let tail_syllables = reduce_tail_vec(&x);
        match *tag {
            RelatorTag::Power(i) => {
                let mut w = g.power_word(i).clone();
                w.0.extend(tail_syllables);
                result.set_power(i, g.exponent(i).unwrap(), w)?;
            }
            RelatorTag::Conj(i, j) => {
                let mut w = match g.conj_word(i, j) {
                    Some(w) => w.clone(),
                    None => NormalWord::gen(i as u32),
                };
                w.0.extend(tail_syllables);
                result.set_conj(i, j, w)?;
            }
        }
    }
    result.finalize().map_err(|e| {
        Error::Inconsistent(format!("reduced extension failed its consistency check: {e}"))
    })?;

    let tag_words: Vec<NormalWord> = (0..l)
        .map(|t| {
            let mut x = vec![0i64; l];
            x[t] = 1;
            NormalWord(reduce_tail_vec(&x))
        })
        .collect();

    let ext = EqExtension {
        base: g.clone(),
        q,
        tags,
        result,
        tail_orders,
        tag_words,
        naive,
        induced,
    };
    debug_assert_eq!(
        ext.order(),
        g.order()? * ext.tail_orders.iter().product::<u64>(),
        "|E_q| = |G| * prod d_i"
    );
    Ok(ext)
}

/// An induced polycyclic sequence for a subgroup: one element per occupied
/// leading index, closed under powers and mutual conjugation.
#[derive(Clone, Debug)]
pub struct InducedSubgroup {
    /// The sequence, ascending by leading generator.
    pub sequence: Vec<NormalWord>,
    /// Relative orders of the sequence elements.
    pub relative_orders: Vec<u64>,
    /// Consistent pc presentation of the subgroup on the sequence.
    pub presentation: PcPresentation,
}

impl InducedSubgroup {
    pub fn order(&self) -> u64 {
        self.relative_orders.iter().product()
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Solve `t * b = a (mod e)` given gcd(b, e) | a; result in [0, e/gcd).
fn solve_congruence(a: i64, b: i64, e: i64) -> i64 {
    let (g, inv, _) = ext_gcd(b, e);
    debug_assert_eq!(a % g, 0);
    let m = e / g;
    ((a / g) % m * (inv % m)).rem_euclid(m)
}

struct Sifter<'a> {
    p: &'a PcPresentation,
    slots: Vec<Option<NormalWord>>,
}

impl<'a> Sifter<'a> {
    fn new(p: &'a PcPresentation) -> Self {
        Sifter { p, slots: vec![None; p.ngens()] }
    }

    fn exponent(&self, i: u32) -> i64 {
        self.p.exponent(i as usize).expect("finite presentation") as i64
    }

    /// Insert an element, reducing against the occupied slots; may replace
    /// a slot by a gcd combination, in which case the displaced elements
    /// are pushed onto the work list.
    fn sift_in(&mut self, mut w: NormalWord, work: &mut Vec<NormalWord>) -> Result<bool, Error> {
        let mut changed = false;
        loop {
            let Some((i, a)) = w.leading() else { return Ok(changed) };
            let e = self.exponent(i);
            match self.slots[i as usize].clone() {
                None => {
                    self.slots[i as usize] = Some(w);
                    return Ok(true);
                }
                Some(u) => {
                    let b = u.leading().unwrap().1;
                    let g = num_integer::gcd(b, e);
                    if a % g == 0 {
                        let t = solve_congruence(a, b, e);
                        // w := u^-t w has strictly higher leading index.
                        w = self.p.mul(&self.p.pow(&u, -t)?, &w)?;
                    } else {
                        let d = num_integer::gcd(a, g);
                        // Combine to leading exponent d = gcd(a, b, e).
                        let (g0, x, y) = ext_gcd(b, a);
                        let (_, u0, _) = ext_gcd(g0, e);
                        let s = (u0 * x).rem_euclid(e);
                        let t = (u0 * y).rem_euclid(e);
                        let new = self.p.mul(&self.p.pow(&u, s)?, &self.p.pow(&w, t)?)?;
                        debug_assert_eq!(new.leading().map(|(gi, ge)| (gi, ge)), Some((i, d)));
                        self.slots[i as usize] = Some(new);
                        work.push(u);
                        work.push(w);
                        return Ok(true);
                    }
                }
            }
        }
    }

    /// Non-destructive membership reduction: the exponents of `w` along the
    /// sequence, or None if `w` falls outside.
    fn express(&self, mut w: NormalWord) -> Result<Option<Vec<(usize, i64)>>, Error> {
        let mut out = Vec::new();
        loop {
            let Some((i, a)) = w.leading() else { return Ok(Some(out)) };
            let e = self.exponent(i);
            match &self.slots[i as usize] {
                None => return Ok(None),
                Some(u) => {
                    let b = u.leading().unwrap().1;
                    let g = num_integer::gcd(b, e);
                    if a % g != 0 {
                        return Ok(None);
                    }
                    let t = solve_congruence(a, b, e);
                    out.push((i as usize, t));
                    w = self.p.mul(&self.p.pow(u, -t)?, &w)?;
                }
            }
        }
    }

}

/// Compute `W = <[g_i, g_j], g_k^q>` over the base generators of `E_q(G)`
/// as an induced polycyclic sequence with its own consistent presentation.
/// The sequence is verified against an independent breadth-first closure of
/// the generators inside the extension.
pub fn derived_power_subgroup(ext: &EqExtension) -> Result<InducedSubgroup, Error> {
    let p = ext.result();
    let nbase = ext.base().ngens();
    let mut gens: Vec<NormalWord> = Vec::new();
    for i in 0..nbase {
        for j in i + 1..nbase {
            gens.push(p.comm_words(&NormalWord::gen(i as u32), &NormalWord::gen(j as u32))?);
        }
    }
    for k in 0..nbase {
        gens.push(p.pow(&NormalWord::gen(k as u32), ext.q() as i64)?);
    }
    induced_subgroup(p, gens)
}

/// Induced polycyclic sequence of the subgroup generated by the given
/// elements of a finalized finite pc group.
pub fn induced_subgroup(
    p: &PcPresentation,
    gens: Vec<NormalWord>,
) -> Result<InducedSubgroup, Error> {
    if !p.is_consistent() {
        return Err(Error::Inconsistent("subgroup induction requires a finalized group".into()));
    }
    let mut sifter = Sifter::new(p);
    let mut work: Vec<NormalWord> = gens.clone();
    while let Some(w) = work.pop() {
        sifter.sift_in(w, &mut work)?;
    }
    // Close under consequences until a full pass is silent.
    loop {
        let occupied: Vec<NormalWord> = sifter.slots.iter().flatten().cloned().collect();
        let mut consequences: Vec<NormalWord> = Vec::new();
        for u in &occupied {
            let (i, a) = u.leading().unwrap();
            let e = sifter.exponent(i);
            let m = e / num_integer::gcd(a, e);
            consequences.push(p.pow(u, m)?);
        }
        for (ki, u) in occupied.iter().enumerate() {
            for v in occupied.iter().skip(ki + 1) {
                consequences.push(p.conj_words(v, u)?);
                consequences.push(p.conj_words(v, &p.inv(u)?)?);
            }
        }
        let mut changed = false;
        for w in consequences {
            if sifter.express(w.clone())?.is_none() {
                let mut work = vec![w];
                while let Some(x) = work.pop() {
                    sifter.sift_in(x, &mut work)?;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let sequence: Vec<NormalWord> = sifter.slots.iter().flatten().cloned().collect();
    let mut relative_orders = Vec::with_capacity(sequence.len());
    for u in &sequence {
        let (i, a) = u.leading().unwrap();
        let e = sifter.exponent(i);
        relative_orders.push((e / num_integer::gcd(a, e)) as u64);
    }

    // Subgroup presentation on the sequence.
    let r = sequence.len();
    let slot_pos: std::collections::BTreeMap<usize, usize> = sequence
        .iter()
        .enumerate()
        .map(|(pos, u)| (u.leading().unwrap().0 as usize, pos))
        .collect();
    let to_sub_word = |expr: Vec<(usize, i64)>| -> NormalWord {
        NormalWord(
            expr.into_iter()
                .filter(|&(_, e)| e != 0)
                .map(|(lead, e)| (slot_pos[&lead] as u32, e))
                .collect(),
        )
    };
    let mut sub = PcPresentation::new(r);
    for (k, u) in sequence.iter().enumerate() {
        sub.set_name(k, format!("w{}", k + 1));
        let pw = p.pow(u, relative_orders[k] as i64)?;
        let expr = sifter.express(pw)?.ok_or_else(|| {
            Error::Inconsistent("power consequence escaped the induced sequence".into())
        })?;
        sub.set_power(k, relative_orders[k], to_sub_word(expr))?;
        let u = u.clone();
        for j in k + 1..r {
            let v = &sequence[j];
            let cw = p.conj_words(v, &u)?;
            let expr = sifter.express(cw)?.ok_or_else(|| {
                Error::Inconsistent("conjugation escaped the induced sequence".into())
            })?;
            sub.set_conj(j, k, to_sub_word(expr))?;
            let cwi = p.conj_words(v, &p.inv(&u)?)?;
            let expr = sifter.express(cwi)?.ok_or_else(|| {
                Error::Inconsistent("inverse conjugation escaped the induced sequence".into())
            })?;
            sub.set_conj_inv(j, k, to_sub_word(expr))?;
        }
    }
    sub.finalize()?;

    let induced = InducedSubgroup { sequence, relative_orders, presentation: sub };

    // Independent check: breadth-first closure of the generators inside the
    // ambient group must have exactly the order the sequence claims.
    let claimed = induced.order();
    if claimed <= 100_000 {
        let mut seen: HashSet<NormalWord> = HashSet::new();
        let mut frontier = vec![NormalWord::identity()];
        seen.insert(NormalWord::identity());
        let mut muls: Vec<NormalWord> = gens.clone();
        for g in &gens {
            muls.push(p.inv(g)?);
        }
        while let Some(x) = frontier.pop() {
            for g in &muls {
                let y = p.mul(&x, g)?;
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        if seen.len() as u64 != claimed {
            return Err(Error::Inconsistent(format!(
                "induced sequence order {claimed} disagrees with closure {}",
                seen.len()
            )));
        }
    }
    Ok(induced)
}

/// Whether `G = G' G^q` for a finalized pc group, through the Smith form of
/// the abelianized relation matrix with `q * I` appended, together with the
/// order of the obstruction `G / G' G^q`.
pub fn is_q_perfect_pc(g: &PcPresentation, q: u32) -> (bool, u64) {
    let n = g.ngens();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        if let Some(e) = g.exponent(i) {
            let mut row = vec![0i64; n];
            row[i] += e as i64;
            for &(h, ex) in g.power_word(i).syllables() {
                row[h as usize] -= ex;
            }
            rows.push(row);
        }
        for j in 0..i {
            if let Some(c) = g.conj_word(i, j) {
                let mut row = vec![0i64; n];
                row[i] += 1;
                for &(h, ex) in c.syllables() {
                    row[h as usize] -= ex;
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        let mut row = vec![0i64; n];
        row[i] = q as i64;
        rows.push(row);
    }
    if n == 0 {
        return (true, 1);
    }
    let d = smith_normal_form(&IntMatrix::from_rows(&rows));
    let obstruction: u64 = d.iter().product();
    (d.iter().all(|&v| v == 1), obstruction)
}

fn report_from_subgroup(
    w: &InducedSubgroup,
    q: u32,
    route: &str,
    timings: Timings,
) -> Result<GroupReport, Error> {
    let reg = std::sync::Arc::new(w.presentation.regular_group()?);
    let whole = SubgroupHandle::whole(&reg)?;
    let structure = whole.recognize_structure()?;
    let invariant_factors = whole.abelian_invariants().ok().map(|a| a.0);
    Ok(GroupReport {
        order: w.order(),
        exponent: whole.exponent()?,
        invariant_factors,
        structure: structure.to_string(),
        route: route.into(),
        q,
        timings,
    })
}

/// The q-exterior square of a finalized finite pc group, through
/// `W = (E_q G)'(E_q G)^q`.
pub fn exterior_square_pc(g: &PcPresentation, q: u32) -> Result<(GroupReport, InducedSubgroup), Error> {
    let t0 = std::time::Instant::now();
    let ext = build_eq(g, q)?;
    let build_ms = t0.elapsed().as_millis() as u64;
    let t1 = std::time::Instant::now();
    let w = derived_power_subgroup(&ext)?;
    let analyze_ms = t1.elapsed().as_millis() as u64;
    let timings = Timings {
        build_ms,
        enumerate_ms: 0,
        analyze_ms,
        total_ms: t0.elapsed().as_millis() as u64,
    };
    let report = report_from_subgroup(&w, q, "pc", timings)?;
    Ok((report, w))
}

/// The q-tensor square by the polycyclic route; defined when G is
/// q-perfect, in which case it coincides with the q-exterior square.
pub fn tensor_square_pc(g: &PcPresentation, q: u32) -> Result<(GroupReport, InducedSubgroup), Error> {
    if q == 0 {
        return Err(Error::QZeroUnsupported);
    }
    let (perfect, obstruction) = is_q_perfect_pc(g, q);
    if !perfect {
        return Err(Error::NotQPerfect { q, obstruction });
    }
    exterior_square_pc(g, q)
}

/// `H_2(G, Z_q)` for a q-perfect finalized pc group: the kernel of the
/// projection of W onto G, read off the tail part of the induced sequence.
pub fn schur_multiplier_q(g: &PcPresentation, q: u32) -> Result<AbelianInvariants, Error> {
    if q == 0 {
        return Err(Error::QZeroUnsupported);
    }
    let (perfect, obstruction) = is_q_perfect_pc(g, q);
    if !perfect {
        return Err(Error::NotQPerfect { q, obstruction });
    }
    let ext = build_eq(g, q)?;
    let w = derived_power_subgroup(&ext)?;
    let kernel = projection_kernel(&ext, &w)?;
    Ok(kernel)
}

/// Invariants of `W n <tails>`, the kernel of `W -> G`.
pub fn projection_kernel(ext: &EqExtension, w: &InducedSubgroup) -> Result<AbelianInvariants, Error> {
    let nbase = ext.base().ngens();
    let tail_gens: Vec<&NormalWord> = w
        .sequence
        .iter()
        .filter(|u| u.leading().map_or(false, |(g, _)| g as usize >= nbase))
        .collect();
    // The kernel is a subgroup of the central tail group; enumerate it.
    let p = ext.result();
    let mut seen: HashSet<NormalWord> = HashSet::new();
    seen.insert(NormalWord::identity());
    let mut frontier = vec![NormalWord::identity()];
    while let Some(x) = frontier.pop() {
        for g in &tail_gens {
            let y = p.mul(&x, g)?;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let orders: Result<Vec<u64>, Error> = seen.iter().map(|x| p.element_order(x)).collect();
    Ok(AbelianInvariants(invariants_from_element_orders(&orders?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral_pc(n: u64) -> PcPresentation {
        let mut p = PcPresentation::new(2);
        p.set_power(0, 2, NormalWord::identity()).unwrap();
        p.set_power(1, n, NormalWord::identity()).unwrap();
        p.set_conj(1, 0, NormalWord(vec![(1, n as i64 - 1)])).unwrap();
        p.finalize().unwrap();
        p
    }

    fn cyclic_pc(n: u64) -> PcPresentation {
        let mut p = PcPresentation::new(1);
        p.set_power(0, n, NormalWord::identity()).unwrap();
        p.finalize().unwrap();
        p
    }

    #[test]
    fn dihedral_tagging_order() {
        let d5 = dihedral_pc(5);
        assert_eq!(
            relator_tags(&d5),
            vec![RelatorTag::Power(0), RelatorTag::Conj(1, 0), RelatorTag::Power(1)]
        );
    }

    #[test]
    fn naive_eq_dn_has_unique_induced_relation() {
        // t_2^n t_3^(n-2) = 1 for every q (tails are free in the naive
        // extension, so the exponents are exact).
        for (n, q) in [(3u64, 3u32), (5, 3), (7, 5), (10, 9), (4, 1)] {
            let tags = relator_tags(&dihedral_pc(n));
            let naive = naive_extension(&dihedral_pc(n), &tags).unwrap();
            let rels = naive.check_consistency().unwrap();
            assert_eq!(rels.len(), 1, "D_{n}, q={q}");
            assert_eq!(
                rels[0],
                NormalWord(vec![(3, n as i64), (4, n as i64 - 2)]),
                "D_{n}: t_2^{n} t_3^{}",
                n - 2
            );
        }
    }

    #[test]
    fn eq_dn_tail_orders_match_formulas() {
        // {q, q/(n-2, q), q/(n, q)} as a multiset.
        for (n, q) in [(3u64, 3u32), (5, 3), (7, 5), (9, 9), (10, 7)] {
            let ext = build_eq(&dihedral_pc(n), q).unwrap();
            let mut got: Vec<u64> = (0..3).map(|i| ext.tag_order(i)).collect();
            let mut want = vec![
                q as u64,
                q as u64 / num_integer::gcd(n - 2, q as u64),
                q as u64 / num_integer::gcd(n, q as u64),
            ];
            got.sort_unstable();
            want.sort_unstable();
            assert_eq!(got, want, "D_{n}, q={q}");
        }
    }

    #[test]
    fn eq_dn_generator_orders() {
        // o(g_1) = 2q, o(g_2) = lcm(n, q) in E_q(D_n).
        for (n, q) in [(5u64, 3u32), (7, 5), (8, 3)] {
            let ext = build_eq(&dihedral_pc(n), q).unwrap();
            let p = ext.result();
            assert_eq!(p.element_order(&NormalWord::gen(0)).unwrap(), 2 * q as u64);
            assert_eq!(
                p.element_order(&NormalWord::gen(1)).unwrap(),
                num_integer::lcm(n, q as u64)
            );
        }
    }

    #[test]
    fn e1_collapses_to_g() {
        for g in [dihedral_pc(6), cyclic_pc(9)] {
            let ext = build_eq(&g, 1).unwrap();
            assert_eq!(ext.order(), g.order().unwrap());
            assert!(ext.tail_orders().iter().all(|&d| d == 1));
        }
    }

    #[test]
    fn q_zero_rejected() {
        assert!(matches!(build_eq(&dihedral_pc(5), 0), Err(Error::QZeroUnsupported)));
    }

    #[test]
    fn w_of_e3_d5_is_dihedral_5() {
        let (report, w) = exterior_square_pc(&dihedral_pc(5), 3).unwrap();
        assert_eq!(w.order(), 10);
        assert_eq!(report.structure, "dihedral:5");
        assert_eq!(report.order, 10);
    }

    #[test]
    fn w_generating_set_matches_paper_form() {
        // W = <g_2^(n-2) t_2, g_1^q, g_2^q> for E_q(D_n): both generating
        // sets close to the same subgroup.
        let n = 5u64;
        let q = 3u32;
        let ext = build_eq(&dihedral_pc(n), q).unwrap();
        let p = ext.result();
        let w = derived_power_subgroup(&ext).unwrap();
        let alt_gens = vec![
            p.mul(&p.pow(&NormalWord::gen(1), n as i64 - 2).unwrap(), ext.tag_word(1)).unwrap(),
            p.pow(&NormalWord::gen(0), q as i64).unwrap(),
            p.pow(&NormalWord::gen(1), q as i64).unwrap(),
        ];
        let alt = induced_subgroup(p, alt_gens).unwrap();
        assert_eq!(alt.order(), w.order());
        assert_eq!(alt.sequence, w.sequence);
    }

    #[test]
    fn w_of_e1_is_whole_group() {
        // q = 1: the g_k^1 generate everything.
        let g = dihedral_pc(6);
        let ext = build_eq(&g, 1).unwrap();
        let w = derived_power_subgroup(&ext).unwrap();
        assert_eq!(w.order(), 12);
    }

    #[test]
    fn tensor_square_pc_requires_q_perfect() {
        // D_4 is not 4-perfect: obstruction of order 4.
        match tensor_square_pc(&dihedral_pc(4), 4) {
            Err(Error::NotQPerfect { q: 4, obstruction }) => assert_eq!(obstruction, 4),
            other => panic!("expected NotQPerfect, got {other:?}"),
        }
        // D_9 with q = 7 works and gives D_9.
        let (report, _) = tensor_square_pc(&dihedral_pc(9), 7).unwrap();
        assert_eq!(report.structure, "dihedral:9");
    }

    #[test]
    fn schur_multiplier_trivial_for_dn_q_odd() {
        for (n, q) in [(5u64, 3u32), (7, 5), (3, 1)] {
            let inv = schur_multiplier_q(&dihedral_pc(n), q).unwrap();
            assert!(inv.is_trivial(), "D_{n}, q={q}");
        }
        // Trivial group edge case.
        let c1 = cyclic_pc(1);
        assert!(schur_multiplier_q(&c1, 5).unwrap().is_trivial());
    }

    #[test]
    fn exterior_square_c3_q3() {
        // C_3 with q = 3: E_3(C_3) = C_9, W = <g^3> = C_3.
        let (report, w) = exterior_square_pc(&cyclic_pc(3), 3).unwrap();
        assert_eq!(w.order(), 3);
        assert_eq!(report.structure, "cyclic:3");
    }

    #[test]
    fn is_q_perfect_pc_matches_table_route() {
        use crate::table::{is_q_perfect, FiniteGroupTable};
        for q in 0..=6 {
            assert_eq!(
                is_q_perfect_pc(&dihedral_pc(5), q).0,
                is_q_perfect(&FiniteGroupTable::dihedral(5), q)
            );
            assert_eq!(
                is_q_perfect_pc(&cyclic_pc(4), q).0,
                is_q_perfect(&FiniteGroupTable::cyclic(4), q)
            );
        }
    }
}
