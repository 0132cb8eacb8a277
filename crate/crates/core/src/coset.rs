//! Todd-Coxeter coset enumeration.
//!
//! HLT with lookahead and coset compaction is the default; a Felsch-style
//! enumerator with a deduction stack is available behind a flag. Both feed
//! the same coincidence machinery and the same post-hoc verification: a
//! completed table is only returned after every relator scans to closure at
//! every coset and every subgroup generator fixes coset 1.
//!
//! Cosets are numbered in first-definition order; dead cosets are squeezed
//! out by compaction, preserving relative order, so the final numbering is
//! deterministic for a fixed presentation and strategy.

use crate::error::Error;
use crate::fp::FpPresentation;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Hlt,
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    ExceededLimit,
}

/// Default working-table budget: 2^22 cosets.
pub const DEFAULT_MAX_COSETS: usize = 1 << 22;

/// A completed (or abandoned) coset table.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    gen_names: Vec<String>,
    num_cosets: usize,
    /// Row-major `num_cosets x 2*ngens`, 0-based cosets; empty unless complete.
    action: Vec<u32>,
    subgroup_words: Vec<Word>,
    status: EnumerationStatus,
}

fn col_of(l: Letter) -> u32 {
    (l.gen as u32) << 1 | (l.inv as u32)
}

fn inv_col(c: u32) -> u32 {
    c ^ 1
}

fn word_cols(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|&l| col_of(l)).collect()
}

impl CosetTable {
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn num_cosets(&self) -> usize {
        self.num_cosets
    }

    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    /// Image of a coset (0-based) under one table column.
    pub fn apply_col(&self, coset: u32, col: u32) -> u32 {
        let idx = coset as usize * (2 * self.ngens) + col as usize;
        debug_assert!(idx < self.action.len());
        // Hot path of post-hoc verification over every (coset, relator).
        unsafe { *self.action.get_unchecked(idx) }
    }

    /// Image of a coset (0-based) under a generator (`inv` for its inverse).
    pub fn apply_gen(&self, coset: u32, gen: usize, inv: bool) -> u32 {
        self.apply_col(coset, (gen as u32) << 1 | inv as u32)
    }

    /// Image of a coset under a word.
    pub fn apply_word(&self, mut coset: u32, w: &Word) -> u32 {
        for &l in w.letters() {
            coset = self.apply_col(coset, col_of(l));
        }
        coset
    }

    /// The raw action row for a coset.
    pub fn row(&self, coset: u32) -> &[u32] {
        let w = 2 * self.ngens;
        &self.action[coset as usize * w..(coset as usize + 1) * w]
    }

    /// Text export: header, then one line per coset with the 1-based images
    /// under each generator.
    pub fn export_text(&self) -> String {
        let mut out = format!("cosets: {} gens: {}\n", self.num_cosets, self.gen_names.join(" "));
        for c in 0..self.num_cosets as u32 {
            let imgs: Vec<String> =
                (0..self.ngens).map(|g| (self.apply_gen(c, g, false) + 1).to_string()).collect();
            out.push_str(&format!("{}: {}\n", c + 1, imgs.join(" ")));
        }
        out
    }

    /// Full independent verification: columns are permutations, every
    /// relator scans to closure at every coset, and coset 1 is fixed by
    /// every subgroup generator word.
    pub fn verify(&self, pres: &FpPresentation) -> Result<(), Error> {
        if !self.is_complete() {
            return Err(Error::IncompleteTable);
        }
        let n = self.num_cosets as u32;
        let w = 2 * self.ngens;
        // Bijectivity and mutual inverseness of columns.
        for col in 0..w as u32 {
            let mut seen = vec![false; n as usize];
            for c in 0..n {
                let img = self.apply_col(c, col);
                if img >= n || seen[img as usize] {
                    return Err(Error::InvalidTable(format!(
                        "column {col} is not a permutation"
                    )));
                }
                seen[img as usize] = true;
                if self.apply_col(img, inv_col(col)) != c {
                    return Err(Error::InvalidTable(format!(
                        "column {col} inverse mismatch at coset {}",
                        c + 1
                    )));
                }
            }
        }
        for r in pres.relators() {
            for c in 0..n {
                if self.apply_word(c, r) != c {
                    return Err(Error::InvalidTable(format!(
                        "relator `{}` does not close at coset {}",
                        pres.word_to_string(r),
                        c + 1
                    )));
                }
            }
        }
        for sw in &self.subgroup_words {
            if self.apply_word(0, sw) != 0 {
                return Err(Error::InvalidTable(format!(
                    "subgroup word `{}` moves coset 1",
                    pres.word_to_string(sw)
                )));
            }
        }
        Ok(())
    }
}

struct Enumerator {
    ncols: usize,
    max_cosets: usize,
    /// 1-based rows; row 0 unused. 0 entries mean undefined.
    table: Vec<u32>,
    /// Union-find; p[c] == c iff live (or c == 0).
    p: Vec<u32>,
    alive: usize,
    allocated: usize,
    dstack: Vec<(u32, u32)>,
    track_deductions: bool,
}

enum ScanOutcome {
    Done,
    Incomplete,
    NeedSpace { coset: u32, col: u32 },
}

impl Enumerator {
    fn new(ncols: usize, max_cosets: usize, track_deductions: bool) -> Self {
        let mut e = Enumerator {
            ncols,
            max_cosets,
            table: vec![0; ncols],
            p: vec![0],
            alive: 0,
            allocated: 0,
            dstack: Vec::new(),
            track_deductions,
        };
        e.new_coset();
        e
    }

    fn new_coset(&mut self) -> u32 {
        self.allocated += 1;
        self.alive += 1;
        self.table.extend(std::iter::repeat_n(0u32, self.ncols));
        self.p.push(self.allocated as u32);
        self.allocated as u32
    }

    fn get(&self, c: u32, col: u32) -> u32 {
        let idx = c as usize * self.ncols + col as usize;
        debug_assert!(idx < self.table.len());
        // Hot path of every scan; the index is in range by construction.
        unsafe { *self.table.get_unchecked(idx) }
    }

    fn set(&mut self, c: u32, col: u32, v: u32) {
        self.table[c as usize * self.ncols + col as usize] = v;
    }

    fn is_alive(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.p[root as usize] != root {
            root = self.p[root as usize];
        }
        while self.p[c as usize] != root {
            let next = self.p[c as usize];
            self.p[c as usize] = root;
            c = next;
        }
        root
    }

    fn set_edge(&mut self, a: u32, col: u32, b: u32) {
        self.set(a, col, b);
        self.set(b, inv_col(col), a);
        if self.track_deductions {
            self.dstack.push((a, col));
        }
    }

    /// Define a new coset as the image of (a, col). The caller guarantees
    /// the slot is empty; fails only when the table is full.
    fn define(&mut self, a: u32, col: u32) -> Option<u32> {
        if self.allocated >= self.max_cosets {
            return None;
        }
        let b = self.new_coset();
        self.set_edge(a, col, b);
        Some(b)
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut std::collections::VecDeque<u32>) {
        let x = self.rep(a);
        let y = self.rep(b);
        if x != y {
            let (mu, nu) = if x < y { (x, y) } else { (y, x) };
            self.p[nu as usize] = mu;
            self.alive -= 1;
            queue.push_back(nu);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = std::collections::VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(gamma) = queue.pop_front() {
            for col in 0..self.ncols as u32 {
                let delta = self.get(gamma, col);
                if delta == 0 {
                    continue;
                }
                // Remove the back edge into the dead coset.
                self.set(delta, inv_col(col), 0);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_img = self.get(mu, col);
                if mu_img != 0 {
                    self.merge(nu, mu_img, &mut queue);
                } else {
                    let nu_pre = self.get(nu, inv_col(col));
                    if nu_pre != 0 {
                        self.merge(mu, nu_pre, &mut queue);
                    } else {
                        self.set_edge(mu, col, nu);
                    }
                }
            }
        }
    }

    /// Scan a relator (as column indices, optionally rotated) at a coset.
    /// With `fill`, gaps are closed by defining new cosets (HLT).
    ///
    /// Invariant maintained: the scan needs `f * w[i..=j] = b`. A forward
    /// scan past `j` or a backward scan past `i` leaves an empty middle, so
    /// `f = b` is forced and a difference is a coincidence; a gap of one is
    /// a deduction.
    fn scan(&mut self, alpha: u32, w: &[u32], offset: usize, fill: bool) -> ScanOutcome {
        let n = w.len();
        if n == 0 {
            return ScanOutcome::Done;
        }
        // Wrapped positions are tracked incrementally; a modulo per letter
        // costs a division in the hottest loop of the whole crate.
        let mut f = alpha;
        let mut i = 0usize;
        let mut fi = offset;
        let mut b = alpha;
        let mut j = n - 1;
        let mut bj = offset + n - 1;
        if bj >= n {
            bj -= n;
        }
        loop {
            while i <= j {
                let img = self.get(f, w[fi]);
                if img == 0 {
                    break;
                }
                f = img;
                i += 1;
                fi += 1;
                if fi == n {
                    fi = 0;
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return ScanOutcome::Done;
            }
            let mut overshoot = false;
            while !overshoot {
                let img = self.get(b, inv_col(w[bj]));
                if img == 0 {
                    break;
                }
                b = img;
                if j == i {
                    overshoot = true;
                } else {
                    j -= 1;
                    bj = if bj == 0 { n - 1 } else { bj - 1 };
                }
            }
            if overshoot {
                if f != b {
                    self.coincidence(f, b);
                }
                return ScanOutcome::Done;
            }
            if j == i {
                // Gap of exactly one: deduction.
                self.set_edge(f, w[fi], b);
                return ScanOutcome::Done;
            }
            if !fill {
                return ScanOutcome::Incomplete;
            }
            match self.define(f, w[fi]) {
                Some(_) => continue,
                None => return ScanOutcome::NeedSpace { coset: f, col: w[fi] },
            }
        }
    }

    /// Smallest live coset with an undefined column, if any. Coincidence
    /// processing can clear a back edge on a live coset that the main scan
    /// already passed, so enumeration loops must re-pass until this is
    /// empty.
    fn first_hole(&self) -> Option<u32> {
        for c in 1..=self.allocated as u32 {
            if !self.is_alive(c) {
                continue;
            }
            for col in 0..self.ncols as u32 {
                if self.get(c, col) == 0 {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Fill the hole at `(a, col)` from an existing reverse edge, if some
    /// live coset already records `m * col^-1 = a`. Coincidence transplants
    /// can leave such one-way edges; defining a fresh coset across one
    /// would just create a doomed duplicate.
    fn repair_from_reverse(&mut self, a: u32, col: u32) -> bool {
        let ic = inv_col(col);
        for m in 1..=self.allocated as u32 {
            if self.is_alive(m) && self.get(m, ic) == a {
                self.set(a, col, m);
                if self.track_deductions {
                    self.dstack.push((a, col));
                }
                return true;
            }
        }
        false
    }

    /// Restore the inverse direction of every one-way edge between live
    /// cosets, queueing coincidences where two sources claim one slot.
    fn symmetrize(&mut self) {
        for m in 1..=self.allocated as u32 {
            if !self.is_alive(m) {
                continue;
            }
            for col in 0..self.ncols as u32 {
                if !self.is_alive(m) {
                    break;
                }
                let t = self.get(m, col);
                if t == 0 {
                    continue;
                }
                let back = self.get(t, inv_col(col));
                if back == 0 {
                    self.set(t, inv_col(col), m);
                    if self.track_deductions {
                        self.dstack.push((t, inv_col(col)));
                    }
                } else if back != m {
                    self.coincidence(back, m);
                }
            }
        }
    }

    /// Compact live cosets into 1..=alive preserving order; returns the
    /// old -> new map (0 entries for dead cosets).
    fn compact(&mut self) -> Vec<u32> {
        // Resolve dangling edges through representatives first.
        for c in 1..=self.allocated as u32 {
            if !self.is_alive(c) {
                continue;
            }
            for col in 0..self.ncols as u32 {
                let img = self.get(c, col);
                if img != 0 && !self.is_alive(img) {
                    let r = self.rep(img);
                    self.set(c, col, r);
                }
            }
        }
        let mut map = vec![0u32; self.allocated + 1];
        let mut next = 0u32;
        for c in 1..=self.allocated as u32 {
            if self.is_alive(c) {
                next += 1;
                map[c as usize] = next;
            }
        }
        let ncols = self.ncols;
        let mut new_table = vec![0u32; (next as usize + 1) * ncols];
        for c in 1..=self.allocated as u32 {
            if !self.is_alive(c) {
                continue;
            }
            let nc = map[c as usize] as usize;
            for col in 0..ncols {
                let img = self.table[c as usize * ncols + col];
                new_table[nc * ncols + col] = if img == 0 { 0 } else { map[img as usize] };
            }
        }
        self.table = new_table;
        self.allocated = next as usize;
        self.alive = next as usize;
        self.p = (0..=next).collect();
        self.dstack.clear();
        map
    }
}

fn relator_check(pres: &FpPresentation, subgroup: &[Word]) -> Result<(), Error> {
    for r in pres.relators() {
        pres.validate_word(r)?;
    }
    for w in subgroup {
        pres.validate_word(w)?;
    }
    Ok(())
}

/// Run Todd-Coxeter over `pres` modulo the subgroup generated by
/// `subgroup`. On success the table is complete, verified, and numbered in
/// first-definition order. Exceeding `max_cosets` yields a table with
/// status [`EnumerationStatus::ExceededLimit`] and no action data, never a
/// wrong table.
pub fn enumerate(
    pres: &FpPresentation,
    subgroup: &[Word],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable, Error> {
    if max_cosets == 0 {
        return Err(Error::InvalidArgument("max_cosets must be at least 1".into()));
    }
    relator_check(pres, subgroup)?;
    let ncols = 2 * pres.ngens();
    let relators: Vec<Vec<u32>> = pres.relators().iter().map(word_cols).collect();
    let sub_words: Vec<Vec<u32>> = subgroup.iter().map(word_cols).collect();

    let exceeded = |pres: &FpPresentation, subgroup: &[Word]| CosetTable {
        ngens: pres.ngens(),
        gen_names: pres.gen_names().to_vec(),
        num_cosets: 0,
        action: Vec::new(),
        subgroup_words: subgroup.to_vec(),
        status: EnumerationStatus::ExceededLimit,
    };

    let mut e = Enumerator::new(ncols, max_cosets, strategy == Strategy::Felsch);

    // Subgroup generators fix coset 1.
    for w in &sub_words {
        match e.scan(1, w, 0, true) {
            ScanOutcome::Done => {}
            ScanOutcome::Incomplete => unreachable!("filling scan cannot be incomplete"),
            ScanOutcome::NeedSpace { .. } => return Ok(exceeded(pres, subgroup)),
        }
    }

    let run = match strategy {
        Strategy::Hlt => hlt_loop(&mut e, &relators),
        Strategy::Felsch => felsch_loop(&mut e, &relators),
    };
    match run {
        Ok(()) => finish(e, pres, subgroup),
        Err(SpaceExhausted) => Ok(exceeded(pres, subgroup)),
    }
}

/// Convenience wrapper returning the subgroup index.
pub fn subgroup_index(
    pres: &FpPresentation,
    subgroup: &[Word],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<usize, Error> {
    let t = enumerate(pres, subgroup, max_cosets, strategy)?;
    match t.status() {
        EnumerationStatus::Complete => Ok(t.num_cosets()),
        EnumerationStatus::ExceededLimit => Err(Error::ExceededLimit { max_cosets }),
    }
}

struct SpaceExhausted;

fn hlt_loop(e: &mut Enumerator, relators: &[Vec<u32>]) -> Result<(), SpaceExhausted> {
    let mut alpha: u32 = 1;
    loop {
        while alpha <= e.allocated as u32 {
            if !e.is_alive(alpha) {
                alpha += 1;
                continue;
            }
            let mut rel_idx = 0;
            while rel_idx < relators.len() {
                if !e.is_alive(alpha) {
                    break;
                }
                match e.scan(alpha, &relators[rel_idx], 0, true) {
                    ScanOutcome::Done => rel_idx += 1,
                    ScanOutcome::Incomplete => unreachable!(),
                    ScanOutcome::NeedSpace { .. } => {
                        alpha = lookahead_and_compact(e, relators, alpha)?;
                        // Retry the same relator at the surviving coset.
                    }
                }
            }
            if e.is_alive(alpha) {
                let mut col = 0u32;
                while (col as usize) < e.ncols {
                    if !e.is_alive(alpha) {
                        break;
                    }
                    if e.get(alpha, col) == 0 {
                        if e.define(alpha, col).is_none() {
                            alpha = lookahead_and_compact(e, relators, alpha)?;
                            continue;
                        }
                    }
                    col += 1;
                }
            }
            alpha += 1;
        }
        e.symmetrize();
        match e.first_hole() {
            None => return Ok(()),
            Some(c) => alpha = c,
        }
    }
}

/// HLT space recovery: scan every relator at every live coset without
/// defining (harvesting coincidences), then compact. Returns the new number
/// of the current position coset.
fn lookahead_and_compact(
    e: &mut Enumerator,
    relators: &[Vec<u32>],
    alpha: u32,
) -> Result<u32, SpaceExhausted> {
    let before = e.alive;
    let mut c: u32 = 1;
    while c <= e.allocated as u32 {
        if e.is_alive(c) {
            for r in relators {
                if !e.is_alive(c) {
                    break;
                }
                let _ = e.scan(c, r, 0, false);
            }
        }
        c += 1;
    }
    if e.alive == before && e.alive >= e.max_cosets {
        return Err(SpaceExhausted);
    }
    let surviving = e.rep(alpha);
    let map = e.compact();
    let new_alpha = map[surviving as usize];
    if e.allocated >= e.max_cosets {
        return Err(SpaceExhausted);
    }
    Ok(new_alpha)
}

fn felsch_loop(e: &mut Enumerator, relators: &[Vec<u32>]) -> Result<(), SpaceExhausted> {
    // Rotations of every relator grouped by leading column.
    let mut rotations: Vec<Vec<(usize, usize)>> = vec![Vec::new(); e.ncols];
    for (ri, r) in relators.iter().enumerate() {
        for (pos, &c) in r.iter().enumerate() {
            rotations[c as usize].push((ri, pos));
        }
    }

    process_deductions(e, relators, &rotations);
    let mut alpha: u32 = 1;
    loop {
        while alpha <= e.allocated as u32 {
            if !e.is_alive(alpha) {
                alpha += 1;
                continue;
            }
            let mut col = 0u32;
            while (col as usize) < e.ncols {
                if !e.is_alive(alpha) {
                    break;
                }
                if e.get(alpha, col) == 0 {
                    if e.repair_from_reverse(alpha, col) {
                        process_deductions(e, relators, &rotations);
                        if !e.is_alive(alpha) {
                            break;
                        }
                        col += 1;
                        continue;
                    }
                    if e.define(alpha, col).is_none() {
                        // Try to recover space from dead cosets.
                        let surviving = e.rep(alpha);
                        let map = e.compact();
                        alpha = map[surviving as usize];
                        if e.allocated >= e.max_cosets {
                            return Err(SpaceExhausted);
                        }
                        continue;
                    }
                    process_deductions(e, relators, &rotations);
                    if !e.is_alive(alpha) {
                        break;
                    }
                }
                col += 1;
            }
            alpha += 1;
        }
        e.symmetrize();
        process_deductions(e, relators, &rotations);
        match e.first_hole() {
            None => return Ok(()),
            Some(c) => alpha = c,
        }
    }
}

fn process_deductions(
    e: &mut Enumerator,
    relators: &[Vec<u32>],
    rotations: &[Vec<(usize, usize)>],
) {
    while let Some((a, col)) = e.dstack.pop() {
        let a = e.rep(a);
        let b = e.get(a, col);
        if b == 0 {
            continue;
        }
        for &(ri, pos) in &rotations[col as usize] {
            let _ = e.scan(a, &relators[ri], pos, false);
        }
        let b = e.rep(b);
        for &(ri, pos) in &rotations[inv_col(col) as usize] {
            let _ = e.scan(b, &relators[ri], pos, false);
        }
    }
}

fn finish(
    mut e: Enumerator,
    pres: &FpPresentation,
    subgroup: &[Word],
) -> Result<CosetTable, Error> {
    e.compact();
    let n = e.allocated;
    let ncols = e.ncols;
    let mut action = vec![0u32; n * ncols];
    for c in 1..=n as u32 {
        for col in 0..ncols as u32 {
            let img = e.get(c, col);
            debug_assert!(img != 0, "incomplete table after enumeration");
            action[(c as usize - 1) * ncols + col as usize] = img - 1;
        }
    }
    let table = CosetTable {
        ngens: pres.ngens(),
        gen_names: pres.gen_names().to_vec(),
        num_cosets: n,
        action,
        subgroup_words: subgroup.to_vec(),
        status: EnumerationStatus::Complete,
    };
    table.verify(pres)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate_both(pres: &FpPresentation, subgroup: &[Word], max: usize) -> (CosetTable, CosetTable) {
        let h = enumerate(pres, subgroup, max, Strategy::Hlt).unwrap();
        let f = enumerate(pres, subgroup, max, Strategy::Felsch).unwrap();
        assert!(h.is_complete() && f.is_complete());
        assert_eq!(h.num_cosets(), f.num_cosets(), "strategy-independent size");
        (h, f)
    }

    #[test]
    fn trivial_presentation_one_coset() {
        let mut p = FpPresentation::new(vec!["a".into()]).unwrap();
        p.push_relator(Word::gen(0)).unwrap();
        let (t, _) = enumerate_both(&p, &[], 100);
        assert_eq!(t.num_cosets(), 1);
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..=12 {
            let p = FpPresentation::cyclic(n);
            let (t, _) = enumerate_both(&p, &[], 1000);
            assert_eq!(t.num_cosets(), n as usize, "C_{n}");
        }
    }

    #[test]
    fn dihedral_has_2n_cosets() {
        for n in 2..=10 {
            let p = FpPresentation::dihedral(n);
            let (t, _) = enumerate_both(&p, &[], 4096);
            assert_eq!(t.num_cosets(), 2 * n as usize, "D_{n}");
        }
    }

    #[test]
    fn dihedral_over_subgroup() {
        // Index of <a> in D_5 is 5.
        let p = FpPresentation::dihedral(5);
        let idx = subgroup_index(&p, &[Word::gen(0)], 1000, Strategy::Hlt).unwrap();
        assert_eq!(idx, 5);
        let idx = subgroup_index(&p, &[Word::gen(0)], 1000, Strategy::Felsch).unwrap();
        assert_eq!(idx, 5);
        // Whole-group generating set has index 1.
        let idx =
            subgroup_index(&p, &[Word::gen(0), Word::gen(1)], 1000, Strategy::Hlt).unwrap();
        assert_eq!(idx, 1);
    }

    #[test]
    fn exceeding_limit_is_flagged() {
        let p = FpPresentation::dihedral(6);
        let t = enumerate(&p, &[], 3, Strategy::Hlt).unwrap();
        assert_eq!(t.status(), EnumerationStatus::ExceededLimit);
        assert!(subgroup_index(&p, &[], 3, Strategy::Hlt).is_err());
    }

    #[test]
    fn free_product_c2_c3_modulo_nothing_diverges_gracefully() {
        // <a, b | a^2, b^3> is infinite; must hit the limit, not loop.
        let mut p = FpPresentation::new(vec!["a".into(), "b".into()]).unwrap();
        p.push_relator(Word::gen(0).pow(2)).unwrap();
        p.push_relator(Word::gen(1).pow(3)).unwrap();
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = enumerate(&p, &[], 500, s).unwrap();
            assert_eq!(t.status(), EnumerationStatus::ExceededLimit);
        }
    }

    #[test]
    fn tables_are_deterministic_across_runs() {
        let p = FpPresentation::dihedral(7);
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let a = enumerate(&p, &[], 4096, s).unwrap();
            let b = enumerate(&p, &[], 4096, s).unwrap();
            assert_eq!(a.action, b.action);
            assert_eq!(a.export_text(), b.export_text());
        }
    }

    #[test]
    fn quaternion_presentation() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a> is Q_8.
        let mut p = FpPresentation::new(vec!["a".into(), "b".into()]).unwrap();
        let a = Word::gen(0);
        let b = Word::gen(1);
        p.push_relator(a.pow(4)).unwrap();
        p.push_relator(a.pow(2).concat(&b.pow(-2))).unwrap();
        p.push_relator(b.inverse().concat(&a).concat(&b).concat(&a)).unwrap();
        let (t, _) = enumerate_both(&p, &[], 1000);
        assert_eq!(t.num_cosets(), 8);
    }

    #[test]
    fn export_format() {
        let p = FpPresentation::cyclic(3);
        let t = enumerate(&p, &[], 100, Strategy::Hlt).unwrap();
        let text = t.export_text();
        assert!(text.starts_with("cosets: 3 gens: a\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
