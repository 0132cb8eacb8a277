//! Polycyclic presentations and collection from the left.
//!
//! A presentation has generators `g_1 < g_2 < ... < g_n`, power relations
//! `g_i^{e_i} = word in later generators` for the indices in the power set
//! I, and conjugation relations `g_i^{g_j} = word in g_{j+1}..g_n` for
//! j < i. Normal forms are `g_1^{a_1} ... g_n^{a_n}` with `0 <= a_i < e_i`
//! for i in I and unconstrained integer exponents otherwise.
//!
//! Collection moves the leftmost violation first: adjacent syllables are
//! merged, exponents of power-set generators are brought into range, and a
//! descending pair `g_u^a g_v^b` (u > v) is rewritten to
//! `g_v^b (g_u^a)^(g_v^b)`. This discipline is a sealed choice: normal
//! forms must be stable across versions.
//!
//! Text format (`docs/formats.md`): `pcgens: n`, then `pow i: e -> word`,
//! `conj i j: word`, `conjinv i j: word` lines, words in `g3^2 g5` token
//! syntax with `1` for the empty word.

use crate::error::Error;

/// A word in normal form: strictly ascending generator indices (0-based),
/// nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NormalWord(pub Vec<(u32, i64)>);

impl NormalWord {
    pub fn identity() -> Self {
        NormalWord(Vec::new())
    }

    pub fn gen(g: u32) -> Self {
        NormalWord(vec![(g, 1)])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.0
    }

    pub fn exponent_of(&self, g: u32) -> i64 {
        self.0.iter().find(|&&(h, _)| h == g).map_or(0, |&(_, e)| e)
    }

    /// Leading (smallest-index) generator and exponent.
    pub fn leading(&self) -> Option<(u32, i64)> {
        self.0.first().copied()
    }

    /// Formal inverse as a raw syllable list (not a normal form).
    pub fn inverse_raw(&self) -> Vec<(u32, i64)> {
        self.0.iter().rev().map(|&(g, e)| (g, -e)).collect()
    }

    pub fn min_gen(&self) -> Option<u32> {
        self.0.first().map(|&(g, _)| g)
    }
}

#[derive(Clone, Debug)]
pub struct PcPresentation {
    names: Vec<String>,
    /// `e_i` for generators in the power set I; `None` outside I.
    exponents: Vec<Option<u64>>,
    /// Power words, meaningful where `exponents` is set.
    powers: Vec<NormalWord>,
    /// `conj[i][j] = g_i^(g_j)` for j < i; `None` means the generators
    /// commute.
    conj: Vec<Vec<Option<NormalWord>>>,
    /// `g_i^(g_j^-1)`; required where `conj` is nontrivial and j is not in
    /// I, derived for finite consistent presentations otherwise.
    conj_inv: Vec<Vec<Option<NormalWord>>>,
    consistent: bool,
}

/// Iteration guard for collection on malformed input.
const COLLECT_STEP_LIMIT: u64 = 200_000_000;

impl PcPresentation {
    pub fn new(ngens: usize) -> Self {
        PcPresentation {
            names: (1..=ngens).map(|i| format!("g{i}")).collect(),
            exponents: vec![None; ngens],
            powers: vec![NormalWord::identity(); ngens],
            conj: (0..ngens).map(|i| vec![None; i]).collect(),
            conj_inv: (0..ngens).map(|i| vec![None; i]).collect(),
            consistent: false,
        }
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set_name(&mut self, i: usize, name: String) {
        self.names[i] = name;
    }

    pub fn exponent(&self, i: usize) -> Option<u64> {
        self.exponents[i]
    }

    pub fn power_word(&self, i: usize) -> &NormalWord {
        &self.powers[i]
    }

    pub fn conj_word(&self, i: usize, j: usize) -> Option<&NormalWord> {
        self.conj[i][j].as_ref()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Declare `g_i^e = word`.
    pub fn set_power(&mut self, i: usize, e: u64, word: NormalWord) -> Result<(), Error> {
        if e == 0 {
            return Err(Error::InvalidPcPresentation("power exponent must be positive".into()));
        }
        self.check_word_range(&word, i, "power")?;
        self.exponents[i] = Some(e);
        self.powers[i] = word;
        self.consistent = false;
        Ok(())
    }

    /// Declare `g_i^(g_j) = word`, j < i.
    pub fn set_conj(&mut self, i: usize, j: usize, word: NormalWord) -> Result<(), Error> {
        if j >= i {
            return Err(Error::InvalidPcPresentation(
                "conjugation relations require j < i".into(),
            ));
        }
        self.check_word_range(&word, j, "conjugate")?;
        self.conj[i][j] = if word == NormalWord::gen(i as u32) { None } else { Some(word) };
        self.consistent = false;
        Ok(())
    }

    /// Declare `g_i^(g_j^-1) = word`, j < i.
    pub fn set_conj_inv(&mut self, i: usize, j: usize, word: NormalWord) -> Result<(), Error> {
        if j >= i {
            return Err(Error::InvalidPcPresentation(
                "conjugation relations require j < i".into(),
            ));
        }
        self.check_word_range(&word, j, "inverse conjugate")?;
        self.conj_inv[i][j] = if word == NormalWord::gen(i as u32) { None } else { Some(word) };
        self.consistent = false;
        Ok(())
    }

    fn check_word_range(&self, word: &NormalWord, min_excl: usize, what: &str) -> Result<(), Error> {
        let mut prev: Option<u32> = None;
        for &(g, e) in word.syllables() {
            if g as usize >= self.ngens() {
                return Err(Error::InvalidPcPresentation(format!(
                    "{what} word mentions generator {} beyond the presentation",
                    g + 1
                )));
            }
            if g as usize <= min_excl {
                return Err(Error::InvalidPcPresentation(format!(
                    "{what} word must lie in generators above g{}",
                    min_excl + 1
                )));
            }
            if let Some(p) = prev {
                if g <= p {
                    return Err(Error::InvalidPcPresentation(format!(
                        "{what} word is not in normal order"
                    )));
                }
            }
            if e == 0 {
                return Err(Error::InvalidPcPresentation(format!("{what} word has a zero exponent")));
            }
            if let Some(ord) = self.exponents[g as usize] {
                if e < 0 || e >= ord as i64 {
                    return Err(Error::InvalidPcPresentation(format!(
                        "{what} word exponent of g{} out of range",
                        g + 1
                    )));
                }
            }
            prev = Some(g);
        }
        Ok(())
    }

    /// `g_m^(g_v^sign)` as a stored or trivial word.
    fn conj_gen(&self, m: u32, v: u32, positive: bool) -> Result<NormalWord, Error> {
        debug_assert!(m > v);
        let slot = if positive { &self.conj[m as usize][v as usize] } else { &self.conj_inv[m as usize][v as usize] };
        match slot {
            Some(w) => Ok(w.clone()),
            None => {
                if !positive
                    && self.conj[m as usize][v as usize].is_some()
                {
                    return Err(Error::InvalidPcPresentation(format!(
                        "inverse conjugate of g{} by g{} is not available; finalize the \
                         presentation or provide conjinv",
                        m + 1,
                        v + 1
                    )));
                }
                Ok(NormalWord::gen(m))
            }
        }
    }

    /// Conjugate a word (in generators > v) by `g_v^(sign 1)`, one letter.
    fn conj_word_by_letter(
        &self,
        w: &[(u32, i64)],
        v: u32,
        positive: bool,
    ) -> Result<Vec<(u32, i64)>, Error> {
        let mut out = Vec::new();
        for &(m, e) in w {
            debug_assert!(m > v, "conjugation invariant violated");
            let img = self.conj_gen(m, v, positive)?;
            if e >= 0 {
                for _ in 0..e {
                    out.extend_from_slice(img.syllables());
                }
            } else {
                let inv = img.inverse_raw();
                for _ in 0..(-e) {
                    out.extend_from_slice(&inv);
                }
            }
        }
        Ok(out)
    }

    /// `(g_u^a)^(g_v^b)` as a collected normal word (in generators > v).
    fn conj_power(&self, u: u32, a: i64, v: u32, b: i64) -> Result<NormalWord, Error> {
        let mut w: Vec<(u32, i64)> = vec![(u, 1)];
        let positive = b >= 0;
        for _ in 0..b.unsigned_abs() {
            w = self.conj_word_by_letter(&w, v, positive)?;
            w = self.collect_raw(w)?.0;
        }
        // (g_u^x)^a = ((g_u)^x)^a since conjugation is an endomorphism.
        let base = NormalWord(w);
        let mut out: Vec<(u32, i64)> = Vec::new();
        if a >= 0 {
            for _ in 0..a {
                out.extend_from_slice(base.syllables());
            }
        } else {
            let inv = base.inverse_raw();
            for _ in 0..(-a) {
                out.extend_from_slice(&inv);
            }
        }
        Ok(NormalWord(self.collect_raw(out)?.0))
    }

    /// Collect a raw syllable word to normal form.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<NormalWord, Error> {
        for &(g, _) in word {
            if g >= self.ngens() {
                return Err(Error::UnknownGenerator { index: g, ngens: self.ngens() });
            }
        }
        let raw: Vec<(u32, i64)> = word.iter().map(|&(g, e)| (g as u32, e)).collect();
        Ok(NormalWord(self.collect_raw(raw)?.0))
    }

    /// Multiply two normal words.
    pub fn mul(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, Error> {
        let mut raw = a.0.clone();
        raw.extend_from_slice(&b.0);
        Ok(NormalWord(self.collect_raw(raw)?.0))
    }

    /// Inverse of a normal word.
    pub fn inv(&self, a: &NormalWord) -> Result<NormalWord, Error> {
        Ok(NormalWord(self.collect_raw(a.inverse_raw())?.0))
    }

    /// `b^-1 a b`.
    pub fn conj_words(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, Error> {
        let mut raw = b.inverse_raw();
        raw.extend_from_slice(&a.0);
        raw.extend_from_slice(&b.0);
        Ok(NormalWord(self.collect_raw(raw)?.0))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm_words(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, Error> {
        let mut raw = a.inverse_raw();
        raw.extend(b.inverse_raw());
        raw.extend_from_slice(&a.0);
        raw.extend_from_slice(&b.0);
        Ok(NormalWord(self.collect_raw(raw)?.0))
    }

    pub fn pow(&self, a: &NormalWord, k: i64) -> Result<NormalWord, Error> {
        let mut raw = Vec::new();
        if k >= 0 {
            for _ in 0..k {
                raw.extend_from_slice(&a.0);
            }
        } else {
            let inv = a.inverse_raw();
            for _ in 0..(-k) {
                raw.extend_from_slice(&inv);
            }
        }
        Ok(NormalWord(self.collect_raw(raw)?.0))
    }

    /// Order of the element represented by a normal word.
    pub fn element_order(&self, a: &NormalWord) -> Result<u64, Error> {
        let mut x = a.clone();
        let mut k = 1u64;
        while !x.is_identity() {
            x = self.mul(&x, a)?;
            k += 1;
            if k > 1 << 40 {
                return Err(Error::BudgetExceeded("element order runaway".into()));
            }
        }
        Ok(k)
    }

    fn collect_raw(&self, raw: Vec<(u32, i64)>) -> Result<(Vec<(u32, i64)>, u64), Error> {
        let mut w: Vec<(u32, i64)> = Vec::with_capacity(raw.len());
        for (g, e) in raw {
            if e == 0 {
                continue;
            }
            match w.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        w.pop();
                    }
                }
                _ => w.push((g, e)),
            }
        }
        let mut p: usize = 0;
        let mut steps: u64 = 0;
        while p < w.len() {
            steps += 1;
            if steps > COLLECT_STEP_LIMIT {
                return Err(Error::InvalidPcPresentation(
                    "collection did not terminate within the step limit".into(),
                ));
            }
            // Merge with the next syllable when the generator repeats.
            if p + 1 < w.len() && w[p].0 == w[p + 1].0 {
                w[p].1 += w[p + 1].1;
                w.remove(p + 1);
                if w[p].1 == 0 {
                    w.remove(p);
                }
                p = p.saturating_sub(1);
                continue;
            }
            let (g, e) = w[p];
            // Exponent range for power-set generators.
            if let Some(ord) = self.exponents[g as usize] {
                let ord = ord as i64;
                if e >= ord {
                    let tail = self.powers[g as usize].clone();
                    w[p].1 = e - ord;
                    let at = if w[p].1 == 0 {
                        w.remove(p);
                        p
                    } else {
                        p + 1
                    };
                    w.splice(at..at, tail.0.iter().copied());
                    p = p.saturating_sub(1);
                    continue;
                }
                if e < 0 {
                    let tail = self.powers[g as usize].inverse_raw();
                    w[p].1 = e + ord;
                    let at = if w[p].1 == 0 {
                        w.remove(p);
                        p
                    } else {
                        p + 1
                    };
                    w.splice(at..at, tail.iter().copied());
                    p = p.saturating_sub(1);
                    continue;
                }
            }
            // Order violation with the next syllable.
            if p + 1 < w.len() && w[p].0 > w[p + 1].0 {
                let (u, a) = w[p];
                let (v, b) = w[p + 1];
                let conjugated = self.conj_power(u, a, v, b)?;
                w.remove(p + 1);
                w[p] = (v, b);
                w.splice(p + 1..p + 1, conjugated.0.iter().copied());
                p = p.saturating_sub(1);
                continue;
            }
            p += 1;
        }
        Ok((w, steps))
    }

    /// Evaluate the standard overlap set and return the distinct
    /// non-collapsing induced relations, in first-found order. The list is
    /// empty exactly when the presentation is consistent.
    ///
    /// The tests, for 0-based indices:
    /// * `g_k (g_j g_i)  =  (g_k g_j) g_i` for k > j > i;
    /// * `(g_j^{e_j}) g_i = g_j^{e_j - 1} (g_j g_i)` for j > i, j in I;
    /// * `g_j (g_i^{e_i}) = (g_j g_i) g_i^{e_i - 1}` for j > i, i in I;
    /// * `g_i (g_i^{e_i}) = (g_i^{e_i}) g_i` for i in I;
    /// * `(g_i g_j) g_j^-1 = g_i` and `(g_i g_j^-1) g_j = g_i` for j not in
    ///   I, j < i.
    pub fn check_consistency(&self) -> Result<Vec<NormalWord>, Error> {
        let n = self.ngens();
        let mut found: Vec<NormalWord> = Vec::new();
        let push = |lhs: NormalWord, rhs: NormalWord, found: &mut Vec<NormalWord>| {
            if lhs == rhs {
                return;
            }
            let rel = self.difference_relation(&lhs, &rhs);
            if !rel.is_identity() && !found.contains(&rel) {
                found.push(rel);
            }
        };
        let gen = |i: usize| vec![(i, 1i64)];
        let to_raw = |w: &NormalWord| -> Vec<(usize, i64)> {
            w.0.iter().map(|&(g, e)| (g as usize, e)).collect()
        };

        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    // g_k (g_j g_i) vs (g_k g_j) g_i
                    let inner = self.collect(&[(j, 1), (i, 1)])?;
                    let mut left = gen(k);
                    left.extend(to_raw(&inner));
                    let lhs = self.collect(&left)?;
                    let inner = self.collect(&[(k, 1), (j, 1)])?;
                    let mut right = to_raw(&inner);
                    right.push((i, 1));
                    let rhs = self.collect(&right)?;
                    push(lhs, rhs, &mut found);
                }
            }
        }
        for j in 0..n {
            let Some(ej) = self.exponents[j] else { continue };
            for i in 0..j {
                // (g_j^{e_j}) g_i vs g_j^{e_j-1} (g_j g_i)
                let mut left = to_raw(&self.collect(&[(j, ej as i64)])?);
                left.push((i, 1));
                let lhs = self.collect(&left)?;
                let inner = self.collect(&[(j, 1), (i, 1)])?;
                let mut right = vec![(j, ej as i64 - 1)];
                right.extend(to_raw(&inner));
                let rhs = self.collect(&right)?;
                push(lhs, rhs, &mut found);
            }
        }
        for i in 0..n {
            let Some(ei) = self.exponents[i] else { continue };
            for j in i + 1..n {
                // g_j (g_i^{e_i}) vs (g_j g_i) g_i^{e_i-1}
                let mut left = gen(j);
                left.extend(to_raw(&self.collect(&[(i, ei as i64)])?));
                let lhs = self.collect(&left)?;
                let inner = self.collect(&[(j, 1), (i, 1)])?;
                let mut right = to_raw(&inner);
                right.push((i, ei as i64 - 1));
                let rhs = self.collect(&right)?;
                push(lhs, rhs, &mut found);
            }
        }
        for i in 0..n {
            let Some(ei) = self.exponents[i] else { continue };
            // g_i (g_i^{e_i}) vs (g_i^{e_i}) g_i
            let mut left = gen(i);
            left.extend(to_raw(&self.collect(&[(i, ei as i64)])?));
            let lhs = self.collect(&left)?;
            let mut right = to_raw(&self.collect(&[(i, ei as i64)])?);
            right.push((i, 1));
            let rhs = self.collect(&right)?;
            push(lhs, rhs, &mut found);
        }
        for j in 0..n {
            if self.exponents[j].is_some() {
                continue;
            }
            for i in j + 1..n {
                // (g_i g_j) g_j^-1 = g_i and (g_i g_j^-1) g_j = g_i
                for sign in [1i64, -1] {
                    let inner = self.collect(&[(i, 1), (j, sign)])?;
                    let mut left = to_raw(&inner);
                    left.push((j, -sign));
                    let lhs = self.collect(&left)?;
                    let rhs = NormalWord::gen(i as u32);
                    push(lhs, rhs, &mut found);
                }
            }
        }
        Ok(found)
    }

    /// The induced relation `lhs * rhs^-1` of a failed overlap test. When
    /// the sides differ only in generators outside the power set (the
    /// central tails of a naive q-central extension) this is the exact
    /// exponent difference; otherwise the formal concatenation is returned.
    fn difference_relation(&self, lhs: &NormalWord, rhs: &NormalWord) -> NormalWord {
        let mut diff: std::collections::BTreeMap<u32, i64> = std::collections::BTreeMap::new();
        for &(g, e) in lhs.syllables() {
            *diff.entry(g).or_insert(0) += e;
        }
        for &(g, e) in rhs.syllables() {
            *diff.entry(g).or_insert(0) -= e;
        }
        diff.retain(|_, e| *e != 0);
        let in_power_set_and_equal = lhs
            .syllables()
            .iter()
            .chain(rhs.syllables())
            .all(|&(g, _)| self.exponents[g as usize].is_none() || !diff.contains_key(&g));
        if in_power_set_and_equal {
            let mut rel: Vec<(u32, i64)> = diff.into_iter().collect();
            if let Some(&(_, first)) = rel.first() {
                if first < 0 {
                    rel = rel.into_iter().map(|(g, e)| (g, -e)).collect();
                }
            }
            NormalWord(rel)
        } else {
            // Genuinely non-central inconsistency: formal lhs * rhs^-1.
            let mut raw = lhs.0.clone();
            raw.extend(rhs.inverse_raw());
            NormalWord(raw)
        }
    }

    /// Check consistency; on success derive the missing inverse-conjugation
    /// data and mark the presentation consistent. Only finite presentations
    /// (every generator in the power set) are accepted.
    pub fn finalize(&mut self) -> Result<(), Error> {
        for (i, e) in self.exponents.iter().enumerate() {
            if e.is_none() {
                return Err(Error::InfinitePcGroup(i + 1));
            }
        }
        let bad = self.check_consistency()?;
        if !bad.is_empty() {
            return Err(Error::Inconsistent(format!(
                "{} overlap relations do not collapse; first: {}",
                bad.len(),
                self.word_to_string(&bad[0])
            )));
        }
        // Derive g_i^(g_j^-1) by iterating the conjugation automorphism to
        // its inverse, descending in j so later data is ready.
        for j in (0..self.ngens()).rev() {
            for i in j + 1..self.ngens() {
                if self.conj[i][j].is_none() || self.conj_inv[i][j].is_some() {
                    continue;
                }
                let target = NormalWord::gen(i as u32);
                let mut prev = target.clone();
                loop {
                    let next = NormalWord(
                        self.collect_raw(self.conj_word_by_letter(prev.syllables(), j as u32, true)?)?
                            .0,
                    );
                    if next == target {
                        break;
                    }
                    prev = next;
                }
                self.conj_inv[i][j] = if prev == target { None } else { Some(prev) };
            }
        }
        self.consistent = true;
        Ok(())
    }

    /// `prod e_i` for a finite consistent presentation.
    pub fn order(&self) -> Result<u64, Error> {
        if !self.consistent {
            return Err(Error::Inconsistent("order requires a finalized presentation".into()));
        }
        let mut n = 1u64;
        for (i, e) in self.exponents.iter().enumerate() {
            n = n.checked_mul(e.ok_or(Error::InfinitePcGroup(i + 1))?).ok_or_else(|| {
                Error::BudgetExceeded("group order exceeds u64".into())
            })?;
        }
        Ok(n)
    }

    /// Enumerate all normal forms in mixed-radix order (first generator
    /// most significant).
    pub fn elements(&self) -> Result<Vec<NormalWord>, Error> {
        let order = self.order()?;
        if order > 1 << 22 {
            return Err(Error::BudgetExceeded(format!("group order {order} too large to list")));
        }
        let n = self.ngens();
        let radix: Vec<u64> = self.exponents.iter().map(|e| e.unwrap()).collect();
        let mut out = Vec::with_capacity(order as usize);
        for idx in 0..order {
            let mut digits = vec![0u64; n];
            let mut rem = idx;
            for i in (0..n).rev() {
                digits[i] = rem % radix[i];
                rem /= radix[i];
            }
            let w: Vec<(u32, i64)> = digits
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(i, &d)| (i as u32, d as i64))
                .collect();
            out.push(NormalWord(w));
        }
        Ok(out)
    }

    /// Index of a normal form in the mixed-radix enumeration.
    pub fn element_index(&self, w: &NormalWord) -> Result<u64, Error> {
        let radix: Vec<u64> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, e)| e.ok_or(Error::InfinitePcGroup(i + 1)))
            .collect::<Result<_, _>>()?;
        let mut idx = 0u64;
        let mut syl = w.syllables().iter().peekable();
        for (i, &r) in radix.iter().enumerate() {
            let d = match syl.peek() {
                Some(&&(g, e)) if g as usize == i => {
                    syl.next();
                    e as u64
                }
                _ => 0,
            };
            idx = idx * r + d;
        }
        Ok(idx)
    }

    /// The regular permutation representation: points are normal forms,
    /// generators act by right multiplication.
    pub fn regular_group(&self) -> Result<crate::perm::RegularGroup, Error> {
        let elements = self.elements()?;
        let mut cols = Vec::with_capacity(self.ngens());
        for g in 0..self.ngens() {
            let gw = NormalWord::gen(g as u32);
            let mut col = Vec::with_capacity(elements.len());
            for w in &elements {
                col.push(self.element_index(&self.mul(w, &gw)?)? as u32);
            }
            cols.push(col);
        }
        crate::perm::RegularGroup::from_columns(self.names.clone(), cols)
    }

    pub fn word_to_string(&self, w: &NormalWord) -> String {
        if w.is_identity() {
            return "1".into();
        }
        w.syllables()
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.names[g as usize].clone()
                } else {
                    format!("{}^{}", self.names[g as usize], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn parse_pc_word(&self, text: &str) -> Result<NormalWord, Error> {
        let mut out: Vec<(u32, i64)> = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::MalformedWord(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let idx = name
                .strip_prefix('g')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= self.ngens())
                .ok_or_else(|| Error::MalformedWord(format!("unknown pc generator `{name}`")))?;
            out.push(((idx - 1) as u32, exp));
        }
        // Normal words must be strictly ascending.
        for pair in out.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::MalformedWord("pc word is not in normal order".into()));
            }
        }
        Ok(NormalWord(out))
    }

    /// Parse the `pcgens/pow/conj/conjinv` text format.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut pres: Option<PcPresentation> = None;
        for (lineno, rawline) in text.lines().enumerate() {
            let line = rawline.trim();
            let lno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lno, msg };
            if let Some(rest) = line.strip_prefix("pcgens:") {
                let n: usize =
                    rest.trim().parse().map_err(|_| perr("bad generator count".into()))?;
                pres = Some(PcPresentation::new(n));
            } else if let Some(rest) = line.strip_prefix("pow") {
                let p = pres.as_mut().ok_or_else(|| perr("pow before pcgens".into()))?;
                let (head, word) =
                    rest.split_once(':').ok_or_else(|| perr("expected `pow i: e -> word`".into()))?;
                let i: usize =
                    head.trim().parse().map_err(|_| perr("bad generator index".into()))?;
                let (e, w) = word
                    .split_once("->")
                    .ok_or_else(|| perr("expected `e -> word`".into()))?;
                let e: u64 = e.trim().parse().map_err(|_| perr("bad exponent".into()))?;
                let w = p.parse_pc_word(w).map_err(|e| perr(e.to_string()))?;
                p.set_power(i - 1, e, w).map_err(|e| perr(e.to_string()))?;
            } else if let Some(rest) = line.strip_prefix("conjinv") {
                let p = pres.as_mut().ok_or_else(|| perr("conjinv before pcgens".into()))?;
                let (head, word) =
                    rest.split_once(':').ok_or_else(|| perr("expected `conjinv i j: word`".into()))?;
                let idx: Vec<usize> = head
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| perr("bad indices".into()))?;
                if idx.len() != 2 {
                    return Err(perr("expected two indices".into()));
                }
                let w = p.parse_pc_word(word).map_err(|e| perr(e.to_string()))?;
                p.set_conj_inv(idx[0] - 1, idx[1] - 1, w).map_err(|e| perr(e.to_string()))?;
            } else if let Some(rest) = line.strip_prefix("conj") {
                let p = pres.as_mut().ok_or_else(|| perr("conj before pcgens".into()))?;
                let (head, word) =
                    rest.split_once(':').ok_or_else(|| perr("expected `conj i j: word`".into()))?;
                let idx: Vec<usize> = head
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| perr("bad indices".into()))?;
                if idx.len() != 2 {
                    return Err(perr("expected two indices".into()));
                }
                let w = p.parse_pc_word(word).map_err(|e| perr(e.to_string()))?;
                p.set_conj(idx[0] - 1, idx[1] - 1, w).map_err(|e| perr(e.to_string()))?;
            } else {
                return Err(perr(format!("unrecognized line `{line}`")));
            }
        }
        pres.ok_or(Error::Parse { line: 0, msg: "missing pcgens: line".into() })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("pcgens: {}\n", self.ngens());
        for i in 0..self.ngens() {
            if let Some(e) = self.exponents[i] {
                out.push_str(&format!(
                    "pow {}: {} -> {}\n",
                    i + 1,
                    e,
                    self.word_to_string(&self.powers[i])
                ));
            }
        }
        for i in 0..self.ngens() {
            for j in 0..i {
                if let Some(w) = &self.conj[i][j] {
                    out.push_str(&format!("conj {} {}: {}\n", i + 1, j + 1, self.word_to_string(w)));
                }
                if let Some(w) = &self.conj_inv[i][j] {
                    out.push_str(&format!(
                        "conjinv {} {}: {}\n",
                        i + 1,
                        j + 1,
                        self.word_to_string(w)
                    ));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::FiniteGroupTable;
    use proptest::prelude::*;

    /// `<g1, g2 | g1^2 = 1, g2^g1 = g2^(n-1), g2^n = 1>`: D_n.
    fn dihedral_pc(n: u64) -> PcPresentation {
        let mut p = PcPresentation::new(2);
        p.set_power(0, 2, NormalWord::identity()).unwrap();
        p.set_power(1, n, NormalWord::identity()).unwrap();
        p.set_conj(1, 0, NormalWord(vec![(1, n as i64 - 1)])).unwrap();
        p.finalize().unwrap();
        p
    }

    #[test]
    fn dihedral_collect_swap() {
        // collect(g_2 g_1) = g_1 g_2^(n-1).
        for n in [3u64, 5, 8] {
            let p = dihedral_pc(n);
            let w = p.collect(&[(1, 1), (0, 1)]).unwrap();
            assert_eq!(w, NormalWord(vec![(0, 1), (1, n as i64 - 1)]));
        }
    }

    #[test]
    fn collect_empty_is_empty() {
        let p = dihedral_pc(4);
        assert!(p.collect(&[]).unwrap().is_identity());
        assert!(p.collect(&[(0, 2)]).unwrap().is_identity());
    }

    #[test]
    fn collect_rejects_unknown_gen() {
        let p = dihedral_pc(4);
        assert!(matches!(p.collect(&[(5, 1)]), Err(Error::UnknownGenerator { .. })));
    }

    #[test]
    fn dihedral_consistency_and_order() {
        let p = dihedral_pc(6);
        assert!(p.check_consistency().unwrap().is_empty());
        assert_eq!(p.order().unwrap(), 12);
    }

    #[test]
    fn single_generator_consistent() {
        let mut p = PcPresentation::new(1);
        p.set_power(0, 3, NormalWord::identity()).unwrap();
        assert!(p.check_consistency().unwrap().is_empty());
        p.finalize().unwrap();
        assert_eq!(p.order().unwrap(), 3);
    }

    #[test]
    fn collect_matches_regular_representation_oracle() {
        // Words in the D_6 presentation evaluated through the independent
        // multiplication-table representation: g1 -> s (index 6),
        // g2 -> r (index 1).
        let p = dihedral_pc(6);
        let table = FiniteGroupTable::dihedral(6);
        let eval = |w: &[(usize, i64)]| -> u32 {
            let mut x = table.identity();
            for &(g, e) in w {
                let img = if g == 0 { 6 } else { 1 };
                x = table.mul(x, table.pow(img, e));
            }
            x
        };
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            rng_state
        };
        for _ in 0..200 {
            let len = (next() % 30 + 1) as usize;
            let word: Vec<(usize, i64)> =
                (0..len).map(|_| ((next() % 2) as usize, (next() % 7) as i64 - 3)).collect();
            let collected = p.collect(&word).unwrap();
            let raw: Vec<(usize, i64)> =
                collected.syllables().iter().map(|&(g, e)| (g as usize, e)).collect();
            assert_eq!(eval(&word), eval(&raw), "word {word:?}");
        }
    }

    #[test]
    fn quaternion16_consistent() {
        // g1 = b, g2 = a: b^2 = a^4, a^b = a^7, a^8 = 1.
        let mut p = PcPresentation::new(2);
        p.set_power(0, 2, NormalWord(vec![(1, 4)])).unwrap();
        p.set_power(1, 8, NormalWord::identity()).unwrap();
        p.set_conj(1, 0, NormalWord(vec![(1, 7)])).unwrap();
        p.finalize().unwrap();
        assert_eq!(p.order().unwrap(), 16);
        // Element orders match the table group.
        let r = p.regular_group().unwrap();
        let q16 = FiniteGroupTable::quaternion(16).unwrap();
        let mut orders_pc: Vec<u64> = (0..16).map(|i| r.element_order(i)).collect();
        let mut orders_tab: Vec<u64> = (0..16).map(|a| q16.element_order(a)).collect();
        orders_pc.sort_unstable();
        orders_tab.sort_unstable();
        assert_eq!(orders_pc, orders_tab);
    }

    #[test]
    fn inconsistent_presentation_detected() {
        // g1^2 = 1, g2^3 = 1, g2^g1 = g2^2 is consistent (S_3); changing
        // the conjugate to g2 itself with a bad power relation breaks it.
        let mut p = PcPresentation::new(2);
        p.set_power(0, 2, NormalWord::identity()).unwrap();
        p.set_power(1, 4, NormalWord::identity()).unwrap();
        // g2^g1 = g2^3 has order 4 action; fine. Make power overlap fail:
        // g1^2 = g2 forces (g2^g1)^g1 = g2^(g1^2) = g2^g2 = g2, but
        // iterating g2 -> g2^3 twice gives g2^9 = g2; consistent after all.
        // Use a genuinely broken one instead: g2^g1 = g2^2 (not an
        // automorphism of C_4).
        p.set_conj(1, 0, NormalWord(vec![(1, 2)])).unwrap();
        assert!(!p.check_consistency().unwrap().is_empty());
        assert!(p.finalize().is_err());
    }

    #[test]
    fn infinite_input_rejected() {
        let mut p = PcPresentation::new(2);
        p.set_power(0, 2, NormalWord::identity()).unwrap();
        // g2 has no power relation.
        assert!(matches!(p.finalize(), Err(Error::InfinitePcGroup(2))));
    }

    #[test]
    fn text_roundtrip() {
        let p = dihedral_pc(5);
        let text = p.to_text();
        let mut q = PcPresentation::parse(&text).unwrap();
        q.finalize().unwrap();
        assert_eq!(q.order().unwrap(), 10);
        assert_eq!(
            q.collect(&[(1, 1), (0, 1)]).unwrap(),
            p.collect(&[(1, 1), (0, 1)]).unwrap()
        );
    }

    proptest! {
        /// collect is a normal-form function: collect(collect(w) * collect(v))
        /// = collect(w * v) in D_8 and Q_16.
        #[test]
        fn collect_is_multiplicative(
            w in prop::collection::vec((0usize..2, -6i64..=6), 0..12),
            v in prop::collection::vec((0usize..2, -6i64..=6), 0..12),
        ) {
            let mut presentations = vec![dihedral_pc(8)];
            let mut q16 = PcPresentation::new(2);
            q16.set_power(0, 2, NormalWord(vec![(1, 4)])).unwrap();
            q16.set_power(1, 8, NormalWord::identity()).unwrap();
            q16.set_conj(1, 0, NormalWord(vec![(1, 7)])).unwrap();
            q16.finalize().unwrap();
            presentations.push(q16);
            for p in &presentations {
                let cw = p.collect(&w).unwrap();
                let cv = p.collect(&v).unwrap();
                let prod = p.mul(&cw, &cv).unwrap();
                let mut wv = w.clone();
                wv.extend_from_slice(&v);
                prop_assert_eq!(prod, p.collect(&wv).unwrap());
            }
        }
    }
}
