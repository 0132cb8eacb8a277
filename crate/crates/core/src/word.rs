//! Freely reduced words over a free group basis.
//!
//! A letter is a generator index together with a sign; a [`Word`] is a
//! sequence of letters with no adjacent `x x^-1` or `x^-1 x` pair. Words are
//! letter sequences rather than exponent-collected syllables: the coset
//! enumerator scans them letter by letter, so this is the shape it wants.
//! Syllable forms live in the polycyclic module only.

use crate::error::Error;

/// One signed generator letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 0-based generator index.
    pub gen: usize,
    /// True for the inverse of the generator.
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The identity word.
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// A single generator.
    pub fn gen(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, false)] }
    }

    /// Freely reduce a raw letter sequence.
    ///
    /// Stack-based: each incoming letter either cancels against the top of
    /// the stack or is pushed. Idempotent and length-non-increasing.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in raw {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    /// Freely reduce a raw sequence, rejecting letters that reference a
    /// generator index `>= ngens`.
    pub fn reduce_checked(
        raw: impl IntoIterator<Item = Letter>,
        ngens: usize,
    ) -> Result<Self, Error> {
        let mut letters = Vec::new();
        for l in raw {
            if l.gen >= ngens {
                return Err(Error::UnknownGenerator { index: l.gen, ngens });
            }
            letters.push(l);
        }
        Ok(Self::reduce(letters))
    }

    /// Build a word from `(generator, exponent)` syllables.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(gen, exp) in syllables {
            let inv = exp < 0;
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(gen, inv));
            }
        }
        Self::reduce(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index mentioned, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation followed by free reduction at the seam.
    pub fn concat(&self, other: &Word) -> Self {
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    /// `by^-1 * self * by`.
    pub fn conjugate(&self, by: &Word) -> Self {
        by.inverse().concat(self).concat(by)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Product of a sequence of words.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut out = Word::identity();
        for w in words {
            out = out.concat(w);
        }
        out
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = if l.inv { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "x{}", l.gen)?;
            } else {
                write!(f, "x{}^{}", l.gen, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn letter(gen: usize, inv: bool) -> Letter {
        Letter::new(gen, inv)
    }

    /// Naive push/pop oracle: repeatedly delete the first cancelling pair.
    fn oracle_reduce(mut raw: Vec<Letter>) -> Vec<Letter> {
        loop {
            let mut cancelled = None;
            for i in 0..raw.len().saturating_sub(1) {
                if raw[i].cancels(raw[i + 1]) {
                    cancelled = Some(i);
                    break;
                }
            }
            match cancelled {
                Some(i) => {
                    raw.remove(i + 1);
                    raw.remove(i);
                }
                None => return raw,
            }
        }
    }

    #[test]
    fn identity_cancellation() {
        // a a^-1 -> empty
        let w = Word::reduce(vec![letter(0, false), letter(0, true)]);
        assert!(w.is_identity());
    }

    #[test]
    fn single_cancellation() {
        // a b b^-1 a -> a a
        let w = Word::reduce(vec![
            letter(0, false),
            letter(1, false),
            letter(1, true),
            letter(0, false),
        ]);
        assert_eq!(w.letters(), &[letter(0, false), letter(0, false)]);
    }

    #[test]
    fn unknown_generator_rejected() {
        let e = Word::reduce_checked(vec![letter(3, false)], 2).unwrap_err();
        assert_eq!(e, Error::UnknownGenerator { index: 3, ngens: 2 });
    }

    #[test]
    fn commutator_shape() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        let c = Word::commutator(&a, &b);
        assert_eq!(
            c.letters(),
            &[letter(0, true), letter(1, true), letter(0, false), letter(1, false)]
        );
    }

    #[test]
    fn syllables_and_pow() {
        let w = Word::from_syllables(&[(0, 2), (1, -1)]);
        assert_eq!(w.len(), 3);
        assert!(w.concat(&w.inverse()).is_identity());
        assert_eq!(w.pow(3), w.concat(&w).concat(&w));
        assert_eq!(w.pow(-1), w.inverse());
        assert!(w.pow(0).is_identity());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        /// 1000 random words of up to 50 letters agree with the naive oracle.
        #[test]
        fn reduce_matches_oracle(raw in prop::collection::vec((0usize..5, any::<bool>()), 0..50)) {
            let letters: Vec<Letter> = raw.iter().map(|&(g, i)| letter(g, i)).collect();
            let fast = Word::reduce(letters.clone());
            let slow = oracle_reduce(letters);
            prop_assert_eq!(fast.letters(), slow.as_slice());
        }

        /// Idempotent and length-non-increasing.
        #[test]
        fn reduce_idempotent(raw in prop::collection::vec((0usize..4, any::<bool>()), 0..60)) {
            let letters: Vec<Letter> = raw.iter().map(|&(g, i)| letter(g, i)).collect();
            let once = Word::reduce(letters.clone());
            let twice = Word::reduce(once.letters().to_vec());
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.len() <= letters.len());
        }

        /// w * w^-1 is the identity.
        #[test]
        fn inverse_cancels(raw in prop::collection::vec((0usize..4, any::<bool>()), 0..40)) {
            let w = Word::reduce(raw.iter().map(|&(g, i)| letter(g, i)));
            prop_assert!(w.concat(&w.inverse()).is_identity());
            prop_assert!(w.inverse().concat(&w).is_identity());
        }
    }
}
