//! Finitely presented groups: generator names plus relator words.
//!
//! Text format (UTF-8, line based, see `docs/formats.md`):
//!
//! ```text
//! gens: a b c
//! rel: a^2
//! rel: b^-1 a b a
//! ```
//!
//! A word is a space-separated list of `name^exp` tokens (bare `name` means
//! exponent 1); `1` denotes the empty word. Blank lines and lines starting
//! with `#` are ignored.

use crate::error::Error;
use crate::word::{Letter, Word};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPresentation {
    gen_names: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
        && !name.chars().next().unwrap().is_ascii_digit()
}

impl FpPresentation {
    /// A presentation with the given generator names and no relators yet.
    pub fn new(gen_names: Vec<String>) -> Result<Self, Error> {
        let mut seen = HashMap::new();
        for (i, n) in gen_names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::InvalidPresentation(format!(
                    "invalid generator name `{n}`"
                )));
            }
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate generator name `{n}`"
                )));
            }
        }
        Ok(FpPresentation { gen_names, relators: Vec::new() })
    }

    pub fn ngens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn gen_name(&self, idx: usize) -> &str {
        &self.gen_names[idx]
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|n| n == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Append a relator. It is freely reduced; identity relators and exact
    /// duplicates of an existing relator are dropped.
    pub fn push_relator(&mut self, word: Word) -> Result<(), Error> {
        if let Some(g) = word.max_gen() {
            if g >= self.ngens() {
                return Err(Error::UnknownGenerator { index: g, ngens: self.ngens() });
            }
        }
        if word.is_identity() || self.relators.contains(&word) {
            return Ok(());
        }
        self.relators.push(word);
        Ok(())
    }

    /// Format a word using this presentation's generator names.
    pub fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let letters = w.letters();
        let mut out = String::new();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1usize;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            let exp: i64 = if l.inv { -(run as i64) } else { run as i64 };
            if exp == 1 {
                out.push_str(&self.gen_names[l.gen]);
            } else {
                out.push_str(&format!("{}^{}", self.gen_names[l.gen], exp));
            }
            i += run;
        }
        out
    }

    /// Parse a word in `name^exp` token syntax against this presentation.
    pub fn parse_word(&self, text: &str) -> Result<Word, Error> {
        let mut syllables = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e.parse().map_err(|_| {
                        Error::MalformedWord(format!("bad exponent in token `{tok}`"))
                    })?;
                    (n, exp)
                }
                None => (tok, 1),
            };
            let gen = self
                .gen_index(name)
                .ok_or_else(|| Error::MalformedWord(format!("unknown generator `{name}`")))?;
            syllables.push((gen, exp));
        }
        Ok(Word::from_syllables(&syllables))
    }

    /// Serialize in the line-based text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.gen_names.join(" "));
        for r in &self.relators {
            out.push_str(&format!("rel: {}\n", self.word_to_string(r)));
        }
        out
    }

    /// Parse the line-based text format.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut pres: Option<FpPresentation> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if pres.is_some() {
                    return Err(Error::Parse { line: lno, msg: "duplicate gens: line".into() });
                }
                let names: Vec<String> =
                    rest.split_whitespace().map(|s| s.to_string()).collect();
                pres = Some(
                    FpPresentation::new(names)
                        .map_err(|e| Error::Parse { line: lno, msg: e.to_string() })?,
                );
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let p = pres.as_mut().ok_or(Error::Parse {
                    line: lno,
                    msg: "rel: before gens:".into(),
                })?;
                let w = p
                    .parse_word(rest)
                    .map_err(|e| Error::Parse { line: lno, msg: e.to_string() })?;
                p.push_relator(w)
                    .map_err(|e| Error::Parse { line: lno, msg: e.to_string() })?;
            } else {
                return Err(Error::Parse { line: lno, msg: format!("unrecognized line `{line}`") });
            }
        }
        pres.ok_or(Error::Parse { line: 0, msg: "missing gens: line".into() })
    }

    /// The dihedral group of order 2n as `<a, b | a^2, b^n, (ab)^2>`.
    pub fn dihedral(n: u64) -> Self {
        let mut p = FpPresentation::new(vec!["a".into(), "b".into()]).unwrap();
        let a = Word::gen(0);
        let b = Word::gen(1);
        p.push_relator(a.pow(2)).unwrap();
        p.push_relator(b.pow(n as i64)).unwrap();
        p.push_relator(a.concat(&b).pow(2)).unwrap();
        p
    }

    /// The cyclic group of order n as `<a | a^n>`.
    pub fn cyclic(n: u64) -> Self {
        let mut p = FpPresentation::new(vec!["a".into()]).unwrap();
        p.push_relator(Word::gen(0).pow(n as i64)).unwrap();
        p
    }

    /// Check that a word only mentions declared generators.
    pub fn validate_word(&self, w: &Word) -> Result<(), Error> {
        if let Some(g) = w.max_gen() {
            if g >= self.ngens() {
                return Err(Error::UnknownGenerator { index: g, ngens: self.ngens() });
            }
        }
        Ok(())
    }

    /// Evaluate a word as raw letters, for scanning.
    pub fn word_letters<'a>(&self, w: &'a Word) -> &'a [Letter] {
        w.letters()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_text() {
        let p = FpPresentation::dihedral(5);
        let text = p.to_text();
        let q = FpPresentation::parse(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(text, "gens: a b\nrel: a^2\nrel: b^5\nrel: a b a b\n");
    }

    #[test]
    fn parse_negative_exponents() {
        let p = FpPresentation::parse("gens: a b\nrel: b^-1 a b a\n").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.word_to_string(&p.relators()[0]), "b^-1 a b a");
    }

    #[test]
    fn duplicate_and_identity_relators_dropped() {
        let mut p = FpPresentation::new(vec!["a".into()]).unwrap();
        p.push_relator(Word::identity()).unwrap();
        p.push_relator(Word::gen(0).pow(2)).unwrap();
        p.push_relator(Word::gen(0).pow(2)).unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn rejects_bad_names_and_unknown_gens() {
        assert!(FpPresentation::new(vec!["a^".into()]).is_err());
        assert!(FpPresentation::new(vec!["a".into(), "a".into()]).is_err());
        let mut p = FpPresentation::new(vec!["a".into()]).unwrap();
        assert!(p.push_relator(Word::gen(1)).is_err());
        assert!(p.parse_word("c^2").is_err());
    }
}
