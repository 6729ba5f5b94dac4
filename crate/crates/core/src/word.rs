//! Free-group words over a finite alphabet.
//!
//! Text syntax: lowercase letters are generators, uppercase letters their
//! inverses (`B` is `b^-1`). Whitespace is ignored and a letter may carry an
//! integer exponent such as `b^-1` or `a^3`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: Vec<char>) -> Result<Self> {
        for (i, c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::Parse(format!("letter name `{c}` is not a lowercase ASCII letter")));
            }
            if names[..i].contains(c) {
                return Err(Error::Parse(format!("letter name `{c}` repeated")));
            }
        }
        Ok(Alphabet { names })
    }

    /// The first `size` letters `a, b, c, ...`.
    pub fn standard(size: usize) -> Self {
        assert!(size <= 26, "at most 26 named letters");
        Alphabet { names: (0..size).map(|i| (b'a' + i as u8) as char).collect() }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: usize) -> char {
        self.names[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.names.iter().position(|&x| x == c)
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }
}

/// A letter of the alphabet or its formal inverse.
///
/// The derived order is `a < A < b < B < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedLetter {
    pub index: usize,
    pub inverse: bool,
}

impl SignedLetter {
    pub fn pos(index: usize) -> Self {
        SignedLetter { index, inverse: false }
    }

    pub fn neg(index: usize) -> Self {
        SignedLetter { index, inverse: true }
    }

    pub fn inv(self) -> Self {
        SignedLetter { index: self.index, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// All signed letters over an alphabet of `k` letters, in order.
    pub fn all(k: usize) -> impl Iterator<Item = SignedLetter> {
        (0..k).flat_map(|i| [SignedLetter::pos(i), SignedLetter::neg(i)])
    }

    pub fn to_char(self, alphabet: &Alphabet) -> char {
        let c = alphabet.name(self.index);
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<SignedLetter>,
    reduced: bool,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new(), reduced: true }
    }

    pub fn new(letters: Vec<SignedLetter>) -> Self {
        let reduced = letters.windows(2).all(|w| w[0] != w[1].inv());
        Word { letters, reduced }
    }

    pub fn letter(l: SignedLetter) -> Self {
        Word { letters: vec![l], reduced: true }
    }

    /// `letter^exp`, negative exponents allowed.
    pub fn power_of(index: usize, exp: i64) -> Self {
        let l = if exp < 0 { SignedLetter::neg(index) } else { SignedLetter::pos(index) };
        Word { letters: vec![l; exp.unsigned_abs() as usize], reduced: true }
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn reduce(&self) -> Word {
        if self.reduced {
            return self.clone();
        }
        let mut out: Vec<SignedLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out, reduced: true }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect(), reduced: self.reduced }
    }

    /// Plain juxtaposition; the result is reduced only if no cancellation occurs at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let seam_ok = match (self.letters.last(), other.letters.first()) {
            (Some(&x), Some(&y)) => x != y.inv(),
            _ => true,
        };
        Word { letters, reduced: self.reduced && other.reduced && seam_ok }
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut out = Word::empty();
        for _ in 0..n {
            out = out.concat(self);
        }
        out
    }

    /// Largest letter index used plus one (0 for the empty word).
    pub fn alphabet_span(&self) -> usize {
        self.letters.iter().map(|l| l.index + 1).max().unwrap_or(0)
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            if c.is_whitespace() || c == '1' && chars.len() == 1 {
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(Error::Parse(format!("unexpected character `{c}` in word `{text}`")));
            }
            let index = alphabet.index_of(c.to_ascii_lowercase()).ok_or(Error::UnknownLetter(c))?;
            let base = if c.is_ascii_uppercase() { SignedLetter::neg(index) } else { SignedLetter::pos(index) };
            let mut exp: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                exp = digits.parse().map_err(|_| Error::Parse(format!("bad exponent `{digits}` in word `{text}`")))?;
            }
            let l = if exp < 0 { base.inv() } else { base };
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Ok(Word::new(letters))
    }

    /// Parse with the standard alphabet `a..z`.
    pub fn parse_std(text: &str) -> Result<Word> {
        Word::parse(text, &Alphabet::standard(26))
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        self.letters.iter().map(|l| l.to_char(alphabet)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            let c = (b'a' + l.index as u8) as char;
            if l.inverse {
                write!(f, "{}", c.to_ascii_uppercase())?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}
