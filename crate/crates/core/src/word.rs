//! Positive words over the generators `x1..xn`.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter of a word, or `None` for the empty word ε.
pub type Letter = Option<usize>;

/// A finite sequence of 0-based generator indices. The empty word is ε.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letter(x: usize) -> Self {
        Word(vec![x])
    }

    /// `x^k`.
    pub fn power(x: usize, k: usize) -> Self {
        Word(vec![x; k])
    }

    /// Builds a word from 1-based indices, e.g. `[1, 1, 2]` for `x1 x1 x2`.
    pub fn from_one_based(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l - 1).collect())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, x: usize) {
        self.0.push(x);
    }

    /// Checks every letter is below `n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&x| x >= n) {
            Some(&x) => Err(Error::IndexOutOfRange { index: x + 1, n }),
            None => Ok(()),
        }
    }

    /// Parses whitespace-separated tokens `x<i>` or bare integers (1-based).
    /// An empty string, `ε` or `e` denotes the empty word.
    pub fn parse(text: &str, n: usize) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() || token == "ε" || token == "e" {
                continue;
            }
            let digits = token.strip_prefix('x').unwrap_or(token);
            let index: usize = digits
                .parse()
                .map_err(|_| Error::Input(format!("cannot parse `{token}` as a generator")))?;
            if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            letters.push(index - 1);
        }
        Ok(Word(letters))
    }

    /// Iterator over all words of length `len` on `n` letters, in
    /// lexicographic order.
    pub fn all_of_length(n: usize, len: usize) -> impl Iterator<Item = Word> {
        let total = n.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut code| {
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            Word(v)
        })
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", x + 1)?;
        }
        Ok(())
    }
}

// Machine output uses the same 1-based text form as the human output.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::parse(&text, usize::MAX).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn fmt_letter(l: Letter) -> String {
    match l {
        Some(x) => format!("x{}", x + 1),
        None => "ε".to_string(),
    }
}
