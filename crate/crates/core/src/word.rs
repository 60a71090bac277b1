//! 2-bit packed DNA words.
//!
//! A word of length `k` is packed with `A=0, C=1, G=2, T=3`, first symbol in
//! the most significant position. Code order therefore coincides with
//! lexicographic order of the text.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported word length. The dense count store holds
/// `4^k * dmax` counters, so this bounds memory.
pub const MAX_K: usize = 8;

pub const ALPHABET: [u8; 4] = *b"ACGT";

/// Maps an uppercase nucleotide to its 2-bit code.
#[inline]
pub fn nucleotide_code(b: u8) -> Option<u8> {
    match b {
        b'A' => Some(0),
        b'C' => Some(1),
        b'G' => Some(2),
        b'T' => Some(3),
        _ => None,
    }
}

pub fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_K {
        return Err(Error::config(format!(
            "word length k={k} outside supported range 1..={MAX_K}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordId {
    k: u8,
    code: u32,
}

impl WordId {
    pub fn new(k: usize, code: u32) -> Result<Self> {
        check_k(k)?;
        if u64::from(code) >= word_count(k) as u64 {
            return Err(Error::Encoding(format!("code {code} out of range for k={k}")));
        }
        Ok(WordId { k: k as u8, code })
    }

    /// Caller guarantees `k` and `code` are in range.
    #[inline]
    pub(crate) fn from_raw(k: usize, code: u32) -> Self {
        debug_assert!((1..=MAX_K).contains(&k) && (code as usize) < word_count(k));
        WordId { k: k as u8, code }
    }

    #[inline]
    pub fn k(self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn reverse_complement(self) -> WordId {
        WordId {
            k: self.k,
            code: reverse_complement_code(self.code, self.k()),
        }
    }

    pub fn is_palindrome(self) -> bool {
        self.reverse_complement() == self
    }

    pub fn to_text(self) -> String {
        decode_word(self)
    }

    /// Symbol codes, first symbol first.
    pub fn symbols(self) -> Vec<u8> {
        let k = self.k();
        (0..k).map(|i| ((self.code >> (2 * (k - 1 - i))) & 3) as u8).collect()
    }
}

impl fmt::Display for WordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[inline]
pub fn word_count(k: usize) -> usize {
    1usize << (2 * k)
}

pub fn encode_word(text: &str, k: usize) -> Result<WordId> {
    check_k(k)?;
    let bytes = text.as_bytes();
    if bytes.len() != k {
        return Err(Error::Encoding(format!(
            "{text:?} has length {}, expected {k}",
            bytes.len()
        )));
    }
    let mut code = 0u32;
    for &b in bytes {
        let c = nucleotide_code(b).ok_or_else(|| Error::Encoding(format!("{text:?} contains non-ACGT symbol")))?;
        code = (code << 2) | u32::from(c);
    }
    Ok(WordId::from_raw(k, code))
}

/// Parses a word whose length defines `k`.
pub fn parse_word(text: &str) -> Result<WordId> {
    encode_word(text, text.len())
}

pub fn decode_word(word: WordId) -> String {
    word.symbols()
        .into_iter()
        .map(|c| ALPHABET[c as usize] as char)
        .collect()
}

/// Complementing is `x ^ 3` per symbol (A<->T, C<->G); the symbol groups
/// are then reversed.
#[inline]
pub fn reverse_complement_code(code: u32, k: usize) -> u32 {
    let mut x = !code;
    let mut out = 0u32;
    for _ in 0..k {
        out = (out << 2) | (x & 3);
        x >>= 2;
    }
    out
}
