//! Short binary strings used as copy histories in gadget labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Longest string a [`BitString`] can hold.
pub const MAX_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BitsError {
    #[error("bit string longer than {MAX_BITS} bits")]
    TooLong,
    #[error("invalid bit character {0:?}")]
    InvalidChar(char),
}

/// A binary string of length at most [`MAX_BITS`], stored inline.
///
/// Bit `i` is the `i`-th appended bit. Ordering is lexicographic on the
/// bit sequence, shorter prefixes first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl BitString {
    pub const fn empty() -> Self {
        BitString { len: 0, bits: 0 }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, BitsError> {
        if bits.len() > MAX_BITS {
            return Err(BitsError::TooLong);
        }
        let mut out = BitString::empty();
        for &b in bits {
            out = out.pushed(b);
        }
        Ok(out)
    }

    /// `count` copies of `bit`.
    pub fn repeated(bit: bool, count: usize) -> Self {
        assert!(count <= MAX_BITS, "bit string too long");
        let mut out = BitString::empty();
        for _ in 0..count {
            out = out.pushed(bit);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len()).then(|| self.bits >> i & 1 == 1)
    }

    pub fn last(&self) -> Option<bool> {
        self.len().checked_sub(1).and_then(|i| self.get(i))
    }

    /// The string with `bit` appended.
    ///
    /// Panics if the string is already [`MAX_BITS`] long.
    pub fn pushed(self, bit: bool) -> Self {
        assert!(self.len() < MAX_BITS, "bit string too long");
        BitString {
            len: self.len + 1,
            bits: self.bits | (bit as u64) << self.len,
        }
    }

    /// The string with its last bit removed, and that bit.
    pub fn popped(self) -> Option<(Self, bool)> {
        let last = self.last()?;
        let len = self.len - 1;
        Some((
            BitString {
                len,
                bits: self.bits & !(1u64 << len),
            },
            last,
        ))
    }

    /// The first `n` bits (or the whole string when shorter).
    pub fn truncated(self, n: usize) -> Self {
        if n >= self.len() {
            return self;
        }
        BitString {
            len: n as u8,
            bits: self.bits & ((1u64 << n) - 1),
        }
    }

    pub fn concat(self, other: BitString) -> Result<Self, BitsError> {
        if self.len() + other.len() > MAX_BITS {
            return Err(BitsError::TooLong);
        }
        Ok(BitString {
            len: self.len + other.len,
            bits: self.bits | other.bits.checked_shl(self.len as u32).unwrap_or(0),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bits >> i & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Every string of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BitString> {
        assert!(n < MAX_BITS, "bit string too long");
        (0u64..1 << n).map(move |code| {
            // the first bit is the most significant in lexicographic order
            let mut bits = 0u64;
            for i in 0..n {
                bits |= (code >> (n - 1 - i) & 1) << i;
            }
            BitString { len: n as u8, bits }
        })
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = parse_bits(s)?;
        BitString::from_bits(&bits)
    }
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, BitsError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(BitsError::InvalidChar(other)),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn push_pop_and_display() {
        let s: BitString = "0110".parse().unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_string(), "0110");
        let (rest, last) = s.popped().unwrap();
        assert!(!last);
        assert_eq!(rest.to_string(), "011");
        assert_eq!(BitString::empty().popped(), None);
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<String> = BitString::all_of_length(2).map(|b| b.to_string()).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
        assert_eq!(BitString::all_of_length(0).count(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!("012".parse::<BitString>(), Err(BitsError::InvalidChar('2')));
        assert_eq!(BitString::from_bits(&[true; 65]), Err(BitsError::TooLong));
    }

    proptest! {
        #[test]
        fn concat_matches_vec_concat(a in prop::collection::vec(any::<bool>(), 0..30),
                                     b in prop::collection::vec(any::<bool>(), 0..30)) {
            let left = BitString::from_bits(&a).unwrap();
            let right = BitString::from_bits(&b).unwrap();
            let mut joined = a.clone();
            joined.extend(&b);
            prop_assert_eq!(left.concat(right).unwrap().to_vec(), joined);
            prop_assert_eq!(left.cmp(&right), a.cmp(&b));
        }
    }
}
