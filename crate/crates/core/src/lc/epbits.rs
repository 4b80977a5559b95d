//! Eventually periodic infinite binary words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::{format_bits, parse_bits};

/// The word `prefix period period period ...`, always in canonical form:
/// the period is primitive and the prefix is as short as possible. Two
/// values are equal exactly when they denote the same infinite word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpBits {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EpBitsError {
    #[error("the period of an eventually periodic word cannot be empty")]
    EmptyPeriod,
    #[error("cannot parse {0:?}; expected bits followed by a parenthesised period, e.g. 01(10)")]
    Parse(String),
}

impl EpBits {
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Result<Self, EpBitsError> {
        if period.is_empty() {
            return Err(EpBitsError::EmptyPeriod);
        }
        let mut x = EpBits { prefix, period };
        x.canonicalize();
        Ok(x)
    }

    /// The constant word `b^ω`.
    pub fn constant(b: bool) -> Self {
        EpBits { prefix: Vec::new(), period: vec![b] }
    }

    pub fn zeros() -> Self {
        Self::constant(false)
    }

    /// `bits ^ 0^ω`.
    pub fn finite_then_zeros(bits: &[bool]) -> Self {
        EpBits::new(bits.to_vec(), vec![false]).expect("nonempty period")
    }

    fn canonicalize(&mut self) {
        let p = self.period.len();
        if let Some(root) = (1..=p).find(|&d| p.is_multiple_of(d) && (d..p).all(|i| self.period[i] == self.period[i - d])) {
            self.period.truncate(root);
        }
        while let Some(&last) = self.prefix.last() {
            if last != *self.period.last().expect("nonempty period") {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn bit(&self, i: usize) -> bool {
        match self.prefix.get(i) {
            Some(&b) => b,
            None => self.period[(i - self.prefix.len()) % self.period.len()],
        }
    }

    /// The first `n` bits.
    pub fn take(&self, n: usize) -> Vec<bool> {
        (0..n).map(|i| self.bit(i)).collect()
    }

    /// The shifted word `x(j) x(j+1) ...`.
    pub fn drop(&self, j: usize) -> Self {
        if j <= self.prefix.len() {
            return EpBits { prefix: self.prefix[j..].to_vec(), period: self.period.clone() };
        }
        let mut period = self.period.clone();
        let shift = (j - self.prefix.len()) % period.len();
        period.rotate_left(shift);
        EpBits { prefix: Vec::new(), period }
    }

    /// `bits ^ self`.
    pub fn prepend(&self, bits: &[bool]) -> Self {
        let mut prefix = bits.to_vec();
        prefix.extend_from_slice(&self.prefix);
        let mut x = EpBits { prefix, period: self.period.clone() };
        x.canonicalize();
        x
    }

    /// Index of the first 1, if any.
    pub fn first_one(&self) -> Option<usize> {
        if let Some(i) = self.prefix.iter().position(|&b| b) {
            return Some(i);
        }
        self.period.iter().position(|&b| b).map(|i| self.prefix.len() + i)
    }
}

impl fmt::Display for EpBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", format_bits(&self.prefix), format_bits(&self.period))
    }
}

impl FromStr for EpBits {
    type Err = EpBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EpBitsError::Parse(s.to_string());
        let (prefix, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let period = rest.strip_suffix(')').ok_or_else(bad)?;
        EpBits::new(parse_bits(prefix).map_err(|_| bad())?, parse_bits(period).map_err(|_| bad())?)
    }
}

#[derive(Serialize, Deserialize)]
struct EpBitsJson {
    prefix: String,
    period: String,
}

impl Serialize for EpBits {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EpBitsJson { prefix: format_bits(&self.prefix), period: format_bits(&self.period) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EpBits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = EpBitsJson::deserialize(deserializer)?;
        let parse = |s: &str| parse_bits(s).map_err(serde::de::Error::custom);
        EpBits::new(parse(&doc.prefix)?, parse(&doc.period)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ep(s: &str) -> EpBits {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(ep("0(0)"), EpBits::zeros());
        assert_eq!(ep("(0101)"), ep("(01)"));
        assert_eq!(ep("1(01)"), ep("(10)"));
        assert_eq!(ep("0110(10)").to_string(), "01(10)");
        assert_ne!(ep("1(0)"), EpBits::zeros());
        assert_eq!(ep("(1)").first_one(), Some(0));
        assert_eq!(EpBits::zeros().first_one(), None);
        assert!(EpBits::new(vec![true], vec![]).is_err());
    }

    #[test]
    fn drop_and_prepend() {
        let x = ep("01(10)");
        assert_eq!(x.drop(1), ep("1(10)"));
        assert_eq!(x.drop(3), ep("(01)"));
        assert_eq!(x.drop(2).prepend(&[false, true]), x);
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&ep("01(10)")).unwrap();
        assert_eq!(text, r#"{"prefix":"01","period":"10"}"#);
        assert_eq!(serde_json::from_str::<EpBits>(&text).unwrap(), ep("01(10)"));
    }

    fn arb_ep() -> impl Strategy<Value = EpBits> {
        (prop::collection::vec(any::<bool>(), 0..6), prop::collection::vec(any::<bool>(), 1..5))
            .prop_map(|(p, q)| EpBits::new(p, q).unwrap())
    }

    proptest! {
        #[test]
        fn equality_matches_bits(a in arb_ep(), b in arb_ep()) {
            // prefixes under 6 and periods under 5 are separated within 40 bits
            let same_bits = a.take(40) == b.take(40);
            prop_assert_eq!(a == b, same_bits);
        }

        #[test]
        fn drop_shifts_bits(a in arb_ep(), j in 0usize..12) {
            let shifted = a.drop(j);
            for i in 0..20 {
                prop_assert_eq!(shifted.bit(i), a.bit(i + j));
            }
        }
    }
}
