//! Integers kept as prime factorizations, so that group orders never
//! overflow and divisibility questions are answered on exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// A positive integer as `∏ p^e`. The empty product is 1.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factorizes `n` by trial division. Panics on zero.
    pub fn from_u64(mut n: u64) -> Self {
        assert!(n > 0, "zero has no factorization");
        let mut factors = BTreeMap::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= n {
            while n.is_multiple_of(d) {
                *factors.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            *factors.entry(n).or_insert(0) += 1;
        }
        Self { factors }
    }

    pub fn factorial(n: u64) -> Self {
        (2..=n).fold(Self::one(), |acc, k| acc * Self::from_u64(k))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn divisible_by_prime(&self, p: u64) -> bool {
        self.exponent(p) > 0
    }

    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors.iter().all(|(p, &e)| other.exponent(*p) >= e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &FactoredInteger) -> Option<FactoredInteger> {
        if !other.divides(self) {
            return None;
        }
        let mut factors = self.factors.clone();
        for (p, e) in other.factors() {
            let slot = factors.get_mut(&p).expect("divisibility checked");
            *slot -= e;
            if *slot == 0 {
                factors.remove(&p);
            }
        }
        Some(Self { factors })
    }

    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (p, e) in self.factors() {
            for _ in 0..e {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    /// True when the value is at most `cap`.
    pub fn at_most(&self, cap: u128) -> bool {
        self.to_u128().is_some_and(|v| v <= cap)
    }
}

impl std::ops::Mul for FactoredInteger {
    type Output = FactoredInteger;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(mut self, rhs: FactoredInteger) -> FactoredInteger {
        for (p, e) in rhs.factors {
            *self.factors.entry(p).or_insert(0) += e;
        }
        self
    }
}

impl std::iter::Product for FactoredInteger {
    fn product<I: Iterator<Item = FactoredInteger>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl From<u64> for FactoredInteger {
    fn from(n: u64) -> Self {
        Self::from_u64(n)
    }
}

/// Renders as `2^3·3·5`; the value 1 renders as `1`.
impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (p, e)) in self.factors().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts the display form (`·`, `*` or `.` as separators). Factors must
/// be prime; repeated primes are merged.
impl FromStr for FactoredInteger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedFactored(s.to_string());
        let trimmed = s.trim();
        if trimmed == "1" {
            return Ok(Self::one());
        }
        if trimmed.is_empty() {
            return Err(bad());
        }
        let mut acc = Self::one();
        for part in trimmed.split(['·', '*', '.']) {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let p: u64 = base.parse().map_err(|_| bad())?;
            if !is_prime(p) || exp == 0 {
                return Err(bad());
            }
            let slot = acc.factors.entry(p).or_insert(0);
            *slot = slot.checked_add(exp).ok_or_else(bad)?;
        }
        Ok(acc)
    }
}

impl Serialize for FactoredInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FactoredInteger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
