//! Sets of primes, finite or co-finite.
//!
//! Text syntax: `2,3,5` for a finite set, `all-except:5` or
//! `all-except:5,7` for a co-finite one. The empty finite set is written as
//! an empty string or `{}`; `all` is shorthand for `all-except:`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factored::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    Finite(BTreeSet<u64>),
    /// Every prime except the listed ones.
    CoFinite(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn finite<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        Ok(Self::Finite(checked(primes)?))
    }

    pub fn all_except<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        Ok(Self::CoFinite(checked(primes)?))
    }

    pub fn empty() -> Self {
        Self::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        Self::CoFinite(BTreeSet::new())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            Self::Finite(s) => s.contains(&p),
            Self::CoFinite(s) => !s.contains(&p),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            Self::Finite(s) => Self::CoFinite(s.clone()),
            Self::CoFinite(s) => Self::Finite(s.clone()),
        }
    }

    /// The smallest prime not in the set, when it exists.
    pub fn min_excluded(&self) -> Option<u64> {
        match self {
            Self::CoFinite(s) => s.iter().next().copied(),
            Self::Finite(s) => (2..).find(|&p| is_prime(p) && !s.contains(&p)),
        }
    }
}

fn checked<I: IntoIterator<Item = u64>>(primes: I) -> Result<BTreeSet<u64>> {
    let set: BTreeSet<u64> = primes.into_iter().collect();
    if let Some(&bad) = set.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    Ok(set)
}

fn parse_list(text: &str, whole: &str) -> Result<BTreeSet<u64>> {
    let mut set = BTreeSet::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let p: u64 = part.parse().map_err(|_| Error::MalformedPrimeSet {
            text: whole.to_string(),
            reason: format!("{part:?} is not a number"),
        })?;
        if !is_prime(p) {
            return Err(Error::MalformedPrimeSet {
                text: whole.to_string(),
                reason: format!("{p} is not prime"),
            });
        }
        set.insert(p);
    }
    Ok(set)
}

impl FromStr for PrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "all" {
            return Ok(Self::all());
        }
        if t == "{}" {
            return Ok(Self::empty());
        }
        match t.strip_prefix("all-except:") {
            Some(rest) => Ok(Self::CoFinite(parse_list(rest, s)?)),
            None => Ok(Self::Finite(parse_list(t, s)?)),
        }
    }
}

fn join(set: &BTreeSet<u64>) -> String {
    set.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(s) if s.is_empty() => f.write_str("{}"),
            Self::Finite(s) => f.write_str(&join(s)),
            Self::CoFinite(s) => write!(f, "all-except:{}", join(s)),
        }
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PrimeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
