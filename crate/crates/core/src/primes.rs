//! Prime sets and the arithmetic around them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, increasing.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// A finite set of primes. Its complement defines π'.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> Self {
        PrimeSet::default()
    }

    /// The primes dividing `n`.
    pub fn of(n: u64) -> Self {
        PrimeSet {
            primes: prime_factors(n),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn smallest(&self) -> Option<u64> {
        self.primes.first().copied()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Whether every prime factor of `n` lies in the set.
    pub fn is_pi_number(&self, mut n: u64) -> bool {
        for &p in &self.primes {
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        n == 1
    }

    /// Whether no prime factor of `n` lies in the set.
    pub fn is_pi_prime_number(&self, n: u64) -> bool {
        self.primes.iter().all(|&p| !n.is_multiple_of(p))
    }

    /// Largest divisor of `n` whose prime factors all lie in the set.
    pub fn part_of(&self, mut n: u64) -> u64 {
        assert!(n >= 1, "pi-part is defined for n >= 1");
        let mut part = 1;
        for &p in &self.primes {
            while n.is_multiple_of(p) {
                n /= p;
                part *= p;
            }
        }
        part
    }

    pub fn intersects(&self, other: &PrimeSet) -> bool {
        self.primes.iter().any(|p| other.contains(*p))
    }

    /// All nonempty subsets with at most `max_len` members, ordered by size
    /// then lexicographically.
    pub fn subsets(&self, max_len: usize) -> Vec<PrimeSet> {
        let n = self.primes.len();
        let mut out: Vec<PrimeSet> = (1u32..(1 << n))
            .filter(|m| m.count_ones() as usize <= max_len)
            .map(|m| PrimeSet {
                primes: (0..n)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| self.primes[i])
                    .collect(),
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.primes.cmp(&b.primes)));
        out
    }
}

pub fn pi_part(n: u64, pi: &PrimeSet) -> u64 {
    pi.part_of(n)
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `2,3,5`, optionally wrapped in braces; `{}` is the empty set.
impl FromStr for PrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if inner.is_empty() {
            return Ok(PrimeSet::empty());
        }
        let primes = inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("'{t}' is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(p: PrimeSet) -> Self {
        p.primes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn pi_parts() {
        assert_eq!(pi_part(360, &set(&[2, 3])), 72);
        assert_eq!(pi_part(360, &PrimeSet::empty()), 1);
        assert_eq!(pi_part(168, &set(&[2, 7])), 56);
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(1), 1);
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            assert_eq!(euler_phi(p), p - 1);
        }
        for n in 1..200u64 {
            let brute = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn prime_set_validation() {
        assert_eq!(PrimeSet::new([4]), Err(Error::NotPrime(4)));
        assert_eq!(set(&[5, 2, 5]).primes(), &[2, 5]);
        assert_eq!(set(&[5, 2]).smallest(), Some(2));
        assert_eq!(PrimeSet::empty().smallest(), None);
        assert_eq!("{2,3}".parse::<PrimeSet>().unwrap(), set(&[2, 3]));
        assert_eq!("5".parse::<PrimeSet>().unwrap(), set(&[5]));
        assert!("4".parse::<PrimeSet>().is_err());
        assert_eq!(set(&[3, 2]).to_string(), "{2,3}");
    }

    #[test]
    fn pi_numbers() {
        let pi = set(&[2, 3]);
        assert!(pi.is_pi_number(1));
        assert!(pi.is_pi_number(12));
        assert!(!pi.is_pi_number(10));
        assert!(pi.is_pi_prime_number(35));
        assert!(!pi.is_pi_prime_number(15));
    }

    #[test]
    fn subsets_respect_bound() {
        let s = set(&[2, 3, 5, 7]);
        assert_eq!(s.subsets(3).len(), 4 + 6 + 4);
        assert_eq!(s.subsets(4).len(), 15);
        assert_eq!(s.subsets(1)[0], set(&[2]));
    }
}
