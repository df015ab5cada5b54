//! Tame characters of the punctured line, modeled as the group ℚ/ℤ.
//!
//! A character `p/q` sends a topological generator of tame inertia to
//! `exp(2πi p/q)`. Values are stored reduced with `0 <= p < q`, so structural
//! equality is group equality.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Character {
    num: u64,
    den: u64,
}

impl Character {
    /// The trivial character `0/1`.
    pub const TRIVIAL: Character = Character { num: 0, den: 1 };
    /// The unique quadratic character `1/2`.
    pub const QUADRATIC: Character = Character { num: 1, den: 2 };

    /// Builds `num/den` reduced mod 1. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "character denominator must be positive");
        let r = i128::from(num).rem_euclid(i128::from(den)) as u64;
        Self::reduced(r, den)
    }

    fn reduced(num: u64, den: u64) -> Self {
        let g = num.gcd(&den);
        Character {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// Order of the character, i.e. the reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_trivial(&self) -> bool {
        self.num == 0
    }

    pub fn inv(self) -> Self {
        if self.num == 0 {
            self
        } else {
            Character {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    pub fn mul(self, other: Character) -> Self {
        let l = self.den.lcm(&other.den);
        let a = u128::from(self.num) * u128::from(l / self.den);
        let b = u128::from(other.num) * u128::from(l / other.den);
        let s = ((a + b) % u128::from(l)) as u64;
        Self::reduced(s, l)
    }

    pub fn pow(self, k: i64) -> Self {
        let n = i128::from(self.num) * i128::from(k);
        let r = n.rem_euclid(i128::from(self.den)) as u64;
        Self::reduced(r, self.den)
    }

    /// `{a^k : gcd(k, order(a)) = 1}`.
    pub fn galois_orbit(self) -> BTreeSet<Character> {
        let n = self.den;
        (1..=n)
            .filter(|k| k.gcd(&n) == 1)
            .map(|k| self.pow(k as i64))
            .collect()
    }

    /// All characters whose order divides `n`, in increasing order.
    pub fn all_of_order_dividing(n: u64) -> Vec<Character> {
        (0..n).map(|k| Character::new(k as i64, n)).collect()
    }

    /// `(-1)·self`, the twist by the quadratic character.
    pub fn neg(self) -> Self {
        self.mul(Character::QUADRATIC)
    }
}

impl Default for Character {
    fn default() -> Self {
        Character::TRIVIAL
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.num) * u128::from(other.den);
        let rhs = u128::from(other.num) * u128::from(self.den);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Character {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("expected a character of the form p/q, got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(Character::new(p, q))
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(p: i64, q: u64) -> Character {
        Character::new(p, q)
    }

    #[test]
    fn group_law_examples() {
        assert_eq!(c(1, 2).mul(c(1, 3)), c(5, 6));
        assert_eq!(c(2, 3).mul(c(2, 3)), c(1, 3));
        let chi = c(5, 12);
        assert_eq!(chi.mul(chi.inv()), Character::TRIVIAL);
        assert_eq!(c(1, 3).inv(), c(2, 3));
        assert_eq!(c(1, 6).order(), 6);
        assert_eq!(c(1, 8).pow(2), c(1, 4));
    }

    #[test]
    fn reduction_and_constants() {
        assert_eq!(c(0, 7), Character::TRIVIAL);
        assert_eq!(c(3, 6), Character::QUADRATIC);
        assert_eq!(c(-1, 3), c(2, 3));
        assert_eq!(c(7, 4), c(3, 4));
        assert!(Character::TRIVIAL.is_trivial());
        assert_eq!(Character::TRIVIAL.to_string(), "0/1");
    }

    #[test]
    fn orbits() {
        let o: Vec<_> = c(1, 3).galois_orbit().into_iter().collect();
        assert_eq!(o, vec![c(1, 3), c(2, 3)]);
        let o: Vec<_> = Character::TRIVIAL.galois_orbit().into_iter().collect();
        assert_eq!(o, vec![Character::TRIVIAL]);
        let o: Vec<_> = c(1, 8).galois_orbit().into_iter().collect();
        assert_eq!(o, vec![c(1, 8), c(3, 8), c(5, 8), c(7, 8)]);
    }

    #[test]
    fn parse_and_serde() {
        assert_eq!("1/2".parse::<Character>().unwrap(), Character::QUADRATIC);
        assert_eq!(" 4/6 ".parse::<Character>().unwrap(), c(2, 3));
        assert!("0.5".parse::<Character>().is_err());
        assert!("1/0".parse::<Character>().is_err());
        assert!("1".parse::<Character>().is_err());
        let json = serde_json::to_string(&c(5, 6)).unwrap();
        assert_eq!(json, "\"5/6\"");
        let back: Character = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c(5, 6));
    }

    #[test]
    fn ordering_is_by_value() {
        assert!(c(1, 3) < c(1, 2));
        assert!(Character::TRIVIAL < c(1, 100));
        assert!(c(2, 3) > c(1, 2));
    }

    fn arb_char() -> impl Strategy<Value = Character> {
        (0i64..200, 1u64..60).prop_map(|(p, q)| Character::new(p, q))
    }

    proptest! {
        #[test]
        fn commutative_group(a in arb_char(), b in arb_char(), d in arb_char()) {
            prop_assert_eq!(a.mul(b), b.mul(a));
            prop_assert_eq!(a.mul(b).mul(d), a.mul(b.mul(d)));
            prop_assert_eq!(a.mul(Character::TRIVIAL), a);
            prop_assert_eq!(a.mul(a.inv()), Character::TRIVIAL);
        }

        #[test]
        fn order_of_power(a in arb_char(), k in -50i64..50) {
            let n = a.order();
            let g = (k.unsigned_abs()).gcd(&n);
            let g = if k == 0 { n } else { g };
            prop_assert_eq!(a.pow(k).order(), n / g);
        }

        #[test]
        fn orbits_partition_closed_sets(n in 1u64..40) {
            // the set of characters of order dividing n is closed under coprime powers
            let all = Character::all_of_order_dividing(n);
            let mut seen = BTreeSet::new();
            for a in &all {
                let orbit = a.galois_orbit();
                let hit = orbit.iter().filter(|x| seen.contains(*x)).count();
                prop_assert!(hit == 0 || hit == orbit.len());
                seen.extend(orbit);
            }
            prop_assert_eq!(seen.len(), all.len());
        }
    }
}
