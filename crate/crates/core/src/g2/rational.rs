//! Rationality of the trace of the local monodromy at `∞`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::construction::{case_row, check_conditions};
use crate::character::Character;
use crate::local::LocalMonodromy;

/// The trace is rational iff the total block length carried by a character
/// is constant along its Galois orbit.
pub fn trace_rational_at_infinity(m: &LocalMonodromy) -> bool {
    m.characters().all(|c| {
        let k = m.multiplicity(c);
        c.galois_orbit().into_iter().all(|d| m.multiplicity(d) == k)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPair {
    pub phi: Character,
    pub eta: Character,
    pub case: u8,
    pub infinity: LocalMonodromy,
    /// Whether the pair also satisfies the six conditions of the construction.
    pub conditions_hold: bool,
}

/// All characters of order at most `max_order`.
pub fn characters_up_to(max_order: u64) -> Vec<Character> {
    let mut v: Vec<Character> = (1..=max_order)
        .flat_map(|q| {
            (0..q)
                .filter(move |p| p.gcd(&q) == 1)
                .map(move |p| Character::new(p as i64, q))
        })
        .collect();
    v.sort();
    v
}

/// Pairs `(φ, η)` with orders at most `max_order` that satisfy the
/// condition column of some `∞`-row and whose `∞`-monodromy has rational
/// trace. One pair per `∞`-monodromy is listed, the smallest. Pairs that
/// break the six global conditions are kept and flagged. Sorted by case,
/// then pair.
pub fn enumerate_rational_pairs(max_order: u64) -> Vec<RationalPair> {
    let chars = characters_up_to(max_order);
    let mut best: BTreeMap<String, RationalPair> = BTreeMap::new();
    for &phi in &chars {
        for &eta in &chars {
            let Some((case, infinity)) = case_row(phi, eta) else {
                continue;
            };
            if !trace_rational_at_infinity(&infinity) {
                continue;
            }
            let key = format!("{infinity:?}");
            best.entry(key).or_insert(RationalPair {
                phi,
                eta,
                case,
                infinity,
                conditions_hold: check_conditions(phi, eta).is_ok(),
            });
        }
    }
    let mut out: Vec<RationalPair> = best.into_values().collect();
    out.sort_by_key(|a| (a.case, a.phi, a.eta));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: i64, q: u64) -> Character {
        Character::new(p, q)
    }

    #[test]
    fn examples() {
        assert!(trace_rational_at_infinity(&LocalMonodromy::single(
            Character::TRIVIAL,
            7
        )));
        let m = case_row(c(1, 5), c(1, 5)).unwrap().1;
        assert!(!trace_rational_at_infinity(&m));
        let (case, m) = case_row(c(1, 8), c(1, 4)).unwrap();
        assert_eq!(case, 5);
        assert!(trace_rational_at_infinity(&m));
    }

    #[test]
    fn characters_up_to_counts() {
        // Σ_{q ≤ 6} φ(q) = 1 + 1 + 2 + 2 + 4 + 2
        assert_eq!(characters_up_to(6).len(), 12);
    }
}
