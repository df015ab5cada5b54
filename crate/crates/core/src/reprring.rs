//! Virtual representation ring of `(tame characters) × SL₂`.
//!
//! A basis element `(χ, [n])` stands for `χ ⊗ Sym^{n-1}(std)`; a Jordan block
//! `χ ⊗ J(n)` is the restriction of this representation to a unipotent
//! element, which is how local monodromies embed.

use std::collections::BTreeMap;
use std::fmt;

use crate::character::Character;
use crate::error::{Error, Result};
use crate::local::LocalMonodromy;

#[derive(Clone, Default, PartialEq, Eq)]
pub struct RepRingElement {
    terms: BTreeMap<(Character, u32), i64>,
}

/// Weights of `[n]`: `n-1, n-3, ..., 1-n`.
fn weights(n: u32) -> impl Iterator<Item = i64> {
    let top = i64::from(n) - 1;
    (0..n).map(move |j| top - 2 * i64::from(j))
}

/// Decomposes a symmetric Laurent polynomial (weight -> multiplicity) into
/// irreducible `SL₂` classes by peeling the top weight.
fn peel(mut laurent: BTreeMap<i64, i64>) -> Vec<(u32, i64)> {
    let mut out = Vec::new();
    loop {
        laurent.retain(|_, v| *v != 0);
        let Some((&top, &mult)) = laurent.iter().next_back() else {
            break;
        };
        assert!(top >= 0, "Laurent polynomial is not symmetric");
        let n = (top + 1) as u32;
        for w in weights(n) {
            *laurent.entry(w).or_insert(0) -= mult;
        }
        out.push((n, mult));
    }
    out
}

impl RepRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `(χ, [n])`.
    pub fn basis(chi: Character, n: u32) -> Self {
        assert!(n > 0);
        let mut e = Self::zero();
        e.add_term(chi, n, 1);
        e
    }

    /// `χ ⊗ J(n) ↦ (χ, [n])`, one term per Jordan block.
    pub fn from_local_monodromy(m: &LocalMonodromy) -> Self {
        let mut e = Self::zero();
        for (c, n) in m.blocks() {
            e.add_term(c, n, 1);
        }
        e
    }

    fn add_term(&mut self, chi: Character, n: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let v = self.terms.entry((chi, n)).or_insert(0);
        *v += coeff;
        if *v == 0 {
            self.terms.remove(&(chi, n));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Character, u32), i64> {
        &self.terms
    }

    pub fn coefficient(&self, chi: Character, n: u32) -> i64 {
        self.terms.get(&(chi, n)).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&(_, n), &c)| c * i64::from(n))
            .sum()
    }

    pub fn is_actual(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (&(c, n), &k) in &other.terms {
            e.add_term(c, n, k);
        }
        e
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut e = Self::zero();
        for (&(c, n), &v) in &self.terms {
            e.add_term(c, n, v * k);
        }
        e
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    /// Exact division of every coefficient; panics if some coefficient is not
    /// divisible, which would mean a broken λ-ring identity.
    fn div_exact(&self, k: i64) -> Self {
        let mut e = Self::zero();
        for (&(c, n), &v) in &self.terms {
            assert_eq!(v % k, 0, "coefficient {v} not divisible by {k}");
            e.add_term(c, n, v / k);
        }
        e
    }

    /// Termwise character inversion; `[n]` is self-dual.
    pub fn dual(&self) -> Self {
        let mut e = Self::zero();
        for (&(c, n), &v) in &self.terms {
            e.add_term(c.inv(), n, v);
        }
        e
    }

    /// Product; the `SL₂` factor uses Clebsch–Gordan.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut e = Self::zero();
        for (&(c1, a), &k1) in &self.terms {
            for (&(c2, b), &k2) in &other.terms {
                let c = c1.mul(c2);
                for j in 0..a.min(b) {
                    e.add_term(c, a + b - 1 - 2 * j, k1 * k2);
                }
            }
        }
        e
    }

    /// Adams operation `ψᵏ`.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k > 0);
        let mut e = Self::zero();
        for (&(c, n), &v) in &self.terms {
            let mut laurent = BTreeMap::new();
            for w in weights(n) {
                *laurent.entry(w * i64::from(k)).or_insert(0) += 1;
            }
            let ck = c.pow(i64::from(k));
            for (m, mult) in peel(laurent) {
                e.add_term(ck, m, mult * v);
            }
        }
        e
    }

    fn require_actual(&self, k: u32) -> Result<()> {
        if !self.is_actual() {
            return Err(Error::VirtualRepresentation);
        }
        if self.dim() < i64::from(k) {
            return Err(Error::DimensionTooSmall { k, dim: self.dim() });
        }
        Ok(())
    }

    /// `Λ² = (a² - ψ²a) / 2`.
    pub fn lambda2(&self) -> Result<Self> {
        self.require_actual(2)?;
        Ok(self.tensor(self).sub(&self.adams(2)).div_exact(2))
    }

    /// `Sym² = (a² + ψ²a) / 2`.
    pub fn sym2(&self) -> Result<Self> {
        self.require_actual(1)?;
        Ok(self.tensor(self).add(&self.adams(2)).div_exact(2))
    }

    /// `Λ³ = (a³ - 3·a·ψ²a + 2·ψ³a) / 6`.
    pub fn lambda3(&self) -> Result<Self> {
        self.require_actual(3)?;
        let cube = self.tensor(self).tensor(self);
        let mixed = self.tensor(&self.adams(2)).scale(3);
        let psi3 = self.adams(3).scale(2);
        Ok(cube.sub(&mixed).add(&psi3).div_exact(6))
    }

    /// Dimension of the invariants of a generator acting by `χ ⊗ J(n)` on each
    /// summand: every trivial-character summand contributes one line.
    pub fn inertia_invariant_dim(&self) -> Result<u64> {
        if !self.is_actual() {
            return Err(Error::VirtualRepresentation);
        }
        Ok(self
            .terms
            .iter()
            .filter(|((c, _), _)| c.is_trivial())
            .map(|(_, &v)| v as u64)
            .sum())
    }
}

/// Centralizer dimension in `G₂` of a local monodromy conjugate into `G₂`,
/// from `Λ²V = V ⊕ 𝔤₂`.
pub fn g2_centralizer_dim(m: &LocalMonodromy) -> Result<u64> {
    if m.degree() != 7 {
        return Err(Error::WrongDegree {
            expected: 7,
            found: m.degree(),
        });
    }
    crate::g2::recognize(m)?;
    let v = RepRingElement::from_local_monodromy(m);
    let l2 = v.lambda2()?.inertia_invariant_dim()?;
    let l1 = v.inertia_invariant_dim()?;
    Ok(l2 - l1)
}

impl fmt::Debug for RepRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let items: Vec<String> = self
            .terms
            .iter()
            .map(|(&(c, n), &v)| format!("{v} · ({c}, [{n}])"))
            .collect();
        f.write_str(&items.join(" + "))
    }
}
