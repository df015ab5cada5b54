//! The seven-step construction of `H(φ, η)` and its inverse.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::convolution::{mc, mt};
use crate::error::{Error, Result};
use crate::local::{FormalLocalSystem, LocalMonodromy, Provenance, RankOneSystem};

const ONE: Character = Character::TRIVIAL;
const MINUS: Character = Character::QUADRATIC;

/// Rank-one twists `F₁..F₇` and convolution characters `ρ₁..ρ₆`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecipe {
    pub f: [RankOneSystem; 7],
    pub rho: [Character; 6],
}

impl ConstructionRecipe {
    pub fn new(phi: Character, eta: Character) -> Self {
        let pe = phi.mul(eta);
        let pe2 = pe.mul(eta);
        let l = RankOneSystem::pair;
        ConstructionRecipe {
            f: [
                l(MINUS, pe.neg()),
                l(ONE, phi.inv().neg()),
                l(MINUS, ONE),
                l(ONE, phi.mul(eta.inv()).neg()),
                l(MINUS, ONE),
                l(ONE, phi.inv().neg()),
                l(MINUS, ONE),
            ],
            rho: [
                pe2.inv().neg(),
                pe2.neg(),
                pe.inv().neg(),
                pe.neg(),
                phi.inv().neg(),
                phi.neg(),
            ],
        }
    }
}

/// The products that must differ from `-𝟙`, with their names.
fn condition_products(phi: Character, eta: Character) -> [(&'static str, Character); 6] {
    [
        ("phi", phi),
        ("eta", eta),
        ("phi*eta", phi.mul(eta)),
        ("phi*eta^2", phi.mul(eta.pow(2))),
        ("eta*phi^2", eta.mul(phi.pow(2))),
        ("phi*eta^-1", phi.mul(eta.inv())),
    ]
}

/// Fails with the first product equal to `-𝟙`.
pub fn check_conditions(phi: Character, eta: Character) -> Result<()> {
    match condition_products(phi, eta)
        .iter()
        .find(|(_, c)| *c == MINUS)
    {
        Some((name, _)) => Err(Error::ConditionViolated(name)),
        None => Ok(()),
    }
}

/// `H₀, ..., H₆` with `H_i = MT_{F_{i+1}}(MC_{ρ_i}(H_{i-1}))` and `H₀ = F₁`.
pub fn construct_h(phi: Character, eta: Character) -> Result<Vec<FormalLocalSystem>> {
    check_conditions(phi, eta)?;
    let r = ConstructionRecipe::new(phi, eta);
    let mut out = Vec::with_capacity(7);
    out.push(
        r.f[0]
            .to_local_system()?
            .with_provenance(Provenance::Constructed),
    );
    for i in 0..6 {
        let next = mt(&mc(&out[i], r.rho[i])?, &r.f[i + 1])?;
        out.push(next);
    }
    Ok(out)
}

/// The `∞`-row of the construction selected by `(φ, η)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityCase {
    pub case: u8,
    pub infinity: LocalMonodromy,
    /// The pair that matches the row; differs from the input when the input
    /// only matches after a Weyl group symmetry.
    pub representative: (Character, Character),
}

/// The `∞`-row whose own condition column `(φ, η)` satisfies, ignoring the
/// global conditions checked by [`check_conditions`].
pub fn case_row(phi: Character, eta: Character) -> Option<(u8, LocalMonodromy)> {
    let pb = phi.inv();
    let not_one = |k: i64| !phi.pow(k).is_trivial();
    if phi.is_trivial() && eta.is_trivial() {
        return Some((1, LocalMonodromy::single(ONE, 7)));
    }
    if phi == eta && !phi.is_trivial() && phi.pow(3).is_trivial() {
        return LocalMonodromy::from_blocks([(phi, 3), (pb, 3), (ONE, 1)]).map(|m| (2, m));
    }
    if phi == eta && not_one(4) && not_one(6) {
        return LocalMonodromy::from_blocks([
            (phi, 2),
            (pb, 2),
            (phi.pow(2), 1),
            (pb.pow(2), 1),
            (ONE, 1),
        ])
        .map(|m| (3, m));
    }
    if phi == eta.inv() && not_one(4) {
        return LocalMonodromy::from_blocks([(phi, 2), (pb, 2), (ONE, 3)]).map(|m| (4, m));
    }
    let pe = phi.mul(eta);
    let seven = [phi, eta, pe, pe.inv(), eta.inv(), pb, ONE];
    let distinct: std::collections::BTreeSet<_> = seven.iter().collect();
    if distinct.len() == 7 {
        return LocalMonodromy::from_blocks(seven.map(|c| (c, 1))).map(|m| (5, m));
    }
    None
}

/// Images of `(φ, η)` under the Weyl group of `G₂`: permutations of the triple
/// `(φ, η, (φη)⁻¹)` combined with inversion, sorted and deduplicated.
pub fn weyl_orbit(phi: Character, eta: Character) -> Vec<(Character, Character)> {
    let c = phi.mul(eta).inv();
    let t = [phi, eta, c];
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out: Vec<(Character, Character)> = perms
        .iter()
        .flat_map(|p| {
            let (a, b) = (t[p[0]], t[p[1]]);
            [(a, b), (a.inv(), b.inv())]
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Why no rigid system exists for a pair violating the conditions, if the
/// pair belongs to one of the regular-class degenerations.
fn flagged_degeneration(phi: Character, eta: Character) -> Option<&'static str> {
    weyl_orbit(phi, eta).into_iter().find_map(|(p, e)| {
        let pe = p.mul(e);
        let seven = [p, e, pe, pe.inv(), e.inv(), p.inv(), ONE];
        let distinct = seven
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            == 7;
        if p == e && p.order() == 6 {
            Some("case 3 shape with phi of order 6")
        } else if p == e.inv() && p.order() == 4 {
            Some("case 4 shape with phi of order 4")
        } else if distinct
            && (p.mul(e.inv()) == MINUS || p.mul(e.pow(2)) == MINUS || p.pow(2).mul(e) == MINUS)
        {
            Some("case 5 shape with phi*eta^-1, phi*eta^2 or phi^2*eta equal to -1")
        } else {
            None
        }
    })
}

/// The case (1–5) and `∞`-monodromy of `H(φ, η)`. Rows are tried in table
/// order; a pair matching no row directly is matched through its Weyl orbit.
pub fn infinity_case(phi: Character, eta: Character) -> Result<InfinityCase> {
    if let Err(e) = check_conditions(phi, eta) {
        return match flagged_degeneration(phi, eta) {
            Some(reason) => Err(Error::NoRigidSystem(reason)),
            None => Err(e),
        };
    }
    for (p, e) in std::iter::once((phi, eta)).chain(weyl_orbit(phi, eta)) {
        if let Some((case, infinity)) = case_row(p, e) {
            return Ok(InfinityCase {
                case,
                infinity,
                representative: (p, e),
            });
        }
    }
    Err(Error::NoTableRow { phi, eta })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionStep {
    /// Index `i` of the undone step `H_{i-1} -> H_i`.
    pub index: usize,
    pub rank: u32,
    pub rigidity_index: i64,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InversionOutcome {
    /// Every step succeeded and ended in rank one.
    Descended { ranks: Vec<u32> },
    /// Step `index` produced an impossible system.
    Contradiction { index: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionReport {
    pub steps: Vec<InversionStep>,
    pub outcome: InversionOutcome,
}

impl InversionReport {
    pub fn is_contradiction(&self) -> bool {
        matches!(self.outcome, InversionOutcome::Contradiction { .. })
    }
}

/// Undoes the construction: `mt` with `F_{i+1}^∨`, then `mc` with `ρ̄_i`, for
/// `i = 6, ..., 1`, stopping at the first system with rigidity index `≠ 2`,
/// positive Euler characteristic, or a failed convolution.
pub fn invert_construction(
    h: &FormalLocalSystem,
    phi: Character,
    eta: Character,
) -> InversionReport {
    let r = ConstructionRecipe::new(phi, eta);
    let mut cur = h.relabeled();
    let mut steps = Vec::new();
    let mut ranks = vec![cur.rank()];
    let contradiction = |steps, index, reason: String| InversionReport {
        steps,
        outcome: InversionOutcome::Contradiction { index, reason },
    };
    if h.rank() != 7 {
        return contradiction(steps, 6, format!("rank {} instead of 7", h.rank()));
    }
    for i in (1..=6).rev() {
        let next = mt(&cur, &r.f[i].dual()).and_then(|t| mc(&t, r.rho[i - 1].inv()));
        let next = match next {
            Ok(n) => n,
            Err(e) => return contradiction(steps, i, e.to_string()),
        };
        let rig = next.rigidity_index();
        let eu = next.euler_characteristic();
        steps.push(InversionStep {
            index: i,
            rank: next.rank(),
            rigidity_index: rig,
            euler_characteristic: eu,
        });
        if rig != 2 {
            return contradiction(steps, i, format!("rigidity index {rig}"));
        }
        if eu > 0 {
            return contradiction(steps, i, format!("Euler characteristic {eu} > 0"));
        }
        ranks.push(next.rank());
        cur = next;
    }
    if cur.rank() != 1 {
        return contradiction(steps, 1, format!("descent ends in rank {}", cur.rank()));
    }
    InversionReport {
        steps,
        outcome: InversionOutcome::Descended { ranks },
    }
}
