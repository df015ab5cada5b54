//! Middle convolution `MC_χ` and middle tensor `MT_L` on local data, and a
//! greedy reduction loop in the spirit of Katz's existence algorithm.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::local::{FinitePoint, FormalLocalSystem, LocalMonodromy, Provenance, RankOneSystem};
use crate::partition::Partition;

/// Output rank of `MC_χ`: `Σ_s (n - e₁(s,𝟙)) - e₁(∞,χ̄)`.
pub fn mc_rank(f: &FormalLocalSystem, chi: Character) -> i64 {
    let n = i64::from(f.rank());
    let m: i64 = f
        .finite_points()
        .iter()
        .map(|p| n - i64::from(p.monodromy.e(Character::TRIVIAL, 1)))
        .sum();
    m - i64::from(f.infinity().e(chi.inv(), 1))
}

fn e_seq(m: &LocalMonodromy, rho: Character) -> Vec<i64> {
    m.partition(rho)
        .map(|p| p.e_sequence().into_iter().map(i64::from).collect())
        .unwrap_or_default()
}

fn rebuild(
    out: &mut BTreeMap<Character, Partition>,
    point: &str,
    rho: Character,
    e: &[i64],
) -> Result<()> {
    match Partition::from_e_sequence(e) {
        Ok(Some(p)) => {
            out.insert(rho, p);
            Ok(())
        }
        Ok(None) => Ok(()),
        Err(detail) => Err(Error::InconsistentData {
            point: point.to_string(),
            character: rho,
            detail,
        }),
    }
}

/// The rules of `MC_χ` without validating the result.
fn mc_parts(f: &FormalLocalSystem, chi: Character) -> Result<(Vec<FinitePoint>, LocalMonodromy)> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let one = Character::TRIVIAL;
    let chib = chi.inv();
    let n = i64::from(f.rank());
    let n_out = mc_rank(f, chi);
    if n_out <= 0 {
        return Err(Error::DegenerateConvolution(n_out));
    }
    let m_sum: i64 = f
        .finite_points()
        .iter()
        .map(|p| n - i64::from(p.monodromy.e(one, 1)))
        .sum();

    let mut finite = Vec::with_capacity(f.finite_points().len());
    for p in f.finite_points() {
        let src = &p.monodromy;
        let mut out = BTreeMap::new();
        for (&sigma, part) in src.parts() {
            if sigma != one && sigma != chib {
                out.insert(sigma.mul(chi), part.clone());
            }
        }
        let mut e_one = vec![n_out - n + i64::from(src.e(one, 1))];
        e_one.extend(e_seq(src, chib));
        rebuild(&mut out, &p.label, one, &e_one)?;
        let e_chi: Vec<i64> = e_seq(src, one).into_iter().skip(1).collect();
        rebuild(&mut out, &p.label, chi, &e_chi)?;
        let monodromy = LocalMonodromy::new(out).ok_or(Error::DegenerateConvolution(n_out))?;
        assert_eq!(
            i64::from(monodromy.degree()),
            n_out,
            "mc degree at {}",
            p.label
        );
        finite.push(FinitePoint {
            label: p.label.clone(),
            monodromy,
        });
    }

    let src = f.infinity();
    let mut out = BTreeMap::new();
    for (&sigma, part) in src.parts() {
        if sigma != one && sigma != chib {
            out.insert(sigma.mul(chi), part.clone());
        }
    }
    let mut e_chi = vec![m_sum - n];
    e_chi.extend(e_seq(src, one));
    rebuild(&mut out, "infinity", chi, &e_chi)?;
    let e_one: Vec<i64> = e_seq(src, chib).into_iter().skip(1).collect();
    rebuild(&mut out, "infinity", one, &e_one)?;
    let infinity = LocalMonodromy::new(out).ok_or(Error::DegenerateConvolution(n_out))?;
    assert_eq!(i64::from(infinity.degree()), n_out, "mc degree at infinity");
    Ok((finite, infinity))
}

/// Middle convolution `MC_χ` on local data.
pub fn mc(f: &FormalLocalSystem, chi: Character) -> Result<FormalLocalSystem> {
    let (finite, infinity) = mc_parts(f, chi)?;
    FormalLocalSystem::new(finite, infinity, Provenance::Constructed)
}

/// Middle tensor product with a rank-one system. Points of `f` missing from
/// `l` read as the trivial character.
pub fn mt(f: &FormalLocalSystem, l: &RankOneSystem) -> Result<FormalLocalSystem> {
    for (label, _) in &l.finite_chars {
        if !f.labels().any(|x| x == label) {
            return Err(Error::UnknownPoint(label.clone()));
        }
    }
    let chars: Vec<Character> = f.labels().map(|s| l.char_at(s)).collect();
    let (finite, infinity) = f.twist_unchecked(&chars);
    FormalLocalSystem::new(finite, infinity, f.provenance())
}

/// `MC_χ̄ ∘ MC_χ (F) = F`.
pub fn mc_involution_check(f: &FormalLocalSystem, chi: Character) -> Result<bool> {
    let back = mc(&mc(f, chi)?, chi.inv())?;
    Ok(&back == f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistEntry {
    pub label: String,
    #[serde(rename = "char")]
    pub character: Character,
}

/// One reduction step: a twist at each finite point followed by `MC_χ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub twist: Vec<TwistEntry>,
    pub chi: Character,
    pub rank_after: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionOutcome {
    /// Rank one was reached: the input reduces to a rank-one system.
    RigidReducible,
    /// No twist and convolution lowers the rank further.
    NoDecreasingStep { rank: u32, rigidity_index: i64 },
    /// The chosen convolution would have nonpositive rank.
    Degenerate { rank: u32, would_be: i64 },
    /// Fewer than two finite singular points remain after a twist.
    TooFewPoints { rank: u32 },
    /// The intermediate data failed validation.
    Invalid { rank: u32, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub trace: Vec<ReductionStep>,
    pub outcome: ReductionOutcome,
    pub last: FormalLocalSystem,
}

fn max_e1(m: &LocalMonodromy, skip_trivial: bool) -> Option<Character> {
    let mut best: Option<(Character, u32)> = None;
    for (c, p) in m.parts() {
        if skip_trivial && c.is_trivial() {
            continue;
        }
        let e1 = p.e(1);
        if best.is_none_or(|(_, b)| e1 > b) {
            best = Some((*c, e1));
        }
    }
    best.map(|(c, _)| c)
}

/// Greedy reduction: at every finite point twist away the character with the
/// most Jordan blocks, then convolve with the inverse of the nontrivial
/// character at `∞` with the most blocks. Ties go to the smallest character.
/// Stops at rank one or when the rank no longer drops.
pub fn katz_reduce(f: &FormalLocalSystem) -> ReductionReport {
    let mut cur = f.clone();
    let mut trace = Vec::new();
    loop {
        let rank = cur.rank();
        if rank == 1 {
            return ReductionReport {
                trace,
                outcome: ReductionOutcome::RigidReducible,
                last: cur,
            };
        }
        let taus: Vec<Character> = cur
            .finite_points()
            .iter()
            .map(|p| max_e1(&p.monodromy, false).expect("nonempty").inv())
            .collect();
        let (finite, infinity) = cur.twist_unchecked(&taus);
        let twist: Vec<TwistEntry> = cur
            .labels()
            .zip(&taus)
            .map(|(l, c)| TwistEntry {
                label: l.to_string(),
                character: *c,
            })
            .collect();
        let finite: Vec<FinitePoint> = finite
            .into_iter()
            .filter(|p| !p.monodromy.is_identity())
            .collect();
        if finite.len() < 2 {
            return ReductionReport {
                trace,
                outcome: ReductionOutcome::TooFewPoints { rank },
                last: cur,
            };
        }
        let twisted = match FormalLocalSystem::new(finite, infinity, cur.provenance()) {
            Ok(t) => t,
            Err(e) => {
                return ReductionReport {
                    trace,
                    outcome: ReductionOutcome::Invalid {
                        rank,
                        message: e.to_string(),
                    },
                    last: cur,
                }
            }
        };
        let chi = max_e1(twisted.infinity(), true)
            .map(Character::inv)
            .unwrap_or(Character::QUADRATIC);
        let would_be = mc_rank(&twisted, chi);
        if would_be >= i64::from(rank) {
            let rigidity_index = cur.rigidity_index();
            return ReductionReport {
                trace,
                outcome: ReductionOutcome::NoDecreasingStep {
                    rank,
                    rigidity_index,
                },
                last: cur,
            };
        }
        if would_be <= 0 {
            return ReductionReport {
                trace,
                outcome: ReductionOutcome::Degenerate { rank, would_be },
                last: cur,
            };
        }
        let next = mc_parts(&twisted, chi).and_then(|(finite, infinity)| {
            let finite: Vec<FinitePoint> = finite
                .into_iter()
                .filter(|p| !p.monodromy.is_identity())
                .collect();
            FormalLocalSystem::new(finite, infinity, Provenance::Constructed)
        });
        match next {
            Ok(next) => {
                trace.push(ReductionStep {
                    twist,
                    chi,
                    rank_after: next.rank(),
                });
                cur = next;
            }
            Err(e) => {
                return ReductionReport {
                    trace,
                    outcome: ReductionOutcome::Invalid {
                        rank,
                        message: e.to_string(),
                    },
                    last: cur,
                }
            }
        }
    }
}
