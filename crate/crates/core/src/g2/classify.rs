//! Centralizer-dimension profiles and the exclusion search for rigid rank-7
//! systems with `G₂` monodromy on three singular points.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construction::{invert_construction, InversionOutcome};
use super::table::{concrete_classes, G2ClassInfo, TABLE};
use crate::character::Character;
use crate::local::{FormalLocalSystem, LocalMonodromy};

/// Sum of centralizer dimensions forced by rigidity on three points: `7² + 2`.
pub const PROFILE_SUM: u32 = 51;

/// Triples `(a, b, c)`, `a >= b >= c`, of Table 1 `GL₇` centralizer
/// dimensions with `a + b + c = 51`.
pub fn classify_profiles() -> Vec<[u32; 3]> {
    let mut dims: Vec<u32> = TABLE.iter().map(|t| t.dim_gl7).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    dims.dedup();
    let mut out = Vec::new();
    for (i, &a) in dims.iter().enumerate() {
        for (j, &b) in dims.iter().enumerate().skip(i) {
            for &c in dims.iter().skip(j) {
                if a + b + c == PROFILE_SUM {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Irreducibility fails after twists by characters of order at most 2.
    TwistQuadratic,
    /// The adjoint `G₂` system would have positive Euler characteristic.
    Adjoint,
    /// Irreducibility fails after twists by characters of order dividing 4.
    TwistOrder4,
    /// Irreducibility fails after twists by characters of order dividing the bound.
    TwistBound,
    /// Undoing the construction leads to a contradiction for every matching pair.
    Inversion,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::TwistQuadratic => "twist-quadratic",
            Rule::Adjoint => "adjoint",
            Rule::TwistOrder4 => "twist-order-4",
            Rule::TwistBound => "twist-bound",
            Rule::Inversion => "inversion",
        }
    }
}

/// Whether twisting by characters `v₁, v₂, v₁v₂` of order dividing `n` makes
/// `(1 - 2)·7 + Σ e₁(s, 𝟙)` positive.
pub fn twist_excludes(ms: [&LocalMonodromy; 3], n: u64) -> bool {
    let mu = Character::all_of_order_dividing(n);
    mu.iter().any(|&v1| {
        mu.iter().any(|&v2| {
            let s = ms[0].e(v1, 1) + ms[1].e(v2, 1) + ms[2].e(v1.mul(v2), 1);
            s > 7
        })
    })
}

/// `-14 + Σ dim C_{G₂}(s) > 0`.
pub fn adjoint_excludes(dims_g2: [u32; 3]) -> bool {
    -14 + dims_g2.iter().map(|&d| i64::from(d)).sum::<i64>() > 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub classes: Vec<G2ClassInfo>,
    pub monodromies: Vec<LocalMonodromy>,
    /// Every rule that excludes this triple on its own.
    pub excluded_by: Vec<Rule>,
    pub status: String,
    /// For an inverted triple: the pairs `(φ, η)` tried and the first failure of each.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inversions: Vec<InversionAttempt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionAttempt {
    pub phi: Character,
    pub eta: Character,
    pub outcome: InversionOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub profile: [u32; 3],
    pub classes: Vec<TripleReport>,
    /// Rules that alone exclude every triple of the profile.
    pub excluding_rules: Vec<Rule>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub alpha1: LocalMonodromy,
    pub alpha2: LocalMonodromy,
    pub infinity: LocalMonodromy,
    pub infinity_class: G2ClassInfo,
    pub phi: Character,
    pub eta: Character,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub bound: u64,
    pub profiles: Vec<ProfileReport>,
    pub survivors: Vec<Survivor>,
}

fn eigen_multiset(m: &LocalMonodromy) -> BTreeMap<Character, u32> {
    m.parts().iter().map(|(c, p)| (*c, p.degree())).collect()
}

/// Pairs `(φ, η)` of order dividing `b` whose eigenvalue multiset
/// `{1, φ^±1, η^±1, (φη)^±1}` equals that of `m`.
fn matching_pairs(m: &LocalMonodromy, b: u64) -> Vec<(Character, Character)> {
    let want = eigen_multiset(m);
    let mu = Character::all_of_order_dividing(b);
    let mut out = Vec::new();
    for &phi in &mu {
        if !want.contains_key(&phi) {
            continue;
        }
        for &eta in &mu {
            let pe = phi.mul(eta);
            let mut have = BTreeMap::new();
            for c in [
                Character::TRIVIAL,
                phi,
                phi.inv(),
                eta,
                eta.inv(),
                pe,
                pe.inv(),
            ] {
                *have.entry(c).or_insert(0) += 1;
            }
            if have == want {
                out.push((phi, eta));
            }
        }
    }
    out
}

fn examine_triple(
    triple: [&(G2ClassInfo, LocalMonodromy); 3],
    b: u64,
) -> (TripleReport, Option<Survivor>) {
    let ms = [&triple[0].1, &triple[1].1, &triple[2].1];
    let mut excluded_by = Vec::new();
    if twist_excludes(ms, 2) {
        excluded_by.push(Rule::TwistQuadratic);
    }
    if adjoint_excludes([
        triple[0].0.dim_c_g2,
        triple[1].0.dim_c_g2,
        triple[2].0.dim_c_g2,
    ]) {
        excluded_by.push(Rule::Adjoint);
    }
    if twist_excludes(ms, 4) {
        excluded_by.push(Rule::TwistOrder4);
    }
    if twist_excludes(ms, b) {
        excluded_by.push(Rule::TwistBound);
    }
    let mut inversions = Vec::new();
    let mut survivor = None;
    if excluded_by.is_empty() {
        // place the involution at alpha1, the unipotent class at alpha2
        let inv = triple.iter().find(|t| t.0.template_id == 6);
        let uni = triple.iter().find(|t| t.0.template_id == 3);
        let reg = triple.iter().find(|t| t.0.dim_c_gl7 == 7);
        if let (Some(a1), Some(a2), Some(inf)) = (inv, uni, reg) {
            let h = FormalLocalSystem::from_points(
                vec![("alpha1", a1.1.clone()), ("alpha2", a2.1.clone())],
                inf.1.clone(),
            )
            .expect("G2 classes have trivial determinant");
            for (phi, eta) in matching_pairs(&inf.1, b) {
                let rep = invert_construction(&h, phi, eta);
                if survivor.is_none() && !rep.is_contradiction() {
                    survivor = Some(Survivor {
                        alpha1: a1.1.clone(),
                        alpha2: a2.1.clone(),
                        infinity: inf.1.clone(),
                        infinity_class: inf.0.clone(),
                        phi,
                        eta,
                    });
                }
                inversions.push(InversionAttempt {
                    phi,
                    eta,
                    outcome: rep.outcome,
                });
            }
            if survivor.is_none() {
                excluded_by.push(Rule::Inversion);
            }
        }
    }
    let status = match excluded_by.first() {
        Some(r) => format!("excluded:{}", r.name()),
        None => "survives".to_string(),
    };
    let report = TripleReport {
        classes: triple.iter().map(|t| t.0.clone()).collect(),
        monodromies: ms.iter().map(|m| (*m).clone()).collect(),
        excluded_by,
        status,
        inversions,
    };
    (report, survivor)
}

/// Enumerates every multiset of three concrete Table 1 classes with
/// characters of order dividing `b` and centralizer dimensions summing to 51,
/// and applies the exclusion rules. Triples left over by the twist and
/// adjoint rules are tested by undoing the construction.
pub fn classify_rigid_g2(b: u64) -> ClassificationReport {
    let classes = concrete_classes(b);
    let profiles = classify_profiles();
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            for k in j..classes.len() {
                let s = classes[i].0.dim_c_gl7 + classes[j].0.dim_c_gl7 + classes[k].0.dim_c_gl7;
                if s == PROFILE_SUM {
                    triples.push([i, j, k]);
                }
            }
        }
    }
    let examined: Vec<([u32; 3], TripleReport, Option<Survivor>)> = triples
        .par_iter()
        .map(|&[i, j, k]| {
            let mut t = [&classes[i], &classes[j], &classes[k]];
            t.sort_by(|a, b| b.0.dim_c_gl7.cmp(&a.0.dim_c_gl7));
            let profile = [t[0].0.dim_c_gl7, t[1].0.dim_c_gl7, t[2].0.dim_c_gl7];
            let (rep, surv) = examine_triple(t, b);
            (profile, rep, surv)
        })
        .collect();

    let mut survivors = Vec::new();
    let mut by_profile: BTreeMap<[u32; 3], Vec<TripleReport>> = BTreeMap::new();
    for (p, rep, surv) in examined {
        by_profile.entry(p).or_default().push(rep);
        survivors.extend(surv);
    }
    let all_rules = [
        Rule::TwistQuadratic,
        Rule::Adjoint,
        Rule::TwistOrder4,
        Rule::TwistBound,
        Rule::Inversion,
    ];
    let profiles = profiles
        .into_iter()
        .map(|p| {
            let reps = by_profile.remove(&p).unwrap_or_default();
            let excluding_rules: Vec<Rule> = all_rules
                .iter()
                .copied()
                .filter(|r| reps.iter().all(|t| t.excluded_by.contains(r)))
                .collect();
            let status = if reps.iter().any(|t| t.excluded_by.is_empty()) {
                "survives".to_string()
            } else if let Some(r) = excluding_rules.first() {
                format!("excluded:{}", r.name())
            } else {
                "excluded:combined".to_string()
            };
            ProfileReport {
                profile: p,
                classes: reps,
                excluding_rules,
                status,
            }
        })
        .collect();
    survivors.sort_by_key(|a| (a.phi, a.eta));
    ClassificationReport {
        bound: b,
        profiles,
        survivors,
    }
}
