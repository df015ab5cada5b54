mod common;

use std::collections::BTreeSet;

use g2rigid::g2::classify::{adjoint_excludes, twist_excludes, ProfileReport};
use g2rigid::g2::{
    characters_up_to, classify_profiles, classify_rigid_g2, infinity_case, ClassificationReport,
    Rule,
};
use g2rigid::Character;

fn report() -> &'static ClassificationReport {
    static R: std::sync::OnceLock<ClassificationReport> = std::sync::OnceLock::new();
    R.get_or_init(|| classify_rigid_g2(24))
}

fn profile(p: [u32; 3]) -> &'static ProfileReport {
    report().profiles.iter().find(|r| r.profile == p).unwrap()
}

#[test]
fn table2_profiles() {
    let want: BTreeSet<[u32; 3]> = [
        [29, 13, 9],
        [29, 11, 11],
        [25, 19, 7],
        [25, 17, 9],
        [25, 13, 13],
        [19, 19, 13],
        [17, 17, 17],
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<[u32; 3]> = classify_profiles().into_iter().collect();
    assert_eq!(got, want);
    let ids: Vec<[u32; 3]> = report().profiles.iter().map(|r| r.profile).collect();
    assert_eq!(ids.len(), 7);
}

#[test]
fn exclusion_attributions() {
    for p in [[29, 13, 9], [25, 17, 9], [17, 17, 17]] {
        assert!(
            profile(p).excluding_rules.contains(&Rule::TwistQuadratic),
            "{p:?}"
        );
    }
    for p in [[29, 11, 11], [19, 19, 13]] {
        assert!(profile(p).excluding_rules.contains(&Rule::Adjoint), "{p:?}");
    }
    let p5 = profile([25, 13, 13]);
    assert!(p5.excluding_rules.contains(&Rule::TwistOrder4));
    assert!(!p5.excluding_rules.contains(&Rule::TwistQuadratic));
    assert_eq!(profile([25, 19, 7]).status, "survives");
}

#[test]
fn survivors_are_the_constructed_systems() {
    let mu: Vec<Character> = Character::all_of_order_dividing(24);
    let mut want = BTreeSet::new();
    for &p in &mu {
        for &e in &mu {
            if let Ok(ic) = infinity_case(p, e) {
                want.insert(ic.infinity.to_string());
            }
        }
    }
    let got: BTreeSet<String> = report()
        .survivors
        .iter()
        .map(|s| s.infinity.to_string())
        .collect();
    assert_eq!(got, want);
    for s in &report().survivors {
        assert_eq!(s.alpha1, common::cell("-1 x4 + 1 x3", s.phi, s.eta));
        assert_eq!(s.alpha2, common::cell("U(2) x2 + U(3)", s.phi, s.eta));
    }
    assert!(characters_up_to(24).len() > mu.len());
}

/// Regular classes at infinity that survive the cheap filters but come from a
/// pair breaking the construction conditions.
fn flagged_infinity_classes() -> BTreeSet<String> {
    let mu = Character::all_of_order_dividing(24);
    let mut out = BTreeSet::new();
    for &p in &mu {
        for &e in &mu {
            if !matches!(infinity_case(p, e), Err(g2rigid::Error::NoRigidSystem(_))) {
                continue;
            }
            for (p, e) in g2rigid::g2::weyl_orbit(p, e) {
                if p == e && p.order() == 6 {
                    out.insert(
                        common::cell("U(2,p) + U(2,p^-1) + p^2 + p^-2 + 1", p, e).to_string(),
                    );
                } else if p == e.inv() && p.order() == 4 {
                    out.insert(common::cell("U(2,p) + U(2,p^-1) + U(3)", p, e).to_string());
                } else {
                    let m = common::cell("p + e + p*e + 1 + p^-1*e^-1 + e^-1 + p^-1", p, e);
                    if m.characters().count() == 7 {
                        out.insert(m.to_string());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn degenerate_candidates_fail_inversion() {
    let excluded: BTreeSet<String> = profile([25, 19, 7])
        .classes
        .iter()
        .filter(|t| t.excluded_by == vec![Rule::Inversion])
        .map(|t| t.monodromies[2].to_string())
        .collect();
    let flagged = flagged_infinity_classes();
    assert_eq!(excluded, flagged);
    let p = Character::new(1, 4);
    let case4 = common::cell("U(2,p) + U(2,p^-1) + U(3)", p, p.inv()).to_string();
    let p = Character::new(1, 6);
    let case3 = common::cell("U(2,p) + U(2,p^-1) + p^2 + p^-2 + 1", p, p).to_string();
    assert!(excluded.contains(&case4) && excluded.contains(&case3));
}

#[test]
fn filter_examples() {
    assert!(adjoint_excludes([8, 4, 4]));
    assert!(!adjoint_excludes([6, 6, 2]));
    let inv = common::cell("-1 x4 + 1 x3", Character::TRIVIAL, Character::TRIVIAL);
    let j7 = common::cell("U(7)", Character::TRIVIAL, Character::TRIVIAL);
    let e7 = common::cell("U(2) x2 + 1 x3", Character::TRIVIAL, Character::TRIVIAL);
    assert!(twist_excludes([&e7, &inv, &inv], 2));
    assert!(!twist_excludes([&inv, &e7, &j7], 1) || twist_excludes([&inv, &e7, &j7], 2));
}
