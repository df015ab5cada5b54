mod common;

use common::c;
use g2rigid::convolution::{katz_reduce, mc, mt, ReductionOutcome};
use g2rigid::g2::{
    characters_up_to, check_conditions, construct_h, infinity_case, invert_construction, recognize,
    InversionOutcome,
};
use g2rigid::{Character, Error, FormalLocalSystem, LocalMonodromy, Point, RankOneSystem};
use proptest::prelude::*;

fn valid_pairs(max_order: u64) -> Vec<(Character, Character)> {
    let chars = characters_up_to(max_order);
    let mut out = Vec::new();
    for &p in &chars {
        for &e in &chars {
            if check_conditions(p, e).is_ok() {
                out.push((p, e));
            }
        }
    }
    out
}

fn alpha(i: u8) -> Point {
    Point::Finite(format!("alpha{i}"))
}

#[test]
fn sweep_of_valid_parameters() {
    let pairs = valid_pairs(14);
    assert!(pairs.len() > 3000);
    let a1 = LocalMonodromy::from_blocks([(c(1, 2), 1); 4].into_iter().chain([(c(0, 1), 1); 3]))
        .unwrap();
    let a2 = LocalMonodromy::from_blocks([(c(0, 1), 2), (c(0, 1), 2), (c(0, 1), 3)]).unwrap();
    for (p, e) in pairs {
        let hs = construct_h(p, e).unwrap();
        for (i, h) in hs.iter().enumerate() {
            assert_eq!(h.rank() as usize, i + 1);
            assert_eq!(h.rigidity_index(), 2, "H{i} at ({p}, {e})");
            assert!(h.euler_characteristic() <= 0);
        }
        let h = &hs[6];
        assert_eq!(h.monodromy_at(&alpha(1)).unwrap(), &a1);
        assert_eq!(h.monodromy_at(&alpha(2)).unwrap(), &a2);
        let det = h.finite_points().iter().fold(Character::TRIVIAL, |acc, f| {
            acc.mul(f.monodromy.determinant())
        });
        assert_eq!(det, h.infinity().determinant());
        for pt in [alpha(1), alpha(2), Point::Infinity] {
            recognize(h.monodromy_at(&pt).unwrap())
                .unwrap_or_else(|err| panic!("({p}, {e}) at {pt:?}: {err}"));
        }
        match infinity_case(p, e) {
            Ok(ic) => assert_eq!(&ic.infinity, h.infinity(), "({p}, {e})"),
            Err(err) => panic!("({p}, {e}): {err}"),
        }
    }
}

#[test]
fn flagged_pairs() {
    for (p, e) in [
        (c(1, 6), c(1, 6)),
        (c(1, 4), c(3, 4)),
        (c(1, 8), c(5, 8)),
        (c(1, 8), c(1, 4)),
    ] {
        assert!(
            matches!(infinity_case(p, e), Err(Error::NoRigidSystem(_))),
            "({p}, {e})"
        );
    }
    assert_eq!(
        infinity_case(c(1, 2), c(0, 1)).unwrap_err(),
        Error::ConditionViolated("phi")
    );
}

fn candidate(inf: &str, p: Character, e: Character) -> FormalLocalSystem {
    FormalLocalSystem::from_points(
        vec![
            ("alpha1", common::cell("-1 x4 + 1 x3", p, e)),
            ("alpha2", common::cell("U(2) x2 + U(3)", p, e)),
        ],
        common::cell(inf, p, e),
    )
    .unwrap()
}

#[test]
fn inversion_descends_for_constructed_systems() {
    for (p, e) in [
        (c(0, 1), c(0, 1)),
        (c(1, 3), c(1, 3)),
        (c(1, 5), c(1, 5)),
        (c(1, 5), c(4, 5)),
        (c(1, 7), c(2, 7)),
    ] {
        let h = construct_h(p, e).unwrap().pop().unwrap();
        let rep = invert_construction(&h, p, e);
        assert_eq!(
            rep.outcome,
            InversionOutcome::Descended {
                ranks: vec![7, 6, 5, 4, 3, 2, 1]
            }
        );
    }
}

#[test]
fn inversion_rejects_degenerate_candidates() {
    // Case 4 shape with φ of order 4
    let (p, e) = (c(1, 4), c(3, 4));
    let h = candidate("U(2,p) + U(2,p^-1) + U(3)", p, e);
    assert!(invert_construction(&h, p, e).is_contradiction());
    // Case 5 shape with φη̄ = -1
    let (p, e) = (c(1, 8), c(5, 8));
    let h = candidate("p + e + p*e + 1 + p^-1*e^-1 + e^-1 + p^-1", p, e);
    assert!(invert_construction(&h, p, e).is_contradiction());
    // Case 3 shape with φ of order 6
    let (p, e) = (c(1, 6), c(1, 6));
    let h = candidate("U(2,p) + U(2,p^-1) + p^2 + p^-2 + 1", p, e);
    assert!(invert_construction(&h, p, e).is_contradiction());
}

#[test]
fn greedy_reduction_of_the_unipotent_system() {
    let h = construct_h(c(0, 1), c(0, 1)).unwrap().pop().unwrap();
    let rep = katz_reduce(&h);
    assert_eq!(rep.outcome, ReductionOutcome::RigidReducible);
    let ranks: Vec<u32> = rep.trace.iter().map(|s| s.rank_after).collect();
    assert_eq!(ranks, vec![6, 5, 4, 3, 2, 1]);
}

#[test]
fn greedy_reduction_reaches_rank_one_on_the_cases() {
    for (p, e) in [
        (c(1, 3), c(1, 3)),
        (c(1, 5), c(1, 5)),
        (c(1, 5), c(4, 5)),
        (c(1, 7), c(2, 7)),
    ] {
        let h = construct_h(p, e).unwrap().pop().unwrap();
        assert_eq!(
            katz_reduce(&h).outcome,
            ReductionOutcome::RigidReducible,
            "({p}, {e})"
        );
    }
}

fn system() -> impl Strategy<Value = FormalLocalSystem> {
    let pairs = valid_pairs(12);
    (proptest::sample::select(pairs), 0usize..7)
        .prop_map(|((p, e), i)| construct_h(p, e).unwrap().swap_remove(i))
}

fn nontrivial() -> impl Strategy<Value = Character> {
    (2u64..=12).prop_flat_map(|q| (1..q as i64).prop_map(move |a| Character::new(a, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn convolution_laws(f in system(), chi in nontrivial(), rho in nontrivial()) {
        if let Ok(g) = mc(&f, chi) {
            prop_assert_eq!(g.rigidity_index(), f.rigidity_index());
            prop_assert_eq!(&mc(&g, chi.inv()).unwrap(), &f);
            if !chi.mul(rho).is_trivial() {
                match (mc(&g, rho), mc(&f, chi.mul(rho))) {
                    (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                    (Err(_), Err(_)) => {}
                    (a, b) => prop_assert!(false, "one side failed: {:?} vs {:?}", a.err(), b.err()),
                }
            }
        }
    }

    #[test]
    fn middle_tensor_laws(f in system(), a in nontrivial(), b in nontrivial()) {
        let l = RankOneSystem::pair(a, b);
        if let Ok(g) = mt(&f, &l) {
            prop_assert_eq!(g.rigidity_index(), f.rigidity_index());
            prop_assert_eq!(mt(&g, &l.dual()).unwrap(), f.clone());
        }
        prop_assert_eq!(mt(&f, &RankOneSystem::pair(c(0, 1), c(0, 1))).unwrap(), f);
    }

    #[test]
    fn numerology_ignores_point_order(f in system()) {
        let g = f.permuted(&[1, 0]).unwrap();
        prop_assert_eq!(g.rigidity_index(), f.rigidity_index());
        prop_assert_eq!(g.euler_characteristic(), f.euler_characteristic());
        prop_assert_eq!(g.relabeled().permuted(&[1, 0]).unwrap().relabeled(), f.relabeled());
    }
}
