use flagtriad::exact::{ratio, ExactVector};
use flagtriad::flags::catalogue::{multinomial, pattern_counts, SUN_SO, SUN_SO_RANK1, SU2N_SO_SP};
use flagtriad::flags::{maximal_antipodal, BasePoint};
use flagtriad::oracle::{build_pair, certify, embed_point, verify_antipodal_maximality, verify_commutative_lemma, Report};
use flagtriad::rootsys::{Family, RootSystem};
use flagtriad::triads::PiPoint;

#[test]
fn weyl_orbits_of_a_are_maximal_antipodal() {
    let cases: [&[i64]; 4] = [&[1, 0, -1], &[1, 1, -2], &[3, 1, -1, -3], &[1, 1, -1, -1]];
    for (seed, x) in cases.into_iter().enumerate() {
        let x0 = ExactVector::from_ints(x);
        let a = RootSystem::build(Family::A, x.len() - 1).unwrap();
        let orbit = maximal_antipodal(&a, &BasePoint::new(x0.clone()).unwrap()).unwrap();
        assert_eq!(orbit.len() as u128, multinomial(&pattern_counts(&x0)));
        let report = verify_antipodal_maximality(&x0, &orbit, 50, seed as u64);
        assert!(report.passed(), "{}", report.to_table());
    }
}

#[test]
fn certificate_for_rank_one_pair() {
    let h = PiPoint::new(ExactVector::new(vec![ratio(1, 3)]).unwrap());
    let report = certify(SUN_SO_RANK1, 3, &h, 40, 7).unwrap();
    assert!(report.passed(), "{}", report.to_table());
    let back: Report = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn certificate_for_congruent_pair() {
    let h = PiPoint::new(ExactVector::new(vec![ratio(1, 7), ratio(1, 11), ratio(-18, 77)]).unwrap());
    let report = certify(SUN_SO, 3, &h, 40, 3).unwrap();
    assert!(report.passed(), "{}", report.to_table());
}

#[test]
fn commutative_check_rejects_a_foreign_point() {
    let model = build_pair(SU2N_SO_SP, 2).unwrap();
    let h = PiPoint::new(ExactVector::new(vec![ratio(1, 7), ratio(-1, 7)]).unwrap());
    let x0 = ExactVector::from_ints(&[1, -1]);
    // (2, -2) has the wrong spectrum, so it is not in the orbit of x0
    let points = vec![embed_point(&model, &x0), embed_point(&model, &ExactVector::from_ints(&[2, -2]))];
    let outcome = verify_commutative_lemma(&model, &h, &embed_point(&model, &x0), &points);
    assert!(outcome.map(|r| !r.passed()).unwrap_or(true));
}
