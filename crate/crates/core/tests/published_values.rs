//! Values stated in the literature this crate follows.

use gabinv_core::abgroups::FiniteAbelianGroup;
use gabinv_core::arith::PrimePower;
use gabinv_core::curves::{class_number, trivial_class_group_corpus, two_rank_family};
use gabinv_core::extensions::{construct_b, uniqueness_demo, TruncatedExtensionSpec};
use gabinv_core::profinite::{exceptional_scan, n_of_2, n_of_l, TqProfile};
use num_bigint::BigUint;

fn pp(q: u64) -> PrimePower {
    PrimePower::from_q(q).unwrap()
}

#[test]
fn first_exceptional_prime_for_two_is_1093() {
    assert_eq!(exceptional_scan(pp(2), 3000).unwrap(), vec![1093]);
}

#[test]
fn seven_is_exceptional_at_five() {
    assert!(exceptional_scan(pp(7), 10).unwrap().contains(&5));
    assert_eq!(n_of_l(pp(7), 5).unwrap(), 2);
}

#[test]
fn nine_has_no_small_two_levels() {
    let prof = TqProfile::new(pp(9));
    assert!(!prof.a_lm_infinite(2, 1).unwrap());
    assert!(!prof.a_lm_infinite(2, 2).unwrap());
    assert!(prof.a_lm_infinite(2, 3).unwrap());
    assert_eq!(n_of_2(pp(9)).unwrap(), (3, false));
}

#[test]
fn listed_fields_have_trivial_class_group() {
    let corpus = trivial_class_group_corpus();
    assert_eq!(corpus.len(), 8);
    for entry in corpus {
        assert_eq!(
            class_number(&entry.curve).unwrap(),
            BigUint::from(entry.expected_h),
            "{:?}",
            entry.label
        );
    }
}

#[test]
fn two_rank_divides_over_f3() {
    for m in [1, 2, 3] {
        let fam = two_rank_family(pp(3), m).unwrap();
        assert!(fam.check, "m = {m}: h = {}", fam.class_number);
    }
}

#[test]
fn shifted_hits_give_the_same_extension() {
    let a = FiniteAbelianGroup::cyclic(2).unwrap();
    let spec = TruncatedExtensionSpec::new(2, a, vec![2, 4, 8, 16]).unwrap();
    let alt = spec
        .with_assignment(vec![vec![0], vec![1], vec![0], vec![1]])
        .unwrap();
    let demo = uniqueness_demo(&spec, &alt).unwrap();
    assert!(demo.isomorphic);
    assert_eq!(
        construct_b(&alt).unwrap(),
        FiniteAbelianGroup::from_factors(vec![2, 4, 8, 32]).unwrap()
    );
}
