use mscs_core::random::{random_theorem1, random_theorem2, random_theorem3, seeded};
use mscs_core::{
    block_factor, extension_factor, kronecker_compose, pmepr_set, theorem1_set, theorem2_set,
    theorem3_set, verify_gcs, verify_mscs, verify_type2_zcs, BlockParams, Claim, PhaseSequence,
    Theorem2Params,
};
use proptest::prelude::*;

fn chain(factors: &[PhaseSequence]) -> PhaseSequence {
    // factors[0] is the innermost (least significant) block
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = kronecker_compose(f, &acc).unwrap();
    }
    acc
}

#[test]
fn remark_gcs_of_length_six() {
    let params = Theorem2Params {
        modulus: 6,
        blocks: vec![BlockParams::plain(2, 1, 1), BlockParams::plain(3, 1, 1)],
    };
    let set = theorem2_set(&params).unwrap();
    assert_eq!((set.size(), set.length()), (6, 6));
    assert!(set.claims().contains(&Claim::Gcs));
    let r = verify_gcs(&set).unwrap();
    assert!(r.passed);
    assert_eq!(r.shifts.len(), 5);
    assert!(pmepr_set(&set, 1, 64).unwrap().bound_satisfied);
}

#[test]
fn two_prime_mscs_with_even_shift() {
    let params = Theorem2Params {
        modulus: 6,
        blocks: vec![BlockParams::plain(2, 2, 2), BlockParams::plain(3, 1, 1)],
    };
    let set = theorem2_set(&params).unwrap();
    assert_eq!((set.size(), set.length()), (6, 12));
    assert_eq!(set.claims(), &[Claim::Mscs { shift: 2 }]);
    let r = verify_mscs(&set, 2).unwrap();
    assert!(r.passed);
    assert_eq!(r.shifts.iter().map(|s| s.shift).collect::<Vec<_>>(), vec![2, 4, 6, 8, 10]);
}

#[test]
fn extension_by_three() {
    let params = mscs_core::Theorem3Params {
        modulus: 6,
        blocks: vec![BlockParams::plain(2, 1, 1)],
        extension: mscs_core::ExtensionParams { prime: 3, linear: 0, constant: 0 },
    };
    let set = theorem3_set(&params).unwrap();
    assert_eq!((set.size(), set.length()), (2, 6));
    let r = verify_mscs(&set, 3).unwrap();
    assert!(r.passed);
    assert_eq!(r.shifts.iter().map(|s| s.shift).collect::<Vec<_>>(), vec![3]);
}

#[test]
fn golay_pair_of_length_four() {
    let params = mscs_core::Theorem1Params { modulus: 2, block: BlockParams::plain(2, 2, 1) };
    let set = theorem1_set(&params).unwrap();
    assert_eq!(set.sequences()[0].values(), &[0, 0, 0, 1]);
    assert_eq!(set.sequences()[1].values(), &[0, 1, 0, 0]);
    assert!(verify_mscs(&set, 1).unwrap().passed);
}

#[test]
fn degenerate_start_equals_vars() {
    // no quadratic chain at all: only linear, head and gamma terms
    let mut rng = seeded(11);
    for (p, m) in [(2, 3), (3, 2), (5, 2)] {
        let params = random_theorem1(&mut rng, p, m, m, 2 * p);
        let set = theorem1_set(&params).unwrap();
        let shift = (p as usize).pow(m - 1);
        assert!(verify_mscs(&set, shift).unwrap().passed);
        assert!(verify_type2_zcs(&set, set.length() - shift).unwrap().passed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorem2_is_a_kronecker_chain(seed in any::<u64>(), m1 in 1u32..=3, m2 in 1u32..=2, m3 in 1u32..=2) {
        let mut rng = seeded(seed);
        let shapes = [(2, m1, 1 + (seed % m1 as u64) as u32), (3, m2, 1), (5, m3, m3)];
        let params = random_theorem2(&mut rng, 30, &shapes);
        let set = theorem2_set(&params).unwrap();
        let mut n = 0;
        for g3 in 0..5 {
            for g2 in 0..3 {
                for g1 in 0..2 {
                    let factors = [
                        block_factor(30, &params.blocks[0], g1).unwrap(),
                        block_factor(30, &params.blocks[1], g2).unwrap(),
                        block_factor(30, &params.blocks[2], g3).unwrap(),
                    ];
                    prop_assert_eq!(&set.sequences()[n], &chain(&factors));
                    n += 1;
                }
            }
        }
    }

    #[test]
    fn theorem3_is_extension_times_base(seed in any::<u64>(), m1 in 1u32..=3, m2 in 1u32..=2) {
        let mut rng = seeded(seed);
        let params = random_theorem3(&mut rng, 30, &[(3, m1), (5, m2)], 2);
        let set = theorem3_set(&params).unwrap();
        let base = theorem2_set(&Theorem2Params { modulus: 30, blocks: params.blocks.clone() }).unwrap();
        let ext = extension_factor(30, &params.extension).unwrap();
        for (b, a) in set.sequences().iter().zip(base.sequences()) {
            prop_assert_eq!(b, &kronecker_compose(&ext, a).unwrap());
        }
    }

    #[test]
    fn theorem1_sets_verify(seed in any::<u64>(), pick in 0usize..3, m in 1u32..=4, s_frac in 0.0f64..1.0, lam in 0usize..4) {
        let p = [2u32, 3, 5][pick];
        let m = if p == 5 { m.min(4) } else { m };
        let s = 1 + ((s_frac * m as f64) as u32).min(m - 1);
        let modulus = [p, 2 * p, 3 * p, p * p][lam];
        let params = random_theorem1(&mut seeded(seed), p, m, s, modulus);
        let set = theorem1_set(&params).unwrap();
        let shift = (p as usize).pow(s - 1);
        prop_assert_eq!((set.size(), set.length()), (p as usize, (p as usize).pow(m)));
        let mscs = verify_mscs(&set, shift).unwrap();
        prop_assert!(mscs.passed && mscs.inconsistent_shifts.is_empty());
        prop_assert!(verify_type2_zcs(&set, set.length() - shift).unwrap().passed);
        let bound = pmepr_set(&set, shift, 8).unwrap();
        prop_assert!(bound.bound_satisfied, "{} > {}", bound.set_pmepr, bound.bound);
    }

    #[test]
    fn product_sets_verify_and_respect_bound(seed in any::<u64>(), m1 in 1u32..=3, m2 in 1u32..=2, s1 in 1u32..=3) {
        let s1 = s1.min(m1);
        let mut rng = seeded(seed);
        let params = random_theorem2(&mut rng, 12, &[(2, m1, s1), (3, m2, 1)]);
        let set = theorem2_set(&params).unwrap();
        let shift = 2usize.pow(s1 - 1);
        prop_assert!(verify_mscs(&set, shift).unwrap().passed);
        if s1 == 1 {
            prop_assert!(verify_gcs(&set).unwrap().passed);
        }
        prop_assert!(pmepr_set(&set, shift, 8).unwrap().bound_satisfied);
        prop_assert!(mscs_core::energy_identity_check(&set, shift, 4).unwrap() < 1e-9);
    }
}
