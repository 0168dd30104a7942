use num_rational::Ratio;
use proptest::prelude::*;
use tope_committees::blocking::{
    brute_blockers, check_constraints, random_antichain, BlockingInstance, BlockingMethod, IeMethod, MobiusMethod,
};
use tope_committees::cross::{brute_blockers_cross, count_blockers_cross, random_signed_antichain, CrossInstance, CrossMethod};
use tope_committees::formulas::FormulaBudget;
use tope_committees::IndexSet;

const RATIOS: [(u64, u64); 4] = [(0, 1), (1, 3), (1, 2), (2, 3)];

#[test]
fn three_sets_of_three() {
    let mut seen = 0;
    for seed in 0..40 {
        let a = random_antichain(6, 3, 3..=3, seed).unwrap();
        let inst = BlockingInstance::new(6, a, Ratio::new(1, 3), 3).unwrap();
        let expected = brute_blockers(&inst).unwrap();
        for m in BlockingMethod::all().into_iter().filter(|m| m.applies(&inst)) {
            assert_eq!(m.count(&inst, &FormulaBudget::default()).unwrap(), expected, "{m}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn nerve_example() {
    let a: Vec<IndexSet> = [[0, 1], [1, 2], [0, 2]].iter().map(|p| p.iter().copied().collect()).collect();
    let inst = BlockingInstance::new(5, a, Ratio::new(1, 2), 3).unwrap();
    assert_eq!(
        BlockingMethod::Nerve.count(&inst, &FormulaBudget::default()).unwrap(),
        brute_blockers(&inst).unwrap()
    );
    assert!(check_constraints(&inst).satisfies_23);
}

#[test]
fn every_method_is_exercised() {
    let a: Vec<IndexSet> = [[0, 1, 2], [2, 3, 4]].iter().map(|p| p.iter().copied().collect()).collect();
    let inst = BlockingInstance::new(7, a, Ratio::new(1, 3), 3).unwrap();
    let methods: Vec<BlockingMethod> = BlockingMethod::all().into_iter().filter(|m| m.applies(&inst)).collect();
    assert_eq!(methods.len(), 1 + IeMethod::ALL.len() + MobiusMethod::ALL.len() + 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boolean_methods_match_brute_force(n in 3usize..=8, members in 1usize..=4, seed in any::<u64>(), ri in 0..4usize) {
        let a = random_antichain(n, members, 1..=n - 1, seed).unwrap();
        let (p, q) = RATIOS[ri];
        for k in 1..=n {
            let inst = BlockingInstance::new(n, a.clone(), Ratio::new(p, q), k).unwrap();
            let status = check_constraints(&inst);
            prop_assert!(!status.satisfies_22 || status.satisfies_23);
            let expected = brute_blockers(&inst).unwrap();
            for m in BlockingMethod::all().into_iter().filter(|m| m.applies(&inst)) {
                prop_assert_eq!(m.count(&inst, &FormulaBudget::default()).unwrap(), expected, "{} k={}", m, k);
            }
        }
    }

    #[test]
    fn cross_methods_match_brute_force(m in 1usize..=5, members in 1usize..=4, seed in any::<u64>(), ri in 0..4usize) {
        let a = random_signed_antichain(m, members, 1..=m, seed).unwrap();
        let (p, q) = RATIOS[ri];
        for k in 1..=m {
            let inst = CrossInstance::new(m, a.clone(), Ratio::new(p, q), k).unwrap();
            if !inst.satisfies_rank_bound() {
                continue;
            }
            let expected = brute_blockers_cross(&inst).unwrap();
            for method in CrossMethod::ALL {
                prop_assert_eq!(count_blockers_cross(&inst, method).unwrap(), expected, "{:?} k={}", method, k);
            }
        }
    }
}
