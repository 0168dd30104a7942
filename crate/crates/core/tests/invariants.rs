mod common;

use proptest::prelude::*;
use tope_committees::instances::{paper_example, random_realizable, triangle};
use tope_committees::IndexSet;

const SHAPES: [(usize, usize); 6] = [(3, 2), (4, 2), (5, 2), (6, 2), (4, 3), (5, 3)];

fn family(t: usize) -> impl Strategy<Value = Vec<IndexSet>> {
    prop::collection::vec(1u128..(1u128 << t), 1..7).prop_map(|v| v.into_iter().map(IndexSet).collect())
}

fn within(t: usize, f: &[IndexSet]) -> Vec<IndexSet> {
    f.iter().map(|&s| s & IndexSet::full(t)).filter(|s| !s.is_empty()).collect()
}

fn check<T>(r: Result<T, String>) -> Result<T, TestCaseError> {
    r.map_err(TestCaseError::fail)
}

#[test]
fn builtin_kappa_symmetry() {
    common::kappa_symmetry_and_n_star(&triangle()).unwrap();
    common::kappa_symmetry_and_n_star(&paper_example()).unwrap();
}

#[test]
fn builtin_layer_counts() {
    common::layer_count_methods_agree(&triangle()).unwrap();
    common::layer_count_methods_agree(&paper_example()).unwrap();
}

#[test]
fn crosspolytope_layers() {
    for m in 1..=7 {
        for k in 0..=m {
            common::cross_layer_size(m, k).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kappa_symmetric_with_n_star_identity(shape in 0..SHAPES.len(), seed in any::<u64>()) {
        let (t, d) = SHAPES[shape];
        let om = random_realizable(t, d, seed);
        prop_assume!(om.is_ok());
        check(common::kappa_symmetry_and_n_star(&om.unwrap()))?;
    }

    #[test]
    fn layer_counts_agree(shape in 0..SHAPES.len(), seed in any::<u64>()) {
        let (t, d) = SHAPES[shape];
        let om = random_realizable(t, d, seed);
        prop_assume!(om.is_ok());
        check(common::layer_count_methods_agree(&om.unwrap()))?;
    }

    #[test]
    fn conv_is_a_closure(shape in 0..SHAPES.len(), seed in any::<u64>(), a in any::<u8>(), b in any::<u8>()) {
        let (t, d) = SHAPES[shape];
        let om = random_realizable(t, d, seed);
        prop_assume!(om.is_ok());
        check(common::conv_closure_laws(&om.unwrap(), IndexSet(a as u128), IndexSet(b as u128)))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn blocker_is_an_involution(f in family(8)) {
        check(common::blocker_involution(&f))?;
    }

    #[test]
    fn alexander_sign_law(t in 2usize..=7, seed in any::<u64>()) {
        let f: Vec<IndexSet> = (0..5).map(|i| IndexSet((seed.rotate_left(i * 13) as u128) & ((1 << t) - 1))).collect();
        check(common::alexander_sign_law(t, &f))?;
    }

    #[test]
    fn missing_vertex_gives_cone(t in 2usize..=7, f in family(6)) {
        check(common::cone_vanishes(t, &within(t, &f)))?;
    }

    #[test]
    fn crosscut_equality(t in 1usize..=6, f in family(6)) {
        check(common::crosscut_equality(t, &within(t, &f)))?;
    }

    #[test]
    fn grouping_matches_mobius(f in prop::collection::vec(1u128..256, 1..=10)) {
        let g: Vec<IndexSet> = f.into_iter().map(IndexSet).collect();
        check(common::grouping_identity(8, &g))?;
    }
}
