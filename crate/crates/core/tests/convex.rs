use proptest::prelude::*;
use tope_committees::alternating::LabelSystem;
use tope_committees::convex::{
    conv, convex_sets, extreme_points, gamma, hull_alternating_sum, is_free, positive_cell,
};
use tope_committees::instances::{paper_example, random_realizable, triangle};
use tope_committees::sets::sign;
use tope_committees::{IndexSet, OrientedMatroid};

const SHAPES: [(usize, usize); 5] = [(3, 2), (4, 2), (5, 2), (6, 2), (5, 3)];

fn semilattice_laws(om: &OrientedMatroid) {
    let lat = convex_sets(om).unwrap();
    let all: std::collections::HashSet<IndexSet> = lat.sets.iter().map(|s| s.elements).collect();
    assert_eq!(lat.sets[0].elements, IndexSet::EMPTY);
    for e in 0..om.ground_size() {
        assert!(all.contains(&IndexSet::singleton(e)));
    }
    for a in &lat.sets {
        assert_eq!(conv(om, a.elements), a.elements);
        assert_eq!(a.cell, positive_cell(om, a.elements));
        for b in &lat.sets {
            assert!(all.contains(&(a.elements & b.elements)));
        }
    }
}

/// `Σ_{E' : conv(E') = A} (−1)^{|E'|}` is `(−1)^{|A|}` on free sets, else 0.
/// Only sets with a nonempty cell take part: when some subset has no tope on
/// its positive side its hull is the whole ground set, and that set's term
/// carries `C(0, j) = 0` in the layer count anyway.
fn hull_grouping(om: &OrientedMatroid) {
    let lat = convex_sets(om).unwrap();
    for a in lat.sets.iter().filter(|a| !a.elements.is_empty()) {
        if a.cell.is_empty() {
            assert_eq!(a.elements, IndexSet::full(om.ground_size()));
            continue;
        }
        let expected = if a.free { sign(a.elements.len()) } else { 0 };
        assert_eq!(hull_alternating_sum(om, a.elements).unwrap(), expected, "{:?}", a.elements);
    }
}

#[test]
fn builtin_instances() {
    for om in [triangle(), paper_example()] {
        semilattice_laws(&om);
        hull_grouping(&om);
    }
    let c3 = triangle();
    assert_eq!(convex_sets(&c3).unwrap().len(), 8);
    let ab: IndexSet = [0, 1].into_iter().collect();
    assert_eq!(extreme_points(&c3, ab).unwrap(), ab);
    assert!(is_free(&c3, IndexSet::full(3)).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closure_system_and_grouping(shape in 0..SHAPES.len(), seed in any::<u64>()) {
        let (t, d) = SHAPES[shape];
        let om = random_realizable(t, d, seed);
        prop_assume!(om.is_ok());
        let om = om.unwrap();
        semilattice_laws(&om);
        hull_grouping(&om);
    }

    #[test]
    fn cell_of_hull_is_cell(shape in 0..SHAPES.len(), seed in any::<u64>(), a in any::<u8>()) {
        let (t, d) = SHAPES[shape];
        let om = random_realizable(t, d, seed);
        prop_assume!(om.is_ok());
        let om = om.unwrap();
        let a = IndexSet(a as u128) & IndexSet::full(t);
        prop_assert_eq!(positive_cell(&om, conv(&om, a)), positive_cell(&om, a));
    }

    #[test]
    fn gamma_is_the_support_label(shape in 0..SHAPES.len(), seed in any::<u64>(), d in any::<u64>()) {
        let (t, dim) = SHAPES[shape];
        let om = random_realizable(t, dim, seed);
        prop_assume!(om.is_ok());
        let om = om.unwrap();
        let d = IndexSet(d as u128) & om.all_topes();
        prop_assume!(!d.is_empty());
        let labels = LabelSystem::new(om.num_topes(), om.positive_halfspaces().to_vec(), 1).unwrap();
        let g = gamma(&om, d);
        prop_assert_eq!(g, labels.label(d));
        prop_assert_eq!(conv(&om, g), g);
        prop_assert!(d.is_subset(positive_cell(&om, g)));
    }
}
