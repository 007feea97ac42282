use parwreath::{Transformation, UniformPartition};
use proptest::prelude::*;

fn map_of(k: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(0..k, k).prop_map(|v| Transformation::new(&v).unwrap())
}

fn triple() -> impl Strategy<Value = (Transformation, Transformation, Transformation)> {
    (1usize..=8).prop_flat_map(|k| (map_of(k), map_of(k), map_of(k)))
}

fn perm_of(k: usize) -> impl Strategy<Value = Transformation> {
    Just((0..k).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Transformation::new(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn right_action_law((f, g, _) in triple()) {
        let fg = f.compose(&g).unwrap();
        for p in 0..f.degree() {
            prop_assert_eq!(fg.apply(p), g.apply(f.apply(p)));
        }
    }

    #[test]
    fn kernel_classes_match_image_size((f, _, _) in triple()) {
        let distinct: std::collections::BTreeSet<u8> = f.images().iter().copied().collect();
        prop_assert_eq!(f.kernel().class_count(), distinct.len());
        prop_assert_eq!(f.image_size(), distinct.len());
        for p in 0..f.degree() {
            for q in 0..f.degree() {
                prop_assert_eq!(f.kernel().related(p, q), f.apply(p) == f.apply(q));
            }
        }
    }

    #[test]
    fn composite_is_permutation_iff_both_are((f, g, _) in triple()) {
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.is_permutation(), f.is_permutation() && g.is_permutation());
    }

    #[test]
    fn inverse_is_two_sided(f in (1usize..=8).prop_flat_map(perm_of)) {
        let inv = f.inverse().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn kernel_of_composite_contains_kernel_of_first((f, g, _) in triple()) {
        prop_assert!(f.kernel().is_contained_in(&f.compose(&g).unwrap().kernel()));
    }
}

#[test]
fn non_permutations_have_no_inverse() {
    assert!(Transformation::new(&[0, 0, 2]).unwrap().inverse().is_err());
}

#[test]
fn layout_bijection() {
    for n in 1..=8 {
        for m in 1..=8 {
            let p = UniformPartition::new(n, m).unwrap();
            let mut seen = vec![false; n * m];
            for z in 0..m {
                for y in 0..n {
                    let i = p.index(y, z);
                    assert_eq!(i, y + n * z);
                    assert_eq!(p.coords(i), (y, z));
                    assert_eq!(p.block_of(i), z);
                    assert!(!std::mem::replace(&mut seen[i], true));
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }
}
