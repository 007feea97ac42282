mod common;

use std::collections::{BTreeSet, HashSet};

use common::{all_maps, all_permutations, t};
use parwreath::wreath::theta;
use parwreath::{membership, StructureKind, Transformation, UniformPartition, WreathElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_map(rng: &mut impl Rng, k: usize) -> Transformation {
    let images: Vec<usize> = (0..k).map(|_| rng.gen_range(0..k)).collect();
    t(&images)
}

fn random_element(rng: &mut impl Rng, n: usize, m: usize) -> WreathElement {
    let bottoms = (0..m).map(|_| random_map(rng, n)).collect();
    WreathElement::new(bottoms, random_map(rng, m)).unwrap()
}

/// Every element of `S ≀ R`, where `S` and `R` are given by their image tables.
fn wreath_elements(bottom: &[Vec<usize>], top: &[Vec<usize>], m: usize) -> Vec<WreathElement> {
    let mut out = Vec::new();
    let mut choice = vec![0usize; m];
    loop {
        for r in top {
            let bottoms = choice.iter().map(|&c| t(&bottom[c])).collect();
            out.push(WreathElement::new(bottoms, t(r)).unwrap());
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            choice[i] += 1;
            if choice[i] < bottom.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn flatten_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 10_000 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let a = random_element(&mut rng, n, m);
        let b = random_element(&mut rng, n, m);
        let product = a.multiply(&b).unwrap();
        assert_eq!(
            product.flatten(),
            a.flatten().compose(&b.flatten()).unwrap()
        );
        checked += 1;
    }
}

#[test]
fn act_agrees_with_flatten() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let w = random_element(&mut rng, n, m);
        let f = w.flatten();
        for z in 0..m {
            for y in 0..n {
                let (y2, z2) = w.act(y, z).unwrap();
                assert_eq!(f.apply(y + n * z), y2 + n * z2);
            }
        }
    }
}

#[test]
fn round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let w = random_element(&mut rng, n, m);
        let partition = UniformPartition::new(n, m).unwrap();
        let f = w.flatten();
        assert_eq!(WreathElement::unflatten(&f, &partition).unwrap(), w);
        assert_eq!(
            WreathElement::unflatten(&f, &partition).unwrap().flatten(),
            f
        );
        let text = w.to_string();
        assert_eq!(text.parse::<WreathElement>().unwrap(), w);
    }
}

#[test]
fn unflatten_rejects_maps_splitting_a_block() {
    let partition = UniformPartition::new(2, 2).unwrap();
    assert!(WreathElement::unflatten(&t(&[0, 2, 2, 3]), &partition).is_err());
}

#[test]
fn flatten_is_injective_at_two_two() {
    let maps = all_maps(2);
    let all = wreath_elements(&maps, &maps, 2);
    assert_eq!(all.len(), 4 * 4 * 4);
    let images: HashSet<_> = all.iter().map(WreathElement::flatten).collect();
    assert_eq!(images.len(), all.len());
}

#[test]
fn conjugation_identity_exhaustive_at_two_two() {
    let maps = all_maps(2);
    let all = wreath_elements(&maps, &maps, 2);
    let id2 = Transformation::identity(2).unwrap();
    for r in all_permutations(2) {
        let r = t(&r);
        let r_bar = WreathElement::from_top(2, r.clone()).unwrap();
        let r_inv_bar = WreathElement::from_top(2, r.inverse().unwrap()).unwrap();
        for s in all.iter().filter(|s| s.top() == &id2) {
            let c = WreathElement::conjugate_by_top(&r, s).unwrap();
            // r s r^{-1} = (rθ)s
            let lhs = r_bar.multiply(s).unwrap().multiply(&r_inv_bar).unwrap();
            assert_eq!(lhs, c);
            let expected =
                WreathElement::new(theta(&r, s.bottoms()).unwrap(), id2.clone()).unwrap();
            assert_eq!(c, expected);
            assert_eq!(r_bar.multiply(s).unwrap(), c.multiply(&r_bar).unwrap());
        }
    }
}

#[test]
fn structures_are_the_flattened_wreath_products() {
    for n in 1..=3 {
        for m in 1..=3 {
            if n * m > 6 {
                continue;
            }
            let partition = UniformPartition::new(n, m).unwrap();
            let (tn, sn) = (all_maps(n), all_permutations(n));
            let (tm, sm) = (all_maps(m), all_permutations(m));
            let cases = [
                (StructureKind::Txp, &tn, &tm),
                (StructureKind::Sigma, &tn, &sm),
                (StructureKind::Gamma, &sn, &tm),
                (StructureKind::Sxp, &sn, &sm),
            ];
            for (kind, bottom, top) in cases {
                let flattened: BTreeSet<Transformation> = wreath_elements(bottom, top, m)
                    .iter()
                    .map(WreathElement::flatten)
                    .collect();
                let filtered: BTreeSet<Transformation> = all_maps(n * m)
                    .iter()
                    .map(|f| t(f))
                    .filter(|f| membership(f, &partition, kind).unwrap())
                    .collect();
                assert_eq!(flattened, filtered, "{kind} at n={n}, m={m}");
            }
        }
    }
}
