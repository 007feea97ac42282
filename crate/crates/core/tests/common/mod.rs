//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's membership or order code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use parwreath::{closure, explicit_generators, ClosureOptions, StructureKind, Transformation};

/// Every map `{0..k} -> {0..k}` as an image table, in lexicographic order.
pub fn all_maps(k: usize) -> Vec<Vec<usize>> {
    let total = k.pow(k as u32);
    (0..total)
        .map(|mut code| {
            let mut images = vec![0; k];
            for slot in images.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            images
        })
        .collect()
}

/// Every permutation of `{0..k}` as an image table.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    all_maps(k)
        .into_iter()
        .filter(|f| f.iter().collect::<BTreeSet<_>>().len() == k)
        .collect()
}

/// Membership read straight off the definitions, for blocks
/// `{n*z, .., n*z + n - 1}`.
pub fn member(images: &[usize], n: usize, m: usize, kind: StructureKind) -> bool {
    let block = |p: usize| p / n;
    let mut block_map = vec![0; m];
    for z in 0..m {
        let targets: BTreeSet<usize> = (0..n).map(|y| block(images[n * z + y])).collect();
        if targets.len() != 1 {
            return false;
        }
        block_map[z] = *targets.iter().next().unwrap();
    }
    let block_bijective = block_map.iter().collect::<BTreeSet<_>>().len() == m;
    let blockwise_injective = (0..m).all(|z| {
        (0..n)
            .map(|y| images[n * z + y])
            .collect::<BTreeSet<_>>()
            .len()
            == n
    });
    match kind {
        StructureKind::Txp => true,
        StructureKind::Sigma => block_bijective,
        StructureKind::Gamma => blockwise_injective,
        StructureKind::Sxp => block_bijective && blockwise_injective,
    }
}

/// `{f in T_{nm} : f belongs to the structure}`.
pub fn filter_set(n: usize, m: usize, kind: StructureKind) -> BTreeSet<Vec<u8>> {
    all_maps(n * m)
        .into_iter()
        .filter(|f| member(f, n, m, kind))
        .map(|f| f.into_iter().map(|p| p as u8).collect())
        .collect()
}

/// Closure of the explicit generators as a set of image tables.
pub fn closure_set(n: usize, m: usize, kind: StructureKind) -> BTreeSet<Vec<u8>> {
    let gens = explicit_generators(n, m, kind).unwrap();
    let c = closure(&gens, &ClosureOptions::default())
        .unwrap()
        .complete()
        .unwrap();
    c.elements().map(|f| f.images().to_vec()).collect()
}

pub fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

pub fn t(images: &[usize]) -> Transformation {
    Transformation::new(images).unwrap()
}
