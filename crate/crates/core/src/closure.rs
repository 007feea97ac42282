//! Breadth-first monoid closure `⟨U⟩`.
//!
//! Starting from the identity, the queue of enumerated elements is processed
//! in batches; every element of a batch is multiplied on the right by every
//! generator and new products are appended. Products of a large batch are
//! computed in parallel, but they are deduplicated sequentially in
//! (element, generator) order, so the enumeration order is exactly that of the
//! single-threaded BFS for any worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::parallel::Workers;
use crate::store::{hash_packed, ElementStore};
use crate::structures::GeneratorSet;
use crate::transform::{compose_into, is_permutation_packed, Transformation};

/// Products computed per batch; a batch holds this many divided by the
/// generator count elements, and at least one.
const BATCH_PRODUCTS: usize = 1 << 15;
/// Products per batch below which the parallel path is not worth it.
const PARALLEL_MIN_PRODUCTS: usize = 1 << 12;
const NO_PARENT: u32 = u32::MAX;

#[derive(Clone, Debug, Default)]
pub struct ClosureOptions {
    /// Abort once the closure would exceed this many elements.
    pub limit: Option<usize>,
    /// Record one BFS-shortest word per element.
    pub word_log: bool,
    /// `0` for the ambient rayon pool, `1` for sequential.
    pub threads: usize,
}

impl ClosureOptions {
    pub fn sequential() -> Self {
        Self {
            threads: 1,
            ..Self::default()
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_word_log(mut self) -> Self {
        self.word_log = true;
        self
    }
}

#[derive(Clone, Debug)]
pub enum ClosureOutcome {
    Complete(ClosureResult),
    /// The limit was hit; `partial` elements had been enumerated.
    Overflow {
        limit: usize,
        partial: usize,
    },
}

impl ClosureOutcome {
    pub fn complete(self) -> Result<ClosureResult> {
        match self {
            Self::Complete(c) => Ok(c),
            Self::Overflow { limit, partial } => Err(Error::LimitExceeded { limit, partial }),
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Self::Complete(_))
    }
}

/// The enumerated elements of a finitely generated transformation monoid.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    store: ElementStore,
    generators: GeneratorSet,
    /// `(parent, generator)` per element when the word log is enabled.
    parents: Option<Vec<(u32, u32)>>,
}

pub fn closure(generators: &GeneratorSet, options: &ClosureOptions) -> Result<ClosureOutcome> {
    let limit = match options.limit {
        Some(0) => return Err(Error::InvalidLimit(0)),
        Some(l) => l.min(u32::MAX as usize),
        None => u32::MAX as usize,
    };
    let d = generators.degree();
    let packed: Vec<u8> = generators
        .elements()
        .iter()
        .flat_map(|g| g.images().iter().copied())
        .collect();
    let gen_count = generators.len();

    let mut store = ElementStore::with_capacity(d, 1024);
    let mut parents = options.word_log.then(Vec::new);
    store.insert(Transformation::identity(d)?.images());
    if let Some(p) = parents.as_mut() {
        p.push((NO_PARENT, NO_PARENT));
    }

    let mut workers: Option<Workers> = None;
    let mut products: Vec<u8> = Vec::new();
    let mut hashes: Vec<u64> = Vec::new();
    let batch_len = (BATCH_PRODUCTS / gen_count.max(1)).max(1);
    let mut head = 0;
    while head < store.len() && gen_count > 0 {
        let end = store.len().min(head + batch_len);
        let count = (end - head) * gen_count;
        products.resize(count * d, 0);
        hashes.resize(count, 0);

        let batch = &store.arena()[head * d..end * d];
        let expand = |(e, (out, hs)): (&[u8], (&mut [u8], &mut [u64]))| {
            for (j, (o, h)) in out.chunks_exact_mut(d).zip(hs.iter_mut()).enumerate() {
                compose_into(e, &packed[j * d..(j + 1) * d], o);
                *h = hash_packed(o);
            }
        };
        let parallel = count >= PARALLEL_MIN_PRODUCTS && options.threads != 1;
        if parallel {
            let w = workers.get_or_insert_with(|| Workers::new(options.threads));
            w.install(|| {
                batch
                    .par_chunks_exact(d)
                    .zip(
                        products
                            .par_chunks_exact_mut(gen_count * d)
                            .zip(hashes.par_chunks_exact_mut(gen_count)),
                    )
                    .with_min_len(64)
                    .for_each(expand)
            });
        } else {
            batch
                .chunks_exact(d)
                .zip(
                    products
                        .chunks_exact_mut(gen_count * d)
                        .zip(hashes.chunks_exact_mut(gen_count)),
                )
                .for_each(expand);
        }

        for (i, (p, &h)) in products.chunks_exact(d).zip(&hashes).enumerate() {
            if store.find_hashed(p, h).is_some() {
                continue;
            }
            if store.len() >= limit {
                return Ok(ClosureOutcome::Overflow {
                    limit,
                    partial: store.len(),
                });
            }
            store.insert_hashed(p, h);
            if let Some(parents) = parents.as_mut() {
                let parent = head + i / gen_count;
                parents.push((parent as u32, (i % gen_count) as u32));
            }
        }
        head = end;
    }

    Ok(ClosureOutcome::Complete(ClosureResult {
        store,
        generators: generators.clone(),
        parents,
    }))
}

/// True iff `⟨U⟩` has exactly `target_order` elements. Stops as soon as the
/// enumeration passes `target_order`.
pub fn is_generating(
    generators: &GeneratorSet,
    target_order: usize,
    options: &ClosureOptions,
) -> Result<bool> {
    if target_order == 0 {
        return Err(Error::InvalidLimit(0));
    }
    let limit = options.limit.map_or(target_order, |l| l.min(target_order));
    let opts = ClosureOptions {
        limit: Some(limit),
        ..options.clone()
    };
    Ok(match closure(generators, &opts)? {
        ClosureOutcome::Complete(c) => c.order() == target_order,
        ClosureOutcome::Overflow { .. } if limit < target_order => {
            return Err(Error::LimitExceeded {
                limit,
                partial: limit,
            })
        }
        ClosureOutcome::Overflow { .. } => false,
    })
}

impl ClosureResult {
    pub fn degree(&self) -> usize {
        self.store.degree()
    }

    pub fn order(&self) -> usize {
        self.store.len()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// The `index`-th element in enumeration order. Index 0 is the identity.
    pub fn element(&self, index: usize) -> Transformation {
        Transformation::from_packed(self.store.get(index))
    }

    pub(crate) fn packed(&self, index: usize) -> &[u8] {
        self.store.get(index)
    }

    pub(crate) fn store(&self) -> &ElementStore {
        &self.store
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Transformation> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn index_of(&self, f: &Transformation) -> Option<usize> {
        if f.degree() != self.degree() {
            return None;
        }
        self.store.find(f.images()).map(|i| i as usize)
    }

    pub fn contains(&self, f: &Transformation) -> Result<bool> {
        if f.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: f.degree(),
            });
        }
        Ok(self.store.find(f.images()).is_some())
    }

    pub fn has_word_log(&self) -> bool {
        self.parents.is_some()
    }

    /// Generator indices whose product, left to right, is element `index`.
    pub fn word(&self, index: usize) -> Option<Vec<usize>> {
        let parents = self.parents.as_ref()?;
        let mut word = Vec::new();
        let mut i = index;
        while parents[i].0 != NO_PARENT {
            word.push(parents[i].1 as usize);
            i = parents[i].0 as usize;
        }
        word.reverse();
        Some(word)
    }

    /// Evaluates a word over this closure's generators.
    pub fn evaluate(&self, word: &[usize]) -> Result<Transformation> {
        let mut acc = Transformation::identity(self.degree())?;
        for &g in word {
            let gen = self
                .generators
                .elements()
                .get(g)
                .ok_or(Error::PointOutOfRange {
                    point: g,
                    degree: self.generator_count(),
                })?;
            acc = acc.compose(gen)?;
        }
        Ok(acc)
    }

    /// The group of units: the permutations among the elements. In a finite
    /// monoid of full transformations these are exactly the invertible ones.
    pub fn units(&self) -> GeneratorSet {
        let units = (0..self.order())
            .filter(|&i| is_permutation_packed(self.packed(i)))
            .map(|i| self.element(i));
        GeneratorSet::from_elements(self.degree(), units, "u").expect("degree already validated")
    }

    pub fn is_group(&self) -> bool {
        (0..self.order()).all(|i| is_permutation_packed(self.packed(i)))
    }

    /// All elements as a generator set labelled `e0, e1, ..`.
    pub fn to_generator_set(&self) -> GeneratorSet {
        GeneratorSet::from_elements(self.degree(), self.elements(), "e")
            .expect("degree already validated")
    }

    /// Elements sorted by image table, for order-independent comparison.
    pub fn sorted_elements(&self) -> Vec<Transformation> {
        let mut v: Vec<_> = self.elements().collect();
        v.sort_unstable();
        v
    }
}
