//! Rank and relative rank by exhaustive subset search.
//!
//! Subsets are tried by increasing size, so the first generating subset found
//! is minimal. Within a size, candidates are drawn from a pool ordered by image
//! size (largest first), then by image table, and enumerated in lexicographic
//! order of pool positions. The search is split into fixed-size chunks of that
//! order; the witness is always the lexicographically least generating subset,
//! whatever the worker count.
//!
//! Every exhausted size contributes its full candidate count to the
//! certificate. Sound reductions shrink the search without changing its
//! answer:
//!
//! * unit-group pruning: a generating set must contain generators of the
//!   group of units, since a product of transformations is a permutation only
//!   if every factor is;
//! * conjugacy: `gUg⁻¹` generates iff `U` does, so only subsets containing a
//!   conjugacy-class representative are tried;
//! * relative rank: with `H` the units of `⟨U⟩`, an extra element `v` may be
//!   swapped for any `h v h'` (`h, h' ∈ H`), and elements of `⟨U⟩` are useless,
//!   so the pool is one representative per `H`-double coset outside `⟨U⟩`.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::closure::{closure, ClosureOptions, ClosureOutcome, ClosureResult};
use crate::combinations::{advance, binomial, unrank};
use crate::error::{Error, Result};
use crate::indexed::{Bfs, IndexedMonoid};
use crate::parallel::Workers;
use crate::structures::{explicit_generators, GeneratorSet, StructureKind};
use crate::transform::{is_permutation_packed, Transformation};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_CLOSURE_LIMIT: usize = 2_000_000;
const CHUNK: u128 = 256;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// `0` for the ambient rayon pool, `1` for sequential.
    pub threads: usize,
    /// Maximum number of candidate closures, checked per subset size before
    /// that size is started.
    pub budget: u64,
    /// Element cap for the closures that build the searched monoids.
    pub closure_limit: Option<usize>,
    /// Skip candidates whose units do not generate the group of units.
    pub lemma1_pruning: bool,
    /// Only try subsets containing a conjugacy-class representative.
    pub conjugacy_reduction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            threads: 0,
            budget: DEFAULT_BUDGET,
            closure_limit: Some(DEFAULT_CLOSURE_LIMIT),
            lemma1_pruning: false,
            conjugacy_reduction: false,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        Self {
            threads: 1,
            ..Self::default()
        }
    }

    fn closure_options(&self) -> ClosureOptions {
        ClosureOptions {
            limit: self.closure_limit,
            word_log: false,
            threads: self.threads,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Rank,
    RelativeRank,
    GroupRank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Lemma1Decomposed,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rank => "RANK",
            Self::RelativeRank => "RELATIVE_RANK",
            Self::GroupRank => "GROUP_RANK",
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exhaustive => "EXHAUSTIVE",
            Self::Lemma1Decomposed => "LEMMA1_DECOMPOSED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankValue {
    Exact(usize),
    /// No generating subset of size at most this exists.
    Exceeds(usize),
}

impl RankValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            Self::Exact(v) => Some(v),
            Self::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(v) => write!(f, "{v}"),
            Self::Exceeds(k) => write!(f, ">{k}"),
        }
    }
}

/// Evidence that no smaller generating set exists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub search_space: String,
    /// Candidates of every exhausted size, all of which failed.
    pub rejected_count: u64,
    /// How many of the rejected candidates were discarded without a closure.
    pub pruned_count: u64,
    /// Candidate count per exhausted size, starting at size 0.
    pub per_size: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub structure: Option<(StructureKind, usize, usize)>,
    pub quantity: Quantity,
    pub value: RankValue,
    pub witness: GeneratorSet,
    /// Elements always included in the closure (the `U` of a relative rank).
    pub fixed: GeneratorSet,
    pub certificate: Certificate,
    pub elapsed: Duration,
    pub method: Method,
}

impl RankReport {
    pub fn with_structure(mut self, kind: StructureKind, n: usize, m: usize) -> Self {
        self.structure = Some((kind, n, m));
        self
    }

    /// Re-closes `witness ∪ fixed` from scratch and compares with `target_order`.
    pub fn witness_generates(&self, target_order: usize) -> Result<bool> {
        let mut all = self.fixed.clone();
        all.extend_from(&self.witness)?;
        crate::closure::is_generating(&all, target_order, &ClosureOptions::sequential())
    }
}

struct SearchOutcome {
    value: RankValue,
    witness: Vec<u32>,
    certificate: Certificate,
}

type Prune<'a> = Box<dyn Fn(&[u32], &mut Bfs) -> bool + Sync + 'a>;

struct Search<'a> {
    monoid: &'a IndexedMonoid<'a>,
    fixed: Vec<u32>,
    pool: Vec<u32>,
    target: usize,
    prune: Option<Prune<'a>>,
    space: String,
}

struct ChunkResult {
    found: Option<Vec<u32>>,
    pruned: u64,
}

impl Search<'_> {
    fn run(
        &self,
        max_k: usize,
        options: &SearchOptions,
        workers: &Workers,
    ) -> Result<SearchOutcome> {
        let n = self.pool.len();
        let mut certificate = Certificate::default();
        let mut used: u64 = 0;
        for k in 0..=max_k {
            certificate.search_space = match k {
                0 => format!("nothing exhausted; {} ({n} candidates)", self.space),
                _ => format!(
                    "subsets of size 0..={} of {} ({n} candidates)",
                    k - 1,
                    self.space
                ),
            };
            let total = binomial(n, k);
            if k > 0 && (total > u128::from(options.budget) || used + total as u64 > options.budget)
            {
                return Err(Error::BudgetExceeded {
                    budget: options.budget,
                    size: k,
                    partial: Box::new(certificate),
                });
            }
            let chunks = total.div_ceil(CHUNK) as usize;
            let best = AtomicUsize::new(usize::MAX);
            let process =
                |bfs: &mut Bfs, chunk: usize| self.process_chunk(bfs, chunk, k, total, &best);
            let mut results: Vec<ChunkResult> = if workers.is_sequential() || chunks <= 1 {
                let mut bfs = self.monoid.bfs();
                let mut out = Vec::new();
                for c in 0..chunks {
                    let r = process(&mut bfs, c);
                    let done = r.found.is_some();
                    out.push(r);
                    if done {
                        break;
                    }
                }
                out
            } else {
                workers.install(|| {
                    (0..chunks)
                        .into_par_iter()
                        .map_init(|| self.monoid.bfs(), |bfs, c| process(bfs, c))
                        .collect()
                })
            };
            if let Some(pos) = results.iter().position(|r| r.found.is_some()) {
                return Ok(SearchOutcome {
                    value: RankValue::Exact(k),
                    witness: results.swap_remove(pos).found.unwrap_or_default(),
                    certificate,
                });
            }
            // Nothing found, so no chunk was skipped and the counts are exact.
            let pruned: u64 = results.iter().map(|r| r.pruned).sum();
            used += total as u64;
            certificate.rejected_count += total as u64;
            certificate.pruned_count += pruned;
            certificate.per_size.push(total as u64);
        }
        certificate.search_space = format!(
            "subsets of size 0..={max_k} of {} ({n} candidates)",
            self.space
        );
        Ok(SearchOutcome {
            value: RankValue::Exceeds(max_k),
            witness: Vec::new(),
            certificate,
        })
    }

    fn process_chunk(
        &self,
        bfs: &mut Bfs,
        chunk: usize,
        k: usize,
        total: u128,
        best: &AtomicUsize,
    ) -> ChunkResult {
        let mut result = ChunkResult {
            found: None,
            pruned: 0,
        };
        if best.load(Ordering::Relaxed) < chunk {
            return result;
        }
        let (start, end) = chunk_bounds(chunk, total);
        let n = self.pool.len();
        let mut subset = unrank(n, k, start).expect("rank in range");
        let mut gens = Vec::with_capacity(self.fixed.len() + k);
        for r in start..end {
            if r > start {
                advance(&mut subset, n);
            }
            gens.clear();
            gens.extend_from_slice(&self.fixed);
            gens.extend(subset.iter().map(|&i| self.pool[i]));
            let chosen = &gens[self.fixed.len()..];
            if let Some(prune) = &self.prune {
                if prune(chosen, bfs) {
                    result.pruned += 1;
                    continue;
                }
            }
            if self.monoid.generated(&gens, self.target, bfs) >= self.target {
                best.fetch_min(chunk, Ordering::Relaxed);
                result.found = Some(chosen.to_vec());
                return result;
            }
        }
        result
    }
}

fn chunk_bounds(chunk: usize, total: u128) -> (u128, u128) {
    let start = chunk as u128 * CHUNK;
    (start, (start + CHUNK).min(total))
}

/// Pool positions ordered by image size (descending), then image table.
fn heuristic_order(s: &ClosureResult, indices: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut keyed: Vec<(usize, &[u8], u32)> = indices
        .map(|i| {
            let f = s.packed(i as usize);
            (image_size(f), f, i)
        })
        .collect();
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    keyed.into_iter().map(|(_, _, i)| i).collect()
}

fn image_size(images: &[u8]) -> usize {
    let mut seen = [false; 256];
    images
        .iter()
        .filter(|&&q| !std::mem::replace(&mut seen[q as usize], true))
        .count()
}

fn unit_indices(s: &ClosureResult) -> Vec<u32> {
    (0..s.order() as u32)
        .filter(|&i| is_permutation_packed(s.packed(i as usize)))
        .collect()
}

fn to_generator_set(s: &ClosureResult, indices: &[u32], prefix: &str) -> GeneratorSet {
    GeneratorSet::from_elements(
        s.degree(),
        indices.iter().map(|&i| s.element(i as usize)),
        prefix,
    )
    .expect("elements share the closure's degree")
}

fn inverse_packed(images: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; images.len()];
    for (p, &q) in images.iter().enumerate() {
        inv[q as usize] = p as u8;
    }
    inv
}

/// Smallest `k <= max_k` such that some `k` elements of `s` generate `s`.
pub fn rank_exhaustive(
    s: &ClosureResult,
    max_k: usize,
    options: &SearchOptions,
) -> Result<RankReport> {
    let started = Instant::now();
    let workers = Workers::new(options.threads);
    let monoid = IndexedMonoid::new(s);
    let pool = heuristic_order(s, 0..s.order() as u32);

    let units = unit_indices(s);
    let mut bfs = monoid.bfs();
    let unit_gens = monoid.reduce_generators(&units, &mut bfs);
    let group_order = units.len();

    let is_unit: Vec<bool> = {
        let mut v = vec![false; s.order()];
        for &u in &units {
            v[u as usize] = true;
        }
        v
    };
    let is_rep: Option<Vec<bool>> = options.conjugacy_reduction.then(|| {
        let maps: Vec<(Vec<u8>, Vec<u8>)> = unit_gens
            .iter()
            .map(|&h| {
                let h = s.packed(h as usize);
                (inverse_packed(h), h.to_vec())
            })
            .collect();
        monoid.orbit_representatives(&maps, &pool)
    });

    let mut notes = Vec::new();
    if options.lemma1_pruning {
        notes.push("unit-group pruning");
    }
    if options.conjugacy_reduction {
        notes.push("conjugacy reduction");
    }
    let lemma1 = options.lemma1_pruning;
    let monoid_ref = &monoid;
    let prune: Option<Prune> = (lemma1 || is_rep.is_some()).then(|| {
        let is_unit = is_unit.clone();
        Box::new(move |chosen: &[u32], bfs: &mut Bfs| {
            if let Some(reps) = &is_rep {
                if !chosen.is_empty() && !chosen.iter().any(|&e| reps[e as usize]) {
                    return true;
                }
            }
            if lemma1 {
                let unit_part: Vec<u32> = chosen
                    .iter()
                    .copied()
                    .filter(|&e| is_unit[e as usize])
                    .collect();
                if monoid_ref.generated(&unit_part, group_order, bfs) < group_order {
                    return true;
                }
            }
            false
        }) as Prune
    });

    let mut space = format!("the {} elements", s.order());
    if !notes.is_empty() {
        space = format!("{space} with {}", notes.join(" and "));
    }
    let search = Search {
        monoid: &monoid,
        fixed: Vec::new(),
        pool,
        target: s.order(),
        prune,
        space,
    };
    let outcome = search.run(max_k, options, &workers)?;
    Ok(RankReport {
        structure: None,
        quantity: if s.is_group() {
            Quantity::GroupRank
        } else {
            Quantity::Rank
        },
        value: outcome.value,
        witness: to_generator_set(s, &outcome.witness, "g"),
        fixed: GeneratorSet::new(s.degree())?,
        certificate: outcome.certificate,
        elapsed: started.elapsed(),
        method: Method::Exhaustive,
    })
}

fn indices_in(s: &ClosureResult, u: &GeneratorSet) -> Result<Vec<u32>> {
    if u.degree() != s.degree() {
        return Err(Error::DegreeMismatch {
            left: s.degree(),
            right: u.degree(),
        });
    }
    u.elements()
        .iter()
        .map(|f| s.index_of(f).map(|i| i as u32).ok_or(Error::NotAMember))
        .collect()
}

/// Smallest `k <= max_k` such that `k` elements of `s` together with `u`
/// generate `s`.
pub fn relative_rank(
    s: &ClosureResult,
    u: &GeneratorSet,
    max_k: usize,
    options: &SearchOptions,
) -> Result<RankReport> {
    let started = Instant::now();
    let workers = Workers::new(options.threads);
    let monoid = IndexedMonoid::new(s);
    let mut bfs = monoid.bfs();
    let fixed = monoid.reduce_generators(&indices_in(s, u)?, &mut bfs);

    monoid.generated(&fixed, usize::MAX, &mut bfs);
    let outside: Vec<u32> = (0..s.order() as u32).filter(|&i| !bfs.reached(i)).collect();
    let generated_by_u = s.order() - outside.len();
    let order = heuristic_order(s, outside.into_iter());

    // Units of ⟨U⟩ are generated by the permutations among U's generators.
    let maps: Vec<(Vec<u8>, Vec<u8>)> = fixed
        .iter()
        .map(|&h| s.packed(h as usize))
        .filter(|h| is_permutation_packed(h))
        .flat_map(|h| {
            let id: Vec<u8> = (0..h.len() as u8).collect();
            [(h.to_vec(), id.clone()), (id, h.to_vec())]
        })
        .collect();
    let is_rep = monoid.orbit_representatives(&maps, &order);
    let pool: Vec<u32> = order.into_iter().filter(|&e| is_rep[e as usize]).collect();

    let search = Search {
        monoid: &monoid,
        fixed: fixed.clone(),
        pool,
        target: s.order(),
        prune: None,
        space: format!(
            "double-coset representatives outside ⟨U⟩ (|S| = {}, |⟨U⟩| = {generated_by_u})",
            s.order()
        ),
    };
    let outcome = search.run(max_k, options, &workers)?;
    Ok(RankReport {
        structure: None,
        quantity: Quantity::RelativeRank,
        value: outcome.value,
        witness: to_generator_set(s, &outcome.witness, "v"),
        fixed: u.clone(),
        certificate: outcome.certificate,
        elapsed: started.elapsed(),
        method: Method::Exhaustive,
    })
}

/// Rank as group rank of the units plus rank relative to the units.
pub fn rank_via_lemma1(
    s: &ClosureResult,
    max_k: usize,
    options: &SearchOptions,
) -> Result<RankReport> {
    let started = Instant::now();
    let monoid = IndexedMonoid::new(s);
    let mut bfs = monoid.bfs();
    let units = unit_indices(s);
    let unit_gens = to_generator_set(s, &monoid.reduce_generators(&units, &mut bfs), "u");
    let group = match closure(&unit_gens, &options.closure_options())? {
        ClosureOutcome::Complete(g) => g,
        ClosureOutcome::Overflow { limit, partial } => {
            return Err(Error::LimitExceeded { limit, partial })
        }
    };
    debug_assert_eq!(group.order(), units.len());

    let group_options = SearchOptions {
        conjugacy_reduction: true,
        lemma1_pruning: false,
        ..options.clone()
    };
    let group_report = rank_exhaustive(&group, max_k, &group_options)?;
    let relative = relative_rank(s, &unit_gens, max_k, options)?;

    let value = match (group_report.value, relative.value) {
        (RankValue::Exact(a), RankValue::Exact(b)) => RankValue::Exact(a + b),
        (RankValue::Exceeds(_), _) | (_, RankValue::Exceeds(_)) => RankValue::Exceeds(max_k),
    };
    let mut witness = group_report.witness.clone();
    witness.extend_from(&relative.witness)?;
    let (g, r) = (&group_report.certificate, &relative.certificate);
    Ok(RankReport {
        structure: None,
        quantity: Quantity::Rank,
        value,
        witness,
        fixed: GeneratorSet::new(s.degree())?,
        certificate: Certificate {
            search_space: format!(
                "group of units (order {}): {}; relative to the units: {}",
                group.order(),
                g.search_space,
                r.search_space
            ),
            rejected_count: g.rejected_count + r.rejected_count,
            pruned_count: g.pruned_count + r.pruned_count,
            per_size: sum_per_size(&g.per_size, &r.per_size),
        },
        elapsed: started.elapsed(),
        method: Method::Lemma1Decomposed,
    })
}

fn sum_per_size(a: &[u64], b: &[u64]) -> Vec<u64> {
    (0..a.len().max(b.len()))
        .map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0))
        .collect()
}

/// Whether the units among `u` generate the whole group of units of `s`.
/// Assumes `⟨u⟩ = s`.
pub fn verify_lemma1_consistency(s: &ClosureResult, u: &GeneratorSet) -> Result<bool> {
    let monoid = IndexedMonoid::new(s);
    let unit_part: Vec<u32> = indices_in(s, u)?
        .into_iter()
        .filter(|&i| is_permutation_packed(s.packed(i as usize)))
        .collect();
    let group_order = unit_indices(s).len();
    let mut bfs = monoid.bfs();
    Ok(monoid.generated(&unit_part, group_order, &mut bfs) >= group_order)
}

/// Outcome of trying every element of a monoid as the single extra generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub monoid_order: usize,
    pub group_order: usize,
    pub candidates: usize,
    /// Elements `γ` with `⟨G ∪ {γ}⟩` equal to the whole monoid.
    pub successes: usize,
    pub first_success: Option<Transformation>,
}

/// For the structure of the given kind over `(n, m)`, closes the group of
/// units together with each single element in turn.
pub fn single_extension_sweep(
    n: usize,
    m: usize,
    kind: StructureKind,
    options: &SearchOptions,
) -> Result<SweepReport> {
    let gens = explicit_generators(n, m, kind)?;
    let s = closure(&gens, &options.closure_options())?.complete()?;
    let candidates = s.order();
    if candidates as u64 > options.budget {
        return Err(Error::BudgetExceeded {
            budget: options.budget,
            size: 1,
            partial: Box::default(),
        });
    }
    let monoid = IndexedMonoid::new(&s);
    let mut bfs = monoid.bfs();
    let units = unit_indices(&s);
    let fixed = monoid.reduce_generators(&units, &mut bfs);
    let target = s.order();

    let test = |bfs: &mut Bfs, gamma: u32| -> bool {
        let mut g = fixed.clone();
        g.push(gamma);
        monoid.generated(&g, target, bfs) >= target
    };
    let workers = Workers::new(options.threads);
    let hits: Vec<bool> = if workers.is_sequential() {
        (0..target as u32).map(|i| test(&mut bfs, i)).collect()
    } else {
        workers.install(|| {
            (0..target as u32)
                .into_par_iter()
                .map_init(|| monoid.bfs(), |bfs, i| test(bfs, i))
                .collect()
        })
    };
    Ok(SweepReport {
        monoid_order: target,
        group_order: units.len(),
        candidates,
        successes: hits.iter().filter(|&&h| h).count(),
        first_success: hits.iter().position(|&h| h).map(|i| s.element(i)),
    })
}

/// True iff no single `γ ∈ T(X,P)` gives `⟨S(X,P) ∪ {γ}⟩ = T(X,P)`.
pub fn verify_kernel_obstruction(n: usize, m: usize, options: &SearchOptions) -> Result<bool> {
    Ok(single_extension_sweep(n, m, StructureKind::Txp, options)?.successes == 0)
}
