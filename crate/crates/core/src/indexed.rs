//! Index-addressed view of an enumerated monoid, used by the rank search for
//! cheap sub-closures of candidate subsets.

use std::sync::OnceLock;

use crate::closure::ClosureResult;
use crate::store::hash_packed;
use crate::transform::compose_into;

/// Monoids up to this order cache right-multiplication columns.
const COLUMN_CACHE_MAX_ORDER: usize = 4096;

pub(crate) struct IndexedMonoid<'a> {
    elements: &'a ClosureResult,
    columns: Option<Vec<OnceLock<Box<[u32]>>>>,
}

/// Per-worker scratch for breadth-first sub-closures.
pub(crate) struct Bfs {
    seen: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
    buf: Vec<u8>,
}

impl Bfs {
    pub fn new(order: usize, degree: usize) -> Self {
        Self {
            seen: vec![0; order],
            epoch: 0,
            queue: Vec::new(),
            buf: vec![0; degree],
        }
    }

    fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.fill(0);
            self.epoch = 1;
        }
        self.queue.clear();
    }

    #[inline]
    fn mark(&mut self, i: u32) -> bool {
        let slot = &mut self.seen[i as usize];
        if *slot == self.epoch {
            return false;
        }
        *slot = self.epoch;
        true
    }

    /// Whether `i` was reached by the most recent [`IndexedMonoid::generated`].
    pub fn reached(&self, i: u32) -> bool {
        self.seen[i as usize] == self.epoch
    }
}

impl<'a> IndexedMonoid<'a> {
    pub fn new(elements: &'a ClosureResult) -> Self {
        let columns = (elements.order() <= COLUMN_CACHE_MAX_ORDER)
            .then(|| (0..elements.order()).map(|_| OnceLock::new()).collect());
        Self { elements, columns }
    }

    pub fn order(&self) -> usize {
        self.elements.order()
    }

    pub fn bfs(&self) -> Bfs {
        Bfs::new(self.order(), self.elements.degree())
    }

    fn column(&self, g: u32) -> Option<&[u32]> {
        let columns = self.columns.as_ref()?;
        Some(columns[g as usize].get_or_init(|| {
            let mut buf = vec![0u8; self.elements.degree()];
            (0..self.order())
                .map(|e| self.product_uncached(e as u32, g, &mut buf))
                .collect()
        }))
    }

    /// Index of `left · e · right` computed by composition and lookup. Panics if
    /// the product is not an element, which cannot happen for a closed set.
    pub fn sandwich(
        &self,
        left: &[u8],
        e: u32,
        right: &[u8],
        tmp: &mut [u8],
        buf: &mut [u8],
    ) -> u32 {
        compose_into(left, self.elements.packed(e as usize), tmp);
        compose_into(tmp, right, buf);
        self.lookup(buf)
    }

    #[inline]
    fn product_uncached(&self, e: u32, g: u32, buf: &mut [u8]) -> u32 {
        compose_into(
            self.elements.packed(e as usize),
            self.elements.packed(g as usize),
            buf,
        );
        self.lookup(buf)
    }

    #[inline]
    fn lookup(&self, images: &[u8]) -> u32 {
        self.elements
            .store()
            .find_hashed(images, hash_packed(images))
            .expect("product escaped a closed element set")
    }

    /// Size of the submonoid generated by `gens`, stopping early once it
    /// reaches `stop_at`. The reached elements stay marked in `bfs`.
    pub fn generated(&self, gens: &[u32], stop_at: usize, bfs: &mut Bfs) -> usize {
        bfs.reset();
        bfs.mark(0);
        bfs.queue.push(0);
        let mut count = 1;
        if count >= stop_at {
            return count;
        }
        let columns: Option<Vec<&[u32]>> = gens.iter().map(|&g| self.column(g)).collect();
        let mut head = 0;
        while head < bfs.queue.len() {
            let e = bfs.queue[head];
            head += 1;
            for (j, &g) in gens.iter().enumerate() {
                let p = match &columns {
                    Some(cols) => cols[j][e as usize],
                    None => {
                        let mut buf = std::mem::take(&mut bfs.buf);
                        let p = self.product_uncached(e, g, &mut buf);
                        bfs.buf = buf;
                        p
                    }
                };
                if bfs.mark(p) {
                    bfs.queue.push(p);
                    count += 1;
                    if count >= stop_at {
                        return count;
                    }
                }
            }
        }
        count
    }

    /// Greedy subsequence of `gens` generating the same submonoid.
    pub fn reduce_generators(&self, gens: &[u32], bfs: &mut Bfs) -> Vec<u32> {
        let mut kept: Vec<u32> = Vec::new();
        self.generated(&kept, usize::MAX, bfs);
        for &g in gens {
            if !bfs.reached(g) {
                kept.push(g);
                self.generated(&kept, usize::MAX, bfs);
            }
        }
        kept
    }

    /// Orbit representatives under the maps `e -> left · e · right`.
    /// Within each orbit the representative is the element earliest in `order`.
    pub fn orbit_representatives(&self, maps: &[(Vec<u8>, Vec<u8>)], order: &[u32]) -> Vec<bool> {
        let n = self.order();
        let mut is_rep = vec![false; n];
        if maps.is_empty() {
            for &e in order {
                is_rep[e as usize] = true;
            }
            return is_rep;
        }
        let mut visited = vec![false; n];
        let mut buf = vec![0u8; self.elements.degree()];
        let mut tmp = buf.clone();
        let mut stack = Vec::new();
        for &start in order {
            if visited[start as usize] {
                continue;
            }
            is_rep[start as usize] = true;
            visited[start as usize] = true;
            stack.push(start);
            while let Some(e) = stack.pop() {
                for (left, right) in maps {
                    let p = self.sandwich(left, e, right, &mut tmp, &mut buf);
                    if !std::mem::replace(&mut visited[p as usize], true) {
                        stack.push(p);
                    }
                }
            }
        }
        is_rep
    }
}
