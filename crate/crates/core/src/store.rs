//! Deduplicating storage for packed transformations of one degree.

use std::hash::Hasher;

use hashbrown::hash_table::{Entry, HashTable};
use rustc_hash::FxHasher;

#[inline]
pub(crate) fn hash_packed(images: &[u8]) -> u64 {
    let mut h = FxHasher::default();
    h.write(images);
    h.finish()
}

/// Flat arena of fixed-width image tables plus a hash index into it.
/// Insertion order is preserved and indices are stable.
#[derive(Clone, Debug)]
pub(crate) struct ElementStore {
    degree: usize,
    arena: Vec<u8>,
    table: HashTable<u32>,
}

impl ElementStore {
    pub fn with_capacity(degree: usize, capacity: usize) -> Self {
        Self {
            degree,
            arena: Vec::with_capacity(degree * capacity),
            table: HashTable::with_capacity(capacity),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.arena.len() / self.degree
    }

    #[inline]
    pub fn get(&self, index: usize) -> &[u8] {
        &self.arena[index * self.degree..(index + 1) * self.degree]
    }

    pub fn arena(&self) -> &[u8] {
        &self.arena
    }

    pub fn find(&self, images: &[u8]) -> Option<u32> {
        self.find_hashed(images, hash_packed(images))
    }

    #[inline]
    pub fn find_hashed(&self, images: &[u8], hash: u64) -> Option<u32> {
        let d = self.degree;
        let arena = &self.arena;
        self.table
            .find(hash, |&i| {
                &arena[i as usize * d..(i as usize + 1) * d] == images
            })
            .copied()
    }

    /// Returns the index of `images` and whether it was newly inserted.
    #[inline]
    pub fn insert_hashed(&mut self, images: &[u8], hash: u64) -> (u32, bool) {
        debug_assert_eq!(images.len(), self.degree);
        let d = self.degree;
        let Self { arena, table, .. } = self;
        let entry = table.entry(
            hash,
            |&i| &arena[i as usize * d..(i as usize + 1) * d] == images,
            |&i| hash_packed(&arena[i as usize * d..(i as usize + 1) * d]),
        );
        match entry {
            Entry::Occupied(o) => (*o.get(), false),
            Entry::Vacant(v) => {
                let index = (arena.len() / d) as u32;
                arena.extend_from_slice(images);
                v.insert(index);
                (index, true)
            }
        }
    }

    pub fn insert(&mut self, images: &[u8]) -> (u32, bool) {
        self.insert_hashed(images, hash_packed(images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_stable_indices() {
        let mut s = ElementStore::with_capacity(3, 0);
        assert_eq!(s.insert(&[0, 1, 2]), (0, true));
        assert_eq!(s.insert(&[1, 1, 2]), (1, true));
        assert_eq!(s.insert(&[0, 1, 2]), (0, false));
        for i in 0..500u32 {
            let e = [(i % 3) as u8, (i / 3 % 3) as u8, (i / 9 % 3) as u8];
            s.insert(&e);
        }
        assert_eq!(s.len(), 27);
        assert_eq!(s.find(&[1, 1, 2]), Some(1));
        assert_eq!(s.get(1), &[1, 1, 2]);
        assert_eq!(
            s.find(&[2, 2, 2]).map(|i| s.get(i as usize).to_vec()),
            Some(vec![2, 2, 2])
        );
    }
}
