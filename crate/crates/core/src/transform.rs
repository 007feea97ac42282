//! Full transformations of `{0, .., k-1}`, their kernels, and uniform partitions.
//!
//! Transformations act on the right: `f.compose(&g)` applies `f` first, so the
//! image of `p` under the product is `g[f[p]]`. Points are 0-based; a point
//! `i` in 1-based notation is `i - 1` here.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree. Images are stored one byte per point.
pub const MAX_DEGREE: usize = 256;

/// A total map on `{0, .., degree-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Box<[u8]>,
}

impl Transformation {
    pub fn new(images: &[usize]) -> Result<Self> {
        let k = images.len();
        check_degree(k)?;
        for &q in images {
            if q >= k {
                return Err(Error::PointOutOfRange {
                    point: q,
                    degree: k,
                });
            }
        }
        Ok(Self {
            images: images.iter().map(|&q| q as u8).collect(),
        })
    }

    /// Builds a transformation from a packed image table.
    ///
    /// The caller guarantees `1 <= images.len() <= MAX_DEGREE` and that every
    /// entry is a valid point.
    pub(crate) fn from_packed(images: &[u8]) -> Self {
        debug_assert!(!images.is_empty() && images.len() <= MAX_DEGREE);
        debug_assert!(images.iter().all(|&q| (q as usize) < images.len()));
        Self {
            images: images.into(),
        }
    }

    pub fn identity(k: usize) -> Result<Self> {
        check_degree(k)?;
        Ok(Self {
            images: (0..k).map(|p| p as u8).collect(),
        })
    }

    /// The cycle `points[0] -> points[1] -> .. -> points[0]`, fixing every
    /// other point.
    pub fn cycle(k: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut seen = vec![false; k];
        for &p in points {
            if p >= k {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: k,
                });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::RepeatedPoint(p));
            }
        }
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()];
        }
        Self::new(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of `p`. Panics if `p` is out of range.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let mut out = vec![0u8; self.degree()];
        compose_into(&self.images, &other.images, &mut out);
        Ok(Self { images: out.into() })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(p, &q)| p == q as usize)
    }

    pub fn is_permutation(&self) -> bool {
        is_permutation_packed(&self.images)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_permutation() {
            return Err(Error::NotInvertible);
        }
        let mut inv = vec![0u8; self.degree()];
        for (p, &q) in self.images.iter().enumerate() {
            inv[q as usize] = p as u8;
        }
        Ok(Self { images: inv.into() })
    }

    /// Number of distinct images, the rank of the map in the classical sense.
    pub fn image_size(&self) -> usize {
        let mut seen = [false; MAX_DEGREE];
        let mut count = 0;
        for &q in self.images.iter() {
            if !std::mem::replace(&mut seen[q as usize], true) {
                count += 1;
            }
        }
        count
    }

    pub fn kernel(&self) -> Kernel {
        let mut class_of_image = [u32::MAX; MAX_DEGREE];
        let mut next = 0u32;
        let class_of = self
            .images
            .iter()
            .map(|&q| {
                let slot = &mut class_of_image[q as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Kernel { class_of }
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter()).finish()
    }
}

/// Space-separated image table, the element-set file line format.
impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_degree(k: usize) -> Result<()> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::InvalidDegree(k));
    }
    Ok(())
}

#[inline]
pub(crate) fn compose_into(f: &[u8], g: &[u8], out: &mut [u8]) {
    for (o, &q) in out.iter_mut().zip(f) {
        *o = g[q as usize];
    }
}

pub(crate) fn is_permutation_packed(images: &[u8]) -> bool {
    let mut seen = [false; MAX_DEGREE];
    images
        .iter()
        .all(|&q| !std::mem::replace(&mut seen[q as usize], true))
}

/// The kernel of a transformation as a canonical class table: class ids
/// appear in first-occurrence order, so two maps have equal kernels iff their
/// tables are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Kernel {
    class_of: Vec<u32>,
}

impl Kernel {
    pub fn degree(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |&c| c as usize + 1)
    }

    pub fn related(&self, p: usize, q: usize) -> bool {
        self.class_of[p] == self.class_of[q]
    }

    /// True for the diagonal relation (every class a singleton).
    pub fn is_discrete(&self) -> bool {
        self.class_count() == self.degree()
    }

    /// Containment of relations: every pair related here is related in `other`.
    pub fn is_contained_in(&self, other: &Kernel) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        // Each class of `self` must map into a single class of `other`.
        let mut target = vec![u32::MAX; self.class_count()];
        self.class_of.iter().zip(&other.class_of).all(|(&c, &d)| {
            let slot = &mut target[c as usize];
            if *slot == u32::MAX {
                *slot = d;
            }
            *slot == d
        })
    }

    /// Classes as sorted point lists, ordered by class id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.class_count()];
        for (p, &c) in self.class_of.iter().enumerate() {
            classes[c as usize].push(p);
        }
        classes
    }
}

/// `block_count` blocks of `block_size` points each, laid out canonically:
/// block `z` is `{n*z, .., n*z + n - 1}` and point `(y, z)` is index `y + n*z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniformPartition {
    block_size: usize,
    block_count: usize,
}

impl UniformPartition {
    pub fn new(block_size: usize, block_count: usize) -> Result<Self> {
        if block_size == 0 || block_count == 0 {
            return Err(Error::InvalidDegree(block_size * block_count));
        }
        check_degree(block_size * block_count)?;
        Ok(Self {
            block_size,
            block_count,
        })
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn degree(&self) -> usize {
        self.block_size * self.block_count
    }

    pub fn index(&self, y: usize, z: usize) -> usize {
        debug_assert!(y < self.block_size && z < self.block_count);
        y + self.block_size * z
    }

    pub fn coords(&self, p: usize) -> (usize, usize) {
        (p % self.block_size, p / self.block_size)
    }

    pub fn block_of(&self, p: usize) -> usize {
        p / self.block_size
    }

    /// At least two blocks, each with at least two points.
    pub fn is_non_trivial(&self) -> bool {
        self.block_size >= 2 && self.block_count >= 2
    }

    /// The block map induced by `f`, or `None` if some block is split.
    pub fn induced_block_map(&self, f: &Transformation) -> Option<Vec<usize>> {
        if f.degree() != self.degree() {
            return None;
        }
        (0..self.block_count)
            .map(|z| {
                let target = self.block_of(f.apply(self.index(0, z)));
                (1..self.block_size)
                    .all(|y| self.block_of(f.apply(self.index(y, z))) == target)
                    .then_some(target)
            })
            .collect()
    }
}
