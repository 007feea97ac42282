//! The four partition-preserving monoids, their orders, and explicit
//! generating sets.
//!
//! | kind    | monoid      | wreath form  |
//! |---------|-------------|--------------|
//! | `Txp`   | `T(X,P)`    | `T_Y ≀ T_Z`  |
//! | `Sigma` | `Σ(X,P)`    | `T_Y ≀ S_Z`  |
//! | `Gamma` | `Γ(X,P)`    | `S_Y ≀ T_Z`  |
//! | `Sxp`   | `S(X,P)`    | `S_Y ≀ S_Z`  |
//!
//! Generators use 0-based points: the 1-based transposition `(1,2)` is
//! `(0,1)` here, the cycle `(1,2,..,m)` is `(0,1,..,m-1)`, and the map sending
//! `1 -> 2` and fixing the rest is `[1, 1, 2, .., k-1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::transform::{check_degree, Transformation, UniformPartition};
use crate::wreath::WreathElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    /// All maps sending each block into a block.
    Txp,
    /// Partition preserved in both directions: the induced block map is a permutation.
    Sigma,
    /// Partition preserved and every block mapped injectively.
    Gamma,
    /// Partition-preserving permutations, the unit group of `Txp`.
    Sxp,
}

impl StructureKind {
    pub const ALL: [StructureKind; 4] = [Self::Txp, Self::Sigma, Self::Gamma, Self::Sxp];

    pub fn name(self) -> &'static str {
        match self {
            Self::Txp => "txp",
            Self::Sigma => "sigma",
            Self::Gamma => "gamma",
            Self::Sxp => "sxp",
        }
    }

    /// Whether the bottom (within-block) factor is the full transformation monoid.
    fn full_bottom(self) -> bool {
        matches!(self, Self::Txp | Self::Sigma)
    }

    /// Whether the top (block-level) factor is the full transformation monoid.
    fn full_top(self) -> bool {
        matches!(self, Self::Txp | Self::Gamma)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "txp" => Ok(Self::Txp),
            "sigma" => Ok(Self::Sigma),
            "gamma" => Ok(Self::Gamma),
            "sxp" => Ok(Self::Sxp),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown structure `{other}`"),
            }),
        }
    }
}

/// An ordered, labelled list of transformations of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    elements: Vec<Transformation>,
    labels: Vec<String>,
}

impl GeneratorSet {
    pub fn new(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self {
            degree,
            elements: Vec::new(),
            labels: Vec::new(),
        })
    }

    /// Labels the elements `{prefix}0`, `{prefix}1`, ...
    pub fn from_elements(
        degree: usize,
        elements: impl IntoIterator<Item = Transformation>,
        prefix: &str,
    ) -> Result<Self> {
        let mut set = Self::new(degree)?;
        for (i, f) in elements.into_iter().enumerate() {
            set.push(format!("{prefix}{i}"), f)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, label: impl Into<String>, f: Transformation) -> Result<()> {
        let label = label.into();
        if f.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: f.degree(),
            });
        }
        if self.labels.contains(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        self.elements.push(f);
        self.labels.push(label);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Transformation> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.elements[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Transformation)> {
        self.labels.iter().map(String::as_str).zip(&self.elements)
    }

    /// A copy restricted to the elements selected by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Transformation) -> bool) -> Self {
        let (labels, elements) = self
            .labels
            .iter()
            .zip(&self.elements)
            .filter(|(_, f)| keep(f))
            .map(|(l, f)| (l.clone(), f.clone()))
            .unzip();
        Self {
            degree: self.degree,
            elements,
            labels,
        }
    }

    /// Appends every element of `other`, renaming clashing labels.
    pub fn extend_from(&mut self, other: &GeneratorSet) -> Result<()> {
        for (label, f) in other.iter() {
            let mut name = label.to_owned();
            while self.labels.contains(&name) {
                name.push('\'');
            }
            self.push(name, f.clone())?;
        }
        Ok(())
    }
}

/// Tests `f` for membership in the structure of the given kind over `partition`.
pub fn membership(
    f: &Transformation,
    partition: &UniformPartition,
    kind: StructureKind,
) -> Result<bool> {
    if f.degree() != partition.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: partition.degree(),
        });
    }
    let Some(block_map) = partition.induced_block_map(f) else {
        return Ok(false);
    };
    let block_map_injective = || {
        let mut seen = vec![false; partition.block_count()];
        block_map
            .iter()
            .all(|&b| !std::mem::replace(&mut seen[b], true))
    };
    let injective_on_blocks = || {
        let n = partition.block_size();
        (0..partition.block_count()).all(|z| {
            let mut seen = vec![false; n];
            (0..n).all(|y| {
                let (image_y, _) = partition.coords(f.apply(partition.index(y, z)));
                !std::mem::replace(&mut seen[image_y], true)
            })
        })
    };
    Ok(match kind {
        StructureKind::Txp => true,
        StructureKind::Sigma => block_map_injective(),
        StructureKind::Gamma => injective_on_blocks(),
        StructureKind::Sxp => f.is_permutation(),
    })
}

/// `|S|^m · |R|` for the wreath form `S ≀ R` of the given kind.
pub fn order_formula(n: usize, m: usize, kind: StructureKind) -> BigUint {
    let bottom = if kind.full_bottom() {
        power(n, n)
    } else {
        factorial(n)
    };
    let top = if kind.full_top() {
        power(m, m)
    } else {
        factorial(m)
    };
    bottom.pow(m as u32) * top
}

fn power(base: usize, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// The classical identification of a structure over a trivial partition.
fn degenerate_identity(n: usize, kind: StructureKind) -> &'static str {
    let full = if n == 1 {
        kind.full_top()
    } else {
        kind.full_bottom()
    };
    match (kind, full) {
        (StructureKind::Txp, _) => "T(X,P) = T_X for a trivial partition (rank 3 when |X| >= 3)",
        (StructureKind::Sigma, true) => {
            "Σ(X,P) = T_X for the universal partition (rank 3 when |X| >= 3)"
        }
        (StructureKind::Sigma, false) => {
            "Σ(X,P) = Sym X for the discrete partition (rank 2 when |X| >= 3)"
        }
        (StructureKind::Gamma, true) => {
            "Γ(X,P) = T_X for the discrete partition (rank 3 when |X| >= 3)"
        }
        (StructureKind::Gamma, false) => {
            "Γ(X,P) = Sym X for the universal partition (rank 2 when |X| >= 3)"
        }
        (StructureKind::Sxp, _) => "S(X,P) = Sym X for a trivial partition (rank 2 when |X| >= 3)",
    }
}

/// The two-element generating set `{x, y}` of `S_Y ≀ S_Z` in wreath form.
///
/// `x = (id, (0 1), id, .., id) c` where `c = (0 1 .. m-1)` if `n` or `m` is
/// odd and `c = (1 2 .. m-1)` otherwise; `y = ((0 1 .. n-1), id, .., id)(0 1)`.
pub fn wreath_group_generators(n: usize, m: usize) -> Result<(WreathElement, WreathElement)> {
    require_non_trivial(n, m, StructureKind::Sxp)?;
    let id_y = Transformation::identity(n)?;
    let mut x_bottoms = vec![id_y.clone(); m];
    x_bottoms[1] = Transformation::cycle(n, &[0, 1])?;
    let x_top: Vec<usize> = if n % 2 == 1 || m % 2 == 1 {
        (0..m).collect()
    } else {
        (1..m).collect()
    };
    let x = WreathElement::new(x_bottoms, Transformation::cycle(m, &x_top)?)?;

    let mut y_bottoms = vec![id_y; m];
    y_bottoms[0] = Transformation::cycle(n, &(0..n).collect::<Vec<_>>())?;
    let y = WreathElement::new(y_bottoms, Transformation::cycle(m, &[0, 1])?)?;
    Ok((x, y))
}

/// Generators of `S_Y ≀ S_Z` from the embedded factors: the symmetric group
/// generators of `S_Y` in component 0 and those of `S_Z` on top. Up to four
/// elements, and independent of [`wreath_group_generators`].
pub fn wreath_standard_generators(n: usize, m: usize) -> Result<GeneratorSet> {
    UniformPartition::new(n, m)?;
    let mut set = GeneratorSet::new(n * m)?;
    for (label, s) in symmetric_group_generators(n)?.iter() {
        let w = WreathElement::in_component(m, 0, s.clone())?;
        set.push(format!("bottom_{label}"), w.flatten())?;
    }
    for (label, r) in symmetric_group_generators(m)?.iter() {
        let w = WreathElement::from_top(n, r.clone())?;
        set.push(format!("top_{label}"), w.flatten())?;
    }
    Ok(set)
}

/// `ᾱ` on `k` points: `0 -> 1`, every other point fixed.
pub fn collapse_map(k: usize) -> Result<Transformation> {
    let mut images: Vec<usize> = (0..k).collect();
    if k >= 2 {
        images[0] = 1;
    }
    Transformation::new(&images)
}

/// `α = (ᾱ, id, .., id) id` and `β = (id, .., id) ᾱ`.
pub fn alpha_beta(n: usize, m: usize) -> Result<(WreathElement, WreathElement)> {
    let alpha = WreathElement::in_component(m, 0, collapse_map(n)?)?;
    let beta = WreathElement::from_top(n, collapse_map(m)?)?;
    Ok((alpha, beta))
}

/// The explicit generating set for a non-trivial uniform partition, flattened
/// to degree `n*m`: `{x, y}` for `Sxp`, plus `α` for `Sigma`, `β` for `Gamma`,
/// and both for `Txp`.
pub fn explicit_generators(n: usize, m: usize, kind: StructureKind) -> Result<GeneratorSet> {
    require_non_trivial(n, m, kind)?;
    let (x, y) = wreath_group_generators(n, m)?;
    let (alpha, beta) = alpha_beta(n, m)?;
    let mut set = GeneratorSet::new(n * m)?;
    set.push("x", x.flatten())?;
    set.push("y", y.flatten())?;
    if kind.full_bottom() {
        set.push("alpha", alpha.flatten())?;
    }
    if kind.full_top() {
        set.push("beta", beta.flatten())?;
    }
    Ok(set)
}

/// Like [`explicit_generators`], but falls back to the classical generators of
/// `T_X` or `Sym X` when the partition is trivial.
pub fn structure_generators(n: usize, m: usize, kind: StructureKind) -> Result<GeneratorSet> {
    UniformPartition::new(n, m)?;
    if n >= 2 && m >= 2 {
        return explicit_generators(n, m, kind);
    }
    let full = if n == 1 {
        kind.full_top()
    } else {
        kind.full_bottom()
    };
    if full {
        full_transformation_generators(n * m)
    } else {
        symmetric_group_generators(n * m)
    }
}

fn require_non_trivial(n: usize, m: usize, kind: StructureKind) -> Result<()> {
    let partition = UniformPartition::new(n, m)?;
    if !partition.is_non_trivial() {
        return Err(Error::UnsupportedCase {
            n,
            m,
            identity: degenerate_identity(n, kind).to_owned(),
        });
    }
    Ok(())
}

/// `{(0 1), (0 1 .. k-1)}` for `k >= 3`, `{(0 1)}` for `k = 2`, empty for `k = 1`.
pub fn symmetric_group_generators(k: usize) -> Result<GeneratorSet> {
    let mut set = GeneratorSet::new(k)?;
    if k >= 2 {
        set.push("transposition", Transformation::cycle(k, &[0, 1])?)?;
    }
    if k >= 3 {
        set.push(
            "cycle",
            Transformation::cycle(k, &(0..k).collect::<Vec<_>>())?,
        )?;
    }
    Ok(set)
}

/// Symmetric group generators plus `ᾱ`.
pub fn full_transformation_generators(k: usize) -> Result<GeneratorSet> {
    let mut set = symmetric_group_generators(k)?;
    if k >= 2 {
        set.push("alpha_bar", collapse_map(k)?)?;
    }
    Ok(set)
}
