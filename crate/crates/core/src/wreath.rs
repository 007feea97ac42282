//! Wreath products `S ≀ R` of transformation monoids in semidirect form.
//!
//! An element `(s_0, .., s_{m-1}) r` acts on `Y × Z` by
//! `(y, z) -> (y s_z, z r)`. Products follow the twisted rule
//! `(s r)(s' r') = (s · (r ϑ) s') (r r')` where `(r ϑ)(s'_0, ..) = (s'_{0r}, ..)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::transform::{check_degree, Transformation, UniformPartition};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    n: usize,
    bottoms: Vec<Transformation>,
    top: Transformation,
}

impl WreathElement {
    pub fn new(bottoms: Vec<Transformation>, top: Transformation) -> Result<Self> {
        let m = top.degree();
        if bottoms.len() != m {
            return Err(Error::DegreeMismatch {
                left: bottoms.len(),
                right: m,
            });
        }
        let n = bottoms[0].degree();
        if let Some(bad) = bottoms.iter().find(|s| s.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: bad.degree(),
            });
        }
        check_degree(n * m)?;
        Ok(Self { n, bottoms, top })
    }

    pub fn identity(n: usize, m: usize) -> Result<Self> {
        check_degree(n.saturating_mul(m))?;
        let id = Transformation::identity(n)?;
        Self::new(vec![id; m], Transformation::identity(m)?)
    }

    /// `s` in component `i`, identity elsewhere and on top.
    pub fn in_component(m: usize, i: usize, s: Transformation) -> Result<Self> {
        if i >= m {
            return Err(Error::PointOutOfRange {
                point: i,
                degree: m,
            });
        }
        let mut bottoms = vec![Transformation::identity(s.degree())?; m];
        bottoms[i] = s;
        Self::new(bottoms, Transformation::identity(m)?)
    }

    /// `r` on top with identity bottoms of degree `n`.
    pub fn from_top(n: usize, r: Transformation) -> Result<Self> {
        let bottoms = vec![Transformation::identity(n)?; r.degree()];
        Self::new(bottoms, r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.top.degree()
    }

    pub fn bottoms(&self) -> &[Transformation] {
        &self.bottoms
    }

    pub fn top(&self) -> &Transformation {
        &self.top
    }

    pub fn partition(&self) -> UniformPartition {
        UniformPartition::new(self.n, self.m()).expect("shape validated on construction")
    }

    pub fn act(&self, y: usize, z: usize) -> Result<(usize, usize)> {
        if y >= self.n {
            return Err(Error::PointOutOfRange {
                point: y,
                degree: self.n,
            });
        }
        if z >= self.m() {
            return Err(Error::PointOutOfRange {
                point: z,
                degree: self.m(),
            });
        }
        Ok((self.bottoms[z].apply(y), self.top.apply(z)))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let twisted = theta(&self.top, &other.bottoms)?;
        let bottoms = self
            .bottoms
            .iter()
            .zip(&twisted)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n: self.n,
            bottoms,
            top: self.top.compose(&other.top)?,
        })
    }

    /// The transformation of `{0, .., n*m-1}` this element induces through
    /// the canonical layout `(y, z) <-> y + n*z`.
    pub fn flatten(&self) -> Transformation {
        let n = self.n;
        let mut images = Vec::with_capacity(n * self.m());
        for (z, s) in self.bottoms.iter().enumerate() {
            let offset = n * self.top.apply(z);
            images.extend((0..n).map(|y| (s.apply(y) + offset) as u8));
        }
        Transformation::from_packed(&images)
    }

    /// Inverse of [`flatten`](Self::flatten) on partition-preserving maps.
    pub fn unflatten(f: &Transformation, partition: &UniformPartition) -> Result<Self> {
        if f.degree() != partition.degree() {
            return Err(Error::DegreeMismatch {
                left: f.degree(),
                right: partition.degree(),
            });
        }
        let top = partition
            .induced_block_map(f)
            .ok_or(Error::NotPartitionPreserving {
                block_size: partition.block_size(),
                block_count: partition.block_count(),
            })?;
        let n = partition.block_size();
        let bottoms = (0..partition.block_count())
            .map(|z| {
                let images: Vec<usize> = (0..n)
                    .map(|y| partition.coords(f.apply(partition.index(y, z))).0)
                    .collect();
                Transformation::new(&images)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bottoms, Transformation::new(&top)?)
    }

    /// `r s r⁻¹` for a permutation `r` of the top set and `s` with identity top.
    ///
    /// This is `(r ϑ) s`: the bottoms of `s` reindexed by `r`.
    pub fn conjugate_by_top(r: &Transformation, s: &Self) -> Result<Self> {
        if !r.is_permutation() {
            return Err(Error::NotInvertible);
        }
        if !s.top.is_identity() {
            return Err(Error::NotPartitionPreserving {
                block_size: s.n,
                block_count: s.m(),
            });
        }
        Self::new(theta(r, &s.bottoms)?, s.top.clone())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m() != other.m() {
            return Err(Error::ShapeMismatch {
                n1: self.n,
                m1: self.m(),
                n2: other.n,
                m2: other.m(),
            });
        }
        Ok(())
    }
}

/// `(r ϑ)(s_0, .., s_{m-1}) = (s_{0r}, .., s_{(m-1)r})`. Defined for any `r`,
/// invertible or not.
pub fn theta(r: &Transformation, bottoms: &[Transformation]) -> Result<Vec<Transformation>> {
    if r.degree() != bottoms.len() {
        return Err(Error::DegreeMismatch {
            left: r.degree(),
            right: bottoms.len(),
        });
    }
    Ok((0..bottoms.len())
        .map(|i| bottoms[r.apply(i)].clone())
        .collect())
}

/// `[s_0 images | s_1 images | ..] ; r images`
impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.bottoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "] ; {}", self.top)
    }
}

impl FromStr for WreathElement {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            line: 1,
            message: message.to_owned(),
        };
        let (bottom_part, top_part) = text.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let inner = bottom_part
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("bottoms must be enclosed in `[...]`"))?;
        let bottoms = inner
            .split('|')
            .map(|chunk| parse_images(chunk, 1))
            .collect::<Result<Vec<_>>>()?;
        let top = parse_images(top_part, 1)?;
        Self::new(bottoms, top)
    }
}

pub(crate) fn parse_images(text: &str, line: usize) -> Result<Transformation> {
    let images = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid point `{tok}`"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Transformation::new(&images).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images).unwrap()
    }

    fn id(k: usize) -> Transformation {
        Transformation::identity(k).unwrap()
    }

    #[test]
    fn action() {
        let w = WreathElement::from_top(2, t(&[1, 1])).unwrap();
        assert_eq!(w.act(0, 0).unwrap(), (0, 1));
        let e = WreathElement::identity(3, 2).unwrap();
        for y in 0..3 {
            for z in 0..2 {
                assert_eq!(e.act(y, z).unwrap(), (y, z));
            }
        }
        let w = WreathElement::new(vec![t(&[1, 0]), id(2)], id(2)).unwrap();
        assert_eq!(w.act(1, 0).unwrap(), (0, 0));
        assert!(w.act(2, 0).is_err());
        assert!(w.act(0, 2).is_err());
    }

    #[test]
    fn theta_reindexes() {
        let (a, b) = (t(&[1, 1, 2]), t(&[0, 0, 0]));
        let pair = vec![a.clone(), b.clone()];
        assert_eq!(
            theta(&t(&[1, 0]), &pair).unwrap(),
            vec![b.clone(), a.clone()]
        );
        assert_eq!(theta(&id(2), &pair).unwrap(), pair);
        assert_eq!(theta(&t(&[0, 0]), &pair).unwrap(), vec![a.clone(), a]);
        assert!(theta(&id(3), &pair).is_err());
    }

    #[test]
    fn product_examples() {
        // y = ((0 1 .. n-1), id, .., id)(0 1), y² = (c, c, id, ..) id
        for (n, m) in [(3, 2), (4, 3), (2, 4)] {
            let c = Transformation::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap();
            let mut bottoms = vec![id(n); m];
            bottoms[0] = c.clone();
            let y =
                WreathElement::new(bottoms, Transformation::cycle(m, &[0, 1]).unwrap()).unwrap();
            let y2 = y.multiply(&y).unwrap();
            let mut expected = vec![id(n); m];
            expected[0] = c.clone();
            expected[1] = c;
            assert_eq!(y2, WreathElement::new(expected, id(m)).unwrap());
        }
        // x = (id, (0 1), id)(0 1 2), x³ = ((0 1), (0 1), (0 1)) id
        for n in 2..5 {
            let swap = Transformation::cycle(n, &[0, 1]).unwrap();
            let x = WreathElement::new(
                vec![id(n), swap.clone(), id(n)],
                Transformation::cycle(3, &[0, 1, 2]).unwrap(),
            )
            .unwrap();
            let x3 = x.multiply(&x).unwrap().multiply(&x).unwrap();
            assert_eq!(x3, WreathElement::new(vec![swap; 3], id(3)).unwrap());
        }
    }

    #[test]
    fn identity_law_and_shape_check() {
        let w = WreathElement::new(vec![t(&[1, 1]), t(&[1, 0])], t(&[0, 0])).unwrap();
        let e = WreathElement::identity(2, 2).unwrap();
        assert_eq!(w.multiply(&e).unwrap(), w);
        assert_eq!(e.multiply(&w).unwrap(), w);
        let other = WreathElement::identity(2, 3).unwrap();
        assert!(matches!(
            w.multiply(&other),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn conjugation_by_top() {
        let a = t(&[1, 1]);
        let s = WreathElement::new(vec![a.clone(), id(2)], id(2)).unwrap();
        let swap = t(&[1, 0]);
        let c = WreathElement::conjugate_by_top(&swap, &s).unwrap();
        assert_eq!(c, WreathElement::new(vec![id(2), a], id(2)).unwrap());
        // independently: r̄ s r̄⁻¹
        let rbar = WreathElement::from_top(2, swap.clone()).unwrap();
        let rinv = WreathElement::from_top(2, swap.inverse().unwrap()).unwrap();
        assert_eq!(rbar.multiply(&s).unwrap().multiply(&rinv).unwrap(), c);
        assert_eq!(WreathElement::conjugate_by_top(&id(2), &s).unwrap(), s);
        assert_eq!(
            WreathElement::conjugate_by_top(&t(&[0, 0]), &s),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn component_conjugates_move_between_components() {
        // s^r = r⁻¹ s r maps the component at 0 to the component at 0r.
        let m = 3;
        let a = t(&[1, 0, 2]);
        let s0 = WreathElement::in_component(m, 0, a.clone()).unwrap();
        for r in all_perms(m) {
            let j = r.apply(0);
            let conj = WreathElement::conjugate_by_top(&r.inverse().unwrap(), &s0).unwrap();
            assert_eq!(conj, WreathElement::in_component(m, j, a.clone()).unwrap());
        }
    }

    fn all_perms(m: usize) -> Vec<Transformation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..m).collect();
        permute(&mut images, 0, &mut out);
        out
    }

    fn permute(images: &mut Vec<usize>, i: usize, out: &mut Vec<Transformation>) {
        if i == images.len() {
            out.push(Transformation::new(images).unwrap());
            return;
        }
        for j in i..images.len() {
            images.swap(i, j);
            permute(images, i + 1, out);
            images.swap(i, j);
        }
    }

    #[test]
    fn flatten_examples() {
        let alpha = WreathElement::new(vec![t(&[1, 1]), id(2)], id(2)).unwrap();
        assert_eq!(alpha.flatten(), t(&[1, 1, 2, 3]));
        let beta = WreathElement::from_top(2, t(&[1, 1])).unwrap();
        assert_eq!(beta.flatten(), t(&[2, 3, 2, 3]));
        assert_eq!(WreathElement::identity(3, 2).unwrap().flatten(), id(6));
    }

    #[test]
    fn unflatten_examples() {
        let p = UniformPartition::new(2, 2).unwrap();
        assert_eq!(
            WreathElement::unflatten(&t(&[2, 3, 2, 3]), &p).unwrap(),
            WreathElement::from_top(2, t(&[1, 1])).unwrap()
        );
        assert_eq!(
            WreathElement::unflatten(&t(&[1, 1, 2, 3]), &p).unwrap(),
            WreathElement::new(vec![t(&[1, 1]), id(2)], id(2)).unwrap()
        );
        let p6 = UniformPartition::new(3, 2).unwrap();
        assert_eq!(
            WreathElement::unflatten(&id(6), &p6).unwrap(),
            WreathElement::identity(3, 2).unwrap()
        );
        assert!(matches!(
            WreathElement::unflatten(&t(&[1, 0, 2, 0]), &p),
            Err(Error::NotPartitionPreserving { .. })
        ));
    }

    #[test]
    fn text_form() {
        let w = WreathElement::new(vec![t(&[1, 1, 2]), t(&[2, 0, 1])], t(&[1, 1])).unwrap();
        let text = w.to_string();
        assert_eq!(text, "[1 1 2 | 2 0 1] ; 1 1");
        assert_eq!(text.parse::<WreathElement>().unwrap(), w);
        assert!("[0 1 | 0 1] 0 1".parse::<WreathElement>().is_err());
        assert!("0 1 | 0 1 ; 0 1".parse::<WreathElement>().is_err());
        assert!("[0 1 | 0 5] ; 0 1".parse::<WreathElement>().is_err());
    }
}
