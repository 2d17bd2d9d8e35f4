use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A subset of `{1..degree}` stored as a fixed-width bit vector.
///
/// Bit `p - 1` represents point `p`. Two sets of the same degree are equal
/// exactly when their encodings are equal, so the value can be used directly
/// as a deduplication key. [`PointSet::encoding`] gives the canonical
/// little-endian byte form (`ceil(degree / 8)` bytes).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    degree: u32,
    words: Box<[u64]>,
}

fn word_count(degree: usize) -> usize {
    degree.div_ceil(64)
}

impl PointSet {
    pub fn empty(degree: usize) -> Self {
        PointSet {
            degree: degree as u32,
            words: vec![0u64; word_count(degree)].into(),
        }
    }

    pub fn full(degree: usize) -> Self {
        let mut s = Self::empty(degree);
        for p in 0..degree as u32 {
            s.insert0(p);
        }
        s
    }

    /// Builds a set from 1-based points; duplicates are rejected.
    pub fn from_points(degree: usize, points: &[u32]) -> Result<Self> {
        let mut s = Self::empty(degree);
        for &p in points {
            if p == 0 || p as usize > degree {
                return Err(Error::PointOutOfRange {
                    point: p as usize,
                    degree,
                });
            }
            if s.contains(p) {
                return Err(Error::Parse(format!("point {p} listed twice")));
            }
            s.insert0(p - 1);
        }
        Ok(s)
    }

    pub(crate) fn from_zero_based(degree: usize, points: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(degree);
        for p in points {
            s.insert0(p);
        }
        s
    }

    /// Parses a comma-separated list of 1-based points (empty text is the empty set).
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut pts = Vec::new();
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {tok:?}")))?;
            pts.push(p);
        }
        Self::from_points(degree, &pts)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub(crate) fn insert0(&mut self, p: u32) {
        self.words[(p / 64) as usize] |= 1u64 << (p % 64);
    }

    #[inline]
    pub(crate) fn contains0(&self, p: u32) -> bool {
        self.words[(p / 64) as usize] >> (p % 64) & 1 == 1
    }

    pub fn contains(&self, p: u32) -> bool {
        p >= 1 && p <= self.degree && self.contains0(p - 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order, 0-based.
    pub(crate) fn iter0(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + t)
            })
        })
    }

    /// Members in increasing order, 1-based.
    pub fn points(&self) -> Vec<u32> {
        self.iter0().map(|p| p + 1).collect()
    }

    pub fn min_point(&self) -> Option<u32> {
        self.iter0().next().map(|p| p + 1)
    }

    /// Image of the set under `g`.
    pub fn image(&self, g: &Permutation) -> PointSet {
        debug_assert_eq!(g.degree(), self.degree());
        let table = g.table();
        let mut out = PointSet::empty(self.degree());
        for p in self.iter0() {
            out.insert0(table[p as usize]);
        }
        out
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.degree, other.degree);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect();
        PointSet {
            degree: self.degree,
            words,
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.degree, other.degree);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect();
        PointSet {
            degree: self.degree,
            words,
        }
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn complement(&self) -> PointSet {
        let mut out = PointSet::full(self.degree());
        for (o, w) in out.words.iter_mut().zip(self.words.iter()) {
            *o &= !w;
        }
        out
    }

    /// Canonical encoding: `ceil(degree / 8)` bytes, little-endian bit order.
    pub fn encoding(&self) -> Vec<u8> {
        let nbytes = self.degree().div_ceil(8);
        let mut out = Vec::with_capacity(nbytes);
        for i in 0..nbytes {
            out.push((self.words[i / 8] >> ((i % 8) * 8)) as u8);
        }
        out
    }

    pub fn from_encoding(degree: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != degree.div_ceil(8) {
            return Err(Error::Parse(format!(
                "encoding has {} bytes, degree {degree} needs {}",
                bytes.len(),
                degree.div_ceil(8)
            )));
        }
        let mut s = Self::empty(degree);
        for (i, &b) in bytes.iter().enumerate() {
            s.words[i / 8] |= (b as u64) << ((i % 8) * 8);
        }
        if s.words
            .last()
            .is_some_and(|&w| degree % 64 != 0 && w >> (degree % 64) != 0)
        {
            return Err(Error::Parse("encoding has bits beyond the degree".into()));
        }
        Ok(s)
    }

    /// Comma-separated 1-based points.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.points().iter().map(|p| p.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_list_string())
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[{}]{}", self.degree, self)
    }
}
