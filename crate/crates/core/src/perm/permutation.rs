use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection of `{1..n}`.
///
/// Composition is left-to-right throughout the crate: `a * b` (or
/// `a.then(&b)`) first applies `a`, then `b`, so `(a * b).image(x) ==
/// b.image(a.image(x))`. Points are 1-based in every public method; the
/// 0-based image table is only exposed to the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Parse("permutation of degree 0".into()));
        }
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x as usize > n {
                return Err(Error::PointOutOfRange {
                    point: x as usize,
                    degree: n,
                });
            }
            if seen[x as usize - 1] {
                return Err(Error::Parse(format!(
                    "point {x} is the image of two points"
                )));
            }
            seen[x as usize - 1] = true;
            zero.push(x - 1);
        }
        Ok(Permutation {
            images: zero.into(),
        })
    }

    /// 0-based image table; the caller guarantees it is a bijection.
    pub(crate) fn from_zero_based_unchecked(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Permutation {
            images: images.into(),
        }
    }

    /// Builds a permutation from disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p as usize > degree {
                    return Err(Error::PointOutOfRange {
                        point: p as usize,
                        degree,
                    });
                }
                if used[p as usize - 1] {
                    return Err(Error::Parse(format!("point {p} repeated across cycles")));
                }
                used[p as usize - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                images[p as usize - 1] = q - 1;
            }
        }
        Ok(Permutation {
            images: images.into(),
        })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    /// Whitespace is ignored and commas inside a cycle may be replaced by
    /// spaces, so `(1 8 2)(3 4 5)` parses as well.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty permutation text".into()));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Parse(format!("unclosed cycle in {text:?}")));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::Parse(format!("nested '(' in {text:?}")));
            }
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
                cycle.push(p);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: u32) -> u32 {
        self.images[p as usize - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub(crate) fn table(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub(crate) fn apply0(&self, p: u32) -> u32 {
        self.images[p as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Permutation { images }
    }

    pub fn try_then(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv.into() }
    }

    /// `self^-1 * x * self`, i.e. `x` conjugated by `self`.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        self.inverse().then(x).then(self)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32 + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Smallest 1-based point not fixed, if any.
    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32 + 1)
    }

    /// Cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Permutation[{}]{}",
            self.degree(),
            self.to_cycle_string()
        )
    }
}
