//! Dense permutations on `{0, .., degree-1}`.
//!
//! Composition is left to right: `a.compose(&b)` applies `a` first, then `b`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{0, .., degree-1}` stored as its image array.
///
/// The derived ordering is lexicographic on the images, so the identity is
/// the smallest permutation of any degree.
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

    /// Builds a permutation from an image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidParameter(format!(
                    "image {x} of point {i} is outside degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter(format!(
                    "point {x} appears twice among the images"
                )));
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles; omitted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let pu = p as usize;
                if pu >= degree {
                    return Err(Error::InvalidParameter(format!(
                        "point {p} outside degree {degree}"
                    )));
                }
                if std::mem::replace(&mut used[pu], true) {
                    return Err(Error::InvalidParameter(format!("point {p} repeated")));
                }
                images[pu] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of `point`.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `other^-1 * self * other`, i.e. `self` conjugated by `other`.
    pub(crate) fn conj(&self, other: &Permutation) -> Permutation {
        // x -> other(self(other^-1(x)))
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub(crate) fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
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
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Cycle notation in the `(0,1,2)(3,4)` grammar; identity prints as `""`.
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles() {
            s.push('(');
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&p.to_string());
            }
            s.push(')');
        }
        s
    }

    /// Parses whitespace-free cycle notation such as `(0,1,2)(3,4)`.
    ///
    /// Error positions are byte offsets into `text`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::parse(pos, "expected '('"));
            }
            pos += 1;
            let mut cycle: Vec<u32> = Vec::new();
            loop {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::parse(pos, "expected a point"));
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "point out of range"))?;
                if point >= degree {
                    return Err(Error::parse(
                        start,
                        format!("point {point} is not below degree {degree}"),
                    ));
                }
                if std::mem::replace(&mut used[point], true) {
                    return Err(Error::parse(start, format!("point {point} repeated")));
                }
                cycle.push(point as u32);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(_) => return Err(Error::parse(pos, "expected ',' or ')'")),
                    None => return Err(Error::parse(pos, "unterminated cycle")),
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "()")
        } else {
            f.write_str(&self.to_cycle_string())
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
