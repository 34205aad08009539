//! Exact permutation arithmetic on a finite carrier.
//!
//! Elements are stored 0-based. Every text form (one-line image lists, cycle
//! notation) is 1-based so it can be compared directly with hand-written tables.
//!
//! Composition follows the "apply the right argument first" convention:
//! `a.compose(&b)` is the map `x -> a(b(x))`. Exponent strings such as
//! `u^p d^q s^w` are therefore evaluated right to left.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("image {value} out of range 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("value {value} appears more than once")]
    Duplicate { value: usize },
    #[error("empty carrier")]
    Empty,
    #[error("element {element} appears in more than one cycle")]
    OverlappingCycles { element: usize },
    #[error("cannot parse '{token}' as an element")]
    BadToken { token: String },
}

/// A bijection of `{0..n}` onto itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        if n == 0 {
            return Err(PermutationError::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(PermutationError::OutOfRange { value: v + 1, n });
            }
            if seen[v] {
                return Err(PermutationError::Duplicate { value: v + 1 });
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images, as written in a one-line list.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut zero = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(PermutationError::OutOfRange { value: v, n });
            }
            zero.push(v - 1);
        }
        Self::from_images(zero)
    }

    /// Builds a permutation of size `n` from disjoint cycles in 1-based notation,
    /// so `from_cycles(6, &[&[1, 2], &[3, 5], &[4, 6]])` is `(1 2)(3 5)(4 6)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermutationError> {
        if n == 0 {
            return Err(PermutationError::Empty);
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(PermutationError::OutOfRange { value: x, n });
                }
                if used[x - 1] {
                    return Err(PermutationError::OverlappingCycles { element: x });
                }
                used[x - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > n {
                    return Err(PermutationError::OutOfRange { value: next, n });
                }
                images[x - 1] = next - 1;
            }
        }
        Ok(Self { images })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        if self.len() != other.len() {
            return Err(PermutationError::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// k-fold composition; negative `k` powers the inverse.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        // Reduce by the order first so huge exponents stay cheap.
        let order = self.order();
        if order > 0 {
            e %= order;
        }
        let mut result = Permutation::identity(self.len());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        result
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.len() == other.len()
            && (0..self.len()).all(|x| self.apply(other.apply(x)) == other.apply(self.apply(x)))
    }

    /// Disjoint cycles in canonical order, 0-based: each cycle starts at its
    /// minimal element and cycles are sorted by that element. Fixed points
    /// appear as length-1 cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle decomposition with 1-based labels.
    pub fn cycle_decomposition(&self) -> Vec<Vec<usize>> {
        self.cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    /// Sorted multiset of cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.images[x] == x).collect()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Cycle notation, omitting fixed points; the identity renders as `()`.
    pub fn cycle_notation(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.cycle_notation())
    }
}

/// One-line 1-based image list, e.g. `2 1 5 6 3 4`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| PermutationError::BadToken {
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(PermutationError::Empty);
        }
        Self::from_one_based(&values)
    }
}
