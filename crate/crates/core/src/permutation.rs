use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1..n}`, stored as the image of each point.
///
/// For a braid, `image(p)` is the bottom position reached by the strand
/// that starts at top position `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from 1-based images, rejecting anything that is
    /// not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::OutOfRange {
                    what: "permutation image",
                    value: v as i64,
                    min: 1,
                    max: n as i64,
                });
            }
            if seen[v] {
                return Err(Error::InvalidBraid(format!(
                    "permutation repeats image {v} at position {}",
                    i + 1
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Swaps the contents of positions `i` and `i+1`, i.e. post-composes
    /// with the adjacent transposition `(i i+1)` acting on positions.
    pub(crate) fn swap_positions(&mut self, i: usize) {
        for v in self.images.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
    }

    /// `self` followed by `other`: `p -> other(self(p))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "permutation size mismatch");
        Permutation {
            images: self.images.iter().map(|&v| other.image(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by
    /// that element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}
