//! Braid words as elements of the Artin braid group `B_n`.
//!
//! A letter `g > 0` stands for the generator `σ_g` and `g < 0` for its
//! inverse. Strands run top to bottom, positions are numbered `1..=n` from
//! left to right. In `σ_i` the strand travelling from position `i` to `i+1`
//! passes over the strand travelling from `i+1` to `i`.
//!
//! Words are plain values: nothing here reduces a word unless asked to.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// Which defining relation of the braid group to rewrite with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `σ_i σ_j = σ_j σ_i` for `|i - j| > 1`.
    Commute,
    /// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`.
    YangBaxter,
}

/// Which side of the relation the matched segment is on.
///
/// For `YangBaxter`, `Forward` rewrites `(i, i+1, i)` into `(i+1, i, i+1)`
/// and `Backward` the other way. `Commute` is symmetric and accepts both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// A braid word on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// Validating constructor.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid(
                "a braid needs at least one strand".into(),
            ));
        }
        let max = strands as i64 - 1;
        for &g in &letters {
            let a = (g as i64).abs();
            if a < 1 || a > max {
                return Err(Error::OutOfRange {
                    what: "braid letter",
                    value: g as i64,
                    min: 1,
                    max,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1, "a braid needs at least one strand");
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_parts_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(BraidWord::new(strands, letters.clone()).is_ok());
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|g| -g).collect(),
        }
    }

    /// Cancels adjacent `g, -g` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if stack.last() == Some(&-g) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: stack,
        }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != -w[1])
    }

    /// Rewrites the segment starting at `site` with a braid relation.
    pub fn apply_relation(
        &self,
        site: usize,
        kind: RelationKind,
        direction: Direction,
    ) -> Result<BraidWord> {
        let width = match kind {
            RelationKind::Commute => 2,
            RelationKind::YangBaxter => 3,
        };
        if site + width > self.letters.len() {
            return Err(Error::Inapplicable(format!(
                "{kind:?} needs {width} letters at site {site}, word has {}",
                self.letters.len()
            )));
        }
        let seg = &self.letters[site..site + width];
        let replacement: Vec<i32> = match kind {
            RelationKind::Commute => {
                let (g, h) = (seg[0], seg[1]);
                if (g.abs() - h.abs()).abs() <= 1 {
                    return Err(Error::Inapplicable(format!(
                        "letters {g} {h} at site {site} do not commute"
                    )));
                }
                vec![h, g]
            }
            RelationKind::YangBaxter => match yang_baxter_match(seg) {
                Some((sign, low, high)) => {
                    let (outer, inner) = match direction {
                        Direction::Forward => (low, high),
                        Direction::Backward => (high, low),
                    };
                    if seg[0].abs() != outer {
                        return Err(Error::Inapplicable(format!(
                            "segment {seg:?} at site {site} is not the {direction:?} side"
                        )));
                    }
                    vec![sign * inner, sign * outer, sign * inner]
                }
                None => {
                    return Err(Error::Inapplicable(format!(
                        "segment {seg:?} at site {site} is not a braid relation side"
                    )))
                }
            },
        };
        let mut letters = self.letters.clone();
        letters.splice(site..site + width, replacement);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Every `(site, kind, direction)` at which `apply_relation` succeeds.
    pub fn relation_sites(&self) -> Vec<(usize, RelationKind, Direction)> {
        let mut out = Vec::new();
        for site in 0..self.letters.len() {
            if site + 2 <= self.letters.len() {
                let (g, h) = (self.letters[site], self.letters[site + 1]);
                if (g.abs() - h.abs()).abs() > 1 {
                    out.push((site, RelationKind::Commute, Direction::Forward));
                }
            }
            if site + 3 <= self.letters.len() {
                if let Some((_, low, _)) = yang_baxter_match(&self.letters[site..site + 3]) {
                    let dir = if self.letters[site].abs() == low {
                        Direction::Forward
                    } else {
                        Direction::Backward
                    };
                    out.push((site, RelationKind::YangBaxter, dir));
                }
            }
        }
        out
    }

    /// Permutation induced on strand positions; letter signs are ignored.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &g in &self.letters {
            p.swap_positions(g.unsigned_abs() as usize);
        }
        p
    }

    /// Number of components of the closure.
    pub fn closure_component_count(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|g| g.signum() as i64).sum()
    }

    /// The same word viewed in `B_m`, `m >= strands`.
    pub fn embed(&self, m: usize) -> Result<BraidWord> {
        if m < self.strands {
            return Err(Error::OutOfRange {
                what: "embedding strand count",
                value: m as i64,
                min: self.strands as i64,
                max: i64::MAX,
            });
        }
        Ok(BraidWord {
            strands: m,
            letters: self.letters.clone(),
        })
    }
}

/// For a uniform-sign segment `(εa, εb, εa)` with `|a - b| = 1`, returns
/// `(ε, min(a,b), max(a,b))`.
fn yang_baxter_match(seg: &[i32]) -> Option<(i32, i32, i32)> {
    let (x, y, z) = (seg[0], seg[1], seg[2]);
    let sign = x.signum();
    if y.signum() != sign || z.signum() != sign || x != z {
        return None;
    }
    let (a, b) = (x.abs(), y.abs());
    if (a - b).abs() != 1 {
        return None;
    }
    Some((sign, a.min(b), a.max(b)))
}

impl fmt::Display for BraidWord {
    /// Text form `B<n>: g1 g2 ...`; the empty word prints as `B<n>:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawBraid {
    strands: usize,
    letters: Vec<i32>,
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawBraid::deserialize(d)?;
        BraidWord::new(raw.strands, raw.letters).map_err(serde::de::Error::custom)
    }
}
