//! Planar diagram codes.
//!
//! Each crossing lists four arc identifiers in the slot order
//! `(under_in, over_in, under_out, over_out)` together with its sign.
//! Arcs are numbered densely from 1 and every arc enters exactly one slot
//! and leaves exactly one slot. The counter-clockwise order of the slots
//! around the crossing is implied by the sign:
//!
//! ```text
//! sign +1:  under_in, over_out, under_out, over_in
//! sign -1:  under_in, over_in,  under_out, over_out
//! ```
//!
//! Components without crossings are kept only as a count (`free_loops`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub under_in: u32,
    pub over_in: u32,
    pub under_out: u32,
    pub over_out: u32,
    pub sign: i8,
}

impl Crossing {
    /// Slots in counter-clockwise order starting at `under_in`.
    pub fn ccw_arcs(&self) -> [u32; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        } else {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        }
    }

    /// Whether the counter-clockwise slot `s` is an outgoing end.
    fn ccw_is_out(&self, s: usize) -> bool {
        match s {
            0 => false,
            2 => true,
            1 => self.sign > 0,
            _ => self.sign < 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// Sign of a crossing from the directions of its two strands, with `y`
/// pointing up: `+1` when turning the over strand counter-clockwise
/// onto the under strand takes less than half a turn.
pub fn crossing_sign(over: (i32, i32), under: (i32, i32)) -> i8 {
    let z = over.0 * under.1 - over.1 * under.0;
    assert!(z != 0, "parallel strands do not cross");
    if z > 0 {
        1
    } else {
        -1
    }
}

/// One passage of a traced strand through a crossing.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// Assigns arcs to traced components and assembles a validated PD code.
///
/// Arcs are numbered in traversal order: component by component, the arc
/// entering a component's first passage is numbered first.
pub(crate) fn assemble(components: &[Vec<Passage>], signs: &[i8]) -> PdCode {
    let mut slots = vec![[0u32; 4]; signs.len()];
    let mut free_loops = 0;
    let mut next = 1u32;
    for comp in components {
        if comp.is_empty() {
            free_loops += 1;
            continue;
        }
        let m = comp.len() as u32;
        let base = next;
        for (j, p) in comp.iter().enumerate() {
            let j = j as u32;
            let arc_in = base + j;
            let arc_out = base + (j + 1) % m;
            let s = &mut slots[p.crossing];
            if p.over {
                s[1] = arc_in;
                s[3] = arc_out;
            } else {
                s[0] = arc_in;
                s[2] = arc_out;
            }
        }
        next += m;
    }
    let crossings = slots
        .iter()
        .zip(signs)
        .map(|(s, &sign)| Crossing {
            under_in: s[0],
            over_in: s[1],
            under_out: s[2],
            over_out: s[3],
            sign,
        })
        .collect();
    let pd = PdCode {
        crossings,
        free_loops,
    };
    debug_assert_eq!(pd.validate(), Ok(()), "assembled PD must be valid");
    pd
}

/// `(crossing index, counter-clockwise slot)`.
type Slot = (usize, usize);

impl PdCode {
    /// Validating constructor.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let pd = PdCode {
            crossings,
            free_loops,
        };
        pd.validate()?;
        Ok(pd)
    }

    pub fn unknot() -> Self {
        PdCode {
            crossings: Vec::new(),
            free_loops: 1,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Checks arc bookkeeping, signs and planarity of the implied embedding.
    pub fn validate(&self) -> Result<()> {
        let arcs = self.arc_count();
        let mut entered = vec![usize::MAX; arcs + 1];
        let mut left = vec![usize::MAX; arcs + 1];
        for (k, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InvalidPd(format!(
                    "crossing {k} has sign {}, expected +1 or -1",
                    c.sign
                )));
            }
            for (a, incoming) in [
                (c.under_in, true),
                (c.over_in, true),
                (c.under_out, false),
                (c.over_out, false),
            ] {
                let (table, role) = if incoming {
                    (&mut entered, "enters")
                } else {
                    (&mut left, "leaves")
                };
                if a == 0 || a as usize > arcs {
                    return Err(Error::InvalidPd(format!(
                        "crossing {k} uses arc {a}, expected 1..={arcs}"
                    )));
                }
                if table[a as usize] != usize::MAX {
                    return Err(Error::InvalidPd(format!(
                        "arc {a} {role} both crossing {} and crossing {k}",
                        table[a as usize]
                    )));
                }
                table[a as usize] = k;
            }
        }
        // Every slot is filled exactly once, so each arc is now entered and
        // left exactly once by counting.
        let (faces, pieces) = self.faces_and_pieces();
        let expected = self.crossings.len() + 2 * pieces;
        if faces != expected {
            return Err(Error::InvalidPd(format!(
                "not planar: {faces} faces where {expected} are required"
            )));
        }
        Ok(())
    }

    /// For each arc, the crossing and counter-clockwise slot where it
    /// enters and where it leaves.
    fn arc_ends(&self) -> (Vec<Slot>, Vec<Slot>) {
        let arcs = self.arc_count();
        let mut head = vec![(0, 0); arcs + 1];
        let mut tail = vec![(0, 0); arcs + 1];
        for (k, c) in self.crossings.iter().enumerate() {
            for (s, a) in c.ccw_arcs().into_iter().enumerate() {
                if c.ccw_is_out(s) {
                    tail[a as usize] = (k, s);
                } else {
                    head[a as usize] = (k, s);
                }
            }
        }
        (head, tail)
    }

    /// Number of faces of the embedded 4-valent graph and number of its
    /// connected pieces. Only meaningful after arc bookkeeping is checked.
    fn faces_and_pieces(&self) -> (usize, usize) {
        let c = self.crossings.len();
        if c == 0 {
            return (0, 0);
        }
        let (head, tail) = self.arc_ends();
        let other_end = |k: usize, s: usize| -> (usize, usize) {
            let a = self.crossings[k].ccw_arcs()[s] as usize;
            if self.crossings[k].ccw_is_out(s) {
                head[a]
            } else {
                tail[a]
            }
        };
        let mut seen = vec![false; 4 * c];
        let mut faces = 0;
        for start in 0..4 * c {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let (k, s) = other_end(d / 4, d % 4);
                d = 4 * k + (s + 3) % 4;
            }
        }
        let mut parent: Vec<usize> = (0..c).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for a in 1..=self.arc_count() {
            let (x, y) = (head[a].0, tail[a].0);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        let pieces = (0..c).filter(|&k| find(&mut parent, k) == k).count();
        (faces, pieces)
    }

    /// Arc that follows `arc` along its strand.
    pub fn successor(&self, arc: u32) -> u32 {
        for c in &self.crossings {
            if c.under_in == arc {
                return c.under_out;
            }
            if c.over_in == arc {
                return c.over_out;
            }
        }
        panic!("arc {arc} does not enter any crossing");
    }

    /// Component label (0-based) for every arc, index 0 unused. Components
    /// are numbered by their smallest arc; free loops come after these.
    pub fn arc_components(&self) -> (Vec<usize>, usize) {
        let arcs = self.arc_count();
        let mut next_arc = vec![0u32; arcs + 1];
        for c in &self.crossings {
            next_arc[c.under_in as usize] = c.under_out;
            next_arc[c.over_in as usize] = c.over_out;
        }
        let mut label = vec![usize::MAX; arcs + 1];
        let mut count = 0;
        for start in 1..=arcs {
            if label[start] != usize::MAX {
                continue;
            }
            let mut a = start;
            while label[a] == usize::MAX {
                label[a] = count;
                a = next_arc[a] as usize;
            }
            count += 1;
        }
        (label, count)
    }

    /// Components including free loops.
    pub fn component_count(&self) -> usize {
        self.arc_components().1 + self.free_loops
    }
}

#[derive(Serialize, Deserialize)]
struct RawCrossing {
    arcs: [u32; 4],
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct RawPd {
    crossings: Vec<RawCrossing>,
    free_loops: usize,
}

impl Serialize for PdCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPd {
            crossings: self
                .crossings
                .iter()
                .map(|c| RawCrossing {
                    arcs: [c.under_in, c.over_in, c.under_out, c.over_out],
                    sign: c.sign,
                })
                .collect(),
            free_loops: self.free_loops,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PdCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPd::deserialize(d)?;
        let crossings = raw
            .crossings
            .into_iter()
            .map(|c| Crossing {
                under_in: c.arcs[0],
                over_in: c.arcs[1],
                under_out: c.arcs[2],
                over_out: c.arcs[3],
                sign: c.sign,
            })
            .collect();
        PdCode::new(crossings, raw.free_loops).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(a: [u32; 4], sign: i8) -> Crossing {
        Crossing {
            under_in: a[0],
            over_in: a[1],
            under_out: a[2],
            over_out: a[3],
            sign,
        }
    }

    #[test]
    fn sign_rule() {
        // both strands upward, over strand SW -> NE: the standard positive crossing
        assert_eq!(crossing_sign((1, 1), (-1, 1)), 1);
        assert_eq!(crossing_sign((-1, 1), (1, 1)), -1);
        // a braid letter with the left-to-right strand on top, strands descending
        assert_eq!(crossing_sign((1, -1), (-1, -1)), -1);
    }

    #[test]
    fn kinks_are_planar() {
        // under first, then over, through one positive crossing
        assert!(PdCode::new(vec![x([1, 2, 2, 1], 1)], 0).is_ok());
        // over first, then under
        assert!(PdCode::new(vec![x([2, 1, 1, 2], 1)], 0).is_ok());
        assert!(PdCode::new(vec![x([1, 2, 2, 1], -1)], 0).is_ok());
        assert!(PdCode::new(vec![x([2, 1, 1, 2], -1)], 0).is_ok());
    }

    #[test]
    fn bookkeeping_errors() {
        assert!(PdCode::new(vec![x([1, 1, 2, 2], 1)], 0).is_err());
        assert!(PdCode::new(vec![x([1, 2, 3, 1], 1)], 0).is_err());
        assert!(PdCode::new(vec![x([1, 2, 2, 1], 0)], 0).is_err());
        assert!(serde_json::from_str::<PdCode>(
            r#"{"crossings":[{"arcs":[0,1,1,2],"sign":1}],"free_loops":0}"#
        )
        .is_err());
    }

    #[test]
    fn hopf_link_two_ways() {
        // Two-crossing Hopf diagram; strand A = arcs 1,2 and strand B = arcs 3,4.
        let good = PdCode::new(vec![x([1, 3, 2, 4], -1), x([4, 2, 3, 1], -1)], 0);
        let flipped = PdCode::new(vec![x([1, 3, 2, 4], 1), x([4, 2, 3, 1], -1)], 0);
        // exactly one of the sign assignments embeds in the plane
        assert!(good.is_ok() != flipped.is_ok());
    }

    #[test]
    fn components_and_json() {
        let pd = PdCode::new(vec![x([1, 2, 2, 1], 1)], 2).unwrap();
        assert_eq!(pd.component_count(), 3);
        assert_eq!(pd.successor(1), 2);
        let json = serde_json::to_string(&pd).unwrap();
        assert_eq!(
            json,
            r#"{"crossings":[{"arcs":[1,2,2,1],"sign":1}],"free_loops":2}"#
        );
        assert_eq!(serde_json::from_str::<PdCode>(&json).unwrap(), pd);
        assert_eq!(PdCode::unknot().component_count(), 1);
    }
}
