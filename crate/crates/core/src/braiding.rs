//! Grid diagrams to braids.
//!
//! Every upward column of a grid is an up-arc. It is cut at its O and the
//! two ends are pulled to the top and bottom edges along the same column,
//! passing over everything on the way (verticals are over in a grid, so
//! these are always "over" L-braiding moves). After that every vertical
//! descends, and a top-to-bottom sweep over the rows reads the braid: the
//! horizontal of row `r` carries one strand from the O column to the X
//! column, under the verticals in between.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::diagram::GridDiagram;

/// Over/under type of an L-braiding move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BraidingType {
    Over,
}

/// One eliminated up-arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingMove {
    pub column: usize,
    pub o_row: usize,
    pub x_row: usize,
    #[serde(rename = "type")]
    pub kind: BraidingType,
}

/// Letters read off one row of the sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub row: usize,
    pub from_rank: usize,
    pub to_rank: usize,
    pub letters: Vec<i32>,
}

/// Audit record of a braiding run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingTrace {
    pub moves: Vec<BraidingMove>,
    pub sweep: Vec<SweepRecord>,
}

impl BraidingTrace {
    /// Concatenated sweep letters.
    pub fn letters(&self) -> Vec<i32> {
        self.sweep
            .iter()
            .flat_map(|s| s.letters.iter().copied())
            .collect()
    }
}

/// A vertical strand present between two rows of the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActiveStrand {
    pub column: usize,
    /// Link component the strand belongs to.
    pub component: usize,
}

/// Occupied columns between two consecutive rows, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepState {
    active: Vec<ActiveStrand>,
}

impl SweepState {
    pub fn active(&self) -> &[ActiveStrand] {
        &self.active
    }

    pub fn columns(&self) -> Vec<usize> {
        self.active.iter().map(|s| s.column).collect()
    }

    /// 1-based rank of the strand at `column`, if any.
    fn rank_of(&self, column: usize) -> Result<usize, usize> {
        self.active
            .binary_search_by_key(&column, |s| s.column)
            .map(|i| i + 1)
            .map_err(|i| i + 1)
    }

    /// Moves the strand at `from` to the free column `to`; returns the
    /// ranks `(p, q)` before and after.
    fn jump(&mut self, from: usize, to: usize) -> (usize, usize) {
        let p = self
            .rank_of(from)
            .unwrap_or_else(|_| panic!("sweep: source column {from} is not occupied"));
        let strand = self.active.remove(p - 1);
        let q = match self.rank_of(to) {
            Ok(_) => panic!("sweep: target column {to} is already occupied"),
            Err(q) => q,
        };
        self.active.insert(
            q - 1,
            ActiveStrand {
                column: to,
                ..strand
            },
        );
        (p, q)
    }
}

/// Up columns in increasing order.
pub fn find_up_arcs(g: &GridDiagram) -> Vec<usize> {
    g.up_columns()
}

/// Number of strands of the braid produced from `g`.
pub fn strand_count(g: &GridDiagram) -> usize {
    g.up_columns().len()
}

/// Letters for a strand jumping from rank `p` to rank `q` under the
/// strands in between.
fn jump_letters(p: usize, q: usize) -> Vec<i32> {
    if q > p {
        (p..q).map(|i| -(i as i32)).collect()
    } else {
        (q..p).rev().map(|i| i as i32).collect()
    }
}

/// Braids a grid diagram; the closure of the word is isotopic to the link.
pub fn braid_from_grid(g: &GridDiagram) -> (BraidWord, BraidingTrace) {
    let (word, trace, _) = braid_with_states(g);
    (word, trace)
}

/// As [`braid_from_grid`], also returning the sweep state above each row
/// and after the last one (`size + 1` states).
pub fn braid_with_states(g: &GridDiagram) -> (BraidWord, BraidingTrace, Vec<SweepState>) {
    let n = g.size();
    let up = g.up_columns();
    assert!(!up.is_empty(), "a valid grid always has an upward column");
    let row_comp = g.row_components();
    let comp_of_column = |c: usize| row_comp[g.x_row(c) - 1];

    let moves = up
        .iter()
        .map(|&c| BraidingMove {
            column: c,
            o_row: g.o_row(c),
            x_row: g.x_row(c),
            kind: BraidingType::Over,
        })
        .collect();

    let mut state = SweepState {
        active: up
            .iter()
            .map(|&c| ActiveStrand {
                column: c,
                component: comp_of_column(c),
            })
            .collect(),
    };
    let mut states = Vec::with_capacity(n + 1);
    let mut sweep = Vec::with_capacity(n);
    let mut letters = Vec::new();
    for r in 1..=n {
        states.push(state.clone());
        let (p, q) = state.jump(g.ocol(r), g.xcol(r));
        let emitted = jump_letters(p, q);
        letters.extend_from_slice(&emitted);
        sweep.push(SweepRecord {
            row: r,
            from_rank: p,
            to_rank: q,
            letters: emitted,
        });
    }
    assert_eq!(state.columns(), up, "sweep must end on the up columns");
    states.push(state);

    let word = BraidWord::from_parts_unchecked(up.len(), letters);
    (word, BraidingTrace { moves, sweep }, states)
}
