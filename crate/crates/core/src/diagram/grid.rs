use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Direction of the vertical segment in a grid column.
///
/// Columns are oriented from X to O, so a column is `Up` exactly when its X
/// sits lower (larger row number) than its O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnOrientation {
    Up,
    Down,
}

/// An `n × n` grid diagram (arc presentation) of an oriented link.
///
/// Rows are numbered `1..=n` top to bottom and columns `1..=n` left to
/// right. Row `r` holds an X at column `xcol(r)` and an O at `ocol(r)`.
/// Vertical segments run X→O and cross over horizontal ones, which run O→X.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GridDiagram {
    size: usize,
    xcol: Vec<usize>,
    ocol: Vec<usize>,
    #[serde(skip)]
    xrow: Vec<usize>,
    #[serde(skip)]
    orow: Vec<usize>,
}

/// A crossing of a grid: the vertical in `column` passes over the
/// horizontal in `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCrossing {
    pub row: usize,
    pub column: usize,
}

fn inverse_of(cols: &[usize], label: char) -> Result<Vec<usize>> {
    let n = cols.len();
    let mut rows = vec![0usize; n];
    for (r, &c) in cols.iter().enumerate() {
        if c == 0 || c > n {
            return Err(Error::InvalidGrid(format!(
                "{label} in row {} has column {c}, expected 1..={n}",
                r + 1
            )));
        }
        if rows[c - 1] != 0 {
            return Err(Error::InvalidGrid(format!(
                "column {c} holds two {label} markers (rows {} and {})",
                rows[c - 1],
                r + 1
            )));
        }
        rows[c - 1] = r + 1;
    }
    Ok(rows)
}

impl GridDiagram {
    pub fn new(xcol: Vec<usize>, ocol: Vec<usize>) -> Result<Self> {
        let size = xcol.len();
        if ocol.len() != size {
            return Err(Error::InvalidGrid(format!(
                "X lists {size} columns but O lists {}",
                ocol.len()
            )));
        }
        if size < 2 {
            return Err(Error::InvalidGrid(format!(
                "size {size} is below the minimum of 2"
            )));
        }
        let xrow = inverse_of(&xcol, 'X')?;
        let orow = inverse_of(&ocol, 'O')?;
        if let Some(r) = (0..size).find(|&r| xcol[r] == ocol[r]) {
            return Err(Error::InvalidGrid(format!(
                "X and O collide in row {} (column {})",
                r + 1,
                xcol[r]
            )));
        }
        Ok(GridDiagram {
            size,
            xcol,
            ocol,
            xrow,
            orow,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Column of the X in row `r`.
    pub fn xcol(&self, r: usize) -> usize {
        self.xcol[r - 1]
    }

    /// Column of the O in row `r`.
    pub fn ocol(&self, r: usize) -> usize {
        self.ocol[r - 1]
    }

    /// Row of the X in column `c`.
    pub fn x_row(&self, c: usize) -> usize {
        self.xrow[c - 1]
    }

    /// Row of the O in column `c`.
    pub fn o_row(&self, c: usize) -> usize {
        self.orow[c - 1]
    }

    pub fn xcols(&self) -> &[usize] {
        &self.xcol
    }

    pub fn ocols(&self) -> &[usize] {
        &self.ocol
    }

    pub fn column_orientation(&self, c: usize) -> Result<ColumnOrientation> {
        if c == 0 || c > self.size {
            return Err(Error::OutOfRange {
                what: "grid column",
                value: c as i64,
                min: 1,
                max: self.size as i64,
            });
        }
        Ok(if self.x_row(c) > self.o_row(c) {
            ColumnOrientation::Up
        } else {
            ColumnOrientation::Down
        })
    }

    /// Columns oriented upward, in increasing order.
    pub fn up_columns(&self) -> Vec<usize> {
        (1..=self.size)
            .filter(|&c| self.x_row(c) > self.o_row(c))
            .collect()
    }

    /// Row of the next X reached from the X in row `r`: down/up its
    /// column to the O, then along that O's row.
    fn next_x_row(&self, r: usize) -> usize {
        self.o_row(self.xcol(r))
    }

    /// Component label (0-based, numbered by smallest X row) of each row.
    pub fn row_components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.size];
        let mut next = 0;
        for start in 1..=self.size {
            if label[start - 1] != usize::MAX {
                continue;
            }
            let mut r = start;
            while label[r - 1] == usize::MAX {
                label[r - 1] = next;
                r = self.next_x_row(r);
            }
            next += 1;
        }
        label
    }

    /// Number of link components, by tracing X → O → X until return.
    pub fn components(&self) -> usize {
        self.row_components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Rows visited by each component, starting from its smallest X row,
    /// in traversal order.
    pub fn component_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 1..=self.size {
            if seen[start - 1] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut r = start;
            while !seen[r - 1] {
                seen[r - 1] = true;
                cyc.push(r);
                r = self.next_x_row(r);
            }
            out.push(cyc);
        }
        out
    }

    /// Whether the vertical in column `c` passes over the horizontal in row `r`.
    pub fn is_crossing(&self, r: usize, c: usize) -> bool {
        strictly_between(c, self.ocol(r), self.xcol(r))
            && strictly_between(r, self.x_row(c), self.o_row(c))
    }

    /// All crossings in row-major order.
    pub fn crossings(&self) -> Vec<GridCrossing> {
        let mut out = Vec::new();
        for row in 1..=self.size {
            let (lo, hi) = min_max(self.ocol(row), self.xcol(row));
            for column in lo + 1..hi {
                if strictly_between(row, self.x_row(column), self.o_row(column)) {
                    out.push(GridCrossing { row, column });
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// Reflection in a vertical line: the mirror image of the link.
    pub fn mirror(&self) -> GridDiagram {
        let n = self.size;
        let flip = |v: &Vec<usize>| v.iter().map(|&c| n + 1 - c).collect();
        GridDiagram::new(flip(&self.xcol), flip(&self.ocol)).expect("reflection keeps validity")
    }
}

pub(crate) fn strictly_between(v: usize, a: usize, b: usize) -> bool {
    let (lo, hi) = min_max(a, b);
    lo < v && v < hi
}

fn min_max(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G{}: X={} O={}",
            self.size,
            join(&self.xcol),
            join(&self.ocol)
        )
    }
}

#[derive(Deserialize)]
struct RawGrid {
    size: usize,
    xcol: Vec<usize>,
    ocol: Vec<usize>,
}

impl<'de> Deserialize<'de> for GridDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGrid::deserialize(d)?;
        if raw.xcol.len() != raw.size {
            return Err(serde::de::Error::custom(format!(
                "size {} but xcol has {} entries",
                raw.size,
                raw.xcol.len()
            )));
        }
        GridDiagram::new(raw.xcol, raw.ocol).map_err(serde::de::Error::custom)
    }
}
