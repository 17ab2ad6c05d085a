//! Text and JSON readers for grids, braid words and PD codes.
//!
//! ```text
//! grid:  G<n>: X=<c1,...,cn> O=<c1,...,cn>     or {"size":n,"xcol":[..],"ocol":[..]}
//! braid: B<n>: g1 g2 ...                       or {"strands":n,"letters":[..]}
//! PD:    {"crossings":[{"arcs":[a,b,c,d],"sign":±1}],"free_loops":k}
//! ```
//!
//! Writers are the `Display` impls (text) and `serde` (JSON).

use serde::de::DeserializeOwned;

use super::grid::GridDiagram;
use super::pd::PdCode;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Any object the readers understand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Grid(GridDiagram),
    Braid(BraidWord),
    Pd(PdCode),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Grid(_) => "grid",
            Object::Braid(_) => "braid",
            Object::Pd(_) => "pd",
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{token}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    /// A possibly signed decimal integer.
    fn int(&mut self) -> Result<(usize, i64)> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.rest().as_bytes();
        let mut len = 0;
        if matches!(bytes.first(), Some(b'-') | Some(b'+')) {
            len = 1;
        }
        let digits = bytes[len..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            return Err(Error::parse(start, "expected an integer"));
        }
        len += digits;
        let text = &self.src[start..start + len];
        let v = text
            .parse::<i64>()
            .map_err(|e| Error::parse(start, format!("bad integer `{text}`: {e}")))?;
        self.pos += len;
        Ok((start, v))
    }

    fn positive(&mut self, what: &str) -> Result<(usize, usize)> {
        let (at, v) = self.int()?;
        if v < 1 {
            return Err(Error::parse(
                at,
                format!("{what} must be positive, got {v}"),
            ));
        }
        Ok((at, v as usize))
    }

    fn column_list(&mut self) -> Result<Vec<usize>> {
        let mut out = vec![self.positive("column")?.1];
        loop {
            self.skip_ws();
            if self.rest().starts_with(',') {
                self.pos += 1;
                out.push(self.positive("column")?.1);
            } else {
                return Ok(out);
            }
        }
    }
}

fn from_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        // serde_json reports line/column; convert to a byte offset
        let pos = text
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        Error::parse(pos, format!("{what} JSON: {e}"))
    })
}

pub fn parse_grid(text: &str) -> Result<GridDiagram> {
    if text.trim_start().starts_with('{') {
        return from_json(text, "grid");
    }
    let mut c = Cursor::new(text);
    c.expect("G")?;
    let (size_at, size) = c.positive("grid size")?;
    c.expect(":")?;
    c.expect("X")?;
    c.expect("=")?;
    let x_at = c.pos;
    let xcol = c.column_list()?;
    c.expect("O")?;
    c.expect("=")?;
    let o_at = c.pos;
    let ocol = c.column_list()?;
    if !c.at_end() {
        return Err(Error::parse(c.pos, "trailing input after grid"));
    }
    for (at, list, label) in [(x_at, &xcol, 'X'), (o_at, &ocol, 'O')] {
        if list.len() != size {
            return Err(Error::parse(
                at,
                format!(
                    "{label} lists {} columns but the header G{size} (byte {size_at}) needs {size}",
                    list.len()
                ),
            ));
        }
    }
    GridDiagram::new(xcol, ocol)
}

pub fn parse_braid(text: &str) -> Result<BraidWord> {
    if text.trim_start().starts_with('{') {
        return from_json(text, "braid");
    }
    let mut c = Cursor::new(text);
    c.expect("B")?;
    let (_, strands) = c.positive("strand count")?;
    c.expect(":")?;
    let mut letters = Vec::new();
    while !c.at_end() {
        let (at, g) = c.int()?;
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(Error::parse(
                at,
                format!(
                    "letter {g} out of range for {strands} strands (1..={})",
                    strands - 1
                ),
            ));
        }
        letters.push(g as i32);
    }
    BraidWord::new(strands, letters)
}

pub fn parse_pd(text: &str) -> Result<PdCode> {
    if !text.trim_start().starts_with('{') {
        let pos = text.len() - text.trim_start().len();
        return Err(Error::parse(pos, "PD codes are read from JSON"));
    }
    from_json(text, "PD")
}

/// Detects the object type from its first token or JSON keys.
pub fn parse_object(text: &str) -> Result<Object> {
    let t = text.trim_start();
    let pos = text.len() - t.len();
    match t.chars().next() {
        Some('G') => parse_grid(text).map(Object::Grid),
        Some('B') => parse_braid(text).map(Object::Braid),
        Some('{') => {
            let value: serde_json::Value = from_json(text, "object")?;
            if value.get("size").is_some() {
                parse_grid(text).map(Object::Grid)
            } else if value.get("strands").is_some() {
                parse_braid(text).map(Object::Braid)
            } else if value.get("crossings").is_some() {
                parse_pd(text).map(Object::Pd)
            } else {
                Err(Error::parse(
                    pos,
                    "JSON object is not a grid, braid or PD code",
                ))
            }
        }
        Some(_) => Err(Error::parse(
            pos,
            "expected a grid (G..), braid (B..) or JSON object",
        )),
        None => Err(Error::parse(pos, "empty input")),
    }
}
