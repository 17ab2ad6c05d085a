use super::grid::{strictly_between, GridDiagram};
use super::pd::{assemble, crossing_sign, Passage, PdCode};
use crate::braid::BraidWord;

/// PD code of a grid diagram: verticals over horizontals, one crossing for
/// every row/column pair whose segments intersect.
pub fn grid_to_pd(g: &GridDiagram) -> PdCode {
    let n = g.size();
    let crossings = g.crossings();
    let mut index = vec![usize::MAX; (n + 1) * (n + 1)];
    let mut signs = Vec::with_capacity(crossings.len());
    for (k, x) in crossings.iter().enumerate() {
        index[x.row * (n + 1) + x.column] = k;
        let c = x.column;
        let vertical = if g.o_row(c) > g.x_row(c) {
            (0, -1)
        } else {
            (0, 1)
        };
        let horizontal = if g.xcol(x.row) > g.ocol(x.row) {
            (1, 0)
        } else {
            (-1, 0)
        };
        signs.push(crossing_sign(vertical, horizontal));
    }

    let mut components = Vec::new();
    for cycle in g.component_cycles() {
        let mut passages = Vec::new();
        for &xr in &cycle {
            // vertical: X at (xr, c) to O at (orow, c)
            let c = g.xcol(xr);
            let or = g.o_row(c);
            for r in walk(xr, or) {
                if strictly_between(c, g.ocol(r), g.xcol(r)) {
                    passages.push(Passage {
                        crossing: index[r * (n + 1) + c],
                        over: true,
                    });
                }
            }
            // horizontal: O at (or, c) to X at (or, xcol(or))
            for col in walk(c, g.xcol(or)) {
                if strictly_between(or, g.x_row(col), g.o_row(col)) {
                    passages.push(Passage {
                        crossing: index[or * (n + 1) + col],
                        over: false,
                    });
                }
            }
        }
        components.push(passages);
    }
    assemble(&components, &signs)
}

/// Values strictly between `from` and `to`, in the order met going from
/// `from` towards `to`.
fn walk(from: usize, to: usize) -> Box<dyn Iterator<Item = usize>> {
    if from < to {
        Box::new(from + 1..to)
    } else {
        Box::new((to + 1..from).rev())
    }
}

/// PD code of the vertical closure of a braid word. Strands descend; the
/// closing arcs run beside the braid and cross nothing.
pub fn braid_closure_to_pd(w: &BraidWord) -> PdCode {
    let letters = w.letters();
    let signs: Vec<i8> = letters
        .iter()
        .map(|&g| {
            // the strand moving right is on top for a positive letter
            let (right, left) = ((1, -1), (-1, -1));
            if g > 0 {
                crossing_sign(right, left)
            } else {
                crossing_sign(left, right)
            }
        })
        .collect();

    let perm = w.permutation();
    let mut components = Vec::new();
    for cycle in perm.cycles() {
        let mut passages = Vec::new();
        for &start in &cycle {
            let mut pos = start;
            for (t, &g) in letters.iter().enumerate() {
                let i = g.unsigned_abs() as usize;
                if pos == i {
                    passages.push(Passage {
                        crossing: t,
                        over: g > 0,
                    });
                    pos = i + 1;
                } else if pos == i + 1 {
                    passages.push(Passage {
                        crossing: t,
                        over: g < 0,
                    });
                    pos = i;
                }
            }
            debug_assert_eq!(pos, perm.image(start));
        }
        components.push(passages);
    }
    assemble(&components, &signs)
}
