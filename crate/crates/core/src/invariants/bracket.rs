//! Kauffman bracket state sums on PD codes.
//!
//! Two independent evaluations of the same sum
//! `Σ_S A^(a(S) - b(S)) δ^(loops(S) - 1)`:
//!
//! * [`kauffman_bracket`] enumerates all `2^c` smoothing states and counts
//!   loops in each one.
//! * [`kauffman_bracket_contracted`] smooths one crossing at a time and
//!   carries, for every partial state, only how the open arc ends are
//!   joined. Same states, grouped; it reaches diagrams far beyond the
//!   enumeration cap.
//!
//! With slots `(s0, s1, s2, s3)` counter-clockwise from `under_in`, the
//! A-smoothing joins `s0–s1` and `s2–s3`, the B-smoothing `s0–s3` and `s1–s2`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::poly::{Coefficient, LaurentPoly};
use crate::diagram::PdCode;
use crate::error::{Error, Result};

/// Default crossing cap for full state enumeration.
pub const DEFAULT_STATE_SUM_CAP: usize = 24;

/// Largest number of partial states the contraction may hold at once.
pub const CONTRACTION_STATE_CAP: usize = 4_000_000;

/// Which evaluation of the bracket to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BracketMethod {
    /// Full enumeration; fails above the cap.
    #[default]
    BruteForce,
    /// Crossing-by-crossing contraction.
    Contraction,
    /// Enumeration up to the cap, contraction above it.
    Auto,
}

/// Settings shared by every oracle computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub state_sum_cap: usize,
    pub method: BracketMethod,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            state_sum_cap: DEFAULT_STATE_SUM_CAP,
            method: BracketMethod::BruteForce,
        }
    }
}

impl OracleConfig {
    pub fn auto() -> Self {
        OracleConfig {
            method: BracketMethod::Auto,
            ..Default::default()
        }
    }
}

pub fn bracket_with<C: Coefficient>(pd: &PdCode, cfg: &OracleConfig) -> Result<LaurentPoly<C>> {
    match cfg.method {
        BracketMethod::BruteForce => kauffman_bracket(pd, cfg.state_sum_cap),
        BracketMethod::Contraction => kauffman_bracket_contracted(pd),
        BracketMethod::Auto if pd.crossing_count() <= cfg.state_sum_cap => {
            kauffman_bracket(pd, cfg.state_sum_cap)
        }
        BracketMethod::Auto => kauffman_bracket_contracted(pd),
    }
}

/// Bracket of a crossingless diagram with `loops` circles.
fn loops_only<C: Coefficient>(loops: usize) -> LaurentPoly<C> {
    if loops == 0 {
        // empty diagram
        LaurentPoly::one()
    } else {
        LaurentPoly::delta().pow(loops as u32 - 1)
    }
}

/// Arc pairs joined by each smoothing, per crossing, 0-based arcs.
fn smoothing_table(pd: &PdCode) -> Vec<[[usize; 4]; 2]> {
    pd.crossings()
        .iter()
        .map(|c| {
            let s = c.ccw_arcs().map(|a| a as usize - 1);
            [[s[0], s[1], s[2], s[3]], [s[0], s[3], s[1], s[2]]]
        })
        .collect()
}

/// Union-find over arcs whose unions can be undone in reverse order, so
/// the enumeration can walk states depth-first and share prefixes.
struct Undoable {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
    loops: usize,
}

impl Undoable {
    fn new(arcs: usize) -> Self {
        Undoable {
            parent: (0..arcs).collect(),
            size: vec![1; arcs],
            history: Vec::with_capacity(2 * arcs),
            loops: arcs,
        }
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Joins `x` and `y`; returns how many entries to undo (0 or 1).
    fn join(&mut self, x: usize, y: usize) -> usize {
        let (mut rx, mut ry) = (self.root(x), self.root(y));
        if rx == ry {
            return 0;
        }
        if self.size[rx] > self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[rx] = ry;
        self.size[ry] += self.size[rx];
        self.history.push(rx);
        self.loops -= 1;
        1
    }

    fn undo(&mut self, n: usize) {
        for _ in 0..n {
            let rx = self.history.pop().expect("undo past the start");
            let ry = self.parent[rx];
            self.size[ry] -= self.size[rx];
            self.parent[rx] = rx;
            self.loops += 1;
        }
    }

    fn smooth(&mut self, q: &[usize; 4]) -> usize {
        self.join(q[0], q[1]) + self.join(q[2], q[3])
    }
}

/// Adds every completion of the states fixed on crossings `..k` to `tally`.
fn enumerate(
    table: &[[[usize; 4]; 2]],
    k: usize,
    a: usize,
    uf: &mut Undoable,
    width: usize,
    tally: &mut [u64],
) {
    if k == table.len() {
        tally[a * width + uf.loops] += 1;
        return;
    }
    for (choice, q) in table[k].iter().enumerate() {
        let n = uf.smooth(q);
        let a_next = if choice == 0 { a + 1 } else { a };
        enumerate(table, k + 1, a_next, uf, width, tally);
        uf.undo(n);
    }
}

/// Full enumeration of the `2^c` states. Errors above `cap` crossings.
pub fn kauffman_bracket<C: Coefficient>(pd: &PdCode, cap: usize) -> Result<LaurentPoly<C>> {
    let c = pd.crossing_count();
    if c > cap {
        return Err(Error::CapExceeded {
            what: "state-sum",
            crossings: c,
            cap,
        });
    }
    if c == 0 {
        return Ok(loops_only(pd.free_loops()));
    }
    let table = smoothing_table(pd);
    let arcs = 2 * c;
    let width = arcs + 1;
    // tally[a * width + loops] = number of states with `a` A-smoothings
    let fresh = || vec![0u64; (c + 1) * width];

    let tally = if c < 14 {
        let mut tally = fresh();
        enumerate(&table, 0, 0, &mut Undoable::new(arcs), width, &mut tally);
        tally
    } else {
        // fix the first `split` crossings per task, enumerate the rest
        let split = 8;
        (0..1usize << split)
            .into_par_iter()
            .map(|prefix| {
                let mut tally = fresh();
                let mut uf = Undoable::new(arcs);
                let mut a = 0;
                for (k, pairs) in table[..split].iter().enumerate() {
                    let choice = (prefix >> k) & 1;
                    uf.smooth(&pairs[choice]);
                    a += 1 - choice;
                }
                enumerate(&table, split, a, &mut uf, width, &mut tally);
                tally
            })
            .reduce(fresh, |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            })
    };

    let delta = LaurentPoly::<C>::delta();
    let mut delta_pow = vec![LaurentPoly::<C>::one()];
    let mut out = LaurentPoly::zero();
    for a in 0..=c {
        for loops in 1..width {
            let n = tally[a * width + loops];
            if n == 0 {
                continue;
            }
            let k = loops - 1 + pd.free_loops();
            while delta_pow.len() <= k {
                let next = delta_pow.last().unwrap() * &delta;
                delta_pow.push(next);
            }
            let coeff = C::from_u64(n).expect("state count fits the coefficient type");
            let exp = a as i32 - (c - a) as i32;
            out += &delta_pow[k].shift(exp).scale(&coeff);
        }
    }
    Ok(out)
}

/// Order in which to contract crossings: greedily the one touching the
/// most currently open arcs, lowest index on ties.
fn contraction_order(pd: &PdCode) -> Vec<usize> {
    let c = pd.crossing_count();
    let arcs: Vec<[usize; 4]> = pd
        .crossings()
        .iter()
        .map(|x| x.ccw_arcs().map(|a| a as usize))
        .collect();
    let mut touched = vec![0u8; pd.arc_count() + 1];
    let mut done = vec![false; c];
    let mut order = Vec::with_capacity(c);
    for _ in 0..c {
        let mut best = usize::MAX;
        let mut best_score = -1i32;
        for k in (0..c).filter(|&k| !done[k]) {
            let score = arcs[k].iter().filter(|&&a| touched[a] == 1).count() as i32;
            if score > best_score {
                best_score = score;
                best = k;
            }
        }
        done[best] = true;
        order.push(best);
        for &a in &arcs[best] {
            touched[a] += 1;
        }
    }
    order
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Through {
    Slot(usize),
    Far(u32),
}

/// Partial state: pairs of open arcs joined through contracted crossings
/// (sorted, each pair ordered), plus whether a loop has closed yet.
type Key = (Vec<(u32, u32)>, bool);

/// State sum by successive contraction of crossings.
pub fn kauffman_bracket_contracted<C: Coefficient>(pd: &PdCode) -> Result<LaurentPoly<C>> {
    let c = pd.crossing_count();
    if c == 0 {
        return Ok(loops_only(pd.free_loops()));
    }
    let delta = LaurentPoly::<C>::delta();
    let a_pos = LaurentPoly::<C>::monomial(C::one(), 1);
    let a_neg = LaurentPoly::<C>::monomial(C::one(), -1);
    let mut states: HashMap<Key, LaurentPoly<C>> = HashMap::new();
    states.insert((Vec::new(), false), LaurentPoly::one());

    for k in contraction_order(pd) {
        let slots = pd.crossings()[k].ccw_arcs();
        let mut next: HashMap<Key, LaurentPoly<C>> = HashMap::with_capacity(states.len() * 2);
        for ((pairs, closed_any), weight) in states {
            let partner = |a: u32| -> Option<u32> {
                pairs.iter().find_map(|&(x, y)| {
                    if x == a {
                        Some(y)
                    } else if y == a {
                        Some(x)
                    } else {
                        None
                    }
                })
            };
            let mut through = [Through::Far(0); 4];
            for j in 0..4 {
                let a = slots[j];
                let local = |arc: u32| (0..4).find(|&i| i != j && slots[i] == arc);
                through[j] = match partner(a) {
                    Some(p) => match (0..4).find(|&i| slots[i] == p) {
                        Some(i) => Through::Slot(i),
                        None => Through::Far(p),
                    },
                    None => match local(a) {
                        Some(i) => Through::Slot(i),
                        None => Through::Far(a),
                    },
                };
            }
            let kept: Vec<(u32, u32)> = pairs
                .iter()
                .copied()
                .filter(|(x, y)| !slots.contains(x) && !slots.contains(y))
                .collect();

            for (smoothing, factor) in [([1, 0, 3, 2], &a_pos), ([3, 2, 1, 0], &a_neg)] {
                // smoothing[j] is the slot joined to slot j
                let mut seen = [false; 4];
                let mut new_pairs = kept.clone();
                for start in 0..4 {
                    let Through::Far(f1) = through[start] else {
                        continue;
                    };
                    if seen[start] {
                        continue;
                    }
                    let mut j = start;
                    let f2 = loop {
                        seen[j] = true;
                        let m: usize = smoothing[j];
                        seen[m] = true;
                        match through[m] {
                            Through::Far(f) => break f,
                            Through::Slot(i) => j = i,
                        }
                    };
                    new_pairs.push((f1.min(f2), f1.max(f2)));
                }
                let mut loops = 0;
                for start in 0..4 {
                    if seen[start] {
                        continue;
                    }
                    loops += 1;
                    let mut j = start;
                    while !seen[j] {
                        seen[j] = true;
                        let m: usize = smoothing[j];
                        seen[m] = true;
                        match through[m] {
                            Through::Slot(i) => j = i,
                            Through::Far(_) => unreachable!("cycle reached an open end"),
                        }
                    }
                }
                new_pairs.sort_unstable();
                let mut w = &weight * factor;
                let mut closed = closed_any;
                for _ in 0..loops {
                    if closed {
                        w = &w * &delta;
                    }
                    closed = true;
                }
                let entry = next
                    .entry((new_pairs, closed))
                    .or_insert_with(LaurentPoly::zero);
                *entry += &w;
            }
        }
        next.retain(|_, p| !p.is_zero());
        if next.len() > CONTRACTION_STATE_CAP {
            return Err(Error::CapExceeded {
                what: "contraction-state",
                crossings: c,
                cap: CONTRACTION_STATE_CAP,
            });
        }
        states = next;
    }

    let mut out = LaurentPoly::zero();
    for ((pairs, _), w) in states {
        debug_assert!(pairs.is_empty(), "open arcs left after contraction");
        out += &w;
    }
    Ok(&out * &delta.pow(pd.free_loops() as u32))
}
