use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::moves::{apply_with, destabilize, LMoveKind, LMoveSignTable, MarkovMove};
use crate::braid::BraidWord;

/// Size limits for randomly generated words and move sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCaps {
    pub max_strands: usize,
    pub max_length: usize,
}

impl Default for MoveCaps {
    fn default() -> Self {
        MoveCaps {
            max_strands: 6,
            max_length: 12,
        }
    }
}

impl MoveCaps {
    fn admits(&self, w: &BraidWord) -> bool {
        w.strands() <= self.max_strands && w.len() <= self.max_length
    }
}

/// Move families a random draw is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Conjugate,
    StabilizePositive,
    StabilizeNegative,
    Destabilize,
    LMoveOver,
    LMoveUnder,
    Relation,
    FreeReduce,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::Conjugate,
        MoveKind::StabilizePositive,
        MoveKind::StabilizeNegative,
        MoveKind::Destabilize,
        MoveKind::LMoveOver,
        MoveKind::LMoveUnder,
        MoveKind::Relation,
        MoveKind::FreeReduce,
    ];

    pub fn of(m: &MarkovMove) -> MoveKind {
        match *m {
            MarkovMove::Conjugate { .. } => MoveKind::Conjugate,
            MarkovMove::Stabilize { sign } if sign > 0 => MoveKind::StabilizePositive,
            MarkovMove::Stabilize { .. } => MoveKind::StabilizeNegative,
            MarkovMove::Destabilize => MoveKind::Destabilize,
            MarkovMove::LMove {
                kind: LMoveKind::Over,
                ..
            } => MoveKind::LMoveOver,
            MarkovMove::LMove { .. } => MoveKind::LMoveUnder,
            MarkovMove::Relation { .. } => MoveKind::Relation,
            MarkovMove::FreeReduce => MoveKind::FreeReduce,
        }
    }
}

/// Uniform random word: strand count in `1..=max_strands`, length in
/// `0..=max_length`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, caps: &MoveCaps) -> BraidWord {
    let n = rng.gen_range(1..=caps.max_strands.max(1));
    let len = rng.gen_range(0..=caps.max_length);
    random_word_in(rng, n, len)
}

/// Uniform random word of the given shape (empty when `n == 1`).
pub fn random_word_in<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let letters = if n < 2 {
        Vec::new()
    } else {
        (0..len)
            .map(|_| {
                let g = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect()
    };
    BraidWord::from_parts_unchecked(n, letters)
}

fn sign<R: Rng + ?Sized>(rng: &mut R) -> i8 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// Random parameters for a move of `kind` that applies to `w`, if any.
pub fn random_move_of_kind<R: Rng + ?Sized>(
    rng: &mut R,
    w: &BraidWord,
    kind: MoveKind,
) -> Option<MarkovMove> {
    let n = w.strands();
    match kind {
        MoveKind::Conjugate => (n >= 2).then(|| MarkovMove::Conjugate {
            index: rng.gen_range(1..n),
            sign: sign(rng),
        }),
        MoveKind::StabilizePositive => Some(MarkovMove::Stabilize { sign: 1 }),
        MoveKind::StabilizeNegative => Some(MarkovMove::Stabilize { sign: -1 }),
        MoveKind::Destabilize => destabilize(w).map(|_| MarkovMove::Destabilize),
        MoveKind::LMoveOver | MoveKind::LMoveUnder => Some(MarkovMove::LMove {
            kind: if kind == MoveKind::LMoveOver {
                LMoveKind::Over
            } else {
                LMoveKind::Under
            },
            position: rng.gen_range(1..=n),
            depth: rng.gen_range(0..=w.len()),
        }),
        MoveKind::Relation => {
            let sites = w.relation_sites();
            if sites.is_empty() {
                return None;
            }
            let (site, kind, direction) = sites[rng.gen_range(0..sites.len())];
            Some(MarkovMove::Relation {
                site,
                kind,
                direction,
            })
        }
        MoveKind::FreeReduce => Some(MarkovMove::FreeReduce),
    }
}

/// Upper bound on redraws for a single step before falling back to free
/// reduction, which always applies.
const MAX_DRAWS: usize = 64;

/// Applies `length` random moves to `w`. Each step draws a move family
/// uniformly, then parameters; draws that do not apply or would leave the
/// caps are discarded. Caps never shrink below the size of `w` itself.
pub fn random_markov_sequence(
    w: &BraidWord,
    length: usize,
    caps: &MoveCaps,
    seed: u64,
) -> (BraidWord, Vec<MarkovMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sequence_with(&mut rng, w, length, caps, &LMoveSignTable::STANDARD)
}

pub fn random_sequence_with<R: Rng + ?Sized>(
    rng: &mut R,
    w: &BraidWord,
    length: usize,
    caps: &MoveCaps,
    table: &LMoveSignTable,
) -> (BraidWord, Vec<MarkovMove>) {
    let caps = MoveCaps {
        max_strands: caps.max_strands.max(w.strands()),
        max_length: caps.max_length.max(w.len()),
    };
    let mut cur = w.clone();
    let mut moves = Vec::with_capacity(length);
    for _ in 0..length {
        let mut chosen = None;
        for _ in 0..MAX_DRAWS {
            let kind = MoveKind::ALL[rng.gen_range(0..MoveKind::ALL.len())];
            let Some(m) = random_move_of_kind(rng, &cur, kind) else {
                continue;
            };
            match apply_with(&cur, &m, table) {
                Ok(next) if caps.admits(&next) => {
                    chosen = Some((m, next));
                    break;
                }
                _ => continue,
            }
        }
        let (m, next) = chosen.unwrap_or_else(|| (MarkovMove::FreeReduce, cur.free_reduce()));
        moves.push(m);
        cur = next;
    }
    (cur, moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::replay;

    #[test]
    fn zero_length_is_identity() {
        let w = BraidWord::new(3, vec![1, -2]).unwrap();
        assert_eq!(
            random_markov_sequence(&w, 0, &MoveCaps::default(), 9),
            (w, vec![])
        );
    }

    #[test]
    fn deterministic_and_replayable() {
        let w = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        let caps = MoveCaps::default();
        let a = random_markov_sequence(&w, 20, &caps, 42);
        assert_eq!(a, random_markov_sequence(&w, 20, &caps, 42));
        assert_eq!(a.1.len(), 20);
        assert_eq!(replay(&w, &a.1).unwrap(), a.0);
        assert_ne!(a, random_markov_sequence(&w, 20, &caps, 43));
    }

    #[test]
    fn caps_are_respected() {
        let caps = MoveCaps {
            max_strands: 3,
            max_length: 5,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for seed in 0..50 {
            let w = random_word(&mut rng, &caps);
            assert!(caps.admits(&w));
            let mut cur = w.clone();
            for m in random_markov_sequence(&w, 15, &caps, seed).1 {
                cur = crate::markov::apply(&cur, &m).unwrap();
                assert!(caps.admits(&cur), "{cur} after {m:?}");
            }
        }
    }

    #[test]
    fn draws_match_their_kind() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = BraidWord::new(4, vec![1, 3, 2, 2, -3]).unwrap();
        for kind in MoveKind::ALL {
            if let Some(m) = random_move_of_kind(&mut rng, &w, kind) {
                assert_eq!(MoveKind::of(&m), kind);
            }
        }
        assert!(random_move_of_kind(&mut rng, &w, MoveKind::Destabilize).is_none());
        assert!(
            random_move_of_kind(&mut rng, &BraidWord::identity(1), MoveKind::Conjugate).is_none()
        );
    }
}
