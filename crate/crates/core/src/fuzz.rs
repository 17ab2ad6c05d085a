//! Random move-sequence trials checked step by step against the oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{BraidWord, RelationKind};
use crate::diagram::braid_closure_to_pd;
use crate::error::Result;
use crate::invariants::{invariant_record, InvariantRecord, OracleConfig};
use crate::markov::{
    apply_with, random_sequence_with, random_word, LMoveSignTable, MarkovMove, MoveCaps,
};

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub cases: usize,
    pub seed: u64,
    pub caps: MoveCaps,
    /// Moves per case.
    pub steps: usize,
    pub sign_table: LMoveSignTable,
    pub oracle: OracleConfig,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            cases: 100,
            seed: 0,
            caps: MoveCaps::default(),
            steps: 10,
            sign_table: LMoveSignTable::STANDARD,
            oracle: OracleConfig::auto(),
        }
    }
}

/// A single move that changes the closure's invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub word: BraidWord,
    #[serde(rename = "move")]
    pub mv: MarkovMove,
    pub result: BraidWord,
    pub mismatches: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub cases: usize,
    pub moves_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn record(w: &BraidWord, oracle: &OracleConfig) -> Result<InvariantRecord<i64>> {
    invariant_record(&braid_closure_to_pd(w), oracle)
}

/// Runs `cfg.cases` independent cases in parallel. Case `k` draws from
/// stream `k` of the seeded generator, so results do not depend on the
/// thread count. The first failing case (by index) is minimized.
pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    let outcomes: Vec<Result<Option<Counterexample>>> = (0..cfg.cases)
        .into_par_iter()
        .map(|case| run_case(cfg, case))
        .collect();
    let mut counterexample = None;
    for o in outcomes {
        if let Some(c) = o? {
            counterexample = Some(c);
            break;
        }
    }
    let counterexample = match counterexample {
        Some(c) => Some(minimize(c, &cfg.sign_table, &cfg.oracle)?),
        None => None,
    };
    Ok(FuzzReport {
        cases: cfg.cases,
        moves_checked: cfg.cases * cfg.steps,
        counterexample,
    })
}

fn run_case(cfg: &FuzzConfig, case: usize) -> Result<Option<Counterexample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(case as u64);
    let start = random_word(&mut rng, &cfg.caps);
    let (_, moves) = random_sequence_with(&mut rng, &start, cfg.steps, &cfg.caps, &cfg.sign_table);
    let mut cur = start;
    let mut cur_rec = record(&cur, &cfg.oracle)?;
    for mv in moves {
        let next = apply_with(&cur, &mv, &cfg.sign_table)?;
        let next_rec = record(&next, &cfg.oracle)?;
        let mismatches = cur_rec.mismatches(&next_rec);
        if !mismatches.is_empty() {
            return Ok(Some(Counterexample {
                case,
                word: cur,
                mv,
                result: next,
                mismatches,
            }));
        }
        cur = next;
        cur_rec = next_rec;
    }
    Ok(None)
}

/// The move adjusted for deleting letter `j`, if it still makes sense.
fn shift_move(mv: &MarkovMove, j: usize) -> Option<MarkovMove> {
    match *mv {
        MarkovMove::LMove {
            kind,
            position,
            depth,
        } => Some(MarkovMove::LMove {
            kind,
            position,
            depth: if j < depth { depth - 1 } else { depth },
        }),
        MarkovMove::Relation {
            site,
            kind,
            direction,
        } => {
            let width = match kind {
                RelationKind::Commute => 2,
                RelationKind::YangBaxter => 3,
            };
            if j >= site && j < site + width {
                None
            } else {
                Some(MarkovMove::Relation {
                    site: if j < site { site - 1 } else { site },
                    kind,
                    direction,
                })
            }
        }
        other => Some(other),
    }
}

/// Deletes letters from the word one at a time while the move still
/// applies and still breaks the invariants.
fn minimize(
    mut c: Counterexample,
    table: &LMoveSignTable,
    oracle: &OracleConfig,
) -> Result<Counterexample> {
    'outer: loop {
        for j in 0..c.word.len() {
            let Some(mv) = shift_move(&c.mv, j) else {
                continue;
            };
            let mut letters = c.word.letters().to_vec();
            letters.remove(j);
            let word = BraidWord::from_parts_unchecked(c.word.strands(), letters);
            let Ok(result) = apply_with(&word, &mv, table) else {
                continue;
            };
            let mismatches = record(&word, oracle)?.mismatches(&record(&result, oracle)?);
            if !mismatches.is_empty() {
                c = Counterexample {
                    case: c.case,
                    word,
                    mv,
                    result,
                    mismatches,
                };
                continue 'outer;
            }
        }
        return Ok(c);
    }
}
