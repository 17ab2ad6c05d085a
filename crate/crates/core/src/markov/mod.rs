//! Markov moves, L-moves, random move sequences and bounded search.

mod moves;
mod random;
mod search;

pub use moves::{
    apply, apply_with, conjugate, destabilize, l_move, l_move_with, replay, replay_with, stabilize,
    LMoveKind, LMoveSignTable, LMoveSigns, MarkovMove,
};
pub use random::{
    random_markov_sequence, random_move_of_kind, random_sequence_with, random_word, random_word_in,
    MoveCaps, MoveKind,
};
pub use search::{bounded_equivalence_search, candidate_moves, SearchCaps, SearchOutcome};
