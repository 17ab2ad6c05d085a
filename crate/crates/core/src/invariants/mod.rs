//! The verification oracle. Everything here reads PD codes only; nothing
//! looks at braid words.

mod bracket;
mod poly;
mod record;

pub use bracket::{
    bracket_with, kauffman_bracket, kauffman_bracket_contracted, BracketMethod, OracleConfig,
    CONTRACTION_STATE_CAP, DEFAULT_STATE_SUM_CAP,
};
pub use poly::{Coefficient, LaurentPoly};
pub use record::{
    invariant_record, linking_matrix, normalized_bracket, seifert_circle_count, writhe,
    InvariantRecord, LinkingMatrix,
};
