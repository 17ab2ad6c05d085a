use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moves::{apply, destabilize, LMoveKind, MarkovMove};
use crate::braid::BraidWord;

/// Limits for [`bounded_equivalence_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    /// Maximum number of moves on a path, not counting free reductions.
    pub depth: usize,
    pub strands: usize,
    pub length: usize,
    /// Maximum number of distinct words visited.
    pub max_states: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            depth: 3,
            strands: 4,
            length: 8,
            max_states: 200_000,
        }
    }
}

/// Result of a bounded search. `path` is `None` when nothing was found
/// within the caps, which says nothing about inequivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub path: Option<Vec<MarkovMove>>,
    pub explored: usize,
    /// True if the state cap cut the search short.
    pub truncated: bool,
}

/// Every move applicable to `w`, in a fixed order.
pub fn candidate_moves(w: &BraidWord) -> Vec<MarkovMove> {
    let n = w.strands();
    let mut out: Vec<MarkovMove> = w
        .relation_sites()
        .into_iter()
        .map(|(site, kind, direction)| MarkovMove::Relation {
            site,
            kind,
            direction,
        })
        .collect();
    for index in 1..n {
        for sign in [1, -1] {
            out.push(MarkovMove::Conjugate { index, sign });
        }
    }
    if destabilize(w).is_some() {
        out.push(MarkovMove::Destabilize);
    }
    out.push(MarkovMove::Stabilize { sign: 1 });
    out.push(MarkovMove::Stabilize { sign: -1 });
    for kind in [LMoveKind::Over, LMoveKind::Under] {
        for position in 1..=n {
            for depth in 0..=w.len() {
                out.push(MarkovMove::LMove {
                    kind,
                    position,
                    depth,
                });
            }
        }
    }
    out
}

struct Node {
    word: BraidWord,
    parent: usize,
    steps: Vec<MarkovMove>,
}

/// Breadth-first search from `w1` for a move path ending at the free
/// reduction of `w2`. States are identified up to free reduction; a move
/// whose result is not freely reduced is followed by `FreeReduce` on the
/// path. Replaying the path on `w1` yields `w2.free_reduce()` exactly.
pub fn bounded_equivalence_search(
    w1: &BraidWord,
    w2: &BraidWord,
    caps: &SearchCaps,
) -> SearchOutcome {
    if w1 == w2 {
        return SearchOutcome {
            path: Some(Vec::new()),
            explored: 1,
            truncated: false,
        };
    }
    let target = w2.free_reduce();
    let start = w1.free_reduce();
    let start_steps = if &start == w1 {
        Vec::new()
    } else {
        vec![MarkovMove::FreeReduce]
    };
    let mut nodes = vec![Node {
        word: start.clone(),
        parent: usize::MAX,
        steps: start_steps,
    }];
    let mut seen: HashMap<BraidWord, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    if start == target {
        return found(&nodes, 0, 1);
    }
    let fits = |w: &BraidWord| w.strands() <= caps.strands && w.len() <= caps.length;
    let mut frontier = vec![0usize];
    let mut truncated = false;
    for _ in 0..caps.depth {
        if frontier.is_empty() {
            break;
        }
        let expansions: Vec<Vec<(MarkovMove, BraidWord)>> = frontier
            .par_iter()
            .map(|&idx| {
                let w = &nodes[idx].word;
                candidate_moves(w)
                    .into_iter()
                    .filter_map(|m| apply(w, &m).ok().map(|next| (m, next)))
                    .filter(|(_, next)| fits(next))
                    .collect()
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (&parent, children) in frontier.iter().zip(expansions) {
            for (m, raw) in children {
                let word = raw.free_reduce();
                if seen.contains_key(&word) {
                    continue;
                }
                if nodes.len() >= caps.max_states {
                    truncated = true;
                    break;
                }
                let mut steps = vec![m];
                if word != raw {
                    steps.push(MarkovMove::FreeReduce);
                }
                let idx = nodes.len();
                seen.insert(word.clone(), idx);
                let hit = word == target;
                nodes.push(Node {
                    word,
                    parent,
                    steps,
                });
                if hit {
                    return found(&nodes, idx, nodes.len());
                }
                next_frontier.push(idx);
            }
            if truncated {
                break;
            }
        }
        if truncated {
            break;
        }
        frontier = next_frontier;
    }
    SearchOutcome {
        path: None,
        explored: nodes.len(),
        truncated,
    }
}

fn found(nodes: &[Node], mut idx: usize, explored: usize) -> SearchOutcome {
    let mut chunks = Vec::new();
    while idx != usize::MAX {
        chunks.push(nodes[idx].steps.clone());
        idx = nodes[idx].parent;
    }
    let path = chunks.into_iter().rev().flatten().collect();
    SearchOutcome {
        path: Some(path),
        explored,
        truncated: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{Direction, RelationKind};
    use crate::markov::replay;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn identical_words() {
        let x = w(3, &[1, -1, 2]);
        let out = bounded_equivalence_search(&x, &x, &SearchCaps::default());
        assert_eq!(out.path, Some(vec![]));
    }

    #[test]
    fn stabilization_found() {
        let out = bounded_equivalence_search(&w(1, &[]), &w(2, &[1]), &SearchCaps::default());
        assert_eq!(out.path, Some(vec![MarkovMove::Stabilize { sign: 1 }]));
    }

    #[test]
    fn braid_relation_found() {
        let out = bounded_equivalence_search(
            &w(3, &[1, 2, 1]),
            &w(3, &[2, 1, 2]),
            &SearchCaps::default(),
        );
        assert_eq!(
            out.path,
            Some(vec![MarkovMove::Relation {
                site: 0,
                kind: RelationKind::YangBaxter,
                direction: Direction::Forward
            }])
        );
    }

    #[test]
    fn zero_depth_finds_nothing() {
        let caps = SearchCaps {
            depth: 0,
            ..SearchCaps::default()
        };
        let out = bounded_equivalence_search(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2]), &caps);
        assert_eq!(out.path, None);
    }

    #[test]
    fn unreduced_endpoints() {
        let a = w(2, &[1, -1, 1]);
        let b = w(2, &[1, 1, -1]);
        let out = bounded_equivalence_search(&a, &b, &SearchCaps::default());
        assert_eq!(out.path, Some(vec![MarkovMove::FreeReduce]));
        assert_eq!(replay(&a, &out.path.unwrap()).unwrap(), b.free_reduce());
    }

    #[test]
    fn rotation_by_conjugation() {
        let a = w(3, &[1, 2]);
        let b = w(3, &[2, 1]);
        let out = bounded_equivalence_search(&a, &b, &SearchCaps::default());
        let path = out.path.unwrap();
        assert_eq!(
            path,
            vec![
                MarkovMove::Conjugate { index: 1, sign: 1 },
                MarkovMove::FreeReduce
            ]
        );
        assert_eq!(replay(&a, &path).unwrap(), b);
    }

    #[test]
    fn state_cap_truncates() {
        let caps = SearchCaps {
            max_states: 5,
            ..SearchCaps::default()
        };
        let out = bounded_equivalence_search(&w(3, &[1, 2, 1]), &w(4, &[3, 3, 3]), &caps);
        assert_eq!(out.path, None);
        assert!(out.truncated);
        assert!(out.explored <= 5);
    }
}
