use serde::{Deserialize, Serialize};

use super::bracket::{bracket_with, OracleConfig};
use super::poly::{Coefficient, LaurentPoly};
use crate::diagram::PdCode;
use crate::error::Result;

/// Sum of crossing signs.
pub fn writhe(pd: &PdCode) -> i64 {
    pd.crossings().iter().map(|c| c.sign as i64).sum()
}

/// `(-A^3)^(-w) ⟨D⟩`, invariant under all three Reidemeister moves.
pub fn normalized_bracket<C: Coefficient>(
    pd: &PdCode,
    cfg: &OracleConfig,
) -> Result<LaurentPoly<C>> {
    let b = bracket_with::<C>(pd, cfg)?;
    Ok(&LaurentPoly::writhe_factor(-writhe(pd)) * &b)
}

/// Symmetric matrix of pairwise linking numbers; rows follow the PD's
/// component numbering, free loops last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkingMatrix(Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        LinkingMatrix(rows)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// Whether some simultaneous row/column permutation maps `self` onto
    /// `other`.
    pub fn equivalent(&self, other: &LinkingMatrix) -> bool {
        let n = self.dim();
        if other.dim() != n {
            return false;
        }
        let signature = |m: &LinkingMatrix, i: usize| {
            let mut row = m.0[i].clone();
            row.sort_unstable();
            row
        };
        let sa: Vec<_> = (0..n).map(|i| signature(self, i)).collect();
        let sb: Vec<_> = (0..n).map(|i| signature(other, i)).collect();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, &sa, &sb, 0, &mut image, &mut used)
    }

    fn extend(
        &self,
        other: &LinkingMatrix,
        sa: &[Vec<i64>],
        sb: &[Vec<i64>],
        i: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.dim();
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            if (0..i).any(|k| self.0[i][k] != other.0[j][image[k]]) {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if self.extend(other, sa, sb, i + 1, image, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
}

pub fn linking_matrix(pd: &PdCode) -> LinkingMatrix {
    let (label, traced) = pd.arc_components();
    let n = traced + pd.free_loops();
    let mut m = vec![vec![0i64; n]; n];
    for c in pd.crossings() {
        let (i, j) = (label[c.under_in as usize], label[c.over_in as usize]);
        if i != j {
            m[i][j] += c.sign as i64;
            m[j][i] += c.sign as i64;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            assert!(*v % 2 == 0, "odd crossing-sign sum between two components");
            *v /= 2;
        }
    }
    LinkingMatrix(m)
}

/// Circles left after smoothing every crossing along the orientation.
pub fn seifert_circle_count(pd: &PdCode) -> usize {
    let arcs = pd.arc_count();
    let mut parent: Vec<usize> = (0..=arcs).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut circles = arcs;
    for c in pd.crossings() {
        for (a, b) in [(c.under_in, c.over_out), (c.over_in, c.under_out)] {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra] = rb;
                circles -= 1;
            }
        }
    }
    circles + pd.free_loops()
}

/// The oracle bundle for one diagram.
///
/// `writhe` and `seifert_circles` describe the diagram, not the link, and
/// are left out of [`InvariantRecord::same_link_invariants`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantRecord<C: Coefficient> {
    pub components: usize,
    pub writhe: i64,
    #[serde(bound(serialize = "C: Serialize"))]
    pub normalized_bracket: LaurentPoly<C>,
    pub linking_matrix: LinkingMatrix,
    pub seifert_circles: usize,
}

impl<C: Coefficient> InvariantRecord<C> {
    /// Components, normalized bracket, and linking matrix up to
    /// simultaneous permutation all agree.
    pub fn same_link_invariants(&self, other: &Self) -> bool {
        self.mismatches(other).is_empty()
    }

    /// Names of the isotopy invariants that differ.
    pub fn mismatches(&self, other: &Self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.components != other.components {
            out.push("components");
        }
        if self.normalized_bracket != other.normalized_bracket {
            out.push("normalized_bracket");
        }
        if !self.linking_matrix.equivalent(&other.linking_matrix) {
            out.push("linking_matrix");
        }
        out
    }
}

pub fn invariant_record<C: Coefficient>(
    pd: &PdCode,
    cfg: &OracleConfig,
) -> Result<InvariantRecord<C>> {
    Ok(InvariantRecord {
        components: pd.component_count(),
        writhe: writhe(pd),
        normalized_bracket: normalized_bracket(pd, cfg)?,
        linking_matrix: linking_matrix(pd),
        seifert_circles: seifert_circle_count(pd),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure_to_pd, grid_to_pd, Crossing, GridDiagram};
    use crate::BraidWord;

    type P = LaurentPoly<i64>;

    fn b(n: usize, l: &[i32]) -> PdCode {
        braid_closure_to_pd(&BraidWord::new(n, l.to_vec()).unwrap())
    }

    fn nb(pd: &PdCode) -> P {
        normalized_bracket(pd, &OracleConfig::default()).unwrap()
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&PdCode::unknot()), 0);
        // a positive letter is a negative crossing for descending strands
        assert_eq!(writhe(&b(2, &[1])), -1);
        assert_eq!(writhe(&b(2, &[-1])), 1);
        assert_eq!(writhe(&b(2, &[1, -1])), 0);
    }

    #[test]
    fn kink_closure_normalizes_to_one() {
        // ⟨closure σ1⟩ over its 2 states: A-state has 1 loop, B-state 2
        // loops, hence A + A^-1 δ = -A^-3; the writhe -1 cancels it.
        let pd = b(2, &[1]);
        let raw: P = bracket_with(&pd, &OracleConfig::default()).unwrap();
        assert_eq!(raw, P::monomial(-1, -3));
        assert_eq!(nb(&pd), P::one());
    }

    #[test]
    fn unknot_with_kinks() {
        for l in [&[][..], &[1], &[1, 2], &[-1, 2, -3], &[1, -2, 3]] {
            let n = l.len() + 1;
            assert_eq!(nb(&b(n, l)), P::one(), "{l:?}");
        }
    }

    #[test]
    fn hopf_and_trefoil() {
        // Hopf link from two negative crossings; ⟨Hopf⟩ = -A^4 - A^-4 over
        // its 4 states, times (-A^3)^2.
        assert_eq!(nb(&b(2, &[1, 1])), P::from_terms([(2, -1), (10, -1)]));
        // left-handed trefoil V(t) = -t^-4 + t^-3 + t^-1 with t = A^-4
        assert_eq!(
            nb(&b(2, &[1, 1, 1])),
            P::from_terms([(16, -1), (12, 1), (4, 1)])
        );
        // its mirror
        assert_eq!(
            nb(&b(2, &[-1, -1, -1])),
            P::from_terms([(-16, -1), (-12, 1), (-4, 1)])
        );
    }

    #[test]
    fn mirror_pairs_swap_a() {
        for l in [&[1, 2, -1, 2][..], &[1, 1, 2, -1, -2], &[-2, 1, 1, 1, 2]] {
            let w = BraidWord::new(3, l.to_vec()).unwrap();
            let p = nb(&braid_closure_to_pd(&w));
            let m = nb(&braid_closure_to_pd(&w.mirror()));
            assert_eq!(m, p.mirror());
        }
    }

    #[test]
    fn added_positive_kink_multiplies_bracket_by_minus_a_cubed() {
        // Splice a kink into arc 1 of a diagram: arc 1 now runs into the
        // new crossing, loops once, and leaves on a fresh arc. Both planar
        // positive kinks are tried.
        let bases = [b(2, &[1, 1, 1]), b(3, &[1, -2, 1, 2]), b(2, &[1, 1])];
        for base in bases {
            let raw: P = bracket_with(&base, &OracleConfig::default()).unwrap();
            for over_first in [false, true] {
                let m = base.arc_count() as u32;
                let (l, out) = (m + 1, m + 2);
                let mut xs: Vec<Crossing> = base
                    .crossings()
                    .iter()
                    .map(|c| {
                        let mut c = *c;
                        // whoever received arc 1 now receives `out`
                        if c.under_in == 1 {
                            c.under_in = out;
                        }
                        if c.over_in == 1 {
                            c.over_in = out;
                        }
                        c
                    })
                    .collect();
                xs.push(if over_first {
                    Crossing {
                        under_in: l,
                        over_in: 1,
                        under_out: out,
                        over_out: l,
                        sign: 1,
                    }
                } else {
                    Crossing {
                        under_in: 1,
                        over_in: l,
                        under_out: l,
                        over_out: out,
                        sign: 1,
                    }
                });
                let kinked = PdCode::new(xs, base.free_loops()).unwrap();
                let got: P = bracket_with(&kinked, &OracleConfig::default()).unwrap();
                assert_eq!(got, &raw * &P::monomial(-1, 3));
                assert_eq!(nb(&kinked), nb(&base));
            }
        }
    }

    #[test]
    fn linking_examples() {
        assert_eq!(linking_matrix(&b(2, &[1, 1, 1])).rows(), &[vec![0]]);
        assert_eq!(
            linking_matrix(&b(2, &[1, 1])).rows(),
            &[vec![0, -1], vec![-1, 0]]
        );
        assert_eq!(
            linking_matrix(&b(2, &[1, -1])).rows(),
            &[vec![0, 0], vec![0, 0]]
        );
        // 3 strands, pure braid σ1² σ2²: strands 2-3 and 1-2 linked
        let m = linking_matrix(&b(3, &[1, 1, 2, 2]));
        assert_eq!(m.dim(), 3);
    }

    #[test]
    fn linking_equivalence_under_permutation() {
        let a = LinkingMatrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 2], vec![0, 2, 0]]);
        let c = LinkingMatrix::from_rows(vec![vec![0, 2, 1], vec![2, 0, 0], vec![1, 0, 0]]);
        assert!(a.equivalent(&c));
        let d = LinkingMatrix::from_rows(vec![vec![0, 2, 0], vec![2, 0, 1], vec![0, 1, 0]]);
        assert!(a.equivalent(&d));
        let e = LinkingMatrix::from_rows(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(!a.equivalent(&e));
        assert!(!a.equivalent(&LinkingMatrix::from_rows(vec![vec![0]])));
    }

    #[test]
    fn seifert_examples() {
        assert_eq!(seifert_circle_count(&PdCode::unknot()), 1);
        assert_eq!(seifert_circle_count(&b(2, &[1, 1])), 2);
        assert_eq!(seifert_circle_count(&b(4, &[1, -2, 3, 3, -1])), 4);
    }

    #[test]
    fn record_for_unknot_grid() {
        let g = GridDiagram::new(vec![1, 2], vec![2, 1]).unwrap();
        let r: InvariantRecord<i64> =
            invariant_record(&grid_to_pd(&g), &OracleConfig::default()).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.writhe, 0);
        assert!(r.normalized_bracket.is_one());
        assert_eq!(r.linking_matrix.rows(), &[vec![0]]);
        assert_eq!(r.seifert_circles, 1);
    }

    #[test]
    fn cyclic_grid_is_knotted() {
        let g = GridDiagram::new(vec![1, 2, 3, 4, 5], vec![3, 4, 5, 1, 2]).unwrap();
        let r: InvariantRecord<i64> =
            invariant_record(&grid_to_pd(&g), &OracleConfig::default()).unwrap();
        let unknot: InvariantRecord<i64> =
            invariant_record(&PdCode::unknot(), &OracleConfig::default()).unwrap();
        assert!(!r.same_link_invariants(&unknot));
        assert_eq!(r.mismatches(&unknot), vec!["normalized_bracket"]);
    }
}
