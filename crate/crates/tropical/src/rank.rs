//! Tropical rank and symmetric tropical rank with witness certificates.
//!
//! The rank of a matrix is the largest `r` such that some `r x r` submatrix
//! is nonsingular under the chosen mode; equivalently the matrix lies in the
//! prevariety of `(r+1) x (r+1)` minors but not in that of `r x r` minors.
//! Nonsingularity is monotone (a nonsingular `r x r` submatrix contains a
//! nonsingular `(r-1) x (r-1)` one), so the search ascends `r`, extending the
//! previous witness when possible and falling back to a full lexicographic
//! scan before concluding that a level is exhausted.

use itertools::Itertools;
use rayon::prelude::*;

use crate::assignment::{is_sym_singular, is_trop_singular};
use crate::error::{Error, Result};
use crate::matrix::{SubIndex, SymMonomial, TropMatrix};
use crate::scalar::Scalar;
use crate::Mode;

/// A rank value with a nonsingular witness submatrix.
///
/// The witness is the lexicographically smallest nonsingular `rank x rank`
/// selection; every `(rank+1) x (rank+1)` submatrix is singular under `mode`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub witness: SubIndex,
    pub mode: Mode,
}

impl RankResult {
    /// Re-checks that the stored witness is indeed nonsingular.
    pub fn verify<S: Scalar>(&self, a: &TropMatrix<S>) -> Result<bool> {
        Ok(!is_singular_under(a, &self.witness, self.mode)?)
    }
}

/// Singularity of the submatrix selected by `s`, under `mode`.
pub fn is_singular_under<S: Scalar>(
    a: &TropMatrix<S>,
    s: &SubIndex,
    mode: Mode,
) -> Result<bool> {
    match mode {
        Mode::Standard => is_trop_singular(&a.submatrix(s)?),
        Mode::Symmetric => is_sym_singular(a, s),
    }
}

/// Lexicographically first nonsingular `r x r` submatrix under `mode`, if any.
///
/// The scan parallelizes over row sets but reports the sequentially first
/// hit, so the result is independent of thread count.
pub(crate) fn find_nonsingular<S: Scalar>(
    a: &TropMatrix<S>,
    r: usize,
    mode: Mode,
) -> Option<SubIndex> {
    let col_sets: Vec<Vec<usize>> = (1..=a.cols()).combinations(r).collect();
    let row_sets: Vec<Vec<usize>> = (1..=a.rows()).combinations(r).collect();
    row_sets
        .par_iter()
        .find_map_first(|rows| {
            col_sets.iter().find_map(|cols| {
                let s = SubIndex::new(rows.clone(), cols.clone())
                    .expect("combinations are valid index sets");
                let singular = is_singular_under(a, &s, mode)
                    .expect("scan selections are in bounds and mode was validated");
                (!singular).then_some(s)
            })
        })
}

/// First nonsingular extension of `witness` by one row and one column.
fn find_extension<S: Scalar>(
    a: &TropMatrix<S>,
    witness: &SubIndex,
    mode: Mode,
) -> Option<SubIndex> {
    let grow = |set: &[usize], extra: usize| {
        let mut v = set.to_vec();
        let pos = v.binary_search(&extra).err()?;
        v.insert(pos, extra);
        Some(v)
    };
    for i in 1..=a.rows() {
        let Some(rows) = grow(witness.row_indices(), i) else { continue };
        for j in 1..=a.cols() {
            let Some(cols) = grow(witness.col_indices(), j) else { continue };
            let s = SubIndex::new(rows.clone(), cols).expect("grown sets stay valid");
            if !is_singular_under(a, &s, mode).expect("extension selections are in bounds") {
                return Some(s);
            }
        }
    }
    None
}

fn rank_under<S: Scalar>(a: &TropMatrix<S>, mode: Mode) -> Result<RankResult> {
    if mode == Mode::Symmetric {
        a.ensure_symmetric()?;
    }
    let max = a.rows().min(a.cols());
    // 1x1 minors are single monomials, so rank >= 1 always.
    let mut rank = 1;
    let mut witness = SubIndex::new(vec![1], vec![1]).expect("1x1 selection");
    while rank < max {
        let next = match find_extension(a, &witness, mode) {
            Some(w) => Some(w),
            None => find_nonsingular(a, rank + 1, mode),
        };
        match next {
            Some(w) => {
                witness = w;
                rank += 1;
            }
            None => break,
        }
    }
    // The ascent may have settled on an extension witness; re-scan the final
    // level so the reported certificate is the lexicographic minimum.
    let witness = find_nonsingular(a, rank, mode)
        .expect("a nonsingular witness exists at the established rank");
    Ok(RankResult { rank, witness, mode })
}

/// Tropical rank: the largest `r` admitting a tropically nonsingular
/// `r x r` submatrix.
pub fn tropical_rank<S: Scalar>(a: &TropMatrix<S>) -> RankResult {
    rank_under(a, Mode::Standard).expect("standard mode has no preconditions")
}

/// Symmetric tropical rank: as [`tropical_rank`], with singularity taken up
/// to the identification `X[i,j] = X[j,i]`, over all (not only principal)
/// submatrices.
pub fn symmetric_tropical_rank<S: Scalar>(a: &TropMatrix<S>) -> Result<RankResult> {
    rank_under(a, Mode::Symmetric)
}

/// First (lexicographically) nonsingular `r x r` selection under `mode`, or
/// `None` when the matrix lies in the prevariety of `r x r` minors.
pub fn first_nonsingular_submatrix<S: Scalar>(
    a: &TropMatrix<S>,
    r: usize,
    mode: Mode,
) -> Result<Option<SubIndex>> {
    let max = a.rows().min(a.cols());
    if r < 1 || r > max {
        return Err(Error::InvalidMinorSize { r, max });
    }
    if mode == Mode::Symmetric {
        a.ensure_symmetric()?;
    }
    Ok(find_nonsingular(a, r, mode))
}

/// Whether every `r x r` submatrix of `a` is singular under `mode`;
/// equivalent to `rank < r`.
pub fn in_prevariety<S: Scalar>(a: &TropMatrix<S>, r: usize, mode: Mode) -> Result<bool> {
    Ok(first_nonsingular_submatrix(a, r, mode)?.is_none())
}

/// Size guard for the brute-force oracle.
pub const ORACLE_LIMIT: usize = 6;

/// Rank by exhaustive submatrix scan with factorial determinant enumeration.
///
/// Deliberately shares nothing with the assignment-based path: minimizing
/// bijections come from scanning all `r!` permutations of each selection.
/// Refuses matrices with min dimension above [`ORACLE_LIMIT`].
pub fn rank_oracle<S: Scalar>(a: &TropMatrix<S>, mode: Mode) -> Result<usize> {
    let max = a.rows().min(a.cols());
    if max > ORACLE_LIMIT {
        return Err(Error::OracleSizeExceeded { limit: ORACLE_LIMIT });
    }
    if mode == Mode::Symmetric {
        a.ensure_symmetric()?;
    }
    let mut rank = 0;
    for r in 1..=max {
        let found = (1..=a.rows()).combinations(r).any(|rows| {
            (1..=a.cols())
                .combinations(r)
                .any(|cols| !oracle_singular(a, &rows, &cols, mode))
        });
        if found {
            rank = r;
        }
    }
    Ok(rank)
}

fn oracle_singular<S: Scalar>(
    a: &TropMatrix<S>,
    rows: &[usize],
    cols: &[usize],
    mode: Mode,
) -> bool {
    let r = rows.len();
    let mut best: Option<S> = None;
    let mut minimizers: Vec<Vec<usize>> = Vec::new();
    for perm in (0..r).permutations(r) {
        let total = perm
            .iter()
            .enumerate()
            .map(|(t, &p)| a.entry(rows[t], cols[p]).clone())
            .fold(S::zero(), |acc, x| acc + x);
        match &best {
            Some(b) if total > *b => {}
            Some(b) if total == *b => minimizers.push(perm),
            _ => {
                best = Some(total);
                minimizers = vec![perm];
            }
        }
    }
    match mode {
        Mode::Standard => minimizers.len() >= 2,
        Mode::Symmetric => {
            let mut seen: Vec<SymMonomial> = Vec::new();
            for perm in &minimizers {
                let m = SymMonomial::from_pairs(
                    perm.iter().enumerate().map(|(t, &p)| (rows[t], cols[p])),
                );
                if !seen.contains(&m) {
                    seen.push(m);
                }
            }
            seen.len() >= 2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Matrix;

    #[test]
    fn zeros_have_rank_one() {
        let a = Matrix::zeros(3, 4);
        let r = tropical_rank(&a);
        assert_eq!(r.rank, 1);
        assert_eq!(r.witness, SubIndex::new(vec![1], vec![1]).unwrap());
        assert_eq!(rank_oracle(&a, Mode::Standard).unwrap(), 1);
    }

    #[test]
    fn diag_ones_standard_vs_symmetric() {
        let a = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
            .with_symmetric_marker()
            .unwrap();
        assert_eq!(tropical_rank(&a).rank, 2);
        assert_eq!(symmetric_tropical_rank(&a).unwrap().rank, 3);
        assert_eq!(rank_oracle(&a, Mode::Standard).unwrap(), 2);
        assert_eq!(rank_oracle(&a, Mode::Symmetric).unwrap(), 3);
    }

    #[test]
    fn prevariety_membership_matches_rank() {
        let a = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let rank = tropical_rank(&a).rank;
        for r in 1..=3 {
            assert_eq!(in_prevariety(&a, r, Mode::Standard).unwrap(), rank < r);
        }
        assert!(in_prevariety(&a, 4, Mode::Standard).is_err());
        assert!(in_prevariety(&a, 0, Mode::Standard).is_err());
    }

    #[test]
    fn one_by_one_minors_never_vanish() {
        let a = Matrix::zeros(4, 4);
        assert!(!in_prevariety(&a, 1, Mode::Standard).unwrap());
    }

    #[test]
    fn witness_verifies() {
        let a = Matrix::from_ints(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        let r = tropical_rank(&a);
        assert!(r.verify(&a).unwrap());
    }

    #[test]
    fn symmetric_rank_requires_marker() {
        let a = Matrix::zeros(2, 2);
        assert!(symmetric_tropical_rank(&a).is_err());
        assert!(in_prevariety(&a, 2, Mode::Symmetric).is_err());
        assert!(rank_oracle(&a, Mode::Symmetric).is_err());
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        let a = Matrix::zeros(7, 7);
        assert_eq!(
            rank_oracle(&a, Mode::Standard).unwrap_err(),
            Error::OracleSizeExceeded { limit: ORACLE_LIMIT }
        );
    }
}
