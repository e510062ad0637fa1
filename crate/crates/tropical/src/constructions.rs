//! The built-in matrix catalog and executable rank-controlled constructions:
//! strict combination coefficients, appended tropical linear combinations,
//! and rank-incrementing borders, in both standard and symmetric flavors.

use std::collections::BTreeMap;

use crate::assignment::{is_trop_singular, tropdet};
use crate::error::{Error, Result};
use crate::matrix::{Bijection, TropMatrix};
use crate::scalar::Scalar;

/// Tropical combination coefficients keyed by 1-based column (or row) index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients<S> {
    map: BTreeMap<usize, S>,
}

impl<S: Scalar> Coefficients<S> {
    pub fn new(map: BTreeMap<usize, S>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::EmptySelection);
        }
        if map.keys().any(|&k| k == 0) {
            return Err(Error::Parse { line: 0, message: "indices are 1-based".into() });
        }
        Ok(Coefficients { map })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, S)>) -> Result<Self> {
        Self::new(pairs.into_iter().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.map.iter().map(|(&k, v)| (k, v))
    }

    pub fn get(&self, index: usize) -> Option<&S> {
        self.map.get(&index)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    fn max_index(&self) -> usize {
        *self.map.keys().next_back().expect("coefficients are nonempty")
    }
}

/// Coefficients `c` with `c[s(i)] + a(i, s(i)) < c[j] + a(i, j)` for every row
/// `i` and column `j != s(i)`: the witness bijection is strictly cheapest in
/// each row after scaling columns by `c`.
///
/// Such coefficients exist exactly when `m` is tropically nonsingular and `s`
/// realizes its determinant. They solve the difference-constraint system
/// `c[s(i)] - c[j] <= a(i,j) - a(i,s(i)) - eps` by shortest paths, with the
/// slack `eps` set to `(min positive reduced cost) / 2n`, which keeps every
/// cycle positive, so the tightened system stays feasible.
pub fn strict_scaling_coefficients<S: Scalar>(
    m: &TropMatrix<S>,
    sigma: &Bijection,
) -> Result<Coefficients<S>> {
    let n = m.ensure_square()?;
    if sigma.domain() != (1..=n).collect::<Vec<_>>()
        || sigma.image().iter().any(|&j| j > n)
    {
        return Err(Error::WitnessNotMinimal);
    }
    let det = tropdet(m)?;
    let sigma_cost = sigma
        .pairs()
        .map(|(i, j)| m.entry(i, j).clone())
        .fold(S::zero(), |acc, x| acc + x);
    if sigma_cost != det.value {
        return Err(Error::WitnessNotMinimal);
    }
    if is_trop_singular(m)? {
        return Err(Error::SingularInput);
    }

    if n == 1 {
        return Coefficients::from_pairs([(sigma.image()[0], S::zero())]);
    }

    // Edge j -> sigma(i) with weight a(i,j) - a(i,sigma(i)); nodes are columns.
    let mut edges: Vec<(usize, usize, S)> = Vec::with_capacity(n * (n - 1));
    for (i, si) in sigma.pairs() {
        for j in 1..=n {
            if j != si {
                edges.push((j - 1, si - 1, m.entry(i, j).clone() - m.entry(i, si).clone()));
            }
        }
    }

    let base = bellman_ford(n, &edges, &S::zero())
        .expect("zero-slack system is feasible for an optimal witness");
    let min_positive_rc = edges
        .iter()
        .filter_map(|(from, to, w)| {
            let rc = w.clone() + base[*from].clone() - base[*to].clone();
            (rc > S::zero()).then_some(rc)
        })
        .min()
        .expect("a nonsingular matrix leaves some constraint slack");
    let eps = min_positive_rc.div_int(2 * n as u32);
    let dist = bellman_ford(n, &edges, &eps)
        .expect("slack below the minimum cycle mean keeps the system feasible");

    let coefficients =
        Coefficients::from_pairs((1..=n).map(|j| (j, dist[j - 1].clone())))?;
    debug_assert!(check_strict(m, sigma, &coefficients));
    Ok(coefficients)
}

/// Verifies the strict/equality pattern of [`strict_scaling_coefficients`] directly.
pub fn check_strict<S: Scalar>(
    m: &TropMatrix<S>,
    sigma: &Bijection,
    c: &Coefficients<S>,
) -> bool {
    sigma.pairs().all(|(i, si)| {
        let matched = match c.get(si) {
            Some(v) => v.clone() + m.entry(i, si).clone(),
            None => return false,
        };
        (1..=m.cols()).all(|j| {
            let Some(cj) = c.get(j) else { return false };
            let other = cj.clone() + m.entry(i, j).clone();
            if j == si {
                other == matched
            } else {
                matched < other
            }
        })
    })
}

/// Bellman-Ford over `n` nodes from a virtual source, with `eps` subtracted
/// from every edge. Returns `None` on a negative cycle.
fn bellman_ford<S: Scalar>(n: usize, edges: &[(usize, usize, S)], eps: &S) -> Option<Vec<S>> {
    let mut dist = vec![S::zero(); n];
    for round in 0..n {
        let mut changed = false;
        for (from, to, w) in edges {
            let candidate = dist[*from].clone() + w.clone() - eps.clone();
            if candidate < dist[*to] {
                if round + 1 == n {
                    return None;
                }
                dist[*to] = candidate;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Some(dist)
}

fn combination_entry<S: Scalar>(
    values: impl Iterator<Item = S>,
    coeffs: impl Iterator<Item = S>,
) -> S {
    values
        .zip(coeffs)
        .map(|(a, c)| a + c)
        .min()
        .expect("combination domains are nonempty")
}

/// Appends the tropical linear combination `min_k (c_k + column_k)` as a new
/// last column. Preserves tropical rank; clears the symmetric marker.
pub fn append_combination_col<S: Scalar>(
    a: &TropMatrix<S>,
    coeffs: &Coefficients<S>,
) -> Result<TropMatrix<S>> {
    if coeffs.max_index() > a.cols() {
        return Err(Error::IndexOutOfRange {
            axis: crate::error::Axis::Col,
            index: coeffs.max_index(),
            bound: a.cols(),
        });
    }
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(a.rows());
    for i in 1..=a.rows() {
        let mut row: Vec<S> = (1..=a.cols()).map(|j| a.entry(i, j).clone()).collect();
        row.push(combination_entry(
            coeffs.domain().map(|k| a.entry(i, k).clone()),
            coeffs.iter().map(|(_, c)| c.clone()),
        ));
        rows.push(row);
    }
    TropMatrix::from_rows(rows)
}

/// Row analog of [`append_combination_col`].
pub fn append_combination_row<S: Scalar>(
    a: &TropMatrix<S>,
    coeffs: &Coefficients<S>,
) -> Result<TropMatrix<S>> {
    if coeffs.max_index() > a.rows() {
        return Err(Error::IndexOutOfRange {
            axis: crate::error::Axis::Row,
            index: coeffs.max_index(),
            bound: a.rows(),
        });
    }
    let mut rows: Vec<Vec<S>> = (1..=a.rows())
        .map(|i| (1..=a.cols()).map(|j| a.entry(i, j).clone()).collect())
        .collect();
    let new_row: Vec<S> = (1..=a.cols())
        .map(|j| {
            combination_entry(
                coeffs.domain().map(|k| a.entry(k, j).clone()),
                coeffs.iter().map(|(_, c)| c.clone()),
            )
        })
        .collect();
    rows.push(new_row);
    TropMatrix::from_rows(rows)
}

fn border_values<S: Scalar>(
    a: &TropMatrix<S>,
    p: Option<S>,
    m: Option<S>,
) -> Result<(S, S)> {
    let p = p.unwrap_or_else(|| a.max_entry().clone() + S::one());
    let m = m.unwrap_or_else(|| a.min_entry().clone() - S::one());
    if p <= *a.max_entry() {
        return Err(Error::OutsideTheorem(
            "border value P must exceed every entry".into(),
        ));
    }
    if m >= *a.min_entry() {
        return Err(Error::OutsideTheorem(
            "border value M must be below every entry".into(),
        ));
    }
    Ok((p, m))
}

/// Borders `a` with a row and column of `P` and corner `M`, where `P` exceeds
/// and `M` undercuts every entry (defaults: `max+1`, `min-1`). Tropical rank
/// increases by exactly one.
pub fn border_pm<S: Scalar>(
    a: &TropMatrix<S>,
    p: Option<S>,
    m: Option<S>,
) -> Result<TropMatrix<S>> {
    let (p, m) = border_values(a, p, m)?;
    let mut rows: Vec<Vec<S>> = (1..=a.rows())
        .map(|i| {
            let mut row: Vec<S> = (1..=a.cols()).map(|j| a.entry(i, j).clone()).collect();
            row.push(p.clone());
            row
        })
        .collect();
    let mut last = vec![p; a.cols()];
    last.push(m);
    rows.push(last);
    TropMatrix::from_rows(rows)
}

/// Appends a combination column and then the same-coefficient combination row
/// of the extended matrix, producing an `(n+1) x (n+1)` symmetric matrix with
/// the same symmetric tropical rank.
pub fn sym_append<S: Scalar>(
    a: &TropMatrix<S>,
    coeffs: &Coefficients<S>,
) -> Result<TropMatrix<S>> {
    a.ensure_symmetric()?;
    let widened = append_combination_col(a, coeffs)?;
    append_combination_row(&widened, coeffs)?.with_symmetric_marker()
}

/// Symmetric border: as [`border_pm`] with the marker preserved; symmetric
/// tropical rank increases by exactly one.
pub fn sym_border_pm<S: Scalar>(
    a: &TropMatrix<S>,
    p: Option<S>,
    m: Option<S>,
) -> Result<TropMatrix<S>> {
    a.ensure_symmetric()?;
    border_pm(a, p, m)?.with_symmetric_marker()
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 9] = [
    "fano7",
    "fano7_sym",
    "fano13_sym",
    "shitov6",
    "shitov6_sym",
    "shitov6_sym_v2",
    "q3",
    "r3",
    "diag_ones3",
];

const FANO7: [[i64; 7]; 7] = [
    [1, 1, 0, 1, 0, 0, 0],
    [0, 1, 1, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 1],
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 0, 1, 1],
    [1, 0, 1, 0, 0, 0, 1],
];

const FANO7_SYM: [[i64; 7]; 7] = [
    [1, 1, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 1, 1],
    [1, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 0, 1],
    [0, 0, 1, 1, 0, 1, 0],
    [0, 1, 1, 0, 1, 0, 0],
];

const SHITOV6: [[i64; 6]; 6] = [
    [0, 0, 4, 4, 4, 4],
    [0, 0, 2, 4, 1, 4],
    [4, 4, 0, 0, 4, 4],
    [2, 4, 0, 0, 2, 4],
    [4, 4, 4, 4, 0, 0],
    [2, 4, 1, 4, 0, 0],
];

const SHITOV6_SYM: [[i64; 6]; 6] = [
    [0, 0, 2, 4, 1, 4],
    [0, 0, 4, 4, 4, 4],
    [2, 4, 2, 4, 0, 0],
    [4, 4, 4, 4, 0, 0],
    [1, 4, 0, 0, 2, 4],
    [4, 4, 0, 0, 4, 4],
];

// Variant appearing in the linear-cell computations; differs from
// SHITOV6_SYM at entries (1,5) and (5,1).
const SHITOV6_SYM_V2: [[i64; 6]; 6] = [
    [0, 0, 2, 4, 2, 4],
    [0, 0, 4, 4, 4, 4],
    [2, 4, 2, 4, 0, 0],
    [4, 4, 4, 4, 0, 0],
    [2, 4, 0, 0, 2, 4],
    [4, 4, 0, 0, 4, 4],
];

fn from_grid<S: Scalar, const N: usize>(grid: &[[i64; N]; N]) -> TropMatrix<S> {
    let rows: Vec<&[i64]> = grid.iter().map(|r| r.as_slice()).collect();
    TropMatrix::from_ints(&rows)
}

fn fano13_sym<S: Scalar>() -> TropMatrix<S> {
    // Zero blocks on the diagonal, the symmetric Fano arrangement straddling
    // rows/columns 7..13 against 1..7.
    let f: TropMatrix<S> = from_grid(&FANO7_SYM);
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(13);
    for i in 1..=13usize {
        let mut row = Vec::with_capacity(13);
        for j in 1..=13usize {
            let v = if (i <= 6 && j <= 6) || (i >= 8 && j >= 8) {
                S::zero()
            } else if i <= 7 && j >= 7 {
                f.entry(i, j - 6).clone()
            } else {
                f.entry(i - 6, j).clone()
            };
            row.push(v);
        }
        rows.push(row);
    }
    TropMatrix::from_rows(rows).expect("13x13 block assembly is rectangular")
}

/// The catalog of matrices used throughout the test corpus and CLI.
pub fn builtin<S: Scalar>(name: &str) -> Result<TropMatrix<S>> {
    let mark = |m: TropMatrix<S>| {
        m.with_symmetric_marker().expect("catalog symmetric literals are symmetric")
    };
    Ok(match name {
        "fano7" => from_grid(&FANO7),
        "fano7_sym" => mark(from_grid(&FANO7_SYM)),
        "fano13_sym" => mark(fano13_sym()),
        "shitov6" => from_grid(&SHITOV6),
        "shitov6_sym" => mark(from_grid(&SHITOV6_SYM)),
        "shitov6_sym_v2" => mark(from_grid(&SHITOV6_SYM_V2)),
        "q3" => mark(TropMatrix::from_ints(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]])),
        "r3" => mark(TropMatrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
        "diag_ones3" => mark(TropMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::{rank_oracle, tropical_rank};
    use crate::{Matrix, Mode, Rational};

    fn coeffs(pairs: &[(usize, i64)]) -> Coefficients<Rational> {
        Coefficients::from_pairs(
            pairs.iter().map(|&(k, v)| (k, Rational::from_int(v))),
        )
        .unwrap()
    }

    #[test]
    fn catalog_markers_and_shapes() {
        for name in BUILTIN_NAMES {
            let m: Matrix = builtin(name).unwrap();
            assert_eq!(m.is_symmetric(), name != "fano7" && name != "shitov6", "{name}");
        }
        assert!(builtin::<Rational>("nope").is_err());
    }

    #[test]
    fn fano7_sym_is_fano7_with_rows_rearranged() {
        let fano7: Matrix = builtin("fano7").unwrap();
        // Row order 1,7,6,5,4,3,2: swaps rows 2<->7, 3<->6, 4<->5.
        let derived = fano7
            .permute_rows(&[1, 7, 6, 5, 4, 3, 2])
            .unwrap()
            .with_symmetric_marker()
            .unwrap();
        assert_eq!(derived, builtin("fano7_sym").unwrap());
    }

    #[test]
    fn shitov6_sym_is_shitov6_rearranged() {
        let shitov6: Matrix = builtin("shitov6").unwrap();
        // Reverse the row order, then send columns 5,6,1,2,3,4 to positions
        // 1..6; this is the rearrangement that actually symmetrizes the
        // matrix.
        let derived = shitov6
            .permute_rows(&[6, 5, 4, 3, 2, 1])
            .unwrap()
            .permute_cols(&[5, 6, 1, 2, 3, 4])
            .unwrap()
            .with_symmetric_marker()
            .unwrap();
        assert_eq!(derived, builtin("shitov6_sym").unwrap());
    }

    #[test]
    fn shitov6_variants_differ_only_at_the_stated_entry() {
        let a: Matrix = builtin("shitov6_sym").unwrap();
        let b: Matrix = builtin("shitov6_sym_v2").unwrap();
        for (i, j, v) in a.indexed_entries() {
            if (i, j) == (1, 5) || (i, j) == (5, 1) {
                assert_eq!(*v, Rational::from_int(1));
                assert_eq!(*b.entry(i, j), Rational::from_int(2));
            } else {
                assert_eq!(v, b.entry(i, j));
            }
        }
    }

    #[test]
    fn fano13_first_row_matches_display() {
        let m: Matrix = builtin("fano13_sym").unwrap();
        let want = [0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0];
        for (j, &v) in want.iter().enumerate() {
            assert_eq!(*m.entry(1, j + 1), Rational::from_int(v));
        }
        // Off-diagonal 7x7 blocks hold the symmetric Fano arrangement.
        let f: Matrix = builtin("fano7_sym").unwrap();
        for i in 1..=7 {
            for j in 1..=7 {
                assert_eq!(m.entry(i, j + 6), f.entry(i, j));
                assert_eq!(m.entry(i + 6, j), f.entry(i, j));
            }
        }
    }

    #[test]
    fn coefficients_for_symmetric_slack_matrix() {
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let sigma = Bijection::from_images(vec![1, 2]).unwrap();
        let c = strict_scaling_coefficients(&m, &sigma).unwrap();
        assert!(check_strict(&m, &sigma, &c));
        // (0, 0) satisfies the strict system here.
        assert_eq!(c.get(1), c.get(2));
    }

    #[test]
    fn coefficients_reject_singular_and_non_minimal() {
        let zeros = Matrix::zeros(2, 2);
        let id = Bijection::from_images(vec![1, 2]).unwrap();
        assert_eq!(strict_scaling_coefficients(&zeros, &id).unwrap_err(), Error::SingularInput);

        // diag-ones is tropically singular (the two 3-cycles tie), so even a
        // minimizing cycle is rejected as singular input.
        let diag: Matrix = builtin("diag_ones3").unwrap();
        let cycle = Bijection::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(strict_scaling_coefficients(&diag, &cycle).unwrap_err(), Error::SingularInput);

        // A non-minimizing witness on a nonsingular matrix.
        let m = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let swap = Bijection::from_images(vec![2, 1]).unwrap();
        assert_eq!(strict_scaling_coefficients(&m, &swap).unwrap_err(), Error::WitnessNotMinimal);
    }

    #[test]
    fn coefficients_satisfy_strict_system_on_a_cyclic_witness() {
        let m = Matrix::from_ints(&[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1]]);
        let sigma = Bijection::from_images(vec![2, 3, 1]).unwrap();
        let c = strict_scaling_coefficients(&m, &sigma).unwrap();
        assert!(check_strict(&m, &sigma, &c));
    }

    #[test]
    fn append_single_column_copies_it() {
        let a = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let b = append_combination_col(&a, &coeffs(&[(1, 0)])).unwrap();
        assert_eq!(b, Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 1]]));
    }

    #[test]
    fn append_combination_takes_entrywise_min() {
        let a = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let b = append_combination_col(&a, &coeffs(&[(1, 0), (2, 0)])).unwrap();
        assert_eq!(b, Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0]]));
    }

    #[test]
    fn border_of_singleton() {
        let a = Matrix::from_ints(&[&[0]]);
        let b = border_pm(&a, None, None).unwrap();
        assert_eq!(b, Matrix::from_ints(&[&[0, 1], &[1, -1]]));
        assert_eq!(tropical_rank(&b).rank, 2);
        let c = border_pm(&b, None, None).unwrap();
        assert_eq!(rank_oracle(&c, Mode::Standard).unwrap(), 3);
    }

    #[test]
    fn border_rejects_slack_bounds() {
        let a = Matrix::from_ints(&[&[0, 3], &[1, 2]]);
        assert!(border_pm(&a, Some(Rational::from_int(3)), None).is_err());
        assert!(border_pm(&a, None, Some(Rational::from_int(0))).is_err());
    }

    #[test]
    fn sym_append_of_zeros_stays_zero() {
        let a = Matrix::zeros(2, 2).with_symmetric_marker().unwrap();
        let b = sym_append(&a, &coeffs(&[(1, 0)])).unwrap();
        assert_eq!(b, Matrix::zeros(3, 3).with_symmetric_marker().unwrap());
    }

    #[test]
    fn sym_append_corner_is_double_combination() {
        let a: Matrix = builtin("diag_ones3").unwrap();
        let b = sym_append(&a, &coeffs(&[(1, 0), (2, 0), (3, 0)])).unwrap();
        assert!(b.is_symmetric());
        // New column is the entrywise min of the columns, which is 0 in each
        // row; the corner is min over (k,l) of a(k,l) = 0.
        for i in 1..=4 {
            assert_eq!(*b.entry(i, 4), Rational::from_int(0));
        }
    }

    #[test]
    fn sym_ops_require_marker() {
        let a = Matrix::zeros(2, 2);
        assert!(sym_append(&a, &coeffs(&[(1, 0)])).is_err());
        assert!(sym_border_pm(&a, None, None).is_err());
    }
}
