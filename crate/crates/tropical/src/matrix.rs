//! Matrices over the min-plus semiring, index combinatorics, and the
//! symmetric-monomial quotient.
//!
//! Indices are 1-based everywhere in the public surface, matching the usual
//! mathematical convention for minors; the row-major storage is an internal
//! detail. All values are immutable after construction, so they may be shared
//! freely across threads.

use std::fmt;

use crate::error::{Axis, Error, Result};
use crate::scalar::Scalar;

/// Dense matrix of exact scalars with an optional symmetric marker.
///
/// The marker is data, not inference: constructing a marked matrix checks
/// `entry(i,j) == entry(j,i)`, and any operation that can break symmetry
/// clears it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix<S> {
    rows: usize,
    cols: usize,
    symmetric: bool,
    entries: Vec<S>,
}

impl<S: Scalar> TropMatrix<S> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "need {rows}x{cols} = {} entries, got {}",
                    rows * cols,
                    entries.len()
                ),
            });
        }
        Ok(TropMatrix { rows, cols, symmetric: false, entries })
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse { line: 0, message: "ragged rows".into() });
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix of small integers; handy for literals.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| S::from_int(v)).collect())
            .collect();
        Self::from_rows(data).expect("integer literal rows must be rectangular and nonempty")
    }

    /// The all-zeros matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![S::zero(); rows * cols])
            .expect("zeros requires positive dimensions")
    }

    /// Validates actual symmetry of the entries, then sets the marker.
    pub fn with_symmetric_marker(mut self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        for i in 1..=self.rows {
            for j in (i + 1)..=self.cols {
                if self.entry(i, j) != self.entry(j, i) {
                    return Err(Error::AsymmetricEntries { row: i, col: j });
                }
            }
        }
        self.symmetric = true;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Whether the symmetric marker is set.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Entry at 1-based position `(i, j)`. Panics if out of range.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    /// Row-major iteration over `(i, j, entry)` with 1-based indices.
    pub fn indexed_entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / self.cols + 1, k % self.cols + 1, v))
    }

    pub fn min_entry(&self) -> &S {
        self.entries.iter().min().expect("matrices are nonempty")
    }

    pub fn max_entry(&self) -> &S {
        self.entries.iter().max().expect("matrices are nonempty")
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn require_symmetric(&self) -> Result<()> {
        if self.symmetric {
            Ok(())
        } else {
            Err(Error::NotSymmetric)
        }
    }

    /// The submatrix selected by `s`, in the order of its index sets.
    pub fn submatrix(&self, s: &SubIndex) -> Result<Self> {
        s.check_bounds(self.rows, self.cols)?;
        let mut entries = Vec::with_capacity(s.order() * s.order());
        for &i in s.row_indices() {
            for &j in s.col_indices() {
                entries.push(self.entry(i, j).clone());
            }
        }
        Self::new(s.order(), s.order(), entries)
    }

    /// Tropically scales row `i` by `c` (adds `c` to each entry).
    ///
    /// Clears the symmetric marker: a lone row scaling breaks the symmetry
    /// invariant; use [`TropMatrix::sym_scale`] to keep it.
    pub fn scale_row(&self, i: usize, c: &S) -> Result<Self> {
        self.check_row(i)?;
        let mut out = self.clone();
        out.symmetric = false;
        for j in 0..self.cols {
            let k = (i - 1) * self.cols + j;
            out.entries[k] = self.entries[k].clone() + c.clone();
        }
        Ok(out)
    }

    /// Tropically scales column `j` by `c`. Clears the symmetric marker.
    pub fn scale_col(&self, j: usize, c: &S) -> Result<Self> {
        self.check_col(j)?;
        let mut out = self.clone();
        out.symmetric = false;
        for i in 0..self.rows {
            let k = i * self.cols + (j - 1);
            out.entries[k] = self.entries[k].clone() + c.clone();
        }
        Ok(out)
    }

    /// Tropically scales row `i` and column `i` by `c` simultaneously, so
    /// entry `(i, i)` gains `2c`. Requires and preserves the symmetric marker.
    pub fn sym_scale(&self, i: usize, c: &S) -> Result<Self> {
        self.require_symmetric()?;
        self.check_row(i)?;
        let mut out = self.scale_row(i, c)?.scale_col(i, c)?;
        out.symmetric = true;
        Ok(out)
    }

    /// Reorders rows: new row `i` is old row `perm[i-1]` (1-based one-line
    /// notation). Clears the symmetric marker.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rows, Axis::Row)?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for &src in perm {
            let base = (src - 1) * self.cols;
            entries.extend_from_slice(&self.entries[base..base + self.cols]);
        }
        Self::new(self.rows, self.cols, entries)
    }

    /// Reorders columns: new column `j` is old column `perm[j-1]`. Clears the
    /// symmetric marker.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.cols, Axis::Col)?;
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            for &src in perm {
                entries.push(self.entries[i * self.cols + (src - 1)].clone());
            }
        }
        Self::new(self.rows, self.cols, entries)
    }

    /// Applies the same permutation to rows and columns, preserving the
    /// symmetric marker.
    pub fn permute_sym(&self, perm: &[usize]) -> Result<Self> {
        self.require_symmetric()?;
        let mut out = self.permute_rows(perm)?.permute_cols(perm)?;
        out.symmetric = true;
        Ok(out)
    }

    /// Converts entries to another scalar type, if every entry is representable.
    pub fn convert<T: Scalar>(&self) -> Option<TropMatrix<T>> {
        let entries = self
            .entries
            .iter()
            .map(|e| T::from_big_rational(&e.to_big_rational()))
            .collect::<Option<Vec<_>>>()?;
        Some(TropMatrix {
            rows: self.rows,
            cols: self.cols,
            symmetric: self.symmetric,
            entries,
        })
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.rows {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { axis: Axis::Row, index: i, bound: self.rows })
        }
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j >= 1 && j <= self.cols {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { axis: Axis::Col, index: j, bound: self.cols })
        }
    }

    pub(crate) fn ensure_square(&self) -> Result<usize> {
        self.require_square()?;
        Ok(self.rows)
    }

    pub(crate) fn ensure_symmetric(&self) -> Result<()> {
        self.require_symmetric()
    }
}

impl<S: Scalar> fmt::Debug for TropMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TropMatrix {}x{}{}", self.rows, self.cols, if self.symmetric { " symmetric" } else { "" })?;
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_permutation(perm: &[usize], n: usize, axis: Axis) -> Result<()> {
    if perm.len() != n {
        return Err(Error::IndexOutOfRange { axis, index: perm.len(), bound: n });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p < 1 || p > n || seen[p - 1] {
            return Err(Error::IndexOutOfRange { axis, index: p, bound: n });
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// A pair of equally sized, strictly increasing 1-based index sets selecting a
/// square submatrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SubIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::EmptySelection);
        }
        for set in [&rows, &cols] {
            if set[0] == 0 || set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse {
                    line: 0,
                    message: "index sets must be strictly increasing and 1-based".into(),
                });
            }
        }
        Ok(SubIndex { rows, cols })
    }

    /// Selects all of an `m x n` matrix.
    pub fn full(m: usize, n: usize) -> Self {
        SubIndex { rows: (1..=m).collect(), cols: (1..=n).collect() }
    }

    /// The principal selection on index set `idx`.
    pub fn principal(idx: Vec<usize>) -> Result<Self> {
        Self::new(idx.clone(), idx)
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn row_indices(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.cols
    }

    pub fn check_bounds(&self, rows: usize, cols: usize) -> Result<()> {
        if let Some(&i) = self.rows.iter().find(|&&i| i > rows) {
            return Err(Error::IndexOutOfRange { axis: Axis::Row, index: i, bound: rows });
        }
        if let Some(&j) = self.cols.iter().find(|&&j| j > cols) {
            return Err(Error::IndexOutOfRange { axis: Axis::Col, index: j, bound: cols });
        }
        Ok(())
    }
}

impl fmt::Display for SubIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "rows{{{}}} cols{{{}}}", list(&self.rows), list(&self.cols))
    }
}

/// A bijection from a sorted row-index set onto a column-index set.
///
/// `image[t]` is where `domain[t]` maps; comparison is by image sequence, so
/// sorting bijections over a common domain yields the canonical witness order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bijection {
    domain: Vec<usize>,
    image: Vec<usize>,
}

impl Bijection {
    pub fn new(domain: Vec<usize>, image: Vec<usize>) -> Result<Self> {
        if domain.is_empty() || domain.len() != image.len() {
            return Err(Error::EmptySelection);
        }
        if domain[0] == 0 || domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                line: 0,
                message: "bijection domain must be strictly increasing and 1-based".into(),
            });
        }
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 || sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line: 0,
                message: "bijection image must be 1-based and injective".into(),
            });
        }
        Ok(Bijection { domain, image })
    }

    /// The identity-domain bijection `t -> image[t-1]` on `1..=n`.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        Self::new((1..=n).collect(), image)
    }

    pub fn order(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Iterates `(row, col)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain.iter().copied().zip(self.image.iter().copied())
    }

    /// The image of `row`, if in the domain.
    pub fn apply(&self, row: usize) -> Option<usize> {
        let t = self.domain.binary_search(&row).ok()?;
        Some(self.image[t])
    }

    /// Quotients to a symmetric monomial: the multiset of unordered pairs.
    pub fn sym_monomial(&self) -> SymMonomial {
        SymMonomial::from_pairs(self.pairs())
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .pairs()
            .map(|(i, j)| format!("{i}->{j}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{{{body}}}")
    }
}

/// A multiset of unordered index pairs `{i, j}`; the image of a bijection
/// under the identification of `(i, j)` with `(j, i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymMonomial {
    pairs: Vec<(usize, usize)>,
}

impl SymMonomial {
    pub fn from_pairs(items: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> = items
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        SymMonomial { pairs }
    }

    /// The sorted `(lo, hi)` pairs, with multiplicity.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    /// Pairs with their multiplicities, in sorted order.
    pub fn multiplicities(&self) -> Vec<((usize, usize), u32)> {
        let mut out: Vec<((usize, usize), u32)> = Vec::new();
        for &p in &self.pairs {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), m) in self.multiplicities() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X_{{{i},{j}}}")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn zeros(m: usize, n: usize) -> TropMatrix<Rational> {
        TropMatrix::zeros(m, n)
    }

    #[test]
    fn submatrix_full_is_identity() {
        let a = TropMatrix::<Rational>::from_ints(&[&[1, 2], &[3, 4]]);
        let s = SubIndex::full(2, 2);
        assert_eq!(a.submatrix(&s).unwrap(), a);
    }

    #[test]
    fn submatrix_rejects_out_of_range() {
        let a = zeros(2, 2);
        let s = SubIndex::new(vec![1, 3], vec![1, 2]).unwrap();
        assert!(matches!(a.submatrix(&s), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn submatrix_composes() {
        let a = TropMatrix::<Rational>::from_ints(&[
            &[0, 1, 2, 3],
            &[4, 5, 6, 7],
            &[8, 9, 10, 11],
            &[12, 13, 14, 15],
        ]);
        let s = SubIndex::new(vec![1, 3, 4], vec![2, 3, 4]).unwrap();
        let t = SubIndex::new(vec![2, 3], vec![1, 3]).unwrap();
        let direct = SubIndex::new(vec![3, 4], vec![2, 4]).unwrap();
        assert_eq!(
            a.submatrix(&s).unwrap().submatrix(&t).unwrap(),
            a.submatrix(&direct).unwrap()
        );
    }

    #[test]
    fn scale_row_adds_constant() {
        let five = Rational::from_int(5);
        let scaled = zeros(2, 2).scale_row(1, &five).unwrap();
        assert_eq!(scaled, TropMatrix::from_ints(&[&[5, 5], &[0, 0]]));
    }

    #[test]
    fn scale_row_inverse_restores_entries() {
        let a = TropMatrix::<Rational>::from_ints(&[&[1, 2], &[3, 4]]);
        let c = Rational::from_int(7);
        let back = a.scale_row(2, &c).unwrap().scale_row(2, &-c).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn sym_scale_keeps_marker_and_doubles_diagonal() {
        let a = zeros(3, 3).with_symmetric_marker().unwrap();
        let b = a.sym_scale(2, &Rational::from_int(1)).unwrap();
        assert!(b.is_symmetric());
        assert_eq!(*b.entry(2, 2), Rational::from_int(2));
        assert_eq!(*b.entry(2, 1), Rational::from_int(1));
        assert_eq!(*b.entry(1, 2), Rational::from_int(1));
        assert_eq!(*b.entry(1, 3), Rational::from_int(0));
    }

    #[test]
    fn sym_scale_by_zero_is_identity() {
        let a = zeros(3, 3).with_symmetric_marker().unwrap();
        assert_eq!(a.sym_scale(1, &Rational::from_int(0)).unwrap(), a);
    }

    #[test]
    fn sym_scale_rejects_unmarked() {
        let a = zeros(3, 3);
        assert_eq!(a.sym_scale(1, &Rational::from_int(1)), Err(Error::NotSymmetric));
    }

    #[test]
    fn scale_clears_marker() {
        let a = zeros(2, 2).with_symmetric_marker().unwrap();
        assert!(!a.scale_row(1, &Rational::from_int(1)).unwrap().is_symmetric());
        assert!(!a.scale_col(1, &Rational::from_int(1)).unwrap().is_symmetric());
    }

    #[test]
    fn marker_validation_rejects_asymmetric() {
        let a = TropMatrix::<Rational>::from_ints(&[&[0, 1], &[2, 0]]);
        assert_eq!(
            a.with_symmetric_marker().unwrap_err(),
            Error::AsymmetricEntries { row: 1, col: 2 }
        );
    }

    #[test]
    fn bijection_rejects_repeats() {
        assert!(Bijection::from_images(vec![1, 1, 3]).is_err());
    }

    #[test]
    fn sym_monomial_quotients_pairs() {
        let cycle = Bijection::from_images(vec![2, 3, 1]).unwrap();
        let inverse = Bijection::from_images(vec![3, 1, 2]).unwrap();
        assert_eq!(cycle.sym_monomial(), inverse.sym_monomial());
        let identity = Bijection::from_images(vec![1, 2, 3]).unwrap();
        assert_ne!(cycle.sym_monomial(), identity.sym_monomial());
    }

    #[test]
    fn sym_monomial_tracks_multiplicity() {
        let swap = Bijection::from_images(vec![2, 1]).unwrap();
        let m = swap.sym_monomial();
        assert_eq!(m.multiplicities(), vec![((1, 2), 2)]);
        assert_eq!(m.to_string(), "X_{1,2}^2");
    }

    #[test]
    fn permute_rows_uses_one_line_notation() {
        let a = TropMatrix::<Rational>::from_ints(&[&[1, 2], &[3, 4]]);
        let p = a.permute_rows(&[2, 1]).unwrap();
        assert_eq!(p, TropMatrix::from_ints(&[&[3, 4], &[1, 2]]));
    }
}
