//! Linear cells of determinantal tropical prevarieties.
//!
//! A matrix all of whose `r x r` submatrices are singular lies, locally, on
//! the linear space obtained by equating the entry sums of all minimizing
//! bijections of every `r x r` submatrix. This module rebuilds that equation
//! system from scratch (never transcribing published equation lists), puts
//! each equation in a canonical primitive form so deduplication is exact, and
//! computes the cell dimension as `ambient - rank` with fraction-free integer
//! elimination.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::submatrix_witnesses;
use crate::error::{Error, Result};
use crate::matrix::{SubIndex, TropMatrix};
use crate::scalar::Scalar;
use crate::Mode;

/// One integer-coefficient term `coeff * x_var` with a 1-based `(i, j)` entry
/// variable. Symmetric-mode variables always have `i <= j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Term {
    pub var: (usize, usize),
    pub coeff: i64,
}

/// A canonical linear equation `sum coeff * x_var = 0`: variables sorted,
/// coefficients nonzero with content 1, leading coefficient positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Equation {
    pub terms: Vec<Term>,
}

impl Equation {
    /// Canonicalizes `lhs - rhs`, where each side is a multiset of variables
    /// with multiplicities. Returns `None` when the sides are equal.
    fn difference(
        lhs: impl IntoIterator<Item = ((usize, usize), u32)>,
        rhs: impl IntoIterator<Item = ((usize, usize), u32)>,
    ) -> Option<Equation> {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (var, mult) in lhs {
            *acc.entry(var).or_insert(0) += i64::from(mult);
        }
        for (var, mult) in rhs {
            *acc.entry(var).or_insert(0) -= i64::from(mult);
        }
        acc.retain(|_, c| *c != 0);
        if acc.is_empty() {
            return None;
        }
        let content = acc.values().fold(0i64, |g, &c| g.gcd(&c)).abs();
        let sign = if *acc.values().next().expect("nonempty") < 0 { -1 } else { 1 };
        let terms = acc
            .into_iter()
            .map(|(var, coeff)| Term { var, coeff: sign * coeff / content })
            .collect();
        Some(Equation { terms })
    }

    /// Exact value of the linear form at the matrix's entry vector.
    pub fn evaluate<S: Scalar>(&self, a: &TropMatrix<S>) -> S {
        self.terms.iter().fold(S::zero(), |acc, t| {
            let entry = a.entry(t.var.0, t.var.1).clone();
            let scaled = (0..t.coeff.unsigned_abs()).fold(S::zero(), |s, _| s + entry.clone());
            if t.coeff < 0 {
                acc - scaled
            } else {
                acc + scaled
            }
        })
    }
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |f: &mut std::fmt::Formatter<'_>, terms: &[&Term]| -> std::fmt::Result {
            if terms.is_empty() {
                return write!(f, "0");
            }
            for (k, t) in terms.iter().enumerate() {
                if k > 0 {
                    write!(f, " + ")?;
                }
                let c = t.coeff.abs();
                if c != 1 {
                    write!(f, "{c}")?;
                }
                write!(f, "x_{{{},{}}}", t.var.0, t.var.1)?;
            }
            Ok(())
        };
        let lhs: Vec<&Term> = self.terms.iter().filter(|t| t.coeff > 0).collect();
        let rhs: Vec<&Term> = self.terms.iter().filter(|t| t.coeff < 0).collect();
        side(f, &lhs)?;
        write!(f, " = ")?;
        side(f, &rhs)
    }
}

/// The deduplicated equation system of all `r x r` minors of one matrix.
#[derive(Clone, Debug, Serialize)]
pub struct EquationSystem {
    pub rows: usize,
    pub cols: usize,
    pub r: usize,
    pub mode: Mode,
    /// `rows*cols` in standard mode, `n(n+1)/2` (diagonal included) in
    /// symmetric mode.
    pub ambient_dim: usize,
    pub equations: Vec<Equation>,
}

/// Dimension of the linear cell: `ambient_dim - system_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellResult {
    pub dimension: usize,
    pub system_rank: usize,
    pub equation_count: usize,
}

fn ambient_dim(rows: usize, cols: usize, mode: Mode) -> usize {
    match mode {
        Mode::Standard => rows * cols,
        Mode::Symmetric => rows * (rows + 1) / 2,
    }
}

fn column_index(var: (usize, usize), cols: usize, mode: Mode) -> usize {
    let (i, j) = var;
    match mode {
        Mode::Standard => (i - 1) * cols + (j - 1),
        // Row-major upper triangle, diagonal included: rows above i hold
        // cols+1-k entries each.
        Mode::Symmetric => (i - 1) * (cols + 1) - (i - 1) * i / 2 + (j - i),
    }
}

/// Builds the linear equations tying together the minimizing witnesses of
/// every `r x r` submatrix of `a`.
///
/// In standard mode witnesses are bijections; in symmetric mode they are the
/// distinct monomials under `x[i,j] = x[j,i]`, with coefficients accumulating
/// multiplicity. Fails on the first submatrix found nonsingular under `mode`
/// (the matrix then violates the prevariety precondition) and fails loudly if
/// any enumeration is truncated by `cap`.
pub fn minor_equations<S: Scalar>(
    a: &TropMatrix<S>,
    r: usize,
    mode: Mode,
    cap: Option<usize>,
) -> Result<EquationSystem> {
    let max = a.rows().min(a.cols());
    if r < 1 || r > max {
        return Err(Error::InvalidMinorSize { r, max });
    }
    if mode == Mode::Symmetric {
        a.ensure_symmetric()?;
    }

    let selections: Vec<SubIndex> = (1..=a.rows())
        .combinations(r)
        .cartesian_product((1..=a.cols()).combinations(r).collect::<Vec<_>>())
        .map(|(rows, cols)| SubIndex::new(rows, cols).expect("combinations are valid"))
        .collect();

    let per_sub: Vec<Result<Vec<Equation>>> = selections
        .par_iter()
        .map(|s| equations_for_submatrix(a, s, mode, cap))
        .collect();

    let mut equations: Vec<Equation> = Vec::new();
    for result in per_sub {
        equations.extend(result?);
    }
    equations.sort_unstable();
    equations.dedup();

    Ok(EquationSystem {
        rows: a.rows(),
        cols: a.cols(),
        r,
        mode,
        ambient_dim: ambient_dim(a.rows(), a.cols(), mode),
        equations,
    })
}

fn equations_for_submatrix<S: Scalar>(
    a: &TropMatrix<S>,
    s: &SubIndex,
    mode: Mode,
    cap: Option<usize>,
) -> Result<Vec<Equation>> {
    let witnesses = submatrix_witnesses(a, s, cap)?;
    if witnesses.truncated {
        return Err(Error::CapExceeded { cap: cap.expect("truncation implies a cap") });
    }
    let forms: Vec<Vec<((usize, usize), u32)>> = match mode {
        Mode::Standard => witnesses
            .bijections
            .iter()
            .map(|b| b.pairs().map(|p| (p, 1)).collect())
            .collect(),
        Mode::Symmetric => witnesses
            .sym_monomials
            .iter()
            .map(|m| m.multiplicities())
            .collect(),
    };
    if forms.len() < 2 {
        return Err(Error::NonsingularSubmatrix(s.clone()));
    }
    Ok(forms[1..]
        .iter()
        .map(|other| {
            Equation::difference(forms[0].iter().copied(), other.iter().copied())
                .expect("distinct witnesses have distinct linear forms")
        })
        .collect())
}

/// Rank of an integer matrix by fraction-free elimination: rows are combined
/// by cross-multiplication and divided by their content, so every
/// intermediate value stays an exact integer.
fn integer_rank(rows: impl Iterator<Item = Vec<BigInt>>) -> usize {
    // Echelon basis keyed by pivot column.
    let mut basis: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for mut row in rows {
        for (&pivot, base) in basis.iter() {
            if row[pivot].is_zero() {
                continue;
            }
            let a = base[pivot].clone();
            let b = row[pivot].clone();
            for (x, y) in row.iter_mut().zip(base.iter()) {
                *x = &*x * &a - y * &b;
            }
            divide_by_content(&mut row);
        }
        if let Some(pivot) = row.iter().position(|v| !v.is_zero()) {
            divide_by_content(&mut row);
            basis.insert(pivot, row);
        }
    }
    basis.len()
}

fn divide_by_content(row: &mut [BigInt]) {
    let content = row
        .iter()
        .fold(BigInt::zero(), |g, v| g.gcd(v));
    if !content.is_zero() && content != BigInt::from(1) {
        for v in row.iter_mut() {
            *v = &*v / &content;
        }
    }
}

impl EquationSystem {
    fn dense_rows(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        self.equations.iter().map(move |eq| {
            let mut row = vec![BigInt::zero(); self.ambient_dim];
            for t in &eq.terms {
                row[column_index(t.var, self.cols, self.mode)] = BigInt::from(t.coeff);
            }
            row
        })
    }

    /// Rank of the system over the rationals.
    pub fn rank(&self) -> usize {
        integer_rank(self.dense_rows())
    }

    /// Whether the matrix's entry vector solves every equation exactly.
    pub fn satisfied_by<S: Scalar>(&self, a: &TropMatrix<S>) -> bool {
        self.equations.iter().all(|eq| eq.evaluate(a).is_zero())
    }

    /// A rational basis of the solution space, via reduced row echelon form.
    pub fn nullspace_basis(&self) -> Vec<Vec<BigRational>> {
        let n = self.ambient_dim;
        let mut rref: Vec<Vec<BigRational>> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();
        for row in self.dense_rows() {
            let mut row: Vec<BigRational> =
                row.into_iter().map(BigRational::from_integer).collect();
            for (k, &p) in pivot_cols.iter().enumerate() {
                if !row[p].is_zero() {
                    let factor = row[p].clone();
                    for j in 0..n {
                        let delta = &rref[k][j] * &factor;
                        row[j] = &row[j] - &delta;
                    }
                }
            }
            if let Some(p) = row.iter().position(|v| !v.is_zero()) {
                let lead = row[p].clone();
                for v in row.iter_mut() {
                    *v = &*v / &lead;
                }
                // Clear this column above.
                for k in 0..pivot_cols.len() {
                    if !rref[k][p].is_zero() {
                        let factor = rref[k][p].clone();
                        for j in 0..n {
                            let delta = &row[j] * &factor;
                            rref[k][j] = &rref[k][j] - &delta;
                        }
                    }
                }
                rref.push(row);
                pivot_cols.push(p);
            }
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut vector = vec![BigRational::zero(); n];
            vector[free] = BigRational::from_integer(1.into());
            for (k, &p) in pivot_cols.iter().enumerate() {
                vector[p] = -rref[k][free].clone();
            }
            basis.push(vector);
        }
        basis
    }

    /// Dot product of one equation row with an ambient vector.
    pub fn equation_dot(&self, eq: &Equation, vector: &[BigRational]) -> BigRational {
        eq.terms.iter().fold(BigRational::zero(), |acc, t| {
            acc + BigRational::from_integer(t.coeff.into())
                * &vector[column_index(t.var, self.cols, self.mode)]
        })
    }

    /// Index of a variable in the ambient coordinate order.
    pub fn var_index(&self, var: (usize, usize)) -> usize {
        column_index(var, self.cols, self.mode)
    }

    /// Human-readable listing, one equation per line.
    pub fn to_text(&self) -> String {
        self.equations.iter().map(|e| format!("{e}\n")).collect()
    }
}

/// Local linear-cell dimension of `a` at minor size `r`.
pub fn cell_dimension<S: Scalar>(
    a: &TropMatrix<S>,
    r: usize,
    mode: Mode,
    cap: Option<usize>,
) -> Result<(CellResult, EquationSystem)> {
    let system = minor_equations(a, r, mode, cap)?;
    let system_rank = system.rank();
    Ok((
        CellResult {
            dimension: system.ambient_dim - system_rank,
            system_rank,
            equation_count: system.equations.len(),
        },
        system,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;
    use crate::{Matrix, Rational};

    #[test]
    fn q_yields_one_canonical_equation() {
        let q: Matrix = builtin("q3").unwrap();
        let sys = minor_equations(&q, 3, Mode::Standard, None).unwrap();
        assert_eq!(sys.equations.len(), 1);
        let eq = &sys.equations[0];
        assert_eq!(
            eq.terms,
            vec![
                Term { var: (1, 1), coeff: 1 },
                Term { var: (1, 2), coeff: -1 },
                Term { var: (2, 1), coeff: -1 },
                Term { var: (2, 2), coeff: 1 },
            ]
        );
        assert_eq!(eq.to_string(), "x_{1,1} + x_{2,2} = x_{1,2} + x_{2,1}");
        assert!(sys.satisfied_by(&q));
    }

    #[test]
    fn r_yields_two_independent_equations() {
        let r: Matrix = builtin("r3").unwrap();
        let sys = minor_equations(&r, 3, Mode::Standard, None).unwrap();
        assert_eq!(sys.equations.len(), 2);
        assert_eq!(sys.rank(), 2);
        assert!(sys.satisfied_by(&r));
    }

    #[test]
    fn zeros_equations_are_the_two_by_two_exchanges() {
        let z = Matrix::zeros(3, 3);
        let sys = minor_equations(&z, 2, Mode::Standard, None).unwrap();
        assert_eq!(sys.equations.len(), 9);
        for eq in &sys.equations {
            assert_eq!(eq.terms.len(), 4);
        }
        let (cell, _) = cell_dimension(&z, 2, Mode::Standard, None).unwrap();
        assert_eq!(cell.dimension, 3 + 3 - 1);
    }

    #[test]
    fn zeros_cell_dims_match_rank_one_parametrization() {
        for (m, n) in [(2usize, 2usize), (3, 3), (3, 4)] {
            let z = Matrix::zeros(m, n);
            let (cell, _) = cell_dimension(&z, 2, Mode::Standard, None).unwrap();
            assert_eq!(cell.dimension, m + n - 1, "{m}x{n}");
        }
    }

    #[test]
    fn nonsingular_submatrix_is_reported() {
        let a: Matrix = builtin("diag_ones3").unwrap();
        // diag_ones3 has tropical rank 2, so its 2x2 minors are not all
        // singular.
        let err = minor_equations(&a, 2, Mode::Standard, None).unwrap_err();
        assert!(matches!(err, Error::NonsingularSubmatrix(_)));
    }

    #[test]
    fn symmetric_mode_accumulates_multiplicity_two() {
        let z = Matrix::zeros(2, 2).with_symmetric_marker().unwrap();
        let sys = minor_equations(&z, 2, Mode::Symmetric, None).unwrap();
        // x11 + x22 = 2 x12 is the single equation.
        assert_eq!(sys.equations.len(), 1);
        assert_eq!(
            sys.equations[0].terms,
            vec![
                Term { var: (1, 1), coeff: 1 },
                Term { var: (1, 2), coeff: -2 },
                Term { var: (2, 2), coeff: 1 },
            ]
        );
        assert_eq!(sys.ambient_dim, 3);
        assert_eq!(sys.equations[0].to_string(), "x_{1,1} + x_{2,2} = 2x_{1,2}");
    }

    #[test]
    fn cap_overflow_is_loud() {
        let z = Matrix::zeros(4, 4);
        let err = minor_equations(&z, 4, Mode::Standard, Some(10)).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 10 });
    }

    #[test]
    fn equations_serialize_as_var_coeff_terms() {
        let q: Matrix = builtin("q3").unwrap();
        let sys = minor_equations(&q, 3, Mode::Standard, None).unwrap();
        let json = serde_json::to_value(&sys.equations[0]).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "terms": [
                    { "var": [1, 1], "coeff": 1 },
                    { "var": [1, 2], "coeff": -1 },
                    { "var": [2, 1], "coeff": -1 },
                    { "var": [2, 2], "coeff": 1 },
                ]
            })
        );
    }

    #[test]
    fn minor_size_is_validated() {
        let z = Matrix::zeros(3, 4);
        assert!(matches!(
            minor_equations(&z, 4, Mode::Standard, None),
            Err(Error::InvalidMinorSize { r: 4, max: 3 })
        ));
        assert!(minor_equations(&z, 0, Mode::Standard, None).is_err());
        assert!(minor_equations(&z, 2, Mode::Symmetric, None).is_err());
    }

    #[test]
    fn rank_is_order_independent() {
        let z = Matrix::zeros(3, 4);
        let sys = minor_equations(&z, 2, Mode::Standard, None).unwrap();
        let mut reversed = sys.clone();
        reversed.equations.reverse();
        assert_eq!(sys.rank(), reversed.rank());
    }

    #[test]
    fn nullspace_dimension_matches_cell() {
        let q: Matrix = builtin("q3").unwrap();
        let (cell, sys) = cell_dimension(&q, 3, Mode::Standard, None).unwrap();
        let basis = sys.nullspace_basis();
        assert_eq!(basis.len(), cell.dimension);
        for vector in &basis {
            for eq in &sys.equations {
                assert!(sys.equation_dot(eq, vector).is_zero());
            }
        }
    }

    #[test]
    fn evaluate_respects_multiplicity() {
        let a = Matrix::from_ints(&[&[3, 5], &[5, 7]]);
        let eq = Equation {
            terms: vec![
                Term { var: (1, 1), coeff: 1 },
                Term { var: (1, 2), coeff: -2 },
                Term { var: (2, 2), coeff: 1 },
            ],
        };
        assert_eq!(eq.evaluate(&a), Rational::from_int(0));
    }
}
