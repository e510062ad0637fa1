//! Tropical determinants via exact optimal assignment.
//!
//! The tropical determinant of a square matrix is the minimum, over all
//! bijections of row onto column indices, of the selected entry sum. The
//! solver is a shortest-augmenting-path assignment algorithm over exact
//! rationals that also produces dual potentials `u`, `v` with
//! `u[i] + v[j] <= a[i][j]` everywhere and equality on the matching. Every
//! minimizing bijection lies inside the zero-reduced-cost ("tight") subgraph
//! of any optimal dual, so enumerating all minimizers reduces to enumerating
//! perfect matchings of that subgraph.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::matrix::{Bijection, SubIndex, SymMonomial, TropMatrix};
use crate::scalar::Scalar;

/// Default bound on enumerated witnesses.
pub const DEFAULT_CAP: usize = 10_000;

/// Exact dual potentials certifying optimality: `row[i] + col[j] <= a(i+1, j+1)`
/// for all `i, j`, with equality on every minimizing bijection's edges.
#[derive(Clone, Debug)]
pub struct DualCertificate<S> {
    pub row: Vec<S>,
    pub col: Vec<S>,
}

impl<S: Scalar> DualCertificate<S> {
    /// Exact feasibility check against the matrix the certificate was made for.
    pub fn is_feasible(&self, m: &TropMatrix<S>) -> bool {
        m.indexed_entries().all(|(i, j, a)| {
            self.row[i - 1].clone() + self.col[j - 1].clone() <= *a
        })
    }

    /// Whether edge `(i, j)` (1-based) has zero reduced cost.
    pub fn is_tight(&self, m: &TropMatrix<S>, i: usize, j: usize) -> bool {
        self.row[i - 1].clone() + self.col[j - 1].clone() == *m.entry(i, j)
    }
}

/// Tropical determinant value with one witness and the dual certificate.
#[derive(Clone, Debug)]
pub struct TropDet<S> {
    pub value: S,
    /// The lexicographically smallest minimizing bijection.
    pub witness: Bijection,
    pub duals: DualCertificate<S>,
}

/// All minimizing bijections of a square matrix, in lexicographic order of
/// their image sequences, together with their symmetric-monomial quotient.
#[derive(Clone, Debug)]
pub struct DetResult<S> {
    pub value: S,
    pub witnesses: Vec<Bijection>,
    /// Distinct quotient monomials, in order of first appearance.
    pub sym_witnesses: Vec<SymMonomial>,
    /// Set when enumeration stopped at the cap with witnesses left over.
    pub truncated: bool,
}

/// Shortest-augmenting-path optimal assignment (Jonker-Volgenant style) with
/// exact arithmetic. Returns the 0-based row-to-column matching and the duals.
fn solve<S: Scalar>(a: &TropMatrix<S>) -> (Vec<usize>, DualCertificate<S>) {
    let n = a.rows();
    let entry = |i: usize, j: usize| a.entry(i + 1, j + 1);

    let mut u = vec![S::zero(); n];
    // Column n is the virtual unmatched column.
    let mut v = vec![S::zero(); n + 1];
    let mut col_row: Vec<Option<usize>> = vec![None; n + 1];

    for i in 0..n {
        col_row[n] = Some(i);
        let mut j0 = n;
        // minv[j] = None encodes +infinity.
        let mut minv: Vec<Option<S>> = vec![None; n];
        let mut way = vec![n; n];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0].expect("walked columns are matched");
            let mut delta: Option<S> = None;
            let mut j1 = n;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let cur = entry(i0, j).clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("just set or previously finite");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("complete cost matrix always admits an augmenting step");
            for j in 0..=n {
                if used[j] {
                    if let Some(r) = col_row[j] {
                        u[r] = u[r].clone() + delta.clone();
                    }
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = &mut minv[j] {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if col_row[j0].is_none() {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut row_col = vec![0usize; n];
    for j in 0..n {
        row_col[col_row[j].expect("matching is perfect")] = j;
    }
    v.truncate(n);
    let duals = DualCertificate { row: u, col: v };
    debug_assert!(duals.is_feasible(a));
    debug_assert!((0..n).all(|i| duals.is_tight(a, i + 1, row_col[i] + 1)));
    (row_col, duals)
}

/// Tight-subgraph adjacency: ascending column lists per row, 0-based.
fn tight_adjacency<S: Scalar>(a: &TropMatrix<S>, duals: &DualCertificate<S>) -> Vec<Vec<usize>> {
    let n = a.rows();
    (0..n)
        .map(|i| (0..n).filter(|&j| duals.is_tight(a, i + 1, j + 1)).collect())
        .collect()
}

/// Kuhn augmenting step on the tight subgraph, skipping taken columns.
fn augment(
    adj: &[Vec<usize>],
    row: usize,
    taken: &[bool],
    visited: &mut [bool],
    col_row: &mut [Option<usize>],
) -> bool {
    for &c in &adj[row] {
        if taken[c] || visited[c] {
            continue;
        }
        visited[c] = true;
        let free = match col_row[c] {
            None => true,
            Some(r) => augment(adj, r, taken, visited, col_row),
        };
        if free {
            col_row[c] = Some(row);
            return true;
        }
    }
    false
}

/// Whether rows `from..n` can be perfectly matched into the free columns.
fn rows_matchable(adj: &[Vec<usize>], from: usize, taken: &[bool]) -> bool {
    let n = adj.len();
    let mut col_row: Vec<Option<usize>> = vec![None; n];
    for row in from..n {
        let mut visited = vec![false; n];
        if !augment(adj, row, taken, &mut visited, &mut col_row) {
            return false;
        }
    }
    true
}

fn enumerate_rec<F>(
    adj: &[Vec<usize>],
    i: usize,
    image: &mut Vec<usize>,
    taken: &mut Vec<bool>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = adj.len();
    if i == n {
        return f(image);
    }
    for idx in 0..adj[i].len() {
        let j = adj[i][idx];
        if taken[j] {
            continue;
        }
        taken[j] = true;
        image.push(j);
        if rows_matchable(adj, i + 1, taken)
            && enumerate_rec(adj, i + 1, image, taken, f).is_break()
        {
            return ControlFlow::Break(());
        }
        image.pop();
        taken[j] = false;
    }
    ControlFlow::Continue(())
}

/// Summary of a minimizing enumeration: the optimum and its certificate.
pub(crate) struct MinSummary<S> {
    pub value: S,
    pub duals: DualCertificate<S>,
}

/// Visits every minimizing bijection of `m` as a 0-based image slice, in
/// lexicographic order, until the visitor breaks.
pub(crate) fn for_each_minimizing<S, F>(m: &TropMatrix<S>, mut f: F) -> Result<MinSummary<S>>
where
    S: Scalar,
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = m.ensure_square()?;
    let (row_col, duals) = solve(m);
    let value = (0..n)
        .map(|i| m.entry(i + 1, row_col[i] + 1).clone())
        .fold(S::zero(), |acc, x| acc + x);
    let adj = tight_adjacency(m, &duals);
    let mut image = Vec::with_capacity(n);
    let mut taken = vec![false; n];
    let _ = enumerate_rec(&adj, 0, &mut image, &mut taken, &mut f);
    Ok(MinSummary { value, duals })
}

fn bijection_from_image(image: &[usize]) -> Bijection {
    Bijection::from_images(image.iter().map(|&j| j + 1).collect())
        .expect("enumerated images are valid permutations")
}

/// Tropical determinant with the lexicographically smallest witness.
pub fn tropdet<S: Scalar>(m: &TropMatrix<S>) -> Result<TropDet<S>> {
    let mut witness = None;
    let summary = for_each_minimizing(m, |image| {
        witness = Some(bijection_from_image(image));
        ControlFlow::Break(())
    })?;
    Ok(TropDet {
        value: summary.value,
        witness: witness.expect("at least one bijection always attains the minimum"),
        duals: summary.duals,
    })
}

/// Enumerates all minimizing bijections up to `cap` (`None` means unlimited).
///
/// If more than `cap` witnesses exist, exactly `cap` are returned and the
/// truncation flag is set. `cap` must be at least 2 so that singularity is
/// always decided.
pub fn enumerate_minimizing<S: Scalar>(
    m: &TropMatrix<S>,
    cap: Option<usize>,
) -> Result<DetResult<S>> {
    if let Some(c) = cap {
        if c < 2 {
            return Err(Error::InvalidCap(c));
        }
    }
    let mut witnesses: Vec<Bijection> = Vec::new();
    let mut truncated = false;
    let summary = for_each_minimizing(m, |image| {
        if cap.is_some_and(|c| witnesses.len() == c) {
            truncated = true;
            return ControlFlow::Break(());
        }
        witnesses.push(bijection_from_image(image));
        ControlFlow::Continue(())
    })?;
    let mut sym_witnesses: Vec<SymMonomial> = Vec::new();
    for w in &witnesses {
        let m = w.sym_monomial();
        if !sym_witnesses.contains(&m) {
            sym_witnesses.push(m);
        }
    }
    Ok(DetResult { value: summary.value, witnesses, sym_witnesses, truncated })
}

/// Whether at least two bijections attain the tropical determinant.
///
/// Decided without full enumeration: with any optimal dual, a second optimal
/// bijection exists exactly when the tight subgraph contains a directed cycle
/// alternating against the found matching.
pub fn is_trop_singular<S: Scalar>(m: &TropMatrix<S>) -> Result<bool> {
    let n = m.ensure_square()?;
    let (matched_col, duals) = solve(m);
    let adj = tight_adjacency(m, &duals);
    // Directed graph on columns: the matched column of row i points to every
    // other tight column of row i. A cycle yields a second matching and vice
    // versa.
    let mut col_to_row = vec![0usize; n];
    for (i, &j) in matched_col.iter().enumerate() {
        col_to_row[j] = i;
    }
    // Colors: 0 unvisited, 1 on stack, 2 done.
    let mut color = vec![0u8; n];
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some(&(c, next)) = stack.last() {
            let row = col_to_row[c];
            if next < adj[row].len() {
                stack.last_mut().expect("nonempty stack").1 += 1;
                let t = adj[row][next];
                if t == matched_col[row] {
                    continue;
                }
                match color[t] {
                    1 => return Ok(true),
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    _ => {}
                }
            } else {
                color[c] = 2;
                stack.pop();
            }
        }
    }
    Ok(false)
}

/// Whether the submatrix of a symmetric parent selected by `s` has at least
/// two minimizing monomials under the identification `X[i,j] = X[j,i]`.
///
/// Monomials are formed in the parent's index space, so transposed selections
/// of the same entries quotient together. Stops at the second distinct
/// monomial.
pub fn is_sym_singular<S: Scalar>(parent: &TropMatrix<S>, s: &SubIndex) -> Result<bool> {
    parent.ensure_symmetric()?;
    s.check_bounds(parent.rows(), parent.cols())?;
    let sub = parent.submatrix(s)?;
    let mut first: Option<SymMonomial> = None;
    let mut distinct_pair = false;
    for_each_minimizing(&sub, |image| {
        let monomial = SymMonomial::from_pairs(
            image
                .iter()
                .enumerate()
                .map(|(t, &j)| (s.row_indices()[t], s.col_indices()[j])),
        );
        match &first {
            None => {
                first = Some(monomial);
                ControlFlow::Continue(())
            }
            Some(m) if *m == monomial => ControlFlow::Continue(()),
            Some(_) => {
                distinct_pair = true;
                ControlFlow::Break(())
            }
        }
    })?;
    Ok(distinct_pair)
}

/// Global-index minimizing witnesses of one submatrix, for building linear
/// cells: bijections from `s`'s row set onto its column set, plus the distinct
/// quotient monomials, all in the parent's index space.
pub(crate) struct SubWitnesses {
    pub bijections: Vec<Bijection>,
    pub sym_monomials: Vec<SymMonomial>,
    pub truncated: bool,
}

pub(crate) fn submatrix_witnesses<S: Scalar>(
    parent: &TropMatrix<S>,
    s: &SubIndex,
    cap: Option<usize>,
) -> Result<SubWitnesses> {
    s.check_bounds(parent.rows(), parent.cols())?;
    let sub = parent.submatrix(s)?;
    let local = enumerate_minimizing(&sub, cap)?;
    let bijections = local
        .witnesses
        .iter()
        .map(|w| {
            Bijection::new(
                s.row_indices().to_vec(),
                w.image().iter().map(|&j| s.col_indices()[j - 1]).collect(),
            )
            .expect("global reindexing preserves bijectivity")
        })
        .collect::<Vec<_>>();
    let mut sym_monomials: Vec<SymMonomial> = Vec::new();
    for b in &bijections {
        let m = b.sym_monomial();
        if !sym_monomials.contains(&m) {
            sym_monomials.push(m);
        }
    }
    Ok(SubWitnesses { bijections, sym_monomials, truncated: local.truncated })
}
