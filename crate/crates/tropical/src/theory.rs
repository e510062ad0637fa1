//! Dimension formulas for determinantal tropical varieties, tropical-basis
//! predicates, and the induction bookkeeping that certifies dimension gaps
//! between prevarieties and varieties.
//!
//! A gap report starts from a base case whose prevariety dimension was
//! computed exactly (the linear-cell dimensions 33, 34 and 19), then walks a
//! canonical chain of size-growth moves, each of which raises the prevariety
//! dimension bound by the increment its construction guarantees. The bound is
//! compared against the closed-form variety dimension.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{SubIndex, TropMatrix};
use crate::rank::find_nonsingular;
use crate::scalar::Scalar;
use crate::Mode;

/// Dimension of the variety of `m x n` matrices of rank below `r`:
/// `(m + n - r + 1)(r - 1)`.
pub fn variety_dim_standard(m: usize, n: usize, r: usize) -> Result<usize> {
    if r < 1 || r > m.min(n) {
        return Err(Error::InvalidMinorSize { r, max: m.min(n) });
    }
    Ok((m + n - r + 1) * (r - 1))
}

/// Dimension of the variety of symmetric `n x n` matrices of rank below `r`:
/// `(2nr - 2n + 3r - r^2 - 2) / 2`.
pub fn variety_dim_symmetric(n: usize, r: usize) -> Result<usize> {
    if r < 1 || r > n {
        return Err(Error::InvalidMinorSize { r, max: n });
    }
    let numerator = 2 * (n as i64) * (r as i64) - 2 * (n as i64) + 3 * (r as i64)
        - (r as i64) * (r as i64)
        - 2;
    assert!(numerator >= 0 && numerator % 2 == 0, "formula numerator must be a nonnegative even integer");
    Ok((numerator / 2) as usize)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Whether a family of minors is a tropical basis, with the clause that fired.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct BasisVerdict {
    pub value: Verdict,
    pub citation: &'static str,
}

/// Are the `r x r` minors of an `m x n` matrix of indeterminates a tropical
/// basis? Yes iff `r = min(m,n)`, `r <= 3`, or `r = 4` with `min(m,n) <= 6`.
pub fn is_basis_standard(m: usize, n: usize, r: usize) -> Result<BasisVerdict> {
    let min = m.min(n);
    if r < 1 || r > min {
        return Err(Error::InvalidMinorSize { r, max: min });
    }
    let verdict = if r == min {
        BasisVerdict { value: Verdict::Yes, citation: "r = min(m,n)" }
    } else if r <= 3 {
        BasisVerdict { value: Verdict::Yes, citation: "r <= 3" }
    } else if r == 4 && min <= 6 {
        BasisVerdict { value: Verdict::Yes, citation: "r = 4 and min(m,n) <= 6" }
    } else {
        BasisVerdict { value: Verdict::No, citation: "4 <= r < min(m,n) outside the basis clauses" }
    };
    Ok(verdict)
}

/// Are the `r x r` minors of a symmetric `n x n` matrix of indeterminates a
/// tropical basis? Yes for `r` in `{1, 2, 3, n}`; No for `4 < r < n` and for
/// `r = 4, n > 12`; Unknown for `r = 4, 5 <= n <= 12`.
pub fn is_basis_symmetric(n: usize, r: usize) -> Result<BasisVerdict> {
    if r < 1 || r > n {
        return Err(Error::InvalidMinorSize { r, max: n });
    }
    let verdict = if r == n {
        BasisVerdict { value: Verdict::Yes, citation: "r = n" }
    } else if r == 1 {
        // 1x1 minors are single variables; vacuously a basis.
        BasisVerdict { value: Verdict::Yes, citation: "r = 1 (single variables)" }
    } else if r <= 3 {
        BasisVerdict { value: Verdict::Yes, citation: "r = 2 or r = 3" }
    } else if r == 4 && n > 12 {
        BasisVerdict { value: Verdict::No, citation: "r = 4 and n > 12" }
    } else if r == 4 {
        BasisVerdict { value: Verdict::Unknown, citation: "r = 4 and 5 <= n <= 12 is open" }
    } else {
        BasisVerdict { value: Verdict::No, citation: "4 < r < n" }
    };
    Ok(verdict)
}

/// Parameters of one prevariety, standard or symmetric.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum GapParams {
    Standard { m: usize, n: usize, r: usize },
    Symmetric { n: usize, r: usize },
}

impl std::fmt::Display for GapParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GapParams::Standard { m, n, r } => write!(f, "({m},{n},{r})"),
            GapParams::Symmetric { n, r } => write!(f, "({n},{r}) symmetric"),
        }
    }
}

/// One step of the induction chain, named by the construction it rides on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct GapMove {
    pub via: &'static str,
    pub from: GapParams,
    pub to: GapParams,
    pub increment: usize,
}

/// A dimension-gap certificate: base case plus growth moves against the
/// closed-form variety dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GapReport {
    pub params: GapParams,
    pub variety_dim: usize,
    pub prevariety_lower_bound: usize,
    pub strict: bool,
    pub base: GapParams,
    pub base_dim: usize,
    pub moves: Vec<GapMove>,
}

impl GapReport {
    /// Text table mirroring the dimension inequality and its derivation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "prevariety {} : variety dim {} {} {} <= prevariety dim\n",
            self.params,
            self.variety_dim,
            if self.strict { "<" } else { "!<" },
            self.prevariety_lower_bound,
        ));
        out.push_str(&format!("  base {} -> {}\n", self.base, self.base_dim));
        let mut bound = self.base_dim;
        for mv in &self.moves {
            bound += mv.increment;
            out.push_str(&format!(
                "  {} -> {} via {} : +{} -> {}\n",
                mv.from, mv.to, mv.via, mv.increment, bound
            ));
        }
        out
    }
}

/// Exact prevariety dimensions established for the chain base cases.
pub const BASE_STANDARD_R4: (usize, usize, usize, usize) = (7, 7, 4, 34);
pub const BASE_STANDARD_R5: (usize, usize, usize, usize) = (6, 6, 5, 33);
pub const BASE_SYMMETRIC: (usize, usize, usize) = (6, 5, 19);

/// Lower bound on the dimension of the prevariety of `r x r` minors of an
/// `m x n` matrix, with the canonical induction path: diagonal border moves
/// first (from the base at the target rank), then row and column growth.
///
/// Refuses parameters where the minors are a tropical basis (no gap is
/// claimed there).
pub fn prevariety_lower_bound_standard(m: usize, n: usize, r: usize) -> Result<GapReport> {
    let verdict = is_basis_standard(m, n, r)?;
    if verdict.value != Verdict::No {
        return Err(Error::OutsideTheorem(format!(
            "the {r}x{r} minors of a {m}x{n} matrix are not in the no-basis regime ({})",
            verdict.citation
        )));
    }

    let (mut p, mut q, mut s, base_dim) = if r == 4 {
        BASE_STANDARD_R4
    } else {
        BASE_STANDARD_R5
    };
    let base = GapParams::Standard { m: p, n: q, r: s };
    let mut bound = base_dim;
    let mut moves = Vec::new();

    while s < r {
        let from = GapParams::Standard { m: p, n: q, r: s };
        let increment = p + q + 1;
        p += 1;
        q += 1;
        s += 1;
        bound += increment;
        moves.push(GapMove {
            via: "border",
            from,
            to: GapParams::Standard { m: p, n: q, r: s },
            increment,
        });
    }
    debug_assert!(p <= m && q <= n, "no-basis targets sit above the base");
    while p < m {
        let from = GapParams::Standard { m: p, n: q, r: s };
        p += 1;
        bound += r - 1;
        moves.push(GapMove {
            via: "append-row",
            from,
            to: GapParams::Standard { m: p, n: q, r: s },
            increment: r - 1,
        });
    }
    while q < n {
        let from = GapParams::Standard { m: p, n: q, r: s };
        q += 1;
        bound += r - 1;
        moves.push(GapMove {
            via: "append-col",
            from,
            to: GapParams::Standard { m: p, n: q, r: s },
            increment: r - 1,
        });
    }

    let variety_dim = variety_dim_standard(m, n, r)?;
    Ok(GapReport {
        params: GapParams::Standard { m, n, r },
        variety_dim,
        prevariety_lower_bound: bound,
        strict: bound > variety_dim,
        base,
        base_dim,
        moves,
    })
}

/// Symmetric analog of [`prevariety_lower_bound_standard`], valid for
/// `4 < r < n` only.
pub fn prevariety_lower_bound_symmetric(n: usize, r: usize) -> Result<GapReport> {
    if !(r > 4 && r < n) {
        return Err(Error::OutsideTheorem(format!(
            "the symmetric dimension gap is established only for 4 < r < n, got ({n},{r})"
        )));
    }

    let (mut p, mut s, base_dim) = BASE_SYMMETRIC;
    let base = GapParams::Symmetric { n: p, r: s };
    let mut bound = base_dim;
    let mut moves = Vec::new();

    while s < r {
        let from = GapParams::Symmetric { n: p, r: s };
        let increment = p + 1;
        p += 1;
        s += 1;
        bound += increment;
        moves.push(GapMove {
            via: "sym-border",
            from,
            to: GapParams::Symmetric { n: p, r: s },
            increment,
        });
    }
    debug_assert!(p <= n, "no-basis targets sit above the base");
    while p < n {
        let from = GapParams::Symmetric { n: p, r: s };
        p += 1;
        bound += r - 1;
        moves.push(GapMove {
            via: "sym-append",
            from,
            to: GapParams::Symmetric { n: p, r: s },
            increment: r - 1,
        });
    }

    let variety_dim = variety_dim_symmetric(n, r)?;
    Ok(GapReport {
        params: GapParams::Symmetric { n, r },
        variety_dim,
        prevariety_lower_bound: bound,
        strict: bound > variety_dim,
        base,
        base_dim,
        moves,
    })
}

/// Lexicographically first `k x k` tropically nonsingular submatrix of a
/// symmetric matrix, if one exists. This is the hypothesis witness the
/// symmetric size-growth move needs at its base matrix.
pub fn find_nonsingular_submatrix<S: Scalar>(
    a: &TropMatrix<S>,
    k: usize,
) -> Result<Option<SubIndex>> {
    a.ensure_symmetric()?;
    let max = a.rows().min(a.cols());
    if k < 1 || k > max {
        return Err(Error::InvalidMinorSize { r: k, max });
    }
    Ok(find_nonsingular(a, k, Mode::Standard))
}
