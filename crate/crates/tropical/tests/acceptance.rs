//! Acceptance suite: one test per criterion, exact equality throughout, with
//! the stated wall-clock budgets. Each test prints a `criterion NN PASS` line
//! (visible with `--nocapture`).

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropical::assignment::tropdet;
use tropical::cells::cell_dimension;
use tropical::constructions::{
    append_combination_col, append_combination_row, border_pm, builtin, check_strict,
    strict_scaling_coefficients, sym_append, sym_border_pm, Coefficients,
};
use tropical::rank::{in_prevariety, rank_oracle, symmetric_tropical_rank, tropical_rank};
use tropical::theory::{
    is_basis_standard, prevariety_lower_bound_standard, prevariety_lower_bound_symmetric,
    variety_dim_standard, variety_dim_symmetric, Verdict,
};
use tropical::tropoly::{membership_via_minors, parse_poly, Point, TropPoly};
use tropical::{Matrix, Mode, Rational, Scalar, TropMatrix};

fn mat(name: &str) -> Matrix {
    builtin(name).expect("catalog name")
}

fn budget(criterion: u32, label: &str, limit: Duration, started: Instant) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < limit,
        "criterion {criterion} exceeded its {limit:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion} PASS {label} ({elapsed:.2?})");
}

#[test]
fn criterion_01_fano7_tropical_rank() {
    let t = Instant::now();
    assert_eq!(tropical_rank(&mat("fano7")).rank, 3);
    budget(1, "tropical_rank(fano7) = 3", Duration::from_secs(1), t);
}

#[test]
fn criterion_02_fano7_sym_ranks() {
    let t = Instant::now();
    let a = mat("fano7_sym");
    assert_eq!(tropical_rank(&a).rank, 3);
    assert_eq!(symmetric_tropical_rank(&a).unwrap().rank, 4);
    budget(
        2,
        "fano7_sym: tropical rank 3, symmetric tropical rank 4",
        Duration::from_secs(5),
        t,
    );
}

#[test]
fn criterion_03_fano13_sym_rank() {
    let t = Instant::now();
    assert_eq!(symmetric_tropical_rank(&mat("fano13_sym")).unwrap().rank, 3);
    budget(
        3,
        "symmetric_tropical_rank(fano13_sym) = 3",
        Duration::from_secs(120),
        t,
    );
}

#[test]
fn criterion_04_shitov_ranks() {
    let t = Instant::now();
    assert_eq!(tropical_rank(&mat("shitov6")).rank, 4);
    assert_eq!(symmetric_tropical_rank(&mat("shitov6_sym")).unwrap().rank, 4);
    budget(
        4,
        "shitov6 rank 4; shitov6_sym symmetric rank 4",
        Duration::from_secs(5),
        t,
    );
}

#[test]
fn criterion_05_cell_dimension_33() {
    let t = Instant::now();
    let (cell, sys) = cell_dimension(&mat("shitov6_sym_v2"), 5, Mode::Standard, None).unwrap();
    assert_eq!(sys.ambient_dim, 36);
    assert_eq!(cell.dimension, 33);
    budget(5, "cell dim of shitov6_sym_v2 at r=5 = 33 in R^36", Duration::from_secs(10), t);
}

#[test]
fn criterion_06_cell_dimension_34() {
    let t = Instant::now();
    let (cell, sys) = cell_dimension(&mat("fano7_sym"), 4, Mode::Standard, None).unwrap();
    assert_eq!(sys.ambient_dim, 49);
    assert_eq!(cell.dimension, 34);
    budget(6, "cell dim of fano7_sym at r=4 = 34 in R^49", Duration::from_secs(60), t);
}

#[test]
fn criterion_07_symmetric_cell_dimension_19() {
    let t = Instant::now();
    let (cell, sys) =
        cell_dimension(&mat("shitov6_sym_v2"), 5, Mode::Symmetric, None).unwrap();
    assert_eq!(sys.ambient_dim, 21);
    // The variant differing at entry (1,5) is reported alongside; only the
    // displayed matrix's value is asserted.
    let (alt, _) = cell_dimension(&mat("shitov6_sym"), 5, Mode::Symmetric, None).unwrap();
    println!(
        "criterion 7 info: symmetric cell dims: shitov6_sym_v2 = {}, shitov6_sym = {}",
        cell.dimension, alt.dimension
    );
    assert_eq!(
        cell.dimension, 19,
        "shitov6_sym_v2 gave {}; the matrix identification is ambiguous, \
         shitov6_sym gives {} — flagging rather than silently failing both",
        cell.dimension, alt.dimension
    );
    budget(7, "symmetric cell dim of shitov6_sym_v2 at r=5 = 19 in R^21", Duration::from_secs(10), t);
}

#[test]
fn criterion_08_variety_dimension_formulas() {
    let t = Instant::now();
    assert_eq!(variety_dim_standard(6, 6, 5).unwrap(), 32);
    assert_eq!(variety_dim_standard(7, 7, 4).unwrap(), 33);
    assert_eq!(variety_dim_symmetric(6, 5).unwrap(), 18);
    budget(8, "variety dims: (6,6,5)=32, (7,7,4)=33, sym (6,5)=18", Duration::from_secs(1), t);
}

#[test]
fn criterion_09_gap_strictness_sweep() {
    let t = Instant::now();
    let mut standard_cases = 0;
    for m in 1..=12usize {
        for n in 1..=12usize {
            for r in 1..=m.min(n) {
                if is_basis_standard(m, n, r).unwrap().value == Verdict::No {
                    let report = prevariety_lower_bound_standard(m, n, r).unwrap();
                    assert!(report.strict, "no strict gap at ({m},{n},{r})");
                    standard_cases += 1;
                }
            }
        }
    }
    assert!(standard_cases > 0);
    // Where the minors form a basis, the report generator refuses: the
    // theorems claim nothing there.
    for m in 1..=12usize {
        for n in 1..=12usize {
            for r in 1..=m.min(n) {
                if is_basis_standard(m, n, r).unwrap().value != Verdict::No {
                    assert!(prevariety_lower_bound_standard(m, n, r).is_err());
                }
            }
        }
    }
    let mut symmetric_cases = 0;
    for n in 1..=12usize {
        for r in 5..n {
            let report = prevariety_lower_bound_symmetric(n, r).unwrap();
            assert!(report.strict, "no strict symmetric gap at ({n},{r})");
            symmetric_cases += 1;
        }
    }
    assert!(symmetric_cases > 0);
    budget(
        9,
        &format!("strict gaps at all {standard_cases} standard and {symmetric_cases} symmetric no-basis cases"),
        Duration::from_secs(1),
        t,
    );
}

#[test]
fn criterion_10_q_and_r_equation_systems() {
    let t = Instant::now();
    let (q_cell, q_sys) = cell_dimension(&mat("q3"), 3, Mode::Standard, None).unwrap();
    assert_eq!(q_sys.equations.len(), 1);
    assert_eq!(q_cell.system_rank, 1);
    let (r_cell, r_sys) = cell_dimension(&mat("r3"), 3, Mode::Standard, None).unwrap();
    assert_eq!(r_sys.equations.len(), 2);
    assert_eq!(r_cell.system_rank, 2);
    budget(10, "Q: 1 equation; R: 2 independent equations", Duration::from_secs(1), t);
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data: Vec<Vec<Rational>> = (0..rows)
        .map(|_| (0..cols).map(|_| Rational::from_int(rng.gen_range(0..=4))).collect())
        .collect();
    TropMatrix::from_rows(data).unwrap()
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut rows = vec![vec![Rational::from_int(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = Rational::from_int(rng.gen_range(0..=4));
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    TropMatrix::from_rows(rows).unwrap().with_symmetric_marker().unwrap()
}

fn random_coefficients(rng: &mut ChaCha8Rng, bound: usize) -> Coefficients<Rational> {
    let k = rng.gen_range(1..=bound);
    let mut indices: Vec<usize> = (1..=bound).collect();
    for i in (1..indices.len()).rev() {
        indices.swap(i, rng.gen_range(0..=i));
    }
    Coefficients::from_pairs(
        indices[..k]
            .iter()
            .map(|&i| (i, Rational::from_int(rng.gen_range(-2..=2)))),
    )
    .unwrap()
}

#[test]
fn criterion_11_construction_property_suite() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut certificates = 0;
    for round in 0..500 {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=5);
        let a = random_matrix(&mut rng, m, n);

        // Appending a tropical combination preserves rank.
        let col_coeffs = random_coefficients(&mut rng, n);
        let widened = append_combination_col(&a, &col_coeffs).unwrap();
        let base_rank = rank_oracle(&a, Mode::Standard).unwrap();
        assert_eq!(rank_oracle(&widened, Mode::Standard).unwrap(), base_rank, "round {round}");
        let row_coeffs = random_coefficients(&mut rng, m);
        let taller = append_combination_row(&a, &row_coeffs).unwrap();
        assert_eq!(rank_oracle(&taller, Mode::Standard).unwrap(), base_rank, "round {round}");

        // Bordering increments rank by exactly one.
        let bordered = border_pm(&a, None, None).unwrap();
        assert_eq!(rank_oracle(&bordered, Mode::Standard).unwrap(), base_rank + 1);

        // Assignment path agrees with the factorial oracle.
        assert_eq!(tropical_rank(&a).rank, base_rank);

        // Membership through minor polynomials agrees with the rank path.
        for r in 1..=m.min(n) {
            assert_eq!(
                membership_via_minors(&a, r, Mode::Standard).unwrap(),
                in_prevariety(&a, r, Mode::Standard).unwrap(),
                "round {round} r {r}"
            );
        }

        // Strict combination coefficients exist and verify on nonsingular
        // squares.
        if m == n {
            let det = tropdet(&a).unwrap();
            if let Ok(c) = strict_scaling_coefficients(&a, &det.witness) {
                assert!(check_strict(&a, &det.witness, &c), "round {round}");
                certificates += 1;
            }
        }

        // Symmetric variants.
        let s = random_symmetric(&mut rng, n);
        let sym_rank = rank_oracle(&s, Mode::Symmetric).unwrap();
        assert_eq!(symmetric_tropical_rank(&s).unwrap().rank, sym_rank);
        assert!(tropical_rank(&s).rank <= sym_rank, "round {round}");
        let appended = sym_append(&s, &random_coefficients(&mut rng, n)).unwrap();
        assert_eq!(rank_oracle(&appended, Mode::Symmetric).unwrap(), sym_rank);
        let sym_bordered = sym_border_pm(&s, None, None).unwrap();
        assert_eq!(rank_oracle(&sym_bordered, Mode::Symmetric).unwrap(), sym_rank + 1);
        for r in 1..=n {
            assert_eq!(
                membership_via_minors(&s, r, Mode::Symmetric).unwrap(),
                in_prevariety(&s, r, Mode::Symmetric).unwrap(),
                "round {round} sym r {r}"
            );
        }
    }
    assert!(certificates >= 50, "only {certificates} nonsingular squares seen");
    budget(
        11,
        &format!("500-round construction suite ({certificates} coefficient certificates)"),
        Duration::from_secs(120),
        t,
    );
}

#[test]
fn criterion_12_tropical_line_literals() {
    let t = Instant::now();
    let f: TropPoly<Rational> = parse_poly("X (+) Y (+) 0").unwrap();
    let g: TropPoly<Rational> = parse_poly("1X (+) 1Y (+) 0").unwrap();
    let at = |v: Rational| Point::xy(v.clone(), v);
    assert!(f.in_hypersurface(&Point::xy(Rational::from_int(1), Rational::from_int(0))).unwrap());
    assert!(!f.in_hypersurface(&Point::xy(Rational::from_int(-1), Rational::from_int(0))).unwrap());
    for (a, joint) in [
        (Rational::from_int(-3), true),
        (Rational::from_int(-1), true),
        (Rational::new((-1).into(), 2.into()), false),
        (Rational::from_int(0), false),
    ] {
        let p = at(a.clone());
        let on_both = f.in_hypersurface(&p).unwrap() && g.in_hypersurface(&p).unwrap();
        assert_eq!(on_both, joint, "diagonal point ({a},{a})");
    }
    budget(12, "tropical line membership literals", Duration::from_secs(1), t);
}

#[test]
fn criterion_13_rank_one_cell_dimensions() {
    let t = Instant::now();
    for (m, n) in [(2usize, 2usize), (3, 3), (3, 4)] {
        let (cell, _) = cell_dimension(&Matrix::zeros(m, n), 2, Mode::Standard, None).unwrap();
        assert_eq!(cell.dimension, m + n - 1, "{m}x{n}");
    }
    budget(13, "all-zeros r=2 cell dims equal m+n-1", Duration::from_secs(1), t);
}
