mod common;

use common::*;
use num_complex::Complex;
use proptest::prelude::*;
use qgame::linalg::CMatrix;
use qgame::{build_mixing_matrix, build_unitary, feasible_domain, theta, Game, SchmidtState};

fn feasible_p(dim: usize) -> impl Strategy<Value = f64> {
    let lo = feasible_domain::<f64>(dim).unwrap().p_min;
    (0.0..=1.0f64).prop_map(move |t| lo + (1.0 - lo) * t)
}

fn dim_and_p() -> impl Strategy<Value = (usize, f64)> {
    (2usize..=6).prop_flat_map(|d| (Just(d), feasible_p(d)))
}

/// Nonnegative unit vector of length `len`.
fn schmidt(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, len)
        .prop_filter("nonzero", |v| v.iter().any(|x| *x > 1e-3))
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn restricted_operator_is_unitary((dim, p) in dim_and_p()) {
        let u = build_unitary(p, dim).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-12);
    }
}

proptest! {
    #[test]
    fn theta_decreases_towards_feasibility_bound(dim in 3usize..=8, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let dom = feasible_domain::<f64>(dim).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        let p1 = dom.p_min + (1.0 - dom.p_min) * lo;
        let p2 = dom.p_min + (1.0 - dom.p_min) * hi;
        prop_assert!(theta(p1, dim).unwrap() <= theta(p2, dim).unwrap());
    }

    #[test]
    fn outcome_distribution_is_normalized(coeffs in schmidt(3), p in feasible_p(3), q in feasible_p(4)) {
        let a = qgame::PayoffMatrix::from_fn(3, 4, |i, j| (i * 4 + j) as f64).unwrap();
        let g = Game::new(a, SchmidtState::new(coeffs).unwrap()).unwrap();
        let x = g.probabilities(p, q).unwrap();
        prop_assert!((x.total() - 1.0).abs() < 1e-12);
        prop_assert!(x.as_slice().iter().all(|&v| (-1e-15..=1.0 + 1e-12).contains(&v)));
    }

    #[test]
    fn classical_limit_is_first_entry(entries in prop::collection::vec(-5.0..5.0f64, 12)) {
        let a = qgame::PayoffMatrix::from_fn(3, 4, |i, j| entries[i * 4 + j]).unwrap();
        let g = Game::new(a, SchmidtState::basis(0, 3).unwrap()).unwrap();
        prop_assert!((g.payoff_at(1.0, 1.0).unwrap() - entries[0]).abs() < 1e-12);
    }
}

#[test]
fn mixing_matrix_square_identity() {
    for n in 2..=8 {
        let m = build_mixing_matrix::<f64>(n).unwrap();
        let mc = m.to_complex();
        let sq = &mc * &mc;
        let c = m.square_coefficient();
        let want = CMatrix::from_fn(n, n, |i, j| {
            Complex::new(if i == j { 1.0 } else { 0.0 } + c * m.get(i, j), 0.0)
        });
        assert!(sq.max_abs_diff(&want) < 1e-12, "n = {n}");
    }
}

#[test]
fn mixing_matrix_spreads_basis_state_over_the_rest() {
    for n in 2..=8 {
        let m = build_mixing_matrix::<f64>(n).unwrap();
        let amp = 1.0 / ((n - 1) as f64).sqrt();
        for k in 0..n {
            let v = m.apply_basis(k);
            for (j, x) in v.iter().enumerate() {
                let want = if j == k { 0.0 } else { amp };
                assert!((x - want).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn identity_limit_all_dims() {
    for n in 2..=8 {
        let u = build_unitary(1.0, n).unwrap();
        assert!(u.matrix().max_abs_diff(&CMatrix::identity(n)) < 1e-12);
    }
}

#[test]
fn product_state_payoff_is_bilinear() {
    // Least-squares fit of a + b p + c q + d pq over a grid; the residual
    // must vanish for every product state.
    for (a, k) in [(eq1(), 0), (eq1(), 1), (eq10(), 0), (eq10(), 1), (eq10(), 2)] {
        let len = a.rows().min(a.cols());
        let g = Game::new(a, SchmidtState::basis(k, len).unwrap()).unwrap();
        let ps = g.domain_a().linspace(9);
        let qs = g.domain_b().linspace(9);
        let mut rows = Vec::new();
        let mut ys = Vec::new();
        for &p in &ps {
            for &q in &qs {
                rows.push([1.0, p, q, p * q]);
                ys.push(g.payoff_at(p, q).unwrap());
            }
        }
        let coef = least_squares4(&rows, &ys);
        let resid = rows
            .iter()
            .zip(&ys)
            .map(|(r, y)| (r.iter().zip(&coef).map(|(x, c)| x * c).sum::<f64>() - y).abs())
            .fold(0.0, f64::max);
        assert!(resid < 1e-10, "state {k}: residual {resid:e}");
    }
}

fn least_squares4(rows: &[[f64; 4]], ys: &[f64]) -> [f64; 4] {
    // Normal equations with Gaussian elimination; 4x4 and well conditioned.
    let mut m = [[0.0; 5]; 4];
    for (r, y) in rows.iter().zip(ys) {
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += r[i] * r[j];
            }
            m[i][4] += r[i] * y;
        }
    }
    for c in 0..4 {
        let piv = (c..4).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, piv);
        for r in 0..4 {
            if r != c {
                let f = m[r][c] / m[c][c];
                let pivot = m[c];
                for (x, y) in m[r][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * y;
                }
            }
        }
    }
    [m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]]
}

#[test]
fn feasibility_bound_is_where_phase_vanishes() {
    for n in 3..=6 {
        let dom = feasible_domain::<f64>(n).unwrap();
        let r = (n as f64 - 2.0) / n as f64;
        assert!((dom.p_min - r * r).abs() < 1e-16);
        assert_eq!(theta(dom.p_min, n).unwrap(), 0.0);
        let arg = qgame::strategy::theta_argument(dom.p_min, n).unwrap();
        assert!((arg - 1.0).abs() < 1e-12);
        assert!(theta(dom.p_min - 1e-9, n).is_err());
    }
}

#[test]
fn single_precision_engine_tracks_double() {
    let a32 = qgame::engine::PayoffMatrix::<f32>::new(
        EQ10.iter().map(|r| r.iter().map(|&x| x as f32).collect()).collect(),
    )
    .unwrap();
    let s = (1.0f32 / 3.0).sqrt();
    let g32 = qgame::QuantumGame::new(a32, qgame::engine::SchmidtState::with_tolerance(vec![s; 3], 1e-6).unwrap()).unwrap();
    let s64 = (1.0f64 / 3.0).sqrt();
    let g64 = Game::new(eq10(), SchmidtState::new(vec![s64; 3]).unwrap()).unwrap();
    for (p, q) in [(0.2, 0.3), (0.5, 0.9), (1.0, 0.15)] {
        let v32 = g32.payoff_at(p as f32, q as f32).unwrap() as f64;
        let v64 = g64.payoff_at(p, q).unwrap();
        assert!((v32 - v64).abs() < 1e-5);
    }
}
