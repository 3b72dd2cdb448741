//! Independent reference implementations used as test oracles. Nothing here
//! calls the library's solvers.
#![allow(dead_code)]

use opinion_game::Network;
use rand::Rng;

pub type Mat = Vec<Vec<f64>>;

pub fn dense_w(net: &Network) -> Mat {
    let n = net.n();
    let mut m = vec![vec![0.0; n]; n];
    for (i, j, w) in net.edges() {
        m[i][j] = w;
    }
    m
}

pub fn transpose(m: &Mat) -> Mat {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub fn mat_vec(m: &Mat, v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(m: &Mat) -> Mat {
    let n = m.len();
    let mut a: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        let p = a[col][col];
        assert!(p.abs() > 1e-300, "singular matrix");
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// `Delta = (I - w)^-1` as a dense matrix.
pub fn delta(net: &Network) -> Mat {
    let w = dense_w(net);
    let n = w.len();
    let i_minus_w: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - w[i][j]).collect())
        .collect();
    inverse(&i_minus_w)
}

/// `sum_{eta < terms} m^eta rhs`.
pub fn neumann(m: &Mat, rhs: &[f64], terms: usize) -> Vec<f64> {
    let mut term = rhs.to_vec();
    let mut acc = rhs.to_vec();
    for _ in 1..terms {
        term = mat_vec(m, &term);
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
    }
    acc
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn hadamard(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Katz vectors of orders `1..=q` from dense `Delta^T` and Neumann-free
/// algebra: `r = Delta^T 1`, `r^(k) = Delta^T (r^(k-1) * w0)`.
pub fn katz_orders(net: &Network, q: usize) -> Vec<Vec<f64>> {
    let dt = transpose(&delta(net));
    let mut out = vec![mat_vec(&dt, &vec![1.0; net.n()])];
    for _ in 1..q {
        let prev = out.last().unwrap();
        out.push(mat_vec(&dt, &hadamard(prev, net.w0())));
    }
    out
}

/// Random network whose camp, bias and edge weights sum to at most 1 per
/// row, with edge weights summing to at most `edge_cap` (< 1). With
/// `nonneg`, edges and biases are nonnegative and `theta`, `v0` are set
/// for the bias-dependent setting.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, density: f64, edge_cap: f64, nonneg: bool) -> Network {
    let mut edges = Vec::new();
    let mut w0 = vec![0.0; n];
    let mut wg = vec![0.0; n];
    let mut wb = vec![0.0; n];
    let mut theta = vec![0.0; n];
    for i in 0..n {
        let bias: f64 = rng.random_range(0.0..0.6);
        w0[i] = if nonneg || rng.random_bool(0.7) { bias } else { -bias };
        let rest = 1.0 - bias;
        wg[i] = rng.random_range(0.0..0.25) * rest;
        wb[i] = rng.random_range(0.0..0.25) * rest;
        theta[i] = rng.random_range(0.0..0.5) * rest;
        let edge_total = (rest - wg[i] - wb[i]).min(edge_cap) * rng.random_range(0.3..1.0);
        let targets: Vec<usize> = (0..n).filter(|&j| j != i && rng.random_bool(density)).collect();
        if targets.is_empty() {
            continue;
        }
        let raw: Vec<f64> = targets.iter().map(|_| rng.random_range(0.1..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        for (&j, r) in targets.iter().zip(raw) {
            let mut w = edge_total * r / sum;
            if !nonneg && rng.random_bool(0.2) {
                w = -w;
            }
            edges.push((i, j, w));
        }
    }
    let v0 = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    Network::builder(n)
        .edges(edges)
        .w0(w0)
        .v0(v0)
        .wg(wg)
        .wb(wb)
        .theta(theta)
        .build()
        .unwrap()
}

pub fn random_vec<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

/// One phase of the dynamics with explicit camp weights, by plain
/// iteration of the update rule until the step is below `tol`.
pub fn iterate_phase(net: &Network, v_prev: &[f64], x: &[f64], y: &[f64], wg: &[f64], wb: &[f64], tol: f64) -> Vec<f64> {
    let w = dense_w(net);
    let n = net.n();
    let forcing: Vec<f64> = (0..n)
        .map(|i| net.w0()[i] * v_prev[i] + wg[i] * x[i] - wb[i] * y[i])
        .collect();
    let mut v = v_prev.to_vec();
    for _ in 0..1_000_000 {
        let next: Vec<f64> = (0..n)
            .map(|i| forcing[i] + w[i].iter().zip(&v).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let step = max_diff(&next, &v);
        v = next;
        if step < tol {
            return v;
        }
    }
    panic!("oracle iteration did not converge");
}

/// Two-phase opinion sum with bias-dependent camp weights, by running the
/// update rule directly.
pub fn dependent_two_phase_sum(net: &Network, x1: &[f64], x2: &[f64], y1: &[f64], y2: &[f64]) -> f64 {
    let weights = |v: &[f64]| -> (Vec<f64>, Vec<f64>) {
        (0..net.n())
            .map(|i| {
                let m = net.w0()[i] * v[i];
                (net.theta()[i] * (1.0 + m) / 2.0, net.theta()[i] * (1.0 - m) / 2.0)
            })
            .unzip()
    };
    let (g1, b1) = weights(net.v0());
    let v1 = iterate_phase(net, net.v0(), x1, y1, &g1, &b1, 1e-14);
    let (g2, b2) = weights(&v1);
    iterate_phase(net, &v1, x2, y2, &g2, &b2, 1e-14).iter().sum()
}

/// All vectors of length `n` with entries in `{0, step, 2 step, ...}`
/// summing to exactly `units * step`.
pub fn compositions(n: usize, units: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if units == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=units {
        for mut rest in compositions(n - 1, units - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Payoff bounds of a matrix game in pure strategies:
/// `(max_i min_j a_ij, min_j max_i a_ij)`.
pub fn pure_bounds(rows: &Mat) -> (f64, f64) {
    let maximin = rows
        .iter()
        .map(|r| r.iter().copied().fold(f64::INFINITY, f64::min))
        .fold(f64::NEG_INFINITY, f64::max);
    let cols = rows[0].len();
    let minimax = (0..cols)
        .map(|j| rows.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min);
    (maximin, minimax)
}
