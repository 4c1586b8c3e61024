//! Phase-1 revised simplex for small equality-form feasibility problems
//! `Ax = b, x >= 0`, generic over an ordered field.
//!
//! Columns are generated on demand so the assignment matrix of a
//! feasibility problem with 2^m columns never has to be materialized.
//! Bland's rule (lowest eligible index entering, lowest basis id on ratio
//! ties) rules out cycling, so exact-rational runs always terminate.

use crate::scalar::LpScalar;

/// Result of the phase-1 solve.
pub(crate) enum Phase1Outcome<U> {
    /// A nonnegative solution of `Ax = b`, length `cols`.
    Feasible(Vec<U>),
    /// Row multipliers `y` with `y·A_j <= 0` for every column and
    /// `y·b > 0`, certifying that no nonnegative solution exists.
    Infeasible(Vec<U>),
}

/// Solves the feasibility problem for the matrix given entry-wise by
/// `entry(row, col)`.
pub(crate) fn equality_feasibility<U, F>(
    rows: usize,
    cols: usize,
    rhs: &[U],
    entry: F,
) -> Phase1Outcome<U>
where
    U: LpScalar,
    F: Fn(usize, usize) -> U,
{
    assert_eq!(rhs.len(), rows);
    let tol = U::pivot_tol();

    // Normalize row signs so the artificial basis starts feasible.
    let flip: Vec<bool> = rhs.iter().map(|v| *v < U::zero()).collect();
    let b: Vec<U> = rhs.iter().map(|v| v.abs()).collect();
    let a = |i: usize, j: usize| -> U {
        let v = entry(i, j);
        if flip[i] {
            -v
        } else {
            v
        }
    };

    let mut binv: Vec<Vec<U>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { U::one() } else { U::zero() })
                .collect()
        })
        .collect();
    // Artificial column i carries the id `cols + i`.
    let mut basis: Vec<usize> = (0..rows).map(|i| cols + i).collect();

    loop {
        let xb: Vec<U> = binv.iter().map(|row| dot(row, &b)).collect();
        // Phase-1 multipliers: c_B has 1 on artificial rows, 0 elsewhere.
        let mut y = vec![U::zero(); rows];
        for (i, &id) in basis.iter().enumerate() {
            if id >= cols {
                for (yj, bij) in y.iter_mut().zip(binv[i].iter()) {
                    *yj = yj.clone() + bij.clone();
                }
            }
        }

        // Entering column: lowest structural index with positive y·A_j.
        let mut entering = None;
        for j in 0..cols {
            let mut yaj = U::zero();
            for (i, yi) in y.iter().enumerate() {
                if !yi.is_negligible() {
                    yaj = yaj + yi.clone() * a(i, j);
                }
            }
            if yaj > tol {
                entering = Some(j);
                break;
            }
        }

        let j = match entering {
            Some(j) => j,
            None => {
                let objective = dot(&y, &b);
                if objective > tol {
                    let farkas = y
                        .iter()
                        .zip(flip.iter())
                        .map(|(yi, &f)| if f { -yi.clone() } else { yi.clone() })
                        .collect();
                    return Phase1Outcome::Infeasible(farkas);
                }
                let mut x = vec![U::zero(); cols];
                for (i, &id) in basis.iter().enumerate() {
                    if id < cols {
                        let v = xb[i].clone();
                        x[id] = if v < U::zero() { U::zero() } else { v };
                    }
                }
                return Phase1Outcome::Feasible(x);
            }
        };

        // Direction through the current basis.
        let d: Vec<U> = binv
            .iter()
            .map(|row| {
                let mut acc = U::zero();
                for (t, r) in row.iter().enumerate() {
                    if !r.is_negligible() {
                        acc = acc + r.clone() * a(t, j);
                    }
                }
                acc
            })
            .collect();

        // Ratio test, ties broken toward the smallest basis id.
        let mut leave: Option<(usize, U)> = None;
        for i in 0..rows {
            if d[i] > tol {
                let ratio = xb[i].clone() / d[i].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase-1 objective is bounded below, a pivot row must exist");

        let pivot = d[r].clone();
        for v in binv[r].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        for i in 0..rows {
            if i != r && !d[i].is_negligible() {
                let factor = d[i].clone();
                let pivot_row = binv[r].clone();
                for (cell, pr) in binv[i].iter_mut().zip(pivot_row.iter()) {
                    let delta = factor.clone() * pr.clone();
                    *cell = cell.clone() - delta;
                }
            }
        }
        basis[r] = j;
    }
}

fn dot<U: LpScalar>(a: &[U], b: &[U]) -> U {
    a.iter()
        .zip(b.iter())
        .fold(U::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
