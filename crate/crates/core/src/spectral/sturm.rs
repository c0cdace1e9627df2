//! Sturm-sequence counting, bisection and inverse iteration on the truncated
//! operator. Float only.

use super::TridiagonalOperator;
use crate::error::{Error, Result};
use crate::numerics::Real;

/// Number of eigenvalues of the truncated matrix strictly below `x`.
///
/// Counts negative pivots of the LDLᵀ factorisation of `T − xI`. A pivot that
/// hits exactly zero is replaced by `−ε·‖row‖` (the row of `T − xI`), which
/// treats `x` as lying just above the eigenvalue.
pub fn sturm_count<F: Real>(op: &TridiagonalOperator, x: F) -> usize {
    let diag: Vec<F> = op.diagonal();
    let off = op.off_diagonal_value::<F>();
    let off_sq = off * off;
    let mut count = 0;
    let mut pivot = F::one();
    for (i, &d) in diag.iter().enumerate() {
        let shifted = d - x;
        pivot = if i == 0 {
            shifted
        } else {
            shifted - off_sq / pivot
        };
        if pivot == F::zero() {
            let neighbours = if i == 0 || i + 1 == diag.len() { 1 } else { 2 };
            let row = shifted.abs() + off.abs() * F::from_usize(neighbours);
            let guard = F::epsilon() * if row > F::zero() { row } else { F::one() };
            pivot = -guard;
        }
        if pivot < F::zero() {
            count += 1;
        }
    }
    count
}

/// Bisection for the single eigenvalue inside `bracket`, to width `tol`.
pub fn eigen_bisection<F: Real>(op: &TridiagonalOperator, bracket: (F, F), tol: F) -> Result<F> {
    let (mut lo, mut hi) = bracket;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidArgument("bracket must satisfy lo < hi".into()));
    }
    let below = sturm_count(op, lo);
    let count = sturm_count(op, hi) - below;
    if count != 1 {
        return Err(Error::BadBracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            count,
        });
    }
    let two = F::from_usize(2);
    while hi - lo > tol {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(op, mid) > below {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Gershgorin interval enclosing the whole spectrum.
pub fn gershgorin_bounds<F: Real>(op: &TridiagonalOperator) -> (F, F) {
    let diag: Vec<F> = op.diagonal();
    let radius = op.off_diagonal_value::<F>().abs() * F::from_usize(2);
    let lo = diag.iter().fold(F::infinity(), |acc, &d| acc.min(d - radius));
    let hi = diag.iter().fold(F::neg_infinity(), |acc, &d| acc.max(d + radius));
    (lo, hi)
}

/// The `index`-th smallest eigenvalue (0-based) to width `tol`, found by
/// bisection on the Sturm count alone.
pub fn kth_eigenvalue<F: Real>(op: &TridiagonalOperator, index: usize, tol: F) -> Result<F> {
    if index >= op.size {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue index {index} out of range for size {}",
            op.size
        )));
    }
    let (mut lo, mut hi) = gershgorin_bounds::<F>(op);
    let two = F::from_usize(2);
    while hi - lo > tol {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(op, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// The `count` largest eigenvalues in descending order.
pub fn largest_eigenvalues<F: Real>(op: &TridiagonalOperator, count: usize, tol: F) -> Result<Vec<F>> {
    (0..count.min(op.size))
        .map(|i| kth_eigenvalue(op, op.size - 1 - i, tol))
        .collect()
}

/// Solves `(T − shift·I) x = rhs` by Gaussian elimination with partial
/// pivoting on the tridiagonal band. Zero pivots are nudged to `ε`.
fn shifted_solve(op: &TridiagonalOperator, shift: f64, rhs: &mut [f64]) {
    let n = op.size;
    let mut d: Vec<f64> = op.diagonal::<f64>().iter().map(|v| v - shift).collect();
    let off = op.off_diagonal_value::<f64>();
    let mut dl = vec![off; n.saturating_sub(1)];
    let mut du = vec![off; n.saturating_sub(1)];
    let guard = |v: f64| if v == 0.0 { f64::EPSILON } else { v };
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            let fact = dl[i] / guard(d[i]);
            d[i + 1] -= fact * du[i];
            rhs[i + 1] -= fact * rhs[i];
            dl[i] = 0.0;
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            } else {
                dl[i] = 0.0;
            }
            du[i] = temp;
            let temp = rhs[i];
            rhs[i] = rhs[i + 1];
            rhs[i + 1] = temp - fact * rhs[i + 1];
        }
    }
    rhs[n - 1] /= guard(d[n - 1]);
    if n > 1 {
        rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / guard(d[n - 2]);
    }
    for i in (0..n.saturating_sub(2)).rev() {
        rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - dl[i] * rhs[i + 2]) / guard(d[i]);
    }
}

/// Eigenvector for an (approximate) eigenvalue by inverse iteration, scaled
/// so its first entry is 1.
pub fn inverse_iteration(op: &TridiagonalOperator, eigenvalue: f64, iterations: usize) -> Vec<f64> {
    let mut v = vec![1.0; op.size];
    for _ in 0..iterations.max(1) {
        shifted_solve(op, eigenvalue, &mut v);
        let scale = v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        v.iter_mut().for_each(|x| *x /= scale);
    }
    let first = v[0];
    v.iter_mut().for_each(|x| *x /= first);
    v
}
