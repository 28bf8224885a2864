//! Dense tableau simplex over exact rationals.
//!
//! Solves `max c·x` subject to `A x <= b`, `x >= 0` with `b >= 0`, so the
//! slack basis is feasible from the start. Bland's rule rules out cycling.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Q,
    pub x: Vec<Q>,
    /// Optimal dual prices, one per constraint row.
    pub duals: Vec<Q>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unbounded;

/// Maximizes `c·x` over `{x >= 0 : A x <= b}`. Panics if some `b_i < 0`
/// or the dimensions disagree.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Result<LpSolution, Unbounded> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(b.iter().all(|v| !v.is_negative()), "right-hand side must be nonnegative");

    let width = n + m;
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            assert_eq!(row.len(), n);
            let mut t = row.clone();
            t.extend((0..m).map(|k| if k == r { Q::from_integer(1.into()) } else { Q::zero() }));
            t
        })
        .collect();
    let mut rhs = b.to_vec();
    // Reduced costs: c_B B^-1 A_j - c_j.
    let mut obj: Vec<Q> = c.iter().map(|v| -v).chain((0..m).map(|_| Q::zero())).collect();
    let mut value = Q::zero();
    let mut basis: Vec<usize> = (n..width).collect();

    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..m {
            if !rows[r][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &rows[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Unbounded);
        };

        let pivot = rows[pr][enter].clone();
        for v in rows[pr].iter_mut() {
            *v /= &pivot;
        }
        rhs[pr] /= &pivot;
        let pivot_row = rows[pr].clone();
        let pivot_rhs = rhs[pr].clone();
        for r in 0..m {
            if r == pr || rows[r][enter].is_zero() {
                continue;
            }
            let factor = rows[r][enter].clone();
            for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            rhs[r] -= &factor * &pivot_rhs;
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            value -= &factor * &pivot_rhs;
        }
        basis[pr] = enter;
    }

    let mut x = vec![Q::zero(); n];
    for (r, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rhs[r].clone();
        }
    }
    let duals = obj[n..].to_vec();
    Ok(LpSolution { value, x, duals })
}
