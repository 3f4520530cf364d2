//! Small dense helpers shared by the modules.

use std::cmp::Ordering;

use nalgebra::SymmetricEigen;

use crate::{Matrix, Vector};

/// Larger magnitude first, lower index first among equal magnitudes.
fn magnitude_order(v: &[f64], i: usize, j: usize) -> Ordering {
    v[j].abs()
        .partial_cmp(&v[i].abs())
        .unwrap_or(Ordering::Equal)
        .then(i.cmp(&j))
}

/// Indices of the `k` largest-magnitude entries, returned in ascending index order.
pub(crate) fn top_k_support(v: &[f64], k: usize) -> Vec<usize> {
    let k = k.min(v.len());
    if k == 0 {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..v.len()).collect();
    if k < idx.len() {
        idx.select_nth_unstable_by(k - 1, |&i, &j| magnitude_order(v, i, j));
        idx.truncate(k);
    }
    idx.sort_unstable();
    idx
}

/// Keeps the entries of `v` listed in `support`, zeroing the rest.
pub(crate) fn restrict(v: &[f64], support: &[usize]) -> Vector {
    let mut out = Vector::zeros(v.len());
    for &i in support {
        out[i] = v[i];
    }
    out
}

pub(crate) fn select_columns(a: &Matrix, support: &[usize]) -> Matrix {
    Matrix::from_fn(a.nrows(), support.len(), |r, c| a[(r, support[c])])
}

/// `A x` touching only the columns in `support`.
pub(crate) fn mul_on_support(a: &Matrix, x: &Vector, support: &[usize]) -> Vector {
    let mut out = Vector::zeros(a.nrows());
    for &j in support {
        let xj = x[j];
        if xj != 0.0 {
            out.axpy(xj, &a.column(j), 1.0);
        }
    }
    out
}

/// Indices of the nonzero entries.
pub(crate) fn nonzero_support(v: &Vector) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0.0)
        .map(|(i, _)| i)
        .collect()
}

/// Sorted union of two sorted index sets.
pub(crate) fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Gram matrix `A_Sᵀ A_S` of the selected columns.
pub(crate) fn sub_gram(a: &Matrix, support: &[usize]) -> Matrix {
    let k = support.len();
    let mut g = Matrix::zeros(k, k);
    for p in 0..k {
        let cp = a.column(support[p]);
        for q in p..k {
            let v = cp.dot(&a.column(support[q]));
            g[(p, q)] = v;
            g[(q, p)] = v;
        }
    }
    g
}

/// Smallest and largest eigenvalue of a symmetric matrix.
pub(crate) fn sym_extreme_eigenvalues(g: Matrix) -> (f64, f64) {
    if g.nrows() == 1 {
        return (g[(0, 0)], g[(0, 0)]);
    }
    let eig = SymmetricEigen::new(g);
    let min = eig.eigenvalues.min();
    let max = eig.eigenvalues.max();
    (min, max)
}

pub(crate) fn n_choose_k(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i + 1) as u128,
            None => return u128::MAX,
        }
    }
    acc
}

pub(crate) fn l1_norm(v: &Vector) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_k_ties_keep_lowest_index() {
        assert_eq!(top_k_support(&[1.0, 1.0, 1.0], 2), vec![0, 1]);
        assert_eq!(top_k_support(&[3.0, -1.0, 2.0], 2), vec![0, 2]);
        assert_eq!(top_k_support(&[0.0, -5.0, 5.0, 1.0], 1), vec![1]);
    }

    #[test]
    fn union_merges() {
        assert_eq!(union_sorted(&[1, 4, 7], &[0, 4, 9]), vec![0, 1, 4, 7, 9]);
        assert_eq!(union_sorted(&[], &[2]), vec![2]);
    }

    #[test]
    fn binomials() {
        assert_eq!(n_choose_k(12, 2), 66);
        assert_eq!(n_choose_k(12, 3), 220);
        assert_eq!(n_choose_k(5, 0), 1);
        assert_eq!(n_choose_k(3, 4), 0);
        assert_eq!(n_choose_k(4000, 2000), u128::MAX);
    }
}
