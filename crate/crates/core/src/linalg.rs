//! Fixed-size real linear algebra for 2×2 blocks and 4×4 covariances.

use crate::scalar::{half, two, Scalar};

pub(crate) type Mat2<T> = [[T; 2]; 2];
pub(crate) type Mat4<T> = [[T; 4]; 4];

pub(crate) fn det2<T: Scalar>(m: &Mat2<T>) -> T {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub(crate) fn mul2<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[T::zero(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn transpose2<T: Scalar>(m: &Mat2<T>) -> Mat2<T> {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

/// Local normalizer of a symmetric positive-definite 2×2 block `A`:
/// a symplectic `N` (det N = 1) with `N A Nᵀ = sqrt(det A)·I`.
///
/// Uses `sqrt(A) = (A + s·I)/sqrt(tr A + 2s)` with `s = sqrt(det A)`, and
/// `N = adj(sqrt(A)) / det(A)^{1/4}`.
pub(crate) fn block_normalizer<T: Scalar>(a: &Mat2<T>) -> Option<Mat2<T>> {
    let det = det2(a);
    let tr = a[0][0] + a[1][1];
    if !(det > T::zero() && tr > T::zero()) {
        return None;
    }
    let s = det.sqrt();
    let t = (tr + two::<T>() * s).sqrt();
    let root = [[(a[0][0] + s) / t, a[0][1] / t], [a[1][0] / t, (a[1][1] + s) / t]];
    let scale = s.sqrt();
    Some([[root[1][1] / scale, -root[0][1] / scale], [-root[1][0] / scale, root[0][0] / scale]])
}

/// Signed singular values `(s1, s2)` of a real 2×2 matrix, with
/// `s1 >= |s2|` and `s1·s2 = det m`.
pub(crate) fn signed_singular_values<T: Scalar>(m: &Mat2<T>) -> (T, T) {
    let h = half::<T>();
    let e = (m[0][0] + m[1][1]) * h;
    let f = (m[0][0] - m[1][1]) * h;
    let g = (m[1][0] + m[0][1]) * h;
    let k = (m[1][0] - m[0][1]) * h;
    let q = e.hypot(k);
    let r = f.hypot(g);
    (q + r, q - r)
}

/// Determinant by LU factorization with partial pivoting.
pub(crate) fn det4<T: Scalar>(m: &Mat4<T>) -> T {
    let mut a = *m;
    let mut det = T::one();
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det = det * p;
        for row in col + 1..4 {
            let factor = a[row][col] / p;
            for k in col..4 {
                let upd = a[col][k];
                a[row][k] = a[row][k] - factor * upd;
            }
        }
    }
    det
}

/// True iff the symmetric matrix admits a Cholesky factorization with
/// strictly positive pivots.
pub(crate) fn is_positive_definite<T: Scalar>(m: &Mat4<T>) -> bool {
    let mut l = [[T::zero(); 4]; 4];
    for j in 0..4 {
        let mut d = m[j][j];
        for k in 0..j {
            d = d - l[j][k] * l[j][k];
        }
        if !(d > T::zero()) {
            return false;
        }
        let djj = d.sqrt();
        l[j][j] = djj;
        for i in j + 1..4 {
            let mut s = m[i][j];
            for k in 0..j {
                s = s - l[i][k] * l[j][k];
            }
            l[i][j] = s / djj;
        }
    }
    true
}
