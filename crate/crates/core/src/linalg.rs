//! Small dense linear-algebra helpers on top of nalgebra: the generalized
//! cross product in n dimensions, numerical null spaces with a relative
//! singular-value cutoff, principal angles, and orthonormal completion.

use nalgebra::{DMatrix, DVector};

use crate::jet::Jet;
use crate::scalar::Scalar;

/// Generalized cross product of `n-1` vectors in `R^n`: the unique vector
/// `w` with `<w, u> = det(rows: v_1, ..., v_{n-1}, u)` for all `u`. For
/// `n = 3` this is the ordinary cross product; the result completes a
/// positively oriented basis.
pub fn cross_generalized<F: Scalar>(vectors: &[DVector<F>]) -> DVector<F> {
    let n = vectors.len() + 1;
    debug_assert!(vectors.iter().all(|v| v.len() == n));
    let mut out = DVector::zeros(n);
    let mut minor = DMatrix::zeros(n - 1, n - 1);
    for i in 0..n {
        for (r, v) in vectors.iter().enumerate() {
            let mut cc = 0;
            for c in 0..n {
                if c != i {
                    minor[(r, cc)] = v[c];
                    cc += 1;
                }
            }
        }
        // cofactor of entry (n, i+1) in 1-based indexing
        let sign = if (n + i + 1).is_multiple_of(2) {
            F::one()
        } else {
            -F::one()
        };
        out[i] = sign * minor.clone().determinant();
    }
    out
}

/// Determinant of a square matrix of jets by Laplace expansion. Intended for
/// the small sizes that occur here (ambient dimension minus one).
pub fn det_jets<F: Scalar>(m: &[Vec<Jet<F>>]) -> Jet<F> {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    match n {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc: Option<Jet<F>> = None;
            for c in 0..n {
                let sub: Vec<Vec<Jet<F>>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&cc| cc != c)
                            .map(|cc| m[r][cc].clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][c].mul(&det_jets(&sub));
                acc = Some(match acc {
                    None => term,
                    Some(a) => {
                        if c % 2 == 0 {
                            a.add(&term)
                        } else {
                            a.sub(&term)
                        }
                    }
                });
            }
            acc.unwrap()
        }
    }
}

/// Generalized cross product where each component is a jet; propagates
/// derivatives of the input vectors into the result.
pub fn cross_generalized_jets<F: Scalar>(vectors: &[Vec<Jet<F>>]) -> Vec<Jet<F>> {
    let n = vectors.len() + 1;
    let order = vectors[0][0].order();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let minor: Vec<Vec<Jet<F>>> = vectors
            .iter()
            .map(|v| (0..n).filter(|&c| c != i).map(|c| v[c].clone()).collect())
            .collect();
        let d = det_jets(&minor);
        out.push(if (n + i + 1).is_multiple_of(2) {
            d
        } else {
            d.neg()
        });
    }
    debug_assert_eq!(out[0].order(), order);
    out
}

/// Result of a numerical null-space computation.
#[derive(Debug, Clone)]
pub struct NullSpace<F> {
    /// Orthonormal basis of the detected null space, sign-canonicalized.
    pub basis: Vec<DVector<F>>,
    /// All singular values, descending.
    pub singular_values: Vec<F>,
}

/// Numerical null space of `rows` (each row one sample). Singular values
/// below `rel_tol * sigma_max` count as zero; if `sigma_max` itself is below
/// `abs_tol` the whole space is returned. Requires at least `ncols` rows so
/// the full right-singular basis is available.
pub fn null_space<F: Scalar>(rows: &DMatrix<F>, rel_tol: F, abs_tol: F) -> NullSpace<F> {
    let n = rows.ncols();
    assert!(
        rows.nrows() >= n,
        "null_space needs at least as many rows as columns"
    );
    let svd = rows.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd with v requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let singular_values: Vec<F> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = singular_values[0];

    if sigma_max < abs_tol {
        let basis = (0..n)
            .map(|i| {
                let mut e = DVector::zeros(n);
                e[i] = F::one();
                e
            })
            .collect();
        return NullSpace {
            basis,
            singular_values,
        };
    }

    let cutoff = rel_tol * sigma_max;
    let mut basis = Vec::new();
    // smallest singular value first
    for &i in order.iter().rev() {
        if svd.singular_values[i] < cutoff {
            basis.push(canonical_sign(v_t.row(i).transpose()));
        }
    }
    NullSpace {
        basis,
        singular_values,
    }
}

/// Flip the vector so its first coordinate of non-negligible magnitude is
/// positive; makes basis output deterministic.
pub fn canonical_sign<F: Scalar>(mut v: DVector<F>) -> DVector<F> {
    let tiny = F::lit(1e-12);
    for i in 0..v.len() {
        if v[i].abs() > tiny {
            if v[i] < F::zero() {
                v.neg_mut();
            }
            break;
        }
    }
    v
}

/// Principal angles between two subspaces given by orthonormal bases,
/// ascending. Empty if either basis is empty.
pub fn principal_angles<F: Scalar>(a: &[DVector<F>], b: &[DVector<F>]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let ma = DMatrix::from_columns(a);
    let mb = DMatrix::from_columns(b);
    debug_assert_eq!(ma.nrows(), n);
    let m = ma.transpose() * mb;
    let svd = m.svd(false, false);
    let mut cosines: Vec<F> = svd.singular_values.iter().copied().collect();
    cosines.sort_by(|x, y| y.partial_cmp(x).unwrap());
    cosines
        .into_iter()
        .map(|c| c.min(F::one()).max(-F::one()).acos())
        .collect()
}

/// Extend an orthonormal set to a full orthonormal basis of `R^n` by
/// Gram-Schmidt over the standard basis vectors, deterministically.
pub fn complete_orthonormal<F: Scalar>(partial: &[DVector<F>], n: usize) -> Vec<DVector<F>> {
    let mut basis: Vec<DVector<F>> = partial.to_vec();
    let mut k = 0usize;
    while basis.len() < n && k < n {
        let mut cand = DVector::zeros(n);
        cand[k] = F::one();
        for b in &basis {
            let proj = b.dot(&cand);
            cand -= b * proj;
        }
        let norm = cand.norm();
        if norm > F::lit(0.5) {
            basis.push(cand / norm);
        }
        k += 1;
    }
    debug_assert_eq!(basis.len(), n);
    basis
}

/// Smallest singular value of a rectangular matrix.
pub fn smallest_singular_value<F: Scalar>(m: &DMatrix<F>) -> F {
    let svd = m.clone().svd(false, false);
    svd.singular_values
        .iter()
        .copied()
        .fold(F::max_value().unwrap(), |a, b| a.min(b))
}

// --- jet-vector helpers, used by the frame computation ---

pub fn dot_jets<F: Scalar>(a: &[Jet<F>], b: &[Jet<F>]) -> Jet<F> {
    let mut acc = a[0].mul(&b[0]);
    for i in 1..a.len() {
        acc = acc.add(&a[i].mul(&b[i]));
    }
    acc
}

pub fn sub_scaled_jets<F: Scalar>(v: &mut [Jet<F>], b: &[Jet<F>], factor: &Jet<F>) {
    for (vi, bi) in v.iter_mut().zip(b) {
        *vi = vi.sub(&bi.mul(factor));
    }
}

pub fn values_of<F: Scalar>(v: &[Jet<F>]) -> DVector<F> {
    DVector::from_iterator(v.len(), v.iter().map(|j| j.value()))
}

pub fn derivatives_of<F: Scalar>(v: &[Jet<F>]) -> DVector<F> {
    DVector::from_iterator(v.len(), v.iter().map(|j| j.derivative(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cross_in_three_dimensions_matches_classic() {
        let a = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let b = DVector::from_vec(vec![-1.0, 0.5, 2.0]);
        let w: DVector<f64> = cross_generalized(&[a.clone(), b.clone()]);
        let classic = DVector::from_vec(vec![
            2.0 * 2.0 - 3.0 * 0.5,
            -3.0 - 1.0 * 2.0,
            1.0 * 0.5 - -2.0,
        ]);
        assert_relative_eq!(w, classic, epsilon = 1e-14);
        assert!(w.dot(&a).abs() < 1e-14);
        assert!(w.dot(&b).abs() < 1e-14);
    }

    #[test]
    fn cross_in_two_dimensions_rotates_left() {
        let a = DVector::from_vec(vec![3.0, 1.0]);
        let w = cross_generalized(&[a]);
        assert_relative_eq!(w, DVector::from_vec(vec![-1.0, 3.0]), epsilon = 1e-15);
    }

    #[test]
    fn cross_in_four_dimensions_is_orthogonal_and_oriented() {
        let vs = vec![
            DVector::from_vec(vec![1.0, 0.0, 0.5, 0.0]),
            DVector::from_vec(vec![0.0, 2.0, 0.0, 0.1]),
            DVector::from_vec(vec![0.3, 0.0, 1.0, 0.0]),
        ];
        let w: DVector<f64> = cross_generalized(&vs);
        for v in &vs {
            assert!(w.dot(v).abs() < 1e-12);
        }
        // det(rows v1..v3, w) = |w|^2 > 0
        let mut m = DMatrix::zeros(4, 4);
        for (r, v) in vs.iter().enumerate() {
            m.set_row(r, &v.transpose());
        }
        m.set_row(3, &w.transpose());
        assert!(m.determinant() > 0.0);
    }

    #[test]
    fn null_space_of_rank_two_rows() {
        // rows all lie in the z = 0 plane of R^3
        let rows: DMatrix<f64> = DMatrix::from_row_slice(
            4,
            3,
            &[1.0, 0.0, 0.0, 0.5, 1.0, 0.0, -1.0, 2.0, 0.0, 0.3, -0.7, 0.0],
        );
        let ns = null_space(&rows, 1e-6, 1e-9);
        assert_eq!(ns.basis.len(), 1);
        assert_relative_eq!(ns.basis[0][2].abs(), 1.0, epsilon = 1e-12);
        // canonical sign: first non-negligible coordinate positive
        assert!(ns.basis[0][2] > 0.0);
    }

    #[test]
    fn null_space_of_zero_rows_is_everything() {
        let rows: DMatrix<f64> = DMatrix::from_element(5, 3, 1e-14);
        let ns = null_space(&rows, 1e-6, 1e-9);
        assert_eq!(ns.basis.len(), 3);
    }

    #[test]
    fn principal_angles_detect_rotation() {
        let e1 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let e2 = DVector::from_vec(vec![0.0, 1.0, 0.0]);
        let r = std::f64::consts::FRAC_PI_4;
        let rot = DVector::from_vec(vec![r.cos(), 0.0, r.sin()]);
        let same = principal_angles(std::slice::from_ref(&e1), std::slice::from_ref(&e1));
        assert!(same[0] < 1e-8);
        let tilted = principal_angles(std::slice::from_ref(&e1), &[rot]);
        assert_relative_eq!(tilted[0], r, epsilon = 1e-12);
        let planes = principal_angles(&[e1.clone(), e2.clone()], &[e1, e2]);
        assert!(planes.iter().all(|&a| a < 1e-8));
    }

    #[test]
    fn completion_produces_orthonormal_basis() {
        let v = DVector::from_vec(vec![1.0, 1.0, 0.0]).normalize();
        let basis = complete_orthonormal(&[v], 3);
        assert_eq!(basis.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = basis[i].dot(&basis[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(d, expect, epsilon = 1e-12);
            }
        }
    }
}
