use num_traits::{Signed, Zero};

use super::ratmatrix::RatMatrix;
use super::rational::{q, Rational};

/// Quadratic form `-x0^2 + x1^2 + ... + xn^2` on Q^(n+1).
pub fn minkowski_form(d: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(d, d);
    for i in 0..d {
        m.set(i, i, if i == 0 { q(-1) } else { q(1) });
    }
    m
}

/// `(n_pos, n_neg, n_zero)` of a symmetric form restricted to `span(basis)`.
pub fn signature_on_subspace(form: &RatMatrix, basis: &[Vec<Rational>]) -> (usize, usize, usize) {
    let k = basis.len();
    let mut g = RatMatrix::zeros(k, k);
    for i in 0..k {
        let fi = form.mul_vec(&basis[i]);
        for j in 0..k {
            g.set(i, j, super::rational::dot(&fi, &basis[j]));
        }
    }
    symmetric_signature(g)
}

/// Congruence diagonalisation of a symmetric matrix.
pub fn symmetric_signature(mut g: RatMatrix) -> (usize, usize, usize) {
    let n = g.rows;
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&_) = active.first() {
        let piv = active.iter().copied().find(|&i| !g.get(i, i).is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // all diagonal entries zero: find g[i][j] != 0 and replace e_i by e_i + e_j
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !g.get(i, j).is_zero());
                let Some((i, j)) = pair else { break };
                for t in 0..n {
                    let v = g.get(i, t) + g.get(j, t);
                    g.set(i, t, v);
                }
                for t in 0..n {
                    let v = g.get(t, i) + g.get(t, j);
                    g.set(t, i, v);
                }
                i
            }
        };
        let d = g.get(p, p).clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = g.get(i, p) / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = g.get(i, j) - &f * g.get(p, j);
                g.set(i, j, v);
            }
        }
        for &i in &active {
            g.set(i, p, Rational::zero());
            g.set(p, i, Rational::zero());
        }
    }
    (pos, neg, n - pos - neg)
}

/// Sign of the determinant of the square matrix with the given rows.
pub fn det_sign_rows(rows: &[Vec<Rational>]) -> i8 {
    let n = rows.len();
    RatMatrix::from_rows(rows, n).det_sign().expect("square")
}
