use std::cmp::Ordering;

use num_traits::Zero;

use super::ratmatrix::RatMatrix;
use super::rational::{dot, Rational};

/// Linear subspace of Q^d kept in canonical form: the nonzero rows of the
/// RREF of any spanning set. Two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    pub ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl LinearSubspace {
    pub fn span(vectors: &[Vec<Rational>], ambient: usize) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = RatMatrix::from_rows(vectors, ambient);
        let (r, piv) = m.rref();
        let basis = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
        LinearSubspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        LinearSubspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let vs: Vec<Vec<Rational>> = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { super::rational::q(1) } else { Rational::zero() }).collect())
            .collect();
        Self::span(&vs, ambient)
    }

    /// Common zero set of the given functionals.
    pub fn kernel_of(functionals: &[Vec<Rational>], ambient: usize) -> Self {
        if functionals.is_empty() {
            return Self::full(ambient);
        }
        let m = RatMatrix::from_rows(functionals, ambient);
        Self::span(&m.kernel(), ambient)
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_vec(&self, v: &[Rational]) -> bool {
        self.annihilator().iter().all(|f| dot(f, v).is_zero())
    }

    pub fn contains(&self, other: &LinearSubspace) -> bool {
        if other.dim() > self.dim() {
            return false;
        }
        let ann = self.annihilator();
        other.basis.iter().all(|v| ann.iter().all(|f| dot(f, v).is_zero()))
    }

    /// Functionals vanishing on the subspace, as a basis of the annihilator.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        if self.basis.is_empty() {
            return LinearSubspace::full(self.ambient).basis;
        }
        let m = RatMatrix::from_rows(&self.basis, self.ambient);
        LinearSubspace::span(&m.kernel(), self.ambient).basis
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal_complement(&self) -> LinearSubspace {
        LinearSubspace::span(&self.annihilator(), self.ambient)
    }

    pub fn intersect(&self, other: &LinearSubspace) -> LinearSubspace {
        let mut fs = self.annihilator();
        fs.extend(other.annihilator());
        LinearSubspace::kernel_of(&fs, self.ambient)
    }

    pub fn sum(&self, other: &LinearSubspace) -> LinearSubspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        LinearSubspace::span(&vs, self.ambient)
    }

    /// Orthogonal projection onto this subspace, as a matrix acting on columns.
    pub fn projection(&self) -> RatMatrix {
        let d = self.ambient;
        if self.basis.is_empty() {
            return RatMatrix::zeros(d, d);
        }
        let b = RatMatrix::from_rows(&self.basis, d); // k x d
        let bt = b.transpose();
        let gram = b.mul(&bt).expect("shape");
        // P = B^T (B B^T)^{-1} B; solve column by column.
        let k = self.basis.len();
        let mut inv_b = RatMatrix::zeros(k, d);
        for j in 0..d {
            let col: Vec<Rational> = (0..k).map(|i| b.get(i, j).clone()).collect();
            let x = gram.solve(&col).expect("gram matrix is invertible");
            for i in 0..k {
                inv_b.set(i, j, x[i].clone());
            }
        }
        bt.mul(&inv_b).expect("shape")
    }
}

impl PartialOrd for LinearSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by dimension, then lexicographically on the RREF basis.
impl Ord for LinearSubspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}
