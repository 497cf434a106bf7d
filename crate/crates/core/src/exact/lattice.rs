//! Integer lattices given by generator vectors, and integer linear solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::snf::{smith_normal_form, smith_normal_form_with_certificates, SnfCertificate};
use super::intmatrix::IntMatrix;

/// Matrix whose columns are `gens`, each of length `dim`.
fn columns_to_rows(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    (0..dim).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect()
}

/// Integer solution of `A x = b`, where `a` is row-major `rows x cols`.
pub fn solve_integer(a: &[Vec<BigInt>], rows: usize, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    IntegerSolver::new(a, rows, cols).solve(b)
}

/// Reusable integer solver for one matrix and many right-hand sides.
pub struct IntegerSolver {
    rows: usize,
    cols: usize,
    cert: Option<SnfCertificate>,
}

impl IntegerSolver {
    pub fn new(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Self {
        let cert = (rows > 0 && cols > 0).then(|| smith_normal_form_with_certificates(a, rows, cols));
        IntegerSolver { rows, cols, cert }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let (rows, cols) = (self.rows, self.cols);
        let c = match &self.cert {
            None if cols == 0 => return b.iter().all(|x| x.is_zero()).then(Vec::new),
            None => return Some(vec![BigInt::zero(); cols]),
            Some(c) => c,
        };
        let lb: Vec<BigInt> = c.l.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
        let r = c.diag.len();
        let mut y = vec![BigInt::zero(); cols];
        for i in 0..rows {
            if i < r {
                let (qq, rem) = lb[i].div_rem(&c.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = qq;
            } else if !lb[i].is_zero() {
                return None;
            }
        }
        Some((0..cols).map(|i| c.r[i].iter().zip(&y).map(|(p, q)| p * q).sum()).collect())
    }
}

/// Basis of `{x in Z^cols : A x = 0}`; the basis spans a saturated lattice.
pub fn kernel_basis(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    if cols == 0 {
        return Vec::new();
    }
    if rows == 0 {
        return (0..cols).map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    }
    let c = smith_normal_form_with_certificates(a, rows, cols);
    let r = c.diag.len();
    (r..cols).map(|j| (0..cols).map(|i| c.r[i][j].clone()).collect()).collect()
}

/// Sublattice of Z^dim spanned by a list of generators.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub dim: usize,
    pub gens: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(dim: usize, gens: Vec<Vec<BigInt>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), dim);
        }
        let gens = gens.into_iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
        Lattice { dim, gens }
    }

    pub fn from_i64(dim: usize, gens: &[Vec<i64>]) -> Self {
        Self::new(dim, gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    fn as_int_matrix(&self) -> IntMatrix {
        use num_traits::ToPrimitive;
        let mut m = IntMatrix::zeros(self.dim, self.gens.len());
        for (j, g) in self.gens.iter().enumerate() {
            for (i, x) in g.iter().enumerate() {
                m.add(i, j, x.to_i64().expect("generator entry fits i64"));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(&self.as_int_matrix()).rank()
    }

    /// True when Z^dim / L is torsion-free.
    pub fn is_saturated(&self) -> bool {
        smith_normal_form(&self.as_int_matrix()).all_units()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let rows = columns_to_rows(&self.gens, self.dim);
        solve_integer(&rows, self.dim, self.gens.len(), v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.contains_lattice(other) && other.contains_lattice(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integer_solve_respects_divisibility() {
        let a = vec![b(&[2, 0]), b(&[0, 3])];
        assert_eq!(solve_integer(&a, 2, 2, &b(&[4, 9])), Some(b(&[2, 3])));
        assert_eq!(solve_integer(&a, 2, 2, &b(&[1, 0])), None);
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0
        let a = vec![b(&[1, 2, 3])];
        let k = kernel_basis(&a, 1, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        assert!(Lattice::new(3, k).is_saturated());
    }

    #[test]
    fn lattice_equality_by_mutual_containment() {
        let l1 = Lattice::from_i64(2, &[vec![1, 1], vec![0, 2]]);
        let l2 = Lattice::from_i64(2, &[vec![1, -1], vec![2, 0]]);
        let l3 = Lattice::from_i64(2, &[vec![1, 0], vec![0, 1]]);
        assert!(l1.equals(&l2));
        assert!(!l1.equals(&l3));
        assert!(l3.contains_lattice(&l1));
    }
}
