use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::lattice::{kernel_basis, solve_integer};
use crate::exact::{smith_normal_form, IntMatrix, Lattice};

/// Finitely presented abelian group: generators modulo the columns of
/// `relations` (one row per generator).
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: IntMatrix,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows, generators.len());
        let snf = smith_normal_form(&relations);
        let free_rank = generators.len() - snf.rank();
        GroupPresentation { generators, relations, free_rank, torsion: snf.torsion() }
    }

    pub fn free(generators: Vec<String>) -> Self {
        let n = generators.len();
        Self::new(generators, IntMatrix::zeros(n, 0))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn relation_lattice(&self) -> Lattice {
        let cols = (0..self.relations.cols).map(|j| dense_column(&self.relations, j)).collect();
        Lattice::new(self.len(), cols)
    }

    /// Is `v` zero in the group?
    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.relation_lattice().contains(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.len(),
            "relations": self.relations.cols,
            "free_rank": self.free_rank,
            "torsion": self.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn dense_column(m: &IntMatrix, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m.rows];
    for &(i, x) in m.column(j) {
        v[i] += x;
    }
    v
}

fn big_dense(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_big_dense()
}

/// Verdicts for a matrix between two presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCertificate {
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

/// Homomorphism given by `matrix` (codomain generators by domain
/// generators).
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: GroupPresentation,
    pub codomain: GroupPresentation,
    pub matrix: IntMatrix,
    pub certificate: HomCertificate,
}

impl GroupHom {
    pub fn new(domain: GroupPresentation, codomain: GroupPresentation, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows, codomain.len());
        assert_eq!(matrix.cols, domain.len());
        let certificate = certify(&domain, &codomain, &matrix);
        GroupHom { domain, codomain, matrix, certificate }
    }

    pub fn to_json(&self, with_matrix: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "domain": self.domain.summary(),
            "codomain": self.codomain.summary(),
            "certificate": self.certificate,
        });
        if with_matrix {
            v["matrix"] = serde_json::json!(self.matrix.to_dense());
        }
        v
    }
}

fn certify(dom: &GroupPresentation, cod: &GroupPresentation, m: &IntMatrix) -> HomCertificate {
    let h = cod.len();
    let g = dom.len();
    let cod_lat = cod.relation_lattice();
    // relations go to relations
    let image_rel = m.mul(&dom.relations);
    let well_defined = (0..image_rel.cols).all(|j| cod_lat.contains(&dense_column(&image_rel, j)));
    let stacked = m.hcat(&cod.relations);
    let surjective = if h == 0 {
        true
    } else {
        let s = smith_normal_form(&stacked);
        s.rank() == h && s.all_units()
    };
    // x with M x in the relation lattice of the codomain must be a relation
    // of the domain
    let injective = if g == 0 {
        true
    } else {
        let dense = big_dense(&stacked);
        let ker = kernel_basis(&dense, h, stacked.cols);
        let dom_lat = dom.relation_lattice();
        ker.iter().all(|v| dom_lat.contains(&v[..g]))
    };
    HomCertificate { well_defined, injective, surjective, iso: well_defined && injective && surjective }
}

/// Coordinates of `x` in the basis given by the columns of `basis` (a
/// saturated lattice basis), if `x` lies in it.
pub fn coordinates(basis: &[Vec<BigInt>], x: &[i64]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    let rows = x.len();
    let cols = basis.len();
    let a: Vec<Vec<BigInt>> = (0..rows).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let b: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    let y = solve_integer(&a, rows, cols, &b)?;
    y.iter().map(|v| v.to_i64()).collect()
}

/// Determinant of a square integer matrix (1 for size 0).
pub fn det(m: &IntMatrix) -> Option<BigInt> {
    if m.rows != m.cols {
        return None;
    }
    if m.rows == 0 {
        return Some(BigInt::one());
    }
    Some(crate::exact::snf::int_det(&m.to_big_dense()))
}
