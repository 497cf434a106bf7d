use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, IntMatrix};

/// Finite chain complex of free abelian groups with labelled bases.
/// `boundaries[k]` maps degree `min_degree + k` to the degree below.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub min_degree: i64,
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `d o d = 0`.
    pub fn new(min_degree: i64, bases: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if bases.len() != boundaries.len() {
            return Err(Error::DimensionMismatch("one boundary per degree".into()));
        }
        for k in 0..bases.len() {
            let d = &boundaries[k];
            let below = if k == 0 { 0 } else { bases[k - 1].len() };
            if d.cols != bases[k].len() || d.rows != below {
                return Err(Error::DimensionMismatch(format!("boundary in degree {} has shape {}x{}", min_degree + k as i64, d.rows, d.cols)));
            }
            if k >= 1 && !boundaries[k - 1].mul(d).is_zero() {
                return Err(Error::InvalidArgument(format!("boundary squared is nonzero in degree {}", min_degree + k as i64)));
            }
        }
        Ok(ChainComplex { min_degree, bases, boundaries })
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.bases.len() as i64 - 1
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |k| self.bases[k].len())
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        let k = degree - self.min_degree;
        (k >= 0 && (k as usize) < self.bases.len()).then_some(k as usize)
    }

    pub fn boundary(&self, degree: i64) -> Option<&IntMatrix> {
        self.slot(degree).map(|k| &self.boundaries[k])
    }

    /// Total number of basis elements.
    pub fn size(&self) -> usize {
        self.bases.iter().map(|b| b.len()).sum()
    }

    /// Add a degree `min_degree - 1` with one generator and the augmentation
    /// map, so that homology becomes reduced homology. Only for complexes
    /// starting in degree 0.
    pub fn augmented(&self) -> ChainComplex {
        assert_eq!(self.min_degree, 0, "augmentation needs a complex starting in degree 0");
        let mut bases = vec![vec!["()".to_string()]];
        bases.extend(self.bases.iter().cloned());
        let n0 = self.bases.first().map_or(0, |b| b.len());
        let mut eps = IntMatrix::zeros(1, n0);
        for j in 0..n0 {
            eps.add(0, j, 1);
        }
        let mut boundaries = vec![IntMatrix::zeros(0, 1), eps];
        boundaries.extend(self.boundaries.iter().skip(1).cloned());
        if self.bases.is_empty() {
            boundaries.truncate(1);
        }
        ChainComplex { min_degree: -1, bases, boundaries }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let degrees: Vec<serde_json::Value> = self
            .bases
            .iter()
            .enumerate()
            .map(|(k, b)| {
                serde_json::json!({
                    "degree": self.min_degree + k as i64,
                    "basis": b,
                    "boundary": self.boundaries[k].to_json(),
                })
            })
            .collect();
        serde_json::json!({ "degrees": degrees })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub rank: usize,
    #[serde(serialize_with = "ser_big")]
    pub torsion: Vec<BigInt>,
}

fn ser_big<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    pub fn rank(&self, degree: i64) -> usize {
        self.degrees.iter().find(|d| d.degree == degree).map_or(0, |d| d.rank)
    }

    pub fn torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    /// Nonzero ranks as `(degree, rank)`.
    pub fn betti(&self) -> Vec<(i64, usize)> {
        self.degrees.iter().filter(|d| d.rank > 0).map(|d| (d.degree, d.rank)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion_free() && self.betti().is_empty()
    }

    /// Same homology ignoring the degree range that was enumerated.
    pub fn same_groups(&self, other: &HomologySummary) -> bool {
        let nz = |h: &HomologySummary| -> Vec<DegreeHomology> {
            h.degrees.iter().filter(|d| d.rank > 0 || !d.torsion.is_empty()).cloned().collect()
        };
        nz(self) == nz(other)
    }
}

/// Homology of a chain complex by SNF of its boundary matrices. `reduced`
/// only labels the result; pass an augmented or relative complex to get
/// reduced groups.
pub fn homology(c: &ChainComplex, reduced: bool) -> HomologySummary {
    let snfs: Vec<_> = c.boundaries.iter().map(smith_normal_form).collect();
    let mut degrees = Vec::new();
    for k in 0..c.bases.len() {
        let dim = c.bases[k].len();
        let r_out = snfs[k].rank();
        let (r_in, torsion) = match snfs.get(k + 1) {
            Some(s) => (s.rank(), s.torsion()),
            None => (0, Vec::new()),
        };
        degrees.push(DegreeHomology { degree: c.min_degree + k as i64, rank: dim - r_out - r_in, torsion });
    }
    HomologySummary { reduced, degrees }
}

/// Reduced homology free, concentrated in degree `n`.
pub fn wedge_verdict(h: &HomologySummary, n: i64) -> bool {
    h.torsion_free() && h.degrees.iter().all(|d| d.degree == n || d.rank == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial chain complex of a complex given by its maximal faces.
    fn simplicial(facets: &[&[usize]]) -> ChainComplex {
        use std::collections::BTreeSet;
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let k = f.len();
            for mask in 1u32..(1 << k) {
                let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                all.insert(s);
            }
        }
        let top = all.iter().map(|s| s.len()).max().unwrap();
        let by_dim: Vec<Vec<Vec<usize>>> = (1..=top).map(|l| all.iter().filter(|s| s.len() == l).cloned().collect()).collect();
        let mut boundaries = vec![IntMatrix::zeros(0, by_dim[0].len())];
        for d in 1..by_dim.len() {
            let mut m = IntMatrix::zeros(by_dim[d - 1].len(), by_dim[d].len());
            for (j, s) in by_dim[d].iter().enumerate() {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let r = by_dim[d - 1].iter().position(|x| *x == face).unwrap();
                    m.add(r, j, if i % 2 == 0 { 1 } else { -1 });
                }
            }
            boundaries.push(m);
        }
        let bases = by_dim.iter().map(|v| v.iter().map(|s| format!("{s:?}")).collect()).collect();
        ChainComplex::new(0, bases, boundaries).unwrap()
    }

    #[test]
    fn hollow_and_solid_triangle() {
        let hollow = homology(&simplicial(&[&[0, 1], &[1, 2], &[0, 2]]), false);
        assert_eq!(hollow.betti(), vec![(0, 1), (1, 1)]);
        let solid = homology(&simplicial(&[&[0, 1, 2]]), false);
        assert_eq!(solid.betti(), vec![(0, 1)]);
    }

    #[test]
    fn octahedron_boundary() {
        // vertices 0/1, 2/3, 4/5 antipodal
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        let fs: Vec<&[usize]> = facets.iter().map(|f| f.as_slice()).collect();
        let c = simplicial(&fs);
        let h = homology(&c.augmented(), true);
        assert_eq!(h.betti(), vec![(2, 1)]);
        assert!(wedge_verdict(&h, 2));
    }

    #[test]
    fn empty_complex_has_reduced_homology_in_degree_minus_one() {
        let empty = ChainComplex::new(0, vec![], vec![]).unwrap();
        let h = homology(&empty.augmented(), true);
        assert_eq!(h.betti(), vec![(-1, 1)]);
    }

    #[test]
    fn wedge_verdict_rejects_mixed_degrees_and_torsion() {
        let mk = |d: Vec<(i64, usize, Vec<i64>)>| HomologySummary {
            reduced: true,
            degrees: d.into_iter().map(|(degree, rank, t)| DegreeHomology { degree, rank, torsion: t.into_iter().map(BigInt::from).collect() }).collect(),
        };
        assert!(wedge_verdict(&mk(vec![(1, 0, vec![]), (2, 8, vec![])]), 2));
        assert!(!wedge_verdict(&mk(vec![(1, 1, vec![]), (2, 1, vec![])]), 2));
        assert!(!wedge_verdict(&mk(vec![(1, 0, vec![2]), (2, 1, vec![])]), 2));
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let d1 = IntMatrix::from_dense(&[vec![1]]);
        let d2 = IntMatrix::from_dense(&[vec![1]]);
        assert!(ChainComplex::new(0, vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]], vec![IntMatrix::zeros(0, 1), d1, d2]).is_err());
    }
}
