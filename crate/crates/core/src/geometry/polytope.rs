use num_traits::Zero;

use super::cells::{ball_witness, cell_bounded, chart_bounded, decompose, sign_le, Allowed, RawCell, NONNEG};
use super::{Geometry, HalfSpace, Kind};
use crate::error::{Error, PolytopeInvalid, Result};
use crate::exact::rational::{dot, is_zero_vec, primitive_positive, Rational};
use crate::exact::LinearSubspace;

/// Relatively open face of a convex polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Sign of each facet functional on the face: `0` (tight) or `1`.
    pub sign: Vec<i8>,
    pub span: LinearSubspace,
    pub dim: isize,
    pub witness: Vec<Rational>,
}

/// Intersection of finitely many closed half-spaces, full-dimensional and
/// bounded (weak convexity is allowed on the sphere).
#[derive(Clone, Debug)]
pub struct ConvexPolytope {
    pub geometry: Geometry,
    /// Facet-defining functionals, each meaning `f >= 0`, primitive integral.
    pub facets: Vec<Vec<Rational>>,
    /// Faces ordered by dimension, then by sign vector.
    pub faces: Vec<Face>,
}

/// Formal union of convex pieces (a polytope need not be convex).
#[derive(Clone, Debug)]
pub struct Polytope {
    pub pieces: Vec<ConvexPolytope>,
}

fn faces_from_cells(geom: &Geometry, fs: &[Vec<Rational>], cells: &[RawCell]) -> Vec<Face> {
    let keep: Vec<usize> = match geom.kind {
        Kind::H => (0..cells.len()).filter(|&i| ball_witness(fs, cells, i).is_some()).collect(),
        _ => (0..cells.len()).collect(),
    };
    keep.into_iter()
        .map(|i| {
            let c = &cells[i];
            let witness = if geom.kind == Kind::H { ball_witness(fs, cells, i).expect("kept") } else { c.witness.clone() };
            Face { sign: c.sign.clone(), span: c.flat.clone(), dim: c.geo_dim(), witness }
        })
        .collect()
}

impl ConvexPolytope {
    pub fn from_halfspaces(geometry: Geometry, halfspaces: &[HalfSpace]) -> Result<Self> {
        let d = geometry.ambient();
        let mut fs: Vec<Vec<Rational>> = Vec::new();
        for h in halfspaces {
            if h.functional.len() != d {
                return Err(Error::DimensionMismatch(format!("half-space needs {d} coefficients")));
            }
            let g = h.as_geq();
            if is_zero_vec(&g) {
                return Err(Error::InvalidArgument("zero functional in half-space".into()));
            }
            if geometry.is_affine() && is_zero_vec(&g[1..]) {
                return Err(Error::InvalidArgument("half-space bounded by the hyperplane at infinity".into()));
            }
            let g = primitive_positive(&g);
            if !fs.contains(&g) {
                fs.push(g);
            }
        }
        let allowed: Vec<Allowed> = vec![NONNEG; fs.len()];
        let cells = decompose(&geometry, &fs, &allowed);
        let n = geometry.n as isize;
        let top = cells.iter().position(|c| c.geo_dim() == n && c.sign.iter().all(|&s| s == 1));
        let in_model = |i: usize| geometry.kind != Kind::H || ball_witness(&fs, &cells, i).is_some();
        if !(0..cells.len()).any(in_model) {
            return Err(Error::InvalidPolytope(PolytopeInvalid::Empty));
        }
        let Some(top) = top.filter(|&t| in_model(t)) else {
            return Err(Error::InvalidPolytope(PolytopeInvalid::LowerDimensional));
        };
        if !cell_bounded(&geometry, &fs, &cells, top) {
            return Err(Error::InvalidPolytope(PolytopeInvalid::Unbounded));
        }
        // keep only facet-defining functionals and rebuild
        let facet_idx: Vec<usize> = (0..fs.len())
            .filter(|&k| cells.iter().any(|c| c.geo_dim() == n - 1 && c.sign[k] == 0 && c.flat.dim() + 1 == d))
            .collect();
        let facets: Vec<Vec<Rational>> = facet_idx.iter().map(|&k| fs[k].clone()).collect();
        let cells = if facets.len() == fs.len() { cells } else { decompose(&geometry, &facets, &vec![NONNEG; facets.len()]) };
        let faces = faces_from_cells(&geometry, &facets, &cells);
        Ok(ConvexPolytope { geometry, facets, faces })
    }

    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        self.facets.iter().map(|f| HalfSpace::geq(f.clone())).collect()
    }

    pub fn interior(&self) -> &Face {
        self.faces.last().expect("nonempty")
    }

    pub fn dim(&self) -> isize {
        self.geometry.n as isize
    }

    /// Vertices (rays on the sphere).
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        self.faces.iter().filter(|f| f.dim == 0).map(|f| f.witness.clone()).collect()
    }

    /// On S: the facet hyperplanes meet only in `0`. Always true for E and H.
    pub fn is_strongly_convex(&self) -> bool {
        match self.geometry.kind {
            Kind::S => LinearSubspace::kernel_of(&self.facets, self.geometry.ambient()).dim() == 0,
            _ => true,
        }
    }

    pub fn face_le(&self, a: usize, b: usize) -> bool {
        sign_le(&self.faces[a].sign, &self.faces[b].sign)
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.geometry.in_domain(x) && self.facets.iter().all(|f| dot(f, x) >= Rational::zero())
    }

    /// Intersection of the facet hyperplanes containing face `i`.
    pub fn facet_span(&self, i: usize) -> LinearSubspace {
        let tight: Vec<Vec<Rational>> =
            self.facets.iter().zip(&self.faces[i].sign).filter(|(_, &s)| s == 0).map(|(f, _)| f.clone()).collect();
        LinearSubspace::kernel_of(&tight, self.geometry.ambient())
    }

    /// Chart boundedness of the Euclidean closure (used by H).
    pub fn chart_bounded(&self) -> bool {
        let top = RawCell { sign: vec![1; self.facets.len()], witness: self.interior().witness.clone(), flat: self.interior().span.clone() };
        chart_bounded(&self.geometry, &self.facets, &top)
    }
}
