//! Models of E^n, H^n and S^n inside Q^(n+1), their geodesic subspaces and
//! half-spaces.
//!
//! * `E`: the affine chart `x0 = 1`.
//! * `H`: the Klein model, chart `x0 = 1` restricted to the open unit ball.
//! * `S`: rays of Q^(n+1) \ {0}; a 0-flat is a line, i.e. an antipodal pair.

pub mod cells;
pub mod polytope;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::forms::{det_sign_rows, minkowski_form, signature_on_subspace};
use crate::exact::rational::{dot, normalize_leading, Rational};
use crate::exact::LinearSubspace;

pub use polytope::{ConvexPolytope, Face, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    E,
    H,
    S,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::E => "E",
            Kind::H => "H",
            Kind::S => "S",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Geometry {
    pub kind: Kind,
    pub n: usize,
}

impl Geometry {
    pub fn new(kind: Kind, n: usize) -> Self {
        Geometry { kind, n }
    }

    pub fn ambient(&self) -> usize {
        self.n + 1
    }

    pub fn top(&self) -> LinearSubspace {
        LinearSubspace::full(self.ambient())
    }

    pub fn is_affine(&self) -> bool {
        self.kind != Kind::S
    }

    /// Whether the linear subspace meets the model space.
    pub fn geo_nonempty(&self, v: &LinearSubspace) -> bool {
        match self.kind {
            Kind::E => v.basis().iter().any(|b| !b[0].is_zero()),
            Kind::H => signature_on_subspace(&minkowski_form(self.ambient()), v.basis()).1 >= 1,
            Kind::S => v.dim() >= 1,
        }
    }

    pub fn geo_dim(&self, v: &LinearSubspace) -> isize {
        v.dim() as isize - 1
    }

    /// Homogeneous coordinates of a chart point: `(1, x)` for E/H, the vector
    /// itself for S.
    pub fn lift_point(&self, coords: &[Rational]) -> Result<Vec<Rational>> {
        let want = if self.is_affine() { self.n } else { self.n + 1 };
        if coords.len() != want {
            return Err(Error::DimensionMismatch(format!("point needs {want} coordinates, got {}", coords.len())));
        }
        let v = if self.is_affine() {
            let mut v = vec![crate::exact::q(1)];
            v.extend(coords.iter().cloned());
            v
        } else {
            coords.to_vec()
        };
        if !self.in_domain(&v) {
            return Err(Error::EmptySubspace(format!("point {:?} is not in {}^{}", crate::exact::rational::fmt_vec(coords), self.kind, self.n)));
        }
        Ok(v)
    }

    /// Squared Euclidean norm of the chart image of a homogeneous vector.
    pub fn chart_norm2(x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for xi in &x[1..] {
            let c = xi / &x[0];
            s += &c * &c;
        }
        s
    }

    pub fn in_domain(&self, x: &[Rational]) -> bool {
        match self.kind {
            Kind::E => !x[0].is_zero(),
            Kind::H => !x[0].is_zero() && Self::chart_norm2(x) < crate::exact::q(1),
            Kind::S => x.iter().any(|v| !v.is_zero()),
        }
    }

    /// Orientation of `n + 1` homogeneous points: sign of their determinant,
    /// after scaling affine points to `x0 = 1`.
    pub fn orientation_sign(&self, pts: &[Vec<Rational>]) -> Result<i8> {
        if pts.len() != self.ambient() {
            return Err(Error::DimensionMismatch(format!("orientation needs {} points", self.ambient())));
        }
        let rows: Vec<Vec<Rational>> = if self.is_affine() {
            pts.iter().map(|p| p.iter().map(|x| x / &p[0]).collect()).collect()
        } else {
            pts.to_vec()
        };
        Ok(det_sign_rows(&rows))
    }

    /// Equality rows for the chart constraint, in feasibility-row format.
    pub fn domain_equalities(&self) -> Vec<Vec<Rational>> {
        if self.is_affine() {
            let mut r = vec![Rational::zero(); self.ambient() + 1];
            r[0] = crate::exact::q(-1);
            r[1] = crate::exact::q(1);
            vec![r]
        } else {
            Vec::new()
        }
    }
}

/// Scale a functional so its first nonzero entry is 1.
pub fn canonical_functional(f: &[Rational]) -> Vec<Rational> {
    normalize_leading(f)
}

/// Nonempty geodesic subspace of a model geometry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeoSubspace {
    pub geometry: Geometry,
    pub carrier: LinearSubspace,
}

impl GeoSubspace {
    pub fn new(geometry: Geometry, carrier: LinearSubspace) -> Result<Self> {
        if carrier.ambient != geometry.ambient() {
            return Err(Error::DimensionMismatch("carrier ambient dimension".into()));
        }
        if !geometry.geo_nonempty(&carrier) {
            return Err(Error::EmptySubspace(format!("{}-dimensional carrier misses {}^{}", carrier.dim(), geometry.kind, geometry.n)));
        }
        Ok(GeoSubspace { geometry, carrier })
    }

    pub fn dim(&self) -> isize {
        self.geometry.geo_dim(&self.carrier)
    }

    pub fn hyperplane(geometry: Geometry, f: &[Rational]) -> Result<Self> {
        if f.len() != geometry.ambient() || f.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidArgument("zero or malformed functional".into()));
        }
        Self::new(geometry, LinearSubspace::kernel_of(&[f.to_vec()], geometry.ambient()))
    }

    /// Annihilator of a hyperplane, scaled canonically.
    pub fn functional(&self) -> Option<Vec<Rational>> {
        let ann = self.carrier.annihilator();
        (ann.len() == 1).then(|| canonical_functional(&ann[0]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Geq,
    #[serde(rename = "<=")]
    Leq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub functional: Vec<Rational>,
    pub sense: Sense,
}

impl HalfSpace {
    pub fn geq(functional: Vec<Rational>) -> Self {
        HalfSpace { functional, sense: Sense::Geq }
    }

    /// Equivalent functional `g` with the half-space written as `g >= 0`.
    pub fn as_geq(&self) -> Vec<Rational> {
        match self.sense {
            Sense::Geq => self.functional.clone(),
            Sense::Leq => self.functional.iter().map(|x| -x).collect(),
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !dot(&self.as_geq(), x).is_negative()
    }
}

/// Join of the sphere `S(u)` with a polytope living in `S(u^perp)`: every
/// half-space of `p` is pulled back along the orthogonal projection onto
/// `u^perp`.
pub fn join_with_sphere(geometry: Geometry, u: &LinearSubspace, p: &[HalfSpace]) -> Result<ConvexPolytope> {
    if geometry.kind != Kind::S {
        return Err(Error::InvalidArgument("join is defined for spherical geometry".into()));
    }
    let perp = u.orthogonal_complement();
    let proj = perp.projection();
    let pulled: Vec<HalfSpace> = p
        .iter()
        .map(|h| HalfSpace::geq(proj.mul_vec(&h.as_geq())))
        .filter(|h| h.functional.iter().any(|x| !x.is_zero()))
        .collect();
    ConvexPolytope::from_halfspaces(geometry, &pulled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf, qvec};

    #[test]
    fn nonemptiness_per_geometry() {
        let e2 = Geometry::new(Kind::E, 2);
        // x0 = 0 is the line at infinity
        assert!(GeoSubspace::hyperplane(e2, &qvec(&[1, 0, 0])).is_err());
        assert!(GeoSubspace::hyperplane(e2, &qvec(&[1, 1, 0])).is_ok());
        let h2 = Geometry::new(Kind::H, 2);
        // x = 2 misses the disk, x = 1/2 crosses it, x = 1 is tangent at infinity
        assert!(GeoSubspace::hyperplane(h2, &qvec(&[-2, 1, 0])).is_err());
        assert!(GeoSubspace::hyperplane(h2, &[qf(-1, 2), q(1), q(0)]).is_ok());
        assert!(GeoSubspace::hyperplane(h2, &qvec(&[-1, 1, 0])).is_err());
        let s1 = Geometry::new(Kind::S, 1);
        assert!(GeoSubspace::new(s1, LinearSubspace::zero(2)).is_err());
        assert_eq!(GeoSubspace::hyperplane(s1, &qvec(&[1, 0])).unwrap().dim(), 0);
    }

    #[test]
    fn orientation_uses_chart_coordinates() {
        let e2 = Geometry::new(Kind::E, 2);
        let pts: Vec<_> = [qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])].iter().map(|p| e2.lift_point(p).unwrap()).collect();
        assert_eq!(e2.orientation_sign(&pts).unwrap(), 1);
        let swapped = vec![pts[1].clone(), pts[0].clone(), pts[2].clone()];
        assert_eq!(e2.orientation_sign(&swapped).unwrap(), -1);
    }
}
