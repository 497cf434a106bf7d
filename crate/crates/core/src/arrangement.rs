//! The hyperplane arrangement of a collection: all cells with sign vectors
//! and witnesses, the closure order, the region basis of the polytope group,
//! indicator vectors, subdivision, facet maps and cofacet lifts.

use std::collections::HashMap;

use num_traits::Signed;

use crate::collections::Collection;
use crate::error::{Error, Result};
use crate::exact::rational::{dot, sign, Rational};
use crate::exact::LinearSubspace;
use crate::geometry::cells::{ball_witness, cell_bounded, decompose, sign_le, Allowed, RawCell, ANY, NONNEG};
use crate::geometry::{canonical_functional, ConvexPolytope, Geometry, HalfSpace, Kind, Polytope};

pub const MAX_N: usize = 4;
pub const MAX_HYPERPLANES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub sign: Vec<i8>,
    pub dim: isize,
    pub flat: LinearSubspace,
    pub witness: Vec<Rational>,
    /// Closure is compact in the model space (always true on S).
    pub bounded: bool,
}

impl Cell {
    pub fn sign_string(&self) -> String {
        sign_string(&self.sign)
    }
}

pub fn sign_string(s: &[i8]) -> String {
    s.iter().map(|&x| match x {
        1 => '+',
        -1 => '-',
        _ => '0',
    })
    .collect()
}

/// Face poset of the arrangement; cells sorted by dimension then sign vector.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub geometry: Geometry,
    pub hyperplanes: Vec<Vec<Rational>>,
    pub cells: Vec<Cell>,
    /// Region basis: indices of the basis n-cells, ordered by sign vector.
    pub regions: Vec<usize>,
    index: HashMap<Vec<i8>, usize>,
}

pub fn check_size(geometry: &Geometry, count: usize) -> Result<()> {
    if geometry.n > MAX_N || count > MAX_HYPERPLANES {
        return Err(Error::TooLarge(format!(
            "arrangement limited to n <= {MAX_N} and at most {MAX_HYPERPLANES} hyperplanes (got n = {}, {count} hyperplanes)",
            geometry.n
        )));
    }
    Ok(())
}

impl Arrangement {
    pub fn build(geometry: Geometry, hyperplanes: &[Vec<Rational>]) -> Result<Self> {
        check_size(&geometry, hyperplanes.len())?;
        let mut fs: Vec<Vec<Rational>> = Vec::new();
        for f in hyperplanes {
            let c = canonical_functional(f);
            // equal hyperplanes are inserted once
            if !fs.contains(&c) {
                fs.push(c);
            }
        }
        let allowed: Vec<Allowed> = vec![ANY; fs.len()];
        let raw = decompose(&geometry, &fs, &allowed);
        Ok(Self::from_raw(geometry, fs, raw))
    }

    fn from_raw(geometry: Geometry, fs: Vec<Vec<Rational>>, raw: Vec<RawCell>) -> Self {
        let mut cells = Vec::new();
        for i in 0..raw.len() {
            let witness = match geometry.kind {
                Kind::H => match ball_witness(&fs, &raw, i) {
                    Some(w) => w,
                    None => continue,
                },
                _ => raw[i].witness.clone(),
            };
            let bounded = cell_bounded(&geometry, &fs, &raw, i);
            cells.push(Cell { sign: raw[i].sign.clone(), dim: raw[i].geo_dim(), flat: raw[i].flat.clone(), witness, bounded });
        }
        let n = geometry.n as isize;
        let mut regions: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].dim == n && cells[i].bounded).collect();
        regions.sort_by(|&a, &b| cells[a].sign.cmp(&cells[b].sign));
        let index = cells.iter().enumerate().map(|(i, c)| (c.sign.clone(), i)).collect();
        Arrangement { geometry, hyperplanes: fs, cells, regions, index }
    }

    pub fn cell_by_sign(&self, s: &[i8]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Cell `a` lies in the closure of cell `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        sign_le(&self.cells[a].sign, &self.cells[b].sign)
    }

    pub fn closure(&self, b: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&a| self.le(a, b)).collect()
    }

    pub fn sign_of_point(&self, x: &[Rational]) -> Vec<i8> {
        self.hyperplanes.iter().map(|f| sign(&dot(f, x))).collect()
    }

    pub fn hyperplane_index(&self, f: &[Rational]) -> Option<usize> {
        let c = canonical_functional(f);
        self.hyperplanes.iter().position(|h| *h == c)
    }

    /// Position of a cell in the region basis.
    pub fn region_position(&self, cell: usize) -> Option<usize> {
        self.regions.iter().position(|&r| r == cell)
    }

    pub fn region_signs(&self) -> Vec<String> {
        self.regions.iter().map(|&r| self.cells[r].sign_string()).collect()
    }

    /// Indicator vector of a convex polytope whose facets lie on hyperplanes
    /// of the arrangement.
    pub fn convex_to_vector(&self, p: &ConvexPolytope) -> Result<Vec<i64>> {
        for f in &p.facets {
            if self.hyperplane_index(f).is_none() {
                return Err(Error::NotLPolytope(format!("facet hyperplane {:?} is not in L", crate::exact::rational::fmt_vec(f))));
            }
        }
        Ok(self
            .regions
            .iter()
            .map(|&r| p.facets.iter().all(|f| dot(f, &self.cells[r].witness).is_positive()) as i64)
            .collect())
    }

    pub fn polytope_to_vector(&self, p: &Polytope) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.regions.len()];
        for piece in &p.pieces {
            for (a, b) in v.iter_mut().zip(self.convex_to_vector(piece)?) {
                *a += b;
            }
        }
        Ok(v)
    }

    /// Closure of a region as a convex polytope.
    pub fn region_polytope(&self, cell: usize) -> Result<ConvexPolytope> {
        let c = &self.cells[cell];
        let hs: Vec<HalfSpace> = self
            .hyperplanes
            .iter()
            .zip(&c.sign)
            .filter(|(_, &s)| s != 0)
            .map(|(f, &s)| HalfSpace::geq(f.iter().map(|x| x * Rational::from_integer(s.into())).collect()))
            .collect();
        ConvexPolytope::from_halfspaces(self.geometry, &hs)
    }
}

pub fn build_arrangement(l: &Collection) -> Result<Arrangement> {
    if !l.top_is_full() {
        return Err(Error::InvalidArgument("arrangement needs a collection whose top is the whole space".into()));
    }
    Arrangement::build(l.geometry, &l.hyperplanes)
}

/// Closures of the full-dimensional pieces of `p` cut by `cutters`.
pub fn subdivide(p: &ConvexPolytope, cutters: &[Vec<Rational>]) -> Result<Vec<ConvexPolytope>> {
    let g = p.geometry;
    let mut fs = p.facets.clone();
    let mut allowed: Vec<Allowed> = vec![NONNEG; fs.len()];
    for c in cutters {
        let cc = crate::exact::rational::primitive_positive(c);
        let neg: Vec<Rational> = cc.iter().map(|x| -x).collect();
        if fs.contains(&cc) || fs.contains(&neg) {
            continue;
        }
        fs.push(cc);
        allowed.push(ANY);
    }
    let raw = decompose(&g, &fs, &allowed);
    let n = g.n as isize;
    let mut out = Vec::new();
    for c in raw.iter().filter(|c| c.geo_dim() == n) {
        let hs: Vec<HalfSpace> = fs
            .iter()
            .zip(&c.sign)
            .map(|(f, &s)| HalfSpace::geq(f.iter().map(|x| x * Rational::from_integer(s.into())).collect()))
            .collect();
        out.push(ConvexPolytope::from_halfspaces(g, &hs)?);
    }
    Ok(out)
}

/// The facet of `q` lying along `ker u`, with `+1` when `q` is on the side
/// `u >= 0`. `None` means the facet map sends `q` to zero.
pub fn facet_map(q: &ConvexPolytope, u: &[Rational]) -> Option<(i8, usize)> {
    let us = LinearSubspace::kernel_of(&[u.to_vec()], q.geometry.ambient());
    let n = q.geometry.n as isize;
    let idx = q.faces.iter().position(|f| f.dim == n - 1 && f.span == us)?;
    let s = sign(&dot(u, &q.interior().witness));
    Some((s, idx))
}

#[derive(Clone, Debug)]
pub struct Lift {
    /// Point in the relative interior of the facet piece `P_i`.
    pub facet_witness: Vec<Rational>,
    pub q: ConvexPolytope,
    pub side: i8,
}

/// Lift an (n-1)-polytope `P` in `U = ker u` (given by functionals `p >= 0`
/// restricted to U) to n-polytopes having the pieces of `P` as facets.
///
/// With `a` supplied the lifts stay inside `a`. In the Euclidean global case
/// extra hyperplanes of `l_hyperplanes` are used to cut `P` until the normals
/// have full rank, and the lift falls back to the opposite side when the
/// requested side is unbounded.
pub fn cofacet_lift(
    geometry: Geometry,
    l_hyperplanes: &[Vec<Rational>],
    u: &[Rational],
    p: &[Vec<Rational>],
    side: i8,
    a: Option<&ConvexPolytope>,
) -> Result<Vec<Lift>> {
    let d = geometry.ambient();
    let uc = canonical_functional(u);
    let mut cutters: Vec<Vec<Rational>> = Vec::new();
    let push = |f: &Vec<Rational>, cutters: &mut Vec<Vec<Rational>>| {
        let c = canonical_functional(f);
        if c != uc && !cutters.contains(&c) {
            cutters.push(c);
        }
    };
    for f in p {
        push(f, &mut cutters);
    }
    if let Some(a) = a {
        for f in &a.facets {
            push(f, &mut cutters);
        }
    }
    if geometry.kind == Kind::E && a.is_none() {
        let normals = |cs: &[Vec<Rational>]| -> usize {
            let mut rows: Vec<Vec<Rational>> = cs.iter().map(|f| f[1..].to_vec()).collect();
            rows.push(uc[1..].to_vec());
            crate::exact::RatMatrix::from_rows(&rows, d - 1).rank()
        };
        for h in l_hyperplanes {
            if normals(&cutters) == geometry.n {
                break;
            }
            let before = normals(&cutters);
            let mut trial = cutters.clone();
            push(h, &mut trial);
            if normals(&trial) > before {
                cutters = trial;
            }
        }
    }
    let mut fs = cutters.clone();
    fs.push(uc.clone());
    let k = fs.len() - 1;
    let arr = Arrangement::build(geometry, &fs)?;
    let on_good_side = |cell: &Cell| -> bool {
        let w = &cell.witness;
        p.iter().all(|f| !dot(f, w).is_negative()) && a.map_or(true, |a| a.facets.iter().all(|f| !dot(f, w).is_negative()))
    };
    let n = geometry.n as isize;
    let mut out = Vec::new();
    for c in arr.cells.iter().filter(|c| c.dim == n - 1 && c.sign[k] == 0 && on_good_side(c)) {
        let mut chosen = None;
        for s in [side, -side] {
            let mut qs = c.sign.clone();
            qs[k] = s;
            let Some(qi) = arr.cell_by_sign(&qs) else { continue };
            let qc = &arr.cells[qi];
            let inside_a = a.map_or(true, |a| a.facets.iter().all(|f| dot(f, &qc.witness).is_positive()));
            if qc.bounded && inside_a {
                chosen = Some((s, qi));
                break;
            }
            if !(geometry.kind == Kind::E && a.is_none()) {
                break;
            }
        }
        let Some((s, qi)) = chosen else {
            return Err(Error::NoLift("no bounded cofacet on either side".into()));
        };
        out.push(Lift { facet_witness: c.witness.clone(), q: arr.region_polytope(qi)?, side: s });
    }
    if out.is_empty() {
        return Err(Error::NoLift("P has no (n-1)-dimensional piece on U".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::closure_by_hyperplanes;
    use crate::exact::{q, qvec};

    fn e2(fs: &[&[i64]]) -> Arrangement {
        let g = Geometry::new(Kind::E, 2);
        let l = closure_by_hyperplanes(g, &fs.iter().map(|f| qvec(f)).collect::<Vec<_>>()).unwrap();
        build_arrangement(&l).unwrap()
    }

    #[test]
    fn line_with_two_points() {
        let g = Geometry::new(Kind::E, 1);
        let a = Arrangement::build(g, &[qvec(&[0, 1]), qvec(&[-1, 1])]).unwrap();
        assert_eq!(a.cells.len(), 5);
        assert_eq!(a.regions.len(), 1);
    }

    #[test]
    fn triangle_and_four_lines() {
        let t = e2(&[&[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]]);
        assert_eq!(t.cells.iter().filter(|c| c.dim == 2).count(), 7);
        assert_eq!(t.regions.len(), 1);
        let f = e2(&[&[0, 1, 0], &[0, 0, 1], &[-1, 1, 1], &[-3, 1, 2]]);
        assert_eq!(f.regions.len(), 3);
    }

    #[test]
    fn indicator_vectors() {
        let t = e2(&[&[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]]);
        let tri = ConvexPolytope::from_halfspaces(
            t.geometry,
            &[HalfSpace::geq(qvec(&[0, 1, 0])), HalfSpace::geq(qvec(&[0, 0, 1])), HalfSpace::geq(qvec(&[1, -1, -1]))],
        )
        .unwrap();
        assert_eq!(t.convex_to_vector(&tri).unwrap(), vec![1]);
        let foreign = ConvexPolytope::from_halfspaces(
            t.geometry,
            &[HalfSpace::geq(qvec(&[0, 1, 0])), HalfSpace::geq(qvec(&[0, 0, 1])), HalfSpace::geq(qvec(&[2, -1, -1]))],
        )
        .unwrap();
        assert!(matches!(t.convex_to_vector(&foreign), Err(Error::NotLPolytope(_))));
    }

    #[test]
    fn subdivision_examples() {
        let g = Geometry::new(Kind::E, 2);
        let tri = ConvexPolytope::from_halfspaces(
            g,
            &[HalfSpace::geq(qvec(&[0, 1, 0])), HalfSpace::geq(qvec(&[0, 0, 1])), HalfSpace::geq(qvec(&[1, -1, -1]))],
        )
        .unwrap();
        assert_eq!(subdivide(&tri, &[vec![q(-1), q(4), q(0)]]).unwrap().len(), 2);
        assert_eq!(subdivide(&tri, &[qvec(&[-5, 1, 0])]).unwrap().len(), 1);
        let sq = ConvexPolytope::from_halfspaces(
            g,
            &[HalfSpace::geq(qvec(&[0, 1, 0])), HalfSpace::geq(qvec(&[1, -1, 0])), HalfSpace::geq(qvec(&[0, 0, 1])), HalfSpace::geq(qvec(&[1, 0, -1]))],
        )
        .unwrap();
        assert_eq!(subdivide(&sq, &[qvec(&[0, 1, -1]), qvec(&[-1, 1, 1])]).unwrap().len(), 4);
    }

    #[test]
    fn facet_map_sides() {
        let g = Geometry::new(Kind::E, 2);
        let u = qvec(&[0, 0, 1]); // y = 0
        let up = ConvexPolytope::from_halfspaces(g, &[HalfSpace::geq(qvec(&[0, 0, 1])), HalfSpace::geq(qvec(&[1, -1, -1])), HalfSpace::geq(qvec(&[0, 1, 0]))]).unwrap();
        assert_eq!(facet_map(&up, &u).map(|x| x.0), Some(1));
        let down = ConvexPolytope::from_halfspaces(g, &[HalfSpace::geq(qvec(&[0, 0, -1])), HalfSpace::geq(qvec(&[1, -1, 1])), HalfSpace::geq(qvec(&[0, 1, 0]))]).unwrap();
        assert_eq!(facet_map(&down, &u).map(|x| x.0), Some(-1));
        // touching y = 0 only at the vertex (0,0)
        let corner = ConvexPolytope::from_halfspaces(g, &[HalfSpace::geq(qvec(&[0, 1, -1])), HalfSpace::geq(qvec(&[0, -1, 2])), HalfSpace::geq(qvec(&[1, 0, -1]))]).unwrap();
        assert_eq!(facet_map(&corner, &u), None);
    }

    #[test]
    fn spherical_lift_of_a_quarter_arc() {
        let g = Geometry::new(Kind::S, 2);
        let u = qvec(&[0, 0, 1]);
        let p = vec![qvec(&[1, 0, 0]), qvec(&[0, 1, 0])];
        for side in [1i8, -1] {
            let lifts = cofacet_lift(g, &[], &u, &p, side, None).unwrap();
            assert_eq!(lifts.len(), 1);
            assert_eq!(lifts[0].side, side);
            assert_eq!(facet_map(&lifts[0].q, &u).unwrap().0, side);
            assert_eq!(lifts[0].q.vertices().len(), 3);
        }
    }
}
