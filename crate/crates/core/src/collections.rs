//! Finite collections of geodesic subspaces (written L below) and the
//! operations used to build them: closure under intersection or span,
//! adding a hyperplane, restriction to a polytope and duality on the sphere.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::feasibility::feasible;
use crate::exact::rational::Rational;
use crate::exact::LinearSubspace;
use crate::geometry::{canonical_functional, ConvexPolytope, Geometry, Kind};

#[derive(Clone, Debug)]
pub struct Collection {
    pub geometry: Geometry,
    /// Carriers in canonical order (dimension, then RREF basis).
    pub members: Vec<LinearSubspace>,
    /// Canonical functionals of the hyperplanes in L. On S^0 the hyperplane
    /// `{0}` has no nonempty carrier, so it is only recorded here.
    pub hyperplanes: Vec<Vec<Rational>>,
    /// Index of the largest member.
    pub top: usize,
}

fn sorted(set: BTreeSet<LinearSubspace>) -> Vec<LinearSubspace> {
    set.into_iter().collect()
}

impl Collection {
    pub fn new(geometry: Geometry, members: BTreeSet<LinearSubspace>, hyperplanes: Vec<Vec<Rational>>) -> Result<Self> {
        let members = sorted(members);
        let top = members.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty collection".into()))?;
        if !members.iter().all(|m| members[top].contains(m)) {
            return Err(Error::InvalidArgument("collection has no largest member".into()));
        }
        let mut hs: Vec<Vec<Rational>> = hyperplanes.iter().map(|f| canonical_functional(f)).collect();
        hs.sort();
        hs.dedup();
        Ok(Collection { geometry, members, hyperplanes: hs, top })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn geo_dim(&self, i: usize) -> isize {
        self.members[i].dim() as isize - 1
    }

    pub fn index_of(&self, v: &LinearSubspace) -> Option<usize> {
        self.members.binary_search(v).ok()
    }

    /// `members[i]` is contained in `members[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.members[j].contains(&self.members[i])
    }

    /// Full inclusion table.
    pub fn order(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.le(i, j)).collect()).collect()
    }

    /// Indices of 0-dimensional members (points, or antipodal pairs on S).
    pub fn points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.geo_dim(i) == 0).collect()
    }

    pub fn proper(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i != self.top).collect()
    }

    pub fn top_is_full(&self) -> bool {
        self.members[self.top].dim() == self.geometry.ambient()
    }
}

/// Smallest collection containing the given hyperplanes and closed under
/// nonempty intersection; the whole space is included.
pub fn closure_by_hyperplanes(geometry: Geometry, functionals: &[Vec<Rational>]) -> Result<Collection> {
    let d = geometry.ambient();
    let mut hs: Vec<Vec<Rational>> = Vec::new();
    for f in functionals {
        if f.len() != d || f.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidArgument("zero or malformed hyperplane functional".into()));
        }
        let c = canonical_functional(f);
        if hs.contains(&c) {
            return Err(Error::InvalidArgument("duplicate hyperplane".into()));
        }
        hs.push(c);
    }
    let top = geometry.top();
    let mut members: BTreeSet<LinearSubspace> = BTreeSet::new();
    members.insert(top.clone());
    let hyper: Vec<LinearSubspace> = hs.iter().map(|f| LinearSubspace::kernel_of(&[f.clone()], d)).collect();
    let mut queue: VecDeque<LinearSubspace> = VecDeque::new();
    for h in &hyper {
        if geometry.geo_nonempty(h) {
            if members.insert(h.clone()) {
                queue.push_back(h.clone());
            }
        } else if !(geometry.kind == Kind::S && geometry.n == 0) {
            return Err(Error::EmptySubspace("hyperplane misses the model space".into()));
        }
    }
    while let Some(m) = queue.pop_front() {
        for h in &hyper {
            let x = m.intersect(h);
            if x != m && geometry.geo_nonempty(&x) && members.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    Collection::new(geometry, members, hs)
}

/// Spans of all nonempty subsets of the given points (homogeneous vectors).
pub fn closure_by_points(geometry: Geometry, points: &[Vec<Rational>]) -> Result<Collection> {
    let d = geometry.ambient();
    let lines: Vec<LinearSubspace> = points.iter().map(|p| LinearSubspace::span(&[p.clone()], d)).collect();
    let mut members: BTreeSet<LinearSubspace> = BTreeSet::new();
    let mut queue: VecDeque<LinearSubspace> = VecDeque::new();
    for l in &lines {
        if members.insert(l.clone()) {
            queue.push_back(l.clone());
        }
    }
    while let Some(m) = queue.pop_front() {
        for l in &lines {
            let s = m.sum(l);
            if members.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    if !members.contains(&geometry.top()) {
        return Err(Error::NotGenerating("points span a proper subspace".into()));
    }
    let hs = members.iter().filter(|m| m.dim() + 1 == d).map(|m| m.annihilator()[0].clone()).collect();
    Collection::new(geometry, members, hs)
}

/// The three collections attached to L and a hyperplane U:
/// `cup` = L with U added and closed, `uplus` = `cup` without U, and `cap` =
/// members of `cup` inside U (U is its top).
pub struct Variants {
    pub cup: Collection,
    pub uplus: Collection,
    pub cap: Collection,
}

pub fn variants(l: &Collection, u: &[Rational]) -> Result<Variants> {
    let g = l.geometry;
    let d = g.ambient();
    let uc = canonical_functional(u);
    let us = LinearSubspace::kernel_of(&[uc.clone()], d);
    if !g.geo_nonempty(&us) && !(g.kind == Kind::S && g.n == 0) {
        return Err(Error::EmptySubspace("U misses the model space".into()));
    }
    if l.hyperplanes.contains(&uc) {
        return Err(Error::InvalidArgument("U already belongs to L".into()));
    }
    let mut cup: BTreeSet<LinearSubspace> = l.members.iter().cloned().collect();
    let mut cap: BTreeSet<LinearSubspace> = BTreeSet::new();
    for m in &l.members {
        let x = m.intersect(&us);
        if g.geo_nonempty(&x) {
            cup.insert(x.clone());
            cap.insert(x);
        }
    }
    let mut hs = l.hyperplanes.clone();
    hs.push(uc.clone());
    let cap_hs: Vec<Vec<Rational>> = Vec::new();
    let mut uplus = cup.clone();
    uplus.remove(&us);
    Ok(Variants {
        cup: Collection::new(g, cup, hs)?,
        uplus: Collection::new(g, uplus, l.hyperplanes.clone())?,
        cap: Collection::new(g, cap, cap_hs)?,
    })
}

/// Does `v` meet the closed polytope `a`?
pub fn meets(v: &LinearSubspace, a: &ConvexPolytope) -> bool {
    let g = a.geometry;
    let d = g.ambient();
    let mut eq = g.domain_equalities();
    for f in v.annihilator() {
        let mut r = vec![Rational::zero()];
        r.extend(f);
        eq.push(r);
    }
    let nonstrict: Vec<Vec<Rational>> = a
        .facets
        .iter()
        .map(|f| {
            let mut r = vec![Rational::zero()];
            r.extend(f.iter().cloned());
            r
        })
        .collect();
    match g.kind {
        Kind::E | Kind::H => feasible(&[], &nonstrict, &eq, d).is_some(),
        Kind::S => (0..d).any(|j| {
            [1i64, -1].iter().any(|&s| {
                let mut r = vec![Rational::zero(); d + 1];
                r[j + 1] = Rational::from_integer(s.into());
                feasible(&[r], &nonstrict, &eq, d).is_some()
            })
        }),
    }
}

/// `L|A`: members of L that meet `a`.
pub fn restrict(l: &Collection, a: &ConvexPolytope) -> Result<Collection> {
    let kept: BTreeSet<LinearSubspace> = l.members.iter().filter(|m| meets(m, a)).cloned().collect();
    let hs = l
        .hyperplanes
        .iter()
        .filter(|f| kept.contains(&LinearSubspace::kernel_of(&[(*f).clone()], l.geometry.ambient())))
        .cloned()
        .collect();
    Collection::new(l.geometry, kept, hs)
}

/// `L^perp` on the sphere: orthogonal complements, with `S^n` standing in
/// for the complement of `{0}`.
pub fn dualize(l: &Collection) -> Result<Collection> {
    if l.geometry.kind != Kind::S {
        return Err(Error::InvalidArgument("duality is defined on the sphere".into()));
    }
    let mut out: BTreeSet<LinearSubspace> = BTreeSet::new();
    for (i, m) in l.members.iter().enumerate() {
        if i != l.top {
            out.insert(m.orthogonal_complement());
        }
    }
    out.insert(l.geometry.top());
    let d = l.geometry.ambient();
    let hs = out.iter().filter(|m| m.dim() + 1 == d).map(|m| m.annihilator()[0].clone()).collect();
    Collection::new(l.geometry, out, hs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Admissibility {
    #[serde(rename = "ADMISSIBLE")]
    Admissible,
    #[serde(rename = "NOT_ADMISSIBLE")]
    NotAdmissible,
    #[serde(rename = "NOT_DECIDABLE_FINITE")]
    NotDecidableFinite,
}

pub fn admissible(l: &Collection) -> Admissibility {
    let yes = |b: bool| if b { Admissibility::Admissible } else { Admissibility::NotAdmissible };
    match l.geometry.kind {
        Kind::E => yes(!l.points().is_empty()),
        Kind::S => yes(LinearSubspace::kernel_of(&l.hyperplanes, l.geometry.ambient()).dim() == 0),
        Kind::H => Admissibility::NotDecidableFinite,
    }
}

pub fn generated_by_hyperplanes(l: &Collection) -> bool {
    closure_by_hyperplanes(l.geometry, &l.hyperplanes).map_or(false, |c| c.members == l.members)
}

pub fn generated_by_points(l: &Collection) -> bool {
    let pts: Vec<Vec<Rational>> = l.points().iter().map(|&i| l.members[i].basis()[0].clone()).collect();
    !pts.is_empty() && closure_by_points(l.geometry, &pts).map_or(false, |c| c.members == l.members)
}

pub fn generated_by_both(l: &Collection) -> bool {
    generated_by_hyperplanes(l) && generated_by_points(l)
}

/// Canonical homogeneous representative of a 0-dimensional member: `x0 = 1`
/// for E/H, the RREF basis vector (first nonzero entry 1) on S.
pub fn point_rep(l: &Collection, i: usize) -> Vec<Rational> {
    let v = l.members[i].basis()[0].clone();
    if l.geometry.is_affine() {
        let z = v[0].clone();
        v.iter().map(|x| x / &z).collect()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qvec;

    fn triangle() -> Collection {
        let g = Geometry::new(Kind::E, 2);
        closure_by_hyperplanes(g, &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[-1, 1, 1])]).unwrap()
    }

    #[test]
    fn triangle_collection() {
        let l = triangle();
        assert_eq!(l.len(), 7);
        assert_eq!(l.points().len(), 3);
        assert_eq!(admissible(&l), Admissibility::Admissible);
        assert!(generated_by_both(&l));
    }

    #[test]
    fn parallel_lines_are_not_admissible() {
        let g = Geometry::new(Kind::E, 2);
        let l = closure_by_hyperplanes(g, &[qvec(&[0, 1, 0]), qvec(&[-1, 1, 0])]).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(admissible(&l), Admissibility::NotAdmissible);
    }

    #[test]
    fn duplicates_are_rejected() {
        let g = Geometry::new(Kind::E, 2);
        assert!(closure_by_hyperplanes(g, &[qvec(&[0, 1, 0]), qvec(&[0, 2, 0])]).is_err());
        assert!(closure_by_hyperplanes(g, &[qvec(&[0, 0, 0])]).is_err());
    }

    #[test]
    fn four_generic_lines_variants() {
        let g = Geometry::new(Kind::E, 2);
        let l = closure_by_hyperplanes(g, &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[-1, 1, 1])]).unwrap();
        let v = variants(&l, &qvec(&[-3, 1, 2])).unwrap();
        // 4 lines, 6 points, plane
        assert_eq!(v.cup.len(), 11);
        assert_eq!(v.uplus.len(), 10);
        // U and its three intersection points
        assert_eq!(v.cap.len(), 4);
    }

    #[test]
    fn spherical_duality_is_an_involution() {
        let g = Geometry::new(Kind::S, 2);
        let l = closure_by_hyperplanes(g, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[1, 1, 1])]).unwrap();
        let dl = dualize(&l).unwrap();
        assert_eq!(dl.len(), l.len());
        assert!(generated_by_points(&dl));
        assert_eq!(dualize(&dl).unwrap().members, l.members);
        assert_ne!(dl.members, l.members);
    }

    #[test]
    fn points_that_do_not_span() {
        let g = Geometry::new(Kind::E, 2);
        let e = closure_by_points(g, &[qvec(&[1, 0, 0]), qvec(&[1, 1, 0])]).unwrap_err();
        assert!(matches!(e, Error::NotGenerating(_)));
    }
}
