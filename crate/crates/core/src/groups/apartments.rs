//! Apartment classes: fundamental cycles of point tuples and convex
//! polytopes in the relative flag complexes, and the matrices they form.

use num_bigint::BigInt;
use serde::Serialize;

use super::presentation::{coordinates, det, GroupHom, GroupPresentation};
use crate::arrangement::build_arrangement;
use crate::collections::{generated_by_hyperplanes, generated_by_points, Admissibility, Collection};
use crate::complexes::spherical::{pt_bicomplex, CarrierLift, PtBicomplex};
use crate::complexes::tits::{local_complex, relative_st_complex, tpl_complex, FlagComplex};
use crate::error::{Error, Result};
use crate::exact::lattice::kernel_basis;
use crate::exact::{IntMatrix, LinearSubspace};
use crate::geometry::{ConvexPolytope, Kind};

#[derive(Clone, Debug, Serialize)]
pub struct ApartmentCycle {
    pub degree: i64,
    /// Coefficients on the basis of the target complex in `degree`.
    pub chain: Vec<i64>,
    pub source: String,
    pub convention: &'static str,
}

/// Permutations of `0..k` with their signs.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == k {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..k {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, &mut cur, &mut out);
    out
}

fn check_cycle(st: &FlagComplex, degree: i64, chain: &[i64]) -> Result<()> {
    if let Some(d) = st.complex.boundary(degree) {
        if d.apply(chain).iter().any(|&x| x != 0) {
            return Err(Error::NotWellDefined(format!("apartment chain in degree {degree} is not a cycle")));
        }
    }
    Ok(())
}

/// Sum over orderings of the points of the signed flags of partial spans.
/// `tuple` holds member indices of 0-dimensional members.
pub fn apartment_cycle_tuple(l: &Collection, st: &FlagComplex, tuple: &[usize]) -> Result<ApartmentCycle> {
    let n = l.geometry.n;
    if tuple.len() != n + 1 {
        return Err(Error::InvalidArgument(format!("tuple needs {} points", n + 1)));
    }
    let d = l.geometry.ambient();
    let vecs: Vec<_> = tuple.iter().map(|&i| l.members[i].basis()[0].clone()).collect();
    if LinearSubspace::span(&vecs, d).dim() != d {
        return Err(Error::InvalidArgument("degenerate tuple".into()));
    }
    let mut chain = vec![0i64; st.complex.rank(n as i64)];
    for (perm, s) in signed_permutations(n + 1) {
        let mut flag = Vec::with_capacity(n + 1);
        for k in 1..=n {
            let span = LinearSubspace::span(&perm[..k].iter().map(|&i| vecs[i].clone()).collect::<Vec<_>>(), d);
            flag.push(l.index_of(&span).ok_or(Error::NotGeneratedByPoints)?);
        }
        flag.push(l.top);
        let pos = st.position(n as i64, &flag).ok_or_else(|| Error::InvalidArgument("span flag missing from the complex".into()))?;
        chain[pos] += s;
    }
    check_cycle(st, n as i64, &chain)?;
    let labels: Vec<String> = tuple.iter().map(|i| format!("U{i}")).collect();
    Ok(ApartmentCycle { degree: n as i64, chain, source: format!("tuple[{}]", labels.join(",")), convention: "sum over orderings of sign(ordering) times the flag of partial spans" })
}

/// Apartment chain of a tuple, or zero when the tuple is degenerate.
pub fn tuple_apartment_or_zero(l: &Collection, st: &FlagComplex, tuple: &[usize]) -> Result<Vec<i64>> {
    let d = l.geometry.ambient();
    let vecs: Vec<_> = tuple.iter().map(|&i| l.members[i].basis()[0].clone()).collect();
    if LinearSubspace::span(&vecs, d).dim() != d {
        return Ok(vec![0; st.complex.rank(l.geometry.n as i64)]);
    }
    Ok(apartment_cycle_tuple(l, st, tuple)?.chain)
}

/// Alternating sum of the apartment chains of the faces of an
/// `(n + 2)`-tuple. It lies in top degree, where there are no boundaries, so
/// the relation holds iff the result is zero.
pub fn simplicial_relation(l: &Collection, st: &FlagComplex, tuple: &[usize]) -> Result<Vec<i64>> {
    let n = l.geometry.n;
    if tuple.len() != n + 2 {
        return Err(Error::InvalidArgument(format!("relation needs {} points", n + 2)));
    }
    let mut sum = vec![0i64; st.complex.rank(n as i64)];
    for i in 0..tuple.len() {
        let mut t = tuple.to_vec();
        t.remove(i);
        let c = tuple_apartment_or_zero(l, st, &t)?;
        for (s, v) in sum.iter_mut().zip(c) {
            *s += if i % 2 == 0 { v } else { -v };
        }
    }
    Ok(sum)
}

/// Complete flags of faces `F0 < ... < F_{n-1}` of `p`, as face indices.
pub fn complete_face_flags(p: &ConvexPolytope) -> Vec<Vec<usize>> {
    let n = p.geometry.n as isize;
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(f) = stack.pop() {
        let k = f.len() as isize;
        if k == n {
            out.push(f);
            continue;
        }
        for (i, face) in p.faces.iter().enumerate() {
            if face.dim == k && f.last().map_or(true, |&prev| p.face_le(prev, i)) {
                let mut g = f.clone();
                g.push(i);
                stack.push(g);
            }
        }
    }
    out.sort();
    out
}

/// Signed sum of the span flags of complete face flags, each signed by the
/// orientation of its witnesses followed by an interior witness.
pub fn apartment_cycle_polytope(l: &Collection, st: &FlagComplex, p: &ConvexPolytope) -> Result<ApartmentCycle> {
    let g = p.geometry;
    let n = g.n;
    let mut chain = vec![0i64; st.complex.rank(n as i64)];
    for flag in complete_face_flags(p) {
        let mut pts: Vec<_> = flag.iter().map(|&i| p.faces[i].witness.clone()).collect();
        pts.push(p.interior().witness.clone());
        let s = g.orientation_sign(&pts)? as i64;
        let mut members = Vec::with_capacity(n + 1);
        for &i in &flag {
            let m = l.index_of(&p.faces[i].span).ok_or_else(|| Error::NotLPolytope("a face span is not in L".into()))?;
            members.push(m);
        }
        members.push(l.top);
        let pos = st.position(n as i64, &members).ok_or_else(|| Error::NotLPolytope("face flag is not in the complex".into()))?;
        chain[pos] += s;
    }
    check_cycle(st, n as i64, &chain)?;
    Ok(ApartmentCycle { degree: n as i64, chain, source: "polytope".into(), convention: "orientation of face witnesses then the interior witness" })
}

/// Fundamental class of a strongly convex L-polytope in the relative total
/// complex, lifted simplex by simplex through contractible carriers.
pub fn apartment_cycle_pt_spherical(pt: &PtBicomplex, lift: &mut CarrierLift, p: &ConvexPolytope) -> Result<ApartmentCycle> {
    if !p.is_strongly_convex() {
        return Err(Error::InvalidArgument("polytope is not strongly convex".into()));
    }
    let arr = &pt.tri.arrangement;
    for f in &p.facets {
        if arr.hyperplane_index(f).is_none() {
            return Err(Error::NotLPolytope("facet hyperplane is not in L".into()));
        }
    }
    let regions: Vec<usize> = arr.regions.iter().copied().filter(|&r| p.contains_point(&arr.cells[r].witness)).collect();
    let chain = lift.apartment(&regions)?;
    let n = pt.relative.max_degree();
    if let Some(d) = pt.relative.boundary(n) {
        if d.apply(&chain).iter().any(|&x| x != 0) {
            return Err(Error::NotWellDefined("spherical apartment is not a relative cycle".into()));
        }
    }
    Ok(ApartmentCycle { degree: n, chain, source: format!("{} regions", regions.len()), convention: "carrier lift of the barycentric fundamental chain" })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flavor {
    #[serde(rename = "ST-points")]
    StPoints,
    #[serde(rename = "ST-polytopes")]
    StPolytopes,
    #[serde(rename = "local")]
    Local,
    #[serde(rename = "PT-spherical")]
    PtSpherical,
}

#[derive(Clone, Debug)]
pub struct ApartmentMatrix {
    pub flavor: Flavor,
    pub hom: GroupHom,
    /// Basis of top-degree homology (cycles), from the SNF of the boundary.
    pub homology_basis: Vec<Vec<BigInt>>,
    pub det: Option<BigInt>,
}

impl ApartmentMatrix {
    pub fn iso(&self) -> bool {
        self.hom.certificate.iso
    }

    pub fn to_json(&self, with_matrix: bool) -> serde_json::Value {
        let mut v = self.hom.to_json(with_matrix);
        v["flavor"] = serde_json::json!(self.flavor);
        v["det"] = serde_json::json!(self.det.as_ref().map(|d| d.to_string()));
        v["iso"] = serde_json::json!(self.iso());
        v
    }
}

/// Top-degree cycles of a complex whose top degree has no boundaries coming in.
fn top_cycles(c: &crate::complexes::ChainComplex) -> (i64, Vec<Vec<BigInt>>) {
    let n = c.max_degree();
    let d = c.boundary(n).expect("top degree");
    (n, kernel_basis(&d.to_big_dense(), d.rows, d.cols))
}

fn assemble(flavor: Flavor, domain: GroupPresentation, basis: Vec<Vec<BigInt>>, columns: Vec<Vec<i64>>) -> Result<ApartmentMatrix> {
    let g = basis.len();
    let mut cols = Vec::with_capacity(columns.len());
    for c in &columns {
        cols.push(coordinates(&basis, c).ok_or_else(|| Error::NotWellDefined("apartment chain is not an integral cycle".into()))?);
    }
    let matrix = IntMatrix::from_columns(g, cols);
    let codomain = GroupPresentation::free((0..g).map(|i| format!("h{i}")).collect());
    let hom = GroupHom::new(domain, codomain, matrix);
    let det = det(&hom.matrix);
    Ok(ApartmentMatrix { flavor, hom, homology_basis: basis, det })
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesesNotMet(msg.into()))
    }
}

/// Regions of the arrangement of `l` whose closure lies in `a` (all of them
/// when `a` is absent), as cell indices, in basis order.
pub fn regions_inside(arr: &crate::arrangement::Arrangement, a: Option<&ConvexPolytope>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &r in &arr.regions {
        let keep = match a {
            None => true,
            Some(a) => arr.closure(r).iter().all(|&c| arr.cells[c].dim != 0 || a.contains_point(&arr.cells[c].witness)),
        };
        if keep {
            out.push(r);
        }
    }
    Ok(out)
}

pub fn apartment_matrix(l: &Collection, flavor: Flavor, a: Option<&ConvexPolytope>) -> Result<ApartmentMatrix> {
    match flavor {
        Flavor::StPoints => {
            if !generated_by_points(l) {
                return Err(Error::NotGeneratedByPoints);
            }
            let st = relative_st_complex(l)?;
            let tpl = tpl_complex(l)?;
            let n = l.geometry.n as i64;
            let domain = GroupPresentation::new(tpl.complex.bases[0].clone(), tpl.complex.boundary(n + 1).expect("degree n + 1").clone());
            let (_, basis) = top_cycles(&st.complex);
            let mut cols = Vec::new();
            for t in &tpl.tuples[0] {
                let members: Vec<usize> = t.iter().map(|&i| tpl.points[i]).collect();
                cols.push(apartment_cycle_tuple(l, &st, &members)?.chain);
            }
            assemble(flavor, domain, basis, cols)
        }
        Flavor::StPolytopes => {
            require(l.geometry.kind == Kind::E, "the polytope apartment map is certified on E only; use local for H")?;
            require(crate::collections::admissible(l) == Admissibility::Admissible, "NOT_ADMISSIBLE: L has no points")?;
            require(generated_by_hyperplanes(l), "L is not generated by hyperplanes")?;
            let st = relative_st_complex(l)?;
            let arr = build_arrangement(l)?;
            let (_, basis) = top_cycles(&st.complex);
            let mut cols = Vec::new();
            for &r in &arr.regions {
                cols.push(apartment_cycle_polytope(l, &st, &arr.region_polytope(r)?)?.chain);
            }
            assemble(flavor, GroupPresentation::free(arr.region_signs()), basis, cols)
        }
        Flavor::Local => {
            let a = a.ok_or_else(|| Error::HypothesesNotMet("the local map needs a polytope A".into()))?;
            require(l.geometry.kind != Kind::S, "the local map is for E and H")?;
            require(generated_by_hyperplanes(l), "L is not generated by hyperplanes")?;
            let (la, st) = local_complex(l, a)?;
            let arr = build_arrangement(l)?;
            let inside = regions_inside(&arr, Some(a))?;
            let (_, basis) = top_cycles(&st.complex);
            let mut cols = Vec::new();
            for &r in &inside {
                cols.push(apartment_cycle_polytope(&la, &st, &arr.region_polytope(r)?)?.chain);
            }
            let names = inside.iter().map(|&r| arr.cells[r].sign_string()).collect();
            assemble(flavor, GroupPresentation::free(names), basis, cols)
        }
        Flavor::PtSpherical => {
            let pt = pt_bicomplex(l)?;
            spherical_matrix(&pt)
        }
    }
}

pub fn spherical_matrix(pt: &PtBicomplex) -> Result<ApartmentMatrix> {
    let (_, basis) = top_cycles(&pt.relative);
    let mut lift = CarrierLift::new(pt);
    let arr = &pt.tri.arrangement;
    let mut cols = Vec::new();
    for &r in &arr.regions {
        cols.push(lift.apartment(&[r])?);
    }
    assemble(Flavor::PtSpherical, GroupPresentation::free(arr.region_signs()), basis, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::{closure_by_hyperplanes, closure_by_points};
    use crate::complexes::homology;
    use crate::exact::{qvec, Rational};
    use crate::geometry::{Geometry, HalfSpace};

    fn e2() -> Geometry {
        Geometry::new(Kind::E, 2)
    }

    fn triangle() -> Collection {
        closure_by_hyperplanes(e2(), &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[1, -1, -1])]).unwrap()
    }

    fn point_index(l: &Collection, x: &[i64]) -> usize {
        let v: Vec<Rational> = qvec(x);
        l.index_of(&LinearSubspace::span(&[v], l.geometry.ambient())).unwrap()
    }

    #[test]
    fn interval_matches_its_endpoints() {
        let l = closure_by_points(Geometry::new(Kind::E, 1), &[qvec(&[1, 0]), qvec(&[1, 1])]).unwrap();
        let st = relative_st_complex(&l).unwrap();
        let p = point_index(&l, &[1, 0]);
        let pp = point_index(&l, &[1, 1]);
        let t = apartment_cycle_tuple(&l, &st, &[p, pp]).unwrap();
        // the connecting map to the reduced chains of the points sends the
        // flag (U < X) to -(U), so the class goes to [p'] - [p]
        let delta = |u: usize| -t.chain[st.position(1, &[u, l.top]).unwrap()];
        assert_eq!((delta(pp), delta(p)), (1, -1));
        let seg = ConvexPolytope::from_halfspaces(l.geometry, &[HalfSpace::geq(qvec(&[0, 1])), HalfSpace::geq(qvec(&[1, -1]))]).unwrap();
        let c = apartment_cycle_polytope(&l, &st, &seg).unwrap();
        // (p, p') is positively oriented, so the interval gives the same chain
        assert_eq!(c.chain, t.chain);
    }

    #[test]
    fn triangle_region_matches_oriented_vertex_tuple() {
        let l = triangle();
        let st = relative_st_complex(&l).unwrap();
        let arr = build_arrangement(&l).unwrap();
        let p = arr.region_polytope(arr.regions[0]).unwrap();
        let poly = apartment_cycle_polytope(&l, &st, &p).unwrap();
        assert_eq!(poly.chain.iter().filter(|&&x| x != 0).count(), 6);
        let vs = [point_index(&l, &[1, 0, 0]), point_index(&l, &[1, 1, 0]), point_index(&l, &[1, 0, 1])];
        let tup = apartment_cycle_tuple(&l, &st, &vs).unwrap();
        // (0,0),(1,0),(0,1) is positively oriented
        assert_eq!(poly.chain, tup.chain);
    }

    #[test]
    fn four_point_relation_is_a_boundary() {
        let pts = [qvec(&[1, 0, 0]), qvec(&[1, 1, 0]), qvec(&[1, 0, 1]), qvec(&[1, 2, 3])];
        let l = closure_by_points(e2(), &pts).unwrap();
        let st = relative_st_complex(&l).unwrap();
        let idx: Vec<usize> = pts.iter().map(|p| l.index_of(&LinearSubspace::span(&[p.clone()], 3)).unwrap()).collect();
        let mut sum = vec![0i64; st.complex.rank(2)];
        for i in 0..4 {
            let mut t = idx.clone();
            t.remove(i);
            let c = apartment_cycle_tuple(&l, &st, &t).unwrap();
            for (s, v) in sum.iter_mut().zip(c.chain) {
                *s += if i % 2 == 0 { v } else { -v };
            }
        }
        // top degree has no boundaries, so the relation must vanish on the nose
        assert!(sum.iter().all(|&x| x == 0));
    }

    #[test]
    fn apartment_matrices() {
        let tri = apartment_matrix(&triangle(), Flavor::StPolytopes, None).unwrap();
        assert!(tri.iso());
        assert_eq!(tri.hom.matrix.rows, 1);
        let four = closure_by_hyperplanes(e2(), &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[1, -1, -1]), qvec(&[2, -1, -3])]).unwrap();
        let m = apartment_matrix(&four, Flavor::StPolytopes, None).unwrap();
        assert_eq!(m.hom.matrix.rows, 3);
        assert!(m.iso());
        assert!(m.det.unwrap().magnitude() == &num_bigint::BigUint::from(1u32));
        let pts = [qvec(&[1, 0, 0]), qvec(&[1, 1, 0]), qvec(&[1, 0, 1]), qvec(&[1, 2, 3])];
        let lp = closure_by_points(e2(), &pts).unwrap();
        let sp = apartment_matrix(&lp, Flavor::StPoints, None).unwrap();
        assert_eq!(sp.hom.domain.free_rank, 3);
        assert!(sp.iso());
        let h = homology(&relative_st_complex(&lp).unwrap().complex, true);
        assert_eq!(h.rank(2), 3);
    }

    #[test]
    fn spherical_coordinate_matrix() {
        for n in 1..=2usize {
            let fs: Vec<_> = (0..=n).map(|i| {
                let mut v = vec![0i64; n + 1];
                v[i] = 1;
                qvec(&v)
            }).collect();
            let l = closure_by_hyperplanes(Geometry::new(Kind::S, n), &fs).unwrap();
            let m = apartment_matrix(&l, Flavor::PtSpherical, None).unwrap();
            assert_eq!(m.hom.matrix.rows, 1 << (n + 1));
            assert!(m.iso());
        }
    }

    #[test]
    fn local_matrix_in_the_disk() {
        let h2 = Geometry::new(Kind::H, 2);
        let fs = [qvec(&[1, 4, 0]), qvec(&[1, 0, 4]), qvec(&[1, -4, -4])];
        let l = closure_by_hyperplanes(h2, &fs).unwrap();
        let a = ConvexPolytope::from_halfspaces(h2, &fs.iter().map(|f| HalfSpace::geq(f.clone())).collect::<Vec<_>>()).unwrap();
        let m = apartment_matrix(&l, Flavor::Local, Some(&a)).unwrap();
        assert_eq!(m.hom.matrix.cols, 1);
        assert!(m.iso());
    }
}
