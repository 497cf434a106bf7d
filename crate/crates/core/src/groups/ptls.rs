//! The polytope group, the tuple group, and the map between them given by
//! the placing triangulation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::checks::{CheckReport, Verdict};
use super::presentation::{GroupHom, GroupPresentation};
use crate::arrangement::{build_arrangement, subdivide, Arrangement};
use crate::collections::{generated_by_both, generated_by_hyperplanes, generated_by_points, Collection};
use crate::complexes::tits::{tpl_complex, TupleComplex};
use crate::error::{Error, Result};
use crate::exact::forms::det_sign_rows;
use crate::exact::lattice::kernel_basis;
use crate::exact::rational::{dot, Rational};
use crate::exact::{IntMatrix, Lattice, LinearSubspace};
use crate::geometry::{ConvexPolytope, HalfSpace, Kind};

pub fn pt_group(l: &Collection) -> Result<(Arrangement, GroupPresentation)> {
    if !generated_by_hyperplanes(l) {
        return Err(Error::HypothesesNotMet("L is not generated by hyperplanes".into()));
    }
    let arr = build_arrangement(l)?;
    let g = GroupPresentation::free(arr.region_signs());
    Ok((arr, g))
}

pub fn ls_group(l: &Collection) -> Result<(TupleComplex, GroupPresentation)> {
    if !generated_by_points(l) {
        return Err(Error::NotGeneratedByPoints);
    }
    let tpl = tpl_complex(l)?;
    let n = l.geometry.n as i64;
    let g = GroupPresentation::new(tpl.complex.bases[0].clone(), tpl.complex.boundary(n + 1).expect("degree n + 1").clone());
    Ok((tpl, g))
}

/// Coordinates on the subspace spanned by `pts`: the pivot columns of its
/// RREF basis.
fn pivots(w: &LinearSubspace) -> Vec<usize> {
    w.basis().iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
}

fn side(w: &LinearSubspace, rows: &[&Vec<Rational>]) -> i8 {
    let p = pivots(w);
    let m: Vec<Vec<Rational>> = rows.iter().map(|r| p.iter().map(|&j| r[j].clone()).collect()).collect();
    det_sign_rows(&m)
}

/// Placing triangulation of the convex hull of homogeneous points. Points
/// are placed in the given order; returns maximal simplices as index lists.
pub fn placing_triangulation(pts: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    if pts.is_empty() {
        return Vec::new();
    }
    let d = pts[0].len();
    let mut w = LinearSubspace::span(&pts[..1], d);
    let mut simplices: Vec<Vec<usize>> = vec![vec![0]];
    for v in 1..pts.len() {
        if !w.contains_vec(&pts[v]) {
            for s in simplices.iter_mut() {
                s.push(v);
            }
            w = w.sum(&LinearSubspace::span(&pts[v..=v], d));
            continue;
        }
        let mut count: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
        for s in &simplices {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                count.entry(f).and_modify(|e| e.0 += 1).or_insert((1, s[i]));
            }
        }
        let mut added = Vec::new();
        for (f, (c, opp)) in count {
            if c != 1 {
                continue;
            }
            let mut a: Vec<&Vec<Rational>> = f.iter().map(|&i| &pts[i]).collect();
            let mut b = a.clone();
            a.push(&pts[v]);
            b.push(&pts[opp]);
            let sv = side(&w, &a);
            let so = side(&w, &b);
            // visible: strictly on the other side of the facet span
            if sv != 0 && sv == -so {
                let mut t = f.clone();
                t.push(v);
                added.push(t);
            }
        }
        simplices.extend(added);
    }
    simplices
}

/// Vertex vectors of a convex polytope, normalized to a positive affine
/// chart (`x0 = 1` on E/H, sum of facet functionals `= 1` on S), in
/// lexicographic order.
pub fn chart_vertices(p: &ConvexPolytope) -> Vec<Vec<Rational>> {
    let h: Vec<Rational> = match p.geometry.kind {
        Kind::S => {
            let mut h = vec![Rational::zero(); p.geometry.ambient()];
            for f in &p.facets {
                for (a, b) in h.iter_mut().zip(f) {
                    *a += b;
                }
            }
            h
        }
        _ => {
            let mut h = vec![Rational::zero(); p.geometry.ambient()];
            h[0] = Rational::from_integer(1.into());
            h
        }
    };
    let mut vs: Vec<Vec<Rational>> = p
        .vertices()
        .into_iter()
        .map(|v| {
            let s = dot(&h, &v);
            v.iter().map(|x| x / &s).collect()
        })
        .collect();
    vs.sort();
    vs
}

/// Image of a polytope in the tuple group, as coefficients on the
/// nondegenerate increasing tuples of `tpl`.
pub fn pt_to_ls(l: &Collection, tpl: &TupleComplex, p: &ConvexPolytope) -> Result<Vec<i64>> {
    let mut out = vec![0i64; tpl.tuples[0].len()];
    if p.geometry.kind == Kind::S && !p.is_strongly_convex() {
        for piece in subdivide(p, &l.hyperplanes)? {
            if !piece.is_strongly_convex() {
                return Err(Error::HypothesesNotMet("polytope does not cut into strongly convex pieces".into()));
            }
            for (a, b) in out.iter_mut().zip(pt_to_ls(l, tpl, &piece)?) {
                *a += b;
            }
        }
        return Ok(out);
    }
    let d = l.geometry.ambient();
    let vs = chart_vertices(p);
    let mut pos = Vec::with_capacity(vs.len());
    for v in &vs {
        let m = l.index_of(&LinearSubspace::span(std::slice::from_ref(v), d)).ok_or_else(|| Error::HypothesesNotMet("a vertex is not a point of L".into()))?;
        pos.push(tpl.points.iter().position(|&x| x == m).expect("point of L"));
    }
    for s in placing_triangulation(&vs) {
        let mut order: Vec<usize> = s.clone();
        order.sort_by_key(|&i| pos[i]);
        let tuple: Vec<usize> = order.iter().map(|&i| pos[i]).collect();
        let rows: Vec<Vec<Rational>> = order.iter().map(|&i| vs[i].clone()).collect();
        let sign = det_sign_rows(&rows) as i64;
        let g = tpl.index[0].get(&tuple).ok_or_else(|| Error::InvalidArgument("placing produced a degenerate simplex".into()))?;
        out[*g] += sign;
    }
    Ok(out)
}

/// Matrix of the map from the region basis of Pt to the tuple generators.
pub fn pt_ls_hom(l: &Collection) -> Result<(Arrangement, TupleComplex, GroupHom)> {
    if !generated_by_both(l) {
        return Err(Error::HypothesesNotMet("L is not generated by both points and hyperplanes".into()));
    }
    let (arr, pt) = pt_group(l)?;
    let (tpl, ls) = ls_group(l)?;
    let mut cols = Vec::new();
    for &r in &arr.regions {
        cols.push(pt_to_ls(l, &tpl, &arr.region_polytope(r)?)?);
    }
    let m = IntMatrix::from_columns(ls.len(), cols);
    Ok((arr, tpl, GroupHom::new(pt, ls, m)))
}

/// Simplex with the given vertex rays on the sphere.
fn spherical_simplex(l: &Collection, verts: &[Vec<Rational>]) -> Result<ConvexPolytope> {
    let d = l.geometry.ambient();
    let mut hs = Vec::new();
    for i in 0..verts.len() {
        let others: Vec<Vec<Rational>> = verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        let f = LinearSubspace::span(&others, d).annihilator()[0].clone();
        let f = if dot(&f, &verts[i]) > Rational::zero() { f } else { f.iter().map(|x| -x).collect() };
        hs.push(HalfSpace::geq(f));
    }
    ConvexPolytope::from_halfspaces(l.geometry, &hs)
}

/// Lattice of Pt generated by the joins `{x, -x} * P` with `P` an
/// (n-1)-simplex on points of L not spanning past `x`.
pub fn join_lattice(l: &Collection, arr: &Arrangement) -> Result<Lattice> {
    let n = l.geometry.n;
    let d = l.geometry.ambient();
    let pts: Vec<Vec<Rational>> = l.points().iter().map(|&i| l.members[i].basis()[0].clone()).collect();
    let k = pts.len();
    let mut gens = Vec::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize == n {
            subsets.push((0..k).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    for x in 0..k {
        for sub in subsets.iter().filter(|s| !s.contains(&x)) {
            let base: Vec<Vec<Rational>> = sub.iter().map(|&i| pts[i].clone()).collect();
            let w = LinearSubspace::span(&base, d);
            if w.dim() != n || w.contains_vec(&pts[x]) {
                continue;
            }
            for signs in 0u32..(1 << n) {
                let p: Vec<Vec<Rational>> = base
                    .iter()
                    .enumerate()
                    .map(|(j, v)| if signs >> j & 1 == 1 { v.iter().map(|c| -c).collect() } else { v.clone() })
                    .collect();
                let mut total = vec![0i64; arr.regions.len()];
                for e in [1i64, -1] {
                    let apex: Vec<Rational> = pts[x].iter().map(|c| c * Rational::from_integer(e.into())).collect();
                    let mut verts = vec![apex];
                    verts.extend(p.iter().cloned());
                    let s = spherical_simplex(l, &verts)?;
                    for (t, v) in total.iter_mut().zip(arr.convex_to_vector(&s)?) {
                        *t += v;
                    }
                }
                gens.push(total.into_iter().map(BigInt::from).collect());
            }
        }
    }
    Ok(Lattice::new(arr.regions.len(), gens))
}

/// Pt to Ls is an isomorphism on E/H; on S it is onto with kernel the join
/// lattice.
pub fn verify_pt_ls(l: &Collection, with_matrices: bool) -> Result<CheckReport> {
    let (arr, _tpl, hom) = pt_ls_hom(l)?;
    let cert = hom.certificate.clone();
    let mut ranks = serde_json::json!({
        "pt": hom.domain.free_rank,
        "ls_free_rank": hom.codomain.free_rank,
        "ls_torsion": hom.codomain.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    });
    let (ok, claim, witness) = if l.geometry.kind == Kind::S {
        let stacked = hom.matrix.hcat(&hom.codomain.relations);
        let g = hom.domain.len();
        let ker: Vec<Vec<BigInt>> = kernel_basis(&stacked.to_big_dense(), stacked.rows, stacked.cols).into_iter().map(|v| v[..g].to_vec()).collect();
        let ker_lat = Lattice::new(g, ker);
        let j = join_lattice(l, &arr)?;
        let equal = ker_lat.equals(&j);
        ranks["kernel_rank"] = serde_json::json!(ker_lat.rank());
        ranks["join_lattice_rank"] = serde_json::json!(j.rank());
        ranks["join_generators"] = serde_json::json!(j.gens.len());
        let ok = cert.well_defined && cert.surjective && equal;
        let w = (!ok).then(|| format!("surjective={} kernel_equals_joins={}", cert.surjective, equal));
        (ok, "Pt -> Ls is onto and its kernel is the lattice generated by joins", w)
    } else {
        let w = (!cert.iso).then(|| format!("{:?}", cert));
        (cert.iso, "Pt -> Ls is an isomorphism", w)
    };
    Ok(CheckReport {
        name: "pt-ls".into(),
        claim: claim.into(),
        hypotheses: "MET".into(),
        verdict: Verdict::from(ok),
        ranks,
        matrices: with_matrices.then(|| hom.to_json(true)),
        witness,
    })
}
