//! Spherical models: the barycentric triangulation of the sphere by an
//! arrangement, the total complex of the diagram `U -> S(U)` over L, and
//! apartment classes in it built by acyclic carriers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::chain::{homology, ChainComplex, HomologySummary};
use super::tits::{chains, flag_label};
use crate::arrangement::{build_arrangement, Arrangement};
use crate::collections::{admissible, generated_by_hyperplanes, Admissibility, Collection};
use crate::error::{Error, Result};
use crate::exact::lattice::IntegerSolver;
use crate::exact::{IntMatrix, LinearSubspace};
use crate::geometry::Kind;

/// Order complex of the cell poset of an arrangement on the sphere.
#[derive(Clone, Debug)]
pub struct SphereTriangulation {
    pub arrangement: Arrangement,
    /// `simplices[m]`: chains of `m + 1` cells, by increasing dimension.
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub index: Vec<HashMap<Vec<usize>, usize>>,
    pub complex: ChainComplex,
}

pub fn check_spherical(l: &Collection) -> Result<()> {
    if l.geometry.kind != Kind::S {
        return Err(Error::HypothesesNotMet("spherical collection required".into()));
    }
    if admissible(l) != Admissibility::Admissible {
        return Err(Error::HypothesesNotMet("NOT_ADMISSIBLE: the hyperplanes of L meet in a nonzero subspace".into()));
    }
    if !generated_by_hyperplanes(l) {
        return Err(Error::HypothesesNotMet("L is not generated by its hyperplanes".into()));
    }
    Ok(())
}

pub fn sphere_triangulation(l: &Collection) -> Result<SphereTriangulation> {
    check_spherical(l)?;
    let arrangement = build_arrangement(l)?;
    let cells = &arrangement.cells;
    let n = l.geometry.n;
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    let mut stack: Vec<Vec<usize>> = (0..cells.len()).map(|c| vec![c]).collect();
    while let Some(ch) = stack.pop() {
        let last = *ch.last().expect("nonempty");
        for c in 0..cells.len() {
            if cells[c].dim > cells[last].dim && arrangement.le(last, c) {
                let mut d = ch.clone();
                d.push(c);
                stack.push(d);
            }
        }
        simplices[ch.len() - 1].push(ch);
    }
    for v in simplices.iter_mut() {
        v.sort();
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        simplices.iter().map(|v| v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, simplices[0].len())];
    for m in 1..=n {
        let mut d = IntMatrix::zeros(simplices[m - 1].len(), simplices[m].len());
        for (j, s) in simplices[m].iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                d.add(index[m - 1][&f], j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(d);
    }
    let label = |s: &Vec<usize>| {
        let parts: Vec<String> = s.iter().map(|&c| cells[c].sign_string()).collect();
        format!("<{}>", parts.join("|"))
    };
    let bases = simplices.iter().map(|v| v.iter().map(label).collect()).collect();
    let complex = ChainComplex::new(0, bases, boundaries)?;
    Ok(SphereTriangulation { arrangement, simplices, index, complex })
}

impl SphereTriangulation {
    pub fn top_cell(&self, m: usize, j: usize) -> usize {
        *self.simplices[m][j].last().expect("nonempty")
    }

    /// Simplex lies in the flat `v`.
    pub fn in_flat(&self, m: usize, j: usize, v: &LinearSubspace) -> bool {
        v.contains(&self.arrangement.cells[self.top_cell(m, j)].flat)
    }

    /// Indices of the simplices of each dimension lying in `v`.
    pub fn subcomplex(&self, v: &LinearSubspace) -> Vec<Vec<usize>> {
        (0..self.simplices.len()).map(|m| (0..self.simplices[m].len()).filter(|&j| self.in_flat(m, j, v)).collect()).collect()
    }

    /// Orientation of a top simplex from the determinant of its witnesses.
    pub fn orientation(&self, j: usize) -> i8 {
        let n = self.simplices.len() - 1;
        let pts: Vec<_> = self.simplices[n][j].iter().map(|&c| self.arrangement.cells[c].witness.clone()).collect();
        self.arrangement.geometry.orientation_sign(&pts).expect("n + 1 witnesses")
    }

    /// Top simplices inside the closure of an `n`-cell.
    pub fn top_simplices_in(&self, region: usize) -> Vec<usize> {
        let n = self.simplices.len() - 1;
        (0..self.simplices[n].len()).filter(|&j| self.top_cell(n, j) == region).collect()
    }
}

/// Relative homology of the triangulation modulo all proper flats: the
/// strict colimit of the diagram.
pub fn pt_collapse_crosscheck(l: &Collection) -> Result<HomologySummary> {
    let tri = sphere_triangulation(l)?;
    let n = l.geometry.n;
    let keep: Vec<Vec<usize>> = (0..=n)
        .map(|m| (0..tri.simplices[m].len()).filter(|&j| tri.arrangement.cells[tri.top_cell(m, j)].dim == n as isize).collect())
        .collect();
    let rel = quotient(&tri.complex, &keep)?;
    Ok(homology(&rel, true))
}

/// Quotient of a complex by the subcomplex spanned by the basis elements not
/// in `keep` (which must be a subcomplex).
pub fn quotient(c: &ChainComplex, keep: &[Vec<usize>]) -> Result<ChainComplex> {
    let mut bases = Vec::new();
    let mut boundaries = Vec::new();
    for k in 0..c.bases.len() {
        let pos: HashMap<usize, usize> = if k == 0 { HashMap::new() } else { keep[k - 1].iter().enumerate().map(|(i, &r)| (r, i)).collect() };
        let below = if k == 0 { 0 } else { keep[k - 1].len() };
        let mut m = IntMatrix::zeros(below, keep[k].len());
        for (j, &col) in keep[k].iter().enumerate() {
            for &(r, v) in c.boundaries[k].column(col) {
                if let Some(&i) = pos.get(&r) {
                    m.add(i, j, v);
                }
            }
        }
        boundaries.push(m);
        bases.push(keep[k].iter().map(|&i| c.bases[k][i].clone()).collect());
    }
    ChainComplex::new(c.min_degree, bases, boundaries)
}

/// Basis element of the total complex: a flag of members and a simplex of
/// the triangulation lying in the first member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiCell {
    pub flag: Vec<usize>,
    pub m: usize,
    pub simplex: usize,
}

#[derive(Clone, Debug)]
pub struct PtBicomplex {
    pub collection: Collection,
    pub tri: SphereTriangulation,
    /// Total complex over all of L.
    pub absolute: ChainComplex,
    pub cells: Vec<Vec<BiCell>>,
    pub index: Vec<HashMap<BiCell, usize>>,
    /// Quotient by the part over the proper members.
    pub relative: ChainComplex,
    /// Absolute positions of the relative basis, per degree.
    pub kept: Vec<Vec<usize>>,
}

pub fn pt_bicomplex(l: &Collection) -> Result<PtBicomplex> {
    let tri = sphere_triangulation(l)?;
    let n = l.geometry.n;
    let all: Vec<usize> = (0..l.len()).collect();
    let flags = chains(l, &all, n + 1);
    let subs: Vec<Vec<Vec<usize>>> = l.members.iter().map(|v| tri.subcomplex(v)).collect();
    let mut cells: Vec<Vec<BiCell>> = vec![Vec::new(); n + 1];
    for (len, fs) in flags.iter().enumerate().skip(1) {
        let k = len - 1;
        for f in fs {
            for (m, js) in subs[f[0]].iter().enumerate() {
                if k + m > n {
                    continue;
                }
                for &j in js {
                    cells[k + m].push(BiCell { flag: f.clone(), m, simplex: j });
                }
            }
        }
    }
    for v in cells.iter_mut() {
        v.sort();
    }
    let index: Vec<HashMap<BiCell, usize>> = cells.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, cells[0].len())];
    for d in 1..=n {
        let mut mat = IntMatrix::zeros(cells[d - 1].len(), cells[d].len());
        for (col, b) in cells[d].iter().enumerate() {
            for (face, v) in bicell_boundary(&tri, b) {
                mat.add(index[d - 1][&face], col, v);
            }
        }
        boundaries.push(mat);
    }
    let label = |b: &BiCell| format!("{}x{}", flag_label(&b.flag), tri.complex.bases[b.m][b.simplex]);
    let bases: Vec<Vec<String>> = cells.iter().map(|v| v.iter().map(label).collect()).collect();
    let absolute = ChainComplex::new(0, bases, boundaries)?;
    let kept: Vec<Vec<usize>> = cells.iter().map(|v| (0..v.len()).filter(|&i| *v[i].flag.last().expect("nonempty") == l.top).collect()).collect();
    let relative = quotient(&absolute, &kept)?;
    Ok(PtBicomplex { collection: l.clone(), tri, absolute, cells, index, relative, kept })
}

fn bicell_boundary(tri: &SphereTriangulation, b: &BiCell) -> Vec<(BiCell, i64)> {
    let k = b.flag.len() - 1;
    let mut out = Vec::new();
    if k >= 1 {
        for i in 0..=k {
            let mut f = b.flag.clone();
            f.remove(i);
            out.push((BiCell { flag: f, m: b.m, simplex: b.simplex }, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    if b.m >= 1 {
        let s = if k % 2 == 0 { 1 } else { -1 };
        for &(r, v) in tri.complex.boundaries[b.m].column(b.simplex) {
            out.push((BiCell { flag: b.flag.clone(), m: b.m - 1, simplex: r }, s * v));
        }
    }
    out
}

/// Chain-level lift of the triangulation into the total complex, built one
/// simplex at a time inside the contractible carrier of its top cell.
pub struct CarrierLift<'a> {
    pt: &'a PtBicomplex,
    memo: HashMap<(usize, usize), Vec<i64>>,
    solvers: HashMap<(usize, usize), (Vec<usize>, Vec<usize>, IntegerSolver)>,
}

impl<'a> CarrierLift<'a> {
    pub fn new(pt: &'a PtBicomplex) -> Self {
        CarrierLift { pt, memo: HashMap::new(), solvers: HashMap::new() }
    }

    fn member_of_flat(&self, cell: usize) -> usize {
        let flat = &self.pt.tri.arrangement.cells[cell].flat;
        self.pt.collection.index_of(flat).expect("cell flats are members of a hyperplane-generated L")
    }

    fn in_carrier(&self, cell: usize, b: &BiCell) -> bool {
        let l = &self.pt.collection;
        let tri = &self.pt.tri;
        let flat = &tri.arrangement.cells[cell].flat;
        flat.contains(&l.members[*b.flag.last().expect("nonempty")]) && tri.arrangement.le(tri.top_cell(b.m, b.simplex), cell)
    }

    /// Absolute chain of degree `m` lifting simplex `(m, j)`.
    pub fn lift(&mut self, m: usize, j: usize) -> Result<Vec<i64>> {
        if let Some(v) = self.memo.get(&(m, j)) {
            return Ok(v.clone());
        }
        let pt = self.pt;
        let mut out = vec![0i64; pt.cells[m].len()];
        let top = pt.tri.top_cell(m, j);
        if m == 0 {
            let b = BiCell { flag: vec![self.member_of_flat(top)], m: 0, simplex: j };
            out[pt.index[0][&b]] = 1;
        } else {
            let mut rhs = vec![0i64; pt.cells[m - 1].len()];
            let faces: Vec<(usize, i64)> = pt.tri.complex.boundaries[m].column(j).to_vec();
            for (r, v) in faces {
                let f = self.lift(m - 1, r)?;
                for (x, y) in rhs.iter_mut().zip(f) {
                    *x += v * y;
                }
            }
            let (rows, cols) = self.carrier(top, m);
            let b: Vec<BigInt> = rows.iter().map(|&r| BigInt::from(rhs[r])).collect();
            let solver = &self.solvers[&(top, m)].2;
            let x = solver.solve(&b).ok_or_else(|| Error::NoLift(format!("carrier of cell {} is not acyclic in degree {}", top, m - 1)))?;
            for (c, v) in cols.iter().zip(x) {
                out[*c] = v.to_i64().ok_or(Error::Overflow)?;
            }
        }
        self.memo.insert((m, j), out.clone());
        Ok(out)
    }

    fn carrier(&mut self, cell: usize, m: usize) -> (Vec<usize>, Vec<usize>) {
        if let Some((r, c, _)) = self.solvers.get(&(cell, m)) {
            return (r.clone(), c.clone());
        }
        let pt = self.pt;
        let cols: Vec<usize> = (0..pt.cells[m].len()).filter(|&i| self.in_carrier(cell, &pt.cells[m][i])).collect();
        let rows: Vec<usize> = (0..pt.cells[m - 1].len()).filter(|&i| self.in_carrier(cell, &pt.cells[m - 1][i])).collect();
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut a = vec![vec![BigInt::from(0); cols.len()]; rows.len()];
        for (jj, &c) in cols.iter().enumerate() {
            for &(r, v) in pt.absolute.boundaries[m].column(c) {
                a[pos[&r]][jj] += v;
            }
        }
        let solver = IntegerSolver::new(&a, rows.len(), cols.len());
        self.solvers.insert((cell, m), (rows.clone(), cols.clone(), solver));
        (rows, cols)
    }

    /// Relative degree-`n` chain of the fundamental class of the union of
    /// the closures of the given `n`-cells.
    pub fn apartment(&mut self, regions: &[usize]) -> Result<Vec<i64>> {
        let pt = self.pt;
        let n = pt.tri.simplices.len() - 1;
        let mut total = vec![0i64; pt.cells[n].len()];
        for &r in regions {
            for j in pt.tri.top_simplices_in(r) {
                let s = pt.tri.orientation(j) as i64;
                let x = self.lift(n, j)?;
                for (t, v) in total.iter_mut().zip(x) {
                    *t += s * v;
                }
            }
        }
        Ok(pt.kept[n].iter().map(|&i| total[i]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::closure_by_hyperplanes;
    use crate::exact::qvec;
    use crate::geometry::Geometry;

    fn coord(n: usize) -> Collection {
        let fs: Vec<_> = (0..=n)
            .map(|i| {
                let mut v = vec![0i64; n + 1];
                v[i] = 1;
                qvec(&v)
            })
            .collect();
        closure_by_hyperplanes(Geometry::new(Kind::S, n), &fs).unwrap()
    }

    #[test]
    fn triangulation_counts() {
        let t1 = sphere_triangulation(&coord(1)).unwrap();
        assert_eq!(t1.complex.rank(0), 8);
        assert_eq!(t1.complex.rank(1), 8);
        let t2 = sphere_triangulation(&coord(2)).unwrap();
        assert_eq!(t2.complex.rank(0), 26);
        let h = homology(&t2.complex, false);
        assert_eq!(h.betti(), vec![(0, 1), (2, 1)]);
        let z = LinearSubspace::span(&[qvec(&[0, 0, 1])], 3);
        let sub = t2.subcomplex(&z);
        assert_eq!(sub[0].len(), 2);
        assert!(sub[1].is_empty());
    }

    #[test]
    fn s0_base_case() {
        let l = closure_by_hyperplanes(Geometry::new(Kind::S, 0), &[qvec(&[1])]).unwrap();
        let pt = pt_bicomplex(&l).unwrap();
        assert_eq!(homology(&pt.relative, true).betti(), vec![(0, 2)]);
        assert_eq!(pt_collapse_crosscheck(&l).unwrap().betti(), vec![(0, 2)]);
    }

    #[test]
    fn coordinate_bicomplex() {
        for n in 1..=2usize {
            let l = coord(n);
            let pt = pt_bicomplex(&l).unwrap();
            let h = homology(&pt.relative, true);
            assert_eq!(h.betti(), vec![(n as i64, 1 << (n + 1))]);
            assert!(h.torsion_free());
            assert_eq!(pt_collapse_crosscheck(&l).unwrap(), h);
        }
    }

    #[test]
    fn generic_planes_agree_across_methods() {
        let l = closure_by_hyperplanes(Geometry::new(Kind::S, 2), &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[1, 1, 1])]).unwrap();
        let pt = pt_bicomplex(&l).unwrap();
        assert_eq!(homology(&pt.relative, true), pt_collapse_crosscheck(&l).unwrap());
    }

    #[test]
    fn non_admissible_is_rejected() {
        let l = closure_by_hyperplanes(Geometry::new(Kind::S, 2), &[qvec(&[1, 0, 0])]).unwrap();
        assert!(matches!(pt_bicomplex(&l), Err(Error::HypothesesNotMet(_))));
    }

    #[test]
    fn carrier_apartments_are_relative_cycles() {
        let l = coord(2);
        let pt = pt_bicomplex(&l).unwrap();
        let mut lift = CarrierLift::new(&pt);
        let d = pt.relative.boundary(2).unwrap();
        for &r in &pt.tri.arrangement.regions {
            let a = lift.apartment(&[r]).unwrap();
            assert!(a.iter().any(|&x| x != 0));
            assert!(d.apply(&a).iter().all(|&x| x == 0));
        }
    }
}
