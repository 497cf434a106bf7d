//! Flag complexes of a collection: the order complex, the relative complex
//! modelling the suspended Tits complex, its restriction to a polytope, and
//! the quotient complex on tuples of points.

use std::collections::HashMap;

use super::chain::ChainComplex;
use crate::collections::{restrict, Collection};
use crate::error::Result;
use crate::exact::{IntMatrix, LinearSubspace};
use crate::geometry::ConvexPolytope;

/// All strict chains `U0 < U1 < ... ` of members drawn from `allowed`,
/// grouped by length (index `k` holds chains of length `k`).
pub fn chains(l: &Collection, allowed: &[usize], max_len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut sorted = allowed.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_len + 1];
    out[0].push(Vec::new());
    let mut stack: Vec<Vec<usize>> = sorted.iter().map(|&i| vec![i]).collect();
    stack.reverse();
    while let Some(c) = stack.pop() {
        let len = c.len();
        if len > max_len {
            continue;
        }
        out[len].push(c.clone());
        let last = *c.last().expect("nonempty");
        for &j in sorted.iter().rev() {
            // canonical member order puts strictly larger members later
            if j > last && l.le(last, j) && l.members[j].dim() > l.members[last].dim() {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
    }
    for v in out.iter_mut() {
        v.sort();
    }
    out
}

pub fn flag_label(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(|i| format!("U{i}")).collect();
    format!("({})", parts.join("<"))
}

/// Flags of a complex together with their lookup table.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    pub complex: ChainComplex,
    /// `flags[k]` is the basis in degree `min_degree + k`.
    pub flags: Vec<Vec<Vec<usize>>>,
    pub index: Vec<HashMap<Vec<usize>, usize>>,
}

impl FlagComplex {
    pub fn position(&self, degree: i64, flag: &[usize]) -> Option<usize> {
        let k = degree - self.complex.min_degree;
        if k < 0 {
            return None;
        }
        self.index.get(k as usize).and_then(|m| m.get(flag).copied())
    }
}

fn index_of(flags: &[Vec<Vec<usize>>]) -> Vec<HashMap<Vec<usize>, usize>> {
    flags.iter().map(|v| v.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect()).collect()
}

/// Simplicial chains of the order complex on the proper members (or all
/// members when `include_top`). Vertices of a simplex are listed by
/// increasing dimension.
pub fn order_complex(l: &Collection, include_top: bool) -> Result<FlagComplex> {
    let verts: Vec<usize> = if include_top { (0..l.len()).collect() } else { l.proper() };
    let all = chains(l, &verts, l.geometry.ambient() + 1);
    let flags: Vec<Vec<Vec<usize>>> = all.into_iter().skip(1).filter(|v| !v.is_empty()).collect();
    let index = index_of(&flags);
    let mut boundaries = Vec::new();
    for (k, fs) in flags.iter().enumerate() {
        let below = if k == 0 { 0 } else { flags[k - 1].len() };
        let mut m = IntMatrix::zeros(below, fs.len());
        if k > 0 {
            for (j, f) in fs.iter().enumerate() {
                for i in 0..f.len() {
                    let mut face = f.clone();
                    face.remove(i);
                    m.add(index[k - 1][&face], j, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    let bases = flags.iter().map(|v| v.iter().map(|f| flag_label(f)).collect()).collect();
    Ok(FlagComplex { complex: ChainComplex::new(0, bases, boundaries)?, flags, index })
}

/// Relative chains of (cone, base): degree `p` has the flags of `p` proper
/// members followed by the top. The face dropping the top is zero.
pub fn relative_st_complex(l: &Collection) -> Result<FlagComplex> {
    let top = l.top;
    let n = l.geometry.n;
    let proper = l.proper();
    let all = chains(l, &proper, n);
    let flags: Vec<Vec<Vec<usize>>> = all
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|mut f| {
                    f.push(top);
                    f
                })
                .collect()
        })
        .collect();
    let index = index_of(&flags);
    let mut boundaries = Vec::new();
    for (p, fs) in flags.iter().enumerate() {
        let below = if p == 0 { 0 } else { flags[p - 1].len() };
        let mut m = IntMatrix::zeros(below, fs.len());
        if p > 0 {
            for (j, f) in fs.iter().enumerate() {
                for i in 0..p {
                    let mut face = f.clone();
                    face.remove(i);
                    m.add(index[p - 1][&face], j, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    let bases = flags.iter().map(|v| v.iter().map(|f| flag_label(f)).collect()).collect();
    Ok(FlagComplex { complex: ChainComplex::new(0, bases, boundaries)?, flags, index })
}

/// Relative complex on the members meeting `a`. Also returns the restricted
/// collection, whose member indices the flags refer to.
pub fn local_complex(l: &Collection, a: &ConvexPolytope) -> Result<(Collection, FlagComplex)> {
    let la = restrict(l, a)?;
    let c = relative_st_complex(&la)?;
    Ok((la, c))
}

/// Tuples of points spanning the whole space, in degrees `n` and `n + 1`,
/// so that homology in degree `n` is the quotient by degenerate tuples.
#[derive(Clone, Debug)]
pub struct TupleComplex {
    pub complex: ChainComplex,
    /// Member indices of the points, in the fixed order used for tuples.
    pub points: Vec<usize>,
    /// `tuples[0]` in degree `n`, `tuples[1]` in degree `n + 1`; entries
    /// are positions into `points`.
    pub tuples: Vec<Vec<Vec<usize>>>,
    pub index: Vec<HashMap<Vec<usize>, usize>>,
}

/// Is the span of these points contained in no proper member?
pub fn nondegenerate(l: &Collection, pts: &[usize], tuple: &[usize]) -> bool {
    let vecs: Vec<_> = tuple.iter().map(|&i| l.members[pts[i]].basis()[0].clone()).collect();
    let s = LinearSubspace::span(&vecs, l.geometry.ambient());
    !l.proper().iter().any(|&m| l.members[m].contains(&s))
}

fn increasing_tuples(k: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    rec(0, k, size, &mut cur, &mut out);
    out
}

pub fn tpl_complex(l: &Collection) -> Result<TupleComplex> {
    let n = l.geometry.n;
    let points = l.points();
    let k = points.len();
    let tuples: Vec<Vec<Vec<usize>>> = [n + 1, n + 2]
        .iter()
        .map(|&s| increasing_tuples(k, s).into_iter().filter(|t| nondegenerate(l, &points, t)).collect())
        .collect();
    let index = index_of(&tuples);
    let mut d1 = IntMatrix::zeros(tuples[0].len(), tuples[1].len());
    for (j, t) in tuples[1].iter().enumerate() {
        for i in 0..t.len() {
            let mut face = t.clone();
            face.remove(i);
            if let Some(&r) = index[0].get(&face) {
                d1.add(r, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    let label = |t: &Vec<usize>| {
        let parts: Vec<String> = t.iter().map(|&i| format!("U{}", points[i])).collect();
        format!("[{}]", parts.join(","))
    };
    let bases = tuples.iter().map(|v| v.iter().map(label).collect()).collect();
    let complex = ChainComplex::new(n as i64, bases, vec![IntMatrix::zeros(0, tuples[0].len()), d1])?;
    Ok(TupleComplex { complex, points, tuples, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::{closure_by_hyperplanes, closure_by_points};
    use crate::complexes::chain::homology;
    use crate::exact::qvec;
    use crate::geometry::{Geometry, HalfSpace, Kind};

    fn e2() -> Geometry {
        Geometry::new(Kind::E, 2)
    }

    fn triangle() -> Collection {
        closure_by_hyperplanes(e2(), &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[1, -1, -1])]).unwrap()
    }

    #[test]
    fn triangle_order_complex_is_a_hexagon() {
        let t = order_complex(&triangle(), false).unwrap();
        assert_eq!(t.complex.rank(0), 6);
        assert_eq!(t.complex.rank(1), 6);
        assert_eq!(t.complex.bases.len(), 2);
        let h = homology(&t.complex.augmented(), true);
        assert_eq!(h.betti(), vec![(1, 1)]);
    }

    #[test]
    fn triangle_relative_complex() {
        let st = relative_st_complex(&triangle()).unwrap();
        // 1 + 6 + 6 generators
        assert_eq!(st.complex.size(), 13);
        let h = homology(&st.complex, true);
        assert_eq!(h.betti(), vec![(2, 1)]);
        assert!(h.torsion_free());
    }

    #[test]
    fn top_only_has_empty_order_complex() {
        let l = closure_by_hyperplanes(e2(), &[]).unwrap();
        let t = order_complex(&l, false).unwrap();
        assert_eq!(t.complex.size(), 0);
        let h = homology(&relative_st_complex(&l).unwrap().complex, true);
        assert_eq!(h.betti(), vec![(0, 1)]);
    }

    #[test]
    fn points_on_a_line() {
        for k in 2..=5i64 {
            let pts: Vec<_> = (0..k).map(|i| qvec(&[1, i])).collect();
            let l = closure_by_points(Geometry::new(Kind::E, 1), &pts).unwrap();
            let h = homology(&relative_st_complex(&l).unwrap().complex, true);
            assert_eq!(h.betti(), vec![(1, (k - 1) as usize)]);
        }
    }

    #[test]
    fn concurrent_lines_are_contractible() {
        let l = closure_by_hyperplanes(e2(), &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1])]).unwrap();
        let t = order_complex(&l, false).unwrap();
        assert_eq!(t.complex.rank(0), 3);
        assert_eq!(t.complex.rank(1), 2);
        assert!(homology(&t.complex.augmented(), true).is_trivial());
        assert!(homology(&relative_st_complex(&l).unwrap().complex, true).is_trivial());
    }

    #[test]
    fn relative_complex_is_suspension_of_order_complex() {
        let l = triangle();
        let t = homology(&order_complex(&l, false).unwrap().complex.augmented(), true);
        let st = homology(&relative_st_complex(&l).unwrap().complex, true);
        let shifted: Vec<(i64, usize)> = t.betti().into_iter().map(|(d, r)| (d + 1, r)).collect();
        assert_eq!(st.betti(), shifted);
    }

    #[test]
    fn tuple_complex_examples() {
        let line = closure_by_points(Geometry::new(Kind::E, 1), &[qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[1, 3])]).unwrap();
        let c = tpl_complex(&line).unwrap();
        assert_eq!(c.complex.rank(1), 3);
        assert_eq!(homology(&c.complex, true).rank(1), 2);
        let tri = closure_by_points(e2(), &[qvec(&[1, 0, 0]), qvec(&[1, 1, 0]), qvec(&[1, 0, 1])]).unwrap();
        assert_eq!(homology(&tpl_complex(&tri).unwrap().complex, true).betti(), vec![(2, 1)]);
        let axes = closure_by_points(Geometry::new(Kind::S, 2), &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[0, 0, 1])]).unwrap();
        assert_eq!(homology(&tpl_complex(&axes).unwrap().complex, true).betti(), vec![(2, 1)]);
    }

    #[test]
    fn local_triangle_in_the_disk() {
        let h2 = Geometry::new(Kind::H, 2);
        let fs = [qvec(&[1, 4, 0]), qvec(&[1, 0, 4]), qvec(&[1, -4, -4])];
        let l = closure_by_hyperplanes(h2, &fs).unwrap();
        let a = ConvexPolytope::from_halfspaces(h2, &fs.iter().map(|f| HalfSpace::geq(f.clone())).collect::<Vec<_>>()).unwrap();
        let (_, c) = local_complex(&l, &a).unwrap();
        assert_eq!(homology(&c.complex, true).betti(), vec![(2, 1)]);
    }

    #[test]
    fn local_with_a_vertex_outside() {
        // A = {x + y >= 0, x <= 3/5, y <= 3/5} meets all three lines and
        // two vertices, but not the vertex (-1/4, -1/4)
        let h2 = Geometry::new(Kind::H, 2);
        let fs = [qvec(&[1, 4, 0]), qvec(&[1, 0, 4]), qvec(&[1, -4, -4])];
        let l = closure_by_hyperplanes(h2, &fs).unwrap();
        let sq: Vec<HalfSpace> = [[0, 1, 1], [3, -5, 0], [3, 0, -5]].iter().map(|f| HalfSpace::geq(qvec(f))).collect();
        let a = ConvexPolytope::from_halfspaces(h2, &sq).unwrap();
        let (la, c) = local_complex(&l, &a).unwrap();
        assert_eq!(la.len(), l.len() - 1);
        assert!(homology(&c.complex, true).is_trivial());
    }
}
