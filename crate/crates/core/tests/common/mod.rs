//! Independent oracles and property checks shared by the acceptance harness
//! and the property suite. The oracles use plain rational geometry and do not
//! go through the arrangement or complex builders.

#![allow(dead_code)]

use std::collections::BTreeMap;

use geotits::arrangement::{build_arrangement, subdivide, Arrangement};
use geotits::collections::{closure_by_hyperplanes, closure_by_points};
use geotits::complexes::tits::{order_complex, relative_st_complex, tpl_complex};
use geotits::complexes::ChainComplex;
use geotits::exact::feasibility::satisfies;
use geotits::exact::rational::dot;
use geotits::exact::snf::{dense_mul, is_unimodular};
use geotits::exact::{feasible, q, smith_normal_form, IntMatrix, LinearSubspace, RatMatrix, Rational};
use geotits::geometry::{ConvexPolytope, Geometry, HalfSpace, Kind};
use geotits::groups::apartments::{apartment_cycle_polytope, simplicial_relation, tuple_apartment_or_zero};
use geotits::resolution::build_resolution;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const SEED: [u8; 32] = *b"geotits-fixed-seed-for-property!";

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

pub fn rv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

// ---------------------------------------------------------------------------
// plane geometry oracles

/// Intersection of two affine lines `c + a x + b y = 0`, if not parallel.
pub fn meet(f: &[Rational], g: &[Rational]) -> Option<(Rational, Rational)> {
    let det = &f[1] * &g[2] - &f[2] * &g[1];
    if det.is_zero() {
        return None;
    }
    let x = (&f[2] * &g[0] - &f[0] * &g[2]) / &det;
    let y = (&f[0] * &g[1] - &f[1] * &g[0]) / &det;
    Some((x, y))
}

pub fn eval(f: &[Rational], p: &(Rational, Rational)) -> Rational {
    &f[0] + &f[1] * &p.0 + &f[2] * &p.1
}

/// Intersection points with the number of lines through each.
pub fn crossings(lines: &[Vec<Rational>]) -> BTreeMap<(Rational, Rational), usize> {
    let mut pts = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = meet(&lines[i], &lines[j]) {
                pts.entry(p).or_insert(0);
            }
        }
    }
    for (p, m) in pts.iter_mut() {
        *m = lines.iter().filter(|f| eval(f, p).is_zero()).count();
    }
    pts
}

/// Bounded regions of a line arrangement that is not a parallel family:
/// `1 - lines + sum over crossings of (multiplicity - 1)`.
pub fn bounded_regions_e2(lines: &[Vec<Rational>]) -> usize {
    let pts = crossings(lines);
    assert!(!pts.is_empty(), "oracle needs at least one crossing");
    let s: i64 = 1 - lines.len() as i64 + pts.values().map(|&m| m as i64 - 1).sum::<i64>();
    s as usize
}

/// Vertices of a convex polygon given by half-planes `f >= 0`.
pub fn polygon_vertices(hs: &[Vec<Rational>]) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if let Some(p) = meet(&hs[i], &hs[j]) {
                if hs.iter().all(|h| !eval(h, &p).is_negative()) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Regions of a convex polygon cut by the given lines, counted by Euler's
/// formula for chords: `1 + chords + sum over interior crossings of
/// (multiplicity - 1)`.
pub fn regions_in_polygon(lines: &[Vec<Rational>], polygon: &[Vec<Rational>]) -> usize {
    let verts = polygon_vertices(polygon);
    let chords: Vec<Vec<Rational>> = lines
        .iter()
        .filter(|f| verts.iter().any(|v| eval(f, v).is_positive()) && verts.iter().any(|v| eval(f, v).is_negative()))
        .cloned()
        .collect();
    let inner: usize = crossings(&chords)
        .iter()
        .filter(|(p, _)| polygon.iter().all(|h| eval(h, p).is_positive()))
        .map(|(_, &m)| m - 1)
        .sum();
    1 + chords.len() + inner
}

/// Bounded segments cut on the line `u` by the other lines.
pub fn segments_on(u: &[Rational], lines: &[Vec<Rational>]) -> usize {
    let mut pts: Vec<(Rational, Rational)> = lines.iter().filter_map(|f| meet(u, f)).collect();
    pts.sort();
    pts.dedup();
    pts.len().saturating_sub(1)
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---------------------------------------------------------------------------
// property checks

/// Every consecutive pair of boundary maps composes to zero.
pub fn check_d_squared(c: &ChainComplex) -> Result<(), TestCaseError> {
    let lo = c.min_degree;
    let hi = c.max_degree();
    for d in lo + 1..hi {
        if let (Some(a), Some(b)) = (c.boundary(d), c.boundary(d + 1)) {
            prop_assert!(a.mul(b).is_zero(), "d{d} d{} != 0", d + 1);
        }
    }
    Ok(())
}

pub fn line_strategy() -> impl Strategy<Value = Vec<Rational>> {
    (-4i64..=4, -3i64..=3, -3i64..=3).prop_filter("proper line", |(_, a, b)| *a != 0 || *b != 0).prop_map(|(c, a, b)| rv(&[c, a, b]))
}

pub fn lines_strategy() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(line_strategy(), 2..=5)
}

pub fn points_strategy() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::btree_set((-3i64..=3, -3i64..=3), 3..=5).prop_map(|s| s.into_iter().map(|(x, y)| rv(&[1, x, y])).collect())
}

fn e2() -> Geometry {
    Geometry::new(Kind::E, 2)
}

pub fn prop_d_squared_hyperplanes(lines: Vec<Vec<Rational>>) -> Result<(), TestCaseError> {
    let Ok(l) = closure_by_hyperplanes(e2(), &lines) else { return Ok(()) };
    check_d_squared(&relative_st_complex(&l).expect("st").complex)?;
    check_d_squared(&order_complex(&l, false).expect("t").complex.augmented())?;
    check_d_squared(&order_complex(&l, true).expect("ct").complex)?;
    Ok(())
}

pub fn prop_d_squared_points(pts: Vec<Vec<Rational>>) -> Result<(), TestCaseError> {
    let Ok(l) = closure_by_points(e2(), &pts) else { return Ok(()) };
    check_d_squared(&relative_st_complex(&l).expect("st").complex)?;
    check_d_squared(&tpl_complex(&l).expect("tpl").complex)?;
    Ok(())
}

pub fn prop_d_squared_resolution(k: usize, ordered: bool) -> Result<(), TestCaseError> {
    let r = build_resolution(k, k + 1, ordered).expect("small");
    check_d_squared(&r.complex)?;
    if ordered {
        check_d_squared(&r.complex.augmented())?;
    }
    Ok(())
}

pub fn int_matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// Elementary row operations `row_i += k row_j` as a unimodular matrix.
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<BigInt>> {
    let mut u: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            u.swap(i, (i + 1) % n);
            continue;
        }
        let add: Vec<BigInt> = u[j].iter().map(|x| x * k).collect();
        for (a, b) in u[i].iter_mut().zip(add) {
            *a += b;
        }
    }
    u
}

pub fn prop_snf_invariance(m: Vec<Vec<i64>>, left: Vec<(usize, usize, i64)>, right: Vec<(usize, usize, i64)>) -> Result<(), TestCaseError> {
    let (r, c) = (m.len(), m[0].len());
    let u = unimodular(r, &left);
    let v = unimodular(c, &right);
    prop_assert!(is_unimodular(&u) && is_unimodular(&v));
    let big: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let t = dense_mul(&dense_mul(&u, &big, r, c), &v, c, c);
    let small: Vec<Vec<i64>> = t.iter().map(|row| row.iter().map(|x| i64::try_from(x).expect("small")).collect()).collect();
    let a = smith_normal_form(&IntMatrix::from_dense(&m));
    let b = smith_normal_form(&IntMatrix::from_dense(&small));
    prop_assert_eq!(a.factors, b.factors);
    Ok(())
}

pub fn vectors_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=5).prop_flat_map(|d| (Just(d), prop::collection::vec(prop::collection::vec(-3i64..=3, d), 0..=4)))
}

pub fn prop_rref_idempotent(d: usize, vs: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| rv(v)).collect();
    if rows.is_empty() {
        return Ok(());
    }
    let (r1, p1) = RatMatrix::from_rows(&rows, d).rref();
    let (r2, p2) = r1.rref();
    prop_assert_eq!(r1.row_vecs(), r2.row_vecs());
    prop_assert_eq!(p1, p2);
    let s = LinearSubspace::span(&rows, d);
    prop_assert_eq!(LinearSubspace::span(s.basis(), d), s);
    Ok(())
}

pub fn prop_orthocomplement(d: usize, vs: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| rv(v)).collect();
    let s = LinearSubspace::span(&rows, d);
    let perp = s.orthogonal_complement();
    prop_assert_eq!(s.dim() + perp.dim(), d);
    prop_assert_eq!(perp.orthogonal_complement(), s.clone());
    for a in s.basis() {
        for b in perp.basis() {
            prop_assert!(dot(a, b).is_zero());
        }
    }
    Ok(())
}

pub fn feasibility_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let row = prop::collection::vec(-3i64..=3, 3);
    (prop::collection::vec(row.clone(), 0..=3), prop::collection::vec(row, 0..=3))
}

/// Witnesses returned by the feasibility solver satisfy every row, and a
/// system with a known solution is never reported infeasible.
pub fn prop_feasibility(strict: Vec<Vec<i64>>, nonstrict: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let s: Vec<Vec<Rational>> = strict.iter().map(|v| rv(v)).collect();
    let ns: Vec<Vec<Rational>> = nonstrict.iter().map(|v| rv(v)).collect();
    if let Some(x) = feasible(&s, &ns, &[], 2) {
        prop_assert!(satisfies(&x, &s, &ns, &[]));
    }
    // shift every row so that (1, 1) satisfies it strictly
    let shift = |r: &Vec<Rational>| {
        let val = &r[0] + &r[1] + &r[2];
        let mut r = r.clone();
        r[0] = &r[0] - &val + q(1);
        r
    };
    let s2: Vec<Vec<Rational>> = s.iter().map(shift).collect();
    let ns2: Vec<Vec<Rational>> = ns.iter().map(shift).collect();
    let x = feasible(&s2, &ns2, &[], 2);
    prop_assert!(x.is_some());
    prop_assert!(satisfies(&x.unwrap(), &s2, &ns2, &[]));
    Ok(())
}

pub fn prop_orientation_alternates(pts: Vec<Vec<Rational>>, i: usize, j: usize) -> Result<(), TestCaseError> {
    let g = e2();
    let t: Vec<Vec<Rational>> = pts[..3].to_vec();
    let s = g.orientation_sign(&t).expect("3 points");
    let (i, j) = (i % 3, j % 3);
    let mut u = t.clone();
    u.swap(i, j);
    let s2 = g.orientation_sign(&u).expect("3 points");
    prop_assert_eq!(s2, if i == j { s } else { -s });
    Ok(())
}

/// Apartment chains are cycles, satisfy the simplicial relation, alternate
/// under reordering and vanish on degenerate tuples.
pub fn prop_apartments(pts: Vec<Vec<Rational>>, pick: Vec<usize>) -> Result<(), TestCaseError> {
    let Ok(l) = closure_by_points(e2(), &pts) else { return Ok(()) };
    let st = relative_st_complex(&l).expect("st");
    let ps = l.points();
    let choose = |k: usize| -> Vec<usize> { (0..k).map(|i| ps[pick[i] % ps.len()]).collect() };
    let t = choose(3);
    let c = tuple_apartment_or_zero(&l, &st, &t).expect("apartment");
    if let Some(b) = st.complex.boundary(2) {
        prop_assert!(b.apply(&c).iter().all(|&x| x == 0), "apartment is not a cycle");
    }
    let swapped = vec![t[1], t[0], t[2]];
    let c2 = tuple_apartment_or_zero(&l, &st, &swapped).expect("apartment");
    prop_assert!(c.iter().zip(&c2).all(|(a, b)| *a == -b), "transposition must flip the sign");
    // a repeated point is degenerate
    let rep = vec![t[0], t[0], t[1]];
    prop_assert!(tuple_apartment_or_zero(&l, &st, &rep).expect("apartment").iter().all(|&x| x == 0));
    let r = choose(4);
    prop_assert!(simplicial_relation(&l, &st, &r).expect("relation").iter().all(|&x| x == 0), "simplicial relation fails for {:?}", r);
    Ok(())
}

pub fn rectangle_strategy() -> impl Strategy<Value = ((i64, i64, i64, i64), Vec<Rational>)> {
    ((-3i64..=0, 1i64..=3, -3i64..=0, 1i64..=3), line_strategy())
}

fn rectangle(x0: i64, x1: i64, y0: i64, y1: i64) -> Vec<Vec<Rational>> {
    vec![rv(&[-x0, 1, 0]), rv(&[x1, -1, 0]), rv(&[-y0, 0, 1]), rv(&[y1, 0, -1])]
}

/// Cutting a rectangle by a line: indicator vectors and apartment classes of
/// the pieces add up to those of the rectangle.
pub fn prop_subdivision_additive(rect: (i64, i64, i64, i64), cutter: Vec<Rational>) -> Result<(), TestCaseError> {
    let hs = rectangle(rect.0, rect.1, rect.2, rect.3);
    let mut lines = hs.clone();
    lines.push(cutter.clone());
    let Ok(l) = closure_by_hyperplanes(e2(), &lines) else { return Ok(()) };
    let p = ConvexPolytope::from_halfspaces(e2(), &hs.iter().map(|f| HalfSpace::geq(f.clone())).collect::<Vec<_>>()).expect("rectangle");
    let pieces = subdivide(&p, &[cutter]).expect("pieces");
    let arr: Arrangement = build_arrangement(&l).expect("arrangement");
    let whole = arr.convex_to_vector(&p).expect("vector");
    let mut sum = vec![0i64; whole.len()];
    for c in &pieces {
        for (s, v) in sum.iter_mut().zip(arr.convex_to_vector(c).expect("vector")) {
            *s += v;
        }
    }
    prop_assert_eq!(&whole, &sum);
    let st = relative_st_complex(&l).expect("st");
    let a = apartment_cycle_polytope(&l, &st, &p).expect("apartment").chain;
    let mut b = vec![0i64; a.len()];
    for c in &pieces {
        for (s, v) in b.iter_mut().zip(apartment_cycle_polytope(&l, &st, c).expect("apartment").chain) {
            *s += v;
        }
    }
    prop_assert_eq!(a, b);
    Ok(())
}

pub fn polytope_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    // half-spaces c + a.x >= 0 with c > 0 all contain the origin
    prop::collection::vec((1i64..=4, -3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(c, a, b, d)| vec![c, a, b, d]), 4..=7)
}

/// Each face spans the intersection of the facet hyperplanes containing it,
/// and the faces inside that span are exactly the faces of it.
pub fn prop_face_spans(hs: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let g = Geometry::new(Kind::E, 3);
    let half: Vec<HalfSpace> = hs.iter().filter(|h| h[1..].iter().any(|&x| x != 0)).map(|h| HalfSpace::geq(rv(h))).collect();
    let Ok(p) = ConvexPolytope::from_halfspaces(g, &half) else { return Ok(()) };
    for (i, f) in p.faces.iter().enumerate() {
        let tight: Vec<Vec<Rational>> = p.facets.iter().zip(&f.sign).filter(|(_, &s)| s == 0).map(|(h, _)| h.clone()).collect();
        prop_assert_eq!(&LinearSubspace::kernel_of(&tight, 4), &f.span);
        prop_assert!(p.contains_point(&f.witness) && f.span.contains_vec(&f.witness));
        for (j, h) in p.faces.iter().enumerate() {
            prop_assert_eq!(f.span.contains(&h.span), p.face_le(j, i), "face {} vs {}", j, i);
        }
    }
    Ok(())
}

pub fn sphere_planes_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)), 1..=4)
}

/// On the sphere the arrangement is symmetric under `x -> -x`.
pub fn prop_antipodal(planes: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let fs: Vec<Vec<Rational>> = planes.iter().map(|v| rv(v)).collect();
    let Ok(l) = closure_by_hyperplanes(Geometry::new(Kind::S, 2), &fs) else { return Ok(()) };
    let arr = build_arrangement(&l).expect("arrangement");
    for c in &arr.cells {
        let neg: Vec<i8> = c.sign.iter().map(|s| -s).collect();
        let j = arr.cell_by_sign(&neg);
        prop_assert!(j.is_some(), "antipode of {:?} missing", c.sign);
        prop_assert_eq!(arr.cells[j.unwrap()].dim, c.dim);
        let w: Vec<Rational> = c.witness.iter().map(|x| -x).collect();
        prop_assert_eq!(arr.sign_of_point(&w), neg);
    }
    Ok(())
}

/// Run every property with a fixed seed; returns the failures.
pub fn run_all(cases: u32) -> Vec<String> {
    let mut failures = Vec::new();
    macro_rules! run {
        ($name:expr, $strat:expr, $f:expr) => {{
            if let Err(e) = runner(cases).run(&$strat, $f) {
                failures.push(format!("{}: {}", $name, e));
            }
        }};
    }
    run!("d_squared_hyperplanes", lines_strategy(), prop_d_squared_hyperplanes);
    run!("d_squared_points", points_strategy(), prop_d_squared_points);
    run!("d_squared_resolution", (1usize..=4, any::<bool>()), |(k, o)| prop_d_squared_resolution(k, o));
    run!(
        "snf_unimodular_invariance",
        (int_matrix_strategy(), prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6), prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6)),
        |(m, a, b)| prop_snf_invariance(m, a, b)
    );
    run!("rref_idempotent", vectors_strategy(), |(d, v)| prop_rref_idempotent(d, v));
    run!("orthocomplement_involution", vectors_strategy(), |(d, v)| prop_orthocomplement(d, v));
    run!("feasibility_witnesses", feasibility_strategy(), |(s, n)| prop_feasibility(s, n));
    run!("orientation_alternation", (points_strategy(), 0usize..3, 0usize..3), |(p, i, j)| prop_orientation_alternates(p, i, j));
    run!("apartment_relations", (points_strategy(), prop::collection::vec(0usize..16, 4)), |(p, k)| prop_apartments(p, k));
    run!("subdivision_additivity", rectangle_strategy(), |(r, c)| prop_subdivision_additive(r, c));
    run!("face_span_identities", polytope_strategy(), prop_face_spans);
    run!("antipodal_invariance", sphere_planes_strategy(), prop_antipodal);
    failures
}
