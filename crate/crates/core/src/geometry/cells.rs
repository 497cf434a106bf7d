//! Decomposition of a model space by finitely many hyperplanes into
//! relatively open cells, one per realisable sign vector.
//!
//! Hyperplanes are inserted one at a time. Each existing cell either misses
//! the new hyperplane's zero set, lies inside it, or splits into up to three
//! pieces; every candidate piece is tested by exact feasibility.

use num_traits::{One, Signed, Zero};

use super::{Geometry, Kind};
use crate::exact::feasibility::feasible;
use crate::exact::rational::{dot, q, sign, Rational};
use crate::exact::{LinearSubspace, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCell {
    pub sign: Vec<i8>,
    /// Homogeneous point in the cell; `x0 = 1` in the affine charts.
    pub witness: Vec<Rational>,
    /// Common zero set of the hyperplanes with sign 0 (the cell's span).
    pub flat: LinearSubspace,
}

impl RawCell {
    pub fn geo_dim(&self) -> isize {
        self.flat.dim() as isize - 1
    }
}

/// Which of `-`, `0`, `+` a cell may take on each hyperplane.
pub type Allowed = [bool; 3];
pub const ANY: Allowed = [true, true, true];
pub const NONNEG: Allowed = [false, true, true];

fn slot(s: i8) -> usize {
    (s + 1) as usize
}

/// Feasibility rows for "x realises `sign` on `fs`" in the chart of `geom`.
pub fn sign_system(
    geom: &Geometry,
    fs: &[Vec<Rational>],
    sign: &[i8],
) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let mut strict = Vec::new();
    let mut eq = geom.domain_equalities();
    for (f, &s) in fs.iter().zip(sign) {
        let mut row = vec![Rational::zero()];
        match s {
            1 => {
                row.extend(f.iter().cloned());
                strict.push(row);
            }
            -1 => {
                row.extend(f.iter().map(|x| -x));
                strict.push(row);
            }
            _ => {
                row.extend(f.iter().cloned());
                eq.push(row);
            }
        }
    }
    (strict, Vec::new(), eq)
}

/// A point realising `sign`, if one exists (chart-level for H).
pub fn realise(geom: &Geometry, fs: &[Vec<Rational>], sign: &[i8], flat: &LinearSubspace) -> Option<Vec<Rational>> {
    let (strict, nonstrict, eq) = sign_system(geom, fs, sign);
    if geom.kind == Kind::S && strict.is_empty() {
        // Only equalities: the set is S(flat), nonempty iff flat != 0.
        return flat.basis().first().cloned();
    }
    feasible(&strict, &nonstrict, &eq, geom.ambient())
}

/// All cells of the decomposition (for H these are chart cells, not yet
/// intersected with the ball).
pub fn decompose(geom: &Geometry, fs: &[Vec<Rational>], allowed: &[Allowed]) -> Vec<RawCell> {
    assert_eq!(fs.len(), allowed.len());
    let d = geom.ambient();
    let root_witness = {
        let mut w = vec![Rational::zero(); d];
        w[0] = Rational::one();
        w
    };
    let mut cells = vec![RawCell { sign: Vec::new(), witness: root_witness, flat: LinearSubspace::full(d) }];
    for (k, f) in fs.iter().enumerate() {
        let prev = &fs[..k];
        let mut next = Vec::with_capacity(cells.len() * 2);
        for c in cells {
            let fann = LinearSubspace::kernel_of(&[f.clone()], d);
            if fann.contains(&c.flat) {
                if allowed[k][slot(0)] {
                    let mut s = c.sign.clone();
                    s.push(0);
                    next.push(RawCell { sign: s, witness: c.witness, flat: c.flat });
                }
                continue;
            }
            let wsign = sign(&dot(f, &c.witness));
            for s in [1i8, 0, -1] {
                if !allowed[k][slot(s)] {
                    continue;
                }
                let mut sv = c.sign.clone();
                sv.push(s);
                let flat = if s == 0 { c.flat.intersect(&fann) } else { c.flat.clone() };
                let witness = if s == wsign {
                    Some(c.witness.clone())
                } else {
                    let mut all = prev.to_vec();
                    all.push(f.clone());
                    realise(geom, &all, &sv, &flat)
                };
                if let Some(w) = witness {
                    next.push(RawCell { sign: sv, witness: w, flat });
                }
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| a.geo_dim().cmp(&b.geo_dim()).then_with(|| a.sign.cmp(&b.sign)));
    cells
}

/// `a` lies in the closure of `b`.
pub fn sign_le(a: &[i8], b: &[i8]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || x == y)
}

/// Smallest squared chart norm over the closure of cell `idx`, using the
/// cells of the same decomposition as the faces of that closure.
pub fn closure_min_norm2(fs: &[Vec<Rational>], cells: &[RawCell], idx: usize) -> (Rational, Vec<Rational>) {
    let target = &cells[idx];
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for face in cells.iter().filter(|c| sign_le(&c.sign, &target.sign)) {
        let Some(p) = min_norm_point(fs, face) else { continue };
        let n2 = Geometry::chart_norm2(&p);
        if best.as_ref().map_or(true, |(b, _)| n2 < *b) {
            best = Some((n2, p));
        }
    }
    best.expect("a cell lies in its own closure")
}

/// Orthogonal projection of the chart origin onto the affine span of a chart
/// cell, if it lands inside the cell.
fn min_norm_point(fs: &[Vec<Rational>], cell: &RawCell) -> Option<Vec<Rational>> {
    // affine span in chart coords y: rows a.y = -a0 for zero-sign functionals
    let zero_rows: Vec<Vec<Rational>> = fs.iter().zip(&cell.sign).filter(|(_, &s)| s == 0).map(|(f, _)| f.clone()).collect();
    let n = fs.first().map_or(cell.witness.len() - 1, |f| f.len() - 1);
    let p_chart: Vec<Rational> = if zero_rows.is_empty() {
        vec![Rational::zero(); n]
    } else {
        let a: Vec<Vec<Rational>> = zero_rows.iter().map(|f| f[1..].to_vec()).collect();
        let b: Vec<Rational> = zero_rows.iter().map(|f| -f[0].clone()).collect();
        // keep an independent subset of rows
        let m = RatMatrix::from_rows(&a, n);
        let mt = m.transpose();
        let (_, piv) = mt.rref();
        let a_ind: Vec<Vec<Rational>> = piv.iter().map(|&i| a[i].clone()).collect();
        let b_ind: Vec<Rational> = piv.iter().map(|&i| b[i].clone()).collect();
        let ai = RatMatrix::from_rows(&a_ind, n);
        let gram = ai.mul(&ai.transpose()).ok()?;
        let lam = gram.solve(&b_ind)?;
        ai.transpose().mul_vec(&lam)
    };
    let mut p = vec![q(1)];
    p.extend(p_chart);
    let ok = fs.iter().zip(&cell.sign).all(|(f, &s)| sign(&dot(f, &p)) == s);
    ok.then_some(p)
}

/// Point of the chart cell `idx` strictly inside the unit ball, if any.
pub fn ball_witness(fs: &[Vec<Rational>], cells: &[RawCell], idx: usize) -> Option<Vec<Rational>> {
    let c = &cells[idx];
    let one = q(1);
    if Geometry::chart_norm2(&c.witness) < one {
        return Some(c.witness.clone());
    }
    let (n2, p) = closure_min_norm2(fs, cells, idx);
    if n2 >= one {
        return None;
    }
    let mut t = Rational::new(1.into(), 2.into());
    loop {
        let x: Vec<Rational> = p.iter().zip(&c.witness).map(|(a, b)| a + &t * (b - a)).collect();
        if Geometry::chart_norm2(&x) < one {
            return Some(x);
        }
        t /= Rational::from_integer(2.into());
    }
}

/// Euclidean boundedness of the closure of a chart cell: its recession cone
/// is `{0}`.
pub fn chart_bounded(geom: &Geometry, fs: &[Vec<Rational>], cell: &RawCell) -> bool {
    let d = geom.ambient();
    let mut nonstrict = Vec::new();
    let mut eq = Vec::new();
    let mut x0 = vec![Rational::zero(); d + 1];
    x0[1] = Rational::one();
    eq.push(x0);
    for (f, &s) in fs.iter().zip(&cell.sign) {
        let mut row = vec![Rational::zero()];
        match s {
            0 => {
                row.extend(f.iter().cloned());
                eq.push(row);
            }
            _ => {
                row.extend(f.iter().map(|x| x * Rational::from_integer(s.into())));
                nonstrict.push(row);
            }
        }
    }
    for j in 1..d {
        for dir in [1i64, -1] {
            let mut r = vec![Rational::zero(); d + 1];
            r[j + 1] = Rational::from_integer(dir.into());
            if feasible(&[r], &nonstrict, &eq, d).is_some() {
                return false;
            }
        }
    }
    true
}

/// Boundedness of a cell in its geometry. For H the closure must be
/// chart-bounded and every chart vertex of it must lie inside the ball.
pub fn cell_bounded(geom: &Geometry, fs: &[Vec<Rational>], cells: &[RawCell], idx: usize) -> bool {
    match geom.kind {
        Kind::S => true,
        Kind::E => chart_bounded(geom, fs, &cells[idx]),
        Kind::H => {
            if !chart_bounded(geom, fs, &cells[idx]) {
                return false;
            }
            let one = q(1);
            cells
                .iter()
                .filter(|c| c.geo_dim() == 0 && sign_le(&c.sign, &cells[idx].sign))
                .all(|v| Geometry::chart_norm2(&v.witness) < one)
        }
    }
}

pub fn is_positive_witness(x: &Rational) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qvec;

    #[test]
    fn three_lines_in_general_position() {
        let g = Geometry::new(Kind::E, 2);
        // x = 0, y = 0, x + y = 1
        let fs = vec![qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[-1, 1, 1])];
        let cells = decompose(&g, &fs, &[ANY; 3]);
        let count = |d: isize| cells.iter().filter(|c| c.geo_dim() == d).count();
        assert_eq!((count(0), count(1), count(2)), (3, 9, 7));
        let bounded: Vec<_> = (0..cells.len()).filter(|&i| cells[i].geo_dim() == 2 && cell_bounded(&g, &fs, &cells, i)).collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!(cells[bounded[0]].sign, vec![1, 1, -1]);
    }

    #[test]
    fn coordinate_planes_on_the_sphere() {
        let g = Geometry::new(Kind::S, 2);
        let fs = vec![qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[0, 0, 1])];
        let cells = decompose(&g, &fs, &[ANY; 3]);
        let count = |d: isize| cells.iter().filter(|c| c.geo_dim() == d).count();
        assert_eq!((count(0), count(1), count(2)), (6, 12, 8));
    }

    #[test]
    fn hyperbolic_cells_need_the_ball() {
        // two vertical chords x = -1/2, x = 1/2 and a horizontal chord y = 0
        let fs = vec![vec![qf(1, 2), q(1), q(0)], vec![qf(-1, 2), q(1), q(0)], qvec(&[0, 0, 1])];
        let g = Geometry::new(Kind::H, 2);
        let cells = decompose(&g, &fs, &[ANY; 3]);
        let in_ball: Vec<_> = (0..cells.len()).filter(|&i| ball_witness(&fs, &cells, i).is_some()).collect();
        let dims: Vec<isize> = in_ball.iter().map(|&i| cells[i].geo_dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 2);
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 6);
        // no region is bounded in H^2: every one reaches the circle at infinity
        assert!(in_ball.iter().filter(|&&i| cells[i].geo_dim() == 2).all(|&i| !cell_bounded(&g, &fs, &cells, i)));
    }

    use crate::exact::qf;
}
