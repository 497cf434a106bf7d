//! Smith normal form over Z.
//!
//! Two routes. `smith_normal_form` only needs invariant factors: it runs a
//! sparse elimination on unit pivots and hands the leftover block to the dense
//! routine. `smith_normal_form_with_certificates` is dense and also returns
//! unimodular `L`, `R` with `L * M * R = diag`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::intmatrix::IntMatrix;
use super::zint::{big_to_i128, Zint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero invariant factors, each dividing the next.
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
    pub fn all_units(&self) -> bool {
        self.factors.iter().all(|f| f.is_one())
    }
}

/// Dense SNF certificate: `l * m * r` equals the rectangular diagonal `diag`.
#[derive(Clone, Debug)]
pub struct SnfCertificate {
    pub l: Vec<Vec<BigInt>>,
    pub r: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

fn identity<T: Zint>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| T::from_i64((i == j) as i64)).collect()).collect()
}

struct Dense<T> {
    a: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    track: bool,
}

impl<T: Zint> Dense<T> {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        if self.track {
            self.u.swap(i, k);
        }
    }
    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(j, k);
            }
        }
    }
    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        let (ri, rt) = pick2(&mut self.a, i, t);
        for (x, y) in ri.iter_mut().zip(rt.iter()) {
            if !y.is_zero() {
                *x = x.sub(&q.mul(y)?)?;
            }
        }
        if self.track {
            let (ui, ut) = pick2(&mut self.u, i, t);
            for (x, y) in ui.iter_mut().zip(ut.iter()) {
                if !y.is_zero() {
                    *x = x.sub(&q.mul(y)?)?;
                }
            }
        }
        Some(())
    }
    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                row[j] = row[j].sub(&q.mul(&row[t])?)?;
            }
        }
        if self.track {
            for row in self.v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].sub(&q.mul(&row[t])?)?;
                }
            }
        }
        Some(())
    }
    fn negate_row(&mut self, t: usize) -> Option<()> {
        for x in self.a[t].iter_mut() {
            *x = x.neg()?;
        }
        if self.track {
            for x in self.u[t].iter_mut() {
                *x = x.neg()?;
            }
        }
        Some(())
    }
}

fn pick2<T>(v: &mut [Vec<T>], i: usize, t: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(i, t);
    if i < t {
        let (lo, hi) = v.split_at_mut(t);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(i);
        (&mut hi[0], &lo[t])
    }
}

/// Returns `None` on fixed-width overflow.
fn dense_snf<T: Zint>(a: Vec<Vec<T>>, rows: usize, cols: usize, track: bool) -> Option<Dense<T>> {
    let mut d = Dense {
        a,
        u: if track { identity(rows) } else { Vec::new() },
        v: if track { identity(cols) } else { Vec::new() },
        track,
    };
    let mut t = 0;
    while t < rows && t < cols {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let x = &d.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.abs_lt(&d.a[bi][bj])) {
                    best = Some((i, j));
                    if x.is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if d.a[i][t].is_zero() {
                    continue;
                }
                let q = d.a[i][t].quot(&d.a[t][t])?;
                d.row_axpy(i, t, &q)?;
                if !d.a[i][t].is_zero() {
                    d.swap_rows(t, i);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            for j in t + 1..cols {
                if d.a[t][j].is_zero() {
                    continue;
                }
                let q = d.a[t][j].quot(&d.a[t][t])?;
                d.col_axpy(j, t, &q)?;
                if !d.a[t][j].is_zero() {
                    d.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            let piv = d.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.a[i][j].rem_is_zero(&piv)));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    let m1 = T::from_i64(-1);
                    let (rt, ri) = pick2(&mut d.a, t, i);
                    for (x, y) in rt.iter_mut().zip(ri.iter()) {
                        *x = x.sub(&m1.mul(y)?)?;
                    }
                    if d.track {
                        let (ut, ui) = pick2(&mut d.u, t, i);
                        for (x, y) in ut.iter_mut().zip(ui.iter()) {
                            *x = x.sub(&m1.mul(y)?)?;
                        }
                    }
                }
                None => break,
            }
        }
        if d.a[t][t].is_negative() {
            d.negate_row(t)?;
        }
        t += 1;
    }
    Some(d)
}

fn diag_of<T: Zint>(d: &Dense<T>, rows: usize, cols: usize) -> Vec<BigInt> {
    (0..rows.min(cols)).map(|i| d.a[i][i].to_big()).take_while(|x| !num_traits::Zero::is_zero(x)).collect()
}

fn dense_factors(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<BigInt> {
    if let Some(small) = to_i128(a) {
        if let Some(d) = dense_snf::<i128>(small, rows, cols, false) {
            return diag_of(&d, rows, cols);
        }
    }
    let d = dense_snf::<BigInt>(a.to_vec(), rows, cols, false).expect("bigint never overflows");
    diag_of(&d, rows, cols)
}

fn to_i128(a: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    a.iter().map(|r| r.iter().map(big_to_i128).collect::<Option<Vec<_>>>()).collect()
}

pub fn smith_normal_form_with_certificates(a: &[Vec<BigInt>], rows: usize, cols: usize) -> SnfCertificate {
    let conv = |m: Vec<Vec<i128>>| -> Vec<Vec<BigInt>> {
        m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    };
    if let Some(small) = to_i128(a) {
        if let Some(d) = dense_snf::<i128>(small, rows, cols, true) {
            let diag = diag_of(&d, rows, cols);
            return SnfCertificate { l: conv(d.u), r: conv(d.v), diag, rows, cols };
        }
    }
    let d = dense_snf::<BigInt>(a.to_vec(), rows, cols, true).expect("bigint never overflows");
    let diag = diag_of(&d, rows, cols);
    SnfCertificate { l: d.u, r: d.v, diag, rows, cols }
}

/// Invariant factors of a sparse matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    match sparse_unit_phase(m) {
        Some((units, rest, r, c)) => {
            let mut factors = vec![BigInt::one(); units];
            if r > 0 && c > 0 {
                let tail = dense_factors(&rest, r, c);
                factors.extend(tail);
            }
            SnfResult { factors }
        }
        None => SnfResult { factors: dense_factors(&m.to_big_dense(), m.rows, m.cols) },
    }
}

/// Eliminate unit pivots sparsely. Returns the number of unit pivots and the
/// compressed leftover block, or `None` if an entry overflowed `i64`.
#[allow(clippy::type_complexity)]
fn sparse_unit_phase(m: &IntMatrix) -> Option<(usize, Vec<Vec<BigInt>>, usize, usize)> {
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m.rows];
    for j in 0..m.cols {
        for &(i, v) in m.column(j) {
            rows[i].push((j, v));
        }
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j].insert(i);
        }
    }
    let mut alive = vec![true; m.rows];
    let mut units = 0usize;
    loop {
        // Markowitz-style choice among unit entries
        let mut best: Option<(usize, usize, i64, usize)> = None;
        'scan: for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for &(j, v) in r {
                if v == 1 || v == -1 {
                    let cost = (r.len() - 1) * (col_rows[j].len() - 1);
                    if best.map_or(true, |b| cost < b.3) {
                        best = Some((i, j, v, cost));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((pr, pc, pv, _)) = best else { break };
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&i| i != pr).collect();
        let prow = rows[pr].clone();
        for i in others {
            let a = rows[i].iter().find(|e| e.0 == pc).map(|e| e.1).unwrap_or(0);
            let f = a.checked_mul(pv)?;
            let merged = merge_axpy(&rows[i], &prow, f)?;
            for &(j, _) in &rows[i] {
                col_rows[j].remove(&i);
            }
            for &(j, _) in &merged {
                col_rows[j].insert(i);
            }
            rows[i] = merged;
        }
        for &(j, _) in &prow {
            col_rows[j].remove(&pr);
        }
        rows[pr].clear();
        alive[pr] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| alive[i] && !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !col_rows[j].is_empty()).collect();
    let cpos: std::collections::HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut rest = vec![vec![BigInt::from(0); live_cols.len()]; live_rows.len()];
    for (k, &i) in live_rows.iter().enumerate() {
        for &(j, v) in &rows[i] {
            rest[k][cpos[&j]] = BigInt::from(v);
        }
    }
    Some((units, rest, live_rows.len(), live_cols.len()))
}

/// `a - f * b` for sorted sparse rows.
fn merge_axpy(a: &[(usize, i64)], b: &[(usize, i64)], f: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let ja = a.get(x).map(|e| e.0).unwrap_or(usize::MAX);
        let jb = b.get(y).map(|e| e.0).unwrap_or(usize::MAX);
        if ja < jb {
            out.push(a[x]);
            x += 1;
        } else if jb < ja {
            let v = b[y].1.checked_mul(f)?.checked_neg()?;
            out.push((jb, v));
            y += 1;
        } else {
            let v = a[x].1.checked_sub(b[y].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((ja, v));
            }
            x += 1;
            y += 1;
        }
    }
    Some(out)
}

/// Multiply dense integer matrices.
pub fn dense_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::from(0);
                    for k in 0..inner {
                        if !num_traits::Zero::is_zero(&row[k]) {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Determinant of a square integer matrix, computed over Q.
pub fn int_det(a: &[Vec<BigInt>]) -> BigInt {
    use crate::exact::ratmatrix::RatMatrix;
    use crate::exact::rational::Rational;
    let n = a.len();
    let rows: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let d = RatMatrix::from_rows(&rows, n).determinant().expect("square");
    d.to_integer()
}

pub fn is_unimodular(a: &[Vec<BigInt>]) -> bool {
    !a.is_empty() && a.len() == a[0].len() && int_det(a).abs().is_one() || a.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn textbook_example() {
        // diag(2, 6, 12) up to unimodular change of basis
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&IntMatrix::from_dense(&m));
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn certificate_reproduces_diagonal() {
        let m = big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![1, 0, 3]]);
        let c = smith_normal_form_with_certificates(&m, 4, 3);
        let lm = dense_mul(&c.l, &m, 4, 3);
        let lmr = dense_mul(&lm, &c.r, 3, 3);
        for i in 0..4 {
            for j in 0..3 {
                let want = if i == j && i < c.diag.len() { c.diag[i].clone() } else { BigInt::from(0) };
                assert_eq!(lmr[i][j], want);
            }
        }
        assert!(is_unimodular(&c.l) && is_unimodular(&c.r));
    }

    #[test]
    fn torsion_of_projective_plane_boundary() {
        // boundary d2 of a Delta-complex RP^2: one 2-cell attached by aa
        let s = smith_normal_form(&IntMatrix::from_dense(&[vec![2]]));
        assert_eq!(s.torsion(), vec![BigInt::from(2)]);
    }
}
