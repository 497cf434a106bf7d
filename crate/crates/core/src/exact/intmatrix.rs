use num_bigint::BigInt;
use serde::Serialize;

/// Sparse integer matrix stored by columns. Used for every boundary operator
/// and chain-level map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

#[derive(Serialize)]
struct Triplets {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Add `v` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v == 0 {
            return;
        }
        let col = &mut self.columns[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => {
                col[k].1 += v;
                if col[k].1 == 0 {
                    col.remove(k);
                }
            }
            Err(k) => col.insert(k, (i, v)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let col = &self.columns[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => col[k].1,
            Err(_) => 0,
        }
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.add(i, j, v);
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                d[i][j] = v;
            }
        }
        d
    }

    pub fn to_big_dense(&self) -> Vec<Vec<BigInt>> {
        self.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
            for &(k, b) in &other.columns[j] {
                for &(i, a) in &self.columns[k] {
                    *acc.entry(i).or_insert(0) += a * b;
                }
            }
            out.columns[j] = acc.into_iter().filter(|e| e.1 != 0).collect();
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rows];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, a) in &self.columns[j] {
                out[i] += a * x;
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: cols.len(), columns: cols.iter().map(|&j| self.columns[j].clone()).collect() }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                t.columns[i].push((j, v));
            }
        }
        t
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, columns }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<i64>>) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.add(i, j, v);
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::with_capacity(self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                entries.push((i, j, v));
            }
        }
        entries.sort();
        serde_json::to_value(Triplets { rows: self.rows, cols: self.cols, entries }).expect("serializable")
    }
}
