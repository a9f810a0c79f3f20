//! Cohomological dimension vectors: an `m × n` integer matrix whose row `i`
//! is the dimension vector of `H^{-i}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVec {
    rows: Vec<Vec<i64>>,
}

impl DimVec {
    pub fn zero(m: usize, n: usize) -> Self {
        DimVec { rows: vec![vec![0; n]; m] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n), "ragged dimension vector");
        DimVec { rows }
    }

    /// A single nonzero row holding the indicator of `a..=b`.
    pub fn stalk(m: usize, n: usize, row: usize, a: usize, b: usize) -> Self {
        let mut d = DimVec::zero(m, n);
        for v in a..=b {
            d.rows[row][v] = 1;
        }
        d
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, v: usize) -> i64 {
        self.rows[i][v]
    }

    pub fn set(&mut self, i: usize, v: usize, x: i64) {
        self.rows[i][v] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x >= 0))
    }

    pub fn add(&self, o: &DimVec) -> DimVec {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &DimVec) -> DimVec {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &DimVec, f: impl Fn(i64, i64) -> i64) -> DimVec {
        assert_eq!((self.m(), self.n()), (o.m(), o.n()), "dimension vector shapes differ");
        DimVec {
            rows: self
                .rows
                .iter()
                .zip(&o.rows)
                .map(|(r, s)| r.iter().zip(s).map(|(&a, &b)| f(a, b)).collect())
                .collect(),
        }
    }

    /// Indices of nonzero rows.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.rows[i].iter().any(|&x| x != 0)).collect()
    }

    /// Columns carrying a nonzero entry in some row.
    pub fn support_columns(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.rows.iter().any(|r| r[v] != 0)).collect()
    }

    /// If exactly one row is nonzero and it is the indicator of an interval,
    /// returns `(row, a, b)`.
    pub fn as_interval_stalk(&self) -> Option<(usize, usize, usize)> {
        let nz = self.nonzero_rows();
        if nz.len() != 1 {
            return None;
        }
        let r = &self.rows[nz[0]];
        let cols: Vec<usize> = (0..r.len()).filter(|&v| r[v] != 0).collect();
        let (a, b) = (cols[0], *cols.last().unwrap());
        (cols.len() == b - a + 1 && cols.iter().all(|&v| r[v] == 1)).then_some((nz[0], a, b))
    }

    /// Reverse both rows (`i ↦ m-1-i`) and columns (`v ↦ n-1-v`). This is the
    /// effect of the duality `X ↦ D(X)[m-1]`.
    pub fn dualized(&self) -> DimVec {
        let rows = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        DimVec { rows }
    }

    /// Shift columns right by `k`, dropping anything pushed past the edge.
    pub fn shift_columns(&self, k: isize) -> Option<DimVec> {
        let n = self.n() as isize;
        let mut out = DimVec::zero(self.m(), self.n());
        for (i, r) in self.rows.iter().enumerate() {
            for (v, &x) in r.iter().enumerate() {
                if x != 0 {
                    let w = v as isize + k;
                    if w < 0 || w >= n {
                        return None;
                    }
                    out.rows[i][w as usize] = x;
                }
            }
        }
        Some(out)
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(Error::KnitInvariant(format!("negative entry in {self}")))
        }
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(","))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stalk_detection_and_display() {
        let d = DimVec::stalk(3, 9, 1, 3, 3);
        assert_eq!(d.as_interval_stalk(), Some((1, 3, 3)));
        assert_eq!(d.nonzero_rows(), vec![1]);
        let mut e = d.clone();
        e.set(0, 0, 1);
        assert_eq!(e.as_interval_stalk(), None);
        assert_eq!(DimVec::stalk(2, 3, 0, 1, 2).to_string(), "(0,1,1 | 0,0,0)");
    }

    #[test]
    fn dual_and_shift() {
        let d = DimVec::stalk(2, 4, 0, 0, 1);
        assert_eq!(d.dualized(), DimVec::stalk(2, 4, 1, 2, 3));
        assert_eq!(d.shift_columns(2), Some(DimVec::stalk(2, 4, 0, 2, 3)));
        assert_eq!(d.shift_columns(3), None);
    }
}
