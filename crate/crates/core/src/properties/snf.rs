use itertools::Itertools;
use serde_json::Value;

use super::is_edr;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// A dense `rows × cols` matrix of ring elements, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix::new(rows, cols, vec![Elem::ZERO; rows * cols])
    }

    pub fn identity(r: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, r.one());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, r: &Ring, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = r.sum((0..self.cols).map(|k| r.mul(self.get(i, k), other.get(k, j))));
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == Elem::ZERO))
    }

    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self, r: &Ring) -> Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(r, &idx, &idx)
    }

    fn minor(&self, r: &Ring, rows: &[usize], cols: &[usize]) -> Elem {
        match rows.len() {
            0 => r.one(),
            1 => self.get(rows[0], cols[0]),
            2 => r.sub(
                r.mul(self.get(rows[0], cols[0]), self.get(rows[1], cols[1])),
                r.mul(self.get(rows[0], cols[1]), self.get(rows[1], cols[0])),
            ),
            _ => {
                let mut acc = Elem::ZERO;
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a == Elem::ZERO {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = r.mul(a, self.minor(r, &rows[1..], &rest));
                    acc = if k % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
                }
                acc
            }
        }
    }

    /// All `k × k` minors.
    pub fn minors(&self, r: &Ring, k: usize) -> Vec<Elem> {
        let mut out = vec![];
        for rows in (0..self.rows).combinations(k) {
            for cols in (0..self.cols).combinations(k) {
                out.push(self.minor(r, &rows, &cols));
            }
        }
        out
    }

    /// A JSON array of rows of element literals.
    pub fn from_json(r: &Ring, v: &Value) -> Result<Matrix> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let cols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row
                .as_array()
                .filter(|x| x.len() == cols)
                .ok_or_else(|| Error::Parse("matrix rows must have equal length".into()))?;
            data.extend(r.parse_all(row)?);
        }
        Ok(Matrix::new(rows.len(), cols, data))
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array((0..self.cols).map(|j| r.literal(self.get(i, j))).collect()))
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst −= c·row_src`.
    fn row_axpy(&mut self, r: &Ring, dst: usize, c: Elem, src: usize) {
        for j in 0..self.cols {
            let v = r.sub(self.get(dst, j), r.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    fn col_axpy(&mut self, r: &Ring, dst: usize, c: Elem, src: usize) {
        for i in 0..self.rows {
            let v = r.sub(self.get(i, dst), r.mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }
}

/// `P·A·Q = D` with `P`, `Q` invertible and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub p: Matrix,
    pub d: Matrix,
    pub q: Matrix,
}

/// Per-factor tables for pivoting in a local ring `T = R·e`.
struct LocalTables {
    ring: Ring,
    /// Size of `T·a`; in a chain ring, larger means smaller valuation.
    ideal_size: Vec<u32>,
    /// `quot[p·|T| + x]`: least `y` with `p·y = x`, or `u32::MAX`.
    quot: Vec<u32>,
    /// Image of each element of R in T.
    proj: Vec<Elem>,
}

impl LocalTables {
    fn new(r: &Ring, idempotent: Elem, t: &Ring) -> LocalTables {
        let n = t.size();
        let pi = t.principal_ideals();
        let ideal_size = t.elements().map(|a| pi.ideals[pi.pid[a.idx()] as usize].len() as u32).collect();
        let mut quot = vec![u32::MAX; n * n];
        for p in t.elements() {
            for y in (0..n as u32).rev().map(Elem) {
                quot[p.idx() * n + t.mul(p, y).idx()] = y.0;
            }
        }
        let proj = r
            .elements()
            .map(|a| t.corner_index(r.mul(a, idempotent)).expect("corner element"))
            .collect();
        LocalTables {
            ring: t.clone(),
            ideal_size,
            quot,
            proj,
        }
    }

    /// Diagonalizes over `T`; fails when a pivot does not divide the rest.
    fn diagonalize(&self, a: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
        let t = &self.ring;
        let n = t.size();
        let mut m = a.clone();
        let mut p = Matrix::identity(t, a.rows);
        let mut q = Matrix::identity(t, a.cols);
        for s in 0..a.rows.min(a.cols) {
            let mut best: Option<(usize, usize)> = None;
            for i in s..a.rows {
                for j in s..a.cols {
                    let v = self.ideal_size[m.get(i, j).idx()];
                    if best.is_none_or(|(bi, bj)| v > self.ideal_size[m.get(bi, bj).idx()]) {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = best.expect("nonempty submatrix");
            let piv = m.get(bi, bj);
            if piv == Elem::ZERO {
                break;
            }
            let divides = (s..a.rows).all(|i| (s..a.cols).all(|j| self.quot[piv.idx() * n + m.get(i, j).idx()] != u32::MAX));
            if !divides {
                return Err(Error::NotEdr);
            }
            m.swap_rows(s, bi);
            p.swap_rows(s, bi);
            m.swap_cols(s, bj);
            q.swap_cols(s, bj);
            for i in s + 1..a.rows {
                let c = Elem(self.quot[piv.idx() * n + m.get(i, s).idx()]);
                if c != Elem::ZERO {
                    m.row_axpy(t, i, c, s);
                    p.row_axpy(t, i, c, s);
                }
            }
            for j in s + 1..a.cols {
                let c = Elem(self.quot[piv.idx() * n + m.get(s, j).idx()]);
                if c != Elem::ZERO {
                    m.col_axpy(t, j, c, s);
                    q.col_axpy(t, j, c, s);
                }
            }
        }
        Ok((p, m, q))
    }
}

/// Precomputed data for repeated Smith normal forms over one ring.
pub struct SnfEngine {
    ring: Ring,
    factors: Vec<LocalTables>,
    /// Least unit `u` with `u·d` the least generator of `R·d`.
    normalizer: Vec<Elem>,
    pid: Vec<u32>,
    /// Principal ideal generated by two principal ideals, when principal.
    join: Vec<u32>,
    k: usize,
}

impl SnfEngine {
    pub fn new(r: &Ring) -> Result<SnfEngine> {
        let factors = r
            .local_factors()
            .iter()
            .map(|f| LocalTables::new(r, f.idempotent, &f.ring))
            .collect();
        let pi = r.principal_ideals();
        let units = r.units();
        let normalizer = r
            .elements()
            .map(|d| {
                let target = pi.least_gen[pi.pid[d.idx()] as usize];
                *units.iter().find(|&&u| r.mul(u, d) == target).expect("associates differ by a unit")
            })
            .collect();
        let k = pi.ideals.len();
        let index: std::collections::HashMap<_, u32> =
            pi.ideals.iter().enumerate().map(|(i, p)| (p.members().clone(), i as u32)).collect();
        let join = (0..k * k)
            .map(|t| {
                let s = r.ideal_sum(&pi.ideals[t / k], &pi.ideals[t % k]);
                index.get(s.members()).copied().unwrap_or(u32::MAX)
            })
            .collect();
        Ok(SnfEngine {
            ring: r.clone(),
            factors,
            normalizer,
            pid: pi.pid.clone(),
            join,
            k,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Splits over local factors, pivots in each, recombines, canonicalizes
    /// the diagonal, and verifies `P·A·Q = D` and invertibility.
    pub fn diagonalize(&self, a: &Matrix) -> Result<Snf> {
        let r = &self.ring;
        let mut p = Matrix::zeros(a.rows, a.rows);
        let mut d = Matrix::zeros(a.rows, a.cols);
        let mut q = Matrix::zeros(a.cols, a.cols);
        for f in &self.factors {
            let local = Matrix::new(a.rows, a.cols, a.data.iter().map(|x| f.proj[x.idx()]).collect());
            let (pf, df, qf) = f.diagonalize(&local)?;
            for (dst, src) in [(&mut p, &pf), (&mut d, &df), (&mut q, &qf)] {
                for (x, y) in dst.data.iter_mut().zip(&src.data) {
                    *x = r.add(*x, f.ring.lift(*y));
                }
            }
        }
        for i in 0..a.rows.min(a.cols) {
            let u = self.normalizer[d.get(i, i).idx()];
            if u != r.one() {
                for j in 0..a.rows {
                    p.set(i, j, r.mul(u, p.get(i, j)));
                }
                d.set(i, i, r.mul(u, d.get(i, i)));
            }
        }
        let snf = Snf { p, d, q };
        self.verify(a, &snf)?;
        Ok(snf)
    }

    fn verify(&self, a: &Matrix, s: &Snf) -> Result<()> {
        let r = &self.ring;
        if s.p.mul(r, a).mul(r, &s.q) != s.d {
            return Err(Error::InvariantViolated("P·A·Q differs from D".into()));
        }
        if !s.d.is_diagonal() {
            return Err(Error::InvariantViolated("D is not diagonal".into()));
        }
        if !r.is_unit(s.p.det(r)) || !r.is_unit(s.q.det(r)) {
            return Err(Error::InvariantViolated("transform is not invertible".into()));
        }
        let diag = s.d.diagonal();
        let pi = r.principal_ideals();
        for w in diag.windows(2) {
            if !pi.ideals[self.pid[w[0].idx()] as usize].contains(w[1]) {
                return Err(Error::InvariantViolated("divisibility chain broken".into()));
            }
        }
        if diag.iter().any(|&x| pi.least_gen[self.pid[x.idx()] as usize] != x) {
            return Err(Error::InvariantViolated("diagonal entry not canonical".into()));
        }
        Ok(())
    }

    fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Option<u32> {
        xs.into_iter().try_fold(self.pid[0], |acc, x| {
            let j = self.join[acc as usize * self.k + self.pid[x.idx()] as usize];
            (j != u32::MAX).then_some(j)
        })
    }

    /// Independent oracle: the ideal of `k × k` minors of A equals `(d₁⋯d_k)`
    /// for every k.
    pub fn fitting_agrees(&self, a: &Matrix, d: &[Elem]) -> bool {
        let r = &self.ring;
        let mut prod = r.one();
        for (k, &dk) in d.iter().enumerate() {
            prod = r.mul(prod, dk);
            match self.join_all(a.minors(r, k + 1)) {
                Some(id) if id == self.pid[prod.idx()] => {}
                _ => return false,
            }
        }
        true
    }
}

/// The ideals generated by the `k × k` minors, `k = 1..=min(rows, cols)`.
pub fn fitting_ideals(r: &Ring, a: &Matrix) -> Vec<crate::ring::Ideal> {
    (1..=a.rows.min(a.cols)).map(|k| r.ideal(&a.minors(r, k))).collect()
}

/// Smith normal form over an elementary divisor ring.
pub fn snf(r: &Ring, a: &Matrix) -> Result<Snf> {
    if !is_edr(r)? {
        return Err(Error::NotEdr);
    }
    snf_unchecked(r, a)
}

/// As [`snf`] without the EDR precheck; fails with `NotEdr` when pivoting stalls.
pub fn snf_unchecked(r: &Ring, a: &Matrix) -> Result<Snf> {
    SnfEngine::new(r)?.diagonalize(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn m(r: &Ring, v: Value) -> Matrix {
        Matrix::from_json(r, &v).unwrap()
    }

    #[test]
    fn examples_over_zmod6() {
        let r = Ring::zmod(6).unwrap();
        let a = m(&r, json!([[2, 0], [0, 3]]));
        let s = snf(&r, &a).unwrap();
        assert_eq!(s.d.diagonal(), vec![Elem(1), Elem(0)]);
        let b = m(&r, json!([[2, 3], [4, 1]]));
        let s = snf(&r, &b).unwrap();
        assert_eq!(s.d.diagonal(), vec![Elem(1), Elem(2)]);
        let e = SnfEngine::new(&r).unwrap();
        assert!(e.fitting_agrees(&b, &s.d.diagonal()));
        let fit = fitting_ideals(&r, &b);
        assert!(fit[0].is_whole() && fit[1] == r.principal(Elem(2)));
    }

    #[test]
    fn identity_is_fixed() {
        let r = Ring::zmod(4).unwrap();
        let i = Matrix::identity(&r, 3);
        let s = snf(&r, &i).unwrap();
        assert_eq!(s, Snf { p: i.clone(), d: i.clone(), q: i });
    }

    #[test]
    fn rectangular_and_rejection() {
        let r = Ring::zmod(8).unwrap();
        let a = m(&r, json!([[4, 6, 2]]));
        assert_eq!(snf(&r, &a).unwrap().d.diagonal(), vec![Elem(2)]);
        let k = Ring::nilpotent(2, &["x", "y"], 2, vec![]).unwrap();
        let xy = m(&k, json!([[[0, 1, 0], [0, 0, 1]]]));
        assert_eq!(snf(&k, &xy), Err(Error::NotEdr));
        assert_eq!(snf_unchecked(&k, &xy), Err(Error::NotEdr));
    }

    #[test]
    fn determinant() {
        let r = Ring::zmod(7).unwrap();
        let a = m(&r, json!([[1, 2, 3], [0, 1, 4], [5, 6, 0]]));
        assert_eq!(a.det(&r), Elem(1));
    }
}
