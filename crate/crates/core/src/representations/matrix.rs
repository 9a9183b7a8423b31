use std::fmt;

use super::param::{ParamRing, ParamScalar, Var};

/// Dense matrix over [`ParamScalar`]. Arithmetic is reduced in the supplied ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<ParamScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![ParamScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat::scalar(n, ParamScalar::one())
    }

    pub fn scalar(n: usize, s: ParamScalar) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(entries: &[ParamScalar]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, s) in entries.iter().enumerate() {
            m.set(i, i, s.clone());
        }
        m
    }

    /// Square matrix from `(row, col, value)` triples; everything else is zero.
    pub fn sparse(n: usize, entries: Vec<(usize, usize, ParamScalar)>) -> Self {
        let mut m = Mat::zeros(n, n);
        for (i, j, s) in entries {
            m.set(i, j, s);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ParamScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: ParamScalar) {
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[ParamScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ParamScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &Mat, ring: &ParamRing) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = ParamScalar::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, ring.reduce(&acc).unwrap_or(acc));
            }
        }
        out
    }

    pub fn add(&self, o: &Mat, ring: &ParamRing) -> Mat {
        self.zip(o, |a, b| ring.add(a, b))
    }

    pub fn sub(&self, o: &Mat, ring: &ParamRing) -> Mat {
        self.zip(o, |a, b| ring.add(a, &b.neg()))
    }

    pub fn scale(&self, s: &ParamScalar, ring: &ParamRing) -> Mat {
        self.map(|a| ring.mul(a, s))
    }

    pub fn map(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn zip(&self, o: &Mat, f: impl Fn(&ParamScalar, &ParamScalar) -> ParamScalar) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn is_zero(&self, ring: &ParamRing) -> bool {
        self.data.iter().all(|s| ring.is_zero(s))
    }

    pub fn eq_in(&self, o: &Mat, ring: &ParamRing) -> bool {
        (self.rows, self.cols) == (o.rows, o.cols) && self.data.iter().zip(&o.data).all(|(a, b)| ring.eq(a, b))
    }

    /// Positions where the two matrices differ in the ring.
    pub fn mismatches(&self, o: &Mat, ring: &ParamRing) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !ring.eq(self.get(i, j), o.get(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `Some(s)` if the matrix is `s` times the identity.
    pub fn as_scalar(&self, ring: &ParamRing) -> Option<ParamScalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &s } else { &ParamScalar::zero() };
                if !ring.eq(self.get(i, j), want) {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn substitute(&self, subst: &dyn Fn(Var) -> Option<ParamScalar>) -> Option<Mat> {
        let data = self.data.iter().map(|s| s.substitute(subst)).collect::<Option<Vec<_>>>()?;
        Some(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` if singular in the ring.
    pub fn inverse(&self, ring: &ParamRing) -> Option<Mat> {
        let n = self.rows;
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut a = self.to_rows();
        let mut inv = Mat::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !ring.is_zero(&a[r][col]))?;
            a.swap(col, p);
            inv.swap(col, p);
            let pinv = ring.reduce(&a[col][col].inv()?).ok()?;
            for j in 0..n {
                a[col][j] = ring.mul(&a[col][j], &pinv);
                inv[col][j] = ring.mul(&inv[col][j], &pinv);
            }
            for r in 0..n {
                if r == col || ring.is_zero(&a[r][col]) {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = ring.mul(&f, &a[col][j]);
                    a[r][j] = ring.add(&a[r][j], &da.neg());
                    let di = ring.mul(&f, &inv[col][j]);
                    inv[r][j] = ring.add(&inv[r][j], &di.neg());
                }
            }
        }
        Some(Mat::from_rows(inv))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row-echelon basis of the span of `vectors`.
pub fn row_basis(vectors: &[Vec<ParamScalar>], ring: &ParamRing) -> Vec<Vec<ParamScalar>> {
    let mut basis: Vec<(usize, Vec<ParamScalar>)> = Vec::new();
    for v in vectors {
        if let Some(r) = reduce_against(v, &basis, ring) {
            basis.push(r);
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

/// Reduces `v` by `basis` (pivot column, normalized row); returns the new pivot row if independent.
fn reduce_against(
    v: &[ParamScalar],
    basis: &[(usize, Vec<ParamScalar>)],
    ring: &ParamRing,
) -> Option<(usize, Vec<ParamScalar>)> {
    let mut w = v.to_vec();
    for (p, b) in basis {
        if ring.is_zero(&w[*p]) {
            continue;
        }
        let f = w[*p].clone();
        for j in 0..w.len() {
            if !b[j].is_zero() {
                let d = ring.mul(&f, &b[j]);
                w[j] = ring.add(&w[j], &d.neg());
            }
        }
    }
    let p = (0..w.len()).find(|&j| !ring.is_zero(&w[j]))?;
    let inv = w[p].inv()?;
    let row = w.iter().map(|s| ring.mul(s, &inv)).collect();
    Some((p, row))
}

/// A growing span used by rank and cyclic-span computations.
#[derive(Clone, Debug, Default)]
pub struct Span {
    basis: Vec<(usize, Vec<ParamScalar>)>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[ParamScalar], ring: &ParamRing) -> bool {
        match reduce_against(v, &self.basis, ring) {
            Some(r) => {
                self.basis.push(r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[ParamScalar], ring: &ParamRing) -> bool {
        reduce_against(v, &self.basis, ring).is_none()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn rank(vectors: &[Vec<ParamScalar>], ring: &ParamRing) -> usize {
    row_basis(vectors, ring).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::param::ParamPoly;

    fn e() -> ParamScalar {
        ParamScalar::var(Var::E)
    }

    #[test]
    fn inverse_of_symbolic_matrix() {
        let ring = ParamRing::free();
        let m = Mat::from_rows(vec![vec![e(), ParamScalar::one()], vec![ParamScalar::one(), ParamScalar::zero()]]);
        let inv = m.inverse(&ring).unwrap();
        assert!(m.mul(&inv, &ring).eq_in(&Mat::identity(2), &ring));
    }

    #[test]
    fn rank_detects_dependence() {
        let ring = ParamRing::free();
        let v1 = vec![e(), ParamScalar::one()];
        let v2 = vec![e().mul(&e()), e()];
        assert_eq!(rank(&[v1.clone(), v2], &ring), 1);
        assert_eq!(rank(&[v1, vec![ParamScalar::one(), e()]], &ring), 2);
    }

    #[test]
    fn rank_modulo_relation() {
        // r^2 = E makes (r, E) and (1, r) dependent
        let rel = ParamPoly::var(Var::R).pow(2).sub(&ParamPoly::var(Var::E));
        let ring = ParamRing::with_relation(rel, Var::R);
        let r = ParamScalar::var(Var::R);
        assert_eq!(rank(&[vec![r.clone(), e()], vec![ParamScalar::one(), r]], &ring), 1);
    }
}
