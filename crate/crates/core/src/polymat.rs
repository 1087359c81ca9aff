//! Matrices over GF(2^m) and over F2[z].
//!
//! [`FieldMatrix`] carries Vandermonde matrices and their inverses;
//! [`PolyMatrix`] carries generator matrices and their square submatrices.
//! Inverses over the rational functions F2(z) are never formed directly: a
//! square [`PolyMatrix`] yields `(det, adj)` with `M * adj = det * I`, and
//! decoding divides by `det` at the end.

use crate::error::{Error, Result};
use crate::gf2m::{FieldCtx, FieldElem};
use crate::gf2poly::Poly2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl FieldMatrix {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Self {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            ctx: ctx.clone(),
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// `K x N` matrix with entry `(i, j) = <z^(i*j)>` (0-based indices).
    pub fn vandermonde(k: usize, n: usize, ctx: &FieldCtx) -> Result<Self> {
        if k == 0 || k > n || n as u64 > ctx.order() {
            return Err(Error::Dimension(format!(
                "Vandermonde needs 1 <= K <= N <= {}, got K={k}, N={n}",
                ctx.order()
            )));
        }
        let mut v = Self::zeros(ctx, k, n);
        for i in 0..k {
            for j in 0..n {
                v.set(i, j, ctx.pow_z((i * j) as u64));
            }
        }
        Ok(v)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    /// Columns at the given 0-based positions, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Dimension(format!("column {c} out of range")));
        }
        let mut out = Self::zeros(&self.ctx, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.ctx;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for t in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.ctx;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let scale = f.inv(a.get(col, col))?;
            a.scale_row(col, scale);
            inv.scale_row(col, scale);
            for r in 0..n {
                let factor = a.get(r, col);
                if r != col && !factor.is_zero() {
                    a.add_row_multiple(r, col, factor);
                    inv.add_row_multiple(r, col, factor);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: FieldElem) {
        for j in 0..self.cols {
            let v = self.ctx.mul(self.get(r, j), s);
            self.set(r, j, v);
        }
    }

    /// `row[dst] += factor * row[src]`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: FieldElem) {
        for j in 0..self.cols {
            let v = self
                .ctx
                .add(self.get(dst, j), self.ctx.mul(factor, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// Lifts every entry to its polynomial representative.
    pub fn to_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.to_poly()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly2>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Poly2::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly2::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly2>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly2 {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly2) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Poly2] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly2> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly2> {
        self.data.iter()
    }

    /// Columns at the given 0-based positions, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Dimension(format!("column {c} out of range")));
        }
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Rows in the order given by `perm` (0-based).
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(perm.len(), self.cols);
        for (ii, &i) in perm.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly2::zero();
                for t in 0..self.cols {
                    acc += &(self.get(i, t) * other.get(t, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &Poly2) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    /// Determinant over F2[z] by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Poly2> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        Ok(bareiss_det(self.rows, self.data.clone()))
    }

    /// `(det, adj)` with `M * adj = adj * M = det * I`.
    ///
    /// `adj[j][i]` is the `(i, j)` cofactor; signs vanish in characteristic 2.
    pub fn det_adjugate(&self) -> Result<(Poly2, PolyMatrix)> {
        let det = self.determinant()?;
        let n = self.rows;
        let mut adj = PolyMatrix::zeros(n, n);
        if n == 1 {
            adj.set(0, 0, Poly2::one());
            return Ok((det, adj));
        }
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Poly2> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| self.get(r, c).clone())
                    .collect();
                adj.set(j, i, bareiss_det(n - 1, minor));
            }
        }
        Ok((det, adj))
    }

    /// The inverse as a fraction in lowest terms: `(h, B)` with
    /// `M * B = h * I` and no common factor between `h` and all of `B`.
    pub fn inverse_fraction(&self) -> Result<(Poly2, PolyMatrix)> {
        let (det, adj) = self.det_adjugate()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let common = adj.data.iter().fold(det.clone(), |acc, e| acc.gcd(e));
        if common.is_one() {
            return Ok((det, adj));
        }
        let div = |p: &Poly2| p.divrem(&common).expect("nonzero gcd").0;
        let b = PolyMatrix {
            rows: adj.rows,
            cols: adj.cols,
            data: adj.data.iter().map(div).collect(),
        };
        Ok((div(&det), b))
    }

    /// Entry-wise remainder modulo `g`.
    pub fn reduced(&self, g: &Poly2) -> Result<PolyMatrix> {
        let data = self.data.iter().map(|e| e.rem(g)).collect::<Result<_>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

fn bareiss_det(n: usize, mut a: Vec<Poly2>) -> Poly2 {
    if n == 0 {
        return Poly2::one();
    }
    let mut prev = Poly2::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            // row swaps only flip the sign, which is invisible over F2
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Poly2::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let num = &(&a[i * n + j] * &pivot) + &(&lead * &a[k * n + j]);
                let (q, r) = num.divrem(&prev).expect("previous pivot is nonzero");
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i * n + j] = q;
            }
            a[i * n + k] = Poly2::zero();
        }
        prev = pivot;
    }
    a[n * n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    fn gf8() -> FieldCtx {
        FieldCtx::new(3, &p("z^3+z+1")).unwrap()
    }

    #[test]
    fn vandermonde_row_of_ones() {
        let f = gf8();
        let v = FieldMatrix::vandermonde(1, 7, &f).unwrap();
        assert!((0..7).all(|j| v.get(0, j) == f.one()));
        assert!(FieldMatrix::vandermonde(3, 8, &f).is_err());
        assert!(FieldMatrix::vandermonde(4, 3, &f).is_err());
    }

    #[test]
    fn inverse_of_selected_vandermonde_columns() {
        let f = gf8();
        let v = FieldMatrix::vandermonde(3, 7, &f).unwrap();
        let vx = v.select_columns(&[0, 2, 3]).unwrap();
        let inv = vx.inverse().unwrap();
        let expected = [[5, 5, 0], [6, 4, 3], [3, 0, 1]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert_eq!(inv.get(i, j), f.pow_z(e), "({i},{j})");
            }
        }
        assert_eq!(vx.mul(&inv).unwrap(), FieldMatrix::identity(&f, 3));
    }

    #[test]
    fn identity_inverse_and_singular() {
        let f = gf8();
        let id = FieldMatrix::identity(&f, 4);
        assert_eq!(id.inverse().unwrap(), id);
        let z = FieldMatrix::zeros(&f, 2, 2);
        assert!(matches!(z.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let a = FieldMatrix::identity(&gf8(), 2);
        let b = FieldMatrix::identity(&FieldCtx::new(3, &p("z^3+z^2+1")).unwrap(), 2);
        assert!(matches!(a.mul(&b), Err(Error::ContextMismatch)));
    }

    #[test]
    fn zd_submatrix_adjugate() {
        let z = p("z");
        let one = Poly2::one();
        let m = PolyMatrix::from_rows(vec![
            vec![one.clone(), z.clone(), z.clone()],
            vec![z.clone(), one.clone(), z.clone()],
            vec![z.clone(), z.clone(), one.clone()],
        ])
        .unwrap();
        let zp1 = p("z+1");
        let (det, adj) = m.det_adjugate().unwrap();
        assert_eq!(det, p("z^2+1"));
        let b = PolyMatrix::from_rows(vec![
            vec![zp1.clone(), z.clone(), z.clone()],
            vec![z.clone(), zp1.clone(), z.clone()],
            vec![z.clone(), z.clone(), zp1.clone()],
        ])
        .unwrap();
        assert_eq!(adj, b.scaled(&zp1));
        let (h, reduced) = m.inverse_fraction().unwrap();
        assert_eq!(h, zp1);
        assert_eq!(reduced, b);
        assert_eq!(m.mul(&reduced).unwrap(), PolyMatrix::identity(3).scaled(&h));
    }

    #[test]
    fn identity_adjugate() {
        let (det, adj) = PolyMatrix::identity(4).det_adjugate().unwrap();
        assert!(det.is_one());
        assert_eq!(adj, PolyMatrix::identity(4));
        let (det, adj) = PolyMatrix::from_rows(vec![vec![p("z^2+1")]])
            .unwrap()
            .det_adjugate()
            .unwrap();
        assert_eq!(det, p("z^2+1"));
        assert!(adj.get(0, 0).is_one());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = PolyMatrix::from_rows(vec![
            vec![Poly2::zero(), Poly2::one()],
            vec![p("z"), p("z^2")],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), p("z"));
        let s =
            PolyMatrix::from_rows(vec![vec![p("z+1"), p("z+1")], vec![p("z"), p("z")]]).unwrap();
        assert!(s.determinant().unwrap().is_zero());
    }
}
