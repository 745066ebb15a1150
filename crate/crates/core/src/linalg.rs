//! Dense finite-dimensional containers: bases, vectors, matrices (which also
//! serve as elements of V⊗W), rank-3 tensors and bilinear forms.
//!
//! A matrix acting on vectors uses the column convention: `m.get(i, j)` is
//! the coefficient of the i-th basis vector in the image of the j-th. When a
//! matrix stores a tensor `t ∈ V⊗W`, `t.get(i, j)` is the coefficient of
//! `v_i ⊗ w_j`, and `(X⊗Y)t = X·t·Yᵀ`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Ordered list of distinct basis names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    names: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Basis {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Basis> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::ShapeMismatch("basis must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::ShapeMismatch(format!("duplicate basis name {n}")));
            }
        }
        Ok(Basis { names, index })
    }

    /// `prefix1, ..., prefixN`.
    pub fn standard(prefix: &str, n: usize) -> Basis {
        Basis::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("standard basis")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Dual basis names: `e` becomes `e*` and `e*` becomes `e`, so that
    /// dualizing twice restores the original names.
    pub fn dual(&self) -> Basis {
        Basis::new(self.names.iter().map(|n| match n.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{n}*"),
        }))
        .expect("dual basis")
    }

    /// Concatenation; fails on a name clash.
    pub fn concat(&self, other: &Basis) -> Result<Basis> {
        Basis::new(self.names.iter().chain(other.names.iter()).cloned())
    }

    /// Product basis of V⊗W in row-major order, names `v@w`.
    pub fn tensor(&self, other: &Basis) -> Basis {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.names {
            for b in &other.names {
                out.push(format!("{a}@{b}"));
            }
        }
        Basis::new(out).expect("tensor basis")
    }

    /// Label of a multi-index, e.g. `e1.e2.e1`.
    pub fn label(&self, idx: &[usize]) -> String {
        idx.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join(".")
    }
}

pub fn vzero(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vzero(field, n);
    v[i] = field.one();
    v
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s * x).collect()
}

/// `acc += s·v`.
pub fn vaxpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(s * x);
        }
    }
}

pub fn vis_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vzero(field, rows * cols) }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Integer entries, row by row.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        vis_zero(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_shape(&self, other: &Matrix) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "matrix shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.same_shape(other);
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: vadd(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.same_shape(other);
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: vsub(&self.data, &other.data) }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: vneg(&self.data) }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: vscale(s, &self.data) }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The dual map on the dual basis: `−Mᵀ`.
    pub fn star(&self) -> Matrix {
        self.transpose().neg()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    /// Kronecker product; row `(i, k)` sits at `i * other.rows() + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (other.rows, other.cols);
        Matrix::from_fn(self.field, self.rows * r, self.cols * c, |i, j| {
            self.get(i / r, j / c) * other.get(i % r, j % c)
        })
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vzero(self.field, self.rows);
        for j in 0..self.cols {
            if v[j].is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[i] = &out[i] + &(a * &v[j]);
                }
            }
        }
        out
    }

    /// `(X⊗Y)t` for a two-slot tensor `t`, i.e. `X·t·Yᵀ`.
    pub fn tensor_apply(&self, x: &Matrix, y: &Matrix) -> Matrix {
        x.mul(self).mul(&y.transpose())
    }

    /// Contraction of a two-slot tensor with a vector in the given slot.
    pub fn contract(&self, slot: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
        match slot {
            0 if v.len() == self.rows => Ok(self.transpose().apply(v)),
            1 if v.len() == self.cols => Ok(self.apply(v)),
            _ => Err(Error::ShapeMismatch(format!(
                "cannot contract slot {slot} of a {}x{} tensor with a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            ))),
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = m.get(r, j) - &(&f * m.get(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let piv = m.get(col, col).clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) * &inv;
                for j in col..n {
                    let v = m.get(r, j) - &(&f * m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Dense rank-3 tensor; `get(i, j, k)` is the coefficient of `u_i⊗v_j⊗w_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ten3 {
    field: Field,
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl Ten3 {
    pub fn zeros(field: Field, dims: [usize; 3]) -> Ten3 {
        Ten3 { field, dims, data: vzero(field, dims[0] * dims[1] * dims[2]) }
    }

    pub fn from_fn(field: Field, dims: [usize; 3], mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Ten3 {
        let mut data = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    data.push(f(i, j, k));
                }
            }
        }
        Ten3 { field, dims, data }
    }

    pub fn from_vec(field: Field, dims: [usize; 3], data: Vec<Scalar>) -> Result<Ten3> {
        if data.len() != dims[0] * dims[1] * dims[2] {
            return Err(Error::ShapeMismatch(format!("{} entries for a {dims:?} tensor", data.len())));
        }
        Ok(Ten3 { field, dims, data })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let o = self.offset(i, j, k);
        self.data[o] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let o = self.offset(i, j, k);
        self.data[o] = &self.data[o] + v;
    }

    /// The fiber `t[i][j][·]`.
    pub fn fiber(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j, 0);
        &self.data[o..o + self.dims[2]]
    }

    /// The slice `t[i][·][·]` as a matrix.
    pub fn slice(&self, i: usize) -> Matrix {
        let len = self.dims[1] * self.dims[2];
        Matrix::from_vec(self.field, self.dims[1], self.dims[2], self.data[i * len..(i + 1) * len].to_vec())
            .expect("slice shape")
    }

    pub fn is_zero(&self) -> bool {
        vis_zero(&self.data)
    }

    pub fn add(&self, other: &Ten3) -> Ten3 {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Ten3 { field: self.field, dims: self.dims, data: vadd(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Ten3) -> Ten3 {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Ten3 { field: self.field, dims: self.dims, data: vsub(&self.data, &other.data) }
    }

    pub fn neg(&self) -> Ten3 {
        Ten3 { field: self.field, dims: self.dims, data: vneg(&self.data) }
    }

    pub fn scale(&self, s: &Scalar) -> Ten3 {
        Ten3 { field: self.field, dims: self.dims, data: vscale(s, &self.data) }
    }

    /// Output slot `s` carries input slot `perm[s]`.
    pub fn permute(&self, perm: [usize; 3]) -> Ten3 {
        let dims = [self.dims[perm[0]], self.dims[perm[1]], self.dims[perm[2]]];
        Ten3::from_fn(self.field, dims, |a, b, c| {
            let out = [a, b, c];
            let mut src = [0; 3];
            for s in 0..3 {
                src[perm[s]] = out[s];
            }
            self.get(src[0], src[1], src[2]).clone()
        })
    }

    /// `τ⊗id`.
    pub fn swap12(&self) -> Ten3 {
        self.permute([1, 0, 2])
    }

    /// `id⊗τ`.
    pub fn swap23(&self) -> Ten3 {
        self.permute([0, 2, 1])
    }

    /// Apply a linear map to one slot.
    pub fn apply_slot(&self, slot: usize, m: &Matrix) -> Ten3 {
        assert_eq!(m.cols(), self.dims[slot], "slot map shape mismatch");
        let mut dims = self.dims;
        dims[slot] = m.rows();
        let mut out = Ten3::zeros(self.field, dims);
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let v = self.get(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let src = [i, j, k];
                    for r in 0..m.rows() {
                        let a = m.get(r, src[slot]);
                        if a.is_zero() {
                            continue;
                        }
                        let mut dst = src;
                        dst[slot] = r;
                        out.add_at(dst[0], dst[1], dst[2], &(a * v));
                    }
                }
            }
        }
        out
    }

    /// Contraction with a vector in the given slot.
    pub fn contract(&self, slot: usize, v: &[Scalar]) -> Result<Matrix> {
        if slot > 2 || v.len() != self.dims[slot] {
            return Err(Error::ShapeMismatch(format!(
                "cannot contract slot {slot} of a {:?} tensor with a vector of length {}",
                self.dims,
                v.len()
            )));
        }
        let rest: Vec<usize> = (0..3).filter(|&s| s != slot).collect();
        let mut out = Matrix::zeros(self.field, self.dims[rest[0]], self.dims[rest[1]]);
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let idx = [i, j, k];
                    let c = &v[idx[slot]];
                    let t = self.get(i, j, k);
                    if !c.is_zero() && !t.is_zero() {
                        out.add_at(idx[rest[0]], idx[rest[1]], &(c * t));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries with labels, in index order.
    pub fn nonzero_entries(&self) -> Vec<([usize; 3], Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push(([i, j, k], v.clone()));
                    }
                }
            }
        }
        out
    }
}

/// A bilinear form with its structural flags computed at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
    symmetric: bool,
    skewsymmetric: bool,
    nondegenerate: bool,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<BilinearForm> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch("bilinear form matrix must be square".into()));
        }
        let t = matrix.transpose();
        let symmetric = t == matrix;
        let n = matrix.rows();
        let skewsymmetric = t == matrix.neg() && (0..n).all(|i| matrix.get(i, i).is_zero());
        let nondegenerate = !matrix.det().is_zero();
        Ok(BilinearForm { matrix, symmetric, skewsymmetric, nondegenerate })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `ω(x, x) = 0` for all x; equals `Mᵀ = −M` outside characteristic 2.
    pub fn is_skewsymmetric(&self) -> bool {
        self.skewsymmetric
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let my = self.matrix.apply(y);
        let mut acc = self.field().zero();
        for (a, b) in x.iter().zip(&my) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn basis_rejects_duplicates() {
        assert!(Basis::new(["a", "a"]).is_err());
        let b = Basis::new(["a", "b"]).unwrap();
        assert_eq!(b.index_of("b"), Some(1));
        assert_eq!(b.dual().name(0), "a*");
        assert_eq!(b.tensor(&b).name(1), "a@b");
    }

    #[test]
    fn contract_unit_vector_gives_slice() {
        let f = Field::Rational;
        let t = Ten3::from_fn(f, [2, 2, 2], |i, j, k| f.from_i64((4 * i + 2 * j + k) as i64));
        let m = t.contract(0, &unit(f, 2, 1)).unwrap();
        assert_eq!(m, t.slice(1));
        let zero = Ten3::zeros(f, [2, 2, 2]);
        assert!(zero.contract(2, &unit(f, 2, 0)).unwrap().is_zero());
        assert!(t.contract(3, &unit(f, 2, 0)).is_err());
    }

    #[test]
    fn contract_one_dimensional_product() {
        // e∘e = e contracted with e in the first slot is the row (e∘e) = e.
        let f = Field::Rational;
        let c = Ten3::from_fn(f, [1, 1, 1], |_, _, _| f.one());
        let row = c.contract(0, &[f.one()]).unwrap();
        assert_eq!(row.contract(0, &[f.one()]).unwrap(), vec![f.one()]);
    }

    #[test]
    fn determinant_and_inverse() {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, &[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), f.one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        let sing = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert!(sing.det().is_zero());
        assert!(sing.inverse().is_none());
        assert_eq!(sing.rank(), 1);
    }

    #[test]
    fn form_flags() {
        let f = Field::Rational;
        let w = BilinearForm::new(Matrix::from_i64(f, &[&[0, 1], &[-1, 0]])).unwrap();
        assert!(w.is_skewsymmetric() && w.is_nondegenerate() && !w.is_symmetric());
        let z = BilinearForm::new(Matrix::zeros(f, 2, 2)).unwrap();
        assert!(z.is_symmetric() && !z.is_nondegenerate());
    }

    #[test]
    fn permutations_compose() {
        let f = Field::Rational;
        let t = Ten3::from_fn(f, [2, 3, 4], |i, j, k| f.from_i64((100 * i + 10 * j + k) as i64));
        let p = t.permute([2, 0, 1]);
        assert_eq!(p.dims(), [4, 2, 3]);
        assert_eq!(p.get(3, 1, 2), t.get(1, 2, 3));
        assert_eq!(t.swap12().swap12(), t);
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..5, n)
    }

    proptest! {
        #[test]
        fn contraction_is_linear(t in arb_vec(27), v in arb_vec(3), w in arb_vec(3), a in 0i64..5, b in 0i64..5, slot in 0usize..3) {
            let f = f5();
            let t = Ten3::from_vec(f, [3, 3, 3], t.into_iter().map(|x| f.from_i64(x)).collect()).unwrap();
            let v: Vec<Scalar> = v.into_iter().map(|x| f.from_i64(x)).collect();
            let w: Vec<Scalar> = w.into_iter().map(|x| f.from_i64(x)).collect();
            let (a, b) = (f.from_i64(a), f.from_i64(b));
            let combo = vadd(&vscale(&a, &v), &vscale(&b, &w));
            let lhs = t.contract(slot, &combo).unwrap();
            let rhs = t.contract(slot, &v).unwrap().scale(&a).add(&t.contract(slot, &w).unwrap().scale(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_is_two_sided(m in arb_vec(9)) {
            let f = f5();
            let m = Matrix::from_vec(f, 3, 3, m.into_iter().map(|x| f.from_i64(x)).collect()).unwrap();
            match m.inverse() {
                Some(inv) => {
                    prop_assert_eq!(m.mul(&inv), Matrix::identity(f, 3));
                    prop_assert_eq!(inv.mul(&m), Matrix::identity(f, 3));
                }
                None => prop_assert!(m.det().is_zero()),
            }
        }
    }
}
