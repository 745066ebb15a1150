//! Exact elements of the completed tensor powers of `L = A[t, t⁻¹]`.
//!
//! A [`Banded<S>`] with `S` slots is a finite map from total Laurent degree
//! `d` to a polynomial in the slot degrees of slots 2..S (the first slot's
//! degree is `d` minus the others). The component at slot degrees `(p, q)` of
//! a [`BandedTensor2`] is `f_d(q)`; at `(p, q, s)` of a [`BandedTensor3`] it is
//! `g_d(q, s)`. Coefficients are flat `A^{⊗S}` vectors, indexed row-major.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::linalg::{Basis, Matrix};
use crate::poly::{Affine, BandPoly};
use crate::scalar::{Field, Scalar};

use super::dense::DenseTensor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Banded<const S: usize> {
    field: Field,
    dim: usize,
    bands: BTreeMap<i64, BandPoly>,
}

pub type BandedTensor2 = Banded<2>;
pub type BandedTensor3 = Banded<3>;

/// The band variable standing for the degree of slot `slot` (1-based from the
/// second slot on).
pub(crate) fn slot_var(slot: usize) -> Affine {
    match slot {
        1 => Affine::U,
        2 => Affine::V,
        _ => panic!("slot {slot} has no band variable"),
    }
}

impl<const S: usize> Banded<S> {
    pub const VARS: usize = S - 1;

    pub fn zero(field: Field, dim: usize) -> Banded<S> {
        Banded { field, dim, bands: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn width(&self) -> usize {
        self.dim.pow(S as u32)
    }

    pub fn bands(&self) -> &BTreeMap<i64, BandPoly> {
        &self.bands
    }

    pub fn band(&self, d: i64) -> Option<&BandPoly> {
        self.bands.get(&d)
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty()
    }

    /// Add `p` to band `d`, dropping the band if it cancels.
    pub fn add_band(&mut self, d: i64, p: BandPoly) {
        assert_eq!(p.vars(), Self::VARS, "band polynomial variable count");
        assert_eq!(p.width(), self.width(), "band polynomial width");
        assert_eq!(p.field(), self.field, "band polynomial field");
        let next = match self.bands.remove(&d) {
            Some(old) => old.add(&p),
            None => p,
        };
        if !next.is_zero() {
            self.bands.insert(d, next);
        }
    }

    pub fn add(&self, other: &Banded<S>) -> Banded<S> {
        assert_eq!(self.dim, other.dim, "banded tensors over different algebras");
        let mut out = self.clone();
        for (d, p) in &other.bands {
            out.add_band(*d, p.clone());
        }
        out
    }

    pub fn neg(&self) -> Banded<S> {
        self.map_bands(|_, p| Ok(p.neg())).expect("negation keeps degrees")
    }

    pub fn sub(&self, other: &Banded<S>) -> Banded<S> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Banded<S> {
        self.map_bands(|_, p| Ok(p.scale(s))).expect("scaling keeps degrees")
    }

    /// Highest total degree of any band polynomial.
    pub fn poly_degree(&self) -> u32 {
        self.bands.values().map(BandPoly::degree).max().unwrap_or(0)
    }

    pub(crate) fn map_bands(&self, f: impl Fn(i64, &BandPoly) -> Result<BandPoly>) -> Result<Banded<S>> {
        let mut out = Banded::zero(self.field, self.dim);
        for (d, p) in &self.bands {
            out.add_band(*d, f(*d, p)?);
        }
        Ok(out)
    }

    /// The coefficient at the given slot degrees.
    pub fn component(&self, degrees: [i64; S]) -> Vec<Scalar> {
        let d: i64 = degrees.iter().sum();
        match self.bands.get(&d) {
            Some(p) => p.eval([degrees[1], if S == 3 { degrees[2] } else { 0 }]),
            None => crate::linalg::vzero(self.field, self.width()),
        }
    }

    /// All nonzero components whose slot degrees lie in `[lo, hi]`.
    pub fn window_truncate(&self, lo: i64, hi: i64) -> DenseTensor<S> {
        let mut out = DenseTensor::zero(self.field, self.dim);
        let range = lo..=hi;
        for d in self.bands.keys() {
            for_each_point::<S>(*d, lo, hi, |degrees| {
                if range.contains(&degrees[0]) {
                    out.add(degrees, &self.component(degrees));
                }
            });
        }
        out
    }

    /// A radius `w` such that a nonzero tensor has a nonzero component with
    /// all slot degrees in `[−w, w]`.
    pub fn sufficient_radius(&self) -> i64 {
        let span = self.bands.keys().map(|d| d.abs()).max().unwrap_or(0);
        span + 2 * i64::from(self.poly_degree()) + 2
    }

    /// Coefficient table per band: `(d, [(cell label, [(exponents, value)])])`.
    pub fn table(&self, basis: &Basis) -> Vec<(i64, Vec<(String, Vec<([u32; 2], String)>)>)> {
        let n = self.dim;
        self.bands
            .iter()
            .map(|(d, p)| {
                let cells = (0..self.width())
                    .filter_map(|k| {
                        let terms: Vec<([u32; 2], String)> = p
                            .terms()
                            .iter()
                            .filter(|(_, c)| !c[k].is_zero())
                            .map(|(e, c)| (*e, c[k].to_string()))
                            .collect();
                        if terms.is_empty() {
                            return None;
                        }
                        let idx: Vec<usize> = (0..S).map(|s| (k / n.pow((S - 1 - s) as u32)) % n).collect();
                        Some((basis.label(&idx), terms))
                    })
                    .collect();
                (*d, cells)
            })
            .collect()
    }

    /// Nonzero coefficients as `(value, "cell @ d=.. u^i v^j")` pairs.
    pub fn residual_entries(&self, basis: &Basis) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (d, cells) in self.table(basis) {
            for (cell, terms) in cells {
                for (e, v) in terms {
                    let mono = match S {
                        2 => format!("u^{}", e[0]),
                        _ => format!("u^{} v^{}", e[0], e[1]),
                    };
                    out.push((v, format!("{cell} @ d={d} {mono}")));
                }
            }
        }
        out
    }
}

/// Calls `f` on every slot-degree tuple of band `d` whose free degrees lie in
/// `[lo, hi]`; the caller filters the first slot.
fn for_each_point<const S: usize>(d: i64, lo: i64, hi: i64, mut f: impl FnMut([i64; S])) {
    let mut degrees = [0i64; S];
    match S {
        2 => {
            for q in lo..=hi {
                degrees[0] = d - q;
                degrees[1] = q;
                f(degrees);
            }
        }
        3 => {
            for q in lo..=hi {
                for s in lo..=hi {
                    degrees[0] = d - q - s;
                    degrees[1] = q;
                    degrees[2] = s;
                    f(degrees);
                }
            }
        }
        _ => unreachable!("two or three slots"),
    }
}

/// Apply `m` to slot `slot` of a flat `A^{⊗slots}` coefficient vector.
pub(crate) fn apply_matrix_slot(v: &[Scalar], n: usize, slots: usize, slot: usize, m: &Matrix) -> Vec<Scalar> {
    let stride = n.pow((slots - 1 - slot) as u32);
    let mut out = crate::linalg::vzero(m.field(), v.len());
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let k = (idx / stride) % n;
        let base = idx - k * stride;
        for row in 0..n {
            let w = m.get(row, k);
            if !w.is_zero() {
                let target = base + row * stride;
                out[target] = &out[target] + &(x * w);
            }
        }
    }
    out
}

/// Coefficient permutation: output slot `s` carries source slot `perm[s]`.
pub(crate) fn permute_coeffs(v: &[Scalar], n: usize, perm: &[usize]) -> Vec<Scalar> {
    let slots = perm.len();
    let mut out = v.to_vec();
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut src = vec![0usize; slots];
        for (s, p) in perm.iter().enumerate() {
            src[*p] = (idx / n.pow((slots - 1 - s) as u32)) % n;
        }
        let flat = src.iter().fold(0, |acc, i| acc * n + i);
        *slot = v[flat].clone();
    }
    out
}

impl Banded<2> {
    /// `τ̂`: band `d`, `f(u) ↦ f(d − u)` with the two slots exchanged.
    pub fn twist(&self) -> Result<Banded<2>> {
        let n = self.dim;
        self.map_bands(|d, p| {
            let flipped = p.substitute(1, &[Affine::new(-1, 0, d)])?;
            Ok(flipped.map_coeffs(n * n, |c| permute_coeffs(c, n, &[1, 0])))
        })
    }

    /// The constant band `d` with coefficient matrix `m` (`m[i][j]` at `e_i⊗e_j`).
    pub fn constant_band(d: i64, m: &Matrix) -> Banded<2> {
        let mut out = Banded::zero(m.field(), m.rows());
        if !m.is_zero() {
            out.add_band(d, BandPoly::constant(m.field(), 1, m.data().to_vec()));
        }
        out
    }
}

impl Banded<3> {
    /// Slot permutation with the [`crate::linalg::Ten3::permute`] convention.
    pub fn permute(&self, perm: [usize; 3]) -> Result<Banded<3>> {
        let n = self.dim;
        let mut inv = [0usize; 3];
        for (s, p) in perm.iter().enumerate() {
            inv[*p] = s;
        }
        self.map_bands(|d, p| {
            let out_degree = |s: usize| if s == 0 { Affine::new(-1, -1, d) } else { slot_var(s) };
            let moved = p.substitute(2, &[out_degree(inv[1]), out_degree(inv[2])])?;
            Ok(moved.map_coeffs(n * n * n, |c| permute_coeffs(c, n, &perm)))
        })
    }

    pub fn swap12(&self) -> Result<Banded<3>> {
        self.permute([1, 0, 2])
    }

    pub fn swap23(&self) -> Result<Banded<3>> {
        self.permute([0, 2, 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vzero, Ten3};

    fn q() -> Field {
        Field::Rational
    }

    fn sample2() -> BandedTensor2 {
        // band 3: f(u) = (u + 1)·e0⊗e1 + 2·e1⊗e1; band −1: u·e1⊗e0.
        let f = q();
        let mut t = Banded::zero(f, 2);
        let cell = |i: usize| {
            let mut v = vzero(f, 4);
            v[i] = f.one();
            v
        };
        let p = BandPoly::constant(f, 1, cell(1)).mul_affine(Affine::new(1, 0, 1)).unwrap();
        t.add_band(3, p.add(&BandPoly::constant(f, 1, cell(3)).scale(&f.from_i64(2))));
        t.add_band(-1, BandPoly::constant(f, 1, cell(2)).mul_affine(Affine::U).unwrap());
        t
    }

    fn sample3() -> BandedTensor3 {
        let f = q();
        let mut t = Banded::zero(f, 2);
        let mut v = vzero(f, 8);
        v[1] = f.one();
        v[6] = f.from_i64(-3);
        let p = BandPoly::constant(f, 2, v).mul_affine(Affine::new(2, -1, 1)).unwrap();
        t.add_band(0, p.clone());
        t.add_band(-4, p.mul_affine(Affine::V).unwrap());
        t
    }

    #[test]
    fn twist_of_u_plus_one() {
        let f = q();
        let mut t = Banded::zero(f, 1);
        t.add_band(3, BandPoly::affine(f, 1, Affine::new(1, 0, 1)));
        let tw = t.twist().unwrap();
        assert_eq!(tw.band(3).unwrap(), &BandPoly::affine(f, 1, Affine::new(-1, 0, 4)));
    }

    #[test]
    fn twist_is_an_involution_and_matches_components() {
        let t = sample2();
        let tw = t.twist().unwrap();
        assert_eq!(tw.twist().unwrap(), t);
        for p in -5..5 {
            for s in -5..5 {
                let a = t.component([p, s]);
                let b = tw.component([s, p]);
                assert_eq!(b, permute_coeffs(&a, 2, &[1, 0]));
            }
        }
    }

    #[test]
    fn permutations_match_dense_components() {
        let t = sample3();
        for perm in [[1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let moved = t.permute(perm).unwrap();
            for p in -4..4 {
                for r in -4..4 {
                    for s in -4..4 {
                        let src = [p, r, s];
                        let out = [src[perm[0]], src[perm[1]], src[perm[2]]];
                        let expect = Ten3::from_vec(q(), [2, 2, 2], t.component(src)).unwrap().permute(perm);
                        assert_eq!(moved.component(out), expect.data());
                    }
                }
            }
        }
        assert_eq!(t.swap12().unwrap().swap12().unwrap(), t);
    }

    #[test]
    fn arithmetic_cancels() {
        let t = sample3();
        assert!(t.sub(&t).is_zero());
        assert_eq!(t.add(&t), t.scale(&q().from_i64(2)));
        assert!(t.scale(&q().zero()).is_zero());
    }

    #[test]
    fn window_of_zero_is_empty() {
        let z: BandedTensor3 = Banded::zero(q(), 2);
        assert!(z.window_truncate(-8, 8).is_zero());
    }

    #[test]
    fn window_counts() {
        let t = sample2();
        let w = t.window_truncate(-2, 2);
        // Band 3 needs both degrees in [−2, 2]: u ∈ {1, 2}. Band −1: u ∈ {−2, −1, 0, 1}, zero at u = 0.
        assert_eq!(w.entries().len(), 5);
        assert_eq!(w.get([2, 1]), t.component([2, 1]));
    }

    #[test]
    fn slot_matrix_application() {
        let f = q();
        let m = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        let v: Vec<Scalar> = (0..8).map(|i| f.from_i64(i)).collect();
        let t = Ten3::from_vec(f, [2, 2, 2], v.clone()).unwrap();
        for slot in 0..3 {
            assert_eq!(apply_matrix_slot(&v, 2, 3, slot, &m), t.apply_slot(slot, &m).data());
        }
    }

    #[test]
    fn table_labels() {
        let t = sample2();
        let table = t.table(&Basis::standard("e", 2));
        assert_eq!(table[0].0, -1);
        assert_eq!(table[0].1[0].0, "e2.e1");
        assert_eq!(t.residual_entries(&Basis::standard("e", 2)).len(), 4);
    }
}
