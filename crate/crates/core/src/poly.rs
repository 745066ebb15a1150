//! Polynomials in one or two integer band variables with tensor-valued
//! coefficients.
//!
//! A [`BandPoly`] with `vars == 1` stands for a coefficient function f(u); with
//! `vars == 2` for g(u, v). Coefficients are flat vectors of a fixed `width`
//! (n² for A⊗A, n³ for A⊗A⊗A). Canonical form: no stored monomial has an
//! all-zero coefficient. Every operation that can raise the degree checks it
//! against the polynomial's cap.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{vadd, vis_zero, vneg, vscale, vzero};
use crate::scalar::{Field, Scalar};

pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// `u ↦ a·u + b·v + c` with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub u: i64,
    pub v: i64,
    pub c: i64,
}

impl Affine {
    pub const U: Affine = Affine { u: 1, v: 0, c: 0 };
    pub const V: Affine = Affine { u: 0, v: 1, c: 0 };

    pub fn new(u: i64, v: i64, c: i64) -> Affine {
        Affine { u, v, c }
    }

    pub fn constant(c: i64) -> Affine {
        Affine { u: 0, v: 0, c }
    }

    pub fn eval(&self, p: [i64; 2]) -> i64 {
        self.u * p[0] + self.v * p[1] + self.c
    }
}

#[derive(Clone, Debug)]
pub struct BandPoly {
    field: Field,
    vars: usize,
    width: usize,
    cap: u32,
    terms: BTreeMap<[u32; 2], Vec<Scalar>>,
}

impl PartialEq for BandPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.width == other.width && self.terms == other.terms
    }
}

impl Eq for BandPoly {}

impl BandPoly {
    pub fn zero(field: Field, vars: usize, width: usize) -> BandPoly {
        assert!(vars == 1 || vars == 2, "band polynomials have one or two variables");
        BandPoly { field, vars, width, cap: DEFAULT_DEGREE_CAP, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, vars: usize, coeff: Vec<Scalar>) -> BandPoly {
        let mut p = BandPoly::zero(field, vars, coeff.len());
        p.insert([0, 0], coeff);
        p
    }

    /// Scalar-valued (width 1) affine polynomial.
    pub fn affine(field: Field, vars: usize, a: Affine) -> BandPoly {
        assert!(vars == 2 || a.v == 0, "second variable used in a one-variable polynomial");
        let mut p = BandPoly::zero(field, vars, 1);
        p.insert([0, 0], vec![field.from_i64(a.c)]);
        p.insert([1, 0], vec![field.from_i64(a.u)]);
        p.insert([0, 1], vec![field.from_i64(a.v)]);
        p
    }

    /// Replace the degree cap.
    pub fn with_cap(mut self, cap: u32) -> Result<BandPoly> {
        self.cap = cap;
        self.check_cap()?;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 2], Vec<Scalar>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e[0] + e[1]).max().unwrap_or(0)
    }

    fn insert(&mut self, exp: [u32; 2], coeff: Vec<Scalar>) {
        debug_assert_eq!(coeff.len(), self.width);
        if vis_zero(&coeff) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c = vadd(c, &coeff);
                if vis_zero(c) {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    fn check_cap(&self) -> Result<()> {
        let d = self.degree();
        if d > self.cap {
            return Err(Error::DegreeCapExceeded { degree: d, cap: self.cap });
        }
        Ok(())
    }

    fn compatible(&self, other: &BandPoly) {
        assert_eq!(self.field, other.field, "band polynomial field mismatch");
        assert_eq!(self.vars, other.vars, "band polynomial variable count mismatch");
    }

    pub fn add(&self, other: &BandPoly) -> BandPoly {
        self.compatible(other);
        assert_eq!(self.width, other.width, "band polynomial width mismatch");
        let mut out = self.clone();
        out.cap = self.cap.max(other.cap);
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BandPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = vneg(c);
        }
        out
    }

    pub fn sub(&self, other: &BandPoly) -> BandPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> BandPoly {
        let mut out = BandPoly { terms: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.terms {
            out.insert(*e, vscale(s, c));
        }
        out
    }

    /// Apply a linear map to every coefficient.
    pub fn map_coeffs(&self, width: usize, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> BandPoly {
        let mut out = BandPoly { width, terms: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.terms {
            out.insert(*e, f(c));
        }
        out
    }

    /// Product of polynomials whose coefficients combine bilinearly.
    pub fn product(
        &self,
        other: &BandPoly,
        width: usize,
        combine: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    ) -> Result<BandPoly> {
        self.compatible(other);
        let mut out = BandPoly::zero(self.field, self.vars, width);
        out.cap = self.cap.max(other.cap);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert([ea[0] + eb[0], ea[1] + eb[1]], combine(ca, cb));
            }
        }
        out.check_cap()?;
        Ok(out)
    }

    /// Multiply by a scalar-valued polynomial.
    pub fn mul_scalar_poly(&self, s: &BandPoly) -> Result<BandPoly> {
        assert_eq!(s.width, 1, "multiplier must be scalar valued");
        self.product(s, self.width, |a, b| vscale(&b[0], a))
    }

    /// Multiply by a scalar affine form in the polynomial's own variables.
    pub fn mul_affine(&self, a: Affine) -> Result<BandPoly> {
        self.mul_scalar_poly(&BandPoly::affine(self.field, self.vars, a))
    }

    /// Compose with affine maps: variable k is replaced by `maps[k]`, and the
    /// result is a polynomial in `target_vars` variables.
    pub fn substitute(&self, target_vars: usize, maps: &[Affine]) -> Result<BandPoly> {
        assert_eq!(maps.len(), self.vars, "one affine map per variable");
        for m in maps {
            assert!(target_vars == 2 || m.v == 0, "map uses a variable the target lacks");
        }
        let one = BandPoly::constant(self.field, target_vars, vec![self.field.one()]).with_cap(self.cap)?;
        let bases: Vec<BandPoly> = maps.iter().map(|m| BandPoly::affine(self.field, target_vars, *m)).collect();
        let mut powers: Vec<Vec<BandPoly>> = Vec::new();
        for (k, b) in bases.iter().enumerate() {
            let top = self.terms.keys().map(|e| e[k]).max().unwrap_or(0);
            let mut list = vec![one.clone()];
            for _ in 0..top {
                let next = list.last().unwrap().mul_scalar_poly(b)?;
                list.push(next);
            }
            powers.push(list);
        }
        let mut out = BandPoly::zero(self.field, target_vars, self.width);
        out.cap = self.cap;
        for (e, c) in &self.terms {
            let mut factor = powers[0][e[0] as usize].clone();
            if self.vars == 2 {
                factor = factor.mul_scalar_poly(&powers[1][e[1] as usize])?;
            }
            for (fe, fc) in &factor.terms {
                out.insert(*fe, vscale(&fc[0], c));
            }
        }
        out.check_cap()?;
        Ok(out)
    }

    /// Exact evaluation at an integer point (the second coordinate is ignored
    /// for one-variable polynomials).
    pub fn eval(&self, point: [i64; 2]) -> Vec<Scalar> {
        let mut acc = vzero(self.field, self.width);
        for (e, c) in &self.terms {
            let mut m: i128 = 1;
            let mut big = false;
            for k in 0..self.vars {
                for _ in 0..e[k] {
                    m = match m.checked_mul(point[k] as i128) {
                        Some(x) => x,
                        None => {
                            big = true;
                            0
                        }
                    };
                }
            }
            let s = if big || m > i64::MAX as i128 || m < i64::MIN as i128 {
                let mut s = self.field.one();
                for k in 0..self.vars {
                    for _ in 0..e[k] {
                        s = &s * &self.field.from_i64(point[k]);
                    }
                }
                s
            } else {
                self.field.from_i64(m as i64)
            };
            acc = vadd(&acc, &vscale(&s, c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    fn scalar_poly(vars: usize, terms: &[([u32; 2], i64)]) -> BandPoly {
        let mut p = BandPoly::zero(q(), vars, 1);
        for (e, c) in terms {
            p.insert(*e, vec![q().from_i64(*c)]);
        }
        p
    }

    #[test]
    fn twist_substitution() {
        // u + 1 under u ↦ 3 − u is 4 − u.
        let p = scalar_poly(1, &[([1, 0], 1), ([0, 0], 1)]);
        let s = p.substitute(1, &[Affine::new(-1, 0, 3)]).unwrap();
        assert_eq!(s, scalar_poly(1, &[([1, 0], -1), ([0, 0], 4)]));
    }

    #[test]
    fn swapping_variables_of_uv() {
        let p = scalar_poly(2, &[([1, 1], 1)]);
        assert_eq!(p.substitute(2, &[Affine::V, Affine::U]).unwrap(), p);
    }

    #[test]
    fn binomial_shift() {
        let p = scalar_poly(1, &[([2, 0], 1)]);
        let s = p.substitute(1, &[Affine::new(1, 0, -2)]).unwrap();
        assert_eq!(s, scalar_poly(1, &[([2, 0], 1), ([1, 0], -4), ([0, 0], 4)]));
    }

    #[test]
    fn cap_is_enforced() {
        let p = scalar_poly(1, &[([5, 0], 1)]);
        assert!(matches!(
            p.mul_scalar_poly(&p),
            Err(Error::DegreeCapExceeded { degree: 10, cap: 8 })
        ));
        assert!(p.clone().with_cap(4).is_err());
        assert!(p.with_cap(12).unwrap().mul_scalar_poly(&scalar_poly(1, &[([5, 0], 1)])).is_ok());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = scalar_poly(1, &[([1, 0], 1)]);
        assert!(p.sub(&p).is_zero());
        assert!(p.sub(&p).terms().is_empty());
    }

    proptest! {
        #[test]
        fn substitution_commutes_with_evaluation(
            coeffs in prop::collection::vec(-5i64..5, 6),
            a in -3i64..3, b in -3i64..3, c in -4i64..4,
            a2 in -3i64..3, b2 in -3i64..3, c2 in -4i64..4,
            points in prop::collection::vec((-9i64..9, -9i64..9), 20),
        ) {
            let exps = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
            let terms: Vec<([u32; 2], i64)> = exps.iter().copied().zip(coeffs).collect();
            let p = scalar_poly(2, &terms);
            let m0 = Affine::new(a, b, c);
            let m1 = Affine::new(a2, b2, c2);
            let s = p.substitute(2, &[m0, m1]).unwrap();
            for (x, y) in points {
                let pt = [x, y];
                prop_assert_eq!(s.eval(pt), p.eval([m0.eval(pt), m1.eval(pt)]));
            }
        }
    }
}
