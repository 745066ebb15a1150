//! Dense window evaluation: an independent oracle for the banded engine.
//!
//! Every construction here sums the defining infinite series term by term,
//! keeping the components whose slot degrees all lie in a support range.
//! Nothing is shared with the banded code paths except the structure
//! constants themselves. Callers pick a support wide enough that every
//! component inside their comparison window has all of its preimages in it.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::bialgebra::Coalgebra;
use crate::linalg::{vis_zero, vzero, Matrix};
use crate::report::{Check, Witness};
use crate::scalar::{Field, Scalar};

use super::banded::Banded;
use super::completed::Placement;
use super::laurent::LaurentVector;

/// Finitely many components of an `S`-slot tensor, keyed by slot degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTensor<const S: usize> {
    field: Field,
    dim: usize,
    entries: BTreeMap<[i64; S], Vec<Scalar>>,
}

impl<const S: usize> DenseTensor<S> {
    pub fn zero(field: Field, dim: usize) -> DenseTensor<S> {
        DenseTensor { field, dim, entries: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.dim.pow(S as u32)
    }

    pub fn entries(&self) -> &BTreeMap<[i64; S], Vec<Scalar>> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, degrees: [i64; S]) -> Vec<Scalar> {
        self.entries.get(&degrees).cloned().unwrap_or_else(|| vzero(self.field, self.width()))
    }

    pub fn add(&mut self, degrees: [i64; S], v: &[Scalar]) {
        if vis_zero(v) {
            return;
        }
        let w = self.width();
        let slot = self.entries.entry(degrees).or_insert_with(|| vzero(self.field, w));
        for (a, b) in slot.iter_mut().zip(v) {
            *a = &*a + b;
        }
        if vis_zero(slot) {
            self.entries.remove(&degrees);
        }
    }

    /// Add `s` at a single cell.
    pub fn add_cell(&mut self, degrees: [i64; S], cell: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let w = self.width();
        let slot = self.entries.entry(degrees).or_insert_with(|| vzero(self.field, w));
        slot[cell] = &slot[cell] + s;
        if vis_zero(slot) {
            self.entries.remove(&degrees);
        }
    }

    pub fn plus(&self, other: &DenseTensor<S>) -> DenseTensor<S> {
        let mut out = self.clone();
        for (d, v) in &other.entries {
            out.add(*d, v);
        }
        out
    }

    pub fn minus(&self, other: &DenseTensor<S>) -> DenseTensor<S> {
        let mut out = self.clone();
        for (d, v) in &other.entries {
            let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
            out.add(*d, &neg);
        }
        out
    }

    /// Components with every slot degree in `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> DenseTensor<S> {
        let entries = self
            .entries
            .iter()
            .filter(|(d, _)| d.iter().all(|x| (lo..=hi).contains(x)))
            .map(|(d, v)| (*d, v.clone()))
            .collect();
        DenseTensor { field: self.field, dim: self.dim, entries }
    }

    /// Output slot `s` carries input slot `perm[s]`.
    pub fn permute(&self, perm: [usize; S]) -> DenseTensor<S> {
        let n = self.dim;
        let mut out = DenseTensor::zero(self.field, n);
        for (d, v) in &self.entries {
            let degrees: [i64; S] = std::array::from_fn(|s| d[perm[s]]);
            for (cell, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let src = split(cell, n, S);
                let dst: Vec<usize> = (0..S).map(|s| src[perm[s]]).collect();
                out.add_cell(degrees, join(&dst, n), x);
            }
        }
        out
    }
}

fn split(cell: usize, n: usize, slots: usize) -> Vec<usize> {
    (0..slots).map(|s| (cell / n.pow((slots - 1 - s) as u32)) % n).collect()
}

fn join(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, i| acc * n + i)
}

/// `[e_i t^p, e_j t^q] = p(e_i∘e_j) − q(e_j∘e_i)` at degree `p + q − 1`.
fn basis_bracket(a: &Algebra, i: usize, p: i64, j: usize, q: i64) -> Vec<Scalar> {
    let (fwd, bwd) = (a.mul_basis(i, j), a.mul_basis(j, i));
    fwd.iter().zip(bwd).map(|(x, y)| &x.mul_i64(p) - &y.mul_i64(q)).collect()
}

fn in_range(x: i64, support: (i64, i64)) -> bool {
    (support.0..=support.1).contains(&x)
}

/// `δ(x) = Σ_i Σ (i+1)(a₁t^{−i−2}⊗a₂t^{k+i} − a₂t^{k+i}⊗a₁t^{−i−2})`.
pub fn dense_delta(x: &LaurentVector, delta: &Coalgebra, support: (i64, i64)) -> DenseTensor<2> {
    let n = delta.dim();
    let mut out = DenseTensor::zero(delta.field(), n);
    for (k, a) in x.terms() {
        let d = delta.delta(a);
        for i in (support.0 - 2 - k.abs())..=(support.1 + 2 + k.abs()) {
            let (p, q) = (-i - 2, k + i);
            if !in_range(p, support) || !in_range(q, support) || i + 1 == 0 {
                continue;
            }
            for al in 0..n {
                for be in 0..n {
                    let w = d.get(al, be);
                    if w.is_zero() {
                        continue;
                    }
                    let c = w.mul_i64(i + 1);
                    out.add_cell([p, q], al * n + be, &c);
                    out.add_cell([q, p], be * n + al, &-&c);
                }
            }
        }
    }
    out
}

/// Apply `δ` to slot `slot` (0 or 1) of a two-slot tensor, keeping the
/// components with every slot degree in `support`.
pub fn dense_delta_slot(t: &DenseTensor<2>, slot: usize, delta: &Coalgebra, support: (i64, i64)) -> DenseTensor<3> {
    let n = t.dim;
    let f = t.field;
    let mut out = DenseTensor::zero(f, n);
    for (d, v) in &t.entries {
        if !in_range(d[1 - slot], support) {
            continue;
        }
        for (cell, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (i, j) = (cell / n, cell % n);
            let (split, keep) = if slot == 0 { (i, j) } else { (j, i) };
            let e = LaurentVector::basis(f, n, split, d[slot]);
            for (dd, w) in &dense_delta(&e, delta, support).entries {
                for (c2, y) in w.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let (a, b) = (c2 / n, c2 % n);
                    let z = x * y;
                    if slot == 0 {
                        out.add_cell([dd[0], dd[1], d[1]], join(&[a, b, keep], n), &z);
                    } else {
                        out.add_cell([d[0], dd[0], dd[1]], join(&[keep, a, b], n), &z);
                    }
                }
            }
        }
    }
    out
}

/// `ad_x` applied to slot `slot`.
pub fn dense_ad_slot<const S: usize>(t: &DenseTensor<S>, slot: usize, x: &LaurentVector, a: &Algebra) -> DenseTensor<S> {
    let n = t.dim;
    let mut out = DenseTensor::zero(t.field, n);
    for (d, v) in &t.entries {
        for (cell, y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let idx = split(cell, n, S);
            for (p, xa) in x.terms() {
                for (i, s) in xa.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    let br = basis_bracket(a, i, *p, idx[slot], d[slot]);
                    let mut degrees = *d;
                    degrees[slot] = p + d[slot] - 1;
                    for (k, c) in br.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut dst = idx.clone();
                        dst[slot] = k;
                        out.add_cell(degrees, join(&dst, n), &(&(s * c) * y));
                    }
                }
            }
        }
    }
    out
}

/// `(ad_x⊗id + id⊗ad_x) t`.
pub fn dense_ad(t: &DenseTensor<2>, x: &LaurentVector, a: &Algebra) -> DenseTensor<2> {
    dense_ad_slot(t, 0, x, a).plus(&dense_ad_slot(t, 1, x, a))
}

/// `r_L = Σ_i Σ r[α][β] e_α t^i ⊗ e_β t^{−i−1}`.
pub fn dense_affinize_r(r: &Matrix, support: (i64, i64)) -> DenseTensor<2> {
    let n = r.rows();
    let mut out = DenseTensor::zero(r.field(), n);
    for i in support.0..=support.1 {
        if in_range(-i - 1, support) {
            out.add([i, -i - 1], r.data());
        }
    }
    out
}

pub fn dense_bracket(p: &DenseTensor<2>, q: &DenseTensor<2>, placement: Placement, a: &Algebra) -> DenseTensor<3> {
    let n = p.dim;
    let mut out = DenseTensor::zero(p.field, n);
    for (dp, vp) in &p.entries {
        for (dq, vq) in &q.entries {
            for (c1, x) in vp.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (c2, y) in vq.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let (x1, x2, y1, y2) = (c1 / n, c1 % n, c2 / n, c2 % n);
                    let xy = x * y;
                    let (br, degrees, place): (Vec<Scalar>, [i64; 3], Box<dyn Fn(usize) -> [usize; 3]>) = match placement {
                        Placement::P12Q13 => (
                            basis_bracket(a, x1, dp[0], y1, dq[0]),
                            [dp[0] + dq[0] - 1, dp[1], dq[1]],
                            Box::new(move |k| [k, x2, y2]),
                        ),
                        Placement::P12Q23 => (
                            basis_bracket(a, x2, dp[1], y1, dq[0]),
                            [dp[0], dp[1] + dq[0] - 1, dq[1]],
                            Box::new(move |k| [x1, k, y2]),
                        ),
                        Placement::P13Q23 => (
                            basis_bracket(a, x2, dp[1], y2, dq[1]),
                            [dp[0], dq[0], dp[1] + dq[1] - 1],
                            Box::new(move |k| [x1, y1, k]),
                        ),
                    };
                    for (k, c) in br.iter().enumerate() {
                        if !c.is_zero() {
                            out.add_cell(degrees, join(&place(k), n), &(c * &xy));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Dense values of the completed identities, each evaluated on a support
/// range and restricted to the requested window.
pub mod identities {
    use super::*;

    fn support(lo: i64, hi: i64, reach: i64) -> (i64, i64) {
        let span = (hi - lo).max(0) + reach + 4;
        (lo - span, hi + span)
    }

    fn reach(x: &LaurentVector) -> i64 {
        x.terms().keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn delta(x: &LaurentVector, delta: &Coalgebra, lo: i64, hi: i64) -> DenseTensor<2> {
        super::dense_delta(x, delta, (lo, hi))
    }

    pub fn skew(x: &LaurentVector, delta: &Coalgebra, lo: i64, hi: i64) -> DenseTensor<2> {
        let t = super::dense_delta(x, delta, (lo, hi));
        t.plus(&t.permute([1, 0]))
    }

    /// `(id⊗δ)δ − (τ⊗id)(id⊗δ)δ − (δ⊗id)δ` at `x`.
    pub fn co_jacobi(x: &LaurentVector, delta: &Coalgebra, lo: i64, hi: i64) -> DenseTensor<3> {
        // The split slot of δ(x) has degree at most two window widths away.
        let t = super::dense_delta(x, delta, support(2 * lo, 2 * hi, reach(x)));
        let right = dense_delta_slot(&t, 1, delta, (lo, hi));
        let left = dense_delta_slot(&t, 0, delta, (lo, hi));
        right.minus(&right.permute([1, 0, 2])).minus(&left)
    }

    /// `δ([x,y]) − (ad_x⊗id + id⊗ad_x)δ(y) + (ad_y⊗id + id⊗ad_y)δ(x)`.
    pub fn cocycle(a: &Algebra, delta: &Coalgebra, x: &LaurentVector, y: &LaurentVector, lo: i64, hi: i64) -> DenseTensor<2> {
        let s = support(lo, hi, reach(x) + reach(y));
        let xy = super::super::laurent::laurent_bracket(x, y, a);
        let lhs = super::dense_delta(&xy, delta, s);
        let dy = dense_ad(&super::dense_delta(y, delta, s), x, a);
        let dx = dense_ad(&super::dense_delta(x, delta, s), y, a);
        lhs.minus(&dy).plus(&dx).restrict(lo, hi)
    }

    pub fn affinize_r(r: &Matrix, lo: i64, hi: i64) -> DenseTensor<2> {
        dense_affinize_r(r, (lo, hi))
    }

    /// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]` for `r_L`.
    pub fn cybe(a: &Algebra, r: &Matrix, lo: i64, hi: i64) -> DenseTensor<3> {
        let r_l = dense_affinize_r(r, support(lo, hi, 2));
        let mut out = dense_bracket(&r_l, &r_l, Placement::P12Q13, a);
        out = out.plus(&dense_bracket(&r_l, &r_l, Placement::P12Q23, a));
        out = out.plus(&dense_bracket(&r_l, &r_l, Placement::P13Q23, a));
        out.restrict(lo, hi)
    }

    /// `(ad_x⊗id + id⊗ad_x) r_L`.
    pub fn coboundary(a: &Algebra, r: &Matrix, x: &LaurentVector, lo: i64, hi: i64) -> DenseTensor<2> {
        let r_l = dense_affinize_r(r, support(lo, hi, reach(x)));
        dense_ad(&r_l, x, a).restrict(lo, hi)
    }
}

/// Compare a banded value with its dense evaluation on `[lo, hi]`, and the
/// zero verdicts on a window wide enough to expose any nonzero band.
pub fn oracle_window_check<const S: usize>(
    name: &str,
    banded: &Banded<S>,
    dense: impl Fn(i64, i64) -> DenseTensor<S>,
    lo: i64,
    hi: i64,
) -> Check {
    let mut witnesses = Vec::new();
    let window = banded.window_truncate(lo, hi);
    let oracle = dense(lo, hi).restrict(lo, hi);
    if window != oracle {
        let keys: std::collections::BTreeSet<[i64; S]> =
            window.entries().keys().chain(oracle.entries().keys()).copied().collect();
        for k in keys {
            if window.get(k) != oracle.get(k) {
                witnesses.push(Witness::new(
                    "window_mismatch",
                    k.iter().map(|d| d.to_string()).collect(),
                    vec![],
                ));
            }
        }
    }
    let w = banded.sufficient_radius().max(hi.abs()).max(lo.abs());
    let wide = dense(-w, w).restrict(-w, w);
    if wide.is_zero() != banded.is_zero() {
        witnesses.push(Witness::new(
            "zero_verdict",
            vec![format!("radius {w}")],
            vec![(banded.is_zero().to_string(), "banded zero".into())],
        ));
    }
    let violations = witnesses.len();
    witnesses.truncate(crate::report::MAX_WITNESSES);
    Check { name: name.to_string(), passed: violations == 0, evaluated: 1, violations, witnesses, note: None }
}
