//! Completed Lie coalgebra, bialgebra and Yang-Baxter structures on
//! `L = A[t, t⁻¹]`, computed exactly on banded tensors.
//!
//! Slots are 0-based. A band of δ(a t^k) has total degree k − 2; r_L has the
//! single band −1.

use crate::algebra::{multiplication_operators, Algebra, MulOps};
use crate::bialgebra::{apply_delta_slot, coboundary_coproduct, Coalgebra};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{Matrix, Ten3};
use crate::poly::{Affine, BandPoly};
use crate::report::{Check, Report, Witness, MAX_WITNESSES};
use crate::scalar::Scalar;
use crate::yangbaxter::RTensor;

use super::banded::{apply_matrix_slot, slot_var, Banded, BandedTensor2, BandedTensor3};
use super::laurent::{laurent_bracket, LaurentVector};

/// Probe degrees used by the converse checks.
pub const DEFAULT_PROBES: [i64; 3] = [0, 1, 2];

/// Which slots the two factors of a bracket of two-slot tensors occupy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `[P₁₂, Q₁₃]`
    P12Q13,
    /// `[P₁₂, Q₂₃]`
    P12Q23,
    /// `[P₁₃, Q₂₃]`
    P13Q23,
}

/// `δ(a t^k) = Σ_i Σ (i+1)(a₁t^{−i−2}⊗a₂t^{k+i} − a₂t^{k+i}⊗a₁t^{−i−2})`,
/// i.e. band `k − 2` with `f(u) = (u − k + 1)·Δ(a) + (u + 1)·τΔ(a)`.
pub fn apply_delta_affine(x: &LaurentVector, delta: &Coalgebra) -> Result<BandedTensor2> {
    let f = delta.field();
    let mut out = Banded::zero(f, delta.dim());
    for (k, a) in x.terms() {
        let d = delta.delta(a);
        let straight = BandPoly::constant(f, 1, d.data().to_vec()).mul_affine(Affine::new(1, 0, 1 - k))?;
        let twisted = BandPoly::constant(f, 1, d.transpose().data().to_vec()).mul_affine(Affine::new(1, 0, 1))?;
        out.add_band(k - 2, straight.add(&twisted));
    }
    Ok(out)
}

fn twisted_coalgebra(delta: &Coalgebra) -> Coalgebra {
    Coalgebra::new(delta.basis().clone(), delta.consts().swap23()).expect("same shape")
}

/// `(δ⊗̂id)` for `slot == 0`, `(id⊗̂δ)` for `slot == 1`.
pub fn extend_delta_slot(t: &BandedTensor2, slot: usize, delta: &Coalgebra) -> Result<BandedTensor3> {
    assert!(slot < 2, "two-slot tensor");
    let n = t.dim();
    let twisted = twisted_coalgebra(delta);
    let split = |c: &[Scalar], co: &Coalgebra| -> Vec<Scalar> {
        let m = Matrix::from_vec(co.field(), n, n, c.to_vec()).expect("square coefficient");
        apply_delta_slot(&m, slot, co).data().to_vec()
    };
    let mut out = Banded::zero(t.field(), n);
    for (d, p) in t.bands() {
        // Slot 0 splits degree d − V into (U, ·); slot 1 splits u = U + V + 2.
        let (arg, w_straight, w_twisted) = if slot == 0 {
            (Affine::V, Affine::new(1, 1, 1 - d), Affine::new(1, 0, 1))
        } else {
            (Affine::new(1, 1, 2), Affine::new(-1, 0, -1), Affine::new(0, 1, 1))
        };
        let moved = p.substitute(2, &[arg])?;
        let straight = moved.map_coeffs(n * n * n, |c| split(c, delta)).mul_affine(w_straight)?;
        let twisted = moved.map_coeffs(n * n * n, |c| split(c, &twisted)).mul_affine(w_twisted)?;
        out.add_band(d - 2, straight.add(&twisted));
    }
    Ok(out)
}

/// `ad_x` on slot `slot`: `[a t^p, b t^q] = (p·L_a − q·R_a) b · t^{p+q−1}`.
pub fn ad_slot<const S: usize>(t: &Banded<S>, slot: usize, x: &LaurentVector, a: &Algebra) -> Result<Banded<S>> {
    assert!(slot < S, "slot out of range");
    let n = t.dim();
    let ops = multiplication_operators(a);
    let vars = S - 1;
    let mut out = Banded::zero(t.field(), n);
    for (p, xa) in x.terms() {
        let l = MulOps::combine(&ops.left, xa);
        let r = MulOps::combine(&ops.right, xa);
        let shift = p - 1;
        for (d, f) in t.bands() {
            let (moved, q) = if slot == 0 {
                let q = if S == 2 { Affine::new(-1, 0, *d) } else { Affine::new(-1, -1, *d) };
                (f.clone(), q)
            } else {
                let mut maps = vec![Affine::U, Affine::V];
                maps.truncate(vars);
                let var = slot_var(slot);
                let q = Affine::new(var.u, var.v, -shift);
                maps[slot - 1] = q;
                (f.substitute(vars, &maps)?, q)
            };
            let left = moved.map_coeffs(f.width(), |c| apply_matrix_slot(c, n, S, slot, &l));
            let right = moved.map_coeffs(f.width(), |c| apply_matrix_slot(c, n, S, slot, &r)).mul_affine(q)?;
            out.add_band(d + shift, left.scale(&a.field().from_i64(*p)).sub(&right));
        }
    }
    Ok(out)
}

/// `(ad_x⊗̂id + id⊗̂ad_x) t`.
pub fn ad_pair(t: &BandedTensor2, x: &LaurentVector, a: &Algebra) -> Result<BandedTensor2> {
    Ok(ad_slot(t, 0, x, a)?.add(&ad_slot(t, 1, x, a)?))
}

/// `δ + τ̂δ` at `x`.
pub fn skew_residual(x: &LaurentVector, delta: &Coalgebra) -> Result<BandedTensor2> {
    let t = apply_delta_affine(x, delta)?;
    Ok(t.add(&t.twist()?))
}

/// `(id⊗̂δ)δ − (τ̂⊗̂id)(id⊗̂δ)δ − (δ⊗̂id)δ` at `x`.
pub fn co_jacobi_residual(x: &LaurentVector, delta: &Coalgebra) -> Result<BandedTensor3> {
    let t = apply_delta_affine(x, delta)?;
    let right = extend_delta_slot(&t, 1, delta)?;
    let left = extend_delta_slot(&t, 0, delta)?;
    Ok(right.sub(&right.swap12()?).sub(&left))
}

/// `δ([x,y]) − (ad_x⊗̂id + id⊗̂ad_x)δ(y) + (ad_y⊗̂id + id⊗̂ad_y)δ(x)`.
pub fn cocycle_residual(a: &Algebra, delta: &Coalgebra, x: &LaurentVector, y: &LaurentVector) -> Result<BandedTensor2> {
    let lhs = apply_delta_affine(&laurent_bracket(x, y, a), delta)?;
    let dy = ad_pair(&apply_delta_affine(y, delta)?, x, a)?;
    let dx = ad_pair(&apply_delta_affine(x, delta)?, y, a)?;
    Ok(lhs.sub(&dy).add(&dx))
}

/// Evaluate `probe` on every item in parallel; `Ok(None)` means the identity
/// held there.
fn scan_banded<I, F>(name: &str, items: &[I], probe: F) -> Result<Check>
where
    I: Sync,
    F: Fn(&I) -> Result<Option<Witness>> + Sync + Send,
{
    let found: Vec<Option<Witness>> = exec::map_slice(items, probe).into_iter().collect::<Result<_>>()?;
    let witnesses: Vec<Witness> = found.into_iter().flatten().collect();
    let violations = witnesses.len();
    Ok(Check {
        name: name.to_string(),
        passed: violations == 0,
        evaluated: items.len(),
        violations,
        witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
        note: None,
    })
}

fn witness<const S: usize>(name: &str, at: Vec<String>, t: &Banded<S>, basis: &crate::linalg::Basis) -> Option<Witness> {
    (!t.is_zero()).then(|| Witness::new(name, at, t.residual_entries(basis)))
}

/// Skewsymmetry and co-Jacobi of δ on every `e_γ t^k`, `k ∈ probes`.
pub fn check_completed_lie_coalgebra(delta: &Coalgebra, probes: &[i64]) -> Result<Report> {
    let (n, f, basis) = (delta.dim(), delta.field(), delta.basis());
    let items: Vec<(usize, i64)> = (0..n).flat_map(|g| probes.iter().map(move |k| (g, *k))).collect();
    let at = |g: usize, k: i64| vec![basis.name(g).to_string(), format!("k={k}")];
    let mut report = Report::new("completed lie coalgebra");
    report.push(scan_banded("skewsymmetry", &items, |&(g, k)| {
        let t = skew_residual(&LaurentVector::basis(f, n, g, k), delta)?;
        Ok(witness("skewsymmetry", at(g, k), &t, basis))
    })?);
    report.push(scan_banded("co_jacobi", &items, |&(g, k)| {
        let t = co_jacobi_residual(&LaurentVector::basis(f, n, g, k), delta)?;
        Ok(witness("co_jacobi", at(g, k), &t, basis))
    })?);
    Ok(report)
}

/// The coalgebra laws plus the cocycle identity on all pairs
/// `(e_α t^j, e_β t^k)` with `j, k ∈ probes`.
pub fn check_completed_lie_bialgebra(a: &Algebra, delta: &Coalgebra, probes: &[i64]) -> Result<Report> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    if a.dim() != delta.dim() {
        return Err(Error::ShapeMismatch("algebra and coalgebra dimensions differ".into()));
    }
    let (n, f, basis) = (a.dim(), a.field(), a.basis());
    let mut report = Report::new("completed lie bialgebra");
    report.absorb("", check_completed_lie_coalgebra(delta, probes)?);
    let mut items = Vec::new();
    for x in 0..n {
        for j in probes {
            for y in 0..n {
                for k in probes {
                    items.push((x, *j, y, *k));
                }
            }
        }
    }
    report.push(scan_banded("cocycle", &items, |&(x, j, y, k)| {
        let t = cocycle_residual(a, delta, &LaurentVector::basis(f, n, x, j), &LaurentVector::basis(f, n, y, k))?;
        let at = vec![format!("{}@{j}", basis.name(x)), format!("{}@{k}", basis.name(y))];
        Ok(witness("cocycle", at, &t, basis))
    })?);
    Ok(report)
}

/// `r_L = Σ_i Σ_α x_α t^i ⊗ y_α t^{−i−1}`: the constant band −1.
pub fn affinize_r(a: &Algebra, r: &RTensor) -> Result<BandedTensor2> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    if r.matrix().rows() != a.dim() || !r.matrix().is_square() {
        return Err(Error::ShapeMismatch("r must be dim × dim".into()));
    }
    Ok(Banded::constant_band(-1, r.matrix()))
}

/// For bands `d1`, `d2`: the factors' band variables in the output's `(U, V)`,
/// and the weights of `c[l][r]` and `c[r][l]`.
fn bracket_weights(placement: Placement, d1: i64, d2: i64) -> ([Affine; 2], Affine, Affine) {
    match placement {
        // (d1 − u)·c[α][γ] − (d2 − u')·c[γ][α] with u = U, u' = V.
        Placement::P12Q13 => ([Affine::U, Affine::V], Affine::new(-1, 0, d1), Affine::new(0, 1, -d2)),
        // u·c[β][γ] − (d2 − u')·c[γ][β] with u = U + V + 1 − d2, u' = V.
        Placement::P12Q23 => ([Affine::new(1, 1, 1 - d2), Affine::V], Affine::new(1, 1, 1 - d2), Affine::new(0, 1, -d2)),
        // u·c[β][δ] − u'·c[δ][β] with u = U + V + 1 − d2, u' = d2 − U.
        Placement::P13Q23 => (
            [Affine::new(1, 1, 1 - d2), Affine::new(-1, 0, d2)],
            Affine::new(1, 1, 1 - d2),
            Affine::new(1, 0, -d2),
        ),
    }
}

/// `[P₁₂, Q₁₃]`, `[P₁₂, Q₂₃]` or `[P₁₃, Q₂₃]` in `L⊗̂L⊗̂L`.
pub fn bracket_placed(p: &BandedTensor2, q: &BandedTensor2, placement: Placement, a: &Algebra) -> Result<BandedTensor3> {
    let n = a.dim();
    let c = a.consts();
    let combine = |flip: bool| {
        move |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            let mut out = crate::linalg::vzero(a.field(), n * n * n);
            for (i, xv) in x.iter().enumerate() {
                if xv.is_zero() {
                    continue;
                }
                let (x1, x2) = (i / n, i % n);
                for (j, yv) in y.iter().enumerate() {
                    if yv.is_zero() {
                        continue;
                    }
                    let (y1, y2) = (j / n, j % n);
                    let (l, r, place): (usize, usize, [usize; 2]) = match placement {
                        Placement::P12Q13 => (x1, y1, [x2, y2]),
                        Placement::P12Q23 => (x2, y1, [x1, y2]),
                        Placement::P13Q23 => (x2, y2, [x1, y1]),
                    };
                    let (l, r) = if flip { (r, l) } else { (l, r) };
                    let xy = xv * yv;
                    for k in 0..n {
                        let w = c.get(l, r, k);
                        if w.is_zero() {
                            continue;
                        }
                        let idx = match placement {
                            Placement::P12Q13 => [k, place[0], place[1]],
                            Placement::P12Q23 => [place[0], k, place[1]],
                            Placement::P13Q23 => [place[0], place[1], k],
                        };
                        let flat = (idx[0] * n + idx[1]) * n + idx[2];
                        out[flat] = &out[flat] + &(&xy * w);
                    }
                }
            }
            out
        }
    };
    let mut out = Banded::zero(a.field(), n);
    for (d1, f) in p.bands() {
        for (d2, g) in q.bands() {
            let ([uf, ug], w_fwd, w_bwd) = bracket_weights(placement, *d1, *d2);
            let fs = f.substitute(2, &[uf])?;
            let gs = g.substitute(2, &[ug])?;
            let fwd = fs.product(&gs, n * n * n, combine(false))?.mul_affine(w_fwd)?;
            let bwd = fs.product(&gs, n * n * n, combine(true))?.mul_affine(w_bwd)?;
            out.add_band(d1 + d2 - 1, fwd.add(&bwd));
        }
    }
    Ok(out)
}

/// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]`.
pub fn cybe_residual(a: &Algebra, r_l: &BandedTensor2) -> Result<BandedTensor3> {
    let mut out = bracket_placed(r_l, r_l, Placement::P12Q13, a)?;
    out = out.add(&bracket_placed(r_l, r_l, Placement::P12Q23, a)?);
    Ok(out.add(&bracket_placed(r_l, r_l, Placement::P13Q23, a)?))
}

pub fn check_completed_cybe(a: &Algebra, r_l: &BandedTensor2) -> Result<Report> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    let basis = a.basis();
    let mut report = Report::new("completed classical yang-baxter equation");
    let skew = r_l.add(&r_l.twist()?);
    report.push(scan_banded("skewsymmetric", &[()], |_| Ok(witness("skewsymmetric", vec![], &skew, basis)))?);
    let res = cybe_residual(a, r_l)?;
    report.push(scan_banded("cybe", &[()], |_| Ok(witness("cybe", vec![], &res, basis)))?);
    Ok(report)
}

/// `δ(x) = (ad_x⊗̂id + id⊗̂ad_x) r_L`.
pub fn coboundary_delta(a: &Algebra, r_l: &BandedTensor2, x: &LaurentVector) -> Result<BandedTensor2> {
    ad_pair(r_l, x, a)
}

/// The δ of the affinized bialgebra `(A, ∘, −Δ_r)` against the coboundary δ
/// of `r_L`, on every `e_γ t^k` with `k ∈ probes`.
pub fn cross_check_coboundary_square(a: &Algebra, r: &RTensor, probes: &[i64]) -> Result<Report> {
    let delta_r = coboundary_coproduct(a, r)?;
    let minus = delta_r.scale(&-a.field().one());
    let r_l = affinize_r(a, r)?;
    let (n, f, basis) = (a.dim(), a.field(), a.basis());
    let items: Vec<(usize, i64)> = (0..n).flat_map(|g| probes.iter().map(move |k| (g, *k))).collect();
    let mut report = Report::new("coboundary commuting square");
    report.push(scan_banded("deltas_agree", &items, |&(g, k)| {
        let x = LaurentVector::basis(f, n, g, k);
        let diff = apply_delta_affine(&x, &minus)?.sub(&coboundary_delta(a, &r_l, &x)?);
        Ok(witness("deltas_agree", vec![basis.name(g).to_string(), format!("k={k}")], &diff, basis))
    })?);
    Ok(report)
}

/// The coefficient matrices of a two-slot tensor's band, evaluated at `u`.
pub fn band_matrix(t: &BandedTensor2, d: i64, u: i64) -> Matrix {
    let n = t.dim();
    let v = match t.band(d) {
        Some(p) => p.eval([u, 0]),
        None => crate::linalg::vzero(t.field(), n * n),
    };
    Matrix::from_vec(t.field(), n, n, v).expect("square")
}

/// The three-slot coefficient at `(d − U − V, U, V)`.
pub fn band_tensor(t: &BandedTensor3, d: i64, uv: [i64; 2]) -> Ten3 {
    let n = t.dim();
    let v = match t.band(d) {
        Some(p) => p.eval(uv),
        None => crate::linalg::vzero(t.field(), n * n * n),
    };
    Ten3::from_vec(t.field(), [n, n, n], v).expect("cube")
}
