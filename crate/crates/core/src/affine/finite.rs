//! Affinization with a finite-dimensional right Novikov factor B.
//!
//! Elements of A⊗B use the row-major product basis: `e_i⊗b_s` has index
//! `i * dim(B) + s`.

use crate::algebra::{Algebra, Class};
use crate::bialgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{BilinearForm, Matrix, Ten3};
use crate::report::{Check, Report, Witness};
use crate::yangbaxter::{placed, RTensor};

/// `[a⊗b₁, c⊗b₂] = a∘c ⊗ b₁⋄b₂ − c∘a ⊗ b₂⋄b₁`.
pub fn induced_lie_finite(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    if !Class::RightNovikov.holds(b) {
        return Err(Error::NotRightNovikov);
    }
    let l = induced_bracket(a, b)?;
    assert!(Class::Lie.holds(&l), "induced bracket of a Novikov and a right Novikov algebra is Lie");
    Ok(l.claim(Class::Lie))
}

/// The bracket above without validating either factor.
pub fn induced_bracket(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (n, m) = (a.dim(), b.dim());
    let (ca, cb) = (a.consts(), b.consts());
    let d = n * m;
    let mut c = Ten3::zeros(a.field(), [d, d, d]);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (fwd, bwd) = (ca.get(i, j, k), ca.get(j, i, k));
                if fwd.is_zero() && bwd.is_zero() {
                    continue;
                }
                for s in 0..m {
                    for t in 0..m {
                        for u in 0..m {
                            let v = &(fwd * cb.get(s, t, u)) - &(bwd * cb.get(t, s, u));
                            if !v.is_zero() {
                                c.add_at(i * m + s, j * m + t, k * m + u, &v);
                            }
                        }
                    }
                }
            }
        }
    }
    Algebra::new(a.basis().tensor(b.basis()), c)
}

/// The coproduct of B dual to its product: `(Δ_B(a), b⊗c) = (a, b⋄c)`.
pub fn form_coproduct(b: &Algebra, form: &BilinearForm) -> Result<Coalgebra> {
    if form.dim() != b.dim() {
        return Err(Error::ShapeMismatch("form and algebra dimensions differ".into()));
    }
    let g = form.matrix();
    let ginv = g.inverse().ok_or(Error::DegenerateForm)?;
    let m = b.dim();
    let f = b.field();
    let deltas: Vec<Matrix> = (0..m)
        .map(|a| {
            let pairing = Matrix::from_fn(f, m, m, |x, y| {
                let mut acc = f.zero();
                for k in 0..m {
                    acc = &acc + &(b.consts().get(x, y, k) * g.get(a, k));
                }
                acc
            });
            ginv.transpose().mul(&pairing).mul(&ginv)
        })
        .collect();
    Coalgebra::from_matrices(b.basis().clone(), &deltas)
}

/// `δ(a⊗b) = (id − τ)(Δ_A(a) • Δ_B(b))` with
/// `(x₁⊗x₂) • (y₁⊗y₂) = (x₁⊗y₁) ⊗ (x₂⊗y₂)`.
pub fn induced_lie_coproduct(delta_a: &Coalgebra, delta_b: &Coalgebra) -> Result<Coalgebra> {
    if delta_a.field() != delta_b.field() {
        return Err(Error::FieldMismatch);
    }
    let (n, m) = (delta_a.dim(), delta_b.dim());
    let (da, db) = (delta_a.consts(), delta_b.consts());
    let d = n * m;
    let mut out = Ten3::zeros(delta_a.field(), [d, d, d]);
    for ([i, p, q], va) in da.nonzero_entries() {
        for ([s, x, y], vb) in db.nonzero_entries() {
            let v = &va * &vb;
            out.add_at(i * m + s, p * m + x, q * m + y, &v);
            out.add_at(i * m + s, q * m + y, p * m + x, &-&v);
        }
    }
    Coalgebra::new(delta_a.basis().tensor(delta_b.basis()), out)
}

/// `(a₁⊗b₁, a₂⊗b₂) = B_A(a₁, a₂)·B_B(b₁, b₂)`.
pub fn tensor_form(on_a: &BilinearForm, on_b: &BilinearForm) -> BilinearForm {
    BilinearForm::new(on_a.matrix().kron(on_b.matrix())).expect("square")
}

/// `Σ_p Σ_α (x_α⊗e_p) ⊗ (y_α⊗f_p)` with `{f_p}` the basis of B dual to
/// `{e_p}` under the form, `(e_q, f_p) = δ_qp`.
pub fn lift_r(r: &RTensor, form_b: &BilinearForm) -> Result<RTensor> {
    let ginv = form_b.matrix().inverse().ok_or(Error::DegenerateForm)?;
    Ok(RTensor::new(r.matrix().kron(&ginv.transpose())))
}

/// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]` for a Lie bracket.
pub fn cybe_residual(lie: &Algebra, r: &Matrix) -> Ten3 {
    let c = lie.consts();
    placed(c, r, (0, 1), r, (0, 2))
        .add(&placed(c, r, (0, 1), r, (1, 2)))
        .add(&placed(c, r, (0, 2), r, (1, 2)))
}

pub fn check_cybe(lie: &Algebra, r: &RTensor) -> Result<Report> {
    if !Class::Lie.holds(lie) {
        return Err(Error::NotLie);
    }
    let res = cybe_residual(lie, r.matrix());
    let entries: Vec<(String, String)> =
        res.nonzero_entries().into_iter().map(|(idx, v)| (v.to_string(), lie.basis().label(&idx))).collect();
    let mut check = Check::verdict("cybe", entries.is_empty(), None);
    check.violations = entries.len();
    if !entries.is_empty() {
        check.witnesses.push(Witness::new("cybe", vec![], entries.into_iter().take(crate::report::MAX_WITNESSES).collect()));
    }
    let mut report = Report::new("classical yang-baxter equation");
    report.push(check);
    report.push(Check::verdict("skewsymmetric", r.is_skewsymmetric(), None));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_lie;
    use crate::fixtures::*;
    use crate::linalg::Basis;
    use crate::sampling::*;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn novikov_2d_with_quadratic_b() {
        let l = induced_lie_finite(&novikov_2d(q()), &quadratic_right_novikov_2d(q())).unwrap();
        assert_eq!(l.dim(), 4);
        assert!(check_lie(&l).passed());
        assert_eq!(l.basis().name(1), "e1@e2");
    }

    #[test]
    fn zero_b_gives_abelian() {
        let b = Algebra::zero(q(), Basis::new(["t"]).unwrap());
        let l = induced_lie_finite(&schrodinger_virasoro(q()), &b).unwrap();
        assert!(l.consts().is_zero());
    }

    #[test]
    fn non_novikov_factor_is_refused_and_breaks_jacobi() {
        let a = Algebra::from_entries(q(), Basis::standard("e", 2), &[(0, 0, 1, 1), (1, 1, 0, 1)]);
        assert!(!a.is_novikov());
        let b = quadratic_right_novikov_2d(q());
        assert_eq!(induced_lie_finite(&a, &b), Err(Error::NotNovikov));
        assert!(!check_lie(&induced_bracket(&a, &b).unwrap()).passed());
    }

    #[test]
    fn form_coproduct_is_dual_to_product() {
        let (b, form) = quadratic_right_novikov_2d_with_form(q());
        let c = form_coproduct(&b, &form).unwrap();
        for a in 0..2 {
            for x in 0..2 {
                for y in 0..2 {
                    let lhs = form.matrix().transpose().mul(&c.delta_basis(a)).mul(form.matrix());
                    let rhs = form.eval(&b.e(a), &b.mul(&b.e(x), &b.e(y)));
                    assert_eq!(lhs.get(x, y), &rhs);
                }
            }
        }
        let degenerate = BilinearForm::new(Matrix::zeros(q(), 2, 2)).unwrap();
        assert_eq!(form_coproduct(&b, &degenerate), Err(Error::DegenerateForm));
    }

    #[test]
    fn induced_coproduct_is_skew() {
        let f = Field::prime(5).unwrap();
        for seed in 0..10 {
            let (_, ca) = random_bialgebra_sample(f, seed);
            let (b, form) = quadratic_right_novikov_2d_with_form(f);
            let db = form_coproduct(&b, &form).unwrap();
            let delta = induced_lie_coproduct(&ca, &db).unwrap();
            assert!(delta.consts().add(&delta.consts().swap23()).is_zero());
        }
    }

    #[test]
    fn nybe_solutions_lift_to_cybe_solutions() {
        let (b, form) = quadratic_right_novikov_2d_with_form(q());
        for (a, r) in [schrodinger_virasoro_with_r(q()), pre_novikov_lift_2d_with_r(q())] {
            let l = induced_lie_finite(&a, &b).unwrap();
            let lifted = lift_r(&r, &form).unwrap();
            assert!(lifted.is_skewsymmetric());
            assert!(check_cybe(&l, &lifted).unwrap().passed());
        }
    }

    #[test]
    fn non_solutions_and_non_lie_inputs() {
        let (b, form) = quadratic_right_novikov_2d_with_form(q());
        let a = novikov_2d(q());
        let l = induced_lie_finite(&a, &b).unwrap();
        let r = RTensor::new(Matrix::from_i64(q(), &[&[0, 1], &[-1, 0]]));
        let lifted = lift_r(&r, &form).unwrap();
        let nybe = crate::yangbaxter::check_nybe(&a, &r).unwrap().passed();
        assert!(!nybe);
        assert!(!check_cybe(&l, &lifted).unwrap().passed());
        let bad = Algebra::from_entries(q(), Basis::standard("e", 2), &[(0, 0, 1, 1), (1, 1, 0, 1)]);
        assert_eq!(check_cybe(&bad, &r), Err(Error::NotLie));
    }

    #[test]
    fn kron_form_entries() {
        let (_, form) = quadratic_right_novikov_2d_with_form(q());
        let id = BilinearForm::new(Matrix::identity(q(), 2)).unwrap();
        let t = tensor_form(&id, &form);
        assert_eq!(t.get(0, 1), &q().one());
        assert_eq!(t.get(1, 2), &q().zero());
        assert_eq!(t.get(2, 3), &q().one());
    }
}
