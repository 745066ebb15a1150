//! Graded bilinear forms on `L = A[t, t⁻¹]`: quasi-Frobenius structures and
//! Frobenius functions.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::BilinearForm;
use crate::report::{Check, Report, Witness};
use crate::scalar::Scalar;
use crate::yangbaxter::{check_nybe, check_quasi_frobenius, form_to_r};

use super::completed::{affinize_r, check_completed_cybe};
use super::laurent::{laurent_bracket, LaurentVector};

/// `(a tⁱ, b tʲ)_L = ω(a, b)·δ_{i+j+1,0}`, extended bilinearly.
pub fn graded_form(omega: &BilinearForm, x: &LaurentVector, y: &LaurentVector) -> Scalar {
    let mut acc = omega.field().zero();
    for (i, a) in x.terms() {
        if let Some(b) = y.terms().get(&(-i - 1)) {
            acc = &acc + &omega.eval(a, b);
        }
    }
    acc
}

/// Skewsymmetry, nondegeneracy and `([x,y],z) + ([z,x],y) + ([y,z],x) = 0`
/// on `x = a t^m`, `y = b t^n`, `z = c t^{−m−n}` with `m, n ∈ {0, 1}`. The
/// residual is linear in `(m, n)`, and every other degree of `z` pairs to zero.
pub fn graded_quasi_frobenius(a: &Algebra, omega: &BilinearForm) -> Result<Report> {
    if omega.dim() != a.dim() {
        return Err(Error::ShapeMismatch("form and algebra dimensions differ".into()));
    }
    if !omega.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let (n, f, basis) = (a.dim(), a.field(), a.basis());
    let mut items = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for m in 0..=1 {
                    for k in 0..=1 {
                        items.push((x, y, z, m, k));
                    }
                }
            }
        }
    }
    let mut report = Report::new("graded quasi-frobenius");
    report.push(Check::verdict("skewsymmetric", omega.is_skewsymmetric(), None));
    report.push(Check::verdict("nondegenerate", true, None));
    report.push(Check::scan("graded_cocycle", &items, |&(x, y, z, m, k)| {
        let ex = LaurentVector::basis(f, n, x, m);
        let ey = LaurentVector::basis(f, n, y, k);
        let ez = LaurentVector::basis(f, n, z, -m - k);
        let t1 = graded_form(omega, &laurent_bracket(&ex, &ey, a), &ez);
        let t2 = graded_form(omega, &laurent_bracket(&ez, &ex, a), &ey);
        let t3 = graded_form(omega, &laurent_bracket(&ey, &ez, a), &ex);
        let v = &(&t1 + &t2) + &t3;
        if v.is_zero() {
            vec![]
        } else {
            let at = vec![
                format!("{}@{m}", basis.name(x)),
                format!("{}@{k}", basis.name(y)),
                format!("{}@{}", basis.name(z), -m - k),
            ];
            vec![Witness::new("graded_cocycle", at, vec![(v.to_string(), "1".into())])]
        }
    }));
    Ok(report)
}

/// The four equivalent conditions on a Novikov algebra with a nondegenerate form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusVerdicts {
    /// `(A, ω)` is quasi-Frobenius.
    pub quasi_frobenius: bool,
    /// The ω-dual tensor `r` is a skewsymmetric NYBE solution.
    pub nybe_solution: bool,
    /// `r_L` is a skewsymmetric completed CYBE solution.
    pub completed_cybe: bool,
    /// `(L, (·,·)_L)` is a quasi-Frobenius graded Lie algebra.
    pub graded: bool,
}

impl FrobeniusVerdicts {
    pub fn agree(&self) -> bool {
        let v = [self.quasi_frobenius, self.nybe_solution, self.completed_cybe, self.graded];
        v.iter().all(|x| *x == v[0])
    }

    pub fn all_true(&self) -> bool {
        self.agree() && self.quasi_frobenius
    }
}

pub fn quasi_frobenius_verdicts(a: &Algebra, omega: &BilinearForm) -> Result<FrobeniusVerdicts> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    let graded = graded_quasi_frobenius(a, omega)?.passed();
    let r = form_to_r(omega)?;
    Ok(FrobeniusVerdicts {
        quasi_frobenius: check_quasi_frobenius(a, omega).passed(),
        nybe_solution: check_nybe(a, &r)?.passed(),
        completed_cybe: check_completed_cybe(a, &affinize_r(a, &r)?)?.passed(),
        graded,
    })
}

/// Passes iff the four verdicts agree.
pub fn quasi_frobenius_equivalence(a: &Algebra, omega: &BilinearForm) -> Result<Report> {
    let v = quasi_frobenius_verdicts(a, omega)?;
    let note = format!(
        "quasi_frobenius={} nybe_solution={} completed_cybe={} graded={}",
        v.quasi_frobenius, v.nybe_solution, v.completed_cybe, v.graded
    );
    let mut report = Report::new("quasi-frobenius equivalence");
    report.push(Check::verdict("verdicts_agree", v.agree(), Some(note)));
    Ok(report)
}

/// `F([x, y]) = (x, y)_L` for all `x = e_i t^p`, `y = e_j t^q` with `p, q ∈ [lo, hi]`,
/// where `F(e_i t^p) = functional(i, p)`.
pub fn check_frobenius_function(
    a: &Algebra,
    omega: &BilinearForm,
    functional: &(dyn Fn(usize, i64) -> Scalar + Sync),
    lo: i64,
    hi: i64,
) -> Report {
    let (n, f, basis) = (a.dim(), a.field(), a.basis());
    let mut items = Vec::new();
    for i in 0..n {
        for p in lo..=hi {
            for j in 0..n {
                for q in lo..=hi {
                    items.push((i, p, j, q));
                }
            }
        }
    }
    let mut report = Report::new("frobenius function");
    report.push(Check::scan("frobenius", &items, |&(i, p, j, q)| {
        let x = LaurentVector::basis(f, n, i, p);
        let y = LaurentVector::basis(f, n, j, q);
        let mut lhs = f.zero();
        for (d, v) in laurent_bracket(&x, &y, a).terms() {
            for (k, c) in v.iter().enumerate() {
                lhs = &lhs + &(c * &functional(k, *d));
            }
        }
        let v = &lhs - &graded_form(omega, &x, &y);
        if v.is_zero() {
            vec![]
        } else {
            let at = vec![format!("{}@{p}", basis.name(i)), format!("{}@{q}", basis.name(j))];
            vec![Witness::new("frobenius", at, vec![(v.to_string(), "1".into())])]
        }
    }));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::linalg::{Basis, Matrix};
    use crate::sampling::*;
    use crate::scalar::Field;
    use crate::yangbaxter::r_to_form;

    fn q() -> Field {
        Field::Rational
    }

    fn lift_form() -> (Algebra, BilinearForm) {
        let (a, r) = pre_novikov_lift_2d_with_r(q());
        (a, r_to_form(&r).unwrap())
    }

    #[test]
    fn lift_pairing_is_the_graded_dual() {
        // (e_i, f^j)_L = δ_ij with f^j = e* t^{−j−1}.
        let (_, omega) = lift_form();
        for i in -3..=3 {
            for j in -3..=3 {
                let e = LaurentVector::basis(q(), 2, 0, i);
                let fj = LaurentVector::basis(q(), 2, 1, -j - 1);
                assert_eq!(graded_form(&omega, &e, &fj), q().from_i64(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn lift_is_quasi_frobenius_in_all_four_senses() {
        let (a, omega) = lift_form();
        let v = quasi_frobenius_verdicts(&a, &omega).unwrap();
        assert!(v.all_true(), "{v:?}");
        assert!(quasi_frobenius_equivalence(&a, &omega).unwrap().passed());
    }

    #[test]
    fn lift_frobenius_function() {
        // F(f^i) = δ_{i,1}, i.e. F(e* t^{−2}) = 1 and F vanishes elsewhere.
        let (a, omega) = lift_form();
        let functional = |k: usize, d: i64| q().from_i64(i64::from(k == 1 && d == -2));
        assert!(check_frobenius_function(&a, &omega, &functional, -3, 3).passed());
        let wrong = |k: usize, d: i64| q().from_i64(i64::from(k == 1 && d == -1));
        assert!(!check_frobenius_function(&a, &omega, &wrong, -3, 3).passed());
    }

    #[test]
    fn symmetric_form_fails_everything() {
        let (a, _) = lift_form();
        let sym = BilinearForm::new(Matrix::from_i64(q(), &[&[0, 1], &[1, 0]])).unwrap();
        let v = quasi_frobenius_verdicts(&a, &sym).unwrap();
        assert!(v.agree() && !v.quasi_frobenius, "{v:?}");
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let (a, _) = lift_form();
        let z = BilinearForm::new(Matrix::zeros(q(), 2, 2)).unwrap();
        assert_eq!(graded_quasi_frobenius(&a, &z), Err(Error::DegenerateForm));
        assert_eq!(quasi_frobenius_verdicts(&a, &z), Err(Error::DegenerateForm));
    }

    #[test]
    fn non_invariant_skew_forms_fail_consistently() {
        let f = Field::prime(5).unwrap();
        let mut seen = [0usize; 2];
        for seed in 0..40 {
            let (a, omega) = random_form_sample(f, seed);
            if !omega.is_nondegenerate() {
                continue;
            }
            let v = quasi_frobenius_verdicts(&a, &omega).unwrap();
            assert!(v.agree(), "seed {seed}: {v:?}");
            seen[usize::from(v.quasi_frobenius)] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
    }

    #[test]
    fn one_dimensional_forms() {
        let a = Algebra::zero(q(), Basis::new(["e"]).unwrap());
        let omega = BilinearForm::new(Matrix::identity(q(), 1)).unwrap();
        let v = quasi_frobenius_verdicts(&a, &omega).unwrap();
        assert!(v.agree() && !v.quasi_frobenius);
    }
}
