//! Small named algebras used throughout the tests, the examples and the
//! self-test command.

use crate::algebra::{Algebra, Class, PreNovikovAlgebra};
use crate::bialgebra::Coalgebra;
use crate::linalg::{Basis, BilinearForm, Matrix, Ten3};
use crate::scalar::{Field, Scalar};
use crate::yangbaxter::RTensor;

/// `e1∘e1 = e1`, `e2∘e1 = e2`, other products zero.
pub fn novikov_2d(f: Field) -> Algebra {
    Algebra::from_entries(f, Basis::standard("e", 2), &[(0, 0, 0, 1), (1, 0, 1, 1)]).claim(Class::Novikov)
}

/// `Δ(e1) = λ e2⊗e2`, `Δ(e2) = 0`.
pub fn novikov_2d_coproduct(f: Field, lambda: &Scalar) -> Coalgebra {
    let mut d = Ten3::zeros(f, [2, 2, 2]);
    d.set(0, 1, 1, lambda.clone());
    Coalgebra::new(Basis::standard("e", 2), d).expect("shape")
}

/// One-dimensional `Δ(e) = e⊗e`.
pub fn diagonal_coproduct_1d(f: Field) -> Coalgebra {
    let mut d = Ten3::zeros(f, [1, 1, 1]);
    d.set(0, 0, 0, f.one());
    Coalgebra::new(Basis::new(["e"]).expect("basis"), d).expect("shape")
}

/// `e1⋄e2 = −2e1`, `e2⋄e1 = e1`, `e2⋄e2 = e2`.
pub fn quadratic_right_novikov_2d(f: Field) -> Algebra {
    Algebra::from_entries(f, Basis::standard("e", 2), &[(0, 1, 0, -2), (1, 0, 0, 1), (1, 1, 1, 1)])
        .claim(Class::RightNovikov)
}

/// The algebra above with the form `(e1,e2) = (e2,e1) = 1`.
pub fn quadratic_right_novikov_2d_with_form(f: Field) -> (Algebra, BilinearForm) {
    let form = BilinearForm::new(Matrix::from_i64(f, &[&[0, 1], &[1, 0]])).expect("form");
    (quadratic_right_novikov_2d(f), form)
}

/// `k[x]/(x^n)` on the basis `1, x, …, x^(n-1)` named `x0, x1, …`.
pub fn truncated_polynomials(f: Field, n: usize) -> Algebra {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            entries.push((i, j, i + j, 1));
        }
    }
    Algebra::from_entries(f, Basis::new((0..n).map(|i| format!("x{i}"))).expect("basis"), &entries).claim(Class::CommAssoc)
}

/// One-dimensional pre-Novikov algebra `e◁e = lt·e`, `e▷e = gt·e`.
pub fn pre_novikov_1d(f: Field, lt: i64, gt: i64) -> PreNovikovAlgebra {
    let left = Ten3::from_vec(f, [1, 1, 1], vec![f.from_i64(lt)]).expect("shape");
    let right = Ten3::from_vec(f, [1, 1, 1], vec![f.from_i64(gt)]).expect("shape");
    PreNovikovAlgebra::new(Basis::new(["e"]).expect("basis"), left, right).expect("shape")
}

/// Zinbiel algebra `e1·e1 = e2` with the derivation `D = diag(1, 2)`.
pub fn zinbiel_2d(f: Field) -> (Algebra, Matrix) {
    let a = Algebra::from_entries(f, Basis::standard("e", 2), &[(0, 0, 1, 1)]).claim(Class::Zinbiel);
    (a, Matrix::from_i64(f, &[&[1, 0], &[0, 2]]))
}

/// Three-dimensional Novikov algebra whose affinization is the centerless
/// Schrödinger-Virasoro algebra.
pub fn schrodinger_virasoro(f: Field) -> Algebra {
    let basis = Basis::new(["a", "b", "c"]).expect("basis");
    let mut c = Ten3::zeros(f, [3, 3, 3]);
    c.set(0, 0, 0, f.one());
    c.set(0, 1, 1, f.fraction(&1.into(), &2.into()).expect("1/2"));
    c.set(1, 0, 1, f.one());
    c.set(2, 0, 2, f.one());
    c.set(1, 1, 2, f.one());
    Algebra::new(basis, c).expect("shape").claim(Class::Novikov)
}

/// The algebra above with `r = b⊗c − c⊗b`.
pub fn schrodinger_virasoro_with_r(f: Field) -> (Algebra, RTensor) {
    let r = Matrix::from_i64(f, &[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
    (schrodinger_virasoro(f), RTensor::new(r))
}

/// `e∘e = e`, `e∘e* = −e*`, `e*∘e = e*`, `e*∘e* = 0` with `r = e⊗e* − e*⊗e`.
pub fn pre_novikov_lift_2d_with_r(f: Field) -> (Algebra, RTensor) {
    let a = Algebra::from_entries(f, Basis::new(["e", "e*"]).expect("basis"), &[(0, 0, 0, 1), (0, 1, 1, -1), (1, 0, 1, 1)])
        .claim(Class::Novikov);
    (a, RTensor::new(Matrix::from_i64(f, &[&[0, 1], &[-1, 0]])))
}

/// The one-dimensional pre-Novikov algebra `e◁e = e`, `e▷e = 0`.
pub fn unit_pre_novikov_1d(f: Field) -> PreNovikovAlgebra {
    pre_novikov_1d(f, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_satisfy_their_claims() {
        for f in [Field::Rational, Field::prime(7).unwrap()] {
            for a in [
                novikov_2d(f),
                quadratic_right_novikov_2d(f),
                truncated_polynomials(f, 3),
                zinbiel_2d(f).0,
                schrodinger_virasoro(f),
                pre_novikov_lift_2d_with_r(f).0,
            ] {
                assert!(a.claims_consistent(), "{:?}", a.basis().names());
            }
        }
    }

    #[test]
    fn truncated_polynomial_names() {
        assert_eq!(truncated_polynomials(Field::Rational, 3).basis().names(), ["x0", "x1", "x2"]);
    }
}
