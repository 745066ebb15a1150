//! Representations `(V, l, r)` of Novikov algebras, their duals and
//! semidirect products.
//!
//! Dual spaces use the literal dual basis, and the dual of an operator M is
//! `M* = −Mᵀ` in that basis.

use crate::algebra::{multiplication_operators, Algebra, Class, MulOps};
use crate::error::{Error, Result};
use crate::linalg::{vsub, Basis, Matrix, Ten3};
use crate::report::{residual_entries, Check, Report, Witness};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: Algebra,
    module: Basis,
    l: Vec<Matrix>,
    r: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: Algebra, module: Basis, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Representation> {
        let n = algebra.dim();
        let m = module.dim();
        if l.len() != n || r.len() != n {
            return Err(Error::ShapeMismatch(format!("need {n} action matrices per side")));
        }
        for x in l.iter().chain(&r) {
            if x.rows() != m || x.cols() != m {
                return Err(Error::ShapeMismatch(format!("action matrices must be {m}x{m}")));
            }
            if x.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Representation { algebra, module, l, r })
    }

    /// `(A, L, R)`.
    pub fn adjoint(a: &Algebra) -> Representation {
        let ops = multiplication_operators(a);
        Representation::new(a.clone(), a.basis().clone(), ops.left, ops.right).expect("adjoint shape")
    }

    /// Zero actions on a module with the given basis.
    pub fn zero(a: &Algebra, module: Basis) -> Representation {
        let m = module.dim();
        let z = vec![Matrix::zeros(a.field(), m, m); a.dim()];
        Representation::new(a.clone(), module, z.clone(), z).expect("zero shape")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn module(&self) -> &Basis {
        &self.module
    }

    pub fn module_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn l_mats(&self) -> &[Matrix] {
        &self.l
    }

    pub fn r_mats(&self) -> &[Matrix] {
        &self.r
    }

    pub fn l(&self, x: &[Scalar]) -> Matrix {
        MulOps::combine(&self.l, x)
    }

    pub fn r(&self, x: &[Scalar]) -> Matrix {
        MulOps::combine(&self.r, x)
    }

    pub fn is_representation(&self) -> bool {
        let n = self.algebra.dim();
        (0..n).all(|a| (0..n).all(|b| REP_IDENTITIES.iter().all(|(_, f)| f(self, a, b).is_zero())))
    }
}

type RepIdentity = fn(&Representation, usize, usize) -> Matrix;

const REP_IDENTITIES: [(&str, RepIdentity); 4] = [
    ("l_commutator", |p, a, b| {
        let alg = &p.algebra;
        let comm = vsub(alg.mul_basis(a, b), alg.mul_basis(b, a));
        p.l(&comm).sub(&p.l[a].commutator(&p.l[b]))
    }),
    ("l_r_commutator", |p, a, b| {
        let ab = p.algebra.mul_basis(a, b).to_vec();
        let lhs = p.l[a].commutator(&p.r[b]);
        let rhs = p.r(&ab).sub(&p.r[b].mul(&p.r[a]));
        lhs.sub(&rhs)
    }),
    ("l_product", |p, a, b| {
        let ab = p.algebra.mul_basis(a, b).to_vec();
        p.l(&ab).sub(&p.r[b].mul(&p.l[a]))
    }),
    ("r_commute", |p, a, b| p.r[a].commutator(&p.r[b])),
];

fn matrix_residual(m: &Matrix, module: &Basis) -> Vec<(String, String)> {
    let c = m.cols();
    residual_entries(m.data(), |k| format!("{}<-{}", module.name(k / c), module.name(k % c)))
}

/// The four operator identities on all basis pairs.
pub fn check_representation(rep: &Representation) -> Report {
    let n = rep.algebra.dim();
    let basis = rep.algebra.basis();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut report = Report::new("representation check");
    for (name, f) in REP_IDENTITIES {
        report.push(Check::scan(name, &pairs, |&(a, b)| {
            let res = f(rep, a, b);
            if res.is_zero() {
                vec![]
            } else {
                vec![Witness::new(
                    name,
                    vec![basis.name(a).to_string(), basis.name(b).to_string()],
                    matrix_residual(&res, &rep.module),
                )]
            }
        }));
    }
    report
}

/// `(V*, l* + r*, −r*)`.
pub fn dual_representation(rep: &Representation) -> Result<Representation> {
    if !rep.is_representation() {
        return Err(Error::NotRepresentation);
    }
    let out = dual_representation_unchecked(rep);
    if !out.is_representation() {
        return Err(Error::NotRepresentation);
    }
    Ok(out)
}

pub(crate) fn dual_representation_unchecked(rep: &Representation) -> Representation {
    let l = rep.l.iter().zip(&rep.r).map(|(l, r)| l.add(r).star()).collect();
    let r = rep.r.iter().map(|r| r.star().neg()).collect();
    Representation::new(rep.algebra.clone(), rep.module.dual(), l, r).expect("dual shape")
}

/// Product `(a+u)•(b+v) = a∘b + l(a)v + r(b)u` on basis(A) followed by basis(V),
/// without validating the representation.
pub fn semidirect_constants(rep: &Representation) -> Result<Algebra> {
    let n = rep.algebra.dim();
    let m = rep.module_dim();
    let f = rep.algebra.field();
    let c = rep.algebra.consts();
    let d = n + m;
    let mut out = Ten3::zeros(f, [d, d, d]);
    for a in 0..n {
        for b in 0..n {
            for g in 0..n {
                out.set(a, b, g, c.get(a, b, g).clone());
            }
        }
        for k in 0..m {
            for row in 0..m {
                out.set(a, n + k, n + row, rep.l[a].get(row, k).clone());
                out.set(n + k, a, n + row, rep.r[a].get(row, k).clone());
            }
        }
    }
    Algebra::new(rep.algebra.basis().concat(&disjoint_module_names(rep))?, out)
}

/// Module names, primed where they clash with the algebra's names.
fn disjoint_module_names(rep: &Representation) -> Basis {
    disjoint_names(rep.algebra.basis(), &rep.module)
}

/// `names` with a `'` appended to every name already in `taken`.
pub(crate) fn disjoint_names(taken: &Basis, names: &Basis) -> Basis {
    let names = names.names().iter().map(|n| {
        let mut n = n.clone();
        while taken.index_of(&n).is_some() {
            n.push('\'');
        }
        n
    });
    Basis::new(names.collect::<Vec<_>>()).expect("names stay distinct")
}

pub fn semidirect_product(rep: &Representation) -> Result<Algebra> {
    if !rep.is_representation() {
        return Err(Error::NotRepresentation);
    }
    let out = semidirect_constants(rep)?;
    if !out.is_novikov() {
        return Err(Error::NotNovikov);
    }
    Ok(out.claim(Class::Novikov))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::sampling::*;
    use crate::scalar::Field;
    use proptest::prelude::*;

    #[test]
    fn adjoint_of_novikov_2d() {
        let a = novikov_2d(Field::Rational);
        assert!(check_representation(&Representation::adjoint(&a)).passed());
        let z = Representation::zero(&a, Basis::standard("v", 3));
        assert!(check_representation(&z).passed());
    }

    #[test]
    fn swapped_actions_fail() {
        let a = novikov_2d(Field::Rational);
        let adj = Representation::adjoint(&a);
        let swapped = Representation::new(a, adj.module().clone(), adj.r_mats().to_vec(), adj.l_mats().to_vec()).unwrap();
        assert!(!check_representation(&swapped).passed());
    }

    #[test]
    fn dual_of_adjoint_is_coadjoint() {
        let a = novikov_2d(Field::Rational);
        let ops = multiplication_operators(&a);
        let d = dual_representation(&Representation::adjoint(&a)).unwrap();
        assert!(check_representation(&d).passed());
        for i in 0..2 {
            assert_eq!(d.l_mats()[i], ops.left[i].star().add(&ops.right[i].star()));
            assert_eq!(d.r_mats()[i], ops.right[i].star().neg());
            // Applying the transpose-negate map twice returns the original matrix.
            assert_eq!(ops.left[i].star().star(), ops.left[i]);
        }
        let z = Representation::zero(&a, Basis::standard("v", 2));
        assert!(dual_representation(&z).unwrap().l_mats().iter().all(Matrix::is_zero));
    }

    #[test]
    fn semidirect_of_the_unit_pre_novikov_dual() {
        // e∘e = e with l = 0, r = 1 on a one-dimensional module, dualized.
        let f = Field::Rational;
        let a = Algebra::from_entries(f, Basis::new(["e"]).unwrap(), &[(0, 0, 0, 1)]);
        let v = Basis::new(["e"]).unwrap();
        let rep = Representation::new(a.clone(), v, vec![Matrix::zeros(f, 1, 1)], vec![Matrix::identity(f, 1)]).unwrap();
        let d = dual_representation(&rep).unwrap();
        let s = semidirect_product(&d).unwrap();
        assert_eq!(s.basis().names(), ["e", "e*"]);
        assert_eq!(s.mul_basis(0, 0), &[f.one(), f.zero()]);
        assert_eq!(s.mul_basis(0, 1), &[f.zero(), f.from_i64(-1)]);
        assert_eq!(s.mul_basis(1, 0), &[f.zero(), f.one()]);
        assert_eq!(s.mul_basis(1, 1), &[f.zero(), f.zero()]);

        // The dual of the adjoint acts by −(L + R), doubling the coefficient.
        let coadj = semidirect_product(&dual_representation(&Representation::adjoint(&a)).unwrap()).unwrap();
        assert_eq!(coadj.mul_basis(0, 1), &[f.zero(), f.from_i64(-2)]);
    }

    #[test]
    fn zero_rep_gives_direct_sum() {
        let a = novikov_2d(Field::Rational);
        let s = semidirect_product(&Representation::zero(&a, Basis::standard("v", 1))).unwrap();
        assert_eq!(s.dim(), 3);
        assert!((0..3).all(|i| s.mul_basis(i, 2).iter().all(Scalar::is_zero)));
    }

    proptest! {
        #[test]
        fn semidirect_novikov_iff_representation(seed in any::<u64>()) {
            let f = Field::prime(5).unwrap();
            let rep = random_representation(f, seed);
            let s = semidirect_constants(&rep).unwrap();
            prop_assert_eq!(s.is_novikov(), rep.is_representation());
            prop_assert_eq!(check_representation(&rep).passed(), rep.is_representation());
        }

        #[test]
        fn duals_of_valid_reps_are_valid(seed in any::<u64>()) {
            let f = Field::prime(5).unwrap();
            let a = random_novikov(f, 2, seed);
            let adj = Representation::adjoint(&a);
            prop_assert!(adj.is_representation());
            prop_assert!(dual_representation(&adj).unwrap().is_representation());
        }
    }
}
