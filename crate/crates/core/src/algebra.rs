//! Algebras given by structure constants, identity checkers for every class
//! used in the crate, and the constructions between classes (opposite,
//! Gelfand-type derivation products, pre-Novikov splittings).
//!
//! `c[α][β][γ]` is the coefficient of `e_γ` in `e_α ∘ e_β`. All checkers test
//! multilinear identities on basis tuples only, which is complete.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{unit, vadd, vaxpy, vis_zero, vsub, vzero, Basis, Matrix, Ten3};
use crate::report::{residual_entries, Check, Report, Witness};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Novikov,
    RightNovikov,
    Lie,
    CommAssoc,
    Zinbiel,
}

impl Class {
    pub const ALL: [Class; 5] = [Class::Novikov, Class::RightNovikov, Class::Lie, Class::CommAssoc, Class::Zinbiel];

    pub fn name(&self) -> &'static str {
        match self {
            Class::Novikov => "novikov",
            Class::RightNovikov => "right_novikov",
            Class::Lie => "lie",
            Class::CommAssoc => "comm_assoc",
            Class::Zinbiel => "zinbiel",
        }
    }

    pub fn parse(s: &str) -> Option<Class> {
        Class::ALL.into_iter().find(|c| c.name() == s)
    }

    fn identities(&self) -> &'static [Identity<Algebra>] {
        match self {
            Class::Novikov => NOVIKOV,
            Class::RightNovikov => RIGHT_NOVIKOV,
            Class::Lie => LIE,
            Class::CommAssoc => COMM_ASSOC,
            Class::Zinbiel => ZINBIEL,
        }
    }

    pub fn check(&self, a: &Algebra) -> Report {
        run_identities(&format!("{} check", self.name()), a, a.basis(), self.identities())
    }

    /// Boolean verdict with early exit; same identities as [`Class::check`].
    pub fn holds(&self, a: &Algebra) -> bool {
        identities_hold(a, a.dim(), self.identities())
    }
}

/// `x·y` for the bilinear product with constants `c`.
pub fn bilinear(c: &Ten3, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = c.dims()[2];
    let mut out = vzero(c.field(), n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            vaxpy(&mut out, &(xi * yj), c.fiber(i, j));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Algebra {
    basis: Basis,
    c: Ten3,
    claims: BTreeSet<Class>,
}

/// Equality of basis and product; claims are not compared.
impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.basis == other.basis && self.c == other.c
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(basis: Basis, c: Ten3) -> Result<Algebra> {
        let n = basis.dim();
        if c.dims() != [n, n, n] {
            return Err(Error::ShapeMismatch(format!(
                "structure constants of shape {:?} for a basis of dimension {n}",
                c.dims()
            )));
        }
        Ok(Algebra { basis, c, claims: BTreeSet::new() })
    }

    pub fn zero(field: Field, basis: Basis) -> Algebra {
        let n = basis.dim();
        Algebra::new(basis, Ten3::zeros(field, [n, n, n])).expect("zero algebra")
    }

    /// Algebra from integer entries `(α, β, γ, value)` meaning `e_α∘e_β ∋ value·e_γ`.
    pub fn from_entries(field: Field, basis: Basis, entries: &[(usize, usize, usize, i64)]) -> Algebra {
        let n = basis.dim();
        let mut c = Ten3::zeros(field, [n, n, n]);
        for &(a, b, g, v) in entries {
            c.add_at(a, b, g, &field.from_i64(v));
        }
        Algebra::new(basis, c).expect("entry shape")
    }

    /// Record an advisory class claim. Claims are never trusted by the
    /// constructions; [`Algebra::claims_consistent`] re-verifies them.
    pub fn claim(mut self, class: Class) -> Algebra {
        self.claims.insert(class);
        self
    }

    pub fn claims(&self) -> &BTreeSet<Class> {
        &self.claims
    }

    pub fn claims_consistent(&self) -> bool {
        self.claims.iter().all(|c| c.holds(self))
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn consts(&self) -> &Ten3 {
        &self.c
    }

    pub fn field(&self) -> Field {
        self.c.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn e(&self, i: usize) -> Vec<Scalar> {
        unit(self.field(), self.dim(), i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        bilinear(&self.c, x, y)
    }

    /// `e_i ∘ e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[Scalar] {
        self.c.fiber(i, j)
    }

    /// `x ⋆ y = x∘y + y∘x`.
    pub fn star(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        vadd(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn is_novikov(&self) -> bool {
        Class::Novikov.holds(self)
    }

    pub fn with_basis(&self, basis: Basis) -> Result<Algebra> {
        Algebra::new(basis, self.c.clone())
    }

    /// Same product in the basis `f_j = Σ_i P[i][j] e_i`; P must be invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let pinv = p.inverse().ok_or(Error::DegenerateForm)?;
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| p.column(j)).collect();
        let mut c = Ten3::zeros(self.field(), [n, n, n]);
        for a in 0..n {
            for b in 0..n {
                let prod = pinv.apply(&self.mul(&cols[a], &cols[b]));
                for (g, v) in prod.into_iter().enumerate() {
                    c.set(a, b, g, v);
                }
            }
        }
        Algebra::new(self.basis.clone(), c)
    }
}

/// A named multilinear identity evaluated on basis tuples.
pub struct Identity<T: 'static> {
    pub name: &'static str,
    pub arity: usize,
    pub eval: fn(&T, &[usize]) -> Vec<Scalar>,
}

fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

pub(crate) fn run_identities<T: Sync>(title: &str, s: &T, basis: &Basis, ids: &[Identity<T>]) -> Report {
    let mut report = Report::new(title);
    for id in ids {
        let items = tuples(basis.dim(), id.arity);
        report.push(Check::scan(id.name, &items, |t| {
            let res = (id.eval)(s, t);
            if vis_zero(&res) {
                vec![]
            } else {
                let at = t.iter().map(|&i| basis.name(i).to_string()).collect();
                vec![Witness::new(id.name, at, residual_entries(&res, |k| basis.name(k).to_string()))]
            }
        }));
    }
    report
}

pub(crate) fn identities_hold<T>(s: &T, n: usize, ids: &[Identity<T>]) -> bool {
    ids.iter().all(|id| tuples(n, id.arity).iter().all(|t| vis_zero(&(id.eval)(s, t))))
}

fn basis3(a: &Algebra, t: &[usize]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    (a.e(t[0]), a.e(t[1]), a.e(t[2]))
}

fn assoc(a: &Algebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
    vsub(&a.mul(&a.mul(x, y), z), &a.mul(x, &a.mul(y, z)))
}

const NOVIKOV: &[Identity<Algebra>] = &[
    Identity {
        name: "left_symmetry",
        arity: 3,
        eval: |a, t| {
            let (x, y, z) = basis3(a, t);
            vsub(&assoc(a, &x, &y, &z), &assoc(a, &y, &x, &z))
        },
    },
    Identity {
        name: "right_commutativity",
        arity: 3,
        eval: |a, t| {
            let (x, y, z) = basis3(a, t);
            vsub(&a.mul(&a.mul(&x, &y), &z), &a.mul(&a.mul(&x, &z), &y))
        },
    },
];

const RIGHT_NOVIKOV: &[Identity<Algebra>] = &[
    Identity {
        name: "right_symmetry",
        arity: 3,
        eval: |a, t| {
            let (x, y, z) = basis3(a, t);
            vsub(&assoc(a, &x, &y, &z), &assoc(a, &x, &z, &y))
        },
    },
    Identity {
        name: "left_commutativity",
        arity: 3,
        eval: |a, t| {
            let (x, y, z) = basis3(a, t);
            vsub(&a.mul(&x, &a.mul(&y, &z)), &a.mul(&y, &a.mul(&x, &z)))
        },
    },
];

const LIE: &[Identity<Algebra>] = &[
    Identity {
        name: "alternating",
        arity: 1,
        eval: |a, t| a.mul_basis(t[0], t[0]).to_vec(),
    },
    Identity {
        name: "skewsymmetry",
        arity: 2,
        eval: |a, t| vadd(a.mul_basis(t[0], t[1]), a.mul_basis(t[1], t[0])),
    },
    Identity {
        name: "jacobi",
        arity: 3,
        eval: |a, t| {
            let (x, y, z) = basis3(a, t);
            let s = vadd(&a.mul(&a.mul(&x, &y), &z), &a.mul(&a.mul(&y, &z), &x));
            vadd(&s, &a.mul(&a.mul(&z, &x), &y))
        },
    },
];

const COMM_ASSOC: &[Identity<Algebra>] = &[
    Identity {
        name: "commutativity",
        arity: 2,
        eval: |a, t| vsub(a.mul_basis(t[0], t[1]), a.mul_basis(t[1], t[0])),
    },
    Identity {
        name: "associativity",
        arity: 3,
        eval: |a, t| {
            let (x, y, z) = basis3(a, t);
            assoc(a, &x, &y, &z)
        },
    },
];

const ZINBIEL: &[Identity<Algebra>] = &[Identity {
    name: "zinbiel",
    arity: 3,
    eval: |a, t| {
        let (x, y, z) = basis3(a, t);
        let lhs = a.mul(&x, &a.mul(&y, &z));
        let rhs = vadd(&a.mul(&a.mul(&y, &x), &z), &a.mul(&a.mul(&x, &y), &z));
        vsub(&lhs, &rhs)
    },
}];

pub fn check_novikov(a: &Algebra) -> Report {
    Class::Novikov.check(a)
}

pub fn check_right_novikov(a: &Algebra) -> Report {
    Class::RightNovikov.check(a)
}

pub fn check_lie(a: &Algebra) -> Report {
    Class::Lie.check(a)
}

pub fn check_comm_assoc(a: &Algebra) -> Report {
    Class::CommAssoc.check(a)
}

pub fn check_zinbiel(a: &Algebra) -> Report {
    Class::Zinbiel.check(a)
}

/// `a ⋄ b := b ∘ a`.
pub fn opposite(a: &Algebra) -> Algebra {
    let c = a.consts().permute([1, 0, 2]);
    Algebra::new(a.basis().clone(), c).expect("opposite shape")
}

/// The commutative product `a ⋆ b = a∘b + b∘a`.
pub fn star_product(a: &Algebra) -> Algebra {
    let c = a.consts().add(&a.consts().permute([1, 0, 2]));
    Algebra::new(a.basis().clone(), c).expect("star shape")
}

/// Left, right and star multiplication operators, one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulOps {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub star: Vec<Matrix>,
}

impl MulOps {
    /// Operator of a general element: `Σ x_i ops[i]`.
    pub fn combine(ops: &[Matrix], x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(ops[0].field(), ops[0].rows(), ops[0].cols());
        for (m, s) in ops.iter().zip(x) {
            if !s.is_zero() {
                out = out.add(&m.scale(s));
            }
        }
        out
    }
}

pub fn multiplication_operators(a: &Algebra) -> MulOps {
    let n = a.dim();
    let f = a.field();
    let c = a.consts();
    let left: Vec<Matrix> = (0..n).map(|x| Matrix::from_fn(f, n, n, |g, b| c.get(x, b, g).clone())).collect();
    let right: Vec<Matrix> = (0..n).map(|x| Matrix::from_fn(f, n, n, |g, b| c.get(b, x, g).clone())).collect();
    let star = left.iter().zip(&right).map(|(l, r)| l.add(r)).collect();
    MulOps { left, right, star }
}

/// Two products ◁ (`left`) and ▷ (`right`) on one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreNovikovAlgebra {
    basis: Basis,
    left: Ten3,
    right: Ten3,
}

impl PreNovikovAlgebra {
    pub fn new(basis: Basis, left: Ten3, right: Ten3) -> Result<PreNovikovAlgebra> {
        let n = basis.dim();
        if left.dims() != [n, n, n] || right.dims() != [n, n, n] {
            return Err(Error::ShapeMismatch("pre-Novikov constants must be n x n x n".into()));
        }
        Ok(PreNovikovAlgebra { basis, left, right })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    /// Constants of ◁.
    pub fn left_consts(&self) -> &Ten3 {
        &self.left
    }

    /// Constants of ▷.
    pub fn right_consts(&self) -> &Ten3 {
        &self.right
    }

    pub fn lt(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        bilinear(&self.left, x, y)
    }

    pub fn gt(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        bilinear(&self.right, x, y)
    }

    fn e(&self, i: usize) -> Vec<Scalar> {
        unit(self.field(), self.dim(), i)
    }
}

fn basis3p(p: &PreNovikovAlgebra, t: &[usize]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    (p.e(t[0]), p.e(t[1]), p.e(t[2]))
}

const PRE_NOVIKOV: &[Identity<PreNovikovAlgebra>] = &[
    Identity {
        name: "gt_gt_exchange",
        arity: 3,
        eval: |p, t| {
            let (x, y, z) = basis3p(p, t);
            let lhs = p.gt(&x, &p.gt(&y, &z));
            let xy = vadd(&p.gt(&x, &y), &p.lt(&x, &y));
            let yx = vadd(&p.gt(&y, &x), &p.lt(&y, &x));
            let rhs = vsub(&vadd(&p.gt(&xy, &z), &p.gt(&y, &p.gt(&x, &z))), &p.gt(&yx, &z));
            vsub(&lhs, &rhs)
        },
    },
    Identity {
        name: "gt_lt_exchange",
        arity: 3,
        eval: |p, t| {
            let (x, y, z) = basis3p(p, t);
            let lhs = p.gt(&x, &p.lt(&y, &z));
            let xz = vadd(&p.lt(&x, &z), &p.gt(&x, &z));
            let rhs = vsub(&vadd(&p.lt(&p.gt(&x, &y), &z), &p.lt(&y, &xz)), &p.lt(&p.lt(&y, &x), &z));
            vsub(&lhs, &rhs)
        },
    },
    Identity {
        name: "sum_gt_exchange",
        arity: 3,
        eval: |p, t| {
            let (x, y, z) = basis3p(p, t);
            let xy = vadd(&p.lt(&x, &y), &p.gt(&x, &y));
            vsub(&p.gt(&xy, &z), &p.lt(&p.gt(&x, &z), &y))
        },
    },
    Identity {
        name: "lt_right_commutativity",
        arity: 3,
        eval: |p, t| {
            let (x, y, z) = basis3p(p, t);
            vsub(&p.lt(&p.lt(&x, &y), &z), &p.lt(&p.lt(&x, &z), &y))
        },
    },
];

pub fn check_pre_novikov(p: &PreNovikovAlgebra) -> Report {
    run_identities("pre_novikov check", p, p.basis(), PRE_NOVIKOV)
}

/// Only the first two pre-Novikov identities.
pub fn check_l_dendriform(p: &PreNovikovAlgebra) -> Report {
    run_identities("l_dendriform check", p, p.basis(), &PRE_NOVIKOV[..2])
}

pub fn is_pre_novikov(p: &PreNovikovAlgebra) -> bool {
    identities_hold(p, p.dim(), PRE_NOVIKOV)
}

/// `x∘y = x◁y + x▷y`.
pub fn associated_novikov(p: &PreNovikovAlgebra) -> Result<Algebra> {
    if !is_pre_novikov(p) {
        return Err(Error::NotPreNovikov);
    }
    let a = Algebra::new(p.basis.clone(), p.left.add(&p.right))?;
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    Ok(a.claim(Class::Novikov))
}

/// An algebra with a linear endomorphism meant to be a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationData {
    pub algebra: Algebra,
    pub d: Matrix,
}

impl DerivationData {
    pub fn new(algebra: Algebra, d: Matrix) -> Result<DerivationData> {
        let n = algebra.dim();
        if d.rows() != n || d.cols() != n {
            return Err(Error::ShapeMismatch("derivation must be n x n".into()));
        }
        Ok(DerivationData { algebra, d })
    }

    /// `D(a·b) = D(a)·b + a·D(b)` on all basis pairs.
    pub fn is_derivation(&self) -> bool {
        let a = &self.algebra;
        let n = a.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (a.e(i), a.e(j));
                let lhs = self.d.apply(&a.mul(&x, &y));
                let rhs = vadd(&a.mul(&self.d.apply(&x), &y), &a.mul(&x, &self.d.apply(&y)));
                lhs == rhs
            })
        })
    }

    fn derived_product(&self, f: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> Ten3 {
        let n = self.algebra.dim();
        let mut c = Ten3::zeros(self.algebra.field(), [n, n, n]);
        for i in 0..n {
            for j in 0..n {
                for (g, v) in f(&self.algebra.e(i), &self.algebra.e(j)).into_iter().enumerate() {
                    c.set(i, j, g, v);
                }
            }
        }
        c
    }
}

fn require_comm_assoc_derivation(d: &DerivationData) -> Result<()> {
    if !Class::CommAssoc.holds(&d.algebra) {
        return Err(Error::NotCommAssoc);
    }
    if !d.is_derivation() {
        return Err(Error::NotDerivation);
    }
    Ok(())
}

/// `a∘b := a·D(b)`.
pub fn gelfand_novikov(d: &DerivationData) -> Result<Algebra> {
    require_comm_assoc_derivation(d)?;
    let a = &d.algebra;
    let c = d.derived_product(|x, y| a.mul(x, &d.d.apply(y)));
    let out = Algebra::new(a.basis().clone(), c)?;
    if !out.is_novikov() {
        return Err(Error::NotNovikov);
    }
    Ok(out.claim(Class::Novikov))
}

/// `a⋄b := D(a)·b`.
pub fn gelfand_right_novikov(d: &DerivationData) -> Result<Algebra> {
    require_comm_assoc_derivation(d)?;
    let a = &d.algebra;
    let c = d.derived_product(|x, y| a.mul(&d.d.apply(x), y));
    let out = Algebra::new(a.basis().clone(), c)?;
    if !Class::RightNovikov.holds(&out) {
        return Err(Error::NotRightNovikov);
    }
    Ok(out.claim(Class::RightNovikov))
}

/// `a◁b := D(b)·a`, `a▷b := a·D(b)` on a Zinbiel algebra with a derivation.
pub fn zinbiel_pre_novikov(d: &DerivationData) -> Result<PreNovikovAlgebra> {
    if !Class::Zinbiel.holds(&d.algebra) {
        return Err(Error::NotZinbiel);
    }
    if !d.is_derivation() {
        return Err(Error::NotDerivation);
    }
    let a = &d.algebra;
    let left = d.derived_product(|x, y| a.mul(&d.d.apply(y), x));
    let right = d.derived_product(|x, y| a.mul(x, &d.d.apply(y)));
    let p = PreNovikovAlgebra::new(a.basis().clone(), left, right)?;
    if !is_pre_novikov(&p) {
        return Err(Error::NotPreNovikov);
    }
    Ok(p)
}

/// Negated product, handy for perturbation tests.
pub fn negate(a: &Algebra) -> Algebra {
    Algebra::new(a.basis().clone(), a.consts().neg()).expect("shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::sampling::*;
    use proptest::prelude::*;

    #[test]
    fn novikov_2d_example_passes() {
        let a = novikov_2d(Field::Rational);
        assert!(check_novikov(&a).passed());
        assert!(check_novikov(&Algebra::zero(Field::Rational, Basis::standard("e", 3))).passed());
    }

    #[test]
    fn left_symmetry_violation_is_located() {
        // Only e1∘e2 = e1. Hand expansion over the 8 triples: left symmetry
        // fails at (e1,e2,e2): (e1∘e2)∘e2 − e1∘(e2∘e2) − (e2∘e1)∘e2 + e2∘(e1∘e2) = e1.
        let a = Algebra::from_entries(Field::Rational, Basis::standard("e", 2), &[(0, 1, 0, 1)]);
        let r = check_novikov(&a);
        assert!(!r.passed());
        let ls = r.check("left_symmetry").unwrap();
        assert!(ls.witnesses.iter().any(|w| w.at == ["e1", "e2", "e2"]));
        let w = ls.witnesses.iter().find(|w| w.at == ["e1", "e2", "e2"]).unwrap();
        assert_eq!(w.residual, vec![("1".to_string(), "e1".to_string())]);
    }

    #[test]
    fn right_novikov_examples() {
        assert!(check_right_novikov(&quadratic_right_novikov_2d(Field::Rational)).passed());
        for lambda in [-3, 0, 1, 7] {
            let a = Algebra::from_entries(Field::Rational, Basis::standard("e", 1), &[(0, 0, 0, lambda)]);
            assert!(check_right_novikov(&a).passed());
        }
    }

    #[test]
    fn dual_numbers_are_comm_assoc() {
        let a = truncated_polynomials(Field::Rational, 2);
        assert!(check_comm_assoc(&a).passed());
        assert!(!check_lie(&a).passed());
    }

    #[test]
    fn opposite_examples() {
        let a = novikov_2d(Field::Rational);
        let op = opposite(&a);
        assert!(check_right_novikov(&op).passed());
        assert_eq!(opposite(&op), a);
        let comm = truncated_polynomials(Field::Rational, 3);
        assert_eq!(opposite(&comm), comm);
    }

    #[test]
    fn star_and_operators() {
        let f = Field::Rational;
        let a = novikov_2d(f);
        let s = star_product(&a);
        assert_eq!(s.mul_basis(0, 0), &[f.from_i64(2), f.zero()]);
        assert_eq!(s.mul_basis(0, 1), &[f.zero(), f.one()]);
        let ops = multiplication_operators(&a);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(ops.left[x].apply(&a.e(y)), a.mul_basis(x, y));
                assert_eq!(ops.right[x].apply(&a.e(y)), a.mul_basis(y, x));
            }
        }
        let z = multiplication_operators(&Algebra::zero(f, Basis::standard("e", 2)));
        assert!(z.left.iter().chain(&z.right).all(Matrix::is_zero));
        let comm = truncated_polynomials(f, 3);
        assert_eq!(star_product(&comm).consts(), &comm.consts().scale(&f.from_i64(2)));
    }

    #[test]
    fn pre_novikov_examples() {
        let f = Field::Rational;
        let p = pre_novikov_1d(f, 1, 0);
        assert!(check_pre_novikov(&p).passed());
        assert!(check_pre_novikov(&pre_novikov_1d(f, 0, 0)).passed());
        let bad = pre_novikov_1d(f, 0, 1);
        let r = check_pre_novikov(&bad);
        assert!(!r.check("sum_gt_exchange").unwrap().passed);
        let n = associated_novikov(&p).unwrap();
        assert_eq!(n.mul_basis(0, 0), &[f.one()]);
        assert!(associated_novikov(&pre_novikov_1d(f, 0, 0)).unwrap().consts().is_zero());
        assert_eq!(associated_novikov(&bad), Err(Error::NotPreNovikov));
        assert!(check_l_dendriform(&p).passed());
    }

    #[test]
    fn gelfand_on_truncated_polynomials() {
        let f = Field::Rational;
        let a = truncated_polynomials(f, 3);
        // d/dx does not preserve the ideal (x³): d/dx(x·x²) = 0 but x²+2x² ≠ 0.
        let ddx = Matrix::from_i64(f, &[&[0, 1, 0], &[0, 0, 2], &[0, 0, 0]]);
        assert!(!DerivationData::new(a.clone(), ddx).unwrap().is_derivation());
        // x·d/dx on span{1, x, x²}.
        let d = Matrix::from_i64(f, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let data = DerivationData::new(a.clone(), d).unwrap();
        assert!(data.is_derivation());
        assert!(check_novikov(&gelfand_novikov(&data).unwrap()).passed());
        assert!(check_right_novikov(&gelfand_right_novikov(&data).unwrap()).passed());
        let zero = DerivationData::new(a.clone(), Matrix::zeros(f, 3, 3)).unwrap();
        assert!(gelfand_novikov(&zero).unwrap().consts().is_zero());
        let not_der = DerivationData::new(a, Matrix::identity(f, 3)).unwrap();
        assert_eq!(gelfand_novikov(&not_der), Err(Error::NotDerivation));
        let lie_like = Algebra::from_entries(f, Basis::standard("e", 2), &[(0, 1, 0, 1), (1, 0, 0, -1)]);
        let dd = DerivationData::new(lie_like, Matrix::zeros(f, 2, 2)).unwrap();
        assert_eq!(gelfand_novikov(&dd), Err(Error::NotCommAssoc));
    }

    #[test]
    fn zinbiel_construction() {
        let f = Field::Rational;
        let (z, d) = zinbiel_2d(f);
        assert!(check_zinbiel(&z).passed());
        let data = DerivationData::new(z.clone(), d).unwrap();
        assert!(data.is_derivation());
        let p = zinbiel_pre_novikov(&data).unwrap();
        assert!(check_pre_novikov(&p).passed());
        assert!(check_novikov(&associated_novikov(&p).unwrap()).passed());
        let zero = zinbiel_pre_novikov(&DerivationData::new(z.clone(), Matrix::zeros(f, 2, 2)).unwrap()).unwrap();
        assert!(zero.left_consts().is_zero() && zero.right_consts().is_zero());
        let bad = DerivationData::new(z, Matrix::from_i64(f, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(zinbiel_pre_novikov(&bad), Err(Error::NotDerivation));
    }

    #[test]
    fn change_of_basis_preserves_class() {
        let f = Field::Rational;
        let a = novikov_2d(f);
        let p = Matrix::from_i64(f, &[&[1, 2], &[1, 3]]);
        let b = a.change_basis(&p).unwrap();
        assert!(b.is_novikov());
        assert_eq!(b.change_basis(&p.inverse().unwrap()).unwrap(), a);
    }

    #[test]
    fn claims_are_reverified() {
        let a = novikov_2d(Field::Rational).claim(Class::Novikov);
        assert!(a.claims_consistent());
        assert!(!a.claim(Class::Lie).claims_consistent());
    }

    /// Value of a trilinear identity on arbitrary vectors by expanding every
    /// product from scratch, to compare with the basis-only checker.
    fn novikov_on_vectors(a: &Algebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> bool {
        let m = |u: &[Scalar], v: &[Scalar]| a.mul(u, v);
        let ls = vsub(
            &vsub(&m(&m(x, y), z), &m(x, &m(y, z))),
            &vsub(&m(&m(y, x), z), &m(y, &m(x, z))),
        );
        let rc = vsub(&m(&m(x, y), z), &m(&m(x, z), y));
        vis_zero(&ls) && vis_zero(&rc)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn novikov_iff_opposite_right_novikov(dim in 2usize..4, seed in any::<u64>()) {
            let a = random_algebra(Field::prime(5).unwrap(), dim, seed, 0.5);
            prop_assert_eq!(a.is_novikov(), Class::RightNovikov.holds(&opposite(&a)));
            prop_assert_eq!(check_novikov(&a).passed(), a.is_novikov());
        }

        #[test]
        fn basis_checker_is_complete(seed in any::<u64>(), vs in prop::collection::vec(0i64..5, 30)) {
            let f = Field::prime(5).unwrap();
            let a = random_algebra(f, 2, seed, 0.3);
            let v = |k: usize| vec![f.from_i64(vs[k]), f.from_i64(vs[k + 1])];
            let triples_ok = (0..5).all(|t| novikov_on_vectors(&a, &v(6 * t), &v(6 * t + 2), &v(6 * t + 4)));
            if a.is_novikov() {
                prop_assert!(triples_ok);
            }
        }

        #[test]
        fn derived_constructions_land_in_their_class(seed in any::<u64>()) {
            let f = Field::prime(7).unwrap();
            let (z, d) = zinbiel_2d(f);
            let scaled = DerivationData::new(z, d.scale(&f.from_i64((seed % 6 + 1) as i64))).unwrap();
            let p = zinbiel_pre_novikov(&scaled).unwrap();
            prop_assert!(associated_novikov(&p).unwrap().is_novikov());
        }
    }
}
