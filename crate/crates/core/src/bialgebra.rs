//! Novikov coalgebras, duality between coproducts and products, the
//! bialgebra compatibility laws, and coboundary coproducts `Δ_r`.
//!
//! `d[γ][α][β]` is the coefficient of `e_α⊗e_β` in `Δ(e_γ)`. Elements of
//! A⊗A are matrices, so `τ` is transposition and `(X⊗Y)t = X·t·Yᵀ`.

use crate::algebra::{multiplication_operators, Algebra, MulOps};
use crate::error::{Error, Result};
use crate::linalg::{Basis, Matrix, Ten3};
use crate::report::{residual_entries, Check, Report, Witness};
use crate::scalar::{Field, Scalar};
use crate::yangbaxter::{nybe_residual_unchecked, placed, RTensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    basis: Basis,
    d: Ten3,
}

impl Coalgebra {
    pub fn new(basis: Basis, d: Ten3) -> Result<Coalgebra> {
        let n = basis.dim();
        if d.dims() != [n, n, n] {
            return Err(Error::ShapeMismatch(format!(
                "coproduct constants of shape {:?} for a basis of dimension {n}",
                d.dims()
            )));
        }
        Ok(Coalgebra { basis, d })
    }

    pub fn zero(field: Field, basis: Basis) -> Coalgebra {
        let n = basis.dim();
        Coalgebra::new(basis, Ten3::zeros(field, [n, n, n])).expect("zero coalgebra")
    }

    /// Coalgebra from `Δ(e_γ)` given as a matrix per basis element.
    pub fn from_matrices(basis: Basis, deltas: &[Matrix]) -> Result<Coalgebra> {
        let n = basis.dim();
        if deltas.len() != n || deltas.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::ShapeMismatch("one n x n matrix per basis element".into()));
        }
        let f = deltas[0].field();
        let d = Ten3::from_fn(f, [n, n, n], |g, a, b| deltas[g].get(a, b).clone());
        Coalgebra::new(basis, d)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn consts(&self) -> &Ten3 {
        &self.d
    }

    pub fn field(&self) -> Field {
        self.d.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `Δ(e_γ)` as a matrix.
    pub fn delta_basis(&self, g: usize) -> Matrix {
        self.d.slice(g)
    }

    pub fn delta(&self, x: &[Scalar]) -> Matrix {
        let mats: Vec<Matrix> = (0..self.dim()).map(|g| self.delta_basis(g)).collect();
        MulOps::combine(&mats, x)
    }

    pub fn with_basis(&self, basis: Basis) -> Result<Coalgebra> {
        Coalgebra::new(basis, self.d.clone())
    }

    pub fn scale(&self, s: &Scalar) -> Coalgebra {
        Coalgebra { basis: self.basis.clone(), d: self.d.scale(s) }
    }

    /// Same coproduct in the basis `f_j = Σ_i P[i][j] e_i`; P must be invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<Coalgebra> {
        let pinv = p.inverse().ok_or(Error::DegenerateForm)?;
        let pinv_t = pinv.transpose();
        let deltas: Vec<Matrix> = (0..self.dim())
            .map(|g| pinv.mul(&self.delta(&p.column(g))).mul(&pinv_t))
            .collect();
        Coalgebra::from_matrices(self.basis.clone(), &deltas)
    }

    pub fn is_novikov_coalgebra(&self) -> bool {
        (0..self.dim()).all(|g| coalgebra_residuals(self, g).iter().all(|(_, t)| t.is_zero()))
    }
}

/// Apply `Δ` to one slot of a two-slot tensor, splitting it into two slots.
pub fn apply_delta_slot(t: &Matrix, slot: usize, c: &Coalgebra) -> Ten3 {
    let n = c.dim();
    let f = c.field();
    let d = c.consts();
    let mut out = Ten3::zeros(f, [n, n, n]);
    for i in 0..n {
        for j in 0..n {
            let v = t.get(i, j);
            if v.is_zero() {
                continue;
            }
            let split = if slot == 0 { i } else { j };
            for a in 0..n {
                for b in 0..n {
                    let w = d.get(split, a, b);
                    if w.is_zero() {
                        continue;
                    }
                    let x = v * w;
                    if slot == 0 {
                        out.add_at(a, b, j, &x);
                    } else {
                        out.add_at(i, a, b, &x);
                    }
                }
            }
        }
    }
    out
}

fn coalgebra_residuals(c: &Coalgebra, g: usize) -> [(&'static str, Ten3); 2] {
    let dg = c.delta_basis(g);
    let right = apply_delta_slot(&dg, 1, c);
    let left = apply_delta_slot(&dg, 0, c);
    let co_left = right.sub(&right.swap12()).sub(&left.sub(&left.swap12()));
    let co_right = apply_delta_slot(&dg.transpose(), 1, c).swap12().sub(&left);
    [("co_left_symmetry", co_left), ("co_right_commutativity", co_right)]
}

fn ten3_residual(t: &Ten3, basis: &Basis) -> Vec<(String, String)> {
    t.nonzero_entries()
        .into_iter()
        .map(|(idx, v)| (v.to_string(), basis.label(&idx)))
        .collect()
}

fn ten2_residual(t: &Matrix, basis: &Basis) -> Vec<(String, String)> {
    let n = t.cols();
    residual_entries(t.data(), |k| basis.label(&[k / n, k % n]))
}

/// Both coassociativity-type laws for every basis element.
pub fn check_novikov_coalgebra(c: &Coalgebra) -> Report {
    let items: Vec<usize> = (0..c.dim()).collect();
    let mut report = Report::new("novikov coalgebra check");
    for (k, name) in ["co_left_symmetry", "co_right_commutativity"].into_iter().enumerate() {
        report.push(Check::scan(name, &items, |&g| {
            let res = &coalgebra_residuals(c, g)[k].1;
            if res.is_zero() {
                vec![]
            } else {
                vec![Witness::new(name, vec![c.basis.name(g).to_string()], ten3_residual(res, &c.basis))]
            }
        }));
    }
    report
}

/// `e_α*·e_β* = Σ_γ d[γ][α][β] e_γ*`.
pub fn dualize_coproduct(c: &Coalgebra) -> Algebra {
    Algebra::new(c.basis.dual(), c.d.permute([1, 2, 0])).expect("dual shape")
}

/// Inverse of [`dualize_coproduct`].
pub fn dualize_product(a: &Algebra) -> Coalgebra {
    Coalgebra::new(a.basis().dual(), a.consts().permute([2, 0, 1])).expect("dual shape")
}

/// An algebra and a coalgebra on the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovBialgebra {
    pub algebra: Algebra,
    pub coalgebra: Coalgebra,
}

impl NovikovBialgebra {
    pub fn new(algebra: Algebra, coalgebra: Coalgebra) -> Result<NovikovBialgebra> {
        if algebra.dim() != coalgebra.dim() {
            return Err(Error::ShapeMismatch("algebra and coalgebra dimensions differ".into()));
        }
        if algebra.field() != coalgebra.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(NovikovBialgebra { algebra, coalgebra })
    }
}

type PairLaw = fn(&LawCtx, usize, usize) -> Matrix;

struct LawCtx<'a> {
    a: &'a Algebra,
    ops: MulOps,
    deltas: Vec<Matrix>,
}

impl LawCtx<'_> {
    fn sym(&self, b: usize) -> Matrix {
        self.deltas[b].add(&self.deltas[b].transpose())
    }
}

const COMPATIBILITY: [(&str, PairLaw); 3] = [
    ("coproduct_of_product", |x, a, b| {
        let ab = x.a.mul_basis(a, b).to_vec();
        let lhs = MulOps::combine(&x.deltas, &ab);
        let t1 = x.ops.right[b].mul(&x.deltas[a]);
        let t2 = x.sym(b).mul(&x.ops.star[a].transpose());
        lhs.sub(&t1).sub(&t2)
    }),
    ("star_exchange", |x, a, b| {
        let side = |a: usize, b: usize| {
            x.ops.star[a]
                .mul(&x.deltas[b])
                .sub(&x.deltas[b].transpose().mul(&x.ops.star[a].transpose()))
        };
        side(a, b).sub(&side(b, a))
    }),
    ("right_exchange", |x, a, b| {
        let side = |a: usize, b: usize| {
            let s = x.sym(b);
            s.mul(&x.ops.right[a].transpose()).sub(&x.ops.right[a].mul(&s))
        };
        side(a, b).sub(&side(b, a))
    }),
];

fn compatibility_ctx<'a>(a: &'a Algebra, c: &Coalgebra) -> LawCtx<'a> {
    LawCtx { a, ops: multiplication_operators(a), deltas: (0..c.dim()).map(|g| c.delta_basis(g)).collect() }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

/// Layer verdicts for both components, then the three compatibility laws
/// on all basis pairs.
pub fn check_novikov_bialgebra(b: &NovikovBialgebra) -> Report {
    let a = &b.algebra;
    let c = &b.coalgebra;
    let mut report = Report::new("novikov bialgebra check");
    let alg_ok = a.is_novikov();
    let coalg_ok = c.is_novikov_coalgebra();
    report.push(Check::verdict(
        "algebra_layer",
        alg_ok,
        (!alg_ok).then(|| "the algebra is not Novikov".to_string()),
    ));
    report.push(Check::verdict(
        "coalgebra_layer",
        coalg_ok,
        (!coalg_ok).then(|| "the coproduct is not a Novikov coalgebra".to_string()),
    ));
    let ctx = compatibility_ctx(a, c);
    let items = pairs(a.dim());
    for (name, law) in COMPATIBILITY {
        report.push(Check::scan(name, &items, |&(x, y)| {
            let res = law(&ctx, x, y);
            if res.is_zero() {
                vec![]
            } else {
                let at = vec![a.basis().name(x).to_string(), a.basis().name(y).to_string()];
                vec![Witness::new(name, at, ten2_residual(&res, a.basis()))]
            }
        }));
    }
    report
}

/// Boolean form of [`check_novikov_bialgebra`].
pub fn is_novikov_bialgebra(a: &Algebra, c: &Coalgebra) -> bool {
    if !a.is_novikov() || !c.is_novikov_coalgebra() {
        return false;
    }
    let ctx = compatibility_ctx(a, c);
    pairs(a.dim())
        .iter()
        .all(|&(x, y)| COMPATIBILITY.iter().all(|(_, law)| law(&ctx, x, y).is_zero()))
}

/// `Δ_r(a) = (L(a)⊗id + id⊗L⋆(a)) r` without checking the algebra.
pub fn coboundary_coproduct_unchecked(a: &Algebra, r: &Matrix) -> Coalgebra {
    let ops = multiplication_operators(a);
    let deltas: Vec<Matrix> = (0..a.dim())
        .map(|x| ops.left[x].mul(r).add(&r.mul(&ops.star[x].transpose())))
        .collect();
    Coalgebra::from_matrices(a.basis().clone(), &deltas).expect("coboundary shape")
}

pub fn coboundary_coproduct(a: &Algebra, r: &RTensor) -> Result<Coalgebra> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    Ok(coboundary_coproduct_unchecked(a, r.matrix()))
}

struct CobCtx<'a> {
    a: &'a Algebra,
    ops: MulOps,
    r: Matrix,
    tr: Matrix,
    s: Matrix,
    c: Ten3,
    cs: Ten3,
}

fn cob_ctx<'a>(a: &'a Algebra, r: &Matrix) -> CobCtx<'a> {
    let c = a.consts().clone();
    let cs = c.add(&c.permute([1, 0, 2]));
    CobCtx {
        a,
        ops: multiplication_operators(a),
        r: r.clone(),
        tr: r.transpose(),
        s: r.add(&r.transpose()),
        c,
        cs,
    }
}

type CobPair = fn(&CobCtx, usize, usize) -> Matrix;
type CobSingle = fn(&CobCtx, usize) -> Ten3;

const COB_PAIR: [(&str, &str, CobPair); 3] = [
    ("cob_coproduct_of_product", "coproduct_of_product", |x, a, b| {
        let ba = x.a.mul_basis(b, a).to_vec();
        let right = MulOps::combine(&x.ops.left, &ba).add(&x.ops.left[a].mul(&x.ops.left[b]));
        let t1 = x.s.mul(&right.transpose());
        let t2 = x.s.tensor_apply(&x.ops.star[a], &x.ops.star[b]);
        t1.add(&t2)
    }),
    ("cob_star_exchange", "star_exchange", |x, a, b| {
        x.s.tensor_apply(&x.ops.star[a], &x.ops.star[b])
            .sub(&x.s.tensor_apply(&x.ops.star[b], &x.ops.star[a]))
    }),
    ("cob_right_exchange", "right_exchange", |x, a, b| {
        let o = &x.ops;
        let n = x.a.dim();
        let id = Matrix::identity(x.a.field(), n);
        let comm = o.left[a].commutator(&o.left[b]);
        let mut acc = x.s.tensor_apply(&o.star[b], &o.right[a]).neg();
        acc = acc.add(&x.s.tensor_apply(&o.star[a], &o.right[b]));
        acc = acc.add(&x.s.tensor_apply(&o.right[a], &o.left[b]));
        acc = acc.sub(&x.s.tensor_apply(&o.right[b], &o.left[a]));
        acc = acc.add(&x.s.tensor_apply(&id, &comm));
        acc.sub(&x.s.tensor_apply(&comm, &id))
    }),
];

const COB_SINGLE: [(&str, &str, CobSingle); 2] = [
    ("cob_co_left_symmetry", "co_left_symmetry", |x, a| {
        let (c, cs, r, tr, s) = (&x.c, &x.cs, &x.r, &x.tr, &x.s);
        let la = &x.ops.left[a];
        let bundle = placed(c, tr, (0, 1), r, (0, 2))
            .add(&placed(c, r, (0, 1), r, (1, 2)))
            .add(&placed(cs, r, (0, 2), r, (1, 2)));
        let t1 = bundle.apply_slot(0, la).sub(&bundle.apply_slot(1, la));
        let t2 = placed(c, &s.mul(&la.transpose()), (0, 1), r, (1, 2));
        let t3 = placed(c, &la.mul(r), (0, 2), s, (0, 1));
        let inner = placed(c, r, (0, 2), r, (0, 1)).add(&placed(cs, r, (0, 1), r, (1, 2)));
        let y = placed(c, r, (1, 2), r, (0, 2))
            .sub(&placed(c, r, (0, 2), r, (1, 2)))
            .sub(&inner.sub(&inner.swap12()));
        let t4 = y.apply_slot(2, &x.ops.star[a]);
        t1.add(&t2).sub(&t3).add(&t4)
    }),
    ("cob_co_right_commutativity", "co_right_commutativity", |x, a| {
        let (c, cs, r, tr) = (&x.c, &x.cs, &x.r, &x.tr);
        let z = placed(c, r, (0, 2), tr, (1, 2))
            .sub(&placed(cs, r, (0, 1), r, (1, 2)))
            .sub(&placed(c, r, (0, 2), r, (0, 1)));
        let w = z.apply_slot(2, &x.ops.star[a]);
        w.sub(&w.swap23())
    }),
];

const COB_SKEW: [(&str, CobSingle); 2] = [
    ("skew_co_left_symmetry", |x, a| {
        let rr = nybe_residual_unchecked(x.a, &x.r);
        let t = rr.swap23();
        let la = &x.ops.left[a];
        let t1 = t.apply_slot(0, la).sub(&t.apply_slot(1, la));
        let t2 = rr.sub(&rr.swap12()).apply_slot(2, &x.ops.star[a]);
        t1.add(&t2)
    }),
    ("skew_co_right_commutativity", |x, a| {
        let w = nybe_residual_unchecked(x.a, &x.r).apply_slot(2, &x.ops.star[a]);
        w.sub(&w.swap23())
    }),
];

/// Every coboundary condition, each reported separately, plus the
/// consistency of their conjunction with the bialgebra verdict for `Δ_r`.
/// The conditions restricted to skewsymmetric r are included only in that
/// case.
pub fn check_cob_conditions(a: &Algebra, r: &RTensor) -> Result<Report> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    let ctx = cob_ctx(a, r.matrix());
    let basis = a.basis();
    let mut report = Report::new("coboundary conditions");
    let items = pairs(a.dim());
    for (name, law, f) in COB_PAIR {
        report.push(
            Check::scan(name, &items, |&(x, y)| {
                let res = f(&ctx, x, y);
                if res.is_zero() {
                    vec![]
                } else {
                    let at = vec![basis.name(x).to_string(), basis.name(y).to_string()];
                    vec![Witness::new(name, at, ten2_residual(&res, basis))]
                }
            })
            .with_note(format!("equivalent to {law} for the coboundary coproduct")),
        );
    }
    let singles: Vec<usize> = (0..a.dim()).collect();
    let single_check = |name: &str, f: CobSingle| {
        Check::scan(name, &singles, |&x| {
            let res = f(&ctx, x);
            if res.is_zero() {
                vec![]
            } else {
                vec![Witness::new(name, vec![basis.name(x).to_string()], ten3_residual(&res, basis))]
            }
        })
    };
    for (name, law, f) in COB_SINGLE {
        report.push(single_check(name, f).with_note(format!("equivalent to {law} for the coboundary coproduct")));
    }
    let conjunction = report.passed();
    if r.is_skewsymmetric() {
        for (name, f) in COB_SKEW {
            report.push(single_check(name, f).with_note("skewsymmetric r"));
        }
    }
    let bialgebra = is_novikov_bialgebra(a, &coboundary_coproduct_unchecked(a, r.matrix()));
    report.push(Check::verdict(
        "bialgebra_equivalence",
        conjunction == bialgebra,
        Some(format!("conditions {conjunction}, bialgebra {bialgebra}")),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_novikov;
    use crate::fixtures::*;
    use crate::sampling::*;
    use crate::yangbaxter::nybe_residual;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn novikov_2d_coproducts_are_coalgebras() {
        for l in [0, 1, 7] {
            let c = novikov_2d_coproduct(q(), &q().from_i64(l));
            assert!(check_novikov_coalgebra(&c).passed());
        }
        assert!(check_novikov_coalgebra(&Coalgebra::zero(q(), Basis::standard("e", 2))).passed());
        assert!(check_novikov_coalgebra(&diagonal_coproduct_1d(q())).passed());
    }

    #[test]
    fn dualization() {
        let c = novikov_2d_coproduct(q(), &q().one());
        let a = dualize_coproduct(&c);
        assert_eq!(a.basis().names(), ["e1*", "e2*"]);
        assert_eq!(a.mul_basis(1, 1), &[q().one(), q().zero()]);
        assert!([(0, 0), (0, 1), (1, 0)].iter().all(|&(i, j)| a.mul_basis(i, j).iter().all(Scalar::is_zero)));
        assert!(check_novikov(&a).passed());
        assert_eq!(dualize_product(&a), c);
        assert!(dualize_coproduct(&Coalgebra::zero(q(), Basis::standard("e", 2))).consts().is_zero());
    }

    #[test]
    fn novikov_2d_bialgebra() {
        let a = novikov_2d(q());
        let zero = NovikovBialgebra::new(a.clone(), novikov_2d_coproduct(q(), &q().zero())).unwrap();
        assert!(check_novikov_bialgebra(&zero).passed());
        // For λ ≠ 0 only coproduct_of_product at (e1,e1) breaks: Δ(e1) = λ e2⊗e2 against
        // (R(e1)⊗id)Δ(e1) + (id⊗L⋆(e1))(2λ e2⊗e2) = 3λ e2⊗e2.
        for l in [1, 7, -3] {
            let b = NovikovBialgebra::new(a.clone(), novikov_2d_coproduct(q(), &q().from_i64(l))).unwrap();
            let r = check_novikov_bialgebra(&b);
            for name in ["algebra_layer", "coalgebra_layer", "star_exchange", "right_exchange"] {
                assert!(r.check(name).unwrap().passed, "{name}");
            }
            let law = r.check("coproduct_of_product").unwrap();
            assert_eq!(law.witnesses.len(), 1);
            assert_eq!(law.witnesses[0].at, ["e1", "e1"]);
            assert_eq!(law.witnesses[0].residual, vec![((-2 * l).to_string(), "e2.e2".to_string())]);
        }
    }

    #[test]
    fn wrong_coproduct_breaks_lb5() {
        // Δ(e2) = e1⊗e1 instead. At (e1,e2): Δ(e1∘e2) = 0 while
        // (id⊗L⋆(e1))(Δ(e2)+τΔ(e2)) = 2 e1⊗(e1⋆e1) = 4 e1⊗e1, so the residual is −4 e1⊗e1.
        let f = q();
        let deltas = [Matrix::zeros(f, 2, 2), Matrix::from_i64(f, &[&[1, 0], &[0, 0]])];
        let c = Coalgebra::from_matrices(Basis::standard("e", 2), &deltas).unwrap();
        let b = NovikovBialgebra::new(novikov_2d(f), c).unwrap();
        let r = check_novikov_bialgebra(&b);
        assert!(!r.passed());
        let law = r.check("coproduct_of_product").unwrap();
        let w = law.witnesses.iter().find(|w| w.at == ["e1", "e2"]).unwrap();
        assert_eq!(w.residual, vec![("-4".to_string(), "e1.e1".to_string())]);
    }

    #[test]
    fn coboundary_examples() {
        let f = q();
        let a = novikov_2d(f);
        let zero = RTensor::new(Matrix::zeros(f, 2, 2));
        assert!(coboundary_coproduct(&a, &zero).unwrap().consts().is_zero());
        assert!(check_cob_conditions(&a, &zero).unwrap().passed());

        let (fa, fr) = pre_novikov_lift_2d_with_r(f);
        let c = coboundary_coproduct(&fa, &fr).unwrap();
        // Δ_r(e) = e∘e ⊗ e* − e∘e* ⊗ e + e ⊗ e⋆e* − e* ⊗ e⋆e = e⊗e* + e*⊗e + 0 − 2e*⊗e ... expanded:
        // e∘e=e, e∘e*=−e*, e⋆e = 2e, e⋆e* = 0, so Δ_r(e) = e⊗e* + e*⊗e − 2e*⊗e = e⊗e* − e*⊗e.
        assert_eq!(c.delta_basis(0), Matrix::from_i64(f, &[&[0, 1], &[-1, 0]]));
        // e*∘e = e*, e*∘e* = 0, e*⋆e = 0, e*⋆e* = 0: Δ_r(e*) = e*⊗e*.
        assert_eq!(c.delta_basis(1), Matrix::from_i64(f, &[&[0, 0], &[0, 1]]));

        let (sv, r) = schrodinger_virasoro_with_r(f);
        assert!(check_novikov_coalgebra(&coboundary_coproduct(&sv, &r).unwrap()).passed());
    }

    #[test]
    fn symmetric_r_breaks_cob4() {
        let f = q();
        let a = novikov_2d(f);
        let r = RTensor::new(Matrix::from_i64(f, &[&[1, 0], &[0, 0]]));
        let rep = check_cob_conditions(&a, &r).unwrap();
        let cob_coproduct_of_product = rep.check("cob_coproduct_of_product").unwrap();
        assert!(!cob_coproduct_of_product.passed);
        assert!(cob_coproduct_of_product.witnesses.iter().any(|w| w.at == ["e1", "e1"]));
        assert!(rep.check("bialgebra_equivalence").unwrap().passed);
    }

    #[test]
    fn skew_nybe_solutions_pass_everything() {
        let (sv, r) = schrodinger_virasoro_with_r(q());
        assert!(nybe_residual(&sv, &r).unwrap().is_zero());
        let rep = check_cob_conditions(&sv, &r).unwrap();
        assert!(rep.passed(), "{}", rep.render());
        assert!(rep.check("skew_co_left_symmetry").is_some());
    }

    /// The individual coboundary conditions must match the laws they encode:
    /// cob_coproduct_of_product/cob_star_exchange/cob_right_exchange at (a, b) against coproduct_of_product at (b, a), star_exchange and right_exchange at (a, b),
    /// and cob_co_left_symmetry/cob_co_right_commutativity against co_left_symmetry/co_right_commutativity, each as a universally quantified verdict.
    fn per_law_agreement(a: &Algebra, r: &Matrix) -> Vec<(&'static str, bool, bool)> {
        let c = coboundary_coproduct_unchecked(a, r);
        let ctx = cob_ctx(a, r);
        let lctx = compatibility_ctx(a, &c);
        let n = a.dim();
        let mut out = Vec::new();
        for (k, (name, _, f)) in COB_PAIR.iter().enumerate() {
            let cob = pairs(n).iter().all(|&(x, y)| f(&ctx, x, y).is_zero());
            let law = pairs(n).iter().all(|&(x, y)| COMPATIBILITY[k].1(&lctx, x, y).is_zero());
            out.push((*name, cob, law));
        }
        for (k, (name, _, f)) in COB_SINGLE.iter().enumerate() {
            let cob = (0..n).all(|x| f(&ctx, x).is_zero());
            let law = (0..n).all(|g| coalgebra_residuals(&c, g)[k].1.is_zero());
            out.push((*name, cob, law));
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn coalgebra_iff_dual_is_novikov(seed in any::<u64>()) {
            let c = random_coalgebra(Field::prime(5).unwrap(), 2, seed, 0.4);
            prop_assert_eq!(check_novikov_coalgebra(&c).passed(), check_novikov(&dualize_coproduct(&c)).passed());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn coboundary_conditions_match_bialgebra(seed in any::<u64>()) {
            let f = Field::prime(5).unwrap();
            let a = random_novikov(f, 2, seed);
            let r = random_matrix(f, 2, seed ^ 0x5eed, 0.6);
            for (name, cob, law) in per_law_agreement(&a, &r) {
                prop_assert_eq!(cob, law, "{} disagrees", name);
            }
            let rep = check_cob_conditions(&a, &RTensor::new(r)).unwrap();
            prop_assert!(rep.check("bialgebra_equivalence").unwrap().passed);
        }

        #[test]
        fn skew_solutions_give_bialgebras(seed in any::<u64>()) {
            let f = Field::prime(5).unwrap();
            let a = random_novikov(f, 3, seed);
            let r = random_skew(f, 3, seed ^ 7);
            if nybe_residual(&a, &r).unwrap().is_zero() {
                prop_assert!(is_novikov_bialgebra(&a, &coboundary_coproduct(&a, &r).unwrap()));
            }
        }
    }
}
