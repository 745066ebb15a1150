//! The Novikov Yang-Baxter equation, the operator form of its solutions,
//! O-operators and pre-Novikov algebras, invariant and quasi-Frobenius forms.

use crate::algebra::{
    associated_novikov, is_pre_novikov, multiplication_operators, star_product, Algebra, Class, MulOps,
    PreNovikovAlgebra,
};
use crate::error::{Error, Result};
use crate::linalg::{unit, vis_zero, BilinearForm, Matrix, Ten3};
use crate::report::{residual_entries, Check, Report, Witness};
use crate::representation::{dual_representation_unchecked, semidirect_constants, Representation};
use crate::scalar::Scalar;

/// A two-slot tensor `r = Σ r[i][j] e_i⊗e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTensor {
    r: Matrix,
    skew: bool,
}

impl RTensor {
    pub fn new(r: Matrix) -> RTensor {
        let skew = r.add(&r.transpose()).is_zero();
        RTensor { r, skew }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.r
    }

    pub fn is_skewsymmetric(&self) -> bool {
        self.skew
    }

    /// `τr`.
    pub fn twist(&self) -> RTensor {
        RTensor::new(self.r.transpose())
    }

    /// Invertibility of the coefficient matrix.
    pub fn is_nondegenerate(&self) -> bool {
        self.r.is_square() && !self.r.det().is_zero()
    }
}

/// Place two two-slot tensors into three slots sharing exactly one slot, and
/// multiply their components in the shared slot with the product `consts`.
///
/// `placed(c, r, (0, 2), s, (1, 2))` is `Σ x_α ⊗ u_β ⊗ y_α∘v_β` for
/// `r = Σ x_α⊗y_α`, `s = Σ u_β⊗v_β`; the first tensor's component is the left
/// factor of the product.
pub fn placed(consts: &Ten3, first: &Matrix, slots1: (usize, usize), second: &Matrix, slots2: (usize, usize)) -> Ten3 {
    let s1 = [slots1.0, slots1.1];
    let s2 = [slots2.0, slots2.1];
    let shared = *s1.iter().find(|s| s2.contains(s)).expect("placements share one slot");
    assert!(s1[0] != s1[1] && s2[0] != s2[1] && s1.iter().filter(|s| s2.contains(s)).count() == 1);
    let f = consts.field();
    let n = first.rows();
    let mut out = Ten3::zeros(f, [n, n, n]);
    for i in 0..n {
        for j in 0..n {
            let x = first.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let y = second.get(k, l);
                    if y.is_zero() {
                        continue;
                    }
                    let xy = x * y;
                    let mut idx = [0usize; 3];
                    idx[s1[0]] = i;
                    idx[s1[1]] = j;
                    idx[s2[0]] = k;
                    idx[s2[1]] = l;
                    let left = if s1[0] == shared { i } else { j };
                    let right = if s2[0] == shared { k } else { l };
                    for (m, c) in consts.fiber(left, right).iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        idx[shared] = m;
                        out.add_at(idx[0], idx[1], idx[2], &(&xy * c));
                    }
                }
            }
        }
    }
    out
}

/// `r⋄r = r13∘r23 + r12⋆r23 + r13∘r12` without checking the algebra.
pub fn nybe_residual_unchecked(a: &Algebra, r: &Matrix) -> Ten3 {
    let c = a.consts();
    let cs = star_product(a);
    placed(c, r, (0, 2), r, (1, 2))
        .add(&placed(cs.consts(), r, (0, 1), r, (1, 2)))
        .add(&placed(c, r, (0, 2), r, (0, 1)))
}

pub fn nybe_residual(a: &Algebra, r: &RTensor) -> Result<Ten3> {
    if !a.is_novikov() {
        return Err(Error::NotNovikov);
    }
    Ok(nybe_residual_unchecked(a, &r.r))
}

/// The NYBE as a report with the nonzero residual entries.
pub fn check_nybe(a: &Algebra, r: &RTensor) -> Result<Report> {
    let res = nybe_residual(a, r)?;
    let mut report = Report::new("novikov yang-baxter equation");
    let entries: Vec<(String, String)> = res
        .nonzero_entries()
        .into_iter()
        .map(|(idx, v)| (v.to_string(), a.basis().label(&idx)))
        .collect();
    let mut check = Check::verdict("nybe", entries.is_empty(), None);
    check.violations = entries.len();
    if !entries.is_empty() {
        check.witnesses.push(Witness::new("nybe", vec![], entries.into_iter().take(crate::report::MAX_WITNESSES).collect()));
    }
    report.push(check);
    report.push(Check::verdict("skewsymmetric", r.is_skewsymmetric(), None));
    Ok(report)
}

/// `T^r(f) = Σ ⟨f, x_α⟩ y_α` as a matrix from the dual basis to the basis.
pub fn t_map(r: &RTensor) -> Matrix {
    r.r.transpose()
}

/// `T(f)∘T(g) = T(L⋆*(T f) g) − T(R*(T g) f)` on all pairs of dual basis vectors.
pub fn check_t_identity(a: &Algebra, r: &RTensor) -> Report {
    let t = t_map(r);
    let ops = multiplication_operators(a);
    let n = a.dim();
    let f = a.field();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let dual = a.basis().dual();
    let mut report = Report::new("operator form of the nybe");
    report.push(Check::scan("t_identity", &pairs, |&(i, j)| {
        let (ei, ej) = (unit(f, n, i), unit(f, n, j));
        let (tf, tg) = (t.apply(&ei), t.apply(&ej));
        let lhs = a.mul(&tf, &tg);
        let first = t.apply(&MulOps::combine(&ops.star, &tf).star().apply(&ej));
        let second = t.apply(&MulOps::combine(&ops.right, &tg).star().apply(&ei));
        let res: Vec<Scalar> = lhs.iter().zip(first.iter().zip(&second)).map(|(l, (x, y))| l - x + y).collect();
        if vis_zero(&res) {
            vec![]
        } else {
            let at = vec![dual.name(i).to_string(), dual.name(j).to_string()];
            vec![Witness::new("t_identity", at, residual_entries(&res, |k| a.basis().name(k).to_string()))]
        }
    }));
    report
}

/// A linear map `T: V → A` together with a representation of A on V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OOperator {
    rep: Representation,
    t: Matrix,
}

impl OOperator {
    pub fn new(rep: Representation, t: Matrix) -> Result<OOperator> {
        if t.rows() != rep.algebra().dim() || t.cols() != rep.module_dim() {
            return Err(Error::ShapeMismatch(format!(
                "T must be {}x{}",
                rep.algebra().dim(),
                rep.module_dim()
            )));
        }
        if t.field() != rep.algebra().field() {
            return Err(Error::FieldMismatch);
        }
        Ok(OOperator { rep, t })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    fn residual(&self, u: usize, v: usize) -> Vec<Scalar> {
        let a = self.rep.algebra();
        let m = self.rep.module_dim();
        let f = a.field();
        let (eu, ev) = (unit(f, m, u), unit(f, m, v));
        let (tu, tv) = (self.t.apply(&eu), self.t.apply(&ev));
        let lhs = a.mul(&tu, &tv);
        let x = self.t.apply(&self.rep.l(&tu).apply(&ev));
        let y = self.t.apply(&self.rep.r(&tv).apply(&eu));
        lhs.iter().zip(x.iter().zip(&y)).map(|(l, (x, y))| l - x - y).collect()
    }

    pub fn holds(&self) -> bool {
        let m = self.rep.module_dim();
        (0..m).all(|u| (0..m).all(|v| vis_zero(&self.residual(u, v))))
    }
}

/// `T(u)∘T(v) = T(l(T u)v) + T(r(T v)u)` on all module basis pairs.
pub fn check_o_operator(o: &OOperator) -> Result<Report> {
    if !o.rep.is_representation() {
        return Err(Error::NotRepresentation);
    }
    let m = o.rep.module_dim();
    let module = o.rep.module();
    let basis = o.rep.algebra().basis();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (0..m).map(move |v| (u, v))).collect();
    let mut report = Report::new("o-operator check");
    report.push(Check::scan("o_operator", &pairs, |&(u, v)| {
        let res = o.residual(u, v);
        if vis_zero(&res) {
            vec![]
        } else {
            let at = vec![module.name(u).to_string(), module.name(v).to_string()];
            vec![Witness::new("o_operator", at, residual_entries(&res, |k| basis.name(k).to_string()))]
        }
    }));
    Ok(report)
}

/// `u▷v = l(T u)v`, `u◁v = r(T v)u` on the module.
pub fn o_operator_to_pre_novikov(o: &OOperator) -> Result<PreNovikovAlgebra> {
    if !o.rep.is_representation() || !o.holds() {
        return Err(Error::NotOOperator);
    }
    let m = o.rep.module_dim();
    let f = o.t.field();
    let images: Vec<Vec<Scalar>> = (0..m).map(|u| o.t.column(u)).collect();
    let ls: Vec<Matrix> = images.iter().map(|x| o.rep.l(x)).collect();
    let rs: Vec<Matrix> = images.iter().map(|x| o.rep.r(x)).collect();
    let gt = Ten3::from_fn(f, [m, m, m], |u, v, w| ls[u].get(w, v).clone());
    let lt = Ten3::from_fn(f, [m, m, m], |u, v, w| rs[v].get(w, u).clone());
    let p = PreNovikovAlgebra::new(o.rep.module().clone(), lt, gt)?;
    if !is_pre_novikov(&p) {
        return Err(Error::NotPreNovikov);
    }
    Ok(p)
}

/// The semidirect algebra of the dual representation on `A ⊕ V*` and
/// `r = r_T − τ r_T`, where `r_T = Σ_k T(v_k) ⊗ v_k*`.
pub fn o_operator_lift(o: &OOperator) -> Result<(Algebra, RTensor)> {
    if !o.rep.is_representation() {
        return Err(Error::NotRepresentation);
    }
    let dual = dual_representation_unchecked(&o.rep);
    let algebra = semidirect_constants(&dual)?;
    let n = o.rep.algebra().dim();
    let d = algebra.dim();
    let rt = Matrix::from_fn(o.t.field(), d, d, |i, j| {
        if i < n && j >= n {
            o.t.get(i, j - n).clone()
        } else {
            o.t.field().zero()
        }
    });
    Ok((algebra, RTensor::new(rt.sub(&rt.transpose()))))
}

/// The identity O-operator of the associated Novikov algebra for the
/// representation `(L▷, R◁)`.
pub fn identity_o_operator(p: &PreNovikovAlgebra) -> Result<OOperator> {
    let a = associated_novikov(p)?;
    let n = p.dim();
    let f = p.field();
    let l = (0..n).map(|x| Matrix::from_fn(f, n, n, |w, y| p.right_consts().get(x, y, w).clone())).collect();
    let r = (0..n).map(|x| Matrix::from_fn(f, n, n, |w, y| p.left_consts().get(y, x, w).clone())).collect();
    let rep = Representation::new(a, p.basis().clone(), l, r)?;
    OOperator::new(rep, Matrix::identity(f, n))
}

/// `ω(a+f, b+g) = ⟨g, a⟩ − ⟨f, b⟩` on `A ⊕ A*`.
pub fn canonical_skew_form(n: usize, field: crate::scalar::Field) -> BilinearForm {
    let m = Matrix::from_fn(field, 2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            field.one()
        } else if i >= n && j + n == i {
            field.from_i64(-1)
        } else {
            field.zero()
        }
    });
    BilinearForm::new(m).expect("square form")
}

/// The algebra `A ⋉ A*`, `r = Σ e_α⊗e_α* − e_α*⊗e_α` and the canonical
/// skewsymmetric form built from a pre-Novikov algebra.
pub fn pre_novikov_canonical_solution(p: &PreNovikovAlgebra) -> Result<(Algebra, RTensor, BilinearForm)> {
    let o = identity_o_operator(p)?;
    let (algebra, r) = o_operator_lift(&o)?;
    let omega = canonical_skew_form(p.dim(), p.field());
    if !algebra.is_novikov() {
        return Err(Error::NotNovikov);
    }
    assert!(r.is_skewsymmetric() && nybe_residual_unchecked(&algebra, &r.r).is_zero());
    assert!(check_quasi_frobenius(&algebra, &omega).passed());
    Ok((algebra.claim(Class::Novikov), r, omega))
}

/// Which invariance law a form is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `B(a∘b, c) = −B(b, a⋆c)`.
    Novikov,
    /// `(a⋄b, c) = −(a, b⋄c + c⋄b)`.
    RightNovikov,
}

fn form_triples(n: usize) -> Vec<[usize; 3]> {
    (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c]))).collect()
}

fn scalar_scan(name: &str, a: &Algebra, items: &[[usize; 3]], f: impl Fn(&[usize; 3]) -> Scalar + Sync + Send) -> Check {
    Check::scan(name, items, |t| {
        let v = f(t);
        if v.is_zero() {
            vec![]
        } else {
            let at = t.iter().map(|&i| a.basis().name(i).to_string()).collect();
            vec![Witness::new(name, at, vec![(v.to_string(), "1".to_string())])]
        }
    })
}

pub fn check_invariant_form(a: &Algebra, form: &BilinearForm, flavor: Flavor) -> Result<Report> {
    if form.dim() != a.dim() {
        return Err(Error::ShapeMismatch("form and algebra dimensions differ".into()));
    }
    let items = form_triples(a.dim());
    let mut report = Report::new("invariant form check");
    let check = match flavor {
        Flavor::Novikov => scalar_scan("invariance", a, &items, |&[x, y, z]| {
            let (ex, ey, ez) = (a.e(x), a.e(y), a.e(z));
            &form.eval(&a.mul(&ex, &ey), &ez) + &form.eval(&ey, &a.star(&ex, &ez))
        }),
        Flavor::RightNovikov => scalar_scan("invariance", a, &items, |&[x, y, z]| {
            let (ex, ey, ez) = (a.e(x), a.e(y), a.e(z));
            &form.eval(&a.mul(&ex, &ey), &ez) + &form.eval(&ex, &a.star(&ey, &ez))
        }),
    };
    let note = if form.is_nondegenerate() { "nondegenerate form" } else { "degenerate form" };
    report.push(check.with_note(note));
    Ok(report)
}

/// Skewsymmetry, nondegeneracy and `ω(a∘b,c) − ω(a⋆c,b) + ω(c∘b,a) = 0`.
pub fn check_quasi_frobenius(a: &Algebra, omega: &BilinearForm) -> Report {
    let mut report = Report::new("quasi-frobenius check");
    report.push(Check::verdict("skewsymmetric", omega.is_skewsymmetric(), None));
    report.push(Check::verdict("nondegenerate", omega.is_nondegenerate(), None));
    if omega.dim() != a.dim() {
        report.push(Check::verdict("cocycle", false, Some("form and algebra dimensions differ".into())));
        return report;
    }
    let items = form_triples(a.dim());
    report.push(scalar_scan("cocycle", a, &items, |&[x, y, z]| {
        let (ex, ey, ez) = (a.e(x), a.e(y), a.e(z));
        let t1 = omega.eval(&a.mul(&ex, &ey), &ez);
        let t2 = omega.eval(&a.star(&ex, &ez), &ey);
        let t3 = omega.eval(&a.mul(&ez, &ey), &ex);
        &(&t1 - &t2) + &t3
    }));
    report
}

/// `r = Σ e_α ⊗ f_α` with `{f_α}` the basis ω-dual to `{e_α}`, i.e. `ω(e_α, f_β) = δ_αβ`.
pub fn form_to_r(omega: &BilinearForm) -> Result<RTensor> {
    let inv = omega.matrix().inverse().ok_or(Error::DegenerateForm)?;
    Ok(RTensor::new(inv.transpose()))
}

/// Inverse of [`form_to_r`]; requires an invertible coefficient matrix.
pub fn r_to_form(r: &RTensor) -> Result<BilinearForm> {
    let inv = r.r.inverse().ok_or(Error::DegenerateForm)?;
    BilinearForm::new(inv.transpose())
}
