//! The Laurent polynomial factor k[t, t⁻¹] and finite elements of A[t, t⁻¹].

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::linalg::{vadd, vis_zero, vscale, vzero};
use crate::report::{residual_entries, Check, Report, Witness};
use crate::scalar::{Field, Scalar};

/// `k[t, t⁻¹]` with `tⁱ ⋄ tʲ = i·tⁱ⁺ʲ⁻¹`, `(tⁱ, tʲ) = δ_{i+j+1,0}` and the
/// coproduct `Δ(tʲ) = Σ_i (i+1) t^{−i−2} ⊗ t^{j+i}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Laurent;

impl Laurent {
    /// `(coefficient, degree)` of `tⁱ ⋄ tʲ`.
    pub fn product(i: i64, j: i64) -> (i64, i64) {
        (i, i + j - 1)
    }

    pub fn form(i: i64, j: i64) -> i64 {
        i64::from(i + j + 1 == 0)
    }

    /// Terms `(coefficient, p, q)` of `Δ(tʲ)` with both degrees in `[lo, hi]`.
    pub fn coproduct_terms(j: i64, lo: i64, hi: i64) -> Vec<(i64, i64, i64)> {
        (lo..=hi)
            .map(|p| {
                let i = -p - 2;
                (i + 1, p, j + i)
            })
            .filter(|&(c, _, q)| c != 0 && (lo..=hi).contains(&q))
            .collect()
    }

    /// The grading component `B_i = k·t^{i+1}`.
    pub fn graded_degree(exponent: i64) -> i64 {
        exponent - 1
    }
}

/// A finite sum `Σ a_k t^k` with `a_k ∈ A`, stored without zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentVector {
    field: Field,
    dim: usize,
    terms: BTreeMap<i64, Vec<Scalar>>,
}

impl LaurentVector {
    pub fn zero(field: Field, dim: usize) -> LaurentVector {
        LaurentVector { field, dim, terms: BTreeMap::new() }
    }

    /// `a t^k`.
    pub fn monomial(field: Field, a: Vec<Scalar>, k: i64) -> LaurentVector {
        let mut v = LaurentVector::zero(field, a.len());
        v.add_term(k, &a);
        v
    }

    /// `e_i t^k` in an algebra of dimension `dim`.
    pub fn basis(field: Field, dim: usize, i: usize, k: i64) -> LaurentVector {
        let mut a = vzero(field, dim);
        a[i] = field.one();
        LaurentVector::monomial(field, a, k)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<Scalar>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> Vec<Scalar> {
        self.terms.get(&k).cloned().unwrap_or_else(|| vzero(self.field, self.dim))
    }

    pub fn add_term(&mut self, k: i64, a: &[Scalar]) {
        assert_eq!(a.len(), self.dim, "coefficient dimension");
        let next = vadd(&self.coefficient(k), a);
        if vis_zero(&next) {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, next);
        }
    }

    pub fn add(&self, other: &LaurentVector) -> LaurentVector {
        let mut out = self.clone();
        for (k, a) in &other.terms {
            out.add_term(*k, a);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> LaurentVector {
        let mut out = LaurentVector::zero(self.field, self.dim);
        for (k, a) in &self.terms {
            out.add_term(*k, &vscale(s, a));
        }
        out
    }
}

/// `[a tⁱ, b tʲ] = i (a∘b) t^{i+j−1} − j (b∘a) t^{i+j−1}`, extended bilinearly.
pub fn laurent_bracket(x: &LaurentVector, y: &LaurentVector, a: &Algebra) -> LaurentVector {
    let f = a.field();
    let mut out = LaurentVector::zero(f, a.dim());
    for (i, u) in &x.terms {
        for (j, v) in &y.terms {
            let fwd = vscale(&f.from_i64(*i), &a.mul(u, v));
            let bwd = vscale(&f.from_i64(-*j), &a.mul(v, u));
            out.add_term(i + j - 1, &vadd(&fwd, &bwd));
        }
    }
    out
}

/// Degree triples at which a non-Novikov product already breaks Jacobi.
pub const JACOBI_PROBES: [[i64; 3]; 3] = [[1, 0, 0], [1, 1, 0], [2, 0, 0]];

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]` for `x = e_a t^i`, `y = e_b t^j`, `z = e_c t^k`.
pub fn jacobi_residual(a: &Algebra, basis: [usize; 3], degrees: [i64; 3]) -> LaurentVector {
    let (f, n) = (a.field(), a.dim());
    let x = LaurentVector::basis(f, n, basis[0], degrees[0]);
    let y = LaurentVector::basis(f, n, basis[1], degrees[1]);
    let z = LaurentVector::basis(f, n, basis[2], degrees[2]);
    let one = laurent_bracket(&laurent_bracket(&x, &y, a), &z, a);
    let two = laurent_bracket(&laurent_bracket(&y, &z, a), &x, a);
    let three = laurent_bracket(&laurent_bracket(&z, &x, a), &y, a);
    one.add(&two).add(&three)
}

/// Jacobi on all basis triples at the given degree triples.
pub fn check_laurent_jacobi(a: &Algebra, degrees: &[[i64; 3]]) -> Report {
    let n = a.dim();
    let basis = a.basis();
    let mut items = Vec::new();
    for d in degrees {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    items.push(([x, y, z], *d));
                }
            }
        }
    }
    let mut report = Report::new("laurent jacobi");
    report.push(Check::scan("jacobi", &items, |&(idx, d)| {
        let res = jacobi_residual(a, idx, d);
        if res.is_zero() {
            return vec![];
        }
        let at = idx.iter().zip(d).map(|(i, k)| format!("{}@{k}", basis.name(*i))).collect();
        let entries = res
            .terms()
            .iter()
            .flat_map(|(k, v)| residual_entries(v, |i| format!("{}@{k}", basis.name(i))))
            .collect();
        vec![Witness::new("jacobi", at, entries)]
    }));
    report
}
