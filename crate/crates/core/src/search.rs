//! Enumeration of structure-constant tensors over F_p that pass a class
//! checker, with optional secondary filters.
//!
//! Exhaustive mode visits all `p^(n³)` tensors in lexicographic order of
//! their flattened constants `c[α][β][γ]`. Sampling mode draws tensors from
//! a seeded generator and keeps the distinct hits in draw order.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Class};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{Basis, BilinearForm, Matrix, Ten3};
use crate::sampling::rng;
use crate::scalar::{Field, Scalar};
use crate::yangbaxter::{check_quasi_frobenius, nybe_residual_unchecked};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    /// Keep algebras admitting a nondegenerate alternating quasi-Frobenius form.
    pub quasi_frobenius: bool,
    /// Keep algebras admitting a nonzero alternating NYBE solution.
    pub nybe: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub dim: usize,
    pub field: Field,
    pub class: Class,
    pub filters: Filters,
    pub sampling: Option<Sampling>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_exhaustive_dim: usize,
    pub max_candidates: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_exhaustive_dim: 2, max_candidates: 1 << 24 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    /// Position in the enumeration order, or the draw number when sampling.
    pub index: u64,
    pub algebra: Algebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub spec: SearchSpec,
    pub candidates: u64,
    pub hits: Vec<Hit>,
}

const BLOCK: u64 = 1024;

fn flat_len(dim: usize) -> u32 {
    (dim * dim * dim) as u32
}

/// The candidate with the given index; the first constant is the most
/// significant base-p digit.
pub fn candidate(field: Field, dim: usize, index: u64) -> Algebra {
    let p = u64::from(field.characteristic());
    let len = dim * dim * dim;
    let mut digits = vec![0u64; len];
    let mut k = index;
    for d in digits.iter_mut().rev() {
        *d = k % p;
        k /= p;
    }
    let data = digits.into_iter().map(|d| field.from_i64(d as i64)).collect();
    let c = Ten3::from_vec(field, [dim, dim, dim], data).expect("shape");
    Algebra::new(Basis::standard("e", dim), c).expect("shape")
}

/// All alternating `n×n` matrices over a prime field, zero first.
fn alternating_matrices(field: Field, n: usize) -> Vec<Matrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let elems = field.elements().expect("prime field");
    let p = elems.len() as u64;
    let total = p.pow(slots.len() as u32);
    (0..total)
        .map(|mut k| {
            let mut m = Matrix::zeros(field, n, n);
            for &(i, j) in &slots {
                let v = &elems[(k % p) as usize];
                k /= p;
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
            m
        })
        .collect()
}

pub fn admits_quasi_frobenius(a: &Algebra) -> bool {
    alternating_matrices(a.field(), a.dim()).into_iter().any(|m| {
        let omega = BilinearForm::new(m).expect("square");
        omega.is_nondegenerate() && check_quasi_frobenius(a, &omega).passed()
    })
}

pub fn admits_nybe_solution(a: &Algebra) -> bool {
    alternating_matrices(a.field(), a.dim())
        .into_iter()
        .any(|r| !r.is_zero() && nybe_residual_unchecked(a, &r).is_zero())
}

fn accepts(spec: &SearchSpec, a: &Algebra) -> bool {
    spec.class.holds(a)
        && (!spec.filters.quasi_frobenius || admits_quasi_frobenius(a))
        && (!spec.filters.nybe || admits_nybe_solution(a))
}

fn random_candidate(field: Field, dim: usize, g: &mut impl Rng) -> Algebra {
    let p = i64::from(field.characteristic());
    let data: Vec<Scalar> = (0..dim * dim * dim).map(|_| field.from_i64(g.gen_range(0..p))).collect();
    let c = Ten3::from_vec(field, [dim, dim, dim], data).expect("shape");
    Algebra::new(Basis::standard("e", dim), c).expect("shape")
}

pub fn search(spec: &SearchSpec, limits: &Limits) -> Result<SearchOutcome> {
    let p = spec.field.characteristic();
    if p == 0 {
        return Err(Error::InvalidField("search needs a prime field".into()));
    }
    if spec.dim == 0 {
        return Err(Error::ShapeMismatch("dimension must be positive".into()));
    }
    match spec.sampling {
        Some(s) => Ok(sampled(spec, s)),
        None => {
            if spec.dim > limits.max_exhaustive_dim {
                return Err(Error::CapExceeded(format!(
                    "exhaustive search is capped at dimension {}; use sampling mode",
                    limits.max_exhaustive_dim
                )));
            }
            let total = u64::from(p)
                .checked_pow(flat_len(spec.dim))
                .filter(|t| *t <= limits.max_candidates)
                .ok_or_else(|| {
                    Error::CapExceeded(format!("{p}^{} candidates exceed the cap of {}", flat_len(spec.dim), limits.max_candidates))
                })?;
            Ok(exhaustive(spec, total))
        }
    }
}

fn exhaustive(spec: &SearchSpec, total: u64) -> SearchOutcome {
    let blocks = total.div_ceil(BLOCK) as usize;
    let found = exec::map_range(blocks, |b| {
        let lo = b as u64 * BLOCK;
        let hi = (lo + BLOCK).min(total);
        (lo..hi)
            .filter_map(|k| {
                let a = candidate(spec.field, spec.dim, k);
                accepts(spec, &a).then_some(Hit { index: k, algebra: a })
            })
            .collect::<Vec<_>>()
    });
    SearchOutcome { spec: *spec, candidates: total, hits: found.into_iter().flatten().collect() }
}

fn sampled(spec: &SearchSpec, s: Sampling) -> SearchOutcome {
    let mut g = rng(s.seed);
    let draws: Vec<Algebra> = (0..s.samples).map(|_| random_candidate(spec.field, spec.dim, &mut g)).collect();
    let verdicts = exec::map_slice(&draws, |a| accepts(spec, a));
    let mut hits: Vec<Hit> = Vec::new();
    for (k, (a, ok)) in draws.into_iter().zip(verdicts).enumerate() {
        if ok && !hits.iter().any(|h| h.algebra == a) {
            hits.push(Hit { index: k as u64, algebra: a });
        }
    }
    SearchOutcome { spec: *spec, candidates: s.samples, hits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::{set_mode, Mode};

    fn spec(dim: usize, p: u64, class: Class) -> SearchSpec {
        SearchSpec { dim, field: Field::prime(p).unwrap(), class, filters: Filters::default(), sampling: None }
    }

    fn count(s: &SearchSpec) -> usize {
        search(s, &Limits::default()).unwrap().hits.len()
    }

    #[test]
    fn one_dimensional_counts() {
        // Every product on a line is Novikov; only the zero bracket is alternating.
        assert_eq!(count(&spec(1, 2, Class::Novikov)), 2);
        assert_eq!(count(&spec(1, 2, Class::Lie)), 1);
        assert_eq!(count(&spec(1, 5, Class::Novikov)), 5);
        assert_eq!(count(&spec(1, 5, Class::CommAssoc)), 5);
        assert_eq!(count(&spec(1, 3, Class::Zinbiel)), 1);
    }

    #[test]
    fn candidate_order_is_lexicographic() {
        let f = Field::prime(2).unwrap();
        assert!(candidate(f, 2, 0).consts().is_zero());
        let last = candidate(f, 2, 255);
        assert!(last.consts().data().iter().all(Scalar::is_one));
        let one = candidate(f, 2, 1);
        assert!(one.consts().get(1, 1, 1).is_one());
        assert_eq!(one.consts().data().iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn two_dimensional_lie_over_f2() {
        // [e1,e2] = a e1 + b e2 with the rest forced: 4 Lie algebras.
        assert_eq!(count(&spec(2, 2, Class::Lie)), 4);
    }

    #[test]
    fn filters_shrink_the_result() {
        let base = spec(2, 3, Class::Novikov);
        let all = count(&base);
        let qf = count(&SearchSpec { filters: Filters { quasi_frobenius: true, nybe: false }, ..base });
        let nybe = count(&SearchSpec { filters: Filters { quasi_frobenius: false, nybe: true }, ..base });
        assert!(0 < qf && qf < all, "{qf} of {all}");
        assert!(qf <= nybe && nybe < all, "{nybe} of {all}");
        // A line carries no nondegenerate alternating form.
        let line = SearchSpec { filters: Filters { quasi_frobenius: true, nybe: false }, ..spec(1, 3, Class::Novikov) };
        assert_eq!(count(&line), 0);
    }

    #[test]
    fn caps_and_invalid_fields() {
        assert!(matches!(search(&spec(3, 2, Class::Novikov), &Limits::default()), Err(Error::CapExceeded(_))));
        let tight = Limits { max_exhaustive_dim: 2, max_candidates: 100 };
        assert!(matches!(search(&spec(2, 2, Class::Novikov), &tight), Err(Error::CapExceeded(_))));
        let q = SearchSpec { field: Field::Rational, ..spec(1, 2, Class::Novikov) };
        assert!(matches!(search(&q, &Limits::default()), Err(Error::InvalidField(_))));
    }

    #[test]
    fn sampling_is_seeded_and_deduplicated() {
        let s = SearchSpec { sampling: Some(Sampling { samples: 300, seed: 9 }), ..spec(3, 2, Class::Novikov) };
        let a = search(&s, &Limits::default()).unwrap();
        let b = search(&s, &Limits::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.candidates, 300);
        for (i, h) in a.hits.iter().enumerate() {
            assert!(h.algebra.is_novikov());
            assert!(a.hits[..i].iter().all(|g| g.algebra != h.algebra));
        }
    }

    #[test]
    fn modes_agree() {
        let s = spec(2, 2, Class::Novikov);
        set_mode(Mode::Sequential);
        let seq = search(&s, &Limits::default()).unwrap();
        set_mode(Mode::Parallel);
        let par = search(&s, &Limits::default()).unwrap();
        assert_eq!(seq, par);
    }
}
