//! Seeded random structures for property tests, the acceptance suite and
//! sampled search. Every generator is a pure function of its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{associated_novikov, Algebra, PreNovikovAlgebra};
use crate::bialgebra::{coboundary_coproduct_unchecked, dualize_product, Coalgebra};
use crate::fixtures::{novikov_2d, novikov_2d_coproduct, schrodinger_virasoro, truncated_polynomials};
use crate::linalg::{Basis, BilinearForm, Matrix, Ten3};
use crate::representation::{dual_representation_unchecked, Representation};
use crate::scalar::{Field, Scalar};
use crate::yangbaxter::{canonical_skew_form, nybe_residual_unchecked, o_operator_lift, identity_o_operator, RTensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over F_p; small integers in `[-3, 3]` over ℚ.
pub fn random_scalar(rng: &mut ChaCha8Rng, f: Field) -> Scalar {
    match f {
        Field::Rational => f.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => f.from_i64(rng.gen_range(0..i64::from(p))),
    }
}

fn sparse_scalar(rng: &mut ChaCha8Rng, f: Field, density: f64) -> Scalar {
    if rng.gen_bool(density.clamp(0.0, 1.0)) {
        random_scalar(rng, f)
    } else {
        f.zero()
    }
}

pub fn random_algebra(f: Field, dim: usize, seed: u64, density: f64) -> Algebra {
    let mut g = rng(seed);
    let c = Ten3::from_fn(f, [dim, dim, dim], |_, _, _| sparse_scalar(&mut g, f, density));
    Algebra::new(Basis::standard("e", dim), c).expect("shape")
}

pub fn random_rect(f: Field, rows: usize, cols: usize, seed: u64, density: f64) -> Matrix {
    let mut g = rng(seed);
    Matrix::from_fn(f, rows, cols, |_, _| sparse_scalar(&mut g, f, density))
}

pub fn random_matrix(f: Field, n: usize, seed: u64, density: f64) -> Matrix {
    random_rect(f, n, n, seed, density)
}

pub fn random_invertible(f: Field, n: usize, seed: u64) -> Matrix {
    (0u64..)
        .map(|k| random_matrix(f, n, seed.wrapping_add(k.wrapping_mul(0x9e37_79b9)), 1.0))
        .find(|m| !m.det().is_zero())
        .expect("some matrix is invertible")
}

pub fn random_skew(f: Field, n: usize, seed: u64) -> RTensor {
    let m = random_matrix(f, n, seed, 0.7);
    let upper = Matrix::from_fn(f, n, n, |i, j| if i < j { m.get(i, j).clone() } else { f.zero() });
    RTensor::new(upper.sub(&upper.transpose()))
}

pub fn random_coalgebra(f: Field, dim: usize, seed: u64, density: f64) -> Coalgebra {
    let mut g = rng(seed);
    let d = Ten3::from_fn(f, [dim, dim, dim], |_, _, _| sparse_scalar(&mut g, f, density));
    Coalgebra::new(Basis::standard("e", dim), d).expect("shape")
}

/// Known Novikov algebras of the given dimension, used when rejection
/// sampling does not find one quickly.
fn novikov_seeds(f: Field, dim: usize) -> Vec<Algebra> {
    let mut out = vec![Algebra::zero(f, Basis::standard("e", dim)), truncated_polynomials(f, dim)];
    match dim {
        1 => out.push(Algebra::from_entries(f, Basis::standard("e", 1), &[(0, 0, 0, 1)])),
        2 => out.push(novikov_2d(f)),
        3 => {
            out.push(schrodinger_virasoro(f));
            out.push(Algebra::from_entries(f, Basis::standard("e", 3), &[(0, 0, 0, 1), (1, 0, 1, 1), (2, 0, 2, 1)]));
        }
        _ => {}
    }
    out
}

/// A random Novikov algebra: sparse rejection sampling first, then a known
/// algebra in a random basis.
pub fn random_novikov(f: Field, dim: usize, seed: u64) -> Algebra {
    let mut g = rng(seed);
    let tries = if dim <= 2 { 64 } else { 16 };
    for _ in 0..tries {
        let a = random_algebra(f, dim, g.gen(), if dim <= 2 { 0.5 } else { 0.15 });
        if a.is_novikov() {
            return a.with_basis(Basis::standard("e", dim)).expect("basis");
        }
    }
    let seeds = novikov_seeds(f, dim);
    let base = &seeds[g.gen_range(0..seeds.len())];
    let p = random_invertible(f, dim, g.gen());
    let scaled = base.consts().scale(&nonzero_scalar(&mut g, f));
    Algebra::new(Basis::standard("e", dim), scaled)
        .and_then(|a| a.change_basis(&p))
        .expect("basis change")
}

fn nonzero_scalar(g: &mut ChaCha8Rng, f: Field) -> Scalar {
    loop {
        let s = random_scalar(g, f);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random representation that is valid about half of the time.
pub fn random_representation(f: Field, seed: u64) -> Representation {
    let mut g = rng(seed);
    let valid = random_valid_representation(f, g.gen());
    if g.gen_bool(0.5) {
        return valid;
    }
    let m = valid.module_dim();
    let mut l = valid.l_mats().to_vec();
    let mut r = valid.r_mats().to_vec();
    let which = g.gen_range(0..l.len());
    let bump = random_matrix(f, m, g.gen(), 0.3);
    if g.gen_bool(0.5) {
        l[which] = l[which].add(&bump);
    } else {
        r[which] = r[which].add(&bump);
    }
    Representation::new(valid.algebra().clone(), valid.module().clone(), l, r).expect("shape")
}

/// Adjoint, coadjoint or zero representations of a random 2-dim Novikov algebra.
pub fn random_valid_representation(f: Field, seed: u64) -> Representation {
    let mut g = rng(seed);
    let a = random_novikov(f, 2, g.gen());
    match g.gen_range(0..3) {
        0 => Representation::adjoint(&a),
        1 => dual_representation_unchecked(&Representation::adjoint(&a)),
        _ => Representation::zero(&a, Basis::standard("v", g.gen_range(1..=2))),
    }
}

/// A two-dimensional Novikov algebra with a coproduct; the pair is a
/// bialgebra for a substantial fraction of seeds.
pub fn random_bialgebra_sample(f: Field, seed: u64) -> (Algebra, Coalgebra) {
    let mut g = rng(seed);
    let a = random_novikov(f, 2, g.gen());
    let basis = a.basis().clone();
    let c = match g.gen_range(0..6) {
        0 => Coalgebra::zero(f, basis),
        1 => {
            let r = random_skew(f, 2, g.gen());
            coboundary_coproduct_unchecked(&a, r.matrix())
        }
        2 => {
            let p = random_invertible(f, 2, g.gen());
            let lambda = random_scalar(&mut g, f);
            let a2 = novikov_2d(f).change_basis(&p).expect("basis");
            let c2 = novikov_2d_coproduct(f, &lambda).change_basis(&p).expect("basis");
            return (a2, c2);
        }
        3 => dualize_product(&random_novikov(f, 2, g.gen())).with_basis(basis).expect("basis"),
        4 => coboundary_coproduct_unchecked(&a, &random_matrix(f, 2, g.gen(), 0.5)),
        _ => random_coalgebra(f, 2, g.gen(), 0.3),
    };
    (a, c)
}

/// An algebra with a form; quasi-Frobenius for a substantial fraction of seeds.
pub fn random_form_sample(f: Field, seed: u64) -> (Algebra, BilinearForm) {
    let mut g = rng(seed);
    match g.gen_range(0..4) {
        0 | 1 => {
            let p = random_pre_novikov_1d(f, g.gen());
            let (alg, _) = o_operator_lift(&identity_o_operator(&p).expect("pre-Novikov")).expect("lift");
            let omega = canonical_skew_form(1, f);
            let q = random_invertible(f, 2, g.gen());
            let alg = alg.change_basis(&q).expect("basis");
            let moved = q.transpose().mul(omega.matrix()).mul(&q);
            (alg, BilinearForm::new(moved).expect("form"))
        }
        2 => {
            let a = random_novikov(f, 2, g.gen());
            let s = nonzero_scalar(&mut g, f);
            let m = Matrix::from_fn(f, 2, 2, |i, j| match (i, j) {
                (0, 1) => s.clone(),
                (1, 0) => -&s,
                _ => f.zero(),
            });
            (a, BilinearForm::new(m).expect("form"))
        }
        _ => {
            let a = random_novikov(f, 2, g.gen());
            (a, BilinearForm::new(random_matrix(f, 2, g.gen(), 0.7)).expect("form"))
        }
    }
}

/// Skewsymmetric NYBE solutions, found by sampling; returns the first hit.
pub fn find_skew_solution(a: &Algebra, seed: u64, tries: usize) -> Option<RTensor> {
    let mut g = rng(seed);
    (0..tries)
        .map(|_| random_skew(a.field(), a.dim(), g.gen()))
        .find(|r| !r.matrix().is_zero() && nybe_residual_unchecked(a, r.matrix()).is_zero())
}

/// A pre-Novikov algebra from a random one-dimensional left product.
pub fn random_pre_novikov_1d(f: Field, seed: u64) -> PreNovikovAlgebra {
    let mut g = rng(seed);
    let lt = random_scalar(&mut g, f);
    let p = PreNovikovAlgebra::new(
        Basis::new(["e"]).expect("basis"),
        Ten3::from_vec(f, [1, 1, 1], vec![lt]).expect("shape"),
        Ten3::zeros(f, [1, 1, 1]),
    )
    .expect("shape");
    debug_assert!(associated_novikov(&p).is_ok());
    p
}
