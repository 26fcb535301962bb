//! Idempotent splitting in finite-dimensional endomorphism algebras.
//!
//! Both modules and complexes of projectives decompose by the same recipe:
//! decide locality from the trace form of a semisimple-faithful image, and
//! when the algebra is not local, find an element with a rational eigenvalue
//! whose Fitting decomposition is nontrivial, then lift its idempotent.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{minimal_polynomial, poly, q, RatMatrix, Q};
use crate::{Error, Result};

/// An endomorphism algebra presented by a spanning set of elements.
pub trait EndoRing {
    type Elem: Clone;

    fn one(&self) -> Self::Elem;
    /// `a ∘ b`.
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, s: &Q) -> Self::Elem;
    /// Faithful coordinates (used for equality tests).
    fn coords(&self, a: &Self::Elem) -> Vec<Q>;
    /// Multiplicative image whose kernel lies in the radical.
    fn top(&self, a: &Self::Elem) -> RatMatrix;
}

/// Dimension of the semisimple quotient, from the trace form of the top image.
pub fn semisimple_rank<R: EndoRing>(ring: &R, basis: &[R::Elem]) -> usize {
    let tops: Vec<RatMatrix> = basis.iter().map(|b| ring.top(b)).collect();
    let n = tops.len();
    let mut gram = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = tops[i].mul(&tops[j]).trace();
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    gram.rank()
}

/// Returns a nontrivial idempotent, `None` when the algebra is local.
pub fn split_idempotent<R: EndoRing>(ring: &R, basis: &[R::Elem], seed: u64) -> Result<Option<R::Elem>> {
    if semisimple_rank(ring, basis) <= 1 {
        return Ok(None);
    }
    let mut candidates: Vec<R::Elem> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(ring.add(&basis[i], &basis[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..24 {
        let mut acc = ring.scale(&ring.one(), &Q::zero());
        for b in basis {
            let c = (rng.next_u64() % 7) as i64 - 3;
            if c != 0 {
                acc = ring.add(&acc, &ring.scale(b, &q(c)));
            }
        }
        candidates.push(acc);
    }
    for phi in &candidates {
        if let Some(e) = fitting_idempotent(ring, phi) {
            return Ok(Some(e));
        }
    }
    Err(Error::NonSplitEndomorphismField)
}

fn fitting_idempotent<R: EndoRing>(ring: &R, phi: &R::Elem) -> Option<R::Elem> {
    let top = ring.top(phi);
    let n = top.rows();
    let mu = minimal_polynomial(&top, RatMatrix::identity(n), |a, b| a.mul(b), |a| a.entries().to_vec(), n);
    for lambda in poly::rational_roots(&mu) {
        let shifted = poly::taylor_shift(&mu, &lambda);
        let k = shifted.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let g: poly::Poly = shifted[k..].to_vec();
        if k == 0 || poly::degree(&g).unwrap_or(0) == 0 {
            continue;
        }
        let mut tk = alloc::vec![Q::zero(); k];
        tk.push(Q::one());
        let (_, _, w) = poly::ext_gcd(&tk, &g);
        let proj = poly::mul(&w, &g);
        let psi = ring.add(phi, &ring.scale(&ring.one(), &-lambda));
        let e = eval_poly(ring, &proj, &psi);
        return Some(lift_idempotent(ring, e));
    }
    None
}

fn eval_poly<R: EndoRing>(ring: &R, p: &[Q], x: &R::Elem) -> R::Elem {
    let mut acc = ring.scale(&ring.one(), &Q::zero());
    for c in p.iter().rev() {
        acc = ring.compose(&acc, x);
        if !c.is_zero() {
            acc = ring.add(&acc, &ring.scale(&ring.one(), c));
        }
    }
    acc
}

/// Newton iteration `e ↦ 3e² − 2e³`, exact once the defect is nilpotent.
fn lift_idempotent<R: EndoRing>(ring: &R, mut e: R::Elem) -> R::Elem {
    for _ in 0..64 {
        let e2 = ring.compose(&e, &e);
        if ring.coords(&e2) == ring.coords(&e) {
            return e;
        }
        let e3 = ring.compose(&e2, &e);
        e = ring.add(&ring.scale(&e2, &q(3)), &ring.scale(&e3, &q(-2)));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Concrete matrix algebra spanned by given matrices.
    struct Mats(usize);

    impl EndoRing for Mats {
        type Elem = RatMatrix;
        fn one(&self) -> RatMatrix {
            RatMatrix::identity(self.0)
        }
        fn compose(&self, a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
            a.mul(b)
        }
        fn add(&self, a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
            a.add(b)
        }
        fn scale(&self, a: &RatMatrix, s: &Q) -> RatMatrix {
            a.scale(s)
        }
        fn coords(&self, a: &RatMatrix) -> Vec<Q> {
            a.entries().to_vec()
        }
        fn top(&self, a: &RatMatrix) -> RatMatrix {
            a.clone()
        }
    }

    #[test]
    fn local_algebra_has_no_idempotent() {
        // k[t]/t^2 inside 2x2 matrices
        let basis = [RatMatrix::identity(2), RatMatrix::from_i64(2, 2, &[0, 1, 0, 0])];
        assert!(split_idempotent(&Mats(2), &basis, 1).unwrap().is_none());
    }

    #[test]
    fn full_matrix_algebra_splits() {
        let basis = [
            RatMatrix::from_i64(2, 2, &[1, 1, 1, 0]),
            RatMatrix::from_i64(2, 2, &[0, 1, 1, 1]),
            RatMatrix::from_i64(2, 2, &[1, 0, 0, 1]),
            RatMatrix::from_i64(2, 2, &[0, 1, 0, 0]),
        ];
        let e = split_idempotent(&Mats(2), &basis, 1).unwrap().unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn quadratic_field_is_reported_non_split() {
        // Q(sqrt 2) as a 2x2 matrix algebra
        let basis = [RatMatrix::identity(2), RatMatrix::from_i64(2, 2, &[0, 2, 1, 0])];
        assert_eq!(split_idempotent(&Mats(2), &basis, 1), Err(Error::NonSplitEndomorphismField));
    }
}
