//! Exact linear algebra over the rationals.
//!
//! Everything downstream (Hom spaces, extension classes, idempotents) is
//! reduced to kernels, ranks and solves of [`RatMatrix`] values.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational scalar.
pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

/// Row echelon data: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Builds a matrix from row-major entries; panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must equal rows x cols");
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        RatMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&x| q(x)).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Gauss-Jordan elimination; every pivot row is normalized to a leading 1.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                if !m[(row, c)].is_zero() {
                    m[(row, c)] = &m[(row, c)] * &inv;
                }
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let delta = &f * &m[(row, c)];
                    m[(r, c)] -= delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{x : m x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                let x = &ech.reduced[(r, free)];
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `m x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Q]) -> Result<Option<Vec<Q>>, crate::Error> {
        if b.len() != self.rows {
            return Err(crate::Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.reduced[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Q::one();
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = ech.reduced[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pivot;
                for c in col..n {
                    let delta = &f * &m[(col, c)];
                    m[(r, c)] -= delta;
                }
            }
        }
        det
    }
}

/// Incrementally maintained span of vectors, reduced against earlier pivots.
///
/// Used for greedy basis extraction and membership tests.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<(usize, Vec<Q>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        SpanBuilder { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (a, b) in row.iter_mut().zip(&r) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Dense polynomials over the rationals, lowest degree first.
pub mod poly {
    use super::*;

    pub type Poly = Vec<Q>;

    pub fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Q]) -> Option<usize> {
        p.iter().rposition(|x| !x.is_zero())
    }

    pub fn mul(a: &[Q], b: &[Q]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(out)
    }

    pub fn add(a: &[Q], b: &[Q]) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero))
                .collect(),
        )
    }

    pub fn sub(a: &[Q], b: &[Q]) -> Poly {
        let nb: Poly = b.iter().map(|x| -x).collect();
        add(a, &nb)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divmod(a: &[Q], b: &[Q]) -> (Poly, Poly) {
        let db = degree(b).expect("division by the zero polynomial");
        let lead = b[db].clone();
        let mut r = trim(a.to_vec());
        let mut quot = Vec::new();
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = &r[dr] / &lead;
            let shift = dr - db;
            if quot.len() <= shift {
                quot.resize(shift + 1, Q::zero());
            }
            quot[shift] += &c;
            for (i, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    let delta = &c * y;
                    r[i + shift] -= delta;
                }
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    /// Returns `(g, u, v)` with `u a + v b = g = gcd(a, b)` and `g` monic.
    pub fn ext_gcd(a: &[Q], b: &[Q]) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1): (Poly, Poly) = (vec![Q::one()], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![Q::one()]);
        while degree(&r1).is_some() {
            let (qt, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&qt, &s1));
            let t = sub(&t0, &mul(&qt, &t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        if let Some(d) = degree(&r0) {
            let inv = r0[d].recip();
            let sc = |p: &Poly| trim(p.iter().map(|x| x * &inv).collect());
            return (sc(&r0), sc(&s0), sc(&t0));
        }
        (r0, s0, t0)
    }

    pub fn eval(p: &[Q], x: &Q) -> Q {
        p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// `p(t + shift)`.
    pub fn taylor_shift(p: &[Q], shift: &Q) -> Poly {
        let mut out: Poly = Vec::new();
        for c in p.iter().rev() {
            out = mul(&out, &[shift.clone(), Q::one()]);
            out = add(&out, core::slice::from_ref(c));
        }
        out
    }

    /// Rational roots by the rational root theorem; gives up (returns what it
    /// has) when the integer coefficients are too large to factor by trial
    /// division.
    pub fn rational_roots(p: &[Q]) -> Vec<Q> {
        let mut p = trim(p.to_vec());
        let mut roots = Vec::new();
        if degree(&p).is_none() {
            return roots;
        }
        if p[0].is_zero() {
            roots.push(Q::zero());
            while p.first().is_some_and(Zero::is_zero) {
                p.remove(0);
            }
        }
        if degree(&p).unwrap_or(0) == 0 {
            return roots;
        }
        let lcm = p.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let (Some(d0), Some(dn)) = (small_divisors(&a0), small_divisors(&an)) else {
            return roots;
        };
        for num in &d0 {
            for den in &dn {
                for sign in [1i64, -1] {
                    let cand = Q::new(BigInt::from(*num) * sign, BigInt::from(*den));
                    if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
        let n: u64 = u64::try_from(n).ok()?;
        if n > 1_000_000_000_000 {
            return None;
        }
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                if d * d != n {
                    out.push(n / d);
                }
            }
            d += 1;
        }
        Some(out)
    }
}

/// Minimal polynomial of an element of a finite-dimensional algebra, given
/// a way to multiply and to flatten elements into coordinates.
pub fn minimal_polynomial<T, M, C>(x: &T, one: T, mul: M, coords: C, max_degree: usize) -> poly::Poly
where
    M: Fn(&T, &T) -> T,
    C: Fn(&T) -> Vec<Q>,
{
    let mut powers_coords: Vec<Vec<Q>> = vec![coords(&one)];
    let mut current = one;
    for _ in 0..=max_degree {
        current = mul(&current, x);
        let c = coords(&current);
        let m = RatMatrix::from_columns(c.len(), &powers_coords);
        if let Ok(Some(sol)) = m.solve(&c) {
            let mut p: poly::Poly = sol.into_iter().map(|a| -a).collect();
            p.push(Q::one());
            return poly::trim(p);
        }
        powers_coords.push(c);
    }
    unreachable!("minimal polynomial degree exceeds the algebra dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(RatMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let k = RatMatrix::zeros(2, 2).kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(RatMatrix::from_columns(2, &k).rank(), 2);
    }

    #[test]
    fn row_of_ones_kernel() {
        let m = RatMatrix::from_i64(1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], q(0));
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_cases() {
        let b = vec![q(3), qf(-1, 2)];
        assert_eq!(RatMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(RatMatrix::zeros(2, 2).solve(&b).unwrap(), None);
        let m = RatMatrix::from_i64(1, 2, &[1, 1]);
        let x = m.solve(&[q(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q(2));
        assert!(matches!(m.solve(&[q(1), q(2)]), Err(crate::Error::DimensionMismatch { .. })));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = RatMatrix::from_i64(2, 2, &[2, 1, 7, 4]);
        assert_eq!(m.determinant(), q(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn polynomial_helpers() {
        // (t - 1)(t + 2)(2t - 1)
        let p = poly::mul(&poly::mul(&[q(-1), q(1)], &[q(2), q(1)]), &[q(-1), q(2)]);
        let mut roots = poly::rational_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![q(-2), qf(1, 2), q(1)]);
        let (g, u, v) = poly::ext_gcd(&[q(0), q(0), q(1)], &[q(1), q(1)]);
        assert_eq!(g, vec![q(1)]);
        let lhs = poly::add(&poly::mul(&u, &[q(0), q(0), q(1)]), &poly::mul(&v, &[q(1), q(1)]));
        assert_eq!(lhs, vec![q(1)]);
        assert_eq!(poly::taylor_shift(&[q(0), q(1)], &q(3)), vec![q(3), q(1)]);
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..=3, 1i64..=3), r * c).prop_map(move |v| {
                // sparse-ish entries so that rank deficiency actually happens
                let data = v.into_iter().map(|(n, d)| if n.abs() == 3 { q(0) } else { qf(n, d) }).collect();
                RatMatrix::from_vec(r, c, data)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            if !k.is_empty() {
                prop_assert_eq!(RatMatrix::from_columns(m.cols(), &k).rank(), k.len());
            }
        }

        #[test]
        fn solve_recovers_image(m in small_matrix(), seed in proptest::collection::vec(-4i64..=4, 12)) {
            let x: Vec<Q> = (0..m.cols()).map(|i| q(seed[i])).collect();
            let b = m.mul_vec(&x);
            let y = m.solve(&b).unwrap().expect("consistent system");
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
