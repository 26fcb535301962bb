//! The homotopy category of bounded complexes of finitely generated
//! projective modules.
//!
//! A complex is stored as a run of terms, each a list of vertices `v` standing
//! for `⊕ P_v`. A map `⊕ P_{v_i} → ⊕ P_{w_j}` is an [`AMat`]: entry `(j, i)`
//! is an element of `e_{w_j} A e_{v_i}`, acting by left multiplication on the
//! generator of `P_{v_i}`. Cochain conventions: `X[1]^n = X^{n+1}` with the
//! differential negated, and `Cone(f)^n = X^{n+1} ⊕ Y^n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::endo::{self, EndoRing};
use crate::linalg::{q, RatMatrix, SpanBuilder, Q};
use crate::quiver::{global_dimension, projective_cover, BoundQuiverAlgebra, GlobalDimension, Representation};
use crate::{Error, Result};

/// Matrix over the algebra between sums of indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMat {
    src: Vec<usize>,
    tgt: Vec<usize>,
    dim: usize,
    entries: Vec<Vec<Q>>,
}

fn is_zero_elem(x: &[Q]) -> bool {
    x.iter().all(Zero::is_zero)
}

impl AMat {
    pub fn zeros(alg: &BoundQuiverAlgebra, tgt: &[usize], src: &[usize]) -> AMat {
        let dim = alg.dim();
        AMat { src: src.to_vec(), tgt: tgt.to_vec(), dim, entries: vec![vec![Q::zero(); dim]; src.len() * tgt.len()] }
    }

    pub fn identity(alg: &BoundQuiverAlgebra, verts: &[usize]) -> AMat {
        let mut m = AMat::zeros(alg, verts, verts);
        for (i, &v) in verts.iter().enumerate() {
            m.entries[i * verts.len() + i][alg.trivial(v)] = Q::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.tgt.len()
    }

    pub fn cols(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self) -> &[usize] {
        &self.src
    }

    pub fn tgt(&self) -> &[usize] {
        &self.tgt
    }

    pub fn get(&self, r: usize, c: usize) -> &[Q] {
        &self.entries[r * self.src.len() + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Vec<Q> {
        let n = self.src.len();
        &mut self.entries[r * n + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| is_zero_elem(e))
    }

    /// `self ∘ d`.
    pub fn compose(&self, alg: &BoundQuiverAlgebra, d: &AMat) -> AMat {
        debug_assert_eq!(self.src, d.tgt);
        let mut out = AMat::zeros(alg, &self.tgt, &d.src);
        for l in 0..self.rows() {
            for j in 0..self.cols() {
                let a = self.get(l, j);
                if is_zero_elem(a) {
                    continue;
                }
                for i in 0..d.cols() {
                    let b = d.get(j, i);
                    if is_zero_elem(b) {
                        continue;
                    }
                    let prod = alg.mul_elems(a, b);
                    for (x, y) in out.get_mut(l, i).iter_mut().zip(prod) {
                        *x += y;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &AMat) -> AMat {
        debug_assert_eq!((&self.src, &self.tgt), (&other.src, &other.tgt));
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        AMat { entries, ..self.clone() }
    }

    pub fn scale(&self, s: &Q) -> AMat {
        let entries = self.entries.iter().map(|a| a.iter().map(|x| x * s).collect()).collect();
        AMat { entries, ..self.clone() }
    }

    pub fn neg(&self) -> AMat {
        self.scale(&q(-1))
    }

    pub fn sub(&self, other: &AMat) -> AMat {
        self.add(&other.neg())
    }

    /// Coefficients of the trivial paths: the induced map on tops.
    pub fn top(&self, alg: &BoundQuiverAlgebra) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows(), self.cols());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if self.tgt[r] == self.src[c] {
                    m[(r, c)] = self.get(r, c)[alg.trivial(self.src[c])].clone();
                }
            }
        }
        m
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> AMat {
        let tgt: Vec<usize> = rows.iter().map(|&r| self.tgt[r]).collect();
        let src: Vec<usize> = cols.iter().map(|&c| self.src[c]).collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).to_vec());
            }
        }
        AMat { src, tgt, dim: self.dim, entries }
    }

    /// Block matrix from a grid of blocks (row-major), with row vertex lists
    /// `tgts` and column vertex lists `srcs`.
    pub fn blocks(alg: &BoundQuiverAlgebra, tgts: &[&[usize]], srcs: &[&[usize]], grid: &[Option<&AMat>]) -> AMat {
        let tgt: Vec<usize> = tgts.concat();
        let src: Vec<usize> = srcs.concat();
        let mut out = AMat::zeros(alg, &tgt, &src);
        let mut r0 = 0;
        for (bi, t) in tgts.iter().enumerate() {
            let mut c0 = 0;
            for (bj, s) in srcs.iter().enumerate() {
                if let Some(b) = grid[bi * srcs.len() + bj] {
                    debug_assert_eq!((b.rows(), b.cols()), (t.len(), s.len()));
                    for r in 0..t.len() {
                        for c in 0..s.len() {
                            *out.get_mut(r0 + r, c0 + c) = b.get(r, c).to_vec();
                        }
                    }
                }
                c0 += s.len();
            }
            r0 += t.len();
        }
        out
    }

    /// Inverse of a matrix whose top is invertible.
    pub fn inverse(&self, alg: &BoundQuiverAlgebra) -> Option<AMat> {
        if self.rows() != self.cols() {
            return None;
        }
        let tinv = self.top(alg).inverse()?;
        let mut dinv = AMat::zeros(alg, &self.src, &self.tgt);
        for r in 0..self.cols() {
            for c in 0..self.rows() {
                if !tinv[(r, c)].is_zero() {
                    dinv.get_mut(r, c)[alg.trivial(self.src[r])] = tinv[(r, c)].clone();
                }
            }
        }
        // self = D (1 + D⁻¹ N) with D⁻¹N nilpotent
        let n = dinv.compose(alg, self).sub(&AMat::identity(alg, &self.src));
        let m = n.neg();
        let mut acc = AMat::identity(alg, &self.src);
        let mut pow = acc.clone();
        for _ in 0..=alg.nil_bound() * self.cols().max(1) {
            pow = pow.compose(alg, &m);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(acc.compose(alg, &dinv))
    }

    fn flatten_into(&self, out: &mut Vec<Q>) {
        for e in &self.entries {
            out.extend(e.iter().cloned());
        }
    }
}

/// Canonical degreewise shape of a minimal complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub lo: i32,
    pub terms: Vec<Vec<usize>>,
}

/// Bounded complex of projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    lo: i32,
    terms: Vec<Vec<usize>>,
    /// `diffs[i]: terms[i] → terms[i + 1]`.
    diffs: Vec<AMat>,
}

impl ProjComplex {
    pub fn new(alg: &BoundQuiverAlgebra, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<AMat>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for t in &terms {
            if let Some(&v) = t.iter().find(|&&v| v >= alg.num_vertices()) {
                return Err(Error::InvalidVertex(v));
            }
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src != terms[i] || d.tgt != terms[i + 1] {
                return Err(Error::InvalidComplex(format!("differential {i} has the wrong shape")));
            }
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let allowed = alg.paths_between(d.tgt[r], d.src[c]);
                    let e = d.get(r, c);
                    if e.iter().enumerate().any(|(b, x)| !x.is_zero() && !allowed.contains(&b)) {
                        return Err(Error::InvalidComplex(format!("differential {i} entry ({r}, {c}) has wrong endpoints")));
                    }
                }
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].compose(alg, &diffs[i - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!("d∘d ≠ 0 at position {i}")));
            }
        }
        Ok(ProjComplex { lo, terms, diffs }.trimmed())
    }

    pub fn zero() -> Self {
        ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `⊕ P_v` placed in a single degree.
    pub fn stalk(vertices: &[usize], degree: i32) -> Self {
        ProjComplex { lo: degree, terms: vec![vertices.to_vec()], diffs: Vec::new() }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            return ProjComplex::zero();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    /// Lowest and highest nonzero degree.
    pub fn range(&self) -> Option<(i32, i32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i32 - 1))
        }
    }

    pub fn term(&self, n: i32) -> &[usize] {
        let i = n - self.lo;
        if i < 0 || i as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[i as usize]
        }
    }

    /// `d^n: X^n → X^{n+1}`.
    pub fn diff(&self, alg: &BoundQuiverAlgebra, n: i32) -> AMat {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            AMat::zeros(alg, self.term(n + 1), self.term(n))
        }
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn shift(&self, n: i32) -> ProjComplex {
        let diffs = if n.rem_euclid(2) == 1 { self.diffs.iter().map(AMat::neg).collect() } else { self.diffs.clone() };
        ProjComplex { lo: self.lo - n, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(&self, alg: &BoundQuiverAlgebra, other: &ProjComplex) -> ProjComplex {
        let (Some((a0, a1)), Some((b0, b1))) = (self.range(), other.range()) else {
            return if self.is_zero() { other.clone() } else { self.clone() };
        };
        let (lo, hi) = (a0.min(b0), a1.max(b1));
        let terms: Vec<Vec<usize>> = (lo..=hi).map(|n| [self.term(n), other.term(n)].concat()).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let (d1, d2) = (self.diff(alg, n), other.diff(alg, n));
                AMat::blocks(
                    alg,
                    &[self.term(n + 1), other.term(n + 1)],
                    &[self.term(n), other.term(n)],
                    &[Some(&d1), None, None, Some(&d2)],
                )
            })
            .collect();
        ProjComplex { lo, terms, diffs }
    }

    pub fn signature(&self) -> Signature {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.sort_unstable();
                t
            })
            .collect();
        Signature { lo: self.lo, terms }
    }

    /// Number of indecomposable projective summands across all degrees.
    pub fn size(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    pub fn is_minimal(&self, alg: &BoundQuiverAlgebra) -> bool {
        self.find_unit(alg).is_none()
    }

    fn find_unit(&self, alg: &BoundQuiverAlgebra) -> Option<(usize, usize, usize)> {
        for (i, d) in self.diffs.iter().enumerate() {
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    if d.tgt[r] == d.src[c] && !d.get(r, c)[alg.trivial(d.src[c])].is_zero() {
                        return Some((i, r, c));
                    }
                }
            }
        }
        None
    }

    /// Homotopy-equivalent complex with all differential entries radical.
    pub fn minimize(&self, alg: &BoundQuiverAlgebra) -> ProjComplex {
        let mut x = self.clone();
        while let Some((i, j, c)) = x.find_unit(alg) {
            let d = &x.diffs[i];
            let rows: Vec<usize> = (0..d.rows()).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..d.cols()).filter(|&k| k != c).collect();
            let alpha = d.select(&rows, &cols);
            let gamma = d.select(&rows, &[c]);
            let delta = d.select(&[j], &cols);
            let uinv = d.select(&[j], &[c]).inverse(alg).expect("unit entry");
            let new_d = alpha.sub(&gamma.compose(alg, &uinv).compose(alg, &delta));
            if i > 0 {
                let prev = &x.diffs[i - 1];
                let keep: Vec<usize> = (0..prev.cols()).collect();
                x.diffs[i - 1] = prev.select(&cols, &keep);
            }
            if i + 1 < x.diffs.len() {
                let next = &x.diffs[i + 1];
                let keep: Vec<usize> = (0..next.rows()).collect();
                x.diffs[i + 1] = next.select(&keep, &rows);
            }
            x.diffs[i] = new_d;
            x.terms[i].remove(c);
            x.terms[i + 1].remove(j);
        }
        x.trimmed()
    }
}

/// Degree-zero chain map, with one component per degree of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ProjComplex,
    target: ProjComplex,
    comps: Vec<AMat>,
}

impl ChainMap {
    pub fn new(alg: &BoundQuiverAlgebra, source: ProjComplex, target: ProjComplex, comps: Vec<AMat>) -> Result<Self> {
        if comps.len() != source.terms.len() {
            return Err(Error::InvalidChainMap(format!(
                "expected {} components, got {}",
                source.terms.len(),
                comps.len()
            )));
        }
        let f = ChainMap { source, target, comps };
        if let Some((lo, hi)) = f.source.range() {
            for n in lo..=hi {
                let c = &f.comps[(n - lo) as usize];
                if c.src != f.source.term(n) || c.tgt != f.target.term(n) {
                    return Err(Error::InvalidChainMap(format!("component in degree {n} has the wrong shape")));
                }
            }
            for n in lo - 1..=hi {
                let lhs = f.target.diff(alg, n).compose(alg, &f.comp(alg, n));
                let rhs = f.comp(alg, n + 1).compose(alg, &f.source.diff(alg, n));
                if lhs != rhs {
                    return Err(Error::InvalidChainMap(format!("does not commute with the differential in degree {n}")));
                }
            }
        }
        Ok(f)
    }

    fn from_parts(source: ProjComplex, target: ProjComplex, comps: Vec<AMat>) -> Self {
        ChainMap { source, target, comps }
    }

    pub fn zero(alg: &BoundQuiverAlgebra, source: &ProjComplex, target: &ProjComplex) -> Self {
        let comps = match source.range() {
            Some((lo, hi)) => (lo..=hi).map(|n| AMat::zeros(alg, target.term(n), source.term(n))).collect(),
            None => Vec::new(),
        };
        ChainMap::from_parts(source.clone(), target.clone(), comps)
    }

    pub fn identity(alg: &BoundQuiverAlgebra, x: &ProjComplex) -> Self {
        let comps = x.terms.iter().map(|t| AMat::identity(alg, t)).collect();
        ChainMap::from_parts(x.clone(), x.clone(), comps)
    }

    pub fn source(&self) -> &ProjComplex {
        &self.source
    }

    pub fn target(&self) -> &ProjComplex {
        &self.target
    }

    pub fn comp(&self, alg: &BoundQuiverAlgebra, n: i32) -> AMat {
        match self.source.range() {
            Some((lo, hi)) if n >= lo && n <= hi => self.comps[(n - lo) as usize].clone(),
            _ => AMat::zeros(alg, self.target.term(n), self.source.term(n)),
        }
    }

    /// Trace of the induced map on the tops of all terms.
    pub fn top_trace(&self, alg: &BoundQuiverAlgebra) -> Q {
        self.comps.iter().map(|c| c.top(alg).trace()).fold(Q::zero(), |a, b| a + b)
    }

    /// `self ∘ f`.
    pub fn compose(&self, alg: &BoundQuiverAlgebra, f: &ChainMap) -> ChainMap {
        let comps = match f.source.range() {
            Some((lo, hi)) => (lo..=hi).map(|n| self.comp(alg, n).compose(alg, &f.comp(alg, n))).collect(),
            None => Vec::new(),
        };
        ChainMap::from_parts(f.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: &Q) -> ChainMap {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(AMat::is_zero)
    }

    pub fn shift(&self, n: i32) -> ChainMap {
        ChainMap::from_parts(self.source.shift(n), self.target.shift(n), self.comps.clone())
    }

    /// An isomorphism of complexes (degreewise invertible on tops).
    pub fn is_degreewise_iso(&self, alg: &BoundQuiverAlgebra) -> bool {
        if self.source.signature() != self.target.signature() {
            return false;
        }
        self.comps.iter().all(|c| c.top(alg).determinant() != Q::zero())
    }

    /// `Cone(f)^n = X^{n+1} ⊕ Y^n` with `d = [[−d_X, 0], [f, d_Y]]`.
    pub fn cone(&self, alg: &BoundQuiverAlgebra) -> ProjComplex {
        let (x, y) = (&self.source, &self.target);
        let range = match (x.range(), y.range()) {
            (None, None) => return ProjComplex::zero(),
            (Some((a, b)), None) => (a - 1, b - 1),
            (None, Some(r)) => r,
            (Some((a, b)), Some((c, d))) => ((a - 1).min(c), (b - 1).max(d)),
        };
        let (lo, hi) = range;
        let terms: Vec<Vec<usize>> = (lo..=hi).map(|n| [x.term(n + 1), y.term(n)].concat()).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let dx = x.diff(alg, n + 1).neg();
                let f = self.comp(alg, n + 1);
                let dy = y.diff(alg, n);
                AMat::blocks(
                    alg,
                    &[x.term(n + 2), y.term(n + 1)],
                    &[x.term(n + 1), y.term(n)],
                    &[Some(&dx), None, Some(&f), Some(&dy)],
                )
            })
            .collect();
        ProjComplex { lo, terms, diffs }.trimmed()
    }

    /// `[f_1 … f_m]: X_1 ⊕ … ⊕ X_m → Y`.
    pub fn hstack(alg: &BoundQuiverAlgebra, maps: &[ChainMap], target: &ProjComplex) -> ChainMap {
        let mut source = ProjComplex::zero();
        for f in maps {
            source = source.direct_sum(alg, &f.source);
        }
        let comps = match source.range() {
            Some((lo, hi)) => (lo..=hi)
                .map(|n| {
                    let parts: Vec<AMat> = maps.iter().map(|f| f.comp(alg, n)).collect();
                    let srcs: Vec<&[usize]> = maps.iter().map(|f| f.source.term(n)).collect();
                    let grid: Vec<Option<&AMat>> = parts.iter().map(Some).collect();
                    AMat::blocks(alg, &[target.term(n)], &srcs, &grid)
                })
                .collect(),
            None => Vec::new(),
        };
        ChainMap::from_parts(source, target.clone(), comps)
    }

    /// `[f_1; …; f_m]: X → Y_1 ⊕ … ⊕ Y_m`.
    pub fn vstack(alg: &BoundQuiverAlgebra, maps: &[ChainMap], source: &ProjComplex) -> ChainMap {
        let mut target = ProjComplex::zero();
        for f in maps {
            target = target.direct_sum(alg, &f.target);
        }
        let comps = match source.range() {
            Some((lo, hi)) => (lo..=hi)
                .map(|n| {
                    let parts: Vec<AMat> = maps.iter().map(|f| f.comp(alg, n)).collect();
                    let tgts: Vec<&[usize]> = maps.iter().map(|f| f.target.term(n)).collect();
                    let grid: Vec<Option<&AMat>> = parts.iter().map(Some).collect();
                    AMat::blocks(alg, &tgts, &[source.term(n)], &grid)
                })
                .collect(),
            None => Vec::new(),
        };
        ChainMap::from_parts(source.clone(), target, comps)
    }

    fn flatten(&self) -> Vec<Q> {
        let mut out = Vec::new();
        for c in &self.comps {
            c.flatten_into(&mut out);
        }
        out
    }
}

/// `(row, col, basis elements, offset)` of one matrix entry's coordinates.
type Cell = (usize, usize, Vec<usize>, usize);

/// Coordinates on the space of degree-`k` maps `X^n → Y^{n+k}`.
struct Layout {
    x_lo: i32,
    k: i32,
    /// Per source degree, the nonempty entries.
    cells: Vec<Vec<Cell>>,
    /// Per source degree, `row * cols + col` to an index into `cells`.
    lookup: Vec<Vec<Option<usize>>>,
    len: usize,
}

impl Layout {
    fn new(alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> Layout {
        let mut cells = Vec::new();
        let mut lookup = Vec::new();
        let mut len = 0;
        if let Some((lo, hi)) = x.range() {
            for n in lo..=hi {
                let mut cell = Vec::new();
                let cols = x.term(n).len();
                let mut look = vec![None; y.term(n + k).len() * cols];
                for (r, &w) in y.term(n + k).iter().enumerate() {
                    for (c, &v) in x.term(n).iter().enumerate() {
                        let paths = alg.paths_between(w, v).to_vec();
                        if !paths.is_empty() {
                            let l = paths.len();
                            look[r * cols + c] = Some(cell.len());
                            cell.push((r, c, paths, len));
                            len += l;
                        }
                    }
                }
                cells.push(cell);
                lookup.push(look);
            }
        }
        Layout { x_lo: x.lo, k, cells, lookup, len }
    }

    /// Adds the element `e` into the coordinates of entry `(r, c)` in source
    /// degree `n`.
    #[allow(clippy::too_many_arguments)]
    fn accumulate(&self, x: &ProjComplex, n: i32, r: usize, c: usize, e: &[Q], sign: &Q, out: &mut [Q]) {
        let di = n - self.x_lo;
        if di < 0 || di as usize >= self.cells.len() {
            return;
        }
        let cols = x.term(n).len();
        let Some(idx) = self.lookup[di as usize][r * cols + c] else {
            return;
        };
        let (_, _, paths, off) = &self.cells[di as usize][idx];
        for (t, &b) in paths.iter().enumerate() {
            if !e[b].is_zero() {
                out[off + t] += sign * &e[b];
            }
        }
    }

    /// Columns of the map `f ↦ d_Y f + sign · f d_X` from this layout to
    /// `next`, whose offset is one larger.
    fn differential(
        &self,
        alg: &BoundQuiverAlgebra,
        x: &ProjComplex,
        y: &ProjComplex,
        next: &Layout,
        sign: &Q,
    ) -> Vec<Vec<Q>> {
        let one = Q::one();
        let dim = alg.dim();
        let mut cols = Vec::with_capacity(self.len);
        for (di, cell) in self.cells.iter().enumerate() {
            let n = self.x_lo + di as i32;
            let dy = y.diff(alg, n + self.k);
            let dx = x.diff(alg, n - 1);
            for (r, c, paths, _) in cell {
                for &b in paths {
                    let mut out = vec![Q::zero(); next.len];
                    // (d_Y f)[l][c] = d_Y[l][r] · b
                    for l in 0..dy.rows() {
                        let a = dy.get(l, *r);
                        let mut e = vec![Q::zero(); dim];
                        let mut any = false;
                        for (i, ai) in a.iter().enumerate() {
                            if ai.is_zero() {
                                continue;
                            }
                            for (k, coef) in alg.product(i, b) {
                                e[*k] += ai * coef;
                                any = true;
                            }
                        }
                        if any {
                            next.accumulate(x, n, l, *c, &e, &one, &mut out);
                        }
                    }
                    // (f d_X)[r][i'] = b · d_X[c][i']
                    for ip in 0..dx.cols() {
                        let a = dx.get(*c, ip);
                        let mut e = vec![Q::zero(); dim];
                        let mut any = false;
                        for (j, aj) in a.iter().enumerate() {
                            if aj.is_zero() {
                                continue;
                            }
                            for (k, coef) in alg.product(b, j) {
                                e[*k] += aj * coef;
                                any = true;
                            }
                        }
                        if any {
                            next.accumulate(x, n - 1, *r, ip, &e, sign, &mut out);
                        }
                    }
                    cols.push(out);
                }
            }
        }
        cols
    }

    fn to_comps(&self, alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex, v: &[Q]) -> Vec<AMat> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                let n = self.x_lo + i as i32;
                let mut m = AMat::zeros(alg, y.term(n + self.k), x.term(n));
                for (r, c, paths, off) in cell {
                    let e = m.get_mut(*r, *c);
                    for (t, &b) in paths.iter().enumerate() {
                        e[b] = v[off + t].clone();
                    }
                }
                m
            })
            .collect()
    }

    fn to_vec(&self, comps: &[AMat]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.len];
        for (cell, m) in self.cells.iter().zip(comps) {
            for (r, c, paths, off) in cell {
                let e = m.get(*r, *c);
                for (t, &b) in paths.iter().enumerate() {
                    v[off + t] = e[b].clone();
                }
            }
        }
        v
    }
}

fn unit(len: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    v[i] = Q::one();
    v
}

/// `Hom_K(X, Y)` presented as cocycles modulo coboundaries of the Hom complex.
pub struct HomSpace {
    source: ProjComplex,
    target: ProjComplex,
    layout: Layout,
    reps: Vec<Vec<Q>>,
    solver: RatMatrix,
}

impl HomSpace {
    /// Degree-zero maps `X → Y`.
    pub fn new(alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex) -> HomSpace {
        let l0 = Layout::new(alg, x, y, 0);
        let l1 = Layout::new(alg, x, y, 1);
        let lm = Layout::new(alg, x, y, -1);
        // D(f) = d_Y f − f d_X on degree-zero maps
        let dcols = l0.differential(alg, x, y, &l1, &q(-1));
        let cocycles = if l0.len == 0 {
            Vec::new()
        } else if l1.len == 0 {
            (0..l0.len).map(|i| unit(l0.len, i)).collect()
        } else {
            RatMatrix::from_columns(l1.len, &dcols).kernel_basis()
        };
        // boundaries d_Y h + h d_X for h of degree −1
        let mut span = SpanBuilder::new();
        let mut bounds = Vec::new();
        for v in lm.differential(alg, x, y, &l0, &q(1)) {
            if span.insert(&v) {
                bounds.push(v);
            }
        }
        let mut reps = Vec::new();
        for z in cocycles {
            if span.insert(&z) {
                reps.push(z);
            }
        }
        let cols: Vec<Vec<Q>> = reps.iter().chain(&bounds).cloned().collect();
        let solver = if cols.is_empty() { RatMatrix::zeros(l0.len, 0) } else { RatMatrix::from_columns(l0.len, &cols) };
        HomSpace { source: x.clone(), target: y.clone(), layout: l0, reps, solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn basis(&self, alg: &BoundQuiverAlgebra) -> Vec<ChainMap> {
        self.reps.iter().map(|v| self.to_map(alg, v)).collect()
    }

    fn to_map(&self, alg: &BoundQuiverAlgebra, v: &[Q]) -> ChainMap {
        let comps = self.layout.to_comps(alg, &self.source, &self.target, v);
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }

    /// Combination `Σ c_i b_i` of the basis.
    pub fn combine(&self, alg: &BoundQuiverAlgebra, coeffs: &[Q]) -> ChainMap {
        let mut v = vec![Q::zero(); self.layout.len];
        for (c, r) in coeffs.iter().zip(&self.reps) {
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(r) {
                    *x += c * y;
                }
            }
        }
        self.to_map(alg, &v)
    }

    /// Coordinates of the homotopy class of `f` in the basis.
    pub fn coords(&self, f: &ChainMap) -> Result<Vec<Q>> {
        let v = self.layout.to_vec(&f.comps);
        if self.layout.len == 0 {
            return Ok(Vec::new());
        }
        let x = self.solver.solve(&v)?.ok_or_else(|| Error::InvalidChainMap("not a chain map between these complexes".into()))?;
        Ok(x[..self.reps.len()].to_vec())
    }
}

/// Basis of `Hom(X, Y[k])`.
pub fn hom_basis(alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> Vec<ChainMap> {
    HomSpace::new(alg, x, &y.shift(k)).basis(alg)
}

pub fn hom_dim(alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> usize {
    let (Some((xl, xh)), Some((yl, yh))) = (x.range(), y.range()) else {
        return 0;
    };
    if k < yl - xh || k > yh - xl {
        return 0;
    }
    HomSpace::new(alg, x, &y.shift(k)).dim()
}

/// Minimal projective resolution, with `P_0` in degree 0.
pub fn resolve(alg: &BoundQuiverAlgebra, m: &Representation, bound: usize) -> Result<ProjComplex> {
    if m.total_dim() == 0 {
        return Ok(ProjComplex::zero());
    }
    let (gens, mut p, mut pi) = projective_cover(alg, m)?;
    let mut verts: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let mut terms = vec![verts.clone()];
    let mut diffs = Vec::new();
    loop {
        let (k, incl) = pi.kernel(alg, &p)?;
        if k.total_dim() == 0 {
            break;
        }
        if terms.len() > bound {
            return Err(Error::ResolutionTooLong { bound });
        }
        let (kgens, kp, kpi) = projective_cover(alg, &k)?;
        let new_verts: Vec<usize> = kgens.iter().map(|(v, _)| *v).collect();
        let mut d = AMat::zeros(alg, &verts, &new_verts);
        for (i, (v, g)) in kgens.iter().enumerate() {
            let w = incl.maps[*v].mul_vec(g);
            let mut off = 0;
            for (j, &u) in verts.iter().enumerate() {
                for &b in alg.paths_between(u, *v) {
                    d.get_mut(j, i)[b] = w[off].clone();
                    off += 1;
                }
            }
        }
        diffs.push(d);
        terms.push(new_verts.clone());
        verts = new_verts;
        p = kp;
        pi = kpi;
    }
    terms.reverse();
    diffs.reverse();
    let lo = -(terms.len() as i32 - 1);
    ProjComplex::new(alg, lo, terms, diffs)
}

struct ComplexEnd<'a> {
    alg: &'a BoundQuiverAlgebra,
    x: &'a ProjComplex,
}

impl EndoRing for ComplexEnd<'_> {
    type Elem = ChainMap;
    fn one(&self) -> ChainMap {
        ChainMap::identity(self.alg, self.x)
    }
    fn compose(&self, a: &ChainMap, b: &ChainMap) -> ChainMap {
        a.compose(self.alg, b)
    }
    fn add(&self, a: &ChainMap, b: &ChainMap) -> ChainMap {
        a.add(b)
    }
    fn scale(&self, a: &ChainMap, s: &Q) -> ChainMap {
        a.scale(s)
    }
    fn coords(&self, a: &ChainMap) -> Vec<Q> {
        a.flatten()
    }
    fn top(&self, a: &ChainMap) -> RatMatrix {
        let n: usize = self.x.size();
        let mut out = RatMatrix::zeros(n, n);
        let mut off = 0;
        for c in &a.comps {
            let t = c.top(self.alg);
            for r in 0..t.rows() {
                for s in 0..t.cols() {
                    out[(off + r, off + s)] = t[(r, s)].clone();
                }
            }
            off += t.rows();
        }
        out
    }
}

/// Index set `J` with `e[J, J]` invertible and `|J| = rank e`, for an
/// idempotent `e`. One exists because the principal minors of that size sum
/// to 1.
fn invertible_principal_minor(e: &RatMatrix) -> Vec<usize> {
    let n = e.rows();
    let r = e.rank();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let mut m = RatMatrix::zeros(r, r);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = e[(i, j)].clone();
            }
        }
        if !m.determinant().is_zero() {
            return idx;
        }
        // next combination in lexicographic order
        let mut k = r;
        while k > 0 && idx[k - 1] == n - r + k - 1 {
            k -= 1;
        }
        assert!(k > 0, "idempotent has an invertible principal minor");
        idx[k - 1] += 1;
        for t in k..r {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Summand cut out by a chain-level idempotent of a minimal complex.
fn image_of_idempotent(alg: &BoundQuiverAlgebra, x: &ProjComplex, e: &ChainMap) -> ProjComplex {
    let Some((lo, hi)) = x.range() else {
        return ProjComplex::zero();
    };
    let mut iotas = Vec::new();
    let mut pis = Vec::new();
    let mut terms = Vec::new();
    for n in lo..=hi {
        let en = e.comp(alg, n);
        let top = en.top(alg);
        let chosen = invertible_principal_minor(&top);
        let xs = x.term(n);
        let ys: Vec<usize> = chosen.iter().map(|&c| xs[c]).collect();
        let mut j = AMat::zeros(alg, xs, &ys);
        for (t, &c) in chosen.iter().enumerate() {
            j.get_mut(c, t)[alg.trivial(xs[c])] = Q::one();
        }
        let mut p = AMat::zeros(alg, &ys, xs);
        for (t, &c) in chosen.iter().enumerate() {
            p.get_mut(t, c)[alg.trivial(xs[c])] = Q::one();
        }
        let iota = en.compose(alg, &j);
        let pe = p.compose(alg, &en);
        let inv = pe.compose(alg, &j).inverse(alg).expect("chosen columns have invertible top");
        pis.push(inv.compose(alg, &pe));
        iotas.push(iota);
        terms.push(ys);
    }
    let diffs = (lo..hi)
        .map(|n| {
            let i = (n - lo) as usize;
            pis[i + 1].compose(alg, &x.diff(alg, n)).compose(alg, &iotas[i])
        })
        .collect();
    ProjComplex { lo, terms, diffs }.trimmed().minimize(alg)
}

/// Krull–Schmidt decomposition into minimal indecomposable complexes.
pub fn decompose_complex(alg: &BoundQuiverAlgebra, x: &ProjComplex) -> Result<Vec<ProjComplex>> {
    let x = x.minimize(alg);
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let hs = HomSpace::new(alg, &x, &x);
    let basis = hs.basis(alg);
    let ring = ComplexEnd { alg, x: &x };
    let Some(e) = endo::split_idempotent(&ring, &basis, 0x5eed)? else {
        return Ok(vec![x]);
    };
    let f = ring.add(&ring.one(), &ring.scale(&e, &q(-1)));
    let mut out = decompose_complex(alg, &image_of_idempotent(alg, &x, &e))?;
    out.extend(decompose_complex(alg, &image_of_idempotent(alg, &x, &f))?);
    Ok(out)
}

/// Decomposition that keeps an object whole when its endomorphism ring
/// modulo the radical has no rational idempotent. Such an object is
/// indecomposable over the rationals whenever that quotient is a field.
pub fn decompose_or_whole(alg: &BoundQuiverAlgebra, x: &ProjComplex) -> Result<Vec<ProjComplex>> {
    match decompose_complex(alg, x) {
        Err(Error::NonSplitEndomorphismField) => Ok(vec![x.minimize(alg)]),
        other => other,
    }
}

pub fn is_indecomposable(alg: &BoundQuiverAlgebra, x: &ProjComplex) -> Result<bool> {
    let x = x.minimize(alg);
    if x.is_zero() {
        return Ok(false);
    }
    let basis = HomSpace::new(alg, &x, &x).basis(alg);
    let ring = ComplexEnd { alg, x: &x };
    Ok(endo::semisimple_rank(&ring, &basis) <= 1)
}

/// Indecomposables are isomorphic iff some `g ∘ f` over basis pairs is an
/// automorphism; both Hom spaces are finite so the test is exhaustive.
fn iso_indecomposable(alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex) -> bool {
    if x.signature() != y.signature() {
        return false;
    }
    let fs = HomSpace::new(alg, x, y).basis(alg);
    let gs = HomSpace::new(alg, y, x).basis(alg);
    fs.iter().any(|f| gs.iter().any(|g| g.compose(alg, f).is_degreewise_iso(alg)))
}

/// Isomorphism in the homotopy category.
pub fn iso_complex(alg: &BoundQuiverAlgebra, x: &ProjComplex, y: &ProjComplex, seed: u64) -> Result<bool> {
    let (x, y) = (x.minimize(alg), y.minimize(alg));
    if x.signature() != y.signature() {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let hs = HomSpace::new(alg, &x, &y);
    let end_x = HomSpace::new(alg, &x, &x);
    if hs.dim() == 0 || hs.dim() != end_x.dim() {
        return Ok(false);
    }
    let end_y = HomSpace::new(alg, &y, &y);
    if end_y.dim() != end_x.dim() || HomSpace::new(alg, &y, &x).dim() != end_x.dim() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let coeffs: Vec<Q> = (0..hs.dim()).map(|_| q((rng.next_u64() % 11) as i64 - 5)).collect();
        if hs.combine(alg, &coeffs).is_degreewise_iso(alg) {
            return Ok(true);
        }
    }
    let local = |h: &HomSpace, z: &ProjComplex| endo::semisimple_rank(&ComplexEnd { alg, x: z }, &h.basis(alg)) <= 1;
    if local(&end_x, &x) && local(&end_y, &y) {
        return Ok(iso_indecomposable(alg, &x, &y));
    }
    let a = decompose_or_whole(alg, &x)?;
    let mut b = decompose_or_whole(alg, &y)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    for s in &a {
        let Some(pos) = b.iter().position(|t| iso_indecomposable(alg, s, t)) else {
            return Ok(false);
        };
        b.swap_remove(pos);
    }
    Ok(true)
}

/// Class in the Grothendieck group, in the basis of simple modules.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KClass(pub Vec<i64>);

impl KClass {
    pub fn zero(n: usize) -> KClass {
        KClass(vec![0; n])
    }

    pub fn add(&self, other: &KClass) -> KClass {
        KClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        KClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: i64) -> KClass {
        KClass(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// `Σ_n (−1)^n [X^n]`, converted from projectives to simples by the Cartan
/// matrix.
pub fn k_class(alg: &BoundQuiverAlgebra, x: &ProjComplex) -> KClass {
    let n = alg.num_vertices();
    let mut pv = vec![0i64; n];
    if let Some((lo, hi)) = x.range() {
        for d in lo..=hi {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            for &v in x.term(d) {
                pv[v] += sign;
            }
        }
    }
    let c = alg.cartan();
    KClass(
        (0..n)
            .map(|w| (0..n).map(|v| c[(w, v)].to_integer().to_i64().expect("small Cartan entries") * pv[v]).sum())
            .collect(),
    )
}

pub type ObjId = usize;

/// The homotopy category of a fixed algebra, with an append-only store of
/// minimal objects up to isomorphism and a cache of Hom dimensions.
#[derive(Clone, Debug)]
pub struct Category {
    alg: BoundQuiverAlgebra,
    gldim_bound: usize,
    objects: Vec<ProjComplex>,
    buckets: BTreeMap<Signature, Vec<ObjId>>,
    hom_cache: BTreeMap<(ObjId, ObjId, i32), usize>,
    shift_cache: BTreeMap<(ObjId, i32), ObjId>,
    seed: u64,
}

pub const DEFAULT_GLDIM_BOUND: usize = 8;

impl Category {
    pub fn new(alg: BoundQuiverAlgebra) -> Result<Self> {
        Category::with_bound(alg, DEFAULT_GLDIM_BOUND)
    }

    pub fn with_bound(alg: BoundQuiverAlgebra, gldim_bound: usize) -> Result<Self> {
        if let GlobalDimension::AtLeast(b) = global_dimension(&alg, gldim_bound + 1) {
            return Err(Error::GlobalDimensionTooLarge { bound: b - 1 });
        }
        Ok(Category {
            alg,
            gldim_bound,
            objects: Vec::new(),
            buckets: BTreeMap::new(),
            hom_cache: BTreeMap::new(),
            shift_cache: BTreeMap::new(),
            seed: 0x7117,
        })
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn alg(&self) -> &BoundQuiverAlgebra {
        &self.alg
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object(&self, id: ObjId) -> &ProjComplex {
        &self.objects[id]
    }

    pub fn intern(&mut self, x: &ProjComplex) -> Result<ObjId> {
        let x = x.minimize(&self.alg);
        let sig = x.signature();
        if let Some(bucket) = self.buckets.get(&sig) {
            for &id in bucket {
                if iso_complex(&self.alg, &self.objects[id], &x, self.seed)? {
                    return Ok(id);
                }
            }
        }
        let id = self.objects.len();
        self.objects.push(x);
        self.buckets.entry(sig).or_default().push(id);
        Ok(id)
    }

    /// Interns the resolution of a module.
    pub fn module(&mut self, m: &Representation) -> Result<ObjId> {
        let x = resolve(&self.alg, m, self.gldim_bound)?;
        self.intern(&x)
    }

    pub fn simple_module(&mut self, v: usize) -> Result<ObjId> {
        let s = Representation::simple(&self.alg, v)?;
        self.module(&s)
    }

    pub fn projective(&mut self, v: usize) -> Result<ObjId> {
        if v >= self.alg.num_vertices() {
            return Err(Error::InvalidVertex(v));
        }
        self.intern(&ProjComplex::stalk(&[v], 0))
    }

    pub fn zero_object(&mut self) -> ObjId {
        self.intern(&ProjComplex::zero()).expect("zero object interns")
    }

    pub fn is_zero(&self, id: ObjId) -> bool {
        self.objects[id].is_zero()
    }

    pub fn hom_dim(&mut self, a: ObjId, b: ObjId, k: i32) -> usize {
        if let Some(&d) = self.hom_cache.get(&(a, b, k)) {
            return d;
        }
        let d = hom_dim(&self.alg, &self.objects[a], &self.objects[b], k);
        self.hom_cache.insert((a, b, k), d);
        d
    }

    /// Basis of `Hom(a, b[k])`, as maps between the stored representatives.
    pub fn hom_basis(&self, a: ObjId, b: ObjId, k: i32) -> Vec<ChainMap> {
        hom_basis(&self.alg, &self.objects[a], &self.objects[b], k)
    }

    pub fn shift(&mut self, id: ObjId, n: i32) -> ObjId {
        if n == 0 {
            return id;
        }
        if let Some(&s) = self.shift_cache.get(&(id, n)) {
            return s;
        }
        let x = self.objects[id].shift(n);
        let sig = x.signature();
        // shifts of interned objects are never isomorphic to a different
        // representative with another signature, so a bucket lookup suffices
        let s = match self.buckets.get(&sig).and_then(|b| {
            b.iter().copied().find(|&c| iso_complex(&self.alg, &self.objects[c], &x, self.seed).unwrap_or(false))
        }) {
            Some(s) => s,
            None => {
                let s = self.objects.len();
                self.objects.push(x);
                self.buckets.entry(sig).or_default().push(s);
                s
            }
        };
        self.shift_cache.insert((id, n), s);
        self.shift_cache.insert((s, -n), id);
        s
    }

    pub fn k_class(&self, id: ObjId) -> KClass {
        k_class(&self.alg, &self.objects[id])
    }

    pub fn direct_sum(&self, ids: &[ObjId]) -> ProjComplex {
        let mut acc = ProjComplex::zero();
        for &i in ids {
            acc = acc.direct_sum(&self.alg, &self.objects[i]);
        }
        acc
    }

    /// Indecomposable summands, interned.
    pub fn decompose(&mut self, x: &ProjComplex) -> Result<Vec<ObjId>> {
        let parts = decompose_complex(&self.alg, x)?;
        parts.iter().map(|p| self.intern(p)).collect()
    }

    pub fn is_iso(&self, x: &ProjComplex, y: &ProjComplex) -> Result<bool> {
        iso_complex(&self.alg, x, y, self.seed)
    }

    /// Largest absolute value among numerators, a cheap size measure used
    /// by search bounds.
    pub fn object_size(&self, id: ObjId) -> usize {
        self.objects[id].size()
    }
}

/// Sign of an integer as `−1`, `0` or `1`.
pub fn sign_of(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{kronecker_algebra, vc_zero_algebra};

    fn vc_simples() -> (BoundQuiverAlgebra, ProjComplex, ProjComplex) {
        let alg = vc_zero_algebra();
        let s1 = resolve(&alg, &Representation::simple(&alg, 0).unwrap(), 8).unwrap();
        let s2 = resolve(&alg, &Representation::simple(&alg, 1).unwrap(), 8).unwrap();
        (alg, s1, s2)
    }

    #[test]
    fn resolutions_of_vc_zero_simples() {
        let (alg, s1, s2) = vc_simples();
        assert_eq!(s2.range(), Some((-1, 0)));
        assert_eq!(s2.terms(), &[vec![0], vec![1]]);
        assert!(s2.is_minimal(&alg));
        assert_eq!(s1.range(), Some((-2, 0)));
        assert_eq!(s1.terms(), &[vec![0], vec![1], vec![0]]);
        let p = ProjComplex::stalk(&[1], 0);
        assert_eq!(resolve(&alg, &Representation::projective(&alg, 1).unwrap(), 8).unwrap(), p);
    }

    #[test]
    fn ext_between_vc_zero_simples() {
        let (alg, s1, s2) = vc_simples();
        let dims: Vec<usize> = (0..4).map(|k| hom_dim(&alg, &s1, &s1, k)).collect();
        assert_eq!(dims, vec![1, 0, 1, 0]);
        assert_eq!(hom_dim(&alg, &s2, &s1, 1), 1);
        assert_eq!(hom_dim(&alg, &s1, &s2, 1), 1);
        assert_eq!(hom_dim(&alg, &s2, &s2, 0), 1);
        assert_eq!(hom_dim(&alg, &s2, &s2, 1), 0);
    }

    #[test]
    fn cones() {
        let (alg, s1, s2) = vc_simples();
        let id = ChainMap::identity(&alg, &s1);
        assert!(id.cone(&alg).minimize(&alg).is_zero());
        let z = ChainMap::zero(&alg, &s1, &s2);
        let c = z.cone(&alg);
        assert!(iso_complex(&alg, &c, &s2.direct_sum(&alg, &s1.shift(1)), 1).unwrap());
        // nontrivial extension: S2[-1] → S1 has cone of class [S1] + [S2]
        let f = hom_basis(&alg, &s2.shift(-1), &s1, 0);
        assert_eq!(f.len(), 1);
        let e = f[0].cone(&alg);
        assert_eq!(k_class(&alg, &e), KClass(vec![1, 1]));
        assert_eq!(decompose_complex(&alg, &e).unwrap().len(), 1);
    }

    #[test]
    fn minimize_contractible() {
        let alg = kronecker_algebra();
        let x = ProjComplex::new(&alg, 0, vec![vec![0], vec![0]], vec![AMat::identity(&alg, &[0])]).unwrap();
        assert!(x.minimize(&alg).is_zero());
    }

    #[test]
    fn k_classes() {
        let (alg, s1, s2) = vc_simples();
        assert_eq!(k_class(&alg, &s1), KClass(vec![1, 0]));
        assert_eq!(k_class(&alg, &s2), KClass(vec![0, 1]));
        assert_eq!(k_class(&alg, &s1.shift(1)), KClass(vec![-1, 0]));
    }

    #[test]
    fn decomposition_and_iso() {
        let (alg, s1, s2) = vc_simples();
        let x = s1.direct_sum(&alg, &s1.shift(1));
        assert_eq!(decompose_complex(&alg, &x).unwrap().len(), 2);
        let y = s1.direct_sum(&alg, &s1);
        let parts = decompose_complex(&alg, &y).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| iso_complex(&alg, p, &s1, 3).unwrap()));
        assert!(!iso_complex(&alg, &s1, &s2, 3).unwrap());
    }

    #[test]
    fn interning() {
        let mut cat = Category::new(vc_zero_algebra()).unwrap();
        let a = cat.simple_module(0).unwrap();
        let b = cat.simple_module(0).unwrap();
        assert_eq!(a, b);
        let c = cat.shift(a, 1);
        assert_ne!(a, c);
        assert_eq!(cat.shift(c, -1), a);
        assert_eq!(cat.hom_dim(a, a, 2), 1);
    }
}
