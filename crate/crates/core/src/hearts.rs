//! Hearts presented by their simple objects.
//!
//! A heart is stored as the list of its simples, which must form a
//! simple-minded collection: `Hom(s_i, s_j) = δ_ij k` and no negative
//! extensions. Aisle membership is decided by Hom vanishing against shifted
//! simples. The aisle `D^{≤0}` is the extension closure of `s[k]` for `k ≥ 0`
//! and `D^{≥1}` that of `s[k]` for `k ≤ −1`, so `x ∈ D^{≤0}` exactly when
//! `Hom(x, s[k]) = 0` for every simple and every `k ≤ −1`, and dually for the
//! upper aisle. These Hom spaces vanish outside the window fixed by the
//! degree ranges of the two complexes, so each test is a finite computation.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::homotopy::{Category, ChainMap, HomSpace, KClass, ObjId, ProjComplex};
use crate::linalg::{q, RatMatrix, Q};
use crate::quiver::BoundQuiverAlgebra;
use crate::{Error, Result};

pub const DEFAULT_TILT_BOUND: usize = 64;
pub const DEFAULT_LENGTH_BOUND: usize = 8;

/// A heart, identified by the set of its interned simples.
#[derive(Clone, Debug)]
pub struct Heart {
    simples: Vec<ObjId>,
}

impl Heart {
    pub fn simples(&self) -> &[ObjId] {
        &self.simples
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn key(&self) -> Vec<ObjId> {
        let mut k = self.simples.clone();
        k.sort_unstable();
        k
    }

    pub fn index_of(&self, id: ObjId) -> Option<usize> {
        self.simples.iter().position(|&s| s == id)
    }
}

impl PartialEq for Heart {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Heart {}

impl PartialOrd for Heart {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Heart {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionTheory {
    pub heart: Heart,
    pub torsion: BTreeSet<ObjId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    LowerAisle,
    UpperAisle,
    Heart,
    /// Heart cohomology in degrees 0 and 1, i.e. `H ⊂ E ⊂ H[−1]` style
    /// intervals.
    Interval01,
}

/// A subobject `sub ↪ x` with its quotient, both up to isomorphism.
#[derive(Clone, Debug)]
pub struct Subobject {
    /// Indecomposable summands of the subobject.
    pub sub: Vec<ObjId>,
    pub quotient: ObjId,
    pub map: ChainMap,
}

/// Result of the closure search for indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub objects: Vec<ObjId>,
    /// The search stopped at the length bound.
    pub infinite: bool,
    /// Some extension space of dimension at least two was only sampled.
    pub sampled: bool,
}

/// Category plus per-heart caches; all heart-level operations go through it.
#[derive(Clone, Debug)]
pub struct Workbench {
    cat: Category,
    pub tilt_bound: usize,
    pub length_bound: usize,
    basis_inv: BTreeMap<Vec<ObjId>, RatMatrix>,
    enumerations: BTreeMap<(Vec<ObjId>, usize), Enumeration>,
    torsion: BTreeMap<Vec<ObjId>, Vec<BTreeSet<ObjId>>>,
    left_tilts: BTreeMap<(Vec<ObjId>, ObjId), Heart>,
    right_tilts: BTreeMap<(Vec<ObjId>, ObjId), Heart>,
    subobjects: BTreeMap<(Vec<ObjId>, ObjId), Vec<Subobject>>,
    twists: BTreeMap<(ObjId, ObjId, bool), ObjId>,
}

impl Workbench {
    pub fn new(alg: BoundQuiverAlgebra) -> Result<Self> {
        Ok(Workbench::from_category(Category::new(alg)?))
    }

    pub fn from_category(cat: Category) -> Self {
        Workbench {
            cat,
            tilt_bound: DEFAULT_TILT_BOUND,
            length_bound: DEFAULT_LENGTH_BOUND,
            basis_inv: BTreeMap::new(),
            enumerations: BTreeMap::new(),
            torsion: BTreeMap::new(),
            left_tilts: BTreeMap::new(),
            right_tilts: BTreeMap::new(),
            subobjects: BTreeMap::new(),
            twists: BTreeMap::new(),
        }
    }

    pub fn cat(&self) -> &Category {
        &self.cat
    }

    pub fn cat_mut(&mut self) -> &mut Category {
        &mut self.cat
    }

    pub fn alg(&self) -> &BoundQuiverAlgebra {
        self.cat.alg()
    }

    /// Simple modules in vertex order.
    pub fn standard_heart(&mut self) -> Result<Heart> {
        let simples =
            (0..self.alg().num_vertices()).map(|v| self.cat.simple_module(v)).collect::<Result<Vec<_>>>()?;
        self.heart(simples)
    }

    /// Validates a simple-minded collection.
    pub fn heart(&mut self, simples: Vec<ObjId>) -> Result<Heart> {
        let n = self.alg().num_vertices();
        if simples.len() != n {
            return Err(Error::NotSimpleMinded(format!("{} simples for rank {n}", simples.len())));
        }
        for (i, &a) in simples.iter().enumerate() {
            if self.cat.is_zero(a) {
                return Err(Error::NotSimpleMinded(format!("simple {i} is zero")));
            }
            for (j, &b) in simples.iter().enumerate() {
                let want = usize::from(i == j);
                if self.cat.hom_dim(a, b, 0) != want {
                    return Err(Error::NotSimpleMinded(format!("dim Hom(s{i}, s{j}) ≠ {want}")));
                }
                let (Some((_, ah)), Some((bl, _))) = (self.cat.object(a).range(), self.cat.object(b).range()) else {
                    continue;
                };
                for k in (bl - ah)..0 {
                    if self.cat.hom_dim(a, b, k) != 0 {
                        return Err(Error::NotSimpleMinded(format!("Hom(s{i}, s{j}[{k}]) ≠ 0")));
                    }
                }
            }
        }
        let heart = Heart { simples };
        let m = self.class_matrix(&heart);
        let det = m.determinant();
        if det != q(1) && det != q(-1) {
            return Err(Error::NotSimpleMinded("classes are not a unimodular basis".into()));
        }
        Ok(heart)
    }

    /// Columns are the classes of the simples in the module basis.
    pub fn class_matrix(&self, h: &Heart) -> RatMatrix {
        let cols: Vec<Vec<Q>> =
            h.simples.iter().map(|&s| self.cat.k_class(s).0.iter().map(|&x| q(x)).collect()).collect();
        RatMatrix::from_columns(self.alg().num_vertices(), &cols)
    }

    /// Class of `x` in the basis of simples of `h`.
    pub fn class_in(&mut self, h: &Heart, x: ObjId) -> Vec<i64> {
        let key = h.simples.clone();
        if !self.basis_inv.contains_key(&key) {
            let inv = self.class_matrix(h).inverse().expect("unimodular basis");
            self.basis_inv.insert(key.clone(), inv);
        }
        let inv = &self.basis_inv[&key];
        let c: Vec<Q> = self.cat.k_class(x).0.iter().map(|&v| q(v)).collect();
        inv.mul_vec(&c).iter().map(|v| v.to_integer().to_i64().expect("integral class")).collect()
    }

    pub fn class_of_in(&mut self, h: &Heart, k: &KClass) -> Vec<i64> {
        let key = h.simples.clone();
        if !self.basis_inv.contains_key(&key) {
            let inv = self.class_matrix(h).inverse().expect("unimodular basis");
            self.basis_inv.insert(key.clone(), inv);
        }
        let c: Vec<Q> = k.0.iter().map(|&v| q(v)).collect();
        self.basis_inv[&key].mul_vec(&c).iter().map(|v| v.to_integer().to_i64().expect("integral class")).collect()
    }

    /// Composition length of an object of the heart.
    pub fn length(&mut self, h: &Heart, x: ObjId) -> usize {
        self.class_in(h, x).iter().map(|&c| c.max(0) as usize).sum()
    }

    pub fn is_member(&mut self, x: ObjId, h: &Heart, mode: Membership) -> bool {
        let Some((xl, xh)) = self.cat.object(x).range() else {
            return true;
        };
        let (lower, upper) = match mode {
            Membership::LowerAisle => (Some(-1), None),
            Membership::UpperAisle => (None, Some(-1)),
            Membership::Heart => (Some(-1), Some(-1)),
            Membership::Interval01 => (Some(-2), Some(-1)),
        };
        for &s in &h.simples {
            let (sl, sh) = self.cat.object(s).range().expect("simples are nonzero");
            if let Some(top) = lower {
                // Hom(x, s[k]) for k ≤ top
                for k in (sl - xh)..=top {
                    if self.cat.hom_dim(x, s, k) != 0 {
                        return false;
                    }
                }
            }
            if let Some(top) = upper {
                // Hom(s[k], x) = Hom(s, x[−k]) for k ≥ −top
                for j in (xl - sh)..=top {
                    if self.cat.hom_dim(s, x, j) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn membership(&mut self, x: &ProjComplex, h: &Heart, mode: Membership) -> Result<bool> {
        let id = self.cat.intern(x)?;
        Ok(self.is_member(id, h, mode))
    }

    pub fn is_mono(&mut self, f: &ChainMap, h: &Heart) -> Result<bool> {
        let c = f.cone(self.alg());
        self.membership(&c, h, Membership::Heart)
    }

    pub fn is_epi(&mut self, f: &ChainMap, h: &Heart) -> Result<bool> {
        let c = f.cone(self.alg()).shift(-1);
        self.membership(&c, h, Membership::Heart)
    }

    fn check_index(h: &Heart, i: usize) -> Result<ObjId> {
        h.simples.get(i).copied().ok_or(Error::SimpleOutOfRange { index: i, len: h.len() })
    }

    /// Left tilt at the `i`-th simple: `s ↦ s[−1]`, other simples replaced
    /// by iterated universal extensions by `s`.
    pub fn left_tilt_simple(&mut self, h: &Heart, i: usize) -> Result<Heart> {
        let s = Self::check_index(h, i)?;
        let key = (h.simples.clone(), s);
        if let Some(t) = self.left_tilts.get(&key) {
            return Ok(t.clone());
        }
        let s1 = self.cat.shift(s, -1);
        let mut simples = Vec::with_capacity(h.len());
        for &a in &h.simples {
            if a == s {
                simples.push(s1);
                continue;
            }
            let mut b = a;
            let mut steps = 0;
            loop {
                let maps = self.cat.hom_basis(s1, b, 0);
                if maps.is_empty() {
                    break;
                }
                steps += 1;
                if steps > self.tilt_bound {
                    return Err(Error::TiltDivergence { bound: self.tilt_bound });
                }
                let eval = ChainMap::hstack(self.cat.alg(), &maps, self.cat.object(b));
                let c = eval.cone(self.cat.alg());
                b = self.cat.intern(&c)?;
            }
            simples.push(b);
        }
        let t = self.heart(simples)?;
        self.left_tilts.insert(key, t.clone());
        Ok(t)
    }

    /// Right tilt at the `i`-th simple: `s ↦ s[1]`, other simples replaced
    /// by iterated universal coextensions.
    pub fn right_tilt_simple(&mut self, h: &Heart, i: usize) -> Result<Heart> {
        let s = Self::check_index(h, i)?;
        let key = (h.simples.clone(), s);
        if let Some(t) = self.right_tilts.get(&key) {
            return Ok(t.clone());
        }
        let s1 = self.cat.shift(s, 1);
        let mut simples = Vec::with_capacity(h.len());
        for &a in &h.simples {
            if a == s {
                simples.push(s1);
                continue;
            }
            let mut b = a;
            let mut steps = 0;
            loop {
                let maps = self.cat.hom_basis(b, s1, 0);
                if maps.is_empty() {
                    break;
                }
                steps += 1;
                if steps > self.tilt_bound {
                    return Err(Error::TiltDivergence { bound: self.tilt_bound });
                }
                let coev = ChainMap::vstack(self.cat.alg(), &maps, self.cat.object(b));
                let c = coev.cone(self.cat.alg()).shift(-1);
                b = self.cat.intern(&c)?;
            }
            simples.push(b);
        }
        let t = self.heart(simples)?;
        self.right_tilts.insert(key, t.clone());
        Ok(t)
    }

    pub fn shift_heart(&mut self, h: &Heart, n: i32) -> Heart {
        Heart { simples: h.simples.iter().map(|&s| self.cat.shift(s, n)).collect() }
    }

    /// Middle terms of extensions `0 → a → e → b → 0` for sampled classes
    /// of `Ext¹(b, a)`; returns them with a flag set when the space was only
    /// sampled.
    pub fn extensions(&mut self, b: ObjId, a: ObjId) -> Result<(Vec<ProjComplex>, bool)> {
        let alg = self.cat.alg().clone();
        let hs = HomSpace::new(&alg, self.cat.object(b), &self.cat.object(a).shift(1));
        let (lines, sampled) = ext_lines(hs.dim());
        let mut out = Vec::new();
        for line in lines {
            let f = hs.combine(&alg, &line);
            out.push(f.cone(&alg).shift(-1));
        }
        Ok((out, sampled))
    }

    /// Closure of the simples under middle terms of non-split extensions by
    /// simples on either side.
    pub fn enumerate(&mut self, h: &Heart, length_bound: usize) -> Result<Enumeration> {
        let key = (h.key(), length_bound);
        if let Some(e) = self.enumerations.get(&key) {
            return Ok(e.clone());
        }
        let mut known: Vec<ObjId> = h.simples.clone();
        let mut seen: BTreeSet<ObjId> = known.iter().copied().collect();
        let mut queue: VecDeque<ObjId> = known.iter().copied().collect();
        let mut sampled = false;
        let mut infinite = false;
        'search: while let Some(x) = queue.pop_front() {
            for &s in &h.simples {
                for (first, second) in [(s, x), (x, s)] {
                    let (middles, smp) = self.extensions(first, second)?;
                    sampled |= smp;
                    for e in middles {
                        // a field of endomorphisms larger than Q still means
                        // indecomposable over Q
                        let parts = match self.cat.decompose(&e) {
                            Err(Error::NonSplitEndomorphismField) => vec![self.cat.intern(&e)?],
                            other => other?,
                        };
                        for part in parts {
                            if seen.insert(part) {
                                debug_assert!(self.is_member(part, h, Membership::Heart));
                                known.push(part);
                                if self.length(h, part) > length_bound {
                                    infinite = true;
                                    break 'search;
                                }
                                queue.push_back(part);
                            }
                        }
                    }
                }
            }
        }
        let res = Enumeration { objects: known, infinite, sampled };
        self.enumerations.insert(key, res.clone());
        Ok(res)
    }

    /// All indecomposables of a heart of finite type.
    pub fn enumerate_indecomposables(&mut self, h: &Heart, length_bound: usize) -> Result<Vec<ObjId>> {
        let e = self.enumerate(h, length_bound)?;
        if e.infinite {
            return Err(Error::InfiniteTypeSuspected);
        }
        Ok(e.objects)
    }

    pub fn indecomposables(&mut self, h: &Heart) -> Result<Vec<ObjId>> {
        let b = self.length_bound;
        self.enumerate_indecomposables(h, b)
    }

    /// Subobjects of `x` in the heart, up to isomorphism of the pair
    /// (subobject, quotient), found by sampling monomorphisms from sums of
    /// indecomposables.
    pub fn subobjects(&mut self, h: &Heart, x: ObjId) -> Result<Vec<Subobject>> {
        let key = (h.key(), x);
        if let Some(subs) = self.subobjects.get(&key) {
            return Ok(subs.clone());
        }
        let subs = self.find_subobjects(h, x)?;
        self.subobjects.insert(key, subs.clone());
        Ok(subs)
    }

    fn find_subobjects(&mut self, h: &Heart, x: ObjId) -> Result<Vec<Subobject>> {
        let candidates = self.enumerate(h, self.length_bound)?.objects;
        let target = self.class_in(h, x);
        let classes: Vec<Vec<i64>> = candidates.iter().map(|&c| self.class_in(h, c)).collect();
        let mut multisets = Vec::new();
        let mut current = Vec::new();
        sub_multisets(&classes, 0, &target, &mut current, &mut multisets);
        let alg = self.cat.alg().clone();
        let mut out = vec![Subobject { sub: Vec::new(), quotient: x, map: ChainMap::zero(&alg, &ProjComplex::zero(), self.cat.object(x)) }];
        let mut seen: BTreeSet<(Vec<ObjId>, ObjId)> = BTreeSet::new();
        seen.insert((Vec::new(), x));
        let mut rng = ChaCha8Rng::seed_from_u64(self.cat.seed() ^ x as u64);
        for ms in multisets {
            let ids: Vec<ObjId> = ms.iter().map(|&i| candidates[i]).collect();
            let spaces: Vec<HomSpace> =
                ids.iter().map(|&y| HomSpace::new(&alg, self.cat.object(y), self.cat.object(x))).collect();
            if spaces.iter().any(|s| s.dim() == 0) {
                continue;
            }
            let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
            let total: usize = dims.iter().sum();
            for coeffs in map_samples(total, &mut rng) {
                let mut off = 0;
                let mut parts = Vec::new();
                for (s, &d) in spaces.iter().zip(&dims) {
                    parts.push(s.combine(&alg, &coeffs[off..off + d]));
                    off += d;
                }
                let f = ChainMap::hstack(&alg, &parts, self.cat.object(x));
                let cone = f.cone(&alg);
                let qid = self.cat.intern(&cone)?;
                if !self.is_member(qid, h, Membership::Heart) {
                    continue;
                }
                let mut sub = ids.clone();
                sub.sort_unstable();
                if seen.insert((sub.clone(), qid)) {
                    out.push(Subobject { sub, quotient: qid, map: f });
                }
            }
        }
        Ok(out)
    }

    /// Is `x` simple in `h` (no proper nonzero subobject)?
    pub fn is_simple_in(&mut self, h: &Heart, x: ObjId) -> Result<bool> {
        let subs = self.subobjects(h, x)?;
        Ok(subs.iter().all(|s| s.sub.is_empty() || self.cat.is_zero(s.quotient)))
    }

    /// Torsion classes as sets of indecomposables, via the closure
    /// `S ↦ ⊥(S^⊥)` under Hom orthogonality.
    pub fn torsion_theories(&mut self, h: &Heart) -> Result<Vec<TorsionTheory>> {
        let key = h.key();
        if let Some(ts) = self.torsion.get(&key) {
            return Ok(ts.iter().map(|t| TorsionTheory { heart: h.clone(), torsion: t.clone() }).collect());
        }
        let ind = self.indecomposables(h)?;
        let n = ind.len();
        let hom: Vec<Vec<bool>> =
            ind.iter().map(|&a| ind.iter().map(|&b| self.cat.hom_dim(a, b, 0) != 0).collect()).collect();
        let close = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
            let perp: Vec<usize> = (0..n).filter(|&y| set.iter().all(|&t| !hom[t][y])).collect();
            (0..n).filter(|&x| perp.iter().all(|&y| !hom[x][y])).collect()
        };
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let start = close(&BTreeSet::new());
        let mut queue = VecDeque::from([start.clone()]);
        found.insert(start);
        while let Some(c) = queue.pop_front() {
            for x in 0..n {
                if c.contains(&x) {
                    continue;
                }
                let mut next = c.clone();
                next.insert(x);
                let next = close(&next);
                if found.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut sets: Vec<BTreeSet<ObjId>> =
            found.into_iter().map(|s| s.into_iter().map(|i| ind[i]).collect()).collect();
        sets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        self.torsion.insert(key, sets.clone());
        Ok(sets.into_iter().map(|t| TorsionTheory { heart: h.clone(), torsion: t }).collect())
    }

    /// `L_T H`, factored into simple left tilts.
    pub fn tilt_at_torsion(&mut self, h: &Heart, torsion: &BTreeSet<ObjId>) -> Result<Heart> {
        let mut remaining = torsion.clone();
        let mut cur = h.clone();
        while !remaining.is_empty() {
            let Some(i) = cur.simples.iter().position(|s| remaining.contains(s)) else {
                return Err(Error::FactorizationStuck);
            };
            let a = cur.simples[i];
            cur = self.left_tilt_simple(&cur, i)?;
            remaining.retain(|&t| self.cat.hom_dim(a, t, 0) == 0);
        }
        Ok(cur)
    }

    /// The torsion class `T` of `a` with `b = L_T a`.
    pub fn recover_torsion(&mut self, a: &Heart, b: &Heart) -> Result<TorsionTheory> {
        for &s in &b.simples {
            if !self.is_member(s, a, Membership::Interval01) {
                return Err(Error::NotAnIntervalHeart);
            }
        }
        let ind = self.indecomposables(a)?;
        let mut torsion = BTreeSet::new();
        for x in ind {
            let y = self.cat.shift(x, -1);
            if self.is_member(y, b, Membership::Heart) {
                torsion.insert(x);
            }
        }
        Ok(TorsionTheory { heart: a.clone(), torsion })
    }

    /// Spherical twist: cone of `⊕_k Hom(s[−k], x) ⊗ s[−k] → x`.
    pub fn twist(&mut self, s: ObjId, x: ObjId) -> Result<ObjId> {
        if let Some(&y) = self.twists.get(&(s, x, true)) {
            return Ok(y);
        }
        let y = self.compute_twist(s, x)?;
        self.twists.insert((s, x, true), y);
        self.twists.insert((s, y, false), x);
        Ok(y)
    }

    /// Inverse twist: the cocone of the coevaluation `x → ⊕ Hom(x, s[k])^* ⊗ s[k]`.
    pub fn twist_inverse(&mut self, s: ObjId, x: ObjId) -> Result<ObjId> {
        if let Some(&y) = self.twists.get(&(s, x, false)) {
            return Ok(y);
        }
        let alg = self.cat.alg().clone();
        let (Some((sl, sh)), Some((xl, xh))) = (self.cat.object(s).range(), self.cat.object(x).range()) else {
            return Ok(x);
        };
        let mut maps = Vec::new();
        for k in (sl - xh)..=(sh - xl) {
            let sk = self.cat.object(s).shift(k);
            maps.extend(crate::homotopy::hom_basis(&alg, self.cat.object(x), &sk, 0));
        }
        let y = if maps.is_empty() {
            x
        } else {
            let coev = ChainMap::vstack(&alg, &maps, self.cat.object(x));
            self.cat.intern(&coev.cone(&alg).shift(-1))?
        };
        self.twists.insert((s, x, false), y);
        self.twists.insert((s, y, true), x);
        Ok(y)
    }

    fn compute_twist(&mut self, s: ObjId, x: ObjId) -> Result<ObjId> {
        let alg = self.cat.alg().clone();
        let (Some((sl, sh)), Some((xl, xh))) = (self.cat.object(s).range(), self.cat.object(x).range()) else {
            return Ok(x);
        };
        let mut maps = Vec::new();
        for k in (xl - sh)..=(xh - sl) {
            let sk = self.cat.object(s).shift(-k);
            maps.extend(crate::homotopy::hom_basis(&alg, &sk, self.cat.object(x), 0));
        }
        if maps.is_empty() {
            return Ok(x);
        }
        let eval = ChainMap::hstack(&alg, &maps, self.cat.object(x));
        self.cat.intern(&eval.cone(&alg))
    }

    /// Image of a heart under the twist by a 2-spherical object.
    pub fn twist_heart(&mut self, s: ObjId, h: &Heart) -> Result<Heart> {
        let known = h.simples.clone();
        match self.spherical_check(s, &known)? {
            Some(2) => {}
            Some(d) => return Err(Error::NotSpherical(format!("dimension {d}, expected 2"))),
            None => return Err(Error::NotSpherical("self-extensions are not those of a sphere".into())),
        }
        let simples = h.simples.iter().map(|&a| self.twist(s, a)).collect::<Result<Vec<_>>>()?;
        self.heart(simples)
    }

    /// Image of a heart under the inverse twist by a 2-spherical object.
    pub fn twist_inverse_heart(&mut self, s: ObjId, h: &Heart) -> Result<Heart> {
        match self.spherical_check(s, &h.simples.clone())? {
            Some(2) => {}
            Some(d) => return Err(Error::NotSpherical(format!("dimension {d}, expected 2"))),
            None => return Err(Error::NotSpherical("self-extensions are not those of a sphere".into())),
        }
        let simples = h.simples.iter().map(|&a| self.twist_inverse(s, a)).collect::<Result<Vec<_>>>()?;
        self.heart(simples)
    }

    /// Returns the sphere dimension `d` when `Hom^*(s, s) = k ⊕ k[−d]` and the
    /// composition pairings into `Hom^d(s, s)` are perfect for every given
    /// object.
    pub fn spherical_check(&mut self, s: ObjId, against: &[ObjId]) -> Result<Option<usize>> {
        let Some((lo, hi)) = self.cat.object(s).range() else {
            return Ok(None);
        };
        let mut nonzero = Vec::new();
        for k in (lo - hi)..=(hi - lo) {
            let d = self.cat.hom_dim(s, s, k);
            if d != 0 {
                nonzero.push((k, d));
            }
        }
        let d = match nonzero.as_slice() {
            [(0, 1), (d, 1)] if *d > 0 => *d,
            _ => return Ok(None),
        };
        let alg = self.cat.alg().clone();
        let sx = self.cat.object(s).clone();
        let top = HomSpace::new(&alg, &sx, &sx.shift(d));
        for &c in against {
            let cx = self.cat.object(c).clone();
            let Some((cl, ch)) = cx.range() else { continue };
            for i in (cl - hi)..=(ch - lo) {
                let fs = crate::homotopy::hom_basis(&alg, &sx, &cx, i);
                let gs = crate::homotopy::hom_basis(&alg, &cx, &sx, d - i);
                if fs.len() != gs.len() {
                    return Ok(None);
                }
                if fs.is_empty() {
                    continue;
                }
                let mut pairing = RatMatrix::zeros(fs.len(), gs.len());
                for (a, f) in fs.iter().enumerate() {
                    for (b, g) in gs.iter().enumerate() {
                        let comp = g.shift(i).compose(&alg, f);
                        pairing[(a, b)] = top.coords(&comp)?[0].clone();
                    }
                }
                if pairing.rank() != fs.len() {
                    return Ok(None);
                }
            }
        }
        Ok(Some(d as usize))
    }

    pub fn enumeration_cache_len(&self) -> usize {
        self.enumerations.len()
    }
}

/// Representatives of the lines of a `dim`-dimensional space: the single
/// generator when `dim = 1`, otherwise coordinate lines together with
/// pairwise sums and differences.
fn ext_lines(dim: usize) -> (Vec<Vec<Q>>, bool) {
    match dim {
        0 => (Vec::new(), false),
        1 => (vec![vec![q(1)]], false),
        d => {
            let mut out = Vec::new();
            for i in 0..d {
                let mut v = vec![Q::zero(); d];
                v[i] = q(1);
                out.push(v.clone());
                for j in i + 1..d {
                    for c in [1, -1] {
                        let mut w = v.clone();
                        w[j] = q(c);
                        out.push(w);
                    }
                }
            }
            (out, true)
        }
    }
}

fn is_line_rep(v: &[i64]) -> bool {
    let Some(first) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if *first < 0 {
        return false;
    }
    let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    g == 1
}

/// Coefficient vectors for sampling maps out of a direct sum: coordinate
/// vectors, every vector with entries in {−1, 0, 1} when the space is
/// small, and a few random ones.
fn map_samples(total: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    if total <= 5 {
        let count = 3usize.pow(total as u32);
        for mut code in 1..count {
            let mut v = Vec::with_capacity(total);
            for _ in 0..total {
                v.push(q((code % 3) as i64 - 1));
                code /= 3;
            }
            if is_line_rep(&v.iter().map(|x| x.to_integer().to_i64().unwrap_or(0)).collect::<Vec<_>>()) {
                out.push(v);
            }
        }
    } else {
        for i in 0..total {
            let mut v = vec![Q::zero(); total];
            v[i] = q(1);
            out.push(v);
        }
    }
    for _ in 0..6 {
        out.push((0..total).map(|_| q((rng.next_u64() % 9) as i64 - 4)).collect());
    }
    out
}

/// Multisets of candidate indices whose classes sum to at most `target`
/// componentwise, excluding the empty multiset.
fn sub_multisets(
    classes: &[Vec<i64>],
    start: usize,
    remaining: &[i64],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for i in start..classes.len() {
        if classes[i].iter().zip(remaining).all(|(c, r)| c <= r) && classes[i].iter().any(|&c| c > 0) {
            let rest: Vec<i64> = remaining.iter().zip(&classes[i]).map(|(r, c)| r - c).collect();
            current.push(i);
            out.push(current.clone());
            sub_multisets(classes, i, &rest, current, out);
            current.pop();
        }
    }
}

/// Nonzero class with no negative coordinate.
pub fn is_positive_class(c: &[i64]) -> bool {
    c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0)
}

impl Workbench {
    /// Objects of the heart split into the torsion part and the rest, as a
    /// check of the torsion pair axioms on indecomposables.
    pub fn splits_every_object(&mut self, tt: &TorsionTheory) -> Result<bool> {
        let h = tt.heart.clone();
        let ind = self.indecomposables(&h)?;
        let free: Vec<ObjId> =
            ind.iter().copied().filter(|&y| tt.torsion.iter().all(|&t| self.cat.hom_dim(t, y, 0) == 0)).collect();
        for &x in &ind {
            let in_t = tt.torsion.contains(&x);
            let in_f = free.contains(&x);
            if in_t && in_f {
                return Ok(false);
            }
            if !in_t && !in_f {
                // must have a nonzero torsion sub with free quotient
                let subs = self.subobjects(&h, x)?;
                let ok = subs.iter().any(|s| {
                    !s.sub.is_empty()
                        && s.sub.iter().all(|p| tt.torsion.contains(p))
                        && self.cat.decompose(&self.cat.object(s.quotient).clone()).is_ok_and(|parts| {
                            parts.iter().all(|p| free.contains(p))
                        })
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Basis of the radical `rad(x, y)` between indecomposables: all maps
    /// when `x ≠ y`, the endomorphisms with nilpotent top when `x = y`.
    fn radical_basis(&self, x: ObjId, y: ObjId) -> Vec<ChainMap> {
        let alg = self.cat.alg();
        let basis = self.cat.hom_basis(x, y, 0);
        if x != y {
            return basis;
        }
        let traces: Vec<Q> = basis.iter().map(|f| f.top_trace(alg)).collect();
        let Some(pivot) = traces.iter().position(|t| !t.is_zero()) else {
            return basis;
        };
        let mut out = Vec::with_capacity(basis.len() - 1);
        for (i, f) in basis.iter().enumerate() {
            if i == pivot {
                continue;
            }
            let c = -(&traces[i] / &traces[pivot]);
            out.push(f.add(&basis[pivot].scale(&c)));
        }
        out
    }

    /// Dimensions of `rad(x, y)/rad²(x, y)` for all ordered pairs of
    /// indecomposables of a finite-type heart, listing only nonzero ones.
    pub fn irreducible_maps(&mut self, h: &Heart) -> Result<Vec<(ObjId, ObjId, usize)>> {
        let ind = self.indecomposables(h)?;
        let alg = self.cat.alg().clone();
        let mut rad: BTreeMap<(ObjId, ObjId), Vec<ChainMap>> = BTreeMap::new();
        for &x in &ind {
            for &y in &ind {
                rad.insert((x, y), self.radical_basis(x, y));
            }
        }
        let mut out = Vec::new();
        for &x in &ind {
            for &y in &ind {
                let r = &rad[&(x, y)];
                if r.is_empty() {
                    continue;
                }
                let space = HomSpace::new(&alg, self.cat.object(x), self.cat.object(y));
                let mut span = crate::linalg::SpanBuilder::new();
                for &z in &ind {
                    for f in &rad[&(x, z)] {
                        for g in &rad[&(z, y)] {
                            let c = space.coords(&g.compose(&alg, f))?;
                            span.insert(&c);
                        }
                    }
                }
                let irr = r.len() - span.dim();
                if irr > 0 {
                    out.push((x, y, irr));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{a2_algebra, point_algebra, vc_zero_algebra, Representation};

    fn vc() -> (Workbench, Heart) {
        let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
        let h = wb.standard_heart().unwrap();
        (wb, h)
    }

    #[test]
    fn standard_hearts() {
        let (mut wb, h) = vc();
        assert_eq!(h.len(), 2);
        assert_eq!(wb.class_in(&h, h.simples()[0]), vec![1, 0]);
        let mut wb1 = Workbench::new(point_algebra()).unwrap();
        assert_eq!(wb1.standard_heart().unwrap().len(), 1);
    }

    #[test]
    fn membership_of_shifts() {
        let (mut wb, h) = vc();
        for &s in h.simples() {
            assert!(wb.is_member(s, &h, Membership::Heart));
            let s1 = wb.cat_mut().shift(s, 1);
            assert!(!wb.is_member(s1, &h, Membership::Heart));
            assert!(wb.is_member(s1, &h, Membership::LowerAisle));
            assert!(!wb.is_member(s1, &h, Membership::UpperAisle));
            let sm = wb.cat_mut().shift(s, -1);
            assert!(wb.is_member(sm, &h, Membership::Interval01));
        }
    }

    #[test]
    fn five_indecomposables() {
        let (mut wb, h) = vc();
        let ind = wb.indecomposables(&h).unwrap();
        assert_eq!(ind.len(), 5);
        let mut classes: Vec<Vec<i64>> = ind.iter().map(|&x| wb.class_in(&h, x)).collect();
        classes.sort();
        assert_eq!(classes, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn semisimple_torsion_count() {
        let alg = BoundQuiverAlgebra::new(
            vec!["1".into(), "2".into()],
            Vec::new(),
            Vec::new(),
            1,
        )
        .unwrap();
        let mut wb = Workbench::new(alg).unwrap();
        let h = wb.standard_heart().unwrap();
        assert_eq!(wb.indecomposables(&h).unwrap().len(), 2);
        assert_eq!(wb.torsion_theories(&h).unwrap().len(), 4);
    }

    #[test]
    fn a2_tilts() {
        let mut wb = Workbench::new(a2_algebra()).unwrap();
        let h = wb.standard_heart().unwrap();
        assert_eq!(wb.indecomposables(&h).unwrap().len(), 3);
        assert_eq!(wb.torsion_theories(&h).unwrap().len(), 5);
        for i in 0..2 {
            let l = wb.left_tilt_simple(&h, i).unwrap();
            let j = l.index_of(wb.cat_mut().shift(h.simples()[i], -1)).unwrap();
            assert_eq!(wb.right_tilt_simple(&l, j).unwrap(), h);
        }
    }

    #[test]
    fn subobjects_of_simples() {
        let (mut wb, h) = vc();
        for &s in h.simples() {
            let subs = wb.subobjects(&h, s).unwrap();
            assert_eq!(subs.len(), 2);
            assert!(wb.is_simple_in(&h, s).unwrap());
        }
        let p1 = wb.cat_mut().module(&Representation::projective(&vc_zero_algebra(), 0).unwrap()).unwrap();
        assert!(!wb.is_simple_in(&h, p1).unwrap());
    }

    #[test]
    fn spherical() {
        let (mut wb, h) = vc();
        let ind = wb.indecomposables(&h).unwrap();
        assert_eq!(wb.spherical_check(h.simples()[0], &ind).unwrap(), Some(2));
        assert_eq!(wb.spherical_check(h.simples()[1], &ind).unwrap(), None);
        let s = h.simples()[0];
        let t = wb.twist(s, s).unwrap();
        assert_eq!(t, wb.cat_mut().shift(s, -1));
    }
}
