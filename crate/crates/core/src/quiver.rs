//! Bound quiver algebras and their finite-dimensional representations.
//!
//! Conventions: a path is a list of arrows, first-traversed arrow first. The
//! projective `P_v` has basis the surviving paths starting at `v`, and arrows
//! act by appending. Consequently `Hom(P_u, P_v)` is spanned by the paths
//! from `v` to `u`, and composition of maps is concatenation of paths.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::endo::{self, EndoRing};
use crate::linalg::{q, RatMatrix, SpanBuilder, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Q, Vec<usize>)>,
}

/// A path with explicit endpoints, so that trivial paths carry their vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

/// Sparse vector over the algebra basis.
pub type SparseElem = Vec<(usize, Q)>;

#[derive(Clone, Debug)]
pub struct BoundQuiverAlgebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    nil_bound: usize,
    basis: Vec<PathWord>,
    /// `mult[i * n + j]` is `basis[i]` followed by `basis[j]`.
    mult: Vec<SparseElem>,
    trivial: Vec<usize>,
    arrow_elem: Vec<usize>,
    between: BTreeMap<(usize, usize), Vec<usize>>,
}

impl BoundQuiverAlgebra {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>, nil_bound: usize) -> Result<Self> {
        for a in &arrows {
            if a.source >= vertices.len() {
                return Err(Error::InvalidVertex(a.source));
            }
            if a.target >= vertices.len() {
                return Err(Error::InvalidVertex(a.target));
            }
        }
        if nil_bound < 1 {
            return Err(Error::InvalidAlgebra("nil_bound must be at least 1".into()));
        }
        for (idx, rel) in relations.iter().enumerate() {
            check_admissible(idx, rel, &arrows)?;
        }
        let mut alg = BoundQuiverAlgebra {
            vertices,
            arrows,
            relations,
            nil_bound,
            basis: Vec::new(),
            mult: Vec::new(),
            trivial: Vec::new(),
            arrow_elem: Vec::new(),
            between: BTreeMap::new(),
        };
        alg.compute_basis()?;
        Ok(alg)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn nil_bound(&self) -> usize {
        self.nil_bound
    }

    /// Basis of the algebra as surviving paths.
    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn trivial(&self, v: usize) -> usize {
        self.trivial[v]
    }

    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_elem[a]
    }

    /// Basis indices of paths from `source` to `target`.
    pub fn paths_between(&self, source: usize, target: usize) -> &[usize] {
        self.between.get(&(source, target)).map_or(&[], |v| v.as_slice())
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseElem {
        &self.mult[i * self.basis.len() + j]
    }

    /// Cartan matrix: entry `(w, v)` is `dim (P_v)_w`.
    pub fn cartan(&self) -> RatMatrix {
        let n = self.num_vertices();
        let mut c = RatMatrix::zeros(n, n);
        for v in 0..n {
            for w in 0..n {
                c[(w, v)] = q(self.paths_between(v, w).len() as i64);
            }
        }
        c
    }

    /// The relation ideal truncated above `nil_bound`, then the standard
    /// monomials of the quotient with longer paths eliminated first.
    fn compute_basis(&mut self) -> Result<()> {
        let n = self.nil_bound;
        let mut paths: Vec<PathWord> = Vec::new();
        let mut by_len: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for v in 0..self.vertices.len() {
            by_len[0].push(paths.len());
            paths.push(PathWord { source: v, target: v, arrows: Vec::new() });
        }
        for len in 1..=n {
            let prev = by_len[len - 1].clone();
            for p in prev {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == paths[p].target {
                        let mut arrows = paths[p].arrows.clone();
                        arrows.push(ai);
                        by_len[len].push(paths.len());
                        paths.push(PathWord { source: paths[p].source, target: a.target, arrows });
                    }
                }
            }
        }
        let index: BTreeMap<Vec<usize>, usize> =
            paths.iter().enumerate().filter(|(_, p)| !p.arrows.is_empty()).map(|(i, p)| (p.arrows.clone(), i)).collect();
        // Columns ordered longest first so that pivots land on long paths.
        let mut col_order: Vec<usize> = (0..paths.len()).collect();
        col_order.sort_by(|&a, &b| paths[b].arrows.len().cmp(&paths[a].arrows.len()).then(a.cmp(&b)));
        let mut col_of = vec![0usize; paths.len()];
        for (c, &p) in col_order.iter().enumerate() {
            col_of[p] = c;
        }
        let mut gens: Vec<Vec<Q>> = Vec::new();
        for rel in &self.relations {
            let (src, tgt) = {
                let first = &rel.terms[0].1;
                (self.arrows[first[0]].source, self.arrows[*first.last().unwrap()].target)
            };
            let min_len = rel.terms.iter().map(|(_, p)| p.len()).min().unwrap();
            for lp in 0..=n.saturating_sub(min_len) {
                for &pi in &by_len[lp] {
                    if paths[pi].target != src {
                        continue;
                    }
                    for qs in by_len.iter().take(n - min_len - lp + 1) {
                        for &qi in qs {
                            if paths[qi].source != tgt {
                                continue;
                            }
                            let mut row = vec![Q::zero(); paths.len()];
                            let mut nonzero = false;
                            for (c, word) in &rel.terms {
                                let mut full = paths[pi].arrows.clone();
                                full.extend_from_slice(word);
                                full.extend_from_slice(&paths[qi].arrows);
                                if full.len() > n {
                                    continue;
                                }
                                let idx = index[&full];
                                row[col_of[idx]] += c;
                                nonzero = true;
                            }
                            if nonzero {
                                gens.push(row);
                            }
                        }
                    }
                }
            }
        }
        let mut span = SpanBuilder::new();
        for g in &gens {
            span.insert(g);
        }
        // Paths of length nil_bound must lie in the ideal.
        for &p in &by_len[n] {
            let mut unit = vec![Q::zero(); paths.len()];
            unit[col_of[p]] = Q::one();
            if !span.contains(&unit) {
                return Err(Error::NotNilpotent { nil_bound: n });
            }
        }
        let ech = RatMatrix::from_rows(&gens_or_empty(&gens, paths.len())).echelon();
        let mut is_pivot = vec![false; paths.len()];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        // standard monomials in original path order
        let standard: Vec<usize> = (0..paths.len()).filter(|&p| !is_pivot[col_of[p]]).collect();
        let mut std_index = vec![usize::MAX; paths.len()];
        for (i, &p) in standard.iter().enumerate() {
            std_index[p] = i;
        }
        let normal_form = |p: usize| -> SparseElem {
            if std_index[p] != usize::MAX {
                return vec![(std_index[p], Q::one())];
            }
            let col = col_of[p];
            let r = ech.pivots.iter().position(|&c| c == col).expect("pivot path");
            let mut out = Vec::new();
            for (c, &orig) in col_order.iter().enumerate() {
                let x = &ech.reduced[(r, c)];
                if c != col && !x.is_zero() {
                    out.push((std_index[orig], -x));
                }
            }
            out
        };
        self.basis = standard.iter().map(|&p| paths[p].clone()).collect();
        let nb = self.basis.len();
        self.trivial = (0..self.vertices.len()).map(|v| std_index[v]).collect();
        self.arrow_elem = (0..self.arrows.len()).map(|a| std_index[index[&vec![a]]]).collect();
        self.between.clear();
        for (i, b) in self.basis.iter().enumerate() {
            self.between.entry((b.source, b.target)).or_default().push(i);
        }
        self.mult = Vec::with_capacity(nb * nb);
        for i in 0..nb {
            for j in 0..nb {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                if a.target != b.source {
                    self.mult.push(Vec::new());
                    continue;
                }
                let mut full = a.arrows.clone();
                full.extend_from_slice(&b.arrows);
                if full.len() > n {
                    self.mult.push(Vec::new());
                } else if full.is_empty() {
                    self.mult.push(vec![(i, Q::one())]);
                } else {
                    self.mult.push(normal_form(index[&full]));
                }
            }
        }
        Ok(())
    }

    /// Multiplies dense elements (`a` followed by `b`).
    pub fn mul_elems(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.product(i, j) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

fn gens_or_empty(gens: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    if gens.is_empty() {
        vec![vec![Q::zero(); width]]
    } else {
        gens.to_vec()
    }
}

fn check_admissible(idx: usize, rel: &Relation, arrows: &[Arrow]) -> Result<()> {
    let bad = |reason: String| Error::NonAdmissible { relation: idx, reason };
    if rel.terms.is_empty() {
        return Err(bad("empty relation".into()));
    }
    let mut ends = None;
    for (c, path) in &rel.terms {
        if c.is_zero() {
            return Err(bad("zero coefficient".into()));
        }
        if path.len() < 2 {
            return Err(bad(format!("path of length {} (must be at least 2)", path.len())));
        }
        for &a in path {
            if a >= arrows.len() {
                return Err(bad(format!("unknown arrow {a}")));
            }
        }
        for w in path.windows(2) {
            if arrows[w[0]].target != arrows[w[1]].source {
                return Err(bad(format!("arrows {} and {} do not compose", arrows[w[0]].name, arrows[w[1]].name)));
            }
        }
        let e = (arrows[path[0]].source, arrows[*path.last().unwrap()].target);
        match ends {
            None => ends = Some(e),
            Some(prev) if prev != e => return Err(bad("paths are not parallel".into())),
            _ => {}
        }
    }
    Ok(())
}

/// Top generators of a module: a vertex and a vector at that vertex.
pub type Generators = Vec<(usize, Vec<Q>)>;

/// Representation: a vector space per vertex and a matrix per arrow
/// (`dim target × dim source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

/// Family of linear maps, one per vertex (`dim N_v × dim M_v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(alg: &BoundQuiverAlgebra, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() {
            return Err(Error::DimensionMismatch { expected: alg.num_vertices(), found: dims.len() });
        }
        if maps.len() != alg.arrows().len() {
            return Err(Error::DimensionMismatch { expected: alg.arrows().len(), found: maps.len() });
        }
        for (a, m) in alg.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidRepresentation(format!("arrow {} has a matrix of the wrong shape", a.name)));
            }
        }
        let rep = Representation { dims, maps };
        for (i, rel) in alg.relations().iter().enumerate() {
            let (s, t) = {
                let p = &rel.terms[0].1;
                (alg.arrows()[p[0]].source, alg.arrows()[*p.last().unwrap()].target)
            };
            let mut acc = RatMatrix::zeros(rep.dims[t], rep.dims[s]);
            for (c, p) in &rel.terms {
                acc = acc.add(&rep.path_action(alg, p, s).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRepresentation(format!("relation {i} does not vanish")));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &BoundQuiverAlgebra) -> Self {
        Representation {
            dims: vec![0; alg.num_vertices()],
            maps: alg.arrows().iter().map(|_| RatMatrix::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(alg: &BoundQuiverAlgebra, v: usize) -> Result<Self> {
        if v >= alg.num_vertices() {
            return Err(Error::InvalidVertex(v));
        }
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let maps = alg.arrows().iter().map(|a| RatMatrix::zeros(dims[a.target], dims[a.source])).collect();
        Ok(Representation { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Action of a path starting at `start` (trivial path for empty words).
    pub fn path_action(&self, alg: &BoundQuiverAlgebra, path: &[usize], start: usize) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dims[start]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        let _ = alg;
        m
    }

    /// Action of the basis element `b` (a surviving path).
    pub fn basis_action(&self, alg: &BoundQuiverAlgebra, b: usize) -> RatMatrix {
        let w = &alg.basis()[b];
        self.path_action(alg, &w.arrows, w.source)
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| block_diag(a, b)).collect();
        Representation { dims, maps }
    }

    /// Radical `Σ_a im(M_a)`, as a basis per vertex.
    pub fn radical(&self, alg: &BoundQuiverAlgebra) -> Vec<Vec<Vec<Q>>> {
        let mut out = Vec::new();
        for v in 0..alg.num_vertices() {
            let mut span = SpanBuilder::new();
            let mut basis = Vec::new();
            for (ai, a) in alg.arrows().iter().enumerate() {
                if a.target != v {
                    continue;
                }
                for c in 0..self.maps[ai].cols() {
                    let col = self.maps[ai].column(c);
                    if span.insert(&col) {
                        basis.push(col);
                    }
                }
            }
            out.push(basis);
        }
        out
    }

    /// Generators of a top: per vertex, vectors completing the radical.
    pub fn top_generators(&self, alg: &BoundQuiverAlgebra) -> Generators {
        let rad = self.radical(alg);
        let mut gens = Vec::new();
        for (v, rad_v) in rad.iter().enumerate() {
            let mut span = SpanBuilder::new();
            for r in rad_v {
                span.insert(r);
            }
            for i in 0..self.dims[v] {
                let mut e = vec![Q::zero(); self.dims[v]];
                e[i] = Q::one();
                if span.insert(&e) {
                    gens.push((v, e));
                }
            }
        }
        gens
    }

    /// Submodule spanned per vertex by the given bases (must be invariant).
    pub fn submodule(&self, alg: &BoundQuiverAlgebra, bases: &[Vec<Vec<Q>>]) -> Result<(Representation, ModuleMap)> {
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let incl: Vec<RatMatrix> =
            bases.iter().enumerate().map(|(v, b)| RatMatrix::from_columns(self.dims[v], b)).collect();
        let mut maps = Vec::new();
        for (ai, a) in alg.arrows().iter().enumerate() {
            let image = self.maps[ai].mul(&incl[a.source]);
            let mut m = RatMatrix::zeros(dims[a.target], dims[a.source]);
            for c in 0..image.cols() {
                let x = incl[a.target]
                    .solve(&image.column(c))?
                    .ok_or_else(|| Error::InvalidRepresentation("subspace is not a submodule".into()))?;
                for (r, val) in x.into_iter().enumerate() {
                    m[(r, c)] = val;
                }
            }
            maps.push(m);
        }
        Ok((Representation { dims, maps }, ModuleMap { maps: incl }))
    }

    /// Projective `P_v`: basis the paths from `v`, arrows act by appending.
    pub fn projective(alg: &BoundQuiverAlgebra, v: usize) -> Result<Representation> {
        if v >= alg.num_vertices() {
            return Err(Error::InvalidVertex(v));
        }
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|u| alg.paths_between(v, u).len()).collect();
        let mut maps = Vec::new();
        for (ai, a) in alg.arrows().iter().enumerate() {
            let src = alg.paths_between(v, a.source);
            let tgt = alg.paths_between(v, a.target);
            let mut m = RatMatrix::zeros(tgt.len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                for (k, coef) in alg.product(b, alg.arrow_basis(ai)) {
                    let r = tgt.iter().position(|&t| t == *k).expect("product stays between the endpoints");
                    m[(r, c)] += coef;
                }
            }
            maps.push(m);
        }
        Ok(Representation { dims, maps })
    }

    /// Direct sum of projectives at the given vertices (in order).
    pub fn projective_sum(alg: &BoundQuiverAlgebra, vertices: &[usize]) -> Result<Representation> {
        let mut acc = Representation::zero(alg);
        for &v in vertices {
            acc = acc.direct_sum(&Representation::projective(alg, v)?);
        }
        Ok(acc)
    }
}

fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let mut m = RatMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m[(r, c)] = a[(r, c)].clone();
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m[(a.rows() + r, a.cols() + c)] = b[(r, c)].clone();
        }
    }
    m
}

impl ModuleMap {
    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&inner.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(RatMatrix::is_zero)
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    /// Kernel as a submodule of the source.
    pub fn kernel(&self, alg: &BoundQuiverAlgebra, source: &Representation) -> Result<(Representation, ModuleMap)> {
        let bases: Vec<Vec<Vec<Q>>> = self
            .maps
            .iter()
            .zip(source.dims())
            .map(|(m, &d)| if d == 0 { Vec::new() } else { m.kernel_basis() })
            .collect();
        source.submodule(alg, &bases)
    }
}

/// Basis of `Hom(M, N)`: families commuting with every arrow.
pub fn hom_modules(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let nv = alg.num_vertices();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        // f_t · M_a − N_a · f_s = 0, entry (r, c) with r < dim N_t, c < dim M_s
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..m.dims[t] {
                    let x = &m.maps[ai][(k, c)];
                    if !x.is_zero() {
                        row[offset[t] + r * m.dims[t] + k] += x;
                    }
                }
                for k in 0..n.dims[s] {
                    let x = &n.maps[ai][(r, k)];
                    if !x.is_zero() {
                        row[offset[s] + k * m.dims[s] + c] -= x;
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() { RatMatrix::zeros(0, unknowns) } else { RatMatrix::from_rows(&rows) };
    sys.kernel_basis()
        .into_iter()
        .map(|x| ModuleMap {
            maps: (0..nv)
                .map(|v| RatMatrix::from_vec(n.dims[v], m.dims[v], x[offset[v]..offset[v + 1]].to_vec()))
                .collect(),
        })
        .collect()
}

/// Map from `⊕ P_{v_i}` sending the `i`-th generator to the given vector.
pub fn map_from_projectives(
    alg: &BoundQuiverAlgebra,
    target: &Representation,
    gens: &[(usize, Vec<Q>)],
) -> Result<(Representation, ModuleMap)> {
    let verts: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let p = Representation::projective_sum(alg, &verts)?;
    let mut maps = Vec::new();
    for u in 0..alg.num_vertices() {
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for (v, g) in gens {
            for &b in alg.paths_between(*v, u) {
                cols.push(target.basis_action(alg, b).mul_vec(g));
            }
        }
        maps.push(if cols.is_empty() {
            RatMatrix::zeros(target.dims()[u], 0)
        } else {
            RatMatrix::from_columns(target.dims()[u], &cols)
        });
    }
    Ok((p, ModuleMap { maps }))
}

/// Projective cover: generator vertices, the projective, and the surjection.
pub fn projective_cover(
    alg: &BoundQuiverAlgebra,
    m: &Representation,
) -> Result<(Generators, Representation, ModuleMap)> {
    let gens = m.top_generators(alg);
    let (p, pi) = map_from_projectives(alg, m, &gens)?;
    Ok((gens, p, pi))
}

struct ModuleEnd<'a> {
    alg: &'a BoundQuiverAlgebra,
    m: &'a Representation,
}

impl EndoRing for ModuleEnd<'_> {
    type Elem = ModuleMap;
    fn one(&self) -> ModuleMap {
        ModuleMap { maps: self.m.dims.iter().map(|&d| RatMatrix::identity(d)).collect() }
    }
    fn compose(&self, a: &ModuleMap, b: &ModuleMap) -> ModuleMap {
        a.compose(b)
    }
    fn add(&self, a: &ModuleMap, b: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: a.maps.iter().zip(&b.maps).map(|(x, y)| x.add(y)).collect() }
    }
    fn scale(&self, a: &ModuleMap, s: &Q) -> ModuleMap {
        ModuleMap { maps: a.maps.iter().map(|x| x.scale(s)).collect() }
    }
    fn coords(&self, a: &ModuleMap) -> Vec<Q> {
        a.maps.iter().flat_map(|x| x.entries().iter().cloned()).collect()
    }
    fn top(&self, a: &ModuleMap) -> RatMatrix {
        let _ = self.alg;
        let mut acc = RatMatrix::zeros(0, 0);
        for x in &a.maps {
            acc = block_diag(&acc, x);
        }
        acc
    }
}

/// Krull–Schmidt decomposition into indecomposable summands.
pub fn decompose(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<Vec<Representation>> {
    if m.total_dim() == 0 {
        return Ok(Vec::new());
    }
    let ring = ModuleEnd { alg, m };
    let basis = hom_modules(alg, m, m);
    let Some(e) = endo::split_idempotent(&ring, &basis, 0x5eed)? else {
        return Ok(vec![m.clone()]);
    };
    let one = ring.one();
    let f = ring.add(&one, &ring.scale(&e, &q(-1)));
    let mut out = Vec::new();
    for idem in [e, f] {
        let bases: Vec<Vec<Vec<Q>>> = idem
            .maps
            .iter()
            .map(|x| {
                let mut span = SpanBuilder::new();
                let mut cols = Vec::new();
                for c in 0..x.cols() {
                    let col = x.column(c);
                    if span.insert(&col) {
                        cols.push(col);
                    }
                }
                cols
            })
            .collect();
        let (sub, _) = m.submodule(alg, &bases)?;
        out.extend(decompose(alg, &sub)?);
    }
    Ok(out)
}

/// Isomorphism of indecomposables: some `g ∘ f` with `f: M → N`,
/// `g: N → M` is invertible.
fn iso_indecomposable(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> bool {
    if m.dims != n.dims {
        return false;
    }
    let fs = hom_modules(alg, m, n);
    let gs = hom_modules(alg, n, m);
    fs.iter().any(|f| gs.iter().any(|g| g.compose(f).maps.iter().all(|x| x.determinant() != Q::zero())))
}

pub fn is_isomorphic(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    let a = decompose(alg, m)?;
    let mut b = decompose(alg, n)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in &a {
        let Some(pos) = b.iter().position(|y| iso_indecomposable(alg, x, y)) else {
            return Ok(false);
        };
        b.swap_remove(pos);
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Exactly(usize),
    AtLeast(usize),
}

/// Projective dimension of each simple via minimal resolutions.
pub fn global_dimension(alg: &BoundQuiverAlgebra, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        let mut current = Representation::simple(alg, v).expect("valid vertex");
        let mut len = 0;
        loop {
            let (_, p, pi) = projective_cover(alg, &current).expect("cover exists");
            let (k, _) = pi.kernel(alg, &p).expect("kernel is a submodule");
            if k.total_dim() == 0 {
                break;
            }
            len += 1;
            if len >= bound {
                return GlobalDimension::AtLeast(bound);
            }
            current = k;
        }
        best = best.max(len);
    }
    GlobalDimension::Exactly(best)
}

/// Quiver `1 ⇄ 2` with `c: 1 → 2`, `v: 2 → 1` and the relation `vc = 0`
/// (the path `[c, v]`).
pub fn vc_zero_algebra() -> BoundQuiverAlgebra {
    BoundQuiverAlgebra::new(
        vec!["1".into(), "2".into()],
        vec![
            Arrow { name: "c".into(), source: 0, target: 1 },
            Arrow { name: "v".into(), source: 1, target: 0 },
        ],
        vec![Relation { terms: vec![(Q::one(), vec![0, 1])] }],
        3,
    )
    .expect("vc=0 algebra is admissible")
}

/// Kronecker quiver: two arrows from vertex 1 to vertex 2.
pub fn kronecker_algebra() -> BoundQuiverAlgebra {
    BoundQuiverAlgebra::new(
        vec!["1".into(), "2".into()],
        vec![
            Arrow { name: "a".into(), source: 0, target: 1 },
            Arrow { name: "b".into(), source: 0, target: 1 },
        ],
        Vec::new(),
        2,
    )
    .expect("Kronecker quiver has no relations")
}

pub fn a2_algebra() -> BoundQuiverAlgebra {
    BoundQuiverAlgebra::new(
        vec!["1".into(), "2".into()],
        vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        Vec::new(),
        2,
    )
    .expect("A2 is admissible")
}

pub fn point_algebra() -> BoundQuiverAlgebra {
    BoundQuiverAlgebra::new(vec!["1".into()], Vec::new(), Vec::new(), 1).expect("a point is admissible")
}
