//! Stability conditions on the tiles `U(A) ≅ ℍⁿ` of finite-length hearts.
//!
//! Charges are exact: each value is `re + i·(im + eps·ε)` with `ε` a
//! positive infinitesimal. Ordinary tile points have `eps = 0`; the
//! infinitesimal is only used to decide limit-semistability at points where
//! some simple charges have become real. Phases are never computed as
//! numbers, they are compared through the sign of a cross product.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::hearts::{Heart, TorsionTheory, Workbench};
use crate::homotopy::ObjId;
use crate::linalg::{q, Q};
use crate::{Error, Result};

/// A complex number `re + i·(im + eps·ε)` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Charge {
    pub re: Q,
    pub im: Q,
    pub eps: Q,
}

impl Charge {
    pub fn new(re: Q, im: Q) -> Self {
        Charge { re, im, eps: Q::zero() }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Charge::new(q(re), q(im))
    }

    pub fn zero() -> Self {
        Charge::from_i64(0, 0)
    }

    pub fn add(&self, other: &Charge) -> Charge {
        Charge { re: &self.re + &other.re, im: &self.im + &other.im, eps: &self.eps + &other.eps }
    }

    pub fn scale(&self, c: &Q) -> Charge {
        Charge { re: &self.re * c, im: &self.im * c, eps: &self.eps * c }
    }

    /// Multiplication by `−i`.
    pub fn rotate_clockwise(&self) -> Charge {
        Charge { re: self.im.clone(), im: -&self.re, eps: Q::zero() }
    }

    /// Multiplication by `i`.
    pub fn rotate_counterclockwise(&self) -> Charge {
        Charge { re: -&self.im, im: self.re.clone(), eps: Q::zero() }
    }

    /// True when the standard part vanishes.
    pub fn is_real_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// The standard part is a real number.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Membership in `ℍ = {r·exp(iπφ) : r > 0, 0 < φ ≤ 1}`, with the
    /// infinitesimal part taken into account.
    pub fn in_upper_half_plane(&self) -> bool {
        match self.im.cmp(&Q::zero()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match self.eps.cmp(&Q::zero()) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => self.re.is_negative(),
            },
        }
    }

    /// Compares phases of two charges in `ℍ`.
    pub fn phase_cmp(&self, other: &Charge) -> Ordering {
        // arg(self) > arg(other) iff other × self > 0
        let std = &other.re * &self.im - &other.im * &self.re;
        if !std.is_zero() {
            return std.cmp(&Q::zero());
        }
        let inf = &other.re * &self.eps - &other.eps * &self.re;
        inf.cmp(&Q::zero())
    }

    /// Phase in `(0, 1]`, ignoring the infinitesimal part.
    pub fn phase_f64(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(0.0);
        let im = self.im.to_f64().unwrap_or(0.0);
        let phi = libm::atan2(im, re) / core::f64::consts::PI;
        if phi <= 0.0 {
            phi + 2.0
        } else {
            phi
        }
    }

    pub fn modulus_f64(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(0.0);
        let im = self.im.to_f64().unwrap_or(0.0);
        libm::hypot(re, im)
    }
}

/// Per-simple charges of a designated heart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    pub values: Vec<Charge>,
}

impl CentralCharge {
    pub fn new(values: Vec<Charge>) -> Self {
        CentralCharge { values }
    }

    pub fn from_i64(values: &[(i64, i64)]) -> Self {
        CentralCharge { values: values.iter().map(|&(a, b)| Charge::from_i64(a, b)).collect() }
    }

    /// The charge of a class written in the simple basis.
    pub fn eval(&self, class: &[i64]) -> Charge {
        class.iter().zip(&self.values).fold(Charge::zero(), |acc, (&c, z)| acc.add(&z.scale(&q(c))))
    }

    /// Adds `iε` to every simple whose charge is real.
    pub fn perturbed(&self) -> CentralCharge {
        CentralCharge {
            values: self
                .values
                .iter()
                .map(|z| {
                    let mut z = z.clone();
                    if z.im.is_zero() && z.eps.is_zero() {
                        z.eps = Q::one();
                    }
                    z
                })
                .collect(),
        }
    }
}

/// A point of the tile `U(H)`. Equality ignores the order of the simples.
#[derive(Clone, Debug)]
pub struct TilePoint {
    heart: Heart,
    charge: CentralCharge,
}

impl TilePoint {
    pub fn new(heart: Heart, charge: CentralCharge) -> Result<Self> {
        if charge.values.len() != heart.len() {
            return Err(Error::DimensionMismatch { expected: heart.len(), found: charge.values.len() });
        }
        for (i, z) in charge.values.iter().enumerate() {
            if !z.eps.is_zero() || !z.in_upper_half_plane() {
                return Err(Error::InvalidCharge(alloc::format!("simple {i} has charge outside the upper half plane")));
            }
        }
        Ok(TilePoint { heart, charge })
    }

    pub fn heart(&self) -> &Heart {
        &self.heart
    }

    pub fn charge(&self) -> &CentralCharge {
        &self.charge
    }

    /// Charge of the simple with the given id.
    pub fn charge_of_simple(&self, s: ObjId) -> Option<&Charge> {
        self.heart.index_of(s).map(|i| &self.charge.values[i])
    }

    fn sorted_pairs(&self) -> Vec<(ObjId, &Charge)> {
        let mut v: Vec<(ObjId, &Charge)> = self.heart.simples().iter().copied().zip(&self.charge.values).collect();
        v.sort_by_key(|p| p.0);
        v
    }
}

impl PartialEq for TilePoint {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_pairs() == other.sorted_pairs()
    }
}

impl Eq for TilePoint {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFactor {
    pub object: ObjId,
    /// Class in the simple basis of the heart.
    pub class: Vec<i64>,
    pub charge: Charge,
}

impl HnFactor {
    pub fn phase(&self) -> f64 {
        self.charge.phase_f64()
    }

    pub fn mass(&self) -> f64 {
        self.charge.modulus_f64()
    }
}

/// Harder–Narasimhan factors, in strictly decreasing phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnResult {
    pub factors: Vec<HnFactor>,
}

impl HnResult {
    pub fn mass(&self) -> f64 {
        self.factors.iter().map(HnFactor::mass).sum()
    }

    pub fn max_phase(&self) -> Option<&Charge> {
        self.factors.first().map(|f| &f.charge)
    }

    pub fn min_phase(&self) -> Option<&Charge> {
        self.factors.last().map(|f| &f.charge)
    }
}

/// A phase threshold `t` for the torsion classes `T_t = ⟨φ⁻ > t⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseThreshold {
    /// `t ≤ 0`.
    AtMostZero,
    /// `0 < t < 1`, the phase of the given nonzero charge.
    Direction(Charge),
    /// `t ≥ 1`.
    AtLeastOne,
}

impl PhaseThreshold {
    /// Exact thresholds for rationals whose direction is rational: `t ≤ 0`,
    /// `t ≥ 1` and the quarter turns.
    pub fn from_rational(t: &Q) -> Result<Self> {
        if *t <= Q::zero() {
            return Ok(PhaseThreshold::AtMostZero);
        }
        if *t >= Q::one() {
            return Ok(PhaseThreshold::AtLeastOne);
        }
        let four = t * q(4);
        if !four.is_integer() {
            return Err(Error::Unsupported(alloc::format!("phase threshold {t} has no rational direction")));
        }
        let dir = match four.to_integer().to_i64() {
            Some(1) => Charge::from_i64(1, 1),
            Some(2) => Charge::from_i64(0, 1),
            _ => Charge::from_i64(-1, 1),
        };
        Ok(PhaseThreshold::Direction(dir))
    }
}

/// Basis change between a heart and its simple left tilt, with the tilted
/// simple ordered last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingMatrix {
    /// Indices of the simples of the source heart, tilted simple last.
    pub order: Vec<usize>,
    /// Multiplicity of the tilted simple in each replacement simple, in
    /// `order` without its last entry.
    pub m: Vec<i64>,
}

impl GluingMatrix {
    /// `[[I, −m], [0, −1]]`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.order.len();
        let mut out = vec![vec![0; n]; n];
        for (i, row) in out.iter_mut().enumerate().take(n - 1) {
            row[i] = 1;
            row[n - 1] = -self.m[i];
        }
        out[n - 1][n - 1] = -1;
        out
    }

    /// Rows are the classes of the tilted simples in the old simple basis,
    /// both ordered by `order`: `[[I, m], [0, −1]]`.
    pub fn basis_change(&self) -> Vec<Vec<i64>> {
        let mut out = self.matrix();
        let n = out.len();
        for row in out.iter_mut().take(n - 1) {
            row[n - 1] = -row[n - 1];
        }
        out
    }

    pub fn determinant(&self) -> i64 {
        let m = self.matrix();
        let rows: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        crate::linalg::RatMatrix::from_rows(&rows).determinant().to_integer().to_i64().unwrap_or(0)
    }
}

/// One boundary ray `{t·direction : t > 0}` of the real charge plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfLine {
    /// `(Z(s₁), Z(s₂))` along the ray.
    pub direction: (i64, i64),
    /// Classes whose charge vanishes along the ray.
    pub normal: Vec<i64>,
    /// Limit-semistable objects of zero charge on the ray.
    pub witnesses: Vec<ObjId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Index of the bounding ray on the clockwise side.
    pub from: usize,
    /// Index of the bounding ray on the counterclockwise side.
    pub to: usize,
    pub sample: (i64, i64),
    pub heart: Heart,
}

/// The real codimension-two stratum of `cl U(H)` for a two-simple heart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallDiagram {
    pub heart: Heart,
    /// Sorted counterclockwise from the positive first axis.
    pub half_lines: Vec<HalfLine>,
    /// `regions[k]` lies between `half_lines[k]` and the next one.
    pub regions: Vec<Region>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TiltDirection {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Index of the tilted simple in the source heart.
    pub simple: usize,
    pub direction: TiltDirection,
    /// The left tilt's basis change: from the source heart for left edges,
    /// from the target heart for right edges, indexed as the nodes store
    /// their simples.
    pub gluing: GluingMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    /// Finite length with this many indecomposables.
    Finite(usize),
    Failed(Error),
    /// Finiteness was not checked.
    Unchecked,
}

#[derive(Clone, Debug, Default)]
pub struct ExchangeGraph {
    pub nodes: Vec<Heart>,
    pub depth: Vec<usize>,
    pub status: Vec<NodeStatus>,
    pub edges: Vec<Edge>,
    index: BTreeMap<Vec<ObjId>, usize>,
}

impl ExchangeGraph {
    pub fn node_of(&self, h: &Heart) -> Option<usize> {
        self.index.get(&h.key()).copied()
    }

    pub fn neighbors(&self, node: usize) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.from == node).collect()
    }

    fn add_node(&mut self, h: Heart, depth: usize) -> (usize, bool) {
        if let Some(&i) = self.index.get(&h.key()) {
            return (i, false);
        }
        let i = self.nodes.len();
        self.index.insert(h.key(), i);
        self.nodes.push(h);
        self.depth.push(depth);
        self.status.push(NodeStatus::Unchecked);
        (i, true)
    }
}

fn sort_by_angle(dirs: &mut [(i64, i64)]) {
    // upper half (including positive x axis) first, then lower half
    let half = |d: &(i64, i64)| if d.1 > 0 || (d.1 == 0 && d.0 > 0) { 0 } else { 1 };
    dirs.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let cross = (a.0 as i128) * (b.1 as i128) - (a.1 as i128) * (b.0 as i128);
            0.cmp(&cross)
        })
    });
}

fn primitive(d: (i64, i64)) -> (i64, i64) {
    let g = num_integer::gcd(d.0, d.1).max(1);
    (d.0 / g, d.1 / g)
}

impl Workbench {
    /// Charges of the simples of `target`, given per-simple charges of `h`.
    pub fn transport_charge(&mut self, h: &Heart, z: &CentralCharge, target: &Heart) -> CentralCharge {
        CentralCharge {
            values: target
                .simples()
                .iter()
                .map(|&s| {
                    let c = self.class_in(h, s);
                    z.eval(&c)
                })
                .collect(),
        }
    }

    pub fn charge_of(&mut self, h: &Heart, z: &CentralCharge, x: ObjId) -> Charge {
        let c = self.class_in(h, x);
        z.eval(&c)
    }

    /// Degree `n` with `x ∈ H[n]`, for objects lying in a single shift.
    pub fn heart_degree(&mut self, h: &Heart, x: ObjId) -> Option<i32> {
        if self.cat().is_zero(x) {
            return Some(0);
        }
        let (lo, hi) = self.cat().object(x).range()?;
        let spread = (self.cat().object_size(x) + h.len() + 2) as i32;
        for n in (-hi - spread)..=(-lo + spread) {
            let y = self.cat_mut().shift(x, -n);
            if self.is_member(y, h, crate::hearts::Membership::Heart) {
                return Some(n);
            }
        }
        None
    }

    pub fn is_semistable(&mut self, p: &TilePoint, x: ObjId) -> Result<bool> {
        Ok(self.hn(p, x)?.factors.len() <= 1)
    }

    pub fn hn(&mut self, p: &TilePoint, x: ObjId) -> Result<HnResult> {
        if !self.is_member(x, &p.heart, crate::hearts::Membership::Heart) {
            return Err(Error::NotInHeart);
        }
        let factors = self.hn_factors(&p.heart, &p.charge, x)?;
        Ok(HnResult { factors })
    }

    /// HN factors of an object of `h` for possibly infinitesimal charges.
    pub fn hn_factors(&mut self, h: &Heart, z: &CentralCharge, x: ObjId) -> Result<Vec<HnFactor>> {
        if self.cat().is_zero(x) {
            return Ok(Vec::new());
        }
        let zx = self.charge_of(h, z, x);
        let subs = self.subobjects(h, x)?;
        let mut best: Option<(Charge, usize, ObjId, ObjId)> = None;
        for s in &subs {
            if s.sub.is_empty() || self.cat().is_zero(s.quotient) {
                continue;
            }
            let mut zs = Charge::zero();
            let mut len = 0;
            for &a in &s.sub {
                let c = self.class_in(h, a);
                len += c.iter().sum::<i64>() as usize;
                zs = zs.add(&z.eval(&c));
            }
            if zs.phase_cmp(&zx) != Ordering::Greater {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bz, blen, _, _)) => match zs.phase_cmp(bz) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => len > *blen,
                },
            };
            if better || best.as_ref().is_some_and(|b| b.0.phase_cmp(&zs) == Ordering::Equal && b.1 == len) {
                let sum = self.cat().direct_sum(&s.sub);
                let id = self.cat_mut().intern(&sum)?;
                if better || best.as_ref().is_some_and(|b| id < b.2) {
                    best = Some((zs, len, id, s.quotient));
                }
            }
        }
        match best {
            None => {
                let class = self.class_in(h, x);
                Ok(vec![HnFactor { object: x, class, charge: zx }])
            }
            Some((zs, _, sub, quot)) => {
                let class = self.class_in(h, sub);
                let mut out = vec![HnFactor { object: sub, class, charge: zs }];
                out.extend(self.hn_factors(h, z, quot)?);
                Ok(out)
            }
        }
    }

    pub fn torsion_at_phase(&mut self, p: &TilePoint, t: &PhaseThreshold) -> Result<TorsionTheory> {
        let ind = self.indecomposables(&p.heart)?;
        let mut torsion = BTreeSet::new();
        for &x in &ind {
            let keep = match t {
                PhaseThreshold::AtMostZero => true,
                PhaseThreshold::AtLeastOne => false,
                PhaseThreshold::Direction(d) => {
                    let f = self.hn_factors(&p.heart, &p.charge, x)?;
                    f.last().is_some_and(|f| f.charge.phase_cmp(d) == Ordering::Greater)
                }
            };
            if keep {
                torsion.insert(x);
            }
        }
        let all = self.torsion_theories(&p.heart)?;
        all.into_iter()
            .find(|tt| tt.torsion == torsion)
            .ok_or_else(|| Error::InvalidCharge(String::from("phase truncation is not a torsion class")))
    }

    pub fn gluing_matrix(&mut self, h: &Heart, i: usize) -> Result<GluingMatrix> {
        let tilted = self.left_tilt_simple(h, i)?;
        let order: Vec<usize> = (0..h.len()).filter(|&j| j != i).chain(core::iter::once(i)).collect();
        let mut m = Vec::with_capacity(h.len() - 1);
        for &j in &order[..h.len() - 1] {
            let c = self.class_in(h, tilted.simples()[j]);
            m.push(c[i]);
        }
        Ok(GluingMatrix { order, m })
    }

    /// Hearts whose tile closure meets the stratum where the given simples
    /// have phase one.
    pub fn hearts_at_stratum(&mut self, h: &Heart, subset: &[usize]) -> Result<Vec<Heart>> {
        for &i in subset {
            if i >= h.len() {
                return Err(Error::SimpleOutOfRange { index: i, len: h.len() });
            }
        }
        let ind = self.indecomposables(h)?;
        let mut allowed = BTreeSet::new();
        for &x in &ind {
            let c = self.class_in(h, x);
            if c.iter().enumerate().all(|(j, &v)| v == 0 || subset.contains(&j)) {
                allowed.insert(x);
            }
        }
        let mut out = Vec::new();
        for tt in self.torsion_theories(h)? {
            if tt.torsion.is_subset(&allowed) {
                let b = self.tilt_at_torsion(h, &tt.torsion)?;
                if !out.contains(&b) {
                    out.push(b);
                }
            }
        }
        Ok(out)
    }

    /// Rejects a limit point at which a zero-charge indecomposable of `h` is
    /// semistable for the infinitesimally perturbed charge.
    fn check_limit_witnesses(&mut self, h: &Heart, z: &CentralCharge) -> Result<()> {
        let perturbed = z.perturbed();
        for x in self.indecomposables(h)? {
            if !self.charge_of(h, z, x).is_real_zero() {
                continue;
            }
            if self.hn_factors(h, &perturbed, x)?.len() == 1 {
                return Err(Error::LimitForbidden { class: self.class_in(h, x) });
            }
        }
        Ok(())
    }

    pub fn limit_heart(&mut self, h: &Heart, z: &CentralCharge) -> Result<Heart> {
        if z.values.len() != h.len() {
            return Err(Error::DimensionMismatch { expected: h.len(), found: z.values.len() });
        }
        for (i, v) in z.values.iter().enumerate() {
            if v.is_real_zero() || v.im.is_negative() || !v.eps.is_zero() {
                return Err(Error::InvalidCharge(alloc::format!("simple {i} has charge outside the closed upper half plane")));
            }
        }
        let mut cur = h.clone();
        let mut vals = z.clone();
        for _ in 0..=self.tilt_bound {
            self.check_limit_witnesses(&cur, &vals)?;
            let Some(i) = vals.values.iter().position(|v| v.is_real() && v.re.is_positive()) else {
                return Ok(cur);
            };
            let next = self.right_tilt_simple(&cur, i)?;
            vals = self.transport_charge(&cur, &vals, &next);
            cur = next;
        }
        Err(Error::TiltDivergence { bound: self.tilt_bound })
    }

    pub fn wall_diagram(&mut self, h: &Heart) -> Result<WallDiagram> {
        if h.len() != 2 {
            return Err(Error::Unsupported(String::from("wall diagrams need exactly two simples")));
        }
        let mut rays: BTreeMap<(i64, i64), (Vec<i64>, Vec<ObjId>)> = BTreeMap::new();
        // a simple's own charge vanishes on the opposite axis
        for (dir, s) in [((1, 0), 1usize), ((-1, 0), 1), ((0, 1), 0), ((0, -1), 0)] {
            let mut normal = vec![0, 0];
            normal[s] = 1;
            rays.insert(dir, (normal, vec![h.simples()[s]]));
        }
        for x in self.indecomposables(h)? {
            let c = self.class_in(h, x);
            if c[0] <= 0 || c[1] <= 0 {
                continue;
            }
            for dir in [(c[1], -c[0]), (-c[1], c[0])] {
                let dir = primitive(dir);
                let z = CentralCharge::from_i64(&[(dir.0, 0), (dir.1, 0)]).perturbed();
                if self.hn_factors(h, &z, x)?.len() == 1 {
                    let entry = rays.entry(dir).or_insert_with(|| (c.clone(), Vec::new()));
                    entry.1.push(x);
                }
            }
        }
        let mut dirs: Vec<(i64, i64)> = rays.keys().copied().collect();
        sort_by_angle(&mut dirs);
        let half_lines: Vec<HalfLine> = dirs
            .iter()
            .map(|d| {
                let (normal, witnesses) = rays[d].clone();
                HalfLine { direction: *d, normal, witnesses }
            })
            .collect();
        let n = half_lines.len();
        let mut regions = Vec::with_capacity(n);
        for k in 0..n {
            let a = half_lines[k].direction;
            let b = half_lines[(k + 1) % n].direction;
            let sample = (a.0 + b.0, a.1 + b.1);
            let z = CentralCharge::from_i64(&[(sample.0, 0), (sample.1, 0)]);
            let heart = self.limit_heart(h, &z)?;
            regions.push(Region { from: k, to: (k + 1) % n, sample, heart });
        }
        Ok(WallDiagram { heart: h.clone(), half_lines, regions })
    }

    /// Breadth-first search over simple tilts. When `check_finite` is set,
    /// every node's indecomposables are enumerated and the outcome recorded.
    pub fn explore(&mut self, h: &Heart, depth: usize, check_finite: bool) -> ExchangeGraph {
        let mut g = ExchangeGraph::default();
        g.add_node(h.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            let cur = g.nodes[node].clone();
            if check_finite {
                g.status[node] = match self.enumerate_indecomposables(&cur, self.length_bound) {
                    Ok(ind) => NodeStatus::Finite(ind.len()),
                    Err(e) => NodeStatus::Failed(e),
                };
            }
            if g.depth[node] >= depth {
                continue;
            }
            for i in 0..cur.len() {
                for dir in [TiltDirection::Left, TiltDirection::Right] {
                    let step = match dir {
                        TiltDirection::Left => self.left_tilt_simple(&cur, i),
                        TiltDirection::Right => self.right_tilt_simple(&cur, i),
                    };
                    let edge = step.and_then(|b| {
                        let (to, fresh) = g.add_node(b, g.depth[node] + 1);
                        if fresh {
                            queue.push_back(to);
                        }
                        let gluing = match dir {
                            TiltDirection::Left => self.gluing_matrix(&cur, i)?,
                            TiltDirection::Right => {
                                let target = g.nodes[to].clone();
                                let s1 = self.cat_mut().shift(cur.simples()[i], 1);
                                let j = target.index_of(s1).expect("shifted simple lies in the right tilt");
                                self.gluing_matrix(&target, j)?
                            }
                        };
                        Ok(Edge { from: node, to, simple: i, direction: dir, gluing })
                    });
                    match edge {
                        Ok(e) => g.edges.push(e),
                        Err(e) => g.status[node] = NodeStatus::Failed(e),
                    }
                }
            }
        }
        g
    }

    /// Rotation by `e^{−iπλ}` for half-integral real `λ`: the new heart is
    /// the slice of phases in `(λ, λ + 1]`, so `λ = 1` gives `H[1]`.
    pub fn act(&mut self, p: &TilePoint, lambda: &Q) -> Result<TilePoint> {
        let two = lambda * q(2);
        if !two.is_integer() {
            return Err(Error::Unsupported(alloc::format!("rotation by {lambda} has no rational charges")));
        }
        let steps = two.to_integer().to_i64().ok_or_else(|| Error::Unsupported(String::from("rotation too large")))?;
        let mut cur = p.clone();
        for _ in 0..steps.abs() {
            cur = self.half_turn(&cur, steps > 0)?;
        }
        Ok(cur)
    }

    /// Rotation by `e^{∓iπ/2}`.
    fn half_turn(&mut self, p: &TilePoint, forward: bool) -> Result<TilePoint> {
        let t = self.torsion_at_phase(p, &PhaseThreshold::Direction(Charge::from_i64(0, 1)))?;
        let tilted = self.tilt_at_torsion(&p.heart, &t.torsion)?;
        let heart = if forward { self.shift_heart(&tilted, 1) } else { tilted };
        let old = self.transport_charge(&p.heart, &p.charge, &heart);
        let values = old
            .values
            .iter()
            .map(|z| if forward { z.rotate_clockwise() } else { z.rotate_counterclockwise() })
            .collect();
        let out = TilePoint::new(heart, CentralCharge::new(values)).map_err(|_| Error::LeftTileRange)?;
        Ok(out)
    }

    /// Transports a point through the spherical twist at `s`; the charge
    /// vector is unchanged.
    pub fn act_twist(&mut self, p: &TilePoint, s: ObjId) -> Result<TilePoint> {
        let heart = self.twist_heart(s, &p.heart)?;
        TilePoint::new(heart, p.charge.clone())
    }

    /// Largest discrepancy of extreme phases and log-masses over the given
    /// objects; each must lie in a shift of both hearts.
    pub fn compare(&mut self, p: &TilePoint, other: &TilePoint, objects: &[ObjId]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &x in objects {
            if self.cat().is_zero(x) {
                continue;
            }
            let a = self.phase_profile(p, x)?;
            let b = self.phase_profile(other, x)?;
            worst = worst
                .max(libm::fabs(a.0 - b.0))
                .max(libm::fabs(a.1 - b.1))
                .max(libm::fabs(libm::log(a.2) - libm::log(b.2)));
        }
        Ok(worst)
    }

    /// `(φ⁺, φ⁻, m)` of an object lying in a shift of the heart.
    fn phase_profile(&mut self, p: &TilePoint, x: ObjId) -> Result<(f64, f64, f64)> {
        let n = self.heart_degree(&p.heart, x).ok_or(Error::NotInHeart)?;
        let y = self.cat_mut().shift(x, -n);
        let hn = self.hn(p, y)?;
        let hi = hn.factors.first().map(HnFactor::phase).unwrap_or(0.0) + n as f64;
        let lo = hn.factors.last().map(HnFactor::phase).unwrap_or(0.0) + n as f64;
        Ok((hi, lo, hn.mass()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{point_algebra, vc_zero_algebra};

    fn vc() -> (Workbench, Heart) {
        let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
        let h = wb.standard_heart().unwrap();
        (wb, h)
    }

    fn p1(wb: &mut Workbench) -> ObjId {
        wb.cat_mut().projective(0).unwrap()
    }

    #[test]
    fn phase_comparison_uses_cross_products() {
        let a = Charge::from_i64(1, 1);
        let b = Charge::from_i64(-1, 1);
        assert_eq!(b.phase_cmp(&a), Ordering::Greater);
        assert_eq!(Charge::from_i64(-1, 0).phase_cmp(&b), Ordering::Greater);
        assert_eq!(Charge::from_i64(2, 2).phase_cmp(&a), Ordering::Equal);
        let mut e = Charge::from_i64(1, 0);
        e.eps = Q::one();
        assert_eq!(a.phase_cmp(&e), Ordering::Greater);
        assert!(e.in_upper_half_plane());
        assert!(!Charge::from_i64(1, 0).in_upper_half_plane());
    }

    #[test]
    fn tile_points_reject_charges_outside_h() {
        let (_, h) = vc();
        assert!(TilePoint::new(h.clone(), CentralCharge::from_i64(&[(1, 0), (0, 1)])).is_err());
        assert!(TilePoint::new(h, CentralCharge::from_i64(&[(-1, 0), (0, 1)])).is_ok());
    }

    #[test]
    fn hn_of_j_shriek_depends_on_phase_order() {
        let (mut wb, h) = vc();
        let p = p1(&mut wb);
        let (cbig, cx) = (h.simples()[0], h.simples()[1]);
        // φ(C_x) > φ(C_X[1])
        let pt = TilePoint::new(h.clone(), CentralCharge::from_i64(&[(1, 1), (-1, 1)])).unwrap();
        let hn = wb.hn(&pt, p).unwrap();
        let objs: Vec<ObjId> = hn.factors.iter().map(|f| f.object).collect();
        assert_eq!(objs, vec![cx, cbig]);
        assert!(wb.is_semistable(&pt, cx).unwrap());
        let pt = TilePoint::new(h, CentralCharge::from_i64(&[(-1, 1), (1, 1)])).unwrap();
        assert!(wb.is_semistable(&pt, p).unwrap());
    }

    #[test]
    fn torsion_at_extreme_phases() {
        let (mut wb, h) = vc();
        let pt = TilePoint::new(h.clone(), CentralCharge::from_i64(&[(1, 1), (-1, 1)])).unwrap();
        let all = wb.indecomposables(&h).unwrap().len();
        assert!(wb.torsion_at_phase(&pt, &PhaseThreshold::AtLeastOne).unwrap().torsion.is_empty());
        assert_eq!(wb.torsion_at_phase(&pt, &PhaseThreshold::AtMostZero).unwrap().torsion.len(), all);
        let mid = wb.torsion_at_phase(&pt, &PhaseThreshold::from_rational(&crate::linalg::qf(1, 2)).unwrap()).unwrap();
        assert!(!mid.torsion.is_empty() && mid.torsion.len() < all);
    }

    #[test]
    fn gluing_at_the_spherical_simple() {
        let (mut wb, h) = vc();
        let g = wb.gluing_matrix(&h, 0).unwrap();
        assert_eq!(g.order, vec![1, 0]);
        assert_eq!(g.m, vec![1]);
        assert_eq!(g.matrix(), vec![vec![1, -1], vec![0, -1]]);
        assert_eq!(g.determinant(), -1);
    }

    #[test]
    fn limit_heart_examples() {
        let (mut wb, h) = vc();
        let z = CentralCharge::from_i64(&[(-1, 1), (0, 1)]);
        assert_eq!(wb.limit_heart(&h, &z).unwrap(), h);
        let z = CentralCharge::from_i64(&[(0, 1), (2, 0)]);
        let r = wb.right_tilt_simple(&h, 1).unwrap();
        assert_eq!(wb.limit_heart(&h, &z).unwrap(), r);
        let z = CentralCharge::from_i64(&[(-1, 0), (1, 0)]);
        assert_eq!(wb.limit_heart(&h, &z), Err(Error::LimitForbidden { class: vec![1, 1] }));
    }

    #[test]
    fn point_algebra_explores_to_a_line() {
        let mut wb = Workbench::new(point_algebra()).unwrap();
        let h = wb.standard_heart().unwrap();
        let g = wb.explore(&h, 3, true);
        assert_eq!(g.nodes.len(), 7);
        assert!(g.status.iter().all(|s| *s == NodeStatus::Finite(1)));
    }

    #[test]
    fn rotation_by_one_is_the_shift() {
        let (mut wb, h) = vc();
        let pt = TilePoint::new(h.clone(), CentralCharge::from_i64(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(wb.act(&pt, &Q::zero()).unwrap(), pt);
        let moved = wb.act(&pt, &Q::one()).unwrap();
        assert_eq!(moved.heart(), &wb.shift_heart(&h, 1));
        for (i, &s) in h.simples().iter().enumerate() {
            let s1 = wb.cat_mut().shift(s, 1);
            assert_eq!(moved.charge_of_simple(s1), Some(&pt.charge().values[i]));
        }
        let objs: Vec<ObjId> = h.simples().to_vec();
        assert_eq!(wb.compare(&pt, &pt, &objs).unwrap(), 0.0);
        let half = wb.act(&pt, &crate::linalg::qf(1, 2)).unwrap();
        let back = wb.act(&half, &crate::linalg::qf(-1, 2)).unwrap();
        assert_eq!(back, pt);
    }
}
