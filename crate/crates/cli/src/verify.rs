//! The verification suites: each criterion becomes one report entry, and
//! mathematical errors inside a check count as failures of that entry.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;
use tiltstab_core::hearts::{Heart, Workbench};
use tiltstab_core::homotopy::{HomSpace, ObjId};
use tiltstab_core::linalg::{q, RatMatrix, Q};
use tiltstab_core::quiver::{kronecker_algebra, vc_zero_algebra};
use tiltstab_core::stability::{CentralCharge, Charge, TiltDirection, TilePoint};
use tiltstab_core::Error;

use crate::classify::{classify_p1_heart, FamilyCoords, HeartTag, P1Objects, DEFAULT_TWIST_SEARCH};
use crate::CliError;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    P1,
    Kronecker,
    Core,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite, CliError> {
        match name {
            "p1" => Ok(Suite::P1),
            "kronecker" => Ok(Suite::Kronecker),
            "core" => Ok(Suite::Core),
            other => Err(CliError::Schema(format!("unknown suite `{other}`; expected p1, kronecker or core"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub entries: Vec<Entry>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let mark = if e.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} [{}] {}: {}", e.criterion, e.name, e.detail)?;
        }
        write!(f, "{} in {:.2}s", if self.passed() { "all passed" } else { "FAILED" }, self.elapsed.as_secs_f64())
    }
}

/// Result of one check: pass/fail and a human-readable explanation.
type Check = Result<(bool, String), Error>;

fn entry(criterion: u8, name: &str, check: impl FnOnce() -> Check) -> Entry {
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Entry { criterion, name: name.into(), passed, detail }
}

fn verdict(failures: &[String], ok: String) -> (bool, String) {
    match failures.first() {
        None => (true, ok),
        Some(first) => (false, format!("{} failure(s); first: {first}", failures.len())),
    }
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::P1 => &[1, 2, 3, 4, 5, 6, 7],
            Suite::Kronecker => &[8],
            Suite::Core => &[9],
        }
    }
}

/// The entries of one acceptance criterion; criterion 8 has three clauses.
pub fn criterion(n: u8, seed: u64) -> Vec<Entry> {
    match n {
        1 => vec![entry(1, "perverse heart inventory", criterion_inventory)],
        2 => vec![entry(2, "tilt identities on the depth-4 orbit", criterion_tilt_identities)],
        3 => vec![entry(3, "torsion coherence", criterion_torsion)],
        4 => vec![entry(4, "twist and family structure", criterion_family)],
        5 => vec![entry(5, "wall diagram", criterion_walls)],
        6 => vec![entry(6, "exchange graph structure", criterion_exchange_graph)],
        7 => vec![entry(7, "HN oracle equivalence", || criterion_hn(seed))],
        8 => vec![
            entry(8, "Kronecker infinite type", kronecker_infinite_type),
            entry(8, "Kronecker line-bundle chain", kronecker_chain),
            entry(8, "Kronecker depth-8 orbit without positive hearts", kronecker_positivity),
        ],
        9 => vec![entry(9, "seeded property battery", || criterion_properties(seed))],
        _ => Vec::new(),
    }
}

pub fn run(suite: Suite, seed: u64) -> Report {
    let start = Instant::now();
    let entries = suite.criteria().iter().flat_map(|&n| criterion(n, seed)).collect();
    Report { suite, seed, entries, elapsed: start.elapsed() }
}

fn p1_setup() -> Result<(Workbench, Heart, P1Objects), Error> {
    let mut wb = Workbench::new(vc_zero_algebra())?;
    let h = wb.standard_heart()?;
    let refs = P1Objects::new(&mut wb)?;
    Ok((wb, h, refs))
}

/// Class in the `(C_x, C_X[1])` basis; the standard heart stores `C_X[1]` first.
fn perverse_class(wb: &mut Workbench, h: &Heart, x: ObjId) -> (i64, i64) {
    let c = wb.class_in(h, x);
    (c[1], c[0])
}

fn criterion_inventory() -> Check {
    let (mut wb, h, refs) = p1_setup()?;
    let ind = wb.indecomposables(&h)?;
    let mut classes: Vec<(i64, i64)> = ind.iter().map(|&x| perverse_class(&mut wb, &h, x)).collect();
    classes.sort_unstable();
    let expected = vec![(0, 1), (1, 0), (1, 1), (1, 1), (2, 1)];
    let p2 = wb.cat_mut().projective(1)?;
    let (c_x, c_big, p1, m) = (refs.c_x, refs.c_big, refs.j_shriek, refs.j_star);
    let arrows: BTreeSet<(ObjId, ObjId, usize)> = wb.irreducible_maps(&h)?.into_iter().collect();
    let pattern: BTreeSet<(ObjId, ObjId, usize)> =
        [(c_x, p1, 1), (p1, p2, 1), (p2, m, 1), (m, c_x, 1), (c_big, m, 1), (p1, c_big, 1)].into_iter().collect();
    let ok = ind.len() == 5 && classes == expected && arrows == pattern;
    Ok((ok, format!("{} indecomposables, classes {classes:?}, {} irreducible maps", ind.len(), arrows.len())))
}

fn criterion_tilt_identities() -> Check {
    let (mut wb, h, _) = p1_setup()?;
    let g = wb.explore(&h, 4, false);
    let mut failures = Vec::new();
    for (node, a) in g.nodes.iter().enumerate() {
        for i in 0..a.len() {
            let s = a.simples()[i];
            let l = wb.left_tilt_simple(a, i)?;
            let down = wb.cat_mut().shift(s, -1);
            let back = wb.right_tilt_simple(&l, l.index_of(down).expect("tilted simple is shifted"))?;
            if &back != a {
                failures.push(format!("node {node}: right∘left at simple {i}"));
            }
            let r = wb.right_tilt_simple(a, i)?;
            let up = wb.cat_mut().shift(s, 1);
            let back = wb.left_tilt_simple(&r, r.index_of(up).expect("tilted simple is shifted"))?;
            if &back != a {
                failures.push(format!("node {node}: left∘right at simple {i}"));
            }
            let sc = wb.cat().k_class(s);
            for k in (0..a.len()).filter(|&k| k != i) {
                let diff = wb.cat().k_class(l.simples()[k]).sub(&wb.cat().k_class(a.simples()[k]));
                let r = sc.0.iter().zip(&diff.0).find_map(|(&t, &d)| (t != 0).then(|| d / t)).unwrap_or(0);
                if r < 0 || diff != sc.scale(r) {
                    failures.push(format!("node {node}: class law fails for simple {k} under tilt at {i}"));
                }
            }
        }
    }
    Ok(verdict(&failures, format!("{} hearts, {} round trips each way", g.nodes.len(), 2 * g.nodes.len())))
}

/// Subsets of indecomposables closed under quotients and extensions, found
/// by testing all `2ⁿ` subsets directly.
pub fn brute_force_torsion_sets(wb: &mut Workbench, h: &Heart) -> Result<BTreeSet<BTreeSet<ObjId>>, Error> {
    let ind = wb.indecomposables(h)?;
    let n = ind.len();
    let mut quotients: Vec<Vec<Vec<ObjId>>> = Vec::with_capacity(n);
    for &x in &ind {
        let mut qs = Vec::new();
        for s in wb.subobjects(h, x)? {
            let qx = wb.cat().object(s.quotient).clone();
            qs.push(wb.cat_mut().decompose(&qx)?);
        }
        quotients.push(qs);
    }
    let mut ext: Vec<Vec<Vec<Vec<ObjId>>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (mids, _) = wb.extensions(ind[j], ind[i])?;
            for m in mids {
                ext[i][j].push(wb.cat_mut().decompose(&m)?);
            }
        }
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let set: BTreeSet<ObjId> = members.iter().map(|&i| ind[i]).collect();
        let inside = |parts: &Vec<ObjId>| parts.iter().all(|p| set.contains(p));
        let quotient_closed = members.iter().all(|&i| quotients[i].iter().all(inside));
        let extension_closed = members.iter().all(|&i| members.iter().all(|&j| ext[i][j].iter().all(inside)));
        if quotient_closed && extension_closed {
            out.insert(set);
        }
    }
    Ok(out)
}

fn criterion_torsion() -> Check {
    let (mut wb, h, _) = p1_setup()?;
    let tts = wb.torsion_theories(&h)?;
    let ours: BTreeSet<BTreeSet<ObjId>> = tts.iter().map(|t| t.torsion.clone()).collect();
    let oracle = brute_force_torsion_sets(&mut wb, &h)?;
    let mut failures = Vec::new();
    if ours != oracle {
        failures.push(format!("{} theories, brute force finds {}", ours.len(), oracle.len()));
    }
    for (k, tt) in tts.iter().enumerate() {
        let b = wb.tilt_at_torsion(&h, &tt.torsion)?;
        if wb.recover_torsion(&h, &b)?.torsion != tt.torsion {
            failures.push(format!("theory {k} does not round-trip"));
        }
    }
    Ok(verdict(&failures, format!("{} torsion theories, all round-trip", tts.len())))
}

fn criterion_family() -> Check {
    let (mut wb, h, refs) = p1_setup()?;
    let mut failures = Vec::new();
    let twisted = wb.twist_heart(refs.c_big, &h)?;
    let tilted = wb.left_tilt_simple(&h, h.index_of(refs.c_big).expect("C_X[1] is simple"))?;
    if twisted != tilted {
        failures.push("twist by C_X[1] differs from the left tilt at C_X[1]".to_string());
    }
    for r in 1..=2 {
        let diagonal = refs.family_heart(&mut wb, FamilyCoords { n: 0, r: -r, s: -r })?;
        let t = wb.twist_heart(refs.c_big, &diagonal)?;
        let label = classify_p1_heart(&mut wb, &refs, &t, DEFAULT_TWIST_SEARCH)?;
        if label.coords != Some(FamilyCoords { n: 0, r, s: 0 }) {
            failures.push(format!("Δ P^{{-{r},-{r}}} classifies as {}", label.name()));
        }
    }
    let g = wb.explore(&h, 6, false);
    let mut tags = [0usize; 4];
    for (node, b) in g.nodes.iter().enumerate() {
        let label = classify_p1_heart(&mut wb, &refs, b, DEFAULT_TWIST_SEARCH)?;
        tags[label.tag as usize] += 1;
        if label.tag == HeartTag::Unknown {
            failures.push(format!("depth-6 node {node} is outside the family"));
        }
    }
    let mut powers = vec![h.clone()];
    for _ in 0..6 {
        let next = wb.twist_heart(refs.c_big, powers.last().expect("non-empty"))?;
        if powers.contains(&next) {
            failures.push(format!("Δ^{} returns to an earlier heart", powers.len()));
        }
        powers.push(next);
    }
    Ok(verdict(
        &failures,
        format!(
            "depth-6 orbit of {} hearts: {} perverse, {} constructible, {} semisimple; Δ⁰..Δ⁶ distinct",
            g.nodes.len(),
            tags[0],
            tags[1],
            tags[2]
        ),
    ))
}

fn criterion_walls() -> Check {
    let (mut wb, h, _) = p1_setup()?;
    let d = wb.wall_diagram(&h)?;
    let torsion = wb.torsion_theories(&h)?.len();
    let mut failures = Vec::new();
    if d.regions.len() != torsion {
        failures.push(format!("{} regions but {torsion} torsion theories", d.regions.len()));
    }
    let n = d.regions.len();
    for k in 0..n {
        let a = d.regions[k].heart.clone();
        let b = d.regions[(k + 1) % n].heart.clone();
        let mut tilts = 0;
        for i in 0..2 {
            tilts += usize::from(wb.right_tilt_simple(&a, i)? == b);
            tilts += usize::from(wb.right_tilt_simple(&b, i)? == a);
        }
        if tilts != 1 {
            failures.push(format!("regions {k} and {} are related by {tilts} simple right tilts", (k + 1) % n));
        }
    }
    for (k, line) in d.half_lines.iter().enumerate() {
        let z = CentralCharge::from_i64(&[(line.direction.0, 0), (line.direction.1, 0)]);
        if line.witnesses.is_empty() {
            failures.push(format!("half-line {k} has no witness"));
        }
        for &w in &line.witnesses {
            let charge = wb.charge_of(&h, &z, w);
            let semistable = wb.hn_factors(&h, &z.perturbed(), w)?.len() == 1;
            if !charge.is_real_zero() || !semistable {
                failures.push(format!("witness {w} on half-line {k}: zero charge {}, limit-semistable {semistable}", charge.is_real_zero()));
            }
        }
        if wb.limit_heart(&h, &z).is_ok() {
            failures.push(format!("half-line {k} admits a limit heart"));
        }
    }
    Ok(verdict(&failures, format!("{} half-lines, {n} regions, {torsion} torsion theories", d.half_lines.len())))
}

fn criterion_exchange_graph() -> Check {
    let (mut wb, h, refs) = p1_setup()?;
    let mut failures = Vec::new();
    let near = wb.explore(&h, 1, false);
    let neighbours: BTreeSet<usize> = near.neighbors(0).iter().map(|e| e.to).collect();
    if neighbours.len() != 4 || neighbours.contains(&0) {
        failures.push(format!("P⁰ has {} distinct depth-1 neighbours", neighbours.len()));
    }
    let depth = 4;
    let g = wb.explore(&h, depth, false);
    let mut perverse = 0;
    for node in 0..g.nodes.len() {
        if g.depth[node] == depth {
            continue;
        }
        let edges = g.neighbors(node);
        let targets = |dir: TiltDirection| edges.iter().filter(|e| e.direction == dir).map(|e| e.to).collect::<BTreeSet<_>>();
        let (left, right) = (targets(TiltDirection::Left), targets(TiltDirection::Right));
        if classify_p1_heart(&mut wb, &refs, &g.nodes[node], DEFAULT_TWIST_SEARCH)?.tag == HeartTag::Perverse {
            perverse += 1;
            if left.len() != 2 || right.len() != 2 {
                failures.push(format!("perverse node {node} has {} left and {} right neighbours", left.len(), right.len()));
            }
        }
        if edges.len() != 2 * g.nodes[node].len() {
            failures.push(format!("interior node {node} has {} tilts recorded", edges.len()));
        }
        for e in &edges {
            if g.depth[e.to] == depth {
                continue;
            }
            let opposite = match e.direction {
                TiltDirection::Left => TiltDirection::Right,
                TiltDirection::Right => TiltDirection::Left,
            };
            if !g.neighbors(e.to).iter().any(|b| b.to == node && b.direction == opposite) {
                failures.push(format!("edge {node} -> {} has no inverse tilt", e.to));
            }
        }
    }
    Ok(verdict(
        &failures,
        format!("4 neighbours of P⁰; {} hearts to depth {depth}, {perverse} interior perverse nodes with 2L+2R", g.nodes.len()),
    ))
}

fn random_point(rng: &mut ChaCha8Rng, h: &Heart) -> Result<TilePoint, Error> {
    let values = (0..h.len())
        .map(|_| {
            let re = i64::from(rng.next_u32() % 11) - 5;
            let im = i64::from(rng.next_u32() % 5);
            if im == 0 {
                Charge::from_i64(-re.abs().max(1), 0)
            } else {
                Charge::from_i64(re, im)
            }
        })
        .collect();
    TilePoint::new(h.clone(), CentralCharge::new(values))
}

fn exhaustively_semistable(wb: &mut Workbench, p: &TilePoint, x: ObjId) -> Result<bool, Error> {
    let zx = wb.charge_of(p.heart(), p.charge(), x);
    for s in wb.subobjects(p.heart(), x)? {
        let zs = s.sub.iter().fold(Charge::zero(), |acc, &a| acc.add(&wb.charge_of(p.heart(), p.charge(), a)));
        if !s.sub.is_empty() && zs.phase_cmp(&zx) == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every filtration of `x` with semistable factors of strictly decreasing
/// phase, found by trying every subobject as the first step.
pub fn all_filtrations(wb: &mut Workbench, p: &TilePoint, x: ObjId) -> Result<BTreeSet<Vec<ObjId>>, Error> {
    let mut out = BTreeSet::new();
    if wb.cat().is_zero(x) {
        out.insert(Vec::new());
        return Ok(out);
    }
    for s in wb.subobjects(p.heart(), x)? {
        if s.sub.is_empty() {
            continue;
        }
        let sum = wb.cat().direct_sum(&s.sub);
        let a = wb.cat_mut().intern(&sum)?;
        if !exhaustively_semistable(wb, p, a)? {
            continue;
        }
        let za = wb.charge_of(p.heart(), p.charge(), a);
        for tail in all_filtrations(wb, p, s.quotient)? {
            let decreasing = match tail.first() {
                None => true,
                Some(&b) => wb.charge_of(p.heart(), p.charge(), b).phase_cmp(&za) == Ordering::Less,
            };
            if decreasing {
                let mut f = vec![a];
                f.extend(tail);
                out.insert(f);
            }
        }
    }
    Ok(out)
}

/// Direct sums of up to three indecomposables of total length at most three.
fn short_objects(wb: &mut Workbench, h: &Heart) -> Result<Vec<ObjId>, Error> {
    let ind = wb.indecomposables(h)?;
    let lengths: Vec<usize> = ind.iter().map(|&x| wb.length(h, x)).collect();
    let mut picks: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..ind.len() {
        for j in i..ind.len() {
            for k in j..ind.len() {
                for pick in [vec![i], vec![i, j], vec![i, j, k]] {
                    if pick.iter().map(|&t| lengths[t]).sum::<usize>() <= 3 {
                        picks.insert(pick);
                    }
                }
            }
        }
    }
    let mut out = Vec::with_capacity(picks.len());
    for pick in picks {
        let ids: Vec<ObjId> = pick.iter().map(|&t| ind[t]).collect();
        let sum = wb.cat().direct_sum(&ids);
        out.push(wb.cat_mut().intern(&sum)?);
    }
    Ok(out)
}

fn criterion_hn(seed: u64) -> Check {
    let (mut wb, h, _) = p1_setup()?;
    let objects = short_objects(&mut wb, &h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let charges = 20;
    for c in 0..charges {
        let p = random_point(&mut rng, &h)?;
        for &x in &objects {
            let hn = wb.hn(&p, x)?;
            let ids: Vec<ObjId> = hn.factors.iter().map(|f| f.object).collect();
            let oracle = all_filtrations(&mut wb, &p, x)?;
            if oracle.len() != 1 || !oracle.contains(&ids) {
                failures.push(format!("charge {c}, object {x}: hn {ids:?}, exhaustive search {oracle:?}"));
            }
            if hn.factors.windows(2).any(|w| w[1].charge.phase_cmp(&w[0].charge) != Ordering::Less) {
                failures.push(format!("charge {c}, object {x}: phases not strictly decreasing"));
            }
            let class = hn.factors.iter().fold(vec![0; h.len()], |acc, f| acc.iter().zip(&f.class).map(|(a, b)| a + b).collect());
            let charge = hn.factors.iter().fold(Charge::zero(), |acc, f| acc.add(&f.charge));
            if class != wb.class_in(&h, x) || charge != wb.charge_of(&h, p.charge(), x) {
                failures.push(format!("charge {c}, object {x}: classes or charges do not add up"));
            }
            let mut factor_mass = 0.0;
            for f in &hn.factors {
                factor_mass += wb.hn(&p, f.object)?.mass();
            }
            if factor_mass != hn.mass() {
                failures.push(format!("charge {c}, object {x}: mass {} but factors carry {factor_mass}", hn.mass()));
            }
        }
    }
    Ok(verdict(&failures, format!("{} objects × {charges} charges (seed {seed})", objects.len())))
}

/// Class in the basis `(O, O(−1)[1])`: the sink simple, then the source simple.
fn line_class(wb: &Workbench, x: ObjId) -> (i64, i64) {
    let k = wb.cat().k_class(x).0;
    (k[1], k[0])
}

fn kronecker_infinite_type() -> Check {
    let mut wb = Workbench::new(kronecker_algebra())?;
    let h = wb.standard_heart()?;
    let r = wb.enumerate_indecomposables(&h, 8);
    Ok((r == Err(Error::InfiniteTypeSuspected), format!("enumeration with length bound 8 gives {r:?}")))
}

fn kronecker_chain() -> Check {
    let mut wb = Workbench::new(kronecker_algebra())?;
    let mut h = wb.standard_heart()?;
    let mut newest = h.simples()[1];
    let mut seen = Vec::new();
    for _ in 1..=5 {
        let i = h.index_of(newest).expect("newest simple belongs to the heart");
        let next = wb.right_tilt_simple(&h, i)?;
        let shifted = wb.cat_mut().shift(newest, 1);
        newest = *next.simples().iter().find(|&&s| s != shifted).expect("a fresh simple");
        seen.push(line_class(&wb, newest));
        h = next;
    }
    let expected: Vec<(i64, i64)> = (1..=5).map(|d| (d + 1, d)).collect();
    Ok((seen == expected, format!("new simple classes {seen:?}")))
}

fn kronecker_positivity() -> Check {
    let mut wb = Workbench::new(kronecker_algebra())?;
    let h = wb.standard_heart()?;
    let g = wb.explore(&h, 8, false);
    let positive: Vec<usize> = (0..g.nodes.len())
        .filter(|&i| {
            g.nodes[i].simples().iter().all(|&s| {
                let (a, b) = line_class(&wb, s);
                a > 0 && b > 0
            })
        })
        .collect();
    let Some(&first) = positive.first() else {
        return Ok((true, format!("{} hearts, none with both simples positive", g.nodes.len())));
    };
    let classes: Vec<(i64, i64)> = g.nodes[first].simples().iter().map(|&s| line_class(&wb, s)).collect();
    Ok((
        false,
        format!(
            "{} of {} hearts have both simples positive; first at depth {} with classes {classes:?}",
            positive.len(),
            g.nodes.len(),
            g.depth[first]
        ),
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| i64::from(rng.next_u32() % 9) - 4).collect();
    RatMatrix::from_i64(rows, cols, &data)
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.next_u32() as usize % n
}

fn linalg_battery(rng: &mut ChaCha8Rng, failures: &mut Vec<String>) -> Result<(), Error> {
    for t in 0..64 {
        let (r, c) = (1 + below(rng, 5), 1 + below(rng, 5));
        let m = random_matrix(rng, r, c);
        let ker = m.kernel_basis();
        if m.rank() + ker.len() != c || ker.iter().any(|v| m.mul_vec(v).iter().any(|x| *x != q(0))) {
            failures.push(format!("linalg case {t}: rank-nullity or kernel"));
        }
        if m.rank() != m.transpose().rank() {
            failures.push(format!("linalg case {t}: transpose rank"));
        }
        let (a, b) = (random_matrix(rng, 3, 3), random_matrix(rng, 3, 3));
        if a.mul(&b).determinant() != a.determinant() * b.determinant() {
            failures.push(format!("linalg case {t}: determinant"));
        }
        let inverse_ok = match a.inverse() {
            Some(inv) => a.mul(&inv) == RatMatrix::identity(3),
            None => a.determinant() == q(0),
        };
        let x: Vec<Q> = (0..3).map(|_| q(i64::from(rng.next_u32() % 7) - 3)).collect();
        let rhs = a.mul_vec(&x);
        let solved = a.solve(&rhs)?.is_some_and(|y| a.mul_vec(&y) == rhs);
        if !inverse_ok || !solved {
            failures.push(format!("linalg case {t}: inverse or solve"));
        }
    }
    Ok(())
}

fn euler(wb: &mut Workbench, x: ObjId, y: ObjId) -> i64 {
    (-6..=6).map(|k: i32| if k % 2 == 0 { 1 } else { -1 } * wb.cat_mut().hom_dim(x, y, k) as i64).sum()
}

fn category_battery(rng: &mut ChaCha8Rng, failures: &mut Vec<String>) -> Result<(), Error> {
    let (mut wb, h, _) = p1_setup()?;
    let alg = wb.alg().clone();
    let ind = wb.indecomposables(&h)?;
    let mut objs = Vec::new();
    for n in -1..=1 {
        for &x in &ind {
            objs.push(wb.cat_mut().shift(x, n));
        }
    }
    let s = h.simples().to_vec();
    let form: Vec<Vec<i64>> = s.iter().map(|&a| s.iter().map(|&b| euler(&mut wb, a, b)).collect()).collect();
    for t in 0..32 {
        let (x, y) = (objs[below(rng, objs.len())], objs[below(rng, objs.len())]);
        let hs = HomSpace::new(&alg, wb.cat().object(x), wb.cat().object(y));
        let coeffs: Vec<Q> = (0..hs.dim()).map(|_| q(i64::from(rng.next_u32() % 5) - 2)).collect();
        let cone = hs.combine(&alg, &coeffs).cone(&alg);
        let cone = wb.cat_mut().intern(&cone)?;
        if wb.cat().k_class(cone) != wb.cat().k_class(y).sub(&wb.cat().k_class(x)) {
            failures.push(format!("triangle case {t}: cone class"));
        }
        let (cx, cy) = (wb.class_in(&h, x), wb.class_in(&h, y));
        let expected: i64 = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).map(|(a, b)| cx[a] * form[a][b] * cy[b]).sum();
        if euler(&mut wb, x, y) != expected {
            failures.push(format!("triangle case {t}: Euler form"));
        }
        let mut cur = h.clone();
        for _ in 0..below(rng, 4) {
            let k = below(rng, 2);
            cur = if rng.next_u32().is_multiple_of(2) { wb.left_tilt_simple(&cur, k)? } else { wb.right_tilt_simple(&cur, k)? };
        }
        let g = wb.gluing_matrix(&cur, below(rng, 2))?;
        let m = g.matrix();
        if g.determinant() != -1 || m[0][0] != 1 || m[1][0] != 0 || m[1][1] != -1 || m[0][1] > 0 {
            failures.push(format!("gluing case {t}: matrix {m:?}"));
        }
    }
    Ok(())
}

fn criterion_properties(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    linalg_battery(&mut rng, &mut failures)?;
    category_battery(&mut rng, &mut failures)?;
    Ok(verdict(&failures, format!("64 linear-algebra and 32 triangulated cases (seed {seed})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_are_schema_errors() {
        assert!(matches!(Suite::parse("nope"), Err(CliError::Schema(_))));
        assert_eq!(Suite::parse("core").unwrap(), Suite::Core);
    }

    #[test]
    fn core_suite_passes() {
        let r = run(Suite::Core, DEFAULT_SEED);
        assert!(r.passed(), "{r}");
    }
}
