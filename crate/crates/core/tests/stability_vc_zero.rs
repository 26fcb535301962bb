use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use tiltstab_core::hearts::{Heart, Workbench};
use tiltstab_core::homotopy::ObjId;
use tiltstab_core::linalg::RatMatrix;
use tiltstab_core::quiver::{vc_zero_algebra, Representation};
use tiltstab_core::stability::{CentralCharge, Charge, NodeStatus, TiltDirection, TilePoint};

fn setup() -> (Workbench, Heart) {
    let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
    let h = wb.standard_heart().unwrap();
    (wb, h)
}

fn j_star(wb: &mut Workbench) -> ObjId {
    let alg = vc_zero_algebra();
    let m = Representation::new(
        &alg,
        vec![1, 1],
        vec![RatMatrix::from_i64(1, 1, &[0]), RatMatrix::from_i64(1, 1, &[1])],
    )
    .unwrap();
    wb.cat_mut().module(&m).unwrap()
}

#[test]
fn irreducible_maps_form_the_auslander_reiten_pattern() {
    let (mut wb, h) = setup();
    let (c_big, c_x) = (h.simples()[0], h.simples()[1]);
    let p1 = wb.cat_mut().projective(0).unwrap();
    let p2 = wb.cat_mut().projective(1).unwrap();
    let m = j_star(&mut wb);
    let got: BTreeSet<(ObjId, ObjId, usize)> = wb.irreducible_maps(&h).unwrap().into_iter().collect();
    let expected: BTreeSet<(ObjId, ObjId, usize)> =
        [(c_x, p1, 1), (p1, p2, 1), (p2, m, 1), (m, c_x, 1), (c_big, m, 1), (p1, c_big, 1)].into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn depth_one_has_four_distinct_neighbours() {
    let (mut wb, h) = setup();
    let g = wb.explore(&h, 1, false);
    assert_eq!(g.nodes.len(), 5);
    let left = g.neighbors(0).iter().filter(|e| e.direction == TiltDirection::Left).count();
    assert_eq!(left, 2);
}

#[test]
fn depth_four_hearts_have_the_three_known_types() {
    let (mut wb, h) = setup();
    let g = wb.explore(&h, 4, true);
    for (i, st) in g.status.iter().enumerate() {
        match st {
            NodeStatus::Finite(n) => assert!([2, 3, 5].contains(n), "node {i} has {n} indecomposables"),
            other => panic!("node {i}: {other:?}"),
        }
    }
    for e in &g.edges {
        assert_eq!(e.gluing.determinant(), -1);
        if e.direction == TiltDirection::Left {
            let b = g.nodes[e.to].clone();
            let s = wb.cat_mut().shift(g.nodes[e.from].simples()[e.simple], -1);
            let back = wb.right_tilt_simple(&b, b.index_of(s).unwrap()).unwrap();
            assert_eq!(back, g.nodes[e.from]);
        }
    }
}

#[test]
fn wall_diagram_regions_match_torsion_theories() {
    let (mut wb, h) = setup();
    let d = wb.wall_diagram(&h).unwrap();
    let tts = wb.torsion_theories(&h).unwrap();
    assert_eq!(d.regions.len(), tts.len());
    let labels: BTreeSet<Heart> = d.regions.iter().map(|r| r.heart.clone()).collect();
    assert_eq!(labels.len(), d.regions.len());
    // a region's limit heart is R_F H = (L_T H)[1] for the torsion pair (T, F)
    let stratum: BTreeSet<Heart> =
        wb.hearts_at_stratum(&h, &[0, 1]).unwrap().iter().map(|b| wb.shift_heart(b, 1)).collect();
    assert_eq!(labels, stratum);
    let n = d.regions.len();
    for k in 0..n {
        let a = d.regions[k].heart.clone();
        let b = d.regions[(k + 1) % n].heart.clone();
        let mut adjacent = false;
        for i in 0..2 {
            adjacent |= wb.right_tilt_simple(&a, i).unwrap() == b;
            adjacent |= wb.right_tilt_simple(&b, i).unwrap() == a;
        }
        assert!(adjacent, "regions {k} and {} are not related by a simple tilt", (k + 1) % n);
    }
}

#[test]
fn stratum_of_one_simple_contains_its_left_tilt() {
    let (mut wb, h) = setup();
    for i in 0..2 {
        let hs = wb.hearts_at_stratum(&h, &[i]).unwrap();
        let l = wb.left_tilt_simple(&h, i).unwrap();
        assert!(hs.contains(&h) && hs.contains(&l));
    }
    assert_eq!(wb.hearts_at_stratum(&h, &[]).unwrap(), vec![h]);
}

fn random_point(rng: &mut ChaCha8Rng, h: &Heart) -> TilePoint {
    let values = (0..h.len())
        .map(|_| {
            let re = (rng.next_u32() % 11) as i64 - 5;
            let im = (rng.next_u32() % 5) as i64;
            if im == 0 {
                Charge::from_i64(-re.abs().max(1), 0)
            } else {
                Charge::from_i64(re, im)
            }
        })
        .collect();
    TilePoint::new(h.clone(), CentralCharge::new(values)).unwrap()
}

/// Every filtration with semistable factors of strictly decreasing phase,
/// found by trying every subobject at every step.
fn all_filtrations(wb: &mut Workbench, p: &TilePoint, x: ObjId) -> BTreeSet<Vec<ObjId>> {
    let mut out = BTreeSet::new();
    if wb.cat().is_zero(x) {
        out.insert(Vec::new());
        return out;
    }
    for s in wb.subobjects(p.heart(), x).unwrap() {
        if s.sub.is_empty() {
            continue;
        }
        let sum = wb.cat().direct_sum(&s.sub);
        let a = wb.cat_mut().intern(&sum).unwrap();
        if !exhaustively_semistable(wb, p, a) {
            continue;
        }
        let za = wb.charge_of(p.heart(), p.charge(), a);
        for tail in all_filtrations(wb, p, s.quotient) {
            let ok = match tail.first() {
                None => true,
                Some(&b) => wb.charge_of(p.heart(), p.charge(), b).phase_cmp(&za) == Ordering::Less,
            };
            if ok {
                let mut f = vec![a];
                f.extend(tail);
                out.insert(f);
            }
        }
    }
    out
}

fn exhaustively_semistable(wb: &mut Workbench, p: &TilePoint, x: ObjId) -> bool {
    let zx = wb.charge_of(p.heart(), p.charge(), x);
    wb.subobjects(p.heart(), x).unwrap().iter().all(|s| {
        if s.sub.is_empty() {
            return true;
        }
        let zs = s.sub.iter().fold(Charge::zero(), |acc, &a| acc.add(&wb.charge_of(p.heart(), p.charge(), a)));
        zs.phase_cmp(&zx) != Ordering::Greater
    })
}

#[test]
fn hn_filtrations_match_exhaustive_search() {
    let (mut wb, h) = setup();
    let ind = wb.indecomposables(&h).unwrap();
    let mut objects = Vec::new();
    for i in 0..ind.len() {
        for j in i..ind.len() {
            let pair = [ind[i], ind[j]];
            if pair.iter().map(|&a| wb.length(&h, a)).sum::<usize>() <= 3 {
                let s = wb.cat().direct_sum(&pair);
                objects.push(wb.cat_mut().intern(&s).unwrap());
            }
        }
    }
    objects.extend(ind.iter().copied());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let p = random_point(&mut rng, &h);
        for &x in &objects {
            let hn = wb.hn(&p, x).unwrap();
            let ids: Vec<ObjId> = hn.factors.iter().map(|f| f.object).collect();
            let oracle = all_filtrations(&mut wb, &p, x);
            assert_eq!(oracle.len(), 1, "filtrations of {x} at {p:?}: {oracle:?}");
            assert!(oracle.contains(&ids));
            let total = hn.factors.iter().fold(Charge::zero(), |acc, f| acc.add(&f.charge));
            assert_eq!(total, wb.charge_of(&h, p.charge(), x));
        }
    }
}
