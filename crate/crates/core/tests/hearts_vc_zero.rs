use std::collections::BTreeSet;

use tiltstab_core::hearts::{Heart, Membership, TorsionTheory, Workbench};
use tiltstab_core::homotopy::ObjId;
use tiltstab_core::quiver::{kronecker_algebra, vc_zero_algebra, Representation};
use tiltstab_core::linalg::RatMatrix;
use tiltstab_core::Error;

/// Standard heart of the vc=0 algebra with its simples named:
/// `cx` is the simple at vertex 2, `cX1` the spherical simple at vertex 1.
fn setup() -> (Workbench, Heart, ObjId, ObjId) {
    let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
    let h = wb.standard_heart().unwrap();
    let (c_big, c_x) = (h.simples()[0], h.simples()[1]);
    (wb, h, c_x, c_big)
}

/// The (1,1) module with `v` acting nontrivially: top at vertex 2.
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

fn j_shriek(wb: &mut Workbench) -> ObjId {
    let alg = vc_zero_algebra();
    wb.cat_mut().module(&Representation::projective(&alg, 0).unwrap()).unwrap()
}

#[test]
fn extension_object_lies_in_the_heart() {
    let (mut wb, h, _, _) = setup();
    let p1 = j_shriek(&mut wb);
    assert!(wb.is_member(p1, &h, Membership::Heart));
    assert_eq!(wb.class_in(&h, p1), vec![1, 1]);
}

#[test]
fn j_shriek_has_exactly_one_proper_subobject() {
    let (mut wb, h, c_x, _) = setup();
    let p1 = j_shriek(&mut wb);
    let subs = wb.subobjects(&h, p1).unwrap();
    let proper: Vec<_> = subs.iter().filter(|s| !s.sub.is_empty() && !wb.cat().is_zero(s.quotient)).collect();
    assert_eq!(proper.len(), 1);
    assert_eq!(proper[0].sub, vec![c_x]);
}

#[test]
fn left_tilt_at_cx() {
    let (mut wb, h, c_x, _) = setup();
    let i = h.index_of(c_x).unwrap();
    let l = wb.left_tilt_simple(&h, i).unwrap();
    let expected = {
        let a = wb.cat_mut().shift(c_x, -1);
        let b = j_star(&mut wb);
        wb.heart(vec![b, a]).unwrap()
    };
    assert_eq!(l, expected);
    let j = l.index_of(wb.cat_mut().shift(c_x, -1)).unwrap();
    assert_eq!(wb.right_tilt_simple(&l, j).unwrap(), h);
}

#[test]
fn left_tilt_classes_are_nonnegative_extensions() {
    let (mut wb, h, _, _) = setup();
    for i in 0..2 {
        let l = wb.left_tilt_simple(&h, i).unwrap();
        let s = h.simples()[i];
        for (k, &a) in h.simples().iter().enumerate() {
            if k == i {
                continue;
            }
            let b = l.simples()[k];
            let diff = wb.cat().k_class(b).sub(&wb.cat().k_class(a));
            let sc = wb.cat().k_class(s);
            let r = (0..2).find_map(|t| (sc.0[t] != 0).then(|| diff.0[t] / sc.0[t])).unwrap();
            assert!(r >= 0);
            assert_eq!(diff, sc.scale(r));
        }
        let det = wb.class_matrix(&l).determinant();
        assert!(det == tiltstab_core::linalg::q(1) || det == tiltstab_core::linalg::q(-1));
    }
}

#[test]
fn twist_by_spherical_simple_is_a_left_tilt() {
    let (mut wb, h, c_x, c_big) = setup();
    let t = wb.twist_heart(c_big, &h).unwrap();
    let l = wb.left_tilt_simple(&h, h.index_of(c_big).unwrap()).unwrap();
    assert_eq!(t, l);
    assert!(matches!(wb.twist_heart(c_x, &h), Err(Error::NotSpherical(_))));
}

#[test]
fn twist_preserves_hom_dimensions() {
    let (mut wb, h, _, c_big) = setup();
    let ind = wb.indecomposables(&h).unwrap();
    let tw: Vec<ObjId> = ind.iter().map(|&x| wb.twist(c_big, x).unwrap()).collect();
    for (a, &x) in ind.iter().enumerate() {
        for (b, &y) in ind.iter().enumerate() {
            for k in -2..=3 {
                assert_eq!(wb.cat_mut().hom_dim(x, y, k), wb.cat_mut().hom_dim(tw[a], tw[b], k), "k = {k}");
            }
        }
    }
}

#[test]
fn twist_commutes_with_tilts() {
    let (mut wb, h, _, c_big) = setup();
    let th = wb.twist_heart(c_big, &h).unwrap();
    for i in 0..2 {
        let lhs = {
            let l = wb.left_tilt_simple(&h, i).unwrap();
            wb.twist_heart(c_big, &l).unwrap()
        };
        let ta = wb.twist(c_big, h.simples()[i]).unwrap();
        let rhs = wb.left_tilt_simple(&th, th.index_of(ta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

/// Independent oracle: subsets of indecomposables closed under quotients
/// and extensions, checked directly.
fn oracle_torsion_sets(wb: &mut Workbench, h: &Heart) -> BTreeSet<BTreeSet<ObjId>> {
    let ind = wb.indecomposables(h).unwrap();
    let n = ind.len();
    let mut quotients: Vec<Vec<Vec<ObjId>>> = Vec::new();
    for &x in &ind {
        let subs = wb.subobjects(h, x).unwrap();
        let mut qs = Vec::new();
        for s in subs {
            let qx = wb.cat().object(s.quotient).clone();
            qs.push(wb.cat_mut().decompose(&qx).unwrap());
        }
        quotients.push(qs);
    }
    let mut ext: Vec<Vec<Vec<Vec<ObjId>>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (mids, _) = wb.extensions(ind[j], ind[i]).unwrap();
            for m in mids {
                ext[i][j].push(wb.cat_mut().decompose(&m).unwrap());
            }
        }
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<ObjId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ind[i]).collect();
        let in_set = |parts: &Vec<ObjId>| parts.iter().all(|p| set.contains(p));
        let quot_ok = (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| quotients[i].iter().all(in_set));
        let ext_ok = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| (0..n).filter(|&j| mask >> j & 1 == 1).all(|j| ext[i][j].iter().all(in_set)));
        if quot_ok && ext_ok {
            out.insert(set);
        }
    }
    out
}

#[test]
fn torsion_theories_match_subset_oracle() {
    let (mut wb, h, _, _) = setup();
    let tts = wb.torsion_theories(&h).unwrap();
    let ours: BTreeSet<BTreeSet<ObjId>> = tts.iter().map(|t| t.torsion.clone()).collect();
    let oracle = oracle_torsion_sets(&mut wb, &h);
    assert_eq!(ours, oracle);
    let all: BTreeSet<ObjId> = wb.indecomposables(&h).unwrap().into_iter().collect();
    assert!(ours.contains(&BTreeSet::new()));
    assert!(ours.contains(&all));
    for tt in &tts {
        assert!(wb.splits_every_object(tt).unwrap());
    }
}

#[test]
fn factorization_round_trips() {
    let (mut wb, h, c_x, _) = setup();
    let tts: Vec<TorsionTheory> = wb.torsion_theories(&h).unwrap();
    for tt in &tts {
        let b = wb.tilt_at_torsion(&h, &tt.torsion).unwrap();
        for &s in b.simples() {
            assert!(wb.is_member(s, &h, Membership::Interval01));
            let in_free = wb.is_member(s, &h, Membership::Heart)
                && tt.torsion.iter().all(|&t| wb.cat_mut().hom_dim(t, s, 0) == 0);
            let up = wb.cat_mut().shift(s, 1);
            assert!(in_free || tt.torsion.contains(&up));
        }
        assert_eq!(wb.recover_torsion(&h, &b).unwrap().torsion, tt.torsion);
    }
    let all: BTreeSet<ObjId> = wb.indecomposables(&h).unwrap().into_iter().collect();
    let bottom = wb.tilt_at_torsion(&h, &all).unwrap();
    assert_eq!(bottom, wb.shift_heart(&h, -1));
    assert_eq!(wb.tilt_at_torsion(&h, &BTreeSet::new()).unwrap(), h);
    let single = BTreeSet::from([c_x]);
    let l = wb.left_tilt_simple(&h, h.index_of(c_x).unwrap()).unwrap();
    assert_eq!(wb.tilt_at_torsion(&h, &single).unwrap(), l);
    assert_eq!(wb.recover_torsion(&h, &l).unwrap().torsion, single);
    assert!(wb.recover_torsion(&h, &h).unwrap().torsion.is_empty());
}

#[test]
fn invalid_torsion_set_gets_stuck() {
    let (mut wb, h, _, _) = setup();
    let p1 = j_shriek(&mut wb);
    assert_eq!(wb.tilt_at_torsion(&h, &BTreeSet::from([p1])), Err(Error::FactorizationStuck));
}

#[test]
fn kronecker_is_infinite_type() {
    let mut wb = Workbench::new(kronecker_algebra()).unwrap();
    let h = wb.standard_heart().unwrap();
    assert_eq!(wb.enumerate_indecomposables(&h, 8), Err(Error::InfiniteTypeSuspected));
}

#[test]
fn inverse_twist_undoes_the_twist() {
    let (mut wb, h, _, c_big) = setup();
    let t = wb.twist_heart(c_big, &h).unwrap();
    assert_eq!(wb.twist_inverse_heart(c_big, &t).unwrap(), h);
    // again in a workbench that never computed the forward twist
    let mut fresh = Workbench::new(vc_zero_algebra()).unwrap();
    let h2 = fresh.standard_heart().unwrap();
    let s2 = fresh.cat_mut().intern(wb.cat().object(c_big)).unwrap();
    let simples = t.simples().iter().map(|&a| fresh.cat_mut().intern(wb.cat().object(a)).unwrap()).collect();
    let t2 = fresh.heart(simples).unwrap();
    assert_eq!(fresh.twist_inverse_heart(s2, &t2).unwrap(), h2);
}
