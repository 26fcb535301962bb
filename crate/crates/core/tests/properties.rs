use proptest::prelude::*;
use tiltstab_core::hearts::{Heart, Workbench};
use tiltstab_core::homotopy::{HomSpace, ObjId};
use tiltstab_core::linalg::{q, RatMatrix, Q};
use tiltstab_core::quiver::vc_zero_algebra;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| RatMatrix::from_i64(rows, cols, &v))
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=5, 1usize..=5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in dims().prop_flat_map(|(r, c)| matrix(r, c))) {
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Q::from_integer(0.into())));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in dims().prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn inverse_exists_iff_determinant_is_nonzero(a in matrix(3, 3)) {
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.mul(&inv), RatMatrix::identity(3)),
            None => prop_assert_eq!(a.determinant(), q(0)),
        }
    }

    #[test]
    fn solve_returns_preimages(a in matrix(3, 4), x in proptest::collection::vec(-3i64..=3, 4)) {
        let x: Vec<Q> = x.into_iter().map(q).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y), b);
    }
}

/// The five indecomposables of the perverse heart together with their
/// shifts by −1, 0, 1.
fn objects() -> (Workbench, Heart, Vec<ObjId>) {
    let mut wb = Workbench::new(vc_zero_algebra()).unwrap();
    let h = wb.standard_heart().unwrap();
    let ind = wb.indecomposables(&h).unwrap();
    let mut out = Vec::new();
    for n in -1..=1 {
        for &x in &ind {
            out.push(wb.cat_mut().shift(x, n));
        }
    }
    (wb, h, out)
}

fn euler(wb: &mut Workbench, x: ObjId, y: ObjId) -> i64 {
    (-6..=6).map(|k| if k % 2 == 0 { 1 } else { -1 } * wb.cat_mut().hom_dim(x, y, k) as i64).sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn cone_classes_are_differences(i in 0usize..15, j in 0usize..15, coeffs in proptest::collection::vec(-2i64..=2, 4)) {
        let (mut wb, _, objs) = objects();
        let (x, y) = (objs[i], objs[j]);
        let alg = vc_zero_algebra();
        let hs = HomSpace::new(&alg, wb.cat().object(x), wb.cat().object(y));
        let c: Vec<Q> = coeffs.iter().take(hs.dim()).map(|&v| q(v)).chain(std::iter::repeat(q(0))).take(hs.dim()).collect();
        let f = hs.combine(&alg, &c);
        let cone = wb.cat_mut().intern(&f.cone(&alg)).unwrap();
        let expected = wb.cat().k_class(y).sub(&wb.cat().k_class(x));
        prop_assert_eq!(wb.cat().k_class(cone), expected);
    }

    #[test]
    fn euler_form_is_bilinear_in_classes(i in 0usize..15, j in 0usize..15) {
        let (mut wb, h, objs) = objects();
        let s = h.simples().to_vec();
        let e: Vec<Vec<i64>> = s.iter().map(|&a| s.iter().map(|&b| euler(&mut wb, a, b)).collect()).collect();
        let (x, y) = (objs[i], objs[j]);
        let (cx, cy) = (wb.class_in(&h, x), wb.class_in(&h, y));
        let mut form = 0;
        for a in 0..2 {
            for b in 0..2 {
                form += cx[a] * e[a][b] * cy[b];
            }
        }
        prop_assert_eq!(euler(&mut wb, x, y), form);
    }

    #[test]
    fn shifts_are_adjoint(i in 0usize..15, j in 0usize..15, a in -2i32..=2, b in -2i32..=2, k in -3i32..=3) {
        let (mut wb, _, objs) = objects();
        let (x, y) = (objs[i], objs[j]);
        let xa = wb.cat_mut().shift(x, a);
        let yb = wb.cat_mut().shift(y, b);
        prop_assert_eq!(wb.cat_mut().hom_dim(xa, yb, k), wb.cat_mut().hom_dim(x, y, k + b - a));
    }

    #[test]
    fn direct_sums_decompose_into_their_summands(picks in proptest::collection::vec(0usize..15, 1..4)) {
        let (mut wb, _, objs) = objects();
        let ids: Vec<ObjId> = picks.iter().map(|&p| objs[p]).collect();
        let sum = wb.cat().direct_sum(&ids);
        let mut parts = wb.cat_mut().decompose(&sum).unwrap();
        let mut expected = ids.clone();
        parts.sort();
        expected.sort();
        prop_assert_eq!(parts, expected);
    }

    #[test]
    fn gluing_matrices_have_block_form(path in proptest::collection::vec((0usize..2, any::<bool>()), 0..4), i in 0usize..2) {
        let (mut wb, h, _) = objects();
        let mut cur = h;
        for (k, left) in path {
            cur = if left { wb.left_tilt_simple(&cur, k).unwrap() } else { wb.right_tilt_simple(&cur, k).unwrap() };
        }
        let g = wb.gluing_matrix(&cur, i).unwrap();
        let m = g.matrix();
        prop_assert_eq!(g.determinant(), -1);
        prop_assert_eq!(m[0][0], 1);
        prop_assert_eq!(m[1][0], 0);
        prop_assert_eq!(m[1][1], -1);
        prop_assert!(m[0][1] <= 0);
        // rows of the basis change are the tilted simples' classes
        let l = wb.left_tilt_simple(&cur, i).unwrap();
        let bc = g.basis_change();
        for (row, &j) in bc.iter().zip(&g.order) {
            let c = wb.class_in(&cur, l.simples()[j]);
            let permuted: Vec<i64> = g.order.iter().map(|&o| c[o]).collect();
            prop_assert_eq!(row, &permuted);
        }
    }
}
