use tiltstab_core::hearts::Workbench;
use tiltstab_core::homotopy::ObjId;
use tiltstab_core::quiver::kronecker_algebra;

/// Class in the basis `(O, O(−1)[1])`: the sink simple, then the source simple.
fn line_class(wb: &Workbench, x: ObjId) -> (i64, i64) {
    let k = wb.cat().k_class(x).0;
    (k[1], k[0])
}

#[test]
fn right_tilts_walk_through_line_bundles() {
    let mut wb = Workbench::new(kronecker_algebra()).unwrap();
    let mut h = wb.standard_heart().unwrap();
    let mut newest = h.simples()[1];
    for d in 1..=5i64 {
        let i = h.index_of(newest).unwrap();
        let next = wb.right_tilt_simple(&h, i).unwrap();
        let shifted = wb.cat_mut().shift(newest, 1);
        let fresh = *next.simples().iter().find(|&&s| s != shifted).unwrap();
        assert_eq!(line_class(&wb, fresh), (d + 1, d), "step {d}");
        h = next;
        newest = fresh;
    }
}

#[test]
fn two_positive_simples_appear_at_depth_three() {
    let mut wb = Workbench::new(kronecker_algebra()).unwrap();
    let h = wb.standard_heart().unwrap();
    let g = wb.explore(&h, 3, false);
    assert!(g.status.iter().all(|s| !matches!(s, tiltstab_core::stability::NodeStatus::Failed(_))));
    let positive: Vec<usize> = (0..g.nodes.len())
        .filter(|&i| {
            g.nodes[i].simples().iter().all(|&s| {
                let c = line_class(&wb, s);
                c.0 > 0 && c.1 > 0
            })
        })
        .collect();
    assert!(!positive.is_empty());
    // such hearts are semisimple with a two-dimensional Ext² between the simples
    let node = &g.nodes[positive[0]];
    let (a, b) = (node.simples()[0], node.simples()[1]);
    let ext: Vec<usize> = (-3..=3).map(|k| wb.cat_mut().hom_dim(a, b, k) + wb.cat_mut().hom_dim(b, a, k)).collect();
    assert_eq!(ext.iter().sum::<usize>(), 2);
    assert_eq!(ext[5], 2);
}
