//! Values worked out by hand or from classical formulas, frozen.

use std::collections::BTreeMap;

use superz::centralizer::{centralizer_oracle, dim_formula};
use superz::centre::{centre_oracle, fixed_under_group};
use superz::diagrams::{build_g0_and_e0, core_data, diagram, NodeKind};
use superz::exactlin::q;
use superz::nilpotent::Realization;
use superz::partitions::{Kind, Partition};
use superz::pyramids::{build_osp, build_sl, BoxLabel};

fn sl(s: &str) -> Partition {
    Partition::parse(s, Kind::Sl).unwrap()
}

fn osp(s: &str) -> Partition {
    Partition::parse(s, Kind::Osp).unwrap()
}

fn counts(v: &[(i32, usize, usize)]) -> BTreeMap<i32, (usize, usize)> {
    v.iter().map(|&(c, r, s)| (c, (r, s))).collect()
}

#[test]
fn sl_pyramid_columns() {
    let py = build_sl(&sl("5,1|3"));
    assert_eq!(py.column_counts(), counts(&[(-4, 1, 0), (-2, 1, 1), (0, 2, 1), (2, 1, 1), (4, 1, 0)]));
    let boxes = py.ordered();
    assert_eq!((boxes[0].row, boxes[0].col), (1, -4));
    assert_eq!(boxes[8].col, 4);
    assert_eq!(boxes[8].label, BoxLabel::Num(9));

    let py = build_sl(&sl("1|1"));
    let boxes = py.ordered();
    assert_eq!(boxes.iter().map(|b| (b.row, b.col)).collect::<Vec<_>>(), [(2, 0), (1, 0)]);

    let py = build_sl(&sl("3,2|2,1"));
    assert_eq!(py.column_counts(), counts(&[(-2, 1, 0), (-1, 1, 1), (0, 1, 1), (1, 1, 1), (2, 1, 0)]));
}

#[test]
fn osp_pyramid_columns() {
    let py = build_osp(&osp("2,2|1,1")).unwrap();
    assert_eq!(py.column_counts(), counts(&[(-1, 2, 0), (0, 0, 2), (1, 2, 0)]));
    assert_eq!(build_osp(&osp("5,3,1|3,3")).unwrap().ordered().len(), 15);
}

#[test]
fn e_for_five_one_three() {
    let r = Realization::new(&sl("5,1|3"), false);
    let hops = [(1, 3), (3, 6), (6, 8), (8, 9), (2, 5), (5, 7)];
    for i in 1..=9 {
        for j in 1..=9 {
            let want = if hops.contains(&(i, j)) { q(1) } else { q(0) };
            assert_eq!(*r.e.get(i - 1, j - 1), want, "e[{i},{j}]");
        }
    }
}

#[test]
fn labelled_diagrams() {
    let d = diagram(&sl("5,1|3")).unwrap();
    assert_eq!(d.labels(), [2, 0, 2, 0, 0, 2, 0, 2]);
    let grey: Vec<bool> = d.nodes.iter().map(|n| n.kind == NodeKind::Grey).collect();
    assert_eq!(grey, [true, true, false, true, true, true, true, false]);

    assert!(diagram(&sl("3,2|2,1")).unwrap().labels().contains(&1));
    assert_eq!(diagram(&osp("3,3|4")).unwrap().labels(), [1, 0, 1, 1, 1]);
    assert_eq!(diagram(&sl("4|")).unwrap().labels(), [2, 2, 2]);
}

#[test]
fn core_of_five_three_one() {
    let part = osp("5,3,1|3,3");
    let r = Realization::new(&part, false);
    let d = diagram(&part).unwrap();
    let cd = core_data(&d, &r.pyramid);
    assert_eq!((cd.n2, cd.label_sum), (2, 4));
    let g0 = build_g0_and_e0(&cd, &r.pyramid);
    assert_eq!(g0.middle().unwrap().partition, osp("1,1,1|1,1"));
}

#[test]
fn centralizer_dimensions() {
    // sum of min(λ_i, λ_j) minus one for sl; so + sp + odd part for osp
    let table = [
        (sl("5,1|3"), 18),
        (sl("1|1"), 3),
        (sl("2|1"), 4),
        (sl("3,2|2,1"), 25),
        (osp("3|2"), 4),
        (osp("1|2"), 2),
        (osp("5,3,1|3,3"), 29),
        (osp("2,2|1,1"), 11),
    ];
    for (part, want) in table {
        let r = Realization::new(&part, false);
        assert_eq!(centralizer_oracle(&r.algebra, &r.e).dim(), want, "{part}");
        assert_eq!(dim_formula(&part), want, "{part}");
    }
}

#[test]
fn centre_and_fixed_dimensions() {
    // (partition, dim z(g^e), dim of the fixed part)
    let table = [(osp("3|2"), 2, 1), (osp("1|2"), 1, 1), (osp("5,3,1|3,3"), 2, 2), (osp("3,1|"), 2, 1)];
    for (part, z, f) in table {
        let r = Realization::new(&part, true);
        let c = centre_oracle(&centralizer_oracle(&r.algebra, &r.e));
        assert_eq!(c.dim(), z, "{part}");
        assert_eq!(fixed_under_group(&part, &c.span, false).unwrap().dim(), f, "{part}");
    }
    let r = Realization::new(&sl("2|2"), false);
    assert_eq!(centre_oracle(&centralizer_oracle(&r.algebra, &r.e)).dim(), 2);
}
