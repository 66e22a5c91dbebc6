use proptest::prelude::*;
use proptest::sample::select;

use superz::centralizer::centralizer_oracle;
use superz::centre::centre_oracle;
use superz::diagrams::diagram;
use superz::exactlin::{nullspace, q, RationalMatrix, Subspace};
use superz::nilpotent::{jordan_type, Realization};
use superz::partitions::{enumerate_osp, enumerate_sl, Kind, Parity, Part, Partition};
use superz::pyramids::{build_osp, build_sl};

fn sl_parts() -> impl Strategy<Value = Partition> {
    select(enumerate_sl(7))
}

fn osp_parts() -> impl Strategy<Value = Partition> {
    select(enumerate_osp(9))
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn sorted(mut v: Vec<Part>) -> Vec<Part> {
    v.sort_by(|a, b| b.size.cmp(&a.size).then(a.parity.cmp(&b.parity)));
    v
}

fn min_sum(a: &[u32], b: &[u32]) -> usize {
    a.iter().map(|&x| b.iter().map(|&y| x.min(y) as usize).sum::<usize>()).sum()
}

/// Sum of squared column lengths of the Young diagram.
fn conj_sq(p: &[u32]) -> usize {
    let top = p.iter().copied().max().unwrap_or(0);
    (1..=top).map(|k| p.iter().filter(|&&x| x >= k).count().pow(2)).sum()
}

/// `dim g^e` from the classical formulas for the even part plus `V_0 ⊗ V_1`
/// for the odd part.
fn classical_dim(part: &Partition) -> usize {
    match part.kind() {
        Kind::Sl => {
            let all: Vec<u32> = part.p().iter().chain(part.q()).copied().collect();
            min_sum(&all, &all) - 1
        }
        Kind::Osp => {
            let odd = |v: &[u32]| v.iter().filter(|&&x| x % 2 == 1).count();
            let so = (conj_sq(part.p()) - odd(part.p())) / 2;
            let sp = (conj_sq(part.q()) + odd(part.q())) / 2;
            so + sp + min_sum(part.p(), part.q())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nullspace_is_annihilated(rows in small_matrix()) {
        let m = RationalMatrix::from_i64(&rows);
        let ns = nullspace(&m);
        for v in ns.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == q(0)));
        }
        prop_assert_eq!(m.rank() + ns.dim(), m.cols());
    }

    #[test]
    fn echelon_form_is_canonical(rows in small_matrix(), k in 1i64..4, i in 0usize..5, j in 0usize..5) {
        let m = RationalMatrix::from_i64(&rows);
        let vecs: Vec<Vec<_>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut mixed = vecs.clone();
        let (i, j) = (i % vecs.len(), j % vecs.len());
        if i != j {
            mixed[i] = mixed[i].iter().zip(&vecs[j]).map(|(a, b)| a + b * q(k)).collect();
        }
        mixed.reverse();
        prop_assert_eq!(Subspace::from_vectors(m.cols(), vecs), Subspace::from_vectors(m.cols(), mixed));
    }

    #[test]
    fn partition_views_agree(part in prop_oneof![sl_parts(), osp_parts()]) {
        prop_assert_eq!(Partition::parse(&part.to_text(), part.kind()).unwrap(), part.clone());
        let base = sorted(part.parts());
        prop_assert_eq!(sorted(part.interleave().parts.clone()), base.clone());
        prop_assert_eq!(sorted(part.multiplicity().parts()), base.clone());
        if part.kind() == Kind::Osp {
            prop_assert_eq!(sorted(part.group().unwrap().parts()), base);
        }
    }

    #[test]
    fn sl_pyramid_shape(part in sl_parts()) {
        let py = build_sl(&part);
        let boxes = py.ordered();
        prop_assert_eq!(boxes.len(), part.m() + part.odd_dim());
        prop_assert_eq!(boxes.iter().filter(|b| b.parity == Parity::Even).count(), part.m());
        for w in boxes.windows(2) {
            prop_assert!((0..=2).contains(&(w[1].col - w[0].col)));
        }
    }

    #[test]
    fn osp_pyramid_is_centrally_symmetric(part in osp_parts()) {
        let py = build_osp(&part).unwrap();
        let boxes = py.ordered();
        prop_assert_eq!(boxes.len(), part.total());
        for b in &boxes {
            let mirror = py.box_at(-b.row, -b.col);
            prop_assert!(mirror.is_some_and(|m| m.parity == b.parity && !m.crossed), "{:?}", b);
        }
    }

    #[test]
    fn e_has_the_right_jordan_type(part in prop_oneof![sl_parts(), osp_parts()]) {
        let alts: &[bool] = if part.kind() == Kind::Osp { &[false, true] } else { &[false] };
        for &alt in alts {
            let r = Realization::new(&part, alt);
            prop_assert_eq!(jordan_type(&r.e, Parity::Even), part.p().to_vec());
            prop_assert_eq!(jordan_type(&r.e, Parity::Odd), part.q().to_vec());
            let top = part.largest();
            prop_assert!(r.e.pow(top).is_zero());
            prop_assert!(!r.e.pow(top - 1).is_zero());
            prop_assert!(r.algebra.contains(&r.e));
        }
    }

    #[test]
    fn centralizer_dim_matches_classical_count(part in prop_oneof![sl_parts(), osp_parts()]) {
        let r = Realization::new(&part, false);
        prop_assert_eq!(centralizer_oracle(&r.algebra, &r.e).dim(), classical_dim(&part));
    }

    #[test]
    fn centre_contains_powers_of_e(part in prop_oneof![sl_parts(), osp_parts()]) {
        let r = Realization::new(&part, part.kind() == Kind::Osp);
        let z = centre_oracle(&centralizer_oracle(&r.algebra, &r.e));
        // in osp the extra element of the centre can be odd
        if part.kind() == Kind::Sl {
            prop_assert!(z.basis.iter().all(|x| x.odd_part().is_zero()));
        }
        let step = if part.kind() == Kind::Osp { 2 } else { 1 };
        for k in (1..part.largest()).step_by(step) {
            prop_assert!(z.span.contains(r.e.pow(k).flat()), "e^{}", k);
        }
    }

    #[test]
    fn diagram_labels_are_small(part in prop_oneof![sl_parts(), osp_parts()]) {
        let d = diagram(&part).unwrap();
        prop_assert!(d.labels().iter().all(|l| (0..=2).contains(l)));
        let rank = match part.kind() {
            Kind::Sl => part.m() + part.odd_dim() - 1,
            Kind::Osp if part.m() == 2 && part.n() == 0 => 0,
            Kind::Osp => part.m() / 2 + part.n(),
        };
        prop_assert_eq!(d.nodes.len(), rank);
        if part.kind() == Kind::Sl {
            prop_assert_eq!(d.label_sum(), 2 * part.largest() as i64 - 2);
        }
    }
}
