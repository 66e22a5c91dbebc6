//! The nilpotent `e` and semisimple `h` attached to a pyramid, their
//! completion to an sl(2)-triple and the `ad h` grading.

use crate::exactlin::{kernel_of_images, q, solve, Q, RationalMatrix, Subspace};
use crate::partitions::{Kind, Parity, Partition};
use crate::pyramids::{build_alt, build_osp, build_sl, BoxLabel, Flavor, Pyramid, RowKind};
use crate::superalgebra::{bracket, Algebra, AltFrame, Frame, OspStructure, SuperMatrix, SuperSpace};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilpotentError {
    #[error("no sl(2)-triple through the given pair")]
    NoSolution,
    #[error("[h,e] != 2e")]
    NotGraded,
}

#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub e: SuperMatrix,
    pub h: SuperMatrix,
    pub f: SuperMatrix,
}

/// Positions of the non-crossed boxes in basis order, keyed by `(row, col)`.
fn positions(py: &Pyramid) -> HashMap<(i32, i32), usize> {
    py.ordered().iter().enumerate().map(|(t, b)| ((b.row, b.col), t)).collect()
}

/// Super vector space whose basis is the pyramid's ordered boxes.
pub fn pyramid_space(py: &Pyramid) -> Arc<SuperSpace> {
    let frame = match py.flavor {
        Flavor::Sl => Frame::Sl,
        Flavor::Osp => Frame::OspStd,
        Flavor::Alt => Frame::Alt,
    };
    match py.flavor {
        Flavor::Alt => alt_frame(py).space().clone(),
        _ => SuperSpace::new(py.ordered().iter().map(|b| b.parity).collect(), frame),
    }
}

fn alt_frame(py: &Pyramid) -> AltFrame {
    AltFrame::new(&py.partition.group().expect("osp partition"))
}

/// The parity sequence `η_i = |row(i)|` of an osp pyramid.
pub fn osp_structure(py: &Pyramid) -> OspStructure {
    assert_eq!(py.flavor, Flavor::Osp);
    let part = &py.partition;
    let l = part.m() / 2 + part.n();
    let eta: Vec<Parity> = py.ordered().iter().take(l).map(|b| b.parity).collect();
    OspStructure::new(part.m(), eta).expect("pyramid parities are consistent")
}

/// `h = diag(-col(i))`.
pub fn h_from_pyramid(py: &Pyramid) -> SuperMatrix {
    if py.flavor == Flavor::Alt {
        return alt_frame(py).h();
    }
    let space = pyramid_space(py);
    let mut h = SuperMatrix::zeros(&space);
    for (t, b) in py.ordered().iter().enumerate() {
        h.set(t, t, q(-b.col as i64));
    }
    h
}

/// Hops `(target, source)` of `e` in pyramid positions: each box goes to its
/// left neighbour, and skew rows in the upper half also hop across to the
/// mirrored row.
fn hops(py: &Pyramid) -> Vec<(usize, usize)> {
    let pos = positions(py);
    let mut out = Vec::new();
    for b in py.boxes.iter().filter(|b| !b.crossed) {
        if let Some(&t) = pos.get(&(b.row, b.col - 2)) {
            out.push((t, pos[&(b.row, b.col)]));
        }
    }
    if py.flavor == Flavor::Osp {
        for meta in &py.rows {
            let r = meta.row;
            match meta.kind {
                RowKind::EvenSkew => {
                    out.push((pos[&(-r, 0)], pos[&(r, 2)]));
                    out.push((pos[&(-r, -2)], pos[&(r, 0)]));
                }
                RowKind::OddSkew => out.push((pos[&(-r, -1)], pos[&(r, 1)])),
                _ => {}
            }
        }
    }
    out
}

/// The nilpotent `e` determined by a pyramid.
///
/// In the osp case each hop `E_{a,b}` is completed to the osp basis element
/// containing it, with coefficient `1` on the entry above the skew diagonal,
/// so that `e` lies in the algebra by construction.
pub fn e_from_pyramid(py: &Pyramid) -> SuperMatrix {
    match py.flavor {
        Flavor::Alt => alt_frame(py).e(),
        Flavor::Sl => {
            let space = pyramid_space(py);
            let mut e = SuperMatrix::zeros(&space);
            for (a, b) in hops(py) {
                e.set(a, b, Q::one());
            }
            e
        }
        Flavor::Osp => {
            let st = osp_structure(py);
            let space = st.space();
            let mut e = SuperMatrix::zeros(&space);
            for (a, b) in hops(py) {
                let (i, j) = (st.index_at(a), st.index_at(b));
                if i == -j {
                    e.set(a, b, Q::one());
                    continue;
                }
                // (j', k') is the free entry of the basis element holding E_{i,j}
                let in_range = |x: i32, y: i32| (x > 0 && y > 0) || (x == 0 && y > 0) || (x > 0 && y == 0) || (x * y < 0 && x + y < 0);
                let (fj, fk) = if in_range(i, j) { (i, j) } else { (-j, -i) };
                e.set(st.pos(fj), st.pos(fk), Q::one());
                e.set(st.pos(-fk), st.pos(-fj), q(st.gamma(fj, fk)));
            }
            e
        }
    }
}

/// The algebra acting on the pyramid's space: `sl` or `osp`.
pub fn pyramid_algebra(py: &Pyramid) -> Algebra {
    match py.flavor {
        Flavor::Sl => Algebra::sl(&pyramid_space(py)),
        Flavor::Osp => Algebra::osp(&osp_structure(py)),
        Flavor::Alt => alt_frame(py).algebra(),
    }
}

/// A nilpotent orbit representative together with its ambient algebra.
#[derive(Clone, Debug)]
pub struct Realization {
    pub partition: Partition,
    pub pyramid: Pyramid,
    pub algebra: Algebra,
    pub e: SuperMatrix,
    pub h: SuperMatrix,
}

impl Realization {
    /// Build from the pyramid of the partition's kind; `alt` selects the
    /// alternative pyramid for osp partitions.
    pub fn new(part: &Partition, alt: bool) -> Self {
        let pyramid = match (part.kind(), alt) {
            (Kind::Sl, _) => build_sl(part),
            (Kind::Osp, false) => build_osp(part).expect("osp partition"),
            (Kind::Osp, true) => build_alt(&part.group().expect("osp partition"), part),
        };
        let algebra = pyramid_algebra(&pyramid);
        let e = e_from_pyramid(&pyramid);
        let h = h_from_pyramid(&pyramid);
        Realization { partition: part.clone(), pyramid, algebra, e, h }
    }

    pub fn space(&self) -> &Arc<SuperSpace> {
        self.algebra.space()
    }
}

/// Find `f` in the even part of `alg` with `[h,f] = -2f` and `[e,f] = h`.
pub fn complete_triple(e: &SuperMatrix, h: &SuperMatrix, alg: &Algebra) -> Result<Sl2Triple, NilpotentError> {
    if bracket(h, e) != e.scale(&q(2)) {
        return Err(NilpotentError::NotGraded);
    }
    let space = alg.space();
    let n2 = space.dim() * space.dim();
    let even = alg.graded_basis(Parity::Even);
    // Only the ad h eigenspace for -2 can contain f.
    let cand: Vec<SuperMatrix> = grading_basis(&even, h, -2);
    if cand.is_empty() {
        return if h.is_zero() {
            Ok(Sl2Triple { e: e.clone(), h: h.clone(), f: SuperMatrix::zeros(space) })
        } else {
            Err(NilpotentError::NoSolution)
        };
    }
    let imgs: Vec<Vec<Q>> = cand.iter().map(|c| bracket(e, c).into_flat()).collect();
    let mut m = RationalMatrix::zeros(n2, cand.len());
    for (s, img) in imgs.iter().enumerate() {
        for (r, v) in img.iter().enumerate() {
            if !v.is_zero() {
                m.set(r, s, v.clone());
            }
        }
    }
    let x = solve(&m, h.flat()).map_err(|_| NilpotentError::NoSolution)?;
    let mut f = SuperMatrix::zeros(space);
    for (c, b) in x.iter().zip(&cand) {
        if !c.is_zero() {
            f = &f + &b.scale(c);
        }
    }
    Ok(Sl2Triple { e: e.clone(), h: h.clone(), f })
}

/// Projections of the given elements onto the `ad h = j` eigenspace; `h` must be diagonal.
fn grading_basis(elems: &[SuperMatrix], h: &SuperMatrix, j: i64) -> Vec<SuperMatrix> {
    let n = h.dim();
    let space = h.space();
    let jq = q(j);
    let keep: Vec<bool> = (0..n * n).map(|t| h.get(t / n, t / n) - h.get(t % n, t % n) == jq).collect();
    let projected = elems.iter().map(|x| {
        x.flat().iter().zip(&keep).map(|(v, k)| if *k { v.clone() } else { Q::zero() }).collect::<Vec<Q>>()
    });
    let sub = Subspace::from_vectors(n * n, projected);
    sub.basis().iter().map(|v| SuperMatrix::from_flat(space, v.clone())).collect()
}

/// `g(j) = {x in g : [h,x] = jx}` as a subspace of the flattened `gl(V)`.
pub fn grading(alg: &Algebra, h: &SuperMatrix, j: i64) -> Subspace {
    let n = h.dim();
    Subspace::from_vectors(n * n, grading_basis(alg.basis(), h, j).into_iter().map(|x| x.into_flat()))
}

/// Jordan type (block sizes, decreasing) of an even nilpotent `x` on `V_parity`.
pub fn jordan_type(x: &SuperMatrix, parity: Parity) -> Vec<u32> {
    let idx: Vec<usize> = (0..x.dim()).filter(|&i| x.space().parity[i] == parity).collect();
    let d = idx.len();
    let mut restricted = RationalMatrix::zeros(d, d);
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            restricted.set(a, b, x.get(i, j).clone());
        }
    }
    let mut ranks = vec![d];
    let mut p = RationalMatrix::identity(d);
    while *ranks.last().expect("non-empty") > 0 {
        p = p.mul(&restricted).expect("square");
        let r = p.rank();
        if r == *ranks.last().expect("non-empty") {
            break; // not nilpotent; stop
        }
        ranks.push(r);
    }
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    let mut ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    ge.push(0);
    let mut out = Vec::new();
    for k in (1..ge.len()).rev() {
        let exactly = ge[k - 1] - ge[k];
        out.extend(std::iter::repeat_n(k as u32, exactly));
    }
    out
}

/// Kernel of `ad x` on the algebra, as homogeneous matrices.
pub fn ad_kernel(alg: &Algebra, x: &SuperMatrix) -> Vec<SuperMatrix> {
    let n2 = x.dim() * x.dim();
    let basis = alg.basis();
    let imgs: Vec<Vec<Q>> = basis.iter().map(|b| bracket(x, b).into_flat()).collect();
    let ker = kernel_of_images(&imgs, n2);
    let vecs: Vec<Vec<Q>> = ker
        .basis()
        .iter()
        .map(|c| crate::exactlin::combine(&basis.iter().map(|b| b.flat().to_vec()).collect::<Vec<_>>(), c, n2))
        .collect();
    crate::superalgebra::homogeneous_basis(x.space(), &vecs)
}

/// Label of a box, for pyramids with numeric labels.
pub fn box_number(b: &crate::pyramids::PBox) -> Option<i32> {
    match b.label {
        BoxLabel::Num(i) => Some(i),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::supertrace;

    fn real(s: &str, kind: Kind) -> Realization {
        Realization::new(&Partition::parse(s, kind).unwrap(), false)
    }

    #[test]
    fn h_for_five_one_three() {
        let r = real("5,1|3", Kind::Sl);
        let want: Vec<Q> = [4, 2, 2, 0, 0, 0, -2, -2, -4].iter().map(|&x| q(x)).collect();
        let diag: Vec<Q> = (0..9).map(|i| r.h.get(i, i).clone()).collect();
        assert_eq!(diag, want);
        assert!(r.h.triples().iter().all(|t| t.row == t.col));
    }

    #[test]
    fn e_for_five_one_three() {
        let r = real("5,1|3", Kind::Sl);
        // boxes numbered 1..9; row 1 holds 1,3,6,8,9 and row 2 holds 2,5,7
        let mut want = SuperMatrix::zeros(r.space());
        for (a, b) in [(1, 3), (3, 6), (6, 8), (8, 9), (2, 5), (5, 7)] {
            want.set(a - 1, b - 1, Q::one());
        }
        assert_eq!(r.e, want);
        assert_eq!(bracket(&r.h, &r.e), r.e.scale(&q(2)));
        assert!(r.e.pow(5).is_zero() && !r.e.pow(4).is_zero());
        assert_eq!(jordan_type(&r.e, Parity::Even), vec![5, 1]);
        assert_eq!(jordan_type(&r.e, Parity::Odd), vec![3]);
    }

    #[test]
    fn trivial_orbit() {
        let r = real("1,1|1", Kind::Sl);
        assert!(r.e.is_zero() && r.h.is_zero());
        let t = complete_triple(&r.e, &r.h, &r.algebra).unwrap();
        assert!(t.f.is_zero());
    }

    #[test]
    fn osp_e_has_correct_jordan_type() {
        for s in ["5,3,1|3,3", "3,3|4", "2,2|1,1", "3|2", "3,1|2", "5,1|", "7,5,3,1|", "3,3|2,2", "1|4", "|2,2"] {
            let part = Partition::parse(s, Kind::Osp).unwrap();
            let r = Realization::new(&part, false);
            assert!(r.algebra.contains(&r.e), "{s}");
            assert!(r.algebra.contains(&r.h), "{s}");
            assert_eq!(bracket(&r.h, &r.e), r.e.scale(&q(2)), "{s}");
            assert_eq!(jordan_type(&r.e, Parity::Even), part.p().to_vec(), "{s}");
            assert_eq!(jordan_type(&r.e, Parity::Odd), part.q().to_vec(), "{s}");
        }
    }

    #[test]
    fn triples() {
        for (s, k) in [("5,1|3", Kind::Sl), ("3,2|2,1", Kind::Sl), ("5,3,1|3,3", Kind::Osp), ("3,3|4", Kind::Osp)] {
            let r = real(s, k);
            let t = complete_triple(&r.e, &r.h, &r.algebra).unwrap();
            assert_eq!(bracket(&t.e, &t.f), t.h);
            assert_eq!(bracket(&t.h, &t.f), t.f.scale(&q(-2)));
            assert!(r.algebra.contains(&t.f));
        }
        let r = real("4|", Kind::Sl);
        let t = complete_triple(&r.e, &r.h, &r.algebra).unwrap();
        // classical companion: f e_i = i(k-i) e_{i+1}
        let mut want = SuperMatrix::zeros(r.space());
        for (i, v) in [(0usize, 3), (1, 4), (2, 3)] {
            want.set(i + 1, i, q(v));
        }
        assert_eq!(t.f, want);
    }

    #[test]
    fn grading_dims() {
        let r = real("5,1|3", Kind::Sl);
        let gl = Algebra::gl(r.space());
        assert_eq!(grading(&gl, &r.h, 0).dim(), 19);
        assert_eq!(grading(&gl, &r.h, -1).dim(), 0);
        assert_eq!(grading(&gl, &r.h, 20).dim(), 0);
        let total: usize = (-8..=8).map(|j| grading(&r.algebra, &r.h, j).dim()).sum();
        assert_eq!(total, r.algebra.dim());
        for j in 1..=8 {
            assert_eq!(grading(&r.algebra, &r.h, j).dim(), grading(&r.algebra, &r.h, -j).dim());
        }
        assert!(supertrace(&r.h).is_zero());
    }

    #[test]
    fn alt_pyramid_realization() {
        let part = Partition::parse("5,3,1|4,2,2", Kind::Osp).unwrap();
        let r = Realization::new(&part, true);
        assert!(r.algebra.contains(&r.e));
        assert_eq!(jordan_type(&r.e, Parity::Even), vec![5, 3, 1]);
        assert_eq!(jordan_type(&r.e, Parity::Odd), vec![4, 2, 2]);
        assert_eq!(bracket(&r.h, &r.e), r.e.scale(&q(2)));
    }
}
