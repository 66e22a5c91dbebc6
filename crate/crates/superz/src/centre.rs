//! Centres `z(g^e)` and their invariants under the component group of `G^e`.

use crate::centralizer::{Centralizer, Strings};
use crate::exactlin::{combine, kernel_of_images, q, Q, Subspace};
use crate::partitions::{GroupedPartition, Kind, Parity, Partition};
use crate::pyramids::build_sl;
use crate::superalgebra::{bracket_homogeneous, form_identity_holds, preserves_form, AltFrame, SuperMatrix, SuperSpace};
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentreError {
    #[error("no closed form for sl(1|1); use the oracle")]
    SlOneOne,
    #[error("expected an {0:?} partition")]
    WrongKind(Kind),
    #[error("involution {0} does not preserve the form")]
    NotInGroup(String),
    #[error("involution {0} does not commute with e")]
    NotInCentralizer(String),
}

/// Which closed-form description applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentreCase {
    /// `<e, …, e^{λ_1 - 1}>`.
    SlPowers,
    /// `<I, e, …, e^{λ_1 - 1}>` for `m = n > 1`.
    SlPowersAndIdentity,
    /// `S = <e^k : k odd>`.
    OspS,
    /// `S` plus `ξ_1^{2,λ_2-1} ± ξ_2^{1,λ_1-1}`.
    OspCase1,
    /// `S` plus `ξ_{a+1}^{a+1,λ_{a+1}-1} ± ξ_{-(a+1)}^{-(a+1),λ_{a+1}-1}`.
    OspCase2,
    /// Both extra elements.
    OspCase1And2,
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    #[serde(skip)]
    pub matrix: SuperMatrix,
}

#[derive(Clone, Debug)]
pub struct CentreResult {
    pub case_tag: CentreCase,
    pub generators: Vec<Generator>,
    pub span: Subspace,
}

impl CentreResult {
    fn new(case_tag: CentreCase, generators: Vec<Generator>, space: &Arc<SuperSpace>) -> Self {
        let n = space.dim();
        let span = Subspace::from_vectors(n * n, generators.iter().map(|g| g.matrix.flat().to_vec()));
        CentreResult { case_tag, generators, span }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

/// Elements of the centralizer commuting with all of it.
///
/// The centralizer basis must be homogeneous; the centre is graded, so it
/// is computed separately on even and odd candidates.
pub fn centre_oracle(c: &Centralizer) -> Centralizer {
    let Some(first) = c.basis.first() else {
        return c.clone();
    };
    let space = first.space().clone();
    let n2 = space.dim() * space.dim();
    let graded: Vec<(Parity, &SuperMatrix)> =
        c.basis.iter().map(|x| (x.parity().expect("homogeneous centralizer basis"), x)).collect();
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let cands: Vec<&SuperMatrix> = graded.iter().filter(|(p, _)| *p == parity).map(|(_, x)| *x).collect();
        if cands.is_empty() {
            continue;
        }
        let images: Vec<Vec<Q>> = cands
            .iter()
            .map(|x| graded.iter().flat_map(|(py, y)| bracket_homogeneous(x, parity, y, *py).into_flat()).collect())
            .collect();
        let ker = kernel_of_images(&images, n2 * graded.len());
        let flats: Vec<Vec<Q>> = cands.iter().map(|x| x.flat().to_vec()).collect();
        for coeffs in ker.basis() {
            out.push(SuperMatrix::from_flat(&space, combine(&flats, coeffs, n2)));
        }
    }
    Centralizer::from_basis(&space, out)
}

/// Closed form for `sl(m|n)` in the sl pyramid frame.
pub fn centre_closed_form_sl(part: &Partition) -> Result<CentreResult, CentreError> {
    if part.kind() != Kind::Sl {
        return Err(CentreError::WrongKind(Kind::Sl));
    }
    if part.m() == 1 && part.n() == 1 {
        return Err(CentreError::SlOneOne);
    }
    let py = build_sl(part);
    let strings = Strings::sl(&py);
    let mut gens = Vec::new();
    let with_id = part.m() == part.n();
    if with_id {
        gens.push(Generator { name: "I".into(), matrix: SuperMatrix::identity(&strings.space) });
    }
    for k in 1..part.largest() {
        gens.push(Generator { name: format!("e^{k}"), matrix: strings.e_power(k) });
    }
    let tag = if with_id { CentreCase::SlPowersAndIdentity } else { CentreCase::SlPowers };
    Ok(CentreResult::new(tag, gens, &strings.space))
}

/// Sizes and parities in grouped notation, with `λ_i = 0` past the end.
struct Grouped<'a> {
    g: &'a GroupedPartition,
}

impl Grouped<'_> {
    fn a(&self) -> usize {
        self.g.a()
    }
    fn b(&self) -> usize {
        self.g.b()
    }
    fn lam(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.g.size(i)
        }
    }
    fn par(&self, i: usize) -> Option<Parity> {
        self.g.part(i).map(|p| p.parity)
    }
    /// Largest single, 0 when there are none.
    fn lam1(&self) -> u32 {
        if self.a() >= 1 {
            self.lam(1)
        } else {
            0
        }
    }
    /// Largest pair, 0 when there are none.
    fn lam_pair(&self) -> u32 {
        if self.b() > self.a() {
            self.lam(self.a() + 1)
        } else {
            0
        }
    }
}

/// Whether the extra elements of the two special cases are present.
///
/// Case 1 (an element pairing the two largest singles) appears exactly when
/// `a ≥ 2`, `|1| = 0` and `λ_2 > λ_{a+1}`. Case 2 is the pairs condition
/// (`λ_1 < λ_{a+1}`, `λ_{a+1} > λ_{a+2}`, `|a+1| = 0`, `λ_{a+1}` odd).
/// Both are checked against the centre computed by linear algebra.
pub fn special_cases(part: &Partition) -> (bool, bool) {
    let g = part.group().expect("osp partition");
    let gp = Grouped { g: &g };
    let case1 = gp.a() >= 2 && gp.par(1) == Some(Parity::Even) && gp.lam(2) > gp.lam_pair();
    (case1, case2(&gp))
}

/// The singles condition in its older form: `a ≥ 3`, `λ_2 > λ_{a+1}`,
/// `|1| = |2| = 0`, or `a = 2` with `|1| ≠ |2|`, plus an `n = 0` variant.
///
/// Kept for comparison. It disagrees with the computed centre on e.g.
/// `(1|2)`, `(3|4)` (predicts an element that is not there) and `(3,1|2)`,
/// `(5,3|1,1)` (misses one).
pub fn special_cases_literal(part: &Partition) -> (bool, bool) {
    let g = part.group().expect("osp partition");
    let gp = Grouped { g: &g };
    let a = gp.a();
    let even = Some(Parity::Even);
    let case1 = if part.n() == 0 {
        a >= 2 && gp.lam(1) % 2 == 1 && gp.lam(2) % 2 == 1 && gp.lam(2) > if a >= 3 { gp.lam(3) } else { gp.lam_pair() }
    } else if part.m() == 0 {
        false
    } else {
        (a >= 3 && gp.lam(2) > gp.lam_pair() && gp.par(1) == even && gp.par(2) == even)
            || (a == 2 && gp.par(1) != gp.par(2))
    };
    (case1, case2(&gp))
}

fn case2(gp: &Grouped) -> bool {
    let a = gp.a();
    let next_pair = if gp.b() > a + 1 { gp.lam(a + 2) } else { 0 };
    gp.b() > a
        && gp.lam1() < gp.lam_pair()
        && gp.lam_pair() > next_pair
        && gp.par(a + 1) == Some(Parity::Even)
        && gp.lam_pair() % 2 == 1
}

/// `ξ_i^{j,k} + ε ξ_{j*}^{i*,k'}` with the sign that puts it in `osp`.
fn osp_pair(frame: &AltFrame, strings: &Strings, i: i32, j: i32, k: u32) -> SuperMatrix {
    let size = |l: i32| frame.string(l).expect("string").size as i64;
    let kp = (k as i64 + size(i) - size(j)) as u32;
    let base = strings.xi(i, j, k).expect("valid ξ");
    let other = strings.xi(frame.star(j), frame.star(i), kp).expect("valid partner");
    [1i64, -1]
        .into_iter()
        .map(|s| &base + &other.scale(&q(s)))
        .find(|x| form_identity_holds(x, frame.gram()))
        .expect("a sign exists")
}

/// `S = <e^k : k odd, 1 ≤ k ≤ max(λ_1, λ_{a+1}) - 1>` in the alternative frame.
pub fn s_generators(frame: &AltFrame) -> Vec<Generator> {
    let strings = Strings::alt(frame);
    let gp = Grouped { g: &frame.grouped };
    let top = gp.lam1().max(gp.lam_pair());
    (1..top).step_by(2).map(|k| Generator { name: format!("e^{k}"), matrix: strings.e_power(k) }).collect()
}

/// Closed form for `osp(m|2n)` in the alternative frame.
pub fn centre_closed_form_osp(part: &Partition) -> Result<(AltFrame, CentreResult), CentreError> {
    if part.kind() != Kind::Osp {
        return Err(CentreError::WrongKind(Kind::Osp));
    }
    let frame = AltFrame::new(&part.group().expect("osp partition"));
    let strings = Strings::alt(&frame);
    let mut gens = s_generators(&frame);
    let (c1, c2) = special_cases(part);
    let gp = Grouped { g: &frame.grouped };
    if c1 {
        let m = osp_pair(&frame, &strings, 1, 2, gp.lam(2) - 1);
        gens.push(Generator { name: format!("xi_1^{{2,{}}} +- xi_2^{{1,{}}}", gp.lam(2) - 1, gp.lam(1) - 1), matrix: m });
    }
    if c2 {
        let i = gp.a() as i32 + 1;
        let k = gp.lam_pair() - 1;
        let m = osp_pair(&frame, &strings, i, i, k);
        gens.push(Generator { name: format!("xi_{i}^{{{i},{k}}} +- xi_{}^{{{},{k}}}", -i, -i), matrix: m });
    }
    let tag = match (c1, c2) {
        (false, false) => CentreCase::OspS,
        (true, false) => CentreCase::OspCase1,
        (false, true) => CentreCase::OspCase2,
        (true, true) => CentreCase::OspCase1And2,
    };
    let res = CentreResult::new(tag, gens, frame.space());
    Ok((frame, res))
}

/// An explicit element of `G^e` together with its inverse.
#[derive(Clone, Debug)]
pub struct Involution {
    pub name: String,
    pub q: SuperMatrix,
    pub q_inv: SuperMatrix,
}

impl Involution {
    /// Determinant on `V_0` (`±1`).
    pub fn det_even(&self) -> i64 {
        let space = self.q.space();
        let idx: Vec<usize> = (0..space.dim()).filter(|&i| space.parity[i] == Parity::Even).collect();
        let mut m = crate::exactlin::RationalMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.q.get(i, j).clone());
            }
        }
        // monomial matrices only: read the sign of the permutation times the entries
        let d = idx.len();
        let mut perm = vec![0usize; d];
        let mut sign = 1i64;
        for (r, p) in perm.iter_mut().enumerate() {
            let c = (0..d).find(|&c| !num_traits::Zero::is_zero(m.get(r, c))).expect("monomial");
            *p = c;
            if m.get(r, c) < &q(0) {
                sign = -sign;
            }
        }
        let mut seen = vec![false; d];
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = perm[t];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn compose(&self, other: &Involution) -> Involution {
        Involution {
            name: format!("{}*{}", self.name, other.name),
            q: &self.q * &other.q,
            q_inv: &other.q_inv * &self.q_inv,
        }
    }

    pub fn act(&self, x: &SuperMatrix) -> SuperMatrix {
        &(&self.q * x) * &self.q_inv
    }
}

/// Sign flips of single strings and swaps of paired strings.
///
/// A paired string is swapped by `u_i <-> u_{-i}` when that preserves the
/// form, and by `u_i -> u_{-i}, u_{-i} -> -u_i` otherwise.
pub fn component_involutions(frame: &AltFrame) -> Vec<Involution> {
    let space = frame.space();
    let g = &frame.grouped;
    let mut out = Vec::new();
    for i in 1..=g.a() as i32 {
        let s = frame.string(i).expect("string");
        let mut qm = SuperMatrix::identity(space);
        for k in 0..s.size as usize {
            qm.set(s.offset + k, s.offset + k, q(-1));
        }
        out.push(Involution { name: format!("flip({i})"), q: qm.clone(), q_inv: qm });
    }
    for i in (g.a() + 1)..=g.b() {
        let i = i as i32;
        let (s, t) = (frame.string(i).expect("string"), frame.string(-i).expect("string"));
        let mut plain = SuperMatrix::identity(space);
        for k in 0..s.size as usize {
            plain.set(s.offset + k, s.offset + k, q(0));
            plain.set(t.offset + k, t.offset + k, q(0));
            plain.set(t.offset + k, s.offset + k, q(1));
            plain.set(s.offset + k, t.offset + k, q(1));
        }
        if preserves_form(&plain, frame.gram()) {
            out.push(Involution { name: format!("swap({i})"), q: plain.clone(), q_inv: plain });
            continue;
        }
        let mut tw = plain.clone();
        for k in 0..s.size as usize {
            tw.set(s.offset + k, t.offset + k, q(-1));
        }
        let inv = tw.transpose();
        out.push(Involution { name: format!("twisted_swap({i})"), q: tw, q_inv: inv });
    }
    out
}

/// Generators of the component group of `G'^e` for `G' = SO_m × Sp_2n`:
/// the involutions of determinant one on `V_0`, plus products of pairs of
/// the others.
pub fn so_involutions(all: &[Involution]) -> Vec<Involution> {
    let (plus, minus): (Vec<&Involution>, Vec<&Involution>) = all.iter().partition(|q| q.det_even() == 1);
    let mut out: Vec<Involution> = plus.into_iter().cloned().collect();
    if let Some((first, rest)) = minus.split_first() {
        out.extend(rest.iter().map(|q| first.compose(q)));
    }
    out
}

#[derive(Clone, Debug)]
pub struct FixedResult {
    pub span: Subspace,
    pub involutions: Vec<String>,
}

impl FixedResult {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

/// Subspace of `centre` fixed by every involution, after checking that
/// each one preserves the form and commutes with `e`.
pub fn fixed_by(centre: &Subspace, space: &Arc<SuperSpace>, qs: &[Involution], gram: &crate::exactlin::RationalMatrix, e: &SuperMatrix) -> Result<FixedResult, CentreError> {
    for inv in qs {
        if !preserves_form(&inv.q, gram) {
            return Err(CentreError::NotInGroup(inv.name.clone()));
        }
        if inv.act(e) != *e {
            return Err(CentreError::NotInCentralizer(inv.name.clone()));
        }
    }
    let n2 = space.dim() * space.dim();
    let images: Vec<Vec<Q>> = centre
        .basis()
        .iter()
        .map(|v| {
            let x = SuperMatrix::from_flat(space, v.clone());
            qs.iter().flat_map(|inv| (&inv.act(&x) - &x).into_flat()).collect()
        })
        .collect();
    let ker = kernel_of_images(&images, n2 * qs.len());
    let vecs = ker.basis().iter().map(|c| combine(centre.basis(), c, n2));
    Ok(FixedResult { span: Subspace::from_vectors(n2, vecs), involutions: qs.iter().map(|q| q.name.clone()).collect() })
}

/// `(z(g^e))^{G^e}` for osp, via the explicit involutions; `so_variant`
/// uses `SO_m × Sp_2n` instead of `O_m × Sp_2n`.
pub fn fixed_under_group(part: &Partition, centre: &Subspace, so_variant: bool) -> Result<FixedResult, CentreError> {
    if part.kind() != Kind::Osp {
        return Err(CentreError::WrongKind(Kind::Osp));
    }
    let frame = AltFrame::new(&part.group().expect("osp partition"));
    let mut qs = component_involutions(&frame);
    if so_variant {
        qs = so_involutions(&qs);
    }
    fixed_by(centre, frame.space(), &qs, frame.gram(), &frame.e())
}

/// Older `SO_m` prediction, reading "odd part" as any
/// part: the whole centre is fixed when `λ_2 > λ_{a+1}` and `λ_i` is even
/// for `3 ≤ i ≤ b`, or when `λ_1 < λ_{a+1} ≠ λ_{a+2}` and `λ_{±(a+1)}` are
/// the only odd parts. Kept for comparison with [`so_variant_keeps_centre`].
pub fn so_literal_prediction(part: &Partition) -> bool {
    let g = part.group().expect("osp partition");
    let gp = Grouped { g: &g };
    let (a, b) = (gp.a(), gp.b());
    let first = gp.lam(2) > gp.lam_pair() && (3..=b).all(|i| gp.lam(i).is_multiple_of(2));
    let next_pair = if b > a + 1 { gp.lam(a + 2) } else { 0 };
    let second = b > a
        && gp.lam1() < gp.lam_pair()
        && gp.lam_pair() != next_pair
        && (1..=b).filter(|&i| i != a + 1).all(|i| gp.lam(i).is_multiple_of(2))
        && gp.lam_pair() % 2 == 1;
    first || second
}

/// Whether `SO_m × Sp_2n` fixes the extra centre element.
///
/// Only strings in `V_0` of odd length give reflections of determinant
/// `-1`, so those are the "odd parts" that matter. The Case 1 element also
/// needs `|2| = 0`, otherwise flipping string 2 (determinant `+1`)
/// negates it. When this returns false the fixed space is `S`.
pub fn so_variant_keeps_centre(part: &Partition) -> bool {
    let g = part.group().expect("osp partition");
    let gp = Grouped { g: &g };
    let b = gp.b();
    let reflecting = |i: usize| gp.par(i) == Some(Parity::Even) && gp.lam(i) % 2 == 1;
    let (c1, c2) = special_cases(part);
    if c1 {
        gp.par(2) == Some(Parity::Even) && !(3..=b).any(reflecting)
    } else if c2 {
        !(1..=b).filter(|&i| i != gp.a() + 1).any(reflecting)
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::centralizer_oracle;
    use crate::nilpotent::Realization;

    fn oracle_centre(s: &str, k: Kind, alt: bool) -> Centralizer {
        let part = Partition::parse(s, k).unwrap();
        let r = Realization::new(&part, alt);
        centre_oracle(&centralizer_oracle(&r.algebra, &r.e))
    }

    #[test]
    fn sl_examples() {
        let z = oracle_centre("5,1|3", Kind::Sl, false);
        assert_eq!(z.dim(), 4);
        let cf = centre_closed_form_sl(&Partition::parse("5,1|3", Kind::Sl).unwrap()).unwrap();
        assert_eq!(cf.span, z.span);
        let cf = centre_closed_form_sl(&Partition::parse("2|2", Kind::Sl).unwrap()).unwrap();
        assert_eq!(cf.dim(), 2);
        assert_eq!(cf.span, oracle_centre("2|2", Kind::Sl, false).span);
        assert_eq!(oracle_centre("1,1|1", Kind::Sl, false).dim(), 0);
        assert_eq!(centre_closed_form_sl(&Partition::parse("1|1", Kind::Sl).unwrap()).unwrap_err(), CentreError::SlOneOne);
        // I is central in sl(1|1)
        assert_eq!(oracle_centre("1|1", Kind::Sl, false).dim(), 1);
    }

    #[test]
    fn osp_examples() {
        for (s, d) in [("3|2", 2), ("2,2|1,1", 1), ("3,3|", 2)] {
            let z = oracle_centre(s, Kind::Osp, true);
            assert_eq!(z.dim(), d, "{s}");
            let (_, cf) = centre_closed_form_osp(&Partition::parse(s, Kind::Osp).unwrap()).unwrap();
            assert_eq!(cf.span, z.span, "{s}");
        }
    }

    #[test]
    fn fixed_examples() {
        for (s, d) in [("3|2", 1), ("2,2|1,1", 1), ("3,3|", 1)] {
            let part = Partition::parse(s, Kind::Osp).unwrap();
            let z = oracle_centre(s, Kind::Osp, true);
            let fx = fixed_under_group(&part, &z.span, false).unwrap();
            assert_eq!(fx.dim(), d, "{s}");
            let frame = AltFrame::new(&part.group().unwrap());
            let sgen = s_generators(&frame);
            let n2 = frame.dim() * frame.dim();
            let sspan = Subspace::from_vectors(n2, sgen.iter().map(|g| g.matrix.flat().to_vec()));
            assert_eq!(fx.span, sspan, "{s}");
        }
    }
}
