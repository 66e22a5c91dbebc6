//! Centralizers `g^e`: a nullspace oracle, the ξ-basis and dimension formulas.

use crate::exactlin::{q, Q, Subspace};
use crate::nilpotent::ad_kernel;
use crate::partitions::{Kind, Parity, Partition};
use crate::pyramids::{build_osp, build_sl, Pyramid};
use crate::superalgebra::{form_identity_holds, supertrace, Algebra, AltFrame, SuperMatrix, SuperSpace};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentralizerError {
    #[error("no string labelled {0}")]
    UnknownString(i32),
    #[error("power {k} out of range for ξ_{i}^{{{j}}}")]
    PowerOutOfRange { i: i32, j: i32, k: u32 },
}

/// Centralizer of an element, with a homogeneous basis.
#[derive(Clone, Debug)]
pub struct Centralizer {
    pub basis: Vec<SuperMatrix>,
    pub span: Subspace,
}

impl Centralizer {
    pub fn from_basis(space: &Arc<SuperSpace>, basis: Vec<SuperMatrix>) -> Self {
        let n = space.dim();
        let span = Subspace::from_vectors(n * n, basis.iter().map(|b| b.flat().to_vec()));
        Centralizer { basis, span }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }
}

/// `{x in alg : [x, e] = 0}`, by exact nullspace.
pub fn centralizer_oracle(alg: &Algebra, e: &SuperMatrix) -> Centralizer {
    Centralizer::from_basis(alg.space(), ad_kernel(alg, e))
}

/// `Σ c_i² + Σ c_i c_{i+1}` over the columns of the sl pyramid.
pub fn dim_gl(part: &Partition) -> usize {
    let py = build_sl(&part.with_kind(Kind::Sl).expect("valid sl partition"));
    column_quadratic(&py)
}

fn column_quadratic(py: &Pyramid) -> usize {
    let cc = py.column_counts();
    let c = |i: i32| cc.get(&i).map_or(0, |(r, s)| r + s);
    let sq: usize = cc.values().map(|(r, s)| (r + s) * (r + s)).sum();
    let adj: usize = cc.keys().map(|&i| c(i) * c(i + 1)).sum();
    sq + adj
}

/// `dim gl^e - 1`.
pub fn dim_sl(part: &Partition) -> usize {
    dim_gl(part) - 1
}

/// Column form: `½(Σ c_i² + Σ c_i c_{i+1}) - r_0/2 + s_0/2` on the osp pyramid.
pub fn dim_osp_columns(part: &Partition) -> usize {
    let py = build_osp(part).expect("osp partition");
    let (r0, s0) = py.column_counts().get(&0).copied().unwrap_or((0, 0));
    let twice = column_quadratic(&py) + s0;
    assert!(twice >= r0 && (twice - r0).is_multiple_of(2), "column formula is integral");
    (twice - r0) / 2
}

/// Part form: `½ dim gl(m|2n)^e - ½#{odd even-parity parts} + ½#{odd odd-parity parts}`.
pub fn dim_osp_parts(part: &Partition) -> usize {
    let all: Vec<u32> = part.p().iter().chain(part.q()).copied().collect();
    let gl: usize = all.iter().flat_map(|a| all.iter().map(move |b| a.min(b))).map(|x| *x as usize).sum();
    let odd_even = part.p().iter().filter(|x| *x % 2 == 1).count();
    let odd_odd = part.q().iter().filter(|x| *x % 2 == 1).count();
    let twice = gl + odd_odd;
    assert!(twice >= odd_even && (twice - odd_even).is_multiple_of(2));
    (twice - odd_even) / 2
}

/// Both osp formulas; panics if they disagree.
pub fn dim_osp(part: &Partition) -> usize {
    let a = dim_osp_columns(part);
    let b = dim_osp_parts(part);
    assert_eq!(a, b, "osp centralizer formulas disagree for {part}");
    a
}

/// Expected `dim g^e` for the partition's algebra.
pub fn dim_formula(part: &Partition) -> usize {
    match part.kind() {
        Kind::Sl => dim_sl(part),
        Kind::Osp => dim_osp(part),
    }
}

/// One Jordan string: basis positions of `u, e u, e² u, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanString {
    pub label: i32,
    pub parity: Parity,
    pub positions: Vec<usize>,
}

impl JordanString {
    pub fn size(&self) -> u32 {
        self.positions.len() as u32
    }
}

/// A Jordan basis of `V` for `e`, with `e` acting by unit shifts.
#[derive(Clone, Debug)]
pub struct Strings {
    pub space: Arc<SuperSpace>,
    pub strings: Vec<JordanString>,
}

impl Strings {
    /// Rows of an sl pyramid, bottom to top; `u_i` is the rightmost box of row `i`.
    pub fn sl(py: &Pyramid) -> Self {
        let ordered = py.ordered();
        let space = crate::nilpotent::pyramid_space(py);
        let strings = py
            .rows
            .iter()
            .map(|meta| {
                let mut boxes: Vec<(i32, usize)> =
                    ordered.iter().enumerate().filter(|(_, b)| b.row == meta.row).map(|(t, b)| (b.col, t)).collect();
                boxes.sort_by_key(|(c, _)| -c);
                JordanString { label: meta.row, parity: meta.parity, positions: boxes.into_iter().map(|(_, t)| t).collect() }
            })
            .collect();
        Strings { space, strings }
    }

    pub fn alt(frame: &AltFrame) -> Self {
        let strings = frame
            .strings
            .iter()
            .map(|s| JordanString {
                label: s.label,
                parity: s.parity,
                positions: (0..s.size as usize).map(|k| s.offset + k).collect(),
            })
            .collect();
        Strings { space: frame.space().clone(), strings }
    }

    pub fn get(&self, label: i32) -> Result<&JordanString, CentralizerError> {
        self.strings.iter().find(|s| s.label == label).ok_or(CentralizerError::UnknownString(label))
    }

    /// `ξ_i^{j,k}`: `e^s u_i -> e^{s+k} u_j`.
    pub fn xi(&self, i: i32, j: i32, k: u32) -> Result<SuperMatrix, CentralizerError> {
        let (si, sj) = (self.get(i)?, self.get(j)?);
        let (li, lj) = (si.size(), sj.size());
        if k >= lj || k + li < lj {
            return Err(CentralizerError::PowerOutOfRange { i, j, k });
        }
        let mut x = SuperMatrix::zeros(&self.space);
        for s in 0..li {
            let t = s + k;
            if t < lj {
                x.set(sj.positions[t as usize], si.positions[s as usize], q(1));
            }
        }
        Ok(x)
    }

    /// `Σ_i ξ_i^{i,k}`.
    pub fn e_power(&self, k: u32) -> SuperMatrix {
        let mut x = SuperMatrix::zeros(&self.space);
        for s in &self.strings {
            for t in 0..s.positions.len().saturating_sub(k as usize) {
                x.set(s.positions[t + k as usize], s.positions[t], q(1));
            }
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum XiFlavor {
    /// `ξ_i^{j,k}` on its own.
    Plain,
    /// `ξ_i^{j,k} + sign · ξ_{j*}^{i*,k'}`; `odd` when `|i| ≠ |j|`.
    Pair { sign: i64, odd: bool },
    /// `str(ξ_i^{i,0}) ξ_r^{r,0} - str(ξ_r^{r,0}) ξ_i^{i,0}` with reference string `r`.
    TraceFree { reference: i32 },
}

/// Symbolic centralizer element built from `ξ_i^{j,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiElement {
    pub source: i32,
    pub target: i32,
    pub power: u32,
    pub flavor: XiFlavor,
}

impl XiElement {
    pub fn plain(source: i32, target: i32, power: u32) -> Self {
        XiElement { source, target, power, flavor: XiFlavor::Plain }
    }

    pub fn describe(&self) -> String {
        let base = format!("xi_{}^{{{},{}}}", self.source, self.target, self.power);
        match &self.flavor {
            XiFlavor::Plain => base,
            XiFlavor::Pair { sign, .. } => format!("{base} {} partner", if *sign > 0 { "+" } else { "-" }),
            XiFlavor::TraceFree { reference } => format!("tracefree({base}; ref {reference})"),
        }
    }
}

/// `(j*, i*, k + λ_i - λ_j)`: indices of the σ-partner of `ξ_i^{j,k}`.
fn partner_indices(i: i32, j: i32, k: u32, star: &dyn Fn(i32) -> i32, size: &dyn Fn(i32) -> u32) -> (i32, i32, u32) {
    let kp = k as i64 + size(i) as i64 - size(j) as i64;
    (star(j), star(i), kp.max(0) as u32)
}

/// Concrete matrix of a symbolic element.
pub fn xi_matrix(x: &XiElement, strings: &Strings, star: Option<&dyn Fn(i32) -> i32>) -> Result<SuperMatrix, CentralizerError> {
    let base = strings.xi(x.source, x.target, x.power)?;
    match &x.flavor {
        XiFlavor::Plain => Ok(base),
        XiFlavor::Pair { sign, .. } => {
            let star = star.expect("pairs need the star involution");
            let size = |l: i32| strings.get(l).map(|s| s.size()).unwrap_or(0);
            let (pi, pj, pk) = partner_indices(x.source, x.target, x.power, star, &size);
            let other = strings.xi(pi, pj, pk)?;
            Ok(&base + &other.scale(&q(*sign)))
        }
        XiFlavor::TraceFree { reference } => {
            let r = strings.xi(*reference, *reference, 0)?;
            Ok(&r.scale(&supertrace(&base)) - &base.scale(&supertrace(&r)))
        }
    }
}

/// All valid `(i, j, k)` with `max(λ_j - λ_i, 0) ≤ k ≤ λ_j - 1`.
fn all_xi(strings: &Strings) -> Vec<(i32, i32, u32)> {
    let mut out = Vec::new();
    for si in &strings.strings {
        for sj in &strings.strings {
            let lo = sj.size().saturating_sub(si.size());
            for k in lo..sj.size() {
                out.push((si.label, sj.label, k));
            }
        }
    }
    out
}

/// ξ-basis of `gl(V)^e`.
pub fn closed_form_gl(strings: &Strings) -> Vec<XiElement> {
    all_xi(strings).into_iter().map(|(i, j, k)| XiElement::plain(i, j, k)).collect()
}

/// ξ-basis of `sl(V)^e`: the gl basis with the projections `ξ_i^{i,0}`
/// replaced by supertrace-free combinations.
pub fn closed_form_sl(strings: &Strings) -> Vec<XiElement> {
    let mut out = Vec::new();
    let reference = strings.strings.first().map(|s| s.label);
    for (i, j, k) in all_xi(strings) {
        if i == j && k == 0 {
            let r = reference.expect("non-empty");
            if i != r {
                out.push(XiElement { source: i, target: i, power: 0, flavor: XiFlavor::TraceFree { reference: r } });
            }
        } else {
            out.push(XiElement::plain(i, j, k));
        }
    }
    out
}

/// The sign `ε` with `ξ_i^{j,k} + ε ξ_{j*}^{i*,k'}` in `osp`, from the
/// closed formula `ε = -(-1)^{k + |i|(|i|+|j|)} θ_i θ_j`.
///
/// For even elements this is `(-1)^{λ_j - k'} θ_j θ_i` with `k = λ_j - 1 - k'`;
/// odd elements pick up the extra factor `(-1)^{|i|}`.
pub fn epsilon_formula(frame: &AltFrame, i: i32, j: i32, k: u32) -> i64 {
    let si = frame.string(i).expect("string");
    let sj = frame.string(j).expect("string");
    let l = k as i64;
    let p = (si.parity.bit() as i64) * ((si.parity.bit() + sj.parity.bit()) as i64 % 2);
    let s = if (l + p) % 2 == 0 { 1 } else { -1 };
    -s * frame.theta(i) * frame.theta(j)
}

/// ξ-basis of `osp(V)^e` in the alternative frame.
///
/// Each `ξ_i^{j,k}` is paired with `ξ_{j*}^{i*,k'}`; the sign making the sum
/// lie in `osp` is found by the defining identity. Self-paired elements are
/// kept when they already lie in `osp`.
pub fn closed_form_osp(frame: &AltFrame) -> Vec<XiElement> {
    let strings = Strings::alt(frame);
    let gram = frame.gram();
    let star = |l: i32| frame.star(l);
    let size = |l: i32| frame.string(l).map(|s| s.size).unwrap_or(0);
    let mut seen: BTreeSet<(i32, i32, u32)> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, j, k) in all_xi(&strings) {
        if seen.contains(&(i, j, k)) {
            continue;
        }
        let partner = partner_indices(i, j, k, &star, &size);
        seen.insert((i, j, k));
        seen.insert(partner);
        let base = strings.xi(i, j, k).expect("valid ξ");
        if partner == (i, j, k) {
            if form_identity_holds(&base, gram) {
                out.push(XiElement::plain(i, j, k));
            }
            continue;
        }
        let other = strings.xi(partner.0, partner.1, partner.2).expect("partner is valid");
        let odd = frame.string(i).expect("string").parity != frame.string(j).expect("string").parity;
        let sign = [1i64, -1]
            .into_iter()
            .find(|s| form_identity_holds(&(&base + &other.scale(&q(*s))), gram))
            .expect("some sign puts the pair in osp");
        out.push(XiElement { source: i, target: j, power: k, flavor: XiFlavor::Pair { sign, odd } });
    }
    out
}

/// Materialize symbolic elements.
pub fn materialize(elems: &[XiElement], strings: &Strings, frame: Option<&AltFrame>) -> Vec<SuperMatrix> {
    let star_fn;
    let star: Option<&dyn Fn(i32) -> i32> = match frame {
        Some(f) => {
            star_fn = move |l: i32| f.star(l);
            Some(&star_fn)
        }
        None => None,
    };
    elems.iter().map(|x| xi_matrix(x, strings, star).expect("valid element")).collect()
}

/// Closed-form centralizer for a partition, in the frame where the
/// ξ-basis lives (sl pyramid for sl, alternative frame for osp).
pub fn closed_form_centralizer(part: &Partition) -> (Vec<XiElement>, Centralizer) {
    match part.kind() {
        Kind::Sl => {
            let py = build_sl(part);
            let strings = Strings::sl(&py);
            let elems = closed_form_sl(&strings);
            let mats = materialize(&elems, &strings, None);
            (elems, Centralizer::from_basis(&strings.space, mats))
        }
        Kind::Osp => {
            let frame = AltFrame::new(&part.group().expect("osp partition"));
            let strings = Strings::alt(&frame);
            let elems = closed_form_osp(&frame);
            let mats = materialize(&elems, &strings, Some(&frame));
            (elems, Centralizer::from_basis(frame.space(), mats))
        }
    }
}

/// Whether `[x, y]` lies in the span for all basis elements.
pub fn is_bracket_closed(c: &Centralizer) -> bool {
    for (s, x) in c.basis.iter().enumerate() {
        for y in &c.basis[s..] {
            let b = crate::superalgebra::bracket(x, y);
            if !c.span.contains(b.flat()) {
                return false;
            }
        }
    }
    true
}

/// Rank of `ad e` from `g(j ≥ -1)` onto `g(j ≥ 1)` equals `dim g(j ≥ 1)`.
pub fn ad_e_surjective(alg: &Algebra, e: &SuperMatrix, h: &SuperMatrix) -> bool {
    let n = e.dim();
    let lo: Vec<Vec<Q>> = (-1..=2 * n as i64)
        .flat_map(|j| crate::nilpotent::grading(alg, h, j).basis().to_vec())
        .collect();
    let images = lo.iter().map(|v| crate::superalgebra::bracket(e, &SuperMatrix::from_flat(e.space(), v.clone())).into_flat());
    let img = Subspace::from_vectors(n * n, images);
    let target: usize = (1..=2 * n as i64).map(|j| crate::nilpotent::grading(alg, h, j).dim()).sum();
    img.dim() == target
}

/// Whether a coordinate vector is zero.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::Realization;

    fn p(s: &str, k: Kind) -> Partition {
        Partition::parse(s, k).unwrap()
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(dim_gl(&p("5,1|3", Kind::Sl)), 19);
        assert_eq!(dim_gl(&p("3,2|2,1", Kind::Sl)), 26);
        assert_eq!(dim_gl(&p("1|", Kind::Sl)), 1);
        assert_eq!(dim_sl(&p("5,1|3", Kind::Sl)), 18);
        assert_eq!(dim_sl(&p("1|1", Kind::Sl)), 3);
        assert_eq!(dim_sl(&p("1|", Kind::Sl)), 0);
        assert_eq!(dim_osp(&p("2,2|1,1", Kind::Osp)), 11);
        assert_eq!(dim_osp(&p("3|2", Kind::Osp)), 4);
        assert_eq!(dim_osp(&p("1|", Kind::Osp)), 0);
    }

    #[test]
    fn oracle_matches_formulas() {
        for (s, k) in [("5,1|3", Kind::Sl), ("3,2|2,1", Kind::Sl), ("1|1", Kind::Sl), ("2,2|1,1", Kind::Osp), ("3|2", Kind::Osp), ("5,3,1|3,3", Kind::Osp)] {
            let part = p(s, k);
            let r = Realization::new(&part, false);
            let c = centralizer_oracle(&r.algebra, &r.e);
            assert_eq!(c.dim(), dim_formula(&part), "{s}");
            let (elems, cf) = closed_form_centralizer(&part);
            assert_eq!(elems.len(), c.dim(), "{s}");
            assert_eq!(cf.dim(), c.dim(), "{s}");
        }
    }

    #[test]
    fn closed_form_spans_oracle() {
        for s in ["5,1|3", "3,2|2,1", "2|2", "1,1|1"] {
            let part = p(s, Kind::Sl);
            let r = Realization::new(&part, false);
            let (_, cf) = closed_form_centralizer(&part);
            assert_eq!(cf.span, centralizer_oracle(&r.algebra, &r.e).span, "{s}");
        }
        for s in ["3|2", "2,2|1,1", "3,3|", "5,3,1|4,2,2", "3,1|2,2"] {
            let part = p(s, Kind::Osp);
            let r = Realization::new(&part, true);
            let (_, cf) = closed_form_centralizer(&part);
            assert_eq!(cf.span, centralizer_oracle(&r.algebra, &r.e).span, "{s}");
        }
    }

    #[test]
    fn xi_identities() {
        let part = p("5,1|3", Kind::Sl);
        let r = Realization::new(&part, false);
        let st = Strings::sl(&r.pyramid);
        for k in 0..5 {
            assert_eq!(st.e_power(k), r.e.pow(k));
        }
        let proj = st.xi(1, 1, 0).unwrap();
        assert_eq!(&proj * &proj, proj);
        assert!(st.xi(2, 1, 0).is_err());
        assert!(matches!(st.xi(9, 1, 0), Err(CentralizerError::UnknownString(9))));
    }

    #[test]
    fn epsilon_signs_match_formula() {
        for s in ["3|2", "2,2|1,1", "3,3|", "5,3,1|4,2,2", "3,1|2,2", "4,4|3,3", "1,1|2"] {
            let frame = AltFrame::new(&p(s, Kind::Osp).group().unwrap());
            for x in closed_form_osp(&frame) {
                if let XiFlavor::Pair { sign, .. } = x.flavor {
                    assert_eq!(sign, epsilon_formula(&frame, x.source, x.target, x.power), "{s} {x:?}");
                }
            }
        }
    }

    #[test]
    fn osp_three_two_example() {
        let part = p("3|2", Kind::Osp);
        let (elems, cf) = closed_form_centralizer(&part);
        assert_eq!(elems.len(), 4);
        let odd = elems.iter().filter(|x| matches!(x.flavor, XiFlavor::Pair { odd: true, .. })).count();
        assert!(odd > 0);
        assert!(is_bracket_closed(&cf));
    }
}
