//! Matrix realizations of `gl(m|n)`, `sl(m|n)` and `osp(m|2n)`.
//!
//! A [`SuperMatrix`] carries the parity of every basis vector of the
//! underlying super vector space explicitly, because the bases coming from
//! pyramids interleave even and odd vectors.

use crate::exactlin::{kernel_of_images, q, Q, RationalMatrix, Subspace};
use crate::partitions::{GroupedPartition, Parity};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuperError {
    #[error("matrices refer to different bases")]
    FrameMismatch,
    #[error("invalid parity sequence: {0}")]
    InvalidEta(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(i32),
}

/// Which ordered basis of `V` the coordinates refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Frame {
    /// Plain `(m|n)` ordering: even vectors first.
    Standard,
    /// Numbering of an sl pyramid.
    Sl,
    /// The basis `v_1, …, v_L, (v_0), v_{-L}, …, v_{-1}` of an osp pyramid.
    OspStd,
    /// Jordan basis `e^k u_i` of the alternative pyramid.
    Alt,
    /// Block-diagonal realization of a reductive subalgebra.
    Block,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperSpace {
    pub parity: Vec<Parity>,
    pub frame: Frame,
}

impl SuperSpace {
    pub fn new(parity: Vec<Parity>, frame: Frame) -> Arc<Self> {
        Arc::new(SuperSpace { parity, frame })
    }

    /// `(m|n)` with the even vectors first.
    pub fn standard(m: usize, n: usize) -> Arc<Self> {
        let mut p = vec![Parity::Even; m];
        p.extend(std::iter::repeat_n(Parity::Odd, n));
        Self::new(p, Frame::Standard)
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// `(dim V_0, dim V_1)`.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|p| **p == Parity::Odd).count();
        (self.parity.len() - odd, odd)
    }

    /// Parity of the matrix unit `e_{ij}`.
    pub fn unit_parity(&self, i: usize, j: usize) -> Parity {
        self.parity[i] + self.parity[j]
    }
}

/// An endomorphism of a super vector space, in a fixed basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    space: Arc<SuperSpace>,
    data: Vec<Q>,
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperMatrix{:?}{:?}", self.space.frame, self.triples())
    }
}

/// Sparse `(row, col, value)` entry with the value rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

impl SuperMatrix {
    pub fn zeros(space: &Arc<SuperSpace>) -> Self {
        let n = space.dim();
        SuperMatrix { space: space.clone(), data: vec![Q::zero(); n * n] }
    }

    pub fn identity(space: &Arc<SuperSpace>) -> Self {
        let mut x = Self::zeros(space);
        for i in 0..space.dim() {
            x.set(i, i, Q::one());
        }
        x
    }

    /// Matrix unit `e_{ij}` (0-based).
    pub fn unit(space: &Arc<SuperSpace>, i: usize, j: usize) -> Self {
        let mut x = Self::zeros(space);
        x.set(i, j, Q::one());
        x
    }

    pub fn from_matrix(space: &Arc<SuperSpace>, m: &RationalMatrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (space.dim(), space.dim()), "size mismatch");
        SuperMatrix { space: space.clone(), data: m.data().to_vec() }
    }

    /// Rebuild from row-major coordinates.
    pub fn from_flat(space: &Arc<SuperSpace>, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), space.dim() * space.dim(), "size mismatch");
        SuperMatrix { space: space.clone(), data }
    }

    pub fn space(&self) -> &Arc<SuperSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        let n = self.dim();
        self.data[i * n + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Q) {
        let n = self.dim();
        self.data[i * n + j] += v;
    }

    pub fn flat(&self) -> &[Q] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Q> {
        self.data
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_vec(self.dim(), self.dim(), self.data.clone()).expect("square")
    }

    pub fn same_frame(&self, other: &SuperMatrix) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn part(&self, parity: Parity) -> SuperMatrix {
        let n = self.dim();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if self.space.unit_parity(i, j) != parity {
                    out.data[i * n + j] = Q::zero();
                }
            }
        }
        out
    }

    /// Block-diagonal component.
    pub fn even_part(&self) -> SuperMatrix {
        self.part(Parity::Even)
    }

    /// Off-diagonal component.
    pub fn odd_part(&self) -> SuperMatrix {
        self.part(Parity::Odd)
    }

    /// `Some(parity)` if the matrix is homogeneous and non-zero.
    pub fn parity(&self) -> Option<Parity> {
        let n = self.dim();
        let mut seen = None;
        for i in 0..n {
            for j in 0..n {
                if self.data[i * n + j].is_zero() {
                    continue;
                }
                let p = self.space.unit_parity(i, j);
                match seen {
                    None => seen = Some(p),
                    Some(s) if s != p => return None,
                    _ => {}
                }
            }
        }
        seen
    }

    pub fn is_even(&self) -> bool {
        self.odd_part().is_zero()
    }

    pub fn scale(&self, c: &Q) -> SuperMatrix {
        SuperMatrix {
            space: self.space.clone(),
            data: self.data.iter().map(|x| if x.is_zero() { Q::zero() } else { x * c }).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SuperMatrix {
        let mut out = SuperMatrix::identity(&self.space);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn transpose(&self) -> SuperMatrix {
        let n = self.dim();
        let mut out = SuperMatrix::zeros(&self.space);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    /// Rank of the underlying matrix.
    pub fn rank(&self) -> usize {
        self.to_matrix().rank()
    }

    /// Apply to a coordinate vector.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.data[i * n..(i + 1) * n].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Non-zero entries in row-major order.
    pub fn triples(&self) -> Vec<Triple> {
        let n = self.dim();
        let mut out = Vec::new();
        for (t, x) in self.data.iter().enumerate() {
            if !x.is_zero() {
                out.push(Triple { row: t / n, col: t % n, value: crate::exactlin::fmt_q(x) });
            }
        }
        out
    }

    fn assert_frame(&self, other: &SuperMatrix) {
        assert!(self.same_frame(other), "matrices refer to different bases");
    }
}

impl<'a> Add<&'a SuperMatrix> for &'a SuperMatrix {
    type Output = SuperMatrix;
    fn add(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.assert_frame(rhs);
        SuperMatrix { space: self.space.clone(), data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a SuperMatrix> for &'a SuperMatrix {
    type Output = SuperMatrix;
    fn sub(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.assert_frame(rhs);
        SuperMatrix { space: self.space.clone(), data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &SuperMatrix {
    type Output = SuperMatrix;
    fn neg(self) -> SuperMatrix {
        SuperMatrix { space: self.space.clone(), data: self.data.iter().map(|a| -a).collect() }
    }
}

impl<'a> Mul<&'a SuperMatrix> for &'a SuperMatrix {
    type Output = SuperMatrix;
    fn mul(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.assert_frame(rhs);
        let n = self.dim();
        let mut out = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        SuperMatrix { space: self.space.clone(), data: out }
    }
}

/// `str(x)`: trace of the even-even block minus trace of the odd-odd block.
pub fn supertrace(x: &SuperMatrix) -> Q {
    let mut acc = Q::zero();
    for (i, p) in x.space.parity.iter().enumerate() {
        match p {
            Parity::Even => acc += x.get(i, i),
            Parity::Odd => acc -= x.get(i, i),
        }
    }
    acc
}

/// Bracket without the frame check: `xy - yx + 2 y_1 x_1`, which is the
/// bilinear extension of `xy - (-1)^{|x||y|} yx`.
pub(crate) fn bracket(x: &SuperMatrix, y: &SuperMatrix) -> SuperMatrix {
    let mut out = &(x * y) - &(y * x);
    let (x1, y1) = (x.odd_part(), y.odd_part());
    if !x1.is_zero() && !y1.is_zero() {
        let t = &y1 * &x1;
        out = &out + &t.scale(&q(2));
    }
    out
}

/// Bracket of two homogeneous matrices with known parities.
pub(crate) fn bracket_homogeneous(x: &SuperMatrix, px: Parity, y: &SuperMatrix, py: Parity) -> SuperMatrix {
    if px == Parity::Odd && py == Parity::Odd {
        &(x * y) + &(y * x)
    } else {
        &(x * y) - &(y * x)
    }
}

/// The supercommutator, extended bilinearly over parity components.
pub fn supercommutator(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix, SuperError> {
    if !x.same_frame(y) {
        return Err(SuperError::FrameMismatch);
    }
    Ok(bracket(x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraKind {
    Gl,
    Sl,
    Osp,
}

/// A matrix Lie superalgebra given by a homogeneous basis.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub kind: AlgebraKind,
    space: Arc<SuperSpace>,
    gram: Option<RationalMatrix>,
    basis: Vec<SuperMatrix>,
    span: Subspace,
}

impl Algebra {
    fn from_basis(kind: AlgebraKind, space: Arc<SuperSpace>, gram: Option<RationalMatrix>, basis: Vec<SuperMatrix>) -> Self {
        let n = space.dim();
        let span = Subspace::from_vectors(n * n, basis.iter().map(|b| b.flat().to_vec()));
        Algebra { kind, space, gram, basis, span }
    }

    /// `gl(V)`: all matrix units.
    pub fn gl(space: &Arc<SuperSpace>) -> Self {
        let n = space.dim();
        let basis = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| SuperMatrix::unit(space, i, j)).collect();
        Self::from_basis(AlgebraKind::Gl, space.clone(), None, basis)
    }

    /// `sl(V)`: off-diagonal units plus supertrace-free diagonal differences.
    pub fn sl(space: &Arc<SuperSpace>) -> Self {
        let n = space.dim();
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    basis.push(SuperMatrix::unit(space, i, j));
                }
            }
        }
        let sgn = |p: Parity| if p == Parity::Even { q(1) } else { q(-1) };
        for i in 0..n.saturating_sub(1) {
            let mut x = SuperMatrix::zeros(space);
            x.set(i, i, sgn(space.parity[i]));
            x.set(i + 1, i + 1, -sgn(space.parity[i + 1]));
            basis.push(x);
        }
        Self::from_basis(AlgebraKind::Sl, space.clone(), None, basis)
    }

    /// `osp` of a given even supersymmetric non-degenerate form, solved
    /// directly from the defining identity.
    pub fn osp_from_form(space: &Arc<SuperSpace>, gram: &RationalMatrix) -> Self {
        let n = space.dim();
        let units: Vec<Vec<Q>> = (0..n * n)
            .map(|t| {
                let x = SuperMatrix::unit(space, t / n, t % n);
                form_defect(&x, gram)
            })
            .collect();
        let ker = kernel_of_images(&units, n * n);
        let basis = homogeneous_basis(space, ker.basis());
        Self::from_basis(AlgebraKind::Osp, space.clone(), Some(gram.clone()), basis)
    }

    /// `osp(m|2n)` in the standard basis with the explicit sign rules.
    pub fn osp(structure: &OspStructure) -> Self {
        Self::from_basis(AlgebraKind::Osp, structure.space(), Some(structure.gram()), structure.explicit_basis())
    }

    pub fn space(&self) -> &Arc<SuperSpace> {
        &self.space
    }

    pub fn gram(&self) -> Option<&RationalMatrix> {
        self.gram.as_ref()
    }

    pub fn basis(&self) -> &[SuperMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Span of the basis inside the flattened `gl(V)`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Membership by echelon coordinates.
    pub fn contains(&self, x: &SuperMatrix) -> bool {
        x.same_frame(&SuperMatrix::zeros(&self.space)) && self.span.contains(x.flat())
    }

    /// Membership through the defining identity (`str = 0` for sl, form identity for osp).
    pub fn satisfies_definition(&self, x: &SuperMatrix) -> bool {
        match self.kind {
            AlgebraKind::Gl => true,
            AlgebraKind::Sl => supertrace(x).is_zero(),
            AlgebraKind::Osp => form_identity_holds(x, self.gram.as_ref().expect("osp has a form")),
        }
    }

    /// Homogeneous basis elements of the given parity.
    pub fn graded_basis(&self, parity: Parity) -> Vec<SuperMatrix> {
        self.basis.iter().filter(|b| b.parity() == Some(parity)).cloned().collect()
    }
}

/// Replace a spanning set of flattened matrices by homogeneous pieces.
/// The span must itself be graded.
pub fn homogeneous_basis(space: &Arc<SuperSpace>, vecs: &[Vec<Q>]) -> Vec<SuperMatrix> {
    let n = space.dim();
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let parts = vecs.iter().map(|v| SuperMatrix::from_flat(space, v.clone()).part(parity).into_flat());
        let sub = Subspace::from_vectors(n * n, parts);
        out.extend(sub.basis().iter().map(|v| SuperMatrix::from_flat(space, v.clone())));
    }
    out
}

/// `gl(m|n)` basis in the standard ordering.
pub fn gl_basis(m: usize, n: usize) -> Vec<SuperMatrix> {
    Algebra::gl(&SuperSpace::standard(m, n)).basis
}

/// `sl(m|n)` basis in the standard ordering.
pub fn sl_basis(m: usize, n: usize) -> Vec<SuperMatrix> {
    Algebra::sl(&SuperSpace::standard(m, n)).basis
}

/// `osp(m|2n)` basis for the standard basis attached to `eta`.
pub fn osp_basis(m: usize, eta: &[Parity]) -> Result<Vec<SuperMatrix>, SuperError> {
    Ok(OspStructure::new(m, eta.to_vec())?.explicit_basis())
}

/// Entries of `x^T G + D G x` where `D_{ab} = (-1)^{(p_a+p_b) p_a}`; this is
/// the defining identity `B(xv,w) = -(-1)^{|x||v|} B(v,xw)` on basis vectors,
/// written so that it is linear in non-homogeneous `x` as well.
fn form_defect(x: &SuperMatrix, gram: &RationalMatrix) -> Vec<Q> {
    let n = x.dim();
    let par = &x.space.parity;
    let mut out = vec![Q::zero(); n * n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = Q::zero();
            for c in 0..n {
                let xc = x.get(c, a);
                let g = gram.get(c, b);
                if !xc.is_zero() && !g.is_zero() {
                    acc += xc * g;
                }
            }
            let mut acc2 = Q::zero();
            for d in 0..n {
                let g = gram.get(a, d);
                let xd = x.get(d, b);
                if !g.is_zero() && !xd.is_zero() {
                    acc2 += g * xd;
                }
            }
            let flip = par[a].bit() & (par[a] + par[b]).bit() == 1;
            if flip {
                acc -= acc2;
            } else {
                acc += acc2;
            }
            out[a * n + b] = acc;
        }
    }
    out
}

/// `B(xv, w) = -(-1)^{|x||v|} B(v, xw)` for all basis vectors `v, w`.
pub fn form_identity_holds(x: &SuperMatrix, gram: &RationalMatrix) -> bool {
    form_defect(x, gram).iter().all(|v| v.is_zero())
}

/// `B(v, w)` for coordinate vectors.
pub fn form_value(gram: &RationalMatrix, v: &[Q], w: &[Q]) -> Q {
    let gw = gram.mul_vec(w).expect("sizes agree");
    v.iter().zip(&gw).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

/// Whether `g` preserves the form: `B(gv, gw) = B(v, w)`.
pub fn preserves_form(g: &SuperMatrix, gram: &RationalMatrix) -> bool {
    let gm = g.to_matrix();
    let lhs = gm.transpose().mul(gram).and_then(|t| t.mul(&gm)).expect("square");
    lhs == *gram
}

/// Sign data of the standard basis of `osp(m|2n)`.
///
/// Indices run over `1..=L`, `0` (when `m` is odd) and `-L..=-1` with
/// `L = floor(m/2) + n`; `eta[i-1]` is the parity of `v_{±i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OspStructure {
    m: usize,
    eta: Vec<Parity>,
}

impl OspStructure {
    pub fn new(m: usize, eta: Vec<Parity>) -> Result<Self, SuperError> {
        let zeros = eta.iter().filter(|p| **p == Parity::Even).count();
        if zeros != m / 2 {
            return Err(SuperError::InvalidEta(format!("expected {} even entries, found {zeros}", m / 2)));
        }
        Ok(OspStructure { m, eta })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.eta.len() - self.m / 2
    }

    /// `L = l + n`.
    pub fn half(&self) -> usize {
        self.eta.len()
    }

    pub fn eta(&self) -> &[Parity] {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.m + 2 * self.n()
    }

    /// Parity of `v_i`.
    pub fn eta_of(&self, i: i32) -> Parity {
        if i == 0 {
            Parity::Even
        } else {
            self.eta[i.unsigned_abs() as usize - 1]
        }
    }

    /// Position of `v_i` in the ordered basis.
    pub fn pos(&self, i: i32) -> usize {
        let l = self.half() as i32;
        assert!(i.abs() <= l && (i != 0 || self.m % 2 == 1), "index {i} not in the basis");
        if i > 0 {
            (i - 1) as usize
        } else if i == 0 {
            l as usize
        } else {
            (self.dim() as i32 + i) as usize
        }
    }

    /// Inverse of [`OspStructure::pos`].
    pub fn index_at(&self, pos: usize) -> i32 {
        let l = self.half();
        if pos < l {
            pos as i32 + 1
        } else if self.m % 2 == 1 && pos == l {
            0
        } else {
            pos as i32 - self.dim() as i32
        }
    }

    pub fn indices(&self) -> Vec<i32> {
        (0..self.dim()).map(|p| self.index_at(p)).collect()
    }

    pub fn space(&self) -> Arc<SuperSpace> {
        SuperSpace::new(self.indices().into_iter().map(|i| self.eta_of(i)).collect(), Frame::OspStd)
    }

    /// Gram matrix of `B`: `B(v_i, v_{-i}) = -1` exactly when `v_i` is odd and `i < 0`.
    pub fn gram(&self) -> RationalMatrix {
        let d = self.dim();
        let mut g = RationalMatrix::zeros(d, d);
        for i in self.indices() {
            let v = if self.eta_of(i) == Parity::Odd && i < 0 { -1 } else { 1 };
            g.set(self.pos(i), self.pos(-i), q(v));
        }
        g
    }

    /// The sign `γ_{-k,-j}` in `E_{j,k} + γ_{-k,-j} E_{-k,-j}`.
    pub fn gamma(&self, j: i32, k: i32) -> i64 {
        let (ej, ek) = (self.eta_of(j), self.eta_of(k));
        if j == 0 {
            return if ek == Parity::Even { -1 } else { 1 };
        }
        if k == 0 {
            return -1;
        }
        if ej == ek {
            if ej == Parity::Odd && j * k < 0 {
                1
            } else {
                -1
            }
        } else {
            let s = |x: i32| if x > 0 { 1 } else { -1 };
            -(ej.bit() as i64) * s(j) + (ek.bit() as i64) * s(k)
        }
    }

    /// `E_{j,k}` as a matrix.
    pub fn unit(&self, space: &Arc<SuperSpace>, j: i32, k: i32) -> SuperMatrix {
        SuperMatrix::unit(space, self.pos(j), self.pos(k))
    }

    /// Basis with the entries above the skew diagonal fixed to `+1`.
    pub fn explicit_basis(&self) -> Vec<SuperMatrix> {
        let space = self.space();
        let l = self.half() as i32;
        let has_zero = self.m % 2 == 1;
        let mut out = Vec::new();
        for i in (1..=l).flat_map(|i| [i, -i]) {
            if self.eta_of(i) == Parity::Odd {
                out.push(self.unit(&space, i, -i));
            }
        }
        let idx: Vec<i32> = self.indices();
        for &j in &idx {
            for &k in &idx {
                let wanted = (j > 0 && k > 0)
                    || (has_zero && j == 0 && k > 0)
                    || (has_zero && j > 0 && k == 0)
                    || (j * k < 0 && j + k < 0);
                if !wanted {
                    continue;
                }
                let mut x = self.unit(&space, j, k);
                x.add_at(self.pos(-k), self.pos(-j), &q(self.gamma(j, k)));
                out.push(x);
            }
        }
        out
    }
}

/// One Jordan string `u_i, e u_i, …, e^{λ-1} u_i` of the alternative frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AltString {
    /// `1..=a` for singles, `±(a+1)…` for paired strings.
    pub label: i32,
    pub size: u32,
    pub parity: Parity,
    pub offset: usize,
}

/// Jordan basis adapted to the grouped notation, with its own Gram matrix.
///
/// Strings appear in the order `1, …, a, a+1, -(a+1), a+2, …`; within a
/// string the vectors are `e^k u_i` for `k = 0..λ_i`. The form is
/// `B(e^k u_i, e^h u_{i*}) = (-1)^k θ_i` when `k + h = λ_i - 1`, with
/// `θ_i = 1` for `i > 0` and the other values forced by supersymmetry.
#[derive(Clone, Debug)]
pub struct AltFrame {
    pub grouped: GroupedPartition,
    pub strings: Vec<AltString>,
    space: Arc<SuperSpace>,
    gram: RationalMatrix,
}

impl AltFrame {
    pub fn new(grouped: &GroupedPartition) -> Self {
        let mut strings = Vec::new();
        let mut offset = 0usize;
        for i in 1..=grouped.b() {
            let pt = grouped.part(i).expect("string exists");
            let labels: Vec<i32> = if i <= grouped.a() { vec![i as i32] } else { vec![i as i32, -(i as i32)] };
            for label in labels {
                strings.push(AltString { label, size: pt.size, parity: pt.parity, offset });
                offset += pt.size as usize;
            }
        }
        let parity: Vec<Parity> = strings.iter().flat_map(|s| std::iter::repeat_n(s.parity, s.size as usize)).collect();
        let space = SuperSpace::new(parity, Frame::Alt);
        let mut gram = RationalMatrix::zeros(offset, offset);
        let sgn = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
        for s in &strings {
            let lam = s.size;
            let star = if (s.label as usize) <= grouped.a() { s.label } else { -s.label };
            let t = strings.iter().find(|t| t.label == star).expect("partner string");
            for k in 0..lam {
                let h = lam - 1 - k;
                let v = if s.label > 0 {
                    sgn(k)
                } else {
                    // B(e^k u_{-i}, e^h u_i) = (-1)^p B(e^h u_i, e^k u_{-i})
                    sgn(h) * if s.parity == Parity::Odd { -1 } else { 1 }
                };
                gram.set(s.offset + k as usize, t.offset + h as usize, q(v as i64));
            }
        }
        AltFrame { grouped: grouped.clone(), strings, space, gram }
    }

    pub fn space(&self) -> &Arc<SuperSpace> {
        &self.space
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn string(&self, label: i32) -> Option<&AltString> {
        self.strings.iter().find(|s| s.label == label)
    }

    /// Position of `e^k u_label`.
    pub fn index(&self, label: i32, k: u32) -> Result<usize, SuperError> {
        let s = self.string(label).ok_or(SuperError::IndexOutOfRange(label))?;
        if k >= s.size {
            return Err(SuperError::IndexOutOfRange(k as i32));
        }
        Ok(s.offset + k as usize)
    }

    /// `i*`: `i` for singles, `-i` for paired strings.
    pub fn star(&self, label: i32) -> i32 {
        if label > 0 && (label as usize) <= self.grouped.a() {
            label
        } else {
            -label
        }
    }

    /// `θ_i = B(u_i, e^{λ_i - 1} u_{i*})`, read off the form.
    pub fn theta(&self, label: i32) -> i64 {
        let s = self.string(label).expect("string");
        let a = self.index(label, 0).expect("index");
        let b = self.index(self.star(label), s.size - 1).expect("index");
        crate::exactlin::to_i64(self.gram.get(a, b)).expect("integer form")
    }

    /// The shift `e^k u_i -> e^{k+1} u_i`.
    pub fn e(&self) -> SuperMatrix {
        let mut x = SuperMatrix::zeros(&self.space);
        for s in &self.strings {
            for k in 0..s.size.saturating_sub(1) as usize {
                x.set(s.offset + k + 1, s.offset + k, Q::one());
            }
        }
        x
    }

    /// `h` with eigenvalue `2k - (λ_i - 1)` on `e^k u_i`.
    pub fn h(&self) -> SuperMatrix {
        let mut x = SuperMatrix::zeros(&self.space);
        for s in &self.strings {
            for k in 0..s.size {
                let t = s.offset + k as usize;
                x.set(t, t, q(2 * k as i64 - (s.size as i64 - 1)));
            }
        }
        x
    }

    /// `osp` of this frame's form.
    pub fn algebra(&self) -> Algebra {
        Algebra::osp_from_form(&self.space, &self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{Kind, Partition};

    fn eta(bits: &[u8]) -> Vec<Parity> {
        bits.iter().map(|b| Parity::from_bit(*b)).collect()
    }

    #[test]
    fn supertrace_examples() {
        let s = SuperSpace::standard(3, 0);
        assert_eq!(supertrace(&SuperMatrix::identity(&s)), q(3));
        let s = SuperSpace::standard(2, 2);
        assert_eq!(supertrace(&SuperMatrix::identity(&s)), q(0));
        assert_eq!(supertrace(&SuperMatrix::unit(&s, 0, 3)), q(0));
    }

    #[test]
    fn bracket_examples() {
        let s = SuperSpace::standard(2, 0);
        let c = supercommutator(&SuperMatrix::unit(&s, 0, 1), &SuperMatrix::unit(&s, 1, 0)).unwrap();
        let want = &SuperMatrix::unit(&s, 0, 0) - &SuperMatrix::unit(&s, 1, 1);
        assert_eq!(c, want);
        let s = SuperSpace::standard(1, 1);
        let x = &SuperMatrix::unit(&s, 0, 1) + &SuperMatrix::unit(&s, 1, 0);
        assert_eq!(supercommutator(&x, &x).unwrap(), (&x * &x).scale(&q(2)));
        let other = SuperSpace::standard(2, 0);
        assert_eq!(supercommutator(&x, &SuperMatrix::zeros(&other)), Err(SuperError::FrameMismatch));
    }

    #[test]
    fn gl_sl_dims() {
        assert_eq!(gl_basis(1, 1).len(), 4);
        assert_eq!(sl_basis(2, 1).len(), 8);
        let sl11 = Algebra::sl(&SuperSpace::standard(1, 1));
        assert!(sl11.contains(&SuperMatrix::identity(sl11.space())));
        let sl21 = Algebra::sl(&SuperSpace::standard(2, 1));
        assert!(!sl21.contains(&SuperMatrix::identity(sl21.space())));
    }

    #[test]
    fn osp_3_2_matches_example() {
        let st = OspStructure::new(3, eta(&[0, 1])).unwrap();
        let alg = Algebra::osp(&st);
        assert_eq!(alg.dim(), 12);
        // the 12-parameter matrix with a=1, b=2, ..., s=12 in reading order
        let m = RationalMatrix::from_i64(&[
            vec![1, 2, 3, 4, 0],
            vec![5, 6, 7, 8, -4],
            vec![9, 10, 0, -7, -3],
            vec![11, 12, 10, -6, 2],
            vec![0, 11, -9, -5, -1],
        ]);
        assert!(alg.contains(&SuperMatrix::from_matrix(alg.space(), &m)));
        let generic = Algebra::osp_from_form(alg.space(), &st.gram());
        assert_eq!(generic.span(), alg.span());
    }

    #[test]
    fn osp_dimensions_and_identity() {
        for (m, e) in [(2, vec![0, 1]), (1, vec![]), (4, vec![1, 0, 0]), (5, vec![0, 1, 0, 1]), (0, vec![1, 1])] {
            let st = OspStructure::new(m, eta(&e)).unwrap();
            let n = st.n();
            let alg = Algebra::osp(&st);
            let want = (m * m - m) / 2 + 2 * n * n + n + 2 * m * n;
            assert_eq!(alg.dim(), want, "m={m} eta={e:?}");
            assert_eq!(alg.basis().len(), want);
            for b in alg.basis() {
                assert!(alg.satisfies_definition(b));
                assert!(b.parity().is_some());
            }
            assert!(!alg.contains(&SuperMatrix::identity(alg.space())) || st.dim() == 0);
        }
    }

    #[test]
    fn invalid_eta() {
        assert!(OspStructure::new(3, eta(&[1, 1])).is_err());
    }

    #[test]
    fn alt_frame_form() {
        for s in ["3|2", "2,2|1,1", "5,3,3,1|4,2,2", "3,3|"] {
            let part = Partition::parse(s, Kind::Osp).unwrap();
            let fr = AltFrame::new(&part.group().unwrap());
            let g = fr.gram();
            // supersymmetric and non-degenerate
            for a in 0..fr.dim() {
                for b in 0..fr.dim() {
                    let sign = if fr.space().parity[a] == Parity::Odd && fr.space().parity[b] == Parity::Odd { -1 } else { 1 };
                    assert_eq!(g.get(a, b), &(g.get(b, a) * q(sign)), "{s}");
                }
            }
            assert_eq!(g.rank(), fr.dim());
            let alg = fr.algebra();
            assert!(alg.contains(&fr.e()), "{s}");
            assert!(alg.contains(&fr.h()), "{s}");
            for st in &fr.strings {
                assert_eq!(fr.theta(st.label).abs(), 1);
            }
        }
    }
}
