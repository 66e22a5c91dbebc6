//! Labelled Dynkin diagrams read off a pyramid, the 2-free core and the
//! column statistics that go with it.
//!
//! Simple roots are written in the basis `ε_i` of the diagonal Cartan, with
//! `(ε_i, ε_j) = (-1)^{|i|} δ_ij` and `ε_i(h) = -col(i)`. Node kinds and edges
//! are then computed from the form, so the same code serves sl and osp.

use crate::partitions::{Kind, Parity, Partition, PartitionError};
use crate::pyramids::{build_osp, build_sl, Flavor, Pyramid};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    White,
    Grey,
    Black,
}

impl NodeKind {
    pub fn glyph(self) -> char {
        match self {
            NodeKind::White => 'O',
            NodeKind::Grey => 'X',
            NodeKind::Black => '*',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    /// Position `i` of `α_i` in the full diagram (1-based).
    pub index: usize,
    pub kind: NodeKind,
    pub label: i64,
    /// Coefficients of the root on `ε_1, …, ε_L`.
    pub root: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arrow {
    None,
    TowardsFrom,
    TowardsTo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: u32,
    pub arrow: Arrow,
    /// Set when the number of lines is not an integer.
    pub fractional_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledDiagram {
    pub kind: Kind,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

/// A weight `Σ c_i ε_i` together with the data needed to pair weights.
struct Weights {
    eta: Vec<Parity>,
    col: Vec<i32>,
}

impl Weights {
    fn form(&self, a: &[i32], b: &[i32]) -> i64 {
        a.iter()
            .zip(b)
            .zip(&self.eta)
            .map(|((x, y), p)| {
                let s = if *p == Parity::Even { 1 } else { -1 };
                s * (*x as i64) * (*y as i64)
            })
            .sum()
    }

    fn at_h(&self, a: &[i32]) -> i64 {
        a.iter().zip(&self.col).map(|(x, c)| -(*x as i64) * (*c as i64)).sum()
    }

    fn parity(&self, a: &[i32]) -> Parity {
        let odd = a.iter().zip(&self.eta).filter(|(x, p)| **p == Parity::Odd && *x % 2 != 0).count();
        Parity::from_bit((odd % 2) as u8)
    }

    fn unit(&self, i: usize) -> Vec<i32> {
        let mut v = vec![0; self.eta.len()];
        v[i] = 1;
        v
    }

    fn diff(&self, i: usize, j: usize, sign: i32) -> Vec<i32> {
        let mut v = self.unit(i);
        v[j] += sign;
        v
    }
}

/// Roots of the ambient algebra, used only for the smallest non-zero norm.
fn all_roots(w: &Weights, kind: Kind, odd_m: bool) -> Vec<Vec<i32>> {
    let l = w.eta.len();
    let mut out = Vec::new();
    for i in 0..l {
        for j in 0..l {
            if i != j {
                out.push(w.diff(i, j, -1));
                if kind == Kind::Osp {
                    out.push(w.diff(i, j, 1));
                }
            }
        }
        if kind == Kind::Osp {
            if odd_m {
                out.push(w.unit(i));
            }
            if w.eta[i] == Parity::Odd {
                out.push(w.unit(i).iter().map(|x| 2 * x).collect());
            }
        }
    }
    out
}

/// `μ_{αβ}` as a reduced fraction `(num, den)`.
fn lines(w: &Weights, a: &[i32], b: &[i32], min_norm: Option<i64>) -> (i64, i64) {
    let (na, nb, ab) = (w.form(a, a).abs(), w.form(b, b).abs(), w.form(a, b).abs());
    let (num, den) = match (na == 0, nb == 0) {
        (true, true) => (ab, 1),
        (false, false) => (2 * ab, na.min(nb)),
        _ => match min_norm {
            Some(m) => (2 * ab, m),
            None => (0, 1),
        },
    };
    let g = num_integer::gcd(num, den).max(1);
    (num / g, den / g)
}

/// Arrow for a multiple edge, comparing absolute norms.
fn arrow(w: &Weights, a: &[i32], b: &[i32]) -> Arrow {
    let (na, nb) = (w.form(a, a).abs(), w.form(b, b).abs());
    match (na == 0, nb == 0) {
        (false, false) if na > nb => Arrow::TowardsTo,
        (false, false) if na < nb => Arrow::TowardsFrom,
        (true, false) if nb < 2 => Arrow::TowardsTo,
        (true, false) if nb > 2 => Arrow::TowardsFrom,
        (false, true) if na < 2 => Arrow::TowardsFrom,
        (false, true) if na > 2 => Arrow::TowardsTo,
        _ => Arrow::None,
    }
}

fn assemble(kind: Kind, w: &Weights, roots: Vec<Vec<i32>>, odd_m: bool) -> LabelledDiagram {
    let min_norm = all_roots(w, kind, odd_m).iter().map(|r| w.form(r, r).abs()).filter(|&x| x != 0).min();
    let nodes: Vec<Node> = roots
        .iter()
        .enumerate()
        .map(|(t, r)| {
            let kind = match (w.parity(r), w.form(r, r)) {
                (Parity::Even, _) => NodeKind::White,
                (Parity::Odd, 0) => NodeKind::Grey,
                (Parity::Odd, _) => NodeKind::Black,
            };
            Node { index: t + 1, kind, label: w.at_h(r), root: r.clone() }
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..roots.len() {
        for b in (a + 1)..roots.len() {
            let (num, den) = lines(w, &roots[a], &roots[b], min_norm);
            if num == 0 {
                continue;
            }
            let whole = num % den == 0;
            let mult = (num / den) as u32;
            edges.push(Edge {
                from: a + 1,
                to: b + 1,
                multiplicity: if whole { mult } else { 0 },
                arrow: if whole && mult > 1 { arrow(w, &roots[a], &roots[b]) } else { Arrow::None },
                fractional_label: if whole { None } else { Some(format!("{num}/{den}")) },
            });
        }
    }
    LabelledDiagram { kind, nodes, edges }
}

/// Diagram of an sl pyramid: one node `ε_i - ε_{i+1}` per consecutive pair of boxes.
pub fn diagram_sl(py: &Pyramid) -> LabelledDiagram {
    assert_eq!(py.flavor, Flavor::Sl);
    let boxes = py.ordered();
    let w = Weights { eta: boxes.iter().map(|b| b.parity).collect(), col: boxes.iter().map(|b| b.col).collect() };
    let roots = (0..boxes.len().saturating_sub(1)).map(|i| w.diff(i, i + 1, -1)).collect();
    assemble(Kind::Sl, &w, roots, false)
}

/// Diagram of an osp pyramid.
///
/// Nodes `ε_i - ε_{i+1}` for `i < l+n`, then the last simple root: `ε_{l+n}`
/// for odd `m`, `2ε_{l+n}` when `|l+n| = 1`, and `ε_{l+n-1} + ε_{l+n}` when
/// `|l+n| = 0` and `m` is even.
pub fn diagram_osp(py: &Pyramid) -> LabelledDiagram {
    assert_eq!(py.flavor, Flavor::Osp);
    let part = &py.partition;
    let l = part.m() / 2 + part.n();
    let boxes: Vec<_> = py.ordered().into_iter().take(l).collect();
    let w = Weights { eta: boxes.iter().map(|b| b.parity).collect(), col: boxes.iter().map(|b| b.col).collect() };
    let odd_m = part.m() % 2 == 1;
    let mut roots: Vec<Vec<i32>> = (0..l.saturating_sub(1)).map(|i| w.diff(i, i + 1, -1)).collect();
    if l >= 1 {
        let last = l - 1;
        if odd_m {
            roots.push(w.unit(last));
        } else if w.eta[last] == Parity::Odd {
            roots.push(w.unit(last).iter().map(|x| 2 * x).collect());
        } else if l >= 2 {
            roots.push(w.diff(last - 1, last, 1));
        }
        // so(2): no roots at all
    }
    assemble(Kind::Osp, &w, roots, odd_m)
}

/// Diagram for a partition, built from its (standard) pyramid.
pub fn diagram(part: &Partition) -> Result<LabelledDiagram, PartitionError> {
    Ok(match part.kind() {
        Kind::Sl => diagram_sl(&build_sl(part)),
        Kind::Osp => diagram_osp(&build_osp(part)?),
    })
}

impl LabelledDiagram {
    pub fn labels(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.label).collect()
    }

    pub fn count_label(&self, label: i64) -> usize {
        self.nodes.iter().filter(|n| n.label == label).count()
    }

    pub fn label_sum(&self) -> i64 {
        self.nodes.iter().map(|n| n.label).sum()
    }

    /// The diagram with every node labelled 2 removed.
    pub fn two_free_core(&self) -> LabelledDiagram {
        let keep: Vec<usize> = self.nodes.iter().filter(|n| n.label != 2).map(|n| n.index).collect();
        LabelledDiagram {
            kind: self.kind,
            nodes: self.nodes.iter().filter(|n| n.label != 2).cloned().collect(),
            edges: self.edges.iter().filter(|e| keep.contains(&e.from) && keep.contains(&e.to)).cloned().collect(),
        }
    }

    /// Connected components, as lists of node indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        for n in &self.nodes {
            if seen.contains(&n.index) {
                continue;
            }
            let mut comp = vec![n.index];
            let mut stack = vec![n.index];
            seen.push(n.index);
            while let Some(x) = stack.pop() {
                for e in &self.edges {
                    let y = if e.from == x {
                        e.to
                    } else if e.to == x {
                        e.from
                    } else {
                        continue;
                    };
                    if !seen.contains(&y) {
                        seen.push(y);
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn edge(&self, a: usize, b: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| (e.from == a && e.to == b) || (e.from == b && e.to == a))
    }

    /// Text picture: the chain of consecutive nodes with labels beneath,
    /// then one line per edge that is not between neighbours.
    pub fn render(&self) -> String {
        let mut top = String::new();
        let mut bottom = String::new();
        for (t, n) in self.nodes.iter().enumerate() {
            if t > 0 {
                let prev = &self.nodes[t - 1];
                let link = match self.edge(prev.index, n.index) {
                    None => "   ".to_string(),
                    Some(e) => {
                        let body = match (e.multiplicity, &e.fractional_label) {
                            (_, Some(f)) => format!("({f})"),
                            (1, _) => "-".into(),
                            (2, _) => "=".into(),
                            (k, _) => format!("{k}"),
                        };
                        let body = match (e.arrow, e.from == prev.index) {
                            (Arrow::None, _) => body,
                            (Arrow::TowardsTo, true) | (Arrow::TowardsFrom, false) => format!("{body}>"),
                            _ => format!("<{body}"),
                        };
                        body
                    }
                };
                top.push_str(&link);
                bottom.push_str(&" ".repeat(link.chars().count()));
            }
            top.push(n.kind.glyph());
            let lab = n.label.to_string();
            bottom.push_str(&lab);
            if lab.len() > 1 {
                top.push_str(&" ".repeat(lab.len() - 1));
            }
        }
        let mut out = format!("{}\n{}\n", top.trim_end(), bottom.trim_end());
        let pos: BTreeMap<usize, usize> = self.nodes.iter().enumerate().map(|(t, n)| (n.index, t)).collect();
        for e in &self.edges {
            if pos[&e.to] != pos[&e.from] + 1 {
                let desc = match &e.fractional_label {
                    Some(f) => format!("({f})"),
                    None => ["", "-", "=", "3"][e.multiplicity.min(3) as usize].to_string(),
                };
                let _ = writeln!(out, "a{} {} a{}", e.from, desc, e.to);
            }
        }
        out
    }
}

/// The 2-free core together with the column statistics `k`, `τ`, `ν_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreData {
    pub core: LabelledDiagram,
    /// Smallest `k ≥ 0` whose column holds no boxes.
    pub k: i32,
    pub tau: usize,
    pub nu0: usize,
    pub n2: usize,
    pub label_sum: i64,
}

/// Statistics of `Δ` and the pyramid it came from.
///
/// `τ` counts balanced columns `r_i = s_i ≠ 0` beyond `k` (both sides for
/// sl, positive side for osp). `ν_0` is 1 for sl when the middle columns
/// `-k < i < k` exist and are balanced in total, and 0 for osp.
pub fn core_data(d: &LabelledDiagram, py: &Pyramid) -> CoreData {
    let counts = py.column_counts();
    let k = (0..).find(|c| !counts.contains_key(c)).expect("pyramids are finite");
    let tau = counts
        .iter()
        .filter(|(&c, &(r, s))| r == s && r > 0 && (c > k || (d.kind == Kind::Sl && c < -k)))
        .count();
    let (mr, ms) = counts.iter().filter(|(&c, _)| c.abs() < k).fold((0, 0), |(a, b), (_, &(r, s))| (a + r, b + s));
    let nu0 = usize::from(d.kind == Kind::Sl && k > 0 && mr == ms);
    CoreData { core: d.two_free_core(), k, tau, nu0, n2: d.count_label(2), label_sum: d.label_sum() }
}

/// One simple summand of `g_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G0Block {
    /// Columns of the pyramid the block acts on.
    pub columns: Vec<i32>,
    /// Nilpotent `e_0` restricted to the block, as a partition of the block's
    /// kind; outer blocks carry the zero orbit.
    pub partition: Partition,
    pub middle: bool,
}

/// `g_0` with the induced nilpotent `e_0`, block by block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G0 {
    pub blocks: Vec<G0Block>,
}

fn ones(r: usize, s: usize) -> (Vec<u32>, Vec<u32>) {
    (vec![1; r], vec![1; s])
}

/// Blocks of `g_0`: an `sl(r_i|s_i)` with `e_0 = 0` for every occupied column
/// beyond `k` (only `i > k` for osp, the mirror being identified by the
/// form), and a middle `sl` or `osp` block on columns `|i| < k` carrying
/// the Jordan type `min(λ_j, k)`.
pub fn build_g0_and_e0(cd: &CoreData, py: &Pyramid) -> G0 {
    let part = &py.partition;
    let k = cd.k;
    let mut blocks = Vec::new();
    let counts = py.column_counts();
    for (&c, &(r, s)) in &counts {
        let outer = c > k || (part.kind() == Kind::Sl && c < -k);
        if outer {
            let (p, q) = ones(r, s);
            let p = Partition::new(p, q, Kind::Sl).expect("column block");
            blocks.push(G0Block { columns: vec![c], partition: p, middle: false });
        }
    }
    let cut = |v: &[u32]| -> Vec<u32> { v.iter().map(|&x| x.min(k as u32)).filter(|&x| x > 0).collect() };
    let (p, q) = (cut(part.p()), cut(part.q()));
    if !p.is_empty() || !q.is_empty() {
        let mid = Partition::new(p, q, part.kind()).expect("truncation keeps the parity rules");
        let columns = counts.keys().copied().filter(|c| c.abs() < k).collect();
        blocks.insert(0, G0Block { columns, partition: mid, middle: true });
    }
    G0 { blocks }
}

impl G0 {
    pub fn middle(&self) -> Option<&G0Block> {
        self.blocks.iter().find(|b| b.middle)
    }
}
