//! Dynkin pyramids: the sl pyramid, the ortho-symplectic pyramid and the
//! alternative pyramid used for centralizer bases in the osp case.

use crate::partitions::{GroupedPartition, Kind, Parity, Partition, PartitionError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Sl,
    Osp,
    Alt,
}

/// Identifier written in a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoxLabel {
    /// Position in the numbering (sl: 1..m+n; osp: ±1..±(l+n) and 0).
    Num(i32),
    /// `i_j` in the alternative pyramid: string `i` (signed for paired strings), index `j`.
    Alt { string: i32, index: i32 },
    /// Crossed-out box.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBox {
    pub label: BoxLabel,
    pub row: i32,
    pub col: i32,
    pub parity: Parity,
    pub crossed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowKind {
    Full,
    /// Row 0 of an osp pyramid when m is odd.
    Zeroth,
    /// Even skew row (upper half) built from a pair `c > b` of odd parts.
    EvenSkew,
    /// Odd skew row (upper half) built from an even part of q.
    OddSkew,
    /// Mirror image of a skew row.
    MirrorSkew,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowMeta {
    pub row: i32,
    pub kind: RowKind,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pyramid {
    pub flavor: Flavor,
    pub partition: Partition,
    pub boxes: Vec<PBox>,
    pub rows: Vec<RowMeta>,
}

fn full_cols(len: u32) -> Vec<i32> {
    let l = len as i32;
    (0..l).map(|t| 1 - l + 2 * t).collect()
}

impl Pyramid {
    /// Non-crossed boxes in basis order.
    ///
    /// For sl and osp pyramids this is the numbering order (columns left to
    /// right, top to bottom within a column), which is also the order of the
    /// standard basis. For the alternative pyramid it is the Jordan-basis
    /// order used by [`crate::superalgebra::alt_frame`].
    pub fn ordered(&self) -> Vec<PBox> {
        let mut v: Vec<PBox> = self.boxes.iter().filter(|b| !b.crossed).copied().collect();
        match self.flavor {
            Flavor::Sl | Flavor::Osp => v.sort_by(|a, b| a.col.cmp(&b.col).then(b.row.cmp(&a.row))),
            Flavor::Alt => {}
        }
        v
    }

    /// Number of non-crossed boxes.
    pub fn size(&self) -> usize {
        self.boxes.iter().filter(|b| !b.crossed).count()
    }

    /// `col -> (r, s)`: even and odd box counts per column (crossed boxes excluded).
    pub fn column_counts(&self) -> BTreeMap<i32, (usize, usize)> {
        let mut m: BTreeMap<i32, (usize, usize)> = BTreeMap::new();
        for b in self.boxes.iter().filter(|b| !b.crossed) {
            let e = m.entry(b.col).or_default();
            match b.parity {
                Parity::Even => e.0 += 1,
                Parity::Odd => e.1 += 1,
            }
        }
        m
    }

    pub fn row_meta(&self, row: i32) -> Option<RowMeta> {
        self.rows.iter().find(|r| r.row == row).copied()
    }

    /// Box at a position, if present and not crossed.
    pub fn box_at(&self, row: i32, col: i32) -> Option<PBox> {
        self.boxes.iter().find(|b| !b.crossed && b.row == row && b.col == col).copied()
    }

    /// Deterministic ASCII picture; `labels` writes box labels instead of parity glyphs.
    pub fn render(&self, labels: bool) -> String {
        if self.boxes.is_empty() {
            return String::new();
        }
        let cmin = self.boxes.iter().map(|b| b.col).min().unwrap_or(0) - 1;
        let cmax = self.boxes.iter().map(|b| b.col).max().unwrap_or(0) + 1;
        let rmax = self.boxes.iter().map(|b| b.row).max().unwrap_or(0);
        let rmin = self.boxes.iter().map(|b| b.row).min().unwrap_or(0);
        let width = ((cmax - cmin) * 4) as usize;
        let mut out = String::new();
        for r in (rmin..=rmax).rev() {
            let mut line = vec![' '; width];
            let mut any = false;
            for b in self.boxes.iter().filter(|b| b.row == r) {
                any = true;
                let start = ((b.col - 1 - cmin) * 4) as usize;
                let content = if b.crossed {
                    "  XX  ".to_string()
                } else if labels {
                    let s = match b.label {
                        BoxLabel::Num(i) => i.to_string(),
                        BoxLabel::Alt { string, index } => format!("{string}_{index}"),
                        BoxLabel::None => String::new(),
                    };
                    format!("{s:^6}")
                } else {
                    match b.parity {
                        Parity::Even => "      ".to_string(),
                        Parity::Odd => " #### ".to_string(),
                    }
                };
                let cell: Vec<char> = format!("[{content}]").chars().collect();
                for (k, ch) in cell.into_iter().enumerate() {
                    if start + k < line.len() {
                        line[start + k] = ch;
                    }
                }
            }
            if !any && self.flavor == Flavor::Sl {
                continue;
            }
            let body: String = line.into_iter().collect();
            out.push_str(&format!("{r:>3} |{}\n", body.trim_end()));
        }
        out
    }
}

/// The sl Dynkin pyramid: row `j` (bottom to top) holds `λ_j` boxes centred at 0.
pub fn build_sl(part: &Partition) -> Pyramid {
    let inter = part.interleave();
    let mut boxes = Vec::new();
    let mut rows = Vec::new();
    for (j, pt) in inter.parts.iter().enumerate() {
        let row = j as i32 + 1;
        rows.push(RowMeta { row, kind: RowKind::Full, parity: pt.parity });
        for c in full_cols(pt.size) {
            boxes.push(PBox { label: BoxLabel::None, row, col: c, parity: pt.parity, crossed: false });
        }
    }
    let mut py = Pyramid { flavor: Flavor::Sl, partition: part.clone(), boxes, rows };
    let order = py.ordered();
    for (t, ob) in order.iter().enumerate() {
        let b = py.boxes.iter_mut().find(|b| b.row == ob.row && b.col == ob.col).expect("box exists");
        b.label = BoxLabel::Num(t as i32 + 1);
    }
    py
}

struct UpperRow {
    kind: RowKind,
    parity: Parity,
    cols: Vec<i32>,
    crossed: Vec<i32>,
}

/// The ortho-symplectic Dynkin pyramid.
pub fn build_osp(part: &Partition) -> Result<Pyramid, PartitionError> {
    if part.kind() != Kind::Osp {
        return Err(PartitionError::NotOsp);
    }
    let mut mp: BTreeMap<u32, usize> = BTreeMap::new();
    let mut mq: BTreeMap<u32, usize> = BTreeMap::new();
    for &s in part.p() {
        *mp.entry(s).or_default() += 1;
    }
    for &s in part.q() {
        *mq.entry(s).or_default() += 1;
    }
    let dec = |map: &mut BTreeMap<u32, usize>, s: u32| {
        let e = map.get_mut(&s).expect("part present");
        *e -= 1;
        if *e == 0 {
            map.remove(&s);
        }
    };

    let mut zeroth: Option<u32> = None;
    if part.m() % 2 == 1 {
        let a1 = mp
            .iter()
            .rev()
            .find(|(s, m)| **s % 2 == 1 && **m % 2 == 1)
            .map(|(s, _)| *s)
            .expect("odd m forces an odd part of odd multiplicity");
        zeroth = Some(a1);
        dec(&mut mp, a1);
    }

    // representatives c_1 > b_1 > ... > c_N > b_N
    let reps: Vec<u32> = mp.iter().rev().filter(|(s, m)| **s % 2 == 1 && **m % 2 == 1).map(|(s, _)| *s).collect();
    debug_assert!(reps.len().is_multiple_of(2));
    let partner: BTreeMap<u32, u32> = reps.chunks(2).map(|c| (c[0], c[1])).collect();

    let mut upper: Vec<UpperRow> = Vec::new();
    loop {
        let a2 = match (mp.keys().next_back(), mq.keys().next_back()) {
            (None, None) => break,
            (Some(&x), None) | (None, Some(&x)) => x,
            (Some(&x), Some(&y)) => x.max(y),
        };
        let m_a = mp.get(&a2).copied().unwrap_or(0);
        let n_a = mq.get(&a2).copied().unwrap_or(0);
        if m_a % 2 == 1 {
            let c = a2 as i32;
            let b = *partner.get(&a2).expect("odd multiplicity part is a representative c_k") as i32;
            let cols: Vec<i32> = (0..(c + b) / 2).map(|t| 1 - b + 2 * t).collect();
            let crossed: Vec<i32> = full_cols(a2).into_iter().filter(|x| *x < 1 - b).collect();
            upper.push(UpperRow { kind: RowKind::EvenSkew, parity: Parity::Even, cols, crossed });
            dec(&mut mp, b as u32);
        }
        for _ in 0..m_a / 2 {
            upper.push(UpperRow { kind: RowKind::Full, parity: Parity::Even, cols: full_cols(a2), crossed: vec![] });
        }
        if n_a % 2 == 1 {
            let a = a2 as i32;
            let cols: Vec<i32> = (0..a / 2).map(|t| 1 + 2 * t).collect();
            let crossed: Vec<i32> = full_cols(a2).into_iter().filter(|x| *x < 0).collect();
            upper.push(UpperRow { kind: RowKind::OddSkew, parity: Parity::Odd, cols, crossed });
        }
        for _ in 0..n_a / 2 {
            upper.push(UpperRow { kind: RowKind::Full, parity: Parity::Odd, cols: full_cols(a2), crossed: vec![] });
        }
        mp.remove(&a2);
        mq.remove(&a2);
    }

    let mut boxes = Vec::new();
    let mut rows = Vec::new();
    if let Some(a1) = zeroth {
        rows.push(RowMeta { row: 0, kind: RowKind::Zeroth, parity: Parity::Even });
        for c in full_cols(a1) {
            boxes.push(PBox { label: BoxLabel::None, row: 0, col: c, parity: Parity::Even, crossed: false });
        }
    }
    for (k, ur) in upper.iter().enumerate() {
        let r = k as i32 + 1;
        let mirror_kind = match ur.kind {
            RowKind::Full => RowKind::Full,
            _ => RowKind::MirrorSkew,
        };
        rows.push(RowMeta { row: r, kind: ur.kind, parity: ur.parity });
        rows.push(RowMeta { row: -r, kind: mirror_kind, parity: ur.parity });
        for &c in &ur.cols {
            boxes.push(PBox { label: BoxLabel::None, row: r, col: c, parity: ur.parity, crossed: false });
            boxes.push(PBox { label: BoxLabel::None, row: -r, col: -c, parity: ur.parity, crossed: false });
        }
        for &c in &ur.crossed {
            boxes.push(PBox { label: BoxLabel::None, row: r, col: c, parity: ur.parity, crossed: true });
            boxes.push(PBox { label: BoxLabel::None, row: -r, col: -c, parity: ur.parity, crossed: true });
        }
    }
    rows.sort_by_key(|r| -r.row);

    let mut py = Pyramid { flavor: Flavor::Osp, partition: part.clone(), boxes, rows };
    let order = py.ordered();
    let total = order.len();
    let half = (part.m() / 2 + part.n()) as i32;
    for (t, ob) in order.iter().enumerate() {
        let t = t as i32;
        let label = if t < half {
            t + 1
        } else if part.m() % 2 == 1 && t == half {
            0
        } else {
            t - total as i32
        };
        let b = py
            .boxes
            .iter_mut()
            .find(|b| !b.crossed && b.row == ob.row && b.col == ob.col)
            .expect("box exists");
        b.label = BoxLabel::Num(label);
    }
    Ok(py)
}

/// The alternative pyramid with rows `±1..±b`.
pub fn build_alt(g: &GroupedPartition, part: &Partition) -> Pyramid {
    let mut boxes = Vec::new();
    let mut rows = Vec::new();
    for i in 1..=g.b() {
        let pt = g.part(i).expect("string exists");
        let lam = pt.size as i32;
        let r = i as i32;
        let single = i <= g.a();
        rows.push(RowMeta { row: r, kind: RowKind::Full, parity: pt.parity });
        rows.push(RowMeta { row: -r, kind: RowKind::Full, parity: pt.parity });
        let cols = full_cols(pt.size);
        if single {
            let left_cross = (lam / 2) as usize;
            let right_cross = ((lam + 1) / 2) as usize;
            for (t, &c) in cols.iter().enumerate() {
                let crossed = t < left_cross;
                let label = if crossed { BoxLabel::None } else { BoxLabel::Alt { string: r, index: c } };
                boxes.push(PBox { label, row: r, col: c, parity: pt.parity, crossed });
            }
            for (t, &c) in cols.iter().enumerate() {
                let crossed = t >= cols.len() - right_cross;
                let label = if crossed { BoxLabel::None } else { BoxLabel::Alt { string: r, index: c } };
                boxes.push(PBox { label, row: -r, col: c, parity: pt.parity, crossed });
            }
        } else {
            for &c in &cols {
                boxes.push(PBox { label: BoxLabel::Alt { string: r, index: c }, row: r, col: c, parity: pt.parity, crossed: false });
            }
            for &c in &cols {
                boxes.push(PBox { label: BoxLabel::Alt { string: -r, index: c }, row: -r, col: c, parity: pt.parity, crossed: false });
            }
        }
    }
    rows.sort_by_key(|r| -r.row);
    Pyramid { flavor: Flavor::Alt, partition: part.clone(), boxes, rows }
}

/// Build the pyramid matching the partition's kind (sl or ortho-symplectic).
pub fn build(part: &Partition) -> Pyramid {
    match part.kind() {
        Kind::Sl => build_sl(part),
        Kind::Osp => build_osp(part).expect("osp partition"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Pyramid {
        build_sl(&Partition::parse(s, Kind::Sl).unwrap())
    }

    fn osp(s: &str) -> Pyramid {
        build_osp(&Partition::parse(s, Kind::Osp).unwrap()).unwrap()
    }

    fn num(b: &PBox) -> i32 {
        match b.label {
            BoxLabel::Num(i) => i,
            _ => panic!("unnumbered"),
        }
    }

    #[test]
    fn sl_five_one_three() {
        let py = sl("5,1|3");
        let cc = py.column_counts();
        let want: BTreeMap<i32, (usize, usize)> =
            [(-4, (1, 0)), (-2, (1, 1)), (0, (2, 1)), (2, (1, 1)), (4, (1, 0))].into_iter().collect();
        assert_eq!(cc, want);
        let ord = py.ordered();
        assert_eq!((ord[0].row, ord[0].col, num(&ord[0])), (1, -4, 1));
        assert_eq!(ord[8].col, 4);
        let cols: Vec<i32> = ord.iter().map(|b| b.col).collect();
        assert_eq!(cols, vec![-4, -2, -2, 0, 0, 0, 2, 2, 4]);
    }

    #[test]
    fn sl_small() {
        let py = sl("1|1");
        let ord = py.ordered();
        assert_eq!((ord[0].row, ord[0].parity, num(&ord[0])), (2, Parity::Odd, 1));
        assert_eq!((ord[1].row, ord[1].parity), (1, Parity::Even));
        let cc = sl("3,2|2,1").column_counts();
        let want: BTreeMap<i32, (usize, usize)> =
            [(-2, (1, 0)), (-1, (1, 1)), (0, (1, 1)), (1, (1, 1)), (2, (1, 0))].into_iter().collect();
        assert_eq!(cc, want);
    }

    #[test]
    fn osp_examples() {
        let py = osp("5,3,1|3,3");
        assert_eq!(py.size(), 15);
        let cc = py.column_counts();
        let want: BTreeMap<i32, (usize, usize)> =
            [(-4, (1, 0)), (-2, (2, 2)), (0, (3, 2)), (2, (2, 2)), (4, (1, 0))].into_iter().collect();
        assert_eq!(cc, want);
        let py = osp("2,2|1,1");
        let cc = py.column_counts();
        let want: BTreeMap<i32, (usize, usize)> = [(-1, (2, 0)), (0, (0, 2)), (1, (2, 0))].into_iter().collect();
        assert_eq!(cc, want);
        assert_eq!(py.row_meta(1).unwrap().parity, Parity::Even);
        assert_eq!(py.row_meta(2).unwrap().parity, Parity::Odd);
        let py = osp("3,3|4");
        assert_eq!(py.size(), 10);
        assert_eq!(py.boxes.iter().filter(|b| b.crossed).count(), 4);
    }

    #[test]
    fn osp_numbering_is_centrally_symmetric() {
        for s in ["5,3,1|3,3", "3,3|4", "3,1|2", "1|2,2", "5,1|", "7,3,3,1|2,2"] {
            let py = osp(s);
            for b in py.boxes.iter().filter(|b| !b.crossed) {
                let i = num(b);
                let m = py.box_at(-b.row, -b.col).unwrap();
                assert_eq!(num(&m), -i, "{s}");
                assert_eq!(m.parity, b.parity);
            }
        }
    }

    #[test]
    fn alt_rows() {
        let part = Partition::parse("5,3|2,2", Kind::Osp).unwrap();
        let py = build_alt(&part.group().unwrap(), &part);
        let crossed = |r: i32| py.boxes.iter().filter(|b| b.row == r && b.crossed).count();
        assert_eq!((crossed(1), crossed(-1), crossed(2), crossed(-2)), (2, 3, 1, 2));
        assert_eq!(py.size(), 12);
        let part = Partition::parse("3|2", Kind::Osp).unwrap();
        let py = build_alt(&part.group().unwrap(), &part);
        let labels = |r: i32| -> Vec<(i32, i32)> {
            py.boxes
                .iter()
                .filter(|b| b.row == r && !b.crossed)
                .map(|b| match b.label {
                    BoxLabel::Alt { string, index } => (string, index),
                    _ => unreachable!(),
                })
                .collect()
        };
        assert_eq!(labels(1), vec![(1, 0), (1, 2)]);
        assert_eq!(labels(-1), vec![(1, -2)]);
        assert_eq!(labels(2), vec![(2, 1)]);
        assert_eq!(labels(-2), vec![(2, -1)]);
    }

    #[test]
    fn rendering_is_stable() {
        let part = Partition::parse("1|", Kind::Sl).unwrap();
        assert_eq!(build_sl(&part).render(false), "  1 |[      ]\n");
        let r = sl("5,1|3").render(true);
        assert_eq!(r.lines().count(), 3);
    }
}
