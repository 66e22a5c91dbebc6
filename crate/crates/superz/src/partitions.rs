//! Parity-tagged partitions and their three notations.
//!
//! A nilpotent orbit is encoded by a pair `(p|q)`: the Jordan block sizes on
//! the even and on the odd part of the natural module.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "0",
            Parity::Odd => "1",
        })
    }
}

/// Which family of superalgebra the partition is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Sl,
    Osp,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sl => "sl",
            Kind::Osp => "osp",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("malformed partition {0:?}: expected comma-separated positive integers, '|', comma-separated positive integers")]
    Syntax(String),
    #[error("parts must be positive integers")]
    NonPositive,
    #[error("empty partition")]
    Empty,
    #[error("osp rule violated: the odd side must sum to an even number 2n (got {0})")]
    OddTotal(u32),
    #[error("osp rule violated: even part {0} of p must have even multiplicity")]
    EvenPartOddMultiplicity(u32),
    #[error("osp rule violated: odd part {0} of q must have even multiplicity")]
    OddPartOddMultiplicity(u32),
    #[error("operation needs an osp partition")]
    NotOsp,
}

/// A part together with its parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub size: u32,
    pub parity: Parity,
}

impl Part {
    pub fn new(size: u32, parity: Parity) -> Self {
        Part { size, parity }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.size, self.parity)
    }
}

/// `(p|q)` with both sides weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    p: Vec<u32>,
    q: Vec<u32>,
    kind: Kind,
}

fn parse_side(s: &str) -> Result<Vec<u32>, PartitionError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in s.split(',') {
        let v: i64 = tok.parse().map_err(|_| PartitionError::Syntax(s.clone()))?;
        if v <= 0 {
            return Err(PartitionError::NonPositive);
        }
        out.push(u32::try_from(v).map_err(|_| PartitionError::Syntax(s.clone()))?);
    }
    Ok(out)
}

fn multiplicities(xs: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

impl Partition {
    pub fn new(mut p: Vec<u32>, mut q: Vec<u32>, kind: Kind) -> Result<Self, PartitionError> {
        if p.iter().chain(&q).any(|&x| x == 0) {
            return Err(PartitionError::NonPositive);
        }
        if p.is_empty() && q.is_empty() {
            return Err(PartitionError::Empty);
        }
        p.sort_unstable_by(|a, b| b.cmp(a));
        q.sort_unstable_by(|a, b| b.cmp(a));
        if kind == Kind::Osp {
            let total: u32 = q.iter().sum();
            if total % 2 == 1 {
                return Err(PartitionError::OddTotal(total));
            }
            for (&size, &mult) in &multiplicities(&p) {
                if size % 2 == 0 && mult % 2 == 1 {
                    return Err(PartitionError::EvenPartOddMultiplicity(size));
                }
            }
            for (&size, &mult) in &multiplicities(&q) {
                if size % 2 == 1 && mult % 2 == 1 {
                    return Err(PartitionError::OddPartOddMultiplicity(size));
                }
            }
        }
        Ok(Partition { p, q, kind })
    }

    /// Parse text such as `"5,1|3"`; whitespace is ignored and a side may be empty.
    pub fn parse(text: &str, kind: Kind) -> Result<Self, PartitionError> {
        let mut sides = text.split('|');
        let (Some(a), Some(b), None) = (sides.next(), sides.next(), sides.next()) else {
            return Err(PartitionError::Syntax(text.to_string()));
        };
        Partition::new(parse_side(a)?, parse_side(b)?, kind)
    }

    pub fn p(&self) -> &[u32] {
        &self.p
    }

    pub fn q(&self) -> &[u32] {
        &self.q
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Dimension of the even part of the natural module.
    pub fn m(&self) -> usize {
        self.p.iter().map(|&x| x as usize).sum()
    }

    /// Dimension of the odd part of the natural module (`n` for sl, `2n` for osp).
    pub fn odd_dim(&self) -> usize {
        self.q.iter().map(|&x| x as usize).sum()
    }

    /// `n` in `sl(m|n)` or `osp(m|2n)`.
    pub fn n(&self) -> usize {
        match self.kind {
            Kind::Sl => self.odd_dim(),
            Kind::Osp => self.odd_dim() / 2,
        }
    }

    pub fn total(&self) -> usize {
        self.m() + self.odd_dim()
    }

    /// Largest part overall.
    pub fn largest(&self) -> u32 {
        self.p.iter().chain(&self.q).copied().max().unwrap_or(0)
    }

    pub fn with_kind(&self, kind: Kind) -> Result<Self, PartitionError> {
        Partition::new(self.p.clone(), self.q.clone(), kind)
    }

    /// All parts, as a multiset of tagged parts.
    pub fn parts(&self) -> Vec<Part> {
        self.interleave().parts
    }

    /// Sorted decreasingly; equal sizes put the even part first.
    pub fn interleave(&self) -> InterleavedPartition {
        let mut parts: Vec<Part> = self
            .p
            .iter()
            .map(|&s| Part::new(s, Parity::Even))
            .chain(self.q.iter().map(|&s| Part::new(s, Parity::Odd)))
            .collect();
        parts.sort_by(|a, b| b.size.cmp(&a.size).then(a.parity.cmp(&b.parity)));
        InterleavedPartition { parts }
    }

    /// Singles (odd multiplicity) and pairs.
    pub fn group(&self) -> Result<GroupedPartition, PartitionError> {
        if self.kind != Kind::Osp {
            return Err(PartitionError::NotOsp);
        }
        let mut singles = Vec::new();
        let mut pairs = Vec::new();
        for (parity, side) in [(Parity::Even, &self.p), (Parity::Odd, &self.q)] {
            for (&size, &mult) in multiplicities(side).iter().rev() {
                if mult % 2 == 1 {
                    singles.push(Part::new(size, parity));
                }
                for _ in 0..mult / 2 {
                    pairs.push(Part::new(size, parity));
                }
            }
        }
        singles.sort_by(|a, b| b.size.cmp(&a.size).then(a.parity.cmp(&b.parity)));
        pairs.sort_by(|a, b| b.size.cmp(&a.size).then(a.parity.cmp(&b.parity)));
        Ok(GroupedPartition { singles, pairs })
    }

    pub fn multiplicity(&self) -> MultiplicityPartition {
        let mut entries: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for &s in &self.p {
            entries.entry(s).or_default().0 += 1;
        }
        for &s in &self.q {
            entries.entry(s).or_default().1 += 1;
        }
        MultiplicityPartition { entries }
    }

    /// Canonical text form, e.g. `5,1|3`.
    pub fn to_text(&self) -> String {
        let j = |xs: &[u32]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("{}|{}", j(&self.p), j(&self.q))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

/// Parts in canonical interleaved order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterleavedPartition {
    pub parts: Vec<Part>,
}

/// Osp notation: singles `λ_1 > … > λ_a` and pairs `λ_{a+1} ≥ … ≥ λ_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupedPartition {
    pub singles: Vec<Part>,
    pub pairs: Vec<Part>,
}

impl GroupedPartition {
    pub fn a(&self) -> usize {
        self.singles.len()
    }

    pub fn b(&self) -> usize {
        self.singles.len() + self.pairs.len()
    }

    /// Part of string `i` (1-based, sign ignored) as used in the alternative pyramid.
    pub fn part(&self, i: usize) -> Option<Part> {
        let a = self.a();
        if i == 0 {
            None
        } else if i <= a {
            Some(self.singles[i - 1])
        } else {
            self.pairs.get(i - a - 1).copied()
        }
    }

    /// Size of string `i`, or 0 when it does not exist.
    pub fn size(&self, i: usize) -> u32 {
        self.part(i).map_or(0, |p| p.size)
    }

    /// Reassembled multiset of parts (pairs doubled).
    pub fn parts(&self) -> Vec<Part> {
        let mut v: Vec<Part> = self.singles.clone();
        for p in &self.pairs {
            v.push(*p);
            v.push(*p);
        }
        v.sort_by(|a, b| b.size.cmp(&a.size).then(a.parity.cmp(&b.parity)));
        v
    }
}

/// `m_i`, `n_i` per part size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityPartition {
    pub entries: BTreeMap<u32, (usize, usize)>,
}

impl MultiplicityPartition {
    pub fn parts(&self) -> Vec<Part> {
        let mut v = Vec::new();
        for (&s, &(m, n)) in self.entries.iter().rev() {
            v.extend(std::iter::repeat_n(Part::new(s, Parity::Even), m));
            v.extend(std::iter::repeat_n(Part::new(s, Parity::Odd), n));
        }
        v
    }
}

/// All integer partitions of `n`, each weakly decreasing.
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every valid sl partition with `1 <= m + n <= max`.
pub fn enumerate_sl(max: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for total in 1..=max {
        for m in 0..=total {
            let n = total - m;
            for p in integer_partitions(m as u32) {
                for q in integer_partitions(n as u32) {
                    out.push(Partition::new(p.clone(), q, Kind::Sl).expect("valid by construction"));
                }
            }
        }
    }
    out
}

/// Every valid osp partition with `1 <= m + 2n <= max`.
pub fn enumerate_osp(max: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for total in 1..=max {
        for n in 0..=total / 2 {
            let m = total - 2 * n;
            for p in integer_partitions(m as u32) {
                for q in integer_partitions(2 * n as u32) {
                    if let Ok(part) = Partition::new(p.clone(), q, Kind::Osp) {
                        out.push(part);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let a = Partition::parse("5,1|3", Kind::Sl).unwrap();
        assert_eq!((a.p(), a.q(), a.m(), a.n()), (&[5, 1][..], &[3][..], 6, 3));
        let b = Partition::parse(" 5, 3,1 | 3,3 ", Kind::Osp).unwrap();
        assert_eq!((b.m(), b.odd_dim()), (9, 6));
        assert_eq!(Partition::parse("2|3", Kind::Osp), Err(PartitionError::OddTotal(3)));
        assert_eq!(Partition::parse("2|", Kind::Osp), Err(PartitionError::EvenPartOddMultiplicity(2)));
        assert_eq!(Partition::parse("|3,1", Kind::Osp), Err(PartitionError::OddPartOddMultiplicity(1)));
        assert!(matches!(Partition::parse("5;1", Kind::Sl), Err(PartitionError::Syntax(_))));
        assert_eq!(Partition::parse("0|1", Kind::Sl), Err(PartitionError::NonPositive));
        assert_eq!(Partition::parse("|2", Kind::Osp).unwrap().n(), 1);
    }

    #[test]
    fn interleaving() {
        let show = |s: &str| {
            Partition::parse(s, Kind::Sl)
                .unwrap()
                .interleave()
                .parts
                .iter()
                .map(|p| p.to_string())
                .collect::<String>()
        };
        assert_eq!(show("5,1|3"), "(5,0)(3,1)(1,0)");
        assert_eq!(show("3,2|2,1"), "(3,0)(2,0)(2,1)(1,1)");
        assert_eq!(show("1|1"), "(1,0)(1,1)");
    }

    #[test]
    fn grouping() {
        let g = Partition::parse("5,3,1|3,3", Kind::Osp).unwrap().group().unwrap();
        assert_eq!(
            g.singles,
            vec![Part::new(5, Parity::Even), Part::new(3, Parity::Even), Part::new(1, Parity::Even)]
        );
        assert_eq!(g.pairs, vec![Part::new(3, Parity::Odd)]);
        let g = Partition::parse("2,2|1,1", Kind::Osp).unwrap().group().unwrap();
        assert!(g.singles.is_empty());
        assert_eq!(g.pairs, vec![Part::new(2, Parity::Even), Part::new(1, Parity::Odd)]);
        let g = Partition::parse("3|2", Kind::Osp).unwrap().group().unwrap();
        assert_eq!(g.singles, vec![Part::new(3, Parity::Even), Part::new(2, Parity::Odd)]);
        assert!(g.pairs.is_empty());
        let g = Partition::parse("3,3,3|", Kind::Osp).unwrap().group().unwrap();
        assert_eq!((g.a(), g.b()), (1, 2));
        assert!(Partition::parse("3|2", Kind::Sl).unwrap().group().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(integer_partitions(5).len(), 7);
        // sum over m+n = t of p(m)p(n): 2, 5, 10 for t = 1, 2, 3
        assert_eq!(enumerate_sl(3).len(), 17);
        assert!(enumerate_osp(4).iter().all(|p| p.kind() == Kind::Osp));
    }
}
