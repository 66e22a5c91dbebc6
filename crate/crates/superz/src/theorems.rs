//! Machine checks of the dimension identities relating the centre of a
//! centralizer to the labelled Dynkin diagram, plus the sweep driver.

use crate::centralizer::{centralizer_oracle, closed_form_centralizer, dim_formula, dim_osp_columns, dim_osp_parts, is_bracket_closed, Centralizer};
use crate::centre::{
    centre_closed_form_osp, centre_closed_form_sl, centre_oracle, fixed_under_group, s_generators, so_literal_prediction, so_variant_keeps_centre,
    CentreError,
};
use crate::diagrams::{build_g0_and_e0, core_data, diagram_osp, diagram_sl, CoreData, LabelledDiagram, G0};
use crate::exactlin::Subspace;
use crate::nilpotent::{complete_triple, Realization};
use crate::partitions::{enumerate_osp, enumerate_sl, Kind, Parity, Partition};
use crate::superalgebra::{bracket, bracket_homogeneous, AltFrame, SuperMatrix};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of one identity for one partition.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub applicable: bool,
    pub pass: bool,
    pub values: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    fn new(name: &str, pass: bool) -> Self {
        Check { name: name.into(), applicable: true, pass, values: BTreeMap::new(), note: String::new() }
    }

    fn skipped(name: &str, note: &str) -> Self {
        Check { name: name.into(), applicable: false, pass: true, values: BTreeMap::new(), note: note.into() }
    }

    fn with(mut self, key: &str, v: impl TryInto<i64>) -> Self {
        self.values.insert(key.into(), v.try_into().unwrap_or(i64::MAX));
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn status(&self) -> &'static str {
        match (self.applicable, self.pass) {
            (false, _) => "N/A",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        }
    }
}

/// Every check run for one partition.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub partition: String,
    pub kind: Kind,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Shell command reproducing this report.
    pub fn reproducer(&self) -> String {
        let kind = match self.kind {
            Kind::Sl => "sl",
            Kind::Osp => "osp",
        };
        let text = self.partition.trim_start_matches('(').trim_end_matches(')');
        format!("superz verify {kind} --partition \"{text}\"")
    }

    /// One line per check: status, partition, check name, values.
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let vals: Vec<String> = c.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut line = format!("{:<4} {} {} {}", c.status(), self.partition, c.name, vals.join(" "));
                if !c.note.is_empty() {
                    line.push_str(&format!(" ({})", c.note));
                }
                line.trim_end().to_string()
            })
            .collect()
    }
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

/// `dim g^e` and `dim (z(g^e))^{G^e}` for a partition, by linear algebra.
///
/// For sl the group acts trivially on the centre; for osp the explicit
/// component-group involutions are applied in the alternative frame.
pub fn centralizer_and_fixed_dims(part: &Partition) -> (usize, usize) {
    let r = Realization::new(part, part.kind() == Kind::Osp);
    let c = centralizer_oracle(&r.algebra, &r.e);
    let z = centre_oracle(&c);
    let fixed = match part.kind() {
        Kind::Sl => z.dim(),
        Kind::Osp => fixed_under_group(part, &z.span, false).expect("involutions are valid").dim(),
    };
    (c.dim(), fixed)
}

/// Everything the checks need, computed once per partition.
pub struct Analysis {
    pub partition: Partition,
    /// Realization on the standard pyramid, which defines `h` and `Δ`.
    pub standard: Realization,
    /// Realization where the closed forms live (the alternative frame for osp).
    pub working: Realization,
    pub centralizer: Centralizer,
    pub centre: Centralizer,
    pub fixed: Subspace,
    pub diagram: LabelledDiagram,
    pub core: CoreData,
    pub g0: G0,
}

impl Analysis {
    pub fn new(part: &Partition) -> Self {
        let standard = Realization::new(part, false);
        let working = match part.kind() {
            Kind::Sl => standard.clone(),
            Kind::Osp => Realization::new(part, true),
        };
        let centralizer = centralizer_oracle(&working.algebra, &working.e);
        let centre = centre_oracle(&centralizer);
        let fixed = match part.kind() {
            Kind::Sl => centre.span.clone(),
            Kind::Osp => fixed_under_group(part, &centre.span, false).map(|f| f.span).unwrap_or_else(|_| Subspace::zero(1)),
        };
        let diagram = match part.kind() {
            Kind::Sl => diagram_sl(&standard.pyramid),
            Kind::Osp => diagram_osp(&standard.pyramid),
        };
        let core = core_data(&diagram, &standard.pyramid);
        let g0 = build_g0_and_e0(&core, &standard.pyramid);
        Analysis { partition: part.clone(), standard, working, centralizer, centre, fixed, diagram, core, g0 }
    }

    fn is_sl_nn(&self) -> bool {
        self.partition.kind() == Kind::Sl && self.partition.m() == self.partition.odd_dim()
    }

    fn eps(&self) -> i64 {
        i64::from(self.is_sl_nn())
    }

    pub fn largest(&self) -> i64 {
        self.partition.largest() as i64
    }

    pub fn n2(&self) -> i64 {
        self.core.n2 as i64
    }

    /// `dim z(g^h)`, computed from the centralizer of `h`.
    pub fn z_gh(&self) -> usize {
        centre_oracle(&centralizer_oracle(&self.standard.algebra, &self.standard.h)).dim()
    }

    /// `dim g_0^{e_0}` and `dim (z(g_0^{e_0}))^{G_0^{e_0}}`, block by block.
    pub fn g0_dims(&self) -> (usize, usize) {
        self.g0.blocks.iter().map(|b| centralizer_and_fixed_dims(&b.partition)).fold((0, 0), |(a, b), (x, y)| (a + x, b + y))
    }
}

pub fn check_centralizer_dim(a: &Analysis) -> Check {
    let d = a.centralizer.dim();
    let part = &a.partition;
    match part.kind() {
        Kind::Sl => Check::new("centralizer-dim", d == dim_formula(part)).with("oracle", d).with("formula", dim_formula(part)),
        Kind::Osp => {
            let (c, p) = (dim_osp_columns(part), dim_osp_parts(part));
            Check::new("centralizer-dim", d == c && d == p).with("oracle", d).with("columns", c).with("parts", p)
        }
    }
}

pub fn check_centralizer_closed_form(a: &Analysis) -> Check {
    let (elems, cf) = closed_form_centralizer(&a.partition);
    Check::new("centralizer-closed-form", cf.span == a.centralizer.span && elems.len() == cf.dim())
        .with("elements", elems.len())
        .with("oracle", a.centralizer.dim())
}

pub fn check_centre_closed_form(a: &Analysis) -> Check {
    let part = &a.partition;
    match part.kind() {
        Kind::Sl => match centre_closed_form_sl(part) {
            Ok(cf) => Check::new("centre-closed-form", cf.span == a.centre.span).with("closed", cf.dim()).with("oracle", a.centre.dim()),
            Err(CentreError::SlOneOne) => {
                // only I is central in sl(1|1)
                let id = SuperMatrix::identity(a.working.space());
                let ok = a.centre.dim() == 1 && a.centre.span.contains(id.flat());
                Check::new("centre-closed-form", ok).with("oracle", a.centre.dim()).note("sl(1|1): centre is <I>")
            }
            Err(e) => Check::new("centre-closed-form", false).note(e.to_string()),
        },
        Kind::Osp => match centre_closed_form_osp(part) {
            Ok((_, cf)) => Check::new("centre-closed-form", cf.span == a.centre.span)
                .with("closed", cf.dim())
                .with("oracle", a.centre.dim())
                .note(format!("{:?}", cf.case_tag)),
            Err(e) => Check::new("centre-closed-form", false).note(e.to_string()),
        },
    }
}

/// `(z(g^e))^{G^e} = S`; a failing involution shows up as a failed check.
pub fn check_fixed(a: &Analysis) -> Check {
    if a.partition.kind() == Kind::Sl {
        return Check::skipped("fixed-equals-S", "sl: the group fixes the centre");
    }
    let frame = AltFrame::new(&a.partition.group().expect("osp partition"));
    let n2 = frame.dim() * frame.dim();
    let s = Subspace::from_vectors(n2, s_generators(&frame).iter().map(|g| g.matrix.flat().to_vec()));
    match fixed_under_group(&a.partition, &a.centre.span, false) {
        Ok(f) => Check::new("fixed-equals-S", f.span == s).with("fixed", f.dim()).with("S", s.dim()).with("involutions", f.involutions.len()),
        Err(e) => Check::new("fixed-equals-S", false).note(e.to_string()),
    }
}

/// Fixed space under `SO_m × Sp_2n`, against the corrected prediction.
pub fn check_so_variant(a: &Analysis) -> Check {
    if a.partition.kind() == Kind::Sl {
        return Check::skipped("so-variant", "osp only");
    }
    let f = match fixed_under_group(&a.partition, &a.centre.span, true) {
        Ok(f) => f,
        Err(e) => return Check::new("so-variant", false).note(e.to_string()),
    };
    let whole = so_variant_keeps_centre(&a.partition);
    let want = if whole { a.centre.dim() } else { a.fixed.dim() };
    Check::new("so-variant", f.dim() == want)
        .with("fixed_so", f.dim())
        .with("centre", a.centre.dim())
        .with("predicted", want)
        .with("literal_prediction", i64::from(so_literal_prediction(&a.partition)))
}

fn triple_ok(r: &Realization) -> bool {
    let Ok(t) = complete_triple(&r.e, &r.h, &r.algebra) else {
        return false;
    };
    bracket(&t.h, &t.e) == t.e.scale(&crate::exactlin::q(2))
        && bracket(&t.h, &t.f) == t.f.scale(&crate::exactlin::q(-2))
        && bracket(&t.e, &t.f) == t.h
        && [&t.e, &t.h, &t.f].iter().all(|x| r.algebra.contains(x))
}

pub fn check_triple(a: &Analysis) -> Check {
    let ok = triple_ok(&a.standard) && (a.partition.kind() == Kind::Sl || triple_ok(&a.working));
    Check::new("sl2-triple", ok)
}

pub fn check_bracket_closure(a: &Analysis) -> Check {
    Check::new("bracket-closure", is_bracket_closed(&a.centralizer)).with("dim", a.centralizer.dim())
}

/// Every centre basis element supercommutes with every centralizer basis element.
pub fn check_centrality(a: &Analysis) -> Check {
    let par = |x: &SuperMatrix| x.parity().unwrap_or(Parity::Even);
    let ok = a.centre.basis.iter().all(|z| a.centralizer.basis.iter().all(|x| bracket_homogeneous(z, par(z), x, par(x)).is_zero()));
    Check::new("centrality", ok).with("centre", a.centre.dim())
}

/// The defining identity of osp for every produced element, in both frames.
pub fn check_osp_identity(a: &Analysis) -> Check {
    if a.partition.kind() == Kind::Sl {
        return Check::skipped("osp-identity", "sl");
    }
    let mut count = 0usize;
    let mut ok = true;
    for r in [&a.standard, &a.working] {
        let t = complete_triple(&r.e, &r.h, &r.algebra).ok();
        let extra: Vec<&SuperMatrix> = t.iter().flat_map(|t| [&t.e, &t.h, &t.f]).collect();
        for x in r.algebra.basis().iter().chain(extra) {
            count += 1;
            ok &= r.algebra.satisfies_definition(x);
        }
    }
    for x in a.centralizer.basis.iter().chain(&a.centre.basis) {
        count += 1;
        ok &= a.working.algebra.satisfies_definition(x);
    }
    Check::new("osp-identity", ok).with("elements", count)
}

fn all_parts_even(part: &Partition) -> bool {
    part.p().iter().chain(part.q()).all(|x| x % 2 == 0)
}

/// Labels in `{0,1,2}`, the sl label sum `2λ_1 - 2`, and "no label 1 iff all
/// parts have the same parity".
pub fn check_labels(a: &Analysis) -> Check {
    let labels = a.diagram.labels();
    let in_range = labels.iter().all(|l| (0..=2).contains(l));
    let sum = a.diagram.label_sum();
    let l1 = a.largest();
    let parts: Vec<u32> = a.partition.p().iter().chain(a.partition.q()).copied().collect();
    let same_parity = all_parts_even(&a.partition) || parts.iter().all(|x| x % 2 == 1);
    let no_one = !labels.contains(&1);
    let sum_ok = a.partition.kind() == Kind::Osp || sum == 2 * l1 - 2;
    Check::new("labels", in_range && sum_ok && no_one == same_parity)
        .with("sum", sum)
        .with("lambda1", l1)
        .with("nodes", labels.len())
        .with("n2", a.n2())
}

/// osp: `Σ a_i ∈ {λ_1 - 1, λ_1}` and `⌈½Σ a_i⌉` is `⌈λ_1/2⌉` when all parts
/// are even, `⌈(λ_1-1)/2⌉` otherwise.
pub fn check_osp_label_sum(a: &Analysis) -> Check {
    if a.partition.kind() == Kind::Sl {
        return Check::skipped("osp-label-sum", "sl");
    }
    let sum = a.diagram.label_sum();
    let l1 = a.largest();
    let even = all_parts_even(&a.partition);
    let want = if even { ceil_half(l1) } else { ceil_half(l1 - 1) };
    let c = Check::new("osp-label-sum", (sum == l1 - 1 || sum == l1) && ceil_half(sum) == want)
        .with("sum", sum)
        .with("lambda1", l1)
        .with("all_even", i64::from(even));
    if sum == l1 && !even {
        c.note("sum is lambda1 with an odd part")
    } else {
        c
    }
}

/// `dim (z(g^e))^{G^e} = n_2(Δ) (+1 for sl(n|n)) = dim z(g^h)` when `Δ` has no label 1.
pub fn check_fixed_n2(a: &Analysis) -> Check {
    if a.diagram.labels().contains(&1) {
        return Check::skipped("fixed-n2", "diagram has a label 1");
    }
    let fixed = a.fixed.dim() as i64;
    let zgh = a.z_gh() as i64;
    let n2 = a.n2();
    Check::new("fixed-n2", fixed - a.eps() == n2 && zgh == n2).with("fixed", fixed).with("n2", n2).with("z_gh", zgh).with("eps", a.eps())
}

/// `dim (z(g^e))^{G^e} = ⌈½ Σ a_i⌉ + ε`.
pub fn check_fixed_label_sum(a: &Analysis) -> Check {
    let fixed = a.fixed.dim() as i64;
    let rhs = ceil_half(a.diagram.label_sum()) + a.eps();
    Check::new("fixed-label-sum", fixed == rhs).with("fixed", fixed).with("rhs", rhs).with("label_sum", a.diagram.label_sum())
}

/// The three identities comparing `g^e` with `g_0^{e_0}`.
pub fn check_core_reduction(a: &Analysis) -> Check {
    let (dg0, f0) = a.g0_dims();
    let d = a.centralizer.dim() as i64;
    let fixed = a.fixed.dim() as i64;
    let cd = &a.core;
    let first = d - dg0 as i64 == a.n2();
    let rhs = a.n2() + a.eps() - cd.tau as i64 - cd.nu0 as i64;
    let second = fixed - f0 as i64 == rhs;
    Check::new("core-reduction", first && second)
        .with("dim_ge", d)
        .with("dim_g0e0", dg0)
        .with("fixed", fixed)
        .with("fixed0", f0)
        .with("n2", a.n2())
        .with("tau", cd.tau)
        .with("nu0", cd.nu0)
        .with("k", cd.k)
}

/// The blocks of `g_0` carry exactly the labels of the 2-free core.
pub fn check_core_blocks(a: &Analysis) -> Check {
    let mut want: Vec<i64> = a.core.core.labels();
    let mut got: Vec<i64> = Vec::new();
    for b in &a.g0.blocks {
        if let Ok(d) = crate::diagrams::diagram(&b.partition) {
            got.extend(d.labels());
        }
    }
    want.sort_unstable();
    got.sort_unstable();
    Check::new("core-blocks", want == got).with("core_nodes", want.len()).with("block_nodes", got.len()).with("blocks", a.g0.blocks.len())
}

/// All checks for one partition.
pub fn verify(part: &Partition, so_variant: bool) -> Report {
    let a = Analysis::new(part);
    let mut checks = vec![
        check_centralizer_dim(&a),
        check_centralizer_closed_form(&a),
        check_centre_closed_form(&a),
        check_fixed(&a),
        check_triple(&a),
        check_bracket_closure(&a),
        check_centrality(&a),
        check_osp_identity(&a),
        check_labels(&a),
        check_osp_label_sum(&a),
        check_fixed_n2(&a),
        check_fixed_label_sum(&a),
        check_core_reduction(&a),
        check_core_blocks(&a),
    ];
    if so_variant {
        checks.push(check_so_variant(&a));
    }
    Report { partition: part.to_string(), kind: part.kind(), checks }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub kind: Kind,
    pub max: usize,
    pub partitions: usize,
    pub failures: usize,
    pub reports: Vec<Report>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Partitions failing the named check.
    pub fn failing(&self, check: &str) -> Vec<String> {
        self.reports.iter().filter(|r| r.check(check).is_some_and(|c| !c.pass)).map(|r| r.partition.clone()).collect()
    }
}

/// Every valid partition with `m+n ≤ max` (sl) or `m+2n ≤ max` (osp).
pub fn partitions_up_to(max: usize, kind: Kind) -> Vec<Partition> {
    match kind {
        Kind::Sl => enumerate_sl(max),
        Kind::Osp => enumerate_osp(max),
    }
}

/// Verify every partition up to the bound, in parallel; reports keep enumeration order.
pub fn sweep(max: usize, kind: Kind, so_variant: bool) -> SweepReport {
    let parts = partitions_up_to(max, kind);
    let reports: Vec<Report> = parts.par_iter().map(|p| verify(p, so_variant)).collect();
    let failures = reports.iter().filter(|r| !r.passed()).count();
    SweepReport { kind, max, partitions: reports.len(), failures, reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(s: &str, k: Kind) -> Report {
        verify(&Partition::parse(s, k).unwrap(), true)
    }

    #[test]
    fn sl_example_all_pass() {
        let r = report("5,1|3", Kind::Sl);
        for l in r.lines() {
            assert!(!l.starts_with("FAIL"), "{l}");
        }
        let t1 = r.check("fixed-n2").unwrap();
        assert_eq!((t1.values["fixed"], t1.values["n2"], t1.values["z_gh"]), (4, 4, 4));
    }

    #[test]
    fn osp_example_values() {
        let r = report("5,3,1|3,3", Kind::Osp);
        let t1 = r.check("fixed-n2").unwrap();
        assert_eq!((t1.values["fixed"], t1.values["n2"], t1.values["z_gh"]), (2, 2, 2));
        assert!(r.passed(), "{:?}", r.lines());
    }

    #[test]
    fn sweep_zero_is_empty() {
        assert_eq!(sweep(0, Kind::Sl, false).partitions, 0);
    }

    #[test]
    fn reproducer_command() {
        let r = report("3|2", Kind::Osp);
        assert_eq!(r.reproducer(), "superz verify osp --partition \"3|2\"");
    }
}
