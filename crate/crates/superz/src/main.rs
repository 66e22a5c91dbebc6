use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;
use superz::centralizer::{centralizer_oracle, closed_form_centralizer};
use superz::centre::{centre_closed_form_osp, centre_closed_form_sl, centre_oracle, fixed_under_group, s_generators, so_variant_keeps_centre, CentreError};
use superz::diagrams::{build_g0_and_e0, core_data, diagram_osp, diagram_sl};
use superz::exactlin::fmt_q;
use superz::nilpotent::{complete_triple, Realization};
use superz::partitions::{Kind, Partition};
use superz::superalgebra::{AltFrame, SuperMatrix};
use superz::theorems::{sweep, verify};

#[derive(Parser)]
#[command(name = "superz", version, about = "Centralizers, centres and labelled Dynkin diagrams of nilpotent orbits in sl(m|n) and osp(m|2n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Sl,
    Osp,
}

impl From<AlgArg> for Kind {
    fn from(a: AlgArg) -> Kind {
        match a {
            AlgArg::Sl => Kind::Sl,
            AlgArg::Osp => Kind::Osp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Out {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
}

impl Out {
    fn json(&self) -> bool {
        self.json || self.format == Format::Json
    }
}

#[derive(Args)]
struct Target {
    /// Algebra family.
    #[arg(value_enum)]
    algebra: AlgArg,
    /// Partition `p|q`, e.g. "5,1|3".
    #[arg(long, short)]
    partition: String,
    #[command(flatten)]
    out: Out,
}

#[derive(Subcommand)]
enum Cmd {
    /// Draw the Dynkin pyramid.
    Pyramid {
        #[command(flatten)]
        t: Target,
        /// Show the alternative pyramid (osp only).
        #[arg(long)]
        alt_pyramid: bool,
        /// Write parities instead of box labels.
        #[arg(long)]
        parities: bool,
    },
    /// Print e, h and f.
    Element {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        alt_pyramid: bool,
    },
    /// Centralizer dimension and closed-form basis.
    Centralizer {
        #[command(flatten)]
        t: Target,
    },
    /// Centre of the centralizer.
    Centre {
        #[command(flatten)]
        t: Target,
    },
    /// Part of the centre fixed by the centralizer group (osp).
    Fixed {
        #[command(flatten)]
        t: Target,
        /// Use SO_m x Sp_2n instead of O_m x Sp_2n.
        #[arg(long)]
        so_variant: bool,
    },
    /// Labelled Dynkin diagram and its 2-free core.
    Diagram {
        #[command(flatten)]
        t: Target,
    },
    /// Run every check for one partition.
    Verify {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        so_variant: bool,
    },
    /// Run every check for all partitions up to a size.
    Sweep {
        #[arg(value_enum)]
        algebra: AlgArg,
        /// Bound on m+n (sl) or m+2n (osp).
        #[arg(long)]
        max: usize,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        so_variant: bool,
        /// Print every line, not only failures.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        out: Out,
    },
}

enum Failure {
    Usage(String),
    Fail,
}

type Res = Result<(), Failure>;

fn parse(t: &Target) -> Result<Partition, Failure> {
    Partition::parse(&t.partition, t.algebra.into()).map_err(|e| Failure::Usage(e.to_string()))
}

fn matrix_rows(m: &SuperMatrix) -> Vec<Vec<String>> {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| fmt_q(m.get(i, j))).collect()).collect()
}

fn matrix_text(m: &SuperMatrix) -> String {
    let rows = matrix_rows(m);
    let w = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    rows.iter().map(|r| r.iter().map(|s| format!("{s:>w$}")).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn emit(out: &Out, value: Value, text: String) {
    let mut text = if out.json() { serde_json::to_string_pretty(&value).expect("serializable") } else { text };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn pyramid(t: &Target, alt: bool, parities: bool) -> Res {
    let part = parse(t)?;
    if alt && part.kind() != Kind::Osp {
        return Err(Failure::Usage("--alt-pyramid needs an osp partition".into()));
    }
    let r = Realization::new(&part, alt);
    let value = serde_json::to_value(&r.pyramid).expect("serializable");
    emit(&t.out, value, r.pyramid.render(!parities));
    Ok(())
}

fn element(t: &Target, alt: bool) -> Res {
    let part = parse(t)?;
    if alt && part.kind() != Kind::Osp {
        return Err(Failure::Usage("--alt-pyramid needs an osp partition".into()));
    }
    let r = Realization::new(&part, alt);
    let triple = complete_triple(&r.e, &r.h, &r.algebra).map_err(|e| Failure::Usage(e.to_string()))?;
    let value = json!({
        "partition": part.to_string(),
        "e": matrix_rows(&triple.e),
        "h": matrix_rows(&triple.h),
        "f": matrix_rows(&triple.f),
    });
    let text = format!("e =\n{}\nh =\n{}\nf =\n{}\n", matrix_text(&triple.e), matrix_text(&triple.h), matrix_text(&triple.f));
    emit(&t.out, value, text);
    Ok(())
}

fn centralizer(t: &Target) -> Res {
    let part = parse(t)?;
    let r = Realization::new(&part, part.kind() == Kind::Osp);
    let oracle = centralizer_oracle(&r.algebra, &r.e);
    let (elems, cf) = closed_form_centralizer(&part);
    let agree = cf.span == oracle.span;
    let names: Vec<String> = elems.iter().map(|x| x.describe()).collect();
    let value = json!({
        "partition": part.to_string(),
        "dim": oracle.dim(),
        "formula": superz::centralizer::dim_formula(&part),
        "closed_form_matches": agree,
        "basis": names,
    });
    let text = format!("dim g^e = {}\nclosed form matches oracle: {agree}\n{}\n", oracle.dim(), names.join("\n"));
    emit(&t.out, value, text);
    if agree {
        Ok(())
    } else {
        Err(Failure::Fail)
    }
}

fn centre(t: &Target) -> Res {
    let part = parse(t)?;
    let r = Realization::new(&part, part.kind() == Kind::Osp);
    let z = centre_oracle(&centralizer_oracle(&r.algebra, &r.e));
    let closed = match part.kind() {
        Kind::Sl => centre_closed_form_sl(&part),
        Kind::Osp => centre_closed_form_osp(&part).map(|(_, c)| c),
    };
    let (tag, names, agree): (String, Vec<String>, bool) = match closed {
        Ok(c) => (format!("{:?}", c.case_tag), c.generators.iter().map(|g| g.name.clone()).collect(), c.span == z.span),
        Err(CentreError::SlOneOne) => ("Oracle".to_string(), vec!["I".to_string()], z.dim() == 1),
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    let value = json!({
        "partition": part.to_string(),
        "case_tag": tag,
        "dim": z.dim(),
        "generators": names,
        "closed_form_matches": agree,
    });
    let text = format!("dim z(g^e) = {} ({tag})\n{}\nclosed form matches oracle: {agree}\n", z.dim(), names.join("\n"));
    emit(&t.out, value, text);
    if agree {
        Ok(())
    } else {
        Err(Failure::Fail)
    }
}

fn fixed(t: &Target, so_variant: bool) -> Res {
    let part = parse(t)?;
    if part.kind() != Kind::Osp {
        return Err(Failure::Usage("the group acts trivially on the centre for sl; use `centre`".into()));
    }
    let r = Realization::new(&part, true);
    let z = centre_oracle(&centralizer_oracle(&r.algebra, &r.e));
    let f = fixed_under_group(&part, &z.span, so_variant).map_err(|e| Failure::Usage(e.to_string()))?;
    let frame = AltFrame::new(&part.group().expect("osp partition"));
    let s: Vec<String> = s_generators(&frame).into_iter().map(|g| g.name).collect();
    let expected = if so_variant && so_variant_keeps_centre(&part) { z.dim() } else { s.len() };
    let ok = f.dim() == expected;
    let value = json!({
        "partition": part.to_string(),
        "so_variant": so_variant,
        "centre_dim": z.dim(),
        "fixed_dim": f.dim(),
        "expected_dim": expected,
        "S": s,
        "involutions": f.involutions,
    });
    let text = format!(
        "dim z(g^e) = {}\ndim fixed = {} (expected {expected})\nS = <{}>\ninvolutions: {}\n",
        z.dim(),
        f.dim(),
        s.join(", "),
        f.involutions.join(", ")
    );
    emit(&t.out, value, text);
    if ok {
        Ok(())
    } else {
        Err(Failure::Fail)
    }
}

fn diagram(t: &Target) -> Res {
    let part = parse(t)?;
    let r = Realization::new(&part, false);
    let d = match part.kind() {
        Kind::Sl => diagram_sl(&r.pyramid),
        Kind::Osp => diagram_osp(&r.pyramid),
    };
    let cd = core_data(&d, &r.pyramid);
    let g0 = build_g0_and_e0(&cd, &r.pyramid);
    let labels: Vec<String> = d.labels().iter().map(|l| l.to_string()).collect();
    let value = json!({ "partition": part.to_string(), "diagram": d, "core": cd, "g0": g0 });
    let blocks: Vec<String> = g0.blocks.iter().map(|b| format!("{}{}", if b.middle { "middle " } else { "" }, b.partition)).collect();
    let text = format!(
        "labels {}\n{}n2 = {}  sum = {}  k = {}  tau = {}  nu0 = {}\ng0 blocks: {}\n",
        labels.join(" "),
        d.render(),
        cd.n2,
        cd.label_sum,
        cd.k,
        cd.tau,
        cd.nu0,
        blocks.join(", ")
    );
    emit(&t.out, value, text);
    Ok(())
}

fn run_verify(t: &Target, so_variant: bool) -> Res {
    let part = parse(t)?;
    let report = verify(&part, so_variant);
    let value = serde_json::to_value(&report).expect("serializable");
    emit(&t.out, value, report.lines().join("\n"));
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Fail)
    }
}

fn run_sweep(kind: Kind, max: usize, jobs: Option<usize>, so_variant: bool, all: bool, out: &Out) -> Res {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let s = sweep(max, kind, so_variant);
    let mut text = String::new();
    for r in &s.reports {
        for line in r.lines() {
            if all || line.starts_with("FAIL") {
                text.push_str(&line);
                text.push('\n');
            }
        }
        if !r.passed() {
            text.push_str(&format!("  reproduce: {}\n", r.reproducer()));
        }
    }
    text.push_str(&format!("{} partitions, {} with failures\n", s.partitions, s.failures));
    emit(out, serde_json::to_value(&s).expect("serializable"), text);
    if s.passed() {
        Ok(())
    } else {
        Err(Failure::Fail)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Pyramid { t, alt_pyramid, parities } => pyramid(t, *alt_pyramid, *parities),
        Cmd::Element { t, alt_pyramid } => element(t, *alt_pyramid),
        Cmd::Centralizer { t } => centralizer(t),
        Cmd::Centre { t } => centre(t),
        Cmd::Fixed { t, so_variant } => fixed(t, *so_variant),
        Cmd::Diagram { t } => diagram(t),
        Cmd::Verify { t, so_variant } => run_verify(t, *so_variant),
        Cmd::Sweep { algebra, max, jobs, so_variant, all, out } => run_sweep((*algebra).into(), *max, *jobs, *so_variant, *all, out),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Fail) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
