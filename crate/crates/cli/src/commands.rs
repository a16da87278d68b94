use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use dessin_core::affine::{parse_window, validate_window, AffinePermutation, AffineSplit};
use dessin_core::f2gp::{compare, decode, encode, parse_zigzag, sym_rep, Encoding, ReducedWord, Sl2Rep, StringModule};
use dessin_core::grassmann::{
    lattice_equal, standard_flag, validate_flag, FlagReport, LatticeBasis, LatticeFlag,
};
use dessin_core::lusztig::{
    big_matrix, big_matrix_is_nilpotent, check_equivariance, lambda_lattices, phi_nilpotent, CyclicQuiverRep,
    LambdaLattice, NilpotencyMode,
};
use dessin_core::order::build_surface_order;
use dessin_core::permgroup::{Constellation, MonodromyOrder};
use dessin_core::quiver::{check_surface_axioms, medial_quiver, nonzero_cycle_lengths, Quiver, RelationIdeal};
use dessin_core::rational::QMatrix;
use dessin_core::LaurentMatrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::input::{json, CliError};
use crate::{
    AffineCmd, Cli, Command, ConstellationCmd, F2Cmd, Format, GpCmd, LatticeCmd, LusztigCmd, Mode, OrderCmd,
    QuiverCmd,
};

pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverReport {
    quiver: Quiver,
    relations: RelationIdeal,
    cycle_lengths: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize)]
struct WindowReport {
    n: usize,
    window: Vec<i64>,
    valid: bool,
}

#[derive(Serialize, Deserialize)]
struct SplitReport {
    split: AffineSplit,
    winding_numbers: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct EmbedReport {
    basis: LatticeBasis,
    component_index: i64,
}

#[derive(Serialize, Deserialize)]
struct EquivarianceReport {
    equivariant: bool,
}

#[derive(Serialize, Deserialize)]
struct RepReport {
    nilpotent: bool,
    big_matrix_nilpotent: bool,
    big_matrix: LaurentMatrix,
    lattices: Vec<LambdaLattice>,
}

#[derive(Serialize, Deserialize)]
struct CompareReport {
    first: ReducedWord,
    second: ReducedWord,
    ordering: String,
}

#[derive(Serialize, Deserialize)]
struct SymReport {
    rep: Sl2Rep,
    commutators_hold: bool,
    weights: Vec<i64>,
}

/// Renders `value` as JSON in json mode, otherwise through `text`.
fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(CliError::domain)?;
            s.push('\n');
            Ok(s)
        }
        Format::Text => Ok(text(value)),
        Format::Dot => Err(CliError::Parse("dot output is only available for quiver commands".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Constellation(c) => constellation(f, c),
        Command::Quiver(c) => quiver(f, c),
        Command::Order(c) => order(f, c),
        Command::Affine(c) => affine(f, c),
        Command::Lattice(c) => lattice(f, c),
        Command::Lusztig(c) => lusztig(f, c),
        Command::F2(c) => f2(f, c),
        Command::Gp(c) => gp(f, c),
    }
}

fn constellation(f: Format, cmd: &ConstellationCmd) -> Result<Output, CliError> {
    match cmd {
        ConstellationCmd::Validate { input } => {
            let c: Constellation = json(input)?;
            let report = c.validate();
            let text = emit(f, &report, |r| format!("{r}\nvalid={}\n", r.valid))?;
            Ok(Output { text, status: if report.valid { 0 } else { 1 } })
        }
        ConstellationCmd::Genus { input } => {
            let c: Constellation = json(input)?;
            let s = c.surface_data().map_err(CliError::domain)?;
            emit(f, &s, |s| format!("{s}\n")).map(Output::ok)
        }
        ConstellationCmd::Monodromy { input, cap } => {
            let c: Constellation = json(input)?;
            let order = c.monodromy_order(*cap).map_err(CliError::domain)?;
            emit(f, &order, |o| match o {
                MonodromyOrder::Order(n) => format!("order={n}\n"),
                MonodromyOrder::Overflow => format!("order>{cap}\n"),
            })
            .map(Output::ok)
        }
        ConstellationCmd::Random { degree, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let c = Constellation::random(*degree, &mut rng).map_err(CliError::domain)?;
            emit(f, &c, |c| format!("sigma={}\nalpha={}\nphi={}\n", c.sigma(), c.alpha(), c.phi()))
                .map(Output::ok)
        }
    }
}

fn quiver(f: Format, cmd: &QuiverCmd) -> Result<Output, CliError> {
    let input = match cmd {
        QuiverCmd::Build { input } | QuiverCmd::Axioms { input } | QuiverCmd::Dot { input } => input,
    };
    let c: Constellation = json(input)?;
    c.ensure_valid().map_err(CliError::domain)?;
    let (q, ideal) = medial_quiver(&c).map_err(CliError::domain)?;
    if matches!(cmd, QuiverCmd::Dot { .. }) || f == Format::Dot {
        return Ok(Output::ok(q.to_dot(&ideal)));
    }
    match cmd {
        QuiverCmd::Axioms { .. } => {
            let report = check_surface_axioms(&q, &ideal);
            let text = emit(f, &report, |r| format!("{r}\nsurface algebra={}\n", r.all))?;
            Ok(Output { text, status: if report.all { 0 } else { 1 } })
        }
        _ => {
            let cycle_lengths = nonzero_cycle_lengths(&q, &ideal).map_err(CliError::domain)?;
            let report = QuiverReport { quiver: q, relations: ideal, cycle_lengths };
            emit(f, &report, render_quiver).map(Output::ok)
        }
    }
}

fn render_quiver(r: &QuiverReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices={} arrows={}", r.quiver.vertices.len(), r.quiver.arrows.len());
    for v in &r.quiver.vertices {
        let pair: Vec<String> = v.half_edges.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  v{} = {{{}}}", v.id, pair.join(","));
    }
    for a in &r.quiver.arrows {
        let _ = writeln!(out, "  a{}: v{} -> v{} tag={}", a.id, a.tail, a.head, a.cycle_tag);
    }
    let rels: Vec<String> = r.relations.forbidden_pairs.iter().map(|(a, b)| format!("a{a}a{b}")).collect();
    let _ = writeln!(out, "relations={{{}}}", rels.join(", "));
    let lens: Vec<String> = r.cycle_lengths.iter().map(|(t, l)| format!("{t}:{l}")).collect();
    let _ = writeln!(out, "cycle lengths={{{}}}", lens.join(", "));
    out
}

fn order(f: Format, cmd: &OrderCmd) -> Result<Output, CliError> {
    let input = match cmd {
        OrderCmd::Build { input } | OrderCmd::Member { input, .. } => input,
    };
    let c: Constellation = json(input)?;
    let order = build_surface_order(&c).map_err(CliError::domain)?;
    match cmd {
        OrderCmd::Build { .. } => emit(f, &order, |o| o.render()).map(Output::ok),
        OrderCmd::Member { element, .. } => {
            let element: Vec<LaurentMatrix> = json(element)?;
            let report = order.check_membership(&element).map_err(CliError::domain)?;
            emit(f, &report, |r| {
                format!("patterns={:?}\ngluings={:?}\nmember={}\n", r.patterns, r.gluings, r.member)
            })
            .map(Output::ok)
        }
    }
}

fn window_arg(n: Option<usize>, window: &str) -> Result<Vec<i64>, CliError> {
    let w = parse_window(window).map_err(CliError::parse)?;
    match n {
        Some(n) if n != w.len() => Err(CliError::Parse(format!("--n {n} but the window has {} entries", w.len()))),
        _ => Ok(w),
    }
}

fn affine_arg(n: Option<usize>, window: &str) -> Result<AffinePermutation, CliError> {
    AffinePermutation::new(window_arg(n, window)?).map_err(CliError::domain)
}

fn affine(f: Format, cmd: &AffineCmd) -> Result<Output, CliError> {
    match cmd {
        AffineCmd::Validate { n, window } => {
            let w = window_arg(*n, window)?;
            let report = WindowReport { n: w.len(), valid: validate_window(w.len(), &w), window: w };
            let text = emit(f, &report, |r| format!("valid={}\n", r.valid))?;
            Ok(Output { text, status: if report.valid { 0 } else { 1 } })
        }
        AffineCmd::Split { n, window } => {
            let u = affine_arg(*n, window)?;
            let report = SplitReport { split: u.split(), winding_numbers: u.winding_numbers() };
            emit(f, &report, |r| {
                format!(
                    "finite={}\ntranslation={:?}\nwinding={:?}\n",
                    r.split.finite_permutation(),
                    r.split.translation,
                    r.winding_numbers
                )
            })
            .map(Output::ok)
        }
        AffineCmd::Matrix { n, window, precision } => {
            let u = affine_arg(*n, window)?;
            emit(f, &u.to_matrix(*precision), |m| format!("{m}\n")).map(Output::ok)
        }
        AffineCmd::Compose { n, window, with } => {
            let u = affine_arg(*n, window)?;
            let v = affine_arg(*n, with)?;
            let uv = u.compose(&v).map_err(CliError::domain)?;
            emit(f, &uv, |w| format!("{w}\n")).map(Output::ok)
        }
    }
}

fn bases(input: &str) -> Result<Vec<LatticeBasis>, CliError> {
    let ms: Vec<LaurentMatrix> = json(input)?;
    ms.into_iter().map(|m| LatticeBasis::new(m).map_err(CliError::domain)).collect()
}

fn lattice(f: Format, cmd: &LatticeCmd) -> Result<Output, CliError> {
    match cmd {
        LatticeCmd::Component { input } => {
            let indices = bases(input)?
                .iter()
                .map(|b| b.component_index().map_err(CliError::domain))
                .collect::<Result<Vec<_>, _>>()?;
            emit(f, &indices, |ix| {
                ix.iter().enumerate().map(|(k, i)| format!("L{} index={i}\n", k + 1)).collect()
            })
            .map(Output::ok)
        }
        LatticeCmd::Equal { input } => {
            let ls = bases(input)?;
            let mut table = Vec::with_capacity(ls.len());
            for a in &ls {
                let row = ls.iter().map(|b| lattice_equal(a, b).map_err(CliError::domain)).collect::<Result<Vec<_>, _>>()?;
                table.push(row);
            }
            emit(f, &table, |t| {
                let mut out = String::from("   ");
                for k in 0..t.len() {
                    let _ = write!(out, " L{}", k + 1);
                }
                out.push('\n');
                for (k, row) in t.iter().enumerate() {
                    let _ = write!(out, "L{}:", k + 1);
                    for &eq in row {
                        out.push_str(if eq { "  =" } else { "  ." });
                    }
                    out.push('\n');
                }
                out
            })
            .map(Output::ok)
        }
        LatticeCmd::Flag { input, standard, precision } => {
            let flag = match (input, standard) {
                (_, Some(n)) => standard_flag(*n, *precision),
                (Some(i), None) => LatticeFlag { chain: bases(i)? },
                (None, None) => return Err(CliError::Parse("give a JSON chain or --standard N".into())),
            };
            let report = validate_flag(&flag).map_err(CliError::domain)?;
            let text = emit(f, &report, render_flag)?;
            Ok(Output { text, status: if report.valid { 0 } else { 1 } })
        }
    }
}

fn render_flag(r: &FlagReport) -> String {
    format!(
        "containments={:?}\nx_twist={:?}\nwraps={}\nindex_steps={:?}\nvalid={}\n",
        r.containments, r.x_twist, r.wraps, r.index_steps, r.valid
    )
}

fn lusztig(f: Format, cmd: &LusztigCmd) -> Result<Output, CliError> {
    match cmd {
        LusztigCmd::Embed { matrix, precision } => {
            let n: QMatrix = json(matrix)?;
            let basis = phi_nilpotent(&n, *precision).map_err(CliError::domain)?;
            let component_index = basis.component_index().map_err(CliError::domain)?;
            let report = EmbedReport { basis, component_index };
            emit(f, &report, |r| format!("{}\ncomponent index={}\n", r.basis.matrix(), r.component_index))
                .map(Output::ok)
        }
        LusztigCmd::Equivariance { matrix, g, precision } => {
            let n: QMatrix = json(matrix)?;
            let g: QMatrix = json(g)?;
            let equivariant = check_equivariance(&g, &n, *precision).map_err(CliError::domain)?;
            let report = EquivarianceReport { equivariant };
            let text = emit(f, &report, |r| format!("equivariant={}\n", r.equivariant))?;
            Ok(Output { text, status: if equivariant { 0 } else { 1 } })
        }
        LusztigCmd::Rep { input, mode, precision } => {
            let rep: CyclicQuiverRep = json(input)?;
            let mode = match mode {
                Mode::Composite => NilpotencyMode::Composite,
                Mode::Vanishing => NilpotencyMode::Vanishing,
            };
            let nilpotent = rep.is_nilpotent(mode);
            let lattices = if nilpotent { lambda_lattices(&rep, *precision).map_err(CliError::domain)? } else { Vec::new() };
            let report = RepReport {
                nilpotent,
                big_matrix_nilpotent: big_matrix_is_nilpotent(&rep, *precision).map_err(CliError::domain)?,
                big_matrix: big_matrix(&rep, *precision),
                lattices,
            };
            emit(f, &report, render_rep).map(Output::ok)
        }
    }
}

fn render_rep(r: &RepReport) -> String {
    let mut out = format!(
        "nilpotent={}\nbig matrix nilpotent={}\nbig matrix:\n{}\n",
        r.nilpotent, r.big_matrix_nilpotent, r.big_matrix
    );
    for l in &r.lattices {
        let index = l.basis.component_index().map_or_else(|e| e.to_string(), |i| i.to_string());
        let _ = writeln!(out, "lattice at vertex {} (depth {}, index {index}):\n{}", l.vertex, l.depth, l.basis.matrix());
    }
    out
}

fn word(s: &str) -> Result<ReducedWord, CliError> {
    s.parse().map_err(CliError::parse)
}

fn f2(f: Format, cmd: &F2Cmd) -> Result<Output, CliError> {
    match cmd {
        F2Cmd::Encode { word: w } => {
            let e = encode(&word(w)?);
            emit(f, &e, |e| format!("{}\n", e.bits)).map(Output::ok)
        }
        F2Cmd::Decode { bits, copy } => {
            let w = decode(&Encoding { bits: bits.clone(), copy: Some(*copy) }).map_err(CliError::parse)?;
            emit(f, &w, |w| format!("{w}\n")).map(Output::ok)
        }
        F2Cmd::Compare { first, second } => {
            let (a, b) = (word(first)?, word(second)?);
            let ordering = match compare(&a, &b) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            let report = CompareReport { first: a, second: b, ordering: ordering.into() };
            emit(f, &report, |r| format!("{} {} {}\n", r.first, r.ordering, r.second)).map(Output::ok)
        }
    }
}

fn gp(f: Format, cmd: &GpCmd) -> Result<Output, CliError> {
    match cmd {
        GpCmd::String { zigzag } => {
            let steps = parse_zigzag(zigzag).map_err(CliError::parse)?;
            let m = StringModule::from_steps(&steps);
            emit(f, &m, |m| format!("dim={}\nX:\n{}\nY:\n{}\n", m.dim, m.x, m.y)).map(Output::ok)
        }
        GpCmd::Sym { n } => {
            let rep = sym_rep(*n);
            let report = SymReport { commutators_hold: rep.commutators_hold(), weights: rep.weights(), rep };
            emit(f, &report, |r| {
                format!(
                    "X:\n{}\nY:\n{}\nH:\n{}\nweights={:?}\ncommutators hold={}\n",
                    r.rep.x, r.rep.y, r.rep.h, r.weights, r.commutators_hold
                )
            })
            .map(Output::ok)
        }
    }
}
