//! Batch command-line front end for exact computations with connections
//! `A(z) dlog z` over GL_n and SL_n: alignment, reduction to (zero)
//! standard form, construction of relatives, and classification up to
//! gauge equivalence and up to relatedness.
//!
//! Boolean commands (`equivalent`, `related`) exit with 0 for *yes* and 1
//! for *no*; every error exits with 2.  Reports embed `verified=true` only
//! when the printed witness replayed exactly through the gauge action.

mod parse;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use regconn_core::align::{align, default_precision};
use regconn_core::centralizer::CentralizerData;
use regconn_core::classify::{
    classify_relative_to, dmodule_decompose, gl_equivalent, related, sl_gauge_equivalent,
    zero_standard_base,
};
use regconn_core::connection::apply_chain;
use regconn_core::linalg::{jordan_form, Matrix};
use regconn_core::reduce::{standardize, zero_standardize};
use regconn_core::relatives::list_relatives;
use regconn_core::scalar::Cyclotomic;
use regconn_core::series::Exponent;
use regconn_core::{Connection, GaugeMap, GroupTag, Shape};

use parse::{parse_connection, parse_scalar_matrix, render_connection};
use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "regconn",
    about = "Exact computations with regular singular connections A(z) dlog z",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: human-readable or line-oriented key=value.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Working precision (an exponent bound); inferred when omitted.
    #[arg(long, global = true)]
    precision: Option<i64>,
    /// Require all input scalars to lie in Q(zeta_N) for this conductor.
    #[arg(long, global = true)]
    conductor: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lattice {
    Gl,
    Sl,
}

impl From<Lattice> for GroupTag {
    fn from(l: Lattice) -> GroupTag {
        match l {
            Lattice::Gl => GroupTag::Gl,
            Lattice::Sl => GroupTag::Sl,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Transform a first-kind connection to an aligned one, with witness.
    Align { file: PathBuf },
    /// Reduce to standard form X dlog z on a minimal covering.
    Standardize {
        file: PathBuf,
        #[arg(long, value_enum)]
        lattice: Lattice,
    },
    /// Reduce a standard form to zero standard form.
    ZeroStandardize {
        file: PathBuf,
        #[arg(long, value_enum)]
        lattice: Lattice,
    },
    /// Torsion class of an sl connection relative to a base point.
    Classify {
        file: PathBuf,
        /// Base point matrix (in Jordan normal form); derived from the
        /// connection's own zero-standard reduction when omitted.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Decide gauge equivalence of two connections (exit 0 = yes, 1 = no).
    Equivalent {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        lattice: Lattice,
    },
    /// Decide relatedness of two connections (exit 0 = yes, 1 = no).
    Related { a: PathBuf, b: PathBuf },
    /// List the relatives of X dlog z at a covering level.
    Relatives {
        file: PathBuf,
        #[arg(long)]
        level: u64,
    },
    /// Decompose a regular connection into Fuchsian D-module classes.
    Dmodule { file: PathBuf },
    /// Filtration, torus, and Weyl-group data of a centralizer.
    Centralizer { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Human => Format::Human,
        FormatArg::Kv => Format::Kv,
    };
    match run(&cli.command, format, cli.precision, cli.conductor) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_conductor(conn: &Connection, limit: Option<u64>) -> Result<(), String> {
    let Some(n) = limit else { return Ok(()) };
    for r in 0..conn.dim() {
        for c in 0..conn.dim() {
            for (_, coeff) in conn.coeff().at(r, c).iter() {
                let k = coeff.conductor();
                if n % k != 0 {
                    return Err(format!(
                        "scalar of conductor {k} does not lie in Q(zeta_{n})"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn load_connection(path: &Path, limit: Option<u64>) -> Result<Connection, String> {
    let conn = parse_connection(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    check_conductor(&conn, limit)?;
    Ok(conn)
}

/// Load a constant matrix from either a bare matrix file or a connection
/// file in standard form.
fn load_constant_matrix(
    path: &Path,
    tag: GroupTag,
    limit: Option<u64>,
) -> Result<Matrix<Cyclotomic>, String> {
    let text = read(path)?;
    let x = if text.trim_start().starts_with("group=") {
        let conn = parse_connection(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        check_conductor(&conn, limit)?;
        match conn.classify_shape() {
            Shape::Standard(x) | Shape::ZeroStandard(x) => x,
            _ => {
                return Err(format!(
                    "{}: expected a constant coefficient matrix",
                    path.display()
                ))
            }
        }
    } else {
        parse_scalar_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))?
    };
    let probe = Connection::from_constant(&x, tag).map_err(|e| e.to_string())?;
    check_conductor(&probe, limit)?;
    Ok(x)
}

fn precision_for(conn: &Connection, flag: Option<i64>) -> Exponent {
    match flag {
        Some(p) => Exponent::from_integer(p),
        None => default_precision(conn) + Exponent::from_integer(4),
    }
}

fn chain_report(report: &mut Report, chain: &[GaugeMap]) {
    report.add("chain_length", chain.len());
    for (i, g) in chain.iter().enumerate() {
        report.add(format!("chain_{i}"), g.matrix());
    }
}

fn run(
    command: &Command,
    format: Format,
    precision: Option<i64>,
    conductor: Option<u64>,
) -> Result<u8, String> {
    let mut report = Report::new();
    let code = match command {
        Command::Align { file } => {
            let conn = load_connection(file, conductor)?;
            let p = precision_for(&conn, precision);
            let al = align(&conn, p).map_err(|e| e.to_string())?;
            let replay = al.witness.apply(&conn).map_err(|e| e.to_string())?;
            report.add("aligned", al.base.coeff());
            report.add(
                "aligned_file",
                render_connection(&al.base).replace('\n', " | "),
            );
            report.add("semisimple_part", &al.semisimple_part);
            report.add("witness", al.witness.matrix());
            report.add("witness_inverse", al.witness.inverse_matrix());
            report.add("precision", al.precision);
            report.add("truncated_input", al.truncated_input);
            report.add("verified", replay.agrees_with(&al.base));
            0
        }
        Command::Standardize { file, lattice } => {
            let conn = load_connection(file, conductor)?;
            let p = precision_for(&conn, precision);
            let st = standardize(&conn, (*lattice).into(), p).map_err(|e| e.to_string())?;
            let pulled = conn.pullback(st.multiplier);
            let replay = apply_chain(&st.chain, &pulled).map_err(|e| e.to_string())?;
            let target =
                Connection::from_constant(&st.standard, conn.tag()).map_err(|e| e.to_string())?;
            report.add("m", st.multiplier);
            report.add("standard", &st.standard);
            chain_report(&mut report, &st.chain);
            report.add("verified", replay.agrees_with(&target));
            0
        }
        Command::ZeroStandardize { file, lattice } => {
            let tag: GroupTag = (*lattice).into();
            let x = load_constant_matrix(file, tag, conductor)?;
            let zs = zero_standardize(&x, tag).map_err(|e| e.to_string())?;
            let input = Connection::from_constant(&x, tag).map_err(|e| e.to_string())?;
            let replay =
                apply_chain(&zs.chain, &input.pullback(zs.cover)).map_err(|e| e.to_string())?;
            let target =
                Connection::from_constant(&zs.zero_standard, tag).map_err(|e| e.to_string())?;
            report.add("cover", zs.cover);
            report.add("zero_standard", &zs.zero_standard);
            chain_report(&mut report, &zs.chain);
            report.add("verified", replay.agrees_with(&target));
            0
        }
        Command::Classify { file, base } => {
            let conn = load_connection(file, conductor)?;
            if conn.tag() != GroupTag::Sl {
                return Err("classification requires an sl connection".into());
            }
            let p = precision_for(&conn, precision);
            let base_matrix = match base {
                Some(path) => load_constant_matrix(path, GroupTag::Sl, conductor)?,
                None => zero_standard_base(&conn, p).map_err(|e| e.to_string())?,
            };
            let class = classify_relative_to(&base_matrix, &conn, p).map_err(|e| e.to_string())?;
            report.add("base", &base_matrix);
            report.add("level", class.level());
            report.add(
                "exponents",
                class
                    .exponents()
                    .iter()
                    .map(|j| j.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            report.add("trivial", class.is_trivial());
            0
        }
        Command::Equivalent { a, b, lattice } => {
            let ca = load_connection(a, conductor)?;
            let cb = load_connection(b, conductor)?;
            if ca.dim() != cb.dim() {
                report.add("equivalent", false);
                report.print(format);
                return Ok(1);
            }
            let p = precision_for(&ca, precision).max(precision_for(&cb, precision));
            match lattice {
                Lattice::Gl => {
                    let sa = standardize(&ca, GroupTag::Gl, p).map_err(|e| e.to_string())?;
                    let sb = standardize(&cb, GroupTag::Gl, p).map_err(|e| e.to_string())?;
                    let ja = jordan_form(&sa.standard, GroupTag::Gl).map_err(|e| e.to_string())?;
                    let jb = jordan_form(&sb.standard, GroupTag::Gl).map_err(|e| e.to_string())?;
                    match gl_equivalent(&ja, &jb) {
                        Some(step) => {
                            // Full witness from A to B: through both chains
                            // and the standard-form witness.
                            let wa = fold(&sa.chain);
                            let wb = fold(&sb.chain);
                            let pa = GaugeMap::constant(ja.transition(), GroupTag::Gl)
                                .map_err(|e| e.to_string())?;
                            let pb = GaugeMap::constant(jb.transition(), GroupTag::Gl)
                                .map_err(|e| e.to_string())?;
                            let total = wb
                                .inverted()
                                .compose(&pb)
                                .compose(&step)
                                .compose(&pa.inverted())
                                .compose(&wa);
                            let replay = total.apply(&ca).map_err(|e| e.to_string())?;
                            report.add("equivalent", true);
                            report.add("witness", total.matrix());
                            report.add("verified", replay.agrees_with(&cb));
                            0
                        }
                        None => {
                            report.add("equivalent", false);
                            1
                        }
                    }
                }
                Lattice::Sl => {
                    let eq = sl_gauge_equivalent(&ca, &cb, p).map_err(|e| e.to_string())?;
                    report.add("equivalent", eq);
                    if eq {
                        0
                    } else {
                        1
                    }
                }
            }
        }
        Command::Related { a, b } => {
            let ca = load_connection(a, conductor)?;
            let cb = load_connection(b, conductor)?;
            if ca.dim() != cb.dim() {
                report.add("related", false);
                report.print(format);
                return Ok(1);
            }
            let p = precision_for(&ca, precision).max(precision_for(&cb, precision));
            // Relatedness is decided on the scaled standard forms.
            let sa = standardize(&ca, GroupTag::Gl, p).map_err(|e| e.to_string())?;
            let sb = standardize(&cb, GroupTag::Gl, p).map_err(|e| e.to_string())?;
            let xa = sa
                .standard
                .scale(&Cyclotomic::ratio(1, sa.multiplier as i64));
            let xb = sb
                .standard
                .scale(&Cyclotomic::ratio(1, sb.multiplier as i64));
            let ja = jordan_form(&xa, GroupTag::Gl).map_err(|e| e.to_string())?;
            let jb = jordan_form(&xb, GroupTag::Gl).map_err(|e| e.to_string())?;
            let rel = related(&ja, &jb);
            report.add("related", rel);
            if rel {
                0
            } else {
                1
            }
        }
        Command::Relatives { file, level } => {
            let x = load_constant_matrix(file, GroupTag::Sl, conductor)?;
            let rels = list_relatives(&x, *level).map_err(|e| e.to_string())?;
            report.add("level", level);
            report.add("count", rels.len());
            for (i, rel) in rels.iter().enumerate() {
                report.add(
                    format!("class_{i}"),
                    rel.class
                        .exponents()
                        .iter()
                        .map(|j| j.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
                report.add(format!("connection_{i}"), rel.connection.coeff());
                report.add(format!("witness_{i}"), rel.witness.matrix());
            }
            0
        }
        Command::Dmodule { file } => {
            let conn = load_connection(file, conductor)?;
            let p = precision_for(&conn, precision);
            let dec = dmodule_decompose(&conn, p).map_err(|e| e.to_string())?;
            report.add("summands", dec.summands().len());
            for (i, (x, a)) in dec.summands().iter().enumerate() {
                report.add(format!("summand_{i}"), format!("residue={x} size={a}"));
            }
            0
        }
        Command::Centralizer { file } => {
            let x = load_constant_matrix(file, GroupTag::Gl, conductor)?;
            let data = CentralizerData::new(&x).map_err(|e| e.to_string())?;
            report.add("torus_rank", data.torus_rank());
            report.add(
                "blocks",
                data.blocks()
                    .iter()
                    .map(|(x0, a)| format!("({x0},{a})"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            for (i, g) in data.weyl_groups().iter().enumerate() {
                report.add(
                    format!("weyl_group_{i}"),
                    g.iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            for lambda in data.eigenvalues() {
                let dims = data
                    .filtration_dims(&lambda)
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                report.add(format!("filtration[{lambda}]"), dims);
            }
            0
        }
    };
    report.print(format);
    Ok(code)
}

fn fold(chain: &[GaugeMap]) -> GaugeMap {
    let mut acc = GaugeMap::identity(chain[0].dim(), GroupTag::Gl);
    for g in chain {
        acc = g.compose(&acc);
    }
    acc
}
