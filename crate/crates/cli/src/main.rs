//! `dlhom` — batch CLI over the homology calculators. Deterministic
//! output only: sorted JSON keys, no timestamps. Exit codes: 0 ok,
//! 2 validation error, 1 internal error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dlhom::derivation::TaqDelta;
use dlhom::free::{
    apply_q, free_algebra_homology, reduced_free_algebra_homology, CellModule, FreeAlgebraHomology,
};
use dlhom::perm::Perm;
use dlhom::spectra::{
    cp_vs_ku_obstruction, h_to_mo_obstruction, kriz_taq_dimensions, kriz_taq_dimensions_alt,
    mu_dl_indecomposables, mu_indecomposables_closed, steinberger_theta_h, theta_mo,
    theta_prime_msu, theta_prime_mu, Fam, ThetaState,
};
use dlhom::symmetric::{
    double_cosets, homology_cp, homology_sigma_p, GradedVectorSpace, TensorPowerModule,
};
use dlhom::{Error, Field, PrimeField};

const DEFAULT_DEGREE_CAP: u64 = 512;
const DEGREE_CAP_ENV: &str = "DLHOM_DEGREE_CAP";

#[derive(Parser)]
#[command(
    name = "dlhom",
    version,
    about = "Exact homology of free commutative S-algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Render symbols with Greek letters instead of ASCII names.
    #[arg(long, global = true)]
    unicode: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert table and generator list of H_*(PX; k) for a cell module X.
    Basis {
        #[arg(long)]
        p: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_degree: u64,
        /// Use the reduced free algebra (requires a bottom cell).
        #[arg(long)]
        reduced: bool,
    },
    /// Apply Q^r (or beta Q^r) to a named generator of H_*(P̃X; F_p).
    ApplyQ {
        #[arg(long)]
        p: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_degree: u64,
        /// Bockstein marker: 0 for Q^r, 1 for beta Q^r.
        #[arg(long, default_value_t = 0)]
        eps: u8,
        #[arg(long)]
        r: u64,
        /// Target generator name, e.g. "s1" or "Q[0,2].s1".
        #[arg(long)]
        target: String,
    },
    /// The universal-derivation image Δ of a named generator.
    Delta {
        #[arg(long)]
        p: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        target: String,
    },
    /// θ′ (TAQ-Hurewicz) images for MU, MSU, MO or HF_p.
    ThetaPrime {
        #[arg(long, value_enum)]
        spectrum: Spectrum,
        /// Prime; required for MU and H.
        #[arg(long)]
        p: Option<String>,
        /// Generator index: b_n for MU, degree for MSU, a_n for MO,
        /// family index for H.
        #[arg(long)]
        n: u64,
        /// Generator family for spectrum H: xi or tau.
        #[arg(long)]
        family: Option<String>,
    },
    /// H_r(Σ_p; V^{⊗p}) or H_r(C_p; V^{⊗p}) for V with the given degrees.
    SymHomology {
        #[arg(long)]
        p: String,
        /// Comma-separated degrees of a basis of V, e.g. "0,1,2".
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        r_max: usize,
        #[arg(long, value_enum, default_value_t = Group::Sigma)]
        group: Group,
    },
    /// Representatives of Σ_m×Σ_n \ Σ_{m+n} / Σ_{m+n−1}.
    DoubleCosets {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// DL-indecomposable b-indices of H_*(MU; F_p).
    Indecomposables {
        #[arg(long)]
        p: String,
        #[arg(long)]
        max_index: u64,
    },
    /// dim TAQ_*(HF_2, S; HF_2) through a degree.
    KrizDims {
        #[arg(long)]
        max_degree: u64,
    },
    /// The two non-realization reports.
    Obstruction {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        max_degree: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Spectrum {
    #[value(name = "MU")]
    Mu,
    #[value(name = "MSU")]
    Msu,
    #[value(name = "MO")]
    Mo,
    #[value(name = "H")]
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Sigma,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "cp-ku")]
    CpKu,
    #[value(name = "h-mo")]
    HMo,
}

/// Rows for CSV output: a header plus (key, value) pairs.
struct Document {
    json: Value,
    csv_header: (&'static str, &'static str),
    csv_rows: Vec<(String, String)>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command, &cli.out) {
        Ok(doc) => match emit(&doc, &cli.out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    // anything traceable to user input is a validation failure
    match e {
        Error::SizeBound(_) => 1,
        _ => 2,
    }
}

fn emit(doc: &Document, out: &OutputOpts) -> std::io::Result<()> {
    let mut text = match out.format {
        Format::Json => serde_json::to_string_pretty(&doc.json).expect("serializable"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([doc.csv_header.0, doc.csv_header.1])
                .expect("csv record");
            for (k, v) in &doc.csv_rows {
                w.write_record([k, v]).expect("csv record");
            }
            String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
        }
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn degree_cap() -> u64 {
    std::env::var(DEGREE_CAP_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

fn check_cap(d: u64) -> Result<(), Error> {
    let cap = degree_cap();
    if d > cap {
        return Err(Error::BeyondTruncation { degree: d, cap });
    }
    Ok(())
}

fn parse_field(s: &str) -> Result<Field, Error> {
    // accept both `--p 2` and `--p F2`
    let normalized = if s.chars().all(|c| c.is_ascii_digit()) {
        format!("F{s}")
    } else {
        s.to_string()
    };
    let f: Field = normalized.parse()?;
    if let Ok(pf) = f.as_prime() {
        if !matches!(pf.p(), 2 | 3 | 5 | 7) {
            return Err(Error::InvalidArgument(format!(
                "prime {} outside the supported set {{2, 3, 5, 7}}",
                pf.p()
            )));
        }
    }
    Ok(f)
}

fn parse_prime(s: &str) -> Result<PrimeField, Error> {
    parse_field(s)?.as_prime()
}

/// Structural validation of CellModule JSON with JSON-pointer paths.
fn load_cell_module(path: &PathBuf, field: &Field) -> Result<CellModule, Error> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("at \"\": expected an object".into()))?;
    if !obj.get("field").is_some_and(Value::is_string) {
        return Err(Error::Parse(
            "at \"/field\": expected a string (\"F2\", \"F3\", \"F5\", \"F7\" or \"Q\")".into(),
        ));
    }
    let classes = obj
        .get("classes")
        .ok_or_else(|| Error::Parse("at \"/classes\": missing required field".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("at \"/classes\": expected an array".into()))?;
    for (i, c) in classes.iter().enumerate() {
        let co = c
            .as_object()
            .ok_or_else(|| Error::Parse(format!("at \"/classes/{i}\": expected an object")))?;
        if !co.get("name").is_some_and(Value::is_string) {
            return Err(Error::Parse(format!(
                "at \"/classes/{i}/name\": expected a string"
            )));
        }
        if !co.get("degree").is_some_and(Value::is_u64) {
            return Err(Error::Parse(format!(
                "at \"/classes/{i}/degree\": expected a non-negative integer"
            )));
        }
    }
    if let Some(b) = obj.get("bottom_cell") {
        if !b.is_string() && !b.is_null() {
            return Err(Error::Parse(
                "at \"/bottom_cell\": expected a string".into(),
            ));
        }
    }
    let x: CellModule =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    if x.field.to_string() != field.to_string() {
        return Err(Error::InvalidArgument(format!(
            "--p {} disagrees with the input's field {}",
            field, x.field
        )));
    }
    x.validate()?;
    Ok(x)
}

fn homology(x: &CellModule, max_degree: u64, reduced: bool) -> Result<FreeAlgebraHomology, Error> {
    if reduced {
        reduced_free_algebra_homology(x, max_degree)
    } else {
        free_algebra_homology(x, max_degree)
    }
}

fn run(cmd: &Command, out: &OutputOpts) -> Result<Document, Error> {
    match cmd {
        Command::Basis {
            p,
            input,
            max_degree,
            reduced,
        } => {
            check_cap(*max_degree)?;
            let field = parse_field(p)?;
            let x = load_cell_module(input, &field)?;
            let h = homology(&x, *max_degree, *reduced)?;
            let dims = h.hilbert()?;
            let gens: Vec<Value> = h
                .gens
                .iter()
                .map(|g| json!({"name": g.name, "degree": g.degree}))
                .collect();
            Ok(Document {
                json: json!({
                    "subcommand": "basis",
                    "field": field.to_string(),
                    "max_degree": max_degree,
                    "reduced": reduced,
                    "dims": dims,
                    "generators": gens,
                }),
                csv_header: ("degree", "dim"),
                csv_rows: dims
                    .iter()
                    .enumerate()
                    .map(|(d, &n)| (d.to_string(), n.to_string()))
                    .collect(),
            })
        }
        Command::ApplyQ {
            p,
            input,
            max_degree,
            eps,
            r,
            target,
        } => {
            check_cap(*max_degree)?;
            let field = parse_field(p)?;
            let x = load_cell_module(input, &field)?;
            let h = reduced_free_algebra_homology(&x, *max_degree)?;
            let image = apply_q(&h, *eps, *r, target)?;
            Ok(Document {
                json: json!({
                    "subcommand": "apply-q",
                    "field": field.to_string(),
                    "eps": eps,
                    "r": r,
                    "target": target,
                    "image": h.algebra.element_to_json(&image)?,
                    "rendered": h.algebra.render(&image),
                }),
                csv_header: ("input", "image"),
                csv_rows: vec![(format!("Q[{eps},{r}].{target}"), h.algebra.render(&image))],
            })
        }
        Command::Delta {
            p,
            input,
            max_degree,
            target,
        } => {
            check_cap(*max_degree)?;
            let field = parse_field(p)?;
            let x = load_cell_module(input, &field)?;
            let h = reduced_free_algebra_homology(&x, *max_degree)?;
            let delta = TaqDelta::new(&h)?;
            let image = delta.apply(&h.algebra.generator(target)?)?;
            let coords: BTreeMap<String, String> = image
                .terms()
                .map(|(k, c)| (k.clone(), c.to_coeff_string()))
                .collect();
            Ok(Document {
                json: json!({
                    "subcommand": "delta",
                    "field": field.to_string(),
                    "target": target,
                    "image": coords,
                    "rendered": image.render(),
                }),
                csv_header: ("input", "image"),
                csv_rows: vec![(target.clone(), image.render())],
            })
        }
        Command::ThetaPrime {
            spectrum,
            p,
            n,
            family,
        } => theta_prime_doc(*spectrum, p.as_deref(), *n, family.as_deref(), out.unicode),
        Command::SymHomology {
            p,
            degrees,
            r_max,
            group,
        } => {
            check_cap(*r_max as u64)?;
            let pf = parse_prime(p)?;
            let degs: Vec<u64> = degrees
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad degree list entry `{s}`")))
                })
                .collect::<Result<_, _>>()?;
            let v = GradedVectorSpace {
                field: pf,
                basis: degs
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| (format!("v{i}"), d))
                    .collect(),
            };
            let m = TensorPowerModule::new(v);
            let dims = match group {
                Group::Sigma => homology_sigma_p(&m, *r_max),
                Group::Cyclic => homology_cp(&m, *r_max),
            };
            let table: BTreeMap<String, usize> = dims
                .iter()
                .enumerate()
                .map(|(r, &d)| (format!("{r:03}"), d))
                .collect();
            Ok(Document {
                json: json!({
                    "subcommand": "sym-homology",
                    "field": pf.to_string(),
                    "group": match group { Group::Sigma => "sigma", Group::Cyclic => "cyclic" },
                    "degrees": degs,
                    "dims": table,
                }),
                csv_header: ("degree", "dim"),
                csv_rows: dims
                    .iter()
                    .enumerate()
                    .map(|(r, &d)| (r.to_string(), d.to_string()))
                    .collect(),
            })
        }
        Command::DoubleCosets { m, n } => {
            let reps = double_cosets(*m, *n)?;
            let rendered: Vec<String> = reps.iter().map(cycle_string).collect();
            let one_line: Vec<String> = reps.iter().map(|g| g.to_string()).collect();
            Ok(Document {
                json: json!({
                    "subcommand": "double-cosets",
                    "m": m,
                    "n": n,
                    "representatives": rendered,
                    "one_line": one_line,
                }),
                csv_header: ("input", "representative"),
                csv_rows: rendered
                    .iter()
                    .map(|r| (format!("{m}+{n}"), r.clone()))
                    .collect(),
            })
        }
        Command::Indecomposables { p, max_index } => {
            check_cap(*max_index)?;
            let pf = parse_prime(p)?;
            let indices = mu_dl_indecomposables(pf, *max_index)?;
            let closed = mu_indecomposables_closed(pf, *max_index);
            Ok(Document {
                json: json!({
                    "subcommand": "indecomposables",
                    "field": pf.to_string(),
                    "max_index": max_index,
                    "indices": indices,
                    "closed_form_agrees": indices == closed,
                }),
                csv_header: ("input", "index"),
                csv_rows: indices
                    .iter()
                    .map(|i| (format!("b{i}"), i.to_string()))
                    .collect(),
            })
        }
        Command::KrizDims { max_degree } => {
            check_cap(*max_degree)?;
            let dims = kriz_taq_dimensions(*max_degree);
            let alt = kriz_taq_dimensions_alt(*max_degree);
            Ok(Document {
                json: json!({
                    "subcommand": "kriz-dims",
                    "max_degree": max_degree,
                    "dims": dims,
                    "orders_agree": dims == alt,
                }),
                csv_header: ("degree", "dim"),
                csv_rows: dims
                    .iter()
                    .enumerate()
                    .map(|(d, &n)| (d.to_string(), n.to_string()))
                    .collect(),
            })
        }
        Command::Obstruction {
            which,
            p,
            max_degree,
        } => match which {
            Which::CpKu => {
                let pf =
                    parse_prime(p.as_deref().ok_or_else(|| {
                        Error::InvalidArgument("--which cp-ku requires --p".into())
                    })?)?;
                let d_max = max_degree.unwrap_or(24);
                check_cap(d_max)?;
                let first = cp_vs_ku_obstruction(pf, d_max)?;
                Ok(Document {
                    json: json!({
                        "subcommand": "obstruction",
                        "which": "cp-ku",
                        "field": pf.to_string(),
                        "max_degree": d_max,
                        "first_violation": first,
                    }),
                    csv_header: ("input", "value"),
                    csv_rows: vec![(
                        "first_violation".into(),
                        first.map_or("none".into(), |n| n.to_string()),
                    )],
                })
            }
            Which::HMo => {
                let rep = h_to_mo_obstruction();
                Ok(Document {
                    json: json!({
                        "subcommand": "obstruction",
                        "which": "h-mo",
                        "coeff": rep.coeff,
                        "target_index": rep.target_index,
                        "target_in_dual_steenrod_indecomposables": rep.target_in_a2,
                        "contradiction": rep.contradiction,
                    }),
                    csv_header: ("input", "value"),
                    csv_rows: vec![
                        (
                            "Q[0,4].a1".into(),
                            format!("{} a{}", rep.coeff, rep.target_index),
                        ),
                        ("contradiction".into(), rep.contradiction.to_string()),
                    ],
                })
            }
        },
    }
}

fn theta_prime_doc(
    spectrum: Spectrum,
    p: Option<&str>,
    n: u64,
    family: Option<&str>,
    unicode: bool,
) -> Result<Document, Error> {
    match spectrum {
        Spectrum::Mu => {
            let pf = parse_prime(
                p.ok_or_else(|| Error::InvalidArgument("--spectrum MU requires --p".into()))?,
            )?;
            let t = theta_prime_mu(n, pf)?;
            Ok(Document {
                json: json!({
                    "subcommand": "theta-prime",
                    "spectrum": "MU",
                    "field": pf.to_string(),
                    "n": n,
                    "summand": t.summand,
                    "image": t.image.render(unicode),
                }),
                csv_header: ("input", "image"),
                csv_rows: vec![(format!("b{n}"), t.image.render(unicode))],
            })
        }
        Spectrum::Msu => {
            let image = theta_prime_msu(n)?;
            Ok(Document {
                json: json!({
                    "subcommand": "theta-prime",
                    "spectrum": "MSU",
                    "field": "F2",
                    "degree": n,
                    "image": image.render(unicode),
                }),
                csv_header: ("input", "image"),
                csv_rows: vec![(format!("deg{n}"), image.render(unicode))],
            })
        }
        Spectrum::Mo => {
            let image = theta_mo(n)?;
            Ok(Document {
                json: json!({
                    "subcommand": "theta-prime",
                    "spectrum": "MO",
                    "field": "F2",
                    "n": n,
                    "image": image.render(unicode),
                }),
                csv_header: ("input", "image"),
                csv_rows: vec![(format!("a{n}"), image.render(unicode))],
            })
        }
        Spectrum::H => {
            let pf = parse_prime(
                p.ok_or_else(|| Error::InvalidArgument("--spectrum H requires --p".into()))?,
            )?;
            let fam = match family {
                Some("xi") => Fam::Xi,
                Some("tau") => Fam::Tau,
                Some(other) => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown family `{other}`; expected xi or tau"
                    )))
                }
                None => {
                    return Err(Error::InvalidArgument(
                        "--spectrum H requires --family xi|tau".into(),
                    ))
                }
            };
            let state = steinberger_theta_h(pf, fam, n as u32)?;
            let word = match state {
                ThetaState::Zero => "zero",
                ThetaState::Nonzero => "nonzero",
            };
            Ok(Document {
                json: json!({
                    "subcommand": "theta-prime",
                    "spectrum": "H",
                    "field": pf.to_string(),
                    "family": fam.ascii(),
                    "n": n,
                    "state": word,
                }),
                csv_header: ("input", "image"),
                csv_rows: vec![(format!("{}{n}", fam.ascii()), word.to_string())],
            })
        }
    }
}

/// Cycle notation, 1-based: identity → "id", a transposition → "(2 4)".
fn cycle_string(g: &Perm) -> String {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] || g.apply(start) == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = g.apply(i);
        }
        cycles.push(format!("({})", cyc.join(" ")));
    }
    if cycles.is_empty() {
        "id".into()
    } else {
        cycles.join("")
    }
}
