//! The `wpl` command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 semantic input error,
//! 3 certificate failure.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundle_quiver::{default_k_max, extract_arrows, extract_relations};
use crate::canonical_algebra::{build_i, build_q, vertex_kinds};
use crate::coxring::{h0_basis, h0_dim};
use crate::degree_expr::parse_degree;
use crate::error::Error;
use crate::export::{format_rational, parse_rational, to_dot, vertex_name, QuiverDoc};
use crate::moduli::{
    build_framed, is_isomorphic, is_stable, is_stable_framed, is_stable_geometric, rep_from_point,
    StabilityParam,
};
use crate::picard::{Rational, WplData};
use crate::tilting::{classify, is_pullback_acyclic, WeightClass};

/// Environment variable overriding the default truncation degree.
pub const KMAX_ENV: &str = "WPL_KMAX";

/// Paths enumerated by `kquiver --relations` before giving up.
const PATH_CAP: usize = 200_000;

#[derive(Parser, Debug)]
#[command(
    name = "wpl",
    version,
    about = "Exact computations on weighted projective lines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Weights, e.g. `2,3,4`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        required = true
    )]
    weights: Vec<i64>,
    /// Point parameters lambda_4, lambda_5, ... as integers or `a/b`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spherical / Euclidean / hyperbolic type and basic invariants.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimension and monomial basis of global sections.
    H0 {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long)]
        basis: bool,
    },
    /// The quiver with relations of the canonical algebra.
    Quiver {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The quiver of the pulled-back bundle on the canonical bundle.
    Kquiver {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        relations: bool,
    },
    /// Acyclicity of the pulled-back tilting bundle.
    Tilting {
        #[command(flatten)]
        common: Common,
    },
    /// Stability of the refined representation of a point of the Cox cone.
    Stability {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// Whether two points give isomorphic refined representations.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point1: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point2: Vec<String>,
    },
    /// Framed representation of a point `(v_1, ..., v_n, v_t)`.
    Framed {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<String>,
        #[arg(long)]
        kmax: Option<u32>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Index { .. } => 1,
            Error::CapExceeded(_) | Error::ZeroDegreeCycle => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn rationals(values: &[String], what: &str) -> Result<Vec<Rational>, Failure> {
    values
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| usage(format!("cannot parse {what} value {s:?}"))))
        .collect()
}

fn wpl(common: &Common) -> Result<WplData, Failure> {
    let lambda = rationals(&common.lambda, "lambda")?;
    Ok(WplData::new(&common.weights, lambda)?)
}

fn k_max(w: &WplData, flag: Option<u32>) -> Result<u32, Failure> {
    if let Some(k) = flag {
        return Ok(k);
    }
    match std::env::var(KMAX_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            usage(format!(
                "{KMAX_ENV} must be a non-negative integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(default_k_max(w)),
    }
}

fn rats(values: &[Rational]) -> Value {
    Value::from(values.iter().map(format_rational).collect::<Vec<_>>())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

/// Runs the command line `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut emit = |s: String| -> Result<(), Failure> {
        out.write_all(s.as_bytes())
            .and_then(|_| {
                if s.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            })
            .map_err(|e| Failure {
                code: 2,
                message: e.to_string(),
            })
    };
    match command {
        Command::Classify { common, format } => {
            let w = wpl(&common)?;
            let class = classify(&w);
            let (kind, label) = match class {
                WeightClass::Spherical(t) => ("spherical", Some(t.to_string())),
                WeightClass::Euclidean => ("euclidean", None),
                WeightClass::Hyperbolic => ("hyperbolic", None),
            };
            let chi = format_rational(&w.euler_char());
            let delta = w.delta(&w.omega());
            if format == Format::Json {
                emit(pretty(&json!({
                    "weights": w.weights(),
                    "kind": kind,
                    "label": label,
                    "euler_char": chi,
                    "delta_omega": delta,
                    "pbar": w.pbar(),
                    "vertices": w.vertex_count(),
                })))?;
            } else {
                emit(format!(
                    "class: {class}\neuler characteristic: {chi}\ndelta(omega): {delta}\npbar: {}\nvertices: {}",
                    w.pbar(),
                    w.vertex_count()
                ))?;
            }
            Ok(0)
        }
        Command::H0 {
            common,
            degree,
            basis,
        } => {
            let w = wpl(&common)?;
            let d = parse_degree(&degree, w.n())?.eval(&w);
            let mut text = format!("degree: {d}\ndim: {}\n", h0_dim(&w, &d));
            if basis {
                for m in h0_basis(&w, &d) {
                    text.push_str(&format!("{m}\n"));
                }
            }
            emit(text)?;
            Ok(0)
        }
        Command::Quiver { common, format } => {
            let w = wpl(&common)?;
            let q = build_q(&w);
            match format {
                Format::Dot => emit(to_dot(&w, &q))?,
                _ => emit(
                    QuiverDoc::new(&w, &q)
                        .with_relations(&q, &build_i(&w, &q))
                        .to_json(),
                )?,
            }
            Ok(0)
        }
        Command::Kquiver {
            common,
            kmax,
            format,
            relations,
        } => {
            let w = wpl(&common)?;
            let k = k_max(&w, kmax)?;
            let ext = extract_arrows(&w, k);
            let q = &ext.quiver;
            match format {
                Format::Dot => emit(to_dot(&w, q))?,
                _ => {
                    let mut doc = QuiverDoc::new(&w, q);
                    if relations {
                        let rels: Vec<_> = extract_relations(&ext, k, PATH_CAP)?
                            .into_iter()
                            .flat_map(|c| c.relations)
                            .collect();
                        doc = doc.with_relations(q, &rels);
                    }
                    doc.k_max = Some(k);
                    doc.closure_verified = Some(ext.closure_verified);
                    emit(doc.to_json())?;
                }
            }
            if ext.closure_verified {
                Ok(0)
            } else {
                Err(Failure {
                    code: 3,
                    message: format!(
                        "arrows do not generate the algebra up to degree {}; raise --kmax",
                        2 * k + 1
                    ),
                })
            }
        }
        Command::Tilting { common } => {
            let w = wpl(&common)?;
            let v = is_pullback_acyclic(&w);
            let kinds = vertex_kinds(&w);
            let witness = v.witness.as_ref().map(|wit| {
                json!({
                    "src": vertex_name(kinds[wit.i]),
                    "dst": vertex_name(kinds[wit.j]),
                    "k": wit.k,
                    "degree": wit.degree.to_string(),
                    "monomials": wit.monomials.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                })
            });
            emit(pretty(&json!({
                "weights": w.weights(),
                "class": classify(&w).to_string(),
                "acyclic": v.acyclic,
                "certificate": v.certificate,
                "discrepancy": v.discrepancy,
                "witness": witness,
            })))?;
            if v.discrepancy {
                return Err(Failure {
                    code: 3,
                    message: "Ext^1 vanishing disagrees with the type A prediction".into(),
                });
            }
            Ok(0)
        }
        Command::Stability { common, point } => {
            let w = wpl(&common)?;
            let rep = rep_from_point(&w, &rationals(&point, "point")?)?;
            let res = is_stable(&rep, &StabilityParam::vartheta(&w))?;
            let geometric = is_stable_geometric(&rep);
            emit(pretty(&json!({
                "stable": res.stable,
                "geometric": geometric,
                "destabilizer": res.destabilizer.as_deref().map(rats),
            })))?;
            if res.stable != geometric {
                return Err(Failure {
                    code: 3,
                    message: "cone test disagrees with the geometric criterion".into(),
                });
            }
            Ok(0)
        }
        Command::Orbit {
            common,
            point1,
            point2,
        } => {
            let w = wpl(&common)?;
            let a = rep_from_point(&w, &rationals(&point1, "point1")?)?;
            let b = rep_from_point(&w, &rationals(&point2, "point2")?)?;
            emit(pretty(&json!({ "isomorphic": is_isomorphic(&a, &b)? })))?;
            Ok(0)
        }
        Command::Framed { common, v, kmax } => {
            let w = wpl(&common)?;
            if w.n() > 3 {
                return Err(Error::Arity(w.n()).into());
            }
            let k = k_max(&w, kmax)?;
            let ext = extract_arrows(&w, k);
            let rep = build_framed(&w, &ext.quiver, &rationals(&v, "v")?)?;
            let arrows: Vec<Value> = ext
                .quiver
                .arrows
                .iter()
                .zip(&rep.w)
                .map(|(a, x)| json!({"src": a.src, "dst": a.dst, "label": a.label.to_string(), "w": format_rational(x)}))
                .collect();
            emit(pretty(&json!({
                "v": rats(&rep.v),
                "stable": is_stable_framed(&rep),
                "arrows": arrows,
            })))?;
            Ok(0)
        }
    }
}
