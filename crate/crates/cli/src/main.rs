//! `chowwitt`: JSON front end for the chowwitt library.

use std::io::{Read, Write};
use std::process::ExitCode;

use chowwitt::gersten::{self, ChowWittVerdict};
use chowwitt::json as cj;
use chowwitt::milnorwitt::{self, MwElement};
use chowwitt::rational_points::{self, DegreeOneVerdict, Verdict};
use chowwitt::suite::{self, SuiteConfig};
use chowwitt::wittgw::{self, Decision, GwElement};
use chowwitt::{Error, Field};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

const SCHEMA: &str = include_str!("../schemas/payloads.schema.json");

/// Exit status for a computed answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Violated = 1,
    Invalid = 2,
    Unknown = 3,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Unknown(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UndecidableAtBound(_)
            | Error::SearchExhausted(_)
            | Error::TowerBoundExceeded(_)
            | Error::FactorizationOverflow(_) => Failure::Unknown(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Run = Result<(Value, Status), Failure>;

#[derive(Parser, Debug)]
#[command(name = "chowwitt", version, about = "Exact quadratic forms, Milnor-Witt K-theory and quadratic zero-cycles")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Payload: a file path, `-` for standard input, or inline JSON.
    #[arg(long, global = true)]
    json: Option<String>,
    /// Search bound (heights, steps) for commands that search.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Seed for `suite run`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count override for `suite run`.
    #[arg(long, global = true)]
    samples: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Diagonal quadratic forms.
    Form {
        #[command(subcommand)]
        cmd: FormCmd,
    },
    /// Witt classes.
    Witt {
        #[command(subcommand)]
        cmd: WittCmd,
    },
    /// Grothendieck-Witt elements.
    Gw {
        #[command(subcommand)]
        cmd: GwCmd,
    },
    /// Milnor-Witt K-theory.
    Mw {
        #[command(subcommand)]
        cmd: MwCmd,
    },
    /// Quadratic zero-cycles on the projective line.
    P1 {
        #[command(subcommand)]
        cmd: P1Cmd,
    },
    /// Points and zero-cycles of degree one on curves.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// The verification suite.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand, Debug)]
enum FormCmd {
    Invariants,
    Isotropic,
    WittDecompose,
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    Equal,
}

#[derive(Subcommand, Debug)]
enum GwCmd {
    Make,
    Mul,
    Add,
}

#[derive(Subcommand, Debug)]
enum MwCmd {
    Symbol,
    Residue,
    Transfer,
    Reciprocity,
}

#[derive(Subcommand, Debug)]
enum P1Cmd {
    Qdeg,
    ResidueDivisor,
    ChowwittEqual,
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    Points,
    DegreeOne,
    LiftOne,
    Verify,
}

#[derive(Subcommand, Debug)]
enum SuiteCmd {
    Run,
}

impl Group {
    /// Name of the payload schema in `$defs`.
    fn schema_name(&self) -> Option<&'static str> {
        Some(match self {
            Group::Form { cmd: FormCmd::Invariants } => "form_invariants",
            Group::Form { cmd: FormCmd::Isotropic } => "form_isotropic",
            Group::Form { cmd: FormCmd::WittDecompose } => "form_witt-decompose",
            Group::Witt { cmd: WittCmd::Equal } => "witt_equal",
            Group::Gw { cmd: GwCmd::Make } => "gw_make",
            Group::Gw { cmd: GwCmd::Mul } => "gw_mul",
            Group::Gw { cmd: GwCmd::Add } => "gw_add",
            Group::Mw { cmd: MwCmd::Symbol } => "mw_symbol",
            Group::Mw { cmd: MwCmd::Residue } => "mw_residue",
            Group::Mw { cmd: MwCmd::Transfer } => "mw_transfer",
            Group::Mw { cmd: MwCmd::Reciprocity } => "mw_reciprocity",
            Group::P1 { cmd: P1Cmd::Qdeg } => "p1_qdeg",
            Group::P1 { cmd: P1Cmd::ResidueDivisor } => "p1_residue-divisor",
            Group::P1 { cmd: P1Cmd::ChowwittEqual } => "p1_chowwitt-equal",
            Group::Curve { cmd: CurveCmd::Points } => "curve_points",
            Group::Curve { cmd: CurveCmd::DegreeOne } => "curve_degree-one",
            Group::Curve { cmd: CurveCmd::LiftOne } => "curve_lift-one",
            Group::Curve { cmd: CurveCmd::Verify } => "curve_verify",
            Group::Suite { .. } => return None,
        })
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn read_payload(arg: Option<&str>) -> Result<Value, Failure> {
    let arg = arg.ok_or_else(|| invalid("this command needs --json <path|-|inline>"))?;
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("reading standard input: {e}")))?;
        s
    } else if arg.trim_start().starts_with('{') || arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| invalid(format!("reading {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| invalid(format!("payload is not JSON: {e}")))
}

fn validate(name: &str, payload: &Value) -> Result<(), Failure> {
    let mut schema: Value = serde_json::from_str(SCHEMA).expect("bundled schema is JSON");
    schema["$ref"] = json!(format!("#/$defs/{name}"));
    jsonschema::validate(&schema, payload).map_err(|e| invalid(format!("payload does not match schema {name}: {e}")))
}

fn field_of(payload: &Value) -> Result<Field, Failure> {
    Ok(cj::field_from_json(payload.get("field").ok_or_else(|| invalid("missing field"))?)?)
}

/// `{"field", "unit"}` or `{"field", "units": [a, b]}` as `[a]` or `[a][b]`.
fn symbol(payload: &Value) -> Result<MwElement, Failure> {
    let k = field_of(payload)?;
    let units: Vec<Value> = match (payload.get("unit"), payload.get("units")) {
        (Some(u), _) => vec![u.clone()],
        (None, Some(Value::Array(us))) => us.clone(),
        _ => return Err(invalid("a symbol needs unit or units")),
    };
    let mut x: Option<MwElement> = None;
    for u in &units {
        let e = match u {
            Value::Number(_) => k.from_i64(cj::int_from_json(u)?),
            _ => k.parse(u.as_str().unwrap_or_default())?,
        };
        let s = milnorwitt::mw_unit_symbol(&k, &e)?;
        x = Some(match x {
            None => s,
            Some(y) => milnorwitt::mw_mul(&y, &s)?,
        });
    }
    x.ok_or_else(|| invalid("empty symbol"))
}

fn mw_or_symbol(v: &Value) -> Result<MwElement, Failure> {
    if v.get("degree").is_some() {
        Ok(cj::mw_from_json(v, None)?)
    } else {
        symbol(v)
    }
}

fn inner<'a>(payload: &'a Value, key: &str) -> &'a Value {
    payload.get(key).unwrap_or(payload)
}

fn decision_status(d: Decision) -> Status {
    match d {
        Decision::Yes => Status::Ok,
        Decision::No => Status::Violated,
        Decision::Undecidable => Status::Unknown,
    }
}

fn run(cli: &Cli) -> Run {
    if let Group::Suite { cmd: SuiteCmd::Run } = cli.group {
        return suite_run(cli);
    }
    let name = cli.group.schema_name().expect("payload command");
    let p = read_payload(cli.json.as_deref())?;
    validate(name, &p)?;
    match &cli.group {
        Group::Form { cmd } => {
            let q = cj::form_from_json(&p, None)?;
            match cmd {
                FormCmd::Invariants => {
                    let k = q.field();
                    let inv = q.invariants()?;
                    let hasse: serde_json::Map<String, Value> =
                        inv.hasse.iter().map(|(v, h)| (v.to_string(), json!(h.to_string()))).collect();
                    Ok((
                        json!({
                            "field": cj::field_to_json(k),
                            "rank": inv.rank.to_string(),
                            "disc": k.format(&inv.disc),
                            "signed_disc": k.format(&inv.signed_disc),
                            "hasse": hasse,
                            "signature": inv.signature.map(|s| s.to_string()),
                        }),
                        Status::Ok,
                    ))
                }
                FormCmd::Isotropic => {
                    let iso = q.is_isotropic_bounded(cli.bound.unwrap_or(chowwitt::quadforms::DEFAULT_SEARCH_BOUND))?;
                    Ok((json!({"isotropic": iso}), Status::Ok))
                }
                FormCmd::WittDecompose => {
                    let (m, ker) = q.witt_decompose()?;
                    Ok((json!({"hyperbolic_planes": m.to_string(), "anisotropic": cj::form_to_json(&ker)}), Status::Ok))
                }
            }
        }
        Group::Witt { cmd: WittCmd::Equal } => {
            let a = cj::witt_from_json(&p["a"], None)?;
            let b = cj::witt_from_json(&p["b"], None)?;
            let d = wittgw::witt_equal(&a, &b)?;
            Ok((json!({"equal": cj::decision_to_json(d)}), decision_status(d)))
        }
        Group::Gw { cmd } => {
            let g = match cmd {
                GwCmd::Make => GwElement::make(cj::int_from_json(&p["rank"])?, cj::witt_from_json(&p["witt"], None)?)?,
                GwCmd::Mul | GwCmd::Add => {
                    let a = cj::gw_from_json(&p["a"], None)?;
                    let b = cj::gw_from_json(&p["b"], None)?;
                    if matches!(cmd, GwCmd::Mul) {
                        a.mul(&b)?
                    } else {
                        a.add(&b)?
                    }
                }
            };
            Ok((cj::gw_to_json(&g), Status::Ok))
        }
        Group::Mw { cmd } => match cmd {
            MwCmd::Symbol => Ok((cj::mw_to_json(&symbol(&p)?), Status::Ok)),
            MwCmd::Residue => {
                let x = mw_or_symbol(&p["element"])?;
                let k = x.field().base().filter(|_| x.field().is_function_field()).cloned().ok_or_else(|| {
                    invalid("residues need an element over a rational function field")
                })?;
                let v = cj::place_from_json(&k, &p["place"])?;
                Ok((cj::mw_to_json(&milnorwitt::residue(&x, &v)?), Status::Ok))
            }
            MwCmd::Transfer => {
                let g = cj::gw_from_json(&p["gw"], None)?;
                let t = match p.get("to") {
                    Some(to) => milnorwitt::transfer_to_base(&g, &cj::field_from_json(to)?)?,
                    None => milnorwitt::scharlau_transfer_gw(&g)?,
                };
                Ok((cj::gw_to_json(&t), Status::Ok))
            }
            MwCmd::Reciprocity => {
                let x = mw_or_symbol(inner(&p, "element"))?;
                let s = milnorwitt::reciprocity_sum(&x)?;
                let z = s.witt().is_zero()?;
                let witt = match z {
                    Decision::Yes => json!("zero"),
                    Decision::No => cj::witt_to_json(s.witt()),
                    Decision::Undecidable => json!("undecidable"),
                };
                let status = match (s.rank(), z) {
                    (0, Decision::Yes) => Status::Ok,
                    (_, Decision::Undecidable) if s.rank() == 0 => Status::Unknown,
                    _ => Status::Violated,
                };
                Ok((json!({"sum_rank": s.rank().to_string(), "sum_witt": witt}), status))
            }
        },
        Group::P1 { cmd } => match cmd {
            P1Cmd::Qdeg => {
                let z = cj::cycle_from_json(inner(&p, "cycle"))?;
                Ok((cj::gw_to_json(&gersten::qdeg(&z)?), Status::Ok))
            }
            P1Cmd::ResidueDivisor => {
                let x = mw_or_symbol(inner(&p, "element"))?;
                Ok((cj::cycle_to_json(&gersten::residue_divisor(&x)?), Status::Ok))
            }
            P1Cmd::ChowwittEqual => {
                let a = cj::cycle_from_json(&p["a"])?;
                let b = cj::cycle_from_json(&p["b"])?;
                let steps = cli.bound.unwrap_or(gersten::DEFAULT_LIFT_STEPS);
                Ok(match gersten::chowwitt_equal(&a, &b, steps)? {
                    ChowWittVerdict::EqualWithCertificate(beta) => {
                        (json!({"verdict": "equal", "certificate": cj::mw_to_json(&beta)}), Status::Ok)
                    }
                    ChowWittVerdict::NotEqual => (json!({"verdict": "not_equal"}), Status::Violated),
                    ChowWittVerdict::Unknown => (json!({"verdict": "unknown"}), Status::Unknown),
                })
            }
        },
        Group::Curve { cmd } => {
            let curve = cj::curve_from_json(inner(&p, "curve"))?;
            match cmd {
                CurveCmd::Points => {
                    let d = p.get("max_degree").map(cj::int_from_json).transpose()?.unwrap_or(2);
                    if !(1..=rational_points::MAX_POINT_DEGREE as i64).contains(&d) {
                        return Err(invalid(format!("max_degree must lie in 1..={}", rational_points::MAX_POINT_DEGREE)));
                    }
                    let pts = rational_points::find_points(&curve, d as usize, cli.bound.unwrap_or(3))?;
                    Ok((json!({"curve": cj::curve_to_json(&curve), "points": cj::points_to_json(&curve, &pts)}), Status::Ok))
                }
                CurveCmd::DegreeOne => {
                    let v = rational_points::has_zero_cycle_degree_one(&curve, cli.bound.unwrap_or(10))?;
                    let status = if matches!(v, DegreeOneVerdict::Unknown(_)) { Status::Unknown } else { Status::Ok };
                    Ok((cj::degree_one_to_json(&curve, &v), status))
                }
                CurveCmd::LiftOne => {
                    let w = match p.get("witness") {
                        Some(w) => cj::witness_from_json(&curve, w)?,
                        None => match rational_points::has_zero_cycle_degree_one(&curve, 10)? {
                            DegreeOneVerdict::Yes(w) => w,
                            DegreeOneVerdict::No(_) => {
                                return Ok((json!({"verdict": "no", "reason": "no zero-cycle of degree one"}), Status::Violated))
                            }
                            DegreeOneVerdict::Unknown(why) => return Err(Failure::Unknown(why)),
                        },
                    };
                    let height = cli.bound.unwrap_or(rational_points::DEFAULT_LIFT_HEIGHT);
                    let lift = rational_points::lift_one(&curve, &w, height)?;
                    Ok((cj::lift_to_json(&lift), decision_status(lift.verified)))
                }
                CurveCmd::Verify => {
                    let r = rational_points::verify_main_theorem(&curve, cli.bound.unwrap_or(suite::NO_BRANCH_HEIGHT))?;
                    let status = if r.verdict == Verdict::Unknown { Status::Unknown } else { Status::Ok };
                    Ok((cj::report_to_json(&r), status))
                }
            }
        }
        Group::Suite { .. } => unreachable!("handled above"),
    }
}

fn suite_run(cli: &Cli) -> Run {
    let cfg = SuiteConfig { seed: cli.seed.unwrap_or(0), samples: cli.samples };
    let report = suite::run_suite(&cfg)?;
    let mut err = std::io::stderr();
    for c in &report.checks {
        let _ = writeln!(err, "{}", c.summary_line());
    }
    let status = if report.pass() { Status::Ok } else { Status::Violated };
    Ok((report.to_json(), status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, status)) => {
            let mut out = std::io::stdout();
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(Status::Invalid as u8);
            }
            ExitCode::from(status as u8)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(Status::Invalid as u8)
        }
        Err(Failure::Unknown(msg)) => {
            eprintln!("unknown: {msg}");
            ExitCode::from(Status::Unknown as u8)
        }
    }
}
