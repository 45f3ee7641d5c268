//! `hf` command-line interface. All output is JSON tagged with
//! `"schema": "hf-1"` unless DOT is requested.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hf_core::classify::{classify, render_dot, s4_relabel, ClassifyError, H24Point, Relabeling};
use hf_core::elliptic::{report, weierstrass_j, EllipticError, WeierstrassCurve};
use hf_core::field::{Field, FieldError};
use hf_core::graph::{graph_validate, RawGraph};
use hf_core::hurwitz::{
    convolution_oracle, enumerate_simple_monodromy, hurwitz_number, HurwitzError,
};
use hf_core::legendre::{
    char2_singular_point, fixed_points, j_from_lambda, lambda_orbit, singularity_type,
    Involution, LegendreCurve, LegendreError,
};
use hf_core::stable_map::{map_validate, riemann_hurwitz_genus, RawStableMap};

pub const SCHEMA: &str = "hf-1";

/// Tuples listed by `hurwitz --tuples` before refusing.
const MAX_LISTED_TUPLES: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "hf", version, about = "Hurwitz spaces of double covers in characteristic 2")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count simply branched covers of P¹ by monodromy enumeration.
    Hurwitz {
        #[arg(long)]
        degree: usize,
        #[arg(long = "branch-points")]
        branch_points: usize,
        /// Also run the group-algebra oracle.
        #[arg(long)]
        oracle: bool,
        /// List every monodromy tuple.
        #[arg(long)]
        tuples: bool,
    },
    /// Classify a point (λ, j) of the characteristic-2 fiber.
    Classify {
        #[arg(long)]
        field: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        j: String,
        /// Relabel the markings by a permutation in cycle notation, e.g. "(0 1)".
        #[arg(long)]
        relabel: Option<String>,
        /// Also write the DOT rendering to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Legendre curve y² = x(x-1)(x-λ).
    Legendre {
        #[arg(long)]
        field: String,
        #[arg(long)]
        lambda: String,
        /// Singular point, singularity type and involution fixed points.
        #[arg(long)]
        analyze: bool,
    },
    /// Weierstrass curve with coefficients a1,a2,a3,a4,a6.
    Curve {
        #[arg(long)]
        field: String,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        coeffs: Vec<String>,
        /// Point count, trace, supersingularity and 2-torsion.
        #[arg(long)]
        report: bool,
    },
    /// Validate a dual graph or stable-map JSON document ("-" for stdin).
    GraphCheck {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparsable input; exit code 1.
    Usage(String),
    /// Well-formed request the mathematics rejects; exit code 2.
    Domain { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain { .. } => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Domain { kind, message } => write!(f, "error[{kind}]: {message}"),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain(kind: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Domain {
        kind,
        message: e.to_string(),
    }
}

fn field_error(e: FieldError) -> CliError {
    let kind = match e {
        FieldError::Parse { .. } => return usage(e),
        FieldError::DivisionByZero => "DivisionByZero",
        FieldError::WrongCharacteristic(_) => "WrongCharacteristic",
        FieldError::NotEnumerable(_) => "NotEnumerable",
        _ => "FieldError",
    };
    domain(kind, e)
}

fn hurwitz_error(e: HurwitzError) -> CliError {
    let kind = match e {
        HurwitzError::ScaleCap { .. } => "ScaleCap",
        _ => "HurwitzError",
    };
    domain(kind, e)
}

fn legendre_error(e: LegendreError) -> CliError {
    match e {
        LegendreError::DegenerateLambda(_) => domain("DegenerateLambda", e),
        LegendreError::WrongCharacteristic(_) => domain("WrongCharacteristic", e),
        LegendreError::NotSingular(_) => domain("NotSingular", e),
        LegendreError::Field(f) => field_error(f),
    }
}

fn elliptic_error(e: EllipticError) -> CliError {
    match e {
        EllipticError::SingularCurve => domain("SingularCurve", e),
        EllipticError::ScaleCap { .. } => domain("ScaleCap", e),
        EllipticError::WrongCharacteristic(_) => domain("WrongCharacteristic", e),
        EllipticError::CoefficientCount(_) => usage(e),
        EllipticError::Field(f) => field_error(f),
    }
}

fn classify_error(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::NotOnFiber { .. } => domain("NotOnFiber", e),
        ClassifyError::WrongCharacteristic(_) => domain("WrongCharacteristic", e),
        ClassifyError::Relabeling(_) => usage(e),
        ClassifyError::Field(f) => field_error(f),
        ClassifyError::Legendre(l) => legendre_error(l),
        ClassifyError::Elliptic(el) => elliptic_error(el),
    }
}

/// `Q`, `p` or `p^k`.
pub fn parse_field(spec: &str) -> Result<Field, CliError> {
    let spec = spec.trim();
    if matches!(spec, "Q" | "q" | "QQ" | "0") {
        return Ok(Field::rationals());
    }
    let (p, k) = match spec.split_once('^') {
        Some((p, k)) => (p, k),
        None => (spec, "1"),
    };
    let bad = || usage(format!("field spec {spec:?} is not of the form p^k or Q"));
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    Field::new(p, k).map_err(|e| usage(format!("field spec {spec:?}: {e}")))
}

fn parse_elem(field: Field, literal: &str) -> Result<hf_core::field::FieldElem, CliError> {
    field.parse(literal).map_err(usage)
}

/// Wraps a payload with the schema tag, the command name and, when given,
/// the field.
fn envelope(command: &str, field: Option<Field>, payload: impl Serialize) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    if let Some(f) = field {
        out.insert("field".into(), field_json(f));
    }
    match serde_json::to_value(payload).map_err(|e| domain("Internal", e))? {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Ok(Value::Object(out))
}

fn field_json(f: Field) -> Value {
    let mut v = serde_json::to_value(f).expect("field serializes");
    v.as_object_mut()
        .expect("field serializes to an object")
        .insert("name".into(), json!(f.to_string()));
    v
}

pub enum Output {
    Json(Value),
    Text(String),
    /// A report printed like `Json` but exiting with code 2.
    Rejected(Value),
}

fn hurwitz(d: usize, n: usize, oracle: bool, tuples: bool) -> Result<Output, CliError> {
    let count = hurwitz_number(d, n).map_err(hurwitz_error)?;
    let mut body = json!({
        "degree": d,
        "branch_points": n,
        "raw": count.raw,
        "normalized": count.normalized.to_string(),
        "genus": riemann_hurwitz_genus(d as i64, 0, n as i64).ok(),
    });
    if oracle {
        let o = convolution_oracle(d, n).map_err(hurwitz_error)?;
        body["oracle"] = json!({
            "product_identity": o.product_identity,
            "transitive": o.transitive,
            "agrees": o.transitive == count.raw,
        });
    }
    if tuples {
        if count.raw > MAX_LISTED_TUPLES {
            return Err(domain(
                "ScaleCap",
                format!("{} tuples exceed the listing limit {MAX_LISTED_TUPLES}", count.raw),
            ));
        }
        let list: Vec<String> = enumerate_simple_monodromy(d, n)
            .map_err(hurwitz_error)?
            .iter()
            .map(ToString::to_string)
            .collect();
        body["tuples"] = json!(list);
    }
    Ok(Output::Json(envelope("hurwitz", None, body)?))
}

fn classify_cmd(
    field: &str,
    lambda: &str,
    j: &str,
    relabel: Option<&str>,
    dot: Option<&PathBuf>,
    format: Format,
) -> Result<Output, CliError> {
    let field = parse_field(field)?;
    let lambda = field.parse_p1(lambda).map_err(usage)?;
    let j = field.parse_p1(j).map_err(usage)?;
    let sigma = relabel
        .map(|s| s.parse::<Relabeling>().map_err(usage))
        .transpose()?;
    let point = H24Point::new(field, lambda, j).map_err(classify_error)?;
    let mut result = classify(&point).map_err(classify_error)?;
    if let Some(s) = &sigma {
        result = s4_relabel(&result, s).map_err(classify_error)?;
    }
    let rendered = render_dot(&result);
    if let Some(path) = dot {
        std::fs::write(path, &rendered)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match format {
        Format::Dot => Output::Text(rendered),
        Format::Json => {
            let mut v = envelope("classify", Some(field), &result)?;
            if let Some(s) = sigma {
                v["relabeling"] = json!(s.to_string());
            }
            Output::Json(v)
        }
    })
}

fn legendre_cmd(field: &str, lambda: &str, analyze: bool) -> Result<Output, CliError> {
    let field = parse_field(field)?;
    let lambda = parse_elem(field, lambda)?;
    let curve = LegendreCurve::new(lambda.clone()).map_err(legendre_error)?;
    let mut body = json!({
        "lambda": lambda,
        "orbit": lambda_orbit(&lambda).map_err(legendre_error)?,
    });
    let char2 = field.characteristic() == 2;
    if !char2 {
        body["j"] = json!(j_from_lambda(&lambda).map_err(legendre_error)?);
    }
    if analyze {
        let mut analysis = json!({
            "fixed_points": {
                "inv": fixed_points(Involution::Inv, &lambda).map_err(legendre_error)?,
                "cross": fixed_points(Involution::Cross, &lambda).map_err(legendre_error)?,
            },
        });
        if char2 {
            analysis["singular_point"] =
                json!(char2_singular_point(&curve).map_err(legendre_error)?);
            analysis["singularity"] = json!(singularity_type(&curve).map_err(legendre_error)?);
        } else {
            analysis["smooth"] = json!(!curve.discriminant().is_zero());
        }
        body["analysis"] = analysis;
    }
    Ok(Output::Json(envelope("legendre", Some(field), body)?))
}

fn curve_cmd(field: &str, coeffs: &[String], want_report: bool) -> Result<Output, CliError> {
    let field = parse_field(field)?;
    let coeffs = coeffs
        .iter()
        .map(|c| parse_elem(field, c))
        .collect::<Result<Vec<_>, _>>()?;
    let curve = WeierstrassCurve::from_slice(&coeffs).map_err(elliptic_error)?;
    let mut body = json!({
        "coefficients": curve.coefficients(),
        "invariants": curve.invariants(),
        "j": weierstrass_j(&curve),
    });
    if want_report {
        let r = report(&curve).map_err(elliptic_error)?;
        for (k, v) in serde_json::to_value(r).expect("report serializes").as_object().unwrap() {
            body[k] = v.clone();
        }
    }
    Ok(Output::Json(envelope("curve", Some(field), body)?))
}

/// Validates a graph, a stable map, or any `hf-1` document carrying a
/// `map_type`.
fn graph_check(input: &str) -> Result<Output, CliError> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| usage(format!("cannot read {input}: {e}")))?
    };
    let doc: Value = serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    let doc = match doc.get("map_type") {
        Some(m) => m.clone(),
        None => doc,
    };
    let body = if doc.get("source").is_some() {
        let raw: RawStableMap =
            serde_json::from_value(doc).map_err(|e| usage(format!("not a stable map: {e}")))?;
        match map_validate(raw) {
            Ok(m) => json!({
                "kind": "map",
                "valid": true,
                "violations": [],
                "source_genus": m.source().arithmetic_genus(),
                "target_genus": m.target().arithmetic_genus(),
                "degree_conservation": m.degree_conservation(),
                "map_stability": m.map_stability(),
                "finiteness_attributes": m.finiteness_attributes(),
            }),
            Err(v) => json!({ "kind": "map", "valid": false, "violations": v }),
        }
    } else {
        let raw: RawGraph =
            serde_json::from_value(doc).map_err(|e| usage(format!("not a dual graph: {e}")))?;
        match graph_validate(raw) {
            Ok(g) => json!({
                "kind": "graph",
                "valid": true,
                "violations": [],
                "arithmetic_genus": g.arithmetic_genus(),
                "betti_number": g.betti_number(),
                "stability": g.pointed_stability(),
            }),
            Err(v) => json!({ "kind": "graph", "valid": false, "violations": v }),
        }
    };
    let invalid = body["valid"] == json!(false);
    let out = envelope("graph-check", None, body)?;
    Ok(if invalid {
        Output::Rejected(out)
    } else {
        Output::Json(out)
    })
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Hurwitz {
            degree,
            branch_points,
            oracle,
            tuples,
        } => hurwitz(degree, branch_points, oracle, tuples),
        Command::Classify {
            field,
            lambda,
            j,
            relabel,
            dot,
            format,
        } => classify_cmd(&field, &lambda, &j, relabel.as_deref(), dot.as_ref(), format),
        Command::Legendre {
            field,
            lambda,
            analyze,
        } => legendre_cmd(&field, &lambda, analyze),
        Command::Curve {
            field,
            coeffs,
            report,
        } => curve_cmd(&field, &coeffs, report),
        Command::GraphCheck { input } => graph_check(&input),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{rendered}");
                return 0;
            }
            let _ = write!(stderr, "{rendered}");
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("json"));
            0
        }
        Ok(Output::Text(t)) => {
            let _ = write!(stdout, "{t}");
            0
        }
        Ok(Output::Rejected(v)) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("json"));
            let _ = writeln!(stderr, "error[InvalidInput]: document has violations");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("hf").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field("2^2").unwrap(), Field::new(2, 2).unwrap());
        assert_eq!(parse_field("7").unwrap(), Field::new(7, 1).unwrap());
        assert_eq!(parse_field("Q").unwrap(), Field::rationals());
        for bad in ["4", "2^x", "2^9", "", "GF(4)"] {
            assert!(matches!(parse_field(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn hurwitz_example() {
        let (code, out, _) = run_args(&["hurwitz", "--degree", "3", "--branch-points", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["raw"], json!(24));
        assert_eq!(v["normalized"], json!("4"));
        assert_eq!(v["schema"], json!(SCHEMA));
    }

    #[test]
    fn exit_codes() {
        let (code, out, err) = run_args(&["classify", "--field", "2^2", "--lambda", "t", "--j", "1"]);
        assert_eq!((code, out.as_str()), (2, ""));
        assert!(err.contains("NotOnFiber"));
        assert_eq!(run_args(&["classify", "--field", "2^2", "--lambda", "t+x", "--j", "0"]).0, 1);
        assert_eq!(run_args(&["legendre", "--field", "5", "--lambda", "1"]).0, 2);
        assert_eq!(run_args(&["curve", "--field", "Q", "--coeffs", "0,0,0,0,0"]).0, 2);
        assert_eq!(run_args(&["curve", "--field", "2^9", "--coeffs", "0,0,1,0,0"]).0, 1);
        assert_eq!(run_args(&["hurwitz", "--degree", "9", "--branch-points", "2"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn classify_case1() {
        let (code, out, _) = run_args(&["classify", "--field", "2^2", "--lambda", "t", "--j", "0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["case"], json!("Case1"));
        assert_eq!(v["attachment"]["x"], json!("t+1"));
        assert_eq!(v["field"]["name"], json!("GF(2^2)"));
    }

    #[test]
    fn relabel_to_lambda_one() {
        let args = ["classify", "--field", "2", "--lambda", "0", "--j", "1", "--relabel", "(0 1)"];
        let v: Value = serde_json::from_str(&run_args(&args).1).unwrap();
        assert_eq!(v["point"]["lambda_s"], json!("1"));
        assert_eq!(v["components"], json!(["Λ1"]));
        assert_eq!(v["certificates"]["genus_check"]["holds"], json!(true));
    }
}
