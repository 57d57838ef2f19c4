//! Command dispatch for the `finsep` binary.
//!
//! Every verb produces a [`Report`]: an ordered list of fields rendered
//! either as one `key: value; ...` line or as a JSON object with the same
//! keys in the same order. Exit codes: 0 definite positive, 1 definite
//! negative, 2 unknown or not found within the bounds, 3 usage or parse
//! error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use finsep::decide::{
    algebraic_degree, decide_homogeneous, intdep_search, integral_test, integral_test_in, AlgebraicDegree, IntDep,
    Integrality, Verdict,
};
use finsep::fpfactor::{factor_with, FactorOptions, DEFAULT_SEED};
use finsep::parse::{parse_bipoly, parse_unipoly};
use finsep::qring::{
    bounded_member, separate, FiniteQuotient, Membership, Presentation, SeparationOutcome, DEFAULT_DIM_CAP,
    DEFAULT_KMAX, DEFAULT_MAX_TOTAL,
};
use finsep::torsion::{crt_split, torsion_ideal, verify_direct_sum, FiniteCommRing};
use finsep::{Error, PrimeField, UniPoly};

pub const EXIT_POSITIVE: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "finsep", version, about = "Exact algebra for finite separability of two-generator rings over F_p")]
pub struct Cli {
    /// Print the report as a JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor a polynomial in t over F_p.
    Factor {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        f: String,
        /// Seed for the randomized equal-degree splitting.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Is a polynomial in t (or a homogeneous one in x, y) separable?
    Separable {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        f: String,
    },
    /// Finite separability of the ring presented by a homogeneous relation.
    Decide {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        f: String,
    },
    /// Normal form of an expression in a, b.
    Nf {
        #[command(flatten)]
        pres: PresArgs,
        expr: String,
    },
    /// Bounded search for g without constant term with g(subring) = target.
    Member {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        target: String,
        #[arg(long)]
        subring: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
    },
    /// Bounded search for a relation between a and b unitary in both.
    Intdep {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long, default_value_t = 4)]
        dx: u32,
        #[arg(long, default_value_t = 4)]
        dy: u32,
    },
    /// Least-degree monic annihilator of an element.
    Integral {
        #[command(flatten)]
        pres: PresArgs,
        expr: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
        /// Work in the finite quotient b^(s+e) = b^s, given as `s,e`.
        #[arg(long, value_parser = parse_pair)]
        quotient: Option<(u32, u32)>,
    },
    /// Algebraic degree of a over b: `--dx` bounds the degree in a, `--dy`
    /// the degree of the coefficients in b.
    Algdeg {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long, default_value_t = 4)]
        dx: u32,
        #[arg(long, default_value_t = 4)]
        dy: u32,
    },
    /// Search finite quotients in which the target escapes the subring.
    Separate {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        target: String,
        /// Generator of the subring; repeat for several.
        #[arg(long, required = true)]
        subring: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_TOTAL)]
        max: u32,
    },
    /// Torsion ideal I_k of a finite ring and its prime split.
    Torsion {
        /// Ring descriptor such as `Z6` or `Z6xZ10`.
        #[arg(long)]
        ring: String,
        #[arg(short, long)]
        k: u64,
    },
}

/// Where the presentation comes from: a file or `-p` with `--relation`.
#[derive(Args, Debug)]
pub struct PresArgs {
    #[arg(long, conflicts_with_all = ["p", "relation"])]
    pub pres: Option<PathBuf>,
    #[arg(short, long, requires = "relation")]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    pub relation: Option<String>,
}

fn parse_pair(text: &str) -> Result<(u32, u32), String> {
    let (s, e) = text.split_once(',').ok_or("expected s,e")?;
    let s: u32 = s.trim().parse().map_err(|_| "bad s")?;
    let e: u32 = e.trim().parse().map_err(|_| "bad e")?;
    Ok((s, e))
}

/// Ordered key/value report shared by the text and JSON renderings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn push(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn fields(&self) -> &[(String, Value)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            let _ = write!(out, "{k}: {}", text_value(v));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes")
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// A usage, input or parse error; reported with exit code 3.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

/// Reads `p = <prime>` and `relation = <poly in x, y>` lines. Blank lines
/// and `#` comments are skipped.
pub fn parse_presentation_file(text: &str) -> Result<(u64, String), Failure> {
    let (mut p, mut relation) = (None, None);
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| Failure(format!("line {}: expected key = value", n + 1)))?;
        match key.trim() {
            "p" => {
                let v: u64 =
                    value.trim().parse().map_err(|_| Failure(format!("line {}: p must be an integer", n + 1)))?;
                p = Some(v);
            }
            "relation" => relation = Some(value.trim().to_string()),
            other => return Err(Failure(format!("line {}: unknown key {other:?}", n + 1))),
        }
    }
    match (p, relation) {
        (Some(p), Some(r)) => Ok((p, r)),
        (None, _) => Err(Failure("presentation file has no `p = ...` line".into())),
        (_, None) => Err(Failure("presentation file has no `relation = ...` line".into())),
    }
}

fn load_presentation(args: &PresArgs) -> Result<Arc<Presentation>, Failure> {
    let (p, relation) = match (&args.pres, args.p, &args.relation) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            parse_presentation_file(&text)?
        }
        (None, Some(p), Some(r)) => (p, r.clone()),
        _ => return Err(Failure("a presentation is required: --pres FILE or -p P --relation REL".into())),
    };
    Ok(Presentation::parse(p, &relation)?)
}

fn echo_presentation(report: &mut Report, pres: &Presentation) {
    report.push("p", pres.field().modulus()).push("relation", pres.relation().to_string());
}

fn product_text(unit: u64, factors: &[(UniPoly, u32)]) -> String {
    let mut parts: Vec<String> = Vec::new();
    if unit != 1 || factors.is_empty() {
        parts.push(unit.to_string());
    }
    for (g, m) in factors {
        let base = if g.coeffs().iter().filter(|&&c| c != 0).count() > 1 { format!("({g})") } else { g.to_string() };
        parts.push(if *m > 1 { format!("{base}^{m}") } else { base });
    }
    parts.join(" * ")
}

fn quotient_text(s: u32, e: u32) -> String {
    let low = if s == 1 { "b".to_string() } else { format!("b^{s}") };
    format!("b^{} = {low}", s + e)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses the command line; `Err` carries the exit code and clap's message.
pub fn parse_args<I, T>(args: I) -> Result<Cli, (u8, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_POSITIVE,
            _ => EXIT_USAGE,
        };
        (code, e.render().to_string())
    })
}

/// Runs a command; usage and parse errors come back as `Err`.
pub fn run(command: &Command) -> Result<(u8, Report), Failure> {
    let mut r = Report::default();
    let code = match command {
        Command::Factor { p, f, seed } => {
            let field = PrimeField::new(*p)?;
            let poly = parse_unipoly(f, field, 't')?;
            r.push("verb", "factor").push("p", *p).push("f", poly.to_string()).push("seed", *seed);
            let fac = factor_with(&poly, &FactorOptions { seed: *seed })?;
            r.push("unit", fac.unit())
                .push("factors", fac.factors().iter().map(|(g, _)| g.to_string()).collect::<Vec<_>>())
                .push("multiplicities", fac.factors().iter().map(|(_, m)| *m).collect::<Vec<_>>())
                .push("factorization", product_text(fac.unit(), fac.factors()));
            EXIT_POSITIVE
        }
        Command::Separable { p, f } => {
            let field = PrimeField::new(*p)?;
            r.push("verb", "separable").push("p", *p);
            let sep = match parse_unipoly(f, field, 't') {
                Ok(poly) => {
                    r.push("f", poly.to_string());
                    poly.is_separable()?
                }
                Err(Error::UnknownSymbol { .. }) => {
                    let poly = parse_bipoly(f, field, ('x', 'y'))?;
                    r.push("f", poly.to_string());
                    poly.homog_separable()?
                }
                Err(e) => return Err(e.into()),
            };
            r.push("separable", yes_no(sep));
            if sep {
                EXIT_POSITIVE
            } else {
                EXIT_NEGATIVE
            }
        }
        Command::Decide { p, f } => {
            let field = PrimeField::new(*p)?;
            let poly = parse_bipoly(f, field, ('x', 'y'))?;
            r.push("verb", "decide").push("p", *p).push("f", poly.to_string());
            let d = decide_homogeneous(&poly);
            let code = match &d.verdict {
                Verdict::Separable => {
                    r.push("separable", "yes");
                    EXIT_POSITIVE
                }
                Verdict::NotSeparable => {
                    r.push("separable", "no");
                    EXIT_NEGATIVE
                }
                Verdict::NotApplicable(why) => {
                    r.push("separable", format!("not applicable ({why})"));
                    EXIT_UNKNOWN
                }
            };
            if let Some(ev) = &d.evidence {
                r.push("factors", ev.to_string());
            }
            code
        }
        Command::Nf { pres, expr } => {
            let k = load_presentation(pres)?;
            r.push("verb", "nf");
            echo_presentation(&mut r, &k);
            let u = k.eval_expr(expr)?;
            r.push("expr", expr.as_str()).push("nf", u.to_string());
            EXIT_POSITIVE
        }
        Command::Member { pres, target, subring, kmax } => {
            let k = load_presentation(pres)?;
            bound_check(*kmax as u64, "--kmax")?;
            r.push("verb", "member");
            echo_presentation(&mut r, &k);
            let (u, c) = (k.eval_expr(target)?, k.eval_expr(subring)?);
            r.push("target", u.to_string()).push("subring", c.to_string()).push("kmax", *kmax);
            match bounded_member(&u, &c, *kmax)? {
                Membership::Certificate(g) => {
                    r.push("member", "yes").push("certificate", g.to_string());
                    EXIT_POSITIVE
                }
                Membership::Unknown { .. } => {
                    r.push("member", "unknown");
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Intdep { pres, dx, dy } => {
            let k = load_presentation(pres)?;
            bound_check(u64::from(*dx), "--dx")?;
            bound_check(u64::from(*dy), "--dy")?;
            r.push("verb", "intdep");
            echo_presentation(&mut r, &k);
            r.push("dx", *dx).push("dy", *dy);
            match intdep_search(&k, *dx, *dy)? {
                IntDep::Witness(w) => {
                    r.push("dependent", "yes").push("witness", w.to_string()).push("degrees", vec![w.dx, w.dy]);
                    EXIT_POSITIVE
                }
                IntDep::Unknown { .. } => {
                    r.push("dependent", "unknown");
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Integral { pres, expr, kmax, quotient } => {
            let k = load_presentation(pres)?;
            bound_check(*kmax as u64, "--kmax")?;
            r.push("verb", "integral");
            echo_presentation(&mut r, &k);
            let u = k.eval_expr(expr)?;
            r.push("element", u.to_string()).push("kmax", *kmax);
            let result = match quotient {
                Some((s, e)) => {
                    let q = FiniteQuotient::new(&k, *s, *e, DEFAULT_DIM_CAP)?;
                    r.push("quotient", quotient_text(*s, *e));
                    integral_test_in(&q, &q.project(&u)?, *kmax)?
                }
                None => integral_test(&u, *kmax)?,
            };
            match result {
                Integrality::Annihilator(g) => {
                    r.push("integral", "yes").push("annihilator", g.to_string());
                    EXIT_POSITIVE
                }
                Integrality::Unknown { .. } => {
                    r.push("integral", "unknown");
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Algdeg { pres, dx, dy } => {
            let k = load_presentation(pres)?;
            bound_check(u64::from(*dx), "--dx")?;
            bound_check(u64::from(*dy), "--dy")?;
            r.push("verb", "algdeg");
            echo_presentation(&mut r, &k);
            r.push("n_bound", *dx).push("coeff_deg_bound", *dy);
            match algebraic_degree(&k, *dy, *dx as usize)? {
                AlgebraicDegree::Exact { degree, coefficients } => {
                    let n = coefficients.len();
                    let terms: Vec<String> = coefficients
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| {
                            let power = n - i;
                            let a = if power == 1 { "a".to_string() } else { format!("a^{power}") };
                            format!("({})*{a}", c.display_in("b"))
                        })
                        .collect();
                    r.push("degree", degree).push("witness", terms.join(" + ") + " = 0");
                    EXIT_POSITIVE
                }
                AlgebraicDegree::LowerBoundOnly(n) => {
                    r.push("degree", format!("> {n}"));
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Separate { pres, target, subring, max } => {
            let k = load_presentation(pres)?;
            if *max < 2 {
                return Err(Failure("--max must be at least 2".into()));
            }
            r.push("verb", "separate");
            echo_presentation(&mut r, &k);
            let t = k.eval_expr(target)?;
            let gens = subring.iter().map(|g| k.eval_expr(g)).collect::<Result<Vec<_>, _>>()?;
            r.push("target", t.to_string())
                .push("subring", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
                .push("max", *max);
            match separate(&t, &gens, *max)? {
                SeparationOutcome::Witness(w) => {
                    r.push("outcome", "witness")
                        .push("quotient", quotient_text(w.s, w.e))
                        .push("s", w.s)
                        .push("e", w.e)
                        .push("dim", w.target.len())
                        .push("closure_dim", w.closure.len());
                    EXIT_POSITIVE
                }
                SeparationOutcome::NotFound { cells_scanned, .. } => {
                    r.push("outcome", "NotFound").push("cells_scanned", cells_scanned);
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Torsion { ring, k } => {
            let ring = FiniteCommRing::parse(ring)?;
            bound_check(*k, "-k")?;
            let ideal = torsion_ideal(&ring, *k)?;
            r.push("verb", "torsion").push("ring", ring.to_string()).push("k", *k).push("ideal_size", ideal.len());
            match crt_split(&ideal) {
                Ok(split) => {
                    let ok = verify_direct_sum(&split.components, &ideal);
                    r.push("certificate", split.certificate.iter().map(|z| z.to_string()).collect::<Vec<_>>())
                        .push(
                            "components",
                            split
                                .components
                                .iter()
                                .map(|c| format!("char {}: {} elements", c.prime, c.elements.len()))
                                .collect::<Vec<_>>(),
                        )
                        .push("direct_sum", yes_no(ok));
                    if ok {
                        EXIT_POSITIVE
                    } else {
                        EXIT_NEGATIVE
                    }
                }
                Err(Error::NotSquarefree { p, .. }) => {
                    r.push("direct_sum", format!("not applicable ({p}^2 divides k)"));
                    EXIT_NEGATIVE
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    Ok((code, r))
}

fn bound_check(v: u64, flag: &str) -> Result<(), Failure> {
    if v == 0 {
        Err(Failure(format!("{flag} must be positive")))
    } else {
        Ok(())
    }
}

/// Full pipeline from argv to exit code and output text.
pub fn main_with_args<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match parse_args(args) {
        Ok(cli) => cli,
        Err((code, msg)) if code == EXIT_POSITIVE => return (code, msg, String::new()),
        Err((code, msg)) => return (code, String::new(), msg),
    };
    match run(&cli.command) {
        Ok((code, report)) => {
            let out = if cli.json { report.to_json() } else { report.to_text() };
            (code, out + "\n", String::new())
        }
        Err(Failure(msg)) => {
            let out = if cli.json { json!({ "error": msg }).to_string() + "\n" } else { String::new() };
            (EXIT_USAGE, out, format!("error: {msg}\n"))
        }
    }
}
