//! The `shepkit` command line. Exit codes: 0 for success or a positive
//! verdict, 2 for a well-formed run with a negative verdict, 1 for usage,
//! input and resource errors.

mod export;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use export::{export_complex, to_json, ExportError, Exportable, Format};

use crate::cccc::{certify_hessian_cat1, check_cccc, mark_a3};
use crate::classify::{check_theorem_hypotheses, classify, Offense};
use crate::davis::{build_k, certify_cubical};
use crate::diagram::{parse_diagram, ExtendedCoxeterDiagram, Label};
use crate::forms::{hermitian_matrix, is_positive_definite, Witness, DEFAULT_TOLERANCE};
use crate::groups::{group_order, max_cosets_from_env, GroupOrder};
use crate::milnor::{complex_girth, milnor_complex};
use crate::polytopes::{polytope_from_group, verify_hessian};
use crate::report::Report;

pub const CHECKS_VERSION: &str = "shepkit-checks/1";

/// Groups larger than this are only enumerated with `--slow-tests`.
pub const LARGE_ORDER: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "shepkit", version, about = "Finiteness, complexes and curvature certificates for Shephard groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Tolerance for floating-point verdicts.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, global = true)]
    tol: f64,
    /// Cap on coset enumeration (default: SHEPKIT_MAX_COSETS or 2000000).
    #[arg(long, global = true)]
    max_cosets: Option<usize>,
    /// Allow enumerating groups with more than 100000 elements.
    #[arg(long, global = true)]
    slow_tests: bool,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Diagram file in the line DSL or inline form.
    file: Option<PathBuf>,
    /// Inline path diagram such as `3[3]3[3]3`.
    #[arg(long, conflicts_with = "file")]
    inline: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide finiteness by the classification tables.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Exit 2 when the group is infinite.
        #[arg(long)]
        require_finite: bool,
    },
    /// Print the Hermitian form and its definiteness.
    Form {
        #[command(flatten)]
        input: Input,
    },
    /// Group order by coset enumeration.
    Order {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        require_finite: bool,
    },
    /// Build and export a complex.
    Complex {
        #[arg(value_enum)]
        which: Which,
        #[command(flatten)]
        input: Input,
    },
    /// Verify the Hessian polyhedron tables by exhaustion.
    HessianVerify,
    /// Combinatorial CAT(1) criteria; without input, the Hessian certificate.
    Cccc {
        #[command(flatten)]
        input: Input,
    },
    /// Check the hypotheses of a CAT(0) theorem.
    Certify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        input: Input,
    },
    /// Girth of the complex of a finite group.
    Girth {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    /// The Milnor fiber complex.
    #[value(name = "theta", alias = "θ̂")]
    Theta,
    /// The cubical fundamental domain K.
    K,
    /// The face poset of the regular polytope.
    Polytope,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Theorem {
    Moussong,
    Cube,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Outcome { code: 1, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

struct Ctx {
    format: Format,
    tol: f64,
    max_cosets: usize,
    slow: bool,
    echo: Vec<String>,
}

fn read_input(input: &Input) -> Result<ExtendedCoxeterDiagram, String> {
    let text = match (&input.inline, &input.file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?,
        (None, None) => return Err("a diagram is required (FILE or --inline)".into()),
    };
    parse_diagram(&text).map_err(|e| e.to_string())
}

fn describe(d: &ExtendedCoxeterDiagram) -> String {
    d.render_inline().unwrap_or_else(|| format!("diagram on {} vertices", d.len()))
}

fn label_json(l: Label) -> Value {
    match l {
        Label::Finite(v) => json!(v),
        Label::Infinity => json!("inf"),
    }
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome { code: 1, stdout: String::new(), stderr: text } } else { Outcome::ok(text) };
        }
    };
    let ctx = Ctx {
        format: cli.format,
        tol: cli.tol,
        max_cosets: cli.max_cosets.unwrap_or_else(max_cosets_from_env),
        slow: cli.slow_tests,
        echo: argv.iter().skip(1).cloned().collect(),
    };
    if ctx.tol.is_nan() || ctx.tol <= 0.0 {
        return Outcome::error("--tol must be positive");
    }
    match dispatch(&ctx, cli.command) {
        Ok(o) => o,
        Err(msg) => Outcome::error(msg),
    }
}

pub fn main_with_env() -> i32 {
    let out = run(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn verdict(ctx: &Ctx, report: &Report) -> Outcome {
    let code = if report.passed() { 0 } else { 2 };
    let stdout = match ctx.format {
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "status": if c.passed { "pass" } else { "fail" }, "witness": c.detail }))
                .collect();
            let v = json!({
                "checks_version": CHECKS_VERSION,
                "command": ctx.echo,
                "checks": checks,
                "verdict": if report.passed() { "pass" } else { "fail" },
            });
            serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
        }
        _ => {
            let mut s = String::new();
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    s += &format!("{status} {}\n", c.name);
                } else {
                    s += &format!("{status} {}: {}\n", c.name, c.detail);
                }
            }
            s += &format!("verdict: {}\n", if report.passed() { "pass" } else { "fail" });
            s
        }
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn emit(ctx: &Ctx, text: String, value: Value, code: i32) -> Outcome {
    let stdout = match ctx.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
        _ => text,
    };
    Outcome { code, stdout, stderr: String::new() }
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<Outcome, String> {
    match command {
        Command::Classify { input, require_finite } => {
            let d = read_input(&input)?;
            let c = classify(&d);
            let names: Vec<String> = c.types().iter().map(|t| t.to_string()).collect();
            let finite = c.is_finite();
            let shown = if finite { names.join(" x ") } else { describe(&d) };
            let text = format!("{shown}: {}\n", if finite { "finite" } else { "infinite" });
            let components: Vec<Value> = c
                .components
                .iter()
                .map(|(set, t)| json!({ "generators": set.iter().map(|i| d.name(i)).collect::<Vec<_>>(), "type": t.to_string() }))
                .collect();
            let order = if finite { c.types().iter().map(|t| t.order()).product::<Option<u64>>() } else { None };
            let value = json!({ "command": ctx.echo, "finite": finite, "order": order, "components": components });
            Ok(emit(ctx, text, value, if require_finite && !finite { 2 } else { 0 }))
        }
        Command::Form { input } => {
            let d = read_input(&input)?;
            let h = hermitian_matrix(&d).map_err(|e| e.to_string())?;
            let v = is_positive_definite(&h, ctx.tol);
            let mut text = String::new();
            for row in h.rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>10.6}")).collect();
                text += &cells.join(" ");
                text.push('\n');
            }
            text += &format!("determinant: {:.12}\n", h.determinant());
            text += &format!("positive definite: {}\n", if v.positive_definite { "yes" } else { "no" });
            let witness = match &v.witness {
                Witness::Minors(m) => json!({ "minors": m }),
                Witness::Vector { x, value } => json!({ "vector": x, "value": value }),
            };
            let value = json!({
                "command": ctx.echo,
                "matrix": h.rows(),
                "determinant": h.determinant(),
                "positive_definite": v.positive_definite,
                "witness": witness,
            });
            Ok(emit(ctx, text, value, 0))
        }
        Command::Order { input, require_finite } => {
            let d = read_input(&input)?;
            let expected = classify(&d).types().iter().map(|t| t.order()).product::<Option<u64>>();
            if let Some(n) = expected {
                if n > LARGE_ORDER && !ctx.slow {
                    return Err(format!("order {n} exceeds {LARGE_ORDER}; pass --slow-tests to enumerate it"));
                }
            }
            let order = group_order(&d, ctx.max_cosets).map_err(|e| e.to_string())?;
            let value = json!({
                "command": ctx.echo,
                "order": match order { GroupOrder::Finite(n) => json!(n), GroupOrder::Infinite => json!("infinite") },
            });
            let code = if require_finite && order == GroupOrder::Infinite { 2 } else { 0 };
            Ok(emit(ctx, format!("{order}\n"), value, code))
        }
        Command::Complex { which, input } => {
            let d = read_input(&input)?;
            complex(ctx, which, &d)
        }
        Command::HessianVerify => Ok(verdict(ctx, &verify_hessian())),
        Command::Cccc { input } => {
            if input.file.is_none() && input.inline.is_none() {
                let r = certify_hessian_cat1(ctx.max_cosets).map_err(|e| e.to_string())?;
                return Ok(verdict(ctx, &r));
            }
            let d = read_input(&input)?;
            let order = d.path_order().filter(|o| o.len() == 3).ok_or("cccc needs a path diagram on three vertices")?;
            let sc = milnor_complex(&d, ctx.max_cosets).map_err(|e| e.to_string())?.complex;
            let tags = [d.name(order[0]), d.name(order[1]), d.name(order[2])];
            match mark_a3(&sc, tags) {
                Ok(m) => Ok(verdict(ctx, &check_cccc(&m).to_report())),
                Err(v) => {
                    let mut r = Report::default();
                    r.push("marking", false, format!("{v:?}"));
                    Ok(verdict(ctx, &r))
                }
            }
        }
        Command::Certify { theorem, input } => {
            let d = read_input(&input)?;
            let r = match theorem {
                Theorem::Moussong => moussong_report(&d)?,
                Theorem::Cube => certify_cubical(&d, ctx.max_cosets).map_err(|e| e.to_string())?,
            };
            Ok(verdict(ctx, &r))
        }
        Command::Girth { input } => {
            let d = read_input(&input)?;
            let g = complex_girth(&d, ctx.max_cosets).map_err(|e| e.to_string())?;
            let shown = g.map_or_else(|| "none (acyclic)".to_string(), |g| g.to_string());
            let mut text = format!("girth: {shown}\n");
            let mut value = json!({ "command": ctx.echo, "girth": g });
            let mut code = 0;
            if let [(_, _, m)] = d.edges().collect::<Vec<_>>()[..] {
                if d.len() == 2 {
                    let want = m.finite().map(|m| 2 * m as usize);
                    let ok = want.is_some() && g == want;
                    text += &format!("2m = {}: {}\n", want.map_or("inf".into(), |w| w.to_string()), if ok { "match" } else { "mismatch" });
                    value["edge_label"] = label_json(m);
                    value["matches_2m"] = json!(ok);
                    code = if ok { 0 } else { 2 };
                }
            }
            Ok(emit(ctx, text, value, code))
        }
    }
}

fn complex(ctx: &Ctx, which: Which, d: &ExtendedCoxeterDiagram) -> Result<Outcome, String> {
    let render = |obj: Exportable, summary: String| -> Result<Outcome, String> {
        match ctx.format {
            Format::Text => Ok(Outcome::ok(summary)),
            f => export_complex(&obj, f).map(Outcome::ok).map_err(|e| e.to_string()),
        }
    };
    match which {
        Which::Theta => {
            let m = milnor_complex(d, ctx.max_cosets).map_err(|e| e.to_string())?;
            let summary = format!("f-vector: {:?}\nchambers: {}\n", m.complex.f_vector(), m.chamber_count());
            render(Exportable::Simplicial(&m.complex), summary)
        }
        Which::K => {
            let k = build_k(d).map_err(|e| e.to_string())?;
            let summary = format!("f-vector: {:?}\nEuler characteristic: {}\n", k.f_vector(), k.euler_characteristic());
            render(Exportable::Cubical(&k, d), summary)
        }
        Which::Polytope => {
            let p = polytope_from_group(d, ctx.max_cosets).map_err(|e| e.to_string())?;
            let summary = format!("rank profile: {:?}\nflags: {}\n", p.rank_profile(), p.flag_count());
            render(Exportable::Poset(&p), summary)
        }
    }
}

fn moussong_report(d: &ExtendedCoxeterDiagram) -> Result<Report, String> {
    let h = check_theorem_hypotheses(d).map_err(|e| e.to_string())?;
    let named = |o: &Offense| match o {
        Offense::NotShephardSpherical(t) => format!("{} has finite Coxeter group but infinite Shephard group", t.display_with(d)),
        Offense::NotFlagComplete(t) => format!("{} spans no infinite edge but is not spherical", t.display_with(d)),
        Offense::A43Subdiagram(t) => format!("{} spans an A4(3) subdiagram", t.display_with(d)),
    };
    let first = |pick: fn(&Offense) -> bool| h.offending_subsets.iter().find(|o| pick(o)).map(named).unwrap_or_default();
    let mut r = Report::default();
    r.push("S^f = S^fs", h.sf_equals_sfs, first(|o| matches!(o, Offense::NotShephardSpherical(_))));
    r.push("no A4(3) subdiagram", !h.has_a4_3_subdiagram, first(|o| matches!(o, Offense::A43Subdiagram(_))));
    Ok(r)
}
