//! Command dispatch. Every command returns its report text and an exit code.

use std::fmt::Write;

use blochprod::{cap_product_oracle_check, check_leibniz};
use clap::{Parser, Subcommand, ValueEnum};
use cocycle::{
    build_problem, correspondence_action, e2_class, nu_power_matrix, reduced_relations, solve,
    verify_diagram, CocycleError, ConstraintGroup, Relation,
};
use exactq::fmt_rat;
use models::curves::{chain_of_p1, cycle_of_p1, faulty_cycle_of_p1, sphere_nerve_toy};
use models::double_point::{double_point_variant, DoublePointVariant};
use models::product::ProductResolutionModel;
use models::random::{random_valid_complex, RandomParams};
use models::triple_point::triple_point_product_model;
use steenbrink::{
    build_e1, clemens_schmid_curve_check, compute_e2, dual_complex_cohomology, monodromy_criteria,
    SignProfile,
};
use strata::{validate, StrataComplex};

use crate::document::{parse, to_document};
use crate::render::{grid, labeled_rows, pass_fail, yes_no};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weightseq",
    about = "Weight spectral sequences, monodromy and correspondence classes of semistable degenerations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Profile {
    Sigma,
    OuterSigns,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural and product identities of a complex document.
    Validate { file: String },
    /// Dimensions of the E1 page.
    E1 {
        file: String,
        #[arg(long, value_enum, default_value = "sigma")]
        profile: Profile,
    },
    /// Dimensions of the E2 page and the weight graded pieces.
    E2 { file: String },
    /// Betti numbers of the dual complex.
    DualGraph { file: String },
    /// Monodromy criteria read off the dual complex.
    Criteria { file: String },
    /// Clemens-Schmid exactness for curve degenerations.
    ClemensSchmid { file: String },
    /// Seeded Leibniz check of the product on strata.
    BlochCheck {
        file: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solves for the class of N^power on a product model.
    SolveN {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Runs every applicable report on a built-in model.
    Demo { name: String },
    /// Prints a built-in complex as a document.
    ExportModel { name: String },
}

/// Report text and exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("weightseq"))
        .chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::error(EXIT_USAGE, text),
            }
        }
    }
}

pub fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { file } => with_file(&file, report_validate),
        Command::E1 { file, profile } => with_file(&file, |c| report_e1(c, profile)),
        Command::E2 { file } => with_file(&file, report_e2),
        Command::DualGraph { file } => with_file(&file, |c| Outcome::ok(report_dual_graph(c))),
        Command::Criteria { file } => with_file(&file, report_criteria),
        Command::ClemensSchmid { file } => with_file(&file, report_clemens_schmid),
        Command::BlochCheck { file, trials, seed } => {
            with_file(&file, |c| report_bloch(c, trials, seed))
        }
        Command::SolveN { model, power } => solve_n(&model, power),
        Command::Demo { name } => demo(&name),
        Command::ExportModel { name } => match builtin_complex(&name) {
            Ok(c) => Outcome::ok(to_document(&c)),
            Err(o) => o,
        },
    }
}

fn with_file(path: &str, f: impl FnOnce(&StrataComplex) -> Outcome) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::error(EXIT_USAGE, format!("cannot read {path}: {e}")),
    };
    match parse(&text) {
        Ok(c) => f(&c),
        Err(e) => Outcome::error(EXIT_CHECK, format!("{path}: {e}")),
    }
}

const MODEL_NAMES: &str =
    "cycle-p1:<n>, chain-p1:<n>, sphere-toy, faulty-cycle-p1, random:<seed>, \
double-point, double-point:exceptional-first, double-point:single-blowup, double-point:base, \
triple-point, triple-point:base";

fn product_model(name: &str) -> Result<ProductResolutionModel, Outcome> {
    let built = match name {
        "double-point" => double_point_variant(DoublePointVariant::Standard),
        "double-point:exceptional-first" => {
            double_point_variant(DoublePointVariant::ExceptionalFirst)
        }
        "double-point:single-blowup" => double_point_variant(DoublePointVariant::SingleBlowup),
        "triple-point" => triple_point_product_model(),
        _ => {
            return Err(Outcome::error(
                EXIT_USAGE,
                format!(
                    "unknown product model `{name}`; expected double-point, \
double-point:exceptional-first, double-point:single-blowup or triple-point"
                ),
            ))
        }
    };
    built.map_err(|e| Outcome::error(EXIT_CHECK, e.to_string()))
}

fn parse_count(name: &str, s: &str) -> Result<usize, Outcome> {
    s.parse()
        .map_err(|_| Outcome::error(EXIT_USAGE, format!("`{name}` needs a number, got `{s}`")))
}

/// The built-in complexes by name; product models give their total fibre unless `:base` is asked.
pub fn builtin_complex(name: &str) -> Result<StrataComplex, Outcome> {
    let check = |r: Result<StrataComplex, models::ModelError>| {
        r.map_err(|e| Outcome::error(EXIT_USAGE, e.to_string()))
    };
    if let Some(n) = name.strip_prefix("cycle-p1:") {
        return check(cycle_of_p1(parse_count(name, n)?));
    }
    if let Some(n) = name.strip_prefix("chain-p1:") {
        return check(chain_of_p1(parse_count(name, n)?));
    }
    if let Some(s) = name.strip_prefix("random:") {
        let seed = s
            .parse()
            .map_err(|_| Outcome::error(EXIT_USAGE, format!("`{name}` needs a seed")))?;
        return Ok(random_valid_complex(RandomParams::default(), seed));
    }
    match name {
        "sphere-toy" => Ok(sphere_nerve_toy()),
        "faulty-cycle-p1" => Ok(faulty_cycle_of_p1()),
        _ => {
            if let Some(base) = name.strip_suffix(":base") {
                return Ok(product_model(base)?.base);
            }
            match product_model(name) {
                Ok(m) => Ok(m.total),
                Err(_) => Err(Outcome::error(
                    EXIT_USAGE,
                    format!("unknown model `{name}`; expected one of {MODEL_NAMES}"),
                )),
            }
        }
    }
}

fn report_validate(c: &StrataComplex) -> Outcome {
    let rep = validate(c, c.has_products());
    let mut out = String::new();
    writeln!(
        out,
        "complex: {} components, {} strata, products {}",
        c.n_components,
        c.strata.len(),
        if c.has_products() {
            "present"
        } else {
            "absent"
        }
    )
    .unwrap();
    for f in &rep.findings {
        writeln!(out, "  {f}").unwrap();
    }
    let errors = rep.errors().count();
    let warnings = rep.warnings().count();
    writeln!(
        out,
        "validate: {} ({errors} errors, {warnings} warnings)",
        pass_fail(errors == 0)
    )
    .unwrap();
    Outcome::with_code(if errors == 0 { EXIT_OK } else { EXIT_CHECK }, out)
}

fn report_e1(c: &StrataComplex, profile: Profile) -> Outcome {
    let p = match profile {
        Profile::Sigma => SignProfile::Sigma,
        Profile::OuterSigns => SignProfile::OuterSigns,
    };
    match build_e1(c, p) {
        Ok(page) => {
            let cells: Vec<_> = page
                .keys()
                .map(|&(r, n)| ((r, n), page.dim(r, n)))
                .collect();
            Outcome::ok(grid("E1 dimensions", &cells))
        }
        Err(e) => Outcome::error(EXIT_CHECK, e.to_string()),
    }
}

fn e2_text(c: &StrataComplex) -> Result<String, Outcome> {
    let page =
        build_e1(c, SignProfile::Sigma).map_err(|e| Outcome::error(EXIT_CHECK, e.to_string()))?;
    let e2 = compute_e2(&page);
    let cells: Vec<_> = e2.blocks.iter().map(|(&k, b)| (k, b.dim())).collect();
    let mut out = grid("E2 dimensions", &cells);
    let ns: std::collections::BTreeSet<i32> = e2.blocks.keys().map(|k| k.1).collect();
    for n in ns {
        let parts: Vec<String> = e2
            .blocks
            .iter()
            .filter(|((_, m), b)| *m == n && b.dim() > 0)
            .map(|((r, _), b)| format!("gr{} = {}", n + r, b.dim()))
            .collect();
        writeln!(
            out,
            "H^{n} = {}: {}",
            e2.total_dim(n),
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(", ")
            }
        )
        .unwrap();
    }
    Ok(out)
}

fn report_e2(c: &StrataComplex) -> Outcome {
    match e2_text(c) {
        Ok(t) => Outcome::ok(t),
        Err(o) => o,
    }
}

fn report_dual_graph(c: &StrataComplex) -> String {
    let h = dual_complex_cohomology(c);
    let parts: Vec<String> = h
        .iter()
        .enumerate()
        .map(|(i, b)| format!("h{i} = {b}"))
        .collect();
    format!("{}\n", parts.join(", "))
}

fn report_criteria(c: &StrataComplex) -> Outcome {
    match monodromy_criteria(c) {
        Ok(m) => Outcome::ok(format!(
            "N = 0 on H^1: {}\nN = 0 on H^2: {}\nN^2 = 0 on H^2: {}\n",
            yes_no(m.n_on_h1_zero),
            yes_no(m.n_on_h2_zero),
            yes_no(m.n2_on_h2_zero)
        )),
        Err(e) => Outcome::error(EXIT_CHECK, e.to_string()),
    }
}

fn report_clemens_schmid(c: &StrataComplex) -> Outcome {
    let page = match build_e1(c, SignProfile::Sigma) {
        Ok(p) => p,
        Err(e) => return Outcome::error(EXIT_CHECK, e.to_string()),
    };
    let r = clemens_schmid_curve_check(&compute_e2(&page), c);
    let mut out = String::new();
    writeln!(out, "curve type: {}", yes_no(r.curve_type)).unwrap();
    writeln!(
        out,
        "weight 2 of H^1: {} (kernel of Gysin: {}) {}",
        r.top_weight,
        r.gysin_kernel,
        pass_fail(r.top_exact)
    )
    .unwrap();
    writeln!(
        out,
        "weight 0 of H^1: {} (cokernel of restriction: {}) {}",
        r.bottom_weight,
        r.restriction_cokernel,
        pass_fail(r.bottom_exact)
    )
    .unwrap();
    writeln!(
        out,
        "weight 1 of H^1: {} (H^1 of components: {}) {}",
        r.middle_e2,
        r.middle,
        pass_fail(r.middle_ok)
    )
    .unwrap();
    writeln!(out, "dim H^1 of the limit: {}", r.h1_limit).unwrap();
    writeln!(out, "clemens-schmid: {}", pass_fail(r.pass())).unwrap();
    Outcome::with_code(if r.pass() { EXIT_OK } else { EXIT_CHECK }, out)
}

fn report_bloch(c: &StrataComplex, trials: usize, seed: u64) -> Outcome {
    if !c.has_products() && !c.strata.is_empty() {
        return Outcome::error(EXIT_CHECK, "the complex carries no cup products");
    }
    match check_leibniz(c, trials, seed) {
        Ok(r) => {
            let mut out = format!("{} {}/{}\n", pass_fail(r.pass()), r.passed, r.trials);
            for w in &r.witnesses {
                writeln!(
                    out,
                    "  trial {}: I = {}, J = {}, degrees ({}, {})\n    lhs {}\n    rhs {}",
                    w.trial, w.i, w.j, w.deg_x, w.deg_y, w.lhs, w.rhs
                )
                .unwrap();
            }
            Outcome::with_code(if r.pass() { EXIT_OK } else { EXIT_CHECK }, out)
        }
        Err(e) => Outcome::error(EXIT_CHECK, e.to_string()),
    }
}

fn row_relation(labels: &[String], coeffs: &[exactq::Rat], rhs: &exactq::Rat) -> Relation {
    Relation {
        terms: labels
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != exactq::zero())
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect(),
        rhs: rhs.clone(),
    }
}

/// Full solve report for one model and power.
pub fn solve_report(m: &ProductResolutionModel, power: usize) -> Result<String, Outcome> {
    let p = build_problem(m, power).map_err(cocycle_outcome)?;
    let mut out = String::new();
    writeln!(out, "model: {}", m.name).unwrap();
    writeln!(out, "power: {power}").unwrap();
    writeln!(out, "candidate slot: (r, n) = ({}, {})", p.slot.0, p.slot.1).unwrap();
    writeln!(
        out,
        "unknowns ({}): {}",
        p.unknowns.len(),
        p.unknowns.join(", ")
    )
    .unwrap();
    for (title, g) in [
        ("kernel rows", ConstraintGroup::Kernel),
        ("commutativity rows", ConstraintGroup::Commutativity),
    ] {
        let rows: Vec<_> = p.rows_in(g).collect();
        writeln!(out, "{title} ({}):", rows.len()).unwrap();
        for r in rows {
            writeln!(
                out,
                "  [{}] {}",
                r.tag,
                row_relation(&p.unknowns, &r.coeffs, &r.rhs)
            )
            .unwrap();
        }
    }
    writeln!(out, "relations:").unwrap();
    for r in reduced_relations(&p) {
        writeln!(out, "  {r}").unwrap();
    }
    let sol = solve(&p).map_err(cocycle_outcome)?;
    let x = sol.particular.clone().expect("feasible");
    writeln!(out, "particular solution:").unwrap();
    labeled_rows(&mut out, "  ", &p.unknowns, &x);
    writeln!(out, "nullspace ({}):", sol.nullspace_basis.len()).unwrap();
    for (k, v) in sol.nullspace_basis.iter().enumerate() {
        let parts: Vec<String> = p
            .unknowns
            .iter()
            .zip(v)
            .filter(|(_, c)| **c != exactq::zero())
            .map(|(l, c)| format!("{l} = {}", fmt_rat(c)))
            .collect();
        writeln!(out, "  n{}: {}", k + 1, parts.join(", ")).unwrap();
    }
    let cls = e2_class(&p, &sol).map_err(cocycle_outcome)?;
    writeln!(out, "boundary image rank: {}", cls.image_rank).unwrap();
    writeln!(out, "ambiguity modulo boundaries: {}", cls.ambiguity).unwrap();
    writeln!(
        out,
        "representative is a boundary: {}",
        yes_no(cls.representative_is_boundary)
    )
    .unwrap();
    let diag = verify_diagram(m, power, &x).map_err(cocycle_outcome)?;
    let passed = diag.squares.iter().filter(|s| s.pass).count();
    writeln!(
        out,
        "diagram: {} ({passed}/{} squares, d1-closed: {})",
        pass_fail(diag.pass()),
        diag.squares.len(),
        yes_no(diag.closed)
    )
    .unwrap();
    Ok(out)
}

fn cocycle_outcome(e: CocycleError) -> Outcome {
    match e {
        CocycleError::Infeasible => Outcome::error(EXIT_INFEASIBLE, e.to_string()),
        other => Outcome::error(EXIT_CHECK, other.to_string()),
    }
}

fn solve_n(model: &str, power: usize) -> Outcome {
    let m = match product_model(model) {
        Ok(m) => m,
        Err(o) => return o,
    };
    match solve_report(&m, power) {
        Ok(t) => Outcome::ok(t),
        Err(o) => o,
    }
}

fn curve_demo(c: &StrataComplex) -> Outcome {
    let mut out = String::new();
    let mut code = EXIT_OK;
    let mut take = |title: &str, o: Outcome, out: &mut String| {
        writeln!(out, "== {title}").unwrap();
        out.push_str(&o.stdout);
        out.push_str(&o.stderr);
        if o.code != EXIT_OK {
            code = code.max(o.code);
        }
    };
    take("validate", report_validate(c), &mut out);
    take("E1", report_e1(c, Profile::Sigma), &mut out);
    take("E2", report_e2(c), &mut out);
    take("dual graph", Outcome::ok(report_dual_graph(c)), &mut out);
    take("criteria", report_criteria(c), &mut out);
    take("clemens-schmid", report_clemens_schmid(c), &mut out);
    take(
        "leibniz (100 trials, seed 0)",
        report_bloch(c, 100, 0),
        &mut out,
    );
    match cap_product_oracle_check(c, 100, 0) {
        Ok(r) => take(
            "cap product",
            Outcome::with_code(
                if r.pass() { EXIT_OK } else { EXIT_CHECK },
                format!(
                    "unit: {}, point caps: {} ({} cases), associativity failures: {}/{}\ncap: {}\n",
                    pass_fail(r.unit_acts_as_identity),
                    pass_fail(r.point_cap_ok),
                    r.point_cap_cases,
                    r.associativity_failures,
                    r.associativity_trials,
                    pass_fail(r.pass())
                ),
            ),
            &mut out,
        ),
        Err(e) => take(
            "cap product",
            Outcome::error(EXIT_CHECK, e.to_string()),
            &mut out,
        ),
    }
    Outcome::with_code(code, out)
}

fn demo(name: &str) -> Outcome {
    if name.starts_with("cycle-p1:") {
        return match builtin_complex(name) {
            Ok(c) => curve_demo(&c),
            Err(o) => o,
        };
    }
    let mut out = String::new();
    match name {
        "double-point" => {
            let variants = [
                DoublePointVariant::Standard,
                DoublePointVariant::ExceptionalFirst,
                DoublePointVariant::SingleBlowup,
            ];
            for v in variants {
                let m = match product_model(v.name()) {
                    Ok(m) => m,
                    Err(o) => return o,
                };
                writeln!(out, "== {}", v.name()).unwrap();
                match solve_report(&m, 1) {
                    Ok(t) => out.push_str(&t),
                    Err(o) => return o,
                }
                let x = build_problem(&m, 1)
                    .and_then(|p| solve(&p))
                    .map(|s| s.particular.expect("feasible"));
                let agrees = x
                    .and_then(|x| correspondence_action(&m, 1, &x))
                    .map(|a| a == nu_power_matrix(&m, 1));
                match agrees {
                    Ok(b) => writeln!(out, "correspondence acts as N: {}", yes_no(b)).unwrap(),
                    Err(e) => return cocycle_outcome(e),
                }
            }
            Outcome::ok(out)
        }
        "triple-point" => {
            let m = match product_model("triple-point") {
                Ok(m) => m,
                Err(o) => return o,
            };
            for power in [1, 2] {
                writeln!(out, "== triple-point, N^{power}").unwrap();
                match solve_report(&m, power) {
                    Ok(t) => out.push_str(&t),
                    Err(o) => return o,
                }
            }
            Outcome::ok(out)
        }
        _ => Outcome::error(
            EXIT_USAGE,
            format!("unknown demo `{name}`; expected cycle-p1:<n>, double-point or triple-point"),
        ),
    }
}
