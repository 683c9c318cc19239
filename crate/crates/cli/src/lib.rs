//! `qflag`: command line front end for the exact quantum group engine.
//!
//! Every invocation works in one session algebra `C_q[SU_N]`, with `N`
//! taken from `--n`, the `QFLAG_DEFAULT_N` environment variable, or the
//! default 2.  Expressions are parsed by the grammar in [`parse`],
//! evaluated exactly, and printed in the same grammar; `--json` switches
//! the output to the documented machine-readable shapes.
//!
//! Exit codes: 0 on success, 1 when a computation fails a mathematical
//! check (a verification suite reports failures, an argument violates a
//! stated precondition such as having nonzero counit), 2 for malformed
//! requests (syntax errors, out-of-range indices, unknown suites or maps,
//! sizes outside the supported range).

pub mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use qflag_core::bundles::{
    coaction, covariant_derivative, dolbeault, line_bundle_degree, theta, DolbeaultPart, HopfMapId,
};
use qflag_core::calculus::{calc_ctx, frame_name, OneForm};
use qflag_core::killing::{killing_matrix, pair_r, pair_rbar};
use qflag_core::ncalg::{oracle_ideal_membership, AlgebraSpec, NcPoly};
use qflag_core::verify::{run_suite, Budget, SUITE_NAMES};
use qflag_core::Error;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qflag",
    version,
    about = "Exact computations in the quantum groups C_q[SU_N], their covariant calculi, and the quantum flag bundles over them"
)]
struct Cli {
    /// Size N of the session algebra C_q[SU_N]
    #[arg(long, global = true, env = "QFLAG_DEFAULT_N", default_value_t = 2)]
    n: u8,

    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    /// At N = 2, print the generators as the letters a, b, c, d
    #[arg(long, global = true)]
    letters: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an algebra expression to its normal form under the exchange
    /// relations; expressions using quotient-only operations (S, spheres,
    /// detinv) reduce in the session quotient instead
    Nf {
        expr: String,
        /// Also certify whether the expression is congruent to zero modulo
        /// the determinant ideal, searching witnesses up to this total degree
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Exterior derivative, expanded over the left-invariant frame
    D { expr: String },
    /// Holomorphic part of the exterior derivative on sphere coordinates
    Del { expr: String },
    /// Antiholomorphic part of the exterior derivative on sphere coordinates
    Delbar { expr: String },
    /// Soldering form of a counit-kernel expression
    Theta { expr: String },
    /// Covariant derivative of the canonical connection
    Nabla { expr: String },
    /// Coset class of an expression in the quotient of left-invariant forms
    Coset { expr: String },
    /// Evaluate the coquasi-triangular pairing on two expressions
    Pair {
        kind: PairKind,
        left: String,
        right: String,
    },
    /// Quantum Killing matrix of an expression
    Killing { expr: String },
    /// Right action of a one-form on an algebra expression
    Act { form: String, expr: String },
    /// Coaction along one of the quotient Hopf maps (alpha, beta, gamma)
    Coact { map: String, expr: String },
    /// Line bundle degree of a homogeneous expression
    Degree { expr: String },
    /// Run one verification suite, or all of them
    #[command(after_help = suite_registry())]
    Verify {
        /// Suite name from the registry below
        suite: Option<String>,
        /// Run every suite the session size admits
        #[arg(long)]
        all: bool,
        /// Seed for sampled budgets
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evidence budget: 'exhaustive' or 'sample:<count>'
        #[arg(long)]
        budget: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PairKind {
    /// The coquasi-triangular form r
    R,
    /// Its convolution inverse rbar
    Rbar,
}

fn suite_registry() -> String {
    format!("Suite registry:\n  {}", SUITE_NAMES.join("\n  "))
}

/// How a failed invocation should report itself.
enum Failure {
    /// Malformed request; exit code 2.
    Usage(String),
    /// The computation ran and a mathematical check failed; exit code 1.
    Check(String),
}

fn classify(e: Error) -> Failure {
    match e {
        Error::CounitNonzero
        | Error::MixedDegrees { .. }
        | Error::CoinvarianceViolation { .. }
        | Error::Internal(_) => Failure::Check(e.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

/// Parse the command line from the process environment, run it, and return
/// the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Substitute the size-two letter names into printed output.
pub fn letters_n2(s: &str) -> String {
    s.replace("u[1,1]", "a")
        .replace("u[1,2]", "b")
        .replace("u[2,1]", "c")
        .replace("u[2,2]", "d")
}

struct Output {
    json: bool,
    letters: bool,
}

impl Output {
    fn text_line(&self, s: String) {
        if self.letters {
            println!("{}", letters_n2(&s));
        } else {
            println!("{s}");
        }
    }

    fn value(&self, v: serde_json::Value) {
        println!("{}", serde_json::to_string_pretty(&v).expect("JSON output is serializable"));
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let n = cli.n;
    if n < 2 {
        return Err(Failure::Usage(Error::UnsupportedSize(n).to_string()));
    }
    let spec = AlgebraSpec::special_unitary(n, u32::from(n));
    let out = Output { json: cli.json, letters: cli.letters && n == 2 };
    match cli.command {
        Command::Nf { expr, bound } => cmd_nf(spec, &out, &expr, bound),
        Command::D { expr } => cmd_form(spec, &out, &expr, |p| {
            calc_ctx(p.spec()).and_then(|ctx| ctx.ext_d(p))
        }),
        Command::Del { expr } => cmd_form(spec, &out, &expr, |p| dolbeault(p, DolbeaultPart::Hol)),
        Command::Delbar { expr } => {
            cmd_form(spec, &out, &expr, |p| dolbeault(p, DolbeaultPart::AntiHol))
        }
        Command::Theta { expr } => cmd_form(spec, &out, &expr, theta),
        Command::Nabla { expr } => cmd_form(spec, &out, &expr, covariant_derivative),
        Command::Coset { expr } => cmd_coset(spec, &out, &expr),
        Command::Pair { kind, left, right } => cmd_pair(spec, &out, kind, &left, &right),
        Command::Killing { expr } => cmd_killing(spec, &out, &expr),
        Command::Act { form, expr } => cmd_act(spec, &out, &form, &expr),
        Command::Coact { map, expr } => cmd_coact(spec, &out, &map, &expr),
        Command::Degree { expr } => cmd_degree(spec, &out, &expr),
        Command::Verify { suite, all, seed, budget } => {
            cmd_verify(n, &out, suite, all, seed, budget)
        }
    }
}

fn parse_expr(text: &str, spec: AlgebraSpec, role: &str) -> Result<NcPoly, Failure> {
    parse::parse_poly(text, spec).map_err(|e| Failure::Usage(format!("{role}: {e}")))
}

fn poly_terms_json(p: &NcPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.terms()
            .map(|(m, c)| json!({"monomial": m.to_string(), "scalar": c.to_string()}))
            .collect(),
    )
}

fn frame_basis(spec: AlgebraSpec) -> Vec<String> {
    let dim = 2 * usize::from(spec.size) - 1;
    (0..dim).map(|t| frame_name(spec.size, t)).collect()
}

fn form_out(out: &Output, spec: AlgebraSpec, f: &OneForm) {
    if out.json {
        out.value(json!({
            "basis": frame_basis(spec),
            "coefficients": f.coeffs.iter().map(poly_terms_json).collect::<Vec<_>>(),
        }));
    } else {
        out.text_line(f.to_string());
    }
}

fn cmd_form<F>(spec: AlgebraSpec, out: &Output, expr: &str, op: F) -> Result<(), Failure>
where
    F: FnOnce(&NcPoly) -> qflag_core::Result<OneForm>,
{
    let p = parse_expr(expr, spec, "expression")?;
    let w = op(&p).map_err(classify)?;
    form_out(out, spec, &w);
    Ok(())
}

fn cmd_nf(spec: AlgebraSpec, out: &Output, expr: &str, bound: Option<usize>) -> Result<(), Failure> {
    let p = parse_expr(expr, spec, "expression")?;
    let twin = AlgebraSpec::matrix(spec.size, spec.root);
    // The quotient rewrites through det = 1, so its normal forms are not
    // representative of the bare exchange relations. When the expression
    // also makes sense in the matrix bialgebra, present that reduction;
    // quotient-only expressions keep the session's reduction.
    let shown = parse::parse_poly(expr, twin).unwrap_or_else(|_| p.clone());
    let oracle = match bound {
        None => None,
        Some(bound) => {
            // An element of the quotient is zero exactly when any word-level
            // lift lies in the determinant ideal of the matrix bialgebra,
            // which the bounded oracle can certify independently of the
            // rewrite rules.
            let lifted = NcPoly::from_raw_terms(twin, p.terms().map(|(m, c)| (m.0.clone(), c.clone())));
            let zero = lifted.is_structurally_zero()
                || oracle_ideal_membership(&lifted, bound).map_err(classify)?;
            Some((bound, zero))
        }
    };
    if out.json {
        let mut v = json!({"value": shown.to_string()});
        if let Some((bound, zero)) = oracle {
            v["oracle"] = json!({"bound": bound, "zero_mod_det_ideal": zero});
        }
        out.value(v);
    } else {
        out.text_line(shown.to_string());
        if let Some((bound, zero)) = oracle {
            if zero {
                eprintln!("oracle: congruent to zero modulo the determinant ideal (witness degree <= {bound})");
            } else {
                eprintln!("oracle: no zero witness within degree {bound}");
            }
        }
    }
    Ok(())
}

fn cmd_coset(spec: AlgebraSpec, out: &Output, expr: &str) -> Result<(), Failure> {
    let p = parse_expr(expr, spec, "expression")?;
    let ctx = calc_ctx(spec).map_err(classify)?;
    let c = ctx.coset(&p).map_err(classify)?;
    if out.json {
        out.value(json!({
            "basis": frame_basis(spec),
            "coordinates": c.coords.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    } else {
        out.text_line(c.to_string());
    }
    Ok(())
}

fn cmd_pair(
    spec: AlgebraSpec,
    out: &Output,
    kind: PairKind,
    left: &str,
    right: &str,
) -> Result<(), Failure> {
    let l = parse_expr(left, spec, "left expression")?;
    let r = parse_expr(right, spec, "right expression")?;
    let v = match kind {
        PairKind::R => pair_r(&l, &r),
        PairKind::Rbar => pair_rbar(&l, &r),
    }
    .map_err(classify)?;
    if out.json {
        out.value(json!({"value": v.to_string()}));
    } else {
        out.text_line(v.to_string());
    }
    Ok(())
}

fn cmd_killing(spec: AlgebraSpec, out: &Output, expr: &str) -> Result<(), Failure> {
    let p = parse_expr(expr, spec, "expression")?;
    let m = killing_matrix(&p).map_err(classify)?;
    let n = usize::from(spec.size);
    let rows: Vec<Vec<String>> = (0..n)
        .map(|k| (0..n).map(|l| m.at(k, l).to_string()).collect())
        .collect();
    if out.json {
        out.value(json!({"size": n, "entries": rows}));
    } else {
        for row in rows {
            out.text_line(format!("[{}]", row.join(", ")));
        }
    }
    Ok(())
}

fn cmd_act(spec: AlgebraSpec, out: &Output, form: &str, expr: &str) -> Result<(), Failure> {
    let w = parse::parse_form(form, spec).map_err(|e| Failure::Usage(format!("one-form: {e}")))?;
    let g = parse_expr(expr, spec, "expression")?;
    let ctx = calc_ctx(spec).map_err(classify)?;
    let r = ctx.right_act(&w, &g).map_err(classify)?;
    form_out(out, spec, &r);
    Ok(())
}

fn cmd_coact(spec: AlgebraSpec, out: &Output, map: &str, expr: &str) -> Result<(), Failure> {
    let id = HopfMapId::parse(map)
        .ok_or_else(|| Failure::Usage(format!("unknown map '{map}'; expected 'alpha', 'beta', or 'gamma'")))?;
    let p = parse_expr(expr, spec, "expression")?;
    let t = coaction(id, &p).map_err(classify)?;
    if out.json {
        let terms: Vec<serde_json::Value> = t
            .terms()
            .map(|((ml, mr), c)| {
                json!({"left": ml.to_string(), "right": mr.to_string(), "scalar": c.to_string()})
            })
            .collect();
        out.value(json!({"terms": terms}));
    } else {
        out.text_line(t.to_string());
    }
    Ok(())
}

fn cmd_degree(spec: AlgebraSpec, out: &Output, expr: &str) -> Result<(), Failure> {
    let p = parse_expr(expr, spec, "expression")?;
    let d = line_bundle_degree(&p).map_err(classify)?;
    if out.json {
        out.value(json!({"value": d}));
    } else {
        out.text_line(d.to_string());
    }
    Ok(())
}

fn cmd_verify(
    n: u8,
    out: &Output,
    suite: Option<String>,
    all: bool,
    seed: u64,
    budget: Option<String>,
) -> Result<(), Failure> {
    let budget = match budget {
        Some(s) => s.parse::<Budget>().map_err(Failure::Usage)?,
        None => Budget::default_for(n),
    };
    if all {
        if suite.is_some() {
            return Err(Failure::Usage("give a suite name or --all, not both".into()));
        }
        let mut reports = Vec::new();
        let mut skipped: Vec<(&str, String)> = Vec::new();
        for name in SUITE_NAMES {
            match run_suite(name, n, seed, budget) {
                Ok(r) => reports.push(r),
                Err(e @ Error::SuiteTooLarge { .. }) => skipped.push((name, e.to_string())),
                Err(e) => return Err(classify(e)),
            }
        }
        if reports.is_empty() {
            return Err(Failure::Usage(format!("no suite in the registry admits size {n}")));
        }
        let failing: Vec<String> = reports
            .iter()
            .filter(|r| !r.all_passed())
            .map(|r| r.suite_name.clone())
            .collect();
        if out.json {
            let skipped: Vec<serde_json::Value> = skipped
                .iter()
                .map(|(name, reason)| json!({"suite": name, "reason": reason}))
                .collect();
            out.value(json!({
                "reports": serde_json::to_value(&reports).expect("reports serialize"),
                "skipped": skipped,
            }));
        } else {
            for r in &reports {
                out.text_line(r.to_string());
            }
            for (name, reason) in &skipped {
                out.text_line(format!("skipped {name}: {reason}"));
            }
        }
        if failing.is_empty() {
            Ok(())
        } else {
            Err(Failure::Check(format!("suites failed: {}", failing.join(", "))))
        }
    } else {
        let Some(name) = suite else {
            return Err(Failure::Usage(format!(
                "give a suite name or --all; available suites:\n  {}",
                SUITE_NAMES.join("\n  ")
            )));
        };
        let r = run_suite(&name, n, seed, budget).map_err(classify)?;
        if out.json {
            out.value(serde_json::to_value(&r).expect("report serializes"));
        } else {
            out.text_line(r.to_string());
        }
        if r.all_passed() {
            Ok(())
        } else {
            Err(Failure::Check(format!(
                "{} of {} checks failed in suite '{}'",
                r.failed,
                r.failed + r.passed,
                name
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn letters_substitution_hits_every_generator() {
        assert_eq!(
            letters_n2("u[1,1]*u[2,2] - (q - q^-1)*u[1,2]*u[2,1]"),
            "a*d - (q - q^-1)*b*c"
        );
    }

    #[test]
    fn failure_classification_separates_usage_from_checks() {
        assert!(matches!(classify(Error::CounitNonzero), Failure::Check(_)));
        assert!(matches!(
            classify(Error::MixedDegrees { left: 1, right: -1 }),
            Failure::Check(_)
        ));
        assert!(matches!(classify(Error::UnknownSuite("x".into())), Failure::Usage(_)));
        assert!(matches!(classify(Error::UnsupportedSize(9)), Failure::Usage(_)));
        assert!(matches!(
            classify(Error::BoundTooSmall { bound: 1, degree: 2 }),
            Failure::Usage(_)
        ));
    }
}
