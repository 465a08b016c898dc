//! Command dispatch for `gnd`: `desing`, `hba`, `lift` and `check`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gnd_algebra::{BlockRole, Polynomial, TermOrder};
use gnd_core::coeff::build_d;
use gnd_core::desing::{desingularize_traced, DesingOptions, DesingResult};
use gnd_core::elkik::elkik_ideal;
use gnd_core::greenberg::{attainable_agreement, check_hypothesis, newton_lift, LiftReport, LiftingProblem};
use gnd_core::jet::JetContext;
use gnd_core::problem::{parse_problem, Problem};
use gnd_core::trace::Trace;
use gnd_core::GndError;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_CONDITION: i32 = 3;
pub const EXIT_USAGE: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "gnd", version, about = "Desingularization of morphisms into one-dimensional local rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the desingularization and print one trace line per step.
    Desing {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_subset: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the Elkik ideal of the algebra, subsystem by subsystem.
    Hba {
        file: PathBuf,
        #[arg(long)]
        max_subset: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lift the approximate solution of the morphism section.
    Lift {
        file: PathBuf,
        #[arg(long)]
        rho: u32,
        #[arg(long, default_value_t = 20)]
        target_precision: u32,
        /// Comma-separated 1-based indices of the relations forming f.
        #[arg(long, value_delimiter = ',')]
        f_indices: Vec<usize>,
        /// Integer coefficients, one per relation; f is their single combination.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "f_indices")]
        combination: Vec<i64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the preconditions of a problem file without running it.
    Check {
        file: PathBuf,
        #[arg(long)]
        rho: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        f_indices: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "f_indices")]
        combination: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, stdout: String, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout, stderr }
    }
}

pub fn exit_code(e: &GndError) -> i32 {
    match e {
        GndError::BoundTooSmall => EXIT_BOUND,
        GndError::Parse { .. } | GndError::InvalidInput(_) => EXIT_USAGE,
        GndError::DecompositionIncomplete(_)
        | GndError::TargetInsidePrime(_)
        | GndError::ActiveElementNotFound(_)
        | GndError::NotAUnit(_)
        | GndError::NotDivisible(_)
        | GndError::SeparabilityFailure(_)
        | GndError::ConditionStarStarFailed(_)
        | GndError::CompletionFailed(_)
        | GndError::DivisibilityViolated(_)
        | GndError::HypothesisViolated(_)
        | GndError::PreconditionFailed(_)
        | GndError::NoContraction(_) => EXIT_CONDITION,
        GndError::Algebra(_) | GndError::CertificateFailed(_) | GndError::VerificationFailed(_) => EXIT_INTERNAL,
    }
}

pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome::fail(EXIT_USAGE, String::new(), text),
            };
        }
    };
    let file = match &cli.command {
        Command::Desing { file, .. } | Command::Hba { file, .. } | Command::Lift { file, .. } | Command::Check { file, .. } => {
            file
        }
    };
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_USAGE, String::new(), format!("cannot read {}: {e}", file.display())),
    };
    let problem = match parse_problem(&src) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(exit_code(&e), String::new(), format!("{}: {e}", file.display())),
    };
    match cli.command {
        Command::Desing {
            seed,
            max_subset,
            format,
            ..
        } => run_desing(&problem, seed, max_subset, format),
        Command::Hba { max_subset, format, .. } => run_hba(&problem, max_subset, format),
        Command::Lift {
            rho,
            target_precision,
            f_indices,
            combination,
            seed,
            format,
            ..
        } => run_lift(&problem, rho, target_precision, &f_indices, &combination, seed, format),
        Command::Check {
            rho,
            f_indices,
            combination,
            format,
            ..
        } => run_check(&problem, rho, &f_indices, &combination, format),
    }
}

fn emit_trace(trace: &Trace, format: Format) -> String {
    match format {
        Format::Text => trace.to_text(),
        Format::Machine => trace.to_machine(),
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn run_desing(problem: &Problem, seed: Option<u64>, max_subset: Option<usize>, format: Format) -> Outcome {
    let mut opts = DesingOptions::from_problem(problem);
    if let Some(s) = seed {
        opts.seed = s;
    }
    if let Some(m) = max_subset {
        opts.max_subset = m;
    }
    let mut trace = Trace::default();
    match desingularize_traced(problem, &opts, &mut trace) {
        Ok(r) => {
            let mut out = emit_trace(&r.trace, format);
            match format {
                Format::Text => out.push_str(&r.output_text()),
                Format::Machine => {
                    out.push_str(&desing_json(&r).to_string());
                    out.push('\n');
                }
            }
            let failed_factor = r.factorization.as_ref().is_some_and(|f| !f.all_pass());
            if failed_factor {
                return Outcome::fail(EXIT_INTERNAL, out, "the factorization check failed");
            }
            Outcome {
                code: EXIT_OK,
                stdout: out,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::fail(exit_code(&e), emit_trace(&trace, format), e.to_string()),
    }
}

fn desing_json(r: &DesingResult) -> Value {
    let ring = &r.output.presentation.ring;
    let checks: serde_json::Map<String, Value> = r
        .output
        .report
        .checks
        .iter()
        .map(|(n, ok)| (n.clone(), Value::Bool(*ok)))
        .collect();
    let mut out = json!({
        "output": {
            "variables": (0..ring.nvars()).map(|i| ring.name(i).to_string()).collect::<Vec<_>>(),
            "base_relations": strings(&r.output.presentation.base_relations),
            "relations": strings(&r.output.presentation.relations),
            "simplified": strings(&r.output.simplified),
            "inverted": r.output.multiplier.to_string(),
            "certificate": checks,
        }
    });
    if let Some(f) = &r.factorization {
        let checks: serde_json::Map<String, Value> =
            f.checks.iter().map(|(n, ok)| (n.clone(), Value::Bool(*ok))).collect();
        out["output"]["factorization"] = json!({ "precision": f.precision, "checks": checks });
    }
    out
}

fn run_hba(problem: &Problem, max_subset: Option<usize>, format: Format) -> Outcome {
    let cap = max_subset.or(problem.max_subset).unwrap_or(gnd_core::desing::DEFAULT_MAX_SUBSET);
    let b = problem.algebra();
    let a = match problem.local_spec() {
        Ok(a) => a,
        Err(e) => return Outcome::fail(exit_code(&e), String::new(), e.to_string()),
    };
    let data = match elkik_ideal(&b, cap) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(exit_code(&e), String::new(), e.to_string()),
    };
    let dp = TermOrder::degrevlex(b.ring.nvars());
    let h = data.ideal(&b.ring);
    let radical: Vec<String> = b
        .ring
        .indices_with_role(BlockRole::Base)
        .into_iter()
        .map(|i| Polynomial::var(&b.ring, i))
        .filter(|x| h.radical_contains(x))
        .map(|x| x.to_string())
        .collect();
    let contraction: Vec<Polynomial> = data
        .contraction
        .iter()
        .filter_map(|g| g.embed(a.ring()).ok())
        .map(|g| a.relations().normal_form(&g, &a.global_order()))
        .filter(|g| !g.is_zero())
        .collect();
    let dim = a.quotient_dimension(&contraction);
    let rels = &b.relations;
    let subsets: Vec<Value> = data
        .subsets
        .iter()
        .map(|s| {
            json!({
                "indices": s.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "f": s.indices.iter().map(|&i| rels[i].to_string()).collect::<Vec<_>>(),
                "colon": strings(&s.colon),
                "minors": s.minors.iter().map(|m| m.monic(&dp).to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let out = match format {
        Format::Machine => {
            let v = json!({
                "subsets": subsets,
                "generators": strings(&data.generators),
                "contraction": strings(&contraction),
                "radical_contains": radical,
                "dimension": dim,
                "truncated": data.truncated,
            });
            format!("{v}\n")
        }
        Format::Text => {
            let mut s = String::new();
            for (k, sub) in data.subsets.iter().enumerate() {
                let idx: Vec<String> = sub.indices.iter().map(|i| (i + 1).to_string()).collect();
                let _ = writeln!(s, "subsystem {} (relations {}):", k + 1, idx.join(","));
                let f: Vec<String> = sub.indices.iter().map(|&i| rels[i].to_string()).collect();
                let _ = writeln!(s, "  f = ({})", f.join(", "));
                let _ = writeln!(s, "  (f):I = ({})", strings(&sub.colon).join(", "));
                let minors: Vec<String> = sub.minors.iter().map(|m| m.monic(&dp).to_string()).collect();
                let _ = writeln!(s, "  Δ_f = ({})", minors.join(", "));
            }
            let _ = writeln!(s, "H∩A = ({})", strings(&contraction).join(", "));
            let _ = writeln!(s, "√H ⊇ ({})", radical.join(", "));
            let _ = writeln!(s, "dim(A/H∩A) = {dim}");
            if data.truncated {
                let _ = writeln!(s, "subsystems capped at size {cap}");
            }
            s
        }
    };
    Outcome {
        code: EXIT_OK,
        stdout: out,
        stderr: String::new(),
    }
}

fn zero_based(f_indices: &[usize]) -> Result<Vec<usize>, Outcome> {
    f_indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Outcome::fail(EXIT_USAGE, String::new(), "--f-indices are 1-based"))
        })
        .collect()
}

fn lifting_problem(
    problem: &Problem,
    idx: &[usize],
    combination: &[i64],
    rho: u32,
    c: u32,
    target: u32,
) -> Result<LiftingProblem, GndError> {
    let prob = LiftingProblem::from_problem(problem, idx, rho, c, target)?;
    if combination.is_empty() {
        Ok(prob)
    } else {
        prob.with_combination(combination)
    }
}

fn run_lift(
    problem: &Problem,
    rho: u32,
    target: u32,
    f_indices: &[usize],
    combination: &[i64],
    seed: Option<u64>,
    format: Format,
) -> Outcome {
    let idx = match zero_based(f_indices) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let result = (|| {
        let mut prob = lifting_problem(problem, &idx, combination, rho, 0, target)?;
        if let Some(s) = seed {
            prob.seed = s;
        }
        prob.c = attainable_agreement(&prob)?;
        let report = newton_lift(&prob)?;
        Ok::<_, GndError>((prob, report))
    })();
    match result {
        Ok((prob, report)) => Outcome {
            code: EXIT_OK,
            stdout: lift_output(&prob, &report, format),
            stderr: String::new(),
        },
        Err(e) => Outcome::fail(exit_code(&e), String::new(), e.to_string()),
    }
}

fn lift_output(prob: &LiftingProblem, r: &LiftReport, format: Format) -> String {
    let names = prob.algebra.unknown_names();
    match format {
        Format::Machine => {
            let y: serde_json::Map<String, Value> = names
                .iter()
                .zip(&r.y)
                .map(|(n, j)| (n.clone(), Value::String(j.rep.to_string())))
                .collect();
            let v = json!({
                "e": r.e,
                "rho": r.rho,
                "c": r.c,
                "nu": r.nu,
                "d": r.d.to_string(),
                "gains": r.gains,
                "agreement": r.agreement,
                "precision": r.precision,
                "y": y,
            });
            format!("{v}\n")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "e = {}, ρ = {}, c = {}, ν(c) = {}", r.e, r.rho, r.c, r.nu);
            let _ = writeln!(s, "d = {}", r.d);
            let _ = writeln!(s, "update orders: {:?}", r.gains);
            let _ = writeln!(s, "agreement with y′ below order {}", r.agreement);
            for (n, j) in names.iter().zip(&r.y) {
                let _ = writeln!(s, "{n} = {j}");
            }
            s
        }
    }
}

fn run_check(problem: &Problem, rho: Option<u32>, f_indices: &[usize], combination: &[i64], format: Format) -> Outcome {
    let idx = match zero_based(f_indices) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let mut facts: Vec<(String, Value)> = Vec::new();
    let mut ok = true;
    let a = match problem.local_spec() {
        Ok(a) => a,
        Err(e) => return Outcome::fail(exit_code(&e), String::new(), e.to_string()),
    };
    facts.push(("dim A".into(), json!(a.dimension())));
    if a.dimension() != 1 {
        ok = false;
    }
    match a.minimal_primes() {
        Ok(ps) => {
            let ps: Vec<Value> = ps.iter().map(|p| json!(strings(p.gens()))).collect();
            facts.push(("minimal primes".into(), Value::Array(ps)));
        }
        Err(e) => {
            ok = false;
            facts.push(("minimal primes".into(), Value::String(e.to_string())));
        }
    }
    if let Some(n) = problem.precision {
        let vanish = (|| {
            let ext = problem.coeff_ext()?;
            let dbase = build_d(&ext, &a)?;
            let ctx = JetContext::new(&dbase.ring, dbase.base_vars(), dbase.value_relations.clone());
            let jets: Vec<_> = problem
                .jet_polys()
                .into_iter()
                .map(|(name, p)| (name, ctx.jet(&p, n)))
                .collect();
            let b = problem.algebra();
            Ok::<_, GndError>(b.relations.iter().all(|g| ctx.is_zero(&ctx.eval(g, &jets, n))))
        })();
        match vanish {
            Ok(v) => {
                ok &= v;
                facts.push((format!("I(y′) ≡ 0 mod (x)^{n}"), Value::Bool(v)));
            }
            Err(e) => {
                ok = false;
                facts.push((format!("I(y′) ≡ 0 mod (x)^{n}"), Value::String(e.to_string())));
            }
        }
    }
    if let Some(rho) = rho {
        let target = problem.precision.unwrap_or(1);
        let hyp = lifting_problem(problem, &idx, combination, rho, 1, target).and_then(|p| check_hypothesis(&p));
        match hyp {
            Ok(v) => {
                ok &= v;
                facts.push((format!("(x)^{rho} ⊆ ((f):I)Δ_f(y′) + J + (x)^ν"), Value::Bool(v)));
            }
            Err(e) => {
                ok = false;
                facts.push(("lifting hypothesis".into(), Value::String(e.to_string())));
            }
        }
    }
    let out = match format {
        Format::Machine => {
            let m: serde_json::Map<String, Value> = facts.into_iter().collect();
            format!("{}\n", Value::Object(m))
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in facts {
                match v {
                    Value::String(t) => {
                        let _ = writeln!(s, "{k}: {t}");
                    }
                    other => {
                        let _ = writeln!(s, "{k}: {other}");
                    }
                }
            }
            s
        }
    };
    if ok {
        Outcome {
            code: EXIT_OK,
            stdout: out,
            stderr: String::new(),
        }
    } else {
        Outcome::fail(EXIT_CONDITION, out, "a precondition does not hold")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_error_maps_to_a_nonzero_code() {
        let errors = vec![
            GndError::Parse {
                line: 1,
                col: 1,
                msg: String::new(),
            },
            GndError::InvalidInput(String::new()),
            GndError::DecompositionIncomplete(String::new()),
            GndError::TargetInsidePrime(String::new()),
            GndError::ActiveElementNotFound(String::new()),
            GndError::NotAUnit(String::new()),
            GndError::NotDivisible(String::new()),
            GndError::SeparabilityFailure(String::new()),
            GndError::ConditionStarStarFailed(String::new()),
            GndError::CompletionFailed(String::new()),
            GndError::BoundTooSmall,
            GndError::DivisibilityViolated(String::new()),
            GndError::CertificateFailed(String::new()),
            GndError::VerificationFailed(String::new()),
            GndError::HypothesisViolated(String::new()),
            GndError::PreconditionFailed(String::new()),
            GndError::NoContraction(String::new()),
        ];
        for e in &errors {
            assert!([EXIT_BOUND, EXIT_CONDITION, EXIT_USAGE, EXIT_INTERNAL].contains(&exit_code(e)));
        }
        assert_eq!(exit_code(&GndError::BoundTooSmall), 2);
    }

    #[test]
    fn usage_errors_exit_four() {
        let o = run_command(["gnd", "desing"]);
        assert_eq!(o.code, EXIT_USAGE);
        let o = run_command(["gnd", "frobnicate", "x.gnd"]);
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let o = run_command(["gnd", "--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("desing"));
    }

    #[test]
    fn missing_file_is_a_usage_error() {
        let o = run_command(["gnd", "hba", "/nonexistent/problem.gnd"]);
        assert_eq!(o.code, EXIT_USAGE);
    }
}
