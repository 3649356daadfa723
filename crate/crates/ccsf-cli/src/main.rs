//! `ccsf`: command-line frontend. Reports go to stdout (JSON with `--json`,
//! text otherwise), diagnostics to stderr. Exit status: 0 positive verdict,
//! 1 negative verdict, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use ccsf::eqlogic::{bounded_derivable, sound_axioms, table, AxiomSystem, Limits, SearchOutcome};
use ccsf::open::{aux_step, trt_all};
use ccsf::operators::{dispatch, enumerate_admissible, enumeration_line, Case, Family};
use ccsf::semantics::primes::prime_decompose;
use ccsf::semantics::sound::holds_under;
use ccsf::semantics::{bisim, sound_bounded, SoundVerdict, SyncTreeEnumerator};
use ccsf::witness::{verify_one, witness_terms, Origin};
use ccsf::{sos, Equation, Error, RuleSet, Substitution, Term};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ccsf", version, about = "Workbench for CCS extended with a binary de Simone operator f")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Rule set for f: a JSON file, or a family name (labat, lara, larba-sync, larba-nosync, ltau).
    #[arg(long, global = true, value_name = "FILE")]
    rules: Option<String>,
    /// Largest family index or sample size, depending on the command.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Enumerator depth bound.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Enumerator width bound (summands per node).
    #[arg(long, global = true)]
    width: Option<usize>,
    /// Proof search: largest term size visited.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Proof search: longest rewrite chain.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OriginArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term or an equation and print its canonical form.
    Parse { input: String },
    /// Transition system of a closed term.
    Lts { term: String },
    /// Decide bisimilarity of two closed terms.
    Bisim { p: String, q: String },
    /// Bounded soundness of an equation over synchronisation trees.
    Sound {
        equation: String,
        /// Check this many random substitutions (seeded) instead of all.
        #[arg(long)]
        sample: Option<usize>,
        /// Stop after this many substitutions.
        #[arg(long)]
        limit: Option<u128>,
    },
    /// Bounded soundness of every axiom in a system. Without FILE, uses the
    /// shipped groups stated for the rule set.
    Axioms { file: Option<String> },
    /// List all admissible rule sets with their classification.
    Enumerate,
    /// Distributivity class and witness family of a rule set.
    Classify,
    /// Build and verify the witness family e_0 .. e_n.
    Witness {
        /// `auto` dispatches on the rule set; otherwise a family name.
        #[arg(long, default_value = "auto")]
        case: String,
        #[arg(long, value_enum, default_value = "0")]
        origin: OriginArg,
        /// Print the equations in the term grammar.
        #[arg(long)]
        emit_terms: bool,
    },
    /// Bounded proof search for an equation from an axiom system.
    Prove {
        /// Axiom file or shipped group name.
        #[arg(long, default_value = "a1-a4.axioms")]
        axioms: String,
        /// Saturate the system first.
        #[arg(long)]
        saturate: bool,
        equation: String,
    },
    /// Prime decomposition of a closed term.
    Decompose { term: String },
    /// Auxiliary transitions of an open term.
    OpenStep { term: String },
    /// Modes and actions for which a variable triggers a term.
    Trt { var: String, term: String },
}

/// Failure modes other than a negative verdict.
enum Fail {
    Usage(String),
    /// `file` names the input when it did not come from the command line.
    Input { source: String, err: Error, file: Option<String> },
}

impl From<Error> for Fail {
    fn from(err: Error) -> Fail {
        Fail::Input { source: String::new(), err, file: None }
    }
}

type Outcome = Result<(bool, Value, String), Fail>;

#[derive(Serialize)]
struct Report<'a> {
    command: &'a [String],
    verdict: &'a str,
    result: &'a Value,
    timing_ms: u128,
}

fn parse_in(src: &str) -> Result<Term, Fail> {
    ccsf::parse_term(src).map_err(|err| Fail::Input { source: src.into(), err, file: None })
}

fn equation_in(src: &str) -> Result<Equation, Fail> {
    Equation::parse(src).map_err(|err| Fail::Input { source: src.into(), err, file: None })
}

fn closed_in(src: &str) -> Result<Term, Fail> {
    let t = parse_in(src)?;
    if !t.is_closed() {
        return Err(Fail::Input { source: src.into(), err: Error::OpenTerm(t.to_string()), file: None });
    }
    Ok(t)
}

fn load_rules(opts: &Opts) -> Result<RuleSet, Fail> {
    let spec = opts.rules.as_deref().ok_or_else(|| Fail::Usage("--rules is required".into()))?;
    if !Path::new(spec).exists() {
        if let Some(f) = Family::from_name(spec) {
            return Ok(ccsf::operators::representative(f));
        }
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Fail::Usage(format!("{spec}: {e}")))?;
    let rs = RuleSet::from_json(&text).map_err(|err| Fail::Input { source: text.clone(), err, file: Some(spec.into()) })?;
    if let Err(v) = rs.validate() {
        let why: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        eprintln!("warning: {spec} is not admissible: {}", why.join("; "));
    }
    Ok(rs)
}

fn load_axioms(spec: &str) -> Result<AxiomSystem, Fail> {
    if Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec).map_err(|e| Fail::Usage(format!("{spec}: {e}")))?;
        let name = PathBuf::from(spec).file_name().map_or(spec.to_string(), |n| n.to_string_lossy().into_owned());
        return AxiomSystem::parse(&name, &text).map_err(|err| Fail::Input { source: text.clone(), err, file: Some(spec.into()) });
    }
    if spec == "common" {
        return Ok(table::common());
    }
    let shipped = table::file(spec).or_else(|| table::file(&format!("{spec}.axioms")));
    match shipped {
        Some(text) => Ok(AxiomSystem::parse(spec, text)?),
        None => Err(Fail::Usage(format!("{spec}: no such file or shipped axiom group"))),
    }
}

fn enumerator(opts: &Opts, depth: usize, width: usize) -> SyncTreeEnumerator {
    SyncTreeEnumerator::new(opts.depth.unwrap_or(depth), opts.width.unwrap_or(width))
}

fn cmd_parse(input: &str) -> Outcome {
    if input.contains('=') {
        let eq = equation_in(input)?;
        let text = eq.to_string();
        let vars: Vec<String> = eq.vars().iter().map(|v| v.to_string()).collect();
        let body = json!({"equation": text, "vars": vars, "size": [eq.lhs.size(), eq.rhs.size()]});
        return Ok((true, body, text));
    }
    let t = parse_in(input)?;
    let canon = t.canon();
    let vars: Vec<String> = t.vars().iter().map(|v| v.to_string()).collect();
    let body = json!({"term": t.to_string(), "canonical": canon.to_string(), "size": t.size(), "vars": vars});
    Ok((true, body, canon.to_string()))
}

fn cmd_lts(opts: &Opts, src: &str) -> Outcome {
    let rs = load_rules(opts)?;
    let t = closed_in(src)?;
    let lts = sos::build_lts(&rs, &t)?;
    let depths = lts.depths();
    let mut text = String::new();
    for (s, a, u) in lts.transitions() {
        text.push_str(&format!("{} --{a}--> {}\n", lts.states[s], lts.states[u]));
    }
    text.push_str(&format!("{} states, {} transitions, depth {}", lts.states.len(), lts.num_transitions(), depths[lts.root]));
    let transitions: Vec<Value> = lts.transitions().map(|(s, a, u)| json!([s, a, u])).collect();
    let body = json!({
        "states": lts.states,
        "transitions": transitions,
        "root": lts.root,
        "depth": depths[lts.root],
    });
    Ok((true, body, text))
}

fn cmd_bisim(opts: &Opts, p: &str, q: &str) -> Outcome {
    let rs = load_rules(opts)?;
    let (p, q) = (closed_in(p)?, closed_in(q)?);
    let r = bisim(&rs, &p, &q)?;
    let text = match &r.witness {
        None => format!("{p} ~ {q}"),
        Some(h) => format!("{p} !~ {q}\ndistinguishing formula (holds for the first): {h}"),
    };
    Ok((r.equivalent, serde_json::to_value(&r).expect("serialisable"), text))
}

fn substitution_json(s: &Substitution) -> Value {
    s.iter().map(|(x, t)| (x.to_string(), Value::String(t.to_string()))).collect::<serde_json::Map<_, _>>().into()
}

fn cmd_sound(opts: &Opts, src: &str, sample: Option<usize>, limit: Option<u128>) -> Outcome {
    let rs = load_rules(opts)?;
    let eq = equation_in(src)?;
    let enm = enumerator(opts, 2, 2);
    let Some(k) = sample else {
        let v = sound_bounded(&rs, &eq, &enm, limit.unwrap_or(u128::MAX))?;
        let text = match &v {
            SoundVerdict::Refuted { substitution, lhs, rhs } => {
                format!("refuted by {substitution}: {lhs} !~ {rhs}")
            }
            SoundVerdict::NoCounterexample { checked, exhaustive } => format!(
                "no counterexample in {checked} substitutions{}",
                if *exhaustive { " (exhaustive)" } else { "" }
            ),
        };
        return Ok((!v.is_refuted(), serde_json::to_value(&v).expect("serialisable"), text));
    };
    let count = enm.count().ok_or_else(|| Fail::Usage("enumerator space too large to sample".into()))?;
    let vars: Vec<_> = eq.vars().into_iter().collect();
    // One seeded stream per draw keeps results independent of --jobs.
    let bad = (0..k)
        .into_par_iter()
        .map(|i| -> ccsf::Result<Option<Substitution>> {
            let mut rng = StdRng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut s = Substitution::new();
            for x in &vars {
                s.insert_arc(x.clone(), enm.tree(rng.gen_range(0..count))?);
            }
            Ok((!holds_under(&rs, &eq, &s)?).then_some(s))
        })
        .collect::<ccsf::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let body = json!({
        "sampled": k,
        "space": count.to_string(),
        "counterexample": bad.as_ref().map(substitution_json),
    });
    let text = match &bad {
        Some(s) => format!("refuted by {s}"),
        None => format!("no counterexample in {k} sampled substitutions"),
    };
    Ok((bad.is_none(), body, text))
}

fn default_axioms(rs: &RuleSet) -> AxiomSystem {
    let mut e = table::common();
    for h in table::HEADINGS {
        for alpha in ccsf::Action::VISIBLE {
            if h.rule_sets(alpha).contains(rs) {
                e = e.union(&h.axioms(alpha));
            }
        }
    }
    e
}

fn cmd_axioms(opts: &Opts, file: Option<&str>) -> Outcome {
    let rs = load_rules(opts)?;
    let e = match file {
        Some(f) => load_axioms(f)?,
        None => default_axioms(&rs),
    };
    let enm = enumerator(opts, 3, 1);
    let verdicts = sound_axioms(&rs, &e, &enm)?;
    let ok = verdicts.iter().all(|v| !v.verdict.is_refuted());
    let text = verdicts
        .iter()
        .map(|v| {
            let mark = if v.verdict.is_refuted() { "REFUTED" } else { "ok" };
            format!("{mark:8} {}: {}", v.name, v.equation)
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok((ok, json!({"system": e.to_text(), "axioms": verdicts}), text))
}

fn cmd_enumerate() -> Outcome {
    let all = enumerate_admissible();
    let lines: Vec<String> = all.par_iter().map(enumeration_line).collect();
    let body: Vec<Value> = lines.iter().map(|l| serde_json::from_str(l).expect("valid line")).collect();
    Ok((true, json!({"count": all.len(), "rule_sets": body}), lines.join("\n")))
}

fn cmd_classify(opts: &Opts) -> Outcome {
    let rs = load_rules(opts)?;
    let class = dispatch(&rs);
    let violations: Vec<String> = rs.violations().iter().map(|v| v.to_string()).collect();
    let ok = violations.is_empty() && class.case != Case::Unassigned;
    let mut text = format!("{rs}\ntag: {:?}\ncase: {}", class.tag, class.case);
    if let Some(a) = class.alpha {
        text.push_str(&format!("\nalpha: {a}"));
    }
    for v in &violations {
        text.push_str(&format!("\nnot admissible: {v}"));
    }
    let body = json!({
        "rules": rs,
        "admissible": violations.is_empty(),
        "violations": violations,
        "tag": class.tag,
        "case": class.case.to_string(),
        "alpha": class.alpha,
        "diagnostic": class.diagnostic,
    });
    Ok((ok, body, text))
}

fn cmd_witness(opts: &Opts, case: &str, origin: OriginArg, emit: bool) -> Outcome {
    let rs = load_rules(opts)?;
    let mut class = dispatch(&rs);
    if case != "auto" {
        let fam = Family::from_name(case).ok_or_else(|| Fail::Usage(format!("unknown case {case}")))?;
        class.case = Case::Canonical(fam);
        class.alpha = class.alpha.or(Some(ccsf::Action::A));
    }
    let origin = match origin {
        OriginArg::Zero => Origin::Zero,
        OriginArg::One => Origin::One,
    };
    let n_max = opts.n.unwrap_or(5);
    let first = match origin {
        Origin::Zero => 0,
        Origin::One => 1,
    };
    let family = witness_terms(&class, n_max, origin)?;
    let verdicts = (first..=n_max)
        .into_par_iter()
        .map(|n| verify_one(&rs, &class, n, origin))
        .collect::<ccsf::Result<Vec<_>>>()?;
    let ok = verdicts.iter().all(|v| v.ok());
    let mut text = format!("case {} with alpha = {}", family.case, family.alpha);
    for v in &verdicts {
        text.push_str(&format!(
            "\nn={}: {} (bisimilar {}, witness lhs {} rhs {}, depth {}/{}, {} {})",
            v.n,
            if v.ok() { "ok" } else { "FAILED" },
            v.equivalent,
            v.lhs_has_witness,
            v.rhs_has_witness,
            v.depth_lhs,
            v.depth_rhs,
            v.lemma.name,
            v.lemma.holds,
        ));
        if emit {
            text.push_str(&format!("\n  {}", v.equation));
        }
    }
    let body = json!({
        "case": family.case,
        "family": family.family.name(),
        "symmetric": family.symmetric,
        "alpha": family.alpha,
        "origin": origin,
        "results": verdicts,
    });
    Ok((ok, body, text))
}

fn cmd_prove(opts: &Opts, axioms: &str, saturate: bool, src: &str) -> Outcome {
    let mut e = load_axioms(axioms)?;
    if saturate {
        e = e.cl()?;
    }
    let goal = equation_in(src)?;
    let d = Limits::default();
    let limits = Limits {
        max_size: opts.max_size.unwrap_or(d.max_size),
        max_depth: opts.max_depth.unwrap_or(d.max_depth),
        max_terms: d.max_terms,
    };
    let out = bounded_derivable(&e, &goal, limits)?;
    let text = match &out {
        SearchOutcome::Derivable { proof, steps } => format!("derivable in {steps} steps\n{proof}"),
        SearchOutcome::Exhausted { explored, size_cap, .. } => {
            format!("not derivable within size {size_cap}, depth {}: {explored} terms explored", limits.max_depth)
        }
        SearchOutcome::ResourceCap { explored } => format!("undecided: budget exhausted after {explored} terms"),
    };
    Ok((out.is_derivable(), serde_json::to_value(&out).expect("serialisable"), text))
}

fn cmd_decompose(opts: &Opts, src: &str) -> Outcome {
    let rs = load_rules(opts)?;
    let t = closed_in(src)?;
    let depth = sos::depth(&rs, &t)?;
    let parts = prime_decompose(&rs, &t, &SyncTreeEnumerator::new(depth.max(1), usize::MAX))?;
    let text = if parts.is_empty() {
        "0 (no prime factors)".to_string()
    } else {
        parts.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(" || ")
    };
    Ok((true, json!({"term": t, "primes": parts}), text))
}

fn cmd_open_step(opts: &Opts, src: &str) -> Outcome {
    let rs = load_rules(opts)?;
    let t = parse_in(src)?;
    let steps = aux_step(&rs, &t).map_err(|err| Fail::Input { source: src.into(), err, file: None })?;
    let text = steps.iter().map(|(l, c)| format!("--{l}--> {c}")).collect::<Vec<_>>().join("\n");
    let body: Vec<Value> = steps
        .iter()
        .map(|(l, c)| json!({"var": &*l.var, "mode": l.mode.name(), "action": l.action, "target": c.to_string()}))
        .collect();
    Ok((true, json!({"transitions": body}), text))
}

fn cmd_trt(opts: &Opts, x: &str, src: &str) -> Outcome {
    let rs = load_rules(opts)?;
    let t = parse_in(src)?;
    if t.has_par() {
        return Err(Fail::Input { source: src.into(), err: Error::ParNotAllowed(t.to_string()), file: None });
    }
    let hits = trt_all(&rs, x, &t);
    let text = if hits.is_empty() {
        format!("{x} triggers no move of {t}")
    } else {
        hits.iter().map(|(m, a)| format!("{x} |>^{} {a} {t}", m.name())).collect::<Vec<_>>().join("\n")
    };
    let body: Vec<Value> = hits.iter().map(|(m, a)| json!({"mode": m.name(), "action": a})).collect();
    Ok((!hits.is_empty(), json!({"triggers": body}), text))
}

fn run(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Parse { input } => cmd_parse(input),
        Cmd::Lts { term } => cmd_lts(o, term),
        Cmd::Bisim { p, q } => cmd_bisim(o, p, q),
        Cmd::Sound { equation, sample, limit } => cmd_sound(o, equation, *sample, *limit),
        Cmd::Axioms { file } => cmd_axioms(o, file.as_deref()),
        Cmd::Enumerate => cmd_enumerate(),
        Cmd::Classify => cmd_classify(o),
        Cmd::Witness { case, origin, emit_terms } => cmd_witness(o, case, *origin, *emit_terms),
        Cmd::Prove { axioms, saturate, equation } => cmd_prove(o, axioms, *saturate, equation),
        Cmd::Decompose { term } => cmd_decompose(o, term),
        Cmd::OpenStep { term } => cmd_open_step(o, term),
        Cmd::Trt { var, term } => cmd_trt(o, var, term),
    }
}

/// Prints the message and, for parse errors in a one-line source, the
/// offending line with a caret under the column.
fn report_input_error(source: &str, err: &Error, file: Option<&str>) {
    match file {
        Some(f) => eprintln!("error: {f}: {err}"),
        None => eprintln!("error: {err}"),
    }
    if let Error::Parse { line, column, .. } = err {
        if let Some(text) = source.lines().nth(line.saturating_sub(1)) {
            eprintln!("  {text}");
            eprintln!("  {}^", " ".repeat(column.saturating_sub(1)));
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: --jobs ignored: {e}");
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok((ok, body, text)) => {
            let verdict = if ok { "positive" } else { "negative" };
            if cli.opts.json {
                let report = Report { command: &argv[1..], verdict, result: &body, timing_ms: start.elapsed().as_millis() };
                println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
            } else if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Input { source, err, file }) => {
            report_input_error(&source, &err, file.as_deref());
            ExitCode::from(2)
        }
    }
}
