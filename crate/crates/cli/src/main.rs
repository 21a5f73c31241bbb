//! `diffset`: verification, spectra, feasibility ledgers, sweeps and
//! enumeration from the command line.
//!
//! Exit status: 0 when the command ran and its verdict is positive, 1 when
//! it ran and the verdict is negative, 2 for usage errors and bad input.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffset::design::{
    format_instance, parse_instance, spectrum, special_case_audit, three_value_profile, verify_by_characters,
    verify_difference_set, GroupRingElement, ProfileParams, SpectrumReport,
};
use diffset::feasibility::{
    check_general, check_odd_prime, check_quad_case, check_special_hadamard, ConditionReport, GeneralParams,
    OddPrimeParams, QuadCase, QuadCaseParams, SpecialHypothesis,
};
use diffset::group::{AbelianGroup, GroupElement, Presentation};
use diffset::number::QuadInt;
use diffset::search::{
    csv_header, csv_record, enumerate_difference_sets, find_three_valued, sweep_with, Checkpoint, EnumSpec,
    SweepCase, SweepSpec,
};
use diffset::Error;
use num_bigint::BigInt;
use output::{json_line, line, Csv, Format};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "diffset", version, about = "Difference sets with few character values")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// File of key=value lines supplying defaults for any long flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check D D^(-1) = n + λG directly and through characters.
    Verify(Instance),
    /// Character-value spectrum, with the three-valued profile when |X| = 3.
    Spectrum(Instance),
    /// Feasibility ledger for a parameter set.
    Check(CheckArgs),
    /// Parameter sweep, streamed as it runs.
    Sweep(SweepArgs),
    /// All difference sets with given parameters in a small group.
    Enumerate(EnumArgs),
    /// Structural audit of a three-valued Hadamard instance.
    Audit(Instance),
}

#[derive(Args, Debug)]
struct Instance {
    /// Cyclic factors as written, e.g. `4,4` or `2,4,3`.
    #[arg(long, required_unless_present = "instance")]
    group: Option<String>,
    /// One element, coordinates in the written factors (repeatable).
    #[arg(long = "set", value_name = "COORDS")]
    set: Vec<String>,
    /// Whole instance as `group=<factors>; set=<coords>;<coords>;...`.
    #[arg(long, conflicts_with_all = ["group", "set"])]
    instance: Option<String>,
}

impl Instance {
    fn load(&self) -> diffset::Result<GroupRingElement> {
        if let Some(line) = &self.instance {
            return parse_instance(line);
        }
        let pres = Presentation::parse(self.group.as_deref().unwrap_or("1"))?;
        let elements = self
            .set
            .iter()
            .map(|s| pres.map(&GroupElement::parse(s)?))
            .collect::<diffset::Result<Vec<_>>>()?;
        let mut sorted = elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != elements.len() {
            return Err(Error::MalformedParameters("repeated element in --set".into()));
        }
        GroupRingElement::from_subset(pres.group(), &elements)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    General,
    OddPrime,
    #[value(name = "d-2")]
    MinusTwo,
    #[value(name = "d-1")]
    MinusOne,
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HypothesisArg {
    Hadamard,
    PGroup,
    MSubgroup,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    v: Option<BigInt>,
    #[arg(long)]
    k: Option<BigInt>,
    #[arg(long)]
    n: Option<BigInt>,
    /// Quadratic integer such as `-1+2*sqrt(-7)`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    x: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    alpha: Option<u64>,
    #[arg(long)]
    eta: Option<u64>,
    #[arg(long)]
    gamma: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    u1: Option<i64>,
    #[arg(long)]
    u2: Option<i64>,
    /// Group for the group-dependent refinements.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_enum, default_value = "hadamard")]
    hypothesis: HypothesisArg,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_parser = ["odd-prime", "d-2", "d-1"])]
    case: Option<String>,
    /// Comma-separated primes (odd-prime case).
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    x_max: Option<u32>,
    #[arg(long)]
    s_max: Option<u32>,
    #[arg(long)]
    alpha_max: Option<u64>,
    #[arg(long)]
    eta_max: Option<u64>,
    #[arg(long)]
    gamma_max: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    u1_min: Option<i64>,
    #[arg(long)]
    u2_max: Option<i64>,
    /// Emit tuples with at most this many failing conditions.
    #[arg(long, default_value_t = 0)]
    threshold: usize,
    #[arg(long)]
    chunk: Option<u64>,
    /// Allow ranges beyond the desk-scale defaults; starts from the large ranges.
    #[arg(long)]
    long_run: bool,
    /// Resume from and record progress in this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    lambda: usize,
    #[arg(long)]
    up_to_translation: bool,
    /// Only sets with three nonprincipal character values.
    #[arg(long)]
    three_valued: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let mut args: Vec<String> = std::env::args().collect();
    if let Some(path) = config::find(&args) {
        match config::merge(args, std::path::Path::new(&path)) {
            Ok(a) => args = a,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(i) => verify(cli.format, i),
        Command::Spectrum(i) => spectrum_cmd(cli.format, i),
        Command::Check(c) => check(cli.format, c),
        Command::Sweep(s) => sweep_cmd(cli.format, cli.jobs, s),
        Command::Enumerate(e) => enumerate(cli.format, e),
        Command::Audit(i) => audit(cli.format, i),
    }
}

fn big_opt(x: &Option<BigInt>) -> String {
    x.as_ref().map_or_else(|| "-".into(), BigInt::to_string)
}

fn verify(format: Format, inst: &Instance) -> Outcome {
    let d = inst.load()?;
    let direct = verify_difference_set(&d);
    let chars = verify_by_characters(&d);
    let agree = direct.is_ds == chars;
    match format {
        Format::Json => json_line(&json!({
            "instance": format_instance(&d),
            "direct": direct,
            "by_characters": chars,
            "agree": agree,
        })),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["instance", "v", "k", "lambda", "n", "is_ds", "by_characters", "agree"]);
            w.row([
                format_instance(&d),
                direct.v.to_string(),
                direct.k.to_string(),
                big_opt(&direct.lambda),
                big_opt(&direct.n),
                direct.is_ds.to_string(),
                chars.to_string(),
                agree.to_string(),
            ]);
        }
        Format::Text => {
            line(format_instance(&d));
            if direct.is_ds {
                line(format!(
                    "({},{},{}) difference set, n = {}",
                    direct.v,
                    direct.k,
                    big_opt(&direct.lambda),
                    big_opt(&direct.n)
                ));
            } else {
                line("not a difference set");
            }
            line(format!("direct: {}, characters: {}, agree: {agree}", direct.is_ds, chars));
        }
    }
    if !agree {
        return Err(Error::TheoremViolation("the two verification methods disagree".into()).into());
    }
    Ok(direct.is_ds)
}

fn value_labels(sp: &SpectrumReport) -> Vec<String> {
    sp.values
        .iter()
        .map(|v| match &v.recognized {
            diffset::design::ValueKind::Rational { value } => value.to_string(),
            diffset::design::ValueKind::Quadratic { value } => value.to_string(),
            diffset::design::ValueKind::Other => v.value.to_string(),
        })
        .collect()
}

fn spectrum_cmd(format: Format, inst: &Instance) -> Outcome {
    let d = inst.load()?;
    let sp = spectrum(&d)?;
    let profile = match (&sp.three_valued, d.is_indicator()) {
        (Some(t), true) => {
            let n = t.a.norm().to_integer();
            let d1 = if sp.d1 == BigInt::from(1) { 1 } else { 0 };
            Some(three_value_profile(&ProfileParams::new(d.group().order(), sp.k.clone(), n, t.a.clone(), d1)))
        }
        _ => None,
    };
    match format {
        Format::Json => {
            let (p, err) = match &profile {
                Some(Ok(p)) => (serde_json::to_value(p).expect("serializes"), serde_json::Value::Null),
                Some(Err(e)) => (serde_json::Value::Null, json!(e.to_string())),
                None => (serde_json::Value::Null, serde_json::Value::Null),
            };
            json_line(&json!({ "spectrum": sp, "profile": p, "profile_error": err }));
        }
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["value", "recognized", "count"]);
            for (v, label) in sp.values.iter().zip(value_labels(&sp)) {
                w.row([v.value.to_string(), label, v.count.to_string()]);
            }
        }
        Format::Text => {
            line(format!("{} values over {} nonprincipal characters", sp.size(), d.group().order() - 1));
            for (v, label) in sp.values.iter().zip(value_labels(&sp)) {
                line(format!("  {label}  x{}", v.count));
            }
            if let Some(t) = &sp.three_valued {
                line(format!("three-valued: a = {}, c = {}, d = {}, [Z_m^*:T] = {}", t.a, t.c, t.d, t.t_index));
            }
            match &profile {
                Some(Ok(p)) => line(format!(
                    "profile: Δ = {}, R = {}, |U_a| = |U_b| = {}, |U_c| = {}, |D∩D^(-1)| = {}",
                    p.delta, p.r, p.u_a, p.u_c, p.intersection
                )),
                Some(Err(e)) => line(format!("profile: {e}")),
                None => {}
            }
        }
    }
    Ok(sp.three_valued.is_some())
}

fn need<T: Clone>(x: &Option<T>, flag: &str) -> Result<T, Failure> {
    x.clone().ok_or_else(|| Failure::Usage(format!("--{flag} is required for this case")))
}

fn parse_group(g: &Option<String>) -> Result<Option<AbelianGroup>, Failure> {
    g.as_deref().map(AbelianGroup::parse).transpose().map_err(Failure::Lib)
}

fn check(format: Format, c: &CheckArgs) -> Outcome {
    let report = match c.case {
        CaseArg::General => {
            let a = QuadInt::parse(&need(&c.a, "a")?)?;
            let params = GeneralParams { p: need(&c.p, "p")?, v: need(&c.v, "v")?, k: need(&c.k, "k")?, n: need(&c.n, "n")?, a };
            check_general(&params, parse_group(&c.group)?.as_ref())?
        }
        CaseArg::OddPrime => check_odd_prime(&OddPrimeParams {
            p: need(&c.p, "p")?,
            x: need(&c.x, "x")?,
            s: need(&c.s, "s")?,
            alpha: need(&c.alpha, "alpha")?,
            eta: need(&c.eta, "eta")?,
            gamma: need(&c.gamma, "gamma")?,
        })?,
        CaseArg::MinusTwo | CaseArg::MinusOne => {
            let case = if c.case == CaseArg::MinusTwo { QuadCase::MinusTwo } else { QuadCase::MinusOne };
            let params = QuadCaseParams { case, u1: need(&c.u1, "u1")?, u2: need(&c.u2, "u2")?, gamma: need(&c.gamma, "gamma")? };
            check_quad_case(&params, parse_group(&c.group)?.as_ref())?
        }
        CaseArg::Special => return special(format, c),
    };
    print_report(format, &report);
    Ok(report.feasible)
}

fn special(format: Format, c: &CheckArgs) -> Outcome {
    let hypothesis = match c.hypothesis {
        HypothesisArg::Hadamard => SpecialHypothesis::Hadamard,
        HypothesisArg::PGroup => SpecialHypothesis::PGroup,
        HypothesisArg::MSubgroup => SpecialHypothesis::MSubgroup,
    };
    let a = QuadInt::parse(&need(&c.a, "a")?)?;
    let verdict = check_special_hadamard(&need(&c.v, "v")?, &need(&c.k, "k")?, &a, hypothesis)?;
    match format {
        Format::Json => json_line(&verdict),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["step", "deduction"]);
            for (i, d) in verdict.deductions.iter().enumerate() {
                w.row([(i + 1).to_string(), d.clone()]);
            }
        }
        Format::Text => {
            for d in &verdict.deductions {
                line(format!("- {d}"));
            }
            line(if verdict.feasible { "feasible" } else { "infeasible" });
        }
    }
    Ok(verdict.feasible)
}

fn print_report(format: Format, r: &ConditionReport) {
    match format {
        Format::Json => json_line(r),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["d1", "id", "verdict", "statement", "witness"]);
            for l in &r.d1_ledgers {
                for i in &l.items {
                    w.row([l.d1.to_string(), i.id.into(), i.verdict.as_str().into(), i.statement.into(), i.witness.clone()]);
                }
            }
        }
        Format::Text => {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            line(format!("case {}: {}", r.case, params.join(" ")));
            for l in &r.d1_ledgers {
                let fails = l.failing_ids();
                if fails.is_empty() {
                    line(format!("d1={}: all {} conditions hold", l.d1, l.items.len()));
                } else {
                    line(format!("d1={}: {} failing: {}", l.d1, fails.len(), fails.join(", ")));
                    for i in l.items.iter().filter(|i| i.verdict == diffset::feasibility::Verdict::Fail) {
                        line(format!("  {} {} [{}]", i.id, i.statement, i.witness));
                    }
                }
            }
            for n in &r.notes {
                line(format!("note: {n}"));
            }
            line(if r.feasible { "feasible" } else { "infeasible" });
        }
    }
}

/// Starts from the default ranges and applies the flags. Without
/// `--long-run` no bound may exceed the desk-scale defaults.
fn build_spec(jobs: Option<usize>, s: &SweepArgs) -> Result<SweepSpec, Failure> {
    let case = SweepCase::parse(s.case.as_deref().unwrap_or("odd-prime"))?;
    let desk = SweepSpec::reduced(case);
    let mut spec = if s.long_run { SweepSpec::full(case) } else { desk.clone() };
    if let Some(p) = &s.primes {
        spec.primes = p.clone();
    }
    macro_rules! set {
        ($f:ident) => {
            if let Some(v) = s.$f {
                spec.$f = v;
            }
        };
    }
    set!(x_max);
    set!(s_max);
    set!(alpha_max);
    set!(eta_max);
    set!(u1_min);
    set!(u2_max);
    set!(chunk);
    if s.gamma_max.is_some() {
        spec.gamma_max = s.gamma_max;
    }
    spec.threshold = s.threshold;
    spec.jobs = jobs;
    if !s.long_run {
        let over = match case {
            SweepCase::OddPrime => {
                spec.primes.iter().any(|p| !desk.primes.contains(p))
                    || spec.x_max > desk.x_max
                    || spec.s_max > desk.s_max
                    || spec.alpha_max > desk.alpha_max
                    || spec.eta_max > desk.eta_max
            }
            _ => spec.u1_min < desk.u1_min || spec.u2_max > desk.u2_max || spec.gamma_max > desk.gamma_max,
        };
        if over {
            return Err(Failure::Usage("ranges beyond the desk-scale defaults need --long-run".into()));
        }
    }
    spec.validate()?;
    Ok(spec)
}

fn sweep_cmd(format: Format, jobs: Option<usize>, s: &SweepArgs) -> Outcome {
    let mut spec = build_spec(jobs, s)?;
    let mut resume = None;
    if let Some(path) = &s.checkpoint {
        if path.exists() {
            let cp = Checkpoint::load(path)?;
            let mut saved = cp.spec.clone();
            saved.jobs = spec.jobs;
            if saved != spec {
                eprintln!("note: resuming with the spec stored in {}", path.display());
            }
            spec = saved;
            resume = cp.cursor;
        }
    }
    let case = spec.case;
    let mut csv = (format == Format::Csv).then(Csv::new);
    if let Some(w) = csv.as_mut() {
        w.row(csv_header(case));
    }
    let summary = sweep_with(&spec, resume.as_deref(), |hits, cursor| {
        for h in hits {
            match format {
                Format::Json => json_line(&h),
                Format::Csv => csv.as_mut().expect("csv writer").row(csv_record(case, h)),
                Format::Text => {
                    let fails: Vec<String> = h
                        .report
                        .d1_ledgers
                        .iter()
                        .map(|l| format!("d1={}:[{}]", l.d1, l.failing_ids().join(",")))
                        .collect();
                    let key: Vec<String> =
                        case.key_names().iter().zip(&h.key).map(|(n, v)| format!("{n}={v}")).collect();
                    line(format!("{} k={} v={} {}", key.join(" "), h.report.param("k").unwrap_or("?"), h.report.param("v").unwrap_or("?"), fails.join(" ")));
                }
            }
        }
        if let Some(path) = &s.checkpoint {
            Checkpoint { spec: spec.clone(), cursor: Some(cursor.to_vec()) }.save(path)?;
        }
        Ok(())
    })?;
    for n in &summary.notes {
        eprintln!("note: {n}");
    }
    eprintln!(
        "swept {} of {} units, checked {} tuples, emitted {}",
        summary.units_run, summary.units_total, summary.checked, summary.emitted
    );
    Ok(summary.emitted > 0)
}

fn elements(d: &GroupRingElement) -> Vec<String> {
    d.support_elements().iter().map(ToString::to_string).collect()
}

fn enumerate(format: Format, e: &EnumArgs) -> Outcome {
    let group = AbelianGroup::parse(&e.group)?;
    let spec = EnumSpec::new(group, e.k, e.lambda).up_to_translation(e.up_to_translation).three_valued(e.three_valued);
    let mut csv = (format == Format::Csv).then(Csv::new);
    if !e.three_valued {
        let all = enumerate_difference_sets(&spec)?;
        if let Some(w) = csv.as_mut() {
            w.row(["index", "set"]);
        }
        for (i, d) in all.iter().enumerate() {
            match format {
                Format::Json => json_line(&json!({ "set": elements(d) })),
                Format::Csv => csv.as_mut().expect("csv writer").row([i.to_string(), elements(d).join(";")]),
                Format::Text => line(format_instance(d)),
            }
        }
        eprintln!("{} difference sets", all.len());
        return Ok(!all.is_empty());
    }
    let found = find_three_valued(&spec)?;
    if let Some(w) = csv.as_mut() {
        w.row(["index", "set", "values", "normalized_set", "normalized_values"]);
    }
    for (i, t) in found.iter().enumerate() {
        let vals = value_labels(&t.spectrum);
        match format {
            Format::Json => {
                let norm = t.normalized.as_ref().map(|(d, sp)| json!({ "set": elements(d), "values": value_labels(sp) }));
                json_line(&json!({ "set": elements(&t.set), "values": vals, "normalized": norm }));
            }
            Format::Csv => {
                let (ns, nv) = t
                    .normalized
                    .as_ref()
                    .map_or((String::new(), String::new()), |(d, sp)| (elements(d).join(";"), value_labels(sp).join(" ")));
                csv.as_mut().expect("csv writer").row([i.to_string(), elements(&t.set).join(";"), vals.join(" "), ns, nv]);
            }
            Format::Text => {
                line(format!("{}  X = {{{}}}", format_instance(&t.set), vals.join(", ")));
                if let Some((d, sp)) = &t.normalized {
                    line(format!("  complement {}  X = {{{}}}", format_instance(d), value_labels(sp).join(", ")));
                }
            }
        }
    }
    eprintln!("{} three-valued difference sets", found.len());
    Ok(!found.is_empty())
}

fn audit(format: Format, inst: &Instance) -> Outcome {
    let d = inst.load()?;
    let report = special_case_audit(&d)?;
    match format {
        Format::Json => json_line(&report),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["check", "holds"]);
            for c in &report.checks {
                w.row([c.name.to_string(), c.holds.to_string()]);
            }
        }
        Format::Text => {
            if !report.applicable {
                line(format!("not applicable: {}", report.reason.as_deref().unwrap_or("")));
            }
            for c in &report.checks {
                line(format!("{} {}", if c.holds { "ok  " } else { "FAIL" }, c.name));
            }
        }
    }
    Ok(report.applicable)
}
