mod args;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ffsubsum_core::counts::{count_excluded, CountQuery, CountReport, ExclusionSet, Method};
use ffsubsum_core::oracle::{dp_count_table, oracle_report};
use ffsubsum_core::rscodes::{
    classify_m1, deep_hole_scan, DistanceBounds, M1Verdict, Poly, RsCode, RsError, ScanMode,
    DEFAULT_DISTANCE_LIMIT, FORMULA_MAX_EXCLUDED,
};
use ffsubsum_core::verify::{self, Fault, VerifyConfig};
use ffsubsum_core::{combinatorics::binom, Count, Field};

use args::{Cli, CodeArgs, Command, CountArgs, Format, MethodChoice, NMode, RsCommand, TableArgs, VerifyArgs};
use output::{emit, CountRecord, RsRecord};

enum Failure {
    /// Bad flags or inputs; exit status 2.
    Usage(String),
    /// A check or cross-check failed; exit status 1.
    Invariant(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Count(a) => cmd_count(&cli, a, &mut out),
        Command::Table(a) => cmd_table(&cli, a, &mut out),
        Command::Verify(a) => cmd_verify(&cli, a, &mut out),
        Command::Rs(rs) => cmd_rs(&cli, rs, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn field(cli: &Cli) -> Result<Field, Failure> {
    let p = cli
        .p
        .ok_or_else(|| Failure::Usage("--p is required for this command".into()))?;
    Ok(Field::new(p, cli.e)?)
}

fn exclusion_set(f: &Field, text: &str) -> Result<ExclusionSet, Failure> {
    Ok(ExclusionSet::new(f, &f.parse_element_list(text)?)?)
}

fn formula_report(query: &CountQuery) -> Result<CountReport, Failure> {
    if query.exclusions().c() > FORMULA_MAX_EXCLUDED {
        return Ok(oracle_report(query));
    }
    Ok(count_excluded(query)?)
}

fn cmd_count(cli: &Cli, a: &CountArgs, out: &mut impl Write) -> CmdResult {
    let f = field(cli)?;
    let set = exclusion_set(&f, &a.exclude)?;
    let query = CountQuery::new(set, a.k, f.parse_element(&a.b)?)?;
    let report = match a.method {
        MethodChoice::ClosedForm => formula_report(&query)?,
        MethodChoice::Oracle => oracle_report(&query),
        MethodChoice::Both => {
            let formula = formula_report(&query)?;
            let oracle = oracle_report(&query);
            if formula.n_count != oracle.n_count {
                return Err(Failure::Invariant(format!(
                    "{} gives N = {}, oracle gives N = {}",
                    formula.method.as_str(),
                    formula.n_count,
                    oracle.n_count
                )));
            }
            formula
        }
    };
    let rec = CountRecord::from_report(&report);
    emit(out, cli.format, std::slice::from_ref(&rec), |w| {
        let approx = CountRecord::main_term_float(&report);
        writeln!(w, "field       F_{} (p={}, e={})", rec.q, rec.p, rec.e)?;
        writeln!(w, "exclusions  {{{}}}", rec.exclusions)?;
        writeln!(w, "k, b        {}, {}", rec.k, rec.b)?;
        writeln!(w, "N           {}", rec.n)?;
        writeln!(w, "M = k! N    {}", rec.m)?;
        writeln!(w, "main term   {} ~ {approx:.3}", rec.main_term)?;
        writeln!(w, "q N - C     {}", rec.error)?;
        match (&rec.bound, &rec.bound_mode) {
            (Some(b), Some(m)) => writeln!(w, "q * bound   {b} ({m})")?,
            _ => writeln!(w, "q * bound   n/a")?,
        }
        if a.method == MethodChoice::Both {
            writeln!(w, "method      {} (oracle agrees)", rec.method)
        } else {
            writeln!(w, "method      {}", rec.method)
        }
    })?;
    Ok(())
}

fn cmd_table(cli: &Cli, a: &TableArgs, out: &mut impl Write) -> CmdResult {
    let f = field(cli)?;
    let set = exclusion_set(&f, &a.exclude)?;
    let n = set.n();
    let k_min = a.k_min.unwrap_or(0);
    let k_max = a.k_max.unwrap_or(n).min(n);
    let oracle = (set.c() > FORMULA_MAX_EXCLUDED).then(|| dp_count_table(&set));
    let mut reports = Vec::new();
    let mut sums = Vec::new();
    for k in k_min..=k_max {
        let mut sum = Count::from(0);
        for b in f.elements() {
            let query = CountQuery::new(set.clone(), k, b)?;
            let report = match &oracle {
                Some(t) => CountReport::from_count(query, t.get(k, b).clone(), Method::Oracle),
                None => count_excluded(&query)?,
            };
            sum += &report.n_count;
            reports.push(report);
        }
        let expected = binom::<Count>(n as i64, k);
        sums.push((k, sum.clone() == expected, sum, expected));
    }
    let records: Vec<_> = reports.iter().map(CountRecord::from_report).collect();
    let bad_rows: Vec<u64> = sums.iter().filter(|s| !s.1).map(|s| s.0).collect();
    emit(out, cli.format, &records, |w| {
        writeln!(w, "F_{}  D = F_q \\ {{{}}}  n = {n}", f.q(), f.format_element_list(set.excluded()))?;
        writeln!(w, "{:>4}  {:>14}  {:>24}  {:>16}  {:>14}", "k", "b", "N", "main term", "q N - C")?;
        for (r, rec) in reports.iter().zip(&records) {
            writeln!(
                w,
                "{:>4}  {:>14}  {:>24}  {:>16.3}  {:>14}",
                rec.k,
                rec.b,
                rec.n,
                CountRecord::main_term_float(r),
                rec.error
            )?;
        }
        for (k, ok, sum, expected) in &sums {
            let mark = if *ok { "ok" } else { "MISMATCH" };
            writeln!(w, "# k={k}: sum_b N = {sum}, binom(n,k) = {expected} {mark}")?;
        }
        Ok(())
    })?;
    if !bad_rows.is_empty() {
        return Err(Failure::Invariant(format!("row sums differ from binom(n, k) at k = {bad_rows:?}")));
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: &mut impl Write) -> CmdResult {
    let config = VerifyConfig {
        max_q: a.max_q,
        max_c: a.max_c,
        seed: cli.seed.unwrap_or(verify::CANONICAL_SEED),
        fault: a.inject_fault.then_some(Fault::PerturbCounts),
    };
    let report = verify::run(&config);
    match cli.format {
        Format::Json | Format::Csv => {
            let check = |c: &verify::CheckOutcome| {
                serde_json::json!({
                    "name": c.name,
                    "assertions": c.assertions,
                    "failures": c.failures,
                    "examples": c.examples,
                })
            };
            let value = serde_json::json!({
                "passed": report.passed(),
                "assertions": report.assertions(),
                "checks": report.checks.iter().map(check).collect::<Vec<_>>(),
                "audit": report.audit.iter().map(check).collect::<Vec<_>>(),
            });
            writeln!(out, "{value}")?;
        }
        Format::Table => {
            writeln!(out, "verify: q <= {}, c <= {}, seed {}", config.max_q, config.max_c, config.seed)?;
            for c in &report.checks {
                let mark = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {} ({} assertions, {} failures)", c.name, c.assertions, c.failures)?;
                for e in &c.examples {
                    writeln!(out, "     {e}")?;
                }
            }
            writeln!(out, "audit (informational):")?;
            for c in &report.audit {
                writeln!(out, "  {}: {} of {} cases violate the claim", c.name, c.failures, c.assertions)?;
                if let Some(e) = c.examples.first() {
                    writeln!(out, "     e.g. {e}")?;
                }
            }
            if report.passed() {
                writeln!(out, "all checks passed, {} assertions", report.assertions())?;
            }
        }
    }
    if !report.passed() {
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        return Err(Failure::Invariant(format!("failed checks: {}", failed.join(", "))));
    }
    Ok(())
}

fn build_code(f: &Field, a: &CodeArgs) -> Result<RsCode, RsError> {
    match (&a.points, a.n_mode) {
        (Some(pts), _) => RsCode::new(f, &f.parse_element_list(pts)?, a.k),
        (None, NMode::Full) => RsCode::full(f, a.k),
        (None, NMode::Punctured) => RsCode::punctured(f, a.k),
    }
}

fn rs_record(code: &RsCode) -> RsRecord {
    RsRecord {
        q: code.field().q(),
        n: code.n(),
        k: code.k(),
        degree: String::new(),
        distance: None,
        verdict: None,
        bounds: None,
        word: None,
        target: None,
        solutions: None,
    }
}

fn bounds_text(b: DistanceBounds) -> Option<String> {
    match b {
        DistanceBounds::Codeword => None,
        DistanceBounds::Range { lower, upper } => Some(format!("{lower}..{upper}")),
    }
}

fn print_rs(out: &mut impl Write, format: Format, records: &[RsRecord]) -> io::Result<()> {
    emit(out, format, records, |w| {
        for r in records {
            write!(w, "q={} n={} k={}", r.q, r.n, r.k)?;
            if !r.degree.is_empty() {
                write!(w, " degree={}", r.degree)?;
            }
            if let Some(t) = &r.target {
                write!(w, " b1={t}")?;
            }
            if let Some(s) = &r.solutions {
                write!(w, " N={s}")?;
            }
            if let Some(v) = &r.verdict {
                write!(w, " {v}")?;
            }
            if let Some(d) = r.distance {
                write!(w, ", distance {d}")?;
            }
            if let Some(b) = &r.bounds {
                write!(w, " bounds {b}")?;
            }
            if let Some(word) = &r.word {
                write!(w, " word {word}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    })
}

fn cmd_rs(cli: &Cli, cmd: &RsCommand, out: &mut impl Write) -> CmdResult {
    let f = field(cli)?;
    match cmd {
        RsCommand::Classify { code, word } => {
            let code = build_code(&f, code)?;
            let u = code.parse_word(word)?;
            let mut rec = rs_record(&code);
            let degree = code.word_degree(&u);
            rec.degree = degree.to_string();
            let bounds = code.distance_bounds(&u);
            rec.bounds = bounds_text(bounds);
            let (n, k) = (code.n(), code.k());
            match degree.finite() {
                _ if bounds == DistanceBounds::Codeword => {
                    rec.verdict = Some("codeword".into());
                    rec.distance = Some(0);
                }
                Some(d) if d == k || d == k + 1 => {
                    let c = classify_m1(&code, &u)?;
                    rec.verdict = Some(c.verdict.as_str().into());
                    rec.distance = Some(match c.verdict {
                        M1Verdict::DeepHole => n - k,
                        M1Verdict::Ordinary => n - k - 1,
                    });
                    rec.target = c.target.map(|t| f.format_element(t));
                    rec.solutions = c.solutions.map(|s| s.to_string());
                }
                _ => {}
            }
            print_rs(out, cli.format, &[rec])?;
        }
        RsCommand::Distance { code, word } => {
            let code = build_code(&f, code)?;
            let u = code.parse_word(word)?;
            let mut rec = rs_record(&code);
            rec.degree = code.word_degree(&u).to_string();
            rec.bounds = bounds_text(code.distance_bounds(&u));
            rec.distance = Some(code.distance_to_code(&u, DEFAULT_DISTANCE_LIMIT)?);
            print_rs(out, cli.format, &[rec])?;
        }
        RsCommand::Encode { code, poly } => {
            let code = build_code(&f, code)?;
            let msg = Poly::new(f.parse_element_list(poly)?);
            let w = code.encode(&msg)?;
            let mut rec = rs_record(&code);
            rec.degree = msg.degree().to_string();
            rec.verdict = Some("codeword".into());
            rec.distance = Some(0);
            rec.word = Some(code.format_word(&w));
            print_rs(out, cli.format, &[rec])?;
        }
        RsCommand::Scan { n_mode, k } => {
            let mode = match n_mode {
                NMode::Full => ScanMode::Full,
                NMode::Punctured => ScanMode::Punctured,
            };
            let report = deep_hole_scan(&f, mode, *k)?;
            let records: Vec<RsRecord> = report
                .entries
                .iter()
                .map(|e| RsRecord {
                    q: report.q,
                    n: report.n,
                    k: report.k,
                    degree: (report.k + 1).to_string(),
                    distance: None,
                    verdict: Some(e.verdict().as_str().into()),
                    bounds: None,
                    word: None,
                    target: Some(f.format_element(e.target)),
                    solutions: Some(e.solutions.to_string()),
                })
                .collect();
            print_rs(out, cli.format, &records)?;
            if cli.format == Format::Table {
                writeln!(
                    out,
                    "{} deep holes of degree {} ({} D, n = {})",
                    report.deep_holes(),
                    report.k + 1,
                    mode.as_str(),
                    report.n
                )?;
            }
        }
    }
    Ok(())
}
