//! The `selfrecip` command line.
//!
//! Subcommands: `census` (closed-form counting rows, optionally checked
//! against brute-force enumeration), `verify` (the full closed-vs-brute
//! comparison over a degree range), `recip` (self-reciprocal factor report
//! for one polynomial) and `index2` (`count`/`solve`/`list` over GF(2)
//! index-2 systems).
//!
//! Output formats: `table` for humans, `json` (newline-delimited objects,
//! first line the echoed run configuration) as the canonical machine format,
//! and `csv` for spreadsheets. Machine output carries no timing, so identical
//! invocations produce byte-identical bytes. Exit codes: 0 success/all-match,
//! 1 verification mismatch, 2 usage or parse error, 3 budget exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::census;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::index2::{self, KVector};
use crate::poly::Polynomial;
use crate::recip;

#[derive(Parser, Debug)]
#[command(name = "selfrecip", version, about = "Finite-field self-reciprocal factor census and GF(2) index-2 systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (table for humans, json/csv for machines).
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,

    /// Write the machine report to this path as well.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Work budget: maximum polynomials per brute-force enumeration run.
    #[arg(long, global = true, env = "SELFRECIP_BUDGET", default_value_t = census::DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for any sampled (randomized) work; echoed for provenance.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form census rows t, s, z, pr and p(n, j) for one degree.
    Census {
        /// Field descriptor: "p^k" or a prime power "q", with optional
        /// ";modulus=a0,a1,...,ak".
        #[arg(long)]
        field: String,
        /// Degree to count.
        #[arg(long)]
        n: u32,
        /// Also enumerate and compare brute-force columns.
        #[arg(long)]
        brute: bool,
    },
    /// Exact brute-force verification of every counting identity.
    Verify {
        #[arg(long)]
        field: String,
        /// Verify all degrees 2..=nmax (plus the degree-1 base row).
        #[arg(long)]
        nmax: u32,
    },
    /// Reciprocal and self-reciprocal factor report for one polynomial.
    Recip {
        #[arg(long)]
        field: String,
        /// Polynomial: "[a0,a1,...]", "x^3+2*x+1", or an F_2 bitstring.
        #[arg(long)]
        poly: String,
    },
    /// GF(2) index-2 systems.
    Index2 {
        #[command(subcommand)]
        cmd: Index2Cmd,
    },
}

#[derive(Subcommand, Debug)]
enum Index2Cmd {
    /// Count solvable coefficient vectors of order m (or a range of orders).
    Count {
        #[arg(long)]
        m: usize,
        /// Extend the count over all orders m..=mmax.
        #[arg(long)]
        mmax: Option<usize>,
    },
    /// Solve the system for one coefficient vector (bitstring k0...km).
    Solve {
        #[arg(long)]
        k: String,
    },
    /// List the admissible coefficient vectors of order m.
    List {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Table => "table",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

/// Parsed run configuration, echoed verbatim in every machine report.
#[derive(Debug, Serialize)]
struct RunConfig {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nmax: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<bool>,
    format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    budget: u64,
    seed: u64,
}

impl RunConfig {
    fn new(cli: &Cli, command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            field: None,
            n: None,
            nmax: None,
            m: None,
            mmax: None,
            k: None,
            poly: None,
            brute: None,
            format: cli.format.name().to_string(),
            out: cli.out.as_ref().map(|p| p.display().to_string()),
            budget: cli.budget,
            seed: cli.seed,
        }
    }

    fn json_line(&self) -> String {
        let mut obj = serde_json::Map::new();
        obj.insert("config".into(), serde_json::to_value(self).expect("config serializes"));
        serde_json::Value::Object(obj).to_string()
    }
}

/// Parse the command line, run it, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Census { field, n, brute } => cmd_census(cli, field, *n, *brute),
        Command::Verify { field, nmax } => cmd_verify(cli, field, *nmax),
        Command::Recip { field, poly } => cmd_recip(cli, field, poly),
        Command::Index2 { cmd } => match cmd {
            Index2Cmd::Count { m, mmax } => cmd_index2_count(cli, *m, *mmax),
            Index2Cmd::Solve { k } => cmd_index2_solve(cli, k),
            Index2Cmd::List { m } => cmd_index2_list(cli, *m),
        },
    }
}

/// Print the chosen payload and mirror the machine form to `--out`.
fn emit(cli: &Cli, table: String, json: String, csv: String) -> Result<()> {
    let stdout_payload = match cli.format {
        OutputFormat::Table => &table,
        OutputFormat::Json => &json,
        OutputFormat::Csv => &csv,
    };
    print!("{stdout_payload}");
    if let Some(path) = &cli.out {
        let file_payload = match cli.format {
            OutputFormat::Csv => &csv,
            _ => &json,
        };
        std::fs::write(path, file_payload).map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(())
}

// ---- census ----

#[derive(Serialize)]
struct CensusSummary {
    q: u64,
    n: u32,
    t: String,
    s: String,
    z: String,
    pr: String,
}

fn cmd_census(cli: &Cli, field: &str, n: u32, brute: bool) -> Result<i32> {
    let spec = FieldSpec::parse(field)?;
    let q = spec.q();
    let mut config = RunConfig::new(cli, "census");
    config.field = Some(field.to_string());
    config.n = Some(n);
    config.brute = Some(brute);

    let mut rows = census::census_rows(q, n)?;
    let mut all_match = true;
    if brute {
        let hist = census::census_brute(&spec, n, cli.budget)?;
        for row in rows.iter_mut() {
            let b = hist.counts[row.j as usize];
            let ok = BigUint::from(b) == row.count;
            row.count_brute = Some(b);
            row.matches = Some(ok);
            all_match &= ok;
        }
    }
    let summary = CensusSummary {
        q,
        n,
        t: census::count_t(q, n)?.to_string(),
        s: census::count_s(q, n).to_string(),
        z: census::z_closed(q, n).to_string(),
        pr: census::pr_conv(q, n).to_string(),
    };

    // Table.
    let mut table = String::new();
    let _ = writeln!(table, "field {spec} (q = {q}), degree n = {n}");
    let _ = writeln!(table, "t({n})  = {}", summary.t);
    let _ = writeln!(table, "s({n})  = {}", summary.s);
    let _ = writeln!(table, "z({n})  = {}", summary.z);
    let _ = writeln!(table, "pr({n}) = {}", summary.pr);
    let width = rows.iter().map(|r| r.count.to_string().len()).max().unwrap_or(5).max(5);
    if brute {
        let _ = writeln!(table, "{:>4}  {:>width$}  {:>width$}  match", "j", "count", "brute");
    } else {
        let _ = writeln!(table, "{:>4}  {:>width$}", "j", "count");
    }
    for row in &rows {
        if brute {
            let _ = writeln!(
                table,
                "{:>4}  {:>width$}  {:>width$}  {}",
                row.j,
                row.count.to_string(),
                row.count_brute.expect("set when brute"),
                if row.matches.expect("set when brute") { "ok" } else { "MISMATCH" },
            );
        } else {
            let _ = writeln!(table, "{:>4}  {:>width$}", row.j, row.count.to_string());
        }
    }
    if brute {
        let _ = writeln!(table, "{}", if all_match { "all rows match" } else { "MISMATCH FOUND" });
    }

    // JSON: config, summary, one object per row.
    let mut json = String::new();
    let _ = writeln!(json, "{}", config.json_line());
    let _ = writeln!(json, "{{\"summary\":{}}}", serde_json::to_string(&summary).expect("serializes"));
    for row in &rows {
        let _ = writeln!(json, "{}", serde_json::to_string(row).expect("serializes"));
    }

    // CSV.
    let mut csv = String::new();
    if brute {
        let _ = writeln!(csv, "q,n,j,count,count_brute,match");
        for row in &rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                row.q,
                row.n,
                row.j,
                row.count,
                row.count_brute.expect("set when brute"),
                row.matches.expect("set when brute"),
            );
        }
    } else {
        let _ = writeln!(csv, "q,n,j,count");
        for row in &rows {
            let _ = writeln!(csv, "{},{},{},{}", row.q, row.n, row.j, row.count);
        }
    }

    emit(cli, table, json, csv)?;
    Ok(if all_match { 0 } else { 1 })
}

// ---- verify ----

fn cmd_verify(cli: &Cli, field: &str, nmax: u32) -> Result<i32> {
    let spec = FieldSpec::parse(field)?;
    let mut config = RunConfig::new(cli, "verify");
    config.field = Some(field.to_string());
    config.nmax = Some(nmax);

    let report = census::verify(&spec, nmax, cli.budget)?;

    // Human table always goes to stdout; the machine report goes to --out.
    let mut table = String::new();
    let _ = writeln!(
        table,
        "verify field {} (q = {}), degrees 2..={} (budget {})",
        report.field, report.q, report.n_max, report.budget
    );
    if report.rows.is_empty() {
        let _ = writeln!(table, "degenerate range: nothing to check (vacuous pass)");
    } else {
        let _ = writeln!(
            table,
            "{:>3} {:>14} {:>14} {:>14} {:>12} {:>12} {:>9} {:>8} {:>5}",
            "n", "t", "z_closed", "z_brute", "pr_closed", "pr_brute", "identity", "buckets", "pass"
        );
        for row in &report.rows {
            let _ = writeln!(
                table,
                "{:>3} {:>14} {:>14} {:>14} {:>12} {:>12} {:>9} {:>8} {:>5}",
                row.n,
                row.t.to_string(),
                row.z_closed.to_string(),
                row.z_brute,
                row.pr_closed.to_string(),
                row.pr_brute,
                row.identity_match.map_or("-".to_string(), |b| b.to_string()),
                if row.buckets.iter().all(|b| b.matches) { "ok" } else { "FAIL" },
                if row.pass { "ok" } else { "FAIL" },
            );
            for b in &row.buckets {
                if !b.matches {
                    let _ = writeln!(
                        table,
                        "    MISMATCH at j = {}: closed {} vs brute {}, first example {}",
                        b.j,
                        b.closed,
                        b.brute,
                        b.counterexample.as_deref().unwrap_or("(empty bucket)"),
                    );
                }
            }
        }
        let _ = writeln!(
            table,
            "{} (elapsed {:.2?})",
            if report.all_pass { "all checks passed" } else { "CHECKS FAILED" },
            report.elapsed
        );
    }

    let mut json = String::new();
    let _ = writeln!(json, "{}", config.json_line());
    let _ = writeln!(json, "{}", serde_json::to_string(&report).expect("serializes"));

    let mut csv = String::new();
    let _ = writeln!(csv, "q,n,j,count,count_brute,match");
    for row in &report.rows {
        for b in &row.buckets {
            let _ = writeln!(csv, "{},{},{},{},{},{}", report.q, row.n, b.j, b.closed, b.brute, b.matches);
        }
    }

    print!("{table}");
    if let Some(path) = &cli.out {
        let payload = match cli.format {
            OutputFormat::Csv => &csv,
            _ => &json,
        };
        std::fs::write(path, payload).map_err(|e| Error::Io(e.to_string()))?;
    } else if cli.format != OutputFormat::Table {
        // No file requested: machine payload joins stdout after the table.
        let payload = if cli.format == OutputFormat::Csv { &csv } else { &json };
        print!("{payload}");
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

// ---- recip ----

fn cmd_recip(cli: &Cli, field: &str, poly_text: &str) -> Result<i32> {
    let spec = FieldSpec::parse(field)?;
    let f = Polynomial::parse(&spec, poly_text)?;
    let mut config = RunConfig::new(cli, "recip");
    config.field = Some(field.to_string());
    config.poly = Some(poly_text.to_string());

    let report = recip::report(&f)?;
    let raw = f.reciprocal_raw()?;
    let fac = f.factor()?;

    let mut table = String::new();
    let _ = writeln!(table, "field {spec} (q = {})", spec.q());
    let _ = writeln!(table, "input:          {f}  {}", f.to_code_list());
    let _ = writeln!(table, "reciprocal f*:  {raw}  {}", raw.to_code_list());
    let _ = writeln!(table, "factorization:  {fac}");
    let _ = writeln!(
        table,
        "max self-reciprocal factor: {} (degree {})",
        report.max_factor, report.max_factor_degree
    );
    let _ = writeln!(table, "cofactor:       {}", report.cofactor);
    let _ = writeln!(table, "classes:");
    for entry in &report.class_breakdown {
        match &entry.partner {
            Some(p) => {
                let _ = writeln!(
                    table,
                    "  {}^{}: {} (partner {})",
                    entry.factor, entry.multiplicity, entry.class, p
                );
            }
            None => {
                let _ = writeln!(table, "  {}^{}: {}", entry.factor, entry.multiplicity, entry.class);
            }
        }
    }

    let mut json = String::new();
    let _ = writeln!(json, "{}", config.json_line());
    let _ = writeln!(json, "{}", serde_json::to_string(&report).expect("serializes"));

    let mut csv = String::new();
    let _ = writeln!(csv, "input,max_factor,max_factor_degree,cofactor");
    let _ = writeln!(
        csv,
        "\"{}\",\"{}\",{},\"{}\"",
        report.input, report.max_factor, report.max_factor_degree, report.cofactor
    );

    emit(cli, table, json, csv)?;
    Ok(0)
}

// ---- index2 ----

#[derive(Serialize)]
struct CountRow {
    m: usize,
    count: u64,
    expected: u64,
    #[serde(rename = "match")]
    matches: bool,
}

fn expected_count(m: usize) -> u64 {
    if m == 2 {
        0
    } else {
        1 << (m - 2)
    }
}

fn cmd_index2_count(cli: &Cli, m: usize, mmax: Option<usize>) -> Result<i32> {
    let hi = mmax.unwrap_or(m);
    if hi < m {
        return Err(Error::Parse("mmax must be at least m".into()));
    }
    let mut config = RunConfig::new(cli, "index2 count");
    config.m = Some(m);
    config.mmax = mmax;

    let mut rows = Vec::new();
    for order in m..=hi {
        let (count, _) = index2::count_index2(order)?;
        let expected = expected_count(order);
        rows.push(CountRow { m: order, count, expected, matches: count == expected });
    }
    let all_match = rows.iter().all(|r| r.matches);

    let mut table = String::new();
    let _ = writeln!(table, "{:>4} {:>12} {:>12}  match", "m", "count", "expected");
    for r in &rows {
        let _ = writeln!(
            table,
            "{:>4} {:>12} {:>12}  {}",
            r.m,
            r.count,
            r.expected,
            if r.matches { "ok" } else { "MISMATCH" }
        );
    }

    let mut json = String::new();
    let _ = writeln!(json, "{}", config.json_line());
    for r in &rows {
        let _ = writeln!(json, "{}", serde_json::to_string(r).expect("serializes"));
    }

    let mut csv = String::new();
    let _ = writeln!(csv, "m,count,expected,match");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{}", r.m, r.count, r.expected, r.matches);
    }

    emit(cli, table, json, csv)?;
    Ok(if all_match { 0 } else { 1 })
}

#[derive(Serialize)]
struct SolutionRecord {
    k: String,
    prefix: Vec<u8>,
    period: u64,
    s1_purely_periodic: bool,
    s2_purely_periodic: bool,
}

fn cmd_index2_solve(cli: &Cli, k_text: &str) -> Result<i32> {
    let k = KVector::parse(k_text)?;
    let mut config = RunConfig::new(cli, "index2 solve");
    config.k = Some(k_text.to_string());

    let sols = index2::solve_index2(&k);
    let records: Vec<SolutionRecord> = sols
        .iter()
        .map(|sol| {
            let rep = index2::periodicity_report(sol);
            SolutionRecord {
                k: k.bitstring(),
                prefix: sol.prefix().to_vec(),
                period: rep.period,
                s1_purely_periodic: rep.s1_purely_periodic,
                s2_purely_periodic: rep.s2_purely_periodic,
            }
        })
        .collect();

    let mut table = String::new();
    let _ = writeln!(table, "k = {} (m = {})", k.bitstring(), k.order());
    if records.is_empty() {
        let _ = writeln!(table, "unsolvable");
    }
    for r in &records {
        let prefix: Vec<String> = r.prefix.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(table, "solution prefix a0..am: {}", prefix.join(" "));
        let _ = writeln!(table, "  forward tail period: {}", r.period);
        let _ = writeln!(table, "  S1 purely periodic: {}", r.s1_purely_periodic);
        let _ = writeln!(table, "  S2 purely periodic: {}", r.s2_purely_periodic);
    }

    let mut json = String::new();
    let _ = writeln!(json, "{}", config.json_line());
    for r in &records {
        let _ = writeln!(json, "{}", serde_json::to_string(r).expect("serializes"));
    }
    let _ = writeln!(
        json,
        "{{\"k\":\"{}\",\"m\":{},\"solution_count\":{}}}",
        k.bitstring(),
        k.order(),
        records.len()
    );

    let mut csv = String::new();
    let _ = writeln!(csv, "k,prefix,period,s1_purely_periodic,s2_purely_periodic");
    for r in &records {
        let prefix: String = r.prefix.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r.k, prefix, r.period, r.s1_purely_periodic, r.s2_purely_periodic
        );
    }

    emit(cli, table, json, csv)?;
    Ok(0)
}

#[derive(Serialize)]
struct ListRow {
    m: usize,
    k: String,
    special_case: Option<u8>,
}

fn cmd_index2_list(cli: &Cli, m: usize) -> Result<i32> {
    let mut config = RunConfig::new(cli, "index2 list");
    config.m = Some(m);

    let (count, admissible) = index2::count_index2(m)?;
    let rows: Vec<ListRow> = admissible
        .iter()
        .map(|k| {
            let sols = index2::solve_index2(k);
            let special = sols.first().and_then(index2::matches_special_case);
            ListRow { m, k: k.bitstring(), special_case: special }
        })
        .collect();

    let mut table = String::new();
    let _ = writeln!(table, "admissible vectors of order {m}: {count}");
    for r in &rows {
        match r.special_case {
            Some(c) => {
                let _ = writeln!(table, "  {}  (coincides with special case {c})", r.k);
            }
            None => {
                let _ = writeln!(table, "  {}", r.k);
            }
        }
    }

    let mut json = String::new();
    let _ = writeln!(json, "{}", config.json_line());
    for r in &rows {
        let _ = writeln!(json, "{}", serde_json::to_string(r).expect("serializes"));
    }

    let mut csv = String::new();
    let _ = writeln!(csv, "m,k,special_case");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{}",
            r.m,
            r.k,
            r.special_case.map_or(String::new(), |c| c.to_string())
        );
    }

    emit(cli, table, json, csv)?;
    Ok(0)
}
