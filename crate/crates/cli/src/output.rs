//! Rendering of tables, suite runs and derangement summaries.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use mahonian::derangements::DerangementPolynomials;
use mahonian::identities::SuiteRun;
use mahonian::qpoly::IntPolynomial;
use mahonian::report::IdentityReport;
use mahonian::statistics::StatRow;
use serde_json::json;

use crate::Format;

const SHORT_COLUMNS: [&str; 4] = ["word", "L", "fmaj", "inv_tilde"];
const LONG_COLUMNS: [&str; 7] = ["word", "L", "fmaj", "inv_tilde", "maj", "col", "des"];

fn fields(row: &StatRow, verbose: bool) -> Vec<String> {
    let mut f = vec![
        row.word.clone(),
        row.length.to_string(),
        row.fmaj.to_string(),
        row.inv_tilde.to_string(),
    ];
    if verbose {
        f.extend([row.maj.to_string(), row.col.to_string(), row.des_field()]);
    }
    f
}

fn md_row(out: &mut dyn Write, cells: &[String]) -> io::Result<()> {
    writeln!(out, "| {} |", cells.join(" | "))
}

fn md_header(out: &mut dyn Write, names: &[&str]) -> io::Result<()> {
    md_row(
        out,
        &names.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    )?;
    md_row(out, &vec!["---".to_string(); names.len()])
}

pub fn stat_rows(
    out: &mut dyn Write,
    format: Format,
    rows: &[StatRow],
    verbose: bool,
) -> io::Result<()> {
    let columns: &[&str] = if verbose {
        &LONG_COLUMNS
    } else {
        &SHORT_COLUMNS
    };
    match format {
        Format::Csv => {
            writeln!(out, "{}", columns.join(","))?;
            for r in rows {
                writeln!(out, "{}", fields(r, verbose).join(","))?;
            }
        }
        Format::Json => {
            for r in rows {
                let line = if verbose {
                    serde_json::to_string(r)?
                } else {
                    json!({"word": r.word, "L": r.length, "fmaj": r.fmaj, "inv_tilde": r.inv_tilde})
                        .to_string()
                };
                writeln!(out, "{line}")?;
            }
        }
        Format::Md => {
            md_header(out, columns)?;
            for r in rows {
                md_row(out, &fields(r, verbose))?;
            }
        }
    }
    Ok(())
}

fn brief(r: &IdentityReport) -> String {
    r.detail.clone().unwrap_or_else(|| r.lhs.to_string())
}

fn claim_name(r: &IdentityReport) -> &'static str {
    match r.claim {
        mahonian::report::Claim::Claimed => "claimed",
        mahonian::report::Claim::Exploratory => "exploratory",
        mahonian::report::Claim::Degenerate => "degenerate",
    }
}

/// Writes JSON lines (to `path`, or to standard output for `Format::Json`)
/// followed by a summary on standard output.
pub fn suite(
    run: &SuiteRun,
    format: Format,
    path: &Option<PathBuf>,
    verbose: bool,
) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut lines: Option<Box<dyn Write>> = match path {
        Some(p) => Some(Box::new(BufWriter::new(File::create(p)?))),
        None if format == Format::Json => None,
        None => Some(Box::new(io::sink())),
    };
    for r in &run.reports {
        match lines.as_mut() {
            Some(w) => writeln!(w, "{}", r.to_json_line())?,
            None => writeln!(out, "{}", r.to_json_line())?,
        }
    }
    if let Some(mut w) = lines {
        w.flush()?;
    }

    match format {
        Format::Json => {
            for r in &run.reports {
                writeln!(
                    out,
                    "{:<7} {:<18} c={} n={}  {}  {}",
                    r.status(),
                    r.identity.as_str(),
                    r.c,
                    r.n,
                    claim_name(r),
                    brief(r)
                )?;
                if verbose {
                    writeln!(out, "        lhs: {}", r.lhs)?;
                    writeln!(out, "        rhs: {}", r.rhs)?;
                }
            }
            for s in &run.skipped {
                writeln!(
                    out,
                    "skip    {:<18} c={} n={}  {}",
                    s.identity.as_str(),
                    s.c,
                    s.n,
                    s.reason
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "identity,c,n,status,claim,group_size")?;
            for r in &run.reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.identity,
                    r.c,
                    r.n,
                    r.status(),
                    claim_name(r),
                    r.group_size
                )?;
            }
            for s in &run.skipped {
                writeln!(out, "{},{},{},skip,,", s.identity, s.c, s.n)?;
            }
        }
        Format::Md => {
            md_header(
                &mut out,
                &["identity", "c", "n", "status", "claim", "result"],
            )?;
            for r in &run.reports {
                md_row(
                    &mut out,
                    &[
                        r.identity.to_string(),
                        r.c.to_string(),
                        r.n.to_string(),
                        r.status().to_string(),
                        claim_name(r).to_string(),
                        brief(r),
                    ],
                )?;
            }
            for s in &run.skipped {
                md_row(
                    &mut out,
                    &[
                        s.identity.to_string(),
                        s.c.to_string(),
                        s.n.to_string(),
                        "skip".into(),
                        String::new(),
                        s.reason.clone(),
                    ],
                )?;
            }
        }
    }
    let count = |status: &str| run.reports.iter().filter(|r| r.status() == status).count();
    if format != Format::Csv {
        writeln!(
            out,
            "{} cells: {} pass, {} FAIL, {} findings, {} skipped",
            run.reports.len(),
            count("pass"),
            count("FAIL"),
            count("finding"),
            run.skipped.len()
        )?;
    }
    out.flush()
}

pub fn conjecture(
    run: &SuiteRun,
    format: Option<Format>,
    path: &Option<PathBuf>,
) -> io::Result<()> {
    let mut out: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let verdict = |r: &IdentityReport| if r.pass { "symmetric" } else { "asymmetric" };
    match format {
        None => {
            for r in &run.reports {
                write!(
                    out,
                    "c={} n={}  {}  ({})",
                    r.c,
                    r.n,
                    verdict(r),
                    claim_name(r)
                )?;
                if let Some(w) = &r.detail {
                    write!(out, "  witness {w}")?;
                }
                writeln!(out)?;
            }
            for s in &run.skipped {
                writeln!(out, "c={} n={}  skipped: {}", s.c, s.n, s.reason)?;
            }
        }
        Some(Format::Json) => {
            for r in &run.reports {
                writeln!(out, "{}", r.to_json_line())?;
            }
        }
        Some(Format::Csv) => {
            writeln!(out, "c,n,symmetric,claim")?;
            for r in &run.reports {
                writeln!(out, "{},{},{},{}", r.c, r.n, r.pass, claim_name(r))?;
            }
        }
        Some(Format::Md) => {
            md_header(&mut out, &["c", "n", "joint distribution", "claim"])?;
            for r in &run.reports {
                md_row(
                    &mut out,
                    &[
                        r.c.to_string(),
                        r.n.to_string(),
                        verdict(r).into(),
                        claim_name(r).into(),
                    ],
                )?;
            }
        }
    }
    out.flush()
}

pub struct DerangementView<'a> {
    pub polys: &'a DerangementPolynomials,
    pub q1: bool,
    pub show_signed: bool,
    pub checks: &'a [(&'static str, bool)],
}

pub const OPEN_QUESTION_NOTE: &str = "no closed form (open question)";

/// `(name, value, note)` triples in display order.
fn derangement_items(v: &DerangementView) -> Vec<(&'static str, String, Option<&'static str>)> {
    let p = v.polys;
    let even_c = p.c.is_multiple_of(2);
    let shown = |poly: &IntPolynomial| {
        if v.q1 {
            poly.value_at_one().to_string()
        } else {
            poly.to_string()
        }
    };
    let mut items = vec![("d", shown(&p.plain), None)];
    if v.show_signed {
        items.push((
            "signed",
            shown(&p.signed),
            (!even_c).then_some(OPEN_QUESTION_NOTE),
        ));
    }
    if even_c {
        items.push(("even part", shown(&p.even_part), None));
    }
    items.push(("total", p.counts.total.to_string(), None));
    items.push(("even", p.counts.even.to_string(), None));
    items.push(("odd", p.counts.odd.to_string(), None));
    items.push((
        "difference",
        (&p.counts.even - &p.counts.odd).to_string(),
        None,
    ));
    items
}

pub fn derangements(
    out: &mut dyn Write,
    format: Option<Format>,
    v: &DerangementView,
) -> io::Result<()> {
    let items = derangement_items(v);
    let checks = v
        .checks
        .iter()
        .map(|(name, ok)| (*name, if *ok { "match" } else { "MISMATCH" }));
    match format {
        None => {
            writeln!(out, "G({},{})", v.polys.c, v.polys.n)?;
            for (name, value, note) in &items {
                match note {
                    Some(note) => writeln!(out, "{name:<12} {value}  [{note}]")?,
                    None => writeln!(out, "{name:<12} {value}")?,
                }
            }
            for (name, verdict) in checks {
                writeln!(out, "check {name}: {verdict}")?;
            }
        }
        Some(Format::Csv) => {
            writeln!(out, "quantity,value,note")?;
            for (name, value, note) in &items {
                writeln!(out, "{name},{value},{}", note.unwrap_or(""))?;
            }
            for (name, verdict) in checks {
                writeln!(out, "check {name},{verdict},")?;
            }
        }
        Some(Format::Md) => {
            md_header(out, &["quantity", "value"])?;
            for (name, value, note) in &items {
                let value = match note {
                    Some(n) => format!("{value} ({n})"),
                    None => value.clone(),
                };
                md_row(out, &[name.to_string(), value])?;
            }
            for (name, verdict) in checks {
                md_row(out, &[format!("check {name}"), verdict.to_string()])?;
            }
        }
        Some(Format::Json) => {
            let mut obj = serde_json::Map::new();
            obj.insert("c".into(), json!(v.polys.c));
            obj.insert("n".into(), json!(v.polys.n));
            for (name, value, note) in &items {
                obj.insert(name.replace(' ', "_"), json!(value));
                if let Some(note) = note {
                    obj.insert(format!("{}_note", name.replace(' ', "_")), json!(note));
                }
            }
            if !v.q1 {
                obj.insert("polynomials".into(), json!(v.polys));
            }
            let checks: serde_json::Map<_, _> = v
                .checks
                .iter()
                .map(|(k, ok)| (k.to_string(), json!(ok)))
                .collect();
            obj.insert("checks".into(), checks.into());
            writeln!(out, "{}", serde_json::Value::Object(obj))?;
        }
    }
    Ok(())
}
