//! One function per subcommand. Work fans out over the current rayon pool and
//! results are sorted before they reach the report, so thread count never
//! changes the output.

use std::io::BufRead;

use freecurve::generator::ploski::ploski_parameter_count;
use freecurve::generator::table1::{admissible_cases, random_factor_spec};
use freecurve::generator::{ploski_curve, table1_curve, CurveCertificate};
use freecurve::grid::oracle::{closure_segments, component_count, hred_count, per_l_pair_count};
use freecurve::grid::{count_components, count_hred, enumerate_components, enumerate_maximal_segments, hred};
use freecurve::syzygy::{random_rational, solve_abc};
use freecurve::verify::checks::{run_checks, Check};
use freecurve::verify::tjurina_number;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{CliError, Cli, FamilyArg, Report, What};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require_min(n: u32, min: u32, what: &str) -> Result<(), CliError> {
    if n < min {
        return Err(usage(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

struct Block {
    items: Vec<(&'static str, Value, Option<bool>)>,
}

fn segment_items(n: u32, what: What) -> Result<Block, CliError> {
    let mut items = Vec::new();
    match what {
        What::Segments => {
            let segs = enumerate_maximal_segments(n)?;
            let brute = closure_segments(n)?.len();
            let listed = segs.len();
            for s in segs {
                items.push(("segment", serde_json::to_value(&s).expect("segment json"), None));
            }
            items.push((
                "count",
                json!({"n": n, "what": "segments", "enumerated": listed, "formula": null, "brute_force": brute}),
                Some(listed == brute),
            ));
        }
        What::Components => {
            let comps = enumerate_components(n)?;
            let listed = comps.len() as u64;
            for c in comps {
                let mut v = serde_json::to_value(&c).expect("component json");
                v["n"] = json!(n);
                items.push(("component", v, None));
            }
            items.push(components_count(n, Some(listed))?);
        }
        What::Hred => {
            let segs = hred(n)?;
            let listed = segs.len() as u64;
            for s in segs {
                let mut v = serde_json::to_value(&s).expect("segment json");
                v["abc"] = solve_abc(&s).map(|a| json!(a)).unwrap_or(Value::Null);
                items.push(("segment", v, None));
            }
            items.push(hred_count_item(n, Some(listed))?);
        }
        What::All => unreachable!("rejected by the caller"),
    }
    Ok(Block { items })
}

fn components_count(n: u32, listed: Option<u64>) -> Result<(&'static str, Value, Option<bool>), CliError> {
    let formula = count_components(n)?;
    let brute = component_count(n)?;
    let listed = listed.unwrap_or(enumerate_components(n)?.len() as u64);
    Ok((
        "count",
        json!({"n": n, "what": "components", "enumerated": listed, "formula": formula, "brute_force": brute}),
        Some(formula == brute && brute == listed),
    ))
}

fn hred_count_item(n: u32, listed: Option<u64>) -> Result<(&'static str, Value, Option<bool>), CliError> {
    let (per, total) = count_hred(n)?;
    let brute = hred_count(n)?;
    let listed = listed.unwrap_or(hred(n)?.len() as u64);
    let per_brute = (0..3).map(|l| per_l_pair_count(n, l)).collect::<Result<Vec<_>, _>>()?;
    let ok = total == brute && brute == listed && per_brute.iter().all(|&p| p == per);
    Ok((
        "count",
        json!({
            "n": n,
            "what": "hred",
            "enumerated": listed,
            "formula": total,
            "brute_force": brute,
            "per_pair": {"formula": per, "brute_force": per_brute},
        }),
        Some(ok),
    ))
}

fn flush(report: &mut Report, blocks: Vec<Block>) {
    for b in blocks {
        for (kind, v, ok) in b.items {
            report.item(kind, v, ok);
        }
    }
}

pub fn enumerate(cli: &Cli) -> Result<Report, CliError> {
    let (n0, n1) = cli.require_range()?;
    let what = match cli.what {
        None => return Err(usage("enumerate needs --what segments|components|hred")),
        Some(What::All) => return Err(usage("enumerate takes one of segments|components|hred")),
        Some(w) => w,
    };
    require_min(n0, if what == What::Hred { 4 } else { 3 }, "enumerate")?;
    let mut report = Report::new("enumerate", Some([n0, n1]));
    let blocks = report.phase("enumerate", || {
        (n0..=n1)
            .into_par_iter()
            .map(|n| segment_items(n, what))
            .collect::<Result<Vec<_>, _>>()
    })?;
    flush(&mut report, blocks);
    report.set("what", json!(format!("{what:?}").to_lowercase()));
    Ok(report)
}

pub fn count(cli: &Cli) -> Result<Report, CliError> {
    let (n0, n1) = cli.require_range()?;
    let what = cli.what.unwrap_or(What::All);
    let (comps, red) = match what {
        What::Components => (true, false),
        What::Hred => (false, true),
        What::All => (true, true),
        What::Segments => return Err(usage("count takes components|hred|all")),
    };
    require_min(n0, if red && !comps { 4 } else { 3 }, "count")?;
    let mut report = Report::new("count", Some([n0, n1]));
    let blocks = report.phase("count", || {
        (n0..=n1)
            .into_par_iter()
            .map(|n| {
                let mut items = Vec::new();
                if comps {
                    items.push(components_count(n, None)?);
                }
                if red && n >= 4 {
                    items.push(hred_count_item(n, None)?);
                }
                Ok(Block { items })
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    flush(&mut report, blocks);
    Ok(report)
}

#[derive(Clone, Copy, Debug)]
enum Job {
    Table1 { n: u32, row: u8, i: u32 },
    Ploski { n: u32 },
}

impl Job {
    /// Stream index of the seeded generator; distinct per job.
    fn stream(self) -> u64 {
        match self {
            Job::Table1 { n, row, i } => ((n as u64) << 32) | ((row as u64) << 24) | i as u64,
            Job::Ploski { n } => ((n as u64) << 32) | (0xff << 24),
        }
    }

    fn build(self, seed: u64) -> freecurve::Result<CurveCertificate> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.stream());
        match self {
            Job::Table1 { n, row, i } => {
                let spec = random_factor_spec(row, i, n, &mut rng)?;
                table1_curve(&spec, n, true)
            }
            Job::Ploski { n } => {
                let lambdas: Vec<_> = (0..ploski_parameter_count(n)).map(|_| random_rational(&mut rng)).collect();
                ploski_curve(n, &lambdas)
            }
        }
    }
}

/// Seeded certificates for every admissible case and family, in canonical order.
pub fn corpus(n0: u32, n1: u32, family: FamilyArg, seed: u64) -> freecurve::Result<Vec<CurveCertificate>> {
    let mut jobs = Vec::new();
    for n in n0..=n1 {
        if family != FamilyArg::Ploski {
            jobs.extend(admissible_cases(n).into_iter().map(|(row, i)| Job::Table1 { n, row, i }));
        }
        if family != FamilyArg::Table1 {
            jobs.push(Job::Ploski { n });
        }
    }
    let mut certs = jobs
        .into_par_iter()
        .map(|j| j.build(seed))
        .collect::<freecurve::Result<Vec<_>>>()?;
    certs.sort_by_key(|c| c.sort_key());
    Ok(certs)
}

fn parse_checks(cli: &Cli) -> Result<Option<Vec<Check>>, CliError> {
    cli.checks
        .as_deref()
        .map(|s| Check::parse_list(s).map_err(|e| usage(e.to_string())))
        .transpose()
}

fn certificate_item(c: &CurveCertificate) -> (Value, Option<bool>) {
    let ok = c.verdicts.as_ref().map(|v| v.passed());
    (serde_json::to_value(c).expect("certificate json"), ok)
}

pub fn generate(cli: &Cli) -> Result<Report, CliError> {
    let (n0, n1) = cli.require_range()?;
    require_min(n0, 4, "generate")?;
    let checks = parse_checks(cli)?;
    let mut report = Report::new("generate", Some([n0, n1]));
    let mut certs = report.phase("generate", || corpus(n0, n1, cli.family, cli.seed))?;
    if let Some(checks) = &checks {
        report.phase("check", || {
            certs
                .par_iter_mut()
                .for_each(|c| c.verdicts = Some(run_checks(c, checks)));
        });
    }
    for c in &certs {
        let (v, ok) = certificate_item(c);
        report.item("certificate", v, ok);
    }
    report.set("seed", json!(cli.seed));
    report.set("family", json!(format!("{:?}", cli.family).to_lowercase()));
    Ok(report)
}

/// Certificates from a JSON-lines stream; summary lines are skipped.
pub fn read_certificates(input: &mut dyn BufRead) -> Result<Vec<CurveCertificate>, CliError> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Value =
            serde_json::from_str(&line).map_err(|e| usage(format!("line {}: invalid JSON: {e}", idx + 1)))?;
        if v.get("item").and_then(Value::as_str) == Some("summary") {
            continue;
        }
        let c: CurveCertificate = serde_json::from_value(v)
            .map_err(|e| usage(format!("line {}: not a certificate: {e}", idx + 1)))?;
        out.push(c);
    }
    Ok(out)
}

pub fn verify(cli: &Cli, input: &mut dyn BufRead) -> Result<Report, CliError> {
    let checks = parse_checks(cli)?.unwrap_or_else(|| Check::ALL.to_vec());
    let mut report = Report::new("verify", None);
    let mut certs = report.phase("parse", || read_certificates(input))?;
    report.phase("check", || {
        certs
            .par_iter_mut()
            .for_each(|c| c.verdicts = Some(run_checks(c, &checks)));
    });
    let mut indexed: Vec<(usize, CurveCertificate)> = certs.into_iter().enumerate().collect();
    indexed.sort_by(|a, b| a.1.sort_key().cmp(&b.1.sort_key()).then(a.0.cmp(&b.0)));
    let mut failures = Vec::new();
    for (idx, c) in &indexed {
        let (mut v, ok) = certificate_item(c);
        v["index"] = json!(idx);
        if ok == Some(false) {
            let first = c.verdicts.as_ref().and_then(|v| v.first_failure.clone());
            failures.push(json!({"index": idx, "first_failure": first}));
        }
        report.item("certificate", v, ok);
    }
    report.set("checks", json!(checks.iter().map(|c| c.name()).collect::<Vec<_>>()));
    report.set("failures", Value::Array(failures));
    Ok(report)
}

pub fn tjurina(cli: &Cli, input: Option<&mut dyn BufRead>) -> Result<Report, CliError> {
    let range = cli.range()?;
    let mut report = Report::new("tjurina", range.map(|(a, b)| [a, b]));
    let certs = match input {
        Some(r) => report.phase("parse", || read_certificates(r))?,
        None => {
            let (n0, n1) = range.expect("caller checked --n");
            require_min(n0, 4, "tjurina")?;
            report.phase("generate", || corpus(n0, n1, cli.family, cli.seed))?
        }
    };
    let rows: Vec<(Value, bool)> = report.phase("tjurina", || {
        certs
            .par_iter()
            .map(|c| {
                let n = c.n as u64;
                let want = n * n - 3 * n + 3;
                let mut v = json!({
                    "n": c.n,
                    "family": c.family,
                    "case": c.case,
                    "g": c.g,
                    "expected": want,
                });
                let ok = match tjurina_number(&c.g) {
                    Ok(t) => {
                        v["tau"] = json!(t);
                        t == want
                    }
                    Err(e) => {
                        v["error"] = json!(e.to_string());
                        false
                    }
                };
                (v, ok)
            })
            .collect()
    });
    for (v, ok) in rows {
        report.item("tjurina", v, Some(ok));
    }
    Ok(report)
}
