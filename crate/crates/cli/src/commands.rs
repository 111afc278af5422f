use std::io::{self, Write};

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use cyclotome_core::bounds::{self, constants, IntervalReport};
use cyclotome_core::cyclo::{self, CyclotomicIndex};
use cyclotome_core::heights::{self, HeightRecord, ScanFilters, SCAN_CHUNK};
use cyclotome_core::{decomp, par, verify, Error};

use crate::cache::Cache;
use crate::{Cli, Command, Format, Status};

const DIGITS: u32 = 20;

pub fn run(cli: &Cli) -> Result<Status> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let status = match &cli.command {
        Command::Poly { n } => {
            let index = cyclo::analyze(*n)?;
            let coeffs = cyclo::cyclotomic_of(&index).coeffs();
            write_sequence(&mut out, cli.format, &coeffs)?;
            Status::Clean
        }
        Command::Psi { n, terms } => {
            let series = cyclo::psi_prefix(*n, *terms)?;
            write_sequence(&mut out, cli.format, &series.coeffs())?;
            Status::Clean
        }
        Command::Heights { n, scan, odd, squarefree, omega, with_b, limit } => {
            let filters = ScanFilters {
                odd: *odd,
                squarefree: *squarefree,
                omega: omega.clone(),
                with_b: *with_b,
                b_limit: *limit,
            };
            let indices = match (n, scan) {
                (Some(n), _) => vec![cyclo::analyze(*n)?],
                (None, Some(r)) => {
                    let (lo, hi) = (r[0], r[1]);
                    if lo == 0 || lo > hi {
                        bail!("scan range must satisfy 1 <= MIN <= MAX");
                    }
                    heights::scan_indices(lo..=hi, &filters)
                }
                (None, None) => unreachable!("clap requires N or --scan"),
            };
            let records = heights_with_cache(cli, indices, &filters)?;
            write_heights(&mut out, cli.format, &records)?;
            Status::Clean
        }
        Command::Bn { n, limit } => {
            let filters = ScanFilters { with_b: true, b_limit: *limit, ..Default::default() };
            let index = cyclo::analyze(*n)?;
            if !index.squarefree {
                return Err(Error::NotAdmissible { n: *n, reason: "B_n needs squarefree n".into() }.into());
            }
            let records = heights_with_cache(cli, vec![index], &filters)?;
            write_heights(&mut out, cli.format, &records)?;
            Status::Clean
        }
        Command::Decomp { n } => decomposition(&mut out, *n)?,
        Command::Constants { eps3, d, prime_box, tol, kmax } => {
            constants_report(&mut out, cli, eps3, d, *prime_box, *tol, *kmax)?;
            Status::Clean
        }
        Command::Verify { suite, max } => {
            let report = verify::run(*suite, *max, cli.jobs());
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            eprintln!(
                "{}: {} checks, {} violations, {} ms",
                report.suite,
                report.checks_run,
                report.violations.len(),
                report.elapsed_ms
            );
            for v in report.violations.iter().take(20) {
                eprintln!("  {} {}: {} vs {}", v.subject, v.bound, v.lhs, v.rhs);
            }
            if report.clean() {
                Status::Clean
            } else {
                Status::Violation
            }
        }
    };
    out.flush()?;
    Ok(status)
}

fn write_sequence<W: Write, T: ToString>(out: &mut W, format: Format, values: &[T]) -> Result<()> {
    match format {
        Format::Csv => {
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{i},{}", v.to_string())?;
            }
        }
        Format::Json => {
            let items: Vec<String> = values.iter().map(ToString::to_string).collect();
            writeln!(out, "[{}]", items.join(","))?;
        }
    }
    Ok(())
}

fn write_heights<W: Write>(out: &mut W, format: Format, records: &[HeightRecord]) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "n,omega,phi,A,S,C,B")?;
            let opt = |x: &Option<BigUint>| x.as_ref().map(ToString::to_string).unwrap_or_default();
            for r in records {
                writeln!(out, "{},{},{},{},{},{},{}", r.n, r.omega, r.phi, r.a, r.s, opt(&r.c), opt(&r.b))?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, records)?;
            writeln!(out)?;
        }
    }
    let skipped = records.iter().filter(|r| r.b_limit_exceeded).count();
    if skipped > 0 {
        eprintln!("{skipped} records have too many divisors for B_n under the current --limit");
    }
    Ok(())
}

/// Keeps only the fields the request asked for, so cached and fresh records print identically.
fn shape(mut r: HeightRecord, filters: &ScanFilters) -> HeightRecord {
    if !filters.with_b {
        r.b = None;
        r.witness = None;
        r.b_limit_exceeded = false;
    }
    r
}

fn usable(r: &HeightRecord, index: &CyclotomicIndex, filters: &ScanFilters) -> bool {
    !filters.with_b || !index.squarefree || r.b.is_some()
}

fn heights_with_cache(cli: &Cli, indices: Vec<CyclotomicIndex>, filters: &ScanFilters) -> Result<Vec<HeightRecord>> {
    let mut cache = cli.cache.as_deref().map(Cache::open).transpose()?;
    if let Some(c) = &cache {
        if c.repaired {
            eprintln!("cache: dropped a truncated trailing line");
        }
    }
    let mut out = Vec::with_capacity(indices.len());
    for chunk in indices.chunks(SCAN_CHUNK) {
        let cached: Vec<Option<HeightRecord>> = chunk
            .iter()
            .map(|i| cache.as_ref().and_then(|c| c.get(i.n)).filter(|r| usable(r, i, filters)).cloned())
            .collect();
        let missing: Vec<CyclotomicIndex> =
            chunk.iter().zip(&cached).filter(|(_, c)| c.is_none()).map(|(i, _)| i.clone()).collect();
        let mut fresh = par::map(cli.jobs(), missing, |i| heights::record_for(&i, filters)).into_iter();
        for hit in cached {
            let rec = match hit {
                Some(r) => r,
                None => {
                    let r = fresh.next().expect("one fresh record per miss");
                    if let Some(c) = cache.as_mut() {
                        c.append(&r)?;
                    }
                    r
                }
            };
            out.push(shape(rec, filters));
        }
        if let Some(c) = cache.as_mut() {
            c.flush()?;
        }
    }
    Ok(out)
}

fn decomposition<W: Write>(out: &mut W, n: u64) -> Result<Status> {
    let index = cyclo::analyze(n)?;
    let parts = decomp::build_decomposition(&index)?;
    let check = parts.check();
    let report = json!({
        "n": n,
        "primes": index.primes,
        "fstarHeight": check.fstar_height.to_string(),
        "spernerBound": check.sperner.to_string(),
        "fstarWithinBound": check.fstar_height <= check.sperner,
        "fstarDegree": parts.fstar.degree(),
        "partDegrees": parts.parts.iter().map(|p| p.degree()).collect::<Vec<_>>(),
        "congruence": check.congruence,
    });
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    eprintln!(
        "H(f*) = {} <= b_{} = {}: {}; congruence mod x^{n}: {}",
        check.fstar_height,
        index.omega - 2,
        check.sperner,
        check.fstar_height <= check.sperner,
        if check.congruence { "OK" } else { "FAILED" }
    );
    Ok(if check.ok() { Status::Clean } else { Status::Violation })
}

fn parse_rational(s: &str, what: &str) -> Result<BigRational> {
    let r: BigRational = s.trim().parse().map_err(|_| anyhow!("{what}: '{s}' is not a rational like 3/4"))?;
    Ok(r)
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn constants_report<W: Write>(
    out: &mut W,
    cli: &Cli,
    eps3: &str,
    d: &str,
    prime_box: u64,
    tol: f64,
    kmax: u64,
) -> Result<()> {
    let eps3 = parse_rational(eps3, "--eps3")?;
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if eps3 <= zero || eps3 > one {
        bail!("--eps3 must lie in (0, 1]");
    }
    let d_upper = bounds::d_upper(&eps3);
    let d = if d == "auto" { d_upper.clone() } else { parse_rational(d, "--d")? };
    if d <= zero {
        bail!("--d must be positive");
    }
    if !(tol.is_finite() && tol > 0.0) {
        bail!("--tol must be a positive number");
    }
    let tol = constants::tolerance_from_f64(tol);
    let empirical = bounds::empirical_d(prime_box, cli.jobs()).context("--prime-box")?;
    let rho = bounds::rho_enclosure(&tol);
    let c = bounds::constant_c(&eps3, &d, &tol);
    let seq = bounds::e_sequence(kmax, &eps3, &d, &tol, DIGITS);
    let chain = bounds::inv_epsilon_chain(kmax, &eps3, &d);
    let lower = bounds::lower_bound_c(kmax.max(5), &tol);

    let mut discrepancies = Vec::new();
    let e6 = seq.report.e[5].exact.clone().unwrap_or_default();
    if let Some(line) = &seq.report.e6_proof_line {
        discrepancies.push(format!(
            "e_6: the lemma gives {e6}; the proof line (9/16) eps3^3 d^2 gives {line}{}",
            if *line == e6 { "" } else { " (mismatch)" }
        ));
    }
    if let Some(k6) = chain.iter().find(|x| x.k == 6) {
        let text = k6.text_formula.clone().unwrap_or_default();
        let printed = k6.printed.clone().unwrap_or_else(|| "none".into());
        let flag = if k6.printed.as_deref().is_some_and(|p| p != text) { " (mismatch)" } else { "" };
        discrepancies.push(format!("eps_6^inv: (3/4) eps3^3 d = {text}; printed table value {printed}{flag}"));
    }
    discrepancies.push(
        "lower bound: printed as M_k^(-2^k) with limit prod p_j^(-2^(3-j)); computed as M_k^(-2^-k) with limit prod p_j^(-2^(-j-1))"
            .to_string(),
    );

    let (w, p, r) = empirical.witness;
    let report = json!({
        "eps3": rat_str(&eps3),
        "d": rat_str(&d),
        "dUpper": rat_str(&d_upper),
        "dEmpirical": {
            "value": rat_str(&empirical.value),
            "witness": [w, p, r],
            "triples": empirical.triples,
            "primeBox": prime_box,
            "withinUpper": empirical.value <= d_upper,
        },
        "rho": IntervalReport::new(&rho, DIGITS),
        "Cvalue": IntervalReport::new(&c, DIGITS),
        "eSeq": seq.report.e,
        "ESeq": seq.report.big_e,
        "eChecks": {
            "recursionHolds": seq.report.recursion_holds,
            "ratioIdentityHolds": seq.report.ratio_identity_holds,
            "trendMonotone": seq.report.trend_monotone,
            "logLimit": seq.report.log_limit,
            "logC": seq.report.log_c,
            "limitMeetsLogC": seq.report.limit_meets_log_c,
        },
        "invChain": chain,
        "MkSamples": constants::mk_samples(kmax as usize)
            .into_iter()
            .map(|(ps, m)| json!({"primes": ps, "Mk": m.to_string()}))
            .collect::<Vec<Value>>(),
        "lowerC": {
            "limit": IntervalReport::new(&lower.limit, DIGITS),
            "sequence": lower.sequence.iter().map(|i| IntervalReport::new(i, DIGITS)).collect::<Vec<_>>(),
            "decreasing": lower.decreasing,
            "primesUsed": lower.primes_used,
        },
        "discrepancies": discrepancies,
    });
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(())
}
