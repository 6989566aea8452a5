//! `polyideal`: command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 a verification failed.

use clap::{Parser, Subcommand, ValueEnum};
use polyideal::certificates::{
    chi_sweep, extraction_pipeline, knutson_certify, knutson_polynomial, konig_search,
    konig_search_with, polyomino_ideal, sn_partition, verify_konig, CertError, KonigCertificate,
    KonigSearchOutcome, KonigStrategy, DEFAULT_NODE_LIMIT,
};
use polyideal::grid::{classify, parse_auto, render, CellCollection, RenderFormat, Vertex};
use polyideal::groebner::{
    ideal_equal, reduced_groebner_basis, saturate_by_all_variables, Budget, GroebnerError,
    SaturationRoute,
};
use polyideal::harness::{batch_verify, cells_inline, enumerate_fixed, Claim, Filter, FIXED_POLYOMINO_COUNTS};
use polyideal::lattice::{exponent_lattice, is_prime_binomial, LatticeError};
use polyideal::polyring::{MonomialOrder, OrderScheme};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "polyideal", version, about = "Polyomino ideals: bases, primality and certificates")]
struct Cli {
    /// discussion, order6, or custom:<lex|grlex|grevlex>:(i,j)(i,j)... listing variables
    /// from smallest to largest. Unlisted variables rank above the listed ones.
    #[arg(long, global = true, default_value = "discussion")]
    order: String,
    #[arg(long, global = true, env = "POLYIDEAL_BUDGET_PAIRS")]
    budget_pairs: Option<u64>,
    #[arg(long, global = true, env = "POLYIDEAL_BUDGET_TERMS")]
    budget_terms: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Generic,
    Interval,
    WeaklyClosedTable,
    SimpleThinRecursive,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classification flags of a collection of cells.
    Classify { input: PathBuf },
    /// Generators of the polyomino ideal.
    Ideal { input: PathBuf },
    /// Reduced Gröbner basis under --order.
    Gb { input: PathBuf },
    /// Knutson certification report.
    Knutson {
        input: PathBuf,
        /// Also list the determinants f_k.
        #[arg(long)]
        factors: bool,
    },
    /// Search for a König certificate, or verify one given as JSON.
    Konig {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Lattice primality oracle and the monomial-saturation criterion.
    Prime { input: PathBuf },
    /// Extraction pipeline for Q minus Q'.
    Extract { outer: PathBuf, inner: PathBuf },
    /// Exhaustive check of the permutation property and the pairing of S_n.
    Chi {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Largest n for the pairing check.
        #[arg(long, default_value_t = 6)]
        partition_max_n: usize,
    },
    /// Enumerate fixed polyominoes, optionally verifying a claim on each.
    Enumerate {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        claim: Option<String>,
        #[arg(long)]
        filter: Option<String>,
        /// Print every instance.
        #[arg(long)]
        list: bool,
        /// Include wall time in the CSV.
        #[arg(long)]
        timing: bool,
    },
    /// Draw a collection as ascii art or svg.
    Render { input: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        if e.is_budget() {
            Failure::budget(e.to_string())
        } else {
            Failure::input(e.to_string())
        }
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        CertError::from(e).into()
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        CertError::from(e).into()
    }
}

/// A finished report and whether it should exit with code 3.
struct Report {
    body: String,
    failed: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut body = report.body;
            if !body.ends_with('\n') {
                body.push('\n');
            }
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(if report.failed { 3 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_cells(path: &Path) -> Result<CellCollection, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_auto(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn budget(cli: &Cli) -> Result<Budget, Failure> {
    let d = Budget::default();
    let pairs = cli.budget_pairs.unwrap_or(d.max_pairs);
    let terms = cli.budget_terms.unwrap_or(d.max_term_ops);
    if pairs == 0 || terms == 0 {
        return Err(Failure::input("budgets must be positive"));
    }
    Ok(Budget::new(pairs, terms))
}

fn parse_order(spec: &str) -> Result<MonomialOrder, Failure> {
    match spec {
        "discussion" => return Ok(MonomialOrder::column_major(OrderScheme::GradedRevLex)),
        "order6" => return Ok(MonomialOrder::row_major(OrderScheme::GradedRevLex)),
        _ => {}
    }
    let bad = || Failure::input(format!("unrecognised order {spec:?}"));
    let rest = spec.strip_prefix("custom:").ok_or_else(bad)?;
    let (scheme, vars) = rest.split_once(':').ok_or_else(bad)?;
    let scheme = match scheme {
        "lex" => OrderScheme::Lex,
        "grlex" => OrderScheme::GradedLex,
        "grevlex" => OrderScheme::GradedRevLex,
        _ => return Err(bad()),
    };
    let vars = vars.trim();
    if !vars.ends_with(')') {
        return Err(bad());
    }
    let mut ascending = Vec::new();
    for chunk in vars[..vars.len() - 1].split(')').map(str::trim) {
        let inner = chunk.strip_prefix('(').ok_or_else(bad)?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let i: i64 = i.trim().parse().map_err(|_| bad())?;
        let j: i64 = j.trim().parse().map_err(|_| bad())?;
        ascending.push(Vertex::try_new(i, j).ok_or_else(bad)?);
    }
    let distinct: std::collections::BTreeSet<Vertex> = ascending.iter().copied().collect();
    if ascending.is_empty() || distinct.len() != ascending.len() {
        return Err(bad());
    }
    Ok(MonomialOrder::explicit(ascending, scheme))
}

fn to_json(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("json values serialize")
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let budget = budget(cli)?;
    let order = parse_order(&cli.order)?;
    let json_mode = cli.format == Format::Json;
    if cli.format == Format::Svg && !matches!(cli.command, Command::Render { .. }) {
        return Err(Failure::input("svg output is only available for render"));
    }
    match &cli.command {
        Command::Classify { input } => {
            let p = read_cells(input)?;
            let r = classify(&p);
            if json_mode {
                return Ok(Report::ok(to_json(json!({ "cells": p.len(), "record": r }))));
            }
            let path = |x: &Option<Vec<polyideal::grid::Cell>>| match x {
                Some(cells) => cells
                    .iter()
                    .map(|c| format!("({},{})", c.i(), c.j()))
                    .collect::<Vec<_>>()
                    .join(" "),
                None => "none".into(),
            };
            let mut out = format!("cells: {}\n", p.len());
            for (k, v) in [
                ("polyomino", r.is_polyomino),
                ("thin", r.is_thin),
                ("row-convex", r.is_row_convex),
                ("column-convex", r.is_col_convex),
                ("convex", r.is_convex),
                ("parallelogram", r.is_parallelogram),
                ("ladder", r.is_ladder),
                ("simple", r.is_simple),
                ("thin-conditions", r.thin_thm51),
                ("thin-conditions-reflected", r.thin_reflected),
                ("thin-cellwise-intersections", r.thin_cellwise_intersections),
            ] {
                out.push_str(&format!("{k}: {v}\n"));
            }
            out.push_str(&format!("closed-path: {}\n", path(&r.closed_path)));
            out.push_str(&format!("weakly-closed-path: {}\n", path(&r.weakly_closed_path)));
            Ok(Report::ok(out))
        }
        Command::Ideal { input } => {
            let p = read_cells(input)?;
            let ideal = polyomino_ideal(&p);
            let lines: Vec<String> = ideal
                .binomials
                .iter()
                .map(|b| b.polynomial.to_text(&order))
                .collect();
            if json_mode {
                let gens: Vec<_> = ideal
                    .binomials
                    .iter()
                    .zip(&lines)
                    .map(|(b, text)| json!({ "interval": b.interval, "polynomial": text }))
                    .collect();
                return Ok(Report::ok(to_json(json!({ "count": lines.len(), "generators": gens }))));
            }
            Ok(Report::ok(format!("generators: {}\n{}", lines.len(), lines.join("\n"))))
        }
        Command::Gb { input } => {
            let p = read_cells(input)?;
            let ideal = polyomino_ideal(&p).presentation();
            if ideal.is_zero() {
                return Err(Failure::input("the collection has no inner intervals"));
            }
            let gb = reduced_groebner_basis(&ideal, &order, &budget)?;
            if json_mode {
                let elems: Vec<String> = gb.elements.iter().map(|g| g.to_text(&order)).collect();
                return Ok(Report::ok(to_json(json!({
                    "order": order.descriptor(),
                    "size": elems.len(),
                    "elements": elems,
                }))));
            }
            Ok(Report::ok(gb.to_text()))
        }
        Command::Knutson { input, factors } => {
            let p = read_cells(input)?;
            let report = knutson_certify(&p, &budget)?;
            let kp = if *factors { Some(knutson_polynomial(&p)?) } else { None };
            if json_mode {
                let mut value = serde_json::to_value(&report).expect("report serializes");
                if let Some(kp) = &kp {
                    value["factors"] = kp
                        .factors
                        .iter()
                        .map(|f| json!({ "k": f.block.k, "polynomial": f.polynomial.to_text(&kp.order) }))
                        .collect();
                }
                return Ok(Report::ok(to_json(value)));
            }
            let mut out = report.to_text();
            if let Some(kp) = &kp {
                for f in &kp.factors {
                    out.push_str(&format!("factor {}: {}\n", f.block.k, f.polynomial.to_text(&kp.order)));
                }
            }
            Ok(Report::ok(out))
        }
        Command::Konig {
            input,
            strategy,
            node_limit,
            verify,
        } => {
            let p = read_cells(input)?;
            if let Some(cert_path) = verify {
                let text = std::fs::read_to_string(cert_path).map_err(|e| {
                    Failure::input(format!("cannot read {}: {e}", cert_path.display()))
                })?;
                let bad = |e: serde_json::Error| Failure::input(format!("{}: {e}", cert_path.display()));
                // Accepts a bare certificate or the JSON written by a search.
                let mut value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
                if let Some(inner) = value.get_mut("certificate") {
                    value = inner.take();
                }
                let cert: KonigCertificate = serde_json::from_value(value).map_err(bad)?;
                let v = verify_konig(&p, &cert, &budget)?;
                let failed = !v.passed();
                let body = if json_mode {
                    to_json(json!({ "passed": v.passed(), "verification": v }))
                } else {
                    format!(
                        "inner-intervals: {}\ncount: {}\ncoprime: {}\nweights: {}\nheight: {}\npassed: {}\n",
                        v.inner_intervals, v.count_matches, v.coprime, v.weights_strict, v.height, v.passed()
                    )
                };
                return Ok(Report { body, failed });
            }
            let outcome = match strategy {
                StrategyArg::Auto => konig_search(&p, *node_limit)?,
                StrategyArg::Generic => konig_search_with(&p, KonigStrategy::Generic, *node_limit)?,
                StrategyArg::Interval => konig_search_with(&p, KonigStrategy::Interval, *node_limit)?,
                StrategyArg::WeaklyClosedTable => {
                    konig_search_with(&p, KonigStrategy::WeaklyClosedTable, *node_limit)?
                }
                StrategyArg::SimpleThinRecursive => {
                    konig_search_with(&p, KonigStrategy::SimpleThinRecursive, *node_limit)?
                }
            };
            match outcome {
                KonigSearchOutcome::Found(cert) => {
                    let v = verify_konig(&p, &cert, &budget)?;
                    let failed = !v.passed();
                    let body = if json_mode {
                        to_json(json!({ "certificate": cert, "verification": v }))
                    } else {
                        format!("found: true\n{}verified: {}\nheight: {}\n", cert.to_text(), v.passed(), v.height)
                    };
                    Ok(Report { body, failed })
                }
                KonigSearchOutcome::NodeLimit { nodes } => {
                    Err(Failure::budget(format!("node limit reached after {nodes} nodes")))
                }
                KonigSearchOutcome::Exhausted { nodes, complete } => {
                    let body = if json_mode {
                        to_json(json!({ "found": false, "nodes": nodes, "complete": complete }))
                    } else {
                        format!("found: false\nnodes: {nodes}\ncomplete: {complete}\n")
                    };
                    Ok(Report::ok(body))
                }
            }
        }
        Command::Prime { input } => {
            let p = read_cells(input)?;
            let ideal = polyomino_ideal(&p).presentation();
            let lattice = exponent_lattice(&ideal)?;
            let verdict = is_prime_binomial(&ideal, &budget)?;
            if verdict.is_inconclusive() {
                return Err(Failure::budget(verdict.to_string()));
            }
            let saturated = if ideal.is_zero() {
                true
            } else {
                let sat = saturate_by_all_variables(&ideal, SaturationRoute::Auto, &budget)?;
                ideal_equal(&ideal, &sat, &order, &budget)?
            };
            if json_mode {
                return Ok(Report::ok(to_json(json!({
                    "verdict": verdict,
                    "lattice_rank": lattice.rank(),
                    "saturation_index": lattice.saturation_index().to_string(),
                    "equals_monomial_saturation": saturated,
                }))));
            }
            Ok(Report::ok(format!(
                "verdict: {verdict}\nlattice-rank: {}\nsaturation-index: {}\nequals-monomial-saturation: {saturated}\n",
                lattice.rank(),
                lattice.saturation_index()
            )))
        }
        Command::Extract { outer, inner } => {
            let q = read_cells(outer)?;
            let qp = read_cells(inner)?;
            let r = extraction_pipeline(&q, &qp, &budget)?;
            if let Some(reason) = &r.skipped {
                return Err(Failure::budget(reason.clone()));
            }
            let failed = !r.passed();
            let body = if json_mode {
                to_json(json!({ "passed": r.passed(), "report": r }))
            } else {
                r.to_text()
            };
            Ok(Report { body, failed })
        }
        Command::Chi {
            max_n,
            partition_max_n,
        } => {
            if *max_n < 2 || *max_n > 9 || *partition_max_n > 8 {
                return Err(Failure::input("use 2 <= --max-n <= 9 and --partition-max-n <= 8"));
            }
            let rows = chi_sweep(*max_n).map_err(|e| Failure {
                code: 3,
                message: e.to_string(),
            })?;
            let mut pairs = Vec::new();
            for n in 2..=*partition_max_n {
                for l in 2..=n {
                    let ps = sn_partition(n, l).map_err(|e| Failure {
                        code: 3,
                        message: e.to_string(),
                    })?;
                    pairs.push((n, l, ps.len()));
                }
            }
            let total: usize = rows.iter().map(|r| r.checks).sum();
            if json_mode {
                let partitions: Vec<_> = pairs
                    .iter()
                    .map(|(n, l, k)| json!({ "n": n, "l": l, "pairs": k }))
                    .collect();
                return Ok(Report::ok(to_json(json!({
                    "all_hold": true,
                    "total_checks": total,
                    "rows": rows,
                    "partitions": partitions,
                }))));
            }
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!(
                    "n = {}: {} checks, case A {}, case B {}\n",
                    r.n, r.checks, r.case_a, r.case_b
                ));
            }
            out.push_str(&format!("all χ(n,l,σ) hold for 2 <= n <= {max_n} ({total} checks)\n"));
            for (n, l, k) in &pairs {
                out.push_str(&format!("pairing n = {n}, l = {l}: {k} disjoint pairs cover S_n\n"));
            }
            Ok(Report::ok(out))
        }
        Command::Enumerate {
            n_max,
            claim,
            filter,
            list,
            timing,
        } => {
            if *n_max == 0 || *n_max > FIXED_POLYOMINO_COUNTS.len() {
                return Err(Failure::input(format!(
                    "--n-max must be between 1 and {}",
                    FIXED_POLYOMINO_COUNTS.len()
                )));
            }
            if let Some(name) = claim {
                let claim: Claim = name.parse().map_err(|e: polyideal::harness::HarnessError| Failure::input(e.to_string()))?;
                let report = batch_verify(claim, *n_max, &budget).map_err(|e| Failure::input(e.to_string()))?;
                let failed = !report.passed();
                let mut body = if json_mode {
                    to_json(serde_json::to_value(&report).expect("report serializes"))
                } else {
                    report.to_csv(*timing)
                };
                if let (Some(f), false) = (&report.failure, json_mode) {
                    body.push_str(&format!("failure: n = {}, #{}: {} ({})\n", f.n, f.index, f.cells, f.detail));
                }
                return Ok(Report { body, failed });
            }
            let filter: Option<Filter> = filter
                .as_deref()
                .map(str::parse)
                .transpose()
                .map_err(Failure::input)?;
            let mut rows = Vec::new();
            let mut listing = Vec::new();
            for n in 1..=*n_max {
                let all = enumerate_fixed(n).map_err(|e| Failure::input(e.to_string()))?;
                if all.len() != FIXED_POLYOMINO_COUNTS[n - 1] {
                    return Err(Failure {
                        code: 3,
                        message: format!("count mismatch at n = {n}: {}", all.len()),
                    });
                }
                let kept: Vec<&CellCollection> = all
                    .iter()
                    .filter(|p| filter.is_none_or(|f| f.accepts(&classify(p))))
                    .collect();
                if *list {
                    listing.extend(kept.iter().map(|p| (n, cells_inline(p))));
                }
                rows.push((n, all.len(), kept.len()));
            }
            if json_mode {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|(n, total, kept)| json!({ "n": n, "total": total, "kept": kept }))
                    .collect();
                let listing: Vec<_> = listing.iter().map(|(n, c)| json!({ "n": n, "cells": c })).collect();
                return Ok(Report::ok(to_json(json!({ "rows": rows, "instances": listing }))));
            }
            let mut out = String::from("n,total,kept\n");
            for (n, total, kept) in &rows {
                out.push_str(&format!("{n},{total},{kept}\n"));
            }
            for (n, c) in &listing {
                out.push_str(&format!("{n}: {c}\n"));
            }
            Ok(Report::ok(out))
        }
        Command::Render { input } => {
            let p = read_cells(input)?;
            let format = if cli.format == Format::Svg {
                RenderFormat::Svg
            } else {
                RenderFormat::Ascii
            };
            if json_mode {
                return Ok(Report::ok(to_json(json!({
                    "cells": p.cells().iter().map(|c| [c.i(), c.j()]).collect::<Vec<_>>(),
                    "ascii": render(&p, None, RenderFormat::Ascii),
                }))));
            }
            Ok(Report::ok(render(&p, None, format)))
        }
    }
}
