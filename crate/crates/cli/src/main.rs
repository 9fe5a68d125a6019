//! `gradelab`: fine gradings of sl(3,C), their normalizers and binary
//! graded contractions, with exact arithmetic and JSON certificates.

use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gradelab_core::autgrp::{named, Automorphism};
use gradelab_core::catalog::{catalog, CatalogEntry};
use gradelab_core::contractions::{
    generate_equations, node_cap_from_env, solve_binary, symmetry_orbits, GradedStructure,
};
use gradelab_core::gradings::{AbelianGroup, BlockBracket, Grading};
use gradelab_core::json as wire;
use gradelab_core::normalizers::{
    det_z3, induced_permutation, linearize_on_labels, normalizes, quotient_group, DEFAULT_CLOSURE_CAP,
};
use gradelab_core::selfcheck;

#[derive(Parser)]
#[command(name = "gradelab", version, about = "Exact workbench for the fine gradings of sl(3,C)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Show, verify, label or coarsen a grading.
    #[command(subcommand)]
    Grading(GradingCmd),
    /// Normalizer membership and the quotient N(G)/G.
    #[command(subcommand)]
    Normalizer(NormalizerCmd),
    /// Binary graded contractions.
    #[command(subcommand)]
    Contract(ContractCmd),
    /// Run every golden check and report pass/fail per item.
    Selfcheck {
        /// Random assignments for the contraction oracle cross-check.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Random samples per substrate property.
        #[arg(long, default_value_t = 1_000)]
        substrate_samples: usize,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Catalog entry: g1, g2, g3 or g4.
    #[arg(long)]
    catalog: Option<String>,
    /// Grading JSON file, or `-` for standard input.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args, Clone)]
struct CatalogArg {
    /// Catalog entry: g1, g2, g3 or g4.
    #[arg(long)]
    catalog: String,
}

#[derive(Subcommand)]
enum GradingCmd {
    Show(Source),
    Verify(Source),
    /// Search for a labeling by a finite abelian group.
    Label {
        #[command(flatten)]
        source: Source,
        /// Cyclic orders, e.g. `7` or `3,3`.
        #[arg(long)]
        group: String,
    },
    /// Merge parts, e.g. `--partition "0,1;2;3,4,5,6"`.
    Coarsen {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        partition: String,
    },
}

#[derive(Subcommand)]
enum NormalizerCmd {
    /// Membership of an automorphism in N(G) and its induced permutation.
    Check {
        #[command(flatten)]
        catalog: CatalogArg,
        /// Named automorphism (AdB1, AdB2, AdH, AdS, AdD, AdP, AdQ, OutI) or `@file.json`.
        #[arg(long)]
        auto: String,
    },
    Quotient(CatalogArg),
    Inner(CatalogArg),
    /// Matrices over Z_3 of the inner quotient elements (Z_3 x Z_3 labels).
    Linearize {
        #[command(flatten)]
        catalog: CatalogArg,
        /// Linearize a single automorphism instead of the inner subquotient.
        #[arg(long)]
        auto: Option<String>,
    },
}

#[derive(Subcommand)]
enum ContractCmd {
    Equations(CatalogArg),
    Solve {
        #[command(flatten)]
        catalog: CatalogArg,
        /// Also classify solutions into normalizer orbits.
        #[arg(long)]
        orbits: bool,
        /// Solver threads; results do not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Structured result plus its table rendering. `ok = false` marks a
/// negative verdict (exit status 1).
struct Report {
    inputs: Value,
    result: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => {
                    let doc = json!({
                        "command": argv,
                        "inputs": report.inputs,
                        "result": report.result,
                        "status": if report.ok { "ok" } else { "negative" },
                    });
                    emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")));
                }
                Format::Table => emit(&report.text),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Grading(g) => grading(g),
        Command::Normalizer(n) => normalizer(n),
        Command::Contract(c) => contract(c),
        Command::Selfcheck {
            samples,
            substrate_samples,
        } => run_selfcheck(*samples, *substrate_samples),
    }
}

fn load_catalog(name: &str) -> Result<CatalogEntry> {
    catalog(name).with_context(|| format!("loading catalog entry `{name}`"))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Loads a grading and describes where it came from.
fn load_grading(src: &Source) -> Result<(Grading, Value)> {
    if let Some(name) = &src.catalog {
        return Ok((load_catalog(name)?.grading, json!({"catalog": name})));
    }
    let path = src.input.as_deref().expect("clap enforces one source");
    let mut bytes = Vec::new();
    if path == "-" {
        std::io::stdin().read_to_end(&mut bytes).context("reading standard input")?;
    } else {
        bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
    }
    let doc: Value = serde_json::from_slice(&bytes).context("parsing grading JSON")?;
    // accept a bare grading or a report produced by `grading show`
    let g = doc
        .pointer("/result/grading")
        .or_else(|| doc.get("grading"))
        .unwrap_or(&doc);
    let grading = wire::grading_from_json(g).context("decoding grading")?;
    Ok((grading, json!({"input": path, "sha256": sha256_hex(&bytes)})))
}

fn label_text(g: &Grading, i: usize) -> String {
    g.labeling()
        .map_or_else(|| "-".into(), |l| AbelianGroup::format_element(&l.labels[i]))
}

fn grading(cmd: &GradingCmd) -> Result<Report> {
    match cmd {
        GradingCmd::Show(src) => {
            let (g, inputs) = load_grading(src)?;
            let alg = g.algebra().clone();
            let mut text = format!("sl({}) grading with {} parts\n", alg.n(), g.part_count());
            if let Some(l) = g.labeling() {
                text.push_str(&format!("labels in {}\n", l.group));
            }
            text.push_str(&format!("{:<4}{:<10}{:<5}{:<10}span\n", "#", "name", "dim", "label"));
            let mut parts = Vec::new();
            for (i, (name, p)) in g.names().iter().zip(g.parts()).enumerate() {
                let span: Vec<String> = p.basis().iter().map(|v| alg.format_element(v)).collect();
                text.push_str(&format!(
                    "{:<4}{:<10}{:<5}{:<10}{}\n",
                    i,
                    name,
                    p.dim(),
                    label_text(&g, i),
                    span.join(", ")
                ));
                parts.push(json!({"name": name, "dim": p.dim(), "span": span}));
            }
            Ok(Report {
                inputs,
                result: json!({"grading": wire::grading_to_json(&g), "parts": parts}),
                text,
                ok: true,
            })
        }
        GradingCmd::Verify(src) => {
            let (g, inputs) = load_grading(src)?;
            let check = g.verify();
            let violation = check.violation();
            let table: Vec<Vec<Value>> = check
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|b| match b {
                            BlockBracket::Zero => Value::Null,
                            BlockBracket::Into(k) => json!(k),
                            BlockBracket::Spread => json!("spread"),
                        })
                        .collect()
                })
                .collect();
            let mut text = format!("grading axiom: {}\n", check.is_grading());
            if let Some((i, j)) = violation {
                text.push_str(&format!(
                    "[{}, {}] is not inside a single part\n",
                    g.names()[i],
                    g.names()[j]
                ));
            }
            let mut result = json!({
                "is_grading": check.is_grading(),
                "violation": violation.map(|(i, j)| json!([i, j])),
                "bracket_table": table,
            });
            let mut ok = check.is_grading();
            if let Some(l) = g.labeling() {
                let bad = g.labeling_violation(&l.group, &l.labels)?;
                text.push_str(&format!("labeling by {}: {}\n", l.group, bad.is_none()));
                if let Some((i, j)) = bad {
                    text.push_str(&format!(
                        "[{}, {}] is not inside the part labeled by the sum\n",
                        g.names()[i],
                        g.names()[j]
                    ));
                }
                result["labeling_verified"] = json!(bad.is_none());
                result["labeling_violation"] = json!(bad.map(|(i, j)| [i, j]));
                ok &= bad.is_none();
            }
            Ok(Report {
                inputs,
                result,
                text,
                ok,
            })
        }
        GradingCmd::Label { source, group } => {
            let (g, inputs) = load_grading(source)?;
            let orders: Vec<u32> = group
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| anyhow!("bad group order `{s}`")))
                .collect::<Result<_>>()?;
            let group = AbelianGroup::new(orders)?;
            let labels = g.search_labeling(&group);
            let mut text = format!("labeling by {group}: ");
            match &labels {
                Some(ls) => {
                    text.push_str("found\n");
                    for (name, l) in g.names().iter().zip(ls) {
                        text.push_str(&format!("  {name:<10}{}\n", AbelianGroup::format_element(l)));
                    }
                }
                None => text.push_str("none\n"),
            }
            Ok(Report {
                inputs,
                result: json!({"group": group.orders(), "labels": labels}),
                text,
                ok: labels.is_some(),
            })
        }
        GradingCmd::Coarsen { source, partition } => {
            let (g, inputs) = load_grading(source)?;
            let blocks: Vec<Vec<usize>> = partition
                .split(';')
                .map(|b| {
                    b.split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| s.trim().parse().map_err(|_| anyhow!("bad part index `{s}`")))
                        .collect()
                })
                .collect::<Result<_>>()?;
            let coarse = g.coarsen(&blocks)?;
            let check = coarse.verify();
            let mut text = format!("{} parts, dims {:?}\n", coarse.part_count(), coarse.dims());
            text.push_str(&format!("grading axiom: {}\n", check.is_grading()));
            if let Some((i, j)) = check.violation() {
                text.push_str(&format!(
                    "[{}, {}] is not inside a single part\n",
                    coarse.names()[i],
                    coarse.names()[j]
                ));
            }
            Ok(Report {
                inputs,
                result: json!({
                    "grading": wire::grading_to_json(&coarse),
                    "is_grading": check.is_grading(),
                    "violation": check.violation().map(|(i, j)| json!([i, j])),
                }),
                text,
                ok: true,
            })
        }
    }
}

fn parse_auto(entry: &CatalogEntry, spec: &str) -> Result<(Automorphism, Value)> {
    let alg = entry.grading.algebra();
    if let Some(path) = spec.strip_prefix('@') {
        let bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
        let v: Value = serde_json::from_slice(&bytes).context("parsing automorphism JSON")?;
        let a = wire::automorphism_from_json(alg, &v)?;
        return Ok((a, json!({"input": path, "sha256": sha256_hex(&bytes)})));
    }
    Ok((named::lookup(alg, spec)?, json!(spec)))
}

fn normalizer(cmd: &NormalizerCmd) -> Result<Report> {
    match cmd {
        NormalizerCmd::Check { catalog, auto } => {
            let e = load_catalog(&catalog.catalog)?;
            let (a, auto_input) = parse_auto(&e, auto)?;
            let alg = e.grading.algebra();
            let member = normalizes(alg, &a, &e.mad);
            let perm = induced_permutation(&a, &e.grading);
            let mut text = format!("{auto} normalizes {}: {member}\n", e.mad.name);
            let perm_json = match &perm {
                Ok(p) => {
                    text.push_str(&format!("induced permutation: {}\n", p.cycle_notation()));
                    wire::permutation_to_json(p)
                }
                Err(err) => {
                    text.push_str(&format!("induced permutation: none ({err})\n"));
                    Value::Null
                }
            };
            Ok(Report {
                inputs: json!({"catalog": catalog.catalog, "auto": auto_input}),
                result: json!({
                    "automorphism": wire::automorphism_to_json(&a),
                    "normalizes": member,
                    "permutation": perm_json,
                }),
                text,
                ok: member,
            })
        }
        NormalizerCmd::Quotient(c) => {
            let e = load_catalog(&c.catalog)?;
            let q = quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
            let profile = q.group.order_profile();
            let mut text = format!(
                "N({0})/{0}: order {1}, exponent {2}\n",
                e.mad.name,
                q.order(),
                q.group.exponent()
            );
            text.push_str(&format!("element orders: {profile:?}\n"));
            let mut gens = Vec::new();
            for ((name, _), p) in e.normalizer_generators.iter().zip(&q.group.generators) {
                text.push_str(&format!("  {name:<6}{}\n", p.cycle_notation()));
                gens.push(json!({"name": name, "permutation": wire::permutation_to_json(p)}));
            }
            let elements: Vec<Value> = q
                .elements
                .iter()
                .map(|el| {
                    json!({
                        "permutation": wire::permutation_to_json(&el.permutation),
                        "order": el.permutation.order(),
                        "kinds": el.kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>(),
                        "word": el.word,
                    })
                })
                .collect();
            Ok(Report {
                inputs: json!({"catalog": c.catalog}),
                result: json!({
                    "order": q.order(),
                    "exponent": q.group.exponent(),
                    "order_profile": profile.iter().map(|(k, v)| (k.to_string(), *v)).collect::<std::collections::BTreeMap<_, _>>(),
                    "generators": gens,
                    "elements": elements,
                }),
                text,
                ok: true,
            })
        }
        NormalizerCmd::Inner(c) => {
            let e = load_catalog(&c.catalog)?;
            let q = quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
            let inner = q.inner();
            let mut text = format!("inner part of N({0})/{0}: order {1}\n", e.mad.name, inner.order());
            for p in &inner.elements {
                text.push_str(&format!("  {}\n", p.cycle_notation()));
            }
            Ok(Report {
                inputs: json!({"catalog": c.catalog}),
                result: json!({
                    "order": inner.order(),
                    "elements": inner.elements.iter().map(wire::permutation_to_json).collect::<Vec<_>>(),
                }),
                text,
                ok: true,
            })
        }
        NormalizerCmd::Linearize { catalog, auto } => {
            let e = load_catalog(&catalog.catalog)?;
            let perms = match auto {
                Some(spec) => vec![induced_permutation(&parse_auto(&e, spec)?.0, &e.grading)?],
                None => {
                    quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?
                        .inner()
                        .elements
                }
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut all = true;
            for p in &perms {
                let m = linearize_on_labels(p, &e.grading);
                all &= m.is_some();
                match m {
                    Some(m) => text.push_str(&format!(
                        "{:<28}[[{} {}] [{} {}]] det {}\n",
                        p.cycle_notation(),
                        m[0][0],
                        m[0][1],
                        m[1][0],
                        m[1][1],
                        det_z3(&m)
                    )),
                    None => text.push_str(&format!("{:<28}not linear\n", p.cycle_notation())),
                }
                rows.push(json!({
                    "permutation": wire::permutation_to_json(p),
                    "matrix": m,
                    "det": m.map(|m| det_z3(&m)),
                }));
            }
            let distinct: std::collections::BTreeSet<_> = perms
                .iter()
                .filter_map(|p| linearize_on_labels(p, &e.grading))
                .collect();
            let is_sl2 = auto.is_none() && distinct == selfcheck::sl2_z3();
            if auto.is_none() {
                text.push_str(&format!("image equals SL(2,Z3): {is_sl2}\n"));
            }
            Ok(Report {
                inputs: json!({"catalog": catalog.catalog, "auto": auto}),
                result: json!({"matrices": rows, "equals_sl2_z3": auto.is_none().then_some(is_sl2)}),
                text,
                ok: all,
            })
        }
    }
}

fn contract(cmd: &ContractCmd) -> Result<Report> {
    match cmd {
        ContractCmd::Equations(c) => {
            let e = load_catalog(&c.catalog)?;
            let sys = generate_equations(&e.grading)?;
            let names = e.grading.names();
            let eps = |v: usize| {
                let (i, j) = sys.pairs.pair(v);
                format!("e({},{})", names[i], names[j])
            };
            let mut text = format!(
                "{} variables, {} equations, {} free variables, {} inert triples\n",
                sys.variable_count(),
                sys.relations.len(),
                sys.free_variables().len(),
                sys.inert_triples.len()
            );
            for r in &sys.relations {
                text.push_str(&format!(
                    "  {} {} = {} {}\n",
                    eps(r.lhs.0),
                    eps(r.lhs.1),
                    eps(r.rhs.0),
                    eps(r.rhs.1)
                ));
            }
            Ok(Report {
                inputs: json!({"catalog": c.catalog}),
                result: wire::equations_to_json(&sys),
                text,
                ok: true,
            })
        }
        ContractCmd::Solve { catalog, orbits, jobs } => {
            let e = load_catalog(&catalog.catalog)?;
            let gs = GradedStructure::new(&e.grading)?;
            let sys = gradelab_core::contractions::equations_for(&gs);
            let sol = solve_binary(&sys, node_cap_from_env(), *jobs)?;
            let mut text = format!(
                "{} solutions = {} core x 2^{} free ({} of {} pairs have nonzero bracket)\n",
                sol.total(),
                sol.core.len(),
                sol.free.len(),
                gs.active_pairs().len(),
                sys.variable_count()
            );
            let orbit_list = if *orbits {
                let q = quotient_group(&e.mad, &e.grading, &e.normalizer_generators, DEFAULT_CLOSURE_CAP)?;
                let list = symmetry_orbits(&sol, &q.group)?;
                let mut sizes = std::collections::BTreeMap::new();
                for o in &list {
                    *sizes.entry(o.size).or_insert(0usize) += 1;
                }
                text.push_str(&format!(
                    "{} orbits of core solutions under N({1})/{1} (order {2})\n",
                    list.len(),
                    e.mad.name,
                    q.order()
                ));
                for (size, count) in sizes {
                    text.push_str(&format!("  size {size:<4}{count}\n"));
                }
                Some(list)
            } else {
                None
            };
            Ok(Report {
                inputs: json!({"catalog": catalog.catalog}),
                result: wire::solutions_to_json(&sol, orbit_list.as_deref()),
                text,
                ok: true,
            })
        }
    }
}

fn run_selfcheck(samples: usize, substrate_samples: usize) -> Result<Report> {
    if samples == 0 && substrate_samples == 0 {
        bail!("nothing to sample");
    }
    let cfg = selfcheck::Config {
        oracle_samples: samples,
        substrate_samples,
        node_cap: node_cap_from_env(),
        ..selfcheck::Config::default()
    };
    let outcomes = selfcheck::run_all(&cfg);
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&format!(
            "[{}] {}. {}: {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        ));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
    Ok(Report {
        inputs: json!({"samples": samples, "substrate_samples": substrate_samples}),
        result: Value::Array(
            outcomes
                .iter()
                .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
                .collect(),
        ),
        text,
        ok: passed == outcomes.len(),
    })
}
