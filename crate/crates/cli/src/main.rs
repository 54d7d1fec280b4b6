//! `hfree`: build, verify and classify modules free of rank one over U(h).
//!
//! Exit codes: 0 success / holds / Nonempty, 1 refuted / Empty / fails, 2 usage or input error.

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hfree::cartan::Gcm;
use hfree::classify::{decide, refute_affine_loop, restriction_obstruction, search_rank2, DecideOptions, LoopModel, ObstructionOutcome, Rank2Verdict, Restriction, Verdict};
use hfree::exec::{configure_threads_from_env, Exec};
use hfree::idealsolve::{buchberger, is_unsat, PolySystem, Satisfiability};
use hfree::modfam::{build_from_params, FamilyParams, HFreeModule};
use hfree::verify::{load_verified, simplicity_probe};
use hfree::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "hfree", version, about = "Exact construction, verification and classification of U(h)-free Kac-Moody modules")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Run on one thread regardless of HFREE_THREADS.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether H(g) is empty. Exit 0 Nonempty, 1 Empty.
    Classify {
        /// File with {"matrix": [[...]]} or a bare matrix.
        gcm: String,
        /// Skip the supporting computations attached to the evidence.
        #[arg(long)]
        no_certify: bool,
    },
    /// Build a family member and print it as a module certificate.
    Build {
        #[arg(long, value_parser = ["A", "B2", "C", "sl2z"])]
        family: String,
        /// Parameter file, or inline JSON.
        #[arg(long)]
        params: String,
    },
    /// Check every defining relation of a module. Exit 0 iff all hold.
    Verify { module: String },
    /// Reduce a polynomial to a nonzero constant with generator actions. Exit 0 on success, 1 inconclusive.
    ProbeSimplicity {
        module: String,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
    },
    /// Bounded search over rank-2 modules. Exit 0 if a known family survives, 1 if refuted.
    SearchRank2 {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Bounded refutation of the loop-bracket identities. Exit 1 when refuted.
    RefuteAffine {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Keep h_1 and K as variables instead of specializing them.
        #[arg(long)]
        full: bool,
    },
    /// Compare the degree signatures of two restrictions. Exit 1 when obstructed.
    Obstruct {
        gcm: String,
        /// Generator index (1-based).
        #[arg(long)]
        gen: usize,
        /// Variable index (1-based).
        #[arg(long)]
        var: usize,
        /// Removed vertices of the two restrictions, e.g. `3,1`; `2+3` removes both.
        #[arg(long)]
        restrict: String,
    },
    /// Reduced Groebner basis and satisfiability of a polynomial system.
    Groebner { system: String },
}

/// Exit status plus the JSON result and its text rendering.
struct Outcome {
    code: u8,
    json: Value,
    text: String,
}

fn read_json(path: &str) -> Result<Value> {
    let text = if path.trim_start().starts_with('{') || path.trim_start().starts_with('[') {
        path.to_string()
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("{path}: malformed JSON"))
}

fn read_gcm(path: &str) -> Result<Gcm> {
    let v = read_json(path)?;
    let rows = match &v {
        Value::Array(_) => v.clone(),
        Value::Object(m) => m.get("matrix").cloned().ok_or_else(|| anyhow!("{path}: missing field `matrix`"))?,
        _ => bail!("{path}: expected an object with field `matrix`"),
    };
    let a: Vec<Vec<i64>> = serde_json::from_value(rows).with_context(|| format!("{path}: field `matrix` must be a square array of integers"))?;
    Gcm::new(a).with_context(|| format!("{path}: field `matrix`"))
}

fn one_based(k: usize, n: usize, what: &str) -> Result<usize> {
    if k == 0 || k > n {
        bail!("{what} {k} out of range 1..={n}");
    }
    Ok(k - 1)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::best() };
    match &cli.cmd {
        Cmd::Classify { gcm, no_certify } => {
            let g = read_gcm(gcm)?;
            let d = decide(&g, DecideOptions { certify: !no_certify, exec })?;
            let mut text = format!("{} ({})\n", d.verdict.name(), d.cartan_type);
            if let Some(f) = &d.family {
                text += &format!("family: {f}\n");
            }
            for e in &d.evidence {
                text += &format!("[{}] {}\n", e.rule, e.citation);
            }
            Ok(Outcome { code: if d.verdict == Verdict::Nonempty { 0 } else { 1 }, json: d.to_json(), text })
        }
        Cmd::Build { family, params } => {
            let p: FamilyParams = serde_json::from_value(read_json(params)?).context("params")?;
            let m = build_from_params(family, &p)?;
            Ok(Outcome { code: 0, text: module_text(&m), json: m.to_json() })
        }
        Cmd::Verify { module } => {
            let (m, report) = load_verified(&read_json(module)?, exec)?;
            let mut text = format!("{} relations on a rank-{} module: {}\n", report.residuals.len(), m.rank(), if report.holds() { "all hold" } else { "FAIL" });
            for r in report.failures() {
                text += &format!("{}{}: {}\n", r.name, if r.advisory { " (advisory)" } else { "" }, r.residual.render());
            }
            let mut j = report.to_json();
            j["version"] = json!(hfree::VERSION);
            Ok(Outcome { code: if report.holds() { 0 } else { 1 }, json: j, text })
        }
        Cmd::ProbeSimplicity { module, poly, max_steps } => {
            let m = HFreeModule::from_json(&read_json(module)?)?;
            let g = MultiPoly::parse(m.ctx(), poly).context("--poly")?;
            let trace = simplicity_probe(&m, &g, *max_steps)?;
            let text = format!("{} after {} steps: {}\n", if trace.succeeded() { "constant reached" } else { "inconclusive" }, trace.steps.len(), trace.terminal.render());
            let mut j = trace.to_json();
            j["version"] = json!(hfree::VERSION);
            j["input"] = json!(g.render());
            Ok(Outcome { code: if trace.succeeded() { 0 } else { 1 }, json: j, text })
        }
        Cmd::SearchRank2 { r, s, bound } => {
            let res = search_rank2(*r, *s, *bound, exec)?;
            let mut text = format!("A({r},{s}) rs = {}, bound {bound}: {}\n", r * s, res.verdict_name());
            for (s1, s2, b, c) in res.witnesses() {
                text += &format!("shapes ({s1},{s2}): b = {b}, c = {c}\n");
            }
            let code = if matches!(res.verdict, Rank2Verdict::Unsat) { 1 } else { 0 };
            Ok(Outcome { code, json: res.to_json(), text })
        }
        Cmd::RefuteAffine { k, j, bound, full } => {
            let model = if *full { LoopModel::Full } else { LoopModel::Specialized };
            let res = refute_affine_loop(*k, *j, *bound, model)?;
            let text = format!("k = {k}, j = {j}, bound {bound}: {} ({} unknowns, {} equations)\n", res.verdict_name(), res.unknowns, res.equations);
            Ok(Outcome { code: if res.unsat { 1 } else { 0 }, json: res.to_json(), text })
        }
        Cmd::Obstruct { gcm, gen, var, restrict } => {
            let g = read_gcm(gcm)?;
            let n = g.size();
            let i = one_based(*gen, n, "--gen")?;
            let j = one_based(*var, n, "--var")?;
            let parts: Vec<&str> = restrict.split(',').collect();
            if parts.len() != 2 {
                bail!("--restrict: expected two restrictions K1,K2");
            }
            let mut rs = Vec::new();
            for p in parts {
                let removed = p
                    .split('+')
                    .map(|k| k.trim().parse::<usize>().map_err(|_| anyhow!("--restrict: `{k}` is not a vertex")).and_then(|k| one_based(k, n, "--restrict vertex")))
                    .collect::<Result<Vec<_>>>()?;
                rs.push(Restriction { removed, pin: None });
            }
            let rep = restriction_obstruction(&g, i, j, [rs[0].clone(), rs[1].clone()], exec)?;
            let mut text = String::new();
            for s in &rep.sides {
                if let Some(p) = &s.pin {
                    text += &format!("{}: b pinned via {} on generator {}\n", s.restriction, p.source, p.generator + 1);
                }
                for sig in &s.signatures {
                    text += &format!("{}: {}\n", sig.restriction, sig.render_pairs());
                }
            }
            match &rep.outcome {
                ObstructionOutcome::Obstructed { reason } => text += &format!("Obstructed: {reason}\n"),
                ObstructionOutcome::Compatible { .. } => {
                    let bs: Vec<String> = [0, 1].iter().flat_map(|&s| rep.unified_b(s)).map(|b| b.render()).collect();
                    text += &format!("Compatible: b = {}\n", bs.join(" | "));
                }
            }
            Ok(Outcome { code: if rep.obstructed() { 1 } else { 0 }, json: rep.to_json(), text })
        }
        Cmd::Groebner { system } => {
            let text_in = if system.trim_start().starts_with('{') { system.clone() } else { fs::read_to_string(system).with_context(|| format!("cannot read {system}"))? };
            let sys = PolySystem::from_json(&text_in)?;
            let gb = buchberger(&sys.equations)?;
            let sat = is_unsat(&sys)?;
            let verdict = match sat {
                Satisfiability::Unsat => "Unsat",
                Satisfiability::PossiblySat(_) => "PossiblySat",
            };
            let basis = gb.render();
            let text = format!("basis: [{}]\n{verdict}\n", basis.join(", "));
            Ok(Outcome { code: 0, json: json!({"version": hfree::VERSION, "basis": basis, "satisfiability": verdict}), text })
        }
    }
}

fn module_text(m: &HFreeModule) -> String {
    let mut s = format!("family {} rank {}\n", m.family, m.rank());
    for i in 0..m.rank() {
        s += &format!("E_{} = {}\nF_{} = {}\n", i + 1, m.e_poly(i).render(), i + 1, m.f_poly(i).render());
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.sequential {
        configure_threads_from_env();
    }
    match run(&cli) {
        Ok(o) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
                Format::Text => print!("{}", o.text),
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
