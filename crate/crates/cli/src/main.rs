//! Command-line front end for the sl(∞) weight-module classifier.
//!
//! Commands read a JSON descriptor file and report classification results,
//! block decompositions, exhaustion chains, or run the exact matrix
//! verification suite. Every report exists in a human-readable text form
//! and a machine-readable JSON form mirroring it one-to-one.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use slinf_core::classify;
use slinf_core::descriptor::DescriptorDocument;
use slinf_core::finrep;
use slinf_core::modmodel::{AttachSide, ModuleDescriptor};
use slinf_core::oracle;
use slinf_core::weights::FiniteWeight;
use slinf_core::Error;

#[derive(Parser)]
#[command(name = "slinf", version, about = "Simple integrable weight sl(∞)-modules: classification and exact verification", disable_help_subcommand = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Dimension cap; defaults to 10000 for character computations and 200
    /// for matrix constructions.
    #[arg(long, global = true)]
    dim_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the module in a descriptor file.
    Classify { file: String },
    /// Print the character table of the simple sl(n)-module with the given
    /// highest weight (n coordinates, e.g. `support 2 0 -2`).
    Support {
        n: usize,
        #[arg(allow_hyphen_values = true, num_args = 1.., required = true)]
        weights: Vec<String>,
    },
    /// Print the block decomposition stored in a descriptor file.
    Blocks { file: String },
    /// Print the exhaustion chain of a descriptor file up to step k.
    Exhaust {
        file: String,
        #[arg(long)]
        k: usize,
    },
    /// Cross-check a descriptor against the exact matrix oracle.
    Verify {
        file: String,
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 1,
        Error::Domain(_) | Error::Validation(_) | Error::Decomposition(_) | Error::Unsupported(_) => {
            2
        }
        Error::Resource(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version requests are successes, not usage errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let dim_cap = cli.dim_cap.unwrap_or(finrep::DEFAULT_DIM_CAP);
    let oracle_cap = cli.dim_cap.unwrap_or(oracle::DEFAULT_ORACLE_CAP);
    let report = match &cli.command {
        Command::Classify { file } => cmd_classify(&load(file)?, dim_cap)?,
        Command::Support { n, weights } => cmd_support(*n, weights, dim_cap)?,
        Command::Blocks { file } => cmd_blocks(&load(file)?)?,
        Command::Exhaust { file, k } => cmd_exhaust(&load(file)?, *k, dim_cap)?,
        Command::Verify { file, level } => cmd_verify(&load(file)?, *level, dim_cap, oracle_cap)?,
    };
    emit(&report.body, cli.format);
    Ok(ExitCode::from(report.exit))
}

struct Report {
    body: Value,
    exit: u8,
}

fn ok(body: Value) -> Report {
    Report { body, exit: 0 }
}

fn load(path: &str) -> Result<ModuleDescriptor, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    DescriptorDocument::from_json(&text)?.to_descriptor()
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => {
            let mut out = String::new();
            render_text(v, "", &mut out);
            print!("{out}");
        }
    }
}

/// Deterministic text rendering mirroring the JSON one-to-one: one dotted
/// path per leaf value.
fn render_text(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let sub = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                render_text(val, &sub, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{path} = []\n"));
            }
            for (i, val) in items.iter().enumerate() {
                render_text(val, &format!("{path}[{i}]"), out);
            }
        }
        Value::Null => out.push_str(&format!("{path} = -\n")),
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}

fn validated(d: &ModuleDescriptor, dim_cap: u64) -> Result<(), Error> {
    let report = d.validate(dim_cap)?;
    if !report.is_valid() {
        return Err(Error::Validation(report.violations.join("; ")));
    }
    Ok(())
}

fn cmd_classify(d: &ModuleDescriptor, dim_cap: u64) -> Result<Report, Error> {
    validated(d, dim_cap)?;
    let nonzero = classify::annihilator_nonzero(d)?;
    let tag = classify::annihilator_tag(d)?;
    let mut body = json!({
        "annihilator_nonzero": nonzero,
        "tag": tag,
        "tag_display": tag.to_string(),
    });
    let obj = body.as_object_mut().unwrap();
    match d {
        ModuleDescriptor::Vp { .. } => {
            let lam = d.limit_weight()?;
            let mu = d.limit_mu()?;
            obj.insert("lambda".into(), json!(lam.to_string()));
            obj.insert(
                "mu_tail_class".into(),
                json!(mu.tail_class().to_string()),
            );
            let hw = classify::is_highest_weight(d)?;
            obj.insert("highest_weight".into(), json!(hw));
            let b = classify::is_bounded(d)?;
            obj.insert("bounded".into(), json!(b));
        }
        ModuleDescriptor::SymLimit { .. } => {
            obj.insert("variant".into(), json!("symmetric-power limit"));
        }
    }
    Ok(ok(body))
}

fn cmd_support(n: usize, weights: &[String], dim_cap: u64) -> Result<Report, Error> {
    let mut coords = Vec::new();
    for w in weights {
        for piece in w
            .split(|c: char| c == ',' || c == '(' || c == ')' || c.is_whitespace())
            .filter(|p| !p.is_empty())
        {
            let x: i64 = piece
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate {piece:?}")))?;
            coords.push(x);
        }
    }
    if coords.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} coordinates, got {}",
            coords.len()
        )));
    }
    let w = FiniteWeight::new(coords)?;
    let table = finrep::freudenthal_character(&w, dim_cap)?;
    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|(wt, m)| {
            json!({
                "weight": FiniteWeight::new(wt.clone()).unwrap().to_string(),
                "multiplicity": m,
            })
        })
        .collect();
    Ok(ok(json!({
        "highest": w.to_string(),
        "dimension": table.dimension(),
        "weights": entries,
    })))
}

fn block_value(b: &slinf_core::modmodel::Block) -> Value {
    json!({
        "lam": b.lam().to_string(),
        "mu": b.mu().map(|m| m.to_string()),
    })
}

fn cmd_blocks(d: &ModuleDescriptor) -> Result<Report, Error> {
    let ModuleDescriptor::Vp { order, blocks } = d else {
        return Err(Error::Unsupported(
            "the symmetric-power limit has no block decomposition".into(),
        ));
    };
    let period_value = |p: &slinf_core::modmodel::PeriodicBlocks| {
        json!({
            "pattern": p.pattern().iter().map(block_value).collect::<Vec<_>>(),
            "offset": p.offset(),
        })
    };
    let mut body = json!({
        "order": format!("{:?}", order.kind()),
        "prefix": blocks.prefix().iter().map(block_value).collect::<Vec<_>>(),
        "lambda": d.limit_weight()?.to_string(),
    });
    let obj = body.as_object_mut().unwrap();
    if let Some(g) = blocks.left_group() {
        obj.insert("left_period".into(), period_value(g));
    }
    if let Some(g) = blocks.right_group() {
        obj.insert("right_period".into(), period_value(g));
    }
    if order.kind() == slinf_core::orders::OrderKind::TwoSided {
        obj.insert("prefix_start".into(), json!(blocks.prefix_start()));
    }
    Ok(ok(body))
}

fn cmd_exhaust(d: &ModuleDescriptor, k: usize, dim_cap: u64) -> Result<Report, Error> {
    validated(d, dim_cap)?;
    let steps = d.exhaustion(k)?;
    let rows: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "k": s.k,
                "total": s.total,
                "lam": s.lam.to_string(),
                "next_mu": s.next_mu.as_ref().map(|m| m.to_string()),
                "next_attach": format!("{:?}", s.next_attach),
            })
        })
        .collect();
    Ok(ok(json!({ "steps": rows })))
}

fn cmd_verify(
    d: &ModuleDescriptor,
    level: Level,
    dim_cap: u64,
    oracle_cap: u64,
) -> Result<Report, Error> {
    let mut checks: Vec<Value> = Vec::new();
    let mut failed = false;
    let mut push = |name: &str, status: &str, detail: Option<String>| {
        checks.push(json!({ "name": name, "status": status, "detail": detail }));
    };

    let validation = d.validate(dim_cap)?;
    if !validation.is_valid() {
        push(
            "validation",
            "fail",
            Some(validation.violations.join("; ")),
        );
        let body = json!({ "checks": checks, "result": "fail" });
        return Ok(Report { body, exit: 2 });
    }
    push("validation", "pass", None);

    if matches!(d, ModuleDescriptor::SymLimit { .. }) {
        push("oracle", "skip", Some("symmetric-power limit".into()));
        return Ok(ok(json!({ "checks": checks, "result": "pass" })));
    }

    let steps = d.exhaustion(3)?;
    let mut modules = Vec::new();
    for s in &steps {
        let name = format!("step {} character", s.k);
        match finrep::weyl_dim(&s.lam) {
            Ok(dim) if dim <= oracle_cap => match oracle::build_simple(&s.lam, oracle_cap) {
                Ok(m) => {
                    m.self_check()?;
                    let table = oracle::character_of(&m);
                    let expect = finrep::freudenthal_character(&s.lam, dim_cap)?;
                    if table == expect {
                        push(&name, "pass", None);
                    } else {
                        failed = true;
                        push(&name, "fail", Some("character tables differ".into()));
                    }
                    match oracle::casimir_matrix(&m) {
                        Ok(_) => push(&format!("step {} casimir", s.k), "pass", None),
                        Err(e) => {
                            failed = true;
                            push(&format!("step {} casimir", s.k), "fail", Some(e.to_string()));
                        }
                    }
                    modules.push((s.clone(), m));
                }
                Err(e) => push(&name, "skip", Some(e.to_string())),
            },
            Ok(dim) => push(&name, "skip", Some(format!("dimension {dim} above cap"))),
            Err(e) => push(&name, "skip", Some(e.to_string())),
        }
    }

    // embedding existence: a highest vector for the previous step's block
    // range, of the embedded weight, inside the next module
    for pair in modules.windows(2) {
        let (prev_step, _) = &pair[0];
        let (step, m) = &pair[1];
        let name = format!("step {} embedding", step.k);
        let target = prev_step.embed_weight(&prev_step.lam)?;
        let nk = prev_step.lam.len();
        let start = match prev_step.next_attach {
            AttachSide::Right => 1,
            AttachSide::Left => step.lam.len() - nk + 1,
        };
        let sub: Vec<usize> = (start..start + nk - 1).collect();
        let found = oracle::highest_vectors_for_subrange(m, &sub)?
            .iter()
            .any(|(w, _)| w == target.coords());
        if found {
            push(&name, "pass", None);
        } else {
            failed = true;
            push(
                &name,
                "fail",
                Some(format!("no highest vector of weight {target}")),
            );
        }
    }

    if level == Level::Full {
        if modules.len() >= 2 {
            let refs: Vec<&oracle::MatrixModule> = modules.iter().map(|(_, m)| m).collect();
            match oracle::truncated_annihilator(&refs[..1], 2) {
                Ok(first) => match oracle::truncated_annihilator(&refs, 2) {
                    Ok(joint) => {
                        let monotone = joint.basis.len() <= first.basis.len()
                            && joint
                                .basis
                                .iter()
                                .all(|v| oracle::in_span(&first.basis, v));
                        if monotone {
                            push("annihilator intersection", "pass", None);
                        } else {
                            failed = true;
                            push(
                                "annihilator intersection",
                                "fail",
                                Some("joint kernel not inside the first kernel".into()),
                            );
                        }
                    }
                    Err(e) => push("annihilator intersection", "skip", Some(e.to_string())),
                },
                Err(e) => push("annihilator intersection", "skip", Some(e.to_string())),
            }
        } else {
            push(
                "annihilator intersection",
                "skip",
                Some("fewer than two modules within the cap".into()),
            );
        }
    }

    let result = if failed { "fail" } else { "pass" };
    Ok(Report {
        body: json!({ "checks": checks, "result": result }),
        exit: if failed { 4 } else { 0 },
    })
}
