//! Command line front end: classify cross-marked diagrams, compute
//! fibrations and reductions, tabulate families, run consistency sweeps.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 invalid diagram or
//! invalid instance for the requested operation, 3 invariant violation.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crorbit::catalog::{self, Family, Params};
use crorbit::error::Error;
use crorbit::fibration::{self, SubCrossed};
use crorbit::oracle;
use crorbit::parabolic::{analyze, CrossedDiagram};
use crorbit::parse::{parse_node_set, parse_spec};
use crorbit::render;

#[derive(Parser)]
#[command(
    name = "crorbit",
    version,
    about = "CR invariants of minimal orbits from cross-marked Satake diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum TextFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceMode {
    Fundamental,
    Weak,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the CR invariants of a cross-marked diagram
    Classify {
        /// Diagram spec, e.g. "su(1,3) cross {1,2}"
        spec: String,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Fiber an instance over the sub-marking psi
    Fiber {
        spec: String,
        /// Base marking, e.g. "{1}"
        #[arg(long)]
        psi: String,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Canonical reductions of an instance
    Reduce {
        spec: String,
        #[arg(long, value_enum)]
        mode: ReduceMode,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Invariants of every (parameters, cross set) pair of a family
    Table {
        /// One of: su, sl_r, sl_h, so, so_star, sp_r, sp, compact, complex
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: TableFormat,
    },
    /// Exhaustive criterion/oracle consistency sweep over the catalog
    Sweep {
        #[arg(long)]
        rank_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: TextFormat,
    },
    /// Render a diagram (or the effective fiber over psi) as ascii, dot or
    /// json
    Render {
        spec: String,
        /// Render the effective fiber of the fibration over this marking
        /// instead of the diagram itself
        #[arg(long)]
        psi: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: RenderFormat,
    },
    /// Check that a spec describes a valid diagram
    Validate { spec: String },
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum RenderFormat {
    #[default]
    Ascii,
    Dot,
    Json,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownForm(_) => 1,
        Error::AmbiguousLargest(..) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> crorbit::Result<ExitCode> {
    match command {
        Command::Classify { spec, format } => classify(&spec, format),
        Command::Fiber { spec, psi, format } => fiber(&spec, &psi, format),
        Command::Reduce { spec, mode, format } => reduce(&spec, mode, format),
        Command::Table {
            family,
            rank_max,
            format,
        } => table(&family, rank_max, format),
        Command::Sweep { rank_max, format } => sweep(rank_max, format),
        Command::Render { spec, psi, format } => render_cmd(&spec, psi.as_deref(), format),
        Command::Validate { spec } => validate(&spec),
    }
}

fn render_cmd(spec: &str, psi: Option<&str>, format: RenderFormat) -> crorbit::Result<ExitCode> {
    let cd = parse_spec(spec)?;
    let (target, labels): (CrossedDiagram, Option<Vec<usize>>) = match psi {
        None => (cd, None),
        Some(psi) => {
            let report = fibration::fiber_over(&cd, &parse_node_set(psi)?)?;
            match report.effective_fiber {
                Some(sub) => (sub.cd, Some(sub.original_nodes)),
                None => {
                    match format {
                        RenderFormat::Json => println!("null"),
                        _ => println!("(trivial)"),
                    }
                    return Ok(ExitCode::SUCCESS);
                }
            }
        }
    };
    match format {
        RenderFormat::Ascii => print!("{}", render::to_ascii(&target, labels.as_deref())),
        RenderFormat::Dot => print!("{}", render::to_dot(&target, labels.as_deref())),
        RenderFormat::Json => println!("{}", render::to_json(&target)),
    }
    Ok(ExitCode::SUCCESS)
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn classify(spec: &str, format: TextFormat) -> crorbit::Result<ExitCode> {
    let cd = parse_spec(spec)?;
    let a = analyze(&cd);
    match format {
        TextFormat::Json => {
            let value = serde_json::json!({
                "diagram": render::to_json(&cd),
                "analysis": a,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        TextFormat::Text => {
            print!("{}", render::to_ascii(&cd, None));
            println!("type (n,k): ({},{})", a.n, a.k);
            println!("dim g: {}", a.dim_g);
            println!("dim isotropy: {}", a.dim_isotropy);
            println!("dim orbit: {}", a.dim_orbit());
            println!("effective: {}", bool_word(a.effective));
            println!("totally real: {}", bool_word(a.totally_real));
            println!("totally complex: {}", bool_word(a.totally_complex));
            println!("fundamental: {}", bool_word(a.fundamental));
            println!(
                "weakly nondegenerate: {}",
                bool_word(a.weakly_nondegenerate)
            );
            println!(
                "strictly nondegenerate: {}",
                bool_word(a.strictly_nondegenerate)
            );
            println!("ideal nondegenerate: {}", bool_word(a.ideal_nondegenerate));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn roots_json(rs: &crorbit::roots::RootSystem, set: &crorbit::roots::RootSet) -> serde_json::Value {
    serde_json::json!(set
        .iter()
        .map(|&i| rs.root(i).coeffs().to_vec())
        .collect::<Vec<_>>())
}

fn sub_json(sub: &Option<SubCrossed>) -> serde_json::Value {
    match sub {
        None => serde_json::Value::Null,
        Some(s) => serde_json::json!({
            "diagram": render::to_json(&s.cd),
            "nodes": s.original_nodes,
        }),
    }
}

fn print_sub(title: &str, sub: &Option<SubCrossed>) {
    match sub {
        None => println!("{title}: (trivial)"),
        Some(s) => {
            println!("{title}:");
            print!("{}", render::to_ascii(&s.cd, Some(&s.original_nodes)));
        }
    }
}

fn fiber(spec: &str, psi: &str, format: TextFormat) -> crorbit::Result<ExitCode> {
    let cd = parse_spec(spec)?;
    let psi = parse_node_set(psi)?;
    let report = fibration::fiber_over(&cd, &psi)?;
    let rs = cd.root_system();
    match format {
        TextFormat::Json => {
            let value = serde_json::json!({
                "psi": report.psi.iter().copied().collect::<Vec<_>>(),
                "base_isotropy_roots": roots_json(rs, &report.isotropy),
                "fiber_subalgebra_roots": roots_json(rs, &report.fiber_total),
                "reductive_roots": roots_json(rs, &report.reductive),
                "fiber_parabolic_roots": roots_json(rs, &report.fiber_parabolic),
                "fiber_nodes": report.fiber_nodes.iter().copied().collect::<Vec<_>>(),
                "fiber": sub_json(&report.fiber),
                "effective_fiber": sub_json(&report.effective_fiber),
                "is_cr_fibration": report.is_cr_fibration,
                "fiber_n": report.fiber_n,
                "fiber_k": report.fiber_k,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        TextFormat::Text => {
            println!("total space:");
            print!("{}", render::to_ascii(&cd, None));
            println!("base:");
            print!(
                "{}",
                render::to_ascii(&cd.with_crosses(report.psi.clone())?, None)
            );
            print_sub("fiber", &report.fiber);
            print_sub("effective fiber", &report.effective_fiber);
            println!("fiber type (n,k): ({},{})", report.fiber_n, report.fiber_k);
            println!("cr fibration: {}", bool_word(report.is_cr_fibration));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce(spec: &str, mode: ReduceMode, format: TextFormat) -> crorbit::Result<ExitCode> {
    let cd = parse_spec(spec)?;
    match mode {
        ReduceMode::Fundamental => {
            let red = fibration::fundamental_reduction(&cd)?;
            let base = analyze(&red.base);
            match format {
                TextFormat::Json => {
                    let value = serde_json::json!({
                        "psi": red.psi.iter().copied().collect::<Vec<_>>(),
                        "base": render::to_json(&red.base),
                        "base_analysis": base,
                        "effective_fiber": sub_json(&red.report.effective_fiber),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                TextFormat::Text => {
                    println!("psi: {{{}}}", join_nodes(&red.psi));
                    println!("totally real base (n = {}):", base.n);
                    print!("{}", render::to_ascii(&red.base, None));
                    print_sub("effective fiber", &red.report.effective_fiber);
                }
            }
        }
        ReduceMode::Weak => {
            let red = fibration::weak_reduction(&cd)?;
            match format {
                TextFormat::Json => {
                    let value = serde_json::json!({
                        "removed": red.removed.iter().copied().collect::<Vec<_>>(),
                        "base": render::to_json(&red.base),
                        "fiber": sub_json(&red.report.effective_fiber),
                        "fiber_k": red.report.fiber_k,
                        "exhaustive_fallback": red.used_exhaustive_fallback,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                TextFormat::Text => {
                    println!("removed: {{{}}}", join_nodes(&red.removed));
                    println!("weakly nondegenerate base:");
                    print!("{}", render::to_ascii(&red.base, None));
                    print_sub("totally complex fiber", &red.report.effective_fiber);
                    println!("fiber k: {}", red.report.fiber_k);
                }
            }
        }
        ReduceMode::Full => {
            let report = fibration::reduction_diagram(&cd)?;
            match format {
                TextFormat::Json => {
                    let value = serde_json::json!({
                        "total": render::to_json(&report.total),
                        "fundamental_psi": report.fundamental_psi.iter().copied().collect::<Vec<_>>(),
                        "totally_real_base": render::to_json(&report.fundamental_base),
                        "fundamental_fiber": sub_json(&report.fundamental_fiber),
                        "weak_removed": report.weak_removed.iter().copied().collect::<Vec<_>>(),
                        "weak_base": sub_json(&report.weak_base),
                        "totally_complex_fiber": sub_json(&report.weak_fiber),
                        "weak_fiber_type": [report.weak_fiber_type.0, report.weak_fiber_type.1],
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                TextFormat::Text => {
                    println!("total space:");
                    print!("{}", render::to_ascii(&report.total, None));
                    println!(
                        "totally real base (psi {{{}}}):",
                        join_nodes(&report.fundamental_psi)
                    );
                    print!("{}", render::to_ascii(&report.fundamental_base, None));
                    print_sub("fundamental fiber", &report.fundamental_fiber);
                    println!(
                        "weak reduction removes: {{{}}}",
                        join_nodes(&report.weak_removed)
                    );
                    print_sub("weakly nondegenerate base", &report.weak_base);
                    print_sub("totally complex fiber", &report.weak_fiber);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn join_nodes(set: &BTreeSet<usize>) -> String {
    set.iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Table parameter text avoids commas so that csv rows need no quoting.
fn params_text(params: &Params) -> String {
    match params {
        Params::Pq(p, q) => format!("{p}-{q}"),
        Params::N(n) => format!("{n}"),
        Params::Typed(t, r) => format!("{}-{r}", t.letter()),
    }
}

fn table(family: &str, rank_max: usize, format: TableFormat) -> crorbit::Result<ExitCode> {
    let family =
        Family::from_token(family).ok_or_else(|| Error::UnknownForm(family.to_string()))?;
    let mut rows = Vec::new();
    for params in catalog::family_params(family, rank_max) {
        let diagram = std::sync::Arc::new(catalog::lookup(family, &params)?);
        let rank = diagram.rank();
        for bits in 0..(1u64 << rank) {
            let crosses: BTreeSet<usize> =
                (1..=rank).filter(|i| bits >> (i - 1) & 1 == 1).collect();
            let cd = CrossedDiagram::new(std::sync::Arc::clone(&diagram), crosses)?;
            let a = analyze(&cd);
            rows.push((params, bits, a));
        }
    }
    match format {
        TableFormat::Csv => {
            println!("family,params,cross_bitmask,n,k,effective,fundamental,weak,strict,ideal");
            for (params, bits, a) in rows {
                println!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    family.token(),
                    params_text(&params),
                    bits,
                    a.n,
                    a.k,
                    a.effective,
                    a.fundamental,
                    a.weakly_nondegenerate,
                    a.strictly_nondegenerate,
                    a.ideal_nondegenerate
                );
            }
        }
        TableFormat::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(params, bits, a)| {
                    serde_json::json!({
                        "family": family.token(),
                        "params": params_text(params),
                        "cross_bitmask": bits,
                        "analysis": a,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(rank_max: usize, format: TextFormat) -> crorbit::Result<ExitCode> {
    let report = oracle::sweep_consistency(rank_max)?;
    match format {
        TextFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        TextFormat::Text => {
            println!("rank bound: {}", report.rank_bound);
            println!("forms: {}", report.forms);
            println!("pairs: {}", report.pairs);
            println!("instances checked: {}", report.instances_checked);
            println!("exhaustive fallbacks: {}", report.exhaustive_fallbacks);
            println!("mismatches: {}", report.mismatches.len());
            for m in &report.mismatches {
                println!(
                    "  {} {} {}: expected {}, got {}",
                    m.form, m.cross, m.property, m.expected, m.got
                );
            }
        }
    }
    if report.ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn validate(spec: &str) -> crorbit::Result<ExitCode> {
    let cd = parse_spec(spec)?;
    println!(
        "valid: {} rank {} black {{{}}} arrows {} cross {{{}}}",
        cd.satake().graph().type_string(),
        cd.satake().rank(),
        join_nodes(cd.satake().black()),
        cd.satake()
            .arrows()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(","),
        join_nodes(cd.crosses()),
    );
    Ok(ExitCode::SUCCESS)
}
