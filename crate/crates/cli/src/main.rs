use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spinab::catalog::Catalog;
use spinab::codes;
use spinab::rootdata::RootSystem;
use spinab::verify::{report_all, verify, Config, Report, VERIFY_IDS};

#[derive(Parser)]
#[command(name = "spinab", version, about = "Exact checks for finite abelian subgroups of compact Lie groups")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Element cap for group closures.
    #[arg(long, global = true, default_value_t = spinab::fingrp::DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Report 0 ms for every check, so output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one verification pipeline.
    Verify { id: String },
    /// Run every pipeline.
    Report,
    /// List pipelines and catalog entries.
    List,
    /// Classes of admissible self-orthogonal codes of length n.
    EnumerateCodes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        all_ones: bool,
    },
    /// Two-sided Weyl group bound of a catalog entry.
    Weyl { id: String },
    /// Fixed subalgebra dimension of a catalog entry.
    Centralizer { id: String },
    /// Root system data, or the centralizer of exp(2 pi i a/d).
    Root {
        #[arg(value_name = "TYPE")]
        kind: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coweight: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1)]
        denominator: i64,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

fn emit_report(r: Report, cli: &Cli) -> Result<bool, Failure> {
    let r = if cli.no_timing { r.without_timing() } else { r };
    match cli.format {
        Format::Json => println!("{}", r.to_json()),
        Format::Table => print!("{}", r.to_table()),
    }
    Ok(r.passed())
}

fn emit(value: serde_json::Value, table: String, cli: &Cli) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        Format::Table => print!("{table}"),
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = Config { cap: cli.cap };
    let cat = Catalog::shipped();
    let compute = |e: &dyn std::fmt::Display| Failure::Compute(e.to_string());
    match &cli.cmd {
        Cmd::Verify { id } => {
            let r = verify(id, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
            emit_report(r, cli)
        }
        Cmd::Report => emit_report(report_all(&cfg), cli),
        Cmd::List => {
            let mut table = String::from("pipelines:\n");
            for (id, what) in VERIFY_IDS {
                table += &format!("  {id:<20} {what}\n");
            }
            table += "catalog:\n";
            for id in cat.ids() {
                table += &format!("  {id}\n");
            }
            table += "  family.<n> for n in 16, 20, 22, 24, 26\n";
            let pipelines: Vec<_> = VERIFY_IDS.iter().map(|(id, what)| json!({"id": id, "description": what})).collect();
            emit(json!({"pipelines": pipelines, "catalog": cat.ids().collect::<Vec<_>>()}), table, cli);
            Ok(true)
        }
        Cmd::EnumerateCodes { n, all_ones } => {
            let e = codes::enumerate_with_profiles(*n, *all_ones).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut table = format!("n = {n}, all-ones = {all_ones}: {} classes\n", e.classes.len());
            for (i, c) in e.classes.iter().enumerate() {
                table += &format!("{i:>3}  dim {:>2}  {c}\n", c.dim());
            }
            for m in &e.merge_candidates {
                table += &format!("same group profile: {m:?}\n");
            }
            emit(serde_json::to_value(&e).expect("json"), table, cli);
            Ok(true)
        }
        Cmd::Weyl { id } => {
            let entry = cat.lookup(id).map_err(|e| Failure::Usage(e.to_string()))?;
            let f = entry.group(cfg.cap).map_err(|e| compute(&e))?;
            let b = entry.weyl_bounds_of(&f).map_err(|e| compute(&e))?;
            let table = format!(
                "{id}: |F| = {}\nweyl lower {} ({} of the candidates normalize)\nweyl upper {}\n{}\n",
                f.order(),
                b.lower.order,
                b.lower.normalizing,
                b.upper,
                if b.exact().is_some() { "bounds meet" } else { "bounds differ" }
            );
            let value = json!({"id": id, "order": f.order(), "lower": b.lower.order.to_string(), "upper": b.upper.to_string(),
                "normalizing": b.lower.normalizing, "exact": b.exact().is_some()});
            emit(value, table, cli);
            Ok(true)
        }
        Cmd::Centralizer { id } => {
            let entry = cat.lookup(id).map_err(|e| Failure::Usage(e.to_string()))?;
            let d = entry.fixed_dim().map_err(|e| compute(&e))?;
            emit(json!({"id": id, "fixed_dim": d}), format!("{id}: fixed subalgebra dimension {d}\n"), cli);
            Ok(true)
        }
        Cmd::Root { kind, coweight, denominator } => {
            let rs: RootSystem = kind.parse().map_err(|e: spinab::rootdata::RootError| Failure::Usage(e.to_string()))?;
            match coweight {
                Some(a) => {
                    if *denominator == 0 {
                        return Err(Failure::Usage("denominator must be nonzero".into()));
                    }
                    let t = rs.coweight_from_coroots(a, *denominator).map_err(|e| Failure::Usage(e.to_string()))?;
                    let sub = rs.centralizer_subsystem(&t).map_err(|e| compute(&e))?;
                    let label = if sub.is_empty() { "torus".to_string() } else { sub.to_string() };
                    emit(json!({"type": kind, "coweight": t.to_string(), "centralizer": label}), format!("{kind} {t}: centralizer {label}\n"), cli);
                }
                None => {
                    let closure: Vec<String> = rs.bds_closure().iter().map(|t| t.to_string()).collect();
                    let highest = format!("{:?}", rs.highest_root());
                    let table = format!("{kind}: rank {}, {} roots, highest root {highest}\nclosure: {}\n", rs.rank(), rs.roots().len(), closure.join(", "));
                    emit(json!({"type": kind, "rank": rs.rank(), "roots": rs.roots().len(), "highest_root": rs.highest_root(), "closure": closure}), table, cli);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().expect("thread pool");
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
