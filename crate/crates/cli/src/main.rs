//! Command-line front end: validate network files, compare the fuzzy
//! forward recursion against the configuration-enumeration oracle, run the
//! sampling approximation, and survey random instances.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fuzzy_cpa_core::decimal::parse_decimal;
use fuzzy_cpa_core::diagnostics::{compare_cp_sets, explain_discrepancies};
use fuzzy_cpa_core::file::{parse_network, FileError, LoadedNetwork};
use fuzzy_cpa_core::forward::{fuzzy_forward_recursion, ForwardError};
use fuzzy_cpa_core::fuzzy::BELIEF_FRAC_DIGITS;
use fuzzy_cpa_core::network::NetworkError;
use fuzzy_cpa_core::oracle::{
    configuration_table, oracle_cp_set, sample_cp_set, OracleError, DEFAULT_BATCH_SIZE,
    DEFAULT_CONFIG_CAP, DEFAULT_MAX_BATCHES, DEFAULT_TOLERANCE,
};
use fuzzy_cpa_core::randgen::{random_network, GenParams, NetworkShape};

use output::*;

// exit codes: 0 ok, 2 validation, 3 cap exceeded, 4 I/O
const EXIT_VALIDATION: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "fuzzy-cpa", version, about = "Critical path analysis with discrete fuzzy activity durations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Chain,
    Dag,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a network file
    Validate {
        file: PathBuf,
    },
    /// Run recursion and oracle, report the discrepancies
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also print the full configuration table
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = DEFAULT_CONFIG_CAP)]
        config_cap: u128,
        #[arg(long, default_value_t = 10_000)]
        path_cap: usize,
    },
    /// Approximate the oracle by seeded configuration sampling
    Sample {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative AREA change below which sampling stops
        #[arg(long, default_value = DEFAULT_TOLERANCE)]
        tolerance: String,
        #[arg(long, default_value_t = DEFAULT_BATCH_SIZE)]
        batch: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_BATCHES)]
        max_batches: u64,
        #[arg(long, default_value_t = DEFAULT_CONFIG_CAP)]
        config_cap: u128,
    },
    /// Measure the discrepancy rate over random instances
    Survey {
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        max_activities: usize,
        #[arg(long, default_value_t = 3)]
        max_points: usize,
        #[arg(long, value_enum, default_value = "dag")]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CONFIG_CAP)]
        config_cap: u128,
    },
}

enum CliError {
    Validation(String),
    Cap(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Cap(m) | CliError::Io(m) => m,
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Network(NetworkError::PathCapExceeded { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::ConfigurationCapExceeded { .. }
            | OracleError::Network(NetworkError::PathCapExceeded { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ForwardError> for CliError {
    fn from(e: ForwardError) -> Self {
        CliError::Cap(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Analyze { file, format, table, config_cap, path_cap } => {
            cmd_analyze(&file, format, table, config_cap, path_cap)
        }
        Command::Sample { file, format, seed, tolerance, batch, max_batches, config_cap } => {
            cmd_sample(&file, format, seed, &tolerance, batch, max_batches, config_cap)
        }
        Command::Survey { count, max_activities, max_points, shape, seed, format, config_cap } => {
            cmd_survey(count, max_activities, max_points, shape, seed, format, config_cap)
        }
    }
}

fn load(path: &PathBuf) -> Result<LoadedNetwork, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_network(&text)?)
}

fn cmd_validate(path: &PathBuf) -> Result<(), CliError> {
    let loaded = load(path)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    let net = &loaded.network;
    let dummies = net.activities().iter().filter(|a| a.is_dummy).count();
    println!("{}: valid", path.display());
    println!(
        "activities: {} ({} dummy), configurations: {}",
        net.len(),
        dummies,
        net.configuration_count()
    );
    Ok(())
}

fn cmd_analyze(
    path: &PathBuf,
    format: Format,
    table: bool,
    config_cap: u128,
    path_cap: usize,
) -> Result<(), CliError> {
    let loaded = load(path)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    let net = &loaded.network;
    let scale = net.scale();

    let recursion = fuzzy_forward_recursion(net).cp_set;
    let oracle = oracle_cp_set(net, config_cap)?;
    let (lo, hi) = net.extreme_lengths();
    let report = compare_cp_sets(&recursion, &oracle);
    let findings = explain_discrepancies(net, config_cap)?;
    let table_data = if table {
        Some(configuration_table(net, config_cap, path_cap)?)
    } else {
        None
    };

    match format {
        Format::Text => {
            println!("network: {}", path.display());
            println!(
                "activities: {}, configurations: {}",
                net.len(),
                net.configuration_count()
            );
            println!("recursion: {}", quantity_str(&recursion, scale));
            println!("oracle:    {}", quantity_str(&oracle, scale));
            println!(
                "extreme lengths: {} .. {}",
                duration_str(lo, scale),
                duration_str(hi, scale)
            );
            println!(
                "area: recursion {}, oracle {}",
                area_str(recursion.area_raw(), scale),
                area_str(oracle.area_raw(), scale)
            );
            if report.mismatches == 0 {
                println!("no discrepancy");
            }
            print!("{}", render_report_text(&report, scale));
            print!("{}", render_findings_text(&findings, scale));
            if let Some((paths, rows)) = &table_data {
                print!("{}", render_table_text(net, paths, rows));
            }
        }
        Format::Json => {
            let mut doc = serde_json::json!({
                "config": {
                    "command": "analyze",
                    "input": path.display().to_string(),
                    "table": table,
                    "config_cap": config_cap.to_string(),
                    "path_cap": path_cap,
                },
                "warnings": loaded.warnings,
                "activities": net.len(),
                "configurations": net.configuration_count().to_string(),
                "recursion": quantity_str(&recursion, scale),
                "recursion_points": quantity_points(&recursion, scale),
                "oracle": quantity_str(&oracle, scale),
                "oracle_points": quantity_points(&oracle, scale),
                "extreme_lengths": [duration_str(lo, scale), duration_str(hi, scale)],
                "area": {
                    "recursion": area_str(recursion.area_raw(), scale),
                    "oracle": area_str(oracle.area_raw(), scale),
                },
                "report": report_json(&report, scale),
                "findings": findings_json(&findings, scale),
            });
            if let Some((paths, rows)) = &table_data {
                doc["table"] = serde_json::json!({
                    "paths": paths.iter().map(|p| {
                        p.iter().map(|&i| net.id_of(i)).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                    "rows": rows.iter().map(|r| serde_json::json!({
                        "durations": r.configuration.choices.iter()
                            .map(|&(d, _)| duration_str(d, scale)).collect::<Vec<_>>(),
                        "beliefs": r.configuration.choices.iter()
                            .map(|&(_, b)| belief_str(b)).collect::<Vec<_>>(),
                        "path_lengths": r.path_lengths.iter()
                            .map(|&d| duration_str(d, scale)).collect::<Vec<_>>(),
                        "cp_length": duration_str(r.cp_length, scale),
                        "belief": belief_str(r.belief),
                    })).collect::<Vec<_>>(),
                });
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_sample(
    path: &PathBuf,
    format: Format,
    seed: u64,
    tolerance: &str,
    batch: u64,
    max_batches: u64,
    config_cap: u128,
) -> Result<(), CliError> {
    let tolerance_raw = parse_decimal(tolerance, BELIEF_FRAC_DIGITS, BELIEF_FRAC_DIGITS)
        .map_err(|e| CliError::Validation(format!("--tolerance: {e}")))?;
    let loaded = load(path)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    let net = &loaded.network;
    let scale = net.scale();

    let outcome = sample_cp_set(net, seed, tolerance_raw, batch, max_batches)?;
    let estimate: Vec<(String, String)> = outcome
        .points
        .iter()
        .map(|&(d, b)| (duration_str(d, scale), belief_str(b)))
        .collect();
    let estimate_line = estimate
        .iter()
        .map(|(d, b)| format!("{d}/{b}"))
        .collect::<Vec<_>>()
        .join(", ");

    // confirm against the exhaustive oracle when it is small enough
    let oracle_check = if net.configuration_count() <= config_cap {
        let oracle = oracle_cp_set(net, config_cap)?;
        let exact = outcome
            .quantity()
            .map(|e| e == oracle)
            .unwrap_or(false);
        Some((quantity_str(&oracle, scale), exact))
    } else {
        None
    };

    match format {
        Format::Text => {
            println!("network: {}", path.display());
            println!(
                "seed: {seed}, tolerance: {tolerance}, batch: {batch}, max batches: {max_batches}"
            );
            println!(
                "estimate: {estimate_line}{}",
                if outcome.is_normal { "" } else { " (not yet normal)" }
            );
            println!("trace:");
            println!("  samples  area  change");
            for t in &outcome.trace {
                let change = match t.delta_raw {
                    None => "-".to_string(),
                    Some(d) => {
                        let prev = t.area_raw - d;
                        if prev > 0 {
                            ratio_str(d, prev, 6)
                        } else {
                            "-".to_string()
                        }
                    }
                };
                println!("  {:>7}  {}  {}", t.samples, area_str(t.area_raw, scale), change);
            }
            match oracle_check {
                Some((oracle_line, true)) => {
                    println!("oracle: {oracle_line}");
                    println!("oracle check: exact match");
                }
                Some((oracle_line, false)) => {
                    println!("oracle: {oracle_line}");
                    println!("oracle check: estimate is a partial lower bound");
                }
                None => println!("oracle check: skipped (configuration count above cap)"),
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "config": {
                    "command": "sample",
                    "input": path.display().to_string(),
                    "seed": seed,
                    "tolerance": tolerance,
                    "batch": batch,
                    "max_batches": max_batches,
                    "config_cap": config_cap.to_string(),
                },
                "warnings": loaded.warnings,
                "estimate": estimate_line,
                "estimate_points": estimate,
                "normal": outcome.is_normal,
                "trace": trace_json(&outcome.trace, scale),
                "oracle": oracle_check.as_ref().map(|(line, _)| line.clone()),
                "oracle_exact_match": oracle_check.as_ref().map(|&(_, exact)| exact),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_survey(
    count: u64,
    max_activities: usize,
    max_points: usize,
    shape: Shape,
    seed: u64,
    format: Format,
    config_cap: u128,
) -> Result<(), CliError> {
    let params = GenParams {
        max_activities,
        max_points,
        max_value: 9,
        shape: match shape {
            Shape::Chain => NetworkShape::Chain,
            Shape::Dag => NetworkShape::Dag,
        },
    };
    let mut discrepant: u64 = 0;
    let mut max_delta_raw: i128 = 0;
    let mut delta_sum_raw: i128 = 0;
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let net = random_network(&mut rng, params);
        let recursion = fuzzy_forward_recursion(&net).cp_set;
        let oracle = oracle_cp_set(&net, config_cap)?;
        let report = compare_cp_sets(&recursion, &oracle);
        if report.mismatches > 0 {
            discrepant += 1;
            delta_sum_raw += report.max_delta_raw;
            max_delta_raw = max_delta_raw.max(report.max_delta_raw);
        }
    }

    let shape_name = match shape {
        Shape::Chain => "chain",
        Shape::Dag => "dag",
    };
    let fraction = if count > 0 { ratio_str(discrepant as i128, count as i128, 6) } else { "0".into() };
    let mean_delta = if discrepant > 0 {
        ratio_str(delta_sum_raw, discrepant as i128 * 1_000_000_000, 6)
    } else {
        "0".into()
    };

    match format {
        Format::Text => {
            println!(
                "survey: {count} instances (seed {seed}, shape {shape_name}, max {max_activities} activities, max {max_points} points)"
            );
            if count == 0 {
                return Ok(());
            }
            println!("discrepant: {discrepant} of {count} ({fraction})");
            println!("max delta: {}", delta_str(max_delta_raw));
            println!("mean max-delta over discrepant instances: {mean_delta}");
        }
        Format::Json => {
            let doc = serde_json::json!({
                "config": {
                    "command": "survey",
                    "count": count,
                    "max_activities": max_activities,
                    "max_points": max_points,
                    "shape": shape_name,
                    "seed": seed,
                    "config_cap": config_cap.to_string(),
                },
                "discrepant": discrepant,
                "fraction": fraction,
                "max_delta": delta_str(max_delta_raw),
                "mean_max_delta": mean_delta,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(())
}
