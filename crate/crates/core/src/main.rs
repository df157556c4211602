use clap::{Parser, Subcommand, ValueEnum};
use qwalk::elim::{eliminant, Target};
use qwalk::enumerate::{
    count_excursions_exact, count_excursions_float, DEFAULT_EXACT_CAP, FLOAT_CAP,
};
use qwalk::numsolve::DEFAULT_PRECISION;
use qwalk::poly::format_poly;
use qwalk::report::{check_tables, classify, exit_code, table_style, ClassifyOptions};
use qwalk::StepSet;
use std::process::ExitCode;

/// Certify non-D-finiteness of quarter-plane excursion generating functions.
#[derive(Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on one step set.
    Classify {
        /// Steps such as "(-1,0),(0,1),(1,0),(1,-1),(0,-1)".
        #[arg(long)]
        steps: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Number of exact excursion terms to report.
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        /// Working precision in bits.
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        /// Length of the float run behind the asymptotic fit; 0 disables it.
        #[arg(long, default_value_t = 600)]
        fit_n: usize,
    },
    /// Count excursions e_0..e_N.
    Enumerate {
        #[arg(long)]
        steps: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Floating-point counts divided by |S|^n (not certified).
        #[arg(long)]
        float: bool,
        /// Print a JSON array instead of one value per line.
        #[arg(long)]
        json: bool,
    },
    /// Print the squarefree eliminant for rho or c.
    Eliminants {
        #[arg(long)]
        steps: String,
        #[arg(long, default_value = "rho")]
        target: Target,
        /// Print integer coefficients instead of the monic form.
        #[arg(long)]
        integer: bool,
    },
    /// Check the embedded reference tables against the pipeline.
    CheckTables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        table: Option<u8>,
        /// Restrict to tags such as 23, 7* or "(3,6)".
        #[arg(long, num_args = 1.., value_delimiter = ' ')]
        tags: Vec<String>,
        #[arg(long)]
        verbose: bool,
    },
}

const INPUT_ERROR: u8 = 4;

fn steps(text: &str) -> Result<StepSet, ExitCode> {
    text.parse().map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(INPUT_ERROR)
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Classify {
            steps: text,
            format,
            max_n,
            precision,
            fit_n,
        } => {
            let s = steps(&text)?;
            if max_n > DEFAULT_EXACT_CAP {
                eprintln!("error: --max-n {max_n} exceeds the exact cap {DEFAULT_EXACT_CAP}");
                return Err(ExitCode::from(INPUT_ERROR));
            }
            let opts = ClassifyOptions {
                max_n,
                precision,
                fit_n: (fit_n > 0).then_some(fit_n.min(FLOAT_CAP)),
            };
            let r = classify(&s, &opts);
            match format {
                Format::Json => println!("{}", r.to_json()),
                Format::Text => println!("{}", r.to_text()),
            }
            Ok(ExitCode::from(exit_code(r.verdict) as u8))
        }
        Command::Enumerate {
            steps: text,
            max_n,
            float,
            json,
            ..
        } => {
            let s = steps(&text)?;
            let values: Vec<String> = if float {
                let scale = s.len() as f64;
                let seq = count_excursions_float(&s, max_n, scale).map_err(|e| {
                    eprintln!("error: {e}");
                    ExitCode::from(INPUT_ERROR)
                })?;
                seq.values.iter().map(|v| format!("{v:e}")).collect()
            } else {
                let seq = count_excursions_exact(&s, max_n, DEFAULT_EXACT_CAP).map_err(|e| {
                    eprintln!("error: {e}");
                    ExitCode::from(INPUT_ERROR)
                })?;
                seq.terms.iter().map(|v| v.to_string()).collect()
            };
            if json {
                let quoted = !float;
                let items: Vec<String> = values
                    .iter()
                    .map(|v| {
                        if quoted {
                            format!("\"{v}\"")
                        } else {
                            v.clone()
                        }
                    })
                    .collect();
                println!("[{}]", items.join(","));
            } else {
                for v in values {
                    println!("{v}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eliminants {
            steps: text,
            target,
            integer,
        } => {
            let s = steps(&text)?;
            match eliminant(&s, target) {
                Ok(e) => {
                    if integer {
                        println!("{}", format_poly(&e.poly, "t"));
                    } else {
                        println!("{}", table_style(&e.poly));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(ExitCode::from(INPUT_ERROR))
                }
            }
        }
        Command::CheckTables {
            table,
            tags,
            verbose,
        } => {
            let filter = (!tags.is_empty()).then_some(tags.as_slice());
            let mut ok = true;
            for t in table.map_or(vec![1, 2], |t| vec![t]) {
                let check = check_tables(t, filter).map_err(|e| {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                })?;
                for row in &check.rows {
                    let status = if row.passed() { "pass" } else { "FAIL" };
                    println!("table {t} {:<8} {status}", row.tag);
                    if verbose || !row.passed() {
                        for f in &row.failures {
                            println!("    {f}");
                        }
                    }
                }
                println!("{}", check.summary());
                ok &= check.all_passed();
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
