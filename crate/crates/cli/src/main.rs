mod cache;
mod config;
mod error;
mod fixtures;
mod oeis;
mod output;
mod render;
mod verify;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use airpocket::series::{gf_closed, gf_equation, GfValue};
use airpocket::{distribution, enum_family, gf, stat, FamilyId, GfId, Histogram, StatId};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::Cache;
use crate::config::{Config, Format};
use crate::error::CliError;
use crate::output::{csv_row, json, json_line};

/// Dyck paths with air pockets: enumeration, statistics, generating
/// functions and their cross-checks.
#[derive(Debug, Parser)]
#[command(name = "airpocket", version)]
struct Cli {
    /// Largest path length any command may enumerate.
    #[arg(long, global = true, default_value_t = 18)]
    max_n: usize,
    /// Truncation order of generating functions.
    #[arg(long, global = true, default_value_t = 64)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Directory for cached results; nothing is cached without it.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Both constructions, compared.
    Checked,
    Closed,
    Equation,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lists every member of a family in canonical order.
    Enumerate { family: FamilyId, n: usize },
    /// The value of a statistic on every member.
    Stats {
        family: FamilyId,
        n: usize,
        stat: StatId,
    },
    /// How many members take each value of a statistic.
    Distribution {
        family: FamilyId,
        n: usize,
        stat: StatId,
    },
    /// Total occurrences of a statistic, for one size or every size up to
    /// --max-n.
    Popularity {
        family: FamilyId,
        stat: StatId,
        n: Option<usize>,
    },
    /// Coefficients of a generating function.
    Series {
        id: GfId,
        #[arg(long, value_enum, default_value_t = Route::Checked)]
        route: Route,
        /// Print only the coefficient of x^N, markers set to 1.
        #[arg(long, value_name = "N")]
        coeff: Option<usize>,
    },
    /// Runs a verification suite and prints a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
    /// Draws a path or a meander word.
    Render {
        #[arg(value_enum)]
        style: render::Style,
        object: String,
    },
    /// Compares a computed sequence with an embedded OEIS prefix or a b-file.
    Oeis {
        id: String,
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Pyramid size for the parameterized sequences.
        #[arg(long)]
        k: Option<u32>,
        /// Our size is the sequence index plus this.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        /// Print computed values as a b-file up to this index instead.
        #[arg(long, value_name = "LAST")]
        emit: Option<i64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = Config {
        max_n: cli.max_n,
        series_order: cli.order,
        cache_dir: cli.cache_dir.clone(),
        output_format: cli.format,
        thread_count: cli.threads,
    };
    match run(cli.command, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("airpocket: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command, cfg: &Config) -> Result<ExitCode, CliError> {
    cfg.validate()?;
    if let Some(t) = cfg.thread_count {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = dispatch(command, cfg, &mut out)?;
    out.flush().map_err(stdout_err)?;
    Ok(code)
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

fn cache(cfg: &Config) -> Cache {
    Cache::new(cfg.cache_dir.clone())
}

fn dispatch(command: Command, cfg: &Config, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let fmt = cfg.output_format;
    match command {
        Command::Enumerate { family, n } => {
            cfg.check_n(n)?;
            for m in enum_family(family, n) {
                match fmt {
                    Format::Plain => writeln!(out, "{m}"),
                    Format::Json => json_line(out, &m.to_json()),
                    Format::Csv => csv_row(out, &[m.to_string()]),
                }
                .map_err(stdout_err)?;
            }
        }
        Command::Stats { family, n, stat: s } => {
            cfg.check_n(n)?;
            let members = enum_family(family, n);
            let values = members
                .iter()
                .map(|m| stat(m, s))
                .collect::<Result<Vec<_>, _>>()?;
            if fmt == Format::Csv {
                csv_row(out, &["object", &s.to_string()]).map_err(stdout_err)?;
            }
            for (m, v) in members.iter().zip(values) {
                match fmt {
                    Format::Plain => writeln!(out, "{m} {v}"),
                    Format::Json => json_line(
                        out,
                        &serde_json::json!({ "object": m.to_json(), "value": v }),
                    ),
                    Format::Csv => csv_row(out, &[m.to_string(), v.to_string()]),
                }
                .map_err(stdout_err)?;
            }
        }
        Command::Distribution { family, n, stat: s } => {
            cfg.check_n(n)?;
            let key = Cache::key("distribution", &[family.to_string(), n.to_string(), s.to_string()]);
            let h: Histogram = cache(cfg).get_or_compute(&key, || Ok(distribution(family, n, s)?))?;
            match fmt {
                Format::Json => json(out, &h),
                Format::Plain => h
                    .entries
                    .iter()
                    .try_for_each(|(v, c)| writeln!(out, "{v} {c}")),
                Format::Csv => {
                    csv_row(out, &["value", "count"])
                        .and_then(|_| {
                            h.entries
                                .iter()
                                .try_for_each(|(v, c)| csv_row(out, &[v.to_string(), c.to_string()]))
                        })
                }
            }
            .map_err(stdout_err)?;
        }
        Command::Popularity { family, stat: s, n } => {
            let sizes: Vec<usize> = match n {
                Some(n) => {
                    cfg.check_n(n)?;
                    vec![n]
                }
                None => {
                    let first = if family.is_air() { 2 } else { 1 };
                    (first..=cfg.max_n).collect()
                }
            };
            #[derive(Serialize)]
            struct Row {
                n: usize,
                popularity: String,
            }
            let c = cache(cfg);
            let mut rows = Vec::new();
            for n in sizes {
                let key = Cache::key("distribution", &[family.to_string(), n.to_string(), s.to_string()]);
                let h: Histogram = c.get_or_compute(&key, || Ok(distribution(family, n, s)?))?;
                rows.push(Row {
                    n,
                    popularity: h.weighted_total().to_string(),
                });
            }
            match fmt {
                Format::Json => json(
                    out,
                    &serde_json::json!({ "family": family, "stat": s, "rows": rows }),
                ),
                Format::Plain => rows
                    .iter()
                    .try_for_each(|r| writeln!(out, "{} {}", r.n, r.popularity)),
                Format::Csv => csv_row(out, &["n", "popularity"]).and_then(|_| {
                    rows.iter()
                        .try_for_each(|r| csv_row(out, &[r.n.to_string(), r.popularity.clone()]))
                }),
            }
            .map_err(stdout_err)?;
        }
        Command::Series { id, route, coeff } => {
            let order = match coeff {
                Some(n) if n > cfg.series_order => n,
                _ => cfg.series_order,
            };
            let route_name = format!("{route:?}").to_lowercase();
            let key = Cache::key("series", &[id.to_string(), route_name, order.to_string()]);
            let value: GfValue = cache(cfg).get_or_compute(&key, || {
                Ok(match route {
                    Route::Checked => gf(id, order)?,
                    Route::Closed => gf_closed(id, order)?,
                    Route::Equation => gf_equation(id, order)?,
                })
            })?;
            write_series(out, fmt, id, &value, coeff).map_err(stdout_err)?;
        }
        Command::Verify { suite } => {
            let report = verify::run(suite, cfg);
            match fmt {
                Format::Csv => csv_row(out, &["name", "bound", "pass", "witness", "note"]).and_then(|_| {
                    report.checks.iter().try_for_each(|c| {
                        csv_row(
                            out,
                            &[
                                c.name.clone(),
                                c.bound.clone(),
                                c.pass.to_string(),
                                c.witness.clone().unwrap_or_default(),
                                c.note.clone().unwrap_or_default(),
                            ],
                        )
                    })
                }),
                _ => json(out, &report),
            }
            .map_err(stdout_err)?;
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Render { style, object } => {
            let obj = render::parse_object(&object)?;
            out.write_all(render::render(&obj, style).as_bytes())
                .map_err(stdout_err)?;
        }
        Command::Oeis {
            id,
            bfile,
            k,
            shift,
            emit,
        } => {
            if let Some(last) = emit {
                let first = oeis::find(&id)?.segments[0].start;
                for (i, v) in oeis::computed_range(&id, first, last, cfg)? {
                    writeln!(out, "{i} {v}").map_err(stdout_err)?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let req = oeis::Request {
                id: &id,
                bfile: bfile.as_deref(),
                k,
                shift,
            };
            let report = oeis::compare(&req, cfg)?;
            match fmt {
                Format::Csv => csv_row(
                    out,
                    &[
                        report.id.clone(),
                        report.checked.to_string(),
                        report.pass.to_string(),
                        report
                            .mismatch
                            .as_ref()
                            .map(|m| m.index.to_string())
                            .unwrap_or_default(),
                    ],
                ),
                _ => json(out, &report),
            }
            .map_err(stdout_err)?;
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_series(
    out: &mut impl Write,
    fmt: Format,
    id: GfId,
    value: &GfValue,
    coeff: Option<usize>,
) -> io::Result<()> {
    if let Some(n) = coeff {
        let c = value.erased().coeff(n);
        return match fmt {
            Format::Plain => writeln!(out, "{c}"),
            Format::Json => json_line(out, &serde_json::json!({ "id": id, "n": n, "coefficient": c.to_string() })),
            Format::Csv => csv_row(out, &[n.to_string(), c.to_string()]),
        };
    }
    match (fmt, value) {
        (Format::Plain, v) => writeln!(out, "{v}"),
        (Format::Json, v) => json(out, &serde_json::json!({ "id": id, "series": v })),
        (Format::Csv, GfValue::Uni(s)) => {
            csv_row(out, &["n", "coefficient"])?;
            s.coeffs()
                .iter()
                .enumerate()
                .try_for_each(|(i, c)| csv_row(out, &[i.to_string(), c.to_string()]))
        }
        (Format::Csv, GfValue::Multi(s)) => {
            csv_row(out, &["n", "y", "z", "coefficient"])?;
            s.coeffs().iter().enumerate().try_for_each(|(i, p)| {
                p.iter().try_for_each(|((j, k), c)| {
                    csv_row(out, &[i.to_string(), j.to_string(), k.to_string(), c.to_string()])
                })
            })
        }
    }
}
