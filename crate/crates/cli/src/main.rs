use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use autocorr_core::autocorr::{autocorr_direct_capped, equal_through_order, DEFAULT_MEM_CAP};
use autocorr_core::bounds::{bounds_report, units_sum_decompose};
use autocorr_core::exact::{format_rational, parse_rational};
use autocorr_core::homometry::{
    brute_force_search, classify_z6_pair, generate_z6_pairs_with, lift_to_z30, GeneratedPair,
};
use autocorr_core::io::{parse_factors, parse_support, read_signal, read_signal_or_spectrum, Transformable};
use autocorr_core::spectral::{fourier, inverse_fourier, rationality_check, Inverse};
use autocorr_core::{Character, Cyclotomic, Group, Rational};
use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "autocorr", version, about = "Exact higher-order autocorrelations on finite abelian groups")]
struct Cli {
    /// Add decimal approximations of cyclotomic values.
    #[arg(long, global = true)]
    approx: bool,

    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Direct autocorrelation tensor of one signal (full tensor up to order 3, summary above).
    Compute {
        #[arg(long)]
        order: usize,
        file: PathBuf,
    },
    /// Compare two signals order by order. Exit 0: translates, 1: distinguished, 3: homometric.
    Compare {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Check the spectral conditions for a pair on Z_6.
    Classify { f: PathBuf, g: PathBuf },
    /// Generate pairs from Eisenstein integers of norm r and r^2.
    Generate {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 6)]
        modulus: usize,
        /// Common value of f^(e_0) and g^(e_0) before denominators are cleared.
        #[arg(long, allow_hyphen_values = true)]
        e0: Option<String>,
    },
    /// Completeness-order bounds for a support set.
    Bounds {
        /// Cyclic factor moduli, e.g. "2,6".
        #[arg(long, required_unless_present = "signal")]
        group: Option<String>,
        /// Characters separated by ';' with coordinates separated by ','.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "signal")]
        support: Option<String>,
        /// Take the support from the transform of this signal instead.
        #[arg(long)]
        signal: Option<PathBuf>,
    },
    /// Galois rationality certificate for a signal or spectrum file.
    Galois { file: PathBuf },
    /// Write a residue as a sum of at most three units.
    Units {
        #[arg(long)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        target: i64,
    },
    /// Exhaustive search for pairs sharing autocorrelations through an order.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        bound: i64,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn mem_cap() -> Result<u128> {
    match std::env::var("AUTOCORR_MEM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("AUTOCORR_MEM_CAP={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_MEM_CAP),
    }
}

fn approx(z: &Cyclotomic) -> String {
    let c = z.to_complex();
    let im = if c.im.abs() < 5e-13 { 0.0 } else { c.im };
    format!("{:.6}{:+.6}i", c.re, im)
}

fn with_approx(mut value: Value, fields: &[(&str, &Cyclotomic)], on: bool) -> Value {
    if on {
        let map: serde_json::Map<String, Value> = fields
            .iter()
            .map(|(k, z)| (k.to_string(), Value::String(approx(z))))
            .collect();
        value["approx"] = Value::Object(map);
    }
    value
}

fn run(cli: &Cli) -> Result<(Value, u8)> {
    match &cli.command {
        Command::Compute { order, file } => {
            let f = read_signal(file)?;
            let tensor = autocorr_direct_capped(&f, *order, mem_cap()?)?;
            if *order <= 3 {
                return Ok((serde_json::to_value(&tensor)?, 0));
            }
            let values = tensor.values();
            let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
            let min = values.iter().min().cloned().unwrap_or_else(Rational::zero);
            let zero = vec![0; order - 1];
            Ok((
                json!({
                    "order": order,
                    "group": f.group(),
                    "entries": values.len(),
                    "at_zero": format_rational(tensor.at(&zero)),
                    "min": format_rational(&min),
                    "max": format_rational(&max),
                }),
                0,
            ))
        }
        Command::Compare { f, g, max_order } => {
            let (f, g) = (read_signal(f)?, read_signal(g)?);
            let report = equal_through_order(&f, &g, *max_order)?;
            let code = if report.translate_offset.is_some() {
                0
            } else if report.first_difference.is_some() {
                1
            } else {
                3
            };
            Ok((serde_json::to_value(&report)?, code))
        }
        Command::Classify { f, g } => {
            let (f, g) = (read_signal(f)?, read_signal(g)?);
            let v = classify_z6_pair(&f, &g)?;
            let value = with_approx(
                serde_json::to_value(&v)?,
                &[("f_e1", &v.f_e1), ("g_e1", &v.g_e1)],
                cli.approx,
            );
            Ok((value, 0))
        }
        Command::Generate { r, modulus, e0 } => {
            let e0 = match e0 {
                Some(t) => parse_rational(t)?,
                None => Rational::zero(),
            };
            let pairs = generate_z6_pairs_with(*r, &e0)?;
            let pairs: Vec<GeneratedPair> = match modulus {
                6 => pairs,
                30 => {
                    if !e0.is_zero() {
                        bail!("--e0 is only supported with --modulus 6");
                    }
                    pairs
                        .iter()
                        .map(|p| lift_to_z30(&p.provenance.z_f, &p.provenance.z_g))
                        .collect::<Result<_, _>>()?
                }
                m => bail!("--modulus must be 6 or 30, got {m}"),
            };
            let items: Vec<Value> = pairs
                .iter()
                .map(|p| {
                    with_approx(
                        serde_json::to_value(p).expect("serializable"),
                        &[("z_f", &p.provenance.z_f), ("z_g", &p.provenance.z_g)],
                        cli.approx,
                    )
                })
                .collect();
            let note = if *modulus == 30 {
                "one family of pairs on Z_30, not a classification"
            } else {
                "pairs on Z_6 from Eisenstein integers of norm r and r^2"
            };
            Ok((json!({ "r": r, "modulus": modulus, "note": note, "pairs": items }), 0))
        }
        Command::Bounds { group, support, signal } => {
            let (group, set): (Group, BTreeSet<Character>) = match (group, support, signal) {
                (_, _, Some(path)) => {
                    let f = read_signal(path)?;
                    let s = fourier(&f).support();
                    (f.group().clone(), s)
                }
                (Some(g), Some(s), None) => {
                    let group = Group::new(&parse_factors(g)?)?;
                    let set = parse_support(&group, s)?;
                    (group, set)
                }
                _ => bail!("give --group with --support, or --signal"),
            };
            Ok((serde_json::to_value(bounds_report(&group, &set)?)?, 0))
        }
        Command::Galois { file } => match read_signal_or_spectrum(file)? {
            Transformable::Signal(f) => {
                let cert = rationality_check(&fourier(&f));
                Ok((json!({ "input": "signal", "certificate": cert }), 0))
            }
            Transformable::Spectrum(spec) => {
                let cert = rationality_check(&spec);
                let inverse = match inverse_fourier(&spec) {
                    Inverse::Rational(s) => json!({ "rational": true, "signal": s }),
                    Inverse::NonRational { element, value, .. } => {
                        let mut v = json!({ "rational": false, "element": element, "value": value });
                        if cli.approx {
                            v["approx"] = Value::String(approx(&value));
                        }
                        v
                    }
                };
                Ok((json!({ "input": "spectrum", "certificate": cert, "inverse": inverse }), 0))
            }
        },
        Command::Units { modulus, target } => {
            let d = units_sum_decompose(*modulus, *target)?;
            Ok((serde_json::to_value(d)?, 0))
        }
        Command::Search { group, bound, max_order } => {
            let group = Group::new(&parse_factors(group)?)?;
            let result = brute_force_search(&group, *bound, *max_order)?;
            Ok((serde_json::to_value(result)?, 0))
        }
    }
}
