//! `eden`: node encodings, coloured DOT export and isomorphism screening
//! from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eden_cli::input::{load_all, MissingInput, NamedGraph};
use eden_cli::output::{dot_graph, features_csv, hex_color, spectrum_sidecar, FeatureRecord};
use eden_core::isotest::{dataset_scan_detailed, DEFAULT_SAFETY};
use eden_core::{
    calibrate_thresholds, compare_pair, eden_encode, encode_baseline, graph_signature,
    laplacian_pe, normalize_unit, Baseline, Centering, EncoderConfig, Encoding, Graph,
    LaplacianSelection, NormalizeScope, Thresholds, VerdictKind, VerdictReason,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "eden",
    version,
    about = "Distance-based node encodings and isomorphism screening"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write per-node features for every input graph.
    Encode {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        enc: EncodeOpts,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file; CSV output also gets a `<out>.sv.json` spectrum sidecar.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export graphs as DOT with nodes coloured by their 3-d encoding.
    Color {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        enc: EncodeOpts,
        /// Rescale each node's row separately instead of the whole matrix.
        #[arg(long)]
        per_row: bool,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare exactly two graphs.
    Pair {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        sig: SignatureOpts,
        #[command(flatten)]
        tau: TauOpts,
    },
    /// Count unseparated pairs in a corpus of distinct graphs.
    Scan {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        sig: SignatureOpts,
        #[command(flatten)]
        tau: TauOpts,
        /// Calibrate thresholds on the corpus first, with this many
        /// relabellings per graph; overrides --tau-sv/--tau-row.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also list every unseparated pair.
        #[arg(long)]
        candidates: bool,
    },
    /// Derive thresholds from relabelled copies of a corpus.
    Calibrate {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[command(flatten)]
        sig: SignatureOpts,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAFETY)]
        safety: f64,
    },
}

#[derive(Args, Clone)]
struct EncodeOpts {
    #[arg(long, value_enum, default_value_t = EncoderKind::Eden)]
    encoder: EncoderKind,
    #[command(flatten)]
    sig: SignatureOpts,
}

#[derive(Args, Clone)]
struct SignatureOpts {
    #[arg(long, default_value_t = 3)]
    dims: usize,
    #[arg(long, value_enum, default_value_t = CenteringArg::Mean)]
    centering: CenteringArg,
}

impl SignatureOpts {
    fn config(&self) -> EncoderConfig {
        EncoderConfig {
            centering: match self.centering {
                CenteringArg::Mean => Centering::ColumnMean,
                CenteringArg::None => Centering::None,
            },
            ..EncoderConfig::with_dims(self.dims)
        }
    }
}

#[derive(Args, Clone)]
struct TauOpts {
    #[arg(long)]
    tau_sv: Option<f64>,
    #[arg(long)]
    tau_row: Option<f64>,
}

impl TauOpts {
    fn thresholds(&self) -> Result<Thresholds, Failure> {
        let d = Thresholds::default();
        let t = Thresholds {
            tau_sv: self.tau_sv.unwrap_or(d.tau_sv),
            tau_row: self.tau_row.unwrap_or(d.tau_row),
            ..d
        };
        if !(t.tau_sv >= 0.0 && t.tau_row >= 0.0) {
            return Err(Failure::Usage("thresholds must be non-negative".into()));
        }
        Ok(t)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncoderKind {
    Eden,
    S1,
    S2,
    S3,
    LapMin,
    LapMax,
}

impl EncoderKind {
    fn name(self) -> &'static str {
        match self {
            EncoderKind::Eden => "eden",
            EncoderKind::S1 => "s1",
            EncoderKind::S2 => "s2",
            EncoderKind::S3 => "s3",
            EncoderKind::LapMin => "lap-min",
            EncoderKind::LapMax => "lap-max",
        }
    }

    fn encode(self, g: &Graph, cfg: &EncoderConfig) -> Result<Encoding, eden_core::SpectralError> {
        match self {
            EncoderKind::Eden => eden_encode(g, cfg),
            EncoderKind::S1 => encode_baseline(g, Baseline::S1, cfg),
            EncoderKind::S2 => encode_baseline(g, Baseline::S2, cfg),
            EncoderKind::S3 => encode_baseline(g, Baseline::S3, cfg),
            EncoderKind::LapMin => laplacian_pe(g, LaplacianSelection::SmallestNontrivial, cfg),
            EncoderKind::LapMax => laplacian_pe(g, LaplacianSelection::Largest, cfg),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CenteringArg {
    Mean,
    None,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Serialize)]
struct PairReport {
    verdict: VerdictKind,
    reason: VerdictReason,
    graphs: [String; 2],
    singular_values: [Vec<f64>; 2],
    tau_sv: f64,
    tau_row: f64,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        if e.is::<MissingInput>() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Data(e)
        }
    }
}

fn inputs(args: &[String]) -> Result<Vec<NamedGraph>, Failure> {
    Ok(load_all(args)?)
}

// A closed pipe (`eden ... | head`) is not an error.
fn print_stdout(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing to stdout"),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    print_stdout(&(serde_json::to_string_pretty(value).context("json")? + "\n"))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => print_stdout(text),
    }
}

fn encode_all(
    graphs: &[NamedGraph],
    kind: EncoderKind,
    cfg: &EncoderConfig,
) -> Result<Vec<(Encoding, FeatureRecord)>> {
    graphs
        .iter()
        .map(|g| {
            let e = kind
                .encode(&g.graph, cfg)
                .with_context(|| format!("encoding {}", g.name))?;
            let r = FeatureRecord::new(&g.name, kind.name(), &e);
            Ok((e, r))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode {
            inputs: args,
            enc,
            format,
            out,
        } => {
            let cfg = enc.sig.config();
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let graphs = inputs(&args)?;
            let records: Vec<FeatureRecord> = encode_all(&graphs, enc.encoder, &cfg)?
                .into_iter()
                .map(|(_, r)| r)
                .collect();
            match format {
                Format::Csv => {
                    emit(&out, &features_csv(&records)?)?;
                    if let Some(p) = &out {
                        let mut side = p.clone().into_os_string();
                        side.push(".sv.json");
                        let text = serde_json::to_string_pretty(&spectrum_sidecar(&records))
                            .context("sidecar")?;
                        std::fs::write(&side, text + "\n").context("writing sidecar")?;
                    }
                }
                Format::Json => emit(
                    &out,
                    &(serde_json::to_string_pretty(&records).context("json")? + "\n"),
                )?,
                Format::Dot => {
                    return Err(Failure::Usage(
                        "encode writes csv or json; use `color` for DOT".into(),
                    ))
                }
            }
        }
        Command::Color {
            inputs: args,
            enc,
            per_row,
            format,
            out,
        } => {
            if format != Format::Dot {
                return Err(Failure::Usage("color only writes dot".into()));
            }
            if enc.sig.dims != 3 {
                return Err(Failure::Usage(format!(
                    "color needs --dims 3 (one per RGB channel), got {}",
                    enc.sig.dims
                )));
            }
            let cfg = enc.sig.config();
            let graphs = inputs(&args)?;
            let scope = if per_row {
                NormalizeScope::PerRow
            } else {
                NormalizeScope::Global
            };
            let mut text = String::new();
            for (g, (e, _)) in graphs.iter().zip(encode_all(&graphs, enc.encoder, &cfg)?) {
                if e.degenerate() {
                    log::warn!("{}: degenerate spectrum or sign ambiguity; colours are not stable under relabelling", g.name);
                }
                let (unit, constant) = normalize_unit(&e, scope);
                if constant {
                    log::warn!("{}: constant encoding, all channels set to 0.5", g.name);
                }
                let colors: Vec<String> = (0..unit.node_count())
                    .map(|i| hex_color(&unit.row(i)))
                    .collect();
                text.push_str(&dot_graph(&g.name, &g.graph, &colors));
            }
            emit(&out, &text)?;
        }
        Command::Pair {
            inputs: args,
            sig,
            tau,
        } => {
            let t = tau.thresholds()?;
            let cfg = sig.config();
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let graphs = inputs(&args)?;
            let [a, b] = graphs.as_slice() else {
                return Err(Failure::Usage(format!(
                    "pair needs exactly two graphs, got {}",
                    graphs.len()
                )));
            };
            let v = compare_pair(&a.graph, &b.graph, &t, &cfg).context("comparing")?;
            let sv = |g: &Graph| graph_signature(g, &cfg).map(|s| s.sorted_singular_values);
            let report = PairReport {
                verdict: v.verdict,
                reason: v.reason,
                graphs: [a.name.clone(), b.name.clone()],
                singular_values: [
                    sv(&a.graph).context("encoding")?,
                    sv(&b.graph).context("encoding")?,
                ],
                tau_sv: t.tau_sv,
                tau_row: t.tau_row,
            };
            print_json(&report)?;
        }
        Command::Scan {
            inputs: args,
            sig,
            tau,
            trials,
            seed,
            candidates,
        } => {
            let cfg = sig.config();
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            if trials == Some(0) {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let graphs: Vec<Graph> = inputs(&args)?.into_iter().map(|g| g.graph).collect();
            let t = match trials {
                Some(k) => calibrate_thresholds(&graphs, k, seed, DEFAULT_SAFETY, &cfg)
                    .context("calibrating")?,
                None => tau.thresholds()?,
            };
            let outcome = dataset_scan_detailed(&graphs, &t, &cfg).context("scanning")?;
            if candidates {
                print_json(&outcome)?;
            } else {
                print_json(&outcome.report)?;
            }
        }
        Command::Calibrate {
            inputs: args,
            sig,
            trials,
            seed,
            safety,
        } => {
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            if safety <= 0.0 || safety.is_nan() {
                return Err(Failure::Usage("--safety must be positive".into()));
            }
            let cfg = sig.config();
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let graphs: Vec<Graph> = inputs(&args)?.into_iter().map(|g| g.graph).collect();
            let t =
                calibrate_thresholds(&graphs, trials, seed, safety, &cfg).context("calibrating")?;
            print_json(&t)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("see `eden --help` for usage");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
