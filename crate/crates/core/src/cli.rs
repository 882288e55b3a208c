//! Command-line front end: `qedge edges` and `qedge encode`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::encoders::{frqi_encode, intensities_to_angles, neqr_encode, neqr_qubits, qpie_encode, GrayImage};
use crate::error::{Error, Result};
use crate::imageio::{gray_to_bytes, load_raster, montage, save_edge_map, save_gray_bytes, LoadOptions, PadMode, RunManifest, ScanEntry};
use crate::pipeline::{detect, detect_traditional_default, DetectConfig, DirectionReport};
use crate::postprocess::{FirstEdge, ThresholdRule};
use crate::qhed::{AncillaPrep, BoundaryMode, Method, PipelineConfig};
use crate::statevector::{check_register_size, MeasurePolicy, StateVector};

#[derive(Debug, Parser)]
#[command(name = "qedge", version, about = "Quantum image encoding and Hadamard edge detection on a simulated register")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Detect edges and write `<out>.edges.pgm`, `<out>.h.pgm`, `<out>.v.pgm`, `<out>.manifest.json`.
    Edges(EdgesArgs),
    /// Print the amplitudes of an encoded image.
    Encode(EncodeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Qpie,
    Frqi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    MaxProb,
    #[value(name = "forced-0")]
    Forced0,
    #[value(name = "forced-1")]
    Forced1,
    Sampled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Clipped,
    Cyclic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FirstEdgeArg {
    PerGrid,
    PerRow,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AncillaArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PadArg {
    Zero,
    Crop,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ThresholdRuleArg {
    SignedMax,
    MaxAbs,
}

#[derive(Debug, clap::Args)]
struct LoadArgs {
    /// Square the image by zero padding or by center cropping.
    #[arg(long, value_enum, default_value = "zero")]
    pad: PadArg,
    /// Encode color through the base-256 angle map instead of luma.
    #[arg(long)]
    rgb_angle: bool,
}

impl LoadArgs {
    fn options(&self) -> LoadOptions {
        LoadOptions {
            pad: match self.pad {
                PadArg::Zero => PadMode::Zero,
                PadArg::Crop => PadMode::Crop,
            },
            rgb_angle: self.rgb_angle,
        }
    }
}

#[derive(Debug, clap::Args)]
struct EdgesArgs {
    #[arg(long, value_enum, default_value = "frqi")]
    method: MethodArg,
    /// Which branch of the color-qubit measurement to keep.
    #[arg(long, value_enum, default_value = "max-prob")]
    branch: BranchArg,
    /// Seed for `--branch sampled`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "clipped")]
    boundary: BoundaryArg,
    /// Fixed threshold on the stored differences, replacing the computed one.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, value_enum, default_value = "signed-max")]
    threshold_rule: ThresholdRuleArg,
    #[arg(long, value_enum, default_value = "per-grid")]
    first_edge: FirstEdgeArg,
    #[arg(long, value_enum, default_value = "plus")]
    ancilla: AncillaArg,
    /// Also write the plain detector's map and an input | plain | outline montage.
    #[arg(long)]
    compare: bool,
    /// Record wall-clock time in the manifest (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    load: LoadArgs,
    input: PathBuf,
    /// Output prefix.
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EncodingArg {
    Qpie,
    Frqi,
    Neqr,
}

#[derive(Debug, clap::Args)]
struct EncodeArgs {
    #[arg(long, value_enum, default_value = "frqi")]
    method: EncodingArg,
    /// Include zero amplitudes.
    #[arg(long)]
    all: bool,
    /// Write the table to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    load: LoadArgs,
    input: PathBuf,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn scan_entry(report: &DirectionReport) -> ScanEntry {
    ScanEntry {
        direction: report.grid.direction(),
        outcome: report.record.map(|r| r.outcome),
        probability: report.record.map(|r| r.probability),
        threshold: report.threshold.value,
        edge_pixels: report.map.count(),
    }
}

fn cmd_edges(args: &EdgesArgs) -> Result<()> {
    let load = args.load.options();
    let raster = load_raster(&args.input)?;
    let img = raster.to_gray_image(&load)?;

    let branch = match args.branch {
        BranchArg::MaxProb => MeasurePolicy::MaxProb,
        BranchArg::Forced0 => MeasurePolicy::ForcedZero,
        BranchArg::Forced1 => MeasurePolicy::ForcedOne,
        BranchArg::Sampled => MeasurePolicy::Sampled { seed: args.seed },
    };
    let config = DetectConfig {
        pipeline: PipelineConfig {
            method: match args.method {
                MethodArg::Qpie => Method::Qpie,
                MethodArg::Frqi => Method::Frqi,
            },
            branch,
            boundary: match args.boundary {
                BoundaryArg::Clipped => BoundaryMode::Clipped,
                BoundaryArg::Cyclic => BoundaryMode::Cyclic,
            },
            ancilla: match args.ancilla {
                AncillaArg::Plus => AncillaPrep::Plus,
                AncillaArg::Minus => AncillaPrep::Minus,
            },
        },
        threshold: args.threshold,
        threshold_rule: match args.threshold_rule {
            ThresholdRuleArg::SignedMax => ThresholdRule::SignedMax,
            ThresholdRuleArg::MaxAbs => ThresholdRule::MaxAbs,
        },
        first_edge: match args.first_edge {
            FirstEdgeArg::PerGrid => FirstEdge::PerGrid,
            FirstEdgeArg::PerRow => FirstEdge::PerRow,
        },
    };

    let started = Instant::now();
    let report = detect(&img, &config)?;
    let traditional = if args.compare {
        Some(detect_traditional_default(&img, config.pipeline.boundary)?)
    } else {
        None
    };
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut outputs = vec![];
    let mut emit = |suffix: &str| {
        let path = with_suffix(&args.out, suffix);
        outputs.push(path.display().to_string());
        path
    };
    save_edge_map(&report.edges, emit(".edges.pgm"))?;
    save_edge_map(&report.horizontal.map, emit(".h.pgm"))?;
    save_edge_map(&report.vertical.map, emit(".v.pgm"))?;
    if let Some(trad) = &traditional {
        save_edge_map(trad, emit(".traditional.pgm"))?;
        let (w, h, data) = montage(
            &[gray_to_bytes(&img), trad.to_bytes(), report.edges.to_bytes()],
            img.side(),
        );
        save_gray_bytes(emit(".montage.pgm"), w, h, &data)?;
    }
    let manifest_path = emit(".manifest.json");

    let manifest = RunManifest {
        input: args.input.display().to_string(),
        image_side: img.side(),
        method: config.pipeline.method,
        branch,
        boundary: config.pipeline.boundary,
        ancilla: config.pipeline.ancilla,
        first_edge: config.first_edge,
        threshold_rule: config.threshold_rule,
        threshold_override: config.threshold,
        pad: load.pad,
        rgb_angle: load.rgb_angle,
        scans: vec![scan_entry(&report.horizontal), scan_entry(&report.vertical)],
        edge_pixels: report.edges.count(),
        outputs,
        timing_ms: args.timing.then_some(elapsed_ms),
    };
    manifest.write(manifest_path)?;
    Ok(())
}

fn encode_state(img: &GrayImage, method: EncodingArg) -> Result<StateVector> {
    match method {
        EncodingArg::Qpie => qpie_encode(img),
        EncodingArg::Frqi => {
            check_register_size(2 * img.n() + 1)?;
            frqi_encode(&intensities_to_angles(img))
        }
        EncodingArg::Neqr => {
            let qubits = neqr_qubits(img.n());
            check_register_size(qubits).map_err(|_| {
                Error::Size(format!(
                    "a {0}x{0} NEQR image needs {qubits} qubits, above the limit of {1}",
                    img.side(),
                    crate::statevector::MAX_QUBITS
                ))
            })?;
            Ok(neqr_encode(img)?.into_state())
        }
    }
}

/// Tab-separated `index bitstring real imag` rows.
pub fn amplitude_table(state: &StateVector, include_zero: bool) -> String {
    let m = state.num_qubits();
    let mut out = String::from("index\tbitstring\treal\timag\n");
    for (k, a) in state.amplitudes().iter().enumerate() {
        if include_zero || a.norm() > 1e-15 {
            out.push_str(&format!("{k}\t{k:0m$b}\t{:.12}\t{:.12}\n", a.re, a.im));
        }
    }
    out
}

fn cmd_encode(args: &EncodeArgs) -> Result<()> {
    let img = load_raster(&args.input)?.to_gray_image(&args.load.options())?;
    let state = encode_state(&img, args.method)?;
    let table = amplitude_table(&state, args.all);
    match &args.out {
        Some(path) => std::fs::write(path, table)?,
        None => std::io::stdout().write_all(table.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Edges(a) => cmd_edges(a),
        Command::Encode(a) => cmd_encode(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qedge: {e}");
            e.exit_code()
        }
    }
}
