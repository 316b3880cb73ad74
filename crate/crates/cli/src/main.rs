//! `kerrspec`: forward and inverse spectral geometry of Kerr-Newman event
//! horizons on the command line.

mod report;
mod spectrum_csv;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kerrspec_core::inverse::{self, TraceSource};
use kerrspec_core::spectral;
use kerrspec_core::{Error as CoreError, ModeSpectrum, PhysicalParams, TraceSet};

use report::{ModeRow, PhysicalReport, Report, ShapeReport, SpectralReport, TraceReport};
use spectrum_csv::{parse_spectrum, write_spectrum, SpectrumFile};

const LONG_ABOUT: &str = "\
Computes spectra of the equivariant Laplacians L_k on Kerr-Newman event \
horizons and reconstructs the horizon metric and the black hole parameters \
(m, a, e) from Green's operator traces gamma_k = sum_j 1/lambda_k^j.

Geometric units throughout (G = c = 1): mass m, spin a, and charge e are \
lengths in one shared, arbitrary unit; eigenvalues carry 1/length^2 and \
traces length^2.

Exit codes: 0 success, 1 I/O failure or round-trip tolerance breach, \
2 invalid physical parameters (or usage), 3 numerical convergence failure, \
4 invalid or inconsistent traces.";

#[derive(Parser)]
#[command(name = "kerrspec", version, about = "Kerr-Newman horizon spectra and trace inversion", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Horizon geometry from physical parameters: radius, Smarr shape,
    /// area, curvature, and the profile function.
    Forward {
        /// Mass (length).
        #[arg(short)]
        m: f64,
        /// Spin, angular momentum per unit mass (length).
        #[arg(short, default_value_t = 0.0)]
        a: f64,
        /// Charge (length).
        #[arg(short, default_value_t = 0.0)]
        e: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalues of one equivariant channel L_k, as CSV.
    Spectrum {
        /// Mass (length).
        #[arg(short)]
        m: f64,
        /// Spin, angular momentum per unit mass (length).
        #[arg(short, default_value_t = 0.0)]
        a: f64,
        /// Charge (length).
        #[arg(short, default_value_t = 0.0)]
        e: f64,
        /// Equivariant index of the channel.
        #[arg(short, allow_hyphen_values = true)]
        k: i32,
        /// Number of eigenvalues.
        #[arg(short = 'J', default_value_t = 60)]
        modes: usize,
        /// Galerkin basis size (default 2J + 16).
        #[arg(short = 'N')]
        basis: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tail-corrected trace estimates from spectrum CSV files.
    Traces {
        /// Spectrum CSV file(s), as emitted by `spectrum`; channels are
        /// merged across files.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Black hole parameters from traces (file or explicit values).
    Invert {
        /// S^1-invariant trace gamma_0.
        #[arg(long)]
        gamma0: Option<f64>,
        /// Equivariant trace as K:VALUE, repeatable (e.g. --gamma 1:90).
        #[arg(long = "gamma", value_name = "K:VALUE")]
        gammas: Vec<String>,
        /// JSON report from `traces` to read gamma values from.
        #[arg(long, conflicts_with_all = ["gamma0", "gammas"])]
        traces: Option<PathBuf>,
        /// Charge input for the mass recovery (the spectrum alone fixes
        /// the mass only when e = 0).
        #[arg(long, default_value_t = 0.0)]
        charge: f64,
        /// Equivariant channel supplying the scale eta^2.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        channel: i32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Forward map, traces, and inversion in one run; verifies that the
    /// input parameters are recovered.
    Roundtrip {
        /// Mass (length).
        #[arg(short)]
        m: f64,
        /// Spin, angular momentum per unit mass (length).
        #[arg(short, default_value_t = 0.0)]
        a: f64,
        /// Charge (length).
        #[arg(short, default_value_t = 0.0)]
        e: f64,
        /// Estimate traces from eigensolves instead of closed forms.
        #[arg(long)]
        numeric: bool,
        /// Eigenvalues per channel for --numeric.
        #[arg(short = 'J', default_value_t = 60)]
        modes: usize,
        /// Galerkin basis size for --numeric (default 2J + 16).
        #[arg(short = 'N')]
        basis: Option<usize>,
        /// Closed-form channels to emit (k = 1..k_max).
        #[arg(long = "k-max", value_parser = clap::value_parser!(u32).range(1..), default_value_t = 1)]
        k_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json for reports, csv for spectra.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

enum CliError {
    Core(CoreError),
    Usage(String),
    InvalidInput(String),
    Io(String),
    Tolerance { deviation: f64, tolerance: f64 },
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        CliError::Core(err)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) | CliError::InvalidInput(msg) | CliError::Io(msg) => {
                write!(f, "{msg}")
            }
            CliError::Tolerance { deviation, tolerance } => write!(
                f,
                "round-trip deviation {deviation:e} exceeds the tolerance {tolerance:e}"
            ),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Tolerance { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::InvalidInput(_) => 4,
            CliError::Core(err) => match err {
                CoreError::NonPositiveMass { .. }
                | CoreError::NegativeParameter { .. }
                | CoreError::HorizonAbsent { .. } => 2,
                CoreError::BasisTooSmall { .. }
                | CoreError::ConvergenceFailure { .. }
                | CoreError::TooFewModes { .. } => 3,
                CoreError::ChargeTooLarge { .. }
                | CoreError::InvalidShape { .. }
                | CoreError::TailModelRejected { .. }
                | CoreError::NonPositiveEigenvalue { .. }
                | CoreError::InvalidTraces { .. }
                | CoreError::ZeroTrace { .. }
                | CoreError::ChannelMissing { .. } => 4,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Forward { m, a, e, output } => cmd_forward(m, a, e, &output),
        Command::Spectrum { m, a, e, k, modes, basis, output } => {
            cmd_spectrum(m, a, e, k, modes, basis, &output)
        }
        Command::Traces { input, output } => cmd_traces(&input, &output),
        Command::Invert { gamma0, gammas, traces, charge, channel, output } => {
            cmd_invert(gamma0, &gammas, traces.as_deref(), charge, channel, &output)
        }
        Command::Roundtrip { m, a, e, numeric, modes, basis, k_max, output } => {
            cmd_roundtrip(m, a, e, numeric, modes, basis, k_max, &output)
        }
    }
}

fn require_json(output: &OutputArgs, command: &str) -> Result<(), CliError> {
    if output.format == Some(Format::Csv) {
        return Err(CliError::Usage(format!(
            "csv output is only available for `spectrum`, not `{command}`"
        )));
    }
    Ok(())
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_forward(m: f64, a: f64, e: f64, output: &OutputArgs) -> Result<(), CliError> {
    require_json(output, "forward")?;
    let params = PhysicalParams::new(m, a, e)?;
    let shape = params.smarr_shape();

    let mut rep = Report::new(json!({ "m": m, "a": a, "e": e }));
    rep.shape = Some(ShapeReport::detailed(&shape));
    rep.physical = Some(PhysicalReport::from(&params));
    rep.flags.insert("extremal", params.is_extremal());
    write_output(&output.out, &rep.to_json())
}

fn cmd_spectrum(
    m: f64,
    a: f64,
    e: f64,
    k: i32,
    modes: usize,
    basis: Option<usize>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let params = PhysicalParams::new(m, a, e)?;
    let shape = params.smarr_shape();
    let basis = basis.unwrap_or(2 * modes + 16);
    let spectrum = spectral::eigenvalues(k, &shape, modes, basis)?;

    match output.format.unwrap_or(Format::Csv) {
        Format::Csv => write_output(&output.out, &write_spectrum(&[spectrum])),
        Format::Json => {
            let mut rep = Report::new(json!({
                "m": m, "a": a, "e": e, "k": k, "modes": modes, "basis_size": basis
            }));
            rep.shape = Some(ShapeReport::bare(&shape));
            rep.physical = Some(PhysicalReport::from(&params));
            rep.spectral = Some(SpectralReport {
                modes: Some(
                    spectrum
                        .eigenvalues()
                        .iter()
                        .enumerate()
                        .map(|(idx, &lambda)| ModeRow { k, j: idx + 1, lambda })
                        .collect(),
                ),
                traces: None,
                trace_values: None,
            });
            rep.flags.insert("extremal", params.is_extremal());
            write_output(&output.out, &rep.to_json())
        }
    }
}

fn cmd_traces(inputs: &[PathBuf], output: &OutputArgs) -> Result<(), CliError> {
    require_json(output, "traces")?;
    let mut merged: Option<SpectrumFile> = None;
    for path in inputs {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let file = parse_spectrum(&text)
            .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
        match &mut merged {
            None => merged = Some(file),
            Some(acc) => {
                if acc.shape != file.shape {
                    return Err(CliError::InvalidInput(format!(
                        "{}: spectrum computed for a different shape than the preceding inputs",
                        path.display()
                    )));
                }
                for (k, lambdas) in file.channels {
                    if acc.channels.insert(k, lambdas).is_some() {
                        return Err(CliError::InvalidInput(format!(
                            "{}: channel k = {k} appears in more than one input",
                            path.display()
                        )));
                    }
                }
            }
        }
    }
    let merged = merged.expect("clap enforces at least one input");

    let mut traces = BTreeMap::new();
    for (&k, lambdas) in &merged.channels {
        let count = lambdas.len();
        let spectrum = ModeSpectrum::new(k, lambdas.clone(), count, merged.shape)?;
        let window = inverse::default_tail_window(count);
        let estimate = spectral::trace_numeric(&spectrum, window)?;
        traces.insert(k, TraceReport::from(&estimate));
    }

    let files: Vec<String> = inputs.iter().map(|p| p.display().to_string()).collect();
    let mut rep = Report::new(json!({ "files": files }));
    rep.shape = Some(ShapeReport::bare(&merged.shape));
    rep.spectral = Some(SpectralReport {
        modes: None,
        traces: Some(traces),
        trace_values: None,
    });
    write_output(&output.out, &rep.to_json())
}

fn parse_gamma_flag(raw: &str) -> Result<(i32, f64), CliError> {
    let (k, value) = raw
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--gamma expects K:VALUE, got {raw:?}")))?;
    let k = k
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--gamma: bad channel index {k:?}")))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--gamma: bad trace value {value:?}")))?;
    Ok((k, value))
}

/// Pulls gamma values out of a JSON report produced by `traces`.
fn traces_from_report(path: &Path) -> Result<(f64, Vec<(i32, f64)>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let doc: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::InvalidInput(format!("{}: not valid JSON: {e}", path.display())))?;
    let entries = doc
        .pointer("/spectral/traces")
        .and_then(|v| v.as_object())
        .ok_or_else(|| {
            CliError::InvalidInput(format!(
                "{}: no spectral.traces object (expected a `traces` report)",
                path.display()
            ))
        })?;
    let mut gamma0 = None;
    let mut channels = Vec::new();
    for (key, entry) in entries {
        let k: i32 = key.parse().map_err(|_| {
            CliError::InvalidInput(format!("{}: bad channel key {key:?}", path.display()))
        })?;
        let value = entry.get("value").and_then(|v| v.as_f64()).ok_or_else(|| {
            CliError::InvalidInput(format!(
                "{}: channel {key} has no numeric `value`",
                path.display()
            ))
        })?;
        if k == 0 {
            gamma0 = Some(value);
        } else {
            channels.push((k, value));
        }
    }
    let gamma0 = gamma0.ok_or_else(|| {
        CliError::InvalidInput(format!(
            "{}: no k = 0 trace; gamma0 is required for inversion",
            path.display()
        ))
    })?;
    Ok((gamma0, channels))
}

fn cmd_invert(
    gamma0: Option<f64>,
    gammas: &[String],
    traces_path: Option<&Path>,
    charge: f64,
    channel: i32,
    output: &OutputArgs,
) -> Result<(), CliError> {
    require_json(output, "invert")?;
    let (gamma0, channels) = match traces_path {
        Some(path) => traces_from_report(path)?,
        None => {
            let gamma0 = gamma0.ok_or_else(|| {
                CliError::Usage(
                    "either --traces FILE or --gamma0 (with --gamma) is required".into(),
                )
            })?;
            let channels = gammas
                .iter()
                .map(|raw| parse_gamma_flag(raw))
                .collect::<Result<Vec<_>, _>>()?;
            (gamma0, channels)
        }
    };
    let trace_set = TraceSet::new(gamma0, channels)?;
    let rep = inverse::physical_from_traces(&trace_set, charge, channel)?;

    let gamma_echo: BTreeMap<i32, f64> = trace_set.channels().collect();
    let mut out = Report::new(json!({
        "gamma0": gamma0,
        "gamma": gamma_echo,
        "charge": charge,
        "channel": channel,
    }));
    out.shape = Some(ShapeReport::bare(&rep.shape));
    out.physical = Some(PhysicalReport::from(&rep.physical));
    out.flags.insert("clamped_beta2", rep.clamped_beta2);
    out.flags.insert("charge_supplied", rep.charge_supplied);
    for (k, dev) in &rep.residuals.channels {
        out.residuals.insert(format!("channel_{k}"), *dev);
    }
    out.residuals
        .insert("mass_cross_check".into(), rep.residuals.mass_cross_check);
    write_output(&output.out, &out.to_json())
}

#[allow(clippy::too_many_arguments)]
fn cmd_roundtrip(
    m: f64,
    a: f64,
    e: f64,
    numeric: bool,
    modes: usize,
    basis: Option<usize>,
    k_max: u32,
    output: &OutputArgs,
) -> Result<(), CliError> {
    require_json(output, "roundtrip")?;
    let params = PhysicalParams::new(m, a, e)?;
    let basis = basis.unwrap_or(2 * modes + 16);
    let source = if numeric {
        TraceSource::Numeric { modes, basis_size: basis }
    } else {
        TraceSource::ClosedForm { k_max }
    };
    let rt = inverse::roundtrip(&params, source)?;

    let mut input = serde_json::Map::new();
    input.insert("m".into(), json!(m));
    input.insert("a".into(), json!(a));
    input.insert("e".into(), json!(e));
    input.insert("numeric".into(), json!(numeric));
    input.insert("tolerance".into(), json!(rt.tolerance));
    if numeric {
        input.insert("modes".into(), json!(modes));
        input.insert("basis_size".into(), json!(basis));
    } else {
        input.insert("k_max".into(), json!(k_max));
    }

    let mut trace_values: BTreeMap<i32, f64> = rt.traces.channels().collect();
    trace_values.insert(0, rt.traces.gamma0());

    let rec = &rt.reconstruction;
    let mut rep = Report::new(serde_json::Value::Object(input));
    rep.shape = Some(ShapeReport::bare(&rec.shape));
    rep.physical = Some(PhysicalReport::from(&rec.physical));
    rep.spectral = Some(SpectralReport {
        modes: None,
        traces: None,
        trace_values: Some(trace_values),
    });
    rep.flags.insert("extremal", params.is_extremal());
    rep.flags.insert("clamped_beta2", rec.clamped_beta2);
    rep.flags.insert("numeric", numeric);
    rep.flags.insert("within_tolerance", rt.within_tolerance());
    for (k, dev) in &rec.residuals.channels {
        rep.residuals.insert(format!("channel_{k}"), *dev);
    }
    rep.residuals
        .insert("mass_cross_check".into(), rec.residuals.mass_cross_check);
    rep.residuals
        .insert("max_roundtrip_deviation".into(), rt.max_rel_deviation);
    write_output(&output.out, &rep.to_json())?;

    if !rt.within_tolerance() {
        return Err(CliError::Tolerance {
            deviation: rt.max_rel_deviation,
            tolerance: rt.tolerance,
        });
    }
    Ok(())
}
