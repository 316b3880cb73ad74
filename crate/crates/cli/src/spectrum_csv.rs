//! The spectrum CSV format.
//!
//! ```text
//! # eta2=<value> beta2=<value>
//! k,j,lambda
//! 0,1,0.5
//! ...
//! ```
//!
//! Comment lines start with `#`; the first carries the Smarr parameters the
//! spectrum was computed for. Eigenvalues are printed in Rust's shortest
//! round-trip representation, so parsing reproduces them bit for bit and
//! `traces` consumes exactly what `spectrum` emits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use kerrspec_core::{ModeSpectrum, SmarrShape};

pub fn write_spectrum(spectra: &[ModeSpectrum]) -> String {
    let shape = spectra
        .first()
        .expect("at least one channel")
        .shape();
    let mut out = String::new();
    let _ = writeln!(out, "# eta2={} beta2={}", shape.eta2(), shape.beta2());
    out.push_str("k,j,lambda\n");
    for spectrum in spectra {
        for (idx, lambda) in spectrum.eigenvalues().iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", spectrum.k(), idx + 1, lambda);
        }
    }
    out
}

pub struct SpectrumFile {
    pub shape: SmarrShape,
    /// Ascending eigenvalues per channel, in row order.
    pub channels: BTreeMap<i32, Vec<f64>>,
}

pub fn parse_spectrum(text: &str) -> Result<SpectrumFile, String> {
    let mut eta2: Option<f64> = None;
    let mut beta2: Option<f64> = None;
    let mut channels: BTreeMap<i32, Vec<f64>> = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            for token in comment.split_whitespace() {
                if let Some(v) = token.strip_prefix("eta2=") {
                    eta2 = Some(parse_num(v, lineno)?);
                } else if let Some(v) = token.strip_prefix("beta2=") {
                    beta2 = Some(parse_num(v, lineno)?);
                }
            }
            continue;
        }
        if line == "k,j,lambda" {
            continue;
        }
        let mut fields = line.split(',');
        let (k, _j, lambda) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(k), Some(j), Some(lambda), None) => (k.trim(), j.trim(), lambda.trim()),
            _ => return Err(format!("line {}: expected k,j,lambda", lineno + 1)),
        };
        let k: i32 = k
            .parse()
            .map_err(|_| format!("line {}: bad channel index {k:?}", lineno + 1))?;
        let lambda: f64 = parse_num(lambda, lineno)?;
        channels.entry(k).or_default().push(lambda);
    }

    let eta2 = eta2.ok_or("missing `# eta2=... beta2=...` header")?;
    let beta2 = beta2.ok_or("missing `# eta2=... beta2=...` header")?;
    if channels.is_empty() {
        return Err("no eigenvalue rows found".into());
    }
    let shape = SmarrShape::new(eta2, beta2).map_err(|e| e.to_string())?;
    Ok(SpectrumFile { shape, channels })
}

fn parse_num(token: &str, lineno: usize) -> Result<f64, String> {
    token
        .parse()
        .map_err(|_| format!("line {}: bad number {token:?}", lineno + 1))
}
