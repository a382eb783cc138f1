//! CSV and JSON rendering. CSV uses `,`, `.` decimals, LF line endings and
//! writes reals with 17 significant digits so that parsing recovers them
//! bit for bit.

use serde::Serialize;

use super::commands::{GaudinBlock, ScanRow};
use super::verify::VerificationReport;
use super::{CliError, Format};
use crate::fock::HalfInt;
use crate::rotor::{LevelRow, LevelTable, Parity};

pub fn fmt_real(x: f64) -> String {
    // Fold −0 into 0 so reruns never differ by a sign bit.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_half(h: HalfInt) -> String {
    if h.is_integer() {
        format!("{}", h.twice() / 2)
    } else {
        format!("{}", h.value())
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(std::io::Error::other(e)))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.into()))?;
    s.push('\n');
    Ok(s)
}

pub fn render_levels(table: &LevelTable, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return json(table);
    }
    let mut w = csv_writer();
    w.write_record(["j", "tau", "parity", "energy", "kappa"]).map_err(csv_err)?;
    for r in &table.rows {
        w.write_record([
            fmt_half(r.j),
            fmt_half(r.tau),
            r.parity.as_str().to_string(),
            fmt_real(r.energy),
            fmt_real(r.kappa),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

fn parse_err(what: &str, field: &str) -> CliError {
    CliError::Config(format!("cannot parse {what} from '{field}'"))
}

fn half(field: &str) -> Result<HalfInt, CliError> {
    field
        .parse::<f64>()
        .ok()
        .and_then(HalfInt::from_f64)
        .ok_or_else(|| parse_err("a half-integer", field))
}

fn real(field: &str) -> Result<f64, CliError> {
    field.parse::<f64>().map_err(|_| parse_err("a real", field))
}

fn records(text: &str, header: &[&str]) -> Result<Vec<csv::StringRecord>, CliError> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let got = r.headers().map_err(csv_err)?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(CliError::Config(format!("unexpected CSV header {got:?}")));
    }
    r.records().map(|rec| rec.map_err(csv_err)).collect()
}

/// Inverse of the CSV branch of [`render_levels`].
pub fn read_levels_csv(text: &str) -> Result<Vec<LevelRow>, CliError> {
    records(text, &["j", "tau", "parity", "energy", "kappa"])?
        .iter()
        .map(|rec| {
            let parity = match &rec[2] {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                other => return Err(parse_err("a parity", other)),
            };
            Ok(LevelRow {
                j: half(&rec[0])?,
                tau: half(&rec[1])?,
                parity,
                energy: real(&rec[3])?,
                kappa: real(&rec[4])?,
            })
        })
        .collect()
}

pub fn render_scan(rows: &[ScanRow], format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return json(rows);
    }
    let mut w = csv_writer();
    w.write_record(["kappa", "j", "tau", "energy"]).map_err(csv_err)?;
    for r in rows {
        w.write_record([fmt_real(r.kappa), fmt_half(r.j), fmt_half(r.tau), fmt_real(r.energy)])
            .map_err(csv_err)?;
    }
    finish(w)
}

/// Inverse of the CSV branch of [`render_scan`].
pub fn read_scan_csv(text: &str) -> Result<Vec<ScanRow>, CliError> {
    records(text, &["kappa", "j", "tau", "energy"])?
        .iter()
        .map(|rec| {
            Ok(ScanRow {
                kappa: real(&rec[0])?,
                j: half(&rec[1])?,
                tau: half(&rec[2])?,
                energy: real(&rec[3])?,
            })
        })
        .collect()
}

pub fn render_gaudin(blocks: &[GaudinBlock], format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return json(blocks);
    }
    let mut w = csv_writer();
    w.write_record([
        "kappa",
        "j",
        "gamma",
        "family",
        "level",
        "tau_a",
        "tau_b",
        "reconstructed",
        "direct",
        "difference",
    ])
    .map_err(csv_err)?;
    for b in blocks {
        for i in 0..b.reconstructed.len() {
            w.write_record([
                fmt_real(b.kappa),
                fmt_half(b.j),
                fmt_real(b.gamma),
                b.family.as_str().to_string(),
                i.to_string(),
                fmt_real(b.tau_a[i]),
                fmt_real(b.tau_b[i]),
                fmt_real(b.reconstructed[i]),
                fmt_real(b.direct[i]),
                fmt_real(b.difference[i]),
            ])
            .map_err(csv_err)?;
        }
    }
    finish(w)
}

pub fn render_report(report: &VerificationReport) -> Result<String, CliError> {
    json(report)
}
