use std::io::Write;
use std::path::Path;

use qcalc_core::qcore::bits_to_digits;
use qcalc_core::{Complex, Real};

use crate::error::CliError;

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Sends `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

/// Significant digits printed for a value carried at `prec` bits.
pub fn digits(prec: usize) -> usize {
    bits_to_digits(prec).floor() as usize
}

pub fn fmt_real(v: &Real, prec: usize) -> String {
    v.to_sci_string(digits(prec))
}

/// `a+bi` / `a-bi`.
pub fn fmt_complex(v: &Complex, prec: usize) -> String {
    let im = fmt_real(&v.im.abs(), prec);
    let sign = if v.im.is_negative() { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_real(&v.re, prec))
}

/// Comma-separated rows with a header and LF line endings.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(header).map_err(wrap)?;
    for r in rows {
        w.write_record(r).map_err(wrap)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
