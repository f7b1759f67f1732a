//! File formats and error-to-exit-code mapping for the `dwr` binary.
//!
//! Matrix files are JSON objects with three keys:
//!
//! ```json
//! {"rows": 2, "cols": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}
//! ```
//!
//! `entries` is row-major: `rows` arrays of `cols` two-element `[re, im]`
//! pairs. Block files describe an n-by-n grid of blocks:
//!
//! ```json
//! {"n": 2, "blocks": [[<matrix>, <matrix>], [<matrix>, <matrix>]]}
//! ```
//!
//! where each grid cell is either an inline matrix object or a string path
//! to a matrix file, resolved relative to the block file's directory.
//!
//! All JSON the binary emits goes through [`to_canonical`]: compact layout,
//! object keys in sorted order, every float rendered as 17-significant-digit
//! scientific notation, one trailing newline. Parsing a canonical file and
//! rewriting it reproduces the input byte for byte, which is what makes the
//! bundled data files and the `verify` reports diffable.

use std::fmt;
use std::fs;
use std::path::Path;

use dw_core::{blockops::BlockMatrixSpec, ComplexMatrix, MatrixError, ShellPoint};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Failure modes of a CLI run, partitioned by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input: bad JSON, bad shapes, bad flag combinations. Exit 2.
    Input(String),
    /// The filesystem said no: unreadable input, unwritable output. Exit 3.
    Io(String),
    /// The computation ran but the result is a failure: chain violations,
    /// regression mismatches, or an internal solver defect. Exit 1.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
            CliError::Check(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Io(msg) | CliError::Check(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<MatrixError> for CliError {
    fn from(err: MatrixError) -> Self {
        match err {
            MatrixError::Dimension(_) | MatrixError::Domain(_) => CliError::Input(err.to_string()),
            MatrixError::Internal(_) => CliError::Check(err.to_string()),
        }
    }
}

/// Read a whole file, mapping failures to the I/O exit class.
pub fn load_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// Write a whole file, mapping failures to the I/O exit class.
pub fn write_text(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Parse a matrix file from disk.
pub fn load_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = load_text(path)?;
    parse_matrix(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Parse a matrix file from its JSON text.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    matrix_from_value(&value)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::Input(format!("missing key \"{key}\"")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize, CliError> {
    field(obj, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| CliError::Input(format!("\"{key}\" must be a non-negative integer")))
}

fn reject_unknown_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), CliError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::Input(format!("unexpected key \"{key}\"")));
        }
    }
    Ok(())
}

/// Interpret a JSON value as a matrix body.
pub fn matrix_from_value(value: &Value) -> Result<ComplexMatrix, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Input("matrix must be a JSON object".into()))?;
    reject_unknown_keys(obj, &["rows", "cols", "entries"])?;
    let rows = usize_field(obj, "rows")?;
    let cols = usize_field(obj, "cols")?;
    let entries = field(obj, "entries")?
        .as_array()
        .ok_or_else(|| CliError::Input("\"entries\" must be an array of rows".into()))?;
    if entries.len() != rows {
        return Err(CliError::Input(format!(
            "\"entries\" has {} rows, header says {rows}",
            entries.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Input(format!("row {i} must be an array")))?;
        if row.len() != cols {
            return Err(CliError::Input(format!(
                "row {i} has {} entries, header says {cols}",
                row.len()
            )));
        }
        for (j, cell) in row.iter().enumerate() {
            data.push(complex_from_value(cell, i, j)?);
        }
    }
    ComplexMatrix::new(rows, cols, data).map_err(CliError::from)
}

fn complex_from_value(value: &Value, i: usize, j: usize) -> Result<Complex64, CliError> {
    let pair = value
        .as_array()
        .filter(|p| p.len() == 2)
        .ok_or_else(|| CliError::Input(format!("entry ({i},{j}) must be a [re, im] pair")))?;
    let mut parts = [0.0f64; 2];
    for (slot, v) in parts.iter_mut().zip(pair.iter()) {
        *slot = v
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Input(format!("entry ({i},{j}) must hold finite numbers")))?;
    }
    Ok(Complex64::new(parts[0], parts[1]))
}

/// Parse a block file from disk, resolving string cells relative to its
/// directory.
pub fn load_block_spec(path: &Path) -> Result<BlockMatrixSpec, CliError> {
    let text = load_text(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: invalid JSON: {e}", path.display())))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Input(format!("{}: block file must be a JSON object", path.display())))?;
    reject_unknown_keys(obj, &["n", "blocks"])?;
    let n = usize_field(obj, "n")?;
    let grid = field(obj, "blocks")?
        .as_array()
        .ok_or_else(|| CliError::Input("\"blocks\" must be an array of rows".into()))?;
    if grid.len() != n {
        return Err(CliError::Input(format!(
            "\"blocks\" has {} rows, header says {n}",
            grid.len()
        )));
    }
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut blocks = Vec::with_capacity(n * n);
    for (i, row) in grid.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Input(format!("block row {i} must be an array")))?;
        if row.len() != n {
            return Err(CliError::Input(format!(
                "block row {i} has {} cells, header says {n}",
                row.len()
            )));
        }
        for (j, cell) in row.iter().enumerate() {
            let block = match cell {
                Value::String(rel) => load_matrix(&base.join(rel))?,
                Value::Object(_) => matrix_from_value(cell).map_err(|e| match e {
                    CliError::Input(msg) => CliError::Input(format!("block ({i},{j}): {msg}")),
                    other => other,
                })?,
                _ => {
                    return Err(CliError::Input(format!(
                        "block ({i},{j}) must be a matrix object or a path string"
                    )))
                }
            };
            blocks.push(block);
        }
    }
    BlockMatrixSpec::new(n, blocks).map_err(CliError::from)
}

/// Render a matrix as a JSON value in the matrix-file schema.
pub fn matrix_value(m: &ComplexMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols())
                .map(|j| {
                    let z = m.at(i, j);
                    json!([z.re, z.im])
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

/// Serializer hook that pins every float to 17 significant digits.
struct SciFloats;

impl serde_json::ser::Formatter for SciFloats {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Canonical JSON rendering: compact, sorted keys, scientific floats,
/// trailing newline.
pub fn to_canonical(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFloats);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("canonical JSON is UTF-8")
}

/// CSV rendering of shell samples, one `re_z,im_z,r` row per point.
pub fn shell_csv(points: &[ShellPoint]) -> String {
    let mut out = String::from("re_z,im_z,r\n");
    for p in points {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", p.re_z, p.im_z, p.r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_matrix() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)])
            .unwrap()
    }

    #[test]
    fn canonical_floats_use_seventeen_significant_digits() {
        assert_eq!(to_canonical(&json!(0.5)), "5.0000000000000000e-1\n");
        assert_eq!(to_canonical(&json!(-2.0)), "-2.0000000000000000e0\n");
        // nearest f64 to the decimal literal, rendered at full precision
        assert_eq!(to_canonical(&json!([1.5e-300])), "[1.5000000000000001e-300]\n");
    }

    #[test]
    fn canonical_floats_parse_back_exactly() {
        for &x in &[0.1, 1.0 / 3.0, f64::MAX, f64::MIN_POSITIVE, -0.0, 2.0811388300841898] {
            let text = format!("{x:.16e}");
            assert_eq!(text.parse::<f64>().unwrap(), x, "round trip of {text}");
        }
    }

    #[test]
    fn object_keys_come_out_sorted() {
        let v = json!({"zeta": 1, "alpha": 2, "mid": 3});
        assert_eq!(to_canonical(&v), "{\"alpha\":2,\"mid\":3,\"zeta\":1}\n");
    }

    #[test]
    fn matrix_round_trips_byte_identically() {
        let m = sample_matrix();
        let text = to_canonical(&matrix_value(&m));
        let parsed = parse_matrix(&text).unwrap();
        assert_eq!(to_canonical(&matrix_value(&parsed)), text);
    }

    #[test]
    fn bundled_data_files_are_canonical() {
        // The shipped examples must be in canonical form so that
        // write(parse(file)) reproduces them exactly.
        let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
        for name in ["ex1.json", "ex2.json", "nilp2.json", "proj2.json"] {
            let path = root.join("data").join(name);
            let text = load_text(&path).unwrap();
            let parsed = parse_matrix(&text).unwrap();
            assert_eq!(to_canonical(&matrix_value(&parsed)), text, "{name} drifted");
        }
    }

    #[test]
    fn parse_rejects_malformed_bodies() {
        let missing = r#"{"rows": 2, "entries": []}"#;
        assert!(matches!(parse_matrix(missing), Err(CliError::Input(_))));

        let extra = r#"{"rows": 1, "cols": 1, "entries": [[[0, 0]]], "note": "hi"}"#;
        assert!(matches!(parse_matrix(extra), Err(CliError::Input(_))));

        let short_row = r#"{"rows": 1, "cols": 2, "entries": [[[0, 0]]]}"#;
        assert!(matches!(parse_matrix(short_row), Err(CliError::Input(_))));

        let bad_pair = r#"{"rows": 1, "cols": 1, "entries": [[[0, 0, 0]]]}"#;
        assert!(matches!(parse_matrix(bad_pair), Err(CliError::Input(_))));

        let not_numbers = r#"{"rows": 1, "cols": 1, "entries": [[["a", 0]]]}"#;
        assert!(matches!(parse_matrix(not_numbers), Err(CliError::Input(_))));
    }

    #[test]
    fn block_file_accepts_inline_and_path_cells() {
        let dir = tempfile::tempdir().unwrap();
        let inner = dir.path().join("cell.json");
        write_text(&inner, &to_canonical(&matrix_value(&sample_matrix()))).unwrap();

        let body = json!({
            "n": 2,
            "blocks": [
                [matrix_value(&sample_matrix()), "cell.json"],
                ["cell.json", matrix_value(&sample_matrix())],
            ],
        });
        let spec_path = dir.path().join("grid.json");
        write_text(&spec_path, &to_canonical(&body)).unwrap();

        let spec = load_block_spec(&spec_path).unwrap();
        assert_eq!(spec.n(), 2);
        assert_eq!(spec.dims(), &[2, 2]);
        assert_eq!(spec.block(0, 1).at(1, 0), c(2.0, 0.0));
    }

    #[test]
    fn block_file_rejects_bad_cells() {
        let dir = tempfile::tempdir().unwrap();
        let spec_path = dir.path().join("grid.json");
        let body = json!({"n": 1, "blocks": [[42]]});
        write_text(&spec_path, &to_canonical(&body)).unwrap();
        assert!(matches!(load_block_spec(&spec_path), Err(CliError::Input(_))));

        let missing_ref = json!({"n": 1, "blocks": [["absent.json"]]});
        write_text(&spec_path, &to_canonical(&missing_ref)).unwrap();
        assert!(matches!(load_block_spec(&spec_path), Err(CliError::Io(_))));
    }

    #[test]
    fn shell_csv_has_header_and_full_precision_rows() {
        let points = vec![ShellPoint { re_z: 1.0, im_z: 0.0, r: 1.0 }];
        let text = shell_csv(&points);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("re_z,im_z,r"));
        assert_eq!(
            lines.next(),
            Some("1.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0")
        );
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn missing_file_maps_to_io_error() {
        let err = load_matrix(Path::new("/nonexistent/never.json")).unwrap_err();
        assert!(matches!(err, CliError::Io(_)));
        assert_eq!(err.exit_code(), 3);
    }
}
