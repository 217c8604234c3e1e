//! Plain-text dataset files: one `x y` pair per line, `#` starts a comment
//! line, blank lines are skipped.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::{DataSet, Point};

pub fn parse_dataset(text: &str, origin: &Path) -> Result<DataSet> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: idx + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected two fields, got {line:?}")));
        };
        let x: f64 = xs
            .parse()
            .map_err(|e| parse_err(format!("bad x {xs:?}: {e}")))?;
        let y: f64 = ys
            .parse()
            .map_err(|e| parse_err(format!("bad y {ys:?}: {e}")))?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(parse_err(format!("non-finite coordinate in {line:?}")));
        }
        points.push(Point::new(x, y));
    }
    DataSet::new(points)
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<DataSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_dataset(&text, path)
}

/// Text form of a dataset, with optional `#` header lines. Coordinates are
/// written with 17 significant digits.
pub fn format_dataset(data: &DataSet, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for p in data.points() {
        out.push_str(&format!("{:.16e} {:.16e}\n", p.x, p.y));
    }
    out
}

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place.
pub fn write_atomic(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    let dir: PathBuf = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# header\n1 0\n\n  0 1\n-1 0 \n# mid\n0 -1\n";
        let data = parse_dataset(text, Path::new("mem")).unwrap();
        assert_eq!(data.len(), 4);
        assert_eq!(data.points()[1], Point::new(0.0, 1.0));
    }

    #[test]
    fn rejects_non_finite_and_malformed() {
        let err = parse_dataset("1 0\nnan 1\n", Path::new("f.txt")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_dataset("1 0\ninf 1\n", Path::new("f")).is_err());
        assert!(parse_dataset("1 0 3\n", Path::new("f")).is_err());
        assert!(parse_dataset("1\n", Path::new("f")).is_err());
        assert!(parse_dataset("a b\n", Path::new("f")).is_err());
    }

    #[test]
    fn write_then_read_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        let data = DataSet::from_xy(&[(0.1, 1.0 / 3.0), (2.5e-7, -4.0), (1e10, 7.25)]).unwrap();
        write_atomic(&path, &format_dataset(&data, &["seed=1".into()])).unwrap();
        let back = read_dataset(&path).unwrap();
        assert_eq!(back, data);
    }
}
