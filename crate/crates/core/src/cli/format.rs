//! Text file formats: a one-line header of `key=value` fields followed by
//! comma-separated rows. Numbers are written with 17 significant digits so
//! every `f64` survives a write/read cycle unchanged.
//!
//! ```text
//! signal n=1 N=256 delta=0.15 origin=-19.2
//! re,im                                      (one row per sample, row-major)
//!
//! spectrum n=1 N=256 delta=0.15 origin=-19.2 warp=<B row-major>
//! re,im                                      (centered frequency order)
//!
//! gram n=1 N=256 delta=0.15 origin=-19.2 warp=<B row-major> stride=1
//! u-index,w-index,re,im
//!
//! points n=2 count=3
//! w1,w2[,re,im]
//! ```
//!
//! Lines starting with `#` and blank lines are ignored everywhere.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::sampling::{Gram, Grid, Point, SampledSignal, ShiftLattice, Spectrum, WarpedGrid};
use crate::symplectic::{Block, FreeSymplecticMatrix, Preset};
use crate::Error;

/// A syntax error at a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

/// Parse outcome: syntax problems and library validation failures stay apart
/// so callers can map them to different exit codes.
#[derive(Debug)]
pub enum ReadError {
    Parse(ParseError),
    Invalid(Error),
}

impl From<Error> for ReadError {
    fn from(e: Error) -> Self {
        ReadError::Invalid(e)
    }
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, ReadError> {
    Err(ReadError::Parse(ParseError { line, msg: msg.into() }))
}

/// Any document the tool reads or writes.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Signal(SampledSignal),
    Spectrum(Spectrum),
    Gram(Gram),
    Points { n: usize, points: Vec<Point>, values: Option<Vec<Complex64>> },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Signal(_) => "signal",
            Document::Spectrum(_) => "spectrum",
            Document::Gram(_) => "gram",
            Document::Points { .. } => "points",
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
}

fn grid_header(g: &Grid) -> String {
    let counts: Vec<String> = g.counts().iter().map(|c| c.to_string()).collect();
    format!("n={} N={} delta={} origin={}", g.dim(), counts.join(","), list(g.spacing()), list(g.origin()))
}

fn push_values(out: &mut String, values: &[Complex64]) {
    for v in values {
        let _ = writeln!(out, "{},{}", num(v.re), num(v.im));
    }
}

pub fn write_signal(s: &SampledSignal) -> String {
    let mut out = format!("signal {}\n", grid_header(s.grid()));
    push_values(&mut out, s.values());
    out
}

pub fn write_spectrum(s: &Spectrum) -> String {
    let wg = s.wgrid();
    let mut out = format!("spectrum {} warp={}\n", grid_header(wg.signal_grid()), list(&wg.map().row_major()));
    push_values(&mut out, s.values());
    out
}

pub fn write_gram(g: &Gram) -> String {
    let wg = g.wgrid();
    let mut out = format!(
        "gram {} warp={} stride={}\n",
        grid_header(wg.signal_grid()),
        list(&wg.map().row_major()),
        g.shifts().stride()
    );
    for (r, row) in g.rows().enumerate() {
        for (i, v) in row.iter().enumerate() {
            let _ = writeln!(out, "{r},{i},{},{}", num(v.re), num(v.im));
        }
    }
    out
}

pub fn write_points(n: usize, points: &[Point], values: Option<&[Complex64]>) -> String {
    let mut out = format!("points n={n} count={}\n", points.len());
    for (k, p) in points.iter().enumerate() {
        out.push_str(&list(&p[..n]));
        if let Some(v) = values {
            let _ = write!(out, ",{},{}", num(v[k].re), num(v[k].im));
        }
        out.push('\n');
    }
    out
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Signal(s) => write_signal(s),
        Document::Spectrum(s) => write_spectrum(s),
        Document::Gram(g) => write_gram(g),
        Document::Points { n, points, values } => write_points(*n, points, values.as_deref()),
    }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: FromStr>(line: usize, s: &str, what: &str) -> Result<T, ReadError> {
    match s.trim().parse() {
        Ok(v) => Ok(v),
        Err(_) => perr(line, format!("cannot parse {what} from '{}'", s.trim())),
    }
}

fn parse_list<T: FromStr>(line: usize, s: &str, what: &str) -> Result<Vec<T>, ReadError> {
    s.split(',').map(|t| parse_num(line, t, what)).collect()
}

fn parse_finite(line: usize, s: &str) -> Result<f64, ReadError> {
    let v: f64 = parse_num(line, s, "number")?;
    if !v.is_finite() {
        return perr(line, format!("non-finite value '{}'", s.trim()));
    }
    Ok(v)
}

struct Header {
    line: usize,
    kind: String,
    fields: Vec<(String, String)>,
}

impl Header {
    fn parse(line: usize, text: &str) -> Result<Self, ReadError> {
        let mut tokens = text.split_whitespace();
        let kind = tokens.next().unwrap_or_default().to_string();
        let mut fields = Vec::new();
        for t in tokens {
            match t.split_once('=') {
                Some((k, v)) => fields.push((k.to_string(), v.to_string())),
                None => return perr(line, format!("header field '{t}' is not key=value")),
            }
        }
        Ok(Header { line, kind, fields })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, ReadError> {
        match self.get(key) {
            Some(v) => Ok(v),
            None => perr(self.line, format!("{} header is missing '{key}='", self.kind)),
        }
    }

    fn dim(&self) -> Result<usize, ReadError> {
        let n: usize = parse_num(self.line, self.require("n")?, "n")?;
        if !(n == 1 || n == 2) {
            return Err(ReadError::Invalid(Error::DimensionError(format!("n = {n} must be 1 or 2"))));
        }
        Ok(n)
    }

    fn axes<T: FromStr>(&self, key: &str, n: usize) -> Result<Vec<T>, ReadError> {
        let v = parse_list(self.line, self.require(key)?, key)?;
        if v.len() != n {
            return perr(self.line, format!("'{key}' has {} entries, expected {n}", v.len()));
        }
        Ok(v)
    }

    fn grid(&self) -> Result<Grid, ReadError> {
        let n = self.dim()?;
        let counts = self.axes("N", n)?;
        let spacing = self.axes("delta", n)?;
        match self.get("origin") {
            Some(_) => Ok(Grid::new(counts, spacing, self.axes("origin", n)?)?),
            None => Ok(Grid::centered(counts, spacing)?),
        }
    }

    fn warp(&self, n: usize) -> Result<Block, ReadError> {
        let v: Vec<f64> = parse_list(self.line, self.require("warp")?, "warp")?;
        if v.len() != n * n {
            return perr(self.line, format!("'warp' has {} entries, expected {}", v.len(), n * n));
        }
        Ok(Block::from_row_major(n, &v)?)
    }
}

fn row_fields(line: usize, text: &str, count: usize) -> Result<Vec<&str>, ReadError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != count {
        return perr(line, format!("expected {count} comma-separated fields, found {}", parts.len()));
    }
    Ok(parts)
}

fn read_values<'a>(
    rows: &mut impl Iterator<Item = (usize, &'a str)>,
    expected: usize,
    last_line: usize,
) -> Result<Vec<Complex64>, ReadError> {
    let mut values = Vec::with_capacity(expected);
    for (line, text) in rows.by_ref() {
        if values.len() == expected {
            return perr(line, format!("more than {expected} rows"));
        }
        let p = row_fields(line, text, 2)?;
        values.push(Complex64::new(parse_finite(line, p[0])?, parse_finite(line, p[1])?));
    }
    if values.len() != expected {
        return perr(last_line, format!("found {} rows, expected {expected}", values.len()));
    }
    Ok(values)
}

/// Parse any of the four document kinds.
pub fn read_document(text: &str) -> Result<Document, ReadError> {
    let last_line = text.lines().count().max(1);
    let mut rows = content_lines(text);
    let Some((hline, htext)) = rows.next() else {
        return perr(1, "empty document");
    };
    let header = Header::parse(hline, htext)?;
    match header.kind.as_str() {
        "signal" => {
            let grid = header.grid()?;
            let values = read_values(&mut rows, grid.len(), last_line)?;
            Ok(Document::Signal(SampledSignal::new(grid, values)?))
        }
        "spectrum" => {
            let grid = header.grid()?;
            let warp = header.warp(grid.dim())?;
            let values = read_values(&mut rows, grid.len(), last_line)?;
            Ok(Document::Spectrum(Spectrum::new(WarpedGrid::new(grid, warp)?, values)?))
        }
        "gram" => {
            let grid = header.grid()?;
            let warp = header.warp(grid.dim())?;
            let stride: usize = parse_num(header.line, header.require("stride")?, "stride")?;
            let shifts = ShiftLattice::new(grid.clone(), stride)?;
            let wgrid = WarpedGrid::new(grid, warp)?;
            let (nw, nu) = (wgrid.len(), shifts.len());
            let mut values = Vec::with_capacity(nw * nu);
            for (line, text) in rows.by_ref() {
                let p = row_fields(line, text, 4)?;
                let k = values.len();
                if k == nw * nu {
                    return perr(line, format!("more than {} rows", nw * nu));
                }
                let (r, i): (usize, usize) = (parse_num(line, p[0], "u-index")?, parse_num(line, p[1], "w-index")?);
                if (r, i) != (k / nw, k % nw) {
                    return perr(line, format!("row ({r},{i}) out of order, expected ({},{})", k / nw, k % nw));
                }
                values.push(Complex64::new(parse_finite(line, p[2])?, parse_finite(line, p[3])?));
            }
            if values.len() != nw * nu {
                return perr(last_line, format!("found {} rows, expected {}", values.len(), nw * nu));
            }
            Ok(Document::Gram(Gram::new(wgrid, shifts, values)?))
        }
        "points" => {
            let n = header.dim()?;
            let count: usize = parse_num(header.line, header.require("count")?, "count")?;
            let mut points = Vec::with_capacity(count);
            let mut values = Vec::new();
            let mut with_values = None;
            for (line, text) in rows.by_ref() {
                let parts: Vec<&str> = text.split(',').collect();
                let has = match (parts.len(), with_values) {
                    (k, None | Some(false)) if k == n => false,
                    (k, None | Some(true)) if k == n + 2 => true,
                    (k, _) => return perr(line, format!("unexpected field count {k}")),
                };
                with_values = Some(has);
                let mut p = [0.0; 2];
                for j in 0..n {
                    p[j] = parse_finite(line, parts[j])?;
                }
                points.push(p);
                if has {
                    values.push(Complex64::new(parse_finite(line, parts[n])?, parse_finite(line, parts[n + 1])?));
                }
            }
            if points.len() != count {
                return perr(last_line, format!("found {} points, expected {count}", points.len()));
            }
            let values = if with_values == Some(true) { Some(values) } else { None };
            Ok(Document::Points { n, points, values })
        }
        other => perr(hline, format!("unknown document kind '{other}'")),
    }
}

/// Matrix description: `key=value` pairs separated by `;` or newlines.
///
/// ```text
/// n=1; preset=frft; alpha=0.7853981633974483
/// n=2; preset=fresnel; B=1,0.5,0.5,2
/// n=2; preset=separable; a=1,0; b=2,1; c=-0.25,-1; d=0.5,0
/// n=1; A=0; B=1; C=-1; D=0
/// ```
pub fn read_matrix(text: &str) -> Result<FreeSymplecticMatrix, ReadError> {
    let mut fields: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        for item in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let Some((k, v)) = item.split_once('=') else {
                return perr(line, format!("'{item}' is not key=value"));
            };
            let k = k.trim();
            if fields.iter().any(|(_, key, _)| key == k) {
                return perr(line, format!("duplicate key '{k}'"));
            }
            fields.push((line, k.to_string(), v.trim().to_string()));
        }
    }
    let get = |key: &str| fields.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (*l, v.as_str()));
    let last = text.lines().count().max(1);
    let Some((nline, nval)) = get("n") else {
        return perr(last, "matrix is missing 'n='");
    };
    let n: usize = parse_num(nline, nval, "n")?;
    if !(n == 1 || n == 2) {
        return Err(ReadError::Invalid(Error::DimensionError(format!("n = {n} must be 1 or 2"))));
    }
    let block = |key: &str| -> Result<Block, ReadError> {
        let Some((line, v)) = get(key) else {
            return perr(last, format!("matrix is missing '{key}='"));
        };
        let xs: Vec<f64> = parse_list(line, v, key)?;
        if xs.len() != n * n {
            return perr(line, format!("'{key}' has {} entries, expected {}", xs.len(), n * n));
        }
        if xs.iter().any(|x| !x.is_finite()) {
            return perr(line, format!("'{key}' has non-finite entries"));
        }
        Ok(Block::from_row_major(n, &xs)?)
    };
    let allowed: &[&str] = match get("preset") {
        None => &["n", "A", "B", "C", "D"],
        Some((_, "fourier")) => &["n", "preset"],
        Some((_, "frft")) => &["n", "preset", "alpha"],
        Some((_, "fresnel")) => &["n", "preset", "B"],
        Some((_, "separable")) => &["n", "preset", "a", "b", "c", "d"],
        Some((line, other)) => return perr(line, format!("unknown preset '{other}'")),
    };
    if let Some((line, k, _)) = fields.iter().find(|(_, k, _)| !allowed.contains(&k.as_str())) {
        return perr(*line, format!("unexpected key '{k}'"));
    }
    let m = match get("preset") {
        None => FreeSymplecticMatrix::validate(block("A")?, block("B")?, block("C")?, block("D")?)?,
        Some((_, "fourier")) => FreeSymplecticMatrix::preset(n, &Preset::Fourier)?,
        Some((_, "frft")) => {
            let Some((line, v)) = get("alpha") else {
                return perr(last, "frft preset needs 'alpha='");
            };
            let alpha = parse_finite(line, v)?;
            FreeSymplecticMatrix::preset(n, &Preset::Frft { alpha })?
        }
        Some((_, "fresnel")) => FreeSymplecticMatrix::preset(n, &Preset::Fresnel { b: block("B")? })?,
        Some(_) => {
            let mut per_key = Vec::new();
            for key in ["a", "b", "c", "d"] {
                let Some((line, v)) = get(key) else {
                    return perr(last, format!("separable preset needs '{key}='"));
                };
                let xs: Vec<f64> = parse_list(line, v, key)?;
                if xs.len() != n || xs.iter().any(|x| !x.is_finite()) {
                    return perr(line, format!("'{key}' needs {n} finite entries"));
                }
                per_key.push(xs);
            }
            let axes = (0..n).map(|j| [per_key[0][j], per_key[1][j], per_key[2][j], per_key[3][j]]).collect();
            FreeSymplecticMatrix::preset(n, &Preset::Separable { axes })?
        }
    };
    Ok(m)
}

/// Explicit-block matrix description that [`read_matrix`] accepts.
pub fn write_matrix(m: &FreeSymplecticMatrix) -> String {
    format!(
        "n={}\nA={}\nB={}\nC={}\nD={}\n",
        m.dim(),
        list(&m.a().row_major()),
        list(&m.b().row_major()),
        list(&m.c().row_major()),
        list(&m.d().row_major())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nslct::nslct_fast;
    use crate::sampling::{synthesize, Synth};
    use crate::stnslct::{stnslct_gram, WindowSpec};

    fn parse_err(r: Result<impl std::fmt::Debug, ReadError>) -> ParseError {
        match r {
            Err(ReadError::Parse(p)) => p,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn signal_round_trip_is_bit_exact() {
        let grid = Grid::new(vec![8, 16], vec![0.3, 0.1], vec![-1.1, 0.7]).unwrap();
        let s = synthesize(&Synth::Noise { seed: 2, bandwidth: 3.0, envelope: 0.5 }, &grid).unwrap();
        let back = read_document(&write_signal(&s)).unwrap();
        assert_eq!(back, Document::Signal(s));
    }

    #[test]
    fn spectrum_and_gram_round_trip() {
        let grid = Grid::self_dual(1, 32).unwrap();
        let f = synthesize(&Synth::Gaussian { sigma: 1.0, center: [0.3, 0.0], freq: [1.0, 0.0] }, &grid).unwrap();
        let m = FreeSymplecticMatrix::preset(1, &Preset::Frft { alpha: 0.3 }).unwrap();
        let spec = nslct_fast(&f, &m).unwrap();
        assert_eq!(read_document(&write_spectrum(&spec)).unwrap(), Document::Spectrum(spec));
        let g = stnslct_gram(&f, &WindowSpec::new(f.clone(), 2).unwrap(), &m).unwrap();
        assert_eq!(read_document(&write_gram(&g)).unwrap(), Document::Gram(g));
    }

    #[test]
    fn points_round_trip() {
        let pts = vec![[0.1, -2.0], [1.0 / 3.0, 5.5]];
        let vals = vec![Complex64::new(1.0, 2.0), Complex64::new(-0.1, 1e-300)];
        let text = write_points(2, &pts, Some(&vals));
        let doc = read_document(&text).unwrap();
        assert_eq!(doc, Document::Points { n: 2, points: pts.clone(), values: Some(vals) });
        let bare = read_document(&write_points(2, &pts, None)).unwrap();
        assert_eq!(bare, Document::Points { n: 2, points: pts, values: None });
    }

    #[test]
    fn signal_errors_carry_line_numbers() {
        let mut text = String::from("signal n=1 N=8 delta=0.5\n");
        for k in 0..8 {
            text.push_str(if k == 5 { "1.0;2.0\n" } else { "1.0,0.0\n" });
        }
        assert_eq!(parse_err(read_document(&text)).line, 7);
        assert_eq!(parse_err(read_document("signal n=1 N=8 delta=0.5\n1,0\n")).line, 2);
        assert_eq!(parse_err(read_document("signal n=1 delta=0.5\n")).line, 1);
        assert_eq!(parse_err(read_document("bogus n=1\n")).line, 1);
        let nan = "signal n=1 N=8 delta=0.5\n".to_string() + &"NaN,0\n".repeat(8);
        assert_eq!(parse_err(read_document(&nan)).line, 2);
    }

    #[test]
    fn invalid_grid_is_a_validation_error() {
        let text = "signal n=1 N=6 delta=0.5\n".to_string() + &"0,0\n".repeat(6);
        assert!(matches!(read_document(&text), Err(ReadError::Invalid(Error::BadParam(_)))));
        assert!(matches!(read_document("signal n=3 N=8 delta=1\n"), Err(ReadError::Invalid(Error::DimensionError(_)))));
    }

    #[test]
    fn matrix_presets() {
        let m = read_matrix("n=1; preset=frft; alpha=1.5707963267948966").unwrap();
        let f = FreeSymplecticMatrix::preset(1, &Preset::Fourier).unwrap();
        assert!(m.blocks().max_abs_diff(f.blocks()) < 1e-15);
        let m = read_matrix("# comment\nn=2\npreset=fresnel\nB=1,0.5,0.5,2\n").unwrap();
        assert_eq!(m.b().row_major(), vec![1.0, 0.5, 0.5, 2.0]);
        let m = read_matrix("n=2; preset=separable; a=1,0; b=2,1; c=-0.25,-1; d=0.5,0").unwrap();
        assert_eq!(m.det_b(), 2.0);
        let m = read_matrix("n=1; A=0; B=1; C=-1; D=0").unwrap();
        assert!(m.blocks().max_abs_diff(f.blocks()) < 1e-15);
    }

    #[test]
    fn matrix_round_trip() {
        let m = read_matrix("n=2; preset=separable; a=1,0; b=2,1; c=-0.25,-1; d=0.5,0").unwrap();
        assert_eq!(read_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn matrix_errors() {
        assert_eq!(parse_err(read_matrix("n=1\npreset=frft\nalpha=abc\n")).line, 3);
        assert_eq!(parse_err(read_matrix("n=1\npreset=wavelet\n")).line, 2);
        assert_eq!(parse_err(read_matrix("n=1; preset=fourier\nalpha=1\n")).line, 2);
        assert_eq!(parse_err(read_matrix("n=1\nA=1\nB=1,2\nC=0\nD=1\n")).line, 3);
        assert_eq!(parse_err(read_matrix("n=1\nfoo\n")).line, 2);
        assert!(matches!(read_matrix("n=1; preset=frft; alpha=0"), Err(ReadError::Invalid(Error::SingularB { .. }))));
        assert!(matches!(
            read_matrix("n=1; A=1; B=1; C=1; D=1"),
            Err(ReadError::Invalid(Error::SymplecticViolation { .. }))
        ));
        assert!(matches!(read_matrix("n=3; preset=fourier"), Err(ReadError::Invalid(Error::DimensionError(_)))));
    }
}
