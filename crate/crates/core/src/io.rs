//! Plain-text formats for matrices and point sets.
//!
//! ```text
//! field p=2 m=1 h=2
//! matrix 2 3 level=top
//! 1 0 1
//! 0 1 2
//! ```
//!
//! Point files use `points <count> <k> level=<base|top>` as the second line
//! and hold one normalized point per line. Blank lines and lines starting
//! with `#` are ignored. Non-canonical polynomials are given on the header
//! line as `poly=` (top level) and `base_poly=`, coefficients low-degree
//! first, comma-separated.

use std::sync::Arc;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gfield::{smallest_primitive_poly, Elem, Field, FieldTower, Level};
use crate::linpro::{ProjPoint, ProjSystem};
use crate::mat::Mat;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_poly(line: usize, s: &str) -> Result<Vec<Elem>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<Elem>()
                .map_err(|e| perr(line, format!("bad coefficient {c:?}: {e}")))
        })
        .collect()
}

fn poly_text(p: &[Elem]) -> String {
    p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// `field p=.. m=.. h=..`, with polynomial overrides only when they differ
/// from the canonical ones.
pub fn header(t: &FieldTower) -> String {
    let mut s = t.header();
    if t.base_poly() != smallest_primitive_poly(t.prime_field(), t.m()).as_slice() {
        s.push_str(&format!(" base_poly={}", poly_text(t.base_poly())));
    }
    if t.top_poly() != smallest_primitive_poly(t.base(), t.h()).as_slice() {
        s.push_str(&format!(" poly={}", poly_text(t.top_poly())));
    }
    s
}

pub fn parse_header(line: usize, s: &str) -> Result<FieldTower> {
    let mut it = s.split_whitespace();
    if it.next() != Some("field") {
        return Err(perr(line, "expected a `field` header"));
    }
    let (mut p, mut m, mut h) = (None, 1, 1);
    let (mut base_poly, mut top_poly) = (None, None);
    for kv in it {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| perr(line, format!("expected key=value, got {kv:?}")))?;
        let num = || {
            v.parse::<u32>()
                .map_err(|e| perr(line, format!("bad value for {k}: {e}")))
        };
        match k {
            "p" => p = Some(num()?),
            "m" => m = num()?,
            "h" => h = num()?,
            "poly" => top_poly = Some(parse_poly(line, v)?),
            "base_poly" => base_poly = Some(parse_poly(line, v)?),
            _ => return Err(perr(line, format!("unknown header key {k:?}"))),
        }
    }
    let p = p.ok_or_else(|| perr(line, "missing p="))?;
    FieldTower::with_polys(p, m, h, base_poly, top_poly)
}

fn parse_level(line: usize, s: Option<&str>) -> Result<Level> {
    match s {
        None | Some("level=base") => Ok(Level::Base),
        Some("level=top") => Ok(Level::Top),
        Some(x) => Err(perr(line, format!("bad level {x:?}"))),
    }
}

fn parse_row(line: usize, s: &str, f: &Field, len: usize) -> Result<Vec<Elem>> {
    let row: Vec<Elem> = s
        .split_whitespace()
        .map(|x| {
            x.parse::<Elem>()
                .map_err(|e| perr(line, format!("bad entry {x:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if row.len() != len {
        return Err(perr(line, format!("expected {len} entries, found {}", row.len())));
    }
    if let Some(&bad) = row.iter().find(|&&x| !f.contains(x as u64)) {
        return Err(perr(
            line,
            format!("entry {bad} is outside a field of size {}", f.size()),
        ));
    }
    Ok(row)
}

fn row_text(r: &[Elem]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// A matrix over one level of a tower.
#[derive(Clone, Debug)]
pub struct MatrixFile {
    pub tower: FieldTower,
    pub level: Level,
    pub matrix: Mat,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (l1, h) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
        let tower = parse_header(l1, h)?;
        let (l2, d) = lines.next().ok_or_else(|| perr(l1 + 1, "missing `matrix` line"))?;
        let mut it = d.split_whitespace();
        if it.next() != Some("matrix") {
            return Err(perr(l2, "expected `matrix <rows> <cols>`"));
        }
        let mut dim = || -> Result<usize> {
            it.next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| perr(l2, "expected `matrix <rows> <cols>`"))
        };
        let (rows, cols) = (dim()?, dim()?);
        let level = parse_level(l2, it.next())?;
        let f = tower.field(level).clone();
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ln, s) = lines.next().ok_or_else(|| perr(l2, format!("expected {rows} rows")))?;
            data.extend(parse_row(ln, s, &f, cols)?);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "trailing content after the last row"));
        }
        Ok(MatrixFile {
            tower,
            level,
            matrix: Mat::from_vec(rows, cols, data),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}\nmatrix {} {} level={}\n",
            header(&self.tower),
            self.matrix.rows(),
            self.matrix.cols(),
            self.level
        );
        for r in self.matrix.row_iter() {
            s.push_str(&row_text(r));
            s.push('\n');
        }
        s
    }

    pub fn field(&self) -> &Arc<Field> {
        self.tower.field(self.level)
    }

    pub fn code(&self) -> Result<LinearCode> {
        LinearCode::new(self.field().clone(), self.matrix.clone())
    }

    pub fn from_code(tower: &FieldTower, level: Level, c: &LinearCode) -> Self {
        MatrixFile {
            tower: tower.clone(),
            level,
            matrix: c.generator().clone(),
        }
    }
}

/// A list of projective points over one level of a tower.
#[derive(Clone, Debug)]
pub struct PointsFile {
    pub tower: FieldTower,
    pub level: Level,
    pub k: usize,
    pub points: Vec<ProjPoint>,
}

impl PointsFile {
    /// Points need not be normalized on input; zero vectors are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (l1, h) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
        let tower = parse_header(l1, h)?;
        let (l2, d) = lines.next().ok_or_else(|| perr(l1 + 1, "missing `points` line"))?;
        let mut it = d.split_whitespace();
        if it.next() != Some("points") {
            return Err(perr(l2, "expected `points <count> <k>`"));
        }
        let mut dim = || -> Result<usize> {
            it.next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| perr(l2, "expected `points <count> <k>`"))
        };
        let (count, k) = (dim()?, dim()?);
        let level = parse_level(l2, it.next())?;
        let f = tower.field(level).clone();
        let mut points = Vec::with_capacity(count);
        for (ln, s) in lines {
            let v = parse_row(ln, s, &f, k)?;
            points.push(ProjPoint::normalize(&f, &v).ok_or_else(|| perr(ln, "zero vector is not a point"))?);
        }
        if points.len() != count {
            return Err(perr(
                l2,
                format!("header announces {count} points, found {}", points.len()),
            ));
        }
        Ok(PointsFile {
            tower,
            level,
            k,
            points,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}\npoints {} {} level={}\n",
            header(&self.tower),
            self.points.len(),
            self.k,
            self.level
        );
        for p in &self.points {
            s.push_str(&row_text(p.coords()));
            s.push('\n');
        }
        s
    }

    pub fn field(&self) -> &Arc<Field> {
        self.tower.field(self.level)
    }

    pub fn system(&self) -> Result<ProjSystem> {
        ProjSystem::new(self.field().clone(), self.k, self.points.clone())
    }

    pub fn from_system(tower: &FieldTower, level: Level, p: &ProjSystem) -> Self {
        PointsFile {
            tower: tower.clone(),
            level,
            k: p.k(),
            points: p.points().to_vec(),
        }
    }
}
