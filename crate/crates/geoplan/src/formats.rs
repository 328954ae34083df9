//! The two line-based database files and the reference-distance table.
//!
//! Coordinates: `Name;lat;lon`. Connections: `Name;Adj1,Adj2,...`. Blank
//! lines and lines starting with `#` are ignored, tokens are trimmed, and
//! the decimal separator is `.`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use geoplan_core::graph::build_database;
use geoplan_core::{GeographicCoordinate, GraphDatabase, GraphError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        reason: reason.into(),
    }
}

fn parse_degrees(line: usize, field: &str, what: &str, limit: f64) -> Result<f64, ParseError> {
    let value: f64 = field
        .parse()
        .map_err(|_| err(line, format!("invalid {what} {field:?}")))?;
    if !value.is_finite() || value.abs() > limit {
        return Err(err(line, format!("{what} out of range: {value}")));
    }
    Ok(value)
}

pub fn parse_coordinates(text: &str) -> Result<Vec<(String, GeographicCoordinate)>, ParseError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (n, line) in content_lines(text) {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let [name, lat, lon] = fields[..] else {
            return Err(err(n, format!("expected Name;lat;lon, got {} field(s)", fields.len())));
        };
        if name.is_empty() {
            return Err(err(n, "empty city name"));
        }
        let lat = parse_degrees(n, lat, "latitude", 90.0)?;
        let lon = parse_degrees(n, lon, "longitude", 180.0)?;
        if !seen.insert(name) {
            return Err(err(n, format!("duplicate city {name}")));
        }
        let coord = GeographicCoordinate::new(lat, lon).map_err(|e| err(n, e.to_string()))?;
        out.push((name.to_string(), coord));
    }
    Ok(out)
}

/// Adjacency names come back sorted and deduplicated.
pub fn parse_connections(text: &str) -> Result<Vec<(String, Vec<String>)>, ParseError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (n, line) in content_lines(text) {
        let Some((name, rest)) = line.split_once(';') else {
            return Err(err(n, "expected Name;Adj1,Adj2,..."));
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(err(n, "empty city name"));
        }
        let mut adjacents = BTreeSet::new();
        if !rest.trim().is_empty() {
            for adj in rest.split(',').map(str::trim) {
                if adj.is_empty() {
                    return Err(err(n, "empty adjacency name"));
                }
                if adj.contains(';') {
                    return Err(err(n, format!("stray ';' in {adj:?}")));
                }
                if adj == name {
                    return Err(err(n, format!("self-loop on {name}")));
                }
                adjacents.insert(adj.to_string());
            }
        }
        if !seen.insert(name) {
            return Err(err(n, format!("duplicate city {name}")));
        }
        out.push((name.to_string(), adjacents.into_iter().collect()));
    }
    Ok(out)
}

pub fn write_coordinates(db: &GraphDatabase) -> String {
    let mut out = String::from("# name;latitude;longitude\n");
    for r in db.iter() {
        let _ = writeln!(out, "{};{};{}", r.name(), r.coord().lat(), r.coord().lon());
    }
    out
}

pub fn write_connections(db: &GraphDatabase) -> String {
    let mut out = String::from("# name;adjacent,adjacent,...\n");
    for r in db.iter() {
        let _ = writeln!(out, "{};{}", r.name(), r.adjacents().join(","));
    }
    out
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_database(coords: &str, conns: &str) -> Result<GraphDatabase, LoadError> {
    let c = parse_coordinates(coords).map_err(|source| LoadError::Parse {
        path: PathBuf::from("<coordinates>"),
        source,
    })?;
    let a = parse_connections(conns).map_err(|source| LoadError::Parse {
        path: PathBuf::from("<connections>"),
        source,
    })?;
    Ok(build_database(c, a)?)
}

/// Reads, parses and validates both files.
pub fn load_database(coords: &Path, conns: &Path) -> Result<GraphDatabase, LoadError> {
    let c = parse_coordinates(&read(coords)?).map_err(|source| LoadError::Parse {
        path: coords.to_path_buf(),
        source,
    })?;
    let a = parse_connections(&read(conns)?).map_err(|source| LoadError::Parse {
        path: conns.to_path_buf(),
        source,
    })?;
    Ok(build_database(c, a)?)
}

/// One row of the reference-distance table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferencePair {
    pub lat1: f64,
    pub lon1: f64,
    pub lat2: f64,
    pub lon2: f64,
    pub distance_m: f64,
}

pub fn read_reference_table(path: &Path) -> Result<Vec<ReferencePair>, LoadError> {
    let text = read(path)?;
    parse_reference_table(&text).map_err(|source| LoadError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_reference_table(text: &str) -> Result<Vec<ReferencePair>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|row: Result<ReferencePair, csv::Error>| {
            row.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                err(line, e.to_string())
            })
        })
        .collect()
}

pub fn write_reference_table(rows: &[ReferencePair]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}
