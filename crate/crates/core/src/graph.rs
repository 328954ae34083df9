//! The immutable reference store of cities and their direct connections.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::geodesy::GeographicCoordinate;

/// Dense index of a city in a [`GraphDatabase`].
///
/// Ids are assigned in ascending name order, so comparing ids compares names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CityId(u32);

impl CityId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CityRecord {
    name: String,
    coord: GeographicCoordinate,
    adjacents: Vec<String>,
    adjacent_ids: Vec<CityId>,
}

impl CityRecord {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coord(&self) -> GeographicCoordinate {
        self.coord
    }

    /// Neighbor names in ascending order.
    pub fn adjacents(&self) -> &[String] {
        &self.adjacents
    }

    /// Neighbor ids, in the same order as [`CityRecord::adjacents`].
    pub fn adjacent_ids(&self) -> &[CityId] {
        &self.adjacent_ids
    }

    pub fn degree(&self) -> usize {
        self.adjacents.len()
    }
}

/// One violated database rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValidationIssue {
    EmptyName,
    DuplicateCity(String),
    SelfLoop(String),
    /// `city` lists `adjacent`, which has no coordinates.
    UnknownAdjacency { city: String, adjacent: String },
    /// `from` lists `to` but `to` does not list `from`.
    AsymmetricEdge { from: String, to: String },
    MissingConnections(String),
    MissingCoordinates(String),
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::EmptyName => f.write_str("empty city name"),
            ValidationIssue::DuplicateCity(n) => write!(f, "duplicate city {n}"),
            ValidationIssue::SelfLoop(n) => write!(f, "{n} lists itself as adjacent"),
            ValidationIssue::UnknownAdjacency { city, adjacent } => {
                write!(f, "{city} lists unknown city {adjacent}")
            }
            ValidationIssue::AsymmetricEdge { from, to } => {
                write!(f, "asymmetric edge: {from} lists {to} but {to} does not list {from}")
            }
            ValidationIssue::MissingConnections(n) => {
                write!(f, "{n} has coordinates but no connection entry")
            }
            ValidationIssue::MissingCoordinates(n) => {
                write!(f, "{n} has a connection entry but no coordinates")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    NotFound(String),
    Validation(Vec<ValidationIssue>),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NotFound(n) => write!(f, "city not found: {n}"),
            GraphError::Validation(issues) => {
                write!(f, "{} validation error(s)", issues.len())?;
                for issue in issues {
                    write!(f, "\n  {issue}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Cities keyed and iterated by name, with undirected adjacency lists.
///
/// Invariants after [`build_database`]: names are unique and nonempty,
/// adjacency lists are sorted, duplicate-free and self-loop-free, every
/// adjacent name resolves, and `B` lists `A` whenever `A` lists `B`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphDatabase {
    records: Vec<CityRecord>,
    index: BTreeMap<String, CityId>,
}

impl GraphDatabase {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Result<&CityRecord, GraphError> {
        self.id(name)
            .map(|id| self.record(id))
            .ok_or_else(|| GraphError::NotFound(name.into()))
    }

    pub fn id(&self, name: &str) -> Option<CityId> {
        self.index.get(name).copied()
    }

    /// # Panics
    /// If `id` does not belong to this database.
    pub fn record(&self, id: CityId) -> &CityRecord {
        &self.records[id.index()]
    }

    /// Records in ascending name order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = &CityRecord> + '_ {
        self.records.iter()
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = CityId> {
        (0..self.records.len() as u32).map(CityId)
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.records.iter().map(CityRecord::degree).sum::<usize>() / 2
    }

    /// Every undirected edge once, smaller id first.
    pub fn edges(&self) -> impl Iterator<Item = (CityId, CityId)> + '_ {
        self.ids().flat_map(move |u| {
            self.record(u)
                .adjacent_ids()
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }
}

/// Builds and validates the database from parsed coordinate and connection
/// entries. Every violation is reported, not just the first.
pub fn build_database(
    coords: Vec<(String, GeographicCoordinate)>,
    conns: Vec<(String, Vec<String>)>,
) -> Result<GraphDatabase, GraphError> {
    let mut issues = BTreeSet::new();

    let mut coord_map = BTreeMap::new();
    for (name, coord) in coords {
        if name.is_empty() {
            issues.insert(ValidationIssue::EmptyName);
        } else if coord_map.insert(name.clone(), coord).is_some() {
            issues.insert(ValidationIssue::DuplicateCity(name));
        }
    }

    let mut conn_map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (name, adjacents) in conns {
        if name.is_empty() {
            issues.insert(ValidationIssue::EmptyName);
            continue;
        }
        if conn_map.contains_key(&name) {
            issues.insert(ValidationIssue::DuplicateCity(name));
            continue;
        }
        let mut set = BTreeSet::new();
        for adj in adjacents {
            if adj == name {
                issues.insert(ValidationIssue::SelfLoop(name.clone()));
            } else {
                set.insert(adj);
            }
        }
        conn_map.insert(name, set);
    }

    for name in coord_map.keys() {
        if !conn_map.contains_key(name) {
            issues.insert(ValidationIssue::MissingConnections(name.clone()));
        }
    }
    for (name, adjacents) in &conn_map {
        if !coord_map.contains_key(name) {
            issues.insert(ValidationIssue::MissingCoordinates(name.clone()));
        }
        for adj in adjacents {
            if !coord_map.contains_key(adj) {
                issues.insert(ValidationIssue::UnknownAdjacency {
                    city: name.clone(),
                    adjacent: adj.clone(),
                });
            } else if !conn_map.get(adj).is_some_and(|back| back.contains(name)) {
                issues.insert(ValidationIssue::AsymmetricEdge {
                    from: name.clone(),
                    to: adj.clone(),
                });
            }
        }
    }

    if !issues.is_empty() {
        return Err(GraphError::Validation(issues.into_iter().collect()));
    }

    let index: BTreeMap<String, CityId> = coord_map
        .keys()
        .enumerate()
        .map(|(i, name)| (name.clone(), CityId(i as u32)))
        .collect();
    let records = coord_map
        .into_iter()
        .map(|(name, coord)| {
            let adjacents: Vec<String> = conn_map
                .remove(&name)
                .unwrap_or_default()
                .into_iter()
                .collect();
            let adjacent_ids = adjacents.iter().map(|a| index[a]).collect();
            CityRecord {
                name,
                coord,
                adjacents,
                adjacent_ids,
            }
        })
        .collect();
    Ok(GraphDatabase { records, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn c(lat: f64, lon: f64) -> GeographicCoordinate {
        GeographicCoordinate::new(lat, lon).unwrap()
    }

    fn conn(name: &str, adj: &[&str]) -> (String, Vec<String>) {
        (name.into(), adj.iter().map(|s| s.to_string()).collect())
    }

    fn triangle() -> GraphDatabase {
        build_database(
            vec![
                ("C".into(), c(2.0, 0.0)),
                ("A".into(), c(0.0, 0.0)),
                ("B".into(), c(1.0, 1.0)),
            ],
            vec![
                conn("A", &["C", "B", "B"]),
                conn("B", &["A", "C"]),
                conn("C", &["B", "A"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn records_are_sorted_and_deduplicated() {
        let db = triangle();
        let names: Vec<_> = db.iter().map(|r| r.name()).collect();
        assert_eq!(names, ["A", "B", "C"]);
        assert_eq!(db.lookup("A").unwrap().adjacents(), ["B", "C"]);
        assert_eq!(db.edge_count(), 3);
        assert_eq!(db.edges().count(), 3);
        assert!(db.id("A").unwrap() < db.id("B").unwrap());
    }

    #[test]
    fn lookup_missing() {
        let db = triangle();
        assert_eq!(
            db.lookup("ZZZ"),
            Err(GraphError::NotFound("ZZZ".into()))
        );
        assert!(GraphDatabase::default().lookup("A").is_err());
    }

    #[test]
    fn reports_every_violation() {
        let err = build_database(
            vec![("A".into(), c(0.0, 0.0)), ("B".into(), c(1.0, 0.0)), ("D".into(), c(3.0, 0.0))],
            vec![
                conn("A", &["B", "Z", "A"]),
                conn("B", &[]),
                conn("E", &[]),
            ],
        )
        .unwrap_err();
        let GraphError::Validation(issues) = err else {
            panic!("expected validation error")
        };
        assert!(issues.contains(&ValidationIssue::SelfLoop("A".into())));
        assert!(issues.contains(&ValidationIssue::UnknownAdjacency {
            city: "A".into(),
            adjacent: "Z".into()
        }));
        assert!(issues.contains(&ValidationIssue::AsymmetricEdge {
            from: "A".into(),
            to: "B".into()
        }));
        assert!(issues.contains(&ValidationIssue::MissingConnections("D".into())));
        assert!(issues.contains(&ValidationIssue::MissingCoordinates("E".into())));
        assert_eq!(issues.len(), 5);
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = build_database(
            vec![("A".into(), c(0.0, 0.0)), ("A".into(), c(1.0, 0.0))],
            vec![conn("A", &[])],
        )
        .unwrap_err();
        assert_eq!(
            err,
            GraphError::Validation(vec![ValidationIssue::DuplicateCity("A".into())])
        );
    }
}
