use std::fs;

use geoplan::formats::{
    load_database, parse_connections, parse_coordinates, parse_database, parse_reference_table,
    write_connections, write_coordinates, write_reference_table, LoadError, ReferencePair,
};
use geoplan_core::graph::ValidationIssue;
use geoplan_core::GraphError;
use proptest::prelude::*;

fn data(file: &str) -> String {
    format!("{}/../../data/{file}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn coordinate_lines() {
    let rows = parse_coordinates("Alpha;10.5000;-60.2500\n").unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].0, "Alpha");
    assert_eq!((rows[0].1.lat(), rows[0].1.lon()), (10.5, -60.25));

    let e = parse_coordinates("# header\n\nBeta;91.0;0.0\n").unwrap_err();
    assert_eq!(e.line, 3);
    assert!(e.reason.contains("latitude out of range"), "{e}");

    assert!(parse_coordinates("Gamma;0;181").unwrap_err().reason.contains("longitude"));
    assert!(parse_coordinates("Gamma;0").is_err());
    assert!(parse_coordinates("Gamma;0;1;2").is_err());
    assert!(parse_coordinates("Gamma;north;1").is_err());
    assert!(parse_coordinates("Gamma;NaN;1").is_err());
    let dup = parse_coordinates("X;0;0\nX;1;1").unwrap_err();
    assert_eq!(dup.line, 2);
    // four decimals survive
    let p = parse_coordinates("  Spaced ; 12.3456 ; -0.0001 ").unwrap();
    assert_eq!((p[0].0.as_str(), p[0].1.lat(), p[0].1.lon()), ("Spaced", 12.3456, -0.0001));
}

#[test]
fn connection_lines() {
    let rows = parse_connections("A;J,D,B,C,B").unwrap();
    assert_eq!(rows, vec![("A".into(), vec!["B".into(), "C".into(), "D".into(), "J".into()])]);
    assert_eq!(parse_connections("A;").unwrap(), vec![("A".into(), vec![])]);
    assert!(parse_connections("A;A").unwrap_err().reason.contains("self-loop"));
    assert!(parse_connections("A;B,,C").is_err());
    assert!(parse_connections("A").is_err());
    assert!(parse_connections("A;B\nA;C").is_err());
}

#[test]
fn fixture_databases() {
    let a = load_database(data("fig1a_coordinates.txt").as_ref(), data("fig1a_connections.txt").as_ref())
        .unwrap();
    assert_eq!(a.len(), 10);
    assert_eq!(a.lookup("A").unwrap().adjacents(), ["B", "C", "D", "J"]);
    assert!(a.lookup("ZZZ").is_err());

    let b = load_database(data("fig1b_coordinates.txt").as_ref(), data("fig1b_connections.txt").as_ref())
        .unwrap();
    assert_eq!(b.lookup("A").unwrap().degree(), 3);
    assert!(b.id("J").is_none());
}

#[test]
fn world_database() {
    let db = load_database(data("cities.txt").as_ref(), data("connections.txt").as_ref()).unwrap();
    assert_eq!(db.len(), 124);
    let names: Vec<&str> = db.iter().map(|r| r.name()).collect();
    assert!(names.windows(2).all(|w| w[0] < w[1]));
    for r in db.iter() {
        assert!(r.degree() >= 1, "{} is isolated", r.name());
        for adj in r.adjacents() {
            assert!(db.lookup(adj).unwrap().adjacents().iter().any(|n| n == r.name()));
        }
    }
}

#[test]
fn validation_lists_every_problem() {
    let coords = "A;0;0\nB;0;1\nC;1;0\n";
    let conns = "A;B,Z\nB;C\nC;B\n";
    let Err(LoadError::Graph(GraphError::Validation(issues))) = parse_database(coords, conns) else {
        panic!("expected validation failure");
    };
    assert!(issues.contains(&ValidationIssue::UnknownAdjacency { city: "A".into(), adjacent: "Z".into() }));
    assert!(issues.contains(&ValidationIssue::AsymmetricEdge { from: "A".into(), to: "B".into() }));

    let missing = parse_database("A;0;0\nB;0;1\n", "A;B\n");
    assert!(matches!(missing, Err(LoadError::Graph(GraphError::Validation(_)))));
}

#[test]
fn io_errors_name_the_file() {
    let e = load_database("no/such/cities.txt".as_ref(), "no/such/conns.txt".as_ref()).unwrap_err();
    assert!(e.to_string().contains("no/such/cities.txt"), "{e}");
}

#[test]
fn reference_table_round_trip() {
    let rows = vec![
        ReferencePair { lat1: 1.5, lon1: -2.25, lat2: 0.1 + 0.2, lon2: 179.999_999_9, distance_m: 1_234.567_890_123 },
        ReferencePair { lat1: -90.0, lon1: 0.0, lat2: 90.0, lon2: 0.0, distance_m: 20_003_931.458_625_9 },
    ];
    let text = format!("# comment\n{}", write_reference_table(&rows));
    assert_eq!(parse_reference_table(&text).unwrap(), rows);
    assert!(parse_reference_table("lat1,lon1,lat2,lon2,distance_m\n1,2,3,4,x\n").is_err());

    let bundled = fs::read_to_string(data("reference_distances.csv")).unwrap();
    assert_eq!(parse_reference_table(&bundled).unwrap().len(), 1000);
}

fn name() -> impl Strategy<Value = String> {
    "[A-Z][a-z_]{0,6}"
}

/// A symmetric random graph over unique names with arbitrary coordinates.
fn database_text() -> impl Strategy<Value = (String, String)> {
    prop::collection::btree_set(name(), 1..12)
        .prop_flat_map(|names| {
            let names: Vec<String> = names.into_iter().collect();
            let n = names.len();
            (
                Just(names),
                prop::collection::vec((-90.0..=90.0f64, -180.0..=180.0f64), n),
                prop::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(names, coords, edges)| {
            let n = names.len();
            let mut c = String::new();
            let mut a = String::new();
            for (i, name) in names.iter().enumerate() {
                c.push_str(&format!("{name};{};{}\n", coords[i].0, coords[i].1));
                let adj: Vec<&str> = (0..n)
                    .filter(|&j| j != i && edges[i.min(j) * n + i.max(j)])
                    .map(|j| names[j].as_str())
                    .collect();
                a.push_str(&format!("{name};{}\n", adj.join(",")));
            }
            (c, a)
        })
}

proptest! {
    #[test]
    fn databases_round_trip((coords, conns) in database_text()) {
        let db = parse_database(&coords, &conns).unwrap();
        let again = parse_database(&write_coordinates(&db), &write_connections(&db)).unwrap();
        prop_assert_eq!(db.len(), again.len());
        for (x, y) in db.iter().zip(again.iter()) {
            prop_assert_eq!(x.name(), y.name());
            prop_assert_eq!(x.coord(), y.coord());
            prop_assert_eq!(x.adjacents(), y.adjacents());
        }
    }
}
