//! Writes `data/reference_distances.csv`: seeded random WGS84 pairs with
//! distances from geographiclib, skipping the nearly antipodal window.
//!
//!     cargo run -p geoplan --example gen_reference [-- COUNT SEED]

use geographiclib_rs::{Geodesic, InverseGeodesic};
use geoplan::formats::{write_reference_table, ReferencePair};
use geoplan_core::geodesy::classify_antipodal;
use geoplan_core::GeographicCoordinate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(1000, |s| s.parse().expect("COUNT"));
    let seed: u64 = args.next().map_or(2024, |s| s.parse().expect("SEED"));

    let geod = Geodesic::wgs84();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    while rows.len() < count {
        let (lat1, lon1) = (rng.gen_range(-90.0..=90.0), rng.gen_range(-180.0..=180.0));
        let (lat2, lon2) = (rng.gen_range(-90.0..=90.0), rng.gen_range(-180.0..=180.0));
        let p = GeographicCoordinate::new(lat1, lon1).unwrap();
        let q = GeographicCoordinate::new(lat2, lon2).unwrap();
        if classify_antipodal(p, q) || p.same_point(&q) {
            continue;
        }
        let distance_m: f64 = geod.inverse(lat1, lon1, lat2, lon2);
        rows.push(ReferencePair { lat1, lon1, lat2, lon2, distance_m });
    }
    let text = format!(
        "# geographiclib WGS84 inverse distances, seed {seed}\n{}",
        write_reference_table(&rows)
    );
    std::fs::write("data/reference_distances.csv", text).expect("write reference table");
    eprintln!("wrote {count} pairs");
}
