//! Experiment A: solver distances against a reference table.

use geoplan_core::geodesy::inverse;
use geoplan_core::{Ellipsoid, GeodesyError, GeographicCoordinate};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formats::ReferencePair;

/// Absolute error at or above which a pair counts as a large miss, meters.
pub const LARGE_ERROR_M: f64 = 25.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionRecord {
    pub pair: ReferencePair,
    /// Our distance, or why the solver refused the pair.
    pub ours: Result<f64, GeodesyError>,
}

impl PrecisionRecord {
    pub fn reference_m(&self) -> f64 {
        self.pair.distance_m
    }

    pub fn error_m(&self) -> Option<f64> {
        self.ours.as_ref().ok().map(|s| (s - self.pair.distance_m).abs())
    }

    /// `100 (1 - |ours - ref| / ref)`; a zero reference agrees fully only
    /// with a zero distance.
    pub fn agreement_pct(&self) -> Option<f64> {
        let err = self.error_m()?;
        let r = self.pair.distance_m;
        Some(if r == 0.0 {
            if err == 0.0 { 100.0 } else { 0.0 }
        } else {
            100.0 * (1.0 - err / r)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrecisionSummary {
    /// Pairs the solver answered.
    pub solved: usize,
    pub failures: usize,
    /// Mean, min and max agreement; `None` when nothing was solved.
    pub mean_pct: Option<f64>,
    pub min_pct: Option<f64>,
    pub max_pct: Option<f64>,
    pub max_error_m: Option<f64>,
    pub large_errors: usize,
}

/// `count` rows drawn without replacement by a seeded shuffle, or the whole
/// table in file order when `count` is `None` or exceeds it.
pub fn sample_pairs(table: &[ReferencePair], count: Option<usize>, seed: u64) -> Vec<ReferencePair> {
    match count {
        Some(n) if n < table.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            table.choose_multiple(&mut rng, n).copied().collect()
        }
        _ => table.to_vec(),
    }
}

fn solve(pair: &ReferencePair, ellipsoid: &Ellipsoid) -> Result<f64, GeodesyError> {
    let p = GeographicCoordinate::new(pair.lat1, pair.lon1)?;
    let q = GeographicCoordinate::new(pair.lat2, pair.lon2)?;
    Ok(inverse(p, q, ellipsoid)?.s12)
}

/// Solves every pair; a refused pair is recorded and the batch goes on.
pub fn run_experiment_a(
    pairs: &[ReferencePair],
    ellipsoid: &Ellipsoid,
) -> (Vec<PrecisionRecord>, PrecisionSummary) {
    let records: Vec<PrecisionRecord> = pairs
        .iter()
        .map(|&pair| PrecisionRecord { pair, ours: solve(&pair, ellipsoid) })
        .collect();

    let mut s = PrecisionSummary::default();
    let mut total = 0.0;
    for r in &records {
        let (Some(pct), Some(err)) = (r.agreement_pct(), r.error_m()) else {
            s.failures += 1;
            continue;
        };
        s.solved += 1;
        total += pct;
        s.min_pct = Some(s.min_pct.map_or(pct, |m| m.min(pct)));
        s.max_pct = Some(s.max_pct.map_or(pct, |m| m.max(pct)));
        s.max_error_m = Some(s.max_error_m.map_or(err, |m| m.max(err)));
        if err >= LARGE_ERROR_M {
            s.large_errors += 1;
        }
    }
    if s.solved > 0 {
        s.mean_pct = Some(total / s.solved as f64);
    }
    (records, s)
}
