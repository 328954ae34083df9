//! Inverse geodesic problem on an oblate ellipsoid of revolution.
//!
//! Points are mapped onto an auxiliary sphere through their reduced
//! latitudes. On that sphere the geodesic is a great circle, parametrized by
//! the arc length `sigma` and spherical longitude `omega`. The ellipsoidal
//! distance and longitude follow from two integrals over `sigma`, evaluated
//! here with sixth-order series (see [`arc_distance`] and
//! [`spherical_to_ellipsoidal_longitude`]).
//!
//! [`inverse`] puts the pair into a canonical orientation, estimates the
//! departure azimuth from spherical trigonometry, and refines it with Newton
//! steps whose derivative is given by the reduced length `m12`. Nearly
//! antipodal pairs are rejected up front (see [`classify_antipodal`]).
//!
//! Angles cross the public API in degrees; radians are internal.

mod angle;
mod series;

use core::f64::consts::PI;
use core::fmt;

use angle::{atan2_deg, normalize_lon, sincos_deg};

/// Longitude residual, in radians, below which the azimuth refinement stops.
pub const LONGITUDE_TOLERANCE: f64 = 1e-12;
/// Maximum number of refinement steps before [`GeodesyError::NoConvergence`].
pub const MAX_ITERATIONS: u32 = 20;
/// Pairs whose canonical longitude difference is at least this many degrees...
pub const ANTIPODAL_MIN_LON12: f64 = 179.0;
/// ...and whose latitudes sum to at most this many degrees in magnitude are
/// treated as nearly antipodal.
pub const ANTIPODAL_MAX_LAT_SUM: f64 = 1.0;

const TINY: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesyError {
    /// The pair lies in the nearly antipodal window, which is not handled.
    AntipodalPair,
    /// Both coordinates denote the same point; no azimuth exists.
    CoincidentPoints,
    /// Azimuth refinement did not reach [`LONGITUDE_TOLERANCE`].
    NoConvergence { iterations: u32, residual: f64 },
    InvalidCoordinate { lat: f64, lon: f64 },
    InvalidEllipsoid { a: f64, f: f64 },
}

impl fmt::Display for GeodesyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeodesyError::AntipodalPair => f.write_str("antipodal pair unsupported"),
            GeodesyError::CoincidentPoints => f.write_str("coincident points"),
            GeodesyError::NoConvergence {
                iterations,
                residual,
            } => write!(
                f,
                "azimuth refinement did not converge after {iterations} iterations \
                 (longitude residual {residual:e} rad)"
            ),
            GeodesyError::InvalidCoordinate { lat, lon } => {
                write!(f, "invalid coordinate ({lat}, {lon})")
            }
            GeodesyError::InvalidEllipsoid { a, f: fl } => {
                write!(f, "invalid ellipsoid a={a} f={fl}")
            }
        }
    }
}

impl core::error::Error for GeodesyError {}

/// An oblate ellipsoid of revolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipsoid {
    a: f64,
    f: f64,
    b: f64,
    e2: f64,
    ep2: f64,
    n: f64,
}

impl Ellipsoid {
    /// World Geodetic System 1984.
    pub const WGS84: Ellipsoid = Ellipsoid::from_parts(6_378_137.0, 1.0 / 298.257_223_563);

    const fn from_parts(a: f64, f: f64) -> Self {
        let e2 = f * (2.0 - f);
        Ellipsoid {
            a,
            f,
            b: a * (1.0 - f),
            e2,
            ep2: e2 / (1.0 - e2),
            n: f / (2.0 - f),
        }
    }

    /// Equatorial radius `a` in meters and flattening `f` in `[0, 1)`.
    pub fn new(a: f64, f: f64) -> Result<Self, GeodesyError> {
        if !(a.is_finite() && a > 0.0 && f.is_finite() && (0.0..1.0).contains(&f)) {
            return Err(GeodesyError::InvalidEllipsoid { a, f });
        }
        Ok(Self::from_parts(a, f))
    }

    /// A sphere of radius `r`.
    pub fn sphere(r: f64) -> Result<Self, GeodesyError> {
        Self::new(r, 0.0)
    }

    /// Equatorial semi-axis, meters.
    pub fn a(&self) -> f64 {
        self.a
    }
    /// First flattening.
    pub fn f(&self) -> f64 {
        self.f
    }
    /// Polar semi-axis, meters.
    pub fn b(&self) -> f64 {
        self.b
    }
    /// First eccentricity squared.
    pub fn e2(&self) -> f64 {
        self.e2
    }
    /// Second eccentricity squared.
    pub fn ep2(&self) -> f64 {
        self.ep2
    }
}

impl Default for Ellipsoid {
    fn default() -> Self {
        Ellipsoid::WGS84
    }
}

/// Geodetic latitude and longitude in decimal degrees.
///
/// Latitude is within [-90, 90]; longitude is normalized into (-180, 180].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeographicCoordinate {
    lat: f64,
    lon: f64,
}

impl GeographicCoordinate {
    pub fn new(lat: f64, lon: f64) -> Result<Self, GeodesyError> {
        if !(lat.is_finite() && lon.is_finite() && (-90.0..=90.0).contains(&lat)) {
            return Err(GeodesyError::InvalidCoordinate { lat, lon });
        }
        Ok(GeographicCoordinate {
            lat: lat + 0.0,
            lon: normalize_lon(lon),
        })
    }

    pub fn lat(&self) -> f64 {
        self.lat
    }

    pub fn lon(&self) -> f64 {
        self.lon
    }

    /// Same location on the surface; all longitudes coincide at a pole.
    pub fn same_point(&self, other: &Self) -> bool {
        self.lat == other.lat && (self.lon == other.lon || self.lat.abs() == 90.0)
    }
}

/// Quantities on the auxiliary sphere for one trial or final geodesic, in
/// the canonical orientation used by [`inverse`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliarySphereState {
    /// Reduced latitudes of the endpoints, radians.
    pub beta1: f64,
    pub beta2: f64,
    /// Azimuth at the equator crossing, radians.
    pub alpha0: f64,
    /// Azimuths at the endpoints, radians.
    pub alpha1: f64,
    pub alpha2: f64,
    /// Arc lengths from the equator crossing, radians; `sigma1 <= sigma2`.
    pub sigma1: f64,
    pub sigma2: f64,
    /// `sigma2 - sigma1`, computed without cancellation.
    pub sigma12: f64,
    /// Spherical longitudes from the equator crossing, radians.
    pub omega1: f64,
    pub omega2: f64,
    /// Spherical longitude difference in [0, pi].
    pub omega12: f64,
    /// Series parameter `k^2 = ep2 cos^2(alpha0)`.
    pub k2: f64,
    /// Reduced length, meters.
    pub m12: f64,
}

/// Distance and endpoint azimuths of a geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSolution {
    /// Geodesic distance, meters.
    pub s12: f64,
    /// Forward azimuth at the first point, degrees clockwise from north, in (-180, 180].
    pub alpha1: f64,
    /// Forward azimuth at the second point, degrees, in (-180, 180].
    pub alpha2: f64,
    /// Number of refinement steps taken (0 for closed-form cases).
    pub iterations: u32,
}

/// Reduced latitude `atan((1 - f) tan(phi))` in radians for a geodetic
/// latitude in degrees.
pub fn reduced_latitude(phi: f64, ell: &Ellipsoid) -> f64 {
    if phi.abs() == 90.0 {
        return libm::copysign(PI / 2.0, phi);
    }
    let (s, c) = sincos_deg(phi);
    libm::atan2((1.0 - ell.f) * s, c)
}

/// True when the pair is an exact antipode or falls in the nearly antipodal
/// window: longitude difference of at least [`ANTIPODAL_MIN_LON12`] degrees
/// together with latitudes that nearly cancel.
pub fn classify_antipodal(p1: GeographicCoordinate, p2: GeographicCoordinate) -> bool {
    let lon12 = normalize_lon(p2.lon - p1.lon).abs();
    let lat_sum = p1.lat + p2.lat;
    if lat_sum == 0.0 && (lon12 == 180.0 || p1.lat.abs() == 90.0) {
        return true;
    }
    lon12 >= ANTIPODAL_MIN_LON12 && lat_sum.abs() <= ANTIPODAL_MAX_LAT_SUM
}

/// Geodesic length `b [I1(sigma2) - I1(sigma1)]` where
/// `I1(sigma) = int_0^sigma sqrt(1 + k^2 sin^2 t) dt`.
pub fn arc_distance(state: &AuxiliarySphereState, ell: &Ellipsoid) -> f64 {
    let eps = series::epsilon(state.k2);
    let c1 = series::c1(eps);
    let b1 = sin_series_at(state.sigma2, &c1) - sin_series_at(state.sigma1, &c1);
    (ell.b * series::a1(eps) * (state.sigma12 + b1)).max(0.0)
}

/// Ellipsoidal longitude difference for a spherical longitude difference
/// `omega` along the geodesic described by `state`:
/// `lambda = omega - f sin(alpha0) [I3(sigma2) - I3(sigma1)]`.
pub fn spherical_to_ellipsoidal_longitude(
    omega: f64,
    state: &AuxiliarySphereState,
    ell: &Ellipsoid,
) -> f64 {
    let eps = series::epsilon(state.k2);
    let c3 = series::c3(eps, ell.n);
    let b3 = sin_series_at(state.sigma2, &c3) - sin_series_at(state.sigma1, &c3);
    omega - ell.f * libm::sin(state.alpha0) * series::a3(eps, ell.n) * (state.sigma12 + b3)
}

fn sin_series_at(sigma: f64, c: &[f64]) -> f64 {
    series::sin_series(libm::sin(sigma), libm::cos(sigma), c)
}

/// Reduced length over `b`, from `J(sigma) = I1(sigma) - I2(sigma)`.
fn reduced_length_over_b(
    k2: f64,
    (ssig1, csig1): (f64, f64),
    (ssig2, csig2): (f64, f64),
    sig12: f64,
) -> f64 {
    let eps = series::epsilon(k2);
    let (a1, a2) = (series::a1(eps), series::a2(eps));
    let (c1, c2) = (series::c1(eps), series::c2(eps));
    let b1 = series::sin_series(ssig2, csig2, &c1) - series::sin_series(ssig1, csig1, &c1);
    let b2 = series::sin_series(ssig2, csig2, &c2) - series::sin_series(ssig1, csig1, &c2);
    let j12 = (a1 - a2) * sig12 + (a1 * b1 - a2 * b2);
    let dn1 = libm::sqrt(1.0 + k2 * ssig1 * ssig1);
    let dn2 = libm::sqrt(1.0 + k2 * ssig2 * ssig2);
    dn2 * (csig1 * ssig2) - dn1 * (ssig1 * csig2) - csig1 * csig2 * j12
}

fn norm2(x: f64, y: f64) -> (f64, f64) {
    let r = libm::hypot(x, y);
    (x / r, y / r)
}

/// Sine/cosine of the reduced latitude, with `cos` kept away from zero.
fn reduced_sincos(lat: f64, ell: &Ellipsoid) -> (f64, f64) {
    let (s, c) = sincos_deg(lat);
    let (s, c) = norm2((1.0 - ell.f) * s, c);
    (s + 0.0, c.max(TINY))
}

/// Pair reoriented so that `lat1 <= 0`, `|lat1| >= |lat2|` and
/// `lon12` lies in [0, 180]; the signs undo the reorientation.
struct Canonical {
    lat1: f64,
    lat2: f64,
    lon12: f64,
    swapped: bool,
    lon_sign: f64,
    lat_sign: f64,
}

impl Canonical {
    fn new(p1: GeographicCoordinate, p2: GeographicCoordinate) -> Self {
        let lon12 = normalize_lon(p2.lon - p1.lon);
        let mut lon_sign = if lon12.is_sign_negative() { -1.0 } else { 1.0 };
        let lon12 = lon12.abs();
        let (mut lat1, mut lat2) = (p1.lat, p2.lat);
        let swapped = lat1.abs() < lat2.abs();
        if swapped {
            lon_sign = -lon_sign;
            core::mem::swap(&mut lat1, &mut lat2);
        }
        let lat_sign = if lat1.is_sign_negative() { 1.0 } else { -1.0 };
        Canonical {
            lat1: lat1 * lat_sign + 0.0,
            lat2: lat2 * lat_sign + 0.0,
            lon12,
            swapped,
            lon_sign,
            lat_sign,
        }
    }

    /// Maps canonical (sin, cos) azimuth pairs back to degrees in the
    /// caller's orientation.
    fn restore(&self, mut az1: (f64, f64), mut az2: (f64, f64)) -> (f64, f64) {
        let swap_sign = if self.swapped {
            core::mem::swap(&mut az1, &mut az2);
            -1.0
        } else {
            1.0
        };
        let fix = |(s, c): (f64, f64)| {
            let deg = atan2_deg(s * swap_sign * self.lon_sign, c * swap_sign * self.lat_sign);
            if deg == -180.0 {
                180.0
            } else {
                deg + 0.0
            }
        };
        (fix(az1), fix(az2))
    }
}

/// Reduced-latitude data shared by every trial azimuth.
struct Endpoints {
    sbet1: f64,
    cbet1: f64,
    sbet2: f64,
    cbet2: f64,
    dn1: f64,
}

impl Endpoints {
    fn new(c: &Canonical, ell: &Ellipsoid) -> Self {
        let (sbet1, cbet1) = reduced_sincos(c.lat1, ell);
        let (mut sbet2, mut cbet2) = reduced_sincos(c.lat2, ell);
        // keep |beta1| == |beta2| exact so the symmetric cases stay symmetric
        if cbet1 < -sbet1 {
            if cbet2 == cbet1 {
                sbet2 = libm::copysign(sbet1, sbet2);
            }
        } else if sbet2.abs() == -sbet1 {
            cbet2 = cbet1;
        }
        Endpoints {
            sbet1,
            cbet1,
            sbet2,
            cbet2,
            dn1: libm::sqrt(1.0 + ell.ep2 * sbet1 * sbet1),
        }
    }

    /// Follows the great circle leaving `beta1` with azimuth `(salp1, calp1)`
    /// up to its first crossing of `beta2`.
    fn trace(&self, salp1: f64, calp1: f64, ell: &Ellipsoid) -> Trace {
        let Endpoints {
            sbet1,
            cbet1,
            sbet2,
            cbet2,
            ..
        } = *self;
        let calp1 = if sbet1 == 0.0 && calp1 == 0.0 {
            -TINY
        } else {
            calp1
        };
        let salp0 = salp1 * cbet1;
        let calp0 = libm::hypot(calp1, salp1 * sbet1);

        let (somg1, comg1) = (salp0 * sbet1, calp1 * cbet1);
        let (ssig1, csig1) = norm2(sbet1, comg1);

        let salp2 = if cbet2 != cbet1 { salp0 / cbet2 } else { salp1 };
        let calp2 = if cbet2 != cbet1 || sbet2.abs() != -sbet1 {
            let t = if cbet1 < -sbet1 {
                (cbet2 - cbet1) * (cbet1 + cbet2)
            } else {
                (sbet1 - sbet2) * (sbet1 + sbet2)
            };
            libm::sqrt(calp1 * cbet1 * calp1 * cbet1 + t) / cbet2
        } else {
            calp1.abs()
        };

        let (somg2, comg2) = (salp0 * sbet2, calp2 * cbet2);
        let (ssig2, csig2) = norm2(sbet2, comg2);

        let sig12 = libm::atan2(
            (csig1 * ssig2 - ssig1 * csig2).max(0.0),
            csig1 * csig2 + ssig1 * ssig2,
        );
        let omg12 = libm::atan2(
            (comg1 * somg2 - somg1 * comg2).max(0.0),
            comg1 * comg2 + somg1 * somg2,
        );
        let k2 = calp0 * calp0 * ell.ep2;
        let m12b = reduced_length_over_b(k2, (ssig1, csig1), (ssig2, csig2), sig12);

        let state = AuxiliarySphereState {
            beta1: libm::atan2(sbet1, cbet1),
            beta2: libm::atan2(sbet2, cbet2),
            alpha0: libm::atan2(salp0, calp0),
            alpha1: libm::atan2(salp1, calp1),
            alpha2: libm::atan2(salp2, calp2),
            sigma1: libm::atan2(ssig1, csig1),
            sigma2: libm::atan2(ssig2, csig2),
            sigma12: sig12,
            omega1: libm::atan2(somg1, comg1),
            omega2: libm::atan2(somg2, comg2),
            omega12: omg12,
            k2,
            m12: ell.b * m12b,
        };
        Trace {
            state,
            salp1,
            calp1,
            salp2,
            calp2,
            m12b,
        }
    }
}

struct Trace {
    state: AuxiliarySphereState,
    salp1: f64,
    calp1: f64,
    salp2: f64,
    calp2: f64,
    m12b: f64,
}

/// Solves the inverse geodesic problem between two points.
///
/// Fails with [`GeodesyError::CoincidentPoints`] for identical points and
/// [`GeodesyError::AntipodalPair`] inside the nearly antipodal window. The
/// result is symmetric: swapping the points gives a bit-identical distance.
pub fn inverse(
    p1: GeographicCoordinate,
    p2: GeographicCoordinate,
    ell: &Ellipsoid,
) -> Result<GeodesicSolution, GeodesyError> {
    solve(p1, p2, ell).map(|(sol, _)| sol)
}

/// Like [`inverse`], also returning the converged auxiliary-sphere state in
/// canonical orientation.
pub fn inverse_with_state(
    p1: GeographicCoordinate,
    p2: GeographicCoordinate,
    ell: &Ellipsoid,
) -> Result<(GeodesicSolution, AuxiliarySphereState), GeodesyError> {
    solve(p1, p2, ell)
}

fn solve(
    p1: GeographicCoordinate,
    p2: GeographicCoordinate,
    ell: &Ellipsoid,
) -> Result<(GeodesicSolution, AuxiliarySphereState), GeodesyError> {
    if p1.same_point(&p2) {
        return Err(GeodesyError::CoincidentPoints);
    }
    if classify_antipodal(p1, p2) {
        return Err(GeodesyError::AntipodalPair);
    }
    let canon = Canonical::new(p1, p2);
    let ends = Endpoints::new(&canon, ell);
    let (slam12, clam12) = sincos_deg(canon.lon12);
    let lam12 = canon.lon12.to_radians();

    let finish = |t: &Trace, s12: f64, iterations: u32| {
        let (alpha1, alpha2) = canon.restore((t.salp1, t.calp1), (t.salp2, t.calp2));
        (
            GeodesicSolution {
                s12,
                alpha1,
                alpha2,
                iterations,
            },
            t.state,
        )
    };

    // Meridians are geodesics: the azimuth is 0 or 180 degrees outright.
    if canon.lat1 == -90.0 || slam12 == 0.0 {
        let t = ends.trace(slam12, clam12, ell);
        if t.state.sigma12 < 1.0 || t.m12b >= 0.0 {
            let s12 = arc_distance(&t.state, ell);
            return Ok(finish(&t, s12, 0));
        }
        // past the conjugate point the meridian is not the shortest path
        return Err(GeodesyError::AntipodalPair);
    }

    // Equator: a circle of radius a, geodesic up to (1 - f) * 180 degrees.
    if ends.sbet1 == 0.0 && canon.lon12 <= (1.0 - ell.f) * 180.0 {
        let t = ends.trace(1.0, 0.0, ell);
        let mut state = t.state;
        state.sigma12 = lam12 / (1.0 - ell.f);
        state.omega12 = state.sigma12;
        state.sigma2 = state.sigma1 + state.sigma12;
        state.omega2 = state.omega1 + state.omega12;
        state.m12 = ell.b * libm::sin(state.sigma12);
        let t = Trace {
            state,
            salp1: 1.0,
            calp1: 0.0,
            salp2: 1.0,
            calp2: 0.0,
            m12b: state.m12 / ell.b,
        };
        return Ok(finish(&t, ell.a * lam12, 0));
    }

    let mut alpha1 = initial_azimuth(&ends, lam12, ell);
    let (mut lo, mut hi) = (0.0_f64, PI);
    let mut residual = f64::INFINITY;
    for iteration in 1..=MAX_ITERATIONS {
        let t = ends.trace(libm::sin(alpha1), libm::cos(alpha1), ell);
        let lambda = spherical_to_ellipsoidal_longitude(t.state.omega12, &t.state, ell);
        residual = lambda - lam12;
        if residual.abs() <= LONGITUDE_TOLERANCE {
            let s12 = arc_distance(&t.state, ell);
            return Ok(finish(&t, s12, iteration));
        }
        if residual > 0.0 {
            hi = hi.min(alpha1);
        } else {
            lo = lo.max(alpha1);
        }
        // d(lambda12)/d(alpha1) = m12 / (a cos(alpha2) cos(beta2))
        let slope = if t.calp2 == 0.0 {
            -2.0 * (1.0 - ell.f) * ends.dn1 / ends.sbet1
        } else {
            (1.0 - ell.f) * t.m12b / (t.calp2 * ends.cbet2)
        };
        let next = alpha1 - residual / slope;
        alpha1 = if slope > 0.0 && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(GeodesyError::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual,
    })
}

/// Departure azimuth from the spherical triangle on the auxiliary sphere,
/// with the longitude scaled by `1 / ((1 - f) w)` where `w` is evaluated at
/// the mean reduced latitude.
fn initial_azimuth(ends: &Endpoints, lam12: f64, ell: &Ellipsoid) -> f64 {
    let Endpoints {
        sbet1,
        cbet1,
        sbet2,
        cbet2,
        ..
    } = *ends;
    let sbetm2 = {
        let s = (sbet1 + sbet2) * (sbet1 + sbet2);
        s / (s + (cbet1 + cbet2) * (cbet1 + cbet2))
    };
    let dnm = libm::sqrt(1.0 + ell.ep2 * sbetm2);
    let omg12 = (lam12 / ((1.0 - ell.f) * dnm)).min(PI);
    let (somg12, comg12) = (libm::sin(omg12), libm::cos(omg12));
    // cos(beta1) sin(beta2) - sin(beta1) cos(beta2) cos(omega12), rearranged
    // to avoid cancellation
    let sbet12 = sbet2 * cbet1 - cbet2 * sbet1;
    let sbet12a = sbet2 * cbet1 + cbet2 * sbet1;
    let salp1 = cbet2 * somg12;
    let calp1 = if comg12 >= 0.0 {
        sbet12 + cbet2 * sbet1 * somg12 * somg12 / (1.0 + comg12)
    } else {
        sbet12a - cbet2 * sbet1 * somg12 * somg12 / (1.0 - comg12)
    };
    libm::atan2(salp1, calp1).clamp(1e-9, PI - 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(lat: f64, lon: f64) -> GeographicCoordinate {
        GeographicCoordinate::new(lat, lon).unwrap()
    }

    #[test]
    fn wgs84_derived_parameters() {
        let e = Ellipsoid::WGS84;
        assert_eq!(e.a(), 6_378_137.0);
        assert!((e.b() - 6_356_752.314_245).abs() < 1e-6);
        assert!((e.e2() - 0.006_694_379_990_14).abs() < 1e-14);
        assert!((e.ep2() - 0.006_739_496_742_28).abs() < 1e-14);
    }

    #[test]
    fn ellipsoid_rejects_bad_parameters() {
        assert!(Ellipsoid::new(0.0, 0.0).is_err());
        assert!(Ellipsoid::new(1.0, 1.0).is_err());
        assert!(Ellipsoid::new(1.0, -0.1).is_err());
        assert!(Ellipsoid::new(f64::NAN, 0.0).is_err());
        assert!(Ellipsoid::sphere(1.0).is_ok());
    }

    #[test]
    fn coordinate_validation_and_normalization() {
        assert!(GeographicCoordinate::new(90.1, 0.0).is_err());
        assert!(GeographicCoordinate::new(f64::NAN, 0.0).is_err());
        assert_eq!(pt(10.0, -180.0).lon(), 180.0);
        assert_eq!(pt(10.0, 370.0).lon(), 10.0);
        assert!(pt(90.0, 10.0).same_point(&pt(90.0, -50.0)));
        assert!(!pt(89.0, 10.0).same_point(&pt(89.0, -50.0)));
    }

    #[test]
    fn reduced_latitude_fixed_points() {
        let e = Ellipsoid::WGS84;
        assert_eq!(reduced_latitude(0.0, &e), 0.0);
        assert_eq!(reduced_latitude(90.0, &e), PI / 2.0);
        assert_eq!(reduced_latitude(-90.0, &e), -PI / 2.0);
    }

    #[test]
    fn reduced_latitude_at_45_degrees() {
        // atan((1 - f) tan 45) = atan(1 - f), evaluated independently
        let e = Ellipsoid::WGS84;
        let expected = libm::atan(1.0 - e.f());
        let beta = reduced_latitude(45.0, &e);
        assert!((beta - expected).abs() < 1e-15);
        assert!((beta - 0.783_718_944_589_406_6).abs() < 1e-15);
        assert!((beta.to_degrees() - 44.903_787_849).abs() < 1e-9);
    }

    #[test]
    fn antipodal_classification() {
        assert!(classify_antipodal(pt(0.0, 0.0), pt(0.0, 180.0)));
        assert!(classify_antipodal(pt(10.0, 20.0), pt(-10.0, -160.0)));
        assert!(!classify_antipodal(pt(10.0, 20.0), pt(30.0, 40.0)));
        assert!(classify_antipodal(pt(90.0, 0.0), pt(-90.0, 0.0)));
        assert!(classify_antipodal(pt(0.4, 0.0), pt(0.3, -179.5)));
        assert!(!classify_antipodal(pt(0.0, 0.0), pt(0.0, 178.9)));
        assert!(!classify_antipodal(pt(1.0, 0.0), pt(0.5, 179.5)));
    }

    #[test]
    fn inverse_errors() {
        let e = Ellipsoid::WGS84;
        assert_eq!(
            inverse(pt(5.0, 5.0), pt(5.0, 5.0), &e),
            Err(GeodesyError::CoincidentPoints)
        );
        assert_eq!(
            inverse(pt(0.0, 0.0), pt(0.0, 180.0), &e),
            Err(GeodesyError::AntipodalPair)
        );
    }

    #[test]
    fn equatorial_arc() {
        let e = Ellipsoid::WGS84;
        let sol = inverse(pt(0.0, 0.0), pt(0.0, 10.0), &e).unwrap();
        let expected = e.a() * 10.0 * PI / 180.0;
        assert!((sol.s12 - expected).abs() < 1e-6);
        assert!((sol.s12 - 1_113_194.907_9).abs() < 1e-3);
        assert_eq!(sol.alpha1, 90.0);
        assert_eq!(sol.alpha2, 90.0);
        let back = inverse(pt(0.0, 10.0), pt(0.0, 0.0), &e).unwrap();
        assert_eq!(back.alpha1, -90.0);
        assert_eq!(back.s12, sol.s12);
    }

    #[test]
    fn meridional_azimuths() {
        let e = Ellipsoid::WGS84;
        let sol = inverse(pt(0.0, 0.0), pt(10.0, 0.0), &e).unwrap();
        assert_eq!((sol.alpha1, sol.alpha2), (0.0, 0.0));
        let sol = inverse(pt(10.0, 0.0), pt(0.0, 0.0), &e).unwrap();
        assert_eq!((sol.alpha1, sol.alpha2), (180.0, 180.0));
    }

    #[test]
    fn empty_interval_has_zero_length() {
        let e = Ellipsoid::WGS84;
        let (_, mut state) = inverse_with_state(pt(10.0, 10.0), pt(20.0, 30.0), &e).unwrap();
        state.sigma2 = state.sigma1;
        state.sigma12 = 0.0;
        assert_eq!(arc_distance(&state, &e), 0.0);
    }

    #[test]
    fn quarter_circle_without_eccentricity() {
        let e = Ellipsoid::WGS84;
        let (_, mut state) = inverse_with_state(pt(10.0, 10.0), pt(20.0, 30.0), &e).unwrap();
        state.k2 = 0.0;
        state.sigma1 = 0.0;
        state.sigma2 = PI / 2.0;
        state.sigma12 = PI / 2.0;
        assert!((arc_distance(&state, &e) - e.b() * PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn longitude_correction_vanishes() {
        let (_, state) =
            inverse_with_state(pt(10.0, 10.0), pt(20.0, 30.0), &Ellipsoid::WGS84).unwrap();
        let sphere = Ellipsoid::sphere(6_371_000.0).unwrap();
        assert_eq!(
            spherical_to_ellipsoidal_longitude(0.7, &state, &sphere),
            0.7
        );
        let mut meridional = state;
        meridional.alpha0 = 0.0;
        assert_eq!(
            spherical_to_ellipsoidal_longitude(0.7, &meridional, &Ellipsoid::WGS84),
            0.7
        );
    }

    #[test]
    fn converged_residual_is_small() {
        let e = Ellipsoid::WGS84;
        let (p1, p2) = (pt(-33.9, 151.2), pt(51.5, -0.1));
        let (sol, state) = inverse_with_state(p1, p2, &e).unwrap();
        assert!(sol.iterations >= 1 && sol.iterations <= MAX_ITERATIONS);
        let lambda = spherical_to_ellipsoidal_longitude(state.omega12, &state, &e);
        let target = normalize_lon(p2.lon() - p1.lon()).abs().to_radians();
        assert!((lambda - target).abs() <= LONGITUDE_TOLERANCE);
        assert!(state.sigma1 <= state.sigma2);
        assert!((state.k2 - e.ep2() * libm::cos(state.alpha0).powi(2)).abs() < 1e-18);
    }

    #[test]
    fn symmetric_distance() {
        let e = Ellipsoid::WGS84;
        let pairs = [
            ((-10.0, 0.0), (10.0, 5.0)),
            ((40.6413, -73.7781), (49.0097, 2.5479)),
            ((-33.0, 151.0), (-33.0, -70.0)),
            ((89.0, 0.0), (-88.0, 100.0)),
        ];
        for ((a, b), (c, d)) in pairs {
            let s = inverse(pt(a, b), pt(c, d), &e).unwrap();
            let r = inverse(pt(c, d), pt(a, b), &e).unwrap();
            assert_eq!(s.s12.to_bits(), r.s12.to_bits());
        }
    }
}
