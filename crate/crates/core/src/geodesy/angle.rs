//! Degree-based trigonometry with exact results at multiples of 90 degrees.

use core::f64::consts::PI;

/// Sine and cosine of an angle in degrees.
///
/// The argument is reduced to [-45, 45] degrees before converting to radians,
/// so quadrant angles give exact 0 and +/-1.
pub(crate) fn sincos_deg(x: f64) -> (f64, f64) {
    let r = libm::fmod(x, 360.0);
    let q = libm::round(r / 90.0);
    let r = (r - 90.0 * q) * (PI / 180.0);
    let (s, c) = (libm::sin(r), libm::cos(r));
    let (s, c) = match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (s + 0.0, c + 0.0)
}

/// `atan2(y, x)` in degrees, exact on the axes.
pub(crate) fn atan2_deg(y: f64, x: f64) -> f64 {
    let (mut y, mut x) = (y, x);
    let mut q = 0;
    if y.abs() > x.abs() {
        core::mem::swap(&mut x, &mut y);
        q = 2;
    }
    if x.is_sign_negative() {
        x = -x;
        q += 1;
    }
    let ang = libm::atan2(y, x) * (180.0 / PI);
    match q {
        1 => libm::copysign(180.0, y) - ang,
        2 => 90.0 - ang,
        3 => -90.0 + ang,
        _ => ang,
    }
}

/// Maps any longitude into (-180, 180].
pub(crate) fn normalize_lon(x: f64) -> f64 {
    let y = libm::remainder(x, 360.0);
    if y <= -180.0 {
        y + 360.0
    } else {
        y + 0.0
    }
}
