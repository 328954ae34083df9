//! Sixth-order series for the auxiliary-sphere integrals.
//!
//! With `k2 = ep2 * cos^2(alpha0)` and the expansion parameter
//! `eps = (sqrt(1 + k2) - 1) / (sqrt(1 + k2) + 1)`:
//!
//! ```text
//! I1(sigma) = int_0^sigma sqrt(1 + k2 sin^2 t) dt          = A1 (sigma + sum C1[l] sin 2 l sigma)
//! I2(sigma) = int_0^sigma 1 / sqrt(1 + k2 sin^2 t) dt      = A2 (sigma + sum C2[l] sin 2 l sigma)
//! I3(sigma) = int_0^sigma (2 - f) / (1 + (1 - f) sqrt(1 + k2 sin^2 t)) dt
//!                                                          = A3 (sigma + sum C3[l] sin 2 l sigma)
//! ```
//!
//! `I1` gives the distance, `I3` the longitude correction and `I1 - I2` the
//! reduced length. `A3`/`C3` also depend on the third flattening
//! `n = f / (2 - f)`. Coefficient arrays are indexed from 1; slot 0 is unused.

pub(crate) const ORDER: usize = 6;

pub(crate) fn epsilon(k2: f64) -> f64 {
    k2 / (2.0 * (1.0 + libm::sqrt(1.0 + k2)) + k2)
}

/// Horner evaluation, coefficients from the highest power down.
fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

pub(crate) fn a1(eps: f64) -> f64 {
    let e2 = eps * eps;
    poly(&[1.0 / 256.0, 1.0 / 64.0, 1.0 / 4.0, 1.0], e2) / (1.0 - eps)
}

pub(crate) fn c1(eps: f64) -> [f64; ORDER + 1] {
    let e2 = eps * eps;
    let mut c = [0.0; ORDER + 1];
    let mut d = eps;
    c[1] = d * poly(&[-1.0 / 32.0, 3.0 / 16.0, -1.0 / 2.0], e2);
    d *= eps;
    c[2] = d * poly(&[-9.0 / 2048.0, 1.0 / 32.0, -1.0 / 16.0], e2);
    d *= eps;
    c[3] = d * poly(&[3.0 / 256.0, -1.0 / 48.0], e2);
    d *= eps;
    c[4] = d * poly(&[3.0 / 512.0, -5.0 / 512.0], e2);
    d *= eps;
    c[5] = d * (-7.0 / 1280.0);
    d *= eps;
    c[6] = d * (-7.0 / 2048.0);
    c
}

pub(crate) fn a2(eps: f64) -> f64 {
    let e2 = eps * eps;
    poly(&[25.0 / 256.0, 9.0 / 64.0, 1.0 / 4.0, 1.0], e2) * (1.0 - eps)
}

pub(crate) fn c2(eps: f64) -> [f64; ORDER + 1] {
    let e2 = eps * eps;
    let mut c = [0.0; ORDER + 1];
    let mut d = eps;
    c[1] = d * poly(&[1.0 / 32.0, 1.0 / 16.0, 1.0 / 2.0], e2);
    d *= eps;
    c[2] = d * poly(&[35.0 / 2048.0, 1.0 / 32.0, 3.0 / 16.0], e2);
    d *= eps;
    c[3] = d * poly(&[5.0 / 256.0, 5.0 / 48.0], e2);
    d *= eps;
    c[4] = d * poly(&[7.0 / 512.0, 35.0 / 512.0], e2);
    d *= eps;
    c[5] = d * (63.0 / 1280.0);
    d *= eps;
    c[6] = d * (77.0 / 2048.0);
    c
}

pub(crate) fn a3(eps: f64, n: f64) -> f64 {
    let terms = [
        1.0,
        -(1.0 / 2.0 - n / 2.0),
        -poly(&[-3.0 / 8.0, 1.0 / 8.0, 1.0 / 4.0], n),
        -poly(&[1.0 / 16.0, 3.0 / 16.0, 1.0 / 16.0], n),
        -poly(&[1.0 / 32.0, 3.0 / 64.0], n),
        -3.0 / 128.0,
    ];
    terms.iter().rev().fold(0.0, |acc, &c| acc * eps + c)
}

pub(crate) fn c3(eps: f64, n: f64) -> [f64; ORDER] {
    // c[l] = sum_j coeff[l][j] eps^j, j from l to 5
    let n2 = n * n;
    let rows: [[f64; 5]; 5] = [
        [
            1.0 / 4.0 - n / 4.0,
            1.0 / 8.0 - n2 / 8.0,
            3.0 / 64.0 + 3.0 * n / 64.0 - n2 / 64.0,
            5.0 / 128.0 + n / 64.0,
            3.0 / 128.0,
        ],
        [
            0.0,
            1.0 / 16.0 - 3.0 * n / 32.0 + n2 / 32.0,
            3.0 / 64.0 - n / 32.0 - 3.0 * n2 / 64.0,
            3.0 / 128.0 + n / 128.0,
            5.0 / 256.0,
        ],
        [
            0.0,
            0.0,
            5.0 / 192.0 - 3.0 * n / 64.0 + 5.0 * n2 / 192.0,
            3.0 / 128.0 - 5.0 * n / 192.0,
            7.0 / 512.0,
        ],
        [0.0, 0.0, 0.0, 7.0 / 512.0 - 7.0 * n / 256.0, 7.0 / 512.0],
        [0.0, 0.0, 0.0, 0.0, 21.0 / 2560.0],
    ];
    let mut c = [0.0; ORDER];
    for (l, row) in rows.iter().enumerate() {
        c[l + 1] = row.iter().rev().fold(0.0, |acc, &x| acc * eps + x) * eps;
    }
    c
}

/// `sum_{l>=1} c[l] sin(2 l x)` by Clenshaw recurrence, given `sin x`, `cos x`.
pub(crate) fn sin_series(sinx: f64, cosx: f64, c: &[f64]) -> f64 {
    let ar = 2.0 * (cosx - sinx) * (cosx + sinx);
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c[1..].iter().rev() {
        let b0 = ck + ar * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1 * 2.0 * sinx * cosx
}
