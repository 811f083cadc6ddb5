//! Bessel functions of the first kind and their positive roots.
//!
//! J_n(x) is evaluated by Miller's downward recurrence, normalized with
//! the identity J_0 + 2 (J_2 + J_4 + ...) = 1. Roots are located by a
//! coarse sign scan followed by bisection and a Newton polish.

use crate::error::{Error, Result};
use crate::numerics::roots::bisect_newton;

/// J_n(x) for n >= 0.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < 0.0 {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        return s * bessel_j(n, -x);
    }
    // Start the downward recurrence well above both n and x.
    let start = ((n as f64).max(x) as usize + 40) | 1; // odd
    let mut jp1 = 0.0f64;
    let mut j = 1e-300;
    let mut norm = 0.0f64;
    let mut result = 0.0f64;
    for k in (0..=start).rev() {
        let jm1 = 2.0 * (k as f64 + 1.0) / x * j - jp1;
        jp1 = j;
        j = jm1;
        // jp1 now holds J_{k+1}, j holds J_k (unnormalized)
        if k as u32 + 1 == n {
            result = jp1;
        }
        if (k + 1) % 2 == 0 {
            norm += 2.0 * jp1;
        }
        // Rescale to avoid overflow.
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp1 *= s;
            norm *= s;
            result *= s;
        }
    }
    norm += j; // J_0 term
    if n == 0 {
        result = j;
    }
    result / norm
}

/// d/dx J_n(x).
pub fn bessel_j_prime(n: u32, x: f64) -> f64 {
    if n == 0 {
        -bessel_j(1, x)
    } else {
        0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// Roots of J_n itself.
    J,
    /// Roots of the derivative J_n'.
    JPrime,
}

/// m-th positive root (m >= 1) of J_n or J_n'. The root at x = 0 of
/// J_n' (n >= 1) is not counted.
pub fn bessel_root(kind: BesselKind, n: u32, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("root index m starts at 1".into()));
    }
    let f = |x: f64| match kind {
        BesselKind::J => bessel_j(n, x),
        BesselKind::JPrime => bessel_j_prime(n, x),
    };
    // Second derivative from the Bessel ODE, for the Newton polish on
    // J_n' roots: x^2 J'' + x J' + (x^2 - n^2) J = 0.
    let df = |x: f64| match kind {
        BesselKind::J => bessel_j_prime(n, x),
        BesselKind::JPrime => {
            -(bessel_j_prime(n, x) / x) - (1.0 - (n as f64 / x).powi(2)) * bessel_j(n, x)
        }
    };

    let step = 0.2;
    let mut x0 = 0.05;
    let mut f0 = f(x0);
    let mut found = 0u32;
    for _ in 0..200_000 {
        let x1 = x0 + step;
        let f1 = f(x1);
        if f0 == 0.0 || f0 * f1 < 0.0 {
            found += 1;
            if found == m {
                return bisect_newton(f, Some(df), x0, x1, 1e-13);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::Numeric(format!(
        "failed to locate root {m} of order {n}"
    )))
}
