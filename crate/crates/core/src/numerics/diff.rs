//! Central finite differences with Richardson extrapolation, orders 1-5.

use crate::error::{Error, Result};

/// n-th derivative of `f` at `x` using central stencils of step `h`,
/// Richardson-extrapolated from steps h and h/2 (both are O(h^2) accurate,
/// so the combination is O(h^4)).
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, order: u32, h: f64) -> Result<f64> {
    let d1 = stencil(&f, x, order, h)?;
    let d2 = stencil(&f, x, order, 0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

fn stencil<F: Fn(f64) -> f64>(f: &F, x: f64, order: u32, h: f64) -> Result<f64> {
    let v = |k: i32| f(x + k as f64 * h);
    let d = match order {
        1 => (-v(2) + 8.0 * v(1) - 8.0 * v(-1) + v(-2)) / (12.0 * h),
        2 => (-v(2) + 16.0 * v(1) - 30.0 * v(0) + 16.0 * v(-1) - v(-2)) / (12.0 * h * h),
        3 => (v(2) - 2.0 * v(1) + 2.0 * v(-1) - v(-2)) / (2.0 * h.powi(3)),
        4 => (v(2) - 4.0 * v(1) + 6.0 * v(0) - 4.0 * v(-1) + v(-2)) / h.powi(4),
        5 => {
            (-v(-3) + 4.0 * v(-2) - 5.0 * v(-1) + 5.0 * v(1) - 4.0 * v(2) + v(3))
                / (2.0 * h.powi(5))
        }
        _ => return Err(Error::Numeric(format!("unsupported derivative order {order}"))),
    };
    Ok(d)
}

/// Width of the widest stencil used for a derivative of `order` with
/// Richardson, in units of the base step (per side).
pub fn stencil_halfwidth(order: u32) -> i32 {
    if order == 5 {
        3
    } else {
        2
    }
}
