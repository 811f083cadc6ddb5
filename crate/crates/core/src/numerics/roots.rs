//! Bracketed scalar root finding: bisection with a Newton polish.

use crate::error::{Error, Result};

/// Root of `f` in [a, b], assuming a sign change. Bisection to `tol`,
/// then a few Newton steps with `df` if provided.
pub fn bisect_newton<F, D>(mut f: F, df: Option<D>, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(Error::Numeric(format!(
            "no sign change on bracket [{a:.6e}, {b:.6e}]: f(a)={flo:.3e}, f(b)={fhi:.3e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 || hi - lo < tol {
            lo = mid;
            break;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    if let Some(df) = df {
        for _ in 0..4 {
            let d = df(x);
            if d == 0.0 {
                break;
            }
            let step = f(x) / d;
            let next = x - step;
            if next.is_finite() && next >= a && next <= b {
                x = next;
            } else {
                break;
            }
            if step.abs() < 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
    }
    Ok(x)
}

/// Root of a strictly increasing function on an auto-expanded bracket
/// around `guess`. Used for characteristic inversion where the function
/// is monotone by construction.
pub fn solve_monotone<F: FnMut(f64) -> f64>(mut f: F, guess: f64, tol: f64) -> Result<f64> {
    let mut step = tol.max(1e-3 * guess.abs().max(1.0));
    let mut lo = guess;
    let mut hi = guess;
    let fg = f(guess);
    if fg == 0.0 {
        return Ok(guess);
    }
    if fg < 0.0 {
        for _ in 0..200 {
            hi += step;
            if f(hi) >= 0.0 {
                lo = hi - step;
                break;
            }
            step *= 2.0;
        }
    } else {
        for _ in 0..200 {
            lo -= step;
            if f(lo) <= 0.0 {
                hi = lo + step;
                break;
            }
            step *= 2.0;
        }
    }
    bisect_newton(f, None::<fn(f64) -> f64>, lo, hi, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect_newton(|x| x * x - 2.0, Some(|x: f64| 2.0 * x), 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn monotone_solver_expands_bracket() {
        let r = solve_monotone(|x| x.exp() - 100.0, 0.0, 1e-13).unwrap();
        assert!((r - 100.0f64.ln()).abs() < 1e-12);
    }
}
