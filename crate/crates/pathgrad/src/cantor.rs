//! Depth-truncated Cantor (devil's staircase) function.
//!
//! The truncation walks the ternary expansion of `x` up to `depth` digits,
//! emitting binary digits: ternary 0 -> binary 0, ternary 2 -> binary 1, and
//! the first ternary 1 terminates the walk with a final binary 1. The result
//! is exact at plateau points and within `2^-depth` of the true Cantor
//! function everywhere. The function is continuous and nondecreasing but not
//! Lipschitz, which is exactly why it serves as a negative control for the
//! gradient theorem.

use crate::error::{Error, Result};

/// Value of the depth-truncated Cantor function at `x` in [0, 1].
pub fn cantor_value(x: f64, depth: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            coord: 0,
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if depth == 0 {
        return Err(Error::InvalidParameter("cantor depth must be >= 1".into()));
    }
    let mut y = x;
    let mut value = 0.0;
    let mut weight = 0.5;
    for _ in 0..depth {
        // y == 1 means the remaining ternary tail is all 2s, i.e. a binary
        // tail of all 1s summing to 2 * weight.
        if y >= 1.0 {
            return Ok(value + 2.0 * weight);
        }
        y *= 3.0;
        let digit = y.floor();
        y -= digit;
        match digit as u8 {
            0 => {}
            1 => return Ok(value + weight),
            _ => value += weight,
        }
        weight *= 0.5;
    }
    Ok(value)
}

/// True iff `x` lies strictly inside a middle third removed at or before
/// `depth`, i.e. on a plateau where the truncated function is locally
/// constant (and hence differentiable with derivative 0).
pub fn in_plateau(x: f64, depth: u32) -> bool {
    if !(0.0..=1.0).contains(&x) {
        return false;
    }
    let mut y = x;
    for _ in 0..depth {
        if y >= 1.0 {
            // tail of ternary 2s: a Cantor-set point
            return false;
        }
        y *= 3.0;
        let digit = y.floor();
        y -= digit;
        if digit as u8 == 1 {
            // digit 1 with zero remainder is a plateau endpoint, which still
            // belongs to the Cantor set
            return y != 0.0;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_values() {
        assert_eq!(cantor_value(0.0, 24).unwrap(), 0.0);
        assert_eq!(cantor_value(1.0, 24).unwrap(), 1.0);
        assert_eq!(cantor_value(1.0, 1).unwrap(), 1.0);
    }

    #[test]
    fn half_maps_to_half() {
        for depth in [1, 2, 8, 24] {
            assert_eq!(cantor_value(0.5, depth).unwrap(), 0.5);
        }
    }

    #[test]
    fn one_third_maps_to_half() {
        assert_eq!(cantor_value(1.0 / 3.0, 2).unwrap(), 0.5);
        assert_eq!(cantor_value(1.0 / 3.0, 24).unwrap(), 0.5);
        assert_eq!(cantor_value(2.0 / 3.0, 24).unwrap(), 0.5);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(cantor_value(-0.1, 8).is_err());
        assert!(cantor_value(1.1, 8).is_err());
        assert!(cantor_value(0.5, 0).is_err());
    }

    #[test]
    fn plateau_membership() {
        // middle of the first removed third
        assert!(in_plateau(0.5, 1));
        assert!(in_plateau(0.4, 1));
        // Cantor set points
        assert!(!in_plateau(0.0, 24));
        assert!(!in_plateau(1.0, 24));
        assert!(!in_plateau(1.0 / 3.0, 24));
        // second-level plateau needs depth >= 2
        assert!(!in_plateau(0.15, 1));
        assert!(in_plateau(0.15, 2));
    }

    #[test]
    fn nondecreasing_on_grid() {
        let depth = 10;
        let mut prev = 0.0;
        for k in 0..=10_000 {
            let x = k as f64 / 10_000.0;
            let v = cantor_value(x, depth).unwrap();
            assert!(v >= prev, "decrease at x = {x}");
            prev = v;
        }
    }

    #[test]
    fn constant_on_removed_intervals() {
        // sample inside a few removed middle thirds at various levels
        let depth = 24;
        for (lo, hi) in [
            (1.0 / 3.0, 2.0 / 3.0),
            (1.0 / 9.0, 2.0 / 9.0),
            (7.0 / 9.0, 8.0 / 9.0),
            (1.0 / 27.0, 2.0 / 27.0),
        ] {
            let mid = 0.5 * (lo + hi);
            let v = cantor_value(mid, depth).unwrap();
            for k in 1..100 {
                let x = lo + (hi - lo) * k as f64 / 100.0;
                assert_eq!(cantor_value(x, depth).unwrap(), v);
            }
        }
    }
}
