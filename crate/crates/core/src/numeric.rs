//! Angle wrapping and tolerance constants shared across modules.

use core::f64::consts::{PI, TAU};

/// Overlap magnitude at or below which a phase is reported as undefined.
pub const EPS_ORTH: f64 = 1e-9;

/// Overlap magnitude below which a minimum of `|<psi0|psi(t)>|` is treated as a zero.
pub const EPS_CROSS: f64 = 1e-6;

/// Default number of samples per schedule segment (both endpoints included).
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 2000;

/// Maps an angle onto the principal interval `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut r = x - TAU * (x / TAU).floor();
    if r >= TAU {
        r = 0.0;
    }
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance of `x` from the nearest multiple of 2π.
pub fn distance_mod_2pi(x: f64) -> f64 {
    wrap_angle(x).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_maps_minus_pi_to_pi() {
        assert_eq!(wrap_angle(-PI), PI);
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!(wrap_angle(TAU).abs() < 1e-15);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn distance_is_symmetric() {
        assert!((distance_mod_2pi(TAU - 1e-3) - 1e-3).abs() < 1e-12);
        assert!((distance_mod_2pi(-TAU + 1e-3) - 1e-3).abs() < 1e-12);
    }
}
