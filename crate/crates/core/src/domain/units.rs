//! Unit handling. All physics routines work in natural units with
//! hbar = c = 1 and the meter as the base scale, so every quantity
//! carries dimension length^k for some integer k. Conversion to and
//! from SI multiplies by the appropriate powers of hbar and c.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const HBAR_SI: f64 = 1.054_571_817e-34; // J s
pub const C_SI: f64 = 299_792_458.0; // m / s
pub const EPS0_SI: f64 = 8.854_187_812_8e-12; // F / m
pub const E_CHARGE_SI: f64 = 1.602_176_634e-19; // C

/// Physical dimensions as powers of (mass, length, time).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub mass: i32,
    pub length: i32,
    pub time: i32,
}

impl Dimensions {
    pub const fn new(mass: i32, length: i32, time: i32) -> Self {
        Dimensions { mass, length, time }
    }

    pub const DIMENSIONLESS: Dimensions = Dimensions::new(0, 0, 0);
    pub const LENGTH: Dimensions = Dimensions::new(0, 1, 0);
    pub const TIME: Dimensions = Dimensions::new(0, 0, 1);
    pub const FREQUENCY: Dimensions = Dimensions::new(0, 0, -1);
    pub const VELOCITY: Dimensions = Dimensions::new(0, 1, -1);
    pub const MASS: Dimensions = Dimensions::new(1, 0, 0);
    pub const ENERGY: Dimensions = Dimensions::new(1, 2, -2);
    pub const FORCE: Dimensions = Dimensions::new(1, 1, -2);
    pub const MOMENTUM: Dimensions = Dimensions::new(1, 1, -1);

    /// In natural units (hbar = c = 1) a quantity of these dimensions has
    /// length power b - a - c where the dimensions are mass^a length^b time^c.
    pub fn natural_length_power(&self) -> i32 {
        self.length - self.mass - self.time
    }
}

/// Convert an SI value to natural units (powers of meters).
///
/// Setting hbar = c = 1 removes mass and time: divide by hbar^a, then
/// convert the remaining time powers with factors of c. The result has
/// dimension length^(b - a - c).
pub fn to_natural(value_si: f64, dims: Dimensions) -> f64 {
    // hbar has SI dimensions (1, 2, -1); c has (0, 1, -1).
    // value_nat = value_si * hbar^(-a) * c^(a + c_time)
    value_si * HBAR_SI.powi(-dims.mass) * C_SI.powi(dims.mass + dims.time)
}

/// Inverse of `to_natural`.
pub fn from_natural(value_nat: f64, dims: Dimensions) -> f64 {
    value_nat * HBAR_SI.powi(dims.mass) * C_SI.powi(-(dims.mass + dims.time))
}

/// Units accepted in scenario files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Natural,
    Dimensionless,
    #[serde(rename = "m")]
    Meter,
    #[serde(rename = "cm")]
    Centimeter,
    #[serde(rename = "nm")]
    Nanometer,
    #[serde(rename = "s")]
    Second,
    #[serde(rename = "Hz")]
    Hertz,
    #[serde(rename = "rad/s")]
    RadPerSec,
    #[serde(rename = "m/s")]
    MeterPerSec,
    #[serde(rename = "eV")]
    ElectronVolt,
    #[serde(rename = "kg")]
    Kilogram,
    #[serde(rename = "1/m")]
    InverseMeter,
    #[serde(rename = "m^2")]
    SquareMeter,
}

impl Unit {
    /// Convert a value in this unit to natural units. `Hertz` is an
    /// ordinary frequency and is multiplied by 2 pi to give an angular
    /// frequency; `RadPerSec` is used as-is.
    pub fn to_natural(self, value: f64) -> f64 {
        match self {
            Unit::Natural | Unit::Dimensionless => value,
            Unit::Meter => value,
            Unit::Centimeter => value * 1e-2,
            Unit::Nanometer => value * 1e-9,
            Unit::Second => to_natural(value, Dimensions::TIME),
            Unit::Hertz => to_natural(value * 2.0 * std::f64::consts::PI, Dimensions::FREQUENCY),
            Unit::RadPerSec => to_natural(value, Dimensions::FREQUENCY),
            Unit::MeterPerSec => to_natural(value, Dimensions::VELOCITY),
            Unit::ElectronVolt => to_natural(value * E_CHARGE_SI, Dimensions::ENERGY),
            Unit::Kilogram => to_natural(value, Dimensions::MASS),
            Unit::InverseMeter => value,
            Unit::SquareMeter => value,
        }
    }

    pub fn parse(s: &str) -> Result<Unit> {
        Ok(match s {
            "natural" => Unit::Natural,
            "dimensionless" | "1" => Unit::Dimensionless,
            "m" => Unit::Meter,
            "cm" => Unit::Centimeter,
            "nm" => Unit::Nanometer,
            "s" => Unit::Second,
            "Hz" => Unit::Hertz,
            "GHz" => return Err(Error::Validation("use Hz with an explicit value".into())),
            "rad/s" => Unit::RadPerSec,
            "m/s" => Unit::MeterPerSec,
            "eV" => Unit::ElectronVolt,
            "kg" => Unit::Kilogram,
            "1/m" => Unit::InverseMeter,
            "m^2" => Unit::SquareMeter,
            other => {
                return Err(Error::Validation(format!("unknown unit '{other}'")));
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn si_roundtrip() {
        let dims = Dimensions::ENERGY;
        let e = 1.602e-19;
        let n = to_natural(e, dims);
        assert_relative_eq!(from_natural(n, dims), e, max_relative = 1e-12);
    }

    #[test]
    fn frequency_conversion() {
        // omega = 1 rad/s corresponds to 1/c inverse meters
        let n = to_natural(1.0, Dimensions::FREQUENCY);
        assert_relative_eq!(n, 1.0 / C_SI, max_relative = 1e-14);
    }

    #[test]
    fn ev_energy_scale() {
        // 1 eV in inverse meters: E / (hbar c)
        let n = Unit::ElectronVolt.to_natural(1.0);
        assert_relative_eq!(
            n,
            E_CHARGE_SI / (HBAR_SI * C_SI),
            max_relative = 1e-12
        );
    }
}
