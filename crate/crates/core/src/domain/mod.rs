pub mod bessel;
pub mod modes;
pub mod motion;
pub mod units;
