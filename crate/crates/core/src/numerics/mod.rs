pub mod diff;
pub mod expm;
pub mod fit;
pub mod ode;
pub mod quad;
pub mod roots;
