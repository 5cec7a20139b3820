//! Exact tools for generic global rigidity of bar-joint frameworks in
//! Euclidean, complex, pseudo-Euclidean and hyperbolic spaces, plus the maps
//! that transfer equivalent frameworks between those spaces.

pub mod framework;
pub mod gram;
pub mod hyperbolic;
pub mod io;
pub mod pogorelov;
pub mod rigidity;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod scalar;
