//! Classification of degree-one del Pezzo surfaces and their broken
//! degenerations from double-cover branch data on the quadric cone.

pub mod algebra;
pub mod kodaira;
pub mod singularity;
pub mod pencil;
pub mod weierstrass;
pub mod cone;
pub mod broken;
pub mod corpus;
pub mod report;

/// Version tag carried by every JSON report.
pub const SCHEMA: &str = "delpezzo-branch/1";
