pub mod cohomology;
pub mod dihedral;
pub mod error;
pub mod ff;
pub mod fusion;
pub mod abelian;
pub mod deformation;
pub mod report;
