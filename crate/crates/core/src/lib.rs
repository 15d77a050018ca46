pub mod analyzer;
pub mod cli;
pub mod coxeter;
pub mod dihedral;
pub mod graph;
pub mod matrix;
mod modp;
pub mod retraction;
pub mod scalar;
pub mod word;
