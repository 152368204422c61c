pub mod algebra;
pub mod binary;
pub mod cli;
pub mod interpolation;
pub mod numerology;
pub mod probes;
