pub mod audit;
pub mod extraction;
pub mod formula;
pub mod frj;
pub mod gen;
pub mod gbu;
pub mod kripke;
pub mod saturation;
