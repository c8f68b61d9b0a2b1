pub mod cli;
pub mod cmw;
pub mod endo;
pub mod engines;
pub mod field;
pub mod harness;
pub mod involution;
pub mod json;
pub mod parse;
pub mod poly;
pub mod tame;
