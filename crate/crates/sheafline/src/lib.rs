//! Exact-arithmetic engine for constructible sheaf complexes in dimension
//! one, plus a polytopal germ laboratory.

pub mod barcode;
pub mod field;
pub mod genrand;
pub mod gvs;
pub mod homcalc;
pub mod interval;
pub mod matrix;
pub mod microsupport;
pub mod num;
pub mod zigzag;
pub mod tamarkin;
