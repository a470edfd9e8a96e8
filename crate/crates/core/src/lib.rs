//! Zero-difference balanced functions over finite fields, the partial
//! difference sets carried by their image sets, and the strongly regular
//! Cayley graphs those sets define.

pub mod bitmat;
pub mod catalog;
pub mod constructions;
pub mod cyclotomic;
pub mod designs;
pub mod fplin;
pub mod funcspace;
pub mod gf;
pub mod graphs;
pub mod pipeline;
pub mod spectra;

pub use funcspace::{FnTable, PolyFn, PowerCoset};
pub use gf::{Elem, FieldCtx, FieldSpec};
