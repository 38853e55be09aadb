pub mod characters;
pub mod cli;
pub mod families;
pub mod germ;
pub mod hull;
pub mod lcsc;
pub mod oracle;
pub mod report;
pub mod sample;
pub mod syntax;

pub use hull::{BooleanIdeal, ExtendedHullElement, HullElement, Letter, NormalForm};
pub use lcsc::{Arrow, Bounds, Category, FiniteCategory, LcscError, ObjectId};
