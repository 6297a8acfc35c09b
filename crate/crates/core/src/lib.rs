pub mod catalog;
pub mod error;
pub mod factored;
pub mod genwidth;
pub mod group;
pub mod groupspec;
pub mod perm;
pub mod primeset;
pub mod search;
pub mod structure;
