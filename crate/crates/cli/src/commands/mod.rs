pub mod chsh;
pub mod simulate;
pub mod sweep;
pub mod validate;
