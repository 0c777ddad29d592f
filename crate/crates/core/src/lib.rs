pub mod classify;
pub mod construct;
pub mod lattice;
pub mod oracle;
pub mod quadfield;
pub mod series;
pub mod twist;
pub mod wire;
