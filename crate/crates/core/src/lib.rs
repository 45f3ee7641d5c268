pub mod field;
pub mod graph;
pub mod stable_map;
pub mod hurwitz;
pub mod poly;
pub mod legendre;
pub mod elliptic;
pub mod classify;
