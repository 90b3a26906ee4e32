pub mod graph;
pub mod linalg;
pub mod rigidity;
pub mod cayley_menger;
pub mod pipeline;
