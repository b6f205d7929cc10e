pub mod analysis;
pub mod clusterer;
pub mod error;
pub mod experiment;
pub mod flow;
pub mod graph;
pub mod io;
pub mod sbm;
pub mod solver;
