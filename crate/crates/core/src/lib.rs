pub mod asymptotics;
pub mod cli;
pub mod exact_algebra;
pub mod geography;
pub mod lattice;
pub mod lefschetz;
pub mod manifold_series;
pub mod moves;
