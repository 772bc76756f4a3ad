pub mod algebra;
pub mod atiyah;
pub mod cli;
pub mod cocycle;
pub mod courant;
pub mod extension;
pub mod exterior;
pub mod lie2;
pub mod plectic;
pub mod random;
pub mod report;
pub mod suites;
