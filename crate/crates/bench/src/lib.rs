//! Benchmark-only crate; see `benches/kernels.rs` for the criterion
//! benchmarks of the engine's hot kernels.
