//! Benchmarks for the fitting pipeline; see `benches/pipeline.rs`.
