//! Benchmark harness for `trider-core`; see `benches/complex.rs`.
//!
//! Run with `cargo bench -p trider-bench`.
