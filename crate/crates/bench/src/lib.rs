//! Benchmarks for the construction pipeline live in `benches/`.
