//! Benchmarks for the exact autocorrelation engines live in `benches/`.
