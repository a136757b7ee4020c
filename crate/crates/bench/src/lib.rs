//! Benchmarks for the kepler kernel live in `benches/`.
