//! Criterion benchmarks for `dinv-core`; see `benches/`.
