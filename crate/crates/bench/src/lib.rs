//! Benchmarks for `bott-core`; see `benches/localize.rs`.
