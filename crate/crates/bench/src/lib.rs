//! Criterion benchmarks for `degenstir`; see `benches/`.
