//! Criterion benchmarks for the certificate pipelines live in `benches/`.
