//! Benchmark-only package; the kernels live under `benches/`.
