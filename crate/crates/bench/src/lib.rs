// SPDX-License-Identifier: Apache-2.0

//! Benchmark harnesses live under `benches/`.
