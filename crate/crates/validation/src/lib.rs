//! Test-only package. The acceptance criteria live in `tests/acceptance.rs`
//! and run with `cargo test -p concur-validation --test acceptance -- --nocapture`.
