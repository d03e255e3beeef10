//! Support library for the `atomap` command-line tool. The binary lives in
//! `main.rs`; this crate root only exposes the matrix exchange format so the
//! integration tests (and other tooling) can read and write the same files.

pub mod matrixfile;
