pub mod bundle;
pub mod connection;
pub mod exec;
pub mod forms;
pub mod lie;
pub mod linalg;
pub mod rep;
pub mod sample;
pub mod scalar;
pub mod selftest;
pub mod verifier;
