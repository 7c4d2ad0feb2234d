pub mod clifford;
pub mod error;
pub mod exec;
pub mod expr;
pub mod grassmann;
pub mod json;
pub mod matrix_iso;
pub mod operator;
pub mod random;
pub mod scalar;
pub mod susy;
pub mod symbolic;
pub mod verify;
