//! Linear index codes over prime fields.

mod code;
mod constructions;
mod field;
pub mod matrix;
mod minrank;
mod split;

pub use code::{
    is_valid_linear_code, parse_code, parse_code_any, row_reduce, verify_certificate, write_code,
    Decoder, DecodingCertificate, EchelonForm, LinearIndexCode, SideTerm, Validity,
};
pub use constructions::{
    blowup_code, clique_xor_code, conjecture1_code, cycle_apex_code, ApexParams, BlowUp,
};
pub use field::{PrimeField, GF2};
pub use minrank::{minrank_gf2, minrank_gf2_exhaustive, minrank_gf2_with, Minrank};
pub use split::{block_diagonal, sink_partition, split_code, SplitCode};
