//! Stabilizer quantum codes built from self-orthogonal classical codes.
//!
//! Codes over `GF(q)` are F_p-linear subspaces of `F_q^n × F_q^n`
//! ([`additive`]) or F_q-linear codes ([`linear`]). A code contained in its
//! symplectic dual defines a stabilizer code ([`stabilizer`]) whose
//! parameters come from certified minimum-distance searches ([`distance`]).
//! Secondary constructions ([`propagation`], [`puncture`],
//! [`construction_x`]) derive new codes and record parameter changes in a
//! replayable ledger, and [`pauli`] cross-checks everything against dense
//! Pauli matrices. See the `examples/` directory for worked uses.

pub mod additive;
pub mod cli;
pub mod construction_x;
pub mod distance;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod linear;
pub mod pauli;
pub mod poly;
pub mod propagation;
pub mod puncture;
pub mod registry;
pub mod stabilizer;
